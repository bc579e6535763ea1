//! Newton polygons, the Krasner bound `M(R)`, different and discriminant
//! valuations, and the numeric lifting bounds.

use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::dvr::{Dvr, WittCoeff};
use crate::error::{Error, Result};
use crate::valuation::{DvrVal, ValQ};
use crate::witt::WittRing;

/// A coefficient valuation, exact or only bounded below.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffVal {
    Exact(ValQ),
    AtLeast(ValQ),
}

impl CoeffVal {
    fn value(&self) -> ValQ {
        match self {
            CoeffVal::Exact(v) | CoeffVal::AtLeast(v) => *v,
        }
    }

    fn is_exact(&self) -> bool {
        match self {
            CoeffVal::Exact(_) => true,
            CoeffVal::AtLeast(v) => v.is_infinite(),
        }
    }
}

impl From<DvrVal> for CoeffVal {
    fn from(v: DvrVal) -> CoeffVal {
        match v {
            DvrVal::Exact(x) => CoeffVal::Exact(ValQ::int(x as u64)),
            DvrVal::AtLeast(x) => CoeffVal::AtLeast(ValQ::int(x as u64)),
        }
    }
}

/// Lower convex hull of `(i, ν(c_i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, ValQ)>,
    /// `(slope, multiplicity)`, slopes being negated gradients, in
    /// decreasing order.
    pub slopes: Vec<(Ratio<i64>, usize)>,
}

fn to_i64(r: Ratio<u64>) -> Ratio<i64> {
    Ratio::new(*r.numer() as i64, *r.denom() as i64)
}

pub fn newton_polygon(vals: &[CoeffVal]) -> Result<NewtonPolygon> {
    let last = vals.last().ok_or_else(|| Error::Degenerate("empty polynomial".into()))?;
    if last.value().is_infinite() {
        return Err(Error::Degenerate("leading coefficient is zero".into()));
    }
    if !last.is_exact() {
        return Err(Error::PrecisionTooLow("leading coefficient valuation is only a lower bound".into()));
    }
    let pts: Vec<(usize, Ratio<i64>, bool)> = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.value().ratio().map(|r| (i, to_i64(r), v.is_exact())))
        .collect();
    if pts.len() < 2 {
        return Err(Error::Degenerate("polynomial has no roots to separate".into()));
    }
    let mut hull: Vec<(usize, Ratio<i64>, bool)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let (i0, v0, _) = hull[hull.len() - 2];
            let (i1, v1, _) = hull[hull.len() - 1];
            let (i2, v2) = (pt.0, pt.1);
            // drop the middle point unless it lies strictly below the chord
            let lhs = (v1 - v0) * Ratio::from_integer((i2 - i0) as i64);
            let rhs = (v2 - v0) * Ratio::from_integer((i1 - i0) as i64);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    if let Some(&(i, _, _)) = hull.iter().find(|h| !h.2) {
        return Err(Error::PrecisionTooLow(format!("hull vertex at index {i} rests on a lower bound")));
    }
    let mut slopes = Vec::new();
    for w in hull.windows(2) {
        let len = w[1].0 - w[0].0;
        slopes.push(((w[0].1 - w[1].1) / Ratio::from_integer(len as i64), len));
    }
    let vertices = hull
        .iter()
        .map(|&(i, v, _)| (i, ValQ::new(*v.numer() as u64, *v.denom() as u64)))
        .collect();
    Ok(NewtonPolygon { vertices, slopes })
}

impl NewtonPolygon {
    pub fn max_slope(&self) -> Ratio<i64> {
        self.slopes.iter().map(|s| s.0).max().unwrap_or_else(Ratio::zero)
    }

    /// `Σ slope · multiplicity`.
    pub fn slope_sum(&self) -> Ratio<i64> {
        self.slopes.iter().map(|&(s, m)| s * Ratio::from_integer(m as i64)).sum()
    }
}

fn digit_sum(mut n: u64, p: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

/// `v_p(C(n, k))` by Kummer's carry count.
pub fn v_p_binomial(n: u64, k: u64, p: u64) -> u32 {
    ((digit_sum(k, p) + digit_sum(n - k, p) - digit_sum(n, p)) / (p - 1)) as u32
}

/// Exact valuations `ν(c_j)`, `0 ≤ j < e`, of `f(π+T)/T = Σ c_j T^j`, where
/// `c_j = Σ_i C(i, j+1) a_i π^{i-j-1}`; the π-exponents are distinct mod `e`
/// so the minimum term valuation is attained once.
pub fn shifted_coeff_vals(r: &Dvr) -> Vec<u32> {
    let e = r.e() as u64;
    let p = r.p();
    let f = r.poly();
    (0..e)
        .map(|j| {
            (j + 1..=e)
                .filter_map(|i| {
                    let a = f[i as usize].v_p(p)?;
                    let c = v_p_binomial(i, j + 1, p);
                    Some((e * (a as u64 + c as u64) + (i - j - 1)) as u32)
                })
                .min()
                .expect("leading term is nonzero")
        })
        .collect()
}

/// The Newton polygon of `f(π+T)/T` in normalised valuations.
pub fn shifted_polygon(r: &Dvr) -> Result<NewtonPolygon> {
    let e = r.e() as u64;
    let vals: Vec<CoeffVal> =
        shifted_coeff_vals(r).into_iter().map(|v| CoeffVal::Exact(ValQ::new(v as u64, e))).collect();
    newton_polygon(&vals)
}

/// `M(R)`: the largest normalised valuation of a conjugate difference
/// `π − σπ`; zero when `e = 1`.
pub fn krasner_bound(r: &Dvr) -> ValQ {
    if r.e() == 1 {
        return ValQ::zero();
    }
    let np = shifted_polygon(r).expect("shifted polynomial has exact coefficient valuations");
    let m = np.max_slope();
    ValQ::new(*m.numer() as u64, *m.denom() as u64)
}

/// `ν(f'(π))` in ν-units.
pub fn different_val(r: &Dvr) -> u32 {
    shifted_coeff_vals(r)[0]
}

/// p-adic valuation of the discriminant of `f` over `W(k)`.
pub fn discriminant_val(r: &Dvr) -> u32 {
    different_val(r)
}

/// `v_p(Res(f, f'))` from the Sylvester determinant over `W(k)/p^M`.
/// Returns a lower bound when the determinant vanishes at that precision.
pub fn resultant_val(r: &Dvr, m: u32) -> Result<DvrVal> {
    let k = r.residue_field();
    let e = r.e() as usize;
    let mut w = WittRing::new(k, m)?;
    let f: Vec<Vec<u64>> = r.poly().iter().map(|c| c.materialize(&w)).collect();
    let df: Vec<Vec<u64>> = (1..=e).map(|i| w.raw_scale(&f[i], i as u64)).collect();
    let size = 2 * e - 1;
    let mut mat = vec![vec![w.raw_zero(); size]; size];
    // e-1 shifted copies of f, then e shifted copies of f'
    for row in 0..e - 1 {
        for (i, c) in f.iter().enumerate() {
            mat[row][row + i] = c.clone();
        }
    }
    for row in 0..e {
        for (i, c) in df.iter().enumerate() {
            mat[e - 1 + row][row + i] = c.clone();
        }
    }
    let mut extracted = 0u32;
    let mut prec = m;
    for col in 0..size {
        let best = (col..size).filter_map(|rw| w.raw_val(&mat[rw][col]).map(|v| (v, rw))).min();
        let Some((v, piv)) = best else {
            return Ok(DvrVal::AtLeast(extracted + prec));
        };
        if v > 0 {
            if v >= prec {
                return Ok(DvrVal::AtLeast(extracted + prec));
            }
            let pv = r.p().pow(v);
            let lower = WittRing::new(k, prec - v)?;
            // only the trailing minor still matters
            for row in mat.iter_mut().skip(col) {
                for (j, c) in row.iter_mut().enumerate().skip(col) {
                    if j == col {
                        *c = c.iter().map(|&x| x / pv).collect();
                    }
                    *c = lower.raw_reduce_from(c);
                }
            }
            extracted += v;
            prec -= v;
            w = lower;
        }
        mat.swap(col, piv);
        let inv = w.raw_unit_inv(&mat[col][col])?;
        for rw in col + 1..size {
            if WittRing::raw_is_zero(&mat[rw][col]) {
                continue;
            }
            let factor = w.raw_mul(&mat[rw][col], &inv);
            for j in col..size {
                let t = w.raw_mul(&factor, &mat[col][j]);
                mat[rw][j] = w.raw_sub(&mat[rw][j], &t);
            }
        }
    }
    Ok(DvrVal::Exact(extracted))
}

/// `ν(e) = e · v_p(e)`.
pub fn nu_of_e(p: u64, e: u32) -> u32 {
    e * crate::witt::v_p_int(e as u64, p)
}

/// Smallest `n_2` with `n_2 > M(R_1) e_1 e_2`.
pub fn lift_precision_bound(r1: &Dvr, e2: u32) -> u32 {
    let m = krasner_bound(r1).ratio().expect("finite bound");
    let prod = m * Ratio::from_integer(r1.e() as u64 * e2 as u64);
    (prod.to_integer() + 1) as u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenericBounds {
    pub upper: u32,
    pub lower: u32,
    pub tame_exact: Option<u32>,
    pub basarab_upper: u32,
}

pub fn generic_bounds(p: u64, e: u32) -> GenericBounds {
    let nu = nu_of_e(p, e);
    GenericBounds {
        upper: e + e * nu + 1,
        lower: if e == 1 { 1 } else { e + 1 },
        tame_exact: (e >= 2 && !(e as u64).is_multiple_of(p)).then_some(e + 1),
        basarab_upper: e * (1 + nu) + 1,
    }
}

pub fn n0_threshold(r1: &Dvr, r2: &Dvr) -> u32 {
    [r1, r2].iter().map(|r| r.e() + r.e() * nu_of_e(r.p(), r.e())).max().unwrap() + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationReport {
    pub e: u32,
    pub tame: bool,
    #[serde(rename = "M")]
    pub m: ValQ,
    pub different_val: u32,
    pub discriminant_val: u32,
}

pub fn ramification_report(r: &Dvr) -> RamificationReport {
    RamificationReport {
        e: r.e(),
        tame: r.is_tame(),
        m: krasner_bound(r),
        different_val: different_val(r),
        discriminant_val: discriminant_val(r),
    }
}

/// Integer coefficients of `f`, when every coefficient is a rational integer.
pub fn integer_poly(r: &Dvr) -> Option<Vec<i64>> {
    r.poly()
        .iter()
        .map(|c| match c {
            WittCoeff::Int(v) if v[1..].iter().all(|&x| x == 0) => Some(v[0]),
            _ => None,
        })
        .collect()
}
