//! Totally ramified extensions `R = W(k)[x]/(f)` with `f` Eisenstein,
//! elements known modulo a power of the maximal ideal, π-adic digit forms,
//! and the finite residue rings `R/m^n`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::resfield::{Field, FqElem};
use crate::valuation::DvrVal;
use crate::witt::{max_precision, split_digits, v_p_int, TeichDigits, Witt, WittElem, WittRing};

/// Guard Witt digits carried beyond `⌈n/e⌉`.
pub const GUARD: u32 = 2;

/// Enumeration cap used when `RAMLIFT_ENUM_CAP` is unset.
pub const DEFAULT_ENUM_CAP: u128 = 10_000_000;

pub fn enum_cap() -> u128 {
    std::env::var("RAMLIFT_ENUM_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP)
}

/// An exactly known element of `W(k)`: integer power-basis coordinates or a
/// finite Teichmüller digit string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WittCoeff {
    Int(Vec<i64>),
    Teich(Vec<FqElem>),
}

impl WittCoeff {
    pub fn int(v: i64) -> WittCoeff {
        WittCoeff::Int(vec![v])
    }

    pub fn materialize(&self, w: &Witt) -> Vec<u64> {
        match self {
            WittCoeff::Int(c) => w.from_coords(c).expect("coordinate count checked on construction").coords().to_vec(),
            WittCoeff::Teich(digits) => w.from_digits(&TeichDigits(digits.clone())).coords().to_vec(),
        }
    }

    /// Exact p-adic valuation, `None` for zero.
    pub fn v_p(&self, p: u64) -> Option<u32> {
        match self {
            WittCoeff::Int(c) => c.iter().filter(|&&x| x != 0).map(|&x| v_p_int(x.unsigned_abs(), p)).min(),
            WittCoeff::Teich(d) => d.iter().position(|a| !a.is_zero()).map(|i| i as u32),
        }
    }

    /// Exact quotient by `p` of a coefficient divisible by `p`.
    pub fn div_p(&self, p: u64) -> WittCoeff {
        match self {
            WittCoeff::Int(c) => WittCoeff::Int(c.iter().map(|&x| x / p as i64).collect()),
            WittCoeff::Teich(d) => WittCoeff::Teich(d.iter().skip(1).cloned().collect()),
        }
    }

    fn check(&self, k: &Field) -> Result<()> {
        match self {
            WittCoeff::Int(c) if c.len() > k.degree() || c.is_empty() => Err(Error::InvalidPolynomial(format!(
                "coefficient with {} coordinates over a degree {} residue field",
                c.len(),
                k.degree()
            ))),
            WittCoeff::Teich(d) if d.iter().any(|a| a.field() != k) => Err(Error::FieldMismatch),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for WittCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WittCoeff::Int(c) if c.len() == 1 => write!(f, "{}", c[0]),
            WittCoeff::Int(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
            WittCoeff::Teich(d) => write!(f, "{}", TeichDigits(d.clone())),
        }
    }
}

/// Materialised data of `R` at Witt precision `M`.
#[derive(Debug)]
pub(crate) struct DvrLevel {
    pub(crate) w: Witt,
    // a_0..a_{e-1}
    pub(crate) f: Vec<Vec<u64>>,
    // p/π written in the basis 1, π, ..., π^{e-1}
    pub(crate) p_over_pi: Vec<Vec<u64>>,
}

pub struct DvrSpec {
    k: Field,
    f: Vec<WittCoeff>,
    e: u32,
    m_max: u32,
    // coefficients at the largest representable precision, for equality
    f_max: Vec<Vec<u64>>,
    levels: Mutex<HashMap<u32, Arc<DvrLevel>>>,
}

pub type Dvr = Arc<DvrSpec>;

impl PartialEq for DvrSpec {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.f_max == other.f_max
    }
}

impl Eq for DvrSpec {}

impl fmt::Debug for DvrSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DvrSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.f.iter().map(|c| c.to_string()).collect();
        write!(f, "W({})[x]/({})", self.k, parts.join(","))
    }
}

impl DvrSpec {
    /// `f` lists all coefficients in ascending order, leading one included.
    pub fn new(k: &Field, f: Vec<WittCoeff>) -> Result<Dvr> {
        if f.len() < 2 {
            return Err(Error::NotEisenstein("polynomial must have degree at least one".into()));
        }
        for c in &f {
            c.check(k)?;
        }
        let p = k.p();
        let e = (f.len() - 1) as u32;
        let m_max = max_precision(p);
        let wmax = WittRing::new(k, m_max)?;
        if f[e as usize].materialize(&wmax) != wmax.one().coords() {
            return Err(Error::NotEisenstein("polynomial is not monic".into()));
        }
        for (i, c) in f.iter().enumerate().take(e as usize) {
            match c.v_p(p) {
                Some(0) => return Err(Error::NotEisenstein(format!("coefficient {i} is a unit"))),
                Some(v) if i == 0 && v != 1 => {
                    return Err(Error::NotEisenstein(format!("constant term has p-adic valuation {v}")))
                }
                None if i == 0 => return Err(Error::NotEisenstein("constant term is zero".into())),
                _ => {}
            }
        }
        if e as u64 * (m_max as u64) >= u32::MAX as u64 / 4 {
            return Err(Error::InvalidPolynomial("degree too large".into()));
        }
        let f_max = f.iter().take(e as usize).map(|c| c.materialize(&wmax)).collect();
        Ok(Arc::new(DvrSpec { k: k.clone(), f, e, m_max, f_max, levels: Mutex::new(HashMap::new()) }))
    }

    /// Convenience constructor for integer coefficients over `F_p`-based or
    /// larger residue fields.
    pub fn from_ints(k: &Field, f: &[i64]) -> Result<Dvr> {
        DvrSpec::new(k, f.iter().map(|&c| WittCoeff::int(c)).collect())
    }

    pub fn residue_field(&self) -> &Field {
        &self.k
    }

    pub fn p(&self) -> u64 {
        self.k.p()
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.k.order()
    }

    pub fn poly(&self) -> &[WittCoeff] {
        &self.f
    }

    pub fn is_tame(&self) -> bool {
        !(self.e as u64).is_multiple_of(self.p())
    }

    /// Largest element precision `n` representable, in ν-units.
    pub fn max_precision(&self) -> u32 {
        self.e * (self.m_max - GUARD)
    }

    /// The coefficient ring `W(k)/p^M` used for elements known mod `m^n`.
    pub fn witt_ring_for(&self, n: u32) -> Result<Witt> {
        Ok(self.level_for(n)?.w.clone())
    }

    fn witt_digits_for(&self, n: u32) -> u32 {
        n.div_ceil(self.e) + GUARD
    }

    pub(crate) fn level(&self, m: u32) -> Result<Arc<DvrLevel>> {
        if let Some(l) = self.levels.lock().unwrap().get(&m) {
            return Ok(l.clone());
        }
        let w = WittRing::new(&self.k, m)?;
        let f: Vec<Vec<u64>> = self.f.iter().take(self.e as usize).map(|c| c.materialize(&w)).collect();
        let u0 = w.wrap(self.f[0].div_p(self.p()).materialize(&w));
        let u0_inv = u0.unit_inv()?;
        let neg_inv = w.raw_neg(u0_inv.coords());
        let e = self.e as usize;
        let mut p_over_pi = Vec::with_capacity(e);
        for j in 0..e {
            let a = if j + 1 < e { f[j + 1].clone() } else { w.raw_int(1) };
            p_over_pi.push(w.raw_mul(&a, &neg_inv));
        }
        let lvl = Arc::new(DvrLevel { w, f, p_over_pi });
        self.levels.lock().unwrap().insert(m, lvl.clone());
        Ok(lvl)
    }

    fn level_for(&self, n: u32) -> Result<Arc<DvrLevel>> {
        if n > self.max_precision() {
            return Err(Error::PrecisionOverflow { p: self.p(), exponent: self.witt_digits_for(n) });
        }
        self.level(self.witt_digits_for(n))
    }

    fn build(self: &Arc<Self>, lvl: Arc<DvrLevel>, n: u32, w: Vec<Vec<u64>>) -> DvrElem {
        DvrElem { ring: self.clone(), lvl, n, w }
    }

    pub fn zero(self: &Arc<Self>, n: u32) -> Result<DvrElem> {
        let lvl = self.level_for(n)?;
        let w = vec![lvl.w.raw_zero(); self.e as usize];
        Ok(self.build(lvl, n, w))
    }

    pub fn from_int(self: &Arc<Self>, v: i64, n: u32) -> Result<DvrElem> {
        let mut x = self.zero(n)?;
        x.w[0] = x.lvl.w.raw_int(v);
        Ok(x)
    }

    pub fn one(self: &Arc<Self>, n: u32) -> Result<DvrElem> {
        self.from_int(1, n)
    }

    /// The class of `x`, a uniformizer.
    pub fn uniformizer(self: &Arc<Self>, n: u32) -> Result<DvrElem> {
        let mut x = self.zero(n)?;
        if self.e == 1 {
            x.w[0] = x.lvl.w.raw_int(self.p() as i64);
        } else {
            x.w[1] = x.lvl.w.raw_int(1);
        }
        Ok(x)
    }

    /// `Σ c_j π^j` from Witt coefficients (all in one ring of sufficient precision).
    pub fn from_witt_coeffs(self: &Arc<Self>, c: &[WittElem], n: u32) -> Result<DvrElem> {
        if c.len() > self.e as usize {
            return Err(Error::InvalidPolynomial(format!("{} coefficients for e = {}", c.len(), self.e)));
        }
        let mut x = self.zero(n)?;
        for (j, cj) in c.iter().enumerate() {
            if cj.ring().residue_field() != &self.k {
                return Err(Error::FieldMismatch);
            }
            if cj.ring().precision() < x.lvl.w.precision() {
                return Err(Error::InsufficientPrecision {
                    requested: x.lvl.w.precision(),
                    available: cj.ring().precision(),
                });
            }
            x.w[j] = x.lvl.w.raw_reduce_from(cj.coords());
        }
        Ok(x)
    }

    pub fn from_witt(self: &Arc<Self>, c: &WittElem, n: u32) -> Result<DvrElem> {
        self.from_witt_coeffs(std::slice::from_ref(c), n)
    }

    pub fn teichmuller(self: &Arc<Self>, a: &FqElem, n: u32) -> Result<DvrElem> {
        let mut x = self.zero(n)?;
        x.w[0] = x.lvl.w.raw_teich(a);
        Ok(x)
    }

    /// `Σ h(a_r) π^r`, known modulo `m^n` with `n` the digit count.
    pub fn from_pi_digits(self: &Arc<Self>, digits: &[FqElem]) -> Result<DvrElem> {
        self.from_pi_digits_at(digits, digits.len() as u32)
    }

    /// As [`DvrSpec::from_pi_digits`], carried at precision `n ≥ digits.len()`
    /// (digits beyond the list are zero).
    pub fn from_pi_digits_at(self: &Arc<Self>, digits: &[FqElem], n: u32) -> Result<DvrElem> {
        if (digits.len() as u32) > n {
            return Err(Error::InsufficientPrecision { requested: digits.len() as u32, available: n });
        }
        if digits.iter().any(|a| a.field() != &self.k) {
            return Err(Error::FieldMismatch);
        }
        let mut x = self.zero(n)?;
        let lvl = x.lvl.clone();
        for a in digits.iter().rev() {
            x.w = self.raw_mul_pi(&lvl, &x.w);
            let t = lvl.w.raw_teich(a);
            lvl.w.raw_add_assign(&mut x.w[0], &t);
        }
        Ok(x)
    }

    pub fn parse_elem(self: &Arc<Self>, s: &str) -> Result<DvrElem> {
        let digits = parse_pi_digits(&self.k, s)?;
        self.from_pi_digits(&digits)
    }

    // ---- raw arithmetic in the basis 1, π, ..., π^{e-1} ----

    fn raw_mul_pi(&self, lvl: &DvrLevel, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let e = self.e as usize;
        let w = &lvl.w;
        let top = &a[e - 1];
        let mut out = Vec::with_capacity(e);
        out.push(w.raw_zero());
        out.extend(a[..e - 1].iter().cloned());
        if !WittRing::raw_is_zero(top) {
            for j in 0..e {
                let t = w.raw_mul(top, &lvl.f[j]);
                out[j] = w.raw_sub(&out[j], &t);
            }
        }
        out
    }

    fn raw_mul(&self, lvl: &DvrLevel, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let e = self.e as usize;
        let w = &lvl.w;
        let mut prod = vec![w.raw_zero(); 2 * e - 1];
        for (i, x) in a.iter().enumerate() {
            if WittRing::raw_is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = w.raw_mul(x, y);
                w.raw_add_assign(&mut prod[i + j], &t);
            }
        }
        for k in (e..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[k], w.raw_zero());
            if WittRing::raw_is_zero(&c) {
                continue;
            }
            for j in 0..e {
                let t = w.raw_mul(&c, &lvl.f[j]);
                prod[k - e + j] = w.raw_sub(&prod[k - e + j], &t);
            }
        }
        prod.truncate(e);
        prod
    }

    fn raw_val(&self, lvl: &DvrLevel, a: &[Vec<u64>]) -> Option<u32> {
        a.iter()
            .enumerate()
            .filter_map(|(j, c)| lvl.w.raw_val(c).map(|v| self.e * v + j as u32))
            .min()
    }

    pub fn residue_ring(self: &Arc<Self>, n: u32) -> Result<Rn> {
        ResidueRing::new(self, n)
    }
}

/// Element of `R` known modulo `m^n`.
#[derive(Clone)]
pub struct DvrElem {
    ring: Dvr,
    lvl: Arc<DvrLevel>,
    n: u32,
    w: Vec<Vec<u64>>,
}

impl DvrElem {
    pub fn ring(&self) -> &Dvr {
        &self.ring
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    /// Coefficients in the basis `1, π, ..., π^{e-1}`.
    pub fn witt_coeffs(&self) -> Vec<WittElem> {
        self.w.iter().map(|c| self.lvl.w.wrap(c.clone())).collect()
    }

    pub fn val(&self) -> DvrVal {
        match self.ring.raw_val(&self.lvl, &self.w) {
            Some(v) if v < self.n => DvrVal::Exact(v),
            _ => DvrVal::AtLeast(self.n),
        }
    }

    pub fn is_zero(&self) -> bool {
        !self.val().is_exact()
    }

    pub fn residue(&self) -> FqElem {
        self.lvl.w.raw_residue(&self.w[0])
    }

    fn at_level(&self, lvl: &Arc<DvrLevel>) -> Vec<Vec<u64>> {
        if Arc::ptr_eq(lvl, &self.lvl) {
            return self.w.clone();
        }
        self.w.iter().map(|c| lvl.w.raw_reduce_from(c)).collect()
    }

    /// The same element, forgetting precision beyond `n`.
    pub fn truncate(&self, n: u32) -> DvrElem {
        let n = n.min(self.n);
        let lvl = self.ring.level_for(n).expect("smaller level exists");
        let w = self.at_level(&lvl);
        self.ring.build(lvl, n, w)
    }

    /// Reinterprets the stored representative as known to precision `n`.
    /// Only sound when the representative is exact, e.g. a constant.
    pub fn extend_exact(&self, n: u32) -> Result<DvrElem> {
        let lvl = self.ring.level_for(n)?;
        let w = self.at_level(&lvl);
        Ok(self.ring.build(lvl, n, w))
    }

    fn same_ring(&self, other: &DvrElem) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    pub fn try_add(&self, other: &DvrElem) -> Result<DvrElem> {
        self.additive(other, false)
    }

    pub fn try_sub(&self, other: &DvrElem) -> Result<DvrElem> {
        self.additive(other, true)
    }

    fn additive(&self, other: &DvrElem, sub: bool) -> Result<DvrElem> {
        if !self.same_ring(other) {
            return Err(Error::RingMismatch);
        }
        let n = self.n.min(other.n);
        let lvl = self.ring.level_for(n)?;
        let a = self.at_level(&lvl);
        let b = other.at_level(&lvl);
        let w = a
            .iter()
            .zip(&b)
            .map(|(x, y)| if sub { lvl.w.raw_sub(x, y) } else { lvl.w.raw_add(x, y) })
            .collect();
        Ok(self.ring.build(lvl, n, w))
    }

    pub fn try_mul(&self, other: &DvrElem) -> Result<DvrElem> {
        if !self.same_ring(other) {
            return Err(Error::RingMismatch);
        }
        let (va, vb) = (self.val().floor(), other.val().floor());
        let m = self.lvl.w.precision().max(other.lvl.w.precision());
        let work = if self.lvl.w.precision() >= other.lvl.w.precision() { &self.lvl } else { &other.lvl };
        let n = (self.n + vb).min(other.n + va).min(self.ring.e * (m - GUARD));
        let a = self.at_level(work);
        let b = other.at_level(work);
        let prod = self.ring.raw_mul(work, &a, &b);
        let full = self.ring.build(work.clone(), n, prod);
        Ok(full.truncate(n))
    }

    pub fn pow(&self, mut k: u64) -> DvrElem {
        let mut base = self.clone();
        let mut acc = self.ring.one(self.n).expect("level exists");
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn mul_pi(&self) -> DvrElem {
        let n = (self.n + 1).min(self.ring.max_precision());
        let lvl = self.ring.level_for(n).expect("level exists");
        let a = self.at_level(&lvl);
        let w = self.ring.raw_mul_pi(&lvl, &a);
        self.ring.build(lvl, n, w)
    }

    /// The canonical expansion `x ≡ Σ_{r<len} h(a_r) π^r (mod m^len)`.
    pub fn pi_digits(&self, len: u32) -> Result<Vec<FqElem>> {
        if len > self.n {
            return Err(Error::InsufficientPrecision { requested: len, available: self.n });
        }
        let ring = &self.ring;
        let lvl = &self.lvl;
        let w = &lvl.w;
        let e = ring.e as usize;
        let mut x = self.w.clone();
        let mut out = Vec::with_capacity(len as usize);
        for _ in 0..len {
            let a = w.raw_residue(&x[0]);
            let t = w.raw_teich(&a);
            let u = w.raw_div_p(&w.raw_sub(&x[0], &t));
            out.push(a);
            let mut next = Vec::with_capacity(e);
            next.extend(x[1..].iter().cloned());
            next.push(w.raw_zero());
            for (j, c) in lvl.p_over_pi.iter().enumerate() {
                let t = w.raw_mul(&u, c);
                w.raw_add_assign(&mut next[j], &t);
            }
            x = next;
        }
        Ok(out)
    }

    pub fn digits(&self) -> Vec<FqElem> {
        self.pi_digits(self.n).expect("own precision")
    }

    pub fn project(&self, n: u32) -> Result<ResElem> {
        let rn = self.ring.residue_ring(n)?;
        rn.from_dvr(self)
    }
}

/// Equality modulo the smaller of the two precisions.
impl PartialEq for DvrElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.try_sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }
}

impl fmt::Debug for DvrElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod m^{})", self.n)
    }
}

impl fmt::Display for DvrElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_pi_digits(&self.digits()))
    }
}

pub fn render_pi_digits(d: &[FqElem]) -> String {
    let parts: Vec<String> = d.iter().map(|a| a.to_string()).collect();
    format!("\u{3c0}:{}", parts.join(","))
}

pub fn parse_pi_digits(k: &Field, s: &str) -> Result<Vec<FqElem>> {
    let s = s.trim();
    let body = s
        .strip_prefix('\u{3c0}')
        .or_else(|| s.strip_prefix("pi"))
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| Error::Parse(format!("element digit string must start with \"\u{3c0}:\": {s:?}")))?;
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_digits(body).into_iter().map(|d| FqElem::parse(k, d)).collect()
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr for &DvrElem {
            type Output = DvrElem;
            fn $m(self, rhs: &DvrElem) -> DvrElem {
                self.$inner(rhs).expect("operands must belong to the same ring")
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl Neg for &DvrElem {
    type Output = DvrElem;
    fn neg(self) -> DvrElem {
        let w = self.w.iter().map(|c| self.lvl.w.raw_neg(c)).collect();
        self.ring.build(self.lvl.clone(), self.n, w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DvrOp {
    Add,
    Sub,
    Mul,
}

pub fn dvr_arith(a: &DvrElem, b: &DvrElem, op: DvrOp) -> Result<DvrElem> {
    match op {
        DvrOp::Add => a.try_add(b),
        DvrOp::Sub => a.try_sub(b),
        DvrOp::Mul => a.try_mul(b),
    }
}

pub fn dvr_val(a: &DvrElem) -> DvrVal {
    a.val()
}

/// `R_n = R/m^n` with canonical digit-vector elements.
pub struct ResidueRing {
    dvr: Dvr,
    n: u32,
}

pub type Rn = Arc<ResidueRing>;

impl PartialEq for ResidueRing {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && (Arc::ptr_eq(&self.dvr, &other.dvr) || *self.dvr == *other.dvr)
    }
}

impl Eq for ResidueRing {}

impl fmt::Debug for ResidueRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/m^{}", self.dvr, self.n)
    }
}

impl ResidueRing {
    pub fn new(dvr: &Dvr, n: u32) -> Result<Rn> {
        if n == 0 {
            return Err(Error::InvalidPolynomial("residue ring length must be positive".into()));
        }
        if n > dvr.max_precision() {
            return Err(Error::PrecisionOverflow { p: dvr.p(), exponent: dvr.witt_digits_for(n) });
        }
        Ok(Arc::new(ResidueRing { dvr: dvr.clone(), n }))
    }

    pub fn dvr(&self) -> &Dvr {
        &self.dvr
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn cardinality(&self) -> u128 {
        (self.dvr.q() as u128).saturating_pow(self.n)
    }

    pub fn zero(self: &Arc<Self>) -> ResElem {
        let z = self.dvr.residue_field().zero();
        ResElem { ring: self.clone(), digits: vec![z; self.n as usize] }
    }

    pub fn one(self: &Arc<Self>) -> ResElem {
        let mut x = self.zero();
        x.digits[0] = self.dvr.residue_field().one();
        x
    }

    pub fn uniformizer(self: &Arc<Self>) -> ResElem {
        self.from_dvr(&self.dvr.uniformizer(self.n).expect("level exists")).expect("precision matches")
    }

    pub fn from_digits(self: &Arc<Self>, digits: &[FqElem]) -> Result<ResElem> {
        if digits.len() > self.n as usize {
            return Err(Error::Parse(format!("{} digits for a ring of length {}", digits.len(), self.n)));
        }
        let k = self.dvr.residue_field();
        if digits.iter().any(|a| a.field() != k) {
            return Err(Error::FieldMismatch);
        }
        let mut d = digits.to_vec();
        d.resize(self.n as usize, k.zero());
        Ok(ResElem { ring: self.clone(), digits: d })
    }

    /// `pr_n`.
    pub fn from_dvr(self: &Arc<Self>, x: &DvrElem) -> Result<ResElem> {
        if !(Arc::ptr_eq(x.ring(), &self.dvr) || **x.ring() == *self.dvr) {
            return Err(Error::RingMismatch);
        }
        let digits = x.pi_digits(self.n)?;
        Ok(ResElem { ring: self.clone(), digits })
    }

    pub fn parse_elem(self: &Arc<Self>, s: &str) -> Result<ResElem> {
        let digits = parse_pi_digits(self.dvr.residue_field(), s)?;
        self.from_digits(&digits)
    }

    /// Element with the given lexicographic index (`a_0` most significant).
    pub fn from_index(self: &Arc<Self>, mut idx: u128) -> ResElem {
        let q = self.dvr.q() as u128;
        let k = self.dvr.residue_field();
        let mut digits = vec![k.zero(); self.n as usize];
        for slot in digits.iter_mut().rev() {
            *slot = k.from_index((idx % q) as u64);
            idx /= q;
        }
        ResElem { ring: self.clone(), digits }
    }

    /// All `q^n` elements in lexicographic order of digit vectors.
    pub fn elements(self: &Arc<Self>) -> Result<impl Iterator<Item = ResElem> + '_> {
        let size = self.cardinality();
        let cap = enum_cap();
        if size > cap {
            return Err(Error::TooLarge { size, cap });
        }
        Ok((0..size).map(move |i| self.from_index(i)))
    }
}

/// Element of `R_n`, stored as its digit vector.
#[derive(Clone)]
pub struct ResElem {
    ring: Rn,
    digits: Vec<FqElem>,
}

impl ResElem {
    pub fn ring(&self) -> &Rn {
        &self.ring
    }

    pub fn digits(&self) -> &[FqElem] {
        &self.digits
    }

    pub fn index(&self) -> u128 {
        let q = self.ring.dvr.q() as u128;
        self.digits.iter().fold(0u128, |acc, a| acc * q + a.index() as u128)
    }

    pub fn to_dvr(&self) -> DvrElem {
        self.ring.dvr.from_pi_digits(&self.digits).expect("digits belong to the ring")
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|a| a.is_zero())
    }

    pub fn val(&self) -> DvrVal {
        match self.digits.iter().position(|a| !a.is_zero()) {
            Some(i) => DvrVal::Exact(i as u32),
            None => DvrVal::AtLeast(self.ring.n),
        }
    }

    /// `pr^m_n`.
    pub fn project_between(&self, n: u32) -> Result<ResElem> {
        if n > self.ring.n {
            return Err(Error::InsufficientPrecision { requested: n, available: self.ring.n });
        }
        let target = self.ring.dvr.residue_ring(n)?;
        Ok(ResElem { ring: target, digits: self.digits[..n as usize].to_vec() })
    }

    pub fn pow(&self, k: u64) -> ResElem {
        self.ring.from_dvr(&self.to_dvr().pow(k)).expect("precision preserved")
    }

    fn combine(&self, other: &ResElem, f: impl Fn(&DvrElem, &DvrElem) -> DvrElem) -> ResElem {
        assert!(*self.ring == *other.ring, "operands must belong to the same residue ring");
        let r = f(&self.to_dvr(), &other.to_dvr());
        self.ring.from_dvr(&r).expect("precision preserved")
    }
}

impl PartialEq for ResElem {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.digits == other.digits
    }
}

impl Eq for ResElem {}

impl std::hash::Hash for ResElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.digits.hash(state);
    }
}

impl fmt::Debug for ResElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ResElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_pi_digits(&self.digits))
    }
}

impl Add for &ResElem {
    type Output = ResElem;
    fn add(self, rhs: &ResElem) -> ResElem {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub for &ResElem {
    type Output = ResElem;
    fn sub(self, rhs: &ResElem) -> ResElem {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Mul for &ResElem {
    type Output = ResElem;
    fn mul(self, rhs: &ResElem) -> ResElem {
        self.combine(rhs, |a, b| a * b)
    }
}

impl Neg for &ResElem {
    type Output = ResElem;
    fn neg(self) -> ResElem {
        self.ring.from_dvr(&-&self.to_dvr()).expect("precision preserved")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resfield::FieldSpec;

    fn f3() -> Field {
        FieldSpec::prime_field(3).unwrap()
    }

    fn sqrt3() -> Dvr {
        DvrSpec::from_ints(&f3(), &[-3, 0, 1]).unwrap()
    }

    #[test]
    fn eisenstein_validation() {
        assert_eq!(sqrt3().e(), 2);
        assert!(matches!(DvrSpec::from_ints(&f3(), &[-9, 0, 1]), Err(Error::NotEisenstein(_))));
        assert!(matches!(DvrSpec::from_ints(&f3(), &[-3, 1, 1]), Err(Error::NotEisenstein(_))));
        assert!(matches!(DvrSpec::from_ints(&f3(), &[-3, 0, 2]), Err(Error::NotEisenstein(_))));
        let f2 = FieldSpec::prime_field(2).unwrap();
        assert_eq!(DvrSpec::from_ints(&f2, &[-10, 0, 1]).unwrap().e(), 2);
        let z3 = DvrSpec::from_ints(&f3(), &[-3, 1]).unwrap();
        assert_eq!(z3.e(), 1);
    }

    #[test]
    fn arithmetic_examples() {
        let r = sqrt3();
        let pi = r.uniformizer(4).unwrap();
        let sq = &pi * &pi;
        assert_eq!(sq, r.from_int(3, 4).unwrap());
        assert_eq!(sq.val(), DvrVal::Exact(2));
        assert_eq!(r.zero(4).unwrap().val(), DvrVal::AtLeast(4));
        assert_eq!(r.zero(4).unwrap().val().to_string(), ">=4");
        let one = r.one(6).unwrap();
        let pi6 = r.uniformizer(6).unwrap();
        let x = &(&one + &pi6) * &(&one - &pi6);
        assert_eq!(x, r.from_int(-2, 6).unwrap());
        assert_eq!(x.val(), DvrVal::Exact(0));
        assert_eq!(r.from_int(3, 10).unwrap().val(), DvrVal::Exact(2));
    }

    #[test]
    fn precision_propagation() {
        let r = sqrt3();
        let a = r.uniformizer(4).unwrap();
        let b = r.from_int(3, 5).unwrap();
        let prod = &a * &b;
        assert_eq!(prod.precision(), 6);
        assert_eq!((&a + &b).precision(), 4);
    }

    #[test]
    fn digit_examples() {
        let r = sqrt3();
        let k = f3();
        let d = r.from_int(3, 4).unwrap().pi_digits(4).unwrap();
        assert_eq!(d, vec![k.from_int(0), k.from_int(0), k.from_int(1), k.from_int(0)]);
        let d = r.from_int(5, 6).unwrap().pi_digits(6).unwrap();
        let want: Vec<FqElem> = [2, 0, 2, 0, 1, 0].iter().map(|&v| k.from_int(v)).collect();
        assert_eq!(d, want);
        let x = r.from_int(5, 6).unwrap();
        assert_eq!(r.from_pi_digits(&d).unwrap(), x);
        assert_eq!(x.to_string(), "\u{3c0}:2,0,2,0,1,0");
        assert_eq!(r.parse_elem("\u{3c0}:2,0,2,0,1,0").unwrap(), x);
        assert!(matches!(x.pi_digits(7), Err(Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn residue_rings() {
        let r = sqrt3();
        let r4 = r.residue_ring(4).unwrap();
        assert_eq!(r4.cardinality(), 81);
        let r2 = r.residue_ring(2).unwrap();
        let all: Vec<ResElem> = r2.elements().unwrap().collect();
        assert_eq!(all.len(), 9);
        assert!(all[0].is_zero());
        assert_eq!(all[1].digits()[1], f3().from_int(1));
        let k9 = FieldSpec::new(3, 2, None).unwrap();
        let s = DvrSpec::from_ints(&k9, &[-3, 0, 1]).unwrap();
        assert_eq!(s.residue_ring(2).unwrap().elements().unwrap().count(), 81);
        let x = r.residue_ring(3).unwrap().parse_elem("\u{3c0}:1,2,1").unwrap();
        assert_eq!(x.project_between(2).unwrap().to_string(), "\u{3c0}:1,2");
        for (i, el) in r2.elements().unwrap().enumerate() {
            assert_eq!(el.index(), i as u128);
        }
    }

    #[test]
    fn degree_two_residue_field() {
        let k9 = FieldSpec::new(3, 2, None).unwrap();
        let s = DvrSpec::new(&k9, vec![WittCoeff::Int(vec![3, 3]), WittCoeff::int(0), WittCoeff::int(1)]).unwrap();
        let pi = s.uniformizer(6).unwrap();
        let y = s.teichmuller(&k9.generator(), 6).unwrap();
        let x = &(&pi * &y) + &s.from_int(2, 6).unwrap();
        let d = x.pi_digits(6).unwrap();
        assert_eq!(s.from_pi_digits(&d).unwrap(), x);
        let sq = &pi * &pi;
        assert_eq!(sq.val(), DvrVal::Exact(2));
    }
}
