//! The unramified coefficient ring `W(k)/p^M`, realised as
//! `(Z/p^M)[y]/(G)` where `G` is the integer lift of the residue field's
//! defining polynomial, with Teichmüller representatives and the functorial
//! map induced by a residue-field embedding.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::resfield::{Field, FieldEmbedding, FqElem};

/// Largest `M` with `p^M < 2^63`.
pub fn max_precision(p: u64) -> u32 {
    let mut m = 0u32;
    let mut acc: u128 = 1;
    while acc * (p as u128) < (1u128 << 63) {
        acc *= p as u128;
        m += 1;
    }
    m
}

pub(crate) fn v_p_int(mut x: u64, p: u64) -> u32 {
    debug_assert!(x != 0);
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// `W(k)/p^M`.
pub struct WittRing {
    k: Field,
    m: u32,
    modulus: u64,
    lifted: Vec<u64>,
    teich: Mutex<HashMap<u64, Vec<u64>>>,
}

pub type Witt = Arc<WittRing>;

impl PartialEq for WittRing {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.k == other.k
    }
}

impl Eq for WittRing {}

impl fmt::Debug for WittRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({})/p^{}", self.k, self.m)
    }
}

impl WittRing {
    pub fn new(k: &Field, m: u32) -> Result<Witt> {
        let p = k.p();
        if m == 0 || m > max_precision(p) {
            return Err(Error::PrecisionOverflow { p, exponent: m });
        }
        let modulus = p.pow(m);
        // canonical lift: same integer coefficients as the residue polynomial
        let lifted = k.defining_poly().to_vec();
        Ok(Arc::new(WittRing { k: k.clone(), m, modulus, lifted, teich: Mutex::new(HashMap::new()) }))
    }

    pub fn residue_field(&self) -> &Field {
        &self.k
    }

    pub fn precision(&self) -> u32 {
        self.m
    }

    pub fn p(&self) -> u64 {
        self.k.p()
    }

    pub fn degree(&self) -> usize {
        self.k.degree()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn lifted_poly(&self) -> &[u64] {
        &self.lifted
    }

    // ---- raw coordinate arithmetic, vectors of length d ----

    pub(crate) fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub(crate) fn reduce_int(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.modulus as i128) as u64
    }

    pub(crate) fn raw_zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }

    pub(crate) fn raw_int(&self, v: i64) -> Vec<u64> {
        let mut c = self.raw_zero();
        c[0] = self.reduce_int(v);
        c
    }

    pub(crate) fn raw_add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        a.iter().zip(b).map(|(&x, &y)| (x + y) % m).collect()
    }

    pub(crate) fn raw_add_assign(&self, a: &mut [u64], b: &[u64]) {
        let m = self.modulus;
        for (x, &y) in a.iter_mut().zip(b) {
            *x = (*x + y) % m;
        }
    }

    pub(crate) fn raw_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        a.iter().zip(b).map(|(&x, &y)| (x + m - y) % m).collect()
    }

    pub(crate) fn raw_neg(&self, a: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        a.iter().map(|&x| (m - x) % m).collect()
    }

    pub(crate) fn raw_scale(&self, a: &[u64], s: u64) -> Vec<u64> {
        a.iter().map(|&x| self.mulmod(x, s % self.modulus)).collect()
    }

    pub(crate) fn raw_is_zero(a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub(crate) fn raw_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let d = self.degree();
        if d == 1 {
            return vec![self.mulmod(a[0], b[0])];
        }
        let m = self.modulus;
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + self.mulmod(x, y)) % m;
            }
        }
        for k in (d..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                let t = self.mulmod(c, self.lifted[j]);
                prod[k - d + j] = (prod[k - d + j] + m - t) % m;
            }
        }
        prod.truncate(d);
        prod
    }

    pub(crate) fn raw_pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.raw_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(&acc, &base);
            }
            base = self.raw_mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// p-adic valuation of a coordinate vector; `None` for zero.
    pub(crate) fn raw_val(&self, a: &[u64]) -> Option<u32> {
        a.iter().filter(|&&x| x != 0).map(|&x| v_p_int(x, self.p())).min()
    }

    pub(crate) fn raw_residue(&self, a: &[u64]) -> FqElem {
        let p = self.p();
        let c: Vec<u64> = a.iter().map(|&x| x % p).collect();
        self.k.from_coeffs(&c).expect("coordinate count matches")
    }

    pub(crate) fn raw_lift(&self, a: &FqElem) -> Vec<u64> {
        a.coeffs().to_vec()
    }

    pub(crate) fn raw_unit_inv(&self, a: &[u64]) -> Result<Vec<u64>> {
        let r = self.raw_residue(a);
        let r_inv = r.inv().map_err(|_| Error::NotAUnit)?;
        let mut x = self.raw_lift(&r_inv);
        // Newton iteration x <- x(2 - a x) doubles the correct p-adic digits
        let mut correct = 1u32;
        let two = self.raw_int(2);
        while correct < self.m {
            let ax = self.raw_mul(a, &x);
            x = self.raw_mul(&x, &self.raw_sub(&two, &ax));
            correct *= 2;
        }
        debug_assert_eq!(self.raw_mul(a, &x), self.raw_int(1));
        Ok(x)
    }

    /// Exact division by `p` of a vector all of whose coordinates are
    /// divisible by `p`; the top p-adic digit of the result is zero.
    pub(crate) fn raw_div_p(&self, a: &[u64]) -> Vec<u64> {
        let p = self.p();
        a.iter()
            .map(|&x| {
                debug_assert!(x % p == 0);
                x / p
            })
            .collect()
    }

    /// Teichmüller representative of `a`, the fixed point of `x -> x^q`
    /// starting from any lift.
    pub(crate) fn raw_teich(&self, a: &FqElem) -> Vec<u64> {
        let key = a.index();
        if let Some(v) = self.teich.lock().unwrap().get(&key) {
            return v.clone();
        }
        let q = self.k.order();
        let log2_pm = 64 - (self.modulus - 1).leading_zeros().min(63);
        let cap = self.m as u64 * self.degree() as u64 * log2_pm.max(1) as u64;
        let mut x = self.raw_lift(a);
        let mut steps = 0u64;
        loop {
            let next = self.raw_pow(&x, q);
            if next == x {
                break;
            }
            x = next;
            steps += 1;
            assert!(steps <= cap, "Teichmüller iteration failed to stabilise within {cap} steps");
        }
        self.teich.lock().unwrap().insert(key, x.clone());
        x
    }

    /// Reduces coordinates of an element of a ring of higher precision.
    pub(crate) fn raw_reduce_from(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| x % self.modulus).collect()
    }

    // ---- public element constructors ----

    pub fn zero(self: &Arc<Self>) -> WittElem {
        WittElem { ring: self.clone(), c: self.raw_zero() }
    }

    pub fn one(self: &Arc<Self>) -> WittElem {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> WittElem {
        WittElem { ring: self.clone(), c: self.raw_int(v) }
    }

    /// The class of `y`, a lift of the residue field generator.
    pub fn generator(self: &Arc<Self>) -> WittElem {
        if self.degree() == 1 {
            return self.from_int(-(self.lifted[0] as i64));
        }
        let mut c = self.raw_zero();
        c[1] = 1;
        WittElem { ring: self.clone(), c }
    }

    pub fn from_coords(self: &Arc<Self>, coords: &[i64]) -> Result<WittElem> {
        if coords.len() > self.degree() {
            return Err(Error::Parse(format!("{} coordinates for degree {}", coords.len(), self.degree())));
        }
        let mut c: Vec<u64> = coords.iter().map(|&v| self.reduce_int(v)).collect();
        c.resize(self.degree(), 0);
        Ok(WittElem { ring: self.clone(), c })
    }

    pub(crate) fn wrap(self: &Arc<Self>, c: Vec<u64>) -> WittElem {
        debug_assert_eq!(c.len(), self.degree());
        WittElem { ring: self.clone(), c }
    }

    pub fn teichmuller(self: &Arc<Self>, a: &FqElem) -> WittElem {
        assert!(a.field() == &self.k, "element outside the residue field");
        WittElem { ring: self.clone(), c: self.raw_teich(a) }
    }

    /// Reassembles `Σ h(a_r) p^r`.
    pub fn from_digits(self: &Arc<Self>, digits: &TeichDigits) -> WittElem {
        let mut acc = self.raw_zero();
        let mut pw = 1u64;
        for a in digits.0.iter().take(self.m as usize) {
            let t = self.raw_teich(a);
            self.raw_add_assign(&mut acc, &self.raw_scale(&t, pw));
            pw = pw.wrapping_mul(self.p()) % self.modulus;
        }
        WittElem { ring: self.clone(), c: acc }
    }

    pub fn parse_digits(self: &Arc<Self>, s: &str) -> Result<WittElem> {
        let d = TeichDigits::parse(&self.k, s)?;
        Ok(self.from_digits(&d))
    }

    pub fn elements_count(&self) -> u128 {
        (self.k.order() as u128).pow(self.m)
    }
}

/// Element of `W(k)/p^M` in power-basis coordinates.
#[derive(Clone)]
pub struct WittElem {
    ring: Witt,
    c: Vec<u64>,
}

impl WittElem {
    pub fn ring(&self) -> &Witt {
        &self.ring
    }

    pub fn coords(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        WittRing::raw_is_zero(&self.c)
    }

    /// p-adic valuation, `None` when the element vanishes mod `p^M`.
    pub fn valuation(&self) -> Option<u32> {
        self.ring.raw_val(&self.c)
    }

    pub fn residue(&self) -> FqElem {
        self.ring.raw_residue(&self.c)
    }

    pub fn pow(&self, e: u64) -> WittElem {
        self.ring.wrap(self.ring.raw_pow(&self.c, e))
    }

    pub fn unit_inv(&self) -> Result<WittElem> {
        Ok(self.ring.wrap(self.ring.raw_unit_inv(&self.c)?))
    }

    /// Teichmüller digits `(a_0, ..., a_{M-1})` with `x = Σ h(a_r) p^r`.
    pub fn teich_digits(&self) -> TeichDigits {
        let ring = &self.ring;
        let mut x = self.c.clone();
        let mut out = Vec::with_capacity(ring.m as usize);
        for _ in 0..ring.m {
            let a = ring.raw_residue(&x);
            let t = ring.raw_teich(&a);
            x = ring.raw_div_p(&ring.raw_sub(&x, &t));
            out.push(a);
        }
        TeichDigits(out)
    }

    fn assert_same(&self, other: &WittElem) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "operands must belong to the same Witt ring"
        );
    }
}

impl PartialEq for WittElem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.c == other.c
    }
}

impl Eq for WittElem {}

impl fmt::Debug for WittElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.c)
    }
}

/// Digit form `t:a_0,a_1,...`.
impl fmt::Display for WittElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.teich_digits())
    }
}

impl Add for &WittElem {
    type Output = WittElem;
    fn add(self, rhs: &WittElem) -> WittElem {
        self.assert_same(rhs);
        self.ring.wrap(self.ring.raw_add(&self.c, &rhs.c))
    }
}

impl Sub for &WittElem {
    type Output = WittElem;
    fn sub(self, rhs: &WittElem) -> WittElem {
        self.assert_same(rhs);
        self.ring.wrap(self.ring.raw_sub(&self.c, &rhs.c))
    }
}

impl Mul for &WittElem {
    type Output = WittElem;
    fn mul(self, rhs: &WittElem) -> WittElem {
        self.assert_same(rhs);
        self.ring.wrap(self.ring.raw_mul(&self.c, &rhs.c))
    }
}

impl Neg for &WittElem {
    type Output = WittElem;
    fn neg(self) -> WittElem {
        self.ring.wrap(self.ring.raw_neg(&self.c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

pub fn witt_arith(a: &WittElem, b: &WittElem, op: RingOp) -> Result<WittElem> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch);
    }
    Ok(match op {
        RingOp::Add => a + b,
        RingOp::Sub => a - b,
        RingOp::Mul => a * b,
    })
}

/// Teichmüller digit vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeichDigits(pub Vec<FqElem>);

impl TeichDigits {
    pub fn parse(k: &Field, s: &str) -> Result<TeichDigits> {
        let body = s
            .trim()
            .strip_prefix("t:")
            .ok_or_else(|| Error::Parse(format!("Witt digit string must start with \"t:\": {s:?}")))?;
        if body.trim().is_empty() {
            return Ok(TeichDigits(Vec::new()));
        }
        let digits = split_digits(body).into_iter().map(|d| FqElem::parse(k, d)).collect::<Result<_>>()?;
        Ok(TeichDigits(digits))
    }

    /// Index of the first nonzero digit.
    pub fn valuation(&self) -> Option<u32> {
        self.0.iter().position(|a| !a.is_zero()).map(|i| i as u32)
    }
}

/// Splits a comma-separated digit list, leaving `[..;..]` groups intact.
pub(crate) fn split_digits(body: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (i, ch) in body.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(body[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(body[start..].trim());
    out
}

impl fmt::Display for TeichDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "t:{}", parts.join(","))
    }
}

/// The ring homomorphism `W(k1)/p^M -> W(k2)/p^M` inducing a residue-field
/// embedding.
#[derive(Clone, Debug)]
pub struct WittHom {
    source: Witt,
    target: Witt,
    psi: FieldEmbedding,
    // image of the lifted generator y
    image_y: Vec<u64>,
}

/// `W(ψ)` at precision `M`.
pub fn witt_functor(psi: &FieldEmbedding, m: u32) -> Result<WittHom> {
    let source = WittRing::new(psi.source(), m)?;
    let target = WittRing::new(psi.target(), m)?;
    WittHom::new(psi, &source, &target)
}

impl WittHom {
    pub fn new(psi: &FieldEmbedding, source: &Witt, target: &Witt) -> Result<WittHom> {
        if source.k != *psi.source() || target.k != *psi.target() {
            return Err(Error::FieldMismatch);
        }
        if source.m != target.m {
            return Err(Error::RingMismatch);
        }
        let y = source.generator();
        let image_y = Self::map_digits(psi, target, &y.teich_digits()).c;
        Ok(WittHom { source: source.clone(), target: target.clone(), psi: psi.clone(), image_y })
    }

    fn map_digits(psi: &FieldEmbedding, target: &Witt, digits: &TeichDigits) -> WittElem {
        let mapped = TeichDigits(digits.0.iter().map(|a| psi.apply(a)).collect());
        target.from_digits(&mapped)
    }

    pub fn psi(&self) -> &FieldEmbedding {
        &self.psi
    }

    pub fn source(&self) -> &Witt {
        &self.source
    }

    pub fn target(&self) -> &Witt {
        &self.target
    }

    pub(crate) fn raw_apply(&self, c: &[u64]) -> Vec<u64> {
        let t = &self.target;
        let mut acc = t.raw_zero();
        for &ci in c.iter().rev() {
            acc = t.raw_mul(&acc, &self.image_y);
            acc[0] = (acc[0] + ci) % t.modulus;
        }
        acc
    }

    /// Evaluates `Σ c_i y^i ↦ Σ c_i W(ψ)(y)^i`.
    pub fn apply(&self, x: &WittElem) -> WittElem {
        assert!(*x.ring == *self.source, "element outside the source ring");
        self.target.wrap(self.raw_apply(&x.c))
    }

    /// Digitwise action `Σ h(a_r) p^r ↦ Σ h(ψ(a_r)) p^r`.
    pub fn apply_digitwise(&self, x: &WittElem) -> WittElem {
        Self::map_digits(&self.psi, &self.target, &x.teich_digits())
    }
}
