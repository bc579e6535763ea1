//! Finite residue fields `F_{p^d}` presented as `F_p[y]/(g)` for a monic
//! irreducible `g`, together with Frobenius, `p`-th roots and explicit field
//! embeddings.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest extension degree accepted for brute-force irreducibility checks.
pub const MAX_DEGREE: usize = 12;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// A validated finite field `F_p[y]/(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    d: usize,
    // monic, ascending, length d + 1
    poly: Vec<u64>,
}

pub type Field = Arc<FieldSpec>;

// ---- dense polynomial helpers over F_p (ascending coefficients) ----

fn mod_inv(a: u64, p: u64) -> u64 {
    // p is prime, a != 0 mod p
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Remainder of `a` modulo the monic-up-to-unit `b` over F_p.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    for k in (db..r.len()).rev() {
        let c = r[k] * lead_inv % p;
        if c == 0 {
            continue;
        }
        for j in 0..=db {
            r[k - db + j] = (r[k - db + j] + p - c * b[j] % p) % p;
        }
    }
    r.truncate(db);
    r
}

fn has_factor_of_degree(poly: &[u64], k: usize, p: u64) -> bool {
    // every monic polynomial of degree k
    let count = p.pow(k as u32);
    for idx in 0..count {
        let mut cand = Vec::with_capacity(k + 1);
        let mut t = idx;
        for _ in 0..k {
            cand.push(t % p);
            t /= p;
        }
        cand.push(1);
        let r = poly_rem(poly, &cand, p);
        if r.iter().all(|&c| c == 0) {
            return true;
        }
    }
    false
}

fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let d = poly.len() - 1;
    (1..=d / 2).all(|k| !has_factor_of_degree(poly, k, p))
}

fn render_poly(poly: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in poly.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        if i == 0 {
            terms.push(c.to_string());
        } else if c == 1 {
            terms.push(mono);
        } else {
            terms.push(format!("{c}{mono}"));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl FieldSpec {
    /// Builds `F_{p^d}`. Without an explicit polynomial the lexicographically
    /// smallest monic irreducible one (ascending coefficient order) is used.
    pub fn new(p: u64, d: usize, poly: Option<&[u64]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 || d > MAX_DEGREE {
            return Err(Error::InvalidPolynomial(format!("degree {d} out of range")));
        }
        let poly = match poly {
            Some(c) => {
                if c.len() != d + 1 || c[d] % p != 1 {
                    return Err(Error::InvalidPolynomial(format!(
                        "expected a monic polynomial of degree {d}, got {c:?}"
                    )));
                }
                let c: Vec<u64> = c.iter().map(|&x| x % p).collect();
                if !is_irreducible(&c, p) {
                    return Err(Error::Reducible(render_poly(&c)));
                }
                c
            }
            None => Self::default_poly(p, d),
        };
        Ok(Arc::new(FieldSpec { p, d, poly }))
    }

    pub fn prime_field(p: u64) -> Result<Field> {
        Self::new(p, 1, None)
    }

    fn default_poly(p: u64, d: usize) -> Vec<u64> {
        // c_0 is the most significant position of the lexicographic order
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut c = vec![0u64; d + 1];
            let mut t = idx;
            for i in (0..d).rev() {
                c[i] = t % p;
                t /= p;
            }
            c[d] = 1;
            if is_irreducible(&c, p) {
                return c;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// Field order `q = p^d`.
    pub fn order(&self) -> u64 {
        self.p.pow(self.d as u32)
    }

    pub fn defining_poly(&self) -> &[u64] {
        &self.poly
    }

    pub fn zero(self: &Arc<Self>) -> FqElem {
        FqElem { field: self.clone(), coeffs: vec![0; self.d] }
    }

    pub fn one(self: &Arc<Self>) -> FqElem {
        let mut c = vec![0; self.d];
        c[0] = 1;
        FqElem { field: self.clone(), coeffs: c }
    }

    /// The class of `y` in `F_p[y]/(g)`.
    pub fn generator(self: &Arc<Self>) -> FqElem {
        if self.d == 1 {
            // y = -g_0 in the prime field
            let c = (self.p - self.poly[0]) % self.p;
            return FqElem { field: self.clone(), coeffs: vec![c] };
        }
        let mut c = vec![0; self.d];
        c[1] = 1;
        FqElem { field: self.clone(), coeffs: c }
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> FqElem {
        let mut c = vec![0; self.d];
        c[0] = v.rem_euclid(self.p as i64) as u64;
        FqElem { field: self.clone(), coeffs: c }
    }

    /// Element with the given power-basis coordinates (reduced mod p, padded).
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[u64]) -> Result<FqElem> {
        if coeffs.len() > self.d {
            return Err(Error::Parse(format!(
                "{} coordinates given for a degree-{} field",
                coeffs.len(),
                self.d
            )));
        }
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % self.p).collect();
        c.resize(self.d, 0);
        Ok(FqElem { field: self.clone(), coeffs: c })
    }

    /// Inverse of [`FqElem::index`].
    pub fn from_index(self: &Arc<Self>, mut idx: u64) -> FqElem {
        let mut c = vec![0; self.d];
        for i in (0..self.d).rev() {
            c[i] = idx % self.p;
            idx /= self.p;
        }
        FqElem { field: self.clone(), coeffs: c }
    }

    /// All elements in ascending lexicographic order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    pub fn parse(s: &str) -> Result<Field> {
        let err = || Error::Parse(format!("bad field spec {s:?}"));
        let inner = s.trim().strip_prefix("F(").and_then(|r| r.strip_suffix(')')).ok_or_else(err)?;
        let (pd, coeffs) = inner.split_once(';').ok_or_else(err)?;
        let (p, d) = pd.split_once('^').ok_or_else(err)?;
        let p: u64 = p.trim().parse().map_err(|_| err())?;
        let d: usize = d.trim().parse().map_err(|_| err())?;
        let mut poly = coeffs
            .split(',')
            .map(|c| c.trim().parse::<u64>().map_err(|_| err()))
            .collect::<Result<Vec<_>>>()?;
        poly.push(1);
        FieldSpec::new(p, d, Some(&poly))
    }

    fn mul_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let d = self.d;
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for k in (d..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                prod[k - d + j] = (prod[k - d + j] + p - c * self.poly[j] % p) % p;
            }
            prod[k] = 0;
        }
        prod.truncate(d);
        prod
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.poly[..self.d].iter().map(|c| c.to_string()).collect();
        write!(f, "F({}^{};{})", self.p, self.d, cs.join(","))
    }
}

/// Element of a finite field, stored as power-basis coordinates.
#[derive(Clone)]
pub struct FqElem {
    field: Field,
    coeffs: Vec<u64>,
}

impl FqElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Position in the lexicographic order of coordinate vectors.
    pub fn index(&self) -> u64 {
        self.coeffs.iter().fold(0, |acc, &c| acc * self.field.p + c)
    }

    fn same_field(&self, other: &FqElem) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    fn assert_same(&self, other: &FqElem) {
        assert!(self.same_field(other), "operands must belong to the same field");
    }

    pub fn pow(&self, mut e: u64) -> FqElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<FqElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.field.order() - 2))
    }

    pub fn div(&self, other: &FqElem) -> Result<FqElem> {
        if !self.same_field(other) {
            return Err(Error::FieldMismatch);
        }
        Ok(self * &other.inv()?)
    }

    pub fn frobenius(&self) -> FqElem {
        self.pow(self.field.p)
    }

    /// The unique `b` with `b^p = self`.
    pub fn pth_root(&self) -> FqElem {
        let mut r = self.clone();
        for _ in 1..self.field.d {
            r = r.frobenius();
        }
        r
    }

    pub fn parse(field: &Field, s: &str) -> Result<FqElem> {
        let s = s.trim();
        let err = || Error::Parse(format!("bad field element {s:?}"));
        let coords: Vec<u64> = if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            inner
                .split(';')
                .map(|c| c.trim().parse::<u64>().map_err(|_| err()))
                .collect::<Result<_>>()?
        } else {
            vec![s.parse::<u64>().map_err(|_| err())?]
        };
        if coords.iter().any(|&c| c >= field.p) {
            return Err(err());
        }
        field.from_coeffs(&coords)
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Coefficient form: a bare integer over the prime field, `[c_0;c_1;...]` otherwise.
impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.d == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
            write!(f, "[{}]", cs.join(";"))
        }
    }
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl Eq for FqElem {}

impl Hash for FqElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FqElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FqElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl Add for &FqElem {
    type Output = FqElem;
    fn add(self, rhs: &FqElem) -> FqElem {
        self.assert_same(rhs);
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| (a + b) % p).collect();
        FqElem { field: self.field.clone(), coeffs }
    }
}

impl Sub for &FqElem {
    type Output = FqElem;
    fn sub(self, rhs: &FqElem) -> FqElem {
        self.assert_same(rhs);
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| (a + p - b) % p).collect();
        FqElem { field: self.field.clone(), coeffs }
    }
}

impl Neg for &FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|a| (p - a) % p).collect();
        FqElem { field: self.field.clone(), coeffs }
    }
}

impl Mul for &FqElem {
    type Output = FqElem;
    fn mul(self, rhs: &FqElem) -> FqElem {
        self.assert_same(rhs);
        FqElem { field: self.field.clone(), coeffs: self.field.mul_raw(&self.coeffs, &rhs.coeffs) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary field operation.
pub fn field_arith(a: &FqElem, b: &FqElem, op: FieldOp) -> Result<FqElem> {
    if !a.same_field(b) {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.div(b)?,
    })
}

/// A ring homomorphism `k1 -> k2`, fixed by the image of the generator.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    source: Field,
    target: Field,
    image: FqElem,
}

impl FieldEmbedding {
    pub fn new(source: &Field, target: &Field, image: FqElem) -> Result<Self> {
        if source.p != target.p {
            return Err(Error::CharMismatch(source.p, target.p));
        }
        if image.field() != target {
            return Err(Error::FieldMismatch);
        }
        let emb = FieldEmbedding { source: source.clone(), target: target.clone(), image };
        if !emb.eval_defining_poly().is_zero() {
            return Err(Error::NotAHomomorphism(format!(
                "{} is not a root of the defining polynomial of {}",
                emb.image, source
            )));
        }
        Ok(emb)
    }

    pub fn identity(k: &Field) -> Self {
        FieldEmbedding { source: k.clone(), target: k.clone(), image: k.generator() }
    }

    fn eval_defining_poly(&self) -> FqElem {
        let mut acc = self.target.zero();
        for &c in self.source.poly.iter().rev() {
            acc = &(&acc * &self.image) + &self.target.from_int(c as i64);
        }
        acc
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn image_of_generator(&self) -> &FqElem {
        &self.image
    }

    pub fn apply(&self, a: &FqElem) -> FqElem {
        assert!(a.field() == &self.source, "element outside the embedding's source");
        if self.source.d == 1 {
            return self.target.from_int(a.coeffs[0] as i64);
        }
        let mut acc = self.target.zero();
        for &c in a.coeffs.iter().rev() {
            acc = &(&acc * &self.image) + &self.target.from_int(c as i64);
        }
        acc
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FieldEmbedding) -> Result<FieldEmbedding> {
        if inner.target != self.source {
            return Err(Error::NotComposable("field embedding targets and sources differ".into()));
        }
        Ok(FieldEmbedding {
            source: inner.source.clone(),
            target: self.target.clone(),
            image: self.apply(&inner.image),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.image == self.source.generator()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.d == self.target.d
    }

    /// Inverse of a bijective embedding.
    pub fn inverse(&self) -> Option<FieldEmbedding> {
        if !self.is_bijective() {
            return None;
        }
        embeddings(&self.target, &self.source)
            .ok()?
            .into_iter()
            .find(|cand| cand.compose(self).map(|c| c.is_identity()).unwrap_or(false))
    }
}

impl PartialEq for FieldEmbedding {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.image == other.image
    }
}

impl Eq for FieldEmbedding {}

/// All embeddings `k1 -> k2`, ordered by the image of the generator.
pub fn embeddings(k1: &Field, k2: &Field) -> Result<Vec<FieldEmbedding>> {
    if k1.p != k2.p {
        return Err(Error::CharMismatch(k1.p, k2.p));
    }
    if !k2.d.is_multiple_of(k1.d) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for cand in k2.elements() {
        let emb = FieldEmbedding { source: k1.clone(), target: k2.clone(), image: cand };
        if emb.eval_defining_poly().is_zero() {
            out.push(emb);
        }
    }
    Ok(out)
}
