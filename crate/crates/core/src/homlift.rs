//! Homomorphisms between residue rings, root finding in `R`, and lifting a
//! residue-ring homomorphism to the rings themselves.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::dvr::{Dvr, DvrElem, ResElem, Rn, WittCoeff};
use crate::error::{Error, Result};
use crate::ramification::{different_val, krasner_bound, lift_precision_bound};
use crate::resfield::{embeddings, Field, FieldEmbedding, FqElem};
use crate::valuation::DvrVal;
use crate::witt::{WittHom, WittRing};

/// Working precision ceiling for root searches, in ν-units.
pub const DEFAULT_PRECISION_CAP: u32 = 64;

/// Search nodes visited before a root search gives up, which bounds the
/// blow-up near repeated roots.
pub const NODE_BUDGET: usize = 20_000;

/// A monic polynomial with exact `W(k_1)` coefficients, evaluated in a ring
/// over `k_2` through `W(ψ)`.
pub struct TwistedPoly {
    target: Dvr,
    coeffs: Vec<WittCoeff>,
    psi: FieldEmbedding,
    // per precision: coefficients of F and of F'
    cache: Mutex<HashMap<u32, Arc<(Vec<DvrElem>, Vec<DvrElem>)>>>,
}

impl fmt::Debug for TwistedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]^{:?} in {}", parts.join(","), self.psi.image_of_generator(), self.target)
    }
}

impl TwistedPoly {
    pub fn new(target: &Dvr, coeffs: Vec<WittCoeff>, psi: FieldEmbedding) -> Result<TwistedPoly> {
        if psi.target() != target.residue_field() {
            return Err(Error::FieldMismatch);
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidPolynomial("polynomial must have degree at least one".into()));
        }
        let w = WittRing::new(psi.source(), 4)?;
        if coeffs.last().unwrap().materialize(&w) != w.one().coords() {
            return Err(Error::InvalidPolynomial("polynomial must be monic".into()));
        }
        Ok(TwistedPoly { target: target.clone(), coeffs, psi, cache: Mutex::new(HashMap::new()) })
    }

    /// An integer polynomial, ascending coefficients, evaluated in `r`.
    pub fn integer(r: &Dvr, coeffs: &[i64]) -> Result<TwistedPoly> {
        let psi = FieldEmbedding::identity(r.residue_field());
        TwistedPoly::new(r, coeffs.iter().map(|&c| WittCoeff::int(c)).collect(), psi)
    }

    /// `f_1^ψ`, the defining polynomial of `r1` pushed into `r2`.
    pub fn twist(r1: &Dvr, r2: &Dvr, psi: &FieldEmbedding) -> Result<TwistedPoly> {
        if psi.source() != r1.residue_field() {
            return Err(Error::FieldMismatch);
        }
        TwistedPoly::new(r2, r1.poly().to_vec(), psi.clone())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn target(&self) -> &Dvr {
        &self.target
    }

    fn coeffs_at(&self, n: u32) -> Result<Arc<(Vec<DvrElem>, Vec<DvrElem>)>> {
        if let Some(c) = self.cache.lock().unwrap().get(&n) {
            return Ok(c.clone());
        }
        let w2 = self.target.witt_ring_for(n)?;
        let w1 = WittRing::new(self.psi.source(), w2.precision())?;
        let h = WittHom::new(&self.psi, &w1, &w2)?;
        let mut f = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let x = w1.wrap(c.materialize(&w1));
            f.push(self.target.from_witt(&h.apply(&x), n)?);
        }
        let mut df = Vec::with_capacity(f.len() - 1);
        for (i, c) in f.iter().enumerate().skip(1) {
            df.push(c * &self.target.from_int(i as i64, n)?);
        }
        let entry = Arc::new((f, df));
        self.cache.lock().unwrap().insert(n, entry.clone());
        Ok(entry)
    }

    fn horner(c: &[DvrElem], x: &DvrElem) -> DvrElem {
        let mut acc = c[c.len() - 1].clone();
        for ci in c[..c.len() - 1].iter().rev() {
            acc = &(&acc * x) + ci;
        }
        acc
    }

    /// `F(x)`, known to the precision of `x`.
    pub fn eval(&self, x: &DvrElem) -> Result<DvrElem> {
        let c = self.coeffs_at(x.precision())?;
        Ok(Self::horner(&c.0, x))
    }

    /// `F'(x)`, known to the precision of `x`.
    pub fn eval_deriv(&self, x: &DvrElem) -> Result<DvrElem> {
        let c = self.coeffs_at(x.precision())?;
        Ok(Self::horner(&c.1, x))
    }
}

/// Proof data for a root: it is known mod `m^t` and `ν(F'(ρ)) = deriv_val`
/// with `t > deriv_val`, which pins down a unique exact root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub t: u32,
    pub deriv_val: u32,
}

#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    pub root: DvrElem,
    pub certificate: Certificate,
}

enum Node {
    Root(CertifiedRoot),
    Pruned,
    Split,
    Unresolved,
}

struct Search<'a> {
    f: &'a TwistedPoly,
    k: Field,
    working: u32,
    target: u32,
}

impl Search<'_> {
    fn point(&self, digits: &[FqElem]) -> Result<DvrElem> {
        self.f.target.from_pi_digits_at(digits, self.working)
    }

    fn visit(&self, prefix: &[FqElem]) -> Result<Node> {
        let level = prefix.len() as u32;
        let x = self.point(prefix)?;
        let fx = self.f.eval(&x)?.val();
        if let DvrVal::Exact(v) = fx {
            if v < level {
                return Ok(Node::Pruned);
            }
        }
        if let DvrVal::Exact(delta) = self.f.eval_deriv(&x)?.val() {
            if level > delta && fx.floor() > 2 * delta {
                // the unique root in ν(y - x) > δ sits at distance ν(F(x)) - δ
                return Ok(match fx {
                    DvrVal::Exact(v) if v - delta < level => Node::Pruned,
                    DvrVal::AtLeast(v) if v - delta < level => Node::Unresolved,
                    _ => match self.refine(prefix.to_vec(), delta)? {
                        Some(r) => Node::Root(r),
                        None => Node::Unresolved,
                    },
                });
            }
        }
        if level + 1 >= self.working {
            return Ok(Node::Unresolved);
        }
        Ok(Node::Split)
    }

    /// Walks the unique child containing the root down to the target length.
    fn refine(&self, mut digits: Vec<FqElem>, delta: u32) -> Result<Option<CertifiedRoot>> {
        while (digits.len() as u32) < self.target {
            let next = digits.len() as u32 + 1;
            if next + delta > self.working {
                return Ok(None);
            }
            let mut found = None;
            for a in self.k.elements() {
                let mut cand = digits.clone();
                cand.push(a);
                let v = self.f.eval(&self.point(&cand)?)?.val().floor();
                if v >= next + delta {
                    found = Some(cand);
                    break;
                }
            }
            match found {
                Some(c) => digits = c,
                None => return Ok(None),
            }
        }
        let t = digits.len() as u32;
        let root = self.f.target.from_pi_digits(&digits)?;
        Ok(Some(CertifiedRoot { root, certificate: Certificate { t, deriv_val: delta } }))
    }

    /// Depth-first search over digit prefixes in lexicographic order.
    fn run(&self, first_only: bool) -> Result<Outcome> {
        let mut roots = Vec::new();
        let mut complete = true;
        let elems: Vec<FqElem> = self.k.elements().collect();
        let mut stack: Vec<Vec<FqElem>> = vec![Vec::new()];
        let mut visited = 0usize;
        while let Some(prefix) = stack.pop() {
            visited += 1;
            if visited > NODE_BUDGET {
                return Ok(Outcome { roots, complete: false, exhausted: true });
            }
            match self.visit(&prefix)? {
                Node::Root(r) => {
                    roots.push(r);
                    if first_only {
                        return Ok(Outcome { roots, complete, exhausted: false });
                    }
                }
                Node::Pruned => {}
                Node::Unresolved => complete = false,
                Node::Split => {
                    for a in elems.iter().rev() {
                        let mut child = prefix.clone();
                        child.push(a.clone());
                        stack.push(child);
                    }
                }
            }
        }
        Ok(Outcome { roots, complete, exhausted: false })
    }
}

struct Outcome {
    roots: Vec<CertifiedRoot>,
    // every branch was decided
    complete: bool,
    exhausted: bool,
}

fn precision_cap(r: &Dvr, prec: u32) -> u32 {
    DEFAULT_PRECISION_CAP.max(prec + 2).min(r.max_precision())
}

/// All roots of `F` in its target ring, each certified and known to at least
/// `prec` digits, in lexicographic digit order.
pub fn roots_in_dvr(f: &TwistedPoly, prec: u32) -> Result<Vec<CertifiedRoot>> {
    let r = &f.target;
    let cap = precision_cap(r, prec);
    if prec == 0 || prec + 2 > cap {
        return Err(Error::PrecisionTooLow(format!("requested {prec} digits, cap is {cap}")));
    }
    let mut working = prec + 2;
    loop {
        let s = Search { f, k: r.residue_field().clone(), working, target: prec };
        let out = s.run(false)?;
        if out.complete {
            return Ok(out.roots);
        }
        if out.exhausted {
            return Err(Error::PrecisionTooLow(format!("search budget exhausted at working precision {working}")));
        }
        if working >= cap {
            return Err(Error::PrecisionTooLow(format!(
                "a branch could be neither certified nor excluded at working precision {working}"
            )));
        }
        working = (working * 2).min(cap);
    }
}

#[derive(Clone, Debug)]
pub enum RootDecision {
    Yes(CertifiedRoot),
    No,
    Undecided(u32),
}

/// Whether the monic integer polynomial `F` has a root in `r`.
pub fn has_root(r: &Dvr, coeffs: &[i64]) -> Result<RootDecision> {
    let f = TwistedPoly::integer(r, coeffs)?;
    let cap = precision_cap(r, 1);
    let mut working = 4.min(cap);
    loop {
        let s = Search { f: &f, k: r.residue_field().clone(), working, target: 1 };
        let out = s.run(true)?;
        if let Some(root) = out.roots.into_iter().next() {
            return Ok(RootDecision::Yes(root));
        }
        if out.complete {
            return Ok(RootDecision::No);
        }
        if working >= cap || out.exhausted {
            return Ok(RootDecision::Undecided(working));
        }
        working = (working * 2).min(cap);
    }
}

/// A homomorphism `R_{1,n_1} → R_{2,n_2}`, given by the residue embedding
/// `ψ` and the image `β` of the uniformizer.
#[derive(Clone)]
pub struct ResidueHom {
    source: Rn,
    target: Rn,
    psi: FieldEmbedding,
    beta: ResElem,
}

impl fmt::Debug for ResidueHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {})", self.psi.image_of_generator(), self.beta)
    }
}

impl PartialEq for ResidueHom {
    fn eq(&self, other: &Self) -> bool {
        *self.source == *other.source && *self.target == *other.target && self.psi == other.psi && self.beta == other.beta
    }
}

impl Eq for ResidueHom {}

fn twisted_vanishes(f: &TwistedPoly, beta: &ResElem) -> Result<bool> {
    Ok(f.eval(&beta.to_dvr())?.is_zero())
}

fn nilpotent_of_order(beta: &ResElem, n1: u32) -> bool {
    match beta.val() {
        DvrVal::Exact(v) => v as u64 * n1 as u64 >= beta.ring().n() as u64,
        DvrVal::AtLeast(_) => true,
    }
}

impl ResidueHom {
    pub fn new(source: &Rn, target: &Rn, psi: FieldEmbedding, beta: ResElem) -> Result<ResidueHom> {
        let f = TwistedPoly::twist(source.dvr(), target.dvr(), &psi)?;
        if **beta.ring() != **target {
            return Err(Error::RingMismatch);
        }
        if !nilpotent_of_order(&beta, source.n()) {
            return Err(Error::NotAHomomorphism(format!("{beta} is not killed by the power {}", source.n())));
        }
        if !twisted_vanishes(&f, &beta)? {
            return Err(Error::NotAHomomorphism(format!("{beta} is not a root of the twisted polynomial")));
        }
        Ok(ResidueHom { source: source.clone(), target: target.clone(), psi, beta })
    }

    pub fn identity(r: &Rn) -> ResidueHom {
        let psi = FieldEmbedding::identity(r.dvr().residue_field());
        ResidueHom { source: r.clone(), target: r.clone(), psi, beta: r.uniformizer() }
    }

    pub fn source(&self) -> &Rn {
        &self.source
    }

    pub fn target(&self) -> &Rn {
        &self.target
    }

    pub fn psi(&self) -> &FieldEmbedding {
        &self.psi
    }

    pub fn beta(&self) -> &ResElem {
        &self.beta
    }

    /// `Σ h(a_r) π^r ↦ Σ h(ψ(a_r)) β^r`.
    pub fn apply(&self, x: &ResElem) -> Result<ResElem> {
        if **x.ring() != *self.source {
            return Err(Error::RingMismatch);
        }
        let r2 = self.target.dvr();
        let n2 = self.target.n();
        let b = self.beta.to_dvr();
        let mut acc = r2.zero(n2)?;
        for a in x.digits().iter().rev() {
            acc = &(&acc * &b) + &r2.teichmuller(&self.psi.apply(a), n2)?;
        }
        self.target.from_dvr(&acc)
    }

    pub fn is_iso(&self) -> bool {
        let (r1, r2) = (self.source.dvr(), self.target.dvr());
        if r1.residue_field().degree() != r2.residue_field().degree() || self.source.n() != self.target.n() {
            return false;
        }
        self.target.n() == 1 || self.beta.val() == DvrVal::Exact(1)
    }

    pub fn is_identity(&self) -> bool {
        *self.source == *self.target && self.psi.is_identity() && self.beta == self.source.uniformizer()
    }

    /// `self ∘ inner`; the middle ring may be longer on the side of `inner`,
    /// in which case its values are projected.
    pub fn compose(&self, inner: &ResidueHom) -> Result<ResidueHom> {
        let mid_in = &inner.target;
        let mid_out = &self.source;
        if !(**mid_in.dvr() == **mid_out.dvr()) || mid_out.n() > mid_in.n() {
            return Err(Error::NotComposable(format!(
                "target {:?} does not project onto source {:?}",
                mid_in, mid_out
            )));
        }
        let psi = self.psi.compose(&inner.psi)?;
        let beta = self.apply(&inner.beta.project_between(mid_out.n())?)?;
        ResidueHom::new(&inner.source, &self.target, psi, beta)
    }

    /// The inverse of an isomorphism, found by searching the preimage of the
    /// target uniformizer.
    pub fn inverse(&self) -> Result<ResidueHom> {
        if !self.is_iso() {
            return Err(Error::NotAHomomorphism("only isomorphisms are invertible".into()));
        }
        let psi_inv = self.psi.inverse().ok_or(Error::FieldMismatch)?;
        let pi2 = self.target.uniformizer();
        for x in self.source.elements()? {
            if self.apply(&x)? == pi2 {
                return ResidueHom::new(&self.target, &self.source, psi_inv, x);
            }
        }
        Err(Error::NoRoot)
    }

    /// Truncation to `R_{2,m}` for `m ≤ n_2`.
    pub fn project_target(&self, m: u32) -> Result<ResidueHom> {
        let t = self.target.dvr().residue_ring(m)?;
        ResidueHom::new(&self.source, &t, self.psi.clone(), self.beta.project_between(m)?)
    }
}

/// All homomorphisms `R_{1,n_1} → R_{2,n_2}`, ordered by embedding and then
/// by the digit vector of `β`.
pub fn enumerate_homs(src: &Rn, tgt: &Rn) -> Result<Vec<ResidueHom>> {
    search_homs(src, tgt, false)
}

pub fn enumerate_isos(src: &Rn, tgt: &Rn) -> Result<Vec<ResidueHom>> {
    search_homs(src, tgt, true)
}

fn search_homs(src: &Rn, tgt: &Rn, iso_only: bool) -> Result<Vec<ResidueHom>> {
    let (r1, r2) = (src.dvr(), tgt.dvr());
    let mut out = Vec::new();
    let elems: Vec<ResElem> = tgt.elements()?.collect();
    let (k1, k2) = (r1.residue_field(), r2.residue_field());
    if iso_only && (k1.degree() != k2.degree() || src.n() != tgt.n()) {
        return Ok(out);
    }
    for psi in embeddings(k1, k2)? {
        let f = TwistedPoly::twist(r1, r2, &psi)?;
        for beta in &elems {
            if iso_only && tgt.n() > 1 && beta.val() != DvrVal::Exact(1) {
                continue;
            }
            if nilpotent_of_order(beta, src.n()) && twisted_vanishes(&f, beta)? {
                out.push(ResidueHom { source: src.clone(), target: tgt.clone(), psi: psi.clone(), beta: beta.clone() });
            }
        }
    }
    Ok(out)
}

/// A homomorphism `R_1 → R_2` given by `ψ` and a certified root `ρ` of
/// `f_1^ψ`.
#[derive(Clone)]
pub struct DvrHom {
    source: Dvr,
    target: Dvr,
    psi: FieldEmbedding,
    rho: DvrElem,
    certificate: Certificate,
}

impl fmt::Debug for DvrHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.psi.image_of_generator(), self.rho)
    }
}

/// Equal embeddings and roots agreeing to the shorter certified precision.
impl PartialEq for DvrHom {
    fn eq(&self, other: &Self) -> bool {
        *self.source == *other.source && *self.target == *other.target && self.psi == other.psi && self.rho == other.rho
    }
}

impl DvrHom {
    /// Checks the certificate of a candidate root and builds the map.
    pub fn new(source: &Dvr, target: &Dvr, psi: FieldEmbedding, rho: DvrElem) -> Result<DvrHom> {
        let f = TwistedPoly::twist(source, target, &psi)?;
        let certificate = certify(&f, &rho)?;
        Ok(DvrHom { source: source.clone(), target: target.clone(), psi, rho, certificate })
    }

    pub fn identity(r: &Dvr, prec: u32) -> Result<DvrHom> {
        DvrHom::new(r, r, FieldEmbedding::identity(r.residue_field()), r.uniformizer(prec)?)
    }

    pub fn source(&self) -> &Dvr {
        &self.source
    }

    pub fn target(&self) -> &Dvr {
        &self.target
    }

    pub fn psi(&self) -> &FieldEmbedding {
        &self.psi
    }

    pub fn rho(&self) -> &DvrElem {
        &self.rho
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    fn index_ratio(&self) -> u32 {
        self.target.e() / self.source.e()
    }

    pub fn apply(&self, x: &DvrElem) -> Result<DvrElem> {
        if **x.ring() != *self.source {
            return Err(Error::RingMismatch);
        }
        let n = (x.precision() * self.index_ratio()).min(self.rho.precision());
        let rho = self.rho.truncate(n);
        let mut acc = self.target.zero(n)?;
        for a in x.digits().iter().rev() {
            acc = &(&acc * &rho) + &self.target.teichmuller(&self.psi.apply(a), n)?;
        }
        Ok(acc.truncate(n))
    }

    pub fn is_iso(&self) -> bool {
        self.psi.is_bijective() && self.source.e() == self.target.e() && self.rho.val() == DvrVal::Exact(1)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &DvrHom) -> Result<DvrHom> {
        if *inner.target != *self.source {
            return Err(Error::NotComposable("middle rings differ".into()));
        }
        let psi = self.psi.compose(&inner.psi)?;
        let approx = self.apply(&inner.rho)?;
        let f = TwistedPoly::twist(&inner.source, &self.target, &psi)?;
        let rho = match certify(&f, &approx) {
            Ok(_) => approx,
            Err(_) => reselect(&f, &approx)?,
        };
        DvrHom::new(&inner.source, &self.target, psi, rho)
    }

    /// `pr^{n_1,n_2}`.
    pub fn project(&self, n1: u32, n2: u32) -> Result<ResidueHom> {
        let (e1, e2) = (self.source.e(), self.target.e());
        if n2 as u64 * e1 as u64 > n1 as u64 * e2 as u64 {
            return Err(Error::IncompatibleLengths { n1, n2, e1, e2 });
        }
        if n2 > self.rho.precision() {
            return Err(Error::InsufficientPrecision { requested: n2, available: self.rho.precision() });
        }
        let src = self.source.residue_ring(n1)?;
        let tgt = self.target.residue_ring(n2)?;
        let beta = tgt.from_dvr(&self.rho)?;
        ResidueHom::new(&src, &tgt, self.psi.clone(), beta)
    }
}

pub fn project_hom(g: &DvrHom, n1: u32, n2: u32) -> Result<ResidueHom> {
    g.project(n1, n2)
}

fn certify(f: &TwistedPoly, rho: &DvrElem) -> Result<Certificate> {
    let t = rho.precision();
    let fx = f.eval(rho)?.val();
    let delta = match f.eval_deriv(rho)?.val() {
        DvrVal::Exact(d) => d,
        DvrVal::AtLeast(_) => return Err(Error::PrecisionTooLow("derivative vanishes to the known precision".into())),
    };
    if fx.is_exact() || t <= 2 * delta {
        return Err(Error::PrecisionTooLow(format!("value {fx} does not clear twice the derivative valuation {delta}")));
    }
    Ok(Certificate { t, deriv_val: delta })
}

/// The unique root congruent to `approx` at its precision.
fn reselect(f: &TwistedPoly, approx: &DvrElem) -> Result<DvrElem> {
    let prec = f.target.e() * 2 + approx.precision();
    let roots = roots_in_dvr(f, prec.min(precision_cap(&f.target, 1) - 2))?;
    let close: Vec<DvrElem> = roots.into_iter().map(|r| r.root).filter(|r| r == approx).collect();
    match close.len() {
        1 => Ok(close.into_iter().next().unwrap()),
        0 => Err(Error::NoRoot),
        n => Err(Error::MultipleRoots(n)),
    }
}

/// `L_{n_1,n_2}(φ)`.
pub fn lift_hom(phi: &ResidueHom) -> Result<DvrHom> {
    lift_hom_with_representative(phi, &phi.beta.to_dvr())
}

/// Lifting with an arbitrary representative `β̃ ≡ β (mod m_2^{n_2})`.
pub fn lift_hom_with_representative(phi: &ResidueHom, beta: &DvrElem) -> Result<DvrHom> {
    let (r1, r2) = (phi.source.dvr(), phi.target.dvr());
    let n2 = phi.target.n();
    if phi.target.from_dvr(beta)? != phi.beta {
        return Err(Error::NotAHomomorphism("representative does not reduce to the image of the uniformizer".into()));
    }
    let threshold = lift_precision_bound(r1, r2.e());
    if n2 < threshold {
        return Err(Error::PreconditionBound { threshold, n2 });
    }
    let f = TwistedPoly::twist(r1, r2, &phi.psi)?;
    let delta = (r2.e() * different_val(r1)).div_ceil(r1.e());
    let roots = roots_in_dvr(&f, n2 + 2 * delta + 2)?;
    let m = krasner_bound(r1).ratio().expect("finite bound");
    let bound = m * num_rational::Ratio::from_integer(r2.e() as u64);
    let selected: Vec<CertifiedRoot> = roots
        .into_iter()
        .filter(|c| {
            let d = (&c.root - beta).val().floor();
            num_rational::Ratio::from_integer(d as u64) > bound
        })
        .collect();
    match selected.len() {
        0 => Err(Error::NoRoot),
        1 => {
            let c = selected.into_iter().next().unwrap();
            let g = DvrHom {
                source: r1.clone(),
                target: r2.clone(),
                psi: phi.psi.clone(),
                rho: c.root,
                certificate: c.certificate,
            };
            assert_eq!(g.rho.residue(), phi.beta.digits()[0], "residue square must commute");
            Ok(g)
        }
        n => Err(Error::MultipleRoots(n)),
    }
}

/// All homomorphisms `R_1 → R_2`, images of `π_1` known to `prec` digits.
pub fn dvr_homs(r1: &Dvr, r2: &Dvr, prec: u32) -> Result<Vec<DvrHom>> {
    let mut out = Vec::new();
    for psi in embeddings(r1.residue_field(), r2.residue_field())? {
        let f = TwistedPoly::twist(r1, r2, &psi)?;
        for c in roots_in_dvr(&f, prec)? {
            out.push(DvrHom {
                source: r1.clone(),
                target: r2.clone(),
                psi: psi.clone(),
                rho: c.root,
                certificate: c.certificate,
            });
        }
    }
    Ok(out)
}

/// `Iso(R_1, R_2)`.
pub fn dvr_isos(r1: &Dvr, r2: &Dvr, prec: u32) -> Result<Vec<DvrHom>> {
    Ok(dvr_homs(r1, r2, prec)?.into_iter().filter(|g| g.is_iso()).collect())
}
