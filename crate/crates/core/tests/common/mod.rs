#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rand::rngs::StdRng;
use rand::Rng;

use ramlift::homlift::{enumerate_homs, lift_hom, lift_hom_with_representative, ResidueHom};
use ramlift::ramification::{different_val, krasner_bound, nu_of_e, shifted_polygon};
use ramlift::witt::{witt_functor, TeichDigits};
use ramlift::{
    Dvr, DvrElem, DvrSpec, DvrVal, Field, FieldSpec, FqElem, ResElem, Rn, ValQ, WittCoeff, WittElem, WittRing,
};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}
#[allow(unused_imports)]
pub(crate) use ensure;

pub fn prime(p: u64) -> Field {
    FieldSpec::prime_field(p).unwrap()
}

pub fn field(p: u64, d: usize) -> Field {
    FieldSpec::new(p, d, None).unwrap()
}

pub fn ring(p: u64, f: &[i64]) -> Dvr {
    DvrSpec::from_ints(&prime(p), f).unwrap()
}

pub fn ring_over(k: &Field, f: &[i64]) -> Dvr {
    DvrSpec::from_ints(k, f).unwrap()
}

/// Random Eisenstein polynomial with integer coefficients, ascending.
pub fn random_eisenstein(rng: &mut StdRng, p: u64, e: usize) -> Vec<i64> {
    let p = p as i64;
    let mut f = vec![0i64; e + 1];
    let unit = loop {
        let u: i64 = rng.gen_range(-12..=12);
        if u % p != 0 {
            break u;
        }
    };
    f[0] = p * unit;
    for c in f.iter_mut().take(e).skip(1) {
        *c = p * rng.gen_range(-4..=4);
    }
    f[e] = 1;
    f
}

pub fn random_witt(rng: &mut StdRng, w: &ramlift::Witt) -> WittElem {
    let coords: Vec<i64> = (0..w.degree()).map(|_| rng.gen_range(0..w.modulus()) as i64).collect();
    w.from_coords(&coords).unwrap()
}

pub fn random_field_elem(rng: &mut StdRng, k: &Field) -> FqElem {
    k.from_index(rng.gen_range(0..k.order()))
}

/// A random element of `r` known mod `m^n`, from random Witt coordinates.
pub fn random_dvr_elem(rng: &mut StdRng, r: &Dvr, n: u32) -> DvrElem {
    let w = r.witt_ring_for(n).unwrap();
    let c: Vec<WittElem> = (0..r.e()).map(|_| random_witt(rng, &w)).collect();
    r.from_witt_coeffs(&c, n).unwrap()
}

/// An element of valuation at least `v`, known mod `m^n`.
pub fn random_with_val(rng: &mut StdRng, r: &Dvr, v: u32, n: u32) -> DvrElem {
    let mut x = random_dvr_elem(rng, r, n);
    for _ in 0..v {
        x = x.mul_pi().truncate(n);
    }
    x
}

// ---------------------------------------------------------------------------
// exhaustive homomorphism oracle

/// Addition and multiplication tables of a finite residue ring, elements
/// indexed by their lexicographic digit index.
pub struct Tables {
    pub elems: Vec<ResElem>,
    pub add: Vec<u32>,
    pub mul: Vec<u32>,
}

impl Tables {
    pub fn new(r: &Rn) -> Tables {
        let elems: Vec<ResElem> = r.elements().unwrap().collect();
        let s = elems.len();
        let dv: Vec<DvrElem> = elems.iter().map(|x| x.to_dvr()).collect();
        let mut add = vec![0; s * s];
        let mut mul = vec![0; s * s];
        for i in 0..s {
            for j in 0..s {
                add[i * s + j] = r.from_dvr(&(&dv[i] + &dv[j])).unwrap().index() as u32;
                mul[i * s + j] = r.from_dvr(&(&dv[i] * &dv[j])).unwrap().index() as u32;
            }
        }
        Tables { elems, add, mul }
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size() + b as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size() + b as usize]
    }

    /// Image of the integer `c`: repeated addition of one.
    pub fn int(&self, c: u64, one: u32) -> u32 {
        let mut acc = 0u32;
        let mut base = one;
        let mut c = c;
        while c > 0 {
            if c & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            c >>= 1;
        }
        acc
    }
}

/// Every map `R_{1,n_1} → R_{2,n_2}` obtained by choosing images of the ring
/// generators (`y` when the residue degree exceeds one, and `π`), extended
/// through integer coordinates, that satisfies the ring axioms on all pairs.
/// Each map is returned as its vector of image indices.
pub fn oracle_homs(src: &Rn, tgt: &Rn) -> BTreeSet<Vec<u32>> {
    let s = Tables::new(src);
    let t = Tables::new(tgt);
    let one_t = tgt.one().index() as u32;
    let r1 = src.dvr();
    let d1 = r1.residue_field().degree();
    let e1 = r1.e() as usize;
    // integer coordinates c_{ij} of y^i π^j for every source element
    let coords: Vec<Vec<Vec<u64>>> = s
        .elems
        .iter()
        .map(|x| x.to_dvr().witt_coeffs().iter().map(|w| w.coords().to_vec()).collect())
        .collect();
    let mut int_cache: HashMap<u64, u32> = HashMap::new();
    let mut int = |c: u64| *int_cache.entry(c).or_insert_with(|| t.int(c, one_t));
    for x in &coords {
        for w in x {
            for &c in w {
                int(c);
            }
        }
    }
    let y_choices: Vec<u32> = if d1 > 1 { (0..t.size() as u32).collect() } else { vec![0] };
    let mut found = BTreeSet::new();
    for &y in &y_choices {
        for b in 0..t.size() as u32 {
            let mut ypow = vec![one_t];
            for _ in 1..d1 {
                ypow.push(t.mul(*ypow.last().unwrap(), y));
            }
            let mut bpow = vec![one_t];
            for _ in 1..e1 {
                bpow.push(t.mul(*bpow.last().unwrap(), b));
            }
            let images: Vec<u32> = coords
                .iter()
                .map(|x| {
                    let mut acc = 0u32;
                    for (j, w) in x.iter().enumerate() {
                        for (i, &c) in w.iter().enumerate() {
                            let term = t.mul(ypow[i], bpow[j]);
                            acc = t.add(acc, t.mul(int(c), term));
                        }
                    }
                    acc
                })
                .collect();
            if is_ring_hom(&s, &t, &images, src.one().index() as usize, one_t) {
                found.insert(images);
            }
        }
    }
    found
}

fn is_ring_hom(s: &Tables, t: &Tables, img: &[u32], one_s: usize, one_t: u32) -> bool {
    if img[one_s] != one_t || img[0] != 0 {
        return false;
    }
    let n = s.size() as u32;
    for a in 0..n {
        for b in a..n {
            if img[s.add(a, b) as usize] != t.add(img[a as usize], img[b as usize]) {
                return false;
            }
            if img[s.mul(a, b) as usize] != t.mul(img[a as usize], img[b as usize]) {
                return false;
            }
        }
    }
    true
}

pub fn hom_as_map(h: &ResidueHom) -> Vec<u32> {
    h.source().elements().unwrap().map(|x| h.apply(&x).unwrap().index() as u32).collect()
}

pub fn check_oracle_equivalence(src: &Rn, tgt: &Rn) -> Check {
    let lib: Vec<Vec<u32>> = enumerate_homs(src, tgt).map_err(|e| e.to_string())?.iter().map(hom_as_map).collect();
    let lib_set: BTreeSet<Vec<u32>> = lib.iter().cloned().collect();
    ensure!(lib_set.len() == lib.len(), "enumeration produced the same map twice for {src:?} -> {tgt:?}");
    let brute = oracle_homs(src, tgt);
    ensure!(
        lib_set == brute,
        "{src:?} -> {tgt:?}: enumeration found {} maps, exhaustive search {}",
        lib_set.len(),
        brute.len()
    );
    Ok(())
}

/// The kernel is `m^m` and `n_2 > a e_2` forces `m > a e_1`.
pub fn check_kernel_bound(h: &ResidueHom) -> Check {
    let src = h.source();
    let n1 = src.n();
    let vals: Vec<(u32, bool)> = src
        .elements()
        .unwrap()
        .map(|x| (x.val().floor(), h.apply(&x).unwrap().is_zero()))
        .collect();
    let m = vals.iter().filter(|v| v.1).map(|v| v.0).min().unwrap_or(n1);
    for &(v, in_kernel) in &vals {
        ensure!(in_kernel == (v >= m), "kernel of {h:?} is not a power of the maximal ideal");
    }
    let (e1, e2, n2) = (src.dvr().e(), h.target().dvr().e(), h.target().n());
    let mut a = 0;
    while n2 > a * e2 {
        ensure!(m > a * e1, "kernel m^{m} of {h:?} violates the bound at a = {a}");
        a += 1;
    }
    Ok(())
}

/// Digit-pure elements map to digit-pure elements.
pub fn check_teich_preservation(h: &ResidueHom) -> Check {
    let src = h.source();
    let k = src.dvr().residue_field();
    for a in k.elements() {
        let x = src.from_digits(std::slice::from_ref(&a)).unwrap();
        let y = h.apply(&x).unwrap();
        ensure!(y.digits()[1..].iter().all(|d| d.is_zero()), "{h:?} maps h({a}) to {y}");
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// property checks shared by the proptest suites and the acceptance run

pub fn check_teich_multiplicative(k: &Field, m: u32, a: &FqElem, b: &FqElem) -> Check {
    let w = WittRing::new(k, m).unwrap();
    let lhs = w.teichmuller(&(a * b));
    let rhs = &w.teichmuller(a) * &w.teichmuller(b);
    ensure!(lhs == rhs, "h({a}{b}) != h({a})h({b}) in {w:?}");
    let p = k.p();
    let lhs = w.teichmuller(&a.pow(p));
    let rhs = w.teichmuller(a).pow(p);
    ensure!(lhs == rhs, "h({a}^p) != h({a})^p in {w:?}");
    // h(a) is a p^j-th power, of h(a^{1/p^j})
    let mut root = a.clone();
    let mut pw = 1u64;
    for _ in 0..m {
        root = root.pth_root();
        pw *= p;
        ensure!(w.teichmuller(&root).pow(pw) == w.teichmuller(a), "h({a}) is not the p-power of h(a^(1/p))");
    }
    ensure!(w.teichmuller(a).residue() == *a, "h({a}) does not reduce to {a}");
    Ok(())
}

pub fn check_witt_roundtrip(x: &WittElem) -> Check {
    let w = x.ring();
    let d = x.teich_digits();
    ensure!(w.from_digits(&d) == *x, "digit roundtrip failed for {x:?}");
    let parsed = w.parse_digits(&d.to_string()).map_err(|e| e.to_string())?;
    ensure!(parsed == *x, "text roundtrip failed for {x:?}");
    Ok(())
}

pub fn check_witt_functor(k1: &Field, k2: &Field, k3: &Field, m: u32, rng: &mut StdRng) -> Check {
    for psi1 in ramlift::resfield::embeddings(k1, k2).unwrap() {
        for psi2 in ramlift::resfield::embeddings(k2, k3).unwrap() {
            let h1 = witt_functor(&psi1, m).unwrap();
            let h2 = witt_functor(&psi2, m).unwrap();
            let h21 = witt_functor(&psi2.compose(&psi1).unwrap(), m).unwrap();
            for _ in 0..10 {
                let x = random_witt(rng, h1.source());
                let y = random_witt(rng, h1.source());
                ensure!(h21.apply(&x) == h2.apply(&h1.apply(&x)), "W(ψ2ψ1) != W(ψ2)W(ψ1)");
                ensure!(h1.apply(&x) == h1.apply_digitwise(&x), "W(ψ) is not digitwise");
                ensure!(h1.apply(&(&x * &y)) == &h1.apply(&x) * &h1.apply(&y), "W(ψ) not multiplicative");
                ensure!(h1.apply(&(&x + &y)) == &h1.apply(&x) + &h1.apply(&y), "W(ψ) not additive");
            }
        }
    }
    Ok(())
}

pub fn check_dvr_roundtrip(x: &DvrElem) -> Check {
    let r = x.ring();
    let n = x.precision();
    let d = x.pi_digits(n).map_err(|e| e.to_string())?;
    let back = r.from_pi_digits(&d).map_err(|e| e.to_string())?;
    ensure!(back == *x, "π-digit roundtrip failed for {x:?}");
    ensure!(back.pi_digits(n).unwrap() == d, "digits are not canonical for {x:?}");
    let parsed = r.parse_elem(&x.to_string()).map_err(|e| e.to_string())?;
    ensure!(parsed == *x, "text roundtrip failed for {x:?}");
    Ok(())
}

/// Equality modulo `m^n` agrees with equality of the first `n` digits.
pub fn check_digit_canonicality(x: &DvrElem, y: &DvrElem) -> Check {
    let n = x.precision().min(y.precision());
    let same = x.pi_digits(n).unwrap() == y.pi_digits(n).unwrap();
    ensure!(same == (x == y), "digit equality disagrees with ring equality for {x:?}, {y:?}");
    Ok(())
}

pub fn check_valuation_axioms(x: &DvrElem, y: &DvrElem) -> Check {
    let (vx, vy) = (x.val(), y.val());
    let prod = x * y;
    if let (DvrVal::Exact(a), DvrVal::Exact(b)) = (vx, vy) {
        let want = a + b;
        match prod.val() {
            DvrVal::Exact(v) => ensure!(v == want, "ν(xy) = {v}, expected {want}"),
            DvrVal::AtLeast(v) => ensure!(v <= want, "ν(xy) unresolved at {v} although {want} is below precision"),
        }
    }
    let s = x + y;
    let lower = vx.floor().min(vy.floor());
    ensure!(s.val().floor() >= lower.min(s.precision()), "ν(x+y) below min(ν(x), ν(y))");
    let r = x.ring();
    let p = r.from_int(r.p() as i64, x.precision()).unwrap();
    ensure!(p.val() == DvrVal::Exact(r.e()) || x.precision() <= r.e(), "ν(p) != e");
    Ok(())
}

/// Characteristic polynomial of multiplication by `x` on the basis
/// `1, π, ..., π^{e-1}`, by Leibniz expansion over `W(k)/p^M`; coefficients
/// ascending, lifted to centred integer coordinates.
pub fn char_poly(x: &DvrElem) -> Vec<Vec<i64>> {
    let r = x.ring();
    let e = r.e() as usize;
    let n = x.precision();
    let w = r.witt_ring_for(n).unwrap();
    let mut basis = vec![r.one(n).unwrap()];
    for _ in 1..e {
        let last = basis.last().unwrap().mul_pi().truncate(n);
        basis.push(last);
    }
    // a[i][j] = i-th coefficient of x π^j
    let cols: Vec<Vec<WittElem>> = basis.iter().map(|b| (x * b).truncate(n).witt_coeffs()).collect();
    // x δ_ij - a_ij, ascending in x
    let entry = |i: usize, j: usize| -> Vec<WittElem> {
        let neg = -&cols[j][i];
        if i == j {
            vec![neg, w.one()]
        } else {
            vec![neg]
        }
    };
    let mut total: Vec<WittElem> = vec![w.zero(); e + 1];
    for perm in permutations(e) {
        let sign = perm_sign(&perm);
        let mut term = vec![w.one()];
        for (i, &j) in perm.iter().enumerate() {
            term = poly_mul(&w, &term, &entry(i, j));
        }
        for (k, c) in term.iter().enumerate() {
            total[k] = if sign > 0 { &total[k] + c } else { &total[k] - c };
        }
    }
    let half = w.modulus() / 2;
    total
        .iter()
        .map(|c| c.coords().iter().map(|&v| if v > half { v as i64 - w.modulus() as i64 } else { v as i64 }).collect())
        .collect()
}

fn poly_mul(w: &ramlift::Witt, a: &[WittElem], b: &[WittElem]) -> Vec<WittElem> {
    let mut out = vec![w.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn perm_sign(p: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// `v_p` of the norm of `f'(π)`, as the determinant of multiplication.
pub fn norm_val(r: &Dvr, f: &[i64]) -> u32 {
    let n = 8 * r.e();
    let pi = r.uniformizer(n).unwrap();
    let mut d = r.zero(n).unwrap();
    for (i, &c) in f.iter().enumerate().skip(1).rev() {
        d = &(&d * &pi) + &r.from_int(i as i64 * c, n).unwrap();
    }
    let c0 = &char_poly(&d)[0];
    c0.iter().filter(|&&v| v != 0).map(|&v| v_p(v.unsigned_abs(), r.p())).min().expect("norm vanishes to the working precision")
}

fn v_p(mut v: u64, p: u64) -> u32 {
    let mut k = 0;
    while v.is_multiple_of(p) {
        v /= p;
        k += 1;
    }
    k
}

/// `M` computed from the minimal polynomial of `π' = h(u)π + t`, `ν(t) ≥ 2`.
pub fn check_uniformizer_invariance(r: &Dvr, rng: &mut StdRng) -> Check {
    let k = r.residue_field();
    let n = r.e() * 10;
    let u = loop {
        let u = random_field_elem(rng, k);
        if !u.is_zero() {
            break u;
        }
    };
    let t = random_with_val(rng, r, 2, n);
    let pi2 = &(&r.teichmuller(&u, n).unwrap() * &r.uniformizer(n).unwrap()) + &t;
    let cp = char_poly(&pi2);
    let coeffs: Vec<WittCoeff> = cp.into_iter().map(WittCoeff::Int).collect();
    let r2 = DvrSpec::new(k, coeffs).map_err(|e| format!("minimal polynomial of π' is not Eisenstein: {e}"))?;
    ensure!(
        krasner_bound(&r2) == krasner_bound(r),
        "M changed from {} to {} under π -> {pi2:?}",
        krasner_bound(r),
        krasner_bound(&r2)
    );
    ensure!(different_val(&r2) == different_val(r), "different changed under a change of uniformizer");
    Ok(())
}

/// Polygon slope sum, tame/wild ranges, and the bound on `M`.
pub fn check_ramification_invariants(r: &Dvr) -> Check {
    let e = r.e();
    let p = r.p();
    let s = different_val(r);
    let m = krasner_bound(r);
    if e > 1 {
        let np = shifted_polygon(r).unwrap();
        let sum = np.slope_sum();
        ensure!(
            sum == num_rational::Ratio::new(s as i64, e as i64),
            "slope sum {sum} differs from different/e = {s}/{e}"
        );
    }
    if r.is_tame() {
        ensure!(s == e - 1, "tame ring with different {s}");
        ensure!(e == 1 || m == ValQ::new(1, e as u64), "tame ring with M = {m}");
    } else {
        ensure!(s >= e && s <= e - 1 + nu_of_e(p, e), "wild different {s} outside [e, e-1+ν(e)]");
    }
    ensure!(m <= ValQ::new((e + nu_of_e(p, e)) as u64, e as u64), "M = {m} exceeds (1+ν(e))/e");
    Ok(())
}

/// Representative-independence of the lift, with `β + z`, `z ∈ m^{n_2}`.
pub fn check_representative_independence(phi: &ResidueHom, rng: &mut StdRng) -> Check {
    let base = lift_hom(phi).map_err(|e| e.to_string())?;
    let r2 = phi.target().dvr();
    let n2 = phi.target().n();
    let n = n2 + 6;
    let z = random_with_val(rng, r2, n2, n);
    let beta = &phi.beta().to_dvr().extend_exact(n).unwrap() + &z;
    let other = lift_hom_with_representative(phi, &beta).map_err(|e| e.to_string())?;
    ensure!(other == base, "lift depends on the representative of β for {phi:?}");
    Ok(())
}

pub fn teich_digits_of(k: &Field, s: &str) -> TeichDigits {
    TeichDigits::parse(k, s).unwrap()
}
