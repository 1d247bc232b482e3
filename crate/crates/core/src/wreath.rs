//! Elements of W = C_q wr C_p and of its central quotient G.
//!
//! An element is written v·c^i with v in the base U = F_q^p and c the cycle
//! generator. The product convention is fixed once, here, and every other
//! module derives its formulas from it: (v, i)·(w, j) = (v + shift^i(w),
//! i + j mod p), where shift(w)_j = w_{j-1 mod p}. Identifying U with F_q[x]/(x^p - 1),
//! shift is multiplication by x, so conjugation c·w·c^{-1} = x·w. The center
//! T is the line of constant vectors; the quotient G = W/T keeps the shift
//! and reduces the vector part modulo s(x) = 1 + x + ... + x^(p-1).

use crate::algebra::{all_ones_poly, invert_mod, scalar_inv, FqPoly, GroupParams};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WreathError {
    #[error("exponent multiplier {0} is divisible by p = {1}")]
    MultiplierNotUnit(usize, usize),
    #[error("conjugating element must lie in the base (shift 0), got shift {0}")]
    ConjugatorShifted(usize),
    #[error("expected shift {expected}, got shift {got}")]
    WrongShift { expected: usize, got: usize },
}

/// Common behaviour needed to evaluate words over a generator list.
pub trait GroupOps: Clone + PartialEq {
    fn identity_like(&self) -> Self;
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
}

/// Element v·c^shift of the wreath product, with v stored as p coordinates mod q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    params: GroupParams,
    vec: Vec<u64>,
    shift: usize,
}

impl WreathElement {
    pub fn new(params: GroupParams, vec: impl Into<Vec<u64>>, shift: usize) -> Self {
        let mut vec: Vec<u64> = vec.into();
        assert_eq!(vec.len(), params.p(), "vector must have p coordinates");
        for c in &mut vec {
            *c %= params.q();
        }
        WreathElement { params, vec, shift: shift % params.p() }
    }

    pub fn identity(params: GroupParams) -> Self {
        WreathElement::new(params, vec![0; params.p()], 0)
    }

    /// The cycle generator c.
    pub fn cycle(params: GroupParams) -> Self {
        WreathElement::new(params, vec![0; params.p()], 1)
    }

    /// Basis lamp e_i (a single nonzero coordinate).
    pub fn basis(params: GroupParams, i: usize) -> Self {
        let mut v = vec![0; params.p()];
        v[i % params.p()] = 1;
        WreathElement::new(params, v, 0)
    }

    /// The central generator z, the all-ones vector.
    pub fn center(params: GroupParams) -> Self {
        WreathElement::new(params, vec![1; params.p()], 0)
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn vec(&self) -> &[u64] {
        &self.vec
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.vec.iter().all(|&c| c == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.params, other.params, "mixed group parameters");
        let p = self.params.p();
        let q = self.params.q();
        let mut vec = self.vec.clone();
        for j in 0..p {
            // shift^i(w)_j = w_{j - i mod p}
            let src = (j + p - self.shift % p) % p;
            vec[j] = (vec[j] + other.vec[src]) % q;
        }
        WreathElement { params: self.params, vec, shift: (self.shift + other.shift) % p }
    }

    pub fn inv(&self) -> Self {
        let p = self.params.p();
        let q = self.params.q();
        let mut vec = vec![0u64; p];
        for j in 0..p {
            // inverse vector is -shift^{-i}(v)
            vec[j] = (q - self.vec[(j + self.shift) % p]) % q;
        }
        WreathElement { params: self.params, vec, shift: (p - self.shift) % p }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = WreathElement::identity(self.params);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Coordinate sum mod q; a homomorphism onto C_q whose kernel is the
    /// unique index-q subgroup meeting the center trivially.
    pub fn parity(&self) -> u64 {
        self.vec.iter().sum::<u64>() % self.params.q()
    }

    /// Image in the central quotient G.
    pub fn quotient(&self) -> QuotientElement {
        let s = all_ones_poly(self.params);
        let poly = FqPoly::new(self.params.q(), self.vec.clone()).rem(&s);
        QuotientElement { params: self.params, poly, shift: self.shift }
    }
}

impl GroupOps for WreathElement {
    fn identity_like(&self) -> Self {
        WreathElement::identity(self.params)
    }
    fn compose(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inverse(&self) -> Self {
        self.inv()
    }
}

/// Free-function form of the projection W -> G.
pub fn quotient_map(a: &WreathElement) -> QuotientElement {
    a.quotient()
}

/// Element of the central quotient G: a vector part in V = F_q[x]/s(x),
/// stored as the unique representative of degree below p-1, plus a shift.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientElement {
    params: GroupParams,
    poly: FqPoly,
    shift: usize,
}

impl QuotientElement {
    pub fn new(params: GroupParams, poly: FqPoly, shift: usize) -> Self {
        assert_eq!(poly.q(), params.q(), "mixed field orders");
        let poly = poly.rem(&all_ones_poly(params));
        QuotientElement { params, poly, shift: shift % params.p() }
    }

    pub fn identity(params: GroupParams) -> Self {
        QuotientElement { params, poly: FqPoly::zero(params.q()), shift: 0 }
    }

    pub fn cycle(params: GroupParams) -> Self {
        QuotientElement { params, poly: FqPoly::zero(params.q()), shift: 1 }
    }

    /// Element of V (shift 0) from a polynomial representative.
    pub fn from_base(params: GroupParams, poly: FqPoly) -> Self {
        QuotientElement::new(params, poly, 0)
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn poly(&self) -> &FqPoly {
        &self.poly
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.poly.is_zero()
    }

    pub fn in_base(&self) -> bool {
        self.shift == 0
    }

    fn s(&self) -> FqPoly {
        all_ones_poly(self.params)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.params, other.params, "mixed group parameters");
        let xi = FqPoly::monomial(self.params.q(), self.shift, 1);
        let poly = self.poly.add(&xi.mul(&other.poly).rem(&self.s()));
        QuotientElement {
            params: self.params,
            poly,
            shift: (self.shift + other.shift) % self.params.p(),
        }
    }

    pub fn inv(&self) -> Self {
        let p = self.params.p();
        // x^p ≡ 1 mod s, so x^{-shift} is the monomial x^{p-shift}.
        let xmi = FqPoly::monomial(self.params.q(), (p - self.shift) % p, 1);
        QuotientElement {
            params: self.params,
            poly: xmi.mul(&self.poly).rem(&self.s()).neg(),
            shift: (p - self.shift) % p,
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = QuotientElement::identity(self.params);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Canonical preimage in W: the representative polynomial padded with zeros.
    pub fn lift(&self) -> WreathElement {
        let mut vec = vec![0u64; self.params.p()];
        for (i, &c) in self.poly.coeffs().iter().enumerate() {
            vec[i] = c;
        }
        WreathElement::new(self.params, vec, self.shift)
    }
}

impl GroupOps for QuotientElement {
    fn identity_like(&self) -> Self {
        QuotientElement::identity(self.params)
    }
    fn compose(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inverse(&self) -> Self {
        self.inv()
    }
}

/// Scalar multiple of the all-ones vector: an element of the center T.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CenterElement {
    params: GroupParams,
    scalar: u64,
}

impl CenterElement {
    pub fn new(params: GroupParams, scalar: u64) -> Self {
        CenterElement { params, scalar: scalar % params.q() }
    }

    pub fn scalar(&self) -> u64 {
        self.scalar
    }

    pub fn to_wreath(&self) -> WreathElement {
        WreathElement::new(self.params, vec![self.scalar; self.params.p()], 0)
    }

    /// Recognizes central elements; anything off the center line returns None.
    pub fn from_wreath(a: &WreathElement) -> Option<Self> {
        if a.shift() != 0 {
            return None;
        }
        let first = a.vec()[0];
        if a.vec().iter().all(|&c| c == first) {
            Some(CenterElement { params: a.params(), scalar: first })
        } else {
            None
        }
    }
}

/// Inverse of a modulo the prime p, as a usize in [1, p-1].
pub(crate) fn mod_inverse(a: usize, p: usize) -> usize {
    scalar_inv(a as u64 % p as u64, p as u64) as usize
}

/// The automorphism v·c^i -> theta(v)·c^(m·i) with theta(v)_{m·j} = v_j;
/// on polynomials it substitutes x -> x^m. Defined for m not divisible by p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerAutomorphism {
    params: GroupParams,
    m: usize,
}

impl PowerAutomorphism {
    pub fn new(params: GroupParams, m: usize) -> Result<Self, WreathError> {
        if m % params.p() == 0 {
            return Err(WreathError::MultiplierNotUnit(m, params.p()));
        }
        Ok(PowerAutomorphism { params, m: m % params.p() })
    }

    pub fn multiplier(&self) -> usize {
        self.m
    }

    pub fn inverse(&self) -> Self {
        PowerAutomorphism { params: self.params, m: mod_inverse(self.m, self.params.p()) }
    }

    pub fn apply_wreath(&self, a: &WreathElement) -> WreathElement {
        assert_eq!(self.params, a.params(), "mixed group parameters");
        let p = self.params.p();
        let mut vec = vec![0u64; p];
        for (j, &c) in a.vec().iter().enumerate() {
            vec[self.m * j % p] = c;
        }
        WreathElement::new(self.params, vec, self.m * a.shift() % p)
    }

    pub fn apply_quotient(&self, a: &QuotientElement) -> QuotientElement {
        assert_eq!(self.params, a.params(), "mixed group parameters");
        let p = self.params.p();
        let q = self.params.q();
        let mut vec = vec![0u64; p];
        for (j, &c) in a.poly().coeffs().iter().enumerate() {
            let idx = self.m * j % p;
            vec[idx] = (vec[idx] + c) % q;
        }
        QuotientElement::new(
            self.params,
            FqPoly::new(q, vec),
            self.m * a.shift() % p,
        )
    }
}

/// Conjugation g -> u^{-1}·g·u by a base element u of the quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationAutomorphism {
    u: QuotientElement,
}

impl ConjugationAutomorphism {
    pub fn new(u: QuotientElement) -> Result<Self, WreathError> {
        if !u.in_base() {
            return Err(WreathError::ConjugatorShifted(u.shift()));
        }
        Ok(ConjugationAutomorphism { u })
    }

    pub fn conjugator(&self) -> &QuotientElement {
        &self.u
    }

    pub fn apply(&self, g: &QuotientElement) -> QuotientElement {
        self.u.inv().mul(g).mul(&self.u)
    }

    pub fn apply_inverse(&self, g: &QuotientElement) -> QuotientElement {
        self.u.mul(g).mul(&self.u.inv())
    }
}

/// Finds u in V with u^{-1}·target·u = c, for a target of shift 1.
///
/// Under the fixed convention, conjugating w·c by u adds (x - 1)·u to the
/// vector part, so u = (1 - x)^{-1}·w. The factor 1 - x is invertible mod
/// s(x) because s(1) = p is nonzero in F_q.
pub fn solve_normalizer(target: &QuotientElement) -> Result<QuotientElement, WreathError> {
    if target.shift() != 1 {
        return Err(WreathError::WrongShift { expected: 1, got: target.shift() });
    }
    let params = target.params();
    let q = params.q();
    let one_minus_x = FqPoly::new(q, vec![1, q - 1]);
    let inv = invert_mod(&one_minus_x, &all_ones_poly(params))
        .expect("1 - x is a unit mod s(x) since p != 0 in F_q");
    let u = QuotientElement::from_base(params, inv.mul(target.poly()));
    debug_assert_eq!(
        ConjugationAutomorphism::new(u.clone()).unwrap().apply(target),
        QuotientElement::cycle(params)
    );
    Ok(u)
}

/// Composite automorphism alpha = conjugation ∘ power chosen so that a given
/// shifted generator maps exactly to c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalizer {
    power: PowerAutomorphism,
    conj: ConjugationAutomorphism,
}

impl Normalizer {
    /// Builds the normalizer for a generator with nonzero shift.
    pub fn for_generator(g: &QuotientElement) -> Result<Self, WreathError> {
        if g.shift() == 0 {
            return Err(WreathError::WrongShift { expected: 1, got: 0 });
        }
        let params = g.params();
        let m = mod_inverse(g.shift(), params.p());
        let power = PowerAutomorphism::new(params, m)?;
        let conj = ConjugationAutomorphism::new(solve_normalizer(&power.apply_quotient(g))?)?;
        let norm = Normalizer { power, conj };
        debug_assert_eq!(norm.apply(g), QuotientElement::cycle(params));
        Ok(norm)
    }

    pub fn from_parts(power: PowerAutomorphism, conj: ConjugationAutomorphism) -> Self {
        Normalizer { power, conj }
    }

    pub fn power(&self) -> &PowerAutomorphism {
        &self.power
    }

    pub fn conjugation(&self) -> &ConjugationAutomorphism {
        &self.conj
    }

    pub fn apply(&self, g: &QuotientElement) -> QuotientElement {
        self.conj.apply(&self.power.apply_quotient(g))
    }

    pub fn apply_inverse(&self, g: &QuotientElement) -> QuotientElement {
        self.power.inverse().apply_quotient(&self.conj.apply_inverse(g))
    }
}

/// The module action of an exponent polynomial on a base element of W:
/// conjugation by c in the exponent acts as multiplication by x^{-1}, so
/// f applied to w is f(x^{p-1})·w in F_q[x]/(x^p - 1).
pub fn exponent_action_wreath(f: &FqPoly, w: &WreathElement) -> WreathElement {
    assert_eq!(w.shift(), 0, "exponent action is defined on the base only");
    let params = w.params();
    let p = params.p();
    let q = params.q();
    let mut vec = vec![0u64; p];
    for (i, &fc) in f.coeffs().iter().enumerate() {
        if fc == 0 {
            continue;
        }
        // add fc · x^{-i}·w, i.e. w rotated down by i
        for j in 0..p {
            vec[j] = (vec[j] + fc * w.vec()[(j + i) % p]) % q;
        }
    }
    WreathElement::new(params, vec, 0)
}
