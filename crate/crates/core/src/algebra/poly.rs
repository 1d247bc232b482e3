//! Dense polynomials over the prime field F_q.
//!
//! Coefficients are stored low degree first and kept reduced mod q, with no
//! trailing zeros; the zero polynomial is the empty coefficient vector.

use crate::algebra::AlgebraError;
use std::fmt;

/// Polynomial over F_q, always in canonical (reduced, trimmed) form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqPoly {
    q: u64,
    coeffs: Vec<u64>,
}

/// Inverse of `a` mod the prime `q`. Panics when `a ≡ 0`.
pub(crate) fn scalar_inv(a: u64, q: u64) -> u64 {
    let a = a % q;
    assert!(a != 0, "zero has no inverse mod {q}");
    // Fermat: a^(q-2) mod q. q is prime and small.
    let mut acc = 1u64;
    let mut base = a;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    acc
}

impl FqPoly {
    /// Builds a polynomial from raw coefficients (low degree first), reducing mod q.
    pub fn new(q: u64, coeffs: impl Into<Vec<u64>>) -> Self {
        assert!(q >= 2, "field order must be at least 2");
        let mut coeffs: Vec<u64> = coeffs.into();
        for c in &mut coeffs {
            *c %= q;
        }
        let mut p = FqPoly { q, coeffs };
        p.trim();
        p
    }

    pub fn zero(q: u64) -> Self {
        FqPoly::new(q, Vec::new())
    }

    pub fn one(q: u64) -> Self {
        FqPoly::new(q, vec![1])
    }

    pub fn x(q: u64) -> Self {
        FqPoly::new(q, vec![0, 1])
    }

    pub fn constant(q: u64, c: u64) -> Self {
        FqPoly::new(q, vec![c])
    }

    /// c·x^deg.
    pub fn monomial(q: u64, deg: usize, c: u64) -> Self {
        let mut v = vec![0; deg + 1];
        v[deg] = c;
        FqPoly::new(q, v)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Degree, or None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Coefficient of x^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(self.q, other.q, "mixed field orders {} and {}", self.q, other.q);
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push((self.coeff(i) + other.coeff(i)) % self.q);
        }
        FqPoly::new(self.q, out)
    }

    pub fn neg(&self) -> Self {
        let out: Vec<u64> = self.coeffs.iter().map(|&c| (self.q - c) % self.q).collect();
        FqPoly::new(self.q, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: u64) -> Self {
        let s = s % self.q;
        let out: Vec<u64> = self.coeffs.iter().map(|&c| c * s % self.q).collect();
        FqPoly::new(self.q, out)
    }

    /// Schoolbook product; degrees here never exceed a few hundred.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero(self.q);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.q;
            }
        }
        FqPoly::new(self.q, out)
    }

    /// Euclidean division: returns (quotient, remainder) with deg r < deg divisor.
    ///
    /// # Panics
    /// Panics when the divisor is zero, like integer division.
    pub fn divmod(&self, divisor: &Self) -> (Self, Self) {
        self.check_field(divisor);
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.deg().unwrap();
        if self.deg().map_or(true, |d| d < dd) {
            return (FqPoly::zero(self.q), self.clone());
        }
        let q = self.q;
        let lead_inv = scalar_inv(divisor.leading(), q);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let f = c * lead_inv % q;
            quot[i - dd] = f;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = (rem[idx] + q - f * b % q) % q;
            }
        }
        (FqPoly::new(q, quot), FqPoly::new(q, rem))
    }

    pub fn rem(&self, modulus: &Self) -> Self {
        self.divmod(modulus).1
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() || self.leading() == 1 {
            return self.clone();
        }
        self.scale(scalar_inv(self.leading(), self.q))
    }

    /// Monic gcd by Euclid's algorithm.
    ///
    /// # Panics
    /// Panics when both inputs are zero (no monic normal form exists).
    pub fn gcd(&self, other: &Self) -> Self {
        self.check_field(other);
        assert!(
            !(self.is_zero() && other.is_zero()),
            "gcd of two zero polynomials"
        );
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Substitutes `elem` for x and reduces mod `modulus` (Horner in the quotient ring).
    pub fn substitute(&self, elem: &Self, modulus: &Self) -> Self {
        self.check_field(elem);
        self.check_field(modulus);
        let mut acc = FqPoly::zero(self.q);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(elem).add(&FqPoly::constant(self.q, c)).rem(modulus);
        }
        acc
    }

    /// Coefficient vector reversed and made monic: the polynomial whose roots
    /// are the inverses of the roots of `self`. Requires a nonzero constant term.
    pub fn reciprocal(&self) -> Self {
        assert!(self.coeff(0) != 0, "reciprocal needs a nonzero constant term");
        let mut rev = self.coeffs.clone();
        rev.reverse();
        FqPoly::new(self.q, rev).monic()
    }
}

/// Inverse of `a` in F_q[x]/(modulus), by the extended Euclidean algorithm.
///
/// Fails with `NotInvertible` when gcd(a, modulus) is not constant; callers in
/// the synthesis pipeline treat that as a non-generator component.
pub fn invert_mod(a: &FqPoly, modulus: &FqPoly) -> Result<FqPoly, AlgebraError> {
    assert_eq!(a.q(), modulus.q(), "mixed field orders");
    assert!(
        modulus.deg().map_or(false, |d| d >= 1),
        "modulus must have degree at least 1"
    );
    let q = a.q();
    let mut r0 = modulus.clone();
    let mut r1 = a.rem(modulus);
    let mut t0 = FqPoly::zero(q);
    let mut t1 = FqPoly::one(q);
    while !r1.is_zero() {
        let (quot, rem) = r0.divmod(&r1);
        let t2 = t0.sub(&quot.mul(&t1));
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = t2.rem(modulus);
    }
    if r0.deg() != Some(0) {
        return Err(AlgebraError::NotInvertible {
            element: format!("{r0}"),
            modulus: format!("{modulus}"),
        });
    }
    Ok(t0.scale(scalar_inv(r0.leading(), q)).rem(modulus))
}

/// Chinese remainder combination: the unique polynomial of degree below the
/// sum of the moduli degrees matching every (value, modulus) pair.
pub fn crt_combine(residues: &[(FqPoly, FqPoly)]) -> Result<FqPoly, AlgebraError> {
    let Some(((v0, m0), rest)) = residues.split_first() else {
        return Err(AlgebraError::EmptyResidueList);
    };
    let mut acc = v0.rem(m0);
    let mut modulus = m0.clone();
    for (v, m) in rest {
        // Solve acc + modulus·t ≡ v (mod m); coprimality failures surface here.
        let inv = invert_mod(&modulus, m).map_err(|_| AlgebraError::NonCoprimeModuli {
            a: format!("{modulus}"),
            b: format!("{m}"),
        })?;
        let t = v.sub(&acc).mul(&inv).rem(m);
        acc = acc.add(&modulus.mul(&t));
        modulus = modulus.mul(m);
        acc = acc.rem(&modulus);
    }
    Ok(acc)
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                (_, _) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqPoly[q={}]({})", self.q, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p2(coeffs: &[u64]) -> FqPoly {
        FqPoly::new(2, coeffs.to_vec())
    }

    #[test]
    fn product_of_x_plus_1_and_x2_x_1_is_x3_plus_1() {
        // (x+1)(x²+x+1) = x³ + 2x² + 2x + 1 = x³ + 1 over F_2.
        let a = p2(&[1, 1]);
        let b = p2(&[1, 1, 1]);
        assert_eq!(a.mul(&b), p2(&[1, 0, 0, 1]));
    }

    #[test]
    fn division_by_one_returns_self_and_zero_remainder() {
        let a = p2(&[1, 0, 1, 1]);
        let (q, r) = a.divmod(&FqPoly::one(2));
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    #[test]
    #[should_panic(expected = "division by zero")]
    fn division_by_zero_panics() {
        let _ = p2(&[1, 1]).divmod(&FqPoly::zero(2));
    }

    #[test]
    fn gcd_of_x3_plus_1_and_x_plus_1() {
        // x³+1 = (x+1)(x²+x+1), so the gcd with x+1 is x+1.
        let g = p2(&[1, 0, 0, 1]).gcd(&p2(&[1, 1]));
        assert_eq!(g, p2(&[1, 1]));
    }

    #[test]
    fn gcd_is_monic_over_f5() {
        // 3(x+1) and 2(x+1) over F_5 share the monic gcd x+1.
        let a = FqPoly::new(5, vec![3, 3]);
        let b = FqPoly::new(5, vec![2, 2]);
        assert_eq!(a.gcd(&b), FqPoly::new(5, vec![1, 1]));
    }

    #[test]
    fn invert_one_is_one() {
        let m = p2(&[1, 1, 1]);
        assert_eq!(invert_mod(&FqPoly::one(2), &m).unwrap(), FqPoly::one(2));
    }

    #[test]
    fn invert_x_mod_x2_x_1() {
        // x·(x+1) = x²+x ≡ 1 (mod x²+x+1) over F_2.
        let m = p2(&[1, 1, 1]);
        assert_eq!(invert_mod(&FqPoly::x(2), &m).unwrap(), p2(&[1, 1]));
    }

    #[test]
    fn invert_rejects_shared_factor() {
        // gcd(x+1, x²+1) = x+1 over F_2, so no inverse exists.
        let err = invert_mod(&p2(&[1, 1]), &p2(&[1, 0, 1]));
        assert!(matches!(err, Err(AlgebraError::NotInvertible { .. })));
    }

    #[test]
    fn crt_single_pair_reduces() {
        let m = p2(&[1, 1, 1]);
        let v = p2(&[1, 1, 1, 1]);
        let r = crt_combine(&[(v.clone(), m.clone())]).unwrap();
        assert_eq!(r, v.rem(&m));
    }

    #[test]
    fn crt_two_moduli_satisfies_both_congruences() {
        let m1 = p2(&[1, 1, 0, 1]); // x³+x+1
        let m2 = p2(&[1, 0, 1, 1]); // x³+x²+1
        let v1 = p2(&[1]);
        let v2 = p2(&[0, 1, 1]);
        let r = crt_combine(&[(v1.clone(), m1.clone()), (v2.clone(), m2.clone())]).unwrap();
        assert_eq!(r.rem(&m1), v1);
        assert_eq!(r.rem(&m2), v2);
        assert!(r.deg().unwrap() < 6);
    }

    #[test]
    fn crt_rejects_non_coprime_moduli() {
        let m1 = p2(&[1, 1]);
        let err = crt_combine(&[
            (FqPoly::one(2), m1.clone()),
            (FqPoly::zero(2), m1.mul(&m1)),
        ]);
        assert!(matches!(err, Err(AlgebraError::NonCoprimeModuli { .. })));
    }

    #[test]
    fn reciprocal_swaps_root_with_inverse() {
        // x³+x+1 has reciprocal x³+x²+1 over F_2.
        assert_eq!(p2(&[1, 1, 0, 1]).reciprocal(), p2(&[1, 0, 1, 1]));
    }

    #[test]
    fn display_renders_descending_terms() {
        assert_eq!(format!("{}", p2(&[1, 1, 0, 1])), "x^3 + x + 1");
        assert_eq!(format!("{}", FqPoly::new(3, vec![2, 0, 2])), "2x^2 + 2");
        assert_eq!(format!("{}", FqPoly::zero(2)), "0");
    }

    fn arb_poly(q: u64, max_len: usize) -> impl Strategy<Value = FqPoly> {
        proptest::collection::vec(0..q, 0..max_len).prop_map(move |v| FqPoly::new(q, v))
    }

    proptest! {
        #[test]
        fn divmod_reconstructs_dividend(a in arb_poly(2, 12), b in arb_poly(2, 8)) {
            prop_assume!(!b.is_zero());
            let (quot, rem) = a.divmod(&b);
            prop_assert_eq!(quot.mul(&b).add(&rem), a);
            if let Some(rd) = rem.deg() {
                prop_assert!(rd < b.deg().unwrap());
            }
        }

        #[test]
        fn divmod_reconstructs_dividend_f3(a in arb_poly(3, 12), b in arb_poly(3, 8)) {
            prop_assume!(!b.is_zero());
            let (quot, rem) = a.divmod(&b);
            prop_assert_eq!(quot.mul(&b).add(&rem), a);
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(2, 10), b in arb_poly(2, 10)) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = a.gcd(&b);
            if !a.is_zero() {
                prop_assert!(a.rem(&g).is_zero());
            }
            if !b.is_zero() {
                prop_assert!(b.rem(&g).is_zero());
            }
        }

        #[test]
        fn mul_commutes(a in arb_poly(3, 10), b in arb_poly(3, 10)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }
    }
}
