//! Exact arithmetic ground layer: F_q[x] polynomials, parameter validation,
//! factorization of x^p - 1, and the small number-theoretic helpers the rank
//! bookkeeping needs.

mod factor;
mod poly;

pub use factor::{all_ones_poly, cyclotomic_cosets, factor_xp_minus_1, xp_minus_1};
pub use poly::{crt_combine, invert_mod, FqPoly};

pub(crate) use factor::split_all_ones;
pub(crate) use poly::scalar_inv;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{element} is not invertible modulo {modulus}")]
    NotInvertible { element: String, modulus: String },
    #[error("moduli {a} and {b} are not coprime")]
    NonCoprimeModuli { a: String, b: String },
    #[error("cannot combine an empty residue list")]
    EmptyResidueList,
    #[error("{0} divides {1}, so no multiplicative order exists")]
    OrderUndefined(u64, u64),
    #[error("modulus {0} must be prime")]
    ModulusNotPrime(u64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("p = {0} must be an odd prime")]
    BadP(usize),
    #[error("q = {0} must be prime")]
    BadQ(u64),
    #[error("p and q must be distinct primes, both were {0}")]
    Equal(u64),
}

/// Trial-division primality; inputs here are machine-word sized.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Validated parameter pair: the lamp base C_q and the cycle length C_p of
/// the wreath product C_q wr C_p. p is an odd prime, q a prime distinct from p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupParams {
    p: usize,
    q: u64,
}

impl GroupParams {
    pub fn new(p: usize, q: u64) -> Result<Self, ParamError> {
        if !is_prime(p as u64) || p == 2 {
            return Err(ParamError::BadP(p));
        }
        if !is_prime(q) {
            return Err(ParamError::BadQ(q));
        }
        if p as u64 == q {
            return Err(ParamError::Equal(q));
        }
        Ok(GroupParams { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// |C_q wr C_p| = p·q^p.
    pub fn wreath_order(&self) -> u64 {
        self.p as u64 * self.q.pow(self.p as u32)
    }

    /// Order of the central quotient, p·q^(p-1).
    pub fn quotient_order(&self) -> u64 {
        self.p as u64 * self.q.pow(self.p as u32 - 1)
    }
}

/// Multiplicative order of q modulo the prime p.
pub fn mult_order(q: u64, p: u64) -> Result<u64, AlgebraError> {
    if !is_prime(p) {
        return Err(AlgebraError::ModulusNotPrime(p));
    }
    if q % p == 0 {
        return Err(AlgebraError::OrderUndefined(p, q));
    }
    let mut acc = q % p;
    let mut o = 1;
    while acc != 1 {
        acc = acc * q % p;
        o += 1;
    }
    debug_assert_eq!((p - 1) % o, 0);
    Ok(o)
}

/// Number of irreducible factors of s(x) = (x^p - 1)/(x - 1) over F_q.
pub fn factor_count(params: GroupParams) -> usize {
    let o = mult_order(params.q(), params.p() as u64).expect("validated params");
    (params.p() - 1) / o as usize
}

/// Minimal generator count of the central quotient: 1 + (p-1)/ord_p(q).
pub fn rank_formula(params: GroupParams) -> usize {
    1 + factor_count(params)
}

/// True when p = 2^s - 1 for some s >= 2.
pub fn is_mersenne(p: usize) -> bool {
    p >= 3 && (p as u64 + 1).is_power_of_two()
}

/// True when q generates the full multiplicative group mod p.
pub fn is_primitive_root(q: u64, p: u64) -> bool {
    mult_order(q, p) == Ok(p - 1)
}

/// Real-valued ceiling 1 + (p-1)/log2(p-1) that the rank never exceeds.
pub fn rank_upper_bound(p: usize) -> f64 {
    1.0 + (p as f64 - 1.0) / ((p as f64 - 1.0).log2())
}
