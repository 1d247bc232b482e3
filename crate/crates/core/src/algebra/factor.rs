//! Factorization of x^p - 1 over F_q for an odd prime p with q coprime to p.
//!
//! The nontrivial part s(x) = 1 + x + ... + x^(p-1) splits into (p-1)/d
//! irreducible factors of common degree d = ord_p(q). Splitting is done by
//! refining with the cyclotomic coset sums e_C(x) = sum of x^t over a coset C:
//! each e_C satisfies e_C^q ≡ e_C (mod x^p - 1), so e_C is constant modulo
//! every irreducible factor, and gcd(u, e_C - s) peels factors apart. The
//! coset sums span the full splitting algebra, so refining by all of them
//! separates every pair of factors. Fully deterministic.

use crate::algebra::poly::FqPoly;
use crate::algebra::{mult_order, GroupParams};
use crate::modstruct::Decomposition;

/// Cyclotomic cosets of q on {1, ..., p-1}, each sorted, ordered by smallest member.
pub fn cyclotomic_cosets(params: GroupParams) -> Vec<Vec<usize>> {
    let p = params.p();
    let q = (params.q() % p as u64) as usize;
    let mut seen = vec![false; p];
    let mut cosets = Vec::new();
    for start in 1..p {
        if seen[start] {
            continue;
        }
        let mut coset = Vec::new();
        let mut t = start;
        while !seen[t] {
            seen[t] = true;
            coset.push(t);
            t = t * q % p;
        }
        coset.sort_unstable();
        cosets.push(coset);
    }
    cosets
}

/// s(x) = 1 + x + ... + x^(p-1), the cofactor of x - 1 in x^p - 1.
pub fn all_ones_poly(params: GroupParams) -> FqPoly {
    FqPoly::new(params.q(), vec![1; params.p()])
}

/// x^p - 1 itself.
pub fn xp_minus_1(params: GroupParams) -> FqPoly {
    let q = params.q();
    let mut coeffs = vec![0; params.p() + 1];
    coeffs[0] = q - 1;
    coeffs[params.p()] = 1;
    FqPoly::new(q, coeffs)
}

/// Sort key: degree, then coefficients read from the highest power down.
fn canonical_key(f: &FqPoly) -> (usize, Vec<u64>) {
    let mut rev = f.coeffs().to_vec();
    rev.reverse();
    (f.coeffs().len(), rev)
}

/// Splits s(x) into its irreducible factors, sorted canonically.
pub(crate) fn split_all_ones(params: GroupParams) -> Vec<FqPoly> {
    let p = params.p();
    let q = params.q();
    let d = mult_order(q, p as u64).expect("valid params imply p does not divide q") as usize;
    let k = (p - 1) / d;
    let s = all_ones_poly(params);

    let mut factors = vec![s];
    if k > 1 {
        let modulus = xp_minus_1(params);
        for coset in cyclotomic_cosets(params) {
            if factors.iter().all(|f| f.deg() == Some(d)) {
                break;
            }
            let mut e = FqPoly::zero(q);
            for &t in &coset {
                e = e.add(&FqPoly::monomial(q, t, 1));
            }
            let e = e.rem(&modulus);
            let mut next = Vec::with_capacity(factors.len());
            for u in factors {
                if u.deg() == Some(d) {
                    next.push(u);
                    continue;
                }
                let b = e.rem(&u);
                let mut pieces = Vec::new();
                for scalar in 0..q {
                    let g = u.gcd(&b.sub(&FqPoly::constant(q, scalar)));
                    if g.deg().map_or(false, |dg| dg >= 1 && dg < u.deg().unwrap()) {
                        pieces.push(g);
                    }
                }
                if pieces.is_empty() {
                    next.push(u);
                } else {
                    // The pieces for distinct scalars are coprime and their
                    // product is u, because prod_s (b - s) ≡ b^q - b ≡ 0 mod u.
                    let mut covered = FqPoly::one(q);
                    for g in &pieces {
                        covered = covered.mul(g);
                    }
                    if covered.deg() < u.deg() {
                        pieces.push(u.divmod(&covered).0.monic());
                    }
                    next.extend(pieces);
                }
            }
            factors = next;
        }
    }

    assert_eq!(factors.len(), k, "coset refinement must reach all {k} factors");
    for f in &factors {
        assert_eq!(f.deg(), Some(d), "every factor must have degree {d}");
    }
    factors.sort_by_key(canonical_key);
    factors
}

/// Factors x^p - 1 over F_q and packages the module decomposition built on it.
pub fn factor_xp_minus_1(params: GroupParams) -> Decomposition {
    Decomposition::compute(params)
}
