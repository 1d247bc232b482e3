//! Structure of the base module V = F_q[x]/s(x) and generation criteria.
//!
//! s(x) = 1 + x + ... + x^(p-1) splits into k = (p-1)/d distinct irreducible
//! factors, all of degree d = ord_p(q). V is semisimple: the Chinese remainder
//! map identifies it with the product of the k residue fields. Which factors a
//! vector survives in (its support) is the whole story for generation: a set
//! generates the quotient G exactly when some element carries a shift and the
//! supports jointly cover every factor.

use crate::algebra::{
    all_ones_poly, factor_count, invert_mod, mult_order, split_all_ones, FqPoly, GroupParams,
};
use crate::wreath::{Normalizer, QuotientElement, WreathElement};
use std::collections::BTreeSet;
use thiserror::Error;

/// Set of factor indices a vector is nonzero in.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Support(BTreeSet<usize>);

impl Support {
    pub fn new() -> Self {
        Support(BTreeSet::new())
    }

    pub fn insert(&mut self, i: usize) {
        self.0.insert(i);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn union_with(&mut self, other: &Support) {
        self.0.extend(other.0.iter().copied());
    }

    pub fn difference(&self, other: &Support) -> Support {
        Support(self.0.difference(&other.0).copied().collect())
    }
}

impl FromIterator<usize> for Support {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Support(iter.into_iter().collect())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverageError {
    #[error("no generator is nonzero in factor {factor}")]
    FactorNotCovered { factor: usize },
}

/// The factorization of s(x) with precomputed Chinese-remainder data.
#[derive(Debug, Clone)]
pub struct Decomposition {
    params: GroupParams,
    factors: Vec<FqPoly>,
    degree: usize,
    s: FqPoly,
    trivial: FqPoly,
    /// basis[i] is 1 mod factors[i] and 0 mod every other factor.
    basis: Vec<FqPoly>,
    /// conj_perm[i] indexes the factor whose roots are the inverses of factor i's.
    conj_perm: Vec<usize>,
    /// x^{-1} reduced mod s.
    xinv: FqPoly,
}

impl Decomposition {
    pub fn compute(params: GroupParams) -> Self {
        let q = params.q();
        let p = params.p();
        let factors = split_all_ones(params);
        let degree = mult_order(q, p as u64).expect("validated parameters") as usize;
        debug_assert_eq!(factors.len(), factor_count(params));
        let s = all_ones_poly(params);
        let trivial = FqPoly::new(q, vec![q - 1, 1]);

        let mut basis = Vec::with_capacity(factors.len());
        for f in &factors {
            let (m, r) = s.divmod(f);
            assert!(r.is_zero(), "every listed factor divides s(x)");
            let inv = invert_mod(&m.rem(f), f).expect("cofactor is coprime to its factor");
            basis.push(m.mul(&inv).rem(&s));
        }

        let conj_perm: Vec<usize> = factors
            .iter()
            .map(|f| {
                let rec = f.reciprocal();
                factors
                    .iter()
                    .position(|g| *g == rec)
                    .expect("the factor set is closed under root inversion")
            })
            .collect();

        let xinv = FqPoly::monomial(q, p - 1, 1).rem(&s);

        Decomposition { params, factors, degree, s, trivial, basis, conj_perm, xinv }
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    /// Number of simple factors, k = (p-1)/d.
    pub fn count(&self) -> usize {
        self.factors.len()
    }

    /// Common degree d of the simple factors.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn factor(&self, i: usize) -> &FqPoly {
        &self.factors[i]
    }

    pub fn factors(&self) -> &[FqPoly] {
        &self.factors
    }

    /// All irreducible factors of x^p - 1: the trivial factor x - 1 first,
    /// then the simple factors of s(x) in canonical order.
    pub fn xp_factors(&self) -> Vec<FqPoly> {
        let mut out = vec![self.trivial.clone()];
        out.extend(self.factors.iter().cloned());
        out
    }

    pub fn s(&self) -> &FqPoly {
        &self.s
    }

    pub fn trivial_factor(&self) -> &FqPoly {
        &self.trivial
    }

    /// x^{-1} mod s(x).
    pub fn xinv(&self) -> &FqPoly {
        &self.xinv
    }

    /// Residue of v in factor i.
    pub fn project(&self, v: &FqPoly, i: usize) -> FqPoly {
        v.rem(&self.factors[i])
    }

    /// All k residues of v.
    pub fn components(&self, v: &FqPoly) -> Vec<FqPoly> {
        self.factors.iter().map(|f| v.rem(f)).collect()
    }

    /// The unique v mod s with the given residue in every factor.
    pub fn combine(&self, residues: &[FqPoly]) -> FqPoly {
        assert_eq!(residues.len(), self.factors.len(), "one residue per factor");
        let mut acc = FqPoly::zero(self.params.q());
        for (r, b) in residues.iter().zip(&self.basis) {
            acc = acc.add(&r.mul(b));
        }
        acc.rem(&self.s)
    }

    pub fn support(&self, v: &FqPoly) -> Support {
        (0..self.factors.len()).filter(|&i| !self.project(v, i).is_zero()).collect()
    }

    /// Index of the factor conjugate to factor i under x -> x^{-1}.
    pub fn conj_index(&self, i: usize) -> usize {
        self.conj_perm[i]
    }

    pub fn conj_support(&self, s: &Support) -> Support {
        s.iter().map(|i| self.conj_perm[i]).collect()
    }

    /// Image of f under the ring automorphism x -> x^{-1} of F_q[x]/s.
    pub fn rho(&self, f: &FqPoly) -> FqPoly {
        f.substitute(&self.xinv, &self.s)
    }

    /// Action of an exponent polynomial on the base of G: each power x^i in f
    /// stands for conjugation by c^i, which multiplies by x^{-i}, so the
    /// result is f(x^{-1})·v mod s.
    pub fn exponent_action(&self, f: &FqPoly, v: &FqPoly) -> FqPoly {
        self.rho(f).mul(v).rem(&self.s)
    }
}

/// One step of the greedy cover: generator `gen` is responsible for the
/// factors in `factors`, none of which an earlier generator reaches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub gen: usize,
    pub factors: Support,
}

/// Scans supports in order, assigning to each its factors not already covered,
/// and drops generators that contribute nothing new. Errors with the first
/// uncovered factor if the union misses one.
pub fn greedy_blocks(supports: &[(usize, Support)], k: usize) -> Result<Vec<Block>, CoverageError> {
    let mut covered = Support::new();
    let mut blocks = Vec::new();
    for (gen, supp) in supports {
        let fresh = supp.difference(&covered);
        if !fresh.is_empty() {
            covered.union_with(&fresh);
            blocks.push(Block { gen: *gen, factors: fresh });
        }
    }
    for i in 0..k {
        if !covered.contains(i) {
            return Err(CoverageError::FactorNotCovered { factor: i });
        }
    }
    Ok(blocks)
}

/// Outcome of a generation test, with the obstruction when there is one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerationCheck {
    Generates,
    /// Every element lies in the base, so the shift coordinate is never reached.
    NoShiftedGenerator,
    /// No generator is nonzero in this factor of s(x).
    FactorNotCovered { factor: usize },
    /// All coordinate sums vanish mod q, so the center is never reached.
    TrivialParity,
}

impl GenerationCheck {
    pub fn is_generating(&self) -> bool {
        matches!(self, GenerationCheck::Generates)
    }
}

impl std::fmt::Display for GenerationCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GenerationCheck::Generates => write!(f, "generates"),
            GenerationCheck::NoShiftedGenerator => {
                write!(f, "all generators have shift 0")
            }
            GenerationCheck::FactorNotCovered { factor } => {
                write!(f, "no generator is nonzero in factor {factor} of s(x)")
            }
            GenerationCheck::TrivialParity => {
                write!(f, "all generators have coordinate sum 0 mod q")
            }
        }
    }
}

/// Generators carried to a standard position: an automorphism alpha maps the
/// pivot (the first shifted generator) to exactly c, and every other generator
/// is replaced by its commutator with c, which lands in the base V without
/// changing its support.
#[derive(Debug, Clone)]
pub struct NormalizedContext {
    params: GroupParams,
    pivot: usize,
    alpha: Normalizer,
    images: Vec<QuotientElement>,
    transformed: Vec<Option<QuotientElement>>,
}

impl NormalizedContext {
    /// None when no generator has a nonzero shift.
    pub fn new(gens: &[QuotientElement]) -> Option<Self> {
        let pivot = gens.iter().position(|g| g.shift() != 0)?;
        let params = gens[pivot].params();
        let alpha = Normalizer::for_generator(&gens[pivot])
            .expect("pivot was selected with nonzero shift");
        let images: Vec<QuotientElement> = gens.iter().map(|g| alpha.apply(g)).collect();
        let c = QuotientElement::cycle(params);
        debug_assert_eq!(images[pivot], c);
        let transformed = images
            .iter()
            .enumerate()
            .map(|(j, y)| {
                if j == pivot {
                    None
                } else {
                    Some(c.inv().mul(&y.inv()).mul(&c).mul(y))
                }
            })
            .collect();
        Some(NormalizedContext { params, pivot, alpha, images, transformed })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn alpha(&self) -> &Normalizer {
        &self.alpha
    }

    /// Alpha applied to the original generators; the pivot image is c.
    pub fn images(&self) -> &[QuotientElement] {
        &self.images
    }

    /// Commutator [c, alpha(g_j)] for each non-pivot j, an element of V.
    pub fn transformed(&self, j: usize) -> Option<&QuotientElement> {
        self.transformed[j].as_ref()
    }

    /// Supports of the transformed generators, in generator order.
    pub fn supports(&self, dec: &Decomposition) -> Vec<(usize, Support)> {
        self.transformed
            .iter()
            .enumerate()
            .filter_map(|(j, t)| t.as_ref().map(|t| (j, dec.support(t.poly()))))
            .collect()
    }

    pub fn blocks(&self, dec: &Decomposition) -> Result<Vec<Block>, CoverageError> {
        greedy_blocks(&self.supports(dec), dec.count())
    }
}

/// Tests whether the given elements generate the quotient G, without forming
/// any closure: a pivot must exist and the transformed supports must cover
/// every factor of s(x).
pub fn generates_quotient(gens: &[QuotientElement], dec: &Decomposition) -> GenerationCheck {
    let Some(ctx) = NormalizedContext::new(gens) else {
        return GenerationCheck::NoShiftedGenerator;
    };
    assert_eq!(ctx.params(), dec.params(), "mixed group parameters");
    match ctx.blocks(dec) {
        Ok(_) => GenerationCheck::Generates,
        Err(CoverageError::FactorNotCovered { factor }) => {
            GenerationCheck::FactorNotCovered { factor }
        }
    }
}

/// Tests whether the given elements generate the full wreath product: their
/// quotient images must generate G and some coordinate sum must be nonzero,
/// since the kernel of the coordinate-sum map is the unique proper subgroup
/// covering all of G.
pub fn generates_wreath(gens: &[WreathElement], dec: &Decomposition) -> GenerationCheck {
    let images: Vec<QuotientElement> = gens.iter().map(|g| g.quotient()).collect();
    let quotient_check = generates_quotient(&images, dec);
    if !quotient_check.is_generating() {
        return quotient_check;
    }
    if gens.iter().all(|g| g.parity() == 0) {
        return GenerationCheck::TrivialParity;
    }
    GenerationCheck::Generates
}
