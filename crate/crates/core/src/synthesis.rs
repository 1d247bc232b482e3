//! Rewriting group elements as short words in an arbitrary generating set.
//!
//! The pipeline for the quotient G: normalize the generators so the pivot
//! becomes c, replace the others by their commutators with c (elements of the
//! base V), split the target across the factors of s(x) along the greedy
//! blocks, solve for one exponent polynomial per block, and expand each
//! polynomial into letters by Horner's rule. Words come back verified by
//! evaluation and with a length bound linear in p; for the full wreath
//! product a central correction of at most q·p letters is appended.

use crate::algebra::{invert_mod, scalar_inv, FqPoly, GroupParams};
use crate::modstruct::{
    generates_quotient, generates_wreath, Block, Decomposition, GenerationCheck,
    NormalizedContext,
};
use crate::wreath::{CenterElement, GroupOps, QuotientElement, WreathElement};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthesisError {
    #[error("the given elements do not generate the group: {0}")]
    NotGenerating(GenerationCheck),
    #[error("special synthesis needs exactly two generators, got {0}")]
    SpecialPairSize(usize),
    #[error(
        "special synthesis needs one shifted generator and one base generator \
         that is nonzero in every factor of s(x)"
    )]
    NotSpecialPair,
}

/// One letter of a word: the 1-based index of a generator and an exponent
/// of +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub gen: usize,
    pub exp: i32,
}

/// A word over an indexed generating set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn push(&mut self, gen: usize, exp: i32) {
        assert!(gen >= 1, "generator indices are 1-based");
        assert!(exp == 1 || exp == -1, "letter exponents are +1 or -1");
        self.letters.push(Letter { gen, exp });
    }

    /// Appends |e| letters gen^{sign e}.
    pub fn push_run(&mut self, gen: usize, e: i64) {
        let sign = if e < 0 { -1 } else { 1 };
        for _ in 0..e.unsigned_abs() {
            self.push(gen, sign);
        }
    }

    pub fn extend_with(&mut self, other: &Word) {
        self.letters.extend_from_slice(&other.letters);
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters referring to the given generator, either sign.
    pub fn count_of(&self, gen: usize) -> usize {
        self.letters.iter().filter(|l| l.gen == gen).count()
    }

    /// Largest generator index used, or 0 for the empty word.
    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|l| l.gen).max().unwrap_or(0)
    }

    /// Multiplies the word out left to right over the given generators.
    pub fn evaluate<T: GroupOps>(&self, gens: &[T]) -> T {
        assert!(!gens.is_empty(), "evaluation needs at least one generator");
        let mut acc = gens[0].identity_like();
        for l in &self.letters {
            assert!(l.gen <= gens.len(), "letter {} beyond generator list", l.gen);
            let g = &gens[l.gen - 1];
            acc = if l.exp == 1 { acc.compose(g) } else { acc.compose(&g.inverse()) };
        }
        acc
    }
}

impl FromIterator<(usize, i32)> for Word {
    fn from_iter<T: IntoIterator<Item = (usize, i32)>>(iter: T) -> Self {
        let mut w = Word::new();
        for (gen, exp) in iter {
            w.push(gen, exp);
        }
        w
    }
}

/// Word evaluating to f applied to w, over the alphabet {w_gen, c_gen}:
/// conjugating by c_gen walks the exponent, so the result of the word is
/// f(x^{-1})·w. The leading backward run can be displaced by `lead` extra
/// forward steps, which evaluates to c^lead times the undisplaced word.
fn horner_word_displaced(f: &FqPoly, w_gen: usize, c_gen: usize, lead: i64) -> Word {
    let mut word = Word::new();
    let n = f.deg().unwrap_or(0);
    word.push_run(c_gen, lead - n as i64);
    for j in (0..=n).rev() {
        if f.is_zero() {
            break;
        }
        word.push_run(w_gen, f.coeff(j) as i64);
        if j > 0 {
            word.push_run(c_gen, 1);
        }
    }
    word
}

/// Word for the action of an exponent polynomial on a base element, by
/// Horner's rule: 2·deg f letters of c_gen and one w_gen letter per unit of
/// each coefficient. Evaluates to f(x^{-1})·w when w_gen names a base element
/// w and c_gen names c.
pub fn horner_word(f: &FqPoly, w_gen: usize, c_gen: usize) -> Word {
    horner_word_displaced(f, w_gen, c_gen, 0)
}

/// Like `horner_word`, but every w letter is expanded to the four-letter
/// commutator c^{-1}·y^{-1}·c·y, for generators y that only reach the base
/// through their commutator with c.
fn horner_word_commutator(f: &FqPoly, y_gen: usize, c_gen: usize) -> Word {
    let mut word = Word::new();
    if f.is_zero() {
        return word;
    }
    let n = f.deg().unwrap_or(0);
    word.push_run(c_gen, -(n as i64));
    for j in (0..=n).rev() {
        for _ in 0..f.coeff(j) {
            word.push(c_gen, -1);
            word.push(y_gen, -1);
            word.push(c_gen, 1);
            word.push(y_gen, 1);
        }
        if j > 0 {
            word.push_run(c_gen, 1);
        }
    }
    word
}

/// Solves sum_j f_j(x^{-1})·w_j = v for one exponent polynomial per block.
///
/// `transformed[j]` is the base element carried by block j. Working in the
/// image of x -> x^{-1} turns the equation into plain multiplication, and the
/// greedy block structure makes it triangular: processing blocks newest first,
/// each f_j is fixed by Chinese remaindering over its own factors only, and
/// the corrections of older blocks never touch factors of newer ones. Each
/// f_j has degree below d times the block size.
pub fn solve_exponents(
    v: &FqPoly,
    blocks: &[Block],
    transformed: &[FqPoly],
    dec: &Decomposition,
) -> Vec<FqPoly> {
    assert_eq!(blocks.len(), transformed.len(), "one carrier per block");
    let q = dec.params().q();
    let s = dec.s();
    let mut residual = dec.rho(v);
    let mut out = vec![FqPoly::zero(q); blocks.len()];
    for (j, block) in blocks.iter().enumerate().rev() {
        let w_tilde = dec.rho(&transformed[j]);
        let mut residues = Vec::new();
        for i in block.factors.iter() {
            let fac = dec.factor(dec.conj_index(i));
            let w_res = w_tilde.rem(fac);
            let inv = invert_mod(&w_res, fac)
                .expect("block factors lie in the support of their carrier");
            residues.push((residual.rem(fac).mul(&inv).rem(fac), fac.clone()));
        }
        let f_j = crate::algebra::crt_combine(&residues)
            .expect("distinct irreducible moduli are coprime");
        debug_assert!(
            f_j.deg().map_or(0, |d| d + 1) <= dec.degree() * block.factors.len(),
            "exponent polynomial must fit its block"
        );
        residual = residual.sub(&f_j.mul(&w_tilde).rem(s)).rem(s);
        out[j] = f_j;
    }
    assert!(
        residual.is_zero(),
        "exponent solving must consume the whole target; leftover {residual}"
    );
    out
}

/// Everything produced for one synthesized target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisReport<E> {
    pub word: Word,
    pub target: E,
    pub length: usize,
    pub bound: usize,
    pub verified: bool,
}

/// Guaranteed word length for quotient targets: (4q-2)(p-1) letters across
/// the blocks plus a signed shift tail of at most (p-1)/2.
pub fn length_bound_quotient(params: GroupParams) -> usize {
    let p = params.p();
    let q = params.q() as usize;
    (4 * q - 2) * (p - 1) + (p - 1) / 2
}

/// Guaranteed word length for wreath targets: the quotient bound plus a
/// central correction of at most q·p letters.
pub fn length_bound_wreath(params: GroupParams) -> usize {
    length_bound_quotient(params) + params.q() as usize * params.p()
}

/// Guaranteed word length for the two-generator special case.
pub fn length_bound_special(params: GroupParams) -> usize {
    (params.q() as usize + 1) * (params.p() - 1)
}

/// Signed representative of the shift with the fewest letters.
fn signed_shift(t: usize, p: usize) -> i64 {
    if t <= (p - 1) / 2 {
        t as i64
    } else {
        t as i64 - p as i64
    }
}

/// Writes the target as a word in the given generators of G, verified by
/// evaluation and within `length_bound_quotient`.
pub fn synthesize_quotient(
    gens: &[QuotientElement],
    target: &QuotientElement,
    dec: &Decomposition,
) -> Result<SynthesisReport<QuotientElement>, SynthesisError> {
    let check = generates_quotient(gens, dec);
    if !check.is_generating() {
        return Err(SynthesisError::NotGenerating(check));
    }
    let params = dec.params();
    assert_eq!(target.params(), params, "mixed group parameters");
    let ctx = NormalizedContext::new(gens).expect("generating sets contain a shifted element");
    let blocks = ctx.blocks(dec).expect("generating sets cover every factor");
    let image = ctx.alpha().apply(target);

    let carriers: Vec<FqPoly> = blocks
        .iter()
        .map(|b| ctx.transformed(b.gen).expect("blocks exclude the pivot").poly().clone())
        .collect();
    let exponents = solve_exponents(image.poly(), &blocks, &carriers, dec);

    let pivot_letter = ctx.pivot() + 1;
    let mut word = Word::new();
    for (block, f) in blocks.iter().zip(&exponents) {
        word.extend_with(&horner_word_commutator(f, block.gen + 1, pivot_letter));
    }
    word.push_run(pivot_letter, signed_shift(image.shift(), params.p()));

    let value = word.evaluate(gens);
    assert_eq!(value, *target, "synthesized word failed verification");
    let bound = length_bound_quotient(params);
    assert!(word.len() <= bound, "word of length {} over bound {}", word.len(), bound);
    Ok(SynthesisReport { length: word.len(), word, target: target.clone(), bound, verified: true })
}

/// Writes the target as a word in a special generating pair of G: one shifted
/// element and one base element nonzero in every factor. A single Horner pass
/// with a displaced leading run stays within `length_bound_special`.
pub fn synthesize_special(
    gens: &[QuotientElement],
    target: &QuotientElement,
    dec: &Decomposition,
) -> Result<SynthesisReport<QuotientElement>, SynthesisError> {
    if gens.len() != 2 {
        return Err(SynthesisError::SpecialPairSize(gens.len()));
    }
    let params = dec.params();
    assert_eq!(target.params(), params, "mixed group parameters");
    let Some(pivot) = gens.iter().position(|g| g.shift() != 0) else {
        return Err(SynthesisError::NotSpecialPair);
    };
    let other = 1 - pivot;
    if !gens[other].in_base() {
        return Err(SynthesisError::NotSpecialPair);
    }
    let ctx = NormalizedContext::new(gens).expect("a shifted pivot exists");
    debug_assert_eq!(ctx.pivot(), pivot);
    let w = ctx.images()[other].clone();
    debug_assert!(w.in_base(), "base elements stay in the base under normalization");
    let Ok(w_inv) = invert_mod(w.poly(), dec.s()) else {
        return Err(SynthesisError::NotSpecialPair);
    };

    let image = ctx.alpha().apply(target);
    let t = signed_shift(image.shift(), params.p());
    // need f with x^t·f(x^{-1})·w = v, so f = rho(x^{-t}·v·w^{-1})
    let p = params.p();
    let x_mt = FqPoly::monomial(params.q(), (p - image.shift()) % p, 1);
    let f = dec.rho(&x_mt.mul(image.poly()).rem(dec.s()).mul(&w_inv).rem(dec.s()));

    // choose the lead representative that shortens the merged run
    let n = f.deg().unwrap_or(0) as i64;
    let alt = if t >= 0 { t - p as i64 } else { t + p as i64 };
    let lead = if (alt - n).abs() < (t - n).abs() { alt } else { t };

    let word = horner_word_displaced(&f, other + 1, pivot + 1, lead);
    let value = word.evaluate(gens);
    assert_eq!(value, *target, "synthesized word failed verification");
    let bound = length_bound_special(params);
    assert!(word.len() <= bound, "word of length {} over bound {}", word.len(), bound);
    Ok(SynthesisReport { length: word.len(), word, target: target.clone(), bound, verified: true })
}

/// Word evaluating to z^a, for a nonzero a mod q: some p-th power reaches the
/// center, because g^p = z^(coordinate sum of g) whenever g has a shift.
///
/// If a shifted generator has nonzero coordinate sum, its p-th power is
/// repeated; otherwise a base generator with nonzero sum is mixed in to fix
/// the parity first. At most q·p letters either way.
pub fn center_word(gens: &[WreathElement], a: u64) -> Result<Word, SynthesisError> {
    assert!(!gens.is_empty(), "need at least one generator");
    let params = gens[0].params();
    let q = params.q();
    let p = params.p();
    let a = a % q;
    let mut word = Word::new();
    if a == 0 {
        return Ok(word);
    }
    if let Some(j) = gens.iter().position(|g| g.shift() != 0 && g.parity() != 0) {
        let m = a * scalar_inv(gens[j].parity(), q) % q;
        word.push_run(j + 1, (p as u64 * m) as i64);
        return Ok(word);
    }
    let Some(shifted) = gens.iter().position(|g| g.shift() != 0) else {
        return Err(SynthesisError::NotGenerating(GenerationCheck::NoShiftedGenerator));
    };
    let Some(charged) = gens.iter().position(|g| g.parity() != 0) else {
        return Err(SynthesisError::NotGenerating(GenerationCheck::TrivialParity));
    };
    let b = a * scalar_inv(gens[charged].parity(), q) % q;
    for _ in 0..p {
        word.push_run(charged + 1, b as i64);
        word.push(shifted + 1, 1);
    }
    Ok(word)
}

/// Writes the target as a word in the given generators of the full wreath
/// product: synthesize the quotient image, then append the central correction.
/// Verified by evaluation and within `length_bound_wreath`.
pub fn synthesize_wreath(
    gens: &[WreathElement],
    target: &WreathElement,
    dec: &Decomposition,
) -> Result<SynthesisReport<WreathElement>, SynthesisError> {
    let check = generates_wreath(gens, dec);
    if !check.is_generating() {
        return Err(SynthesisError::NotGenerating(check));
    }
    let params = dec.params();
    assert_eq!(target.params(), params, "mixed group parameters");
    let images: Vec<QuotientElement> = gens.iter().map(|g| g.quotient()).collect();
    let quotient_report = synthesize_quotient(&images, &target.quotient(), dec)?;

    let mut word = quotient_report.word;
    let partial = word.evaluate(gens);
    let residual = partial.inv().mul(target);
    let center = CenterElement::from_wreath(&residual)
        .expect("a word matching the quotient image misses the target by a central element");
    word.extend_with(&center_word(gens, center.scalar())?);

    let value = word.evaluate(gens);
    assert_eq!(value, *target, "synthesized word failed verification");
    let bound = length_bound_wreath(params);
    assert!(word.len() <= bound, "word of length {} over bound {}", word.len(), bound);
    Ok(SynthesisReport { length: word.len(), word, target: target.clone(), bound, verified: true })
}
