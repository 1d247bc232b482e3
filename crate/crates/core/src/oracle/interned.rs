//! Dense integer codes for group elements, with closure and diameter BFS.
//!
//! Codes pack the base vector as digits in base q below a shift digit, so a
//! whole group is the range 0..p·q^dim and visited-sets are flat bitsets.
//! A full multiplication table is built for small orders; larger groups
//! multiply by decoding, applying the product convention, and re-encoding.

use super::OracleError;
use crate::algebra::GroupParams;
use crate::wreath::{QuotientElement, WreathElement};
use crate::FqPoly;

/// Largest group order the oracle will intern (p ≤ 13 for q = 2 wreath).
pub const ORDER_GUARD: u64 = 1 << 20;

/// Orders up to this get a precomputed order×order multiplication table.
pub const TABLE_GUARD: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Wreath,
    Quotient,
}

/// Flat bitset over element codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSet {
    words: Vec<u64>,
    count: usize,
}

impl CodeSet {
    pub fn new(order: usize) -> Self {
        CodeSet { words: vec![0; order.div_ceil(64)], count: 0 }
    }

    pub fn insert(&mut self, code: u32) -> bool {
        let (w, b) = (code as usize / 64, code as usize % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        if fresh {
            self.words[w] |= 1 << b;
            self.count += 1;
        }
        fresh
    }

    pub fn contains(&self, code: u32) -> bool {
        self.words[code as usize / 64] & (1 << (code as usize % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn is_subset_of(&self, other: &CodeSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                Some((w * 64) as u32 + b)
            })
        })
    }
}

/// A whole group held as integer codes with O(1) multiplication.
#[derive(Debug)]
pub struct InternedGroup {
    params: GroupParams,
    kind: GroupKind,
    dim: usize,
    base: u64,
    order: usize,
    table: Option<Vec<u32>>,
}

impl InternedGroup {
    pub fn new(params: GroupParams, kind: GroupKind) -> Result<Self, OracleError> {
        let dim = match kind {
            GroupKind::Wreath => params.p(),
            GroupKind::Quotient => params.p() - 1,
        };
        let base = params.q().pow(dim as u32);
        let order = params.p() as u64 * base;
        if order > ORDER_GUARD {
            return Err(OracleError::GuardExceeded { order, guard: ORDER_GUARD });
        }
        let mut group = InternedGroup {
            params,
            kind,
            dim,
            base,
            order: order as usize,
            table: None,
        };
        if group.order <= TABLE_GUARD {
            let mut table = vec![0u32; group.order * group.order];
            for a in 0..group.order as u32 {
                for b in 0..group.order as u32 {
                    table[a as usize * group.order + b as usize] = group.mul_direct(a, b);
                }
            }
            group.table = Some(table);
        }
        Ok(group)
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    /// Shift digit of a code.
    pub fn shift_of(&self, code: u32) -> usize {
        (code as u64 / self.base) as usize
    }

    fn digits(&self, code: u32, out: &mut [u64]) -> usize {
        let q = self.params.q();
        let mut rest = code as u64 % self.base;
        for d in out.iter_mut().take(self.dim) {
            *d = rest % q;
            rest /= q;
        }
        (code as u64 / self.base) as usize
    }

    fn assemble(&self, digits: &[u64], shift: usize) -> u32 {
        let q = self.params.q();
        let mut vec_part = 0u64;
        for &d in digits[..self.dim].iter().rev() {
            vec_part = vec_part * q + d;
        }
        (shift as u64 * self.base + vec_part) as u32
    }

    /// Product of two codes straight from the group law, bypassing the table.
    pub fn mul_direct(&self, a: u32, b: u32) -> u32 {
        let p = self.params.p();
        let q = self.params.q();
        let mut da = [0u64; 32];
        let mut db = [0u64; 32];
        let sa = self.digits(a, &mut da);
        let sb = self.digits(b, &mut db);
        match self.kind {
            GroupKind::Wreath => {
                for (j, d) in da.iter_mut().enumerate().take(p) {
                    *d = (*d + db[(j + p - sa) % p]) % q;
                }
                self.assemble(&da, (sa + sb) % p)
            }
            GroupKind::Quotient => {
                // lift b to p coordinates, rotate by the shift, then fold the
                // top coordinate back down with x^{p-1} = -(1 + x + ... + x^{p-2})
                let mut lifted = [0u64; 32];
                for (j, &d) in db.iter().enumerate().take(p - 1) {
                    lifted[(j + sa) % p] = d;
                }
                let top = lifted[p - 1];
                for (j, d) in da.iter_mut().enumerate().take(p - 1) {
                    *d = (*d + lifted[j] + q - top) % q;
                }
                self.assemble(&da, (sa + sb) % p)
            }
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.order + b as usize],
            None => self.mul_direct(a, b),
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        let p = self.params.p();
        let q = self.params.q();
        let mut da = [0u64; 32];
        let sa = self.digits(a, &mut da);
        match self.kind {
            GroupKind::Wreath => {
                let mut out = [0u64; 32];
                for (j, o) in out.iter_mut().enumerate().take(p) {
                    *o = (q - da[(j + sa) % p]) % q;
                }
                self.assemble(&out, (p - sa) % p)
            }
            GroupKind::Quotient => {
                let mut lifted = [0u64; 32];
                for (j, &d) in da.iter().enumerate().take(p - 1) {
                    lifted[(j + (p - sa) % p) % p] = (q - d) % q;
                }
                let top = lifted[p - 1];
                let mut out = [0u64; 32];
                for (j, o) in out.iter_mut().enumerate().take(p - 1) {
                    *o = (lifted[j] + q - top) % q;
                }
                self.assemble(&out, (p - sa) % p)
            }
        }
    }

    pub fn encode_wreath(&self, a: &WreathElement) -> u32 {
        assert_eq!(self.kind, GroupKind::Wreath, "code space holds wreath elements");
        assert_eq!(a.params(), self.params, "mixed group parameters");
        self.assemble(a.vec(), a.shift())
    }

    pub fn decode_wreath(&self, code: u32) -> WreathElement {
        assert_eq!(self.kind, GroupKind::Wreath, "code space holds wreath elements");
        let mut d = [0u64; 32];
        let shift = self.digits(code, &mut d);
        WreathElement::new(self.params, &d[..self.dim], shift)
    }

    pub fn encode_quotient(&self, a: &QuotientElement) -> u32 {
        assert_eq!(self.kind, GroupKind::Quotient, "code space holds quotient elements");
        assert_eq!(a.params(), self.params, "mixed group parameters");
        let mut digits = [0u64; 32];
        for (i, &c) in a.poly().coeffs().iter().enumerate() {
            digits[i] = c;
        }
        self.assemble(&digits, a.shift())
    }

    pub fn decode_quotient(&self, code: u32) -> QuotientElement {
        assert_eq!(self.kind, GroupKind::Quotient, "code space holds quotient elements");
        let mut d = [0u64; 32];
        let shift = self.digits(code, &mut d);
        QuotientElement::new(self.params, FqPoly::new(self.params.q(), d[..self.dim].to_vec()), shift)
    }

    /// Subgroup generated by the given codes, as a bitset. Right multiplication
    /// by the generators alone closes the set, since powers supply inverses in
    /// a finite group.
    pub fn closure(&self, gens: &[u32]) -> CodeSet {
        let mut seen = CodeSet::new(self.order);
        seen.insert(self.identity());
        let mut frontier = vec![self.identity()];
        while let Some(g) = frontier.pop() {
            for &x in gens {
                let n = self.mul(g, x);
                if seen.insert(n) {
                    frontier.push(n);
                }
            }
        }
        seen
    }

    pub fn is_generating(&self, gens: &[u32]) -> bool {
        self.closure(gens).len() == self.order
    }

    /// Drops members that the rest of the set already reaches, first index
    /// first, until no member is removable. Input must generate.
    pub fn reduce_to_irredundant(&self, gens: &[u32]) -> Vec<u32> {
        let mut set: Vec<u32> = gens.to_vec();
        set.sort_unstable();
        set.dedup();
        assert!(self.is_generating(&set), "reduction starts from a generating set");
        'scan: loop {
            for i in 0..set.len() {
                let mut rest = set.clone();
                rest.remove(i);
                if self.closure(&rest).len() == self.order {
                    set = rest;
                    continue 'scan;
                }
            }
            return set;
        }
    }

    /// Exact eccentricity data of the identity in the undirected Cayley graph.
    pub fn bfs_diameter(&self, gens: &[u32]) -> Result<DiameterResult, OracleError> {
        const UNSEEN: u16 = u16::MAX;
        let mut dist = vec![UNSEEN; self.order];
        dist[self.identity() as usize] = 0;
        let mut steps: Vec<u32> = gens.to_vec();
        steps.extend(gens.iter().map(|&g| self.inv(g)));
        steps.sort_unstable();
        steps.dedup();
        let mut frontier = vec![self.identity()];
        let mut next = Vec::new();
        let mut level: u16 = 0;
        let mut reached = 1usize;
        while !frontier.is_empty() {
            level += 1;
            for &g in &frontier {
                for &x in &steps {
                    let n = self.mul(g, x);
                    if dist[n as usize] == UNSEEN {
                        dist[n as usize] = level;
                        reached += 1;
                        next.push(n);
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
            next.clear();
        }
        if reached < self.order {
            return Err(OracleError::NotGenerating { reached });
        }
        let diameter = dist.iter().copied().max().unwrap() as usize;
        let eccentric = dist
            .iter()
            .position(|&d| d as usize == diameter)
            .expect("some code attains the maximum distance") as u32;
        Ok(DiameterResult { diameter, eccentric, reached })
    }
}

/// Outcome of one diameter BFS.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiameterResult {
    /// Eccentricity of the identity, which is the graph diameter by
    /// vertex-transitivity.
    pub diameter: usize,
    /// Smallest code at maximum distance.
    pub eccentric: u32,
    /// Number of elements reached; equals the group order on success.
    pub reached: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn params(p: usize, q: u64) -> GroupParams {
        GroupParams::new(p, q).unwrap()
    }

    fn wreath_group(p: usize, q: u64) -> InternedGroup {
        InternedGroup::new(params(p, q), GroupKind::Wreath).unwrap()
    }

    fn quotient_group(p: usize, q: u64) -> InternedGroup {
        InternedGroup::new(params(p, q), GroupKind::Quotient).unwrap()
    }

    #[test]
    fn orders_and_guards() {
        assert_eq!(wreath_group(3, 2).order(), 24);
        assert_eq!(wreath_group(5, 2).order(), 160);
        assert_eq!(wreath_group(7, 2).order(), 896);
        assert_eq!(quotient_group(7, 2).order(), 448);
        assert_eq!(wreath_group(13, 2).order(), 106_496);
        assert!(matches!(
            InternedGroup::new(params(17, 2), GroupKind::Wreath),
            Err(OracleError::GuardExceeded { .. })
        ));
    }

    #[test]
    fn small_groups_get_tables_and_large_ones_do_not() {
        assert!(wreath_group(7, 2).has_table());
        assert!(quotient_group(7, 2).has_table());
        assert!(!wreath_group(11, 2).has_table());
    }

    #[test]
    fn codes_round_trip_through_elements() {
        for (p, q) in [(3, 2), (5, 2), (7, 2), (3, 3), (5, 3)] {
            let g = wreath_group(p, q);
            for code in 0..g.order() as u32 {
                assert_eq!(g.encode_wreath(&g.decode_wreath(code)), code);
            }
            let gq = quotient_group(p, q);
            for code in 0..gq.order() as u32 {
                assert_eq!(gq.encode_quotient(&gq.decode_quotient(code)), code);
            }
        }
    }

    #[test]
    fn table_and_direct_multiplication_match_element_arithmetic() {
        let mut rng = StdRng::seed_from_u64(60);
        for (p, q) in [(3, 2), (5, 2), (7, 2), (3, 3), (5, 3)] {
            let g = wreath_group(p, q);
            for _ in 0..500 {
                let a = rng.gen_range(0..g.order()) as u32;
                let b = rng.gen_range(0..g.order()) as u32;
                let via_elements =
                    g.encode_wreath(&g.decode_wreath(a).mul(&g.decode_wreath(b)));
                assert_eq!(g.mul(a, b), via_elements);
                assert_eq!(g.mul_direct(a, b), via_elements);
                assert_eq!(
                    g.inv(a),
                    g.encode_wreath(&g.decode_wreath(a).inv())
                );
            }
            let gq = quotient_group(p, q);
            for _ in 0..500 {
                let a = rng.gen_range(0..gq.order()) as u32;
                let b = rng.gen_range(0..gq.order()) as u32;
                let via_elements =
                    gq.encode_quotient(&gq.decode_quotient(a).mul(&gq.decode_quotient(b)));
                assert_eq!(gq.mul(a, b), via_elements);
                assert_eq!(
                    gq.inv(a),
                    gq.encode_quotient(&gq.decode_quotient(a).inv())
                );
            }
        }
    }

    #[test]
    fn quotient_codes_respect_the_projection() {
        // multiplying codes commutes with multiplying wreath elements and
        // projecting afterwards
        let mut rng = StdRng::seed_from_u64(61);
        for (p, q) in [(3, 2), (5, 2), (7, 3)] {
            let pr = params(p, q);
            let gw = InternedGroup::new(pr, GroupKind::Wreath).unwrap();
            let gq = InternedGroup::new(pr, GroupKind::Quotient).unwrap();
            for _ in 0..300 {
                let a = gw.decode_wreath(rng.gen_range(0..gw.order()) as u32);
                let b = gw.decode_wreath(rng.gen_range(0..gw.order()) as u32);
                let lhs = gq.encode_quotient(&a.mul(&b).quotient());
                let rhs = gq.mul(gq.encode_quotient(&a.quotient()), gq.encode_quotient(&b.quotient()));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn closure_of_standard_pair_is_the_whole_group() {
        for (p, q) in [(3, 2), (5, 2), (7, 2), (3, 3)] {
            let g = wreath_group(p, q);
            let pr = g.params();
            let gens = [
                g.encode_wreath(&WreathElement::cycle(pr)),
                g.encode_wreath(&WreathElement::basis(pr, 0)),
            ];
            assert_eq!(g.closure(&gens).len(), g.order());
            assert!(g.is_generating(&gens));
        }
    }

    #[test]
    fn closure_of_base_elements_stays_in_the_base() {
        let g = wreath_group(5, 2);
        let pr = g.params();
        let gens: Vec<u32> = (0..5).map(|i| g.encode_wreath(&WreathElement::basis(pr, i))).collect();
        let closure = g.closure(&gens);
        assert_eq!(closure.len(), 32);
        for code in closure.iter() {
            assert_eq!(g.shift_of(code), 0);
        }
    }

    #[test]
    fn code_set_iterates_in_ascending_order() {
        let mut s = CodeSet::new(200);
        for c in [5u32, 199, 0, 64, 63, 128] {
            assert!(s.insert(c));
        }
        assert!(!s.insert(64));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 5, 63, 64, 128, 199]);
        assert_eq!(s.len(), 6);
        let mut t = CodeSet::new(200);
        t.insert(5);
        t.insert(64);
        assert!(t.is_subset_of(&s));
        assert!(!s.is_subset_of(&t));
    }

    #[test]
    fn complete_generating_set_gives_diameter_one() {
        let g = wreath_group(3, 2);
        let gens: Vec<u32> = (1..g.order() as u32).collect();
        let result = g.bfs_diameter(&gens).unwrap();
        assert_eq!(result.diameter, 1);
        assert_eq!(result.reached, 24);
    }

    #[test]
    fn bfs_rejects_non_generating_sets() {
        let g = wreath_group(3, 2);
        let pr = g.params();
        let gens = [g.encode_wreath(&WreathElement::cycle(pr))];
        assert_eq!(g.bfs_diameter(&gens), Err(OracleError::NotGenerating { reached: 3 }));
    }

    #[test]
    fn standard_pair_diameters_meet_the_bounds() {
        for (p, q, bound) in [(3usize, 2u64, 40), (5, 2, 80), (7, 2, 120)] {
            let g = wreath_group(p, q);
            let pr = g.params();
            let gens = [
                g.encode_wreath(&WreathElement::cycle(pr)),
                g.encode_wreath(&WreathElement::basis(pr, 0)),
            ];
            let result = g.bfs_diameter(&gens).unwrap();
            assert!(result.diameter <= bound, "p={p}: {} > {bound}", result.diameter);
        }
    }

    #[test]
    fn bfs_distance_is_invariant_under_inverting_generators() {
        let mut rng = StdRng::seed_from_u64(62);
        let g = quotient_group(5, 2);
        for _ in 0..20 {
            let gens: Vec<u32> = (0..2).map(|_| rng.gen_range(1..g.order()) as u32).collect();
            let inv_gens: Vec<u32> = gens.iter().map(|&x| g.inv(x)).collect();
            match (g.bfs_diameter(&gens), g.bfs_diameter(&inv_gens)) {
                (Ok(a), Ok(b)) => assert_eq!(a.diameter, b.diameter),
                (Err(OracleError::NotGenerating { reached: a }),
                 Err(OracleError::NotGenerating { reached: b })) => assert_eq!(a, b),
                other => panic!("mismatched outcomes {other:?}"),
            }
        }
    }

    #[test]
    fn reduce_to_irredundant_keeps_generation_and_prunes() {
        let g = wreath_group(3, 2);
        let pr = g.params();
        let c = g.encode_wreath(&WreathElement::cycle(pr));
        let e0 = g.encode_wreath(&WreathElement::basis(pr, 0));
        let e1 = g.encode_wreath(&WreathElement::basis(pr, 1));
        let z = g.encode_wreath(&WreathElement::center(pr));
        let reduced = g.reduce_to_irredundant(&[c, e0, e1, z]);
        assert!(g.is_generating(&reduced));
        assert!(reduced.len() < 4);
        for i in 0..reduced.len() {
            let mut rest = reduced.clone();
            rest.remove(i);
            assert!(!g.is_generating(&rest));
        }
    }
}
