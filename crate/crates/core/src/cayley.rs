//! Cayley tables, used as an independent oracle for the normal-form arithmetic
//! and for building power graphs of arbitrary small groups.
//!
//! The family table is built by rewriting words in `s` and `r` with the
//! single-letter rules `r s → s r^m`, `s s → ε`, `r^N → ε`, never calling
//! [`GroupParams::multiply`].

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{GroupElement, GroupParams};
use crate::{Error, Result};

pub const DEFAULT_CAP: usize = 120;
/// Exhaustive associativity is checked up to this order; larger tables are sampled.
pub const EXHAUSTIVE_ASSOCIATIVITY_MAX: usize = 48;
pub const SAMPLED_TRIPLES: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    table: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    S,
    R,
}

/// Run-length word `x₁^c₁ x₂^c₂ …`.
struct Word {
    runs: Vec<(Letter, u64)>,
}

impl Word {
    fn normal(e: GroupElement) -> Word {
        Word { runs: alloc::vec![(Letter::S, e.eps as u64), (Letter::R, e.i)] }
    }

    fn concat(mut self, other: Word) -> Word {
        self.runs.extend(other.runs);
        self
    }

    fn tidy(&mut self, n: u64) {
        let mut out: Vec<(Letter, u64)> = Vec::with_capacity(self.runs.len());
        for &(l, c) in &self.runs {
            match out.last_mut() {
                Some((pl, pc)) if *pl == l => *pc += c,
                _ => out.push((l, c)),
            }
            if let Some((l, c)) = out.last_mut() {
                *c %= if *l == Letter::S { 2 } else { n };
                if *c == 0 {
                    out.pop();
                }
            }
        }
        self.runs = out;
    }

    fn reduce(mut self, n: u64, m: u64) -> GroupElement {
        self.tidy(n);
        loop {
            let pos = self
                .runs
                .windows(2)
                .position(|w| w[0].0 == Letter::R && w[1].0 == Letter::S);
            let Some(pos) = pos else { break };
            // r s → s r^m, one letter at a time.
            self.runs[pos].1 -= 1;
            self.runs[pos + 1].1 -= 1;
            let tail = self.runs.split_off(pos + 2);
            self.runs.push((Letter::S, 1));
            self.runs.push((Letter::R, m));
            self.runs.extend(tail);
            self.tidy(n);
        }
        let mut e = GroupElement::new(0, 0);
        for (l, c) in self.runs {
            match l {
                Letter::S => e.eps = c as u8,
                Letter::R => e.i = c,
            }
        }
        e
    }
}

impl CayleyTable {
    /// Table for an arbitrary operation on `0..n`; `op` must describe a group.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(op(a, b));
            }
        }
        CayleyTable { n, table }
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n)
    }

    /// Dihedral group of order `2n`: index `i < n` is `ρ^i`, `n + i` is `σ ρ^i`.
    pub fn dihedral(n: usize) -> Self {
        Self::from_fn(2 * n, |a, b| {
            let (fa, ia) = (a / n, a % n);
            let (fb, ib) = (b / n, b % n);
            let ia = if fb == 1 { (n - ia) % n } else { ia };
            (fa ^ fb) * n + (ia + ib) % n
        })
    }

    /// The family table by word rewriting, indexed like [`GroupParams::elements`].
    pub fn for_family(params: &GroupParams, cap: usize) -> Result<(Self, Vec<GroupElement>)> {
        let order = params.order() as usize;
        if order > cap {
            return Err(Error::CayleyCapExceeded { order, cap });
        }
        let elements = params.elements();
        let (n, m) = (params.cyclic_order(), params.m());
        let mut table = Vec::with_capacity(order * order);
        for &a in &elements {
            for &b in &elements {
                let c = Word::normal(a).concat(Word::normal(b)).reduce(n, m);
                let idx = params.index_of(c).ok_or_else(|| {
                    Error::Classification(format!("word reduction left {c} outside the group"))
                })?;
                table.push(idx);
            }
        }
        Ok((CayleyTable { n: order, table }, elements))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn identity(&self) -> Option<usize> {
        (0..self.n).find(|&e| (0..self.n).all(|a| self.product(e, a) == a && self.product(a, e) == a))
    }

    /// Every row and column is a permutation.
    pub fn is_latin_square(&self) -> bool {
        (0..self.n).all(|a| {
            self.is_permutation((0..self.n).map(|b| self.product(a, b)))
                && self.is_permutation((0..self.n).map(|b| self.product(b, a)))
        })
    }

    fn is_permutation(&self, mut cells: impl Iterator<Item = usize>) -> bool {
        let mut seen = alloc::vec![false; self.n];
        cells.all(|c| c < self.n && !core::mem::replace(&mut seen[c], true))
    }

    pub fn has_inverses(&self) -> bool {
        let Some(e) = self.identity() else { return false };
        (0..self.n).all(|a| (0..self.n).any(|b| self.product(a, b) == e && self.product(b, a) == e))
    }

    /// First non-associative triple, if any. Exhaustive for small orders,
    /// otherwise [`SAMPLED_TRIPLES`] seeded random triples.
    pub fn associativity_violation(&self, seed: u64) -> Option<(usize, usize, usize)> {
        let bad = |a: usize, b: usize, c: usize| {
            self.product(self.product(a, b), c) != self.product(a, self.product(b, c))
        };
        if self.n <= EXHAUSTIVE_ASSOCIATIVITY_MAX {
            for a in 0..self.n {
                for b in 0..self.n {
                    for c in 0..self.n {
                        if bad(a, b, c) {
                            return Some((a, b, c));
                        }
                    }
                }
            }
            None
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..SAMPLED_TRIPLES)
                .map(|_| (rng.gen_range(0..self.n), rng.gen_range(0..self.n), rng.gen_range(0..self.n)))
                .find(|&(a, b, c)| bad(a, b, c))
        }
    }

    /// `⟨a⟩` as indices, starting from the identity.
    pub fn cyclic_subgroup(&self, a: usize) -> Vec<usize> {
        let e = self.identity().expect("table has an identity");
        let mut out = alloc::vec![e];
        let mut x = a;
        while x != e {
            out.push(x);
            x = self.product(x, a);
        }
        out
    }

    /// First pair where the table disagrees with the normal-form product.
    pub fn disagreement_with_multiply(
        &self,
        params: &GroupParams,
        elements: &[GroupElement],
    ) -> Option<(GroupElement, GroupElement)> {
        for (ia, &a) in elements.iter().enumerate() {
            for (ib, &b) in elements.iter().enumerate() {
                let via_table = elements[self.product(ia, ib)];
                if params.multiply(a, b).ok() != Some(via_table) {
                    return Some((a, b));
                }
            }
        }
        None
    }
}
