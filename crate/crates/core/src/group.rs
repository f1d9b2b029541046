//! Arithmetic in `𝒢 = ⟨s, r : r^N = s² = e, s r s⁻¹ = r^m⟩` with
//! `N = 2^k p` and `m = 2^(k-1) p - 1`.
//!
//! Every element has a unique normal form `s^ε r^i` with `ε ∈ {0, 1}` and
//! `0 ≤ i < N`. Since `r s = s r^m` and `m² ≡ 1 (mod N)`, the product is
//! `(ε₁, i)(ε₂, j) = (ε₁ ⊕ ε₂, i·m^ε₂ + j mod N)`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// Largest supported group order. Keeps `i·m` products well inside `u64`.
pub const MAX_GROUP_ORDER: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupParams {
    k: u32,
    p: u64,
}

impl GroupParams {
    pub fn new(k: u32, p: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParams(format!("k must be at least 2, got {k}")));
        }
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidParams(format!("p must be an odd prime, got {p}")));
        }
        let order = 1u64
            .checked_shl(k + 1)
            .and_then(|t| t.checked_mul(p))
            .filter(|&n| n <= MAX_GROUP_ORDER);
        if order.is_none() {
            return Err(Error::InvalidParams(format!(
                "group order 2^{}·{p} exceeds {MAX_GROUP_ORDER}",
                k + 1
            )));
        }
        let params = GroupParams { k, p };
        debug_assert_eq!(params.m() * params.m() % params.cyclic_order(), 1);
        Ok(params)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Order of `r`, `N = 2^k p`.
    pub fn cyclic_order(&self) -> u64 {
        (1u64 << self.k) * self.p
    }

    /// Group order `2^(k+1) p`.
    pub fn order(&self) -> u64 {
        2 * self.cyclic_order()
    }

    /// Conjugation multiplier `m = 2^(k-1) p - 1`, reduced mod `N`.
    pub fn m(&self) -> u64 {
        (self.cyclic_order() / 2 - 1) % self.cyclic_order()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(0, 0)
    }

    pub fn r(&self) -> GroupElement {
        GroupElement::new(0, 1)
    }

    pub fn s(&self) -> GroupElement {
        GroupElement::new(1, 0)
    }

    /// The central involution `u = r^(N/2)`.
    pub fn u(&self) -> GroupElement {
        GroupElement::new(0, self.cyclic_order() / 2)
    }

    pub fn contains(&self, a: GroupElement) -> bool {
        a.eps <= 1 && a.i < self.cyclic_order()
    }

    fn check(&self, a: GroupElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::ParamMismatch)
        }
    }

    pub fn multiply(&self, a: GroupElement, b: GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    #[inline]
    pub(crate) fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let n = self.cyclic_order();
        let twisted = if b.eps == 1 { a.i * self.m() % n } else { a.i };
        GroupElement::new(a.eps ^ b.eps, (twisted + b.i) % n)
    }

    pub fn inverse(&self, a: GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let n = self.cyclic_order();
        Ok(if a.eps == 0 {
            GroupElement::new(0, (n - a.i) % n)
        } else {
            // (s r^i)(s r^j) = r^(i m + j), so the inverse has j = -i m.
            GroupElement::new(1, (n - a.i * self.m() % n) % n)
        })
    }

    pub fn power(&self, a: GroupElement, t: u64) -> Result<GroupElement> {
        self.check(a)?;
        let mut acc = self.identity();
        let mut base = a;
        let mut t = t;
        while t > 0 {
            if t & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            t >>= 1;
        }
        Ok(acc)
    }

    pub fn order_of(&self, a: GroupElement) -> Result<u64> {
        Ok(self.cyclic_subgroup(a)?.len() as u64)
    }

    /// `⟨a⟩` listed as `e, a, a², …`.
    pub fn cyclic_subgroup(&self, a: GroupElement) -> Result<Vec<GroupElement>> {
        self.check(a)?;
        let e = self.identity();
        let mut out = alloc::vec![e];
        let mut x = a;
        while x != e {
            out.push(x);
            x = self.mul(x, a);
        }
        Ok(out)
    }

    /// All elements in the canonical vertex order: `e, r, …, r^(N-1)`, then
    /// `s r^(2t)` ascending, then `s r^(2j+1)` ascending.
    pub fn elements(&self) -> Vec<GroupElement> {
        let n = self.cyclic_order();
        let mut out = Vec::with_capacity(self.order() as usize);
        out.extend((0..n).map(|i| GroupElement::new(0, i)));
        out.extend((0..n).step_by(2).map(|i| GroupElement::new(1, i)));
        out.extend((1..n).step_by(2).map(|i| GroupElement::new(1, i)));
        out
    }

    /// Position of `a` in [`GroupParams::elements`].
    pub fn index_of(&self, a: GroupElement) -> Option<usize> {
        if !self.contains(a) {
            return None;
        }
        let n = self.cyclic_order() as usize;
        let i = a.i as usize;
        Some(match (a.eps, i % 2) {
            (0, _) => i,
            (_, 0) => n + i / 2,
            _ => n + n / 2 + i / 2,
        })
    }
}

/// `s^eps r^i` in normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub eps: u8,
    pub i: u64,
}

impl GroupElement {
    pub const fn new(eps: u8, i: u64) -> Self {
        GroupElement { eps, i }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s^{} r^{}", self.eps, self.i)
    }
}

impl FromStr for GroupElement {
    type Err = Error;

    /// Parses the `s^e r^i` form written by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Classification(format!("not an element label: {s:?}"));
        let mut parts = s.split_whitespace();
        let eps = parts.next().and_then(|t| t.strip_prefix("s^")).ok_or_else(bad)?;
        let i = parts.next().and_then(|t| t.strip_prefix("r^")).ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        let eps: u8 = eps.parse().map_err(|_| bad())?;
        let i: u64 = i.parse().map_err(|_| bad())?;
        if eps > 1 {
            return Err(bad());
        }
        Ok(GroupElement::new(eps, i))
    }
}

/// Deterministic trial division; inputs are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
