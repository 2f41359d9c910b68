//! Squarefree degrees `α ∈ {0,1}^n` packed into machine words.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of variables. Everything that walks the whole
/// cube `{0,1}^n` is exponential in `n`.
pub const MAX_VARS: usize = 24;

/// A vector `α ∈ {0,1}^n`, bit `i` standing for variable `x_{i+1}`.
///
/// Masks order by popcount first and numeric value second, which is the
/// canonical order used for generators, faces and hypercube vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct DegreeMask {
    bits: u32,
    n: u8,
}

impl DegreeMask {
    pub fn new(n: usize, bits: u32) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::Resource {
                what: "number of variables",
                value: n,
                limit: MAX_VARS,
            });
        }
        if bits & !Self::full_bits(n) != 0 {
            return Err(Error::Input(format!(
                "mask {bits:#b} does not fit in {n} variables"
            )));
        }
        Ok(DegreeMask { bits, n: n as u8 })
    }

    /// Unchecked constructor for internal use where `bits` is known to fit.
    pub(crate) fn raw(n: usize, bits: u32) -> Self {
        debug_assert!(n <= MAX_VARS && bits & !Self::full_bits(n) == 0);
        DegreeMask { bits, n: n as u8 }
    }

    fn full_bits(n: usize) -> u32 {
        if n >= 32 {
            u32::MAX
        } else {
            (1u32 << n) - 1
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::raw(n, 0)
    }

    /// The all-ones vector `1`.
    pub fn ones(n: usize) -> Self {
        Self::raw(n, Self::full_bits(n))
    }

    /// The unit vector `ε_i` (0-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        assert!(i < n, "variable index {i} out of range for n = {n}");
        Self::raw(n, 1 << i)
    }

    /// Builds a mask from 1-based variable indices.
    pub fn from_vars(n: usize, vars: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &v in vars {
            if v == 0 || v > n {
                return Err(Error::Input(format!(
                    "variable x{v} out of range 1..={n}"
                )));
            }
            bits |= 1 << (v - 1);
        }
        Self::new(n, bits)
    }

    /// Builds a mask from a 0/1 vector.
    pub fn from_vector(v: &[u8]) -> Result<Self> {
        let mut bits = 0u32;
        for (i, &b) in v.iter().enumerate() {
            match b {
                0 => {}
                1 => bits |= 1 << i,
                _ => return Err(Error::Input(format!("entry {b} is not 0 or 1"))),
            }
        }
        Self::new(v.len(), bits)
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    /// `|α|`.
    pub fn weight(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    /// `self ≤ other` componentwise.
    pub fn is_subset_of(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn union(self, other: Self) -> Self {
        Self::raw(self.n(), self.bits | other.bits)
    }

    pub fn intersection(self, other: Self) -> Self {
        Self::raw(self.n(), self.bits & other.bits)
    }

    /// `self ∖ other`: keeps the entries of `self` where `other` vanishes.
    pub fn minus(self, other: Self) -> Self {
        Self::raw(self.n(), self.bits & !other.bits)
    }

    /// `1 − α`.
    pub fn complement(self) -> Self {
        Self::raw(self.n(), !self.bits & Self::full_bits(self.n()))
    }

    pub fn with(self, i: usize) -> Self {
        Self::raw(self.n(), self.bits | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Self::raw(self.n(), self.bits & !(1 << i))
    }

    pub fn meets(self, other: Self) -> bool {
        self.bits & other.bits != 0
    }

    /// 0-based indices of the set entries, ascending.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..32).filter(move |&i| bits >> i & 1 == 1)
    }

    /// Number of set entries strictly before position `i`.
    pub fn count_below(self, i: usize) -> usize {
        (self.bits & ((1u32 << i) - 1)).count_ones() as usize
    }

    /// `sign(i, α) = (−1)^{r−1}` where `α_i` is the `r`-th nonzero entry;
    /// equivalently the parity of the entries of `α` below `i`.
    pub fn sign(self, i: usize) -> i64 {
        if self.count_below(i) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// The 0/1 vector, `α_1` first.
    pub fn to_vector(self) -> Vec<u8> {
        (0..self.n()).map(|i| (self.bits >> i & 1) as u8).collect()
    }

    /// All submasks of `self` (including `0` and `self`), canonical order.
    pub fn submasks(self) -> Vec<DegreeMask> {
        let mut out = Vec::with_capacity(1 << self.weight());
        let mut sub = self.bits;
        loop {
            out.push(Self::raw(self.n(), sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & self.bits;
        }
        out.sort();
        out
    }

    /// Every mask of `{0,1}^n` in canonical order.
    pub fn all(n: usize) -> Vec<DegreeMask> {
        Self::ones(n).submasks()
    }

    /// Renders the mask as a monomial, e.g. `x1*x3`; the empty mask is `1`.
    pub fn monomial(self) -> String {
        if self.is_zero() {
            return "1".to_string();
        }
        self.indices()
            .map(|i| format!("x{}", i + 1))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Renders the mask as a 0/1 tuple, e.g. `(1,0,1,0)`.
    pub fn tuple(self) -> String {
        let parts: Vec<String> = self.to_vector().iter().map(|b| b.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

impl Ord for DegreeMask {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.weight(), self.bits, self.n).cmp(&(other.weight(), other.bits, other.n))
    }
}

impl PartialOrd for DegreeMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for DegreeMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tuple())
    }
}

impl fmt::Display for DegreeMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.monomial())
    }
}
