//! Squarefree monomial ideals, their primary decompositions and Alexander duals.

use std::fmt;

use crate::error::{Error, Result};
use crate::mask::{DegreeMask, MAX_VARS};

/// A squarefree monomial ideal of `k[x_1..x_n]` given by its minimal
/// generators, kept in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<DegreeMask>,
}

impl MonomialIdeal {
    /// Reduces `raw_gens` to a divisibility-minimal canonical generating set.
    pub fn minimalize(n: usize, raw_gens: &[DegreeMask]) -> Result<Self> {
        if n == 0 || n > MAX_VARS {
            return Err(Error::Input(format!(
                "number of variables must be in 1..={MAX_VARS}, got {n}"
            )));
        }
        for g in raw_gens {
            if g.n() != n {
                return Err(Error::Input(format!(
                    "generator {g:?} has {} entries, expected {n}",
                    g.n()
                )));
            }
        }
        Ok(MonomialIdeal {
            n,
            gens: minimal_elements(raw_gens),
        })
    }

    /// The face ideal `p_α = (x_i : α_i = 1)`.
    pub fn face_ideal(alpha: DegreeMask) -> Self {
        let gens = alpha.indices().map(|i| DegreeMask::unit(alpha.n(), i)).collect();
        MonomialIdeal { n: alpha.n(), gens }
    }

    /// Generators of `p_{α_1} ∩ ... ∩ p_{α_m}`: the minimal transversals of
    /// the `α_j`.
    pub fn intersect_face_ideals(n: usize, primes: &[DegreeMask]) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::Input("need at least one face ideal".into()));
        }
        if let Some(p) = primes.iter().find(|p| p.is_zero()) {
            return Err(Error::Input(format!("face ideal {p:?} is the zero ideal")));
        }
        let gens = minimal_transversals(n, primes);
        Self::minimalize(n, &gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[DegreeMask] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_zero())
    }

    /// Whether `x^m` lies in the ideal.
    pub fn contains(&self, m: DegreeMask) -> bool {
        self.gens.iter().any(|g| g.is_subset_of(m))
    }

    fn require_proper_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::Domain("the zero ideal has no minimal primes".into()))
        } else if self.is_unit() {
            Err(Error::Domain("the unit ideal has no minimal primes".into()))
        } else {
            Ok(())
        }
    }

    /// Masks `α` of the minimal primes `p_α ⊇ I`, canonical order.
    pub fn minimal_primes(&self) -> Result<Vec<DegreeMask>> {
        self.require_proper_nonzero()?;
        Ok(minimal_transversals(self.n, &self.gens))
    }

    /// The Alexander dual `I^∨`, generated by `x^α` for the minimal primes `p_α`.
    pub fn alexander_dual(&self) -> Result<Self> {
        let primes = self.minimal_primes()?;
        Self::minimalize(self.n, &primes)
    }

    /// Height of the ideal: the smallest minimal prime.
    pub fn height(&self) -> Result<usize> {
        Ok(self
            .minimal_primes()?
            .iter()
            .map(|p| p.weight())
            .min()
            .unwrap_or(0))
    }

    /// Krull dimension of `R/I`.
    pub fn dim_quotient(&self) -> Result<usize> {
        Ok(self.n - self.height()?)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.monomial()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// Inclusion-minimal elements of a family of masks, canonical order, no repeats.
pub(crate) fn minimal_elements(masks: &[DegreeMask]) -> Vec<DegreeMask> {
    let mut sorted: Vec<DegreeMask> = masks.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out: Vec<DegreeMask> = Vec::with_capacity(sorted.len());
    // Sorting by weight first means any subset of a mask is already in `out`.
    for m in sorted {
        if !out.iter().any(|o| o.is_subset_of(m)) {
            out.push(m);
        }
    }
    out
}

/// Inclusion-minimal masks meeting every set in `sets` (Berge's incremental
/// construction).
pub(crate) fn minimal_transversals(n: usize, sets: &[DegreeMask]) -> Vec<DegreeMask> {
    let mut current = vec![DegreeMask::zero(n)];
    for &s in sets {
        let mut next = Vec::with_capacity(current.len() * 2);
        for &t in &current {
            if t.meets(s) {
                next.push(t);
            } else {
                next.extend(s.indices().map(|i| t.with(i)));
            }
        }
        current = minimal_elements(&next);
    }
    current
}
