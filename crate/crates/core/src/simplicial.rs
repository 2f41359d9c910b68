//! Simplicial complexes on subsets of `{x_1..x_n}`, stored by facets.
//!
//! The void complex (no faces) and the irrelevant complex (only `∅`) are
//! distinct: the first has no reduced cohomology at all, the second has a
//! single class in degree `-1`.

use crate::error::{Error, Result};
use crate::ideal::{minimal_elements, minimal_transversals, MonomialIdeal};
use crate::mask::DegreeMask;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimplicialComplex {
    vertices: DegreeMask,
    facets: Vec<DegreeMask>,
}

impl SimplicialComplex {
    /// The complex generated by `faces` on the vertex set `vertices`.
    pub fn from_faces(vertices: DegreeMask, faces: &[DegreeMask]) -> Result<Self> {
        if let Some(f) = faces.iter().find(|f| !f.is_subset_of(vertices) || f.n() != vertices.n()) {
            return Err(Error::Input(format!(
                "face {f:?} is not contained in the vertex set {vertices:?}"
            )));
        }
        Ok(Self::from_faces_unchecked(vertices, faces))
    }

    fn from_faces_unchecked(vertices: DegreeMask, faces: &[DegreeMask]) -> Self {
        SimplicialComplex {
            vertices,
            facets: maximal_elements(faces),
        }
    }

    pub fn void(vertices: DegreeMask) -> Self {
        SimplicialComplex {
            vertices,
            facets: Vec::new(),
        }
    }

    pub fn irrelevant(vertices: DegreeMask) -> Self {
        SimplicialComplex {
            vertices,
            facets: vec![DegreeMask::zero(vertices.n())],
        }
    }

    /// The full simplex on `vertices`.
    pub fn simplex(vertices: DegreeMask) -> Self {
        SimplicialComplex {
            vertices,
            facets: vec![vertices],
        }
    }

    pub fn vertices(&self) -> DegreeMask {
        self.vertices
    }

    pub fn facets(&self) -> &[DegreeMask] {
        &self.facets
    }

    pub fn n(&self) -> usize {
        self.vertices.n()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_irrelevant(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_zero()
    }

    pub fn contains(&self, face: DegreeMask) -> bool {
        self.facets.iter().any(|f| face.is_subset_of(*f))
    }

    /// Dimension of the largest face; `None` for the void complex.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.weight() as isize - 1).max()
    }

    /// All faces with `size` vertices, in lexicographic order of their sorted
    /// vertex tuples.
    pub fn faces_of_size(&self, size: usize) -> Vec<DegreeMask> {
        let mut out: Vec<DegreeMask> = self
            .facets
            .iter()
            .filter(|f| f.weight() >= size)
            .flat_map(|f| f.submasks().into_iter().filter(|s| s.weight() == size))
            .collect();
        out.sort_unstable_by_key(|m| same_size_lex_key(*m));
        out.dedup();
        out
    }

    /// `faces_of_size(s)` for `s = 0..=` the largest facet size, from a
    /// single pass over the facets.
    pub fn faces_by_size(&self) -> Vec<Vec<DegreeMask>> {
        let Some(top) = self.facets.iter().map(|f| f.weight()).max() else {
            return Vec::new();
        };
        let mut all: Vec<DegreeMask> = self.facets.iter().flat_map(|f| f.submasks()).collect();
        all.sort_unstable_by_key(|m| m.bits());
        all.dedup();
        let mut out = vec![Vec::new(); top + 1];
        for m in all {
            out[m.weight()].push(m);
        }
        for level in &mut out {
            level.sort_unstable_by_key(|m| same_size_lex_key(*m));
        }
        out
    }

    /// Every face, canonical mask order.
    pub fn faces(&self) -> Vec<DegreeMask> {
        let mut out: Vec<DegreeMask> = self.facets.iter().flat_map(|f| f.submasks()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets.iter().all(|f| other.contains(*f))
    }

    /// `Δ_α = {τ ∈ Δ : τ ⊆ α}` on the vertex set `α`.
    pub fn restriction(&self, alpha: DegreeMask) -> SimplicialComplex {
        let faces: Vec<DegreeMask> = self.facets.iter().map(|f| f.intersection(alpha)).collect();
        Self::from_faces_unchecked(alpha, &faces)
    }

    /// `link_α Δ = {τ : τ ∩ α = ∅, τ ∪ α ∈ Δ}` on `vertices ∖ α`; void when
    /// `α` is not a face.
    pub fn link(&self, alpha: DegreeMask) -> SimplicialComplex {
        let vertices = self.vertices.minus(alpha);
        let faces: Vec<DegreeMask> = self
            .facets
            .iter()
            .filter(|f| alpha.is_subset_of(**f))
            .map(|f| f.minus(alpha))
            .collect();
        Self::from_faces_unchecked(vertices, &faces)
    }

    /// A cone: some vertex lies in every facet. Cones are contractible.
    pub fn is_cone(&self) -> bool {
        let mut common = self.vertices;
        for f in &self.facets {
            common = common.intersection(*f);
        }
        !self.facets.is_empty() && !common.is_zero()
    }

    /// Minimal non-faces inside the vertex set.
    pub fn minimal_nonfaces(&self) -> Vec<DegreeMask> {
        let complements: Vec<DegreeMask> = self
            .facets
            .iter()
            .map(|f| self.vertices.minus(*f))
            .collect();
        minimal_transversals(self.n(), &complements)
            .into_iter()
            .filter(|t| t.is_subset_of(self.vertices))
            .collect()
    }

    /// `Γ^∨ = {σ ⊆ V : V ∖ σ ∉ Γ}` on the same vertex set `V`.
    pub fn alexander_dual(&self) -> SimplicialComplex {
        let faces: Vec<DegreeMask> = self
            .minimal_nonfaces()
            .into_iter()
            .map(|t| self.vertices.minus(t))
            .collect();
        Self::from_faces_unchecked(self.vertices, &faces)
    }

    /// The Stanley–Reisner complex `{σ : x^σ ∉ I}` on all `n` vertices.
    pub fn stanley_reisner(ideal: &MonomialIdeal) -> SimplicialComplex {
        let n = ideal.n();
        let all = DegreeMask::ones(n);
        if ideal.is_unit() {
            return Self::void(all);
        }
        if ideal.is_zero() {
            return Self::simplex(all);
        }
        // Facets are the complements of the minimal primes.
        let faces: Vec<DegreeMask> = minimal_transversals(n, ideal.generators())
            .into_iter()
            .map(|p| p.complement())
            .collect();
        Self::from_faces_unchecked(all, &faces)
    }

    /// The Stanley–Reisner ideal of the complex, in `n` variables: generated by
    /// the minimal non-faces and by the variables outside the vertex set.
    pub fn ideal_of(&self) -> MonomialIdeal {
        let n = self.n();
        let mut gens = self.minimal_nonfaces();
        gens.extend(self.vertices.complement().indices().map(|i| DegreeMask::unit(n, i)));
        MonomialIdeal::minimalize(n, &gens).expect("masks share the ambient width")
    }
}

/// Agrees with `lex_key` on masks of equal weight: the first vertex where two
/// such lists differ is the lowest bit of the symmetric difference.
fn same_size_lex_key(m: DegreeMask) -> std::cmp::Reverse<u32> {
    std::cmp::Reverse(m.bits().reverse_bits())
}

fn maximal_elements(masks: &[DegreeMask]) -> Vec<DegreeMask> {
    if masks.is_empty() {
        return Vec::new();
    }
    let n = masks[0].n();
    let full = DegreeMask::ones(n);
    let complemented: Vec<DegreeMask> = masks.iter().map(|m| full.minus(*m)).collect();
    let mut out: Vec<DegreeMask> = minimal_elements(&complemented)
        .into_iter()
        .map(|m| full.minus(m))
        .collect();
    out.sort();
    out
}
