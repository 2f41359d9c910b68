//! Reduced simplicial cochain complexes and the maps on cohomology induced
//! by restricting cochains to a subcomplex.
//!
//! Faces of each size are ordered lexicographically by their sorted vertex
//! lists. The coboundary is `(δφ)(τ) = Σ_k (−1)^k φ(τ ∖ v_k)` for
//! `τ = {v_0 < ... < v_q}`, and the empty face sits in degree `−1`.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::complex::{induced_map_unchecked, HomologyBasis, VectorSpaceComplex};
use crate::complex::ChainMap;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::mask::DegreeMask;
use crate::matrix::{sparse_rank, Matrix};
use crate::simplicial::SimplicialComplex;

#[derive(Clone, Debug)]
pub struct CochainComplex<F: Field> {
    complex: SimplicialComplex,
    field: F,
    /// `basis[s]` lists the faces with `s` vertices, i.e. degree `s − 1`.
    basis: Vec<Vec<DegreeMask>>,
    ranks: OnceLock<Vec<usize>>,
}

impl<F: Field> CochainComplex<F> {
    pub fn new(complex: &SimplicialComplex, field: &F) -> Self {
        let basis = complex.faces_by_size();
        CochainComplex {
            complex: complex.clone(),
            field: field.clone(),
            basis,
            ranks: OnceLock::new(),
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Faces spanning the cochains of degree `q`.
    pub fn faces(&self, q: isize) -> &[DegreeMask] {
        let s = q + 1;
        if s < 0 {
            return &[];
        }
        self.basis.get(s as usize).map_or(&[], |v| v.as_slice())
    }

    /// Highest degree with a nonzero cochain group; `None` when void.
    pub fn top_degree(&self) -> Option<isize> {
        if self.basis.is_empty() {
            None
        } else {
            Some(self.basis.len() as isize - 2)
        }
    }

    /// `δ^q: C^q → C^{q+1}` as a `|faces(q+1)| × |faces(q)|` matrix.
    pub fn coboundary(&self, q: isize) -> Matrix<F> {
        coboundary_matrix(&self.field, self.faces(q), self.faces(q + 1))
    }

    /// The cochain complex in homological positions with degree `top − p` at
    /// position `p`, for degrees `−1..=top`.
    pub fn as_complex(&self, top: isize) -> VectorSpaceComplex<F> {
        let degrees: Vec<isize> = (-1..=top).rev().collect();
        let dims = degrees.iter().map(|&q| self.faces(q).len()).collect();
        let maps = degrees[1..].iter().map(|&q| self.coboundary(q)).collect();
        VectorSpaceComplex::new_unchecked(&self.field, dims, maps)
            .expect("coboundary shapes match face counts")
    }

    /// Degree-`q` slice `C^{q+1} ← C^q ← C^{q−1}` at positions `0, 1, 2`.
    fn local_complex(&self, q: isize) -> VectorSpaceComplex<F> {
        let dims = vec![
            self.faces(q + 1).len(),
            self.faces(q).len(),
            self.faces(q - 1).len(),
        ];
        let maps = vec![self.coboundary(q), self.coboundary(q - 1)];
        VectorSpaceComplex::new_unchecked(&self.field, dims, maps)
            .expect("coboundary shapes match face counts")
    }

    /// Ranks of `δ^q` for `q = −1..=top`, computed once. Cones are contractible
    /// and report zero cohomology without elimination.
    fn ranks(&self) -> &[usize] {
        self.ranks.get_or_init(|| {
            let Some(top) = self.top_degree() else {
                return Vec::new();
            };
            if self.complex.is_cone() {
                // Acyclic: rank δ^q = |C^q| − rank δ^{q−1}.
                let mut out = Vec::new();
                let mut prev = 0;
                for q in -1..=top {
                    let r = self.faces(q).len() - prev;
                    out.push(r);
                    prev = r;
                }
                return out;
            }
            (-1..=top).map(|q| self.coboundary_rank(q)).collect()
        })
    }

    fn coboundary_rank(&self, q: isize) -> usize {
        let (lower, upper) = (self.faces(q), self.faces(q + 1));
        if lower.is_empty() || upper.is_empty() {
            return 0;
        }
        let index = face_index(lower);
        let f = &self.field;
        let rows = upper.iter().map(|tau| {
            let mut row: Vec<(usize, F::Elem)> = tau
                .indices()
                .enumerate()
                .map(|(k, v)| (index[&tau.without(v).bits()], f.from_i64(if k % 2 == 0 { 1 } else { -1 })))
                .collect();
            row.sort_by_key(|(c, _)| *c);
            row
        });
        sparse_rank(f, rows)
    }

    /// `dim H̃^q` from ranks alone.
    pub fn cohomology_dim(&self, q: isize) -> usize {
        if q < -1 || self.faces(q).is_empty() {
            return 0;
        }
        let ranks = self.ranks();
        let at = |k: isize| if k < -1 { 0 } else { ranks.get((k + 1) as usize).copied().unwrap_or(0) };
        self.faces(q).len() - at(q) - at(q - 1)
    }

    /// Deterministic basis of `H̃^q` with the faces indexing its coordinates.
    pub fn cohomology(&self, q: isize) -> CohomologyData<F> {
        let faces = self.faces(q).to_vec();
        let basis = if q < -1 || faces.is_empty() {
            HomologyBasis {
                boundaries: Matrix::zeros(&self.field, faces.len(), 0),
                representatives: Matrix::zeros(&self.field, faces.len(), 0),
            }
        } else {
            self.local_complex(q).homology_basis(1)
        };
        CohomologyData { faces, basis }
    }
}

/// A chosen basis of `H̃^q(Γ)` in terms of cochains on the listed faces.
#[derive(Clone, Debug)]
pub struct CohomologyData<F: Field> {
    pub faces: Vec<DegreeMask>,
    pub basis: HomologyBasis<F>,
}

impl<F: Field> CohomologyData<F> {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Matrix of `H̃^q(big) → H̃^q(self)` induced by restricting cochains of a
    /// complex containing this one.
    pub fn restricted_from(&self, big: &CohomologyData<F>) -> Matrix<F> {
        let field = self.basis.representatives.field();
        let restriction = restriction_matrix(field, &self.faces, &big.faces)
            .expect("restriction between nested complexes");
        induced_map_unchecked(&restriction, &big.basis, &self.basis)
    }
}

fn face_index(faces: &[DegreeMask]) -> HashMap<u32, usize> {
    faces.iter().enumerate().map(|(i, f)| (f.bits(), i)).collect()
}

fn coboundary_matrix<F: Field>(field: &F, lower: &[DegreeMask], upper: &[DegreeMask]) -> Matrix<F> {
    let mut m = Matrix::zeros(field, upper.len(), lower.len());
    if lower.is_empty() || upper.is_empty() {
        return m;
    }
    let index = face_index(lower);
    for (row, tau) in upper.iter().enumerate() {
        for (k, v) in tau.indices().enumerate() {
            let col = index[&tau.without(v).bits()];
            m.set(row, col, field.from_i64(if k % 2 == 0 { 1 } else { -1 }));
        }
    }
    m
}

/// Restriction of cochains on `big_faces` to `small_faces`; errors when a
/// small face is missing from the big list.
fn restriction_matrix<F: Field>(
    field: &F,
    small_faces: &[DegreeMask],
    big_faces: &[DegreeMask],
) -> Result<Matrix<F>> {
    let index = face_index(big_faces);
    let mut m = Matrix::zeros(field, small_faces.len(), big_faces.len());
    for (row, f) in small_faces.iter().enumerate() {
        let col = index
            .get(&f.bits())
            .ok_or_else(|| Error::Input(format!("face {f:?} is missing from the larger complex")))?;
        m.set(row, *col, field.one());
    }
    Ok(m)
}

/// `dim H̃^q(Γ; k)`. Degree `−2` is always zero and the void complex has no
/// cohomology.
pub fn reduced_cohomology_dim<F: Field>(complex: &SimplicialComplex, q: isize, field: &F) -> Result<usize> {
    if q < -2 {
        return Err(Error::Input(format!("cohomological degree {q} is below -2")));
    }
    if q == -2 {
        return Ok(0);
    }
    Ok(CochainComplex::new(complex, field).local_complex(q).homology_dims()[1])
}

/// `dim H̃_q(Γ; k)` from the simplicial chain complex with boundary
/// `∂τ = Σ_k (−1)^k (τ ∖ v_k)`.
pub fn reduced_homology_dim<F: Field>(complex: &SimplicialComplex, q: isize, field: &F) -> usize {
    if q < -1 || complex.is_void() {
        return 0;
    }
    let faces = |deg: isize| -> Vec<DegreeMask> {
        if deg < -1 {
            Vec::new()
        } else {
            complex.faces_of_size((deg + 1) as usize)
        }
    };
    let boundary = |deg: isize| -> Matrix<F> {
        let (src, dst) = (faces(deg), faces(deg - 1));
        let index = face_index(&dst);
        let mut m = Matrix::zeros(field, dst.len(), src.len());
        if dst.is_empty() {
            return m;
        }
        for (col, tau) in src.iter().enumerate() {
            for (k, v) in tau.indices().enumerate() {
                let row = index[&tau.without(v).bits()];
                m.set(row, col, field.from_i64(if k % 2 == 0 { 1 } else { -1 }));
            }
        }
        m
    };
    let dim = faces(q).len();
    dim - boundary(q).rank() - boundary(q + 1).rank()
}

/// Restriction of cochains from `big` to `small` in every degree, as a chain
/// map between the cochain complexes placed on a common set of positions.
pub fn restriction_cochain_map<F: Field>(
    small: &SimplicialComplex,
    big: &SimplicialComplex,
    field: &F,
) -> Result<(ChainMap<F>, VectorSpaceComplex<F>, VectorSpaceComplex<F>)> {
    if !small.is_subcomplex_of(big) {
        return Err(Error::Input("the first complex is not a subcomplex of the second".into()));
    }
    let cs = CochainComplex::new(small, field);
    let cb = CochainComplex::new(big, field);
    let top = cb.top_degree().unwrap_or(-1);
    let components = (-1..=top)
        .rev()
        .map(|q| restriction_matrix(field, cs.faces(q), cb.faces(q)))
        .collect::<Result<Vec<_>>>()?;
    let map = ChainMap { components };
    let (source, target) = (cb.as_complex(top), cs.as_complex(top));
    map.verify(&source, &target)?;
    Ok((map, source, target))
}

/// Matrix of `H̃^q(big) → H̃^q(small)` induced by restriction of cochains.
pub fn induced_cohomology_map<F: Field>(
    small: &SimplicialComplex,
    big: &SimplicialComplex,
    q: isize,
    field: &F,
) -> Result<Matrix<F>> {
    if !small.is_subcomplex_of(big) {
        return Err(Error::Input("the first complex is not a subcomplex of the second".into()));
    }
    let cs = CochainComplex::new(small, field).cohomology(q);
    let cb = CochainComplex::new(big, field).cohomology(q);
    Ok(cs.restricted_from(&cb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::induced_map_on_homology;
    use crate::field::{PrimeField, Rationals};

    fn m(n: usize, vars: &[usize]) -> DegreeMask {
        DegreeMask::from_vars(n, vars).unwrap()
    }

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        let faces: Vec<DegreeMask> = facets.iter().map(|f| m(n, f)).collect();
        SimplicialComplex::from_faces(DegreeMask::ones(n), &faces).unwrap()
    }

    fn four_cycle() -> SimplicialComplex {
        cx(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]])
    }

    #[test]
    fn conventions() {
        let q = Rationals;
        let two_points = cx(2, &[&[1], &[2]]);
        assert_eq!(reduced_cohomology_dim(&two_points, 0, &q).unwrap(), 1);
        let hollow = cx(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(reduced_cohomology_dim(&hollow, 1, &q).unwrap(), 1);
        assert_eq!(reduced_cohomology_dim(&hollow, 0, &q).unwrap(), 0);
        let irr = SimplicialComplex::irrelevant(DegreeMask::ones(3));
        assert_eq!(reduced_cohomology_dim(&irr, -1, &q).unwrap(), 1);
        assert_eq!(reduced_cohomology_dim(&irr, 0, &q).unwrap(), 0);
        assert_eq!(reduced_cohomology_dim(&irr, -2, &q).unwrap(), 0);
        let void = SimplicialComplex::void(DegreeMask::ones(3));
        for deg in -2..3 {
            assert_eq!(reduced_cohomology_dim(&void, deg, &q).unwrap(), 0);
        }
        assert!(reduced_cohomology_dim(&void, -3, &q).is_err());
    }

    /// The six-vertex projective plane: `H̃^1` over `F_2` only.
    #[test]
    fn projective_plane_depends_on_characteristic() {
        let rp2 = cx(
            6,
            &[
                &[1, 2, 3], &[1, 2, 4], &[1, 3, 5], &[2, 4, 5], &[3, 4, 5],
                &[2, 3, 6], &[1, 4, 6], &[3, 4, 6], &[1, 5, 6], &[2, 5, 6],
            ],
        );
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(reduced_cohomology_dim(&rp2, 1, &Rationals).unwrap(), 0);
        assert_eq!(reduced_cohomology_dim(&rp2, 1, &f2).unwrap(), 1);
        assert_eq!(reduced_cohomology_dim(&rp2, 2, &f2).unwrap(), 1);
        assert_eq!(reduced_cohomology_dim(&rp2, 2, &Rationals).unwrap(), 0);
    }

    #[test]
    fn cochain_complex_squares_to_zero() {
        let c = CochainComplex::new(&four_cycle(), &Rationals);
        let top = c.top_degree().unwrap();
        assert!(VectorSpaceComplex::new(&Rationals, c.as_complex(top).dims().to_vec(), c.as_complex(top).maps().to_vec()).is_ok());
        assert_eq!(c.as_complex(top).homology_dims(), vec![1, 0, 0]);
    }

    #[test]
    fn restriction_maps() {
        let q = Rationals;
        let c = four_cycle();
        let (map, src, dst) = restriction_cochain_map(&c, &c, &q).unwrap();
        for (p, comp) in map.components.iter().enumerate() {
            assert_eq!(*comp, Matrix::identity(&q, src.dims()[p]));
        }
        assert_eq!(induced_map_on_homology(&map, &src, &dst, 0).unwrap(), Matrix::identity(&q, 1));

        let void = SimplicialComplex::void(DegreeMask::ones(4));
        let (zero, _, _) = restriction_cochain_map(&void, &c, &q).unwrap();
        assert!(zero.components.iter().all(|c| c.rows() == 0));

        let edge = cx(4, &[&[1, 2]]);
        let (r, _, _) = restriction_cochain_map(&edge, &c, &q).unwrap();
        assert_eq!((r.components[0].rows(), r.components[0].cols()), (1, 4));
        assert_eq!((r.components[1].rows(), r.components[1].cols()), (2, 4));
        assert!(restriction_cochain_map(&c, &edge, &q).is_err());
    }

    #[test]
    fn induced_maps() {
        let q = Rationals;
        let c = four_cycle();
        assert_eq!(induced_cohomology_map(&c, &c, 1, &q).unwrap(), Matrix::identity(&q, 1));
        let point = cx(4, &[&[1]]);
        let m0 = induced_cohomology_map(&point, &cx(4, &[&[1, 2]]), 0, &q).unwrap();
        assert_eq!((m0.rows(), m0.cols()), (0, 0));
        // The circle's class dies on a path.
        let path = cx(4, &[&[1, 2], &[2, 3], &[3, 4]]);
        assert!(induced_cohomology_map(&path, &c, 1, &q).unwrap().cols() == 1);
        // Two points inside the cycle: H̃^0 has a class on the points only.
        let pts = cx(4, &[&[1], &[3]]);
        let m = induced_cohomology_map(&pts, &c, 0, &q).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 0));
    }

    #[test]
    fn homology_matches_cohomology() {
        let f2 = PrimeField::new(2).unwrap();
        for c in [four_cycle(), cx(3, &[&[1, 2], &[1, 3], &[2, 3]]), cx(4, &[&[1], &[2, 3, 4]])] {
            for deg in -1..3 {
                assert_eq!(
                    reduced_homology_dim(&c, deg, &f2),
                    reduced_cohomology_dim(&c, deg, &f2).unwrap()
                );
            }
        }
    }
}
