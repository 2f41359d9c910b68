//! Finite complexes of based vector spaces and their homology.
//!
//! Positions are homological: `maps[p]` goes from position `p + 1` to
//! position `p`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq)]
pub struct VectorSpaceComplex<F: Field> {
    field: F,
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

/// A chosen basis of `H_p`: independent cycles whose classes form a basis,
/// together with a basis of the boundaries used to reduce against.
#[derive(Clone, Debug)]
pub struct HomologyBasis<F: Field> {
    pub boundaries: Matrix<F>,
    pub representatives: Matrix<F>,
}

impl<F: Field> HomologyBasis<F> {
    pub fn dim(&self) -> usize {
        self.representatives.cols()
    }

    /// Coordinates of the classes of the given cycles (as columns) in the
    /// representative basis.
    pub fn coordinates(&self, cycles: &Matrix<F>) -> Result<Matrix<F>> {
        let basis = self.boundaries.hconcat(&self.representatives);
        let full = basis
            .solve_independent(cycles)
            .ok_or_else(|| Error::Contract("vector is not a cycle".into()))?;
        let skip = self.boundaries.cols();
        Ok(Matrix::from_fn(basis.field(), self.dim(), cycles.cols(), |i, j| {
            full.get(skip + i, j).clone()
        }))
    }
}

impl<F: Field> VectorSpaceComplex<F> {
    /// Builds a complex, checking shapes and `maps[p] · maps[p+1] = 0`.
    pub fn new(field: &F, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        let c = Self::new_unchecked(field, dims, maps)?;
        for p in 0..c.maps.len().saturating_sub(1) {
            if !c.maps[p].mul(&c.maps[p + 1]).is_zero() {
                return Err(Error::Contract(format!(
                    "differentials at positions {p} and {} do not compose to zero",
                    p + 1
                )));
            }
        }
        Ok(c)
    }

    /// Builds a complex checking only the shapes.
    pub fn new_unchecked(field: &F, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        if maps.len() + 1 != dims.len().max(1) {
            return Err(Error::Contract(format!(
                "{} positions need {} maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (p, m) in maps.iter().enumerate() {
            if m.rows() != dims[p] || m.cols() != dims[p + 1] {
                return Err(Error::Contract(format!(
                    "map {p} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[p],
                    dims[p + 1]
                )));
            }
        }
        Ok(VectorSpaceComplex {
            field: field.clone(),
            dims,
            maps,
        })
    }

    /// Complex with the given dimensions and zero differentials.
    pub fn zero_maps(field: &F, dims: Vec<usize>) -> Self {
        let maps = (0..dims.len().saturating_sub(1))
            .map(|p| Matrix::zeros(field, dims[p], dims[p + 1]))
            .collect();
        VectorSpaceComplex {
            field: field.clone(),
            dims,
            maps,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Appends zero positions until the complex has `len` positions.
    pub fn padded(&self, len: usize) -> Self {
        let mut dims = self.dims.clone();
        let mut maps = self.maps.clone();
        while dims.len() < len {
            if let Some(&last) = dims.last() {
                maps.push(Matrix::zeros(&self.field, last, 0));
            }
            dims.push(0);
        }
        VectorSpaceComplex {
            field: self.field.clone(),
            dims,
            maps,
        }
    }

    fn rank_of_map(&self, p: usize) -> usize {
        self.maps.get(p).map_or(0, |m| m.rank())
    }

    /// `dim H_p` for every position.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..self.maps.len()).map(|p| self.rank_of_map(p)).collect();
        (0..self.dims.len())
            .map(|p| {
                let incoming = ranks.get(p).copied().unwrap_or(0);
                let outgoing = if p == 0 { 0 } else { ranks[p - 1] };
                self.dims[p] - outgoing - incoming
            })
            .collect()
    }

    /// Deterministic homology basis at position `p`: cycles are a kernel
    /// basis, and elimination of `[boundaries | cycles]` in column order keeps
    /// the first cycles independent modulo boundaries.
    pub fn homology_basis(&self, p: usize) -> HomologyBasis<F> {
        let f = &self.field;
        let d = self.dims[p];
        let cycles = if p == 0 {
            Matrix::identity(f, d)
        } else {
            self.maps[p - 1].kernel_basis()
        };
        let bounds = match self.maps.get(p) {
            Some(m) => m.clone(),
            None => Matrix::zeros(f, d, 0),
        };
        let (_, pivots) = bounds.hconcat(&cycles).rref();
        let nb = bounds.cols();
        let bpiv: Vec<usize> = pivots.iter().copied().filter(|&c| c < nb).collect();
        let zpiv: Vec<usize> = pivots.iter().filter(|&&c| c >= nb).map(|c| c - nb).collect();
        let boundaries = Matrix::from_fn(f, d, bpiv.len(), |i, j| bounds.get(i, bpiv[j]).clone());
        let representatives =
            Matrix::from_fn(f, d, zpiv.len(), |i, j| cycles.get(i, zpiv[j]).clone());
        HomologyBasis {
            boundaries,
            representatives,
        }
    }

    /// Reverses positions and transposes every map: the dual complex.
    pub fn transpose_reverse(&self) -> Self {
        let m = self.maps.len();
        VectorSpaceComplex {
            field: self.field.clone(),
            dims: self.dims.iter().rev().copied().collect(),
            maps: (0..m).map(|p| self.maps[m - 1 - p].transpose()).collect(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }
}

pub(crate) fn alternating_sum(values: &[usize]) -> i64 {
    values
        .iter()
        .enumerate()
        .map(|(p, &v)| if p % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

/// Degreewise maps `components[p]: source_p → target_p`.
#[derive(Clone, Debug)]
pub struct ChainMap<F: Field> {
    pub components: Vec<Matrix<F>>,
}

impl<F: Field> ChainMap<F> {
    /// Checks shapes and `f_p ∘ d = d ∘ f_{p+1}`.
    pub fn verify(&self, source: &VectorSpaceComplex<F>, target: &VectorSpaceComplex<F>) -> Result<()> {
        if self.components.len() != source.len() || source.len() != target.len() {
            return Err(Error::Contract("chain map length mismatch".into()));
        }
        for (p, c) in self.components.iter().enumerate() {
            if c.rows() != target.dims[p] || c.cols() != source.dims[p] {
                return Err(Error::Contract(format!("chain map component {p} has the wrong shape")));
            }
        }
        for p in 0..source.maps.len() {
            let left = self.components[p].mul(&source.maps[p]);
            let right = target.maps[p].mul(&self.components[p + 1]);
            if left != right {
                return Err(Error::Contract(format!(
                    "chain map does not commute with differentials at position {p}"
                )));
            }
        }
        Ok(())
    }
}

/// Matrix of `H_p(f)` in the deterministic homology bases of source and target.
pub fn induced_map_on_homology<F: Field>(
    f: &ChainMap<F>,
    source: &VectorSpaceComplex<F>,
    target: &VectorSpaceComplex<F>,
    p: usize,
) -> Result<Matrix<F>> {
    f.verify(source, target)?;
    Ok(induced_map_unchecked(&f.components[p], &source.homology_basis(p), &target.homology_basis(p)))
}

/// Same as [`induced_map_on_homology`] with precomputed bases and no
/// commutation check.
pub(crate) fn induced_map_unchecked<F: Field>(
    component: &Matrix<F>,
    source: &HomologyBasis<F>,
    target: &HomologyBasis<F>,
) -> Matrix<F> {
    let field = component.field();
    if source.dim() == 0 || target.dim() == 0 {
        return Matrix::zeros(field, target.dim(), source.dim());
    }
    let images = component.mul(&source.representatives);
    target
        .coordinates(&images)
        .expect("a chain map sends cycles to cycles")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn small_complex_with_one_class() {
        let f = q();
        let d0 = Matrix::from_i64_rows(&f, &[vec![1, 1, 1]]);
        let d1 = Matrix::from_i64_rows(&f, &[vec![-1], vec![1], vec![0]]);
        let c = VectorSpaceComplex::new(&f, vec![1, 3, 1], vec![d0, d1]).unwrap();
        assert_eq!(c.homology_dims(), vec![0, 1, 0]);
        assert_eq!(c.homology_basis(1).dim(), 1);
        assert_eq!(c.transpose_reverse().homology_dims(), vec![0, 1, 0]);
    }

    #[test]
    fn zero_maps_and_identity() {
        let f = q();
        assert_eq!(VectorSpaceComplex::zero_maps(&f, vec![2, 0, 3]).homology_dims(), vec![2, 0, 3]);
        let c = VectorSpaceComplex::new(&f, vec![1, 1], vec![Matrix::identity(&f, 1)]).unwrap();
        assert_eq!(c.homology_dims(), vec![0, 0]);
    }

    #[test]
    fn rejects_noncomposable_maps() {
        let f = q();
        let a = Matrix::identity(&f, 1);
        let err = VectorSpaceComplex::new(&f, vec![1, 1, 1], vec![a.clone(), a]).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
        let bad_shape = VectorSpaceComplex::new(&f, vec![2, 1], vec![Matrix::identity(&f, 1)]);
        assert!(bad_shape.is_err());
    }

    #[test]
    fn induced_maps_of_identity_and_zero() {
        let f = PrimeField::new(3).unwrap();
        let c = VectorSpaceComplex::zero_maps(&f, vec![2, 1]);
        let id = ChainMap {
            components: vec![Matrix::identity(&f, 2), Matrix::identity(&f, 1)],
        };
        assert_eq!(induced_map_on_homology(&id, &c, &c, 0).unwrap(), Matrix::identity(&f, 2));
        let zero = ChainMap {
            components: vec![Matrix::zeros(&f, 2, 2), Matrix::zeros(&f, 1, 1)],
        };
        assert!(induced_map_on_homology(&zero, &c, &c, 1).unwrap().is_zero());
    }

    #[test]
    fn noncommuting_chain_map_is_rejected() {
        let f = q();
        let c = VectorSpaceComplex::new(&f, vec![1, 1], vec![Matrix::identity(&f, 1)]).unwrap();
        let z = VectorSpaceComplex::zero_maps(&f, vec![1, 1]);
        let g = ChainMap {
            components: vec![Matrix::identity(&f, 1), Matrix::zeros(&f, 1, 1)],
        };
        assert!(induced_map_on_homology(&g, &z, &c, 0).is_ok());
        assert!(induced_map_on_homology(&g, &c, &z, 0).is_err());
    }

    #[test]
    fn padding_keeps_homology() {
        let f = q();
        let c = VectorSpaceComplex::zero_maps(&f, vec![1, 2]).padded(4);
        assert_eq!(c.homology_dims(), vec![1, 2, 0, 0]);
    }
}
