//! Hypercubes of local cohomology modules and the complexes assembled from
//! them.
//!
//! The piece of `H^r_I(R)` at a squarefree degree `α` is
//! `M_α = H̃^{r−2}(Δ^∨|_α)`, where `Δ^∨` is the Stanley–Reisner complex of the
//! Alexander dual ideal. The edge `u_{α,i}: M_α → M_{α+ε_i}` is the transpose
//! of the map on cohomology given by restricting cochains from `Δ^∨|_{α+ε_i}`
//! to `Δ^∨|_α`, which is the map on homology induced by the inclusion.

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::cohomology::{CochainComplex, CohomologyData};
use crate::complex::VectorSpaceComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::MonomialIdeal;
use crate::mask::DegreeMask;
use crate::matrix::Matrix;
use crate::simplicial::SimplicialComplex;

/// Vector spaces `M_δ` for `δ ≤ ambient` with commuting edge maps.
#[derive(Clone, Debug)]
pub struct Hypercube<F: Field> {
    field: F,
    r: usize,
    ambient: DegreeMask,
    dims: Vec<usize>,
    edges: HashMap<(u32, usize), Matrix<F>>,
}

/// Placement of blocks inside one position of an assembled complex.
struct Layout {
    index: HashMap<u32, (usize, usize)>,
    total: usize,
}

impl Layout {
    fn new(blocks: impl IntoIterator<Item = (DegreeMask, usize)>) -> Self {
        let mut index = HashMap::new();
        let mut total = 0;
        for (key, dim) in blocks {
            index.insert(key.bits(), (total, dim));
            total += dim;
        }
        Layout { index, total }
    }

    fn get(&self, key: DegreeMask) -> (usize, usize) {
        self.index[&key.bits()]
    }
}

fn signed<F: Field>(m: &Matrix<F>, sign: i64) -> Matrix<F> {
    if sign == 1 {
        m.clone()
    } else {
        m.scale(&m.field().from_i64(sign))
    }
}

impl<F: Field> Hypercube<F> {
    /// Builds a hypercube from explicit data; edges absent from `edges` are zero.
    pub fn from_parts(
        field: &F,
        r: usize,
        ambient: DegreeMask,
        vertex_dims: &HashMap<DegreeMask, usize>,
        edges: HashMap<(DegreeMask, usize), Matrix<F>>,
    ) -> Result<Self> {
        let n = ambient.n();
        let mut dims = vec![0; 1 << n];
        for (a, &d) in vertex_dims {
            if !a.is_subset_of(ambient) {
                return Err(Error::Input(format!("vertex {a:?} lies outside the cube")));
            }
            dims[a.bits() as usize] = d;
        }
        let mut stored = HashMap::new();
        for ((a, i), m) in edges {
            if !a.is_subset_of(ambient) || !ambient.contains(i) || a.contains(i) {
                return Err(Error::Input(format!("edge ({a:?}, {i}) lies outside the cube")));
            }
            let (src, dst) = (dims[a.bits() as usize], dims[a.with(i).bits() as usize]);
            if m.rows() != dst || m.cols() != src {
                return Err(Error::Input(format!("edge ({a:?}, {i}) has the wrong shape")));
            }
            if src > 0 && dst > 0 {
                stored.insert((a.bits(), i), m);
            }
        }
        let h = Hypercube {
            field: field.clone(),
            r,
            ambient,
            dims,
            edges: stored,
        };
        h.verify_commutativity()?;
        Ok(h)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.ambient.n()
    }

    /// Cohomological degree of the module this cube describes.
    pub fn r(&self) -> usize {
        self.r
    }

    /// The coordinate directions spanned by the cube.
    pub fn ambient(&self) -> DegreeMask {
        self.ambient
    }

    pub fn vertex_dim(&self, alpha: DegreeMask) -> usize {
        if alpha.is_subset_of(self.ambient) {
            self.dims[alpha.bits() as usize]
        } else {
            0
        }
    }

    /// Vertices in canonical order.
    pub fn vertices(&self) -> Vec<DegreeMask> {
        self.ambient.submasks()
    }

    /// Vertices with a nonzero space, canonical order.
    pub fn support(&self) -> Vec<DegreeMask> {
        self.vertices().into_iter().filter(|a| self.vertex_dim(*a) > 0).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `u_{α,i}: M_α → M_{α+ε_i}`.
    pub fn edge(&self, alpha: DegreeMask, i: usize) -> Matrix<F> {
        match self.edges.get(&(alpha.bits(), i)) {
            Some(m) => m.clone(),
            None => Matrix::zeros(
                &self.field,
                self.vertex_dim(alpha.with(i)),
                self.vertex_dim(alpha),
            ),
        }
    }

    /// Checks `u_{α+ε_i,j} u_{α,i} = u_{α+ε_j,i} u_{α,j}` on every square.
    pub fn verify_commutativity(&self) -> Result<()> {
        for alpha in self.vertices() {
            let free: Vec<usize> = self.ambient.minus(alpha).indices().collect();
            for (a, &i) in free.iter().enumerate() {
                for &j in &free[a + 1..] {
                    if self.vertex_dim(alpha) == 0 || self.vertex_dim(alpha.with(i).with(j)) == 0 {
                        continue;
                    }
                    let left = self.edge(alpha.with(i), j).mul(&self.edge(alpha, i));
                    let right = self.edge(alpha.with(j), i).mul(&self.edge(alpha, j));
                    if left != right {
                        return Err(Error::Contract(format!(
                            "square at {alpha:?} in directions {} and {} does not commute",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn level(&self, weight: usize) -> Vec<DegreeMask> {
        self.vertices().into_iter().filter(|a| a.weight() == weight).collect()
    }

    /// The complex with `⊕_{|δ| = m−p} M_δ` at position `p` (`m` the cube
    /// dimension) and signed edge maps; its homology gives the Bass numbers at
    /// the top face ideal.
    pub fn main_complex(&self) -> Result<VectorSpaceComplex<F>> {
        let m = self.ambient.weight();
        let layouts: Vec<Layout> = (0..=m)
            .map(|p| Layout::new(self.level(m - p).into_iter().map(|d| (d, self.vertex_dim(d)))))
            .collect();
        let maps = (0..m)
            .map(|p| {
                let (rows, cols) = (&layouts[p], &layouts[p + 1]);
                let mut mat = Matrix::zeros(&self.field, rows.total, cols.total);
                for delta in self.level(m - p - 1) {
                    let (c0, cd) = cols.get(delta);
                    if cd == 0 {
                        continue;
                    }
                    for i in self.ambient.minus(delta).indices() {
                        let (r0, rd) = rows.get(delta.with(i));
                        if rd > 0 {
                            mat.set_block(r0, c0, &signed(&self.edge(delta, i), delta.sign(i)));
                        }
                    }
                }
                mat
            })
            .collect();
        let dims = layouts.iter().map(|l| l.total).collect();
        VectorSpaceComplex::new(&self.field, dims, maps)
    }

    /// `M•_{α,β}`: position `p` holds `⊕_{γ ≤ α, |γ| = p} M_{β∖γ}`. The map from
    /// `γ'` to `γ' − ε_i` is `u_{β∖γ',i}` when `β_i = 1` and the identity
    /// otherwise, with sign `(−1)^{#{j < i : j ∈ α∖γ'}}`.
    pub fn restricted_complex(&self, alpha: DegreeMask, beta: DegreeMask) -> Result<VectorSpaceComplex<F>> {
        let a = alpha.weight();
        let mut levels: Vec<Vec<DegreeMask>> = vec![Vec::new(); a + 1];
        for g in alpha.submasks() {
            levels[g.weight()].push(g);
        }
        for level in levels.iter_mut() {
            level.sort_by_key(|g| (beta.minus(*g), *g));
        }
        let layouts: Vec<Layout> = levels
            .iter()
            .map(|l| Layout::new(l.iter().map(|g| (*g, self.vertex_dim(beta.minus(*g))))))
            .collect();
        let maps = (0..a)
            .map(|p| {
                let (rows, cols) = (&layouts[p], &layouts[p + 1]);
                let mut mat = Matrix::zeros(&self.field, rows.total, cols.total);
                for &g in &levels[p + 1] {
                    let (c0, cd) = cols.get(g);
                    if cd == 0 {
                        continue;
                    }
                    let source = beta.minus(g);
                    for i in g.indices() {
                        let (r0, rd) = rows.get(g.without(i));
                        if rd == 0 {
                            continue;
                        }
                        let sign = alpha.minus(g).sign(i);
                        let block = if beta.contains(i) {
                            self.edge(source, i)
                        } else {
                            Matrix::identity(&self.field, cd)
                        };
                        mat.set_block(r0, c0, &signed(&block, sign));
                    }
                }
                mat
            })
            .collect();
        let dims = layouts.iter().map(|l| l.total).collect();
        VectorSpaceComplex::new(&self.field, dims, maps)
    }

    /// The Matlis-dual complex: `⊕_{|δ| = p} M_δ` at position `p`, with the
    /// map `M_δ → M_{δ−ε_i}` equal to `sign(i, δ−ε_i) · u_{δ−ε_i,i}^T`.
    pub fn dual_complex(&self) -> Result<VectorSpaceComplex<F>> {
        let m = self.ambient.weight();
        let layouts: Vec<Layout> = (0..=m)
            .map(|p| Layout::new(self.level(p).into_iter().map(|d| (d, self.vertex_dim(d)))))
            .collect();
        let maps = (0..m)
            .map(|p| {
                let (rows, cols) = (&layouts[p], &layouts[p + 1]);
                let mut mat = Matrix::zeros(&self.field, rows.total, cols.total);
                for delta in self.level(p + 1) {
                    let (c0, cd) = cols.get(delta);
                    if cd == 0 {
                        continue;
                    }
                    for i in delta.indices() {
                        let lower = delta.without(i);
                        let (r0, rd) = rows.get(lower);
                        if rd > 0 {
                            let block = self.edge(lower, i).transpose();
                            mat.set_block(r0, c0, &signed(&block, lower.sign(i)));
                        }
                    }
                }
                mat
            })
            .collect();
        let dims = layouts.iter().map(|l| l.total).collect();
        VectorSpaceComplex::new(&self.field, dims, maps)
    }

    /// The sub-cube `{M_β}_{β ≤ α}` with inherited edges.
    pub fn face_restricted(&self, alpha: DegreeMask) -> Hypercube<F> {
        let alpha = alpha.intersection(self.ambient);
        let mut dims = vec![0; self.dims.len()];
        for b in alpha.submasks() {
            dims[b.bits() as usize] = self.vertex_dim(b);
        }
        let edges = self
            .edges
            .iter()
            .filter(|((b, i), _)| {
                let b = DegreeMask::raw(self.n(), *b);
                b.is_subset_of(alpha) && alpha.contains(*i)
            })
            .map(|(k, m)| (*k, m.clone()))
            .collect();
        Hypercube {
            field: self.field.clone(),
            r: self.r,
            ambient: alpha,
            dims,
            edges,
        }
    }

    /// The dual cube `M*_δ = M_{A−δ}` with `u*_{δ,i} = u_{A−δ−ε_i,i}^T`, where
    /// `A` is the ambient mask.
    pub fn dual(&self) -> Hypercube<F> {
        let a = self.ambient;
        let mut dims = vec![0; self.dims.len()];
        for d in a.submasks() {
            dims[d.bits() as usize] = self.vertex_dim(a.minus(d));
        }
        let edges = self
            .edges
            .iter()
            .map(|((b, i), m)| {
                // u_{b,i} becomes u*_{A−b−ε_i, i}.
                let b = DegreeMask::raw(self.n(), *b);
                ((a.minus(b).without(*i).bits(), *i), m.transpose())
            })
            .collect();
        Hypercube {
            field: self.field.clone(),
            r: self.r,
            ambient: a,
            dims,
            edges,
        }
    }
}

/// Largest `n` for which hypercubes are built; they have `2^n` vertices.
pub const MAX_CUBE_VARS: usize = 16;

/// Cochain data of every restriction `Δ^∨|_α` of the dual complex of an
/// ideal, shared by the hypercubes of all cohomological degrees.
pub struct HypercubeSource<F: Field> {
    ideal: MonomialIdeal,
    field: F,
    dual_complex: SimplicialComplex,
    cochains: OnceLock<Vec<CochainComplex<F>>>,
    cubes: Vec<OnceLock<Hypercube<F>>>,
}

impl<F: Field> HypercubeSource<F> {
    pub fn new(ideal: &MonomialIdeal, field: &F) -> Result<Self> {
        if ideal.is_zero() || ideal.is_unit() {
            return Err(Error::Domain(format!(
                "local cohomology needs a proper nonzero ideal, got {ideal}"
            )));
        }
        let n = ideal.n();
        let dual_complex = SimplicialComplex::stanley_reisner(ideal).alexander_dual();
        Ok(HypercubeSource {
            ideal: ideal.clone(),
            field: field.clone(),
            dual_complex,
            cochains: OnceLock::new(),
            cubes: (0..=n).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// `Δ^∨` on the vertex set `[n]`.
    pub fn dual_complex(&self) -> &SimplicialComplex {
        &self.dual_complex
    }

    /// The hypercube of `H^r_I(R)`, built on first use.
    pub fn hypercube(&self, r: usize) -> Result<&Hypercube<F>> {
        let n = self.ideal.n();
        if r > n {
            return Err(Error::Input(format!("degree r = {r} exceeds n = {n}")));
        }
        if n > MAX_CUBE_VARS {
            return Err(Error::Resource {
                what: "number of variables of a hypercube",
                value: n,
                limit: MAX_CUBE_VARS,
            });
        }
        Ok(self.cubes[r].get_or_init(|| self.build(r)))
    }

    fn cochains(&self) -> &[CochainComplex<F>] {
        self.cochains.get_or_init(|| {
            let mut all: Vec<(u32, CochainComplex<F>)> = DegreeMask::all(self.ideal.n())
                .into_par_iter()
                .map(|a| (a.bits(), CochainComplex::new(&self.dual_complex.restriction(a), &self.field)))
                .collect();
            all.sort_by_key(|(b, _)| *b);
            all.into_iter().map(|(_, c)| c).collect()
        })
    }

    fn build(&self, r: usize) -> Hypercube<F> {
        let n = self.ideal.n();
        let q = r as isize - 2;
        // Nothing lives in degree 0; the irrelevant restriction at the empty
        // set would otherwise contribute at r = 1.
        let cochains = self.cochains();
        let dims: Vec<usize> = cochains
            .par_iter()
            .enumerate()
            .map(|(b, c)| if b == 0 { 0 } else { c.cohomology_dim(q) })
            .collect();
        let data: Vec<Option<CohomologyData<F>>> = cochains
            .par_iter()
            .zip(dims.par_iter())
            .map(|(c, &d)| (d > 0).then(|| c.cohomology(q)))
            .collect();
        let pairs: Vec<(u32, usize)> = (0..1u32 << n)
            .flat_map(|b| (0..n).filter(move |&i| b >> i & 1 == 0).map(move |i| (b, i)))
            .filter(|&(b, i)| dims[b as usize] > 0 && dims[(b | 1 << i) as usize] > 0)
            .collect();
        let edges: HashMap<(u32, usize), Matrix<F>> = pairs
            .into_par_iter()
            .map(|(b, i)| {
                let small = data[b as usize].as_ref().expect("nonzero vertex");
                let big = data[(b | 1 << i) as usize].as_ref().expect("nonzero vertex");
                ((b, i), small.restricted_from(big).transpose())
            })
            .collect();
        Hypercube {
            field: self.field.clone(),
            r,
            ambient: DegreeMask::ones(n),
            dims,
            edges,
        }
    }
}

/// The hypercube of `H^r_I(R)`; commutativity is verified before returning.
pub fn build_hypercube<F: Field>(ideal: &MonomialIdeal, r: usize, field: &F) -> Result<Hypercube<F>> {
    let source = HypercubeSource::new(ideal, field)?;
    let cube = source.hypercube(r)?.clone();
    cube.verify_commutativity()?;
    Ok(cube)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn m(n: usize, vars: &[usize]) -> DegreeMask {
        DegreeMask::from_vars(n, vars).unwrap()
    }

    fn v(bits: &[u8]) -> DegreeMask {
        DegreeMask::from_vector(bits).unwrap()
    }

    fn a5() -> MonomialIdeal {
        let primes = [&[1, 3][..], &[1, 4], &[2, 4], &[2, 5], &[3, 5]];
        let primes: Vec<DegreeMask> = primes.iter().map(|p| m(5, p)).collect();
        MonomialIdeal::intersect_face_ideals(5, &primes).unwrap()
    }

    #[test]
    fn face_ideal_has_a_single_vertex() {
        let alpha = m(4, &[1, 3, 4]);
        let p = MonomialIdeal::face_ideal(alpha);
        for r in 0..=4 {
            let h = build_hypercube(&p, r, &Rationals).unwrap();
            if r == 3 {
                assert_eq!(h.support(), vec![alpha]);
                assert_eq!(h.vertex_dim(alpha), 1);
            } else {
                assert!(h.is_zero(), "r = {r}");
            }
        }
    }

    #[test]
    fn a5_vertices() {
        let i = a5();
        let h2 = build_hypercube(&i, 2, &Rationals).unwrap();
        let mut expected = vec![
            v(&[1, 0, 1, 0, 0]), v(&[1, 0, 0, 1, 0]), v(&[0, 1, 0, 1, 0]),
            v(&[0, 1, 0, 0, 1]), v(&[0, 0, 1, 0, 1]), v(&[1, 1, 0, 1, 0]),
            v(&[1, 0, 1, 1, 0]), v(&[1, 0, 1, 0, 1]), v(&[0, 1, 1, 0, 1]),
            v(&[0, 1, 0, 1, 1]),
        ];
        expected.sort();
        assert_eq!(h2.support(), expected);
        assert!(expected.iter().all(|a| h2.vertex_dim(*a) == 1));
        let h3 = build_hypercube(&i, 3, &Rationals).unwrap();
        assert_eq!(h3.support(), vec![DegreeMask::ones(5)]);
        assert!(build_hypercube(&i, 6, &Rationals).is_err());
    }

    #[test]
    fn a5_main_complex_has_a_rank_four_map() {
        let f2 = PrimeField::new(2).unwrap();
        let q = build_hypercube(&a5(), 2, &Rationals).unwrap().main_complex().unwrap();
        assert_eq!(q.dims(), &[0, 0, 5, 5, 0, 0]);
        assert_eq!(q.maps()[2].rank(), 4);
        assert_eq!(q.homology_dims(), vec![0, 0, 1, 1, 0, 0]);
        let c2 = build_hypercube(&a5(), 2, &f2).unwrap().main_complex().unwrap();
        assert_eq!(c2.maps()[2].rank(), 4);
    }

    #[test]
    fn restricted_and_dual_complexes_agree_with_main() {
        let h = build_hypercube(&a5(), 2, &Rationals).unwrap();
        let one = DegreeMask::ones(5);
        assert_eq!(h.restricted_complex(one, one).unwrap(), h.main_complex().unwrap());
        assert_eq!(h.dual_complex().unwrap(), h.main_complex().unwrap().transpose_reverse());
        let a = v(&[1, 1, 1, 0, 1]);
        assert_eq!(
            h.face_restricted(a).main_complex().unwrap(),
            h.restricted_complex(a, a).unwrap()
        );
        assert_eq!(h.face_restricted(one).main_complex().unwrap(), h.main_complex().unwrap());
        let dual = h.dual();
        dual.verify_commutativity().unwrap();
        assert_eq!(dual.dual().main_complex().unwrap(), h.main_complex().unwrap());
    }

    #[test]
    fn zero_edges_give_levelwise_homology() {
        let n = 3;
        let dims: HashMap<DegreeMask, usize> =
            [(m(n, &[1]), 2), (m(n, &[1, 2]), 1)].into_iter().collect();
        let h = Hypercube::from_parts(&Rationals, 2, DegreeMask::ones(n), &dims, HashMap::new()).unwrap();
        assert_eq!(h.dual_complex().unwrap().homology_dims(), vec![0, 2, 1, 0]);
    }

    #[test]
    fn degree_zero_piece_vanishes() {
        let i = MonomialIdeal::minimalize(3, &[m(3, &[1]), m(3, &[2, 3])]).unwrap();
        for r in 0..=3 {
            let h = build_hypercube(&i, r, &Rationals).unwrap();
            assert_eq!(h.vertex_dim(DegreeMask::zero(3)), 0);
        }
    }
}
