//! Minimal `Z^n`-graded free resolutions of squarefree monomial ideals by
//! minimizing the Taylor complex, and the linear strands of the result.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::VectorSpaceComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::MonomialIdeal;
use crate::mask::DegreeMask;
use crate::matrix::Matrix;

/// Largest number of generators accepted by [`taylor_complex`].
pub const MAX_TAYLOR_GENERATORS: usize = 20;

/// Column- and row-indexed sparse matrix.
#[derive(Clone, Debug)]
struct Sparse<E> {
    by_col: Vec<BTreeMap<usize, E>>,
    by_row: Vec<BTreeMap<usize, E>>,
}

impl<E: Clone> Sparse<E> {
    fn new(rows: usize, cols: usize) -> Self {
        Sparse {
            by_col: vec![BTreeMap::new(); cols],
            by_row: vec![BTreeMap::new(); rows],
        }
    }

    fn get(&self, r: usize, c: usize) -> Option<&E> {
        self.by_col[c].get(&r)
    }

    fn insert(&mut self, r: usize, c: usize, v: E) {
        self.by_col[c].insert(r, v.clone());
        self.by_row[r].insert(c, v);
    }

    fn remove(&mut self, r: usize, c: usize) {
        self.by_col[c].remove(&r);
        self.by_row[r].remove(&c);
    }
}

/// Which unit entry minimization cancels next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sweep {
    /// Positions in increasing order, least `(row, col)` first.
    Forward,
    /// Positions in decreasing order, greatest `(row, col)` first.
    Reverse,
}

/// A complex of free modules whose basis elements carry squarefree degrees.
/// The entry `(row, col)` of a differential is a scalar times the monomial
/// `x^{deg(col) − deg(row)}`.
#[derive(Clone, Debug)]
pub struct GradedFreeComplex<F: Field> {
    field: F,
    degrees: Vec<Vec<DegreeMask>>,
    /// `diffs[j]` maps position `j + 1` to position `j`.
    diffs: Vec<Sparse<F::Elem>>,
}

impl<F: Field> GradedFreeComplex<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    /// Number of positions.
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Degrees of the basis of position `j`; empty past the end.
    pub fn degrees(&self, j: usize) -> &[DegreeMask] {
        self.degrees.get(j).map_or(&[], |d| d.as_slice())
    }

    pub fn rank(&self, j: usize) -> usize {
        self.degrees(j).len()
    }

    /// Scalar matrix of the differential from position `j + 1` to `j`.
    pub fn differential(&self, j: usize) -> Matrix<F> {
        let (rows, cols) = (self.rank(j), self.rank(j + 1));
        let mut m = Matrix::zeros(&self.field, rows, cols);
        if let Some(d) = self.diffs.get(j) {
            for (c, col) in d.by_col.iter().enumerate() {
                for (&r, v) in col {
                    m.set(r, c, v.clone());
                }
            }
        }
        m
    }

    /// Checks divisibility of every entry and `d ∘ d = 0`, where the product
    /// of two entries carries the monomial `x^{deg(c) − deg(r)}` so scalars
    /// may be compared directly.
    pub fn verify(&self) -> Result<()> {
        let f = &self.field;
        for (j, d) in self.diffs.iter().enumerate() {
            for (c, col) in d.by_col.iter().enumerate() {
                for &r in col.keys() {
                    if !self.degrees[j][r].is_subset_of(self.degrees[j + 1][c]) {
                        return Err(Error::Contract(format!(
                            "entry ({r}, {c}) of differential {j} is not homogeneous"
                        )));
                    }
                }
            }
        }
        for j in 0..self.diffs.len().saturating_sub(1) {
            let (lower, upper) = (&self.diffs[j], &self.diffs[j + 1]);
            for col in &upper.by_col {
                let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
                for (&mid, v) in col {
                    for (&r, w) in &lower.by_col[mid] {
                        let e = acc.entry(r).or_insert_with(|| f.zero());
                        *e = f.add(e, &f.mul(w, v));
                    }
                }
                if acc.values().any(|x| !f.is_zero(x)) {
                    return Err(Error::Contract(format!(
                        "differentials {j} and {} do not compose to zero",
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// No nonzero entry joins two basis elements of equal degree.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().enumerate().all(|(j, d)| {
            d.by_col.iter().enumerate().all(|(c, col)| {
                col.keys().all(|&r| self.degrees[j][r] != self.degrees[j + 1][c])
            })
        })
    }
}

/// The Taylor resolution of `J`: position `j` has a basis element for every
/// `(j+1)`-subset `S` of the generators, of degree `lcm(S)`, and
/// `d(e_S) = Σ_k (−1)^k e_{S ∖ s_k}`.
pub fn taylor_complex<F: Field>(ideal: &MonomialIdeal, field: &F) -> Result<GradedFreeComplex<F>> {
    let gens = ideal.generators();
    let q = gens.len();
    if q > MAX_TAYLOR_GENERATORS {
        return Err(Error::Resource {
            what: "minimal generators for the Taylor complex",
            value: q,
            limit: MAX_TAYLOR_GENERATORS,
        });
    }
    let n = ideal.n();
    let mut subsets: Vec<Vec<u32>> = vec![Vec::new(); q];
    for s in 1u32..(1u32 << q) {
        subsets[s.count_ones() as usize - 1].push(s);
    }
    let lcm = |s: u32| -> DegreeMask {
        (0..q)
            .filter(|k| s >> k & 1 == 1)
            .fold(DegreeMask::zero(n), |acc, k| acc.union(gens[k]))
    };
    let degrees: Vec<Vec<DegreeMask>> = subsets
        .iter()
        .map(|level| level.iter().map(|&s| lcm(s)).collect())
        .collect();
    let mut diffs = Vec::with_capacity(q.saturating_sub(1));
    for j in 0..q.saturating_sub(1) {
        let index: BTreeMap<u32, usize> = subsets[j].iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut d = Sparse::new(subsets[j].len(), subsets[j + 1].len());
        for (c, &s) in subsets[j + 1].iter().enumerate() {
            for (k, bit) in (0..q).filter(|b| s >> b & 1 == 1).enumerate() {
                let r = index[&(s & !(1 << bit))];
                d.insert(r, c, field.from_i64(if k % 2 == 0 { 1 } else { -1 }));
            }
        }
        diffs.push(d);
    }
    Ok(GradedFreeComplex {
        field: field.clone(),
        degrees,
        diffs,
    })
}

struct Minimizer<F: Field> {
    field: F,
    degrees: Vec<Vec<DegreeMask>>,
    alive: Vec<Vec<bool>>,
    diffs: Vec<Sparse<F::Elem>>,
    units: Vec<BTreeSet<(usize, usize)>>,
}

impl<F: Field> Minimizer<F> {
    fn new(c: &GradedFreeComplex<F>) -> Self {
        let units = c
            .diffs
            .iter()
            .enumerate()
            .map(|(j, d)| {
                let mut set = BTreeSet::new();
                for (col, entries) in d.by_col.iter().enumerate() {
                    for &row in entries.keys() {
                        if c.degrees[j][row] == c.degrees[j + 1][col] {
                            set.insert((row, col));
                        }
                    }
                }
                set
            })
            .collect();
        Minimizer {
            field: c.field.clone(),
            degrees: c.degrees.clone(),
            alive: c.degrees.iter().map(|d| vec![true; d.len()]).collect(),
            diffs: c.diffs.clone(),
            units,
        }
    }

    fn set(&mut self, j: usize, r: usize, c: usize, v: F::Elem) {
        let unit = self.degrees[j][r] == self.degrees[j + 1][c];
        if self.field.is_zero(&v) {
            self.diffs[j].remove(r, c);
            if unit {
                self.units[j].remove(&(r, c));
            }
        } else {
            self.diffs[j].insert(r, c, v);
            if unit {
                self.units[j].insert((r, c));
            }
        }
    }

    fn clear_row(&mut self, j: usize, r: usize) {
        let cols: Vec<usize> = self.diffs[j].by_row[r].keys().copied().collect();
        for c in cols {
            let zero = self.field.zero();
            self.set(j, r, c, zero);
        }
    }

    fn clear_col(&mut self, j: usize, c: usize) {
        let rows: Vec<usize> = self.diffs[j].by_col[c].keys().copied().collect();
        for r in rows {
            let zero = self.field.zero();
            self.set(j, r, c, zero);
        }
    }

    /// Cancels the unit entry `(r, c)` of `diffs[j]`: basis element `c` of
    /// position `j + 1` against basis element `r` of position `j`.
    fn cancel(&mut self, j: usize, r: usize, c: usize) {
        let f = self.field.clone();
        let a = self.diffs[j].get(r, c).expect("unit entry present").clone();
        let a_inv = f.inv(&a);
        let col: Vec<(usize, F::Elem)> = self.diffs[j].by_col[c]
            .iter()
            .filter(|(&x, _)| x != r)
            .map(|(&x, v)| (x, v.clone()))
            .collect();
        let row: Vec<(usize, F::Elem)> = self.diffs[j].by_row[r]
            .iter()
            .filter(|(&y, _)| y != c)
            .map(|(&y, v)| (y, f.mul(v, &a_inv)))
            .collect();
        for (x, v) in &col {
            for (y, w) in &row {
                let old = self.diffs[j].get(*x, *y).cloned().unwrap_or_else(|| f.zero());
                let new = f.sub(&old, &f.mul(v, w));
                self.set(j, *x, *y, new);
            }
        }
        self.clear_col(j, c);
        self.clear_row(j, r);
        if j + 1 < self.diffs.len() {
            self.clear_row(j + 1, c);
        }
        if j >= 1 {
            self.clear_col(j - 1, r);
        }
        self.alive[j][r] = false;
        self.alive[j + 1][c] = false;
    }

    fn run(&mut self, sweep: Sweep) {
        let positions: Vec<usize> = match sweep {
            Sweep::Forward => (0..self.diffs.len()).collect(),
            Sweep::Reverse => (0..self.diffs.len()).rev().collect(),
        };
        for j in positions {
            loop {
                let next = match sweep {
                    Sweep::Forward => self.units[j].first().copied(),
                    Sweep::Reverse => self.units[j].last().copied(),
                };
                let Some((r, c)) = next else { break };
                self.cancel(j, r, c);
            }
        }
    }

    /// Surviving basis sorted by degree, then by original position.
    fn finish(self) -> GradedFreeComplex<F> {
        let orders: Vec<Vec<usize>> = self
            .degrees
            .iter()
            .zip(&self.alive)
            .map(|(degs, alive)| {
                let mut keep: Vec<usize> = (0..degs.len()).filter(|&i| alive[i]).collect();
                keep.sort_by_key(|&i| (degs[i], i));
                keep
            })
            .collect();
        let mut len = orders.len();
        while len > 0 && orders[len - 1].is_empty() {
            len -= 1;
        }
        let new_index: Vec<BTreeMap<usize, usize>> = orders
            .iter()
            .map(|o| o.iter().enumerate().map(|(new, &old)| (old, new)).collect())
            .collect();
        let degrees: Vec<Vec<DegreeMask>> = (0..len)
            .map(|j| orders[j].iter().map(|&i| self.degrees[j][i]).collect())
            .collect();
        let diffs = (0..len.saturating_sub(1))
            .map(|j| {
                let mut d = Sparse::new(orders[j].len(), orders[j + 1].len());
                for (new_c, &old_c) in orders[j + 1].iter().enumerate() {
                    for (old_r, v) in &self.diffs[j].by_col[old_c] {
                        d.insert(new_index[j][old_r], new_c, v.clone());
                    }
                }
                d
            })
            .collect();
        GradedFreeComplex {
            field: self.field,
            degrees,
            diffs,
        }
    }
}

/// Cancels unit entries until none remain, using the forward sweep.
pub fn minimize<F: Field>(complex: &GradedFreeComplex<F>) -> GradedFreeComplex<F> {
    minimize_with(complex, Sweep::Forward)
}

pub fn minimize_with<F: Field>(complex: &GradedFreeComplex<F>, sweep: Sweep) -> GradedFreeComplex<F> {
    let mut m = Minimizer::new(complex);
    m.run(sweep);
    m.finish()
}

/// The minimal free resolution of `J`.
pub fn minimal_resolution<F: Field>(ideal: &MonomialIdeal, field: &F) -> Result<GradedFreeComplex<F>> {
    Ok(minimize(&taylor_complex(ideal, field)?))
}

/// Graded Betti numbers `β_{j,α}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, DegreeMask), usize>,
}

impl BettiTable {
    pub fn from_resolution<F: Field>(res: &GradedFreeComplex<F>) -> Self {
        let mut entries = BTreeMap::new();
        for j in 0..res.len() {
            for &d in res.degrees(j) {
                *entries.entry((j, d)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    pub fn get(&self, j: usize, alpha: DegreeMask) -> usize {
        self.entries.get(&(j, alpha)).copied().unwrap_or(0)
    }

    /// `Σ_{|α| = w} β_{j,α}`.
    pub fn total(&self, j: usize, weight: usize) -> usize {
        self.entries
            .iter()
            .filter(|((jj, a), _)| *jj == j && a.weight() == weight)
            .map(|(_, v)| v)
            .sum()
    }

    /// Length of the resolution plus one.
    pub fn positions(&self) -> usize {
        self.entries.keys().map(|(j, _)| j + 1).max().unwrap_or(0)
    }
}

pub fn betti_numbers<F: Field>(ideal: &MonomialIdeal, field: &F) -> Result<BettiTable> {
    Ok(BettiTable::from_resolution(&minimal_resolution(ideal, field)?))
}

/// Scalar data of the `r`-linear strand: position `j` is spanned by the basis
/// elements of homological position `j` with `|deg| = j + r`, for
/// `j = 0..=n−r`.
#[derive(Clone, Debug)]
pub struct StrandFrame<F: Field> {
    pub r: usize,
    pub spaces: Vec<Vec<DegreeMask>>,
    pub complex: VectorSpaceComplex<F>,
}

impl<F: Field> StrandFrame<F> {
    pub fn from_resolution(res: &GradedFreeComplex<F>, n: usize, r: usize) -> Self {
        let f = res.field();
        if r > n {
            return StrandFrame {
                r,
                spaces: Vec::new(),
                complex: VectorSpaceComplex::zero_maps(f, Vec::new()),
            };
        }
        let len = n - r + 1;
        let picks: Vec<Vec<usize>> = (0..len)
            .map(|j| {
                (0..res.rank(j))
                    .filter(|&i| res.degrees(j)[i].weight() == j + r)
                    .collect()
            })
            .collect();
        let spaces = picks
            .iter()
            .enumerate()
            .map(|(j, p)| p.iter().map(|&i| res.degrees(j)[i]).collect())
            .collect();
        let maps = (0..len - 1)
            .map(|j| {
                let (rows, cols) = (&picks[j], &picks[j + 1]);
                match res.diffs.get(j) {
                    Some(d) => Matrix::from_fn(f, rows.len(), cols.len(), |a, b| {
                        d.get(rows[a], cols[b]).cloned().unwrap_or_else(|| f.zero())
                    }),
                    None => Matrix::zeros(f, rows.len(), cols.len()),
                }
            })
            .collect();
        let dims = picks.iter().map(|p| p.len()).collect();
        let complex = VectorSpaceComplex::new(f, dims, maps).expect("strand of a complex is a complex");
        StrandFrame { r, spaces, complex }
    }

    /// The frame with positions reversed and matrices transposed: position
    /// `p` holds `K_{n−r−p}`.
    pub fn transposed(&self) -> VectorSpaceComplex<F> {
        self.complex.transpose_reverse()
    }
}

pub fn strand_frame<F: Field>(ideal: &MonomialIdeal, r: usize, field: &F) -> Result<StrandFrame<F>> {
    let res = minimal_resolution(ideal, field)?;
    Ok(StrandFrame::from_resolution(&res, ideal.n(), r))
}

/// Largest `p ≥ 1` at which some strand frame of the minimal resolution of
/// `J` has homology; zero when every strand is exact in positive positions.
pub fn linearity_defect<F: Field>(ideal: &MonomialIdeal, field: &F) -> Result<usize> {
    let res = minimal_resolution(ideal, field)?;
    Ok(linearity_defect_of(&res, ideal.n()))
}

pub(crate) fn linearity_defect_of<F: Field>(res: &GradedFreeComplex<F>, n: usize) -> usize {
    (0..=n)
        .flat_map(|r| {
            let h = StrandFrame::from_resolution(res, n, r).complex.homology_dims();
            h.into_iter().enumerate().skip(1).filter(|(_, d)| *d > 0).map(|(p, _)| p)
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn m(n: usize, vars: &[usize]) -> DegreeMask {
        DegreeMask::from_vars(n, vars).unwrap()
    }

    fn ideal(n: usize, gens: &[&[usize]]) -> MonomialIdeal {
        let g: Vec<DegreeMask> = gens.iter().map(|v| m(n, v)).collect();
        MonomialIdeal::minimalize(n, &g).unwrap()
    }

    #[test]
    fn two_generators_are_already_minimal() {
        let j = ideal(4, &[&[1, 3], &[2, 4]]);
        let t = taylor_complex(&j, &Rationals).unwrap();
        t.verify().unwrap();
        assert!(t.is_minimal());
        let b = betti_numbers(&j, &Rationals).unwrap();
        assert_eq!(b.get(0, m(4, &[1, 3])), 1);
        assert_eq!(b.get(0, m(4, &[2, 4])), 1);
        assert_eq!(b.get(1, DegreeMask::ones(4)), 1);
        assert_eq!(b.entries.len(), 3);
        let single = taylor_complex(&ideal(2, &[&[1]]), &Rationals).unwrap();
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn taylor_size_and_cap() {
        let j = ideal(5, &[&[1, 3], &[1, 4], &[2, 4], &[2, 5], &[3, 5]]);
        let t = taylor_complex(&j, &Rationals).unwrap();
        assert_eq!((0..t.len()).map(|p| t.rank(p)).sum::<usize>(), 31);
        t.verify().unwrap();
        let many: Vec<DegreeMask> = (0..21).map(|i| DegreeMask::new(22, 1 << i | 1 << 21).unwrap()).collect();
        let big = MonomialIdeal::minimalize(22, &many).unwrap();
        assert!(matches!(taylor_complex(&big, &Rationals), Err(Error::Resource { .. })));
    }

    #[test]
    fn a5_dual_resolution() {
        let j = ideal(5, &[&[1, 3], &[1, 4], &[2, 4], &[2, 5], &[3, 5]]);
        let res = minimal_resolution(&j, &Rationals).unwrap();
        res.verify().unwrap();
        assert!(res.is_minimal());
        let b = BettiTable::from_resolution(&res);
        assert_eq!(b.total(0, 2), 5);
        assert_eq!(b.total(1, 3), 5);
        assert_eq!(b.total(2, 5), 1);
        let frame = StrandFrame::from_resolution(&res, 5, 2);
        assert_eq!(&frame.complex.dims()[..2], &[5, 5]);
        assert_eq!(frame.complex.maps()[0].rank(), 4);
    }

    #[test]
    fn sweeps_agree() {
        let j = ideal(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[1, 5], &[1, 3]]);
        for sweep in [Sweep::Forward, Sweep::Reverse] {
            let res = minimize_with(&taylor_complex(&j, &Rationals).unwrap(), sweep);
            res.verify().unwrap();
            assert!(res.is_minimal());
        }
        let f = minimize_with(&taylor_complex(&j, &Rationals).unwrap(), Sweep::Forward);
        let r = minimize_with(&taylor_complex(&j, &Rationals).unwrap(), Sweep::Reverse);
        assert_eq!(BettiTable::from_resolution(&f), BettiTable::from_resolution(&r));
    }

    #[test]
    fn strand_support_and_empty_frames() {
        let j = ideal(4, &[&[1, 2], &[2, 3], &[3, 4]]);
        let b = betti_numbers(&j, &PrimeField::new(5).unwrap()).unwrap();
        for ((jj, a), _) in &b.entries {
            assert!(*jj + 2 <= a.weight());
        }
        let res = minimal_resolution(&j, &Rationals).unwrap();
        assert!(StrandFrame::from_resolution(&res, 4, 5).spaces.is_empty());
        let low = StrandFrame::from_resolution(&res, 4, 1);
        assert!(low.complex.dims().iter().all(|&d| d == 0));
        // Path ideal has a linear resolution.
        assert_eq!(linearity_defect_of(&res, 4), 0);
    }

    #[test]
    fn a4_dual_has_positive_defect() {
        let j = ideal(4, &[&[1, 3], &[2, 4]]);
        assert!(linearity_defect(&j, &Rationals).unwrap() > 0);
    }
}
