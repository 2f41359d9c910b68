use lyubeznik::cohomology::{induced_cohomology_map, reduced_cohomology_dim, reduced_homology_dim, CochainComplex};
use lyubeznik::field::{bareiss_rank, unit_pivot_rank};
use lyubeznik::invariants::{minimize_order_independent, LocalCohomology};
use lyubeznik::matrix::sparse_rank;
use lyubeznik::{DegreeMask, Field, Matrix, MonomialIdeal, PrimeField, Rationals, SimplicialComplex};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

/// Textbook elimination over `Q`, the oracle for the rank routines.
fn naive_rank_q(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let factor = &a[i][c] / &a[rank][c];
                for j in 0..cols {
                    let v = &a[i][j] - &factor * &a[rank][j];
                    a[i][j] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn naive_rank_mod(rows: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|v| v.rem_euclid(p)).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let inv = |x: i64| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let s = inv(a[rank][c]);
        for i in 0..a.len() {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c] * s % p;
                for j in 0..cols {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn int_matrix(max_dim: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -range..=range], c), r)
    })
}

fn complex(n: usize) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(0..(1u32 << n), 1..6).prop_map(move |bits| {
        let faces: Vec<DegreeMask> = bits.iter().map(|&b| DegreeMask::new(n, b).unwrap()).collect();
        SimplicialComplex::from_faces(DegreeMask::ones(n), &faces).unwrap()
    })
}

fn ideal(max_n: usize) -> impl Strategy<Value = MonomialIdeal> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1..(1u32 << n), 1..6).prop_map(move |bits| {
            let gens: Vec<DegreeMask> = bits.iter().map(|&b| DegreeMask::new(n, b).unwrap()).collect();
            MonomialIdeal::minimalize(n, &gens).unwrap()
        })
    })
}

fn sparse_rows<F: Field>(f: &F, rows: &[Vec<i64>]) -> Vec<Vec<(usize, F::Elem)>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .map(|(j, &v)| (j, f.from_i64(v)))
                .filter(|(_, v)| !f.is_zero(v))
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_equals_rank_of_transpose(rows in int_matrix(7, 3)) {
        let m = Matrix::from_i64_rows(&Rationals, &rows);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let f = PrimeField::new(3).unwrap();
        let m = Matrix::from_i64_rows(&f, &rows);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_routines_match_naive_elimination(rows in int_matrix(8, 4)) {
        let want = naive_rank_q(&rows);
        let (r, c) = (rows.len(), rows[0].len());
        let flat: Vec<i64> = rows.concat();
        let big: Vec<BigRational> = flat.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
        prop_assert_eq!(bareiss_rank(r, c, &big), want);
        prop_assert_eq!(unit_pivot_rank(r, c, flat), want);
        prop_assert_eq!(Matrix::from_i64_rows(&Rationals, &rows).rank(), want);
        prop_assert_eq!(Matrix::from_i64_rows(&Rationals, &rows).rref().1.len(), want);
        prop_assert_eq!(sparse_rank(&Rationals, sparse_rows(&Rationals, &rows)), want);
        for p in [2u32, 5] {
            let f = PrimeField::new(p).unwrap();
            let want_p = naive_rank_mod(&rows, p as i64);
            prop_assert_eq!(Matrix::from_i64_rows(&f, &rows).rank(), want_p);
            prop_assert_eq!(sparse_rank(&f, sparse_rows(&f, &rows)), want_p);
        }
    }

    #[test]
    fn unit_pivots_survive_overflow(rows in int_matrix(6, 3), scale in 1i64 << 40..1i64 << 41) {
        // Large entries force the exact fallback.
        let scaled: Vec<Vec<i64>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().map(|&v| if i % 2 == 0 { v } else { v * scale }).collect())
            .collect();
        let (r, c) = (scaled.len(), scaled[0].len());
        prop_assert_eq!(unit_pivot_rank(r, c, scaled.concat()), naive_rank_q(&scaled));
    }

    #[test]
    fn kernel_basis_is_a_kernel(rows in int_matrix(6, 3)) {
        let m = Matrix::from_i64_rows(&Rationals, &rows);
        let k = m.kernel_basis();
        prop_assert_eq!(k.cols(), m.cols() - m.rank());
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn euler_characteristic_of_cochains(c in complex(6)) {
        let cc = CochainComplex::new(&c, &Rationals);
        let Some(top) = cc.top_degree() else { return Ok(()) };
        let chain = cc.as_complex(top);
        let hom = chain.homology_dims();
        let alt: i64 = hom.iter().enumerate().map(|(p, &v)| if p % 2 == 0 { v as i64 } else { -(v as i64) }).sum();
        prop_assert_eq!(chain.euler_characteristic(), alt);
        for q in -1..=top {
            let from_ranks = cc.cohomology_dim(q);
            prop_assert_eq!(from_ranks, cc.cohomology(q).dim());
            prop_assert_eq!(from_ranks, reduced_cohomology_dim(&c, q, &Rationals).unwrap());
            prop_assert_eq!(from_ranks, reduced_homology_dim(&c, q, &Rationals));
        }
    }

    #[test]
    fn alexander_duality_is_an_involution(c in complex(8), i in ideal(8)) {
        prop_assert_eq!(c.alexander_dual().alexander_dual(), c.clone());
        prop_assert_eq!(SimplicialComplex::stanley_reisner(&c.ideal_of()), c.clone());
        prop_assert_eq!(i.alexander_dual().unwrap().alexander_dual().unwrap(), i.clone());
        prop_assert_eq!(SimplicialComplex::stanley_reisner(&i).ideal_of(), i.clone());
        let sr = SimplicialComplex::stanley_reisner(&i);
        prop_assert_eq!(SimplicialComplex::stanley_reisner(&i.alexander_dual().unwrap()), sr.alexander_dual());
    }

    #[test]
    fn restriction_maps_compose(c in complex(6), a in 0u32..64, b in 0u32..64) {
        let n = 6;
        let big = DegreeMask::ones(n);
        let mid = DegreeMask::new(n, a | b).unwrap();
        let small = DegreeMask::new(n, a).unwrap();
        let (c3, c2, c1) = (c.restriction(big), c.restriction(mid), c.restriction(small));
        let f = PrimeField::new(2).unwrap();
        for q in -1..=3 {
            let direct = induced_cohomology_map(&c1, &c3, q, &f).unwrap();
            let via = induced_cohomology_map(&c1, &c2, q, &f).unwrap().mul(&induced_cohomology_map(&c2, &c3, q, &f).unwrap());
            prop_assert_eq!(direct, via);
        }
    }
}

fn local_properties<F: Field>(ideal: &MonomialIdeal, field: &F) -> Result<(), TestCaseError> {
    let lc = LocalCohomology::new(ideal, field).unwrap();
    let n = ideal.n();
    prop_assert_eq!(lc.lyubeznik_table().unwrap(), lc.lyubeznik_via_strands().unwrap());
    prop_assert!(minimize_order_independent(ideal, field).unwrap());
    let one = DegreeMask::ones(n);
    let zero = DegreeMask::zero(n);
    for r in 0..=n {
        let cube = lc.hypercube(r).unwrap();
        cube.verify_commutativity().unwrap();
        let main = cube.main_complex().unwrap();
        prop_assert_eq!(cube.restricted_complex(one, one).unwrap().homology_dims(), main.homology_dims());
        prop_assert_eq!(lc.dual_bass_table(r).unwrap(), lc.dual_bass_direct(r).unwrap());
        // π_p(p_0) is the homology of the untransposed r-linear strand,
        // shifted by r.
        let frame = lc.strand_frame(r).unwrap().complex.homology_dims();
        let dual = lc.dual_bass_table(r).unwrap();
        for p in 0..=n {
            let want = p.checked_sub(r).and_then(|j| frame.get(j)).copied().unwrap_or(0);
            prop_assert_eq!(dual.get(zero, p), want, "r={} p={}", r, p);
        }
        let g = lc.growth_bound_check(r).unwrap();
        prop_assert!(g.holds);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn local_cohomology_properties(i in ideal(6)) {
        local_properties(&i, &Rationals)?;
        local_properties(&i, &PrimeField::new(2).unwrap())?;
    }
}
