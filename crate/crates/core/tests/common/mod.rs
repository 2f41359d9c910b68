//! Ideals used across the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use lyubeznik::{DegreeMask, MonomialIdeal};

pub fn mask(bits: &[u8]) -> DegreeMask {
    DegreeMask::from_vector(bits).unwrap()
}

pub fn vars(n: usize, v: &[usize]) -> DegreeMask {
    DegreeMask::from_vars(n, v).unwrap()
}

pub fn from_primes(n: usize, primes: &[&[usize]]) -> MonomialIdeal {
    let p: Vec<DegreeMask> = primes.iter().map(|p| vars(n, p)).collect();
    MonomialIdeal::intersect_face_ideals(n, &p).unwrap()
}

pub fn from_gens(n: usize, gens: &[&[usize]]) -> MonomialIdeal {
    let g: Vec<DegreeMask> = gens.iter().map(|g| vars(n, g)).collect();
    MonomialIdeal::minimalize(n, &g).unwrap()
}

/// `a_n`: the intersection of `(x_i, x_j)` over `j − i ≥ 2`, leaving out `(x_1, x_n)`.
pub fn a(n: usize) -> MonomialIdeal {
    let mut primes = Vec::new();
    for i in 1..=n {
        for j in i + 2..=n {
            if (i, j) != (1, n) {
                primes.push(vars(n, &[i, j]));
            }
        }
    }
    MonomialIdeal::intersect_face_ideals(n, &primes).unwrap()
}

/// Ten squarefree cubics in six variables whose table depends on the
/// characteristic.
pub fn rp2() -> MonomialIdeal {
    from_gens(
        6,
        &[
            &[1, 2, 3], &[1, 2, 4], &[1, 3, 5], &[2, 4, 5], &[3, 4, 5],
            &[2, 3, 6], &[1, 4, 6], &[3, 4, 6], &[1, 5, 6], &[2, 5, 6],
        ],
    )
}

/// Nine variables, modules in degrees 2 through 5, trivial table.
pub fn nine_variables() -> MonomialIdeal {
    let mut primes: Vec<&[usize]> = vec![&[1, 2], &[3, 4], &[5, 6], &[7, 8]];
    let tail: Vec<[usize; 2]> = (1..=8).map(|i| [9, i]).collect();
    primes.extend(tail.iter().map(|p| &p[..]));
    from_primes(9, &primes)
}

/// `(x1,x2,x5) ∩ (x3,x4,x5) ∩ (x1,x2,x3,x4)`.
pub fn three_components() -> MonomialIdeal {
    from_primes(5, &[&[1, 2, 5], &[3, 4, 5], &[1, 2, 3, 4]])
}

/// `(x1,x4) ∩ (x2,x5) ∩ (x1,x2,x3)`.
pub fn mixed_heights() -> MonomialIdeal {
    from_primes(5, &[&[1, 4], &[2, 5], &[1, 2, 3]])
}

pub fn corpus() -> Vec<(&'static str, MonomialIdeal)> {
    vec![
        ("a4", a(4)),
        ("a5", a(5)),
        ("a6", a(6)),
        ("a7", a(7)),
        ("rp2", rp2()),
        ("nine", nine_variables()),
        ("three components", three_components()),
        ("mixed heights", mixed_heights()),
    ]
}

/// Rows of a Bass-type table from `(mask, index, value)` triples; each row
/// has `|α| + 1` entries.
pub fn table(entries: &[(&[u8], usize, usize)]) -> BTreeMap<DegreeMask, Vec<usize>> {
    let mut rows: BTreeMap<DegreeMask, Vec<usize>> = BTreeMap::new();
    for (bits, p, v) in entries {
        let m = mask(bits);
        let row = rows.entry(m).or_insert_with(|| vec![0; m.weight() + 1]);
        row[*p] += v;
    }
    rows
}

/// Bass numbers of a sum of modules `H^{|α|}_{p_α}(R)`: `μ_{|β|−|α|}(p_β) = 1`
/// for every `β ⊇ α`.
pub fn gorenstein_sum(n: usize, alphas: &[DegreeMask]) -> BTreeMap<DegreeMask, Vec<usize>> {
    let mut rows: BTreeMap<DegreeMask, Vec<usize>> = BTreeMap::new();
    for &a in alphas {
        for b in DegreeMask::all(n) {
            if a.is_subset_of(b) {
                let row = rows.entry(b).or_insert_with(|| vec![0; b.weight() + 1]);
                row[b.weight() - a.weight()] += 1;
            }
        }
    }
    rows
}
