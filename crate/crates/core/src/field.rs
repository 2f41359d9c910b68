//! Coefficient fields: the rationals with arbitrary precision and prime
//! fields `F_p` with `p < 2^31`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Which field to compute over, as chosen by a caller.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum FieldSpec {
    #[default]
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if is_prime(p) && p < 1 << 31 {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::Input(format!("{p} is not a prime below 2^31")))
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("qq") {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u32 = p
                .parse()
                .map_err(|_| Error::Input(format!("bad prime in field spec {s:?}")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::Input(format!(
            "unknown field {s:?}; expected q or fp:<prime>"
        )))
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Trial division.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Field arithmetic. Elements are plain values; the field object carries any
/// runtime parameters such as the modulus.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    /// Exact rank of a row-major `rows × cols` array. Fields may override
    /// with a better-behaved elimination.
    fn rank_of(&self, rows: usize, cols: usize, data: &[Self::Elem]) -> usize {
        crate::matrix::gauss_rank(self, rows, cols, data.to_vec())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn rank_of(&self, rows: usize, cols: usize, data: &[BigRational]) -> usize {
        match small_integers(data) {
            Some(ints) => unit_pivot_rank(rows, cols, ints),
            None => bareiss_rank(rows, cols, data),
        }
    }
}

/// `F_p`, elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        FieldSpec::prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p as u64 - *b as u64) % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        // Fermat: a^(p-2).
        let p = self.p as u64;
        let mut base = *a as u64 % p;
        let mut exp = p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u32
    }
    fn render(&self, a: &u32) -> String {
        a.to_string()
    }
}

/// Fraction-free (Bareiss) rank over the rationals: rows are scaled to
/// integers and eliminated with exact divisions by the previous pivot.
fn small_integers(data: &[BigRational]) -> Option<Vec<i64>> {
    data.iter()
        .map(|x| if x.is_integer() { x.numer().to_i64() } else { None })
        .collect()
}

/// Rank over `Q` of an integer matrix. Entries `±1` are used as pivots with
/// integer row operations, which keep the lattice and hence the rank; what is
/// left once no unit remains (or an entry would overflow) goes to Bareiss.
pub fn unit_pivot_rank(rows: usize, cols: usize, data: Vec<i64>) -> usize {
    let mut a: Vec<Vec<i64>> = data.chunks(cols.max(1)).take(rows).map(|r| r.to_vec()).collect();
    a.retain(|r| r.iter().any(|&v| v != 0));
    let mut rank = 0;
    while let Some((pi, c)) = a
        .iter()
        .enumerate()
        .find_map(|(i, r)| r.iter().position(|v| v.abs() == 1).map(|c| (i, c)))
    {
        let prow = &a[pi];
        let sign = prow[c];
        let reduced: Option<Vec<Vec<i64>>> = a
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pi)
            .map(|(_, row)| {
                let f = row[c] * sign;
                if f == 0 {
                    return Some(row.clone());
                }
                row.iter().zip(prow).map(|(&x, &p)| p.checked_mul(f).and_then(|t| x.checked_sub(t))).collect()
            })
            .collect();
        let Some(mut next) = reduced else { break };
        next.retain(|r| r.iter().any(|&v| v != 0));
        a = next;
        rank += 1;
    }
    if a.is_empty() {
        return rank;
    }
    let rest: Vec<BigRational> = a.iter().flatten().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
    rank + bareiss_rank(a.len(), cols, &rest)
}

pub fn bareiss_rank(rows: usize, cols: usize, data: &[BigRational]) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = &data[i * cols..(i + 1) * cols];
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = &a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j];
                debug_assert!((&v % &prev).is_zero());
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}
