//! Partition counts attached to minimal balanced 2-subset families.
//!
//! `b(d)` counts partitions of `d` into parts from `{2, 3, 5, 7, ...}` (the
//! possible block-size profiles of a minimal family) and `q(d)` counts
//! partitions into odd parts. They satisfy
//! `b(d) = q(d) - q(d-1) + ... + (-1)^d q(0)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn coin_change(max_d: usize, parts: impl Iterator<Item = usize>) -> Vec<BigUint> {
    let mut ways = vec![BigUint::zero(); max_d + 1];
    ways[0] = BigUint::one();
    for p in parts {
        for n in p..=max_d {
            let add = ways[n - p].clone();
            ways[n] += add;
        }
    }
    ways
}

fn odd_parts(max_d: usize) -> impl Iterator<Item = usize> {
    (1..=max_d).step_by(2)
}

fn block_parts(max_d: usize) -> impl Iterator<Item = usize> {
    std::iter::once(2)
        .chain((3..=max_d).step_by(2))
        .filter(move |&p| p <= max_d)
}

/// `q(0..=max_d)`: partitions into odd parts.
pub fn odd_partitions(max_d: usize) -> Vec<BigUint> {
    coin_change(max_d, odd_parts(max_d))
}

/// `b(0..=max_d)`: partitions into parts 2 and odd parts at least 3.
pub fn balanced_partitions(max_d: usize) -> Vec<BigUint> {
    coin_change(max_d, block_parts(max_d))
}

/// The two closed forms of the generating function of `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesForm {
    /// `1/(1+x) * prod_{i>=0} 1/(1 - x^(2i+1))`
    AlternatingOdd,
    /// `1/(1-x^2) * prod_{i>=1} 1/(1 - x^(2i+1))`
    BlockSizes,
}

/// Power series truncated after `x^max_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Series(Vec<BigInt>);

impl Series {
    fn one(max_d: usize) -> Self {
        let mut c = vec![BigInt::zero(); max_d + 1];
        c[0] = BigInt::one();
        Series(c)
    }

    /// `1 / (1 - s x^p)` expanded as `sum_k s^k x^(pk)`.
    fn geometric(max_d: usize, p: usize, s: i64) -> Self {
        let mut c = vec![BigInt::zero(); max_d + 1];
        let mut coeff = BigInt::one();
        for k in (0..=max_d).step_by(p) {
            c[k] = coeff.clone();
            coeff *= s;
        }
        Series(c)
    }

    fn mul(&self, other: &Series) -> Series {
        let n = self.0.len();
        let mut c = vec![BigInt::zero(); n];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Series(c)
    }
}

/// Coefficients of `x^0..x^max_d` in the generating function of `b`,
/// by truncated series multiplication.
pub fn series_coefficients(max_d: usize, form: SeriesForm) -> Vec<BigInt> {
    let mut s = Series::one(max_d);
    let factors: Vec<(usize, i64)> = match form {
        SeriesForm::AlternatingOdd => std::iter::once((1, -1))
            .chain(odd_parts(max_d).map(|p| (p, 1)))
            .collect(),
        SeriesForm::BlockSizes => block_parts(max_d).map(|p| (p, 1)).collect(),
    };
    for (p, sign) in factors {
        s = s.mul(&Series::geometric(max_d, p, sign));
    }
    s.0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTable {
    pub max_d: usize,
    pub q: Vec<BigUint>,
    pub b: Vec<BigUint>,
}

impl PartitionTable {
    pub fn new(max_d: usize) -> Self {
        PartitionTable {
            max_d,
            q: odd_partitions(max_d),
            b: balanced_partitions(max_d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityRow {
    pub d: usize,
    pub q: BigUint,
    pub b: BigUint,
    /// `sum_{i=0..d} (-1)^i q(d-i)`
    pub alternating_sum: BigInt,
    /// Coefficient of `x^d` in both closed forms of the generating function.
    pub series: [BigInt; 2],
}

impl IdentityRow {
    pub fn holds(&self) -> bool {
        let b = BigInt::from(self.b.clone());
        self.alternating_sum == b && self.series.iter().all(|c| *c == b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub rows: Vec<IdentityRow>,
}

impl IdentityReport {
    pub fn failures(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| !r.holds()).map(|r| r.d).collect()
    }

    pub fn holds(&self) -> bool {
        self.rows.iter().all(IdentityRow::holds)
    }
}

/// Checks the alternating identity, and agreement of both generating-function
/// forms with the direct count, for every `d <= max_d`.
pub fn check_alternating_identity(max_d: usize) -> IdentityReport {
    let table = PartitionTable::new(max_d);
    let alt = series_coefficients(max_d, SeriesForm::AlternatingOdd);
    let blocks = series_coefficients(max_d, SeriesForm::BlockSizes);
    let rows = (0..=max_d)
        .map(|d| {
            let alternating_sum = (0..=d)
                .map(|i| {
                    let q = BigInt::from(table.q[d - i].clone());
                    if i % 2 == 0 { q } else { -q }
                })
                .sum();
            IdentityRow {
                d,
                q: table.q[d].clone(),
                b: table.b[d].clone(),
                alternating_sum,
                series: [alt[d].clone(), blocks[d].clone()],
            }
        })
        .collect();
    IdentityReport { rows }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Number of undirected cycles through `m` labelled vertices, with the
/// two-vertex "cycle" counted once as an isolated edge.
fn block_arrangements(m: usize) -> BigUint {
    if m == 2 {
        BigUint::one()
    } else {
        factorial(m - 1) / 2u32
    }
}

/// Multisets of block sizes (2 and odd at least 3) summing to `d`, each as a
/// list of `(size, multiplicity)`.
fn block_profiles(d: usize) -> Vec<Vec<(usize, usize)>> {
    fn recurse(
        rest: usize,
        parts: &[usize],
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        let Some((&p, tail)) = parts.split_first() else { return };
        for count in (0..=rest / p).rev() {
            if count > 0 {
                current.push((p, count));
            }
            recurse(rest - count * p, tail, current, out);
            if count > 0 {
                current.pop();
            }
        }
    }
    let mut parts: Vec<usize> = block_parts(d).collect();
    parts.reverse();
    let mut out = Vec::new();
    recurse(d, &parts, &mut Vec::new(), &mut out);
    out
}

/// Number of minimal balanced 2-subset families of `[d]`, by summing
/// `d! / prod(c_s! (s!)^c_s) * prod(arrangements(s)^c_s)` over block-size
/// profiles.
pub fn count_labeled_minimal(d: usize) -> Result<BigUint> {
    if d < 2 {
        return Err(Error::input(format!("labelled count needs d >= 2, got {d}")));
    }
    let total = factorial(d);
    let mut sum = BigUint::zero();
    for profile in block_profiles(d) {
        let mut num = total.clone();
        let mut den = BigUint::one();
        for &(size, count) in &profile {
            num *= block_arrangements(size).pow(count as u32);
            den *= factorial(size).pow(count as u32) * factorial(count);
        }
        let (quot, rem) = num.div_rem(&den);
        debug_assert!(rem.is_zero());
        sum += quot;
    }
    Ok(sum)
}
