//! Minimal balanced subsets of a point set.
//!
//! A subset `S` of `V` is balanced when the centroid of all of `V` lies in the
//! convex hull of `S`. Balancedness is monotone under adding points, so the
//! minimal balanced subsets are exactly the inclusion-minimal balanced ones,
//! and by Carathéodory each has at most `affdim(V) + 1` points.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{convex_membership, BalancedWitness, Point, PointSet};

/// Environment variable overriding the default subset budget.
pub const BUDGET_ENV: &str = "MINBAL_BUDGET";

/// Largest point set the enumerator accepts; subsets are held as bitmasks.
pub const MAX_POINTS: usize = 128;

const CHUNK: usize = 4096;

/// Sorted, nonempty, duplicate-free indices into a point set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSubset(Vec<usize>);

impl IndexSubset {
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::input("empty index subset"));
        }
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("repeated index in subset"));
        }
        Ok(IndexSubset(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset_of(&self, other: &IndexSubset) -> bool {
        self.0.iter().all(|i| other.0.binary_search(i).is_ok())
    }

    pub fn is_subset_of_indices(&self, other: &[usize]) -> bool {
        self.0.iter().all(|i| other.contains(i))
    }

    /// The subset with index `i` removed, or `None` if that leaves nothing.
    pub fn without(&self, i: usize) -> Option<IndexSubset> {
        let rest: Vec<usize> = self.0.iter().copied().filter(|&k| k != i).collect();
        (!rest.is_empty()).then_some(IndexSubset(rest))
    }

    fn check(&self, v: &PointSet) -> Result<()> {
        match self.0.last() {
            Some(&i) if i >= v.len() => Err(Error::input(format!(
                "index {i} out of range for {} points",
                v.len()
            ))),
            _ => Ok(()),
        }
    }

    fn mask(&self) -> u128 {
        self.0.iter().fold(0, |m, &i| m | 1 << i)
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Cap on the number of subsets visited by [`enumerate_minimal_balanced`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_subsets: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_subsets: 10_000_000,
        }
    }
}

impl Budget {
    pub fn new(max_subsets: u64) -> Self {
        Budget { max_subsets }
    }

    /// The default budget, overridden by `MINBAL_BUDGET` when it parses.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Budget::new)
            .unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub subset: IndexSubset,
    pub witness: BalancedWitness,
}

/// `BS(V)` with one convex-combination witness per member, in level order
/// (by size, then lexicographically).
#[derive(Clone, Debug)]
pub struct MinimalBalancedCatalog {
    point_set: PointSet,
    entries: Vec<CatalogEntry>,
    examined: u64,
}

impl MinimalBalancedCatalog {
    pub fn point_set(&self) -> &PointSet {
        &self.point_set
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn members(&self) -> impl Iterator<Item = &IndexSubset> {
        self.entries.iter().map(|e| &e.subset)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of subsets visited during the search.
    pub fn examined(&self) -> u64 {
        self.examined
    }

    /// Re-checks every catalog invariant exactly: each witness reproduces the
    /// centroid, no member contains another, and no single removal stays
    /// balanced.
    pub fn verify(&self) -> bool {
        let v = &self.point_set;
        let c = v.centroid();
        let witnesses_ok = self.entries.iter().all(|e| {
            let gens = select(v, e.subset.indices());
            e.witness.verifies_convex(&c, &gens)
        });
        let antichain = self.entries.iter().enumerate().all(|(a, ea)| {
            self.entries
                .iter()
                .enumerate()
                .all(|(b, eb)| a == b || !ea.subset.is_subset_of(&eb.subset))
        });
        let minimal = self.entries.iter().all(|e| {
            e.subset.indices().iter().all(|&i| match e.subset.without(i) {
                None => true,
                Some(rest) => witness_for(v, &c, rest.indices()).is_none(),
            })
        });
        witnesses_ok && antichain && minimal
    }
}

fn select<'a>(v: &'a PointSet, indices: &[usize]) -> Vec<&'a Point> {
    indices.iter().map(|&i| &v.points()[i]).collect()
}

fn witness_for(v: &PointSet, centroid: &Point, indices: &[usize]) -> Option<BalancedWitness> {
    convex_membership(centroid, &select(v, indices))
        .expect("indices and dimensions validated by caller")
}

/// Witness that the centroid of `v` lies in the hull of `s`, if it does.
pub fn is_balanced_subset(v: &PointSet, s: &IndexSubset) -> Result<Option<BalancedWitness>> {
    s.check(v)?;
    Ok(witness_for(v, &v.centroid(), s.indices()))
}

/// True iff `s` is balanced and no single removal keeps it balanced.
pub fn is_minimal_balanced(v: &PointSet, s: &IndexSubset) -> Result<bool> {
    s.check(v)?;
    let c = v.centroid();
    if witness_for(v, &c, s.indices()).is_none() {
        return Ok(false);
    }
    Ok(s.indices().iter().all(|&i| match s.without(i) {
        None => true,
        Some(rest) => witness_for(v, &c, rest.indices()).is_none(),
    }))
}

/// Computes `BS(V)` exhaustively.
///
/// Subsets are visited by increasing size up to `affdim(V) + 1`, and
/// lexicographically within a size. Supersets of members already found are
/// skipped without a feasibility solve. Every visited subset, pruned or not,
/// counts against the budget.
pub fn enumerate_minimal_balanced(v: &PointSet, budget: Budget) -> Result<MinimalBalancedCatalog> {
    let n = v.len();
    if n > MAX_POINTS {
        return Err(Error::input(format!(
            "{n} points exceeds the enumerator limit of {MAX_POINTS}"
        )));
    }
    let centroid = v.centroid();
    let max_size = (v.affine_dimension() + 1).min(n);
    let mut found: Vec<(u128, CatalogEntry)> = Vec::new();
    let mut examined = 0u64;

    for k in 1..=max_size {
        let mut level: Vec<CatalogEntry> = Vec::new();
        let mut combos = Combinations::new(n, k);
        loop {
            let mut chunk: Vec<Vec<usize>> = Vec::with_capacity(CHUNK);
            while chunk.len() < CHUNK {
                let Some(c) = combos.next() else { break };
                examined += 1;
                if examined > budget.max_subsets {
                    return Err(Error::BudgetExceeded {
                        examined: examined - 1,
                        limit: budget.max_subsets,
                        partial: found.into_iter().map(|(_, e)| e.subset).collect(),
                    });
                }
                let mask = c.iter().fold(0u128, |m, &i| m | 1 << i);
                if found.iter().all(|(f, _)| f & mask != *f) {
                    chunk.push(c);
                }
            }
            if chunk.is_empty() {
                break;
            }
            let hits: Vec<Option<CatalogEntry>> = chunk
                .into_par_iter()
                .map(|c| {
                    witness_for(v, &centroid, &c).map(|witness| CatalogEntry {
                        subset: IndexSubset(c),
                        witness,
                    })
                })
                .collect();
            level.extend(hits.into_iter().flatten());
        }
        found.extend(level.into_iter().map(|e| (e.subset.mask(), e)));
    }

    Ok(MinimalBalancedCatalog {
        point_set: v.clone(),
        entries: found.into_iter().map(|(_, e)| e).collect(),
        examined,
    })
}

/// k-subsets of `0..n` in lexicographic order.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let c = self.current.as_mut().unwrap();
        let k = c.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if c[i] < self.n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
