//! Families of subsets of `[d] = {1, ..., d}`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A family of distinct nonempty subsets of `[d]`, kept in the order given.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsetFamily {
    d: u32,
    members: Vec<BTreeSet<u32>>,
}

impl SubsetFamily {
    pub fn new<I, S>(d: u32, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = u32>,
    {
        let members: Vec<BTreeSet<u32>> = members
            .into_iter()
            .map(|m| m.into_iter().collect())
            .collect();
        if members.is_empty() {
            return Err(Error::input("empty family"));
        }
        let mut seen = BTreeSet::new();
        for m in &members {
            if m.is_empty() {
                return Err(Error::input("family contains the empty set"));
            }
            if let Some(&e) = m.iter().find(|&&e| e == 0 || e > d) {
                return Err(Error::input(format!("element {e} outside [1, {d}]")));
            }
            if !seen.insert(m) {
                return Err(Error::input(format!("duplicate member {m:?}")));
            }
        }
        Ok(SubsetFamily { d, members })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn members(&self) -> &[BTreeSet<u32>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// 0/1 indicator vector of member `k`, length `d`.
    pub fn characteristic_vector(&self, k: usize) -> Vec<u8> {
        let mut v = vec![0u8; self.d as usize];
        for &e in &self.members[k] {
            v[(e - 1) as usize] = 1;
        }
        v
    }
}

/// An edge `{i, j}` of `[d]`, stored with `i < j`.
pub type Pair = (u32, u32);

/// A family of 2-subsets of `[d]`, held in canonical (lexicographic) order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoSubsetFamily {
    d: u32,
    pairs: BTreeSet<Pair>,
}

impl TwoSubsetFamily {
    /// Builds a family from pairs in any orientation; `(3, 1)` is stored as
    /// `(1, 3)`. Loops, out-of-range elements and repeated pairs are errors.
    pub fn new<I: IntoIterator<Item = Pair>>(d: u32, pairs: I) -> Result<Self> {
        if d < 2 {
            return Err(Error::input(format!("2-subset families need d >= 2, got {d}")));
        }
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            if a == b {
                return Err(Error::input(format!("pair ({a}, {b}) is not a 2-subset")));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if i == 0 || j > d {
                return Err(Error::input(format!("pair ({a}, {b}) outside [1, {d}]")));
            }
            if !set.insert((i, j)) {
                return Err(Error::input(format!("duplicate pair ({i}, {j})")));
            }
        }
        Ok(TwoSubsetFamily { d, pairs: set })
    }

    /// Every 2-subset of `[d]`.
    pub fn complete(d: u32) -> Result<Self> {
        let pairs = (1..=d).flat_map(|i| (i + 1..=d).map(move |j| (i, j)));
        Self::new(d, pairs)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn pairs(&self) -> impl ExactSizeIterator<Item = Pair> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: Pair) -> bool {
        self.pairs.contains(&pair)
    }

    pub fn to_subset_family(&self) -> Result<SubsetFamily> {
        SubsetFamily::new(self.d, self.pairs().map(|(i, j)| [i, j]))
    }
}

impl fmt::Display for TwoSubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, j)) in self.pairs().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({i},{j})")?;
        }
        write!(f, "}} in [{}]", self.d)
    }
}
