//! Minimal balanced families of 2-subsets of `[d]`.
//!
//! Such a family is minimal balanced exactly when its graph splits `[d]` into
//! vertex-disjoint odd cycles and isolated edges. This module classifies
//! families against that description, streams every minimal family of `[d]`
//! directly from it, and cross-checks the stream against the geometric
//! enumeration of `V_d`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::One;

use crate::enumeration::{enumerate_minimal_balanced, Budget};
use crate::error::{Error, Result};
use crate::family::{Pair, TwoSubsetFamily};
use crate::geometry::{shapley_weights, simplex_edge_midpoints};
use crate::rational::{frac, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<u32>,
    pub edges: Vec<Pair>,
}

/// `G(S)`: the graph on `[d]` whose edges are the pairs of `S`.
#[derive(Clone, Debug)]
pub struct FamilyGraph {
    d: u32,
    vertices: BTreeSet<u32>,
    edges: Vec<Pair>,
    adjacency: BTreeMap<u32, Vec<u32>>,
    components: Vec<Component>,
}

impl FamilyGraph {
    pub fn d(&self) -> u32 {
        self.d
    }

    /// Vertices incident to at least one pair.
    pub fn vertices(&self) -> &BTreeSet<u32> {
        &self.vertices
    }

    /// `n(S)`, the number of vertices of `G(S)`.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Pair] {
        &self.edges
    }

    /// Connected components, ordered by smallest vertex.
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency.get(&v).map_or(0, Vec::len)
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        self.adjacency.get(&v).map_or(&[], Vec::as_slice)
    }
}

pub fn graph_of(family: &TwoSubsetFamily) -> FamilyGraph {
    let mut adjacency: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (i, j) in family.pairs() {
        adjacency.entry(i).or_default().push(j);
        adjacency.entry(j).or_default().push(i);
    }
    for n in adjacency.values_mut() {
        n.sort_unstable();
    }
    let vertices: BTreeSet<u32> = adjacency.keys().copied().collect();

    let mut seen = BTreeSet::new();
    let mut components = Vec::new();
    for &start in &vertices {
        if !seen.insert(start) {
            continue;
        }
        let mut stack = vec![start];
        let mut comp = BTreeSet::from([start]);
        while let Some(u) = stack.pop() {
            for &w in &adjacency[&u] {
                if seen.insert(w) {
                    comp.insert(w);
                    stack.push(w);
                }
            }
        }
        let edges = family
            .pairs()
            .filter(|(i, _)| comp.contains(i))
            .collect();
        components.push(Component {
            vertices: comp.into_iter().collect(),
            edges,
        });
    }

    FamilyGraph {
        d: family.d(),
        vertices,
        edges: family.pairs().collect(),
        adjacency,
        components,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockKind {
    /// A lone element of `[d]`; only used for coalition families in games.
    Singleton,
    IsolatedEdge,
    OddCycle,
}

/// One block of a decomposition of `[d]`.
///
/// For an odd cycle, `vertices` is the canonical cyclic order: it starts at
/// the smallest vertex and moves toward the smaller of that vertex's two
/// neighbours. Otherwise `vertices` is sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    pub kind: BlockKind,
    pub vertices: Vec<u32>,
}

impl Block {
    /// Pairs of the block in canonical orientation, in cycle order.
    pub fn edges(&self) -> Vec<Pair> {
        let v = &self.vertices;
        let orient = |a: u32, b: u32| if a < b { (a, b) } else { (b, a) };
        match self.kind {
            BlockKind::Singleton => Vec::new(),
            BlockKind::IsolatedEdge => vec![(v[0], v[1])],
            BlockKind::OddCycle => (0..v.len())
                .map(|k| orient(v[k], v[(k + 1) % v.len()]))
                .collect(),
        }
    }

    /// Weight every coalition of this block carries: 1/2 on odd-cycle edges,
    /// 1 otherwise.
    pub fn weight(&self) -> Rational {
        match self.kind {
            BlockKind::OddCycle => frac(1, 2),
            _ => Rational::one(),
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.vertices.iter().map(u32::to_string).collect();
        match self.kind {
            BlockKind::Singleton => write!(f, "{{{}}}", body[0]),
            BlockKind::IsolatedEdge => write!(f, "edge({})", body.join(",")),
            BlockKind::OddCycle => write!(f, "cycle({})", body.join(",")),
        }
    }
}

/// A minimal balanced 2-subset family written as disjoint odd cycles and
/// isolated edges covering `[d]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Theorem1Decomposition {
    d: u32,
    blocks: Vec<Block>,
}

impl Theorem1Decomposition {
    pub fn d(&self) -> u32 {
        self.d
    }

    /// Blocks ordered by smallest vertex.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn family(&self) -> TwoSubsetFamily {
        TwoSubsetFamily::new(self.d, self.blocks.iter().flat_map(Block::edges))
            .expect("decomposition blocks are disjoint and in range")
    }

    /// Weight per pair, in the family's canonical pair order.
    pub fn canonical_weights(&self) -> Vec<(Pair, Rational)> {
        let mut w: Vec<(Pair, Rational)> = self
            .blocks
            .iter()
            .flat_map(|b| b.edges().into_iter().map(move |e| (e, b.weight())))
            .collect();
        w.sort_by_key(|(e, _)| *e);
        w
    }

    /// Sorted multiset of block sizes; a partition of `d`.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(|b| b.vertices.len()).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }
}

impl fmt::Display for Theorem1Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(Block::to_string).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Why a family is not minimal balanced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotMinimal {
    /// Element of `[d]` that no pair covers.
    Uncovered(u32),
    /// A vertex of degree 1 in a component with more than one edge.
    DegreeOne(u32),
    /// A component that is a cycle of even length.
    EvenCycle(Vec<u32>),
    /// A component with minimum degree 2 that is not a cycle, so it has more
    /// edges than vertices.
    RedundantEdges { vertices: Vec<u32>, edges: usize },
}

impl fmt::Display for NotMinimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotMinimal::Uncovered(e) => write!(f, "element {e} is not covered by any pair"),
            NotMinimal::DegreeOne(v) => write!(f, "vertex {v} has degree 1"),
            NotMinimal::EvenCycle(vs) => write!(f, "even cycle on {vs:?}"),
            NotMinimal::RedundantEdges { vertices, edges } => write!(
                f,
                "component {vertices:?} has {edges} edges on {} vertices",
                vertices.len()
            ),
        }
    }
}

/// Decides minimality from the graph structure alone.
///
/// Coverage of `[d]` is checked first; components are then inspected in
/// order of their smallest vertex and the first violation is reported.
pub fn classify(family: &TwoSubsetFamily) -> Result<Theorem1Decomposition, NotMinimal> {
    let g = graph_of(family);
    if let Some(e) = (1..=family.d()).find(|e| !g.vertices.contains(e)) {
        return Err(NotMinimal::Uncovered(e));
    }
    let mut blocks = Vec::with_capacity(g.components.len());
    for comp in &g.components {
        if comp.edges.len() == 1 {
            blocks.push(Block {
                kind: BlockKind::IsolatedEdge,
                vertices: comp.vertices.clone(),
            });
            continue;
        }
        if let Some(&v) = comp.vertices.iter().find(|&&v| g.degree(v) == 1) {
            return Err(NotMinimal::DegreeOne(v));
        }
        if comp.edges.len() > comp.vertices.len() {
            return Err(NotMinimal::RedundantEdges {
                vertices: comp.vertices.clone(),
                edges: comp.edges.len(),
            });
        }
        // connected, minimum degree 2 and |E| = |V|: a cycle
        let order = cycle_order(&g, comp.vertices[0]);
        if order.len().is_multiple_of(2) {
            return Err(NotMinimal::EvenCycle(order));
        }
        blocks.push(Block {
            kind: BlockKind::OddCycle,
            vertices: order,
        });
    }
    Ok(Theorem1Decomposition {
        d: family.d(),
        blocks,
    })
}

fn cycle_order(g: &FamilyGraph, start: u32) -> Vec<u32> {
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = g.neighbors(start)[0];
    while cur != start {
        order.push(cur);
        let n = g.neighbors(cur);
        let next = if n[0] == prev { n[1] } else { n[0] };
        prev = cur;
        cur = next;
    }
    order
}

/// Set partitions of `[d]` whose block sizes are 2 or odd and at least 3, plus
/// 1 when `singletons` is set. Blocks are sorted and ordered by smallest
/// element; partitions come out in a fixed order.
pub(crate) fn block_partitions(d: u32, singletons: bool) -> Vec<Vec<Vec<u32>>> {
    fn allowed(size: usize, singletons: bool) -> bool {
        size == 2 || (size >= 3 && size % 2 == 1) || (singletons && size == 1)
    }

    fn recurse(
        rest: &[u32],
        singletons: bool,
        current: &mut Vec<Vec<u32>>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        let Some((&first, others)) = rest.split_first() else {
            out.push(current.clone());
            return;
        };
        // choose the companions of `first` by bitmask over `others`, in
        // increasing block size
        let n = others.len();
        let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
        for mask in 0u64..(1 << n) {
            by_size[mask.count_ones() as usize].push(mask);
        }
        for (extra, masks) in by_size.iter().enumerate() {
            if !allowed(extra + 1, singletons) {
                continue;
            }
            for &mask in masks {
                let mut block = vec![first];
                let mut remaining = Vec::with_capacity(n - extra);
                for (k, &e) in others.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        block.push(e);
                    } else {
                        remaining.push(e);
                    }
                }
                current.push(block);
                recurse(&remaining, singletons, current, out);
                current.pop();
            }
        }
    }

    let elements: Vec<u32> = (1..=d).collect();
    let mut out = Vec::new();
    recurse(&elements, singletons, &mut Vec::new(), &mut out);
    out
}

/// Undirected Hamiltonian cycles on a sorted vertex set, each in canonical
/// order, lexicographically.
pub(crate) fn canonical_cycles(vertices: &[u32]) -> Vec<Vec<u32>> {
    let (&first, rest) = vertices.split_first().expect("nonempty block");
    let mut out = Vec::new();
    let mut perm = rest.to_vec();
    loop {
        if perm.first() < perm.last() {
            let mut c = vec![first];
            c.extend_from_slice(&perm);
            out.push(c);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Block lists with all cycle choices expanded, streamed partition by
/// partition.
pub(crate) struct BlockFamilies {
    partitions: std::vec::IntoIter<Vec<Vec<u32>>>,
    options: Vec<Vec<Block>>,
    counter: Vec<usize>,
    exhausted: bool,
}

impl BlockFamilies {
    pub(crate) fn new(d: u32, singletons: bool) -> Self {
        BlockFamilies {
            partitions: block_partitions(d, singletons).into_iter(),
            options: Vec::new(),
            counter: Vec::new(),
            exhausted: true,
        }
    }

    fn load(&mut self, partition: Vec<Vec<u32>>) {
        self.options = partition
            .into_iter()
            .map(|b| match b.len() {
                1 => vec![Block { kind: BlockKind::Singleton, vertices: b }],
                2 => vec![Block { kind: BlockKind::IsolatedEdge, vertices: b }],
                _ => canonical_cycles(&b)
                    .into_iter()
                    .map(|c| Block { kind: BlockKind::OddCycle, vertices: c })
                    .collect(),
            })
            .collect();
        self.counter = vec![0; self.options.len()];
        self.exhausted = false;
    }
}

impl Iterator for BlockFamilies {
    type Item = Vec<Block>;

    fn next(&mut self) -> Option<Vec<Block>> {
        while self.exhausted {
            let p = self.partitions.next()?;
            self.load(p);
        }
        let out = self
            .counter
            .iter()
            .zip(&self.options)
            .map(|(&k, opts)| opts[k].clone())
            .collect();
        // odometer, last block fastest
        self.exhausted = true;
        for pos in (0..self.counter.len()).rev() {
            self.counter[pos] += 1;
            if self.counter[pos] < self.options[pos].len() {
                self.exhausted = false;
                break;
            }
            self.counter[pos] = 0;
        }
        Some(out)
    }
}

/// Every minimal balanced 2-subset family of `[d]` as a decomposition,
/// each exactly once.
pub fn minimal_decompositions(d: u32) -> Result<impl Iterator<Item = Theorem1Decomposition>> {
    if d < 2 {
        return Err(Error::input(format!(
            "no 2-subset family covers [{d}]; need d >= 2"
        )));
    }
    Ok(BlockFamilies::new(d, false).map(move |blocks| Theorem1Decomposition { d, blocks }))
}

/// Every minimal balanced 2-subset family of `[d]`, each exactly once.
///
/// Partitions of `[d]` into blocks of size 2 or odd size at least 3 come in a
/// fixed order (blocks sorted by smallest element); within a partition, each
/// odd block ranges over its `(m-1)!/2` cycles in canonical order.
pub fn generate_minimal_families(d: u32) -> Result<impl Iterator<Item = TwoSubsetFamily>> {
    Ok(minimal_decompositions(d)?.map(|dec| dec.family()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub d: u32,
    pub generated: usize,
    pub geometric: usize,
    pub subsets_examined: u64,
    /// Families the generator emitted that the geometric search missed.
    pub only_generated: Vec<TwoSubsetFamily>,
    /// Geometric minimal sets the generator never emitted.
    pub only_geometric: Vec<TwoSubsetFamily>,
    /// Generator emissions that repeated an earlier family.
    pub duplicates: usize,
}

impl VerificationReport {
    pub fn equal(&self) -> bool {
        self.only_generated.is_empty() && self.only_geometric.is_empty() && self.duplicates == 0
    }
}

/// Compares the generator's output with `BS(V_d)` pulled back through the
/// midpoint embedding.
pub fn verify_theorem1(d: u32, budget: Budget) -> Result<VerificationReport> {
    if d < 2 {
        return Err(Error::input(format!("verification needs d >= 2, got {d}")));
    }
    let (generated, geometric) = rayon::join(
        || -> Result<(BTreeSet<TwoSubsetFamily>, usize)> {
            let mut set = BTreeSet::new();
            let mut emitted = 0;
            for f in generate_minimal_families(d)? {
                emitted += 1;
                set.insert(f);
            }
            Ok((set, emitted))
        },
        || -> Result<(BTreeSet<TwoSubsetFamily>, u64)> {
            let complete = TwoSubsetFamily::complete(d)?;
            let pairs: Vec<Pair> = complete.pairs().collect();
            let vd = simplex_edge_midpoints(d)?;
            let catalog = enumerate_minimal_balanced(&vd, budget)?;
            let set = catalog
                .members()
                .map(|m| TwoSubsetFamily::new(d, m.indices().iter().map(|&k| pairs[k])))
                .collect::<Result<_>>()?;
            Ok((set, catalog.examined()))
        },
    );
    let (generated, emitted) = generated?;
    let (geometric, examined) = geometric?;
    Ok(VerificationReport {
        d,
        generated: generated.len(),
        geometric: geometric.len(),
        subsets_examined: examined,
        only_generated: generated.difference(&geometric).cloned().collect(),
        only_geometric: geometric.difference(&generated).cloned().collect(),
        duplicates: emitted - generated.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentBalance {
    pub component: Component,
    pub balanced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentBalanceReport {
    /// The family as a whole has no Shapley weights; nothing is claimed about
    /// its components.
    Unbalanced,
    Components(Vec<ComponentBalance>),
}

/// For a balanced family, checks each component of `G(S)` for balancedness on
/// its own vertex set (relabelled to `[n_i]`).
pub fn component_balance_check(family: &TwoSubsetFamily) -> Result<ComponentBalanceReport> {
    if family.is_empty() || shapley_weights(&family.to_subset_family()?).is_none() {
        return Ok(ComponentBalanceReport::Unbalanced);
    }
    let g = graph_of(family);
    let mut out = Vec::with_capacity(g.components.len());
    for comp in g.components {
        let relabel: BTreeMap<u32, u32> = comp
            .vertices
            .iter()
            .enumerate()
            .map(|(k, &v)| (v, k as u32 + 1))
            .collect();
        let local = TwoSubsetFamily::new(
            comp.vertices.len() as u32,
            comp.edges.iter().map(|(i, j)| (relabel[i], relabel[j])),
        )?;
        let balanced = shapley_weights(&local.to_subset_family()?).is_some();
        out.push(ComponentBalance {
            component: comp,
            balanced,
        });
    }
    Ok(ComponentBalanceReport::Components(out))
}
