use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};

/// A triangulated disc: maximal cells of one dimension, the boundary, and an
/// optional antipodal involution of the boundary.
///
/// Vertices carry arbitrary external ids; internally they are numbered
/// `0..n` in the order given. Validation on construction: every cell has
/// `dim + 1` distinct known vertices, cells are distinct, every vertex lies in
/// a cell, each codimension-1 face lies in one or two cells, the declared
/// boundary is exactly the vertex set of the faces lying in one cell, and the
/// antipode is a fixed-point-free involution of the boundary that carries
/// boundary faces to boundary faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    dim: usize,
    ids: Vec<u32>,
    cells: Vec<Vec<usize>>,
    boundary: BTreeSet<usize>,
    antipode: Option<Vec<Option<usize>>>,
    edges: Vec<(usize, usize)>,
}

impl Triangulation {
    pub fn new(
        dim: usize,
        ids: Vec<u32>,
        cells: Vec<Vec<u32>>,
        boundary: Vec<u32>,
        antipode: Option<Vec<(u32, u32)>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("disc dimension must be at least 1"));
        }
        let mut index = HashMap::with_capacity(ids.len());
        for (k, &id) in ids.iter().enumerate() {
            if index.insert(id, k).is_some() {
                return Err(Error::input(format!("vertex {id} listed twice")));
            }
        }
        let lookup = |id: u32| -> Result<usize> {
            index
                .get(&id)
                .copied()
                .ok_or_else(|| Error::input(format!("unknown vertex {id}")))
        };

        if cells.is_empty() {
            return Err(Error::input("complex has no cells"));
        }
        let mut dense_cells = Vec::with_capacity(cells.len());
        let mut seen_cells = BTreeSet::new();
        for cell in &cells {
            let mut c = cell.iter().map(|&id| lookup(id)).collect::<Result<Vec<_>>>()?;
            c.sort_unstable();
            c.dedup();
            if c.len() != dim + 1 || cell.len() != dim + 1 {
                return Err(Error::input(format!(
                    "cell {cell:?} does not have {} distinct vertices",
                    dim + 1
                )));
            }
            if !seen_cells.insert(c.clone()) {
                return Err(Error::input(format!("cell {cell:?} listed twice")));
            }
            dense_cells.push(c);
        }
        let mut used = vec![false; ids.len()];
        for &v in dense_cells.iter().flatten() {
            used[v] = true;
        }
        if let Some(k) = used.iter().position(|u| !u) {
            return Err(Error::input(format!("vertex {} lies in no cell", ids[k])));
        }

        let mut faces: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for c in &dense_cells {
            for skip in 0..c.len() {
                let face: Vec<usize> = c
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                *faces.entry(face).or_default() += 1;
            }
        }
        if let Some((f, n)) = faces.iter().find(|(_, &n)| n > 2) {
            let f: Vec<u32> = f.iter().map(|&v| ids[v]).collect();
            return Err(Error::input(format!("face {f:?} lies in {n} cells")));
        }
        let boundary_faces: BTreeSet<Vec<usize>> = faces
            .into_iter()
            .filter(|&(_, n)| n == 1)
            .map(|(f, _)| f)
            .collect();
        let computed: BTreeSet<usize> = boundary_faces.iter().flatten().copied().collect();
        let declared = boundary.iter().map(|&id| lookup(id)).collect::<Result<BTreeSet<_>>>()?;
        if declared != computed {
            let want: Vec<u32> = computed.iter().map(|&v| ids[v]).collect();
            return Err(Error::input(format!(
                "declared boundary does not match the complex; expected {want:?}"
            )));
        }

        let antipode = match antipode {
            None => None,
            Some(pairs) => {
                let mut map: Vec<Option<usize>> = vec![None; ids.len()];
                for (a, b) in pairs {
                    let (x, y) = (lookup(a)?, lookup(b)?);
                    if x == y {
                        return Err(Error::input(format!("antipode fixes vertex {a}")));
                    }
                    for v in [x, y] {
                        if !declared.contains(&v) {
                            return Err(Error::input(format!(
                                "antipodal vertex {} is not on the boundary",
                                ids[v]
                            )));
                        }
                        if map[v].is_some() {
                            return Err(Error::input(format!(
                                "vertex {} appears in two antipodal pairs",
                                ids[v]
                            )));
                        }
                    }
                    map[x] = Some(y);
                    map[y] = Some(x);
                }
                if let Some(&v) = declared.iter().find(|&&v| map[v].is_none()) {
                    return Err(Error::input(format!(
                        "boundary vertex {} has no antipode",
                        ids[v]
                    )));
                }
                for f in &boundary_faces {
                    let mut image: Vec<usize> = f.iter().map(|&v| map[v].unwrap()).collect();
                    image.sort_unstable();
                    if !boundary_faces.contains(&image) {
                        let f: Vec<u32> = f.iter().map(|&v| ids[v]).collect();
                        return Err(Error::input(format!(
                            "antipode of boundary face {f:?} is not a boundary face"
                        )));
                    }
                }
                Some(map)
            }
        };

        let mut edges = BTreeSet::new();
        for c in &dense_cells {
            for a in 0..c.len() {
                for b in a + 1..c.len() {
                    edges.insert((c[a], c[b]));
                }
            }
        }

        Ok(Triangulation {
            dim,
            ids,
            cells: dense_cells,
            boundary: declared,
            antipode,
            edges: edges.into_iter().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }

    pub fn id(&self, v: usize) -> u32 {
        self.ids[v]
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    /// Cells as sorted internal vertex indices.
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_ids(&self, c: usize) -> Vec<u32> {
        self.cells[c].iter().map(|&v| self.ids[v]).collect()
    }

    pub fn boundary(&self) -> &BTreeSet<usize> {
        &self.boundary
    }

    pub fn antipode(&self, v: usize) -> Option<usize> {
        self.antipode.as_ref().and_then(|m| m[v])
    }

    pub fn has_antipode(&self) -> bool {
        self.antipode.is_some()
    }

    /// All 1-faces `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// A triangulation with an integer label on every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledComplex {
    pub triangulation: Triangulation,
    /// Indexed by internal vertex number.
    pub labels: Vec<i32>,
}

impl LabeledComplex {
    pub fn new(triangulation: Triangulation, labels: Vec<i32>) -> Result<Self> {
        if labels.len() != triangulation.num_vertices() {
            return Err(Error::input(format!(
                "{} labels for {} vertices",
                labels.len(),
                triangulation.num_vertices()
            )));
        }
        Ok(LabeledComplex {
            triangulation,
            labels,
        })
    }

    /// Labels keyed by external vertex id.
    pub fn from_id_labels(triangulation: Triangulation, by_id: &BTreeMap<u32, i32>) -> Result<Self> {
        let labels = triangulation
            .ids()
            .iter()
            .map(|id| {
                by_id
                    .get(id)
                    .copied()
                    .ok_or_else(|| Error::input(format!("vertex {id} has no label")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(triangulation, labels)
    }
}

/// For each vertex of a subdivided simplex, the corners (numbered `1..=dim+1`)
/// spanning the smallest face that contains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carriers(pub Vec<Vec<i32>>);

impl Carriers {
    pub fn of(&self, v: usize) -> &[i32] {
        &self.0[v]
    }
}

/// A set of distinct nonzero signed labels with magnitudes at most `palette`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedLabelSet {
    labels: BTreeSet<i32>,
}

impl SignedLabelSet {
    pub fn new(labels: &[i32], palette: usize) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &l in labels {
            if l == 0 {
                return Err(Error::input("0 is not a signed label"));
            }
            if l.unsigned_abs() as usize > palette {
                return Err(Error::input(format!("label {l} exceeds palette {palette}")));
            }
            if !set.insert(l) {
                return Err(Error::input(format!("label {l} repeated")));
            }
        }
        Ok(SignedLabelSet { labels: set })
    }

    /// A set holding exactly one label of each magnitude `1..=d`.
    pub fn one_per_magnitude(labels: &[i32]) -> Result<Self> {
        let d = labels.len();
        let set = Self::new(labels, d)?;
        let mags: BTreeSet<u32> = set.labels.iter().map(|l| l.unsigned_abs()).collect();
        if mags.len() != d {
            return Err(Error::input(format!(
                "{labels:?} must hold one label of each magnitude 1..={d}"
            )));
        }
        Ok(set)
    }

    pub fn labels(&self) -> &BTreeSet<i32> {
        &self.labels
    }

    pub fn negated(&self) -> SignedLabelSet {
        SignedLabelSet {
            labels: self.labels.iter().map(|l| -l).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_fan() -> Triangulation {
        // square 0-1-2-3 around centre 4
        Triangulation::new(
            2,
            vec![0, 1, 2, 3, 4],
            vec![vec![4, 0, 1], vec![4, 1, 2], vec![4, 2, 3], vec![4, 3, 0]],
            vec![0, 1, 2, 3],
            Some(vec![(0, 2), (1, 3)]),
        )
        .unwrap()
    }

    #[test]
    fn valid_square() {
        let t = square_fan();
        assert_eq!(t.edges().len(), 8);
        assert_eq!(t.antipode(0), Some(2));
        assert_eq!(t.antipode(4), None);
    }

    #[test]
    fn rejects_malformed_complexes() {
        let cells = vec![vec![4, 0, 1], vec![4, 1, 2], vec![4, 2, 3], vec![4, 3, 0]];
        let mk = |cells: Vec<Vec<u32>>, boundary: Vec<u32>, anti: Option<Vec<(u32, u32)>>| {
            Triangulation::new(2, vec![0, 1, 2, 3, 4], cells, boundary, anti)
        };
        // wrong boundary
        assert!(mk(cells.clone(), vec![0, 1, 2], None).is_err());
        // centre is not a boundary vertex
        assert!(mk(cells.clone(), vec![0, 1, 2, 3, 4], None).is_err());
        // antipode with a fixed point / non-involution / wrong faces
        assert!(mk(cells.clone(), vec![0, 1, 2, 3], Some(vec![(0, 0), (1, 3)])).is_err());
        assert!(mk(cells.clone(), vec![0, 1, 2, 3], Some(vec![(0, 2), (2, 1)])).is_err());
        assert!(mk(cells.clone(), vec![0, 1, 2, 3], Some(vec![(0, 1), (2, 3)])).is_ok());
        assert!(mk(cells.clone(), vec![0, 1, 2, 3], Some(vec![(0, 2)])).is_err());
        // a cell of the wrong size, a repeated vertex, a repeated cell
        let mut bad = cells.clone();
        bad[0] = vec![4, 0];
        assert!(mk(bad, vec![0, 1, 2, 3], None).is_err());
        let mut bad = cells.clone();
        bad[0] = vec![4, 0, 0];
        assert!(mk(bad, vec![0, 1, 2, 3], None).is_err());
        let mut bad = cells.clone();
        bad.push(vec![0, 1, 4]);
        assert!(mk(bad, vec![0, 1, 2, 3], None).is_err());
        // three cells on one edge
        let t = Triangulation::new(2, vec![0, 1, 2, 3, 4], vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]], vec![0, 1, 2, 3, 4], None);
        assert!(t.is_err());
    }

    #[test]
    fn antipode_must_map_boundary_faces() {
        // hexagon fan; pairing 0<->3, 1<->5, 2<->4 is an involution but sends
        // the boundary edge (0,1) to (3,5), which is not an edge
        let cells: Vec<Vec<u32>> = (0..6).map(|i| vec![6, i, (i + 1) % 6]).collect();
        let t = Triangulation::new(2, (0..7).collect(), cells.clone(), (0..6).collect(), Some(vec![(0, 3), (1, 5), (2, 4)]));
        assert!(t.is_err());
        let t = Triangulation::new(2, (0..7).collect(), cells, (0..6).collect(), Some(vec![(0, 3), (1, 4), (2, 5)]));
        assert!(t.is_ok());
    }

    #[test]
    fn label_sets() {
        assert!(SignedLabelSet::one_per_magnitude(&[1, -2]).is_ok());
        assert!(SignedLabelSet::one_per_magnitude(&[1, 1]).is_err());
        assert!(SignedLabelSet::one_per_magnitude(&[1, -1]).is_err());
        assert!(SignedLabelSet::one_per_magnitude(&[1, 3]).is_err());
        assert!(SignedLabelSet::new(&[0], 2).is_err());
        let s = SignedLabelSet::one_per_magnitude(&[1, -2, 3]).unwrap();
        assert_eq!(s.negated().labels().iter().copied().collect::<Vec<_>>(), vec![-3, -1, 2]);
    }

    #[test]
    fn labels_by_id() {
        let t = square_fan();
        let by_id: BTreeMap<u32, i32> = [(0, 1), (1, 2), (2, -1), (3, -2), (4, 1)].into();
        let lc = LabeledComplex::from_id_labels(t.clone(), &by_id).unwrap();
        assert_eq!(lc.labels, vec![1, 2, -1, -2, 1]);
        let missing: BTreeMap<u32, i32> = [(0, 1)].into();
        assert!(LabeledComplex::from_id_labels(t, &missing).is_err());
    }
}
