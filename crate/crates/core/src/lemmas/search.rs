//! Searches for the cells and edges promised by the Sperner, Tucker, Ky Fan
//! and Shashkin lemmas.

use std::collections::BTreeSet;

use super::complex::{Carriers, SignedLabelSet, Triangulation};
use crate::error::{Error, Result};

/// Cells found by a search, as indices into the triangulation's cell list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellCount {
    pub cells: Vec<usize>,
}

impl CellCount {
    pub fn count(&self) -> usize {
        self.cells.len()
    }

    pub fn is_odd(&self) -> bool {
        self.cells.len() % 2 == 1
    }
}

fn check_len(t: &Triangulation, labels: &[i32]) -> Result<()> {
    if labels.len() != t.num_vertices() {
        return Err(Error::input(format!(
            "{} labels for {} vertices",
            labels.len(),
            t.num_vertices()
        )));
    }
    Ok(())
}

/// True iff each vertex's label is a corner of its carrier face.
pub fn check_sperner_admissible(t: &Triangulation, labels: &[i32], carriers: &Carriers) -> Result<bool> {
    check_len(t, labels)?;
    if carriers.0.len() != t.num_vertices() {
        return Err(Error::input("carrier list does not match the vertices"));
    }
    let palette = t.dim() as i32 + 1;
    if let Some(v) = labels.iter().position(|l| !(1..=palette).contains(l)) {
        return Err(Error::input(format!(
            "vertex {} has label {}, outside 1..={palette}",
            t.id(v),
            labels[v]
        )));
    }
    Ok(labels
        .iter()
        .enumerate()
        .all(|(v, l)| carriers.of(v).contains(l)))
}

/// Cells whose `dim + 1` vertices carry pairwise distinct labels.
pub fn find_rainbow_cells(t: &Triangulation, labels: &[i32]) -> CellCount {
    let cells = t
        .cells()
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            let distinct: BTreeSet<i32> = c.iter().map(|&v| labels[v]).collect();
            distinct.len() == c.len()
        })
        .map(|(k, _)| k)
        .collect();
    CellCount { cells }
}

/// True iff `L(-v) = -L(v)` on every boundary vertex.
pub fn check_antipodal_labeling(t: &Triangulation, labels: &[i32]) -> Result<bool> {
    check_len(t, labels)?;
    if !t.has_antipode() {
        return Err(Error::input("complex has no antipodal involution"));
    }
    Ok(t.boundary()
        .iter()
        .all(|&v| labels[t.antipode(v).unwrap()] == -labels[v]))
}

/// Edges `[u, v]` with `L(u) = -L(v)`.
pub fn find_complementary_edges(t: &Triangulation, labels: &[i32]) -> Vec<(usize, usize)> {
    t.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| labels[u] == -labels[v] && labels[u] != 0)
        .collect()
}

fn signed_labels(t: &Triangulation, labels: &[i32], n: usize) -> Result<()> {
    check_len(t, labels)?;
    if let Some(v) = labels
        .iter()
        .position(|&l| l == 0 || l.unsigned_abs() as usize > n)
    {
        return Err(Error::input(format!(
            "vertex {} has label {}, outside +-1..=+-{n}",
            t.id(v),
            labels[v]
        )));
    }
    Ok(())
}

fn forbid_complementary(t: &Triangulation, labels: &[i32]) -> Result<()> {
    if let Some(&(u, v)) = find_complementary_edges(t, labels).first() {
        return Err(Error::precondition(format!(
            "complementary edge [{}, {}] labelled {} / {}",
            t.id(u),
            t.id(v),
            labels[u],
            labels[v]
        )));
    }
    Ok(())
}

/// True when the labels, sorted by magnitude, have strictly increasing
/// magnitudes and strictly alternating signs (either starting sign).
pub fn is_alternating(cell_labels: &[i32]) -> bool {
    let mut ls = cell_labels.to_vec();
    ls.sort_unstable_by_key(|l| l.unsigned_abs());
    ls.windows(2)
        .all(|w| w[0].unsigned_abs() < w[1].unsigned_abs() && w[0].signum() != w[1].signum())
}

/// Alternating cells of a labelling with palette `+-1..=+-n` and no
/// complementary edges.
pub fn find_alternating_simplices(t: &Triangulation, labels: &[i32], n: usize) -> Result<CellCount> {
    signed_labels(t, labels, n)?;
    forbid_complementary(t, labels)?;
    let cells = t
        .cells()
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            let ls: Vec<i32> = c.iter().map(|&v| labels[v]).collect();
            is_alternating(&ls)
        })
        .map(|(k, _)| k)
        .collect();
    Ok(CellCount { cells })
}

/// Cells whose label set is `lambda` or `-lambda`, on a `(d-1)`-disc labelled
/// from `+-1..=+-d` without complementary edges.
pub fn find_shashkin_cells(t: &Triangulation, labels: &[i32], lambda: &SignedLabelSet) -> Result<CellCount> {
    let d = t.dim() + 1;
    let mags: BTreeSet<usize> = lambda.labels().iter().map(|l| l.unsigned_abs() as usize).collect();
    if lambda.len() != d || mags != (1..=d).collect() {
        return Err(Error::input(format!(
            "label set {:?} must hold one label of each magnitude 1..={d}",
            lambda.labels()
        )));
    }
    signed_labels(t, labels, d)?;
    forbid_complementary(t, labels)?;
    let neg = lambda.negated();
    let cells = t
        .cells()
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            let set: BTreeSet<i32> = c.iter().map(|&v| labels[v]).collect();
            &set == lambda.labels() || &set == neg.labels()
        })
        .map(|(k, _)| k)
        .collect();
    Ok(CellCount { cells })
}

/// Default cap on the size of an exhaustive labelling space.
pub const MAX_LABELINGS: u128 = 10_000_000;

/// Odometer over labellings: `free[k]` lists the choices of vertex
/// `slots[k]`, and each `(target, source)` in `mirrors` sets
/// `L(target) = -L(source)`.
#[derive(Clone, Debug)]
pub struct Labelings {
    slots: Vec<usize>,
    free: Vec<Vec<i32>>,
    mirrors: Vec<(usize, usize)>,
    counter: Vec<usize>,
    labels: Vec<i32>,
    done: bool,
}

impl Labelings {
    fn new(n: usize, slots: Vec<usize>, free: Vec<Vec<i32>>, mirrors: Vec<(usize, usize)>) -> Result<Self> {
        let size: u128 = free.iter().map(|c| c.len() as u128).product();
        if size > MAX_LABELINGS {
            return Err(Error::input(format!(
                "labelling space of size {size} exceeds the cap of {MAX_LABELINGS}"
            )));
        }
        let done = free.iter().any(Vec::is_empty);
        let mut it = Labelings {
            counter: vec![0; slots.len()],
            slots,
            free,
            mirrors,
            labels: vec![0; n],
            done,
        };
        if !done {
            it.apply();
        }
        Ok(it)
    }

    /// Number of labellings the odometer will produce.
    pub fn size(&self) -> u128 {
        self.free.iter().map(|c| c.len() as u128).product()
    }

    fn apply(&mut self) {
        for (k, &v) in self.slots.iter().enumerate() {
            self.labels[v] = self.free[k][self.counter[k]];
        }
        for &(t, s) in &self.mirrors {
            self.labels[t] = -self.labels[s];
        }
    }

    /// Every Sperner-admissible labelling of a subdivided simplex.
    pub fn sperner(t: &Triangulation, carriers: &Carriers) -> Result<Self> {
        let slots = (0..t.num_vertices()).collect();
        Self::new(t.num_vertices(), slots, carriers.0.clone(), Vec::new())
    }

    /// Every labelling from `+-1..=+-palette` that is antipodal on the boundary.
    pub fn antipodal(t: &Triangulation, palette: usize) -> Result<Self> {
        if !t.has_antipode() {
            return Err(Error::input("complex has no antipodal involution"));
        }
        let p = palette as i32;
        let choices: Vec<i32> = (1..=p).flat_map(|l| [l, -l]).collect();
        let mut slots = Vec::new();
        let mut mirrors = Vec::new();
        for v in 0..t.num_vertices() {
            match t.antipode(v) {
                Some(a) if a < v => mirrors.push((v, a)),
                _ => slots.push(v),
            }
        }
        let free = vec![choices; slots.len()];
        Self::new(t.num_vertices(), slots, free, mirrors)
    }
}

impl Iterator for Labelings {
    type Item = Vec<i32>;

    fn next(&mut self) -> Option<Vec<i32>> {
        if self.done {
            return None;
        }
        let out = self.labels.clone();
        self.done = true;
        for k in (0..self.counter.len()).rev() {
            self.counter[k] += 1;
            if self.counter[k] < self.free[k].len() {
                self.done = false;
                break;
            }
            self.counter[k] = 0;
        }
        if !self.done {
            self.apply();
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lemmas::generate::{generate_disc_triangulation, DiscKind};

    fn single_triangle() -> (Triangulation, Carriers) {
        let g = generate_disc_triangulation(DiscKind::SubdividedSimplex { dim: 2, k: 1 }).unwrap();
        (g.triangulation, g.carriers.unwrap())
    }

    fn square() -> Triangulation {
        // boundary 0,1,2,3 with 0<->2, 1<->3, fan from centre 4
        generate_disc_triangulation(DiscKind::SymmetricDisc { boundary: 4, interior: 1 })
            .unwrap()
            .triangulation
    }

    fn path(m: usize) -> Triangulation {
        generate_disc_triangulation(DiscKind::Path { edges: m }).unwrap().triangulation
    }

    #[test]
    fn sperner_examples() {
        let (t, c) = single_triangle();
        assert!(check_sperner_admissible(&t, &[1, 2, 3], &c).unwrap());
        assert_eq!(find_rainbow_cells(&t, &[1, 2, 3]).cells, vec![0]);
        assert!(find_rainbow_cells(&t, &[1, 1, 1]).cells.is_empty());
        assert!(check_sperner_admissible(&t, &[1, 2, 4], &c).is_err());

        let g = generate_disc_triangulation(DiscKind::SubdividedSimplex { dim: 2, k: 2 }).unwrap();
        let (t, c) = (g.triangulation, g.carriers.unwrap());
        // a valid labelling: each vertex takes its smallest carrier corner
        let labels: Vec<i32> = c.0.iter().map(|cs| cs[0]).collect();
        assert!(check_sperner_admissible(&t, &labels, &c).unwrap());
        assert!(find_rainbow_cells(&t, &labels).is_odd());
        // a vertex on the facet spanned by corners 1 and 2 labelled 3
        let v = c.0.iter().position(|cs| cs == &vec![1, 2]).unwrap();
        let mut bad = labels.clone();
        bad[v] = 3;
        assert!(!check_sperner_admissible(&t, &bad, &c).unwrap());
    }

    #[test]
    fn antipodal_examples() {
        let t = square();
        assert!(check_antipodal_labeling(&t, &[1, 2, -1, -2, 1]).unwrap());
        assert!(!check_antipodal_labeling(&t, &[1, 2, 1, -2, 1]).unwrap());
        let p = path(3);
        assert!(check_antipodal_labeling(&p, &[1, 2, 2, -1]).unwrap());
        let (tri, _) = single_triangle();
        assert!(check_antipodal_labeling(&tri, &[1, 2, 3]).is_err());
    }

    #[test]
    fn complementary_edge_examples() {
        let p = path(1);
        assert_eq!(find_complementary_edges(&p, &[1, -1]), vec![(0, 1)]);
        // palette +-3 lets a 2-disc avoid complements: boundary 1,2,-1,-2
        // around a centre labelled 3
        let t = square();
        assert!(find_complementary_edges(&t, &[1, 2, -1, -2, 3]).is_empty());
    }

    #[test]
    fn alternating_examples() {
        let p = path(1);
        let r = find_alternating_simplices(&p, &[1, -2], 2).unwrap();
        assert_eq!(r.count(), 1);
        assert!(r.is_odd());
        assert!(!is_alternating(&[1, 2, 3]));
        assert!(is_alternating(&[2, -1, -3]));
        assert!(is_alternating(&[-1, 2, -3]));
        assert!(!is_alternating(&[1, -1]));
        let err = find_alternating_simplices(&p, &[2, -2], 2).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("[0, 1]")), "{err}");
        assert!(find_alternating_simplices(&p, &[1, 3], 2).is_err());
    }

    #[test]
    fn shashkin_examples() {
        let p = path(1);
        let lambda = SignedLabelSet::one_per_magnitude(&[1, 2]).unwrap();
        assert_eq!(find_shashkin_cells(&p, &[1, -2], &lambda).unwrap().count(), 0);
        assert_eq!(find_shashkin_cells(&p, &[-1, -2], &lambda).unwrap().count(), 1);
        let lambda3 = SignedLabelSet::one_per_magnitude(&[1, 2, 3]).unwrap();
        assert!(find_shashkin_cells(&p, &[1, 2], &lambda3).is_err());
        assert!(find_shashkin_cells(&p, &[1, -1], &lambda).is_err());
    }

    #[test]
    fn labeling_odometers() {
        let (t, c) = single_triangle();
        assert_eq!(Labelings::sperner(&t, &c).unwrap().count(), 1);
        let p = path(2);
        let all: Vec<Vec<i32>> = Labelings::antipodal(&p, 1).unwrap().collect();
        // endpoint orbit and the middle vertex each take +-1
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|l| l[2] == -l[0]));
        let big = generate_disc_triangulation(DiscKind::SymmetricDisc { boundary: 8, interior: 2 }).unwrap();
        assert_eq!(Labelings::antipodal(&big.triangulation, 2).unwrap().size(), 4u128.pow(6));
        assert!(Labelings::antipodal(&big.triangulation, 40).is_err());
    }
}
