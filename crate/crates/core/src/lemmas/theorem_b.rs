use std::collections::BTreeSet;

use super::complex::Triangulation;
use crate::enumeration::{enumerate_minimal_balanced, Budget, IndexSubset, MinimalBalancedCatalog};
use crate::error::{Error, Result};
use crate::geometry::{LabelMap, PointSet};

/// Outcome of a search for a cell whose colours contain a member of `BS(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremBOutcome {
    Witness { cell: usize, member: IndexSubset },
    /// No cell qualifies. The boundary hypothesis is not machine-checked, so
    /// this marks the labelling for review rather than refuting anything.
    NoWitness,
}

impl TheoremBOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, TheoremBOutcome::Witness { .. })
    }
}

/// `BS(V)` computed once, with the map from labels to points of `V`.
#[derive(Clone, Debug)]
pub struct TheoremB {
    catalog: MinimalBalancedCatalog,
    label_to_point: LabelMap,
}

impl TheoremB {
    pub fn new(v: &PointSet, label_to_point: LabelMap, budget: Budget) -> Result<Self> {
        if let Some((l, &i)) = label_to_point.iter().find(|(_, &i)| i >= v.len()) {
            return Err(Error::input(format!(
                "label {l} maps to point {i}, but V has {} points",
                v.len()
            )));
        }
        Ok(TheoremB {
            catalog: enumerate_minimal_balanced(v, budget)?,
            label_to_point,
        })
    }

    pub fn catalog(&self) -> &MinimalBalancedCatalog {
        &self.catalog
    }

    /// The first cell (in cell order) whose colour set contains a member of
    /// `BS(V)`, paired with the first such member in catalog order.
    pub fn witness(&self, t: &Triangulation, labels: &[i32]) -> Result<TheoremBOutcome> {
        if labels.len() != t.num_vertices() {
            return Err(Error::input("label count does not match the vertices"));
        }
        for (k, cell) in t.cells().iter().enumerate() {
            let colours = cell
                .iter()
                .map(|&v| {
                    self.label_to_point.get(&labels[v]).copied().ok_or_else(|| {
                        Error::input(format!("label {} has no point in V", labels[v]))
                    })
                })
                .collect::<Result<BTreeSet<usize>>>()?;
            let colours: Vec<usize> = colours.into_iter().collect();
            if let Some(m) = self.catalog.members().find(|m| m.is_subset_of_indices(&colours)) {
                return Ok(TheoremBOutcome::Witness {
                    cell: k,
                    member: m.clone(),
                });
            }
        }
        Ok(TheoremBOutcome::NoWitness)
    }
}

/// One-shot form of [`TheoremB::witness`].
pub fn theorem_b_witness(
    v: &PointSet,
    t: &Triangulation,
    labels: &[i32],
    label_to_point: LabelMap,
    budget: Budget,
) -> Result<TheoremBOutcome> {
    TheoremB::new(v, label_to_point, budget)?.witness(t, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{cross_polytope, signed_simplex, Point};
    use crate::lemmas::generate::{generate_disc_triangulation, DiscKind};
    use crate::rational::int;

    #[test]
    fn tucker_instance_witness_is_antipodal_pair() {
        let (v, map) = cross_polytope(2).unwrap();
        let t = generate_disc_triangulation(DiscKind::SymmetricDisc { boundary: 4, interior: 1 })
            .unwrap()
            .triangulation;
        // centre labelled +1 makes the edge to boundary vertex 2 (-1) complementary
        let labels = [1, 2, -1, -2, 1];
        let out = theorem_b_witness(&v, &t, &labels, map.clone(), Budget::default()).unwrap();
        let TheoremBOutcome::Witness { cell, member } = out else { panic!("no witness") };
        let pair: BTreeSet<usize> = [map[&1], map[&-1]].into();
        assert_eq!(member.indices().iter().copied().collect::<BTreeSet<_>>(), pair);
        let cell_labels: BTreeSet<i32> = t.cells()[cell].iter().map(|&x| labels[x]).collect();
        assert!(cell_labels.contains(&1) && cell_labels.contains(&-1));
    }

    #[test]
    fn signed_simplex_witness() {
        let (v, map) = signed_simplex(3).unwrap();
        let t = generate_disc_triangulation(DiscKind::SubdividedSimplex { dim: 2, k: 1 })
            .unwrap()
            .triangulation;
        let out = theorem_b_witness(&v, &t, &[1, 2, 3], map.clone(), Budget::default()).unwrap();
        match out {
            TheoremBOutcome::Witness { cell: 0, member } => assert_eq!(member.len(), 3),
            other => panic!("{other:?}"),
        }
        let out = theorem_b_witness(&v, &t, &[1, 2, -3], map, Budget::default()).unwrap();
        assert_eq!(out, TheoremBOutcome::NoWitness);
    }

    #[test]
    fn single_simplex_full_balanced_set() {
        let v = PointSet::new(vec![
            Point::new(vec![int(1), int(0)]),
            Point::new(vec![int(0), int(1)]),
            Point::new(vec![int(-1), int(-1)]),
        ])
        .unwrap();
        let map: LabelMap = [(1, 0), (2, 1), (3, 2)].into();
        let t = generate_disc_triangulation(DiscKind::SubdividedSimplex { dim: 2, k: 1 })
            .unwrap()
            .triangulation;
        let out = theorem_b_witness(&v, &t, &[1, 2, 3], map.clone(), Budget::default()).unwrap();
        assert!(out.is_witness());
        assert!(theorem_b_witness(&v, &t, &[1, 2, 4], map, Budget::default()).is_err());
    }
}
