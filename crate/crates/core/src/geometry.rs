//! Exact points, convex-hull membership and Shapley weight systems.

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::family::{SubsetFamily, TwoSubsetFamily};
use crate::lp::EqualitySystem;
use crate::rational::{frac, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn neg(&self) -> Point {
        Point(self.0.iter().map(|c| -c.clone()).collect())
    }
}

impl From<Vec<Rational>> for Point {
    fn from(v: Vec<Rational>) -> Self {
        Point(v)
    }
}

/// A nonempty list of distinct points of one common dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
    labels: Option<Vec<String>>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        Self::build(points, None)
    }

    pub fn with_labels(points: Vec<Point>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != points.len() {
            return Err(Error::input(format!(
                "{} labels for {} points",
                labels.len(),
                points.len()
            )));
        }
        Self::build(points, Some(labels))
    }

    fn build(points: Vec<Point>, labels: Option<Vec<String>>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::input("point set is empty"))?;
        let dim = first.dim();
        let mut seen = HashSet::new();
        for (k, p) in points.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::input(format!(
                    "point {k} has dimension {}, expected {dim}",
                    p.dim()
                )));
            }
            if !seen.insert(p) {
                return Err(Error::input(format!("point {k} is a duplicate")));
            }
        }
        Ok(PointSet { points, labels })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    /// Exact coordinatewise average.
    pub fn centroid(&self) -> Point {
        let mut sum = vec![Rational::zero(); self.dim()];
        for p in &self.points {
            for (s, c) in sum.iter_mut().zip(p.coords()) {
                *s += c;
            }
        }
        let n = int(self.points.len() as i64);
        Point(sum.into_iter().map(|s| s / &n).collect())
    }

    /// Dimension of the affine hull: the rank of `{p_k - p_0}`.
    pub fn affine_dimension(&self) -> usize {
        let base = &self.points[0];
        let rows = self.points[1..]
            .iter()
            .map(|p| {
                p.coords()
                    .iter()
                    .zip(base.coords())
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        rank(rows)
    }
}

/// Rank of a rational matrix by exact Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (top, rest) = rows.split_at_mut(r + 1);
        let pivot = &top[r];
        for row in rest.iter_mut().filter(|row| !row[c].is_zero()) {
            let f = &row[c] / &pivot[c];
            for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x -= &f * p;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessForm {
    /// Convex weights on generator points reproducing a target point.
    ConvexCombination,
    /// Weights on sets whose weighted indicator vectors sum to all-ones.
    ShapleyCover,
}

/// Nonnegative weights certifying balancedness, one per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedWitness {
    pub weights: Vec<Rational>,
    pub form: WitnessForm,
}

impl BalancedWitness {
    /// Exact re-check of a `ConvexCombination` witness.
    pub fn verifies_convex(&self, target: &Point, generators: &[&Point]) -> bool {
        self.form == WitnessForm::ConvexCombination
            && self.weights.len() == generators.len()
            && self.weights.iter().all(|w| !w.is_negative())
            && self.weights.iter().sum::<Rational>().is_one()
            && weighted_sum(&self.weights, generators, target.dim()) == *target
    }

    /// Exact re-check of a `ShapleyCover` witness.
    pub fn verifies_shapley(&self, family: &SubsetFamily) -> bool {
        if self.form != WitnessForm::ShapleyCover
            || self.weights.len() != family.len()
            || self.weights.iter().any(|w| w.is_negative())
        {
            return false;
        }
        let mut cover = vec![Rational::zero(); family.d() as usize];
        for (w, m) in self.weights.iter().zip(family.members()) {
            for &e in m {
                cover[(e - 1) as usize] += w;
            }
        }
        cover.iter().all(One::is_one)
    }
}

fn weighted_sum(weights: &[Rational], points: &[&Point], dim: usize) -> Point {
    let mut acc = vec![Rational::zero(); dim];
    for (w, p) in weights.iter().zip(points) {
        for (a, c) in acc.iter_mut().zip(p.coords()) {
            *a += w * c;
        }
    }
    Point(acc)
}

/// Decides whether `target` lies in the convex hull of `generators`, returning
/// exact convex weights when it does.
pub fn convex_membership(target: &Point, generators: &[&Point]) -> Result<Option<BalancedWitness>> {
    if generators.is_empty() {
        return Err(Error::input("no generators"));
    }
    let dim = target.dim();
    if let Some(k) = generators.iter().position(|g| g.dim() != dim) {
        return Err(Error::input(format!(
            "generator {k} has dimension {}, target has {dim}",
            generators[k].dim()
        )));
    }
    let mut sys = EqualitySystem::new(generators.len());
    for c in 0..dim {
        let row = generators.iter().map(|g| g.coords()[c].clone()).collect();
        sys.push_row(row, target.coords()[c].clone());
    }
    sys.push_row(vec![Rational::one(); generators.len()], Rational::one());
    Ok(sys.solve().map(|weights| BalancedWitness {
        weights,
        form: WitnessForm::ConvexCombination,
    }))
}

/// Solves `sum_k w_k * indicator(S_k) = (1, ..., 1)` with `w >= 0`.
pub fn shapley_weights(family: &SubsetFamily) -> Option<BalancedWitness> {
    let d = family.d() as usize;
    let mut sys = EqualitySystem::new(family.len());
    for e in 1..=d as u32 {
        let row = family
            .members()
            .iter()
            .map(|m| if m.contains(&e) { Rational::one() } else { Rational::zero() })
            .collect();
        sys.push_row(row, Rational::one());
    }
    sys.solve().map(|weights| BalancedWitness {
        weights,
        form: WitnessForm::ShapleyCover,
    })
}

/// Maps each pair `(i, j)` to `(e_i + e_j) / 2`, in the family's canonical order.
pub fn midpoint_embedding(family: &TwoSubsetFamily) -> Result<PointSet> {
    let d = family.d() as usize;
    let half = frac(1, 2);
    let mut points = Vec::with_capacity(family.len());
    let mut labels = Vec::with_capacity(family.len());
    for (i, j) in family.pairs() {
        let mut c = vec![Rational::zero(); d];
        c[(i - 1) as usize] = half.clone();
        c[(j - 1) as usize] = half.clone();
        points.push(Point(c));
        labels.push(format!("e{i}{j}"));
    }
    PointSet::with_labels(points, labels)
}

/// `V_d`: the midpoints of all edges of the standard simplex in `R^d`.
pub fn simplex_edge_midpoints(d: u32) -> Result<PointSet> {
    midpoint_embedding(&TwoSubsetFamily::complete(d)?)
}

/// The centroid `(1/d, ..., 1/d)` of `V_d`.
pub fn hyperplane_center(d: u32) -> Point {
    Point(vec![frac(1, d as i64); d as usize])
}

/// Converts a Shapley cover of a 2-subset family into convex weights on its
/// midpoint embedding: `lambda_k = 2 w_k / d`.
pub fn shapley_to_convex(witness: &BalancedWitness, d: u32) -> BalancedWitness {
    let scale = frac(2, d as i64);
    BalancedWitness {
        weights: witness.weights.iter().map(|w| w * &scale).collect(),
        form: WitnessForm::ConvexCombination,
    }
}

/// `lambda_k -> w_k = d lambda_k / 2`, the inverse of [`shapley_to_convex`].
pub fn convex_to_shapley(witness: &BalancedWitness, d: u32) -> BalancedWitness {
    let scale = frac(d as i64, 2);
    BalancedWitness {
        weights: witness.weights.iter().map(|w| w * &scale).collect(),
        form: WitnessForm::ShapleyCover,
    }
}

/// Signed labels `+i, -i` mapped to point indices.
pub type LabelMap = BTreeMap<i32, usize>;

/// `{+-e_1, ..., +-e_d}` in the order `e_1, -e_1, e_2, -e_2, ...`, with the
/// label map `+i -> e_i`, `-i -> -e_i`.
pub fn cross_polytope(d: usize) -> Result<(PointSet, LabelMap)> {
    if d == 0 {
        return Err(Error::input("cross polytope needs d >= 1"));
    }
    let mut points = Vec::new();
    let mut labels = Vec::new();
    let mut map = LabelMap::new();
    for i in 0..d {
        let mut c = vec![Rational::zero(); d];
        c[i] = Rational::one();
        let p = Point(c);
        map.insert(i as i32 + 1, points.len());
        labels.push(format!("+e{}", i + 1));
        points.push(p.clone());
        map.insert(-(i as i32 + 1), points.len());
        labels.push(format!("-e{}", i + 1));
        points.push(p.neg());
    }
    PointSet::with_labels(points, labels).map(|v| (v, map))
}

/// `{+-v_1, ..., +-v_d}` for a `(d-1)`-simplex centered at the origin of
/// `R^(d-1)`, with `+i -> v_i` and `-i -> -v_i`.
///
/// The simplex is `e_i - (1/d)(1, ..., 1)` projected onto the first `d - 1`
/// coordinates, which is an affine image of the regular simplex; minimal
/// balanced subsets are affine invariants. For `d = 2` the two vertices are
/// already antipodal, so the set collapses to two points and the label map is
/// not injective.
pub fn signed_simplex(d: usize) -> Result<(PointSet, LabelMap)> {
    if d < 2 {
        return Err(Error::input("signed simplex needs d >= 2"));
    }
    let shift = frac(1, d as i64);
    let vertex = |i: usize| -> Point {
        Point(
            (0..d - 1)
                .map(|c| if c == i { Rational::one() - &shift } else { -shift.clone() })
                .collect(),
        )
    };
    let mut points: Vec<Point> = Vec::new();
    let mut labels = Vec::new();
    let mut map = LabelMap::new();
    for i in 0..d {
        for (sign, p) in [(1i32, vertex(i)), (-1, vertex(i).neg())] {
            let label = sign * (i as i32 + 1);
            let idx = match points.iter().position(|q| *q == p) {
                Some(k) => k,
                None => {
                    points.push(p);
                    labels.push(format!("{}v{}", if sign > 0 { '+' } else { '-' }, i + 1));
                    points.len() - 1
                }
            };
            map.insert(label, idx);
        }
    }
    PointSet::with_labels(points, labels).map(|v| (v, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(cs: &[(i64, i64)]) -> Point {
        Point(cs.iter().map(|&(p, q)| frac(p, q)).collect())
    }

    #[test]
    fn centroid_examples() {
        let v3 = simplex_edge_midpoints(3).unwrap();
        assert_eq!(v3.centroid(), pt(&[(1, 3), (1, 3), (1, 3)]));
        let single = PointSet::new(vec![pt(&[(2, 7), (-1, 1)])]).unwrap();
        assert_eq!(single.centroid(), pt(&[(2, 7), (-1, 1)]));
        let (cross, _) = cross_polytope(2).unwrap();
        assert_eq!(cross.centroid(), Point::origin(2));
    }

    #[test]
    fn point_set_rejects_duplicates_and_mixed_dims() {
        assert!(PointSet::new(vec![]).is_err());
        assert!(PointSet::new(vec![pt(&[(1, 1)]), pt(&[(2, 2)])]).is_err());
        assert!(PointSet::new(vec![pt(&[(1, 1)]), pt(&[(1, 1), (0, 1)])]).is_err());
    }

    #[test]
    fn affine_dimension_examples() {
        assert_eq!(simplex_edge_midpoints(4).unwrap().affine_dimension(), 3);
        assert_eq!(simplex_edge_midpoints(3).unwrap().affine_dimension(), 2);
        assert_eq!(cross_polytope(3).unwrap().0.affine_dimension(), 3);
        let line = PointSet::new(vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 1), (1, 1)]), pt(&[(2, 1), (2, 1)])]).unwrap();
        assert_eq!(line.affine_dimension(), 1);
    }

    #[test]
    fn convex_membership_examples() {
        let v1 = pt(&[(1, 2), (1, 2)]);
        let w = convex_membership(&v1, &[&v1]).unwrap().unwrap();
        assert_eq!(w.weights, vec![int(1)]);

        let v3 = simplex_edge_midpoints(3).unwrap();
        let gens: Vec<&Point> = v3.points().iter().collect();
        let c = hyperplane_center(3);
        let w = convex_membership(&c, &gens).unwrap().unwrap();
        assert_eq!(w.weights, vec![frac(1, 3); 3]);
        assert!(w.verifies_convex(&c, &gens));

        let e12 = pt(&[(1, 2), (1, 2), (0, 1), (0, 1)]);
        let e13 = pt(&[(1, 2), (0, 1), (1, 2), (0, 1)]);
        let e14 = pt(&[(1, 2), (0, 1), (0, 1), (1, 2)]);
        assert!(convex_membership(&hyperplane_center(4), &[&e12, &e13, &e14])
            .unwrap()
            .is_none());
    }

    #[test]
    fn convex_membership_rejects_bad_dimensions() {
        let a = pt(&[(1, 1)]);
        let b = pt(&[(1, 1), (0, 1)]);
        assert!(convex_membership(&a, &[&b]).is_err());
        assert!(convex_membership(&a, &[]).is_err());
    }

    #[test]
    fn shapley_weight_examples() {
        let partition = SubsetFamily::new(5, [vec![1, 4], vec![2], vec![3, 5]]).unwrap();
        let w = shapley_weights(&partition).unwrap();
        assert_eq!(w.weights, vec![int(1); 3]);

        let triangle = SubsetFamily::new(3, [vec![1, 2], vec![2, 3], vec![3, 1]]).unwrap();
        let w = shapley_weights(&triangle).unwrap();
        assert_eq!(w.weights, vec![frac(1, 2); 3]);
        assert!(w.verifies_shapley(&triangle));

        let path = SubsetFamily::new(3, [vec![1, 2], vec![1, 3]]).unwrap();
        assert!(shapley_weights(&path).is_none());
    }

    #[test]
    fn midpoint_embedding_examples() {
        let f = TwoSubsetFamily::new(2, [(1, 2)]).unwrap();
        assert_eq!(midpoint_embedding(&f).unwrap().points(), &[pt(&[(1, 2), (1, 2)])]);

        let f = TwoSubsetFamily::new(3, [(1, 2), (2, 3), (3, 1)]).unwrap();
        let pts = midpoint_embedding(&f).unwrap();
        let mut got: Vec<Point> = pts.points().to_vec();
        got.sort();
        let mut want = vec![
            pt(&[(1, 2), (1, 2), (0, 1)]),
            pt(&[(0, 1), (1, 2), (1, 2)]),
            pt(&[(1, 2), (0, 1), (1, 2)]),
        ];
        want.sort();
        assert_eq!(got, want);

        let v4 = simplex_edge_midpoints(4).unwrap();
        assert_eq!(v4.len(), 6);
        for p in v4.points() {
            assert!(p.coords().iter().sum::<Rational>().is_one());
        }
    }

    #[test]
    fn configurations() {
        let (cross, map) = cross_polytope(2).unwrap();
        assert_eq!(cross.len(), 4);
        assert_eq!(cross.points()[map[&1]], pt(&[(1, 1), (0, 1)]));
        assert_eq!(cross.points()[map[&-2]], pt(&[(0, 1), (-1, 1)]));

        let (s3, map) = signed_simplex(3).unwrap();
        assert_eq!(s3.len(), 6);
        assert_eq!(s3.dim(), 2);
        assert_eq!(s3.centroid(), Point::origin(2));
        let v_sum: Vec<&Point> = (1..=3).map(|i| &s3.points()[map[&i]]).collect();
        assert_eq!(weighted_sum(&[int(1), int(1), int(1)], &v_sum, 2), Point::origin(2));

        let (s2, map) = signed_simplex(2).unwrap();
        assert_eq!(s2.len(), 2);
        assert_eq!(map[&1], map[&-2]);
    }

    fn random_pair_family(d: u32, mask: u64) -> Option<TwoSubsetFamily> {
        let all: Vec<_> = TwoSubsetFamily::complete(d).unwrap().pairs().collect();
        let chosen: Vec<_> = all
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if chosen.is_empty() {
            None
        } else {
            Some(TwoSubsetFamily::new(d, chosen).unwrap())
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn shapley_and_convex_routes_agree(d in 2u32..=7, mask in any::<u64>()) {
            let Some(fam) = random_pair_family(d, mask) else { return Ok(()) };
            let sets = fam.to_subset_family().unwrap();
            let pts = midpoint_embedding(&fam).unwrap();
            let gens: Vec<&Point> = pts.points().iter().collect();
            let c = hyperplane_center(d);
            let shapley = shapley_weights(&sets);
            let convex = convex_membership(&c, &gens).unwrap();
            prop_assert_eq!(shapley.is_some(), convex.is_some());
            if let (Some(s), Some(cv)) = (shapley, convex) {
                prop_assert!(s.verifies_shapley(&sets));
                prop_assert!(cv.verifies_convex(&c, &gens));
                prop_assert!(shapley_to_convex(&s, d).verifies_convex(&c, &gens));
                prop_assert!(convex_to_shapley(&cv, d).verifies_shapley(&sets));
            }
        }

        #[test]
        fn balancedness_is_monotone(d in 2u32..=6, mask in any::<u64>(), extra in any::<u64>()) {
            let Some(fam) = random_pair_family(d, mask) else { return Ok(()) };
            let Some(sup) = random_pair_family(d, mask | extra) else { return Ok(()) };
            if shapley_weights(&fam.to_subset_family().unwrap()).is_some() {
                prop_assert!(shapley_weights(&sup.to_subset_family().unwrap()).is_some());
            }
        }

        #[test]
        fn witnesses_are_deterministic(d in 2u32..=6, mask in any::<u64>()) {
            let Some(fam) = random_pair_family(d, mask) else { return Ok(()) };
            let sets = fam.to_subset_family().unwrap();
            prop_assert_eq!(shapley_weights(&sets), shapley_weights(&sets));
        }
    }
}
