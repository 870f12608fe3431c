//! JSON documents for point sets, families, games, complexes and results.
//!
//! Rationals are strings (`"p/q"`, or `"p"` for integers) and big integers
//! are decimal strings, so no value loses precision in a JSON reader.
//! Family elements are 1-based; point and vertex indices are as stored.
//! Field order is fixed, so identical inputs serialize to identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::enumeration::MinimalBalancedCatalog;
use crate::error::{Error, Result};
use crate::family::TwoSubsetFamily;
use crate::game::{CoreVerdict, Game, ViolatingFamily};
use crate::geometry::{Point, PointSet};
use crate::lemmas::{Carriers, LabeledComplex, Triangulation};
use crate::partitions::IdentityReport;
use crate::rational;
use crate::two_subset::{BlockKind, VerificationReport};

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetDoc {
    pub points: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl From<&PointSet> for PointSetDoc {
    fn from(v: &PointSet) -> Self {
        PointSetDoc {
            points: v.points().iter().map(|p| rational::format_all(p.coords())).collect(),
            labels: v.labels().map(<[String]>::to_vec),
        }
    }
}

impl TryFrom<PointSetDoc> for PointSet {
    type Error = Error;

    fn try_from(doc: PointSetDoc) -> Result<Self> {
        let points = doc
            .points
            .iter()
            .map(|p| rational::parse_all(p).map(Point::new))
            .collect::<Result<Vec<_>>>()?;
        match doc.labels {
            Some(labels) => PointSet::with_labels(points, labels),
            None => PointSet::new(points),
        }
    }
}

pub fn parse_point_set(text: &str) -> Result<PointSet> {
    from_json::<PointSetDoc>(text)?.try_into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogMemberDoc {
    pub indices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub weights: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogDoc {
    pub points: usize,
    pub affine_dimension: usize,
    pub subsets_examined: u64,
    pub members: Vec<CatalogMemberDoc>,
}

impl From<&MinimalBalancedCatalog> for CatalogDoc {
    fn from(c: &MinimalBalancedCatalog) -> Self {
        let v = c.point_set();
        CatalogDoc {
            points: v.len(),
            affine_dimension: v.affine_dimension(),
            subsets_examined: c.examined(),
            members: c
                .entries()
                .iter()
                .map(|e| CatalogMemberDoc {
                    indices: e.subset.indices().to_vec(),
                    labels: v
                        .labels()
                        .map(|ls| e.subset.indices().iter().map(|&i| ls[i].clone()).collect()),
                    weights: rational::format_all(&e.witness.weights),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub d: u32,
    pub pairs: Vec<[u32; 2]>,
}

impl From<&TwoSubsetFamily> for FamilyDoc {
    fn from(f: &TwoSubsetFamily) -> Self {
        FamilyDoc {
            d: f.d(),
            pairs: f.pairs().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl TryFrom<FamilyDoc> for TwoSubsetFamily {
    type Error = Error;

    fn try_from(doc: FamilyDoc) -> Result<Self> {
        TwoSubsetFamily::new(doc.d, doc.pairs.iter().map(|&[i, j]| (i, j)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationDoc {
    pub d: u32,
    pub equal: bool,
    pub generated: usize,
    pub geometric: usize,
    pub duplicates: usize,
    pub subsets_examined: u64,
    pub only_generated: Vec<FamilyDoc>,
    pub only_geometric: Vec<FamilyDoc>,
}

impl From<&VerificationReport> for VerificationDoc {
    fn from(r: &VerificationReport) -> Self {
        VerificationDoc {
            d: r.d,
            equal: r.equal(),
            generated: r.generated,
            geometric: r.geometric,
            duplicates: r.duplicates,
            subsets_examined: r.subsets_examined,
            only_generated: r.only_generated.iter().map(FamilyDoc::from).collect(),
            only_geometric: r.only_geometric.iter().map(FamilyDoc::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRowDoc {
    pub d: usize,
    pub q: String,
    pub b: String,
    /// Absent for `d < 2`, where no 2-subset family exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labeled: Option<String>,
    pub alternating_sum: String,
    pub identity_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionTableDoc {
    pub max_d: usize,
    pub identity_holds: bool,
    pub rows: Vec<PartitionRowDoc>,
}

impl PartitionTableDoc {
    pub fn new(report: &IdentityReport, labeled: &[Option<String>]) -> Self {
        PartitionTableDoc {
            max_d: report.rows.len().saturating_sub(1),
            identity_holds: report.holds(),
            rows: report
                .rows
                .iter()
                .map(|r| PartitionRowDoc {
                    d: r.d,
                    q: r.q.to_string(),
                    b: r.b.to_string(),
                    labeled: labeled.get(r.d).cloned().flatten(),
                    alternating_sum: r.alternating_sum.to_string(),
                    identity_holds: r.holds(),
                })
                .collect(),
        }
    }

    /// Right-aligned text columns `d`, `q(d)`, `b(d)`, `labeled-count`, `identity`.
    pub fn to_table(&self) -> String {
        let header = ["d", "q(d)", "b(d)", "labeled-count", "identity"].map(String::from);
        let rows: Vec<[String; 5]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.d.to_string(),
                    r.q.clone(),
                    r.b.clone(),
                    r.labeled.clone().unwrap_or_else(|| "-".into()),
                    if r.identity_holds { "ok" } else { "FAIL" }.into(),
                ]
            })
            .collect();
        let mut widths = header.clone().map(|h| h.len());
        for r in &rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        for r in std::iter::once(&header).chain(&rows) {
            let cells: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            out.push_str(&cells.join("  "));
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDoc {
    pub d: u32,
    pub singletons: Vec<String>,
    /// `[i, j, value]`; pairs left out default to `v({i}) + v({j})`.
    #[serde(default)]
    pub pairs: Vec<(u32, u32, String)>,
    pub grand: String,
}

impl TryFrom<GameDoc> for Game {
    type Error = Error;

    fn try_from(doc: GameDoc) -> Result<Self> {
        let singletons = rational::parse_all(&doc.singletons)?;
        let pairs = doc
            .pairs
            .iter()
            .map(|(i, j, v)| Ok(((*i, *j), rational::parse(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Game::new(doc.d, singletons, pairs, rational::parse(&doc.grand)?)
    }
}

impl From<&Game> for GameDoc {
    fn from(g: &Game) -> Self {
        GameDoc {
            d: g.d(),
            singletons: rational::format_all(g.singletons()),
            pairs: g
                .pairs()
                .iter()
                .map(|(&(i, j), v)| (i, j, rational::format(v)))
                .collect(),
            grand: rational::format(g.grand()),
        }
    }
}

pub fn parse_game(text: &str) -> Result<Game> {
    from_json::<GameDoc>(text)?.try_into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDoc {
    pub kind: String,
    pub vertices: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolatingFamilyDoc {
    pub blocks: Vec<BlockDoc>,
    pub coalitions: Vec<(Vec<u32>, String)>,
    pub total: String,
}

impl From<&ViolatingFamily> for ViolatingFamilyDoc {
    fn from(f: &ViolatingFamily) -> Self {
        ViolatingFamilyDoc {
            blocks: f
                .blocks
                .iter()
                .map(|b| BlockDoc {
                    kind: match b.kind {
                        BlockKind::Singleton => "singleton",
                        BlockKind::IsolatedEdge => "isolated_edge",
                        BlockKind::OddCycle => "odd_cycle",
                    }
                    .into(),
                    vertices: b.vertices.clone(),
                })
                .collect(),
            coalitions: f
                .coalitions
                .iter()
                .map(|(s, w)| (s.clone(), rational::format(w)))
                .collect(),
            total: rational::format(&f.total),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub method: String,
    pub nonempty: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub allocation: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violating_family: Option<ViolatingFamilyDoc>,
    pub certificate_verified: bool,
}

impl VerdictDoc {
    pub fn new(method: &str, verdict: &CoreVerdict, game: &Game) -> Self {
        VerdictDoc {
            method: method.into(),
            nonempty: verdict.nonempty,
            allocation: verdict.allocation.as_deref().map(rational::format_all),
            violating_family: verdict.violating_family.as_ref().map(ViolatingFamilyDoc::from),
            certificate_verified: verdict.verifies(game),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreReportDoc {
    pub d: u32,
    pub grand: String,
    /// Pairs whose value was filled in as the singleton sum.
    pub defaulted_pairs: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    pub verdicts: Vec<VerdictDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub dim: usize,
    pub vertices: Vec<u32>,
    pub cells: Vec<Vec<u32>>,
    pub boundary: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<[u32; 2]>>,
    /// `[vertex, label]`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<(u32, i32)>>,
    /// `[vertex, corners of its carrier face]`, for subdivided simplices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carriers: Option<Vec<(u32, Vec<i32>)>>,
}

impl ComplexDoc {
    pub fn new(t: &Triangulation, labels: Option<&[i32]>, carriers: Option<&Carriers>) -> Self {
        let ids = t.ids();
        let mut antipode = None;
        if t.has_antipode() {
            let pairs = t
                .boundary()
                .iter()
                .filter_map(|&v| {
                    let a = t.antipode(v)?;
                    (v < a).then(|| [ids[v], ids[a]])
                })
                .collect();
            antipode = Some(pairs);
        }
        ComplexDoc {
            dim: t.dim(),
            vertices: ids.to_vec(),
            cells: (0..t.cells().len()).map(|c| t.cell_ids(c)).collect(),
            boundary: t.boundary().iter().map(|&v| ids[v]).collect(),
            antipode,
            labels: labels.map(|ls| ids.iter().copied().zip(ls.iter().copied()).collect()),
            carriers: carriers.map(|c| ids.iter().copied().zip(c.0.iter().cloned()).collect()),
        }
    }

    pub fn triangulation(&self) -> Result<Triangulation> {
        Triangulation::new(
            self.dim,
            self.vertices.clone(),
            self.cells.clone(),
            self.boundary.clone(),
            self.antipode
                .as_ref()
                .map(|ps| ps.iter().map(|&[a, b]| (a, b)).collect()),
        )
    }

    pub fn labeled(&self) -> Result<LabeledComplex> {
        let t = self.triangulation()?;
        let labels = self
            .labels
            .as_ref()
            .ok_or_else(|| Error::input("complex document has no labels"))?;
        let mut by_id = BTreeMap::new();
        for &(v, l) in labels {
            if by_id.insert(v, l).is_some() {
                return Err(Error::input(format!("vertex {v} labelled twice")));
            }
        }
        LabeledComplex::from_id_labels(t, &by_id)
    }

    pub fn carriers(&self, t: &Triangulation) -> Result<Carriers> {
        let given = self
            .carriers
            .as_ref()
            .ok_or_else(|| Error::input("complex document has no carriers"))?;
        let by_id: BTreeMap<u32, &Vec<i32>> = given.iter().map(|(v, c)| (*v, c)).collect();
        let list = t
            .ids()
            .iter()
            .map(|id| {
                by_id
                    .get(id)
                    .map(|c| (*c).clone())
                    .ok_or_else(|| Error::input(format!("vertex {id} has no carrier")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Carriers(list))
    }
}

pub fn parse_complex(text: &str) -> Result<ComplexDoc> {
    from_json(text)
}

/// Result of one lemma search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaDoc {
    pub lemma: String,
    /// Witness cells (or edges, for Tucker) as vertex-id lists.
    pub witnesses: Vec<Vec<u32>>,
    pub count: usize,
    pub parity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem_b: Option<TheoremBDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremBDoc {
    pub witness_cell: Option<Vec<u32>>,
    pub member: Option<Vec<usize>>,
}

/// `"odd"` or `"even"`.
pub fn parity(n: usize) -> String {
    if n % 2 == 1 { "odd" } else { "even" }.into()
}
