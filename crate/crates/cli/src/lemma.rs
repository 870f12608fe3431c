use std::path::PathBuf;

use clap::{Args, Subcommand};
use minbal::doc::{self, LemmaDoc, TheoremBDoc};
use minbal::enumeration::Budget;
use minbal::geometry::{cross_polytope, signed_simplex};
use minbal::lemmas::{
    check_antipodal_labeling, check_sperner_admissible, find_alternating_simplices, find_complementary_edges,
    find_rainbow_cells, find_shashkin_cells, CellCount, LabeledComplex, SignedLabelSet, TheoremB,
    TheoremBOutcome, Triangulation,
};

use crate::{read, Failure, Outcome};

#[derive(Subcommand)]
pub(crate) enum LemmaCommand {
    /// Rainbow cells of a Sperner labelling; the document must carry carriers.
    Sperner(Common),
    /// Complementary edges of an antipodal labelling.
    Tucker(Common),
    /// Alternating cells of an antipodal labelling from +-1..=+-n.
    Kyfan {
        #[command(flatten)]
        common: Common,
        /// Palette size; defaults to the largest label magnitude.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Cells labelled by lambda or -lambda.
    Shashkin {
        #[command(flatten)]
        common: Common,
        /// One signed label of each magnitude 1..=dim+1, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i32>,
    },
}

#[derive(Args)]
pub(crate) struct Common {
    complex: PathBuf,
    /// Also look for a cell whose colours contain a minimal balanced subset.
    #[arg(long)]
    theorem_b: bool,
}

pub(crate) fn run(cmd: LemmaCommand, budget: Budget) -> Result<Outcome, Failure> {
    let (common, name) = match &cmd {
        LemmaCommand::Sperner(c) => (c, "sperner"),
        LemmaCommand::Tucker(c) => (c, "tucker"),
        LemmaCommand::Kyfan { common, .. } => (common, "kyfan"),
        LemmaCommand::Shashkin { common, .. } => (common, "shashkin"),
    };
    let document = doc::parse_complex(&read(&common.complex)?)?;
    let LabeledComplex { triangulation: t, labels } = document.labeled()?;
    if !matches!(cmd, LemmaCommand::Sperner(_)) && !check_antipodal_labeling(&t, &labels)? {
        return Err(Failure::Input("hypothesis violated: labelling is not antipodal on the boundary".into()));
    }

    let (witnesses, v) = match &cmd {
        LemmaCommand::Sperner(_) => {
            let carriers = document.carriers(&t)?;
            if !check_sperner_admissible(&t, &labels, &carriers)? {
                return Err(Failure::Input("hypothesis violated: a label lies outside its carrier".into()));
            }
            (cells(&t, &find_rainbow_cells(&t, &labels)), signed_simplex(t.dim() + 1)?)
        }
        LemmaCommand::Tucker(_) => {
            let edges = find_complementary_edges(&t, &labels)
                .into_iter()
                .map(|(u, v)| vec![t.id(u), t.id(v)])
                .collect();
            (edges, cross_polytope(t.dim())?)
        }
        LemmaCommand::Kyfan { n, .. } => {
            let n = n.unwrap_or_else(|| labels.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(1));
            let found = find_alternating_simplices(&t, &labels, n)?;
            (cells(&t, &found), cross_polytope(n)?)
        }
        LemmaCommand::Shashkin { lambda, .. } => {
            let lambda = SignedLabelSet::one_per_magnitude(lambda)?;
            let found = find_shashkin_cells(&t, &labels, &lambda)?;
            (cells(&t, &found), signed_simplex(t.dim() + 1)?)
        }
    };

    let theorem_b = if common.theorem_b {
        let (v, map) = v;
        Some(match TheoremB::new(&v, map, budget)?.witness(&t, &labels)? {
            TheoremBOutcome::Witness { cell, member } => TheoremBDoc {
                witness_cell: Some(t.cell_ids(cell)),
                member: Some(member.indices().to_vec()),
            },
            TheoremBOutcome::NoWitness => {
                eprintln!("no cell carries a minimal balanced subset; check the boundary condition");
                TheoremBDoc {
                    witness_cell: None,
                    member: None,
                }
            }
        })
    } else {
        None
    };

    let count = witnesses.len();
    // Tucker asks for existence, the others for an odd count.
    let verdict = if name == "tucker" { count > 0 } else { count % 2 == 1 };
    eprintln!("{name}: {count} witnesses");
    let report = LemmaDoc {
        lemma: name.into(),
        witnesses,
        count,
        parity: doc::parity(count),
        theorem_b,
    };
    Ok(Outcome::json(&report, verdict))
}

fn cells(t: &Triangulation, found: &CellCount) -> Vec<Vec<u32>> {
    found.cells.iter().map(|&k| t.cell_ids(k)).collect()
}
