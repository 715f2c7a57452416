use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "logfol", version, about = "Exact jet-level checks for foliations on normal-crossing germs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Truncation order for jets (default: the scene's order, else 6).
    #[arg(long, global = true)]
    pub order: Option<u32>,

    /// Also write the report as JSON to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Evaluate every scene in a directory using its `command` entry.
    #[arg(long, global = true, value_name = "DIR")]
    pub all: Option<PathBuf>,

    /// Seed for randomized data (`selftest`, twisted leaf data).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Saturation of a finitely generated monoid.
    Monoid(MonoidArgs),
    /// Local d-semistability via flat units.
    #[command(subcommand)]
    Semistable(SemistableCmd),
    /// Camacho-Sad indices.
    #[command(subcommand)]
    Cs(CsCmd),
    /// Gluing cocycle and pushout membership.
    #[command(subcommand)]
    Pushout(PushoutCmd),
    /// Cohomology of split bundles on the line and on the nodal curve.
    #[command(subcommand)]
    Cohomology(CohomologyCmd),
    /// Hypercohomology of a leaf complex.
    LeafComplex { scene: PathBuf },
    /// Cocycle equations and coboundary test for an obstruction triple.
    #[command(subcommand)]
    Obstruction(ObstructionCmd),
    /// Linear holonomy and normal degree compatibility.
    Holonomy { scene: PathBuf },
    /// Randomized identity checks.
    Selftest {
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct MonoidArgs {
    pub scene: Option<PathBuf>,
    /// Generators as a JSON array of integer vectors, e.g. `[[2],[3]]`.
    #[arg(long, conflicts_with = "scene")]
    pub gens: Option<String>,
    /// Saturate inside the group of the monoid instead of the ambient lattice.
    #[arg(long)]
    pub group: bool,
    #[arg(long = "box")]
    pub box_bound: Option<i64>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum SemistableCmd {
    Check { scene: PathBuf },
}

#[derive(Debug, Clone, Subcommand)]
pub enum CsCmd {
    /// Index from a log 1-form along a double stratum.
    Paper { scene: PathBuf },
    /// Classical index of `{y = 0}` on a surface.
    Surface { scene: PathBuf },
}

#[derive(Debug, Clone, Subcommand)]
pub enum PushoutCmd {
    Check { scene: PathBuf },
}

#[derive(Debug, Clone, Subcommand)]
pub enum CohomologyCmd {
    /// `h0, h1` of `O(d_1) + ... + O(d_k)` on the projective line.
    P1 {
        #[arg(long = "deg", required = true, allow_negative_numbers = true, num_args = 1..)]
        degrees: Vec<i64>,
    },
    /// Bundle on two lines glued at a node.
    SncCurve { scene: PathBuf },
}

#[derive(Debug, Clone, Subcommand)]
pub enum ObstructionCmd {
    Verify { scene: PathBuf },
}

impl Command {
    /// Parse the `command` entry of a scene, e.g. `"semistable check"`.
    pub fn from_scene_entry(entry: &str, scene: PathBuf) -> Option<Command> {
        let words: Vec<&str> = entry.split_whitespace().collect();
        Some(match words.as_slice() {
            ["monoid"] => Command::Monoid(MonoidArgs {
                scene: Some(scene),
                gens: None,
                group: false,
                box_bound: None,
            }),
            ["semistable", "check"] => Command::Semistable(SemistableCmd::Check { scene }),
            ["cs", "paper"] => Command::Cs(CsCmd::Paper { scene }),
            ["cs", "surface"] => Command::Cs(CsCmd::Surface { scene }),
            ["pushout", "check"] => Command::Pushout(PushoutCmd::Check { scene }),
            ["cohomology", "snc-curve"] => Command::Cohomology(CohomologyCmd::SncCurve { scene }),
            ["leaf-complex"] => Command::LeafComplex { scene },
            ["obstruction", "verify"] => Command::Obstruction(ObstructionCmd::Verify { scene }),
            ["holonomy"] => Command::Holonomy { scene },
            _ => return None,
        })
    }

    pub fn echo(&self) -> String {
        let path = |p: &PathBuf| p.display().to_string();
        match self {
            Command::Monoid(a) => match (&a.scene, &a.gens) {
                (Some(s), _) => format!("monoid {}", path(s)),
                (None, Some(g)) => format!("monoid --gens {g}"),
                (None, None) => "monoid".into(),
            },
            Command::Semistable(SemistableCmd::Check { scene }) => format!("semistable check {}", path(scene)),
            Command::Cs(CsCmd::Paper { scene }) => format!("cs paper {}", path(scene)),
            Command::Cs(CsCmd::Surface { scene }) => format!("cs surface {}", path(scene)),
            Command::Pushout(PushoutCmd::Check { scene }) => format!("pushout check {}", path(scene)),
            Command::Cohomology(CohomologyCmd::P1 { degrees }) => {
                let d: Vec<String> = degrees.iter().map(|d| format!("--deg {d}")).collect();
                format!("cohomology p1 {}", d.join(" "))
            }
            Command::Cohomology(CohomologyCmd::SncCurve { scene }) => format!("cohomology snc-curve {}", path(scene)),
            Command::LeafComplex { scene } => format!("leaf-complex {}", path(scene)),
            Command::Obstruction(ObstructionCmd::Verify { scene }) => format!("obstruction verify {}", path(scene)),
            Command::Holonomy { scene } => format!("holonomy {}", path(scene)),
            Command::Selftest { trials } => format!("selftest --trials {trials}"),
        }
    }
}
