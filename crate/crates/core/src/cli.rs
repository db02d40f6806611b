//! The `flagqh` command line.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::combinatorics::{FlagShape, Partition};
use crate::error::{Error, Result};
use crate::mirror::{
    available_exchanges, pluecker_superpotential, prop_commutes_verify, theorem_a_verify, ChartExpansion, LadderQuiver,
    LocalVerdict, PartialReport, VertexKind, VertexReport,
};
use crate::permutations::{is_in_s, permutation_to_tuple, Permutation};
use crate::qring::{ExpansionRecord, QuantumRing};
use crate::theorems::{
    box_partitions, prop_expand_sides, sample_partitions, theorem_b_sweep, Mode, TheoremBJson, Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_ABORT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "flagqh", version, about = "Quantum Schubert calculus and Plücker mirrors of partial flag varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Flag shape `n;r1,r2,...` with r1 > r2 > ... > 0.
    #[arg(long, global = true)]
    pub shape: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest degree slice (in monomials or classes) the engine may build.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Worker threads for parallel sweeps (0 = rayon default).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The dual ladder quiver
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Superpotentials, chart expansions and mutations
    #[command(subcommand)]
    Mirror(MirrorCmd),
    /// Check the theorems on a shape
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Quantum products and evaluations
    #[command(subcommand)]
    Compute(ComputeCmd),
}

#[derive(Debug, Subcommand)]
pub enum QuiverCmd {
    /// Vertices, labels and arrows of the ladder quiver.
    Build,
}

#[derive(Debug, Subcommand)]
pub enum MirrorCmd {
    /// The EHX superpotential in quiver variables.
    Ehx,
    /// The Plücker coordinate superpotential.
    Plucker,
    /// The superpotential in the rectangles chart.
    RectChart,
    /// Mutate the rectangles chart along a chain of three-term exchanges.
    Mutate(MutateArgs),
}

#[derive(Debug, Args)]
pub struct MutateArgs {
    /// Exchange `level:[lambda]` or `level:[lambda]->[mu]`; repeat to chain.
    #[arg(long = "exchange")]
    pub exchanges: Vec<String>,
    /// List the exchanges available from the resulting chart.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Partials of the chart superpotential vanish under the Schubert map.
    TheoremA(MutateArgs),
    /// q-hook evaluation of s^1_lambda.
    TheoremB(Selection),
    /// Grassmannian and flag Schubert maps agree on every quiver vertex.
    PropCommutes,
    /// Column expansion of s^1_lambda.
    PropExpand(Selection),
}

#[derive(Debug, Args)]
pub struct Selection {
    /// A partition `[a,b,...]`; repeat for several.
    #[arg(long = "lambda")]
    pub lambdas: Vec<String>,
    /// Every partition in the r_1 x n box.
    #[arg(long)]
    pub all: bool,
    /// This many partitions sampled from the box.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum ComputeCmd {
    /// Quantum product of Schubert classes given by permutations.
    Qmul {
        #[arg(long = "class", required = true)]
        classes: Vec<String>,
    },
    /// Schubert expansion of s^1_lambda.
    S1 {
        #[arg(long)]
        lambda: String,
    },
}

/// Text or JSON output plus the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub status: i32,
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable report")
}

fn shape_of(c: &Common) -> Result<FlagShape> {
    let s = c.shape.as_deref().ok_or(Error::Parse { pos: 0, msg: "--shape is required".into() })?;
    FlagShape::parse(s)
}

fn ring_of(c: &Common) -> Result<QuantumRing> {
    let shape = shape_of(c)?;
    match c.budget {
        Some(b) => QuantumRing::with_budget(&shape, b),
        None => QuantumRing::new(&shape),
    }
}

fn partition_arg(s: &str) -> Result<Partition> {
    Partition::parse(s)
}

/// `level:[lambda]` or `level:[lambda]->[mu]`.
fn exchange_arg(s: &str) -> Result<(usize, Partition, Option<Partition>)> {
    let (lv, rest) = s.split_once(':').ok_or(Error::Parse { pos: 0, msg: "expected `level:[lambda]`".into() })?;
    let level = lv.trim().parse::<usize>().map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })?;
    let off = lv.len() + 1;
    let shift = |e: Error, by: usize| match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    };
    match rest.split_once("->") {
        Some((a, b)) => Ok((
            level,
            partition_arg(a).map_err(|e| shift(e, off))?,
            Some(partition_arg(b).map_err(|e| shift(e, off + a.len() + 2))?),
        )),
        None => Ok((level, partition_arg(rest).map_err(|e| shift(e, off))?, None)),
    }
}

fn chart_from(shape: &FlagShape, args: &MutateArgs) -> Result<ChartExpansion> {
    let mut ce = ChartExpansion::rectangles(shape);
    for s in &args.exchanges {
        let (level, lam, mu) = exchange_arg(s)?;
        if level == 0 || level > shape.rho() {
            return Err(Error::Range(format!("level {} out of range", level)));
        }
        let ex = available_exchanges(&ce.chart, level)
            .into_iter()
            .find(|e| e.lambda == lam && mu.as_ref().is_none_or(|m| *m == e.mu))
            .ok_or_else(|| Error::Range(format!("no exchange for p{}{} from this chart", level, lam)))?;
        ce = ce.mutate(&ex)?;
    }
    Ok(ce)
}

fn selection(shape: &FlagShape, sel: &Selection) -> Result<Vec<Partition>> {
    let mut out: Vec<Partition> = sel.lambdas.iter().map(|s| partition_arg(s)).collect::<Result<_>>()?;
    if sel.all {
        out.extend(box_partitions(shape));
    }
    if let Some(k) = sel.sample {
        out.extend(sample_partitions(shape, k, sel.seed));
    }
    if out.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "give --lambda, --all or --sample".into() });
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Serialize)]
struct QuiverJson {
    shape: String,
    vertices: Vec<VertexJson>,
    arrows: Vec<[(usize, usize); 2]>,
}

#[derive(Serialize)]
struct VertexJson {
    row: usize,
    col: usize,
    kind: String,
    label: String,
}

#[derive(Serialize)]
struct ExprJson {
    shape: String,
    chart: Vec<String>,
    expression: String,
}

#[derive(Serialize)]
struct TheoremAJson {
    shape: String,
    chart: Vec<String>,
    partials: Vec<PartialReport>,
}

#[derive(Serialize)]
struct CommutesJson {
    shape: String,
    vertices: Vec<VertexReport>,
}

#[derive(Serialize)]
struct PropExpandJson {
    lambda: Vec<usize>,
    classification: String,
    verdict: Verdict,
}

#[derive(Serialize)]
struct ExpansionJson {
    shape: String,
    expansion: Vec<ExpansionRecord>,
}

fn status_of<I: IntoIterator<Item = LocalVerdict>>(vs: I) -> i32 {
    if vs.into_iter().all(|v| v != LocalVerdict::Inconclusive) {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    }
}

fn chart_names(ce: &ChartExpansion) -> Vec<String> {
    ce.chart.symbols().iter().map(|s| s.to_string()).collect()
}

fn run_command(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    let ok = |output: String| Ok(Outcome { output, status: EXIT_OK });
    match &cli.command {
        Command::Quiver(QuiverCmd::Build) => {
            let shape = shape_of(c)?;
            let q = LadderQuiver::build(&shape);
            let vs = q.vertices();
            if c.json {
                let report = QuiverJson {
                    shape: shape.to_string(),
                    vertices: vs
                        .iter()
                        .map(|v| VertexJson {
                            row: v.row,
                            col: v.col,
                            kind: match v.kind {
                                VertexKind::Source => "source".into(),
                                VertexKind::Sink => "sink".into(),
                                VertexKind::Corner(i) => format!("corner{}", i),
                                VertexKind::Cell { block, .. } => format!("block{}", block),
                            },
                            label: q.flag_label(v).to_string(),
                        })
                        .collect(),
                    arrows: q.arrows().iter().map(|&(t, h)| [(vs[t].row, vs[t].col), (vs[h].row, vs[h].col)]).collect(),
                };
                return ok(json(&report));
            }
            let mut out = format!("{} vertices, {} arrows\n", vs.len(), q.arrows().len());
            for v in vs {
                writeln!(out, "({},{}) {}", v.row, v.col, q.flag_label(v)).unwrap();
            }
            for &(t, h) in q.arrows() {
                writeln!(out, "({},{}) -> ({},{})", vs[t].row, vs[t].col, vs[h].row, vs[h].col).unwrap();
            }
            ok(out)
        }
        Command::Mirror(m) => {
            let shape = shape_of(c)?;
            let (chart, expr) = match m {
                MirrorCmd::Ehx => (Vec::new(), LadderQuiver::build(&shape).ehx_superpotential().to_string()),
                MirrorCmd::Plucker => (Vec::new(), pluecker_superpotential(&ring_of(c)?)?.to_string()),
                MirrorCmd::RectChart => {
                    let ce = ChartExpansion::rectangles(&shape);
                    (chart_names(&ce), ce.expr.to_string())
                }
                MirrorCmd::Mutate(args) => {
                    let ce = chart_from(&shape, args)?;
                    if args.list {
                        let mut out = String::new();
                        for i in 1..=shape.rho() {
                            for e in available_exchanges(&ce.chart, i) {
                                writeln!(out, "{}:{}->{}", i, e.lambda, e.mu).unwrap();
                            }
                        }
                        return ok(out);
                    }
                    (chart_names(&ce), ce.expr.to_string())
                }
            };
            if c.json {
                return ok(json(&ExprJson { shape: shape.to_string(), chart, expression: expr }));
            }
            ok(if chart.is_empty() { format!("{}\n", expr) } else { format!("chart: {}\n{}\n", chart.join(" "), expr) })
        }
        Command::Verify(VerifyCmd::TheoremA(args)) => {
            let ring = ring_of(c)?;
            let ce = chart_from(ring.shape(), args)?;
            let partials = theorem_a_verify(&ring, &ce)?;
            let status = status_of(partials.iter().map(|p| p.verdict));
            let output = if c.json {
                json(&TheoremAJson { shape: ring.shape().to_string(), chart: chart_names(&ce), partials })
            } else {
                partials
                    .iter()
                    .map(|p| {
                        format!(
                            "d/d{}: {:?}{}\n",
                            p.variable,
                            p.verdict,
                            p.note.as_ref().map(|n| format!(" ({})", n)).unwrap_or_default()
                        )
                    })
                    .collect()
            };
            Ok(Outcome { output, status })
        }
        Command::Verify(VerifyCmd::TheoremB(sel)) => {
            let ring = ring_of(c)?;
            let lambdas = selection(ring.shape(), sel)?;
            let reports = theorem_b_sweep(&ring, &lambdas, Mode::Parallel)?;
            let status = if reports.iter().any(|r| r.verdict == Verdict::Mismatch) { EXIT_MISMATCH } else { EXIT_OK };
            let output = if c.json {
                json(&reports.iter().map(|r| r.to_json()).collect::<Vec<TheoremBJson>>())
            } else {
                reports.iter().map(|r| format!("{}\n", r)).collect()
            };
            Ok(Outcome { output, status })
        }
        Command::Verify(VerifyCmd::PropCommutes) => {
            let ring = ring_of(c)?;
            let vertices = prop_commutes_verify(&ring)?;
            let status = status_of(vertices.iter().map(|v| v.verdict));
            let output = if c.json {
                json(&CommutesJson { shape: ring.shape().to_string(), vertices })
            } else {
                vertices
                    .iter()
                    .map(|v| format!("({},{}) {} vs {}: {:?}\n", v.row, v.col, v.grassmannian, v.flag, v.verdict))
                    .collect()
            };
            Ok(Outcome { output, status })
        }
        Command::Verify(VerifyCmd::PropExpand(sel)) => {
            let ring = ring_of(c)?;
            let shape = ring.shape().clone();
            // the expansion needs a first column to remove
            let lambdas: Vec<Partition> =
                selection(&shape, sel)?.into_iter().filter(|l| !(sel.all && l.is_empty())).collect();
            let rows = crate::theorems::sweep(Mode::Parallel, &lambdas, |l| {
                let (lhs, rhs) = prop_expand_sides(&ring, l)?;
                let verdict = if ring.is_zero(&lhs.sub(&rhs)) { Verdict::Match } else { Verdict::Mismatch };
                Ok(PropExpandJson {
                    lambda: l.parts().to_vec(),
                    classification: format!("{:?}", crate::combinatorics::classify(&shape, l)?),
                    verdict,
                })
            })?;
            let status = if rows.iter().any(|r| r.verdict == Verdict::Mismatch) { EXIT_MISMATCH } else { EXIT_OK };
            let output = if c.json {
                json(&rows)
            } else {
                rows.iter().map(|r| format!("{:?} {} {:?}\n", r.lambda, r.classification, r.verdict)).collect()
            };
            Ok(Outcome { output, status })
        }
        Command::Compute(ComputeCmd::Qmul { classes }) => {
            let ring = ring_of(c)?;
            let mut acc = ring.class_expansion(&Permutation::identity(ring.shape().n()), vec![0; ring.shape().rho()]);
            for s in classes {
                let w = Permutation::parse(s)?;
                if !is_in_s(ring.shape(), &w) {
                    return Err(Error::NotInS(w.to_string()));
                }
                permutation_to_tuple(ring.shape(), &w)?;
                acc = ring.multiply(&acc, &ring.class_expansion(&w, vec![0; ring.shape().rho()]))?;
            }
            expansion_out(c, ring.shape(), &acc)
        }
        Command::Compute(ComputeCmd::S1 { lambda }) => {
            let ring = ring_of(c)?;
            let l = partition_arg(lambda)?;
            let e = ring.schubert_expand(&ring.s_class(1, &l)?)?;
            expansion_out(c, ring.shape(), &e)
        }
    }
}

fn expansion_out(c: &Common, shape: &FlagShape, e: &crate::qring::SchubertExpansion) -> Result<Outcome> {
    let output = if c.json {
        json(&ExpansionJson { shape: shape.to_string(), expansion: e.records(shape) })
    } else {
        format!("{}\n", e)
    };
    Ok(Outcome { output, status: EXIT_OK })
}

/// Runs a parsed command line; errors become messages with their exit status.
pub fn run(cli: &Cli) -> Outcome {
    #[cfg(feature = "parallel")]
    if cli.common.threads > 0 {
        // A second call in the same process keeps the first pool, which is fine.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.common.threads).build_global();
    }
    match run_command(cli) {
        Ok(o) => o,
        Err(e) => Outcome {
            output: format!("error: {}\n", e),
            status: if matches!(e, Error::Parse { .. }) { EXIT_USAGE } else { EXIT_ABORT },
        },
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => Outcome { output: e.to_string(), status: if e.use_stderr() { EXIT_USAGE } else { EXIT_OK } },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &str) -> Outcome {
        run_args(std::iter::once("flagqh").chain(args.split(' ')))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call("verify theorem-b --shape 4;2,1 --all").status, EXIT_OK);
        assert_eq!(call("verify theorem-a --shape 4;2,1").status, EXIT_OK);
        assert_eq!(call("verify prop-commutes --shape 4;2,1").status, EXIT_OK);
        assert_eq!(call("verify prop-expand --shape 4;2,1 --lambda [4]").status, EXIT_MISMATCH);
        assert_eq!(call("verify prop-expand --shape 4;2,1 --lambda [3,1]").status, EXIT_OK);
        assert_eq!(call("verify theorem-b --shape 4;2,1").status, EXIT_USAGE);
        assert_eq!(call("compute s1 --shape 4;2,1 --lambda [1,1,1]").status, EXIT_ABORT);
    }

    #[test]
    fn parse_errors_report_positions() {
        let o = call("compute s1 --shape 4;2,x --lambda [1]");
        assert_eq!(o.status, EXIT_USAGE);
        assert!(o.output.contains("position 4"), "{}", o.output);
        let o = call("compute s1 --shape 4;2,1 --lambda [1,y]");
        assert!(o.output.contains("position 3"), "{}", o.output);
        let o = call("mirror mutate --shape 4;2 --exchange 1:[1]->[2,z]");
        assert!(o.output.contains("position 10"), "{}", o.output);
    }

    #[test]
    fn mirror_outputs() {
        let o = call("mirror ehx --shape 4;2");
        assert_eq!(o.output, "z[1,1] + z[1,2]/z[1,1] + z[2,1]/z[1,1] + z[2,2]/z[1,2] + z[2,2]/z[2,1] + q1/z[2,2]\n");
        let o = call("mirror mutate --shape 4;2 --list");
        assert_eq!(o.output, "1:[1]->[2,1]\n");
        let o = call("mirror mutate --shape 4;2 --exchange 1:[1]");
        assert!(o.output.starts_with("chart: p1[] p1[1,1] p1[2] p1[2,1] p1[2,2]\n"), "{}", o.output);
        assert_eq!(call("verify theorem-a --shape 4;2,1 --exchange 1:[1]").status, EXIT_OK);
    }

    #[test]
    fn json_is_deterministic() {
        let a = call("verify theorem-b --shape 5;3,2 --sample 6 --seed 7 --json");
        let b = call("verify theorem-b --shape 5;3,2 --sample 6 --seed 7 --json");
        assert_eq!(a, b);
        let parsed: Vec<TheoremBJson> = serde_json::from_str(&a.output).unwrap();
        assert_eq!(parsed.len(), 6);
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), a.output);
    }

    #[test]
    fn quantum_products() {
        let o = call("compute qmul --shape 3;2,1 --class [2,1,3] --class [2,1,3]");
        assert_eq!(o.status, EXIT_OK);
        let o =
            call("compute qmul --shape 4;2 --class [1,3,2,4] --class [1,3,2,4] --class [1,3,2,4] --class [1,3,2,4]");
        assert_eq!(o.output, "2*q1*s[1,2,3,4] + 2*s[3,4,1,2]\n");
    }
}
