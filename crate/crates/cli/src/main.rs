use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use steincalc_core::exactmat::{determinant, is_negative_definite, signature};
use steincalc_core::knots::{alexander, block_family, demo_family_genus2, fibered_certificate, SeifertMatrixK};
use steincalc_core::mcg::{self, chain_curves, parse_curve_table, parse_word, SurfaceSpec, TwistWord};
use steincalc_core::plumbing::{boundary_homology, grauert_check, intersection_matrix, MoveScript, PlumbingGraph};
use steincalc_core::report::{report_corollary55, report_figure1, report_thm44, report_thm53, Report};
use steincalc_core::seifert::{
    canonical_contact_flag, is_singularity_link, openbook_homology, openbook_manifold, star_to_seifert, OpenBookDesc,
};

#[derive(Parser)]
#[command(name = "steincalc", version, about = "Exact invariants of plumbings, Seifert manifolds, twist words and fillings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plumbing graph invariants and move scripts.
    #[command(subcommand)]
    Plumb(PlumbCmd),
    /// Seifert invariants.
    #[command(subcommand)]
    Seifert(SeifertCmd),
    /// Dehn twist words acting on homology.
    #[command(subcommand)]
    Mcg(McgCmd),
    /// Lefschetz fibration counts.
    #[command(subcommand)]
    Lf(LfCmd),
    /// Knot invariants from Seifert matrices.
    #[command(subcommand)]
    Knots(KnotsCmd),
    /// Check reports; exit code 0 iff the verdict passes.
    Report(ReportArgs),
}

#[derive(Subcommand)]
enum PlumbCmd {
    Invariants { graph: PathBuf },
    Moves { graph: PathBuf, script: PathBuf },
}

#[derive(Subcommand)]
enum SeifertCmd {
    FromStar {
        graph: PathBuf,
    },
    OpenBook {
        #[arg(long)]
        genus: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        powers: Vec<i64>,
    },
}

#[derive(Subcommand)]
enum McgCmd {
    Action {
        /// File holding the word, e.g. `(c1 c2 c3^2 c2 c1)^2`.
        #[arg(long)]
        word: PathBuf,
        /// `g,r`
        #[arg(long)]
        surface: String,
        /// JSON `{name: [coefficients]}`; defaults to the standard chain on a closed surface.
        #[arg(long)]
        curves: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Catalog {
    Hyperelliptic,
    Korkmaz,
}

#[derive(Subcommand)]
enum LfCmd {
    Chi {
        #[arg(long, value_enum)]
        catalog: Catalog,
        /// `g` for hyperelliptic, `m` for korkmaz.
        #[arg(long)]
        param: u32,
    },
}

#[derive(Subcommand)]
enum KnotsCmd {
    Alexander { matrix: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Args)]
struct ReportArgs {
    #[command(subcommand)]
    which: ReportCmd,
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ReportCmd {
    Figure1 {
        #[arg(long)]
        h: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<i64>,
    },
    Thm44 {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: u32,
        /// JSON array of `{name, matrix}`; defaults to the bundled family.
        #[arg(long)]
        family: Option<PathBuf>,
    },
    Thm53 {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        family: Option<PathBuf>,
    },
    Cor55 {
        #[arg(long)]
        h: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn graph_invariants(g: &PlumbingGraph) -> Value {
    let q = intersection_matrix(g);
    json!({
        "vertices": g.len(),
        "intersection_matrix": q,
        "boundary_h1": boundary_homology(g).to_string(),
        "determinant": determinant(&q).expect("square").to_string(),
        "signature": signature(&q).expect("symmetric"),
        "negative_definite": is_negative_definite(&q).expect("symmetric"),
        "grauert": grauert_check(g),
    })
}

/// Accepts `{name, matrix}` or a bare array of rows.
fn load_knot(path: &Path) -> Result<SeifertMatrixK> {
    let v: Value = read_json(path)?;
    if v.is_array() {
        let name = path.file_stem().map_or("K".into(), |s| s.to_string_lossy().into_owned());
        return Ok(serde_json::from_value(json!({ "name": name, "matrix": v }))?);
    }
    Ok(serde_json::from_value(v)?)
}

fn load_family(path: Option<&PathBuf>, k: u32) -> Result<Vec<SeifertMatrixK>> {
    match path {
        Some(p) => read_json(p),
        None if k == 2 => Ok(demo_family_genus2()),
        None => Ok(block_family(k, k as usize + 1)),
    }
}

fn parse_surface(s: &str) -> Result<SurfaceSpec> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [g, r] = parts.as_slice() else {
        bail!("--surface expects g,r");
    };
    Ok(SurfaceSpec { genus: g.parse()?, boundary_count: r.parse()? })
}

fn run_report(args: &ReportArgs) -> Result<bool> {
    let report: Report = match &args.which {
        ReportCmd::Figure1 { h, p } => report_figure1(*h, p)?,
        ReportCmd::Thm44 { g, k, r, family } => report_thm44(*g, *k, *r, &load_family(family.as_ref(), *k)?)?,
        ReportCmd::Thm53 { m, n, k, family } => report_thm53(*m, *n, *k, &load_family(family.as_ref(), *k)?)?,
        ReportCmd::Cor55 { h, n } => report_corollary55(*h, *n, &demo_family_genus2())?,
    };
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    };
    match &args.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => println!("{text}"),
    }
    Ok(report.verdict)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Plumb(PlumbCmd::Invariants { graph }) => {
            let g: PlumbingGraph = read_json(&graph)?;
            print(&graph_invariants(&g));
        }
        Command::Plumb(PlumbCmd::Moves { graph, script }) => {
            let g: PlumbingGraph = read_json(&graph)?;
            let s: MoveScript = read_json(&script)?;
            let out = s.replay(&g)?;
            let (before, after) = (boundary_homology(&g), boundary_homology(&out));
            print(&json!({
                "result": out,
                "before": graph_invariants(&g),
                "after": graph_invariants(&out),
                "boundary_h1_preserved": before == after,
            }));
        }
        Command::Seifert(SeifertCmd::FromStar { graph }) => {
            let g: PlumbingGraph = read_json(&graph)?;
            let s = star_to_seifert(&g)?;
            print(&json!({
                "seifert": s,
                "singularity_link": is_singularity_link(&s),
                "contact": canonical_contact_flag(&s),
            }));
        }
        Command::Seifert(SeifertCmd::OpenBook { genus, powers }) => {
            let ob = OpenBookDesc::new(genus, powers)?;
            let s = openbook_manifold(&ob)?;
            print(&json!({
                "open_book": ob,
                "seifert": s,
                "h1": openbook_homology(&ob)?.to_string(),
                "singularity_link": is_singularity_link(&s),
                "contact": canonical_contact_flag(&s),
            }));
        }
        Command::Mcg(McgCmd::Action { word, surface, curves }) => {
            let surface = parse_surface(&surface)?;
            let letters = parse_word(&read(&word)?)?;
            let table = match curves {
                Some(p) => Some(parse_curve_table(&read(&p)?)?),
                None if surface.boundary_count == 0 && surface.genus > 0 => Some(chain_curves(surface.genus)),
                None => None,
            };
            let w = TwistWord::new(surface, letters, table)?;
            let action = mcg::word_action(&w).ok();
            print(&json!({
                "word": w.to_string(),
                "letter_count": w.letter_count(),
                "counting_only": action.is_none(),
                "action": action,
            }));
        }
        Command::Lf(LfCmd::Chi { catalog, param }) => {
            let w = match catalog {
                Catalog::Hyperelliptic => mcg::hyperelliptic_word(param)?,
                Catalog::Korkmaz => mcg::korkmaz_word(param, None)?,
            };
            let g = w.surface.genus;
            print(&json!({
                "fiber_genus": g,
                "singular_fibers": w.letter_count(),
                "euler_characteristic": mcg::lf_euler_characteristic(g, w.letter_count()),
            }));
        }
        Command::Knots(KnotsCmd::Alexander { matrix }) => {
            let k = load_knot(&matrix)?;
            let delta = alexander(&k);
            print(&json!({
                "name": k.name(),
                "genus": k.genus(),
                "alexander": delta,
                "at_one": delta.at_one().to_string(),
                "fibered_certificate": fibered_certificate(&k),
            }));
        }
        Command::Report(args) => return run_report(&args),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
