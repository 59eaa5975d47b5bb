//! Command-line front end: builds rings and modules from flags, runs the
//! verification suites, and prints human-readable or JSON reports.
//!
//! Exit codes: 0 all checks pass, 1 verification failure, 2 input error,
//! 3 resource cap exceeded. Output on stdout is byte-identical for
//! identical flags and seed; timing goes to stderr.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use projconn::connection::{curvature, module_trace, CurvatureMethod};
use projconn::ellipsoid::{tangent_generators, EllipsoidRing, KaehlerModule, ModulePresentation};
use projconn::jets::{stratification_probe, InfinityConnection};
use projconn::linalg::charpoly3;
use projconn::mcm::{verify_factorization, FactorizationPair};
use projconn::report::{SuiteOptions, VerificationReport, SUITE_NAMES};
use projconn::{Error, Result};

#[derive(Parser)]
#[command(
    name = "projconn",
    about = "Exact connections, curvature and jets on ellipsoid coordinate rings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ExponentsArg {
    /// Ellipsoid exponents, comma separated, e.g. 2,2,2
    #[arg(long, value_name = "P1,P2,..")]
    exponents: String,
}

#[derive(Subcommand)]
enum Command {
    /// Print the fundamental matrix, tangent generators, curvature matrices
    /// and trace invariants of an ellipsoid module.
    Report {
        #[command(flatten)]
        exponents: ExponentsArg,
        #[arg(long)]
        json: bool,
    },
    /// Run the seeded verification suites.
    Verify {
        #[command(flatten)]
        exponents: ExponentsArg,
        /// Seed for all sampled identities.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample count per sampled identity.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Run a single suite (exactpoly, linalg, projectivity, curvature,
        /// endotensor, weyl, jets, mcm).
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        json: bool,
        /// Negative-control hook: corrupt a projector entry first.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Probe the stratification obstruction: evaluate every (l,k)-curvature
    /// with l + k bounded by the sum of the two order flags.
    Jets {
        /// Ellipsoid exponents, comma separated; the module is the Kaehler
        /// module unless --free is given.
        #[arg(long, value_name = "P1,P2,..", conflicts_with = "free")]
        exponents: Option<String>,
        /// Probe the free module of this rank over the all-squares
        /// ellipsoid ring in the same number of variables.
        #[arg(long, value_name = "RANK")]
        free: Option<usize>,
        /// First jet order.
        #[arg(long, default_value_t = 1)]
        l: u32,
        /// Second jet order.
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        json: bool,
    },
    /// Verify the 4x4 matrix factorization of x^m + y^n + z^2.
    Mcm {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long)]
        json: bool,
    },
}

fn parse_exponents(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::input(format!("bad exponent '{p}'")))
        })
        .collect()
}

#[derive(Serialize)]
struct CurvatureSection {
    pair: [String; 2],
    matrix: serde_json::Value,
    matrix_trace: String,
    module_trace: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    charpoly3: Option<CharPolySection>,
}

#[derive(Serialize)]
struct CharPolySection {
    trace: String,
    middle: String,
    det: String,
}

#[derive(Serialize)]
struct RingReport {
    exponents: Vec<u32>,
    variables: Vec<String>,
    relation: String,
    fundamental_matrix: serde_json::Value,
    fundamental_matrix_trace: String,
    relation_vector: Vec<String>,
    tangent_generators: Vec<String>,
    curvature: Vec<CurvatureSection>,
}

fn build_ring_report(exponents: &[u32]) -> Result<RingReport> {
    let ring = EllipsoidRing::build(exponents)?;
    let km = KaehlerModule::build(&ring);
    let ctx = km.ctx();
    let gens = tangent_generators(&ring);

    let mut sections = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in gens.iter().skip(i + 1) {
            let r = curvature(a, b, CurvatureMethod::Formula, &km)?;
            let charpoly = if km.rank() == 3 {
                let (tr, p, det) = charpoly3(&r)?;
                Some(CharPolySection {
                    trace: ctx.format(&tr),
                    middle: ctx.format(&p),
                    det: ctx.format(&det),
                })
            } else {
                None
            };
            sections.push(CurvatureSection {
                pair: [a.label().to_string(), b.label().to_string()],
                matrix: r.to_json(),
                matrix_trace: ctx.format(&r.trace()?),
                module_trace: ctx.format(&module_trace(&r, &km)?),
                charpoly3: charpoly,
            });
        }
    }

    Ok(RingReport {
        exponents: exponents.to_vec(),
        variables: ctx.vars().to_vec(),
        relation: ctx.format(ring.defining_polynomial()),
        fundamental_matrix: km.fundamental().to_json(),
        fundamental_matrix_trace: ctx.format(&km.fundamental().trace()?),
        relation_vector: km
            .relation()
            .entries()
            .iter()
            .map(|p| ctx.format(p))
            .collect(),
        tangent_generators: gens
            .iter()
            .map(|g| format!("{} = {}", g.label(), g.format()))
            .collect(),
        curvature: sections,
    })
}

fn matrix_lines(value: &serde_json::Value) -> Vec<String> {
    let entries = value["entries"].as_array().unwrap();
    entries
        .iter()
        .map(|row| {
            let cells: Vec<&str> = row
                .as_array()
                .unwrap()
                .iter()
                .map(|c| c.as_str().unwrap())
                .collect();
            format!("  [{}]", cells.join(", "))
        })
        .collect()
}

fn render_ring_report(r: &RingReport) -> String {
    let mut out = String::new();
    let exps: Vec<String> = r.exponents.iter().map(|e| e.to_string()).collect();
    out.push_str(&format!(
        "ellipsoid ring with exponents ({})\n",
        exps.join(", ")
    ));
    out.push_str(&format!("relation: {} = 0\n", r.relation));
    out.push_str("fundamental matrix M:\n");
    for line in matrix_lines(&r.fundamental_matrix) {
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(&format!("tr(M) = {}\n", r.fundamental_matrix_trace));
    out.push_str(&format!(
        "relation vector G = ({})\n",
        r.relation_vector.join(", ")
    ));
    out.push_str("tangent generators:\n");
    for g in &r.tangent_generators {
        out.push_str(&format!("  {g}\n"));
    }
    for c in &r.curvature {
        out.push_str(&format!("curvature R({}, {}):\n", c.pair[0], c.pair[1]));
        for line in matrix_lines(&c.matrix) {
            out.push_str(&line);
            out.push('\n');
        }
        out.push_str(&format!("  matrix trace = {}\n", c.matrix_trace));
        out.push_str(&format!("  module trace = {}\n", c.module_trace));
        if let Some(cp) = &c.charpoly3 {
            out.push_str(&format!(
                "  charpoly3: trace = {}, middle = {}, det = {}\n",
                cp.trace, cp.middle, cp.det
            ));
        }
    }
    out
}

fn print_reports(reports: &[VerificationReport], json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(reports).expect("serialize")
        );
    } else {
        for r in reports {
            print!("{}", r.render_text());
        }
    }
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    let started = Instant::now();
    let all_pass = match cli.command {
        Command::Report { exponents, json } => {
            let exps = parse_exponents(&exponents.exponents)?;
            let report = build_ring_report(&exps)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serialize")
                );
            } else {
                print!("{}", render_ring_report(&report));
            }
            true
        }
        Command::Verify {
            exponents,
            seed,
            samples,
            suite,
            json,
            corrupt,
        } => {
            let exps = parse_exponents(&exponents.exponents)?;
            if samples == 0 {
                return Err(Error::input("need at least one sample"));
            }
            if let Some(name) = &suite {
                if !SUITE_NAMES.contains(&name.as_str()) {
                    return Err(Error::input(format!(
                        "unknown suite '{name}'; expected one of {}",
                        SUITE_NAMES.join(", ")
                    )));
                }
            }
            let opts = SuiteOptions { seed, samples };
            let reports = projconn::report::run_all(&exps, opts, corrupt, suite.as_deref())?;
            print_reports(&reports, json);
            reports.iter().all(|r| r.all_pass())
        }
        Command::Jets {
            exponents,
            free,
            l,
            k,
            json,
        } => {
            if l < 1 || k < 1 {
                return Err(Error::input("both jet orders must be at least 1"));
            }
            let (base, mp) = match (free, exponents) {
                (Some(rank), _) => {
                    if rank < 2 {
                        return Err(Error::input("free rank must be at least 2"));
                    }
                    let base = EllipsoidRing::build(&vec![2; rank])?;
                    let mp = ModulePresentation::free(base.ctx().clone(), rank);
                    (base, mp)
                }
                (None, Some(text)) => {
                    let exps = parse_exponents(&text)?;
                    let base = EllipsoidRing::build(&exps)?;
                    let km = KaehlerModule::build(&base);
                    (base, km.presentation())
                }
                (None, None) => {
                    return Err(Error::input("need --exponents or --free"));
                }
            };
            let conn = InfinityConnection::from_presentation(&base, mp, l + k)?;
            let report = stratification_probe(&conn, l + k)?;
            print_reports(std::slice::from_ref(&report), json);
            report.all_pass()
        }
        Command::Mcm { m, n, k, l, json } => {
            let pair = FactorizationPair::build(m, n, k, l)?;
            let report = verify_factorization(&pair)?;
            print_reports(std::slice::from_ref(&report), json);
            report.all_pass()
        }
    };
    eprintln!("elapsed: {:?}", started.elapsed());
    Ok(all_pass)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e @ Error::DegreeCap { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
