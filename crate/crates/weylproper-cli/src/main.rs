//! `weylproper` — exact decision procedures, with replayable certificates,
//! for properness criteria on SL(n,R)/H with H split abelian, and a
//! certified counterexample search.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;

use weylproper::criteria::{
    benoist_check_with, sl2_obstruction, weyl_membership, BenoistVerdict, MembershipVerdict,
    SplitSubalgebra, WitnessStrategy,
};
use weylproper::search::{hunt, SearchSpec, SearchStats};
use weylproper::sl2_orbits::{a_phi, partitions};
use weylproper::{default_basis, CartanPoint, Error, IrrationalBasis};

mod verify;

const EXIT_OK: u8 = 0;
const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NO_HITS: u8 = 3;

#[derive(Parser)]
#[command(
    name = "weylproper",
    version,
    about = "Exact properness criteria on SL(n,R)/H with machine-checkable certificates",
    after_help = "Exit codes: 0 success/hits, 1 verification mismatch, 2 usage or parse error, 3 empty hunt."
)]
struct Cli {
    /// Emit JSON (one document; JSON-lines for hunt) instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification pipeline for the built-in SL(5,R) example
    /// with normal vector diag(6,6,1,-4,-9).
    #[command(name = "verify-paper")]
    VerifyPaper,

    /// Print the partition table of hyperbolic elements for rank n.
    Table {
        #[arg(long)]
        n: usize,
    },

    /// Decide the criteria for one subalgebra, or membership of one point.
    ///
    /// Vectors use the exact scalar grammar, e.g. `6,6,1,-4,-9` or
    /// `sqrt2,1,0,-1,-sqrt2`; entries must sum to zero exactly.
    Check {
        #[arg(long)]
        n: usize,
        /// Rational normal vector of the subalgebra (repeatable).
        #[arg(long = "normal", required = true)]
        normals: Vec<String>,
        /// Point to test for membership in the union of Weyl images.
        #[arg(long)]
        point: Option<String>,
        /// Witness strategy when the discontinuous-group criterion holds.
        #[arg(long, value_parser = ["symbolic", "rational"], default_value = "symbolic")]
        witness: String,
    },

    /// Search integer normal vectors for subalgebras where the
    /// discontinuous-group criterion holds but no proper SL(2,R)-action
    /// exists.
    Hunt {
        #[arg(long)]
        n: usize,
        /// Maximum absolute entry of candidate normals.
        #[arg(long)]
        bound: i64,
        /// Number of normals per candidate subalgebra.
        #[arg(long, default_value_t = 1)]
        codim: usize,
        /// Parallelism width (default: WEYLPROPER_JOBS, then all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Stop reporting after this many hits.
        #[arg(long)]
        limit: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::VerifyPaper => verify::run(cli.json),
        Command::Table { n } => run_table(*n, cli.json),
        Command::Check {
            n,
            normals,
            point,
            witness,
        } => {
            let strategy = match witness.as_str() {
                "rational" => WitnessStrategy::Rational,
                _ => WitnessStrategy::Symbolic,
            };
            run_check(*n, normals, point.as_deref(), strategy, cli.json)
        }
        Command::Hunt {
            n,
            bound,
            codim,
            jobs,
            limit,
        } => run_hunt(*n, *bound, *codim, *jobs, *limit, cli.json),
    }
}

// --- table ---------------------------------------------------------------

#[derive(Serialize)]
struct TableRowDoc {
    partition: Vec<u32>,
    a_phi: Vec<String>,
}

#[derive(Serialize)]
struct TableDoc {
    command: &'static str,
    n: usize,
    rows: Vec<TableRowDoc>,
}

fn diag(point: &CartanPoint) -> String {
    format!("diag({point})")
}

fn run_table(n: usize, json: bool) -> Result<u8, Error> {
    if n < 2 {
        return Err(Error::InvalidPartition(format!(
            "rank must be at least 2, got {n}"
        )));
    }
    let basis = default_basis(n);
    let elements: Vec<_> = partitions(n)
        .iter()
        .map(|p| a_phi(&basis, p))
        .collect::<Result<_, _>>()?;

    if json {
        let doc = TableDoc {
            command: "table",
            n,
            rows: elements
                .iter()
                .map(|e| TableRowDoc {
                    partition: e.partition().parts().to_vec(),
                    a_phi: e.point().entries().iter().map(|s| s.to_string()).collect(),
                })
                .collect(),
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        );
        return Ok(EXIT_OK);
    }

    let header = format!("Partition of {n}");
    let width = elements
        .iter()
        .map(|e| e.partition().to_string().len())
        .chain([header.len()])
        .max()
        .expect("nonempty");
    println!("{header:<width$}  A_phi");
    for e in &elements {
        println!("{:<width$}  {}", e.partition().to_string(), diag(e.point()));
    }
    Ok(EXIT_OK)
}

// --- check ---------------------------------------------------------------

fn parse_subalgebra(
    basis: &Arc<IrrationalBasis>,
    n: usize,
    normals: &[String],
) -> Result<SplitSubalgebra, Error> {
    let points = normals
        .iter()
        .map(|s| {
            let p = CartanPoint::parse(basis, s)?;
            if p.n() != n {
                return Err(Error::RankMismatch {
                    expected: n,
                    actual: p.n(),
                });
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    SplitSubalgebra::from_points(&points)
}

fn run_check(
    n: usize,
    normals: &[String],
    point: Option<&str>,
    strategy: WitnessStrategy,
    json: bool,
) -> Result<u8, Error> {
    let basis = default_basis(n);
    let h = parse_subalgebra(&basis, n, normals)?;

    if let Some(text) = point {
        let x = CartanPoint::parse(&basis, text)?;
        let cert = weyl_membership(&x, &h)?;
        if json {
            println!(
                "{}",
                serde_json::to_string_pretty(&cert.to_doc()).expect("serializable")
            );
        } else {
            println!(
                "point {} against a subalgebra of dimension {}",
                diag(&x),
                h.dim()
            );
            match cert.verdict {
                MembershipVerdict::Member => {
                    let w = cert.weyl.as_ref().expect("member carries weyl");
                    println!(
                        "member: w = {w} maps the point into the subalgebra ({} images checked)",
                        cert.images_checked
                    );
                    println!("  act(w, point) = {}", diag(&w.act(&x)?));
                }
                MembershipVerdict::NonMember => {
                    println!(
                        "non_member: all {} distinct normal images refuted",
                        cert.images_checked
                    );
                }
            }
        }
        return Ok(EXIT_OK);
    }

    let benoist = benoist_check_with(&h, strategy)?;
    let sl2 = sl2_obstruction(&h)?;

    if json {
        let doc = serde_json::json!({
            "command": "check",
            "n": n,
            "dim_a_h": h.dim(),
            "benoist": benoist.to_doc(),
            "sl2": sl2.to_doc(),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        );
        return Ok(EXIT_OK);
    }

    println!(
        "subalgebra of dimension {} in a Cartan subspace of rank {n}",
        h.dim()
    );
    for (j, v) in h.normals().iter().enumerate() {
        println!("  normal[{j}] = {v}");
    }
    match benoist.verdict {
        BenoistVerdict::Holds => {
            let witness = benoist.witness.as_ref().expect("holds carries witness");
            let membership = benoist
                .witness_membership
                .as_ref()
                .expect("holds carries membership");
            println!("benoist: holds (non-virtually-abelian discontinuous group exists)");
            println!(
                "  witness {} escapes all {} distinct normal images ({} strategy)",
                diag(witness),
                membership.images_checked,
                benoist.strategy
            );
        }
        BenoistVerdict::Fails => {
            let w = benoist.weyl.as_ref().expect("fails carries weyl");
            println!("benoist: fails");
            println!("  w = {w} sends every normal into palindromic position");
        }
    }
    if sl2.proper_sl2_exists {
        println!("sl2: proper SL(2,R)-action exists (proper_sl2_exists = true)");
    } else {
        println!("sl2: no proper SL(2,R)-action (proper_sl2_exists = false)");
    }
    for entry in &sl2.entries {
        println!(
            "  {:<8} {:<20} {}",
            entry.element.partition().to_string(),
            diag(entry.element.point()),
            entry.certificate.verdict
        );
    }
    Ok(EXIT_OK)
}

// --- hunt ----------------------------------------------------------------

#[derive(Serialize)]
struct HuntFooterDoc {
    #[serde(flatten)]
    stats: SearchStats,
    truncated: bool,
}

fn resolve_jobs(flag: Option<usize>) -> Result<usize, Error> {
    if let Some(jobs) = flag {
        return Ok(jobs);
    }
    if let Ok(value) = std::env::var("WEYLPROPER_JOBS") {
        return value.parse().map_err(|_| {
            Error::InvalidSearchSpec(format!(
                "WEYLPROPER_JOBS must be a positive integer, got '{value}'"
            ))
        });
    }
    Ok(std::thread::available_parallelism().map_or(1, |p| p.get()))
}

fn run_hunt(
    n: usize,
    bound: i64,
    codim: usize,
    jobs: Option<usize>,
    limit: Option<usize>,
    json: bool,
) -> Result<u8, Error> {
    let jobs = resolve_jobs(jobs)?;
    let mut spec = SearchSpec::new(n, bound)?
        .with_codim(codim)?
        .with_jobs(jobs)?;
    if let Some(limit) = limit {
        spec = spec.with_limit(limit);
    }
    let outcome = hunt(&spec)?;

    if json {
        for hit in &outcome.hits {
            println!(
                "{}",
                serde_json::to_string(&hit.to_doc()).expect("serializable")
            );
        }
        let footer = HuntFooterDoc {
            stats: outcome.stats,
            truncated: outcome.truncated,
        };
        println!("{}", serde_json::to_string(&footer).expect("serializable"));
    } else {
        for hit in &outcome.hits {
            let normals: Vec<String> = hit
                .normals
                .iter()
                .map(|v| {
                    let entries: Vec<String> = v.iter().map(i64::to_string).collect();
                    format!("diag({})", entries.join(","))
                })
                .collect();
            println!("hit: {}", normals.join(" ; "));
        }
        let s = &outcome.stats;
        println!(
            "candidates {}, palindrome rejects {}, sl2 rejects {}, hits {}, elapsed {} ms{}",
            s.candidates,
            s.palindrome_rejects,
            s.sl2_rejects,
            s.hits,
            s.elapsed_ms,
            if outcome.truncated {
                " (truncated)"
            } else {
                ""
            }
        );
    }

    Ok(if outcome.stats.hits > 0 {
        EXIT_OK
    } else {
        EXIT_NO_HITS
    })
}
