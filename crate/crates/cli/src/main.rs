//! Command-line front end.
//!
//! One JSON document per answer on stdout, human-readable notes on stderr
//! (silenced by `--json`). Exit codes: 0 success, 1 verification failure,
//! 2 malformed input, 3 unknown suite, 4 sampler guard, 5 I/O failure.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hexablock_cli::json::{
    automorphism_from_str, automorphism_to_value, complex_to_value, hexa_from_str, hexa_to_value,
    matrix_from_str, mu_result_to_value, stratum_str, tetra_class_str, tetra_from_str,
    tetra_to_value,
};
use hexablock_cli::slice::{write_slice, Axis};
use hexablock_cli::verify::{default_cases, run_suite, SUITES};
use hexablock_core::auto::normalize_point;
use hexablock_core::hexa::{e_minus_u, extremal_point, u_bruteforce, u_closed, HexaPoint};
use hexablock_core::mu::{mu_domain_crosscheck, mu_value, MuStructure};
use hexablock_core::sample;
use hexablock_core::tetra::TetraPoint;

#[derive(Parser)]
#[command(name = "hexablock", version, about = "Tetrablock and hexablock toolkit")]
struct Cli {
    /// Machine output only: suppress the stderr summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Domain {
    Tetra,
    Hexa,
}

#[derive(Clone, Copy, ValueEnum)]
enum StructureArg {
    Scalar,
    Diag,
    Upper,
    Full,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Membership verdict with per-method margins.
    Member {
        #[arg(value_enum)]
        domain: Domain,
        /// Point as JSON (`-` reads stdin).
        point: String,
    },
    /// Boundary classification under a tolerance band.
    Classify {
        #[arg(value_enum)]
        domain: Domain,
        point: String,
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
    },
    /// Fiber function u and the squared fiber radius over a tetrablock point.
    U {
        point: String,
        /// Also run the brute-force supremum oracle.
        #[arg(long)]
        brute: bool,
        /// Angular resolution of the brute-force grid.
        #[arg(long, default_value_t = 32)]
        grid: usize,
        #[arg(long, default_value_t = 8)]
        refine: usize,
    },
    /// The maximizer of the fiber family over the bidisc.
    Extremal { point: String },
    /// Structured singular value(s) of a 2×2 matrix.
    Mu {
        /// Row-major matrix `[[re,im],[re,im],[re,im],[re,im]]`.
        matrix: String,
        #[arg(long, value_enum, default_value_t = StructureArg::All)]
        structure: StructureArg,
    },
    /// Automorphism algebra on the hexablock.
    Auto {
        #[command(subcommand)]
        op: AutoOp,
    },
    /// Rejection-sample members, one JSON object per line.
    Sample {
        #[arg(value_enum)]
        domain: Domain,
        #[arg(long, default_value_t = 10)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Export a CSV grid over a 2-plane through the ambient space.
    Slice {
        /// Two of a_re a_im x1_re x1_im x2_re x2_im x3_re x3_im, comma separated.
        #[arg(long, default_value = "a_re,x3_re")]
        axes: String,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
        /// Output path (`-` writes stdout).
        #[arg(long, default_value = "-")]
        out: PathBuf,
        #[arg(long, default_value_t = 1.2)]
        half_width: f64,
        /// Base point JSON for the remaining coordinates (defaults to 0).
        #[arg(long)]
        base: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
    },
    /// Run a named verification suite.
    Verify {
        suite: String,
        /// Cases to run (suite default otherwise).
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum AutoOp {
    /// Apply a transform to a point.
    Apply { transform: String, point: String },
    /// Canonical parameters of `first ∘ second`.
    Compose { first: String, second: String },
    /// Canonical parameters of the inverse.
    Inverse { transform: String },
    /// Normalize a member onto its orbit representative `(a', 0, 0, r)`.
    Normalize { point: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Resolve `-` to stdin.
fn arg_text(raw: &str) -> anyhow::Result<String> {
    if raw == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(raw.to_string())
    }
}

fn emit(cli: &Cli, value: &Value, note: &str) {
    println!("{value}");
    if !cli.json && !note.is_empty() {
        eprintln!("{note}");
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Member { domain: Domain::Tetra, point } => {
            let x = tetra_from_str(&arg_text(point)?)?;
            let m = x.membership_margins();
            let method = |member: bool, margin: Option<f64>| {
                json!({"member": member, "margin": margin})
            };
            let v = json!({
                "domain": "tetra",
                "member": x.is_member(),
                "methods": {
                    "inequality": method(m.inequality > 0.0, Some(m.inequality)),
                    "circle_sup": method(m.circle_sup > 0.0, Some(m.circle_sup)),
                    "matrix_norm": method(m.matrix_norm > 0.0, Some(m.matrix_norm)),
                    "beta_sum": method(m.beta_sum.map_or(false, |v| v > 0.0), m.beta_sum),
                },
            });
            emit(cli, &v, &format!("tetra member: {}", x.is_member()));
        }
        Command::Member { domain: Domain::Hexa, point } => {
            let p = hexa_from_str(&arg_text(point)?)?;
            let base = p.x.is_member();
            let fiber = p.fiber_margin();
            let v = json!({
                "domain": "hexa",
                "member": p.is_member(),
                "base_member": base,
                "fiber_margin": fiber,
                "e_minus_u": if base { e_minus_u(&p.x).ok() } else { None },
            });
            emit(cli, &v, &format!("hexa member: {}", p.is_member()));
        }
        Command::Classify { domain: Domain::Tetra, point, eps } => {
            let x = tetra_from_str(&arg_text(point)?)?;
            let class = tetra_class_str(x.classify(*eps));
            emit(cli, &json!({"class": class}), &format!("class: {class}"));
        }
        Command::Classify { domain: Domain::Hexa, point, eps } => {
            let p = hexa_from_str(&arg_text(point)?)?;
            let stratum = stratum_str(p.stratify(*eps));
            emit(cli, &json!({"stratum": stratum}), &format!("stratum: {stratum}"));
        }
        Command::U { point, brute, grid, refine } => {
            let x = tetra_from_str(&arg_text(point)?)?;
            let v = if x.is_member() {
                let u = u_closed(&x).map_err(|e| anyhow::anyhow!("{e}"))?;
                let brute_val = brute.then(|| u_bruteforce(&x, *grid, *refine));
                json!({
                    "member": true,
                    "u": u,
                    "e_minus_u": (-u).exp(),
                    "u_bruteforce": brute_val,
                })
            } else {
                json!({"member": false, "u": Value::Null, "e_minus_u": Value::Null})
            };
            emit(cli, &v, "");
        }
        Command::Extremal { point } => {
            let x = tetra_from_str(&arg_text(point)?)?;
            let v = if x.is_member() {
                let ext = extremal_point(&x).map_err(|e| anyhow::anyhow!("{e}"))?;
                json!({
                    "member": true,
                    "z1": complex_to_value(ext.z1),
                    "z2": complex_to_value(ext.z2),
                })
            } else {
                json!({"member": false})
            };
            emit(cli, &v, "");
        }
        Command::Mu { matrix, structure } => {
            let a = matrix_from_str(&arg_text(matrix)?)?;
            let one = |s: MuStructure| mu_result_to_value(&mu_value(&a, s));
            let v = match structure {
                StructureArg::Scalar => one(MuStructure::Scalar),
                StructureArg::Diag => one(MuStructure::Diagonal),
                StructureArg::Upper => one(MuStructure::UpperTriangular),
                StructureArg::Full => one(MuStructure::Full),
                StructureArg::All => {
                    let c = mu_domain_crosscheck(&a);
                    json!({
                        "scalar": one(MuStructure::Scalar),
                        "diagonal": one(MuStructure::Diagonal),
                        "upper": one(MuStructure::UpperTriangular),
                        "full": one(MuStructure::Full),
                        "crosscheck": {
                            "mu_diag": c.mu_diag,
                            "mu_upper": c.mu_upper,
                            "tetra_member": c.tetra_member,
                            "hexa_dilated_member": c.hexa_dilated_member,
                            "diag_agrees": c.diag_agrees,
                            "upper_closure_ok": c.upper_closure_ok,
                        },
                    })
                }
            };
            emit(cli, &v, "");
        }
        Command::Auto { op } => return auto_dispatch(cli, op),
        Command::Sample { domain, n, seed } => {
            let mut rng = sample::rng(*seed);
            let mut draws: u64 = 0;
            let mut accepted: u64 = 0;
            while accepted < *n {
                draws += 1;
                // Misconfiguration guard: bail out when acceptance collapses.
                if draws >= 10_000 && (accepted as f64) < 1e-4 * draws as f64 {
                    eprintln!("error: sampler acceptance rate below 1e-4");
                    return Ok(ExitCode::from(4));
                }
                match domain {
                    Domain::Tetra => {
                        let x = sample::tetra_candidate(&mut rng, 1.0);
                        if x.is_member() {
                            accepted += 1;
                            println!("{}", tetra_to_value(&x));
                        }
                    }
                    Domain::Hexa => {
                        let p = sample::hexa_candidate(&mut rng);
                        if p.is_member() {
                            accepted += 1;
                            println!("{}", hexa_to_value(&p));
                        }
                    }
                }
            }
            if !cli.json {
                eprintln!("accepted {accepted} of {draws} draws");
            }
        }
        Command::Slice { axes, resolution, out, half_width, base, eps } => {
            let parts: Vec<&str> = axes.split(',').collect();
            if parts.len() != 2 {
                anyhow::bail!("--axes needs exactly two comma-separated names");
            }
            let ax = (Axis::parse(parts[0].trim())?, Axis::parse(parts[1].trim())?);
            let base_point = match base {
                Some(b) => hexa_from_str(&arg_text(b)?)?,
                None => HexaPoint::from_coords(
                    hexablock_core::Complex::new(0.0, 0.0),
                    hexablock_core::Complex::new(0.0, 0.0),
                    hexablock_core::Complex::new(0.0, 0.0),
                    hexablock_core::Complex::new(0.0, 0.0),
                ),
            };
            let write = |w: &mut dyn std::io::Write| {
                write_slice(w, ax, &base_point, *resolution, *half_width, *eps)
            };
            let io_result = if out.as_os_str() == "-" {
                write(&mut std::io::stdout().lock())
            } else {
                match std::fs::File::create(out) {
                    Ok(mut f) => write(&mut f),
                    Err(e) => {
                        eprintln!("error: cannot write {}: {e}", out.display());
                        return Ok(ExitCode::from(5));
                    }
                }
            };
            if let Err(e) = io_result {
                // Distinguish I/O failures from argument errors.
                if e.downcast_ref::<std::io::Error>().is_some() {
                    eprintln!("error: {e}");
                    return Ok(ExitCode::from(5));
                }
                return Err(e);
            }
            if !cli.json {
                eprintln!("wrote {0}x{0} grid", resolution);
            }
        }
        Command::Verify { suite, n, seed } => {
            let cases = n.unwrap_or_else(|| default_cases(suite));
            let Some(report) = run_suite(suite, cases, *seed) else {
                eprintln!("error: unknown suite \"{suite}\" (known: {})", SUITES.join(", "));
                return Ok(ExitCode::from(3));
            };
            println!("{}", serde_json::to_string(&report)?);
            if !cli.json {
                eprintln!(
                    "suite {}: {}/{} passed, max residual {:.3e}, seed {}",
                    report.suite, report.cases_passed, report.cases_run, report.max_residual,
                    report.seed
                );
            }
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn auto_dispatch(cli: &Cli, op: &AutoOp) -> anyhow::Result<ExitCode> {
    match op {
        AutoOp::Apply { transform, point } => {
            let t = automorphism_from_str(&arg_text(transform)?)?;
            let p = hexa_from_str(&arg_text(point)?)?;
            let q = t.apply(&p).map_err(|e| anyhow::anyhow!("{e}"))?;
            emit(cli, &hexa_to_value(&q), "");
        }
        AutoOp::Compose { first, second } => {
            let t1 = automorphism_from_str(&arg_text(first)?)?;
            let t2 = automorphism_from_str(&arg_text(second)?)?;
            let c = t1.compose(&t2).map_err(|e| anyhow::anyhow!("{e}"))?;
            emit(cli, &automorphism_to_value(&c), "");
        }
        AutoOp::Inverse { transform } => {
            let t = automorphism_from_str(&arg_text(transform)?)?;
            let inv = t.inverse().map_err(|e| anyhow::anyhow!("{e}"))?;
            emit(cli, &automorphism_to_value(&inv), "");
        }
        AutoOp::Normalize { point } => {
            let p = hexa_from_str(&arg_text(point)?)?;
            let (t, r, a_mod) = normalize_point(&p).map_err(|e| anyhow::anyhow!("{e}"))?;
            let check = t.apply(&p).map_err(|e| anyhow::anyhow!("{e}"))?;
            let v = json!({
                "transform": automorphism_to_value(&t),
                "r": r,
                "a_mod": a_mod,
                "image": hexa_to_value(&check),
            });
            emit(cli, &v, &format!("r = {r}, |a'| = {a_mod}"));
        }
    }
    Ok(ExitCode::SUCCESS)
}
