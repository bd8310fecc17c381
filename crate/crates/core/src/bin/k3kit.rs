//! Command-line front door. Exit codes: 0 on pass, 1 on a domain error or a
//! failed check, 2 on unparsable input.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::json;

use k3kit::acceptance;
use k3kit::classifier::{self, SurfaceDescriptor};
use k3kit::elliptic::{analyze, WeierstrassModel};
use k3kit::lattice::Lattice;
use k3kit::matrix::IntMat;
use k3kit::motive::{theorem1_decide, ValenceOutcome};
use k3kit::nikulin;
use k3kit::nsclass;
use k3kit::ratpoly::RatPoly;
use k3kit::report::Report;

#[derive(Parser)]
#[command(name = "k3kit", version, about = "exact-arithmetic K3 lattice and motive workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct JsonFlag {
    /// Emit the report as JSON (sorted keys, byte-stable).
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice invariants: determinant, signature, parity, discriminant group.
    Lattice {
        #[command(subcommand)]
        op: LatticeOp,
    },
    /// The rank-22 model with the block-swap involution.
    Nikulin {
        #[command(subcommand)]
        op: NikulinOp,
    },
    /// Neron-Severi candidates for polarization degree 2d.
    Ns {
        #[command(subcommand)]
        op: NsOp,
    },
    /// Elliptic fibration fiber analysis.
    Elliptic {
        #[command(subcommand)]
        op: EllipticOp,
    },
    /// Valence calculus decisions.
    Motive {
        #[command(subcommand)]
        op: MotiveOp,
    },
    /// Run the rule engine on a surface descriptor JSON file.
    Classify {
        /// Path to a descriptor JSON file.
        #[arg(long)]
        descriptor: String,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Run the full acceptance suite.
    Selftest {
        #[command(flatten)]
        json: JsonFlag,
    },
}

#[derive(Subcommand)]
enum LatticeOp {
    Invariants {
        /// Named lattice: U, E8, E8_MINUS_1, RANK1(k).
        #[arg(long, conflicts_with = "literal")]
        name: Option<String>,
        /// Literal JSON: {"rank": n, "gram": [[...], ...]}.
        #[arg(long)]
        literal: Option<String>,
        #[command(flatten)]
        json: JsonFlag,
    },
}

#[derive(Subcommand)]
enum NikulinOp {
    Verify {
        #[command(flatten)]
        json: JsonFlag,
    },
}

#[derive(Subcommand)]
enum NsOp {
    Classify {
        #[arg(long)]
        d: i64,
        #[command(flatten)]
        json: JsonFlag,
    },
}

#[derive(Subcommand)]
enum EllipticOp {
    Analyze {
        /// Coefficients of a(t), comma-separated rationals ascending by degree.
        #[arg(long)]
        a: String,
        /// Coefficients of b(t), same format.
        #[arg(long)]
        b: String,
        /// Analyze the 2-isogeny quotient instead.
        #[arg(long)]
        quotient: bool,
        #[command(flatten)]
        json: JsonFlag,
    },
}

#[derive(Subcommand)]
enum MotiveOp {
    /// Apply the valence criterion to an involution graph.
    Decide {
        /// Valence as an exact rational, e.g. 1, -1, 3/2.
        #[arg(long, allow_hyphen_values = true)]
        valence: String,
        /// Geometric genus of the surface.
        #[arg(long)]
        pg: u32,
        #[command(flatten)]
        json: JsonFlag,
    },
}

/// Input that failed to parse (exit 2) vs. a well-formed input the domain
/// rejected (exit 1).
enum CmdError {
    Parse(String),
    Domain(String),
}

fn parse_rationals(s: &str) -> Result<RatPoly, CmdError> {
    let coeffs: Result<Vec<BigRational>, _> = s
        .split(',')
        .map(|tok| BigRational::from_str(tok.trim()))
        .collect();
    match coeffs {
        Ok(c) => Ok(RatPoly::from_coeffs(c)),
        Err(e) => Err(CmdError::Parse(format!("bad coefficient list {s:?}: {e}"))),
    }
}

fn emit(report: &Report, json: bool) -> ExitCode {
    if json {
        println!("{}", report.to_json_string());
    } else {
        print!("{}", report.to_text());
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, CmdError> {
    match cli.command {
        Command::Lattice {
            op: LatticeOp::Invariants {
                name,
                literal,
                json,
            },
        } => {
            let (lattice, input_echo) = match (name, literal) {
                (Some(n), None) => {
                    let l = Lattice::by_name(&n)
                        .map_err(|e| CmdError::Domain(e.to_string()))?;
                    (l, json!({ "name": n }))
                }
                (None, Some(lit)) => {
                    let v: serde_json::Value = serde_json::from_str(&lit)
                        .map_err(|e| CmdError::Parse(format!("bad literal: {e}")))?;
                    let rank = v["rank"].as_u64().ok_or_else(|| {
                        CmdError::Parse("literal missing integer \"rank\"".into())
                    })? as usize;
                    let rows: Vec<Vec<i64>> =
                        serde_json::from_value(v["gram"].clone()).map_err(|e| {
                            CmdError::Parse(format!("bad \"gram\" entries: {e}"))
                        })?;
                    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
                        return Err(CmdError::Parse(
                            "gram shape does not match rank".into(),
                        ));
                    }
                    let l = Lattice::new(IntMat::from_rows(&rows))
                        .map_err(|e| CmdError::Domain(e.to_string()))?;
                    (l, v)
                }
                _ => {
                    return Err(CmdError::Parse(
                        "exactly one of --name or --literal is required".into(),
                    ))
                }
            };
            let inv = lattice
                .invariants()
                .map_err(|e| CmdError::Domain(e.to_string()))?;
            let disc = lattice
                .discriminant_group()
                .map_err(|e| CmdError::Domain(e.to_string()))?;
            let report = Report::new(
                "lattice invariants",
                input_echo,
                json!({
                    "invariants": inv,
                    "discriminant_group": disc.invariant_factors
                        .iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                }),
                true,
                vec![],
            );
            Ok(emit(&report, json.json))
        }

        Command::Nikulin {
            op: NikulinOp::Verify { json },
        } => {
            let model = nikulin::build_model().map_err(|e| CmdError::Domain(e.to_string()))?;
            let inv = model
                .lattice
                .invariants()
                .map_err(|e| CmdError::Domain(e.to_string()))?;
            let check = nikulin::verify_invariant_lattices(&model)
                .map_err(|e| CmdError::Domain(e.to_string()))?;
            let checks = vec![
                ("rank 22", inv.rank == 22),
                ("signature (3,19)", inv.signature == (3, 19)),
                ("even unimodular", inv.even && inv.unimodular),
                ("swap is an involution", model.swap.is_involution()),
                ("swap trace 6", model.swap.trace() == 6.into()),
                ("fixed sublattice is U^3 + E8(-2)", check.fixed_ok),
                ("antifixed sublattice is E8(-2)", check.antifixed_ok),
            ];
            let pass = checks.iter().all(|(_, ok)| *ok);
            let report = Report::new(
                "nikulin verify",
                json!({}),
                json!({
                    "checks": checks
                        .iter()
                        .map(|(name, ok)| json!({ "check": name, "ok": ok }))
                        .collect::<Vec<_>>(),
                    "fixed_rank": check.fixed_rank,
                    "antifixed_rank": check.antifixed_rank,
                }),
                pass,
                vec![
                    "Lem 2: the involution fixes U^3, swaps the two E8(-1) blocks, and has \
                     trace 6 on degree-2 cohomology"
                        .to_string(),
                ],
            );
            Ok(emit(&report, json.json))
        }

        Command::Ns {
            op: NsOp::Classify { d, json },
        } => {
            let rep = nsclass::report(d).map_err(|e| CmdError::Domain(e.to_string()))?;
            let report = Report::new(
                "ns classify",
                json!({ "d": d }),
                serde_json::to_value(&rep).expect("report serializes"),
                true,
                vec![
                    "Thm 6: the Neron-Severi lattice of degree 2d is Z L + E8(-2), or for even \
                     d its index-2 even overlattice glued by a half class (L + v)/2"
                        .to_string(),
                ],
            );
            Ok(emit(&report, json.json))
        }

        Command::Elliptic {
            op: EllipticOp::Analyze {
                a,
                b,
                quotient,
                json,
            },
        } => {
            let a_poly = parse_rationals(&a)?;
            let b_poly = parse_rationals(&b)?;
            let model = WeierstrassModel::new(a_poly, b_poly)
                .map_err(|e| CmdError::Domain(e.to_string()))?;
            let rep = analyze(&model, quotient).map_err(|e| CmdError::Domain(e.to_string()))?;
            let citations = rep.citations.clone();
            let report = Report::new(
                "elliptic analyze",
                json!({ "a": a, "b": b, "quotient": quotient }),
                serde_json::to_value(&rep).expect("report serializes"),
                true,
                citations,
            );
            Ok(emit(&report, json.json))
        }

        Command::Motive {
            op: MotiveOp::Decide { valence, pg, json },
        } => {
            let v = BigRational::from_str(valence.trim())
                .map_err(|e| CmdError::Parse(format!("bad valence {valence:?}: {e}")))?;
            let outcome =
                theorem1_decide(&v, pg).map_err(|e| CmdError::Domain(e.to_string()))?;
            let report = Report::new(
                "motive decide",
                json!({ "valence": valence, "pg": pg }),
                json!({ "outcome": format!("{:?}", outcome) }),
                true,
                vec![match outcome {
                    ValenceOutcome::T2QuotientZero => {
                        "Thm 1: valence +1 of the involution graph kills t2 of the quotient"
                            .to_string()
                    }
                    ValenceOutcome::T2Isomorphism => {
                        "Thm 1: valence -1 of the involution graph gives t2(X) isomorphic to \
                         t2(Y)"
                            .to_string()
                    }
                }],
            );
            Ok(emit(&report, json.json))
        }

        Command::Classify { descriptor, json } => {
            let text = std::fs::read_to_string(&descriptor)
                .map_err(|e| CmdError::Parse(format!("cannot read {descriptor:?}: {e}")))?;
            let desc: SurfaceDescriptor = serde_json::from_str(&text)
                .map_err(|e| CmdError::Parse(format!("bad descriptor JSON: {e}")))?;
            let derivation =
                classifier::classify(&desc).map_err(|e| CmdError::Domain(e.to_string()))?;
            let explanation = classifier::explain(&derivation);
            let citations = derivation
                .facts
                .iter()
                .map(|f| f.citation.clone())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            let report = Report::new(
                "classify",
                serde_json::to_value(&desc).expect("descriptor echoes"),
                serde_json::to_value(&explanation).expect("derivation serializes"),
                true,
                citations,
            );
            if json.json {
                Ok(emit(&report, true))
            } else {
                print!("{}", classifier::explain_text(&derivation));
                Ok(ExitCode::SUCCESS)
            }
        }

        Command::Selftest { json } => {
            let results = acceptance::run_all();
            let pass = results.iter().all(|r| r.outcome.is_ok());
            if json.json {
                let report = Report::new(
                    "selftest",
                    json!({ "seed": acceptance::seed_base() }),
                    json!({
                        "criteria": results
                            .iter()
                            .map(|r| json!({
                                "name": r.name,
                                "ok": r.outcome.is_ok(),
                                "detail": r.outcome.as_ref().err(),
                            }))
                            .collect::<Vec<_>>(),
                    }),
                    pass,
                    vec![],
                );
                Ok(emit(&report, true))
            } else {
                for r in &results {
                    match &r.outcome {
                        Ok(()) => println!("PASS {}", r.name),
                        Err(e) => println!("FAIL {} — {}", r.name, e),
                    }
                }
                Ok(if pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CmdError::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
