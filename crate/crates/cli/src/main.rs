//! `tpqg` — exact computations in two-parameter quantum groups.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tpqg_cli::expr::{parse_element, print_element};
use tpqg_cli::suites::{
    normal_to_element, run_suite, CaseFilter, ParamMode, SuiteConfig, SuiteKind,
};
use tpqg_core::cartan::{CartanDatum, Weight};
use tpqg_core::freealg::Generator;
use tpqg_core::kashiwara::{derive, DerivationFlavor};
use tpqg_core::pairing::PairingEngine;
use tpqg_core::urs::{SerreContext, UrsAlgebra};

#[derive(Parser)]
#[command(
    name = "tpqg",
    version,
    about = "Exact computations in two-parameter quantum groups",
    long_about = "Construct two-parameter quantum groups from a Cartan datum, compute \
                  triangular normal forms, evaluate the skew Hopf pairing and the skew \
                  derivations, and run mechanical verification suites over the defining \
                  identities."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Named Cartan type: A1, A2, A3, ..., B2, B3, C3, D4, E6, E7, E8, F4, G2
    #[arg(long = "type", value_name = "NAME")]
    type_name: Option<String>,

    /// Cartan matrix rows, e.g. "2,-1;-1,2"
    #[arg(long, value_name = "ROWS", conflicts_with = "type_name")]
    matrix: Option<String>,

    /// Symmetrizing multipliers for --matrix, e.g. "1,1"
    #[arg(long, value_name = "LIST", requires = "matrix")]
    symmetrizers: Option<String>,
}

impl AlgebraArgs {
    fn build(&self) -> Result<(CartanDatum, String), String> {
        match (&self.type_name, &self.matrix) {
            (Some(name), None) => {
                let cartan = CartanDatum::named(name).map_err(|e| e.to_string())?;
                Ok((cartan, name.clone()))
            }
            (None, Some(rows)) => {
                let a = parse_matrix(rows)?;
                let cartan = match &self.symmetrizers {
                    Some(list) => {
                        CartanDatum::with_symmetrizers(a, parse_int_list(list)?)
                            .map_err(|e| e.to_string())?
                    }
                    None => CartanDatum::new(a).map_err(|e| e.to_string())?,
                };
                Ok((cartan, "custom".into()))
            }
            (None, None) => Err("specify an algebra with --type or --matrix".into()),
            (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
        }
    }

    fn algebra(&self) -> Result<(UrsAlgebra, String), String> {
        let (cartan, label) = self.build()?;
        Ok((UrsAlgebra::new(cartan), label))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the Cartan datum, parameters, and generators of the algebra
    Info {
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// Dimensions of the graded raising pieces up to a height bound
    Dim {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Largest weight height to tabulate
        #[arg(long, default_value_t = 4)]
        max_height: i64,
    },
    /// Normal form of an expression modulo all defining relations
    Reduce {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Element expression, e.g. "e1*e2 - (r+s)*e2*e1"
        expr: String,
    },
    /// Triangular normal form of an expression (no Serre reduction)
    Straighten {
        #[command(flatten)]
        alg: AlgebraArgs,
        expr: String,
    },
    /// Evaluate the skew pairing (lowering, raising)
    Pair {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Lowering-half expression (f letters, optional ω′ factors)
        lowering: String,
        /// Raising-half expression (e letters, optional ω factors)
        raising: String,
    },
    /// Gram matrix of the pairing at a positive weight
    Gram {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Weight coordinates, e.g. "1,1"
        weight: String,
    },
    /// Apply the skew derivation at a node to a raising expression
    Del {
        #[command(flatten)]
        alg: AlgebraArgs,
        node: usize,
        expr: String,
    },
    /// Apply the primed skew derivation at a node to a raising expression
    Delp {
        #[command(flatten)]
        alg: AlgebraArgs,
        node: usize,
        expr: String,
    },
    /// Run a verification suite and report per-case results
    Verify {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Suite: relations, hopf, pairing, cocycle, kashiwara, or all
        suite: String,
        /// Height bound for exhaustive scans (at most 7)
        #[arg(long, default_value_t = 4)]
        max_height: i64,
        /// Parameter mode: exact or specialize
        #[arg(long, default_value = "exact")]
        mode: String,
        /// Seed for randomized probes and sampled parameter points
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Twist constraint for the cocycle suite: I, II, or both
        #[arg(long, default_value = "both")]
        case: String,
        /// Write the structured JSON report to this file
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn parse_int_list(text: &str) -> Result<Vec<i64>, String> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("invalid integer '{}'", t.trim()))
        })
        .collect()
}

fn parse_matrix(text: &str) -> Result<Vec<Vec<i64>>, String> {
    text.split(';').map(parse_int_list).collect()
}

fn parse_weight(text: &str, rank: usize) -> Result<Weight, String> {
    let coords = parse_int_list(text)?;
    if coords.len() != rank {
        return Err(format!(
            "weight has {} coordinates but the algebra has rank {rank}",
            coords.len()
        ));
    }
    Ok(Weight(coords))
}

/// The tallest Serre element of the type; reduction contexts must reach it.
fn serre_height(cartan: &CartanDatum) -> i64 {
    let n = cartan.rank();
    let mut h = 2;
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                h = h.max(2 - cartan.a(i, j));
            }
        }
    }
    h
}

/// Height needed to reduce an expression: the largest count of raising or
/// lowering letters in any of its words.
fn needed_height(x: &tpqg_core::freealg::Element) -> i64 {
    let mut h = 1;
    for (w, _) in x.terms() {
        let mut es = 0i64;
        let mut fs = 0i64;
        for g in w.gens() {
            match g {
                Generator::E(_) => es += 1,
                Generator::F(_) => fs += 1,
                _ => {}
            }
        }
        h = h.max(es).max(fs);
    }
    h
}

fn check_node(node: usize, rank: usize) -> Result<(), String> {
    if node == 0 || node > rank {
        Err(format!(
            "index out of range: node {node} in a rank-{rank} algebra"
        ))
    } else {
        Ok(())
    }
}

fn positive_weights_of_height(rank: usize, h: i64) -> Vec<Weight> {
    fn go(rank: usize, pos: usize, left: i64, acc: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if pos == rank {
            if left == 0 {
                out.push(Weight(acc.clone()));
            }
            return;
        }
        for c in (0..=left).rev() {
            acc.push(c);
            go(rank, pos + 1, left - c, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(rank, 0, h, &mut Vec::new(), &mut out);
    out
}

fn run_derivation(
    alg: &AlgebraArgs,
    flavor: DerivationFlavor,
    node: usize,
    expr: &str,
) -> Result<ExitCode, String> {
    let (algebra, _) = alg.algebra()?;
    check_node(node, algebra.rank())?;
    let x = parse_element(expr, &algebra).map_err(|e| e.to_string())?;
    let out = derive(&algebra, flavor, node, &x).map_err(|e| e.to_string())?;
    println!("{}", print_element(&out));
    Ok(ExitCode::SUCCESS)
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Info { alg } => {
            let (cartan, label) = alg.build()?;
            let a = UrsAlgebra::new(cartan.clone());
            println!("type: {label}");
            println!("rank: {}", cartan.rank());
            println!("cartan matrix:");
            for row in cartan.matrix() {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
                println!("  [{}]", cells.join(" "));
            }
            let ds: Vec<String> = cartan.symmetrizers().iter().map(|d| d.to_string()).collect();
            println!("symmetrizers: ({})", ds.join(", "));
            println!("node parameters:");
            for i in 1..=cartan.rank() {
                println!("  node {i}: r_i = {}, s_i = {}", a.r_i(i), a.s_i(i));
            }
            println!("generators: e1..e{n}, f1..f{n}, w[μ], wp[ν]", n = cartan.rank());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Dim { alg, max_height } => {
            let (algebra, label) = alg.algebra()?;
            if !(1..=tpqg_cli::suites::MAX_HEIGHT_LIMIT).contains(&max_height) {
                return Err(format!(
                    "height bound {max_height} exceeds maximum {}",
                    tpqg_cli::suites::MAX_HEIGHT_LIMIT
                ));
            }
            let rank = algebra.rank();
            let ctx = SerreContext::new(&algebra, max_height.max(serre_height(algebra.cartan())));
            println!("graded dimensions of the raising half ({label}):");
            for h in 1..=max_height {
                for beta in positive_weights_of_height(rank, h) {
                    let d = ctx.dim_plus(&beta).map_err(|e| e.to_string())?;
                    println!("  height {h}: {beta}  dim {d}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Reduce { alg, expr } => {
            let (algebra, _) = alg.algebra()?;
            let x = parse_element(&expr, &algebra).map_err(|e| e.to_string())?;
            let h = needed_height(&x).max(serre_height(algebra.cartan()));
            let ctx = SerreContext::new(&algebra, h);
            let reduced = ctx.reduce_normal(&x).map_err(|e| e.to_string())?;
            println!("{}", print_element(&reduced));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Straighten { alg, expr } => {
            let (algebra, _) = alg.algebra()?;
            let x = parse_element(&expr, &algebra).map_err(|e| e.to_string())?;
            let normal = algebra.straighten(&x);
            println!("{}", print_element(&normal_to_element(&normal)));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Pair { alg, lowering, raising } => {
            let (algebra, _) = alg.algebra()?;
            let y = parse_element(&lowering, &algebra).map_err(|e| e.to_string())?;
            let x = parse_element(&raising, &algebra).map_err(|e| e.to_string())?;
            let engine = PairingEngine::new(&algebra);
            let value = engine.pair(&y, &x).map_err(|e| e.to_string())?;
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Gram { alg, weight } => {
            let (algebra, _) = alg.algebra()?;
            let beta = parse_weight(&weight, algebra.rank())?;
            if beta.height() < 1 || beta.0.iter().any(|&c| c < 0) {
                return Err("gram weight must be a nonzero nonnegative combination".into());
            }
            let h = beta.height().max(serre_height(algebra.cartan()));
            let ctx = SerreContext::new(&algebra, h);
            let engine = PairingEngine::new(&algebra);
            let gram = engine.gram(&beta, &ctx).map_err(|e| e.to_string())?;
            println!("gram matrix at {beta} ({} × {} basis):", gram.len(), gram.len());
            for row in &gram {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                println!("  [{}]", cells.join(",  "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Del { alg, node, expr } => {
            run_derivation(&alg, DerivationFlavor::Unprimed, node, &expr)
        }
        Cmd::Delp { alg, node, expr } => {
            run_derivation(&alg, DerivationFlavor::Primed, node, &expr)
        }
        Cmd::Verify {
            alg,
            suite,
            max_height,
            mode,
            seed,
            case,
            out,
        } => {
            let (cartan, label) = alg.build()?;
            let suite =
                SuiteKind::parse(&suite).ok_or_else(|| format!("unknown suite '{suite}'"))?;
            let mode =
                ParamMode::parse(&mode).ok_or_else(|| format!("unknown mode '{mode}'"))?;
            let case =
                CaseFilter::parse(&case).ok_or_else(|| format!("unknown case filter '{case}'"))?;
            let mut cfg = SuiteConfig::new(suite, cartan, label);
            cfg.max_height = max_height;
            cfg.mode = mode;
            cfg.seed = seed;
            cfg.case = case;
            let report = run_suite(&cfg)?;
            print!("{}", report.render_text());
            if let Some(path) = out {
                std::fs::write(&path, report.to_json())
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
