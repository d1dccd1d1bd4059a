//! `ppn`: boundary measurements, Poisson brackets and cluster checks for perfect planar networks.

mod gen;
mod verify;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use exprcore::RationalFunction as RF;
use network::Network;

#[derive(Parser)]
#[command(name = "ppn", version, about = "Perfect planar networks: measurements, brackets, cluster checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a network as JSON
    Gen {
        #[command(subcommand)]
        which: gen::Which,
    },
    /// Check the network rules; prints "ok" or one violation per line
    Validate { file: Option<PathBuf> },
    /// Boundary measurement matrix, rows tab-separated
    Measure { file: Option<PathBuf> },
    /// Extended (Grassmannian) matrix with signed entries
    Grassmannian { file: Option<PathBuf> },
    /// Plücker coordinates and the short Plücker relations
    Plucker { file: Option<PathBuf> },
    /// Faces with boundary sequences and weights
    Faces { file: Option<PathBuf> },
    /// Directed dual network: "fA -> fB<TAB>weight<TAB>edge"
    Dual {
        file: Option<PathBuf>,
        #[arg(long, default_value = "alpha", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "beta", allow_hyphen_values = true)]
        beta: String,
    },
    /// Flag-level brackets of pairs of measurement entries
    Bracket {
        file: Option<PathBuf>,
        #[arg(long, default_value = "alpha", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "beta", allow_hyphen_values = true)]
        beta: String,
    },
    /// Push the flag bracket forward and compare with the matrix bracket
    VerifyPsme(verify::PsmeArgs),
    /// Modified classical Yang-Baxter equation for R_{alpha,beta}
    VerifyMcybe(verify::McybeArgs),
    /// Jacobi identity of the matrix bracket and the s-function identities
    VerifyJacobi(verify::JacobiArgs),
    /// Compatibility of the network bracket with the Grassmannian cluster structure
    ClusterCompat {
        k: usize,
        m: usize,
        #[arg(long, default_value = "alpha", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "beta", allow_hyphen_values = true)]
        beta: String,
    },
    /// Glue two square networks; with --check compare matrices with the product
    Concat {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        check: bool,
    },
}

/// Parse an expression, treating every identifier in it as a variable.
pub fn parse_param(text: &str) -> Result<RF> {
    let mut names: Vec<String> = Vec::new();
    let mut cur = String::new();
    for c in text.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_alphanumeric() || c == '_' {
            cur.push(c);
        } else if !cur.is_empty() {
            if !cur.starts_with(|c: char| c.is_ascii_digit()) && !names.contains(&cur) {
                names.push(cur.clone());
            }
            cur.clear();
        }
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    exprcore::parse_with(text, &refs).with_context(|| format!("bad expression '{text}'"))
}

pub fn read_text(file: Option<&PathBuf>) -> Result<String> {
    match file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn source_name(file: Option<&PathBuf>) -> String {
    file.map(|p| p.display().to_string()).unwrap_or_else(|| "<stdin>".into())
}

pub fn read_network(file: Option<&PathBuf>) -> Result<Network> {
    let text = read_text(file)?;
    Network::from_json(&text).with_context(|| format!("{}", source_name(file)))
}

/// Parsed and checked against the network rules.
pub fn read_valid(file: Option<&PathBuf>) -> Result<Network> {
    let net = read_network(file)?;
    let bad = network::validate(&net);
    if let Some(v) = bad.first() {
        bail!("{}: invalid network: {} ({} violations)", source_name(file), v, bad.len());
    }
    Ok(net)
}

fn matrix_text(rows: &[Vec<RF>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\t") + "\n")
        .collect()
}

fn pass_line(ok: bool, detail: &str) -> u8 {
    println!("{} {}", if ok { "PASS" } else { "FAIL" }, detail);
    u8::from(!ok)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Gen { which } => {
            print!("{}", gen::generate(which)?.to_json());
            Ok(0)
        }
        Cmd::Validate { file } => {
            let net = read_network(file.as_ref())?;
            let bad = network::validate(&net);
            if bad.is_empty() {
                println!("ok");
            }
            for v in &bad {
                println!("{v}");
            }
            Ok(u8::from(!bad.is_empty()))
        }
        Cmd::Measure { file } => {
            print!("{}", measurement::measurement_matrix(&read_valid(file.as_ref())?));
            Ok(0)
        }
        Cmd::Grassmannian { file } => {
            print!("{}", matrix_text(&measurement::extended_matrix(&read_valid(file.as_ref())?).matrix));
            Ok(0)
        }
        Cmd::Plucker { file } => {
            let net = read_valid(file.as_ref())?;
            let p = measurement::plucker(&measurement::extended_matrix(&net));
            for (cols, x) in &p.coords {
                let set: Vec<String> = cols.iter().map(|c| (c + 1).to_string()).collect();
                println!("x{{{}}}\t{}", set.join(","), x);
            }
            let res = measurement::short_plucker_residuals(&p);
            let bad = res.iter().filter(|r| !r.is_zero()).count();
            Ok(pass_line(bad == 0, &format!("short Plücker relations: {} checked, {} nonzero", res.len(), bad)))
        }
        Cmd::Faces { file } => {
            let net = read_valid(file.as_ref())?;
            let fs = faces::enumerate_faces(&net)?;
            print!("{}", faces::render_faces(&net, &fs));
            Ok(0)
        }
        Cmd::Dual { file, alpha, beta } => {
            let net = read_valid(file.as_ref())?;
            let fs = faces::enumerate_faces(&net)?;
            let d = faces::dual_network_with(&net, &fs, &parse_param(&alpha)?, &parse_param(&beta)?);
            for e in &d.edges {
                println!("f{} -> f{}\t{}\t{}", e.from + 1, e.to + 1, e.weight, net.edges[e.primal].id);
            }
            Ok(0)
        }
        Cmd::Bracket { file, alpha, beta } => {
            let net = read_valid(file.as_ref())?;
            print!("{}", verify::entry_brackets(&net, &parse_param(&alpha)?, &parse_param(&beta)?));
            Ok(0)
        }
        Cmd::VerifyPsme(a) => verify::psme(a),
        Cmd::VerifyMcybe(a) => verify::mcybe(a),
        Cmd::VerifyJacobi(a) => verify::jacobi(a),
        Cmd::ClusterCompat { k, m, alpha, beta } => {
            let (a, b) = (parse_param(&alpha)?, parse_param(&beta)?);
            let rep = cluster::check_compatibility(k, m, &a, &b)?;
            println!("B~:");
            for row in &rep.b {
                println!("{}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\t"));
            }
            println!("kappa: {}", rep.kappa.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            println!("Omega (first rows):");
            print!("{}", matrix_text(&rep.omega));
            match &rep.factor {
                Some(f) => println!("factor: {f}"),
                None => println!("factor: none"),
            }
            if let Some((r, c)) = rep.first_mismatch {
                println!("first mismatch: row {} column {}", r + 1, c + 1);
            }
            println!("stable variables commute with cluster tau: {}", rep.stable_commute);
            Ok(pass_line(rep.passes(&a, &b), &format!("k={k} m={m}")))
        }
        Cmd::Concat { first, second, check } => {
            let (a, b) = (read_valid(Some(&first))?, read_valid(Some(&second))?);
            let net = measurement::concat_square(&a, &b)?;
            if !check {
                print!("{}", net.to_json());
                return Ok(0);
            }
            let got = measurement::square_matrix(&net);
            let want = measurement::mat_mul(&measurement::square_matrix(&a), &measurement::square_matrix(&b));
            print!("{}", matrix_text(&got));
            let ok = got.len() == want.len() && got.iter().zip(&want).all(|(r, s)| r.len() == s.len() && r.iter().zip(s).all(|(x, y)| x.equals(y)));
            Ok(pass_line(ok, "matrix of the concatenation equals the product"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
