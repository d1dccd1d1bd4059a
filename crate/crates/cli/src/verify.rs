use std::collections::HashMap;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use exprcore::{RationalFunction as RF, Var, VarTable};
use measurement::{measurement_matrix, Elementary};
use network::flags::{assign_flag_variables, assign_flag_variables_with, full_params, reduced_params, FLAG_CONVENTION};
use network::{gen, Network};
use poisson::{check_jacobi_ij, mcybe_check, verify_pushforward, verify_pushforward_full, Bracket, CheckRecord, Params, RMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::{parse_param, read_valid};

#[derive(Args)]
pub struct PsmeArgs {
    /// fig1, g24, elementary, or a network file; repeatable
    #[arg(long)]
    net: Vec<String>,
    /// also check this many random networks
    #[arg(long, default_value_t = 0)]
    random: usize,
    #[arg(long, default_value_t = 5)]
    max_internal: usize,
    #[arg(long, default_value_t = 17)]
    seed: u64,
    #[arg(long, default_value = "alpha", allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value = "beta", allow_hyphen_values = true)]
    beta: String,
    /// also push forward the unreduced six-parameter bracket
    #[arg(long)]
    six_parameter: bool,
    /// worker threads; 0 picks the number of cores
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
pub struct McybeArgs {
    #[arg(long, default_value_t = 5)]
    max_k: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// "alpha,beta" rational pair; repeatable
    #[arg(long, allow_hyphen_values = true)]
    sample: Vec<String>,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
pub struct JacobiArgs {
    /// largest n for the symbolic cyclic-sum check
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    /// largest n for the s-function identities
    #[arg(long, default_value_t = 8)]
    identities_max_n: usize,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?.install(f))
}

fn summary(ok: bool, total: usize, failed: usize) -> u8 {
    if ok {
        println!("PASS ({total} checks)");
    } else {
        println!("FAIL ({failed} of {total} checks failed)");
    }
    u8::from(!ok)
}

/// Diagonal, E^-, E^+, rho^- and rho^+ networks on two and three strands.
pub fn elementary_networks() -> Vec<Network> {
    let vars = VarTable::from_names(["t", "c", "d", "d1", "d2", "d3"].iter());
    let v = |s: &str| RF::var(Var::new(s));
    let mut out = Vec::new();
    for n in 2..=3 {
        out.push(Elementary::Diag((1..=n).map(|i| v(&format!("d{i}"))).collect()).network(n, vars.clone()).unwrap());
        for i in 2..=n {
            for e in [
                Elementary::Minus(i, v("t")),
                Elementary::Plus(i, v("t")),
                Elementary::RhoMinus(i, v("c"), v("d")),
                Elementary::RhoPlus(i, v("c"), v("d")),
            ] {
                out.push(e.network(n, vars.clone()).unwrap());
            }
        }
    }
    out
}

pub fn random_networks(seed: u64, count: usize, max_internal: usize) -> Vec<Network> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| gen::random_network(&mut rng, max_internal, 6)).collect()
}

fn named_networks(names: &[String]) -> Result<Vec<Network>> {
    let mut out = Vec::new();
    for name in names {
        match name.as_str() {
            "fig1" => out.push(gen::fig1_symbolic()),
            "g24" => out.push(gen::g24()),
            "elementary" => out.extend(elementary_networks()),
            path => out.push(read_valid(Some(&PathBuf::from(path)))?),
        }
    }
    Ok(out)
}

pub fn psme(a: PsmeArgs) -> Result<u8> {
    if a.random > 0 && a.max_internal == 0 {
        bail!("--max-internal must be at least 1");
    }
    let names = if a.net.is_empty() && a.random == 0 {
        vec!["fig1".into(), "g24".into(), "elementary".into()]
    } else {
        a.net.clone()
    };
    let mut nets = named_networks(&names)?;
    nets.extend(random_networks(a.seed, a.random, a.max_internal));
    let params = Params {
        alpha: parse_param(&a.alpha)?,
        beta: parse_param(&a.beta)?,
    };
    let six = a.six_parameter;
    // variable ids fix the monomial order of the rendering, so create them before going parallel
    let _ = (reduced_params(), full_params());
    for n in &nets {
        assign_flag_variables_with(n, true, FLAG_CONVENTION);
        if six {
            assign_flag_variables_with(n, false, FLAG_CONVENTION);
        }
    }
    let reports: Vec<Vec<CheckRecord>> = pool(a.jobs, || {
        nets.par_iter()
            .map(|n| {
                let mut r = verify_pushforward(n, &params);
                if six {
                    r.extend(verify_pushforward_full(n));
                }
                r.records
            })
            .collect()
    })?;
    let mut records: Vec<CheckRecord> = reports.into_iter().flatten().collect();
    records.sort_by(|x, y| x.check.cmp(&y.check));
    for r in &records {
        println!("{}", serde_json::to_string(r)?);
    }
    let failed = records.iter().filter(|r| !r.status).count();
    Ok(summary(failed == 0, records.len(), failed))
}

fn default_samples() -> Vec<String> {
    ["1,-1", "3/2,-1/2", "0,-2", "-1,1", "5/2,1/2"].iter().map(|s| s.to_string()).collect()
}

pub fn mcybe(a: McybeArgs) -> Result<u8> {
    let samples = if a.sample.is_empty() { default_samples() } else { a.sample.clone() };
    let mut pairs = Vec::new();
    for s in &samples {
        let Some((x, y)) = s.split_once(',') else {
            bail!("sample '{s}' is not of the form alpha,beta");
        };
        pairs.push((s.clone(), parse_param(x)?, parse_param(y)?));
    }
    let jobs: Vec<(usize, &(String, RF, RF))> = (1..=a.max_k).flat_map(|k| pairs.iter().map(move |p| (k, p))).collect();
    let reports = pool(a.jobs, || {
        jobs.par_iter()
            .map(|(k, (s, x, y))| {
                let rep = mcybe_check(&RMatrix::new(*k, x.clone(), y.clone()), a.trials, a.seed + *k as u64);
                (format!("k={k} (alpha,beta)=({s})"), rep)
            })
            .collect::<Vec<_>>()
    })?;
    let mut failed = 0;
    for (inst, rep) in &reports {
        failed += usize::from(!rep.ok());
        let rec = json!({
            "check": "mcybe",
            "instance": inst,
            "status": rep.ok(),
            "trials": rep.trials,
            "failures": rep.failures,
            "literal_zero": rep.literal_zero,
            "skew_failures": rep.skew_failures,
        });
        println!("{rec}");
    }
    Ok(summary(failed == 0, reports.len(), failed))
}

fn splits(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    (1u32..(1 << n) - 1)
        .map(|mask| {
            let src = (0..n).filter(|b| mask >> b & 1 == 1).collect();
            let snk = (0..n).filter(|b| mask >> b & 1 == 0).collect();
            (src, snk)
        })
        .collect()
}

pub fn jacobi(a: JacobiArgs) -> Result<u8> {
    let top = a.max_n.max(a.identities_max_n);
    let jobs: Vec<(usize, Vec<usize>, Vec<usize>)> = (2..=top).flat_map(|n| splits(n).into_iter().map(move |(s, t)| (n, s, t))).collect();
    let reports = pool(a.jobs, || {
        jobs.par_iter()
            .map(|(n, s, t)| {
                let symbolic = *n <= a.max_n;
                let mut rep = check_jacobi_ij(s, t, symbolic);
                if *n > a.identities_max_n {
                    rep.identity_failures.clear();
                }
                (*n, symbolic, rep)
            })
            .collect::<Vec<_>>()
    })?;
    let (mut total, mut failed) = (0, 0);
    for n in 2..=top {
        let of_n: Vec<_> = reports.iter().filter(|r| r.0 == n).collect();
        if n <= a.identities_max_n {
            let sextuples: usize = of_n.iter().map(|r| r.2.sextuples).sum();
            let bad: usize = of_n.iter().map(|r| r.2.identity_failures.len()).sum();
            let skipped: usize = of_n.iter().map(|r| r.2.degenerate_failures).sum();
            println!(
                "{}",
                json!({"check": "threeid", "instance": format!("n={n}"), "status": bad == 0, "sextuples": sextuples, "failures": bad, "nonzero_on_excluded": skipped})
            );
            total += 1;
            failed += usize::from(bad != 0);
        }
        if n <= a.max_n {
            let bad: usize = of_n.iter().map(|r| r.2.jacobi_failures.len()).sum();
            println!("{}", json!({"check": "jacobi", "instance": format!("n={n}"), "status": bad == 0, "subsets": of_n.len(), "failures": bad}));
            total += 1;
            failed += usize::from(bad != 0);
        }
    }
    Ok(summary(failed == 0, total, failed))
}

/// {M(b_i,b_j), M(b_i',b_j')} for every pair of entries, from the flag-level bracket.
pub fn entry_brackets(net: &Network, alpha: &RF, beta: &RF) -> String {
    let (weighted, spec) = assign_flag_variables(net, true);
    let (a, b) = reduced_params();
    let values: HashMap<Var, RF> = [(a, alpha.clone()), (b, beta.clone())].into_iter().collect();
    let bracket = Bracket::from_spec(&spec.specialize(&values));
    let m = measurement_matrix(&weighted);
    let cells: Vec<(usize, usize)> = (0..m.sources.len()).flat_map(|p| (0..m.sinks.len()).map(move |q| (p, q))).collect();
    let grads: Vec<_> = cells.iter().map(|&(p, q)| bracket.gradient(&m.entries[p][q])).collect();
    let mut out = String::new();
    for x in 0..cells.len() {
        for y in x + 1..cells.len() {
            let ((p, q), (r, s)) = (cells[x], cells[y]);
            out.push_str(&format!(
                "{{M(b{},b{}), M(b{},b{})}}\t{}\n",
                m.sources[p] + 1,
                m.sinks[q] + 1,
                m.sources[r] + 1,
                m.sinks[s] + 1,
                bracket.apply_grad(&grads[x], &grads[y])
            ));
        }
    }
    out
}
