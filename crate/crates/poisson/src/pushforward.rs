//! Machine check that boundary measurements push the flag bracket forward to the matrix bracket.

use std::collections::HashMap;

use exprcore::{RationalFunction as RF, Var};
use measurement::{extended_matrix, measurement_matrix};
use network::flags::{assign_flag_variables_with, full_params, reduced_params, FlagConvention, FLAG_CONVENTION};
use network::{BracketSpec, Network};
use serde::Serialize;

use crate::bracket::Bracket;
use crate::sfun::{matrix_bracket_ij, s_cross, s_eq};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckRecord {
    pub check: String,
    pub instance: String,
    pub status: bool,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.records.iter().all(|r| r.status)
    }

    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.records.iter().find(|r| !r.status)
    }

    pub fn push(&mut self, check: &str, instance: String, lhs: &RF, rhs: &RF) {
        self.records.push(CheckRecord {
            check: check.to_string(),
            instance,
            status: lhs.equals(rhs),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }
}

/// Parameter values: symbolic alpha, beta or any substitution for them.
#[derive(Clone, Debug)]
pub struct Params {
    pub alpha: RF,
    pub beta: RF,
}

impl Params {
    pub fn symbolic() -> Self {
        let (a, b) = reduced_params();
        Params {
            alpha: RF::var(a),
            beta: RF::var(b),
        }
    }

    fn bindings(&self) -> HashMap<Var, RF> {
        let (a, b) = reduced_params();
        [(a, self.alpha.clone()), (b, self.beta.clone())].into_iter().collect()
    }
}

fn entry_pairs(k: usize, m: usize) -> Vec<(usize, usize, usize, usize)> {
    let cells: Vec<(usize, usize)> = (0..k).flat_map(|p| (0..m).map(move |q| (p, q))).collect();
    let mut out = Vec::new();
    for a in 0..cells.len() {
        for b in a + 1..cells.len() {
            out.push((cells[a].0, cells[a].1, cells[b].0, cells[b].1));
        }
    }
    out
}

/// Compare the pushed-forward bracket of every pair of distinct entries with the matrix formula.
fn compare(net: &Network, weighted: &Network, bracket: &Bracket, alpha: &RF, beta: &RF, check: &str) -> Report {
    let m = measurement_matrix(weighted);
    let (k, w) = (m.sources.len(), m.sinks.len());
    let grads: Vec<Vec<_>> = m.entries.iter().map(|row| row.iter().map(|f| bracket.gradient(f)).collect()).collect();
    let mut rep = Report::default();
    for (p, q, r, s) in entry_pairs(k, w) {
        let lhs = bracket.apply_grad(&grads[p][q], &grads[r][s]);
        let e = matrix_bracket_ij(&m.sources, &m.sinks, p, q, r, s, alpha, beta);
        let x = |a: usize, b: usize| m.entries[a][b].clone();
        let rhs = e.eval(&x, p, q, r, s);
        let inst = format!(
            "{} {{M(b{},b{}), M(b{},b{})}}",
            net_name(net),
            m.sources[p] + 1,
            m.sinks[q] + 1,
            m.sources[r] + 1,
            m.sinks[s] + 1
        );
        rep.push(check, inst, &lhs, &rhs);
    }
    rep
}

fn net_name(net: &Network) -> String {
    format!("n={} |V|={} |E|={}", net.n, net.vertices.len(), net.edges.len())
}

pub fn verify_pushforward(net: &Network, params: &Params) -> Report {
    verify_pushforward_with(net, params, FLAG_CONVENTION)
}

pub fn verify_pushforward_with(net: &Network, params: &Params, conv: FlagConvention) -> Report {
    let (weighted, spec) = assign_flag_variables_with(net, true, conv);
    let spec = spec.specialize(&params.bindings());
    let bracket = Bracket::from_spec(&spec);
    compare(net, &weighted, &bracket, &params.alpha, &params.beta, "psme")
}

/// The unreduced six-parameter bracket pushed forward; matches the formula with
/// alpha = a23 + a13 - a12 and beta = b23 + b13 - b12.
pub fn verify_pushforward_full(net: &Network) -> Report {
    let (weighted, spec) = assign_flag_variables_with(net, false, FLAG_CONVENTION);
    let bracket = Bracket::from_spec(&spec);
    let p: Vec<RF> = full_params().into_iter().map(RF::var).collect();
    let alpha = p[2].add(&p[1]).sub(&p[0]);
    let beta = p[5].add(&p[4]).sub(&p[3]);
    compare(net, &weighted, &bracket, &alpha, &beta, "psme-six-parameter")
}

/// Brackets of signed Grassmannian entries against the cell formula.
pub fn verify_grassmannian(net: &Network, params: &Params) -> Report {
    let (weighted, spec): (Network, BracketSpec) = assign_flag_variables_with(net, true, FLAG_CONVENTION);
    let bracket = Bracket::from_spec(&spec.specialize(&params.bindings()));
    let x = extended_matrix(&weighted);
    let sinks = weighted.sinks();
    let k = x.sources.len();
    let grads: Vec<Vec<_>> = x.matrix.iter().map(|row| row.iter().map(|f| bracket.gradient(f)).collect()).collect();
    let mut rep = Report::default();
    for (p, a, r, b) in entry_pairs(k, sinks.len()) {
        let (j, jb) = (sinks[a], sinks[b]);
        let (ip, ir) = (x.sources[p], x.sources[r]);
        let lhs = bracket.apply_grad(&grads[p][j], &grads[r][jb]);
        let m = |row: usize, col: usize| x.matrix[row][col].clone();
        let rhs = params
            .alpha
            .sub(&params.beta)
            .scale(&s_eq(ip, j, ir, jb))
            .mul(&m(p, jb))
            .mul(&m(r, j))
            .add(&params.alpha.add(&params.beta).scale(&s_cross(ip, j, ir, jb)).mul(&m(p, j)).mul(&m(r, jb)));
        rep.push("grassmannian-cell", format!("{} {{m({},{}), m({},{})}}", net_name(net), p + 1, j + 1, r + 1, jb + 1), &lhs, &rhs);
    }
    rep
}

/// Conventions under which the pushforward check passes on every given network.
pub fn calibrate_flags(nets: &[Network]) -> Vec<FlagConvention> {
    FlagConvention::all()
        .into_iter()
        .filter(|&c| nets.iter().all(|n| verify_pushforward_with(n, &Params::symbolic(), c).ok()))
        .collect()
}
