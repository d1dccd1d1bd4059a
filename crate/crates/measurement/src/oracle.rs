//! Truncated signed path sums, an independent check on the elimination.

use std::collections::HashMap;

use exprcore::{rf_series, PowerSeries, RationalFunction, Var, Q};
use network::{enumerate_paths, path_sign, Closure, Network};

use crate::elim::measurement_row;

fn series_var(net: &Network) -> Var {
    let mut name = String::from("t");
    while net.vars.names().contains(&name) {
        name.push('_');
    }
    Var::new(&name)
}

/// Sum of sign(P) * prod(values) * t^len(P) over paths b_i -> b_j with at most L edges.
pub fn path_sum_oracle(net: &Network, i: usize, j: usize, order: usize, point: &HashMap<Var, Q>) -> PowerSeries {
    let vals: Vec<Q> = net
        .edges
        .iter()
        .map(|e| e.weight.eval(point).expect("weight undefined at point"))
        .collect();
    let mut s = PowerSeries::zero(series_var(net), order);
    for p in enumerate_paths(net, i, j, order) {
        let sign = path_sign(net, &p, Closure::Counterclockwise).expect("path sign");
        let mut c: Q = p.edges.iter().map(|&e| vals[e].clone()).product();
        if sign < 0 {
            c = -c;
        }
        s.coeffs[p.edges.len()] += c;
    }
    s
}

/// Taylor coefficients of M(i, j) after w_e -> value_e * t.
pub fn measurement_series(net: &Network, i: usize, j: usize, order: usize, point: &HashMap<Var, Q>) -> PowerSeries {
    let t = series_var(net);
    let tv = RationalFunction::var(t);
    let w: Vec<RationalFunction> = net
        .edges
        .iter()
        .map(|e| tv.scale(&e.weight.eval(point).expect("weight undefined at point")))
        .collect();
    let row = measurement_row(net, i, &w);
    let m = net
        .sinks()
        .iter()
        .position(|&x| x == j)
        .map(|q| row[q].clone())
        .unwrap_or_else(RationalFunction::zero);
    rf_series(&m, t, order).expect("measurement has a series at 0")
}
