//! Flag coordinates, gauge transformations and log-canonical bracket data.

use std::collections::{BTreeMap, HashMap};

use exprcore::{RationalFunction, Var, VarTable};

use crate::model::{Color, Network};

/// Skew log-canonical structure {z_a, z_b} = omega(a, b) z_a z_b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketSpec {
    pub vars: Vec<Var>,
    /// Symbols appearing in the coefficients.
    pub params: Vec<Var>,
    /// Entries for index pairs a < b only; omega(b, a) = -omega(a, b).
    pub omega: BTreeMap<(usize, usize), RationalFunction>,
}

impl BracketSpec {
    pub fn new(vars: Vec<Var>, params: Vec<Var>) -> Self {
        BracketSpec {
            vars,
            params,
            omega: BTreeMap::new(),
        }
    }

    pub fn index(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|&x| x == v)
    }

    pub fn set(&mut self, a: Var, b: Var, c: RationalFunction) {
        let (i, j) = (self.index(a).expect("unknown variable"), self.index(b).expect("unknown variable"));
        assert_ne!(i, j);
        if c.is_zero() {
            self.omega.remove(&(i.min(j), i.max(j)));
        } else if i < j {
            self.omega.insert((i, j), c);
        } else {
            self.omega.insert((j, i), c.neg());
        }
    }

    pub fn get(&self, a: Var, b: Var) -> RationalFunction {
        match (self.index(a), self.index(b)) {
            (Some(i), Some(j)) => self.get_idx(i, j),
            _ => RationalFunction::zero(),
        }
    }

    pub fn get_idx(&self, i: usize, j: usize) -> RationalFunction {
        if i < j {
            self.omega.get(&(i, j)).cloned().unwrap_or_else(RationalFunction::zero)
        } else if j < i {
            self.omega.get(&(j, i)).map(|c| c.neg()).unwrap_or_else(RationalFunction::zero)
        } else {
            RationalFunction::zero()
        }
    }

    /// Replace parameters by values.
    pub fn specialize(&self, values: &HashMap<Var, RationalFunction>) -> BracketSpec {
        let omega = self
            .omega
            .iter()
            .map(|(k, c)| (*k, c.subst(values).expect("specialization made a coefficient singular")))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        BracketSpec {
            vars: self.vars.clone(),
            params: self.params.iter().copied().filter(|p| !values.contains_key(p)).collect(),
            omega,
        }
    }
}

/// Which of the two counterclockwise-ordered non-principal flags gets label 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlagConvention {
    pub swap_white: bool,
    pub swap_black: bool,
}

/// The labelling fixed by the pushforward calibration test.
pub const FLAG_CONVENTION: FlagConvention = FlagConvention {
    swap_white: true,
    swap_black: true,
};

impl FlagConvention {
    pub fn all() -> [FlagConvention; 4] {
        [(false, false), (false, true), (true, false), (true, true)].map(|(w, b)| FlagConvention {
            swap_white: w,
            swap_black: b,
        })
    }
}

/// Edge carrying flag 1 at an internal vertex.
pub fn principal_edge(net: &Network, v: usize) -> usize {
    match net.color(v) {
        Some(Color::White) => net.in_edges(v)[0],
        Some(Color::Black) => net.out_edges(v)[0],
        None => net.incident(v)[0],
    }
}

/// Label (1, 2 or 3) of the flag (v, e).
pub fn flag_label(net: &Network, v: usize, e: usize, conv: FlagConvention) -> usize {
    let Some(color) = net.color(v) else {
        return 1;
    };
    let r = net.rotation_from(v, principal_edge(net, v));
    let k = r.iter().position(|&x| x == e).expect("edge not incident") + 1;
    let swap = match color {
        Color::White => conv.swap_white,
        Color::Black => conv.swap_black,
    };
    match (k, swap) {
        (2, true) => 3,
        (3, true) => 2,
        _ => k,
    }
}

pub fn flag_var(net: &Network, v: usize, label: usize) -> Var {
    Var::new(&format!("x{}_{}", label, net.vertices[v].id))
}

pub fn reduced_params() -> (Var, Var) {
    (Var::new("alpha"), Var::new("beta"))
}

/// alpha12, alpha13, alpha23, then the beta analogues.
pub fn full_params() -> Vec<Var> {
    ["alpha", "beta"]
        .iter()
        .flat_map(|p| ["12", "13", "23"].map(move |s| Var::new(&format!("{}{}", p, s))))
        .collect()
}

pub fn assign_flag_variables(net: &Network, gauge_reduced: bool) -> (Network, BracketSpec) {
    assign_flag_variables_with(net, gauge_reduced, FLAG_CONVENTION)
}

/// Edge weights become products of flag variables. With `gauge_reduced` the
/// principal flag of every internal vertex is the constant 1.
pub fn assign_flag_variables_with(net: &Network, gauge_reduced: bool, conv: FlagConvention) -> (Network, BracketSpec) {
    let mut table = VarTable::new();
    let mut flag: HashMap<(usize, usize), Var> = HashMap::new();
    for v in 0..net.vertices.len() {
        let labels: &[usize] = if net.is_boundary(v) {
            &[1]
        } else if gauge_reduced {
            &[2, 3]
        } else {
            &[1, 2, 3]
        };
        for &l in labels {
            let x = flag_var(net, v, l);
            table.register(&x.name());
            flag.insert((v, l), x);
        }
    }
    let fv = |v: usize, e: usize| -> RationalFunction {
        let l = flag_label(net, v, e, conv);
        flag.get(&(v, l)).map(|&x| RationalFunction::var(x)).unwrap_or_else(RationalFunction::one)
    };
    let weights = (0..net.edges.len())
        .map(|e| fv(net.edges[e].tail, e).mul(&fv(net.edges[e].head, e)))
        .collect();
    let out = net.with_weights(weights, table.clone());
    let mut spec;
    if gauge_reduced {
        let (a, b) = reduced_params();
        spec = BracketSpec::new(table.vars().to_vec(), vec![a, b]);
        for v in net.internal() {
            let c = if net.color(v) == Some(Color::White) { a } else { b };
            spec.set(flag[&(v, 2)], flag[&(v, 3)], RationalFunction::var(c));
        }
    } else {
        let p = full_params();
        spec = BracketSpec::new(table.vars().to_vec(), p.clone());
        for v in net.internal() {
            let base = if net.color(v) == Some(Color::White) { 0 } else { 3 };
            for (k, (i, j)) in [(1, 2), (1, 3), (2, 3)].into_iter().enumerate() {
                spec.set(flag[&(v, i)], flag[&(v, j)], RationalFunction::var(p[base + k]));
            }
        }
    }
    (out, spec)
}

/// Reweight by w_e -> t_head * w_e / t_tail; vertices missing from t get 1.
pub fn gauge_transform(net: &Network, t: &HashMap<usize, RationalFunction>) -> Network {
    let one = RationalFunction::one();
    let weights = net
        .edges
        .iter()
        .map(|e| {
            let th = if net.is_boundary(e.head) { &one } else { t.get(&e.head).unwrap_or(&one) };
            let tt = if net.is_boundary(e.tail) { &one } else { t.get(&e.tail).unwrap_or(&one) };
            th.mul(&e.weight).div(tt).expect("gauge factor must be nonzero")
        })
        .collect();
    let mut vars = net.vars.clone();
    for f in t.values() {
        for v in f.vars() {
            if !vars.contains(v) {
                vars.register(&v.name());
            }
        }
    }
    net.with_weights(weights, vars)
}
