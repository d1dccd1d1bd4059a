//! Quadratic brackets given on generators and extended by Leibniz.

use std::collections::{BTreeMap, HashMap};

use exprcore::{RationalFunction as RF, Var};
use network::BracketSpec;

use crate::PoissonError;

/// {y_a, y_b} = table(a, b) for a < b, antisymmetric, extended as a biderivation.
#[derive(Clone, Debug)]
pub struct Bracket {
    pub vars: Vec<Var>,
    pub table: BTreeMap<(usize, usize), RF>,
}

impl Bracket {
    pub fn new(vars: Vec<Var>) -> Self {
        Bracket {
            vars,
            table: BTreeMap::new(),
        }
    }

    pub fn index(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|&x| x == v)
    }

    pub fn set(&mut self, a: usize, b: usize, c: RF) {
        if a == b || c.is_zero() {
            return;
        }
        if a < b {
            self.table.insert((a, b), c);
        } else {
            self.table.insert((b, a), c.neg());
        }
    }

    pub fn get(&self, a: usize, b: usize) -> RF {
        if a < b {
            self.table.get(&(a, b)).cloned().unwrap_or_else(RF::zero)
        } else {
            self.table.get(&(b, a)).map(|c| c.neg()).unwrap_or_else(RF::zero)
        }
    }

    /// The log-canonical bracket of a spec: {z_a, z_b} = omega_ab z_a z_b.
    pub fn from_spec(spec: &BracketSpec) -> Bracket {
        let mut b = Bracket::new(spec.vars.clone());
        for (&(i, j), c) in &spec.omega {
            let z = RF::var(spec.vars[i]).mul(&RF::var(spec.vars[j]));
            b.set(i, j, c.mul(&z));
        }
        b
    }

    /// Partial derivatives of f along the generators that occur in the table.
    pub fn gradient(&self, f: &RF) -> HashMap<usize, RF> {
        let fv = f.vars();
        let mut used: Vec<usize> = self.table.keys().flat_map(|&(a, b)| [a, b]).collect();
        used.sort();
        used.dedup();
        used.into_iter()
            .filter(|&a| fv.contains(&self.vars[a]))
            .map(|a| (a, f.diff(self.vars[a])))
            .filter(|(_, d)| !d.is_zero())
            .collect()
    }

    pub fn apply_grad(&self, gf: &HashMap<usize, RF>, gg: &HashMap<usize, RF>) -> RF {
        let mut s = RF::zero();
        for (&(a, b), c) in &self.table {
            let t1 = match (gf.get(&a), gg.get(&b)) {
                (Some(x), Some(y)) => x.mul(y),
                _ => RF::zero(),
            };
            let t2 = match (gf.get(&b), gg.get(&a)) {
                (Some(x), Some(y)) => x.mul(y),
                _ => RF::zero(),
            };
            let d = t1.sub(&t2);
            if !d.is_zero() {
                s = s.add(&c.mul(&d));
            }
        }
        s
    }

    pub fn apply(&self, f: &RF, g: &RF) -> RF {
        self.apply_grad(&self.gradient(f), &self.gradient(g))
    }

    /// {y_a, {y_b, y_c}} + cyclic, for one triple of generators.
    pub fn jacobiator(&self, a: usize, b: usize, c: usize) -> RF {
        let y = |i: usize| RF::var(self.vars[i]);
        let t1 = self.apply(&y(a), &self.get(b, c));
        let t2 = self.apply(&y(b), &self.get(c, a));
        let t3 = self.apply(&y(c), &self.get(a, b));
        t1.add(&t2).add(&t3)
    }

    /// Triples of generators whose jacobiator does not vanish.
    pub fn jacobi_failures(&self) -> Vec<(usize, usize, usize)> {
        let n = self.vars.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if !self.jacobiator(a, b, c).is_zero() {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }
}

/// {f, g} for the log-canonical structure of `spec`.
pub fn log_canonical_bracket(spec: &BracketSpec, f: &RF, g: &RF) -> Result<RF, PoissonError> {
    for v in f.vars().into_iter().chain(g.vars()) {
        if !spec.vars.contains(&v) && !spec.params.contains(&v) {
            return Err(PoissonError::UnknownVariable(v.name()));
        }
    }
    Ok(Bracket::from_spec(spec).apply(f, g))
}
