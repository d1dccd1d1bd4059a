//! The combinatorial functions s_= and s_x and the brackets built from them.

use exprcore::{q, RationalFunction as RF, Var, Q};

use crate::bracket::Bracket;
use crate::PoissonError;

/// Whether the distinct points of `seq` appear in this counterclockwise order.
pub fn ccw(seq: &[usize]) -> bool {
    const BIG: usize = 1 << 40;
    let a = seq[0];
    let key = |x: usize| if x >= a { x - a } else { x + BIG - a };
    seq.windows(2).all(|w| key(w[0]) < key(w[1]))
}

/// Twice s_=(i, j, i2, j2).
pub fn s_eq2(i: usize, j: usize, i2: usize, j2: usize) -> i32 {
    match (i == i2, j == j2) {
        (false, false) => {
            if ccw(&[i, i2, j2, j]) {
                2
            } else if ccw(&[i2, i, j, j2]) {
                -2
            } else {
                0
            }
        }
        (true, false) => {
            if ccw(&[i, j2, j]) {
                1
            } else {
                -1
            }
        }
        (false, true) => {
            if ccw(&[i, i2, j]) {
                1
            } else {
                -1
            }
        }
        (true, true) => 0,
    }
}

/// Twice s_x(i, j, i2, j2).
pub fn s_cross2(i: usize, j: usize, i2: usize, j2: usize) -> i32 {
    match (i == i2, j == j2) {
        (false, false) => {
            if ccw(&[i2, i, j2, j]) {
                2
            } else if ccw(&[i, i2, j, j2]) {
                -2
            } else {
                0
            }
        }
        (true, false) => {
            if ccw(&[i, j2, j]) {
                1
            } else {
                -1
            }
        }
        (false, true) => {
            if ccw(&[i2, i, j]) {
                1
            } else {
                -1
            }
        }
        (true, true) => 0,
    }
}

pub fn s_eq(i: usize, j: usize, i2: usize, j2: usize) -> Q {
    q(s_eq2(i, j, i2, j2) as i64, 2)
}

pub fn s_cross(i: usize, j: usize, i2: usize, j2: usize) -> Q {
    q(s_cross2(i, j, i2, j2) as i64, 2)
}

fn check_args(sources: &[usize], sinks: &[usize], i: usize, j: usize, i2: usize, j2: usize) -> Result<(), PoissonError> {
    for x in [i, i2] {
        if !sources.contains(&x) {
            return Err(PoissonError::NotASource(x + 1));
        }
    }
    for x in [j, j2] {
        if !sinks.contains(&x) {
            return Err(PoissonError::NotASink(x + 1));
        }
    }
    Ok(())
}

/// s_= with the arguments checked against the source and sink sets.
pub fn s_eq_checked(sources: &[usize], sinks: &[usize], i: usize, j: usize, i2: usize, j2: usize) -> Result<Q, PoissonError> {
    check_args(sources, sinks, i, j, i2, j2)?;
    Ok(s_eq(i, j, i2, j2))
}

pub fn s_cross_checked(sources: &[usize], sinks: &[usize], i: usize, j: usize, i2: usize, j2: usize) -> Result<Q, PoissonError> {
    check_args(sources, sinks, i, j, i2, j2)?;
    Ok(s_cross(i, j, i2, j2))
}

/// {X_pq, X_rs} = mixed * X_ps X_rq + straight * X_pq X_rs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryBracket {
    pub mixed: RF,
    pub straight: RF,
}

impl EntryBracket {
    pub fn eval(&self, x: &dyn Fn(usize, usize) -> RF, p: usize, qq: usize, r: usize, s: usize) -> RF {
        self.mixed.mul(&x(p, s)).mul(&x(r, qq)).add(&self.straight.mul(&x(p, qq)).mul(&x(r, s)))
    }
}

/// The bracket of two entries of the boundary measurement matrix; p, r index sources and q, s sinks.
pub fn matrix_bracket_ij(sources: &[usize], sinks: &[usize], p: usize, qq: usize, r: usize, s: usize, alpha: &RF, beta: &RF) -> EntryBracket {
    let (i, j, i2, j2) = (sources[p], sinks[qq], sources[r], sinks[s]);
    EntryBracket {
        mixed: alpha.sub(beta).scale(&s_eq(i, j, i2, j2)),
        straight: alpha.add(beta).scale(&s_cross(i, j, i2, j2)),
    }
}

fn sign(x: i64) -> i64 {
    x.signum()
}

/// Matrix-entry form of the Sklyanin bracket for R_{alpha,beta}; indices 0-based.
pub fn sklyanin_bracket(i: usize, j: usize, i2: usize, j2: usize, alpha: &RF, beta: &RF) -> EntryBracket {
    let si = sign(i2 as i64 - i as i64);
    let sj = sign(j2 as i64 - j as i64);
    EntryBracket {
        mixed: alpha.sub(beta).scale(&q(si + sj, 2)),
        straight: alpha.add(beta).scale(&q(si - sj, 2)),
    }
}

/// Generator names m{p}_{q}, 1-based.
pub fn entry_var(p: usize, qq: usize) -> Var {
    Var::new(&format!("m{}_{}", p + 1, qq + 1))
}

/// The bracket on k x m matrices with free entries, from an entry rule.
pub fn entry_bracket(k: usize, m: usize, rule: &dyn Fn(usize, usize, usize, usize) -> EntryBracket) -> Bracket {
    let vars: Vec<Var> = (0..k).flat_map(|p| (0..m).map(move |s| entry_var(p, s))).collect();
    let mut b = Bracket::new(vars);
    let x = |p: usize, s: usize| RF::var(entry_var(p, s));
    for a in 0..k * m {
        for c in a + 1..k * m {
            let (p, qq, r, s) = (a / m, a % m, c / m, c % m);
            let e = rule(p, qq, r, s);
            b.set(a, c, e.eval(&x, p, qq, r, s));
        }
    }
    b
}

/// The matrix bracket on Mat_{k,m} for given source and sink sets.
pub fn ij_bracket(sources: &[usize], sinks: &[usize], alpha: &RF, beta: &RF) -> Bracket {
    entry_bracket(sources.len(), sinks.len(), &|p, qq, r, s| matrix_bracket_ij(sources, sinks, p, qq, r, s, alpha, beta))
}

/// Left-hand sides of the three identities, each multiplied by 4 to stay integral.
pub fn three_identities(i: usize, j: usize, i1: usize, j1: usize, i2: usize, j2: usize) -> [i32; 3] {
    let x = s_cross2;
    let e = s_eq2;
    let first = x(i1, j1, i2, j2) * x(i, j, i2, j2)
        + x(i2, j2, i, j) * x(i1, j1, i, j)
        + x(i, j, i1, j1) * x(i2, j2, i1, j1)
        + x(i1, j1, i2, j2) * x(i, j, i1, j1)
        + x(i2, j2, i, j) * x(i1, j1, i2, j2)
        + x(i, j, i1, j1) * x(i2, j2, i, j);
    let second = e(i1, j1, i2, j2) * e(i, j, i2, j1) + e(i2, j2, i, j) * e(i1, j1, i, j2) + e(i, j, i1, j1) * e(i2, j2, i1, j);
    let third = e(i1, j1, i2, j2) * (x(i, j, i2, j1) + x(i, j, i1, j2) - x(i, j, i2, j2) - x(i, j, i1, j1));
    [first, second, third]
}

/// Whether one of the coincidences excluded from the three identities holds.
pub fn degenerate_sextuple(i: usize, j: usize, i1: usize, j1: usize, i2: usize, j2: usize) -> bool {
    (i == i1 && i1 == i2) || (j == j1 && j1 == j2) || (i == i1 && j == j1) || (i == i2 && j == j2) || (i1 == i2 && j1 == j2)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JacobiReport {
    pub sextuples: usize,
    /// (identity number, i, j, i', j', i'', j'') 1-based, for non-degenerate failures
    pub identity_failures: Vec<(usize, [usize; 6])>,
    /// failures among the excluded degenerate sextuples, which the identities need not cover
    pub degenerate_failures: usize,
    /// generator triples with nonzero jacobiator
    pub jacobi_failures: Vec<(usize, usize, usize)>,
}

impl JacobiReport {
    pub fn ok(&self) -> bool {
        self.identity_failures.is_empty() && self.jacobi_failures.is_empty()
    }
}

/// The three identities over all sextuples for the given sets, plus symbolic Jacobi
/// for the bracket with free entries and symbolic parameters.
pub fn check_jacobi_ij(sources: &[usize], sinks: &[usize], symbolic: bool) -> JacobiReport {
    let mut rep = JacobiReport::default();
    for &i in sources {
        for &i1 in sources {
            for &i2 in sources {
                for &j in sinks {
                    for &j1 in sinks {
                        for &j2 in sinks {
                            rep.sextuples += 1;
                            let r = three_identities(i, j, i1, j1, i2, j2);
                            for (t, v) in r.iter().enumerate() {
                                if *v != 0 {
                                    if degenerate_sextuple(i, j, i1, j1, i2, j2) {
                                        rep.degenerate_failures += 1;
                                    } else {
                                        rep.identity_failures.push((t + 1, [i + 1, j + 1, i1 + 1, j1 + 1, i2 + 1, j2 + 1]));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    if symbolic {
        let (a, b) = network::flags::reduced_params();
        rep.jacobi_failures = ij_bracket(sources, sinks, &RF::var(a), &RF::var(b)).jacobi_failures();
    }
    rep
}
