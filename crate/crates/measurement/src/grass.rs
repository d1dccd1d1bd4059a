//! The Grassmannian boundary measurement map.

use std::collections::BTreeMap;

use exprcore::RationalFunction as RF;
use network::Network;

use crate::measurement_matrix;

/// k x n representative with the identity on the source columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedMatrix {
    pub sources: Vec<usize>,
    pub matrix: Vec<Vec<RF>>,
}

impl ExtendedMatrix {
    pub fn k(&self) -> usize {
        self.matrix.len()
    }

    pub fn n(&self) -> usize {
        self.matrix.first().map_or(0, |r| r.len())
    }

    /// Maximal minor on the given columns, taken in the given order.
    pub fn minor(&self, cols: &[usize]) -> RF {
        det(self.matrix.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect())
    }
}

/// Number of sources strictly between positions a and b.
fn between(sources: &[usize], a: usize, b: usize) -> usize {
    let (lo, hi) = (a.min(b), a.max(b));
    sources.iter().filter(|&&i| lo < i && i < hi).count()
}

pub fn extended_matrix(net: &Network) -> ExtendedMatrix {
    let m = measurement_matrix(net);
    let n = net.n;
    let k = m.sources.len();
    let mut x = vec![vec![RF::zero(); n]; k];
    for (p, &ip) in m.sources.iter().enumerate() {
        x[p][ip] = RF::one();
        for (q, &j) in m.sinks.iter().enumerate() {
            let v = &m.entries[p][q];
            x[p][j] = if between(&m.sources, ip, j) % 2 == 1 { v.neg() } else { v.clone() };
        }
    }
    ExtendedMatrix {
        sources: m.sources,
        matrix: x,
    }
}

/// Determinant by fraction-field elimination.
pub fn det(mut a: Vec<Vec<RF>>) -> RF {
    let n = a.len();
    let mut d = RF::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return RF::zero();
        };
        if p != c {
            a.swap(p, c);
            d = d.neg();
        }
        let piv = a[c][c].clone();
        d = d.mul(&piv);
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].div(&piv).expect("nonzero pivot");
            for cc in c..n {
                let t = f.mul(&a[c][cc]);
                a[r][cc] = a[r][cc].sub(&t);
            }
        }
    }
    d
}

pub fn mat_mul(a: &[Vec<RF>], b: &[Vec<RF>]) -> Vec<Vec<RF>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).fold(RF::zero(), |s, (x, brow)| s.add(&x.mul(&brow[j]))))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form.
pub fn rref(mut a: Vec<Vec<RF>>) -> Vec<Vec<RF>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        let piv = a[r][c].clone();
        a[r] = a[r].iter().map(|x| x.div(&piv).expect("nonzero pivot")).collect();
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for cc in 0..cols {
                    let t = f.mul(&a[r][cc]);
                    a[i][cc] = a[i][cc].sub(&t);
                }
            }
        }
        r += 1;
    }
    a
}

/// Whether two k x n matrices of full rank span the same row space.
pub fn same_point(a: &[Vec<RF>], b: &[Vec<RF>]) -> bool {
    let (x, y) = (rref(a.to_vec()), rref(b.to_vec()));
    x.len() == y.len() && x.iter().zip(&y).all(|(r, s)| r.len() == s.len() && r.iter().zip(s).all(|(u, v)| u.equals(v)))
}

/// All maximal minors, keyed by increasing column sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerVector {
    pub k: usize,
    pub n: usize,
    pub coords: BTreeMap<Vec<usize>, RF>,
}

impl PluckerVector {
    /// Coordinate of an ordered column tuple, alternating in its entries.
    pub fn get(&self, cols: &[usize]) -> RF {
        let mut s = cols.to_vec();
        let mut sign = false;
        for i in 0..s.len() {
            for j in 0..s.len() - 1 - i {
                if s[j] == s[j + 1] {
                    return RF::zero();
                }
                if s[j] > s[j + 1] {
                    s.swap(j, j + 1);
                    sign = !sign;
                }
            }
        }
        let x = self.coords.get(&s).cloned().unwrap_or_else(RF::zero);
        if sign {
            x.neg()
        } else {
            x
        }
    }
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

pub fn plucker(x: &ExtendedMatrix) -> PluckerVector {
    let (k, n) = (x.k(), x.n());
    let coords = subsets(n, k).into_iter().map(|s| {
        let m = x.minor(&s);
        (s, m)
    });
    PluckerVector {
        k,
        n,
        coords: coords.collect(),
    }
}

/// x_{Sab} x_{Scd} - x_{Sac} x_{Sbd} + x_{Sad} x_{Sbc} for every (k-2)-set S and a<b<c<d outside it.
pub fn short_plucker_residuals(p: &PluckerVector) -> Vec<RF> {
    if p.k < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for s in subsets(p.n, p.k - 2) {
        let rest: Vec<usize> = (0..p.n).filter(|i| !s.contains(i)).collect();
        for q in subsets(rest.len(), 4) {
            let [a, b, c, d] = [rest[q[0]], rest[q[1]], rest[q[2]], rest[q[3]]];
            let x = |u: usize, v: usize| {
                let mut t = s.clone();
                t.push(u);
                t.push(v);
                p.get(&t)
            };
            out.push(x(a, b).mul(&x(c, d)).sub(&x(a, c).mul(&x(b, d))).add(&x(a, d).mul(&x(b, c))));
        }
    }
    out
}
