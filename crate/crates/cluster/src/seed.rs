//! Seeds of geometric type, mutations and tau-coordinates.

use exprcore::{RationalFunction as RF, Q};
use num_traits::{One, Zero};

use crate::ClusterError;

/// Extended exchange matrix: n rows (cluster directions), n+m columns.
pub type ExchangeMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub cluster: Vec<RF>,
    pub stable: Vec<RF>,
    pub b: ExchangeMatrix,
}

impl Seed {
    pub fn new(cluster: Vec<RF>, stable: Vec<RF>, b: ExchangeMatrix) -> Result<Seed, ClusterError> {
        let n = cluster.len();
        if b.len() != n || b.iter().any(|r| r.len() != n + stable.len()) {
            return Err(ClusterError::Shape);
        }
        if (0..n).any(|i| (0..n).any(|j| b[i][j] != -b[j][i])) {
            return Err(ClusterError::NotSkew);
        }
        Ok(Seed { cluster, stable, b })
    }

    pub fn extended(&self) -> Vec<RF> {
        self.cluster.iter().chain(&self.stable).cloned().collect()
    }
}

pub fn mutate_matrix(b: &ExchangeMatrix, k: usize) -> Result<ExchangeMatrix, ClusterError> {
    if k >= b.len() {
        return Err(ClusterError::Direction(k));
    }
    let mut out = b.clone();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
            };
        }
    }
    Ok(out)
}

/// Exchange relation in direction k followed by matrix mutation.
pub fn mutate_cluster(seed: &Seed, k: usize) -> Result<Seed, ClusterError> {
    let b = mutate_matrix(&seed.b, k)?;
    let x = seed.extended();
    let (mut pos, mut neg) = (RF::one(), RF::one());
    for (i, xi) in x.iter().enumerate() {
        let e = seed.b[k][i];
        if e > 0 {
            pos = pos.mul(&xi.pow(e).map_err(|_| ClusterError::DivisionByZero)?);
        } else if e < 0 {
            neg = neg.mul(&xi.pow(-e).map_err(|_| ClusterError::DivisionByZero)?);
        }
    }
    let fresh = pos.add(&neg).div(&seed.cluster[k]).map_err(|_| ClusterError::DivisionByZero)?;
    let mut cluster = seed.cluster.clone();
    cluster[k] = fresh;
    Ok(Seed {
        cluster,
        stable: seed.stable.clone(),
        b,
    })
}

/// Integer exponent matrix of tau in terms of the extended cluster.
/// Cluster rows are the rows of B; stable row j is minus column j of B plus kappa_j e_j.
pub fn tau_exponents(b: &ExchangeMatrix, kappa: &[i64]) -> Vec<Vec<i64>> {
    let n = b.len();
    let total = b.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<i64>> = b.clone();
    for j in n..total {
        let mut r: Vec<i64> = (0..total).map(|c| if c < n { -b[c][j] } else { 0 }).collect();
        r[j] += kappa[j - n];
        rows.push(r);
    }
    rows
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Q::one() / &a[r][c];
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] * &inv;
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Smallest nonnegative kappa_j, stable direction by stable direction, that keeps the
/// rows chosen so far independent.
pub fn choose_kappa(b: &ExchangeMatrix) -> Result<Vec<i64>, ClusterError> {
    let n = b.len();
    let total = b.first().map_or(0, |r| r.len());
    let mut kappa = vec![0; total - n];
    let mut rows: Vec<Vec<i64>> = b.clone();
    if rank(&rows) < n {
        return Err(ClusterError::Degenerate);
    }
    for j in n..total {
        let found = (0..=total as i64).find(|&kv| {
            kappa[j - n] = kv;
            let mut trial = rows.clone();
            trial.push(tau_exponents(b, &kappa)[j].clone());
            rank(&trial) == trial.len()
        });
        match found {
            Some(kv) => {
                kappa[j - n] = kv;
                rows.push(tau_exponents(b, &kappa)[j].clone());
            }
            None => return Err(ClusterError::Degenerate),
        }
    }
    Ok(kappa)
}

/// tau_j = x_j^kappa_j prod x_l^(exponent); cluster directions use the full row of B.
pub fn tau_coordinates(seed: &Seed, kappa: &[i64]) -> Result<Vec<RF>, ClusterError> {
    let x = seed.extended();
    tau_exponents(&seed.b, kappa)
        .iter()
        .map(|row| {
            row.iter().zip(&x).try_fold(RF::one(), |acc, (&e, xi)| {
                if e == 0 {
                    Ok(acc)
                } else {
                    Ok(acc.mul(&xi.pow(e).map_err(|_| ClusterError::DivisionByZero)?))
                }
            })
        })
        .collect()
}
