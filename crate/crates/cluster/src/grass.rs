//! The initial seed of the cluster structure on the open Grassmannian cell.

use exprcore::{RationalFunction as RF, Var};
use measurement::det;

use crate::seed::{ExchangeMatrix, Seed};

#[derive(Clone, Debug)]
pub struct GrassmannSeedData {
    pub k: usize,
    pub m: usize,
    /// label (i, j) of each extended-cluster position, cluster directions first
    pub order: Vec<(usize, usize)>,
    /// symbolic k x m matrix Y
    pub y: Vec<Vec<RF>>,
}

impl GrassmannSeedData {
    pub fn n(&self) -> usize {
        self.k + self.m
    }

    pub fn l(&self, i: usize, j: usize) -> usize {
        l(self.k, self.m, i, j)
    }

    pub fn position(&self, i: usize, j: usize) -> Option<usize> {
        self.order.iter().position(|&p| p == (i, j))
    }

    pub fn cluster_count(&self) -> usize {
        (self.k - 1) * (self.m - 1)
    }
}

pub fn l(k: usize, m: usize, i: usize, j: usize) -> usize {
    let n = k + m;
    (i - 1).min(n - k - j)
}

pub fn is_stable(k: usize, i: usize, j: usize) -> bool {
    i == k || j == 1
}

/// Extended cluster labels: (i, j), i < k, j > 1 row by row, then f_11..f_k1, f_k2..f_km.
pub fn seed_order(k: usize, m: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (1..k).flat_map(|i| (2..=m).map(move |j| (i, j))).collect();
    out.extend((1..=k).map(|i| (i, 1)));
    out.extend((2..=m).map(|j| (k, j)));
    out
}

/// Edges of the quiver on the k x m array.
pub fn quiver_edges(k: usize, m: usize) -> Vec<((usize, usize), (usize, usize))> {
    let mut out = Vec::new();
    for i in 1..=k {
        for j in 1..=m {
            if j < m {
                out.push(((i, j), (i, j + 1)));
            }
            if i < k {
                out.push(((i + 1, j), (i, j)));
                if j > 1 {
                    out.push(((i, j), (i + 1, j - 1)));
                }
            }
        }
    }
    out
}

pub fn exchange_matrix(k: usize, m: usize) -> ExchangeMatrix {
    let order = seed_order(k, m);
    let nc = (k - 1) * (m - 1);
    let mut b = vec![vec![0i64; order.len()]; nc];
    for (u, v) in quiver_edges(k, m) {
        let (pu, pv) = (order.iter().position(|&p| p == u).unwrap(), order.iter().position(|&p| p == v).unwrap());
        if pu < nc {
            b[pu][pv] += 1;
        }
        if pv < nc {
            b[pv][pu] -= 1;
        }
    }
    b
}

/// Column set (1-based, sorted) of the Plücker coordinate with f_ij = x_I / x_[1,k].
pub fn plucker_set(k: usize, m: usize, i: usize, j: usize) -> Vec<usize> {
    let l = l(k, m, i, j);
    let mut out: Vec<usize> = (1..=k).filter(|&r| r + l < i || r > i).collect();
    out.extend(j + k..=j + l + k);
    out
}

/// (-1)^((k-i)(l-1)) times the contiguous minor of Y.
pub fn f_from_y(y: &[Vec<RF>], k: usize, m: usize, i: usize, j: usize) -> RF {
    let l = l(k, m, i, j);
    let minor = det((i - l..=i).map(|r| (j..=j + l).map(|c| y[r - 1][c - 1].clone()).collect()).collect());
    // l - 1 may be -1; only the parity matters
    if ((k - i) * (l + 1)) % 2 == 1 {
        minor.neg()
    } else {
        minor
    }
}

pub fn y_var(i: usize, j: usize) -> Var {
    Var::new(&format!("Y{}_{}", i, j))
}

pub fn grassmann_initial_seed(k: usize, m: usize) -> (Seed, GrassmannSeedData) {
    let y: Vec<Vec<RF>> = (1..=k).map(|i| (1..=m).map(|j| RF::var(y_var(i, j))).collect()).collect();
    let order = seed_order(k, m);
    let nc = (k - 1) * (m - 1);
    let fs: Vec<RF> = order.iter().map(|&(i, j)| f_from_y(&y, k, m, i, j)).collect();
    let seed = Seed {
        cluster: fs[..nc].to_vec(),
        stable: fs[nc..].to_vec(),
        b: exchange_matrix(k, m),
    };
    (seed, GrassmannSeedData { k, m, order, y })
}
