//! The R-matrix R_{alpha,beta} on gl_k and the Sklyanin bracket it defines.

use exprcore::{q, qi, RationalFunction as RF, Var, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Mat = Vec<Vec<RF>>;

pub fn zeros(k: usize) -> Mat {
    vec![vec![RF::zero(); k]; k]
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let k = a.len();
    let mut c = zeros(k);
    for i in 0..k {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..k {
                if !b[l][j].is_zero() {
                    c[i][j] = c[i][j].add(&a[i][l].mul(&b[l][j]));
                }
            }
        }
    }
    c
}

pub fn sub(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.sub(y)).collect()).collect()
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.add(y)).collect()).collect()
}

pub fn scale(a: &Mat, c: &RF) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x.mul(c)).collect()).collect()
}

pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    sub(&mul(a, b), &mul(b, a))
}

pub fn trace_form(a: &Mat, b: &Mat) -> RF {
    let k = a.len();
    let mut s = RF::zero();
    for i in 0..k {
        for j in 0..k {
            s = s.add(&a[i][j].mul(&b[j][i]));
        }
    }
    s
}

/// (alpha - beta)/2 R_0 + (alpha + beta)/2 S pi_0 on k x k matrices.
#[derive(Clone, Debug)]
pub struct RMatrix {
    pub k: usize,
    pub alpha: RF,
    pub beta: RF,
}

impl RMatrix {
    pub fn new(k: usize, alpha: RF, beta: RF) -> Self {
        RMatrix { k, alpha, beta }
    }

    pub fn c1(&self) -> RF {
        self.alpha.sub(&self.beta).scale(&q(1, 2))
    }

    pub fn c2(&self) -> RF {
        self.alpha.add(&self.beta).scale(&q(1, 2))
    }

    pub fn apply(&self, xi: &Mat) -> Mat {
        let k = self.k;
        let (c1, c2) = (self.c1(), self.c2());
        let mut out = zeros(k);
        for i in 0..k {
            for j in 0..k {
                out[i][j] = match i.cmp(&j) {
                    std::cmp::Ordering::Less => xi[i][j].mul(&c1),
                    std::cmp::Ordering::Greater => xi[i][j].mul(&c1).neg(),
                    std::cmp::Ordering::Equal => RF::zero(),
                };
            }
        }
        // S(e_jj) = sum_i sign(j - i) e_ii
        for i in 0..k {
            let mut s = RF::zero();
            for j in 0..k {
                if j > i {
                    s = s.add(&xi[j][j]);
                } else if j < i {
                    s = s.sub(&xi[j][j]);
                }
            }
            out[i][i] = s.mul(&c2);
        }
        out
    }

    /// [R x, R y] - R([R x, y] + [x, R y]).
    pub fn cybe_lhs(&self, x: &Mat, y: &Mat) -> Mat {
        let (rx, ry) = (self.apply(x), self.apply(y));
        sub(&commutator(&rx, &ry), &self.apply(&add(&commutator(&rx, y), &commutator(x, &ry))))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct McybeReport {
    pub trials: usize,
    /// pairs where lhs + c1^2 [x, y] is nonzero
    pub failures: usize,
    /// pairs where lhs + [x, y] vanishes, the equation read with no rescaling
    pub literal_zero: usize,
    /// pairs where Tr(R(x) y) + Tr(x R(y)) is nonzero
    pub skew_failures: usize,
}

impl McybeReport {
    pub fn ok(&self) -> bool {
        self.failures == 0 && self.skew_failures == 0
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, k: usize, traceless: bool) -> Mat {
    let mut m: Vec<Vec<Q>> = (0..k).map(|_| (0..k).map(|_| qi(rng.gen_range(-5..=5))).collect()).collect();
    if traceless {
        let t: Q = (0..k).map(|i| m[i][i].clone()).sum();
        m[k - 1][k - 1] -= t;
    }
    m.into_iter().map(|r| r.into_iter().map(RF::constant).collect()).collect()
}

/// Random integer pairs, half of them traceless; the residual is normalized by
/// the square of the R_0 coefficient.
pub fn mcybe_check(r: &RMatrix, trials: usize, seed: u64) -> McybeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c1sq = r.c1().mul(&r.c1());
    let mut rep = McybeReport::default();
    for t in 0..trials {
        let traceless = t % 2 == 0;
        let x = random_matrix(&mut rng, r.k, traceless);
        let y = if t % 7 == 3 { x.clone() } else { random_matrix(&mut rng, r.k, traceless) };
        let lhs = r.cybe_lhs(&x, &y);
        let br = commutator(&x, &y);
        rep.trials += 1;
        if add(&lhs, &scale(&br, &c1sq)).iter().flatten().any(|e| !e.is_zero()) {
            rep.failures += 1;
        }
        if add(&lhs, &br).iter().flatten().all(|e| e.is_zero()) {
            rep.literal_zero += 1;
        }
        let skew = trace_form(&r.apply(&x), &y).add(&trace_form(&x, &r.apply(&y)));
        if !skew.is_zero() {
            rep.skew_failures += 1;
        }
    }
    rep
}

/// Symbolic k x k matrix with entries a{i}{j}, 1-based.
pub fn symbolic_matrix(k: usize) -> (Mat, Vec<Var>) {
    let vars: Vec<Var> = (0..k * k).map(|t| Var::new(&format!("a{}{}", t / k + 1, t % k + 1))).collect();
    let m = (0..k).map(|i| (0..k).map(|j| RF::var(vars[i * k + j])).collect()).collect();
    (m, vars)
}

/// grad f = (d f / d x_ji)_{ij}.
fn grad(f: &RF, vars: &[Var], k: usize) -> Mat {
    (0..k).map(|i| (0..k).map(|j| f.diff(vars[j * k + i])).collect()).collect()
}

/// 1/2 (R(grad f1 x), grad f2 x) - 1/2 (R(x grad f1), x grad f2) at the symbolic matrix x.
pub fn sklyanin_from_r(r: &RMatrix, x: &Mat, vars: &[Var], f1: &RF, f2: &RF) -> RF {
    let k = r.k;
    let (g1, g2) = (grad(f1, vars, k), grad(f2, vars, k));
    let left = trace_form(&r.apply(&mul(&g1, x)), &mul(&g2, x));
    let right = trace_form(&r.apply(&mul(x, &g1)), &mul(x, &g2));
    left.sub(&right).scale(&q(1, 2))
}
