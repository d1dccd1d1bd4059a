//! Cluster variables and tau-coordinates of the Grassmannian seed as face-weight monomials
//! on N(k,m), and the compatibility check for the two-parameter bracket family.

use std::collections::BTreeMap;
use std::fmt;

use exprcore::{RationalFunction as RF, Q};
use faces::{dual_network_with, face_bracket};
use measurement::extended_matrix;
use num_traits::One;

use crate::grass::{exchange_matrix, is_stable, plucker_set, seed_order};
use crate::hex::HexNetwork;
use crate::seed::{choose_kappa, tau_exponents, ExchangeMatrix};
use crate::ClusterError;

/// sign * prod y_(i,j)^e over labelled faces.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LabelMonomial {
    pub sign: i32,
    pub exps: BTreeMap<(usize, usize), i64>,
}

impl LabelMonomial {
    fn unit() -> Self {
        LabelMonomial {
            sign: 1,
            exps: BTreeMap::new(),
        }
    }

    fn bump(&mut self, label: (usize, usize), e: i64) {
        let x = self.exps.entry(label).or_insert(0);
        *x += e;
        if *x == 0 {
            self.exps.remove(&label);
        }
    }

    /// self^a * other^b
    pub fn combine(&self, a: i64, other: &LabelMonomial, b: i64) -> LabelMonomial {
        let mut out = LabelMonomial {
            sign: self.sign.pow((a.rem_euclid(2)) as u32) * other.sign.pow((b.rem_euclid(2)) as u32),
            exps: BTreeMap::new(),
        };
        for (&l, &e) in &self.exps {
            out.bump(l, a * e);
        }
        for (&l, &e) in &other.exps {
            out.bump(l, b * e);
        }
        out
    }

    pub fn to_rf(&self) -> RF {
        let m = RF::laurent(self.exps.iter().map(|(&(i, j), &e)| (HexNetwork::face_var(i, j), e)));
        if self.sign < 0 {
            m.neg()
        } else {
            m
        }
    }

    /// Sign that makes this monomial equal to f, if f is plus or minus it.
    pub fn sign_against(&self, f: &RF) -> Option<i32> {
        let unsigned = LabelMonomial {
            sign: 1,
            exps: self.exps.clone(),
        }
        .to_rf();
        if f.equals(&unsigned) {
            Some(1)
        } else if f.equals(&unsigned.neg()) {
            Some(-1)
        } else {
            None
        }
    }
}

impl fmt::Display for LabelMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(&(i, j), &e)| if e == 1 { format!("y{}_{}", i, j) } else { format!("y{}_{}^{}", i, j, e) })
            .collect();
        let body = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
        write!(f, "{}{}", if self.sign < 0 { "-" } else { "" }, body)
    }
}

/// f_ij = x_I / x_[1,k] computed from the Grassmannian point of the network.
pub fn f_on_network(hex: &HexNetwork, i: usize, j: usize) -> Result<RF, ClusterError> {
    let x = extended_matrix(&hex.net);
    let base: Vec<usize> = (0..hex.k).collect();
    let cols: Vec<usize> = plucker_set(hex.k, hex.m, i, j).into_iter().map(|c| c - 1).collect();
    x.minor(&cols).div(&x.minor(&base)).map_err(|_| ClusterError::DivisionByZero)
}

/// Unsigned face-weight monomial for f_ij: exponent 1 + min(i-p, q-j-k) on y_pq, p <= i, q >= j+k.
pub fn f_monomial(k: usize, m: usize, i: usize, j: usize) -> LabelMonomial {
    let n = k + m;
    let mut out = LabelMonomial::unit();
    for p in 1..=i {
        for q in j + k..=n {
            out.bump((p, q), 1 + ((i - p) as i64).min((q - j - k) as i64));
        }
    }
    out
}

/// f_ij as a signed face-weight monomial; the sign is read off the network.
pub fn f_via_face_weights(hex: &HexNetwork, i: usize, j: usize) -> Result<LabelMonomial, ClusterError> {
    let mut mono = f_monomial(hex.k, hex.m, i, j);
    let f = f_on_network(hex, i, j)?;
    mono.sign = mono.sign_against(&f).ok_or_else(|| ClusterError::Mismatch(format!("f{}{}: {} vs {}", i, j, f, mono)))?;
    Ok(mono)
}

/// All f_ij in seed order, signed.
pub fn seed_monomials(hex: &HexNetwork) -> Result<Vec<LabelMonomial>, ClusterError> {
    seed_order(hex.k, hex.m).into_iter().map(|(i, j)| f_via_face_weights(hex, i, j)).collect()
}

/// tau (kappa = 0) of each extended-cluster position as a signed monomial.
pub fn tau_monomials(hex: &HexNetwork, fs: &[LabelMonomial], kappa: &[i64]) -> Vec<LabelMonomial> {
    let b = exchange_matrix(hex.k, hex.m);
    tau_exponents(&b, kappa)
        .iter()
        .map(|row| row.iter().zip(fs).fold(LabelMonomial::unit(), |acc, (&e, f)| acc.combine(1, f, e)))
        .collect()
}

/// The tau-coordinate of cluster direction (i, j) expected from the face weights: y_(i+1, j+k-1).
pub fn tau_cluster_face(k: usize, i: usize, j: usize) -> (usize, usize) {
    (i + 1, j + k - 1)
}

/// The five-case table for stable tau-coordinates with the stable factor removed, as tabulated.
pub fn tau_star_table(k: usize, m: usize, i: usize, j: usize) -> Result<LabelMonomial, ClusterError> {
    let n = k + m;
    let mut out = LabelMonomial::unit();
    if !is_stable(k, i, j) || i == 0 || i > k || j == 0 || j > m {
        return Err(ClusterError::NotStable(i, j));
    }
    if i == k && j == 1 {
        for p in 1..=k {
            for q in k + 1..=n {
                out.bump((p, q), -((k - p) as i64).min((q - k - 1) as i64));
            }
        }
    } else if i == k && j == m {
        for p in 1..k {
            out.bump((p, n), 1);
        }
    } else if i == 1 && j == 1 {
        for q in k + 2..=n {
            out.bump((1, q), 1);
        }
    } else if i == k {
        for p in 1..k {
            let top = (n as i64).min((j + k) as i64 - p as i64 - 1);
            for q in (j + k) as i64..=top {
                out.bump((p, q as usize), 1);
            }
        }
    } else {
        for q in k + 2..=n {
            let top = (i as i64 - q as i64 + k as i64 + 2).min(n as i64);
            for p in i as i64..=top {
                out.bump((p as usize, q), 1);
            }
        }
    }
    Ok(out)
}

/// Stable tau-coordinate with the stable factor removed, obtained by composing the reduction
/// identities with the face-weight formula for f.
pub fn tau_star(k: usize, m: usize, i: usize, j: usize) -> Result<LabelMonomial, ClusterError> {
    if !is_stable(k, i, j) || i == 0 || i > k || j == 0 || j > m {
        return Err(ClusterError::NotStable(i, j));
    }
    let f = |a: usize, b: usize| f_monomial(k, m, a, b);
    let one = LabelMonomial::unit();
    Ok(if i == k && j == 1 {
        f(k - 1, 2).combine(-1, &one, 0)
    } else if i == k && j == m {
        f(k - 1, m)
    } else if i == 1 && j == 1 {
        f(1, 2)
    } else if i == k {
        f(k - 1, j).combine(1, &f(k - 1, j + 1), -1)
    } else {
        f(i, 2).combine(1, &f(i - 1, 2), -1)
    })
}

#[derive(Clone, Debug)]
pub struct CompatReport {
    pub k: usize,
    pub m: usize,
    pub b: ExchangeMatrix,
    pub kappa: Vec<i64>,
    /// first (k-1)(m-1) rows of the coefficient matrix in the tau basis
    pub omega: Vec<Vec<RF>>,
    pub factor: Option<RF>,
    pub proportional: bool,
    pub first_mismatch: Option<(usize, usize)>,
    /// stable f_kj and f_i1 against cluster tau: all coefficients zero
    pub stable_commute: bool,
}

impl CompatReport {
    pub fn passes(&self, alpha: &RF, beta: &RF) -> bool {
        self.proportional && self.factor.as_ref().is_some_and(|f| f.equals(&alpha.sub(beta)))
    }
}

fn omega_entry(a: &LabelMonomial, b: &LabelMonomial, c: &BTreeMap<((usize, usize), (usize, usize)), RF>) -> RF {
    let mut out = RF::zero();
    for (&fa, &ea) in &a.exps {
        for (&fb, &eb) in &b.exps {
            if let Some(x) = c.get(&(fa, fb)) {
                out = out.add(&x.scale(&Q::from_integer((ea * eb).into())));
            }
        }
    }
    out
}

pub fn check_compatibility(k: usize, m: usize, alpha: &RF, beta: &RF) -> Result<CompatReport, ClusterError> {
    let hex = crate::hex::build_hex_network(k, m)?;
    let dual = dual_network_with(&hex.net, &hex.faces, alpha, beta);
    let mut c = BTreeMap::new();
    for (f, lf) in hex.labels.iter().enumerate() {
        for (g, lg) in hex.labels.iter().enumerate() {
            if let (Some(a), Some(b)) = (lf, lg) {
                let x = face_bracket(&dual, f, g);
                if !x.is_zero() {
                    c.insert((*a, *b), x);
                }
            }
        }
    }
    let b = exchange_matrix(k, m);
    let kappa = choose_kappa(&b)?;
    let fs = seed_monomials(&hex)?;
    let tau = tau_monomials(&hex, &fs, &kappa);
    let nc = b.len();
    let omega: Vec<Vec<RF>> = (0..nc).map(|u| tau.iter().map(|t| omega_entry(&tau[u], t, &c)).collect()).collect();

    let factor = (0..nc)
        .flat_map(|u| (0..tau.len()).map(move |v| (u, v)))
        .find(|&(u, v)| b[u][v] != 0)
        .map(|(u, v)| omega[u][v].scale(&(Q::one() / Q::from_integer(b[u][v].into()))));
    let mut first_mismatch = None;
    let lambda = factor.clone().unwrap_or_else(RF::zero);
    'check: for u in 0..nc {
        for v in 0..tau.len() {
            let expected = lambda.scale(&Q::from_integer(b[u][v].into()));
            if !omega[u][v].equals(&expected) {
                first_mismatch = Some((u, v));
                break 'check;
            }
        }
    }
    let order = seed_order(k, m);
    let stable_commute = (nc..order.len()).all(|v| (0..nc).all(|u| omega_entry(&tau[u], &fs[v], &c).is_zero()));
    Ok(CompatReport {
        k,
        m,
        b,
        kappa,
        omega,
        factor,
        proportional: first_mismatch.is_none(),
        first_mismatch,
        stable_commute,
    })
}
