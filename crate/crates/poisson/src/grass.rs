//! Brackets on Grassmannian cells: the epsilon function, Plücker-ratio brackets and
//! the comparison of the standard-cell bracket with the cell brackets {.,.}_{I,J}.

use exprcore::{qi, Q};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sfun::{s_cross2, s_eq2};

/// epsilon_{i i'} for 0-based indices and |I| = k.
pub fn epsilon(i: usize, i2: usize, k: usize) -> i32 {
    if (i < k) != (i2 < k) {
        0
    } else {
        (i as i64 - i2 as i64).signum() as i32
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    First,
    Second,
}

/// A formal term coef * a_{left} * a_{right}; the index tuples keep positional order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ATerm {
    pub coef: i32,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

fn replace(set: &[usize], from: usize, to: usize) -> Vec<usize> {
    set.iter().map(|&x| if x == from { to } else { x }).collect()
}

/// {a_I, a_I'} for the standard-cell bracket with alpha - beta = 2 (first) or alpha + beta = 2 (second).
pub fn grassmann_bracket_a(i_set: &[usize], i2_set: &[usize], variant: Variant) -> Vec<ATerm> {
    let k = i_set.len();
    match variant {
        Variant::First => {
            let mut out = Vec::new();
            for &i in i_set {
                for &i2 in i2_set {
                    let e = epsilon(i, i2, k);
                    if e != 0 {
                        out.push(ATerm {
                            coef: e,
                            left: replace(i_set, i, i2),
                            right: replace(i2_set, i2, i),
                        });
                    }
                }
            }
            out
        }
        Variant::Second => {
            let s = second_coefficient(i_set, i2_set);
            if s == 0 {
                vec![]
            } else {
                vec![ATerm {
                    coef: s,
                    left: i_set.to_vec(),
                    right: i2_set.to_vec(),
                }]
            }
        }
    }
}

/// Sum of sign(i - i') over the rows of [1, k] missing from I and I', plus the same over
/// the columns of I and I' outside [1, k].
pub fn second_coefficient(i_set: &[usize], i2_set: &[usize]) -> i32 {
    let k = i_set.len();
    let sg = |a: usize, b: usize| (a as i64 - b as i64).signum() as i32;
    let rows = |s: &[usize]| (0..k).filter(|x| !s.contains(x)).collect::<Vec<_>>();
    let cols = |s: &[usize]| s.iter().copied().filter(|&x| x >= k).collect::<Vec<_>>();
    let pair_sum = |a: &[usize], b: &[usize]| a.iter().flat_map(|&i| b.iter().map(move |&j| sg(i, j))).sum::<i32>();
    pair_sum(&rows(i_set), &rows(i2_set)) + pair_sum(&cols(i_set), &cols(i2_set))
}

/// The double sum of epsilon over I x I'.
pub fn epsilon_sum(i_set: &[usize], i2_set: &[usize]) -> i32 {
    let k = i_set.len();
    i_set.iter().flat_map(|&i| i2_set.iter().map(move |&j| epsilon(i, j, k))).sum()
}

/// Left side of the first epsilon lemma minus twice s_=.
pub fn newspar_residual(ip: usize, j: usize, ipb: usize, jb: usize, k: usize) -> i32 {
    let e = |a, b| epsilon(a, b, k);
    e(j, jb) + e(ipb, ip) - e(j, ip) - e(ipb, jb) - s_eq2(ip, j, ipb, jb)
}

/// Left side of the second epsilon lemma minus twice s_x.
pub fn newscross_residual(ip: usize, j: usize, ipb: usize, jb: usize, k: usize) -> i32 {
    let e = |a, b| epsilon(a, b, k);
    e(ip, ipb) - e(ip, jb) - e(j, ipb) + e(j, jb) - s_cross2(ip, j, ipb, jb)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub cases: usize,
    pub newspar_failures: Vec<[usize; 5]>,
    pub newscross_failures: Vec<[usize; 5]>,
}

impl LemmaReport {
    pub fn ok(&self) -> bool {
        self.newspar_failures.is_empty() && self.newscross_failures.is_empty()
    }
}

/// All k-subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Both epsilon lemmas for every I with 0 < |I| < n and every i_p, i_p' in I, j, j' outside I.
pub fn check_epsilon_lemmas(n: usize) -> LemmaReport {
    let mut rep = LemmaReport::default();
    for k in 1..n {
        for set in subsets(n, k) {
            let out: Vec<usize> = (0..n).filter(|x| !set.contains(x)).collect();
            for &ip in &set {
                for &ipb in &set {
                    for &j in &out {
                        for &jb in &out {
                            rep.cases += 1;
                            let tag = [k, ip + 1, j + 1, ipb + 1, jb + 1];
                            if newspar_residual(ip, j, ipb, jb, k) != 0 {
                                rep.newspar_failures.push(tag);
                            }
                            if newscross_residual(ip, j, ipb, jb, k) != 0 {
                                rep.newscross_failures.push(tag);
                            }
                        }
                    }
                }
            }
        }
    }
    rep
}

/// First-order jet over Q: value and gradient.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub v: Q,
    pub d: Vec<Q>,
}

impl Jet {
    pub fn constant(v: Q, dim: usize) -> Jet {
        Jet { v, d: vec![Q::zero(); dim] }
    }

    pub fn var(v: Q, idx: usize, dim: usize) -> Jet {
        let mut j = Jet::constant(v, dim);
        j.d[idx] = Q::one();
        j
    }

    pub fn sub(&self, o: &Jet) -> Jet {
        Jet {
            v: &self.v - &o.v,
            d: self.d.iter().zip(&o.d).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        Jet {
            v: &self.v * &o.v,
            d: self.d.iter().zip(&o.d).map(|(a, b)| a * &o.v + &self.v * b).collect(),
        }
    }

    /// None when the value of the divisor vanishes.
    pub fn div(&self, o: &Jet) -> Option<Jet> {
        if o.v.is_zero() {
            return None;
        }
        let v = &self.v / &o.v;
        let d = self.d.iter().zip(&o.d).map(|(a, b)| (a - &v * b) / &o.v).collect();
        Some(Jet { v, d })
    }

    fn neg(&self) -> Jet {
        Jet {
            v: -self.v.clone(),
            d: self.d.iter().map(|a| -a).collect(),
        }
    }
}

/// Determinant of a jet matrix; None if elimination meets a vanishing pivot column.
pub fn jet_det(mut a: Vec<Vec<Jet>>) -> Option<Jet> {
    let n = a.len();
    let dim = a[0][0].d.len();
    let mut det = Jet::constant(Q::one(), dim);
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].v.is_zero())?;
        if p != c {
            a.swap(p, c);
            det = det.neg();
        }
        let piv = a[c][c].clone();
        det = det.mul(&piv);
        for r in c + 1..n {
            let f = a[r][c].div(&piv)?;
            for cc in c..n {
                let t = f.mul(&a[c][cc]);
                a[r][cc] = a[r][cc].sub(&t);
            }
        }
    }
    Some(det)
}

/// The cell [1_k | Y] at a random integer point, with Y entries as independent jets.
struct Cell {
    k: usize,
    n: usize,
    cols: Vec<Vec<Jet>>,
    y: Vec<Q>,
}

impl Cell {
    fn random(k: usize, n: usize, rng: &mut ChaCha8Rng) -> Cell {
        let m = n - k;
        let dim = k * m;
        let y: Vec<Q> = (0..dim)
            .map(|_| loop {
                let v = rng.gen_range(-9i64..=9);
                if v != 0 {
                    break qi(v);
                }
            })
            .collect();
        let cols = (0..n)
            .map(|c| {
                (0..k)
                    .map(|r| {
                        if c < k {
                            Jet::constant(if r == c { Q::one() } else { Q::zero() }, dim)
                        } else {
                            let idx = r * m + (c - k);
                            Jet::var(y[idx].clone(), idx, dim)
                        }
                    })
                    .collect()
            })
            .collect();
        Cell { k, n, cols, y }
    }

    /// Maximal minor on the ordered column tuple.
    fn x(&self, tuple: &[usize]) -> Option<Jet> {
        let a = (0..self.k).map(|r| tuple.iter().map(|&c| self.cols[c][r].clone()).collect()).collect();
        jet_det(a)
    }

    /// Standard-cell bracket {y_a, y_b} for the chosen variant: the cell bracket with
    /// I = [1, k] at alpha - beta = 2, alpha + beta = 0 (first) or alpha - beta = 0, alpha + beta = 2 (second).
    fn generator_bracket(&self, a: usize, b: usize, variant: Variant) -> Q {
        let (k, m) = (self.k, self.n - self.k);
        let (i, j, ib, jb) = (a / m, a % m, b / m, b % m);
        match variant {
            Variant::First => qi(s_eq2(i, k + j, ib, k + jb) as i64) * &self.y[i * m + jb] * &self.y[ib * m + j],
            Variant::Second => qi(s_cross2(i, k + j, ib, k + jb) as i64) * &self.y[a] * &self.y[b],
        }
    }

    fn bracket(&self, f: &Jet, g: &Jet, variant: Variant) -> Q {
        let dim = f.d.len();
        let mut s = Q::zero();
        for a in 0..dim {
            if f.d[a].is_zero() {
                continue;
            }
            for b in 0..dim {
                if a != b && !g.d[b].is_zero() {
                    let c = self.generator_bracket(a, b, variant);
                    if !c.is_zero() {
                        s += &f.d[a] * &g.d[b] * c;
                    }
                }
            }
        }
        s
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoincReport {
    pub cells: usize,
    pub pairs: usize,
    /// (variant, k, I 1-based, p, j, p', j') for failing pairs
    pub failures: Vec<(usize, usize, Vec<usize>, [usize; 4])>,
    pub resampled: usize,
}

impl CoincReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Coordinates m^I_pj = x_{I(i_p -> j)} / x_I on the cell, as jets; None at a degenerate point.
fn cell_coordinates(cell: &Cell, set: &[usize], out: &[usize]) -> Option<Vec<Vec<Jet>>> {
    let xi = cell.x(set)?;
    set.iter()
        .map(|&ip| out.iter().map(|&j| cell.x(&replace(set, ip, j))?.div(&xi)).collect::<Option<Vec<_>>>())
        .collect()
}

/// The standard-cell brackets of the cell coordinates against 2 s_= and 2 s_x, for every
/// k-subset I of [1, n], at an exact random point of the standard cell.
pub fn check_coincidence(n: usize, seed: u64) -> CoincReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = CoincReport::default();
    for k in 1..n {
        for set in subsets(n, k) {
            let out: Vec<usize> = (0..n).filter(|x| !set.contains(x)).collect();
            let (cell, m) = loop {
                let cell = Cell::random(k, n, &mut rng);
                match cell_coordinates(&cell, &set, &out) {
                    Some(m) => break (cell, m),
                    None => rep.resampled += 1,
                }
            };
            rep.cells += 1;
            for p in 0..k {
                for q in 0..out.len() {
                    for pb in 0..k {
                        for qb in 0..out.len() {
                            if (pb, qb) <= (p, q) {
                                continue;
                            }
                            rep.pairs += 1;
                            let (ip, j, ipb, jb) = (set[p], out[q], set[pb], out[qb]);
                            let first = cell.bracket(&m[p][q], &m[pb][qb], Variant::First);
                            let want1 = qi(s_eq2(ip, j, ipb, jb) as i64) * &m[p][qb].v * &m[pb][q].v;
                            let second = cell.bracket(&m[p][q], &m[pb][qb], Variant::Second);
                            let want2 = qi(s_cross2(ip, j, ipb, jb) as i64) * &m[p][q].v * &m[pb][qb].v;
                            let tag = [p + 1, j + 1, pb + 1, jb + 1];
                            let iset: Vec<usize> = set.iter().map(|x| x + 1).collect();
                            if first != want1 {
                                rep.failures.push((1, k, iset.clone(), tag));
                            }
                            if second != want2 {
                                rep.failures.push((2, k, iset, tag));
                            }
                        }
                    }
                }
            }
        }
    }
    rep
}

/// Evaluate a formal a-bracket at a random point of the standard cell and compare it with the
/// bracket of the Plücker ratios a_I = x_I / x_[1,k] computed directly.
pub fn check_a_bracket(i_set: &[usize], i2_set: &[usize], n: usize, variant: Variant, seed: u64) -> bool {
    check_a_terms(i_set, i2_set, n, variant, &grassmann_bracket_a(i_set, i2_set, variant), seed)
}

/// Compare given formal terms with the bracket of a_I and a_I' at a random point.
pub fn check_a_terms(i_set: &[usize], i2_set: &[usize], n: usize, variant: Variant, terms: &[ATerm], seed: u64) -> bool {
    let k = i_set.len();
    let dim = k * (n - k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let cell = Cell::random(k, n, &mut rng);
        // x_[1,k] = 1 on this chart, so a_T = x_T; repeated columns give 0
        let a = |t: &[usize]| -> Option<Jet> {
            let mut u = t.to_vec();
            u.sort();
            u.dedup();
            if u.len() < t.len() {
                Some(Jet::constant(Q::zero(), dim))
            } else {
                cell.x(t)
            }
        };
        let (Some(f), Some(g)) = (a(i_set), a(i2_set)) else {
            continue;
        };
        let mut rhs = Q::zero();
        let mut degenerate = false;
        for t in terms {
            match (a(&t.left), a(&t.right)) {
                (Some(l), Some(r)) => rhs += qi(t.coef as i64) * l.v * r.v,
                _ => degenerate = true,
            }
        }
        if !degenerate {
            return cell.bracket(&f, &g, variant) == rhs;
        }
    }
}
