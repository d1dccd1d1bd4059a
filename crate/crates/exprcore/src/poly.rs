use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::var::Var;
use crate::Q;

/// Product of variable powers, stored sparse and sorted by variable id.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let mut s = SmallVec::new();
        if e > 0 {
            s.push((v, e));
        }
        Monomial(s)
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut v: SmallVec<[(Var, u32); 4]> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        v.sort_by_key(|p| p.0);
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
        for (x, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == x => last.1 += e,
                _ => out.push((x, e)),
            }
        }
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|p| p.0 == v)
            .map(|p| p.1)
            .unwrap_or(0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let (a, b) = (&self.0, &o.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// self / o, if o divides self.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::new();
        let mut j = 0;
        let b = &o.0;
        for &(v, e) in self.0.iter() {
            if j < b.len() && b[j].0 < v {
                return None;
            }
            if j < b.len() && b[j].0 == v {
                if b[j].1 > e {
                    return None;
                }
                if e > b[j].1 {
                    out.push((v, e - b[j].1));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        let (a, b) = (&self.0, &o.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1.min(b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial(out)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, x)| (v, x * e)).collect())
    }

    /// Remove variable v, returning its exponent and the rest.
    pub fn split_var(&self, v: Var) -> (u32, Monomial) {
        let e = self.exp(v);
        (e, Monomial(self.0.iter().copied().filter(|p| p.0 != v).collect()))
    }
}

/// Graded order, ties broken lexicographically by variable id.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        let d = self.degree().cmp(&o.degree());
        if d != Ordering::Equal {
            return d;
        }
        let (a, b) = (&self.0, &o.0);
        for k in 0..a.len().min(b.len()) {
            if a[k].0 == b[k].0 {
                if a[k].1 != b[k].1 {
                    return a[k].1.cmp(&b[k].1);
                }
            } else if a[k].0 < b[k].0 {
                return Ordering::Greater;
            } else {
                return Ordering::Less;
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Polynomial with rational coefficients, kept as integer coefficients over a
/// common positive denominator. Terms sorted in decreasing monomial order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, BigInt)>,
    den: BigInt,
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() || a == b {
        return a.clone();
    }
    a.lcm(b)
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            terms: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Polynomial::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Polynomial::from_terms([(Monomial::one(), c)])
    }

    pub fn from_int(c: i64) -> Self {
        Polynomial::constant(Q::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Self {
        Polynomial::monomial(Monomial::var(v), Q::one())
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        Polynomial::from_terms([(m, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(terms: I) -> Self {
        let terms: Vec<(Monomial, Q)> = terms.into_iter().filter(|t| !t.1.is_zero()).collect();
        let mut den = BigInt::one();
        for t in &terms {
            den = lcm(&den, t.1.denom());
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            let k = c.numer() * (&den / c.denom());
            *acc.entry(m).or_insert_with(BigInt::zero) += k;
        }
        Polynomial::from_int_map(acc, den)
    }

    fn from_int_map(acc: HashMap<Monomial, BigInt>, den: BigInt) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> = acc.into_iter().filter(|t| !t.1.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial::reduced(terms, den)
    }

    /// Terms must already be sorted and nonzero.
    fn reduced(terms: Vec<(Monomial, BigInt)>, den: BigInt) -> Self {
        let mut p = Polynomial { terms, den };
        p.reduce();
        p
    }

    fn reduce(&mut self) {
        if self.terms.is_empty() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for t in self.terms.iter_mut() {
                t.1 = -&t.1;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for t in &self.terms {
            if g.is_one() {
                break;
            }
            g = g.gcd(&t.1);
        }
        if !g.is_one() {
            self.den = &self.den / &g;
            for t in self.terms.iter_mut() {
                t.1 = &t.1 / &g;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one() && self.den.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.terms.is_empty() {
            Some(Q::zero())
        } else if self.is_constant() {
            Some(Q::new(self.terms[0].1.clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Q {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => Q::new(c.clone(), self.den.clone()),
            _ => Q::zero(),
        }
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn int_terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Q)> + '_ {
        self.terms.iter().map(move |(m, c)| (m, Q::new(c.clone(), self.den.clone())))
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(i) => Q::new(self.terms[i].1.clone(), self.den.clone()),
            Err(_) => Q::zero(),
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, Q)> {
        self.terms.first().map(|(m, c)| (m, Q::new(c.clone(), self.den.clone())))
    }

    pub fn leading_sign_positive(&self) -> bool {
        self.terms.first().map(|t| t.1.is_positive()).unwrap_or(true)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut s = BTreeSet::new();
        for (m, _) in &self.terms {
            for &(v, _) in m.pairs() {
                s.insert(v);
            }
        }
        s
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let mut g = match it.next() {
            Some(t) => t.0.clone(),
            None => return Monomial::one(),
        };
        for t in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(&t.0);
        }
        g
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        if m.is_one() {
            return Some(self.clone());
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, c) in &self.terms {
            terms.push((t.div(m)?, c.clone()));
        }
        Some(Polynomial {
            terms,
            den: self.den.clone(),
        })
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        if m.is_one() {
            return self.clone();
        }
        Polynomial {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
            den: self.den.clone(),
        }
    }

    /// gcd of the integer coefficients (nonnegative).
    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for t in &self.terms {
            g = g.gcd(&t.1);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Numerator polynomial with integer coefficients (den dropped).
    pub fn numerator_part(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.clone(),
            den: BigInt::one(),
        }
    }

    pub fn scale_int(&self, k: &BigInt, d: &BigInt) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::reduced(
            self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
            &self.den * d,
        )
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        self.scale_int(c.numer(), c.denom())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let den = lcm(&self.den, &o.den);
        let fa = &den / &self.den;
        let fb = &den / &o.den;
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let sc = |c: &BigInt, f: &BigInt| if f.is_one() { c.clone() } else { c * f };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push((a[i].0.clone(), sc(&a[i].1, &fa)));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sc(&b[j].1, &fb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = sc(&a[i].1, &fa) + sc(&b[j].1, &fb);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        for t in &a[i..] {
            out.push((t.0.clone(), sc(&t.1, &fa)));
        }
        for t in &b[j..] {
            out.push((t.0.clone(), sc(&t.1, &fb)));
        }
        Polynomial::reduced(out, den)
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let den = &self.den * &o.den;
        if self.terms.len() == 1 || o.terms.len() == 1 {
            let (single, other) = if self.terms.len() == 1 { (self, o) } else { (o, self) };
            let (m, c) = &single.terms[0];
            let terms = other
                .terms
                .iter()
                .map(|(t, k)| (t.mul(m), k * c))
                .collect();
            return Polynomial::reduced(terms, den);
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial::from_int_map(acc, den)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn derivative(&self, v: Var) -> Polynomial {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            if e == 0 {
                continue;
            }
            let nm = rest.mul(&Monomial::var_pow(v, e - 1));
            *acc.entry(nm).or_insert_with(BigInt::zero) += c * BigInt::from(e);
        }
        Polynomial::from_int_map(acc, self.den.clone())
    }

    /// Exact quotient self / d, or None when d does not divide self.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&(Q::one() / c)));
        }
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c)).unwrap();
        if self.terms.len() < d.terms.len() && d.terms.len() > 1 && self.terms.len() == 1 {
            return None;
        }
        let mut r = self.clone();
        let mut q: Vec<(Monomial, Q)> = Vec::new();
        let mut steps = 0usize;
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c)) {
            let tm = rm.div(&dm)?;
            // a multiple of d cannot have lower degree than d in any variable
            let tc = rc / &dc;
            let t = Polynomial::monomial(tm.clone(), tc.clone());
            r = r.sub(&t.mul(d));
            q.push((tm, tc));
            steps += 1;
            if steps > 100_000 {
                return None;
            }
        }
        Some(Polynomial::from_terms(q))
    }

    /// Evaluate with every variable bound; None if a variable is missing.
    pub fn eval(&self, point: &HashMap<Var, Q>) -> Option<Q> {
        let mut sum = BigInt::zero();
        let mut den = BigInt::one();
        // accumulate as fraction sum/den
        for (m, c) in &self.terms {
            let mut val = Q::from_integer(c.clone());
            for &(v, e) in m.pairs() {
                let x = point.get(&v)?;
                val *= x.pow(e as i32);
            }
            // sum/den + val
            let nd = lcm(&den, val.denom());
            sum = sum * (&nd / &den) + val.numer() * (&nd / val.denom());
            den = nd;
        }
        Some(Q::new(sum, den * &self.den))
    }

    /// Substitute rationals for some variables, leaving the rest symbolic.
    pub fn subst_rational(&self, point: &HashMap<Var, Q>) -> Polynomial {
        let mut out: Vec<(Monomial, Q)> = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut val = Q::new(c.clone(), self.den.clone());
            let mut rest: SmallVec<[(Var, u32); 4]> = SmallVec::new();
            for &(v, e) in m.pairs() {
                match point.get(&v) {
                    Some(x) => val *= x.pow(e as i32),
                    None => rest.push((v, e)),
                }
            }
            out.push((Monomial(rest), val));
        }
        Polynomial::from_terms(out)
    }

    /// Coefficients in v as a dense vector, if v is the only variable.
    pub fn univariate_coeffs(&self, v: Var) -> Option<Vec<Q>> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Q::zero(); deg + 1];
        for (m, c) in self.terms() {
            let (e, rest) = m.split_var(v);
            if !rest.is_one() {
                return None;
            }
            out[e as usize] += c;
        }
        Some(out)
    }

    pub fn rename(&self, map: &HashMap<Var, Var>) -> Polynomial {
        let terms = self.terms().map(|(m, c)| {
            (
                Monomial::from_pairs(m.pairs().iter().map(|&(v, e)| (*map.get(&v).unwrap_or(&v), e))),
                c,
            )
        });
        Polynomial::from_terms(terms)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", a, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
