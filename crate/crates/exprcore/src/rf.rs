use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::{Monomial, Polynomial};
use crate::var::Var;
use crate::{ExprError, Q};

/// Quotient of two polynomials in canonical stored form.
///
/// Either the denominator is the constant 1 and the numerator carries rational
/// coefficients, or both parts have integer coefficients with joint content 1,
/// no common monomial factor, and a positive leading denominator coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Polynomial::one())
    }

    pub fn from_int(c: i64) -> Self {
        RationalFunction::from_poly(Polynomial::from_int(c))
    }

    pub fn constant(c: Q) -> Self {
        RationalFunction::from_poly(Polynomial::constant(c))
    }

    pub fn var(v: Var) -> Self {
        RationalFunction::from_poly(Polynomial::var(v))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// Laurent monomial from signed exponents.
    pub fn laurent<I: IntoIterator<Item = (Var, i64)>>(exps: I) -> Self {
        let mut up = Vec::new();
        let mut down = Vec::new();
        for (v, e) in exps {
            if e > 0 {
                up.push((v, e as u32));
            } else if e < 0 {
                down.push((v, (-e) as u32));
            }
        }
        RationalFunction::new(
            Polynomial::monomial(Monomial::from_pairs(up), Q::one()),
            Polynomial::monomial(Monomial::from_pairs(down), Q::one()),
        )
        .unwrap()
    }

    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, ExprError> {
        if den.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(RationalFunction::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        if let Some(c) = den.constant_value() {
            return RationalFunction::from_poly(num.scale(&(Q::one() / c)));
        }
        let g = num.monomial_content().gcd(&den.monomial_content());
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_monomial(&g).unwrap(), den.div_monomial(&g).unwrap())
        };
        if let Some(c) = den.constant_value() {
            return RationalFunction::from_poly(num.scale(&(Q::one() / c)));
        }
        // N/dn over D/dd  ==  N*dd over D*dn
        let (dn, dd) = (num.den().clone(), den.den().clone());
        let g = dn.gcd(&dd);
        let nk = &dd / &g;
        let dk = &dn / &g;
        let content = (num.int_content() * &nk).gcd(&(den.int_content() * &dk));
        let mut n_poly = num.numerator_part().scale_int(&nk, &content);
        let mut d_poly = den.numerator_part().scale_int(&dk, &content);
        if !d_poly.leading_sign_positive() {
            n_poly = n_poly.neg();
            d_poly = d_poly.neg();
        }
        RationalFunction {
            num: n_poly,
            den: d_poly,
        }
    }

    /// A sum over a shared denominator may become divisible by it.
    fn reduced_sum(num: Polynomial, den: Polynomial) -> Self {
        let r = RationalFunction::normalized(num, den);
        if r.den.is_one() {
            return r;
        }
        if r.num == r.den {
            return RationalFunction::one();
        }
        match quick_div(&r.num, &r.den) {
            Some(q) => RationalFunction::from_poly(q),
            None => r,
        }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut s = self.num.vars();
        s.extend(self.den.vars());
        s
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RationalFunction::reduced_sum(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one() {
            return RationalFunction::normalized(self.num.mul(&o.den).add(&o.num), o.den.clone());
        }
        if o.den.is_one() {
            return RationalFunction::normalized(self.num.add(&o.num.mul(&self.den)), self.den.clone());
        }
        if self.den.len() <= o.den.len() {
            if let Some(q) = quick_div(&o.den, &self.den) {
                return RationalFunction::reduced_sum(self.num.mul(&q).add(&o.num), o.den.clone());
            }
        } else if let Some(q) = quick_div(&self.den, &o.den) {
            return RationalFunction::reduced_sum(self.num.add(&o.num.mul(&q)), self.den.clone());
        }
        RationalFunction::normalized(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RationalFunction::from_poly(self.num.mul(&o.num));
        }
        let (mut n1, mut d1) = (self.num.clone(), self.den.clone());
        let (mut n2, mut d2) = (o.num.clone(), o.den.clone());
        cancel(&mut n1, &mut d2);
        cancel(&mut n2, &mut d1);
        RationalFunction::normalized(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Result<Self, ExprError> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self, ExprError> {
        if o.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(self.mul(&o.inv()?))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExprError> {
        if e >= 0 {
            Ok(RationalFunction::normalized(
                self.num.pow(e as u32),
                self.den.pow(e as u32),
            ))
        } else {
            self.inv()?.pow(-e)
        }
    }

    pub fn arith(&self, o: &Self, op: ArithOp) -> Result<Self, ExprError> {
        Ok(match op {
            ArithOp::Add => self.add(o),
            ArithOp::Sub => self.sub(o),
            ArithOp::Mul => self.mul(o),
            ArithOp::Div => self.div(o)?,
        })
    }

    /// Semantic equality by cross multiplication.
    pub fn equals(&self, o: &Self) -> bool {
        if self == o {
            return true;
        }
        if self.den == o.den {
            return self.num == o.num;
        }
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    pub fn diff(&self, v: Var) -> Self {
        let dn = self.num.derivative(v);
        if self.den.is_one() {
            return RationalFunction::from_poly(dn);
        }
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return RationalFunction::normalized(dn, self.den.clone());
        }
        let top = dn.mul(&self.den).sub(&self.num.mul(&dd));
        RationalFunction::normalized(top, self.den.mul(&self.den))
    }

    pub fn eval(&self, point: &HashMap<Var, Q>) -> Result<Q, ExprError> {
        let n = self.num.eval(point).ok_or(ExprError::Unbound)?;
        let d = self.den.eval(point).ok_or(ExprError::Unbound)?;
        if d.is_zero() {
            return Err(ExprError::DenominatorVanishes);
        }
        Ok(n / d)
    }

    /// Specialize some variables to rationals.
    pub fn subst_rational(&self, point: &HashMap<Var, Q>) -> Result<Self, ExprError> {
        let d = self.den.subst_rational(point);
        if d.is_zero() {
            return Err(ExprError::DenominatorVanishes);
        }
        RationalFunction::new(self.num.subst_rational(point), d)
    }

    pub fn subst(&self, bindings: &HashMap<Var, RationalFunction>) -> Result<Self, ExprError> {
        let mut cache: HashMap<(Var, u32), RationalFunction> = HashMap::new();
        let n = subst_poly(&self.num, bindings, &mut cache);
        let d = subst_poly(&self.den, bindings, &mut cache);
        if d.is_zero() {
            return Err(ExprError::DenominatorVanishes);
        }
        n.div(&d)
    }

    pub fn rename(&self, map: &HashMap<Var, Var>) -> Self {
        RationalFunction::normalized(self.num.rename(map), self.den.rename(map))
    }

    /// Exponent vector if this is c times a Laurent monomial.
    pub fn as_laurent(&self) -> Option<(Q, Vec<(Var, i64)>)> {
        if self.num.len() != 1 || self.den.len() != 1 {
            return None;
        }
        let (nm, nc) = self.num.leading()?;
        let (dm, dc) = self.den.leading()?;
        let mut exps: HashMap<Var, i64> = HashMap::new();
        for &(v, e) in nm.pairs() {
            *exps.entry(v).or_insert(0) += e as i64;
        }
        for &(v, e) in dm.pairs() {
            *exps.entry(v).or_insert(0) -= e as i64;
        }
        let mut out: Vec<(Var, i64)> = exps.into_iter().filter(|p| p.1 != 0).collect();
        out.sort();
        Some((nc / dc, out))
    }
}

/// Exact division that gives up early on a mismatched leading monomial.
fn quick_div(a: &Polynomial, d: &Polynomial) -> Option<Polynomial> {
    if d.len() < 2 || a.len() < d.len() {
        return None;
    }
    let (am, _) = a.leading()?;
    let (dm, _) = d.leading()?;
    am.div(dm)?;
    let la = &a.int_terms()[a.len() - 1].0;
    let ld = &d.int_terms()[d.len() - 1].0;
    la.div(ld)?;
    a.div_exact(d)
}

/// Remove a factor shared by a numerator and a denominator when one divides the other.
fn cancel(n: &mut Polynomial, d: &mut Polynomial) {
    if d.is_constant() || n.is_constant() {
        return;
    }
    if n == d {
        *n = Polynomial::one();
        *d = Polynomial::one();
        return;
    }
    if let Some(q) = quick_div(n, d) {
        *n = q;
        *d = Polynomial::one();
    } else if let Some(q) = quick_div(d, n) {
        *d = q;
        *n = Polynomial::one();
    }
}

fn subst_poly(
    p: &Polynomial,
    b: &HashMap<Var, RationalFunction>,
    cache: &mut HashMap<(Var, u32), RationalFunction>,
) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    let mut plain: Vec<(Monomial, Q)> = Vec::new();
    for (m, c) in p.terms() {
        let mut rest = Vec::new();
        let mut val = RationalFunction::one();
        let mut touched = false;
        for &(v, e) in m.pairs() {
            match b.get(&v) {
                Some(x) => {
                    touched = true;
                    let pw = cache
                        .entry((v, e))
                        .or_insert_with(|| x.pow(e as i64).unwrap())
                        .clone();
                    val = val.mul(&pw);
                }
                None => rest.push((v, e)),
            }
        }
        if touched {
            let term = val.mul(&RationalFunction::from_poly(Polynomial::monomial(
                Monomial::from_pairs(rest),
                c,
            )));
            acc = acc.add(&term);
        } else {
            plain.push((m.clone(), c));
        }
    }
    acc.add(&RationalFunction::from_poly(Polynomial::from_terms(plain)))
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl From<Var> for RationalFunction {
    fn from(v: Var) -> Self {
        RationalFunction::var(v)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        RationalFunction::from_int(c)
    }
}

impl From<Q> for RationalFunction {
    fn from(c: Q) -> Self {
        RationalFunction::constant(c)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: &RationalFunction) -> RationalFunction {
                RationalFunction::$m(self, o)
            }
        }
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: RationalFunction) -> RationalFunction {
                RationalFunction::$m(&self, &o)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: &RationalFunction) -> RationalFunction {
                RationalFunction::$m(&self, o)
            }
        }
        impl $tr<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: RationalFunction) -> RationalFunction {
                RationalFunction::$m(self, &o)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::neg(&self)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::neg(self)
    }
}

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = RationalFunction>>(it: I) -> Self {
        it.fold(RationalFunction::zero(), |a, b| a.add(&b))
    }
}

impl std::iter::Product for RationalFunction {
    fn product<I: Iterator<Item = RationalFunction>>(it: I) -> Self {
        it.fold(RationalFunction::one(), |a, b| a.mul(&b))
    }
}

