use num_traits::Zero;

use crate::rf::RationalFunction;
use crate::var::Var;
use crate::{ExprError, Q};

/// Truncated Taylor expansion at 0 in one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    pub var: Var,
    pub coeffs: Vec<Q>,
    pub order: usize,
}

impl PowerSeries {
    pub fn zero(var: Var, order: usize) -> Self {
        PowerSeries {
            var,
            coeffs: vec![Q::zero(); order + 1],
            order,
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, o: &PowerSeries) -> PowerSeries {
        let order = self.order.min(o.order);
        let mut c = vec![Q::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=(order - i) {
                c[i + j] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        PowerSeries {
            var: self.var,
            coeffs: c,
            order,
        }
    }

    pub fn add(&self, o: &PowerSeries) -> PowerSeries {
        let order = self.order.min(o.order);
        PowerSeries {
            var: self.var,
            coeffs: (0..=order).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect(),
            order,
        }
    }
}

pub fn rf_series(a: &RationalFunction, v: Var, order: usize) -> Result<PowerSeries, ExprError> {
    let n = a.numer().univariate_coeffs(v).ok_or(ExprError::NotUnivariate)?;
    let d = a.denom().univariate_coeffs(v).ok_or(ExprError::NotUnivariate)?;
    if d[0].is_zero() {
        return Err(ExprError::NoSeriesAtZero);
    }
    let mut s: Vec<Q> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut x = n.get(k).cloned().unwrap_or_else(Q::zero);
        for i in 1..=k.min(d.len() - 1) {
            x -= &d[i] * &s[k - i];
        }
        s.push(x / &d[0]);
    }
    Ok(PowerSeries {
        var: v,
        coeffs: s,
        order,
    })
}
