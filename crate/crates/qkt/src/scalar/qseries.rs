//! Truncated power series in `q` with fraction coefficients.

use super::{ParamMap, QPoly, QRing, RatScalar, Render, Ring, ScalarError};
use std::fmt;

/// Precision marker for series known exactly.
pub const EXACT: usize = usize::MAX;

/// `Σ_{d=0}^{N} c_d q^d + O(q^{N+1})`.
///
/// A series built from an exact polynomial carries the precision [`EXACT`];
/// arithmetic takes the smaller of the two precisions and discards every
/// term beyond it.
#[derive(Clone)]
pub struct QSeries {
    n: usize,
    order: usize,
    coeffs: Vec<RatScalar>,
}

impl QSeries {
    /// The series with the given coefficients, truncated at `order`.
    pub fn new(n: usize, order: usize, coeffs: Vec<RatScalar>) -> Self {
        let mut s = QSeries { n, order, coeffs };
        s.trim();
        s
    }

    pub fn exact(n: usize, coeffs: Vec<RatScalar>) -> Self {
        Self::new(n, EXACT, coeffs)
    }

    pub fn constant(c: RatScalar) -> Self {
        Self::exact(c.nparams(), vec![c])
    }

    pub fn zero_to(n: usize, order: usize) -> Self {
        Self::new(n, order, Vec::new())
    }

    fn trim(&mut self) {
        if self.order != EXACT && self.coeffs.len() > self.order + 1 {
            self.coeffs.truncate(self.order + 1);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order == EXACT
    }

    pub fn nparams(&self) -> usize {
        self.n
    }

    /// Coefficient of `q^d`.
    pub fn coeff(&self, d: usize) -> RatScalar {
        self.coeffs.get(d).cloned().unwrap_or_else(|| RatScalar::zero(self.n))
    }

    /// The nonzero prefix of coefficients.
    pub fn coeffs(&self) -> &[RatScalar] {
        &self.coeffs
    }

    /// All coefficients `c_0 … c_N`, padded with zeros.
    pub fn padded(&self) -> Vec<RatScalar> {
        let len = if self.order == EXACT { self.coeffs.len() } else { self.order + 1 };
        (0..len).map(|d| self.coeff(d)).collect()
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Reduces the precision to `order`.
    pub fn truncate(&self, order: usize) -> Self {
        QSeries::new(self.n, order.min(self.order), self.coeffs.clone())
    }

    /// Multiplies by `q^k`, raising the precision accordingly.
    pub fn shift(&self, k: usize) -> Self {
        let mut c: Vec<RatScalar> = (0..k).map(|_| RatScalar::zero(self.n)).collect();
        c.extend(self.coeffs.iter().cloned());
        let order = if self.order == EXACT { EXACT } else { self.order + k };
        QSeries::new(self.n, order, c)
    }

    /// `1/a` up to the precision of `a`; fails when the constant term is zero.
    pub fn invert(&self) -> Result<Self, ScalarError> {
        self.invert_to(self.order)
    }

    /// `1/a` modulo `q^{order+1}`.
    pub fn invert_to(&self, order: usize) -> Result<Self, ScalarError> {
        let order = order.min(self.order);
        if order == EXACT {
            return Err(ScalarError::NonUnit);
        }
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(ScalarError::NonUnit);
        }
        let inv0 = c0.inv()?;
        let mut out: Vec<RatScalar> = vec![inv0.clone()];
        for d in 1..=order {
            let mut acc = RatScalar::zero(self.n);
            for j in 1..=d.min(self.coeffs.len().saturating_sub(1)) {
                acc = acc.add(&self.coeffs[j].mul(&out[d - j]));
            }
            out.push(acc.mul(&inv0).neg());
        }
        Ok(QSeries::new(self.n, order, out))
    }

    pub fn from_qpoly_to(p: &QPoly<RatScalar>, order: usize) -> Self {
        assert!(p.is_zero() || p.low() >= 0, "power series layer has no negative q-powers");
        let coeffs = if p.is_zero() {
            Vec::new()
        } else {
            (0..=p.high().unwrap()).map(|d| p.coeff(d)).collect()
        };
        QSeries::new(p.nparams(), order, coeffs)
    }

    /// The polynomial `Σ_{d ≤ N} c_d q^d`.
    pub fn to_qpoly(&self) -> QPoly<RatScalar> {
        QPoly::from_coeffs(self.n, 0, self.coeffs.clone())
    }

    fn fmt_with(&self, latex: bool) -> String {
        let p = self.to_qpoly();
        let body = if latex { p.render_latex() } else { p.render_text() };
        if self.order == EXACT {
            body
        } else if latex {
            format!("{body} + O(q^{{{}}})", self.order + 1)
        } else {
            format!("{body} + O(q^{})", self.order + 1)
        }
    }
}

impl PartialEq for QSeries {
    /// Equality up to the common precision.
    fn eq(&self, o: &Self) -> bool {
        let order = self.order.min(o.order);
        let len = self.coeffs.len().max(o.coeffs.len());
        let upto = if order == EXACT { len } else { (order + 1).min(len) };
        (0..upto).all(|d| self.coeff(d) == o.coeff(d))
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(false))
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(false))
    }
}

impl Render for QSeries {
    fn render_text(&self) -> String {
        self.fmt_with(false)
    }

    fn render_latex(&self) -> String {
        self.fmt_with(true)
    }
}

impl Ring for QSeries {
    fn zero(n: usize) -> Self {
        QSeries::exact(n, Vec::new())
    }

    fn one(n: usize) -> Self {
        QSeries::exact(n, vec![RatScalar::one(n)])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn nparams(&self) -> usize {
        self.n
    }

    fn add(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let len = self.coeffs.len().max(o.coeffs.len());
        QSeries::new(self.n, order, (0..len).map(|d| self.coeff(d).add(&o.coeff(d))).collect())
    }

    fn sub(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let len = self.coeffs.len().max(o.coeffs.len());
        QSeries::new(self.n, order, (0..len).map(|d| self.coeff(d).sub(&o.coeff(d))).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return QSeries::new(self.n, order, Vec::new());
        }
        let mut len = self.coeffs.len() + o.coeffs.len() - 1;
        if order != EXACT {
            len = len.min(order + 1);
        }
        let mut out: Vec<RatScalar> = (0..len).map(|_| RatScalar::zero(self.n)).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        QSeries::new(self.n, order, out)
    }

    fn neg(&self) -> Self {
        QSeries::new(self.n, self.order, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    fn from_rat(r: &RatScalar) -> Self {
        QSeries::constant(r.clone())
    }

    fn substitute(&self, m: &ParamMap) -> Self {
        QSeries::new(self.n, self.order, self.coeffs.iter().map(|c| c.substitute(m)).collect())
    }

    fn scale(&self, r: &RatScalar) -> Self {
        QSeries::new(self.n, self.order, self.coeffs.iter().map(|c| c.mul(r)).collect())
    }
}

impl QRing for QSeries {
    fn q(n: usize) -> Self {
        QSeries::exact(n, vec![RatScalar::zero(n), RatScalar::one(n)])
    }

    fn from_qpoly(p: &QPoly<RatScalar>) -> Self {
        QSeries::from_qpoly_to(p, EXACT)
    }
}
