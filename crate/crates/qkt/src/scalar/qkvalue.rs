//! Rational values `P(q)/(1 − q)^m` with `P` a polynomial in `q`.

use super::qseries::QSeries;
use super::{QPoly, RatScalar, Render, Ring};
use std::fmt;

/// `num / (1 − q)^den_pow`, kept with `num(1) ≠ 0` whenever `den_pow > 0`.
#[derive(Clone)]
pub struct QKValue {
    num: QPoly<RatScalar>,
    den_pow: u32,
}

/// Divides `p` by `(1 − q)` if the remainder vanishes.
fn div_one_minus_q(p: &QPoly<RatScalar>) -> Option<QPoly<RatScalar>> {
    if p.is_zero() {
        return Some(p.clone());
    }
    let n = p.nparams();
    let low = p.low();
    let high = p.high().unwrap();
    // p = (1 − q)·s with s_d = Σ_{j ≤ d} p_j.
    let mut acc = RatScalar::zero(n);
    let mut s = Vec::new();
    for d in low..=high {
        acc = acc.add(&p.coeff(d));
        s.push(acc.clone());
    }
    if !acc.is_zero() {
        return None;
    }
    s.pop();
    Some(QPoly::from_coeffs(n, low, s))
}

impl QKValue {
    pub fn new(num: QPoly<RatScalar>, den_pow: u32) -> Self {
        let mut v = QKValue { num, den_pow };
        v.reduce();
        v
    }

    pub fn from_poly(num: QPoly<RatScalar>) -> Self {
        QKValue { num, den_pow: 0 }
    }

    pub fn from_rat(r: RatScalar) -> Self {
        Self::from_poly(QPoly::constant(r))
    }

    pub fn zero(n: usize) -> Self {
        Self::from_poly(QPoly::zero(n))
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den_pow = 0;
            return;
        }
        while self.den_pow > 0 {
            match div_one_minus_q(&self.num) {
                Some(s) => {
                    self.num = s;
                    self.den_pow -= 1;
                }
                None => break,
            }
        }
    }

    pub fn numerator(&self) -> &QPoly<RatScalar> {
        &self.num
    }

    pub fn den_pow(&self) -> u32 {
        self.den_pow
    }

    pub fn nparams(&self) -> usize {
        self.num.nparams()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn one_minus_q_pow(n: usize, m: u32) -> QPoly<RatScalar> {
        let base = QPoly::from_coeffs(n, 0, vec![RatScalar::one(n), RatScalar::from_i64(n, -1)]);
        Ring::pow(&base, m)
    }

    fn lift(&self, m: u32) -> QPoly<RatScalar> {
        Ring::mul(&self.num, &Self::one_minus_q_pow(self.nparams(), m - self.den_pow))
    }

    pub fn add(&self, o: &Self) -> Self {
        let m = self.den_pow.max(o.den_pow);
        QKValue::new(Ring::add(&self.lift(m), &o.lift(m)), m)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let m = self.den_pow.max(o.den_pow);
        QKValue::new(Ring::sub(&self.lift(m), &o.lift(m)), m)
    }

    pub fn mul(&self, o: &Self) -> Self {
        QKValue::new(Ring::mul(&self.num, &o.num), self.den_pow + o.den_pow)
    }

    pub fn neg(&self) -> Self {
        QKValue { num: Ring::neg(&self.num), den_pow: self.den_pow }
    }

    /// The expansion about `q = 0` modulo `q^{order+1}`.
    pub fn to_series(&self, order: usize) -> QSeries {
        let n = self.nparams();
        let num = QSeries::from_qpoly_to(&self.num, order);
        let geo = QSeries::new(n, order, vec![RatScalar::one(n); order + 1]);
        let mut acc = num;
        for _ in 0..self.den_pow {
            acc = Ring::mul(&acc, &geo);
        }
        acc
    }

    fn fmt_with(&self, latex: bool) -> String {
        let body = if latex { self.num.render_latex() } else { self.num.render_text() };
        match (self.den_pow, latex) {
            (0, _) => body,
            (1, false) => format!("({body})/(1 - q)"),
            (m, false) => format!("({body})/(1 - q)^{m}"),
            (1, true) => format!("\\frac{{{body}}}{{1 - q}}"),
            (m, true) => format!("\\frac{{{body}}}{{(1 - q)^{{{m}}}}}"),
        }
    }
}

impl PartialEq for QKValue {
    fn eq(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

impl fmt::Debug for QKValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(false))
    }
}

impl fmt::Display for QKValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(false))
    }
}

impl Render for QKValue {
    fn render_text(&self) -> String {
        self.fmt_with(false)
    }

    fn render_latex(&self) -> String {
        self.fmt_with(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize) -> QPoly<RatScalar> {
        QPoly::var(n)
    }

    #[test]
    fn geometric_sum_collapses() {
        let n = 1;
        let one = QKValue::from_rat(RatScalar::one(n));
        let inv = QKValue::new(QPoly::constant(RatScalar::one(n)), 1);
        let qv = QKValue::from_poly(q(n));
        // 1/(1 − q) − q/(1 − q) = 1.
        let diff = inv.sub(&qv.mul(&inv));
        assert_eq!(diff.den_pow(), 0);
        assert_eq!(diff, one);
    }

    #[test]
    fn series_expansion() {
        let n = 1;
        let v = QKValue::new(q(n), 1);
        let s = v.to_series(3);
        assert_eq!(s.padded(), vec![RatScalar::zero(n), RatScalar::one(n), RatScalar::one(n), RatScalar::one(n)]);
    }
}
