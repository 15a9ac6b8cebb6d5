//! Univariate Laurent polynomial layers over a coefficient ring.

use super::{ParamMap, QRing, RatScalar, Render, Ring};
use std::fmt;
use std::marker::PhantomData;

/// Names the indeterminate of a polynomial layer.
pub trait VarName: Send + Sync + 'static {
    const NAME: &'static str;
}

/// Marker for the spectral parameter `y`.
pub struct YVar;
/// Marker for the quantum parameter `q`.
pub struct QVar;

impl VarName for YVar {
    const NAME: &'static str = "y";
}

impl VarName for QVar {
    const NAME: &'static str = "q";
}

/// `Σ_{d} c_d · v^d` for `d` in a finite range that may include negative degrees.
pub struct UPoly<C, V> {
    n: usize,
    low: i32,
    coeffs: Vec<C>,
    _v: PhantomData<fn() -> V>,
}

/// Polynomials in the spectral parameter.
pub type YPoly<C> = UPoly<C, YVar>;
/// Polynomials in the quantum parameter.
pub type QPoly<C> = UPoly<C, QVar>;

impl<C: Clone, V> Clone for UPoly<C, V> {
    fn clone(&self) -> Self {
        UPoly { n: self.n, low: self.low, coeffs: self.coeffs.clone(), _v: PhantomData }
    }
}

impl<C: Ring, V: VarName> UPoly<C, V> {
    pub fn zero(n: usize) -> Self {
        UPoly { n, low: 0, coeffs: Vec::new(), _v: PhantomData }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · v^d`.
    pub fn monomial(c: C, d: i32) -> Self {
        let n = c.nparams();
        let mut p = UPoly { n, low: d, coeffs: vec![c], _v: PhantomData };
        p.trim();
        p
    }

    /// The indeterminate itself.
    pub fn var(n: usize) -> Self {
        Self::monomial(C::one(n), 1)
    }

    /// Builds `Σ coeffs[i] · v^{low+i}`.
    pub fn from_coeffs(n: usize, low: i32, coeffs: Vec<C>) -> Self {
        let mut p = UPoly { n, low, coeffs, _v: PhantomData };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(0..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn nparams(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest degree with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i32 {
        self.low
    }

    /// Highest degree with a nonzero coefficient, or `None` for zero.
    pub fn high(&self) -> Option<i32> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i32 - 1)
        }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `v^d`.
    pub fn coeff(&self, d: i32) -> C {
        let i = d - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            C::zero(self.n)
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Iterates over `(degree, coefficient)` pairs with nonzero coefficient.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &C)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.low + i as i32, c))
    }

    pub fn map<D: Ring, W: VarName>(&self, f: impl Fn(&C) -> D) -> UPoly<D, W> {
        UPoly::from_coeffs(self.n, self.low, self.coeffs.iter().map(f).collect())
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        UPoly { n: self.n, low: self.low + k, coeffs: self.coeffs.clone(), _v: PhantomData }
    }

    /// Drops all terms of degree above `d`.
    pub fn truncate(&self, d: i32) -> Self {
        let keep = (d - self.low + 1).max(0) as usize;
        let mut c = self.coeffs.clone();
        c.truncate(keep);
        Self::from_coeffs(self.n, self.low, c)
    }

    pub fn scale_coeff(&self, c: &C) -> Self {
        Self::from_coeffs(self.n, self.low, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    /// Evaluates at `v = x`; negative degrees need `x_inv`.
    pub fn eval(&self, x: &C, x_inv: Option<&C>) -> C {
        let mut acc = C::zero(self.n);
        for (d, c) in self.iter() {
            let p = if d >= 0 {
                x.pow(d as u32)
            } else {
                x_inv.expect("negative degree needs an inverse").pow((-d) as u32)
            };
            acc = acc.add(&c.mul(&p));
        }
        acc
    }

    fn combine(&self, o: &Self, negate: bool) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg_impl() } else { o.clone() };
        }
        let low = self.low.min(o.low);
        let high = self.high().unwrap().max(o.high().unwrap());
        let mut coeffs = Vec::with_capacity((high - low + 1) as usize);
        for d in low..=high {
            let a = self.coeff(d);
            let b = o.coeff(d);
            coeffs.push(if negate { a.sub(&b) } else { a.add(&b) });
        }
        Self::from_coeffs(self.n, low, coeffs)
    }

    fn neg_impl(&self) -> Self {
        UPoly { n: self.n, low: self.low, coeffs: self.coeffs.iter().map(|c| c.neg()).collect(), _v: PhantomData }
    }

    fn mul_impl(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.n);
        }
        let len = self.coeffs.len() + o.coeffs.len() - 1;
        let mut coeffs: Vec<C> = (0..len).map(|_| C::zero(self.n)).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(self.n, self.low + o.low, coeffs)
    }

    fn fmt_with(&self, latex: bool) -> String
    where
        C: Render,
    {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (d, c) in self.iter() {
            let body = if latex { c.render_latex() } else { c.render_text() };
            let var = match d {
                0 => String::new(),
                1 => V::NAME.to_string(),
                _ => {
                    if latex {
                        format!("{}^{{{}}}", V::NAME, d)
                    } else {
                        format!("{}^{}", V::NAME, d)
                    }
                }
            };
            if var.is_empty() {
                parts.push(format!("({body})"));
            } else if body == "1" {
                parts.push(var);
            } else if latex {
                parts.push(format!("\\left({body}\\right){var}"));
            } else {
                parts.push(format!("({body})*{var}"));
            }
        }
        parts.join(" + ")
    }
}

impl<C: Ring, V: VarName> PartialEq for UPoly<C, V> {
    fn eq(&self, o: &Self) -> bool {
        self.low == o.low && self.coeffs == o.coeffs
    }
}

impl<C: Ring + Render, V: VarName> fmt::Debug for UPoly<C, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(false))
    }
}

impl<C: Ring + Render, V: VarName> fmt::Display for UPoly<C, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(false))
    }
}

impl<C: Ring + Render, V: VarName> Render for UPoly<C, V> {
    fn render_text(&self) -> String {
        self.fmt_with(false)
    }

    fn render_latex(&self) -> String {
        self.fmt_with(true)
    }
}

impl<C: Ring + Render, V: VarName> Ring for UPoly<C, V> {
    fn zero(n: usize) -> Self {
        UPoly::zero(n)
    }

    fn one(n: usize) -> Self {
        UPoly::constant(C::one(n))
    }

    fn is_zero(&self) -> bool {
        UPoly::is_zero(self)
    }

    fn nparams(&self) -> usize {
        self.n
    }

    fn add(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    fn sub(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    fn mul(&self, o: &Self) -> Self {
        self.mul_impl(o)
    }

    fn neg(&self) -> Self {
        self.neg_impl()
    }

    fn from_rat(r: &RatScalar) -> Self {
        UPoly::constant(C::from_rat(r))
    }

    fn substitute(&self, m: &ParamMap) -> Self {
        UPoly::from_coeffs(self.n, self.low, self.coeffs.iter().map(|c| c.substitute(m)).collect())
    }

    fn scale(&self, r: &RatScalar) -> Self {
        UPoly::from_coeffs(self.n, self.low, self.coeffs.iter().map(|c| c.scale(r)).collect())
    }
}

impl<C: Ring + Render> QRing for UPoly<C, QVar> {
    fn q(n: usize) -> Self {
        UPoly::var(n)
    }

    fn from_qpoly(p: &QPoly<RatScalar>) -> Self {
        p.map(|c| C::from_rat(c))
    }
}

impl<C: QRing + Render> QRing for UPoly<C, YVar> {
    fn q(n: usize) -> Self {
        UPoly::constant(C::q(n))
    }

    fn from_qpoly(p: &QPoly<RatScalar>) -> Self {
        UPoly::constant(C::from_qpoly(p))
    }
}
