//! Elements of `V_{k,n}` in the Schubert (spin) basis.

use crate::combinatorics::BoxPartition;
use crate::scalar::{ParamMap, RatScalar, Render, Ring};
use std::collections::BTreeMap;
use std::fmt;

/// A finite combination `Σ c_λ O_λ` over partitions in the `k × (n−k)` box.
#[derive(Clone, PartialEq)]
pub struct ModuleElement<C> {
    k: usize,
    n: usize,
    coeffs: BTreeMap<BoxPartition, C>,
}

impl<C: Ring> ModuleElement<C> {
    pub fn zero(k: usize, n: usize) -> Self {
        ModuleElement { k, n, coeffs: BTreeMap::new() }
    }

    /// `c · O_λ`.
    pub fn term(lambda: BoxPartition, c: C) -> Self {
        let mut v = Self::zero(lambda.k(), lambda.n());
        v.add_term(lambda, c);
        v
    }

    /// The basis vector `O_λ`.
    pub fn basis(lambda: &BoxPartition) -> Self {
        Self::term(lambda.clone(), C::one(lambda.n()))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BoxPartition, &C)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, lambda: &BoxPartition) -> C {
        self.coeffs.get(lambda).cloned().unwrap_or_else(|| C::zero(self.n))
    }

    /// Adds `c · O_λ` in place.
    pub fn add_term(&mut self, lambda: BoxPartition, c: C) {
        assert!(lambda.k() == self.k && lambda.n() == self.n, "partition {lambda} outside V_{{{},{}}}", self.k, self.n);
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&lambda) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.coeffs.remove(&lambda);
                }
            }
            None => {
                self.coeffs.insert(lambda, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.k, self.n), (o.k, o.n));
        let mut r = self.clone();
        for (l, c) in &o.coeffs {
            r.add_term(l.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| c.mul(s))
    }

    pub fn scale_rat(&self, s: &RatScalar) -> Self {
        self.map(|c| c.scale(s))
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        self.map_into(|c| f(c))
    }

    /// Changes the coefficient ring.
    pub fn map_into<D: Ring>(&self, f: impl Fn(&C) -> D) -> ModuleElement<D> {
        let mut r = ModuleElement::zero(self.k, self.n);
        for (l, c) in &self.coeffs {
            r.add_term(l.clone(), f(c));
        }
        r
    }

    /// Twists every coefficient by a parameter substitution.
    pub fn substitute(&self, m: &ParamMap) -> Self {
        self.map(|c| c.substitute(m))
    }

    /// Applies a map defined on basis vectors, extended linearly over `C`.
    pub fn apply_linear(&self, k_out: usize, f: impl Fn(&BoxPartition) -> ModuleElement<C>) -> ModuleElement<C> {
        let mut r = ModuleElement::zero(k_out, self.n);
        for (l, c) in &self.coeffs {
            for (m, d) in f(l).coeffs {
                r.add_term(m, d.mul(c));
            }
        }
        r
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> C {
        let mut acc = C::zero(self.n);
        for c in self.coeffs.values() {
            acc = acc.add(c);
        }
        acc
    }
}

impl<C: Ring + Render> ModuleElement<C> {
    fn fmt_with(&self, latex: bool) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(l, c)| {
                let body = if latex { c.render_latex() } else { c.render_text() };
                if latex {
                    let label = if l.is_empty() {
                        "\\emptyset".to_string()
                    } else {
                        l.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
                    };
                    format!("\\left({body}\\right)\\mathcal{{O}}_{{{label}}}")
                } else {
                    format!("({body})*O{l}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl<C: Ring + Render> Render for ModuleElement<C> {
    fn render_text(&self) -> String {
        self.fmt_with(false)
    }

    fn render_latex(&self) -> String {
        self.fmt_with(true)
    }
}

impl<C: Ring + Render> fmt::Debug for ModuleElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[Gr({},{})] {}", self.k, self.n, self.fmt_with(false))
    }
}

impl<C: Ring + Render> fmt::Display for ModuleElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(false))
    }
}
