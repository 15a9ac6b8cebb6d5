//! Exact coefficient rings: Laurent polynomials in the equivariant parameters,
//! their fractions, univariate layers in `y` and `q`, truncated `q`-series and
//! rational values with a `(1 − q)` denominator.

pub mod int;
pub mod laurent;
pub mod qkvalue;
pub mod qseries;
pub mod rat;
pub mod upoly;

pub use int::Int;
pub use laurent::{Exp, LaurentScalar};
pub use qkvalue::QKValue;
pub use qseries::QSeries;
pub use rat::RatScalar;
pub use upoly::{QPoly, UPoly, YPoly};

use std::fmt;
use thiserror::Error;

/// Failures of exact scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("parameter count mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },
    #[error("quotient is not a Laurent polynomial")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("series has no inverse: constant term is zero")]
    NonUnit,
    #[error("value is not a Laurent polynomial")]
    NotLaurent,
}

/// A monomial substitution of the parameters: `e_i ↦ e_{target(i)}^{sign(i)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamMap {
    images: Vec<(usize, i32)>,
}

impl ParamMap {
    /// Builds a substitution from 0-based `(target, ±1)` pairs.
    pub fn new(images: Vec<(usize, i32)>) -> Self {
        ParamMap { images }
    }

    pub fn identity(n: usize) -> Self {
        ParamMap { images: (0..n).map(|i| (i, 1)).collect() }
    }

    /// `e_i ↦ e_{π(i)}`, with `perm` given 1-based.
    pub fn permutation(perm: &[usize]) -> Self {
        ParamMap { images: perm.iter().map(|&p| (p - 1, 1)).collect() }
    }

    /// The transposition `e_i ↔ e_j` (1-based indices).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::identity(n);
        m.images[i - 1] = (j - 1, 1);
        m.images[j - 1] = (i - 1, 1);
        m
    }

    /// `e_i ↦ e_{n+1−i}^{-1}`.
    pub fn reverse_invert(n: usize) -> Self {
        ParamMap { images: (0..n).map(|i| (n - 1 - i, -1)).collect() }
    }

    /// The cyclic twist `χ(e_1,…,e_n) ↦ χ(e_n,e_1,…,e_{n−1})`, i.e. `e_1 ↦ e_n`
    /// and `e_i ↦ e_{i−1}` for `i > 1`.
    pub fn rotate_down(n: usize) -> Self {
        ParamMap { images: (0..n).map(|i| ((i + n - 1) % n, 1)).collect() }
    }

    /// Inverse of [`ParamMap::rotate_down`].
    pub fn rotate_up(n: usize) -> Self {
        ParamMap { images: (0..n).map(|i| ((i + 1) % n, 1)).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// 0-based image of variable `v`.
    pub fn image(&self, v: usize) -> (usize, i32) {
        self.images[v]
    }

    /// The substitution `a ∘ b`: first apply `b`, then `a`.
    pub fn compose(a: &ParamMap, b: &ParamMap) -> ParamMap {
        // Applying b sends e_v to e_{t}^{s}; applying a to that gives e_{a(t)}^{s·a_sign(t)}.
        ParamMap {
            images: b
                .images
                .iter()
                .map(|&(t, s)| {
                    let (u, r) = a.images[t];
                    (u, s * r)
                })
                .collect(),
        }
    }
}

/// A commutative ring whose scalars contain the fraction field of the
/// equivariant parameters.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero(n: usize) -> Self;
    fn one(n: usize) -> Self;
    fn is_zero(&self) -> bool;
    fn nparams(&self) -> usize;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rat(r: &RatScalar) -> Self;
    /// Applies a parameter substitution to every embedded scalar.
    fn substitute(&self, m: &ParamMap) -> Self;

    fn scale(&self, r: &RatScalar) -> Self {
        self.mul(&Self::from_rat(r))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nparams());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn add_assign(&mut self, o: &Self) {
        *self = self.add(o);
    }
}

/// A ring containing the quantum parameter `q`.
pub trait QRing: Ring {
    fn q(n: usize) -> Self;
    /// Embeds an exact Laurent polynomial in `q`.
    fn from_qpoly(p: &QPoly<RatScalar>) -> Self;
}

/// Plain text and LaTeX renderings shared by all scalar types.
pub trait Render {
    fn render_text(&self) -> String;
    fn render_latex(&self) -> String;
}
