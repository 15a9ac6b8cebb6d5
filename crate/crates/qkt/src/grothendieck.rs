//! Double Grothendieck polynomials of Grassmannian permutations, the column
//! closed formula, and reduction of symmetric polynomials to elementary ones.
//!
//! Polynomials are stored as sparse maps from `x`-exponent vectors to
//! coefficients in a scalar ring.  The symbolic polynomial `G_λ(x|t)` keeps
//! `t_1, …, t_n` as the parameters of its [`RatScalar`] coefficients; the
//! geometric substitutions are applied afterwards by evaluation.

use crate::combinatorics::BoxPartition;
use crate::scalar::{Exp, Int, LaurentScalar, RatScalar, Ring};
use smallvec::SmallVec;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrothError {
    #[error("polynomial is not symmetric under x{0} <-> x{1}")]
    NotSymmetric(usize, usize),
    #[error("closed formula left a denominator: {0}")]
    Denominator(String),
}

pub type XExp = SmallVec<[u16; 8]>;

/// A polynomial in `x_1 … x_{nx}` with coefficients in `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct XPoly<C> {
    nx: usize,
    n: usize,
    terms: BTreeMap<XExp, C>,
}

/// Symmetric polynomials in the Chern-root variables over the parameter field.
pub type SymPoly = XPoly<RatScalar>;

impl<C: Ring> XPoly<C> {
    pub fn zero(nx: usize, n: usize) -> Self {
        XPoly { nx, n, terms: BTreeMap::new() }
    }

    pub fn constant(nx: usize, c: C) -> Self {
        let n = c.nparams();
        let mut p = Self::zero(nx, n);
        if !c.is_zero() {
            p.terms.insert(SmallVec::from_elem(0, nx), c);
        }
        p
    }

    pub fn one(nx: usize, n: usize) -> Self {
        Self::constant(nx, C::one(n))
    }

    /// The variable `x_i` (1-based).
    pub fn var(nx: usize, n: usize, i: usize) -> Self {
        let mut e: XExp = SmallVec::from_elem(0, nx);
        e[i - 1] = 1;
        Self::monomial(nx, e, C::one(n))
    }

    pub fn monomial(nx: usize, e: XExp, c: C) -> Self {
        let n = c.nparams();
        let mut p = Self::zero(nx, n);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn nparams(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<XExp, C> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u16]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(|| C::zero(self.n))
    }

    fn accumulate(&mut self, e: XExp, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.accumulate(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.accumulate(e.clone(), c.neg());
        }
        r
    }

    pub fn neg(&self) -> Self {
        XPoly { nx: self.nx, n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.nx, self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let e: XExp = a.iter().zip(b).map(|(x, y)| x + y).collect();
                r.accumulate(e, ca.mul(cb));
            }
        }
        r
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut r = Self::zero(self.nx, self.n);
        for (e, v) in &self.terms {
            r.accumulate(e.clone(), v.mul(c));
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nx, self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map_coeffs<D: Ring>(&self, n: usize, f: impl Fn(&C) -> D) -> XPoly<D> {
        let mut r = XPoly::zero(self.nx, n);
        for (e, c) in &self.terms {
            r.accumulate(e.clone(), f(c));
        }
        r
    }

    /// Exchanges `x_i` and `x_{i+1}` (1-based `i`).
    pub fn swap_vars(&self, i: usize) -> Self {
        let mut r = Self::zero(self.nx, self.n);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f.swap(i - 1, i);
            r.accumulate(f, c.clone());
        }
        r
    }

    /// Checks invariance under every adjacent transposition.
    pub fn check_symmetric(&self) -> Result<(), GrothError> {
        for i in 1..self.nx {
            if self.swap_vars(i) != *self {
                return Err(GrothError::NotSymmetric(i, i + 1));
            }
        }
        Ok(())
    }

    /// `∂_i f = (f − s_i f)/(x_i − x_{i+1})`, computed monomial by monomial.
    pub fn divided_difference(&self, i: usize) -> Self {
        let mut r = Self::zero(self.nx, self.n);
        for (e, c) in &self.terms {
            for (f, sign) in dd_monomial(e[i - 1] as i32, e[i] as i32) {
                let mut g = e.clone();
                g[i - 1] = f.0 as u16;
                g[i] = f.1 as u16;
                r.accumulate(g, if sign { c.clone() } else { c.neg() });
            }
        }
        r
    }

    /// `π_i f = ∂_i((1 − x_{i+1}) f)`.
    pub fn isobaric(&self, i: usize) -> Self {
        let one_minus = Self::one(self.nx, self.n).sub(&Self::var(self.nx, self.n, i + 1));
        one_minus.mul(self).divided_difference(i)
    }

    /// Evaluates at `x_i ↦ xs[i]`, mapping coefficients with `lift`.
    pub fn eval<R: Ring>(&self, xs: &[R], lift: impl Fn(&C) -> R) -> R {
        let m = xs.first().map(|x| x.nparams()).unwrap_or(self.n);
        let mut cache: HashMap<(usize, u16), R> = HashMap::new();
        let mut acc = R::zero(m);
        for (e, c) in &self.terms {
            let mut t = lift(c);
            for (v, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                let f = cache.entry((v, p)).or_insert_with(|| xs[v].pow(p as u32)).clone();
                t = t.mul(&f);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes `x_i ↦ 1 − x_i`.
    pub fn reflect(&self) -> Self {
        let xs: Vec<XPoly<C>> =
            (1..=self.nx).map(|i| Self::one(self.nx, self.n).sub(&Self::var(self.nx, self.n, i))).collect();
        let mut acc = Self::zero(self.nx, self.n);
        for (e, c) in &self.terms {
            let mut t = Self::constant(self.nx, c.clone());
            for (v, &p) in e.iter().enumerate() {
                if p > 0 {
                    t = t.mul(&xs[v].pow(p as u32));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Elementary symmetric polynomial `e_j(x_1, …, x_{nx})`.
    pub fn elementary(nx: usize, n: usize, j: usize) -> Self {
        let mut r = Self::zero(nx, n);
        for mask in 0u32..(1 << nx) {
            if mask.count_ones() as usize == j {
                let e: XExp = (0..nx).map(|v| ((mask >> v) & 1) as u16).collect();
                r.accumulate(e, C::one(n));
            }
        }
        r
    }
}

/// Terms of `∂(x^p y^r)` as `((a, b), positive?)`.
fn dd_monomial(p: i32, r: i32) -> Vec<((i32, i32), bool)> {
    if p == r {
        return Vec::new();
    }
    let (lo, hi, sign) = if p > r { (r, p, true) } else { (p, r, false) };
    (0..hi - lo).map(|a| ((lo + a, hi - 1 - a), sign)).collect()
}

/// A polynomial in abstract generators `g_1 … g_k`.
pub type GPoly<C> = BTreeMap<XExp, C>;

/// Rewrites a symmetric polynomial in the elementary symmetric polynomials.
pub fn elementary_expansion<C: Ring>(p: &XPoly<C>) -> Result<GPoly<C>, GrothError> {
    p.check_symmetric()?;
    let k = p.nx;
    let n = p.n;
    let es: Vec<XPoly<C>> = (1..=k).map(|j| XPoly::elementary(k, n, j)).collect();
    let mut rest = p.clone();
    let mut out: GPoly<C> = BTreeMap::new();
    while let Some((lead, c)) = rest.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        // Lex-leading exponent of a symmetric polynomial is a partition.
        let mut g: XExp = SmallVec::from_elem(0, k);
        let mut term = XPoly::constant(k, c.clone());
        for j in 0..k {
            let next = if j + 1 < k { lead[j + 1] } else { 0 };
            let m = lead[j] - next;
            g[j] = m;
            if m > 0 {
                term = term.mul(&es[j].pow(m as u32));
            }
        }
        rest = rest.sub(&term);
        let entry = out.entry(g).or_insert_with(|| C::zero(n));
        *entry = entry.add(&c);
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Substitutes `g_j ↦ e_j(x)` back.
pub fn elementary_collapse<C: Ring>(g: &GPoly<C>, k: usize, n: usize) -> XPoly<C> {
    let es: Vec<XPoly<C>> = (1..=k).map(|j| XPoly::elementary(k, n, j)).collect();
    let mut acc = XPoly::zero(k, n);
    for (m, c) in g {
        let mut t = XPoly::constant(k, c.clone());
        for (j, &p) in m.iter().enumerate() {
            if p > 0 {
                t = t.mul(&es[j].pow(p as u32));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// `∂` on the parameters `t_i, t_{i+1}` of a Laurent coefficient.
fn dd_param(a: &LaurentScalar, i: usize) -> LaurentScalar {
    let n = a.nvars();
    let mut out: Vec<(Exp, Int)> = Vec::new();
    for (e, c) in a.terms() {
        for ((x, y), sign) in dd_monomial(e[i - 1], e[i]) {
            let mut f = e.clone();
            f[i - 1] = x;
            f[i] = y;
            out.push((f, if sign { c.clone() } else { c.neg() }));
        }
    }
    LaurentScalar::from_terms(n, out)
}

/// `π_i` acting on the `t` parameters of every coefficient.
fn isobaric_param(p: &XPoly<RatScalar>, i: usize) -> XPoly<RatScalar> {
    let n = p.n;
    let one_minus = LaurentScalar::one(n).sub(&LaurentScalar::var(n, i + 1));
    p.map_coeffs(n, |c| {
        let num = c.to_laurent().expect("symbolic Grothendieck coefficients are polynomial");
        RatScalar::from_laurent(dd_param(&one_minus.mul(&num), i))
    })
}

/// `x_i ⊕ t_j = x_i + t_j − x_i t_j` in `k` variables with `n` parameters.
fn oplus(k: usize, n: usize, i: usize, t: &RatScalar) -> XPoly<RatScalar> {
    let x = XPoly::var(k, n, i);
    let tc = XPoly::constant(k, t.clone());
    x.add(&tc).sub(&x.scale(t))
}

type Memo = RwLock<HashMap<(usize, usize, Vec<usize>), Arc<XPoly<RatScalar>>>>;

fn memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `G_λ(x_1, …, x_k | t_1, …, t_n)`, the double Grothendieck polynomial of `w_λ`.
///
/// The full rectangle is dominant, so its polynomial is the product of
/// `x_i ⊕ t_j` over its cells.  Removing an outer corner of `μ` moves `w_μ`
/// down by a left multiplication `s_i`, which acts by the isobaric operator
/// `π_i` in the `t` variables.
pub fn groth_double(lambda: &BoxPartition) -> Arc<XPoly<RatScalar>> {
    let key = (lambda.k(), lambda.n(), lambda.parts());
    if let Some(v) = memo().read().unwrap().get(&key) {
        return v.clone();
    }
    let (k, n) = (lambda.k(), lambda.n());
    let value = if *lambda == BoxPartition::full(k, n) {
        let mut acc = XPoly::one(k, n);
        for i in 1..=k {
            for j in 1..=n - k {
                acc = acc.mul(&oplus(k, n, i, &RatScalar::var(n, j)));
            }
        }
        acc
    } else {
        // An addable cell: letters j_i = 0, j_{i+1} = 1.
        let w = lambda.to_word();
        let i = (1..n).find(|&i| w.bit(i) == 0 && w.bit(i + 1) == 1).expect("non-full partition has an addable cell");
        let mu = lambda.swap_letters(i).unwrap();
        isobaric_param(&groth_double(&mu), i)
    };
    let value = Arc::new(value);
    memo().write().unwrap().entry(key).or_insert_with(|| value.clone()).clone()
}

/// Substitutes values for the `t` parameters of a symbolic polynomial.
pub fn specialize_t<R: Ring>(g: &XPoly<RatScalar>, ts: &[R]) -> XPoly<R> {
    let m = ts[0].nparams();
    g.map_coeffs(m, |c| {
        let num = c.to_laurent().expect("polynomial coefficient");
        num.eval_with(ts, ts, |z| R::from_rat(&RatScalar::from_laurent(LaurentScalar::constant(m, z.clone()))))
    })
}

/// The values `t_j = 1 − ε_j^{-1}`.
pub fn natural_t(n: usize) -> Vec<RatScalar> {
    (1..=n).map(|j| RatScalar::one(n).sub(&RatScalar::var_pow(n, j, -1))).collect()
}

/// The values `t_j = 1 − ε_{n+1−j}^{-1}`.
pub fn reversed_t(n: usize) -> Vec<RatScalar> {
    (1..=n).map(|j| RatScalar::one(n).sub(&RatScalar::var_pow(n, n + 1 - j, -1))).collect()
}

type ClassMemo = RwLock<HashMap<(usize, usize, Vec<usize>), Arc<SymPoly>>>;

fn class_memo() -> &'static ClassMemo {
    static M: OnceLock<ClassMemo> = OnceLock::new();
    M.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `O_λ = G_λ(1 − X_1, …, 1 − X_k | 1 − ε_1^{-1}, …, 1 − ε_n^{-1})` as a
/// polynomial in the Chern roots `X_i` of the tautological bundle.
pub fn schubert_polynomial(lambda: &BoxPartition) -> Arc<SymPoly> {
    let key = (lambda.k(), lambda.n(), lambda.parts());
    if let Some(v) = class_memo().read().unwrap().get(&key) {
        return v.clone();
    }
    let v = Arc::new(specialize_t(&groth_double(lambda), &natural_t(lambda.n())).reflect());
    class_memo().write().unwrap().entry(key).or_insert_with(|| v.clone()).clone()
}

/// The closed formula for a column `1^r` in `N` variables,
/// `Σ_{j ≤ N+1−r} ∏_i (x_i ⊕ t_j) / ∏_{i ≠ j} (t_j − t_i)/(1 − t_i)`,
/// with `t_j` the `j`-th of `n ≥ N` parameters.
pub fn groth_column(r: usize, nvars: usize, n: usize) -> Result<XPoly<RatScalar>, GrothError> {
    assert!(r <= nvars && nvars <= n);
    if r == 0 {
        return Ok(XPoly::one(nvars, n));
    }
    let t = |j: usize| RatScalar::var(n, j);
    let m = nvars + 1 - r;
    let mut acc = XPoly::zero(nvars, n);
    for j in 1..=m {
        let mut num = XPoly::one(nvars, n);
        for i in 1..=nvars {
            num = num.mul(&oplus(nvars, n, i, &t(j)));
        }
        let mut den = RatScalar::one(n);
        for i in (1..=m).filter(|&i| i != j) {
            let f = t(j).sub(&t(i)).div(&RatScalar::one(n).sub(&t(i))).expect("nonzero");
            den = den.mul(&f);
        }
        acc = acc.add(&num.scale(&den.inv().expect("nonzero")));
    }
    for c in acc.terms.values() {
        if !c.is_laurent() {
            return Err(GrothError::Denominator(format!("{c:?}")));
        }
    }
    Ok(acc)
}
