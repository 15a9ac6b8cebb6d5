//! Sparse multivariate Laurent polynomials with integer coefficients.

use super::int::Int;
use super::{ParamMap, ScalarError};
use smallvec::SmallVec;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Exponent vector of a Laurent monomial.
pub type Exp = SmallVec<[i32; 8]>;

/// An element of `Z[e_1^{±1}, …, e_n^{±1}]`.
///
/// Terms are stored in strictly decreasing lexicographic order of their
/// exponent vectors, with `e_1 > e_2 > … > e_n`. No stored coefficient is
/// zero, so equal values have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentScalar {
    n: usize,
    terms: Vec<(Exp, Int)>,
}

fn zero_exp(n: usize) -> Exp {
    SmallVec::from_elem(0, n)
}

fn add_exp(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

fn sub_exp(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

impl LaurentScalar {
    pub fn zero(n: usize) -> Self {
        LaurentScalar { n, terms: Vec::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Int::one())
    }

    pub fn constant(n: usize, c: Int) -> Self {
        if c.is_zero() {
            return Self::zero(n);
        }
        LaurentScalar { n, terms: vec![(zero_exp(n), c)] }
    }

    pub fn from_i64(n: usize, c: i64) -> Self {
        Self::constant(n, Int::from(c))
    }

    /// The monomial `c · e^exp`.
    pub fn monomial(exp: Exp, c: Int) -> Self {
        let n = exp.len();
        if c.is_zero() {
            return Self::zero(n);
        }
        LaurentScalar { n, terms: vec![(exp, c)] }
    }

    /// The generator `e_i^p` (1-based index).
    pub fn var_pow(n: usize, i: usize, p: i32) -> Self {
        assert!(i >= 1 && i <= n, "parameter index {i} out of range 1..={n}");
        let mut e = zero_exp(n);
        e[i - 1] = p;
        Self::monomial(e, Int::one())
    }

    /// The generator `e_i` (1-based index).
    pub fn var(n: usize, i: usize) -> Self {
        Self::var_pow(n, i, 1)
    }

    /// Builds a canonical value from unsorted terms, merging duplicates.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Exp, Int)>) -> Self {
        let mut map: BTreeMap<Exp, Int> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent length mismatch");
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(e).or_insert_with(Int::zero);
            *entry = entry.add(&c);
        }
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        LaurentScalar { n, terms }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Exp, Int)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one() && self.terms[0].0.iter().all(|&e| e == 0)
    }

    /// Returns the constant value if the polynomial has no nonconstant terms.
    pub fn as_constant(&self) -> Option<Int> {
        match self.terms.len() {
            0 => Some(Int::zero()),
            1 if self.terms[0].0.iter().all(|&e| e == 0) => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    /// Returns `(exponent, coefficient)` if the value is a single term.
    pub fn as_monomial(&self) -> Option<(&Exp, &Int)> {
        if self.terms.len() == 1 {
            Some((&self.terms[0].0, &self.terms[0].1))
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&(Exp, Int)> {
        self.terms.first()
    }

    fn check_n(&self, o: &Self) -> Result<(), ScalarError> {
        if self.n != o.n {
            Err(ScalarError::Dimension { left: self.n, right: o.n })
        } else {
            Ok(())
        }
    }

    /// Checked ring operation; fails when the parameter counts differ.
    pub fn checked_add(&self, o: &Self) -> Result<Self, ScalarError> {
        self.check_n(o)?;
        Ok(self.add(o))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, ScalarError> {
        self.check_n(o)?;
        Ok(self.sub(o))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, ScalarError> {
        self.check_n(o)?;
        Ok(self.mul(o))
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        assert_eq!(self.n, o.n, "parameter count mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &o.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Greater => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((eb.clone(), if negate { cb.neg() } else { cb.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { ca.sub(cb) } else { ca.add(cb) };
                    if !c.is_zero() {
                        out.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (e, c) in &o.terms[j..] {
            out.push((e.clone(), if negate { c.neg() } else { c.clone() }));
        }
        LaurentScalar { n: self.n, terms: out }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    pub fn neg(&self) -> Self {
        LaurentScalar {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "parameter count mismatch");
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.n);
        }
        if let Some((e, c)) = o.as_monomial() {
            return self.mul_term(e, c);
        }
        if let Some((e, c)) = self.as_monomial() {
            return o.mul_term(e, c);
        }
        let mut map: HashMap<Exp, Int> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = add_exp(ea, eb);
                let p = ca.mul(cb);
                match map.get_mut(&e) {
                    Some(v) => *v = v.add(&p),
                    None => {
                        map.insert(e, p);
                    }
                }
            }
        }
        let mut terms: Vec<(Exp, Int)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        LaurentScalar { n: self.n, terms }
    }

    /// Multiplies by the single term `c · e^exp`.
    pub fn mul_term(&self, exp: &Exp, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        LaurentScalar {
            n: self.n,
            terms: self.terms.iter().map(|(e, d)| (add_exp(e, exp), d.mul(c))).collect(),
        }
    }

    pub fn scale_int(&self, c: &Int) -> Self {
        self.mul_term(&zero_exp(self.n), c)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.n);
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

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `c`, which must divide each of them.
    pub fn div_int_exact(&self, c: &Int) -> Result<Self, ScalarError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, d) in &self.terms {
            let (q, r) = d.div_rem(c);
            if !r.is_zero() {
                return Err(ScalarError::NotDivisible);
            }
            terms.push((e.clone(), q));
        }
        Ok(LaurentScalar { n: self.n, terms })
    }

    /// Componentwise minimum and maximum exponent of every variable.
    pub fn degree_bounds(&self) -> Option<(Exp, Exp)> {
        let first = &self.terms.first()?.0;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for (e, _) in &self.terms[1..] {
            for v in 0..self.n {
                lo[v] = lo[v].min(e[v]);
                hi[v] = hi[v].max(e[v]);
            }
        }
        Some((lo, hi))
    }

    /// Returns `c` with `b · c = self`, or a divisibility error.
    pub fn exact_div(&self, b: &Self) -> Result<Self, ScalarError> {
        self.check_n(b)?;
        if b.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.n));
        }
        if let Some((e, c)) = b.as_monomial() {
            let inv: Exp = e.iter().map(|x| -x).collect();
            return self.div_int_exact(c).map(|p| p.mul_term(&inv, &Int::one()));
        }
        let (alo, ahi) = self.degree_bounds().expect("nonzero");
        let (blo, bhi) = b.degree_bounds().expect("nonzero");
        let qlo = sub_exp(&alo, &blo);
        let qhi = sub_exp(&ahi, &bhi);
        if qlo.iter().zip(qhi.iter()).any(|(l, h)| l > h) {
            return Err(ScalarError::NotDivisible);
        }
        let (lead_e, lead_c) = b.terms[0].clone();
        let mut rem: BTreeMap<Exp, Int> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Exp, Int)> = Vec::new();
        while let Some((re, rc)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let (cq, r) = rc.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(ScalarError::NotDivisible);
            }
            let eq = sub_exp(&re, &lead_e);
            if eq.iter().zip(qlo.iter().zip(qhi.iter())).any(|(x, (l, h))| x < l || x > h) {
                return Err(ScalarError::NotDivisible);
            }
            for (be, bc) in &b.terms {
                let e = add_exp(be, &eq);
                let p = bc.mul(&cq);
                let remove = match rem.get_mut(&e) {
                    Some(v) => {
                        *v = v.sub(&p);
                        v.is_zero()
                    }
                    None => {
                        rem.insert(e.clone(), p.neg());
                        false
                    }
                };
                if remove {
                    rem.remove(&e);
                }
            }
            quot.push((eq, cq));
        }
        Ok(LaurentScalar { n: self.n, terms: quot })
    }

    /// Tests divisibility by `e_i − e_j` through the specialization `e_i = e_j`.
    pub fn vanishes_on_diagonal(&self, i: usize, j: usize) -> bool {
        let mut map: HashMap<Exp, Int> = HashMap::new();
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f[j] += f[i];
            f[i] = 0;
            let v = map.entry(f).or_insert_with(Int::zero);
            *v = v.add(c);
        }
        map.values().all(|c| c.is_zero())
    }

    /// Applies a monomial substitution of the parameters.
    pub fn substitute(&self, m: &ParamMap) -> Self {
        assert_eq!(m.len(), self.n, "parameter map size mismatch");
        let terms = self.terms.iter().map(|(e, c)| {
            let mut f = zero_exp(self.n);
            for (v, &p) in e.iter().enumerate() {
                if p != 0 {
                    let (t, s) = m.image(v);
                    f[t] += s * p;
                }
            }
            (f, c.clone())
        });
        Self::from_terms(self.n, terms.collect::<Vec<_>>())
    }

    /// Writes the polynomial as `unit · p` where `unit = c · e^m`, `p` has
    /// coprime coefficients, a positive leading coefficient and no monomial factor.
    pub fn split_unit(&self) -> (Int, Exp, Self) {
        if self.is_zero() {
            return (Int::zero(), zero_exp(self.n), self.clone());
        }
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = c.neg();
        }
        let (lo, _) = self.degree_bounds().expect("nonzero");
        let inv: Exp = lo.iter().map(|x| -x).collect();
        let p = self.div_int_exact(&c).expect("content divides").mul_term(&inv, &Int::one());
        (c, lo, p)
    }

    /// Evaluates after replacing each variable by an element of a ring.
    ///
    /// Negative exponents require the image to be supplied through `inverses`.
    pub fn eval_with<R, F>(&self, images: &[R], inverses: &[R], lift: F) -> R
    where
        R: super::Ring,
        F: Fn(&Int) -> R,
    {
        let mut acc: Option<R> = None;
        let mut cache: HashMap<(usize, i32), R> = HashMap::new();
        for (e, c) in &self.terms {
            let mut t = lift(c);
            for (v, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                let f = cache
                    .entry((v, p))
                    .or_insert_with(|| {
                        if p > 0 {
                            images[v].pow(p as u32)
                        } else {
                            inverses[v].pow((-p) as u32)
                        }
                    })
                    .clone();
                t = t.mul(&f);
            }
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t),
            });
        }
        acc.unwrap_or_else(|| lift(&Int::zero()))
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, latex: bool) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let is_const = e.iter().all(|&x| x == 0);
            if is_const {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}{}", if latex { "" } else { "*" })?;
            }
            let mut first = true;
            for (v, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                if !first && !latex {
                    write!(f, "*")?;
                }
                first = false;
                if latex {
                    write!(f, "\\varepsilon_{{{}}}", v + 1)?;
                    if p != 1 {
                        write!(f, "^{{{p}}}")?;
                    }
                } else {
                    write!(f, "e{}", v + 1)?;
                    if p != 1 {
                        write!(f, "^{p}")?;
                    }
                }
            }
        }
        Ok(())
    }

    /// LaTeX rendering.
    pub fn to_latex(&self) -> String {
        struct L<'a>(&'a LaurentScalar);
        impl fmt::Display for L<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, true)
            }
        }
        L(self).to_string()
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, false)
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
