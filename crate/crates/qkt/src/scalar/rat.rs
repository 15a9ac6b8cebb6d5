//! Fractions of Laurent polynomials with a factored denominator.

use super::int::Int;
use super::laurent::{Exp, LaurentScalar};
use super::{ParamMap, Render, Ring, ScalarError};
use std::fmt;

/// An element of the fraction field of `Z[e_1^{±1}, …, e_n^{±1}]`.
///
/// The value is `num / (den_int · ∏ atom^exp)`. Every atom is a polynomial
/// with coprime coefficients, a positive leading coefficient and no monomial
/// factor; monomials are units and live in the numerator. Binomials
/// `e_i − e_j` are split off first, so for all denominators met in practice
/// the atoms are irreducible and the representation is canonical.
#[derive(Clone)]
pub struct RatScalar {
    num: LaurentScalar,
    den_int: Int,
    den: Vec<(LaurentScalar, u32)>,
}

fn binomial(n: usize, i: usize, j: usize) -> LaurentScalar {
    LaurentScalar::var(n, i + 1).sub(&LaurentScalar::var(n, j + 1))
}

/// Factors a nonzero polynomial into `c · e^m · ∏ atoms`.
fn factor(p: &LaurentScalar) -> (Int, Exp, Vec<(LaurentScalar, u32)>) {
    let n = p.nvars();
    let (c, m, mut rest) = p.split_unit();
    let mut atoms = Vec::new();
    if rest.len() > 1 {
        for i in 0..n {
            for j in (i + 1)..n {
                let mut e = 0;
                while rest.len() > 1 && rest.vanishes_on_diagonal(i, j) {
                    rest = rest.exact_div(&binomial(n, i, j)).expect("diagonal vanishing implies divisibility");
                    e += 1;
                }
                if e > 0 {
                    atoms.push((binomial(n, i, j), e));
                }
            }
        }
    }
    if rest.len() > 1 {
        atoms.push((rest, 1));
    }
    (c, m, atoms)
}

fn merge_atoms(a: &[(LaurentScalar, u32)], b: &[(LaurentScalar, u32)]) -> Vec<(LaurentScalar, u32)> {
    let mut out: Vec<(LaurentScalar, u32)> = a.to_vec();
    for (p, e) in b {
        match out.iter_mut().find(|(q, _)| q == p) {
            Some(slot) => slot.1 += e,
            None => out.push((p.clone(), *e)),
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

fn lcm_int(a: &Int, b: &Int) -> Int {
    let g = a.gcd(b);
    a.div_rem(&g).0.mul(b)
}

impl RatScalar {
    pub fn zero(n: usize) -> Self {
        Self::from_laurent(LaurentScalar::zero(n))
    }

    pub fn one(n: usize) -> Self {
        Self::from_laurent(LaurentScalar::one(n))
    }

    pub fn from_i64(n: usize, c: i64) -> Self {
        Self::from_laurent(LaurentScalar::from_i64(n, c))
    }

    pub fn from_laurent(p: LaurentScalar) -> Self {
        RatScalar { num: p, den_int: Int::one(), den: Vec::new() }
    }

    /// `e_i^p` as a fraction (1-based index).
    pub fn var_pow(n: usize, i: usize, p: i32) -> Self {
        Self::from_laurent(LaurentScalar::var_pow(n, i, p))
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::var_pow(n, i, 1)
    }

    pub fn nparams(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.den_int.is_one() && self.num.is_one()
    }

    pub fn numerator(&self) -> &LaurentScalar {
        &self.num
    }

    pub fn denominator_int(&self) -> &Int {
        &self.den_int
    }

    pub fn denominator_atoms(&self) -> &[(LaurentScalar, u32)] {
        &self.den
    }

    /// The expanded denominator.
    pub fn denominator(&self) -> LaurentScalar {
        let n = self.nparams();
        let mut d = LaurentScalar::constant(n, self.den_int.clone());
        for (p, e) in &self.den {
            d = d.mul(&p.pow(*e));
        }
        d
    }

    /// Builds `num / den` for an arbitrary nonzero Laurent polynomial `den`.
    pub fn from_fraction(num: LaurentScalar, den: &LaurentScalar) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (c, m, atoms) = factor(den);
        let inv: Exp = m.iter().map(|x| -x).collect();
        let mut num = num.mul_term(&inv, &Int::one());
        let mut den_int = c;
        if den_int.is_negative() {
            den_int = den_int.neg();
            num = num.neg();
        }
        let mut r = RatScalar { num, den_int, den: atoms };
        r.den.sort_by(|x, y| x.0.cmp(&y.0));
        r.reduce();
        Ok(r)
    }

    /// Returns the Laurent polynomial if the denominator is trivial.
    pub fn to_laurent(&self) -> Result<LaurentScalar, ScalarError> {
        if self.den.is_empty() && self.den_int.is_one() {
            Ok(self.num.clone())
        } else {
            Err(ScalarError::NotLaurent)
        }
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_empty() && self.den_int.is_one()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            self.den_int = Int::one();
            return;
        }
        let mut kept = Vec::with_capacity(self.den.len());
        for (atom, mut e) in std::mem::take(&mut self.den) {
            let binom = atom.len() == 2
                && atom.terms()[0].1.is_one()
                && atom.terms()[1].1 == Int::from(-1)
                && atom.terms().iter().all(|(x, _)| x.iter().filter(|&&v| v != 0).count() == 1 && x.iter().any(|&v| v == 1));
            while e > 0 {
                if binom {
                    let idx: Vec<usize> = atom.terms().iter().map(|(x, _)| x.iter().position(|&v| v != 0).unwrap()).collect();
                    if !self.num.vanishes_on_diagonal(idx[0], idx[1]) {
                        break;
                    }
                }
                match self.num.exact_div(&atom) {
                    Ok(q) => {
                        self.num = q;
                        e -= 1;
                    }
                    Err(_) => break,
                }
            }
            if e > 0 {
                kept.push((atom, e));
            }
        }
        self.den = kept;
        if !self.den_int.is_one() {
            let g = self.num.content().gcd(&self.den_int);
            if !g.is_one() {
                self.num = self.num.div_int_exact(&g).expect("gcd divides");
                self.den_int = self.den_int.div_rem(&g).0;
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    fn combine(&self, o: &Self, negate: bool) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        if self.den == o.den && self.den_int == o.den_int {
            let num = if negate { self.num.sub(&o.num) } else { self.num.add(&o.num) };
            let mut r = RatScalar { num, den_int: self.den_int.clone(), den: self.den.clone() };
            r.reduce();
            return r;
        }
        let n = self.nparams();
        let mut lcm: Vec<(LaurentScalar, u32)> = self.den.clone();
        for (p, e) in &o.den {
            match lcm.iter_mut().find(|(q, _)| q == p) {
                Some(slot) => slot.1 = slot.1.max(*e),
                None => lcm.push((p.clone(), *e)),
            }
        }
        lcm.sort_by(|x, y| x.0.cmp(&y.0));
        let scale_for = |den: &[(LaurentScalar, u32)]| -> LaurentScalar {
            let mut s = LaurentScalar::one(n);
            for (p, e) in &lcm {
                let have = den.iter().find(|(q, _)| q == p).map(|x| x.1).unwrap_or(0);
                if *e > have {
                    s = s.mul(&p.pow(e - have));
                }
            }
            s
        };
        let d = lcm_int(&self.den_int, &o.den_int);
        let a = self.num.mul(&scale_for(&self.den)).scale_int(&d.div_rem(&self.den_int).0);
        let b = o.num.mul(&scale_for(&o.den)).scale_int(&d.div_rem(&o.den_int).0);
        let num = if negate { a.sub(&b) } else { a.add(&b) };
        let mut r = RatScalar { num, den_int: d, den: lcm };
        r.reduce();
        r
    }

    pub fn neg(&self) -> Self {
        RatScalar { num: self.num.neg(), den_int: self.den_int.clone(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nparams());
        }
        if o.is_laurent() {
            if let Some((e, c)) = o.num.as_monomial() {
                let mut r = RatScalar { num: self.num.mul_term(e, c), den_int: self.den_int.clone(), den: self.den.clone() };
                if !r.den_int.is_one() {
                    r.reduce();
                }
                return r;
            }
        }
        let mut r = RatScalar {
            num: self.num.mul(&o.num),
            den_int: self.den_int.mul(&o.den_int),
            den: merge_atoms(&self.den, &o.den),
        };
        r.reduce();
        r
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.nparams();
        let mut num = LaurentScalar::constant(n, self.den_int.clone());
        for (p, e) in &self.den {
            num = num.mul(&p.pow(*e));
        }
        RatScalar::from_fraction(num, &self.num)
    }

    pub fn div(&self, o: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow_i(&self, e: i32) -> Result<Self, ScalarError> {
        if e >= 0 {
            Ok(Ring::pow(self, e as u32))
        } else {
            Ok(Ring::pow(&self.inv()?, (-e) as u32))
        }
    }

    pub fn substitute(&self, m: &ParamMap) -> Self {
        let mut num = self.num.substitute(m);
        let mut den = Vec::with_capacity(self.den.len());
        for (p, e) in &self.den {
            let (c, mon, atoms) = factor(&p.substitute(m));
            // The substituted atom equals c·e^mon·∏atoms, and c is ±1 for monomial substitutions.
            let inv: Exp = mon.iter().map(|x| -x * (*e as i32)).collect();
            let sign = if c.is_negative() && e % 2 == 1 { Int::from(-1) } else { Int::one() };
            num = num.mul_term(&inv, &sign);
            for (a, f) in atoms {
                den.push((a, f * e));
            }
        }
        let den = merge_atoms(&[], &den);
        let mut r = RatScalar { num, den_int: self.den_int.clone(), den };
        r.reduce();
        r
    }

    /// Evaluates a polynomial in one auxiliary variable given by its coefficients.
    pub fn horner(coeffs: &[RatScalar], x: &RatScalar) -> RatScalar {
        let n = x.nparams();
        let mut acc = RatScalar::zero(n);
        for c in coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    fn fmt_with(&self, latex: bool) -> String {
        let numer = if latex { self.num.to_latex() } else { self.num.to_string() };
        if self.is_laurent() {
            return numer;
        }
        let mut parts: Vec<String> = Vec::new();
        if !self.den_int.is_one() {
            parts.push(self.den_int.to_string());
        }
        for (p, e) in &self.den {
            let body = if latex { p.to_latex() } else { p.to_string() };
            let mut s = format!("({body})");
            if *e != 1 {
                s = if latex { format!("{s}^{{{e}}}") } else { format!("{s}^{e}") };
            }
            parts.push(s);
        }
        if latex {
            format!("\\frac{{{}}}{{{}}}", numer, parts.join(""))
        } else {
            format!("({})/({})", numer, parts.join("*"))
        }
    }
}

impl PartialEq for RatScalar {
    fn eq(&self, o: &Self) -> bool {
        if self.den == o.den && self.den_int == o.den_int {
            return self.num == o.num;
        }
        self.sub(o).is_zero()
    }
}

impl Eq for RatScalar {}

impl fmt::Display for RatScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(false))
    }
}

impl fmt::Debug for RatScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(false))
    }
}

impl Render for RatScalar {
    fn render_text(&self) -> String {
        self.fmt_with(false)
    }

    fn render_latex(&self) -> String {
        self.fmt_with(true)
    }
}

impl Ring for RatScalar {
    fn zero(n: usize) -> Self {
        RatScalar::zero(n)
    }

    fn one(n: usize) -> Self {
        RatScalar::one(n)
    }

    fn is_zero(&self) -> bool {
        RatScalar::is_zero(self)
    }

    fn nparams(&self) -> usize {
        RatScalar::nparams(self)
    }

    fn add(&self, o: &Self) -> Self {
        RatScalar::add(self, o)
    }

    fn sub(&self, o: &Self) -> Self {
        RatScalar::sub(self, o)
    }

    fn mul(&self, o: &Self) -> Self {
        RatScalar::mul(self, o)
    }

    fn neg(&self) -> Self {
        RatScalar::neg(self)
    }

    fn from_rat(r: &RatScalar) -> Self {
        r.clone()
    }

    fn substitute(&self, m: &ParamMap) -> Self {
        RatScalar::substitute(self, m)
    }
}

impl From<LaurentScalar> for RatScalar {
    fn from(p: LaurentScalar) -> Self {
        RatScalar::from_laurent(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> RatScalar {
        RatScalar::var(n, i)
    }

    #[test]
    fn self_division_is_one() {
        let a = e(3, 1).sub(&e(3, 2)).mul(&e(3, 3).add(&RatScalar::one(3)));
        assert!(a.div(&a).unwrap().is_one());
    }

    #[test]
    fn sum_of_euler_inverses_is_one() {
        // 1/(1 − e1/e2) + 1/(1 − e2/e1) = 1
        let one = RatScalar::one(2);
        let a = e(2, 1).div(&e(2, 2)).unwrap();
        let s = one.sub(&a).inv().unwrap().add(&one.sub(&a.inv().unwrap()).inv().unwrap());
        assert!(s.is_one());
        assert!(s.is_laurent());
    }

    #[test]
    fn cancellation_restores_laurent() {
        let a = e(2, 1).sub(&e(2, 2));
        let b = a.mul(&a).mul(&e(2, 1));
        let q = b.div(&a).unwrap();
        assert_eq!(q.to_laurent().unwrap(), a.mul(&e(2, 1)).to_laurent().unwrap());
    }

    #[test]
    fn integer_denominators_reduce() {
        let half = RatScalar::from_i64(1, 2).inv().unwrap();
        let two = RatScalar::from_i64(1, 2);
        assert!(half.mul(&two).is_one());
        let x = RatScalar::from_i64(1, 4).div(&RatScalar::from_i64(1, 6)).unwrap();
        assert_eq!(x.denominator_int(), &Int::from(3));
    }

    #[test]
    fn reverse_invert_twist_of_fraction() {
        let n = 2;
        let f = RatScalar::one(n).div(&e(n, 1).sub(&e(n, 2))).unwrap();
        let g = f.substitute(&ParamMap::reverse_invert(n));
        // 1/(e2^{-1} − e1^{-1}) = e1 e2/(e1 − e2)
        let expect = e(n, 1).mul(&e(n, 2)).div(&e(n, 1).sub(&e(n, 2))).unwrap();
        assert_eq!(g, expect);
        assert_eq!(g.substitute(&ParamMap::reverse_invert(n)), f);
    }

    #[test]
    fn generic_atom_denominator() {
        let n = 2;
        let d = e(n, 1).mul(&e(n, 1)).add(&e(n, 2)).add(&RatScalar::one(n));
        let f = RatScalar::one(n).div(&d).unwrap();
        assert!(f.mul(&d).is_one());
    }
}
