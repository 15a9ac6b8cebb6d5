//! The left Weyl group action, Demazure operators and the extended affine
//! Weyl group on `⊕_k V_{k,n}`.
//!
//! With `α_i = ε_i/ε_{i+1}`, the simple reflection acts by
//! `ŝ_i(f v_J) = χ^{s_i}(f)(α_i v_J + (1−α_i) v_{s_iJ})` when `j_i = 1`,
//! `j_{i+1} = 0`, and by `ŝ_i(f v_J) = χ^{s_i}(f) v_J` otherwise.  The Seidel
//! element rotates the word to the left, picking up `q` when a one wraps
//! around, and twists scalars by `χ(ε_1,…,ε_n) ↦ χ(ε_n,ε_1,…,ε_{n−1})`.

use crate::combinatorics::{BitWord, BoxPartition};
use crate::module::ModuleElement;
use crate::scalar::{ParamMap, QPoly, QRing, RatScalar, Ring};
use crate::vertex::{dual_transfer, transfer};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Direction of an invertible generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Fwd,
    Inv,
}

fn alpha(n: usize, i: usize) -> RatScalar {
    RatScalar::var(n, i).mul(&RatScalar::var_pow(n, i + 1, -1))
}

fn q_power<C: QRing>(n: usize, d: i32) -> C {
    C::from_qpoly(&QPoly::monomial(RatScalar::one(n), d))
}

/// `ŝ_i v` for `1 ≤ i < n`.
pub fn apply_simple<C: Ring>(i: usize, v: &ModuleElement<C>) -> ModuleElement<C> {
    let (k, n) = (v.k(), v.n());
    assert!(1 <= i && i < n, "simple reflection s_{i} outside 1..{n}");
    let twist = ParamMap::transposition(n, i, i + 1);
    let a = C::from_rat(&alpha(n, i));
    let one_minus_a = C::one(n).sub(&a);
    let mut r = ModuleElement::zero(k, n);
    for (lam, c) in v.iter() {
        let c = c.substitute(&twist);
        let w = lam.to_word();
        if w.bit(i) == 1 && w.bit(i + 1) == 0 {
            r.add_term(lam.clone(), c.mul(&a));
            r.add_term(BoxPartition::from_word(&w.swap(i)), c.mul(&one_minus_a));
        } else {
            r.add_term(lam.clone(), c);
        }
    }
    r
}

/// `δ_i v = (v − α_i^{-1} ŝ_i v)/(1 − α_i^{-1})`.  The division happens in the
/// fraction field of the equivariant parameters.
pub fn apply_demazure<C: Ring>(i: usize, v: &ModuleElement<C>) -> ModuleElement<C> {
    let n = v.n();
    let a_inv = alpha(n, i).inv().expect("α_i is a unit");
    let den = RatScalar::one(n).sub(&a_inv).inv().expect("1 − α_i^{-1} is nonzero");
    v.sub(&apply_simple(i, v).scale_rat(&a_inv)).scale_rat(&den)
}

/// `ŝ_w v` for a permutation `w` in one-line notation.
pub fn apply_weyl<C: Ring>(w: &[usize], v: &ModuleElement<C>) -> ModuleElement<C> {
    let mut r = v.clone();
    for &i in reduced_word(w).iter().rev() {
        r = apply_simple(i, &r);
    }
    r
}

/// A reduced word `[i_1, …, i_l]` with `w = s_{i_1} ⋯ s_{i_l}`.
pub fn reduced_word(w: &[usize]) -> Vec<usize> {
    let mut w = w.to_vec();
    let mut tail = Vec::new();
    while let Some(i) = (1..w.len()).find(|&i| w[i - 1] > w[i]) {
        w.swap(i - 1, i);
        tail.push(i);
    }
    tail.reverse();
    tail
}

/// The longest permutation `w_0 = (n, n−1, …, 1)`.
pub fn longest_element(n: usize) -> Vec<usize> {
    (1..=n).rev().collect()
}

/// The Seidel element `ρ` or its inverse.
pub fn apply_rho<C: QRing>(v: &ModuleElement<C>, direction: Direction) -> ModuleElement<C> {
    let (k, n) = (v.k(), v.n());
    let (twist, rotate, edge, dq): (ParamMap, fn(&BitWord) -> BitWord, usize, i32) = match direction {
        Direction::Fwd => (ParamMap::rotate_down(n), BitWord::rotate_left, 1, 1),
        Direction::Inv => (ParamMap::rotate_up(n), BitWord::rotate_right, n, -1),
    };
    let qf: C = q_power(n, dq);
    let mut r = ModuleElement::zero(k, n);
    for (lam, c) in v.iter() {
        let w = lam.to_word();
        let mut c = c.substitute(&twist);
        if w.bit(edge) == 1 {
            c = c.mul(&qf);
        }
        r.add_term(BoxPartition::from_word(&rotate(&w)), c);
    }
    r
}

/// The affine reflection `s_0 = ρ ŝ_1 ρ^{-1}`, acting on the letters `j_n, j_1`
/// with `α_0 = ε_n/ε_1`.
pub fn apply_s0<C: QRing>(v: &ModuleElement<C>) -> ModuleElement<C> {
    let (k, n) = (v.k(), v.n());
    assert!(n >= 2, "s_0 needs n ≥ 2");
    let twist = ParamMap::transposition(n, 1, n);
    let a = C::from_rat(&RatScalar::var(n, n).mul(&RatScalar::var_pow(n, 1, -1)));
    let q_inv: C = q_power(n, -1);
    let mut r = ModuleElement::zero(k, n);
    for (lam, c) in v.iter() {
        let c = c.substitute(&twist);
        let w = lam.to_word();
        if w.bit(n) == 1 && w.bit(1) == 0 {
            let mut bits = w.bits().to_vec();
            bits.swap(0, n - 1);
            r.add_term(lam.clone(), c.mul(&a));
            r.add_term(BoxPartition::from_word(&BitWord::new(bits).unwrap()), c.mul(&C::one(n).sub(&a)).mul(&q_inv));
        } else {
            r.add_term(lam.clone(), c);
        }
    }
    r
}

/// The translation `𝐭_i = t(−ε_i)` or `𝐭_i^{-1} = q^{-1} t̃(−1/ε_i)`.
pub fn apply_translation<C: QRing>(i: usize, v: &ModuleElement<C>, direction: Direction) -> ModuleElement<C> {
    let n = v.n();
    assert!(1 <= i && i <= n, "translation t_{i} outside 1..{n}");
    match direction {
        Direction::Fwd => transfer(&C::from_rat(&RatScalar::var(n, i).neg()), v),
        Direction::Inv => {
            let y = C::from_rat(&RatScalar::var_pow(n, i, -1).neg());
            dual_transfer(&y, v).scale(&q_power(n, -1))
        }
    }
}

/// Errors from parsing or applying affine words.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    Unknown(String),
    #[error("generator `{0}` out of range for n = {1}")]
    Range(String, usize),
}

/// One generator of the extended affine Weyl group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `ŝ_i`, `1 ≤ i < n`.
    S(usize),
    S0,
    Rho(Direction),
    T(usize, Direction),
}

impl Generator {
    fn check(&self, n: usize) -> Result<(), WordError> {
        let ok = match *self {
            Generator::S(i) => 1 <= i && i < n,
            Generator::S0 => n >= 2,
            Generator::Rho(_) => true,
            Generator::T(i, _) => 1 <= i && i <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(WordError::Range(self.to_string(), n))
        }
    }

    pub fn apply<C: QRing>(&self, v: &ModuleElement<C>) -> ModuleElement<C> {
        match *self {
            Generator::S(i) => apply_simple(i, v),
            Generator::S0 => apply_s0(v),
            Generator::Rho(d) => apply_rho(v, d),
            Generator::T(i, d) => apply_translation(i, v, d),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = |d: &Direction| if *d == Direction::Inv { "^-1" } else { "" };
        match self {
            Generator::S(i) => write!(f, "s{i}"),
            Generator::S0 => write!(f, "s0"),
            Generator::Rho(d) => write!(f, "rho{}", inv(d)),
            Generator::T(i, d) => write!(f, "t{i}{}", inv(d)),
        }
    }
}

impl FromStr for Generator {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        let (body, dir) = match s.strip_suffix("^-1") {
            Some(b) => (b, Direction::Inv),
            None => (s, Direction::Fwd),
        };
        let bad = || WordError::Unknown(s.to_string());
        if body == "rho" || body == "ρ" {
            return Ok(Generator::Rho(dir));
        }
        let index = |rest: &str| rest.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = body.strip_prefix('s') {
            let i = index(rest)?;
            return match (i, dir) {
                (0, _) => Ok(Generator::S0),
                (i, _) => Ok(Generator::S(i)),
            };
        }
        if let Some(rest) = body.strip_prefix('t') {
            return Ok(Generator::T(index(rest)?, dir));
        }
        Err(bad())
    }
}

/// A word in the generators, read as an operator product: the rightmost
/// letter acts first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineElement {
    n: usize,
    word: Vec<Generator>,
}

impl AffineElement {
    pub fn new(n: usize, word: Vec<Generator>) -> Result<Self, WordError> {
        for g in &word {
            g.check(n)?;
        }
        Ok(AffineElement { n, word })
    }

    /// Parses whitespace- or `*`-separated generators such as `s1 rho^-1 t2`.
    pub fn parse(n: usize, s: &str) -> Result<Self, WordError> {
        let word = s
            .split(|c: char| c.is_whitespace() || c == '*' || c == '.')
            .filter(|t| !t.is_empty())
            .map(Generator::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, word)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &[Generator] {
        &self.word
    }

    pub fn apply<C: QRing>(&self, v: &ModuleElement<C>) -> ModuleElement<C> {
        assert_eq!(v.n(), self.n);
        let mut r = v.clone();
        for g in self.word.iter().rev() {
            r = g.apply(&r);
        }
        r
    }

    /// The normal form `t_μ · w` in `ℤ^n ⋊ S_n`.
    pub fn normal_form(&self) -> NormalForm {
        let mut acc = NormalForm::identity(self.n);
        for g in &self.word {
            acc = acc.mul(&NormalForm::of_generator(self.n, g));
        }
        acc
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", if parts.is_empty() { "id".to_string() } else { parts.join(" ") })
    }
}

/// `t_μ w` with `μ ∈ ℤ^n` and `w` a permutation in one-line notation. The
/// product is `(t_μ u)(t_ν v) = t_{μ + u·ν} (uv)`, with `(u·ν)_{u(j)} = ν_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub translation: Vec<i64>,
    pub perm: Vec<usize>,
}

impl NormalForm {
    pub fn identity(n: usize) -> Self {
        NormalForm { translation: vec![0; n], perm: (1..=n).collect() }
    }

    fn simple(n: usize, i: usize) -> Self {
        let mut r = Self::identity(n);
        r.perm.swap(i - 1, i);
        r
    }

    fn translation(n: usize, i: usize, sign: i64) -> Self {
        let mut r = Self::identity(n);
        r.translation[i - 1] = sign;
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.perm.len();
        let mut translation = self.translation.clone();
        for j in 0..n {
            translation[self.perm[j] - 1] += o.translation[j];
        }
        let perm = (0..n).map(|j| self.perm[o.perm[j] - 1]).collect();
        NormalForm { translation, perm }
    }

    pub fn inverse(&self) -> Self {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        for (j, &p) in self.perm.iter().enumerate() {
            perm[p - 1] = j + 1;
        }
        let w_inv = NormalForm { translation: vec![0; n], perm };
        let t_inv = NormalForm { translation: self.translation.iter().map(|x| -x).collect(), perm: (1..=n).collect() };
        w_inv.mul(&t_inv)
    }

    fn rho(n: usize) -> Self {
        // ρ = s_{n−1} ⋯ s_1 t_1
        let mut r = Self::identity(n);
        for i in (1..n).rev() {
            r = r.mul(&Self::simple(n, i));
        }
        r.mul(&Self::translation(n, 1, 1))
    }

    fn of_generator(n: usize, g: &Generator) -> Self {
        match *g {
            Generator::S(i) => Self::simple(n, i),
            Generator::S0 => {
                let rho = Self::rho(n);
                rho.mul(&Self::simple(n, 1)).mul(&rho.inverse())
            }
            Generator::Rho(Direction::Fwd) => Self::rho(n),
            Generator::Rho(Direction::Inv) => Self::rho(n).inverse(),
            Generator::T(i, Direction::Fwd) => Self::translation(n, i, 1),
            Generator::T(i, Direction::Inv) => Self::translation(n, i, -1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QPoly;

    type Q = QPoly<RatScalar>;

    fn basis(k: usize, n: usize, parts: &[usize]) -> ModuleElement<Q> {
        ModuleElement::basis(&BoxPartition::new(k, n, parts).unwrap())
    }

    fn c(r: RatScalar) -> Q {
        Q::from_rat(&r)
    }

    #[test]
    fn gr12_simple_reflection() {
        let a = alpha(2, 1);
        let got = apply_simple(1, &basis(1, 2, &[1]));
        let want = basis(1, 2, &[1]).scale(&c(a.clone())).add(&basis(1, 2, &[]).scale(&c(RatScalar::one(2).sub(&a))));
        assert_eq!(got, want);
        assert_eq!(apply_simple(1, &basis(1, 2, &[])), basis(1, 2, &[]));
        assert_eq!(apply_demazure(1, &basis(1, 2, &[1])), basis(1, 2, &[]));
    }

    #[test]
    fn gr12_seidel_values() {
        assert_eq!(apply_rho(&basis(1, 2, &[]), Direction::Fwd), basis(1, 2, &[1]));
        assert_eq!(apply_rho(&basis(1, 2, &[1]), Direction::Fwd), basis(1, 2, &[]).scale(&Q::q(2)));
        let a0 = RatScalar::var(2, 2).mul(&RatScalar::var_pow(2, 1, -1));
        let got = apply_s0(&basis(1, 2, &[]));
        let q_inv = Q::monomial(RatScalar::one(2), -1);
        let want = basis(1, 2, &[]).scale(&c(a0.clone())).add(&basis(1, 2, &[1]).scale(&q_inv.scale(&RatScalar::one(2).sub(&a0))));
        assert_eq!(got, want);
    }

    #[test]
    fn parse_round_trip() {
        let w = AffineElement::parse(4, "s1 s3*rho^-1 t2 s0 t4^-1").unwrap();
        assert_eq!(w.to_string(), "s1 s3 rho^-1 t2 s0 t4^-1");
        assert!(AffineElement::parse(3, "s3").is_err());
        assert!(AffineElement::parse(3, "x1").is_err());
    }

    #[test]
    fn normal_form_relations() {
        let n = 4;
        let nf = |s: &str| AffineElement::parse(n, s).unwrap().normal_form();
        assert_eq!(nf("s1 t1"), nf("t2 s1"));
        assert_eq!(nf("rho rho rho rho"), nf("t1 t2 t3 t4"));
        assert_eq!(nf("t2"), nf("s2 s3 rho s1"));
        assert_eq!(nf("rho^-1 rho"), nf(""));
    }

    #[test]
    fn reduced_word_of_longest_element() {
        assert_eq!(reduced_word(&longest_element(3)).len(), 3);
        assert_eq!(reduced_word(&[2, 1, 3]), vec![1]);
        assert_eq!(reduced_word(&[2, 3, 1]), vec![1, 2]);
    }
}
