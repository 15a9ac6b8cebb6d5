#![allow(dead_code)]

use qkt::combinatorics::BoxPartition;
use qkt::module::ModuleElement;
use qkt::scalar::{LaurentScalar, QPoly, RatScalar, Ring};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A Laurent polynomial with up to `terms` monomials, exponents in `-2..=2`.
pub fn laurent(r: &mut ChaCha8Rng, n: usize, terms: usize) -> LaurentScalar {
    let mut p = LaurentScalar::zero(n);
    for _ in 0..r.gen_range(1..=terms) {
        let exp: Vec<i32> = (0..n).map(|_| r.gen_range(-2..=2)).collect();
        let c = r.gen_range(-5i64..=5);
        p = p.add(&LaurentScalar::monomial(exp.into(), c.into()));
    }
    p
}

pub fn rat(r: &mut ChaCha8Rng, n: usize) -> RatScalar {
    RatScalar::from_laurent(laurent(r, n, 3))
}

/// A polynomial in `q` of degree below 3 with random Laurent coefficients.
pub fn qpoly(r: &mut ChaCha8Rng, n: usize) -> QPoly<RatScalar> {
    let coeffs = (0..r.gen_range(1..=3)).map(|_| rat(r, n)).collect();
    QPoly::from_coeffs(n, 0, coeffs)
}

pub fn element(r: &mut ChaCha8Rng, k: usize, n: usize) -> ModuleElement<QPoly<RatScalar>> {
    let all = BoxPartition::all(k, n);
    let mut v = ModuleElement::zero(k, n);
    for lam in all {
        if r.gen_bool(0.6) {
            v.add_term(lam, qpoly(r, n));
        }
    }
    v
}

pub fn part(k: usize, n: usize, parts: &[usize]) -> BoxPartition {
    BoxPartition::new(k, n, parts).unwrap()
}

pub fn basis<C: Ring>(k: usize, n: usize, parts: &[usize]) -> ModuleElement<C> {
    ModuleElement::basis(&part(k, n, parts))
}
