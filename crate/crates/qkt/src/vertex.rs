//! The five-vertex R-matrix, the Yang-Baxter equation, and the row-sweep
//! evaluation of the monodromy entries `t_ij(y)` on `V_{k,n}`.
//!
//! A basis word `j_1 … j_n` has letter `j_m` bound to `ε_m`.  The entry
//! `t_ij(y)` is computed by sweeping the sites `m = n, n−1, …, 1` with a
//! horizontal label that enters as `j` and must leave as `i`.  The vertex at
//! site `m` takes `(h, v)` to `(h', v')` with weight
//!
//! | `(h, v)` | `(h', v')` | weight        |
//! |----------|------------|---------------|
//! | `(0, 0)` | `(0, 0)`   | `1`           |
//! | `(0, 1)` | `(0, 1)`   | `1 + y/ε_m`   |
//! | `(0, 1)` | `(1, 0)`   | `−y/ε_m`      |
//! | `(1, 0)` | `(0, 1)`   | `1`           |
//! | `(1, 1)` | `(1, 1)`   | `1`           |
//!
//! The dual entries are `t̃_ij = Γ ∘ t_ji ∘ Γ` with `Γ` the level-rank map.

use crate::combinatorics::{BitWord, BoxPartition};
use crate::module::ModuleElement;
use crate::scalar::{LaurentScalar, ParamMap, QRing, RatScalar, Ring};

/// A square matrix of Laurent polynomials, rows indexed by outputs.
pub type LMatrix = Vec<Vec<LaurentScalar>>;

fn zeros(dim: usize, nv: usize) -> LMatrix {
    vec![vec![LaurentScalar::zero(nv); dim]; dim]
}

fn identity(dim: usize, nv: usize) -> LMatrix {
    let mut m = zeros(dim, nv);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = LaurentScalar::one(nv);
    }
    m
}

pub fn mat_mul(a: &LMatrix, b: &LMatrix) -> LMatrix {
    let dim = a.len();
    let nv = a[0][0].nvars();
    let mut c = zeros(dim, nv);
    for i in 0..dim {
        for l in 0..dim {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..dim {
                if !b[l][j].is_zero() {
                    c[i][j] = c[i][j].add(&a[i][l].mul(&b[l][j]));
                }
            }
        }
    }
    c
}

fn transpose(a: &LMatrix) -> LMatrix {
    let dim = a.len();
    (0..dim).map(|i| (0..dim).map(|j| a[j][i].clone()).collect()).collect()
}

/// `R(z)` in the ordered basis `00, 01, 10, 11`, with middle block `[[1−z, z], [1, 0]]`.
pub fn r_matrix(z: &LaurentScalar) -> LMatrix {
    let nv = z.nvars();
    let one = LaurentScalar::one(nv);
    let mut r = zeros(4, nv);
    r[0][0] = one.clone();
    r[1][1] = one.sub(z);
    r[1][2] = z.clone();
    r[2][1] = one.clone();
    r[3][3] = one;
    r
}

/// `R^∨(z) = R(z)^{T⊗T}`.
pub fn r_matrix_dual(z: &LaurentScalar) -> LMatrix {
    transpose(&r_matrix(z))
}

/// The flip `P(v_a ⊗ v_b) = v_b ⊗ v_a`.
pub fn flip(nv: usize) -> LMatrix {
    let mut p = zeros(4, nv);
    for a in 0..2 {
        for b in 0..2 {
            p[2 * b + a][2 * a + b] = LaurentScalar::one(nv);
        }
    }
    p
}

/// `σ ⊗ σ`.
fn sigma_sigma(nv: usize) -> LMatrix {
    let mut s = zeros(4, nv);
    for x in 0..4 {
        s[3 - x][x] = LaurentScalar::one(nv);
    }
    s
}

/// Embeds a two-site operator acting on factors `f < g` of `(ℂ²)^{⊗3}`.
fn embed(r: &LMatrix, f: usize, g: usize) -> LMatrix {
    let nv = r[0][0].nvars();
    let mut m = zeros(8, nv);
    let bit = |x: usize, p: usize| (x >> (2 - p)) & 1;
    for out in 0..8 {
        for inp in 0..8 {
            let other = (0..3).filter(|&p| p != f && p != g).all(|p| bit(out, p) == bit(inp, p));
            if other {
                let ro = 2 * bit(out, f) + bit(out, g);
                let ri = 2 * bit(inp, f) + bit(inp, g);
                m[out][inp] = r[ro][ri].clone();
            }
        }
    }
    m
}

/// Checks `R_12(z/w) R_13(z) R_23(w) = R_23(w) R_13(z) R_12(z/w)` over `ℤ[z^±, w^±]`.
pub fn qybe_holds(r: impl Fn(&LaurentScalar) -> LMatrix) -> bool {
    let z = LaurentScalar::var(2, 1);
    let w = LaurentScalar::var(2, 2);
    let zw = z.mul(&LaurentScalar::var_pow(2, 2, -1));
    let r12 = embed(&r(&zw), 0, 1);
    let r13 = embed(&r(&z), 0, 2);
    let r23 = embed(&r(&w), 1, 2);
    mat_mul(&mat_mul(&r12, &r13), &r23) == mat_mul(&mat_mul(&r23, &r13), &r12)
}

/// Checks `R(z)^{-1} = P R(z^{-1}) P = (σ⊗σ) R(z^{-1}) (σ⊗σ)` by multiplying out.
pub fn inverse_identities_hold() -> bool {
    let z = LaurentScalar::var(1, 1);
    let zi = LaurentScalar::var_pow(1, 1, -1);
    let r = r_matrix(&z);
    let id = identity(4, 1);
    let p = flip(1);
    let s = sigma_sigma(1);
    let inv_p = mat_mul(&mat_mul(&p, &r_matrix(&zi)), &p);
    let inv_s = mat_mul(&mat_mul(&s, &r_matrix(&zi)), &s);
    mat_mul(&r, &inv_p) == id && mat_mul(&inv_p, &r) == id && mat_mul(&r, &inv_s) == id && mat_mul(&inv_s, &r) == id
}

/// Checks `R(1) = P`.
pub fn r_at_one_is_flip() -> bool {
    r_matrix(&LaurentScalar::one(1)) == flip(1)
}

/// Site weights `1 + y/ε_m` and `−y/ε_m` for `m = 1 … n`.
struct SiteWeights<C> {
    pass: Vec<C>,
    turn: Vec<C>,
}

impl<C: Ring> SiteWeights<C> {
    fn new(n: usize, y: &C) -> Self {
        let mut pass = Vec::with_capacity(n);
        let mut turn = Vec::with_capacity(n);
        for m in 1..=n {
            let ym = y.scale(&RatScalar::var_pow(n, m, -1));
            pass.push(C::one(n).add(&ym));
            turn.push(ym.neg());
        }
        SiteWeights { pass, turn }
    }
}

/// The images of one basis word under `t_ij(y)`, as `(word, weight)` pairs.
fn sweep_word<C: Ring>(i: u8, j: u8, word: &BitWord, w: &SiteWeights<C>) -> Vec<(BitWord, C)> {
    let n = word.len();
    // (horizontal label, output letters, weight); letters filled from the right.
    let mut states: Vec<(u8, Vec<u8>, Option<C>)> = vec![(j, vec![0; n], None)];
    let times = |acc: &Option<C>, f: &C| -> Option<C> {
        Some(match acc {
            None => f.clone(),
            Some(a) => a.mul(f),
        })
    };
    for m in (1..=n).rev() {
        let v = word.bit(m);
        let mut next = Vec::with_capacity(states.len() * 2);
        for (h, mut out, acc) in states {
            match (h, v) {
                (0, 0) | (1, 1) => {
                    out[m - 1] = v;
                    next.push((h, out, acc));
                }
                (1, 0) => {
                    out[m - 1] = 1;
                    next.push((0, out, acc));
                }
                _ => {
                    let mut o2 = out.clone();
                    out[m - 1] = 1;
                    next.push((0, out, times(&acc, &w.pass[m - 1])));
                    o2[m - 1] = 0;
                    next.push((1, o2, times(&acc, &w.turn[m - 1])));
                }
            }
        }
        states = next;
    }
    states
        .into_iter()
        .filter(|(h, _, _)| *h == i)
        .map(|(_, out, acc)| (BitWord::new(out).unwrap(), acc.unwrap_or_else(|| C::one(word.len()))))
        .collect()
}

/// Rank of the target space of `t_ij` on `V_{k,n}`, if it exists.
pub fn target_rank(i: u8, j: u8, k: usize, n: usize) -> Option<usize> {
    let kk = k as isize + i as isize - j as isize;
    (0..=n as isize).contains(&kk).then_some(kk as usize)
}

/// `t_ij(y) v` by the row sweep.  The result lies in `V_{k+i−j, n}`; when
/// that rank is out of range the image is zero and is returned in `V_{k,n}`.
pub fn apply_generator<C: Ring>(i: u8, j: u8, y: &C, v: &ModuleElement<C>) -> ModuleElement<C> {
    assert!(i <= 1 && j <= 1);
    let (k, n) = (v.k(), v.n());
    let Some(k_out) = target_rank(i, j, k, n) else {
        return ModuleElement::zero(k, n);
    };
    let weights = SiteWeights::new(n, y);
    v.apply_linear(k_out, |lam| {
        let mut r = ModuleElement::zero(k_out, n);
        for (word, c) in sweep_word(i, j, &lam.to_word(), &weights) {
            r.add_term(BoxPartition::from_word(&word), c);
        }
        r
    })
}

/// `t(y) = t_00(y) + q t_11(y)`.
pub fn transfer<C: QRing>(y: &C, v: &ModuleElement<C>) -> ModuleElement<C> {
    let q = C::q(v.n());
    apply_generator(0, 0, y, v).add(&apply_generator(1, 1, y, v).scale(&q))
}

/// Level-rank map `V_{k,n} → V_{n−k,n}`: words reversed and complemented,
/// scalars under `ε_i ↦ ε_{n+1−i}^{-1}`.
pub fn gamma<C: Ring>(v: &ModuleElement<C>) -> ModuleElement<C> {
    let (k, n) = (v.k(), v.n());
    let m = ParamMap::reverse_invert(n);
    let mut r = ModuleElement::zero(n - k, n);
    for (l, c) in v.iter() {
        r.add_term(l.gamma_label(), c.substitute(&m));
    }
    r
}

/// The level-rank twist of a scalar.
pub fn gamma_scalar<C: Ring>(y: &C) -> C {
    y.substitute(&ParamMap::reverse_invert(y.nparams()))
}

/// `t̃_ij(y) v = Γ(t_ji(y) Γ(v))`.
pub fn dual_generator<C: Ring>(i: u8, j: u8, y: &C, v: &ModuleElement<C>) -> ModuleElement<C> {
    let inner = apply_generator(j, i, &gamma_scalar(y), &gamma(v));
    if target_rank(j, i, v.n() - v.k(), v.n()).is_none() {
        return ModuleElement::zero(v.k(), v.n());
    }
    gamma(&inner)
}

/// `t̃(y) = t̃_00(y) + q t̃_11(y)`.
pub fn dual_transfer<C: QRing>(y: &C, v: &ModuleElement<C>) -> ModuleElement<C> {
    let q = C::q(v.n());
    dual_generator(0, 0, y, v).add(&dual_generator(1, 1, y, v).scale(&q))
}
