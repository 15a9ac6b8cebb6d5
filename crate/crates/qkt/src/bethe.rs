//! Bethe ansatz equations solved as power series in `q`, Bethe vectors, and
//! the quantum localization built from them.
//!
//! For `V_{k,n}` the equations are cleared of denominators:
//! `F_i = ∏_j(1 − x_i/ε_j) ∏_{j≠i} x_j + (−1)^k q x_i^{k−1}`.  The root labelled
//! by `λ` starts at `x = ε^λ`, the parameters at the zero positions of the
//! word of `λ`.  The dual equations use `∏_j(1 − x̃_i ε_j)` with `n − k` roots.

use crate::combinatorics::BoxPartition;
use crate::grothendieck::schubert_polynomial;
use crate::localization::{curve_neighborhood_class, euler_char, euler_char_vector, localize, saturation_degree};
use crate::module::ModuleElement;
use crate::products::qk_product_via_table;
use crate::scalar::{ParamMap, QRing, QSeries, RatScalar, Ring, ScalarError, YPoly};
use crate::vertex::{apply_generator, dual_generator, dual_transfer, transfer};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};
use thiserror::Error;

/// The default q-truncation order.
pub const DEFAULT_ORDER: usize = 3;

/// Failures of the Bethe layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BetheError {
    #[error("Jacobian is singular at q = 0 for {0}")]
    Degenerate(String),
    #[error("residual of equation {equation} has valuation {valuation} below order {order}")]
    Residual { equation: usize, valuation: usize, order: usize },
    #[error("Gr({0},{1}) is a point; the dual eigenvalue identities need 0 < k < n")]
    PointGrassmannian(usize, usize),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Which family of equations a root solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `∏_j(1 − x/ε_j)`, `k` roots on `Gr(k,n)`.
    Primal,
    /// `∏_j(1 − x ε_j)`, `n − k` roots, labelled by partitions of `Gr(n−k,n)`.
    Dual,
}

/// A solution of the Bethe equations modulo `q^{order+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BetheRoot {
    pub lambda: BoxPartition,
    pub side: Side,
    pub order: usize,
    pub roots: Vec<QSeries>,
    /// Valuation of the residual after each Newton step.
    pub residual_history: Vec<usize>,
}

/// A Bethe vector modulo `q^{order+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BetheVector {
    pub lambda: BoxPartition,
    pub order: usize,
    pub element: ModuleElement<QSeries>,
}

fn series(c: RatScalar, order: usize) -> QSeries {
    QSeries::new(c.nparams(), order, vec![c])
}

/// The starting values `ε^λ` (primal) or `ε_{n+1−j}^{-1}` over the zero
/// positions `j` of `λ ∈ Gr(n−k,n)` (dual).
pub fn initial_roots(lambda: &BoxPartition, side: Side) -> Vec<RatScalar> {
    let n = lambda.n();
    lambda
        .epsilon_index()
        .iter()
        .map(|&j| match side {
            Side::Primal => RatScalar::var(n, j),
            Side::Dual => RatScalar::var_pow(n, n + 1 - j, -1),
        })
        .collect()
}

/// `∏_j (1 − x c_j)` and its derivative in `x`.
fn p_and_dp(x: &QSeries, cs: &[RatScalar]) -> (QSeries, QSeries) {
    let n = x.nparams();
    let factors: Vec<QSeries> = cs.iter().map(|c| QSeries::one(n).sub(&x.scale(c))).collect();
    let mut p = QSeries::one(n);
    for f in &factors {
        p = p.mul(f);
    }
    let mut dp = QSeries::zero(n);
    for (i, c) in cs.iter().enumerate() {
        let mut t = QSeries::constant(c.neg());
        for (j, f) in factors.iter().enumerate() {
            if i != j {
                t = t.mul(f);
            }
        }
        dp = dp.add(&t);
    }
    (p, dp)
}

fn coefficients(n: usize, side: Side) -> Vec<RatScalar> {
    (1..=n)
        .map(|j| match side {
            Side::Primal => RatScalar::var_pow(n, j, -1),
            Side::Dual => RatScalar::var(n, j),
        })
        .collect()
}

fn product_except(xs: &[QSeries], skip: &[usize]) -> QSeries {
    let n = xs[0].nparams();
    let mut acc = QSeries::one(n);
    for (j, x) in xs.iter().enumerate() {
        if !skip.contains(&j) {
            acc = acc.mul(x);
        }
    }
    acc
}

/// The cleared equations `F_i(x)` with sign `(−1)^m`, `m = xs.len()`.
pub fn bethe_residuals(xs: &[QSeries], n: usize, side: Side) -> Vec<QSeries> {
    let m = xs.len();
    let cs = coefficients(n, side);
    let q = QSeries::q(n);
    let sign = if m % 2 == 0 { RatScalar::one(n) } else { RatScalar::from_i64(n, -1) };
    (0..m)
        .map(|i| {
            let (p, _) = p_and_dp(&xs[i], &cs);
            let tail = q.mul(&Ring::pow(&xs[i], (m - 1) as u32)).scale(&sign);
            p.mul(&product_except(xs, &[i])).add(&tail)
        })
        .collect()
}

fn jacobian(xs: &[QSeries], n: usize, side: Side) -> Vec<Vec<QSeries>> {
    let m = xs.len();
    let cs = coefficients(n, side);
    let q = QSeries::q(n);
    let sign = if m % 2 == 0 { 1 } else { -1 };
    (0..m)
        .map(|i| {
            let (p, dp) = p_and_dp(&xs[i], &cs);
            (0..m)
                .map(|l| {
                    if l == i {
                        let mut d = dp.mul(&product_except(xs, &[i]));
                        if m >= 2 {
                            let c = RatScalar::from_i64(n, sign * (m as i64 - 1));
                            d = d.add(&q.mul(&Ring::pow(&xs[i], (m - 2) as u32)).scale(&c));
                        }
                        d
                    } else {
                        p.mul(&product_except(xs, &[i, l]))
                    }
                })
                .collect()
        })
        .collect()
}

/// Solves `J δ = F` over the power series by elimination with unit pivots.
fn solve_linear(mut a: Vec<Vec<QSeries>>, mut b: Vec<QSeries>, order: usize) -> Result<Vec<QSeries>, ScalarError> {
    let m = b.len();
    for col in 0..m {
        let piv = (col..m).find(|&r| !a[r][col].coeff(0).is_zero()).ok_or(ScalarError::NonUnit)?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].invert_to(order)?;
        for r in 0..m {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&inv);
            for c in col..m {
                let t = f.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&t);
            }
            let t = f.mul(&b[col]);
            b[r] = b[r].sub(&t);
        }
    }
    (0..m).map(|i| Ok(b[i].mul(&a[i][i].invert_to(order)?))).collect()
}

fn residual_valuation(res: &[QSeries], order: usize) -> (usize, usize) {
    res.iter()
        .enumerate()
        .map(|(i, r)| (i, r.truncate(order).valuation().unwrap_or(order + 1)))
        .min_by_key(|&(_, v)| v)
        .unwrap_or((0, order + 1))
}

/// Newton iteration in the q-adic topology: each step doubles the number of
/// correct coefficients.
pub fn solve_bethe(lambda: &BoxPartition, side: Side, order: usize) -> Result<BetheRoot, BetheError> {
    let n = lambda.n();
    let init = initial_roots(lambda, side);
    let mut xs: Vec<QSeries> = init.iter().map(|c| series(c.clone(), 0)).collect();
    let mut history = Vec::new();
    if xs.is_empty() {
        return Ok(BetheRoot { lambda: lambda.clone(), side, order, roots: xs, residual_history: history });
    }
    let mut known = 1;
    while known <= order {
        let target = (2 * known).min(order + 1);
        let lifted: Vec<QSeries> = xs.iter().map(|x| QSeries::new(n, target - 1, x.coeffs().to_vec())).collect();
        let f = bethe_residuals(&lifted, n, side);
        let j = jacobian(&lifted, n, side);
        let delta = solve_linear(j, f, target - 1).map_err(|_| BetheError::Degenerate(lambda.to_string()))?;
        xs = lifted.iter().zip(&delta).map(|(x, d)| x.sub(d)).collect();
        let (_, v) = residual_valuation(&bethe_residuals(&xs, n, side), target - 1);
        history.push(v);
        known = target;
    }
    for x in xs.iter_mut() {
        *x = x.truncate(order);
    }
    let (equation, valuation) = residual_valuation(&bethe_residuals(&xs, n, side), order);
    if valuation <= order {
        return Err(BetheError::Residual { equation, valuation, order });
    }
    Ok(BetheRoot { lambda: lambda.clone(), side, order, roots: xs, residual_history: history })
}

type RootCache = RwLock<HashMap<(usize, usize, Vec<usize>, Side, usize), Arc<BetheRoot>>>;

fn root_cache() -> &'static RootCache {
    static C: OnceLock<RootCache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// [`solve_bethe`] for the primal equations, memoized per `(n, k, λ, N)`.
pub fn solve_bae(lambda: &BoxPartition, order: usize) -> Result<Arc<BetheRoot>, BetheError> {
    cached_root(lambda, Side::Primal, order)
}

/// The dual roots labelled by `λ' ∈ Gr(n−k, n)`, memoized.
pub fn solve_dual_bae(lambda: &BoxPartition, order: usize) -> Result<Arc<BetheRoot>, BetheError> {
    cached_root(lambda, Side::Dual, order)
}

fn cached_root(lambda: &BoxPartition, side: Side, order: usize) -> Result<Arc<BetheRoot>, BetheError> {
    let key = (lambda.n(), lambda.k(), lambda.parts(), side, order);
    if let Some(r) = root_cache().read().unwrap().get(&key) {
        return Ok(r.clone());
    }
    let r = Arc::new(solve_bethe(lambda, side, order)?);
    Ok(root_cache().write().unwrap().entry(key).or_insert_with(|| r.clone()).clone())
}

/// Seeds the root cache, e.g. from roots read back from disk.
pub fn insert_root(root: BetheRoot) {
    let key = (root.lambda.n(), root.lambda.k(), root.lambda.parts(), root.side, root.order);
    root_cache().write().unwrap().insert(key, Arc::new(root));
}

/// `𝐛(x_1,…,x_k) = t_10(−x_1) ⋯ t_10(−x_k) v_o`, with `v_o` the all-ones word.
pub fn off_shell_vector<C: Ring>(xs: &[C], n: usize) -> ModuleElement<C> {
    let mut v = ModuleElement::basis(&BoxPartition::empty(0, n));
    for x in xs.iter().rev() {
        v = apply_generator(1, 0, &x.neg(), &v);
    }
    v
}

/// `𝐛̃(x̃_1,…,x̃_{n−k}) = t̃_01(−x̃_1) ⋯ t̃_01(−x̃_{n−k}) ṽ_o`, with `ṽ_o` the
/// all-zeros word.
pub fn dual_off_shell_vector<C: Ring>(xs: &[C], n: usize) -> ModuleElement<C> {
    let mut v = ModuleElement::basis(&BoxPartition::empty(n, n));
    for x in xs.iter().rev() {
        v = dual_generator(0, 1, &x.neg(), &v);
    }
    v
}

/// The on-shell vector `𝐛_λ`.
pub fn on_shell_vector(lambda: &BoxPartition, order: usize) -> Result<BetheVector, BetheError> {
    let root = solve_bae(lambda, order)?;
    let element = off_shell_vector(&root.roots, lambda.n()).map(|c| c.truncate(order));
    Ok(BetheVector { lambda: lambda.clone(), order, element })
}

/// The dual on-shell vector `𝐛̃_{λ'}` for `λ' ∈ Gr(n−k, n)`, together with the
/// partition `ν = Γ(λ')` of `Gr(k, n)` whose Bethe vector it equals.
pub fn dual_on_shell(lambda_dual: &BoxPartition, order: usize) -> Result<(BetheVector, BoxPartition), BetheError> {
    let root = solve_dual_bae(lambda_dual, order)?;
    let element = dual_off_shell_vector(&root.roots, lambda_dual.n()).map(|c| c.truncate(order));
    let partner = lambda_dual.gamma_label();
    let primal = on_shell_vector(&partner, order)?;
    if primal.element != element {
        return Err(BetheError::Consistency(format!("dual Bethe vector of {lambda_dual} differs from b_{partner}")));
    }
    Ok((BetheVector { lambda: partner.clone(), order, element }, partner))
}

type YS = YPoly<QSeries>;

fn one_plus_z_times(c: &QSeries, n: usize) -> YS {
    YS::one(n).add(&YS::var(n).mul(&YS::constant(c.clone())))
}

/// Checks `∏(1 + z/x_i) t(z) 𝐛_λ = (∏_j(1 + z/ε_j) + q z^k/∏ x_i) 𝐛_λ` through
/// the truncation order; both sides are polynomial in `z`.
pub fn verify_eigenvalue(lambda: &BoxPartition, order: usize) -> Result<bool, BetheError> {
    let n = lambda.n();
    let root = solve_bae(lambda, order)?;
    let b = on_shell_vector(lambda, order)?.element.map_into(|c| YS::constant(c.clone()));
    let z = YS::var(n);
    let mut lhs_scale = YS::one(n);
    let mut prod_x = QSeries::one(n);
    for x in &root.roots {
        let inv = x.invert_to(order)?;
        lhs_scale = lhs_scale.mul(&one_plus_z_times(&inv, n));
        prod_x = prod_x.mul(x);
    }
    let mut a = YS::one(n);
    for j in 1..=n {
        a = a.mul(&YS::one(n).add(&z.scale(&RatScalar::var_pow(n, j, -1))));
    }
    let tail = YS::constant(QSeries::q(n).mul(&prod_x.invert_to(order)?)).mul(&Ring::pow(&z, lambda.k() as u32));
    let lhs = transfer(&z, &b).scale(&lhs_scale);
    let rhs = b.scale(&a.add(&tail));
    Ok(same_to_order(&lhs, &rhs, order))
}

/// Checks `t̃(z) 𝐛_λ = ∏_i(1 + z x_i) 𝐛_λ` and `t(z) 𝐛_λ = ∏_j(1 + z x̃_j) 𝐛_λ`,
/// with `x̃` the dual roots of `λ' = Γ(λ)`.
pub fn verify_dual_eigenvalues(lambda: &BoxPartition, order: usize) -> Result<bool, BetheError> {
    let (k, n) = (lambda.k(), lambda.n());
    if k == 0 || k == n {
        return Err(BetheError::PointGrassmannian(k, n));
    }
    let root = solve_bae(lambda, order)?;
    let dual = solve_dual_bae(&lambda.gamma_label(), order)?;
    let b = on_shell_vector(lambda, order)?.element.map_into(|c| YS::constant(c.clone()));
    let z = YS::var(n);
    let mut e1 = YS::one(n);
    for x in &root.roots {
        e1 = e1.mul(&one_plus_z_times(x, n));
    }
    let mut e2 = YS::one(n);
    for x in &dual.roots {
        e2 = e2.mul(&one_plus_z_times(x, n));
    }
    let ok1 = same_to_order(&dual_transfer(&z, &b), &b.scale(&e1), order);
    let ok2 = same_to_order(&transfer(&z, &b), &b.scale(&e2), order);
    Ok(ok1 && ok2)
}

fn same_to_order(a: &ModuleElement<YS>, b: &ModuleElement<YS>, order: usize) -> bool {
    let trunc = |v: &ModuleElement<YS>| {
        v.map(|p| {
            let coeffs: Vec<QSeries> = p.coeffs().iter().map(|c| c.truncate(order)).collect();
            YS::from_coeffs(p.nparams(), p.low(), coeffs)
        })
    };
    trunc(a).sub(&trunc(b)).is_zero()
}

/// `(a, b)_QK` as a power series modulo `q^{order+1}`.
pub fn qk_pairing_series(a: &ModuleElement<QSeries>, b: &ModuleElement<QSeries>, order: usize) -> QSeries {
    let (k, n) = (a.k(), a.n());
    let big_d = saturation_degree(k, n);
    let lb = localize(b);
    let c = |d: usize| euler_char_vector(&localize(&curve_neighborhood_class(a, d)).mul(&lb));
    let geometric = QSeries::new(n, order, vec![RatScalar::one(n); order + 1]);
    let mut acc = c(big_d).mul(&geometric).shift(big_d);
    for d in 0..big_d {
        acc = acc.add(&c(d).shift(d));
    }
    acc.truncate(order)
}

fn lift(v: &ModuleElement<RatScalar>) -> ModuleElement<QSeries> {
    v.map_into(|c| QSeries::constant(c.clone()))
}

/// `Eu_q(λ) = (𝐛_λ, 𝐛_λ)_QK`.
pub fn quantum_euler(lambda: &BoxPartition, order: usize) -> Result<QSeries, BetheError> {
    let b = on_shell_vector(lambda, order)?;
    Ok(qk_pairing_series(&b.element, &b.element, order))
}

/// The quantum localization `(v, 𝐛_λ)_QK`.
pub fn quantum_localize(v: &ModuleElement<RatScalar>, lambda: &BoxPartition, order: usize) -> Result<QSeries, BetheError> {
    let b = on_shell_vector(lambda, order)?;
    Ok(qk_pairing_series(&lift(v), &b.element, order))
}

/// `O_μ` evaluated at the Bethe roots of `λ`, i.e. `G_μ(1 − x^λ | 1 − ε^{-1})`.
pub fn schubert_at_roots(mu: &BoxPartition, lambda: &BoxPartition, order: usize) -> Result<QSeries, BetheError> {
    let root = solve_bae(lambda, order)?;
    Ok(schubert_polynomial(mu).eval(&root.roots, |c| QSeries::constant(c.clone())).truncate(order))
}

/// `Σ_λ (v, 𝐛_λ)_QK (𝐛_λ, O_∅)_QK / Eu_q(λ)`, checked against `χ(v)/(1 − q)`.
///
/// The weight `(𝐛_λ, O_∅)_QK` equals 1 whenever `0 < k < n`.  On a point it is
/// `1/(1 − q)`, and dropping it would give `χ(v)` instead.
pub fn quantum_atiyah_bott(v: &ModuleElement<RatScalar>, order: usize) -> Result<QSeries, BetheError> {
    let (k, n) = (v.k(), v.n());
    let mut acc = QSeries::zero_to(n, order);
    for lambda in BoxPartition::all(k, n) {
        let num = quantum_localize(v, &lambda, order)?;
        let b = on_shell_vector(&lambda, order)?.element;
        let weight = qk_pairing_series(&b, &lift(&ModuleElement::basis(&BoxPartition::empty(k, n))), order);
        let den = qk_pairing_series(&b, &b, order);
        acc = acc.add(&num.mul(&weight).mul(&den.invert_to(order)?));
    }
    let chi = euler_char(v);
    let want = QSeries::new(n, order, vec![chi; order + 1]);
    if acc != want {
        return Err(BetheError::Consistency(format!("quantum Atiyah-Bott sum {acc} differs from χ/(1−q)")));
    }
    Ok(acc)
}

/// `𝐛_λ ⋆ 𝐛_μ`, which vanishes for `λ ≠ μ` and equals `Eu_q(λ) 𝐛_λ` for
/// `λ = μ` when `0 < k < n`.
pub fn bethe_product(lambda: &BoxPartition, mu: &BoxPartition, order: usize) -> Result<ModuleElement<QSeries>, BetheError> {
    let a = on_shell_vector(lambda, order)?.element;
    let b = on_shell_vector(mu, order)?.element;
    let p = qk_product_via_table(&a, &b).map_err(|e| BetheError::Consistency(e.to_string()))?;
    Ok(p.map(|c| c.truncate(order)))
}

/// The Weyl twist `w_λ` of a series in the parameters, for `w_λ` the
/// Grassmannian permutation of `λ`.
pub fn weyl_twist(s: &QSeries, lambda: &BoxPartition) -> QSeries {
    s.substitute(&ParamMap::permutation(lambda.to_perm().values()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: usize, n: usize, parts: &[usize]) -> BoxPartition {
        BoxPartition::new(k, n, parts).unwrap()
    }

    #[test]
    fn gr12_first_order_root() {
        let n = 2;
        let root = solve_bae(&p(1, 2, &[]), 1).unwrap();
        let e1 = RatScalar::var(n, 1);
        let e2 = RatScalar::var(n, 2);
        let c1 = e1.mul(&e2).div(&e1.sub(&e2)).unwrap();
        assert_eq!(root.roots[0], QSeries::new(n, 1, vec![e1, c1]));
    }

    #[test]
    fn newton_doubles_precision() {
        let root = solve_bethe(&p(2, 4, &[1]), Side::Primal, 7).unwrap();
        assert_eq!(root.residual_history, vec![2, 4, 8]);
    }

    #[test]
    fn gr12_off_shell() {
        let n = 2;
        let x = RatScalar::from_i64(n, 3).add(&RatScalar::var(n, 1));
        let v = off_shell_vector(&[x.clone()], n);
        let e1i = RatScalar::var_pow(n, 1, -1);
        let e2i = RatScalar::var_pow(n, 2, -1);
        let c0 = x.mul(&e1i).mul(&RatScalar::one(n).sub(&x.mul(&e2i)));
        let want = ModuleElement::term(p(1, 2, &[]), c0).add(&ModuleElement::term(p(1, 2, &[1]), x.mul(&e2i)));
        assert_eq!(v, want);
    }
}
