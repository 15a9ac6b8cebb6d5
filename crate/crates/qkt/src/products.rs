//! Quantum K-products.
//!
//! The transfer matrices act as quantum multiplication by `λ_y(Q^∨)` and,
//! on the dual side, by `λ_y(S)`.  The coefficient of `y^i` in the latter is
//! the operator `G_i = ∧^i S ⋆`; a Schubert class `O_λ` is the Grothendieck
//! polynomial `G_λ(1 − X | 1 − ε^{-1})`, rewritten in the elementary symmetric
//! functions `e_i(X) = ∧^i S`, so `O_λ ⋆ b` is that polynomial in the `G_i`
//! applied to `b`.
//!
//! Three-point invariants are also computed on their own: for `d > 0` the
//! invariant `⟨a, b, c⟩_d` is `χ` over `Fl(k−d, k+d; n)` of the product of the
//! push-pulls of `a, b, c` through `Fl(k−d, k, k+d; n)`, and all three steps
//! are done by localization.

use crate::combinatorics::{BitWord, BoxPartition};
use crate::grothendieck::{elementary_expansion, schubert_polynomial, GPoly};
use crate::localization::{
    class_from_restrictions, dual_class, euler_char, kgw_2point, localize, saturation_degree, LocalizationVector,
};
use crate::module::ModuleElement;
use crate::scalar::{QPoly, QRing, RatScalar, Ring, YPoly};
use crate::vertex::{apply_generator, dual_generator, dual_transfer, transfer};
use crate::weyl::apply_simple;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};
use thiserror::Error;

/// Exact polynomials in `q`.
pub type Q = QPoly<RatScalar>;
/// Polynomials in `y` over polynomials in `q`.
pub type YQ = YPoly<Q>;

/// Failures of the product layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("λ_y(Q^∨) ⋆ O_{lambda} has q-degree {degree}, expected at most 1")]
    QDegree { lambda: String, degree: i32 },
    #[error("generator index {i} out of range 1..={k}")]
    Generator { i: usize, k: usize },
    #[error("operands live in Gr({0},{1}) and Gr({2},{3})")]
    Shape(usize, usize, usize, usize),
    #[error("the row (n − k) does not fit in Gr(0,{0})")]
    EmptyRow(usize),
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

/// The bundles whose `λ_y` classes the transfer matrices multiply by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bundle {
    /// `λ_y(Q^∨)`, through `t(y)`.
    QDual,
    /// `λ_y(S)`, through `t̃(y)`.
    S,
}

/// `λ_y(E) ⋆ v` at a given value of `y`.
///
/// On `Gr(0,n)` the vertex model gives `t_11 v_o = v_o`, so `t(y)` carries an
/// extra `q` that quantum multiplication on a point does not have; there
/// (and dually on `Gr(n,n)`) only the diagonal entry `t_00` is used.
pub fn mult_lambda_y<C: QRing>(bundle: Bundle, y: &C, v: &ModuleElement<C>) -> ModuleElement<C> {
    match bundle {
        Bundle::QDual if v.k() == 0 => apply_generator(0, 0, y, v),
        Bundle::QDual => transfer(y, v),
        Bundle::S if v.k() == v.n() => dual_generator(0, 0, y, v),
        Bundle::S => dual_transfer(y, v),
    }
}

/// `λ_y(E) ⋆ v` with `y` formal.  For `Q^∨` the q-degree bound of one is
/// checked.
pub fn lambda_y_operator(bundle: Bundle, v: &ModuleElement<Q>) -> Result<ModuleElement<YQ>, ProductError> {
    let n = v.n();
    let lifted = v.map_into(|c| YQ::constant(c.clone()));
    let out = mult_lambda_y(bundle, &YQ::var(n), &lifted);
    if bundle == Bundle::QDual {
        let degree = out
            .iter()
            .flat_map(|(_, p)| p.iter().filter_map(|(_, c)| c.high()).collect::<Vec<_>>())
            .max()
            .unwrap_or(0);
        if degree > 1 {
            let lambda = v.iter().map(|(l, _)| l.to_string()).collect::<Vec<_>>().join("+");
            return Err(ProductError::QDegree { lambda, degree });
        }
    }
    Ok(out)
}

/// The coefficient of `y^i`.
pub fn y_coefficient(v: &ModuleElement<YQ>, i: i32) -> ModuleElement<Q> {
    let mut out = ModuleElement::zero(v.k(), v.n());
    for (l, p) in v.iter() {
        out.add_term(l.clone(), p.coeff(i));
    }
    out
}

/// `∧^i S ⋆ v`, the `y^i` coefficient of `t̃(y) v`.
pub fn wedge_generator(i: usize, v: &ModuleElement<Q>) -> Result<ModuleElement<Q>, ProductError> {
    if i == 0 || i > v.k() {
        return Err(ProductError::Generator { i, k: v.k() });
    }
    Ok(generator_table(v.k(), v.n()).apply(i, v))
}

/// Images of the Schubert basis under every `G_i`.
pub struct GeneratorTable {
    k: usize,
    n: usize,
    images: Vec<HashMap<BoxPartition, ModuleElement<Q>>>,
}

impl GeneratorTable {
    fn build(k: usize, n: usize) -> Self {
        let columns: Vec<(BoxPartition, ModuleElement<YQ>)> = BoxPartition::all(k, n)
            .into_par_iter()
            .map(|lam| {
                let img = lambda_y_operator(Bundle::S, &ModuleElement::basis(&lam)).expect("λ_y(S) has no degree bound");
                (lam, img)
            })
            .collect();
        let images = (1..=k)
            .map(|i| columns.iter().map(|(l, img)| (l.clone(), y_coefficient(img, i as i32))).collect())
            .collect();
        GeneratorTable { k, n, images }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `G_i v`.
    pub fn apply(&self, i: usize, v: &ModuleElement<Q>) -> ModuleElement<Q> {
        let table = &self.images[i - 1];
        let mut out = ModuleElement::zero(self.k, self.n);
        for (l, c) in v.iter() {
            out = out.add(&table[l].scale(c));
        }
        out
    }

    /// `P(G_1, …, G_k) v` for a polynomial `P` in the generators.
    pub fn apply_poly(&self, p: &GPoly<RatScalar>, v: &ModuleElement<Q>) -> ModuleElement<Q> {
        let mut out = ModuleElement::zero(self.k, self.n);
        for (m, c) in p {
            let mut w = v.clone();
            for (j, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    w = self.apply(j + 1, &w);
                }
            }
            out = out.add(&w.scale_rat(c));
        }
        out
    }
}

type TableCache = RwLock<HashMap<(usize, usize), Arc<GeneratorTable>>>;

fn tables() -> &'static TableCache {
    static T: OnceLock<TableCache> = OnceLock::new();
    T.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The generator operators of `Gr(k,n)`, memoized.
pub fn generator_table(k: usize, n: usize) -> Arc<GeneratorTable> {
    if let Some(t) = tables().read().unwrap().get(&(k, n)) {
        return t.clone();
    }
    let t = Arc::new(GeneratorTable::build(k, n));
    tables().write().unwrap().entry((k, n)).or_insert_with(|| t.clone()).clone()
}

type ExpansionCache = RwLock<HashMap<(usize, usize, Vec<usize>), Arc<GPoly<RatScalar>>>>;

fn expansions() -> &'static ExpansionCache {
    static E: OnceLock<ExpansionCache> = OnceLock::new();
    E.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `O_λ` as a polynomial in `∧^1 S, …, ∧^k S`.
pub fn schubert_in_generators(lambda: &BoxPartition) -> Arc<GPoly<RatScalar>> {
    let key = (lambda.k(), lambda.n(), lambda.parts());
    if let Some(g) = expansions().read().unwrap().get(&key) {
        return g.clone();
    }
    let g = Arc::new(elementary_expansion(&schubert_polynomial(lambda)).expect("Schubert polynomials are symmetric"));
    expansions().write().unwrap().entry(key).or_insert_with(|| g.clone()).clone()
}

fn check_shape<C: Ring>(a: &ModuleElement<C>, b: &ModuleElement<C>) -> Result<(), ProductError> {
    if (a.k(), a.n()) != (b.k(), b.n()) {
        return Err(ProductError::Shape(a.k(), a.n(), b.k(), b.n()));
    }
    Ok(())
}

/// `a ⋆ b`, expanding `a` in the generators.
pub fn qk_product(a: &ModuleElement<Q>, b: &ModuleElement<Q>) -> Result<ModuleElement<Q>, ProductError> {
    check_shape(a, b)?;
    let table = generator_table(a.k(), a.n());
    let mut out = ModuleElement::zero(a.k(), a.n());
    for (l, c) in a.iter() {
        out = out.add(&table.apply_poly(&schubert_in_generators(l), b).scale(c));
    }
    Ok(out)
}

/// `a ⋆ b` computed with each factor expanded in turn; the two must agree.
pub fn qk_product_checked(a: &ModuleElement<Q>, b: &ModuleElement<Q>) -> Result<ModuleElement<Q>, ProductError> {
    let ab = qk_product(a, b)?;
    let ba = qk_product(b, a)?;
    if ab != ba {
        return Err(ProductError::Consistency("a ⋆ b differs from b ⋆ a".into()));
    }
    Ok(ab)
}

/// Lifts a class over `Rep_T` to the exact `q` layer.
pub fn lift_q(v: &ModuleElement<RatScalar>) -> ModuleElement<Q> {
    v.map_into(|c| Q::constant(c.clone()))
}

/// The coefficient of `q^d`.
pub fn q_coefficient(v: &ModuleElement<Q>, d: i32) -> ModuleElement<RatScalar> {
    let mut out = ModuleElement::zero(v.k(), v.n());
    for (l, p) in v.iter() {
        out.add_term(l.clone(), p.coeff(d));
    }
    out
}

/// All `O_λ ⋆ O_μ`, checked to have Laurent coefficients.
pub fn structure_constants(k: usize, n: usize) -> Result<StructureTable, ProductError> {
    let parts = BoxPartition::all(k, n);
    let pairs: Vec<(BoxPartition, BoxPartition)> = parts
        .iter()
        .flat_map(|l| parts.iter().filter(move |m| l <= *m).map(move |m| (l.clone(), m.clone())))
        .collect();
    let products: Vec<_> = pairs
        .into_par_iter()
        .map(|(l, m)| {
            let p = qk_product(&ModuleElement::basis(&l), &ModuleElement::basis(&m))?;
            Ok(((l, m), p))
        })
        .collect::<Result<_, ProductError>>()?;
    let mut out = BTreeMap::new();
    for ((l, m), p) in products {
        for (nu, c) in p.iter() {
            if c.iter().any(|(_, x)| !x.is_laurent()) {
                return Err(ProductError::Consistency(format!("O_{l} ⋆ O_{m} has a non-polynomial coefficient at O_{nu}")));
            }
        }
        if l != m {
            out.insert((m.clone(), l.clone()), p.clone());
        }
        out.insert((l, m), p);
    }
    Ok(out)
}

pub type StructureTable = BTreeMap<(BoxPartition, BoxPartition), ModuleElement<Q>>;
type StructureCache = RwLock<HashMap<(usize, usize), Arc<StructureTable>>>;

fn structure_cache() -> &'static StructureCache {
    static S: OnceLock<StructureCache> = OnceLock::new();
    S.get_or_init(|| RwLock::new(HashMap::new()))
}

/// [`structure_constants`], memoized per `(k, n)`.
pub fn structure_table(k: usize, n: usize) -> Result<Arc<StructureTable>, ProductError> {
    if let Some(t) = structure_cache().read().unwrap().get(&(k, n)) {
        return Ok(t.clone());
    }
    let t = Arc::new(structure_constants(k, n)?);
    Ok(structure_cache().write().unwrap().entry((k, n)).or_insert_with(|| t.clone()).clone())
}

/// Seeds the structure-constant cache, e.g. from a table read back from disk.
pub fn insert_structure_table(k: usize, n: usize, table: StructureTable) {
    structure_cache().write().unwrap().insert((k, n), Arc::new(table));
}

/// `a ⋆ b` for classes over any ring containing `Rep_T[q]`, through the
/// structure constants.
pub fn qk_product_via_table<C: QRing>(a: &ModuleElement<C>, b: &ModuleElement<C>) -> Result<ModuleElement<C>, ProductError> {
    check_shape(a, b)?;
    let table = structure_table(a.k(), a.n())?;
    let mut out = ModuleElement::zero(a.k(), a.n());
    for (la, ca) in a.iter() {
        for (lb, cb) in b.iter() {
            let c = ca.mul(cb);
            for (nu, s) in table[&(la.clone(), lb.clone())].iter() {
                out.add_term(nu.clone(), C::from_qpoly(s).mul(&c));
            }
        }
    }
    Ok(out)
}

/// `⟨a, b, c⟩_d` read off from the product: `(a ⋆ b, c)_QK = Σ_d q^d ⟨a, b, c⟩_d`.
pub fn kgw_3point(
    a: &ModuleElement<RatScalar>,
    b: &ModuleElement<RatScalar>,
    c: &ModuleElement<RatScalar>,
    d: usize,
) -> Result<RatScalar, ProductError> {
    let ab = qk_product(&lift_q(a), &lift_q(b))?;
    let n = a.n();
    let mut acc = RatScalar::zero(n);
    for e in 0..=d {
        let x = q_coefficient(&ab, e as i32);
        acc = acc.add(&kgw_2point(&x, c, d - e));
    }
    Ok(acc)
}

fn subsets(n: usize, size: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == size).collect()
}

fn fixed_point(mask: u32, n: usize) -> BoxPartition {
    let bits: Vec<u8> = (0..n).map(|m| if mask >> m & 1 == 1 { 0 } else { 1 }).collect();
    BoxPartition::from_word(&BitWord::new(bits).expect("binary word"))
}

/// `∏_{i ∈ inner, j ∈ outer} (1 − ε_i/ε_j)`, the K-theoretic Euler class of
/// `Hom(inner, outer)`.
fn hom_euler(inner: u32, outer: u32, n: usize) -> RatScalar {
    let mut acc = RatScalar::one(n);
    for i in 0..n {
        if inner >> i & 1 == 0 {
            continue;
        }
        for j in 0..n {
            if outer >> j & 1 == 1 {
                let w = RatScalar::var(n, i + 1).mul(&RatScalar::var_pow(n, j + 1, -1));
                acc = acc.mul(&RatScalar::one(n).sub(&w));
            }
        }
    }
    acc
}

/// `⟨c_1, …, c_m⟩_d` through the quantum-equals-classical correspondence,
/// localized on `Fl(k−d, k+d; n)`.
pub fn kgw_geometric(classes: &[&ModuleElement<RatScalar>], d: usize) -> RatScalar {
    let (k, n) = (classes[0].k(), classes[0].n());
    let locs: Vec<LocalizationVector<RatScalar>> = classes.iter().map(|c| localize(c)).collect();
    if d == 0 {
        let mut prod = locs[0].clone();
        for l in &locs[1..] {
            prod = prod.mul(l);
        }
        return euler_char(&class_from_restrictions(&prod));
    }
    let (a, b) = (k.saturating_sub(d), (k + d).min(n));
    let full = (1u32 << n) - 1;
    let mut acc = RatScalar::zero(n);
    for big in subsets(n, b) {
        for small in subsets(n, a).into_iter().filter(|s| s & !big == 0) {
            let eu_y = hom_euler(small, big & !small, n).mul(&hom_euler(big, full & !big, n));
            let mut value = RatScalar::one(n);
            for l in &locs {
                let mut pushed = RatScalar::zero(n);
                for mid in subsets(n, k).into_iter().filter(|m| small & !m == 0 && m & !big == 0) {
                    let eu_f = hom_euler(mid & !small, big & !mid, n);
                    pushed = pushed.add(&l.get(&fixed_point(mid, n)).div(&eu_f).expect("nonzero Euler class"));
                }
                value = value.mul(&pushed);
            }
            acc = acc.add(&value.div(&eu_y).expect("nonzero Euler class"));
        }
    }
    acc
}

/// `κ ⋆ O_λ` assembled from geometric three-point invariants:
/// `N^{ν,d} = ⟨κ, O_λ, O_ν^∨⟩_d − Σ_μ ⟨κ, O_λ, O_μ^∨⟩_{d−1} ⟨O_μ, O_ν^∨⟩_1`,
/// with `O^∨` the classical dual basis, for `d ≤ max_degree`.
pub fn product_from_invariants(kappa: &ModuleElement<RatScalar>, lambda: &BoxPartition, max_degree: usize) -> ModuleElement<Q> {
    let (k, n) = (lambda.k(), lambda.n());
    let parts = BoxPartition::all(k, n);
    let duals: Vec<ModuleElement<RatScalar>> = parts.iter().map(dual_class).collect();
    let o_lambda = ModuleElement::basis(lambda);
    let three: Vec<Vec<RatScalar>> = (0..=max_degree)
        .map(|d| duals.iter().map(|dv| kgw_geometric(&[kappa, &o_lambda, dv], d)).collect())
        .collect();
    let two: Vec<Vec<RatScalar>> = parts
        .iter()
        .map(|mu| duals.iter().map(|dv| kgw_2point(&ModuleElement::basis(mu), dv, 1)).collect())
        .collect();
    let mut out = ModuleElement::zero(k, n);
    for d in 0..=max_degree {
        for (j, nu) in parts.iter().enumerate() {
            let mut c = three[d][j].clone();
            if d > 0 {
                for m in 0..parts.len() {
                    c = c.sub(&three[d - 1][m].mul(&two[m][j]));
                }
            }
            out.add_term(nu.clone(), Q::monomial(c, d as i32));
        }
    }
    out
}

/// `∏_{j ∈ S} ε_j^{sign}` over the zero (`S`) or one (`Q`) positions.
fn det_of(mu: &BoxPartition, zeros: bool, sign: i32) -> RatScalar {
    let n = mu.n();
    let pos = if zeros { mu.zero_positions() } else { mu.one_positions() };
    pos.iter().fold(RatScalar::one(n), |a, &j| a.mul(&RatScalar::var_pow(n, j, sign)))
}

fn elementary_of(vals: &[RatScalar], j: usize, n: usize) -> RatScalar {
    let mut e = vec![RatScalar::zero(n); j + 1];
    e[0] = RatScalar::one(n);
    for v in vals {
        for i in (1..=j).rev() {
            e[i] = e[i].add(&e[i - 1].mul(v));
        }
    }
    e[j].clone()
}

/// `∧^j Q`, `∧^j Q^∨`, `∧^j S` through their restrictions.
pub fn exterior_power(bundle: ExteriorBundle, j: usize, k: usize, n: usize) -> ModuleElement<RatScalar> {
    let l = LocalizationVector::from_fn(k, n, |mu| {
        let vals: Vec<RatScalar> = match bundle {
            ExteriorBundle::S => mu.zero_positions().iter().map(|&i| RatScalar::var(n, i)).collect(),
            ExteriorBundle::Q => mu.one_positions().iter().map(|&i| RatScalar::var(n, i)).collect(),
            ExteriorBundle::QDual => mu.one_positions().iter().map(|&i| RatScalar::var_pow(n, i, -1)).collect(),
        };
        elementary_of(&vals, j, n)
    });
    class_from_restrictions(&l)
}

/// The bundles with exterior powers available as classical classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExteriorBundle {
    S,
    Q,
    QDual,
}

/// `det S` or `det Q` as a classical class.
pub fn determinant(bundle: ExteriorBundle, k: usize, n: usize) -> ModuleElement<RatScalar> {
    let l = LocalizationVector::from_fn(k, n, |mu| match bundle {
        ExteriorBundle::S => det_of(mu, true, 1),
        ExteriorBundle::Q => det_of(mu, false, 1),
        ExteriorBundle::QDual => det_of(mu, false, -1),
    });
    class_from_restrictions(&l)
}

/// A Schubert basis vector on which an identity fails.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub lambda: BoxPartition,
    pub lhs: ModuleElement<YQ>,
    pub rhs: ModuleElement<YQ>,
}

fn lift_y(v: &ModuleElement<Q>) -> ModuleElement<YQ> {
    v.map_into(|c| YQ::constant(c.clone()))
}

fn y_const(r: RatScalar) -> YQ {
    YQ::constant(Q::constant(r))
}

/// `∏_{i≤k}(1 + ε_i/y) ∏_{i>k}(1 + y/ε_i)`.
fn functional_prefactor(k: usize, n: usize) -> YQ {
    let y = YQ::var(n);
    let y_inv = YQ::monomial(Q::one(n), -1);
    let mut acc = YQ::one(n);
    for i in 1..=n {
        let term = if i <= k { y_inv.mul(&y_const(RatScalar::var(n, i))) } else { y.mul(&y_const(RatScalar::var_pow(n, i, -1))) };
        acc = acc.mul(&YQ::one(n).add(&term));
    }
    acc
}

/// Checks `t(y) t̃(1/y) v = ∏(1+ε_i/y)∏(1+y/ε_i)(v − o_1 ⋆ v) + q v` on every
/// Schubert basis vector, for a given class `o_1` (the true one is `O_1`).
pub fn functional_relation_witness(k: usize, n: usize, o1: &ModuleElement<Q>) -> Result<Option<Witness>, ProductError> {
    let y = YQ::var(n);
    let y_inv = YQ::monomial(Q::one(n), -1);
    let pre = functional_prefactor(k, n);
    let q = YQ::constant(Q::q(n));
    for lam in BoxPartition::all(k, n) {
        let v = ModuleElement::<Q>::basis(&lam);
        let vy = lift_y(&v);
        let lhs = transfer(&y, &dual_transfer(&y_inv, &vy));
        let o1v = lift_y(&qk_product(o1, &v)?);
        let rhs = vy.sub(&o1v).scale(&pre).add(&vy.scale(&q));
        if lhs != rhs {
            return Ok(Some(Witness { lambda: lam, lhs, rhs }));
        }
    }
    Ok(None)
}

/// The functional relation between `λ_y(Q^∨)` and `λ_{1/y}(S)`, for `0 < k < n`.
pub fn verify_functional_relation(k: usize, n: usize) -> Result<Option<Witness>, ProductError> {
    let o1 = ModuleElement::basis(&BoxPartition::new(k, n, &[1]).expect("0 < k < n"));
    functional_relation_witness(k, n, &o1)
}

/// The quantum Whitney relation with the `(1 − q)` denominator cleared:
/// `(1−q) λ_y(S) ⋆ λ_y(Q) = (1−q) λ_y(ℂ^n) − q y^{n−k} (λ_y(S) − 1) ⋆ det Q`.
pub fn verify_whitney(k: usize, n: usize) -> Result<Option<Witness>, ProductError> {
    let y = YQ::var(n);
    let one_minus_q = YQ::constant(Q::one(n).sub(&Q::q(n)));
    let mut lambda_q = ModuleElement::<YQ>::zero(k, n);
    for j in 0..=n - k {
        let w = lift_y(&lift_q(&exterior_power(ExteriorBundle::Q, j, k, n)));
        lambda_q = lambda_q.add(&w.scale(&Ring::pow(&y, j as u32)));
    }
    let lhs = dual_transfer(&y, &lambda_q).scale(&one_minus_q);
    let unit = ModuleElement::<YQ>::basis(&BoxPartition::empty(k, n));
    let mut lambda_cn = YQ::one(n);
    for i in 1..=n {
        lambda_cn = lambda_cn.mul(&YQ::one(n).add(&y.mul(&y_const(RatScalar::var(n, i)))));
    }
    let det_q = lift_y(&lift_q(&determinant(ExteriorBundle::Q, k, n)));
    let tail = dual_transfer(&y, &det_q).sub(&det_q).scale(&YQ::constant(Q::q(n))).scale(&Ring::pow(&y, (n - k) as u32));
    let rhs = unit.scale(&lambda_cn.mul(&one_minus_q)).sub(&tail);
    if lhs != rhs {
        return Ok(Some(Witness { lambda: BoxPartition::empty(k, n), lhs, rhs }));
    }
    Ok(None)
}

/// `∧^{n−k−i} Q ⋆ det S = ∧^i Q^∨ · ε_1⋯ε_n` for `1 ≤ i ≤ n − k`, and
/// `det Q ⋆ det S = (1 − q) ε_1⋯ε_n`.
pub fn verify_determinant_relations(k: usize, n: usize) -> Result<Option<String>, ProductError> {
    let det_s = lift_q(&determinant(ExteriorBundle::S, k, n));
    let det_cn: RatScalar = (1..=n).fold(RatScalar::one(n), |a, i| a.mul(&RatScalar::var(n, i)));
    for i in 1..=n - k {
        let lhs = qk_product(&lift_q(&exterior_power(ExteriorBundle::Q, n - k - i, k, n)), &det_s)?;
        let rhs = lift_q(&exterior_power(ExteriorBundle::QDual, i, k, n).scale_rat(&det_cn));
        if lhs != rhs {
            return Ok(Some(format!("∧^{} Q ⋆ det S on Gr({k},{n})", n - k - i)));
        }
    }
    let lhs = qk_product(&lift_q(&determinant(ExteriorBundle::Q, k, n)), &det_s)?;
    let unit = ModuleElement::<Q>::basis(&BoxPartition::empty(k, n));
    let rhs = unit.scale(&Q::constant(det_cn).mul(&Q::one(n).sub(&Q::q(n))));
    if lhs != rhs {
        return Ok(Some(format!("det Q ⋆ det S on Gr({k},{n})")));
    }
    Ok(None)
}

/// `ρ(O_λ)` computed as `O_{n−k} ⋆ ŝ_{n−1} ⋯ ŝ_1 (O_λ)`, for `k ≥ 1`.
pub fn seidel_via_product(lambda: &BoxPartition) -> Result<ModuleElement<Q>, ProductError> {
    let (k, n) = (lambda.k(), lambda.n());
    if k == 0 {
        return Err(ProductError::EmptyRow(n));
    }
    let mut v = ModuleElement::<Q>::basis(lambda);
    for i in 1..n {
        v = apply_simple(i, &v);
    }
    let row = if k == n {
        BoxPartition::empty(k, n)
    } else {
        BoxPartition::new(k, n, &[n - k]).expect("row fits")
    };
    qk_product(&ModuleElement::basis(&row), &v)
}

/// The quantum pairing `(a, b)_QK` of classes with an exact `q` layer, as a
/// polynomial numerator over `(1 − q)`.
pub fn qk_pairing_exact(a: &ModuleElement<Q>, b: &ModuleElement<Q>) -> Q {
    let (k, n) = (a.k(), a.n());
    let big_d = saturation_degree(k, n) as i32;
    let mut acc = Q::zero(n);
    for (la, ca) in a.iter() {
        for (lb, cb) in b.iter() {
            let (oa, ob) = (ModuleElement::basis(la), ModuleElement::basis(lb));
            let mut num = Q::zero(n);
            for d in 0..=big_d {
                let c = kgw_2point(&oa, &ob, d as usize);
                let term = if d < big_d {
                    Q::monomial(c, d).mul(&Q::one(n).sub(&Q::q(n)))
                } else {
                    Q::monomial(c, d)
                };
                num = num.add(&term);
            }
            acc = acc.add(&num.mul(ca).mul(cb));
        }
    }
    acc
}
