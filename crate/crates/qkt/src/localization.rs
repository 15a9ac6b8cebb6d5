//! Classical equivariant K-theory of `Gr(k,n)` through restriction to the
//! torus fixed points, together with the two-point invariants and the quantum
//! K pairing.
//!
//! The fixed point `μ` has tangent weights `ε_{w(i)}/ε_{w(j)}` for `i ≤ k < j`,
//! with `w = w_μ`; a class is recorded by its values `v|_μ` and
//! `χ(v) = Σ_μ v|_μ / ∏_{i≤k<j}(1 − ε_{w(i)}/ε_{w(j)})`.

use crate::combinatorics::BoxPartition;
use crate::grothendieck::schubert_polynomial;
use crate::module::ModuleElement;
use crate::scalar::{QKValue, QPoly, RatScalar, Ring};
use crate::weyl::{apply_weyl, longest_element};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};
use thiserror::Error;

/// Failures of the localization layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizationError {
    #[error("Euler characteristic of a Laurent class is not Laurent: {0}")]
    NotLaurent(String),
    #[error("two-point invariants are not constant beyond degree {0}")]
    Saturation(usize),
    #[error("vector indexed by Gr({0},{1}) used with Gr({2},{3})")]
    Shape(usize, usize, usize, usize),
}

/// Values at the fixed points `μ ∈ Π^k_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizationVector<C> {
    k: usize,
    n: usize,
    values: BTreeMap<BoxPartition, C>,
}

impl<C: Ring> LocalizationVector<C> {
    /// Builds a vector from a function on fixed points.
    pub fn from_fn(k: usize, n: usize, f: impl Fn(&BoxPartition) -> C) -> Self {
        let values = BoxPartition::all(k, n).into_iter().map(|mu| {
            let v = f(&mu);
            (mu, v)
        });
        LocalizationVector { k, n, values: values.collect() }
    }

    /// The indicator of a single fixed point, i.e. the fixed-point class.
    pub fn indicator(mu: &BoxPartition) -> Self {
        Self::from_fn(mu.k(), mu.n(), |nu| if nu == mu { C::one(mu.n()) } else { C::zero(mu.n()) })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, mu: &BoxPartition) -> &C {
        &self.values[mu]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BoxPartition, &C)> {
        self.values.iter()
    }

    /// Pointwise product.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!((self.k, self.n), (o.k, o.n));
        let values = self.values.iter().map(|(mu, a)| (mu.clone(), a.mul(&o.values[mu]))).collect();
        LocalizationVector { k: self.k, n: self.n, values }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.k, self.n), (o.k, o.n));
        let values = self.values.iter().map(|(mu, a)| (mu.clone(), a.add(&o.values[mu]))).collect();
        LocalizationVector { k: self.k, n: self.n, values }
    }
}

/// The restriction matrix `O_λ|_μ` and the Euler weights of `Gr(k,n)`.
#[derive(Debug)]
pub struct RestrictionTable {
    k: usize,
    n: usize,
    parts: Vec<BoxPartition>,
    index: HashMap<BoxPartition, usize>,
    /// `entries[λ][μ] = O_λ|_μ`, zero unless `λ ⊆ μ`.
    entries: Vec<Vec<RatScalar>>,
    euler: Vec<RatScalar>,
    euler_inv: Vec<RatScalar>,
}

impl RestrictionTable {
    fn build(k: usize, n: usize) -> Self {
        let parts = BoxPartition::all(k, n);
        let index = parts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let points: Vec<Vec<RatScalar>> =
            parts.iter().map(|mu| mu.epsilon_index().iter().map(|&i| RatScalar::var(n, i)).collect()).collect();
        let entries = parts
            .iter()
            .map(|lam| {
                let o = schubert_polynomial(lam);
                parts
                    .iter()
                    .zip(&points)
                    .map(|(mu, xs)| if lam.contained_in(mu) { o.eval(xs, |c| c.clone()) } else { RatScalar::zero(n) })
                    .collect()
            })
            .collect();
        let euler: Vec<RatScalar> = parts.iter().map(euler_weight).collect();
        let euler_inv = euler.iter().map(|e| e.inv().expect("Euler weights are nonzero")).collect();
        RestrictionTable { k, n, parts, index, entries, euler, euler_inv }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[BoxPartition] {
        &self.parts
    }

    pub fn entry(&self, lam: &BoxPartition, mu: &BoxPartition) -> &RatScalar {
        &self.entries[self.index[lam]][self.index[mu]]
    }

    pub fn euler(&self, mu: &BoxPartition) -> &RatScalar {
        &self.euler[self.index[mu]]
    }
}

type TableCache = RwLock<HashMap<(usize, usize), Arc<RestrictionTable>>>;

fn tables() -> &'static TableCache {
    static T: OnceLock<TableCache> = OnceLock::new();
    T.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The cached restriction table of `Gr(k,n)`.
pub fn restriction_table(k: usize, n: usize) -> Arc<RestrictionTable> {
    if let Some(t) = tables().read().unwrap().get(&(k, n)) {
        return t.clone();
    }
    let t = Arc::new(RestrictionTable::build(k, n));
    tables().write().unwrap().entry((k, n)).or_insert_with(|| t.clone()).clone()
}

/// `O_λ|_μ`.
pub fn restrict(lam: &BoxPartition, mu: &BoxPartition) -> RatScalar {
    assert_eq!((lam.k(), lam.n()), (mu.k(), mu.n()));
    restriction_table(lam.k(), lam.n()).entry(lam, mu).clone()
}

/// `∏_{i≤k<j}(1 − ε_{w(i)}/ε_{w(j)})` with `w = w_μ`.
pub fn euler_weight(mu: &BoxPartition) -> RatScalar {
    let n = mu.n();
    let w = mu.to_perm();
    let w = w.values();
    let mut acc = RatScalar::one(n);
    for i in 0..mu.k() {
        for j in mu.k()..n {
            acc = acc.mul(&RatScalar::one(n).sub(&RatScalar::var(n, w[i]).mul(&RatScalar::var_pow(n, w[j], -1))));
        }
    }
    acc
}

/// The fixed-point values of a class.
pub fn localize<C: Ring>(v: &ModuleElement<C>) -> LocalizationVector<C> {
    let t = restriction_table(v.k(), v.n());
    LocalizationVector::from_fn(v.k(), v.n(), |mu| {
        let mut acc = C::zero(v.n());
        for (lam, c) in v.iter() {
            let r = t.entry(lam, mu);
            if !r.is_zero() {
                acc = acc.add(&c.scale(r));
            }
        }
        acc
    })
}

/// `Σ_μ L(μ)/Eu(μ)`.
pub fn euler_char_vector<C: Ring>(l: &LocalizationVector<C>) -> C {
    let t = restriction_table(l.k, l.n);
    let mut acc = C::zero(l.n);
    for (mu, v) in l.iter() {
        acc = acc.add(&v.scale(&t.euler_inv[t.index[mu]]));
    }
    acc
}

/// The Euler characteristic of a class.
pub fn euler_char<C: Ring>(v: &ModuleElement<C>) -> C {
    euler_char_vector(&localize(v))
}

/// [`euler_char`] with the integrality check: a class with Laurent
/// coefficients must have a Laurent Euler characteristic.
pub fn euler_char_checked(v: &ModuleElement<RatScalar>) -> Result<RatScalar, LocalizationError> {
    let r = euler_char(v);
    if v.iter().all(|(_, c)| c.is_laurent()) && !r.is_laurent() {
        return Err(LocalizationError::NotLaurent(r.to_string()));
    }
    Ok(r)
}

/// The unique Schubert expansion with the given fixed-point values.
pub fn class_from_restrictions<C: Ring>(l: &LocalizationVector<C>) -> ModuleElement<C> {
    let (k, n) = (l.k, l.n);
    let t = restriction_table(k, n);
    let mut out = ModuleElement::zero(k, n);
    // Partitions are sorted by size, so λ ⊊ μ comes first.
    let mut solved: Vec<C> = Vec::with_capacity(t.parts.len());
    for (j, mu) in t.parts.iter().enumerate() {
        let mut rhs = l.get(mu).clone();
        for (i, c) in solved.iter().enumerate() {
            let r = &t.entries[i][j];
            if !r.is_zero() && !c.is_zero() {
                rhs = rhs.sub(&c.scale(r));
            }
        }
        let diag_inv = t.entries[j][j].inv().expect("restriction diagonal is nonzero");
        let c = rhs.scale(&diag_inv);
        out.add_term(mu.clone(), c.clone());
        solved.push(c);
    }
    out
}

/// The class `e_μ` of the fixed point `μ`, supported at `μ` with value
/// `Eu(μ)` there, so that `χ(e_μ · v) = v|_μ`.
pub fn fixed_point_class<C: Ring>(mu: &BoxPartition) -> ModuleElement<C> {
    let l = LocalizationVector::<C>::indicator(mu);
    let eu = euler_weight(mu);
    class_from_restrictions(&LocalizationVector::from_fn(mu.k(), mu.n(), |nu| l.get(nu).scale(&eu)))
}

/// The product in `K_T(Gr(k,n))` by pointwise multiplication.
pub fn classical_product<C: Ring>(a: &ModuleElement<C>, b: &ModuleElement<C>) -> ModuleElement<C> {
    assert_eq!((a.k(), a.n()), (b.k(), b.n()));
    class_from_restrictions(&localize(a).mul(&localize(b)))
}

/// The dual basis `O_ν^∨` with `χ(O_λ · O_ν^∨) = δ_{λν}`.
pub fn dual_class(nu: &BoxPartition) -> ModuleElement<RatScalar> {
    let (k, n) = (nu.k(), nu.n());
    let t = restriction_table(k, n);
    let m = t.parts.len();
    let col = t.index[nu];
    // Column `col` of the inverse of the upper-triangular restriction matrix.
    let mut x = vec![RatScalar::zero(n); m];
    for i in (0..m).rev() {
        let mut rhs = if i == col { RatScalar::one(n) } else { RatScalar::zero(n) };
        for (j, xj) in x.iter().enumerate().skip(i + 1) {
            if !xj.is_zero() && !t.entries[i][j].is_zero() {
                rhs = rhs.sub(&t.entries[i][j].mul(xj));
            }
        }
        x[i] = rhs.div(&t.entries[i][i]).expect("restriction diagonal is nonzero");
    }
    let l = LocalizationVector::from_fn(k, n, |mu| t.euler[t.index[mu]].mul(&x[t.index[mu]]));
    class_from_restrictions(&l)
}

/// The opposite Schubert class `O^μ = ŵ_0 · O_{μ^∨}`.
pub fn opposite_class(mu: &BoxPartition) -> ModuleElement<RatScalar> {
    apply_weyl(&longest_element(mu.n()), &ModuleElement::basis(&mu.complement()))
}

/// `a[−d] = Σ a_λ O_{λ[−d]}`.
pub fn curve_neighborhood_class<C: Ring>(a: &ModuleElement<C>, d: usize) -> ModuleElement<C> {
    a.apply_linear(a.k(), |lam| ModuleElement::basis(&lam.curve_neighborhood(d)))
}

/// `⟨a, b⟩_d = χ(a[−d] · b)`.
pub fn kgw_2point<C: Ring>(a: &ModuleElement<C>, b: &ModuleElement<C>, d: usize) -> C {
    euler_char_vector(&localize(&curve_neighborhood_class(a, d)).mul(&localize(b)))
}

/// The degree beyond which `λ[−d] = ∅` for every `λ`.
pub fn saturation_degree(k: usize, n: usize) -> usize {
    k.min(n - k)
}

/// `(a, b)_QK = Σ_d q^d ⟨a, b⟩_d` for classes with coefficients in `q`.
pub fn qk_pairing_q(
    a: &ModuleElement<QPoly<RatScalar>>,
    b: &ModuleElement<QPoly<RatScalar>>,
) -> Result<QKValue, LocalizationError> {
    let (k, n) = (a.k(), a.n());
    if (b.k(), b.n()) != (k, n) {
        return Err(LocalizationError::Shape(k, n, b.k(), b.n()));
    }
    let big_d = saturation_degree(k, n);
    let lb = localize(b);
    let c = |d: usize| euler_char_vector(&localize(&curve_neighborhood_class(a, d)).mul(&lb));
    let tail = c(big_d);
    if c(big_d + 1) != tail {
        return Err(LocalizationError::Saturation(big_d));
    }
    // [Σ_{d<D} c_d q^d (1 − q) + c_D q^D] / (1 − q)
    let one_minus_q = QPoly::from_coeffs(n, 0, vec![RatScalar::one(n), RatScalar::from_i64(n, -1)]);
    let mut num = tail.mul(&QPoly::monomial(RatScalar::one(n), big_d as i32));
    for d in 0..big_d {
        num = num.add(&c(d).mul(&QPoly::monomial(RatScalar::one(n), d as i32)).mul(&one_minus_q));
    }
    Ok(QKValue::new(num, 1))
}

/// `(a, b)_QK` for classes with coefficients in `K_T(pt)`.
pub fn qk_pairing(a: &ModuleElement<RatScalar>, b: &ModuleElement<RatScalar>) -> Result<QKValue, LocalizationError> {
    let lift = |v: &ModuleElement<RatScalar>| v.map_into(|c| QPoly::constant(c.clone()));
    qk_pairing_q(&lift(a), &lift(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: usize, n: usize, parts: &[usize]) -> BoxPartition {
        BoxPartition::new(k, n, parts).unwrap()
    }

    #[test]
    fn gr12_restrictions() {
        let n = 2;
        let box1 = p(1, 2, &[1]);
        let e = RatScalar::var(n, 2).mul(&RatScalar::var_pow(n, 1, -1));
        assert_eq!(restrict(&box1, &box1), RatScalar::one(n).sub(&e));
        assert!(restrict(&box1, &p(1, 2, &[])).is_zero());
        assert_eq!(restrict(&p(1, 2, &[]), &box1), RatScalar::one(n));
    }

    #[test]
    fn euler_char_of_schubert_classes_is_one() {
        for n in 1..=4 {
            for k in 0..=n {
                for lam in BoxPartition::all(k, n) {
                    assert_eq!(euler_char_checked(&ModuleElement::basis(&lam)).unwrap(), RatScalar::one(n));
                }
            }
        }
    }

    #[test]
    fn gr12_pairings() {
        let n = 2;
        let (e, b) = (p(1, 2, &[]), p(1, 2, &[1]));
        let v = qk_pairing(&ModuleElement::basis(&b), &ModuleElement::basis(&e)).unwrap();
        let geometric = QKValue::new(QPoly::constant(RatScalar::one(n)), 1);
        assert_eq!(v, geometric);
        let r = RatScalar::var(n, 2).mul(&RatScalar::var_pow(n, 1, -1));
        let num = QPoly::from_coeffs(n, 0, vec![RatScalar::one(n).sub(&r), r]);
        assert_eq!(qk_pairing(&ModuleElement::basis(&b), &ModuleElement::basis(&b)).unwrap(), QKValue::new(num, 1));
    }
}
