mod common;

use common::{basis, element, rng};
use qkt::combinatorics::BoxPartition;
use qkt::localization::{
    class_from_restrictions, classical_product, dual_class, euler_char, euler_char_checked, fixed_point_class,
    kgw_2point, localize, opposite_class, qk_pairing, restrict, LocalizationVector,
};
use qkt::module::ModuleElement;
use qkt::scalar::{LaurentScalar, ParamMap, QKValue, QPoly, RatScalar, Ring, YPoly};
use qkt::weyl::apply_simple;

type Y = YPoly<RatScalar>;

fn e(n: usize, i: usize) -> RatScalar {
    RatScalar::var(n, i)
}

fn e_inv(n: usize, i: usize) -> RatScalar {
    RatScalar::var_pow(n, i, -1)
}

#[test]
fn restriction_matrix_is_triangular_with_invertible_diagonal() {
    for n in 1..=5 {
        for k in 0..=n {
            for lam in BoxPartition::all(k, n) {
                assert!(!restrict(&lam, &lam).is_zero());
                for mu in BoxPartition::all(k, n) {
                    if !lam.contained_in(&mu) {
                        assert!(restrict(&lam, &mu).is_zero(), "{lam} at {mu}");
                    }
                }
            }
        }
    }
}

#[test]
fn diagonal_restriction_is_product_of_inversion_weights() {
    // O_λ|_λ = ∏ (1 − ε_b/ε_a) over pairs a < b that are inversions of the word:
    // a one at position a followed by a zero at position b.
    for n in 2..=5 {
        for k in 1..n {
            for lam in BoxPartition::all(k, n) {
                let w = lam.to_word();
                let mut want = RatScalar::one(n);
                for a in 1..=n {
                    for b in a + 1..=n {
                        if w.bit(a) == 1 && w.bit(b) == 0 {
                            want = want.mul(&RatScalar::one(n).sub(&e(n, b).mul(&e_inv(n, a))));
                        }
                    }
                }
                assert_eq!(restrict(&lam, &lam), want, "{lam}");
            }
        }
    }
}

#[test]
fn euler_characteristics_of_schubert_classes() {
    for n in 1..=5 {
        for k in 0..=n {
            for lam in BoxPartition::all(k, n) {
                assert_eq!(euler_char_checked(&basis(k, n, &lam.parts())).unwrap(), RatScalar::one(n));
            }
        }
    }
    let pt = fixed_point_class::<RatScalar>(&BoxPartition::empty(1, 2));
    assert_eq!(euler_char(&pt), RatScalar::one(2));
}

#[test]
fn richardson_euler_characteristics() {
    for n in 2..=4 {
        for k in 1..n {
            for lam in BoxPartition::all(k, n) {
                for mu in BoxPartition::all(k, n) {
                    let prod = classical_product(&basis(k, n, &lam.parts()), &opposite_class(&mu));
                    let chi = euler_char_checked(&prod).unwrap();
                    let want = if lam.contained_in(&mu) { RatScalar::one(n) } else { RatScalar::zero(n) };
                    assert_eq!(chi, want, "χ(O_{lam} O^{mu})");
                }
            }
        }
    }
}

#[test]
fn classical_products() {
    let mut r = rng(21);
    for n in 2..=4 {
        for k in 0..=n {
            let b = element(&mut r, k, n);
            assert_eq!(classical_product(&basis(k, n, &[]), &b), b);
        }
    }
    let n = 2;
    let sq = classical_product::<RatScalar>(&basis(1, 2, &[1]), &basis(1, 2, &[1]));
    let want = basis::<RatScalar>(1, 2, &[1]).scale(&RatScalar::one(n).sub(&e(n, 2).mul(&e_inv(n, 1))));
    assert_eq!(sq, want);
}

#[test]
fn restrictions_round_trip() {
    let mut r = rng(22);
    for n in 1..=4 {
        for k in 0..=n {
            for lam in BoxPartition::all(k, n) {
                let v: ModuleElement<RatScalar> = ModuleElement::basis(&lam);
                assert_eq!(class_from_restrictions(&localize(&v)), v);
            }
            let v = element(&mut r, k, n);
            assert_eq!(class_from_restrictions(&localize(&v)), v);
            let one = LocalizationVector::from_fn(k, n, |_| RatScalar::one(n));
            assert_eq!(class_from_restrictions(&one), basis(k, n, &[]));
        }
    }
}

/// `λ_y(Q^∨)` from its fixed-point values: the quotient at `μ` has characters
/// `ε_j` for the one positions `j` of the word.
fn lambda_y_qdual(k: usize, n: usize) -> ModuleElement<Y> {
    let y: Y = YPoly::var(n);
    let l = LocalizationVector::from_fn(k, n, |mu| {
        let mut acc = Y::one(n);
        for j in mu.one_positions() {
            acc = acc.mul(&Y::one(n).add(&y.scale(&e_inv(n, j))));
        }
        acc
    });
    class_from_restrictions(&l)
}

#[test]
fn lambda_y_of_dual_quotient_expansion() {
    for n in 2..=5 {
        for k in 1..n {
            let y: Y = YPoly::var(n);
            let f = |i: usize| Y::one(n).add(&y.scale(&e_inv(n, i)));
            let mut want = ModuleElement::zero(k, n);
            let mut lead = Y::one(n);
            for i in k + 1..=n {
                lead = lead.mul(&f(i));
            }
            want.add_term(BoxPartition::empty(k, n), lead);
            for r in 1..=n - k {
                let mut c = y.scale(&e_inv(n, k + r));
                for i in k + r + 1..=n {
                    c = c.mul(&f(i));
                }
                want.add_term(BoxPartition::new(k, n, &[r]).unwrap(), c.neg());
            }
            let got = lambda_y_qdual(k, n);
            assert_eq!(got, want, "Gr({k},{n})");
            // y = −ε_n gives the row class O_{n−k}.
            let specialized = got.map_into(|c| c.eval(&RatScalar::var(n, n).neg(), None));
            assert_eq!(specialized, basis(k, n, &[n - k]));
        }
    }
}

#[test]
fn exterior_powers_assemble_lambda_y() {
    for n in 2..=4 {
        for k in 1..n {
            let mut acc: ModuleElement<Y> = ModuleElement::zero(k, n);
            for j in 0..=n - k {
                let l = LocalizationVector::from_fn(k, n, |mu| {
                    let inv: Vec<RatScalar> = mu.one_positions().iter().map(|&i| e_inv(n, i)).collect();
                    elementary(&inv, j, n)
                });
                let wedge = class_from_restrictions(&l);
                acc = acc.add(&wedge.map_into(|c| Y::constant(c.clone())).scale(&Y::var(n).pow(j as u32)));
            }
            assert_eq!(acc, lambda_y_qdual(k, n));
        }
    }
}

fn elementary(xs: &[RatScalar], j: usize, n: usize) -> RatScalar {
    let mut e = vec![RatScalar::zero(n); j + 1];
    e[0] = RatScalar::one(n);
    for x in xs {
        for i in (1..=j).rev() {
            e[i] = e[i].add(&e[i - 1].mul(x));
        }
    }
    e[j].clone()
}

fn non_equivariant(v: &ModuleElement<RatScalar>) -> ModuleElement<RatScalar> {
    let n = v.n();
    v.map_into(|c| {
        let p: LaurentScalar = c.to_laurent().expect("Laurent coefficient");
        let ones = vec![RatScalar::one(0); n];
        let val = p.eval_with(&ones, &ones, |z| RatScalar::from_laurent(LaurentScalar::constant(0, z.clone())));
        RatScalar::from_laurent(LaurentScalar::constant(n, val.to_laurent().unwrap().as_constant().unwrap()))
    })
}

#[test]
fn opposite_classes() {
    for n in 2..=4 {
        for k in 1..n {
            for mu in BoxPartition::all(k, n) {
                let opp = opposite_class(&mu);
                assert_eq!(non_equivariant(&opp), non_equivariant(&basis(k, n, &mu.complement().parts())), "O^{mu}");
            }
        }
    }
    // The opposite divisor ŵ_0 · O_□ is O^∅ in the complement labelling.
    let n = 2;
    let b = basis::<RatScalar>(1, 2, &[1]);
    let v = qk_pairing(&opposite_class(&BoxPartition::empty(1, 2)), &b).unwrap();
    assert_eq!(v, QKValue::new(QPoly::monomial(RatScalar::one(n), 1), 1));
}

#[test]
fn pairing_with_opposite_classes_is_monomial() {
    for n in 2..=4 {
        for k in 1..n {
            for lam in BoxPartition::all(k, n) {
                for mu in BoxPartition::all(k, n) {
                    let v = qk_pairing(&basis(k, n, &lam.parts()), &opposite_class(&mu)).unwrap();
                    assert_eq!(v.den_pow(), 1, "({lam}, O^{mu})");
                    let num = v.numerator();
                    let terms: Vec<_> = num.iter().filter(|(_, c)| !c.is_zero()).collect();
                    assert_eq!(terms.len(), 1, "({lam}, O^{mu}) = {v}");
                    assert!(terms[0].1.is_one() && terms[0].0 >= 0, "({lam}, O^{mu}) = {v}");
                    if lam.contained_in(&mu) {
                        assert_eq!(terms[0].0, 0);
                    }
                }
            }
        }
    }
}

#[test]
fn pairing_with_structure_sheaf() {
    for n in 1..=4 {
        for k in 0..=n {
            for lam in BoxPartition::all(k, n) {
                let v = qk_pairing(&basis(k, n, &lam.parts()), &basis(k, n, &[])).unwrap();
                assert_eq!(v, QKValue::new(QPoly::constant(RatScalar::one(n)), 1));
            }
        }
    }
}

#[test]
fn two_point_invariants() {
    for n in 2..=5 {
        for k in 1..n {
            for lam in BoxPartition::all(k, n) {
                let a: ModuleElement<RatScalar> = ModuleElement::basis(&lam);
                for d in 0..=k.min(n - k) + 1 {
                    for mu in BoxPartition::all(k, n) {
                        let want = if lam.curve_neighborhood(d) == mu { RatScalar::one(n) } else { RatScalar::zero(n) };
                        assert_eq!(kgw_2point(&a, &dual_class(&mu), d), want, "⟨{lam}, {mu}^∨⟩_{d}");
                    }
                }
            }
        }
    }
}

#[test]
fn dual_basis_is_dual() {
    for n in 2..=4 {
        for k in 1..n {
            for lam in BoxPartition::all(k, n) {
                for nu in BoxPartition::all(k, n) {
                    let chi = euler_char_checked(&classical_product(&basis(k, n, &lam.parts()), &dual_class(&nu))).unwrap();
                    let want = if lam == nu { RatScalar::one(n) } else { RatScalar::zero(n) };
                    assert_eq!(chi, want);
                }
            }
        }
    }
}

#[test]
fn euler_characteristic_is_weyl_equivariant() {
    let mut r = rng(23);
    for n in 2..=4 {
        for k in 0..=n {
            let v = element(&mut r, k, n);
            for i in 1..n {
                let lhs = euler_char(&apply_simple(i, &v));
                let rhs = euler_char(&v).substitute(&ParamMap::transposition(n, i, i + 1));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn pairing_is_symmetric_and_weyl_equivariant() {
    let mut r = rng(24);
    for n in 2..=4 {
        for k in 1..n {
            let strip = |v: ModuleElement<QPoly<RatScalar>>| v.map_into(|c| c.coeff(0));
            let a = strip(element(&mut r, k, n));
            let b = strip(element(&mut r, k, n));
            let ab = qk_pairing(&a, &b).unwrap();
            assert_eq!(ab, qk_pairing(&b, &a).unwrap());
            for i in 1..n {
                let lhs = qk_pairing(&apply_simple(i, &a), &apply_simple(i, &b)).unwrap();
                let twist = ParamMap::transposition(n, i, i + 1);
                let rhs = QKValue::new(ab.numerator().substitute(&twist), ab.den_pow());
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn weyl_group_permutes_fixed_point_classes() {
    for n in 2..=4 {
        for k in 1..n {
            for mu in BoxPartition::all(k, n) {
                let e_mu = fixed_point_class::<RatScalar>(&mu);
                for i in 1..n {
                    // s_i w_μ swaps the values i and i+1, i.e. the letters i, i+1.
                    let target = mu.swap_letters(i).unwrap_or_else(|| mu.clone());
                    assert_eq!(apply_simple(i, &e_mu), fixed_point_class(&target), "s_{i} e_{mu}");
                }
            }
        }
    }
}
