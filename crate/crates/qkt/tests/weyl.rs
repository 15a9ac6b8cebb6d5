mod common;

use common::{basis, element, rng};
use qkt::combinatorics::BoxPartition;
use qkt::module::ModuleElement;
use qkt::scalar::{QPoly, QRing, RatScalar, Ring, YPoly};
use qkt::vertex::apply_generator;
use qkt::weyl::{
    apply_demazure, apply_rho, apply_s0, apply_simple, apply_translation, AffineElement, Direction,
};

type Q = QPoly<RatScalar>;

fn all_basis(k: usize, n: usize) -> Vec<ModuleElement<Q>> {
    BoxPartition::all(k, n).iter().map(ModuleElement::basis).collect()
}

#[test]
fn simple_reflections_are_involutions_and_demazure_idempotent() {
    let mut r = rng(11);
    for n in 2..=4 {
        for k in 0..=n {
            for _ in 0..3 {
                let v = element(&mut r, k, n);
                for i in 1..n {
                    assert_eq!(apply_simple(i, &apply_simple(i, &v)), v);
                    let d = apply_demazure(i, &v);
                    assert_eq!(apply_demazure(i, &d), d);
                }
            }
        }
    }
}

#[test]
fn braid_relations() {
    let mut r = rng(12);
    for n in 3..=5 {
        for k in 1..n {
            let v = element(&mut r, k, n);
            for i in 1..n - 1 {
                let s = |j: usize, w: &ModuleElement<Q>| apply_simple(j, w);
                let d = |j: usize, w: &ModuleElement<Q>| apply_demazure(j, w);
                assert_eq!(s(i, &s(i + 1, &s(i, &v))), s(i + 1, &s(i, &s(i + 1, &v))));
                assert_eq!(d(i, &d(i + 1, &d(i, &v))), d(i + 1, &d(i, &d(i + 1, &v))));
            }
            for i in 1..n {
                for j in i + 2..n {
                    assert_eq!(apply_simple(i, &apply_simple(j, &v)), apply_simple(j, &apply_simple(i, &v)));
                }
            }
        }
    }
}

#[test]
fn demazure_on_schubert_basis() {
    for n in 2..=5 {
        for k in 0..=n {
            for lam in BoxPartition::all(k, n) {
                let w = lam.to_word();
                for i in 1..n {
                    let got = apply_demazure::<Q>(i, &ModuleElement::basis(&lam));
                    let want = if w.bit(i) == 1 && w.bit(i + 1) == 0 {
                        ModuleElement::basis(&BoxPartition::from_word(&w.swap(i)))
                    } else {
                        ModuleElement::basis(&lam)
                    };
                    assert_eq!(got, want, "δ_{i} on {lam}");
                }
            }
        }
    }
}

#[test]
fn weyl_action_commutes_with_yang_baxter_generators() {
    for n in 2..=4 {
        let y: YPoly<RatScalar> = YPoly::var(n);
        for k in 0..=n {
            for lam in BoxPartition::all(k, n) {
                let v = ModuleElement::basis(&lam);
                for (a, b) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
                    for i in 1..n {
                        let lhs = apply_simple(i, &apply_generator(a, b, &y, &v));
                        let rhs = apply_generator(a, b, &y, &apply_simple(i, &v));
                        if lhs.is_zero() && rhs.is_zero() {
                            continue;
                        }
                        assert_eq!(lhs, rhs, "s_{i} t{a}{b} on {lam}, Gr({k},{n})");
                    }
                }
            }
        }
    }
}

#[test]
fn seidel_power_is_q_power() {
    for n in 1..=5 {
        for k in 0..=n {
            for v in all_basis(k, n) {
                let mut w = v.clone();
                for _ in 0..n {
                    w = apply_rho(&w, Direction::Fwd);
                }
                assert_eq!(w, v.scale(&Q::q(n).pow((n - k) as u32)));
                assert_eq!(apply_rho(&apply_rho(&v, Direction::Fwd), Direction::Inv), v);
            }
        }
    }
    let vo: ModuleElement<Q> = basis(0, 4, &[]);
    assert_eq!(apply_rho(&vo, Direction::Fwd), vo.scale(&Q::q(4)));
}

#[test]
fn seidel_conjugates_simple_reflections() {
    let mut r = rng(13);
    for n in 3..=5 {
        for k in 0..=n {
            let v = element(&mut r, k, n);
            for i in 2..n {
                let lhs = apply_rho(&apply_simple(i, &v), Direction::Fwd);
                let rhs = apply_simple(i - 1, &apply_rho(&v, Direction::Fwd));
                assert_eq!(lhs, rhs, "ρ s_{i}, Gr({k},{n})");
            }
        }
    }
}

#[test]
fn affine_reflection() {
    let mut r = rng(14);
    for n in 2..=5 {
        for k in 0..=n {
            let v = element(&mut r, k, n);
            let conj = apply_rho(&apply_simple(1, &apply_rho(&v, Direction::Inv)), Direction::Fwd);
            assert_eq!(apply_s0(&v), conj, "s0 = ρ s1 ρ^-1 on Gr({k},{n})");
            assert_eq!(apply_s0(&apply_s0(&v)), v);
            let full: ModuleElement<Q> = ModuleElement::basis(&BoxPartition::full(k, n));
            assert_eq!(apply_s0(&full), full);
        }
        for k in 1..n {
            let a0 = RatScalar::var(n, n).mul(&RatScalar::var_pow(n, 1, -1));
            let mut hook = vec![n - k];
            hook.extend(std::iter::repeat(1).take(k - 1));
            let q_inv = Q::monomial(RatScalar::one(n), -1);
            let want = basis::<Q>(k, n, &[])
                .scale(&Q::from_rat(&a0))
                .add(&basis::<Q>(k, n, &hook).scale(&q_inv.scale(&RatScalar::one(n).sub(&a0))));
            assert_eq!(apply_s0(&basis(k, n, &[])), want);
        }
    }
}

fn seidel_split(lam: &BoxPartition) -> ModuleElement<Q> {
    let (k, n) = (lam.k(), lam.n());
    let p = lam.padded();
    if k > 0 && p[k - 1] > 0 {
        let mu: Vec<usize> = p.iter().map(|x| x - 1).collect();
        basis::<Q>(k, n, &mu).scale(&Q::q(n))
    } else {
        let mut mu = vec![n - k];
        mu.extend(p.iter().take(k.saturating_sub(1)));
        if k == 0 {
            mu.clear();
        }
        basis(k, n, &mu)
    }
}

#[test]
fn seidel_case_split_and_normal_forms() {
    for n in 2..=4 {
        for k in 0..=n {
            for lam in BoxPartition::all(k, n) {
                let v: ModuleElement<Q> = ModuleElement::basis(&lam);
                let rho = apply_rho(&v, Direction::Fwd);
                if k > 0 {
                    assert_eq!(rho, seidel_split(&lam), "ρ on {lam}");
                }
                let mut word = format!("t{n}");
                for i in (1..n).rev() {
                    word.push_str(&format!(" s{i}"));
                }
                let seidel = AffineElement::parse(n, &word).unwrap();
                assert_eq!(seidel.apply(&v), rho, "t_n s_(n−1)⋯s_1 on {lam}");
                let mut word = String::new();
                for i in (1..n).rev() {
                    word.push_str(&format!("s{i} "));
                }
                word.push_str("t1");
                assert_eq!(AffineElement::parse(n, &word).unwrap().apply(&v), rho);
                for i in 1..=n {
                    let mut w = String::new();
                    for j in i..n {
                        w.push_str(&format!("s{j} "));
                    }
                    w.push_str("rho");
                    for j in 1..i {
                        w.push_str(&format!(" s{j}"));
                    }
                    let lhs = apply_translation(i, &v, Direction::Fwd);
                    assert_eq!(AffineElement::parse(n, &w).unwrap().apply(&v), lhs, "t_{i} on {lam}");
                }
            }
        }
    }
}

#[test]
fn translations_invert() {
    for n in 2..=4 {
        for k in 0..=n {
            for v in all_basis(k, n) {
                for i in 1..=n {
                    let t = apply_translation(i, &v, Direction::Fwd);
                    assert_eq!(apply_translation(i, &t, Direction::Inv), v);
                    let ti = apply_translation(i, &v, Direction::Inv);
                    assert_eq!(apply_translation(i, &ti, Direction::Fwd), v);
                }
            }
        }
    }
}

#[test]
fn normal_form_determines_action() {
    let n = 3;
    let pairs = [("s1 t1", "t2 s1"), ("s2 t2", "t3 s2"), ("rho rho rho", "t1 t2 t3"), ("s0", "rho s1 rho^-1"), ("t3", "rho s1 s2")];
    for (a, b) in pairs {
        let (ea, eb) = (AffineElement::parse(n, a).unwrap(), AffineElement::parse(n, b).unwrap());
        assert_eq!(ea.normal_form(), eb.normal_form(), "{a} vs {b}");
        for k in 0..=n {
            for v in all_basis(k, n) {
                assert_eq!(ea.apply(&v), eb.apply(&v), "{a} vs {b} on Gr({k},{n})");
            }
        }
    }
}

#[test]
fn gr12_translations() {
    let n = 2;
    let a = RatScalar::var(n, 1).mul(&RatScalar::var_pow(n, 2, -1));
    let o = basis::<Q>(1, 2, &[]);
    let want = o.scale(&Q::from_rat(&RatScalar::one(n).sub(&a))).add(&basis::<Q>(1, 2, &[1]).scale(&Q::from_rat(&a)));
    assert_eq!(apply_translation(1, &o, Direction::Fwd), want);
    assert_eq!(apply_translation(2, &o, Direction::Fwd), basis(1, 2, &[1]));
}
