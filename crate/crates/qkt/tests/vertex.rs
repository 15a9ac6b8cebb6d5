use qkt::combinatorics::{BitWord, BoxPartition};
use qkt::module::ModuleElement;
use qkt::scalar::{LaurentScalar, QPoly, RatScalar, Ring, YPoly};
use qkt::vertex::{
    apply_generator, dual_generator, dual_transfer, gamma, qybe_holds, r_matrix, r_matrix_dual, transfer, LMatrix,
};

type Y = YPoly<RatScalar>;
type YQ = YPoly<QPoly<RatScalar>>;

#[test]
fn yang_baxter_equation() {
    assert!(qybe_holds(r_matrix));
    assert!(qybe_holds(r_matrix_dual));
    let perturbed = |z: &LaurentScalar| -> LMatrix {
        let mut r = r_matrix(z);
        r[2][1] = r[2][1].add(z);
        r
    };
    assert!(!qybe_holds(perturbed));
}

/// `R(z)` entries `(out, in)` over an arbitrary ring, basis `00, 01, 10, 11`.
fn r_entry<C: Ring>(z: &C, out: usize, inp: usize, n: usize) -> C {
    match (out, inp) {
        (0, 0) | (3, 3) | (2, 1) => C::one(n),
        (1, 1) => C::one(n).sub(z),
        (1, 2) => z.clone(),
        _ => C::zero(n),
    }
}

/// Dense monodromy on `aux ⊗ (ℂ²)^{⊗n}`, index `aux·2^n + word`, word bit `m` at
/// position `n − m` of the integer.  The vertex at site `m` carries the weight
/// `R(z)[(h, v)][(h', v')]` for the move `(h, v) → (h', v')`, so each factor is
/// the transpose of `R(z)` on `aux ⊗ site`.
fn dense_monodromy(n: usize) -> Vec<Vec<Y>> {
    let dim = 1 << (n + 1);
    let y: Y = YPoly::var(n);
    let mut t: Vec<Vec<Y>> = (0..dim).map(|i| (0..dim).map(|j| if i == j { Y::one(n) } else { Y::zero(n) }).collect()).collect();
    let bit = |x: usize, m: usize| (x >> (n - m)) & 1;
    let aux = |x: usize| x >> n;
    // Site n acts first.
    for m in (1..=n).rev() {
        let z = y.scale(&RatScalar::var_pow(n, m, -1)).neg();
        let mut r: Vec<Vec<Y>> = vec![vec![Y::zero(n); dim]; dim];
        for out in 0..dim {
            for inp in 0..dim {
                let same_rest = (1..=n).filter(|&p| p != m).all(|p| bit(out, p) == bit(inp, p));
                if same_rest {
                    let o = 2 * aux(out) + bit(out, m);
                    let i = 2 * aux(inp) + bit(inp, m);
                    r[out][inp] = r_entry(&z, i, o, n);
                }
            }
        }
        let mut prod = vec![vec![Y::zero(n); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                if r[a][b].is_zero() {
                    continue;
                }
                for c in 0..dim {
                    if !t[b][c].is_zero() {
                        prod[a][c] = prod[a][c].add(&r[a][b].mul(&t[b][c]));
                    }
                }
            }
        }
        t = prod;
    }
    t
}

fn word_index(w: &BitWord) -> usize {
    w.bits().iter().fold(0, |acc, &b| 2 * acc + b as usize)
}

#[test]
fn sweep_matches_dense_monodromy() {
    for n in 1..=3 {
        let t = dense_monodromy(n);
        let y: Y = YPoly::var(n);
        for k in 0..=n {
            for lam in BoxPartition::all(k, n) {
                for i in 0..2u8 {
                    for j in 0..2u8 {
                        let got = apply_generator(i, j, &y, &ModuleElement::basis(&lam));
                        let col = (j as usize) * (1 << n) + word_index(&lam.to_word());
                        for row in 0..(1 << n) {
                            let entry = &t[(i as usize) * (1 << n) + row][col];
                            let bits: Vec<u8> = (1..=n).map(|m| ((row >> (n - m)) & 1) as u8).collect();
                            let w = BitWord::new(bits).unwrap();
                            let mu = BoxPartition::from_word(&w);
                            let c = if mu.k() == got.k() { got.coeff(&mu) } else { Y::zero(n) };
                            assert_eq!(&c, entry, "t{i}{j} on {lam} in Gr({k},{n}) at {w}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn y_degree_is_bounded_by_n() {
    for n in 1..=5 {
        let y: Y = YPoly::var(n);
        for k in 0..=n {
            for lam in BoxPartition::all(k, n) {
                for (i, j) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
                    let r = apply_generator(i, j, &y, &ModuleElement::basis(&lam));
                    for (_, c) in r.iter() {
                        assert!(c.high().unwrap() <= n as i32);
                    }
                }
            }
        }
    }
}

#[test]
fn transfer_matrices_commute() {
    type YY = YPoly<YQ>;
    for n in 1..=4 {
        let y: YY = YPoly::var(n);
        let w: YY = YPoly::constant(YPoly::var(n));
        for k in 0..=n {
            for lam in BoxPartition::all(k, n) {
                let v: ModuleElement<YY> = ModuleElement::basis(&lam);
                let a = transfer(&y, &transfer(&w, &v));
                let b = transfer(&w, &transfer(&y, &v));
                assert_eq!(a, b, "t(y)t(w) on {lam}, Gr({k},{n})");
                if n <= 3 {
                    let c = dual_transfer(&y, &transfer(&w, &v));
                    let d = transfer(&w, &dual_transfer(&y, &v));
                    assert_eq!(c, d, "t~(y)t(w) on {lam}, Gr({k},{n})");
                }
            }
        }
    }
}

#[test]
fn highest_weight_vector() {
    for n in 1..=5 {
        let y: Y = YPoly::var(n);
        let vo: ModuleElement<Y> = ModuleElement::basis(&BoxPartition::empty(0, n));
        let mut prod = Y::one(n);
        for m in 1..=n {
            prod = prod.mul(&Y::one(n).add(&y.scale(&RatScalar::var_pow(n, m, -1))));
        }
        assert_eq!(apply_generator(0, 0, &y, &vo), vo.scale(&prod));
        assert!(apply_generator(0, 1, &y, &vo).is_zero());
        // The lowest weight vector of the dual side.
        let vt: ModuleElement<Y> = ModuleElement::basis(&BoxPartition::empty(n, n));
        assert_eq!(gamma(&vo), vt);
        let mut dprod = Y::one(n);
        for m in 1..=n {
            dprod = dprod.mul(&Y::one(n).add(&y.scale(&RatScalar::var(n, m))));
        }
        assert_eq!(dual_generator(0, 0, &y, &vt), vt.scale(&dprod));
        assert_eq!(dual_generator(1, 1, &y, &vt), vt);
        assert!(dual_generator(1, 0, &y, &vt).is_zero());
    }
}

#[test]
fn gamma_label_is_transpose() {
    for n in 1..=6 {
        for k in 0..=n {
            for lam in BoxPartition::all(k, n) {
                assert_eq!(lam.gamma_label(), lam.transpose());
            }
        }
    }
}
