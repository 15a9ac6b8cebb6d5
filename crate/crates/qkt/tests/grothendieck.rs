use qkt::combinatorics::BoxPartition;
use qkt::grothendieck::{groth_column, groth_double, schubert_polynomial, XPoly};
use qkt::scalar::RatScalar;

fn oplus(nx: usize, n: usize, i: usize, j: usize) -> XPoly<RatScalar> {
    let x = XPoly::var(nx, n, i);
    let t = RatScalar::var(n, j);
    x.add(&XPoly::constant(nx, t.clone())).sub(&x.scale(&t))
}

/// `𝔊_w` from the longest element by isobaric operators in `x`, on `n` variables.
fn via_longest_element(lambda: &BoxPartition) -> XPoly<RatScalar> {
    let n = lambda.n();
    let nx = n;
    let mut g = XPoly::one(nx, n);
    for i in 1..n {
        for j in 1..=n - i {
            g = g.mul(&oplus(nx, n, i, j));
        }
    }
    // v = w^{-1} w0; peel right descents of v.
    let w: Vec<usize> = lambda.to_perm().values().to_vec();
    let mut winv = vec![0; n];
    for (i, &x) in w.iter().enumerate() {
        winv[x - 1] = i + 1;
    }
    let mut v: Vec<usize> = (0..n).map(|i| winv[n - 1 - i]).collect();
    loop {
        let Some(i) = (1..n).find(|&i| v[i - 1] > v[i]) else { break };
        g = g.isobaric(i);
        v.swap(i - 1, i);
    }
    g
}

fn same_up_to_padding(a: &XPoly<RatScalar>, b: &XPoly<RatScalar>) -> bool {
    let pad = |e: &[u16], m: usize| {
        let mut v = e.to_vec();
        v.resize(m, 0);
        v
    };
    let m = a.nx().max(b.nx());
    let ta: Vec<_> = a.terms().iter().map(|(e, c)| (pad(e, m), c.clone())).collect();
    let tb: Vec<_> = b.terms().iter().map(|(e, c)| (pad(e, m), c.clone())).collect();
    ta == tb
}

#[test]
fn corner_removal_matches_longest_element_route() {
    for n in 2..=4 {
        for k in 1..n {
            for lam in BoxPartition::all(k, n) {
                assert!(same_up_to_padding(&groth_double(&lam), &via_longest_element(&lam)), "{lam} in Gr({k},{n})");
            }
        }
    }
}

#[test]
fn columns_match_closed_formula() {
    for n in 2..=6 {
        for k in 1..n {
            for r in 0..=k {
                let lam = BoxPartition::new(k, n, &vec![1; r]).unwrap();
                let col = groth_column(r, k, n).unwrap();
                assert_eq!(*groth_double(&lam), col, "column 1^{r} in Gr({k},{n})");
            }
        }
    }
}

#[test]
fn grothendieck_polynomials_are_symmetric() {
    for n in 2..=5 {
        for k in 1..n {
            for lam in BoxPartition::all(k, n) {
                groth_double(&lam).check_symmetric().unwrap();
            }
        }
    }
}

#[test]
fn degeneracy_locus_form_of_columns() {
    // With N = n − k quotient roots Y and t_i = 1 − ε_{n+1−i}^{-1}, the column
    // polynomial at x_i = 1 − Y_i^{-1} is a sum of products over j.
    let n = 4;
    let nq = 2;
    let m = n + nq;
    let eps = |i: usize| RatScalar::var(m, i);
    let ys: Vec<RatScalar> = (1..=nq).map(|i| RatScalar::var(m, n + i)).collect();
    for r in 0..=nq {
        let g = groth_column(r, nq, nq).unwrap();
        let xs: Vec<RatScalar> = ys.iter().map(|y| RatScalar::one(m).sub(&y.inv().unwrap())).collect();
        let ts: Vec<RatScalar> = (1..=nq).map(|i| RatScalar::one(m).sub(&eps(n + 1 - i).inv().unwrap())).collect();
        let lhs = g.eval(&xs, |c| {
            let num = c.to_laurent().unwrap();
            num.eval_with(&ts, &ts, |z| RatScalar::from_laurent(qkt::scalar::LaurentScalar::constant(m, z.clone())))
        });
        let mut rhs = RatScalar::zero(m);
        if r == 0 {
            rhs = RatScalar::one(m);
        } else {
            for j in 1..=nq + 1 - r {
                let mut num = RatScalar::one(m);
                for y in &ys {
                    num = num.mul(&RatScalar::one(m).sub(&y.inv().unwrap().mul(&eps(n + 1 - j).inv().unwrap())));
                }
                let mut den = RatScalar::one(m);
                for i in (1..=nq + 1 - r).filter(|&i| i != j) {
                    den = den.mul(&RatScalar::one(m).sub(&eps(n + 1 - i).div(&eps(n + 1 - j)).unwrap()));
                }
                rhs = rhs.add(&num.div(&den).unwrap());
            }
        }
        assert_eq!(lhs, rhs, "r = {r}");
    }
}

#[test]
fn restriction_support_is_upper_triangular() {
    // O_λ at the fixed point μ vanishes unless λ ⊆ μ.
    for n in 2..=5 {
        for k in 1..n {
            for lam in BoxPartition::all(k, n) {
                let o = schubert_polynomial(&lam);
                for mu in BoxPartition::all(k, n) {
                    let xs: Vec<RatScalar> = mu.epsilon_index().iter().map(|&i| RatScalar::var(n, i)).collect();
                    let v = o.eval(&xs, |c| c.clone());
                    assert_eq!(v.is_zero(), !lam.contained_in(&mu), "{lam} at {mu}, Gr({k},{n})");
                }
            }
        }
    }
}
