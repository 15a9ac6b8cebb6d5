//! The batch identity-verification harness behind `qkt verify`.

use qkt::bethe::{
    bethe_product, bethe_residuals, dual_on_shell, on_shell_vector, quantum_atiyah_bott, quantum_euler,
    quantum_localize, schubert_at_roots, solve_bethe, verify_dual_eigenvalues, verify_eigenvalue, Side,
};
use qkt::combinatorics::BoxPartition;
use qkt::localization::{euler_char, kgw_2point, opposite_class, qk_pairing};
use qkt::module::ModuleElement;
use qkt::products::{
    kgw_geometric, lambda_y_operator, mult_lambda_y, product_from_invariants, qk_product, seidel_via_product,
    verify_determinant_relations, verify_functional_relation, verify_whitney, Bundle, Witness, Q, YQ,
};
use qkt::scalar::{QSeries, RatScalar, Render, Ring};
use qkt::vertex::{apply_generator, inverse_identities_hold, qybe_holds, r_at_one_is_flip, r_matrix, r_matrix_dual};
use qkt::weyl::{apply_demazure, apply_rho, apply_simple, Direction};
use serde_json::{json, Value};
use std::fmt::Display;
use std::str::FromStr;

/// The suites `qkt verify --suite` accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Vertex,
    Weyl,
    Products,
    Localization,
    Bethe,
}

pub const ALL_SUITES: [SuiteName; 5] =
    [SuiteName::Vertex, SuiteName::Weyl, SuiteName::Products, SuiteName::Localization, SuiteName::Bethe];

impl SuiteName {
    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::Vertex => "vertex",
            SuiteName::Weyl => "weyl",
            SuiteName::Products => "products",
            SuiteName::Localization => "localization",
            SuiteName::Bethe => "bethe",
        }
    }
}

impl FromStr for SuiteName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ALL_SUITES.iter().copied().find(|x| x.as_str() == s).ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Parses `all` or a comma-separated list of suite names.
pub fn parse_suites(s: &str) -> Result<Vec<SuiteName>, String> {
    if s == "all" {
        return Ok(ALL_SUITES.to_vec());
    }
    s.split(',').map(|x| x.trim().parse()).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub check: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    fn new(name: SuiteName) -> Self {
        SuiteReport { name: name.as_str(), checks: 0, failures: Vec::new() }
    }

    fn record(&mut self, check: impl FnOnce() -> String, outcome: Result<(), String>) {
        self.checks += 1;
        if let Err(witness) = outcome {
            self.failures.push(Failure { check: check(), witness });
        }
    }

    fn equal<T: PartialEq + Display>(&mut self, check: impl FnOnce() -> String, lhs: &T, rhs: &T) {
        let outcome = if lhs == rhs { Ok(()) } else { Err(format!("lhs = {lhs}; rhs = {rhs}")) };
        self.record(check, outcome);
    }

    fn holds(&mut self, check: impl FnOnce() -> String, ok: bool) {
        self.record(check, if ok { Ok(()) } else { Err("identity is false".into()) });
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub n_max: usize,
    pub q_order: usize,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn checks(&self) -> usize {
        self.suites.iter().map(|s| s.checks).sum()
    }

    pub fn failures(&self) -> usize {
        self.suites.iter().map(|s| s.failures.len()).sum()
    }

    pub fn to_json(&self) -> Value {
        let suites: Vec<Value> = self
            .suites
            .iter()
            .map(|s| {
                let failures: Vec<Value> =
                    s.failures.iter().map(|f| json!({"check": f.check, "witness": f.witness})).collect();
                json!({"name": s.name, "checks": s.checks, "failures": failures})
            })
            .collect();
        json!({
            "n_max": self.n_max,
            "q_order": self.q_order,
            "checks": self.checks(),
            "failures": self.failures(),
            "suites": suites,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&format!("{:<14} {:>6} checks {:>4} failures\n", s.name, s.checks, s.failures.len()));
            for f in &s.failures {
                out.push_str(&format!("  FAIL {}: {}\n", f.check, f.witness));
            }
        }
        out.push_str(&format!("{:<14} {:>6} checks {:>4} failures\n", "total", self.checks(), self.failures()));
        out
    }

    pub fn render_latex(&self) -> String {
        let mut out = String::from("\\begin{tabular}{lrr}\nsuite & checks & failures \\\\\n\\hline\n");
        for s in &self.suites {
            out.push_str(&format!("{} & {} & {} \\\\\n", s.name, s.checks, s.failures.len()));
        }
        out.push_str(&format!("\\hline\ntotal & {} & {} \\\\\n\\end{{tabular}}\n", self.checks(), self.failures()));
        out
    }
}

fn witness_text(w: &Witness) -> String {
    format!("at O_{}: lhs = {}; rhs = {}", w.lambda, w.lhs.render_text(), w.rhs.render_text())
}

fn shown<E: Display>(r: Result<Option<Witness>, E>) -> Result<(), String> {
    match r {
        Ok(None) => Ok(()),
        Ok(Some(w)) => Err(witness_text(&w)),
        Err(e) => Err(e.to_string()),
    }
}

fn vertex_suite(s: &mut SuiteReport) {
    s.holds(|| "QYBE for R".into(), qybe_holds(r_matrix));
    s.holds(|| "QYBE for the dual R".into(), qybe_holds(r_matrix_dual));
    s.holds(|| "R inverse identities".into(), inverse_identities_hold());
    s.holds(|| "R(1) is the flip".into(), r_at_one_is_flip());
}

fn weyl_suite(s: &mut SuiteReport, n_max: usize) {
    for n in 1..=n_max {
        for k in 0..=n {
            let q_pow = Q::monomial(RatScalar::one(n), (n - k) as i32);
            for lam in BoxPartition::all(k, n) {
                let v = ModuleElement::<Q>::basis(&lam);
                let at = |what: &str| format!("{what} on O_{lam} in Gr({k},{n})");
                for i in 1..n {
                    s.equal(|| at(&format!("s_{i}^2")), &apply_simple(i, &apply_simple(i, &v)), &v);
                    let d = apply_demazure(i, &v);
                    s.equal(|| at(&format!("δ_{i}^2")), &apply_demazure(i, &d), &d);
                }
                for i in 1..n.saturating_sub(1) {
                    let sw = |a: usize, b: usize| apply_simple(a, &apply_simple(b, &apply_simple(a, &v)));
                    s.equal(|| at(&format!("braid s_{i}")), &sw(i, i + 1), &sw(i + 1, i));
                    let dw = |a: usize, b: usize| apply_demazure(a, &apply_demazure(b, &apply_demazure(a, &v)));
                    s.equal(|| at(&format!("braid δ_{i}")), &dw(i, i + 1), &dw(i + 1, i));
                }
                let vy = ModuleElement::<YQ>::basis(&lam);
                let y = YQ::var(n);
                for (a, b) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
                    for i in 1..n {
                        let lhs = apply_simple(i, &apply_generator(a, b, &y, &vy));
                        let rhs = apply_generator(a, b, &y, &apply_simple(i, &vy));
                        s.equal(|| at(&format!("s_{i} t_{a}{b} = t_{a}{b} s_{i}")), &lhs, &rhs);
                    }
                }
                let mut w = v.clone();
                for _ in 0..n {
                    w = apply_rho(&w, Direction::Fwd);
                }
                s.equal(|| at("ρ^n = q^(n−k)"), &w, &v.scale(&q_pow));
                for i in 2..n {
                    let lhs = apply_rho(&apply_simple(i, &v), Direction::Fwd);
                    let rhs = apply_simple(i - 1, &apply_rho(&v, Direction::Fwd));
                    s.equal(|| at(&format!("ρ s_{i} = s_{} ρ", i - 1)), &lhs, &rhs);
                }
            }
        }
    }
}

fn products_suite(s: &mut SuiteReport, n_max: usize) {
    for n in 1..=n_max {
        for k in 0..=n {
            for lam in BoxPartition::all(k, n) {
                let r = lambda_y_operator(Bundle::QDual, &ModuleElement::basis(&lam)).map(|_| ()).map_err(|e| e.to_string());
                s.record(|| format!("λ_y(Q^∨) ⋆ O_{lam} has q-degree ≤ 1 in Gr({k},{n})"), r);
            }
        }
        for k in 1..n {
            let ctx = format!("Gr({k},{n})");
            s.record(|| format!("functional relation on {ctx}"), shown(verify_functional_relation(k, n)));
            s.record(|| format!("Whitney relation on {ctx}"), shown(verify_whitney(k, n)));
            let det = match verify_determinant_relations(k, n) {
                Ok(None) => Ok(()),
                Ok(Some(w)) => Err(w),
                Err(e) => Err(e.to_string()),
            };
            s.record(|| format!("determinant relations on {ctx}"), det);

            let y = Q::constant(RatScalar::var(n, n).neg());
            let unit = ModuleElement::<Q>::basis(&BoxPartition::empty(k, n));
            let row = ModuleElement::<Q>::basis(&BoxPartition::new(k, n, &[n - k]).expect("row fits"));
            s.equal(|| format!("λ at y = −ε_n gives the full row on {ctx}"), &mult_lambda_y(Bundle::QDual, &y, &unit), &row);

            let parts = BoxPartition::all(k, n);
            let max_degree = k.min(n - k) + 1;
            for a in &parts {
                let oa = ModuleElement::<Q>::basis(a);
                match seidel_via_product(a) {
                    Ok(v) => s.equal(|| format!("Seidel through the product at O_{a} on {ctx}"), &v, &apply_rho(&oa, Direction::Fwd)),
                    Err(e) => s.record(|| format!("Seidel through the product at O_{a} on {ctx}"), Err(e.to_string())),
                }
                for b in &parts {
                    let ob = ModuleElement::<Q>::basis(b);
                    let (ab, ba) = match (qk_product(&oa, &ob), qk_product(&ob, &oa)) {
                        (Ok(x), Ok(y)) => (x, y),
                        (Err(e), _) | (_, Err(e)) => {
                            s.record(|| format!("O_{a} ⋆ O_{b} on {ctx}"), Err(e.to_string()));
                            continue;
                        }
                    };
                    s.equal(|| format!("O_{a} ⋆ O_{b} is commutative on {ctx}"), &ab, &ba);
                    let via = product_from_invariants(&ModuleElement::basis(a), b, max_degree);
                    s.equal(|| format!("structure recursion for O_{a} ⋆ O_{b} on {ctx}"), &via, &ab);
                    for c in &parts {
                        let oc = ModuleElement::<Q>::basis(c);
                        let lhs = qk_product(&ab, &oc);
                        let rhs = qk_product(&ob, &oc).and_then(|bc| qk_product(&oa, &bc));
                        let outcome = match (lhs, rhs) {
                            (Ok(l), Ok(r)) if l == r => Ok(()),
                            (Ok(l), Ok(r)) => Err(format!("lhs = {l}; rhs = {r}")),
                            (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
                        };
                        s.record(|| format!("associativity at (O_{a}, O_{b}, O_{c}) on {ctx}"), outcome);
                    }
                }
            }
        }
    }
}

fn localization_suite(s: &mut SuiteReport, n_max: usize) {
    for n in 1..=n_max {
        for k in 0..=n {
            let ctx = format!("Gr({k},{n})");
            let parts = BoxPartition::all(k, n);
            for lam in &parts {
                let o = ModuleElement::<RatScalar>::basis(lam);
                s.equal(|| format!("χ(O_{lam}) = 1 on {ctx}"), &euler_char(&o), &RatScalar::one(n));
                for mu in &parts {
                    let outcome = match qk_pairing(&o, &opposite_class(mu)) {
                        Ok(p) => {
                            let monomials = p.numerator().coeffs().iter().filter(|c| !c.is_zero()).count();
                            if p.den_pow() == 1 && monomials == 1 {
                                Ok(())
                            } else {
                                Err(format!("(O_{lam}, O^{mu}) = {p}"))
                            }
                        }
                        Err(e) => Err(e.to_string()),
                    };
                    s.record(|| format!("(O_{lam}, O^{mu}) is a monomial over (1 − q) on {ctx}"), outcome);
                    if 0 < k && k < n {
                        let om = ModuleElement::<RatScalar>::basis(mu);
                        for d in 0..=1 {
                            s.equal(
                                || format!("⟨O_{lam}, O_{mu}⟩_{d} from curve neighbourhoods on {ctx}"),
                                &kgw_2point(&o, &om, d),
                                &kgw_geometric(&[&o, &om], d),
                            );
                        }
                    }
                }
            }
        }
    }
}

fn bethe_suite(s: &mut SuiteReport, n_max: usize, order: usize) {
    let geometric = |n: usize| QSeries::new(n, order, vec![RatScalar::one(n); order + 1]);
    for n in 1..=n_max {
        for k in 0..=n {
            let ctx = format!("Gr({k},{n})");
            let parts = BoxPartition::all(k, n);
            for lam in &parts {
                let outcome = solve_bethe(lam, Side::Primal, order).map_err(|e| e.to_string()).and_then(|root| {
                    let bad = bethe_residuals(&root.roots, n, Side::Primal).iter().position(|r| !r.truncate(order).is_zero());
                    match bad {
                        None => Ok(()),
                        Some(i) => Err(format!("equation {i} has a residual below q^{}", order + 1)),
                    }
                });
                s.record(|| format!("Bethe equations at {lam} on {ctx}"), outcome);
                let eig = verify_eigenvalue(lam, order).map_err(|e| e.to_string());
                s.record(|| format!("transfer eigenvalue at b_{lam} on {ctx}"), eig.and_then(|ok| ok.then_some(()).ok_or_else(|| "mismatch".into())));
                if 0 < k && k < n {
                    let eig = verify_dual_eigenvalues(lam, order).map_err(|e| e.to_string());
                    s.record(
                        || format!("dual eigenvalues at b_{lam} on {ctx}"),
                        eig.and_then(|ok| ok.then_some(()).ok_or_else(|| "mismatch".into())),
                    );
                }
            }
            let one = ModuleElement::<RatScalar>::basis(&BoxPartition::empty(k, n));
            match quantum_atiyah_bott(&one, order) {
                Ok(v) => s.equal(|| format!("quantum Atiyah–Bott of O_∅ on {ctx}"), &v, &geometric(n)),
                Err(e) => s.record(|| format!("quantum Atiyah–Bott of O_∅ on {ctx}"), Err(e.to_string())),
            }
            if k == 0 || k == n {
                continue;
            }
            let mut inv_sum = QSeries::zero_to(n, order);
            for lam in &parts {
                match quantum_euler(lam, order).map_err(|e| e.to_string()).and_then(|e| e.invert_to(order).map_err(|e| e.to_string())) {
                    Ok(inv) => inv_sum = inv_sum.add(&inv),
                    Err(e) => s.record(|| format!("Eu_q({lam}) on {ctx}"), Err(e)),
                }
                for mu in &parts {
                    let got = quantum_localize(&ModuleElement::basis(mu), lam, order);
                    let want = schubert_at_roots(mu, lam, order);
                    match (got, want) {
                        (Ok(g), Ok(w)) => s.equal(|| format!("(O_{mu}, b_{lam}) = G_{mu} at the roots on {ctx}"), &g, &w),
                        (Err(e), _) | (_, Err(e)) => s.record(|| format!("(O_{mu}, b_{lam}) on {ctx}"), Err(e.to_string())),
                    }
                    let label = || format!("b_{lam} ⋆ b_{mu} on {ctx}");
                    let outcome = bethe_product(lam, mu, order).map_err(|e| e.to_string()).and_then(|p| {
                        if lam != mu {
                            return if p.is_zero() { Ok(()) } else { Err(format!("nonzero: {p}")) };
                        }
                        let b = on_shell_vector(lam, order).map_err(|e| e.to_string())?.element;
                        let eu = quantum_euler(lam, order).map_err(|e| e.to_string())?;
                        let want = b.scale(&eu).map(|c| c.truncate(order));
                        if p == want {
                            Ok(())
                        } else {
                            Err(format!("lhs = {p}; rhs = {want}"))
                        }
                    });
                    s.record(label, outcome);
                }
            }
            s.equal(|| format!("Σ 1/Eu_q = 1/(1 − q) on {ctx}"), &inv_sum, &geometric(n));
            for lam_dual in BoxPartition::all(n - k, n) {
                let r = dual_on_shell(&lam_dual, order).map(|_| ()).map_err(|e| e.to_string());
                s.record(|| format!("dual Bethe vector for {lam_dual} on {ctx}"), r);
            }
        }
    }
}

/// Runs the requested suites on every `Gr(k,n)` with `n ≤ n_max`.
pub fn run_suites(suites: &[SuiteName], n_max: usize, q_order: usize) -> Report {
    let mut out = Vec::new();
    for &name in suites {
        let mut s = SuiteReport::new(name);
        match name {
            SuiteName::Vertex => vertex_suite(&mut s),
            SuiteName::Weyl => weyl_suite(&mut s, n_max),
            SuiteName::Products => products_suite(&mut s, n_max),
            SuiteName::Localization => localization_suite(&mut s, n_max),
            SuiteName::Bethe => bethe_suite(&mut s, n_max, q_order),
        }
        out.push(s);
    }
    Report { n_max, q_order, suites: out }
}
