//! JSON encodings of scalars, partitions, module elements, Bethe roots and
//! structure tables.
//!
//! Integers are written as decimal strings so that coefficients of any size
//! survive a round trip through tools that read numbers as doubles.

use crate::bethe::{BetheRoot, Side};
use crate::combinatorics::BoxPartition;
use crate::module::ModuleElement;
use crate::products::StructureTable;
use crate::scalar::qseries::EXACT;
use crate::scalar::upoly::VarName;
use crate::scalar::{Exp, Int, LaurentScalar, QKValue, QSeries, RatScalar, Ring, UPoly};
use serde_json::{json, Value};
use thiserror::Error;

/// A document that does not decode to the requested type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("missing field `{0}`")]
    Missing(&'static str),
    #[error("field `{field}`: {reason}")]
    Invalid { field: &'static str, reason: String },
    #[error("ring mismatch: expected `{expected}`, found `{found}`")]
    Ring { expected: String, found: String },
    #[error("syntax: {0}")]
    Syntax(String),
}

fn invalid(field: &'static str, reason: impl ToString) -> JsonError {
    JsonError::Invalid { field, reason: reason.to_string() }
}

/// Types with a canonical JSON form.
pub trait Json: Sized {
    /// The name recorded in the `ring` field of module elements.
    fn ring() -> String;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, JsonError>;

    fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("JSON values always serialize")
    }

    fn from_json_str(s: &str) -> Result<Self, JsonError> {
        let v: Value = serde_json::from_str(s).map_err(|e| JsonError::Syntax(e.to_string()))?;
        Self::from_json(&v)
    }
}

fn field<'a>(v: &'a Value, name: &'static str) -> Result<&'a Value, JsonError> {
    v.get(name).ok_or(JsonError::Missing(name))
}

fn usize_field(v: &Value, name: &'static str) -> Result<usize, JsonError> {
    let x = field(v, name)?.as_u64().ok_or_else(|| invalid(name, "expected a non-negative integer"))?;
    usize::try_from(x).map_err(|e| invalid(name, e))
}

fn i32_field(v: &Value, name: &'static str) -> Result<i32, JsonError> {
    let x = field(v, name)?.as_i64().ok_or_else(|| invalid(name, "expected an integer"))?;
    i32::try_from(x).map_err(|e| invalid(name, e))
}

fn array_field<'a>(v: &'a Value, name: &'static str) -> Result<&'a Vec<Value>, JsonError> {
    field(v, name)?.as_array().ok_or_else(|| invalid(name, "expected an array"))
}

fn usize_array(v: &Value, name: &'static str) -> Result<Vec<usize>, JsonError> {
    v.as_array()
        .ok_or_else(|| invalid(name, "expected an array"))?
        .iter()
        .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| invalid(name, "expected non-negative integers")))
        .collect()
}

fn check_n(name: &'static str, want: usize, got: usize) -> Result<(), JsonError> {
    if want == got {
        Ok(())
    } else {
        Err(invalid(name, format!("parameter count {got} differs from n = {want}")))
    }
}

impl Json for LaurentScalar {
    fn ring() -> String {
        "laurent".into()
    }

    fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms().iter().map(|(e, c)| json!({"exp": e.to_vec(), "coef": c.to_string()})).collect();
        json!({"n": self.nvars(), "terms": terms})
    }

    fn from_json(v: &Value) -> Result<Self, JsonError> {
        let n = usize_field(v, "n")?;
        let mut terms = Vec::new();
        for t in array_field(v, "terms")? {
            let exp: Exp = array_field(t, "exp")?
                .iter()
                .map(|x| x.as_i64().map(|x| x as i32).ok_or_else(|| invalid("exp", "expected integers")))
                .collect::<Result<_, _>>()?;
            if exp.len() != n {
                return Err(invalid("exp", format!("length {} differs from n = {n}", exp.len())));
            }
            let coef = field(t, "coef")?.as_str().ok_or_else(|| invalid("coef", "expected a string"))?;
            let c: Int = coef.parse().map_err(|e| invalid("coef", e))?;
            terms.push((exp, c));
        }
        Ok(LaurentScalar::from_terms(n, terms))
    }
}

impl Json for RatScalar {
    fn ring() -> String {
        "rat".into()
    }

    /// `{"num": laurent, "den": laurent}` with the denominator expanded.
    fn to_json(&self) -> Value {
        json!({"num": self.numerator().to_json(), "den": self.denominator().to_json()})
    }

    fn from_json(v: &Value) -> Result<Self, JsonError> {
        let num = LaurentScalar::from_json(field(v, "num")?)?;
        let den = LaurentScalar::from_json(field(v, "den")?)?;
        check_n("den", num.nvars(), den.nvars())?;
        RatScalar::from_fraction(num, &den).map_err(|e| invalid("den", e))
    }
}

impl<C: Ring + Json, V: VarName> Json for UPoly<C, V> {
    fn ring() -> String {
        format!("{}[{}]", C::ring(), V::NAME)
    }

    fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self.coeffs().iter().map(|c| c.to_json()).collect();
        json!({"n": self.nparams(), "var": V::NAME, "low": self.low(), "coeffs": coeffs})
    }

    fn from_json(v: &Value) -> Result<Self, JsonError> {
        let n = usize_field(v, "n")?;
        let var = field(v, "var")?.as_str().unwrap_or_default();
        if var != V::NAME {
            return Err(invalid("var", format!("expected `{}`, found `{var}`", V::NAME)));
        }
        let low = i32_field(v, "low")?;
        let coeffs = array_field(v, "coeffs")?.iter().map(C::from_json).collect::<Result<Vec<_>, _>>()?;
        for c in &coeffs {
            check_n("coeffs", n, c.nparams())?;
        }
        Ok(UPoly::from_coeffs(n, low, coeffs))
    }
}

impl Json for QSeries {
    fn ring() -> String {
        "qseries".into()
    }

    /// `order` is the truncation order, or `"exact"` for exact series.
    fn to_json(&self) -> Value {
        let order = if self.is_exact() { json!("exact") } else { json!(self.order()) };
        let coeffs: Vec<Value> = self.coeffs().iter().map(|c| c.to_json()).collect();
        json!({"n": self.nparams(), "order": order, "coeffs": coeffs})
    }

    fn from_json(v: &Value) -> Result<Self, JsonError> {
        let n = usize_field(v, "n")?;
        let order = match field(v, "order")? {
            Value::String(s) if s == "exact" => EXACT,
            _ => usize_field(v, "order")?,
        };
        let coeffs = array_field(v, "coeffs")?.iter().map(RatScalar::from_json).collect::<Result<Vec<_>, _>>()?;
        for c in &coeffs {
            check_n("coeffs", n, c.nparams())?;
        }
        Ok(QSeries::new(n, order, coeffs))
    }
}

impl Json for QKValue {
    fn ring() -> String {
        "qk".into()
    }

    /// `{"num": qpoly, "den_pow": m}` for `num / (1 − q)^m`.
    fn to_json(&self) -> Value {
        json!({"num": self.numerator().to_json(), "den_pow": self.den_pow()})
    }

    fn from_json(v: &Value) -> Result<Self, JsonError> {
        let num = UPoly::from_json(field(v, "num")?)?;
        let den_pow = usize_field(v, "den_pow")?;
        Ok(QKValue::new(num, u32::try_from(den_pow).map_err(|e| invalid("den_pow", e))?))
    }
}

impl Json for BoxPartition {
    fn ring() -> String {
        "partition".into()
    }

    fn to_json(&self) -> Value {
        json!({"k": self.k(), "n": self.n(), "parts": self.parts()})
    }

    fn from_json(v: &Value) -> Result<Self, JsonError> {
        let k = usize_field(v, "k")?;
        let n = usize_field(v, "n")?;
        let parts = usize_array(field(v, "parts")?, "parts")?;
        BoxPartition::new(k, n, &parts).map_err(|e| invalid("parts", e))
    }
}

impl<C: Ring + Json> Json for ModuleElement<C> {
    fn ring() -> String {
        format!("module({})", C::ring())
    }

    fn to_json(&self) -> Value {
        let coeffs: Vec<Value> =
            self.iter().map(|(lam, c)| json!({"partition": lam.parts(), "value": c.to_json()})).collect();
        json!({"k": self.k(), "n": self.n(), "ring": C::ring(), "coeffs": coeffs})
    }

    fn from_json(v: &Value) -> Result<Self, JsonError> {
        let k = usize_field(v, "k")?;
        let n = usize_field(v, "n")?;
        let ring = field(v, "ring")?.as_str().unwrap_or_default();
        if ring != C::ring() {
            return Err(JsonError::Ring { expected: C::ring(), found: ring.to_string() });
        }
        let mut out = ModuleElement::zero(k, n);
        for t in array_field(v, "coeffs")? {
            let parts = usize_array(field(t, "partition")?, "partition")?;
            let lam = BoxPartition::new(k, n, &parts).map_err(|e| invalid("partition", e))?;
            let c = C::from_json(field(t, "value")?)?;
            check_n("value", n, c.nparams())?;
            out.add_term(lam, c);
        }
        Ok(out)
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Primal => "primal",
        Side::Dual => "dual",
    }
}

impl Json for BetheRoot {
    fn ring() -> String {
        "bethe-root".into()
    }

    fn to_json(&self) -> Value {
        let roots: Vec<Value> = self.roots.iter().map(|x| x.to_json()).collect();
        json!({
            "lambda": self.lambda.to_json(),
            "side": side_name(self.side),
            "order": self.order,
            "roots": roots,
            "residual_history": self.residual_history,
        })
    }

    fn from_json(v: &Value) -> Result<Self, JsonError> {
        let lambda = BoxPartition::from_json(field(v, "lambda")?)?;
        let side = match field(v, "side")?.as_str() {
            Some("primal") => Side::Primal,
            Some("dual") => Side::Dual,
            _ => return Err(invalid("side", "expected `primal` or `dual`")),
        };
        let order = usize_field(v, "order")?;
        let roots = array_field(v, "roots")?.iter().map(QSeries::from_json).collect::<Result<Vec<_>, _>>()?;
        // Dual labels already live on the dual Grassmannian, so both sides
        // carry one root per row of the label's box.
        let want = lambda.k();
        if roots.len() != want {
            return Err(invalid("roots", format!("expected {want} roots, found {}", roots.len())));
        }
        let residual_history = usize_array(field(v, "residual_history")?, "residual_history")?;
        Ok(BetheRoot { lambda, side, order, roots, residual_history })
    }
}

/// All primal roots of one `(n, k, N)` as a single cache document.
pub fn bethe_cache_to_json(k: usize, n: usize, order: usize, roots: &[BetheRoot]) -> Value {
    let roots: Vec<Value> = roots.iter().map(|r| r.to_json()).collect();
    json!({"k": k, "n": n, "order": order, "roots": roots})
}

/// Reads a document written by [`bethe_cache_to_json`], checking its header.
pub fn bethe_cache_from_json(v: &Value, k: usize, n: usize, order: usize) -> Result<Vec<BetheRoot>, JsonError> {
    let header = (usize_field(v, "k")?, usize_field(v, "n")?, usize_field(v, "order")?);
    if header != (k, n, order) {
        return Err(invalid("header", format!("expected (k, n, order) = ({k}, {n}, {order}), found {header:?}")));
    }
    let roots = array_field(v, "roots")?.iter().map(BetheRoot::from_json).collect::<Result<Vec<_>, _>>()?;
    for r in &roots {
        if (r.lambda.k(), r.lambda.n(), r.order) != (k, n, order) {
            return Err(invalid("roots", format!("root for {} does not belong to this document", r.lambda)));
        }
    }
    Ok(roots)
}

/// A structure table as `{"k","n","entries":[{"a","b","product"}]}`.
pub fn structure_table_to_json(k: usize, n: usize, table: &StructureTable) -> Value {
    let entries: Vec<Value> = table
        .iter()
        .map(|((a, b), p)| json!({"a": a.parts(), "b": b.parts(), "product": p.to_json()}))
        .collect();
    json!({"k": k, "n": n, "entries": entries})
}

pub fn structure_table_from_json(v: &Value, k: usize, n: usize) -> Result<StructureTable, JsonError> {
    let header = (usize_field(v, "k")?, usize_field(v, "n")?);
    if header != (k, n) {
        return Err(invalid("header", format!("expected (k, n) = ({k}, {n}), found {header:?}")));
    }
    let mut table = StructureTable::new();
    for e in array_field(v, "entries")? {
        let part = |name: &'static str| -> Result<BoxPartition, JsonError> {
            let p = usize_array(field(e, name)?, name)?;
            BoxPartition::new(k, n, &p).map_err(|err| invalid(name, err))
        };
        let product = ModuleElement::from_json(field(e, "product")?)?;
        if (product.k(), product.n()) != (k, n) {
            return Err(invalid("product", "entry lives on a different Grassmannian"));
        }
        table.insert((part("a")?, part("b")?), product);
    }
    Ok(table)
}
