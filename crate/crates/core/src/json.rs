//! Algebra and subspace file formats.
//!
//! An algebra file is a JSON object
//! `{ "field": "rational" | "fp:<p>", "dim": n, "basis": [labels],
//!    "table": n x n array of length-n coordinate arrays }`
//! where `table[i][j]` holds the coordinates of `e_i e_j`. A 3-dimensional
//! zeropotent algebra may instead be given by its structural matrix:
//! `{ "field": ..., "zeropotent": 3 x 3 array }`. Scalars are written as
//! exact strings ("3/2", "4 mod 5"); plain JSON integers are also accepted.

use crate::algebra::{default_labels, Algebra, AlgebraError};
use crate::field::{Field, FieldError, FieldSpec, Fp, FpCtx};
use crate::linalg::{Matrix, Subspace};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("cannot convert an algebra over {from} to {to}")]
    Conversion { from: String, to: String },
}

fn shape(msg: impl Into<String>) -> JsonError {
    JsonError::Shape(msg.into())
}

/// An algebra over whichever field its file declared.
#[derive(Debug, Clone)]
pub enum AnyAlgebra {
    Rational(Algebra<BigRational>),
    Prime(Algebra<Fp>),
}

impl AnyAlgebra {
    pub fn field_spec(&self) -> FieldSpec {
        match self {
            AnyAlgebra::Rational(_) => FieldSpec::Rational,
            AnyAlgebra::Prime(a) => FieldSpec::Prime(a.ctx().modulus()),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyAlgebra::Rational(a) => a.dim(),
            AnyAlgebra::Prime(a) => a.dim(),
        }
    }
}

fn scalar_from_value<K: Field>(ctx: &K::Ctx, v: &Value) -> Result<K, JsonError> {
    match v {
        Value::String(s) => Ok(K::parse(ctx, s)?),
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| shape(format!("non-integer numeric scalar {n}")))?;
            Ok(K::from_i64(ctx, i))
        }
        other => Err(shape(format!(
            "scalar must be a string or integer, got {other}"
        ))),
    }
}

fn vector_from_value<K: Field>(ctx: &K::Ctx, v: &Value, dim: usize) -> Result<Vec<K>, JsonError> {
    let arr = v
        .as_array()
        .ok_or_else(|| shape("coordinate vector must be an array"))?;
    if arr.len() != dim {
        return Err(shape(format!(
            "coordinate vector has length {}, expected {dim}",
            arr.len()
        )));
    }
    arr.iter().map(|x| scalar_from_value::<K>(ctx, x)).collect()
}

fn algebra_from_value<K: Field>(ctx: &K::Ctx, root: &Value) -> Result<Algebra<K>, JsonError> {
    let obj = root
        .as_object()
        .ok_or_else(|| shape("algebra file must be a JSON object"))?;

    if let Some(z) = obj.get("zeropotent") {
        let rows = z
            .as_array()
            .ok_or_else(|| shape("\"zeropotent\" must be a 3x3 array"))?;
        if rows.len() != 3 {
            return Err(shape("structural matrix must have 3 rows"));
        }
        let mut m = Matrix::zero(ctx, 3, 3);
        for (i, row) in rows.iter().enumerate() {
            let v = vector_from_value::<K>(ctx, row, 3)?;
            for (j, x) in v.into_iter().enumerate() {
                *m.at_mut(i, j) = x;
            }
        }
        let labels = match obj.get("basis") {
            Some(b) => labels_from_value(b, 3)?,
            None => default_labels(3),
        };
        return Ok(Algebra::from_structural_matrix(ctx, labels, &m)?);
    }

    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| shape("missing or invalid \"dim\""))? as usize;
    let labels = match obj.get("basis") {
        Some(b) => labels_from_value(b, dim)?,
        None => default_labels(dim),
    };
    let table_value = obj.get("table").ok_or_else(|| shape("missing \"table\""))?;
    let rows = table_value
        .as_array()
        .ok_or_else(|| shape("\"table\" must be an array"))?;
    if rows.len() != dim {
        return Err(shape(format!(
            "table has {} rows, expected {dim}",
            rows.len()
        )));
    }
    let mut table = Vec::with_capacity(dim);
    for row in rows {
        let cells = row
            .as_array()
            .ok_or_else(|| shape("table rows must be arrays"))?;
        if cells.len() != dim {
            return Err(shape(format!(
                "table row has {} cells, expected {dim}",
                cells.len()
            )));
        }
        let mut out_row = Vec::with_capacity(dim);
        for cell in cells {
            out_row.push(vector_from_value::<K>(ctx, cell, dim)?);
        }
        table.push(out_row);
    }
    Ok(Algebra::from_table(ctx, labels, table)?)
}

fn labels_from_value(v: &Value, dim: usize) -> Result<Vec<String>, JsonError> {
    let arr = v
        .as_array()
        .ok_or_else(|| shape("\"basis\" must be an array of labels"))?;
    if arr.len() != dim {
        return Err(shape(format!(
            "basis has {} labels, expected {dim}",
            arr.len()
        )));
    }
    arr.iter()
        .map(|x| {
            x.as_str()
                .map(str::to_owned)
                .ok_or_else(|| shape("basis labels must be strings"))
        })
        .collect()
}

/// Parses an algebra file over the field its header declares.
pub fn parse_algebra(text: &str, allow_char2: bool) -> Result<AnyAlgebra, JsonError> {
    let root: Value = serde_json::from_str(text)?;
    let field_text = root
        .get("field")
        .and_then(Value::as_str)
        .unwrap_or("rational");
    let spec = FieldSpec::parse(field_text, allow_char2)?;
    match spec {
        FieldSpec::Rational => Ok(AnyAlgebra::Rational(algebra_from_value::<BigRational>(
            &(),
            &root,
        )?)),
        FieldSpec::Prime(_) => {
            let ctx = FpCtx::new(spec)?;
            Ok(AnyAlgebra::Prime(algebra_from_value::<Fp>(&ctx, &root)?))
        }
    }
}

/// Serializes an algebra back into the file format.
pub fn algebra_to_value<K: Field>(alg: &Algebra<K>) -> Value {
    let n = alg.dim();
    let table: Vec<Value> = (0..n)
        .map(|i| {
            Value::Array(
                (0..n)
                    .map(|j| {
                        Value::Array(
                            alg.basis_product(i, j)
                                .iter()
                                .map(|x| Value::String(x.render()))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    serde_json::json!({
        "field": K::spec(alg.ctx()).to_string(),
        "dim": n,
        "basis": alg.labels(),
        "table": table,
    })
}

/// Reduces a rational algebra mod p. Fails when any denominator vanishes
/// mod p.
pub fn rational_algebra_to_fp(
    alg: &Algebra<BigRational>,
    ctx: &FpCtx,
) -> Result<Algebra<Fp>, JsonError> {
    let n = alg.dim();
    let p = BigInt::from(ctx.modulus());
    let mut table = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let cell: Result<Vec<Fp>, JsonError> = alg
                .basis_product(i, j)
                .iter()
                .map(|q| {
                    let numer = q.numer() % &p;
                    let denom = q.denom() % &p;
                    if denom.is_zero() {
                        return Err(JsonError::Conversion {
                            from: format!("rational (denominator {})", q.denom()),
                            to: format!("fp:{}", ctx.modulus()),
                        });
                    }
                    let to_i64 = |b: &BigInt| -> i64 {
                        let m = ctx.modulus() as i64;
                        let r: BigInt = ((b % m) + m) % m;
                        i64::try_from(r).expect("reduced residue fits")
                    };
                    let numer = Fp::new(to_i64(&numer), ctx);
                    let denom = Fp::new(to_i64(&denom), ctx);
                    Ok(numer.div(&denom)?)
                })
                .collect();
            row.push(cell?);
        }
        table.push(row);
    }
    Ok(Algebra::from_table(ctx, alg.labels().to_vec(), table)?)
}

/// Retargets a parsed algebra at a requested field, when possible.
pub fn retarget(alg: &AnyAlgebra, spec: FieldSpec) -> Result<AnyAlgebra, JsonError> {
    match (alg, spec) {
        (AnyAlgebra::Rational(_), FieldSpec::Rational) => Ok(alg.clone()),
        (AnyAlgebra::Prime(a), FieldSpec::Prime(p)) if a.ctx().modulus() == p => Ok(alg.clone()),
        (AnyAlgebra::Rational(a), FieldSpec::Prime(_)) => {
            let ctx = FpCtx::new(spec)?;
            Ok(AnyAlgebra::Prime(rational_algebra_to_fp(a, &ctx)?))
        }
        (other, want) => Err(JsonError::Conversion {
            from: other.field_spec().to_string(),
            to: want.to_string(),
        }),
    }
}

/// Parses a subspace file `{ "field": ..., "ambient": n, "basis": [[..]] }`
/// over a known context (used for A1 overrides).
pub fn parse_subspace_in<K: Field>(ctx: &K::Ctx, text: &str) -> Result<Subspace<K>, JsonError> {
    let root: Value = serde_json::from_str(text)?;
    let obj = root
        .as_object()
        .ok_or_else(|| shape("subspace file must be a JSON object"))?;
    if let Some(f) = obj.get("field").and_then(Value::as_str) {
        let declared = FieldSpec::parse(f, true)?;
        if declared != K::spec(ctx) {
            return Err(JsonError::Conversion {
                from: declared.to_string(),
                to: K::spec(ctx).to_string(),
            });
        }
    }
    let ambient = obj
        .get("ambient")
        .and_then(Value::as_u64)
        .ok_or_else(|| shape("missing or invalid \"ambient\""))? as usize;
    let rows_value = obj
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| shape("missing \"basis\" array"))?;
    let mut rows = Vec::with_capacity(rows_value.len());
    for row in rows_value {
        rows.push(vector_from_value::<K>(ctx, row, ambient)?);
    }
    Ok(Subspace::from_spanning_rows(ctx, ambient, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_table_file() {
        let text = r#"{
            "field": "rational",
            "dim": 2,
            "basis": ["e", "f"],
            "table": [[["1", "0"], ["0", "0"]], [["0", "0"], ["0", "1"]]]
        }"#;
        let AnyAlgebra::Rational(alg) = parse_algebra(text, false).unwrap() else {
            panic!("expected a rational algebra");
        };
        assert_eq!(alg.dim(), 2);
        assert_eq!(alg.labels(), &["e".to_owned(), "f".to_owned()]);
        assert!(alg.is_associative());
    }

    #[test]
    fn parse_zeropotent_shorthand() {
        let text = r#"{ "field": "fp:5", "zeropotent": [[0,0,1],[0,0,0],[0,0,1]] }"#;
        let AnyAlgebra::Prime(alg) = parse_algebra(text, false).unwrap() else {
            panic!("expected a prime-field algebra");
        };
        assert!(alg.is_zeropotent());
        let (_, rank) = alg.structural_matrix().unwrap();
        assert_eq!(rank, 1);
    }

    #[test]
    fn round_trip_through_value() {
        let text = r#"{ "field": "rational", "dim": 2, "basis": ["e","f"],
                       "table": [[["1/2","0"],["0","0"]],[["0","0"],["-3","1"]]] }"#;
        let AnyAlgebra::Rational(alg) = parse_algebra(text, false).unwrap() else {
            panic!();
        };
        let value = algebra_to_value(&alg);
        let again = parse_algebra(&value.to_string(), false).unwrap();
        let AnyAlgebra::Rational(alg2) = again else {
            panic!()
        };
        assert_eq!(alg, alg2);
    }

    #[test]
    fn char2_needs_flag() {
        let text = r#"{ "field": "fp:2", "dim": 1, "basis": ["e"], "table": [[["1"]]] }"#;
        assert!(parse_algebra(text, false).is_err());
        assert!(parse_algebra(text, true).is_ok());
    }

    #[test]
    fn retarget_rational_to_fp() {
        let text = r#"{ "field": "rational", "dim": 1, "basis": ["e"], "table": [[["3/2"]]] }"#;
        let alg = parse_algebra(text, false).unwrap();
        let AnyAlgebra::Prime(fp) = retarget(&alg, FieldSpec::Prime(5)).unwrap() else {
            panic!();
        };
        // 3/2 = 3 * inverse(2) = 3 * 3 = 4 mod 5.
        assert_eq!(fp.basis_product(0, 0)[0].residue(), 4);
        assert!(retarget(&alg, FieldSpec::Rational).is_ok());
        let back = retarget(&AnyAlgebra::Prime(fp), FieldSpec::Rational);
        assert!(back.is_err());
    }
}
