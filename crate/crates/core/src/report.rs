//! JSON report builders.
//!
//! All reports serialize through `serde_json::Value`, whose object maps are
//! ordered, so identical inputs produce byte-identical output. Exact scalars
//! are rendered as strings.

use crate::algebra::{Algebra, NihilDecomposition};
use crate::catalog::EntryReport;
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::multiplier::{
    describe_multiplier_sets, multipliers_via_left_identity, solve_linear_full, solve_linear_weak,
    solve_restricted_full, solve_restricted_weak, verify_closure, ClosureReport, MultiplierError,
    MultiplierSetDescription, MultiplierSpace,
};
use crate::oracle::OracleOutcome;
use serde_json::{json, Value};

pub fn matrix_to_value<K: Field>(m: &Matrix<K>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| Value::String(m.at(i, j).render()))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn vector_to_value<K: Field>(v: &[K]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.render())).collect())
}

pub fn subspace_to_value<K: Field>(s: &Subspace<K>) -> Value {
    json!({
        "ambient": s.ambient_dim(),
        "dim": s.dim(),
        "basis": matrix_to_value(s.basis()),
    })
}

fn parameter_name(i: usize) -> String {
    const NAMES: &[u8] = b"abcpqrstuvw";
    NAMES
        .get(i)
        .map(|&c| (c as char).to_string())
        .unwrap_or_else(|| format!("x{i}"))
}

/// Renders the general element of a solved space as a matrix of linear
/// expressions in one parameter per canonical basis map.
pub fn general_matrix<K: Field>(ms: &MultiplierSpace<K>) -> Vec<Vec<String>> {
    let n = ms.map_dim;
    let maps = ms.basis_maps();
    let ctx = ms.space.ctx().clone();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut terms: Vec<String> = Vec::new();
                    for (b, map) in maps.iter().enumerate() {
                        let coeff = map.at(i, j);
                        if coeff.is_zero() {
                            continue;
                        }
                        let name = parameter_name(b);
                        let one = K::one(&ctx);
                        let minus_one = one.neg();
                        if *coeff == one {
                            terms.push(name);
                        } else if *coeff == minus_one {
                            terms.push(format!("-{name}"));
                        } else {
                            terms.push(format!("{}*{name}", coeff.render()));
                        }
                    }
                    if terms.is_empty() {
                        "0".to_owned()
                    } else {
                        terms.join(" + ").replace("+ -", "- ")
                    }
                })
                .collect()
        })
        .collect()
}

fn closure_to_value(report: &ClosureReport) -> Value {
    json!({
        "passed": report.passed(),
        "pairs_checked": report.pairs_checked,
        "identity_in_space": report.identity_in_space,
        "violations": report.violations.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
    })
}

/// Solution report for one solved multiplier space: kind, dimension,
/// canonical basis, the pattern of the general element, the complement used
/// (when restricted), and the closure report.
pub fn solution_to_value<K: Field>(ms: &MultiplierSpace<K>) -> Value {
    let closure = verify_closure(ms);
    json!({
        "kind": ms.kind.as_str(),
        "dimension": ms.dim(),
        "basis": ms.basis_maps().iter().map(matrix_to_value).collect::<Vec<_>>(),
        "general_matrix": general_matrix(ms),
        "a1": ms.a1_used.as_ref().map(subspace_to_value),
        "closure": closure_to_value(&closure),
    })
}

pub fn description_to_value<K: Field>(desc: &MultiplierSetDescription<K>) -> Value {
    json!({
        "a0": subspace_to_value(&desc.a0),
        "a1": subspace_to_value(&desc.a1),
        "a1_is_subalgebra": desc.a1_is_subalgebra,
        "weak": {
            "restricted_dim": desc.weak_linear_part.dim(),
            "restricted_basis": desc.weak_linear_part.basis_maps().iter()
                .map(matrix_to_value).collect::<Vec<_>>(),
            "free_part": "every map from the algebra into A0",
            "free_into_dim": desc.weak_free_into_dim,
            "linear_weak_dim": desc.linear_weak_dim,
        },
        "full": {
            "liftable": subspace_to_value(&desc.forced.liftable),
            "notes": desc.forced.notes,
            "forced_per_basis_map": desc.forced.per_map.iter().map(|m| json!({
                "consistent": m.consistent,
                "assignments": m.assignments.iter().map(|f| json!({
                    "pair": [f.left_index, f.right_index],
                    "product": vector_to_value(&f.product),
                    "value": vector_to_value(&f.value),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "product_span": subspace_to_value(&desc.product_span),
            "free_part": "maps into A0 vanishing on the product set",
            "linear_free_dim": desc.linear_full_free_dim,
        },
        "via_subalgebra": desc.via_subalgebra.as_ref().map(|v| json!({
            "weak_dim": v.weak_dim,
            "full_dim": v.full_dim,
        })),
    })
}

/// The full analysis report driven by `analyze`.
pub fn analysis_to_value<K: Field>(
    alg: &Algebra<K>,
    nd: &NihilDecomposition<K>,
) -> Result<Value, MultiplierError> {
    let weak = solve_linear_weak(alg);
    let full = solve_linear_full(alg);
    let restricted_weak = solve_restricted_weak(alg, nd);
    let restricted_full = solve_restricted_full(alg, nd);
    let desc = describe_multiplier_sets(alg, nd)?;

    let associative = alg.is_associative();
    let central = if associative {
        json!({
            "left": subspace_to_value(&alg.left_central_elements()?),
            "right": subspace_to_value(&alg.right_central_elements()?),
            "center": subspace_to_value(&alg.central_elements()?),
        })
    } else {
        Value::Null
    };
    let structural = match alg.structural_matrix() {
        Ok((m, rank)) => json!({ "matrix": matrix_to_value(&m), "rank": rank }),
        Err(_) => Value::Null,
    };
    let via_left = if associative {
        multipliers_via_left_identity(alg)?.map(|t| {
            json!({
                "left_identity": vector_to_value(&t.left_identity),
                "left_central_dim": t.left_central.dim(),
                "left_annihilator_dim": t.left_annihilator.dim(),
                "space_dim": t.space.dim(),
            })
        })
    } else {
        None
    };

    Ok(json!({
        "algebra": crate::json::algebra_to_value(alg),
        "flags": {
            "associative": associative,
            "zeropotent": alg.is_zeropotent(),
            "commutative": alg.is_commutative(),
        },
        "identities": {
            "left": alg.find_left_identity().map(|v| vector_to_value(&v)),
            "right": alg.find_right_identity().map(|v| vector_to_value(&v)),
            "two_sided": alg.find_identity().map(|v| vector_to_value(&v)),
        },
        "annihilators": {
            "left": subspace_to_value(&alg.left_annihilator()),
            "right": subspace_to_value(&alg.right_annihilator()),
            "two_sided": subspace_to_value(&alg.two_sided_annihilator()),
        },
        "central": central,
        "structural": structural,
        "product_span": subspace_to_value(&alg.product_span()),
        "nihil": {
            "a0": subspace_to_value(&nd.a0),
            "a1": subspace_to_value(&nd.a1),
            "a1_is_subalgebra": nd.a1_is_subalgebra,
            "projection": matrix_to_value(&nd.projection),
        },
        "multipliers": {
            "weak": solution_to_value(&weak),
            "full": solution_to_value(&full),
            "weak_restricted": solution_to_value(&restricted_weak),
            "full_restricted": solution_to_value(&restricted_full),
        },
        "decomposition": description_to_value(&desc),
        "via_left_identity": via_left,
    }))
}

pub fn entry_report_to_value(report: &EntryReport) -> Value {
    json!({
        "entry": report.entry,
        "passed": report.passed(),
        "checks": report.checks.iter().map(|c| json!({
            "label": c.label,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    })
}

pub fn oracle_to_value(outcome: &OracleOutcome) -> Value {
    json!({
        "p": outcome.p,
        "mode": outcome.mode.as_str(),
        "weak": {
            "count": outcome.weak_count.to_string(),
            "predicted": outcome.weak_predicted.to_string(),
        },
        "full": {
            "count": outcome.full_count.to_string(),
            "predicted": outcome.full_predicted.to_string(),
        },
        "match": outcome.matches(),
    })
}

/// Renders a `Value` with sorted keys and stable formatting.
pub fn to_pretty_string(v: &Value) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("valid JSON value");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use num_rational::BigRational;
    use std::collections::BTreeMap;

    type Q = BigRational;

    #[test]
    fn general_matrix_of_s1_full() {
        let alg = catalog::get::<Q>(&(), "S1", &BTreeMap::new()).unwrap();
        let full = solve_linear_full(&alg);
        let pattern = general_matrix(&full);
        // Three parameters; diagonal entries agree and two subdiagonal
        // entries agree.
        assert_eq!(pattern[0][0], pattern[1][1]);
        assert_eq!(pattern[1][1], pattern[2][2]);
        assert_eq!(pattern[1][0], pattern[2][1]);
        assert_eq!(pattern[0][1], "0");
        assert_eq!(pattern[0][2], "0");
        assert_eq!(pattern[1][2], "0");
    }

    #[test]
    fn analysis_report_is_deterministic() {
        let alg = catalog::get::<Q>(&(), "C1", &BTreeMap::new()).unwrap();
        let nd = alg.nihil_decomposition(None).unwrap();
        let a = to_pretty_string(&analysis_to_value(&alg, &nd).unwrap());
        let b = to_pretty_string(&analysis_to_value(&alg, &nd).unwrap());
        assert_eq!(a, b);
    }
}
