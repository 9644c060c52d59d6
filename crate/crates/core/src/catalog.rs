//! Bundled catalog of every 3-dimensional associative and zeropotent algebra
//! family handled by the solvers, together with the expected answers the
//! regression suite verifies: multiplier-space dimensions, two-sided
//! annihilators, structural flags, and (for a few entries) the exact entry
//! constraints the canonical bases must satisfy.
//!
//! Families: unital U0-U4, curled C0-C4, straight S1-S4, waved W1-W10 with
//! W3 parameterized by k, zeropotent Z0-Z9 with Z4 and Z7 parameterized by a.
//! Parameterized entries are instantiated at caller-supplied field values.

use crate::algebra::{default_labels, Algebra};
use crate::field::{Field, FieldSpec};
use crate::linalg::{Matrix, Subspace};
use crate::multiplier::{solve_linear_full, solve_linear_weak};
use std::collections::BTreeMap;

pub type Params<K> = BTreeMap<String, K>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("entry {entry} requires parameter {name:?}")]
    MissingParameter { entry: String, name: String },
    #[error("entry {entry} does not take parameter {name:?}")]
    UnexpectedParameter { entry: String, name: String },
    #[error("expected dimensions assume characteristic != 2")]
    CharacteristicTwo,
}

/// A coefficient in a fixture table: an integer or a named parameter.
#[derive(Debug, Clone, Copy)]
pub enum Coef {
    Int(i64),
    Param(&'static str),
}

use Coef::{Int, Param};

const ZV: [Coef; 3] = [Int(0), Int(0), Int(0)];
const VE: [Coef; 3] = [Int(1), Int(0), Int(0)];
const VF: [Coef; 3] = [Int(0), Int(1), Int(0)];
const VG: [Coef; 3] = [Int(0), Int(0), Int(1)];
const VNE: [Coef; 3] = [Int(-1), Int(0), Int(0)];
const VNF: [Coef; 3] = [Int(0), Int(-1), Int(0)];

#[derive(Debug, Clone, Copy)]
enum EntryDef {
    /// Sparse multiplication table: (i, j, coordinates of e_i e_j).
    Table(&'static [(usize, usize, [Coef; 3])]),
    /// Structural matrix rows (fg, ge, ef) of a zeropotent algebra.
    Structural([[Coef; 3]; 3]),
}

#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub family: &'static str,
    pub parameters: &'static [&'static str],
    def: EntryDef,
}

/// One linear constraint on map entries: sum of coeff * t[row][col] = 0.
pub type PatternConstraint = &'static [(usize, usize, i64)];

/// Everything the regression suite checks for one entry.
#[derive(Debug, Clone)]
pub struct Expected {
    pub weak_dim: usize,
    pub full_dim: usize,
    pub a0_rows: Vec<Vec<i64>>,
    pub associative: bool,
    pub zeropotent: bool,
    pub left_identity: bool,
    pub right_identity: bool,
    pub unital: bool,
    pub weak_pattern: Option<&'static [PatternConstraint]>,
    pub full_pattern: Option<&'static [PatternConstraint]>,
}

static ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "U0",
        family: "unital",
        parameters: &[],
        def: EntryDef::Table(&[(0, 0, VE), (0, 1, VF), (0, 2, VG), (1, 0, VF), (2, 0, VG)]),
    },
    CatalogEntry {
        name: "U1",
        family: "unital",
        parameters: &[],
        def: EntryDef::Table(&[
            (0, 0, VE),
            (0, 1, VF),
            (0, 2, VG),
            (1, 0, VF),
            (1, 2, VF),
            (2, 0, VG),
            (2, 1, VNF),
            (2, 2, VE),
        ]),
    },
    CatalogEntry {
        name: "U2",
        family: "unital",
        parameters: &[],
        def: EntryDef::Table(&[(0, 0, VE), (1, 1, VF), (2, 2, VG)]),
    },
    CatalogEntry {
        name: "U3",
        family: "unital",
        parameters: &[],
        def: EntryDef::Table(&[(0, 0, VE), (1, 1, VF), (1, 2, VG), (2, 1, VG)]),
    },
    CatalogEntry {
        name: "U4",
        family: "unital",
        parameters: &[],
        def: EntryDef::Table(&[
            (0, 0, VE),
            (0, 1, VF),
            (0, 2, VG),
            (1, 0, VF),
            (1, 1, VG),
            (2, 0, VG),
        ]),
    },
    CatalogEntry {
        name: "C0",
        family: "curled",
        parameters: &[],
        def: EntryDef::Table(&[]),
    },
    CatalogEntry {
        name: "C1",
        family: "curled",
        parameters: &[],
        def: EntryDef::Table(&[(1, 2, VE), (2, 1, VNE)]),
    },
    CatalogEntry {
        name: "C2",
        family: "curled",
        parameters: &[],
        def: EntryDef::Table(&[(1, 0, VE), (1, 1, VF), (2, 1, VG)]),
    },
    CatalogEntry {
        name: "C3",
        family: "curled",
        parameters: &[],
        def: EntryDef::Table(&[(2, 0, VE), (2, 1, VF), (2, 2, VG)]),
    },
    CatalogEntry {
        name: "C4",
        family: "curled",
        parameters: &[],
        def: EntryDef::Table(&[(0, 2, VE), (1, 2, VF), (2, 2, VG)]),
    },
    CatalogEntry {
        name: "S1",
        family: "straight",
        parameters: &[],
        def: EntryDef::Table(&[(0, 0, VF), (0, 1, VG), (1, 0, VG)]),
    },
    CatalogEntry {
        name: "S2",
        family: "straight",
        parameters: &[],
        def: EntryDef::Table(&[(0, 0, VE), (1, 1, VG)]),
    },
    CatalogEntry {
        name: "S3",
        family: "straight",
        parameters: &[],
        def: EntryDef::Table(&[(0, 0, VE), (1, 1, VF)]),
    },
    CatalogEntry {
        name: "S4",
        family: "straight",
        parameters: &[],
        def: EntryDef::Table(&[(0, 0, VE), (0, 1, VF), (1, 0, VF)]),
    },
    CatalogEntry {
        name: "W1",
        family: "waved",
        parameters: &[],
        def: EntryDef::Table(&[(2, 2, VE)]),
    },
    CatalogEntry {
        name: "W2",
        family: "waved",
        parameters: &[],
        def: EntryDef::Table(&[(2, 1, VE)]),
    },
    CatalogEntry {
        name: "W3",
        family: "waved",
        parameters: &["k"],
        def: EntryDef::Table(&[(1, 1, VE), (2, 1, [Param("k"), Int(0), Int(0)]), (2, 2, VE)]),
    },
    CatalogEntry {
        name: "W4",
        family: "waved",
        parameters: &[],
        def: EntryDef::Table(&[(0, 0, VE)]),
    },
    CatalogEntry {
        name: "W5",
        family: "waved",
        parameters: &[],
        def: EntryDef::Table(&[(2, 1, VF), (2, 2, VG)]),
    },
    CatalogEntry {
        name: "W6",
        family: "waved",
        parameters: &[],
        def: EntryDef::Table(&[(1, 2, VF), (2, 2, VG)]),
    },
    CatalogEntry {
        name: "W7",
        family: "waved",
        parameters: &[],
        def: EntryDef::Table(&[(0, 0, VE), (2, 1, VF), (2, 2, VG)]),
    },
    CatalogEntry {
        name: "W8",
        family: "waved",
        parameters: &[],
        def: EntryDef::Table(&[(0, 0, VE), (1, 2, VF), (2, 2, VG)]),
    },
    CatalogEntry {
        name: "W9",
        family: "waved",
        parameters: &[],
        def: EntryDef::Table(&[(0, 1, VE), (1, 0, VE), (1, 1, VF), (2, 1, VG)]),
    },
    CatalogEntry {
        name: "W10",
        family: "waved",
        parameters: &[],
        def: EntryDef::Table(&[(0, 1, VE), (1, 0, VE), (1, 1, VF), (1, 2, VG)]),
    },
    CatalogEntry {
        name: "Z0",
        family: "zeropotent",
        parameters: &[],
        def: EntryDef::Structural([ZV, ZV, ZV]),
    },
    CatalogEntry {
        name: "Z1",
        family: "zeropotent",
        parameters: &[],
        def: EntryDef::Structural([ZV, ZV, VG]),
    },
    CatalogEntry {
        name: "Z2",
        family: "zeropotent",
        parameters: &[],
        def: EntryDef::Structural([VG, ZV, VG]),
    },
    CatalogEntry {
        name: "Z3",
        family: "zeropotent",
        parameters: &[],
        def: EntryDef::Structural([VF, VNE, ZV]),
    },
    CatalogEntry {
        name: "Z4",
        family: "zeropotent",
        parameters: &["a"],
        def: EntryDef::Structural([ZV, [Int(0), Int(1), Param("a")], VG]),
    },
    CatalogEntry {
        name: "Z5",
        family: "zeropotent",
        parameters: &[],
        def: EntryDef::Structural([VF, ZV, VG]),
    },
    CatalogEntry {
        name: "Z6",
        family: "zeropotent",
        parameters: &[],
        def: EntryDef::Structural([[Int(0), Int(1), Int(1)], VG, VG]),
    },
    CatalogEntry {
        name: "Z7",
        family: "zeropotent",
        parameters: &["a"],
        def: EntryDef::Structural([[Int(1), Param("a"), Int(0)], VF, VG]),
    },
    CatalogEntry {
        name: "Z8",
        family: "zeropotent",
        parameters: &[],
        def: EntryDef::Structural([
            [Int(1), Int(2), Int(2)],
            [Int(0), Int(1), Int(2)],
            [Int(0), Int(0), Int(1)],
        ]),
    },
    CatalogEntry {
        name: "Z9",
        family: "zeropotent",
        parameters: &[],
        def: EntryDef::Structural([
            [Int(1), Int(3), Int(3)],
            [Int(0), Int(1), Int(3)],
            [Int(0), Int(0), Int(1)],
        ]),
    },
];

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn find(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::UnknownEntry(name.to_owned()))
}

fn resolve<K: Field>(
    ctx: &K::Ctx,
    entry: &CatalogEntry,
    params: &Params<K>,
    c: Coef,
) -> Result<K, CatalogError> {
    match c {
        Int(v) => Ok(K::from_i64(ctx, v)),
        Param(name) => params
            .get(name)
            .cloned()
            .ok_or_else(|| CatalogError::MissingParameter {
                entry: entry.name.to_owned(),
                name: name.to_owned(),
            }),
    }
}

fn check_params<K: Field>(entry: &CatalogEntry, params: &Params<K>) -> Result<(), CatalogError> {
    for name in params.keys() {
        if !entry.parameters.contains(&name.as_str()) {
            return Err(CatalogError::UnexpectedParameter {
                entry: entry.name.to_owned(),
                name: name.clone(),
            });
        }
    }
    for required in entry.parameters {
        if !params.contains_key(*required) {
            return Err(CatalogError::MissingParameter {
                entry: entry.name.to_owned(),
                name: required.to_string(),
            });
        }
    }
    Ok(())
}

/// Instantiates a catalog entry over the requested field.
pub fn get<K: Field>(
    ctx: &K::Ctx,
    name: &str,
    params: &Params<K>,
) -> Result<Algebra<K>, CatalogError> {
    let entry = find(name)?;
    check_params::<K>(entry, params)?;
    let labels = default_labels(3);
    match entry.def {
        EntryDef::Table(cells) => {
            let mut table = vec![vec![vec![K::zero(ctx); 3]; 3]; 3];
            for &(i, j, ref cell) in cells {
                for (k, coef) in cell.iter().enumerate() {
                    table[i][j][k] = resolve(ctx, entry, params, *coef)?;
                }
            }
            Ok(Algebra::from_table(ctx, labels, table).expect("fixture tables are 3x3x3"))
        }
        EntryDef::Structural(rows) => {
            let mut m = Matrix::zero(ctx, 3, 3);
            for (i, row) in rows.iter().enumerate() {
                for (j, coef) in row.iter().enumerate() {
                    *m.at_mut(i, j) = resolve(ctx, entry, params, *coef)?;
                }
            }
            Ok(Algebra::from_structural_matrix(ctx, labels, &m)
                .expect("structural fixtures are 3x3"))
        }
    }
}

// Entry constraints of the canonical bases, straight from the displayed
// parameterized matrix families. Each inner slice is one vanishing linear
// combination of map entries t[row][col], zero-indexed.
static S1_WEAK: &[PatternConstraint] = &[
    &[(0, 1, 1)],
    &[(0, 2, 1)],
    &[(1, 2, 1)],
    &[(0, 0, 1), (1, 1, -1)],
];
static S1_FULL: &[PatternConstraint] = &[
    &[(0, 1, 1)],
    &[(0, 2, 1)],
    &[(1, 2, 1)],
    &[(0, 0, 1), (1, 1, -1)],
    &[(1, 1, 1), (2, 2, -1)],
    &[(1, 0, 1), (2, 1, -1)],
];
static C1_WEAK: &[PatternConstraint] = &[
    &[(1, 0, 1)],
    &[(1, 2, 1)],
    &[(2, 0, 1)],
    &[(2, 1, 1)],
    &[(1, 1, 1), (2, 2, -1)],
];
static C1_FULL: &[PatternConstraint] = &[
    &[(1, 0, 1)],
    &[(1, 2, 1)],
    &[(2, 0, 1)],
    &[(2, 1, 1)],
    &[(1, 1, 1), (2, 2, -1)],
    &[(0, 0, 1), (1, 1, -1)],
];
static W1_WEAK: &[PatternConstraint] = &[&[(2, 0, 1)], &[(2, 1, 1)]];
static W1_FULL: &[PatternConstraint] = &[
    &[(1, 0, 1)],
    &[(2, 0, 1)],
    &[(2, 1, 1)],
    &[(0, 0, 1), (2, 2, -1)],
];
static W2_WEAK: &[PatternConstraint] = C1_WEAK;
static W2_FULL: &[PatternConstraint] = C1_FULL;
static W5_WEAK: &[PatternConstraint] = C1_WEAK;
static W5_FULL: &[PatternConstraint] = &[
    &[(0, 1, 1)],
    &[(0, 2, 1)],
    &[(1, 0, 1)],
    &[(1, 2, 1)],
    &[(2, 0, 1)],
    &[(2, 1, 1)],
    &[(1, 1, 1), (2, 2, -1)],
];
static W9_WEAK: &[PatternConstraint] = &[
    &[(0, 2, 1)],
    &[(1, 0, 1)],
    &[(1, 2, 1)],
    &[(2, 0, 1)],
    &[(2, 1, 1)],
    &[(0, 0, 1), (1, 1, -1)],
    &[(1, 1, 1), (2, 2, -1)],
];
static Z2_WEAK: &[PatternConstraint] = &[
    &[(1, 0, 1)],
    &[(1, 2, 1)],
    &[(0, 1, 1), (2, 1, -1)],
    &[(0, 0, 1), (1, 1, -1), (2, 0, -1)],
    &[(0, 2, 1), (1, 1, 1), (2, 2, -1)],
];
static Z2_FULL: &[PatternConstraint] = &[
    &[(0, 2, 1)],
    &[(1, 0, 1)],
    &[(1, 2, 1)],
    &[(2, 1, 1), (0, 1, -1)],
    &[(2, 0, 1), (0, 0, -1), (1, 1, 1)],
    &[(2, 2, 1), (1, 1, -1)],
];

/// The expected answers for an entry at the given parameter values.
pub fn expected<K: Field>(name: &str, params: &Params<K>) -> Result<Expected, CatalogError> {
    let entry = find(name)?;
    check_params::<K>(entry, params)?;
    let full3 = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    let ke = vec![vec![1, 0, 0]];
    let kg = vec![vec![0, 0, 1]];
    let base = Expected {
        weak_dim: 0,
        full_dim: 0,
        a0_rows: vec![],
        associative: true,
        zeropotent: false,
        left_identity: false,
        right_identity: false,
        unital: false,
        weak_pattern: None,
        full_pattern: None,
    };
    let e = match name {
        "C0" => Expected {
            weak_dim: 9,
            full_dim: 9,
            a0_rows: full3,
            zeropotent: true,
            ..base
        },
        "U0" | "U2" | "U3" | "U4" => Expected {
            weak_dim: 3,
            full_dim: 3,
            left_identity: true,
            right_identity: true,
            unital: true,
            ..base
        },
        "U1" => Expected {
            weak_dim: 1,
            full_dim: 1,
            left_identity: true,
            right_identity: true,
            unital: true,
            ..base
        },
        "C1" => Expected {
            weak_dim: 4,
            full_dim: 3,
            a0_rows: ke,
            zeropotent: true,
            weak_pattern: Some(C1_WEAK),
            full_pattern: Some(C1_FULL),
            ..base
        },
        "C2" => Expected {
            weak_dim: 1,
            full_dim: 1,
            ..base
        },
        "C3" => Expected {
            weak_dim: 1,
            full_dim: 1,
            left_identity: true,
            ..base
        },
        "C4" => Expected {
            weak_dim: 1,
            full_dim: 1,
            right_identity: true,
            ..base
        },
        "S1" => Expected {
            weak_dim: 5,
            full_dim: 3,
            a0_rows: kg,
            weak_pattern: Some(S1_WEAK),
            full_pattern: Some(S1_FULL),
            ..base
        },
        "S2" | "S3" | "S4" => Expected {
            weak_dim: 5,
            full_dim: 3,
            a0_rows: kg,
            ..base
        },
        "W1" => Expected {
            weak_dim: 7,
            full_dim: 5,
            a0_rows: vec![vec![1, 0, 0], vec![0, 1, 0]],
            weak_pattern: Some(W1_WEAK),
            full_pattern: Some(W1_FULL),
            ..base
        },
        "W2" => Expected {
            weak_dim: 4,
            full_dim: 3,
            a0_rows: ke,
            weak_pattern: Some(W2_WEAK),
            full_pattern: Some(W2_FULL),
            ..base
        },
        "W3" => {
            let k_is_zero = params.get("k").map(Field::is_zero).unwrap_or(false);
            Expected {
                weak_dim: if k_is_zero { 6 } else { 4 },
                full_dim: 3,
                a0_rows: ke,
                ..base
            }
        }
        "W4" => Expected {
            weak_dim: 7,
            full_dim: 5,
            a0_rows: vec![vec![0, 1, 0], vec![0, 0, 1]],
            ..base
        },
        "W5" => Expected {
            weak_dim: 4,
            full_dim: 2,
            a0_rows: ke,
            weak_pattern: Some(W5_WEAK),
            full_pattern: Some(W5_FULL),
            ..base
        },
        "W6" => Expected {
            weak_dim: 4,
            full_dim: 2,
            a0_rows: ke,
            ..base
        },
        "W7" => Expected {
            weak_dim: 2,
            full_dim: 2,
            left_identity: true,
            ..base
        },
        "W8" => Expected {
            weak_dim: 2,
            full_dim: 2,
            right_identity: true,
            ..base
        },
        "W9" => Expected {
            weak_dim: 2,
            full_dim: 2,
            right_identity: true,
            weak_pattern: Some(W9_WEAK),
            full_pattern: Some(W9_WEAK),
            ..base
        },
        "W10" => Expected {
            weak_dim: 2,
            full_dim: 2,
            left_identity: true,
            ..base
        },
        "Z0" => Expected {
            weak_dim: 9,
            full_dim: 9,
            a0_rows: full3,
            zeropotent: true,
            ..base
        },
        "Z1" => Expected {
            weak_dim: 4,
            full_dim: 3,
            a0_rows: kg,
            zeropotent: true,
            ..base
        },
        "Z2" => Expected {
            weak_dim: 4,
            full_dim: 3,
            a0_rows: vec![vec![1, 0, 1]],
            associative: false,
            zeropotent: true,
            weak_pattern: Some(Z2_WEAK),
            full_pattern: Some(Z2_FULL),
            ..base
        },
        "Z3" | "Z4" | "Z5" | "Z6" | "Z7" | "Z8" | "Z9" => Expected {
            weak_dim: 1,
            full_dim: 1,
            associative: false,
            zeropotent: true,
            ..base
        },
        other => return Err(CatalogError::UnknownEntry(other.to_owned())),
    };
    Ok(e)
}

/// Expected multiplier-space dimensions (weak, full).
pub fn expected_dims<K: Field>(
    name: &str,
    params: &Params<K>,
) -> Result<(usize, usize), CatalogError> {
    expected::<K>(name, params).map(|e| (e.weak_dim, e.full_dim))
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct EntryReport {
    pub entry: String,
    pub checks: Vec<CheckResult>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(checks: &mut Vec<CheckResult>, label: &str, passed: bool, detail: impl Into<String>) {
    checks.push(CheckResult {
        label: label.to_owned(),
        passed,
        detail: detail.into(),
    });
}

/// Does every basis map of `space` satisfy the entry constraints, and do the
/// constraints pin down exactly the expected dimension?
pub fn pattern_holds<K: Field>(
    space: &crate::multiplier::MultiplierSpace<K>,
    constraints: &[PatternConstraint],
) -> bool {
    let ctx = space.space.ctx().clone();
    for map in space.basis_maps() {
        for constraint in constraints {
            let mut acc = K::zero(&ctx);
            for &(r, c, coeff) in constraint.iter() {
                acc = acc.add(&map.at(r, c).mul(&K::from_i64(&ctx, coeff)));
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    // Completeness: constraint rank + space dim = n^2, so pattern plus
    // dimension pins the space exactly.
    let n = space.map_dim;
    let rows: Vec<Vec<K>> = constraints
        .iter()
        .map(|constraint| {
            let mut row = vec![K::zero(&ctx); n * n];
            for &(r, c, coeff) in constraint.iter() {
                row[c * n + r] = row[c * n + r].add(&K::from_i64(&ctx, coeff));
            }
            row
        })
        .collect();
    let rank = Matrix::from_rows(&ctx, rows).rank();
    rank + space.dim() == n * n
}

/// Runs the full expectation list for one entry over the given field.
pub fn verify_entry<K: Field>(
    ctx: &K::Ctx,
    name: &str,
    params: &Params<K>,
) -> Result<EntryReport, CatalogError> {
    if K::spec(ctx).characteristic() == 2 {
        return Err(CatalogError::CharacteristicTwo);
    }
    let alg = get(ctx, name, params)?;
    let exp = expected::<K>(name, params)?;
    let mut checks = Vec::new();

    let weak = solve_linear_weak(&alg);
    let full = solve_linear_full(&alg);
    check(
        &mut checks,
        "weak_dim",
        weak.dim() == exp.weak_dim,
        format!("got {}, expected {}", weak.dim(), exp.weak_dim),
    );
    check(
        &mut checks,
        "full_dim",
        full.dim() == exp.full_dim,
        format!("got {}, expected {}", full.dim(), exp.full_dim),
    );

    let a0 = alg.two_sided_annihilator();
    let expected_a0 = Subspace::from_spanning_rows(
        ctx,
        3,
        exp.a0_rows
            .iter()
            .map(|row| row.iter().map(|&v| K::from_i64(ctx, v)).collect())
            .collect(),
    );
    check(
        &mut checks,
        "a0",
        a0 == expected_a0,
        format!("got dim {}, expected dim {}", a0.dim(), expected_a0.dim()),
    );

    check(
        &mut checks,
        "associative",
        alg.is_associative() == exp.associative,
        format!("got {}, expected {}", alg.is_associative(), exp.associative),
    );
    check(
        &mut checks,
        "zeropotent",
        alg.is_zeropotent() == exp.zeropotent,
        format!("got {}, expected {}", alg.is_zeropotent(), exp.zeropotent),
    );
    check(
        &mut checks,
        "left_identity",
        alg.find_left_identity().is_some() == exp.left_identity,
        format!("expected {}", exp.left_identity),
    );
    check(
        &mut checks,
        "right_identity",
        alg.find_right_identity().is_some() == exp.right_identity,
        format!("expected {}", exp.right_identity),
    );
    check(
        &mut checks,
        "unital",
        alg.find_identity().is_some() == exp.unital,
        format!("expected {}", exp.unital),
    );

    if let Some(p) = exp.weak_pattern {
        check(
            &mut checks,
            "weak_pattern",
            pattern_holds(&weak, p),
            "canonical weak basis vs displayed entry constraints",
        );
    }
    if let Some(p) = exp.full_pattern {
        check(
            &mut checks,
            "full_pattern",
            pattern_holds(&full, p),
            "canonical full basis vs displayed entry constraints",
        );
    }

    let entry = if params.is_empty() {
        name.to_owned()
    } else {
        let args: Vec<String> = params
            .iter()
            .map(|(k, v)| format!("{k}={}", v.render()))
            .collect();
        format!("{name}({})", args.join(","))
    };
    Ok(EntryReport { entry, checks })
}

/// The default regression list: every entry, with parameterized families
/// instantiated at small integer values covering both W3 branches.
pub fn default_verification_set() -> Vec<(String, Vec<(String, i64)>)> {
    let mut set = Vec::new();
    for entry in ENTRIES {
        if entry.parameters.is_empty() {
            set.push((entry.name.to_owned(), Vec::new()));
        } else {
            let name = entry.parameters[0];
            for v in [0i64, 1, 2, 3] {
                set.push((entry.name.to_owned(), vec![(name.to_owned(), v)]));
            }
        }
    }
    set
}

/// Instantiates integer parameter assignments over a field.
pub fn int_params<K: Field>(ctx: &K::Ctx, assignments: &[(String, i64)]) -> Params<K> {
    assignments
        .iter()
        .map(|(k, v)| (k.clone(), K::from_i64(ctx, *v)))
        .collect()
}

/// Field spec of a context (convenience for report headers).
pub fn spec_of<K: Field>(ctx: &K::Ctx) -> FieldSpec {
    K::spec(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn no_params() -> Params<Q> {
        BTreeMap::new()
    }

    #[test]
    fn get_c1_table() {
        let a = get::<Q>(&(), "C1", &no_params()).unwrap();
        assert_eq!(
            a.basis_product(1, 2),
            &crate::linalg::scalar_vec::<Q>(&(), &[1, 0, 0])[..]
        );
        assert_eq!(
            a.basis_product(2, 1),
            &crate::linalg::scalar_vec::<Q>(&(), &[-1, 0, 0])[..]
        );
        assert!(a.basis_product(0, 0).iter().all(Field::is_zero));
    }

    #[test]
    fn get_u3_table() {
        let a = get::<Q>(&(), "U3", &no_params()).unwrap();
        assert_eq!(
            a.basis_product(1, 1),
            &crate::linalg::scalar_vec::<Q>(&(), &[0, 1, 0])[..]
        );
        assert_eq!(
            a.basis_product(1, 2),
            &crate::linalg::scalar_vec::<Q>(&(), &[0, 0, 1])[..]
        );
        assert_eq!(
            a.basis_product(2, 1),
            &crate::linalg::scalar_vec::<Q>(&(), &[0, 0, 1])[..]
        );
        assert!(a.basis_product(2, 2).iter().all(Field::is_zero));
    }

    #[test]
    fn get_z4_structural() {
        let params = int_params::<Q>(&(), &[("a".to_owned(), 0)]);
        let a = get::<Q>(&(), "Z4", &params).unwrap();
        let (m, rank) = a.structural_matrix().unwrap();
        assert_eq!(
            m,
            Matrix::from_i64_rows(&(), &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]])
        );
        assert_eq!(rank, 2);
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            get::<Q>(&(), "W3", &no_params()),
            Err(CatalogError::MissingParameter { .. })
        ));
        assert!(matches!(
            get::<Q>(&(), "Nope", &no_params()),
            Err(CatalogError::UnknownEntry(_))
        ));
        let params = int_params::<Q>(&(), &[("k".to_owned(), 1)]);
        assert!(matches!(
            get::<Q>(&(), "C1", &params),
            Err(CatalogError::UnexpectedParameter { .. })
        ));
    }

    #[test]
    fn expected_dims_fixtures() {
        assert_eq!(expected_dims::<Q>("S1", &no_params()).unwrap(), (5, 3));
        let k0 = int_params::<Q>(&(), &[("k".to_owned(), 0)]);
        let k1 = int_params::<Q>(&(), &[("k".to_owned(), 1)]);
        assert_eq!(expected_dims::<Q>("W3", &k0).unwrap(), (6, 3));
        assert_eq!(expected_dims::<Q>("W3", &k1).unwrap(), (4, 3));
        assert_eq!(expected_dims::<Q>("Z2", &no_params()).unwrap(), (4, 3));
    }

    #[test]
    fn verify_selected_entries() {
        for name in ["C2", "W5", "Z0"] {
            let report = verify_entry::<Q>(&(), name, &no_params()).unwrap();
            assert!(report.passed(), "{name}: {:?}", report.checks);
        }
    }

    #[test]
    fn verify_rejects_char2() {
        use crate::field::{Fp, FpCtx};
        let ctx = FpCtx::new(FieldSpec::prime_allowing_char2(2).unwrap()).unwrap();
        assert!(matches!(
            verify_entry::<Fp>(&ctx, "C2", &BTreeMap::new()),
            Err(CatalogError::CharacteristicTwo)
        ));
    }

    #[test]
    fn default_set_covers_both_w3_branches() {
        let set = default_verification_set();
        assert!(set.len() > 30);
        let w3: Vec<_> = set.iter().filter(|(n, _)| n == "W3").collect();
        assert_eq!(w3.len(), 4);
    }
}
