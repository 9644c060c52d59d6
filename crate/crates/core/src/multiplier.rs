//! Linear (weak) multiplier spaces.
//!
//! A linear map T (matrix convention: column j holds the coordinates of
//! T(e_j)) is a weak multiplier iff `e_i T(e_j) = T(e_i) e_j` for all basis
//! pairs, and a multiplier iff additionally `T(e_i e_j) = e_i T(e_j)`. Both
//! conditions are linear in the entries of T, so each space is the exact
//! nullspace of a coefficient matrix over the base field.
//!
//! Matrices are flattened column-major into K^(n*n); that way the column
//! convention survives reshaping and the canonical RREF basis of a solution
//! space is well defined.

use crate::algebra::{Algebra, AlgebraElement, AlgebraError, NihilDecomposition};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};

/// n x n matrix acting on coordinates; column j = coordinates of T(e_j).
pub type LinearMap<K> = Matrix<K>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MultiplierError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("left-multiplication span disagrees with the solved multiplier space")]
    TransportMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiplierKind {
    Weak,
    Full,
    WeakRestrictedToA1,
    FullRestrictedToA1,
}

impl MultiplierKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MultiplierKind::Weak => "weak",
            MultiplierKind::Full => "full",
            MultiplierKind::WeakRestrictedToA1 => "weak_restricted_to_a1",
            MultiplierKind::FullRestrictedToA1 => "full_restricted_to_a1",
        }
    }
}

/// A solved multiplier space: canonical subspace of K^(n*n) plus bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierSpace<K: Field> {
    pub kind: MultiplierKind,
    pub map_dim: usize,
    pub space: Subspace<K>,
    pub a1_used: Option<Subspace<K>>,
}

impl<K: Field> MultiplierSpace<K> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_maps(&self) -> Vec<LinearMap<K>> {
        self.space
            .basis_rows()
            .map(|row| unflatten_map(self.space.ctx(), self.map_dim, row))
            .collect()
    }

    pub fn contains_map(&self, map: &LinearMap<K>) -> bool {
        self.space.contains(&flatten_map(map))
    }
}

/// Column-major flattening of an n x n map matrix.
pub fn flatten_map<K: Field>(map: &Matrix<K>) -> Vec<K> {
    assert_eq!(map.rows(), map.cols());
    let n = map.rows();
    let mut v = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            v.push(map.at(i, j).clone());
        }
    }
    v
}

pub fn unflatten_map<K: Field>(ctx: &K::Ctx, n: usize, v: &[K]) -> Matrix<K> {
    assert_eq!(v.len(), n * n);
    Matrix::from_fn(ctx, n, n, |i, j| v[j * n + i].clone())
}

/// Scalar multiplication S_a = a * identity.
pub fn scalar_multiplication<K: Field>(alg: &Algebra<K>, a: &K) -> LinearMap<K> {
    Matrix::identity(alg.ctx(), alg.dim()).scale(a)
}

/// Left multiplication l_a: column j = coordinates of a * e_j.
pub fn left_multiplication<K: Field>(alg: &Algebra<K>, a: &[K]) -> LinearMap<K> {
    let n = alg.dim();
    let cols: Vec<AlgebraElement<K>> = (0..n)
        .map(|j| {
            alg.multiply(a, &alg.basis_element(j))
                .expect("basis element")
        })
        .collect();
    Matrix::from_fn(alg.ctx(), n, n, |i, j| cols[j][i].clone())
}

/// Right multiplication r_a: column j = coordinates of e_j * a.
pub fn right_multiplication<K: Field>(alg: &Algebra<K>, a: &[K]) -> LinearMap<K> {
    let n = alg.dim();
    let cols: Vec<AlgebraElement<K>> = (0..n)
        .map(|j| {
            alg.multiply(&alg.basis_element(j), a)
                .expect("basis element")
        })
        .collect();
    Matrix::from_fn(alg.ctx(), n, n, |i, j| cols[j][i].clone())
}

/// Unknown layout: x[j*n + l] = t_{lj} (entry in row l, column j of T).
fn unknown(n: usize, row: usize, col: usize) -> usize {
    col * n + row
}

/// Coefficient matrix (n^3 rows) of `e_i T(e_j) = T(e_i) e_j` over all
/// (i, j, m): sum_l t_{lj} c[i][l][m] - sum_l t_{li} c[l][j][m] = 0.
pub fn weak_system<K: Field>(alg: &Algebra<K>) -> Matrix<K> {
    let n = alg.dim();
    let mut m = Matrix::<K>::zero(alg.ctx(), n * n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for mm in 0..n {
                let row = (i * n + j) * n + mm;
                for l in 0..n {
                    let a = m.at(row, unknown(n, l, j)).add(alg.constant(i, l, mm));
                    *m.at_mut(row, unknown(n, l, j)) = a;
                    let b = m.at(row, unknown(n, l, i)).sub(alg.constant(l, j, mm));
                    *m.at_mut(row, unknown(n, l, i)) = b;
                }
            }
        }
    }
    m
}

/// Weak system plus the rows of `T(e_i e_j) = e_i T(e_j)`:
/// sum_k c[i][j][k] t_{mk} - sum_l c[i][l][m] t_{lj} = 0.
pub fn full_system<K: Field>(alg: &Algebra<K>) -> Matrix<K> {
    let n = alg.dim();
    let weak = weak_system(alg);
    let mut extra = Matrix::<K>::zero(alg.ctx(), n * n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for mm in 0..n {
                let row = (i * n + j) * n + mm;
                for k in 0..n {
                    let a = extra.at(row, unknown(n, mm, k)).add(alg.constant(i, j, k));
                    *extra.at_mut(row, unknown(n, mm, k)) = a;
                }
                for l in 0..n {
                    let b = extra.at(row, unknown(n, l, j)).sub(alg.constant(i, l, mm));
                    *extra.at_mut(row, unknown(n, l, j)) = b;
                }
            }
        }
    }
    Matrix::stack_rows(alg.ctx(), &[&weak, &extra])
}

/// Rows forcing the image of T into `target`: for every column j and every
/// constraint row w of the target subspace, sum_l w_l t_{lj} = 0.
fn image_constraint_rows<K: Field>(alg: &Algebra<K>, target: &Subspace<K>) -> Matrix<K> {
    let n = alg.dim();
    let constraints = target.constraint_rows();
    let mut m = Matrix::zero(alg.ctx(), constraints.rows() * n, n * n);
    for j in 0..n {
        for c in 0..constraints.rows() {
            let row = j * constraints.rows() + c;
            for l in 0..n {
                *m.at_mut(row, unknown(n, l, j)) = constraints.at(c, l).clone();
            }
        }
    }
    m
}

/// Rows forcing T(v) = 0 for every basis vector v of `killed`:
/// for every coordinate m, sum_l v_l t_{ml} = 0.
fn kill_constraint_rows<K: Field>(alg: &Algebra<K>, killed: &Subspace<K>) -> Matrix<K> {
    let n = alg.dim();
    let mut m = Matrix::zero(alg.ctx(), killed.dim() * n, n * n);
    for (b, v) in killed.basis_rows().enumerate() {
        for mm in 0..n {
            let row = b * n + mm;
            for (l, vl) in v.iter().enumerate() {
                *m.at_mut(row, unknown(n, mm, l)) = vl.clone();
            }
        }
    }
    m
}

fn solve_space<K: Field>(
    alg: &Algebra<K>,
    kind: MultiplierKind,
    system: &Matrix<K>,
    a1_used: Option<&Subspace<K>>,
) -> MultiplierSpace<K> {
    let space = system.nullspace();
    let result = MultiplierSpace {
        kind,
        map_dim: alg.dim(),
        space,
        a1_used: a1_used.cloned(),
    };
    // Re-verify every basis map against the defining identities.
    for map in result.basis_maps() {
        let ok = match kind {
            MultiplierKind::Weak | MultiplierKind::WeakRestrictedToA1 => check_weak(alg, &map),
            MultiplierKind::Full | MultiplierKind::FullRestrictedToA1 => check_full(alg, &map),
        };
        assert!(ok, "solver produced a map violating the defining identity");
    }
    result
}

/// All linear weak multipliers of the algebra (canonical basis).
pub fn solve_linear_weak<K: Field>(alg: &Algebra<K>) -> MultiplierSpace<K> {
    solve_space(alg, MultiplierKind::Weak, &weak_system(alg), None)
}

/// All linear multipliers of the algebra (canonical basis).
pub fn solve_linear_full<K: Field>(alg: &Algebra<K>) -> MultiplierSpace<K> {
    solve_space(alg, MultiplierKind::Full, &full_system(alg), None)
}

/// Weak multipliers with image inside A1 and vanishing on A0. By the nihil
/// decomposition this space complements the maps into A0 inside the full
/// space of linear weak multipliers.
pub fn solve_restricted_weak<K: Field>(
    alg: &Algebra<K>,
    nd: &NihilDecomposition<K>,
) -> MultiplierSpace<K> {
    let system = Matrix::stack_rows(
        alg.ctx(),
        &[
            &weak_system(alg),
            &image_constraint_rows(alg, &nd.a1),
            &kill_constraint_rows(alg, &nd.a0),
        ],
    );
    solve_space(
        alg,
        MultiplierKind::WeakRestrictedToA1,
        &system,
        Some(&nd.a1),
    )
}

/// Multipliers with image inside A1 (these vanish on A0 automatically).
pub fn solve_restricted_full<K: Field>(
    alg: &Algebra<K>,
    nd: &NihilDecomposition<K>,
) -> MultiplierSpace<K> {
    let system = Matrix::stack_rows(
        alg.ctx(),
        &[
            &full_system(alg),
            &image_constraint_rows(alg, &nd.a1),
            &kill_constraint_rows(alg, &nd.a0),
        ],
    );
    solve_space(
        alg,
        MultiplierKind::FullRestrictedToA1,
        &system,
        Some(&nd.a1),
    )
}

/// Linear weak multipliers whose image lies in `target` (used for the
/// decomposition cross-checks: with target = A0 this is all of L(A, A0)).
pub fn solve_weak_into<K: Field>(alg: &Algebra<K>, target: &Subspace<K>) -> MultiplierSpace<K> {
    let system = Matrix::stack_rows(
        alg.ctx(),
        &[&weak_system(alg), &image_constraint_rows(alg, target)],
    );
    solve_space(alg, MultiplierKind::Weak, &system, None)
}

/// Direct check of `e_i T(e_j) = T(e_i) e_j` on all basis pairs.
pub fn check_weak<K: Field>(alg: &Algebra<K>, map: &LinearMap<K>) -> bool {
    let n = alg.dim();
    for i in 0..n {
        let ei = alg.basis_element(i);
        let t_ei = map.apply(&ei);
        for j in 0..n {
            let ej = alg.basis_element(j);
            let t_ej = map.apply(&ej);
            let lhs = alg.multiply(&ei, &t_ej).expect("dims");
            let rhs = alg.multiply(&t_ei, &ej).expect("dims");
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Direct check of `T(e_i e_j) = e_i T(e_j) = T(e_i) e_j` on all basis pairs.
pub fn check_full<K: Field>(alg: &Algebra<K>, map: &LinearMap<K>) -> bool {
    if !check_weak(alg, map) {
        return false;
    }
    let n = alg.dim();
    for i in 0..n {
        let ei = alg.basis_element(i);
        for j in 0..n {
            let ej = alg.basis_element(j);
            let t_ej = map.apply(&ej);
            let lhs = map.apply(alg.basis_product(i, j));
            let rhs = alg.multiply(&ei, &t_ej).expect("dims");
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Closure report for a solved space: multiplier spaces are closed under
/// composition and contain the identity; weak spaces are closed under the
/// symmetrized product TU + UT.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub kind: MultiplierKind,
    pub pairs_checked: usize,
    pub identity_in_space: Option<bool>,
    /// Basis index pairs whose (symmetrized) product escapes the space.
    pub violations: Vec<(usize, usize)>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.identity_in_space.unwrap_or(true)
    }
}

pub fn verify_closure<K: Field>(ms: &MultiplierSpace<K>) -> ClosureReport {
    let maps = ms.basis_maps();
    let ctx = ms.space.ctx().clone();
    let mut violations = Vec::new();
    let mut pairs = 0usize;
    let full_kind = matches!(
        ms.kind,
        MultiplierKind::Full | MultiplierKind::FullRestrictedToA1
    );
    for (a, ta) in maps.iter().enumerate() {
        for (b, tb) in maps.iter().enumerate() {
            if !full_kind && b < a {
                continue; // TU + UT is symmetric
            }
            pairs += 1;
            let candidate = if full_kind {
                ta.matmul(tb)
            } else {
                ta.matmul(tb).add(&tb.matmul(ta))
            };
            if !ms.contains_map(&candidate) {
                violations.push((a, b));
            }
        }
    }
    let identity_in_space = if full_kind {
        Some(ms.contains_map(&Matrix::identity(&ctx, ms.map_dim)))
    } else {
        None
    };
    ClosureReport {
        kind: ms.kind,
        pairs_checked: pairs,
        identity_in_space,
        violations,
    }
}

/// Forced value of the correction term on one product of A1 basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcedAssignment<K: Field> {
    pub left_index: usize,
    pub right_index: usize,
    pub product: Vec<K>,
    pub value: Vec<K>,
}

/// Forced values for one basis map of the restricted space. `consistent`
/// records whether the values cohere on the spanning set (same value on
/// coinciding products, zero on the zero product, values inside A0); an
/// inconsistent basis map admits no correction term at all, i.e. it is a
/// weak multiplier that extends to no multiplier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapForcedValues<K: Field> {
    pub consistent: bool,
    pub assignments: Vec<ForcedAssignment<K>>,
}

/// The Eq-style forced part of the multiplier set: per-basis-map forced
/// assignments, plus the subspace of the restricted space on which the
/// (linear) consistency conditions hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcedPart<K: Field> {
    pub per_map: Vec<MapForcedValues<K>>,
    /// Subspace of K^(n*n) inside the restricted space whose forced values
    /// cohere on the spanning set.
    pub liftable: Subspace<K>,
    pub notes: Vec<String>,
}

/// Dimensions of the multiplier spaces of A1 viewed as an algebra in its own
/// right (only available when A1 is a subalgebra).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraView<K: Field> {
    pub algebra: Algebra<K>,
    pub weak_dim: usize,
    pub full_dim: usize,
}

/// Structured description of the full (possibly nonlinear) multiplier sets.
///
/// The weak set always splits into the restricted linear part plus arbitrary
/// maps into A0; the multiplier set is cut out of that by forced values on
/// products of A1 elements. Everything not forced stays free, which is why
/// the nonlinear parts are described rather than materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierSetDescription<K: Field> {
    pub a0: Subspace<K>,
    pub a1: Subspace<K>,
    pub a1_is_subalgebra: bool,
    /// M'_1: the linear representatives of the weak multiplier set.
    pub weak_linear_part: MultiplierSpace<K>,
    /// The free part of the weak set is every map from A into A0.
    pub weak_free_into_dim: usize,
    /// dim of the space of *linear* weak multipliers: dim M'_1 + n * dim A0.
    pub linear_weak_dim: usize,
    pub forced: ForcedPart<K>,
    pub product_span: Subspace<K>,
    /// dim of the linear maps into A0 killing the product span (the linear
    /// slice of the free part of the multiplier set).
    pub linear_full_free_dim: usize,
    pub via_subalgebra: Option<SubalgebraView<K>>,
}

/// Expresses the products of A1 basis vectors in A1 coordinates; only valid
/// when A1 is closed under the product.
pub fn subalgebra_on<K: Field>(
    alg: &Algebra<K>,
    a1: &Subspace<K>,
) -> Result<Algebra<K>, AlgebraError> {
    let d = a1.dim();
    let basis: Vec<Vec<K>> = a1.basis_rows().map(|r| r.to_vec()).collect();
    let mut table = Vec::with_capacity(d);
    for u in &basis {
        let mut row = Vec::with_capacity(d);
        for v in &basis {
            let prod = alg.multiply(u, v)?;
            let coords = a1
                .coordinates_of(&prod)
                .expect("subalgebra products stay inside A1");
            row.push(coords);
        }
        table.push(row);
    }
    let labels = (0..d).map(|i| format!("b{i}")).collect();
    Algebra::from_table(alg.ctx(), labels, table)
}

/// Builds the decomposition description for the given nihil decomposition.
pub fn describe_multiplier_sets<K: Field>(
    alg: &Algebra<K>,
    nd: &NihilDecomposition<K>,
) -> Result<MultiplierSetDescription<K>, MultiplierError> {
    let n = alg.dim();
    let weak_linear_part = solve_restricted_weak(alg, nd);
    let a0_dim = nd.a0.dim();
    let linear_weak_dim = weak_linear_part.dim() + n * a0_dim;

    // Forced values of the correction term R on products of A1 basis
    // vectors: R(u v) = u T(v) - T(u v). The value is linear in T, so the
    // consistency conditions (equal values on coinciding products, zero on
    // the zero product, values inside A0) cut a subspace out of the
    // restricted space: the maps that extend to multipliers at all.
    let ctx = alg.ctx().clone();
    let a1_basis: Vec<Vec<K>> = nd.a1.basis_rows().map(|r| r.to_vec()).collect();
    let basis_maps = weak_linear_part.basis_maps();
    let m_dim = basis_maps.len();

    // forced_per_map[t][pair] for basis map t.
    struct PairData<K: Field> {
        left_index: usize,
        right_index: usize,
        product: Vec<K>,
        values: Vec<Vec<K>>, // one value per basis map
    }
    let mut pairs: Vec<PairData<K>> = Vec::new();
    for (ai, u) in a1_basis.iter().enumerate() {
        for (bi, v) in a1_basis.iter().enumerate() {
            let product = alg.multiply(u, v)?;
            let values: Result<Vec<Vec<K>>, AlgebraError> = basis_maps
                .iter()
                .map(|map| {
                    let t_v = map.apply(v);
                    let u_tv = alg.multiply(u, &t_v)?;
                    let t_uv = map.apply(&product);
                    Ok(u_tv.iter().zip(&t_uv).map(|(x, y)| x.sub(y)).collect())
                })
                .collect();
            pairs.push(PairData {
                left_index: ai,
                right_index: bi,
                product,
                values: values?,
            });
        }
    }

    // Linear consistency conditions on the coordinates of the restricted
    // space: rows of a system over K^m_dim.
    let mut condition_rows: Vec<Vec<K>> = Vec::new();
    let a0_constraints = nd.a0.constraint_rows();
    for pair in &pairs {
        // Values stay inside A0.
        for c in 0..a0_constraints.rows() {
            let row: Vec<K> = (0..m_dim)
                .map(|t| {
                    let mut acc = K::zero(&ctx);
                    for (l, coeff) in pair.values[t].iter().enumerate() {
                        acc = acc.add(&a0_constraints.at(c, l).mul(coeff));
                    }
                    acc
                })
                .collect();
            condition_rows.push(row);
        }
        // Zero product forces a zero value.
        if pair.product.iter().all(Field::is_zero) {
            for l in 0..n {
                condition_rows.push((0..m_dim).map(|t| pair.values[t][l].clone()).collect());
            }
        }
    }
    for (i, a) in pairs.iter().enumerate() {
        for b in pairs.iter().skip(i + 1) {
            if a.product == b.product {
                for l in 0..n {
                    condition_rows.push(
                        (0..m_dim)
                            .map(|t| a.values[t][l].sub(&b.values[t][l]))
                            .collect(),
                    );
                }
            }
        }
    }
    let liftable = if m_dim == 0 {
        Subspace::zero_space(&ctx, n * n)
    } else {
        let system = if condition_rows.is_empty() {
            Matrix::zero(&ctx, 0, m_dim)
        } else {
            Matrix::from_rows(&ctx, condition_rows)
        };
        let coeff_space = system.nullspace();
        let rows: Vec<Vec<K>> = coeff_space
            .basis_rows()
            .map(|coeffs| {
                let mut flat = vec![K::zero(&ctx); n * n];
                for (t, c) in coeffs.iter().enumerate() {
                    for (idx, entry) in flatten_map(&basis_maps[t]).iter().enumerate() {
                        flat[idx] = flat[idx].add(&c.mul(entry));
                    }
                }
                flat
            })
            .collect();
        Subspace::from_spanning_rows(&ctx, n * n, rows)
    };

    let mut per_map = Vec::with_capacity(m_dim);
    let mut notes = Vec::new();
    for t in 0..m_dim {
        let mut assignments = Vec::with_capacity(pairs.len());
        let mut consistent = true;
        for pair in &pairs {
            let value = pair.values[t].clone();
            if !nd.a0.contains(&value) {
                consistent = false;
            }
            if pair.product.iter().all(Field::is_zero) && !value.iter().all(Field::is_zero) {
                consistent = false;
            }
            if let Some(prev) = assignments
                .iter()
                .find(|f: &&ForcedAssignment<K>| f.product == pair.product)
            {
                let prev: &ForcedAssignment<K> = prev;
                if prev.value != value {
                    consistent = false;
                }
            }
            assignments.push(ForcedAssignment {
                left_index: pair.left_index,
                right_index: pair.right_index,
                product: pair.product.clone(),
                value,
            });
        }
        if !consistent {
            notes.push(format!(
                "restricted basis map {t} admits no correction term; it extends to no multiplier"
            ));
        }
        per_map.push(MapForcedValues {
            consistent,
            assignments,
        });
    }

    let product_span = alg.product_span();
    let linear_full_free_dim = a0_dim * (n - product_span.dim());

    let via_subalgebra = if nd.a1_is_subalgebra {
        let sub = subalgebra_on(alg, &nd.a1)?;
        let weak_dim = solve_linear_weak(&sub).dim();
        let full_dim = solve_linear_full(&sub).dim();
        Some(SubalgebraView {
            algebra: sub,
            weak_dim,
            full_dim,
        })
    } else {
        None
    };

    Ok(MultiplierSetDescription {
        a0: nd.a0.clone(),
        a1: nd.a1.clone(),
        a1_is_subalgebra: nd.a1_is_subalgebra,
        weak_linear_part,
        weak_free_into_dim: a0_dim,
        linear_weak_dim,
        forced: ForcedPart {
            per_map,
            liftable,
            notes,
        },
        product_span,
        linear_full_free_dim,
        via_subalgebra,
    })
}

/// Multiplier space of an associative algebra with a left identity,
/// transported from the left central elements: the multipliers are exactly
/// the left multiplications l_a with a left central, and the kernel of
/// a -> l_a is the left annihilator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftIdentityMultipliers<K: Field> {
    pub left_identity: AlgebraElement<K>,
    pub left_central: Subspace<K>,
    pub left_annihilator: Subspace<K>,
    pub space: MultiplierSpace<K>,
}

pub fn multipliers_via_left_identity<K: Field>(
    alg: &Algebra<K>,
) -> Result<Option<LeftIdentityMultipliers<K>>, MultiplierError> {
    alg.require_associative()?;
    let Some(left_identity) = alg.find_left_identity() else {
        return Ok(None);
    };
    let left_central = alg.left_central_elements()?;
    let left_annihilator = alg.left_annihilator();
    let rows: Vec<Vec<K>> = left_central
        .basis_rows()
        .map(|a| flatten_map(&left_multiplication(alg, a)))
        .collect();
    let space = Subspace::from_spanning_rows(alg.ctx(), alg.dim() * alg.dim(), rows);
    let solved = solve_linear_full(alg);
    if space != solved.space {
        return Err(MultiplierError::TransportMismatch);
    }
    if space.dim() + left_annihilator.dim() != left_central.dim() {
        return Err(MultiplierError::TransportMismatch);
    }
    Ok(Some(LeftIdentityMultipliers {
        left_identity,
        left_central,
        left_annihilator,
        space: MultiplierSpace {
            kind: MultiplierKind::Full,
            map_dim: alg.dim(),
            space,
            a1_used: None,
        },
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::scalar_vec;
    use num_rational::BigRational;
    use std::collections::BTreeMap;

    type Q = BigRational;

    fn get(name: &str) -> Algebra<Q> {
        catalog::get::<Q>(&(), name, &BTreeMap::new()).unwrap()
    }

    fn vq(entries: &[i64]) -> Vec<Q> {
        scalar_vec::<Q>(&(), entries)
    }

    #[test]
    fn multiplication_operators() {
        let a = get("C3");
        let half = <Q as Field>::parse(&(), "1/2").unwrap();
        assert_eq!(
            scalar_multiplication(&a, &half),
            Matrix::identity(&(), 3).scale(&half)
        );
        // g is a left identity of C3, so l_g is the identity map.
        assert_eq!(
            left_multiplication(&a, &vq(&[0, 0, 1])),
            Matrix::identity(&(), 3)
        );
        let zero = Algebra::<Q>::zero_algebra(&(), 3);
        assert!(left_multiplication(&zero, &vq(&[1, 0, 0])).is_zero());
    }

    #[test]
    fn system_ranks_on_fixtures() {
        let zero = Algebra::<Q>::zero_algebra(&(), 3);
        assert!(weak_system(&zero).is_zero());
        assert!(full_system(&zero).is_zero());
        assert_eq!(solve_linear_full(&zero).dim(), 9);
        assert_eq!(weak_system(&get("C2")).rank(), 8);
        assert_eq!(weak_system(&get("S1")).rank(), 4);
    }

    #[test]
    fn solve_on_fixtures() {
        let c2 = get("C2");
        let weak = solve_linear_weak(&c2);
        let full = solve_linear_full(&c2);
        assert_eq!(weak.dim(), 1);
        assert_eq!(full.dim(), 1);
        assert!(weak.contains_map(&Matrix::identity(&(), 3)));
        assert_eq!(weak.space, full.space);

        assert_eq!(solve_linear_full(&get("C1")).dim(), 3);
        assert_eq!(solve_linear_full(&get("W1")).dim(), 5);
        let w9 = get("W9");
        assert_eq!(solve_linear_weak(&w9).dim(), 2);
        assert_eq!(solve_linear_weak(&w9).space, solve_linear_full(&w9).space);
    }

    #[test]
    fn restricted_weak_on_fixtures() {
        // C1 with the default complement span{f, g}: one parameter q on the
        // diagonal of the lower 2x2 block.
        let c1 = get("C1");
        let nd = c1.nihil_decomposition(None).unwrap();
        let m1 = solve_restricted_weak(&c1, &nd);
        assert_eq!(m1.dim(), 1);
        let expected = Matrix::from_i64_rows(&(), &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(m1.contains_map(&expected));

        // Z2 with A1 = span{e, f}: the single basis map sends e -> e - g...
        let z2 = get("Z2");
        let nd = z2.nihil_decomposition(None).unwrap();
        let m1 = solve_restricted_weak(&z2, &nd);
        assert_eq!(m1.dim(), 1);
        let expected = Matrix::from_i64_rows(&(), &[&[1, 0, -1], &[0, 1, 0], &[0, 0, 0]]);
        assert!(m1.contains_map(&expected));

        let zero = Algebra::<Q>::zero_algebra(&(), 3);
        let nd = zero.nihil_decomposition(None).unwrap();
        assert_eq!(solve_restricted_weak(&zero, &nd).dim(), 0);
    }

    #[test]
    fn check_functions() {
        let c2 = get("C2");
        assert!(check_weak(&c2, &Matrix::identity(&(), 3)));
        // f -> e violates the solved constraint t_{12} = 0 on C2.
        let swap = Matrix::from_i64_rows(&(), &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert!(!check_weak(&c2, &swap));

        let w2 = get("W2");
        let s = scalar_multiplication(&w2, &<Q as Field>::from_i64(&(), 4));
        assert!(check_full(&w2, &s));
    }

    #[test]
    fn closure_reports() {
        let s1 = get("S1");
        let full = solve_linear_full(&s1);
        let report = verify_closure(&full);
        assert!(report.passed());
        assert_eq!(report.identity_in_space, Some(true));

        let w4 = get("W4");
        let weak = solve_linear_weak(&w4);
        assert_eq!(weak.dim(), 7);
        assert!(verify_closure(&weak).passed());

        // A pure scalar line is trivially closed.
        let c2 = get("C2");
        assert!(verify_closure(&solve_linear_weak(&c2)).passed());
    }

    #[test]
    fn describe_on_c1() {
        let c1 = get("C1");
        let nd = c1.nihil_decomposition(None).unwrap();
        let desc = describe_multiplier_sets(&c1, &nd).unwrap();
        assert_eq!(desc.weak_linear_part.dim(), 1);
        assert_eq!(desc.weak_free_into_dim, 1);
        assert_eq!(desc.linear_weak_dim, 4);
        assert!(desc.forced.per_map[0].consistent);
        assert_eq!(desc.forced.liftable, desc.weak_linear_part.space);
        assert!(!desc.a1_is_subalgebra); // f g = e leaves span{f, g}
                                         // The basis map is T_q with q = 1; products of A1 elements span Ke
                                         // and the forced value is exactly q * product.
        for f in &desc.forced.per_map[0].assignments {
            assert_eq!(f.value, f.product);
        }

        // S3: A1 is a unital commutative subalgebra, both its spaces have dim 2.
        let s3 = get("S3");
        let nd = s3.nihil_decomposition(None).unwrap();
        let desc = describe_multiplier_sets(&s3, &nd).unwrap();
        assert!(desc.a1_is_subalgebra);
        let via = desc.via_subalgebra.unwrap();
        assert_eq!(via.weak_dim, 2);
        assert_eq!(via.full_dim, 2);
        assert_eq!(via.weak_dim, desc.weak_linear_part.dim());

        // Zero algebra: everything is free.
        let zero = Algebra::<Q>::zero_algebra(&(), 3);
        let nd = zero.nihil_decomposition(None).unwrap();
        let desc = describe_multiplier_sets(&zero, &nd).unwrap();
        assert_eq!(desc.weak_linear_part.dim(), 0);
        assert_eq!(desc.weak_free_into_dim, 3);
        assert_eq!(desc.linear_weak_dim, 9);
        assert_eq!(desc.linear_full_free_dim, 9);
        assert!(desc.forced.notes.is_empty());
    }

    #[test]
    fn describe_detects_unliftable_weak_multipliers() {
        // W3 at k = 0: the restricted space has three parameters (q, r, u)
        // but only the diagonal family q = u, r = 0 extends to multipliers;
        // the other directions force incoherent correction values.
        let ctx = ();
        let mut params = BTreeMap::new();
        params.insert("k".to_string(), <Q as Field>::from_i64(&ctx, 0));
        let alg = catalog::get::<Q>(&ctx, "W3", &params).unwrap();
        let nd = alg.nihil_decomposition(None).unwrap();
        let desc = describe_multiplier_sets(&alg, &nd).unwrap();
        assert_eq!(desc.weak_linear_part.dim(), 3);
        assert_eq!(desc.forced.liftable.dim(), 1);
        assert!(!desc.forced.notes.is_empty());
        let diag = Matrix::from_i64_rows(&ctx, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(desc.forced.liftable.contains(&flatten_map(&diag)));
    }

    #[test]
    fn left_identity_transport() {
        let c3 = get("C3");
        let t = multipliers_via_left_identity(&c3).unwrap().unwrap();
        assert_eq!(t.left_central.dim(), 3);
        assert_eq!(t.left_annihilator.dim(), 2);
        assert_eq!(t.space.dim(), 1);

        let u1 = get("U1");
        let t = multipliers_via_left_identity(&u1).unwrap().unwrap();
        assert_eq!(t.space.dim(), 1);
        let center = u1.central_elements().unwrap();
        assert_eq!(
            center,
            crate::linalg::Subspace::from_spanning_rows(&(), 3, vec![vq(&[1, 0, 0])])
        );

        let u2 = get("U2");
        let t = multipliers_via_left_identity(&u2).unwrap().unwrap();
        assert_eq!(t.space.dim(), 3);

        // No left identity: transport is absent.
        let s1 = get("S1");
        assert!(multipliers_via_left_identity(&s1).unwrap().is_none());
    }

    #[test]
    fn weak_decomposition_rank_arithmetic() {
        // LM' = M'_1 (+) L(A, A0) as subspaces of K^9, for a few shapes.
        for name in ["C1", "S1", "W1", "W3", "Z2"] {
            let mut params = BTreeMap::new();
            if name == "W3" {
                params.insert("k".to_string(), <Q as Field>::from_i64(&(), 1));
            }
            let alg = catalog::get::<Q>(&(), name, &params).unwrap();
            let nd = alg.nihil_decomposition(None).unwrap();
            let weak = solve_linear_weak(&alg);
            let restricted = solve_restricted_weak(&alg, &nd);
            let into_a0 = solve_weak_into(&alg, &nd.a0);
            assert_eq!(into_a0.dim(), alg.dim() * nd.a0.dim());
            assert_eq!(weak.dim(), restricted.dim() + into_a0.dim(), "{name}");
            let stacked =
                Matrix::stack_rows(&(), &[restricted.space.basis(), into_a0.space.basis()]);
            assert_eq!(stacked.rank(), weak.dim(), "{name}");
            assert_eq!(restricted.space.sum(&into_a0.space), weak.space, "{name}");
        }
    }
}
