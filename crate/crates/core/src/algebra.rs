//! Finite-dimensional algebras given by structure constants.
//!
//! An algebra of dimension n over an exact field stores the constants
//! `c[i][j][k]` with `e_i e_j = sum_k c[i][j][k] e_k`. Everything else —
//! products, annihilators, nihil decompositions, identities, central
//! elements, the structural matrix of a 3-dimensional zeropotent algebra —
//! is derived from that table by exact linear algebra.

use crate::field::{Field, FieldError};
use crate::linalg::{require_complement, scalar_vec, Matrix, NotAComplement, Subspace};

/// Coordinate vector of an algebra element with respect to the basis.
pub type AlgebraElement<K> = Vec<K>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("element has {got} coordinates, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation requires an associative algebra")]
    NotAssociative,
    #[error("operation requires a zeropotent algebra")]
    NotZeropotent,
    #[error("operation requires dimension {expected}, algebra has dimension {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error(transparent)]
    NotAComplement(#[from] NotAComplement),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Algebra over K by structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra<K: Field> {
    dim: usize,
    labels: Vec<String>,
    ctx: K::Ctx,
    /// Flattened `c[i][j][k]` at index `(i*dim + j)*dim + k`.
    constants: Vec<K>,
}

/// Nihil decomposition A = A1 (+) A0 with A0 the two-sided annihilator and
/// A1 a chosen direct complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NihilDecomposition<K: Field> {
    pub a0: Subspace<K>,
    pub a1: Subspace<K>,
    pub a1_is_subalgebra: bool,
    /// Projection onto A1 along A0; column j holds the image of e_j.
    pub projection: Matrix<K>,
}

impl<K: Field> Algebra<K> {
    pub fn new(ctx: &K::Ctx, labels: Vec<String>, constants: Vec<K>) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        if constants.len() != dim * dim * dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim * dim * dim,
                got: constants.len(),
            });
        }
        Ok(Algebra {
            dim,
            labels,
            ctx: ctx.clone(),
            constants,
        })
    }

    /// Builds from `table[i][j]` = coordinates of `e_i e_j`.
    pub fn from_table(
        ctx: &K::Ctx,
        labels: Vec<String>,
        table: Vec<Vec<Vec<K>>>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        let mut constants = Vec::with_capacity(dim * dim * dim);
        if table.len() != dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                got: table.len(),
            });
        }
        for row in table {
            if row.len() != dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            for cell in row {
                if cell.len() != dim {
                    return Err(AlgebraError::DimensionMismatch {
                        expected: dim,
                        got: cell.len(),
                    });
                }
                constants.extend(cell);
            }
        }
        Ok(Algebra {
            dim,
            labels,
            ctx: ctx.clone(),
            constants,
        })
    }

    /// Integer table shorthand: `rows[i][j]` lists the coordinates of `e_i e_j`.
    pub fn from_i64_table(ctx: &K::Ctx, labels: &[&str], rows: &[&[&[i64]]]) -> Self {
        let table = rows
            .iter()
            .map(|r| r.iter().map(|cell| scalar_vec::<K>(ctx, cell)).collect())
            .collect();
        Self::from_table(ctx, labels.iter().map(|s| s.to_string()).collect(), table)
            .expect("well-shaped literal table")
    }

    pub fn zero_algebra(ctx: &K::Ctx, dim: usize) -> Self {
        let labels = default_labels(dim);
        Algebra {
            dim,
            labels,
            ctx: ctx.clone(),
            constants: vec![K::zero(ctx); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ctx(&self) -> &K::Ctx {
        &self.ctx
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &K {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of the basis product `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[K] {
        let base = (i * self.dim + j) * self.dim;
        &self.constants[base..base + self.dim]
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement<K> {
        let mut v = vec![K::zero(&self.ctx); self.dim];
        v[i] = K::one(&self.ctx);
        v
    }

    pub fn zero_element(&self) -> AlgebraElement<K> {
        vec![K::zero(&self.ctx); self.dim]
    }

    fn check_element(&self, x: &[K]) -> Result<(), AlgebraError> {
        if x.len() == self.dim {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            })
        }
    }

    /// Bilinear product `(xy)_k = sum_{i,j} x_i y_j c[i][j][k]`.
    pub fn multiply(&self, x: &[K], y: &[K]) -> Result<AlgebraElement<K>, AlgebraError> {
        self.check_element(x)?;
        self.check_element(y)?;
        let mut out = self.zero_element();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi.mul(yj);
                for (k, out_k) in out.iter_mut().enumerate() {
                    *out_k = out_k.add(&xy.mul(self.constant(i, j, k)));
                }
            }
        }
        Ok(out)
    }

    /// Same table with the two factors swapped: `c_op[i][j][k] = c[j][i][k]`.
    pub fn opposite(&self) -> Self {
        let mut constants = vec![K::zero(&self.ctx); self.dim * self.dim * self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    constants[(i * self.dim + j) * self.dim + k] = self.constant(j, i, k).clone();
                }
            }
        }
        Algebra {
            dim: self.dim,
            labels: self.labels.clone(),
            ctx: self.ctx.clone(),
            constants,
        }
    }

    /// Left annihilator {a : a x = 0 for all x}.
    pub fn left_annihilator(&self) -> Subspace<K> {
        self.left_annihilator_system().nullspace()
    }

    /// Right annihilator {a : x a = 0 for all x}.
    pub fn right_annihilator(&self) -> Subspace<K> {
        self.right_annihilator_system().nullspace()
    }

    /// Two-sided annihilator A0 = Ann_l intersect Ann_r.
    pub fn two_sided_annihilator(&self) -> Subspace<K> {
        let l = self.left_annihilator_system();
        let r = self.right_annihilator_system();
        Matrix::stack_rows(&self.ctx, &[&l, &r]).nullspace()
    }

    /// Rows (j,k): sum_i a_i c[i][j][k] = 0.
    fn left_annihilator_system(&self) -> Matrix<K> {
        let n = self.dim;
        Matrix::from_fn(&self.ctx, n * n, n, |row, i| {
            let (j, k) = (row / n, row % n);
            self.constant(i, j, k).clone()
        })
    }

    /// Rows (i,k): sum_j a_j c[i][j][k] = 0.
    fn right_annihilator_system(&self) -> Matrix<K> {
        let n = self.dim;
        Matrix::from_fn(&self.ctx, n * n, n, |row, j| {
            let (i, k) = (row / n, row % n);
            self.constant(i, j, k).clone()
        })
    }

    /// A = A1 (+) A0 with A0 the two-sided annihilator. The default A1 is the
    /// greedy standard-vector complement; an override must be a direct
    /// complement of A0.
    pub fn nihil_decomposition(
        &self,
        a1_override: Option<&Subspace<K>>,
    ) -> Result<NihilDecomposition<K>, AlgebraError> {
        let a0 = self.two_sided_annihilator();
        let a1 = match a1_override {
            Some(c) => {
                require_complement(&a0, c)?;
                c.clone()
            }
            None => a0.greedy_standard_complement(),
        };
        let projection = projection_onto(&a1, &a0);
        let a1_is_subalgebra = self.is_subalgebra(&a1)?;
        Ok(NihilDecomposition {
            a0,
            a1,
            a1_is_subalgebra,
            projection,
        })
    }

    /// Closure of a subspace under the product, tested on basis pairs.
    pub fn is_subalgebra(&self, s: &Subspace<K>) -> Result<bool, AlgebraError> {
        let rows: Vec<Vec<K>> = s.basis_rows().map(|r| r.to_vec()).collect();
        for u in &rows {
            for v in &rows {
                if !s.contains(&self.multiply(u, v)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// One witness e with e e_j = e_j for all j, when the linear system is
    /// consistent (free coordinates pinned to zero).
    pub fn find_left_identity(&self) -> Option<AlgebraElement<K>> {
        self.identity_witness(true)
    }

    /// One witness e with e_j e = e_j for all j.
    pub fn find_right_identity(&self) -> Option<AlgebraElement<K>> {
        self.identity_witness(false)
    }

    /// Two-sided identity; unique when it exists.
    pub fn find_identity(&self) -> Option<AlgebraElement<K>> {
        let left = self.find_left_identity()?;
        let right = self.find_right_identity()?;
        // A left and a right identity coincide, so both witnesses are the
        // unique identity.
        debug_assert_eq!(left, right);
        Some(left)
    }

    fn identity_witness(&self, left: bool) -> Option<AlgebraElement<K>> {
        let n = self.dim;
        let system = Matrix::from_fn(&self.ctx, n * n, n, |row, a| {
            let (j, k) = (row / n, row % n);
            if left {
                self.constant(a, j, k).clone()
            } else {
                self.constant(j, a, k).clone()
            }
        });
        let mut rhs = vec![K::zero(&self.ctx); n * n];
        for j in 0..n {
            rhs[j * n + j] = K::one(&self.ctx);
        }
        system.solve_particular(&rhs)
    }

    /// All triples `(e_i e_j) e_k = e_i (e_j e_k)`.
    pub fn is_associative(&self) -> bool {
        let n = self.dim;
        for i in 0..n {
            let ei = self.basis_element(i);
            for j in 0..n {
                let ej = self.basis_element(j);
                let eij = self.multiply(&ei, &ej).expect("basis elements");
                for k in 0..n {
                    let ek = self.basis_element(k);
                    let left = self.multiply(&eij, &ek).expect("products");
                    let ejk = self.multiply(&ej, &ek).expect("basis elements");
                    let right = self.multiply(&ei, &ejk).expect("products");
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Basis-pair test: `e_i e_i = 0` and `e_i e_j = -e_j e_i`. By
    /// bilinearity this forces `x^2 = 0` for every element.
    pub fn is_zeropotent(&self) -> bool {
        let n = self.dim;
        for i in 0..n {
            if self.basis_product(i, i).iter().any(|c| !c.is_zero()) {
                return false;
            }
            for j in (i + 1)..n {
                let ij = self.basis_product(i, j);
                let ji = self.basis_product(j, i);
                if (0..n).any(|k| ij[k].add(&ji[k]) != K::zero(&self.ctx)) {
                    return false;
                }
            }
        }
        true
    }

    /// Space of left central elements {a : x a y = a x y}, linearized as
    /// `e_i (a e_j) = a (e_i e_j)` over all basis pairs. Requires
    /// associativity so that the three-fold products are unambiguous.
    pub fn left_central_elements(&self) -> Result<Subspace<K>, AlgebraError> {
        self.require_associative()?;
        Ok(self.left_central_system().nullspace())
    }

    /// Space of right central elements {a : x a y = x y a}.
    pub fn right_central_elements(&self) -> Result<Subspace<K>, AlgebraError> {
        self.require_associative()?;
        let n = self.dim;
        // Rows (i,j,m): sum_l a_l sum_k (c[l][j][k] - c[j][l][k]) c[i][k][m] = 0.
        let system = Matrix::from_fn(&self.ctx, n * n * n, n, |row, l| {
            let i = row / (n * n);
            let j = (row / n) % n;
            let m = row % n;
            let mut acc = K::zero(&self.ctx);
            for k in 0..n {
                let d = self.constant(l, j, k).sub(self.constant(j, l, k));
                acc = acc.add(&d.mul(self.constant(i, k, m)));
            }
            acc
        });
        Ok(system.nullspace())
    }

    /// Center {a : a x = x a}.
    pub fn central_elements(&self) -> Result<Subspace<K>, AlgebraError> {
        self.require_associative()?;
        let n = self.dim;
        let system = Matrix::from_fn(&self.ctx, n * n, n, |row, l| {
            let (i, m) = (row / n, row % n);
            self.constant(l, i, m).sub(self.constant(i, l, m))
        });
        Ok(system.nullspace())
    }

    fn left_central_system(&self) -> Matrix<K> {
        let n = self.dim;
        // Rows (i,j,m): sum_l a_l [sum_k c[l][j][k] c[i][k][m] - c[i][j][k] c[l][k][m]] = 0.
        Matrix::from_fn(&self.ctx, n * n * n, n, |row, l| {
            let i = row / (n * n);
            let j = (row / n) % n;
            let m = row % n;
            let mut acc = K::zero(&self.ctx);
            for k in 0..n {
                acc = acc.add(&self.constant(l, j, k).mul(self.constant(i, k, m)));
                acc = acc.sub(&self.constant(i, j, k).mul(self.constant(l, k, m)));
            }
            acc
        })
    }

    pub fn require_associative(&self) -> Result<(), AlgebraError> {
        if self.is_associative() {
            Ok(())
        } else {
            Err(AlgebraError::NotAssociative)
        }
    }

    /// Span of all basis products `e_i e_j` (the linear hull of the product
    /// set).
    pub fn product_span(&self) -> Subspace<K> {
        let mut rows = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                rows.push(self.basis_product(i, j).to_vec());
            }
        }
        Subspace::from_spanning_rows(&self.ctx, self.dim, rows)
    }

    /// Structural matrix of a 3-dimensional zeropotent algebra: rows are the
    /// coordinates of fg, ge, ef. Returns the matrix and its rank.
    pub fn structural_matrix(&self) -> Result<(Matrix<K>, usize), AlgebraError> {
        if self.dim != 3 {
            return Err(AlgebraError::WrongDimension {
                expected: 3,
                got: self.dim,
            });
        }
        if !self.is_zeropotent() {
            return Err(AlgebraError::NotZeropotent);
        }
        let rows = vec![
            self.basis_product(1, 2).to_vec(), // fg
            self.basis_product(2, 0).to_vec(), // ge
            self.basis_product(0, 1).to_vec(), // ef
        ];
        let m = Matrix::from_rows(&self.ctx, rows);
        let rank = m.rank();
        Ok((m, rank))
    }

    /// Expands a 3x3 structural matrix into the zeropotent algebra it
    /// describes: ef, ge, fg are read off the rows, the rest of the table
    /// follows by antisymmetry with zero squares.
    pub fn from_structural_matrix(
        ctx: &K::Ctx,
        labels: Vec<String>,
        s: &Matrix<K>,
    ) -> Result<Self, AlgebraError> {
        if s.rows() != 3 || s.cols() != 3 || labels.len() != 3 {
            return Err(AlgebraError::WrongDimension {
                expected: 3,
                got: s.rows().max(s.cols()).max(labels.len()),
            });
        }
        let mut alg = Algebra {
            dim: 3,
            labels,
            ctx: ctx.clone(),
            constants: vec![K::zero(ctx); 27],
        };
        let assign = |alg: &mut Algebra<K>, i: usize, j: usize, coords: Vec<K>| {
            for (k, v) in coords.into_iter().enumerate() {
                alg.constants[(i * 3 + j) * 3 + k] = v;
            }
        };
        let fg = s.row_vec(0);
        let ge = s.row_vec(1);
        let ef = s.row_vec(2);
        let neg = |v: &[K]| v.iter().map(Field::neg).collect::<Vec<_>>();
        assign(&mut alg, 0, 1, ef.clone());
        assign(&mut alg, 1, 0, neg(&ef));
        assign(&mut alg, 2, 0, ge.clone());
        assign(&mut alg, 0, 2, neg(&ge));
        assign(&mut alg, 1, 2, fg.clone());
        assign(&mut alg, 2, 1, neg(&fg));
        Ok(alg)
    }
}

/// Projection matrix onto `target` along `kernel` (columns are images of the
/// standard basis vectors). The two subspaces must be direct complements.
pub fn projection_onto<K: Field>(target: &Subspace<K>, kernel: &Subspace<K>) -> Matrix<K> {
    let n = target.ambient_dim();
    let ctx = target.ctx().clone();
    debug_assert!(target.is_complement_of(kernel) || kernel.is_complement_of(target));
    // Columns of M are kernel basis vectors then target basis vectors;
    // solving M x = e_j splits e_j into its two components.
    let k_dim = kernel.dim();
    let t_dim = target.dim();
    let m = Matrix::from_fn(&ctx, n, k_dim + t_dim, |i, j| {
        if j < k_dim {
            kernel.basis().at(j, i).clone()
        } else {
            target.basis().at(j - k_dim, i).clone()
        }
    });
    Matrix::from_fn(&ctx, n, n, |i, j| {
        let mut e = vec![K::zero(&ctx); n];
        e[j] = K::one(&ctx);
        let x = m
            .solve_particular(&e)
            .expect("direct complements span the space");
        // Rebuild only the target component.
        let mut acc = K::zero(&ctx);
        for (t, coeff) in x[k_dim..].iter().enumerate() {
            acc = acc.add(&coeff.mul(target.basis().at(t, i)));
        }
        acc
    })
}

pub fn default_labels(dim: usize) -> Vec<String> {
    const NAMES: [&str; 8] = ["e", "f", "g", "h", "u", "v", "w", "x"];
    (0..dim)
        .map(|i| {
            NAMES
                .get(i)
                .map(|s| s.to_string())
                .unwrap_or_else(|| format!("e{i}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn vq(entries: &[i64]) -> Vec<Q> {
        scalar_vec::<Q>(&(), entries)
    }

    /// f g = e, g f = -e, all other products zero.
    fn c1() -> Algebra<Q> {
        Algebra::from_i64_table(
            &(),
            &["e", "f", "g"],
            &[
                &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
                &[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]],
                &[&[0, 0, 0], &[-1, 0, 0], &[0, 0, 0]],
            ],
        )
    }

    /// f e = e, f f = f, g f = g.
    fn c2() -> Algebra<Q> {
        Algebra::from_i64_table(
            &(),
            &["e", "f", "g"],
            &[
                &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
                &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]],
                &[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]],
            ],
        )
    }

    /// g e = e, g f = f, g g = g.
    fn c3() -> Algebra<Q> {
        Algebra::from_i64_table(
            &(),
            &["e", "f", "g"],
            &[
                &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
                &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
                &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            ],
        )
    }

    /// e g = e, f g = f, g g = g.
    fn c4() -> Algebra<Q> {
        Algebra::from_i64_table(
            &(),
            &["e", "f", "g"],
            &[
                &[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]],
                &[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]],
                &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 1]],
            ],
        )
    }

    /// e e = f, e f = g, f e = g.
    fn s1() -> Algebra<Q> {
        Algebra::from_i64_table(
            &(),
            &["e", "f", "g"],
            &[
                &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]],
                &[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]],
                &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
            ],
        )
    }

    /// Diagonal unital table: e e = e, f f = f, g g = g.
    fn u2() -> Algebra<Q> {
        Algebra::from_i64_table(
            &(),
            &["e", "f", "g"],
            &[
                &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]],
                &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]],
                &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 1]],
            ],
        )
    }

    fn structural(rows: &[&[i64]]) -> Algebra<Q> {
        let s = Matrix::from_i64_rows(&(), rows);
        Algebra::from_structural_matrix(&(), default_labels(3), &s).unwrap()
    }

    fn z2() -> Algebra<Q> {
        structural(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 1]])
    }

    fn z3() -> Algebra<Q> {
        structural(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]])
    }

    #[test]
    fn multiply_on_fixtures() {
        let a = c1();
        let f = a.basis_element(1);
        let g = a.basis_element(2);
        assert_eq!(a.multiply(&f, &g).unwrap(), vq(&[1, 0, 0]));
        assert_eq!(a.multiply(&g, &f).unwrap(), vq(&[-1, 0, 0]));
        assert_eq!(a.multiply(&a.zero_element(), &g).unwrap(), vq(&[0, 0, 0]));

        // e + g spans the two-sided annihilator of z2.
        let z = z2();
        let eg = vq(&[1, 0, 1]);
        assert_eq!(
            z.multiply(&eg, &z.basis_element(1)).unwrap(),
            vq(&[0, 0, 0])
        );
    }

    #[test]
    fn multiply_dimension_mismatch() {
        let a = c1();
        assert!(matches!(
            a.multiply(&vq(&[1, 0]), &a.basis_element(0)),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn opposite_pairs() {
        assert_eq!(c3().opposite(), c4());
        assert_eq!(c3().opposite().opposite(), c3());
        // Commutative table is fixed by opposition.
        assert_eq!(u2().opposite(), u2());
    }

    #[test]
    fn annihilators_on_fixtures() {
        let a = c1();
        let ke = Subspace::from_spanning_rows(&(), 3, vec![vq(&[1, 0, 0])]);
        assert_eq!(a.left_annihilator(), ke);
        assert_eq!(a.right_annihilator(), ke);
        assert_eq!(a.two_sided_annihilator(), ke);

        let a = c2();
        assert_eq!(
            a.left_annihilator(),
            Subspace::from_spanning_rows(&(), 3, vec![vq(&[1, 0, 0])])
        );
        assert_eq!(
            a.right_annihilator(),
            Subspace::from_spanning_rows(&(), 3, vec![vq(&[0, 0, 1])])
        );
        assert_eq!(a.two_sided_annihilator().dim(), 0);

        let zero = Algebra::<Q>::zero_algebra(&(), 3);
        assert_eq!(zero.left_annihilator(), Subspace::full_space(&(), 3));
        assert_eq!(zero.right_annihilator(), Subspace::full_space(&(), 3));
        assert_eq!(zero.two_sided_annihilator(), Subspace::full_space(&(), 3));
    }

    #[test]
    fn nihil_decomposition_on_fixtures() {
        let a = s1();
        let nd = a.nihil_decomposition(None).unwrap();
        assert_eq!(
            nd.a0,
            Subspace::from_spanning_rows(&(), 3, vec![vq(&[0, 0, 1])])
        );
        assert_eq!(
            nd.a1,
            Subspace::from_spanning_rows(&(), 3, vec![vq(&[1, 0, 0]), vq(&[0, 1, 0])])
        );
        // e f = g falls into A0, so span{e, f} is not closed in s1.
        assert!(!nd.a1_is_subalgebra);

        // s3 (diagonal on e, f) does close on the same complement.
        let s3 = Algebra::<Q>::from_i64_table(
            &(),
            &["e", "f", "g"],
            &[
                &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]],
                &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]],
                &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
            ],
        );
        assert!(s3.nihil_decomposition(None).unwrap().a1_is_subalgebra);

        let z = z2();
        let nd = z.nihil_decomposition(None).unwrap();
        assert_eq!(
            nd.a0,
            Subspace::from_spanning_rows(&(), 3, vec![vq(&[1, 0, 1])])
        );
        assert_eq!(
            nd.a1,
            Subspace::from_spanning_rows(&(), 3, vec![vq(&[1, 0, 0]), vq(&[0, 1, 0])])
        );

        let zero = Algebra::<Q>::zero_algebra(&(), 2);
        let nd = zero.nihil_decomposition(None).unwrap();
        assert_eq!(nd.a0, Subspace::full_space(&(), 2));
        assert_eq!(nd.a1.dim(), 0);

        // Projection is idempotent with the right kernel and image.
        let a = c1();
        let nd = a.nihil_decomposition(None).unwrap();
        let p = &nd.projection;
        assert_eq!(p.matmul(p), *p);
        assert_eq!(p.nullspace(), nd.a0);
        for row in nd.a1.basis_rows() {
            assert_eq!(p.apply(row), row.to_vec());
        }
    }

    #[test]
    fn nihil_rejects_bad_override() {
        let a = c1(); // A0 = Ke
        let bad = Subspace::from_spanning_rows(&(), 3, vec![vq(&[1, 0, 0]), vq(&[0, 1, 0])]);
        assert!(matches!(
            a.nihil_decomposition(Some(&bad)),
            Err(AlgebraError::NotAComplement(_))
        ));
    }

    #[test]
    fn identities_on_fixtures() {
        assert_eq!(c3().find_left_identity(), Some(vq(&[0, 0, 1])));
        assert_eq!(c3().find_right_identity(), None);
        assert_eq!(c4().find_right_identity(), Some(vq(&[0, 0, 1])));
        assert_eq!(u2().find_identity(), Some(vq(&[1, 1, 1])));
        assert_eq!(
            Algebra::<Q>::zero_algebra(&(), 3).find_left_identity(),
            None
        );
    }

    #[test]
    fn associativity_and_zeropotency() {
        assert!(u2().is_associative());
        assert!(c1().is_associative());
        assert!(!z3().is_associative());
        assert!(z3().is_zeropotent());
        assert!(c1().is_zeropotent());
        assert!(!u2().is_zeropotent());
        let zero = Algebra::<Q>::zero_algebra(&(), 3);
        assert!(zero.is_associative());
        assert!(zero.is_zeropotent());
    }

    #[test]
    fn central_elements_on_fixtures() {
        // Center of the diagonal unital algebra is everything.
        assert_eq!(
            u2().central_elements().unwrap(),
            Subspace::full_space(&(), 3)
        );
        // Every element of c3 is left central.
        assert_eq!(
            c3().left_central_elements().unwrap(),
            Subspace::full_space(&(), 3)
        );
        assert!(matches!(
            z3().central_elements(),
            Err(AlgebraError::NotAssociative)
        ));
    }

    #[test]
    fn structural_matrix_round_trip() {
        let (m, rank) = z2().structural_matrix().unwrap();
        assert_eq!(
            m,
            Matrix::from_i64_rows(&(), &[&[0, 0, 1], &[0, 0, 0], &[0, 0, 1]])
        );
        assert_eq!(rank, 1);

        let z5 = structural(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]]);
        let (m, rank) = z5.structural_matrix().unwrap();
        assert_eq!(
            m,
            Matrix::from_i64_rows(&(), &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]])
        );
        assert_eq!(rank, 2);

        let z0 = Algebra::<Q>::zero_algebra(&(), 3);
        let (m, rank) = z0.structural_matrix().unwrap();
        assert!(m.is_zero());
        assert_eq!(rank, 0);

        assert!(matches!(
            s1().structural_matrix(),
            Err(AlgebraError::NotZeropotent)
        ));
        assert!(matches!(
            Algebra::<Q>::zero_algebra(&(), 2).structural_matrix(),
            Err(AlgebraError::WrongDimension { .. })
        ));
    }

    #[test]
    fn product_span_on_fixtures() {
        // s2: e e = e, f f = g.
        let s2 = Algebra::from_i64_table(
            &(),
            &["e", "f", "g"],
            &[
                &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]],
                &[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]],
                &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
            ],
        );
        assert_eq!(
            s2.product_span(),
            Subspace::from_spanning_rows(&(), 3, vec![vq(&[1, 0, 0]), vq(&[0, 0, 1])])
        );
        assert_eq!(Algebra::<Q>::zero_algebra(&(), 3).product_span().dim(), 0);
        assert_eq!(u2().product_span(), Subspace::full_space(&(), 3));
    }

    #[test]
    fn zeropotent_expansion_matches_table() {
        // z2 table: ef = g, fg = g, ge = 0 and the antisymmetric mirror.
        let z = z2();
        assert_eq!(z.basis_product(0, 1), &vq(&[0, 0, 1])[..]);
        assert_eq!(z.basis_product(1, 0), &vq(&[0, 0, -1])[..]);
        assert_eq!(z.basis_product(1, 2), &vq(&[0, 0, 1])[..]);
        assert_eq!(z.basis_product(2, 1), &vq(&[0, 0, -1])[..]);
        assert_eq!(z.basis_product(2, 0), &vq(&[0, 0, 0])[..]);
        assert_eq!(z.basis_product(0, 2), &vq(&[0, 0, 0])[..]);
    }
}
