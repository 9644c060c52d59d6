//! Deterministic exact linear algebra: RREF, rank, nullspace, span
//! membership, subspace intersection, and greedy complements.
//!
//! Subspaces are always stored through their unique reduced-row-echelon
//! basis, so equality of subspaces is entrywise comparison and every
//! downstream result (annihilators, multiplier spaces) is reproducible
//! bit for bit.

use crate::field::Field;
use std::fmt;

/// Dense matrix over an exact field, row-major storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<K: Field> {
    rows: usize,
    cols: usize,
    ctx: K::Ctx,
    data: Vec<K>,
}

/// Result of reduced row echelon elimination.
#[derive(Debug, Clone)]
pub struct Rref<K: Field> {
    pub reduced: Matrix<K>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<K: Field> Matrix<K> {
    pub fn zero(ctx: &K::Ctx, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            ctx: ctx.clone(),
            data: vec![K::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: &K::Ctx, n: usize) -> Self {
        let mut m = Self::zero(ctx, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = K::one(ctx);
        }
        m
    }

    pub fn from_rows(ctx: &K::Ctx, rows: Vec<Vec<K>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            assert_eq!(row.len(), n_cols, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: n_rows,
            cols: n_cols,
            ctx: ctx.clone(),
            data,
        }
    }

    pub fn from_fn(
        ctx: &K::Ctx,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> K,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            ctx: ctx.clone(),
            data,
        }
    }

    /// Integer-entry convenience constructor, used by fixtures and tests.
    pub fn from_i64_rows(ctx: &K::Ctx, rows: &[&[i64]]) -> Self {
        Self::from_rows(
            ctx,
            rows.iter()
                .map(|r| r.iter().map(|&v| K::from_i64(ctx, v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &K::Ctx {
        &self.ctx
    }

    pub fn at(&self, r: usize, c: usize) -> &K {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut K {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[K] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<K> {
        self.row(r).to_vec()
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[K]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| {
            self.at(j, i).clone()
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(&self.ctx, self.rows, self.cols, |i, j| {
            self.at(i, j).add(rhs.at(i, j))
        })
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(&self.ctx, self.rows, self.cols, |i, j| {
            self.at(i, j).sub(rhs.at(i, j))
        })
    }

    pub fn scale(&self, k: &K) -> Self {
        Self::from_fn(&self.ctx, self.rows, self.cols, |i, j| self.at(i, j).mul(k))
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matmul");
        Self::from_fn(&self.ctx, self.rows, rhs.cols, |i, j| {
            let mut acc = K::zero(&self.ctx);
            for l in 0..self.cols {
                acc = acc.add(&self.at(i, l).mul(rhs.at(l, j)));
            }
            acc
        })
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in apply");
        (0..self.rows)
            .map(|i| {
                let mut acc = K::zero(&self.ctx);
                for (l, x) in v.iter().enumerate() {
                    acc = acc.add(&self.at(i, l).mul(x));
                }
                acc
            })
            .collect()
    }

    pub fn stack_rows(ctx: &K::Ctx, parts: &[&Matrix<K>]) -> Self {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut rows = Vec::new();
        for part in parts {
            assert_eq!(part.cols, cols, "stack_rows: column mismatch");
            for r in 0..part.rows {
                rows.push(part.row_vec(r));
            }
        }
        if rows.is_empty() {
            return Self::zero(ctx, 0, cols);
        }
        Self::from_rows(ctx, rows)
    }

    /// Unique reduced row echelon form together with pivot columns and rank.
    pub fn rref(&self) -> Rref<K> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    m.data.swap(src * m.cols + c, pivot_row * m.cols + c);
                }
            }
            let inv = m
                .at(pivot_row, col)
                .inv()
                .expect("pivot is nonzero by construction");
            for c in col..m.cols {
                let v = m.at(pivot_row, c).mul(&inv);
                *m.at_mut(pivot_row, c) = v;
            }
            for r in 0..m.rows {
                if r == pivot_row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = m.at(r, c).sub(&factor.mul(m.at(pivot_row, c)));
                    *m.at_mut(r, c) = v;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let rank = pivots.len();
        Rref {
            reduced: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Kernel `{v : self * v = 0}` as a canonical subspace of K^cols.
    pub fn nullspace(&self) -> Subspace<K> {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![K::zero(&self.ctx); self.cols];
            v[free] = K::one(&self.ctx);
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = reduced.at(row, free).neg();
            }
            basis.push(v);
        }
        Subspace::from_spanning_rows(&self.ctx, self.cols, basis)
    }

    /// Canonical particular solution of `self * x = rhs` (free variables set
    /// to zero), or `None` when the system is inconsistent.
    pub fn solve_particular(&self, rhs: &[K]) -> Option<Vec<K>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Self::from_fn(&self.ctx, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                rhs[i].clone()
            }
        });
        let Rref {
            reduced, pivots, ..
        } = aug.rref();
        aug = reduced;
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![K::zero(&self.ctx); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug.at(row, self.cols).clone();
        }
        Some(x)
    }
}

impl<K: Field> fmt::Display for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c).render())?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// A subspace of K^ambient, held by its unique RREF basis (rows are basis
/// vectors). Two subspaces are equal iff their bases are entrywise equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<K: Field> {
    ambient: usize,
    basis: Matrix<K>,
}

impl<K: Field> Subspace<K> {
    pub fn from_spanning_rows(ctx: &K::Ctx, ambient: usize, rows: Vec<Vec<K>>) -> Self {
        if rows.is_empty() {
            return Self::zero_space(ctx, ambient);
        }
        let Rref { reduced, rank, .. } = Matrix::from_rows(ctx, rows).rref();
        let basis = Matrix::from_fn(ctx, rank, ambient, |i, j| reduced.at(i, j).clone());
        Subspace { ambient, basis }
    }

    pub fn zero_space(ctx: &K::Ctx, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zero(ctx, 0, ambient),
        }
    }

    pub fn full_space(ctx: &K::Ctx, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ctx, ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ctx(&self) -> &K::Ctx {
        self.basis.ctx()
    }

    pub fn basis(&self) -> &Matrix<K> {
        &self.basis
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[K]> {
        self.basis.rows_iter()
    }

    /// Coordinates of `v` with respect to the RREF basis, or `None` when
    /// `v` lies outside the span.
    pub fn coordinates_of(&self, v: &[K]) -> Option<Vec<K>> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        // RREF basis: the coordinate along basis row r is v[pivot_r].
        let mut coords = Vec::with_capacity(self.dim());
        let mut residue = v.to_vec();
        for r in 0..self.dim() {
            let pivot = self
                .basis
                .row(r)
                .iter()
                .position(|x| !x.is_zero())
                .expect("basis rows are nonzero");
            let c = residue[pivot].clone();
            for (j, b) in self.basis.row(r).iter().enumerate() {
                residue[j] = residue[j].sub(&c.mul(b));
            }
            coords.push(c);
        }
        if residue.iter().all(Field::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[K]) -> bool {
        self.coordinates_of(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace<K>) -> bool {
        other.basis_rows().all(|row| self.contains(row))
    }

    /// Rows `N` such that `v` lies in the subspace iff `N v = 0`.
    pub fn constraint_rows(&self) -> Matrix<K> {
        let null = self.basis.nullspace();
        null.basis.clone()
    }

    pub fn intersect(&self, other: &Subspace<K>) -> Subspace<K> {
        assert_eq!(self.ambient, other.ambient);
        let ctx = self.ctx().clone();
        let n1 = self.constraint_rows();
        let n2 = other.constraint_rows();
        Matrix::stack_rows(&ctx, &[&n1, &n2]).nullspace()
    }

    pub fn sum(&self, other: &Subspace<K>) -> Subspace<K> {
        assert_eq!(self.ambient, other.ambient);
        let ctx = self.ctx().clone();
        let rows = self
            .basis_rows()
            .chain(other.basis_rows())
            .map(|r| r.to_vec())
            .collect();
        Subspace::from_spanning_rows(&ctx, self.ambient, rows)
    }

    /// Deterministic complement spanned by standard basis vectors, chosen
    /// greedily in index order.
    pub fn greedy_standard_complement(&self) -> Subspace<K> {
        let ctx = self.ctx().clone();
        let mut stacked: Vec<Vec<K>> = self.basis_rows().map(|r| r.to_vec()).collect();
        let mut rank = self.dim();
        let mut chosen = Vec::new();
        for i in 0..self.ambient {
            if rank == self.ambient {
                break;
            }
            let mut e = vec![K::zero(&ctx); self.ambient];
            e[i] = K::one(&ctx);
            stacked.push(e.clone());
            let new_rank = Matrix::from_rows(&ctx, stacked.clone()).rank();
            if new_rank > rank {
                rank = new_rank;
                chosen.push(e);
            } else {
                stacked.pop();
            }
        }
        Subspace::from_spanning_rows(&ctx, self.ambient, chosen)
    }

    /// Directness test: `other` is a complement iff dims add up and the
    /// stacked bases have full rank.
    pub fn is_complement_of(&self, other: &Subspace<K>) -> bool {
        if self.ambient != other.ambient || self.dim() + other.dim() != self.ambient {
            return false;
        }
        let stacked = Matrix::stack_rows(self.ctx(), &[&self.basis, &other.basis]);
        stacked.rank() == self.ambient
    }
}

/// Error for complement overrides that are not direct complements.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("the supplied subspace is not a direct complement (dims {got_dim} + {expected_partner_dim} vs ambient {ambient}, stacked rank {stacked_rank})")]
pub struct NotAComplement {
    pub ambient: usize,
    pub got_dim: usize,
    pub expected_partner_dim: usize,
    pub stacked_rank: usize,
}

pub fn require_complement<K: Field>(
    fixed: &Subspace<K>,
    candidate: &Subspace<K>,
) -> Result<(), NotAComplement> {
    if fixed.is_complement_of(candidate) {
        Ok(())
    } else {
        let stacked = Matrix::stack_rows(fixed.ctx(), &[fixed.basis(), candidate.basis()]);
        Err(NotAComplement {
            ambient: fixed.ambient_dim(),
            got_dim: candidate.dim(),
            expected_partner_dim: fixed.dim(),
            stacked_rank: stacked.rank(),
        })
    }
}

/// Convenience used across modules and tests.
pub fn scalar_vec<K: Field>(ctx: &K::Ctx, entries: &[i64]) -> Vec<K> {
    entries.iter().map(|&v| K::from_i64(ctx, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Q = BigRational;

    fn qmat(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_i64_rows(&(), rows)
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::<Q>::identity(&(), 3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);

        let z = Matrix::<Q>::zero(&(), 2, 2);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_row_dependence() {
        let m = qmat(&[&[2, 4], &[1, 2]]);
        let r = m.rref();
        assert_eq!(r.reduced, qmat(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn nullspace_cases() {
        let id = Matrix::<Q>::identity(&(), 4);
        assert_eq!(id.nullspace().dim(), 0);

        let z = Matrix::<Q>::zero(&(), 2, 3);
        let ns = z.nullspace();
        assert_eq!(ns.dim(), 3);
        assert_eq!(ns, Subspace::full_space(&(), 3));

        let m = qmat(&[&[1, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.dim(), 1);
        assert_eq!(ns.basis().row(0), &scalar_vec::<Q>(&(), &[1, -1])[..]);
    }

    #[test]
    fn membership() {
        let s = Subspace::from_spanning_rows(&(), 2, vec![scalar_vec::<Q>(&(), &[1, 0])]);
        assert_eq!(
            s.coordinates_of(&scalar_vec::<Q>(&(), &[3, 0])),
            Some(scalar_vec::<Q>(&(), &[3]))
        );
        assert_eq!(s.coordinates_of(&scalar_vec::<Q>(&(), &[0, 1])), None);
        let full = Subspace::<Q>::full_space(&(), 2);
        assert!(full.contains(&scalar_vec::<Q>(&(), &[7, -9])));
    }

    #[test]
    fn greedy_complement_cases() {
        // Complement of span{e1 + e3} picks e1, e2.
        let s = Subspace::from_spanning_rows(&(), 3, vec![scalar_vec::<Q>(&(), &[1, 0, 1])]);
        let c = s.greedy_standard_complement();
        assert_eq!(
            c,
            Subspace::from_spanning_rows(
                &(),
                3,
                vec![
                    scalar_vec::<Q>(&(), &[1, 0, 0]),
                    scalar_vec::<Q>(&(), &[0, 1, 0])
                ]
            )
        );
        // Directness, verified by rank.
        let stacked = Matrix::stack_rows(&(), &[s.basis(), c.basis()]);
        assert_eq!(stacked.rank(), 3);

        let zero = Subspace::<Q>::zero_space(&(), 3);
        assert_eq!(
            zero.greedy_standard_complement(),
            Subspace::full_space(&(), 3)
        );
        let full = Subspace::<Q>::full_space(&(), 3);
        assert_eq!(
            full.greedy_standard_complement(),
            Subspace::zero_space(&(), 3)
        );
    }

    #[test]
    fn constraint_rows_characterize_membership() {
        let s = Subspace::from_spanning_rows(
            &(),
            3,
            vec![
                scalar_vec::<Q>(&(), &[1, 2, 0]),
                scalar_vec::<Q>(&(), &[0, 0, 1]),
            ],
        );
        let n = s.constraint_rows();
        for v in [
            scalar_vec::<Q>(&(), &[1, 2, 5]),
            scalar_vec::<Q>(&(), &[2, 4, -1]),
        ] {
            assert!(s.contains(&v));
            assert!(n.apply(&v).iter().all(Field::is_zero));
        }
        let out = scalar_vec::<Q>(&(), &[1, 0, 0]);
        assert!(!s.contains(&out));
        assert!(!n.apply(&out).iter().all(Field::is_zero));
    }

    #[test]
    fn solve_particular_consistency() {
        let m = qmat(&[&[1, 1, 0], &[0, 0, 1]]);
        let sol = m.solve_particular(&scalar_vec::<Q>(&(), &[2, 3])).unwrap();
        assert_eq!(m.apply(&sol), scalar_vec::<Q>(&(), &[2, 3]));
        // Free variable pinned to zero: canonical witness.
        assert_eq!(sol, scalar_vec::<Q>(&(), &[2, 0, 3]));

        let bad = qmat(&[&[1, 1], &[1, 1]]);
        assert_eq!(bad.solve_particular(&scalar_vec::<Q>(&(), &[0, 1])), None);
    }

    #[test]
    fn rref_survives_coefficient_growth() {
        // Hilbert-style matrix: eliminating it exactly produces huge
        // intermediate numerators and denominators, but the rank and the
        // reduced form stay exact.
        let n = 6;
        let m = Matrix::<Q>::from_fn(&(), n, n, |i, j| {
            Q::new(1.into(), ((i + j + 1) as i64).into())
        });
        let r = m.rref();
        assert_eq!(r.rank, n);
        assert_eq!(r.reduced, Matrix::identity(&(), n));
        assert_eq!(m.nullspace().dim(), 0);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix<Q>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..=6, r * c).prop_map(move |vals| {
                Matrix::from_fn(&(), r, c, |i, j| {
                    <Q as Field>::from_i64(&(), vals[i * c + j])
                })
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in small_matrix()) {
            let once = m.rref().reduced;
            let twice = once.rref().reduced;
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn nullspace_vectors_are_killed(m in small_matrix()) {
            let ns = m.nullspace();
            for v in ns.basis_rows() {
                prop_assert!(m.apply(v).iter().all(Field::is_zero));
            }
            prop_assert_eq!(m.rank() + ns.dim(), m.cols());
        }

        #[test]
        fn complement_is_direct(m in small_matrix()) {
            let s = Subspace::from_spanning_rows(
                &(), m.cols(), m.rows_iter().map(|r| r.to_vec()).collect());
            let c = s.greedy_standard_complement();
            prop_assert_eq!(s.dim() + c.dim(), m.cols());
            let stacked = Matrix::stack_rows(&(), &[s.basis(), c.basis()]);
            prop_assert_eq!(stacked.rank(), m.cols());
        }
    }
}
