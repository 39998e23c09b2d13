//! Exact linear algebra over a [`Field`]: dense matrices with Gauss-Jordan
//! reduction, and canonical subspaces stored as sparse rows in reduced
//! row-echelon form.
//!
//! The resolution engine works with spaces of a few thousand dimensions whose
//! vectors are mostly zero, so everything past the dense [`rref`] entry point
//! runs on [`SparseVec`] rows and an incremental [`EchelonBuilder`].

use crate::error::LinalgError;
use crate::field::Field;

/// Sparse coordinate vector: strictly increasing indices, no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> SparseVec<F> {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize, ctx: F::Ctx) -> Self {
        SparseVec { entries: vec![(index, F::one(ctx))] }
    }

    /// Builds from unsorted `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, F)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, F)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = acc.add(&v),
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[F]) -> Self {
        SparseVec { entries: v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect() }
    }

    pub fn to_dense(&self, len: usize, ctx: F::Ctx) -> Vec<F> {
        let mut out = vec![F::zero(ctx); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    /// Largest index plus one (0 for the zero vector).
    pub fn support_end(&self) -> usize {
        self.entries.last().map_or(0, |(i, _)| i + 1)
    }

    pub fn get(&self, index: usize) -> Option<&F> {
        self.entries.binary_search_by_key(&index, |(i, _)| *i).ok().map(|k| &self.entries[k].1)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return SparseVec::zero();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v.mul(c))).collect() }
    }

    /// Index map applied to every entry; `f` must be injective.
    pub fn remap(&self, f: impl Fn(usize) -> usize) -> Self {
        let mut entries: Vec<(usize, F)> = self.entries.iter().map(|(i, v)| (f(*i), v.clone())).collect();
        entries.sort_by_key(|(i, _)| *i);
        SparseVec { entries }
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &F, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c.mul(y)));
                        b.next();
                    } else {
                        let s = x.add(&c.mul(y));
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c.mul(y)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVec { entries: out }
    }

    pub fn dot_dense(&self, dense: &[F], ctx: F::Ctx) -> F {
        let mut acc = F::zero(ctx);
        for (i, v) in &self.entries {
            acc = acc.add(&v.mul(&dense[*i]));
        }
        acc
    }
}

/// Dense matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    ctx: F::Ctx,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize, ctx: F::Ctx) -> Self {
        Matrix { rows, cols, ctx, data: vec![F::zero(ctx); rows * cols] }
    }

    pub fn identity(n: usize, ctx: F::Ctx) -> Self {
        let mut m = Self::zeros(n, n, ctx);
        for i in 0..n {
            m.set(i, i, F::one(ctx));
        }
        m
    }

    /// `cols` is needed to describe matrices with zero rows.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize, ctx: F::Ctx) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::Ragged { row: r, expected: cols, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, ctx, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> F::Ctx {
        self.ctx
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec<F>> {
        (0..self.rows).map(|r| SparseVec::from_dense(self.row(r))).collect()
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::LengthMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|r| self.row(r).iter().zip(v).fold(F::zero(self.ctx), |acc, (a, b)| acc.add(&a.mul(b)))).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<F: Field> {
    pub rank: usize,
    pub reduced: Matrix<F>,
    pub pivot_columns: Vec<usize>,
}

/// Reduced row-echelon form by plain Gauss-Jordan elimination.
pub fn rref<F: Field>(m: &Matrix<F>) -> Rref<F> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = a.get(row, col).inv().expect("nonzero pivot");
        for c in col..a.cols {
            let v = a.get(row, c).mul(&inv);
            a.set(row, c, v);
        }
        for r in 0..a.rows {
            if r == row || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for c in col..a.cols {
                let v = a.get(r, c).sub(&factor.mul(a.get(row, c)));
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref { rank: pivots.len(), reduced: a, pivot_columns: pivots }
}

/// Incremental row echelon form.
///
/// Rows are normalized to a leading 1 but not back-substituted until
/// [`EchelonBuilder::into_subspace`].
pub struct EchelonBuilder<F: Field> {
    dim: usize,
    ctx: F::Ctx,
    rows: Vec<SparseVec<F>>,
    pivot_row: Vec<Option<usize>>,
    scratch: Vec<F>,
}

impl<F: Field> EchelonBuilder<F> {
    pub fn new(dim: usize, ctx: F::Ctx) -> Self {
        EchelonBuilder { dim, ctx, rows: Vec::new(), pivot_row: vec![None; dim], scratch: vec![F::zero(ctx); dim] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Normal form of `v` modulo the current span: the unique representative
    /// supported away from pivot columns.
    pub fn reduce(&mut self, v: &SparseVec<F>) -> SparseVec<F> {
        let Some(start) = v.leading() else {
            return SparseVec::zero();
        };
        debug_assert!(v.support_end() <= self.dim);
        for (i, x) in v.entries() {
            self.scratch[*i] = x.clone();
        }
        let mut out = Vec::new();
        for pos in start..self.dim {
            if self.scratch[pos].is_zero() {
                continue;
            }
            match self.pivot_row[pos] {
                Some(r) => {
                    let c = std::mem::replace(&mut self.scratch[pos], F::zero(self.ctx));
                    for (j, val) in self.rows[r].entries().iter().skip(1) {
                        self.scratch[*j].sub_mul_assign(&c, val);
                    }
                }
                None => out.push((pos, std::mem::replace(&mut self.scratch[pos], F::zero(self.ctx)))),
            }
        }
        SparseVec { entries: out }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let r = self.reduce(v);
        let Some(lead) = r.leading() else {
            return false;
        };
        let inv = r.entries()[0].1.inv().expect("nonzero leading entry");
        let row = r.scale(&inv);
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    /// Back-substitutes into the canonical reduced basis.
    pub fn into_subspace(mut self) -> Subspace<F> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r].leading().unwrap()));
        let mut done: Vec<Option<SparseVec<F>>> = vec![None; self.dim];
        let mut finished = Vec::with_capacity(order.len());
        for r in order {
            let row = std::mem::replace(&mut self.rows[r], SparseVec::zero());
            let lead = row.leading().unwrap();
            for (i, x) in row.entries() {
                self.scratch[*i] = x.clone();
            }
            let mut out = Vec::with_capacity(row.nnz());
            #[allow(clippy::needless_range_loop)] // indexes both scratch and done
            for pos in lead..self.dim {
                if self.scratch[pos].is_zero() {
                    continue;
                }
                if pos != lead {
                    if let Some(other) = &done[pos] {
                        let c = std::mem::replace(&mut self.scratch[pos], F::zero(self.ctx));
                        for (j, val) in other.entries().iter().skip(1) {
                            self.scratch[*j].sub_mul_assign(&c, val);
                        }
                        continue;
                    }
                }
                out.push((pos, std::mem::replace(&mut self.scratch[pos], F::zero(self.ctx))));
            }
            let reduced = SparseVec { entries: out };
            done[lead] = Some(reduced.clone());
            finished.push(reduced);
        }
        finished.reverse();
        Subspace::from_canonical_rows(self.dim, self.ctx, finished)
    }
}

/// Subspace of `F^n` held as its canonical reduced row-echelon basis, so
/// equality of subspaces is equality of values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    ambient_dim: usize,
    ctx: F::Ctx,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    fn from_canonical_rows(ambient_dim: usize, ctx: F::Ctx, rows: Vec<SparseVec<F>>) -> Self {
        let pivots = rows.iter().map(|r| r.leading().expect("nonzero row")).collect();
        Subspace { ambient_dim, ctx, rows, pivots }
    }

    pub fn zero(ambient_dim: usize, ctx: F::Ctx) -> Self {
        Subspace { ambient_dim, ctx, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize, ctx: F::Ctx) -> Self {
        let rows = (0..ambient_dim).map(|i| SparseVec::unit(i, ctx)).collect();
        Subspace { ambient_dim, ctx, rows, pivots: (0..ambient_dim).collect() }
    }

    pub fn span<'a>(ambient_dim: usize, ctx: F::Ctx, vectors: impl IntoIterator<Item = &'a SparseVec<F>>) -> Self {
        let mut b = EchelonBuilder::new(ambient_dim, ctx);
        for v in vectors {
            b.insert(v);
        }
        b.into_subspace()
    }

    pub fn span_dense(ambient_dim: usize, ctx: F::Ctx, vectors: &[Vec<F>]) -> Result<Self, LinalgError> {
        let sparse = vectors
            .iter()
            .map(|v| {
                if v.len() != ambient_dim {
                    Err(LinalgError::LengthMismatch { expected: ambient_dim, found: v.len() })
                } else {
                    Ok(SparseVec::from_dense(v))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::span(ambient_dim, ctx, &sparse))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ctx(&self) -> F::Ctx {
        self.ctx
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn basis_dense(&self) -> Vec<Vec<F>> {
        self.rows.iter().map(|r| r.to_dense(self.ambient_dim, self.ctx)).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Normal form modulo this subspace (zero exactly on members).
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = v.get(p) {
                out = out.add_scaled(&c.neg(), row);
            }
        }
        out
    }

    pub fn contains_sparse(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains(&self, v: &[F]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient_dim {
            return Err(LinalgError::LengthMismatch { expected: self.ambient_dim, found: v.len() });
        }
        Ok(self.contains_sparse(&SparseVec::from_dense(v)))
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> Result<bool, LinalgError> {
        self.check_ambient(other)?;
        Ok(self.rows.iter().all(|r| other.contains_sparse(r)))
    }

    fn check_ambient(&self, other: &Subspace<F>) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch { left: self.ambient_dim, right: other.ambient_dim });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
        self.check_ambient(other)?;
        Ok(Subspace::span(self.ambient_dim, self.ctx, self.rows.iter().chain(&other.rows)))
    }

    /// Vectors orthogonal to every basis vector under the standard pairing.
    pub fn annihilator(&self) -> Subspace<F> {
        kernel_of_rows(self.rows.iter().cloned(), self.ambient_dim, self.ctx)
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }
}

/// Kernel of the matrix whose rows are `rows`, as a canonical subspace.
///
/// Eliminating with the column order reversed makes every kernel vector
/// built from a free column already lead at that column and vanish on the
/// other free columns, which is the canonical reduced form; no second
/// reduction pass is needed.
pub fn kernel_of_rows<F: Field>(rows: impl IntoIterator<Item = SparseVec<F>>, ncols: usize, ctx: F::Ctx) -> Subspace<F> {
    let flip = |i: usize| ncols - 1 - i;
    let mut b = EchelonBuilder::new(ncols, ctx);
    for row in rows {
        b.insert(&row.remap(flip));
    }
    let reduced = b.into_subspace();
    let mut is_pivot = vec![false; ncols];
    for &p in reduced.pivots() {
        is_pivot[p] = true;
    }
    // kernel vector per free column (flipped coordinates)
    let mut columns: Vec<Vec<(usize, F)>> = vec![Vec::new(); ncols];
    for (row, &p) in reduced.basis().iter().zip(reduced.pivots()) {
        for (c, val) in row.entries().iter().skip(1) {
            debug_assert!(!is_pivot[*c]);
            columns[*c].push((flip(p), val.neg()));
        }
    }
    let mut out = Vec::with_capacity(ncols - reduced.dim());
    for f in 0..ncols {
        let flipped = flip(f);
        if is_pivot[flipped] {
            continue;
        }
        let mut entries = std::mem::take(&mut columns[flipped]);
        entries.push((f, F::one(ctx)));
        entries.sort_by_key(|(i, _)| *i);
        out.push(SparseVec { entries });
    }
    Subspace::from_canonical_rows(ncols, ctx, out)
}

/// Rank of the span of `vectors`.
pub fn rank_of<F: Field>(vectors: impl IntoIterator<Item = SparseVec<F>>, dim: usize, ctx: F::Ctx) -> usize {
    let mut b = EchelonBuilder::new(dim, ctx);
    for v in vectors {
        b.insert(&v);
    }
    b.rank()
}

/// `{v : m v = 0}`.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    kernel_of_rows(m.sparse_rows(), m.cols(), m.ctx())
}

/// Vectors completing a basis of `sub` to a basis of `ambient`.
///
/// Each basis vector of `ambient` is reduced modulo `sub`, landing on the
/// non-pivot coordinates of `sub`; the canonical echelon basis of those
/// remainders is returned. When `ambient` is the whole space this is the
/// list of standard vectors at the non-pivot positions of `sub`.
pub fn complement_basis<F: Field>(sub: &Subspace<F>, ambient: &Subspace<F>) -> Result<Vec<SparseVec<F>>, LinalgError> {
    if !sub.is_subspace_of(ambient)? {
        return Err(LinalgError::NotContained);
    }
    let remainders: Vec<SparseVec<F>> = ambient.basis().iter().map(|v| sub.reduce(v)).collect();
    let complement = Subspace::span(ambient.ambient_dim(), ambient.ctx(), &remainders);
    debug_assert_eq!(complement.dim() + sub.dim(), ambient.dim());
    Ok(complement.rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Scalar};
    use proptest::prelude::*;

    fn q(v: i64) -> Scalar {
        Scalar::integer(v)
    }

    fn mat(rows: &[&[i64]], cols: usize) -> Matrix<Scalar> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect(), cols, ()).unwrap()
    }

    fn dense(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let id = rref(&Matrix::<Scalar>::identity(2, ()));
        assert_eq!(id.rank, 2);
        assert_eq!(id.pivot_columns, vec![0, 1]);

        let z = rref(&Matrix::<Scalar>::zeros(3, 4, ()));
        assert_eq!(z.rank, 0);
        assert!(z.pivot_columns.is_empty());

        let r = rref(&mat(&[&[1, 2], &[2, 4]], 2));
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, mat(&[&[1, 2], &[0, 0]], 2));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::<Scalar>::identity(3, ())).is_zero());
        let k = kernel_basis(&Matrix::<Scalar>::zeros(2, 5, ()));
        assert_eq!(k, Subspace::full(5, ()));
        // [[1,2]] -> span{(-2,1)}, canonical form leads with 1: (1, -1/2)
        let k = kernel_basis(&mat(&[&[1, 2]], 2));
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis_dense(), vec![vec![q(1), Scalar::new(-1, 2)]]);
        assert!(k.contains(&dense(&[-2, 1])).unwrap());
    }

    #[test]
    fn kernel_of_empty_matrix_is_everything() {
        let m = Matrix::<Scalar>::zeros(0, 3, ());
        assert_eq!(kernel_basis(&m).dim(), 3);
    }

    #[test]
    fn complement_examples() {
        let full = Subspace::<Scalar>::full(2, ());
        assert!(complement_basis(&full, &full).unwrap().is_empty());

        let zero = Subspace::<Scalar>::zero(2, ());
        let c = complement_basis(&zero, &full).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(Subspace::span(2, (), &c), full);

        let diag = Subspace::span_dense(2, (), &[dense(&[1, 1])]).unwrap();
        let c = complement_basis(&diag, &full).unwrap();
        assert_eq!(c, vec![SparseVec::unit(1, ())]);
    }

    #[test]
    fn complement_requires_containment() {
        let e1 = Subspace::span_dense(2, (), &[dense(&[1, 0])]).unwrap();
        let e2 = Subspace::span_dense(2, (), &[dense(&[0, 1])]).unwrap();
        assert_eq!(complement_basis(&e1, &e2), Err(LinalgError::NotContained));
    }

    #[test]
    fn subspace_ops_examples() {
        let v = Subspace::span_dense(3, (), &[dense(&[1, 2, 0]), dense(&[0, 1, 1])]).unwrap();
        assert_eq!(v.sum(&v).unwrap(), v);

        let e1 = Subspace::span_dense(2, (), &[dense(&[1, 0])]).unwrap();
        let e2 = Subspace::span_dense(2, (), &[dense(&[0, 1])]).unwrap();
        assert!(e1.intersect(&e2).unwrap().is_zero());

        let diag = Subspace::span_dense(2, (), &[dense(&[1, 1])]).unwrap();
        assert!(!diag.contains(&dense(&[1, 0])).unwrap());
        assert!(diag.contains(&dense(&[3, 3])).unwrap());

        let other = Subspace::<Scalar>::zero(3, ());
        assert!(matches!(e1.sum(&other), Err(LinalgError::AmbientMismatch { .. })));
        assert!(e1.contains(&dense(&[1])).is_err());
    }

    #[test]
    fn prime_field_kernel() {
        // x + y = 0 over F_5
        let m = Matrix::from_rows(vec![vec![Fp::new(1, 5), Fp::new(1, 5)]], 2, 5).unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k.basis_dense(), vec![vec![Fp::new(1, 5), Fp::new(4, 5)]]);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix<Scalar>> {
        (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r)
                .prop_map(move |rows| Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(q).collect()).collect(), c, ()).unwrap())
        })
    }

    fn subspace_pair() -> impl Strategy<Value = (Subspace<Scalar>, Subspace<Scalar>)> {
        (1usize..6).prop_flat_map(|n| {
            let vecs = proptest::collection::vec(proptest::collection::vec(-2i64..3, n), 0..4);
            (vecs.clone(), vecs).prop_map(move |(a, b)| {
                let to = |vs: Vec<Vec<i64>>| vs.into_iter().map(|v| v.into_iter().map(q).collect()).collect::<Vec<_>>();
                (Subspace::span_dense(n, (), &to(a)).unwrap(), Subspace::span_dense(n, (), &to(b)).unwrap())
            })
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(m in small_matrix()) {
            let k = kernel_basis(&m);
            for v in k.basis_dense() {
                prop_assert!(m.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
            }
            prop_assert_eq!(rref(&m).rank + k.dim(), m.cols());
        }

        #[test]
        fn rref_is_idempotent(m in small_matrix()) {
            let r = rref(&m);
            prop_assert_eq!(&rref(&r.reduced).reduced, &r.reduced);
        }

        #[test]
        fn dense_and_sparse_routes_agree(m in small_matrix()) {
            let r = rref(&m);
            let s = Subspace::span(m.cols(), (), &m.sparse_rows());
            prop_assert_eq!(s.dim(), r.rank);
            prop_assert_eq!(s.pivots(), &r.pivot_columns[..]);
            let dense_rows: Vec<Vec<Scalar>> = (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect();
            prop_assert_eq!(s.basis_dense(), dense_rows);
        }

        #[test]
        fn grassmann_identity((a, b) in subspace_pair()) {
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
            prop_assert!(i.is_subspace_of(&a).unwrap() && i.is_subspace_of(&b).unwrap());
        }

        #[test]
        fn complement_spans_ambient((a, b) in subspace_pair()) {
            let ambient = a.sum(&b).unwrap();
            let c = complement_basis(&a, &ambient).unwrap();
            prop_assert_eq!(c.len(), ambient.dim() - a.dim());
            let all: Vec<SparseVec<Scalar>> = a.basis().iter().cloned().chain(c).collect();
            prop_assert_eq!(Subspace::span(ambient.ambient_dim(), (), &all), ambient);
        }
    }
}
