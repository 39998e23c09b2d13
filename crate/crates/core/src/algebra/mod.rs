//! Finite-dimensional commutative local algebras given by structure constants.

mod builders;
mod json;
mod label;

pub use builders::{
    build_almost_stretched, build_almost_stretched_over, build_r_mod_k, build_r_mod_k_over, build_s_mod_l, build_s_mod_l_over,
    build_s_mod_v, build_s_mod_v_over, build_truncated_polynomial, build_truncated_polynomial_over, AlmostStretchedParams,
};
pub use json::{import_algebra, AlgebraJson, AnyAlgebra, FieldSpec};
pub use label::MonomialLabel;

use std::collections::HashMap;
use std::fmt;

use crate::error::AlgebraError;
use crate::field::{Field, GroundField};
use crate::linalg::{kernel_of_rows, EchelonBuilder, SparseVec, Subspace};

/// Commutative local algebra with basis `labels` (the unit first) and
/// products of basis elements stored as sparse coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLocalAlgebra<F: Field> {
    ctx: F::Ctx,
    labels: Vec<MonomialLabel>,
    /// `products[i * dim + j] = b_i * b_j`
    products: Vec<SparseVec<F>>,
}

/// Element of a specific algebra.
#[derive(Clone, Debug)]
pub struct AlgebraElement<'a, F: Field> {
    algebra: &'a FiniteLocalAlgebra<F>,
    coords: SparseVec<F>,
}

impl<'a, F: Field> AlgebraElement<'a, F> {
    pub fn algebra(&self) -> &'a FiniteLocalAlgebra<F> {
        self.algebra
    }

    pub fn coords(&self) -> Vec<F> {
        self.coords.to_dense(self.algebra.dim(), self.algebra.ctx)
    }

    pub fn sparse(&self) -> &SparseVec<F> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
}

impl<F: Field> PartialEq for AlgebraElement<'_, F> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.algebra, other.algebra) && self.coords == other.coords
    }
}

impl<F: Field> fmt::Display for AlgebraElement<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coords
            .entries()
            .iter()
            .map(|(i, c)| {
                let label = self.algebra.labels[*i];
                if c.is_one() {
                    label.to_string()
                } else if label.is_unit() {
                    c.to_string()
                } else {
                    format!("({c})*{label}")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `H(0), H(1), ...` up to the last nonzero value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct HilbertFunction(Vec<usize>);

impl HilbertFunction {
    /// `None` unless `H(0) = 1` and the last value is nonzero.
    pub fn new(values: Vec<usize>) -> Option<Self> {
        (values.first() == Some(&1) && values.last() != Some(&0)).then_some(HilbertFunction(values))
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, n: usize) -> usize {
        self.0.get(n).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Largest `n` with `H(n) != 0`.
    pub fn socle_degree(&self) -> usize {
        self.0.len() - 1
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl<F: Field> FiniteLocalAlgebra<F> {
    /// Builds an algebra and checks every structural invariant: unit first,
    /// distinct labels, commutativity, associativity, unit law, and that
    /// the span of the non-unit basis elements is a nilpotent ideal.
    pub fn from_products(ctx: F::Ctx, labels: Vec<MonomialLabel>, products: Vec<SparseVec<F>>) -> Result<Self, AlgebraError> {
        let d = labels.len();
        if d == 0 || !labels[0].is_unit() {
            return Err(AlgebraError::Invariant("basis must start with the unit".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(*l) {
                return Err(AlgebraError::Invariant(format!("duplicate basis label {l}")));
            }
        }
        if products.len() != d * d {
            return Err(AlgebraError::Invariant(format!("expected {} products, got {}", d * d, products.len())));
        }
        if products.iter().any(|p| p.support_end() > d) {
            return Err(AlgebraError::Invariant("product coordinate out of range".into()));
        }
        let algebra = FiniteLocalAlgebra { ctx, labels, products };
        algebra.check_invariants()?;
        Ok(algebra)
    }

    pub fn check_invariants(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        for i in 0..d {
            if self.product(0, i) != &SparseVec::unit(i, self.ctx) || self.product(i, 0) != &SparseVec::unit(i, self.ctx) {
                return Err(AlgebraError::Invariant(format!("{} is not the identity on {}", self.labels[0], self.labels[i])));
            }
            for j in 0..d {
                if self.product(i, j) != self.product(j, i) {
                    return Err(AlgebraError::Invariant(format!("{} * {} is not commutative", self.labels[i], self.labels[j])));
                }
                if i > 0 && j > 0 && self.product(i, j).get(0).is_some() {
                    return Err(AlgebraError::Invariant(format!("{} * {} leaves the maximal ideal", self.labels[i], self.labels[j])));
                }
            }
        }
        for i in 1..d {
            for j in 1..d {
                let ij = self.product(i, j);
                for l in 1..d {
                    let left = self.mul_by_basis(ij, l);
                    let right = self.mul_by_basis(self.product(j, l), i);
                    if left != right {
                        return Err(AlgebraError::Invariant(format!(
                            "({} * {}) * {} != {} * ({} * {})",
                            self.labels[i], self.labels[j], self.labels[l], self.labels[i], self.labels[j], self.labels[l]
                        )));
                    }
                }
            }
        }
        // m^d = 0 for a local algebra of dimension d
        let chain = self.maximal_ideal_powers();
        if chain.len() > d || chain.last().is_some_and(|p| !p.is_zero()) {
            return Err(AlgebraError::Invariant("maximal ideal is not nilpotent".into()));
        }
        Ok(())
    }

    pub fn ctx(&self) -> F::Ctx {
        self.ctx
    }

    pub fn ground_field(&self) -> GroundField {
        F::descriptor(self.ctx)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[MonomialLabel] {
        &self.labels
    }

    pub fn index_of(&self, label: &MonomialLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.products[i * self.dim() + j]
    }

    /// Coordinates of `b_i * b_j` as a dense vector.
    pub fn product_coords(&self, i: usize, j: usize) -> Vec<F> {
        self.product(i, j).to_dense(self.dim(), self.ctx)
    }

    /// `v * b_j` for a coordinate vector `v`.
    pub fn mul_by_basis(&self, v: &SparseVec<F>, j: usize) -> SparseVec<F> {
        let mut pairs = Vec::new();
        for (i, c) in v.entries() {
            for (k, x) in self.product(*i, j).entries() {
                pairs.push((*k, c.mul(x)));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// Product of two coordinate vectors.
    pub fn mul_vectors(&self, u: &SparseVec<F>, v: &SparseVec<F>) -> SparseVec<F> {
        let mut pairs = Vec::new();
        for (i, a) in u.entries() {
            for (j, b) in v.entries() {
                let ab = a.mul(b);
                for (k, x) in self.product(*i, *j).entries() {
                    pairs.push((*k, ab.mul(x)));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn element(&self, coords: &[F]) -> Result<AlgebraElement<'_, F>, AlgebraError> {
        if coords.len() != self.dim() {
            return Err(crate::error::LinalgError::LengthMismatch { expected: self.dim(), found: coords.len() }.into());
        }
        Ok(AlgebraElement { algebra: self, coords: SparseVec::from_dense(coords) })
    }

    pub fn element_from_sparse(&self, coords: SparseVec<F>) -> Result<AlgebraElement<'_, F>, AlgebraError> {
        if coords.support_end() > self.dim() {
            return Err(crate::error::LinalgError::LengthMismatch { expected: self.dim(), found: coords.support_end() }.into());
        }
        Ok(AlgebraElement { algebra: self, coords })
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement<'_, F> {
        assert!(i < self.dim(), "basis index out of range");
        AlgebraElement { algebra: self, coords: SparseVec::unit(i, self.ctx) }
    }

    pub fn one(&self) -> AlgebraElement<'_, F> {
        self.basis_element(0)
    }

    pub fn zero(&self) -> AlgebraElement<'_, F> {
        AlgebraElement { algebra: self, coords: SparseVec::zero() }
    }

    /// Basis element named by a label string such as `"x1^2*x2"`.
    pub fn element_by_label(&self, label: &str) -> Result<AlgebraElement<'_, F>, AlgebraError> {
        let parsed: MonomialLabel = label.parse()?;
        let i = self.index_of(&parsed).ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))?;
        Ok(self.basis_element(i))
    }

    fn owns(&self, u: &AlgebraElement<'_, F>) -> bool {
        std::ptr::eq(self, u.algebra)
    }

    pub fn multiply<'a>(&'a self, u: &AlgebraElement<'a, F>, v: &AlgebraElement<'a, F>) -> Result<AlgebraElement<'a, F>, AlgebraError> {
        if !self.owns(u) || !self.owns(v) {
            return Err(AlgebraError::Mismatch);
        }
        Ok(AlgebraElement { algebra: self, coords: self.mul_vectors(&u.coords, &v.coords) })
    }

    pub fn add<'a>(&'a self, u: &AlgebraElement<'a, F>, v: &AlgebraElement<'a, F>) -> Result<AlgebraElement<'a, F>, AlgebraError> {
        if !self.owns(u) || !self.owns(v) {
            return Err(AlgebraError::Mismatch);
        }
        Ok(AlgebraElement { algebra: self, coords: u.coords.add_scaled(&F::one(self.ctx), &v.coords) })
    }

    pub fn scale<'a>(&'a self, c: &F, u: &AlgebraElement<'a, F>) -> AlgebraElement<'a, F> {
        AlgebraElement { algebra: self, coords: u.coords.scale(c) }
    }

    /// Span of the non-unit basis elements.
    pub fn maximal_ideal(&self) -> Subspace<F> {
        let d = self.dim();
        let vecs: Vec<SparseVec<F>> = (1..d).map(|i| SparseVec::unit(i, self.ctx)).collect();
        Subspace::span(d, self.ctx, &vecs)
    }

    /// Smallest multiplicatively closed subspace containing `gens`.
    pub fn ideal_of_vectors(&self, gens: &[SparseVec<F>]) -> Subspace<F> {
        let d = self.dim();
        let mut builder = EchelonBuilder::new(d, self.ctx);
        let mut work: Vec<SparseVec<F>> = Vec::new();
        for g in gens {
            if builder.insert(g) {
                work.push(g.clone());
            }
        }
        while let Some(w) = work.pop() {
            for j in 1..d {
                let p = self.mul_by_basis(&w, j);
                if builder.insert(&p) {
                    work.push(p);
                }
            }
        }
        builder.into_subspace()
    }

    pub fn ideal_subspace(&self, gens: &[AlgebraElement<'_, F>]) -> Result<Subspace<F>, AlgebraError> {
        if gens.iter().any(|g| !self.owns(g)) {
            return Err(AlgebraError::Mismatch);
        }
        let vecs: Vec<SparseVec<F>> = gens.iter().map(|g| g.coords.clone()).collect();
        Ok(self.ideal_of_vectors(&vecs))
    }

    /// Span of all products `x * y` with `x` in `a`, `y` in `b`.
    pub fn product_of_subspaces(&self, a: &Subspace<F>, b: &Subspace<F>) -> Subspace<F> {
        let mut builder = EchelonBuilder::new(self.dim(), self.ctx);
        for x in a.basis() {
            for y in b.basis() {
                builder.insert(&self.mul_vectors(x, y));
            }
        }
        builder.into_subspace()
    }

    /// `[m, m^2, ..., m^N]` where `m^N` is the first zero power (for the
    /// field the chain is just `[0]`).
    pub fn maximal_ideal_powers(&self) -> Vec<Subspace<F>> {
        let m = self.maximal_ideal();
        let mut chain = vec![m.clone()];
        while !chain.last().unwrap().is_zero() && chain.len() <= self.dim() {
            let next = self.product_of_subspaces(&m, chain.last().unwrap());
            chain.push(next);
        }
        chain
    }

    pub fn hilbert_function(&self) -> HilbertFunction {
        let chain = self.maximal_ideal_powers();
        let mut values = vec![self.dim() - chain[0].dim()];
        for w in chain.windows(2) {
            values.push(w[0].dim() - w[1].dim());
        }
        while values.len() > 1 && values.last() == Some(&0) {
            values.pop();
        }
        HilbertFunction::new(values).expect("local algebra has H(0) = 1")
    }

    /// `(0 : m)`, the kernel of multiplication by every basis element of `m`.
    pub fn socle(&self) -> Subspace<F> {
        let d = self.dim();
        let mut rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); d * d];
        for b in 1..d {
            for i in 0..d {
                for (k, val) in self.product(i, b).entries() {
                    rows[b * d + k].push((i, val.clone()));
                }
            }
        }
        kernel_of_rows(rows.into_iter().map(SparseVec::from_pairs), d, self.ctx)
    }

    pub fn multiplicity(&self) -> usize {
        self.dim()
    }

    pub fn embedding_dimension(&self) -> usize {
        self.hilbert_function().get(1)
    }

    pub fn is_gorenstein(&self) -> bool {
        self.socle().dim() == 1
    }

    /// Quotient by an ideal given as a subspace. The quotient keeps the basis
    /// elements at the non-pivot positions of the ideal's canonical basis.
    pub fn quotient(&self, ideal: &Subspace<F>) -> Result<FiniteLocalAlgebra<F>, AlgebraError> {
        let d = self.dim();
        if ideal.ambient_dim() != d {
            return Err(crate::error::LinalgError::AmbientMismatch { left: ideal.ambient_dim(), right: d }.into());
        }
        if ideal.pivots().first() == Some(&0) {
            return Err(AlgebraError::ContainsUnit);
        }
        for w in ideal.basis() {
            for j in 1..d {
                if !ideal.contains_sparse(&self.mul_by_basis(w, j)) {
                    return Err(AlgebraError::NotAnIdeal);
                }
            }
        }
        let mut is_pivot = vec![false; d];
        for &p in ideal.pivots() {
            is_pivot[p] = true;
        }
        let kept: Vec<usize> = (0..d).filter(|&i| !is_pivot[i]).collect();
        let mut new_index = HashMap::new();
        for (n, &old) in kept.iter().enumerate() {
            new_index.insert(old, n);
        }
        let mut products = Vec::with_capacity(kept.len() * kept.len());
        for &i in &kept {
            for &j in &kept {
                let nf = ideal.reduce(self.product(i, j));
                products.push(nf.remap(|k| new_index[&k]));
            }
        }
        let labels = kept.iter().map(|&i| self.labels[i]).collect();
        FiniteLocalAlgebra::from_products(self.ctx, labels, products)
    }

    pub fn quotient_by_socle(&self) -> Result<FiniteLocalAlgebra<F>, AlgebraError> {
        self.quotient(&self.socle())
    }

    /// Whether `other` has the same labels and the same structure constants
    /// once both bases are put in a common label order.
    pub fn same_table_up_to_relabeling(&self, other: &FiniteLocalAlgebra<F>) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let Some(perm) = self.labels.iter().map(|l| other.index_of(l)).collect::<Option<Vec<usize>>>() else {
            return false;
        };
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.product(i, j).remap(|k| perm[k]) == *other.product(perm[i], perm[j])))
    }

    /// Multiplication table in the order required by the JSON format.
    pub fn table_dense(&self) -> Vec<Vec<Vec<F>>> {
        let d = self.dim();
        (0..d).map(|i| (0..d).map(|j| self.product_coords(i, j)).collect()).collect()
    }
}
