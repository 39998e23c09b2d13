//! Minimal free resolution of the residue field over a finite local algebra.
//!
//! A free module `A^b` is handled as the k-space `k^(b*D)`, `D = dim_k A`,
//! with coordinate `g*D + j` for the `j`-th basis element in block `g`. A map
//! `A^b -> A^c` is stored by its columns (images of the free generators);
//! its k-linear matrix has the column `g*D + j` equal to `column_g * b_j`.
//!
//! Each step takes `K = ker d_i`, computes `mK`, and uses a complement of
//! `mK` in `K` as the minimal generators (Nakayama), i.e. the columns of
//! `d_(i+1)`.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{AlgebraElement, FiniteLocalAlgebra};
use crate::error::ResolutionError;
use crate::field::Field;
use crate::linalg::{complement_basis, kernel_of_rows, rank_of, SparseVec, Subspace};

pub const DEFAULT_DEPTH: usize = 5;
pub const DEFAULT_DIM_CAP: usize = 20_000;

/// `A^source_rank -> A^target_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleMap<F: Field> {
    pub source_rank: usize,
    pub target_rank: usize,
    /// Image of generator `g`, in `k^(target_rank * D)`.
    pub columns: Vec<SparseVec<F>>,
}

/// `v * b_j` for `v` in a free module, blockwise.
fn mul_free_by_basis<F: Field>(alg: &FiniteLocalAlgebra<F>, v: &SparseVec<F>, j: usize) -> SparseVec<F> {
    let d = alg.dim();
    let mut pairs = Vec::with_capacity(v.nnz());
    for (idx, c) in v.entries() {
        let base = idx - idx % d;
        for (k, x) in alg.product(idx % d, j).entries() {
            pairs.push((base + k, c.mul(x)));
        }
    }
    SparseVec::from_pairs(pairs)
}

/// `v * x` for an algebra element `x` given by coordinates.
fn mul_free_by_element<F: Field>(alg: &FiniteLocalAlgebra<F>, v: &SparseVec<F>, x: &SparseVec<F>) -> SparseVec<F> {
    let mut acc = SparseVec::zero();
    for (j, c) in x.entries() {
        acc = acc.add_scaled(c, &mul_free_by_basis(alg, v, *j));
    }
    acc
}

fn block<F: Field>(v: &SparseVec<F>, r: usize, d: usize) -> SparseVec<F> {
    let range = r * d..(r + 1) * d;
    SparseVec::from_pairs(v.entries().iter().filter(|(i, _)| range.contains(i)).map(|(i, x)| (i - r * d, x.clone())).collect())
}

impl<F: Field> FreeModuleMap<F> {
    /// Columns of the k-linear matrix, `source_rank * D` of them.
    pub fn k_columns(&self, alg: &FiniteLocalAlgebra<F>) -> Vec<SparseVec<F>> {
        let d = alg.dim();
        (0..self.source_rank * d).into_par_iter().map(|idx| mul_free_by_basis(alg, &self.columns[idx / d], idx % d)).collect()
    }

    /// Image of `v` in `k^(source_rank * D)`.
    pub fn apply(&self, alg: &FiniteLocalAlgebra<F>, v: &SparseVec<F>) -> SparseVec<F> {
        let d = alg.dim();
        let mut acc = SparseVec::zero();
        for (idx, c) in v.entries() {
            let image = mul_free_by_basis(alg, &self.columns[idx / d], idx % d);
            acc = acc.add_scaled(c, &image);
        }
        acc
    }

    /// Coordinates of the `(r, c)` entry.
    pub fn entry_coords(&self, r: usize, c: usize, dim: usize) -> SparseVec<F> {
        block(&self.columns[c], r, dim)
    }

    /// Rank of the k-linear map.
    pub fn k_rank(&self, alg: &FiniteLocalAlgebra<F>) -> usize {
        rank_of(self.k_columns(alg), self.target_rank * alg.dim(), alg.ctx())
    }
}

#[derive(Clone, Debug)]
pub struct MinimalResolution<'a, F: Field> {
    algebra: &'a FiniteLocalAlgebra<F>,
    /// `d_1, d_2, ...`
    pub maps: Vec<FreeModuleMap<F>>,
    pub betti: Vec<usize>,
    /// k-dimension of the free module that exceeded the cap, if any.
    pub truncated_at: Option<usize>,
}

impl<'a, F: Field> MinimalResolution<'a, F> {
    pub fn algebra(&self) -> &'a FiniteLocalAlgebra<F> {
        self.algebra
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated_at.is_some()
    }

    /// Entry `(r, c)` of `d_i`, `i >= 1`.
    pub fn entry(&self, i: usize, r: usize, c: usize) -> AlgebraElement<'a, F> {
        let coords = self.maps[i - 1].entry_coords(r, c, self.algebra.dim());
        self.algebra.element_from_sparse(coords).expect("block lies in the algebra")
    }

    /// Rows `i,b_i`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,b_i\n");
        for (i, b) in self.betti.iter().enumerate() {
            out.push_str(&format!("{i},{b}\n"));
        }
        out
    }

    /// Betti numbers plus every differential, entries as dense coordinate
    /// vectors of exact fraction strings.
    pub fn to_json(&self) -> Value {
        let d = self.algebra.dim();
        let ctx = self.algebra.ctx();
        let maps: Vec<Value> = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let entries: Vec<Vec<Vec<String>>> = (0..m.target_rank)
                    .map(|r| {
                        (0..m.source_rank)
                            .map(|c| m.entry_coords(r, c, d).to_dense(d, ctx).iter().map(F::to_fraction_string).collect())
                            .collect()
                    })
                    .collect();
                json!({
                    "index": i + 1,
                    "source_rank": m.source_rank,
                    "target_rank": m.target_rank,
                    "entries": entries,
                })
            })
            .collect();
        json!({
            "field": self.algebra.ground_field().to_string(),
            "basis": self.algebra.labels().iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "betti": self.betti,
            "truncated": self.is_truncated(),
            "maps": maps,
        })
    }
}

/// `m * K` for a submodule `K` of a free module, using `gens` as generators
/// of `m`.
fn times_maximal_ideal<F: Field>(alg: &FiniteLocalAlgebra<F>, k: &Subspace<F>, gens: &[SparseVec<F>]) -> Subspace<F> {
    let products: Vec<SparseVec<F>> =
        k.basis().par_iter().flat_map_iter(|v| gens.iter().map(move |x| mul_free_by_element(alg, v, x))).collect();
    Subspace::span(k.ambient_dim(), k.ctx(), &products)
}

/// Kernel of a map given by the columns of its k-linear matrix.
fn kernel_of_columns<F: Field>(columns: Vec<SparseVec<F>>, nrows: usize, ctx: F::Ctx) -> Subspace<F> {
    let ncols = columns.len();
    let mut rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); nrows];
    for (c, col) in columns.into_iter().enumerate() {
        for (r, x) in col.into_entries() {
            rows[r].push((c, x));
        }
    }
    kernel_of_rows(rows.into_iter().map(SparseVec::from_pairs), ncols, ctx)
}

/// Resolves `k` over `alg` through `d_steps`; stops early (flagged) when a
/// free module whose kernel is needed would exceed `dim_cap` k-dimensions.
pub fn minimal_resolution<F: Field>(alg: &FiniteLocalAlgebra<F>, steps: usize, dim_cap: usize) -> MinimalResolution<'_, F> {
    let d = alg.dim();
    let ctx = alg.ctx();
    let mut res = MinimalResolution { algebra: alg, maps: Vec::new(), betti: vec![1], truncated_at: None };
    if steps == 0 {
        return res;
    }
    // K_0 = ker(A -> k) = m; before d_1 exists, m is generated by its basis.
    let mut kernel = alg.maximal_ideal();
    let mut m_gens: Vec<SparseVec<F>> = kernel.basis().to_vec();
    for i in 0..steps {
        let mk = times_maximal_ideal(alg, &kernel, &m_gens);
        let gens = complement_basis(&mk, &kernel).expect("mK lies in K");
        let map = FreeModuleMap { source_rank: gens.len(), target_rank: res.betti[i], columns: gens };
        if i == 0 {
            m_gens = map.columns.clone();
        }
        res.betti.push(map.source_rank);
        if i + 1 == steps {
            res.maps.push(map);
            break;
        }
        let next = map.source_rank * d;
        if next > dim_cap {
            res.maps.push(map);
            res.truncated_at = Some(next);
            break;
        }
        kernel = kernel_of_columns(map.k_columns(alg), map.target_rank * d, ctx);
        res.maps.push(map);
    }
    res
}

/// `[b_0, ..., b_steps]` with the default dimension cap.
pub fn betti_numbers<F: Field>(alg: &FiniteLocalAlgebra<F>, steps: usize) -> Result<Vec<usize>, ResolutionError> {
    betti_numbers_capped(alg, steps, DEFAULT_DIM_CAP)
}

pub fn betti_numbers_capped<F: Field>(alg: &FiniteLocalAlgebra<F>, steps: usize, dim_cap: usize) -> Result<Vec<usize>, ResolutionError> {
    let res = minimal_resolution(alg, steps, dim_cap);
    match res.truncated_at {
        Some(needed) => Err(ResolutionError::Truncated { needed, cap: dim_cap, computed: res.betti }),
        None => Ok(res.betti),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ResolutionReport {
    pub checks: Vec<ResolutionCheck>,
}

impl ResolutionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&ResolutionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, failure: Option<String>) {
        let pass = failure.is_none();
        self.checks.push(ResolutionCheck { name, pass, detail: failure.unwrap_or_else(|| "ok".into()) });
    }
}

fn check_shapes<F: Field>(r: &MinimalResolution<'_, F>) -> Option<String> {
    let d = r.algebra.dim();
    if r.betti.first() != Some(&1) {
        return Some("b_0 != 1".into());
    }
    if r.maps.len() + 1 != r.betti.len() {
        return Some(format!("{} maps for {} Betti numbers", r.maps.len(), r.betti.len()));
    }
    for (i, m) in r.maps.iter().enumerate() {
        if m.target_rank != r.betti[i] || m.source_rank != r.betti[i + 1] || m.columns.len() != m.source_rank {
            return Some(format!("d_{} has shape {}x{}", i + 1, m.target_rank, m.source_rank));
        }
        if m.columns.iter().any(|c| c.support_end() > m.target_rank * d) {
            return Some(format!("d_{} has a column outside its target", i + 1));
        }
    }
    None
}

fn check_composition<F: Field>(r: &MinimalResolution<'_, F>) -> Option<String> {
    // d_i is A-linear, so d_i(col * b_j) = d_i(col) * b_j: generators suffice
    for i in 1..r.maps.len() {
        for (g, col) in r.maps[i].columns.iter().enumerate() {
            if !r.maps[i - 1].apply(r.algebra, col).is_zero() {
                return Some(format!("d_{} * d_{} nonzero on generator {g}", i, i + 1));
            }
        }
    }
    None
}

fn check_exactness<F: Field>(r: &MinimalResolution<'_, F>) -> Option<String> {
    let d = r.algebra.dim();
    let ranks: Vec<usize> = r.maps.iter().map(|m| m.k_rank(r.algebra)).collect();
    if let Some(&r1) = ranks.first() {
        if r1 + 1 != d {
            return Some(format!("image of d_1 has dimension {r1}, m has {}", d - 1));
        }
    }
    for i in 1..ranks.len() {
        let kernel = r.betti[i] * d - ranks[i - 1];
        if kernel != ranks[i] {
            return Some(format!("at A^{}: dim ker d_{i} = {kernel}, rank d_{} = {}", r.betti[i], i + 1, ranks[i]));
        }
    }
    None
}

fn check_minimality<F: Field>(r: &MinimalResolution<'_, F>) -> Option<String> {
    let d = r.algebra.dim();
    for (i, m) in r.maps.iter().enumerate() {
        for (c, col) in m.columns.iter().enumerate() {
            if let Some((idx, _)) = col.entries().iter().find(|(idx, _)| idx % d == 0) {
                return Some(format!("d_{} entry ({}, {c}) has a unit component", i + 1, idx / d));
            }
        }
    }
    None
}

/// Checks the resolution invariants; failures are report entries.
pub fn verify_resolution<F: Field>(r: &MinimalResolution<'_, F>) -> ResolutionReport {
    let mut report = ResolutionReport::default();
    let shape = check_shapes(r);
    let malformed = shape.is_some();
    report.push("rank_compatibility", shape);
    if malformed {
        for name in ["composition_zero", "exactness", "minimality"] {
            report.push(name, Some("skipped: malformed resolution".into()));
        }
        return report;
    }
    report.push("composition_zero", check_composition(r));
    report.push("exactness", check_exactness(r));
    report.push("minimality", check_minimality(r));
    report
}
