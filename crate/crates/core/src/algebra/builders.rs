//! The almost stretched Gorenstein algebra `A = R/I`, its socle quotient
//! `R/K`, and the two-variable algebras `S/V` and `S/L`, built by rewriting
//! monomial products to normal form.
//!
//! Rewrite rules for `A` (with `j, l >= 3`):
//!
//! ```text
//! x1*xj -> 0      x2*xj -> 0      xj*xl -> 0 (j != l)
//! xj^2  -> x1^s   x2^2  -> a*x1*x2 + x1^(s-t+1)
//! x1^t*x2 -> 0    x1^(s+1) -> 0
//! ```
//!
//! `R/K` replaces `xj^2 -> x1^s` by `xj^2 -> 0` and `x1^(s+1)` by `x1^s`.
//! `S/V` and `S/L` are the `h = 2` instances of `A` and `R/K`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::AlgebraError;
use crate::field::{Field, Scalar};
use crate::linalg::SparseVec;

use super::{FiniteLocalAlgebra, MonomialLabel};

/// Parameters `(h, s, t, a)` of the almost stretched family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostStretchedParams {
    pub h: usize,
    pub s: usize,
    pub t: usize,
    pub a: Scalar,
    /// Admit `t = 1`, which yields the stretched Gorenstein algebra with
    /// Hilbert function `1, h, 1, ..., 1`.
    pub allow_stretched: bool,
}

impl AlmostStretchedParams {
    pub fn new(h: usize, s: usize, t: usize, a: impl Into<Scalar>) -> Self {
        AlmostStretchedParams { h, s, t, a: a.into(), allow_stretched: false }
    }

    pub fn stretched(h: usize, s: usize, a: impl Into<Scalar>) -> Self {
        AlmostStretchedParams { h, s, t: 1, a: a.into(), allow_stretched: true }
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        let bad = |msg: String| Err(AlgebraError::InvalidParams(msg));
        if self.h < 2 {
            return bad(format!("h = {} must be at least 2", self.h));
        }
        if self.t == 1 && self.allow_stretched {
            if self.s < 2 {
                return bad(format!("stretched case needs s >= 2, got s = {}", self.s));
            }
        } else if self.t + 1 < 3 || self.s < self.t + 1 {
            return bad(format!("need s >= t + 1 >= 3, got s = {}, t = {}", self.s, self.t));
        }
        // keeps exponents well inside u32 and dimensions reasonable
        if self.s > 10_000 || self.h > 10_000 {
            return bad("parameters too large".into());
        }
        Ok(())
    }

    /// `h + s + t - 1`.
    pub fn expected_dim(&self) -> usize {
        self.h + self.s + self.t - 1
    }
}

type Monomial = Vec<u32>;

/// Polynomial in `nvars` variables, terms keyed by exponent vector.
type Poly<F> = BTreeMap<Monomial, F>;

/// Monomial rewriting: each rule replaces a multiple of `lhs` by the
/// corresponding multiple of `rhs`.
pub(crate) struct RewriteSystem<F: Field> {
    nvars: usize,
    ctx: F::Ctx,
    rules: Vec<(Monomial, Poly<F>)>,
}

const MAX_REWRITES: usize = 100_000;

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl<F: Field> RewriteSystem<F> {
    fn new(nvars: usize, ctx: F::Ctx) -> Self {
        RewriteSystem { nvars, ctx, rules: Vec::new() }
    }

    fn monomial(&self, powers: &[(usize, u32)]) -> Monomial {
        let mut m = vec![0; self.nvars];
        for &(var, e) in powers {
            m[var - 1] += e;
        }
        m
    }

    /// `lhs -> sum of coeff * monomial`
    fn rule(&mut self, lhs: &[(usize, u32)], rhs: Vec<(F, Vec<(usize, u32)>)>) {
        let lhs = self.monomial(lhs);
        let mut poly = Poly::new();
        for (c, m) in rhs {
            if !c.is_zero() {
                let key = self.monomial(&m);
                let v = poly.remove(&key).map_or(c.clone(), |acc: F| acc.add(&c));
                if !v.is_zero() {
                    poly.insert(key, v);
                }
            }
        }
        self.rules.push((lhs, poly));
    }

    fn is_normal(&self, m: &[u32]) -> bool {
        !self.rules.iter().any(|(lhs, _)| divides(lhs, m))
    }

    /// Rewrites until no rule applies; the first applicable rule (in
    /// insertion order) fires on the smallest reducible term.
    pub(crate) fn normal_form(&self, mut p: Poly<F>) -> Result<Poly<F>, AlgebraError> {
        let mut steps = 0;
        loop {
            let target = p.iter().find_map(|(m, c)| self.rules.iter().find(|(lhs, _)| divides(lhs, m)).map(|r| (m.clone(), c.clone(), r)));
            let Some((m, c, (lhs, rhs))) = target else {
                return Ok(p);
            };
            steps += 1;
            if steps > MAX_REWRITES {
                return Err(AlgebraError::NonTerminating(format!("{m:?}")));
            }
            p.remove(&m);
            let quotient: Monomial = m.iter().zip(lhs).map(|(a, b)| a - b).collect();
            for (rm, rc) in rhs {
                let key: Monomial = quotient.iter().zip(rm).map(|(a, b)| a + b).collect();
                let add = c.mul(rc);
                let v = p.remove(&key).map_or(add.clone(), |acc| acc.add(&add));
                if !v.is_zero() {
                    p.insert(key, v);
                }
            }
        }
    }

    fn single(&self, m: Monomial) -> Poly<F> {
        let mut p = Poly::new();
        p.insert(m, F::one(self.ctx));
        p
    }

    /// Normal monomials reachable from 1 by multiplying with variables.
    fn standard_monomials(&self, limit: usize) -> Result<Vec<Monomial>, AlgebraError> {
        let mut seen = BTreeSet::new();
        let mut frontier = vec![vec![0; self.nvars]];
        seen.insert(vec![0; self.nvars]);
        while let Some(m) = frontier.pop() {
            for v in 0..self.nvars {
                let mut next = m.clone();
                next[v] += 1;
                if self.is_normal(&next) && seen.insert(next.clone()) {
                    if seen.len() > limit {
                        return Err(AlgebraError::InvalidParams("too many standard monomials".into()));
                    }
                    frontier.push(next);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// The algebra spanned by the standard monomials, products in normal form.
    fn into_algebra(self) -> Result<FiniteLocalAlgebra<F>, AlgebraError> {
        let mut monomials = self.standard_monomials(100_000)?;
        let labels: Vec<MonomialLabel> = monomials.iter().map(|m| to_label(m)).collect::<Result<_, _>>()?;
        let mut order: Vec<usize> = (0..monomials.len()).collect();
        order.sort_by_key(|&i| labels[i]);
        monomials = order.iter().map(|&i| monomials[i].clone()).collect();
        let labels: Vec<MonomialLabel> = order.iter().map(|&i| labels[i]).collect();
        let index: BTreeMap<&Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let d = monomials.len();
        let mut products = Vec::with_capacity(d * d);
        for a in &monomials {
            for b in &monomials {
                let prod: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let nf = self.normal_form(self.single(prod))?;
                let pairs = nf
                    .into_iter()
                    .map(|(m, c)| index.get(&m).map(|&i| (i, c)).ok_or_else(|| AlgebraError::Invariant(format!("{m:?} is not standard"))))
                    .collect::<Result<Vec<_>, _>>()?;
                products.push(SparseVec::from_pairs(pairs));
            }
        }
        FiniteLocalAlgebra::from_products(self.ctx, labels, products)
    }
}

fn to_label(m: &[u32]) -> Result<MonomialLabel, AlgebraError> {
    let mut label = MonomialLabel { x1: m[0], x2: m.get(1).copied().unwrap_or(0), extra: None };
    for (k, &e) in m.iter().enumerate().skip(2) {
        match e {
            0 => {}
            1 if label.extra.is_none() => label.extra = Some(k as u32 + 1),
            _ => return Err(AlgebraError::Invariant(format!("monomial {m:?} has no basis label"))),
        }
    }
    Ok(label)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Family {
    /// `A = R/I`
    Gorenstein,
    /// `R/K = A / (0 : m)`
    SocleQuotient,
}

fn rewrite_system<F: Field>(p: &AlmostStretchedParams, family: Family, ctx: F::Ctx) -> Result<RewriteSystem<F>, AlgebraError> {
    p.validate()?;
    let a = F::from_scalar(&p.a, ctx).ok_or_else(|| AlgebraError::InvalidParams(format!("a = {} is not in the ground field", p.a)))?;
    let (h, s, t) = (p.h, p.s as u32, p.t as u32);
    let one = F::one(ctx);
    let mut sys = RewriteSystem::new(h, ctx);
    for j in 3..=h {
        sys.rule(&[(1, 1), (j, 1)], vec![]);
    }
    for i in 2..=h {
        for j in (i + 1)..=h {
            sys.rule(&[(i, 1), (j, 1)], vec![]);
        }
    }
    for j in 3..=h {
        match family {
            Family::Gorenstein => sys.rule(&[(j, 2)], vec![(one.clone(), vec![(1, s)])]),
            Family::SocleQuotient => sys.rule(&[(j, 2)], vec![]),
        }
    }
    sys.rule(&[(1, t), (2, 1)], vec![]);
    sys.rule(&[(2, 2)], vec![(a, vec![(1, 1), (2, 1)]), (one, vec![(1, s - t + 1)])]);
    match family {
        Family::Gorenstein => sys.rule(&[(1, s + 1)], vec![]),
        Family::SocleQuotient => sys.rule(&[(1, s)], vec![]),
    }
    Ok(sys)
}

fn two_variable(s: usize, t: usize, a: &Scalar) -> AlmostStretchedParams {
    AlmostStretchedParams::new(2, s, t, a.clone())
}

pub fn build_almost_stretched_over<F: Field>(p: &AlmostStretchedParams, ctx: F::Ctx) -> Result<FiniteLocalAlgebra<F>, AlgebraError> {
    rewrite_system(p, Family::Gorenstein, ctx)?.into_algebra()
}

pub fn build_r_mod_k_over<F: Field>(p: &AlmostStretchedParams, ctx: F::Ctx) -> Result<FiniteLocalAlgebra<F>, AlgebraError> {
    rewrite_system(p, Family::SocleQuotient, ctx)?.into_algebra()
}

/// `S/V` with `S = k[x1, x2]` and `V = (x2^2 - a x1 x2 - x1^(s-t+1), x1^t x2)`.
pub fn build_s_mod_v_over<F: Field>(s: usize, t: usize, a: &Scalar, ctx: F::Ctx) -> Result<FiniteLocalAlgebra<F>, AlgebraError> {
    build_almost_stretched_over(&two_variable(s, t, a), ctx)
}

/// `S/L` with `L = V + (x1^s)`.
pub fn build_s_mod_l_over<F: Field>(s: usize, t: usize, a: &Scalar, ctx: F::Ctx) -> Result<FiniteLocalAlgebra<F>, AlgebraError> {
    build_r_mod_k_over(&two_variable(s, t, a), ctx)
}

pub fn build_almost_stretched(p: &AlmostStretchedParams) -> Result<FiniteLocalAlgebra<Scalar>, AlgebraError> {
    build_almost_stretched_over(p, ())
}

pub fn build_r_mod_k(p: &AlmostStretchedParams) -> Result<FiniteLocalAlgebra<Scalar>, AlgebraError> {
    build_r_mod_k_over(p, ())
}

pub fn build_s_mod_v(s: usize, t: usize, a: &Scalar) -> Result<FiniteLocalAlgebra<Scalar>, AlgebraError> {
    build_s_mod_v_over(s, t, a, ())
}

pub fn build_s_mod_l(s: usize, t: usize, a: &Scalar) -> Result<FiniteLocalAlgebra<Scalar>, AlgebraError> {
    build_s_mod_l_over(s, t, a, ())
}

/// `k[x]/(x^n)`, the hypersurface anchor with periodic resolution.
pub fn build_truncated_polynomial_over<F: Field>(n: usize, ctx: F::Ctx) -> Result<FiniteLocalAlgebra<F>, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::InvalidParams("k[x]/(x^0) is the zero ring".into()));
    }
    let labels = (0..n as u32).map(MonomialLabel::x1_pow).collect();
    let mut products = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            products.push(if i + j < n { SparseVec::unit(i + j, ctx) } else { SparseVec::zero() });
        }
    }
    FiniteLocalAlgebra::from_products(ctx, labels, products)
}

pub fn build_truncated_polynomial(n: usize) -> Result<FiniteLocalAlgebra<Scalar>, AlgebraError> {
    build_truncated_polynomial_over(n, ())
}
