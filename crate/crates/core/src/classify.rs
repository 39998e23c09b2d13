//! Stretched / almost stretched recognition and the small-multiplicity
//! enumerations of Gorenstein Hilbert functions.

use std::fmt;

use serde::Serialize;

use crate::algebra::{FiniteLocalAlgebra, HilbertFunction};
use crate::error::ClassifyError;
use crate::field::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Stretched,
    AlmostStretched,
    Other,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassKind::Stretched => "stretched",
            ClassKind::AlmostStretched => "almost_stretched",
            ClassKind::Other => "other",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GorensteinClass {
    pub kind: ClassKind,
    pub witness: HilbertFunction,
    pub gorenstein: bool,
}

/// `m^2` needs `H(2)` generators. `H(2) = 0` counts as stretched: the zero
/// ideal is principal.
pub fn classify_hilbert(hf: &HilbertFunction, gorenstein: bool) -> GorensteinClass {
    let kind = match hf.get(2) {
        0 | 1 => ClassKind::Stretched,
        2 => ClassKind::AlmostStretched,
        _ => ClassKind::Other,
    };
    GorensteinClass { kind, witness: hf.clone(), gorenstein }
}

pub fn classify<F: Field>(a: &FiniteLocalAlgebra<F>) -> GorensteinClass {
    classify_hilbert(&a.hilbert_function(), a.is_gorenstein())
}

/// `{1, h, 1, ..., 1}` with at least one trailing 1.
pub fn is_stretched_shape(hf: &HilbertFunction) -> bool {
    let v = hf.values();
    v.len() >= 3 && v[1] >= 1 && v[2..].iter().all(|&x| x == 1)
}

/// `(s, t)` when `hf` is `1, h, 2 (t-1 times), 1 (s-t times)` with `h >= 2`
/// and `s >= t + 1 >= 3`.
pub fn remark2_shape_params(hf: &HilbertFunction) -> Option<(usize, usize)> {
    let v = hf.values();
    if v.len() < 4 || v[1] < 2 {
        return None;
    }
    let twos = v[2..].iter().take_while(|&&x| x == 2).count();
    let ones = &v[2 + twos..];
    if twos == 0 || ones.is_empty() || ones.iter().any(|&x| x != 1) {
        return None;
    }
    let s = v.len() - 1;
    let t = twos + 1;
    Some((s, t))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Largest possible `H(n+1)` given `H(n) = a`, from the `n`-th binomial
/// representation of `a`.
fn macaulay_bound(a: usize, n: usize) -> usize {
    let mut rest = a as u128;
    let mut bound: u128 = 0;
    let mut i = n;
    while rest > 0 && i > 0 {
        let mut k = i;
        while binomial(k + 1, i) <= rest {
            k += 1;
        }
        rest -= binomial(k, i);
        bound += binomial(k + 1, i + 1);
        i -= 1;
    }
    bound.min(usize::MAX as u128) as usize
}

fn check_range(e: usize, h: usize) -> Result<(), ClassifyError> {
    if h < 2 {
        return Err(ClassifyError::CodimensionTooSmall(h));
    }
    if e < h + 1 {
        return Err(ClassifyError::MultiplicityTooSmall { e, h });
    }
    Ok(())
}

/// Largest `e - h - 1` accepted by [`candidate_hilbert_functions`]; the
/// number of O-sequences grows exponentially with it.
pub const MAX_CANDIDATE_EXCESS: usize = 18;

fn by_length_then_lex(a: &HilbertFunction, b: &HilbertFunction) -> std::cmp::Ordering {
    a.values().len().cmp(&b.values().len()).then_with(|| a.cmp(b))
}

/// Hilbert functions `{1, h, ..., 1}` of length at least 3 summing to `e`
/// that satisfy Macaulay's growth bound: the candidates for an Artinian
/// Gorenstein ring of multiplicity `e` and embedding dimension `h` before
/// any structural exclusion. Sorted by length, then lexicographically.
pub fn candidate_hilbert_functions(e: usize, h: usize) -> Result<Vec<HilbertFunction>, ClassifyError> {
    check_range(e, h)?;
    if e - h - 1 > MAX_CANDIDATE_EXCESS {
        return Err(ClassifyError::TooLarge { e, h, max: MAX_CANDIDATE_EXCESS });
    }
    fn extend(prefix: &mut Vec<usize>, remaining: usize, out: &mut Vec<HilbertFunction>) {
        let last = *prefix.last().unwrap();
        if remaining == 0 {
            if last == 1 && prefix.len() >= 3 {
                out.push(HilbertFunction::new(prefix.clone()).expect("starts at 1"));
            }
            return;
        }
        let n = prefix.len() - 1;
        for next in 1..=macaulay_bound(last, n).min(remaining) {
            prefix.push(next);
            extend(prefix, remaining - next, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut vec![1, h], e - h - 1, &mut out);
    out.sort_by(by_length_then_lex);
    Ok(out)
}

/// In embedding dimension two a Gorenstein ring is a complete intersection,
/// which rules out `H(2) = 3`.
pub fn excluded_in_codimension_two(hf: &HilbertFunction) -> bool {
    hf.get(1) == 2 && hf.get(2) == 3
}

/// The admissible Hilbert functions of an Artinian reduction: every
/// stretched shape `{1, h, 1, ..., 1}` and almost stretched shape
/// `{1, h, 2, ..., 2, 1, ..., 1}` summing to `e`, minus the codimension-two
/// exclusion. Empty for `e = h + 1`, where `m^2 = 0`. Same order as
/// [`candidate_hilbert_functions`].
pub fn enumerate_possible_hf(e: usize, h: usize) -> Result<Vec<HilbertFunction>, ClassifyError> {
    check_range(e, h)?;
    let rest = e - h - 1;
    let mut out = Vec::new();
    if rest >= 1 {
        let mut v = vec![1, h];
        v.extend(std::iter::repeat_n(1, rest));
        out.push(v);
    }
    // twos = t - 1 >= 1, ones = s - t >= 1
    for twos in 1..=rest / 2 {
        let ones = rest - 2 * twos;
        if ones >= 1 {
            let mut v = vec![1, h];
            v.extend(std::iter::repeat_n(2, twos));
            v.extend(std::iter::repeat_n(1, ones));
            out.push(v);
        }
    }
    let mut out: Vec<HilbertFunction> =
        out.into_iter().map(|v| HilbertFunction::new(v).expect("starts at 1")).filter(|hf| !excluded_in_codimension_two(hf)).collect();
    out.sort_by(by_length_then_lex);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RationalityBasis {
    /// `e = h + 1`, `m^2 = 0` after reduction.
    MinimalMultiplicity,
    /// `e <= 7`.
    SmallMultiplicity,
    /// `h + 2 <= e <= h + 4`.
    SmallExcess,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalityGuarantee {
    pub guaranteed: bool,
    pub basis: RationalityBasis,
    pub reason: String,
}

/// Whether every Gorenstein local ring of multiplicity `e` and embedding
/// codimension `h` has a rational Poincare series by the stretched /
/// almost stretched closed forms.
pub fn rationality_guarantee(e: usize, h: usize) -> Result<RationalityGuarantee, ClassifyError> {
    check_range(e, h)?;
    let (basis, reason) = if e == h + 1 {
        (RationalityBasis::MinimalMultiplicity, "minimal multiplicity e = h + 1".to_string())
    } else if e <= 7 {
        (
            RationalityBasis::SmallMultiplicity,
            "multiplicity at most 7: every admissible Hilbert function is stretched or almost stretched".to_string(),
        )
    } else if e <= h + 4 {
        (RationalityBasis::SmallExcess, "e <= h + 4: every admissible Hilbert function is stretched or almost stretched".to_string())
    } else {
        (RationalityBasis::None, format!("no guarantee: e = {e} exceeds both h + 4 = {} and 7", h + 4))
    };
    Ok(RationalityGuarantee { guaranteed: basis != RationalityBasis::None, basis, reason })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub e: usize,
    pub h: usize,
    /// `None` when `e - h - 1` exceeds [`MAX_CANDIDATE_EXCESS`].
    pub candidates: Option<Vec<HilbertFunction>>,
    pub excluded: Vec<HilbertFunction>,
    pub possible: Vec<HilbertFunction>,
    pub classes: Vec<ClassKind>,
    pub rationality: RationalityGuarantee,
}

/// Everything the classification argument uses for `(e, h)`.
pub fn enumeration_report(e: usize, h: usize) -> Result<Enumeration, ClassifyError> {
    check_range(e, h)?;
    let candidates = candidate_hilbert_functions(e, h).ok();
    let excluded = candidates.iter().flatten().filter(|hf| excluded_in_codimension_two(hf)).cloned().collect();
    let possible = enumerate_possible_hf(e, h)?;
    let classes = possible.iter().map(|hf| classify_hilbert(hf, true).kind).collect();
    Ok(Enumeration { e, h, candidates, excluded, possible, classes, rationality: rationality_guarantee(e, h)? })
}
