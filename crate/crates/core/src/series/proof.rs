//! Symbolic replay of the computation of `P_A` for an almost stretched
//! Gorenstein ring of dimension `d` and embedding codimension `h`.
//!
//! Starting from the regular ring `S = k[[x1, x2]]`, the chain walks
//!
//! ```text
//! S  --(two regular elements in n^2)-->  S/V  --(socle quotient)-->  S/L
//!    --(h-2 socle variables x3..xh)-->  R/K  --(Gorenstein, socle)-->  A
//!    --(d regular elements in m \ m^2)-->  A of dimension d
//! ```
//!
//! and records every intermediate series.

use std::fmt;

use serde::Serialize;

use crate::error::SeriesError;

use super::rules::{rule_a, rule_a_inverse, rule_b, rule_c, rule_c_inverse};
use super::{IntPolynomial, RationalSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "stage", content = "index")]
pub enum Stage {
    /// `S`, regular of dimension 2.
    RegularRing,
    /// `S` modulo the first generator of `V`.
    FirstRelation,
    SModV,
    SModL,
    /// `S/L` extended by the first `k` socle variables, `k < h - 2`.
    SocleVariables(usize),
    RModK,
    /// The Artinian almost stretched ring.
    Artinian,
    /// After lifting along `k` regular elements.
    Lifted(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    Start,
    RegularInverseSquare,
    GorensteinInverse,
    Socle,
    /// `S/L = R/K` when there are no socle variables to add.
    Identity,
    Gorenstein,
    RegularLinear,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::RegularRing => f.write_str("S"),
            Stage::FirstRelation => f.write_str("S/(f)"),
            Stage::SModV => f.write_str("S/V"),
            Stage::SModL => f.write_str("S/L"),
            Stage::SocleVariables(k) => write!(f, "S/L + {k} socle variable{}", if *k == 1 { "" } else { "s" }),
            Stage::RModK => f.write_str("R/K"),
            Stage::Artinian => f.write_str("A"),
            Stage::Lifted(k) => write!(f, "A, dimension {k}"),
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Transform::Start => "start",
            Transform::RegularInverseSquare => "factor out a regular element in the square of the maximal ideal",
            Transform::GorensteinInverse => "pass to the socle quotient",
            Transform::Socle => "adjoin a socle variable",
            Transform::Identity => "no socle variables",
            Transform::Gorenstein => "Gorenstein ring from its socle quotient",
            Transform::RegularLinear => "lift along a regular linear element",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStep {
    pub stage: Stage,
    pub transform: Transform,
    pub series: RationalSeries,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProofTrace {
    pub steps: Vec<ProofStep>,
}

impl ProofTrace {
    fn push(&mut self, stage: Stage, transform: Transform, series: &RationalSeries) {
        self.steps.push(ProofStep { stage, transform, series: series.clone() });
    }

    /// Series recorded for `stage`, if it occurs exactly once.
    pub fn at(&self, stage: Stage) -> Option<&RationalSeries> {
        let mut hits = self.steps.iter().filter(|s| s.stage == stage);
        let first = hits.next()?;
        hits.next().is_none().then_some(&first.series)
    }

    pub fn count(&self, transform: Transform) -> usize {
        self.steps.iter().filter(|s| s.transform == transform).count()
    }
}

/// Runs the chain for `(d, h)`; the returned series must equal
/// [`closed_form_theorem(d, h)`](super::closed_form_theorem).
pub fn derive_via_proof_chain(d: u32, h: u32) -> Result<(RationalSeries, ProofTrace), SeriesError> {
    if h < 2 {
        return Err(SeriesError::InvalidDenominator(format!("embedding codimension {h} < 2")));
    }
    let mut trace = ProofTrace::default();
    let mut p = RationalSeries::polynomial(IntPolynomial::one_plus_z().pow(2));
    trace.push(Stage::RegularRing, Transform::Start, &p);

    // V is generated by a regular sequence of two elements of n^2
    p = rule_a_inverse(&p, true);
    trace.push(Stage::FirstRelation, Transform::RegularInverseSquare, &p);
    p = rule_a_inverse(&p, true);
    trace.push(Stage::SModV, Transform::RegularInverseSquare, &p);

    // S/V is Gorenstein with socle x1^s, and S/L = (S/V)/(0:m)
    p = rule_c_inverse(&p)?;
    trace.push(Stage::SModL, Transform::GorensteinInverse, &p);

    let socle_steps = (h - 2) as usize;
    if socle_steps == 0 {
        trace.push(Stage::RModK, Transform::Identity, &p);
    }
    for k in 1..=socle_steps {
        p = rule_b(&p)?;
        let stage = if k == socle_steps { Stage::RModK } else { Stage::SocleVariables(k) };
        trace.push(stage, Transform::Socle, &p);
    }

    p = rule_c(&p)?;
    trace.push(Stage::Artinian, Transform::Gorenstein, &p);

    for k in 1..=d as usize {
        p = rule_a(&p, false);
        trace.push(Stage::Lifted(k), Transform::RegularLinear, &p);
    }
    Ok((p, trace))
}
