use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use poincare_core::algebra::{
    build_almost_stretched_over, build_r_mod_k_over, build_s_mod_l_over, build_s_mod_v_over, import_algebra, AlmostStretchedParams,
    AnyAlgebra,
};
use poincare_core::classify::{classify, enumeration_report, remark2_shape_params, ClassKind};
use poincare_core::resolution::{minimal_resolution, verify_resolution, MinimalResolution, ResolutionReport};
use poincare_core::series::{closed_form_theorem, derive_via_proof_chain, rule_a_inverse};
use poincare_core::{Field, FiniteLocalAlgebra, Fp, GroundField, HilbertFunction, IntPolynomial, RationalSeries, Scalar};

use crate::report::{big_to_json, join, verdict, Check, Outcome, Report};

pub const HEURISTIC: &str = "characteristic-p heuristic";

fn watermark(field: GroundField) -> Option<&'static str> {
    matches!(field, GroundField::Prime(_)).then_some(HEURISTIC)
}

fn field_note(field: GroundField) -> String {
    match field {
        GroundField::Rational => "over rational".into(),
        GroundField::Prime(_) => format!("over {field} [{HEURISTIC}]"),
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraParams {
    pub h: usize,
    pub s: usize,
    pub t: usize,
    pub a: Scalar,
    pub stretched: bool,
}

impl AlgebraParams {
    fn core(&self) -> AlmostStretchedParams {
        let mut p = AlmostStretchedParams::new(self.h, self.s, self.t, self.a.clone());
        p.allow_stretched = self.stretched;
        p
    }

    fn json(&self) -> Value {
        json!({"h": self.h, "s": self.s, "t": self.t, "a": self.a.to_string(), "stretched": self.stretched})
    }

    fn describe(&self) -> String {
        format!("h={} s={} t={} a={}", self.h, self.s, self.t, self.a)
    }

    /// `1, h, 2 (t-1 times), 1 (s-t times)`; for `t = 1` this is the
    /// stretched shape `1, h, 1 (s-1 times)`.
    fn expected_hilbert(&self) -> HilbertFunction {
        let mut v = vec![1, self.h];
        v.extend(std::iter::repeat_n(2, self.t - 1));
        v.extend(std::iter::repeat_n(1, self.s - self.t));
        HilbertFunction::new(v).expect("starts at 1")
    }
}

fn series_json(p: &RationalSeries, n: usize) -> Value {
    json!({
        "series": p.to_string(),
        "fraction": p.to_json(),
        "coefficients": p.expand(n).iter().map(big_to_json).collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------- build

pub fn build(p: &AlgebraParams, field: GroundField, emit: Option<&Path>) -> Result<Outcome> {
    match field {
        GroundField::Rational => build_over::<Scalar>(p, (), field, emit),
        GroundField::Prime(q) => build_over::<Fp>(p, q, field, emit),
    }
}

fn build_over<F: Field>(p: &AlgebraParams, ctx: F::Ctx, field: GroundField, emit: Option<&Path>) -> Result<Outcome> {
    let alg = build_almost_stretched_over::<F>(&p.core(), ctx).context("cannot build A")?;
    if let Some(path) = emit {
        fs::write(path, alg.to_json_string() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    let hf = alg.hilbert_function();
    let socle = alg.socle().dim();
    let class = classify(&alg);
    let shape = remark2_shape_params(&hf);
    let (expected_class, expected_shape) =
        if p.t == 1 { (ClassKind::Stretched, None) } else { (ClassKind::AlmostStretched, Some((p.s, p.t))) };
    let show_shape = |s: Option<(usize, usize)>| s.map_or("none".to_string(), |(s, t)| format!("s={s} t={t}"));
    let invariants = alg.check_invariants();
    let checks = vec![
        Check::flag("structure_constants", invariants.is_ok(), invariants.err().map(|e| e.to_string()).unwrap_or_default()),
        Check::compare("hilbert_function", p.expected_hilbert(), &hf),
        Check::compare("socle_dimension", 1, socle),
        Check::compare("classification", expected_class, class.kind),
        Check::compare("almost_stretched_shape", show_shape(expected_shape), show_shape(shape)),
    ];
    let mut text = String::new();
    writeln!(text, "A({}) {}", p.describe(), field_note(field))?;
    writeln!(text, "dimension: {}", alg.dim())?;
    writeln!(text, "hilbert function: {hf}")?;
    writeln!(text, "socle dimension: {socle}")?;
    writeln!(text, "class: {}{}", class.kind, if class.gorenstein { " (gorenstein)" } else { "" })?;
    writeln!(text, "almost stretched shape: {}", show_shape(shape))?;
    let result = json!({
        "dimension": alg.dim(),
        "hilbert_function": hf,
        "socle_dimension": socle,
        "class": class.kind,
        "gorenstein": class.gorenstein,
        "shape": shape.map(|(s, t)| json!({"s": s, "t": t})),
        "algebra": alg.to_json(),
    });
    let mut params = p.json();
    params["field"] = json!(field.to_string());
    let report = Report { command: "build", params, checks, result, runtime_ms: 0, watermark: watermark(field) };
    Ok(Outcome { report, text, csv: None })
}

// ---------------------------------------------------------------- betti

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Variant {
    /// almost stretched Gorenstein A (h s t a)
    #[value(name = "A")]
    A,
    /// A modulo its socle (h s t a)
    #[value(name = "RK")]
    Rk,
    /// two-variable socle quotient S/L (s t a)
    #[value(name = "SL")]
    Sl,
    /// two-variable complete intersection S/V (s t a)
    #[value(name = "SV")]
    Sv,
}

impl Variant {
    fn name(self) -> &'static str {
        match self {
            Variant::A => "A",
            Variant::Rk => "R/K",
            Variant::Sl => "S/L",
            Variant::Sv => "S/V",
        }
    }

    /// Series the resolution should reproduce.
    fn expected(self, h: usize) -> RationalSeries {
        let lin = |c: i64| RationalSeries::reciprocal_of(IntPolynomial::from_i64s(&[1, -c])).expect("unit constant");
        match self {
            Variant::A => closed_form_theorem(0, h as u32),
            Variant::Rk => lin(h as i64),
            Variant::Sl => lin(2),
            Variant::Sv => RationalSeries::reciprocal_of(IntPolynomial::from_i64s(&[1, -1]).pow(2)).expect("unit constant"),
        }
    }
}

pub enum Source<'a> {
    Built { variant: Variant, params: &'a [String], stretched: bool },
    File(&'a Path),
}

pub struct ResolveOpts<'a> {
    pub depth: usize,
    pub dim_cap: usize,
    pub expected: Option<RationalSeries>,
    pub maps: Option<&'a Path>,
}

fn parse_usize(name: &str, v: &str) -> Result<usize> {
    v.trim().parse().with_context(|| format!("{name} must be a non-negative integer, got {v:?}"))
}

pub fn parse_params(variant: Variant, params: &[String], stretched: bool) -> Result<AlgebraParams> {
    let (h, rest) = match variant {
        Variant::A | Variant::Rk => {
            if params.len() != 4 {
                bail!("{} takes h s t a, got {} values", variant.name(), params.len());
            }
            (parse_usize("h", &params[0])?, &params[1..])
        }
        Variant::Sl | Variant::Sv => {
            if params.len() != 3 {
                bail!("{} takes s t a, got {} values", variant.name(), params.len());
            }
            (2, params)
        }
    };
    let a: Scalar = rest[2].parse().with_context(|| format!("invalid a {:?}", rest[2]))?;
    Ok(AlgebraParams { h, s: parse_usize("s", &rest[0])?, t: parse_usize("t", &rest[1])?, a, stretched })
}

fn build_variant<F: Field>(variant: Variant, p: &AlgebraParams, ctx: F::Ctx) -> Result<FiniteLocalAlgebra<F>> {
    let built = match variant {
        Variant::A => build_almost_stretched_over(&p.core(), ctx),
        Variant::Rk => build_r_mod_k_over(&p.core(), ctx),
        Variant::Sl => build_s_mod_l_over(p.s, p.t, &p.a, ctx),
        Variant::Sv => build_s_mod_v_over(p.s, p.t, &p.a, ctx),
    };
    built.with_context(|| format!("cannot build {}", variant.name()))
}

fn resolution_checks(report: &ResolutionReport) -> Vec<Check> {
    report.checks.iter().map(|c| Check::flag(c.name, c.pass, &c.detail)).collect()
}

pub fn betti(source: Source<'_>, field: Option<GroundField>, opts: ResolveOpts<'_>) -> Result<Outcome> {
    match source {
        Source::File(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let alg = import_algebra(&text).with_context(|| format!("importing {}", path.display()))?;
            let label = format!("algebra from {}", path.display());
            let params = json!({"algebra_file": path.display().to_string()});
            let check_field = |actual: GroundField| match field {
                Some(f) if f != actual => bail!("--field {f} conflicts with the {actual} algebra in {}", path.display()),
                _ => Ok(()),
            };
            match alg {
                AnyAlgebra::Rational(a) => {
                    check_field(GroundField::Rational)?;
                    betti_over(&a, label, params, opts)
                }
                AnyAlgebra::Prime(a) => {
                    check_field(a.ground_field())?;
                    betti_over(&a, label, params, opts)
                }
            }
        }
        Source::Built { variant, params, stretched } => {
            let p = parse_params(variant, params, stretched)?;
            let opts = ResolveOpts { expected: opts.expected.or_else(|| Some(variant.expected(p.h))), ..opts };
            let label = format!("{}({})", variant.name(), p.describe());
            let mut pj = p.json();
            pj["variant"] = json!(variant.name());
            match field.unwrap_or(GroundField::Rational) {
                GroundField::Rational => betti_over(&build_variant::<Scalar>(variant, &p, ())?, label, pj, opts),
                GroundField::Prime(q) => betti_over(&build_variant::<Fp>(variant, &p, q)?, label, pj, opts),
            }
        }
    }
}

fn betti_over<F: Field>(alg: &FiniteLocalAlgebra<F>, label: String, mut params: Value, opts: ResolveOpts<'_>) -> Result<Outcome> {
    let field = alg.ground_field();
    params["field"] = json!(field.to_string());
    params["depth"] = json!(opts.depth);
    params["dim_cap"] = json!(opts.dim_cap);
    let res = minimal_resolution(alg, opts.depth, opts.dim_cap);
    if let Some(path) = opts.maps {
        let body = serde_json::to_string_pretty(&res.to_json())? + "\n";
        fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    let verified = verify_resolution(&res);
    let mut checks = resolution_checks(&verified);
    let expected = opts.expected.as_ref().map(|s| s.expand(opts.depth));
    let matched = expected.as_ref().map(|e| {
        // only the computed prefix is compared when truncated
        let want: Vec<String> = e.iter().take(res.betti.len()).map(|c| c.to_string()).collect();
        let check = Check::compare("betti_match", want.join(","), join(&res.betti));
        let pass = check.pass;
        checks.push(check);
        pass
    });

    let mut text = String::new();
    writeln!(text, "{label} {}, depth {}", field_note(field), opts.depth)?;
    if let Some(s) = &opts.expected {
        writeln!(text, "series: {s}")?;
    }
    writeln!(text, "i\tb_i{}", if expected.is_some() { "\tseries" } else { "" })?;
    for (i, b) in res.betti.iter().enumerate() {
        match &expected {
            Some(e) => writeln!(text, "{i}\t{b}\t{}", e[i])?,
            None => writeln!(text, "{i}\t{b}")?,
        }
    }
    match matched {
        Some(m) => writeln!(text, "betti: {} | match: {}", join(&res.betti), verdict(m))?,
        None => writeln!(text, "betti: {}", join(&res.betti))?,
    }
    if let Some(needed) = res.truncated_at {
        writeln!(text, "truncated: free module of k-dimension {needed} exceeds --dim-cap {}", opts.dim_cap)?;
    }
    let summary: Vec<String> = verified.checks.iter().map(|c| format!("{} {}", c.name, if c.pass { "ok" } else { "FAIL" })).collect();
    writeln!(text, "resolution: {}", summary.join(", "))?;

    let mut csv = String::from(if expected.is_some() { "i,b_i,series,match\n" } else { "i,b_i\n" });
    for (i, b) in res.betti.iter().enumerate() {
        match &expected {
            Some(e) => writeln!(csv, "{i},{b},{},{}", e[i], verdict(e[i] == (*b).into()))?,
            None => writeln!(csv, "{i},{b}")?,
        }
    }

    let result = json!({
        "betti": res.betti,
        "expected": expected.map(|e| e.iter().map(big_to_json).collect::<Vec<_>>()),
        "series": opts.expected.as_ref().map(|s| s.to_string()),
        "match": matched,
        "truncated": res.is_truncated(),
    });
    let report = Report { command: "betti", params, checks, result, runtime_ms: 0, watermark: watermark(field) };
    Ok(Outcome { report, text, csv: Some(csv) })
}

// ---------------------------------------------------------------- verify

pub struct VerifyOpts {
    pub d: u32,
    pub depth: usize,
    pub dim_cap: usize,
    pub expected: Option<RationalSeries>,
}

pub fn verify(p: &AlgebraParams, field: GroundField, opts: &VerifyOpts) -> Result<Outcome> {
    if p.stretched {
        bail!("verify runs the almost stretched chain; --stretched is not supported");
    }
    match field {
        GroundField::Rational => verify_over::<Scalar>(p, (), field, opts),
        GroundField::Prime(q) => verify_over::<Fp>(p, q, field, opts),
    }
}

fn oracle_check<F: Field>(name: &str, res: &MinimalResolution<'_, F>, want: &RationalSeries, depth: usize) -> Check {
    let want: Vec<String> = want.expand(depth).iter().map(|c| c.to_string()).collect();
    let mut actual = join(&res.betti);
    if let Some(needed) = res.truncated_at {
        actual.push_str(&format!(" (truncated at k-dimension {needed})"));
    }
    Check::compare(name, want.join(","), actual)
}

fn verify_over<F: Field>(p: &AlgebraParams, ctx: F::Ctx, field: GroundField, opts: &VerifyOpts) -> Result<Outcome> {
    let claimed = opts.expected.clone().unwrap_or_else(|| closed_form_theorem(opts.d, p.h as u32));
    // the oracle resolves the Artinian ring; strip the (1 + z)^d of the regular elements
    let mut artinian = claimed.clone();
    for _ in 0..opts.d {
        artinian = rule_a_inverse(&artinian, false);
    }
    let rings = [
        ("A", build_variant::<F>(Variant::A, p, ctx)?, artinian),
        ("RK", build_variant::<F>(Variant::Rk, p, ctx)?, Variant::Rk.expected(p.h)),
        ("SL", build_variant::<F>(Variant::Sl, p, ctx)?, Variant::Sl.expected(p.h)),
        ("SV", build_variant::<F>(Variant::Sv, p, ctx)?, Variant::Sv.expected(p.h)),
    ];
    let mut checks = Vec::new();
    let mut failures = Vec::new();
    let mut bettis = serde_json::Map::new();
    for (name, alg, want) in &rings {
        let res = minimal_resolution(alg, opts.depth, opts.dim_cap);
        checks.push(oracle_check(&format!("betti_{name}"), &res, want, opts.depth));
        let report = verify_resolution(&res);
        failures.extend(report.checks.iter().filter(|c| !c.pass).map(|c| format!("{name}: {} ({})", c.name, c.detail)));
        bettis.insert(name.to_string(), json!(res.betti));
    }
    let (chain, trace) = derive_via_proof_chain(opts.d, p.h as u32).context("symbolic replay")?;
    checks.push(Check::compare("proof_chain", &claimed, &chain));
    let ok = failures.is_empty();
    checks.push(Check::flag("resolutions_verified", ok, failures.join("; ")));

    let passed = checks.iter().filter(|c| c.pass).count();
    let mut text = String::new();
    writeln!(text, "verify {} d={} depth={} {}", p.describe(), opts.d, opts.depth, field_note(field))?;
    for c in &checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        writeln!(text, "{tag} {}: expected {} | actual {}", c.name, c.expected, c.actual)?;
    }
    writeln!(text, "symbolic final: {chain}")?;
    if passed == checks.len() {
        writeln!(text, "PASS ({} checks)", checks.len())?;
    } else {
        writeln!(text, "FAIL ({} of {} checks failed)", checks.len() - passed, checks.len())?;
    }
    let steps: Vec<Value> =
        trace.steps.iter().map(|s| json!({"stage": s.stage, "transform": s.transform, "series": s.series.to_string()})).collect();
    let result = json!({
        "betti": bettis,
        "claimed": claimed.to_string(),
        "symbolic_final": chain.to_string(),
        "trace": steps,
    });
    let mut params = p.json();
    params["d"] = json!(opts.d);
    params["depth"] = json!(opts.depth);
    params["dim_cap"] = json!(opts.dim_cap);
    params["field"] = json!(field.to_string());
    params["expected_series"] = json!(opts.expected.as_ref().map(|s| s.to_string()));
    let report = Report { command: "verify", params, checks, result, runtime_ms: 0, watermark: watermark(field) };
    Ok(Outcome { report, text, csv: None })
}

// ---------------------------------------------------------------- classify

pub fn classify_cmd(e: usize, h: usize) -> Result<Outcome> {
    let r = enumeration_report(e, h)?;
    let list = |v: &[HilbertFunction]| {
        if v.is_empty() {
            "none".to_string()
        } else {
            v.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; ")
        }
    };
    let mut text = String::new();
    writeln!(text, "{}", list(&r.possible))?;
    writeln!(text, "rational: {} ({})", verdict(r.rationality.guaranteed), r.rationality.reason)?;
    for (f, k) in r.possible.iter().zip(&r.classes) {
        writeln!(text, "  {f}: {k}")?;
    }
    match &r.candidates {
        Some(c) => writeln!(text, "candidates: {}", list(c))?,
        None => writeln!(text, "candidates: not enumerated (e - h - 1 too large)")?,
    }
    writeln!(text, "excluded (codimension two): {}", list(&r.excluded))?;
    let report = Report {
        command: "classify",
        params: json!({"e": e, "h": h}),
        checks: Vec::new(),
        result: serde_json::to_value(&r)?,
        runtime_ms: 0,
        watermark: None,
    };
    Ok(Outcome { report, text, csv: None })
}

// ---------------------------------------------------------------- poincare

pub fn poincare(d: u32, h: usize, expand: usize, trace: bool) -> Result<Outcome> {
    if h < 2 {
        bail!("embedding codimension h must be at least 2, got {h}");
    }
    let p = closed_form_theorem(d, h as u32);
    let (chain, steps) = derive_via_proof_chain(d, h as u32)?;
    let coeffs = p.expand(expand);
    let checks = vec![Check::compare("proof_chain", &p, &chain)];
    let mut text = String::new();
    writeln!(text, "{p}")?;
    writeln!(text, "[{}]", coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))?;
    if trace {
        for s in &steps.steps {
            writeln!(text, "{:<24} {}  ({})", s.stage.to_string(), s.series, s.transform)?;
        }
    }
    let mut csv = String::from("i,coefficient\n");
    for (i, c) in coeffs.iter().enumerate() {
        writeln!(csv, "{i},{c}")?;
    }
    let mut result = series_json(&p, expand);
    if trace {
        result["trace"] =
            steps.steps.iter().map(|s| json!({"stage": s.stage, "transform": s.transform, "series": s.series.to_string()})).collect();
    }
    let report =
        Report { command: "poincare", params: json!({"d": d, "h": h, "expand": expand}), checks, result, runtime_ms: 0, watermark: None };
    Ok(Outcome { report, text, csv: Some(csv) })
}
