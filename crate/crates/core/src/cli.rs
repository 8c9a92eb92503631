//! Input documents, command dispatch and report serialization.

use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::arith::{Field, NfElement, NumberField, Rational};
use crate::error::{ArithError, ComputeError, DatumError, ParseError, ParseErrorKind};
use crate::graded::{GradedMap, HilbertFit};
use crate::groebner::GroebnerBasis;
use crate::linalg::PolyMatrix;
use crate::monad::{self, MonadDatum};
use crate::parse::{self, EvalRing};
use crate::poly::{Monomial, Polynomial, ProjectivePoint, NVARS};
use crate::rank0::{self, Rank0Datum};

pub const DEFAULT_WINDOW: (i64, i64) = (-6, 4);
pub const DEFAULT_WINDOW_MAX: i64 = 20;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "kebab-case")]
pub enum Command {
    Verify,
    Cohomology,
    Chern,
    Singular,
    Classify,
    Instanton,
    Rank2Suite,
    Gamma,
    DualComplex,
    Rank0Verify,
    Rank0Dualize,
    Rank0Duality,
    ReportAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Cohomology => "cohomology",
            Command::Chern => "chern",
            Command::Singular => "singular",
            Command::Classify => "classify",
            Command::Instanton => "instanton",
            Command::Rank2Suite => "rank2-suite",
            Command::Gamma => "gamma",
            Command::DualComplex => "dual-complex",
            Command::Rank0Verify => "rank0-verify",
            Command::Rank0Dualize => "rank0-dualize",
            Command::Rank0Duality => "rank0-duality",
            Command::ReportAll => "report-all",
        }
    }

    fn wants_rank0(self) -> Option<bool> {
        match self {
            Command::Rank0Verify | Command::Rank0Dualize | Command::Rank0Duality => Some(true),
            Command::ReportAll => None,
            _ => Some(false),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "instanton", version, about = "Linear monads and instanton sheaves on P3")]
pub struct Args {
    pub command: Command,
    pub file: std::path::PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub kmin: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub kmax: Option<i64>,
    /// Largest |k| a twist window may reach.
    #[arg(long, default_value_t = DEFAULT_WINDOW_MAX)]
    pub window_max: i64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Second rank-0 document for `rank0-duality`.
    #[arg(long)]
    pub with: Option<std::path::PathBuf>,
}

/// A diagnostic with a stable code and the exit status it maps to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: &'static str,
    pub message: String,
    pub exit: i32,
}

impl Diagnostic {
    fn input(code: &'static str, message: impl Into<String>) -> Self {
        Diagnostic { code, message: message.into(), exit: EXIT_INPUT }
    }
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "error[{}]: {}", self.code, self.message)
    }
}

fn parse_diag(where_: &str, e: &ParseError) -> Diagnostic {
    let code = match &e.kind {
        ParseErrorKind::Syntax(_) => "syntax",
        ParseErrorKind::UnknownIdentifier(_) => "unknown-identifier",
        ParseErrorKind::GeneratorOverRationals(_) => "unknown-field-generator",
        ParseErrorKind::Arith(_) => "arithmetic",
    };
    Diagnostic::input(code, format!("{where_}: {e}"))
}

fn datum_diag(where_: &str, e: &DatumError) -> Diagnostic {
    let code = match e {
        DatumError::Shape(_) => "shape",
        DatumError::Degree(_) => "degree",
        DatumError::Unsupported(_) => "unsupported",
        DatumError::Arith(_) => "arithmetic",
    };
    let prefix = if where_.is_empty() { String::new() } else { format!("{where_}: ") };
    Diagnostic::input(code, format!("{prefix}{e}"))
}

fn compute_diag(e: ComputeError) -> Diagnostic {
    match e {
        ComputeError::NotAMonad(m) => Diagnostic { code: "not-a-monad", message: m, exit: EXIT_VERIFICATION },
        ComputeError::Datum(d) => datum_diag("", &d),
        ComputeError::Arith(a) => Diagnostic::input("arithmetic", a.to_string()),
        other => Diagnostic { code: "internal", message: other.to_string(), exit: EXIT_VERIFICATION },
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWindow {
    kmin: i64,
    kmax: i64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    field: String,
    kind: String,
    a: Option<usize>,
    b: Option<usize>,
    c: Option<usize>,
    d: Option<usize>,
    alpha: Option<Vec<Vec<String>>>,
    beta: Option<Vec<Vec<String>>>,
    sigma: Option<Vec<Vec<String>>>,
    tau: Option<Vec<Vec<String>>>,
    points: Option<Vec<Vec<String>>>,
    window: Option<RawWindow>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Object<F: Field> {
    Monad(MonadDatum<F>),
    Rank0(Rank0Datum<F>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document<F: Field> {
    /// Field descriptor as written in canonical form.
    pub field: String,
    pub object: Object<F>,
    pub points: Vec<ProjectivePoint<F>>,
    pub window: Option<(i64, i64)>,
}

/// A document over whichever field it declares.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyDocument {
    Rational(Document<Rational>),
    NumberField(Document<NfElement>),
}

/// Dense univariate polynomial used while reading a minimal polynomial.
#[derive(Clone)]
struct Dense(Vec<Rational>);

impl EvalRing for Dense {
    fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_default();
        Dense((0..n).map(|i| get(&self.0, i) + get(&o.0, i)).collect())
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = vec![Rational::default(); self.0.len() + o.0.len()];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Dense(out)
    }
    fn neg(&self) -> Self {
        Dense(self.0.iter().map(|c| -c).collect())
    }
}

/// Parses `"Q"` or `"Q[n]/(f)"`; `None` stands for the rationals.
pub fn parse_field(text: &str) -> Result<Option<NumberField>, Diagnostic> {
    let t = text.trim();
    if t == "Q" {
        return Ok(None);
    }
    let bad = || Diagnostic::input("field", format!("field descriptor `{text}` is not `Q` or `Q[gen]/(poly)`"));
    let rest = t.strip_prefix("Q[").ok_or_else(bad)?;
    let (name, rest) = rest.split_once(']').ok_or_else(bad)?;
    let name = name.trim();
    let body = rest.trim_start().strip_prefix('/').ok_or_else(bad)?.trim();
    let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).ok_or_else(bad)?;
    let valid_ident = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid_ident || crate::poly::VAR_NAMES.contains(&name) {
        return Err(Diagnostic::input("field", format!("`{name}` cannot name a field generator")));
    }
    let ast = parse::parse_expr(body).map_err(|e| parse_diag("field", &e))?;
    let mut ident = |s: &str| if s == name { Ok(Dense(vec![Rational::default(), Rational::from_integer(1.into())])) } else { Err(()) };
    let dense = parse::eval(&ast, &mut ident, &|q| Dense(vec![q])).map_err(|e| parse_diag("field", &e))?;
    NumberField::new(name, dense.0).map(Some).map_err(|e| Diagnostic::input("field", e.to_string()))
}

fn parse_matrix<F: Field>(
    name: &str,
    rows: &Option<Vec<Vec<String>>>,
    nrows: usize,
    ncols: usize,
    ctx: &F::Context,
) -> Result<PolyMatrix<F>, Diagnostic> {
    let rows = rows.as_ref().ok_or_else(|| Diagnostic::input("shape", format!("missing key `{name}`")))?;
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Diagnostic::input("shape", format!("`{name}` must be {nrows}x{ncols}")));
    }
    let mut entries = Vec::with_capacity(nrows * ncols);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            entries.push(Polynomial::parse(s, ctx).map_err(|e| parse_diag(&format!("{name}[{i}][{j}]"), &e))?);
        }
    }
    PolyMatrix::from_entries(nrows, ncols, entries).map_err(|e| datum_diag(name, &e))
}

fn parse_scalar<F: Field>(where_: &str, s: &str, ctx: &F::Context) -> Result<F, Diagnostic> {
    let p = Polynomial::<F>::parse(s, ctx).map_err(|e| parse_diag(where_, &e))?;
    if p.terms().any(|(m, _)| m.degree() > 0) {
        return Err(Diagnostic::input("degree", format!("{where_}: `{s}` is not a scalar")));
    }
    Ok(p.coeff(&Monomial([0; NVARS])))
}

fn need(v: Option<usize>, key: &str) -> Result<usize, Diagnostic> {
    v.ok_or_else(|| Diagnostic::input("shape", format!("missing key `{key}`")))
}

fn build<F: Field>(raw: &RawDocument, field: String, ctx: F::Context) -> Result<Document<F>, Diagnostic> {
    let forbid = |present: bool, key: &str, kind: &str| {
        if present {
            Err(Diagnostic::input("shape", format!("key `{key}` does not belong to a {kind} document")))
        } else {
            Ok(())
        }
    };
    let object = match raw.kind.as_str() {
        "monad" => {
            forbid(raw.d.is_some() || raw.sigma.is_some() || raw.tau.is_some(), "d/sigma/tau", "monad")?;
            let (a, b, c) = (need(raw.a, "a")?, need(raw.b, "b")?, need(raw.c, "c")?);
            let alpha = parse_matrix("alpha", &raw.alpha, b, a, &ctx)?;
            let beta = parse_matrix("beta", &raw.beta, c, b, &ctx)?;
            Object::Monad(MonadDatum::new(a, b, c, alpha, beta, ctx.clone()).map_err(|e| datum_diag("", &e))?)
        }
        "rank0" => {
            forbid(raw.a.is_some() || raw.b.is_some() || raw.c.is_some(), "a/b/c", "rank0")?;
            forbid(raw.alpha.is_some() || raw.beta.is_some(), "alpha/beta", "rank0")?;
            let d = need(raw.d, "d")?;
            let sigma = parse_matrix("sigma", &raw.sigma, 2 * d, d, &ctx)?;
            let tau = parse_matrix("tau", &raw.tau, d, 2 * d, &ctx)?;
            Object::Rank0(Rank0Datum::new(d, sigma, tau, ctx.clone()).map_err(|e| datum_diag("", &e))?)
        }
        other => return Err(Diagnostic::input("kind", format!("unknown object kind `{other}`"))),
    };
    let mut points = Vec::new();
    for (i, p) in raw.points.iter().flatten().enumerate() {
        if p.len() != NVARS {
            return Err(Diagnostic::input("shape", format!("points[{i}] must have 4 coordinates")));
        }
        let coords: Vec<F> =
            p.iter().enumerate().map(|(j, s)| parse_scalar(&format!("points[{i}][{j}]"), s, &ctx)).collect::<Result<_, _>>()?;
        let coords: [F; NVARS] = coords.try_into().map_err(|_| Diagnostic::input("shape", "point arity"))?;
        points.push(ProjectivePoint::new(coords).map_err(|e| datum_diag(&format!("points[{i}]"), &e))?);
    }
    Ok(Document { field, object, points, window: raw.window.as_ref().map(|w| (w.kmin, w.kmax)) })
}

/// Parses a JSON input document.
pub fn parse_input(text: &str) -> Result<AnyDocument, Diagnostic> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| {
        let code = if e.is_data() { "shape" } else { "syntax" };
        Diagnostic::input(code, format!("input document: {e}"))
    })?;
    match parse_field(&raw.field)? {
        None => Ok(AnyDocument::Rational(build(&raw, "Q".into(), ())?)),
        Some(nf) => {
            let canonical = format!("Q[{}]/({})", nf.generator_name(), nf.to_expr_string());
            Ok(AnyDocument::NumberField(build(&raw, canonical, Some(Arc::new(nf)))?))
        }
    }
}

fn matrix_rows<F: Field>(m: &PolyMatrix<F>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row_vec(i).iter().map(|p| p.to_string()).collect()).collect()
}

fn document_value<F: Field>(doc: &Document<F>) -> Value {
    let mut v = match &doc.object {
        Object::Monad(m) => json!({
            "field": doc.field, "kind": "monad", "a": m.a, "b": m.b, "c": m.c,
            "alpha": matrix_rows(&m.alpha), "beta": matrix_rows(&m.beta),
        }),
        Object::Rank0(z) => json!({
            "field": doc.field, "kind": "rank0", "d": z.d,
            "sigma": matrix_rows(&z.sigma), "tau": matrix_rows(&z.tau),
        }),
    };
    if !doc.points.is_empty() {
        let pts: Vec<Vec<String>> =
            doc.points.iter().map(|p| p.coords.iter().map(|c| c.to_string()).collect()).collect();
        v["points"] = json!(pts);
    }
    if let Some((kmin, kmax)) = doc.window {
        v["window"] = json!({"kmin": kmin, "kmax": kmax});
    }
    v
}

/// Canonical JSON text of a document.
pub fn print_document(doc: &AnyDocument) -> String {
    let v = match doc {
        AnyDocument::Rational(d) => document_value(d),
        AnyDocument::NumberField(d) => document_value(d),
    };
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

/// Result of running one command: text for stdout and the exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit: i32,
}

struct Ctx<'a, F: Field> {
    kmin: i64,
    kmax: i64,
    second: Option<&'a Document<F>>,
}

fn hilbert_fit_value(fit: &HilbertFit, samples: &[(i64, i64)]) -> Value {
    let samples: Vec<Value> = samples.iter().map(|(k, v)| json!([k, v])).collect();
    match fit {
        HilbertFit::Stable(p) => json!({"hilbert_polynomial": p, "samples": samples}),
        HilbertFit::NoStableFit => json!({"hilbert_polynomial": "no stable fit", "samples": samples}),
    }
}

fn basis_value<F: Field>(gb: &GroebnerBasis<F>) -> Vec<String> {
    gb.elements().iter().map(|g| g.to_string()).collect()
}

fn graded_map_value<F: Field>(g: &GradedMap<F>) -> Value {
    json!({
        "source_twists": g.source_twists(),
        "target_twists": g.target_twists(),
        "matrix": matrix_rows(g.matrix()),
    })
}

fn table_value<F: Field>(m: &MonadDatum<F>, t: &monad::CohomologyTable) -> Value {
    let columns: Vec<Value> = (t.kmin..=t.kmax)
        .map(|k| {
            let [h0, h1, h2, h3] = t.column(k).expect("in window");
            let chi = monad::euler_characteristic(m, k);
            json!({"k": k, "h0": h0, "h1": h1, "h2": h2, "h3": h3, "euler": chi, "euler_ok": h0 - h1 + h2 - h3 == chi})
        })
        .collect();
    json!({"kmin": t.kmin, "kmax": t.kmax, "columns": columns})
}

fn monad_payload<F: Field>(cmd: Command, doc: &Document<F>, m: &MonadDatum<F>, cx: &Ctx<F>) -> Result<Value, Diagnostic> {
    Ok(match cmd {
        Command::Verify => json!(monad::verify_monad(m).map_err(compute_diag)?),
        Command::Chern => json!(monad::chern(m).map_err(compute_diag)?),
        Command::Cohomology => {
            let t = monad::cohomology_table(m, cx.kmin, cx.kmax).map_err(compute_diag)?;
            table_value(m, &t)
        }
        Command::Instanton => json!(monad::is_instanton(m).map_err(compute_diag)?),
        Command::Classify => json!({"class": monad::classify(m).map_err(compute_diag)?.as_str()}),
        Command::Singular => {
            let r = monad::singular_locus(m, &doc.points).map_err(compute_diag)?;
            let points: Vec<Value> = r
                .checked_points
                .iter()
                .map(|p| json!({"point": p.point.to_string(), "rank": p.rank, "degenerate": p.degenerate, "on_locus": p.on_locus}))
                .collect();
            json!({
                "minors": r.minors.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "groebner_basis": basis_value(&r.basis),
                "hilbert_polynomial": r.hilbert.hilbert_polynomial,
                "projective_dimension": r.hilbert.projective_dimension,
                "degree": r.hilbert.degree,
                "s_module": hilbert_fit_value(&r.s_module_fit, &r.s_module_samples),
                "checked_points": points,
                "notes": [monad::PURITY_CAVEAT, monad::QE_NOTE],
            })
        }
        Command::Rank2Suite => {
            let r = monad::rank2_theorem_report(m).map_err(compute_diag)?;
            json!({
                "applicable": r.applicable,
                "precondition_failures": r.precondition_failures,
                "singular_dimension": r.singular_dimension,
                "dimension_is_one": r.dimension_is_one,
                "s_module": r.s_module_fit.as_ref().map(|f| hilbert_fit_value(f, &r.s_module_samples)),
                "d": r.d,
                "c_prime": r.c_prime,
                "corollary_check": r.corollary_check,
                "notes": r.notes,
                "passed": r.passed,
            })
        }
        Command::Gamma => json!({"gamma_dimension": monad::gamma_dimension(m).map_err(|e| datum_diag("", &e))?}),
        Command::DualComplex => {
            let d = monad::dual_complex(m);
            json!({
                "beta_dual": graded_map_value(&d.beta_dual),
                "alpha_dual": graded_map_value(&d.alpha_dual),
                "composition_zero": d.composition_is_zero().map_err(|e| datum_diag("", &e))?,
            })
        }
        Command::ReportAll => {
            let verification = monad::verify_monad(m).map_err(compute_diag)?;
            let mut all = json!({
                "verify": verification,
                "chern": monad_payload(Command::Chern, doc, m, cx)?,
                "dual-complex": monad_payload(Command::DualComplex, doc, m, cx)?,
            });
            if verification.is_monad {
                for c in [Command::Cohomology, Command::Instanton, Command::Singular, Command::Classify, Command::Rank2Suite] {
                    all[c.name()] = monad_payload(c, doc, m, cx)?;
                }
                if m.a == 1 {
                    all["gamma"] = monad_payload(Command::Gamma, doc, m, cx)?;
                }
            }
            all
        }
        other => return Err(kind_mismatch(other, "monad")),
    })
}

fn kind_mismatch(cmd: Command, kind: &str) -> Diagnostic {
    Diagnostic::input("kind", format!("command `{}` does not apply to a {kind} document", cmd.name()))
}

fn rank0_payload<F: Field>(cmd: Command, doc: &Document<F>, z: &Rank0Datum<F>, cx: &Ctx<F>) -> Result<Value, Diagnostic> {
    Ok(match cmd {
        Command::Rank0Verify => {
            let r = rank0::verify_rank0(z, cx.kmin, cx.kmax, 0).map_err(compute_diag)?;
            let mut v = json!(r);
            if r.verified {
                v["degree"] = json!(rank0::rank0_degree(z).map_err(compute_diag)?);
                let h = rank0::rank0_hilbert_polynomial(z).map_err(compute_diag)?;
                v["hilbert"] = hilbert_fit_value(&h.fit, &h.samples);
                v["euler_polynomial"] = json!(h.euler);
                v["euler_identity"] = json!(h.euler_identity);
                v["hilbert_matches_euler"] = json!(h.agrees);
            }
            v
        }
        Command::Rank0Dualize => {
            let dual = Document {
                field: doc.field.clone(),
                object: Object::Rank0(rank0::dualize_rank0(z)),
                points: doc.points.clone(),
                window: doc.window,
            };
            json!({"document": document_value(&dual)})
        }
        Command::Rank0Duality => {
            let other = cx.second.ok_or_else(|| Diagnostic::input("usage", "rank0-duality needs --with FILE"))?;
            let Object::Rank0(z2) = &other.object else {
                return Err(Diagnostic::input("kind", "--with must name a rank0 document"));
            };
            json!(rank0::duality_pair_report(z, z2, cx.kmin, cx.kmax).map_err(compute_diag)?)
        }
        Command::ReportAll => json!({
            "rank0-verify": rank0_payload(Command::Rank0Verify, doc, z, cx)?,
            "rank0-dualize": rank0_payload(Command::Rank0Dualize, doc, z, cx)?,
        }),
        other => return Err(kind_mismatch(other, "rank0")),
    })
}

/// Whether the payload records a failed verification.
fn verification_failed(cmd: Command, payload: &Value) -> bool {
    match cmd {
        Command::Verify => payload["is_monad"] == json!(false),
        Command::Rank0Verify => payload["verified"] == json!(false),
        Command::ReportAll => {
            payload["verify"]["is_monad"] == json!(false) || payload["rank0-verify"]["verified"] == json!(false)
        }
        _ => false,
    }
}

fn run_typed<F: Field>(cmd: Command, doc: &Document<F>, cx: &Ctx<F>) -> Result<Value, Diagnostic> {
    match (&doc.object, cmd.wants_rank0()) {
        (Object::Monad(m), Some(false) | None) => monad_payload(cmd, doc, m, cx),
        (Object::Rank0(z), Some(true) | None) => rank0_payload(cmd, doc, z, cx),
        (Object::Monad(_), _) => Err(kind_mismatch(cmd, "monad")),
        (Object::Rank0(_), _) => Err(kind_mismatch(cmd, "rank0")),
    }
}

fn digest(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

fn report(cmd: Command, input: &str, payload: Value, warnings: Vec<String>) -> Value {
    json!({
        "tool": "instanton",
        "version": env!("CARGO_PKG_VERSION"),
        "command": cmd.name(),
        "input_sha256": digest(input),
        "payload": payload,
        "warnings": warnings,
    })
}

/// Parses `input`, runs `args.command` and renders the report.
pub fn run_on_text(args: &Args, input: &str, second: Option<&str>) -> Result<Outcome, Diagnostic> {
    let doc = parse_input(input)?;
    let second = second.map(parse_input).transpose()?;
    let window = match &doc {
        AnyDocument::Rational(d) => d.window,
        AnyDocument::NumberField(d) => d.window,
    };
    let (dmin, dmax) = window.unwrap_or(DEFAULT_WINDOW);
    let (kmin, kmax) = (args.kmin.unwrap_or(dmin), args.kmax.unwrap_or(dmax));
    if kmin > kmax {
        return Err(Diagnostic::input("window", format!("empty twist window [{kmin}, {kmax}]")));
    }
    if kmin.abs().max(kmax.abs()) > args.window_max {
        return Err(Diagnostic {
            code: "window-limit",
            message: format!("twist window [{kmin}, {kmax}] exceeds --window-max {}", args.window_max),
            exit: EXIT_LIMIT,
        });
    }
    let mismatch = || Diagnostic::input("field", "--with document is over a different field");
    let result = match (&doc, &second) {
        (AnyDocument::Rational(d), None) => run_typed(args.command, d, &Ctx { kmin, kmax, second: None }),
        (AnyDocument::Rational(d), Some(AnyDocument::Rational(s))) => {
            run_typed(args.command, d, &Ctx { kmin, kmax, second: Some(s) })
        }
        (AnyDocument::NumberField(d), None) => run_typed(args.command, d, &Ctx { kmin, kmax, second: None }),
        (AnyDocument::NumberField(d), Some(AnyDocument::NumberField(s))) if d.field == s.field => {
            run_typed(args.command, d, &Ctx { kmin, kmax, second: Some(s) })
        }
        _ => return Err(mismatch()),
    };
    let (payload, exit) = match result {
        Ok(p) => {
            let exit = if verification_failed(args.command, &p) { EXIT_VERIFICATION } else { EXIT_OK };
            (p, exit)
        }
        Err(d) if d.exit == EXIT_VERIFICATION => (json!({"error": {"code": d.code, "message": d.message}}), d.exit),
        Err(d) => return Err(d),
    };
    let warnings = payload["warnings"].as_array().map_or_else(Vec::new, |w| {
        w.iter().filter_map(|s| s.as_str().map(str::to_string)).collect()
    });
    let rep = report(args.command, input, payload, warnings);
    let output = match args.format {
        Format::Json => serde_json::to_string_pretty(&rep).expect("serializable") + "\n",
        Format::Markdown => render_markdown(&rep),
    };
    Ok(Outcome { output, exit })
}

/// Markdown rendering: cohomology tables become grids, everything else a JSON block.
pub fn render_markdown(rep: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# instanton {}\n", rep["command"].as_str().unwrap_or(""));
    let _ = writeln!(out, "input sha256: `{}`\n", rep["input_sha256"].as_str().unwrap_or(""));
    let payload = &rep["payload"];
    let table = if rep["command"] == "cohomology" {
        Some(payload)
    } else if payload.get("cohomology").is_some() {
        Some(&payload["cohomology"])
    } else {
        None
    };
    if let Some(t) = table.filter(|t| t["columns"].is_array()) {
        let cols = t["columns"].as_array().expect("array");
        let _ = write!(out, "| i \\ k |");
        for c in cols {
            let _ = write!(out, " {} |", c["k"]);
        }
        let _ = write!(out, "\n|---|");
        for _ in cols {
            let _ = write!(out, "---|");
        }
        out.push('\n');
        for i in (0..4).rev() {
            let _ = write!(out, "| h{i} |");
            for c in cols {
                let _ = write!(out, " {} |", c[format!("h{i}")]);
            }
            out.push('\n');
        }
        out.push('\n');
    }
    let _ = writeln!(out, "```json\n{}\n```", serde_json::to_string_pretty(payload).expect("serializable"));
    out
}

/// Entry point used by the binary: reads files, runs, writes `--out`.
pub fn run(args: &Args) -> Result<Outcome, Diagnostic> {
    let read = |p: &std::path::Path| {
        std::fs::read_to_string(p).map_err(|e| Diagnostic::input("io", format!("{}: {e}", p.display())))
    };
    let input = read(&args.file)?;
    let second = args.with.as_deref().map(read).transpose()?;
    let outcome = run_on_text(args, &input, second.as_deref())?;
    if let Some(path) = &args.out {
        std::fs::write(path, &outcome.output).map_err(|e| Diagnostic::input("io", format!("{}: {e}", path.display())))?;
        return Ok(Outcome { output: String::new(), exit: outcome.exit });
    }
    Ok(outcome)
}

impl From<ArithError> for Diagnostic {
    fn from(e: ArithError) -> Self {
        Diagnostic::input("arithmetic", e.to_string())
    }
}
