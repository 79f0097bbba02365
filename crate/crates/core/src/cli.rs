//! Command-line front end. Every command prints one JSON object carrying `"schema": 1`;
//! without `--json` the same fields are printed as `key: value` lines.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::Form;
use crate::clifford::{det_endomorphism, sigma_t, square_parts};
use crate::error::{Error, Result};
use crate::field::Cx;
use crate::flat::{self, FlatConnection, PolygonLoop};
use crate::holonomy::{self, RepMode, Tensor3};
use crate::homogeneous::{self, fixtures, AloffWallach, MetricParams};
use crate::lie::{ClosureSummary, IrreducibilityMethod};
use crate::sample::Sampler;
use crate::sasakian;
use crate::scalar::Scalar;
use crate::{spin9, verify};

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "spintorsion", version, about = "Holonomy of torsion forms and parallel spinors, in exact arithmetic")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for any random sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Rep {
    Vector,
    Spinor,
}

#[derive(Args, Debug)]
pub struct FormArgs {
    /// Form file: one `i j k : coefficient` term per line.
    #[arg(long)]
    pub form: PathBuf,
    /// Ambient dimension; defaults to the largest index used.
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Args, Debug)]
pub struct MetricArgs {
    /// Metric parameter s, e.g. `3/2` or `1/2*sqrt(3)`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    /// Metric parameter y.
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lie algebra generated by the contractions X⌟T.
    Holonomy {
        #[command(flatten)]
        form: FormArgs,
        /// Representation; vector mode needs a 3-form. Defaults to vector for 3-forms.
        #[arg(long, value_enum)]
        rep: Option<Rep>,
    },
    /// Antisymmetric prolongation of the algebra generated by a 3-form's contractions.
    Prolong {
        #[command(flatten)]
        form: FormArgs,
    },
    /// Torsion classes and invariant splitting of a 3-form, with its G₂ type if a G₂ form is given.
    ClassifyTorsion {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        g2: Option<PathBuf>,
    },
    /// k-forms T with (X⌟T)·ψ = 0 for every X.
    Annihilators {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        grade: usize,
        /// Real spinor components, comma separated; random when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        spinor: Option<Vec<String>>,
    },
    /// Vector transport around a closed polygon for the flat connection with torsion T.
    Transport {
        #[command(flatten)]
        form: FormArgs,
        /// Vertices, one whitespace-separated row per line; closed automatically.
        #[arg(long = "loop")]
        path: PathBuf,
        /// Scale s in ∇_X = ∂_X + s·(X⌟T).
        #[arg(long, default_value = "1")]
        scale: String,
    },
    /// Degree parts of T·T in the Clifford algebra and σ_T.
    SquareParts {
        #[command(flatten)]
        form: FormArgs,
    },
    /// Both sides of the determinant formula for a + ω + f·e₁₂₃₄ on Δ₄.
    Det4 {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// 2-form on R⁴.
        #[arg(long)]
        form: PathBuf,
    },
    /// The Aloff–Wallach space N(1,1).
    #[command(subcommand)]
    Aw(AwCommand),
    /// SU(2)-invariant torsion on 3-Sasakian models.
    #[command(subcommand)]
    Sasakian(SasakianCommand),
    /// spin(9) inside so(16).
    Spin9 {
        /// Run every check.
        #[arg(long)]
        check_all: bool,
    },
    /// Runs the acceptance criteria; exit status 0 iff all pass.
    VerifyPaper {
        /// Run a single criterion.
        #[arg(long)]
        only: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum AwCommand {
    /// Solve (∇^g + X⌟F)ψ = 0 over the invariant 3-forms (or 4-forms).
    Solve {
        #[command(flatten)]
        metric: MetricArgs,
        /// Spinor aψ₃ + bψ₄ + cψ₅ + dψ₆ as `a,b,c,d`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Vec<String>,
        #[arg(long)]
        four_form: bool,
    },
    /// G₂ types, pairings and scalar curvatures at (s, y).
    Classify {
        #[command(flatten)]
        metric: MetricArgs,
    },
    /// Common zeros of Scal³ and Scal⁵ (floating point).
    ScanRoots {
        #[arg(long, default_value_t = 0.1)]
        lo: f64,
        #[arg(long, default_value_t = 3.0)]
        hi: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
    /// Compare solver output with the closed-form fixtures.
    Fixtures {
        #[arg(long)]
        verify_all: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum SasakianCommand {
    /// Torsion form for the spinor aψ₃ + bψ₄ + cψ₅ + dψ₆.
    Veronese {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Vec<String>,
        #[arg(long)]
        four_form: bool,
    },
    /// Differential ranks of the Veronese family and the sphere invariant.
    Report {
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_form(a: &FormArgs) -> Result<Form> {
    Form::parse(&read(&a.form)?, a.dim)
}

fn scalar(s: &str) -> Result<Scalar> {
    s.parse()
}

fn point4(v: &[String]) -> Result<[Scalar; 4]> {
    if v.len() != 4 {
        return Err(Error::InvalidInput(format!("--point needs four values, got {}", v.len())));
    }
    let p = v.iter().map(|x| scalar(x)).collect::<Result<Vec<_>>>()?;
    Ok([p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()])
}

fn metric(m: &MetricArgs) -> Result<MetricParams> {
    MetricParams::new(scalar(&m.s)?, scalar(&m.y)?)
}

/// `[[indices], "coefficient"]` pairs in blade order.
pub fn form_json(f: &Form) -> Value {
    Value::Array(f.sorted_terms().into_iter().map(|(i, c)| json!([i, c.to_string()])).collect())
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable report")
}

fn exact_only(mode: Mode, what: &str) -> Result<()> {
    if mode == Mode::Float {
        return Err(Error::InvalidInput(format!("{what} is exact only; float mode applies to `aw classify` and `aw scan-roots`")));
    }
    Ok(())
}

fn empty_summary(n: usize) -> ClosureSummary {
    ClosureSummary {
        dim: 0,
        derived_dim: 0,
        center_dim: 0,
        semisimple: false,
        compact: false,
        killing_signature: (0, 0, 0),
        rank: 0,
        irreducible: n <= 1,
        irreducibility_method: IrreducibilityMethod::SymmetricCommutant,
    }
}

fn holonomy_cmd(form: &FormArgs, rep: Option<Rep>) -> Result<Value> {
    let t = load_form(form)?;
    let mode = match rep {
        Some(Rep::Vector) => RepMode::Vector,
        Some(Rep::Spinor) => RepMode::Spinor,
        None if t.grade() == 3 => RepMode::Vector,
        None => RepMode::Spinor,
    };
    if t.is_zero() {
        let mut v = to_value(&empty_summary(t.dim()));
        let o = v.as_object_mut().expect("object");
        o.insert("n".into(), json!(t.dim()));
        o.insert("grade".into(), json!(t.grade()));
        o.insert("mode".into(), to_value(&mode));
        o.insert("support_dim".into(), json!(0));
        return Ok(v);
    }
    Ok(to_value(&holonomy::holonomy_report(&t, mode)?))
}

fn prolong_cmd(form: &FormArgs) -> Result<Value> {
    let t = load_form(form)?;
    if t.grade() != 3 {
        return Err(Error::Grade(format!("prolong needs a 3-form, got grade {}", t.grade())));
    }
    let g = holonomy::g_star_vector(&t)?;
    let p = holonomy::antisym_prolongation(&g)?;
    Ok(json!({
        "n": t.dim(),
        "algebra_dim": g.dim(),
        "prolongation_dim": p.len(),
        "basis": p.iter().map(form_json).collect::<Vec<_>>(),
    }))
}

fn classify_cmd(form: &FormArgs, g2: Option<&Path>) -> Result<Value> {
    let t = load_form(form)?;
    if t.grade() != 3 {
        return Err(Error::Grade(format!("classify-torsion needs a 3-form, got grade {}", t.grade())));
    }
    let d = holonomy::decompose_torsion(&Tensor3::from_form(&t)?)?;
    let parts = holonomy::split_torsion(&t)?;
    let mut out = json!({
        "n": t.dim(),
        "classes": d.classes,
        "norm_sqr": {
            "vectorial": d.vectorial.inner(&d.vectorial),
            "skew": d.skew.norm_sqr(),
            "prime": d.prime.inner(&d.prime),
        },
        "support_dim": holonomy::support_reduction(&t)?.len(),
        "components": parts.iter().map(|c| json!({"subspace_dim": c.subspace.len(), "form": form_json(&c.form)})).collect::<Vec<_>>(),
    });
    if let Some(p) = g2 {
        let omega = Form::parse(&read(p)?, Some(t.dim()))?;
        out["g2_type"] = to_value(&homogeneous::g2_type(&omega, &t)?);
    }
    Ok(out)
}

fn annihilators_cmd(dim: usize, grade: usize, spinor: Option<&[String]>, seed: u64) -> Result<Value> {
    let rep = crate::clifford::SpinRep::new(dim)?;
    let psi: Vec<Cx> = match spinor {
        Some(v) => v.iter().map(|x| scalar(x).map(Cx::real)).collect::<Result<_>>()?,
        None => Sampler::new(seed).nonzero_vector(rep.spin_dim()).into_iter().map(Cx::real).collect(),
    };
    let forms = holonomy::annihilating_forms(dim, &psi, grade)?;
    Ok(json!({
        "n": dim,
        "grade": grade,
        "spinor": psi.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "dim": forms.len(),
        "basis": forms.iter().map(form_json).collect::<Vec<_>>(),
    }))
}

fn parse_loop(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut pts = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| Error::Parse { line: no + 1, msg: format!("bad coordinate `{t}`") }))
            .collect::<Result<Vec<_>>>()?;
        pts.push(row);
    }
    Ok(pts)
}

fn transport_cmd(form: &FormArgs, path: &Path, scale: &str) -> Result<Value> {
    let t = load_form(form)?;
    let pts = parse_loop(&read(path)?)?;
    let lp = if pts.first() == pts.last() && pts.len() > 1 { PolygonLoop::new(pts)? } else { PolygonLoop::closed(pts)? };
    let conn = FlatConnection::with_scale(t, scalar(scale)?);
    let r = flat::transport_loop(&conn, &lp)?;
    let rows: Vec<Vec<f64>> = (0..r.nrows()).map(|i| (0..r.ncols()).map(|j| r[(i, j)]).collect()).collect();
    let mut out = json!({ "matrix": rows });
    if let Some((angle, axis)) = flat::rotation_angle_axis(&r) {
        out["angle"] = json!(angle);
        out["axis"] = json!(axis);
    }
    Ok(out)
}

fn square_parts_cmd(form: &FormArgs) -> Result<Value> {
    let t = load_form(form)?;
    let sq = square_parts(&t)?;
    Ok(json!({
        "scalar": sq.scalar,
        "four": form_json(&sq.four),
        "grades": sq.grades,
        "sigma": form_json(&sigma_t(&t)?),
    }))
}

fn det4_cmd(a: &str, f: &str, form: &Path) -> Result<Value> {
    let omega = Form::parse(&read(form)?, Some(4))?;
    let d = det_endomorphism(&scalar(a)?, &omega, &scalar(f)?)?;
    Ok(json!({ "direct": d.direct, "closed_form": d.closed_form, "equal": d.direct == d.closed_form }))
}

fn aw_solve(m: &MetricArgs, point: &[String], four: bool) -> Result<Value> {
    let model = AloffWallach::new(metric(m)?)?;
    let psi = sasakian::spinor(&point4(point)?);
    let sol = if four {
        model.solve_four_form(&psi, &model.invariant_four_forms())?
    } else {
        model.solve_torsion(&psi, &model.invariant_three_forms())?
    };
    Ok(json!({
        "s": sol.params.s,
        "y": sol.params.y,
        "grade": if four { 4 } else { 3 },
        "spinor": sol.spinor,
        "form": form_json(&sol.form),
        "coefficients": sol.coefficients,
        "unique": sol.unique,
        "kernel_dim": sol.kernel_dim,
        "residual_zero": sol.residual_is_zero(),
    }))
}

fn aw_classify(m: &MetricArgs, mode: Mode) -> Result<Value> {
    if mode == Mode::Float {
        let (s, y) = (metric(m)?.s.to_f64(), metric(m)?.y.to_f64());
        return Ok(json!({ "s": s, "y": y, "scal3": homogeneous::scal3_f64(s, y), "scal5": homogeneous::scal5_f64(s, y) }));
    }
    let p = metric(m)?;
    let model = AloffWallach::new(p.clone())?;
    let four = Scalar::int(4);
    let (w3, w5) = (fixtures::omega3(), fixtures::omega5());
    let (t3, t5) = (fixtures::t3(&p), fixtures::t5(&p));
    let (scal_g, scal3) = homogeneous::scalars_from_torsion(&w3, &t3.scale(&four))?;
    let (_, scal5) = homogeneous::scalars_from_torsion(&w5, &t5.scale(&four))?;
    Ok(json!({
        "s": p.s,
        "y": p.y,
        "omega3_type": homogeneous::g2_type(&w3, &t3.scale(&four))?,
        "omega5_type": homogeneous::g2_type(&w5, &t5.scale(&four))?,
        "t3_omega3": t3.inner(&w3)?,
        "t5_omega5": t5.inner(&w5)?,
        "cocalibrated": model.is_cocalibrated(&w3)? && model.is_cocalibrated(&w5)?,
        "scal_g": scal_g,
        "scal_g_levi_civita": model.riemannian_scalar_curvature()?,
        "scal3": scal3,
        "scal5": scal5,
    }))
}

fn criteria_json(cs: &[verify::Criterion]) -> Value {
    // timings are left out so that output is reproducible
    Value::Array(cs.iter().map(|c| json!({"id": c.id, "name": c.name, "pass": c.pass, "detail": c.detail})).collect())
}

fn aw_fixtures(verify_all: bool) -> Result<(Value, bool)> {
    let ids: &[usize] = if verify_all { &[6, 7, 8, 13] } else { &[6] };
    let cs: Vec<verify::Criterion> = ids.iter().filter_map(|&i| verify::run(i)).collect();
    let pass = cs.iter().all(|c| c.pass);
    Ok((json!({ "criteria": criteria_json(&cs), "pass": pass }), pass))
}

fn sasakian_veronese(point: &[String], four: bool) -> Result<Value> {
    let p = point4(point)?;
    if four {
        let s = sasakian::veronese_4form(&p)?;
        return Ok(json!({
            "point": s.point,
            "form": form_json(&s.form),
            "coefficients": s.coefficients,
            "rank": s.rank,
            "unique": s.unique,
            "residual_zero": s.residual_zero,
        }));
    }
    let s = sasakian::veronese_torsion(&p)?;
    Ok(json!({
        "point": s.point,
        "x": s.x,
        "w": s.w,
        "norm_sqr": s.norm_sqr(),
        "form": form_json(&s.form),
        "unique": s.unique,
        "matches_closed_form": s.matches_closed_form,
        "residual_zero": s.residual_zero,
    }))
}

/// Runs a parsed command. The flag is false when the command ran but its checks failed.
pub fn execute(cli: &Cli) -> Result<(Value, bool)> {
    let exact = |what: &str| exact_only(cli.mode, what);
    let (body, ok) = match &cli.command {
        Command::Holonomy { form, rep } => (exact("holonomy").and_then(|_| holonomy_cmd(form, *rep))?, true),
        Command::Prolong { form } => (exact("prolong").and_then(|_| prolong_cmd(form))?, true),
        Command::ClassifyTorsion { form, g2 } => (exact("classify-torsion").and_then(|_| classify_cmd(form, g2.as_deref()))?, true),
        Command::Annihilators { dim, grade, spinor } => (exact("annihilators").and_then(|_| annihilators_cmd(*dim, *grade, spinor.as_deref(), cli.seed))?, true),
        Command::Transport { form, path, scale } => (transport_cmd(form, path, scale)?, true),
        Command::SquareParts { form } => (exact("square-parts").and_then(|_| square_parts_cmd(form))?, true),
        Command::Det4 { a, f, form } => (exact("det4").and_then(|_| det4_cmd(a, f, form))?, true),
        Command::Aw(AwCommand::Solve { metric, point, four_form }) => (exact("aw solve").and_then(|_| aw_solve(metric, point, *four_form))?, true),
        Command::Aw(AwCommand::Classify { metric }) => (aw_classify(metric, cli.mode)?, true),
        Command::Aw(AwCommand::ScanRoots { lo, hi, step }) => {
            if !(lo < hi && *step > 0.0) {
                return Err(Error::InvalidInput("scan-roots needs lo < hi and step > 0".into()));
            }
            let roots = homogeneous::scan_roots_in(*lo, *hi, *step);
            (json!({ "roots": roots, "count": roots.len() }), true)
        }
        Command::Aw(AwCommand::Fixtures { verify_all }) => aw_fixtures(*verify_all)?,
        Command::Sasakian(SasakianCommand::Veronese { point, four_form }) => (exact("sasakian").and_then(|_| sasakian_veronese(point, *four_form))?, true),
        Command::Sasakian(SasakianCommand::Report { samples }) => (to_value(&sasakian::family_dimension_report(*samples, cli.seed)?), true),
        Command::Spin9 { check_all } => {
            if *check_all {
                let c = spin9::check_all()?;
                let mut v = to_value(&c);
                v["prolongation_dim"] = json!(c.prolongation.direct_dim);
                (v, c.pass)
            } else {
                let b = spin9::spin9_basis()?;
                (json!({ "dim": b.dim(), "equations": spin9::equations()?.len(), "checksum": spin9::fixture_checksum() }), true)
            }
        }
        Command::VerifyPaper { only } => {
            let cs = match only {
                Some(i) => vec![verify::run(*i).ok_or_else(|| Error::InvalidInput(format!("no criterion {i} (1..={})", verify::count())))?],
                None => verify::run_all(),
            };
            let pass = cs.iter().all(|c| c.pass);
            (json!({ "criteria": criteria_json(&cs), "pass": pass }), pass)
        }
    };
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    match body {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("result".into(), other);
        }
    }
    Ok((Value::Object(out), ok))
}

fn text(v: &Value) -> String {
    let Value::Object(m) = v else { return v.to_string() };
    m.iter()
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}: {s}"),
            other => format!("{k}: {other}"),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Exit status for an error: 2 for unreadable or malformed input, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Io(_) => 2,
        _ => 1,
    }
}

/// Parses `args`, runs the command and prints the result. Returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let emit = |s: String| {
        let _ = writeln!(std::io::stdout().lock(), "{s}");
    };
    match execute(&cli) {
        Ok((v, ok)) => {
            emit(if cli.json { serde_json::to_string_pretty(&v).expect("json") } else { text(&v) });
            i32::from(!ok)
        }
        Err(e) => {
            if cli.json {
                emit(json!({ "schema": SCHEMA, "error": e.to_string() }).to_string());
            }
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
