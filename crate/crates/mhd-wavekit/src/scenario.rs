//! Batch scenario files and machine-readable outputs.
//!
//! A scenario is one self-describing JSON document: the gas law, a left
//! state (either representation; the key set disambiguates), exactly one
//! wave request and exactly one analysis. Results are written as JSON plus
//! CSV traces with a sidecar manifest; floats are serialized with 17
//! significant digits so emitted numbers re-parse bit-exactly and repeated
//! runs produce byte-identical artifacts.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::contraction::{
    certify_noncontraction_with, f1_tail_scan, Certificate, TailScanReport, WaveConditions,
};
use crate::error::WaveKitError;
use crate::rarefaction::{
    curve_lambda, rarefaction_integrate, CurveFlow, RarefactionCurve, RarefactionFamily,
};
use crate::spectral::{
    char_matrix, degeneracy_check, eigen_pair, eigen_residual, eigenvalues, gnl_derivative,
    matrix_norm,
};
use crate::state::{ConservedState, DiscontinuityWave, FluidState, GasLaw, WaveFamily};
use crate::tol::Tolerance;
use crate::waves::{
    contact_construct, dissipation_direct, dissipation_factored, lax_check, rh_residual,
    rh_residual_norm, rh_scale, solve_shock_with, ContactSpec, LaxReport, ShockSolveRequest,
};
use crate::Result;

// ---------------------------------------------------------------------------
// schema

/// State input in either representation; the key set picks the variant.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum StateInput {
    Fluid(FluidState),
    Conserved(ConservedState),
}

impl StateInput {
    pub fn to_conserved(self) -> ConservedState {
        match self {
            StateInput::Fluid(w) => w.to_conserved(),
            StateInput::Conserved(u) => u,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShockRequest {
    pub family: u8,
    pub v_right: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContactRequest {
    pub family: u8,
    pub angle: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum WaveRequest {
    Shock(ShockRequest),
    Contact(ContactRequest),
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RarefactionParams {
    pub family: u8,
    #[serde(default)]
    pub v_floor: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertifyParams {
    pub a: f64,
    #[serde(default)]
    pub v_floor: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AGrid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepParams {
    #[serde(default)]
    pub grid: Option<AGrid>,
    #[serde(default)]
    pub v_floor: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum Analysis {
    Fields,
    Hugoniot,
    Contact,
    Rarefaction(RarefactionParams),
    Dissipation,
    Certify(CertifyParams),
    SweepA(SweepParams),
}

impl Analysis {
    pub fn name(&self) -> &'static str {
        match self {
            Analysis::Fields => "fields",
            Analysis::Hugoniot => "hugoniot",
            Analysis::Contact => "contact",
            Analysis::Rarefaction(_) => "rarefaction",
            Analysis::Dissipation => "dissipation",
            Analysis::Certify(_) => "certify",
            Analysis::SweepA(_) => "sweep-a",
        }
    }
}

fn default_formats() -> Vec<String> {
    vec!["json".into(), "csv".into()]
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub dir: String,
    #[serde(default = "default_formats")]
    pub formats: Vec<String>,
}

/// One self-describing batch job.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub law: GasLaw,
    pub left: StateInput,
    pub wave_request: WaveRequest,
    pub analysis: Analysis,
    pub output: OutputSpec,
}

/// Command-line overrides applied on top of a scenario file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out_dir: Option<PathBuf>,
    pub tol: Option<Tolerance>,
    pub a_grid: Option<AGrid>,
    pub check_fields: bool,
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = fs::read_to_string(path).map_err(|e| WaveKitError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    serde_json::from_str(&text).map_err(|e| WaveKitError::Schema(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// deterministic JSON / CSV emission

/// JSON value with deterministic field order and 17-significant-digit floats.
#[derive(Debug, Clone)]
pub enum JsonValue {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    Arr(Vec<JsonValue>),
    Obj(Vec<(&'static str, JsonValue)>),
}

/// `{:.16e}` gives one mantissa digit plus 16 fractional digits: 17
/// significant digits, enough to round-trip any binary64 exactly.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        // JSON has no infinities; surface them as strings rather than panic
        format!("\"{x}\"")
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

impl JsonValue {
    fn write_into(&self, out: &mut String, indent: usize) {
        match self {
            JsonValue::Null => out.push_str("null"),
            JsonValue::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            JsonValue::Int(i) => {
                let _ = write!(out, "{i}");
            }
            JsonValue::Num(x) => out.push_str(&fmt_f64(*x)),
            JsonValue::Str(s) => {
                let _ = write!(out, "\"{}\"", escape(s));
            }
            JsonValue::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    item.write_into(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            JsonValue::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    let _ = write!(out, "\"{}\": ", escape(k));
                    v.write_into(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write_into(&mut out, 0);
        out.push('\n');
        out
    }
}

fn state_json(u: &ConservedState) -> JsonValue {
    JsonValue::Obj(vec![
        ("v", JsonValue::Num(u.v)),
        ("q2", JsonValue::Num(u.q2)),
        ("q3", JsonValue::Num(u.q3)),
        ("u1", JsonValue::Num(u.u1)),
        ("u2", JsonValue::Num(u.u2)),
        ("u3", JsonValue::Num(u.u3)),
    ])
}

fn fluid_json(w: &FluidState) -> JsonValue {
    JsonValue::Obj(vec![
        ("v", JsonValue::Num(w.v)),
        ("B2", JsonValue::Num(w.b2)),
        ("B3", JsonValue::Num(w.b3)),
        ("u1", JsonValue::Num(w.u1)),
        ("u2", JsonValue::Num(w.u2)),
        ("u3", JsonValue::Num(w.u3)),
    ])
}

fn lax_json(rep: &LaxReport) -> JsonValue {
    JsonValue::Obj(vec![
        ("family", JsonValue::Int(rep.family as i64)),
        ("pass", JsonValue::Bool(rep.pass)),
        (
            "inequalities",
            JsonValue::Arr(
                rep.inequalities
                    .iter()
                    .map(|q| {
                        JsonValue::Obj(vec![
                            ("name", JsonValue::Str(q.name.clone())),
                            ("margin", JsonValue::Num(q.margin)),
                            ("pass", JsonValue::Bool(q.pass)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

fn wave_json(wave: &DiscontinuityWave, law: &GasLaw, tol: &Tolerance) -> Result<JsonValue> {
    let rh = rh_residual(wave, law)?;
    let rh_norm = rh_residual_norm(wave, law)?;
    let scale = rh_scale(wave, law);
    let mut checks = vec![
        (
            "rh",
            JsonValue::Obj(vec![
                (
                    "residual",
                    JsonValue::Arr(rh.iter().map(|x| JsonValue::Num(*x)).collect()),
                ),
                ("norm", JsonValue::Num(rh_norm)),
                ("scale", JsonValue::Num(scale)),
                ("pass", JsonValue::Bool(tol.small(rh_norm, scale))),
            ]),
        ),
    ];
    if wave.family.is_shock() {
        checks.push(("lax", lax_json(&lax_check(wave, law)?)));
    }
    checks.push((
        "dissipation",
        JsonValue::Num(dissipation_direct(wave, law)?),
    ));
    Ok(JsonValue::Obj(vec![
        ("left", state_json(&wave.left)),
        ("right", state_json(&wave.right)),
        ("sigma", JsonValue::Num(wave.sigma)),
        ("family", JsonValue::Str(wave.family.to_string())),
        ("checks", JsonValue::Obj(checks)),
    ]))
}

fn conditions_json(c: &WaveConditions) -> JsonValue {
    match c {
        WaveConditions::Shock3(rep) | WaveConditions::Shock4(rep) => JsonValue::Obj(vec![
            (
                "kind",
                JsonValue::Str(
                    if matches!(c, WaveConditions::Shock3(_)) {
                        "transverse-decay".into()
                    } else {
                        "transverse-growth".into()
                    },
                ),
            ),
            ("component_2", JsonValue::Str(format!("{:?}", rep.component_2))),
            ("component_3", JsonValue::Str(format!("{:?}", rep.component_3))),
            ("holds", JsonValue::Bool(rep.holds)),
        ]),
        WaveConditions::Contact(rep) => JsonValue::Obj(vec![
            ("kind", JsonValue::Str("contact-ab".into())),
            ("class", JsonValue::Str(rep.class.to_string())),
            ("norm_jump", JsonValue::Num(rep.norm_jump)),
            (
                "tension",
                rep.tension
                    .as_ref()
                    .map(|t| JsonValue::Str(t.clone()))
                    .unwrap_or(JsonValue::Null),
            ),
        ]),
    }
}

/// Writable curve-like payloads for `emit_plot_data`.
pub enum PlotData<'a> {
    Rarefaction(&'a RarefactionCurve, &'a GasLaw),
    FaTrace(&'a Certificate),
}

/// Write a CSV trace plus its sidecar manifest (`<path>.manifest.json`);
/// byte output is a pure function of the payload.
pub fn emit_plot_data(data: &PlotData, path: &Path) -> Result<()> {
    let io_err = |e: std::io::Error| WaveKitError::Io {
        path: path.display().to_string(),
        source: e,
    };
    let mut csv = String::new();
    let manifest = match data {
        PlotData::Rarefaction(curve, law) => {
            if curve.samples.is_empty() {
                return Err(WaveKitError::Precondition("empty curve".into()));
            }
            let fam = curve.family.index();
            csv.push_str(&format!("v,B2,B3,u1,u2,u3,lambda_{fam}\n"));
            for s in &curve.samples {
                let lam = curve_lambda(curve.family, &s.state, law)?;
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{},{}",
                    fmt_f64(s.v),
                    fmt_f64(s.state.b2),
                    fmt_f64(s.state.b3),
                    fmt_f64(s.state.u1),
                    fmt_f64(s.state.u2),
                    fmt_f64(s.state.u3),
                    fmt_f64(lam)
                );
            }
            JsonValue::Obj(vec![
                (
                    "columns",
                    JsonValue::Arr(
                        ["v", "B2", "B3", "u1", "u2", "u3", "lambda"]
                            .iter()
                            .map(|c| JsonValue::Str((*c).into()))
                            .collect(),
                    ),
                ),
                ("family", JsonValue::Int(fam as i64)),
                (
                    "direction",
                    JsonValue::Str(curve.direction().to_string()),
                ),
                ("origin", fluid_json(&curve.origin)),
            ])
        }
        PlotData::FaTrace(cert) => {
            if cert.trace.is_empty() {
                return Err(WaveKitError::Precondition("empty trace".into()));
            }
            csv.push_str("v,F_a,B2,B3,u1,u2,u3\n");
            for s in &cert.trace {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{},{}",
                    fmt_f64(s.v),
                    fmt_f64(s.f_a),
                    fmt_f64(s.state.b2),
                    fmt_f64(s.state.b3),
                    fmt_f64(s.state.u1),
                    fmt_f64(s.state.u2),
                    fmt_f64(s.state.u3)
                );
            }
            JsonValue::Obj(vec![
                (
                    "columns",
                    JsonValue::Arr(
                        ["v", "F_a", "B2", "B3", "u1", "u2", "u3"]
                            .iter()
                            .map(|c| JsonValue::Str((*c).into()))
                            .collect(),
                    ),
                ),
                ("a", JsonValue::Num(cert.a)),
                ("branch", JsonValue::Str(cert.branch.to_string())),
                (
                    "wave",
                    JsonValue::Obj(vec![
                        ("left", state_json(&cert.wave.left)),
                        ("right", state_json(&cert.wave.right)),
                        ("sigma", JsonValue::Num(cert.wave.sigma)),
                        ("family", JsonValue::Str(cert.wave.family.to_string())),
                    ]),
                ),
            ])
        }
    };
    fs::write(path, csv).map_err(io_err)?;
    let manifest_path = path.with_extension("manifest.json");
    fs::write(&manifest_path, manifest.render()).map_err(|e| WaveKitError::Io {
        path: manifest_path.display().to_string(),
        source: e,
    })?;
    Ok(())
}

fn certificate_json(cert: &Certificate, trace_file: Option<&str>) -> JsonValue {
    JsonValue::Obj(vec![
        ("a", JsonValue::Num(cert.a)),
        ("branch", JsonValue::Str(cert.branch.to_string())),
        ("witness", state_json(&cert.witness)),
        ("crossing_v", JsonValue::Num(cert.crossing_v)),
        ("conditions", conditions_json(&cert.conditions)),
        ("F_at_witness", JsonValue::Num(cert.f_at_witness)),
        ("F_scale", JsonValue::Num(cert.f_scale)),
        (
            "coercivity",
            cert.coercivity
                .as_ref()
                .map(|c| {
                    JsonValue::Obj(vec![
                        ("c1", JsonValue::Num(c.c1)),
                        ("c2", JsonValue::Num(c.c2)),
                        ("m_observed", JsonValue::Num(c.m_observed)),
                        ("v_star", JsonValue::Num(c.v_star)),
                        (
                            "crossing_above_v_star",
                            JsonValue::Bool(c.crossing_above_v_star),
                        ),
                    ])
                })
                .unwrap_or(JsonValue::Null),
        ),
        (
            "trace_file",
            trace_file
                .map(|f| JsonValue::Str(f.into()))
                .unwrap_or(JsonValue::Null),
        ),
    ])
}

fn tail_scan_json(rep: &TailScanReport) -> JsonValue {
    JsonValue::Obj(vec![
        ("branch", JsonValue::Str(rep.branch.to_string())),
        (
            "expected_sign",
            JsonValue::Str(if rep.expected_sign_negative {
                "negative".into()
            } else {
                "positive".into()
            }),
        ),
        ("sign_matches", JsonValue::Bool(rep.sign_matches)),
        (
            "magnitude_increasing",
            JsonValue::Bool(rep.magnitude_increasing),
        ),
        (
            "v_sqrt_alpha_increasing",
            JsonValue::Bool(rep.v_sqrt_alpha_increasing),
        ),
        (
            "samples",
            JsonValue::Arr(
                rep.samples
                    .iter()
                    .map(|s| {
                        JsonValue::Obj(vec![
                            ("v", JsonValue::Num(s.v)),
                            ("dF_ds", JsonValue::Num(s.df_ds)),
                            ("v_sqrt_alpha_plus", JsonValue::Num(s.v_sqrt_alpha_plus)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

// ---------------------------------------------------------------------------
// driver

/// Result of a scenario run: summary lines (one per analysis) and exit code.
#[derive(Debug)]
pub struct RunOutcome {
    pub summary: Vec<String>,
    pub artifacts: Vec<PathBuf>,
}

fn wave_family_of(code: u8, shock: bool) -> Result<WaveFamily> {
    match (shock, code) {
        (true, 3) => Ok(WaveFamily::Shock3),
        (true, 4) => Ok(WaveFamily::Shock4),
        (false, 2) => Ok(WaveFamily::Contact2),
        (false, 5) => Ok(WaveFamily::Contact5),
        (true, other) => Err(WaveKitError::Schema(format!(
            "wave_request.shock.family must be 3 or 4, got {other}"
        ))),
        (false, other) => Err(WaveKitError::Schema(format!(
            "wave_request.contact.family must be 2 or 5, got {other}"
        ))),
    }
}

fn build_wave(sc: &Scenario, tol: &Tolerance) -> Result<DiscontinuityWave> {
    match &sc.wave_request {
        WaveRequest::Shock(s) => {
            let family = wave_family_of(s.family, true)?;
            let req = ShockSolveRequest {
                left: sc.left.to_conserved(),
                family,
                v_right: s.v_right,
                law: sc.law,
            };
            solve_shock_with(&req, tol)
        }
        WaveRequest::Contact(c) => {
            let family = wave_family_of(c.family, false)?;
            let spec = ContactSpec {
                left: sc.left.to_conserved().to_fluid(),
                family,
                angle: c.angle,
            };
            contact_construct(&spec, &sc.law)
        }
    }
}

fn grid_points(grid: &AGrid) -> Result<Vec<f64>> {
    if !(grid.lo > 0.0 && grid.hi > grid.lo && grid.n >= 2) {
        return Err(WaveKitError::Schema(format!(
            "a-grid needs 0 < lo < hi and n >= 2, got lo={}, hi={}, n={}",
            grid.lo, grid.hi, grid.n
        )));
    }
    let n = grid.n;
    let l0 = grid.lo.log10();
    let l1 = grid.hi.log10();
    Ok((0..n)
        .map(|k| {
            let t = k as f64 / (n - 1) as f64;
            let val = 10f64.powf(l0 + t * (l1 - l0));
            // snap the midpoint to exactly 1 when the grid straddles it
            if (val - 1.0).abs() < 1e-9 {
                1.0
            } else {
                val
            }
        })
        .collect())
}

/// Execute a scenario file and write its artifacts.
///
/// Exit status classes: 0 success, 2 inconclusive certificate, 3
/// inadmissible wave, 4 input error — obtained from the error variant via
/// [`WaveKitError::exit_code`] by the binary.
pub fn run_scenario(path: &Path, overrides: &Overrides) -> Result<RunOutcome> {
    let sc = load_scenario(path)?;
    sc.law.validated()?;
    let left_cons = sc.left.to_conserved();
    crate::state::ensure_volume(left_cons.v)?;
    let tol = overrides.tol.unwrap_or_default();

    let out_dir = overrides
        .out_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from(&sc.output.dir));
    fs::create_dir_all(&out_dir).map_err(|e| WaveKitError::Io {
        path: out_dir.display().to_string(),
        source: e,
    })?;
    let want_json = sc.output.formats.iter().any(|f| f == "json");
    let want_csv = sc.output.formats.iter().any(|f| f == "csv");

    let mut summary = Vec::new();
    let mut artifacts = Vec::new();
    let write_json = |name: &str, value: &JsonValue, artifacts: &mut Vec<PathBuf>| -> Result<()> {
        if !want_json {
            return Ok(());
        }
        let p = out_dir.join(name);
        fs::write(&p, value.render()).map_err(|e| WaveKitError::Io {
            path: p.display().to_string(),
            source: e,
        })?;
        artifacts.push(p);
        Ok(())
    };

    match &sc.analysis {
        Analysis::Fields => {
            let w = left_cons.to_fluid();
            let lam = eigenvalues(&w, &sc.law)?;
            let deg = degeneracy_check(&w, &sc.law)?;
            let mut vectors = Vec::new();
            let mut gnls = Vec::new();
            let mut checks = Vec::new();
            let a = char_matrix(&w, &sc.law)?;
            let norm_a = matrix_norm(&a);
            for family in 1..=6 {
                match eigen_pair(&w, &sc.law, family) {
                    Ok(pair) => {
                        vectors.push(JsonValue::Arr(
                            pair.r.iter().map(|x| JsonValue::Num(*x)).collect(),
                        ));
                        if overrides.check_fields {
                            let res = eigen_residual(&w, &sc.law, &pair)?;
                            let norm_res =
                                res.iter().map(|x| x * x).sum::<f64>().sqrt();
                            let norm_r =
                                pair.r.iter().map(|x| x * x).sum::<f64>().sqrt();
                            checks.push(JsonValue::Obj(vec![
                                ("family", JsonValue::Int(family as i64)),
                                ("residual", JsonValue::Num(norm_res)),
                                (
                                    "bound",
                                    JsonValue::Num(1e-10 * norm_a * norm_r),
                                ),
                                (
                                    "pass",
                                    JsonValue::Bool(norm_res <= 1e-10 * norm_a * norm_r),
                                ),
                            ]));
                        }
                    }
                    Err(WaveKitError::Degenerate { coincidence, .. }) => {
                        vectors.push(JsonValue::Str(format!("degenerate: {coincidence}")));
                    }
                    Err(e) => return Err(e),
                }
                gnls.push(match gnl_derivative(&w, &sc.law, family) {
                    Ok(g) => JsonValue::Num(g),
                    Err(WaveKitError::Degenerate { coincidence, .. }) => {
                        JsonValue::Str(format!("degenerate: {coincidence}"))
                    }
                    Err(e) => return Err(e),
                });
            }
            let mut fields = vec![
                ("state", fluid_json(&w)),
                (
                    "eigenvalues",
                    JsonValue::Arr(lam.iter().map(|x| JsonValue::Num(*x)).collect()),
                ),
                ("eigenvectors", JsonValue::Arr(vectors)),
                ("gnl_derivatives", JsonValue::Arr(gnls)),
                ("degeneracy", JsonValue::Str(deg.to_string())),
            ];
            if overrides.check_fields {
                fields.push(("residual_checks", JsonValue::Arr(checks)));
            }
            write_json("fields.json", &JsonValue::Obj(fields), &mut artifacts)?;
            summary.push(format!(
                "fields: 6 eigenvalues in [{}, {}], {}",
                fmt_f64(lam[0]),
                fmt_f64(lam[5]),
                deg
            ));
        }
        Analysis::Hugoniot => {
            let wave = build_wave(&sc, &tol)?;
            write_json(
                "wave.json",
                &wave_json(&wave, &sc.law, &tol)?,
                &mut artifacts,
            )?;
            summary.push(format!(
                "hugoniot: {} with sigma = {} ([v] = {})",
                wave.family,
                fmt_f64(wave.sigma),
                fmt_f64(wave.right.v - wave.left.v)
            ));
        }
        Analysis::Contact => {
            let wave = build_wave(&sc, &tol)?;
            write_json(
                "wave.json",
                &wave_json(&wave, &sc.law, &tol)?,
                &mut artifacts,
            )?;
            summary.push(format!(
                "contact: {} with sigma = {}",
                wave.family,
                fmt_f64(wave.sigma)
            ));
        }
        Analysis::Rarefaction(params) => {
            let family = match params.family {
                1 => RarefactionFamily::One,
                6 => RarefactionFamily::Six,
                other => {
                    return Err(WaveKitError::Schema(format!(
                        "rarefaction.family must be 1 or 6, got {other}"
                    )));
                }
            };
            let origin = left_cons.to_fluid();
            let v_floor = params.v_floor.unwrap_or(1e-4 * origin.v);
            let curve =
                rarefaction_integrate(&origin, family, v_floor, &sc.law, |_| CurveFlow::Continue)?;
            if want_csv {
                let p = out_dir.join("curve.csv");
                emit_plot_data(&PlotData::Rarefaction(&curve, &sc.law), &p)?;
                artifacts.push(p.with_extension("manifest.json"));
                artifacts.push(p);
            }
            summary.push(format!(
                "rarefaction: family {} curve with {} samples down to v = {}",
                family.index(),
                curve.samples.len(),
                fmt_f64(curve.samples.last().map(|s| s.v).unwrap_or(origin.v))
            ));
        }
        Analysis::Dissipation => {
            let wave = build_wave(&sc, &tol)?;
            let direct = dissipation_direct(&wave, &sc.law)?;
            let factored = dissipation_factored(&wave, &sc.law, &tol)?;
            let rel = (direct - factored).abs() / direct.abs().max(1e-300);
            write_json(
                "dissipation.json",
                &JsonValue::Obj(vec![
                    ("wave", wave_json(&wave, &sc.law, &tol)?),
                    ("direct", JsonValue::Num(direct)),
                    ("factored", JsonValue::Num(factored)),
                    ("relative_difference", JsonValue::Num(rel)),
                ]),
                &mut artifacts,
            )?;
            summary.push(format!(
                "dissipation: direct = {}, factored = {}, relative difference = {}",
                fmt_f64(direct),
                fmt_f64(factored),
                fmt_f64(rel)
            ));
        }
        Analysis::Certify(params) => {
            let wave = build_wave(&sc, &tol)?;
            let cert =
                certify_noncontraction_with(&wave, params.a, &sc.law, params.v_floor, &tol)?;
            let trace_name = "trace_a0.csv";
            if want_csv {
                let p = out_dir.join(trace_name);
                emit_plot_data(&PlotData::FaTrace(&cert), &p)?;
                artifacts.push(p.with_extension("manifest.json"));
                artifacts.push(p);
            }
            write_json(
                "certificate.json",
                &certificate_json(&cert, want_csv.then_some(trace_name)),
                &mut artifacts,
            )?;
            summary.push(format!(
                "certify: a = {}, branch {}, witness at v = {}, |F_a| = {}",
                fmt_f64(cert.a),
                cert.branch,
                fmt_f64(cert.crossing_v),
                fmt_f64(cert.f_at_witness.abs())
            ));
        }
        Analysis::SweepA(params) => {
            let wave = build_wave(&sc, &tol)?;
            let grid = overrides
                .a_grid
                .or(params.grid)
                .map(|g| grid_points(&g))
                .transpose()?
                .unwrap_or_else(crate::contraction::default_a_grid);
            let v_floor = params.v_floor;
            let law = sc.law;

            // independent pure tasks; collect by index so output order is
            // deterministic regardless of completion order
            let mut results: Vec<Option<Result<Certificate>>> =
                (0..grid.len()).map(|_| None).collect();
            std::thread::scope(|scope| {
                let mut handles = Vec::new();
                for (idx, a) in grid.iter().enumerate() {
                    let a = *a;
                    handles.push((
                        idx,
                        scope.spawn(move || {
                            certify_noncontraction_with(
                                &wave,
                                a,
                                &law,
                                v_floor,
                                &Tolerance::default(),
                            )
                        }),
                    ));
                }
                for (idx, h) in handles {
                    results[idx] = Some(h.join().expect("certificate task panicked"));
                }
            });

            let mut entries = Vec::new();
            let mut n_ok = 0usize;
            let mut first_err: Option<WaveKitError> = None;
            for (idx, (a, res)) in grid.iter().zip(results).enumerate() {
                match res.expect("all tasks joined") {
                    Ok(cert) => {
                        n_ok += 1;
                        let trace_name = format!("trace_a{idx}.csv");
                        if want_csv {
                            let p = out_dir.join(&trace_name);
                            emit_plot_data(&PlotData::FaTrace(&cert), &p)?;
                            artifacts.push(p.with_extension("manifest.json"));
                            artifacts.push(p);
                        }
                        entries.push(certificate_json(
                            &cert,
                            want_csv.then_some(trace_name.as_str()),
                        ));
                    }
                    Err(e) => {
                        entries.push(JsonValue::Obj(vec![
                            ("a", JsonValue::Num(*a)),
                            ("error", JsonValue::Str(e.to_string())),
                        ]));
                        if first_err.is_none() {
                            first_err = Some(e);
                        }
                    }
                }
            }
            write_json(
                "certificates.json",
                &JsonValue::Obj(vec![
                    ("wave", wave_json(&wave, &sc.law, &tol)?),
                    ("certificates", JsonValue::Arr(entries)),
                ]),
                &mut artifacts,
            )?;
            summary.push(format!(
                "sweep-a: {n_ok}/{} certificates across [{}, {}]",
                grid.len(),
                fmt_f64(grid[0]),
                fmt_f64(*grid.last().expect("nonempty grid"))
            ));
            if let Some(e) = first_err {
                return Err(e);
            }
        }
    }

    // tail scan rides along with certify on shock waves as a diagnostic
    if let (Analysis::Certify(_), true) = (&sc.analysis, want_json) {
        if let Ok(wave) = build_wave(&sc, &tol) {
            if wave.family.is_shock() {
                if let Ok(rep) =
                    f1_tail_scan(&wave, crate::contraction::Branch::R6Forward, &sc.law, None)
                {
                    let p = out_dir.join("tail_scan.json");
                    fs::write(&p, tail_scan_json(&rep).render()).map_err(|e| {
                        WaveKitError::Io {
                            path: p.display().to_string(),
                            source: e,
                        }
                    })?;
                    artifacts.push(p);
                }
            }
        }
    }

    Ok(RunOutcome { summary, artifacts })
}
