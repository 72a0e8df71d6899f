//! Input parsing: generating functions from JSON, scalar fields from CSV or
//! inline expressions, curves and isotopies from CSV. Parse failures carry
//! the file, line and field that broke.

use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use lab_core::base::{BaseDomain, ScalarField};
use lab_core::causality::{MinkowskiEvent, SampledCurve};
use lab_core::genfun::{AuxGrid, GeneratingFunction, GridSigma, QuadraticForm, Sigma};
use lab_core::order::IsotopyPath;

/// JSON schema for a generating function:
///
/// ```json
/// {
///   "base": {"kind": "circle", "resolution": 1024},
///   "qform": {"plus": [1.0], "minus": [-1.0]},
///   "sigma": {"kind": "expr", "payload": "0.3*bump(xi1)*cos(theta)"},
///   "support_radius": 1.0,
///   "box": {"halfwidth": 1.5, "points_per_axis": 257}
/// }
/// ```
///
/// `base.kind` is `"circle"` or `"sphere"` (with `"dim"`); `sigma.kind` is
/// `"zero"`, `"expr"` (payload: expression string), `"field"` (payload: a
/// constant or one value per base sample, constant in ξ) or `"grid"`
/// (payload: `{"values": [[…]]}`, one row per base sample, auxiliary
/// multi-index flattened lexicographically, axis 0 slowest). The box is
/// optional; it defaults to half-width `1.5 ×` support radius with 257 nodes
/// per axis.
#[derive(Debug, Deserialize)]
struct GenFunSpec {
    base: BaseSpec,
    qform: QFormSpec,
    sigma: SigmaSpec,
    support_radius: f64,
    #[serde(rename = "box", default)]
    aux_box: Option<BoxSpec>,
}

#[derive(Debug, Deserialize)]
struct BaseSpec {
    kind: String,
    #[serde(default)]
    dim: Option<usize>,
    resolution: usize,
}

#[derive(Debug, Deserialize)]
struct QFormSpec {
    #[serde(default)]
    plus: Vec<f64>,
    #[serde(default)]
    minus: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
enum SigmaSpec {
    Zero,
    Expr(String),
    Field(FieldPayload),
    Grid(GridPayload),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum FieldPayload {
    Constant(f64),
    Values(Vec<f64>),
}

#[derive(Debug, Deserialize)]
struct GridPayload {
    values: Vec<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
struct BoxSpec {
    halfwidth: f64,
    points_per_axis: usize,
}

fn build_domain(spec: &BaseSpec) -> Result<Arc<BaseDomain>> {
    match spec.kind.as_str() {
        "circle" => Ok(BaseDomain::circle(spec.resolution)?),
        "sphere" => {
            let dim = spec.dim.unwrap_or(2);
            Ok(BaseDomain::sphere(dim, spec.resolution)?)
        }
        other => bail!("base.kind must be \"circle\" or \"sphere\", got \"{other}\""),
    }
}

/// Read a generating function from a JSON document.
pub fn read_genfun_json(path: &Path) -> Result<GeneratingFunction> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec: GenFunSpec = serde_json::from_str(&text).map_err(|e| {
        anyhow!(
            "{}: line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        )
    })?;
    let domain = build_domain(&spec.base)?;
    let q_form = QuadraticForm::new(spec.qform.plus.clone(), spec.qform.minus.clone())?;
    let aux = match &spec.aux_box {
        Some(b) => AuxGrid::new(b.points_per_axis, b.halfwidth)?,
        None => AuxGrid::new(257, 1.5 * spec.support_radius)?,
    };
    match spec.sigma {
        SigmaSpec::Zero => Ok(GeneratingFunction::new(
            domain,
            q_form,
            Sigma::Zero,
            spec.support_radius,
            aux,
        )?),
        SigmaSpec::Expr(src) => Ok(GeneratingFunction::with_expr_sigma(
            domain,
            q_form,
            &src,
            spec.support_radius,
            aux,
        )?),
        SigmaSpec::Field(payload) => {
            let values = match payload {
                FieldPayload::Constant(c) => vec![c; domain.resolution()],
                FieldPayload::Values(v) => v,
            };
            let field = ScalarField::from_values(domain.clone(), values)?;
            Ok(GeneratingFunction::new(
                domain,
                q_form,
                Sigma::Graph(field),
                spec.support_radius,
                aux,
            )?)
        }
        SigmaSpec::Grid(payload) => {
            if payload.values.len() != domain.resolution() {
                bail!(
                    "sigma.payload.values has {} rows for {} base samples",
                    payload.values.len(),
                    domain.resolution()
                );
            }
            let per_row = aux.points_per_axis().pow(q_form.total_dim() as u32);
            for (i, row) in payload.values.iter().enumerate() {
                if row.len() != per_row {
                    bail!(
                        "sigma.payload.values row {i} has {} entries, expected {per_row}",
                        row.len()
                    );
                }
            }
            let values = payload.values.into_iter().flatten().collect();
            let axes = q_form.total_dim();
            Ok(GeneratingFunction::new(
                domain,
                q_form,
                Sigma::Grid(GridSigma {
                    axes,
                    grid: aux,
                    values,
                }),
                spec.support_radius,
                aux,
            )?)
        }
    }
}

/// JSON schema for a cooriented sphere: `{"center": [...], "t": real}`.
/// The signed radius `t` fixes both the radius `|t|` and the coorientation
/// (inwards for `t < 0`, outwards for `t > 0`, the full fibre at `t = 0`).
#[derive(Debug, Deserialize)]
struct SphereSpec {
    center: Vec<f64>,
    t: f64,
}

/// Read a cooriented sphere, returning it with its signed radius.
pub fn read_sphere_json(path: &Path) -> Result<(lab_core::hodograph::CoorientedSphere, f64)> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec: SphereSpec = serde_json::from_str(&text).map_err(|e| {
        anyhow!(
            "{}: line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        )
    })?;
    let coorientation = if spec.t < 0.0 {
        lab_core::hodograph::Coorientation::Inward
    } else {
        lab_core::hodograph::Coorientation::Outward
    };
    let sphere =
        lab_core::hodograph::CoorientedSphere::new(spec.center, spec.t.abs(), coorientation)?;
    Ok((sphere, spec.t))
}

/// Read a scalar field: `expr:<expression>` builds a circle field of the
/// given resolution; anything else is a CSV path with `sample_index,value`
/// rows (header optional) covering every sample exactly once.
pub fn read_scalar_field(arg: &str, circle_resolution: usize) -> Result<ScalarField> {
    if let Some(src) = arg.strip_prefix("expr:") {
        let domain = BaseDomain::circle(circle_resolution)?;
        return Ok(ScalarField::from_expr(domain, src)?);
    }
    let path = Path::new(arg);
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut entries: Vec<(usize, f64)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if lineno == 0 && line.chars().next().is_some_and(|c| c.is_alphabetic()) {
            continue; // header
        }
        let mut fields = line.split(',');
        let idx: usize = parse_field(&mut fields, path, lineno, "sample_index")?;
        let value: f64 = parse_field(&mut fields, path, lineno, "value")?;
        entries.push((idx, value));
    }
    if entries.is_empty() {
        bail!("{}: no data rows", path.display());
    }
    let resolution = entries.iter().map(|(i, _)| i + 1).max().unwrap();
    let mut values = vec![f64::NAN; resolution];
    for (i, v) in entries {
        if i >= resolution || !values[i].is_nan() {
            bail!(
                "{}: duplicate or out-of-range sample_index {i}",
                path.display()
            );
        }
        values[i] = v;
    }
    if values.iter().any(|v| v.is_nan()) {
        bail!(
            "{}: missing sample indices (need 0..{})",
            path.display(),
            resolution - 1
        );
    }
    let domain = BaseDomain::circle(resolution)?;
    Ok(ScalarField::from_values(domain, values)?)
}

fn parse_field<T: std::str::FromStr>(
    fields: &mut std::str::Split<'_, char>,
    path: &Path,
    lineno: usize,
    name: &str,
) -> Result<T> {
    let raw = fields
        .next()
        .ok_or_else(|| {
            anyhow!(
                "{}: line {}: missing field `{name}`",
                path.display(),
                lineno + 1
            )
        })?
        .trim();
    raw.parse().map_err(|_| {
        anyhow!(
            "{}: line {}: field `{name}`: cannot parse `{raw}`",
            path.display(),
            lineno + 1
        )
    })
}

/// What a classification CSV turned out to contain.
pub enum ClassifyInput {
    /// Spacetime curve: rows `s,t,y1..yn`.
    Curve(SampledCurve),
    /// Graph isotopy: rows `time,sample_index,value`.
    Isotopy(IsotopyPath),
}

/// Read a classification input, dispatching on the header: a
/// `time,sample_index,value` header (or 3-column all-numeric rows whose
/// second column is integral) is an isotopy; otherwise `s,t,y1..yn` rows
/// make a curve.
pub fn read_classify_csv(path: &Path) -> Result<ClassifyInput> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut lines = text.lines().enumerate().peekable();
    let mut is_isotopy = false;
    if let Some((_, first)) = lines.peek() {
        let first = first.trim();
        if first.starts_with("time") && first.contains("sample_index") {
            is_isotopy = true;
            lines.next();
        } else if first.starts_with('s') || first.starts_with("param") {
            lines.next();
        }
    }
    let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
    for (lineno, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let cells: Result<Vec<f64>> = line
            .split(',')
            .map(|c| {
                c.trim().parse::<f64>().map_err(|_| {
                    anyhow!(
                        "{}: line {}: cannot parse `{}` as a number",
                        path.display(),
                        lineno + 1,
                        c.trim()
                    )
                })
            })
            .collect();
        rows.push((lineno, cells?));
    }
    if rows.is_empty() {
        bail!("{}: no data rows", path.display());
    }
    let width = rows[0].1.len();
    if rows.iter().any(|(_, r)| r.len() != width) {
        bail!("{}: rows of mixed width", path.display());
    }
    if is_isotopy {
        if width != 3 {
            bail!(
                "{}: isotopy rows must be time,sample_index,value",
                path.display()
            );
        }
        return Ok(ClassifyInput::Isotopy(isotopy_from_rows(&rows, path)?));
    }
    if width < 3 {
        bail!(
            "{}: curve rows need s,t and at least one spatial coordinate",
            path.display()
        );
    }
    let mut params = Vec::with_capacity(rows.len());
    let mut events = Vec::with_capacity(rows.len());
    for (_, r) in &rows {
        params.push(r[0]);
        events.push(MinkowskiEvent::new(r[1], r[2..].to_vec())?);
    }
    Ok(ClassifyInput::Curve(SampledCurve::new(params, events)?))
}

fn isotopy_from_rows(rows: &[(usize, Vec<f64>)], path: &Path) -> Result<IsotopyPath> {
    let mut times: Vec<f64> = Vec::new();
    for (_, r) in rows {
        if times.last() != Some(&r[0]) && !times.contains(&r[0]) {
            times.push(r[0]);
        }
    }
    let resolution = rows
        .iter()
        .map(|(_, r)| r[1] as usize + 1)
        .max()
        .unwrap_or(0);
    let domain = BaseDomain::circle(resolution)?;
    let mut frames = vec![vec![f64::NAN; resolution]; times.len()];
    for (lineno, r) in rows {
        let t_idx = times
            .iter()
            .position(|t| *t == r[0])
            .expect("time collected above");
        let s_idx = r[1] as usize;
        if r[1].fract() != 0.0 || s_idx >= resolution {
            bail!(
                "{}: line {}: bad sample_index {}",
                path.display(),
                lineno + 1,
                r[1]
            );
        }
        frames[t_idx][s_idx] = r[2];
    }
    let mut fields = Vec::with_capacity(frames.len());
    for (k, values) in frames.into_iter().enumerate() {
        if values.iter().any(|v| v.is_nan()) {
            bail!(
                "{}: frame at time {} is missing samples",
                path.display(),
                times[k]
            );
        }
        fields.push(ScalarField::from_values(domain.clone(), values)?);
    }
    Ok(IsotopyPath::new(times, fields)?)
}
