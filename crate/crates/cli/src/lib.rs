//! Front end for the `blx` binary: argument parsing, orchestration and
//! deterministic JSON or text reports.

use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use blx_core::baselocus::{
    degree_formula_report, mult_base_locus, BasePoint, BaseLocusReport, GenericityCertificate,
    MultOptions, ParamSurface, Path, Provenance, SurfaceMeta,
};
use blx_core::composition::{check_property_p1, CompositionReport};
use blx_core::corpus::{parse_map_input, MapInput};
use blx_core::oracle::{base_point_multiplicity, fiber_count_detailed, local_algebra_length};
use blx_core::planemaps::{
    check_j_irreducible, mult_base_locus_plane, PlaneMap, PlaneMapReport,
};
use blx_core::polycore::{format_poly, MPoly};
use blx_core::transform::{apply_param, ComponentMap, ProjTransform, DEFAULT_COEFF_BOUND};
use blx_core::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "blx/1";

#[derive(Parser, Debug)]
#[command(name = "blx", version, about = "Base-locus multiplicities of rational surface parametrizations and plane maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multiplicity of the base locus of a surface parametrization.
    Mult {
        input: PathBuf,
        /// Generic fiber size, enables the degree formula.
        #[arg(long)]
        degmap: Option<u64>,
        /// Degree of the image surface.
        #[arg(long)]
        surfdeg: Option<u64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Base locus, map degree and birationality of a plane map.
    Planemap {
        input: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Reparametrization of a surface by a plane map.
    Compose {
        surface: PathBuf,
        map: PathBuf,
        #[arg(long = "degmap-q")]
        degmap_q: Option<u64>,
        #[arg(long = "surfdeg-q")]
        surfdeg_q: Option<u64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Brute-force verifiers.
    Oracle {
        #[command(subcommand)]
        kind: OracleKind,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleKind {
    /// Local intersection multiplicity of the generic curves at base points.
    Hs {
        input: PathBuf,
        /// Base point as `a,b,c`; all rational base points when omitted.
        #[arg(long, value_parser = parse_point)]
        point: Option<[i64; 3]>,
        /// Also run the truncated local-algebra oracle.
        #[arg(long)]
        local_algebra: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Generic fiber size of a plane map.
    Fiber {
        input: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 25)]
    pub trials: usize,
    /// Resultant path: w or k for surfaces, v or j for plane maps.
    #[arg(long, value_enum)]
    pub path: Option<PathArg>,
    /// Cross-check the certified path against the direct one.
    #[arg(long)]
    pub validate: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long = "coeff-bound", default_value_t = DEFAULT_COEFF_BOUND)]
    pub coeff_bound: i64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathArg {
    W,
    K,
    V,
    J,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

fn parse_point(s: &str) -> std::result::Result<[i64; 3], String> {
    let v: Vec<i64> = s
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|e| e.to_string()))
        .collect::<std::result::Result<_, _>>()?;
    <[i64; 3]>::try_from(v).map_err(|_| "expected three comma-separated integers".to_string())
}

impl CommonArgs {
    fn options(&self, default: Path) -> MultOptions {
        let path = match self.path {
            Some(PathArg::W) => Path::W,
            Some(PathArg::K) => Path::K,
            Some(PathArg::V) => Path::V,
            Some(PathArg::J) => Path::J,
            None => default,
        };
        MultOptions {
            path,
            trials: self.trials,
            seed: self.seed,
            validate: self.validate,
            coeff_bound: self.coeff_bound,
            ..MultOptions::default()
        }
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code: 0 on success, 1 on input errors, 2 when
/// certification fails.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok((report, format)) => {
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&report).expect("serializable"),
                Format::Text => render_text(&report),
            };
            let _ = writeln!(out, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_certification() {
                2
            } else {
                1
            }
        }
    }
}

fn read_input(path: &FsPath) -> Result<MapInput> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_map_input(&text).map_err(|e| match e {
        Error::Input(msg) => Error::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn read_surface(path: &FsPath) -> Result<ParamSurface> {
    match read_input(path)? {
        MapInput::Surface(p) => Ok(p),
        MapInput::Plane(_) => Err(Error::Input(format!(
            "{}: expected a surface parametrization (P = [...])",
            path.display()
        ))),
    }
}

fn read_plane(path: &FsPath) -> Result<PlaneMap> {
    match read_input(path)? {
        MapInput::Plane(s) => Ok(s),
        MapInput::Surface(_) => Err(Error::Input(format!(
            "{}: expected a plane map (S = [...])",
            path.display()
        ))),
    }
}

/// Builds the report for a parsed command line.
pub fn execute(cli: &Cli) -> Result<(Value, Format)> {
    match &cli.command {
        Command::Mult {
            input,
            degmap,
            surfdeg,
            common,
        } => {
            let p = read_surface(input)?;
            let opts = surface_options(common)?;
            let known = SurfaceMeta {
                degmap: *degmap,
                surface_degree: *surfdeg,
            };
            let mut report = header("mult", &[input], common);
            let have_meta = known.degmap.or(p.meta.degmap).is_some()
                || known.surface_degree.or(p.meta.surface_degree).is_some();
            if have_meta {
                let d = degree_formula_report(&p, known, &opts)?;
                extend(&mut report, base_locus_json(&d.base));
                let mut formula = Map::new();
                let mut sources = Map::new();
                for (key, entry) in [("degmap", d.degmap), ("surface_degree", d.surface_degree)] {
                    if let Some((v, prov)) = entry {
                        formula.insert(key.into(), json!(v));
                        sources.insert(key.into(), json!(provenance(prov, key)));
                    }
                }
                formula.insert("formula_holds".into(), json!(d.formula_holds));
                formula.insert("degree_bound_holds".into(), json!(d.degree_bound_holds));
                formula.insert("birational_identity".into(), json!(d.birational_identity));
                formula.insert("base_points_forced".into(), json!(d.base_points_forced));
                formula.insert("sources".into(), Value::Object(sources));
                report.insert("degree_formula".into(), Value::Object(formula));
            } else {
                extend(&mut report, base_locus_json(&mult_base_locus(&p, &opts)?));
            }
            Ok((Value::Object(report), common.format))
        }
        Command::Planemap { input, common } => {
            let s = read_plane(input)?;
            let opts = plane_options(common)?;
            let r = mult_base_locus_plane(&s, &opts)?;
            let mut report = header("planemap", &[input], common);
            extend(&mut report, plane_json(&s, &r)?);
            Ok((Value::Object(report), common.format))
        }
        Command::Compose {
            surface,
            map,
            degmap_q,
            surfdeg_q,
            common,
        } => {
            let q = read_surface(surface)?;
            let s = read_plane(map)?;
            let opts = common.options(Path::K);
            let meta = SurfaceMeta {
                degmap: *degmap_q,
                surface_degree: *surfdeg_q,
            };
            let r = check_property_p1(&q, &s, meta, &opts)?;
            let mut report = header("compose", &[surface, map], common);
            extend(&mut report, composition_json(&r));
            Ok((Value::Object(report), common.format))
        }
        Command::Oracle { kind } => match kind {
            OracleKind::Hs {
                input,
                point,
                local_algebra,
                common,
            } => {
                let mut report = header("oracle hs", &[input], common);
                extend(&mut report, hs_json(input, *point, *local_algebra, common)?);
                Ok((Value::Object(report), common.format))
            }
            OracleKind::Fiber { input, common } => {
                let s = read_plane(input)?;
                let f = fiber_count_detailed(&s, common.seed)?;
                let mut report = header("oracle fiber", &[input], common);
                report.insert("fiber_count".into(), json!(f.value));
                report.insert("targets".into(), json!(f.targets));
                report.insert("attempts".into(), json!(f.attempts));
                report.insert(
                    "sources".into(),
                    json!({
                        "fiber_count": "fiber_count_plane: distinct non-base preimages of random targets",
                        "attempts": "fiber_count_plane",
                    }),
                );
                Ok((Value::Object(report), common.format))
            }
        },
    }
}

fn surface_options(common: &CommonArgs) -> Result<MultOptions> {
    if matches!(common.path, Some(PathArg::V | PathArg::J)) {
        return Err(Error::Input("surface paths are w and k".into()));
    }
    Ok(common.options(Path::K))
}

fn plane_options(common: &CommonArgs) -> Result<MultOptions> {
    if matches!(common.path, Some(PathArg::W | PathArg::K)) {
        return Err(Error::Input("plane-map paths are v and j".into()));
    }
    Ok(common.options(Path::J))
}

fn header(command: &str, inputs: &[&PathBuf], common: &CommonArgs) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert(
        "inputs".into(),
        json!(inputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>()),
    );
    m.insert("seed".into(), json!(common.seed));
    m.insert("trials".into(), json!(common.trials));
    m
}

fn extend(target: &mut Map<String, Value>, value: Value) {
    if let Value::Object(m) = value {
        target.extend(m);
    }
}

fn provenance(p: Provenance, key: &str) -> String {
    match p {
        Provenance::Given => format!("{key}: supplied by the user"),
        Provenance::Computed => format!("{key}: computed"),
        Provenance::Derived => format!("{key}: derived from deg^2 - mult = deg(surface) * degMap"),
    }
}

fn int_json(n: &BigInt) -> Value {
    n.to_i64().map(|v| json!(v)).unwrap_or_else(|| json!(n.to_string()))
}

fn poly(p: &MPoly) -> Value {
    json!(format_poly(p))
}

fn transform_json(t: &ProjTransform) -> Value {
    json!(t.to_string())
}

fn certificate_json(c: &GenericityCertificate) -> Value {
    json!({
        "passed": c.passed(),
        "checks": c
            .checks
            .iter()
            .map(|k| json!({"name": k.name, "passed": k.passed, "witness": k.witness}))
            .collect::<Vec<_>>(),
    })
}

fn point_json(b: &BasePoint) -> Value {
    json!({
        "point": b.point.iter().map(int_json).collect::<Vec<_>>(),
        "multiplicity": b.multiplicity,
        "curve_multiplicity": b.curve_multiplicity,
        "tangent_cone": format_poly(&b.tangent_cone.cone),
    })
}

fn path_name(p: Path) -> String {
    p.to_string()
}

fn base_locus_json(r: &BaseLocusReport) -> Value {
    json!({
        "deg": r.degree,
        "mult_total": r.mult_total,
        "content": poly(&r.content),
        "resultant_degree": r.resultant_degree,
        "primpart_degree": r.primpart_degree,
        "degree_split_holds": r.degree_split_holds(),
        "base_points": r.rational_points.iter().map(point_json).collect::<Vec<_>>(),
        "residual_degree": r.residual_degree,
        "path": path_name(r.path),
        "transform": transform_json(&r.transform),
        "parameter_shift": transform_json(&r.ell),
        "left_transform": transform_json(&r.left),
        "genericity": certificate_json(&r.genericity),
        "attempts": r.attempts.len(),
        "sources": {
            "deg": "common degree of the components",
            "mult_total": "t-degree of the content of the certified resultant",
            "resultant_degree": "t-degree of the certified resultant",
            "primpart_degree": "t-degree of the primitive part of the certified resultant",
            "base_points": "rational line factors of the content matched with common zeros",
            "residual_degree": "content degree not attributed to rational points",
            "attempts": "transforms tried until the genericity certificate passed",
        },
    })
}

fn plane_json(s: &PlaneMap, r: &PlaneMapReport) -> Result<Value> {
    // irreducibility is checked in the normalized coordinates where the
    // certified transform lives
    let normalized = apply_left(&r.left, &apply_param(&r.ell, s)?)?;
    let (i1, i2) = check_j_irreducible(&normalized, &r.transform)?;
    let (ra, rb) = r.ratios();
    Ok(json!({
        "deg": r.degree,
        "mult": r.mult,
        "degmap": r.degmap,
        "birational": r.birational,
        "content": poly(&r.content),
        "resultant_degree": r.resultant_degree,
        "primpart_degree": r.primpart_degree,
        "ratios": [ra.to_string(), rb.to_string()],
        "base_points": r.rational_points.iter().map(point_json).collect::<Vec<_>>(),
        "residual_degree": r.residual_degree,
        "j_irreducible": [i1.is_irreducible(), i2.is_irreducible()],
        "path": path_name(r.path),
        "transform": transform_json(&r.transform),
        "parameter_shift": transform_json(&r.ell),
        "left_transform": transform_json(&r.left),
        "genericity": certificate_json(&r.genericity),
        "attempts": r.attempts.len(),
        "sources": {
            "deg": "common degree of the components",
            "mult": "t-degree of the content of the certified resultant",
            "degmap": "deg^2 - mult",
            "resultant_degree": "t-degree of the certified resultant",
            "primpart_degree": "t-degree of the primitive part, equal to degmap",
            "base_points": "rational line factors of the content matched with common zeros",
            "residual_degree": "content degree not attributed to rational points",
            "attempts": "transforms tried until the genericity certificate passed",
        },
    }))
}

fn apply_left(l: &ProjTransform, s: &PlaneMap) -> Result<PlaneMap> {
    blx_core::transform::apply_left(l, s)
}

fn composition_json(r: &CompositionReport) -> Value {
    let c = &r.composition;
    let content_power = r.content_power.as_ref().map(|cp| {
        json!({
            "exponent": cp.exponent,
            "content_p": poly(&cp.content_p),
            "content_s": poly(&cp.content_s),
            "holds": cp.holds,
            "degree_holds": cp.degree_holds,
            "parameter_shift": transform_json(&cp.ell),
        })
    });
    json!({
        "raw": c.raw.iter().map(poly).collect::<Vec<_>>(),
        "common_factor": poly(&c.common_factor),
        "p": c.p.components().iter().map(poly).collect::<Vec<_>>(),
        "deg_p": r.degree_p,
        "deg_q": r.degree_q,
        "deg_s": r.degree_s,
        "degree_product": c.degree_product,
        "mult_p": r.mult_p,
        "mult_q": r.mult_q,
        "mult_s": r.mult_s,
        "degmap_s": r.degmap_s,
        "degmap_q": r.degmap_q,
        "surface_degree_q": r.surface_degree,
        "rhs": r.rhs,
        "statements": {
            "gcd_trivial": r.gcd_trivial,
            "degree_multiplies": r.degree_multiplies,
            "mult_identity": r.mult_identity,
            "agree": r.statements_agree(),
        },
        "degree_inequality": r.degree_inequality,
        "mult_inequality": r.mult_inequality,
        "consistency_identity": r.consistency_identity,
        "content_power": content_power,
        "sources": {
            "deg_p": "degree of the composed components after dividing out their gcd",
            "deg_q": "common degree of Q",
            "deg_s": "common degree of S",
            "degree_product": "deg_q * deg_s",
            "mult_p": "certified content degree for P",
            "mult_q": "certified content degree for Q",
            "mult_s": "certified content degree for S",
            "degmap_s": "deg_s^2 - mult_s",
            "degmap_q": "supplied by the user",
            "surface_degree_q": "supplied by the user",
            "rhs": "deg_s^2 * mult_q + surface_degree_q * degmap_q * mult_s",
        },
    })
}

fn hs_json(
    input: &FsPath,
    point: Option<[i64; 3]>,
    local_algebra: bool,
    common: &CommonArgs,
) -> Result<Value> {
    let (components, points): (Vec<MPoly>, Vec<[i64; 3]>) = match read_input(input)? {
        MapInput::Surface(p) => {
            let pts = match point {
                Some(a) => vec![a],
                None => rational_points(&mult_base_locus(&p, &surface_options(common)?)?.rational_points),
            };
            (p.components().to_vec(), pts)
        }
        MapInput::Plane(s) => {
            let pts = match point {
                Some(a) => vec![a],
                None => rational_points(&mult_base_locus_plane(&s, &plane_options(common)?)?.rational_points),
            };
            (s.components().to_vec(), pts)
        }
    };
    let seeds: Vec<u64> = (0..3).map(|k| common.seed.wrapping_mul(3).wrapping_add(k + 1)).collect();
    let mut entries = Vec::new();
    let mut total = 0u32;
    for a in points {
        let coords: [BigRational; 3] = a.map(|c| BigRational::from_integer(c.into()));
        let r = base_point_multiplicity(&components, &coords, &seeds)?;
        total += r.value;
        let mut entry = json!({
            "point": a,
            "multiplicity": r.value,
            "seeds": r.seeds,
            "agreement": r.agreement,
        });
        if local_algebra {
            let (f, g) = specialized_local_curves(&components, &coords, seeds[0])?;
            let zero = BigRational::from_integer(0.into());
            let len = local_algebra_length(&f, &g, &[zero.clone(), zero])?;
            entry["local_algebra_length"] = json!(len);
            if len != r.value {
                return Err(Error::OracleDisagreement(format!(
                    "intersection recursion gives {} but the local algebra has length {len}",
                    r.value
                )));
            }
        }
        entries.push(entry);
    }
    Ok(json!({
        "points": entries,
        "total": total,
        "sources": {
            "multiplicity": "local intersection number of the two generic curves, agreed by all specializations",
            "total": "sum over the listed points",
            "local_algebra_length": "dimension of the stabilized truncated local algebra",
        },
    }))
}

fn specialized_local_curves(
    components: &[MPoly],
    a: &[BigRational; 3],
    seed: u64,
) -> Result<(MPoly, MPoly)> {
    blx_core::oracle::specialized_generic_curves(components, a, seed)
}

fn rational_points(points: &[BasePoint]) -> Vec<[i64; 3]> {
    points
        .iter()
        .filter_map(|b| {
            let v: Option<Vec<i64>> = b.point.iter().map(|c| c.to_i64()).collect();
            v.and_then(|v| <[i64; 3]>::try_from(v).ok())
        })
        .collect()
}

fn render_text(v: &Value) -> String {
    let mut lines = Vec::new();
    flatten("", v, &mut lines);
    lines.join("\n")
}

fn flatten(prefix: &str, v: &Value, lines: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, lines);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, lines);
            }
        }
        Value::String(s) => lines.push(format!("{prefix}: {s}")),
        other => lines.push(format!("{prefix}: {other}")),
    }
}
