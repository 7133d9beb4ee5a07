//! Acceptance suite. Prints one PASS/FAIL line per criterion.
//!
//! Criterion 5 asks for values that the exact expansion of the composition
//! contradicts. It is checked as stated, reported as FAIL, and counted as an
//! expected failure so the remaining criteria still gate the build. If it
//! ever starts passing the run fails, so the expectation cannot go stale.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use blx_core::baselocus::{
    degree_formula_report, k_content, mult_base_locus, mult_w_random_left, w_content, MultOptions,
    Path, Provenance, SurfaceMeta,
};
use blx_core::composition::check_property_p1;
use blx_core::corpus::{cox, cox_shift, cubic, quadric, quadric_param, random_plane_map, random_surface};
use blx_core::oracle::{
    base_point_multiplicity, degmap_by_projection, fiber_count_plane, local_algebra_length,
    local_intersection_multiplicity, DEFAULT_SEEDS,
};
use blx_core::planemaps::{build_j, check_j_irreducible, mult_base_locus_plane, PlaneMap};
use blx_core::polycore::{parse, q, MPoly};
use blx_core::transform::{normalize_with, ComponentMap, ProjTransform, DEFAULT_COEFF_BOUND};
use num_rational::BigRational;
use serde_json::Value;

/// Wall-clock budget for the first fixture, binary start to report.
const RUNTIME_BUDGET: Duration = Duration::from_secs(30);
/// Random instances for the property criteria.
const SURFACE_INSTANCES: u64 = 20;
const PLANE_INSTANCES: u64 = 25;
/// Random left transforms per surface for the invariance check.
const LEFT_TRANSFORMS: u64 = 5;
const MAX_RANDOM_DEGREE: u32 = 3;

/// Criteria that are checked as stated but cannot hold; see the ledger.
const EXPECTED_FAILURES: &[u32] = &[5];

type Outcome = Result<String, String>;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .display()
        .to_string()
}

fn blx(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_blx"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "blx {} exited with {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(s: &str) -> MPoly {
    parse(s).expect("literal")
}

fn cox_fixture() -> Outcome {
    let start = Instant::now();
    let v = blx(&["mult", &fixture("fromcox.poly"), "--seed", "0"])?;
    let elapsed = start.elapsed();
    ensure(v["mult_total"] == 4, || format!("mult_total = {}", v["mult_total"]))?;
    ensure(elapsed < RUNTIME_BUDGET, || format!("took {elapsed:?}"))?;
    let target = p("(t1 - t2)^4");
    let opts = MultOptions {
        ell: Some(cox_shift()),
        ..MultOptions::default()
    };
    let mut degrees = Vec::new();
    for path in [Path::W, Path::K] {
        let r = mult_base_locus(&cox(), &opts.clone().with_path(path)).map_err(|e| e.to_string())?;
        ensure(r.mult_total == 4, || format!("{path}: mult_total = {}", r.mult_total))?;
        // content is normalized with positive leading coefficient
        ensure(r.content == target, || format!("{path}: content {}", r.content))?;
        degrees.push(r.mult_total);
        let via_cli = blx(&["mult", &fixture("fromcox.poly"), "--path", &path.to_string().to_lowercase()])?;
        ensure(via_cli["mult_total"] == 4, || format!("{path} via CLI: {}", via_cli["mult_total"]))?;
    }
    ensure(degrees[0] == degrees[1], || format!("W and K disagree: {degrees:?}"))?;
    Ok(format!(
        "mult_total 4 on W and K, content (t1 - t2)^4 after the shift, {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn degree_formula_fixture() -> Outcome {
    let r = degree_formula_report(
        &cox(),
        SurfaceMeta {
            degmap: Some(1),
            surface_degree: None,
        },
        &MultOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    ensure(r.surface_degree == Some((5, Provenance::Derived)), || {
        format!("surface degree {:?}", r.surface_degree)
    })?;
    let d = r.degree as i64;
    ensure(r.mult as i64 == d * d - 5, || format!("{} != {}^2 - 5", r.mult, d))?;
    ensure(r.mult == 4 && r.formula_holds == Some(true), || format!("mult {}", r.mult))?;
    let v = blx(&["mult", &fixture("fromcox.poly"), "--degmap", "1"])?;
    ensure(v["degree_formula"]["surface_degree"] == 5, || "CLI surface degree".into())?;
    Ok("deg(S) = 5 and 4 = 3^2 - 5*1".into())
}

fn cubic_fixture() -> Outcome {
    let r = mult_base_locus(&cubic(), &MultOptions::default().validated()).map_err(|e| e.to_string())?;
    ensure(r.mult_total == 3 && r.primpart_degree == 6, || {
        format!("mult {} primpart {}", r.mult_total, r.primpart_degree)
    })?;
    let v = blx(&["mult", &fixture("cubic.poly")])?;
    ensure(v["mult_total"] == 3 && v["primpart_degree"] == 6, || "CLI values".into())?;
    Ok("mult_total 3, primitive part of degree 6".into())
}

fn cremona_fixture() -> Outcome {
    let v = blx(&["planemap", &fixture("cremona.poly")])?;
    for (key, want) in [("deg", 2), ("mult", 3), ("degmap", 1)] {
        ensure(v[key] == want, || format!("{key} = {}", v[key]))?;
    }
    ensure(v["birational"] == true, || "not birational".into())?;
    let pts = v["base_points"].as_array().cloned().unwrap_or_default();
    ensure(pts.len() == 3 && pts.iter().all(|b| b["multiplicity"] == 1), || {
        format!("base points {pts:?}")
    })?;
    let id = ProjTransform::identity(2);
    let (j1, j2) = build_j(&PlaneMap::cremona(), &id).map_err(|e| e.to_string())?;
    ensure(j1 == p("t2*(x3*t3 - x1*t1)") && j2 == p("t1*(x3*t3 - x2*t2)"), || {
        format!("J1 = {j1}, J2 = {j2}")
    })?;
    let (a, b) = check_j_irreducible(&PlaneMap::cremona(), &id).map_err(|e| e.to_string())?;
    ensure(!a.is_irreducible() && !b.is_irreducible() && a.certified(), || {
        "J curves not reported reducible".into()
    })?;
    Ok("deg 2, mult 3, degMap 1, three simple base points, J = t2(x3t3 - x1t1), t1(x3t3 - x2t2)".into())
}

fn composition_fixture() -> Outcome {
    let v = blx(&[
        "compose",
        &fixture("fromcox.poly"),
        &fixture("cremona.poly"),
        "--degmap-q",
        "1",
        "--surfdeg-q",
        "5",
    ])?;
    let got = format!(
        "h = {}, deg(P) = {}, mult(P) = {}, RHS = {}, statements {}/{}/{}",
        v["common_factor"].as_str().unwrap_or("?"),
        v["deg_p"],
        v["mult_p"],
        v["rhs"],
        v["statements"]["gcd_trivial"],
        v["statements"]["degree_multiplies"],
        v["statements"]["mult_identity"]
    );
    let all_false = ["gcd_trivial", "degree_multiplies", "mult_identity"]
        .iter()
        .all(|k| v["statements"][*k] == false);
    let ok = v["common_factor"] == "t1" && v["deg_p"] == 5 && v["mult_p"] == 20 && v["rhs"] == 31 && all_false;
    if ok {
        Ok(got)
    } else {
        Err(format!("expected h = t1, deg(P) = 5, mult(P) = 20, RHS = 31, all false; got {got}"))
    }
}

fn full_consistency_fixture() -> Outcome {
    let meta = SurfaceMeta {
        degmap: Some(2),
        surface_degree: Some(2),
    };
    let r = check_property_p1(&quadric_param(), &PlaneMap::cremona(), meta, &MultOptions::default())
        .map_err(|e| e.to_string())?;
    ensure(r.mult_p == 12, || format!("mult(P0) = {}", r.mult_p))?;
    ensure(r.statements() == [true, true, true], || format!("{:?}", r.statements()))?;
    let cp = r.content_power.as_ref().ok_or("no content power check")?;
    ensure(cp.exponent == 4 && cp.holds && cp.degree_holds, || {
        format!("exponent {} holds {}", cp.exponent, cp.holds)
    })?;
    let mut fibers = Vec::new();
    for seed in DEFAULT_SEEDS {
        fibers.push(degmap_by_projection(&quadric_param(), 3, &quadric(), seed).map_err(|e| e.to_string())?);
    }
    ensure(fibers.iter().all(|f| *f == 2), || format!("projection fibers {fibers:?}"))?;
    let d = r.degree_p as i64;
    ensure(d * d - 2 * 2 == r.mult_p as i64, || format!("{d}^2 - 4 != {}", r.mult_p))?;
    Ok("mult(P0) = 12 = 16 - 2*2, statements true, content exponent 4, projected fiber 2".into())
}

fn surface_properties() -> Outcome {
    let mut with_points = 0;
    let mut oracle_checked = 0;
    for seed in 0..SURFACE_INSTANCES {
        let fail = |m: String| format!("seed {seed}: {m}");
        let surf = random_surface(seed, MAX_RANDOM_DEGREE).map_err(|e| fail(e.to_string()))?;
        let d2 = surf.degree() * surf.degree();
        let opts = MultOptions::default().with_seed(seed);
        let r = mult_base_locus(&surf, &opts).map_err(|e| fail(e.to_string()))?;
        // (a) degree split for the certified transform
        ensure(r.degree_split_holds(), || fail(format!("split {} + {} != {d2}", r.mult_total, r.primpart_degree)))?;
        // (b) invariance under random left transforms on the W path
        for k in 0..LEFT_TRANSFORMS {
            let m = mult_w_random_left(&surf, seed * 100 + k, &opts).map_err(|e| fail(e.to_string()))?;
            ensure(m == r.mult_total, || fail(format!("W with left transform {k}: {m} != {}", r.mult_total)))?;
        }
        // (c) W and K agree for the certified transform, with their own splits
        let normalized = normalize_with(&surf, seed, DEFAULT_COEFF_BOUND, None).map_err(|e| fail(e.to_string()))?;
        let k = k_content(&normalized.map, &opts).map_err(|e| fail(e.to_string()))?;
        let w = w_content(&normalized.map, &k.transform).map_err(|e| fail(e.to_string()))?;
        for c in [&k, &w] {
            ensure(c.content_degree() + c.primpart_degree() == d2, || fail(format!("{} split", c.path)))?;
        }
        ensure(k.content_degree() == w.content_degree(), || {
            fail(format!("K {} vs W {}", k.content_degree(), w.content_degree()))
        })?;
        // (d) oracle sum when every base point is rational
        if r.mult_total > 0 {
            with_points += 1;
        }
        if r.residual_degree == 0 {
            let mut total = 0;
            for b in &r.rational_points {
                let a = b.coords();
                total += base_point_multiplicity(surf.components(), &a, &DEFAULT_SEEDS)
                    .map_err(|e| fail(e.to_string()))?
                    .value;
            }
            ensure(total == r.mult_total, || fail(format!("oracle sum {total} != {}", r.mult_total)))?;
            oracle_checked += 1;
        }
    }
    ensure(with_points > 0, || "no instance had base points".into())?;
    Ok(format!(
        "{SURFACE_INSTANCES} instances ({with_points} with base points, {oracle_checked} oracle sums), {LEFT_TRANSFORMS} left transforms each"
    ))
}

fn plane_properties() -> Outcome {
    let mut nonlinear_birational = 0;
    for seed in 0..PLANE_INSTANCES {
        let fail = |m: String| format!("seed {seed}: {m}");
        let (family, s) = random_plane_map(seed).map_err(|e| fail(e.to_string()))?;
        let r = mult_base_locus_plane(&s, &MultOptions::default().with_seed(seed)).map_err(|e| fail(e.to_string()))?;
        let fiber = fiber_count_plane(&s, seed).map_err(|e| fail(e.to_string()))?;
        ensure(r.degmap == fiber, || fail(format!("{family:?}: degmap {} vs fiber {fiber}", r.degmap)))?;
        if r.birational && r.degree > 1 {
            nonlinear_birational += 1;
            let d2 = r.degree * r.degree;
            ensure(r.mult == d2 - 1 && r.mult >= 3, || fail(format!("{family:?}: mult {}", r.mult)))?;
        }
    }
    ensure(nonlinear_birational > 0, || "no non-linear birational instance".into())?;
    Ok(format!("{PLANE_INSTANCES} maps, {nonlinear_birational} non-linear birational"))
}

fn oracle_self_test() -> Outcome {
    // multiplicities from products and tangency orders
    let pairs: [(&str, &str, u32); 10] = [
        ("t2", "t1", 1),
        ("t2 - t1^2", "t2", 2),
        ("t1*t2", "t1 + t2", 2),
        ("t2^2 - t1^3", "t1", 2),
        ("t2^2 - t1^3", "t2", 3),
        ("t2^2 - t1^2*(t1 + 1)", "t2 - t1^3", 2),
        ("t2 - t1^4", "t2", 4),
        ("(t2 - t1^2)*(t2 + t1^2)", "t2 - t1^3", 4),
        ("t2*(t2 - t1^2)", "t2 - t1^3", 5),
        ("t2^2 - t1^3", "t2^2 + t1^3", 6),
    ];
    let origin: [BigRational; 2] = [q(0), q(0)];
    for (f, g, want) in pairs {
        let (f, g) = (p(f), p(g));
        let got = local_intersection_multiplicity(&f, &g, &origin).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("I({f}, {g}) = {got}, expected {want}"))?;
        let swapped = local_intersection_multiplicity(&g, &f, &origin).map_err(|e| e.to_string())?;
        ensure(swapped == want, || format!("swapped I({g}, {f}) = {swapped}"))?;
        let length = local_algebra_length(&f, &g, &origin).map_err(|e| e.to_string())?;
        ensure(length == want, || format!("local algebra of ({f}, {g}) has length {length}"))?;
    }
    Ok("10 pairs with multiplicities 1 to 6, symmetric, local algebra agrees".into())
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 9] = [
        (1, "Cox surface multiplicity", cox_fixture),
        (2, "degree formula with degMap 1", degree_formula_fixture),
        (3, "cubic parametrization", cubic_fixture),
        (4, "Cremona plane map", cremona_fixture),
        (5, "Cox surface composed with Cremona", composition_fixture),
        (6, "quadric composed with Cremona", full_consistency_fixture),
        (7, "random surface properties", surface_properties),
        (8, "random plane map properties", plane_properties),
        (9, "intersection oracle self-test", oracle_self_test),
    ];
    let mut unexpected = Vec::new();
    for (id, name, check) in criteria {
        let expected_failure = EXPECTED_FAILURES.contains(&id);
        match check() {
            Ok(detail) => {
                println!("PASS [{id}] {name}: {detail}");
                if expected_failure {
                    unexpected.push(format!("criterion {id} passed but is listed as an expected failure"));
                }
            }
            Err(why) => {
                let tag = if expected_failure { " (expected, see ledger)" } else { "" };
                println!("FAIL [{id}] {name}{tag}: {why}");
                if !expected_failure {
                    unexpected.push(format!("criterion {id} failed"));
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("{}", unexpected.join("\n"));
        std::process::exit(1);
    }
}
