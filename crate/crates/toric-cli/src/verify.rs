//! The built-in verification suite: re-derives every reference fixture and
//! checks it against its frozen expected value.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::time::Instant;
use toric_core::{
    ideal, implicitize, lattice, moment, patch, polytope, realmesh, ControlScheme, ExponentSet,
    ImplicitForm, ProjectivePoint,
};

use crate::model::Model;

pub const HEXAGON_JSON: &str = include_str!("../fixtures/hexagon.json");
pub const CUSP_JSON: &str = include_str!("../fixtures/cusp.json");
pub const RNC3_JSON: &str = include_str!("../fixtures/rnc3.json");
pub const PILLOW_JSON: &str = include_str!("../fixtures/pillow.json");
pub const HEXSURF_JSON: &str = include_str!("../fixtures/hexsurf.json");
pub const CROSSPOLY_JSON: &str = include_str!("../fixtures/crosspoly.json");

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub millis: u128,
}

fn run_check(
    name: &'static str,
    f: impl FnOnce() -> Result<String, String>,
) -> CheckResult {
    let start = Instant::now();
    let outcome = f();
    let millis = start.elapsed().as_millis();
    match outcome {
        Ok(detail) => CheckResult { name, pass: true, detail, millis },
        Err(detail) => CheckResult { name, pass: false, detail, millis },
    }
}

pub fn run_all() -> Vec<CheckResult> {
    vec![
        run_check("hexagon-ideal", check_hexagon_ideal),
        run_check("cusp-binomial", check_cusp_binomial),
        run_check("degrees", check_degrees),
        run_check("cubic-curve", check_cubic_curve),
        run_check("pillow-quartic", check_pillow_quartic),
        run_check("hexagon-sextic", check_hexagon_sextic),
        run_check("linear-precision", check_linear_precision),
        run_check("moment-containment", check_moment_containment),
        run_check("chart-identities", check_chart_identities),
        run_check("double-cover", check_double_cover),
        run_check("basics", check_basics),
    ]
}

fn model(text: &str) -> Model {
    Model::parse(text).expect("embedded fixture parses")
}

/// Unordered {plus, minus} monomial pair, insensitive to factor order.
fn binomial_key(rendered: &str) -> (String, String) {
    let (p, m) = rendered.split_once(" - ").expect("binomial");
    let sort = |s: &str| {
        let mut fs: Vec<&str> = s.split('*').collect();
        fs.sort();
        fs.join("*")
    };
    (sort(p), sort(m))
}

fn check_hexagon_ideal() -> Result<String, String> {
    let m = model(HEXAGON_JSON);
    let bs = ideal::quadratic_binomials(&m.exponents);
    if bs.len() != 12 {
        return Err(format!("expected 12 quadratic binomials, got {}", bs.len()));
    }
    let rendered: Vec<String> = bs.iter().map(|b| b.render(&m.labels)).collect();
    let mut got: Vec<(String, String)> = rendered.iter().map(|r| binomial_key(r)).collect();
    got.sort();
    let mut want: Vec<(String, String)> = [
        "a*b - c*g", "a*c - b*d", "a*d - c*e", "a*e - d*f", "a*f - e*g", "a*g - b*f",
        "a^2 - b*e", "a^2 - d*g", "a^2 - c*f", "b*e - c*f", "b*e - d*g", "c*f - d*g",
    ]
    .iter()
    .map(|r| binomial_key(r))
    .collect();
    want.sort();
    if got != want {
        return Err(format!("binomial list mismatch: {rendered:?}"));
    }
    Ok("12 quadratic binomials match the reference list".into())
}

fn check_cusp_binomial() -> Result<String, String> {
    let m = model(CUSP_JSON);
    let bs = ideal::binomials_from_kernel(&m.exponents, 3).map_err(|e| e.to_string())?;
    let rendered: Vec<String> = bs.iter().map(|b| b.render(&m.labels)).collect();
    if rendered != ["x0*x2^2 - x1^3"] {
        return Err(format!("expected [x0*x2^2 - x1^3], got {rendered:?}"));
    }
    Ok("kernel binomial is x0*x2^2 - x1^3".into())
}

fn check_degrees() -> Result<String, String> {
    let cases: [(&str, ExponentSet, u64); 4] = [
        ("hexagon", model(HEXAGON_JSON).exponents, 6),
        ("segment-4", ExponentSet::segment_points(&[0, 1, 2, 3, 4]).unwrap(), 4),
        ("cross-polytope", model(CROSSPOLY_JSON).exponents, 4),
        (
            "triangle-3",
            ExponentSet::new(2, vec![vec![0, 0], vec![3, 0], vec![0, 3]]).unwrap(),
            9,
        ),
    ];
    let mut parts = Vec::new();
    for (name, a, want) in cases {
        let got = polytope::implicit_degree(&a).map_err(|e| format!("{name}: {e}"))?;
        if got != want {
            return Err(format!("{name}: degree {got}, expected {want}"));
        }
        parts.push(format!("{name}={got}"));
    }
    Ok(parts.join(", "))
}

/// Homogenization of `y²(x−1) + 2yx + x² + x³` by `z0` with `x = z1/z0`,
/// `y = z2/z0`.
pub fn cubic_expected() -> ImplicitForm {
    form(
        2,
        3,
        &[
            ([0, 3, 0], 1),
            ([1, 2, 0], 1),
            ([0, 1, 2], 1),
            ([1, 0, 2], -1),
            ([1, 1, 1], 2),
        ],
    )
}

/// Expansion of `(x²−y²)² − 2x²w² − 2y²w² − 16z²w² + w⁴` in `(w,x,y,z)`.
pub fn pillow_expected() -> ImplicitForm {
    form(
        3,
        4,
        &[
            ([0, 4, 0, 0], 1),
            ([0, 2, 2, 0], -2),
            ([0, 0, 4, 0], 1),
            ([2, 2, 0, 0], -2),
            ([2, 0, 2, 0], -2),
            ([2, 0, 0, 2], -16),
            ([4, 0, 0, 0], 1),
        ],
    )
}

fn form<const V: usize>(k: usize, d: u32, terms: &[([u32; V], i64)]) -> ImplicitForm {
    let mons = implicitize::monomials(k, d);
    let mut coeffs = vec![BigInt::zero(); mons.len()];
    for (exp, c) in terms {
        let i = mons
            .iter()
            .position(|m| m.as_slice() == exp.as_slice())
            .expect("valid monomial");
        coeffs[i] = BigInt::from(*c);
    }
    ImplicitForm::new(k, d, coeffs)
}

fn check_cubic_curve() -> Result<String, String> {
    let m = model(RNC3_JSON);
    let scheme = m.scheme();
    let forms =
        implicitize::implicitize(&m.exponents, &scheme, 3).map_err(|e| e.to_string())?;
    if forms.len() != 1 {
        return Err(format!("degree-3 nullspace has dimension {}", forms.len()));
    }
    if forms[0] != cubic_expected() {
        return Err("cubic form differs from the reference homogenization".into());
    }
    let fresh = implicitize::sample_points(&m.exponents, &scheme, 100, 911)
        .map_err(|e| e.to_string())?;
    let r = implicitize::residual_max(&forms[0], &fresh);
    if !r.is_zero() {
        return Err(format!("nonzero residual {r} on fresh samples"));
    }
    Ok("degree-3 form matches; exact zero on 100 fresh samples".into())
}

fn check_pillow_quartic() -> Result<String, String> {
    let m = model(PILLOW_JSON);
    let scheme = m.scheme();
    let forms =
        implicitize::implicitize(&m.exponents, &scheme, 4).map_err(|e| e.to_string())?;
    if forms.len() != 1 {
        return Err(format!("degree-4 nullspace has dimension {}", forms.len()));
    }
    if forms[0] != pillow_expected() {
        return Err("quartic differs from the reference expansion".into());
    }
    Ok("degree-4 form matches the reference expansion".into())
}

/// The six published coefficients of the 72-term sextic, on monomials in
/// `(w, x, y, z)`.
pub const SEXTIC_SPOTS: [([u32; 4], i64); 6] = [
    ([6, 0, 0, 0], 112),
    ([5, 1, 0, 0], -240),
    ([4, 1, 1, 0], 296),
    ([4, 2, 0, 0], 216),
    ([3, 1, 1, 1], -568),
    ([0, 2, 2, 2], -50),
];

fn check_hexagon_sextic() -> Result<String, String> {
    let m = model(HEXSURF_JSON);
    let scheme = m.scheme();
    let forms =
        implicitize::implicitize(&m.exponents, &scheme, 6).map_err(|e| e.to_string())?;
    if forms.len() != 1 {
        return Err(format!("degree-6 nullspace has dimension {}", forms.len()));
    }
    let f = &forms[0];
    if f.term_count() != 72 {
        return Err(format!("sextic has {} terms, expected 72", f.term_count()));
    }
    for (exp, want) in SEXTIC_SPOTS {
        let got = f.coefficient(&exp);
        if got != &BigInt::from(want) {
            return Err(format!("coefficient on {exp:?} is {got}, expected {want}"));
        }
    }
    Ok("sextic has 72 terms; all six spot coefficients match".into())
}

/// Interior grid of the bounding box of `conv(A)`, `grid × grid` cells.
pub fn interior_grid(a: &ExponentSet, grid: usize, margin: f64) -> Vec<Vec<f64>> {
    let poly = polytope::convex_hull(a).expect("full-dimensional");
    let n = a.dim();
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for v in poly.vertices() {
        for c in 0..n {
            lo[c] = lo[c].min(v[c] as f64);
            hi[c] = hi[c].max(v[c] as f64);
        }
    }
    let coord = |c: usize, i: usize| {
        lo[c] + (hi[c] - lo[c]) * (i as f64 + 1.0) / (grid as f64 + 1.0)
    };
    let mut out = Vec::new();
    if n == 1 {
        for i in 0..grid {
            let u = vec![coord(0, i)];
            if poly.contains_interior_f64(&u, margin) {
                out.push(u);
            }
        }
    } else {
        for i in 0..grid {
            for j in 0..grid {
                let u = vec![coord(0, i), coord(1, j)];
                if poly.contains_interior_f64(&u, margin) {
                    out.push(u);
                }
            }
        }
    }
    out
}

fn triangle2() -> ExponentSet {
    ExponentSet::new(
        2,
        vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1], vec![1, 1], vec![0, 2]],
    )
    .unwrap()
}

fn check_linear_precision() -> Result<String, String> {
    let tol = 1e-12;
    let mut worst_lp = 0.0f64;
    let mut worst_rt = 0.0f64;
    let mut worst_sum = 0.0f64;
    let mut points = 0usize;
    for (name, a) in [("hexagon", model(HEXAGON_JSON).exponents), ("triangle-2", triangle2())]
    {
        let weights = vec![1.0; a.len()];
        for u in interior_grid(&a, 11, 1e-6) {
            points += 1;
            let q = moment::MomentQuery::new(a.clone(), u.clone())
                .with_weights(weights.clone())
                .with_tol(tol);
            let basis = moment::moment_inverse(&q).map_err(|e| format!("{name} {u:?}: {e}"))?;
            let sum: f64 = basis.values.iter().sum();
            worst_sum = worst_sum.max((sum - 1.0).abs());
            // Σ f_m(u)·m − u
            for c in 0..a.dim() {
                let s: f64 = basis
                    .values
                    .iter()
                    .zip(a.vectors())
                    .map(|(f, m)| f * m[c] as f64)
                    .sum();
                worst_lp = worst_lp.max((s - u[c]).abs());
            }
            // α(α⁻¹(u)) round trip
            let alpha = moment::alpha_f64(&a, &basis.t);
            for c in 0..a.dim() {
                worst_rt = worst_rt.max((alpha[c] - u[c]).abs());
            }
        }
    }
    if worst_lp > 1e-10 {
        return Err(format!("linear precision residual {worst_lp:.3e} > 1e-10"));
    }
    if worst_rt > 1e-10 {
        return Err(format!("round-trip residual {worst_rt:.3e} > 1e-10"));
    }
    if worst_sum > 1e-14 {
        return Err(format!("partition-of-unity deviation {worst_sum:.3e} > 1e-14"));
    }
    Ok(format!(
        "{points} grid points: lp {worst_lp:.1e}, round-trip {worst_rt:.1e}, Σf−1 {worst_sum:.1e}"
    ))
}

fn check_moment_containment() -> Result<String, String> {
    for (name, a) in [("hexagon", model(HEXAGON_JSON).exponents), ("triangle-2", triangle2())]
    {
        let poly = polytope::convex_hull(&a).map_err(|e| e.to_string())?;
        for i in 0..500 {
            let t = implicitize::sample_parameters(a.dim(), i, 0);
            let x = patch::monomial_values(&a, &t).map_err(|e| e.to_string())?;
            let x = ProjectivePoint::new(x).map_err(|e| e.to_string())?;
            for (map, u) in [
                ("mu", moment::moment_map(&a, &x)),
                ("alpha", moment::algebraic_moment(&a, &x)),
            ] {
                for facet in poly.facets() {
                    // exact: offset − ⟨normal, u⟩ ≥ 0
                    let mut slack = BigRational::from(BigInt::from(facet.offset));
                    for (nc, uc) in facet.normal.iter().zip(&u) {
                        slack -= BigRational::from(BigInt::from(*nc)) * uc;
                    }
                    if slack.is_negative() {
                        return Err(format!(
                            "{name}: {map} image leaves the polytope at sample {i}"
                        ));
                    }
                }
            }
        }
    }
    Ok("1000 exact torus samples: μ and α images inside the polytope".into())
}

fn check_chart_identities() -> Result<String, String> {
    let m = model(PILLOW_JSON);
    let cone = m.charts.get("cone").ok_or("pillow fixture lacks cone chart")?;
    let cyl = m.charts.get("cylinder").ok_or("pillow fixture lacks cylinder chart")?;
    let cone_pts = realmesh::chart_sample(cone, 20).map_err(|e| e.to_string())?;
    for p in &cone_pts {
        if !(&p[0] * &p[1] - &p[2] * &p[2]).is_zero() {
            return Err("cone chart sample violates xy = z²".into());
        }
    }
    let cyl_pts = realmesh::chart_sample(cyl, 20).map_err(|e| e.to_string())?;
    for p in &cyl_pts {
        if !(&p[0] * &p[1] - BigRational::one()).is_zero() {
            return Err("cylinder chart sample violates xy = 1".into());
        }
    }
    Ok(format!(
        "{} cone samples satisfy xy=z², {} cylinder samples satisfy xy=1",
        cone_pts.len(),
        cyl_pts.len()
    ))
}

fn check_double_cover() -> Result<String, String> {
    let a = ExponentSet::segment_points(&[0, 2]).unwrap();
    let scheme = ControlScheme::identity(2);
    let pos = realmesh::orthant_sample(
        &a,
        &scheme,
        &realmesh::SignVector::new(vec![1]).unwrap(),
        60,
    )
    .map_err(|e| e.to_string())?;
    let neg = realmesh::orthant_sample(
        &a,
        &scheme,
        &realmesh::SignVector::new(vec![-1]).unwrap(),
        60,
    )
    .map_err(|e| e.to_string())?;
    if pos.vertices.len() != neg.vertices.len() {
        return Err("orthant images have different sizes".into());
    }
    for (p, q) in pos.vertices.iter().zip(&neg.vertices) {
        for c in 0..3 {
            if (p[c] - q[c]).abs() > 1e-12 * p[c].abs().max(1.0) {
                return Err(format!("images differ: {p:?} vs {q:?}"));
            }
        }
    }
    Ok("both orthants of t ↦ [1, t²] give the same point set".into())
}

fn check_basics() -> Result<String, String> {
    // binomial residuals on 25 torus points per fixture
    for (name, text) in
        [("hexagon", HEXAGON_JSON), ("cusp", CUSP_JSON), ("cross-polytope", CROSSPOLY_JSON)]
    {
        let a = model(text).exponents;
        let lifted = lattice::lift(&a);
        let bs = ideal::binomials_from_kernel(&a, 2).map_err(|e| e.to_string())?;
        for u in lattice::integer_kernel_basis(&lifted) {
            if !lifted.mul_vec(&u).iter().all(Zero::is_zero) {
                return Err(format!("{name}: kernel basis vector fails M·u = 0"));
            }
        }
        for i in 0..25 {
            let t = implicitize::sample_parameters(a.dim(), i, 3);
            for b in &bs {
                let r = ideal::residual_at(b, &a, &t).map_err(|e| e.to_string())?;
                if !r.is_zero() {
                    return Err(format!("{name}: binomial residual {r} at sample {i}"));
                }
            }
        }
    }
    // OBJ round trip on a pillow sheet
    let m = model(PILLOW_JSON);
    let mesh = realmesh::orthant_sample(
        &m.exponents,
        &m.scheme(),
        &realmesh::SignVector::identity(2),
        9,
    )
    .map_err(|e| e.to_string())?;
    let parsed = realmesh::parse_obj(&realmesh::export_obj(&mesh).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    if parsed.vertices != mesh.vertices || parsed.faces != mesh.faces {
        return Err("OBJ round trip not bit-exact".into());
    }
    Ok("kernel exactness, binomial residuals, OBJ round trip".into())
}

#[allow(unused)]
fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap()
}
