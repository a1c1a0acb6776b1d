//! Acceptance gate: one test per criterion, each printing a single
//! PASS line with its measured value, with pinned tolerances and
//! runtime budgets.

use std::process::Command;
use std::time::{Duration, Instant};

use num::{BigInt, BigRational, One, Signed, Zero};
use toric_cli::model::Model;
use toric_cli::verify::{
    self, cubic_expected, interior_grid, pillow_expected, SEXTIC_SPOTS,
};
use toric_core::{
    ideal, implicitize, lattice, moment, patch, polytope, realmesh, ControlScheme, ExponentSet,
    ProjectivePoint,
};

fn hexagon() -> ExponentSet {
    Model::parse(verify::HEXAGON_JSON).unwrap().exponents
}

fn triangle2() -> ExponentSet {
    ExponentSet::new(
        2,
        vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1], vec![1, 1], vec![0, 2]],
    )
    .unwrap()
}

fn budget(start: Instant, limit: Duration, what: &str) -> Duration {
    let took = start.elapsed();
    assert!(took < limit, "{what} took {took:?}, budget {limit:?}");
    took
}

#[test]
fn criterion_01_hexagon_ideal_via_binary() {
    let start = Instant::now();
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/hexagon.json");
    let output = Command::new(env!("CARGO_BIN_EXE_toric"))
        .args(["ideal", fixture, "--quadratic", "--json"])
        .output()
        .expect("binary runs");
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let v: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    let binomials: Vec<String> = v["binomials"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b.as_str().unwrap().to_string())
        .collect();
    assert_eq!(v["count"], 12);
    assert_eq!(binomials.len(), 12);
    let key = |s: &str| {
        let (p, m) = s.split_once(" - ").unwrap();
        let sort = |x: &str| {
            let mut f: Vec<&str> = x.split('*').collect();
            f.sort();
            f.join("*")
        };
        (sort(p), sort(m))
    };
    let mut got: Vec<_> = binomials.iter().map(|b| key(b)).collect();
    got.sort();
    let mut want: Vec<_> = [
        "a*b - c*g", "a*c - b*d", "a*d - c*e", "a*e - d*f", "a*f - e*g", "a*g - b*f",
        "a^2 - b*e", "a^2 - d*g", "a^2 - c*f", "b*e - c*f", "b*e - d*g", "c*f - d*g",
    ]
    .iter()
    .map(|b| key(b))
    .collect();
    want.sort();
    assert_eq!(got, want);
    let took = budget(start, Duration::from_secs(1), "hexagon ideal");
    println!("PASS criterion 1: hexagon ideal emits the 12 quadratic binomials ({took:?})");
}

#[test]
fn criterion_02_cuspidal_cubic() {
    let a = ExponentSet::segment_points(&[0, 2, 3]).unwrap();
    let bs = ideal::binomials_from_kernel(&a, 3).unwrap();
    let rendered: Vec<String> = bs.iter().map(|b| b.render(&ideal::default_labels(3))).collect();
    assert_eq!(rendered, ["x0*x2^2 - x1^3"]);
    println!("PASS criterion 2: cusp kernel binomials are exactly x0*x2^2 - x1^3");
}

#[test]
fn criterion_03_degrees() {
    let start = Instant::now();
    let cases: [(&str, ExponentSet, u64); 4] = [
        ("hexagon", hexagon(), 6),
        ("segment-4", ExponentSet::segment_points(&[0, 1, 2, 3, 4]).unwrap(), 4),
        (
            "cross-polytope",
            Model::parse(verify::CROSSPOLY_JSON).unwrap().exponents,
            4,
        ),
        (
            "triangle-3",
            ExponentSet::new(2, vec![vec![0, 0], vec![3, 0], vec![0, 3]]).unwrap(),
            9,
        ),
    ];
    for (name, a, want) in cases {
        assert_eq!(polytope::implicit_degree(&a).unwrap(), want, "{name}");
    }
    let took = budget(start, Duration::from_secs(1), "degrees");
    println!("PASS criterion 3: degrees 6, 4, 4, 9 exact ({took:?})");
}

#[test]
fn criterion_04_cubic_curve_implicitization() {
    let start = Instant::now();
    let m = Model::parse(verify::RNC3_JSON).unwrap();
    let scheme = m.scheme();
    let forms = implicitize::implicitize(&m.exponents, &scheme, 3).unwrap();
    assert_eq!(forms.len(), 1, "degree-3 nullspace must be 1-dimensional");
    assert_eq!(forms[0], cubic_expected());
    let fresh = implicitize::sample_points(&m.exponents, &scheme, 100, 1234).unwrap();
    let r = implicitize::residual_max(&forms[0], &fresh);
    assert!(r.is_zero(), "residual {r}");
    let took = budget(start, Duration::from_secs(5), "cubic curve");
    println!("PASS criterion 4: cubic form matches, exact 0 on 100 fresh samples ({took:?})");
}

#[test]
fn criterion_05_double_pillow() {
    let start = Instant::now();
    let m = Model::parse(verify::PILLOW_JSON).unwrap();
    let forms = implicitize::implicitize(&m.exponents, &m.scheme(), 4).unwrap();
    assert_eq!(forms.len(), 1, "degree-4 nullspace must be 1-dimensional");
    assert_eq!(forms[0], pillow_expected());
    let took = budget(start, Duration::from_secs(5), "double pillow");
    println!("PASS criterion 5: pillow quartic matches the reference expansion ({took:?})");
}

#[test]
fn criterion_06_hexagon_sextic() {
    let start = Instant::now();
    let m = Model::parse(verify::HEXSURF_JSON).unwrap();
    let forms = implicitize::implicitize(&m.exponents, &m.scheme(), 6).unwrap();
    assert_eq!(forms.len(), 1, "degree-6 nullspace must be 1-dimensional");
    let f = &forms[0];
    assert_eq!(f.term_count(), 72);
    for (exp, want) in SEXTIC_SPOTS {
        assert_eq!(f.coefficient(&exp), &BigInt::from(want), "monomial {exp:?}");
    }
    let took = budget(start, Duration::from_secs(60), "hexagon sextic");
    println!("PASS criterion 6: sextic has 72 terms with matching spot coefficients ({took:?})");
}

#[test]
fn criterion_07_linear_precision() {
    let start = Instant::now();
    let tol = 1e-12;
    let mut worst_lp = 0.0f64;
    let mut worst_rt = 0.0f64;
    let mut worst_sum = 0.0f64;
    for a in [hexagon(), triangle2()] {
        for u in interior_grid(&a, 11, 1e-6) {
            let q = moment::MomentQuery::new(a.clone(), u.clone())
                .with_weights(vec![1.0; a.len()])
                .with_tol(tol);
            let basis = moment::moment_inverse(&q).unwrap();
            let sum: f64 = basis.values.iter().sum();
            worst_sum = worst_sum.max((sum - 1.0).abs());
            for c in 0..a.dim() {
                let s: f64 = basis
                    .values
                    .iter()
                    .zip(a.vectors())
                    .map(|(f, m)| f * m[c] as f64)
                    .sum();
                worst_lp = worst_lp.max((s - u[c]).abs());
            }
            let alpha = moment::alpha_f64(&a, &basis.t);
            for c in 0..a.dim() {
                worst_rt = worst_rt.max((alpha[c] - u[c]).abs());
            }
        }
    }
    assert!(worst_lp <= 1e-10, "linear precision residual {worst_lp:.3e}");
    assert!(worst_rt <= 1e-12, "round trip residual {worst_rt:.3e}");
    assert!(worst_sum <= 1e-14, "partition of unity deviation {worst_sum:.3e}");
    let took = budget(start, Duration::from_secs(5), "linear precision");
    println!(
        "PASS criterion 7: linear precision {worst_lp:.1e}, round trip {worst_rt:.1e}, \
         partition {worst_sum:.1e} ({took:?})"
    );
}

#[test]
fn criterion_08_moment_image_containment() {
    for a in [hexagon(), triangle2()] {
        let poly = polytope::convex_hull(&a).unwrap();
        for i in 0..500 {
            let t = implicitize::sample_parameters(a.dim(), i, 0);
            let x = ProjectivePoint::new(patch::monomial_values(&a, &t).unwrap()).unwrap();
            for u in [moment::moment_map(&a, &x), moment::algebraic_moment(&a, &x)] {
                for facet in poly.facets() {
                    let mut slack = BigRational::from(BigInt::from(facet.offset));
                    for (nc, uc) in facet.normal.iter().zip(&u) {
                        slack -= BigRational::from(BigInt::from(*nc)) * uc;
                    }
                    // exact check, stronger than the 1e-12 budget
                    assert!(!slack.is_negative(), "sample {i} leaves the polytope");
                }
            }
        }
    }
    println!("PASS criterion 8: 1000 torus samples, μ and α images inside the polytope exactly");
}

#[test]
fn criterion_09_chart_identities() {
    let samples = realmesh::chart_sample(&[vec![1, -1], vec![1, 1], vec![1, 0]], 20).unwrap();
    assert_eq!(samples.len(), 400);
    for p in &samples {
        assert!((&p[0] * &p[1] - &p[2] * &p[2]).is_zero());
    }
    let samples = realmesh::chart_sample(&[vec![1, -1], vec![-1, 1], vec![1, 0]], 20).unwrap();
    assert_eq!(samples.len(), 400);
    for p in &samples {
        assert!((&p[0] * &p[1] - BigRational::one()).is_zero());
    }
    println!("PASS criterion 9: cone chart satisfies xy=z², cylinder chart xy=1, exact on 20×20");
}

#[test]
fn criterion_10_parabola_double_cover() {
    let a = ExponentSet::segment_points(&[0, 2]).unwrap();
    let scheme = ControlScheme::identity(2);
    let pos = realmesh::orthant_sample(
        &a,
        &scheme,
        &realmesh::SignVector::new(vec![1]).unwrap(),
        60,
    )
    .unwrap();
    let neg = realmesh::orthant_sample(
        &a,
        &scheme,
        &realmesh::SignVector::new(vec![-1]).unwrap(),
        60,
    )
    .unwrap();
    assert_eq!(pos.vertices.len(), neg.vertices.len());
    for (p, q) in pos.vertices.iter().zip(&neg.vertices) {
        for c in 0..3 {
            assert!((p[c] - q[c]).abs() <= 1e-12 * p[c].abs().max(1.0));
        }
    }
    println!("PASS criterion 10: ε=(1) and ε=(−1) images of t ↦ [1, t²] coincide within 1e-12");
}

#[test]
fn criterion_11_property_suites() {
    // kernel exactness and pos/neg split round trip over the fixtures
    for text in [verify::HEXAGON_JSON, verify::CUSP_JSON, verify::CROSSPOLY_JSON] {
        let a = Model::parse(text).unwrap().exponents;
        let lifted = lattice::lift(&a);
        for u in lattice::integer_kernel_basis(&lifted) {
            assert!(lifted.mul_vec(&u).iter().all(Zero::is_zero));
            let (plus, minus) = lattice::pos_neg_split(&u);
            for i in 0..u.len() {
                assert!(!plus[i].is_negative() && !minus[i].is_negative());
                assert_eq!(&plus[i] - &minus[i], u[i]);
            }
        }
        // binomial residuals on 25 torus points
        let bs = ideal::binomials_from_kernel(&a, 2).unwrap();
        for i in 0..25 {
            let t = implicitize::sample_parameters(a.dim(), i, 7);
            for b in &bs {
                assert!(ideal::residual_at(b, &a, &t).unwrap().is_zero());
            }
        }
    }
    // OBJ round trip bit-exactness
    let m = Model::parse(verify::PILLOW_JSON).unwrap();
    let mesh = realmesh::orthant_sample(
        &m.exponents,
        &m.scheme(),
        &realmesh::SignVector::identity(2),
        9,
    )
    .unwrap();
    let parsed =
        realmesh::parse_obj(&realmesh::export_obj(&mesh).unwrap()).unwrap();
    assert_eq!(parsed.vertices, mesh.vertices);
    assert_eq!(parsed.faces, mesh.faces);
    println!("PASS criterion 11: kernel exactness, split round trip, residuals, OBJ round trip");
}
