//! Implicit-equation recovery by exact interpolation: sample the
//! parametrization at deterministic rational points, evaluate all degree-d
//! monomials, and compute the rational nullspace of the evaluation matrix.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::ExponentSet;
use crate::linalg;
use crate::patch::{self, ControlScheme, PatchError, ProjectivePoint};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ImplicitizeError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("could not collect enough regular sample points ({got} of {need})")]
    SamplingFailed { need: usize, got: usize },
    #[error(transparent)]
    Patch(#[from] PatchError),
}

/// A homogeneous form of degree `d` in `k+1` variables with primitive
/// integer coefficients over graded-lex monomials, leading coefficient
/// positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicitForm {
    k: usize,
    d: u32,
    coeffs: Vec<BigInt>,
}

impl ImplicitForm {
    pub fn new(k: usize, d: u32, coeffs: Vec<BigInt>) -> Self {
        assert_eq!(coeffs.len(), monomials(k, d).len());
        assert!(coeffs.iter().any(|c| !c.is_zero()));
        ImplicitForm { k, d, coeffs }
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn ambient_dim(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Coefficient on the monomial with the given exponents (length `k+1`,
    /// summing to `d`).
    pub fn coefficient(&self, exponents: &[u32]) -> &BigInt {
        let mons = monomials(self.k, self.d);
        let idx = mons
            .iter()
            .position(|m| m.as_slice() == exponents)
            .expect("exponents index a degree-d monomial");
        &self.coeffs[idx]
    }

    pub fn eval(&self, z: &[BigRational]) -> BigRational {
        assert_eq!(z.len(), self.k + 1);
        let pows = power_table(z, self.d);
        monomials(self.k, self.d)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| {
                let mut term = BigRational::from(c.clone());
                for (v, &e) in m.iter().enumerate() {
                    if e > 0 {
                        term *= &pows[v][e as usize];
                    }
                }
                term
            })
            .sum()
    }

    pub fn eval_f64(&self, z: &[f64]) -> f64 {
        assert_eq!(z.len(), self.k + 1);
        monomials(self.k, self.d)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| {
                let mut term = c.to_f64().unwrap_or(f64::NAN);
                for (v, &e) in m.iter().enumerate() {
                    term *= z[v].powi(e as i32);
                }
                term
            })
            .sum()
    }

    /// Render with variable labels, sparse terms in graded-lex order.
    pub fn render(&self, labels: &[String]) -> String {
        let mons = monomials(self.k, self.d);
        let mut out = String::new();
        for (m, c) in mons.iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut mono = String::new();
            for (v, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                if e == 1 {
                    mono.push_str(&labels[v]);
                } else {
                    mono.push_str(&format!("{}^{}", labels[v], e));
                }
            }
            if mono.is_empty() {
                mono.push('1');
            }
            if out.is_empty() {
                if c.is_negative() {
                    out.push_str("- ");
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.abs();
            if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

fn power_table(z: &[BigRational], d: u32) -> Vec<Vec<BigRational>> {
    z.iter()
        .map(|zi| {
            let mut row = vec![BigRational::one()];
            for _ in 0..d {
                row.push(row.last().unwrap() * zi);
            }
            row
        })
        .collect()
}

/// All exponent tuples of degree `d` in `k+1` variables, graded-lex
/// (lexicographically descending; the pure power of the first variable
/// comes first).
pub fn monomials(k: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k + 1];
    fn rec(vars_left: usize, rem: u32, cur: &mut Vec<u32>, pos: usize, out: &mut Vec<Vec<u32>>) {
        if vars_left == 1 {
            cur[pos] = rem;
            out.push(cur.clone());
            return;
        }
        for e in (0..=rem).rev() {
            cur[pos] = e;
            rec(vars_left - 1, rem - e, cur, pos + 1, out);
        }
    }
    rec(k + 1, d, &mut cur, 0, &mut out);
    out
}

/// `index`-th integer tuple of length `n`, graded by coordinate sum. Walking
/// the grades fills an `n`-dimensional grid, so samples built from the
/// tuples never collapse onto a lower-dimensional family.
fn graded_tuple(n: usize, mut index: usize) -> Vec<u32> {
    for d in 0.. {
        let grade = monomials(n - 1, d);
        if index < grade.len() {
            return grade[index].clone();
        }
        index -= grade.len();
    }
    unreachable!()
}

/// Deterministic rational parameter points: coordinates are values of the
/// injective sequence `j ↦ (2j+3)/(j+2)` at graded-tuple indices.
pub fn sample_parameters(n: usize, index: usize, offset: usize) -> Vec<BigRational> {
    graded_tuple(n, index)
        .iter()
        .map(|&a| {
            let j = (offset + a as usize) as i64;
            BigRational::new(BigInt::from(2 * j + 3), BigInt::from(j + 2))
        })
        .collect()
}

/// Exact projective samples of the projected parametrization, skipping any
/// parameter where the projection degenerates.
pub fn sample_points(
    a: &ExponentSet,
    scheme: &ControlScheme,
    count: usize,
    offset: usize,
) -> Result<Vec<ProjectivePoint>, ImplicitizeError> {
    let mut pts = Vec::with_capacity(count);
    let mut index = 0;
    let budget = count * 4 + 32;
    while pts.len() < count && index < budget {
        let t = sample_parameters(a.dim(), index, offset);
        index += 1;
        let Ok(values) = patch::monomial_values(a, &t) else {
            continue;
        };
        let Ok(z) = patch::project_vector(&values, scheme) else {
            continue;
        };
        if z.iter().all(Zero::is_zero) {
            continue;
        }
        pts.push(ProjectivePoint::new(z).expect("nonzero"));
    }
    if pts.len() < count {
        return Err(ImplicitizeError::SamplingFailed { need: count, got: pts.len() });
    }
    Ok(pts)
}

/// Basis of the degree-`d` forms vanishing on the image of the projected
/// parametrization; empty when the degree is too small.
pub fn implicitize(
    a: &ExponentSet,
    scheme: &ControlScheme,
    d: u32,
) -> Result<Vec<ImplicitForm>, ImplicitizeError> {
    implicitize_with_offset(a, scheme, d, 0)
}

pub fn implicitize_with_offset(
    a: &ExponentSet,
    scheme: &ControlScheme,
    d: u32,
    offset: usize,
) -> Result<Vec<ImplicitForm>, ImplicitizeError> {
    if d == 0 {
        return Err(ImplicitizeError::ZeroDegree);
    }
    let k = scheme.target_dim();
    let mons = monomials(k, d);
    let cols = mons.len();
    let samples = sample_points(a, scheme, cols + 10, offset)?;
    let rows: Vec<Vec<BigRational>> = samples
        .iter()
        .map(|p| {
            let pows = power_table(p.coords(), d);
            mons.iter()
                .map(|m| {
                    let mut v = BigRational::one();
                    for (var, &e) in m.iter().enumerate() {
                        if e > 0 {
                            v *= &pows[var][e as usize];
                        }
                    }
                    v
                })
                .collect()
        })
        .collect();
    let basis = linalg::rational_nullspace(&rows, cols);
    Ok(basis
        .into_iter()
        .map(|coeffs| ImplicitForm::new(k, d, coeffs))
        .collect())
}

/// Search for the smallest degree `≤ d_max` admitting a vanishing form.
pub struct DegreeSearch {
    pub d_found: Option<u32>,
    pub forms: Vec<ImplicitForm>,
    /// Normalized-volume degree bound for the exponent set.
    pub degree_bound: u64,
}

impl DegreeSearch {
    pub fn degree_dropped(&self) -> bool {
        self.d_found.is_some_and(|d| (d as u64) < self.degree_bound)
    }
}

pub fn degree_search(
    a: &ExponentSet,
    scheme: &ControlScheme,
    d_max: u32,
) -> Result<DegreeSearch, ImplicitizeError> {
    let degree_bound = crate::polytope::implicit_degree(a).unwrap_or(0);
    for d in 1..=d_max {
        let forms = implicitize(a, scheme, d)?;
        if !forms.is_empty() {
            return Ok(DegreeSearch { d_found: Some(d), forms, degree_bound });
        }
    }
    Ok(DegreeSearch { d_found: None, forms: Vec::new(), degree_bound })
}

/// Exact maximum absolute residual of a form over a set of rational points.
pub fn residual_max(form: &ImplicitForm, points: &[ProjectivePoint]) -> BigRational {
    points
        .iter()
        .map(|p| form.eval(p.coords()).abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

pub fn residual_max_f64(form: &ImplicitForm, points: &[Vec<f64>]) -> f64 {
    points
        .iter()
        .map(|p| form.eval_f64(p).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    fn cubic_curve() -> (ExponentSet, ControlScheme) {
        (
            ExponentSet::segment_points(&[0, 1, 2, 3]).unwrap(),
            ControlScheme::new(vec![
                rv(&[1, -1, -1]),
                rv(&[1, -3, -1]),
                rv(&[1, -1, 3]),
                rv(&[1, 1, -1]),
            ])
            .unwrap(),
        )
    }

    fn pillow() -> (ExponentSet, ControlScheme) {
        (
            ExponentSet::new(
                2,
                vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1], vec![0, 0]],
            )
            .unwrap(),
            ControlScheme::new(vec![
                rv(&[1, 1, 0, 0]),
                rv(&[1, -1, 0, 0]),
                rv(&[1, 0, 1, 0]),
                rv(&[1, 0, -1, 0]),
                rv(&[0, 0, 0, 1]),
            ])
            .unwrap(),
        )
    }

    #[test]
    fn monomial_order_graded_lex() {
        let m = monomials(2, 2);
        assert_eq!(
            m,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2],
            ]
        );
        assert_eq!(monomials(3, 6).len(), 84);
    }

    /// Independent oracle: homogenize y²(x−1) + 2yx + x² + x³ with
    /// x = z1/z0, y = z2/z0 by clearing z0³.
    fn cubic_expected() -> ImplicitForm {
        let mons = monomials(2, 3);
        let mut coeffs = vec![BigInt::zero(); mons.len()];
        let mut set = |exp: [u32; 3], c: i64| {
            let i = mons.iter().position(|m| m.as_slice() == exp).unwrap();
            coeffs[i] = BigInt::from(c);
        };
        set([0, 3, 0], 1); // x³ -> z1³
        set([1, 2, 0], 1); // x² -> z0 z1²
        set([0, 1, 2], 1); // y²x -> z1 z2²
        set([1, 0, 2], -1); // −y² -> −z0 z2²
        set([1, 1, 1], 2); // 2yx -> 2 z0 z1 z2
        ImplicitForm::new(2, 3, coeffs)
    }

    #[test]
    fn cubic_curve_implicitization() {
        let (a, scheme) = cubic_curve();
        let forms = implicitize(&a, &scheme, 3).unwrap();
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0], cubic_expected());
        let fresh = sample_points(&a, &scheme, 100, 500).unwrap();
        assert!(residual_max(&forms[0], &fresh).is_zero());
    }

    /// Independent oracle: expansion of (x²−y²)² − 2x²w² − 2y²w² − 16z²w² + w⁴
    /// in the variable order (w, x, y, z).
    fn pillow_expected() -> ImplicitForm {
        let mons = monomials(3, 4);
        let mut coeffs = vec![BigInt::zero(); mons.len()];
        let mut set = |exp: [u32; 4], c: i64| {
            let i = mons.iter().position(|m| m.as_slice() == exp).unwrap();
            coeffs[i] = BigInt::from(c);
        };
        set([0, 4, 0, 0], 1);
        set([0, 2, 2, 0], -2);
        set([0, 0, 4, 0], 1);
        set([2, 2, 0, 0], -2);
        set([2, 0, 2, 0], -2);
        set([2, 0, 0, 2], -16);
        set([4, 0, 0, 0], 1);
        ImplicitForm::new(3, 4, coeffs)
    }

    #[test]
    fn pillow_implicitization() {
        let (a, scheme) = pillow();
        let forms = implicitize(&a, &scheme, 4).unwrap();
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0], pillow_expected());
        let fresh = sample_points(&a, &scheme, 50, 777).unwrap();
        assert!(residual_max(&forms[0], &fresh).is_zero());
    }

    #[test]
    fn pillow_rejects_perturbed_point() {
        let (a, scheme) = pillow();
        let forms = implicitize(&a, &scheme, 4).unwrap();
        let mut p = sample_points(&a, &scheme, 1, 0).unwrap()[0].coords().to_vec();
        p[1] += rat(1, 3);
        let r = forms[0].eval(&p);
        assert!(!r.is_zero());
    }

    #[test]
    fn cusp_degree_search() {
        let a = ExponentSet::segment_points(&[0, 2, 3]).unwrap();
        let scheme = ControlScheme::identity(3);
        let search = degree_search(&a, &scheme, 4).unwrap();
        assert_eq!(search.d_found, Some(3));
        assert_eq!(search.degree_bound, 3);
        assert!(!search.degree_dropped());
        // x0 x2² − x1³
        let mons = monomials(2, 3);
        let mut coeffs = vec![BigInt::zero(); mons.len()];
        let i1 = mons.iter().position(|m| m.as_slice() == [1, 0, 2]).unwrap();
        let i2 = mons.iter().position(|m| m.as_slice() == [0, 3, 0]).unwrap();
        coeffs[i1] = BigInt::one();
        coeffs[i2] = BigInt::from(-1);
        assert_eq!(search.forms, vec![ImplicitForm::new(2, 3, coeffs)]);
    }

    #[test]
    fn double_cover_has_no_hypersurface_form() {
        // forget the middle coordinate of the parabola: image is all of ℙ¹
        let a = ExponentSet::segment_points(&[0, 1, 2]).unwrap();
        let scheme =
            ControlScheme::new(vec![rv(&[1, 0]), rv(&[0, 0]), rv(&[0, 1])]).unwrap();
        let search = degree_search(&a, &scheme, 3).unwrap();
        assert_eq!(search.d_found, None);
        assert!(search.forms.is_empty());
    }

    #[test]
    fn quartic_plane_curve_degree_search() {
        let a = ExponentSet::segment_points(&[0, 1, 2, 3, 4]).unwrap();
        let scheme = ControlScheme::new(vec![
            rv(&[-10, -10, 80]),
            rv(&[-7, 7, 0]),
            rv(&[9, 9, -11]),
            rv(&[7, -7, 0]),
            rv(&[1, 1, 3]),
        ])
        .unwrap();
        let search = degree_search(&a, &scheme, 4).unwrap();
        assert_eq!(search.d_found, Some(4));
        assert_eq!(search.degree_bound, 4);
        assert_eq!(search.forms.len(), 1);
    }

    #[test]
    fn forms_independent_of_sample_offset() {
        let (a, scheme) = cubic_curve();
        let f0 = implicitize_with_offset(&a, &scheme, 3, 0).unwrap();
        let f1 = implicitize_with_offset(&a, &scheme, 3, 1000).unwrap();
        assert_eq!(f0, f1);
    }

    #[test]
    fn low_degree_returns_empty() {
        let (a, scheme) = cubic_curve();
        assert!(implicitize(&a, &scheme, 2).unwrap().is_empty());
        assert!(matches!(
            implicitize(&a, &scheme, 0),
            Err(ImplicitizeError::ZeroDegree)
        ));
    }
}
