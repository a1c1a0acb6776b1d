//! Monomial parametrizations and their composition with linear projections:
//! toric Bézier patches, rational curves and surfaces, and the gcd basepoint
//! test for curves.

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::ideal::rational_pow;
use crate::lattice::ExponentSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatchError {
    #[error("torus point has a zero coordinate at index {0}")]
    ZeroCoordinate(usize),
    #[error("point length {0} does not match scheme length {1}")]
    LengthMismatch(usize, usize),
    #[error("projection hit a basepoint (all coordinates vanish)")]
    BasepointHit,
    #[error("projected point lies at infinity (leading coordinate vanishes)")]
    AtInfinity,
    #[error("control scheme must contain at least one nonzero vector")]
    DegenerateScheme,
    #[error("control scheme vectors have inconsistent lengths")]
    RaggedScheme,
    #[error("weights must be strictly positive")]
    NonPositiveWeight,
}

/// A point of projective space with exact rational coordinates; equality is
/// up to a nonzero scalar.
#[derive(Debug, Clone)]
pub struct ProjectivePoint {
    coords: Vec<BigRational>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self, PatchError> {
        if coords.iter().all(Zero::is_zero) {
            return Err(PatchError::BasepointHit);
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Divide through by the first nonzero coordinate.
    pub fn normalized(&self) -> ProjectivePoint {
        let pivot = self
            .coords
            .iter()
            .find(|c| !c.is_zero())
            .expect("projective point is nonzero")
            .clone();
        ProjectivePoint {
            coords: self.coords.iter().map(|c| c / &pivot).collect(),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num::ToPrimitive;
        self.coords
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        self.coords.len() == other.coords.len()
            && self.normalized().coords == other.normalized().coords
    }
}

impl Eq for ProjectivePoint {}

/// The vectors `p_i ∈ ℚ^{1+k}` of a linear projection, one per element of
/// the paired exponent set. Columns of the projection matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlScheme {
    points: Vec<Vec<BigRational>>,
}

impl ControlScheme {
    pub fn new(points: Vec<Vec<BigRational>>) -> Result<Self, PatchError> {
        let Some(first) = points.first() else {
            return Err(PatchError::DegenerateScheme);
        };
        let len = first.len();
        if points.iter().any(|p| p.len() != len) {
            return Err(PatchError::RaggedScheme);
        }
        if points.iter().all(|p| p.iter().all(Zero::is_zero)) {
            return Err(PatchError::DegenerateScheme);
        }
        Ok(ControlScheme { points })
    }

    /// Build from weights and affine control points: `p_i = w_i · (1, b_i)`.
    pub fn from_weighted(
        weights: &[BigRational],
        control_points: &[Vec<BigRational>],
    ) -> Result<Self, PatchError> {
        if weights.len() != control_points.len() {
            return Err(PatchError::LengthMismatch(weights.len(), control_points.len()));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(PatchError::NonPositiveWeight);
        }
        let points = weights
            .iter()
            .zip(control_points)
            .map(|(w, b)| {
                let mut p = vec![w.clone()];
                p.extend(b.iter().map(|c| w * c));
                p
            })
            .collect();
        Self::new(points)
    }

    /// Identity scheme on `1+ℓ` coordinates.
    pub fn identity(len: usize) -> Self {
        let points = (0..len)
            .map(|i| {
                (0..len)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        ControlScheme { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Ambient projective dimension `k` of the image.
    pub fn target_dim(&self) -> usize {
        self.points[0].len() - 1
    }

    pub fn points(&self) -> &[Vec<BigRational>] {
        &self.points
    }
}

/// The monomial coordinates `(t^{m_0}, …, t^{m_ℓ})` as plain rationals.
pub fn monomial_values(
    a: &ExponentSet,
    t: &[BigRational],
) -> Result<Vec<BigRational>, PatchError> {
    if t.len() != a.dim() {
        return Err(PatchError::LengthMismatch(t.len(), a.dim()));
    }
    if let Some(i) = t.iter().position(Zero::is_zero) {
        return Err(PatchError::ZeroCoordinate(i));
    }
    Ok(a.vectors()
        .iter()
        .map(|m| {
            m.iter()
                .zip(t)
                .map(|(&e, ti)| rational_pow(ti, &BigInt::from(e)))
                .product()
        })
        .collect())
}

/// `φ_𝒜(t) = [t^{m_0}, …, t^{m_ℓ}] ∈ ℙ^ℓ` for a rational torus point
/// (negative coordinates allowed).
pub fn monomial_param(a: &ExponentSet, t: &[BigRational]) -> Result<ProjectivePoint, PatchError> {
    ProjectivePoint::new(monomial_values(a, t)?)
}

/// Float-mode monomial coordinates for sampling paths.
pub fn monomial_values_f64(a: &ExponentSet, t: &[f64]) -> Result<Vec<f64>, PatchError> {
    if t.len() != a.dim() {
        return Err(PatchError::LengthMismatch(t.len(), a.dim()));
    }
    if let Some(i) = t.iter().position(|x| *x == 0.0) {
        return Err(PatchError::ZeroCoordinate(i));
    }
    Ok(a.vectors()
        .iter()
        .map(|m| {
            m.iter()
                .zip(t)
                .map(|(&e, &ti)| ti.powi(e as i32))
                .product()
        })
        .collect())
}

/// Apply the linear projection: `x ↦ Σ x_i p_i ∈ ℙ^k`.
pub fn project(x: &ProjectivePoint, scheme: &ControlScheme) -> Result<ProjectivePoint, PatchError> {
    let v = project_vector(x.coords(), scheme)?;
    ProjectivePoint::new(v)
}

/// The raw linear image `Σ x_i p_i` without projectivization.
pub fn project_vector(
    x: &[BigRational],
    scheme: &ControlScheme,
) -> Result<Vec<BigRational>, PatchError> {
    if x.len() != scheme.len() {
        return Err(PatchError::LengthMismatch(x.len(), scheme.len()));
    }
    let k1 = scheme.points[0].len();
    let mut out = vec![BigRational::zero(); k1];
    for (xi, p) in x.iter().zip(&scheme.points) {
        if xi.is_zero() {
            continue;
        }
        for (o, pj) in out.iter_mut().zip(p) {
            *o += xi * pj;
        }
    }
    Ok(out)
}

pub fn project_vector_f64(x: &[f64], scheme: &ControlScheme) -> Result<Vec<f64>, PatchError> {
    use num::ToPrimitive;
    if x.len() != scheme.len() {
        return Err(PatchError::LengthMismatch(x.len(), scheme.len()));
    }
    let k1 = scheme.points[0].len();
    let mut out = vec![0.0; k1];
    for (xi, p) in x.iter().zip(&scheme.points) {
        for (o, pj) in out.iter_mut().zip(p) {
            *o += xi * pj.to_f64().unwrap_or(f64::NAN);
        }
    }
    Ok(out)
}

/// Evaluate the composed patch map at a rational torus point and
/// dehomogenize into the principal affine chart.
pub fn patch_eval(
    a: &ExponentSet,
    scheme: &ControlScheme,
    t: &[BigRational],
) -> Result<Vec<BigRational>, PatchError> {
    let x = monomial_values(a, t)?;
    let z = project_vector(&x, scheme)?;
    dehomogenize(&z)
}

pub fn dehomogenize(z: &[BigRational]) -> Result<Vec<BigRational>, PatchError> {
    if z.iter().all(Zero::is_zero) {
        return Err(PatchError::BasepointHit);
    }
    if z[0].is_zero() {
        return Err(PatchError::AtInfinity);
    }
    Ok(z[1..].iter().map(|c| c / &z[0]).collect())
}

/// Float-mode patch evaluation for meshing.
pub fn patch_eval_f64(
    a: &ExponentSet,
    scheme: &ControlScheme,
    t: &[f64],
) -> Result<Vec<f64>, PatchError> {
    let x = monomial_values_f64(a, t)?;
    let z = project_vector_f64(&x, scheme)?;
    if z.iter().all(|c| *c == 0.0) {
        return Err(PatchError::BasepointHit);
    }
    if z[0] == 0.0 {
        return Err(PatchError::AtInfinity);
    }
    Ok(z[1..].iter().map(|c| c / z[0]).collect())
}

/// Basepoint report for a projected rational curve (`n = 1`): the gcd of the
/// homogeneous component polynomials in `(s, t)` and the resulting degree
/// drop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasepointReport {
    /// Parametrization degree `max(A) − min(A)`.
    pub degree: usize,
    /// Coefficients (ascending in `t`) of the gcd of the dehomogenized
    /// components, monic; trailing `t^b` and `s^a` factors included in
    /// `common_t_power` / `common_s_power`.
    pub gcd: Vec<BigRational>,
    pub common_s_power: usize,
    pub common_t_power: usize,
    /// Degree of the reduced (basepoint-free) parametrization.
    pub reduced_degree: usize,
}

impl BasepointReport {
    pub fn has_basepoints(&self) -> bool {
        self.reduced_degree < self.degree
    }
}

/// Compute the gcd of the `1+k` homogeneous components of the projected
/// curve parametrization; a nontrivial gcd means the projection has
/// basepoints.
pub fn curve_basepoints(
    a: &ExponentSet,
    scheme: &ControlScheme,
) -> Result<BasepointReport, PatchError> {
    assert_eq!(a.dim(), 1, "curve basepoint test requires n = 1");
    if a.len() != scheme.len() {
        return Err(PatchError::LengthMismatch(a.len(), scheme.len()));
    }
    let exps: Vec<i64> = a.vectors().iter().map(|v| v[0]).collect();
    let lo = *exps.iter().min().unwrap();
    let hi = *exps.iter().max().unwrap();
    let degree = (hi - lo) as usize;
    // component j has coefficient p_i[j] on t^{m_i - lo} s^{hi - m_i}
    let k1 = scheme.points[0].len();
    let mut comps: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); degree + 1]; k1];
    for (i, &m) in exps.iter().enumerate() {
        let d = (m - lo) as usize;
        for j in 0..k1 {
            comps[j][d] += &scheme.points[i][j];
        }
    }
    let comps: Vec<Vec<BigRational>> = comps
        .into_iter()
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    if comps.is_empty() {
        return Err(PatchError::DegenerateScheme);
    }
    let common_t_power = comps
        .iter()
        .map(|c| c.iter().position(|x| !x.is_zero()).unwrap())
        .min()
        .unwrap();
    let common_s_power = comps
        .iter()
        .map(|c| degree - c.iter().rposition(|x| !x.is_zero()).unwrap())
        .min()
        .unwrap();
    let mut g: Vec<BigRational> = Vec::new();
    for c in &comps {
        let trimmed: Vec<BigRational> =
            c[common_t_power..=degree - common_s_power].to_vec();
        g = poly_gcd(&g, &trimmed);
    }
    let gcd_deg = g.len().saturating_sub(1);
    let reduced_degree = degree - gcd_deg - common_s_power - common_t_power;
    Ok(BasepointReport {
        degree,
        gcd: g,
        common_s_power,
        common_t_power,
        reduced_degree,
    })
}

/// Monic univariate gcd over ℚ; the empty polynomial acts as zero.
fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }
    fn rem(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
        let mut r = num.to_vec();
        let dd = den.len() - 1;
        let lead = den.last().unwrap();
        while r.len() >= den.len() {
            let shift = r.len() - den.len();
            let f = r.last().unwrap() / lead;
            for i in 0..=dd {
                let t = &r[shift + i] - &f * &den[i];
                r[shift + i] = t;
            }
            r = trim(r);
            if r.is_empty() {
                break;
            }
        }
        r
    }
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        return a;
    }
    let lead = a.last().unwrap().clone();
    a.iter().map(|c| c / &lead).collect()
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

    fn hexagon_points() -> ExponentSet {
        ExponentSet::new(
            2,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![1, 1],
                vec![0, 1],
                vec![-1, 0],
                vec![-1, -1],
                vec![0, -1],
            ],
        )
        .unwrap()
    }

    fn cubic_scheme() -> ControlScheme {
        ControlScheme::new(vec![
            rv(&[1, -1, -1]),
            rv(&[1, -3, -1]),
            rv(&[1, -1, 3]),
            rv(&[1, 1, -1]),
        ])
        .unwrap()
    }

    #[test]
    fn rational_normal_curve() {
        let a = ExponentSet::segment_points(&[0, 1, 2, 3]).unwrap();
        let p = monomial_param(&a, &[rat(2, 1)]).unwrap();
        assert_eq!(p.coords(), rv(&[1, 2, 4, 8]).as_slice());
    }

    #[test]
    fn all_ones_point() {
        let a = hexagon_points();
        let p = monomial_param(&a, &[rat(1, 1), rat(1, 1)]).unwrap();
        assert!(p.coords().iter().all(One::is_one));
    }

    #[test]
    fn hexagon_param_exact() {
        let a = hexagon_points();
        let p = monomial_param(&a, &[rat(2, 1), rat(3, 1)]).unwrap();
        let expect = vec![
            rat(1, 1),
            rat(2, 1),
            rat(6, 1),
            rat(3, 1),
            rat(1, 2),
            rat(1, 6),
            rat(1, 3),
        ];
        assert_eq!(p.coords(), expect.as_slice());
    }

    #[test]
    fn monomial_rejects_zero() {
        let a = hexagon_points();
        assert!(matches!(
            monomial_param(&a, &[rat(0, 1), rat(1, 1)]),
            Err(PatchError::ZeroCoordinate(0))
        ));
    }

    #[test]
    fn group_law() {
        let a = hexagon_points();
        let s = [rat(2, 1), rat(5, 3)];
        let t = [rat(-3, 2), rat(7, 1)];
        let st: Vec<BigRational> = s.iter().zip(&t).map(|(x, y)| x * y).collect();
        let ps = monomial_values(&a, &s).unwrap();
        let pt = monomial_values(&a, &t).unwrap();
        let pst = monomial_values(&a, &st).unwrap();
        for i in 0..a.len() {
            assert_eq!(pst[i], &ps[i] * &pt[i]);
        }
    }

    #[test]
    fn identity_scheme_is_identity() {
        let a = ExponentSet::segment_points(&[0, 1, 2]).unwrap();
        let x = monomial_param(&a, &[rat(3, 2)]).unwrap();
        let y = project(&x, &ControlScheme::identity(3)).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn cubic_scheme_column_sum() {
        let a = ExponentSet::segment_points(&[0, 1, 2, 3]).unwrap();
        let x = monomial_param(&a, &[rat(1, 1)]).unwrap();
        let z = project(&x, &cubic_scheme()).unwrap();
        assert_eq!(z, ProjectivePoint::new(rv(&[4, -4, 0])).unwrap());
    }

    #[test]
    fn projection_is_linear() {
        let scheme = cubic_scheme();
        let x = rv(&[1, 2, 3, 4]);
        let y = rv(&[-2, 0, 5, 1]);
        let sum: Vec<BigRational> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let px = project_vector(&x, &scheme).unwrap();
        let py = project_vector(&y, &scheme).unwrap();
        let psum = project_vector(&sum, &scheme).unwrap();
        for i in 0..px.len() {
            assert_eq!(psum[i], &px[i] + &py[i]);
        }
    }

    #[test]
    fn cubic_curve_satisfies_implicit_equation() {
        let a = ExponentSet::segment_points(&[0, 1, 2, 3]).unwrap();
        let scheme = cubic_scheme();
        for i in 0..20i64 {
            let t = rat(2 * i + 3, i + 2);
            let p = patch_eval(&a, &scheme, &[t]).unwrap();
            let (x, y) = (&p[0], &p[1]);
            // y²(x−1) + 2yx + x² + x³ = 0
            let r = y * y * (x - rat(1, 1)) + rat(2, 1) * y * x + x * x + x * x * x;
            assert!(r.is_zero(), "residual {r} at sample {i}");
        }
    }

    #[test]
    fn hexagon_surface_at_ones() {
        let a = hexagon_points();
        let scheme = ControlScheme::new(vec![
            rv(&[1, -1, -1, -1]),
            rv(&[1, 1, 0, 0]),
            rv(&[1, 1, 1, 0]),
            rv(&[1, 0, 1, 0]),
            rv(&[1, 0, 1, 1]),
            rv(&[1, 0, 0, 1]),
            rv(&[1, 1, 0, 1]),
        ])
        .unwrap();
        let p = patch_eval(&a, &scheme, &[rat(1, 1), rat(1, 1)]).unwrap();
        assert_eq!(p, vec![rat(2, 7), rat(2, 7), rat(2, 7)]);
    }

    #[test]
    fn constant_scheme_collapses() {
        let a = ExponentSet::segment_points(&[0, 1, 2]).unwrap();
        let scheme = ControlScheme::new(vec![rv(&[1, 5]); 3]).unwrap();
        let p1 = patch_eval(&a, &scheme, &[rat(2, 1)]).unwrap();
        let p2 = patch_eval(&a, &scheme, &[rat(-7, 3)]).unwrap();
        assert_eq!(p1, p2);
        assert_eq!(p1, vec![rat(5, 1)]);
    }

    #[test]
    fn weighted_constructor() {
        let scheme = ControlScheme::from_weighted(
            &[rat(1, 1), rat(2, 1), rat(1, 1)],
            &[rv(&[0]), rv(&[1]), rv(&[2])],
        )
        .unwrap();
        assert_eq!(scheme.points()[1], vec![rat(2, 1), rat(2, 1)]);
        assert!(ControlScheme::from_weighted(&[rat(0, 1)], &[rv(&[1])]).is_err());
    }

    #[test]
    fn cubic_curve_has_no_basepoints() {
        let a = ExponentSet::segment_points(&[0, 1, 2, 3]).unwrap();
        let r = curve_basepoints(&a, &cubic_scheme()).unwrap();
        assert_eq!(r.degree, 3);
        assert_eq!(r.reduced_degree, 3);
        assert!(!r.has_basepoints());
        assert_eq!(r.gcd.len(), 1);
    }

    #[test]
    fn degenerate_scheme_has_basepoints() {
        let a = ExponentSet::segment_points(&[0, 1, 2]).unwrap();
        // p_0 = p_1 = 0: all components divisible by t²
        let scheme = ControlScheme::new(vec![rv(&[0, 0]), rv(&[0, 0]), rv(&[1, 1])]).unwrap();
        let r = curve_basepoints(&a, &scheme).unwrap();
        assert!(r.has_basepoints());
        assert_eq!(r.common_t_power, 2);
        assert_eq!(r.reduced_degree, 0);
    }

    #[test]
    fn two_point_identity_no_basepoints() {
        let a = ExponentSet::segment_points(&[0, 1]).unwrap();
        let r = curve_basepoints(&a, &ControlScheme::identity(2)).unwrap();
        assert!(!r.has_basepoints());
        assert_eq!(r.reduced_degree, 1);
    }

    #[test]
    fn forgetful_scheme_never_hits_basepoints() {
        // full hexagon down to its six vertices
        let full = hexagon_points();
        let keep: Vec<usize> = (1..=6).collect(); // drop the center coordinate
        let points: Vec<Vec<BigRational>> = (0..full.len())
            .map(|i| {
                (0..keep.len())
                    .map(|j| {
                        if keep[j] == i {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let scheme = ControlScheme::new(points).unwrap();
        for (s, t) in [(2, 3), (-5, 7), (1, -9), (4, 4)] {
            let x = monomial_param(&full, &[rat(s, 1), rat(t, 1)]).unwrap();
            assert!(project(&x, &scheme).is_ok());
        }
    }
}
