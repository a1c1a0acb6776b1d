//! The moment map, the algebraic moment map, its identification with the
//! lifted linear projection on the non-negative part, numeric inversion on
//! the interior of the polytope, and the linear-precision identity.

use num::{BigRational, Signed, Zero};
use thiserror::Error;

use crate::lattice::ExponentSet;
use crate::patch::ProjectivePoint;
use crate::polytope::{self, LatticePolytope};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 100;

#[derive(Debug, Error, PartialEq)]
pub enum MomentError {
    #[error("target point lies within tolerance of the polytope boundary")]
    OnBoundary,
    #[error("target point violates a facet inequality of the polytope")]
    OutsideDelta,
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("weights must be strictly positive")]
    NonPositiveWeight,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Polytope(#[from] polytope::PolytopeError),
}

/// `μ_𝒜(x) = Σ |x_m|²·m / Σ |x_m|²`, exact over ℚ.
pub fn moment_map(a: &ExponentSet, x: &ProjectivePoint) -> Vec<BigRational> {
    weighted_average(a, x, |c| c * c)
}

/// `α_𝒜(x) = Σ |x_m|·m / Σ |x_m|`, exact over ℚ.
pub fn algebraic_moment(a: &ExponentSet, x: &ProjectivePoint) -> Vec<BigRational> {
    weighted_average(a, x, |c| c.abs())
}

fn weighted_average(
    a: &ExponentSet,
    x: &ProjectivePoint,
    weight: impl Fn(&BigRational) -> BigRational,
) -> Vec<BigRational> {
    assert_eq!(x.len(), a.len(), "point length must match |A|");
    let ws: Vec<BigRational> = x.coords().iter().map(weight).collect();
    let total: BigRational = ws.iter().sum();
    assert!(!total.is_zero(), "projective point is nonzero");
    (0..a.dim())
        .map(|c| {
            let s: BigRational = ws
                .iter()
                .zip(a.vectors())
                .map(|(w, m)| w * BigRational::from(num::BigInt::from(m[c])))
                .sum();
            s / &total
        })
        .collect()
}

/// The lifted linear projection `π_𝒜(x) = [Σ x_i, Σ x_i m_i] ∈ ℙⁿ`; on the
/// non-negative part its dehomogenization is the algebraic moment map.
pub fn lifted_projection(
    a: &ExponentSet,
    x: &ProjectivePoint,
) -> Result<ProjectivePoint, crate::patch::PatchError> {
    assert_eq!(x.len(), a.len(), "point length must match |A|");
    let mut coords = vec![BigRational::zero(); 1 + a.dim()];
    for (xi, m) in x.coords().iter().zip(a.vectors()) {
        coords[0] += xi;
        for c in 0..a.dim() {
            coords[1 + c] += xi * BigRational::from(num::BigInt::from(m[c]));
        }
    }
    ProjectivePoint::new(coords)
}

/// A moment-map inversion problem: target `u` in the interior of
/// `Δ = conv(A)`, with optional positive weights per exponent.
#[derive(Debug, Clone)]
pub struct MomentQuery {
    pub a: ExponentSet,
    pub weights: Vec<f64>,
    pub u: Vec<f64>,
    pub tol: f64,
    pub max_iter: usize,
}

impl MomentQuery {
    pub fn new(a: ExponentSet, u: Vec<f64>) -> Self {
        let weights = vec![1.0; a.len()];
        MomentQuery {
            a,
            weights,
            u,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Self {
        self.weights = weights;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

/// The solved basis values at `u`: `f_m(u) = w_m t^m / Σ w t^m` together
/// with the torus point `t` achieving them. The values are nonnegative and
/// sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisValues {
    pub values: Vec<f64>,
    pub t: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Invert the (weighted) algebraic moment map at an interior point of `Δ` by
/// damped Newton iteration in logarithmic coordinates. The map is the
/// gradient of the strictly convex log-partition `log Σ w_m e^{⟨m,θ⟩}`, so
/// the damped iteration converges for every interior target.
pub fn moment_inverse(q: &MomentQuery) -> Result<BasisValues, MomentError> {
    let n = q.a.dim();
    if q.u.len() != n {
        return Err(MomentError::LengthMismatch { expected: n, got: q.u.len() });
    }
    if q.weights.len() != q.a.len() {
        return Err(MomentError::LengthMismatch { expected: q.a.len(), got: q.weights.len() });
    }
    if q.weights.iter().any(|&w| w <= 0.0) {
        return Err(MomentError::NonPositiveWeight);
    }
    let hull = polytope::convex_hull(&q.a)?;
    check_interior(&hull, &q.u, q.tol)?;

    let exps: Vec<&Vec<i64>> = q.a.vectors().iter().collect();
    let log_w: Vec<f64> = q.weights.iter().map(|w| w.ln()).collect();
    let mut theta = vec![0.0; n];
    let alpha_at = |theta: &[f64]| -> (Vec<f64>, Vec<f64>) {
        // (basis values, alpha)
        let logits: Vec<f64> = exps
            .iter()
            .zip(&log_w)
            .map(|(m, lw)| {
                lw + m
                    .iter()
                    .zip(theta)
                    .map(|(&e, &th)| e as f64 * th)
                    .sum::<f64>()
            })
            .collect();
        let top = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut f: Vec<f64> = logits.iter().map(|l| (l - top).exp()).collect();
        let total: f64 = f.iter().sum();
        for x in &mut f {
            *x /= total;
        }
        let mut alpha = vec![0.0; n];
        for (fi, m) in f.iter().zip(&exps) {
            for c in 0..n {
                alpha[c] += fi * m[c] as f64;
            }
        }
        (f, alpha)
    };
    let res_norm = |alpha: &[f64]| -> f64 {
        alpha
            .iter()
            .zip(&q.u)
            .map(|(a, u)| (a - u).abs())
            .fold(0.0, f64::max)
    };

    let (mut f, mut alpha) = alpha_at(&theta);
    let mut residual = res_norm(&alpha);
    for iter in 0..q.max_iter {
        if residual <= q.tol {
            return Ok(BasisValues { values: f, t: theta.iter().map(|t| t.exp()).collect(), iterations: iter, residual });
        }
        // Hessian of the log-partition: covariance of the exponents under f
        let mut h = vec![vec![0.0; n]; n];
        for (fi, m) in f.iter().zip(&exps) {
            for r in 0..n {
                for c in 0..n {
                    h[r][c] += fi * (m[r] as f64 - alpha[r]) * (m[c] as f64 - alpha[c]);
                }
            }
        }
        let g: Vec<f64> = q.u.iter().zip(&alpha).map(|(u, a)| u - a).collect();
        let step = solve_small(&h, &g).ok_or(MomentError::NoConvergence {
            iterations: iter,
            residual,
        })?;
        // damp: halve until the residual decreases
        let mut lambda = 1.0;
        loop {
            let cand: Vec<f64> = theta
                .iter()
                .zip(&step)
                .map(|(th, s)| th + lambda * s)
                .collect();
            let (cf, ca) = alpha_at(&cand);
            let cr = res_norm(&ca);
            if cr < residual || lambda < 1e-12 {
                theta = cand;
                f = cf;
                alpha = ca;
                residual = cr;
                break;
            }
            lambda *= 0.5;
        }
    }
    if residual <= q.tol {
        return Ok(BasisValues {
            values: f,
            t: theta.iter().map(|t| t.exp()).collect(),
            iterations: q.max_iter,
            residual,
        });
    }
    Err(MomentError::NoConvergence { iterations: q.max_iter, residual })
}

fn check_interior(hull: &LatticePolytope, u: &[f64], tol: f64) -> Result<(), MomentError> {
    for f in hull.facets() {
        let norm = f
            .normal
            .iter()
            .map(|&x| (x as f64).abs())
            .fold(0.0, f64::max);
        let slack = f.slack_f64(u) / norm.max(1.0);
        if slack < -tol {
            return Err(MomentError::OutsideDelta);
        }
        if slack <= tol {
            return Err(MomentError::OnBoundary);
        }
    }
    Ok(())
}

/// `‖Σ f_m(u)·m − u‖_∞` with `f` from `moment_inverse`: the coordinate-level
/// form of the linear-precision identity.
pub fn linear_precision_residual(
    a: &ExponentSet,
    weights: &[f64],
    u: &[f64],
    tol: f64,
) -> Result<f64, MomentError> {
    let q = MomentQuery::new(a.clone(), u.to_vec())
        .with_weights(weights.to_vec())
        .with_tol(tol);
    let basis = moment_inverse(&q)?;
    let n = a.dim();
    let mut recon = vec![0.0; n];
    for (f, m) in basis.values.iter().zip(a.vectors()) {
        for c in 0..n {
            recon[c] += f * m[c] as f64;
        }
    }
    Ok(recon
        .iter()
        .zip(u)
        .map(|(r, u)| (r - u).abs())
        .fold(0.0, f64::max))
}

/// Evaluate the unweighted algebraic moment map at a positive torus point
/// `t`, in floats: `α(t) = Σ t^m·m / Σ t^m`.
pub fn alpha_f64(a: &ExponentSet, t: &[f64]) -> Vec<f64> {
    let vals = crate::patch::monomial_values_f64(a, t).expect("nonzero torus point");
    let total: f64 = vals.iter().map(|v| v.abs()).sum();
    (0..a.dim())
        .map(|c| {
            vals.iter()
                .zip(a.vectors())
                .map(|(v, m)| v.abs() * m[c] as f64)
                .sum::<f64>()
                / total
        })
        .collect()
}

fn solve_small(h: &[Vec<f64>], g: &[f64]) -> Option<Vec<f64>> {
    let n = g.len();
    let mut m: Vec<Vec<f64>> = h
        .iter()
        .zip(g)
        .map(|(row, &gi)| {
            let mut r = row.clone();
            r.push(gi);
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[p][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, p);
        for i in 0..n {
            if i != col {
                let f = m[i][col] / m[col][col];
                for j in col..=n {
                    m[i][j] -= f * m[col][j];
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}
