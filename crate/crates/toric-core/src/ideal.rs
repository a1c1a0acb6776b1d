//! Binomial generators of the toric ideal of an exponent set: bounded
//! kernel-vector binomials, quadratic midpoint relations, membership and
//! residual spot checks.

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

use crate::lattice::{self, ExponentSet, LatticeError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdealError {
    #[error("vector length {0} does not match variable count {1}")]
    LengthMismatch(usize, usize),
    #[error("torus point has a zero coordinate at index {0}")]
    ZeroCoordinate(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// The binomial `x^plus − x^minus` in variables indexed by an exponent set.
/// Both sides are nonnegative with disjoint supports and the lifted matrix
/// kills `plus − minus`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Binomial {
    plus: Vec<BigInt>,
    minus: Vec<BigInt>,
}

impl Binomial {
    /// Build from a kernel vector, putting the lexicographically larger
    /// monomial first.
    pub fn from_kernel_vector(u: &[BigInt]) -> Binomial {
        let (plus, minus) = lattice::pos_neg_split(u);
        if minus > plus {
            Binomial { plus: minus, minus: plus }
        } else {
            Binomial { plus, minus }
        }
    }

    pub fn plus(&self) -> &[BigInt] {
        &self.plus
    }

    pub fn minus(&self) -> &[BigInt] {
        &self.minus
    }

    pub fn total_degree(&self) -> BigInt {
        self.plus.iter().sum()
    }

    /// Render with the given variable labels, e.g. `x0*x2^2 - x1^3`.
    pub fn render(&self, labels: &[String]) -> String {
        format!(
            "{} - {}",
            monomial_str(&self.plus, labels),
            monomial_str(&self.minus, labels)
        )
    }
}

fn monomial_str(exp: &[BigInt], labels: &[String]) -> String {
    let mut parts = Vec::new();
    for (e, l) in exp.iter().zip(labels) {
        if e.is_zero() {
            continue;
        }
        if e.is_one() {
            parts.push(l.clone());
        } else {
            parts.push(format!("{l}^{e}"));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Default variable labels `x0 … xℓ`.
pub fn default_labels(count: usize) -> Vec<String> {
    (0..count).map(|i| format!("x{i}")).collect()
}

fn sort_canonical(mut bs: Vec<Binomial>) -> Vec<Binomial> {
    bs.sort_by(|a, b| {
        (a.total_degree(), &a.plus, &a.minus).cmp(&(b.total_degree(), &b.plus, &b.minus))
    });
    bs.dedup();
    bs
}

/// One binomial per bounded kernel vector of the lifted matrix, canonically
/// signed and sorted by total degree then lexicographically.
pub fn binomials_from_kernel(a: &ExponentSet, bound: u32) -> Result<Vec<Binomial>, IdealError> {
    let kernel = lattice::enumerate_kernel_vectors(&lattice::lift(a), bound)?;
    Ok(sort_canonical(
        kernel.iter().map(|u| Binomial::from_kernel_vector(u)).collect(),
    ))
}

/// Default kernel bound: the maximum coordinate spread of the exponent set.
pub fn default_kernel_bound(a: &ExponentSet) -> u32 {
    (0..a.dim())
        .map(|c| {
            let lo = a.vectors().iter().map(|v| v[c]).min().unwrap();
            let hi = a.vectors().iter().map(|v| v[c]).max().unwrap();
            (hi - lo) as u32
        })
        .max()
        .unwrap_or(1)
        .max(1)
}

/// All quadratic binomials `x_a x_b − x_c x_d` coming from coincident
/// midpoints `a + b = c + d` of segments between points of `A`.
pub fn quadratic_binomials(a: &ExponentSet) -> Vec<Binomial> {
    let pts = a.vectors();
    let l = pts.len();
    // unordered pairs with repetition, grouped by their sum
    let mut pairs: Vec<((usize, usize), Vec<i64>)> = Vec::new();
    for i in 0..l {
        for j in i..l {
            let sum = pts[i].iter().zip(&pts[j]).map(|(x, y)| x + y).collect();
            pairs.push(((i, j), sum));
        }
    }
    let mut out = Vec::new();
    for (pi, (ab, sum_ab)) in pairs.iter().enumerate() {
        for (cd, sum_cd) in pairs[pi + 1..].iter() {
            if sum_ab != sum_cd {
                continue;
            }
            let mut u = vec![BigInt::zero(); l];
            u[ab.0] += 1;
            u[ab.1] += 1;
            u[cd.0] -= 1;
            u[cd.1] -= 1;
            out.push(Binomial::from_kernel_vector(&u));
        }
    }
    sort_canonical(out)
}

/// `true` iff `𝒜⁺u = 𝒜⁺v`, i.e. `x^u − x^v` lies in the toric ideal.
pub fn is_toric_binomial(
    a: &ExponentSet,
    u: &[BigInt],
    v: &[BigInt],
) -> Result<bool, IdealError> {
    let lifted = lattice::lift(a);
    if u.len() != lifted.n_cols() {
        return Err(IdealError::LengthMismatch(u.len(), lifted.n_cols()));
    }
    if v.len() != lifted.n_cols() {
        return Err(IdealError::LengthMismatch(v.len(), lifted.n_cols()));
    }
    Ok(lifted.mul_vec(u) == lifted.mul_vec(v))
}

/// Exact value of `x^{u⁺} − x^{u⁻}` at `x = φ_𝒜(t)` for a rational torus
/// point `t`; zero for every binomial of the ideal.
pub fn residual_at(b: &Binomial, a: &ExponentSet, t: &[BigRational]) -> Result<BigRational, IdealError> {
    if t.len() != a.dim() {
        return Err(IdealError::LengthMismatch(t.len(), a.dim()));
    }
    if let Some(i) = t.iter().position(Zero::is_zero) {
        return Err(IdealError::ZeroCoordinate(i));
    }
    let coords = crate::patch::monomial_values(a, t).expect("validated torus point");
    let eval = |exp: &[BigInt]| -> BigRational {
        exp.iter()
            .zip(&coords)
            .filter(|(e, _)| !e.is_zero())
            .map(|(e, c)| rational_pow(c, e))
            .product()
    };
    Ok(eval(&b.plus) - eval(&b.minus))
}

pub(crate) fn rational_pow(base: &BigRational, exp: &BigInt) -> BigRational {
    use num::ToPrimitive;
    let e = exp.to_i64().expect("exponent fits in i64");
    if e == 0 {
        return BigRational::one();
    }
    let p: u32 = e.unsigned_abs().try_into().expect("exponent fits in u32");
    let mag = BigRational::new(base.numer().pow(p), base.denom().pow(p));
    if e < 0 {
        mag.recip()
    } else {
        mag
    }
}
