//! Sampling of real toric patches into triangle meshes: orthant pieces of
//! the real points, the non-negative part parametrized through the moment
//! map, affine chart grids, and OBJ/CSV export.

use num::{BigInt, BigRational, One, Zero};
use std::fmt::Write as _;
use thiserror::Error;

use crate::ideal::rational_pow;
use crate::lattice::ExponentSet;
use crate::moment::{moment_inverse, MomentError, MomentQuery};
use crate::patch::{self, ControlScheme, PatchError};
use crate::polytope::{self, PolytopeError};

pub const GRID_LOG_MIN: f64 = 1e-2;
pub const GRID_LOG_MAX: f64 = 1e2;
const DEGENERATE_AREA: f64 = 1e-14;
const INFINITY_RATIO: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum RealmeshError {
    #[error("sign vector entries must be ±1")]
    BadSign,
    #[error("sign vector has {got} entries, expected {expected}")]
    SignLength { expected: usize, got: usize },
    #[error("grid resolution must be at least 2")]
    GridTooSmall,
    #[error("orthant sampling supports 1 or 2 parameters, got {0}")]
    UnsupportedDimension(usize),
    #[error("zero chart parameter")]
    ZeroParameter,
    #[error("mesh face {face} references vertex {index} out of range")]
    BadFaceIndex { face: usize, index: usize },
    #[error(transparent)]
    Patch(#[from] PatchError),
    #[error(transparent)]
    Moment(#[from] MomentError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("obj parse error at line {line}: {message}")]
    ObjParse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// An orthant of `(ℝ*)ⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self, RealmeshError> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(RealmeshError::BadSign);
        }
        Ok(SignVector(signs))
    }

    pub fn identity(n: usize) -> Self {
        SignVector(vec![1; n])
    }

    /// All 2ⁿ orthants of `(ℝ*)ⁿ`.
    pub fn all(n: usize) -> Vec<Self> {
        (0..1u32 << n)
            .map(|mask| {
                SignVector((0..n).map(|i| if mask >> i & 1 == 0 { 1 } else { -1 }).collect())
            })
            .collect()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn apply(&self, t: &[f64]) -> Vec<f64> {
        t.iter().zip(&self.0).map(|(v, &s)| v * s as f64).collect()
    }
}

/// Per-vertex provenance: the orthant and the parameter values that
/// produced the vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexTag {
    pub eps: Vec<i8>,
    pub params: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    pub tags: Vec<VertexTag>,
    /// Samples discarded because the projected point lay at infinity.
    pub dropped_at_infinity: usize,
}

impl Mesh {
    pub fn validate(&self) -> Result<(), RealmeshError> {
        for (f, face) in self.faces.iter().enumerate() {
            for &i in face {
                if i >= self.vertices.len() {
                    return Err(RealmeshError::BadFaceIndex { face: f, index: i });
                }
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

fn triangle_area(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let cr = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    0.5 * (cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]).sqrt()
}

/// Log-uniform grid over [10⁻², 10²].
pub fn log_grid(resolution: usize) -> Vec<f64> {
    let (lo, hi) = (GRID_LOG_MIN.log10(), GRID_LOG_MAX.log10());
    (0..resolution)
        .map(|i| {
            let f = i as f64 / (resolution - 1) as f64;
            10f64.powf(lo + f * (hi - lo))
        })
        .collect()
}

/// Affine representative in ℝ³ of a projective point, padding missing
/// coordinates with zero; `None` for points at (or numerically near)
/// infinity.
fn dehomogenize3(z: &[f64]) -> Option<[f64; 3]> {
    let scale = z.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || z[0].abs() <= INFINITY_RATIO * scale {
        return None;
    }
    let mut out = [0.0; 3];
    for (o, zi) in out.iter_mut().zip(z.iter().skip(1)) {
        *o = zi / z[0];
    }
    Some(out)
}

fn thread_count() -> usize {
    std::env::var("TORIC_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

/// Evaluate `f` over the parameter list, in parallel when `TORIC_THREADS`
/// asks for more than one worker.
fn par_eval<T: Send>(params: &[Vec<f64>], f: impl Fn(&[f64]) -> T + Sync) -> Vec<T> {
    let workers = thread_count().min(params.len().max(1));
    if workers <= 1 {
        return params.iter().map(|p| f(p)).collect();
    }
    let chunk = params.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = params
            .chunks(chunk)
            .map(|block| scope.spawn(|| block.iter().map(|p| f(p)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    })
}

/// Connect an `nr × nc` grid of optional vertex indices into triangles,
/// skipping cells with missing corners and degenerate triangles.
fn triangulate_grid(
    slots: &[Option<usize>],
    nr: usize,
    nc: usize,
    vertices: &[[f64; 3]],
    faces: &mut Vec<[usize; 3]>,
) {
    for r in 0..nr - 1 {
        for c in 0..nc - 1 {
            let quad = [
                slots[r * nc + c],
                slots[r * nc + c + 1],
                slots[(r + 1) * nc + c + 1],
                slots[(r + 1) * nc + c],
            ];
            let [Some(a), Some(b), Some(cc), Some(d)] = quad else {
                continue;
            };
            for tri in [[a, b, cc], [a, cc, d]] {
                if triangle_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]])
                    > DEGENERATE_AREA
                {
                    faces.push(tri);
                }
            }
        }
    }
}

/// Sample the image of one orthant of the parameter torus under the
/// projected patch map. The identity orthant samples the dense torus of
/// the non-negative part.
pub fn orthant_sample(
    a: &ExponentSet,
    scheme: &ControlScheme,
    eps: &SignVector,
    grid: usize,
) -> Result<Mesh, RealmeshError> {
    let n = a.dim();
    if n == 0 || n > 2 {
        return Err(RealmeshError::UnsupportedDimension(n));
    }
    if eps.len() != n {
        return Err(RealmeshError::SignLength { expected: n, got: eps.len() });
    }
    if grid < 2 {
        return Err(RealmeshError::GridTooSmall);
    }
    let axis = log_grid(grid);
    let params: Vec<Vec<f64>> = if n == 1 {
        axis.iter().map(|&t| eps.apply(&[t])).collect()
    } else {
        axis.iter()
            .flat_map(|&s| axis.iter().map(move |&t| (s, t)))
            .map(|(s, t)| eps.apply(&[s, t]))
            .collect()
    };
    let points = par_eval(&params, |t| {
        let x = patch::monomial_values_f64(a, t).ok()?;
        let z = patch::project_vector_f64(&x, scheme).ok()?;
        dehomogenize3(&z)
    });

    let mut mesh = Mesh::default();
    let mut slots = Vec::with_capacity(points.len());
    for (p, t) in points.iter().zip(&params) {
        match p {
            Some(v) => {
                slots.push(Some(mesh.vertices.len()));
                mesh.vertices.push(*v);
                mesh.tags.push(VertexTag { eps: eps.signs().to_vec(), params: t.clone() });
            }
            None => {
                slots.push(None);
                mesh.dropped_at_infinity += 1;
            }
        }
    }
    if n == 2 {
        triangulate_grid(&slots, grid, grid, &mesh.vertices, &mut mesh.faces);
    }
    Ok(mesh)
}

/// Sample the non-negative part over an interior grid of `Δ` itself by
/// inverting the (weighted) algebraic moment map at each grid point. The
/// result is the linear-precision parametrization of the patch by its
/// polytope.
pub fn nonneg_patch_via_moment(
    a: &ExponentSet,
    scheme: &ControlScheme,
    weights: &[f64],
    grid: usize,
) -> Result<Mesh, RealmeshError> {
    let n = a.dim();
    if n == 0 || n > 2 {
        return Err(RealmeshError::UnsupportedDimension(n));
    }
    if grid < 1 {
        return Err(RealmeshError::GridTooSmall);
    }
    let poly = polytope::convex_hull(a)?;
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for v in poly.vertices() {
        for c in 0..n {
            lo[c] = lo[c].min(v[c] as f64);
            hi[c] = hi[c].max(v[c] as f64);
        }
    }
    // grid over the bounding box, keeping strictly interior points
    let coord = |c: usize, i: usize| {
        lo[c] + (hi[c] - lo[c]) * (i as f64 + 1.0) / (grid as f64 + 1.0)
    };
    let us: Vec<Vec<f64>> = if n == 1 {
        (0..grid).map(|i| vec![coord(0, i)]).collect()
    } else {
        (0..grid)
            .flat_map(|i| (0..grid).map(move |j| (i, j)))
            .map(|(i, j)| vec![coord(0, i), coord(1, j)])
            .collect()
    };
    let margin = 1e-9;
    let keep: Vec<bool> = us.iter().map(|u| poly.contains_interior_f64(u, margin)).collect();

    let points = par_eval(&us, |u| {
        if !poly.contains_interior_f64(u, margin) {
            return None;
        }
        let q = MomentQuery::new(a.clone(), u.to_vec()).with_weights(weights.to_vec());
        let basis = moment_inverse(&q).ok()?;
        let z = patch::project_vector_f64(&basis.values, scheme).ok()?;
        dehomogenize3(&z)
    });

    let mut mesh = Mesh::default();
    let mut slots = Vec::with_capacity(points.len());
    for ((p, u), &kept) in points.iter().zip(&us).zip(&keep) {
        match p {
            Some(v) => {
                slots.push(Some(mesh.vertices.len()));
                mesh.vertices.push(*v);
                mesh.tags.push(VertexTag { eps: vec![1; n], params: u.clone() });
            }
            None => {
                slots.push(None);
                if kept {
                    mesh.dropped_at_infinity += 1;
                }
            }
        }
    }
    if n == 2 {
        triangulate_grid(&slots, grid, grid, &mesh.vertices, &mut mesh.faces);
    }
    Ok(mesh)
}

/// Symmetric nonzero rational grid values for chart sampling.
fn chart_grid_values(grid: usize) -> Vec<BigRational> {
    (0..grid)
        .map(|j| {
            let mut num = 2 * j as i64 - grid as i64 + 1;
            if num == 0 {
                num = 1;
            }
            BigRational::new(BigInt::from(num), BigInt::from(grid as i64 + 1))
        })
        .collect()
}

/// Exact samples `(t^{m₁}, …, t^{m_ℓ})` of an affine chart spanned by the
/// given semigroup generators, over a grid in `(ℚ*)ⁿ` (n ≤ 2).
pub fn chart_sample(
    generators: &[Vec<i64>],
    grid: usize,
) -> Result<Vec<Vec<BigRational>>, RealmeshError> {
    let Some(first) = generators.first() else {
        return Ok(Vec::new());
    };
    let n = first.len();
    if n == 0 || n > 2 {
        return Err(RealmeshError::UnsupportedDimension(n));
    }
    if grid < 2 {
        return Err(RealmeshError::GridTooSmall);
    }
    let axis = chart_grid_values(grid);
    if axis.iter().any(Zero::is_zero) {
        return Err(RealmeshError::ZeroParameter);
    }
    let params: Vec<Vec<BigRational>> = if n == 1 {
        axis.iter().map(|t| vec![t.clone()]).collect()
    } else {
        axis.iter()
            .flat_map(|s| axis.iter().map(move |t| vec![s.clone(), t.clone()]))
            .collect()
    };
    Ok(params
        .iter()
        .map(|t| {
            generators
                .iter()
                .map(|m| {
                    let mut v = BigRational::one();
                    for (tc, &e) in t.iter().zip(m) {
                        v *= rational_pow(tc, &BigInt::from(e));
                    }
                    v
                })
                .collect()
        })
        .collect())
}

/// Wavefront OBJ text for a mesh: `v` lines then 1-based `f` lines.
pub fn export_obj(mesh: &Mesh) -> Result<String, RealmeshError> {
    mesh.validate()?;
    let mut out = String::new();
    for v in &mesh.vertices {
        // Display prints the shortest representation that round-trips
        writeln!(out, "v {} {} {}", v[0], v[1], v[2]).unwrap();
    }
    for f in &mesh.faces {
        writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1).unwrap();
    }
    Ok(out)
}

pub fn write_obj(mesh: &Mesh, path: &std::path::Path) -> Result<(), RealmeshError> {
    std::fs::write(path, export_obj(mesh)?)?;
    Ok(())
}

/// Minimal OBJ reader for round-trip checks: `v` and `f` records only.
pub fn parse_obj(text: &str) -> Result<Mesh, RealmeshError> {
    let mut mesh = Mesh::default();
    for (idx, line) in text.lines().enumerate() {
        let err = |message: &str| RealmeshError::ObjParse {
            line: idx + 1,
            message: message.to_string(),
        };
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some("v") => {
                let mut v = [0.0; 3];
                for slot in &mut v {
                    *slot = fields
                        .next()
                        .ok_or_else(|| err("vertex needs 3 coordinates"))?
                        .parse()
                        .map_err(|_| err("bad float"))?;
                }
                mesh.vertices.push(v);
            }
            Some("f") => {
                let mut f = [0usize; 3];
                for slot in &mut f {
                    let tok = fields.next().ok_or_else(|| err("face needs 3 indices"))?;
                    let tok = tok.split('/').next().unwrap();
                    let i: usize = tok.parse().map_err(|_| err("bad index"))?;
                    if i == 0 {
                        return Err(err("indices are 1-based"));
                    }
                    *slot = i - 1;
                }
                mesh.faces.push(f);
            }
            _ => {}
        }
    }
    mesh.validate()?;
    Ok(mesh)
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// CSV point dump with header `x,y,z,eps,s,t`; the orthant column holds the
/// comma-separated sign vector.
pub fn export_csv(mesh: &Mesh) -> String {
    let mut out = String::from("x,y,z,eps,s,t\r\n");
    for (v, tag) in mesh.vertices.iter().zip(&mesh.tags) {
        let eps = tag
            .eps
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let s = tag.params.first().map(|p| p.to_string()).unwrap_or_default();
        let t = tag.params.get(1).map(|p| p.to_string()).unwrap_or_default();
        let row = [
            v[0].to_string(),
            v[1].to_string(),
            v[2].to_string(),
            eps,
            s,
            t,
        ];
        let row: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        out.push_str(&row.join(","));
        out.push_str("\r\n");
    }
    out
}
