//! Exact geometry of `conv(𝒜)` for ambient dimension up to 3: convex hulls
//! with integer predicates, lattice-point enumeration, Euclidean volume, the
//! normalized-volume implicit degree, and vertex decompositions certifying
//! basepoint-freeness of the coordinate-forgetting projection.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive};
use thiserror::Error;

use crate::lattice::{ExponentSet, IntMat};
use crate::linalg;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("affine span has dimension {found}, expected {expected}")]
    DimensionDeficient { expected: usize, found: usize },
    #[error("ambient dimension {0} not supported (must be 1..=3)")]
    UnsupportedDimension(usize),
    #[error("point is a vertex or lies outside the polytope")]
    NotInterior,
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
}

/// Facet inequality `⟨normal, x⟩ ≤ offset` with primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    /// `offset − ⟨normal, x⟩`; nonnegative inside the polytope.
    pub fn slack(&self, x: &[i64]) -> i128 {
        self.offset as i128 - dot(&self.normal, x)
    }

    pub fn slack_f64(&self, x: &[f64]) -> f64 {
        self.offset as f64
            - self
                .normal
                .iter()
                .zip(x)
                .map(|(&a, &b)| a as f64 * b)
                .sum::<f64>()
    }
}

/// Convex hull of an exponent set: vertices in canonical order plus the
/// facet inequalities. For n = 2 the vertices run counterclockwise starting
/// from the lexicographic minimum; for n = 3 they are sorted
/// lexicographically and each facet records its incident vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    n: usize,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
    /// Indices into `vertices` incident to each facet (n = 3 face lattice;
    /// filled for n ≤ 2 as well).
    facet_vertices: Vec<Vec<usize>>,
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

fn cross2(o: &[i64], a: &[i64], b: &[i64]) -> i128 {
    let ax = (a[0] - o[0]) as i128;
    let ay = (a[1] - o[1]) as i128;
    let bx = (b[0] - o[0]) as i128;
    let by = (b[1] - o[1]) as i128;
    ax * by - ay * bx
}

fn cross3(a: &[i64], b: &[i64]) -> [i128; 3] {
    [
        a[1] as i128 * b[2] as i128 - a[2] as i128 * b[1] as i128,
        a[2] as i128 * b[0] as i128 - a[0] as i128 * b[2] as i128,
        a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128,
    ]
}

fn primitive(v: &mut Vec<i128>) {
    let mut g: i128 = 0;
    for &x in v.iter() {
        g = g.gcd(&x.abs());
    }
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

impl LatticePolytope {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet_vertices(&self) -> &[Vec<usize>] {
        &self.facet_vertices
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| f.slack(x) >= 0)
    }

    pub fn is_vertex(&self, x: &[i64]) -> bool {
        self.vertices.iter().any(|v| v == x)
    }

    /// Strict interior test for a float point with margin `eps` on every
    /// facet slack.
    pub fn contains_interior_f64(&self, x: &[f64], eps: f64) -> bool {
        self.facets.iter().all(|f| f.slack_f64(x) > eps)
    }
}

/// Exact convex hull of `A`; errors unless the affine span of `A` is
/// full-dimensional.
pub fn convex_hull(a: &ExponentSet) -> Result<LatticePolytope, PolytopeError> {
    let n = a.dim();
    if n == 0 || n > 3 {
        return Err(PolytopeError::UnsupportedDimension(n));
    }
    let span = affine_span_dim(a);
    if span < n {
        return Err(PolytopeError::DimensionDeficient {
            expected: n,
            found: span,
        });
    }
    let mut pts: Vec<Vec<i64>> = a.vectors().to_vec();
    pts.sort();
    pts.dedup();
    let mut p = match n {
        1 => hull_1d(&pts),
        2 => hull_2d(&pts),
        _ => hull_3d(&pts),
    };
    p.facet_vertices = incidences(&p);
    Ok(p)
}

/// Dimension of the affine span of the exponent vectors.
pub fn affine_span_dim(a: &ExponentSet) -> usize {
    let v0 = &a.vectors()[0];
    let rows: Vec<Vec<BigInt>> = a.vectors()[1..]
        .iter()
        .map(|v| sub(v, v0).iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    if rows.is_empty() {
        0
    } else {
        linalg::rank_bareiss(&rows)
    }
}

fn hull_1d(pts: &[Vec<i64>]) -> LatticePolytope {
    let lo = pts.first().unwrap()[0];
    let hi = pts.last().unwrap()[0];
    LatticePolytope {
        n: 1,
        vertices: vec![vec![lo], vec![hi]],
        facets: vec![
            Facet { normal: vec![1], offset: hi },
            Facet { normal: vec![-1], offset: -lo },
        ],
        facet_vertices: Vec::new(),
    }
}

fn hull_2d(pts: &[Vec<i64>]) -> LatticePolytope {
    // monotone chain; pts are sorted and deduped
    let build = |iter: &mut dyn Iterator<Item = &Vec<i64>>| {
        let mut h: Vec<Vec<i64>> = Vec::new();
        for p in iter {
            while h.len() >= 2 && cross2(&h[h.len() - 2], &h[h.len() - 1], p) <= 0 {
                h.pop();
            }
            h.push(p.clone());
        }
        h
    };
    let lower = build(&mut pts.iter());
    let upper = build(&mut pts.iter().rev());
    let mut vertices = lower;
    vertices.pop();
    vertices.extend(upper);
    vertices.pop();
    if vertices.is_empty() {
        // all collinear is excluded by the span check; single point impossible
        vertices = vec![pts[0].clone()];
    }

    let k = vertices.len();
    let facets = (0..k)
        .map(|i| {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % k];
            let d = sub(b, a);
            let mut nrm = vec![d[1] as i128, -(d[0] as i128)];
            primitive(&mut nrm);
            let normal: Vec<i64> = nrm.iter().map(|&x| x as i64).collect();
            let offset = dot(&normal, a) as i64;
            Facet { normal, offset }
        })
        .collect();
    LatticePolytope {
        n: 2,
        vertices,
        facets,
        facet_vertices: Vec::new(),
    }
}

fn hull_3d(pts: &[Vec<i64>]) -> LatticePolytope {
    let m = pts.len();
    let mut facets: Vec<Facet> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let u = sub(&pts[j], &pts[i]);
                let v = sub(&pts[k], &pts[i]);
                let mut nrm = cross3(&u, &v).to_vec();
                if nrm.iter().all(|&x| x == 0) {
                    continue;
                }
                primitive(&mut nrm);
                let normal: Vec<i64> = nrm.iter().map(|&x| x as i64).collect();
                let base = dot(&normal, &pts[i]);
                let mut pos = false;
                let mut neg = false;
                for p in pts {
                    match (dot(&normal, p) - base).signum() {
                        1 => pos = true,
                        -1 => neg = true,
                        _ => {}
                    }
                }
                if pos && neg {
                    continue;
                }
                let (normal, offset) = if pos {
                    (normal.iter().map(|&x| -x).collect::<Vec<i64>>(), -base)
                } else {
                    (normal, base)
                };
                let f = Facet {
                    normal,
                    offset: offset as i64,
                };
                if !facets.contains(&f) {
                    facets.push(f);
                }
            }
        }
    }
    facets.sort_by(|a, b| (&a.normal, a.offset).cmp(&(&b.normal, b.offset)));

    let mut vertices: Vec<Vec<i64>> = pts
        .iter()
        .filter(|p| facets.iter().filter(|f| f.slack(p) == 0).count() >= 3)
        .cloned()
        .collect();
    vertices.sort();
    LatticePolytope {
        n: 3,
        vertices,
        facets,
        facet_vertices: Vec::new(),
    }
}

fn incidences(p: &LatticePolytope) -> Vec<Vec<usize>> {
    p.facets
        .iter()
        .map(|f| {
            (0..p.vertices.len())
                .filter(|&i| f.slack(&p.vertices[i]) == 0)
                .collect()
        })
        .collect()
}

/// All lattice points of `P`, lexicographically ordered, as an exponent set.
pub fn lattice_points(p: &LatticePolytope) -> ExponentSet {
    let n = p.n;
    let lo: Vec<i64> = (0..n)
        .map(|c| p.vertices.iter().map(|v| v[c]).min().unwrap())
        .collect();
    let hi: Vec<i64> = (0..n)
        .map(|c| p.vertices.iter().map(|v| v[c]).max().unwrap())
        .collect();
    let mut pts = Vec::new();
    let mut x = lo.clone();
    'outer: loop {
        if p.contains(&x) {
            pts.push(x.clone());
        }
        for i in (0..n).rev() {
            if x[i] < hi[i] {
                x[i] += 1;
                for j in i + 1..n {
                    x[j] = lo[j];
                }
                continue 'outer;
            }
        }
        break;
    }
    ExponentSet::new(n, pts).expect("hull has at least one lattice point")
}

/// Exact Euclidean volume (length for n = 1, area for n = 2).
pub fn volume(p: &LatticePolytope) -> BigRational {
    match p.n {
        1 => BigRational::from(BigInt::from(p.vertices[1][0] - p.vertices[0][0])),
        2 => {
            let v = &p.vertices;
            let k = v.len();
            let mut twice: i128 = 0;
            for i in 0..k {
                let a = &v[i];
                let b = &v[(i + 1) % k];
                twice += a[0] as i128 * b[1] as i128 - b[0] as i128 * a[1] as i128;
            }
            BigRational::new(BigInt::from(twice.abs()), BigInt::from(2))
        }
        3 => volume_3d(p),
        _ => unreachable!(),
    }
}

fn volume_3d(p: &LatticePolytope) -> BigRational {
    let origin = &p.vertices[0];
    let mut six_vol: i128 = 0;
    for (f, inc) in p.facets.iter().zip(&p.facet_vertices) {
        let ring = order_facet_cycle(p, f, inc);
        if ring.len() < 3 {
            continue;
        }
        let a = &p.vertices[ring[0]];
        for w in 1..ring.len() - 1 {
            let b = &p.vertices[ring[w]];
            let c = &p.vertices[ring[w + 1]];
            let u = sub(b, a);
            let v = sub(c, a);
            let nrm = cross3(&u, &v);
            // orient the triangle with the outward facet normal
            let orient: i128 = nrm
                .iter()
                .zip(&f.normal)
                .map(|(&x, &m)| x * m as i128)
                .sum();
            let d = sub(a, origin);
            let vol6: i128 = nrm.iter().zip(&d).map(|(&x, &y)| x * y as i128).sum();
            six_vol += if orient >= 0 { vol6 } else { -vol6 };
        }
    }
    BigRational::new(BigInt::from(six_vol.abs()), BigInt::from(6))
}

/// Cyclic (convex) order of a facet's vertices, by gift wrapping inside the
/// facet plane.
fn order_facet_cycle(p: &LatticePolytope, f: &Facet, inc: &[usize]) -> Vec<usize> {
    let mut remaining: Vec<usize> = inc.to_vec();
    if remaining.len() <= 3 {
        return remaining;
    }
    let start = remaining[0];
    let mut cycle = vec![start];
    let mut cur = start;
    remaining.retain(|&i| i != start);
    while !remaining.is_empty() {
        let mut next = remaining[0];
        for &cand in &remaining[1..] {
            // cand replaces next if it is more clockwise as seen along the normal
            let u = sub(&p.vertices[next], &p.vertices[cur]);
            let v = sub(&p.vertices[cand], &p.vertices[cur]);
            let nrm = cross3(&u, &v);
            let s: i128 = nrm
                .iter()
                .zip(&f.normal)
                .map(|(&x, &m)| x * m as i128)
                .sum();
            if s < 0 {
                next = cand;
            }
        }
        cycle.push(next);
        remaining.retain(|&i| i != next);
        cur = next;
    }
    cycle
}

/// `r!·Vol(conv(A))` computed in the affine span of `A` (dimension `r`);
/// always a nonnegative integer.
pub fn implicit_degree(a: &ExponentSet) -> Result<u64, PolytopeError> {
    let r = affine_span_dim(a);
    if r == 0 {
        return Ok(1); // a single point
    }
    let reduced = if r == a.dim() {
        a.clone()
    } else {
        restrict_to_span(a, r)?
    };
    let hull = convex_hull(&reduced)?;
    let vol = volume(&hull);
    let fact: u64 = (1..=r as u64).product();
    let deg = vol * BigRational::from(BigInt::from(fact));
    debug_assert!(deg.is_integer());
    Ok(deg.to_integer().to_u64().expect("degree fits in u64"))
}

/// Re-express `A` in lattice coordinates of its affine span `span(A) ∩ ℤⁿ`.
pub fn restrict_to_span(a: &ExponentSet, r: usize) -> Result<ExponentSet, PolytopeError> {
    let v0 = a.vectors()[0].clone();
    let diffs: Vec<Vec<i64>> = a.vectors().iter().map(|v| sub(v, &v0)).collect();
    // rows of `ann` annihilate the span; its kernel is the saturated span lattice
    let d_t = IntMat::from_i64(&diffs); // rows are the difference vectors
    let ann = linalg::integer_kernel_basis(d_t.rows());
    let basis: Vec<Vec<BigInt>> = if ann.is_empty() {
        (0..a.dim())
            .map(|i| {
                (0..a.dim())
                    .map(|j| BigInt::from((i == j) as i64))
                    .collect()
            })
            .collect()
    } else {
        linalg::integer_kernel_basis(&ann)
    };
    assert_eq!(basis.len(), r);
    // solve (columns = basis vectors) · x = diff for each point
    let sys: Vec<Vec<BigRational>> = (0..a.dim())
        .map(|row| {
            basis
                .iter()
                .map(|b| BigRational::from(b[row].clone()))
                .collect()
        })
        .collect();
    let coords: Vec<Vec<i64>> = diffs
        .iter()
        .map(|d| {
            let rhs: Vec<BigRational> = d.iter().map(|&x| BigRational::from(BigInt::from(x))).collect();
            let x = linalg::solve_rational(&sys, &rhs).expect("span basis is independent");
            x.iter()
                .map(|c| {
                    debug_assert!(c.is_integer());
                    c.to_integer().to_i64().expect("coordinate fits in i64")
                })
                .collect()
        })
        .collect();
    ExponentSet::new(r, coords).map_err(PolytopeError::from)
}

/// Certificate that a non-vertex lattice point `m` of `P` is a positive
/// rational combination of vertices: positive integers with
/// `d_m · m = Σ d_v · v` and `d_m = Σ d_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDecomposition {
    pub d_m: BigInt,
    /// `(vertex index, coefficient)` for the vertices with nonzero weight.
    pub coefficients: Vec<(usize, BigInt)>,
}

pub fn vertex_decomposition(
    m: &[i64],
    p: &LatticePolytope,
) -> Result<VertexDecomposition, PolytopeError> {
    if !p.contains(m) || p.is_vertex(m) {
        return Err(PolytopeError::NotInterior);
    }
    let n = p.n;
    let verts = p.vertices();
    let idx: Vec<usize> = (0..verts.len()).collect();
    for size in 2..=n + 1 {
        for combo in combinations(&idx, size) {
            // affine system: coordinates plus the sum-to-one row
            let mut rows: Vec<Vec<BigRational>> = (0..n)
                .map(|row| {
                    combo
                        .iter()
                        .map(|&v| BigRational::from(BigInt::from(verts[v][row])))
                        .collect()
                })
                .collect();
            rows.push(vec![BigRational::one(); size]);
            let mut rhs: Vec<BigRational> =
                m.iter().map(|&x| BigRational::from(BigInt::from(x))).collect();
            rhs.push(BigRational::one());
            let Some(x) = linalg::solve_rational(&rows, &rhs) else {
                continue;
            };
            if x.iter().all(|c| c.is_positive()) {
                let mut lcm = BigInt::one();
                for c in &x {
                    lcm = lcm.lcm(c.denom());
                }
                let mut coeffs: Vec<BigInt> =
                    x.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
                let mut g = lcm.clone();
                for c in &coeffs {
                    g = g.gcd(c);
                }
                let d_m = &lcm / &g;
                for c in &mut coeffs {
                    *c = &*c / &g;
                }
                return Ok(VertexDecomposition {
                    d_m,
                    coefficients: combo.iter().copied().zip(coeffs).collect(),
                });
            }
        }
    }
    Err(PolytopeError::NotInterior)
}

fn combinations(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, size, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hexagon() -> ExponentSet {
        ExponentSet::new(
            2,
            vec![
                vec![1, 0],
                vec![1, 1],
                vec![0, 1],
                vec![-1, 0],
                vec![-1, -1],
                vec![0, -1],
                vec![0, 0],
            ],
        )
        .unwrap()
    }

    fn cross_poly() -> ExponentSet {
        ExponentSet::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1], vec![0, 0]],
        )
        .unwrap()
    }

    fn triangle(n: i64) -> ExponentSet {
        let mut pts = Vec::new();
        for x in 0..=n {
            for y in 0..=n - x {
                pts.push(vec![x, y]);
            }
        }
        ExponentSet::new(2, pts).unwrap()
    }

    #[test]
    fn hull_hexagon() {
        let h = convex_hull(&hexagon()).unwrap();
        assert_eq!(h.vertices().len(), 6);
        for v in h.vertices() {
            assert!(hexagon().vectors().contains(v));
            assert!(v != &vec![0, 0]);
        }
        // counterclockwise from the lexicographic minimum
        assert_eq!(h.vertices()[0], vec![-1, -1]);
        let k = h.vertices().len();
        for i in 0..k {
            assert!(
                cross2(
                    &h.vertices()[i],
                    &h.vertices()[(i + 1) % k],
                    &h.vertices()[(i + 2) % k]
                ) > 0
            );
        }
    }

    #[test]
    fn hull_segment() {
        let a = ExponentSet::segment_points(&[0, 1, 2, 3]).unwrap();
        let h = convex_hull(&a).unwrap();
        assert_eq!(h.vertices(), &[vec![0], vec![3]]);
    }

    #[test]
    fn hull_cross_polytope() {
        let h = convex_hull(&cross_poly()).unwrap();
        assert_eq!(h.vertices().len(), 4);
        assert!(!h.is_vertex(&[0, 0]));
    }

    #[test]
    fn hull_dimension_deficient() {
        let a = ExponentSet::new(2, vec![vec![0, 0], vec![1, 1], vec![2, 2]]).unwrap();
        assert!(matches!(
            convex_hull(&a),
            Err(PolytopeError::DimensionDeficient { .. })
        ));
    }

    #[test]
    fn lattice_points_hexagon() {
        let h = convex_hull(&hexagon()).unwrap();
        let pts = lattice_points(&h);
        assert_eq!(pts.len(), 7);
        assert!(pts.vectors().contains(&vec![0, 0]));
    }

    #[test]
    fn lattice_points_segment() {
        let a = ExponentSet::segment_points(&[0, 4]).unwrap();
        let pts = lattice_points(&convex_hull(&a).unwrap());
        assert_eq!(
            pts.vectors(),
            &[vec![0], vec![1], vec![2], vec![3], vec![4]]
        );
    }

    #[test]
    fn lattice_points_triangle() {
        let pts = lattice_points(&convex_hull(&triangle(2)).unwrap());
        assert_eq!(pts.len(), 6);
    }

    #[test]
    fn volume_fixtures() {
        let three = BigRational::from(BigInt::from(3));
        assert_eq!(volume(&convex_hull(&hexagon()).unwrap()), three);
        let seg = ExponentSet::segment_points(&[0, 4]).unwrap();
        assert_eq!(
            volume(&convex_hull(&seg).unwrap()),
            BigRational::from(BigInt::from(4))
        );
        assert_eq!(
            volume(&convex_hull(&cross_poly()).unwrap()),
            BigRational::from(BigInt::from(2))
        );
    }

    #[test]
    fn volume_cube() {
        let mut pts = Vec::new();
        for x in 0..=1 {
            for y in 0..=1 {
                for z in 0..=1 {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        let a = ExponentSet::new(3, pts).unwrap();
        let h = convex_hull(&a).unwrap();
        assert_eq!(h.vertices().len(), 8);
        assert_eq!(h.facets().len(), 6);
        assert_eq!(volume(&h), BigRational::one());
    }

    #[test]
    fn volume_tetrahedron_and_octahedron() {
        let tet = ExponentSet::new(
            3,
            vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        assert_eq!(
            volume(&convex_hull(&tet).unwrap()),
            BigRational::new(BigInt::from(1), BigInt::from(6))
        );
        let oct = ExponentSet::new(
            3,
            vec![
                vec![1, 0, 0],
                vec![-1, 0, 0],
                vec![0, 1, 0],
                vec![0, -1, 0],
                vec![0, 0, 1],
                vec![0, 0, -1],
            ],
        )
        .unwrap();
        assert_eq!(
            volume(&convex_hull(&oct).unwrap()),
            BigRational::new(BigInt::from(4), BigInt::from(3))
        );
    }

    #[test]
    fn degree_fixtures() {
        assert_eq!(implicit_degree(&hexagon()).unwrap(), 6);
        assert_eq!(
            implicit_degree(&ExponentSet::segment_points(&[0, 1, 2, 3]).unwrap()).unwrap(),
            3
        );
        assert_eq!(implicit_degree(&cross_poly()).unwrap(), 4);
    }

    #[test]
    fn degree_standard_triangles() {
        for n in 1..=3 {
            assert_eq!(implicit_degree(&triangle(n)).unwrap(), (n * n) as u64);
        }
    }

    #[test]
    fn degree_in_lower_dimensional_span() {
        // diagonal segment in the plane: span lattice is generated by (1,1)
        let a = ExponentSet::new(2, vec![vec![0, 0], vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(implicit_degree(&a).unwrap(), 2);
        // non-primitive diagonal: points 0, (2,2) sit at 0 and 2 in the span lattice
        let b = ExponentSet::new(2, vec![vec![0, 0], vec![2, 2]]).unwrap();
        assert_eq!(implicit_degree(&b).unwrap(), 2);
    }

    #[test]
    fn volume_translation_invariant() {
        let shifted = ExponentSet::new(
            2,
            hexagon()
                .vectors()
                .iter()
                .map(|v| vec![v[0] + 7, v[1] - 3])
                .collect(),
        )
        .unwrap();
        assert_eq!(
            volume(&convex_hull(&shifted).unwrap()),
            volume(&convex_hull(&hexagon()).unwrap())
        );
    }

    #[test]
    fn decomposition_hexagon_center() {
        let h = convex_hull(&hexagon()).unwrap();
        let d = vertex_decomposition(&[0, 0], &h).unwrap();
        assert_eq!(d.d_m, BigInt::from(2));
        assert_eq!(d.coefficients.len(), 2);
        // antipodal pair with coefficient 1 each
        let (i, j) = (d.coefficients[0].0, d.coefficients[1].0);
        let vi = &h.vertices()[i];
        let vj = &h.vertices()[j];
        assert_eq!(vi[0] + vj[0], 0);
        assert_eq!(vi[1] + vj[1], 0);
        assert!(d.coefficients.iter().all(|(_, c)| c.is_one()));
    }

    #[test]
    fn decomposition_segment_midpoint() {
        let a = ExponentSet::segment_points(&[0, 1, 2]).unwrap();
        let h = convex_hull(&a).unwrap();
        let d = vertex_decomposition(&[1], &h).unwrap();
        assert_eq!(d.d_m, BigInt::from(2));
        assert_eq!(d.coefficients.len(), 2);
    }

    #[test]
    fn decomposition_triangle_edge_midpoint() {
        let h = convex_hull(&triangle(2)).unwrap();
        let d = vertex_decomposition(&[1, 1], &h).unwrap();
        // 2·(1,1) = (2,0) + (0,2)
        assert_eq!(d.d_m, BigInt::from(2));
        let verts: Vec<&Vec<i64>> = d
            .coefficients
            .iter()
            .map(|(i, _)| &h.vertices()[*i])
            .collect();
        assert!(verts.contains(&&vec![2, 0]) && verts.contains(&&vec![0, 2]));
    }

    #[test]
    fn decomposition_identities_hold() {
        let h = convex_hull(&hexagon()).unwrap();
        for m in lattice_points(&h).vectors() {
            if h.is_vertex(m) {
                continue;
            }
            let d = vertex_decomposition(m, &h).unwrap();
            let sum_d: BigInt = d.coefficients.iter().map(|(_, c)| c.clone()).sum();
            assert_eq!(sum_d, d.d_m);
            for c in 0..2 {
                let lhs = &d.d_m * BigInt::from(m[c]);
                let rhs: BigInt = d
                    .coefficients
                    .iter()
                    .map(|(i, coef)| coef * BigInt::from(h.vertices()[*i][c]))
                    .sum();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn decomposition_rejects_vertices_and_outside() {
        let h = convex_hull(&hexagon()).unwrap();
        assert!(vertex_decomposition(&[1, 0], &h).is_err());
        assert!(vertex_decomposition(&[5, 5], &h).is_err());
    }
}
