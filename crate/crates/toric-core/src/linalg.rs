//! Exact integer/rational elimination shared by the lattice and
//! implicitization modules.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rank_bareiss(m: &[Vec<BigInt>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        for i in row + 1..rows {
            for j in col + 1..cols {
                let t = &a[i][j] * &a[row][col] - &a[i][col] * &a[row][j];
                a[i][j] = t / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        row += 1;
    }
    row
}

/// Basis of the saturated lattice `ker(M) ∩ ℤ^cols`.
///
/// Row-reduces `Mᵀ` alongside an identity block with unimodular row
/// operations (the Euclidean version of Hermite reduction); identity rows
/// paired with zero rows of the reduced `Mᵀ` form a basis of the left kernel
/// of `Mᵀ`, i.e. of the integer kernel of `M`. Vectors are normalized to have
/// positive leading entry and sorted lexicographically.
pub fn integer_kernel_basis(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    // a = [Mᵀ | I], c rows of length rows + cols
    let mut a: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            let mut r: Vec<BigInt> = (0..rows).map(|i| m[i][j].clone()).collect();
            for k in 0..cols {
                r.push(if k == j { BigInt::one() } else { BigInt::zero() });
            }
            r
        })
        .collect();

    let mut pivrow = 0;
    for col in 0..rows {
        loop {
            let nz: Vec<usize> = (pivrow..cols).filter(|&i| !a[i][col].is_zero()).collect();
            match nz.len() {
                0 => break,
                1 => {
                    a.swap(pivrow, nz[0]);
                    pivrow += 1;
                    break;
                }
                _ => {
                    // reduce everything by the entry of least magnitude
                    let min = *nz
                        .iter()
                        .min_by_key(|&&i| a[i][col].abs())
                        .expect("nonempty");
                    a.swap(pivrow, min);
                    for i in nz {
                        let i = if i == min { pivrow } else if i == pivrow { min } else { i };
                        if i == pivrow {
                            continue;
                        }
                        let q = &a[i][col] / &a[pivrow][col];
                        if !q.is_zero() {
                            for k in 0..rows + cols {
                                let t = &a[i][k] - &q * &a[pivrow][k];
                                a[i][k] = t;
                            }
                        }
                    }
                }
            }
        }
        if pivrow == cols {
            break;
        }
    }

    let mut basis: Vec<Vec<BigInt>> = a[pivrow..]
        .iter()
        .map(|r| r[rows..].to_vec())
        .map(normalize_sign)
        .collect();
    basis.sort();
    basis
}

fn normalize_sign(mut v: Vec<BigInt>) -> Vec<BigInt> {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut v {
                *x = -x.clone();
            }
        }
    }
    v
}

/// Primitive-integer basis of the rational nullspace of a matrix with
/// rational entries. Forward elimination is fraction-free on the
/// denominator-cleared rows; back substitution runs over ℚ.
pub fn rational_nullspace(rows_in: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigInt>> {
    // clear each row to a primitive integer row (row scaling keeps the nullspace)
    let mut m: Vec<Vec<BigInt>> = rows_in
        .iter()
        .map(|row| {
            debug_assert_eq!(row.len(), cols);
            let mut lcm = BigInt::one();
            for x in row {
                lcm = lcm.lcm(x.denom());
            }
            let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            let mut g = BigInt::zero();
            for x in &ints {
                g = g.gcd(x);
            }
            if g.is_zero() || g.is_one() {
                ints
            } else {
                ints.into_iter().map(|x| x / &g).collect()
            }
        })
        .collect();

    let rows = m.len();
    let mut piv_cols: Vec<usize> = Vec::new();
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        for i in row + 1..rows {
            for j in col + 1..cols {
                let t = &m[i][j] * &m[row][col] - &m[i][col] * &m[row][j];
                m[i][j] = t / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        piv_cols.push(col);
        row += 1;
    }
    let rank = piv_cols.len();
    let free_cols: Vec<usize> = (0..cols).filter(|c| !piv_cols.contains(c)).collect();

    let mut basis = Vec::with_capacity(free_cols.len());
    for &f in &free_cols {
        let mut x: Vec<BigRational> = vec![BigRational::zero(); cols];
        x[f] = BigRational::one();
        for i in (0..rank).rev() {
            let pc = piv_cols[i];
            let mut s = BigRational::zero();
            for j in pc + 1..cols {
                if !m[i][j].is_zero() && !x[j].is_zero() {
                    s += BigRational::from(m[i][j].clone()) * &x[j];
                }
            }
            x[pc] = -s / BigRational::from(m[i][pc].clone());
        }
        basis.push(clear_to_primitive(&x));
    }
    basis
}

/// Scale a rational vector to a primitive integer vector whose first nonzero
/// entry is positive.
pub fn clear_to_primitive(v: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    let ints = if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    };
    normalize_sign(ints)
}

/// Solve the square-ish exact system `A·x = b` over ℚ by Gaussian
/// elimination. Returns `None` when the system is singular or inconsistent.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    if rows == 0 {
        return None;
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let mut piv_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].clone();
        for j in col..=cols {
            let t = &m[row][j] / &inv;
            m[row][j] = t;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=cols {
                    let t = &m[i][j] - &f * &m[row][j];
                    m[i][j] = t;
                }
            }
        }
        piv_cols.push(col);
        row += 1;
    }
    // inconsistent?
    for i in row..rows {
        if !m[i][cols].is_zero() {
            return None;
        }
    }
    if piv_cols.len() < cols {
        return None; // underdetermined: no unique solution
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &pc) in piv_cols.iter().enumerate() {
        x[pc] = m[i][cols].clone();
    }
    Some(x)
}
