//! Gaussian elimination over exact scalars.

use crate::scalars::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form in place, pivoting on the first nonzero entry of each column
/// in order. Returns the pivot columns.
pub fn rref(m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for x in m[row].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in 0..m[r].len() {
                if !m[row][c].is_zero() {
                    m[r][c] = &m[r][c] - &(&factor * &m[row][c]);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// The solution set `particular + span(kernel)` of `A x = b`.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

/// Solves `A x = b` exactly; free variables are set to zero in the particular solution.
/// Returns `None` when the system is inconsistent.
pub fn solve_affine(a: &Matrix, b: &[Scalar], ncols: usize) -> Option<AffineSolution> {
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut particular = vec![Scalar::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -&aug[r][f];
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, kernel })
}

pub fn nullspace(a: &Matrix, ncols: usize) -> Vec<Vec<Scalar>> {
    let zeros = vec![Scalar::zero(); a.len()];
    solve_affine(a, &zeros, ncols).expect("homogeneous systems are consistent").kernel
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    (0..k).fold(Scalar::zero(), |acc, l| {
                        if row[l].is_zero() || b[l][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&row[l] * &b[l][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn determinant(m: &Matrix) -> Scalar {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                a[r][c] = &a[r][c] - &(&f * &a[col][c]);
            }
        }
    }
    det
}
