//! Dense linear algebra for the small (at most 6×6) systems of the pipeline.

/// Row-major square matrix.
pub type Matrix = Vec<Vec<f64>>;

pub const JACOBI_TOLERANCE: f64 = 1e-10;
pub const JACOBI_MAX_SWEEPS: usize = 50;

#[derive(Clone, Debug, PartialEq)]
pub struct Eigen {
    /// Sorted descending.
    pub values: Vec<f64>,
    /// `vectors[k]` belongs to `values[k]`; unit norm, first nonzero
    /// coordinate positive.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
    pub converged: bool,
}

fn max_off_diagonal(a: &Matrix) -> f64 {
    let n = a.len();
    let mut m = 0.0f64;
    for p in 0..n {
        for q in p + 1..n {
            m = m.max(a[p][q].abs());
        }
    }
    m
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Rotations visit
/// the upper triangle row by row; iteration stops once every off-diagonal
/// entry is below [`JACOBI_TOLERANCE`] or after [`JACOBI_MAX_SWEEPS`].
pub fn jacobi_eigen(matrix: &Matrix) -> Eigen {
    let n = matrix.len();
    let mut a = matrix.clone();
    let mut v: Matrix = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let mut sweeps = 0;
    while sweeps < JACOBI_MAX_SWEEPS && max_off_diagonal(&a) >= JACOBI_TOLERANCE {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let converged = max_off_diagonal(&a) < JACOBI_TOLERANCE;
    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|k| {
            let mut col: Vec<f64> = v.iter().map(|row| row[k]).collect();
            orient(&mut col);
            (a[k][k], col)
        })
        .collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0).then_with(|| cmp_vec(&y.1, &x.1)));
    let (values, vectors) = pairs.into_iter().unzip();
    Eigen {
        values,
        vectors,
        sweeps,
        converged,
    }
}

fn cmp_vec(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Scales to unit norm and flips so the first coordinate that is not
/// numerically zero is positive.
pub fn orient(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    if let Some(&lead) = v.iter().find(|x| x.abs() > 1e-12) {
        if lead < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Gaussian elimination with partial pivoting. `None` when a pivot falls
/// below `1e-12` times the largest entry, i.e. the system is singular.
pub fn solve_pivoted(a: &Matrix, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return None;
    }
    let mut m: Matrix = a.iter().zip(b).map(|(row, &bi)| {
        let mut r = row.clone();
        r.push(bi);
        r
    }).collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-12 * scale {
            return None;
        }
        m.swap(col, pivot);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for k in col..=n {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| m[row][k] * x[k]).sum();
        x[row] = (m[row][n] - tail) / m[row][row];
    }
    Some(x)
}

/// Minimum-norm solution of `a x = b` for symmetric positive semidefinite
/// `a`, via its eigendecomposition with eigenvalues below `1e-10 · λ_max`
/// treated as zero.
pub fn solve_min_norm(a: &Matrix, b: &[f64]) -> Vec<f64> {
    let eig = jacobi_eigen(a);
    let top = eig.values.first().copied().unwrap_or(0.0).max(0.0);
    let mut x = vec![0.0; a.len()];
    for (lambda, v) in eig.values.iter().zip(&eig.vectors) {
        if *lambda > 1e-10 * top && *lambda > 0.0 {
            let coef = v.iter().zip(b).map(|(p, q)| p * q).sum::<f64>() / lambda;
            x.iter_mut().zip(v).for_each(|(xi, vi)| *xi += coef * vi);
        }
    }
    x
}

pub fn mat_vec(a: &Matrix, x: &[f64]) -> Vec<f64> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}
