//! Small dense linear algebra: a row-major matrix, LU solve, cyclic Jacobi
//! eigen-decomposition and implicit QL for symmetric tridiagonal matrices.

use crate::error::{domain, LabError, Result};

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(LabError::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[l * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Max row sum of absolute values.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self, rel_tol: f64) -> bool {
        let scale = self.max_abs();
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= rel_tol * scale))
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Solve A x = b by LU with partial pivoting.
pub fn lu_solve(a: &Mat, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.rows;
    if a.cols != n || b.len() != n {
        return Err(LabError::Dimension("lu_solve needs a square system".into()));
    }
    let mut m = a.clone();
    let mut x = b.to_vec();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[(i, col)].abs().total_cmp(&m[(j, col)].abs())).expect("non-empty");
        if m[(piv, col)] == 0.0 {
            return domain("singular matrix in lu_solve");
        }
        if piv != col {
            for j in 0..n {
                m.data.swap(piv * n + j, col * n + j);
            }
            x.swap(piv, col);
        }
        let d = m[(col, col)];
        for i in col + 1..n {
            let f = m[(i, col)] / d;
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                m.data[i * n + j] -= f * m.data[col * n + j];
            }
            x[i] -= f * x[col];
        }
    }
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| m[(i, j)] * x[j]).sum();
        x[i] = (x[i] - s) / m[(i, i)];
    }
    Ok(x)
}

/// Result of [`dense_symmetric_eigen`].
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    /// eigenvalues in descending order (only the first `want`)
    pub values: Vec<f64>,
    /// matching unit eigenvectors, one per entry of `values`
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
    /// off-diagonal Frobenius norm at exit divided by ‖M‖_F
    pub relative_off_norm: f64,
}

pub const JACOBI_SWEEP_CAP: usize = 30;

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix.
///
/// A pair (p, q) is rotated while |a_pq| > eps √|a_pp a_qq|; this relative
/// criterion lets tiny eigenvalues of graded matrices converge to high
/// relative accuracy. Entries below eps² ‖M‖_F are left alone; otherwise
/// the deep tail of a graded matrix keeps the sweeps going long after the
/// leading eigenvalues have settled. The run stops after a sweep without rotations; the
/// off-diagonal Frobenius norm is then far below 1e-13 ‖M‖.
pub fn dense_symmetric_eigen(m: &Mat, want: usize) -> Result<SymmetricEigen> {
    let n = m.rows;
    if m.cols != n {
        return Err(LabError::Dimension("eigen needs a square matrix".into()));
    }
    if !m.is_symmetric(1e-14) {
        return domain("matrix is not symmetric");
    }
    let mut a = m.clone();
    let mut v = Mat::identity(n);
    let eps = f64::EPSILON;
    let floor = eps * eps * m.frobenius();
    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                if apq.abs() <= eps * (app * aqq).abs().sqrt() || apq.abs() <= floor {
                    continue;
                }
                rotated = true;
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                let tau = s / (1.0 + c);
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[(r, p)];
                    let arq = a[(r, q)];
                    let np = arp - s * (arq + tau * arp);
                    let nq = arq + s * (arp - tau * arq);
                    a[(r, p)] = np;
                    a[(p, r)] = np;
                    a[(r, q)] = nq;
                    a[(q, r)] = nq;
                }
                for r in 0..n {
                    let vrp = v[(r, p)];
                    let vrq = v[(r, q)];
                    v[(r, p)] = vrp - s * (vrq + tau * vrp);
                    v[(r, q)] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
        sweeps += 1;
        if !rotated {
            break;
        }
        if sweeps >= JACOBI_SWEEP_CAP {
            return Err(LabError::NonConvergence { what: "cyclic Jacobi", iterations: sweeps });
        }
    }
    let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[(i, j)].powi(2)).sum::<f64>().sqrt();
    let scale = m.frobenius().max(f64::MIN_POSITIVE);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    order.truncate(want.min(n));
    Ok(SymmetricEigen {
        values: order.iter().map(|&i| a[(i, i)]).collect(),
        vectors: order.iter().map(|&i| (0..n).map(|r| v[(r, i)]).collect()).collect(),
        sweeps,
        relative_off_norm: off / scale,
    })
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (length n-1), ascending, by implicit-shift QL.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 || off.len() + 1 != n {
        return Err(LabError::Dimension("tridiagonal needs n diagonal and n-1 off-diagonal entries".into()));
    }
    let mut d = diag.to_vec();
    let mut e: Vec<f64> = off.to_vec();
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(LabError::NonConvergence { what: "tridiagonal QL", iterations: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lu_solves_random_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = 30;
        let noise: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let a = Mat::from_fn(n, n, |i, j| if i == j { 5.0 } else { noise[i * n + j] / (1 + i + j) as f64 });
        let x: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
        let b = a.matvec(&x);
        let got = lu_solve(&a, &b).unwrap();
        for i in 0..n {
            assert!((got[i] - x[i]).abs() < 1e-13);
        }
    }

    #[test]
    fn two_by_two() {
        let m = Mat::from_fn(2, 2, |i, j| if i == j { 2.0 } else { 1.0 });
        let e = dense_symmetric_eigen(&m, 2).unwrap();
        assert!((e.values[0] - 3.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal_is_fixed_point() {
        let m = Mat::from_fn(4, 4, |i, j| if i == j { [3.0, -1.0, 7.0, 0.5][i] } else { 0.0 });
        let e = dense_symmetric_eigen(&m, 4).unwrap();
        assert_eq!(e.values, vec![7.0, 3.0, 0.5, -1.0]);
        assert_eq!(e.sweeps, 1);
    }

    #[test]
    fn random_residuals() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 20;
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let x = rng.gen_range(-1.0..1.0);
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        let e = dense_symmetric_eigen(&m, n).unwrap();
        let norm = m.frobenius();
        for (lam, v) in e.values.iter().zip(&e.vectors) {
            let mv = m.matvec(v);
            let res: f64 = mv.iter().zip(v).map(|(a, b)| (a - lam * b).powi(2)).sum::<f64>().sqrt();
            assert!(res < 1e-11 * norm);
        }
        assert!(e.relative_off_norm < 1e-13);
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn rejects_asymmetric() {
        let m = Mat::from_fn(2, 2, |i, j| (i * 2 + j) as f64);
        assert!(dense_symmetric_eigen(&m, 2).is_err());
    }

    #[test]
    fn tridiagonal_two_by_two() {
        // [[a, b], [b, c]] -> (a+c)/2 ± √(((a-c)/2)² + b²)
        let (a, b, c) = (1.0, -2.0, 4.0);
        let ev = tridiagonal_eigenvalues(&[a, c], &[b]).unwrap();
        let h = (((a - c) / 2.0f64).powi(2) + b * b).sqrt();
        assert!((ev[0] - ((a + c) / 2.0 - h)).abs() < 1e-14);
        assert!((ev[1] - ((a + c) / 2.0 + h)).abs() < 1e-14);
    }

    #[test]
    fn tridiagonal_matches_jacobi() {
        // discrete Laplacian: 2 - 2cos(jπ/(n+1))
        let n = 50;
        let ev = tridiagonal_eigenvalues(&vec![2.0; n], &vec![-1.0; n - 1]).unwrap();
        for (j, lam) in ev.iter().enumerate() {
            let want = 2.0 - 2.0 * ((j + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((lam - want).abs() < 1e-13);
        }
    }
}
