//! Dense complex matrices and a cyclic Jacobi eigensolver for Hermitian
//! matrices.
//!
//! Matrices here are at most a few hundred rows in normal use, so the solver
//! favours simplicity and determinism over asymptotic speed. Real symmetric
//! input takes a pure `f64` path, which keeps real eigenvectors exactly real.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm, relative to the matrix norm, at which the
/// Jacobi iteration stops.
pub const JACOBI_TOLERANCE: f64 = 1e-12;
const MAX_SWEEPS: usize = 60;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.data.iter().all(|z| z.im.abs() <= tol)
    }

    /// Largest `|a_ij - conj(a_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Eigenpairs of a Hermitian matrix, sorted by decreasing eigenvalue.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// `vectors[i]` is the unit eigenvector for `values[i]`.
    pub vectors: Vec<Vec<Complex64>>,
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Sweeps stop once the off-diagonal Frobenius norm falls below
/// `JACOBI_TOLERANCE` times the Frobenius norm of the input. Each
/// eigenvector's phase is fixed so that its first component of magnitude
/// above `1e-12` is real and positive.
pub fn hermitian_eigen(a: &CMatrix) -> Result<Eigen> {
    if a.rows != a.cols {
        return Err(Error::Precondition("eigendecomposition needs a square matrix".into()));
    }
    let (values, mut vectors) = if a.is_real(0.0) {
        let dense: Vec<f64> = a.data.iter().map(|z| z.re).collect();
        let (vals, vecs) = jacobi_real(dense, a.rows)?;
        let vecs = vecs
            .chunks(a.rows.max(1))
            .map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect::<Vec<Vec<_>>>();
        (vals, vecs)
    } else {
        let (vals, vecs) = jacobi_complex(a.data.clone(), a.rows)?;
        let vecs = vecs.chunks(a.rows.max(1)).map(|r| r.to_vec()).collect();
        (vals, vecs)
    };
    if a.rows == 0 {
        vectors.clear();
    }

    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let values: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut vectors: Vec<Vec<Complex64>> = order.iter().map(|&i| vectors[i].clone()).collect();
    for v in vectors.iter_mut() {
        if let Some(lead) = v.iter().copied().find(|z| z.norm() > 1e-12) {
            let phase = lead.conj() / lead.norm();
            for z in v.iter_mut() {
                *z *= phase;
            }
        }
    }
    Ok(Eigen { values, vectors })
}

fn jacobi_real(mut a: Vec<f64>, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut vt = vec![0.0; n * n];
    for i in 0..n {
        vt[i * n + i] = 1.0;
    }
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = JACOBI_TOLERANCE * norm.max(f64::MIN_POSITIVE);
    let skip = target / n.max(1) as f64;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off = off_norm(n, |i, j| a[i * n + j] * a[i * n + j]);
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= skip {
                    continue;
                }
                let (app, aqq) = (a[p * n + p], a[q * n + q]);
                let (c, s, t) = rotation(app, aqq, apq);
                let (rp, rq) = two_rows(&mut a, n, p, q);
                for k in 0..n {
                    let (x, y) = (rp[k], rq[k]);
                    rp[k] = c * x - s * y;
                    rq[k] = s * x + c * y;
                }
                for k in 0..n {
                    a[k * n + p] = a[p * n + k];
                    a[k * n + q] = a[q * n + k];
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                let (vp, vq) = two_rows(&mut vt, n, p, q);
                for k in 0..n {
                    let (x, y) = (vp[k], vq[k]);
                    vp[k] = c * x - s * y;
                    vq[k] = s * x + c * y;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }
    let values = (0..n).map(|i| a[i * n + i]).collect();
    Ok((values, vt))
}

fn jacobi_complex(mut a: Vec<Complex64>, n: usize) -> Result<(Vec<f64>, Vec<Complex64>)> {
    let mut vt = vec![ZERO; n * n];
    for i in 0..n {
        vt[i * n + i] = ONE;
    }
    let norm = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let target = JACOBI_TOLERANCE * norm.max(f64::MIN_POSITIVE);
    let skip = target / n.max(1) as f64;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off = off_norm(n, |i, j| a[i * n + j].norm_sqr());
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let z = a[p * n + q];
                let mag = z.norm();
                if mag <= skip {
                    continue;
                }
                let e = z / mag;
                let (app, aqq) = (a[p * n + p].re, a[q * n + q].re);
                let (c, s, t) = rotation(app, aqq, mag);
                // U = [[c, s], [-s conj(e), c conj(e)]] on coordinates (p, q);
                // rows of U^* A U follow from Hermitian symmetry.
                let se = e * s;
                let ce = e * c;
                let (rp, rq) = two_rows(&mut a, n, p, q);
                for k in 0..n {
                    let (x, y) = (rp[k], rq[k]);
                    rp[k] = x * c - se * y;
                    rq[k] = x * s + ce * y;
                }
                for k in 0..n {
                    a[k * n + p] = a[p * n + k].conj();
                    a[k * n + q] = a[q * n + k].conj();
                }
                a[p * n + p] = Complex64::new(app - t * mag, 0.0);
                a[q * n + q] = Complex64::new(aqq + t * mag, 0.0);
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                let (sc, cc) = (se.conj(), ce.conj());
                let (vp, vq) = two_rows(&mut vt, n, p, q);
                for k in 0..n {
                    let (x, y) = (vp[k], vq[k]);
                    vp[k] = x * c - sc * y;
                    vq[k] = x * s + cc * y;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }
    let values = (0..n).map(|i| a[i * n + i].re).collect();
    Ok((values, vt))
}

/// Rotation `(c, s, t)` annihilating the real off-diagonal `apq` of
/// `[[app, apq], [apq, aqq]]`.
fn rotation(app: f64, aqq: f64, apq: f64) -> (f64, f64, f64) {
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    (c, t * c, t)
}

fn off_norm(n: usize, sq: impl Fn(usize, usize) -> f64) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += sq(i, j);
            }
        }
    }
    s.sqrt()
}

fn two_rows<T>(data: &mut [T], n: usize, p: usize, q: usize) -> (&mut [T], &mut [T]) {
    debug_assert!(p < q);
    let (head, tail) = data.split_at_mut(q * n);
    (&mut head[p * n..(p + 1) * n], &mut tail[..n])
}
