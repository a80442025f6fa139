//! Finite frames, the Welch bound and ETF verification.
//!
//! A [`Frame`] is an `m x n` complex matrix whose columns are unit vectors.
//! The operations here are the numerical side of the library: verifying
//! tightness and equiangularity, moving between a frame and its Gram
//! matrix, and the Naimark complement.

mod json;

pub use json::{from_json_str, read_json, to_json_string, write_json};

use num_complex::Complex64;

use crate::algebra::group::root_of_unity;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, CMatrix};

/// Default verification tolerance.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Relative eigenvalue cutoff below which a Gram eigenvalue counts as zero.
pub const RANK_CUTOFF: f64 = 1e-6;

const UNIT_NORM_TOL: f64 = 1e-8;
const REAL_TOL: f64 = 1e-12;
const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Real,
    Complex,
}

impl FieldTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldTag::Real => "real",
            FieldTag::Complex => "complex",
        }
    }
}

impl std::str::FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(FieldTag::Real),
            "complex" => Ok(FieldTag::Complex),
            other => Err(Error::Format(format!("unknown field tag {other:?}"))),
        }
    }
}

/// `n` unit vectors in `C^m`, stored column by column.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    m: usize,
    n: usize,
    entries: Vec<Complex64>,
    field: FieldTag,
}

impl Frame {
    /// Builds a frame from column-major entries, checking that columns are
    /// unit vectors and that a real tag matches real data.
    pub fn new(m: usize, n: usize, entries: Vec<Complex64>, field: FieldTag) -> Result<Self> {
        if m == 0 || m > n {
            return Err(Error::Precondition(format!(
                "a frame needs 1 <= m <= n, got m = {m}, n = {n}"
            )));
        }
        if entries.len() != m * n {
            return Err(Error::Precondition(format!(
                "expected {} entries, got {}",
                m * n,
                entries.len()
            )));
        }
        let mut entries = entries;
        if field == FieldTag::Real {
            if let Some(z) = entries.iter().find(|z| z.im.abs() > REAL_TOL) {
                return Err(Error::Precondition(format!(
                    "real frame has an entry with imaginary part {:e}",
                    z.im
                )));
            }
            entries.iter_mut().for_each(|z| z.im = 0.0);
        }
        let frame = Frame { m, n, entries, field };
        for j in 0..n {
            let norm = frame.column_norm(j);
            if (norm - 1.0).abs() > UNIT_NORM_TOL {
                return Err(Error::Precondition(format!("column {j} has norm {norm}, expected 1")));
            }
        }
        Ok(frame)
    }

    /// Builds a frame from columns, choosing the real tag when every
    /// imaginary part is negligible.
    pub fn from_columns(columns: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = columns.len();
        let m = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != m) {
            return Err(Error::Precondition("columns have different lengths".into()));
        }
        let entries: Vec<Complex64> = columns.into_iter().flatten().collect();
        let field = detect_field(&entries);
        Self::new(m, n, entries, field)
    }

    /// Like [`Frame::from_columns`] but rescales every column to unit norm.
    pub fn from_columns_normalized(mut columns: Vec<Vec<Complex64>>) -> Result<Self> {
        for (j, c) in columns.iter_mut().enumerate() {
            let norm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(Error::Precondition(format!("column {j} is zero")));
            }
            c.iter_mut().for_each(|z| *z /= norm);
        }
        Self::from_columns(columns)
    }

    /// Builds a frame from a row-major `m x n` matrix.
    pub fn from_matrix(a: &CMatrix) -> Result<Self> {
        let columns = (0..a.cols())
            .map(|j| (0..a.rows()).map(|i| a.get(i, j)).collect())
            .collect();
        Self::from_columns(columns)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn is_real(&self) -> bool {
        self.field == FieldTag::Real
    }

    pub fn column(&self, j: usize) -> &[Complex64] {
        &self.entries[j * self.m..(j + 1) * self.m]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks(self.m)
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[j * self.m + i]
    }

    /// Column-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// `<phi_i, phi_j>`, conjugate-linear in the first argument.
    pub fn inner(&self, i: usize, j: usize) -> Complex64 {
        dot(self.column(i), self.column(j))
    }

    fn column_norm(&self, j: usize) -> f64 {
        self.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// The `m x n` synthesis matrix, row-major.
    pub fn to_matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.m, self.n, |i, j| self.entry(i, j))
    }

    /// Frame operator `Phi Phi^*`.
    pub fn frame_operator(&self) -> CMatrix {
        let m = self.m;
        let mut s = CMatrix::zeros(m, m);
        for col in self.columns() {
            for a in 0..m {
                for b in a..m {
                    let v = s.get(a, b) + col[a] * col[b].conj();
                    s.set(a, b, v);
                }
            }
        }
        for a in 0..m {
            for b in 0..a {
                s.set(a, b, s.get(b, a).conj());
            }
        }
        s
    }

    /// Gram matrix `Phi^* Phi`.
    pub fn gram(&self) -> GramMatrix {
        let n = self.n;
        let mut g = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.inner(i, j);
                g.set(i, j, v);
                g.set(j, i, v.conj());
            }
        }
        GramMatrix { entries: g }
    }

    /// Largest absolute off-diagonal inner product.
    fn max_cosine(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                worst = worst.max(self.inner(i, j).norm());
            }
        }
        worst
    }
}

/// Self-adjoint `n x n` matrix, typically the Gram matrix of a frame.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    entries: CMatrix,
}

impl GramMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.rows() != entries.cols() {
            return Err(Error::Precondition("Gram matrix must be square".into()));
        }
        let defect = entries.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::Precondition(format!(
                "Gram matrix is not self-adjoint (defect {defect:e})"
            )));
        }
        Ok(GramMatrix { entries })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Result<Self> {
        Self::new(CMatrix::from_fn(n, n, f))
    }

    pub fn n(&self) -> usize {
        self.entries.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries.get(i, j)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn has_unit_diagonal(&self, tol: f64) -> bool {
        (0..self.n()).all(|i| (self.get(i, i) - Complex64::new(1.0, 0.0)).norm() <= tol)
    }
}

/// Outcome of [`verify_etf`].
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct VerificationReport {
    pub unit_norm: bool,
    pub tight: bool,
    pub equiangular: bool,
    pub coherence: f64,
    pub welch_bound: f64,
    pub max_tightness_residual: f64,
    pub max_angle_deviation: f64,
}

impl VerificationReport {
    pub fn is_etf(&self) -> bool {
        self.unit_norm && self.tight && self.equiangular
    }
}

/// `sqrt((n - m) / (m (n - 1)))`, the smallest possible coherence of `n`
/// unit vectors in dimension `m`.
pub fn welch_bound(m: usize, n: usize) -> Result<f64> {
    if m == 0 || n < m {
        return Err(Error::InvalidParameter(format!(
            "Welch bound needs 1 <= m <= n, got ({m}, {n})"
        )));
    }
    if n == m {
        return Ok(0.0);
    }
    let (m, n) = (m as f64, n as f64);
    Ok(((n - m) / (m * (n - 1.0))).sqrt())
}

/// Largest `|<phi_i, phi_j>|` over distinct columns.
pub fn coherence(f: &Frame) -> Result<f64> {
    if f.n() < 2 {
        return Err(Error::Precondition("coherence needs at least two vectors".into()));
    }
    Ok(f.max_cosine())
}

/// Checks tightness and equiangularity to within `tol`.
pub fn verify_etf(f: &Frame, tol: f64) -> VerificationReport {
    let (m, n) = (f.m(), f.n());
    let unit_norm = (0..n).all(|j| (f.column_norm(j) - 1.0).abs() <= tol);

    let s = f.frame_operator();
    let scale = n as f64 / m as f64;
    let mut max_tightness_residual = 0.0f64;
    for a in 0..m {
        for b in 0..m {
            let want = if a == b { scale } else { 0.0 };
            let r = (s.get(a, b) - Complex64::new(want, 0.0)).norm();
            max_tightness_residual = max_tightness_residual.max(r);
        }
    }

    let mut cosines = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            cosines.push(f.inner(i, j).norm());
        }
    }
    let coherence = cosines.iter().copied().fold(0.0, f64::max);
    let max_angle_deviation = if cosines.is_empty() {
        0.0
    } else {
        let mean = cosines.iter().sum::<f64>() / cosines.len() as f64;
        cosines.iter().map(|c| (c - mean).abs()).fold(0.0, f64::max)
    };
    let welch = welch_bound(m, n).expect("frame dimensions satisfy 1 <= m <= n");
    let report = VerificationReport {
        unit_norm,
        tight: max_tightness_residual <= tol,
        equiangular: max_angle_deviation <= tol,
        coherence,
        welch_bound: welch,
        max_tightness_residual,
        max_angle_deviation,
    };
    debug_assert!(
        !report.is_etf() || (report.coherence - welch).abs() <= 10.0 * tol,
        "ETF with coherence {} away from Welch bound {}",
        report.coherence,
        welch
    );
    report
}

/// The `(n - m) x n` frame whose scaled rows complete the scaled rows of
/// `f` to an orthonormal basis of `C^n`.
pub fn naimark_complement(f: &Frame) -> Result<Frame> {
    let (m, n) = (f.m(), f.n());
    if n == m {
        return Err(Error::Precondition("a square frame has no Naimark complement".into()));
    }
    let report = verify_etf(f, DEFAULT_TOL);
    if !report.tight {
        return Err(Error::Precondition(format!(
            "frame is not tight (residual {:e})",
            report.max_tightness_residual
        )));
    }
    let scale = (m as f64 / n as f64).sqrt();
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for i in 0..m {
        let row = (0..n).map(|j| f.entry(i, j) * scale).collect();
        push_orthonormal(&mut basis, row);
    }
    // residual[k] = squared distance from e_k to the current span
    let mut residual: Vec<f64> = (0..n)
        .map(|k| 1.0 - basis.iter().map(|q| q[k].norm_sqr()).sum::<f64>())
        .collect();
    let mut extra = Vec::with_capacity(n - m);
    for _ in m..n {
        let (k, _) = residual.iter().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |best, (k, &r)| if r > best.1 { (k, r) } else { best },
        );
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[k] = Complex64::new(1.0, 0.0);
        push_orthonormal(&mut basis, e);
        let q = basis.last().expect("just pushed");
        for (r, z) in residual.iter_mut().zip(q) {
            *r -= z.norm_sqr();
        }
        extra.push(basis.len() - 1);
    }
    let rescale = (n as f64 / (n - m) as f64).sqrt();
    let columns: Vec<Vec<Complex64>> = (0..n)
        .map(|j| extra.iter().map(|&r| basis[r][j] * rescale).collect())
        .collect();
    let entries: Vec<Complex64> = columns.into_iter().flatten().collect();
    Frame::new(n - m, n, entries, f.field())
}

/// Gram-Schmidt with a second orthogonalization pass.
fn push_orthonormal(basis: &mut Vec<Vec<Complex64>>, mut v: Vec<Complex64>) {
    for _ in 0..2 {
        for q in basis.iter() {
            let c = dot(q, &v);
            for (x, y) in v.iter_mut().zip(q) {
                *x -= c * y;
            }
        }
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    basis.push(v);
}

/// Factors a Gram matrix of numerical rank `m` as `Phi^* Phi`.
///
/// A Gram matrix that is a multiple of a projection (the Gram matrix of any
/// tight frame) is factored through a pivoted Gram-Schmidt basis of its
/// columns. Anything else goes through the eigendecomposition: rows of
/// `Phi` are then the top `m` eigenvectors (conjugated) scaled by the
/// square roots of their eigenvalues. Both paths are deterministic.
pub fn gram_to_frame(g: &GramMatrix, m: usize) -> Result<Frame> {
    if let Some(entries) = projection_factor(g, m) {
        let field = gram_field(g, &entries);
        return Frame::new(m, g.n(), entries, field);
    }
    let n = g.n();
    let eig = hermitian_eigen(g.matrix())?;
    let lmax = eig.values.first().copied().unwrap_or(0.0);
    if lmax <= 0.0 {
        return Err(Error::RankMismatch { expected: m, found: 0 });
    }
    let cutoff = RANK_CUTOFF * lmax;
    if let Some(&neg) = eig.values.iter().find(|&&v| v < -cutoff) {
        return Err(Error::NotPositiveSemidefinite(neg));
    }
    let rank = eig.values.iter().filter(|&&v| v > cutoff).count();
    if rank != m {
        return Err(Error::RankMismatch {
            expected: m,
            found: rank,
        });
    }
    let mut entries = Vec::with_capacity(m * n);
    for j in 0..n {
        for i in 0..m {
            entries.push(eig.vectors[i][j].conj() * eig.values[i].sqrt());
        }
    }
    let field = gram_field(g, &entries);
    Frame::new(m, n, entries, field)
}

fn gram_field(g: &GramMatrix, entries: &[Complex64]) -> FieldTag {
    if g.matrix().is_real(0.0) {
        FieldTag::Real
    } else {
        detect_field(entries)
    }
}

/// Column-major entries of `Phi` with `Phi^* Phi = g` when `g = c P` for
/// an orthogonal projection `P` of rank `m`, or `None` if `g` is not of
/// that form.
fn projection_factor(g: &GramMatrix, m: usize) -> Option<Vec<Complex64>> {
    let n = g.n();
    if m == 0 || m > n {
        return None;
    }
    let c = (0..n).map(|i| g.get(i, i).re).sum::<f64>() / m as f64;
    if c.is_nan() || c <= 0.0 {
        return None;
    }
    let column = |k: usize| -> Vec<Complex64> { (0..n).map(|i| g.get(i, k) / c).collect() };
    // for a projection, the squared distance from column k to the span of
    // the basis is P_kk minus its squared coefficients
    let mut residual: Vec<f64> = (0..n).map(|k| g.get(k, k).re / c).collect();
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    for _ in 0..m {
        let (k, r) = residual.iter().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |best, (k, &r)| if r > best.1 { (k, r) } else { best },
        );
        if r < RANK_CUTOFF {
            return None;
        }
        push_orthonormal(&mut basis, column(k));
        let q = basis.last().expect("just pushed");
        for (j, res) in residual.iter_mut().enumerate() {
            let coeff: Complex64 = (0..n).map(|i| g.get(j, i) * q[i]).sum::<Complex64>() / c;
            *res -= coeff.norm_sqr();
        }
    }
    let scale = c.sqrt();
    let tol = 1e-9 * c.max(1.0);
    for i in 0..n {
        for j in i..n {
            let z: Complex64 = basis.iter().map(|q| q[i] * q[j].conj()).sum::<Complex64>() * c;
            if (z - g.get(i, j)).norm() > tol {
                return None;
            }
        }
    }
    Some(
        (0..n)
            .flat_map(|j| basis.iter().map(move |q| q[j].conj() * scale))
            .collect(),
    )
}

/// Deletes the last vector of an `m x 2m` ETF whose Gram entries off the
/// diagonal are purely imaginary, then re-tightens the remaining `2m - 1`
/// vectors with `(alpha Psi Psi^*)^{-1/2}`, `alpha = m / (2m - 1)`.
pub fn drop_one_transform(f: &Frame) -> Result<Frame> {
    let (m, n) = (f.m(), f.n());
    if n != 2 * m {
        return Err(Error::Precondition(format!(
            "drop-one needs an m x 2m frame, got {m} x {n}"
        )));
    }
    let mu = welch_bound(m, n)?;
    for i in 0..n {
        for j in i + 1..n {
            let z = f.inner(i, j);
            if z.re.abs() > DEFAULT_TOL || (z.im.abs() - mu).abs() > DEFAULT_TOL {
                return Err(Error::Precondition(format!(
                    "Gram entry ({i}, {j}) = {z} is not +-i/sqrt({})",
                    n - 1
                )));
            }
        }
    }
    // an ETF meeting the Welch bound is tight, so Psi Psi^* = 2I - phi phi^*
    // with phi the dropped vector, and the inverse square root is a
    // rank-one correction of a multiple of the identity
    let kept = n - 1;
    let alpha = m as f64 / kept as f64;
    let phi = f.column(kept);
    let base = 1.0 / (2.0 * alpha).sqrt();
    let along = 1.0 / alpha.sqrt() - base;
    let columns = (0..kept)
        .map(|j| {
            let col = f.column(j);
            let proj: Complex64 = phi.iter().zip(col).map(|(p, c)| p.conj() * c).sum();
            col.iter()
                .zip(phi)
                .map(|(&c, &p)| c * base + p * proj * along)
                .collect()
        })
        .collect();
    Frame::from_columns(columns)
}

/// Deviations of the second and fourth frame moments from their values for
/// a spherical design: `(1/n^2) sum |<phi_i, phi_j>|^{2k}` against
/// `1/m` for `k = 1` and `3/(m(m+2))` for `k = 2`.
///
/// Requires a real frame with `n = m(m+1)/2`.
pub fn spherical_moment_deviations(f: &Frame) -> Result<[f64; 2]> {
    let (m, n) = (f.m(), f.n());
    if !f.is_real() {
        return Err(Error::Precondition("spherical design test needs a real frame".into()));
    }
    if n != m * (m + 1) / 2 {
        return Err(Error::Precondition(format!(
            "spherical design test needs n = m(m+1)/2 = {}, got {n}",
            m * (m + 1) / 2
        )));
    }
    let (mut s2, mut s4) = (0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let c = f.inner(i, j).re;
            let c2 = c * c;
            s2 += c2;
            s4 += c2 * c2;
        }
    }
    let nn = (n * n) as f64;
    let mf = m as f64;
    Ok([(s2 / nn - 1.0 / mf).abs(), (s4 / nn - 3.0 / (mf * (mf + 2.0))).abs()])
}

/// Whether the antipodal set `Phi` together with `-Phi` is a spherical
/// 5-design, decided by the even moments to within `1e-8`.
pub fn is_tight_spherical_5_design(f: &Frame) -> Result<bool> {
    let dev = spherical_moment_deviations(f)?;
    Ok(dev.iter().all(|&d| d <= DEFAULT_TOL))
}

/// `m` rows of the `(m+1)`-point DFT (all but the constant row), scaled to
/// unit-norm columns. Its coherence is `1/m`.
pub fn simplex_frame(m: usize) -> Result<Frame> {
    if m == 0 {
        return Err(Error::InvalidParameter("simplex dimension must be positive".into()));
    }
    let n = m + 1;
    let scale = 1.0 / (m as f64).sqrt();
    let mut entries = Vec::with_capacity(m * n);
    for j in 0..n {
        for i in 0..m {
            entries.push(root_of_unity(((i + 1) * j) as u64, n as u64) * scale);
        }
    }
    let field = detect_field(&entries);
    Frame::new(m, n, entries, field)
}

pub(crate) fn detect_field(entries: &[Complex64]) -> FieldTag {
    if entries.iter().all(|z| z.im.abs() <= REAL_TOL) {
        FieldTag::Real
    } else {
        FieldTag::Complex
    }
}

fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}
