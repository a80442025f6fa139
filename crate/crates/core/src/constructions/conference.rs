//! Real Hadamard and conference matrices, and the redundancy-two ETFs they
//! encode as Gram matrices.

use num_complex::Complex64;

use crate::algebra::numbers::is_prime_power;
use crate::algebra::FiniteField;
use crate::error::{invalid, Error, Result};
use crate::frames::{gram_to_frame, Frame, GramMatrix};

/// Square matrix with integer entries, row-major.
pub type IntMatrix = Vec<Vec<i32>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

/// Zero diagonal, `+-1` elsewhere, `C C^T = (n-1) I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConferenceMatrix {
    entries: IntMatrix,
    symmetry: Symmetry,
}

impl ConferenceMatrix {
    /// Validates the defining identities in exact integer arithmetic.
    pub fn new(entries: IntMatrix) -> Result<Self> {
        let n = entries.len();
        if n < 2 || entries.iter().any(|r| r.len() != n) {
            return Err(invalid("conference matrix", "needs a square matrix of order >= 2"));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let ok = if i == j { x == 0 } else { x == 1 || x == -1 };
                if !ok {
                    return Err(invalid("conference matrix", format!("bad entry {x} at ({i}, {j})")));
                }
            }
        }
        let symmetry = if (0..n).all(|i| (0..n).all(|j| entries[i][j] == entries[j][i])) {
            Symmetry::Symmetric
        } else if (0..n).all(|i| (0..n).all(|j| entries[i][j] == -entries[j][i])) {
            Symmetry::Antisymmetric
        } else {
            return Err(invalid("conference matrix", "neither symmetric nor antisymmetric"));
        };
        if !rows_orthogonal(&entries, (n - 1) as i64) {
            return Err(invalid("conference matrix", format!("C C^T != {} I", n - 1)));
        }
        Ok(ConferenceMatrix { entries, symmetry })
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.entries[i][j]
    }
}

/// `A A^T = d I` for a square integer matrix.
fn rows_orthogonal(a: &IntMatrix, d: i64) -> bool {
    let n = a.len();
    (0..n).all(|i| {
        (i..n).all(|j| {
            let s: i64 = a[i].iter().zip(&a[j]).map(|(&x, &y)| (x * y) as i64).sum();
            s == if i == j { d } else { 0 }
        })
    })
}

pub fn is_hadamard(h: &IntMatrix) -> bool {
    let n = h.len();
    h.iter().all(|r| r.len() == n && r.iter().all(|&x| x == 1 || x == -1)) && rows_orthogonal(h, n as i64)
}

/// A real Hadamard matrix of the given order with an all-ones first row, if
/// one can be built from Sylvester doubling and the two Paley
/// constructions.
pub fn hadamard_matrix(order: usize) -> Option<IntMatrix> {
    let mut h = raw_hadamard(order)?;
    let signs = h[0].clone();
    for row in h.iter_mut() {
        for (x, s) in row.iter_mut().zip(&signs) {
            *x *= s;
        }
    }
    debug_assert!(is_hadamard(&h));
    Some(h)
}

fn raw_hadamard(n: usize) -> Option<IntMatrix> {
    match n {
        0 => return None,
        1 => return Some(vec![vec![1]]),
        2 => return Some(vec![vec![1, 1], vec![1, -1]]),
        _ if n % 4 != 0 => return None,
        _ => {}
    }
    let q = (n - 1) as u64;
    if is_prime_power(q).is_some() && q % 4 == 3 {
        let c = paley_conference(q).ok()?;
        let mut h = c.entries;
        for (i, row) in h.iter_mut().enumerate() {
            row[i] = 1;
        }
        return Some(h);
    }
    let q = (n / 2 - 1) as u64;
    if is_prime_power(q).is_some() && q % 4 == 1 {
        let c = paley_conference(q).ok()?;
        let m = c.order();
        let mut h = vec![vec![0; n]; n];
        for i in 0..m {
            for j in 0..m {
                let x = c.entries[i][j];
                let block = if x != 0 { [[x, x], [x, -x]] } else { [[1, -1], [-1, -1]] };
                for a in 0..2 {
                    for b in 0..2 {
                        h[2 * i + a][2 * j + b] = block[a][b];
                    }
                }
            }
        }
        return Some(h);
    }
    let half = raw_hadamard(n / 2)?;
    Some(sylvester_double(&half))
}

/// `[[A, A], [A, -A]]`.
fn sylvester_double(a: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let mut out = vec![vec![0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let x = a[i][j];
            out[i][j] = x;
            out[i][j + n] = x;
            out[i + n][j] = x;
            out[i + n][j + n] = -x;
        }
    }
    out
}

/// Paley conference matrix of order `q + 1`: the quadratic character table
/// of GF(q) with a border of ones. Symmetric when `q = 1 mod 4`,
/// antisymmetric when `q = 3 mod 4`.
pub fn paley_conference(q: u64) -> Result<ConferenceMatrix> {
    is_prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "Paley conference matrices need odd q, got {q}"
        )));
    }
    let field = FiniteField::new(q)?;
    let n = q as usize + 1;
    let eps = if q % 4 == 1 { 1 } else { -1 };
    let mut c = vec![vec![0; n]; n];
    c[0][1..].fill(1);
    for row in c.iter_mut().skip(1) {
        row[0] = eps;
    }
    for a in 0..q as u32 {
        for b in 0..q as u32 {
            c[a as usize + 1][b as usize + 1] = field.quadratic_character(field.sub(a, b)) as i32;
        }
    }
    ConferenceMatrix::new(c)
}

/// Antisymmetric conference matrix `K - I` of order `2^t` from the skew
/// Hadamard doubling `K -> [[K, K], [-K^T, K^T]]`.
pub fn skew_conference(order: usize) -> Result<ConferenceMatrix> {
    if order < 2 || !order.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "skew conference matrices are built for orders 2^t >= 2, got {order}"
        )));
    }
    let mut k: IntMatrix = vec![vec![1, 1], vec![-1, 1]];
    while k.len() < order {
        let n = k.len();
        let mut next = vec![vec![0; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = k[i][j];
                next[i][j + n] = k[i][j];
                next[i + n][j] = -k[j][i];
                next[i + n][j + n] = k[j][i];
            }
        }
        k = next;
    }
    for (i, row) in k.iter_mut().enumerate() {
        row[i] = 0;
    }
    ConferenceMatrix::new(k)
}

/// Symmetric conference matrix of order `(h-1)^2 + 1` from an
/// antisymmetric one of order `h`.
///
/// After normalizing the first row of the input to ones, its core `S`
/// satisfies `S 1 = 0` and `S S^T = m I - J` with `m = h - 1`; then
/// `D = S (x) S + I (x) (J - I) - (J - I) (x) I` is the core of the output.
pub fn symmetric_from_skew(c: &ConferenceMatrix) -> Result<ConferenceMatrix> {
    if c.symmetry != Symmetry::Antisymmetric {
        return Err(Error::Precondition("input must be antisymmetric".into()));
    }
    let h = c.order();
    let m = h - 1;
    let sign: Vec<i32> = (0..h).map(|j| if j == 0 { 1 } else { c.get(0, j) }).collect();
    let s: IntMatrix = (1..h)
        .map(|i| (1..h).map(|j| sign[i] * c.get(i, j) * sign[j]).collect())
        .collect();
    let n = m * m + 1;
    let mut out = vec![vec![1; n]; n];
    out[0][0] = 0;
    for i in 0..m {
        for j in 0..m {
            for a in 0..m {
                for b in 0..m {
                    let kron = s[i][a] * s[j][b];
                    let left = if i == a && j != b { 1 } else { 0 };
                    let right = if i != a && j == b { 1 } else { 0 };
                    out[1 + i * m + j][1 + a * m + b] = kron + left - right;
                }
            }
        }
    }
    ConferenceMatrix::new(out)
}

/// The `(n/2) x n` ETF with Gram matrix `I + mu C` (symmetric input, real
/// frame) or `I + i mu C` (antisymmetric input, complex frame), where
/// `mu = 1/sqrt(n-1)`.
pub fn conference_to_etf(c: &ConferenceMatrix) -> Result<Frame> {
    let n = c.order();
    if n % 2 != 0 {
        return Err(invalid("conference matrix", "odd order"));
    }
    let mu = 1.0 / ((n - 1) as f64).sqrt();
    let off = match c.symmetry {
        Symmetry::Symmetric => Complex64::new(mu, 0.0),
        Symmetry::Antisymmetric => Complex64::new(0.0, mu),
    };
    let g = GramMatrix::from_fn(n, |i, j| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            off * c.get(i, j) as f64
        }
    })?;
    gram_to_frame(&g, n / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{drop_one_transform, verify_etf, welch_bound, DEFAULT_TOL};

    #[test]
    fn hadamard_orders() {
        for n in [1, 2, 4, 8, 12, 16, 20, 24, 28, 32, 36, 40, 44, 48, 52, 56, 60, 64] {
            let h = hadamard_matrix(n).unwrap_or_else(|| panic!("order {n}"));
            assert!(is_hadamard(&h), "order {n}");
            assert!(h[0].iter().all(|&x| x == 1));
        }
        assert!(hadamard_matrix(6).is_none());
        assert!(hadamard_matrix(0).is_none());
    }

    #[test]
    fn paley_conference_symmetry() {
        assert_eq!(paley_conference(5).unwrap().symmetry(), Symmetry::Symmetric);
        assert_eq!(paley_conference(7).unwrap().symmetry(), Symmetry::Antisymmetric);
        let c = paley_conference(9).unwrap();
        assert_eq!((c.order(), c.symmetry()), (10, Symmetry::Symmetric));
        assert!(paley_conference(8).is_err());
        assert!(paley_conference(15).is_err());
    }

    #[test]
    fn conference_validation() {
        assert!(ConferenceMatrix::new(vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(ConferenceMatrix::new(vec![vec![1, 1], vec![1, 0]]).is_err());
        assert!(ConferenceMatrix::new(vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).is_err());
    }

    #[test]
    fn skew_and_derived_conference() {
        for h in [2, 4, 8, 16] {
            let c = skew_conference(h).unwrap();
            assert_eq!(c.symmetry(), Symmetry::Antisymmetric);
            if h >= 4 {
                let s = symmetric_from_skew(&c).unwrap();
                assert_eq!(s.order(), (h - 1) * (h - 1) + 1);
                assert_eq!(s.symmetry(), Symmetry::Symmetric);
            }
        }
        assert!(skew_conference(12).is_err());
        let p7 = paley_conference(7).unwrap();
        assert_eq!(symmetric_from_skew(&p7).unwrap().order(), 50);
        assert!(symmetric_from_skew(&paley_conference(5).unwrap()).is_err());
    }

    #[test]
    fn conference_etfs() {
        for (c, real) in [
            (paley_conference(5).unwrap(), true),
            (paley_conference(7).unwrap(), false),
            (paley_conference(3).unwrap(), false),
            (paley_conference(9).unwrap(), true),
            (skew_conference(8).unwrap(), false),
            (symmetric_from_skew(&skew_conference(4).unwrap()).unwrap(), true),
        ] {
            let f = conference_to_etf(&c).unwrap();
            assert_eq!((f.m(), f.n(), f.is_real()), (c.order() / 2, c.order(), real));
            let r = verify_etf(&f, DEFAULT_TOL);
            assert!(r.is_etf(), "order {}", c.order());
        }
    }

    #[test]
    fn drop_one_on_paley() {
        for q in [3u64, 7, 11] {
            let f = conference_to_etf(&paley_conference(q).unwrap()).unwrap();
            let d = drop_one_transform(&f).unwrap();
            assert_eq!((d.m(), d.n()), ((q as usize).div_ceil(2), q as usize));
            let r = verify_etf(&d, DEFAULT_TOL);
            assert!(r.is_etf(), "q = {q}");
            assert!((r.coherence - welch_bound(d.m(), d.n()).unwrap()).abs() < 1e-8);
        }
    }
}
