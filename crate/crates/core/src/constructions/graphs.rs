//! Real ETFs from strongly regular graphs and from graphical Hadamard
//! matrices.

use num_complex::Complex64;

use super::conference::IntMatrix;
use crate::algebra::numbers::is_prime_power;
use crate::algebra::FiniteField;
use crate::conditions::srg_parameters_for;
use crate::error::{invalid, Error, Result};
use crate::frames::{gram_to_frame, welch_bound, FieldTag, Frame, GramMatrix};

/// Largest Kronecker power accepted by [`graphical_hadamard_etf`].
pub const MAX_KRONECKER_POWER: u32 = 5;

/// Parameters `(v, k, lambda, mu)` of a strongly regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct SrgParameters {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParameters {
    /// Checks the counting identity `k (k - lambda - 1) = (v - k - 1) mu`.
    pub fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Result<Self> {
        let (vi, ki, li, mi) = (v as i128, k as i128, lambda as i128, mu as i128);
        let ok = k < v && (lambda < k || k == 0 && lambda == 0) && ki * (ki - li - 1) == (vi - ki - 1) * mi;
        if !ok {
            return Err(invalid(
                "SRG parameter set",
                format!("({v}, {k}, {lambda}, {mu}) violates k(k - lambda - 1) = (v - k - 1) mu"),
            ));
        }
        Ok(SrgParameters { v, k, lambda, mu })
    }
}

impl std::fmt::Display for SrgParameters {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SRG({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

/// Adjacency matrix of the Paley graph on GF(q), `q = 1 mod 4`.
pub fn paley_graph(q: u64) -> Result<Vec<Vec<bool>>> {
    is_prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q % 4 != 1 {
        return Err(Error::InvalidParameter(format!(
            "Paley graphs need q = 1 mod 4, got {q}"
        )));
    }
    let f = FiniteField::new(q)?;
    Ok((0..q as u32)
        .map(|a| (0..q as u32).map(|b| f.quadratic_character(f.sub(a, b)) == 1).collect())
        .collect())
}

/// Checks exhaustively that `adjacency` is a simple graph with parameters
/// `p`.
pub fn realizes(adjacency: &[Vec<bool>], p: &SrgParameters) -> bool {
    let v = adjacency.len();
    if v as u64 != p.v || adjacency.iter().any(|r| r.len() != v) {
        return false;
    }
    for (i, row) in adjacency.iter().enumerate() {
        if row[i] || (0..v).any(|j| row[j] != adjacency[j][i]) {
            return false;
        }
        if row.iter().filter(|&&x| x).count() as u64 != p.k {
            return false;
        }
    }
    for i in 0..v {
        for j in i + 1..v {
            let common = (0..v).filter(|&l| adjacency[i][l] && adjacency[j][l]).count() as u64;
            let want = if adjacency[i][j] { p.lambda } else { p.mu };
            if common != want {
                return false;
            }
        }
    }
    true
}

/// Real `m x (v+1)` ETF from an SRG whose parameters match `(m, v+1)`.
///
/// The Gram matrix is `I + mu S` where `S` has zero diagonal, `+1` on the
/// border row and column, `-1` on edges and `+1` on non-edges.
pub fn srg_to_real_etf(adjacency: &[Vec<bool>], params: &SrgParameters, m: usize) -> Result<Frame> {
    let n = params.v as usize + 1;
    let expected = srg_parameters_for(m as u64, n as u64)?;
    if expected != *params {
        return Err(Error::Precondition(format!(
            "{params} does not correspond to a {m} x {n} ETF (expected {expected})"
        )));
    }
    if !realizes(adjacency, params) {
        return Err(invalid(
            "strongly regular graph",
            format!("adjacency does not realize {params}"),
        ));
    }
    let mu = welch_bound(m, n)?;
    let g = GramMatrix::from_fn(n, |i, j| {
        let s = if i == j {
            0.0
        } else if i == 0 || j == 0 {
            1.0
        } else if adjacency[i - 1][j - 1] {
            -1.0
        } else {
            1.0
        };
        Complex64::new(if i == j { 1.0 } else { mu * s }, 0.0)
    })?;
    gram_to_frame(&g, m)
}

/// `k`-fold Kronecker power of `2I - J` (order 4): a symmetric Hadamard
/// matrix of order `4^k` with constant diagonal `+1`.
pub fn graphical_hadamard(k: u32) -> Result<IntMatrix> {
    if k == 0 || k > MAX_KRONECKER_POWER {
        return Err(Error::InvalidParameter(format!(
            "Kronecker power must be in 1..={MAX_KRONECKER_POWER}, got {k}"
        )));
    }
    let h4: IntMatrix = (0..4)
        .map(|i| (0..4).map(|j| if i == j { 1 } else { -1 }).collect())
        .collect();
    let mut h = vec![vec![1]];
    for _ in 0..k {
        let n = h.len();
        let mut next = vec![vec![0; 4 * n]; 4 * n];
        for i in 0..n {
            for j in 0..n {
                for a in 0..4 {
                    for b in 0..4 {
                        next[4 * i + a][4 * j + b] = h[i][j] * h4[a][b];
                    }
                }
            }
        }
        h = next;
    }
    Ok(h)
}

/// The real `((N + sqrt N)/2) x N` ETF, `N = 4^k`, with Gram matrix
/// `I + mu (H - I)`.
pub fn graphical_hadamard_etf(k: u32) -> Result<Frame> {
    graphical_side(k, 1.0)
}

/// The Naimark side of [`graphical_hadamard_etf`]: the
/// `((N - sqrt N)/2) x N` ETF with Gram matrix `I - mu (H - I)`.
pub fn graphical_hadamard_complement_etf(k: u32) -> Result<Frame> {
    graphical_side(k, -1.0)
}

fn graphical_side(k: u32, sign: f64) -> Result<Frame> {
    let h = graphical_hadamard(k)?;
    let n = h.len();
    let root = 1usize << k;
    let m = if sign > 0.0 { (n + root) / 2 } else { (n - root) / 2 };
    let mu = welch_bound(m, n)?;
    // Kronecker products of the Sylvester rows diagonalize every power of
    // 2I - J: the all-ones row has eigenvalue -2, the other three +2.
    let sylvester = |r: usize, c: usize| if (r & c).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    let scale = 1.0 / root as f64;
    let mut rows = Vec::with_capacity(m);
    for r in 0..n {
        let ones = (0..k).filter(|&t| (r >> (2 * t)) & 3 == 0).count();
        let h_eig = if ones % 2 == 0 { root as f64 } else { -(root as f64) };
        let g_eig = 1.0 - sign * mu + sign * mu * h_eig;
        if g_eig > 0.5 {
            let vector: Vec<f64> = (0..n)
                .map(|c| {
                    (0..k)
                        .map(|t| sylvester((r >> (2 * t)) & 3, (c >> (2 * t)) & 3))
                        .product::<f64>()
                        * scale
                })
                .collect();
            rows.push((g_eig.sqrt(), vector));
        }
    }
    if rows.len() != m {
        return Err(Error::RankMismatch {
            expected: m,
            found: rows.len(),
        });
    }
    let entries = (0..n)
        .flat_map(|c| rows.iter().map(move |(w, v)| Complex64::new(w * v[c], 0.0)))
        .collect();
    Frame::new(m, n, entries, FieldTag::Real)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::conference::is_hadamard;
    use crate::frames::{verify_etf, DEFAULT_TOL};

    #[test]
    fn srg_parameter_identity() {
        assert!(SrgParameters::new(9, 4, 1, 2).is_ok());
        assert!(SrgParameters::new(15, 6, 1, 3).is_ok());
        assert!(SrgParameters::new(9, 4, 1, 3).is_err());
        assert!(SrgParameters::new(3, 5, 1, 1).is_err());
    }

    #[test]
    fn paley_graphs_are_strongly_regular() {
        assert!(realizes(
            &paley_graph(9).unwrap(),
            &SrgParameters::new(9, 4, 1, 2).unwrap()
        ));
        assert!(realizes(
            &paley_graph(13).unwrap(),
            &SrgParameters::new(13, 6, 2, 3).unwrap()
        ));
        assert!(paley_graph(7).is_err());
    }

    #[test]
    fn srg_etfs() {
        for (q, m) in [(9u64, 5usize), (13, 7), (5, 3), (25, 13)] {
            let p = srg_parameters_for(m as u64, q + 1).unwrap();
            let f = srg_to_real_etf(&paley_graph(q).unwrap(), &p, m).unwrap();
            assert_eq!((f.m(), f.n()), (m, q as usize + 1));
            assert!(f.is_real());
            assert!(verify_etf(&f, DEFAULT_TOL).is_etf(), "q = {q}");
        }
    }

    #[test]
    fn srg_rejects_mismatches() {
        let triangle = vec![
            vec![false, true, true],
            vec![true, false, true],
            vec![true, true, false],
        ];
        let k3 = SrgParameters {
            v: 3,
            k: 2,
            lambda: 1,
            mu: 0,
        };
        assert!(srg_to_real_etf(&triangle, &k3, 2).is_err());
        let p = srg_parameters_for(7, 14).unwrap();
        assert!(srg_to_real_etf(&paley_graph(9).unwrap(), &p, 7).is_err());
    }

    #[test]
    fn graphical_hadamard_frames() {
        for k in 1..=3 {
            let h = graphical_hadamard(k).unwrap();
            assert!(is_hadamard(&h));
            let big = graphical_hadamard_etf(k).unwrap();
            let small = graphical_hadamard_complement_etf(k).unwrap();
            let n = 1usize << (2 * k);
            let root = 1usize << k;
            assert_eq!((big.m(), big.n()), ((n + root) / 2, n));
            assert_eq!((small.m(), small.n()), ((n - root) / 2, n));
            assert!(verify_etf(&big, DEFAULT_TOL).is_etf());
            assert!(verify_etf(&small, DEFAULT_TOL).is_etf());
        }
        assert!(graphical_hadamard(0).is_err());
        assert!(graphical_hadamard(6).is_err());
    }
}
