//! Steiner systems `S(2, k, v)` and the Steiner ETFs built from them.

use num_complex::Complex64;

use super::conference::hadamard_matrix;
use super::difference_sets::{digits, projective_points};
use crate::algebra::group::root_of_unity;
use crate::algebra::numbers::{checked_pow, is_prime_power};
use crate::algebra::FiniteField;
use crate::error::{invalid, Error, Result};
use crate::frames::{FieldTag, Frame};

/// Point limit for geometric designs (pair coverage is tracked in a `v x v` table).
pub const MAX_GEOMETRY_POINTS: u64 = 5_000;

/// Blocks of size `k` on points `0..v` such that every pair of points lies
/// in exactly one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerSystem {
    v: usize,
    k: usize,
    blocks: Vec<Vec<usize>>,
}

impl SteinerSystem {
    /// Sorts each block and checks the pair-covering property exhaustively.
    pub fn new(v: usize, k: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        if k < 2 || v < k {
            return Err(invalid(
                "Steiner system",
                format!("need 2 <= k <= v, got k = {k}, v = {v}"),
            ));
        }
        let mut seen = vec![false; v * v];
        for block in blocks.iter_mut() {
            block.sort_unstable();
            if block.len() != k || block.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid("Steiner system", format!("block {block:?} is not a {k}-set")));
            }
            if block.last().is_some_and(|&x| x >= v) {
                return Err(invalid("Steiner system", format!("block {block:?} leaves 0..{v}")));
            }
            for (a, &x) in block.iter().enumerate() {
                for &y in &block[a + 1..] {
                    if std::mem::replace(&mut seen[x * v + y], true) {
                        return Err(invalid("Steiner system", format!("pair ({x}, {y}) is covered twice")));
                    }
                }
            }
        }
        for x in 0..v {
            for y in x + 1..v {
                if !seen[x * v + y] {
                    return Err(invalid("Steiner system", format!("pair ({x}, {y}) is not covered")));
                }
            }
        }
        Ok(SteinerSystem { v, k, blocks })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Blocks through each point.
    pub fn r(&self) -> usize {
        (self.v - 1) / (self.k - 1)
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

/// All 2-subsets of `v` points.
pub fn steiner_pairs(v: usize) -> Result<SteinerSystem> {
    if v < 2 {
        return Err(Error::InvalidParameter(format!("need at least two points, got {v}")));
    }
    let blocks = (0..v).flat_map(|x| (x + 1..v).map(move |y| vec![x, y])).collect();
    SteinerSystem::new(v, 2, blocks)
}

/// A Steiner triple system on `v = 1, 3 mod 6` points: Bose's construction
/// when `v = 3 mod 6` and Skolem's when `v = 1 mod 6`.
pub fn steiner_triples(v: usize) -> Result<SteinerSystem> {
    if v < 3 || (v % 6 != 1 && v % 6 != 3) {
        return Err(Error::InvalidParameter(format!(
            "Steiner triple systems need v = 1 or 3 mod 6, got {v}"
        )));
    }
    let mut blocks = Vec::new();
    if v % 6 == 3 {
        let m = v / 3;
        let n = (m - 1) / 2;
        let pt = |x: usize, i: usize| x + m * (i % 3);
        let op = |x: usize, y: usize| ((n + 1) * (x + y)) % m;
        for x in 0..m {
            blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
        }
        for i in 0..3 {
            for x in 0..m {
                for y in x + 1..m {
                    blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
                }
            }
        }
    } else {
        let n = (v - 1) / 6;
        let m = 2 * n;
        let inf = v - 1;
        let pt = |x: usize, i: usize| x + m * (i % 3);
        let op = |x: usize, y: usize| {
            let s = (x + y) % m;
            if s % 2 == 0 {
                s / 2
            } else {
                n + s / 2
            }
        };
        for x in 0..n {
            blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
        }
        for i in 0..3 {
            for x in 0..n {
                blocks.push(vec![inf, pt(x + n, i), pt(x, i + 1)]);
            }
            for x in 0..m {
                for y in x + 1..m {
                    blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
                }
            }
        }
    }
    SteinerSystem::new(v, 3, blocks)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Geometry {
    Affine,
    Projective,
}

/// Points and lines of the affine plane AG(2, q) or projective plane
/// PG(2, q).
pub fn steiner_from_plane(kind: Geometry, q: u64) -> Result<SteinerSystem> {
    if q > 64 {
        return Err(Error::InvalidParameter(format!("plane order {q} exceeds 64")));
    }
    steiner_from_geometry(kind, q, 2)
}

/// Points and lines of AG(d, q) (`v = q^d`, `k = q`) or PG(d, q)
/// (`v = (q^(d+1) - 1)/(q - 1)`, `k = q + 1`).
pub fn steiner_from_geometry(kind: Geometry, q: u64, d: u32) -> Result<SteinerSystem> {
    is_prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "geometry dimension must be >= 2, got {d}"
        )));
    }
    let too_big = || Error::InvalidParameter(format!("geometry over GF({q}) of dimension {d} is too large"));
    let field = FiniteField::new(q)?;
    let points: Vec<Vec<u32>> = match kind {
        Geometry::Affine => {
            let v = checked_pow(q, d)
                .filter(|&v| v <= MAX_GEOMETRY_POINTS)
                .ok_or_else(too_big)?;
            (0..v).map(|x| digits(x, q, d as usize)).collect()
        }
        Geometry::Projective => {
            let top = checked_pow(q, d + 1).ok_or_else(too_big)?;
            if (top - 1) / (q - 1) > MAX_GEOMETRY_POINTS {
                return Err(too_big());
            }
            projective_points(&field, d as usize + 1)
        }
    };
    let v = points.len();
    let index = |p: &[u32]| -> usize { p.iter().rev().fold(0usize, |acc, &c| acc * q as usize + c as usize) };
    // affine points are indexed by their code directly; projective ones
    // need a lookup from code to position
    let mut position = vec![
        usize::MAX;
        if kind == Geometry::Projective {
            q.pow(d + 1) as usize
        } else {
            0
        }
    ];
    if kind == Geometry::Projective {
        for (i, p) in points.iter().enumerate() {
            position[index(p)] = i;
        }
    }
    let locate = |p: &[u32]| match kind {
        Geometry::Affine => index(p),
        Geometry::Projective => position[index(&normalize(&field, p))],
    };

    let mut covered = vec![false; v * v];
    let mut blocks = Vec::new();
    for a in 0..v {
        for b in a + 1..v {
            if covered[a * v + b] {
                continue;
            }
            let (pa, pb) = (&points[a], &points[b]);
            let mut line: Vec<usize> = match kind {
                Geometry::Affine => {
                    let dir: Vec<u32> = pb.iter().zip(pa).map(|(&y, &x)| field.sub(y, x)).collect();
                    field
                        .elements()
                        .map(|t| {
                            let p: Vec<u32> = pa
                                .iter()
                                .zip(&dir)
                                .map(|(&x, &u)| field.add(x, field.mul(t, u)))
                                .collect();
                            locate(&p)
                        })
                        .collect()
                }
                Geometry::Projective => std::iter::once(a)
                    .chain(field.elements().map(|t| {
                        let p: Vec<u32> = pb
                            .iter()
                            .zip(pa)
                            .map(|(&y, &x)| field.add(y, field.mul(t, x)))
                            .collect();
                        locate(&p)
                    }))
                    .collect(),
            };
            line.sort_unstable();
            for (i, &x) in line.iter().enumerate() {
                for &y in &line[i + 1..] {
                    covered[x * v + y] = true;
                }
            }
            blocks.push(line);
        }
    }
    let k = match kind {
        Geometry::Affine => q as usize,
        Geometry::Projective => q as usize + 1,
    };
    SteinerSystem::new(v, k, blocks)
}

fn normalize(field: &FiniteField, p: &[u32]) -> Vec<u32> {
    let lead = *p.iter().find(|&&c| c != 0).expect("projective points are nonzero");
    let inv = field.inv(lead).expect("nonzero");
    p.iter().map(|&c| field.mul(c, inv)).collect()
}

/// Unimodular `n x n` matrix with orthogonal rows and an all-ones first row:
/// a normalized real Hadamard matrix or the DFT.
fn unimodular(n: usize, field: FieldTag) -> Result<Vec<Vec<Complex64>>> {
    match field {
        FieldTag::Real => {
            let h = hadamard_matrix(n).ok_or(Error::NoHadamard(n))?;
            Ok(h.into_iter()
                .map(|row| row.into_iter().map(|x| Complex64::new(x as f64, 0.0)).collect())
                .collect())
        }
        FieldTag::Complex => Ok((0..n)
            .map(|i| (0..n).map(|j| root_of_unity((i * j) as u64, n as u64)).collect())
            .collect()),
    }
}

/// The `b x v(r+1)` Steiner ETF: for each point, the `r+1` columns of a
/// unimodular matrix with its first row removed, scaled by `1/sqrt(r)` and
/// placed on the `r` blocks through that point.
pub fn steiner_etf(s: &SteinerSystem, field: FieldTag) -> Result<Frame> {
    let (v, b, r) = (s.v(), s.b(), s.r());
    let h = unimodular(r + 1, field)?;
    let mut through: Vec<Vec<usize>> = vec![Vec::with_capacity(r); v];
    for (j, block) in s.blocks().iter().enumerate() {
        for &p in block {
            through[p].push(j);
        }
    }
    let scale = 1.0 / (r as f64).sqrt();
    let mut entries = vec![Complex64::new(0.0, 0.0); b * v * (r + 1)];
    for (p, blocks) in through.iter().enumerate() {
        for c in 0..=r {
            let col = &mut entries[(p * (r + 1) + c) * b..][..b];
            for (t, &block) in blocks.iter().enumerate() {
                col[block] = h[t + 1][c] * scale;
            }
        }
    }
    Frame::new(b, v * (r + 1), entries, field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{verify_etf, welch_bound, DEFAULT_TOL};

    #[test]
    fn pairs() {
        assert_eq!(steiner_pairs(4).unwrap().b(), 6);
        assert_eq!(steiner_pairs(2).unwrap().b(), 1);
        assert_eq!(steiner_pairs(12).unwrap().b(), 66);
        assert!(steiner_pairs(1).is_err());
    }

    #[test]
    fn triples() {
        for v in [3, 7, 9, 13, 15, 19, 21, 25, 27, 31, 33, 37, 39, 43, 45] {
            let s = steiner_triples(v).unwrap();
            assert_eq!(s.b(), v * (v - 1) / 6, "v = {v}");
        }
        assert_eq!(steiner_triples(7).unwrap().b(), 7);
        assert_eq!(steiner_triples(9).unwrap().b(), 12);
        assert!(steiner_triples(8).is_err());
        assert!(steiner_triples(1).is_err());
    }

    #[test]
    fn planes_and_geometries() {
        let ag = steiner_from_plane(Geometry::Affine, 2).unwrap();
        assert_eq!((ag.v(), ag.k(), ag.b()), (4, 2, 6));
        let pg = steiner_from_plane(Geometry::Projective, 2).unwrap();
        assert_eq!((pg.v(), pg.k(), pg.b()), (7, 3, 7));
        let pg3 = steiner_from_plane(Geometry::Projective, 3).unwrap();
        assert_eq!(pg3.b(), 13);
        let ag4 = steiner_from_plane(Geometry::Affine, 4).unwrap();
        assert_eq!((ag4.v(), ag4.b()), (16, 20));
        let ag32 = steiner_from_geometry(Geometry::Affine, 3, 3).unwrap();
        assert_eq!((ag32.v(), ag32.b()), (27, 117));
        let pg23 = steiner_from_geometry(Geometry::Projective, 2, 3).unwrap();
        assert_eq!((pg23.v(), pg23.b()), (15, 35));
        assert!(steiner_from_plane(Geometry::Affine, 6).is_err());
        assert!(steiner_from_plane(Geometry::Affine, 81).is_err());
    }

    #[test]
    fn rejects_bad_systems() {
        assert!(SteinerSystem::new(4, 2, vec![vec![0, 1], vec![2, 3]]).is_err());
        assert!(SteinerSystem::new(3, 2, vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 1]]).is_err());
        assert!(SteinerSystem::new(3, 3, vec![vec![0, 1, 3]]).is_err());
        assert!(SteinerSystem::new(3, 3, vec![vec![0, 1, 2]]).is_ok());
    }

    #[test]
    fn steiner_etfs() {
        let cases = [
            (steiner_pairs(4).unwrap(), FieldTag::Real, (6, 16)),
            (steiner_triples(7).unwrap(), FieldTag::Real, (7, 28)),
            (steiner_triples(9).unwrap(), FieldTag::Complex, (12, 45)),
            (steiner_pairs(5).unwrap(), FieldTag::Complex, (10, 25)),
            (
                steiner_from_plane(Geometry::Projective, 2).unwrap(),
                FieldTag::Real,
                (7, 28),
            ),
        ];
        for (s, field, (m, n)) in cases {
            let f = steiner_etf(&s, field).unwrap();
            assert_eq!((f.m(), f.n(), f.field()), (m, n, field));
            assert!(n > 2 * m);
            let r = verify_etf(&f, DEFAULT_TOL);
            assert!(r.is_etf(), "({m}, {n})");
            assert!((r.coherence - welch_bound(m, n).unwrap()).abs() < 1e-8);
        }
        // r + 1 = 7 admits no real Hadamard matrix
        assert!(matches!(
            steiner_etf(&steiner_triples(13).unwrap(), FieldTag::Real),
            Err(Error::NoHadamard(7))
        ));
    }
}
