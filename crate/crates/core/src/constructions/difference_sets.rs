//! Difference sets in finite abelian groups and the harmonic ETFs they
//! produce.

use num_complex::Complex64;

use crate::algebra::numbers::{checked_pow, is_prime_power};
use crate::algebra::{AbelianGroup, FiniteField};
use crate::error::{invalid, Error, Result};
use crate::frames::Frame;

/// Largest group searched by [`brute_force_difference_sets`].
pub const BRUTE_FORCE_MAX_ORDER: usize = 40;
/// Largest group accepted by the explicit builders.
pub const MAX_GROUP_ORDER: u64 = 1 << 20;

/// A subset `D` of a finite abelian group, together with the claimed
/// multiplicity `lambda` of every nonzero difference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSet {
    group: AbelianGroup,
    elements: Vec<usize>,
    lambda: usize,
}

impl DifferenceSet {
    /// Wraps a subset without checking the difference property; use
    /// [`is_difference_set`] for that.
    pub fn new(group: AbelianGroup, mut elements: Vec<usize>, lambda: usize) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if let Some(&x) = elements.iter().find(|&&x| x >= group.order()) {
            return Err(Error::InvalidParameter(format!(
                "element index {x} outside a group of order {}",
                group.order()
            )));
        }
        Ok(DifferenceSet {
            group,
            elements,
            lambda,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Sorted element indices.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn k(&self) -> usize {
        self.elements.len()
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// `(v, k, lambda)`.
    pub fn parameters(&self) -> (usize, usize, usize) {
        (self.group.order(), self.k(), self.lambda)
    }
}

/// Exhaustive check that each nonzero group element is a difference of
/// elements of `d` exactly `lambda` times.
pub fn is_difference_set(d: &DifferenceSet) -> bool {
    let g = &d.group;
    let mut counts = vec![0usize; g.order()];
    for &a in &d.elements {
        for &b in &d.elements {
            if a != b {
                counts[g.sub(a, b)] += 1;
            }
        }
    }
    counts.iter().skip(1).all(|&c| c == d.lambda)
}

/// Every `k`-subset of `g` with the `(|g|, k, lambda)` difference property.
/// Intended as a test oracle on small groups.
pub fn brute_force_difference_sets(g: &AbelianGroup, k: usize, lambda: usize) -> Result<Vec<DifferenceSet>> {
    let v = g.order();
    if v > BRUTE_FORCE_MAX_ORDER {
        return Err(Error::InvalidParameter(format!(
            "exhaustive search is limited to groups of order <= {BRUTE_FORCE_MAX_ORDER}, got {v}"
        )));
    }
    let mut found = Vec::new();
    if k > v || (v > 1 && k * k.saturating_sub(1) != lambda * (v - 1)) {
        return Ok(found);
    }
    let mut chosen = Vec::with_capacity(k);
    let mut counts = vec![0usize; v];
    search(g, k, lambda, 0, &mut chosen, &mut counts, &mut found);
    Ok(found)
}

fn search(
    g: &AbelianGroup,
    k: usize,
    lambda: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    counts: &mut [usize],
    found: &mut Vec<DifferenceSet>,
) {
    if chosen.len() == k {
        found.push(DifferenceSet {
            group: g.clone(),
            elements: chosen.clone(),
            lambda,
        });
        return;
    }
    let v = g.order();
    for x in start..v {
        if v - x < k - chosen.len() {
            break;
        }
        let mut touched = Vec::with_capacity(2 * chosen.len());
        let mut ok = true;
        for &y in chosen.iter() {
            for diff in [g.sub(x, y), g.sub(y, x)] {
                counts[diff] += 1;
                touched.push(diff);
                ok &= counts[diff] <= lambda;
            }
        }
        if ok {
            chosen.push(x);
            search(g, k, lambda, x + 1, chosen, counts, found);
            chosen.pop();
        }
        for diff in touched {
            counts[diff] -= 1;
        }
    }
}

/// Nonzero squares of GF(q), `q = 3 mod 4`, in the additive group `Z_p^k`.
pub fn paley_difference_set(q: u64) -> Result<DifferenceSet> {
    let (p, k) = is_prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q % 4 != 3 {
        return Err(Error::InvalidParameter(format!(
            "Paley difference sets need q = 3 mod 4, got {q}"
        )));
    }
    let field = FiniteField::new(q)?;
    let group = AbelianGroup::new(vec![p as u32; k as usize])?;
    // field codes are base-p digit strings, which is exactly the group's
    // mixed-radix index
    let elements = field.quadratic_residues()?.into_iter().map(|x| x as usize).collect();
    checked(DifferenceSet::new(group, elements, ((q - 3) / 4) as usize)?)
}

/// Hyperplane (trace-zero) difference set in the cyclic group of order
/// `(q^m - 1)/(q - 1)`, from the projective geometry PG(m-1, q).
pub fn singer_difference_set(q: u64, m: u32) -> Result<DifferenceSet> {
    is_prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if m < 3 {
        return Err(Error::InvalidParameter(format!("Singer sets need m >= 3, got {m}")));
    }
    let big = checked_pow(q, m)
        .filter(|&b| b <= MAX_GROUP_ORDER)
        .ok_or_else(|| Error::InvalidParameter(format!("GF({q}^{m}) is too large")))?;
    let field = FiniteField::new(big)?;
    let n = (big - 1) / (q - 1);
    let trace = |x: u32| {
        let mut acc = 0;
        let mut e = 1u64;
        for _ in 0..m {
            acc = field.add(acc, field.pow(x, e));
            e *= q;
        }
        acc
    };
    let elements: Vec<usize> = (0..n)
        .filter(|&i| trace(field.gen_pow(i)) == 0)
        .map(|i| i as usize)
        .collect();
    let lambda = (q.pow(m - 2) - 1) / (q - 1);
    let group = AbelianGroup::cyclic(n as u32)?;
    checked(DifferenceSet::new(group, elements, lambda as usize)?)
}

/// McFarland difference set in `GF(q)^(d+1) x Z_(r+1)` with
/// `r = (q^(d+1) - 1)/(q - 1)`: the union of `H_i x {i}` over the `r`
/// hyperplanes `H_i` through the origin.
pub fn mcfarland_difference_set(q: u64, d: u32) -> Result<DifferenceSet> {
    let (p, k) = is_prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if d < 1 {
        return Err(Error::InvalidParameter("McFarland sets need d >= 1".into()));
    }
    let qd1 = checked_pow(q, d + 1).ok_or_else(|| Error::InvalidParameter("group order overflows".into()))?;
    let r = (qd1 - 1) / (q - 1);
    if qd1 * (r + 1) > MAX_GROUP_ORDER {
        return Err(Error::InvalidParameter(format!(
            "McFarland group of order {} is too large",
            qd1 * (r + 1)
        )));
    }
    let field = FiniteField::new(q)?;
    let dim = (d + 1) as usize;
    let vectors: Vec<Vec<u32>> = (0..qd1).map(|x| digits(x, q, dim)).collect();
    let points = projective_points(&field, dim);
    debug_assert_eq!(points.len() as u64, r);

    let mut factors = vec![p as u32; (k as usize) * dim];
    factors.push((r + 1) as u32);
    let group = AbelianGroup::new(factors)?;
    let mut elements = Vec::new();
    for (i, a) in points.iter().enumerate() {
        for (x_index, x) in vectors.iter().enumerate() {
            if dot(&field, a, x) == 0 {
                elements.push(x_index + qd1 as usize * i);
            }
        }
    }
    let kk = (r * q.pow(d)) as usize;
    let lambda = (q.pow(d) * (q.pow(d) - 1) / (q - 1)) as usize;
    debug_assert_eq!(elements.len(), kk);
    checked(DifferenceSet::new(group, elements, lambda)?)
}

/// Columns are the characters of the group restricted to `D`, scaled to
/// unit norm: an `|D| x |G|` ETF.
pub fn harmonic_etf(d: &DifferenceSet) -> Result<Frame> {
    let (v, k, _) = d.parameters();
    if k == 0 || k == v {
        return Err(Error::Precondition(
            "harmonic frames need a proper nonempty difference set".into(),
        ));
    }
    if !is_difference_set(d) {
        return Err(invalid("difference set", "difference counts are not constant"));
    }
    let chars = d.group.characters();
    let scale = 1.0 / (k as f64).sqrt();
    let columns: Vec<Vec<Complex64>> = (0..v)
        .map(|h| d.elements.iter().map(|&x| chars.eval(h, x) * scale).collect())
        .collect();
    Frame::from_columns(columns)
}

fn checked(d: DifferenceSet) -> Result<DifferenceSet> {
    if is_difference_set(&d) {
        Ok(d)
    } else {
        Err(invalid(
            "difference set",
            "builder produced a set failing the difference check",
        ))
    }
}

/// Base-`q` digits of `x`, least significant first.
pub(crate) fn digits(mut x: u64, q: u64, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let r = (x % q) as u32;
            x /= q;
            r
        })
        .collect()
}

/// Nonzero vectors of `GF(q)^dim` whose first nonzero coordinate is 1, in
/// increasing index order.
pub(crate) fn projective_points(field: &FiniteField, dim: usize) -> Vec<Vec<u32>> {
    let q = field.order() as u64;
    (1..q.pow(dim as u32))
        .map(|x| digits(x, q, dim))
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .collect()
}

pub(crate) fn dot(field: &FiniteField, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{verify_etf, welch_bound, DEFAULT_TOL};

    #[test]
    fn paley_examples() {
        let d = paley_difference_set(7).unwrap();
        assert_eq!(d.elements(), &[1, 2, 4]);
        assert_eq!(d.parameters(), (7, 3, 1));
        let d = paley_difference_set(11).unwrap();
        assert_eq!(d.elements(), &[1, 3, 4, 5, 9]);
        assert_eq!(d.lambda(), 2);
        assert!(paley_difference_set(13).is_err());
        assert!(paley_difference_set(15).is_err());
        assert_eq!(paley_difference_set(27).unwrap().parameters(), (27, 13, 6));
    }

    #[test]
    fn singer_examples() {
        assert_eq!(singer_difference_set(2, 3).unwrap().parameters(), (7, 3, 1));
        assert_eq!(singer_difference_set(3, 3).unwrap().parameters(), (13, 4, 1));
        assert_eq!(singer_difference_set(2, 4).unwrap().parameters(), (15, 7, 3));
        assert_eq!(singer_difference_set(4, 3).unwrap().parameters(), (21, 5, 1));
        assert!(singer_difference_set(2, 2).is_err());
        assert!(singer_difference_set(6, 3).is_err());
    }

    #[test]
    fn mcfarland_examples() {
        let d = mcfarland_difference_set(2, 1).unwrap();
        assert_eq!((d.group().order(), d.k()), (16, 6));
        let d = mcfarland_difference_set(2, 2).unwrap();
        assert_eq!((d.group().order(), d.k()), (64, 28));
        let d = mcfarland_difference_set(3, 1).unwrap();
        assert_eq!((d.group().order(), d.k()), (45, 12));
        assert_eq!(mcfarland_difference_set(4, 1).unwrap().k(), 20);
    }

    #[test]
    fn difference_check_examples() {
        let z7 = AbelianGroup::cyclic(7).unwrap();
        assert!(is_difference_set(
            &DifferenceSet::new(z7.clone(), vec![1, 2, 4], 1).unwrap()
        ));
        assert!(!is_difference_set(&DifferenceSet::new(z7, vec![1, 2, 3], 1).unwrap()));
        let z1 = AbelianGroup::cyclic(1).unwrap();
        assert!(is_difference_set(&DifferenceSet::new(z1, vec![], 0).unwrap()));
        let z3 = AbelianGroup::cyclic(3).unwrap();
        assert!(DifferenceSet::new(z3, vec![3], 0).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let z7 = AbelianGroup::cyclic(7).unwrap();
        let all = brute_force_difference_sets(&z7, 3, 1).unwrap();
        assert!(all.iter().any(|d| d.elements() == [1, 2, 4]));
        // translates of {1,2,4} and of {3,5,6}
        assert_eq!(all.len(), 14);
        let z13 = AbelianGroup::cyclic(13).unwrap();
        let singer = singer_difference_set(3, 3).unwrap();
        let all = brute_force_difference_sets(&z13, 4, 1).unwrap();
        assert!(all.iter().any(|d| d.elements() == singer.elements()));
        let z8 = AbelianGroup::cyclic(8).unwrap();
        assert!(brute_force_difference_sets(&z8, 3, 1).unwrap().is_empty());
        let big = AbelianGroup::cyclic(41).unwrap();
        assert!(brute_force_difference_sets(&big, 5, 1).is_err());
    }

    #[test]
    fn harmonic_frames_are_etfs() {
        for d in [
            singer_difference_set(2, 3).unwrap(),
            singer_difference_set(3, 3).unwrap(),
            paley_difference_set(11).unwrap(),
            paley_difference_set(27).unwrap(),
            mcfarland_difference_set(2, 1).unwrap(),
            mcfarland_difference_set(3, 1).unwrap(),
        ] {
            let f = harmonic_etf(&d).unwrap();
            assert_eq!((f.m(), f.n()), (d.k(), d.group().order()));
            let r = verify_etf(&f, DEFAULT_TOL);
            assert!(r.is_etf(), "{:?}", d.parameters());
            assert!((r.coherence - welch_bound(f.m(), f.n()).unwrap()).abs() < 1e-8);
        }
    }

    #[test]
    fn harmonic_rejects_degenerate_sets() {
        let z5 = AbelianGroup::cyclic(5).unwrap();
        assert!(harmonic_etf(&DifferenceSet::new(z5.clone(), vec![], 0).unwrap()).is_err());
        assert!(harmonic_etf(&DifferenceSet::new(z5.clone(), (0..5).collect(), 5).unwrap()).is_err());
        assert!(harmonic_etf(&DifferenceSet::new(z5, vec![0, 1], 1).unwrap()).is_err());
    }
}
