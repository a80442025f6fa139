//! Finite abelian groups `Z_{n_1} x ... x Z_{n_t}` and their characters.
//!
//! Elements are addressed by a mixed-radix index in `0..order()`, with the
//! first factor as the least significant digit.

use num_complex::Complex64;
use std::f64::consts::TAU;

use super::numbers::lcm;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    factors: Vec<u32>,
    order: usize,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidParameter("cyclic factor orders must be positive".into()));
        }
        let order = factors.iter().map(|&n| n as usize).product();
        Ok(AbelianGroup { factors, order })
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn element(&self, mut index: usize) -> Vec<u32> {
        self.factors
            .iter()
            .map(|&n| {
                let r = (index % n as usize) as u32;
                index /= n as usize;
                r
            })
            .collect()
    }

    pub fn index_of(&self, element: &[u32]) -> usize {
        element
            .iter()
            .zip(&self.factors)
            .rev()
            .fold(0, |acc, (&g, &n)| acc * n as usize + (g % n) as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y, n| (x + y) % n)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y, n| (x + n - y) % n)
    }

    fn combine(&self, mut a: usize, mut b: usize, op: impl Fn(u32, u32, u32) -> u32) -> usize {
        let (mut out, mut place) = (0, 1);
        for &n in &self.factors {
            let n_us = n as usize;
            let r = op((a % n_us) as u32, (b % n_us) as u32, n);
            out += r as usize * place;
            a /= n_us;
            b /= n_us;
            place *= n_us;
        }
        out
    }

    /// Accessor for the character table of this group.
    pub fn characters(&self) -> Characters<'_> {
        let modulus = self.factors.iter().fold(1u64, |acc, &n| lcm(acc, n as u64));
        Characters { group: self, modulus }
    }
}

/// Characters `chi_h(g) = prod_i exp(2 pi i h_i g_i / n_i)`, indexed by
/// group elements `h`.
pub struct Characters<'a> {
    group: &'a AbelianGroup,
    modulus: u64,
}

impl Characters<'_> {
    pub fn len(&self) -> usize {
        self.group.order()
    }

    pub fn is_empty(&self) -> bool {
        self.group.order() == 0
    }

    /// Phase of `chi_h(g)` as an integer numerator over `modulus()`.
    pub fn phase(&self, h: usize, g: usize) -> u64 {
        let (mut h, mut g) = (h, g);
        let mut acc = 0u64;
        for &n in &self.group.factors {
            let n_us = n as usize;
            let prod = ((h % n_us) * (g % n_us)) % n_us;
            acc = (acc + prod as u64 * (self.modulus / n as u64)) % self.modulus;
            h /= n_us;
            g /= n_us;
        }
        acc
    }

    /// Common denominator of all character phases.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn eval(&self, h: usize, g: usize) -> Complex64 {
        let phase = self.phase(h, g);
        root_of_unity(phase, self.modulus)
    }
}

/// `exp(2 pi i num / den)`, snapped to exact values at quarter turns.
pub(crate) fn root_of_unity(num: u64, den: u64) -> Complex64 {
    let num = num % den;
    if num == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 4 * num % den == 0 {
        return match 4 * num / den {
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, TAU * num as f64 / den as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn character_examples() {
        let z2 = AbelianGroup::cyclic(2).unwrap();
        assert!(close(z2.characters().eval(1, 1), Complex64::new(-1.0, 0.0)));
        let z4 = AbelianGroup::cyclic(4).unwrap();
        assert!(close(z4.characters().eval(1, 1), Complex64::new(0.0, 1.0)));
        let v4 = AbelianGroup::new(vec![2, 2]).unwrap();
        let one_one = v4.index_of(&[1, 1]);
        assert!(close(v4.characters().eval(one_one, one_one), Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn indexing_round_trip() {
        let g = AbelianGroup::new(vec![2, 3, 5]).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.index_of(&g.element(i)), i);
        }
        assert_eq!(
            g.add(g.index_of(&[1, 2, 4]), g.index_of(&[1, 2, 3])),
            g.index_of(&[0, 1, 2])
        );
        assert_eq!(g.sub(0, g.index_of(&[1, 1, 1])), g.index_of(&[1, 2, 4]));
    }

    #[test]
    fn rejects_zero_factor() {
        assert!(AbelianGroup::new(vec![3, 0]).is_err());
    }

    #[test]
    fn characters_are_orthogonal() {
        let groups = [
            vec![7],
            vec![2, 2, 2],
            vec![4, 4],
            vec![2, 3, 5],
            vec![2, 2, 2, 2, 4],
            vec![8, 8],
        ];
        for factors in groups {
            let g = AbelianGroup::new(factors).unwrap();
            let chars = g.characters();
            let n = g.order();
            assert!(n <= 64);
            for h in 0..n {
                for h2 in 0..n {
                    let s: Complex64 = (0..n).map(|x| chars.eval(h, x) * chars.eval(h2, x).conj()).sum();
                    let expected = if h == h2 { n as f64 } else { 0.0 };
                    assert!((s - Complex64::new(expected, 0.0)).norm() < 1e-10);
                }
            }
        }
    }
}
