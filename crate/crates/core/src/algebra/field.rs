//! Finite fields GF(p^k) with table-driven multiplication.
//!
//! An element is stored as a `u32` whose base-`p` digits are the
//! coefficients of its polynomial representative (digit `i` is the
//! coefficient of `x^i`). Addition is digit-wise mod `p`; multiplication
//! goes through discrete log / antilog tables built from a generator.
//!
//! The modulus is the lexicographically smallest monic irreducible
//! polynomial of degree `k`, and the generator is the numerically smallest
//! primitive element, so a field of a given order is always built the same
//! way.

use std::collections::BTreeSet;

use super::numbers::{factorize, is_prime_power};
use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, coefficients from constant term upward (length k+1).
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FiniteField {
    /// Builds GF(q). Fails when `q` is not a prime power or exceeds 2^20.
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = is_prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = if k == 1 { vec![0, 1] } else { smallest_irreducible(p, k) };
        let mut field = FiniteField {
            p,
            k,
            q,
            modulus,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.generator = field.find_generator();
        field.build_tables();
        Ok(field)
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// Base-p digits (polynomial coefficients), least significant first.
    pub fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0; self.k as usize];
        for slot in d.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        let l = self.log[a as usize];
        Some(self.exp[((n - l) % n) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64;
        self.exp[((l * (e % n)) % n) as usize]
    }

    /// `g^i` for the field generator `g`.
    pub fn gen_pow(&self, i: u64) -> u32 {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    /// Discrete logarithm to base `generator()`; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn is_square(&self, a: u32) -> bool {
        a != 0 && (self.p == 2 || self.log[a as usize] % 2 == 0)
    }

    /// Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise.
    /// Only meaningful for odd `q`.
    pub fn quadratic_character(&self, a: u32) -> i8 {
        if a == 0 {
            0
        } else if self.log[a as usize] % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// The set of nonzero squares. Requires odd `q`.
    pub fn quadratic_residues(&self) -> Result<BTreeSet<u32>> {
        if self.p == 2 {
            return Err(Error::Precondition(format!(
                "quadratic residues need odd order, got {}",
                self.q
            )));
        }
        Ok((1..self.q).map(|x| self.mul(x, x)).collect())
    }

    /// Element of the prime subfield corresponding to the integer `n`.
    pub fn from_integer(&self, n: u64) -> u32 {
        (n % self.p as u64) as u32
    }

    // polynomial multiplication mod the modulus, used before the tables exist
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let k = self.k as usize;
        let p = self.p;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        poly_rem_monic(&mut prod, &self.modulus, p);
        prod.truncate(k);
        prod.resize(k, 0);
        self.from_digits(&prod)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> u32 {
        let n = (self.q - 1) as u64;
        if n == 1 {
            return 1;
        }
        let primes: Vec<u64> = factorize(n).into_iter().map(|(l, _)| l).collect();
        (1..self.q)
            .find(|&g| primes.iter().all(|&l| self.slow_pow(g, n / l) != 1))
            .expect("every finite field has a primitive element")
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp.push(x);
            log[x as usize] = i as u32;
            x = self.slow_mul(x, self.generator);
        }
        debug_assert_eq!(x, 1);
        self.exp = exp;
        self.log = log;
    }
}

/// Reduces `a` in place modulo a monic polynomial over GF(p).
fn poly_rem_monic(a: &mut Vec<u32>, m: &[u32], p: u32) {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let shift = a.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            let t = (lead * c) % p;
            a[shift + i] = (a[shift + i] + p - t) % p;
        }
    }
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p
/// digits of `code`.
fn monic_from_code(mut code: u64, deg: usize, p: u32) -> Vec<u32> {
    let mut c = vec![0u32; deg + 1];
    for slot in c.iter_mut().take(deg) {
        *slot = (code % p as u64) as u32;
        code /= p as u64;
    }
    c[deg] = 1;
    c
}

pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    if poly[0] == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let divisor = monic_from_code(code, d, p);
            let mut r = poly.to_vec();
            poly_rem_monic(&mut r, &divisor, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `k`
/// (lower coefficients read as a base-p number, most significant first).
fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    (0..count)
        .map(|code| monic_from_code(code, k as usize, p))
        .find(|c| is_irreducible(c, p))
        .expect("irreducible polynomials exist in every degree")
}
