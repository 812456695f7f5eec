//! Exact arithmetic in the prime field GF(p).
//!
//! All protocol math runs on [`FieldElement`] values, canonical residues
//! modulo a validated prime [`FieldModulus`]. Products go through `u128`,
//! so every `u64` prime is supported without intermediate overflow.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

/// Errors from field construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GfError {
    /// The requested modulus is not a prime number.
    #[error("{0} is not prime")]
    NotPrime(u64),
    /// Multiplicative inverse of zero requested.
    #[error("division by zero in GF({0})")]
    DivisionByZero(u64),
}

/// A validated prime modulus defining GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldModulus {
    p: u64,
}

impl FieldModulus {
    /// Validates primality (deterministic Miller-Rabin) and returns the field.
    pub fn new(p: u64) -> Result<Self, GfError> {
        if is_prime(p) {
            Ok(Self { p })
        } else {
            Err(GfError::NotPrime(p))
        }
    }

    /// The prime p.
    pub fn prime(&self) -> u64 {
        self.p
    }

    /// The canonical element `v mod p`.
    pub fn element(&self, v: u64) -> FieldElement {
        FieldElement {
            value: v % self.p,
            p: self.p,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// Draws an element uniformly over all p residues, zero included.
    ///
    /// `random_range` performs rejection internally, so there is no modulo
    /// bias for any p.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement {
            value: rng.random_range(0..self.p),
            p: self.p,
        }
    }
}

impl fmt::Display for FieldModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

/// A canonical residue in GF(p): `0 <= value < p`.
///
/// Elements carry their modulus; mixing moduli in arithmetic is a contract
/// violation and panics in all builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    p: u64,
}

impl FieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse via Fermat: a^(p-2) mod p.
    ///
    /// Errors on zero. The streaming detector only ever divides by pivots
    /// its loop guard has already accepted as nonzero, so this error is
    /// unreachable from that path.
    pub fn inv(&self) -> Result<FieldElement, GfError> {
        if self.value == 0 {
            return Err(GfError::DivisionByZero(self.p));
        }
        Ok(FieldElement {
            value: pow_mod(self.value, self.p - 2, self.p),
            p: self.p,
        })
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        FieldElement {
            value: pow_mod(self.value, e, self.p),
            p: self.p,
        }
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert_eq!(
            self.p, other.p,
            "field elements from different moduli: GF({}) vs GF({})",
            self.p, other.p
        );
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: FieldElement) -> FieldElement {
        self.assert_same_field(&rhs);
        let s = (self.value as u128 + rhs.value as u128) % self.p as u128;
        FieldElement {
            value: s as u64,
            p: self.p,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.assert_same_field(&rhs);
        let value = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.p - (rhs.value - self.value)
        };
        FieldElement { value, p: self.p }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.assert_same_field(&rhs);
        FieldElement {
            value: mul_mod(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        let value = if self.value == 0 {
            0
        } else {
            self.p - self.value
        };
        FieldElement { value, p: self.p }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set decides primality for all n < 3.3 * 10^24.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
