//! Arithmetic in the prime field F_p.
//!
//! Hot loops work on raw `u64` residues through the methods of
//! [`PrimeModulus`]; [`FieldElement`] is the checked scalar type used at API
//! boundaries and carries its modulus by value.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result};

/// Exclusive upper bound on the modulus. Keeps every product of two residues
/// below 2^62.
pub const MODULUS_LIMIT: u64 = 1 << 31;

/// A prime `p` with `2 <= p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    /// Validates `p` with a deterministic Miller-Rabin test.
    pub fn new(p: u64) -> Result<Self> {
        if !(2..MODULUS_LIMIT).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !num_prime::nt_funcs::is_prime64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u64 {
        v % self.0
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(self, base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.0;
        let mut b = base % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Fermat inverse `a^(p-2)`.
    pub fn inv(self, a: u64) -> Result<u64> {
        let a = a % self.0;
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.0 - 2))
    }

    pub fn element(self, v: u64) -> FieldElement {
        FieldElement {
            value: v % self.0,
            modulus: self,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.element(0)
    }

    pub fn one(self) -> FieldElement {
        self.element(1)
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A residue in `[0, p)` tagged with its modulus.
///
/// The operator impls panic when the operands carry different moduli; use the
/// `checked_*` methods where that can happen at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    modulus: PrimeModulus,
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, e: u64) -> FieldElement {
        self.modulus.element(self.modulus.pow(self.value, e))
    }

    pub fn inv(self) -> Result<FieldElement> {
        Ok(self.modulus.element(self.modulus.inv(self.value)?))
    }

    fn same_modulus(self, other: FieldElement) -> Result<PrimeModulus> {
        if self.modulus != other.modulus {
            return Err(Error::MixedModulus {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        Ok(self.modulus)
    }

    pub fn checked_add(self, rhs: FieldElement) -> Result<FieldElement> {
        let m = self.same_modulus(rhs)?;
        Ok(m.element(m.add(self.value, rhs.value)))
    }

    pub fn checked_sub(self, rhs: FieldElement) -> Result<FieldElement> {
        let m = self.same_modulus(rhs)?;
        Ok(m.element(m.sub(self.value, rhs.value)))
    }

    pub fn checked_mul(self, rhs: FieldElement) -> Result<FieldElement> {
        let m = self.same_modulus(rhs)?;
        Ok(m.element(m.mul(self.value, rhs.value)))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$checked(rhs)
                    .expect("operands from different prime fields")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        self.modulus.element(self.modulus.neg(self.value))
    }
}

/// Multiplicative inverse; fails on zero.
pub fn fe_inv(a: FieldElement) -> Result<FieldElement> {
    a.inv()
}

/// `a^e` by square-and-multiply, with `0^0 = 1`.
pub fn fe_pow(a: FieldElement, e: u64) -> FieldElement {
    a.pow(e)
}
