//! Dense univariate polynomials over F_p and the LFSR recurrence they define.

use std::fmt;

use crate::field::{FieldElement, PrimeModulus};
use crate::{Error, Result};

/// A polynomial with coefficients in ascending powers, always normalized so
/// the leading coefficient is nonzero. The zero polynomial has no
/// coefficients and no degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    modulus: PrimeModulus,
    coeffs: Vec<u64>,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, reducing them mod p.
    pub fn new(modulus: PrimeModulus, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c = modulus.reduce(*c);
        }
        let mut p = Poly { modulus, coeffs };
        p.trim();
        p
    }

    /// Parses the ascending comma list used on the command line and in JSON,
    /// e.g. `"1,1,0,1,1"` for `1 + x + x^3 + x^4`. Coefficients must already
    /// be residues in `[0, p)`.
    pub fn parse(modulus: PrimeModulus, text: &str) -> Result<Self> {
        let coeffs = parse_residues(modulus, text)?;
        Ok(Poly::new(modulus, coeffs))
    }

    pub fn zero(modulus: PrimeModulus) -> Self {
        Poly {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub fn one(modulus: PrimeModulus) -> Self {
        Poly::new(modulus, vec![1])
    }

    /// `c * x^k`.
    pub fn monomial(modulus: PrimeModulus, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly::new(modulus, coeffs)
    }

    pub fn x(modulus: PrimeModulus) -> Self {
        Poly::monomial(modulus, 1, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u64 {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let m = self.modulus;
        let v = self
            .coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| m.add(m.mul(acc, x.value()), c));
        m.element(v)
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self
            .modulus
            .inv(self.leading())
            .expect("leading coefficient is nonzero");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Poly {
        let m = self.modulus;
        Poly::new(m, self.coeffs.iter().map(|&a| m.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let m = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            m,
            (0..len)
                .map(|k| m.add(self.coeff(k), other.coeff(k)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let m = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            m,
            (0..len)
                .map(|k| m.sub(self.coeff(k), other.coeff(k)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.modulus);
        }
        let m = self.modulus;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = m.add(out[i + j], m.mul(a, b));
            }
        }
        Poly::new(m, out)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(self.modulus);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Quotient and remainder; fails when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::ZeroModulus)?;
        let m = self.modulus;
        let Some(sd) = self.degree() else {
            return Ok((Poly::zero(m), Poly::zero(m)));
        };
        if sd < dd {
            return Ok((Poly::zero(m), self.clone()));
        }
        let lead_inv = m.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = m.mul(rem[k + dd], lead_inv);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (t, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + t] = m.sub(rem[k + t], m.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(m, quot), Poly::new(m, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact division; panics in debug builds if the remainder is nonzero.
    pub(crate) fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let m = self.modulus;
        Poly::new(
            m,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| m.mul(m.reduce(k as u64), c))
                .collect(),
        )
    }

    /// `(self * other) mod modpoly`.
    pub fn mul_mod(&self, other: &Poly, modpoly: &Poly) -> Result<Poly> {
        self.mul(other).rem(modpoly)
    }

    /// Ascending comma list, the inverse of [`Poly::parse`]. The zero
    /// polynomial renders as `"0"`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, c) => write!(f, "{c}x^{k}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn parse_residues(modulus: PrimeModulus, text: &str) -> Result<Vec<u64>> {
    let p = modulus.get();
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let v: u64 = tok.parse().map_err(|_| {
                Error::InvalidBand(format!("coefficient {tok:?} is not a decimal integer"))
            })?;
            if v >= p {
                return Err(Error::InvalidBand(format!(
                    "coefficient {v} is not a residue in [0, {p})"
                )));
            }
            Ok(v)
        })
        .collect()
}

/// `base^e mod modpoly` by square-and-multiply.
pub fn poly_mod_pow(base: &Poly, mut e: u64, modpoly: &Poly) -> Result<Poly> {
    if modpoly.degree().unwrap_or(0) < 1 {
        return Err(Error::ZeroModulus);
    }
    let mut acc = Poly::one(modpoly.modulus()).rem(modpoly)?;
    let mut b = base.rem(modpoly)?;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_mod(&b, modpoly)?;
        }
        e >>= 1;
        if e > 0 {
            b = b.mul_mod(&b, modpoly)?;
        }
    }
    Ok(acc)
}

/// Coefficient reversal `x^deg * f(1/x)`. Requires `f(0) != 0` so the degree
/// is preserved.
pub fn reciprocal(f: &Poly) -> Result<Poly> {
    if f.is_zero() || f.constant_term() == 0 {
        return Err(Error::RootAtZero);
    }
    let mut coeffs = f.coeffs().to_vec();
    coeffs.reverse();
    Ok(Poly::new(f.modulus(), coeffs))
}

/// Runs the shift register with feedback polynomial `f` (degree `d`) from
/// `seed = [x_1, ..., x_d]` and returns the first `count` terms, each new
/// term being `x_i = -(f_{d-1} x_{i-1} + ... + f_0 x_{i-d}) / f_d`.
pub fn lfsr_sequence(f: &Poly, seed: &[FieldElement], count: usize) -> Result<Vec<FieldElement>> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ZeroOrConstant),
    };
    if seed.len() != d {
        return Err(Error::SeedLengthMismatch {
            expected: d,
            got: seed.len(),
        });
    }
    let m = f.modulus();
    if let Some(bad) = seed.iter().find(|s| s.modulus() != m) {
        return Err(Error::MixedModulus {
            left: m.get(),
            right: bad.modulus().get(),
        });
    }
    let lead_inv = m.inv(f.leading())?;
    let mut xs: Vec<u64> = seed.iter().map(|s| s.value()).collect();
    while xs.len() < count {
        let i = xs.len();
        let acc = (1..=d).fold(0, |acc, s| m.add(acc, m.mul(xs[i - s], f.coeff(d - s))));
        xs.push(m.mul(m.neg(acc), lead_inv));
    }
    xs.truncate(count);
    Ok(xs.into_iter().map(|v| m.element(v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn poly(p: u64, c: &[u64]) -> Poly {
        Poly::new(fp(p), c.to_vec())
    }

    #[test]
    fn normalization_and_degree() {
        let z = poly(3, &[0, 3, 6]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(poly(5, &[1, 2, 0, 0]).degree(), Some(1));
    }

    #[test]
    fn mod_pow_examples() {
        let x = Poly::x(fp(2));
        let f = poly(2, &[1, 1, 1, 1, 1]);
        assert!(poly_mod_pow(&x, 5, &f).unwrap().is_one());
        assert!(poly_mod_pow(&x, 1, &poly(2, &[1, 1])).unwrap().is_one());
        assert!(poly_mod_pow(&x, 3, &poly(2, &[1, 1, 1])).unwrap().is_one());
        assert!(!poly_mod_pow(&x, 4, &f).unwrap().is_one());
        assert_eq!(poly_mod_pow(&x, 3, &poly(2, &[1])), Err(Error::ZeroModulus));
        assert_eq!(
            poly_mod_pow(&x, 3, &Poly::zero(fp(2))),
            Err(Error::ZeroModulus)
        );
    }

    #[test]
    fn division_identity() {
        let a = poly(5, &[3, 0, 4, 1, 2, 2]);
        let b = poly(5, &[1, 3, 2]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_is_monic() {
        // (x+1)(x+2) and (x+1)(x+3) over F_5
        let a = poly(5, &[1, 1]).mul(&poly(5, &[2, 1]));
        let b = poly(5, &[1, 1]).mul(&poly(5, &[3, 1])).scale(3);
        assert_eq!(a.gcd(&b), poly(5, &[1, 1]));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(
            reciprocal(&poly(3, &[2, 0, 1])).unwrap(),
            poly(3, &[1, 0, 2])
        );
        let pal = poly(2, &[1, 1, 0, 1, 1]);
        assert_eq!(reciprocal(&pal).unwrap(), pal);
        assert_eq!(
            reciprocal(&poly(2, &[1, 1, 0, 1])).unwrap(),
            poly(2, &[1, 0, 1, 1])
        );
        assert_eq!(reciprocal(&poly(2, &[0, 1])), Err(Error::RootAtZero));
    }

    fn seq(p: u64, f: &[u64], seed: &[u64], count: usize) -> Vec<u64> {
        let m = fp(p);
        let seed: Vec<_> = seed.iter().map(|&s| m.element(s)).collect();
        lfsr_sequence(&poly(p, f), &seed, count)
            .unwrap()
            .into_iter()
            .map(|e| e.value())
            .collect()
    }

    #[test]
    fn lfsr_examples() {
        assert_eq!(seq(2, &[1, 1, 1], &[1, 0], 8), vec![1, 0, 1, 1, 0, 1, 1, 0]);
        assert_eq!(seq(2, &[1, 1], &[1], 4), vec![1, 1, 1, 1]);
        let s = seq(2, &[1, 1, 1, 1, 1], &[1, 0, 0, 0], 12);
        for i in 0..7 {
            assert_eq!(s[i], s[i + 5]);
        }
        // short counts truncate the seed
        assert_eq!(seq(2, &[1, 1, 1], &[1, 0], 1), vec![1]);
    }

    #[test]
    fn lfsr_errors() {
        let m = fp(2);
        let f = poly(2, &[1, 1, 1]);
        assert_eq!(
            lfsr_sequence(&f, &[m.one()], 4),
            Err(Error::SeedLengthMismatch {
                expected: 2,
                got: 1
            })
        );
        assert_eq!(
            lfsr_sequence(&poly(2, &[1]), &[], 4),
            Err(Error::ZeroOrConstant)
        );
    }

    #[test]
    fn text_round_trip_and_display() {
        let m = fp(2);
        let f = Poly::parse(m, "1,1,0,1,1").unwrap();
        assert_eq!(f.to_text(), "1,1,0,1,1");
        assert_eq!(f.to_string(), "x^4 + x^3 + x + 1");
        assert_eq!(poly(3, &[1, 2, 1]).to_string(), "x^2 + 2x + 1");
        assert!(Poly::parse(m, "1,2").is_err());
        assert!(Poly::parse(m, "1,a").is_err());
    }

    #[test]
    fn derivative_in_char_p() {
        // d/dx (x^3 + x) over F_3 = 3x^2 + 1 = 1
        assert_eq!(poly(3, &[0, 1, 0, 1]).derivative(), poly(3, &[1]));
    }
}
