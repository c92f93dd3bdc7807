//! Factorization over F_p: squarefree decomposition, distinct-degree
//! splitting, then equal-degree splitting.
//!
//! Equal-degree splitting is Cantor-Zassenhaus for odd `p`, driven by a
//! caller-supplied generator. For `p = 2` it uses the trace map on the
//! monomial basis `x, x^2, ...`, which always finds a split and needs no
//! randomness.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{FieldElement, PrimeModulus};
use crate::poly::{poly_mod_pow, Poly};
use crate::{Error, Result};

/// Seed used by [`poly_factorize`].
pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed_f00d;

/// `unit * prod(factor^multiplicity)`, factors monic, irreducible, distinct,
/// and sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn reconstruct(&self) -> Poly {
        let m = self.unit.modulus();
        self.factors
            .iter()
            .fold(Poly::new(m, vec![self.unit.value()]), |acc, (f, e)| {
                acc.mul(&f.pow(u64::from(*e)))
            })
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.unit.modulus()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.factors.iter().map(|(_, e)| *e).max().unwrap_or(0)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.unit.value() != 1 {
            parts.push(self.unit.to_string());
        }
        for (g, e) in &self.factors {
            let body = if g.degree() == Some(1) && g.coeffs()[0] == 0 {
                g.to_string()
            } else {
                format!("({g})")
            };
            if *e == 1 {
                parts.push(body);
            } else {
                parts.push(format!("{body}^{e}"));
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// Factors `f` with the fixed default seed, so results are reproducible.
pub fn poly_factorize(f: &Poly) -> Result<Factorization> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_FACTOR_SEED);
    poly_factorize_with(f, &mut rng)
}

/// Factors `f` using `rng` for equal-degree splitting (odd `p` only).
pub fn poly_factorize_with<R: Rng + ?Sized>(f: &Poly, rng: &mut R) -> Result<Factorization> {
    match f.degree() {
        Some(d) if d >= 1 => {}
        _ => return Err(Error::ZeroOrConstant),
    }
    let m = f.modulus();
    let unit = m.element(f.leading());
    let monic = f.monic();

    let mut merged: BTreeMap<(usize, Vec<u64>), (Poly, u32)> = BTreeMap::new();
    for (part, mult) in squarefree_decomposition(&monic) {
        for (block, d) in distinct_degree(&part) {
            for g in equal_degree(&block, d, rng) {
                let key = (g.degree().unwrap_or(0), g.coeffs().to_vec());
                merged.entry(key).or_insert((g, 0)).1 += mult;
            }
        }
    }
    Ok(Factorization {
        unit,
        factors: merged.into_values().collect(),
    })
}

/// Pairs `(g, i)` with each `g` squarefree and `f = prod g^i`. The same
/// irreducible can appear under two multiplicities when its exponent has a
/// part divisible by `p`; callers merge after full factorization.
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let p = f.modulus().get() as u32;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let rest = if df.is_zero() {
        f.clone()
    } else {
        let mut c = f.gcd(&df);
        let mut w = f.div_exact(&c);
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_exact(&y);
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = c.div_exact(&w);
            i += 1;
        }
        c
    };
    if !rest.is_one() {
        for (g, e) in squarefree_decomposition(&pth_root(&rest)) {
            out.push((g, e * p));
        }
    }
    out
}

/// For `f` with nonzero coefficients only at multiples of `p`, returns `g`
/// with `g^p = f` (coefficients are fixed by Frobenius in F_p).
fn pth_root(f: &Poly) -> Poly {
    let p = f.modulus().get() as usize;
    Poly::new(f.modulus(), f.coeffs().iter().step_by(p).copied().collect())
}

/// Splits a squarefree monic `f` into `(product of all degree-d irreducible
/// factors, d)` pairs.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let m = f.modulus();
    let p = m.get();
    let x = Poly::x(m);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest).expect("nonzero");
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = poly_mod_pow(&h, p, &rest).expect("degree >= 2");
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((rest, deg));
    }
    out
}

/// Splits a product of distinct monic irreducibles of degree `d`.
fn equal_degree<R: Rng + ?Sized>(f: &Poly, d: usize, rng: &mut R) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let g = if f.modulus().get() == 2 {
        trace_split(f, d)
    } else {
        loop {
            if let Some(g) = cantor_zassenhaus_try(f, d, rng) {
                break g;
            }
        }
    };
    let h = f.div_exact(&g);
    let mut out = equal_degree(&g, d, rng);
    out.extend(equal_degree(&h, d, rng));
    out
}

fn is_proper(g: &Poly, f: &Poly) -> bool {
    let dg = g.degree().unwrap_or(0);
    dg > 0 && dg < f.degree().unwrap_or(0)
}

fn trace_split(f: &Poly, d: usize) -> Poly {
    let m = f.modulus();
    let n = f.degree().expect("nonzero");
    for k in 1..n {
        let a = Poly::monomial(m, 1, k).rem(f).expect("nonzero");
        let mut t = a.clone();
        let mut acc = a;
        for _ in 1..d {
            t = t.mul_mod(&t, f).expect("nonzero");
            acc = acc.add(&t);
        }
        let g = acc.gcd(f);
        if is_proper(&g, f) {
            return g;
        }
    }
    unreachable!("trace images of the monomial basis span every CRT component")
}

fn cantor_zassenhaus_try<R: Rng + ?Sized>(f: &Poly, d: usize, rng: &mut R) -> Option<Poly> {
    let m = f.modulus();
    let p = m.get();
    let n = f.degree().expect("nonzero");
    let a = Poly::new(m, (0..n).map(|_| rng.gen_range(0..p)).collect());
    if a.degree().unwrap_or(0) == 0 {
        return None;
    }
    let g = a.gcd(f);
    if is_proper(&g, f) {
        return Some(g);
    }
    // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p - 1)/2), avoiding p^d.
    let mut t = a.clone();
    let mut norm = a;
    for _ in 1..d {
        t = poly_mod_pow(&t, p, f).ok()?;
        norm = norm.mul_mod(&t, f).ok()?;
    }
    let b = poly_mod_pow(&norm, (p - 1) / 2, f).ok()?;
    let g = b.sub(&Poly::one(m)).gcd(f);
    is_proper(&g, f).then_some(g)
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &Poly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let m = f.modulus();
    let f = f.monic();
    let x = Poly::x(m);
    let frob_iter = |k: usize| -> Poly {
        let mut h = x.clone();
        for _ in 0..k {
            h = poly_mod_pow(&h, m.get(), &f).expect("degree >= 2");
        }
        h
    };
    if !frob_iter(n).sub(&x).rem(&f).expect("nonzero").is_zero() {
        return false;
    }
    prime_divisors(n as u64)
        .into_iter()
        .all(|q| frob_iter(n / q as usize).sub(&x).gcd(&f).is_one())
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
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
    fn pentadiagonal_example_factorizations() {
        let fz = poly_factorize(&poly(2, &[1, 1, 0, 1, 1])).unwrap();
        assert_eq!(
            fz.factors,
            vec![(poly(2, &[1, 1]), 2), (poly(2, &[1, 1, 1]), 1)]
        );
        assert_eq!(fz.to_string(), "(x + 1)^2 (x^2 + x + 1)");

        let fz = poly_factorize(&poly(2, &[1, 1, 1, 1, 1])).unwrap();
        assert!(fz.is_irreducible());
    }

    #[test]
    fn difference_of_squares_over_f3() {
        let fz = poly_factorize(&poly(3, &[2, 0, 1])).unwrap();
        assert_eq!(
            fz.factors,
            vec![(poly(3, &[1, 1]), 1), (poly(3, &[2, 1]), 1)]
        );
        assert_eq!(fz.unit.value(), 1);
    }

    #[test]
    fn non_monic_input_keeps_unit() {
        // 2(x+1)^3 over F_3: derivative vanishes, exercises the p-th root path
        let f = poly(3, &[1, 1]).pow(3).scale(2);
        let fz = poly_factorize(&f).unwrap();
        assert_eq!(fz.unit.value(), 2);
        assert_eq!(fz.factors, vec![(poly(3, &[1, 1]), 3)]);
        assert_eq!(fz.reconstruct(), f);
    }

    #[test]
    fn mixed_multiplicity_merges() {
        // (x+1)^5 (x^2+1)^3 over F_3: 5 = 3 + 2 splits across the two stages
        let f = poly(3, &[1, 1]).pow(5).mul(&poly(3, &[1, 0, 1]).pow(3));
        let fz = poly_factorize(&f).unwrap();
        assert_eq!(
            fz.factors,
            vec![(poly(3, &[1, 1]), 5), (poly(3, &[1, 0, 1]), 3)]
        );
    }

    #[test]
    fn equal_degree_splitting_over_f2_and_f5() {
        // four distinct quadratics over F_2? only one exists; use cubics instead
        let f = poly(2, &[1, 1, 0, 1]).mul(&poly(2, &[1, 0, 1, 1]));
        let fz = poly_factorize(&f).unwrap();
        assert_eq!(fz.factors.len(), 2);
        assert_eq!(fz.reconstruct(), f);

        let f = poly(5, &[2, 0, 1])
            .mul(&poly(5, &[3, 0, 1]))
            .mul(&poly(5, &[1, 1, 1]));
        let fz = poly_factorize(&f).unwrap();
        assert_eq!(fz.factors.len(), 3);
        assert!(fz.factors.iter().all(|(g, e)| *e == 1 && is_irreducible(g)));
        assert_eq!(fz.reconstruct(), f);
    }

    #[test]
    fn rejects_constants() {
        assert_eq!(poly_factorize(&poly(5, &[3])), Err(Error::ZeroOrConstant));
        assert_eq!(
            poly_factorize(&Poly::zero(fp(5))),
            Err(Error::ZeroOrConstant)
        );
    }

    #[test]
    fn irreducibility_test() {
        assert!(is_irreducible(&poly(2, &[1, 1, 1])));
        assert!(is_irreducible(&poly(2, &[1, 1, 0, 0, 1])));
        assert!(!is_irreducible(&poly(2, &[1, 0, 1])));
        assert!(!is_irreducible(&poly(2, &[1, 1, 0, 1, 1])));
        assert!(is_irreducible(&poly(3, &[1, 0, 1])));
        assert!(!is_irreducible(&poly(5, &[1, 0, 1])));
    }

    #[test]
    fn counts_irreducibles_over_f2() {
        // Necklace counts of monic irreducibles of degree 1..=8 over F_2.
        let expected = [2, 1, 2, 3, 6, 9, 18, 30];
        for (d, &want) in (1..=8).zip(expected.iter()) {
            let count = (0u64..1 << d)
                .filter(|bits| {
                    let mut c: Vec<u64> = (0..d).map(|k| (bits >> k) & 1).collect();
                    c.push(1);
                    is_irreducible(&poly(2, &c))
                })
                .count();
            assert_eq!(count, want, "degree {d}");
        }
    }
}
