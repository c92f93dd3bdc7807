//! The period (order) of a polynomial: the least `q` with `f | x^q - 1`.
//!
//! For an irreducible factor of degree `d` the order divides `p^d - 1`; it is
//! found by factoring `p^d - 1` and stripping primes while `x^q = 1` still
//! holds. The period of a general `f = prod f_i^e_i` is
//! `lcm(P(f_i)) * p^t` with `p^t` the least power of `p` that is `>= max e_i`.

use crate::factor::{is_irreducible, poly_factorize, Factorization};
use crate::poly::{poly_mod_pow, Poly};
use crate::{Error, Result};

/// Largest value period arithmetic may reach: `2^63 - 1`.
pub const PERIOD_LIMIT: u64 = (1 << 63) - 1;

/// `p^d - 1`, or `CapacityExceeded` once it reaches `2^63`.
pub fn group_order(p: u64, d: usize) -> Result<u64> {
    let over = || Error::CapacityExceeded(format!("{p}^{d} - 1 does not fit below 2^63"));
    let d32 = u32::try_from(d).map_err(|_| over())?;
    let full = p.checked_pow(d32).ok_or_else(over)?;
    let n = full - 1;
    if n > PERIOD_LIMIT {
        return Err(over());
    }
    Ok(n)
}

/// Multiplicative order of `x` modulo an irreducible `f` with `f(0) != 0`.
pub fn irreducible_order(f: &Poly) -> Result<u64> {
    let d = f.degree().ok_or(Error::NotIrreducible)?;
    if f.constant_term() == 0 {
        return Err(Error::RootAtZero);
    }
    if !is_irreducible(f) {
        return Err(Error::NotIrreducible);
    }
    order_of_x(f, group_order(f.modulus().get(), d)?)
}

/// Least divisor `q` of `bound` with `x^q = 1 mod f`, given `x^bound = 1`.
fn order_of_x(f: &Poly, bound: u64) -> Result<u64> {
    let x = Poly::x(f.modulus());
    let is_one = |q: u64| -> Result<bool> { Ok(poly_mod_pow(&x, q, f)?.is_one()) };
    let mut q = bound;
    for (prime, _) in num_prime::nt_funcs::factorize64(bound) {
        while q.is_multiple_of(prime) && is_one(q / prime)? {
            q /= prime;
        }
    }
    Ok(q)
}

/// A polynomial's period together with the pieces it was assembled from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodReport {
    pub factorization: Factorization,
    /// Order of each irreducible factor, aligned with `factorization.factors`.
    pub factor_orders: Vec<u64>,
    /// Least power of `p` that is at least the largest multiplicity.
    pub multiplicity_power: u64,
    pub period: u64,
}

/// Period of `f` (degree >= 1, `f(0) != 0`).
pub fn poly_period(f: &Poly) -> Result<u64> {
    Ok(period_report(f)?.period)
}

pub fn period_report(f: &Poly) -> Result<PeriodReport> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ZeroOrConstant),
    };
    if f.constant_term() == 0 {
        return Err(Error::RootAtZero);
    }
    let p = f.modulus().get();
    group_order(p, d)?;

    let factorization = poly_factorize(f)?;
    let factor_orders = factorization
        .factors
        .iter()
        .map(|(g, _)| {
            let dg = g.degree().expect("irreducible factors are nonconstant");
            order_of_x(g, group_order(p, dg)?)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut period = 1u64;
    for &o in &factor_orders {
        period = lcm(period, o)?;
    }
    let max_e = u64::from(factorization.max_multiplicity());
    let mut multiplicity_power = 1u64;
    while multiplicity_power < max_e {
        multiplicity_power = multiplicity_power
            .checked_mul(p)
            .ok_or_else(|| Error::CapacityExceeded("multiplicity power".into()))?;
    }
    let period = period
        .checked_mul(multiplicity_power)
        .filter(|&v| v <= PERIOD_LIMIT)
        .ok_or_else(|| Error::CapacityExceeded("period product".into()))?;
    Ok(PeriodReport {
        factorization,
        factor_orders,
        multiplicity_power,
        period,
    })
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b))
        .checked_mul(b)
        .filter(|&v| v <= PERIOD_LIMIT)
        .ok_or_else(|| Error::CapacityExceeded(format!("lcm({a}, {b})")))
}
