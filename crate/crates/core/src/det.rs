//! Determinants of every order from one small matrix power.
//!
//! Eliminating the `R` leading columns against the full band columns one at a
//! time multiplies their `(L+R)`-row window by the shift matrix `T` and peels
//! off a factor `(-1)^R c_R`. After `e = n - L - R` steps only an
//! `(L+R) × (L+R)` matrix remains:
//!
//! ```text
//! |M_n| = (-1)^(R e) c_R^e det[T^e A | B]
//! ```
//!
//! Over F_p, `T^P(f) = I` and `c_R^(p-1) = 1`, so both powers reduce and the
//! cost no longer depends on `n`.

use crate::band::BandSpec;
use crate::field::FieldElement;
use crate::matrix::DenseMatrix;
use crate::period::{lcm, poly_period};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetMethod {
    /// `n >= L + R`: the shift-matrix formula.
    Shift,
    /// `n < L + R`: plain elimination on the materialized matrix.
    Dense,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetResult {
    pub value: FieldElement,
    pub n: u64,
    /// `(n - L - R) mod P(f)`, the power of `T` actually formed (0 for the
    /// dense path).
    pub reduced_exponent: u64,
    pub period_used: u64,
    pub method: DetMethod,
}

/// A band with its period and shift matrix computed once, for repeated
/// determinant and inverse evaluations.
#[derive(Clone, Debug)]
pub struct PreparedBand {
    spec: BandSpec,
    period: u64,
    shift: DenseMatrix,
}

impl PreparedBand {
    pub fn new(spec: &BandSpec) -> Result<Self> {
        let period = poly_period(&spec.feedback_poly())?;
        Ok(PreparedBand {
            spec: spec.clone(),
            period,
            shift: spec.companion_t(),
        })
    }

    pub fn spec(&self) -> &BandSpec {
        &self.spec
    }

    /// `P(f)`, the multiplicative order of `T`.
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn shift_matrix(&self) -> &DenseMatrix {
        &self.shift
    }

    /// `T^(e mod P(f))`.
    pub(crate) fn shift_power(&self, e: u64) -> DenseMatrix {
        self.shift.pow(e % self.period).expect("T is square")
    }

    /// `c_R^e`, reducing the exponent mod `p - 1`.
    pub(crate) fn c_upper_power(&self, e: u64) -> u64 {
        let m = self.spec.modulus();
        m.pow(self.spec.c_upper(), e % (m.get() - 1))
    }

    pub fn det(&self, n: u64) -> Result<DetResult> {
        let spec = &self.spec;
        let m = spec.modulus();
        let span = spec.span() as u64;
        if n == 0 {
            return Err(Error::OrderTooSmall { n, min: 1 });
        }
        if n < span {
            let value = spec.materialize(n as usize)?.determinant()?;
            return Ok(DetResult {
                value,
                n,
                reduced_exponent: 0,
                period_used: self.period,
                method: DetMethod::Dense,
            });
        }
        let e = n - span;
        let reduced = e % self.period;
        let window = self.shift_power(reduced).mul(&spec.leading_columns())?;
        let core = window
            .hconcat(&spec.trailing_columns())?
            .determinant()?
            .value();
        let mut value = m.mul(self.c_upper_power(e), core);
        // parity of R*e, taken from the true exponent
        if spec.upper() % 2 == 1 && e % 2 == 1 {
            value = m.neg(value);
        }
        Ok(DetResult {
            value: m.element(value),
            n,
            reduced_exponent: reduced,
            period_used: self.period,
            method: DetMethod::Shift,
        })
    }

    /// `lcm(p - 1, P(f))`.
    pub fn det_period(&self) -> Result<u64> {
        lcm(self.spec.p() - 1, self.period)
    }
}

/// Determinant of the order-`n` matrix, for any `1 <= n < 2^64`.
pub fn det_fast(spec: &BandSpec, n: u64) -> Result<DetResult> {
    PreparedBand::new(spec)?.det(n)
}

/// `lcm(p - 1, P(f))`: a period of `n -> |M_n|` for `n >= L + R`. It need
/// not be the least one; see [`det_minimal_period`].
pub fn det_period(spec: &BandSpec) -> Result<u64> {
    PreparedBand::new(spec)?.det_period()
}

/// Upper limit on the scan performed by [`det_minimal_period`].
pub const MINIMAL_PERIOD_SCAN_LIMIT: u64 = 1 << 20;

/// The least period of `n -> |M_n|` on `n >= L + R`, found by testing the
/// divisors of [`det_period`] against one full cycle of determinants.
pub fn det_minimal_period(spec: &BandSpec) -> Result<u64> {
    let prepared = PreparedBand::new(spec)?;
    let full = prepared.det_period()?;
    if full > MINIMAL_PERIOD_SCAN_LIMIT {
        return Err(Error::CapacityExceeded(format!(
            "determinant period {full} exceeds the scan limit {MINIMAL_PERIOD_SCAN_LIMIT}"
        )));
    }
    let start = spec.span() as u64;
    let values = (start..start + full)
        .map(|n| prepared.det(n).map(|d| d.value.value()))
        .collect::<Result<Vec<_>>>()?;
    let len = values.len();
    let mut divisors: Vec<u64> = (1..=full).filter(|q| full % q == 0).collect();
    divisors.sort_unstable();
    Ok(divisors
        .into_iter()
        .find(|&q| (0..len).all(|i| values[i] == values[(i + q as usize) % len]))
        .unwrap_or(full))
}
