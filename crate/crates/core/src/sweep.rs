//! Oracle-equivalence sweeps over families of bands.

use std::fmt;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::band::BandSpec;
use crate::det::PreparedBand;
use crate::field::PrimeModulus;
use crate::inverse::{corner_elements, corner_threshold, inverse_compact, inverse_dense};
use crate::oracle::{oracle_det, oracle_inverse, oracle_poly_period, oracle_t_period};
use crate::par::Execution;
use crate::period::group_order;
use crate::Result;

pub const DEFAULT_SWEEP_SEED: u64 = 0x0b5e_55ed;
pub const RANDOM_PER_SHAPE: usize = 50;
pub const DEFAULT_ORDERS: RangeInclusive<u64> = 1..=64;

/// Every band over F_2 with `1 <= L, R <= 2`: the end coefficients are 1,
/// the interior ones range over {0, 1}.
pub fn f2_exhaustive_specs() -> Vec<BandSpec> {
    let m = PrimeModulus::new(2).expect("2 is prime");
    let mut out = Vec::new();
    for lower in 1..=2usize {
        for upper in 1..=2usize {
            let interior = lower + upper - 1;
            for mask in 0..1u64 << interior {
                let mut band = vec![1u64];
                band.extend((0..interior).map(|b| (mask >> b) & 1));
                band.push(1);
                out.push(BandSpec::new(m, lower, band).expect("valid by construction"));
            }
        }
    }
    out
}

/// `count` random bands of shape `(L, R)` over F_p.
pub fn random_specs(
    p: u64,
    lower: usize,
    upper: usize,
    count: usize,
    rng: &mut impl Rng,
) -> Result<Vec<BandSpec>> {
    let m = PrimeModulus::new(p)?;
    (0..count)
        .map(|_| {
            let mut band = vec![rng.gen_range(1..p)];
            band.extend((0..lower + upper - 1).map(|_| rng.gen_range(0..p)));
            band.push(rng.gen_range(1..p));
            BandSpec::new(m, lower, band)
        })
        .collect()
}

/// The F_2 bands plus [`RANDOM_PER_SHAPE`] seeded random bands for each
/// `p in {3, 5}`, `1 <= L, R <= 2`.
pub fn default_specs() -> Vec<BandSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SWEEP_SEED);
    let mut out = f2_exhaustive_specs();
    for p in [3u64, 5] {
        for lower in 1..=2 {
            for upper in 1..=2 {
                out.extend(
                    random_specs(p, lower, upper, RANDOM_PER_SHAPE, &mut rng)
                        .expect("valid shapes"),
                );
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Period,
    Det,
    DenseInverse,
    Corner,
    CompactInverse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub spec: BandSpec,
    /// 0 for order-free checks.
    pub n: u64,
    pub check: Check,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} mismatch for {} at n={}: {}",
            self.check, self.spec, self.n, self.detail
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub specs: usize,
    /// Individual comparisons made.
    pub comparisons: usize,
    pub mismatches: Vec<Mismatch>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn merge(&mut self, other: SweepReport) {
        self.specs += other.specs;
        self.comparisons += other.comparisons;
        self.mismatches.extend(other.mismatches);
    }
}

/// Compares every fast path against the oracle for one band and each order
/// in `orders`: the period against both oracle periods, the determinant,
/// and for nonsingular orders the dense inverse, the corner block (orders
/// `>= 2L + R`) and the compact inverse (orders `>= 2P`).
pub fn verify_spec(spec: &BandSpec, orders: RangeInclusive<u64>) -> SweepReport {
    let mut report = SweepReport {
        specs: 1,
        ..SweepReport::default()
    };
    let mut fail = |n: u64, check: Check, detail: String| {
        report.mismatches.push(Mismatch {
            spec: spec.clone(),
            n,
            check,
            detail,
        })
    };
    let mut comparisons = 0usize;

    let prep = match PreparedBand::new(spec) {
        Ok(p) => p,
        Err(e) => {
            fail(0, Check::Period, e.to_string());
            return report;
        }
    };
    let period = prep.period();
    let bound = group_order(spec.p(), spec.span()).unwrap_or(u64::MAX);
    comparisons += 2;
    match oracle_t_period(spec, bound) {
        Ok(q) if q == period => {}
        other => fail(
            0,
            Check::Period,
            format!("T period {other:?}, expected {period}"),
        ),
    }
    match oracle_poly_period(&spec.feedback_poly(), bound) {
        Ok(q) if q == period => {}
        other => fail(
            0,
            Check::Period,
            format!("polynomial period {other:?}, expected {period}"),
        ),
    }

    for n in orders {
        let nu = n as usize;
        comparisons += 1;
        let expect = match oracle_det(spec, nu) {
            Ok(d) => d,
            Err(e) => {
                fail(n, Check::Det, format!("oracle failed: {e}"));
                continue;
            }
        };
        match prep.det(n) {
            Ok(d) if d.value == expect => {}
            other => fail(
                n,
                Check::Det,
                format!("got {other:?}, oracle {}", expect.value()),
            ),
        }
        if expect.is_zero() {
            continue;
        }
        let oracle = match oracle_inverse(spec, nu) {
            Ok(inv) => inv,
            Err(e) => {
                fail(n, Check::DenseInverse, format!("oracle failed: {e}"));
                continue;
            }
        };
        comparisons += 1;
        match inverse_dense(spec, nu) {
            Ok(inv) if inv.matrix == oracle => {}
            Ok(_) => fail(n, Check::DenseInverse, "entries differ".into()),
            Err(e) => fail(n, Check::DenseInverse, e.to_string()),
        }
        if n >= corner_threshold(spec) {
            comparisons += 1;
            let expect = oracle.submatrix(0, spec.upper(), 0, spec.lower());
            match corner_elements(spec, n) {
                Ok(c) if c == expect => {}
                other => fail(
                    n,
                    Check::Corner,
                    format!("got {other:?}, oracle {:?}", expect.to_rows()),
                ),
            }
        }
        if n >= 2 * period {
            comparisons += 1;
            match inverse_compact(spec, n).and_then(|c| c.materialize()) {
                Ok(full) if full == oracle => {}
                Ok(_) => fail(n, Check::CompactInverse, "entries differ".into()),
                Err(e) => fail(n, Check::CompactInverse, e.to_string()),
            }
        }
    }
    report.comparisons = comparisons;
    report
}

/// [`verify_spec`] over many bands, one band per task.
pub fn run_sweep(specs: &[BandSpec], orders: RangeInclusive<u64>, exec: Execution) -> SweepReport {
    let parts = exec.map_slice(specs, |s| verify_spec(s, orders.clone()));
    let mut total = SweepReport::default();
    for part in parts {
        total.merge(part);
    }
    total
}
