//! Inverses of banded Toeplitz matrices.
//!
//! Write `x_{i,j}` for the entries of `M^{-1}` (1-based). The pipeline is:
//!
//! 1. **Corner.** The `R × L` block `x_{i,j}`, `i <= R`, `j <= L`, from
//!    cofactors: `x_{i,j} = (-1)^(i+j) |M without row j, column i| / |M|`.
//!    Moving rows `1..L` (less row `j`) below the others turns that minor
//!    into a left block of width `L+R-1` followed by full band columns, so
//!    the shift-matrix elimination used for the determinant applies again,
//!    `e = n - 2L - R` times, leaving a `(2L+R-1)`-square matrix
//!    `[[T^e A_i, B], [C_{j,i}, 0]]`.
//! 2. **Rows.** `X M = I` read column by column gives, for `j > L`,
//!    `c_{-L} x_{i,j} = δ_{i,j-L} - Σ_{t=-L+1..R} c_t x_{i,j-t-L}`.
//! 3. **Columns.** `M X = I` read row by row gives, for `i > R`,
//!    `c_R x_{i,j} = δ_{i,j+R} - Σ_{t=-L..R-1} c_t x_{i+t-R,j}`.
//!
//! Entries with a nonpositive index are zero in both recurrences.
//!
//! Over F_p the inverse is block periodic with block size `P = P(f)`: every
//! strictly upper `P × P` block equals `B_{1,2}`, every strictly lower one
//! `B_{2,1}`, every diagonal one `B_{1,1}`, with trailing blocks truncated.
//! [`inverse_compact`] computes only the `2P`-wide region those three blocks
//! live in. Distinct rows in step 2 and distinct columns in step 3 are
//! independent and run in parallel under [`Execution::Parallel`].

use serde::{Deserialize, Serialize};

use crate::band::{BandSpec, DENSE_CAP};
use crate::det::PreparedBand;
use crate::field::{FieldElement, PrimeModulus};
use crate::matrix::DenseMatrix;
use crate::par::Execution;
use crate::period::poly_period;
use crate::{Error, Result};

/// Largest period accepted by [`inverse_compact`]; the three blocks then
/// hold `3 * 2048^2` entries.
pub const COMPACT_PERIOD_CAP: u64 = (DENSE_CAP / 2) as u64;

/// Smallest order handled by the corner cofactor formula: `2L + R`.
pub fn corner_threshold(spec: &BandSpec) -> u64 {
    (2 * spec.lower() + spec.upper()) as u64
}

fn parity_of_product(a: u64, b: u64) -> u64 {
    (a & 1) & (b & 1)
}

fn corner_with(prep: &PreparedBand, n: u64, det: u64, exec: Execution) -> Result<DenseMatrix> {
    let spec = prep.spec();
    let m = spec.modulus();
    let (lower, upper) = (spec.lower(), spec.upper());
    let min = corner_threshold(spec);
    if n < min {
        return Err(Error::OrderTooSmall { n, min });
    }
    let e = n - min;
    let shifted = prep.shift_power(e).mul(&spec.cofactor_left())?;
    let trailing = spec.trailing_columns();
    let top = spec.cofactor_top();
    let zero = DenseMatrix::zeros(m, lower - 1, lower);
    let scale = m.mul(prep.c_upper_power(e), m.inv(det)?);
    // row reordering (L-1)(n-L) plus one (-1)^(L+R-1) per elimination step
    let base_parity = parity_of_product((lower - 1) as u64, n - lower as u64)
        ^ parity_of_product((lower + upper - 1) as u64, e);

    let entries = exec.map_range(0, upper * lower, |idx| -> Result<u64> {
        let (i, j) = (idx / lower, idx % lower);
        let left = shifted.without_col(i);
        let bottom = top.without_row(j).without_col(i);
        let minor = DenseMatrix::block(&left, &trailing, &bottom, &zero)?;
        let v = m.mul(scale, minor.determinant()?.value());
        let odd = (base_parity + (i + j) as u64) & 1 == 1;
        Ok(if odd { m.neg(v) } else { v })
    });
    DenseMatrix::from_vec(
        m,
        upper,
        lower,
        entries.into_iter().collect::<Result<Vec<_>>>()?,
    )
}

/// The `R × L` corner `x_{i,j}`, `1 <= i <= R`, `1 <= j <= L`, of the
/// order-`n` inverse, for `n >= 2L + R`.
pub fn corner_elements(spec: &BandSpec, n: u64) -> Result<DenseMatrix> {
    let prep = PreparedBand::new(spec)?;
    let det = prep.det(n)?.value.value();
    if det == 0 {
        return Err(Error::Singular);
    }
    corner_with(&prep, n, det, Execution::default())
}

/// Fills `row[lower..]` of inverse row `i` (1-based) from its first `L`
/// entries.
fn fill_row(spec: &BandSpec, c_lower_inv: u64, i: usize, row: &mut [u64]) {
    let m = spec.modulus();
    let (lower, upper) = (spec.lower() as i64, spec.upper() as i64);
    for j in lower as usize + 1..=row.len() {
        let mut acc = u64::from(i + lower as usize == j);
        for t in -lower + 1..=upper {
            let k = j as i64 - t - lower;
            if k >= 1 {
                acc = m.sub(acc, m.mul(spec.c(t), row[k as usize - 1]));
            }
        }
        row[j - 1] = m.mul(acc, c_lower_inv);
    }
}

/// Fills `col[upper..]` of inverse column `j` (1-based) from its first `R`
/// entries.
fn fill_col(spec: &BandSpec, c_upper_inv: u64, j: usize, col: &mut [u64]) {
    let m = spec.modulus();
    let (lower, upper) = (spec.lower() as i64, spec.upper() as i64);
    for i in upper as usize + 1..=col.len() {
        let mut acc = u64::from(i == j + upper as usize);
        for t in -lower..upper {
            let k = i as i64 + t - upper;
            if k >= 1 {
                acc = m.sub(acc, m.mul(spec.c(t), col[k as usize - 1]));
            }
        }
        col[i - 1] = m.mul(acc, c_upper_inv);
    }
}

fn check_window(prefix_len: usize, needed: u64) -> Result<()> {
    if (prefix_len as u64) < needed {
        return Err(Error::DimensionMismatch(format!(
            "prefix holds {prefix_len} entries, {needed} required"
        )));
    }
    Ok(())
}

/// One step of the row recurrence: `x_{i,j}` for `j > L` from
/// `row_prefix = [x_{i,1}, ..., x_{i,j-1}]` (longer prefixes are accepted;
/// only the first `j - 1` entries are read).
pub fn row_extend(
    spec: &BandSpec,
    row_prefix: &[FieldElement],
    i: u64,
    j: u64,
) -> Result<FieldElement> {
    if j <= spec.lower() as u64 {
        return Err(Error::DimensionMismatch(format!(
            "row recurrence needs j > L = {}, got j = {j}",
            spec.lower()
        )));
    }
    check_window(row_prefix.len(), j - 1)?;
    let m = spec.modulus();
    let mut row: Vec<u64> = row_prefix[..(j - 1) as usize]
        .iter()
        .map(|x| x.value())
        .collect();
    row.push(0);
    // reuse the kernel on a row whose only unknown is the last slot
    let lower = spec.lower() as i64;
    let mut acc = u64::from(i + lower as u64 == j);
    for t in -lower + 1..=spec.upper() as i64 {
        let k = j as i64 - t - lower;
        if k >= 1 {
            acc = m.sub(acc, m.mul(spec.c(t), row[k as usize - 1]));
        }
    }
    Ok(m.element(m.mul(acc, m.inv(spec.c_lower())?)))
}

/// One step of the column recurrence: `x_{i,j}` for `i > R` from
/// `col_prefix = [x_{1,j}, ..., x_{i-1,j}]`.
pub fn col_extend(
    spec: &BandSpec,
    col_prefix: &[FieldElement],
    i: u64,
    j: u64,
) -> Result<FieldElement> {
    if i <= spec.upper() as u64 {
        return Err(Error::DimensionMismatch(format!(
            "column recurrence needs i > R = {}, got i = {i}",
            spec.upper()
        )));
    }
    check_window(col_prefix.len(), i - 1)?;
    let m = spec.modulus();
    let upper = spec.upper() as i64;
    let mut acc = u64::from(i == j + upper as u64);
    for t in -(spec.lower() as i64)..upper {
        let k = i as i64 + t - upper;
        if k >= 1 {
            acc = m.sub(acc, m.mul(spec.c(t), col_prefix[k as usize - 1].value()));
        }
    }
    Ok(m.element(m.mul(acc, m.inv(spec.c_upper())?)))
}

/// Computes rows `1..=R` over `width` columns, then extends column `j` down
/// to `heights[j]` rows. Returns the columns.
fn sweep_region(
    spec: &BandSpec,
    corner: &DenseMatrix,
    width: usize,
    heights: impl Fn(usize) -> usize + Sync + Send,
    exec: Execution,
) -> Vec<Vec<u64>> {
    let m = spec.modulus();
    let (lower, upper) = (spec.lower(), spec.upper());
    let c_lower_inv = m.inv(spec.c_lower()).expect("c_{-L} is nonzero");
    let c_upper_inv = m.inv(spec.c_upper()).expect("c_R is nonzero");

    let top_rows = exec.map_range(0, upper, |i| {
        let mut row = vec![0u64; width];
        row[..lower].copy_from_slice(corner.row(i));
        fill_row(spec, c_lower_inv, i + 1, &mut row);
        row
    });
    exec.map_range(0, width, |j| {
        let mut col = vec![0u64; heights(j).max(upper)];
        for (i, r) in top_rows.iter().enumerate() {
            col[i] = r[j];
        }
        fill_col(spec, c_upper_inv, j + 1, &mut col);
        col
    })
}

/// A fully materialized inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseInverse {
    pub matrix: DenseMatrix,
    pub det: FieldElement,
}

pub fn inverse_dense(spec: &BandSpec, n: usize) -> Result<DenseInverse> {
    inverse_dense_with(spec, n, Execution::default())
}

/// Full `n × n` inverse: corner, then rows `1..=R`, then every column. Orders
/// below `2L + R` fall back to Gauss-Jordan.
pub fn inverse_dense_with(spec: &BandSpec, n: usize, exec: Execution) -> Result<DenseInverse> {
    if n > DENSE_CAP {
        return Err(Error::DenseTooLarge {
            n: n as u64,
            cap: DENSE_CAP,
        });
    }
    let prep = PreparedBand::new(spec)?;
    let det = prep.det(n as u64)?.value;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    if (n as u64) < corner_threshold(spec) {
        return Ok(DenseInverse {
            matrix: spec.materialize(n)?.inverse()?,
            det,
        });
    }
    let corner = corner_with(&prep, n as u64, det.value(), exec)?;
    let cols = sweep_region(spec, &corner, n, |_| n, exec);
    let mut matrix = DenseMatrix::zeros(spec.modulus(), n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            matrix.set(i, j, v);
        }
    }
    Ok(DenseInverse { matrix, det })
}

/// The inverse of order `n >= 2P` as three `P × P` blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicInverse {
    spec: BandSpec,
    n: u64,
    period: u64,
    det: FieldElement,
    block_diag: DenseMatrix,
    block_upper: DenseMatrix,
    block_lower: DenseMatrix,
}

pub fn inverse_compact(spec: &BandSpec, n: u64) -> Result<PeriodicInverse> {
    inverse_compact_with(spec, n, Execution::default())
}

/// Builds the compact inverse from rows `1..=P` over columns `1..=2P` and
/// rows `P+1..=2P` over columns `1..=P`.
pub fn inverse_compact_with(spec: &BandSpec, n: u64, exec: Execution) -> Result<PeriodicInverse> {
    let prep = PreparedBand::new(spec)?;
    let period = prep.period();
    if n / 2 < period {
        return Err(Error::OrderTooSmall { n, min: 2 * period });
    }
    let det = prep.det(n)?.value;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    if period > COMPACT_PERIOD_CAP {
        return Err(Error::CapacityExceeded(format!(
            "period {period} exceeds the compact block limit {COMPACT_PERIOD_CAP}"
        )));
    }
    let p = period as usize;
    let corner = corner_with(&prep, n, det.value(), exec)?;
    let cols = sweep_region(
        spec,
        &corner,
        2 * p,
        |j| if j < p { 2 * p } else { p },
        exec,
    );

    let m = spec.modulus();
    let block = |r0: usize, c0: usize| {
        let mut b = DenseMatrix::zeros(m, p, p);
        for a in 0..p {
            for c in 0..p {
                b.set(a, c, cols[c0 + c][r0 + a]);
            }
        }
        b
    };
    Ok(PeriodicInverse {
        spec: spec.clone(),
        n,
        period,
        det,
        block_diag: block(0, 0),
        block_upper: block(0, p),
        block_lower: block(p, 0),
    })
}

impl PeriodicInverse {
    pub fn spec(&self) -> &BandSpec {
        &self.spec
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn det(&self) -> FieldElement {
        self.det
    }

    /// `B_{1,1}`.
    pub fn block_diag(&self) -> &DenseMatrix {
        &self.block_diag
    }

    /// `B_{1,2}`.
    pub fn block_upper(&self) -> &DenseMatrix {
        &self.block_upper
    }

    /// `B_{2,1}`.
    pub fn block_lower(&self) -> &DenseMatrix {
        &self.block_lower
    }

    /// Field elements held: the three blocks plus the band coefficients.
    pub fn stored_elements(&self) -> usize {
        self.block_diag.len() + self.block_upper.len() + self.block_lower.len() + self.spec.width()
    }

    /// Entry `(i, j)` of the inverse, 1-based, in O(1).
    pub fn query(&self, i: u64, j: u64) -> Result<FieldElement> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(Error::IndexOutOfRange { i, j, n: self.n });
        }
        Ok(self.spec.modulus().element(self.entry(i - 1, j - 1)))
    }

    #[inline]
    fn entry(&self, i0: u64, j0: u64) -> u64 {
        let p = self.period;
        let (bi, bj) = (i0 / p, j0 / p);
        let (a, b) = ((i0 % p) as usize, (j0 % p) as usize);
        let block = match bi.cmp(&bj) {
            std::cmp::Ordering::Equal => &self.block_diag,
            std::cmp::Ordering::Less => &self.block_upper,
            std::cmp::Ordering::Greater => &self.block_lower,
        };
        block.get(a, b)
    }

    /// Expands to the full `n × n` matrix.
    pub fn materialize(&self) -> Result<DenseMatrix> {
        if self.n > DENSE_CAP as u64 {
            return Err(Error::DenseTooLarge {
                n: self.n,
                cap: DENSE_CAP,
            });
        }
        let n = self.n as usize;
        let mut out = DenseMatrix::zeros(self.spec.modulus(), n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.entry(i as u64, j as u64));
            }
        }
        Ok(out)
    }

    pub fn to_document(&self) -> InverseDocument {
        InverseDocument {
            p: self.spec.p(),
            lower: self.spec.lower(),
            band: self.spec.coeffs().to_vec(),
            n: self.n,
            period: self.period,
            det: self.det.value(),
            blocks: BlockDocument {
                diag: self.block_diag.to_rows(),
                upper: self.block_upper.to_rows(),
                lower: self.block_lower.to_rows(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InverseDocument =
            serde_json::from_str(text).map_err(|e| Error::MalformedInverse(e.to_string()))?;
        Self::from_document(doc)
    }

    /// Validates a document: band invariants, the recorded period against
    /// the band's, block shapes, and residues.
    pub fn from_document(doc: InverseDocument) -> Result<Self> {
        let bad = |msg: String| Error::MalformedInverse(msg);
        let modulus = PrimeModulus::new(doc.p)?;
        let spec = BandSpec::new(modulus, doc.lower, doc.band)?;
        let period = poly_period(&spec.feedback_poly())?;
        if doc.period != period {
            return Err(bad(format!(
                "period {} does not match the band's period {period}",
                doc.period
            )));
        }
        if doc.n / 2 < period {
            return Err(bad(format!("order {} is below 2P = {}", doc.n, 2 * period)));
        }
        if doc.det == 0 || doc.det >= doc.p {
            return Err(bad(format!("det {} is not a nonzero residue", doc.det)));
        }
        let block = |name: &str, rows: Vec<Vec<u64>>| -> Result<DenseMatrix> {
            let p = period as usize;
            if rows.len() != p || rows.iter().any(|r| r.len() != p) {
                return Err(bad(format!("block {name} is not {p}x{p}")));
            }
            if rows.iter().flatten().any(|&v| v >= doc.p) {
                return Err(bad(format!("block {name} holds a non-residue")));
            }
            DenseMatrix::from_rows(modulus, &rows)
        };
        Ok(PeriodicInverse {
            block_diag: block("diag", doc.blocks.diag)?,
            block_upper: block("upper", doc.blocks.upper)?,
            block_lower: block("lower", doc.blocks.lower)?,
            det: modulus.element(doc.det),
            spec,
            n: doc.n,
            period,
        })
    }
}

/// JSON form of a [`PeriodicInverse`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseDocument {
    pub p: u64,
    pub lower: usize,
    pub band: Vec<u64>,
    pub n: u64,
    pub period: u64,
    pub det: u64,
    pub blocks: BlockDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDocument {
    pub diag: Vec<Vec<u64>>,
    pub upper: Vec<Vec<u64>>,
    pub lower: Vec<Vec<u64>>,
}
