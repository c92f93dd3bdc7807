//! The banded Toeplitz family: one [`BandSpec`] describes the matrix of every
//! order `n`, with entry `(i, j)` equal to `c_{j-i}` inside the band and zero
//! outside it.

use std::fmt;

use crate::field::PrimeModulus;
use crate::matrix::DenseMatrix;
use crate::poly::{parse_residues, Poly};
use crate::{Error, Result};

/// Largest order that is ever materialized densely.
pub const DENSE_CAP: usize = 4096;

/// Prime `p`, lower half-bandwidth `L >= 1`, upper half-bandwidth `R >= 1`,
/// and the `L + 1 + R` coefficients `c_{-L}, ..., c_R` with `c_{-L}` and
/// `c_R` nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BandSpec {
    modulus: PrimeModulus,
    lower: usize,
    upper: usize,
    coeffs: Vec<u64>,
}

impl BandSpec {
    pub fn new(modulus: PrimeModulus, lower: usize, coeffs: Vec<u64>) -> Result<Self> {
        let p = modulus.get();
        if lower == 0 {
            return Err(Error::InvalidBand(
                "lower half-bandwidth must be at least 1".into(),
            ));
        }
        if coeffs.len() < lower + 2 {
            return Err(Error::InvalidBand(format!(
                "{} coefficients with lower = {lower} leaves no superdiagonal; need at least {}",
                coeffs.len(),
                lower + 2
            )));
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidBand(format!(
                "coefficient {bad} is not a residue in [0, {p})"
            )));
        }
        if coeffs[0] == 0 {
            return Err(Error::InvalidBand(
                "first coefficient c_{-L} must be nonzero".into(),
            ));
        }
        if coeffs[coeffs.len() - 1] == 0 {
            return Err(Error::InvalidBand(
                "last coefficient c_R must be nonzero".into(),
            ));
        }
        let upper = coeffs.len() - 1 - lower;
        Ok(BandSpec {
            modulus,
            lower,
            upper,
            coeffs,
        })
    }

    /// Parses the command-line form: prime, lower half-bandwidth, and the
    /// comma-separated list `c_{-L},...,c_R`.
    pub fn parse(p: u64, lower: usize, band: &str) -> Result<Self> {
        let modulus = PrimeModulus::new(p)?;
        BandSpec::new(modulus, lower, parse_residues(modulus, band)?)
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn p(&self) -> u64 {
        self.modulus.get()
    }

    /// `L`.
    pub fn lower(&self) -> usize {
        self.lower
    }

    /// `R`.
    pub fn upper(&self) -> usize {
        self.upper
    }

    /// `L + R`, the degree of the feedback polynomial and the size of `T`.
    pub fn span(&self) -> usize {
        self.lower + self.upper
    }

    /// Bandwidth `k = L + 1 + R`.
    pub fn width(&self) -> usize {
        self.coeffs.len()
    }

    /// `c_{-L}, ..., c_R`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `c_t`, zero outside `-L..=R`.
    #[inline]
    pub fn c(&self, t: i64) -> u64 {
        let idx = t + self.lower as i64;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            0
        } else {
            self.coeffs[idx as usize]
        }
    }

    pub fn c_upper(&self) -> u64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn c_lower(&self) -> u64 {
        self.coeffs[0]
    }

    /// The `n × n` matrix.
    pub fn materialize(&self, n: usize) -> Result<DenseMatrix> {
        if n > DENSE_CAP {
            return Err(Error::DenseTooLarge {
                n: n as u64,
                cap: DENSE_CAP,
            });
        }
        if n == 0 {
            return Err(Error::OrderTooSmall { n: 0, min: 1 });
        }
        let mut m = DenseMatrix::zeros(self.modulus, n, n);
        for i in 0..n {
            let lo = i.saturating_sub(self.lower);
            let hi = (i + self.upper).min(n - 1);
            for j in lo..=hi {
                m.set(i, j, self.c(j as i64 - i as i64));
            }
        }
        Ok(m)
    }

    /// `f(x) = c_R x^(L+R) + ... + c_{-L+1} x + c_{-L}`.
    pub fn feedback_poly(&self) -> Poly {
        Poly::new(self.modulus, self.coeffs.clone())
    }

    /// The `(L+R) × (L+R)` shift matrix: first column
    /// `(-c_{R-1}/c_R, ..., -c_{-L}/c_R)` and an identity on the
    /// superdiagonal. Left-multiplying by it performs one batch of
    /// elimination steps against a full band column.
    pub fn companion_t(&self) -> DenseMatrix {
        let m = self.modulus;
        let s = self.span();
        let inv = m.inv(self.c_upper()).expect("c_R is nonzero");
        let mut t = DenseMatrix::zeros(m, s, s);
        for a in 0..s {
            let c = self.c(self.upper as i64 - 1 - a as i64);
            t.set(a, 0, m.mul(m.neg(c), inv));
            if a + 1 < s {
                t.set(a, a + 1, 1);
            }
        }
        t
    }

    /// Entry `(a, b)` = `c_{b - a + shift}` over the given shape.
    fn toeplitz_block(&self, rows: usize, cols: usize, shift: i64) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.modulus, rows, cols);
        for a in 0..rows {
            for b in 0..cols {
                out.set(a, b, self.c(b as i64 - a as i64 + shift));
            }
        }
        out
    }

    /// Rows `1..=L+R`, columns `1..=R` of the matrix: the part to the left of
    /// the first full band column.
    pub(crate) fn leading_columns(&self) -> DenseMatrix {
        self.toeplitz_block(self.span(), self.upper, 0)
    }

    /// The last `L` columns restricted to the last `L+R` rows. Independent
    /// of the order.
    pub(crate) fn trailing_columns(&self) -> DenseMatrix {
        self.toeplitz_block(self.span(), self.lower, self.upper as i64)
    }

    /// Rows `L+1..=2L+R`, columns `1..=L+R`: upper triangular with `c_{-L}`
    /// on the diagonal.
    pub(crate) fn cofactor_left(&self) -> DenseMatrix {
        self.toeplitz_block(self.span(), self.span(), -(self.lower as i64))
    }

    /// Rows `1..=L`, columns `1..=L+R`.
    pub(crate) fn cofactor_top(&self) -> DenseMatrix {
        self.toeplitz_block(self.lower, self.span(), 0)
    }
}

impl fmt::Display for BandSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let band: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
        write!(
            f,
            "p={} L={} R={} band={}",
            self.modulus,
            self.lower,
            self.upper,
            band.join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: u64, lower: usize, band: &[u64]) -> BandSpec {
        BandSpec::new(PrimeModulus::new(p).unwrap(), lower, band.to_vec()).unwrap()
    }

    #[test]
    fn materialize_examples() {
        let m = spec(3, 1, &[1, 2, 1]).materialize(3).unwrap();
        assert_eq!(
            m.to_rows(),
            vec![vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]
        );

        let m = spec(2, 2, &[1, 1, 1, 1, 1]).materialize(2).unwrap();
        assert_eq!(m.to_rows(), vec![vec![1, 1], vec![1, 1]]);

        let m = spec(2, 2, &[1, 1, 0, 1, 1]).materialize(5).unwrap();
        assert_eq!(
            m.to_rows(),
            vec![
                vec![0, 1, 1, 0, 0],
                vec![1, 0, 1, 1, 0],
                vec![1, 1, 0, 1, 1],
                vec![0, 1, 1, 0, 1],
                vec![0, 0, 1, 1, 0],
            ]
        );
    }

    #[test]
    fn materialize_asymmetric_band() {
        // L = 1, R = 2: c_{-1}=2, c_0=3, c_1=0, c_2=1
        let m = spec(5, 1, &[2, 3, 0, 1]).materialize(4).unwrap();
        assert_eq!(
            m.to_rows(),
            vec![
                vec![3, 0, 1, 0],
                vec![2, 3, 0, 1],
                vec![0, 2, 3, 0],
                vec![0, 0, 2, 3]
            ]
        );
    }

    #[test]
    fn materialize_limits() {
        let s = spec(2, 1, &[1, 0, 1]);
        assert!(matches!(
            s.materialize(DENSE_CAP + 1),
            Err(Error::DenseTooLarge { .. })
        ));
        assert!(s.materialize(0).is_err());
    }

    #[test]
    fn feedback_poly_examples() {
        assert_eq!(
            spec(2, 2, &[1, 1, 1, 1, 1]).feedback_poly().to_string(),
            "x^4 + x^3 + x^2 + x + 1"
        );
        assert_eq!(
            spec(2, 2, &[1, 1, 0, 1, 1]).feedback_poly().to_string(),
            "x^4 + x^3 + x + 1"
        );
        assert_eq!(
            spec(3, 1, &[1, 2, 1]).feedback_poly().to_string(),
            "x^2 + 2x + 1"
        );
    }

    #[test]
    fn companion_examples() {
        let t = spec(3, 1, &[1, 2, 1]).companion_t();
        assert_eq!(t.to_rows(), vec![vec![1, 1], vec![2, 0]]);

        let t = spec(2, 2, &[1, 1, 1, 1, 1]).companion_t();
        assert_eq!(
            t.to_rows(),
            vec![
                vec![1, 1, 0, 0],
                vec![1, 0, 1, 0],
                vec![1, 0, 0, 1],
                vec![1, 0, 0, 0]
            ]
        );
        assert!(t.pow(5).unwrap().is_identity());
        assert!(!t.pow(1).unwrap().is_identity());
    }

    #[test]
    fn companion_is_invertible() {
        let s = spec(5, 2, &[3, 1, 4, 0, 2]);
        let t = s.companion_t();
        let d = t.determinant().unwrap().value();
        // det T = (-1)^(L+R-1) * (-c_{-L}/c_R)
        let m = s.modulus();
        let expect = m.mul(m.neg(s.c_lower()), m.inv(s.c_upper()).unwrap());
        let expect = if s.span().is_multiple_of(2) {
            m.neg(expect)
        } else {
            expect
        };
        assert_eq!(d, expect);
        assert_ne!(d, 0);
    }

    #[test]
    fn validation_messages() {
        let m = PrimeModulus::new(3).unwrap();
        let err = |lower, band: &[u64]| {
            BandSpec::new(m, lower, band.to_vec())
                .unwrap_err()
                .to_string()
        };
        assert!(err(1, &[0, 1, 1]).contains("c_{-L}"));
        assert!(err(1, &[1, 1, 0]).contains("c_R"));
        assert!(err(0, &[1, 1, 1]).contains("lower"));
        assert!(err(2, &[1, 1, 1]).contains("superdiagonal"));
        assert!(err(1, &[1, 3, 1]).contains("residue"));
        assert!(matches!(
            BandSpec::parse(4, 1, "1,1,1"),
            Err(Error::NotPrime(4))
        ));
        assert!(BandSpec::parse(3, 1, "1, 2, 1").is_ok());
    }

    #[test]
    fn palindromic_band_gives_symmetric_matrix() {
        let s = spec(5, 2, &[3, 1, 4, 1, 3]);
        let m = s.materialize(9).unwrap();
        assert_eq!(m, m.transpose());
    }
}
