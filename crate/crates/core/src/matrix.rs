//! Row-major dense matrices over F_p.
//!
//! Indices are 0-based here; the band and inverse layers translate to the
//! 1-based convention of their public contracts.

use std::fmt;

use crate::field::{FieldElement, PrimeModulus};
use crate::par::Execution;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    modulus: PrimeModulus,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl DenseMatrix {
    pub fn zeros(modulus: PrimeModulus, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: PrimeModulus, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus.get();
        }
        m
    }

    /// Builds a matrix from row-major data, reducing entries mod p.
    pub fn from_vec(
        modulus: PrimeModulus,
        rows: usize,
        cols: usize,
        data: Vec<u64>,
    ) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(DenseMatrix {
            modulus,
            rows,
            cols,
            data: data.into_iter().map(|v| modulus.reduce(v)).collect(),
        })
    }

    pub fn from_rows(modulus: PrimeModulus, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_vec(modulus, rows.len(), cols, rows.concat())
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = self.modulus.reduce(v);
    }

    pub fn element(&self, i: usize, j: usize) -> FieldElement {
        self.modulus.element(self.get(i, j))
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = Self::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// Copy of rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> DenseMatrix {
        let mut s = Self::zeros(self.modulus, r1 - r0, c1 - c0);
        for i in r0..r1 {
            s.data[(i - r0) * s.cols..(i - r0 + 1) * s.cols]
                .copy_from_slice(&self.data[i * self.cols + c0..i * self.cols + c1]);
        }
        s
    }

    pub fn without_row(&self, r: usize) -> DenseMatrix {
        let rows: Vec<Vec<u64>> = (0..self.rows)
            .filter(|&i| i != r)
            .map(|i| self.row(i).to_vec())
            .collect();
        DenseMatrix {
            modulus: self.modulus,
            rows: self.rows - 1,
            cols: self.cols,
            data: rows.concat(),
        }
    }

    pub fn without_col(&self, c: usize) -> DenseMatrix {
        let data = (0..self.rows)
            .flat_map(|i| (0..self.cols).filter(move |&j| j != c).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        DenseMatrix {
            modulus: self.modulus,
            rows: self.rows,
            cols: self.cols - 1,
            data,
        }
    }

    /// `[[tl, tr], [bl, br]]`; widths and heights must line up.
    pub fn block(
        tl: &DenseMatrix,
        tr: &DenseMatrix,
        bl: &DenseMatrix,
        br: &DenseMatrix,
    ) -> Result<DenseMatrix> {
        if tl.rows != tr.rows || bl.rows != br.rows || tl.cols != bl.cols || tr.cols != br.cols {
            return Err(Error::DimensionMismatch("block layout".into()));
        }
        let rows = tl.rows + bl.rows;
        let cols = tl.cols + tr.cols;
        let mut out = Self::zeros(tl.modulus, rows, cols);
        for (r0, left, right) in [(0, tl, tr), (tl.rows, bl, br)] {
            for i in 0..left.rows {
                let dst = &mut out.data[(r0 + i) * cols..(r0 + i + 1) * cols];
                dst[..left.cols].copy_from_slice(left.row(i));
                dst[left.cols..].copy_from_slice(right.row(i));
            }
        }
        Ok(out)
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hconcat row counts".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(DenseMatrix {
            modulus: self.modulus,
            rows: self.rows,
            cols,
            data,
        })
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.mul_with(other, Execution::Sequential)
    }

    /// Product with rows of the result computed independently, in parallel
    /// when `exec` allows.
    pub fn mul_with(&self, other: &DenseMatrix, exec: Execution) -> Result<DenseMatrix> {
        if self.modulus != other.modulus {
            return Err(Error::MixedModulus {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let m = self.modulus;
        let p = m.get();
        let mut out = Self::zeros(m, self.rows, other.cols);
        let k = self.cols;
        exec.for_each_chunk_mut(&mut out.data, other.cols.max(1), |i, dst| {
            let mut acc = vec![0u64; dst.len()];
            for t in 0..k {
                let a = self.data[i * k + t];
                if a == 0 {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(other.row(t)) {
                    *slot = (*slot + a * b) % p;
                }
            }
            dst.copy_from_slice(&acc);
        });
        Ok(out)
    }

    /// Square-and-multiply power; `e = 0` gives the identity.
    pub fn pow(&self, mut e: u64) -> Result<DenseMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Self::identity(self.modulus, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Determinant by in-place elimination, pivoting on the first nonzero
    /// entry of each column.
    pub fn determinant(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let m = self.modulus;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1 % m.get();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return Ok(m.zero());
            };
            if piv != c {
                for j in c..n {
                    a.swap(c * n + j, piv * n + j);
                }
                det = m.neg(det);
            }
            let pv = a[c * n + c];
            det = m.mul(det, pv);
            let inv = m.inv(pv)?;
            for r in c + 1..n {
                let f = m.mul(a[r * n + c], inv);
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    a[r * n + j] = m.sub(a[r * n + j], m.mul(f, a[c * n + j]));
                }
            }
        }
        Ok(m.element(det))
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<DenseMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let m = self.modulus;
        let n = self.rows;
        let mut aug = self.hconcat(&Self::identity(m, n))?;
        let w = 2 * n;
        for c in 0..n {
            let piv = (c..n)
                .find(|&r| aug.data[r * w + c] != 0)
                .ok_or(Error::Singular)?;
            if piv != c {
                for j in 0..w {
                    aug.data.swap(c * w + j, piv * w + j);
                }
            }
            let inv = m.inv(aug.data[c * w + c])?;
            for j in 0..w {
                aug.data[c * w + j] = m.mul(aug.data[c * w + j], inv);
            }
            for r in 0..n {
                let f = aug.data[r * w + c];
                if r == c || f == 0 {
                    continue;
                }
                for j in 0..w {
                    aug.data[r * w + j] = m.sub(aug.data[r * w + j], m.mul(f, aug.data[c * w + j]));
                }
            }
        }
        Ok(aug.submatrix(0, n, n, w))
    }

    /// Number of stored field elements.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "DenseMatrix {}x{} over F_{}",
            self.rows, self.cols, self.modulus
        )?;
        write!(f, "{self}")
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = (self.modulus.get() - 1).to_string().len();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `a * b`.
pub fn mat_mul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    a.mul(b)
}

/// `a^e`.
pub fn mat_pow(a: &DenseMatrix, e: u64) -> Result<DenseMatrix> {
    a.pow(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn random(m: PrimeModulus, n: usize, rng: &mut ChaCha8Rng) -> DenseMatrix {
        DenseMatrix::from_vec(
            m,
            n,
            n,
            (0..n * n).map(|_| rng.gen_range(0..m.get())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn pow_zero_is_identity() {
        let a = DenseMatrix::from_rows(fp(3), &[vec![1, 1], vec![2, 0]]).unwrap();
        assert!(a.pow(0).unwrap().is_identity());
    }

    #[test]
    fn pow_matches_repeated_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = fp(5);
        for _ in 0..20 {
            let a = random(m, 3, &mut rng);
            let cube = a.mul(&a).unwrap().mul(&a).unwrap();
            assert_eq!(a.pow(3).unwrap(), cube);
            let mut acc = DenseMatrix::identity(m, 3);
            for _ in 0..13 {
                acc = acc.mul(&a).unwrap();
            }
            assert_eq!(a.pow(13).unwrap(), acc);
        }
    }

    #[test]
    fn parallel_product_matches_sequential() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = fp(2_147_483_647);
        let a = random(m, 40, &mut rng);
        let b = random(m, 40, &mut rng);
        assert_eq!(
            a.mul_with(&b, Execution::Sequential).unwrap(),
            a.mul_with(&b, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn dimension_errors() {
        let m = fp(5);
        let a = DenseMatrix::zeros(m, 2, 3);
        assert!(matches!(a.mul(&a), Err(Error::DimensionMismatch(_))));
        assert!(matches!(
            a.pow(2),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
        assert!(matches!(a.determinant(), Err(Error::NotSquare { .. })));
        let b = DenseMatrix::zeros(fp(7), 3, 3);
        assert!(matches!(a.mul(&b), Err(Error::MixedModulus { .. })));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = fp(5);
        let a = DenseMatrix::from_rows(m, &[vec![0, 1, 2], vec![1, 0, 3], vec![4, 3, 0]]).unwrap();
        // rational det = 0 - 1(0 - 12) + 2(3 - 0) = 18 = 3 mod 5
        assert_eq!(a.determinant().unwrap().value(), 3);
        let inv = a.inverse().unwrap();
        assert!(inv.mul(&a).unwrap().is_identity());
        let sing = DenseMatrix::from_rows(m, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(sing.determinant().unwrap().value(), 0);
        assert_eq!(sing.inverse(), Err(Error::Singular));
    }

    #[test]
    fn block_assembly() {
        let m = fp(7);
        let tl = DenseMatrix::from_rows(m, &[vec![1, 2]]).unwrap();
        let tr = DenseMatrix::from_rows(m, &[vec![3]]).unwrap();
        let bl = DenseMatrix::from_rows(m, &[vec![4, 5]]).unwrap();
        let br = DenseMatrix::from_rows(m, &[vec![6]]).unwrap();
        let b = DenseMatrix::block(&tl, &tr, &bl, &br).unwrap();
        assert_eq!(b.to_rows(), vec![vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(b.without_col(1).to_rows(), vec![vec![1, 3], vec![4, 6]]);
        assert_eq!(b.without_row(0).to_rows(), vec![vec![4, 5, 6]]);
    }
}
