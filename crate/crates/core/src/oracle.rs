//! Naive reference implementations.
//!
//! Nothing here touches the fast paths: matrices are plain `Vec<Vec<u64>>`,
//! elimination is written out again, and periods are found by stepping until
//! the identity shows up. Only the field arithmetic of [`PrimeModulus`] is
//! shared.

use crate::band::{BandSpec, DENSE_CAP};
use crate::field::{FieldElement, PrimeModulus};
use crate::matrix::DenseMatrix;
use crate::poly::Poly;
use crate::{Error, Result};

fn dense_rows(spec: &BandSpec, n: usize) -> Result<Vec<Vec<u64>>> {
    if n == 0 {
        return Err(Error::OrderTooSmall { n: 0, min: 1 });
    }
    if n > DENSE_CAP {
        return Err(Error::DenseTooLarge {
            n: n as u64,
            cap: DENSE_CAP,
        });
    }
    let (lower, upper) = (spec.lower() as i64, spec.upper() as i64);
    Ok((0..n as i64)
        .map(|i| {
            (0..n as i64)
                .map(|j| {
                    let t = j - i;
                    if -lower <= t && t <= upper {
                        spec.coeffs()[(t + lower) as usize]
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect())
}

/// Determinant by row reduction with row swaps.
pub fn oracle_det(spec: &BandSpec, n: usize) -> Result<FieldElement> {
    let m = spec.modulus();
    let mut a = dense_rows(spec, n)?;
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
            return Ok(m.element(0));
        };
        if piv != col {
            a.swap(piv, col);
            det = m.neg(det);
        }
        det = m.mul(det, a[col][col]);
        let inv = m.inv(a[col][col])?;
        for r in col + 1..n {
            if a[r][col] == 0 {
                continue;
            }
            let factor = m.mul(a[r][col], inv);
            let (top, rest) = a.split_at_mut(r);
            for (v, &pv) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                *v = m.sub(*v, m.mul(factor, pv));
            }
        }
    }
    Ok(m.element(det))
}

/// Inverse by Gauss-Jordan on `[M | I]`.
pub fn oracle_inverse(spec: &BandSpec, n: usize) -> Result<DenseMatrix> {
    let m = spec.modulus();
    let a = dense_rows(spec, n)?;
    let mut aug: Vec<Vec<u64>> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| aug[r][col] != 0)
            .ok_or(Error::Singular)?;
        aug.swap(piv, col);
        let inv = m.inv(aug[col][col])?;
        for v in aug[col].iter_mut() {
            *v = m.mul(*v, inv);
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = m.sub(*v, m.mul(factor, pv));
            }
        }
    }
    let rows: Vec<Vec<u64>> = aug.into_iter().map(|r| r[n..].to_vec()).collect();
    DenseMatrix::from_rows(m, &rows)
}

/// Least `q <= bound` with `x^q = 1 mod f`, by multiplying by `x` one step
/// at a time.
pub fn oracle_poly_period(f: &Poly, bound: u64) -> Result<u64> {
    let m = f.modulus();
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ZeroOrConstant),
    };
    if f.constant_term() == 0 {
        return Err(Error::RootAtZero);
    }
    let c = f.coeffs();
    let lead_inv = m.inv(c[d])?;
    // r = x mod f, as d coefficients
    let mut r = vec![0u64; d];
    if d == 1 {
        r[0] = m.mul(m.neg(c[0]), lead_inv);
    } else {
        r[1] = 1;
    }
    let is_one = |r: &[u64]| r[0] == 1 && r[1..].iter().all(|&v| v == 0);
    for q in 1..=bound {
        if is_one(&r) {
            return Ok(q);
        }
        // r <- x r mod f
        let top = r[d - 1];
        for k in (1..d).rev() {
            r[k] = r[k - 1];
        }
        r[0] = 0;
        if top != 0 {
            let t = m.mul(top, lead_inv);
            for k in 0..d {
                r[k] = m.sub(r[k], m.mul(t, c[k]));
            }
        }
    }
    Err(Error::NotFoundWithinBound(bound))
}

/// Least `q <= bound` with `T^q = I`, by repeated multiplication.
pub fn oracle_t_period(spec: &BandSpec, bound: u64) -> Result<u64> {
    let m = spec.modulus();
    let s = spec.span();
    let cr_inv = m.inv(spec.c_upper())?;
    let coeffs = spec.coeffs();
    let mut t = vec![vec![0u64; s]; s];
    for (a, row) in t.iter_mut().enumerate() {
        // c_{R-1-a} sits at index L+R-1-a
        row[0] = m.mul(m.neg(coeffs[s - 1 - a]), cr_inv);
        if a + 1 < s {
            row[a + 1] = 1;
        }
    }
    let mut acc = t.clone();
    for q in 1..=bound {
        let identity = acc
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == u64::from(i == j)));
        if identity {
            return Ok(q);
        }
        acc = naive_mul(m, &acc, &t);
    }
    Err(Error::NotFoundWithinBound(bound))
}

fn naive_mul(m: PrimeModulus, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = b[0].len();
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(0, |acc, (&x, brow)| m.add(acc, m.mul(x, brow[j])))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: u64, lower: usize, band: &[u64]) -> BandSpec {
        BandSpec::new(PrimeModulus::new(p).unwrap(), lower, band.to_vec()).unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(oracle_det(&spec(3, 1, &[1, 2, 1]), 4).unwrap().value(), 2);
        assert_eq!(
            oracle_det(&spec(2, 2, &[1, 1, 1, 1, 1]), 2)
                .unwrap()
                .value(),
            0
        );
        assert_eq!(
            oracle_det(&spec(2, 2, &[1, 1, 1, 1, 1]), 26)
                .unwrap()
                .value(),
            1
        );
    }

    #[test]
    fn inverse_example() {
        let inv = oracle_inverse(&spec(3, 1, &[1, 2, 1]), 4).unwrap();
        assert_eq!(
            inv.to_rows(),
            vec![
                vec![2, 0, 1, 1],
                vec![0, 0, 1, 1],
                vec![1, 1, 0, 0],
                vec![1, 1, 0, 2]
            ]
        );
        assert_eq!(
            oracle_inverse(&spec(2, 2, &[1, 1, 1, 1, 1]), 2),
            Err(Error::Singular)
        );
    }

    #[test]
    fn periods() {
        let m2 = PrimeModulus::new(2).unwrap();
        assert_eq!(
            oracle_poly_period(&Poly::new(m2, vec![1, 1, 1, 1, 1]), 100).unwrap(),
            5
        );
        assert_eq!(
            oracle_poly_period(&Poly::new(m2, vec![1, 1, 0, 1, 1]), 100).unwrap(),
            6
        );
        assert_eq!(
            oracle_poly_period(&Poly::new(m2, vec![1, 1]), 100).unwrap(),
            1
        );
        assert_eq!(
            oracle_poly_period(&Poly::new(m2, vec![1, 1, 0, 0, 1]), 10),
            Err(Error::NotFoundWithinBound(10))
        );
        assert_eq!(
            oracle_t_period(&spec(2, 2, &[1, 1, 1, 1, 1]), 100).unwrap(),
            5
        );
        assert_eq!(oracle_t_period(&spec(3, 1, &[1, 2, 1]), 100).unwrap(), 6);
    }
}
