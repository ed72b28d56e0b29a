//! Truncated power series in `q` with arbitrary-precision integer coefficients.
//!
//! Everything here is exact arithmetic in `Z[[q]] / (q^order)`. The main
//! entry point is [`eta_product`], which expands `prod_{m>=1} (1 - q^m)^k`
//! for any integer `k`. Binary operations on series of different orders
//! resolve to the smaller order.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QSeriesError {
    #[error("series is not invertible: constant term {0} is not a unit")]
    NotInvertible(BigInt),
}

/// A power series `sum_{n < order} c_n q^n`, stored densely.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    /// The order is `coeffs.len()`.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        QSeries { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        QSeries::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        QSeries::new(vec![BigInt::zero(); order])
    }

    pub fn one(order: usize) -> Self {
        let mut s = QSeries::zero(order);
        if let Some(c) = s.coeffs.first_mut() {
            *c = BigInt::one();
        }
        s
    }

    /// Number of retained coefficients (exclusive truncation bound).
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^n`, or `None` beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    /// Reduce to a smaller order. Asking for a larger order is a no-op.
    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order);
        self
    }

    /// Cauchy product truncated to the smaller of the two orders.
    pub fn series_mul(&self, other: &QSeries) -> QSeries {
        let order = self.order().min(other.order());
        let a = &self.coeffs[..order];
        let b = &other.coeffs[..order];
        // Skip zero terms; eta products at positive exponent are sparse-ish.
        let a_nz: Vec<usize> = (0..order).filter(|&i| !a[i].is_zero()).collect();
        let mut out = vec![BigInt::zero(); order];
        for &i in &a_nz {
            for j in 0..order - i {
                if !b[j].is_zero() {
                    out[i + j] += &a[i] * &b[j];
                }
            }
        }
        QSeries::new(out)
    }

    /// Multiplicative inverse modulo `q^order`. The constant term must be `+1` or `-1`.
    pub fn series_inv(&self) -> Result<QSeries, QSeriesError> {
        let order = self.order();
        if order == 0 {
            return Ok(QSeries::zero(0));
        }
        let c0 = &self.coeffs[0];
        if c0.abs() != BigInt::one() {
            return Err(QSeriesError::NotInvertible(c0.clone()));
        }
        let negate = c0.is_negative();
        let mut out: Vec<BigInt> = Vec::with_capacity(order);
        out.push(c0.clone());
        // b_n = -c0^{-1} * sum_{i=1}^{n} a_i b_{n-i}, and c0^{-1} = c0.
        for n in 1..order {
            let mut acc = BigInt::zero();
            for i in 1..=n {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    acc += a * &out[n - i];
                }
            }
            out.push(if negate { acc } else { -acc });
        }
        Ok(QSeries::new(out))
    }

    /// Multiply in place by a sparse series with constant term 1.
    fn mul_sparse_in_place(&mut self, factor: &SparseSeries) {
        let mut scratch = BigInt::zero();
        for n in (1..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            let acc = &mut hi[0];
            for &(e, s) in factor.tail() {
                if e > n {
                    break;
                }
                fused_add(acc, &lo[n - e], s, &mut scratch);
            }
        }
    }

    /// Divide in place by a sparse series with constant term 1.
    fn div_sparse_in_place(&mut self, divisor: &SparseSeries) {
        let mut scratch = BigInt::zero();
        for n in 1..self.coeffs.len() {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            let acc = &mut hi[0];
            for &(e, s) in divisor.tail() {
                if e > n {
                    break;
                }
                fused_add(acc, &lo[n - e], -s, &mut scratch);
            }
        }
    }
}

/// `acc += term * s` without allocating for the common `s = +-1` case.
#[inline]
fn fused_add(acc: &mut BigInt, term: &BigInt, s: i64, scratch: &mut BigInt) {
    match s {
        1 => *acc += term,
        -1 => *acc -= term,
        _ => {
            scratch.clone_from(term);
            *scratch *= s.unsigned_abs();
            if s > 0 {
                *acc += &*scratch;
            } else {
                *acc -= &*scratch;
            }
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;

    fn mul(self, rhs: &QSeries) -> QSeries {
        self.series_mul(rhs)
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; O(q^{}))", self.order())
    }
}

/// Sorted `(exponent, coefficient)` list with leading term `(0, 1)`.
struct SparseSeries {
    terms: Vec<(usize, i64)>,
}

impl SparseSeries {
    fn tail(&self) -> &[(usize, i64)] {
        &self.terms[1..]
    }

    /// `prod (1 - q^m)` via the pentagonal number theorem.
    fn euler(order: usize) -> Self {
        let mut terms = vec![(0usize, 1i64)];
        for j in 1usize.. {
            let a = j * (3 * j - 1) / 2;
            if a >= order {
                break;
            }
            let s = if j % 2 == 0 { 1 } else { -1 };
            terms.push((a, s));
            let b = j * (3 * j + 1) / 2;
            if b < order {
                terms.push((b, s));
            }
        }
        terms.sort_unstable();
        SparseSeries { terms }
    }

    /// `prod (1 - q^m)^3 = sum_j (-1)^j (2j+1) q^{j(j+1)/2}` (Jacobi).
    fn jacobi_cube(order: usize) -> Self {
        let mut terms = Vec::new();
        for j in 0usize.. {
            let e = j * (j + 1) / 2;
            if e >= order {
                break;
            }
            let c = (2 * j + 1) as i64;
            terms.push((e, if j % 2 == 0 { c } else { -c }));
        }
        SparseSeries { terms }
    }
}

/// Expansion of `prod_{m >= 1} (1 - q^m)^k` modulo `q^order`.
///
/// `|k|` is split into cubes, each applied as one sparse multiplication (or
/// division) by the Jacobi series, and a remainder applied with Euler's
/// pentagonal series. Every step is exact, so
/// `eta_product(a) * eta_product(b) == eta_product(a + b)` holds identically.
pub fn eta_product(k: i64, order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    if k == 0 || order <= 1 {
        return s;
    }
    let cubes = k.unsigned_abs() / 3;
    let singles = k.unsigned_abs() % 3;
    let jacobi = SparseSeries::jacobi_cube(order);
    let euler = SparseSeries::euler(order);
    for _ in 0..cubes {
        if k > 0 {
            s.mul_sparse_in_place(&jacobi);
        } else {
            s.div_sparse_in_place(&jacobi);
        }
    }
    for _ in 0..singles {
        if k > 0 {
            s.mul_sparse_in_place(&euler);
        } else {
            s.div_sparse_in_place(&euler);
        }
    }
    s
}

/// Rational-curve counts `N_0..=N_max_g`, the coefficients of `prod (1-q^m)^{-24}`.
pub fn yau_zaslow(max_g: usize) -> Vec<BigInt> {
    eta_product(-24, max_g + 1).into_coeffs()
}

/// Partition numbers `p(0)..=p(max_n)`.
pub fn partition_numbers(max_n: usize) -> Vec<BigInt> {
    eta_product(-1, max_n + 1).into_coeffs()
}

/// Coefficients of `prod (1-q^m)^{-48}` up to (excluding) `order`.
pub fn bl48_series(order: usize) -> QSeries {
    eta_product(-48, order)
}

/// Coefficient of `q^n` in `prod (1-q^m)^{-48}`.
pub fn bl48_coefficient(n: usize) -> BigInt {
    bl48_series(n + 1).into_coeffs().pop().expect("order n+1 >= 1")
}
