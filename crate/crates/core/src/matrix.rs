//! Dense square matrices over exact rationals and over `f64`, plus the two
//! elimination routines everything else leans on: rational Gaussian inversion
//! with a pivot-size heuristic and the fraction-free (Bareiss) integer
//! determinant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::rational_to_f64;

/// Dense square matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    order: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(order: usize) -> Self {
        RationalMatrix {
            order,
            data: vec![BigRational::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zero(order);
        for i in 0..order {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                data.push(f(i, j));
            }
        }
        RationalMatrix { order, data }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.order {
            for j in (i + 1)..self.order {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn row_sum(&self, i: usize) -> BigRational {
        (0..self.order).map(|j| self[(i, j)].clone()).sum()
    }

    pub fn trace(&self) -> BigRational {
        (0..self.order).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        Self::from_fn(self.order, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        Self::from_fn(self.order, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    /// Submatrix keeping the given rows and columns (same index set).
    pub fn principal_submatrix(&self, keep: &[usize]) -> Self {
        Self::from_fn(keep.len(), |i, j| self[(keep[i], keep[j])].clone())
    }

    pub fn to_float(&self) -> FloatMatrix {
        FloatMatrix {
            order: self.order,
            data: self.data.iter().map(rational_to_f64).collect(),
        }
    }

    /// Exact inverse via Gauss-Jordan elimination on `[A | I]`.
    ///
    /// Pivot selection prefers the candidate with the smallest combined
    /// numerator/denominator bit size, which keeps intermediate entries short
    /// on the structured matrices seen here.
    pub fn inverse(&self) -> Result<RationalMatrix> {
        let n = self.order;
        let mut a = self.clone();
        let mut inv = RationalMatrix::identity(n);

        for col in 0..n {
            let pivot_row = (col..n)
                .filter(|&r| !a[(r, col)].is_zero())
                .min_by_key(|&r| {
                    let v = &a[(r, col)];
                    v.numer().bits() + v.denom().bits()
                })
                .ok_or(Error::SingularMatrix)?;
            if pivot_row != col {
                a.swap_rows(pivot_row, col);
                inv.swap_rows(pivot_row, col);
            }
            let pivot = a[(col, col)].clone();
            let pivot_inv = pivot.recip();
            for j in 0..n {
                a[(col, j)] *= &pivot_inv;
                inv[(col, j)] *= &pivot_inv;
            }
            for row in 0..n {
                if row == col || a[(row, col)].is_zero() {
                    continue;
                }
                let factor = a[(row, col)].clone();
                for j in 0..n {
                    let t = &a[(col, j)] * &factor;
                    a[(row, j)] -= t;
                    let t = &inv[(col, j)] * &factor;
                    inv[(row, j)] -= t;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.order {
            self.data.swap(i * self.order + k, j * self.order + k);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.order + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        let n = self.order;
        &mut self.data[i * n + j]
    }
}

/// Fraction-free determinant of an integer matrix (Bareiss). Every division
/// in the update is exact, so entries never leave the integers.
pub fn bareiss_determinant(order: usize, mut m: Vec<BigInt>) -> BigInt {
    assert_eq!(m.len(), order * order);
    if order == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..order - 1 {
        if m[k * order + k].is_zero() {
            let Some(swap) = ((k + 1)..order).find(|&r| !m[r * order + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..order {
                m.swap(k * order + j, swap * order + j);
            }
            sign = -sign;
        }
        for i in (k + 1)..order {
            for j in (k + 1)..order {
                let t = &m[i * order + j] * &m[k * order + k] - &m[i * order + k] * &m[k * order + j];
                m[i * order + j] = t / &prev;
            }
            m[i * order + k] = BigInt::zero();
        }
        prev = m[k * order + k].clone();
    }
    let det = m[(order - 1) * order + (order - 1)].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Dense symmetric matrix of `f64`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatMatrix {
    order: usize,
    data: Vec<f64>,
}

impl FloatMatrix {
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                data.push(f(i, j));
            }
        }
        FloatMatrix { order, data }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    pub fn max_abs_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.order {
            for j in (i + 1)..self.order {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// All eigenvalues of a symmetric matrix, ascending, via cyclic Jacobi
    /// rotations. Plenty accurate for the dense orders used here.
    pub fn symmetric_eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.order;
        let norm = self.frobenius_norm();
        if self.max_abs_asymmetry() > 1e-12 * norm.max(1.0) {
            return Err(Error::NotSymmetric);
        }
        let mut a = self.data.clone();
        // Symmetrize to kill representation noise before rotating.
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (a[i * n + j] + a[j * n + i]);
                a[i * n + j] = avg;
                a[j * n + i] = avg;
            }
        }
        let stop = 1e-15 * norm.max(f64::MIN_POSITIVE);
        for _sweep in 0..60 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[p * n + q].powi(2);
                }
            }
            if off.sqrt() <= stop {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[p * n + q];
                    if apq == 0.0 {
                        continue;
                    }
                    let app = a[p * n + p];
                    let aqq = a[q * n + q];
                    let theta = (aqq - app) / (2.0 * apq);
                    let t = if theta >= 0.0 {
                        1.0 / (theta + (1.0 + theta * theta).sqrt())
                    } else {
                        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[k * n + p];
                        let akq = a[k * n + q];
                        a[k * n + p] = c * akp - s * akq;
                        a[k * n + q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[p * n + k];
                        let aqk = a[q * n + k];
                        a[p * n + k] = c * apk - s * aqk;
                        a[q * n + k] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut residual = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                residual += a[p * n + q].powi(2);
            }
        }
        if residual.sqrt() > 1e-10 * norm.max(1.0) {
            return Err(Error::Inconsistent(format!(
                "eigensolver failed to converge (off-diagonal residual {residual:e})"
            )));
        }
        let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
        eigenvalues.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
        Ok(eigenvalues)
    }

    /// Full inverse via Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<FloatMatrix> {
        let n = self.order;
        let mut a = self.data.clone();
        let mut inv = vec![0.0; n * n];
        for i in 0..n {
            inv[i * n + i] = 1.0;
        }
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&r, &s| {
                    a[r * n + col]
                        .abs()
                        .partial_cmp(&a[s * n + col].abs())
                        .expect("finite")
                })
                .expect("nonempty");
            if a[pivot_row * n + col].abs() < 1e-300 {
                return Err(Error::SingularMatrix);
            }
            if pivot_row != col {
                for k in 0..n {
                    a.swap(col * n + k, pivot_row * n + k);
                    inv.swap(col * n + k, pivot_row * n + k);
                }
            }
            let pivot = a[col * n + col];
            for k in 0..n {
                a[col * n + k] /= pivot;
                inv[col * n + k] /= pivot;
            }
            for row in 0..n {
                if row == col {
                    continue;
                }
                let factor = a[row * n + col];
                if factor == 0.0 {
                    continue;
                }
                for k in 0..n {
                    a[row * n + k] -= factor * a[col * n + k];
                    inv[row * n + k] -= factor * inv[col * n + k];
                }
            }
        }
        Ok(FloatMatrix { order: n, data: inv })
    }

    /// Natural log of the determinant of a positive-definite matrix, via LU
    /// with partial pivoting.
    pub fn log_determinant(&self) -> Result<f64> {
        let n = self.order;
        let mut a = self.data.clone();
        let mut log_det = 0.0;
        let mut sign = 1.0f64;
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&r, &s| {
                    a[r * n + col]
                        .abs()
                        .partial_cmp(&a[s * n + col].abs())
                        .expect("finite")
                })
                .expect("nonempty");
            let pivot = a[pivot_row * n + col];
            if pivot.abs() < 1e-300 {
                return Err(Error::SingularMatrix);
            }
            if pivot_row != col {
                for k in 0..n {
                    a.swap(col * n + k, pivot_row * n + k);
                }
                sign = -sign;
            }
            log_det += pivot.abs().ln();
            if pivot < 0.0 {
                sign = -sign;
            }
            for row in (col + 1)..n {
                let factor = a[row * n + col] / pivot;
                if factor == 0.0 {
                    continue;
                }
                for k in (col + 1)..n {
                    a[row * n + k] -= factor * a[col * n + k];
                }
            }
        }
        if sign < 0.0 {
            return Err(Error::Inconsistent("negative determinant".into()));
        }
        Ok(log_det)
    }

    /// Solve `A x = b` in place via partial-pivot Gaussian elimination.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.order;
        assert_eq!(b.len(), n);
        let mut a = self.data.clone();
        let mut x = b.to_vec();
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&r, &s| {
                    a[r * n + col]
                        .abs()
                        .partial_cmp(&a[s * n + col].abs())
                        .expect("finite")
                })
                .expect("nonempty");
            if a[pivot_row * n + col].abs() < 1e-300 {
                return Err(Error::SingularMatrix);
            }
            if pivot_row != col {
                for k in 0..n {
                    a.swap(col * n + k, pivot_row * n + k);
                }
                x.swap(col, pivot_row);
            }
            for row in (col + 1)..n {
                let factor = a[row * n + col] / a[col * n + col];
                if factor == 0.0 {
                    continue;
                }
                for k in col..n {
                    a[row * n + k] -= factor * a[col * n + k];
                }
                x[row] -= factor * x[col];
            }
        }
        for col in (0..n).rev() {
            let mut acc = x[col];
            for k in (col + 1)..n {
                acc -= a[col * n + k] * x[k];
            }
            x[col] = acc / a[col * n + col];
        }
        Ok(x)
    }
}
