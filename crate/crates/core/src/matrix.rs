use std::fmt;

use crate::arith::{Coefficient, Poly, Rational};

/// Dense square matrix, row-major, 0-indexed.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    order: usize,
    entries: Vec<T>,
}

/// Matrix over the rationals (all coordinates numeric).
pub type MatrixR = Matrix<Rational>;
/// Matrix whose entries are polynomials in `x`.
pub type MatrixP = Matrix<Poly>;

impl<T: Coefficient> Matrix<T> {
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        Matrix { order, entries }
    }

    pub fn try_from_fn<E>(
        order: usize,
        mut f: impl FnMut(usize, usize) -> Result<T, E>,
    ) -> Result<Self, E> {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j)?);
            }
        }
        Ok(Matrix { order, entries })
    }

    pub fn zeros(order: usize) -> Self {
        Self::from_fn(order, |_, _| T::zero())
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// The exchange matrix `J` (ones on the anti-diagonal).
    pub fn exchange(order: usize) -> Self {
        Self::from_fn(order, |i, j| {
            if i + j + 1 == order {
                T::one()
            } else {
                T::zero()
            }
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.order + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.order.max(1))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "matrix orders differ");
        Self::from_fn(self.order, |i, j| {
            (0..self.order).fold(T::zero(), |acc, k| {
                let a = self.get(i, k);
                if a.is_zero() {
                    acc
                } else {
                    acc + a.clone() * rhs.get(k, j).clone()
                }
            })
        })
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.order);
        (0..self.order)
            .map(|j| {
                v.iter().enumerate().fold(T::zero(), |acc, (i, vi)| {
                    acc + vi.clone() * self.get(i, j).clone()
                })
            })
            .collect()
    }

    /// `J M J`: reverses both the row and column order.
    pub fn reversed(&self) -> Self {
        let last = self.order - 1;
        Self::from_fn(self.order, |i, j| self.get(last - i, last - j).clone())
    }

    pub fn is_identity(&self) -> bool {
        (0..self.order).all(|i| {
            (0..self.order).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.get(i, j).is_zero()))
    }
}

impl MatrixP {
    /// Evaluates every entry at `x = at`.
    pub fn eval(&self, at: &Rational) -> MatrixR {
        Matrix::from_fn(self.order, |i, j| self.get(i, j).eval(at))
    }
}

impl From<&MatrixR> for MatrixP {
    fn from(m: &MatrixR) -> Self {
        Matrix::from_fn(m.order, |i, j| Poly::constant(m.get(i, j).clone()))
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|j| self.entries[i * self.order + j].to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
