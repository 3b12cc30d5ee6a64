//! Small dense square matrices over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Row-major `n x n` matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    order: usize,
    entries: Vec<FieldElement>,
}

impl SquareMatrix {
    pub fn new(order: usize, entries: Vec<FieldElement>) -> Self {
        assert!(order >= 1, "matrix order must be positive");
        assert_eq!(entries.len(), order * order, "entry count does not match order");
        SquareMatrix { order, entries }
    }

    pub fn from_rows<const N: usize>(rows: [[FieldElement; N]; N]) -> Self {
        SquareMatrix::new(N, rows.into_iter().flatten().collect())
    }

    pub fn from_ints<const N: usize>(field: Field, rows: [[i64; N]; N]) -> Self {
        SquareMatrix::new(N, rows.iter().flatten().map(|&v| field.int(v)).collect())
    }

    pub fn identity(field: Field, order: usize) -> Self {
        Self::diagonal(&vec![field.one(); order])
    }

    pub fn zeros(field: Field, order: usize) -> Self {
        SquareMatrix::new(order, vec![field.zero(); order * order])
    }

    pub fn diagonal(diag: &[FieldElement]) -> Self {
        let n = diag.len();
        let zero = diag[0].zero_like();
        let entries = (0..n * n).map(|k| if k / n == k % n { diag[k / n].clone() } else { zero.clone() }).collect();
        SquareMatrix::new(n, entries)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn field(&self) -> Field {
        self.entries[0].field()
    }

    pub fn get(&self, row: usize, col: usize) -> &FieldElement {
        &self.entries[row * self.order + col]
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<FieldElement> {
        self.entries
    }

    pub fn scale(&self, k: &FieldElement) -> Self {
        SquareMatrix::new(self.order, self.entries.iter().map(|e| e * k).collect())
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> FieldElement {
        let n = self.order;
        if n == 1 {
            return self.entries[0].clone();
        }
        if n == 2 {
            return self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0);
        }
        let mut a = self.entries.clone();
        let mut det = self.entries[0].one_like();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return det.zero_like();
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det = &det * &p;
            let p_inv = p.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = &a[r * n + col] * &p_inv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let delta = &factor * &a[col * n + j];
                    a[r * n + j] = &a[r * n + j] - &delta;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; [`Error::SingularMatrix`] when `det = 0`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.order;
        if n == 2 {
            let det = self.det();
            if det.is_zero() {
                return Err(Error::SingularMatrix);
            }
            let d = det.inv()?;
            let e = &self.entries;
            return Ok(SquareMatrix::new(2, vec![&e[3] * &d, -(&e[1] * &d), -(&e[2] * &d), &e[0] * &d]));
        }
        let mut a = self.entries.clone();
        let mut inv = SquareMatrix::identity(self.field(), n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero()).ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let p_inv = a[col * n + col].inv()?;
            for j in 0..n {
                a[col * n + j] = &a[col * n + j] * &p_inv;
                inv[col * n + j] = &inv[col * n + j] * &p_inv;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for j in 0..n {
                    let da = &factor * &a[col * n + j];
                    let di = &factor * &inv[col * n + j];
                    a[r * n + j] = &a[r * n + j] - &da;
                    inv[r * n + j] = &inv[r * n + j] - &di;
                }
            }
        }
        Ok(SquareMatrix::new(n, inv))
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }
}

impl Mul for &SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.order, rhs.order, "matrix orders differ");
        let n = self.order;
        let entries = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (1..n).fold(self.get(i, 0) * rhs.get(0, j), |acc, l| acc + self.get(i, l) * rhs.get(l, j))
            })
            .collect();
        SquareMatrix::new(n, entries)
    }
}

impl Mul for SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: SquareMatrix) -> SquareMatrix {
        &self * &rhs
    }
}

macro_rules! elementwise {
    ($trait:ident, $method:ident) => {
        impl $trait for &SquareMatrix {
            type Output = SquareMatrix;
            fn $method(self, rhs: &SquareMatrix) -> SquareMatrix {
                assert_eq!(self.order, rhs.order, "matrix orders differ");
                let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.$method(b)).collect();
                SquareMatrix::new(self.order, entries)
            }
        }
        impl $trait for SquareMatrix {
            type Output = SquareMatrix;
            fn $method(self, rhs: SquareMatrix) -> SquareMatrix {
                (&self).$method(&rhs)
            }
        }
    };
}

elementwise!(Add, add);
elementwise!(Sub, sub);

impl Neg for &SquareMatrix {
    type Output = SquareMatrix;
    fn neg(self) -> SquareMatrix {
        SquareMatrix::new(self.order, self.entries.iter().map(|e| -e).collect())
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.order {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.order {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
