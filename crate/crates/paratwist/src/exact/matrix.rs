//! Dense rational 4x4 and 2x2 matrices.

use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use super::rational::{format_rational, int, Rational};

/// A 2x2 rational matrix.
pub type Mat2 = [[Rational; 2]; 2];

/// A 4x4 rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat4(pub [[Rational; 4]; 4]);

impl Mat4 {
    pub fn zero() -> Self {
        Mat4(std::array::from_fn(|_| {
            std::array::from_fn(|_| Rational::zero())
        }))
    }

    pub fn identity() -> Self {
        Self::diag([int(1), int(1), int(1), int(1)])
    }

    pub fn diag(d: [Rational; 4]) -> Self {
        let mut m = Self::zero();
        for (i, x) in d.into_iter().enumerate() {
            m.0[i][i] = x;
        }
        m
    }

    /// Build from integer entries.
    pub fn from_i64(rows: [[i64; 4]; 4]) -> Self {
        Mat4(rows.map(|r| r.map(int)))
    }

    /// Assemble `[[a, b], [c, d]]` from 2x2 blocks.
    pub fn from_blocks(a: &Mat2, b: &Mat2, c: &Mat2, d: &Mat2) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = a[i][j].clone();
                m.0[i][j + 2] = b[i][j].clone();
                m.0[i + 2][j] = c[i][j].clone();
                m.0[i + 2][j + 2] = d[i][j].clone();
            }
        }
        m
    }

    /// The 2x2 block in block-row `bi`, block-column `bj`.
    pub fn block(&self, bi: usize, bj: usize) -> Mat2 {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[2 * bi + i][2 * bj + j].clone()))
    }

    pub fn transpose(&self) -> Self {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[j][i].clone())
        }))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] * s)
        }))
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.0[i][j]
    }

    /// Determinant by fraction-free elimination over the rationals.
    pub fn det(&self) -> Rational {
        let mut a = self.0.clone();
        let mut det = Rational::one();
        for col in 0..4 {
            let Some(piv) = (col..4).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            let pv = a[col][col].clone();
            det *= &pv;
            for r in (col + 1)..4 {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &pv;
                for c in col..4 {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.0.clone();
        let mut inv = Self::identity().0;
        for col in 0..4 {
            let piv = (col..4).find(|&r| !a[r][col].is_zero())?;
            a.swap(piv, col);
            inv.swap(piv, col);
            let pv = a[col][col].clone();
            for c in 0..4 {
                a[col][c] = &a[col][c] / &pv;
                inv[col][c] = &inv[col][c] / &pv;
            }
            for r in 0..4 {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..4 {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                    let t = &f * &inv[col][c];
                    inv[r][c] -= t;
                }
            }
        }
        Some(Mat4(inv))
    }

    /// All entries are integers.
    pub fn is_integral(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_integer())
    }
}

impl Mul for &Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: &Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut s = Rational::zero();
                for k in 0..4 {
                    if !self.0[i][k].is_zero() && !rhs.0[k][j].is_zero() {
                        s += &self.0[i][k] * &rhs.0[k][j];
                    }
                }
                s
            })
        }))
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        &self * &rhs
    }
}

impl fmt::Display for Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[[{}]]", rows.join("], ["))
    }
}

/// 2x2 helpers.
pub mod m2 {
    use super::*;

    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Mat2 {
        [[a, b], [c, d]]
    }

    pub fn identity() -> Mat2 {
        new(int(1), int(0), int(0), int(1))
    }

    pub fn zero() -> Mat2 {
        new(int(0), int(0), int(0), int(0))
    }

    pub fn mul(x: &Mat2, y: &Mat2) -> Mat2 {
        std::array::from_fn(|i| std::array::from_fn(|j| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j]))
    }

    pub fn add(x: &Mat2, y: &Mat2) -> Mat2 {
        std::array::from_fn(|i| std::array::from_fn(|j| &x[i][j] + &y[i][j]))
    }

    pub fn neg(x: &Mat2) -> Mat2 {
        std::array::from_fn(|i| std::array::from_fn(|j| -&x[i][j]))
    }

    pub fn transpose(x: &Mat2) -> Mat2 {
        new(
            x[0][0].clone(),
            x[1][0].clone(),
            x[0][1].clone(),
            x[1][1].clone(),
        )
    }

    pub fn det(x: &Mat2) -> Rational {
        &x[0][0] * &x[1][1] - &x[0][1] * &x[1][0]
    }

    pub fn inverse(x: &Mat2) -> Option<Mat2> {
        let d = det(x);
        if d.is_zero() {
            return None;
        }
        Some(new(
            &x[1][1] / &d,
            -&x[0][1] / &d,
            -&x[1][0] / &d,
            &x[0][0] / &d,
        ))
    }

    pub fn is_symmetric(x: &Mat2) -> bool {
        x[0][1] == x[1][0]
    }

    pub fn trace(x: &Mat2) -> Rational {
        &x[0][0] + &x[1][1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let m = Mat4::from_i64([[2, 1, 0, 0], [1, 1, 0, 3], [0, 0, 1, 0], [5, 0, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat4::identity());
        assert_eq!(m.det() * inv.det(), int(1));
        let sing = Mat4::from_i64([[1, 2, 3, 4], [2, 4, 6, 8], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert!(sing.inverse().is_none());
        assert_eq!(sing.det(), int(0));
    }
}
