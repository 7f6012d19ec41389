//! Symplectic similitudes in the two standard realizations.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{m2, Mat2, Mat4};
use super::rational::{format_rational, int, parse_rational, ppow, Rational};
use super::ExactError;

/// Which alternating form defines the group.
///
/// `J` is `[[0, 1], [-1, 0]]` in 2x2 blocks; `JPrime` is the antidiagonal form
/// with rows `(0,0,0,1), (0,0,1,0), (0,-1,0,0), (-1,0,0,0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Realization {
    #[serde(rename = "J")]
    J,
    #[serde(rename = "J'")]
    JPrime,
}

impl Realization {
    /// The Gram matrix of the form.
    pub fn form(self) -> Mat4 {
        match self {
            Realization::J => {
                Mat4::from_i64([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
            }
            Realization::JPrime => {
                Mat4::from_i64([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])
            }
        }
    }

    fn lambda_position(self) -> (usize, usize) {
        match self {
            Realization::J => (0, 2),
            Realization::JPrime => (0, 3),
        }
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Realization::J => "J",
            Realization::JPrime => "J'",
        })
    }
}

/// The permutation matrix swapping the last two coordinates; it conjugates
/// one realization into the other.
pub fn realization_swap() -> Mat4 {
    Mat4::from_i64([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
}

/// Return the multiplier `lambda` with `g^T F g = lambda F`, or explain why none exists.
pub fn gsp_check(g: &Mat4, realization: Realization) -> Result<Rational, ExactError> {
    if g.det().is_zero() {
        return Err(ExactError::Singular);
    }
    let f = realization.form();
    let s = &(&g.transpose() * &f) * g;
    let (i, j) = realization.lambda_position();
    let lambda = s.0[i][j].clone();
    if s != f.scale(&lambda) {
        return Err(ExactError::NotSimilitude(realization));
    }
    Ok(lambda)
}

/// A symplectic similitude together with its realization and multiplier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GSpMat {
    mat: Mat4,
    realization: Realization,
    lambda: Rational,
}

impl GSpMat {
    /// Validate `mat` and record its multiplier.
    pub fn new(mat: Mat4, realization: Realization) -> Result<Self, ExactError> {
        let lambda = gsp_check(&mat, realization)?;
        Ok(GSpMat {
            mat,
            realization,
            lambda,
        })
    }

    /// Integer entries in the `J` realization.
    pub fn from_i64(rows: [[i64; 4]; 4]) -> Result<Self, ExactError> {
        Self::new(Mat4::from_i64(rows), Realization::J)
    }

    pub fn identity(realization: Realization) -> Self {
        GSpMat {
            mat: Mat4::identity(),
            realization,
            lambda: Rational::one(),
        }
    }

    pub fn mat(&self) -> &Mat4 {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.mat.0[i][j]
    }

    pub fn realization(&self) -> Realization {
        self.realization
    }

    /// The similitude factor.
    pub fn multiplier(&self) -> &Rational {
        &self.lambda
    }

    /// Product `self * other`; both factors must share a realization.
    pub fn mul(&self, other: &GSpMat) -> Result<GSpMat, ExactError> {
        if self.realization != other.realization {
            return Err(ExactError::RealizationMismatch(
                self.realization,
                other.realization,
            ));
        }
        Ok(GSpMat {
            mat: &self.mat * &other.mat,
            realization: self.realization,
            lambda: &self.lambda * &other.lambda,
        })
    }

    /// Product of a word of matrices in one realization.
    pub fn product<'a>(word: impl IntoIterator<Item = &'a GSpMat>) -> Result<GSpMat, ExactError> {
        let mut it = word.into_iter();
        let first = it.next().ok_or(ExactError::EmptyWord)?.clone();
        it.try_fold(first, |acc, g| acc.mul(g))
    }

    /// Inverse via `g^{-1} = lambda^{-1} F^{-1} g^T F`.
    pub fn inverse(&self) -> GSpMat {
        let f = self.realization.form();
        let f_inv = f.scale(&int(-1));
        let m = (&(&f_inv * &self.mat.transpose()) * &f).scale(&(Rational::one() / &self.lambda));
        GSpMat {
            mat: m,
            realization: self.realization,
            lambda: Rational::one() / &self.lambda,
        }
    }

    /// Multiply by a nonzero scalar.
    pub fn scale(&self, s: &Rational) -> GSpMat {
        GSpMat {
            mat: self.mat.scale(s),
            realization: self.realization,
            lambda: &self.lambda * s * s,
        }
    }

    /// Conjugate into the other realization.
    pub fn convert(&self, to: Realization) -> GSpMat {
        if to == self.realization {
            return self.clone();
        }
        let c = realization_swap();
        GSpMat {
            mat: &(&c * &self.mat) * &c,
            realization: to,
            lambda: self.lambda.clone(),
        }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> GSpMat {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = GSpMat::identity(self.realization);
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base).expect("same realization");
        }
        out
    }

    /// Blocks `(A, B, C, D)` of a `J`-realization matrix.
    pub fn blocks(&self) -> (Mat2, Mat2, Mat2, Mat2) {
        let g = self.convert(Realization::J);
        (
            g.mat.block(0, 0),
            g.mat.block(0, 1),
            g.mat.block(1, 0),
            g.mat.block(1, 1),
        )
    }

    /// Whether the lower-left block vanishes in the `J` realization.
    pub fn is_upper_block(&self) -> bool {
        let (_, _, c, _) = self.blocks();
        c.iter().flatten().all(Zero::is_zero)
    }
}

impl fmt::Display for GSpMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}, lambda = {})",
            self.mat,
            self.realization,
            format_rational(&self.lambda)
        )
    }
}

fn trusted(mat: Mat4, realization: Realization, lambda: Rational) -> GSpMat {
    debug_assert_eq!(gsp_check(&mat, realization).ok(), Some(lambda.clone()));
    GSpMat {
        mat,
        realization,
        lambda,
    }
}

/// `U(Q) = [[1, Q], [0, 1]]` for symmetric `Q` (realization `J`).
pub fn u_mat(q: &Mat2) -> Result<GSpMat, ExactError> {
    if !m2::is_symmetric(q) {
        return Err(ExactError::NotSymmetric);
    }
    Ok(trusted(
        Mat4::from_blocks(&m2::identity(), q, &m2::zero(), &m2::identity()),
        Realization::J,
        int(1),
    ))
}

/// `L(S) = [[1, 0], [S, 1]]` for symmetric `S` (realization `J`).
pub fn l_mat(s: &Mat2) -> Result<GSpMat, ExactError> {
    if !m2::is_symmetric(s) {
        return Err(ExactError::NotSymmetric);
    }
    Ok(trusted(
        Mat4::from_blocks(&m2::identity(), &m2::zero(), s, &m2::identity()),
        Realization::J,
        int(1),
    ))
}

/// `A(P) = diag(P, P^{-T})` for invertible `P` (realization `J`).
pub fn a_mat(p: &Mat2) -> Result<GSpMat, ExactError> {
    let inv = m2::inverse(p).ok_or(ExactError::Singular)?;
    Ok(trusted(
        Mat4::from_blocks(p, &m2::zero(), &m2::zero(), &m2::transpose(&inv)),
        Realization::J,
        int(1),
    ))
}

/// `diag(a1, a2, lambda/a1, lambda/a2)` in realization `J`.
pub fn diag_j(a1: Rational, a2: Rational, lambda: Rational) -> GSpMat {
    let d = Mat4::diag([a1.clone(), a2.clone(), &lambda / a1, &lambda / a2]);
    trusted(d, Realization::J, lambda)
}

/// `eta' = diag(p^{-1}, 1, p, 1)` (realization `J`).
pub fn eta_j(p: u64) -> GSpMat {
    diag_j(ppow(p, -1), int(1), int(1))
}

/// `tau' = diag(1, p^{-1}, 1, p)` (realization `J`).
pub fn tau_j(p: u64) -> GSpMat {
    diag_j(int(1), ppow(p, -1), int(1))
}

/// `eta = diag(p^{-1}, 1, 1, p)` (realization `J'`).
pub fn eta(p: u64) -> GSpMat {
    trusted(
        Mat4::diag([ppow(p, -1), int(1), int(1), ppow(p, 1)]),
        Realization::JPrime,
        int(1),
    )
}

/// `tau = diag(1, p^{-1}, p, 1)` (realization `J'`).
pub fn tau(p: u64) -> GSpMat {
    trusted(
        Mat4::diag([int(1), ppow(p, -1), ppow(p, 1), int(1)]),
        Realization::JPrime,
        int(1),
    )
}

/// The element `t_n` with corners `-p^{-n}` and `p^n` (realization `J'`).
pub fn t_n(p: u64, n: i64) -> GSpMat {
    let mut m = Mat4::zero();
    m.0[0][3] = -ppow(p, -n);
    m.0[1][1] = int(1);
    m.0[2][2] = int(1);
    m.0[3][0] = ppow(p, n);
    trusted(m, Realization::JPrime, int(1))
}

/// Parse a matrix given as rows of rational strings.
pub fn parse_matrix(rows: &[Vec<String>]) -> Result<Mat4, ExactError> {
    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
        return Err(ExactError::Shape);
    }
    let mut m = Mat4::zero();
    for (i, r) in rows.iter().enumerate() {
        for (j, s) in r.iter().enumerate() {
            m.0[i][j] = parse_rational(s)?;
        }
    }
    Ok(m)
}

/// JSON form of a matrix: `{"realization": "J", "entries": [["1", "0", ...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFixture {
    pub realization: Realization,
    pub entries: Vec<Vec<String>>,
}

impl MatrixFixture {
    pub fn from_gsp(g: &GSpMat) -> Self {
        MatrixFixture {
            realization: g.realization,
            entries: g
                .mat
                .0
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
        }
    }

    pub fn to_gsp(&self) -> Result<GSpMat, ExactError> {
        GSpMat::new(parse_matrix(&self.entries)?, self.realization)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn j_prime_is_conjugate_of_j() {
        let c = realization_swap();
        assert_eq!(
            &(&c * &Realization::J.form()) * &c,
            Realization::JPrime.form()
        );
    }

    #[test]
    fn generators_are_similitudes() {
        for p in [2, 3, 5] {
            assert_eq!(
                gsp_check(eta(p).mat(), Realization::JPrime).unwrap(),
                int(1)
            );
            assert_eq!(
                gsp_check(tau(p).mat(), Realization::JPrime).unwrap(),
                int(1)
            );
            assert_eq!(
                gsp_check(t_n(p, 4).mat(), Realization::JPrime).unwrap(),
                int(1)
            );
            assert_eq!(eta(p).convert(Realization::J), eta_j(p));
            assert_eq!(tau(p).convert(Realization::J), tau_j(p));
        }
        let q = m2::new(rat(1, 3), rat(2, 9), rat(2, 9), int(5));
        assert!(u_mat(&q).is_ok());
        let bad = m2::new(int(1), int(2), int(3), int(4));
        assert!(matches!(u_mat(&bad), Err(ExactError::NotSymmetric)));
    }

    #[test]
    fn singular_and_non_symplectic_are_distinguished() {
        let sing = Mat4::from_i64([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert!(matches!(
            gsp_check(&sing, Realization::J),
            Err(ExactError::Singular)
        ));
        let gl = Mat4::from_i64([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert!(matches!(
            gsp_check(&gl, Realization::J),
            Err(ExactError::NotSimilitude(_))
        ));
    }

    #[test]
    fn inverse_and_conversion() {
        let g = u_mat(&m2::new(rat(1, 3), int(1), int(1), int(0)))
            .unwrap()
            .mul(&a_mat(&m2::new(int(2), int(1), int(0), int(3))).unwrap())
            .unwrap()
            .mul(&diag_j(int(1), int(3), int(3)))
            .unwrap();
        let id = g.mul(&g.inverse()).unwrap();
        assert_eq!(id, GSpMat::identity(Realization::J));
        let h = g.convert(Realization::JPrime);
        assert_eq!(gsp_check(h.mat(), Realization::JPrime).unwrap(), int(3));
        assert_eq!(h.convert(Realization::J), g);
    }
}
