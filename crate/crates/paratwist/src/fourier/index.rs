//! Half-integral indices `T = [n, r/2; r/2, m]` and coefficient windows.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exact::{int, m2, Mat2, Rational};

/// The index `T = [n, r/2; r/2, m]`, stored raw.
///
/// A form of paramodular level `N` is supported on indices with `N | n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Index {
    pub n: i64,
    pub r: i64,
    pub m: i64,
}

impl Index {
    pub const fn new(n: i64, r: i64, m: i64) -> Self {
        Index { n, r, m }
    }

    /// `det(2T) = 4nm - r^2`.
    pub fn disc(&self) -> i128 {
        4 * self.n as i128 * self.m as i128 - (self.r as i128).pow(2)
    }

    pub fn is_semidefinite(&self) -> bool {
        self.n >= 0 && self.m >= 0 && self.disc() >= 0
    }

    pub fn is_definite(&self) -> bool {
        self.n > 0 && self.disc() > 0
    }

    /// Whether `T` lies in the level-`N` lattice.
    pub fn on_level(&self, level: u64) -> bool {
        self.n.rem_euclid(level as i64) == 0
    }

    pub fn to_mat(&self) -> Mat2 {
        let half = Rational::new(self.r.into(), 2.into());
        m2::new(int(self.n), half.clone(), half, int(self.m))
    }

    /// Read a symmetric matrix back as an index, if it is half-integral.
    pub fn from_mat(t: &Mat2) -> Option<Index> {
        let r2 = &t[0][1] * int(2);
        if !t[0][0].is_integer() || !t[1][1].is_integer() || !r2.is_integer() {
            return None;
        }
        let n = i64::try_from(t[0][0].to_integer()).ok()?;
        let r = i64::try_from(r2.to_integer()).ok()?;
        let m = i64::try_from(t[1][1].to_integer()).ok()?;
        Some(Index { n, r, m })
    }

    /// `tr(T Q)` for symmetric `Q`.
    pub fn trace_with(&self, q: &Mat2) -> Rational {
        int(self.n) * &q[0][0] + int(self.r) * &q[0][1] + int(self.m) * &q[1][1]
    }

    /// The `GL(2, Z)`-reduced representative: `0 <= r <= n <= m`.
    ///
    /// Level-one forms of even weight take equal values on a class.
    pub fn reduced(&self) -> Index {
        let (mut n, mut r, mut m) = (self.n, self.r, self.m);
        loop {
            if n > 0 && r.abs() > n {
                let k = (r as f64 / (2 * n) as f64).round() as i64;
                m += n * k * k - r * k;
                r -= 2 * n * k;
            }
            if n > m {
                std::mem::swap(&mut n, &mut m);
                continue;
            }
            break;
        }
        Index { n, r: r.abs(), m }
    }

    /// The reduced definite indices `0 <= r <= n <= m` with `4nm - r^2 <= max_disc`.
    pub fn reduced_classes(max_disc: i128) -> Vec<Index> {
        let mut out = Vec::new();
        let mut n = 1i64;
        while 3 * (n as i128).pow(2) <= max_disc {
            for r in 0..=n {
                let mut m = n;
                while 4 * n as i128 * m as i128 - (r as i128).pow(2) <= max_disc {
                    out.push(Index { n, r, m });
                    m += 1;
                }
            }
            n += 1;
        }
        out
    }

    /// Every semidefinite index with `n <= n_max`, `m <= m_max` on the given level.
    pub fn semidefinite_box(n_max: i64, m_max: i64, level: u64) -> Vec<Index> {
        let mut out = Vec::new();
        for n in (0..=n_max).step_by(level as usize) {
            for m in 0..=m_max {
                let bound = isqrt(4 * n as i128 * m as i128) as i64;
                for r in -bound..=bound {
                    out.push(Index { n, r, m });
                }
            }
        }
        out
    }
}

/// A raw rational index `(n, r, m)`, used for contributions off the lattice.
pub type RawIndex = [Rational; 3];

pub fn raw_from_mat(t: &Mat2) -> RawIndex {
    [t[0][0].clone(), &t[0][1] * int(2), t[1][1].clone()]
}

/// Whether a raw index is integral and on the level-`N` lattice.
pub fn raw_on_level(raw: &RawIndex, level: u64) -> bool {
    raw.iter().all(|x| x.is_integer())
        && (raw[0].to_integer() % num_bigint::BigInt::from(level)).is_zero()
}

pub(crate) fn isqrt(x: i128) -> i128 {
    if x <= 0 {
        return 0;
    }
    let mut s = (x as f64).sqrt() as i128;
    while s * s > x {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= x {
        s += 1;
    }
    s
}

/// The set of indices whose coefficients are completely known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Window {
    /// All indices with `0 <= n <= n_max` and `0 <= m <= m_max`.
    Box { n_max: i64, m_max: i64 },
    List(BTreeSet<Index>),
}

impl Window {
    pub fn contains(&self, idx: &Index) -> bool {
        match self {
            Window::Box { n_max, m_max } => {
                (0..=*n_max).contains(&idx.n) && (0..=*m_max).contains(&idx.m)
            }
            Window::List(set) => set.contains(idx),
        }
    }

    /// The semidefinite level-`N` indices of the window.
    pub fn indices(&self, level: u64) -> Vec<Index> {
        match self {
            Window::Box { n_max, m_max } => Index::semidefinite_box(*n_max, *m_max, level),
            Window::List(set) => set
                .iter()
                .filter(|i| i.is_semidefinite() && i.on_level(level))
                .copied()
                .collect(),
        }
    }

    pub fn intersect(&self, other: &Window, level: u64) -> Window {
        Window::List(
            self.indices(level)
                .into_iter()
                .filter(|i| other.contains(i))
                .collect(),
        )
    }
}
