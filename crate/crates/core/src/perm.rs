//! Permutations of the four cube diagonals and the embedding S₄ → SO(3).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::linalg::Matrix3;
use crate::rotation::RotationElement;
use crate::scalar::ExactField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid cycle notation {0:?}")]
pub struct PermParseError(pub String);

/// Permutation of {1,2,3,4}, stored 0-based as `images[i] = p(i)`.
///
/// Composition follows the rotation convention: `p.compose(&q)` applies `q`
/// first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubePermutation {
    images: [u8; 4],
}

/// The diagonal lines d1..d4 permuted by the cube rotations.
pub const DIAGONALS: [[i64; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];

impl CubePermutation {
    pub fn identity() -> Self {
        Self { images: [0, 1, 2, 3] }
    }

    /// `images` in 1-based form, e.g. `[2, 1, 3, 4]` for (12).
    pub fn from_images(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &i in &images {
            if !(1..=4).contains(&i) || std::mem::replace(&mut seen[(i - 1) as usize], true) {
                return None;
            }
        }
        Some(Self { images: images.map(|i| i - 1) })
    }

    /// The image of `i` (1-based).
    pub fn apply(&self, i: u8) -> u8 {
        self.images[(i - 1) as usize] + 1
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { images: other.images.map(|i| self.images[i as usize]) }
    }

    pub fn inverse(&self) -> Self {
        let mut images = [0; 4];
        for (i, &p) in self.images.iter().enumerate() {
            images[p as usize] = i as u8;
        }
        Self { images }
    }

    /// All 24 permutations in lexicographic order of their image lists.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        let images = [a, b, c, d];
                        if (0..4).all(|i| images.contains(&i)) {
                            out.push(Self { images });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_even(&self) -> bool {
        let inversions = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .filter(|&(i, j)| self.images[i] > self.images[j])
            .count();
        inversions % 2 == 0
    }

    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let mut seen = [false; 4];
        let mut out = Vec::new();
        for start in 0..4u8 {
            if seen[start as usize] {
                continue;
            }
            let mut cycle = vec![];
            let mut i = start;
            while !seen[i as usize] {
                seen[i as usize] = true;
                cycle.push(i + 1);
                i = self.images[i as usize];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn to_rotation<F: ExactField>(&self) -> RotationElement<F> {
        perm_to_rotation(self)
    }
}

/// Canonical cycle notation: each cycle starts at its least element, cycles
/// sorted by that element, fixed points omitted, identity `()`.
impl fmt::Display for CubePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for i in c {
                write!(f, "{i}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl FromStr for CubePermutation {
    type Err = PermParseError;

    /// Accepts products of cycles such as `(12)(34)` or `(1 2 3)`, read with
    /// the rightmost cycle applied first; `()` and `e` denote the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PermParseError(s.to_string());
        let s = s.trim();
        if s == "e" {
            return Ok(Self::identity());
        }
        let mut result = Self::identity();
        let mut rest = s;
        if rest.is_empty() {
            return Err(err());
        }
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(err)?;
            let body = rest.strip_prefix('(').ok_or_else(err)?;
            let body = &body[..body_end - 1];
            rest = rest[body_end + 1..].trim_start();
            let points: Vec<u8> = body
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| c.to_digit(10).map(|d| d as u8).filter(|d| (1..=4).contains(d)))
                .collect::<Option<_>>()
                .ok_or_else(err)?;
            if (1..points.len()).any(|k| points[..k].contains(&points[k])) {
                return Err(err());
            }
            let mut images = [1, 2, 3, 4];
            for (k, &p) in points.iter().enumerate() {
                let next = points[(k + 1) % points.len()];
                if images[(p - 1) as usize] != p {
                    return Err(err());
                }
                images[(p - 1) as usize] = next;
            }
            let cycle = Self::from_images(images).ok_or_else(err)?;
            result = result.compose(&cycle);
        }
        Ok(result)
    }
}

fn cube_table() -> &'static HashMap<CubePermutation, [[i64; 3]; 3]> {
    static TABLE: OnceLock<HashMap<CubePermutation, [[i64; 3]; 3]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = HashMap::new();
        for cols in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            for signs in 0..8u8 {
                let mut m = [[0i64; 3]; 3];
                for (row, &col) in cols.iter().enumerate() {
                    m[row][col] = if signs >> row & 1 == 1 { -1 } else { 1 };
                }
                if int_det(&m) != 1 {
                    continue;
                }
                let images = DIAGONALS.map(|d| {
                    let v: [i64; 3] = std::array::from_fn(|i| (0..3).map(|k| m[i][k] * d[k]).sum());
                    DIAGONALS
                        .iter()
                        .position(|e| *e == v || *e == v.map(|x| -x))
                        .expect("signed permutation matrices permute the diagonals") as u8
                        + 1
                });
                let p = CubePermutation::from_images(images).expect("action is a bijection");
                table.insert(p, m);
            }
        }
        assert_eq!(table.len(), 24);
        table
    })
}

fn int_det(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// The cube rotation sending each diagonal line `d_i` to `±d_{p(i)}`.
pub fn perm_to_rotation<F: ExactField>(p: &CubePermutation) -> RotationElement<F> {
    RotationElement::from_matrix_unchecked(Matrix3::from_i64(cube_table()[p]))
}

/// Inverse of [`perm_to_rotation`] on the octahedral group.
pub fn rotation_to_perm<F: ExactField>(r: &RotationElement<F>) -> Option<CubePermutation> {
    cube_table().iter().find(|(_, m)| Matrix3::<F>::from_i64(**m) == *r.matrix()).map(|(p, _)| *p)
}

/// Shorthand used throughout tests and fixtures: `rot("(12)")`.
pub fn rot<F: ExactField>(cycles: &str) -> RotationElement<F> {
    perm_to_rotation(&cycles.parse().expect("valid cycle notation"))
}
