//! Canonical simplices: strictly increasing vertex tuples.

use std::fmt;

use crate::error::{Error, Result};

/// A simplex stored as its strictly increasing vertex sequence.
///
/// Ordering is lexicographic on the vertex sequence, which is the canonical
/// order used by every registry and every elimination in this crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    /// Builds a simplex from vertices in any order; duplicates are rejected.
    pub fn new(mut vertices: Vec<u32>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidSimplex("empty vertex list".into()));
        }
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex(format!("duplicate vertex {}", w[0])));
        }
        Ok(Simplex(vertices))
    }

    /// Wraps an already strictly increasing sequence.
    pub(crate) fn from_sorted(vertices: Vec<u32>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-1 faces, ordered by the position of the deleted vertex.
    ///
    /// A vertex has no faces and yields an empty list.
    pub fn faces(&self) -> Vec<Simplex> {
        if self.0.len() < 2 {
            return Vec::new();
        }
        (0..self.0.len()).map(|p| self.face_without(p)).collect()
    }

    /// The face obtained by deleting the vertex at position `p`.
    pub fn face_without(&self, p: usize) -> Simplex {
        let mut v = Vec::with_capacity(self.0.len() - 1);
        v.extend_from_slice(&self.0[..p]);
        v.extend_from_slice(&self.0[p + 1..]);
        Simplex(v)
    }

    /// True when every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

pub(crate) fn write_tuple<T: fmt::Display>(
    f: &mut impl fmt::Write,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    f.write_char('(')?;
    for (i, v) in items.enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        write!(f, "{v}")?;
    }
    f.write_char(')')
}

/// Canonicalizes a vertex list into a [`Simplex`].
pub fn make_simplex(vertices: &[u32]) -> Result<Simplex> {
    Simplex::new(vertices.to_vec())
}
