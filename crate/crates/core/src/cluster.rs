//! The cluster category of type `A_n` modelled on the diagonals of the
//! `(n+3)`-gon.
//!
//! An indecomposable object is a diagonal `{i, j}`; its AR translate is
//! `{i-1, j-1}`. Because the category is 2-Calabi-Yau the suspension acts
//! by the same shift, and the Serre functor is the double shift.

use std::fmt;

use crate::error::Result;
use crate::polygon::{crosses, Diagonal, PolygonSize};

/// An indecomposable object of the cluster category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndObj {
    n: PolygonSize,
    diag: Diagonal,
}

impl IndObj {
    pub fn new(diag: Diagonal, n: PolygonSize) -> Result<Self> {
        n.require_category()?;
        Ok(IndObj { n, diag })
    }

    pub fn from_vertices(a: usize, b: usize, n: PolygonSize) -> Result<Self> {
        Self::new(Diagonal::new(a, b, n)?, n)
    }

    #[inline]
    pub fn diagonal(self) -> Diagonal {
        self.diag
    }

    #[inline]
    pub fn polygon(self) -> PolygonSize {
        self.n
    }

    /// Shifts both coordinates by `k` (mod `N`).
    fn shifted(self, k: isize) -> IndObj {
        let diag = Diagonal::reduced(
            self.diag.a() as isize + k,
            self.diag.b() as isize + k,
            self.n,
        )
        .expect("rotations preserve diagonals");
        IndObj { n: self.n, diag }
    }

    /// AR translation `(i, j) -> (i-1, j-1)`.
    pub fn tau(self) -> IndObj {
        self.shifted(-1)
    }

    pub fn tau_inverse(self) -> IndObj {
        self.shifted(1)
    }

    /// Suspension. In a 2-Calabi-Yau category `tau = S Σ⁻¹ = Σ`, so this
    /// is the same shift as [`IndObj::tau`]; kept as a separate name so
    /// call sites say which functor they mean.
    pub fn suspend(self) -> IndObj {
        self.tau()
    }

    /// Serre functor `S = Σ²`.
    pub fn serre(self) -> IndObj {
        self.suspend().suspend()
    }

    /// The AR triangle ending in this object.
    pub fn ar_triangle(self) -> MeshTriangle {
        ar_triangle(self)
    }
}

impl fmt::Display for IndObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.diag)
    }
}

/// `dim Ext¹(m, s)`: 1 if the diagonals cross, 0 otherwise.
pub fn ext1_dim(m: IndObj, s: IndObj) -> u32 {
    debug_assert_eq!(m.n, s.n);
    crosses(m.diag, s.diag) as u32
}

/// An object as a multiset of indecomposable summands; empty is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Obj {
    n: PolygonSize,
    summands: Vec<Diagonal>,
}

impl Obj {
    pub fn zero(n: PolygonSize) -> Self {
        Obj {
            n,
            summands: Vec::new(),
        }
    }

    pub fn new(n: PolygonSize, summands: impl IntoIterator<Item = Diagonal>) -> Self {
        let mut summands: Vec<Diagonal> = summands.into_iter().collect();
        summands.sort_unstable();
        Obj { n, summands }
    }

    pub fn polygon(&self) -> PolygonSize {
        self.n
    }

    pub fn summands(&self) -> &[Diagonal] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// Direct sum.
    pub fn sum(&self, other: &Obj) -> Obj {
        debug_assert_eq!(self.n, other.n);
        Obj::new(self.n, self.summands.iter().chain(&other.summands).copied())
    }
}

impl From<IndObj> for Obj {
    fn from(c: IndObj) -> Self {
        Obj {
            n: c.n,
            summands: vec![c.diag],
        }
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        for (k, d) in self.summands.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// An AR triangle `tau c -> middle -> c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshTriangle {
    pub start: IndObj,
    pub middle: Obj,
    pub end: IndObj,
}

/// Builds `(i-1, j-1) -> (i-1, j) ⊕ (i, j-1) -> (i, j)`, dropping middle
/// terms whose coordinates are equal or neighbouring vertices.
pub fn ar_triangle(c: IndObj) -> MeshTriangle {
    let n = c.n;
    let (i, j) = (c.diag.a() as isize, c.diag.b() as isize);
    let middle = [(i - 1, j), (i, j - 1)]
        .into_iter()
        .filter_map(|(x, y)| Diagonal::reduced(x, y, n));
    MeshTriangle {
        start: c.tau(),
        middle: Obj::new(n, middle),
        end: c,
    }
}

/// Every indecomposable object, in diagonal order.
pub fn all_ind_objects(n: PolygonSize) -> Result<Vec<IndObj>> {
    n.require_category()?;
    Ok(n.diagonals()
        .into_iter()
        .map(|diag| IndObj { n, diag })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn size(n: usize) -> PolygonSize {
        PolygonSize::new(n).unwrap()
    }

    fn ind(a: usize, b: usize, n: usize) -> IndObj {
        IndObj::from_vertices(a, b, size(n)).unwrap()
    }

    #[test]
    fn tau_examples() {
        assert_eq!(ind(1, 4, 6).tau(), ind(0, 3, 6));
        assert_eq!(ind(0, 2, 10).tau(), ind(1, 9, 10));
        assert_eq!(ind(1, 4, 6).suspend(), ind(0, 3, 6));
        assert_eq!(ind(2, 5, 8).serre(), ind(0, 3, 8));
    }

    #[test]
    fn tau_is_periodic_bijection() {
        for n in 6..=12 {
            let all = all_ind_objects(size(n)).unwrap();
            let images: HashSet<_> = all.iter().map(|c| c.tau()).collect();
            assert_eq!(images.len(), all.len());
            for &c in &all {
                assert_eq!(c.suspend(), c.tau());
                assert_eq!(c.tau().tau_inverse(), c);
                let mut x = c;
                for _ in 0..n {
                    x = x.tau();
                }
                assert_eq!(x, c);
            }
        }
    }

    #[test]
    fn ext1_examples() {
        assert_eq!(ext1_dim(ind(1, 4, 6), ind(0, 3, 6)), 1);
        assert_eq!(ext1_dim(ind(0, 2, 6), ind(2, 4, 6)), 0);
        for c in all_ind_objects(size(8)).unwrap() {
            assert_eq!(ext1_dim(c, c), 0);
            for d in all_ind_objects(size(8)).unwrap() {
                assert_eq!(ext1_dim(c, d), ext1_dim(d, c));
            }
        }
    }

    #[test]
    fn ar_triangle_examples() {
        let t = ar_triangle(ind(1, 4, 6));
        assert_eq!(t.start, ind(0, 3, 6));
        assert_eq!(
            t.middle.summands(),
            &[ind(0, 4, 6).diagonal(), ind(1, 3, 6).diagonal()]
        );
        assert_eq!(t.end, ind(1, 4, 6));

        let t = ar_triangle(ind(0, 2, 6));
        assert_eq!(t.start, ind(1, 5, 6));
        assert_eq!(t.middle.summands(), &[ind(2, 5, 6).diagonal()]);
    }

    #[test]
    fn mesh_shape() {
        for n in 6..=12 {
            let n = size(n);
            let all = all_ind_objects(n).unwrap();
            let mut starts = HashSet::new();
            for &c in &all {
                let t = ar_triangle(c);
                assert_eq!(t.start, c.tau());
                let (a, b) = (c.diagonal().a(), c.diagonal().b());
                let short = b - a == 2 || a + n.vertices() - b == 2;
                let expected = if short { 1 } else { 2 };
                assert_eq!(t.middle.summands().len(), expected, "{c}");
                assert!(starts.insert(t.start));
            }
            assert_eq!(starts.len(), all.len());
        }
    }

    #[test]
    fn object_counts() {
        assert_eq!(all_ind_objects(size(10)).unwrap().len(), 35);
        assert_eq!(all_ind_objects(size(6)).unwrap().len(), 9);
        assert!(all_ind_objects(size(5)).is_err());
        let all = all_ind_objects(size(10)).unwrap();
        let set: HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), all.len());
    }
}
