//! Combinatorics of a convex polygon: diagonals, crossings, dissections
//! and the pieces a dissection cuts the polygon into.
//!
//! Vertices are `0..N` in cyclic order. Everything here is decided by
//! cyclic interval containment; no coordinates are involved.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Smallest polygon accepted by the combinatorial operations.
pub const MIN_POLYGON: usize = 4;
/// Smallest polygon for which the cluster category is considered (`n >= 3`).
pub const MIN_CATEGORY_POLYGON: usize = 6;

/// Number of vertices `N = n + 3` of the polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolygonSize(usize);

impl PolygonSize {
    pub fn new(vertices: usize) -> Result<Self> {
        if vertices < MIN_POLYGON {
            return Err(Error::PolygonTooSmall {
                got: vertices,
                min: MIN_POLYGON,
            });
        }
        Ok(PolygonSize(vertices))
    }

    /// The polygon of the cluster category of type `A_rank`.
    pub fn for_rank(rank: usize) -> Result<Self> {
        Self::new(rank + 3)?.require_category()
    }

    /// Rejects polygons too small to carry the cluster category.
    pub fn require_category(self) -> Result<Self> {
        if self.0 < MIN_CATEGORY_POLYGON {
            return Err(Error::PolygonTooSmall {
                got: self.0,
                min: MIN_CATEGORY_POLYGON,
            });
        }
        Ok(self)
    }

    #[inline]
    pub fn vertices(self) -> usize {
        self.0
    }

    /// The rank `n` of the associated type `A_n`.
    pub fn rank(self) -> usize {
        self.0 - 3
    }

    #[inline]
    pub fn wrap(self, v: isize) -> usize {
        v.rem_euclid(self.0 as isize) as usize
    }

    /// Whether `a` and `b` are equal or joined by a polygon edge.
    #[inline]
    pub fn equal_or_adjacent(self, a: usize, b: usize) -> bool {
        let d = (b + self.0 - a) % self.0;
        d == 0 || d == 1 || d == self.0 - 1
    }

    pub fn diagonal_count(self) -> usize {
        self.0 * (self.0 - 3) / 2
    }

    /// All diagonals, sorted by `(a, b)`.
    pub fn diagonals(self) -> Vec<Diagonal> {
        let n = self.0;
        let mut out = Vec::with_capacity(self.diagonal_count());
        for a in 0..n {
            for b in a + 2..n {
                if !(a == 0 && b == n - 1) {
                    out.push(Diagonal { a, b });
                }
            }
        }
        out
    }
}

impl fmt::Display for PolygonSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A chord joining two non-adjacent vertices, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagonal {
    a: usize,
    b: usize,
}

impl Diagonal {
    pub fn new(a: usize, b: usize, n: PolygonSize) -> Result<Self> {
        let polygon = n.vertices();
        for v in [a, b] {
            if v >= polygon {
                return Err(Error::VertexOutOfRange { vertex: v, polygon });
            }
        }
        if n.equal_or_adjacent(a, b) {
            return Err(Error::DegenerateDiagonal { a, b });
        }
        Ok(Diagonal {
            a: a.min(b),
            b: a.max(b),
        })
    }

    /// Builds the diagonal through `a` and `b` after reducing both modulo
    /// `N`, or `None` when they are equal or adjacent (an edge, i.e. the
    /// zero object).
    pub fn reduced(a: isize, b: isize, n: PolygonSize) -> Option<Self> {
        let (a, b) = (n.wrap(a), n.wrap(b));
        if n.equal_or_adjacent(a, b) {
            None
        } else {
            Some(Diagonal {
                a: a.min(b),
                b: a.max(b),
            })
        }
    }

    #[inline]
    pub fn a(self) -> usize {
        self.a
    }

    #[inline]
    pub fn b(self) -> usize {
        self.b
    }

    #[inline]
    pub fn endpoints(self) -> [usize; 2] {
        [self.a, self.b]
    }

    #[inline]
    pub fn has_endpoint(self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    /// The common endpoint of two distinct diagonals, if any.
    pub fn shared_vertex(self, other: Diagonal) -> Option<usize> {
        if other.has_endpoint(self.a) {
            Some(self.a)
        } else if other.has_endpoint(self.b) {
            Some(self.b)
        } else {
            None
        }
    }

    /// Whether `v` lies strictly between the endpoints, i.e. in `(a, b)`.
    #[inline]
    pub fn strictly_inside(self, v: usize) -> bool {
        self.a < v && v < self.b
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// Whether two diagonals cross in the interior of the polygon.
///
/// Exactly one endpoint of `d2` must lie in the open interval `(d1.a, d1.b)`
/// with the other strictly outside; diagonals sharing an endpoint never
/// cross. The polygon size is irrelevant once both are normalised.
#[inline]
pub fn crosses(d1: Diagonal, d2: Diagonal) -> bool {
    if d1.shared_vertex(d2).is_some() || d1 == d2 {
        return false;
    }
    d1.strictly_inside(d2.a) != d1.strictly_inside(d2.b)
}

/// A set of pairwise non-crossing diagonals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dissection {
    n: PolygonSize,
    diagonals: Vec<Diagonal>,
}

impl Dissection {
    pub fn empty(n: PolygonSize) -> Self {
        Dissection {
            n,
            diagonals: Vec::new(),
        }
    }

    pub fn new(n: PolygonSize, diagonals: impl IntoIterator<Item = Diagonal>) -> Result<Self> {
        let mut diagonals: Vec<Diagonal> = diagonals.into_iter().collect();
        for d in &diagonals {
            if d.b >= n.vertices() {
                return Err(Error::VertexOutOfRange {
                    vertex: d.b,
                    polygon: n.vertices(),
                });
            }
        }
        diagonals.sort_unstable();
        for w in diagonals.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateDiagonal(w[0].to_string()));
            }
        }
        for (k, &d1) in diagonals.iter().enumerate() {
            for &d2 in &diagonals[k + 1..] {
                if crosses(d1, d2) {
                    return Err(Error::CrossingDiagonals(d1.to_string(), d2.to_string()));
                }
            }
        }
        Ok(Dissection { n, diagonals })
    }

    /// Convenience constructor from vertex pairs.
    pub fn from_pairs(n: PolygonSize, pairs: &[(usize, usize)]) -> Result<Self> {
        let diagonals = pairs
            .iter()
            .map(|&(a, b)| Diagonal::new(a, b, n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, diagonals)
    }

    /// Parses the `a-b,c-d` text format. The empty string is the empty
    /// dissection.
    pub fn parse(text: &str, n: PolygonSize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::empty(n));
        }
        let diagonals = text
            .split(',')
            .map(|token| parse_diagonal(token, n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, diagonals)
    }

    #[inline]
    pub fn polygon(&self) -> PolygonSize {
        self.n
    }

    #[inline]
    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    #[inline]
    pub fn contains(&self, d: Diagonal) -> bool {
        self.diagonals.binary_search(&d).is_ok()
    }

    pub fn len(&self) -> usize {
        self.diagonals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonals.is_empty()
    }

    pub fn is_triangulation(&self) -> bool {
        self.diagonals.len() == self.n.vertices() - 3
    }

    /// Checks the non-crossing and uniqueness invariants.
    pub fn validate(&self) -> Result<()> {
        Self::new(self.n, self.diagonals.iter().copied()).map(|_| ())
    }

    /// The pieces the dissection cuts the polygon into, each with its
    /// vertices in increasing order (smallest vertex first), sorted.
    pub fn pieces(&self) -> Vec<Piece> {
        let mut pieces: Vec<Vec<usize>> = vec![(0..self.n.vertices()).collect()];
        for d in &self.diagonals {
            // exactly one current piece has both endpoints as corners
            let idx = pieces
                .iter()
                .position(|p| p.contains(&d.a) && p.contains(&d.b))
                .expect("diagonal lies inside some piece");
            let piece = pieces.swap_remove(idx);
            let inner: Vec<usize> = piece
                .iter()
                .copied()
                .filter(|&v| v >= d.a && v <= d.b)
                .collect();
            let outer: Vec<usize> = piece
                .iter()
                .copied()
                .filter(|&v| v <= d.a || v >= d.b)
                .collect();
            pieces.push(inner);
            pieces.push(outer);
        }
        let mut pieces: Vec<Piece> = pieces
            .into_iter()
            .map(|vertices| Piece { vertices })
            .collect();
        pieces.sort();
        pieces
    }

    /// The dual tree of the dissection.
    pub fn piece_adjacency(&self) -> PieceGraph {
        PieceGraph::new(self)
    }
}

fn parse_diagonal(token: &str, n: PolygonSize) -> Result<Diagonal> {
    let token = token.trim();
    let (a, b) = token
        .split_once('-')
        .ok_or_else(|| Error::Syntax(token.to_string()))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::Syntax(token.to_string()))
    };
    Diagonal::new(parse(a)?, parse(b)?, n)
}

impl fmt::Display for Dissection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, d) in self.diagonals.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// A sub-polygon of a dissection, vertices in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Piece {
    vertices: Vec<usize>,
}

impl Piece {
    #[inline]
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Sides of the piece as cyclically consecutive vertex pairs.
    pub fn sides(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |t| (self.vertices[t], self.vertices[(t + 1) % k]))
    }
}

/// Pieces of a dissection joined across shared diagonals.
#[derive(Debug, Clone)]
pub struct PieceGraph {
    pieces: Vec<Piece>,
    edges: Vec<(usize, usize, Diagonal)>,
    neighbours: Vec<Vec<(usize, Diagonal)>>,
}

impl PieceGraph {
    fn new(dissection: &Dissection) -> Self {
        let pieces = dissection.pieces();
        let n = dissection.polygon();
        let mut sides_of: Vec<Vec<usize>> = vec![Vec::new(); dissection.len()];
        for (p, piece) in pieces.iter().enumerate() {
            for (u, v) in piece.sides() {
                if let Some(d) = Diagonal::reduced(u as isize, v as isize, n) {
                    let k = dissection
                        .diagonals()
                        .binary_search(&d)
                        .expect("piece side is an edge or a dissection diagonal");
                    sides_of[k].push(p);
                }
            }
        }
        let mut edges = Vec::with_capacity(dissection.len());
        let mut neighbours = vec![Vec::new(); pieces.len()];
        for (k, owners) in sides_of.iter().enumerate() {
            debug_assert_eq!(owners.len(), 2);
            let d = dissection.diagonals()[k];
            let (p, q) = (owners[0], owners[1]);
            edges.push((p, q, d));
            neighbours[p].push((q, d));
            neighbours[q].push((p, d));
        }
        PieceGraph {
            pieces,
            edges,
            neighbours,
        }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Edges `(piece, piece, shared diagonal)`.
    pub fn edges(&self) -> &[(usize, usize, Diagonal)] {
        &self.edges
    }

    pub fn neighbours(&self, piece: usize) -> &[(usize, Diagonal)] {
        &self.neighbours[piece]
    }

    pub fn is_tree(&self) -> bool {
        if self.edges.len() + 1 != self.pieces.len() {
            return false;
        }
        let mut seen = vec![false; self.pieces.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(p) = queue.pop_front() {
            for &(q, _) in &self.neighbours[p] {
                if !seen[q] {
                    seen[q] = true;
                    count += 1;
                    queue.push_back(q);
                }
            }
        }
        count == self.pieces.len()
    }
}

/// Bitmask of the diagonals (by index) crossing each diagonal.
fn crossing_masks(all: &[Diagonal]) -> Vec<u128> {
    all.iter()
        .map(|&d| {
            all.iter()
                .enumerate()
                .filter(|&(_, &e)| crosses(d, e))
                .fold(0u128, |m, (k, _)| m | (1 << k))
        })
        .collect()
}

/// All dissections of the polygon, including the empty one, in a fixed
/// depth-first order over the sorted diagonal list.
pub fn enumerate_dissections(n: PolygonSize) -> Vec<Dissection> {
    enumerate_filtered(n, false)
}

/// All triangulations (maximal dissections).
pub fn enumerate_triangulations(n: PolygonSize) -> Vec<Dissection> {
    enumerate_filtered(n, true)
}

fn enumerate_filtered(n: PolygonSize, maximal_only: bool) -> Vec<Dissection> {
    let all = n.diagonals();
    assert!(
        all.len() <= 128,
        "enumeration supports at most 128 diagonals"
    );
    let masks = crossing_masks(&all);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    descend(&all, &masks, 0, 0, &mut chosen, n, maximal_only, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn descend(
    all: &[Diagonal],
    masks: &[u128],
    next: usize,
    blocked: u128,
    chosen: &mut Vec<Diagonal>,
    n: PolygonSize,
    maximal_only: bool,
    out: &mut Vec<Dissection>,
) {
    if next == all.len() {
        if !maximal_only || chosen.len() == n.vertices() - 3 {
            out.push(Dissection {
                n,
                diagonals: chosen.clone(),
            });
        }
        return;
    }
    descend(all, masks, next + 1, blocked, chosen, n, maximal_only, out);
    if blocked & (1 << next) == 0 {
        chosen.push(all[next]);
        descend(
            all,
            masks,
            next + 1,
            blocked | masks[next],
            chosen,
            n,
            maximal_only,
            out,
        );
        chosen.pop();
    }
}

/// A pseudo-random dissection, deterministic in `seed`: diagonals are
/// visited in a shuffled order and each compatible one is kept with
/// probability one half.
pub fn random_dissection(n: PolygonSize, seed: u64) -> Dissection {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all = n.diagonals();
    all.shuffle(&mut rng);
    let mut chosen: Vec<Diagonal> = Vec::new();
    for d in all {
        if rng.gen_bool(0.5) && chosen.iter().all(|&e| !crosses(d, e)) {
            chosen.push(d);
        }
    }
    chosen.sort_unstable();
    Dissection {
        n,
        diagonals: chosen,
    }
}

impl FromStr for PolygonSize {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v = s.trim().parse().map_err(|_| Error::Syntax(s.to_string()))?;
        PolygonSize::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn size(n: usize) -> PolygonSize {
        PolygonSize::new(n).unwrap()
    }

    fn diag(a: usize, b: usize, n: usize) -> Diagonal {
        Diagonal::new(a, b, size(n)).unwrap()
    }

    #[test]
    fn make_diagonal_normalises() {
        assert_eq!(diag(1, 4, 6), diag(4, 1, 6));
        assert_eq!((diag(4, 1, 6).a(), diag(4, 1, 6).b()), (1, 4));
        assert_eq!(
            Diagonal::new(0, 1, size(6)),
            Err(Error::DegenerateDiagonal { a: 0, b: 1 })
        );
        assert!(Diagonal::new(0, 5, size(6)).is_err());
        assert!(Diagonal::new(3, 3, size(6)).is_err());
        assert!(matches!(
            Diagonal::new(0, 7, size(6)),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn crossing_examples() {
        assert!(crosses(diag(1, 4, 6), diag(0, 3, 6)));
        assert!(!crosses(diag(0, 2, 6), diag(2, 4, 6)));
        assert!(crosses(diag(1, 5, 8), diag(0, 4, 8)));
        assert!(!crosses(diag(1, 4, 6), diag(1, 4, 6)));
    }

    #[test]
    fn crossing_symmetric_and_shared_endpoints() {
        for n in 4..=12 {
            let all = size(n).diagonals();
            for &d in &all {
                for &e in &all {
                    assert_eq!(crosses(d, e), crosses(e, d));
                    if d.shared_vertex(e).is_some() {
                        assert!(!crosses(d, e));
                    }
                }
            }
        }
    }

    #[test]
    fn pieces_examples() {
        let n = size(6);
        let verts = |d: &Dissection| -> Vec<Vec<usize>> {
            d.pieces().iter().map(|p| p.vertices().to_vec()).collect()
        };
        assert_eq!(verts(&Dissection::empty(n)), vec![vec![0, 1, 2, 3, 4, 5]]);
        let d = Dissection::from_pairs(n, &[(0, 3)]).unwrap();
        assert_eq!(verts(&d), vec![vec![0, 1, 2, 3], vec![0, 3, 4, 5]]);
        let fan = Dissection::from_pairs(n, &[(0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(
            verts(&fan),
            vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4], vec![0, 4, 5]]
        );
    }

    #[test]
    fn adjacency_examples() {
        let n = size(6);
        let d = Dissection::from_pairs(n, &[(0, 3)]).unwrap();
        let g = d.piece_adjacency();
        assert_eq!(g.edges(), &[(0, 1, diag(0, 3, 6))]);

        let fan = Dissection::from_pairs(n, &[(0, 2), (0, 3), (0, 4)]).unwrap();
        let g = fan.piece_adjacency();
        assert!(g.is_tree());
        let degrees: Vec<usize> = (0..4).map(|p| g.neighbours(p).len()).collect();
        assert_eq!(degrees, vec![1, 2, 2, 1]);
    }

    #[test]
    fn piece_invariants_over_all_dissections() {
        for n in 4..=9 {
            let n = size(n);
            for d in enumerate_dissections(n) {
                let pieces = d.pieces();
                assert_eq!(pieces.len(), d.len() + 1);
                let area: usize = pieces.iter().map(|p| p.len() - 2).sum();
                assert_eq!(area, n.vertices() - 2);
                for p in &pieces {
                    assert!(p.len() >= 3);
                }
                // polygon edges border exactly one piece, diagonals two
                for v in 0..n.vertices() {
                    let w = (v + 1) % n.vertices();
                    let owners = pieces
                        .iter()
                        .filter(|p| p.sides().any(|(x, y)| (x, y) == (v, w) || (y, x) == (v, w)))
                        .count();
                    assert_eq!(owners, 1);
                }
                let g = d.piece_adjacency();
                assert_eq!(g.edges().len(), d.len());
                assert!(g.is_tree());
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let n = size(8);
        let d = Dissection::parse("4-7, 0-3", n).unwrap();
        assert_eq!(d.to_string(), "0-3,4-7");
        assert_eq!(Dissection::parse("", n).unwrap(), Dissection::empty(n));
        assert!(matches!(
            Dissection::parse("0-3,3-0", n),
            Err(Error::DuplicateDiagonal(_))
        ));
        assert!(matches!(
            Dissection::parse("0-1", n),
            Err(Error::DegenerateDiagonal { .. })
        ));
        assert!(matches!(
            Dissection::parse("0-4,2-6", n),
            Err(Error::CrossingDiagonals(..))
        ));
        assert!(matches!(Dissection::parse("0:4", n), Err(Error::Syntax(_))));
        assert!(matches!(
            Dissection::parse("0-9", n),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn random_dissection_is_deterministic_and_valid() {
        let n = size(10);
        assert_eq!(random_dissection(n, 0), random_dissection(n, 0));
        for seed in 0..50 {
            random_dissection(n, seed).validate().unwrap();
        }
        let all = enumerate_dissections(size(6));
        for seed in 0..50 {
            assert!(all.contains(&random_dissection(size(6), seed)));
        }
    }

    #[test]
    fn polygon_size_bounds() {
        assert!(PolygonSize::new(3).is_err());
        assert!(PolygonSize::new(5).unwrap().require_category().is_err());
        assert_eq!(PolygonSize::for_rank(7).unwrap().vertices(), 10);
        assert!(PolygonSize::for_rank(2).is_err());
        assert_eq!(size(10).diagonals().len(), 35);
    }
}
