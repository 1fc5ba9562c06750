//! The combinatorial generalised frieze `m_R` of a dissection, computed by
//! propagating values outwards across the pieces.
//!
//! For a base vertex `i`, every other corner of a piece containing `i`
//! gets value 1. A piece reached from an already labelled neighbour across
//! the shared diagonal `{k, l}` gives each of its remaining corners `j` the
//! value `m(i, k) + m(i, l)`.

use std::collections::VecDeque;

use crate::cluster::{IndObj, Obj};
use crate::polygon::{Diagonal, Dissection, PieceGraph};

/// Order in which pieces are visited. The result does not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Traversal {
    BreadthFirst,
    DepthFirst,
}

/// Values `m_R(base, j)` for all vertices `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MRow {
    pub base: usize,
    pub values: Vec<u64>,
}

pub fn m_row(dissection: &Dissection, base: usize) -> MRow {
    m_row_with(
        dissection,
        &dissection.piece_adjacency(),
        base,
        Traversal::BreadthFirst,
    )
}

pub fn m_row_with(
    dissection: &Dissection,
    graph: &PieceGraph,
    base: usize,
    order: Traversal,
) -> MRow {
    let n = dissection.polygon().vertices();
    assert!(base < n, "vertex {base} out of range");
    let mut values = vec![0u64; n];
    let mut visited = vec![false; graph.pieces().len()];
    let mut frontier = VecDeque::new();
    for (p, piece) in graph.pieces().iter().enumerate() {
        if piece.contains(base) {
            visited[p] = true;
            frontier.push_back(p);
            for &j in piece.vertices() {
                if j != base {
                    values[j] = 1;
                }
            }
        }
    }
    let next = |frontier: &mut VecDeque<usize>| match order {
        Traversal::BreadthFirst => frontier.pop_front(),
        Traversal::DepthFirst => frontier.pop_back(),
    };
    while let Some(p) = next(&mut frontier) {
        for &(q, shared) in graph.neighbours(p) {
            if visited[q] {
                continue;
            }
            visited[q] = true;
            let (k, l) = (shared.a(), shared.b());
            let value = values[k] + values[l];
            for &j in graph.pieces()[q].vertices() {
                if j != k && j != l {
                    values[j] = value;
                }
            }
            frontier.push_back(q);
        }
    }
    MRow { base, values }
}

/// All rows of `m_R`, indexed `[i][j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MTable {
    rows: Vec<Vec<u64>>,
}

impl MTable {
    pub fn new(dissection: &Dissection) -> Self {
        Self::with_order(dissection, Traversal::BreadthFirst)
    }

    pub fn with_order(dissection: &Dissection, order: Traversal) -> Self {
        let graph = dissection.piece_adjacency();
        let rows = (0..dissection.polygon().vertices())
            .map(|i| m_row_with(dissection, &graph, i, order).values)
            .collect();
        MTable { rows }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows[i][j]
    }

    #[inline]
    pub fn diagonal(&self, d: Diagonal) -> u64 {
        self.rows[d.a()][d.b()]
    }

    /// Multiplicative extension to objects; the zero object has value 1.
    pub fn object(&self, x: &Obj) -> u64 {
        x.summands().iter().fold(1u64, |acc, &d| {
            acc.checked_mul(self.diagonal(d))
                .expect("frieze value overflows u64")
        })
    }

    /// `m(tau c) m(c) - m(middle)` over the AR triangle ending in `c`.
    pub fn mesh_difference(&self, c: IndObj) -> i128 {
        let t = c.ar_triangle();
        self.diagonal(t.start.diagonal()) as i128 * self.diagonal(t.end.diagonal()) as i128
            - self.object(&t.middle) as i128
    }
}

pub fn m_value(dissection: &Dissection, x: &Obj) -> u64 {
    MTable::new(dissection).object(x)
}

pub fn mesh_difference_m(dissection: &Dissection, c: IndObj) -> i128 {
    MTable::new(dissection).mesh_difference(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::all_ind_objects;
    use crate::polygon::{enumerate_dissections, PolygonSize};

    fn hexagon(pairs: &[(usize, usize)]) -> Dissection {
        Dissection::from_pairs(PolygonSize::new(6).unwrap(), pairs).unwrap()
    }

    fn ind(a: usize, b: usize) -> IndObj {
        IndObj::from_vertices(a, b, PolygonSize::new(6).unwrap()).unwrap()
    }

    #[test]
    fn row_examples() {
        let d = hexagon(&[(0, 3)]);
        assert_eq!(m_row(&d, 1).values, vec![1, 0, 1, 1, 2, 2]);
        let fan = hexagon(&[(0, 2), (0, 3), (0, 4)]);
        assert_eq!(m_row(&fan, 1).values[4], 3);
        let snake = hexagon(&[(1, 3), (1, 4), (0, 4)]);
        let row = m_row(&snake, 2).values;
        assert_eq!((row[4], row[0], row[5]), (2, 3, 5));
    }

    #[test]
    fn value_examples() {
        let d = hexagon(&[(0, 3)]);
        let n = d.polygon();
        assert_eq!(m_value(&d, &Obj::zero(n)), 1);
        let c: Obj = ind(1, 4).into();
        assert_eq!(m_value(&d, &c), 2);
        assert_eq!(m_value(&d, &c.sum(&c)), 4);
    }

    #[test]
    fn mesh_examples() {
        let d = hexagon(&[(0, 3)]);
        assert_eq!(mesh_difference_m(&d, ind(1, 4)), 1);
        assert_eq!(mesh_difference_m(&d, ind(2, 5)), 0);
    }

    #[test]
    fn symmetry_order_independence_and_mesh_rule() {
        for n in 6..=9 {
            let n = PolygonSize::new(n).unwrap();
            let objects = all_ind_objects(n).unwrap();
            for d in enumerate_dissections(n) {
                let bfs = MTable::new(&d);
                let dfs = MTable::with_order(&d, Traversal::DepthFirst);
                assert_eq!(bfs, dfs, "{d}");
                for i in 0..n.vertices() {
                    for j in 0..n.vertices() {
                        assert_eq!(bfs.get(i, j), bfs.get(j, i), "{d} ({i},{j})");
                        if i != j {
                            assert!(bfs.get(i, j) >= 1);
                        }
                    }
                }
                for &c in &objects {
                    let diff = bfs.mesh_difference(c);
                    assert!(diff == 0 || diff == 1, "{d} at {c}: {diff}");
                    if d.is_triangulation() {
                        assert_eq!(diff, 1);
                    }
                }
            }
        }
    }
}
