//! Frieze grids on the AR quiver and matching against printed figures.
//!
//! The grid is addressed by `(δ, i)` with `2 <= δ <= N-2` and `0 <= i < N`;
//! cell `(δ, i)` holds the value on the diagonal `{i, i+δ}`. Every diagonal
//! therefore appears twice, at `(δ, i)` and at `(N-δ, i+δ)`.
//!
//! In the staggered picture, row `δ` sits at height `δ` and diagonal
//! `{i, i+δ}` at column `2i + δ`; the AR mesh ending in `(δ, i)` is then
//! the diamond with corners `(δ, i-1)`, `(δ+1, i-1)`, `(δ-1, i)` and
//! `(δ, i)`. The fundamental strip shown in printed figures covers
//! columns `0..=N`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bhj::MTable;
use crate::ccmap::rho_diagonal;
use crate::error::{Error, Result};
use crate::polygon::{
    enumerate_dissections, enumerate_triangulations, Diagonal, Dissection, PolygonSize,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Inductive propagation over the pieces.
    Bhj,
    /// Euler characteristics of submodule Grassmannians.
    Cc,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Bhj => "bhj",
            Method::Cc => "cc",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGrid", into = "RawGrid")]
pub struct FriezeGrid {
    polygon: usize,
    /// `cells[δ - 2][i]`
    cells: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct RawGrid {
    polygon: usize,
    rows: Vec<Vec<u64>>,
}

impl TryFrom<RawGrid> for FriezeGrid {
    type Error = Error;

    fn try_from(raw: RawGrid) -> Result<Self> {
        FriezeGrid::from_cells(PolygonSize::new(raw.polygon)?, raw.rows)
    }
}

impl From<FriezeGrid> for RawGrid {
    fn from(g: FriezeGrid) -> Self {
        RawGrid {
            polygon: g.polygon,
            rows: g.cells,
        }
    }
}

impl FriezeGrid {
    /// Builds a grid from `cells[δ - 2][i]`, checking its shape, positivity
    /// and the double-addressing invariant.
    pub fn from_cells(n: PolygonSize, cells: Vec<Vec<u64>>) -> Result<Self> {
        let polygon = n.vertices();
        if cells.len() != polygon - 3 || cells.iter().any(|r| r.len() != polygon) {
            return Err(Error::MalformedFixture(format!(
                "grid for a {polygon}-gon needs {} rows of {polygon} cells",
                polygon - 3
            )));
        }
        let grid = FriezeGrid { polygon, cells };
        for delta in 2..=polygon - 2 {
            for i in 0..polygon {
                let v = grid.cell(delta, i);
                if v == 0 {
                    return Err(Error::MalformedFixture(format!("zero cell ({delta}, {i})")));
                }
                if v != grid.cell(polygon - delta, (i + delta) % polygon) {
                    return Err(Error::MalformedFixture(format!(
                        "cells ({delta}, {i}) and ({}, {}) disagree",
                        polygon - delta,
                        (i + delta) % polygon
                    )));
                }
            }
        }
        Ok(grid)
    }

    fn from_fn(n: PolygonSize, mut value: impl FnMut(Diagonal) -> u64) -> Self {
        let polygon = n.vertices();
        let cells = (2..=polygon - 2)
            .map(|delta| {
                (0..polygon)
                    .map(|i| {
                        let d = Diagonal::reduced(i as isize, (i + delta) as isize, n)
                            .expect("2 <= delta <= N-2 gives a diagonal");
                        value(d)
                    })
                    .collect()
            })
            .collect();
        FriezeGrid { polygon, cells }
    }

    pub fn polygon(&self) -> PolygonSize {
        PolygonSize::new(self.polygon).expect("grid polygon is valid")
    }

    /// Value on the diagonal `{i, i+δ}`; `δ` of 1 or `N-1` is an edge, the
    /// zero object, with value 1.
    #[inline]
    pub fn cell(&self, delta: usize, i: usize) -> u64 {
        if delta == 1 || delta == self.polygon - 1 {
            return 1;
        }
        self.cells[delta - 2][i % self.polygon]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.cells
    }

    /// `αδ − βγ` for every diamond, indexed like the cells.
    pub fn diamonds(&self) -> Vec<Vec<i128>> {
        let n = self.polygon;
        (2..=n - 2)
            .map(|delta| {
                (0..n)
                    .map(|i| {
                        let prev = (i + n - 1) % n;
                        self.cell(delta, prev) as i128 * self.cell(delta, i) as i128
                            - self.cell(delta + 1, prev) as i128 * self.cell(delta - 1, i) as i128
                    })
                    .collect()
            })
            .collect()
    }

    /// The fundamental strip as printed: row `r` is `δ = r + 2`, holding
    /// columns `x ≡ δ (mod 2)` in `0..=N`.
    pub fn strip_rows(&self) -> Vec<Vec<u64>> {
        let n = self.polygon;
        (2..=n - 2)
            .map(|delta| {
                (0..=n)
                    .filter(|x| (x + delta) % 2 == 0)
                    .map(|x| {
                        let i = (x as isize - delta as isize).div_euclid(2);
                        self.cell(delta, i.rem_euclid(n as isize) as usize)
                    })
                    .collect()
            })
            .collect()
    }

    /// Staggered layout in the style of printed friezes.
    pub fn render_ascii(&self) -> String {
        let width = self
            .cells
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            + 1;
        let mut out = String::new();
        for (r, row) in self.strip_rows().iter().enumerate() {
            let mut line = String::new();
            let mut values = row.iter();
            for x in 0..=self.polygon {
                if (x + r) % 2 == 0 {
                    let v = values.next().expect("one value per column of parity");
                    let _ = write!(line, "{v:>width$}");
                } else {
                    line.push_str(&" ".repeat(width));
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    /// CSV with columns `delta,i,j,value,method`.
    pub fn render_csv(&self, method: Method) -> String {
        let mut out = String::from("delta,i,j,value,method\n");
        for delta in 2..=self.polygon - 2 {
            for i in 0..self.polygon {
                let _ = writeln!(
                    out,
                    "{delta},{i},{},{},{}",
                    (i + delta) % self.polygon,
                    self.cell(delta, i),
                    method.name()
                );
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("grid serialises")
    }
}

pub fn frieze_grid(dissection: &Dissection, method: Method) -> FriezeGrid {
    let n = dissection.polygon();
    match method {
        Method::Bhj => {
            let table = MTable::new(dissection);
            FriezeGrid::from_fn(n, |d| table.diagonal(d))
        }
        Method::Cc => FriezeGrid::from_fn(n, |d| rho_diagonal(dissection, d)),
    }
}

/// Which diamond values a fixture may show.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiamondRule {
    /// Every diamond is 1 (a frieze).
    Unimodular,
    /// Every diamond is 0 or 1 (a generalised frieze).
    Generalised,
}

impl DiamondRule {
    fn allows(self, v: i128) -> bool {
        match self {
            DiamondRule::Unimodular => v == 1,
            DiamondRule::Generalised => v == 0 || v == 1,
        }
    }
}

/// Rows of a printed frieze, top to bottom. `n` is the rank, so the polygon
/// has `n + 3` vertices and there are `n` rows. Row `r` occupies columns
/// `r mod 2, r mod 2 + 2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FriezeFixture {
    pub n: usize,
    pub rows: Vec<Vec<u64>>,
}

impl FriezeFixture {
    pub fn from_json(text: &str) -> Result<Self> {
        let fixture: FriezeFixture =
            serde_json::from_str(text).map_err(|e| Error::MalformedFixture(e.to_string()))?;
        fixture.check_shape()?;
        Ok(fixture)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("fixture serialises")
    }

    /// The strip of a grid as a fixture.
    pub fn from_grid(grid: &FriezeGrid) -> Self {
        FriezeFixture {
            n: grid.polygon().rank(),
            rows: grid.strip_rows(),
        }
    }

    pub fn polygon(&self) -> usize {
        self.n + 3
    }

    pub fn check_shape(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::MalformedFixture("rank must be positive".into()));
        }
        if self.rows.len() != self.n {
            return Err(Error::MalformedFixture(format!(
                "rank {} needs {} rows, found {}",
                self.n,
                self.n,
                self.rows.len()
            )));
        }
        let polygon = self.polygon();
        for (r, row) in self.rows.iter().enumerate() {
            let max_len = (polygon - r % 2) / 2 + 1;
            if row.is_empty() || row.len() > max_len {
                return Err(Error::MalformedFixture(format!(
                    "row {r} has {} entries, expected 1..={max_len}",
                    row.len()
                )));
            }
            if row.contains(&0) {
                return Err(Error::MalformedFixture(format!("row {r} contains 0")));
            }
        }
        Ok(())
    }

    /// Entries as `(row, column, value)`.
    fn entries(&self) -> impl Iterator<Item = (usize, isize, u64)> + '_ {
        self.rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(move |(k, &v)| (r, (r % 2 + 2 * k) as isize, v))
        })
    }

    fn at(&self, r: isize, x: isize) -> Option<u64> {
        if r < 0 || r >= self.rows.len() as isize {
            // just outside the top or bottom row is an edge, value 1
            return (r == -1 || r == self.rows.len() as isize).then_some(1);
        }
        let r = r as usize;
        let offset = x - (r % 2) as isize;
        if offset < 0 || offset % 2 != 0 {
            return None;
        }
        self.rows[r].get((offset / 2) as usize).copied()
    }

    /// All diamonds fully visible in the fixture, as `(row, column of the
    /// top corner, αδ − βγ)`.
    pub fn diamonds(&self) -> Vec<(usize, isize, i128)> {
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for k in 0..row.len().saturating_sub(1) {
                let x = (r % 2 + 2 * k + 1) as isize;
                let (alpha, delta) = (row[k], row[k + 1]);
                if let (Some(beta), Some(gamma)) =
                    (self.at(r as isize - 1, x), self.at(r as isize + 1, x))
                {
                    let v = alpha as i128 * delta as i128 - beta as i128 * gamma as i128;
                    out.push((r, x, v));
                }
            }
        }
        out
    }

    /// Fails on the first diamond breaking `rule`, which catches
    /// transcription errors before any search.
    pub fn validate(&self, rule: DiamondRule) -> Result<()> {
        self.check_shape()?;
        for (r, x, v) in self.diamonds() {
            if !rule.allows(v) {
                return Err(Error::MalformedFixture(format!(
                    "diamond below row {r} column {x} has value {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Whether some horizontal shift of the fixture, optionally reflected
/// left-right and/or top-bottom, agrees with the grid at every entry.
pub fn match_fixture(grid: &FriezeGrid, fixture: &FriezeFixture) -> Result<bool> {
    fixture.check_shape()?;
    let n = grid.polygon().vertices();
    if fixture.polygon() != n {
        return Err(Error::MalformedFixture(format!(
            "fixture is for a {}-gon, grid for a {n}-gon",
            fixture.polygon()
        )));
    }
    let entries: Vec<(usize, isize, u64)> = fixture.entries().collect();
    let rows = fixture.rows.len();
    for flip_rows in [false, true] {
        for mirror in [1isize, -1] {
            'shift: for shift in 0..2 * n as isize {
                for &(r, x, v) in &entries {
                    let delta = if flip_rows { rows - 1 - r + 2 } else { r + 2 };
                    let column = mirror * x + shift;
                    if (column - delta as isize).rem_euclid(2) != 0 {
                        continue 'shift;
                    }
                    let i = ((column - delta as isize) / 2).rem_euclid(n as isize) as usize;
                    if grid.cell(delta, i) != v {
                        continue 'shift;
                    }
                }
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Every dissection (or triangulation) whose Caldero-Chapoton grid matches
/// the fixture, in enumeration order.
pub fn search_fixture(
    fixture: &FriezeFixture,
    triangulations_only: bool,
) -> Result<Vec<Dissection>> {
    fixture.check_shape()?;
    let n = PolygonSize::new(fixture.polygon())?.require_category()?;
    let candidates = if triangulations_only {
        enumerate_triangulations(n)
    } else {
        enumerate_dissections(n)
    };
    let hits: Vec<Option<Dissection>> = candidates
        .into_par_iter()
        .map(|d| {
            let grid = frieze_grid(&d, Method::Cc);
            match_fixture(&grid, fixture)
                .expect("shape already checked")
                .then_some(d)
        })
        .collect();
    Ok(hits.into_iter().flatten().collect())
}
