//! Elementary I- and S-bundles over an ordered n-simplex.
//!
//! A bundle is stored by its maximal cells. Each maximal cell has exactly one
//! vertex over every base vertex except its *apex*, over which it has two
//! vertices at consecutive fiber levels. Reading a cell from its lower to its
//! upper apex vertex moves from one section (a choice of one level per base
//! vertex) to the next, so the cells of a valid bundle form a chain of
//! sections: a path from the all-zero section to the top section for an
//! interval fiber, a single loop for a circle fiber.
//!
//! [`bundle_from_word`] builds the bundle of a word as the Čech nerve of its
//! interval covering; [`word_from_bundle`] reads the word back off the chain.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{least_rotation, CyclicWord, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("invalid bundle: {0}")]
    Invalid(String),
    #[error("not an n-word: {0}")]
    NotAnNWord(#[from] WordError),
    #[error("gluing leaves no vertex over base vertex {0}")]
    DegenerateFiber(usize),
    #[error("expected {expected} fiber, found {found}")]
    WrongFiber { expected: FiberKind, found: FiberKind },
    #[error("face index {index} out of range for a bundle over a {base_dim}-simplex")]
    FaceOutOfRange { index: usize, base_dim: usize },
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, BundleError> {
    Err(BundleError::Invalid(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FiberKind {
    Interval,
    Circle,
}

impl fmt::Display for FiberKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiberKind::Interval => "interval",
            FiberKind::Circle => "circle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledVertex {
    pub base: usize,
    pub level: usize,
}

impl LabeledVertex {
    pub fn new(base: usize, level: usize) -> Self {
        Self { base, level }
    }
}

/// A maximal cell of an elementary bundle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    bottom: Vec<usize>,
    apex: usize,
    upper: usize,
}

impl Cell {
    pub fn new(bottom: Vec<usize>, apex: usize, upper: usize) -> Self {
        Self { bottom, apex, upper }
    }

    /// The base vertex with two vertices in this cell.
    pub fn apex(&self) -> usize {
        self.apex
    }

    /// Levels of the lower section.
    pub fn bottom(&self) -> &[usize] {
        &self.bottom
    }

    /// Levels of the upper section.
    pub fn top(&self) -> Vec<usize> {
        let mut t = self.bottom.clone();
        t[self.apex] = self.upper;
        t
    }

    /// All `n + 2` vertices; over the apex the lower vertex comes first.
    pub fn vertices(&self) -> Vec<LabeledVertex> {
        let mut out = Vec::with_capacity(self.bottom.len() + 1);
        for (base, &level) in self.bottom.iter().enumerate() {
            out.push(LabeledVertex::new(base, level));
            if base == self.apex {
                out.push(LabeledVertex::new(base, self.upper));
            }
        }
        out
    }

    /// Recovers a cell from its vertex list.
    ///
    /// Over the apex the two vertices must sit at consecutive levels. For a
    /// circle fiber with at most two vertices both orders are consecutive, and
    /// the listed order (lower first) decides.
    pub fn from_vertices(
        kind: FiberKind,
        fiber_sizes: &[usize],
        vertices: &[LabeledVertex],
    ) -> Result<Self, BundleError> {
        let n1 = fiber_sizes.len();
        if vertices.len() != n1 + 1 {
            return invalid(format!("cell has {} vertices, expected {}", vertices.len(), n1 + 1));
        }
        let mut over: Vec<Vec<usize>> = vec![Vec::new(); n1];
        for v in vertices {
            if v.base >= n1 {
                return invalid(format!("vertex over base {} outside the base simplex", v.base));
            }
            if v.level >= fiber_sizes[v.base] {
                return invalid(format!(
                    "level {} exceeds fiber size {} over base {}",
                    v.level, fiber_sizes[v.base], v.base
                ));
            }
            over[v.base].push(v.level);
        }
        let doubled: Vec<usize> = (0..n1).filter(|&b| over[b].len() == 2).collect();
        if doubled.len() != 1 || over.iter().any(|l| l.is_empty() || l.len() > 2) {
            return invalid("cell must double exactly one base vertex and cover every other once");
        }
        let apex = doubled[0];
        let (x, y) = (over[apex][0], over[apex][1]);
        let m = fiber_sizes[apex];
        let lower = match kind {
            FiberKind::Interval if y == x + 1 => x,
            FiberKind::Interval if x == y + 1 => y,
            FiberKind::Circle if (x + 1) % m == y => x,
            FiberKind::Circle if (y + 1) % m == x => y,
            _ => return invalid(format!("vertices over apex {apex} at non-consecutive levels {x}, {y}")),
        };
        let upper = if lower == x { y } else { x };
        let bottom = over.iter().enumerate().map(|(b, l)| if b == apex { lower } else { l[0] }).collect();
        Ok(Cell { bottom, apex, upper })
    }
}

/// An elementary bundle over an ordered simplex, stored by maximal cells.
///
/// Interval cells are kept sorted; their shelling order is recovered from
/// the sections. Circle cells are kept in fiber order, rotated so the
/// sequence is least: with small fibers a section can repeat along the loop
/// and the vertex labels alone no longer fix the order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementaryBundle {
    kind: FiberKind,
    fiber_sizes: Vec<usize>,
    cells: Vec<Cell>,
}

impl ElementaryBundle {
    /// Validates the structure and normalizes the cell order.
    ///
    /// Circle cells are read in the given order when consecutive cells share
    /// sections; otherwise the loop is rebuilt from the sections, which
    /// requires no two cells to start from the same section.
    pub fn new(kind: FiberKind, fiber_sizes: Vec<usize>, cells: Vec<Cell>) -> Result<Self, BundleError> {
        check_cells(kind, &fiber_sizes, &cells)?;
        let mut b = Self { kind, fiber_sizes, cells };
        match kind {
            FiberKind::Interval => {
                b.cells.sort();
                b.shelling()?;
            }
            FiberKind::Circle => {
                let mut cells = b.circle_loop()?;
                let k = least_rotation(&cells);
                cells.rotate_left(k);
                b.cells = cells;
            }
        }
        Ok(b)
    }

    pub fn kind(&self) -> FiberKind {
        self.kind
    }

    pub fn base_dim(&self) -> usize {
        self.fiber_sizes.len() - 1
    }

    pub fn fiber_sizes(&self) -> &[usize] {
        &self.fiber_sizes
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Base vertices whose fiber is too small for the total space to be a
    /// simplicial complex (fewer than 4 vertices on an interval fiber,
    /// fewer than 3 on a circle). Such bundles are still valid cell complexes.
    pub fn small_fibers(&self) -> Vec<usize> {
        let min = match self.kind {
            FiberKind::Interval => 4,
            FiberKind::Circle => 3,
        };
        (0..self.fiber_sizes.len()).filter(|&b| self.fiber_sizes[b] < min).collect()
    }

    fn expect_kind(&self, expected: FiberKind) -> Result<(), BundleError> {
        if self.kind != expected {
            return Err(BundleError::WrongFiber { expected, found: self.kind });
        }
        Ok(())
    }

    /// Interval cells from the bottom cell (all levels 0) up to the top section.
    fn shelling(&self) -> Result<Vec<&Cell>, BundleError> {
        let sizes = &self.fiber_sizes;
        let mut by_bottom: HashMap<&[usize], &Cell> = HashMap::with_capacity(self.cells.len());
        for c in &self.cells {
            if by_bottom.insert(&c.bottom, c).is_some() {
                return invalid("two cells start from the same section");
            }
        }
        let mut order = Vec::with_capacity(self.cells.len());
        let mut section = vec![0; sizes.len()];
        while let Some(&c) = by_bottom.get(section.as_slice()) {
            order.push(c);
            section = c.top();
        }
        if order.is_empty() {
            return invalid("no bottom cell");
        }
        if section.iter().zip(sizes).any(|(&l, &m)| l + 1 != m) {
            return invalid("shelling stops before the top section");
        }
        if order.len() != self.cells.len() {
            return invalid("cells outside the shelling path");
        }
        if let Some(b) = sizes.iter().position(|&m| m < 2) {
            return invalid(format!("base vertex {b} never occurs in the shelling"));
        }
        Ok(order)
    }

    fn circle_loop(&self) -> Result<Vec<Cell>, BundleError> {
        let cells = &self.cells;
        let chained = |seq: &[Cell]| (0..seq.len()).all(|k| seq[k].top() == seq[(k + 1) % seq.len()].bottom);
        let ordered = if chained(cells) {
            cells.clone()
        } else {
            let mut by_bottom: HashMap<&[usize], usize> = HashMap::with_capacity(cells.len());
            for (k, c) in cells.iter().enumerate() {
                if by_bottom.insert(&c.bottom, k).is_some() {
                    return invalid(
                        "cells are not in fiber order and two of them start from the same section",
                    );
                }
            }
            let mut order = Vec::with_capacity(cells.len());
            let mut visited = vec![false; cells.len()];
            let mut k = 0;
            while !visited[k] {
                visited[k] = true;
                order.push(cells[k].clone());
                match by_bottom.get(cells[k].top().as_slice()) {
                    Some(&next) => k = next,
                    None => return invalid("section chain is not closed"),
                }
            }
            if k != 0 || order.len() != cells.len() {
                return invalid("cells do not form a single loop");
            }
            order
        };
        let mut turns = vec![0usize; self.fiber_sizes.len()];
        for c in &ordered {
            turns[c.apex] += 1;
        }
        if let Some(b) = (0..turns.len()).find(|&b| turns[b] != self.fiber_sizes[b]) {
            return invalid(format!(
                "fiber over base vertex {b} is traversed {} times for {} vertices",
                turns[b], self.fiber_sizes[b]
            ));
        }
        Ok(ordered)
    }

    /// Cells in chain order: the shelling for an interval fiber, the loop
    /// for a circle.
    pub fn ordered_cells(&self) -> Vec<&Cell> {
        match self.kind {
            FiberKind::Interval => self.shelling().expect("validated on construction"),
            FiberKind::Circle => self.cells.iter().collect(),
        }
    }

    fn apex_word(&self) -> Word {
        let letters = self.ordered_cells().iter().map(|c| c.apex as u8).collect();
        Word::new(self.fiber_sizes.len(), letters).expect("apex ranks lie in the base")
    }

    pub fn to_json(&self) -> BundleJson {
        BundleJson {
            base_dim: self.base_dim(),
            fiber: self.kind,
            fiber_sizes: self.fiber_sizes.clone(),
            cells: self
                .cells
                .iter()
                .map(|c| c.vertices().iter().map(|v| [v.base, v.level]).collect())
                .collect(),
        }
    }
}

fn check_cells(kind: FiberKind, sizes: &[usize], cells: &[Cell]) -> Result<(), BundleError> {
    let n1 = sizes.len();
    if n1 == 0 {
        return invalid("empty base simplex");
    }
    if let Some(b) = sizes.iter().position(|&m| m == 0) {
        return invalid(format!("empty fiber over base vertex {b}"));
    }
    if cells.is_empty() {
        return invalid("no cells");
    }
    for (k, c) in cells.iter().enumerate() {
        if c.bottom.len() != n1 || c.apex >= n1 {
            return invalid(format!("cell {k} does not lie over the base simplex"));
        }
        if c.bottom.iter().zip(sizes).any(|(&l, &m)| l >= m) || c.upper >= sizes[c.apex] {
            return invalid(format!("cell {k} has a level beyond its fiber"));
        }
        let consecutive = match kind {
            FiberKind::Interval => c.upper == c.bottom[c.apex] + 1,
            FiberKind::Circle => c.upper == (c.bottom[c.apex] + 1) % sizes[c.apex],
        };
        if !consecutive {
            return invalid(format!("cell {k} joins non-consecutive levels over its apex"));
        }
    }
    Ok(())
}

/// Serialized bundle.
///
/// ```json
/// {"base_dim": 1, "fiber": "interval", "fiber_sizes": [2, 2],
///  "cells": [[[0, 0], [0, 1], [1, 0]], [[0, 1], [1, 0], [1, 1]]]}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleJson {
    pub base_dim: usize,
    pub fiber: FiberKind,
    pub fiber_sizes: Vec<usize>,
    pub cells: Vec<Vec<[usize; 2]>>,
}

impl BundleJson {
    pub fn to_bundle(&self) -> Result<ElementaryBundle, BundleError> {
        if self.fiber_sizes.len() != self.base_dim + 1 {
            return invalid(format!(
                "{} fiber sizes for a base of dimension {}",
                self.fiber_sizes.len(),
                self.base_dim
            ));
        }
        let cells = self
            .cells
            .iter()
            .map(|vs| {
                let vs: Vec<_> = vs.iter().map(|&[b, l]| LabeledVertex::new(b, l)).collect();
                Cell::from_vertices(self.fiber, &self.fiber_sizes, &vs)
            })
            .collect::<Result<Vec<_>, _>>()?;
        ElementaryBundle::new(self.fiber, self.fiber_sizes.clone(), cells)
    }
}

/// Interval bundle of an n-word: the Čech nerve of its covering by
/// per-character intervals.
///
/// Over character `i` with entrances at positions `p1 < .. < pk` the
/// intervals are `[start, p1]`, `[p1, p2]`, .., `[pk, end]`, labeled by
/// levels `0..=k`. Each position of the word spans one maximal cell.
pub fn bundle_from_word(w: &Word) -> Result<ElementaryBundle, BundleError> {
    w.validate_n_word()?;
    let n1 = w.alphabet_size();
    let last = w.len() - 1;
    let mut entrances: Vec<Vec<usize>> = vec![Vec::new(); n1];
    for (p, &r) in w.letters().iter().enumerate() {
        entrances[r as usize].push(p);
    }
    // (vertex, first position, last position)
    let mut intervals = Vec::new();
    for (i, ps) in entrances.iter().enumerate() {
        let bounds = std::iter::once(0).chain(ps.iter().copied()).chain(std::iter::once(last));
        let ends: Vec<usize> = bounds.collect();
        for (level, pair) in ends.windows(2).enumerate() {
            intervals.push((LabeledVertex::new(i, level), pair[0], pair[1]));
        }
    }
    let fiber_sizes: Vec<usize> = entrances.iter().map(|ps| ps.len() + 1).collect();
    let cells = (0..w.len())
        .map(|p| {
            let members: Vec<LabeledVertex> =
                intervals.iter().filter(|&&(_, s, e)| s <= p && p <= e).map(|&(v, _, _)| v).collect();
            Cell::from_vertices(FiberKind::Interval, &fiber_sizes, &members)
        })
        .collect::<Result<Vec<_>, _>>()?;
    ElementaryBundle::new(FiberKind::Interval, fiber_sizes, cells)
}

/// Shelling word of an interval bundle.
pub fn word_from_bundle(b: &ElementaryBundle) -> Result<Word, BundleError> {
    b.expect_kind(FiberKind::Interval)?;
    Ok(b.apex_word())
}

/// Cyclic word of a circle bundle, read along the fiber orientation.
pub fn word_from_s_bundle(b: &ElementaryBundle) -> Result<CyclicWord, BundleError> {
    b.expect_kind(FiberKind::Circle)?;
    Ok(b.apex_word().canonicalize())
}

/// Identifies the top section of an interval bundle with its bottom section.
pub fn glue(b: &ElementaryBundle) -> Result<ElementaryBundle, BundleError> {
    b.expect_kind(FiberKind::Interval)?;
    let sizes: Vec<usize> = b.fiber_sizes.iter().map(|m| m - 1).collect();
    if let Some(base) = sizes.iter().position(|&m| m == 0) {
        return Err(BundleError::DegenerateFiber(base));
    }
    let cells = b
        .ordered_cells()
        .into_iter()
        .map(|c| {
            let bottom = c.bottom.iter().zip(&sizes).map(|(&l, &m)| l % m).collect();
            Cell::new(bottom, c.apex, c.upper % sizes[c.apex])
        })
        .collect();
    ElementaryBundle::new(FiberKind::Circle, sizes, cells)
}

/// Glues the first and last sections and cuts along the second one.
///
/// The first cell of the shelling moves to the top; levels over its apex
/// drop by one.
pub fn cyclic_shift_bundle(b: &ElementaryBundle) -> Result<ElementaryBundle, BundleError> {
    b.expect_kind(FiberKind::Interval)?;
    let order = b.ordered_cells();
    let apex = order[0].apex;
    let mut cells: Vec<Cell> = order[1..]
        .iter()
        .map(|c| {
            let mut c = (*c).clone();
            c.bottom[apex] -= 1;
            if c.apex == apex {
                c.upper -= 1;
            }
            c
        })
        .collect();
    let mut bottom: Vec<usize> = b.fiber_sizes.iter().map(|m| m - 1).collect();
    bottom[apex] -= 1;
    cells.push(Cell::new(bottom, apex, b.fiber_sizes[apex] - 1));
    ElementaryBundle::new(FiberKind::Interval, b.fiber_sizes.clone(), cells)
}

/// The bundle induced over the `i`-th face of the base simplex.
pub fn restrict(b: &ElementaryBundle, i: usize) -> Result<ElementaryBundle, BundleError> {
    let n = b.base_dim();
    if n == 0 || i > n {
        return Err(BundleError::FaceOutOfRange { index: i, base_dim: n });
    }
    let mut sizes = b.fiber_sizes.clone();
    sizes.remove(i);
    let cells = b
        .cells
        .iter()
        .filter(|c| c.apex != i)
        .map(|c| {
            let mut bottom = c.bottom.clone();
            bottom.remove(i);
            let apex = if c.apex > i { c.apex - 1 } else { c.apex };
            Cell::new(bottom, apex, c.upper)
        })
        .collect();
    ElementaryBundle::new(b.kind, sizes, cells)
}

/// Circle bundle of a cyclic word.
pub fn bundle_from_cyclic_word(cw: &CyclicWord) -> Result<ElementaryBundle, BundleError> {
    glue(&bundle_from_word(cw.rep())?)
}
