use std::f64::consts::TAU;
use std::fmt;

use serde::Serialize;

use crate::exactlin::{CanonicalBlock, CanonicalBlocks};

/// Endpoint closure type of a bar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BarKind {
    Closed,
    ClosedOpen,
    OpenClosed,
    Open,
}

impl BarKind {
    pub fn from_flags(left_closed: bool, right_closed: bool) -> BarKind {
        match (left_closed, right_closed) {
            (true, true) => BarKind::Closed,
            (true, false) => BarKind::ClosedOpen,
            (false, true) => BarKind::OpenClosed,
            (false, false) => BarKind::Open,
        }
    }

    pub fn left_closed(self) -> bool {
        matches!(self, BarKind::Closed | BarKind::ClosedOpen)
    }

    pub fn right_closed(self) -> bool {
        matches!(self, BarKind::Closed | BarKind::OpenClosed)
    }

    /// Vertex support in the covering zigzag of the bar between critical
    /// indices `i ≤ c`.
    pub fn support(self, i: i64, c: i64) -> (i64, i64) {
        let p = if self.left_closed() { 2 * i } else { 2 * i + 1 };
        let q = if self.right_closed() { 2 * c } else { 2 * c - 1 };
        (p, q)
    }

    /// Inverse of [`BarKind::support`].
    pub fn from_support(p: i64, q: i64) -> (BarKind, i64, i64) {
        let left_closed = p.rem_euclid(2) == 0;
        let right_closed = q.rem_euclid(2) == 0;
        let i = if left_closed { p / 2 } else { (p - 1).div_euclid(2) };
        let c = if right_closed { q / 2 } else { (q + 1).div_euclid(2) };
        (BarKind::from_flags(left_closed, right_closed), i, c)
    }
}

/// A bar between two critical values. For circle maps the left endpoint is
/// the angle `θ_i`, `1 ≤ i ≤ m`, and the right endpoint is `θ_j + 2π·wraps`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BarCode {
    pub degree: usize,
    pub kind: BarKind,
    /// Critical index of the left endpoint.
    pub left_index: i64,
    /// Critical index of the right endpoint, lifted to the cover.
    pub right_index: i64,
    pub left: f64,
    pub right: f64,
    pub wraps: usize,
    pub multiplicity: usize,
}

impl BarCode {
    pub fn left_closed(&self) -> bool {
        self.kind.left_closed()
    }

    pub fn right_closed(&self) -> bool {
        self.kind.right_closed()
    }

    /// Exact identity of the bar, ignoring multiplicity and float endpoints.
    pub fn key(&self) -> (usize, BarKind, i64, i64) {
        (self.degree, self.kind, self.left_index, self.right_index)
    }
}

impl fmt::Display for BarCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = (if self.left_closed() { '[' } else { '(' }, if self.right_closed() { ']' } else { ')' });
        write!(f, "{l}{:.6}, {:.6}{r}", self.left, self.right)?;
        if self.multiplicity > 1 {
            write!(f, " x{}", self.multiplicity)?;
        }
        Ok(())
    }
}

/// Critical value with lifted index `c` for angles `θ_1 < ⋯ < θ_m`:
/// `θ_j + 2πk` where `c = j + mk`, `1 ≤ j ≤ m`.
pub fn lifted_angle(angles: &[f64], c: i64) -> f64 {
    let m = angles.len() as i64;
    let j = (c - 1).rem_euclid(m);
    let k = (c - 1).div_euclid(m);
    angles[j as usize] + TAU * k as f64
}

/// A Jordan block with its multiplicity in one homological degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JordanBlock {
    pub degree: usize,
    pub block: CanonicalBlock,
    pub multiplicity: usize,
}

impl JordanBlock {
    pub fn power(&self) -> usize {
        self.block.power
    }

    /// True when the block's single eigenvalue is one.
    pub fn has_eigenvalue_one(&self) -> bool {
        self.block.eigenvalue().is_some_and(|u| u.is_one())
    }
}

/// Bars and Jordan blocks of one representation.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub degree: usize,
    pub bars: Vec<BarCode>,
    pub jordans: Vec<JordanBlock>,
}

impl Decomposition {
    pub fn jordan_blocks(&self) -> CanonicalBlocks {
        let mut all = Vec::new();
        for j in &self.jordans {
            for _ in 0..j.multiplicity {
                all.push(j.block.clone());
            }
        }
        CanonicalBlocks::new(all)
    }

    pub fn count(&self, kind: BarKind) -> usize {
        self.bars.iter().filter(|b| b.kind == kind).map(|b| b.multiplicity).sum()
    }

    /// Number of Jordan blocks with eigenvalue one, counted once per block.
    pub fn jordan_ones(&self) -> usize {
        self.jordans.iter().filter(|j| j.has_eigenvalue_one()).map(|j| j.multiplicity).sum()
    }

    /// Number of Jordan blocks whose eigenvalue is `u`.
    pub fn jordan_count_at(&self, u: &crate::exactlin::Scalar) -> usize {
        self.jordans
            .iter()
            .filter(|j| j.block.eigenvalue().as_ref() == Some(u))
            .map(|j| j.multiplicity)
            .sum()
    }
}

pub(crate) fn group_jordans(degree: usize, blocks: &CanonicalBlocks) -> Vec<JordanBlock> {
    blocks
        .multiset()
        .into_iter()
        .map(|(block, multiplicity)| JordanBlock { degree, block, multiplicity })
        .collect()
}
