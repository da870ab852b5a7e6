//! GF(2) linear algebra on bitmask-encoded vectors.
//!
//! Everything downstream (Cayley graph adjacency, Heuberger matrices,
//! bipartiteness certificates) reduces to XOR arithmetic on vectors of
//! dimension at most [`MAX_WIDTH`], so a vector is a single machine word.
//!
//! ```
//! use cubelike::gf2::{BitVec, Gf2Matrix};
//!
//! // The columns {01, 10, 11} satisfy one relation: all three XOR to zero.
//! let b = Gf2Matrix::from_columns(2, vec![
//!     BitVec::new(0b01, 2).unwrap(),
//!     BitVec::new(0b10, 2).unwrap(),
//!     BitVec::new(0b11, 2).unwrap(),
//! ]).unwrap();
//! let kernel = b.kernel_basis();
//! assert_eq!(kernel.len(), 1);
//! assert_eq!(kernel[0].bits(), 0b111);
//! // No functional hits 1 on all three columns, so the graph they generate
//! // is nonbipartite.
//! assert!(b.solve_all_ones().is_none());
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on vector width. Keeps every bitmask in one `u64`.
/// Graph dimensions are capped separately (and lower) in the cayley module;
/// relation-space vectors live in up to `|S|` coordinates and need the
/// full word.
pub const MAX_WIDTH: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("width {0} exceeds the cap of {MAX_WIDTH} coordinates")]
    WidthTooLarge(usize),
    #[error("bitmask {mask:#b} has bits at or above width {width}")]
    MaskOutOfRange { mask: u64, width: usize },
    #[error("width mismatch: expected {expected}, got {got}")]
    WidthMismatch { expected: usize, got: usize },
}

/// An element of Z_2^n, stored little-endian: bit `j` (value `2^j`) is
/// coordinate `j + 1`. Addition is XOR, so every element is its own inverse.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BitVec {
    bits: u64,
    width: usize,
}

impl BitVec {
    pub fn new(bits: u64, width: usize) -> Result<Self, Gf2Error> {
        if width > MAX_WIDTH {
            return Err(Gf2Error::WidthTooLarge(width));
        }
        if width < 64 && bits >> width != 0 {
            return Err(Gf2Error::MaskOutOfRange { mask: bits, width });
        }
        Ok(Self { bits, width })
    }

    pub fn zero(width: usize) -> Self {
        Self::new(0, width).expect("zero vector is always in range")
    }

    /// The standard basis vector e_j, 1-based: `unit(1, n)` has bit 0 set.
    pub fn unit(j: usize, width: usize) -> Self {
        assert!(j >= 1 && j <= width, "unit index {j} out of range 1..={width}");
        Self::new(1 << (j - 1), width).expect("unit vector in range")
    }

    /// The all-ones vector w_n.
    pub fn all_ones(width: usize) -> Self {
        let bits = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        Self::new(bits, width).expect("all-ones vector in range")
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Coordinate j, 1-based.
    pub fn get(&self, j: usize) -> bool {
        assert!(j >= 1 && j <= self.width);
        self.bits >> (j - 1) & 1 == 1
    }

    pub fn popcount(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.width, other.width, "XOR of mismatched widths");
        Self {
            bits: self.bits ^ other.bits,
            width: self.width,
        }
    }

    /// Dot product over GF(2): parity of the AND of the two masks.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.width, other.width, "dot of mismatched widths");
        (self.bits & other.bits).count_ones() % 2 == 1
    }

    /// 1-based indices of the set coordinates, ascending.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.width).filter(|&j| self.get(j)).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({:0width$b})", self.bits, width = self.width.max(1))
    }
}

/// A matrix over GF(2) stored column-major; each column is a `BitVec` of
/// width equal to the row count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    columns: Vec<BitVec>,
}

impl Gf2Matrix {
    pub fn from_columns(rows: usize, columns: Vec<BitVec>) -> Result<Self, Gf2Error> {
        if rows > MAX_WIDTH {
            return Err(Gf2Error::WidthTooLarge(rows));
        }
        for c in &columns {
            if c.width() != rows {
                return Err(Gf2Error::WidthMismatch {
                    expected: rows,
                    got: c.width(),
                });
            }
        }
        Ok(Self { rows, columns })
    }

    pub fn identity(n: usize) -> Self {
        let columns = (1..=n).map(|j| BitVec::unit(j, n)).collect();
        Self { rows: n, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[BitVec] {
        &self.columns
    }

    /// Applies the matrix to `v` (width = cols): XOR of the columns selected
    /// by the set bits of `v`.
    pub fn apply(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.width(), self.cols(), "apply: vector width must equal cols");
        let mut acc = BitVec::zero(self.rows);
        for (i, col) in self.columns.iter().enumerate() {
            if v.get(i + 1) {
                acc = acc.xor(col);
            }
        }
        acc
    }

    /// Row `i` (1-based) as a bitmask over the columns.
    fn row_mask(&self, i: usize) -> u64 {
        let mut mask = 0u64;
        for (j, col) in self.columns.iter().enumerate() {
            if col.get(i) {
                mask |= 1 << j;
            }
        }
        mask
    }

    fn row_echelon(&self) -> (Vec<u64>, Vec<usize>) {
        let cols = self.cols();
        let mut rows: Vec<u64> = (1..=self.rows).map(|i| self.row_mask(i)).collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for j in 0..cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> j & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row >> j & 1 == 1 {
                    *row ^= pivot_row;
                }
            }
            pivots.push(j);
            rank += 1;
        }
        rows.truncate(rank);
        (rows, pivots)
    }

    /// GF(2) rank.
    pub fn rank(&self) -> usize {
        self.row_echelon().1.len()
    }

    /// Canonical basis of the null space `{v : B v = 0}`.
    ///
    /// One basis vector per free column, in ascending free-column order; each
    /// has a 1 in its free column and the pivot-column back-substitution from
    /// the reduced echelon form. The output is deterministic and the vectors
    /// are GF(2)-linearly independent.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let cols = self.cols();
        let (rows, pivots) = self.row_echelon();
        let mut basis = Vec::new();
        for f in 0..cols {
            if pivots.contains(&f) {
                continue;
            }
            let mut mask = 1u64 << f;
            for (r, &p) in pivots.iter().enumerate() {
                if rows[r] >> f & 1 == 1 {
                    mask |= 1 << p;
                }
            }
            basis.push(BitVec::new(mask, cols).expect("kernel vector in range"));
        }
        basis
    }

    /// Finds `x` with `x . c = 1` for every column `c`, if one exists.
    ///
    /// This is the affine system `B^T x = (1,...,1)`; solvability is the
    /// algebraic form of bipartiteness for the Cayley graph with connection
    /// set equal to the columns.
    pub fn solve_all_ones(&self) -> Option<BitVec> {
        // Augmented rows: (column mask, rhs bit). Eliminate over the n
        // unknowns, bit positions 0..rows.
        let mut system: Vec<(u64, bool)> =
            self.columns.iter().map(|c| (c.bits(), true)).collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row index, bit)
        let mut rank = 0;
        for j in 0..self.rows {
            let Some(p) = (rank..system.len()).find(|&r| system[r].0 >> j & 1 == 1) else {
                continue;
            };
            system.swap(rank, p);
            let (pm, pb) = system[rank];
            for (r, entry) in system.iter_mut().enumerate() {
                if r != rank && entry.0 >> j & 1 == 1 {
                    entry.0 ^= pm;
                    entry.1 ^= pb;
                }
            }
            pivots.push((rank, j));
            rank += 1;
        }
        // Inconsistent iff a zero row has rhs 1.
        if system[rank..].iter().any(|&(m, b)| m == 0 && b) {
            return None;
        }
        let mut x = 0u64;
        for &(r, j) in &pivots {
            if system[r].1 {
                x |= 1 << j;
            }
        }
        Some(BitVec::new(x, self.rows).expect("solution in range"))
    }
}

/// All `2^rank` elements of the GF(2) span of `generators` inside Z_2^width,
/// ascending by bitmask value. The empty generating set spans `{0}`.
pub fn span(width: usize, generators: &[BitVec]) -> Vec<BitVec> {
    let mut elements = vec![BitVec::zero(width)];
    for g in generators {
        assert_eq!(g.width(), width, "span: mixed widths");
        if elements.contains(g) {
            continue;
        }
        let shifted: Vec<BitVec> = elements.iter().map(|e| e.xor(g)).collect();
        elements.extend(shifted);
    }
    elements.sort();
    elements
}
