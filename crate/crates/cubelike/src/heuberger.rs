//! Heuberger matrices for cubelike graphs.
//!
//! For `X = Cay(Z_2^n, S)` with `|S| = m`, every element of S satisfies
//! `2x = 0`, so X carries a matrix of the block form `(A | 2I_m)`: the
//! columns of A generate the GF(2) relation space of S under `e_i -> s_i`,
//! and the `2I_m` block records the 2-torsion. The standardized abelian
//! Cayley graph (SACG) of such a matrix is the Cayley graph of `Z_2^m`
//! modulo the GF(2) column span of A, with generators the images of
//! `e_1, ..., e_m`. This module builds these matrices, reduces them to 0/1
//! entries, materializes the SACG, verifies the canonical isomorphism onto
//! the identity component of X, and locates the odd-support columns that
//! certify nonbipartiteness.
//!
//! ```
//! use cubelike::cayley::ConnectionSet;
//! use cubelike::heuberger::{find_odd_column, heuberger_matrix, verify_qd_iso};
//!
//! // K_4 = Cay(Z_2^2, {01, 10, 11}): the single relation is 01+10+11 = 0.
//! let set = ConnectionSet::parse(2, "1,2,3").unwrap();
//! let m = heuberger_matrix(&set).unwrap();
//! assert_eq!(m.a_columns, vec![vec![1, 1, 1]]);
//! // Its support has odd size 3, certifying nonbipartiteness ...
//! assert_eq!(find_odd_column(&m).unwrap(), Some((0, vec![1, 2, 3], 3)));
//! // ... and the SACG of (w_3 | 2I_3) really is Q^d_2 = K_4.
//! assert!(verify_qd_iso(3).unwrap());
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::{ConnectionSet, MAX_DIM};
use crate::gf2::{self, BitVec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HeubergerError {
    #[error("connection set is empty")]
    EmptySet,
    #[error("matrix entry {0} is not in {{0,1}}; reduce mod 2 first")]
    NotReduced(i64),
    #[error("matrix lacks the 2I block; SACG construction is only defined with it")]
    MissingTwoIdentity,
    #[error("column length {got} does not match row count {expected}")]
    ColumnLength { expected: usize, got: usize },
    #[error("generator count {0} exceeds the cap of {MAX_DIM} for SACG construction")]
    TooManyGenerators(usize),
    #[error("z must be odd and at least 3, got {0}")]
    BadZ(usize),
}

/// The block matrix `(A | 2I_m)` attached to a connection set of size m.
/// Only A is stored; the `2I_m` block is implied by the marker.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeubergerMatrix {
    pub m: usize,
    pub a_columns: Vec<Vec<i64>>,
    pub two_identity: bool,
}

impl HeubergerMatrix {
    pub fn new(m: usize, a_columns: Vec<Vec<i64>>) -> Result<Self, HeubergerError> {
        for c in &a_columns {
            if c.len() != m {
                return Err(HeubergerError::ColumnLength {
                    expected: m,
                    got: c.len(),
                });
            }
        }
        Ok(Self {
            m,
            a_columns,
            two_identity: true,
        })
    }

    pub fn is_reduced(&self) -> bool {
        self.a_columns
            .iter()
            .all(|c| c.iter().all(|&e| e == 0 || e == 1))
    }

    /// Column `j` (0-based) as a GF(2) vector of width m. Requires 0/1 entries.
    pub fn column_bitvec(&self, j: usize) -> Result<BitVec, HeubergerError> {
        let mut mask = 0u64;
        for (i, &e) in self.a_columns[j].iter().enumerate() {
            match e {
                0 => {}
                1 => mask |= 1 << i,
                other => return Err(HeubergerError::NotReduced(other)),
            }
        }
        Ok(BitVec::new(mask, self.m).expect("column in range"))
    }

    fn column_bitvecs(&self) -> Result<Vec<BitVec>, HeubergerError> {
        (0..self.a_columns.len()).map(|j| self.column_bitvec(j)).collect()
    }
}

/// Builds `(A | 2I_m)` for `Cay(Z_2^n, S)`: the columns of A are the
/// canonical GF(2) kernel basis of the matrix whose columns are the elements
/// of S, sorted ascending by support bitmask.
pub fn heuberger_matrix(set: &ConnectionSet) -> Result<HeubergerMatrix, HeubergerError> {
    if set.is_empty() {
        return Err(HeubergerError::EmptySet);
    }
    let m = set.len();
    let mut kernel = set.as_matrix().kernel_basis();
    kernel.sort_by_key(BitVec::bits);
    let a_columns = kernel
        .iter()
        .map(|v| (1..=m).map(|i| i64::from(v.get(i))).collect())
        .collect();
    HeubergerMatrix::new(m, a_columns)
}

/// Reduces every entry mod 2 and drops the resulting zero columns (they are
/// redundant given the 2I block). The SACG is unchanged up to isomorphism.
pub fn reduce_columns_mod2(matrix: &HeubergerMatrix) -> HeubergerMatrix {
    let a_columns = matrix
        .a_columns
        .iter()
        .map(|c| c.iter().map(|e| e.rem_euclid(2)).collect::<Vec<i64>>())
        .filter(|c| c.iter().any(|&e| e != 0))
        .collect();
    HeubergerMatrix {
        m: matrix.m,
        a_columns,
        two_identity: matrix.two_identity,
    }
}

/// The SACG of `(A | 2I_m)`: vertices are the cosets of Z_2^m modulo the
/// GF(2) span of the columns of A, named by their minimum-bitmask
/// representative; cosets are adjacent iff they differ by some `e_i`.
#[derive(Clone, Debug)]
pub struct SacgGraph {
    m: usize,
    span_a: Vec<BitVec>,
    reps: Vec<BitVec>,
}

impl SacgGraph {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        self.reps.len()
    }

    pub fn vertices(&self) -> &[BitVec] {
        &self.reps
    }

    /// Canonical representative (minimum bitmask) of the coset of `x`.
    pub fn rep_of(&self, x: &BitVec) -> BitVec {
        self.span_a
            .iter()
            .map(|s| x.xor(s))
            .min()
            .expect("span is nonempty")
    }

    /// Coset neighbors with generator multiplicity: `rep(u + e_i)` for each i.
    pub fn neighbors(&self, u: &BitVec) -> Vec<BitVec> {
        (1..=self.m)
            .map(|i| self.rep_of(&u.xor(&BitVec::unit(i, self.m))))
            .collect()
    }

    pub fn adjacent(&self, u: &BitVec, v: &BitVec) -> bool {
        self.neighbors(u).contains(v)
    }
}

pub fn sacg_build(matrix: &HeubergerMatrix) -> Result<SacgGraph, HeubergerError> {
    if !matrix.two_identity {
        return Err(HeubergerError::MissingTwoIdentity);
    }
    if matrix.m > MAX_DIM {
        return Err(HeubergerError::TooManyGenerators(matrix.m));
    }
    let span_a = gf2::span(matrix.m, &matrix.column_bitvecs()?);
    let mut reps = Vec::new();
    for x in 0..1u64 << matrix.m {
        let x = BitVec::new(x, matrix.m).expect("vertex in range");
        if span_a.iter().all(|s| x <= x.xor(s)) {
            reps.push(x);
        }
    }
    Ok(SacgGraph {
        m: matrix.m,
        span_a,
        reps,
    })
}

/// Checks that `e_i -> s_i` induces a well-defined bijective edge-preserving
/// map from the SACG of `matrix` onto the identity component of
/// `Cay(Z_2^n, S)`.
pub fn verify_canonical_iso(
    matrix: &HeubergerMatrix,
    set: &ConnectionSet,
) -> Result<bool, HeubergerError> {
    if matrix.m != set.len() {
        return Ok(false);
    }
    // Every column of A must be a relation among the elements of S,
    // otherwise the map is ill-defined on cosets.
    let s_matrix = set.as_matrix();
    for j in 0..matrix.a_columns.len() {
        let col = matrix.column_bitvec(j)?;
        if !s_matrix.apply(&col).is_zero() {
            return Ok(false);
        }
    }
    let sacg = sacg_build(matrix)?;
    let phi = |x: &BitVec| s_matrix.apply(x);

    // Bijection onto the identity component.
    let mut image: Vec<BitVec> = sacg.vertices().iter().map(&phi).collect();
    image.sort();
    let distinct = image.windows(2).all(|w| w[0] != w[1]);
    let component = gf2::span(set.n(), set.elements());
    if !distinct || image != component {
        return Ok(false);
    }

    // Edge preservation in both directions.
    for u in sacg.vertices() {
        for v in sacg.vertices() {
            let sacg_edge = sacg.adjacent(u, v);
            let cayley_edge = set.contains(&phi(u).xor(&phi(v)));
            if sacg_edge != cayley_edge {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks the identification of the SACG of `(w_z | 2I_z)` with the
/// cube-with-diagonals `Q^d_{z-1}`, via the explicit map sending the coset
/// of x to `(x_1 + x_z, ..., x_{z-1} + x_z)`.
pub fn verify_qd_iso(z: usize) -> Result<bool, HeubergerError> {
    if z < 3 || z.is_multiple_of(2) {
        return Err(HeubergerError::BadZ(z));
    }
    let all_ones_col = vec![1i64; z];
    let matrix = HeubergerMatrix::new(z, vec![all_ones_col])?;
    let sacg = sacg_build(&matrix)?;
    let target = crate::cayley::cube_with_diagonals(z - 1)
        .expect("z - 1 <= MAX_DIM for valid z");

    // The map is constant on cosets: adding w_z flips every coordinate, so
    // each difference x_j + x_z is unchanged.
    let project = |x: &BitVec| -> BitVec {
        let xz = x.get(z);
        let mut mask = 0u64;
        for j in 1..z {
            if x.get(j) != xz {
                mask |= 1 << (j - 1);
            }
        }
        BitVec::new(mask, z - 1).expect("image in range")
    };

    if sacg.vertex_count() != target.vertex_count() {
        return Ok(false);
    }
    let mut image: Vec<BitVec> = sacg.vertices().iter().map(project).collect();
    image.sort();
    if image.windows(2).any(|w| w[0] == w[1]) {
        return Ok(false);
    }
    for u in sacg.vertices() {
        for v in sacg.vertices() {
            if sacg.adjacent(u, v) != target.adjacent(&project(u), &project(v)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The first (lowest-index) 0/1 column with an odd number z of ones,
/// together with its 1-based support indices.
pub fn find_odd_column(
    matrix: &HeubergerMatrix,
) -> Result<Option<(usize, Vec<usize>, usize)>, HeubergerError> {
    for (j, col) in matrix.a_columns.iter().enumerate() {
        let mut support = Vec::new();
        for (i, &e) in col.iter().enumerate() {
            match e {
                0 => {}
                1 => support.push(i + 1),
                other => return Err(HeubergerError::NotReduced(other)),
            }
        }
        if support.len() % 2 == 1 {
            let z = support.len();
            return Ok(Some((j, support, z)));
        }
    }
    Ok(None)
}
