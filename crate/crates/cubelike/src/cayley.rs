//! Cubelike graphs: Cayley graphs on Z_2^n.
//!
//! Vertices are the `2^n` bitmasks; `u ~ v` iff `u XOR v` lies in the
//! connection set. Includes the cube-with-diagonals family `Q^d_n` and two
//! independent bipartiteness tests (a BFS 2-coloring and the GF(2) parity
//! criterion).
//!
//! ```
//! use cubelike::cayley::{build_graph, is_bipartite_bfs, is_bipartite_parity, ConnectionSet};
//!
//! // Q^d_2 = Cay(Z_2^2, {01, 10, 11}) is the complete graph K_4.
//! let set = ConnectionSet::parse(2, "1,2,3").unwrap();
//! assert_eq!(is_bipartite_parity(&set), Ok(false));
//! assert!(!is_bipartite_bfs(&build_graph(set)));
//!
//! // The plain 3-cube is bipartite, and both tests agree.
//! let cube = ConnectionSet::parse(3, "1,2,4").unwrap();
//! assert_eq!(is_bipartite_parity(&cube), Ok(true));
//! assert!(is_bipartite_bfs(&build_graph(cube)));
//! ```

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{self, BitVec, Gf2Matrix};

/// Hard cap on graph dimension: 2^24 vertices is well past desk scale.
pub const MAX_DIM: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CayleyError {
    #[error("dimension {0} exceeds the cap of {MAX_DIM}")]
    DimensionTooLarge(usize),
    #[error("connection-set element {0} is out of range for dimension {1}")]
    ElementOutOfRange(u64, usize),
    #[error("connection set contains the zero element (loop); graph is not properly colorable")]
    LoopPresent,
    #[error("connection set is empty")]
    EmptySet,
    #[error("invalid set string: {0}")]
    Parse(String),
}

/// The symmetric generating set S of a cubelike graph, sorted and
/// deduplicated. May contain zero, which encodes a loop at every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionSet {
    n: usize,
    elements: Vec<BitVec>,
}

impl ConnectionSet {
    pub fn new(n: usize, masks: &[u64]) -> Result<Self, CayleyError> {
        if n > MAX_DIM {
            return Err(CayleyError::DimensionTooLarge(n));
        }
        let mut elements = Vec::with_capacity(masks.len());
        for &m in masks {
            let v = BitVec::new(m, n).map_err(|_| CayleyError::ElementOutOfRange(m, n))?;
            elements.push(v);
        }
        elements.sort();
        elements.dedup();
        Ok(Self { n, elements })
    }

    /// Parses the external "1,2,4,8,15" comma-separated bitmask form.
    pub fn parse(n: usize, s: &str) -> Result<Self, CayleyError> {
        let mut masks = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let m: u64 = tok
                .parse()
                .map_err(|_| CayleyError::Parse(format!("not an integer: {tok:?}")))?;
            masks.push(m);
        }
        Self::new(n, &masks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[BitVec] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.elements.binary_search(v).is_ok()
    }

    /// True iff 0 is an element (every vertex carries a loop).
    pub fn has_loop(&self) -> bool {
        self.elements.first().is_some_and(BitVec::is_zero)
    }

    pub fn masks(&self) -> Vec<u64> {
        self.elements.iter().map(BitVec::bits).collect()
    }

    /// The elements as columns of an n-row GF(2) matrix.
    pub fn as_matrix(&self) -> Gf2Matrix {
        Gf2Matrix::from_columns(self.n, self.elements.clone()).expect("elements have width n")
    }
}

impl fmt::Display for ConnectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let masks: Vec<String> = self.elements.iter().map(|e| e.bits().to_string()).collect();
        write!(f, "{}", masks.join(","))
    }
}

/// An immutable cubelike graph Cay(Z_2^n, S) on `2^n` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubelikeGraph {
    set: ConnectionSet,
}

impl CubelikeGraph {
    pub fn set(&self) -> &ConnectionSet {
        &self.set
    }

    pub fn n(&self) -> usize {
        self.set.n
    }

    pub fn vertex_count(&self) -> usize {
        1 << self.set.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = BitVec> + '_ {
        let n = self.set.n;
        (0..1u64 << n).map(move |m| BitVec::new(m, n).expect("vertex in range"))
    }

    pub fn adjacent(&self, u: &BitVec, v: &BitVec) -> bool {
        self.set.contains(&u.xor(v))
    }

    pub fn neighbors<'a>(&'a self, u: &'a BitVec) -> impl Iterator<Item = BitVec> + 'a {
        self.set.elements.iter().map(move |s| u.xor(s))
    }

    /// Degree counting a loop once.
    pub fn degree(&self, _u: &BitVec) -> usize {
        self.set.len()
    }

    /// Edges `{u, v}` with `u < v`, plus `(u, u)` loops when `0` is in S.
    pub fn edges(&self) -> Vec<(BitVec, BitVec)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for s in self.set.elements() {
                let v = u.xor(s);
                if u <= v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The identity component: the span of S, as sorted vertex masks.
    pub fn identity_component(&self) -> Vec<BitVec> {
        gf2::span(self.set.n, self.set.elements())
    }
}

pub fn build_graph(set: ConnectionSet) -> CubelikeGraph {
    CubelikeGraph { set }
}

/// The cube-with-diagonals `Q^d_n = Cay(Z_2^n, {e_1, ..., e_n, w_n})`.
/// For n = 1 the diagonal coincides with e_1, so |S| = 1.
pub fn cube_with_diagonals(n: usize) -> Result<CubelikeGraph, CayleyError> {
    if n == 0 {
        return Err(CayleyError::Parse("Q^d_n requires n >= 1".into()));
    }
    if n > MAX_DIM {
        return Err(CayleyError::DimensionTooLarge(n));
    }
    let mut masks: Vec<u64> = (0..n).map(|j| 1 << j).collect();
    masks.push((1 << n) - 1);
    Ok(build_graph(ConnectionSet::new(n, &masks)?))
}

/// BFS 2-coloring over every component. Loops make the answer false.
pub fn is_bipartite_bfs(g: &CubelikeGraph) -> bool {
    if g.set().has_loop() {
        return false;
    }
    let nv = g.vertex_count();
    let mut color: Vec<Option<bool>> = vec![None; nv];
    for start in 0..nv {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("queued vertices are colored");
            let uv = BitVec::new(u as u64, g.n()).expect("vertex in range");
            for w in g.neighbors(&uv) {
                let w = w.bits() as usize;
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Algebraic bipartiteness: true iff some GF(2) functional sends every
/// element of S to 1 (equivalently, the bipartition classes are the level
/// sets of that functional).
pub fn is_bipartite_parity(set: &ConnectionSet) -> Result<bool, CayleyError> {
    if set.is_empty() {
        return Err(CayleyError::EmptySet);
    }
    if set.has_loop() {
        return Err(CayleyError::LoopPresent);
    }
    Ok(set.as_matrix().solve_all_ones().is_some())
}
