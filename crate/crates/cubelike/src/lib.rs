//! Cubelike Cayley graphs on Z_2^n and machine-checked evidence that their
//! chromatic number is never 3.
//!
//! A cubelike graph has the bitmasks `0..2^n` as vertices, with `u ~ v` iff
//! `u XOR v` lies in a fixed connection set `S`. This crate builds such
//! graphs, decides bipartiteness two independent ways, computes exact
//! chromatic numbers, and — for every nonbipartite instance — produces a
//! certificate: an odd-support relation among the elements of `S` that
//! yields an explicit graph homomorphism from an even-dimensional
//! cube-with-diagonals `Q^d_{z-1}` into the graph, forcing the chromatic
//! number up to at least 4.
//!
//! ```
//! use cubelike::cayley::{cube_with_diagonals};
//! use cubelike::coloring::chromatic_number;
//!
//! let k4 = cube_with_diagonals(2).unwrap(); // Q^d_2 is K_4
//! assert_eq!(chromatic_number(&k4).chi(), Some(4));
//! ```

pub mod cayley;
pub mod coloring;
pub mod gf2;
pub mod heuberger;
pub mod homomorphism;
pub mod payan;
