//! Homomorphism witnesses: the checkable data of a graph homomorphism
//! `Q^d_{z-1} -> Cay(Z_2^n, S)` extracted from an odd-support relation among
//! the elements of S, and the coloring pullback it induces.
//!
//! ```
//! use cubelike::cayley::ConnectionSet;
//! use cubelike::homomorphism::{build_witness, verify_witness};
//!
//! // Inside S = {001, 010, 011, 111} the first three elements XOR to zero,
//! // so Q^d_2 maps homomorphically into the graph.
//! let set = ConnectionSet::parse(3, "1,2,3,7").unwrap();
//! let witness = build_witness(set, &[1, 2, 3]).unwrap();
//! assert!(verify_witness(&witness));
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::{cube_with_diagonals, ConnectionSet};
use crate::coloring::Coloring;
use crate::gf2::BitVec;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("support size {0} must be odd and at least 3")]
    BadSupportSize(usize),
    #[error("support index {0} is out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("support elements do not XOR to zero; not a relation")]
    NotARelation,
    #[error("coloring covers {got} vertices but the target has {expected}")]
    PartialColoring { expected: usize, got: usize },
}

/// A homomorphism `psi: Q^d_{z-1} -> Cay(Z_2^n, S)` given by generator
/// images: `e_j -> s_{i_j}` for j = 1..z-1, which forces
/// `w_{z-1} -> s_{i_z}` via the defining relation of the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomWitness {
    z: usize,
    target: ConnectionSet,
    support: Vec<usize>,
    images: Vec<BitVec>,
    verified: bool,
}

/// The wire form of a witness: `{"z", "support", "images", "verified"}`
/// with 1-based support indices and bitmask images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomWitnessRecord {
    pub z: usize,
    pub support: Vec<usize>,
    pub images: Vec<u64>,
    pub verified: bool,
}

impl HomWitness {
    pub fn z(&self) -> usize {
        self.z
    }

    pub fn target(&self) -> &ConnectionSet {
        &self.target
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// The image of a source vertex `x` in Z_2^{z-1}: XOR of the generator
    /// images selected by the bits of x.
    pub fn apply(&self, x: &BitVec) -> BitVec {
        let mut acc = BitVec::zero(self.target.n());
        for (j, img) in self.images.iter().enumerate() {
            if x.get(j + 1) {
                acc = acc.xor(img);
            }
        }
        acc
    }

    pub fn to_record(&self) -> HomWitnessRecord {
        HomWitnessRecord {
            z: self.z,
            support: self.support.clone(),
            images: self.images.iter().map(BitVec::bits).collect(),
            verified: self.verified,
        }
    }

    /// Rebuilds the rich witness from its wire form plus the target set the
    /// record was about. The stored images are taken as-is so that tampered
    /// records are caught by [`verify_witness`], not silently repaired.
    pub fn from_record(
        record: &HomWitnessRecord,
        target: ConnectionSet,
    ) -> Result<Self, WitnessError> {
        if record.z < 3 || record.z.is_multiple_of(2) {
            return Err(WitnessError::BadSupportSize(record.z));
        }
        let images = record
            .images
            .iter()
            .map(|&m| {
                BitVec::new(m, target.n())
                    .map_err(|_| WitnessError::IndexOutOfRange(m as usize, target.len()))
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            z: record.z,
            target,
            support: record.support.clone(),
            images,
            verified: record.verified,
        })
    }
}

/// Builds the witness for a support `i_1 < ... < i_z` into S: requires odd
/// `z >= 3` and that the selected elements XOR to zero.
pub fn build_witness(target: ConnectionSet, support: &[usize]) -> Result<HomWitness, WitnessError> {
    let z = support.len();
    if z < 3 || z.is_multiple_of(2) {
        return Err(WitnessError::BadSupportSize(z));
    }
    let elements = target.elements();
    let mut sum = BitVec::zero(target.n());
    for &i in support {
        if i < 1 || i > elements.len() {
            return Err(WitnessError::IndexOutOfRange(i, elements.len()));
        }
        sum = sum.xor(&elements[i - 1]);
    }
    if !sum.is_zero() {
        return Err(WitnessError::NotARelation);
    }
    let images = support[..z - 1]
        .iter()
        .map(|&i| elements[i - 1])
        .collect();
    Ok(HomWitness {
        z,
        target,
        support: support.to_vec(),
        images,
        verified: false,
    })
}

/// Exhaustive edge check: true iff for every edge (u, v) of `Q^d_{z-1}`,
/// `psi(u) + psi(v)` lies in S. Deliberately does not trust the defining
/// algebra; a dumb edge-by-edge scan is the whole point of the certificate.
pub fn verify_witness(witness: &HomWitness) -> bool {
    if witness.images.len() != witness.z - 1 {
        return false;
    }
    let Ok(source) = cube_with_diagonals(witness.z - 1) else {
        return false;
    };
    for u in source.vertices() {
        let pu = witness.apply(&u);
        for s in source.set().elements() {
            let v = u.xor(s);
            if !witness.target.contains(&pu.xor(&witness.apply(&v))) {
                return false;
            }
        }
    }
    true
}

/// Marks a witness verified after a successful edge check.
pub fn verified(mut witness: HomWitness) -> Option<HomWitness> {
    if verify_witness(&witness) {
        witness.verified = true;
        Some(witness)
    } else {
        None
    }
}

/// Pulls a total coloring of the target back along the witness: the source
/// vertex x receives the color of `psi(x)`. Properness is preserved because
/// edges map to edges.
pub fn pull_back_coloring(
    witness: &HomWitness,
    coloring: &Coloring,
) -> Result<Coloring, WitnessError> {
    let expected = 1usize << witness.target.n();
    if coloring.colors.len() != expected {
        return Err(WitnessError::PartialColoring {
            expected,
            got: coloring.colors.len(),
        });
    }
    let n_src = witness.z - 1;
    let colors = (0..1u64 << n_src)
        .map(|x| {
            let xv = BitVec::new(x, n_src).expect("source vertex in range");
            coloring.colors[witness.apply(&xv).bits() as usize]
        })
        .collect();
    Ok(Coloring {
        k: coloring.k,
        colors,
    })
}
