//! The end-to-end verifier: classify a connection set, emit a certificate
//! that a nonbipartite cubelike graph has chromatic number at least 4, and
//! sweep whole families of connection sets checking that chromatic number 3
//! never occurs.
//!
//! ```
//! use cubelike::cayley::ConnectionSet;
//! use cubelike::payan::{classify, verify_certificate, Classification};
//!
//! let set = ConnectionSet::parse(2, "1,2,3").unwrap();
//! let cert = classify(&set, true);
//! assert_eq!(cert.classification, Classification::NonBipartite);
//! assert_eq!(cert.z, Some(3));           // odd relation of size 3
//! assert_eq!(cert.chi_lower_bound, Some(4));
//! assert_eq!(cert.exact_chi, Some(4));
//! assert!(verify_certificate(&cert));    // independent re-check
//! ```

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::{build_graph, is_bipartite_parity, ConnectionSet};
use crate::coloring::{chromatic_number, k_colorable};
use crate::heuberger::{heuberger_matrix, reduce_columns_mod2, HeubergerMatrix};
use crate::homomorphism::{build_witness, verified, verify_witness, HomWitness, HomWitnessRecord};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PayanError {
    #[error("exhaustive sweeps are capped at n = 4; n = {0} has 2^(2^{0} - 1) - 1 sets")]
    ExhaustiveTooLarge(usize),
    #[error("random sweeps are capped at n = 6, got n = {0}")]
    RandomTooLarge(usize),
    #[error("malformed certificate: {0}")]
    Schema(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Bipartite,
    HasLoop,
    NonBipartite,
}

/// Serialized evidence for the classification of one connection set. For
/// nonbipartite sets the certificate pins down an odd-support relation, the
/// homomorphism witness it induces, and the resulting lower bound chi >= 4.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PayanCertificate {
    pub n: usize,
    pub set: Vec<u64>,
    pub heuberger: HeubergerMatrix,
    pub classification: Classification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odd_column: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<HomWitnessRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_lower_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_chi: Option<usize>,
}

/// Among the reduced 0/1 columns, the odd-support column with smallest z,
/// tie-broken by lowest column index. Smallest z means the cheapest source
/// graph to re-verify.
fn best_odd_column(matrix: &HeubergerMatrix) -> Option<(usize, Vec<usize>, usize)> {
    let mut best: Option<(usize, Vec<usize>, usize)> = None;
    for (j, col) in matrix.a_columns.iter().enumerate() {
        let support: Vec<usize> = col
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, _)| i + 1)
            .collect();
        let z = support.len();
        if z % 2 == 1 && best.as_ref().is_none_or(|(_, _, bz)| z < *bz) {
            best = Some((j, support, z));
        }
    }
    best
}

/// Classifies one connection set and packages the evidence. Every input is
/// classifiable: a loop wins over everything, then the parity test decides
/// bipartiteness, and any nonbipartite set yields a verified witness.
pub fn classify(set: &ConnectionSet, exact_chi: bool) -> PayanCertificate {
    let heuberger = if set.is_empty() {
        HeubergerMatrix::new(0, Vec::new()).expect("empty matrix is valid")
    } else {
        reduce_columns_mod2(&heuberger_matrix(set).expect("set is nonempty"))
    };
    let chi = exact_chi.then(|| chromatic_number(&build_graph(set.clone())));
    let exact = chi.as_ref().and_then(|r| r.chi);

    if set.has_loop() {
        return PayanCertificate {
            n: set.n(),
            set: set.masks(),
            heuberger,
            classification: Classification::HasLoop,
            odd_column: None,
            support: None,
            z: None,
            witness: None,
            chi_lower_bound: None,
            exact_chi: None,
        };
    }
    let bipartite = set.is_empty() || is_bipartite_parity(set).expect("nonempty and loop-free");
    if bipartite {
        return PayanCertificate {
            n: set.n(),
            set: set.masks(),
            heuberger,
            classification: Classification::Bipartite,
            odd_column: None,
            support: None,
            z: None,
            witness: None,
            chi_lower_bound: None,
            exact_chi: exact,
        };
    }

    let (odd_column, support, z) =
        best_odd_column(&heuberger).expect("nonbipartite sets have an odd-support relation");
    let witness = verified(
        build_witness(set.clone(), &support).expect("support is an odd relation of size >= 3"),
    )
    .expect("edge check of an odd-relation witness succeeds");
    PayanCertificate {
        n: set.n(),
        set: set.masks(),
        heuberger,
        classification: Classification::NonBipartite,
        odd_column: Some(odd_column),
        support: Some(support),
        z: Some(z),
        witness: Some(witness.to_record()),
        chi_lower_bound: Some(4),
        exact_chi: exact,
    }
}

/// Independent re-checker: consumes only the certificate and the definition
/// of the graph, re-deriving every claim without reusing solver state.
pub fn verify_certificate(cert: &PayanCertificate) -> bool {
    let Ok(set) = ConnectionSet::new(cert.n, &cert.set) else {
        return false;
    };
    if set.masks() != cert.set {
        return false; // unsorted or duplicated encoding
    }
    // The A-columns must be genuine 0/1 relations among the elements of S.
    if !cert.heuberger.is_reduced() || cert.heuberger.m != set.len() {
        return false;
    }
    let s_matrix = set.as_matrix();
    for j in 0..cert.heuberger.a_columns.len() {
        let Ok(col) = cert.heuberger.column_bitvec(j) else {
            return false;
        };
        if !s_matrix.apply(&col).is_zero() {
            return false;
        }
    }
    match cert.classification {
        Classification::HasLoop => set.has_loop(),
        Classification::Bipartite => {
            !set.has_loop()
                && (set.is_empty() || is_bipartite_parity(&set) == Ok(true))
        }
        Classification::NonBipartite => {
            if set.has_loop() || set.is_empty() || is_bipartite_parity(&set) != Ok(false) {
                return false;
            }
            let (Some(support), Some(z), Some(record)) =
                (&cert.support, cert.z, &cert.witness)
            else {
                return false;
            };
            if z < 3 || z % 2 == 0 || support.len() != z || record.z != z {
                return false;
            }
            if cert.chi_lower_bound != Some(4) {
                return false;
            }
            // The recorded images must be exactly the supported elements,
            // and the witness must survive the exhaustive edge check.
            let Ok(rebuilt) = build_witness(set.clone(), support) else {
                return false;
            };
            if rebuilt.to_record().images != record.images {
                return false;
            }
            let Ok(as_claimed) = HomWitness::from_record(record, set) else {
                return false;
            };
            verify_witness(&as_claimed)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SweepMode {
    Exhaustive,
    Random { count: usize, seed: u64 },
}

/// Aggregate outcome of a sweep. `violations` lists every set whose exact
/// chromatic number is 3; the theorem says it stays empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub n: usize,
    pub mode: SweepMode,
    pub sets_examined: usize,
    pub bipartite: usize,
    pub nonbipartite: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_histogram: Option<BTreeMap<usize, usize>>,
    pub violations: Vec<String>,
}

impl SweepSummary {
    /// Aligned text rendering of the summary.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mode = match &self.mode {
            SweepMode::Exhaustive => "exhaustive".to_string(),
            SweepMode::Random { count, seed } => format!("random(count={count}, seed={seed})"),
        };
        out.push_str(&format!("{:<16} {}\n", "n", self.n));
        out.push_str(&format!("{:<16} {}\n", "mode", mode));
        out.push_str(&format!("{:<16} {}\n", "sets examined", self.sets_examined));
        out.push_str(&format!("{:<16} {}\n", "bipartite", self.bipartite));
        out.push_str(&format!("{:<16} {}\n", "nonbipartite", self.nonbipartite));
        if let Some(hist) = &self.chi_histogram {
            for (chi, count) in hist {
                out.push_str(&format!("{:<16} {}\n", format!("chi = {chi}"), count));
            }
        }
        out.push_str(&format!("{:<16} {}\n", "violations", self.violations.len()));
        for v in &self.violations {
            out.push_str(&format!("  VIOLATION: {v}\n"));
        }
        out
    }
}

fn masks_of_subset(n: usize, subset: u64) -> Vec<u64> {
    let universe = (1u64 << n) - 1;
    (1..=universe).filter(|e| subset >> (e - 1) & 1 == 1).collect()
}

/// Per-set result inside a sweep; kept order-independent so parallel and
/// sequential runs aggregate identically.
struct Outcome {
    set_string: String,
    bipartite: bool,
    chi: Option<usize>,
    violation: bool,
}

fn examine(set: &ConnectionSet, exact_chi: bool) -> Outcome {
    let cert = classify(set, exact_chi);
    let bipartite = cert.classification == Classification::Bipartite;
    debug_assert!(verify_certificate(&cert));
    // The theorem check proper: a nonbipartite set with a proper 3-coloring
    // would be a violation. Bipartite sets have chi <= 2 by construction.
    let violation = if bipartite {
        false
    } else {
        let g = build_graph(set.clone());
        k_colorable(&g, 3).expect("loop-free").is_some()
    };
    Outcome {
        set_string: set.to_string(),
        bipartite,
        chi: cert.exact_chi,
        violation,
    }
}

/// Sweeps loop-free nonempty connection sets of Z_2^n, exhaustively (n <= 4,
/// ascending encoded order) or as a seeded random sample (n <= 6). Output is
/// deterministic given the mode and seed.
pub fn sweep(n: usize, mode: SweepMode, exact_chi: bool) -> Result<SweepSummary, PayanError> {
    let sets: Vec<ConnectionSet> = match mode {
        SweepMode::Exhaustive => {
            if n > 4 {
                return Err(PayanError::ExhaustiveTooLarge(n));
            }
            let universe = (1u64 << n) - 1;
            (1u64..1 << universe)
                .map(|subset| {
                    ConnectionSet::new(n, &masks_of_subset(n, subset)).expect("masks in range")
                })
                .collect()
        }
        SweepMode::Random { count, seed } => {
            if n > 6 {
                return Err(PayanError::RandomTooLarge(n));
            }
            let universe = (1u64 << n) - 1;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let subset = rng.gen_range(1..1u128 << universe) as u64;
                    ConnectionSet::new(n, &masks_of_subset(n, subset)).expect("masks in range")
                })
                .collect()
        }
    };

    let outcomes: Vec<Outcome> = sets
        .par_iter()
        .map(|set| examine(set, exact_chi))
        .collect();

    let mut summary = SweepSummary {
        n,
        mode,
        sets_examined: outcomes.len(),
        bipartite: 0,
        nonbipartite: 0,
        chi_histogram: exact_chi.then(BTreeMap::new),
        violations: Vec::new(),
    };
    for o in &outcomes {
        if o.bipartite {
            summary.bipartite += 1;
        } else {
            summary.nonbipartite += 1;
        }
        if let (Some(hist), Some(chi)) = (summary.chi_histogram.as_mut(), o.chi) {
            *hist.entry(chi).or_insert(0) += 1;
        }
        if o.violation {
            summary.violations.push(o.set_string.clone());
        }
    }
    summary.violations.sort();
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(n: usize, masks: &[u64]) -> ConnectionSet {
        ConnectionSet::new(n, masks).unwrap()
    }

    #[test]
    fn classify_k4() {
        let cert = classify(&cs(2, &[1, 2, 3]), true);
        assert_eq!(cert.classification, Classification::NonBipartite);
        assert_eq!(cert.z, Some(3));
        assert_eq!(cert.chi_lower_bound, Some(4));
        assert_eq!(cert.exact_chi, Some(4));
        assert!(verify_certificate(&cert));
    }

    #[test]
    fn classify_bipartite_qd3() {
        let cert = classify(&cs(3, &[1, 2, 4, 7]), false);
        assert_eq!(cert.classification, Classification::Bipartite);
        assert!(cert.witness.is_none());
        assert!(verify_certificate(&cert));
    }

    #[test]
    fn classify_loop() {
        let cert = classify(&cs(1, &[0]), false);
        assert_eq!(cert.classification, Classification::HasLoop);
        assert!(verify_certificate(&cert));
    }

    #[test]
    fn tampered_certificates_rejected() {
        let mut cert = classify(&cs(2, &[1, 2, 3]), false);
        cert.support = Some(vec![1, 2, 2]);
        assert!(!verify_certificate(&cert));

        let mut cert = classify(&cs(2, &[1, 2, 3]), false);
        cert.classification = Classification::Bipartite;
        cert.support = None;
        cert.z = None;
        cert.witness = None;
        cert.chi_lower_bound = None;
        assert!(!verify_certificate(&cert));
    }

    #[test]
    fn sweep_n2_exhaustive() {
        let summary = sweep(2, SweepMode::Exhaustive, true).unwrap();
        assert_eq!(summary.sets_examined, 7);
        assert!(summary.violations.is_empty());
        // K_4 (S = {1,2,3}) is the only nonbipartite set at n = 2.
        assert_eq!(summary.nonbipartite, 1);
        assert_eq!(summary.chi_histogram.as_ref().unwrap().get(&4), Some(&1));
    }

    #[test]
    fn sweep_n3_exhaustive() {
        let summary = sweep(3, SweepMode::Exhaustive, false).unwrap();
        assert_eq!(summary.sets_examined, 127);
        assert!(summary.violations.is_empty());
    }

    #[test]
    fn sweep_guard_rails() {
        assert_eq!(
            sweep(5, SweepMode::Exhaustive, false),
            Err(PayanError::ExhaustiveTooLarge(5))
        );
        assert_eq!(
            sweep(7, SweepMode::Random { count: 1, seed: 0 }, false),
            Err(PayanError::RandomTooLarge(7))
        );
    }

    #[test]
    fn sweep_is_deterministic() {
        let mode = SweepMode::Random { count: 50, seed: 42 };
        let a = serde_json::to_string(&sweep(5, mode.clone(), false).unwrap()).unwrap();
        let b = serde_json::to_string(&sweep(5, mode, false).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn certificate_json_round_trip() {
        let cert = classify(&cs(3, &[1, 2, 3]), false);
        let json = serde_json::to_string(&cert).unwrap();
        let back: PayanCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&back));
    }
}
