//! Finite-universe rough sets, the lattice of their regular sets, and the
//! matroid that lattice induces through its height function.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`relation`] — binary relations with seriality/transitivity checks and
//!    a seeded generator of serial-transitive relations;
//! 2. [`approximation`] — lower/upper approximation operators and the
//!    enumeration of regular sets (fixed points of lower-after-upper);
//! 3. [`lattice`] — a finite lattice engine with Hasse diagrams, heights,
//!    and modular/distributive/semimodular classification;
//! 4. [`matroid`] — the matroid whose independent sets are the subsets that
//!    no regular set can out-count by height, with rank, closure, and the
//!    closed-set lattice.
//!
//! [`verification`] ties the stages together: it derives the closed sets of
//! the matroid from the regular-set lattice by a three-step procedure,
//! checks a catalog of structural claims exhaustively on any space, and runs
//! deterministic randomized campaigns over generated relations.
//!
//! ```
//! use regmat_core::{derive_closed_sets, ApproximationSpace, BinaryRelation,
//!                   LatticeMatroid, Universe};
//!
//! let universe = Universe::new(4);
//! let relation = BinaryRelation::from_pairs(
//!     &universe,
//!     [(0, 0), (0, 2), (1, 0), (1, 2), (1, 3), (2, 0), (2, 2), (3, 3)],
//! )?;
//! let space = ApproximationSpace::new(relation);
//! let matroid = LatticeMatroid::from_space(&space)?;
//! assert_eq!(matroid.regular_lattice().len(), 4);
//! assert_eq!(matroid.regular_lattice().top_height(), 2);
//!
//! let derivation = derive_closed_sets(&matroid)?;
//! assert_eq!(derivation.oracle.len(), 5);
//! assert!(derivation.discrepancy.is_empty());
//! # Ok::<(), regmat_core::Error>(())
//! ```

pub mod approximation;
pub mod error;
pub mod lattice;
pub mod matroid;
pub mod relation;
pub mod sets;
pub mod verification;

pub use approximation::{regular_set_lattice, ApproximationSpace};
pub use error::{Error, Result};
pub use lattice::{build_lattice, from_family_by_inclusion, FiniteLattice};
pub use matroid::{AxiomReport, LatticeMatroid};
pub use relation::{random_serial_transitive, BinaryRelation};
pub use sets::{enumerate_subsets, SetFamily, Subset, Universe};
pub use verification::{
    derive_closed_sets, run_campaign, verify_all, verify_proposition, CampaignConfig,
    CampaignReport, DerivationResult, DerivationSummary, InstanceReport, PropositionId,
    PropositionReport, Verdict,
};
