//! Combinatorial open books of closed oriented 3-manifolds.
//!
//! An open book is stored as a pair `(page, monodromy)`: a compact oriented
//! surface with boundary, encoded combinatorially ([`page::Page`]), together
//! with a word of Dehn twists ([`twist::TwistWord`]) acting on its first
//! homology. The crate provides
//!
//! * cut-system style pages built from discs, tubes and handles, with an
//!   integral intersection pairing and boundary-to-boundary arcs,
//! * Dehn twist words and their affine action on `H_1(page)`,
//! * braid groups with the Artin action on a free group, pure braid combing
//!   and braid normal forms for multi-section sums,
//! * the open book constructions: plumbing-style binding sums, multi-section
//!   fibre sums, Lutz-type modifications and convex bundle sums,
//! * first homology of the resulting 3-manifold via Smith normal form.
//!
//! The `obk` binary exposes the same operations on a canonical JSON document
//! format; see [`doc`].

pub mod braid;
pub mod doc;
pub mod invariants;
pub mod openbook;
pub mod page;
pub mod twist;

use thiserror::Error;

/// Errors produced by page surgery, word algebra and document handling.
#[derive(Debug, Error)]
pub enum Error {
    /// A boundary label was looked up on a page that does not carry it.
    #[error("unknown boundary label `{0}`")]
    UnknownLabel(String),
    /// A curve name was looked up on a page that does not register it.
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    /// A curve or label name clashes with one already present.
    #[error("name `{0}` is already in use")]
    DuplicateName(String),
    /// A name contains characters outside the document charset.
    #[error("invalid name `{0}`: use ASCII letters, digits, `_`, `.` or `-`")]
    InvalidName(String),
    /// Two boundary labels were required to be distinct but coincide.
    #[error("labels `{0}` and `{1}` must differ")]
    LabelsCoincide(String, String),
    /// An operation required both labels on the same page component.
    #[error("labels `{0}` and `{1}` lie on different page components")]
    DifferentComponents(String, String),
    /// A twist word referred to a page other than the one it acts on.
    #[error("twist word does not act on this page")]
    PageMismatch,
    /// A braid word used a strand index outside `1..n`.
    #[error("braid generator index {index} out of range for {strands} strands")]
    BraidIndex { index: usize, strands: usize },
    /// A braid was not a valid section braid: wrong underlying permutation.
    #[error("braid closure is not a single cycle through all strands: permutation has cycle type {cycle_type}")]
    NotSectionBraid { cycle_type: String },
    /// Combing was asked for a braid with a non-trivial permutation.
    #[error("braid is not pure: permutation has cycle type {cycle_type}")]
    NotPureBraid { cycle_type: String },
    /// An interior site id was not found.
    #[error("unknown interior site `{0}`")]
    UnknownSite(String),
    /// An interior site was consumed twice.
    #[error("interior site `{0}` was already used")]
    SiteReused(String),
    /// An operation precondition failed.
    #[error("{0}")]
    Unsupported(String),
    /// The multi-section sum got open books with unequal section counts.
    #[error("section counts differ: {0} vs {1}")]
    SectionCountMismatch(usize, usize),
    /// A parser rejected its input.
    #[error("parse error: {0}")]
    Parse(String),
    /// A document violated a structural invariant on load.
    #[error("invalid document: {0}")]
    InvalidDocument(String),
    /// Underlying JSON (de)serialization failure.
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
