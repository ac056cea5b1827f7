//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

use crate::slides::Slide;

/// Everything that can go wrong across the library.
///
/// Variants are deliberately coarse: callers (in particular the CLI) map them
/// to a stable exit-code taxonomy, so the set of variants is part of the
/// public contract.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The ordered product of the generator images does not reduce to the
    /// boundary word of the basepoint.
    BoundaryNotFixed { expected: String, got: String },
    /// A generator image (equivalently, a diagram label) reduces to the
    /// identity.
    IdentityImage { which: String },
    /// A letter index lies outside `1..=2g` for the ambient genus.
    LetterOutOfRange { index: u32, genus: u32 },
    /// The basepoint letter sequence is not a valid combinatorial generating
    /// sequence (wrong multiset, unreduced product, or wrong topology).
    InvalidBasepoint(String),
    /// A marked diagram failed validation.
    InvalidDiagram(String),
    /// The requested slide is not legal on this diagram.
    IllegalSlide { slide: Slide, reason: &'static str },
    /// A slide produced an identity label; the input diagram was not a valid
    /// marked diagram.
    EmptyLabelProduced { position: usize },
    /// A slide record does not describe a move that was actually applied to
    /// the given diagram.
    InconsistentRecord(&'static str),
    /// No energy-decreasing slide exists on a non-terminal diagram. On valid
    /// input this is impossible; it certifies the input was not a marked
    /// diagram for an automorphism.
    StuckNotAtBasepoint,
    /// The proof-guided finder chose a slide that failed to decrease energy.
    /// Unreachable on valid diagrams; kept as a hard check.
    GuidedInvariantViolated(&'static str),
    /// The reduction loop hit its configured step cap.
    StepLimitExceeded { limit: usize },
    /// A random walk failed to revisit the basepoint shape within its cap.
    ShapeRecurrenceTimeout { attempts: usize },
    /// Whitehead move requested on the tail edge.
    TailEdge,
    /// Whitehead move requested on a loop edge (both half-edges at one
    /// vertex); the collapse is undefined.
    LoopEdge,
    /// Whitehead move requested on an edge with a non-trivalent endpoint.
    NotTrivalent,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BoundaryNotFixed { expected, got } => {
                write!(f, "boundary word not fixed: expected {expected:?}, got {got:?}")
            }
            Error::IdentityImage { which } => {
                write!(f, "image of {which} reduces to the identity")
            }
            Error::LetterOutOfRange { index, genus } => {
                write!(f, "letter index {index} out of range for genus {genus}")
            }
            Error::InvalidBasepoint(msg) => write!(f, "invalid basepoint: {msg}"),
            Error::InvalidDiagram(msg) => write!(f, "invalid diagram: {msg}"),
            Error::IllegalSlide { slide, reason } => {
                write!(f, "illegal slide {slide}: {reason}")
            }
            Error::EmptyLabelProduced { position } => {
                write!(f, "slide produced an identity label at position {position}")
            }
            Error::InconsistentRecord(msg) => write!(f, "inconsistent slide record: {msg}"),
            Error::StuckNotAtBasepoint => {
                write!(f, "no energy-decreasing slide on a non-basepoint diagram")
            }
            Error::GuidedInvariantViolated(msg) => {
                write!(f, "guided slide failed to decrease energy: {msg}")
            }
            Error::StepLimitExceeded { limit } => {
                write!(f, "reduction exceeded the step cap of {limit}")
            }
            Error::ShapeRecurrenceTimeout { attempts } => {
                write!(f, "random walk did not return to the basepoint shape in {attempts} steps")
            }
            Error::TailEdge => write!(f, "cannot collapse the tail edge"),
            Error::LoopEdge => write!(f, "cannot collapse a loop edge"),
            Error::NotTrivalent => write!(f, "edge endpoint is not trivalent"),
        }
    }
}

impl core::error::Error for Error {}
