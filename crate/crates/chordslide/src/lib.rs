//! Chord-slide factorization of mapping classes of a once-bordered surface.
//!
//! A boundary-fixing automorphism of the free group `pi_1(S_{g,1})` is encoded
//! as a marked linear chord diagram: `4g` chord ends on a line, paired into
//! `2g` chords, each end labeled by a reduced word, with the ordered label
//! product spelling the boundary word. A chord slide moves one chord end over
//! an adjacent chord and rewrites the affected labels by a Nielsen
//! transformation. Every valid non-terminal diagram admits a slide that
//! strictly decreases an integer-valued energy, so greedy descent terminates
//! at the base diagram and the recorded slide sequence factors the input
//! automorphism. Each slide also translates into a pair of Whitehead moves on
//! the associated bordered fatgraph.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `chordslide-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod diagram;
pub mod error;
pub mod factor;
pub mod fatgraph;
pub mod freegroup;
pub mod reduction;
pub mod slides;

pub use error::Error;
