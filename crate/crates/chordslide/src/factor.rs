//! Mapping-class frontend: validated automorphisms, factorization
//! certificates, independent replay verification, and seeded random
//! generation of test classes.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::diagram::MarkedDiagram;
use crate::error::Error;
use crate::freegroup::{Basepoint, Letter, Word};
use crate::reduction::{reduce_to_basepoint, ReductionTrace, Strategy};
use crate::slides::{apply_slide, apply_slide_with_record, enumerate_slides, shape_path};

/// A boundary-fixing automorphism, given by one reduced image per generator.
///
/// Construction only checks the boundary condition and that no image is the
/// identity; that the images actually generate is certified a posteriori by
/// a successful reduction, which is a decision procedure for it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Automorphism {
    base: Arc<Basepoint>,
    images: Vec<Word>,
}

impl Automorphism {
    pub fn new(base: Arc<Basepoint>, images: Vec<Word>) -> Result<Automorphism, Error> {
        // The diagram constructor performs exactly the required checks.
        MarkedDiagram::from_images(base.clone(), &images)?;
        Ok(Automorphism { base, images })
    }

    pub fn identity(base: Arc<Basepoint>) -> Automorphism {
        let images =
            (1..=2 * base.genus()).map(|i| Word::single(Letter::new(i, false))).collect();
        Automorphism { base, images }
    }

    pub fn base(&self) -> &Basepoint {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<Basepoint> {
        &self.base
    }

    /// Image of generator `index` (1-based).
    pub fn image(&self, index: usize) -> &Word {
        &self.images[index - 1]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.letters() == [Letter::new(i + 1, false)])
    }

    /// Letter-wise substitution, freely reduced.
    pub fn apply(&self, w: &Word) -> Word {
        let pieces: Vec<Word> = w
            .letters()
            .iter()
            .map(|l| {
                let img = &self.images[l.index() - 1];
                if l.is_inverse() {
                    img.invert()
                } else {
                    img.clone()
                }
            })
            .collect();
        Word::product_of(pieces.iter())
    }

    /// `self . other`: apply `other` first. The composite fixes the boundary
    /// word whenever both factors do; construction re-checks anyway.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism, Error> {
        let images = other.images.iter().map(|w| self.apply(w)).collect();
        Automorphism::new(self.base.clone(), images)
    }

    pub fn to_diagram(&self) -> MarkedDiagram {
        MarkedDiagram::from_images(self.base.clone(), &self.images)
            .expect("images were validated at construction")
    }
}

/// Validate generator images as a boundary-fixing automorphism.
pub fn validate_automorphism(base: Arc<Basepoint>, images: Vec<Word>) -> Result<Automorphism, Error> {
    Automorphism::new(base, images)
}

/// A factorization certificate: the automorphism together with the slide
/// sequence that reduces its diagram to the basepoint diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub automorphism: Automorphism,
    pub trace: ReductionTrace,
}

/// Factor a mapping class into chord slides by running the reduction on its
/// marked diagram.
pub fn factor(
    phi: &Automorphism,
    strategy: Strategy,
    max_steps: Option<usize>,
) -> Result<Certificate, Error> {
    let diagram = phi.to_diagram();
    let trace = reduce_to_basepoint(&diagram, strategy, max_steps)?;
    Ok(Certificate { automorphism: phi.clone(), trace })
}

/// Outcome of an independent certificate replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    pub failure: Option<String>,
}

impl Verification {
    fn pass() -> Verification {
        Verification { ok: true, failure: None }
    }

    fn fail(reason: String) -> Verification {
        Verification { ok: false, failure: Some(reason) }
    }
}

/// Replay a certificate from scratch: rebuild the diagram, re-apply every
/// slide, re-check full diagram validity and strict energy descent at each
/// step, and require the final state to be the basepoint diagram.
pub fn verify(cert: &Certificate) -> Verification {
    let phi = &cert.automorphism;
    let mut d = match MarkedDiagram::from_images(phi.base_arc().clone(), phi.images()) {
        Ok(d) => d,
        Err(e) => return Verification::fail(format!("diagram construction failed: {e}")),
    };
    let trace = &cert.trace;
    if trace.energies.len() != trace.slides.len() + 1 {
        return Verification::fail(String::from("energy list does not match slide count"));
    }
    if trace.energies[0] != d.energy().total_energy {
        return Verification::fail(String::from("recorded initial energy is wrong"));
    }
    for (step, rec) in trace.slides.iter().enumerate() {
        let (next, replayed) = match apply_slide_with_record(&d, rec.slide) {
            Ok(x) => x,
            Err(e) => return Verification::fail(format!("step {}: {e}", step + 1)),
        };
        if &replayed != rec {
            return Verification::fail(format!("step {}: record does not match replay", step + 1));
        }
        let report = next.validate();
        if let Some(check) = report.first_failure() {
            return Verification::fail(format!("step {}: {} failed", step + 1, check.name));
        }
        if replayed.energy_after >= trace.energies[step] {
            return Verification::fail(format!("step {}: energy did not decrease", step + 1));
        }
        if replayed.energy_after != trace.energies[step + 1] {
            return Verification::fail(format!("step {}: recorded energy is wrong", step + 1));
        }
        d = next;
    }
    if !d.is_basepoint() {
        return Verification::fail(String::from("replay does not end at the basepoint diagram"));
    }
    Verification::pass()
}

/// Uniform integer below `n` by rejection sampling; deterministic given the
/// generator state.
fn below(rng: &mut ChaCha8Rng, n: usize) -> usize {
    debug_assert!(n > 0);
    let n64 = n as u64;
    let zone = u64::MAX - u64::MAX % n64;
    loop {
        let v = rng.next_u64();
        if v < zone {
            return (v % n64) as usize;
        }
    }
}

/// Shape-search budget for steering a walk back to the basepoint shape.
const SHAPE_SEARCH_BUDGET: usize = 1 << 20;

/// Generate a mapping class by a seeded random walk of legal slides from the
/// basepoint diagram: after `walk_length` random steps the walk is steered
/// back to the first state whose shape equals the basepoint shape, along a
/// shortest slide path in the shape graph, and the generator images are read
/// off the labels. The boundary condition holds by product invariance, and
/// the result is a genuine automorphism because the walk is reversible.
///
/// At genus 1 every valid shape is the basepoint shape, so the walk stops at
/// exactly `walk_length` steps. Steering (rather than waiting for a chance
/// recurrence) keeps the number of extra steps bounded by the shape graph's
/// diameter; label sizes grow with every step, so unbounded waiting is not
/// an option. The shape search is capped; exceeding the cap reports a
/// timeout, which on connected shape graphs of small genus does not happen.
pub fn random_mapping_class(
    base: &Arc<Basepoint>,
    walk_length: usize,
    seed: u64,
) -> Result<Automorphism, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = MarkedDiagram::basepoint_diagram(base.clone());
    for _ in 0..walk_length {
        let moves = enumerate_slides(&d);
        let s = moves[below(&mut rng, moves.len())];
        d = apply_slide(&d, s).expect("enumerated slides are legal");
    }
    if d.shape().pairing() != base.pairing() {
        let path = shape_path(d.shape().pairing(), base.pairing(), SHAPE_SEARCH_BUDGET)
            .ok_or(Error::ShapeRecurrenceTimeout { attempts: SHAPE_SEARCH_BUDGET })?;
        for s in path {
            d = apply_slide(&d, s).expect("shape path slides are legal");
        }
    }
    let images = d.images_at_basepoint_shape().expect("walk was steered to the basepoint shape");
    Automorphism::new(base.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slides::{Direction, Slide};

    fn base1() -> Arc<Basepoint> {
        Arc::new(Basepoint::standard(1))
    }

    fn w(text: &str) -> Word {
        Word::parse(text, 1).unwrap()
    }

    #[test]
    fn validate_accepts_the_twist_and_identity() {
        assert!(Automorphism::new(base1(), alloc::vec![w("a"), w("b a")]).is_ok());
        let id = Automorphism::new(base1(), alloc::vec![w("a"), w("b")]).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn validate_rejects_swap_and_identity_image() {
        assert!(matches!(
            Automorphism::new(base1(), alloc::vec![w("b"), w("a")]),
            Err(Error::BoundaryNotFixed { .. })
        ));
        assert!(matches!(
            Automorphism::new(base1(), alloc::vec![Word::identity(), w("b")]),
            Err(Error::IdentityImage { .. })
        ));
    }

    #[test]
    fn factor_identity_is_empty() {
        let cert = factor(&Automorphism::identity(base1()), Strategy::Exhaustive, None).unwrap();
        assert!(cert.trace.is_empty());
        assert!(verify(&cert).ok);
    }

    #[test]
    fn factor_twist_is_one_slide() {
        let phi = Automorphism::new(base1(), alloc::vec![w("a"), w("b a")]).unwrap();
        let cert = factor(&phi, Strategy::Exhaustive, None).unwrap();
        assert_eq!(cert.trace.len(), 1);
        assert_eq!(cert.trace.slides[0].slide, Slide::new(2, Direction::Right));
        assert!(verify(&cert).ok);
    }

    #[test]
    fn tampered_certificates_fail() {
        let phi = Automorphism::new(base1(), alloc::vec![w("a"), w("b a")]).unwrap();
        let cert = factor(&phi, Strategy::Exhaustive, None).unwrap();

        let mut flipped = cert.clone();
        flipped.trace.slides[0].slide.dir = Direction::Left;
        assert!(!verify(&flipped).ok);

        let mut truncated = cert.clone();
        truncated.trace.slides.clear();
        truncated.trace.energies.truncate(1);
        assert!(!verify(&truncated).ok);
    }

    #[test]
    fn boundary_twist_conjugation_factors() {
        // conjugation by the boundary word is a nontrivial mapping class
        let boundary = base1().boundary().clone();
        let conj = |x: &Word| boundary.concat(x).concat(&boundary.invert());
        let phi = Automorphism::new(base1(), alloc::vec![conj(&w("a")), conj(&w("b"))]).unwrap();
        for strategy in [Strategy::Exhaustive, Strategy::Guided] {
            let cert = factor(&phi, strategy, None).unwrap();
            assert!(!cert.trace.is_empty());
            assert!(verify(&cert).ok, "{:?}", verify(&cert).failure);
        }
    }

    #[test]
    fn walk_of_length_zero_is_identity() {
        let phi = random_mapping_class(&base1(), 0, 7).unwrap();
        assert!(phi.is_identity());
    }

    #[test]
    fn walks_are_deterministic_and_factorable() {
        let a = random_mapping_class(&base1(), 12, 42).unwrap();
        let b = random_mapping_class(&base1(), 12, 42).unwrap();
        assert_eq!(a, b);
        let c = random_mapping_class(&base1(), 12, 43).unwrap();
        // different seeds almost surely differ
        assert_ne!(a, c);
        for phi in [a, c] {
            let cert = factor(&phi, Strategy::Guided, None).unwrap();
            assert!(verify(&cert).ok);
        }
    }

    #[test]
    fn composition_factors_and_verifies() {
        let phi = random_mapping_class(&base1(), 6, 1).unwrap();
        let psi = random_mapping_class(&base1(), 6, 2).unwrap();
        let both = phi.compose(&psi).unwrap();
        for f in [&phi, &psi, &both] {
            let cert = factor(f, Strategy::Exhaustive, None).unwrap();
            assert!(verify(&cert).ok);
        }
    }

    #[test]
    fn substitution_applies_letterwise() {
        let phi = Automorphism::new(base1(), alloc::vec![w("a"), w("b a")]).unwrap();
        assert_eq!(phi.apply(&w("b")), w("b a"));
        assert_eq!(phi.apply(&w("B")), w("A B"));
        assert_eq!(phi.apply(&w("b A")), w("b")); // b a A -> b
        assert_eq!(phi.apply(base1().boundary()), *base1().boundary());
    }
}
