//! Energy descent: cancellation analysis, slide selection, and the reduction
//! loop that drives any valid diagram down to the basepoint diagram.
//!
//! Two finders are provided. The exhaustive one tries every legal slide and
//! keeps the best successor; it needs no case analysis and doubles as the
//! correctness oracle. The guided one runs the three-stage analysis that
//! underlies the termination proof: take a length-reducing slide if one
//! exists, otherwise resolve a balanced end by comparing the energies of its
//! halves, otherwise the canonical cancellation scheme is letterwise and the
//! first position still carrying cancelled material slides right. Both
//! strictly decrease the diagram energy on every valid non-terminal state.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::MarkedDiagram;
use crate::error::Error;
use crate::freegroup::{energy, left_cancellation, Energy, Word};
use crate::slides::{
    apply_slide_with_landing, check_legal, enumerate_slides, slide_energy_patched, Direction,
    Slide, SlideRecord,
};

/// Per-position cancellation counts against the neighbors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationProfile {
    /// letters of the label at `j` cancelled against position `j-1`; 0 at the border
    pub left: Vec<usize>,
    /// letters cancelled against position `j+1`; `right[j] == left[j+1]`
    pub right: Vec<usize>,
}

pub fn cancellation_profile(d: &MarkedDiagram) -> CancellationProfile {
    let n = d.num_ends();
    let mut left = vec![0usize; n];
    for j in 1..n {
        left[j] = left_cancellation(d.label(j - 1), d.label(j));
    }
    let mut right = vec![0usize; n];
    right[..n - 1].copy_from_slice(&left[1..]);
    CancellationProfile { left, right }
}

/// One label split by the canonical cancellation scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemePart {
    /// prefix consumed against earlier material
    pub cancelled_left: Word,
    /// the surviving middle block
    pub kept: Word,
    /// suffix consumed by later material
    pub cancelled_right: Word,
}

/// The canonical left-to-right stack scheme: reduce the whole label product
/// with one stack; a letter that annihilates the stack top counts toward its
/// label's cancelled prefix, a letter popped off the stack toward its label's
/// cancelled suffix. Within each label the survivors form one contiguous
/// block, so every label factors as prefix * kept * suffix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationScheme {
    pub parts: Vec<SchemePart>,
}

impl CancellationScheme {
    /// Number of cancelled letter pairs; equals `(sum |c_j| - 4g) / 2` on a
    /// valid diagram.
    pub fn cancelled_pairs(&self) -> usize {
        let total: usize = self
            .parts
            .iter()
            .map(|p| p.cancelled_left.len() + p.cancelled_right.len())
            .sum();
        total / 2
    }

    /// Plain concatenation of the kept blocks, no reduction applied.
    pub fn kept_product(&self) -> Word {
        Word::from_letters(self.parts.iter().flat_map(|p| p.kept.letters().iter().copied()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Fate {
    Kept,
    Prefix,
    Suffix,
}

pub fn cancellation_scheme(d: &MarkedDiagram) -> CancellationScheme {
    let n = d.num_ends();
    let mut fate: Vec<Vec<Fate>> = d.labels().iter().map(|w| vec![Fate::Kept; w.len()]).collect();
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for j in 0..n {
        for (i, &l) in d.label(j).letters().iter().enumerate() {
            if let Some(&(pj, pi)) = stack.last() {
                if d.label(pj).letters()[pi] == l.inverse() {
                    stack.pop();
                    fate[pj][pi] = Fate::Suffix;
                    fate[j][i] = Fate::Prefix;
                    continue;
                }
            }
            stack.push((j, i));
        }
    }
    let parts = (0..n)
        .map(|j| {
            let letters = d.label(j).letters();
            let f = &fate[j];
            let kept_start = f.iter().position(|&x| x != Fate::Prefix).unwrap_or(f.len());
            let kept_end = f.iter().rposition(|&x| x != Fate::Suffix).map_or(kept_start, |p| p + 1);
            debug_assert!(
                f[..kept_start].iter().all(|&x| x == Fate::Prefix)
                    && f[kept_start..kept_end].iter().all(|&x| x == Fate::Kept)
                    && f[kept_end..].iter().all(|&x| x == Fate::Suffix),
                "stack scheme must split each label into prefix/kept/suffix"
            );
            SchemePart {
                cancelled_left: Word::from_letters(letters[..kept_start].iter().copied()),
                kept: Word::from_letters(letters[kept_start..kept_end].iter().copied()),
                cancelled_right: Word::from_letters(letters[kept_end..].iter().copied()),
            }
        })
        .collect();
    CancellationScheme { parts }
}

/// Which stage of the guided analysis produced a slide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GuidedCase {
    /// a slide that strictly shortens the slid-over chord's labels
    ShorterLeft,
    ShorterRight,
    /// a balanced end resolved by comparing the energies of its halves
    BalancedLeft,
    BalancedRight,
    /// the terminal scan: scheme is letterwise, slide the first position
    /// with a cancelled suffix to the right
    TerminalScan,
}

#[derive(Clone, Debug)]
pub struct GuidedChoice {
    pub slide: Slide,
    pub energy_after: Energy,
    pub case: GuidedCase,
}

/// Try every legal slide and return the one with the smallest successor
/// energy, provided it strictly beats the current energy. Ties break toward
/// the smaller position, Left before Right. Returns `Ok(None)` exactly on
/// the basepoint diagram; a valid non-basepoint diagram always has a
/// reducing slide, so coming up empty reports the input as invalid.
pub fn find_slide_exhaustive(d: &MarkedDiagram) -> Result<Option<(Slide, Energy)>, Error> {
    if d.is_basepoint() {
        return Ok(None);
    }
    let (energies, current) = label_energies(d);
    let mut best: Option<(Slide, Energy)> = None;
    for s in enumerate_slides(d) {
        let e = slide_energy_patched(d, s, &energies, &current)?;
        if best.as_ref().map_or(true, |(_, be)| e < *be) {
            best = Some((s, e));
        }
    }
    match best {
        Some((s, e)) if e < current => Ok(Some((s, e))),
        _ => Err(Error::StuckNotAtBasepoint),
    }
}

fn label_energies(d: &MarkedDiagram) -> (Vec<Energy>, Energy) {
    let energies: Vec<Energy> = d.labels().iter().map(|w| energy(w, d.base())).collect();
    let mut total = Energy::zero();
    for e in &energies {
        total = total + e;
    }
    (energies, total)
}

/// The proof-guided finder. Returns `Ok(None)` exactly on the basepoint; on
/// any other valid diagram it returns a slide that strictly decreases the
/// energy, found without trying candidates.
pub fn find_slide_guided(d: &MarkedDiagram) -> Result<Option<GuidedChoice>, Error> {
    if d.is_basepoint() {
        return Ok(None);
    }
    let n = d.num_ends();
    let profile = cancellation_profile(d);

    for j0 in 0..n {
        let len = d.label(j0).len();
        if 2 * profile.left[j0] > len {
            return finish(d, Slide::new(j0 + 1, Direction::Left), GuidedCase::ShorterLeft);
        }
        if 2 * profile.right[j0] > len {
            return finish(d, Slide::new(j0 + 1, Direction::Right), GuidedCase::ShorterRight);
        }
    }

    for j0 in 0..n {
        let len = d.label(j0).len();
        if len % 2 == 0 && 2 * profile.left[j0] == len && 2 * profile.right[j0] == len {
            let letters = d.label(j0).letters();
            let front = Word::from_letters(letters[..len / 2].iter().copied());
            let back_inv = Word::from_letters(letters[len / 2..].iter().copied()).invert();
            if front == back_inv {
                return Err(Error::GuidedInvariantViolated("balanced end with equal halves"));
            }
            let (dir, case) = if energy(&front, d.base()) < energy(&back_inv, d.base()) {
                (Direction::Right, GuidedCase::BalancedRight)
            } else {
                (Direction::Left, GuidedCase::BalancedLeft)
            };
            return finish(d, Slide::new(j0 + 1, dir), case);
        }
    }

    let scheme = cancellation_scheme(d);
    for (j0, part) in scheme.parts.iter().enumerate() {
        if part.kept.is_identity() {
            return Err(Error::GuidedInvariantViolated("scheme gap without a balanced end"));
        }
        if part.kept.letters() != [d.base().letter_at(j0)] {
            return Err(Error::GuidedInvariantViolated("scheme kept blocks are not letterwise"));
        }
    }
    let j0 = scheme
        .parts
        .iter()
        .position(|p| !p.cancelled_right.is_identity())
        .ok_or(Error::GuidedInvariantViolated("letterwise scheme on a non-basepoint diagram"))?;
    debug_assert_eq!(scheme.parts[j0].cancelled_right.len(), 1);
    finish(d, Slide::new(j0 + 1, Direction::Right), GuidedCase::TerminalScan)
}

fn finish(d: &MarkedDiagram, slide: Slide, case: GuidedCase) -> Result<Option<GuidedChoice>, Error> {
    check_legal(d, slide).map_err(|_| Error::GuidedInvariantViolated("chosen slide is illegal"))?;
    let (energies, current) = label_energies(d);
    let energy_after = slide_energy_patched(d, slide, &energies, &current)?;
    if energy_after >= current {
        return Err(Error::GuidedInvariantViolated("chosen slide does not decrease energy"));
    }
    Ok(Some(GuidedChoice { slide, energy_after, case }))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Exhaustive,
    Guided,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::Guided => "guided",
        }
    }

    pub fn parse(s: &str) -> Option<Strategy> {
        match s {
            "exhaustive" => Some(Strategy::Exhaustive),
            "guided" => Some(Strategy::Guided),
            _ => None,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The factorization certificate payload: the slides taken and the energy of
/// every state along the way, strictly decreasing to the basepoint's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub strategy: Strategy,
    /// one entry per state; `energies[0]` is the input diagram's energy
    pub energies: Vec<Energy>,
    pub slides: Vec<SlideRecord>,
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.slides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slides.is_empty()
    }

    pub fn initial_energy(&self) -> &Energy {
        &self.energies[0]
    }

    pub fn final_energy(&self) -> &Energy {
        self.energies.last().unwrap()
    }
}

/// Iterate the chosen finder until the basepoint diagram is reached.
/// Terminates on any valid input because the recorded energies are a
/// strictly decreasing sequence of nonnegative integers; `max_steps` is an
/// optional safety cap, off by default.
pub fn reduce_to_basepoint(
    d: &MarkedDiagram,
    strategy: Strategy,
    max_steps: Option<usize>,
) -> Result<ReductionTrace, Error> {
    let mut cur = d.clone();
    let mut energies = vec![cur.energy().total_energy];
    let mut slides: Vec<SlideRecord> = Vec::new();
    loop {
        let choice = match strategy {
            Strategy::Exhaustive => find_slide_exhaustive(&cur)?,
            Strategy::Guided => find_slide_guided(&cur)?.map(|c| (c.slide, c.energy_after)),
        };
        let Some((s, energy_after)) = choice else {
            break;
        };
        if let Some(cap) = max_steps {
            if slides.len() >= cap {
                return Err(Error::StepLimitExceeded { limit: cap });
            }
        }
        let (next, landing_pos) = apply_slide_with_landing(&cur, s)?;
        debug_assert!(&energy_after < energies.last().unwrap());
        energies.push(energy_after.clone());
        slides.push(SlideRecord { slide: s, landing_pos, energy_after });
        cur = next;
    }
    Ok(ReductionTrace { strategy, energies, slides })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Shape;
    use crate::freegroup::Basepoint;
    use alloc::sync::Arc;

    fn base1() -> Arc<Basepoint> {
        Arc::new(Basepoint::standard(1))
    }

    fn w(text: &str) -> Word {
        Word::parse(text, 1).unwrap()
    }

    fn twist() -> MarkedDiagram {
        MarkedDiagram::from_images(base1(), &[w("a"), w("b a")]).unwrap()
    }

    #[test]
    fn profile_of_twist() {
        let p = cancellation_profile(&twist());
        assert_eq!(p.left, vec![0, 0, 1, 0]);
        assert_eq!(p.right, vec![0, 1, 0, 0]);
    }

    #[test]
    fn profile_of_basepoint_is_zero() {
        let p = cancellation_profile(&MarkedDiagram::basepoint_diagram(base1()));
        assert_eq!(p.left, vec![0; 4]);
        assert_eq!(p.right, vec![0; 4]);
    }

    #[test]
    fn scheme_of_basepoint_keeps_everything() {
        let scheme = cancellation_scheme(&MarkedDiagram::basepoint_diagram(base1()));
        for (part, &l) in scheme.parts.iter().zip(base1().letters()) {
            assert!(part.cancelled_left.is_identity());
            assert!(part.cancelled_right.is_identity());
            assert_eq!(part.kept, Word::single(l));
        }
        assert_eq!(scheme.cancelled_pairs(), 0);
    }

    #[test]
    fn scheme_of_twist() {
        let d = twist();
        let scheme = cancellation_scheme(&d);
        let kept: Vec<Word> = scheme.parts.iter().map(|p| p.kept.clone()).collect();
        assert_eq!(kept, vec![w("b a"), Word::identity(), w("B"), w("A")]);
        assert_eq!(scheme.cancelled_pairs(), 1);
        assert_eq!(scheme.kept_product(), *d.base().boundary());
        // the second label's single letter is eaten from the right, the
        // third label's first letter from the left
        assert_eq!(scheme.parts[1].cancelled_right, w("a"));
        assert_eq!(scheme.parts[2].cancelled_left, w("A"));
    }

    #[test]
    fn exhaustive_on_twist_picks_the_undoing_slide() {
        let (s, e) = find_slide_exhaustive(&twist()).unwrap().unwrap();
        assert_eq!(s, Slide::new(2, Direction::Right));
        assert_eq!(e, Energy::from(10u32));
    }

    #[test]
    fn exhaustive_on_basepoint_finds_nothing() {
        let d = MarkedDiagram::basepoint_diagram(base1());
        assert!(find_slide_exhaustive(&d).unwrap().is_none());
        assert!(find_slide_guided(&d).unwrap().is_none());
    }

    #[test]
    fn guided_on_twist_uses_the_length_case() {
        let c = find_slide_guided(&twist()).unwrap().unwrap();
        assert_eq!(c.slide, Slide::new(2, Direction::Right));
        assert_eq!(c.case, GuidedCase::ShorterRight);
        assert_eq!(c.energy_after, Energy::from(10u32));
    }

    #[test]
    fn reduce_twist_in_one_slide() {
        for strategy in [Strategy::Exhaustive, Strategy::Guided] {
            let trace = reduce_to_basepoint(&twist(), strategy, None).unwrap();
            assert_eq!(trace.len(), 1);
            assert_eq!(trace.slides[0].slide, Slide::new(2, Direction::Right));
            assert_eq!(trace.energies, vec![Energy::from(36u32), Energy::from(10u32)]);
        }
    }

    #[test]
    fn reduce_basepoint_is_empty() {
        let d = MarkedDiagram::basepoint_diagram(base1());
        let trace = reduce_to_basepoint(&d, Strategy::Exhaustive, None).unwrap();
        assert!(trace.is_empty());
        assert_eq!(trace.energies.len(), 1);
    }

    #[test]
    fn reduce_double_twist() {
        let d = MarkedDiagram::from_images(base1(), &[w("a"), w("b a a")]).unwrap();
        for strategy in [Strategy::Exhaustive, Strategy::Guided] {
            let trace = reduce_to_basepoint(&d, strategy, None).unwrap();
            assert!(!trace.is_empty());
            for pair in trace.energies.windows(2) {
                assert!(pair[1] < pair[0]);
            }
            assert_eq!(trace.final_energy(), &Energy::from(10u32));
        }
    }

    #[test]
    fn step_cap_fires() {
        let d = MarkedDiagram::from_images(base1(), &[w("a"), w("b a a")]).unwrap();
        let err = reduce_to_basepoint(&d, Strategy::Exhaustive, Some(0)).unwrap_err();
        assert!(matches!(err, Error::StepLimitExceeded { limit: 0 }));
    }

    #[test]
    fn stuck_fires_on_an_invalid_diagram() {
        // single-letter labels in the wrong order: not a diagram of any
        // automorphism, and no slide can lower its energy
        let labels = vec![w("a"), w("b"), w("A"), w("B")];
        let shape = Shape::new(vec![2, 3, 0, 1]).unwrap();
        let d = MarkedDiagram::from_parts_unchecked(base1(), shape, labels);
        assert!(!d.validate().is_valid());
        assert!(matches!(find_slide_exhaustive(&d), Err(Error::StuckNotAtBasepoint)));
    }
}
