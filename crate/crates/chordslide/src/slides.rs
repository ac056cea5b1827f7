//! Chord slides: the elementary moves on marked diagrams.
//!
//! Sliding the end at position `j` over the adjacent chord rewrites the two
//! ends of that chord by a Nielsen transformation and relocates the slid end
//! next to the chord's far end. Writing `u` for the label slid over, `w` for
//! the slid label:
//!
//! * left slide: the near end `u` (at `j-1`) becomes `u w`, the far end
//!   becomes the inverse `w~ u~`, and the slid end lands immediately *left*
//!   of the far end;
//! * right slide: the near end `u` (at `j+1`) becomes `w u`, the far end
//!   becomes `u~ w~`, and the slid end lands immediately *right* of the far
//!   end.
//!
//! The landing side is forced, not chosen: the ordered label product must
//! keep reducing to the boundary word. Writing the positions as
//! `P (u~ at k) M (u) (w) S` for a left slide whose far end sits left of the
//! near end, the successor reads `P (w) (w~ u~) M (u w) S`, which telescopes
//! back to `P u~ M u w S` — the original product. The other three cases
//! (far end right of the slid end, and both right-slide mirrors) telescope
//! the same way, and moving the slid end to any other spot breaks the
//! telescope. Trying the alternative placement on the genus-1 base diagram
//! already changes the product, which is how this rule was pinned down.

use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{MarkedDiagram, Shape};
use crate::error::Error;
use crate::freegroup::{energy, Energy, Word};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Left => "L",
            Direction::Right => "R",
        }
    }

    pub fn parse(s: &str) -> Option<Direction> {
        match s {
            "L" => Some(Direction::Left),
            "R" => Some(Direction::Right),
            _ => None,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One elementary move: slide the end at `pos` (1-based) over the chord on
/// the given side.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Slide {
    /// 1-based position of the slid end, in pre-slide numbering
    pub pos: usize,
    pub dir: Direction,
}

impl Slide {
    pub fn new(pos: usize, dir: Direction) -> Slide {
        Slide { pos, dir }
    }
}

impl fmt::Display for Slide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.pos, self.dir)
    }
}

/// Bookkeeping for replaying and inverting a slide after renumbering.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SlideRecord {
    pub slide: Slide,
    /// 1-based position of the slid end in the successor diagram
    pub landing_pos: usize,
    pub energy_after: Energy,
}

/// All legal slides on `d`, ordered by position with Left before Right.
/// At most `8g - 2` entries: two per end minus the two border exclusions.
pub fn enumerate_slides(d: &MarkedDiagram) -> Vec<Slide> {
    let n = d.num_ends();
    let mut out = Vec::with_capacity(2 * n - 2);
    for pos in 1..=n {
        for dir in [Direction::Left, Direction::Right] {
            let s = Slide::new(pos, dir);
            if check_legal(d, s).is_ok() {
                out.push(s);
            }
        }
    }
    out
}

/// Legality: the slid end must have a neighbor on that side, and that
/// neighbor must not be its own partner.
pub fn check_legal(d: &MarkedDiagram, s: Slide) -> Result<(), Error> {
    let n = d.num_ends();
    if s.pos < 1 || s.pos > n {
        return Err(Error::IllegalSlide { slide: s, reason: "position out of range" });
    }
    let j0 = s.pos - 1;
    match s.dir {
        Direction::Left => {
            if j0 == 0 {
                return Err(Error::IllegalSlide { slide: s, reason: "leftmost end cannot slide left" });
            }
            if d.partner(j0) == j0 - 1 {
                return Err(Error::IllegalSlide { slide: s, reason: "cannot slide over own partner" });
            }
        }
        Direction::Right => {
            if j0 == n - 1 {
                return Err(Error::IllegalSlide { slide: s, reason: "rightmost end cannot slide right" });
            }
            if d.partner(j0) == j0 + 1 {
                return Err(Error::IllegalSlide { slide: s, reason: "cannot slide over own partner" });
            }
        }
    }
    Ok(())
}

/// Apply a slide, returning the successor diagram and the replay record.
/// The record carries the successor's total energy; callers that do not
/// need it (random walks, shape-only work) should use [`apply_slide`],
/// which skips the big-integer arithmetic.
pub fn apply_slide_with_record(
    d: &MarkedDiagram,
    s: Slide,
) -> Result<(MarkedDiagram, SlideRecord), Error> {
    let (successor, landing_pos) = apply_slide_inner(d, s)?;
    let energy_after = successor.energy().total_energy;
    let record = SlideRecord { slide: s, landing_pos, energy_after };
    Ok((successor, record))
}

pub fn apply_slide(d: &MarkedDiagram, s: Slide) -> Result<MarkedDiagram, Error> {
    apply_slide_inner(d, s).map(|(d, _)| d)
}

/// Successor diagram plus the slid end's 1-based landing position, without
/// the energy computation of [`apply_slide_with_record`].
pub fn apply_slide_with_landing(d: &MarkedDiagram, s: Slide) -> Result<(MarkedDiagram, usize), Error> {
    apply_slide_inner(d, s)
}

fn apply_slide_inner(d: &MarkedDiagram, s: Slide) -> Result<(MarkedDiagram, usize), Error> {
    check_legal(d, s)?;
    let n = d.num_ends();
    let j0 = s.pos - 1;
    let near0 = match s.dir {
        Direction::Left => j0 - 1,
        Direction::Right => j0 + 1,
    };
    let far0 = d.partner(near0);
    debug_assert!(far0 != j0 && far0 != near0);

    let slid = d.label(j0);
    let near = d.label(near0);
    let new_near = match s.dir {
        Direction::Left => near.concat(slid),
        Direction::Right => slid.concat(near),
    };
    if new_near.is_identity() {
        return Err(Error::EmptyLabelProduced { position: near0 + 1 });
    }
    let new_far = new_near.invert();

    // Rebuild the order: pull out the slid end, then re-insert it beside the
    // far end on the landing side.
    let mut order: Vec<usize> = (0..n).filter(|&p| p != j0).collect();
    let far_idx = order.iter().position(|&p| p == far0).unwrap();
    let insert_at = match s.dir {
        Direction::Left => far_idx,
        Direction::Right => far_idx + 1,
    };
    order.insert(insert_at, j0);

    let mut new_pos = alloc::vec![0usize; n];
    for (idx, &old) in order.iter().enumerate() {
        new_pos[old] = idx;
    }
    let labels: Vec<Word> = order
        .iter()
        .map(|&old| {
            if old == near0 {
                new_near.clone()
            } else if old == far0 {
                new_far.clone()
            } else {
                d.label(old).clone()
            }
        })
        .collect();
    let pairing: Vec<usize> = order.iter().map(|&old| new_pos[d.partner(old)]).collect();
    let shape = Shape::new(pairing).expect("slide preserves the matching");
    let successor = MarkedDiagram::from_parts_unchecked(d.base_arc().clone(), shape, labels);
    debug_assert_eq!(
        &Word::product_of(successor.labels().iter()),
        d.base().boundary(),
        "slide must preserve the boundary product"
    );

    Ok((successor, insert_at + 1))
}

/// The slide on the successor diagram that undoes a recorded slide: the slid
/// end, now at its landing position, moves back over the same chord.
pub fn inverse_slide(d_before: &MarkedDiagram, rec: &SlideRecord) -> Result<Slide, Error> {
    let (successor, replayed) = apply_slide_with_record(d_before, rec.slide)
        .map_err(|_| Error::InconsistentRecord("recorded slide is not legal on this diagram"))?;
    if &replayed != rec {
        return Err(Error::InconsistentRecord("record does not match the replay"));
    }
    let inv = Slide::new(rec.landing_pos, rec.slide.dir.opposite());
    let restored = apply_slide(&successor, inv)
        .map_err(|_| Error::InconsistentRecord("inverse slide is not legal"))?;
    if &restored != d_before {
        return Err(Error::InconsistentRecord("inverse slide does not restore the diagram"));
    }
    Ok(inv)
}

/// Successor energy of a candidate slide without building the diagram. Only
/// the slid-over chord's pair of labels changes, so the sum is patched from
/// the given per-label energies rather than rescanned.
pub fn slide_energy_patched(
    d: &MarkedDiagram,
    s: Slide,
    label_energies: &[Energy],
    total: &Energy,
) -> Result<Energy, Error> {
    check_legal(d, s)?;
    let j0 = s.pos - 1;
    let near0 = match s.dir {
        Direction::Left => j0 - 1,
        Direction::Right => j0 + 1,
    };
    let far0 = d.partner(near0);
    let slid = d.label(j0);
    let near = d.label(near0);
    let new_near = match s.dir {
        Direction::Left => near.concat(slid),
        Direction::Right => slid.concat(near),
    };
    if new_near.is_identity() {
        return Err(Error::EmptyLabelProduced { position: near0 + 1 });
    }
    let new_far = new_near.invert();
    let base = d.base();
    let patched = total.as_biguint() - label_energies[near0].as_biguint()
        - label_energies[far0].as_biguint()
        + energy(&new_near, base).as_biguint()
        + energy(&new_far, base).as_biguint();
    Ok(Energy::from(patched))
}

/// Successor energy of a candidate slide without keeping the diagram.
pub fn slide_energy(d: &MarkedDiagram, s: Slide) -> Result<Energy, Error> {
    let base = d.base();
    let energies: Vec<Energy> = d.labels().iter().map(|w| energy(w, base)).collect();
    let mut total = Energy::zero();
    for e in &energies {
        total = total + e;
    }
    slide_energy_patched(d, s, &energies, &total)
}

/// Shape-level legality: same rules as [`check_legal`], pairing only.
pub fn shape_slide_legal(pairing: &[usize], s: Slide) -> bool {
    let n = pairing.len();
    if s.pos < 1 || s.pos > n {
        return false;
    }
    let j0 = s.pos - 1;
    match s.dir {
        Direction::Left => j0 > 0 && pairing[j0] != j0 - 1,
        Direction::Right => j0 < n - 1 && pairing[j0] != j0 + 1,
    }
}

/// Apply a slide to a bare pairing: the position permutation without the
/// label rewrites. Returns `None` on an illegal slide.
pub fn shape_slide(pairing: &[usize], s: Slide) -> Option<Vec<usize>> {
    if !shape_slide_legal(pairing, s) {
        return None;
    }
    let n = pairing.len();
    let j0 = s.pos - 1;
    let near0 = match s.dir {
        Direction::Left => j0 - 1,
        Direction::Right => j0 + 1,
    };
    let far0 = pairing[near0];
    let mut order: Vec<usize> = (0..n).filter(|&p| p != j0).collect();
    let far_idx = order.iter().position(|&p| p == far0).unwrap();
    let insert_at = match s.dir {
        Direction::Left => far_idx,
        Direction::Right => far_idx + 1,
    };
    order.insert(insert_at, j0);
    let mut new_pos = alloc::vec![0usize; n];
    for (idx, &old) in order.iter().enumerate() {
        new_pos[old] = idx;
    }
    Some(order.iter().map(|&old| new_pos[pairing[old]]).collect())
}

/// Breadth-first search in the shape graph: a shortest slide sequence
/// carrying `from` to `to`, exploring at most `node_budget` shapes.
/// Deterministic: moves are tried in enumeration order.
pub fn shape_path(from: &[usize], to: &[usize], node_budget: usize) -> Option<Vec<Slide>> {
    use alloc::collections::{BTreeMap, VecDeque};
    if from == to {
        return Some(Vec::new());
    }
    let n = from.len();
    let mut parent: BTreeMap<Vec<usize>, (Vec<usize>, Slide)> = BTreeMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(from.to_vec());
    let mut visited = 1usize;
    while let Some(cur) = queue.pop_front() {
        for pos in 1..=n {
            for dir in [Direction::Left, Direction::Right] {
                let s = Slide::new(pos, dir);
                let Some(next) = shape_slide(&cur, s) else {
                    continue;
                };
                if next == to {
                    let mut path = alloc::vec![s];
                    let mut back = cur.clone();
                    while back != from {
                        let (prev, ps) = parent.remove(&back).unwrap();
                        path.push(ps);
                        back = prev;
                    }
                    path.reverse();
                    return Some(path);
                }
                if next != from && !parent.contains_key(&next) {
                    parent.insert(next.clone(), (cur.clone(), s));
                    visited += 1;
                    if visited > node_budget {
                        return None;
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    None
}
