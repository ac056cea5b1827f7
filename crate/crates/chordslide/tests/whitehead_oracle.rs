//! The fatgraph layer against its diagram-level oracle: translating a chord
//! slide into Whitehead moves must land on the fatgraph of the slid diagram,
//! rooted at the tail. Slides clear of the smoothed rightmost end translate
//! to exactly two moves; fold-touching slides to at most one.

use std::sync::Arc;

use chordslide::diagram::MarkedDiagram;
use chordslide::factor::random_mapping_class;
use chordslide::fatgraph::{from_pairing, slide_whitehead_moves};
use chordslide::freegroup::Basepoint;
use chordslide::slides::{apply_slide, enumerate_slides, Direction, Slide};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

fn walk_states(genus: usize, walks: usize, len: usize, seed: u64) -> Vec<MarkedDiagram> {
    let base = Arc::new(Basepoint::standard(genus));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..walks {
        let mut d = MarkedDiagram::basepoint_diagram(base.clone());
        out.push(d.clone());
        for _ in 0..len {
            let moves = enumerate_slides(&d);
            let s = moves[(rng.next_u64() % moves.len() as u64) as usize];
            d = apply_slide(&d, s).unwrap();
            out.push(d.clone());
        }
    }
    out
}

fn touches_fold(d: &MarkedDiagram, s: Slide) -> bool {
    let n = d.num_ends();
    let j0 = s.pos - 1;
    let near0 = if s.dir == Direction::Left { j0 - 1 } else { j0 + 1 };
    j0 == n - 1 || near0 == n - 1 || d.partner(near0) == n - 1
}

fn check_all(states: &[MarkedDiagram]) -> usize {
    let mut checked = 0;
    for d in states {
        for s in enumerate_slides(d) {
            let tr = slide_whitehead_moves(d, s)
                .unwrap_or_else(|e| panic!("slide {s} on {:?} failed: {e}", d.shape()));
            let successor = apply_slide(d, s).unwrap();
            let target = from_pairing(successor.shape().pairing()).graph;
            assert!(tr.result.isomorphic(&target));
            // returned relabeling really carries result onto target
            let iso = &tr.isomorphism;
            for h in 0..tr.result.num_half_edges() {
                assert_eq!(iso[tr.result.sigma()[h]], target.sigma()[iso[h]]);
                assert_eq!(iso[tr.result.alpha()[h]], target.alpha()[iso[h]]);
            }
            assert_eq!(iso[tr.result.tail_half()], target.tail_half());
            // move-count law
            if touches_fold(d, s) {
                assert!(tr.moves.len() <= 1, "fold slide {s} used {} moves", tr.moves.len());
                let same_vector = successor.shape().pairing() == d.shape().pairing();
                assert_eq!(tr.moves.is_empty(), same_vector);
            } else {
                assert_eq!(tr.moves.len(), 2, "interior slide {s} must use two moves");
            }
            checked += 1;
        }
    }
    checked
}

#[test]
fn every_genus_one_slide_translates() {
    let states = walk_states(1, 3, 6, 11);
    assert!(check_all(&states) > 100);
}

#[test]
fn genus_two_fuzz_matches_oracle() {
    let states = walk_states(2, 12, 10, 23);
    let checked = check_all(&states);
    assert!(checked >= 1000, "only {checked} pairs checked");
}

#[test]
fn whitehead_moves_undo_like_slides() {
    // slide, then the inverse slide: both translate, and the translations
    // land on the respective fatgraphs
    let base = Arc::new(Basepoint::standard(2));
    let phi = random_mapping_class(&base, 8, 5).unwrap();
    let d = phi.to_diagram();
    let start = from_pairing(d.shape().pairing()).graph;
    for s in enumerate_slides(&d) {
        let (succ, rec) = chordslide::slides::apply_slide_with_record(&d, s).unwrap();
        let inv = chordslide::slides::inverse_slide(&d, &rec).unwrap();
        let forward = slide_whitehead_moves(&d, s).unwrap();
        let back = slide_whitehead_moves(&succ, inv).unwrap();
        assert!(forward.result.isomorphic(&from_pairing(succ.shape().pairing()).graph));
        assert!(back.result.isomorphic(&start));
    }
}
