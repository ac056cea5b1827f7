//! Algebraic properties of words, the energy order, and the prefix-swap
//! inequality that drives the balanced-end case of the reduction.

use std::collections::HashMap;
use std::sync::Arc;

use chordslide::freegroup::{energy, left_cancellation, Basepoint, Energy, Letter, Word};

use num_bigint::BigUint;
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

fn random_reduced(rng: &mut ChaCha8Rng, genus: usize, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let idx = (rng.next_u64() % (2 * genus as u64)) as usize + 1;
        let inv = rng.next_u64() % 2 == 1;
        let l = Letter::new(idx, inv);
        if letters.last() == Some(&l.inverse()) {
            continue;
        }
        letters.push(l);
    }
    let w = Word::from_letters(letters);
    assert_eq!(w.len(), len);
    w
}

fn letter_strategy(genus: usize) -> impl Strategy<Value = Letter> {
    (1..=2 * genus, proptest::bool::ANY).prop_map(|(i, inv)| Letter::new(i, inv))
}

fn word_strategy(genus: usize, max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(letter_strategy(genus), 0..=max_len).prop_map(Word::from_letters)
}

proptest! {
    #[test]
    fn reduce_is_idempotent(w in word_strategy(2, 24)) {
        let again = Word::from_letters(w.letters().iter().copied());
        prop_assert_eq!(&again, &w);
    }

    #[test]
    fn identity_is_neutral(w in word_strategy(2, 24)) {
        prop_assert_eq!(&w.concat(&Word::identity()), &w);
        prop_assert_eq!(&Word::identity().concat(&w), &w);
    }

    #[test]
    fn concat_is_associative(
        u in word_strategy(2, 16),
        v in word_strategy(2, 16),
        w in word_strategy(2, 16),
    ) {
        prop_assert_eq!(u.concat(&v).concat(&w), u.concat(&v.concat(&w)));
    }

    #[test]
    fn inversion_laws(u in word_strategy(2, 20), v in word_strategy(2, 20)) {
        prop_assert_eq!(u.invert().invert(), u.clone());
        prop_assert_eq!(u.concat(&u.invert()), Word::identity());
        prop_assert_eq!(u.concat(&v).invert(), v.invert().concat(&u.invert()));
    }

    #[test]
    fn concat_length_bounds(u in word_strategy(2, 20), v in word_strategy(2, 20)) {
        let uv = u.concat(&v);
        prop_assert!(uv.len() <= u.len() + v.len());
        prop_assert_eq!((u.len() + v.len()) % 2, uv.len() % 2);
    }

    #[test]
    fn cancellation_matches_length_formula(u in word_strategy(2, 20), v in word_strategy(2, 20)) {
        let uv = u.concat(&v);
        prop_assert_eq!(2 * left_cancellation(&u, &v), u.len() + v.len() - uv.len());
    }
}

#[test]
fn radix_bounds_and_length_monotonicity() {
    for genus in 1..=3 {
        let base = Basepoint::standard(genus);
        let radix = BigUint::from(base.radix() as u32);
        let mut rng = ChaCha8Rng::seed_from_u64(genus as u64);
        let mut prev: Option<(usize, Energy)> = None;
        for _ in 0..10_000 / 3 {
            let len = (rng.next_u64() % 12 + 1) as usize;
            let w = random_reduced(&mut rng, genus, len);
            let e = energy(&w, &base);
            let lower = radix.pow(len as u32 - 1);
            let upper = radix.pow(len as u32);
            assert!(&lower <= e.as_biguint() && e.as_biguint() < &upper);
            if let Some((plen, pe)) = prev.take() {
                if plen < len {
                    assert!(pe < e);
                } else if len < plen {
                    assert!(e < pe);
                }
            }
            prev = Some((len, e));
        }
    }
}

#[test]
fn energy_is_injective_on_reduced_words() {
    let base = Basepoint::standard(2);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut seen: HashMap<Vec<u8>, Word> = HashMap::new();
    for _ in 0..10_000 {
        let len = (rng.next_u64() % 10 + 1) as usize;
        let w = random_reduced(&mut rng, 2, len);
        let key = energy(&w, &base).as_biguint().to_bytes_le();
        if let Some(other) = seen.get(&key) {
            assert_eq!(other, &w, "two words with equal energy");
        } else {
            seen.insert(key, w);
        }
    }
}

/// Replacing the length-m prefix `q` of a reduced word `q x` (|q| <= |x|) by
/// any `p` with smaller energy lowers the combined energy of the word and
/// its inverse, even when `p x` cancels. This is the inequality behind the
/// balanced-end slide rule; the acceptance suite reruns it at volume.
#[test]
fn prefix_swap_inequality() {
    let base = Arc::new(Basepoint::standard(1));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 10_000 {
        let qlen = (rng.next_u64() % 4 + 1) as usize;
        let q = random_reduced(&mut rng, 1, qlen);
        let plen = (rng.next_u64() % (qlen as u64 + 1)) as usize;
        let p = random_reduced(&mut rng, 1, plen);
        if energy(&p, &base) >= energy(&q, &base) {
            continue;
        }
        let xlen = qlen + (rng.next_u64() % 4) as usize;
        let x = random_reduced(&mut rng, 1, xlen);
        if left_cancellation(&q, &x) != 0 {
            continue; // q x must be reduced as written
        }
        let lhs = energy(&p.concat(&x), &base)
            + &energy(&x.invert().concat(&p.invert()), &base);
        let rhs = energy(&q.concat(&x), &base)
            + &energy(&x.invert().concat(&q.invert()), &base);
        assert!(
            lhs < rhs,
            "prefix swap failed: p={p:?} q={q:?} x={x:?}"
        );
        checked += 1;
    }
}
