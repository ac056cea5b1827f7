//! Free-group words, basepoints, and the length and energy functions.
//!
//! Everything downstream works with *reduced* words over the `2g` generators
//! of the fundamental group of a genus-`g` surface with one boundary
//! component. [`Word`] maintains free reduction as an invariant, so equality
//! of words is equality in the group.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::num::NonZeroI32;

use num_bigint::BigUint;

use crate::error::Error;
use crate::fatgraph;

/// One letter: a generator `s_i` (`1 <= i <= 2g`) or its inverse.
///
/// Encoded as a nonzero integer, positive for the generator and negative for
/// the inverse, so inversion is negation. The ambient genus is not stored;
/// range checks happen where a [`Basepoint`] is in scope.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(NonZeroI32);

impl Letter {
    /// Letter for generator `index` (1-based), inverted if `inverse`.
    pub fn new(index: usize, inverse: bool) -> Letter {
        assert!(index >= 1 && index <= i32::MAX as usize, "generator index out of range");
        let raw = if inverse { -(index as i32) } else { index as i32 };
        Letter(NonZeroI32::new(raw).unwrap())
    }

    /// 1-based generator index.
    pub fn index(self) -> usize {
        self.0.get().unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0.get() < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(NonZeroI32::new(-self.0.get()).unwrap())
    }

    /// Dense code in `0..4g`, used for lookup tables.
    pub fn code(self) -> usize {
        (self.index() - 1) * 2 + usize::from(self.is_inverse())
    }

    /// Token in the word text format: `a`/`b` names with a 1-based subscript,
    /// uppercase for inverses. Genus 1 uses the bare `a, b, A, B` shorthand.
    pub fn token(self, genus: usize) -> String {
        let idx = self.index();
        let (name, sub) = if idx % 2 == 1 { ('a', idx / 2 + 1) } else { ('b', idx / 2) };
        let name = if self.is_inverse() { name.to_ascii_uppercase() } else { name };
        if genus == 1 {
            let mut s = String::new();
            s.push(name);
            s
        } else {
            let mut s = String::new();
            s.push(name);
            s.push_str(itoa(sub).as_str());
            s
        }
    }

    /// Parse a single letter token. The bare names `a, b, A, B` mean
    /// subscript 1 at any genus.
    pub fn parse(token: &str, genus: usize) -> Result<Letter, Error> {
        let mut chars = token.chars();
        let head = chars.next().ok_or(Error::InvalidBasepoint(String::from("empty letter token")))?;
        let rest = chars.as_str();
        let sub: usize = if rest.is_empty() {
            1
        } else {
            rest.parse()
                .map_err(|_| Error::InvalidBasepoint(format_bad_token(token)))?
        };
        let (base, inverse) = match head {
            'a' => (true, false),
            'A' => (true, true),
            'b' => (false, false),
            'B' => (false, true),
            _ => return Err(Error::InvalidBasepoint(format_bad_token(token))),
        };
        if sub == 0 {
            return Err(Error::InvalidBasepoint(format_bad_token(token)));
        }
        let index = if base { 2 * sub - 1 } else { 2 * sub };
        if index > 2 * genus {
            return Err(Error::LetterOutOfRange { index: index as u32, genus: genus as u32 });
        }
        Ok(Letter::new(index, inverse))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token(0))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token(0))
    }
}

fn format_bad_token(token: &str) -> String {
    let mut s = String::from("bad letter token `");
    s.push_str(token);
    s.push('`');
    s
}

fn itoa(mut n: usize) -> String {
    let mut buf = [0u8; 20];
    let mut i = buf.len();
    loop {
        i -= 1;
        buf[i] = b'0' + (n % 10) as u8;
        n /= 10;
        if n == 0 {
            break;
        }
    }
    String::from_utf8_lossy(&buf[i..]).into_owned()
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Word {
        Word { letters: Vec::new() }
    }

    pub fn single(letter: Letter) -> Word {
        Word { letters: alloc::vec![letter] }
    }

    /// Free reduction of an arbitrary letter sequence. Idempotent: feeding a
    /// reduced word back in returns it unchanged.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word { letters: stack }
    }

    /// The reduced product `self * other`. Only the junction can cancel, so
    /// this is linear in the cancelled length.
    pub fn concat(&self, other: &Word) -> Word {
        let cut = cancellation(self, other);
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * cut);
        letters.extend_from_slice(&self.letters[..self.len() - cut]);
        letters.extend_from_slice(&other.letters[cut..]);
        Word { letters }
    }

    pub fn invert(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Word length `|w|`; the identity has length 0.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.letters.contains(&letter)
    }

    /// Reduced product of many words with a single left-to-right pass.
    pub fn product_of<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Word {
        let mut stack: Vec<Letter> = Vec::new();
        for w in words {
            for &l in &w.letters {
                if stack.last() == Some(&l.inverse()) {
                    stack.pop();
                } else {
                    stack.push(l);
                }
            }
        }
        Word { letters: stack }
    }

    /// Textual form: whitespace-separated letter tokens, empty for identity.
    pub fn to_token_string(&self, genus: usize) -> String {
        let mut out = String::new();
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&l.token(genus));
        }
        out
    }

    /// Parse the word text format and freely reduce.
    pub fn parse(text: &str, genus: usize) -> Result<Word, Error> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            letters.push(Letter::parse(tok, genus)?);
        }
        Ok(Word::from_letters(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Half the total cancellation when reducing `u * v`: the number of letters
/// of `v` eaten at the junction. Equals the longest common prefix of
/// `u.invert()` and `v`, computed here without materializing the inverse;
/// tests cross-check it against `(|u| + |v| - |uv|) / 2`.
pub fn left_cancellation(u: &Word, v: &Word) -> usize {
    cancellation(u, v)
}

fn cancellation(u: &Word, v: &Word) -> usize {
    let max = u.len().min(v.len());
    let mut k = 0;
    while k < max && u.letters[u.len() - 1 - k] == v.letters[k].inverse() {
        k += 1;
    }
    k
}

/// Energy of a reduced word: the radix-`4g+1` value of its digit string,
/// where the letter at base position `j` has digit `j` and the *first* letter
/// of the word is the most significant digit.
///
/// With digits in `1..=4g` this is a graded lexicographic well-order on
/// reduced words: shorter words always compare below longer ones, and
/// replacing a length-`m` prefix by a lower-energy length-`m` prefix drops
/// the value by at least `(4g+1)^(rest)` while any change confined to the
/// last `k` digits moves it by less than `(4g+1)^k`. The strict-descent
/// argument for slides rests on exactly that pair of bounds.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct Energy(BigUint);

impl Energy {
    pub fn zero() -> Energy {
        Energy(BigUint::default())
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }
}

impl From<BigUint> for Energy {
    fn from(v: BigUint) -> Energy {
        Energy(v)
    }
}

impl From<u32> for Energy {
    fn from(v: u32) -> Energy {
        Energy(BigUint::from(v))
    }
}

impl core::ops::Add<&Energy> for Energy {
    type Output = Energy;
    fn add(self, rhs: &Energy) -> Energy {
        Energy(self.0 + &rhs.0)
    }
}

impl fmt::Display for Energy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Energy of `w` relative to `base`. Panics if `w` uses letters outside the
/// basepoint's alphabet.
pub fn energy(w: &Word, base: &Basepoint) -> Energy {
    let radix = BigUint::from(base.radix() as u32);
    let mut acc = BigUint::default();
    for &l in w.letters() {
        let digit = base.rank(l).expect("letter outside basepoint alphabet");
        acc = acc * &radix + BigUint::from(digit as u32);
    }
    Energy(acc)
}

/// A fixed combinatorial generating sequence: the genus together with the
/// `4g` ordered letters whose product is the boundary word. It induces the
/// length and energy functions and the terminal diagram of the reduction.
#[derive(Clone, PartialEq, Eq)]
pub struct Basepoint {
    genus: usize,
    sigma: Vec<Letter>,
    boundary: Word,
    /// letter code -> 0-based position in `sigma`
    position: Vec<usize>,
    /// 0-based position -> position of the inverse letter
    pairing: Vec<usize>,
}

impl Basepoint {
    /// The standard symplectic basepoint: blocks `b_i a_i B_i A_i` from
    /// `i = g` down to `1`, so the genus-1 sequence is `b a B A`.
    pub fn standard(genus: usize) -> Basepoint {
        assert!(genus >= 1, "genus must be positive");
        let mut sigma = Vec::with_capacity(4 * genus);
        for i in (1..=genus).rev() {
            let a = Letter::new(2 * i - 1, false);
            let b = Letter::new(2 * i, false);
            sigma.push(b);
            sigma.push(a);
            sigma.push(b.inverse());
            sigma.push(a.inverse());
        }
        Basepoint::from_sigma(genus, sigma).expect("standard sequence is valid")
    }

    /// Build and fully validate a basepoint from an explicit letter sequence.
    ///
    /// Checks: right length, indices in range, each of the `4g` letters used
    /// exactly once, the product already reduced, and the induced chord
    /// pairing tracing out a single boundary cycle.
    pub fn from_sigma(genus: usize, sigma: Vec<Letter>) -> Result<Basepoint, Error> {
        if genus == 0 {
            return Err(Error::InvalidBasepoint(String::from("genus must be positive")));
        }
        let n = 4 * genus;
        if sigma.len() != n {
            return Err(Error::InvalidBasepoint(String::from("expected 4g letters")));
        }
        let mut position = alloc::vec![usize::MAX; n];
        for (pos, &l) in sigma.iter().enumerate() {
            if l.index() > 2 * genus {
                return Err(Error::LetterOutOfRange {
                    index: l.index() as u32,
                    genus: genus as u32,
                });
            }
            if position[l.code()] != usize::MAX {
                return Err(Error::InvalidBasepoint(String::from("letter used twice")));
            }
            position[l.code()] = pos;
        }
        // With 4g slots filled injectively, every letter occurs exactly once.
        for j in 1..n {
            if sigma[j] == sigma[j - 1].inverse() {
                return Err(Error::InvalidBasepoint(String::from(
                    "letter product is not reduced",
                )));
            }
        }
        let pairing: Vec<usize> = sigma.iter().map(|l| position[l.inverse().code()]).collect();
        if fatgraph::pairing_boundary_count(&pairing) != 1 {
            return Err(Error::InvalidBasepoint(String::from(
                "chord pairing does not have a single boundary cycle",
            )));
        }
        let boundary = Word { letters: sigma.clone() };
        Ok(Basepoint { genus, sigma, boundary, position, pairing })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Number of chord ends, `4g`.
    pub fn num_ends(&self) -> usize {
        4 * self.genus
    }

    /// Radix of the energy function, `4g + 1`.
    pub fn radix(&self) -> usize {
        4 * self.genus + 1
    }

    /// The ordered basepoint letters.
    pub fn letters(&self) -> &[Letter] {
        &self.sigma
    }

    pub fn letter_at(&self, pos: usize) -> Letter {
        self.sigma[pos]
    }

    /// The boundary word: the (already reduced) product of the letters.
    pub fn boundary(&self) -> &Word {
        &self.boundary
    }

    /// Energy digit of a letter: its 1-based position in the sequence.
    pub fn rank(&self, l: Letter) -> Option<usize> {
        self.position_of(l).map(|p| p + 1)
    }

    /// 0-based position of a letter in the sequence.
    pub fn position_of(&self, l: Letter) -> Option<usize> {
        if l.index() > 2 * self.genus {
            return None;
        }
        Some(self.position[l.code()])
    }

    /// Partner positions of the basepoint chord pairing (0-based).
    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }
}

impl fmt::Debug for Basepoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Basepoint(g={}, {})", self.genus, self.boundary)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text, 1).unwrap()
    }

    #[test]
    fn reduce_cancels_adjacent_inverses() {
        assert_eq!(w("a A b"), w("b"));
        assert_eq!(w("b a B A"), Word::from_letters(w("b a B A").letters().iter().copied()));
        assert_eq!(w("a b B A"), Word::identity());
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w("b a").concat(&w("A b")), w("b b"));
        assert_eq!(w("b").concat(&w("B")), Word::identity());
        assert_eq!(w("b a").concat(&w("a B")), w("b a a B"));
        // cancellation cascades past the first letter pair
        assert_eq!(w("b a").concat(&w("A B")), Word::identity());
    }

    #[test]
    fn concat_length_parity() {
        let u = w("b a B");
        let v = w("b A");
        let uv = u.concat(&v);
        assert!(uv.len() <= u.len() + v.len());
        assert_eq!((u.len() + v.len()) % 2, uv.len() % 2);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("b a").invert(), w("A B"));
        assert_eq!(Word::identity().invert(), Word::identity());
        assert_eq!(w("a B A").invert(), w("a b A"));
        let x = w("b a B a");
        assert_eq!(x.invert().invert(), x);
        assert_eq!(x.concat(&x.invert()), Word::identity());
    }

    #[test]
    fn word_length_examples() {
        assert_eq!(Word::identity().len(), 0);
        assert_eq!(w("b a B A").len(), 4);
        assert_eq!(w("b a").concat(&w("A b")).len(), 2);
    }

    #[test]
    fn standard_basepoint_genus_one() {
        let base = Basepoint::standard(1);
        assert_eq!(base.boundary(), &w("b a B A"));
        assert_eq!(base.pairing(), &[2, 3, 0, 1]);
        assert_eq!(base.rank(Letter::parse("b", 1).unwrap()), Some(1));
        assert_eq!(base.rank(Letter::parse("A", 1).unwrap()), Some(4));
    }

    #[test]
    fn standard_basepoint_higher_genus() {
        for g in 2..=3 {
            let base = Basepoint::standard(g);
            assert_eq!(base.letters().len(), 4 * g);
            assert_eq!(base.boundary().len(), 4 * g);
        }
        let base = Basepoint::standard(2);
        assert_eq!(base.boundary().to_token_string(2), "b2 a2 B2 A2 b1 a1 B1 A1");
    }

    #[test]
    fn energy_digit_rule_and_order() {
        let base = Basepoint::standard(1);
        assert_eq!(energy(&w("b"), &base), Energy::from(1u32));
        assert_eq!(energy(&w("a"), &base), Energy::from(2u32));
        assert_eq!(energy(&w("B"), &base), Energy::from(3u32));
        assert_eq!(energy(&w("A"), &base), Energy::from(4u32));
        // First letter is the most significant digit.
        assert_eq!(energy(&w("b a"), &base), Energy::from(7u32));
        assert_eq!(energy(&w("A B"), &base), Energy::from(23u32));
        assert_eq!(energy(&Word::identity(), &base), Energy::zero());
    }

    #[test]
    fn energy_refines_length() {
        let base = Basepoint::standard(1);
        // max energy at length 2 < min energy at length 3
        assert!(energy(&w("A A"), &base) < energy(&w("b b b"), &base));
    }

    #[test]
    fn left_cancellation_examples() {
        assert_eq!(left_cancellation(&w("b a"), &w("A b")), 1);
        assert_eq!(left_cancellation(&w("b"), &w("B")), 1);
        assert_eq!(left_cancellation(&w("b a"), &w("B a")), 0);
        // mutually inverse words cancel fully
        assert_eq!(left_cancellation(&w("b a"), &w("A B")), 2);
    }

    #[test]
    fn basepoint_rejects_bad_sequences() {
        // wrong multiset
        let bad = alloc::vec![
            Letter::new(1, false),
            Letter::new(1, false),
            Letter::new(2, false),
            Letter::new(2, true),
        ];
        assert!(Basepoint::from_sigma(1, bad).is_err());
        // unreduced product
        let unreduced = Word::parse("b B a A", 1).unwrap(); // reduces to identity
        assert_eq!(unreduced, Word::identity());
        let letters = alloc::vec![
            Letter::parse("b", 1).unwrap(),
            Letter::parse("B", 1).unwrap(),
            Letter::parse("a", 1).unwrap(),
            Letter::parse("A", 1).unwrap(),
        ];
        assert!(matches!(Basepoint::from_sigma(1, letters), Err(Error::InvalidBasepoint(_))));
        // nested pairing: b a A B has a reduction too; use b a B A order swapped to
        // get a nested chord pattern with a reduced product: a b A B
        let letters = alloc::vec![
            Letter::parse("a", 1).unwrap(),
            Letter::parse("b", 1).unwrap(),
            Letter::parse("B", 1).unwrap(),
            Letter::parse("A", 1).unwrap(),
        ];
        // pairing (1,4),(2,3) nested -> three boundary cycles
        assert!(matches!(Basepoint::from_sigma(1, letters), Err(Error::InvalidBasepoint(_))));
    }

    #[test]
    fn tokens_roundtrip() {
        let base = Basepoint::standard(2);
        for &l in base.letters() {
            let tok = l.token(2);
            assert_eq!(Letter::parse(&tok, 2).unwrap(), l);
        }
        // genus-1 shorthand accepted at higher genus
        assert_eq!(Letter::parse("a", 3).unwrap(), Letter::new(1, false));
        assert_eq!(Letter::parse("B2", 3).unwrap(), Letter::new(4, true));
        assert!(Letter::parse("c", 1).is_err());
        assert!(Letter::parse("a0", 1).is_err());
        assert!(Letter::parse("b2", 1).is_err());
    }
}
