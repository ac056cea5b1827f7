//! Marked linear chord diagrams: the algorithm's state.
//!
//! A diagram is `4g` positions on a line, paired into `2g` chords, each
//! position carrying a nonempty reduced word. Validity means: paired labels
//! are mutually inverse, the ordered label product reduces to the basepoint
//! boundary word, and the chord pairing traces a single boundary cycle.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::fatgraph;
use crate::freegroup::{energy, Basepoint, Energy, Letter, Word};

/// The unlabeled pairing of chord ends.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    /// partner position of each position, 0-based
    pairing: Vec<usize>,
}

impl Shape {
    /// Build from a partner vector; must be a fixed-point-free involution.
    pub fn new(pairing: Vec<usize>) -> Result<Shape, Error> {
        let n = pairing.len();
        if n < 4 || n % 2 != 0 {
            return Err(Error::InvalidDiagram(String::from("need 4g positions")));
        }
        for (i, &p) in pairing.iter().enumerate() {
            if p >= n || p == i || pairing[p] != i {
                return Err(Error::InvalidDiagram(String::from("pairing is not a perfect matching")));
            }
        }
        Ok(Shape { pairing })
    }

    pub fn num_ends(&self) -> usize {
        self.pairing.len()
    }

    pub fn partner(&self, pos: usize) -> usize {
        self.pairing[pos]
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    /// True when the induced fatgraph has a single boundary cycle, i.e. the
    /// shape is that of a genus-`g` diagram.
    pub fn is_unicellular(&self) -> bool {
        fatgraph::pairing_boundary_count(&self.pairing) == 1
    }

    /// Chords as position pairs `(l, r)` with `l < r`, ascending.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        (0..self.pairing.len())
            .filter(|&i| i < self.pairing[i])
            .map(|i| (i, self.pairing[i]))
            .collect()
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Shape{:?}", self.chords())
    }
}

/// Outcome of one validity check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

/// Report-style validation result; a diagram passing all checks is accepted
/// by every other operation.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.ok)
    }
}

/// Total length and total energy of a diagram.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramEnergy {
    pub total_length: usize,
    pub total_energy: Energy,
}

/// A positioned, paired, word-labeled chord diagram.
#[derive(Clone, PartialEq, Eq)]
pub struct MarkedDiagram {
    base: Arc<Basepoint>,
    shape: Shape,
    labels: Vec<Word>,
}

impl MarkedDiagram {
    /// The terminal diagram of the basepoint itself: single-letter labels,
    /// chords pairing each generator with its inverse.
    pub fn basepoint_diagram(base: Arc<Basepoint>) -> MarkedDiagram {
        let labels = base.letters().iter().map(|&l| Word::single(l)).collect();
        let shape = Shape { pairing: base.pairing().to_vec() };
        MarkedDiagram { base, shape, labels }
    }

    /// Diagram of an automorphism given by generator images: position `j`
    /// carries the image of the `j`-th basepoint letter, and the pairing is
    /// inherited from the basepoint. The boundary-product check here is the
    /// boundary-fixing validation.
    pub fn from_images(base: Arc<Basepoint>, images: &[Word]) -> Result<MarkedDiagram, Error> {
        if images.len() != 2 * base.genus() {
            return Err(Error::InvalidDiagram(String::from("expected one image per generator")));
        }
        for (i, w) in images.iter().enumerate() {
            if w.is_identity() {
                return Err(Error::IdentityImage {
                    which: Letter::new(i + 1, false).token(base.genus()),
                });
            }
        }
        let labels: Vec<Word> = base
            .letters()
            .iter()
            .map(|&l| {
                let img = &images[l.index() - 1];
                if l.is_inverse() {
                    img.invert()
                } else {
                    img.clone()
                }
            })
            .collect();
        let product = Word::product_of(labels.iter());
        if &product != base.boundary() {
            return Err(Error::BoundaryNotFixed {
                expected: base.boundary().to_token_string(base.genus()),
                got: product.to_token_string(base.genus()),
            });
        }
        let shape = Shape { pairing: base.pairing().to_vec() };
        Ok(MarkedDiagram { base, shape, labels })
    }

    /// Assemble from parts and validate.
    pub fn from_parts(
        base: Arc<Basepoint>,
        shape: Shape,
        labels: Vec<Word>,
    ) -> Result<MarkedDiagram, Error> {
        let d = MarkedDiagram { base, shape, labels };
        let report = d.validate();
        if let Some(fail) = report.first_failure() {
            let mut msg = String::from(fail.name);
            msg.push_str(": ");
            msg.push_str(&fail.detail);
            return Err(Error::InvalidDiagram(msg));
        }
        Ok(d)
    }

    /// Assemble without validation. For file loaders and tests that validate
    /// separately; the algorithms assume validity.
    pub fn from_parts_unchecked(base: Arc<Basepoint>, shape: Shape, labels: Vec<Word>) -> MarkedDiagram {
        MarkedDiagram { base, shape, labels }
    }

    pub fn base(&self) -> &Basepoint {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<Basepoint> {
        &self.base
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn labels(&self) -> &[Word] {
        &self.labels
    }

    pub fn label(&self, pos: usize) -> &Word {
        &self.labels[pos]
    }

    pub fn num_ends(&self) -> usize {
        self.labels.len()
    }

    pub fn partner(&self, pos: usize) -> usize {
        self.shape.partner(pos)
    }

    /// Check every diagram invariant, reporting each separately.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let n = self.base.num_ends();
        let genus = self.base.genus();

        let sized = self.labels.len() == n && self.shape.num_ends() == n;
        checks.push(Check {
            name: "arity",
            ok: sized,
            detail: String::from("4g labels and 4g paired positions"),
        });
        if !sized {
            return ValidationReport { checks };
        }

        let no_identity = self.labels.iter().all(|w| !w.is_identity());
        checks.push(Check {
            name: "labels-nonempty",
            ok: no_identity,
            detail: String::from("no label reduces to the identity"),
        });

        let mut inverse_pairs = true;
        let mut detail = String::from("paired labels are mutually inverse");
        for (l, r) in self.shape.chords() {
            if self.labels[l].invert() != self.labels[r] {
                inverse_pairs = false;
                detail = alloc::format!(
                    "positions {} and {} carry `{}` and `{}`",
                    l + 1,
                    r + 1,
                    self.labels[l].to_token_string(genus),
                    self.labels[r].to_token_string(genus)
                );
                break;
            }
        }
        checks.push(Check { name: "pair-inverse", ok: inverse_pairs, detail });

        let product = Word::product_of(self.labels.iter());
        let boundary_ok = &product == self.base.boundary();
        checks.push(Check {
            name: "boundary-product",
            ok: boundary_ok,
            detail: alloc::format!("label product reduces to `{}`", product.to_token_string(genus)),
        });

        let adjacent_free = (1..n).all(|j| self.shape.partner(j) != j - 1);
        checks.push(Check {
            name: "no-adjacent-partners",
            ok: adjacent_free,
            detail: String::from("no chord joins consecutive positions"),
        });

        let unicellular = self.shape.is_unicellular();
        checks.push(Check {
            name: "one-boundary-cycle",
            ok: unicellular,
            detail: String::from("chord pairing traces a single boundary cycle"),
        });

        ValidationReport { checks }
    }

    /// Componentwise length and energy sums.
    pub fn energy(&self) -> DiagramEnergy {
        let total_length = self.labels.iter().map(|w| w.len()).sum();
        let mut total = Energy::zero();
        for w in &self.labels {
            total = total + &energy(w, &self.base);
        }
        DiagramEnergy { total_length, total_energy: total }
    }

    /// True iff every position carries exactly its basepoint letter.
    pub fn is_basepoint(&self) -> bool {
        self.shape.pairing() == self.base.pairing()
            && self
                .labels
                .iter()
                .zip(self.base.letters())
                .all(|(w, &l)| w.letters() == [l])
    }

    /// Read generator images off a diagram whose shape equals the basepoint
    /// shape: the image of generator `i` is the label at the position where
    /// the basepoint carries the positive letter. Returns `None` when the
    /// shape differs.
    pub fn images_at_basepoint_shape(&self) -> Option<Vec<Word>> {
        if self.shape.pairing() != self.base.pairing() {
            return None;
        }
        let g = self.base.genus();
        let mut images = Vec::with_capacity(2 * g);
        for i in 1..=2 * g {
            let pos = self.base.position_of(Letter::new(i, false))?;
            images.push(self.labels[pos].clone());
        }
        Some(images)
    }
}

impl fmt::Debug for MarkedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram{:?}[", self.shape.chords())?;
        for (i, w) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}
