//! Brute-force census of chord-end pairings: counts by boundary-cycle
//! number, cross-checked by two independently written boundary tracers (the
//! gap walk on the pairing and the orbit count of the bordered fatgraph).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use chordslide::fatgraph::{from_pairing, pairing_boundary_count, pairing_genus};

pub struct CensusReport {
    pub genus: usize,
    pub total: usize,
    /// boundary-cycle count -> (diagram genus, number of pairings)
    pub rows: BTreeMap<usize, (usize, usize)>,
    pub tracers_agree: bool,
}

impl CensusReport {
    pub fn unicellular(&self) -> usize {
        self.rows.get(&1).map_or(0, |&(_, count)| count)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "genus {}", self.genus).unwrap();
        writeln!(out, "pairings {}", self.total).unwrap();
        for (b, (g, count)) in &self.rows {
            writeln!(out, "boundary_cycles {b}: {count} pairings (diagram genus {g})").unwrap();
        }
        writeln!(out, "unicellular {}", self.unicellular()).unwrap();
        writeln!(out, "tracer_agreement {}", if self.tracers_agree { "ok" } else { "MISMATCH" })
            .unwrap();
        out
    }
}

fn enumerate_pairings(n: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(pairing: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        let Some(first) = pairing.iter().position(|&p| p == usize::MAX) else {
            visit(pairing);
            return;
        };
        for partner in first + 1..pairing.len() {
            if pairing[partner] != usize::MAX {
                continue;
            }
            pairing[first] = partner;
            pairing[partner] = first;
            rec(pairing, visit);
            pairing[first] = usize::MAX;
            pairing[partner] = usize::MAX;
        }
    }
    let mut pairing = vec![usize::MAX; n];
    rec(&mut pairing, &mut visit);
}

/// Count all `(4g-1)!!` pairings of `4g` chord ends by boundary-cycle
/// number, tracing each pairing twice.
pub fn run_census(genus: usize) -> CensusReport {
    let n = 4 * genus;
    let mut rows: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut total = 0usize;
    let mut tracers_agree = true;
    enumerate_pairings(n, |pairing| {
        total += 1;
        let by_gaps = pairing_boundary_count(pairing);
        let by_orbits = from_pairing(pairing).graph.boundary_count();
        if by_gaps != by_orbits {
            tracers_agree = false;
        }
        let g = pairing_genus(pairing);
        let entry = rows.entry(by_gaps).or_insert((g, 0));
        debug_assert_eq!(entry.0, g);
        entry.1 += 1;
    });
    CensusReport { genus, total, rows, tracers_agree }
}
