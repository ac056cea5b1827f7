//! Bordered fatgraphs: boundary cycles, genus, Whitehead moves, and the
//! translation of a chord slide into a pair of Whitehead moves.
//!
//! A fatgraph is stored as a combinatorial map on half-edges: `sigma` sends a
//! half-edge to the next one counterclockwise around its vertex, `alpha` to
//! the opposite half of the same edge. Vertices are the `sigma` orbits, edges
//! the `alpha` orbits, and boundary cycles the orbits of `alpha . sigma`.
//! Whitehead moves only rewrite `sigma`, so edge identities (and the `alpha`
//! table) are stable across moves.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::MarkedDiagram;
use crate::error::Error;
use crate::slides::{self, Direction, Slide};

/// Edge identifier: the smaller of an edge's two half-edge ids. Stable across
/// Whitehead moves.
pub type EdgeId = usize;

/// A Whitehead move: collapse the named non-tail edge and expand the
/// resulting 4-valent vertex in the unique opposite way.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WhiteheadMove {
    pub edge: EdgeId,
}

/// A fatgraph with one univalent vertex whose incident edge is the tail; all
/// other vertices of interest here are trivalent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BorderedFatgraph {
    /// next half-edge counterclockwise at the same vertex
    sigma: Vec<usize>,
    /// opposite half of the same edge; a fixed-point-free involution
    alpha: Vec<usize>,
    /// the half-edge at the univalent vertex
    tail_half: usize,
}

impl BorderedFatgraph {
    pub fn from_parts(sigma: Vec<usize>, alpha: Vec<usize>, tail_half: usize) -> Result<Self, Error> {
        let n = sigma.len();
        if alpha.len() != n || tail_half >= n {
            return Err(Error::InvalidDiagram(String::from("fatgraph tables have mismatched sizes")));
        }
        let mut seen = vec![false; n];
        for (h, &s) in sigma.iter().enumerate() {
            if s >= n || alpha[h] >= n || alpha[h] == h || alpha[alpha[h]] != h {
                return Err(Error::InvalidDiagram(String::from("bad fatgraph permutations")));
            }
            if seen[s] {
                return Err(Error::InvalidDiagram(String::from("sigma is not a permutation")));
            }
            seen[s] = true;
        }
        if sigma[tail_half] != tail_half {
            return Err(Error::InvalidDiagram(String::from("tail half-edge is not univalent")));
        }
        let g = BorderedFatgraph { sigma, alpha, tail_half };
        if !g.is_connected() {
            return Err(Error::InvalidDiagram(String::from("fatgraph is not connected")));
        }
        Ok(g)
    }

    pub fn num_half_edges(&self) -> usize {
        self.sigma.len()
    }

    pub fn num_edges(&self) -> usize {
        self.sigma.len() / 2
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices().len()
    }

    pub fn tail_half(&self) -> usize {
        self.tail_half
    }

    /// The tail edge's id.
    pub fn tail_edge(&self) -> EdgeId {
        self.edge_of(self.tail_half)
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn edge_of(&self, half: usize) -> EdgeId {
        half.min(self.alpha[half])
    }

    /// Edges as (half, opposite half) with half < opposite, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.sigma.len()).filter(|&h| h < self.alpha[h]).map(|h| (h, self.alpha[h])).collect()
    }

    /// Vertices as cyclic half-edge lists, each rotated to start at its
    /// smallest half and sorted by that half.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        let n = self.sigma.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for h in 0..n {
            if seen[h] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut cur = h;
            loop {
                seen[cur] = true;
                orbit.push(cur);
                cur = self.sigma[cur];
                if cur == h {
                    break;
                }
            }
            out.push(orbit);
        }
        out
    }

    fn orbit_of(&self, h: usize) -> Vec<usize> {
        let mut orbit = vec![h];
        let mut cur = self.sigma[h];
        while cur != h {
            orbit.push(cur);
            cur = self.sigma[cur];
        }
        orbit
    }

    fn is_connected(&self) -> bool {
        let n = self.sigma.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(h) = stack.pop() {
            for next in [self.sigma[h], self.alpha[h]] {
                if !seen[next] {
                    seen[next] = true;
                    count += 1;
                    stack.push(next);
                }
            }
        }
        count == n
    }

    /// Boundary cycles: orbits of `alpha . sigma` over the half-edges. An
    /// oriented edge arriving at a vertex along `h` departs along the next
    /// half-edge in the cyclic order there, i.e. continues at
    /// `alpha(sigma(h))`. Cycles are listed from their smallest half-edge.
    pub fn boundary_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.sigma.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for h in 0..n {
            if seen[h] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = h;
            loop {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.alpha[self.sigma[cur]];
                if cur == h {
                    break;
                }
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary_cycles().len()
    }

    /// Genus from the Euler characteristic: `2 - 2g - b = V - E`.
    pub fn genus(&self) -> usize {
        let chi = self.num_vertices() as i64 - self.num_edges() as i64;
        let b = self.boundary_count() as i64;
        let two_g = 2 - b - chi;
        debug_assert!(two_g >= 0 && two_g % 2 == 0);
        (two_g / 2) as usize
    }

    /// Apply the Whitehead move on `edge`: collapse it and expand the
    /// resulting 4-valent vertex the other way. Only `sigma` changes.
    ///
    /// Doing the move twice on the same edge id returns the original graph
    /// with the moved edge's two half-edges transposed — the same fatgraph,
    /// since the halves of an edge carry no intrinsic orientation. Compare
    /// move results with [`BorderedFatgraph::isomorphic`] (or normalize that
    /// transposition) rather than by raw table equality.
    pub fn whitehead_move(&self, m: WhiteheadMove) -> Result<BorderedFatgraph, Error> {
        let h1 = m.edge;
        if h1 >= self.sigma.len() {
            return Err(Error::InconsistentRecord("no such edge"));
        }
        let h2 = self.alpha[h1];
        if self.edge_of(h1) == self.tail_edge() {
            return Err(Error::TailEdge);
        }
        let u = self.orbit_of(h1);
        if u.contains(&h2) {
            return Err(Error::LoopEdge);
        }
        let v = self.orbit_of(h2);
        if u.len() != 3 || v.len() != 3 {
            return Err(Error::NotTrivalent);
        }
        // Around the collapsed vertex the fans read (a, b, c, d); the
        // opposite expansion separates (b, c) from (d, a).
        let a = self.sigma[h1];
        let b = self.sigma[a];
        let c = self.sigma[h2];
        let d = self.sigma[c];
        let mut sigma = self.sigma.clone();
        sigma[h1] = b;
        sigma[b] = c;
        sigma[c] = h1;
        sigma[h2] = d;
        sigma[d] = a;
        sigma[a] = h2;
        Ok(BorderedFatgraph { sigma, alpha: self.alpha.clone(), tail_half: self.tail_half })
    }

    /// Canonical rooted relabeling: breadth-first from the tail half,
    /// following `sigma` then `alpha`. Returns `(sigma, alpha, relabel)`
    /// where `relabel[old] = new`. Two bordered fatgraphs are isomorphic as
    /// rooted fatgraphs iff their canonical tables agree.
    pub fn canonical_form(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let n = self.sigma.len();
        let mut relabel = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = alloc::collections::VecDeque::new();
        relabel[self.tail_half] = 0;
        order.push(self.tail_half);
        queue.push_back(self.tail_half);
        while let Some(h) = queue.pop_front() {
            for next in [self.sigma[h], self.alpha[h]] {
                if relabel[next] == usize::MAX {
                    relabel[next] = order.len();
                    order.push(next);
                    queue.push_back(next);
                }
            }
        }
        let mut sigma = vec![0; n];
        let mut alpha = vec![0; n];
        for (old, &new) in relabel.iter().enumerate() {
            sigma[new] = relabel[self.sigma[old]];
            alpha[new] = relabel[self.alpha[old]];
        }
        (sigma, alpha, relabel)
    }

    /// Rooted isomorphism test (tail to tail).
    pub fn isomorphic(&self, other: &BorderedFatgraph) -> bool {
        let (s1, a1, _) = self.canonical_form();
        let (s2, a2, _) = other.canonical_form();
        s1 == s2 && a1 == a2
    }
}

/// Number of boundary cycles of the bare linear chord diagram with the given
/// partner vector, traced by walking the gaps of the core.
///
/// This tracer is independent of the permutation machinery above: travelling
/// rightwards along the top of the core in the gap left of position `k`, the
/// walk climbs the chord attached at `k` and resurfaces in the gap just right
/// of the partner; from the rightmost gap it sweeps around the ends and the
/// underside of the core back to the leftmost gap. Every boundary component
/// contains at least one gap traversal, and distinct components give
/// disjoint gap cycles, so counting gap cycles counts boundary cycles.
pub fn pairing_boundary_count(pairing: &[usize]) -> usize {
    let n = pairing.len();
    let mut seen = vec![false; n + 1];
    let mut cycles = 0;
    for start in 0..=n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut cur = start;
        loop {
            seen[cur] = true;
            cur = if cur == n { 0 } else { pairing[cur] + 1 };
            if cur == start {
                break;
            }
        }
    }
    cycles
}

/// Genus of the bare chord diagram with the given partner vector, from its
/// Euler characteristic and the gap tracer's boundary count.
pub fn pairing_genus(pairing: &[usize]) -> usize {
    let n = pairing.len() as i64; // 2 * chords
    let b = pairing_boundary_count(pairing) as i64;
    // chi = V - E = n - (n - 1 + n/2) = 1 - n/2, and 2 - 2g - b = chi
    let two_g = 1 + n / 2 - b;
    debug_assert!(two_g >= 0 && two_g % 2 == 0);
    (two_g / 2) as usize
}

/// The bordered fatgraph of a linear chord diagram together with handles to
/// its role-named edges.
pub struct DiagramFatgraph {
    pub graph: BorderedFatgraph,
    /// core segment between positions `i` and `i+1` (0-based), `i < 4g - 2`
    pub core_edges: Vec<EdgeId>,
    /// chord edge at each position; the chord ending at the last position
    /// maps to the merged edge
    pub chord_edge_at: Vec<EdgeId>,
    pub tail_edge: EdgeId,
}

/// Build the bordered fatgraph of a chord pairing: a tail grows to the left
/// of the first position and the bivalent vertex at the last position is
/// smoothed away, merging the last chord with the final core segment.
pub fn from_pairing(pairing: &[usize]) -> DiagramFatgraph {
    let n = pairing.len();
    assert!(n >= 4 && n % 2 == 0, "need at least two chords");
    for (i, &p) in pairing.iter().enumerate() {
        assert!(p < n && p != i && pairing[p] == i, "not a perfect matching");
    }

    // Half-edge ids: 0,1 tail; then two per core segment; then two per chord
    // in order of left end (the chord touching the last position becomes the
    // merged edge).
    let mut alpha = Vec::new();
    let new_edge = |alpha: &mut Vec<usize>| -> (usize, usize) {
        let h = alpha.len();
        alpha.push(h + 1);
        alpha.push(h);
        (h, h + 1)
    };

    let (tail_at_univalent, tail_at_core) = new_edge(&mut alpha);
    let mut core_right = vec![usize::MAX; n - 1]; // right-pointing half at P_i
    let mut core_left = vec![usize::MAX; n - 1]; // left-pointing half at P_{i+1}
    for i in 0..n - 2 {
        let (r, l) = new_edge(&mut alpha);
        core_right[i] = r;
        core_left[i] = l;
    }
    let mut up = vec![usize::MAX; n]; // chord half attached above position p
    let mut merged_right = usize::MAX; // right-pointing half at P_{n-2} of the merged edge
    let mut chord_edge_at = vec![usize::MAX; n];
    for i in 0..n {
        let p = pairing[i];
        if p < i {
            continue;
        }
        if p == n - 1 {
            let (u, m) = new_edge(&mut alpha);
            up[i] = u;
            merged_right = m;
            chord_edge_at[i] = u.min(m);
            chord_edge_at[p] = u.min(m);
        } else {
            let (ui, upp) = new_edge(&mut alpha);
            up[i] = ui;
            up[p] = upp;
            chord_edge_at[i] = ui.min(upp);
            chord_edge_at[p] = ui.min(upp);
        }
    }
    debug_assert!(merged_right != usize::MAX);

    // Cyclic order at a core vertex, counterclockwise: right, up, left.
    let mut sigma = vec![usize::MAX; alpha.len()];
    let set_vertex = |sigma: &mut Vec<usize>, halves: &[usize]| {
        for k in 0..halves.len() {
            sigma[halves[k]] = halves[(k + 1) % halves.len()];
        }
    };
    set_vertex(&mut sigma, &[tail_at_univalent]);
    for j in 0..n - 1 {
        let right = if j < n - 2 { core_right[j] } else { merged_right };
        let left = if j == 0 { tail_at_core } else { core_left[j - 1] };
        set_vertex(&mut sigma, &[right, up[j], left]);
    }

    let graph = BorderedFatgraph { sigma, alpha, tail_half: tail_at_univalent };
    debug_assert!(graph.is_connected());
    DiagramFatgraph {
        graph,
        core_edges: (0..n - 2).map(|i| core_right[i].min(core_left[i])).collect(),
        chord_edge_at,
        tail_edge: tail_at_univalent.min(tail_at_core),
    }
}

/// Whitehead-move translation of one chord slide, with the replay result and
/// the audited isomorphism onto the slid diagram's own fatgraph.
pub struct SlideWhiteheadMoves {
    /// at most two moves, in application order
    pub moves: Vec<WhiteheadMove>,
    /// fatgraph after applying the moves to the input diagram's fatgraph
    pub result: BorderedFatgraph,
    /// half-edge relabeling carrying `result` onto
    /// `from_pairing(slid diagram)`, tail to tail
    pub isomorphism: Vec<usize>,
}

/// Translate a chord slide into Whitehead moves on the diagram's bordered
/// fatgraph, landing on a fatgraph isomorphic (rooted at the tail) to the
/// fatgraph of the slid diagram; the isomorphism is computed and returned.
///
/// A slide whose cast of positions stays clear of the smoothed rightmost end
/// decomposes as exactly two moves: first the core segment between the slid
/// end and the end slid over (this parks the slid chord on a stalk shared
/// with the traversed chord), then the traversed chord itself (this carries
/// the stalk to the far end). When the slide touches the smoothed end, part
/// of that surgery is invisible to the bordered graph — the fold's bivalent
/// vertex was erased — and the honest translation is shorter:
///
/// * far end at the last position: only the core-segment move (the ride
///   along the chord and over the fold is spine isotopy);
/// * near end at the last position (sliding over the merged chord from the
///   second-to-last position): only the merged-edge move, because the slid
///   chord already shares the fold vertex with the merged edge;
/// * slid end at the last position: only the traversed-chord move;
/// * a fold slide whose successor has the identical pairing vector: no moves
///   at all.
///
/// Exhaustive search over move pairs confirms the short cases are forced:
/// for fold-touching slides there is in general no two-move decomposition.
pub fn slide_whitehead_moves(d: &MarkedDiagram, s: Slide) -> Result<SlideWhiteheadMoves, Error> {
    slides::check_legal(d, s)?;
    let n = d.base().num_ends();
    let j0 = s.pos - 1;
    let near0 = match s.dir {
        Direction::Left => j0 - 1,
        Direction::Right => j0 + 1,
    };
    let far0 = d.shape().partner(near0);
    let successor = slides::apply_slide(d, s)?;
    let fg = from_pairing(d.shape().pairing());

    let touches_fold = j0 == n - 1 || near0 == n - 1 || far0 == n - 1;
    let moves: Vec<WhiteheadMove> = if touches_fold {
        if successor.shape().pairing() == d.shape().pairing() {
            Vec::new()
        } else if far0 == n - 1 {
            vec![WhiteheadMove { edge: fg.core_edges[j0.min(near0)] }]
        } else if near0 == n - 1 {
            vec![WhiteheadMove { edge: fg.chord_edge_at[n - 1] }]
        } else {
            vec![WhiteheadMove { edge: fg.chord_edge_at[near0] }]
        }
    } else {
        vec![
            WhiteheadMove { edge: fg.core_edges[j0.min(near0)] },
            WhiteheadMove { edge: fg.chord_edge_at[near0] },
        ]
    };

    let mut result = fg.graph;
    for &m in &moves {
        result = result.whitehead_move(m)?;
    }

    let target = from_pairing(successor.shape().pairing()).graph;
    let (sr, ar, rel_result) = result.canonical_form();
    let (st, at, rel_target) = target.canonical_form();
    if sr != st || ar != at {
        return Err(Error::InconsistentRecord("whitehead moves do not reproduce the slide"));
    }
    // old half in `result` -> canonical -> half in `target`
    let mut inv_target = vec![0; rel_target.len()];
    for (old, &new) in rel_target.iter().enumerate() {
        inv_target[new] = old;
    }
    let isomorphism = rel_result.iter().map(|&c| inv_target[c]).collect();
    Ok(SlideWhiteheadMoves { moves, result, isomorphism })
}
