//! State sums for the Kashaev invariant ⟨K⟩_N.
//!
//! The diagram is cut at a point of the outermost closure arc and
//! stretched to a long knot, so that arc loses its critical points and
//! its two unbounded ends carry the residue 0. Crossings weigh R or R̄
//! entries read off the four incident sub-edges (upper indices = the two
//! upper slots, lower = the two lower slots, for either sign); every
//! surviving maximum shifts the residue by -1 along the orientation and
//! weighs -q^{1/2}; minima are transparent. These conventions are pinned
//! end to end by ⟨4_1⟩_N = 1, 5, 13, 27 at N = 1..4 and by the
//! cut-position and presentation independence checks in the tests.
//!
//! Two evaluation paths:
//!
//! * [`full_invariant`]: depth-first enumeration of all states with
//!   θ-support pruning — exponential in the crossing number, the small-N
//!   oracle.
//! * [`reduced_invariant`]: enumerates simple states (assignments to the
//!   edges of the diagram that survive in the reduced graph G) and sums
//!   the bridge arc out of each class exactly. The class structure is the
//!   paper-level object [σ]; the arc collapse replaces the closed-form
//!   bridge weights, which depend on figure conventions this crate cannot
//!   reproduce, by the exact constrained sub-sum.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::basepoint::BasePointDecomposition;
use crate::diagram::{ExtremumKind, KnotDiagram, Role, ROLES};
use crate::error::{Error, Result};
use crate::qarith::{Accumulator, Precision, RootOfUnityContext};
use crate::reduced::ReducedGraph;

/// Residue shift across an extremum, walking with the knot orientation.
fn extremum_shift(kind: ExtremumKind) -> i64 {
    match kind {
        ExtremumKind::Maximum => -1,
        ExtremumKind::Minimum => 0,
    }
}

/// Weight of an extremum. The closure maxima of a braid (curve running
/// counter-clockwise over the top) weigh -q^{1/2}; a clockwise maximum
/// would weigh -q^{-1/2}; minima weigh 1.
fn extremum_weight(ctx: &RootOfUnityContext, kind: ExtremumKind, clockwise: bool) -> Complex64 {
    match kind {
        ExtremumKind::Minimum => Complex64::new(1.0, 0.0),
        ExtremumKind::Maximum => {
            if clockwise {
                -1.0 / ctx.q_half()
            } else {
                -ctx.q_half()
            }
        }
    }
}

/// A full state: one residue per sub-edge of the cut diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub values: Vec<i64>,
}

/// A simple state: one residue per diagram edge surviving in G (the
/// class representative of the paper's [σ]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleState {
    pub values: Vec<i64>,
}

/// Global sub-edge indexing for a cut diagram; the cut edge loses its
/// extrema (it is straightened to the two unbounded ends).
#[derive(Clone, Debug)]
pub struct SubEdges {
    cut_edge: usize,
    offsets: Vec<usize>,
    counts: Vec<usize>,
    total: usize,
}

impl SubEdges {
    pub fn new(d: &KnotDiagram, cut_edge: usize) -> SubEdges {
        let mut offsets = Vec::with_capacity(d.edges.len());
        let mut counts = Vec::with_capacity(d.edges.len());
        let mut total = 0;
        for (e, de) in d.edges.iter().enumerate() {
            offsets.push(total);
            let c = if e == cut_edge { 1 } else { de.extrema.len() + 1 };
            counts.push(c);
            total += c;
        }
        SubEdges { cut_edge, offsets, counts, total }
    }

    #[inline]
    pub fn id(&self, edge: usize, seg: usize) -> usize {
        debug_assert!(seg < self.counts[edge]);
        self.offsets[edge] + seg
    }

    pub fn count(&self, edge: usize) -> usize {
        self.counts[edge]
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn cut_edge(&self) -> usize {
        self.cut_edge
    }

    /// Extrema of an edge as seen by the cut diagram.
    pub fn extrema<'d>(&self, d: &'d KnotDiagram, edge: usize) -> &'d [crate::diagram::Extremum] {
        if edge == self.cut_edge {
            &[]
        } else {
            &d.edges[edge].extrema
        }
    }

    /// Sub-edge read by a crossing slot: an in-slot reads the last piece
    /// of the incoming edge, an out-slot the first piece of the outgoing.
    pub fn at_slot(&self, d: &KnotDiagram, nu: usize, slot: usize) -> usize {
        let (edge, entering) = d.edge_at_slot(nu, slot);
        if entering {
            self.id(edge, self.counts[edge] - 1)
        } else {
            self.id(edge, 0)
        }
    }
}

/// The canonical cut: the final trace edge, which runs through the
/// outermost closure arc back to the start of the curve.
pub fn canonical_cut(d: &KnotDiagram) -> usize {
    d.edges.len() - 1
}

/// ⟨D|σ⟩_ν: the R (positive) or R̄ (negative) entry at the four incident
/// sub-edge values, upper indices on the upper slots.
pub fn bracket_weight(
    d: &KnotDiagram,
    subs: &SubEdges,
    ctx: &RootOfUnityContext,
    nu: usize,
    state: &State,
) -> Complex64 {
    let val = |role: Role| -> i64 {
        let slot = crate::diagram::role_slot(d.crossings[nu].sign, role);
        state.values[subs.at_slot(d, nu, slot)]
    };
    crossing_entry(
        ctx,
        d.crossings[nu].sign,
        val(Role::UnderIn),
        val(Role::OverIn),
        val(Role::OverOut),
        val(Role::UnderOut),
    )
}

/// R/R̄ entry from the role values (α, β, γ, δ).
#[inline]
pub(crate) fn crossing_entry(
    ctx: &RootOfUnityContext,
    sign: i8,
    a: i64,
    b: i64,
    g: i64,
    dl: i64,
) -> Complex64 {
    if sign > 0 {
        // roles sit at (UL, UR, DL, DR) = (α, β, γ, δ)
        ctx.r_matrix(a, b, g, dl)
    } else {
        // negative: (UL, UR, DL, DR) = (β, α, δ, γ)
        ctx.rbar_matrix(b, a, dl, g)
    }
}

enum TapeNode {
    Extremum { ex: crate::diagram::Extremum, in_sub: usize, out_sub: usize },
    Passage { in_sub: usize, out_sub: usize },
}

struct Tape {
    nodes: Vec<TapeNode>,
    cut_sub: usize,
    /// per crossing: sub-edge ids in role order (α, β, γ, δ)
    crossing_subs: Vec<[usize; 4]>,
}

fn build_tape(d: &KnotDiagram, subs: &SubEdges) -> Tape {
    let ne = d.edges.len();
    let cut = subs.cut_edge();
    let mut nodes = Vec::new();
    for step in 0..ne {
        let e = (cut + step) % ne;
        let exs = subs.extrema(d, e);
        for (i, &ex) in exs.iter().enumerate() {
            nodes.push(TapeNode::Extremum { ex, in_sub: subs.id(e, i), out_sub: subs.id(e, i + 1) });
        }
        let next = (e + 1) % ne;
        nodes.push(TapeNode::Passage { in_sub: subs.id(e, exs.len()), out_sub: subs.id(next, 0) });
    }
    let mut crossing_subs = vec![[0usize; 4]; d.n()];
    for nu in 0..d.n() {
        let sign = d.crossings[nu].sign;
        for (ri, role) in ROLES.iter().enumerate() {
            crossing_subs[nu][ri] = subs.at_slot(d, nu, crate::diagram::role_slot(sign, *role));
        }
    }
    Tape { nodes, cut_sub: subs.id(cut, 0), crossing_subs }
}

struct Dfs<'a> {
    d: &'a KnotDiagram,
    ctx: &'a RootOfUnityContext,
    tape: &'a Tape,
    vals: Vec<i64>,
    assigned: Vec<bool>,
    remaining: Vec<u8>,
    fixed: Vec<Option<i64>>,
    acc: Accumulator,
}

impl<'a> Dfs<'a> {
    fn new(
        d: &'a KnotDiagram,
        ctx: &'a RootOfUnityContext,
        tape: &'a Tape,
        subs: &SubEdges,
        fixed: Vec<Option<i64>>,
    ) -> Dfs<'a> {
        Dfs {
            d,
            ctx,
            tape,
            vals: vec![0; subs.total()],
            assigned: vec![false; subs.total()],
            remaining: vec![4; d.n()],
            fixed,
            acc: Accumulator::new(ctx.precision()),
        }
    }

    fn crossing_weight(&self, nu: usize) -> Complex64 {
        let s = &self.tape.crossing_subs[nu];
        crossing_entry(
            self.ctx,
            self.d.crossings[nu].sign,
            self.vals[s[0]],
            self.vals[s[1]],
            self.vals[s[2]],
            self.vals[s[3]],
        )
    }

    /// Assign a sub-edge value; returns the product of newly completed
    /// crossing weights, or None when some completed weight vanishes.
    fn assign(&mut self, sub: usize, value: i64) -> Option<Complex64> {
        debug_assert!(!self.assigned[sub]);
        self.vals[sub] = value;
        self.assigned[sub] = true;
        let mut completed: [usize; 4] = [usize::MAX; 4];
        let mut nc = 0;
        for nu in 0..self.d.n() {
            let hits = self.tape.crossing_subs[nu].iter().filter(|&&x| x == sub).count() as u8;
            if hits > 0 {
                self.remaining[nu] -= hits;
                if self.remaining[nu] == 0 {
                    completed[nc] = nu;
                    nc += 1;
                }
            }
        }
        let mut w = Complex64::new(1.0, 0.0);
        for &nu in completed.iter().take(nc) {
            let cw = self.crossing_weight(nu);
            if cw.re == 0.0 && cw.im == 0.0 {
                return None;
            }
            w *= cw;
        }
        Some(w)
    }

    fn unassign(&mut self, sub: usize) {
        self.assigned[sub] = false;
        for nu in 0..self.d.n() {
            let hits = self.tape.crossing_subs[nu].iter().filter(|&&x| x == sub).count() as u8;
            self.remaining[nu] += hits;
        }
    }

    fn run(&mut self, node: usize, weight: Complex64) {
        if node == self.tape.nodes.len() {
            self.acc.add(weight);
            return;
        }
        let nn = self.ctx.n() as i64;
        match self.tape.nodes[node] {
            TapeNode::Extremum { ex, in_sub, out_sub } => {
                debug_assert!(self.assigned[in_sub]);
                let target = (self.vals[in_sub] + extremum_shift(ex.kind)).rem_euclid(nn);
                let w = extremum_weight(self.ctx, ex.kind, ex.clockwise);
                if self.assigned[out_sub] {
                    if self.vals[out_sub] == target {
                        self.run(node + 1, weight * w);
                    }
                    return;
                }
                if let Some(fv) = self.fixed[out_sub] {
                    if fv != target {
                        return;
                    }
                }
                if let Some(cw) = self.assign(out_sub, target) {
                    self.run(node + 1, weight * w * cw);
                }
                self.unassign(out_sub);
            }
            TapeNode::Passage { in_sub, out_sub } => {
                debug_assert!(self.assigned[in_sub]);
                if self.assigned[out_sub] {
                    // wrapped around to the cut stub
                    self.run(node + 1, weight);
                    return;
                }
                match self.fixed[out_sub] {
                    Some(v) => {
                        if let Some(cw) = self.assign(out_sub, v) {
                            self.run(node + 1, weight * cw);
                        }
                        self.unassign(out_sub);
                    }
                    None => {
                        for v in 0..nn {
                            if let Some(cw) = self.assign(out_sub, v) {
                                self.run(node + 1, weight * cw);
                            }
                            self.unassign(out_sub);
                        }
                    }
                }
            }
        }
    }
}

fn run_sum(
    d: &KnotDiagram,
    ctx: &RootOfUnityContext,
    subs: &SubEdges,
    tape: &Tape,
    fixed: Vec<Option<i64>>,
) -> Complex64 {
    if let Some(v) = fixed[tape.cut_sub] {
        if v != 0 {
            return Complex64::default();
        }
    }
    let mut dfs = Dfs::new(d, ctx, tape, subs, fixed);
    match dfs.assign(tape.cut_sub, 0) {
        Some(w0) => dfs.run(0, w0),
        None => return Complex64::default(),
    }
    dfs.acc.value()
}

fn prefactor(d: &KnotDiagram, ctx: &RootOfUnityContext) -> Complex64 {
    ctx.q_half().powi(d.writhe() as i32)
}

/// Brute-force ⟨K⟩_N over all states of the cut diagram.
pub fn full_invariant(d: &KnotDiagram, n: usize, precision: Precision) -> Result<Complex64> {
    full_invariant_budget(d, n, precision, 5e8)
}

pub fn full_invariant_budget(
    d: &KnotDiagram,
    n: usize,
    precision: Precision,
    max_states: f64,
) -> Result<Complex64> {
    let branches = 2 * d.n() as i32 - 1;
    let cost = (n as f64).powi(branches);
    if cost > max_states {
        return Err(Error::Budget(format!(
            "full state sum needs ~N^{branches} = {cost:.2e} branches (limit {max_states:.2e})"
        )));
    }
    let ctx = RootOfUnityContext::with_precision(n, precision)?;
    let subs = SubEdges::new(d, canonical_cut(d));
    let tape = build_tape(d, &subs);
    let fixed = vec![None; subs.total()];
    Ok(prefactor(d, &ctx) * run_sum(d, &ctx, &subs, &tape, fixed))
}

/// Σ_k |(q)_{[k]}|², the closed form for the figure-eight knot.
pub fn figure_eight_oracle(n: usize) -> Result<Complex64> {
    let ctx = RootOfUnityContext::new(n)?;
    let mut acc = Accumulator::new(Precision::Standard);
    for k in 0..n as i64 {
        let f = ctx.q_factorial(1, k);
        acc.add(Complex64::new(f.norm_sqr(), 0.0));
    }
    Ok(acc.value())
}

/// The diagram edges carrying free simple-state values: everything off
/// the removed bridge arc.
pub fn simple_state_support(d: &KnotDiagram, bp: &BasePointDecomposition) -> Vec<usize> {
    let removed = removed_edges(d, bp);
    (0..d.edges.len()).filter(|e| !removed[*e]).collect()
}

pub(crate) fn removed_edges(d: &KnotDiagram, bp: &BasePointDecomposition) -> Vec<bool> {
    let mut removed = vec![false; d.edges.len()];
    removed[d.passage_of(bp.y, true)] = true;
    for &nu in bp.underpass.iter() {
        removed[d.passage_of(nu, false)] = true;
    }
    for &nu in bp.overpass.iter() {
        removed[d.passage_of(nu, true)] = true;
    }
    removed
}

/// ⟨K⟩_N as a sum over simple states: assignments to the G-edges of the
/// diagram, with the removed arc summed out of each class exactly.
pub fn reduced_invariant(
    d: &KnotDiagram,
    bp: &BasePointDecomposition,
    g: &ReducedGraph,
    n: usize,
    precision: Precision,
) -> Result<Complex64> {
    reduced_invariant_budget(d, bp, g, n, precision, 2e9)
}

pub fn reduced_invariant_budget(
    d: &KnotDiagram,
    bp: &BasePointDecomposition,
    g: &ReducedGraph,
    n: usize,
    precision: Precision,
    max_states: f64,
) -> Result<Complex64> {
    let _ = g; // the class set below is exactly G's edge support
    let ctx = RootOfUnityContext::with_precision(n, precision)?;
    let cut = canonical_cut(d);
    let subs = SubEdges::new(d, cut);
    let tape = build_tape(d, &subs);

    let removed = removed_edges(d, bp);
    let class_edges: Vec<usize> =
        (0..d.edges.len()).filter(|&e| !removed[e] && e != cut).collect();
    let arc_free: usize = removed
        .iter()
        .enumerate()
        .filter(|&(e, r)| *r && e != cut)
        .count();
    let cost = (n as f64).powi(class_edges.len() as i32) * (n as f64).powi(arc_free as i32);
    if cost > max_states {
        return Err(Error::Budget(format!(
            "reduced sum needs ~N^{} classes x N^{arc_free} collapse states = {cost:.2e} \
             (limit {max_states:.2e})",
            class_edges.len()
        )));
    }

    // enumerate class values in parallel over the first class edge
    let partials: Vec<Complex64> = (0..n as i64)
        .into_par_iter()
        .map(|v0| {
            let mut acc = Accumulator::new(ctx.precision());
            if class_edges.is_empty() {
                if v0 == 0 {
                    let fixed = vec![None; subs.total()];
                    acc.add(run_sum(d, &ctx, &subs, &tape, fixed));
                }
                return acc.value();
            }
            let mut values = vec![0i64; class_edges.len()];
            values[0] = v0;
            class_dfs(d, &ctx, &subs, &tape, &class_edges, &mut values, 1, &mut acc);
            acc.value()
        })
        .collect();

    let mut acc = Accumulator::new(ctx.precision());
    for p in partials {
        acc.add(p);
    }
    Ok(prefactor(d, &ctx) * acc.value())
}

#[allow(clippy::too_many_arguments)]
fn class_dfs(
    d: &KnotDiagram,
    ctx: &RootOfUnityContext,
    subs: &SubEdges,
    tape: &Tape,
    class_edges: &[usize],
    values: &mut Vec<i64>,
    next: usize,
    acc: &mut Accumulator,
) {
    if next < class_edges.len() {
        for v in 0..ctx.n() as i64 {
            values[next] = v;
            class_dfs(d, ctx, subs, tape, class_edges, values, next + 1, acc);
        }
        return;
    }
    let fixed = pin_class(d, ctx, subs, class_edges, values);
    acc.add(run_sum(d, ctx, subs, tape, fixed));
}

/// Pin each class edge's sub-values; extrema propagate inside the edge.
fn pin_class(
    d: &KnotDiagram,
    ctx: &RootOfUnityContext,
    subs: &SubEdges,
    class_edges: &[usize],
    values: &[i64],
) -> Vec<Option<i64>> {
    let nn = ctx.n() as i64;
    let mut fixed: Vec<Option<i64>> = vec![None; subs.total()];
    for (&e, &v) in class_edges.iter().zip(values.iter()) {
        let mut cur = v.rem_euclid(nn);
        fixed[subs.id(e, 0)] = Some(cur);
        for (i, ex) in subs.extrema(d, e).iter().enumerate() {
            cur = (cur + extremum_shift(ex.kind)).rem_euclid(nn);
            fixed[subs.id(e, i + 1)] = Some(cur);
        }
    }
    fixed
}

/// The collapsed weight of one simple-state class (the full sum with the
/// class edges pinned): the reduced sum's summand, exposed for tests and
/// diagnostics.
pub fn class_weight(
    d: &KnotDiagram,
    bp: &BasePointDecomposition,
    values: &SimpleState,
    n: usize,
) -> Result<Complex64> {
    let ctx = RootOfUnityContext::new(n)?;
    let cut = canonical_cut(d);
    let subs = SubEdges::new(d, cut);
    let tape = build_tape(d, &subs);
    let removed = removed_edges(d, bp);
    let class_edges: Vec<usize> =
        (0..d.edges.len()).filter(|&e| !removed[e] && e != cut).collect();
    if values.values.len() != class_edges.len() {
        return Err(Error::Config(format!(
            "expected {} class values, got {}",
            class_edges.len(),
            values.values.len()
        )));
    }
    let fixed = pin_class(d, &ctx, &subs, &class_edges, &values.values);
    Ok(prefactor(d, &ctx) * run_sum(d, &ctx, &subs, &tape, fixed))
}

/// Row/column feasibility of a (possibly partial) state per the support
/// constraints: at every crossing whose four corner residues are known
/// they must sum to N-1, and a known corner on R_0/R_{n+1} must vanish.
pub fn lemma2_feasible(
    d: &KnotDiagram,
    bp: &BasePointDecomposition,
    ctx: &RootOfUnityContext,
    subs: &SubEdges,
    values: &[Option<i64>],
) -> bool {
    use crate::diagram::CORNERS;
    let nn = ctx.n() as i64;
    for nu in 0..d.n() {
        let sign = d.crossings[nu].sign;
        let val = |role: Role| -> Option<i64> {
            values[subs.at_slot(d, nu, crate::diagram::role_slot(sign, role))]
        };
        let corner_value = |c: crate::diagram::CornerKind| -> Option<i64> {
            let (r1, r2) = c.roles();
            let (v1, v2) = (val(r1)?, val(r2)?);
            let shift = if c.has_shift() { 1 } else { 0 };
            Some(ctx.residue(sign as i64 * (v1 - v2) - shift).0 as i64)
        };
        let mut sum = Some(0i64);
        for c in CORNERS {
            let cv = corner_value(c);
            sum = match (sum, cv) {
                (Some(s), Some(v)) => Some(s + v),
                _ => None,
            };
            if let Some(v) = cv {
                let face = d.wedge_face[nu][c.wedge(sign)];
                if (face == bp.r0 || face == bp.rn1) && v != 0 {
                    return false;
                }
            }
        }
        if let Some(s) = sum {
            if s != nn - 1 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basepoint::choose_base_point;
    use crate::reduced::build_reduced_graph;
    use approx::assert_abs_diff_eq;

    #[test]
    fn figure_eight_oracle_values() {
        assert_abs_diff_eq!(figure_eight_oracle(1).unwrap().re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(figure_eight_oracle(2).unwrap().re, 5.0, epsilon = 1e-12);
        assert_abs_diff_eq!(figure_eight_oracle(3).unwrap().re, 13.0, epsilon = 1e-12);
        assert_abs_diff_eq!(figure_eight_oracle(4).unwrap().re, 27.0, epsilon = 1e-11);
        let v100 = figure_eight_oracle(100).unwrap().re;
        let v50 = figure_eight_oracle(50).unwrap().re;
        assert!(v100 > 0.0 && v50 > 0.0);
        assert!(v100.ln() / 100.0 > 0.8 * (v50.ln() / 50.0));
    }

    #[test]
    fn full_invariant_figure_eight_small_n() {
        let d = KnotDiagram::from_braid("s1 -s2 s1 -s2").unwrap();
        for (n, want) in [(1usize, 1.0f64), (2, 5.0), (3, 13.0), (4, 27.0)] {
            let got = full_invariant(&d, n, Precision::Standard).unwrap();
            assert!(
                (got - Complex64::new(want, 0.0)).norm() < 1e-9,
                "N={n}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn full_invariant_presentation_independence() {
        // 4_1 from a rotated braid word: same knot, different diagram
        let d1 = KnotDiagram::from_braid("s1 -s2 s1 -s2").unwrap();
        let d2 = KnotDiagram::from_braid("-s2 s1 -s2 s1").unwrap();
        for n in [2usize, 3] {
            let a = full_invariant(&d1, n, Precision::Standard).unwrap();
            let b = full_invariant(&d2, n, Precision::Standard).unwrap();
            assert!((a - b).norm() < 1e-9, "N={n}: {a} vs {b}");
        }
    }

    #[test]
    fn reduced_equals_full_and_oracle() {
        let d = KnotDiagram::from_braid("s1 -s2 s1 -s2").unwrap();
        let bp = choose_base_point(&d).unwrap();
        let g = build_reduced_graph(&d, &bp).unwrap();
        for n in 1..=4usize {
            let red = reduced_invariant(&d, &bp, &g, n, Precision::Standard).unwrap();
            let oracle = figure_eight_oracle(n).unwrap();
            assert!(
                (red - oracle).norm() < 1e-9 * oracle.norm().max(1.0),
                "N={n}: reduced {red} vs oracle {oracle}"
            );
            let full = full_invariant(&d, n, Precision::Standard).unwrap();
            assert!((red - full).norm() < 1e-8 * full.norm().max(1.0));
        }
    }

    #[test]
    fn reduced_equals_full_five_two() {
        let d = KnotDiagram::from_braid("s1 s1 s1 -s2 s1 -s2").unwrap();
        let bp = choose_base_point(&d).unwrap();
        let g = build_reduced_graph(&d, &bp).unwrap();
        for n in [2usize, 3] {
            let red = reduced_invariant(&d, &bp, &g, n, Precision::Standard).unwrap();
            let full = full_invariant(&d, n, Precision::Standard).unwrap();
            assert!(
                (red - full).norm() < 1e-8 * full.norm().max(1.0),
                "N={n}: reduced {red} vs full {full}"
            );
        }
    }

    #[test]
    fn amphichiral_invariant_is_real() {
        let d = KnotDiagram::from_braid("s1 -s2 s1 -s2").unwrap();
        for n in [2usize, 3, 4] {
            let v = full_invariant(&d, n, Precision::Standard).unwrap();
            assert!(v.im.abs() < 1e-9, "N={n}: {v}");
        }
    }

    #[test]
    fn class_weights_partition_the_invariant() {
        // summing class weights over all simple states reproduces the
        // invariant, and infeasible classes contribute zero
        let d = KnotDiagram::from_braid("s1 -s2 s1 -s2").unwrap();
        let bp = choose_base_point(&d).unwrap();
        let n = 3usize;
        let cut = canonical_cut(&d);
        let free: Vec<usize> =
            simple_state_support(&d, &bp).into_iter().filter(|&e| e != cut).collect();
        let nn = n as i64;
        let mut total = Complex64::default();
        let mut killed = 0usize;
        let mut idx = vec![0i64; free.len()];
        loop {
            let w = class_weight(&d, &bp, &SimpleState { values: idx.clone() }, n).unwrap();
            total += w;
            if w.norm() < 1e-13 {
                killed += 1;
            }
            let mut p = 0;
            while p < idx.len() {
                idx[p] += 1;
                if idx[p] < nn {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
            if p == idx.len() {
                break;
            }
        }
        assert!(killed > 0, "the support constraints should kill some classes");
        let oracle = figure_eight_oracle(n).unwrap();
        assert!((total - oracle).norm() < 1e-9 * oracle.norm());
    }
}
