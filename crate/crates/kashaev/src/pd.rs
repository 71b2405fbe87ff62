//! Planar-diagram (PD) codes: emission for any diagram and conversion of
//! braid-position codes back to braid words.
//!
//! A PD code lists each crossing as a 4-tuple of edge labels, starting at
//! the incoming under-strand and proceeding counter-clockwise, with edges
//! numbered 1..2n along the orientation. Conversion applies the Seifert
//! smoothing: when the Seifert circles form a linear chain and the
//! crossing order along the circles merges consistently, the code is in
//! closed-braid position and the braid word is recovered exactly;
//! anything else is rejected with a diagnostic (this crate does not
//! implement braiding moves).

use serde::{Deserialize, Serialize};

use crate::diagram::{role_slot, BraidWord, KnotDiagram, Role};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdCode {
    /// crossing tuples (a, b, c, d): a = under-in, counter-clockwise
    pub crossings: Vec<[usize; 4]>,
}

impl PdCode {
    /// Parse `X[1,4,2,5] X[3,6,4,1] ...` or bare `[[1,4,2,5],...]`.
    pub fn parse(text: &str) -> Result<PdCode> {
        let mut crossings = Vec::new();
        let cleaned = text.replace(['X', 'x'], " ");
        let mut nums: Vec<usize> = Vec::new();
        let mut cur = String::new();
        for ch in cleaned.chars() {
            if ch.is_ascii_digit() {
                cur.push(ch);
            } else if !cur.is_empty() {
                nums.push(cur.parse().map_err(|_| Error::Parse("bad PD label".into()))?);
                cur.clear();
            }
        }
        if !cur.is_empty() {
            nums.push(cur.parse().map_err(|_| Error::Parse("bad PD label".into()))?);
        }
        if nums.is_empty() || nums.len() % 4 != 0 {
            return Err(Error::Parse(format!(
                "PD code needs 4 labels per crossing, got {} labels",
                nums.len()
            )));
        }
        for q in nums.chunks(4) {
            crossings.push([q[0], q[1], q[2], q[3]]);
        }
        let pd = PdCode { crossings };
        pd.validate()?;
        Ok(pd)
    }

    fn validate(&self) -> Result<()> {
        let n = self.crossings.len();
        let mut seen = vec![0usize; 2 * n + 1];
        for c in &self.crossings {
            for &e in c {
                if e < 1 || e > 2 * n {
                    return Err(Error::Parse(format!("PD label {e} out of range 1..{}", 2 * n)));
                }
                seen[e] += 1;
            }
        }
        if seen[1..].iter().any(|&c| c != 2) {
            return Err(Error::Parse("every PD edge label must appear exactly twice".into()));
        }
        Ok(())
    }

    /// Emit the PD code of a diagram: edges numbered along the curve from
    /// the trace start, tuples counter-clockwise from the under-in slot.
    pub fn from_diagram(d: &KnotDiagram) -> PdCode {
        let ne = d.edges.len();
        let label = |edge: usize| edge + 1; // curve order is already the orientation
        let mut crossings = Vec::with_capacity(d.n());
        for nu in 0..d.n() {
            let sign = d.crossings[nu].sign;
            let edge_label = |role: Role| {
                let (e, _) = d.edge_at_slot(nu, role_slot(sign, role));
                label(e % ne)
            };
            let (a, b, g, dl) = (
                edge_label(Role::UnderIn),
                edge_label(Role::OverIn),
                edge_label(Role::OverOut),
                edge_label(Role::UnderOut),
            );
            // counter-clockwise from under-in: positive (α,γ,δ,β), negative (α,β,δ,γ)
            let tuple = if sign > 0 { [a, g, dl, b] } else { [a, b, dl, g] };
            crossings.push(tuple);
        }
        PdCode { crossings }
    }

    /// Recover a braid word from a braid-position PD code.
    pub fn to_braid(&self) -> Result<BraidWord> {
        let n = self.crossings.len();
        let ne = 2 * n;
        let next_label = |e: usize| e % ne + 1;

        // orient each crossing: under a->c; over is b->d or d->b by the
        // successor relation on labels
        struct Cr {
            under_in: usize,
            under_out: usize,
            over_in: usize,
            over_out: usize,
        }
        let mut crs = Vec::with_capacity(n);
        for t in &self.crossings {
            let (a, b, c, dpd) = (t[0], t[1], t[2], t[3]);
            if next_label(a) != c && next_label(c) != a {
                // under strand must be a -> c with consecutive labels
                return Err(Error::Parse(format!(
                    "crossing {t:?}: under-strand labels {a},{c} are not consecutive"
                )));
            }
            let (over_in, over_out) = if next_label(b) == dpd {
                (b, dpd)
            } else if next_label(dpd) == b {
                (dpd, b)
            } else {
                return Err(Error::Parse(format!(
                    "crossing {t:?}: over-strand labels {b},{dpd} are not consecutive"
                )));
            };
            crs.push(Cr { under_in: a, under_out: c, over_in, over_out });
        }

        // Seifert smoothing: each in-edge continues on the out-edge of
        // the other strand (orientation-preserving resolution)
        let mut succ = vec![0usize; ne + 1];
        for c in &crs {
            succ[c.under_in] = c.over_out;
            succ[c.over_in] = c.under_out;
        }
        let mut circle_of = vec![usize::MAX; ne + 1];
        let mut circles: Vec<Vec<usize>> = Vec::new();
        for e in 1..=ne {
            if circle_of[e] != usize::MAX {
                continue;
            }
            let id = circles.len();
            let mut walk = Vec::new();
            let mut cur = e;
            while circle_of[cur] == usize::MAX {
                circle_of[cur] = id;
                walk.push(cur);
                cur = succ[cur];
            }
            circles.push(walk);
        }

        // adjacency: each crossing joins two circles; braid position
        // requires a simple path
        let k = circles.len();
        let mut adj = vec![std::collections::BTreeSet::new(); k];
        for c in &crs {
            let (u, o) = (circle_of[c.under_in], circle_of[c.over_in]);
            if u == o {
                return Err(Error::Parse("PD code is not in braid position (kink)".into()));
            }
            adj[u].insert(o);
            adj[o].insert(u);
        }
        let ends: Vec<usize> = (0..k).filter(|&i| adj[i].len() == 1).collect();
        if k >= 2 && (ends.len() != 2 || adj.iter().any(|a| a.len() > 2)) {
            return Err(Error::Parse(
                "PD code is not in braid position (Seifert circles not a chain)".into(),
            ));
        }
        // order circles along the chain: strand positions (both chain
        // directions are tried; the emission-matching one wins)
        let chain_order = |first: usize| -> Vec<usize> {
            let mut order = Vec::with_capacity(k);
            let mut prev = usize::MAX;
            let mut cur = first;
            for _ in 0..k {
                order.push(cur);
                let next = adj[cur].iter().find(|&&x| x != prev).cloned();
                prev = cur;
                match next {
                    Some(x) => cur = x,
                    None => break,
                }
            }
            order
        };

        // crossing order: greedy merge of the per-circle cyclic orders
        let mut circ_crossings: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (ci, walk) in circles.iter().enumerate() {
            for &e in walk {
                for (xi, c) in crs.iter().enumerate() {
                    if c.under_in == e || c.over_in == e {
                        circ_crossings[ci].push(xi);
                    }
                }
            }
        }
        // merge the per-circle cyclic orders into one word; the phase of
        // each circle is set by its first emitted crossing, and the
        // choice of the overall first crossing is retried if the greedy
        // merge jams
        let letter_of = |pos_of: &[usize], xi: usize| -> Result<i32> {
            let c = &crs[xi];
            let (cu, co) = (circle_of[c.under_in], circle_of[c.over_in]);
            let (pu, po) = (pos_of[cu], pos_of[co]);
            if pu.abs_diff(po) != 1 {
                return Err(Error::Parse(
                    "PD code is not in braid position (crossing joins non-adjacent circles)".into(),
                ));
            }
            let gen = (pu.min(po) + 1) as i32;
            // positive letters have the strand from the higher position over
            Ok(if po > pu { gen } else { -gen })
        };
        fn emit(
            crs: &[Cr],
            circle_of: &[usize],
            circ_crossings: &[Vec<usize>],
            xi: usize,
            ptr: &mut [Option<usize>],
            emitted: &mut [bool],
        ) {
            let c = &crs[xi];
            for ci in [circle_of[c.under_in], circle_of[c.over_in]] {
                let lst = &circ_crossings[ci];
                let next = match ptr[ci] {
                    Some(p) => p,
                    None => lst.iter().position(|&x| x == xi).unwrap(),
                };
                ptr[ci] = Some((next + 1) % lst.len().max(1));
            }
            emitted[xi] = true;
        }
        let mut first_success: Option<BraidWord> = None;
        for first_end in [ends.first().cloned().unwrap_or(0), ends.last().cloned().unwrap_or(0)] {
            let order = chain_order(first_end);
            let mut pos_of = vec![0usize; k];
            for (p, &c) in order.iter().enumerate() {
                pos_of[c] = p;
            }
            'starts: for start in 0..n {
                let mut ptr: Vec<Option<usize>> = vec![None; k];
                let mut word: Vec<i32> = Vec::new();
                let mut emitted = vec![false; n];
                emit(&crs, &circle_of, &circ_crossings, start, &mut ptr, &mut emitted);
                word.push(letter_of(&pos_of, start)?);
                while word.len() < n {
                    let mut advanced = false;
                    for xi in 0..n {
                        if emitted[xi] {
                            continue;
                        }
                        let c = &crs[xi];
                        let ready =
                            [circle_of[c.under_in], circle_of[c.over_in]].iter().all(|&ci| {
                                let lst = &circ_crossings[ci];
                                match ptr[ci] {
                                    Some(p) => lst[p % lst.len()] == xi,
                                    None => lst.contains(&xi),
                                }
                            });
                        if ready {
                            emit(&crs, &circle_of, &circ_crossings, xi, &mut ptr, &mut emitted);
                            word.push(letter_of(&pos_of, xi)?);
                            advanced = true;
                        }
                    }
                    if !advanced {
                        continue 'starts;
                    }
                }
                let candidate = BraidWord { letters: word };
                // prefer the reading that reproduces the input code exactly
                if let Ok(d) = KnotDiagram::from_braid_word(candidate.clone()) {
                    if &PdCode::from_diagram(&d) == self {
                        return Ok(candidate);
                    }
                }
                first_success.get_or_insert(candidate);
            }
        }
        first_success.ok_or_else(|| {
            Error::Parse("PD code is not in braid position (no consistent crossing order)".into())
        })
    }

    /// Parse a PD code and build the diagram of the recovered braid.
    pub fn to_diagram(&self) -> Result<KnotDiagram> {
        KnotDiagram::from_braid_word(self.to_braid()?)
    }
}
