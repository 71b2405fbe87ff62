//! Base point selection on a closed-braid diagram.
//!
//! The base point sits on an edge of the curve whose preceding passage is
//! an underpass and whose following passage is an overpass. Walking
//! forward it sees the maximal overpass A ending at the undercrossing X;
//! walking backward, the maximal underpass B ending at the overcrossing
//! Y. Crossings are renumbered so that A = {1..a}, B = {b..n} (with n
//! nearest the base point going backward), and the two faces flanking
//! the base edge become R_0 and R_{n+1}.
//!
//! A candidate is accepted only if the whole reduced-graph construction
//! succeeds on it, so the returned decomposition always carries a valid
//! census; [`choose_base_point`] scans candidates in curve order and
//! returns the first such point, which makes the choice deterministic.

use serde::{Deserialize, Serialize};

use crate::diagram::KnotDiagram;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePointDecomposition {
    /// curve edge carrying the base point (on its first sub-edge)
    pub base_edge: usize,
    /// overpass crossings in forward order from the base (original ids)
    pub overpass: Vec<usize>,
    /// underpass crossings in forward order (walking backward from the
    /// base meets them reversed; the last entry is crossing n)
    pub underpass: Vec<usize>,
    /// the undercrossing terminating A
    pub x: usize,
    /// the overcrossing terminating B (in the backward direction)
    pub y: usize,
    /// the two faces flanking the base edge (original ids): R_0, R_{n+1}
    pub r0: usize,
    pub rn1: usize,
    /// renumbering original crossing id -> 1-based paper index
    pub renumber: Vec<usize>,
    /// a, x, y, b in the renumbered scheme, a < x <= y < b
    pub a: usize,
    pub x_new: usize,
    pub y_new: usize,
    pub b: usize,
}

impl BasePointDecomposition {
    /// ℬ as original crossing ids.
    pub fn bridge_set(&self) -> Vec<usize> {
        let mut v = self.overpass.clone();
        v.extend_from_slice(&self.underpass);
        v
    }

    pub fn is_bridge(&self, nu: usize) -> bool {
        self.overpass.contains(&nu) || self.underpass.contains(&nu)
    }

    /// 𝒬 = faces covered by the bridge octagons.
    pub fn covered_faces(&self, d: &KnotDiagram) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .bridge_set()
            .iter()
            .flat_map(|&nu| d.q_set(nu).to_vec())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// ℛ = crossings incident to R_0 or R_{n+1}.
    pub fn r_crossings(&self, d: &KnotDiagram) -> Vec<usize> {
        let mut v = d.r_sets[self.r0].clone();
        v.extend_from_slice(&d.r_sets[self.rn1]);
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn in_r(&self, d: &KnotDiagram, nu: usize) -> bool {
        d.q_set(nu).contains(&self.r0) || d.q_set(nu).contains(&self.rn1)
    }
}

/// Structural candidate construction for one base edge; the cheap checks
/// only (the census validation happens in the reduced-graph build).
pub(crate) fn try_base(d: &KnotDiagram, base_edge: usize) -> Result<BasePointDecomposition> {
    let m = d.passages.len();
    let before = &d.passages[base_edge];
    let after = &d.passages[(base_edge + 1) % m];
    if before.over || !after.over {
        return Err(Error::NoBasePoint("base edge must run from an underpass into an overpass".into()));
    }

    // maximal overpass forward
    let mut overpass = Vec::new();
    let mut i = (base_edge + 1) % m;
    while d.passages[i].over {
        overpass.push(d.passages[i].crossing);
        i = (i + 1) % m;
        if overpass.len() > m {
            return Err(Error::NoBasePoint("overpass wraps the whole curve".into()));
        }
    }
    let x = d.passages[i].crossing;

    // maximal underpass backward
    let mut under_rev = Vec::new();
    let mut j = base_edge;
    while !d.passages[j].over {
        under_rev.push(d.passages[j].crossing);
        j = (j + m - 1) % m;
        if under_rev.len() > m {
            return Err(Error::NoBasePoint("underpass wraps the whole curve".into()));
        }
    }
    let y = d.passages[j].crossing;
    let underpass: Vec<usize> = under_rev.into_iter().rev().collect();

    // the removed arc must be simple and end at two distinct crossings
    let mut bridge = overpass.clone();
    bridge.extend_from_slice(&underpass);
    {
        let mut s = bridge.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != bridge.len() {
            return Err(Error::NoBasePoint("bridge arc is not simple".into()));
        }
    }
    if bridge.contains(&x) || bridge.contains(&y) {
        return Err(Error::NoBasePoint("arc endpoint lies on the bridge".into()));
    }
    if x == y {
        return Err(Error::NoBasePoint("X and Y coincide".into()));
    }

    // distinguished faces: the flanks of the base edge
    let (r0, rn1) = d.edges[base_edge].flanks;
    if r0 == rn1 {
        return Err(Error::NoBasePoint("base edge borders a single face".into()));
    }

    // crossing 1 and crossing n must share exactly the two base faces
    let c1 = overpass[0];
    let cn = *underpass.last().unwrap();
    let q1 = d.q_set(c1);
    let qn = d.q_set(cn);
    let shared: Vec<usize> = q1.iter().filter(|f| qn.contains(f)).cloned().collect();
    if shared.len() != 2 || !shared.contains(&r0) || !shared.contains(&rn1) {
        return Err(Error::NoBasePoint("Q_1 ∩ Q_n != {0, n+1}".into()));
    }

    // interior bridge crossings must avoid the distinguished faces
    for &nu in bridge.iter() {
        if nu == c1 || nu == cn {
            continue;
        }
        let q = d.q_set(nu);
        if q.contains(&r0) || q.contains(&rn1) {
            return Err(Error::NoBasePoint("B ∩ R != {1, n}".into()));
        }
    }

    // Q_a ∩ Q_x ∩ Q_y ∩ Q_b = ∅
    let ca = *overpass.last().unwrap();
    let cb = underpass[0];
    let inter: Vec<usize> = d
        .q_set(ca)
        .iter()
        .filter(|f| d.q_set(x).contains(f) && d.q_set(y).contains(f) && d.q_set(cb).contains(f))
        .cloned()
        .collect();
    if !inter.is_empty() {
        return Err(Error::NoBasePoint("Q_a ∩ Q_x ∩ Q_y ∩ Q_b nonempty".into()));
    }

    // renumber: A forward = 1..a, middle by first encounter, B forward = b..n
    let n = d.n();
    let a = overpass.len();
    let b = n - underpass.len() + 1;
    let mut renumber = vec![0usize; n];
    for (idx, &nu) in overpass.iter().enumerate() {
        renumber[nu] = idx + 1;
    }
    for (idx, &nu) in underpass.iter().enumerate() {
        renumber[nu] = b + idx;
    }
    let mut next = a + 1;
    let mut p = (base_edge + 1) % m;
    for _ in 0..m {
        let nu = d.passages[p].crossing;
        if renumber[nu] == 0 {
            renumber[nu] = next;
            next += 1;
        }
        p = (p + 1) % m;
    }
    debug_assert_eq!(next, b);

    let (x_new, y_new) = (renumber[x], renumber[y]);
    if !(a < x_new && x_new <= y_new && y_new < b) {
        // y must come strictly between a and b; x is always a+1 by the
        // first-encounter numbering
        return Err(Error::NoBasePoint("ordering a < x <= y < b fails".into()));
    }

    Ok(BasePointDecomposition {
        base_edge,
        overpass,
        underpass,
        x,
        y,
        r0,
        rn1,
        renumber,
        a,
        x_new,
        y_new,
        b,
    })
}

#[doc(hidden)]
pub fn try_base_dbg(d: &KnotDiagram, e: usize) -> String {
    match try_base(d, e) {
        Ok(bp) => match crate::reduced::build_reduced_graph(d, &bp) {
            Ok(_) => "ok".into(),
            Err(err) => format!("build: {err}"),
        },
        Err(err) => format!("{err}"),
    }
}

/// Every base point (in curve order) whose full construction validates.
pub fn valid_base_points(d: &KnotDiagram) -> Vec<BasePointDecomposition> {
    (0..d.edges.len())
        .filter_map(|e| {
            let bp = try_base(d, e).ok()?;
            crate::reduced::build_reduced_graph(d, &bp).ok()?;
            Some(bp)
        })
        .collect()
}

/// The first base point along the curve whose full reduced-graph
/// construction validates.
pub fn choose_base_point(d: &KnotDiagram) -> Result<BasePointDecomposition> {
    let mut reasons: Vec<String> = Vec::new();
    for e in 0..d.edges.len() {
        match try_base(d, e) {
            Ok(bp) => match crate::reduced::build_reduced_graph(d, &bp) {
                Ok(_) => return Ok(bp),
                Err(err) => reasons.push(format!("edge {e}: {err}")),
            },
            Err(err) => reasons.push(format!("edge {e}: {err}")),
        }
    }
    Err(Error::NoBasePoint(format!(
        "all {} candidate edges rejected; last: {}",
        d.edges.len(),
        reasons.last().cloned().unwrap_or_default()
    )))
}
