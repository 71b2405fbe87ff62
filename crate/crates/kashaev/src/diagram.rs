//! Closed-braid knot diagrams and their planar combinatorics.
//!
//! A braid word like `s1 -s2 s1 -s2` is traced into a single knot curve:
//! the crossings, the oriented edges between crossing passages, the
//! closure extrema, and the faces of the diagram (computed from the
//! rotation system at the crossings and checked against Euler's relation
//! |faces| = n + 2). On top of that sit the per-crossing face sets 𝒬_ν,
//! the per-face crossing sets ℛ_μ, and the maxima orientation sets used
//! by the state sums.
//!
//! Slot and role conventions at a crossing, fixed once for the whole
//! crate and validated end-to-end by the integer invariant checks:
//!
//! * geometric slots in clockwise order: `UL, UR, DR, DL` (indices 0-3);
//!   wedge w lies between slots w and w+1 mod 4 (0 = top, 1 = right,
//!   2 = bottom, 3 = left);
//! * for a positive letter `s_i` the strand entering up-right passes over
//!   (exiting down-left); negative letters mirror this;
//! * edge roles: α = under-in, β = over-in, γ = over-out, δ = under-out.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SLOT_UL: usize = 0;
pub const SLOT_UR: usize = 1;
pub const SLOT_DR: usize = 2;
pub const SLOT_DL: usize = 3;

/// Edge roles at a crossing, in the order (α, β, γ, δ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    UnderIn,
    OverIn,
    OverOut,
    UnderOut,
}

pub const ROLES: [Role; 4] = [Role::UnderIn, Role::OverIn, Role::OverOut, Role::UnderOut];

/// Slot occupied by each role, by crossing sign.
pub fn role_slot(sign: i8, role: Role) -> usize {
    match (sign > 0, role) {
        (true, Role::UnderIn) => SLOT_UL,
        (true, Role::OverIn) => SLOT_UR,
        (true, Role::UnderOut) => SLOT_DR,
        (true, Role::OverOut) => SLOT_DL,
        (false, Role::UnderIn) => SLOT_UR,
        (false, Role::OverIn) => SLOT_UL,
        (false, Role::UnderOut) => SLOT_DL,
        (false, Role::OverOut) => SLOT_DR,
    }
}

/// The four corner wedges carrying a state value / shape parameter,
/// labelled by the role pair that bounds them. The pair order matters:
/// it is (φ-side, ψ-side) at a positive crossing and reverses at a
/// negative one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CornerKind {
    AlphaBeta,
    BetaDelta,
    DeltaGamma,
    GammaAlpha,
}

pub const CORNERS: [CornerKind; 4] =
    [CornerKind::AlphaBeta, CornerKind::BetaDelta, CornerKind::DeltaGamma, CornerKind::GammaAlpha];

impl CornerKind {
    pub fn roles(self) -> (Role, Role) {
        match self {
            CornerKind::AlphaBeta => (Role::UnderIn, Role::OverIn),
            CornerKind::BetaDelta => (Role::OverIn, Role::UnderOut),
            CornerKind::DeltaGamma => (Role::UnderOut, Role::OverOut),
            CornerKind::GammaAlpha => (Role::OverOut, Role::UnderIn),
        }
    }

    /// Wedge index (0=top, 1=right, 2=bottom, 3=left) of this corner at a
    /// crossing of the given sign.
    pub fn wedge(self, sign: i8) -> usize {
        let (r1, r2) = self.roles();
        let s1 = role_slot(sign, r1);
        let s2 = role_slot(sign, r2);
        // adjacent slots; the wedge between slots w and w+1 has index w
        if (s1 + 1) % 4 == s2 {
            s1
        } else if (s2 + 1) % 4 == s1 {
            s2
        } else {
            unreachable!("corner roles occupy opposite slots")
        }
    }

    /// Sign ε(ν,μ) of the q-factorial attached to this corner, relative
    /// to the crossing sign: ε(ν,μ) = ε(ν) on the (α,β) and (δ,γ)
    /// corners and -ε(ν) on the other two.
    pub fn epsilon_factor(self) -> i8 {
        match self {
            CornerKind::AlphaBeta | CornerKind::DeltaGamma => 1,
            CornerKind::BetaDelta | CornerKind::GammaAlpha => -1,
        }
    }

    /// Whether the corner value carries the extra -1 (the (δ,γ) corner).
    pub fn has_shift(self) -> bool {
        matches!(self, CornerKind::DeltaGamma)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    /// ε(ν) ∈ {+1, -1}; positive braid letters give +1.
    pub sign: i8,
    /// braid columns (i, i+1), 1-based, and the word position (level)
    pub columns: (usize, usize),
    pub level: usize,
}

/// One passage of the knot curve through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Passage {
    pub crossing: usize,
    pub over: bool,
    pub in_slot: usize,
    pub out_slot: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtremumKind {
    Maximum,
    Minimum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremum {
    pub kind: ExtremumKind,
    /// true if the curve runs clockwise at the extremum
    pub clockwise: bool,
}

/// Edge of the 4-valent diagram: the arc of the knot from one crossing
/// passage to the next, possibly through closure extrema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagEdge {
    /// index into `passages` of the passage this edge leaves
    pub from_passage: usize,
    /// index into `passages` of the passage this edge enters
    pub to_passage: usize,
    /// extrema along the edge, in curve order
    pub extrema: Vec<Extremum>,
    /// the two faces flanking the edge (unordered)
    pub flanks: (usize, usize),
}

/// A face of the diagram, as traced from the rotation system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    /// (crossing, wedge) corners around the face
    pub corners: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn parse(text: &str) -> Result<BraidWord> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let t = tok.trim_matches(|c| c == ',' || c == ';');
            if t.is_empty() {
                continue;
            }
            let (neg, body) = match t.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, t),
            };
            let body = body.strip_prefix('s').or_else(|| body.strip_prefix('S')).unwrap_or(body);
            let idx: i32 = body
                .parse()
                .map_err(|_| Error::Parse(format!("bad braid letter `{tok}`")))?;
            if idx <= 0 {
                return Err(Error::Parse(format!("bad braid letter `{tok}`: index must be >= 1")));
            }
            letters.push(if neg { -idx } else { idx });
        }
        if letters.is_empty() {
            return Err(Error::Parse("empty braid word".into()));
        }
        Ok(BraidWord { letters })
    }

    pub fn strands(&self) -> usize {
        self.letters.iter().map(|&l| l.unsigned_abs() as usize).max().unwrap_or(0) + 1
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| if l > 0 { 1 } else { -1 }).sum()
    }
}

impl std::fmt::Display for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for &l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if l < 0 {
                write!(f, "-s{}", -l)?;
            } else {
                write!(f, "s{l}")?;
            }
        }
        Ok(())
    }
}

/// The full diagram combinatorics of a braid closure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnotDiagram {
    pub word: BraidWord,
    pub strands: usize,
    pub crossings: Vec<Crossing>,
    /// passages in curve order, starting at the top of strand 1
    pub passages: Vec<Passage>,
    /// edges[i] runs from passages[i] to passages[(i+1) % 2n]
    pub edges: Vec<DiagEdge>,
    pub faces: Vec<Face>,
    /// face id at each wedge of each crossing; 𝒬_ν as an array
    pub wedge_face: Vec<[usize; 4]>,
    /// ℛ_μ: crossings incident to each face
    pub r_sets: Vec<Vec<usize>>,
    /// clockwise maxima count |𝒳| and counter-clockwise |𝒴|
    pub maxima_cw: usize,
    pub maxima_ccw: usize,
}

impl KnotDiagram {
    /// Parse a braid word and build the closed-braid diagram.
    pub fn from_braid(text: &str) -> Result<KnotDiagram> {
        Self::from_braid_word(BraidWord::parse(text)?)
    }

    pub fn from_braid_word(word: BraidWord) -> Result<KnotDiagram> {
        let n = word.letters.len();
        let k = word.strands();
        if k < 2 {
            return Err(Error::Parse("braid must use at least one generator".into()));
        }

        // single component check from the braid permutation
        let mut perm: Vec<usize> = (0..k).collect();
        for &l in &word.letters {
            let i = l.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        let components = {
            let mut seen = vec![false; k];
            let mut c = 0;
            for s in 0..k {
                if !seen[s] {
                    c += 1;
                    let mut t = s;
                    while !seen[t] {
                        seen[t] = true;
                        t = perm[t];
                    }
                }
            }
            c
        };
        if components != 1 {
            return Err(Error::MultiComponent { components });
        }

        let crossings: Vec<Crossing> = word
            .letters
            .iter()
            .enumerate()
            .map(|(lvl, &l)| Crossing {
                sign: if l > 0 { 1 } else { -1 },
                columns: (l.unsigned_abs() as usize, l.unsigned_abs() as usize + 1),
                level: lvl,
            })
            .collect();

        // trace the knot from the top of strand 1; edge i collects the
        // extrema passed between passage i and passage i+1
        let mut passages: Vec<Passage> = Vec::with_capacity(2 * n);
        let mut edge_extrema: Vec<Vec<Extremum>> = Vec::with_capacity(2 * n);
        let mut pending: Vec<Extremum> = Vec::new();
        let mut pos = 0usize; // current column, 0-based
        let mut level = 0usize; // next level to examine
        loop {
            let hit = (level..n).find(|&lvl| {
                let c = &crossings[lvl];
                pos == c.columns.0 - 1 || pos == c.columns.1 - 1
            });
            match hit {
                None => {
                    // bottom of the braid: the closure arc dips to a minimum,
                    // sweeps around the right and over a maximum, both
                    // counter-clockwise, and re-enters at the top
                    pending.push(Extremum { kind: ExtremumKind::Minimum, clockwise: false });
                    pending.push(Extremum { kind: ExtremumKind::Maximum, clockwise: false });
                    level = 0;
                }
                Some(lvl) => {
                    if passages.len() == 2 * n {
                        // wrapped around to the first passage: the pending
                        // extrema belong to the closing edge
                        if lvl != passages[0].crossing {
                            return Err(Error::Internal("trace did not close up".into()));
                        }
                        edge_extrema.push(std::mem::take(&mut pending));
                        break;
                    }
                    let c = &crossings[lvl];
                    let ci = c.columns.0 - 1;
                    let entering_left = pos == ci;
                    // positive letters: the strand entering up-right is over
                    let over = if c.sign > 0 { !entering_left } else { entering_left };
                    let in_slot = if entering_left { SLOT_UL } else { SLOT_UR };
                    let out_slot = if entering_left { SLOT_DR } else { SLOT_DL };
                    if !passages.is_empty() {
                        edge_extrema.push(std::mem::take(&mut pending));
                    }
                    passages.push(Passage { crossing: lvl, over, in_slot, out_slot });
                    pos = if entering_left { ci + 1 } else { ci };
                    level = lvl + 1;
                }
            }
        }

        if passages.len() != 2 * n || edge_extrema.len() != 2 * n {
            return Err(Error::Internal(format!(
                "trace produced {} passages / {} edges for n = {n}",
                passages.len(),
                edge_extrema.len()
            )));
        }

        // faces from the rotation system
        let (faces, wedge_face, edge_flanks) = trace_faces(n, &passages)?;
        if faces.len() != n + 2 {
            return Err(Error::Internal(format!(
                "face count {} violates Euler's relation (expected {})",
                faces.len(),
                n + 2
            )));
        }

        // reducibility: each crossing must see 4 distinct faces
        for (nu, wf) in wedge_face.iter().enumerate() {
            let mut v = wf.to_vec();
            v.sort_unstable();
            v.dedup();
            if v.len() != 4 {
                return Err(Error::ReducibleCrossing { crossing: nu, distinct: v.len() });
            }
        }

        let mut r_sets = vec![Vec::new(); faces.len()];
        for (nu, wf) in wedge_face.iter().enumerate() {
            for &f in wf {
                if !r_sets[f].contains(&nu) {
                    r_sets[f].push(nu);
                }
            }
        }

        let edges: Vec<DiagEdge> = (0..2 * n)
            .map(|i| DiagEdge {
                from_passage: i,
                to_passage: (i + 1) % (2 * n),
                extrema: edge_extrema[i].clone(),
                flanks: edge_flanks[i],
            })
            .collect();

        let mut maxima_cw = 0;
        let mut maxima_ccw = 0;
        for e in &edges {
            for x in &e.extrema {
                if x.kind == ExtremumKind::Maximum {
                    if x.clockwise {
                        maxima_cw += 1;
                    } else {
                        maxima_ccw += 1;
                    }
                }
            }
        }

        Ok(KnotDiagram {
            strands: k,
            word,
            crossings,
            passages,
            edges,
            faces,
            wedge_face,
            r_sets,
            maxima_cw,
            maxima_ccw,
        })
    }

    pub fn n(&self) -> usize {
        self.crossings.len()
    }

    /// 𝒬_ν as a sorted set of distinct face ids.
    pub fn q_set(&self, nu: usize) -> [usize; 4] {
        let mut q = self.wedge_face[nu];
        q.sort_unstable();
        q
    }

    /// The passage where the curve goes over (resp. under) crossing ν.
    pub fn passage_of(&self, nu: usize, over: bool) -> usize {
        self.passages
            .iter()
            .position(|p| p.crossing == nu && p.over == over)
            .expect("every crossing has one over and one under passage")
    }

    /// Edge arriving at the given slot of crossing ν, with which end.
    pub fn edge_at_slot(&self, nu: usize, slot: usize) -> (usize, bool) {
        // returns (edge index, true if the edge ENTERS the crossing here)
        for (i, p) in self.passages.iter().enumerate() {
            if p.crossing == nu {
                if p.in_slot == slot {
                    let e = (i + self.passages.len() - 1) % self.passages.len();
                    return (e, true);
                }
                if p.out_slot == slot {
                    return (i, false);
                }
            }
        }
        unreachable!("slot {slot} of crossing {nu} not on the curve")
    }

    /// Edge occupying a role slot at crossing ν.
    pub fn edge_at_role(&self, nu: usize, role: Role) -> (usize, bool) {
        self.edge_at_slot(nu, role_slot(self.crossings[nu].sign, role))
    }

    /// Writhe Σ ε(ν).
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// q^{1/2}-normalisation exponent |𝒳| - |𝒴|.
    pub fn rotation_exponent(&self) -> i64 {
        self.maxima_cw as i64 - self.maxima_ccw as i64
    }
}

/// Face tracing on the rotation system. Returns the face list, the face
/// at each (crossing, wedge), and each edge's flanking face pair.
fn trace_faces(
    n: usize,
    passages: &[Passage],
) -> Result<(Vec<Face>, Vec<[usize; 4]>, Vec<(usize, usize)>)> {
    let m = passages.len(); // = 2n; edge i: passages[i] -> passages[i+1]
    // darts: (edge, forward?) — forward means from passages[i] to passages[i+1]
    // at arrival crossing via slot s, the face walk departs via slot (s+1)%4,
    // claiming wedge s.
    let slot_user = |nu: usize, slot: usize| -> (usize, bool) {
        // (edge, departing?) at this slot: departing = the edge leaves ν here
        for (i, p) in passages.iter().enumerate() {
            if p.crossing == nu {
                if p.out_slot == slot {
                    return (i, true);
                }
                if p.in_slot == slot {
                    return ((i + m - 1) % m, false);
                }
            }
        }
        unreachable!()
    };

    let mut face_of_dart = vec![[usize::MAX; 2]; m]; // [forward, backward]
    let mut faces: Vec<Face> = Vec::new();
    let mut wedge_face = vec![[usize::MAX; 4]; n];
    let mut edge_flanks = vec![(usize::MAX, usize::MAX); m];

    for e0 in 0..m {
        for dir0 in 0..2 {
            if face_of_dart[e0][dir0] != usize::MAX {
                continue;
            }
            let fid = faces.len();
            let mut corners = Vec::new();
            let (mut e, mut fwd) = (e0, dir0 == 0);
            loop {
                let di = if fwd { 0 } else { 1 };
                if face_of_dart[e][di] != usize::MAX {
                    break;
                }
                face_of_dart[e][di] = fid;
                // arrival crossing and slot
                let (nu, arr_slot) = if fwd {
                    let p = &passages[(e + 1) % m];
                    (p.crossing, p.in_slot)
                } else {
                    let p = &passages[e];
                    (p.crossing, p.out_slot)
                };
                let wedge = arr_slot; // wedge between arr_slot and arr_slot+1
                if wedge_face[nu][wedge] != usize::MAX && wedge_face[nu][wedge] != fid {
                    return Err(Error::Internal("wedge claimed by two faces".into()));
                }
                wedge_face[nu][wedge] = fid;
                corners.push((nu, wedge));
                let dep_slot = (arr_slot + 1) % 4;
                let (e2, departing) = slot_user(nu, dep_slot);
                e = e2;
                fwd = departing;
            }
            if !corners.is_empty() {
                faces.push(Face { corners });
            }
        }
    }

    for (e, ff) in face_of_dart.iter().enumerate() {
        edge_flanks[e] = (ff[0], ff[1]);
        if ff[0] == usize::MAX || ff[1] == usize::MAX {
            return Err(Error::Internal("edge with unassigned face side".into()));
        }
    }
    for wf in &wedge_face {
        if wf.iter().any(|&f| f == usize::MAX) {
            return Err(Error::Internal("unclaimed wedge after face trace".into()));
        }
    }

    Ok((faces, wedge_face, edge_flanks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rejects_garbage_and_empty() {
        assert!(BraidWord::parse("").is_err());
        assert!(BraidWord::parse("s0").is_err());
        assert!(BraidWord::parse("sx").is_err());
        assert!(BraidWord::parse("s1 s2 q3").is_err());
    }

    #[test]
    fn trefoil_counts() {
        let d = KnotDiagram::from_braid("s1 s1 s1").unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.faces.len(), 5);
        assert_eq!(d.passages.len(), 6);
    }

    #[test]
    fn figure_eight_counts() {
        let d = KnotDiagram::from_braid("s1 -s2 s1 -s2").unwrap();
        assert_eq!(d.n(), 4);
        assert_eq!(d.faces.len(), 6);
        // alternating: every edge has one over end and one under end
        for e in &d.edges {
            let over_out = d.passages[e.from_passage].over;
            let over_in = d.passages[e.to_passage].over;
            assert_ne!(over_out, over_in, "4_1 braid closure must alternate");
        }
        // all closure maxima are counter-clockwise
        assert_eq!(d.maxima_cw, 0);
        assert_eq!(d.maxima_ccw, 3);
    }

    #[test]
    fn five_two_counts() {
        let d = KnotDiagram::from_braid("s1 s1 s1 -s2 s1 -s2").unwrap();
        assert_eq!(d.n(), 6);
        assert_eq!(d.faces.len(), 8);
    }

    #[test]
    fn hopf_link_rejected() {
        let err = KnotDiagram::from_braid("s1 s1").unwrap_err();
        match err {
            Error::MultiComponent { components } => assert_eq!(components, 2),
            e => panic!("expected MultiComponent, got {e}"),
        }
    }

    #[test]
    fn q_r_duality_and_euler() {
        for word in ["s1 s1 s1", "s1 -s2 s1 -s2", "s1 s1 s1 -s2 s1 -s2", "s1 s2 s1 s2 s1 s2"] {
            let d = match KnotDiagram::from_braid(word) {
                Ok(d) => d,
                Err(Error::MultiComponent { .. }) => continue,
                Err(e) => panic!("{word}: {e}"),
            };
            assert_eq!(d.faces.len(), d.n() + 2, "{word}");
            for nu in 0..d.n() {
                for f in d.q_set(nu) {
                    assert!(d.r_sets[f].contains(&nu), "{word}: duality");
                }
            }
            for (f, rs) in d.r_sets.iter().enumerate() {
                for &nu in rs {
                    assert!(d.q_set(nu).contains(&f), "{word}: duality");
                }
            }
        }
    }

    #[test]
    fn roles_partition_slots() {
        for sign in [1i8, -1] {
            let mut slots: Vec<usize> = ROLES.iter().map(|&r| role_slot(sign, r)).collect();
            slots.sort_unstable();
            assert_eq!(slots, vec![0, 1, 2, 3]);
        }
        // corner wedges: (α,β) top, (δ,γ) bottom for both signs
        for sign in [1i8, -1] {
            assert_eq!(CornerKind::AlphaBeta.wedge(sign), 0);
            assert_eq!(CornerKind::DeltaGamma.wedge(sign), 2);
        }
        assert_eq!(CornerKind::BetaDelta.wedge(1), 1);
        assert_eq!(CornerKind::BetaDelta.wedge(-1), 3);
        assert_eq!(CornerKind::GammaAlpha.wedge(1), 3);
        assert_eq!(CornerKind::GammaAlpha.wedge(-1), 1);
    }

    #[test]
    fn json_round_trip() {
        let d = KnotDiagram::from_braid("s1 -s2 s1 -s2").unwrap();
        let s = serde_json::to_string(&d).unwrap();
        let d2: KnotDiagram = serde_json::from_str(&s).unwrap();
        assert_eq!(d, d2);
    }
}

