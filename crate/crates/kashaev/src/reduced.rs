//! The reduced graph G and the tetrahedron census.
//!
//! Removing the simple arc through the base point (overpass A, base edge,
//! underpass B) leaves a diagram G whose vertices are the m surviving
//! 4-valent crossings plus two trivalent vertices at X and Y. Its edge
//! set ℰ always has exactly 2m+3 members (a degree count), each a chain
//! of diagram sub-edges glued through ex-bridge crossings and closure
//! extrema; the gluing shifts are recorded as events so the state sum can
//! reconstruct exact residue values along each chain.
//!
//! Each surviving crossing contributes collapse corners:
//!
//! * a full crossing keeps all four corners,
//! * X keeps the (β,δ) and (δ,γ) corners (its under-in half-edge is on
//!   the removed arc),
//! * Y keeps (α,β) and (β,δ) (its over-out half is removed),
//!
//! and a corner whose face is R_0 or R_{n+1} is degenerate: it stays in
//! the state-sum weights (where its value is pinned to zero on the
//! support) but drops out of the tetrahedron census. The live counts must
//! reproduce the five survival cases — 0 on the bridge, 1 at X or Y on
//! the distinguished faces, 2 at X or Y off them, 3 at a crossing seeing
//! a distinguished face, 4 otherwise — and the whole construction is
//! rejected if they do not.

use serde::{Deserialize, Serialize};

use crate::basepoint::BasePointDecomposition;
use crate::diagram::{role_slot, CornerKind, Extremum, KnotDiagram, Role, CORNERS, ROLES};
use crate::error::{Error, Result};

/// The `seg`-th sub-edge (between consecutive extrema) of a diagram edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubEdgeRef {
    pub edge: usize,
    pub seg: usize,
}

/// Residue-shift event between consecutive sub-edges of a G-edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GEvent {
    Extremum(Extremum),
    /// passing through an ex-bridge crossing; `arc_over` tells whether the
    /// removed arc runs over it (overpass A) or under it (underpass B)
    Bridge { crossing: usize, arc_over: bool, sign: i8 },
}

/// An edge of G: a maximal chain of diagram sub-edges between two
/// surviving vertices, walked along the knot orientation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GEdge {
    pub subedges: Vec<SubEdgeRef>,
    /// events between consecutive sub-edges (len = subedges.len() - 1)
    pub events: Vec<GEvent>,
    /// (crossing, slot) where the chain starts / ends
    pub start: (usize, usize),
    pub end: (usize, usize),
    /// every sub-edge borders R_0 or R_{n+1}: the pinned set ℱ
    pub on_boundary: bool,
    /// ε(φ): +1 over at both ends, -1 under at both, 0 mixed
    pub eps: i8,
}

/// Where a crossing role attaches to a G-edge: at its start (sub 0) or
/// its end (last sub-edge).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotRef {
    pub gedge: usize,
    /// index into the G-edge's `subedges`
    pub sub: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexKind {
    X,
    Y,
    Full,
}

/// A surviving crossing with its role attachments (α, β, γ, δ order;
/// removed half-edges give None).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GVertex {
    pub crossing: usize,
    pub kind: VertexKind,
    pub sign: i8,
    pub roles: [Option<SlotRef>; 4],
}

impl GVertex {
    pub fn role(&self, r: Role) -> Option<SlotRef> {
        self.roles[ROLES.iter().position(|&x| x == r).unwrap()]
    }
}

/// One collapse corner: the unit carrying a q-factorial in the reduced
/// state sum and, when live, an ideal tetrahedron in the triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub nu: usize,
    pub corner: CornerKind,
    /// μ: the face at this corner
    pub face: usize,
    /// shape z(φ)/z(ψ) in G-edge ids
    pub phi: usize,
    pub psi: usize,
    /// ε(ν,μ)
    pub sign: i8,
    /// false when the face is R_0/R_{n+1} (degenerate tetrahedron)
    pub live: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TetrahedronCensus {
    /// all collapse corners, in crossing order
    pub entries: Vec<CensusEntry>,
}

impl TetrahedronCensus {
    /// The surviving tetrahedra (live corners).
    pub fn live(&self) -> impl Iterator<Item = &CensusEntry> {
        self.entries.iter().filter(|e| e.live)
    }

    pub fn live_count(&self) -> usize {
        self.live().count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedGraph {
    pub m: usize,
    /// ℰ in deterministic construction order; |ℰ| = 2m+3
    pub edges: Vec<GEdge>,
    pub vertices: Vec<GVertex>,
    pub census: TetrahedronCensus,
    /// face id -> class id under the arc-removal merges
    pub face_class: Vec<usize>,
    /// class id of the merged R_0 ∪ R_{n+1} face
    pub boundary_class: usize,
    /// ℳ_0 .. ℳ_{m+1}: the non-boundary classes as face-id lists, with
    /// ℳ_0 adjacent to X and ℳ_{m+1} adjacent to Y
    pub m_classes: Vec<Vec<usize>>,
}

impl ReducedGraph {
    /// Edges of ℰ ∖ ℱ (the unknowns of the stationary system).
    pub fn free_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| !self.edges[e].on_boundary).collect()
    }

    pub fn pinned_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].on_boundary).collect()
    }

    pub fn vertex_of(&self, crossing: usize) -> Option<&GVertex> {
        self.vertices.iter().find(|v| v.crossing == crossing)
    }

    /// The neighbor edges (other edge of each live corner) around an edge,
    /// for diagnostics and serialization; empty slots at the trivalent
    /// vertices are simply absent.
    pub fn neighbors(&self, e: usize) -> Vec<usize> {
        let mut v = Vec::new();
        for entry in self.census.live() {
            if entry.phi == e {
                v.push(entry.psi);
            } else if entry.psi == e {
                v.push(entry.phi);
            }
        }
        v
    }
}

/// Build G, its face partition, and the census for a chosen base point.
pub fn build_reduced_graph(
    d: &KnotDiagram,
    bp: &BasePointDecomposition,
) -> Result<ReducedGraph> {
    let n = d.n();
    let np = d.passages.len();
    let bridge: Vec<usize> = bp.bridge_set();
    let m = n - bridge.len() - 2;

    // removed diagram edges: the out-edges of every arc passage
    let mut removed_edge = vec![false; np];
    let mut arc_passage = vec![false; np];
    {
        let p_y_over = d.passage_of(bp.y, true);
        removed_edge[p_y_over] = true;
        for &nu in &bp.underpass {
            let p = d.passage_of(nu, false);
            arc_passage[p] = true;
            removed_edge[p] = true;
        }
        for &nu in &bp.overpass {
            let p = d.passage_of(nu, true);
            arc_passage[p] = true;
            removed_edge[p] = true;
        }
    }

    let surviving = |nu: usize| -> bool { !bp.is_bridge(nu) };

    // --- G edges ------------------------------------------------------
    // start slots: out-roles of surviving crossings, minus Y's removed
    // over-out; walk forward to the next surviving crossing.
    let mut edges: Vec<GEdge> = Vec::new();
    let mut start_map: Vec<Option<usize>> = vec![None; 4 * n]; // (crossing, slot) -> gedge
    let mut end_map: Vec<Option<usize>> = vec![None; 4 * n];

    let mut starts: Vec<(usize, usize)> = Vec::new(); // (crossing, out slot)
    for nu in 0..n {
        if !surviving(nu) {
            continue;
        }
        let sign = d.crossings[nu].sign;
        for role in [Role::OverOut, Role::UnderOut] {
            if nu == bp.y && role == Role::OverOut {
                continue; // removed half-edge at Y
            }
            starts.push((nu, role_slot(sign, role)));
        }
    }
    starts.sort_unstable();

    for &(nu0, slot0) in &starts {
        let (mut e, entering) = d.edge_at_slot(nu0, slot0);
        debug_assert!(!entering);
        let mut subedges = Vec::new();
        let mut events = Vec::new();
        let (end_nu, end_slot);
        loop {
            if removed_edge[e] {
                return Err(Error::Internal(format!(
                    "G-edge walk entered removed edge {e}"
                )));
            }
            let de = &d.edges[e];
            for seg in 0..=de.extrema.len() {
                if seg > 0 {
                    events.push(GEvent::Extremum(de.extrema[seg - 1]));
                }
                subedges.push(SubEdgeRef { edge: e, seg });
            }
            let p_to = de.to_passage;
            let q = &d.passages[p_to];
            if surviving(q.crossing) {
                end_nu = q.crossing;
                end_slot = q.in_slot;
                break;
            }
            // bridge pass-through: the arc is over iff the surviving
            // strand passes under here
            events.push(GEvent::Bridge {
                crossing: q.crossing,
                arc_over: !q.over,
                sign: d.crossings[q.crossing].sign,
            });
            e = p_to; // edge leaving passage p_to has index p_to
        }
        let on_boundary = subedges.iter().all(|s| {
            let f = d.edges[s.edge].flanks;
            f.0 == bp.r0 || f.0 == bp.rn1 || f.1 == bp.r0 || f.1 == bp.rn1
        });
        let gid = edges.len();
        start_map[4 * nu0 + slot0] = Some(gid);
        end_map[4 * end_nu + end_slot] = Some(gid);
        edges.push(GEdge {
            subedges,
            events,
            start: (nu0, slot0),
            end: (end_nu, end_slot),
            on_boundary,
            eps: 0, // filled below
        });
    }

    if edges.len() != 2 * m + 3 {
        return Err(Error::Internal(format!(
            "|E| = {} but 2m+3 = {}",
            edges.len(),
            2 * m + 3
        )));
    }

    // ε(φ): over/under at both end vertices
    let slot_is_over = |nu: usize, slot: usize| -> bool {
        let sign = d.crossings[nu].sign;
        slot == role_slot(sign, Role::OverIn) || slot == role_slot(sign, Role::OverOut)
    };
    for ge in edges.iter_mut() {
        let s_over = slot_is_over(ge.start.0, ge.start.1);
        let e_over = slot_is_over(ge.end.0, ge.end.1);
        ge.eps = match (s_over, e_over) {
            (true, true) => 1,
            (false, false) => -1,
            _ => 0,
        };
    }

    // --- vertices with role attachments --------------------------------
    let mut vertices = Vec::new();
    for nu in 0..n {
        if !surviving(nu) {
            continue;
        }
        let sign = d.crossings[nu].sign;
        let kind = if nu == bp.x {
            VertexKind::X
        } else if nu == bp.y {
            VertexKind::Y
        } else {
            VertexKind::Full
        };
        let mut roles: [Option<SlotRef>; 4] = [None; 4];
        for (ri, &role) in ROLES.iter().enumerate() {
            if (kind == VertexKind::X && role == Role::UnderIn)
                || (kind == VertexKind::Y && role == Role::OverOut)
            {
                continue;
            }
            let slot = role_slot(sign, role);
            let sref = match role {
                Role::OverOut | Role::UnderOut => {
                    let g = start_map[4 * nu + slot].ok_or_else(|| {
                        Error::Internal(format!("missing G-edge at out slot of {nu}"))
                    })?;
                    SlotRef { gedge: g, sub: 0 }
                }
                Role::OverIn | Role::UnderIn => {
                    let g = end_map[4 * nu + slot].ok_or_else(|| {
                        Error::Internal(format!("missing G-edge at in slot of {nu}"))
                    })?;
                    SlotRef { gedge: g, sub: edges[g].subedges.len() - 1 }
                }
            };
            roles[ri] = Some(sref);
        }
        vertices.push(GVertex { crossing: nu, kind, sign, roles });
    }

    // --- census ---------------------------------------------------------
    let mut entries = Vec::new();
    for v in &vertices {
        let corners: &[CornerKind] = match v.kind {
            VertexKind::X => &[CornerKind::BetaDelta, CornerKind::DeltaGamma],
            VertexKind::Y => &[CornerKind::AlphaBeta, CornerKind::BetaDelta],
            VertexKind::Full => &CORNERS,
        };
        for &corner in corners {
            let face = d.wedge_face[v.crossing][corner.wedge(v.sign)];
            let (r1, r2) = corner.roles();
            let e1 = v.role(r1).ok_or_else(|| Error::Internal("corner role missing".into()))?;
            let e2 = v.role(r2).ok_or_else(|| Error::Internal("corner role missing".into()))?;
            let (phi, psi) = if v.sign > 0 {
                (e1.gedge, e2.gedge)
            } else {
                (e2.gedge, e1.gedge)
            };
            entries.push(CensusEntry {
                nu: v.crossing,
                corner,
                face,
                phi,
                psi,
                sign: corner.epsilon_factor() * v.sign,
                live: face != bp.r0 && face != bp.rn1,
            });
        }
    }
    let census = TetrahedronCensus { entries };

    // survival counts must match the five cases
    for v in &vertices {
        let live = census.entries.iter().filter(|e| e.nu == v.crossing && e.live).count();
        let in_r = bp.in_r(d, v.crossing);
        let expected = match (v.kind, in_r) {
            (VertexKind::X, true) | (VertexKind::Y, true) => 1,
            (VertexKind::X, false) | (VertexKind::Y, false) => 2,
            (VertexKind::Full, true) => 3,
            (VertexKind::Full, false) => 4,
        };
        if live != expected {
            return Err(Error::Internal(format!(
                "census: crossing {} survives {} tetrahedra, cases require {}",
                v.crossing, live, expected
            )));
        }
    }

    // --- face classes under the arc removal ------------------------------
    let nf = d.faces.len();
    let mut uf: Vec<usize> = (0..nf).collect();
    fn find(uf: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut c = x;
        while uf[c] != r {
            let nx = uf[c];
            uf[c] = r;
            c = nx;
        }
        r
    }
    let union = |uf: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(uf, a), find(uf, b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            uf[hi] = lo;
        }
    };
    for (e, de) in d.edges.iter().enumerate() {
        if removed_edge[e] {
            union(&mut uf, de.flanks.0, de.flanks.1);
        }
    }
    // removed half-edges at bridge crossings and at X, Y merge the wedge
    // faces adjacent to their slots
    let merge_slot = |uf: &mut Vec<usize>, nu: usize, slot: usize| {
        let w1 = d.wedge_face[nu][slot]; // wedge between slot, slot+1
        let w0 = d.wedge_face[nu][(slot + 3) % 4];
        union(uf, w0, w1);
    };
    for p in 0..np {
        if arc_passage[p] {
            let q = &d.passages[p];
            merge_slot(&mut uf, q.crossing, q.in_slot);
            merge_slot(&mut uf, q.crossing, q.out_slot);
        }
    }
    merge_slot(&mut uf, bp.x, role_slot(d.crossings[bp.x].sign, Role::UnderIn));
    merge_slot(&mut uf, bp.y, role_slot(d.crossings[bp.y].sign, Role::OverOut));

    let face_class: Vec<usize> = (0..nf).map(|f| find(&mut uf, f)).collect();
    if face_class[bp.r0] != face_class[bp.rn1] {
        return Err(Error::Internal("R_0 and R_{n+1} do not merge in G".into()));
    }
    let boundary_class = face_class[bp.r0];

    let mut class_ids: Vec<usize> = face_class.iter().cloned().collect();
    class_ids.sort_unstable();
    class_ids.dedup();
    let nonboundary: Vec<usize> =
        class_ids.iter().cloned().filter(|&c| c != boundary_class).collect();
    if nonboundary.len() != m + 2 {
        return Err(Error::Internal(format!(
            "G has {} interior faces, expected m+2 = {}",
            nonboundary.len(),
            m + 2
        )));
    }

    // ℳ_0 hosts (Q_a ∩ Q_x) ∖ {0, n+1}; ℳ_{m+1} hosts (Q_b ∩ Q_y) ∖ {0, n+1}
    let class_of_intersection = |c1: usize, c2: usize| -> Result<usize> {
        let q2 = d.q_set(c2);
        let mut classes: Vec<usize> = d
            .q_set(c1)
            .iter()
            .filter(|f| q2.contains(f) && **f != bp.r0 && **f != bp.rn1)
            .map(|&f| face_class[f])
            .collect();
        classes.sort_unstable();
        classes.dedup();
        match classes.len() {
            1 => Ok(classes[0]),
            0 => Err(Error::Internal("cusp face intersection empty".into())),
            _ => Err(Error::Internal("cusp face intersection spans several G-faces".into())),
        }
    };
    let ca = *bp.overpass.last().unwrap();
    let cb = bp.underpass[0];
    let m0 = class_of_intersection(ca, bp.x)?;
    let mm1 = class_of_intersection(cb, bp.y)?;
    if m0 == mm1 {
        return Err(Error::Internal("M_0 and M_{m+1} coincide".into()));
    }

    let mut m_classes: Vec<Vec<usize>> = Vec::with_capacity(m + 2);
    let faces_of = |c: usize| -> Vec<usize> {
        (0..nf).filter(|&f| face_class[f] == c).collect()
    };
    m_classes.push(faces_of(m0));
    for &c in &nonboundary {
        if c != m0 && c != mm1 {
            m_classes.push(faces_of(c));
        }
    }
    m_classes.push(faces_of(mm1));

    // every free edge must carry a usable stationary equation
    for (ei, ge) in edges.iter().enumerate() {
        if ge.on_boundary {
            continue;
        }
        let inc = census
            .entries
            .iter()
            .filter(|c| c.live && (c.phi == ei || c.psi == ei))
            .count();
        if inc < 2 {
            return Err(Error::Internal(format!(
                "free edge {ei} appears in {inc} live corners; system degenerate"
            )));
        }
    }

    Ok(ReducedGraph {
        m,
        edges,
        vertices,
        census,
        face_class,
        boundary_class,
        m_classes,
    })
}
