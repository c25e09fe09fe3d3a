//! Combinatorial maps of webs: the isotopy-invariant core of a drawing.
//!
//! A map stores trivalent vertices with a counterclockwise cyclic order of
//! edge ends, univalent boundary points in their linear order along the top,
//! and an orientation per edge. Faces come from the usual dart-orbit
//! traversal after closing the disk with virtual boundary arcs (one arc per
//! gap between consecutive boundary points, plus one closing arc around the
//! bottom). The arcs exist only during face computation; they are never part
//! of the web.
//!
//! Closed strands with no vertices are tracked as a bare `free_loops` count.
//! Closed components that do contain vertices are rejected: nothing in this
//! crate produces them from boundary-connected input.

use std::collections::{HashMap, VecDeque};

use crate::quantum::{Sign, SignString};
use crate::web::{SliceGen, Web};

/// Attachment of an edge end: a boundary point or an internal vertex port.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Att {
    B(usize),
    V(usize, u8),
}

#[derive(Clone, Copy, Debug)]
pub struct EdgeEnd {
    pub at: Att,
    /// True when the strand points into the attachment at this end
    /// (this end is the head of the oriented edge).
    pub incoming: bool,
}

/// A face of the closed-disk map.
#[derive(Clone, Debug)]
pub struct Face {
    /// Darts in traversal order; the face lies on the left of each dart.
    pub darts: Vec<usize>,
    /// Number of web-edge darts on the face (arc darts excluded).
    pub len: usize,
    /// True when the face uses a boundary arc.
    pub touches_boundary: bool,
}

/// Face decomposition together with the named faces used by cut paths.
pub struct FaceData {
    pub faces: Vec<Face>,
    dart_face: HashMap<usize, usize>,
    /// Face below the web, inside the disk (along the closing arc).
    pub p_face: Option<usize>,
    /// Face at the gap between boundary points `k` and `k+1`.
    pub q_faces: Vec<usize>,
    /// Face outside the disk.
    pub outside: Option<usize>,
}

impl FaceData {
    pub fn face_of_dart(&self, d: usize) -> usize {
        self.dart_face[&d]
    }
}

#[derive(Clone)]
pub struct WebMap {
    boundary_signs: SignString,
    /// Per boundary point: (edge, side) of the strand end attached there.
    boundary_edge: Vec<(usize, u8)>,
    /// Per vertex: counterclockwise (edge, side) triple; `None` once deleted.
    vertices: Vec<Option<[(usize, u8); 3]>>,
    /// Per edge: both ends; `None` once deleted or merged away.
    edges: Vec<Option<[EdgeEnd; 2]>>,
    pub free_loops: usize,
}

impl WebMap {
    pub fn boundary_signs(&self) -> &SignString {
        &self.boundary_signs
    }

    pub fn n_boundary(&self) -> usize {
        self.boundary_edge.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.iter().flatten().count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().flatten().count()
    }

    pub(crate) fn edge_ends(&self, e: usize) -> [EdgeEnd; 2] {
        self.edges[e].expect("edge is dead")
    }

    pub(crate) fn vertex_ports(&self, v: usize) -> [(usize, u8); 3] {
        self.vertices[v].expect("vertex is dead")
    }

    pub(crate) fn live_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.as_ref().map(|_| i))
    }

    /// Extract the map from a slice word. Fails on webs with a nonempty
    /// lower boundary or with closed vertex-bearing components.
    pub fn from_web(web: &Web) -> Result<WebMap, String> {
        if !web.bottom_signs().is_empty() {
            return Err("maps are only defined for webs with an empty lower boundary".into());
        }

        // partial strands are edges under construction; a cross-section slot
        // is (strand, side) of a still-dangling end
        #[derive(Clone, Copy)]
        struct PartEnd {
            at: Option<Att>,
            incoming: bool,
        }
        let mut strands: Vec<Option<[PartEnd; 2]>> = Vec::new();
        let mut verts: Vec<[(usize, u8); 3]> = Vec::new();
        let mut free_loops = 0usize;
        let mut section: Vec<(usize, u8)> = Vec::new();

        // rewrite references after a splice
        fn rename(
            section: &mut [(usize, u8)],
            verts: &mut [[(usize, u8); 3]],
            from: (usize, u8),
            to: (usize, u8),
        ) {
            for slot in section.iter_mut() {
                if *slot == from {
                    *slot = to;
                }
            }
            for v in verts.iter_mut() {
                for p in v.iter_mut() {
                    if *p == from {
                        *p = to;
                    }
                }
            }
        }

        for layer in web.layers() {
            let mut next_section: Vec<(usize, u8)> = Vec::new();
            let mut pos = 0usize;
            for g in layer {
                let ins: Vec<(usize, u8)> = section[pos..pos + g.arity_below()].to_vec();
                pos += g.arity_below();
                match g {
                    SliceGen::Id(_) => next_section.push(ins[0]),
                    SliceGen::Cup(s) => {
                        let up = *s == Sign::Plus;
                        let id = strands.len();
                        strands.push(Some([
                            PartEnd {
                                at: None,
                                incoming: up,
                            },
                            PartEnd {
                                at: None,
                                incoming: !up,
                            },
                        ]));
                        next_section.push((id, 0));
                        next_section.push((id, 1));
                    }
                    SliceGen::Cap(_) => {
                        let (ea, sa) = ins[0];
                        let (eb, sb) = ins[1];
                        if ea == eb {
                            free_loops += 1;
                            strands[ea] = None;
                        } else {
                            let a = strands[ea].take().unwrap();
                            let b = strands[eb].take().unwrap();
                            let id = strands.len();
                            let kept_a = a[(sa ^ 1) as usize];
                            let kept_b = b[(sb ^ 1) as usize];
                            assert_ne!(
                                kept_a.incoming, kept_b.incoming,
                                "cap splice would break orientation"
                            );
                            strands.push(Some([kept_a, kept_b]));
                            rename(&mut next_section, &mut verts, (ea, sa ^ 1), (id, 0));
                            rename(&mut next_section, &mut verts, (eb, sb ^ 1), (id, 1));
                            // the not-yet-processed tail of the current section
                            rename(&mut section[pos..], &mut [], (ea, sa ^ 1), (id, 0));
                            rename(&mut section[pos..], &mut [], (eb, sb ^ 1), (id, 1));
                        }
                    }
                    SliceGen::Split(s) => {
                        let up = *s == Sign::Plus;
                        let v = verts.len();
                        let (e0, s0) = ins[0];
                        strands[e0].as_mut().unwrap()[s0 as usize].at = Some(Att::V(v, 0));
                        let l = strands.len();
                        strands.push(Some([
                            PartEnd {
                                at: None,
                                incoming: up,
                            },
                            PartEnd {
                                at: Some(Att::V(v, 2)),
                                incoming: !up,
                            },
                        ]));
                        let r = strands.len();
                        strands.push(Some([
                            PartEnd {
                                at: None,
                                incoming: up,
                            },
                            PartEnd {
                                at: Some(Att::V(v, 1)),
                                incoming: !up,
                            },
                        ]));
                        // counterclockwise: below, upper right, upper left
                        verts.push([(e0, s0), (r, 1), (l, 1)]);
                        next_section.push((l, 0));
                        next_section.push((r, 0));
                    }
                    SliceGen::Join(s) => {
                        let up = *s == Sign::Plus;
                        let v = verts.len();
                        let (e0, s0) = ins[0];
                        let (e1, s1) = ins[1];
                        strands[e0].as_mut().unwrap()[s0 as usize].at = Some(Att::V(v, 1));
                        strands[e1].as_mut().unwrap()[s1 as usize].at = Some(Att::V(v, 2));
                        let t = strands.len();
                        strands.push(Some([
                            PartEnd {
                                at: None,
                                incoming: up,
                            },
                            PartEnd {
                                at: Some(Att::V(v, 0)),
                                incoming: !up,
                            },
                        ]));
                        // counterclockwise: above, below left, below right
                        verts.push([(t, 1), (e0, s0), (e1, s1)]);
                        next_section.push((t, 0));
                    }
                    SliceGen::H(s) => {
                        let up = *s == Sign::Plus;
                        let vl = verts.len();
                        let vr = vl + 1;
                        let (e0, s0) = ins[0];
                        let (e1, s1) = ins[1];
                        strands[e0].as_mut().unwrap()[s0 as usize].at = Some(Att::V(vl, 1));
                        strands[e1].as_mut().unwrap()[s1 as usize].at = Some(Att::V(vr, 2));
                        // bar strand, oriented left-to-right exactly when the
                        // left vertex is the all-out one (s = +)
                        let bar = strands.len();
                        strands.push(Some([
                            PartEnd {
                                at: Some(Att::V(vl, 2)),
                                incoming: !up,
                            },
                            PartEnd {
                                at: Some(Att::V(vr, 1)),
                                incoming: up,
                            },
                        ]));
                        let tl = strands.len();
                        strands.push(Some([
                            PartEnd {
                                at: None,
                                incoming: up,
                            },
                            PartEnd {
                                at: Some(Att::V(vl, 0)),
                                incoming: !up,
                            },
                        ]));
                        let tr = strands.len();
                        strands.push(Some([
                            PartEnd {
                                at: None,
                                incoming: !up,
                            },
                            PartEnd {
                                at: Some(Att::V(vr, 0)),
                                incoming: up,
                            },
                        ]));
                        // left vertex ccw: top, below, bar; right: top, bar, below
                        verts.push([(tl, 1), (e0, s0), (bar, 0)]);
                        verts.push([(tr, 1), (bar, 1), (e1, s1)]);
                        next_section.push((tl, 0));
                        next_section.push((tr, 0));
                    }
                }
            }
            section = next_section;
        }

        // remaining dangling ends are the top boundary, left to right
        let n = section.len();
        assert_eq!(n, web.top_signs().len());
        for (i, &(e, s)) in section.iter().enumerate() {
            let end = &mut strands[e].as_mut().unwrap()[s as usize];
            assert!(end.at.is_none());
            end.at = Some(Att::B(i));
            let expect_in = web.top_signs().0[i] == Sign::Plus;
            assert_eq!(
                end.incoming, expect_in,
                "boundary sign mismatch at point {i}"
            );
        }

        // compact live strands into edges
        let mut edge_of_strand: HashMap<usize, usize> = HashMap::new();
        let mut edges: Vec<Option<[EdgeEnd; 2]>> = Vec::new();
        for (i, s) in strands.iter().enumerate() {
            if let Some(ends) = s {
                let fin = [
                    EdgeEnd {
                        at: ends[0].at.expect("dangling end"),
                        incoming: ends[0].incoming,
                    },
                    EdgeEnd {
                        at: ends[1].at.expect("dangling end"),
                        incoming: ends[1].incoming,
                    },
                ];
                assert_ne!(fin[0].incoming, fin[1].incoming, "edge with two heads");
                edge_of_strand.insert(i, edges.len());
                edges.push(Some(fin));
            }
        }

        let mut boundary_edge = vec![(usize::MAX, 2u8); n];
        let mut vertices: Vec<Option<[(usize, u8); 3]>> = vec![None; verts.len()];
        for (e, rec) in edges.iter().enumerate() {
            for (side, end) in rec.unwrap().iter().enumerate() {
                match end.at {
                    Att::B(i) => boundary_edge[i] = (e, side as u8),
                    Att::V(v, p) => {
                        let slot = vertices[v].get_or_insert([(usize::MAX, 2u8); 3]);
                        slot[p as usize] = (e, side as u8);
                    }
                }
            }
        }
        for v in vertices.iter().flatten() {
            assert!(
                v.iter().all(|&(e, _)| e != usize::MAX),
                "vertex with open port"
            );
        }

        let map = WebMap {
            boundary_signs: web.top_signs().clone(),
            boundary_edge,
            vertices,
            edges,
            free_loops,
        };
        // reachability doubles as the closed-component check
        map.canonical_encode_checked()?;
        Ok(map)
    }

    // ---- darts and faces ------------------------------------------------
    //
    // A dart is the end it departs from: `2*edge + side` for web edges,
    // `2*(E + k) + side` for the virtual arc between boundary points k and
    // k+1 (mod n). Arc k's side 0 sits at point k.

    fn n_edge_slots(&self) -> usize {
        self.edges.len()
    }

    fn end_att(&self, e: usize, side: u8) -> Att {
        self.edge_ends(e)[side as usize].at
    }

    /// Counterclockwise end list at the attachment, arcs included.
    fn ccw_ends_at(&self, at: Att) -> Vec<(usize, u8)> {
        let ne = self.n_edge_slots();
        let n = self.n_boundary();
        match at {
            Att::V(v, _) => self.vertex_ports(v).to_vec(),
            Att::B(i) => {
                let arc_right = (ne + i, 0u8);
                let arc_left = (ne + (i + n - 1) % n, 1u8);
                let web = self.boundary_edge[i];
                vec![arc_right, arc_left, web]
            }
        }
    }

    fn dart_att(&self, d: usize) -> (usize, u8, Att) {
        let (e, side) = (d / 2, (d % 2) as u8);
        let ne = self.n_edge_slots();
        let at = if e < ne {
            self.end_att(e, side)
        } else {
            let k = e - ne;
            let n = self.n_boundary();
            match side {
                0 => Att::B(k),
                _ => Att::B((k + 1) % n),
            }
        };
        (e, side, at)
    }

    /// The next dart around the face lying on the left of `d`.
    fn face_next(&self, d: usize) -> usize {
        let arrive = d ^ 1;
        let (_, _, at) = self.dart_att(arrive);
        let ring = self.ccw_ends_at(at);
        let arrive_end = (arrive / 2, (arrive % 2) as u8);
        let pos = ring
            .iter()
            .position(|&x| x == arrive_end)
            .expect("arrival end missing from rotation");
        let depart = ring[(pos + ring.len() - 1) % ring.len()];
        depart.0 * 2 + depart.1 as usize
    }

    pub fn faces(&self) -> FaceData {
        let ne = self.n_edge_slots();
        let n = self.n_boundary();
        let mut all_darts: Vec<usize> = Vec::new();
        for e in self.live_edges() {
            all_darts.push(2 * e);
            all_darts.push(2 * e + 1);
        }
        for k in 0..n {
            all_darts.push(2 * (ne + k));
            all_darts.push(2 * (ne + k) + 1);
        }
        let mut dart_face = HashMap::new();
        let mut faces = Vec::new();
        for &start in &all_darts {
            if dart_face.contains_key(&start) {
                continue;
            }
            let idx = faces.len();
            let mut darts = Vec::new();
            let mut len = 0;
            let mut touches = false;
            let mut d = start;
            loop {
                dart_face.insert(d, idx);
                darts.push(d);
                if d / 2 < ne {
                    len += 1;
                } else {
                    touches = true;
                }
                d = self.face_next(d);
                if d == start {
                    break;
                }
            }
            faces.push(Face {
                darts,
                len,
                touches_boundary: touches,
            });
        }
        let (p_face, outside) = if n > 0 {
            (
                Some(dart_face[&(2 * (ne + n - 1) + 1)]),
                Some(dart_face[&(2 * ne)]),
            )
        } else {
            (None, None)
        };
        let q_faces = (0..n.saturating_sub(1))
            .map(|k| dart_face[&(2 * (ne + k) + 1)])
            .collect();
        FaceData {
            faces,
            dart_face,
            p_face,
            q_faces,
            outside,
        }
    }

    /// Faces of the web itself (no arc darts): the candidates for relations.
    pub fn internal_faces(&self) -> Vec<Face> {
        self.faces()
            .faces
            .into_iter()
            .filter(|f| !f.touches_boundary)
            .collect()
    }

    /// No free loops and every internal face has at least six sides.
    pub fn is_non_elliptic(&self) -> bool {
        self.free_loops == 0 && self.internal_faces().iter().all(|f| f.len >= 6)
    }

    /// Left and right faces of an edge, relative to its orientation.
    pub(crate) fn edge_sides(&self, e: usize, fd: &FaceData) -> (usize, usize) {
        let ends = self.edge_ends(e);
        let tail_side = if ends[0].incoming { 1 } else { 0 };
        let left = fd.face_of_dart(2 * e + tail_side);
        let right = fd.face_of_dart(2 * e + (tail_side ^ 1));
        (left, right)
    }

    // ---- canonical encoding ----------------------------------------------

    /// Deterministic encoding of the rooted embedded map. Two webs get equal
    /// strings exactly when an isotopy of the disk fixing the boundary
    /// pointwise relates them.
    pub fn canonical_encode(&self) -> String {
        self.canonical_encode_checked()
            .expect("disconnected web map")
    }

    fn canonical_encode_checked(&self) -> Result<String, String> {
        let n = self.n_boundary();
        let mut vertex_label: HashMap<usize, usize> = HashMap::new();
        let mut recorded: Vec<bool> = vec![false; self.edges.len()];
        let mut reached = 0usize;
        let mut records: Vec<String> = Vec::new();
        let mut queue: VecDeque<(usize, u8)> = VecDeque::new();
        for i in 0..n {
            queue.push_back(self.boundary_edge[i]);
        }
        let label = |at: Att, labels: &HashMap<usize, usize>| -> String {
            match at {
                Att::B(i) => format!("b{i}"),
                Att::V(v, _) => format!("v{}", labels[&v]),
            }
        };
        while let Some((e, s)) = queue.pop_front() {
            if recorded[e] {
                continue;
            }
            recorded[e] = true;
            reached += 1;
            let ends = self.edge_ends(e);
            let near = ends[s as usize];
            let far = ends[(s ^ 1) as usize];
            if let Att::V(v, _) = far.at {
                if !vertex_label.contains_key(&v) {
                    vertex_label.insert(v, vertex_label.len());
                }
            }
            let dir = if far.incoming { '>' } else { '<' };
            records.push(format!(
                "{}{}{}",
                label(near.at, &vertex_label),
                dir,
                label(far.at, &vertex_label)
            ));
            if let Att::V(v, p) = far.at {
                let ports = self.vertex_ports(v);
                for step in 1..3 {
                    let (e2, s2) = ports[(p as usize + step) % 3];
                    if !recorded[e2] {
                        queue.push_back((e2, s2));
                    }
                }
            }
        }
        let live = self.live_edges().count();
        if reached != live {
            return Err(format!(
                "web has {} edges unreachable from the boundary (closed component?)",
                live - reached
            ));
        }
        Ok(format!(
            "{}|{}|o{}",
            self.boundary_signs,
            records.join(","),
            self.free_loops
        ))
    }

    // ---- rotation ---------------------------------------------------------

    /// Move boundary point 0 past the bottom to the last position. The
    /// strand's orientation relative to its endpoint, and hence the sign,
    /// travels with it.
    pub fn rotated(&self) -> WebMap {
        let n = self.n_boundary();
        if n == 0 {
            return self.clone();
        }
        let mut out = self.clone();
        out.boundary_signs = self.boundary_signs.rotated(1);
        out.boundary_edge.rotate_left(1);
        for rec in out.edges.iter_mut().flatten() {
            for end in rec.iter_mut() {
                if let Att::B(i) = end.at {
                    end.at = Att::B((i + n - 1) % n);
                }
            }
        }
        out
    }

    // ---- surgery (used by reduction) --------------------------------------

    pub(crate) fn delete_vertex(&mut self, v: usize) {
        self.vertices[v] = None;
    }

    pub(crate) fn delete_edge(&mut self, e: usize) {
        self.edges[e] = None;
    }

    /// Merge the two edges by joining them at the given (dying) ends.
    /// The surviving edge keeps index `ea`. Both dying ends must already be
    /// detached from deleted vertices.
    pub(crate) fn splice(&mut self, (ea, sa): (usize, u8), (eb, sb): (usize, u8)) {
        if ea == eb {
            self.free_loops += 1;
            self.edges[ea] = None;
            return;
        }
        let a = self.edges[ea].take().unwrap();
        let b = self.edges[eb].take().unwrap();
        let keep_a = a[(sa ^ 1) as usize];
        let keep_b = b[(sb ^ 1) as usize];
        assert_ne!(
            keep_a.incoming, keep_b.incoming,
            "splice would break orientation"
        );
        self.edges[ea] = Some([keep_a, keep_b]);
        self.fix_holder(keep_a.at, (ea, 0));
        self.fix_holder(keep_b.at, (ea, 1));
    }

    fn fix_holder(&mut self, at: Att, new_ref: (usize, u8)) {
        match at {
            Att::B(i) => self.boundary_edge[i] = new_ref,
            Att::V(v, p) => {
                if let Some(ports) = self.vertices[v].as_mut() {
                    ports[p as usize] = new_ref;
                }
            }
        }
    }
}
