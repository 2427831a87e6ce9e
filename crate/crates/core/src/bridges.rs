//! Embedded subgraphs, their bridges, and internal components of their faces.

use std::collections::BTreeSet;

use crate::error::MapError;
use crate::map::{edge_of, inv, Dart, EmbeddedMap, FaceWalk};

/// A subgraph of a host map given by vertex and edge flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphMask {
    pub vertices: Vec<bool>,
    pub edges: Vec<bool>,
    pub induced: bool,
}

impl SubgraphMask {
    /// The subgraph formed by some edges and their endpoints.
    pub fn from_edges(m: &EmbeddedMap, edges: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = SubgraphMask {
            vertices: vec![false; m.vertex_count()],
            edges: vec![false; m.edge_count()],
            induced: false,
        };
        for e in edges {
            mask.edges[e] = true;
            let (a, b) = m.endpoints(e);
            mask.vertices[a] = true;
            mask.vertices[b] = true;
        }
        mask
    }

    /// The subgraph induced by a vertex set.
    pub fn induced(m: &EmbeddedMap, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut vs = vec![false; m.vertex_count()];
        for v in vertices {
            vs[v] = true;
        }
        let edges = (0..m.edge_count())
            .map(|e| {
                let (a, b) = m.endpoints(e);
                vs[a] && vs[b]
            })
            .collect();
        SubgraphMask { vertices: vs, edges, induced: true }
    }

    /// The subgraph consisting of the edges of a walk.
    pub fn from_darts(m: &EmbeddedMap, darts: &[Dart]) -> Self {
        Self::from_edges(m, darts.iter().map(|&d| edge_of(d)))
    }

    pub fn contains_dart(&self, d: Dart) -> bool {
        self.edges[edge_of(d)]
    }

    fn is_connected(&self, m: &EmbeddedMap) -> bool {
        let Some(start) = self.vertices.iter().position(|&b| b) else {
            return false;
        };
        let mut seen = vec![false; m.vertex_count()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for d in m.rotation(v) {
                let w = m.head(d);
                if self.edges[edge_of(d)] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..m.vertex_count()).all(|v| !self.vertices[v] || seen[v])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BridgeKind {
    Chord,
    Component,
}

/// An angle of the subgraph: face index and the position in its walk of the
/// dart that closes the angle.
pub type Attachment = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bridge {
    pub kind: BridgeKind,
    /// Vertices outside the subgraph (empty for a chord).
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub attachments: Vec<Attachment>,
}

impl Bridge {
    /// Faces of the subgraph this bridge lies in.
    pub fn faces(&self) -> BTreeSet<usize> {
        self.attachments.iter().map(|a| a.0).collect()
    }
}

/// Next dart of the subgraph after `d` in the rotation at its vertex.
fn sigma_sub(m: &EmbeddedMap, s: &SubgraphMask, d: Dart) -> Dart {
    let mut x = m.sigma(d);
    while !s.contains_dart(x) {
        x = m.sigma(x);
    }
    x
}

/// Face walks of the subgraph under the induced rotation, as darts of the host.
pub fn faces_of_subgraph(m: &EmbeddedMap, s: &SubgraphMask) -> Result<Vec<FaceWalk>, MapError> {
    if !s.edges.iter().any(|&b| b) || !s.is_connected(m) {
        return Err(MapError::SubgraphNotConnected);
    }
    let mut seen = vec![false; m.dart_count()];
    let mut out = Vec::new();
    for start in 0..m.dart_count() {
        if seen[start] || !s.contains_dart(start) {
            continue;
        }
        let mut darts = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            darts.push(d);
            d = sigma_sub(m, s, inv(d));
        }
        out.push(FaceWalk { darts });
    }
    Ok(out)
}

/// For every host dart not in the subgraph but leaving a subgraph vertex, the
/// subgraph angle it lies in.
fn angle_of_darts(m: &EmbeddedMap, s: &SubgraphMask, faces: &[FaceWalk]) -> Vec<Option<Attachment>> {
    let mut pos = vec![None; m.dart_count()];
    for (fi, f) in faces.iter().enumerate() {
        for (i, &d) in f.darts.iter().enumerate() {
            pos[d] = Some((fi, i));
        }
    }
    let mut out = vec![None; m.dart_count()];
    for d in 0..m.dart_count() {
        if s.contains_dart(d) || !s.vertices[m.tail(d)] {
            continue;
        }
        // the subgraph dart closing the angle that contains d
        let mut x = m.sigma(d);
        while !s.contains_dart(x) {
            x = m.sigma(x);
        }
        out[d] = pos[x];
    }
    out
}

/// All bridges of a connected subgraph, with the angles they attach in.
pub fn find_bridges(m: &EmbeddedMap, s: &SubgraphMask) -> Result<Vec<Bridge>, MapError> {
    let faces = faces_of_subgraph(m, s)?;
    let angle = angle_of_darts(m, s, &faces);
    let mut bridges = Vec::new();
    for e in 0..m.edge_count() {
        let (a, b) = m.endpoints(e);
        if !s.edges[e] && s.vertices[a] && s.vertices[b] {
            let attachments = [2 * e, 2 * e + 1].iter().filter_map(|&d| angle[d]).collect();
            bridges.push(Bridge { kind: BridgeKind::Chord, vertices: vec![], edges: vec![e], attachments });
        }
    }
    let mut comp = vec![usize::MAX; m.vertex_count()];
    for start in 0..m.vertex_count() {
        if s.vertices[start] || comp[start] != usize::MAX {
            continue;
        }
        let id = bridges.len();
        comp[start] = id;
        let mut stack = vec![start];
        let mut vertices = vec![];
        let mut edges = BTreeSet::new();
        let mut attachments = Vec::new();
        while let Some(v) = stack.pop() {
            vertices.push(v);
            for d in m.rotation(v) {
                edges.insert(edge_of(d));
                let w = m.head(d);
                if s.vertices[w] {
                    attachments.extend(angle[inv(d)]);
                } else if comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        vertices.sort_unstable();
        attachments.sort_unstable();
        attachments.dedup();
        bridges.push(Bridge { kind: BridgeKind::Component, vertices, edges: edges.into_iter().collect(), attachments });
    }
    Ok(bridges)
}

/// The internal component of a face, with its correspondence to the host.
#[derive(Debug, Clone)]
pub struct InternalComponent {
    pub map: EmbeddedMap,
    /// Host vertex of every vertex; boundary copies come first, in walk order.
    pub vertex_origin: Vec<usize>,
    /// Host dart of every dart.
    pub dart_origin: Vec<Dart>,
    /// Boundary darts in the order of the host walk; `boundary[i]` leaves vertex `i`.
    pub boundary: Vec<Dart>,
}

impl InternalComponent {
    pub fn boundary_len(&self) -> usize {
        self.boundary.len()
    }
}

/// Cuts the host along face `f` of the subgraph and keeps what lies inside.
pub fn internal_component(m: &EmbeddedMap, s: &SubgraphMask, f: usize) -> Result<InternalComponent, MapError> {
    let faces = faces_of_subgraph(m, s)?;
    let walk = faces.get(f).ok_or(MapError::UnknownFace(f))?.darts.clone();
    for b in find_bridges(m, s)? {
        let fs = b.faces();
        if fs.contains(&f) && fs.len() > 1 {
            return Err(MapError::FaceNotSimple(f));
        }
    }
    let len = walk.len();

    // Bridge darts sitting in each angle of the walk, in rotation order.
    let mut in_angle: Vec<Vec<Dart>> = vec![Vec::new(); len];
    for i in 0..len {
        let prev = walk[(i + len - 1) % len];
        let mut x = m.sigma(inv(prev));
        while x != walk[i] {
            in_angle[i].push(x);
            x = m.sigma(x);
        }
    }
    // Interior vertices: everything reachable from the angle darts without crossing the subgraph.
    let mut new_vertex = vec![usize::MAX; m.vertex_count()];
    let mut vertex_origin: Vec<usize> = walk.iter().map(|&d| m.tail(d)).collect();
    let mut bridge_edges = BTreeSet::new();
    let mut stack = Vec::new();
    for &d in in_angle.iter().flatten() {
        bridge_edges.insert(edge_of(d));
        let w = m.head(d);
        if !s.vertices[w] && new_vertex[w] == usize::MAX {
            new_vertex[w] = vertex_origin.len();
            vertex_origin.push(w);
            stack.push(w);
        }
    }
    while let Some(v) = stack.pop() {
        for d in m.rotation(v) {
            bridge_edges.insert(edge_of(d));
            let w = m.head(d);
            if !s.vertices[w] && new_vertex[w] == usize::MAX {
                new_vertex[w] = vertex_origin.len();
                vertex_origin.push(w);
                stack.push(w);
            }
        }
    }

    // Darts: boundary edge i owns 2i (along the walk) and 2i + 1; bridge edges follow.
    let mut new_dart = vec![usize::MAX; m.dart_count()];
    let mut dart_origin = Vec::with_capacity(2 * (len + bridge_edges.len()));
    for &d in &walk {
        dart_origin.push(d);
        dart_origin.push(inv(d));
    }
    for &e in &bridge_edges {
        new_dart[2 * e] = dart_origin.len();
        dart_origin.push(2 * e);
        new_dart[2 * e + 1] = dart_origin.len();
        dart_origin.push(2 * e + 1);
    }
    // Chord ends are located by angle, not by host vertex.
    let mut rotations: Vec<Vec<Dart>> = vec![Vec::new(); vertex_origin.len()];
    for i in 0..len {
        let r = &mut rotations[i];
        r.push(2 * ((i + len - 1) % len) + 1);
        r.extend(in_angle[i].iter().map(|&d| new_dart[d]));
        r.push(2 * i);
    }
    for (nv, &v) in vertex_origin.iter().enumerate().skip(len) {
        rotations[nv] = m.rotation(v).into_iter().map(|d| new_dart[d]).collect();
    }
    let map = EmbeddedMap::build(vertex_origin.len(), &rotations)?;
    let boundary = (0..len).map(|i| 2 * i).collect();
    Ok(InternalComponent { map, vertex_origin, dart_origin, boundary })
}
