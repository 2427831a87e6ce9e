//! Combinatorial maps: a connected multigraph together with a rotation system.
//!
//! Edge `e` owns the darts `2e` and `2e + 1`, so the edge involution is
//! `d ^ 1`. The rotation `sigma` gives, for every dart, the next dart around
//! the same vertex in drawing-clockwise order. Faces are the orbits of
//! `phi(d) = sigma(inv(d))`.

use std::collections::{BTreeSet, HashSet};

use crate::error::MapError;

/// A dart (oriented edge). Edge `e` owns darts `2e` and `2e + 1`.
pub type Dart = usize;

/// The other dart of the same edge.
#[inline]
pub fn inv(d: Dart) -> Dart {
    d ^ 1
}

/// The edge that owns a dart.
#[inline]
pub fn edge_of(d: Dart) -> usize {
    d >> 1
}

/// A facial walk: a cyclic sequence of darts in which consecutive darts form an angle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FaceWalk {
    pub darts: Vec<Dart>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Vertices visited by the walk, in order, with repetitions.
    pub fn vertices(&self, m: &EmbeddedMap) -> Vec<usize> {
        self.darts.iter().map(|&d| m.tail(d)).collect()
    }

    /// Distinct edges on the boundary of the face.
    pub fn edges(&self) -> BTreeSet<usize> {
        self.darts.iter().map(|&d| edge_of(d)).collect()
    }
}

/// An embedded graph given by a rotation system. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedMap {
    vertex_count: usize,
    dart_owner: Vec<usize>,
    sigma: Vec<Dart>,
    sigma_inv: Vec<Dart>,
    first_dart: Vec<Dart>,
    name: Option<String>,
}

impl EmbeddedMap {
    /// Builds a map from per-vertex dart cycles. `rotations[v]` lists the darts
    /// leaving `v` in rotation order.
    pub fn build(vertex_count: usize, rotations: &[Vec<Dart>]) -> Result<Self, MapError> {
        let total: usize = rotations.iter().map(Vec::len).sum();
        if total == 0 {
            return Err(MapError::EmptyEdgeSet);
        }
        let dart_count = if total % 2 == 0 { total } else { total + 1 };
        let mut dart_owner = vec![usize::MAX; dart_count];
        let mut sigma = vec![usize::MAX; dart_count];
        for (v, cycle) in rotations.iter().enumerate().take(vertex_count) {
            for (i, &d) in cycle.iter().enumerate() {
                if d >= dart_count {
                    return Err(MapError::DanglingDart(d));
                }
                if dart_owner[d] != usize::MAX {
                    return Err(MapError::DuplicateDart(d));
                }
                dart_owner[d] = v;
                sigma[d] = cycle[(i + 1) % cycle.len()];
            }
        }
        if rotations.len() > vertex_count {
            if let Some(&d) = rotations[vertex_count..].iter().flatten().next() {
                return Err(MapError::DanglingDart(d));
            }
        }
        if let Some(d) = dart_owner.iter().position(|&o| o == usize::MAX) {
            return Err(MapError::DanglingDart(d));
        }
        Self::assemble(vertex_count, dart_owner, sigma)
    }

    /// Builds a map from a rotation permutation alone; vertices are the orbits
    /// of `sigma`, numbered in order of their smallest dart.
    pub fn from_sigma(sigma: Vec<Dart>) -> Result<Self, MapError> {
        let n = sigma.len();
        if n == 0 {
            return Err(MapError::EmptyEdgeSet);
        }
        if n % 2 == 1 {
            return Err(MapError::DanglingDart(n));
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n {
                return Err(MapError::DanglingDart(s));
            }
            if seen[s] {
                return Err(MapError::DuplicateDart(s));
            }
            seen[s] = true;
        }
        let mut dart_owner = vec![usize::MAX; n];
        let mut vertex_count = 0;
        for start in 0..n {
            if dart_owner[start] != usize::MAX {
                continue;
            }
            let mut d = start;
            loop {
                dart_owner[d] = vertex_count;
                d = sigma[d];
                if d == start {
                    break;
                }
            }
            vertex_count += 1;
        }
        Self::assemble(vertex_count, dart_owner, sigma)
    }

    /// Builds a map from a half-edge structure: `twin` is an involution without
    /// fixed points and `next` the face successor. Returns the map and the dart
    /// assigned to each half-edge.
    pub fn from_half_edges(twin: &[usize], next: &[usize]) -> Result<(Self, Vec<Dart>), MapError> {
        let n = twin.len();
        if n != next.len() {
            return Err(MapError::InvalidSoup("twin and next differ in length".into()));
        }
        let mut dart_of = vec![usize::MAX; n];
        let mut half_of = vec![usize::MAX; n];
        let mut edges = 0;
        for h in 0..n {
            if dart_of[h] != usize::MAX {
                continue;
            }
            let t = twin[h];
            if t >= n || t == h || twin[t] != h {
                return Err(MapError::InvalidSoup(format!("half-edge {h} has no proper twin")));
            }
            dart_of[h] = 2 * edges;
            dart_of[t] = 2 * edges + 1;
            half_of[2 * edges] = h;
            half_of[2 * edges + 1] = t;
            edges += 1;
        }
        // sigma(x) = next(twin(x)), so that phi = sigma . inv reproduces next.
        let sigma: Vec<Dart> = (0..n)
            .map(|d| {
                let h = half_of[d];
                let nh = next[twin[h]];
                dart_of[nh]
            })
            .collect();
        Ok((Self::from_sigma(sigma)?, dart_of))
    }

    fn assemble(vertex_count: usize, dart_owner: Vec<usize>, sigma: Vec<Dart>) -> Result<Self, MapError> {
        let n = sigma.len();
        let mut sigma_inv = vec![0; n];
        for (d, &s) in sigma.iter().enumerate() {
            sigma_inv[s] = d;
        }
        let mut first_dart = vec![usize::MAX; vertex_count];
        for d in (0..n).rev() {
            first_dart[dart_owner[d]] = d;
        }
        if let Some(v) = first_dart.iter().position(|&d| d == usize::MAX) {
            return Err(if vertex_count > 1 {
                MapError::DisconnectedGraph
            } else {
                MapError::IsolatedVertex(v)
            });
        }
        // Every sigma orbit must stay inside one vertex and cover it.
        for d in 0..n {
            if dart_owner[sigma[d]] != dart_owner[d] {
                return Err(MapError::DanglingDart(d));
            }
        }
        let mut orbit_seen = vec![false; vertex_count];
        let mut visited = vec![false; n];
        for d in 0..n {
            if visited[d] {
                continue;
            }
            let v = dart_owner[d];
            if orbit_seen[v] {
                // two separate cycles at one vertex
                return Err(MapError::DuplicateDart(d));
            }
            orbit_seen[v] = true;
            let mut x = d;
            while !visited[x] {
                visited[x] = true;
                x = sigma[x];
            }
        }
        let m = EmbeddedMap { vertex_count, dart_owner, sigma, sigma_inv, first_dart, name: None };
        if !m.is_connected() {
            return Err(MapError::DisconnectedGraph);
        }
        Ok(m)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.sigma.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.sigma.len()
    }

    #[inline]
    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d]
    }

    #[inline]
    pub fn sigma_inv(&self, d: Dart) -> Dart {
        self.sigma_inv[d]
    }

    /// Face successor: the dart forming an angle with `d`.
    #[inline]
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma[inv(d)]
    }

    #[inline]
    pub fn phi_inv(&self, d: Dart) -> Dart {
        inv(self.sigma_inv[d])
    }

    /// The vertex a dart leaves.
    #[inline]
    pub fn tail(&self, d: Dart) -> usize {
        self.dart_owner[d]
    }

    /// The vertex a dart enters.
    #[inline]
    pub fn head(&self, d: Dart) -> usize {
        self.dart_owner[inv(d)]
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        (self.tail(2 * e), self.tail(2 * e + 1))
    }

    pub fn first_dart(&self, v: usize) -> Dart {
        self.first_dart[v]
    }

    pub fn sigma_permutation(&self) -> &[Dart] {
        &self.sigma
    }

    /// Darts leaving `v` in rotation order, starting at its smallest dart.
    pub fn rotation(&self, v: usize) -> Vec<Dart> {
        let start = self.first_dart[v];
        let mut out = vec![start];
        let mut d = self.sigma[start];
        while d != start {
            out.push(d);
            d = self.sigma[d];
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation(v).len()
    }

    /// Neighbours of every vertex, with multiplicity and loops removed.
    pub fn simple_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.vertex_count];
        for e in 0..self.edge_count() {
            let (a, b) = self.endpoints(e);
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for d in self.rotation(v) {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// All facial walks, ordered by their smallest dart; each walk starts there.
    pub fn faces(&self) -> Vec<FaceWalk> {
        let n = self.dart_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                darts.push(d);
                d = self.phi(d);
            }
            out.push(FaceWalk { darts });
        }
        out
    }

    /// Face index of every dart, consistent with [`faces`](Self::faces).
    pub fn face_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.dart_count()];
        for (i, f) in self.faces().iter().enumerate() {
            for &d in &f.darts {
                idx[d] = i;
            }
        }
        idx
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    /// `(2 - V + E - F) / 2`.
    pub fn genus(&self) -> Result<usize, MapError> {
        let euler = self.vertex_count as i64 - self.edge_count() as i64 + self.face_count() as i64;
        let twice = 2 - euler;
        if twice < 0 || twice % 2 != 0 {
            return Err(MapError::NonOrientableInconsistency(euler));
        }
        Ok((twice / 2) as usize)
    }

    /// Dual map on the same darts: vertices are the faces (numbered as in
    /// [`faces`](Self::faces)). Faces are walked clockwise, so the dual
    /// rotation is the inverse face permutation.
    pub fn dual(&self) -> EmbeddedMap {
        let sigma: Vec<Dart> = (0..self.dart_count()).map(|d| self.phi_inv(d)).collect();
        let mut m = EmbeddedMap::from_sigma(sigma).expect("dual of a valid map is valid");
        m.name = self.name.as_ref().map(|n| format!("dual({n})"));
        m
    }

    /// The same graph with every rotation reversed.
    pub fn mirror(&self) -> EmbeddedMap {
        let rotations: Vec<Vec<Dart>> = (0..self.vertex_count)
            .map(|v| {
                let mut r = self.rotation(v);
                r[1..].reverse();
                r
            })
            .collect();
        let mut m = EmbeddedMap::build(self.vertex_count, &rotations).expect("mirror of a valid map is valid");
        m.name = self.name.clone();
        m
    }

    pub fn has_loops(&self) -> bool {
        (0..self.edge_count()).any(|e| {
            let (a, b) = self.endpoints(e);
            a == b
        })
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::new();
        for e in 0..self.edge_count() {
            let (a, b) = self.endpoints(e);
            if a == b || !seen.insert((a.min(b), a.max(b))) {
                return false;
            }
        }
        true
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.vertex_count
    }

    /// Every face is a cycle, and any two faces meet in nothing, one vertex, or one edge.
    pub fn is_polyhedral(&self) -> bool {
        let faces = self.faces();
        let mut vsets = Vec::with_capacity(faces.len());
        let mut esets = Vec::with_capacity(faces.len());
        for f in &faces {
            let vs = f.vertices(self);
            let set: BTreeSet<usize> = vs.iter().copied().collect();
            if set.len() != vs.len() {
                return false;
            }
            let es = f.edges();
            if es.len() != f.len() {
                return false;
            }
            vsets.push(set);
            esets.push(es);
        }
        for i in 0..faces.len() {
            for j in i + 1..faces.len() {
                let shared_v = vsets[i].intersection(&vsets[j]).count();
                let shared_e: Vec<usize> = esets[i].intersection(&esets[j]).copied().collect();
                let ok = match (shared_v, shared_e.len()) {
                    (0, 0) | (1, 0) => true,
                    (2, 1) => true,
                    _ => false,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Keeps only the flagged edges. Vertex numbering is preserved; every
    /// vertex must retain at least one edge and the result must be connected.
    /// Returns the new map and, for each new dart, the old dart.
    pub fn restrict_edges(&self, keep: &[bool]) -> Result<(EmbeddedMap, Vec<Dart>), MapError> {
        let mut new_of = vec![usize::MAX; self.dart_count()];
        let mut old_of = Vec::new();
        for e in 0..self.edge_count() {
            if keep[e] {
                new_of[2 * e] = old_of.len();
                old_of.push(2 * e);
                new_of[2 * e + 1] = old_of.len();
                old_of.push(2 * e + 1);
            }
        }
        let rotations: Vec<Vec<Dart>> = (0..self.vertex_count)
            .map(|v| self.rotation(v).into_iter().filter(|&d| keep[edge_of(d)]).map(|d| new_of[d]).collect())
            .collect();
        if let Some(v) = rotations.iter().position(Vec::is_empty) {
            return Err(if self.vertex_count > 1 { MapError::DisconnectedGraph } else { MapError::IsolatedVertex(v) });
        }
        Ok((EmbeddedMap::build(self.vertex_count, &rotations)?, old_of))
    }
}

/// Builds a map from per-vertex rotations (see [`EmbeddedMap::build`]).
pub fn build_map(vertex_count: usize, rotations: &[Vec<Dart>]) -> Result<EmbeddedMap, MapError> {
    EmbeddedMap::build(vertex_count, rotations)
}

/// Builds a map from an edge list and, per vertex, the cyclic order of incident
/// edge ends given as `(edge, end)` with `end` 0 for the first endpoint.
pub fn from_edge_rotations(vertex_count: usize, rotations: &[Vec<(usize, usize)>]) -> Result<EmbeddedMap, MapError> {
    let rot: Vec<Vec<Dart>> = rotations.iter().map(|r| r.iter().map(|&(e, end)| 2 * e + end).collect()).collect();
    EmbeddedMap::build(vertex_count, &rot)
}

/// Builds a map from neighbour lists of a simple graph: `nbrs[v]` lists the
/// neighbours of `v` in rotation order.
pub fn from_neighbour_rotations(nbrs: &[Vec<usize>]) -> Result<EmbeddedMap, MapError> {
    let n = nbrs.len();
    let mut edge_id = std::collections::HashMap::new();
    let mut ends: Vec<(usize, usize)> = Vec::new();
    for (v, list) in nbrs.iter().enumerate() {
        for &w in list {
            let key = (v.min(w), v.max(w));
            if !edge_id.contains_key(&key) {
                edge_id.insert(key, ends.len());
                ends.push(key);
            }
        }
    }
    let rotations: Vec<Vec<Dart>> = nbrs
        .iter()
        .enumerate()
        .map(|(v, list)| {
            list.iter()
                .map(|&w| {
                    let key = (v.min(w), v.max(w));
                    let e = edge_id[&key];
                    if ends[e].0 == v {
                        2 * e
                    } else {
                        2 * e + 1
                    }
                })
                .collect()
        })
        .collect();
    EmbeddedMap::build(n, &rotations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn k4_counts() {
        let k4 = fixtures::tetrahedron();
        assert_eq!(k4.vertex_count(), 4);
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.face_count(), 4);
        assert!(k4.faces().iter().all(|f| f.len() == 3));
        assert_eq!(k4.genus().unwrap(), 0);
    }

    #[test]
    fn single_loop() {
        // sigma = (0 1): phi(0) = sigma(1) = 0, phi(1) = sigma(0) = 1
        let m = build_map(1, &[vec![0, 1]]).unwrap();
        assert_eq!(m.edge_count(), 1);
        assert_eq!(m.face_count(), 2);
        assert_eq!(m.genus().unwrap(), 0);
        assert!(!m.is_simple());
    }

    #[test]
    fn validation_errors() {
        assert_eq!(build_map(2, &[vec![0, 1], vec![1]]), Err(MapError::DuplicateDart(1)));
        assert_eq!(build_map(1, &[vec![]]), Err(MapError::EmptyEdgeSet));
        assert_eq!(build_map(2, &[vec![0], vec![3]]).unwrap_err(), MapError::DanglingDart(3));
        assert_eq!(build_map(4, &[vec![0], vec![1], vec![2], vec![3]]), Err(MapError::DisconnectedGraph));
        assert_eq!(build_map(3, &[vec![0], vec![1], vec![]]), Err(MapError::DisconnectedGraph));
    }

    #[test]
    fn trees_are_accepted() {
        let path = from_neighbour_rotations(&[vec![1], vec![0, 2], vec![1]]).unwrap();
        assert!(path.is_tree());
        assert_eq!(path.face_count(), 1);
        assert_eq!(path.genus().unwrap(), 0);
    }

    #[test]
    fn cube_faces_and_genus() {
        let cube = fixtures::cube();
        let faces = cube.faces();
        assert_eq!(faces.len(), 6);
        assert!(faces.iter().all(|f| f.len() == 4));
        assert_eq!(cube.genus().unwrap(), 0);
        assert!(cube.is_simple());
        assert!(cube.is_polyhedral());
    }

    #[test]
    fn dual_of_cube_is_octahedron() {
        let oct = fixtures::cube().dual();
        assert_eq!((oct.vertex_count(), oct.edge_count(), oct.face_count()), (6, 12, 8));
        // the double dual is the same map with every edge reversed
        let cube = fixtures::cube();
        let back = oct.dual();
        for d in 0..cube.dart_count() {
            assert_eq!(back.sigma(inv(d)), inv(cube.sigma(d)));
        }
        assert!(crate::canon::is_isomorphic(&back, &cube));
    }

    #[test]
    fn face_walks_partition_darts() {
        for m in [fixtures::cube(), fixtures::dodecahedron(), fixtures::torus_q3()] {
            let total: usize = m.faces().iter().map(FaceWalk::len).sum();
            assert_eq!(total, m.dart_count());
        }
    }

    #[test]
    fn four_cycle_is_not_polyhedral() {
        let c4 = from_neighbour_rotations(&[vec![1, 3], vec![0, 2], vec![1, 3], vec![2, 0]]).unwrap();
        assert_eq!(c4.face_count(), 2);
        assert!(!c4.is_polyhedral());
        assert!(!fixtures::torus_q3().is_polyhedral());
        assert!(fixtures::tetrahedron().is_polyhedral());
    }

    #[test]
    fn mirror_reverses_faces() {
        let t = fixtures::torus_q3();
        let mut a: Vec<usize> = t.faces().iter().map(FaceWalk::len).collect();
        let mut b: Vec<usize> = t.mirror().faces().iter().map(FaceWalk::len).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
