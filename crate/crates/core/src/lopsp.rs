//! Lopsp-operations: validation, cut-paths and double chamber patches.

use std::collections::HashMap;

use thiserror::Error;

use crate::bary::TypedMap;
use crate::bridges::{internal_component, InternalComponent, SubgraphMask};
use crate::map::{edge_of, inv, Dart, EmbeddedMap};
use crate::soup::{from_soup, Polygon};

/// A clause of the lopsp definition that a candidate violates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LopspViolation {
    #[error("special vertices must be distinct existing vertices")]
    BadSpecials,
    #[error("operation has genus {0}, expected a plane map")]
    NotPlane(usize),
    #[error("operation is not 2-connected")]
    NotTwoConnected,
    #[error("face {face} has length {len}")]
    NonTriangularFace { face: usize, len: usize },
    #[error("edge {0} joins two vertices of the same type")]
    SameTypeEdge(usize),
    #[error("v0 has type 1")]
    V0TypeOne,
    #[error("v2 has type 1")]
    V2TypeOne,
    #[error("v1 has type 1 and degree {0}, expected 2")]
    V1Degree(usize),
    #[error("type-1 vertex {vertex} has degree {degree}, expected 4")]
    TypeOneDegree { vertex: usize, degree: usize },
}

/// A validated lopsp-operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LopspOperation {
    pub op: TypedMap,
    pub v0: usize,
    pub v1: usize,
    pub v2: usize,
    pub name: Option<String>,
}

impl LopspOperation {
    pub fn map(&self) -> &EmbeddedMap {
        &self.op.base
    }

    pub fn t(&self, v: usize) -> u8 {
        self.op.vtype[v]
    }

    pub fn name(&self) -> &str {
        self.name.as_deref().unwrap_or("unnamed")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Canonical form that also records types and the special vertices.
    pub fn canonical_form(&self) -> Vec<u8> {
        let labels: Vec<u64> = (0..self.op.vtype.len())
            .map(|v| {
                let special = if v == self.v0 {
                    1
                } else if v == self.v1 {
                    2
                } else if v == self.v2 {
                    3
                } else {
                    0
                };
                self.op.vtype[v] as u64 + 4 * special
            })
            .collect();
        crate::canon::canonical_form_labeled(&self.op.base, &labels)
    }
}

/// Checks every clause of the definition and returns all violations found.
pub fn validate_lopsp(candidate: TypedMap, v0: usize, v1: usize, v2: usize) -> Result<LopspOperation, Vec<LopspViolation>> {
    let mut out = Vec::new();
    let m = &candidate.base;
    let n = m.vertex_count();
    if v0 >= n || v1 >= n || v2 >= n || v0 == v1 || v1 == v2 || v0 == v2 {
        return Err(vec![LopspViolation::BadSpecials]);
    }
    match m.genus() {
        Ok(0) => {}
        Ok(g) => out.push(LopspViolation::NotPlane(g)),
        Err(_) => out.push(LopspViolation::NotPlane(usize::MAX)),
    }
    if !m.is_k_connected(2) {
        out.push(LopspViolation::NotTwoConnected);
    }
    for (i, f) in m.faces().iter().enumerate() {
        if f.len() != 3 {
            out.push(LopspViolation::NonTriangularFace { face: i, len: f.len() });
        }
    }
    for e in 0..m.edge_count() {
        if candidate.edge_type(e).is_none() {
            out.push(LopspViolation::SameTypeEdge(e));
        }
    }
    let t = &candidate.vtype;
    if t[v0] == 1 {
        out.push(LopspViolation::V0TypeOne);
    }
    if t[v2] == 1 {
        out.push(LopspViolation::V2TypeOne);
    }
    if t[v1] == 1 && m.degree(v1) != 2 {
        out.push(LopspViolation::V1Degree(m.degree(v1)));
    }
    for v in 0..n {
        if v != v0 && v != v1 && v != v2 && t[v] == 1 && m.degree(v) != 4 {
            out.push(LopspViolation::TypeOneDegree { vertex: v, degree: m.degree(v) });
        }
    }
    if out.is_empty() {
        Ok(LopspOperation { op: candidate, v0, v1, v2, name: None })
    } else {
        Err(out)
    }
}

/// A simple path from `v1` through `v0` to `v2`, stored as darts from `v1` to `v2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CutPath {
    pub darts: Vec<Dart>,
    pub vertices: Vec<usize>,
    /// Index of `v0` in `vertices`.
    pub split: usize,
}

impl CutPath {
    fn from_darts(m: &EmbeddedMap, darts: Vec<Dart>, v0: usize) -> Self {
        let mut vertices: Vec<usize> = darts.iter().map(|&d| m.tail(d)).collect();
        vertices.push(m.head(*darts.last().unwrap()));
        let split = vertices.iter().position(|&v| v == v0).unwrap();
        CutPath { darts, vertices, split }
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Darts of the part between `v1` and `v0`, directed from `v1`.
    pub fn p01(&self) -> &[Dart] {
        &self.darts[..self.split]
    }

    /// Darts of the part between `v0` and `v2`, directed from `v0`.
    pub fn p02(&self) -> &[Dart] {
        &self.darts[self.split..]
    }

    /// Position of each path dart: `Some((index, forward))`.
    pub fn dart_positions(&self, dart_count: usize) -> Vec<Option<(usize, bool)>> {
        let mut pos = vec![None; dart_count];
        for (i, &d) in self.darts.iter().enumerate() {
            pos[d] = Some((i, true));
            pos[inv(d)] = Some((i, false));
        }
        pos
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutPathStrategy {
    /// Fewest edges, ties broken by the smallest dart sequence.
    Minimal,
    /// The first path found by depth-first search in dart order.
    First,
}

/// All simple paths from `from` to `to` avoiding `blocked`, as dart sequences, with at most `cap` edges.
fn simple_paths(m: &EmbeddedMap, from: usize, to: usize, blocked: &[bool], cap: usize) -> Vec<Vec<Dart>> {
    let mut out = Vec::new();
    let mut on_path = blocked.to_vec();
    let mut path = Vec::new();
    fn rec(
        m: &EmbeddedMap,
        v: usize,
        to: usize,
        cap: usize,
        on_path: &mut Vec<bool>,
        path: &mut Vec<Dart>,
        out: &mut Vec<Vec<Dart>>,
    ) {
        if v == to {
            out.push(path.clone());
            return;
        }
        if path.len() == cap {
            return;
        }
        let mut darts = m.rotation(v);
        darts.sort_unstable();
        for d in darts {
            let w = m.head(d);
            if !on_path[w] {
                on_path[w] = true;
                path.push(d);
                rec(m, w, to, cap, on_path, path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    on_path[from] = true;
    rec(m, from, to, cap, &mut on_path, &mut path, &mut out);
    out
}

/// Every cut-path with at most `max_len` edges, sorted by length then darts.
pub fn enumerate_cut_paths(o: &LopspOperation, max_len: usize) -> Vec<CutPath> {
    let m = o.map();
    let n = m.vertex_count();
    let mut blocked = vec![false; n];
    blocked[o.v2] = true;
    let to_v1 = simple_paths(m, o.v0, o.v1, &blocked, max_len);
    let mut out = Vec::new();
    for p01 in to_v1 {
        let mut blocked = vec![false; n];
        for &d in &p01 {
            blocked[m.head(d)] = true;
        }
        let rest = max_len.saturating_sub(p01.len());
        for p02 in simple_paths(m, o.v0, o.v2, &blocked, rest) {
            let mut darts: Vec<Dart> = p01.iter().rev().map(|&d| inv(d)).collect();
            darts.extend(p02);
            out.push(CutPath::from_darts(m, darts, o.v0));
        }
    }
    out.sort_by(|a, b| a.darts.len().cmp(&b.darts.len()).then_with(|| a.darts.cmp(&b.darts)));
    out
}

/// All cut-paths of minimum length.
pub fn minimal_cut_paths(o: &LopspOperation) -> Vec<CutPath> {
    let n = o.map().vertex_count();
    for cap in 2..=n {
        let all = enumerate_cut_paths(o, cap);
        if let Some(first) = all.first() {
            let len = first.len();
            return all.into_iter().take_while(|p| p.len() == len).collect();
        }
    }
    panic!("lopsp-operation without a cut-path; the operation is not 2-connected")
}

/// A cut-path chosen by `strategy`. Existence follows from 2-connectivity.
pub fn find_cut_path(o: &LopspOperation, strategy: CutPathStrategy) -> CutPath {
    match strategy {
        CutPathStrategy::Minimal => minimal_cut_paths(o).swap_remove(0),
        CutPathStrategy::First => {
            let m = o.map();
            let n = m.vertex_count();
            let mut blocked = vec![false; n];
            blocked[o.v2] = true;
            for p01 in simple_paths(m, o.v0, o.v1, &blocked, n) {
                let mut blocked = vec![false; n];
                for &d in &p01 {
                    blocked[m.head(d)] = true;
                }
                if let Some(p02) = simple_paths(m, o.v0, o.v2, &blocked, n).into_iter().next() {
                    let mut darts: Vec<Dart> = p01.iter().rev().map(|&d| inv(d)).collect();
                    darts.extend(p02);
                    return CutPath::from_darts(m, darts, o.v0);
                }
            }
            find_cut_path(o, CutPathStrategy::Minimal)
        }
    }
}

/// The internal component of the face of a cut-path.
#[derive(Debug, Clone)]
pub struct DoubleChamberPatch {
    pub ic: InternalComponent,
    /// The patch with the types of the corresponding operation vertices.
    pub typed: TypedMap,
    /// Copy of the cut-path walked by the forward darts, as patch vertices from `v1` to `v2`.
    pub right: Vec<usize>,
    /// The other copy, also listed from `v1` to `v2`.
    pub left: Vec<usize>,
    pub v0l: usize,
    pub v0r: usize,
    pub v1: usize,
    pub v2: usize,
}

impl DoubleChamberPatch {
    /// Operation vertex of a patch vertex.
    pub fn pi_vertex(&self, v: usize) -> usize {
        self.ic.vertex_origin[v]
    }

    /// Operation dart of a patch dart.
    pub fn pi_dart(&self, d: Dart) -> Dart {
        self.ic.dart_origin[d]
    }

    /// Faces other than the outer face.
    pub fn chambers(&self) -> Vec<crate::map::FaceWalk> {
        self.ic.map.faces().into_iter().filter(|f| !f.darts.iter().any(|&d| self.is_outer_dart(d))).collect()
    }

    /// The reverse boundary darts that make up the outer face.
    pub fn is_outer_dart(&self, d: Dart) -> bool {
        d < 2 * self.ic.boundary.len() && d % 2 == 1
    }

    /// Patch vertices of the 2-side, from `v0l` through `v1` to `v0r`.
    pub fn two_side(&self, split: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.left[..=split].iter().rev().copied().collect();
        out.extend(self.right[1..=split].iter().copied());
        out
    }
}

/// Cuts the operation open along `p`.
pub fn double_chamber_patch(o: &LopspOperation, p: &CutPath) -> DoubleChamberPatch {
    let m = o.map();
    let s = SubgraphMask::from_darts(m, &p.darts);
    let ic = internal_component(m, &s, 0).expect("the face of a path is simple");
    let len = p.len();
    let walk: Vec<Dart> = ic.boundary.iter().map(|&d| ic.dart_origin[d]).collect();
    debug_assert_eq!(walk.len(), 2 * len);
    let i0 = walk.iter().position(|&d| d == p.darts[0]).expect("path dart on the walk");
    let at = |k: usize| ic.map.tail(ic.boundary[(i0 + k) % (2 * len)]);
    let right: Vec<usize> = (0..=len).map(at).collect();
    let left: Vec<usize> = (0..=len).map(|k| at((2 * len - k) % (2 * len))).collect();
    let vtype = ic.vertex_origin.iter().map(|&v| o.op.vtype[v]).collect();
    let typed = TypedMap::new(ic.map.clone(), vtype).expect("types copied from the operation");
    DoubleChamberPatch {
        v0l: left[p.split],
        v0r: right[p.split],
        v1: right[0],
        v2: right[len],
        right,
        left,
        typed,
        ic,
    }
}

/// Which side of a patch copy is shared when two copies are glued.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SharedSide {
    /// Both copies of `P(v0, v1)`: the 2-side.
    Two,
    /// The first copy's left 1-side against the second copy's right 1-side.
    OneLeftRight,
    /// The first copy's right 1-side against the second copy's left 1-side.
    OneRightLeft,
}

/// Two copies of a patch glued along a side.
#[derive(Debug, Clone)]
pub struct GluedPatches {
    pub typed: TypedMap,
    /// For every vertex: `(copy, patch vertex)` of one representative.
    pub origin: Vec<(usize, usize)>,
    /// Glued vertex of `(copy, patch vertex)`.
    pub vertex_of: [Vec<usize>; 2],
    /// Dart of the outer face, if the glued map has one (always, for a disk).
    pub outer_face: usize,
}

/// The `P`-diamond of an operation.
pub type OpDiamond = GluedPatches;

/// Glues two copies of `patch` along the given side. The second copy's side
/// vertices are identified with the first copy's by their operation vertex.
pub fn glue_patches(p: &CutPath, patch: &DoubleChamberPatch, side: SharedSide) -> GluedPatches {
    let pm = &patch.ic.map;
    let nv = pm.vertex_count();
    let ne = pm.edge_count();
    let s = p.split;
    let len = p.len();
    // (segment of copy 0, segment of copy 1), each as patch vertices in path order
    let pairs: Vec<(Vec<usize>, Vec<usize>)> = match side {
        SharedSide::Two => vec![
            (patch.right[..=s].to_vec(), patch.left[..=s].to_vec()),
            (patch.left[..=s].to_vec(), patch.right[..=s].to_vec()),
        ],
        SharedSide::OneLeftRight => vec![(patch.left[s..=len].to_vec(), patch.right[s..=len].to_vec())],
        SharedSide::OneRightLeft => vec![(patch.right[s..=len].to_vec(), patch.left[s..=len].to_vec())],
    };
    let mut ident: HashMap<usize, usize> = HashMap::new();
    for (a, b) in &pairs {
        for (&x, &y) in a.iter().zip(b) {
            ident.insert(y, x);
        }
    }
    let vid = |copy: usize, v: usize| -> usize {
        if copy == 0 {
            v
        } else if let Some(&x) = ident.get(&v) {
            x
        } else {
            nv + v
        }
    };
    // patch edge between consecutive side vertices
    let boundary_edges = patch.ic.boundary.len();
    let edge_between = |a: usize, b: usize| -> usize {
        pm.rotation(a).into_iter().map(edge_of).find(|&e| e < boundary_edges && {
            let (x, y) = pm.endpoints(e);
            (x, y) == (a, b) || (x, y) == (b, a)
        }).expect("consecutive boundary vertices share a boundary edge")
    };
    let mut elabel: HashMap<usize, usize> = HashMap::new();
    for (a, b) in &pairs {
        for k in 0..a.len() - 1 {
            let ea = edge_between(a[k], a[k + 1]);
            let eb = edge_between(b[k], b[k + 1]);
            elabel.insert(eb, ea);
        }
    }
    let lid = |copy: usize, e: usize| -> usize {
        if copy == 0 {
            e
        } else if let Some(&x) = elabel.get(&e) {
            x
        } else {
            ne + e
        }
    };
    let chambers = patch.chambers();
    let mut polys: Vec<Polygon> = Vec::new();
    for copy in 0..2 {
        for f in &chambers {
            polys.push(f.darts.iter().map(|&d| (vid(copy, pm.tail(d)), lid(copy, edge_of(d)))).collect());
        }
    }
    let soup = from_soup(&polys).expect("glued patches form a disk");
    let map = soup.map;
    let mut origin = vec![(usize::MAX, usize::MAX); map.vertex_count()];
    let mut vertex_of = [vec![usize::MAX; nv], vec![usize::MAX; nv]];
    for copy in (0..2).rev() {
        for v in 0..nv {
            let g = soup.vertex_of[vid(copy, v)];
            vertex_of[copy][v] = g;
            origin[g] = (copy, v);
        }
    }
    let vtype = origin.iter().map(|&(_, v)| patch.typed.vtype[v]).collect();
    let inner: std::collections::HashSet<Dart> = soup.side_dart.iter().flatten().copied().collect();
    let outer_face = map.faces().iter().position(|f| !inner.contains(&f.darts[0])).expect("a disk has an outer face");
    GluedPatches { typed: TypedMap::new(map, vtype).unwrap(), origin, vertex_of, outer_face }
}

/// The `P`-diamond: two patch copies sharing their 2-side.
pub fn op_diamond(o: &LopspOperation, p: &CutPath) -> OpDiamond {
    let patch = double_chamber_patch(o, p);
    glue_patches(p, &patch, SharedSide::Two)
}

/// `|F_O| / 2`: every edge of the host becomes this many edges of the result.
pub fn inflation_factor(o: &LopspOperation) -> usize {
    o.map().face_count() / 2
}

/// Validates a typed map with the given special vertices.
pub fn operation_from_parts(
    map: EmbeddedMap,
    vtype: Vec<u8>,
    v0: usize,
    v1: usize,
    v2: usize,
) -> Result<LopspOperation, Vec<LopspViolation>> {
    let typed = TypedMap::new(map, vtype).map_err(|_| vec![LopspViolation::BadSpecials])?;
    validate_lopsp(typed, v0, v1, v2)
}

/// The faces of an operation as labelled polygons: `(tail, edge)` per dart.
pub fn op_polygons(o: &LopspOperation) -> Vec<Polygon> {
    let m = o.map();
    m.faces().iter().map(|f| f.darts.iter().map(|&d| (m.tail(d), edge_of(d))).collect()).collect()
}

/// Builds an operation from labelled polygons over vertex ids that index `types`.
pub fn operation_from_polygons(
    polys: &[Polygon],
    types: &[u8],
    v0: usize,
    v1: usize,
    v2: usize,
) -> Result<LopspOperation, Vec<LopspViolation>> {
    let soup = from_soup(polys).map_err(|_| vec![LopspViolation::NotPlane(usize::MAX)])?;
    let vtype = soup.soup_vertex.iter().map(|&v| types[v]).collect();
    let id = |v: usize| soup.vertex_of.get(v).copied().filter(|&x| x != usize::MAX);
    match (id(v0), id(v1), id(v2)) {
        (Some(a), Some(b), Some(c)) => operation_from_parts(soup.map, vtype, a, b, c),
        _ => Err(vec![LopspViolation::BadSpecials]),
    }
}
