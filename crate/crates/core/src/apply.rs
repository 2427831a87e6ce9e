//! Applying a lopsp-operation to a map.
//!
//! `B_{O(G)}` is assembled from one copy of the operation's chambers per
//! double chamber of `G` (that is, per dart of `G`). A half-edge of
//! `B_{O(G)}` is a pair `(g, o)` of a host dart and an operation dart. Inside
//! a copy the half-edges follow the faces of `O`. Across a cut-path edge a
//! half-edge is glued to the neighbouring copy: through the 2-side to the copy
//! of `inv(g)`, through a 1-side to the copy of `phi(g)` or `phi^-1(g)`.

use crate::bary::{extract_primal, TypedMap};
use crate::bridges::SubgraphMask;
use crate::error::ApplyError;
use crate::lopsp::{find_cut_path, CutPath, CutPathStrategy, LopspOperation};
use crate::map::{edge_of, inv, Dart, EmbeddedMap};

#[derive(Debug, Clone)]
pub struct ApplicationResult {
    /// `O(G)`.
    pub result: EmbeddedMap,
    /// `B_{O(G)}`.
    pub b_result: TypedMap,
    pub host: EmbeddedMap,
    pub cut_path: CutPath,
    /// Operation vertex of each vertex of `B_{O(G)}`.
    pub pi_vertex: Vec<usize>,
    /// Operation dart of each dart of `B_{O(G)}`.
    pub pi_dart: Vec<Dart>,
    /// Host dart (double chamber) of the patch copy each dart of `B_{O(G)}` was made in.
    pub side_index: Vec<Dart>,
    /// `B_{O(G)}` vertex of each host vertex, edge and face.
    pub zero_points: Vec<usize>,
    pub one_points: Vec<usize>,
    pub two_points: Vec<usize>,
    /// `O(G)` vertex of each type-0 vertex of `B_{O(G)}`.
    pub result_vertex: Vec<Option<usize>>,
    /// `B_{O(G)}` vertex of each `O(G)` vertex.
    pub b_vertex: Vec<usize>,
    pub vertex_shadows: Vec<Vec<usize>>,
    pub face_shadows: Vec<Vec<usize>>,
}

/// Applies `o` to `g`, cutting along `p` or a minimal cut-path.
pub fn apply_lopsp(o: &LopspOperation, g: &EmbeddedMap, p: Option<&CutPath>) -> ApplicationResult {
    let path = match p {
        Some(p) => p.clone(),
        None => find_cut_path(o, CutPathStrategy::Minimal),
    };
    let om = o.map();
    let od = om.dart_count();
    let gd = g.dart_count();
    let pos = path.dart_positions(od);
    let half = |x: Dart, y: Dart| x * od + y;
    let mut next = vec![0; gd * od];
    let mut twin = vec![0; gd * od];
    for x in 0..gd {
        for y in 0..od {
            next[half(x, y)] = half(x, om.phi(y));
            let other = match pos[y] {
                None => x,
                Some((i, _)) if i < path.split => inv(x),
                Some((_, true)) => g.phi(x),
                Some((_, false)) => g.phi_inv(x),
            };
            twin[half(x, y)] = half(other, inv(y));
        }
    }
    let (bm, dart_of) = EmbeddedMap::from_half_edges(&twin, &next).expect("glued patches form a map");
    let mut pi_dart = vec![0; bm.dart_count()];
    let mut side_index = vec![0; bm.dart_count()];
    for x in 0..gd {
        for y in 0..od {
            let d = dart_of[half(x, y)];
            pi_dart[d] = y;
            side_index[d] = x;
        }
    }
    let mut pi_vertex = vec![usize::MAX; bm.vertex_count()];
    for (d, &y) in pi_dart.iter().enumerate() {
        pi_vertex[bm.tail(d)] = om.tail(y);
    }
    let vtype = pi_vertex.iter().map(|&v| o.t(v)).collect();
    let b_result = TypedMap::new(bm, vtype).expect("types come from the operation");
    let result = extract_primal(&b_result).expect("B_{O(G)} is a barycentric subdivision");

    let at = |x: Dart, y: Dart| b_result.base.tail(dart_of[half(x, y)]);
    // a dart leaving v0 on the side of the tail copy
    let a = inv(path.darts[path.split - 1]);
    let at_v1 = om.first_dart(o.v1);
    let at_v2 = om.first_dart(o.v2);
    let zero_points: Vec<usize> = (0..g.vertex_count()).map(|v| at(g.first_dart(v), a)).collect();
    let one_points: Vec<usize> = (0..g.edge_count()).map(|e| at(2 * e, at_v1)).collect();
    let two_points: Vec<usize> = g.faces().iter().map(|f| at(f.darts[0], at_v2)).collect();

    let rank = b_result.type_rank();
    let result_vertex: Vec<Option<usize>> =
        (0..b_result.base.vertex_count()).map(|x| (b_result.vtype[x] == 0).then_some(rank[x])).collect();
    let b_vertex = b_result.vertices_of_type(0);
    let shadow = |x: usize| -> Vec<usize> { b_result.n0(x).into_iter().map(|y| rank[y]).collect() };
    let vertex_shadows = zero_points.iter().map(|&x| shadow(x)).collect();
    let face_shadows = two_points.iter().map(|&x| shadow(x)).collect();

    ApplicationResult {
        result,
        host: g.clone(),
        cut_path: path,
        pi_vertex,
        pi_dart,
        side_index,
        zero_points,
        one_points,
        two_points,
        result_vertex,
        b_vertex,
        vertex_shadows,
        face_shadows,
        b_result,
    }
}

/// `S_O(v)`: vertices of `O(G)` coming from the 0-neighbourhood of `v`.
pub fn vertex_shadow(r: &ApplicationResult, v: usize) -> Result<&[usize], ApplyError> {
    r.vertex_shadows.get(v).map(|s| s.as_slice()).ok_or(ApplyError::UnknownVertex(v))
}

/// `S_O(f)`: vertices of `O(G)` coming from the 0-neighbourhood of face `f`.
pub fn face_shadow(r: &ApplicationResult, f: usize) -> Result<&[usize], ApplyError> {
    r.face_shadows.get(f).map(|s| s.as_slice()).ok_or(ApplyError::UnknownFace(f))
}

/// Everything in `B_{O(G)}` whose image under `pi` lies in `h`.
pub fn pi_inverse(r: &ApplicationResult, h: &SubgraphMask) -> SubgraphMask {
    let bm = &r.b_result.base;
    let vertices = r.pi_vertex.iter().map(|&v| h.vertices[v]).collect();
    let mut edges = vec![false; bm.edge_count()];
    for e in 0..bm.edge_count() {
        edges[e] = h.edges[edge_of(r.pi_dart[2 * e])];
    }
    SubgraphMask { vertices, edges, induced: false }
}
