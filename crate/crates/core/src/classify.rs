//! Classification of lopsp-operations: identity, Dual, edge-breaking of
//! type 1 or 2, and edge-preserving.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::apply::apply_lopsp;
use crate::bary::TypedMap;
use crate::fixtures;
use crate::lopsp::{
    double_chamber_patch, glue_patches, minimal_cut_paths, op_diamond, op_polygons, operation_from_polygons, CutPath,
    DoubleChamberPatch, LopspOperation, SharedSide,
};
use crate::map::{edge_of, inv, Dart};
use crate::soup::Polygon;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClassTag {
    Identity,
    Dual,
    EdgeBreakingType1,
    EdgeBreakingType2,
    EdgePreserving,
}

impl ClassTag {
    pub fn is_edge_breaking(self) -> bool {
        matches!(self, ClassTag::Dual | ClassTag::EdgeBreakingType1 | ClassTag::EdgeBreakingType2)
    }
}

impl std::fmt::Display for ClassTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Evidence {
    /// An edge of the operation between `v0` and `v2`.
    V0V2Edge(usize),
    /// An edge of the operation between `v1` and `v2`.
    V1V2Edge(usize),
    /// No `v1`-`v2` edge with `t(v2) = 0` exists.
    NoBreakingEdge,
}

impl std::fmt::Display for Evidence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Evidence::V0V2Edge(e) => write!(f, "v0-v2 edge {e}"),
            Evidence::V1V2Edge(e) => write!(f, "v1-v2 edge {e}"),
            Evidence::NoBreakingEdge => write!(f, "no v1-v2 edge with t(v2)=0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OperationClass {
    pub tag: ClassTag,
    pub evidence: Evidence,
}

fn edge_between(o: &LopspOperation, a: usize, b: usize) -> Option<usize> {
    let m = o.map();
    m.rotation(a).into_iter().find(|&d| m.head(d) == b).map(edge_of)
}

pub fn classify(o: &LopspOperation) -> OperationClass {
    if let Some(e) = edge_between(o, o.v0, o.v2) {
        let tag = if o.t(o.v0) == 0 { ClassTag::Identity } else { ClassTag::Dual };
        return OperationClass { tag, evidence: Evidence::V0V2Edge(e) };
    }
    if o.t(o.v2) == 0 {
        if let Some(e) = edge_between(o, o.v1, o.v2) {
            let tag = if o.t(o.v1) == 1 { ClassTag::EdgeBreakingType1 } else { ClassTag::EdgeBreakingType2 };
            return OperationClass { tag, evidence: Evidence::V1V2Edge(e) };
        }
    }
    OperationClass { tag: ClassTag::EdgePreserving, evidence: Evidence::NoBreakingEdge }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompanionError {
    #[error("operation is not edge-breaking")]
    NotEdgeBreaking,
    #[error("Dual has no companion")]
    DualHasNoCompanion,
    #[error("replacement does not give a lopsp-operation")]
    Invalid,
}

/// The other member of an edge-breaking pair.
///
/// Type 2 to type 1: the edge `v1 v2` is doubled, and a new type-1 vertex
/// inside the digon becomes `v1`. Type 1 to type 2 removes `v1` and merges
/// the two remaining edges between its neighbours; the type-2 neighbour
/// becomes `v1`.
pub fn companion(o: &LopspOperation) -> Result<LopspOperation, CompanionError> {
    let class = classify(o);
    let e = match (class.tag, class.evidence) {
        (ClassTag::Dual, _) => return Err(CompanionError::DualHasNoCompanion),
        (ClassTag::EdgeBreakingType1 | ClassTag::EdgeBreakingType2, Evidence::V1V2Edge(e)) => e,
        _ => return Err(CompanionError::NotEdgeBreaking),
    };
    let m = o.map();
    let mut polys = op_polygons(o);
    let mut types = o.op.vtype.clone();
    let name = format!("companion({})", o.name());
    if class.tag == ClassTag::EdgeBreakingType2 {
        let n = m.vertex_count();
        types.push(1);
        let (eps2, nu1, nu2) = (m.edge_count(), m.edge_count() + 1, m.edge_count() + 2);
        // the face on the inv side of the edge now uses the second copy
        let d = if m.tail(2 * e) == o.v1 { 2 * e } else { 2 * e + 1 };
        let face_of = m.face_index();
        let fi = face_of[inv(d)];
        for side in polys[fi].iter_mut() {
            if side.1 == e {
                side.1 = eps2;
            }
        }
        polys.push(vec![(o.v1, e), (o.v2, nu2), (n, nu1)]);
        polys.push(vec![(o.v2, eps2), (o.v1, nu1), (n, nu2)]);
        operation_from_polygons(&polys, &types, o.v0, n, o.v2)
            .map(|c| c.with_name(name))
            .map_err(|_| CompanionError::Invalid)
    } else {
        let rot = m.rotation(o.v1);
        let c = rot.iter().map(|&d| m.head(d)).find(|&w| w != o.v2).ok_or(CompanionError::Invalid)?;
        let face_of = m.face_index();
        let at_v1: HashSet<usize> = rot.iter().map(|&d| face_of[d]).collect();
        // the third edge of each face at v1
        let mut third = Vec::new();
        for &fi in &at_v1 {
            for &(_, l) in &polys[fi] {
                if !rot.iter().any(|&d| edge_of(d) == l) {
                    third.push(l);
                }
            }
        }
        if third.len() != 2 || third[0] == third[1] {
            return Err(CompanionError::Invalid);
        }
        let mut kept: Vec<Polygon> =
            polys.into_iter().enumerate().filter(|(i, _)| !at_v1.contains(i)).map(|(_, p)| p).collect();
        for p in kept.iter_mut() {
            for side in p.iter_mut() {
                if side.1 == third[1] {
                    side.1 = third[0];
                }
            }
        }
        operation_from_polygons(&kept, &types, o.v0, c, o.v2)
            .map(|c| c.with_name(name))
            .map_err(|_| CompanionError::Invalid)
    }
}

/// Whether a cycle, given as darts, is trivial: one of its sides (other than
/// a side holding `outer_face`) contains nothing but one edge, or one type-1
/// vertex with its four edges.
pub fn is_trivial_4cycle(cycle: &[Dart], host: &TypedMap, outer_face: Option<usize>) -> bool {
    let m = &host.base;
    let face_of = m.face_index();
    let on_cycle: HashSet<usize> = cycle.iter().map(|&d| edge_of(d)).collect();
    let cycle_vertices: HashSet<usize> = cycle.iter().map(|&d| m.tail(d)).collect();
    let faces = m.faces();
    let region = |start: usize| -> HashSet<usize> {
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for &d in &faces[f].darts {
                if on_cycle.contains(&edge_of(d)) {
                    continue;
                }
                let g = face_of[inv(d)];
                if seen.insert(g) {
                    queue.push_back(g);
                }
            }
        }
        seen
    };
    let left = region(face_of[cycle[0]]);
    let right = region(face_of[inv(cycle[0])]);
    if left.contains(&face_of[inv(cycle[0])]) {
        return false;
    }
    [left, right].into_iter().any(|side| {
        if outer_face.is_some_and(|f| side.contains(&f)) {
            return false;
        }
        let darts: Vec<Dart> = side.iter().flat_map(|&f| faces[f].darts.iter().copied()).collect();
        let vertices: HashSet<usize> =
            darts.iter().map(|&d| m.tail(d)).filter(|v| !cycle_vertices.contains(v)).collect();
        let edges: HashSet<usize> = darts.iter().map(|&d| edge_of(d)).filter(|e| !on_cycle.contains(e)).collect();
        match vertices.len() {
            0 => edges.len() == 1,
            1 => {
                let x = *vertices.iter().next().unwrap();
                host.vtype[x] == 1 && edges.len() == 4 && m.degree(x) == 4
            }
            _ => false,
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct C3Witness {
    pub cut_path: Vec<Dart>,
    pub shared: String,
    /// Vertices of the offending 2- or 4-cycle in the glued copies.
    pub cycle: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum C3Check {
    Pass,
    Fail(C3Witness),
}

/// Searches two glued patch copies for a 2-cycle or a non-trivial 4-cycle,
/// for every minimal cut-path and every way of sharing one side. A failure
/// proves the operation is not c3; a pass proves nothing.
pub fn c3_necessary_check(o: &LopspOperation) -> C3Check {
    for p in minimal_cut_paths(o) {
        let patch = double_chamber_patch(o, &p);
        for side in [SharedSide::Two, SharedSide::OneLeftRight, SharedSide::OneRightLeft] {
            let glued = glue_patches(&p, &patch, side);
            if let Some(cycle) = bad_short_cycle(&glued.typed, glued.outer_face) {
                return C3Check::Fail(C3Witness { cut_path: p.darts.clone(), shared: format!("{side:?}"), cycle });
            }
        }
    }
    C3Check::Pass
}

fn bad_short_cycle(t: &TypedMap, outer_face: usize) -> Option<Vec<usize>> {
    let m = &t.base;
    let n = m.vertex_count();
    let mut dart_to: Vec<std::collections::HashMap<usize, Dart>> = vec![Default::default(); n];
    for v in 0..n {
        for d in m.rotation(v) {
            let w = m.head(d);
            if w == v || dart_to[v].insert(w, d).is_some() {
                return Some(vec![v, w]);
            }
        }
    }
    for a in 0..n {
        let nb: Vec<usize> = dart_to[a].keys().copied().filter(|&x| x > a).collect();
        for (i, &b) in nb.iter().enumerate() {
            for &d in &nb[i + 1..] {
                for (&c, _) in dart_to[b].iter() {
                    if c <= a || c == d || !dart_to[d].contains_key(&c) {
                        continue;
                    }
                    let cycle = [dart_to[a][&b], dart_to[b][&c], dart_to[c][&d], dart_to[d][&a]];
                    if !is_trivial_4cycle(&cycle, t, Some(outer_face)) {
                        return Some(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Applies the operation to three polyhedra and checks the results are
/// polyhedral. Only a failure is conclusive.
pub fn empirical_c3_probe(o: &LopspOperation) -> bool {
    [fixtures::tetrahedron(), fixtures::cube(), fixtures::dodecahedron()]
        .iter()
        .all(|g| apply_lopsp(o, g, None).result.is_polyhedral())
}

/// The shadow-connecting walk, as patch vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowWalk {
    pub vertices: Vec<usize>,
}

/// Patch neighbours of a boundary vertex, from its predecessor on the
/// boundary walk to its successor, through the inside of the patch.
fn inner_fan(patch: &DoubleChamberPatch, v: usize) -> Vec<usize> {
    let pm = &patch.ic.map;
    let blen = patch.ic.boundary.len();
    let mut rot = pm.rotation(v);
    let out = rot.iter().position(|&d| d < 2 * blen && d % 2 == 0 && pm.tail(d) == v).expect("boundary vertex");
    rot.rotate_left(out + 1);
    rot.iter().map(|&d| pm.head(d)).collect()
}

/// Walk along `P(v0L, v1) + P(v1, v0R)` in which every type-2 vertex is
/// replaced by its neighbours in rotation order.
pub fn shadow_connecting_walk(o: &LopspOperation, p: &CutPath) -> ShadowWalk {
    let patch = double_chamber_patch(o, p);
    let t = &patch.typed.vtype;
    let path = patch.two_side(p.split);
    let mut out = Vec::new();
    for (i, &v) in path.iter().enumerate() {
        if t[v] != 2 {
            out.push(v);
            continue;
        }
        if i == 0 || i == path.len() - 1 {
            continue;
        }
        let fan = inner_fan(&patch, v);
        let (prev, next) = (path[i - 1], path[i + 1]);
        let middle = &fan[1..fan.len() - 1];
        if fan[0] == prev && fan[fan.len() - 1] == next {
            out.extend_from_slice(middle);
        } else {
            debug_assert!(fan[0] == next && fan[fan.len() - 1] == prev);
            out.extend(middle.iter().rev());
        }
    }
    // A type-1 end next to a removed type-2 v0 copy brings in its type-0
    // neighbours at that copy. Without this, a walk that is only v1 (as in
    // leapfrog) would touch neither shadow.
    let pm = &patch.ic.map;
    let nbrs = |x: usize| -> Vec<usize> { pm.rotation(x).iter().map(|&d| pm.head(d)).collect() };
    let ends = [(path[0], true), (path[path.len() - 1], false)];
    for (corner, front) in ends {
        let Some(&x) = (if front { out.first() } else { out.last() }) else { continue };
        if t[corner] != 2 || t[x] != 1 {
            continue;
        }
        for y in nbrs(x) {
            if t[y] == 0 && nbrs(y).contains(&corner) && !out.contains(&y) {
                if front {
                    out.insert(0, y);
                } else {
                    out.push(y);
                }
            }
        }
    }
    ShadowWalk { vertices: out }
}

/// A type-2 path in the `P`-diamond between the two vertex-shadows that uses
/// only vertices of the two copies of the shadow-connecting walk, optionally
/// avoiding both 2-points. Returns diamond vertices.
pub fn find_edge_path(o: &LopspOperation, p: &CutPath, avoid_2points: bool) -> Option<Vec<usize>> {
    let patch = double_chamber_patch(o, p);
    let walk = shadow_connecting_walk(o, p);
    let dia = op_diamond(o, p);
    let dm = &dia.typed.base;
    let mut allowed = vec![false; dm.vertex_count()];
    for copy in 0..2 {
        for &w in &walk.vertices {
            allowed[dia.vertex_of[copy][w]] = true;
        }
    }
    if avoid_2points {
        for copy in 0..2 {
            allowed[dia.vertex_of[copy][patch.v2]] = false;
        }
    }
    let left = dia.typed.n0(dia.vertex_of[0][patch.v0l]);
    let right: HashSet<usize> = dia.typed.n0(dia.vertex_of[0][patch.v0r]).into_iter().collect();
    let mut prev = vec![usize::MAX; dm.vertex_count()];
    let mut queue = VecDeque::new();
    for &s in &left {
        if allowed[s] {
            prev[s] = s;
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        if right.contains(&x) {
            let mut path = vec![x];
            let mut y = x;
            while prev[y] != y {
                y = prev[y];
                path.push(y);
            }
            path.reverse();
            return Some(path);
        }
        for d in dm.rotation(x) {
            let y = dm.head(d);
            if allowed[y] && prev[y] == usize::MAX && dia.typed.edge_type(edge_of(d)) == Some(2) {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Inserts a doubled edge next to edge `e` (which must join types 0 and 2)
/// and fills the digon so that the result is still a lopsp-operation. The
/// doubled edge makes a 2-cycle in the patch unless a cut-path crosses it.
pub fn with_doubled_edge(o: &LopspOperation, e: usize) -> Option<LopspOperation> {
    let m = o.map();
    let (a, b) = m.endpoints(e);
    let (x, y) = match (o.t(a), o.t(b)) {
        (0, 2) => (a, b),
        (2, 0) => (b, a),
        _ => return None,
    };
    let d = if m.tail(2 * e) == x { 2 * e } else { 2 * e + 1 };
    let mut polys = op_polygons(o);
    let mut types = o.op.vtype.clone();
    let n = m.vertex_count();
    let (z, r, pp, q) = (n, n + 1, n + 2, n + 3);
    types.extend([1, 1, 0, 2]);
    let face_of = m.face_index();
    let eps2 = m.edge_count();
    for side in polys[face_of[inv(d)]].iter_mut() {
        if side.1 == e {
            side.1 = eps2;
        }
    }
    let l = eps2 + 1;
    // labels of the new edges
    let (xq, qp, py) = (l, l + 1, l + 2);
    let (zx, zq, zp, zy) = (l + 3, l + 4, l + 5, l + 6);
    let (rx, rq, rp, ry) = (l + 7, l + 8, l + 9, l + 10);
    // around z, inside the copy of e; around r, inside the new copy
    polys.push(vec![(x, e), (y, zy), (z, zx)]);
    polys.push(vec![(z, zq), (q, xq), (x, zx)]);
    polys.push(vec![(z, zp), (pp, qp), (q, zq)]);
    polys.push(vec![(z, zy), (y, py), (pp, zp)]);
    polys.push(vec![(y, eps2), (x, rx), (r, ry)]);
    polys.push(vec![(r, rx), (x, xq), (q, rq)]);
    polys.push(vec![(r, rq), (q, qp), (pp, rp)]);
    polys.push(vec![(r, rp), (pp, py), (y, ry)]);
    operation_from_polygons(&polys, &types, o.v0, o.v1, o.v2).ok().map(|c| c.with_name(format!("{}+digon", o.name())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apply::apply_lopsp;
    use crate::catalog;
    use crate::lopsp::find_cut_path;
    use crate::lopsp::CutPathStrategy;

    #[test]
    fn catalog_tags() {
        assert_eq!(classify(&catalog::dual()).tag, ClassTag::Dual);
        assert_eq!(classify(&catalog::identity()).tag, ClassTag::Identity);
        assert_eq!(classify(&catalog::join()).tag, ClassTag::EdgeBreakingType2);
        assert_eq!(classify(&catalog::kis()).tag, ClassTag::EdgePreserving);
        assert!(matches!(classify(&catalog::join()).evidence, Evidence::V1V2Edge(_)));
    }

    #[test]
    fn companion_of_join_is_needle() {
        let c = companion(&catalog::join()).unwrap();
        assert_eq!(classify(&c).tag, ClassTag::EdgeBreakingType1);
        assert_eq!(c.canonical_form(), catalog::needle().canonical_form());
        let back = companion(&c).unwrap();
        assert_eq!(classify(&back).tag, ClassTag::EdgeBreakingType2);
        assert_eq!(back.canonical_form(), catalog::join().canonical_form());
    }

    #[test]
    fn companion_adds_the_dual_edges() {
        let c = companion(&catalog::join()).unwrap();
        for g in crate::fixtures::all() {
            let e1 = apply_lopsp(&c, &g, None).result.edge_count();
            let e2 = apply_lopsp(&catalog::join(), &g, None).result.edge_count();
            assert_eq!(e1, e2 + g.edge_count());
        }
    }

    #[test]
    fn companion_errors() {
        assert_eq!(companion(&catalog::kis()), Err(CompanionError::NotEdgeBreaking));
        assert_eq!(companion(&catalog::dual()), Err(CompanionError::DualHasNoCompanion));
        assert_eq!(companion(&catalog::identity()), Err(CompanionError::NotEdgeBreaking));
    }

    #[test]
    fn catalog_passes_c3_check() {
        for c in catalog::catalog() {
            assert_eq!(c3_necessary_check(&c.op), C3Check::Pass, "{}", c.op.name());
            assert!(empirical_c3_probe(&c.op), "{}", c.op.name());
        }
    }

    #[test]
    fn doubled_edge_fails_c3_check() {
        for op in [catalog::kis(), catalog::truncation(), catalog::chamfer()] {
            let mut failed = 0;
            for e in 0..op.map().edge_count() {
                if let Some(bad) = with_doubled_edge(&op, e) {
                    if let C3Check::Fail(w) = c3_necessary_check(&bad) {
                        failed += 1;
                        assert!(w.cycle.len() == 2 || w.cycle.len() == 4);
                    }
                }
            }
            assert!(failed > 0, "{}", op.name());
        }
    }

    #[test]
    fn trivial_cycles_in_a_subdivision() {
        let b = crate::bary::barycentric_subdivision(&crate::fixtures::cube());
        let m = &b.base;
        // around an edge vertex: its four neighbours
        let x = b.vertices_of_type(1)[0];
        let nb: Vec<usize> = m.rotation(x).into_iter().map(|d| m.head(d)).collect();
        let cycle: Vec<Dart> = (0..4)
            .map(|i| m.rotation(nb[i]).into_iter().find(|&d| m.head(d) == nb[(i + 1) % 4]).unwrap())
            .collect();
        assert!(is_trivial_4cycle(&cycle, &b, None));
        let v = 0;
        let r: Vec<usize> = m.rotation(v).into_iter().map(|d| m.head(d)).collect();
        // r alternates edge vertex, face vertex; e1 f1 e2 f2 ... around v
        let (e1, f1, e2) = (r[0], r[1], r[2]);
        let dart = |a: usize, b: usize| m.rotation(a).into_iter().find(|&d| m.head(d) == b).unwrap();
        // e1 and e2 share the face f1; cycle v e1 f1 e2 encloses one edge (v f1)
        let c2 = [dart(v, e1), dart(e1, f1), dart(f1, e2), dart(e2, v)];
        assert!(is_trivial_4cycle(&c2, &b, None));
        // a degree-2 vertex of a square: its four neighbours enclose a type-0 vertex
        let sq = crate::map::from_neighbour_rotations(&[vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap();
        let b = crate::bary::barycentric_subdivision(&sq);
        let m = &b.base;
        let nb: Vec<usize> = m.rotation(0).into_iter().map(|d| m.head(d)).collect();
        let cycle: Vec<Dart> = (0..4)
            .map(|i| m.rotation(nb[i]).into_iter().find(|&d| m.head(d) == nb[(i + 1) % 4]).unwrap())
            .collect();
        assert!(!is_trivial_4cycle(&cycle, &b, None));
    }

    #[test]
    fn shadow_walks() {
        let id = catalog::identity();
        let p = find_cut_path(&id, CutPathStrategy::Minimal);
        assert_eq!(shadow_connecting_walk(&id, &p).vertices.len(), 3);
        let d = catalog::dual();
        let p = find_cut_path(&d, CutPathStrategy::Minimal);
        // v1 plus the 2-point next to it, which is also a 0-neighbour of v0
        let w = shadow_connecting_walk(&d, &p).vertices;
        let patch = double_chamber_patch(&d, &p);
        assert_eq!(w.len(), 2);
        assert!(w.contains(&patch.v1) && w.contains(&patch.v2));
        for c in catalog::catalog() {
            let o = &c.op;
            for p in minimal_cut_paths(o) {
                let patch = double_chamber_patch(o, &p);
                let w = shadow_connecting_walk(o, &p).vertices;
                assert!(w.iter().all(|&v| patch.typed.vtype[v] != 2));
                for pair in w.windows(2) {
                    let ok = patch.ic.map.rotation(pair[0]).into_iter().any(|d| {
                        patch.ic.map.head(d) == pair[1] && patch.typed.edge_type(edge_of(d)) == Some(2)
                    });
                    assert!(ok, "{}", o.name());
                }
            }
        }
    }

    #[test]
    fn edge_paths() {
        let kis = catalog::kis();
        let join = catalog::join();
        let pk = find_cut_path(&kis, CutPathStrategy::Minimal);
        let pj = find_cut_path(&join, CutPathStrategy::Minimal);
        assert!(find_edge_path(&kis, &pk, true).is_some());
        assert!(find_edge_path(&join, &pj, true).is_none());
        assert!(find_edge_path(&join, &pj, false).is_some());
    }
}
