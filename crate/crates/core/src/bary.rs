//! Typed maps, barycentric subdivisions and double chambers.
//!
//! In the barycentric subdivision `B_G` of a map `G`, vertices are numbered
//! `V_G` first, then `E_G`, then `F_G` (faces in the order of
//! [`EmbeddedMap::faces`]). Every dart `d` of `G` contributes three edges:
//!
//! * `d` joins `tail(d)` to the edge vertex of `d` (type 2),
//! * `2m + d` joins `tail(d)` to the face vertex of `d` (type 1),
//! * `4m + d` joins the edge vertex of `d` to the face vertex of `d` (type 0),
//!
//! where `m = |E_G|`. The even dart of each of these edges sits at its endpoint
//! of lower type.

use crate::error::BaryError;
use crate::map::{edge_of, inv, Dart, EmbeddedMap};

/// The element of the host map a typed vertex stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vertex(usize),
    Edge(usize),
    Face(usize),
}

/// A map whose vertices carry a type in `{0, 1, 2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedMap {
    pub base: EmbeddedMap,
    pub vtype: Vec<u8>,
    pub provenance: Option<Vec<Element>>,
}

impl TypedMap {
    pub fn new(base: EmbeddedMap, vtype: Vec<u8>) -> Result<Self, BaryError> {
        if vtype.len() != base.vertex_count() {
            return Err(BaryError::TypeLength { expected: base.vertex_count(), found: vtype.len() });
        }
        if let Some(v) = vtype.iter().position(|&t| t > 2) {
            return Err(BaryError::BadType(v));
        }
        Ok(TypedMap { base, vtype, provenance: None })
    }

    pub fn vertex_type(&self, v: usize) -> u8 {
        self.vtype[v]
    }

    /// The type missing from the endpoints of `e`; `None` if they share a type.
    pub fn edge_type(&self, e: usize) -> Option<u8> {
        let (a, b) = self.base.endpoints(e);
        let (ta, tb) = (self.vtype[a], self.vtype[b]);
        (ta != tb).then(|| 3 - ta - tb)
    }

    /// No edge joins two vertices of the same type.
    pub fn is_properly_typed(&self) -> bool {
        (0..self.base.edge_count()).all(|e| self.edge_type(e).is_some())
    }

    /// Vertices of type `t`, ascending.
    pub fn vertices_of_type(&self, t: u8) -> Vec<usize> {
        (0..self.vtype.len()).filter(|&v| self.vtype[v] == t).collect()
    }

    /// Position of every vertex among the vertices of its own type.
    pub fn type_rank(&self) -> Vec<usize> {
        let mut next = [0usize; 3];
        self.vtype
            .iter()
            .map(|&t| {
                next[t as usize] += 1;
                next[t as usize] - 1
            })
            .collect()
    }

    /// Same map with types 0 and 2 exchanged.
    pub fn swap_types(&self) -> TypedMap {
        TypedMap { base: self.base.clone(), vtype: self.vtype.iter().map(|&t| 2 - t).collect(), provenance: None }
    }

    /// Every face is a triangle with one vertex of each type, and type-1 vertices have degree 4.
    pub fn check_chamber_structured(&self) -> Result<(), BaryError> {
        for f in self.base.faces() {
            if f.len() != 3 {
                return Err(BaryError::NotChamberStructured(format!("face of length {}", f.len())));
            }
            let mut seen = [false; 3];
            for v in f.vertices(&self.base) {
                seen[self.vtype[v] as usize] = true;
            }
            if seen != [true; 3] {
                return Err(BaryError::NotChamberStructured("face without one vertex of each type".into()));
            }
        }
        for v in self.vertices_of_type(1) {
            let deg = self.base.degree(v);
            if deg != 4 {
                return Err(BaryError::NotChamberStructured(format!("type-1 vertex {v} has degree {deg}")));
            }
        }
        Ok(())
    }

    /// Type-0 vertices equal or adjacent to `v`, ascending.
    pub fn n0(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = std::iter::once(v)
            .chain(self.base.rotation(v).into_iter().map(|d| self.base.head(d)))
            .filter(|&x| self.vtype[x] == 0)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Labels for canonical forms: the vertex type.
    pub fn type_labels(&self) -> Vec<u64> {
        self.vtype.iter().map(|&t| t as u64).collect()
    }
}

/// Index of the type-2 edge from `tail(d)` to the edge vertex of `d`.
pub fn a_edge(d: Dart) -> usize {
    d
}

/// Index of the type-1 edge from `tail(d)` to the face vertex of `d`.
pub fn c_edge(m: usize, d: Dart) -> usize {
    2 * m + d
}

/// Index of the type-0 edge from the edge vertex of `d` to the face vertex of `d`.
pub fn f_edge(m: usize, d: Dart) -> usize {
    4 * m + d
}

/// The barycentric subdivision, with full provenance.
pub fn barycentric_subdivision(g: &EmbeddedMap) -> TypedMap {
    let n = g.vertex_count();
    let m = g.edge_count();
    let faces = g.faces();
    let nb = n + m + faces.len();
    let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); nb];
    for (u, r) in rot.iter_mut().enumerate().take(n) {
        for d in g.rotation(u) {
            r.push(2 * a_edge(d));
            r.push(2 * c_edge(m, g.sigma(d)));
        }
    }
    for k in 0..m {
        let (d, e) = (2 * k, 2 * k + 1);
        rot[n + k] = vec![2 * a_edge(d) + 1, 2 * f_edge(m, d), 2 * a_edge(e) + 1, 2 * f_edge(m, e)];
    }
    for (fi, f) in faces.iter().enumerate() {
        let r = &mut rot[n + m + fi];
        for &d in f.darts.iter().rev() {
            r.push(2 * c_edge(m, d) + 1);
            r.push(2 * f_edge(m, g.phi_inv(d)) + 1);
        }
    }
    let base = EmbeddedMap::build(nb, &rot).expect("barycentric subdivision is a valid map");
    let vtype = (0..nb).map(|v| if v < n { 0 } else if v < n + m { 1 } else { 2 }).collect();
    let provenance = (0..nb)
        .map(|v| {
            if v < n {
                Element::Vertex(v)
            } else if v < n + m {
                Element::Edge(v - n)
            } else {
                Element::Face(v - n - m)
            }
        })
        .collect();
    TypedMap { base, vtype, provenance: Some(provenance) }
}

/// Recovers the map whose barycentric subdivision is `b`. Vertices are the
/// type-0 vertices and edges the type-1 vertices, each numbered by rank.
pub fn extract_primal(b: &TypedMap) -> Result<EmbeddedMap, BaryError> {
    b.check_chamber_structured()?;
    let rank = b.type_rank();
    let bm = &b.base;
    // G-dart carried by each B-dart from a type-0 vertex to a type-1 vertex.
    let mut gdart = vec![usize::MAX; bm.dart_count()];
    for x in b.vertices_of_type(1) {
        let k = rank[x];
        let mut side = 0;
        for d in bm.rotation(x) {
            let u = bm.head(d);
            if b.vtype[u] == 0 {
                if side > 1 {
                    return Err(BaryError::NotChamberStructured(format!("edge vertex {x} has more than two ends")));
                }
                gdart[inv(d)] = 2 * k + side;
                side += 1;
            }
        }
        if side != 2 {
            return Err(BaryError::NotChamberStructured(format!("edge vertex {x} has {side} ends")));
        }
    }
    let rotations: Vec<Vec<Dart>> = b
        .vertices_of_type(0)
        .into_iter()
        .map(|u| bm.rotation(u).into_iter().filter(|&d| b.vtype[bm.head(d)] == 1).map(|d| gdart[d]).collect())
        .collect();
    Ok(EmbeddedMap::build(rotations.len(), &rotations)?)
}

/// `B_G` without its type-0 edges; faces are the double chambers.
pub fn double_chamber_graph(b: &TypedMap) -> Result<TypedMap, BaryError> {
    b.check_chamber_structured().map_err(|_| BaryError::NotBarycentric)?;
    let keep: Vec<bool> = (0..b.base.edge_count()).map(|e| b.edge_type(e) != Some(0)).collect();
    let (base, _) = b.base.restrict_edges(&keep)?;
    Ok(TypedMap { base, vtype: b.vtype.clone(), provenance: b.provenance.clone() })
}

/// A chamber of `B_G`: the triangle with vertices `tail(d)`, the edge of `d`
/// and the face on the given side of `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chamber {
    pub vertices: [usize; 3],
}

impl Chamber {
    pub fn i_vertex(&self, i: usize) -> usize {
        self.vertices[i]
    }

    /// The edge opposite the `i`-vertex, given as its endpoints.
    pub fn i_edge(&self, i: usize) -> (usize, usize) {
        let others: Vec<usize> = (0..3).filter(|&j| j != i).map(|j| self.vertices[j]).collect();
        (others[0], others[1])
    }
}

/// Chambers of a chamber-structured typed map, indexed by face.
pub fn chambers(b: &TypedMap) -> Vec<Chamber> {
    b.base
        .faces()
        .iter()
        .map(|f| {
            let mut vs = [0; 3];
            for v in f.vertices(&b.base) {
                vs[b.vtype[v] as usize] = v;
            }
            Chamber { vertices: vs }
        })
        .collect()
}

/// A double chamber of `G`, identified by the dart `d` whose face it lies in.
/// In `B_G` its 0-points are `tail(d)` and `head(d)`, its 1-point is the edge
/// of `d` and its 2-point the face of `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoubleChamber {
    pub dart: Dart,
    pub zero_points: [usize; 2],
    pub one_point: usize,
    pub two_point: usize,
}

impl DoubleChamber {
    pub fn new(g: &EmbeddedMap, face_of: &[usize], d: Dart) -> Self {
        let n = g.vertex_count();
        let m = g.edge_count();
        DoubleChamber {
            dart: d,
            zero_points: [g.tail(d), g.head(d)],
            one_point: n + edge_of(d),
            two_point: n + m + face_of[d],
        }
    }

    /// The two 1-sides `(0-point, 2-point)`.
    pub fn one_sides(&self) -> [(usize, usize); 2] {
        [(self.zero_points[0], self.two_point), (self.zero_points[1], self.two_point)]
    }

    /// The 2-side as its path `0-point, 1-point, 0-point`.
    pub fn two_side(&self) -> [usize; 3] {
        [self.zero_points[0], self.one_point, self.zero_points[1]]
    }
}

/// All double chambers of `G`, one per dart.
pub fn double_chambers(g: &EmbeddedMap) -> Vec<DoubleChamber> {
    let face_of = g.face_index();
    (0..g.dart_count()).map(|d| DoubleChamber::new(g, &face_of, d)).collect()
}

/// The two double chambers around one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Diamond {
    pub edge: usize,
    pub halves: [DoubleChamber; 2],
}

/// The diamond around the type-1 vertex `e` of `B_G`.
pub fn diamond_around(g: &EmbeddedMap, b: &TypedMap, e: usize) -> Result<Diamond, BaryError> {
    if b.vtype[e] != 1 {
        return Err(BaryError::WrongType { vertex: e, expected: 1, found: b.vtype[e] });
    }
    let k = e - g.vertex_count();
    let face_of = g.face_index();
    Ok(Diamond { edge: k, halves: [DoubleChamber::new(g, &face_of, 2 * k), DoubleChamber::new(g, &face_of, 2 * k + 1)] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::fixtures;
    use crate::map::build_map;

    #[test]
    fn cube_subdivision_counts() {
        let b = barycentric_subdivision(&fixtures::cube());
        assert_eq!(b.base.vertex_count(), 26);
        assert_eq!(b.base.face_count(), 48);
        assert_eq!(b.base.genus().unwrap(), 0);
        b.check_chamber_structured().unwrap();
        assert!(b.is_properly_typed());
    }

    #[test]
    fn single_edge_subdivision() {
        let g = build_map(2, &[vec![0], vec![1]]).unwrap();
        let b = barycentric_subdivision(&g);
        assert_eq!(b.base.vertex_count(), 4);
        assert_eq!(b.base.face_count(), 4);
        let d = double_chamber_graph(&b).unwrap();
        assert_eq!(d.base.face_count(), 2);
    }

    #[test]
    fn genus_and_chamber_count_on_fixtures() {
        for g in fixtures::all() {
            let b = barycentric_subdivision(&g);
            assert_eq!(b.base.genus().unwrap(), g.genus().unwrap());
            assert_eq!(b.base.face_count(), 4 * g.edge_count());
            for v in b.vertices_of_type(1) {
                assert_eq!(b.base.degree(v), 4);
            }
            let d = double_chamber_graph(&b).unwrap();
            assert_eq!(d.base.face_count(), 2 * g.edge_count());
            assert_eq!(d.base.genus().unwrap(), g.genus().unwrap());
        }
    }

    #[test]
    fn round_trip() {
        for g in fixtures::all() {
            let back = extract_primal(&barycentric_subdivision(&g)).unwrap();
            assert!(is_isomorphic(&back, &g));
        }
    }

    #[test]
    fn loop_and_multi_edge_hosts() {
        let lp = build_map(1, &[vec![0, 1]]).unwrap();
        let b = barycentric_subdivision(&lp);
        assert_eq!(b.base.genus().unwrap(), 0);
        b.check_chamber_structured().unwrap();
        assert!(is_isomorphic(&extract_primal(&b).unwrap(), &lp));
        let t = fixtures::torus_q3().dual();
        let b = barycentric_subdivision(&t);
        assert_eq!(b.base.genus().unwrap(), 1);
        assert!(is_isomorphic(&extract_primal(&b).unwrap(), &t));
    }

    #[test]
    fn types_alternate_around_vertices() {
        let g = fixtures::dodecahedron();
        let b = barycentric_subdivision(&g);
        for v in 0..g.vertex_count() {
            let types: Vec<u8> = b.base.rotation(v).iter().map(|&d| b.vtype[b.base.head(d)]).collect();
            for i in 0..types.len() {
                assert_ne!(types[i], types[(i + 1) % types.len()]);
            }
        }
    }

    #[test]
    fn zero_neighbourhoods() {
        let g = fixtures::cube();
        let b = barycentric_subdivision(&g);
        let n = 8;
        let m = 12;
        assert_eq!(b.n0(3), vec![3]);
        for e in 0..m {
            let (x, y) = g.endpoints(e);
            let mut want = vec![x, y];
            want.sort();
            assert_eq!(b.n0(n + e), want);
        }
        for (fi, f) in g.faces().iter().enumerate() {
            let mut want = f.vertices(&g);
            want.sort();
            assert_eq!(b.n0(n + m + fi), want);
        }
    }

    #[test]
    fn diamonds() {
        let g = fixtures::cube();
        let b = barycentric_subdivision(&g);
        let dm = diamond_around(&g, &b, 8 + 5).unwrap();
        assert_ne!(dm.halves[0].two_point, dm.halves[1].two_point);
        assert_eq!(dm.halves[0].one_point, dm.halves[1].one_point);
        assert_eq!(diamond_around(&g, &b, 0), Err(BaryError::WrongType { vertex: 0, expected: 1, found: 0 }));
        let single = build_map(2, &[vec![0], vec![1]]).unwrap();
        let b = barycentric_subdivision(&single);
        let dm = diamond_around(&single, &b, 2).unwrap();
        assert_eq!(dm.halves[0].two_point, dm.halves[1].two_point);
    }

    #[test]
    fn double_chamber_faces_match_darts() {
        let g = fixtures::cube();
        let b = barycentric_subdivision(&g);
        let d = double_chamber_graph(&b).unwrap();
        let mut from_faces: Vec<Vec<usize>> = d
            .base
            .faces()
            .iter()
            .map(|f| {
                let mut vs = f.vertices(&d.base);
                vs.sort();
                vs
            })
            .collect();
        let mut from_darts: Vec<Vec<usize>> = double_chambers(&g)
            .iter()
            .map(|dc| {
                let mut vs = vec![dc.zero_points[0], dc.zero_points[1], dc.one_point, dc.two_point];
                vs.sort();
                vs
            })
            .collect();
        from_faces.sort();
        from_darts.sort();
        assert_eq!(from_faces, from_darts);
    }

    #[test]
    fn rejects_bad_structure() {
        let g = fixtures::cube();
        let b = barycentric_subdivision(&g);
        // relabel a type-1 vertex as type 0: faces lose their type-1 corner
        let mut bad = b.clone();
        bad.vtype[8] = 0;
        assert!(matches!(extract_primal(&bad), Err(BaryError::NotChamberStructured(_))));
        // the cube itself is not chamber structured
        let t = TypedMap::new(g.clone(), vec![0; 8]).unwrap();
        assert!(extract_primal(&t).is_err());
        assert_eq!(TypedMap::new(g, vec![0; 3]).unwrap_err(), BaryError::TypeLength { expected: 8, found: 3 });
    }

    #[test]
    fn degree_six_edge_vertex_rejected() {
        // A hexagonal bipyramid with type-1 apexes and an equator alternating 0 and 2.
        let mut faces = Vec::new();
        for i in 0..6 {
            faces.push(vec![6, i, (i + 1) % 6]);
            faces.push(vec![7, (i + 1) % 6, i]);
        }
        let m = crate::soup::from_faces(&faces).unwrap();
        let mut vtype = vec![0; 8];
        for i in 0..6 {
            vtype[m.vertex_of[i]] = if i % 2 == 0 { 0 } else { 2 };
        }
        vtype[m.vertex_of[6]] = 1;
        vtype[m.vertex_of[7]] = 1;
        let t = TypedMap::new(m.map, vtype).unwrap();
        assert!(matches!(t.check_chamber_structured(), Err(BaryError::NotChamberStructured(_))));
    }
}
