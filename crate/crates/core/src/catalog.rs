//! Named lopsp-operations.
//!
//! Each operation except gyro is drawn as a double chamber: a triangulated
//! disk whose boundary runs `u .. e .. w` (the 2-side), `w .. f` and
//! `f .. u` (the 1-sides). Gluing `u .. e` to `w .. e` and `u .. f` to
//! `w .. f` closes the disk into the operation, with `v0 = u = w`, `v1 = e`
//! and `v2 = f`.

use std::collections::HashMap;

use crate::classify::ClassTag;
use crate::lopsp::{operation_from_parts, LopspOperation};
use crate::soup::{from_soup, Polygon};

/// A drawn double chamber. Vertex ids index `types`.
struct Drawing {
    types: Vec<u8>,
    triangles: Vec<[usize; 3]>,
    u_to_e: Vec<usize>,
    w_to_e: Vec<usize>,
    u_to_f: Vec<usize>,
    w_to_f: Vec<usize>,
}

impl Drawing {
    fn close(&self, name: &str) -> LopspOperation {
        let mut ident: HashMap<usize, usize> = HashMap::new();
        for (a, b) in [(&self.u_to_e, &self.w_to_e), (&self.u_to_f, &self.w_to_f)] {
            assert_eq!(a.len(), b.len());
            for (&x, &y) in a.iter().zip(b.iter()) {
                if x != y {
                    ident.insert(y, x);
                }
            }
        }
        let canon_v = |v: usize| *ident.get(&v).unwrap_or(&v);
        // label edges by their drawn endpoints, then merge glued side edges
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let mut label: HashMap<(usize, usize), usize> = HashMap::new();
        for t in &self.triangles {
            for i in 0..3 {
                let k = key(t[i], t[(i + 1) % 3]);
                let n = label.len();
                label.entry(k).or_insert(n);
            }
        }
        for (a, b) in [(&self.u_to_e, &self.w_to_e), (&self.u_to_f, &self.w_to_f)] {
            for i in 0..a.len() - 1 {
                let la = label[&key(a[i], a[i + 1])];
                label.insert(key(b[i], b[i + 1]), la);
            }
        }
        let polys: Vec<Polygon> = self
            .triangles
            .iter()
            .map(|t| (0..3).map(|i| (canon_v(t[i]), label[&key(t[i], t[(i + 1) % 3])])).collect())
            .collect();
        let soup = from_soup(&polys).unwrap_or_else(|e| panic!("{name}: {e}"));
        let vtype = soup.soup_vertex.iter().map(|&v| self.types[v]).collect();
        let (v0, v1, v2) = (soup.vertex_of[self.u_to_e[0]], soup.vertex_of[*self.u_to_e.last().unwrap()], soup.vertex_of[*self.u_to_f.last().unwrap()]);
        operation_from_parts(soup.map, vtype, v0, v1, v2)
            .unwrap_or_else(|e| panic!("{name} is not a lopsp-operation: {e:?}"))
            .with_name(name)
    }
}

pub fn identity() -> LopspOperation {
    let (u, e, w, f) = (0, 1, 2, 3);
    Drawing {
        types: vec![0, 1, 0, 2],
        triangles: vec![[u, e, f], [e, w, f]],
        u_to_e: vec![u, e],
        w_to_e: vec![w, e],
        u_to_f: vec![u, f],
        w_to_f: vec![w, f],
    }
    .close("identity")
}

/// Three vertices, three edges and two faces.
pub fn dual() -> LopspOperation {
    let (u, e, w, f) = (0, 1, 2, 3);
    Drawing {
        types: vec![2, 1, 2, 0],
        triangles: vec![[u, e, f], [e, w, f]],
        u_to_e: vec![u, e],
        w_to_e: vec![w, e],
        u_to_f: vec![u, f],
        w_to_f: vec![w, f],
    }
    .close("dual")
}

pub fn ambo() -> LopspOperation {
    let (u, e, w, f, a, b) = (0, 1, 2, 3, 4, 5);
    Drawing {
        types: vec![2, 0, 2, 2, 1, 1],
        triangles: vec![[e, a, u], [e, a, f], [e, b, f], [e, b, w]],
        u_to_e: vec![u, e],
        w_to_e: vec![w, e],
        u_to_f: vec![u, a, f],
        w_to_f: vec![w, b, f],
    }
    .close("ambo")
}

pub fn kis() -> LopspOperation {
    let (u, e, w, f, a, b, c) = (0, 1, 2, 3, 4, 5, 6);
    Drawing {
        types: vec![0, 1, 0, 0, 1, 1, 2],
        triangles: vec![[c, u, e], [c, e, w], [c, w, b], [c, b, f], [c, f, a], [c, a, u]],
        u_to_e: vec![u, e],
        w_to_e: vec![w, e],
        u_to_f: vec![u, a, f],
        w_to_f: vec![w, b, f],
    }
    .close("kis")
}

pub fn truncation() -> LopspOperation {
    let (u, p, e, q, w, f, a, b) = (0, 1, 2, 3, 4, 5, 6, 7);
    Drawing {
        types: vec![2, 0, 1, 0, 2, 2, 1, 1],
        triangles: vec![[u, p, a], [f, a, p], [f, p, e], [f, e, q], [f, q, b], [w, q, b]],
        u_to_e: vec![u, p, e],
        w_to_e: vec![w, q, e],
        u_to_f: vec![u, a, f],
        w_to_f: vec![w, b, f],
    }
    .close("truncation")
}

pub fn leapfrog() -> LopspOperation {
    let (u, e, w, f, t, a, b) = (0, 1, 2, 3, 4, 5, 6);
    Drawing {
        types: vec![2, 1, 2, 2, 0, 1, 1],
        triangles: vec![[u, t, e], [u, t, a], [f, t, a], [f, t, b], [w, t, e], [w, t, b]],
        u_to_e: vec![u, e],
        w_to_e: vec![w, e],
        u_to_f: vec![u, a, f],
        w_to_f: vec![w, b, f],
    }
    .close("leapfrog")
}

/// Edge-breaking of type 2.
pub fn join() -> LopspOperation {
    let (u, e, w, f, a, b) = (0, 1, 2, 3, 4, 5);
    Drawing {
        types: vec![0, 2, 0, 0, 1, 1],
        triangles: vec![[e, u, a], [e, a, f], [e, f, b], [e, b, w]],
        u_to_e: vec![u, e],
        w_to_e: vec![w, e],
        u_to_f: vec![u, a, f],
        w_to_f: vec![w, b, f],
    }
    .close("join")
}

/// Edge-breaking of type 1, the companion of join (kis of the dual).
pub fn needle() -> LopspOperation {
    let (u, c, e, c2, w, f, a, b) = (0, 1, 2, 3, 4, 5, 6, 7);
    Drawing {
        types: vec![0, 2, 1, 2, 0, 0, 1, 1],
        triangles: vec![[c, u, a], [c, a, f], [c, f, e], [c2, e, f], [c2, f, b], [c2, b, w]],
        u_to_e: vec![u, c, e],
        w_to_e: vec![w, c2, e],
        u_to_f: vec![u, a, f],
        w_to_f: vec![w, b, f],
    }
    .close("needle")
}

pub fn chamfer() -> LopspOperation {
    let (u, e, w, f, cu, cw, a, b, m) = (0, 1, 2, 3, 4, 5, 6, 7, 8);
    Drawing {
        types: vec![0, 2, 0, 2, 0, 0, 1, 1, 1],
        triangles: vec![
            [e, u, a],
            [e, a, cu],
            [e, cu, m],
            [e, m, cw],
            [e, cw, b],
            [e, b, w],
            [f, cu, m],
            [f, m, cw],
        ],
        u_to_e: vec![u, e],
        w_to_e: vec![w, e],
        u_to_f: vec![u, a, cu, f],
        w_to_f: vec![w, b, cw, f],
    }
    .close("chamfer")
}

/// Gyro, given directly as the operation: a type-2 centre `c` surrounded by
/// ten triangles, with the outer edges glued in pairs.
pub fn gyro() -> LopspOperation {
    let (v0, v1, v2, x, m, n, c) = (0, 1, 2, 3, 4, 5, 6);
    let types = [0u8, 1, 0, 0, 1, 1, 2];
    let ring = [v2, n, x, m, v0, m, x, v1, x, n];
    // outer edge label of each triangle; paired triangles share it
    let outer = [10, 11, 12, 13, 13, 12, 14, 14, 11, 10];
    let polys: Vec<Polygon> = (0..10).map(|k| vec![(c, k), (ring[k], outer[k]), (ring[(k + 1) % 10], (k + 1) % 10)]).collect();
    let soup = from_soup(&polys).expect("gyro soup is consistent");
    let vtype = soup.soup_vertex.iter().map(|&v| types[v]).collect();
    operation_from_parts(soup.map, vtype, soup.vertex_of[v0], soup.vertex_of[v1], soup.vertex_of[v2])
        .expect("gyro is a lopsp-operation")
        .with_name("gyro")
}

/// A catalog entry with its expected class and counts on the cube.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub op: LopspOperation,
    pub class: ClassTag,
    pub cube_counts: (usize, usize, usize),
}

/// Every named operation.
pub fn catalog() -> Vec<CatalogEntry> {
    use ClassTag::*;
    vec![
        CatalogEntry { op: identity(), class: Identity, cube_counts: (8, 12, 6) },
        CatalogEntry { op: dual(), class: Dual, cube_counts: (6, 12, 8) },
        CatalogEntry { op: join(), class: EdgeBreakingType2, cube_counts: (14, 24, 12) },
        CatalogEntry { op: needle(), class: EdgeBreakingType1, cube_counts: (14, 36, 24) },
        CatalogEntry { op: kis(), class: EdgePreserving, cube_counts: (14, 36, 24) },
        CatalogEntry { op: truncation(), class: EdgePreserving, cube_counts: (24, 36, 14) },
        CatalogEntry { op: ambo(), class: EdgePreserving, cube_counts: (12, 24, 14) },
        CatalogEntry { op: leapfrog(), class: EdgePreserving, cube_counts: (24, 36, 14) },
        CatalogEntry { op: chamfer(), class: EdgePreserving, cube_counts: (32, 48, 18) },
        CatalogEntry { op: gyro(), class: EdgePreserving, cube_counts: (38, 60, 24) },
    ]
}

/// Looks up an operation by name (case-insensitive).
pub fn by_name(name: &str) -> Option<LopspOperation> {
    catalog().into_iter().map(|c| c.op).find(|o| o.name().eq_ignore_ascii_case(name))
}

/// Names of all catalog operations.
pub fn names() -> Vec<String> {
    catalog().into_iter().map(|c| c.op.name().to_string()).collect()
}
