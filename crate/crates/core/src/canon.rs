//! Canonical forms of maps up to orientation-preserving isomorphism.
//!
//! From a starting dart, darts are numbered in breadth-first order following
//! `sigma` and `inv`; the code lists, for each dart in that order, the numbers
//! of its two images and the label of its vertex. Two maps are isomorphic iff
//! their minimal codes agree. Mirror images generally get different codes.

use std::cmp::Ordering;

use crate::map::{inv, Dart, EmbeddedMap};

fn code_from(m: &EmbeddedMap, start: Dart, label: &[u64], best: Option<&[u64]>) -> Option<Vec<u64>> {
    let n = m.dart_count();
    let mut number = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    number[start] = 0;
    order.push(start);
    let mut code = Vec::with_capacity(3 * n);
    let mut tight = best.is_some();
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for y in [m.sigma(x), inv(x)] {
            if number[y] == usize::MAX {
                number[y] = order.len();
                order.push(y);
            }
            code.push(number[y] as u64);
        }
        code.push(label[m.tail(x)]);
        if tight {
            let b = best.unwrap();
            let k = code.len() - 3;
            match code[k..].cmp(&b[k..k + 3]) {
                Ordering::Greater => return None,
                Ordering::Less => tight = false,
                Ordering::Equal => {}
            }
        }
    }
    Some(code)
}

/// Canonical code of `m` with a label on each vertex.
pub fn canonical_code_labeled(m: &EmbeddedMap, label: &[u64]) -> Vec<u64> {
    let faces = m.face_index();
    let flen: Vec<usize> = {
        let mut len = vec![0; m.face_count()];
        for &f in &faces {
            len[f] += 1;
        }
        len
    };
    let degrees: Vec<usize> = (0..m.vertex_count()).map(|v| m.degree(v)).collect();
    let key = |d: Dart| (label[m.tail(d)], degrees[m.tail(d)], flen[faces[d]]);
    let min_key = (0..m.dart_count()).map(key).min().unwrap();
    let mut best: Option<Vec<u64>> = None;
    for d in (0..m.dart_count()).filter(|&d| key(d) == min_key) {
        if let Some(c) = code_from(m, d, label, best.as_deref()) {
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
    }
    let mut out = vec![m.vertex_count() as u64, m.edge_count() as u64];
    out.extend(best.unwrap());
    out
}

fn to_bytes(code: &[u64]) -> Vec<u8> {
    code.iter().flat_map(|x| (*x as u32).to_le_bytes()).collect()
}

/// Canonical byte string of a map.
pub fn canonical_form(m: &EmbeddedMap) -> Vec<u8> {
    to_bytes(&canonical_code_labeled(m, &vec![0; m.vertex_count()]))
}

/// Canonical byte string of a map whose vertices carry labels.
pub fn canonical_form_labeled(m: &EmbeddedMap, label: &[u64]) -> Vec<u8> {
    to_bytes(&canonical_code_labeled(m, label))
}

/// Orientation-preserving isomorphism test.
pub fn is_isomorphic(a: &EmbeddedMap, b: &EmbeddedMap) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && a.face_count() == b.face_count()
        && canonical_form(a) == canonical_form(b)
}

/// Isomorphic either directly or after mirroring one side.
pub fn is_isomorphic_unoriented(a: &EmbeddedMap, b: &EmbeddedMap) -> bool {
    is_isomorphic(a, b) || is_isomorphic(a, &b.mirror())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::map::build_map;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    /// Relabels edges, flips dart pairs and renumbers vertices at random.
    pub(crate) fn scramble(m: &EmbeddedMap, seed: u64) -> EmbeddedMap {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut edges: Vec<usize> = (0..m.edge_count()).collect();
        edges.shuffle(&mut rng);
        let flips: Vec<bool> = (0..m.edge_count()).map(|_| rand::Rng::gen_bool(&mut rng, 0.5)).collect();
        let new_dart = |d: Dart| 2 * edges[d / 2] + ((d & 1) ^ flips[d / 2] as usize);
        let mut verts: Vec<usize> = (0..m.vertex_count()).collect();
        verts.shuffle(&mut rng);
        let mut rot = vec![Vec::new(); m.vertex_count()];
        for v in 0..m.vertex_count() {
            rot[verts[v]] = m.rotation(v).into_iter().map(new_dart).collect();
        }
        build_map(m.vertex_count(), &rot).unwrap()
    }

    #[test]
    fn relabelling_invariance() {
        for m in fixtures::all() {
            for seed in 0..5 {
                assert_eq!(canonical_form(&m), canonical_form(&scramble(&m, seed)), "{:?}", m.name());
            }
        }
    }

    #[test]
    fn distinguishes_maps() {
        assert!(!is_isomorphic(&fixtures::cube(), &fixtures::octahedron()));
        assert!(!is_isomorphic(&fixtures::prism(4), &fixtures::wheel(4)));
        assert!(is_isomorphic(&fixtures::prism(4), &fixtures::cube()));
        assert!(is_isomorphic(&fixtures::tetrahedron().dual(), &fixtures::tetrahedron()));
        assert!(is_isomorphic(&fixtures::cube().dual().dual(), &fixtures::cube()));
    }

    #[test]
    fn mirror_images_of_chiral_map_differ() {
        let t = fixtures::torus_q3();
        assert!(is_isomorphic(&t.mirror().mirror(), &t));
        // A plane tree with three branches of different lengths.
        let chiral = crate::map::from_neighbour_rotations(&[
            vec![1, 2, 4],
            vec![0],
            vec![0, 3],
            vec![2],
            vec![0, 5],
            vec![4, 6],
            vec![5],
        ])
        .unwrap();
        let mirrored = chiral.mirror();
        assert!(is_isomorphic_unoriented(&chiral, &mirrored));
        assert!(!is_isomorphic(&chiral, &mirrored));
    }

    #[test]
    fn labels_matter() {
        let k4 = fixtures::tetrahedron();
        let a = canonical_form_labeled(&k4, &[1, 0, 0, 0]);
        let b = canonical_form_labeled(&k4, &[0, 0, 1, 0]);
        let c = canonical_form_labeled(&k4, &[1, 1, 0, 0]);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
