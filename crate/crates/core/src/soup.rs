//! Assembling maps from polygon soups.
//!
//! A soup is a list of polygons, each a cyclic list of corners `(vertex, label)`
//! where `label` names the side running from this corner to the next one.
//! Sides sharing a label are glued; a label seen once is a boundary side.
//! Polygons are re-oriented as needed and every boundary cycle is closed off by
//! an extra face.

use std::collections::{HashMap, VecDeque};

use crate::error::MapError;
use crate::map::{Dart, EmbeddedMap};

/// One polygon: `(vertex, label of the side to the next corner)`.
pub type Polygon = Vec<(usize, usize)>;

/// A map built from a soup together with the correspondence to soup elements.
#[derive(Debug, Clone)]
pub struct SoupMap {
    pub map: EmbeddedMap,
    /// Map vertex of every soup vertex id (`usize::MAX` for unused ids).
    pub vertex_of: Vec<usize>,
    /// Soup vertex id of every map vertex.
    pub soup_vertex: Vec<usize>,
    /// `side_dart[k][i]`: the dart running along side `i` of polygon `k`
    /// (after any re-orientation, so it always runs from corner `i` onward in
    /// the stored orientation).
    pub side_dart: Vec<Vec<Dart>>,
    /// Whether polygon `k` was reversed to obtain a consistent orientation.
    pub flipped: Vec<bool>,
    /// Label of the edge owning each dart.
    pub dart_label: Vec<usize>,
}

impl SoupMap {
    /// The dart carrying `label` that leaves soup vertex `from`.
    pub fn dart_from(&self, label: usize, from: usize) -> Option<Dart> {
        let v = self.vertex_of[from];
        (0..self.map.dart_count()).find(|&d| self.dart_label[d] == label && self.map.tail(d) == v)
    }
}

struct Side {
    poly: usize,
    idx: usize,
    from: usize,
    to: usize,
    label: usize,
}

/// Builds a map from a polygon soup over vertex ids `0..n`.
pub fn from_soup(polygons: &[Polygon]) -> Result<SoupMap, MapError> {
    if polygons.is_empty() {
        return Err(MapError::EmptyEdgeSet);
    }
    let mut by_label: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (k, p) in polygons.iter().enumerate() {
        if p.is_empty() {
            return Err(MapError::InvalidSoup(format!("polygon {k} is empty")));
        }
        for (i, &(_, l)) in p.iter().enumerate() {
            by_label.entry(l).or_default().push((k, i));
        }
    }
    for (l, occ) in &by_label {
        if occ.len() > 2 {
            return Err(MapError::InvalidSoup(format!("label {l} used {} times", occ.len())));
        }
    }
    let side_ends = |k: usize, i: usize| {
        let p = &polygons[k];
        (p[i].0, p[(i + 1) % p.len()].0)
    };

    // Orient polygons so that glued sides run in opposite directions.
    let mut flip: Vec<Option<bool>> = vec![None; polygons.len()];
    for root in 0..polygons.len() {
        if flip[root].is_some() {
            continue;
        }
        flip[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(k) = queue.pop_front() {
            let fk = flip[k].unwrap();
            for (i, &(_, l)) in polygons[k].iter().enumerate() {
                let occ = &by_label[&l];
                if occ.len() < 2 {
                    continue;
                }
                let (k2, i2) = if occ[0] == (k, i) { occ[1] } else { occ[0] };
                let (a, b) = side_ends(k, i);
                let (c, d) = side_ends(k2, i2);
                if a == b {
                    continue;
                }
                // Same direction in the raw data means the orientations must differ.
                let same = (a, b) == (c, d);
                if !same && (a, b) != (d, c) {
                    return Err(MapError::InvalidSoup(format!("label {l} joins different vertex pairs")));
                }
                let want = if same { !fk } else { fk };
                match flip[k2] {
                    None => {
                        flip[k2] = Some(want);
                        queue.push_back(k2);
                    }
                    Some(f) if f != want => {
                        return Err(MapError::InvalidSoup("soup is not orientable".into()));
                    }
                    _ => {}
                }
            }
        }
    }
    let flipped: Vec<bool> = flip.into_iter().map(Option::unwrap).collect();

    // Oriented polygons.
    let oriented: Vec<Polygon> = polygons
        .iter()
        .zip(&flipped)
        .map(|(p, &f)| {
            if !f {
                p.clone()
            } else {
                // reversed: corner order reversed, side labels shift by one
                let n = p.len();
                (0..n).map(|j| (p[(n - j) % n].0, p[(2 * n - j - 1) % n].1)).collect()
            }
        })
        .collect();

    let mut sides: Vec<Side> = Vec::new();
    let mut first_side = Vec::with_capacity(oriented.len());
    for (k, p) in oriented.iter().enumerate() {
        first_side.push(sides.len());
        for i in 0..p.len() {
            sides.push(Side { poly: k, idx: i, from: p[i].0, to: p[(i + 1) % p.len()].0, label: p[i].1 });
        }
    }
    let inner = sides.len();
    let mut twin = vec![usize::MAX; inner];
    let mut label_sides: HashMap<usize, Vec<usize>> = HashMap::new();
    for (h, s) in sides.iter().enumerate() {
        label_sides.entry(s.label).or_default().push(h);
    }
    let mut next: Vec<usize> = (0..inner)
        .map(|h| {
            let s = &sides[h];
            first_side[s.poly] + (s.idx + 1) % oriented[s.poly].len()
        })
        .collect();
    let mut labels: Vec<usize> = sides.iter().map(|s| s.label).collect();
    // Boundary sides get an outer half-edge running the other way.
    let mut outer_from: HashMap<usize, usize> = HashMap::new();
    let mut outer: Vec<(usize, usize)> = Vec::new();
    let mut label_keys: Vec<&usize> = label_sides.keys().collect();
    label_keys.sort();
    for l in label_keys {
        let hs = &label_sides[l];
        if hs.len() == 2 {
            twin[hs[0]] = hs[1];
            twin[hs[1]] = hs[0];
        } else {
            let h = hs[0];
            let o = inner + outer.len();
            twin[h] = o;
            outer.push((sides[h].to, sides[h].from));
            if outer_from.insert(sides[h].to, o).is_some() {
                return Err(MapError::InvalidSoup(format!("boundary pinched at vertex {}", sides[h].to)));
            }
            labels.push(*l);
        }
    }
    for &(_, to) in &outer {
        twin.push(usize::MAX);
        let o = *outer_from
            .get(&to)
            .ok_or_else(|| MapError::InvalidSoup(format!("open boundary at vertex {to}")))?;
        next.push(o);
    }
    for j in 0..inner {
        if twin[j] >= inner {
            let o = twin[j];
            twin[o] = j;
        }
    }
    let (map, dart_of) = EmbeddedMap::from_half_edges(&twin, &next)?;

    let max_v = oriented.iter().flatten().map(|c| c.0).max().unwrap_or(0);
    let mut vertex_of = vec![usize::MAX; max_v + 1];
    let mut soup_vertex = vec![usize::MAX; map.vertex_count()];
    for (h, s) in sides.iter().enumerate() {
        let v = map.tail(dart_of[h]);
        if vertex_of[s.from] == usize::MAX {
            vertex_of[s.from] = v;
        } else if vertex_of[s.from] != v {
            return Err(MapError::InvalidSoup(format!("vertex {} is not a disk", s.from)));
        }
        if soup_vertex[v] != usize::MAX && soup_vertex[v] != s.from {
            return Err(MapError::InvalidSoup("vertex identification clash".into()));
        }
        soup_vertex[v] = s.from;
    }
    let mut dart_label = vec![0; map.dart_count()];
    for (h, &d) in dart_of.iter().enumerate() {
        dart_label[d] = labels[h];
    }
    let side_dart = oriented
        .iter()
        .enumerate()
        .map(|(k, p)| (0..p.len()).map(|i| dart_of[first_side[k] + i]).collect())
        .collect();
    Ok(SoupMap { map, vertex_of, soup_vertex, side_dart, flipped, dart_label })
}

/// Builds a map from faces given as vertex cycles of a simple graph; the
/// sides are glued by their vertex pairs.
pub fn from_faces(faces: &[Vec<usize>]) -> Result<SoupMap, MapError> {
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let polys: Vec<Polygon> = faces
        .iter()
        .map(|f| {
            (0..f.len())
                .map(|i| {
                    let (a, b) = (f[i], f[(i + 1) % f.len()]);
                    let key = (a.min(b), a.max(b));
                    let n = ids.len();
                    (a, *ids.entry(key).or_insert(n))
                })
                .collect()
        })
        .collect();
    from_soup(&polys)
}

/// Triangles given as vertex triples, glued along shared vertex pairs.
pub fn from_triangles(tris: &[[usize; 3]]) -> Result<SoupMap, MapError> {
    let faces: Vec<Vec<usize>> = tris.iter().map(|t| t.to_vec()).collect();
    from_faces(&faces)
}
