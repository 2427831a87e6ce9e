//! Small named maps used as hosts throughout the library and its tests.

use crate::map::EmbeddedMap;
use crate::soup::from_faces;

fn named(faces: &[Vec<usize>], name: &str) -> EmbeddedMap {
    from_faces(faces).expect("fixture faces are consistent").map.with_name(name)
}

pub fn tetrahedron() -> EmbeddedMap {
    named(&[vec![0, 1, 2], vec![0, 3, 1], vec![1, 3, 2], vec![2, 3, 0]], "tetrahedron")
}

pub fn cube() -> EmbeddedMap {
    named(
        &[
            vec![0, 1, 2, 3],
            vec![4, 7, 6, 5],
            vec![0, 4, 5, 1],
            vec![1, 5, 6, 2],
            vec![2, 6, 7, 3],
            vec![3, 7, 4, 0],
        ],
        "cube",
    )
}

pub fn octahedron() -> EmbeddedMap {
    let mut faces = Vec::new();
    for i in 0..4 {
        let (a, b) = (1 + i, 1 + (i + 1) % 4);
        faces.push(vec![0, a, b]);
        faces.push(vec![5, b, a]);
    }
    named(&faces, "octahedron")
}

/// Outer pentagon `0..5`, middle ring `5..15`, inner pentagon `15..20`.
pub fn dodecahedron() -> EmbeddedMap {
    let mid = |j: usize| 5 + j % 10;
    let mut faces = vec![(0..5).collect::<Vec<_>>(), (15..20).rev().collect()];
    for i in 0..5 {
        faces.push(vec![i, (i + 1) % 5, mid(2 * i + 2), mid(2 * i + 1), mid(2 * i)]);
        faces.push(vec![mid(2 * i + 1), mid(2 * i + 2), mid(2 * i + 3), 15 + (i + 1) % 5, 15 + i]);
    }
    named(&faces, "dodecahedron")
}

/// The `n`-gonal prism: two `n`-gons joined by quadrilaterals.
pub fn prism(n: usize) -> EmbeddedMap {
    assert!(n >= 3);
    let mut faces = vec![(0..n).collect::<Vec<_>>(), (n..2 * n).rev().collect()];
    for i in 0..n {
        let j = (i + 1) % n;
        faces.push(vec![i, n + i, n + j, j]);
    }
    named(&faces, &format!("prism{n}"))
}

/// The wheel with `n` rim vertices; the hub is vertex `n`.
pub fn wheel(n: usize) -> EmbeddedMap {
    assert!(n >= 3);
    let mut faces = vec![(0..n).rev().collect::<Vec<_>>()];
    for i in 0..n {
        faces.push(vec![n, i, (i + 1) % n]);
    }
    named(&faces, &format!("wheel{n}"))
}

/// The cube graph on the torus with two quadrilateral and two octagonal
/// faces. Each octagon passes through all eight vertices.
pub fn torus_q3() -> EmbeddedMap {
    named(
        &[
            vec![0, 1, 3, 2, 6, 7, 5, 4],
            vec![0, 2, 3, 7, 6, 4, 5, 1],
            vec![0, 4, 6, 2],
            vec![1, 5, 7, 3],
        ],
        "torus-Q3",
    )
}

/// Top vertex 0, rings 1..6 and 6..11, bottom vertex 11.
pub fn icosahedron() -> EmbeddedMap {
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut faces = Vec::new();
    for i in 0..5 {
        faces.push(vec![0, u(i), u(i + 1)]);
        faces.push(vec![u(i), l(i), u(i + 1)]);
        faces.push(vec![u(i + 1), l(i), l(i + 1)]);
        faces.push(vec![11, l(i + 1), l(i)]);
    }
    named(&faces, "icosahedron")
}

/// A simple 3-connected torus map whose dual is simple but has a 2-cut: the
/// dual of three copies of K4 sharing an edge `{0, 1}`.
pub fn dual_breaker() -> EmbeddedMap {
    let blocks = crate::map::from_neighbour_rotations(&[
        vec![1, 6, 3, 5, 7, 4, 2],
        vec![5, 4, 6, 0, 2, 3, 7],
        vec![3, 1, 0],
        vec![2, 0, 1],
        vec![1, 5, 0],
        vec![4, 1, 0],
        vec![1, 7, 0],
        vec![1, 6, 0],
    ])
    .expect("valid rotation system");
    blocks.dual().with_name("dual-breaker")
}

/// A star with `n` leaves; the centre is vertex 0.
pub fn star(n: usize) -> EmbeddedMap {
    let nbrs: Vec<Vec<usize>> =
        std::iter::once((1..=n).collect()).chain((1..=n).map(|_| vec![0])).collect();
    crate::map::from_neighbour_rotations(&nbrs).expect("stars are valid maps").with_name(format!("star{n}"))
}

/// Every named fixture with its name.
pub fn all() -> Vec<EmbeddedMap> {
    vec![tetrahedron(), cube(), octahedron(), dodecahedron(), prism(5), wheel(5), torus_q3()]
}
