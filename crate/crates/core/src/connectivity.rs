//! Vertex connectivity of the graph underlying a map.
//!
//! `is_k_connected` removes every vertex subset of size `k - 2` and looks for an
//! articulation point in what remains. Cost is `O(|V|^(k-2) * (|V| + |E|))`,
//! which is fine for desk-scale maps (a few thousand vertices at `k = 3`).

use itertools::Itertools;

use crate::map::EmbeddedMap;

/// Simple undirected graph as sorted adjacency lists.
pub type Adjacency = Vec<Vec<usize>>;

/// Component label of every vertex after deleting `removed`; deleted vertices
/// get `usize::MAX`. Returns the labels and the number of components.
pub fn components_without(adj: &Adjacency, removed: &[bool]) -> (Vec<usize>, usize) {
    let n = adj.len();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if removed[s] || comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !removed[w] && comp[w] == usize::MAX {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

/// Articulation points of the graph with `removed` vertices deleted (iterative
/// Hopcroft-Tarjan). Only meaningful on a connected remainder.
pub fn articulation_points(adj: &Adjacency, removed: &[bool]) -> Vec<usize> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;
    for root in 0..n {
        if removed[root] || disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut i)) = stack.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if removed[w] || w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

/// A smallest vertex cut of size less than `k`, if any, in the simple graph `adj`.
/// Complete graphs have no vertex cut.
pub fn small_separator(adj: &Adjacency, k: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut removed = vec![false; n];
    if components_without(adj, &removed).1 > 1 {
        return Some(Vec::new());
    }
    for size in 1..k {
        if size + 1 >= n {
            break;
        }
        for subset in (0..n).combinations(size - 1) {
            for &v in &subset {
                removed[v] = true;
            }
            let cut = articulation_points(adj, &removed).into_iter().next();
            for &v in &subset {
                removed[v] = false;
            }
            if let Some(a) = cut {
                let mut s = subset;
                s.push(a);
                s.sort_unstable();
                return Some(s);
            }
        }
    }
    None
}

/// True iff the graph has at least `k + 1` vertices and no vertex cut of fewer than `k` vertices.
pub fn is_k_connected_graph(adj: &Adjacency, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if adj.len() < k + 1 {
        return false;
    }
    small_separator(adj, k).is_none()
}

impl EmbeddedMap {
    /// See [`is_k_connected_graph`]; loops and parallel edges are ignored.
    pub fn is_k_connected(&self, k: usize) -> bool {
        is_k_connected_graph(&self.simple_adjacency(), k)
    }

    /// A vertex cut of fewer than `k` vertices, smallest first.
    pub fn separator(&self, k: usize) -> Option<Vec<usize>> {
        small_separator(&self.simple_adjacency(), k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::map::from_neighbour_rotations;

    fn brute_force(adj: &Adjacency, k: usize) -> bool {
        let n = adj.len();
        if n < k + 1 {
            return false;
        }
        for size in 0..k {
            for subset in (0..n).combinations(size) {
                let mut removed = vec![false; n];
                for v in subset {
                    removed[v] = true;
                }
                if components_without(adj, &removed).1 > 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Max number of internally disjoint s-t paths via unit-capacity flow on the split graph.
    fn menger(adj: &Adjacency, s: usize, t: usize) -> usize {
        let n = adj.len();
        // node v_in = 2v, v_out = 2v + 1
        let size = 2 * n;
        let mut cap = vec![vec![0i32; size]; size];
        for v in 0..n {
            cap[2 * v][2 * v + 1] = if v == s || v == t { n as i32 } else { 1 };
            for &w in &adj[v] {
                cap[2 * v + 1][2 * w] = n as i32;
            }
        }
        let (src, sink) = (2 * s + 1, 2 * t);
        let mut flow = 0;
        loop {
            let mut prev = vec![usize::MAX; size];
            prev[src] = src;
            let mut queue = std::collections::VecDeque::from([src]);
            while let Some(x) = queue.pop_front() {
                for y in 0..size {
                    if cap[x][y] > 0 && prev[y] == usize::MAX {
                        prev[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            if prev[sink] == usize::MAX {
                return flow;
            }
            let mut y = sink;
            while y != src {
                let x = prev[y];
                cap[x][y] -= 1;
                cap[y][x] += 1;
                y = x;
            }
            flow += 1;
        }
    }

    fn menger_k_connected(adj: &Adjacency, k: usize) -> bool {
        let n = adj.len();
        if n < k + 1 {
            return false;
        }
        for s in 0..n {
            for t in s + 1..n {
                if adj[s].contains(&t) {
                    // adjacent pair: remove the edge and ask for k - 1 further paths
                    let mut a = adj.clone();
                    a[s].retain(|&x| x != t);
                    a[t].retain(|&x| x != s);
                    if menger(&a, s, t) + 1 < k {
                        return false;
                    }
                } else if menger(adj, s, t) < k {
                    return false;
                }
            }
        }
        true
    }

    fn graphs_up_to(n: usize) -> Vec<Adjacency> {
        let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        (0u64..1 << pairs.len())
            .map(|mask| {
                let mut adj = vec![Vec::new(); n];
                for (i, &(a, b)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        adj[a].push(b);
                        adj[b].push(a);
                    }
                }
                adj
            })
            .collect()
    }

    #[test]
    fn agrees_with_brute_force_and_menger() {
        for n in 1..=6 {
            for adj in graphs_up_to(n) {
                for k in 1..=4 {
                    let fast = is_k_connected_graph(&adj, k);
                    assert_eq!(fast, brute_force(&adj, k), "{adj:?} k={k}");
                    assert_eq!(fast, menger_k_connected(&adj, k), "{adj:?} k={k}");
                }
            }
        }
    }

    #[test]
    fn sampled_eight_vertex_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..400 {
            let n = rng.gen_range(7..=8);
            let mut adj = vec![Vec::new(); n];
            for (a, b) in (0..n).tuple_combinations() {
                if rng.gen_bool(0.55) {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
            for k in 2..=4 {
                let fast = is_k_connected_graph(&adj, k);
                assert_eq!(fast, brute_force(&adj, k));
                assert_eq!(fast, menger_k_connected(&adj, k));
            }
        }
    }

    #[test]
    fn named_maps() {
        assert!(fixtures::cube().is_k_connected(3));
        assert!(!fixtures::cube().is_k_connected(4));
        assert!(fixtures::torus_q3().is_k_connected(3));
        assert!(fixtures::octahedron().is_k_connected(4));
        let c4 = from_neighbour_rotations(&[vec![1, 3], vec![0, 2], vec![1, 3], vec![2, 0]]).unwrap();
        assert!(!c4.is_k_connected(3));
        assert_eq!(c4.separator(3).map(|s| s.len()), Some(2));
        assert!(fixtures::tetrahedron().is_k_connected(3));
        assert!(!fixtures::tetrahedron().is_k_connected(4));
    }

    #[test]
    fn separator_is_smallest() {
        let star = fixtures::star(4);
        assert_eq!(star.separator(3), Some(vec![0]));
        assert_eq!(fixtures::cube().separator(3), None);
        let cut = fixtures::cube().separator(4).unwrap();
        assert_eq!(cut.len(), 3);
    }
}
