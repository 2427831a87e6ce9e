//! Theorem-level checks: breaking predicates, host corpora, the torus
//! counterexample and the reproduction of the summary table.

use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::apply::ApplicationResult;
use crate::bary::barycentric_subdivision;
use crate::canon::canonical_form;
use crate::catalog::CatalogEntry;
use crate::classify::{classify, ClassTag};
use crate::connectivity::components_without;
use crate::fixtures;
use crate::lopsp::LopspOperation;
use crate::map::{from_neighbour_rotations, EmbeddedMap};

// ---------------------------------------------------------------- breaking

/// What a vertex set `X` of `O(G)` does to the structure of `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BreakReport {
    pub cut: Vec<usize>,
    pub broken_vertices: Vec<usize>,
    pub broken_edges: Vec<usize>,
    pub components: usize,
    /// Components of `O(G) - X` without any vertex of a vertex-shadow.
    pub components_without_shadow: usize,
}

fn components(r: &ApplicationResult, x: &[usize]) -> Vec<usize> {
    let mut removed = vec![false; r.result.vertex_count()];
    for &v in x {
        removed[v] = true;
    }
    components_without(&r.result.simple_adjacency(), &removed).0
}

fn vertex_broken(r: &ApplicationResult, comp: &[usize], v: usize) -> bool {
    let rest: Vec<usize> = r.vertex_shadows[v].iter().map(|&s| comp[s]).filter(|&c| c != usize::MAX).collect();
    rest.is_empty() || rest.iter().any(|&c| c != rest[0])
}

fn edge_broken(r: &ApplicationResult, comp: &[usize], e: usize) -> bool {
    let (v, w) = r.host.endpoints(e);
    let side = |u: usize| -> HashSet<usize> {
        r.vertex_shadows[u].iter().map(|&s| comp[s]).filter(|&c| c != usize::MAX).collect()
    };
    let (a, b) = (side(v), side(w));
    a.is_empty() || b.is_empty() || a.is_disjoint(&b)
}

/// `X` breaks host vertex `v`.
pub fn breaks_vertex(r: &ApplicationResult, x: &[usize], v: usize) -> bool {
    vertex_broken(r, &components(r, x), v)
}

/// `X` breaks host edge `e`.
pub fn breaks_edge(r: &ApplicationResult, x: &[usize], e: usize) -> bool {
    edge_broken(r, &components(r, x), e)
}

pub fn break_report(r: &ApplicationResult, x: &[usize]) -> BreakReport {
    let comp = components(r, x);
    let count = comp.iter().filter(|&&c| c != usize::MAX).max().map_or(0, |&c| c + 1);
    let mut covered = vec![false; count];
    for s in r.vertex_shadows.iter().flatten() {
        if comp[*s] != usize::MAX {
            covered[comp[*s]] = true;
        }
    }
    BreakReport {
        cut: x.to_vec(),
        broken_vertices: (0..r.host.vertex_count()).filter(|&v| vertex_broken(r, &comp, v)).collect(),
        broken_edges: (0..r.host.edge_count()).filter(|&e| edge_broken(r, &comp, e)).collect(),
        components: count,
        components_without_shadow: covered.iter().filter(|&&c| !c).count(),
    }
}

// ---------------------------------------------------------------- corpus

/// Filter for [`corpus_generate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub max_vertices: usize,
    pub genera: Vec<usize>,
    pub require_3conn: bool,
    pub require_simple: bool,
    pub seed: u64,
    /// Distinct embeddings kept per seed graph and genus.
    pub per_genus: usize,
    /// Rotation systems tried per seed graph when there are too many to list.
    pub samples: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            max_vertices: 12,
            genera: vec![0, 1, 2],
            require_3conn: true,
            require_simple: true,
            seed: 1,
            per_genus: 3,
            samples: 2000,
        }
    }
}

fn complete(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|v| (0..n).filter(|&w| w != v).collect()).collect()
}

fn adjacency_of(m: &EmbeddedMap) -> Vec<Vec<usize>> {
    m.simple_adjacency()
}

/// Simple 3-connected graphs used to seed the corpus.
pub fn seed_graphs() -> Vec<(String, Vec<Vec<usize>>)> {
    let mut out = vec![
        ("K4".to_string(), complete(4)),
        ("K5".to_string(), complete(5)),
        ("K6".to_string(), complete(6)),
        ("K3,3".to_string(), (0..6).map(|v| if v < 3 { vec![3, 4, 5] } else { vec![0, 1, 2] }).collect()),
        ("octahedron".to_string(), adjacency_of(&fixtures::octahedron())),
        ("Q3".to_string(), adjacency_of(&fixtures::cube())),
        ("icosahedron".to_string(), adjacency_of(&fixtures::icosahedron())),
    ];
    let petersen: Vec<Vec<usize>> = (0..10)
        .map(|v| if v < 5 { vec![(v + 1) % 5, (v + 4) % 5, v + 5] } else { vec![v - 5, 5 + (v - 3) % 5, 5 + (v - 2) % 5] })
        .collect();
    out.push(("petersen".to_string(), petersen));
    for n in 3..=6 {
        out.push((format!("prism{n}"), adjacency_of(&fixtures::prism(n))));
    }
    for n in 4..=11 {
        out.push((format!("wheel{n}"), adjacency_of(&fixtures::wheel(n))));
    }
    out
}

/// Plane embeddings that are always offered to the corpus, plus the torus counterexample.
fn named_hosts() -> Vec<EmbeddedMap> {
    let mut out = vec![fixtures::tetrahedron(), fixtures::cube(), fixtures::octahedron(), fixtures::icosahedron()];
    out.extend([3, 5, 6].map(fixtures::prism));
    out.extend((4..=11).map(fixtures::wheel));
    out.push(fixtures::dodecahedron());
    out.push(fixtures::torus_q3());
    out
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Canonical form up to mirror image.
fn unoriented_key(m: &EmbeddedMap) -> Vec<u8> {
    canonical_form(m).min(canonical_form(&m.mirror()))
}

fn admits(spec: &CorpusSpec, m: &EmbeddedMap) -> bool {
    m.vertex_count() <= spec.max_vertices
        && m.genus().is_ok_and(|g| spec.genera.contains(&g))
        && (!spec.require_simple || m.is_simple())
        && (!spec.require_3conn || m.is_k_connected(3))
}

/// Rotation systems of the seed graphs, filtered by `spec` and deduplicated
/// up to orientation-preserving or reversing isomorphism. Deterministic for a
/// fixed seed.
pub fn corpus_generate(spec: &CorpusSpec) -> Vec<EmbeddedMap> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    if spec.genera.is_empty() || spec.max_vertices == 0 {
        return out;
    }
    for m in named_hosts() {
        if admits(spec, &m) && seen.insert(unoriented_key(&m)) {
            out.push(m);
        }
    }
    for (gi, (name, adj)) in seed_graphs().into_iter().enumerate() {
        let n = adj.len();
        if n > spec.max_vertices {
            continue;
        }
        let total = adj.iter().map(|a| factorial(a.len() - 1)).try_fold(1usize, |acc, f| acc.checked_mul(f));
        let systems: Vec<Vec<Vec<usize>>> = match total {
            Some(t) if t <= spec.samples => {
                // every rotation: fix the first neighbour, permute the rest
                let per_vertex: Vec<Vec<Vec<usize>>> = adj
                    .iter()
                    .map(|a| a[1..].iter().copied().permutations(a.len() - 1).map(|p| [vec![a[0]], p].concat()).collect())
                    .collect();
                per_vertex.into_iter().multi_cartesian_product().collect()
            }
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(spec.seed.wrapping_mul(1000).wrapping_add(gi as u64));
                (0..spec.samples)
                    .map(|_| {
                        adj.iter()
                            .map(|a| {
                                let mut r = a.clone();
                                r.shuffle(&mut rng);
                                r
                            })
                            .collect()
                    })
                    .collect()
            }
        };
        let mut kept: BTreeMap<usize, usize> = BTreeMap::new();
        for rot in systems {
            let Ok(m) = from_neighbour_rotations(&rot) else { continue };
            let Ok(g) = m.genus() else { continue };
            if !spec.genera.contains(&g) || kept.get(&g).copied().unwrap_or(0) >= spec.per_genus {
                continue;
            }
            if !admits(spec, &m) || !seen.insert(unoriented_key(&m)) {
                continue;
            }
            let k = kept.entry(g).or_insert(0);
            out.push(m.with_name(format!("{name}-g{g}-{k}")));
            *k += 1;
        }
    }
    out
}

// ---------------------------------------------------------------- counterexamples

/// The cube graph on the torus with face vector (4, 4, 8, 8).
pub fn counterexample_torus() -> EmbeddedMap {
    fixtures::torus_q3()
}

/// Every rotation system of Q3 on the torus with two quadrilaterals and two
/// octagons that each pass through all eight vertices.
pub fn search_q3_counterexamples() -> Vec<EmbeddedMap> {
    let adj = adjacency_of(&fixtures::cube());
    let per_vertex: Vec<Vec<Vec<usize>>> =
        adj.iter().map(|a| vec![vec![a[0], a[1], a[2]], vec![a[0], a[2], a[1]]]).collect();
    per_vertex
        .into_iter()
        .multi_cartesian_product()
        .filter_map(|rot| from_neighbour_rotations(&rot).ok())
        .filter(|m| {
            let faces = m.faces();
            let mut lens: Vec<usize> = faces.iter().map(|f| f.len()).collect();
            lens.sort_unstable();
            lens == [4, 4, 8, 8]
                && faces.iter().filter(|f| f.len() == 8).all(|f| f.vertices(m).into_iter().collect::<HashSet<_>>().len() == 8)
        })
        .collect()
}

/// Random torus embeddings of three K4 blocks sharing an edge, kept when
/// their dual is a simple 3-connected map. The duals of the results are the
/// candidates for a host whose simple dual is not 3-connected.
pub fn search_dual_breakers(samples: usize, seed: u64) -> Vec<EmbeddedMap> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 8];
    for b in 0..3 {
        let vs = [0, 1, 2 + 2 * b, 3 + 2 * b];
        for (i, &x) in vs.iter().enumerate() {
            for &y in &vs[i + 1..] {
                if !adj[x].contains(&y) {
                    adj[x].push(y);
                    adj[y].push(x);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..samples {
        let rot: Vec<Vec<usize>> = adj
            .iter()
            .map(|a| {
                let mut r = a.clone();
                r.shuffle(&mut rng);
                r
            })
            .collect();
        let Ok(h) = from_neighbour_rotations(&rot) else { continue };
        let g = h.dual();
        if h.is_simple() && g.is_simple() && g.is_k_connected(3) {
            out.push(g);
        }
    }
    out
}

/// The hosts that witness the `No` cells of the table.
pub fn table_witnesses() -> Vec<EmbeddedMap> {
    vec![counterexample_torus(), fixtures::dual_breaker()]
}

// ---------------------------------------------------------------- theorem checks

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One line of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub host: String,
    pub op: String,
    pub verdict: Verdict,
    /// A vertex cut of the result, or other evidence, when relevant.
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn failures(&self) -> Vec<&CheckRecord> {
        self.records.iter().filter(|r| r.verdict == Verdict::Fail).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.failures().is_empty()
    }

    fn push(&mut self, check: &str, host: &EmbeddedMap, op: &LopspOperation, pass: bool, witness: Option<Vec<usize>>) {
        self.records.push(CheckRecord {
            check: check.to_string(),
            host: host.name().unwrap_or("unnamed").to_string(),
            op: op.name().to_string(),
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            witness,
        });
    }

    fn sorted(mut self) -> Self {
        self.records.sort_by(|a, b| (&a.check, &a.host, &a.op).cmp(&(&b.check, &b.host, &b.op)));
        self
    }
}

/// Properties of one application, computed once.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub vertices: usize,
    pub three_connected: bool,
    pub simple: bool,
    pub separator: Option<Vec<usize>>,
}

pub fn outcome(o: &LopspOperation, g: &EmbeddedMap) -> Outcome {
    let r = crate::apply::apply_lopsp(o, g, None).result;
    let separator = if r.vertex_count() >= 4 { r.separator(3) } else { None };
    Outcome {
        vertices: r.vertex_count(),
        three_connected: r.vertex_count() >= 4 && separator.is_none(),
        simple: r.is_simple(),
        separator,
    }
}

fn outcomes(ops: &[&LopspOperation], hosts: &[EmbeddedMap]) -> Vec<Vec<Outcome>> {
    ops.par_iter().map(|o| hosts.par_iter().map(|g| outcome(o, g)).collect()).collect()
}

fn is_edge_preserving(o: &LopspOperation) -> bool {
    matches!(classify(o).tag, ClassTag::Identity | ClassTag::EdgePreserving)
}

/// Edge-preserving operations keep every corpus host 3-connected, and every
/// edge-breaking operation loses 3-connectivity on the torus counterexample.
pub fn check_theorem_main2(corpus: &[EmbeddedMap], ops: &[CatalogEntry]) -> Report {
    let mut report = Report::default();
    let ep: Vec<&LopspOperation> = ops.iter().map(|c| &c.op).filter(|o| is_edge_preserving(o)).collect();
    let table = outcomes(&ep, corpus);
    for (o, row) in ep.iter().zip(&table) {
        for (g, out) in corpus.iter().zip(row) {
            report.push("main2-preserve", g, o, out.three_connected, out.separator.clone());
        }
    }
    let torus = counterexample_torus();
    let eb: Vec<&LopspOperation> = ops.iter().map(|c| &c.op).filter(|o| !is_edge_preserving(o)).collect();
    for o in eb {
        let out = outcome(o, &torus);
        report.push("main2-break", &torus, o, !out.three_connected, out.separator);
    }
    report.sorted()
}

/// On hosts with a simple dual every operation other than Dual keeps 3-connectivity.
pub fn check_theorem_main1_simple_dual(corpus: &[EmbeddedMap], ops: &[CatalogEntry]) -> Report {
    let mut report = Report::default();
    let hosts: Vec<EmbeddedMap> = corpus.iter().filter(|g| g.dual().is_simple()).cloned().collect();
    let chosen: Vec<&LopspOperation> =
        ops.iter().map(|c| &c.op).filter(|o| classify(o).tag != ClassTag::Dual).collect();
    let table = outcomes(&chosen, &hosts);
    for (o, row) in chosen.iter().zip(&table) {
        for (g, out) in hosts.iter().zip(row) {
            report.push("main1-simple-dual", g, o, out.three_connected, out.separator.clone());
        }
    }
    report.sorted()
}

/// Type-1 operations other than Dual keep 3-connectivity whenever the result
/// is simple; other operations give simple results on hosts whose barycentric
/// subdivision is simple; join on the torus gives a simple result that is not
/// 3-connected.
pub fn check_theorem_simple(corpus: &[EmbeddedMap], ops: &[CatalogEntry]) -> Report {
    let mut report = Report::default();
    let all: Vec<&LopspOperation> = ops.iter().map(|c| &c.op).collect();
    let table = outcomes(&all, corpus);
    let b_simple: Vec<bool> = corpus.iter().map(|g| barycentric_subdivision(g).base.is_simple()).collect();
    for (o, row) in all.iter().zip(&table) {
        let tag = classify(o).tag;
        for ((g, out), &bs) in corpus.iter().zip(row).zip(&b_simple) {
            if tag == ClassTag::EdgeBreakingType1 && out.simple {
                report.push("simple-type1", g, o, out.three_connected, out.separator.clone());
            }
            if !matches!(tag, ClassTag::EdgeBreakingType1 | ClassTag::Dual) && bs {
                report.push("simple-result", g, o, out.simple, None);
            }
        }
    }
    let torus = counterexample_torus();
    for o in ops.iter().map(|c| &c.op).filter(|o| classify(o).tag == ClassTag::EdgeBreakingType2) {
        let out = outcome(o, &torus);
        report.push("simple-type2-witness", &torus, o, out.simple && !out.three_connected, out.separator);
    }
    report.sorted()
}

/// `|V_O(G)| >= |V_G|` for c3 operations other than Dual on hosts with at
/// least four vertices and at least as many edges as vertices.
pub fn check_size_lemma(corpus: &[EmbeddedMap], ops: &[CatalogEntry]) -> Report {
    let mut report = Report::default();
    for c in ops.iter().filter(|c| classify(&c.op).tag != ClassTag::Dual) {
        for g in corpus {
            if g.is_tree() || g.vertex_count() < 4 || g.edge_count() < g.vertex_count() {
                continue;
            }
            let r = crate::apply::apply_lopsp(&c.op, g, None);
            report.push("size", g, &c.op, r.result.vertex_count() >= g.vertex_count(), None);
        }
    }
    report
}

// ---------------------------------------------------------------- table

pub const TABLE_ROWS: [&str; 5] = ["G plane", "G polyhedral", "G* simple", "O(G) simple", "General"];
pub const TABLE_COLUMNS: [&str; 4] = ["Dual", "Type 2", "Type 1'", "Edge-preserving"];

/// The expected answers, row by row.
pub const TABLE_EXPECTED: [[bool; 4]; 5] = [
    [true, true, true, true],
    [true, true, true, true],
    [false, true, true, true],
    [false, false, true, true],
    [false, false, false, true],
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub host: String,
    pub op: String,
    pub cut: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub row: String,
    pub column: String,
    pub expected: bool,
    /// `Some(true)`: nothing failed. `Some(false)`: every operation of the
    /// column failed somewhere. `None`: no evidence or a mixed column.
    pub observed: Option<bool>,
    /// (host, op) pairs checked.
    pub checked: usize,
    /// Pairs whose result is not 3-connected.
    pub failures: usize,
    /// For a `No`: one failing host for every operation in the column.
    pub witnesses: Vec<Witness>,
}

impl Cell {
    pub fn matches(&self) -> bool {
        self.observed == Some(self.expected)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1 {
    pub cells: Vec<Cell>,
}

impl Table1 {
    pub fn all_match(&self) -> bool {
        self.cells.iter().all(Cell::matches)
    }

    pub fn render(&self) -> String {
        let mut s = format!("{:<14}", "");
        for c in TABLE_COLUMNS {
            s += &format!("{c:<18}");
        }
        s.push('\n');
        for (i, row) in TABLE_ROWS.iter().enumerate() {
            s += &format!("{row:<14}");
            for cell in &self.cells[4 * i..4 * i + 4] {
                let yes = match cell.observed {
                    Some(true) => "Yes",
                    Some(false) => "No",
                    None => "?",
                };
                let mark = if cell.matches() { "" } else { "!" };
                s += &format!("{:<18}", format!("{yes}{mark} ({}/{})", cell.failures, cell.checked));
            }
            s.push('\n');
        }
        s
    }
}

/// The column of an operation in the table.
pub fn table_column(o: &LopspOperation) -> usize {
    match classify(o).tag {
        ClassTag::Dual => 0,
        ClassTag::EdgeBreakingType2 => 1,
        ClassTag::EdgeBreakingType1 => 2,
        ClassTag::Identity | ClassTag::EdgePreserving => 3,
    }
}

/// Checks every operation against every host under each row condition. A
/// cell is `Yes` when no checked result loses 3-connectivity. The hosts are
/// the corpus together with `witnesses`.
pub fn table1_report(ops: &[CatalogEntry], corpus: &[EmbeddedMap], witnesses: &[EmbeddedMap]) -> Table1 {
    let hosts: Vec<EmbeddedMap> = corpus.iter().chain(witnesses).cloned().collect();
    let all: Vec<&LopspOperation> = ops.iter().map(|c| &c.op).collect();
    let table = outcomes(&all, &hosts);
    let plane: Vec<bool> = hosts.iter().map(|g| g.genus() == Ok(0)).collect();
    let poly: Vec<bool> = hosts.iter().map(|g| g.is_polyhedral()).collect();
    let dual_simple: Vec<bool> = hosts.iter().map(|g| g.dual().is_simple()).collect();
    let columns: Vec<usize> = all.iter().map(|o| table_column(o)).collect();
    let mut cells = Vec::new();
    for (ri, row) in TABLE_ROWS.iter().enumerate() {
        for (ci, column) in TABLE_COLUMNS.iter().enumerate() {
            let mut checked = 0;
            let mut failures = 0;
            let mut found = Vec::new();
            let mut ops_in_column = 0;
            for (oi, o) in all.iter().enumerate().filter(|(oi, _)| columns[*oi] == ci) {
                ops_in_column += 1;
                let mut first: Option<Witness> = None;
                for (hi, g) in hosts.iter().enumerate() {
                    let out = &table[oi][hi];
                    let eligible = match ri {
                        0 => plane[hi],
                        1 => poly[hi],
                        2 => dual_simple[hi],
                        3 => out.simple,
                        _ => true,
                    };
                    if !eligible {
                        continue;
                    }
                    checked += 1;
                    if !out.three_connected {
                        failures += 1;
                        if first.is_none() {
                            first = Some(Witness {
                                host: g.name().unwrap_or("unnamed").to_string(),
                                op: o.name().to_string(),
                                cut: out.separator.clone().unwrap_or_default(),
                            });
                        }
                    }
                }
                found.extend(first);
            }
            let observed = if checked == 0 {
                None
            } else if failures == 0 {
                Some(true)
            } else if found.len() == ops_in_column {
                Some(false)
            } else {
                None
            };
            cells.push(Cell {
                row: row.to_string(),
                column: column.to_string(),
                expected: TABLE_EXPECTED[ri][ci],
                observed,
                checked,
                failures,
                witnesses: found,
            });
        }
    }
    Table1 { cells }
}
