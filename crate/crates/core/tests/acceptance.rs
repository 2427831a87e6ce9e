//! One line per acceptance criterion; exits non-zero if any fails.

use std::time::{Duration, Instant};

use lopsp::apply::apply_lopsp;
use lopsp::canon::{canonical_form, is_isomorphic};
use lopsp::catalog::{self, CatalogEntry};
use lopsp::classify::{classify, companion, find_edge_path, ClassTag};
use lopsp::lopsp::{enumerate_cut_paths, minimal_cut_paths, LopspOperation};
use lopsp::verify::{self, outcome, CorpusSpec, Report};
use lopsp::{fixtures, EmbeddedMap};

struct Ctx {
    ops: Vec<CatalogEntry>,
    /// Simple 3-connected hosts, at most 12 vertices, genus 0 to 2.
    corpus: Vec<EmbeddedMap>,
}

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report_ok(r: &Report, what: &str) -> Result<usize, String> {
    match r.failures().first() {
        None => Ok(r.records.len()),
        Some(f) => Err(format!("{what}: {} {} on {} (witness {:?})", f.check, f.op, f.host, f.witness)),
    }
}

fn op(ctx: &Ctx, name: &str) -> LopspOperation {
    ctx.ops.iter().find(|c| c.op.name() == name).expect("catalog op").op.clone()
}

fn structural(ctx: &Ctx) -> Verdict {
    let dual = op(ctx, "dual");
    let id = op(ctx, "identity");
    let oct = apply_lopsp(&dual, &fixtures::cube(), None).result;
    ensure(is_isomorphic(&oct, &fixtures::octahedron()), || "Dual(cube) is not the octahedron".into())?;
    let hosts: Vec<&EmbeddedMap> = ctx.corpus.iter().take(50).collect();
    ensure(hosts.len() == 50, || format!("corpus has only {} maps", hosts.len()))?;
    for g in &hosts {
        let once = apply_lopsp(&dual, g, None).result;
        let twice = apply_lopsp(&dual, &once, None).result;
        ensure(is_isomorphic(&twice, g), || format!("Dual(Dual({})) differs", g.name().unwrap_or("?")))?;
        let same = apply_lopsp(&id, g, None).result;
        ensure(is_isomorphic(&same, g), || format!("identity changes {}", g.name().unwrap_or("?")))?;
    }
    Ok("Dual(cube) = octahedron; Dual∘Dual and identity fix 50 corpus maps".into())
}

fn genus(ctx: &Ctx) -> Verdict {
    let mut pairs = 0;
    for g in &ctx.corpus {
        let gg = g.genus().map_err(|e| e.to_string())?;
        for c in &ctx.ops {
            let r = apply_lopsp(&c.op, g, None);
            let (a, b) = (r.result.genus(), r.b_result.base.genus());
            ensure(a == Ok(gg) && b == Ok(gg), || {
                format!("{} on {}: genus {a:?}/{b:?}, host {gg}", c.op.name(), g.name().unwrap_or("?"))
            })?;
            pairs += 1;
        }
    }
    Ok(format!("genus kept by O(G) and B_O(G) on {pairs} pairs"))
}

fn cut_paths(ctx: &Ctx) -> Verdict {
    let mut tested = Vec::new();
    for c in &ctx.ops {
        let paths = enumerate_cut_paths(&c.op, 7);
        if paths.len() < 2 {
            continue;
        }
        for g in [fixtures::tetrahedron(), fixtures::cube()] {
            let reference = canonical_form(&apply_lopsp(&c.op, &g, Some(&paths[0])).result);
            for p in &paths[1..] {
                let other = canonical_form(&apply_lopsp(&c.op, &g, Some(p)).result);
                ensure(other == reference, || {
                    format!("{} on {}: cut-path {:?} differs", c.op.name(), g.name().unwrap_or("?"), p.vertices)
                })?;
            }
        }
        tested.push(format!("{}({})", c.op.name(), paths.len()));
    }
    ensure(!tested.is_empty(), || "no operation has two cut-paths".into())?;
    Ok(format!("cut-path independent: {}", tested.join(" ")))
}

/// Vertex count of O(G) from the types of O alone: a special vertex gives one
/// vertex per host vertex, edge or face, any other vertex one per double
/// chamber.
fn element_count(o: &LopspOperation, g: &EmbeddedMap, t: u8) -> usize {
    let (v, e, f) = (g.vertex_count(), g.edge_count(), g.face_count());
    let special = [(o.v0, v), (o.v1, e), (o.v2, f)];
    let mut n = special.iter().filter(|(x, _)| o.t(*x) == t).map(|(_, k)| k).sum::<usize>();
    let others = (0..o.map().vertex_count()).filter(|&x| o.t(x) == t && ![o.v0, o.v1, o.v2].contains(&x)).count();
    n += others * 2 * e;
    n
}

fn counting(ctx: &Ctx) -> Verdict {
    // pinned before any application code existed
    let pinned: [(&str, (usize, usize, usize)); 6] = [
        ("truncation", (24, 36, 14)),
        ("ambo", (12, 24, 14)),
        ("kis", (14, 36, 24)),
        ("join", (14, 24, 12)),
        ("leapfrog", (24, 36, 14)),
        ("chamfer", (32, 48, 18)),
    ];
    let cube = fixtures::cube();
    for (name, want) in pinned {
        let o = op(ctx, name);
        let e = o.map().face_count() / 2 * cube.edge_count();
        let v = element_count(&o, &cube, 0);
        let f = 2 + e - v;
        ensure(element_count(&o, &cube, 2) == f, || format!("{name}: face oracle disagrees with Euler"))?;
        ensure((v, e, f) == want, || format!("{name}: oracle {:?} vs pinned {want:?}", (v, e, f)))?;
        let r = apply_lopsp(&o, &cube, None).result;
        let got = (r.vertex_count(), r.edge_count(), r.face_count());
        ensure(got == want, || format!("{name}(cube) = {got:?}, expected {want:?}"))?;
    }
    Ok("cube counts match the oracle for 6 operations".into())
}

fn is_preserving(o: &LopspOperation) -> bool {
    matches!(classify(o).tag, ClassTag::Identity | ClassTag::EdgePreserving)
}

fn main2(ctx: &Ctx) -> Verdict {
    let hosts: Vec<EmbeddedMap> = ctx.corpus.iter().filter(|g| g.genus().is_ok_and(|x| x <= 1)).cloned().collect();
    let r = verify::check_theorem_main2(&hosts, &ctx.ops);
    let preserve = Report { records: r.records.into_iter().filter(|x| x.check == "main2-preserve").collect() };
    let n = report_ok(&preserve, "not 3-connected")?;
    let ops = ctx.ops.iter().filter(|c| is_preserving(&c.op)).count();
    Ok(format!("{n} results 3-connected ({ops} ops x {} hosts of genus 0 and 1)", hosts.len()))
}

fn breaks(ctx: &Ctx) -> Verdict {
    let t = verify::counterexample_torus();
    ensure(t.is_simple() && t.genus() == Ok(1), || "torus host is not a simple genus-1 map".into())?;
    ensure(t.vertex_count() >= 4 && t.separator(3).is_none(), || "torus host is not 3-connected".into())?;
    let mut names = Vec::new();
    for c in ctx.ops.iter().filter(|c| !is_preserving(&c.op)) {
        let out = outcome(&c.op, &t);
        ensure(!out.three_connected, || format!("{}(torus) is 3-connected", c.op.name()))?;
        names.push(c.op.name().to_string());
    }
    let join = op(ctx, "join");
    let r = apply_lopsp(&join, &t, None);
    let mut cut: Vec<usize> = t
        .faces()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.len() == 8)
        .flat_map(|(i, _)| r.face_shadows[i].clone())
        .collect();
    cut.sort_unstable();
    ensure(cut.len() == 2, || format!("octagon shadows {cut:?}"))?;
    let adj = r.result.simple_adjacency();
    let mut removed = vec![false; adj.len()];
    for &x in &cut {
        removed[x] = true;
    }
    let (_, parts) = lopsp::connectivity::components_without(&adj, &removed);
    ensure(parts >= 2, || format!("octagon vertices {cut:?} do not cut Join(torus)"))?;
    Ok(format!("{} lose 3-connectivity; octagon vertices {cut:?} cut Join(torus)", names.join(",")))
}

fn simple(ctx: &Ctx) -> Verdict {
    let join = op(ctx, "join");
    let cube = outcome(&join, &fixtures::cube());
    ensure(cube.three_connected, || "Join(cube) is not 3-connected".into())?;
    let comp = companion(&join).map_err(|e| e.to_string())?;
    let mut simple_results = 0;
    for g in &ctx.corpus {
        let out = outcome(&comp, g);
        if out.simple {
            simple_results += 1;
            ensure(out.three_connected, || format!("companion(join) on {} is simple but not 3-connected", g.name().unwrap_or("?")))?;
        }
    }
    let r = verify::check_theorem_simple(&ctx.corpus, &ctx.ops);
    let n = report_ok(&r, "simple")?;
    Ok(format!("Join(cube) 3-connected; companion(join) {simple_results} simple results all 3-connected; {n} simple checks"))
}

fn edge_path(ctx: &Ctx) -> Verdict {
    let mut pairs = 0;
    for c in &ctx.ops {
        let tag = classify(&c.op).tag;
        for p in minimal_cut_paths(&c.op) {
            let restricted = find_edge_path(&c.op, &p, true).is_some();
            ensure(restricted == is_preserving(&c.op), || {
                format!("{} ({tag}): restricted edge-path {restricted} on {:?}", c.op.name(), p.vertices)
            })?;
            ensure(find_edge_path(&c.op, &p, false).is_some(), || format!("{}: no edge-path", c.op.name()))?;
            pairs += 1;
        }
    }
    let n = report_ok(&verify::check_size_lemma(&ctx.corpus, &ctx.ops), "size")?;
    Ok(format!("edge-path iff edge-preserving on {pairs} (op, cut-path) pairs; size bound on {n} pairs"))
}

fn table(ctx: &Ctx) -> Verdict {
    let t = verify::table1_report(&ctx.ops, &ctx.corpus, &verify::table_witnesses());
    ensure(t.cells.len() == 20, || format!("{} cells", t.cells.len()))?;
    for c in &t.cells {
        ensure(c.matches(), || format!("cell ({}, {}) observed {:?}", c.row, c.column, c.observed))?;
        ensure(c.expected || !c.witnesses.is_empty(), || format!("cell ({}, {}) has no witness", c.row, c.column))?;
    }
    let nos = t.cells.iter().filter(|c| !c.expected).count();
    Ok(format!("20 cells match, {nos} No cells witnessed"))
}

fn main() {
    let start = Instant::now();
    let ctx = Ctx { ops: catalog::catalog(), corpus: verify::corpus_generate(&CorpusSpec::default()) };
    println!("corpus: {} hosts ({:.2?})", ctx.corpus.len(), start.elapsed());

    let criteria: [(&str, fn(&Ctx) -> Verdict, u64); 9] = [
        ("structural identities", structural, 10),
        ("genus conservation", genus, 60),
        ("cut-path independence", cut_paths, 30),
        ("counting oracle", counting, 10),
        ("main_2 preservation", main2, 300),
        ("edge-breaking breaks", breaks, 10),
        ("main_1 / simple", simple, 120),
        ("edge-path lemma and size", edge_path, 60),
        ("table 1", table, 600),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut verdict = f(&ctx);
        let took = t.elapsed();
        if verdict.is_ok() && took > Duration::from_secs(*budget) {
            verdict = Err(format!("took {took:.2?}, budget {budget}s"));
        }
        match verdict {
            Ok(msg) => println!("criterion {} PASS {name}: {msg} ({took:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {msg} ({took:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
