use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use lopsp::apply::apply_lopsp;
use lopsp::bary::barycentric_subdivision;
use lopsp::catalog;
use lopsp::classify::classify;
use lopsp::io::{parse_rotsys, print_map, print_operation, print_typed, Document};
use lopsp::lopsp::{find_cut_path, CutPathStrategy, LopspOperation};
use lopsp::verify::{self, CorpusSpec, Report};
use lopsp::EmbeddedMap;

#[derive(Parser)]
#[command(name = "lopsp", version, about = "Apply and analyse lopsp-operations on embedded graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operation to a map.
    Apply {
        /// Catalog name or operation file.
        #[arg(long)]
        op: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = CutPathArg::Minimal)]
        cut_path: CutPathArg,
        /// Write the result here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the typed barycentric subdivision of the result.
        #[arg(long)]
        emit_bary: Option<PathBuf>,
    },
    /// Print the class of an operation.
    Classify {
        #[arg(long)]
        op: String,
        #[arg(long)]
        json: bool,
    },
    /// Test k-connectivity; exits 1 with a separator when it fails.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    Genus {
        #[arg(long)]
        graph: PathBuf,
    },
    Dual {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    Bary {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// List the built-in operations or write them to a directory.
    Catalog {
        #[arg(long, conflicts_with = "dump")]
        list: bool,
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
    /// Run the theorem checks over a generated corpus.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Demo {
    /// Apply an operation to the toroidal cube embedding with two octagons.
    Counterexample {
        #[arg(long)]
        op: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CutPathArg {
    Minimal,
    First,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Main1,
    Main2,
    Simple,
    Table1,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` is a failed check (exit 1); errors are usage or input problems (exit 2).
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Apply { op, graph, cut_path, out, emit_bary } => {
            let o = load_op(&op)?;
            let g = load_map(&graph)?;
            let strategy = match cut_path {
                CutPathArg::Minimal => CutPathStrategy::Minimal,
                CutPathArg::First => CutPathStrategy::First,
            };
            let p = find_cut_path(&o, strategy);
            let r = apply_lopsp(&o, &g, Some(&p));
            let name = format!("{}({})", o.name(), g.name().unwrap_or("graph"));
            let result = r.result.clone().with_name(name);
            eprintln!("{}", summary(&result));
            write_or_print(out.as_deref(), &print_map(&result))?;
            if let Some(path) = emit_bary {
                write(&path, &print_typed(&r.b_result))?;
            }
            Ok(true)
        }
        Command::Classify { op, json } => {
            let o = load_op(&op)?;
            let c = classify(&o);
            if json {
                let v = json!({ "op": o.name(), "class": c.tag.to_string(), "evidence": c.evidence.to_string() });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                println!("class={} evidence={}", c.tag, c.evidence);
            }
            Ok(true)
        }
        Command::Check { graph, k } => {
            let g = load_map(&graph)?;
            if g.vertex_count() <= k {
                println!("{k}-connected=false reason=at most {k} vertices");
                return Ok(false);
            }
            match g.separator(k) {
                None => {
                    println!("{k}-connected=true");
                    Ok(true)
                }
                Some(cut) => {
                    println!("{k}-connected=false separator={}", join(&cut));
                    Ok(false)
                }
            }
        }
        Command::Genus { graph } => {
            let g = load_map(&graph)?;
            println!("{}", g.genus()?);
            Ok(true)
        }
        Command::Dual { graph, out } => {
            let g = load_map(&graph)?;
            let name = format!("dual({})", g.name().unwrap_or("graph"));
            write(&out, &print_map(&g.dual().with_name(name)))?;
            Ok(true)
        }
        Command::Bary { graph, out } => {
            let g = load_map(&graph)?;
            write(&out, &print_typed(&barycentric_subdivision(&g)))?;
            Ok(true)
        }
        Command::Catalog { list, dump } => {
            match dump {
                Some(dir) if !list => {
                    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                    for c in catalog::catalog() {
                        write(&dir.join(format!("{}.lopsp", c.op.name())), &print_operation(&c.op))?;
                    }
                }
                _ => {
                    for c in catalog::catalog() {
                        let m = c.op.map();
                        println!(
                            "{:<12} {:<18} vertices={} faces={}",
                            c.op.name(),
                            c.class.to_string(),
                            m.vertex_count(),
                            m.face_count()
                        );
                    }
                }
            }
            Ok(true)
        }
        Command::Demo { which: Demo::Counterexample { op, out } } => {
            let o = load_op(&op)?;
            let g = verify::counterexample_torus();
            let r = apply_lopsp(&o, &g, None);
            let result = r.result.clone().with_name(format!("{}(torus-q3)", o.name()));
            println!("host: {}", summary(&g));
            println!("result: {}", summary(&result));
            println!("class={}", classify(&o).tag);
            match result.separator(3) {
                Some(cut) => println!("3-connected=false separator={}", join(&cut)),
                None => println!("3-connected=true"),
            }
            let octagons: Vec<usize> = g
                .faces()
                .iter()
                .enumerate()
                .filter(|(_, f)| f.len() == 8)
                .flat_map(|(i, _)| r.face_shadows[i].iter().copied())
                .collect();
            println!("octagon face shadows: {}", join(&octagons));
            if let Some(path) = out {
                write(&path, &print_map(&result))?;
            }
            Ok(true)
        }
        Command::Verify { suite, max_vertices, seed, json } => verify_suite(suite, max_vertices, seed, json.as_deref()),
    }
}

fn verify_suite(suite: Suite, max_vertices: usize, seed: u64, json: Option<&Path>) -> Result<bool> {
    let spec = CorpusSpec { max_vertices, seed, ..CorpusSpec::default() };
    let corpus = verify::corpus_generate(&spec);
    let ops = catalog::catalog();
    let wants = |s: Suite| suite == s || suite == Suite::All;
    let mut reports: Vec<(&str, Report)> = Vec::new();
    if wants(Suite::Main1) {
        reports.push(("main1", verify::check_theorem_main1_simple_dual(&corpus, &ops)));
    }
    if wants(Suite::Main2) {
        reports.push(("main2", verify::check_theorem_main2(&corpus, &ops)));
    }
    if wants(Suite::Simple) {
        reports.push(("simple", verify::check_theorem_simple(&corpus, &ops)));
    }
    if suite == Suite::All {
        reports.push(("size", verify::check_size_lemma(&corpus, &ops)));
    }
    let table = wants(Suite::Table1).then(|| verify::table1_report(&ops, &corpus, &verify::table_witnesses()));

    println!("corpus: {} hosts, at most {max_vertices} vertices, seed {seed}", corpus.len());
    let mut ok = true;
    for (name, r) in &reports {
        let failures = r.failures();
        ok &= failures.is_empty();
        println!("{name}: {} checks, {} failures", r.records.len(), failures.len());
        for f in failures.iter().take(10) {
            println!("  FAIL {} {} on {}", f.check, f.op, f.host);
        }
    }
    if let Some(t) = &table {
        ok &= t.all_match();
        print!("{}", t.render());
        println!("table1: {}", if t.all_match() { "all cells match" } else { "MISMATCH" });
    }

    if let Some(path) = json {
        let mut suites = serde_json::Map::new();
        for (name, r) in &reports {
            suites.insert(name.to_string(), json!({ "all_pass": r.all_pass(), "records": r.records }));
        }
        let doc = json!({
            "format": "lopsp-report v1",
            "suite": suite.to_possible_value().map(|v| v.get_name().to_string()),
            "max_vertices": max_vertices,
            "seed": seed,
            "corpus_size": corpus.len(),
            "all_pass": ok,
            "suites": suites,
            "table1": table,
        });
        write(path, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    }
    Ok(ok)
}

fn load_op(spec: &str) -> Result<LopspOperation> {
    if let Some(o) = catalog::by_name(spec) {
        return Ok(o);
    }
    let path = Path::new(spec);
    if !path.exists() {
        bail!("`{spec}` is neither a catalog operation ({}) nor a file", catalog::names().join(", "));
    }
    match read_doc(path)? {
        Document::Operation(o) => Ok(o),
        d => bail!("{} holds a {}, not an operation", path.display(), d.kind()),
    }
}

fn load_map(path: &Path) -> Result<EmbeddedMap> {
    let m = read_doc(path)?.into_map();
    if m.name().is_some() {
        return Ok(m);
    }
    let stem = path.file_stem().map_or("graph".into(), |s| s.to_string_lossy().into_owned());
    Ok(m.with_name(stem))
}

fn read_doc(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_rotsys(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn summary(m: &EmbeddedMap) -> String {
    let genus = m.genus().map_or("?".to_string(), |g| g.to_string());
    format!(
        "{} vertices={} edges={} faces={} genus={genus}",
        m.name().unwrap_or("graph"),
        m.vertex_count(),
        m.edge_count(),
        m.face_count()
    )
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}
