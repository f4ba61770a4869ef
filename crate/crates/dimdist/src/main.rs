use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use dimdist::enumerate::{enumerate_corpus, CorpusClass, CorpusSource, CorpusSpec};
use dimdist::graph::{standard_family, FamilyDescriptor, Graph};
use dimdist::harness::{compute, verify, CheckId, Report, VerifyConfig};
use dimdist::{graph6, ComputeRecord};

#[derive(Parser)]
#[command(name = "dimdist", version, about = "Metric dimension / distinguishing number toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every invariant and family label for one graph
    Compute {
        /// graph6 encoding of the input graph
        #[arg(long)]
        graph6: String,
        #[arg(long)]
        json: bool,
    },
    /// Run a named check over a corpus and report violations
    Verify {
        /// Check id: prop-main | eq-tree-dim | thm-trees | thm-unicyclic |
        /// cor-D-n | thm-D-n1 | thm-D-n2 | prop-lemn2 | jannesari |
        /// hernando | complement | prop-w | obs-twin
        #[arg(long)]
        check: String,
        /// ℓ parameter for prop-lemn2
        #[arg(long)]
        ell: Option<usize>,
        /// Largest vertex count (grid bound for prop-w); check-specific default
        #[arg(long)]
        max_n: Option<usize>,
        /// Read the corpus from a graph6 file instead of builtin enumeration
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Worker threads (default: rayon's choice)
        #[arg(long)]
        jobs: Option<usize>,
        /// Per-graph solver timeout in milliseconds
        #[arg(long, default_value_t = 10_000)]
        timeout_ms: u64,
        #[arg(long)]
        json: bool,
    },
    /// Emit all non-isomorphic graphs of a class on n vertices as graph6
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_class)]
        class: CorpusClass,
        /// Output file (stdout when absent), one graph per line
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a named family, e.g. cycle:7, bipartite:2,3, propw:2,4, kite
    Family {
        /// name[:params] (path, cycle, complete, empty, star, bipartite,
        /// multipartite, wheel, kite, subdividedstar, propw)
        #[arg(long)]
        spec: String,
        /// Print only the graph6 line
        #[arg(long)]
        g6: bool,
    },
}

fn parse_class(s: &str) -> Result<CorpusClass, String> {
    match s {
        "all" => Ok(CorpusClass::All),
        "connected" => Ok(CorpusClass::Connected),
        "trees" => Ok(CorpusClass::Trees),
        "unicyclic" => Ok(CorpusClass::Unicyclic),
        other => Err(format!("unknown class {other:?}; use all|connected|trees|unicyclic")),
    }
}

fn parse_family_spec(spec: &str) -> Result<FamilyDescriptor, String> {
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n, p),
        None => (spec, ""),
    };
    let nums: Result<Vec<usize>, _> = params
        .split(',')
        .filter(|s| !s.is_empty())
        .map(str::parse::<usize>)
        .collect();
    let nums = nums.map_err(|e| format!("bad parameter in {spec:?}: {e}"))?;
    let arity = |want: usize| -> Result<(), String> {
        if nums.len() == want {
            Ok(())
        } else {
            Err(format!("{name} takes {want} parameter(s), got {}", nums.len()))
        }
    };
    Ok(match name {
        "path" => {
            arity(1)?;
            FamilyDescriptor::Path(nums[0])
        }
        "cycle" => {
            arity(1)?;
            FamilyDescriptor::Cycle(nums[0])
        }
        "complete" => {
            arity(1)?;
            FamilyDescriptor::Complete(nums[0])
        }
        "empty" => {
            arity(1)?;
            FamilyDescriptor::Empty(nums[0])
        }
        "star" => {
            arity(1)?;
            FamilyDescriptor::Star(nums[0])
        }
        "bipartite" | "completebipartite" => {
            arity(2)?;
            FamilyDescriptor::CompleteBipartite(nums[0], nums[1])
        }
        "multipartite" | "completemultipartite" => {
            if nums.is_empty() {
                return Err("multipartite needs part sizes".into());
            }
            FamilyDescriptor::CompleteMultipartite(nums.clone())
        }
        "wheel" => {
            arity(1)?;
            FamilyDescriptor::Wheel(nums[0])
        }
        "kite" => {
            arity(0)?;
            FamilyDescriptor::Kite
        }
        "subdividedstar" => {
            arity(1)?;
            FamilyDescriptor::SubdividedStar(nums[0])
        }
        "propw" => {
            arity(2)?;
            FamilyDescriptor::PropW(nums[0], nums[1])
        }
        other => return Err(format!("unknown family {other:?}")),
    })
}

fn print_record(rec: &ComputeRecord) {
    println!("graph6:        {}", rec.graph6);
    println!("n:             {}", rec.n);
    println!("edges:         {} {:?}", rec.edge_count, rec.edges);
    println!(
        "shape:         connected={} tree={} unicyclic={} diameter={}",
        rec.connected,
        rec.tree,
        rec.unicyclic,
        rec.diameter.map_or("unreachable".into(), |d| d.to_string())
    );
    match (rec.dim, &rec.basis) {
        (Some(k), Some(basis)) => println!("dim:           {k} (basis {basis:?})"),
        _ => println!("dim:           undefined (disconnected)"),
    }
    println!(
        "D:             {} (witness {:?})",
        rec.distinguishing_number, rec.witness
    );
    println!(
        "twins:         {} classes {:?} types {:?} alpha={} max={} quotient={}",
        rec.twin.class_count,
        rec.twin.classes,
        rec.twin.types,
        rec.twin.alpha,
        rec.twin.max_class,
        rec.twin.quotient_graph6
    );
    println!("almost-asym:   {}", rec.almost_asymmetric);
    let fmt = |ms: &[dimdist::FamilyMatch]| {
        ms.iter()
            .map(|m| format!("{}{:?}", m.label, m.params))
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!("dim families:  [{}]", fmt(&rec.dim_extremal));
    println!("D families:    [{}]", fmt(&rec.d_extremal));
    if let Some(m) = &rec.jannesari {
        println!("diam-2 shape:  {}{:?}", m.label, m.params);
    }
    if let Some(m) = &rec.hernando {
        println!("diam>=3 shape: {}{:?}", m.label, m.params);
    }
}

fn print_report(report: &Report) {
    println!(
        "check {}: examined {} ({} n <= {}): {} violation(s), {} inconclusive [{} ms]",
        report.check,
        report.examined,
        report.corpus.class,
        report.corpus.n,
        report.violations.len(),
        report.inconclusive.len(),
        report.elapsed_ms
    );
    for v in &report.violations {
        println!("  VIOLATION {}  {}", v.graph6, v.detail);
    }
    for v in &report.inconclusive {
        println!("  INCONCLUSIVE {}  {}", v.graph6, v.detail);
    }
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute { graph6: text, json } => {
            let g: Graph = graph6::decode(text.trim()).map_err(|e| e.to_string())?;
            let rec = compute(&g);
            if json {
                println!("{}", serde_json::to_string_pretty(&rec).map_err(|e| e.to_string())?);
            } else {
                print_record(&rec);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            check,
            ell,
            max_n,
            corpus,
            jobs,
            timeout_ms,
            json,
        } => {
            let check = CheckId::parse(&check, ell).map_err(|e| e.to_string())?;
            let cfg = VerifyConfig {
                max_n,
                corpus_file: corpus,
                jobs: jobs.unwrap_or(0),
                timeout: Duration::from_millis(timeout_ms),
            };
            let report = verify(check, &cfg).map_err(|e| e.to_string())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?);
            } else {
                print_report(&report);
            }
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Enumerate { n, class, out } => {
            let graphs = enumerate_corpus(&CorpusSpec {
                n,
                class,
                source: CorpusSource::Builtin,
            })
            .map_err(|e| e.to_string())?;
            let mut text = String::new();
            for g in &graphs {
                text.push_str(&graph6::encode(g));
                text.push('\n');
            }
            match out {
                Some(path) => std::fs::write(&path, text).map_err(|e| e.to_string())?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Family { spec, g6 } => {
            let desc = parse_family_spec(&spec)?;
            let g = standard_family(&desc).map_err(|e| e.to_string())?;
            if g6 {
                println!("{}", graph6::encode(&g));
            } else {
                println!(
                    "{spec}: n={} edges={} graph6={}",
                    g.n(),
                    g.edge_count(),
                    graph6::encode(&g)
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
