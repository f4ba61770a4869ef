//! The theorem-verification driver: runs a named check over a corpus,
//! aggregates violations into a machine-readable report, and offers a
//! one-graph compute-everything entry point.
//!
//! Work is partitioned per graph and merged in corpus order (the corpora
//! are canonically sorted), so a report is byte-identical across serial
//! and parallel runs up to the elapsed field. A per-graph solver timeout
//! turns a hang into an explicit inconclusive entry; any inconclusive
//! entry fails the overall check.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::budget::Budget;
use crate::classify::{
    classify_d_extremal, classify_dim_extremal, classify_prop_lemn2, match_hernando,
    match_jannesari, FamilyMatch,
};
use crate::distinguishing::{distinguishing_number_within, DistinguishError};
use crate::enumerate::{enumerate_corpus, CorpusClass, CorpusError, CorpusSource, CorpusSpec};
use crate::graph::{
    all_pairs_distances, is_path_graph, is_star_graph, standard_family, structure_probe,
    FamilyDescriptor, Graph,
};
use crate::graph6;
use crate::resolving::{metric_dimension_within, tree_dimension, ResolveError};
use crate::twin::{is_almost_asymmetric, twin_graph};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error("check prop-lemn2 needs an ℓ parameter (--ell)")]
    MissingEll,
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

/// One verifiable statement, each mapping to a predicate over one graph
/// (or one grid cell for the D/dim gap construction).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckId {
    PropMain,
    EqTreeDim,
    ThmTrees,
    ThmUnicyclic,
    CorDN,
    ThmDN1,
    ThmDN2,
    PropLemn2(usize),
    Jannesari,
    Hernando,
    Complement,
    PropW,
    ObsTwin,
}

impl CheckId {
    pub fn parse(name: &str, ell: Option<usize>) -> Result<Self, HarnessError> {
        Ok(match name {
            "prop-main" => CheckId::PropMain,
            "eq-tree-dim" => CheckId::EqTreeDim,
            "thm-trees" => CheckId::ThmTrees,
            "thm-unicyclic" => CheckId::ThmUnicyclic,
            "cor-D-n" => CheckId::CorDN,
            "thm-D-n1" => CheckId::ThmDN1,
            "thm-D-n2" => CheckId::ThmDN2,
            "prop-lemn2" => CheckId::PropLemn2(ell.ok_or(HarnessError::MissingEll)?),
            "jannesari" => CheckId::Jannesari,
            "hernando" => CheckId::Hernando,
            "complement" => CheckId::Complement,
            "prop-w" => CheckId::PropW,
            "obs-twin" => CheckId::ObsTwin,
            other => return Err(HarnessError::UnknownCheck(other.to_owned())),
        })
    }

    pub fn name(&self) -> String {
        match self {
            CheckId::PropMain => "prop-main".into(),
            CheckId::EqTreeDim => "eq-tree-dim".into(),
            CheckId::ThmTrees => "thm-trees".into(),
            CheckId::ThmUnicyclic => "thm-unicyclic".into(),
            CheckId::CorDN => "cor-D-n".into(),
            CheckId::ThmDN1 => "thm-D-n1".into(),
            CheckId::ThmDN2 => "thm-D-n2".into(),
            CheckId::PropLemn2(ell) => format!("prop-lemn2({ell})"),
            CheckId::Jannesari => "jannesari".into(),
            CheckId::Hernando => "hernando".into(),
            CheckId::Complement => "complement".into(),
            CheckId::PropW => "prop-w".into(),
            CheckId::ObsTwin => "obs-twin".into(),
        }
    }

    pub fn default_max_n(&self) -> usize {
        match self {
            CheckId::EqTreeDim => 10,
            CheckId::ThmTrees => 12,
            CheckId::ThmUnicyclic => 9,
            CheckId::Complement => 6,
            CheckId::PropW => 5,
            _ => 7,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_n: Option<usize>,
    pub corpus_file: Option<PathBuf>,
    /// 0 uses the global rayon pool.
    pub jobs: usize,
    pub timeout: Duration,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: None,
            corpus_file: None,
            jobs: 0,
            timeout: Duration::from_secs(10),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ReportEntry {
    pub graph6: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CorpusInfo {
    pub class: String,
    pub n: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConfigInfo {
    pub timeout_ms: u64,
    pub jobs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub corpus: CorpusInfo,
    pub examined: usize,
    pub violations: Vec<ReportEntry>,
    pub inconclusive: Vec<ReportEntry>,
    pub elapsed_ms: u128,
    pub config: ConfigInfo,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.inconclusive.is_empty()
    }
}

/// Per-item outcome: `Ok(None)` holds, `Ok(Some(_))` violates,
/// `Err(_)` is inconclusive (solver timeout).
type Outcome = Result<Option<String>, String>;

/// One work item: a graph, a report tag, and for grid checks the expected
/// (D, dim) cell values.
struct Item {
    graph: Graph,
    tag: String,
    cell: Option<(usize, usize)>,
}

fn corpus_range(
    class: CorpusClass,
    ns: impl Iterator<Item = usize>,
    file: &Option<PathBuf>,
) -> Result<Vec<Graph>, CorpusError> {
    let mut out = Vec::new();
    for n in ns {
        let spec = CorpusSpec {
            n,
            class,
            source: match file {
                Some(p) => CorpusSource::File(p.clone()),
                None => CorpusSource::Builtin,
            },
        };
        out.extend(enumerate_corpus(&spec)?);
    }
    Ok(out)
}

pub fn verify(check: CheckId, cfg: &VerifyConfig) -> Result<Report, HarnessError> {
    if cfg.jobs == 0 {
        verify_in_pool(check, cfg)
    } else {
        // corpus enumeration and evaluation both run inside this pool, so
        // jobs=1 is a genuinely serial run
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .expect("thread pool")
            .install(|| verify_in_pool(check, cfg))
    }
}

fn verify_in_pool(check: CheckId, cfg: &VerifyConfig) -> Result<Report, HarnessError> {
    let start = Instant::now();
    let max_n = cfg.max_n.unwrap_or_else(|| check.default_max_n());

    let (corpus_info, items): (CorpusInfo, Vec<Item>) = match check {
        CheckId::PropMain | CheckId::Jannesari | CheckId::Hernando => {
            let graphs = corpus_range(CorpusClass::Connected, 1..=max_n, &cfg.corpus_file)?;
            (info(CorpusClass::Connected, max_n), plain(graphs))
        }
        CheckId::PropLemn2(_) => {
            let graphs = corpus_range(CorpusClass::Connected, 4..=max_n.max(4), &cfg.corpus_file)?;
            (info(CorpusClass::Connected, max_n), plain(graphs))
        }
        CheckId::EqTreeDim | CheckId::ThmTrees => {
            let graphs = corpus_range(CorpusClass::Trees, 1..=max_n, &cfg.corpus_file)?;
            (info(CorpusClass::Trees, max_n), plain(graphs))
        }
        CheckId::ThmUnicyclic => {
            let graphs = corpus_range(CorpusClass::Unicyclic, 3..=max_n.max(3), &cfg.corpus_file)?;
            (info(CorpusClass::Unicyclic, max_n), plain(graphs))
        }
        CheckId::CorDN | CheckId::ThmDN1 | CheckId::ThmDN2 | CheckId::Complement
        | CheckId::ObsTwin => {
            let graphs = corpus_range(CorpusClass::All, 1..=max_n, &cfg.corpus_file)?;
            (info(CorpusClass::All, max_n), plain(graphs))
        }
        CheckId::PropW => {
            let mut items = Vec::new();
            for m in 2..=max_n {
                for n in 1..m {
                    items.push(Item {
                        graph: prop_w_graph(n, m),
                        tag: format!("cell (n={n}, m={m})"),
                        cell: Some((n, m)),
                    });
                }
            }
            (
                CorpusInfo {
                    class: "grid".into(),
                    n: max_n,
                },
                items,
            )
        }
    };

    // domain filtering happens here so `examined` counts evaluated graphs
    let items: Vec<Item> = items
        .into_iter()
        .filter(|item| in_domain(check, &item.graph))
        .collect();

    let timeout = cfg.timeout;
    let outcomes: Vec<Outcome> = items
        .par_iter()
        .map(|item| evaluate(check, &item.graph, item.cell, timeout))
        .collect();

    let mut violations = Vec::new();
    let mut inconclusive = Vec::new();
    for (item, outcome) in items.iter().zip(outcomes) {
        let graph6 = graph6::encode(&item.graph);
        let tag = &item.tag;
        match outcome {
            Ok(None) => {}
            Ok(Some(detail)) => violations.push(ReportEntry {
                graph6,
                detail: format!("{tag}{}{detail}", if tag.is_empty() { "" } else { ": " }),
            }),
            Err(detail) => inconclusive.push(ReportEntry {
                graph6,
                detail: format!("{tag}{}{detail}", if tag.is_empty() { "" } else { ": " }),
            }),
        }
    }

    Ok(Report {
        check: check.name(),
        corpus: corpus_info,
        examined: items.len(),
        violations,
        inconclusive,
        elapsed_ms: start.elapsed().as_millis(),
        config: ConfigInfo {
            timeout_ms: cfg.timeout.as_millis() as u64,
            jobs: cfg.jobs,
        },
    })
}

fn info(class: CorpusClass, n: usize) -> CorpusInfo {
    CorpusInfo {
        class: class.as_str().into(),
        n,
    }
}

fn plain(graphs: Vec<Graph>) -> Vec<Item> {
    graphs
        .into_iter()
        .map(|g| Item {
            graph: g,
            tag: String::new(),
            cell: None,
        })
        .collect()
}

/// The G_{n,m} gap construction; n = 1 is the subdivided star directly.
fn prop_w_graph(n: usize, m: usize) -> Graph {
    if n == 1 {
        standard_family(&FamilyDescriptor::SubdividedStar(m + 1)).unwrap()
    } else {
        standard_family(&FamilyDescriptor::PropW(n, m)).unwrap()
    }
}

/// Stated-domain filter per check, applied before evaluation.
fn in_domain(check: CheckId, g: &Graph) -> bool {
    match check {
        CheckId::EqTreeDim => !is_path_graph(g),
        CheckId::ThmDN2 => g.n() >= 4,
        CheckId::Jannesari => all_pairs_distances(g).diameter() == Some(2),
        CheckId::Hernando => all_pairs_distances(g).diameter().is_some_and(|d| d >= 3),
        CheckId::PropLemn2(_) => {
            g.n() >= 4
                && metric_dimension_within(g, &Budget::unlimited())
                    .map(|md| md.k == g.n() - 2)
                    .unwrap_or(false)
        }
        _ => true,
    }
}

fn dim_within(g: &Graph, budget: &Budget) -> Result<usize, String> {
    match metric_dimension_within(g, budget) {
        Ok(md) => Ok(md.k),
        Err(ResolveError::Timeout) => Err("metric dimension solver timed out".into()),
        Err(e) => Err(format!("metric dimension failed: {e}")),
    }
}

fn d_within(g: &Graph, budget: &Budget) -> Result<usize, String> {
    match distinguishing_number_within(g, budget) {
        Ok(sol) => Ok(sol.k),
        Err(DistinguishError::Timeout) => Err("distinguishing solver timed out".into()),
        Err(e) => Err(format!("distinguishing solver failed: {e}")),
    }
}

fn evaluate(check: CheckId, g: &Graph, cell: Option<(usize, usize)>, timeout: Duration) -> Outcome {
    let budget = Budget::with_timeout(timeout);
    let n = g.n();
    match check {
        CheckId::PropMain => {
            let dim = dim_within(g, &budget)?;
            let d = d_within(g, &budget)?;
            Ok((d > dim + 1).then(|| format!("D={d} exceeds dim+1={}", dim + 1)))
        }
        CheckId::EqTreeDim => {
            let formula = tree_dimension(g).expect("corpus holds non-path trees");
            let solver = dim_within(g, &budget)?;
            Ok((formula != solver)
                .then(|| format!("leaf/branch formula gives {formula}, solver gives {solver}")))
        }
        CheckId::ThmTrees => {
            let dim = if is_path_graph(g) {
                1
            } else {
                tree_dimension(g).expect("non-path tree")
            };
            let d = d_within(g, &budget)?;
            let equality = d == dim + 1;
            // the equality set is {P_n, K_{1,n} : n >= 2}; P_1 is outside it
            let expected = (is_path_graph(g) && n >= 2) || is_star_graph(g);
            Ok((equality != expected).then(|| {
                format!("D={d}, dim={dim}: equality={equality} but path/star={expected}")
            }))
        }
        CheckId::ThmUnicyclic => {
            let dim = dim_within(g, &budget)?;
            let d = d_within(g, &budget)?;
            let equality = d == dim + 1;
            let is_small_cycle = g.vertices().all(|v| g.degree(v) == 2) && (3..=5).contains(&n);
            Ok((equality != is_small_cycle).then(|| {
                format!("D={d}, dim={dim}: equality={equality} but C_3/C_4/C_5={is_small_cycle}")
            }))
        }
        CheckId::CorDN => {
            let d = d_within(g, &budget)?;
            let labeled = classify_d_extremal(g)
                .iter()
                .any(|m| m.label.starts_with("DN-"));
            Ok(((d == n) != labeled)
                .then(|| format!("D={d}, n={n}: D=n is {} but K_n/K̄_n match is {labeled}", d == n)))
        }
        CheckId::ThmDN1 => {
            let d = d_within(g, &budget)?;
            let labeled = classify_d_extremal(g)
                .iter()
                .any(|m| m.label.starts_with("DN1-"));
            Ok(((n >= 1 && d + 1 == n) != labeled).then(|| {
                format!("D={d}, n={n}: D=n-1 is {} but family match is {labeled}", d + 1 == n)
            }))
        }
        CheckId::ThmDN2 => {
            let d = d_within(g, &budget)?;
            let labeled = classify_d_extremal(g)
                .iter()
                .any(|m| m.label.starts_with("DN2-"));
            Ok(((d + 2 == n) != labeled).then(|| {
                format!("D={d}, n={n}: D=n-2 is {} but family match is {labeled}", d + 2 == n)
            }))
        }
        CheckId::PropLemn2(ell) => {
            let d = d_within(g, &budget)?;
            let matched = match classify_prop_lemn2(g, ell) {
                Ok(ms) => !ms.is_empty(),
                Err(e) => return Err(format!("recognizer failed: {e}")),
            };
            let holds = n >= ell && d == n - ell;
            Ok((holds != matched)
                .then(|| format!("D={d}, n={n}, ℓ={ell}: D=n-ℓ is {holds} but match is {matched}")))
        }
        CheckId::Jannesari => {
            let dim = dim_within(g, &budget)?;
            let matched = match match_jannesari(g) {
                Ok(m) => m.is_some(),
                Err(e) => return Err(format!("recognizer failed: {e}")),
            };
            let holds = n >= 3 && dim == n - 3;
            Ok((holds != matched)
                .then(|| format!("dim={dim}, n={n}: dim=n-3 is {holds} but match is {matched}")))
        }
        CheckId::Hernando => {
            let d_diam = all_pairs_distances(g).diameter().unwrap() as usize;
            let dim = dim_within(g, &budget)?;
            let matched = match match_hernando(g) {
                Ok(m) => m.is_some(),
                Err(e) => return Err(format!("recognizer failed: {e}")),
            };
            let holds = dim == n - d_diam;
            Ok((holds != matched).then(|| {
                format!("dim={dim}, n={n}, diam={d_diam}: dim=n-diam is {holds} but match is {matched}")
            }))
        }
        CheckId::Complement => {
            let comp = g.complement();
            let d = d_within(g, &budget)?;
            let d_comp = d_within(&comp, &budget)?;
            if d != d_comp {
                return Ok(Some(format!("D(G)={d} but D(complement)={d_comp}")));
            }
            let g_conn = g.is_connected();
            let c_conn = comp.is_connected();
            for t in 1..=n {
                let in_disconnected_class = !g_conn && d == t;
                let rhs = (c_conn && d_comp == t) && !(g_conn && d == t);
                if in_disconnected_class != rhs {
                    return Ok(Some(format!(
                        "t={t}: disconnected-class membership {in_disconnected_class} vs complement rule {rhs}"
                    )));
                }
            }
            Ok(None)
        }
        CheckId::PropW => {
            let (want_d, want_dim) = cell.expect("prop-w items carry cell parameters");
            let dim = dim_within(g, &budget)?;
            let d = d_within(g, &budget)?;
            Ok((d != want_d || dim != want_dim)
                .then(|| format!("expected D={want_d}, dim={want_dim}; got D={d}, dim={dim}")))
        }
        CheckId::ObsTwin => {
            let d = d_within(g, &budget)?;
            let tg = twin_graph(g);
            if g.is_connected() {
                for m in 1..=3usize {
                    for class in &tg.partition.classes {
                        let size = class.len();
                        if d == size && n - size != m && n >= m && d == n - m {
                            return Ok(Some(format!(
                                "class of size {size}: D={d} equals n-{m} though the other classes sum to {}",
                                n - size
                            )));
                        }
                    }
                }
            }
            if is_almost_asymmetric(g) && d != tg.max_class {
                return Ok(Some(format!(
                    "almost asymmetric but D={d} differs from max class size {}",
                    tg.max_class
                )));
            }
            Ok(None)
        }
    }
}

/// Everything the toolkit can say about one graph.
#[derive(Clone, Debug, Serialize)]
pub struct ComputeRecord {
    pub graph6: String,
    pub n: usize,
    pub edge_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub connected: bool,
    pub tree: bool,
    pub unicyclic: bool,
    pub diameter: Option<u32>,
    /// Metric dimension; absent for disconnected graphs.
    pub dim: Option<usize>,
    pub basis: Option<Vec<usize>>,
    pub distinguishing_number: usize,
    pub witness: Vec<u32>,
    pub twin: TwinSummary,
    pub almost_asymmetric: bool,
    pub dim_extremal: Vec<FamilyMatch>,
    pub d_extremal: Vec<FamilyMatch>,
    pub jannesari: Option<FamilyMatch>,
    pub hernando: Option<FamilyMatch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwinSummary {
    pub class_count: usize,
    pub classes: Vec<Vec<usize>>,
    pub types: Vec<String>,
    pub alpha: usize,
    pub max_class: usize,
    pub quotient_graph6: String,
}

pub fn compute(g: &Graph) -> ComputeRecord {
    let probe = structure_probe(g);
    let md = metric_dimension_within(g, &Budget::unlimited()).ok();
    let sol = distinguishing_number_within(g, &Budget::unlimited()).expect("unlimited budget");
    let tg = twin_graph(g);
    let diam = probe.diameter;
    ComputeRecord {
        graph6: graph6::encode(g),
        n: g.n(),
        edge_count: g.edge_count(),
        edges: g.edges(),
        connected: probe.connected,
        tree: probe.tree,
        unicyclic: probe.unicyclic,
        diameter: diam,
        dim: md.as_ref().map(|m| m.k),
        basis: md.as_ref().map(|m| m.basis.members()),
        distinguishing_number: sol.k,
        witness: sol.witness.colors().to_vec(),
        twin: TwinSummary {
            class_count: tg.partition.class_count(),
            classes: tg.partition.classes.clone(),
            types: tg.types.iter().map(|t| t.as_str().to_owned()).collect(),
            alpha: tg.alpha,
            max_class: tg.max_class,
            quotient_graph6: graph6::encode(&tg.quotient),
        },
        almost_asymmetric: is_almost_asymmetric(g),
        dim_extremal: classify_dim_extremal(g).unwrap_or_default(),
        d_extremal: classify_d_extremal(g),
        jannesari: match_jannesari(g).ok().flatten(),
        hernando: match_hernando(g).ok().flatten(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_parsing() {
        assert_eq!(CheckId::parse("prop-main", None).unwrap(), CheckId::PropMain);
        assert_eq!(
            CheckId::parse("prop-lemn2", Some(2)).unwrap(),
            CheckId::PropLemn2(2)
        );
        assert!(matches!(
            CheckId::parse("prop-lemn2", None),
            Err(HarnessError::MissingEll)
        ));
        assert!(matches!(
            CheckId::parse("nope", None),
            Err(HarnessError::UnknownCheck(_))
        ));
    }

    #[test]
    fn prop_main_small() {
        let cfg = VerifyConfig {
            max_n: Some(5),
            ..Default::default()
        };
        let report = verify(CheckId::PropMain, &cfg).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.examined, 1 + 1 + 2 + 6 + 21);
    }

    #[test]
    fn exhausted_timeout_reports_inconclusive() {
        let report = verify(
            CheckId::PropMain,
            &VerifyConfig {
                max_n: Some(4),
                timeout: Duration::from_nanos(1),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(!report.passed());
        assert!(report.violations.is_empty());
        // trivial graphs may finish before the first budget check
        assert!(report.inconclusive.len() >= report.examined - 1);
    }

    #[test]
    fn compute_named_values() {
        let w5 = standard_family(&FamilyDescriptor::Wheel(5)).unwrap();
        let rec = compute(&w5);
        assert_eq!(rec.dim, Some(2));
        assert_eq!(rec.distinguishing_number, 3);

        let k3 = standard_family(&FamilyDescriptor::Complete(3)).unwrap();
        let two_k3 = k3.disjoint_union(&k3).unwrap();
        let rec = compute(&two_k3);
        assert_eq!(rec.distinguishing_number, 4);
        assert_eq!(rec.dim, None);
        assert!(rec.d_extremal.iter().any(|m| m.label == "DN2-item6"));

        let k1 = standard_family(&FamilyDescriptor::Complete(1)).unwrap();
        let rec = compute(&k1);
        assert_eq!(rec.dim, Some(1));
        assert_eq!(rec.distinguishing_number, 1);
    }

    #[test]
    fn reports_are_deterministic_across_worker_counts() {
        let serial = verify(
            CheckId::CorDN,
            &VerifyConfig {
                max_n: Some(5),
                jobs: 1,
                ..Default::default()
            },
        )
        .unwrap();
        let parallel = verify(
            CheckId::CorDN,
            &VerifyConfig {
                max_n: Some(5),
                jobs: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(serial.examined, parallel.examined);
        assert_eq!(serial.violations, parallel.violations);
        assert_eq!(serial.inconclusive, parallel.inconclusive);
        assert_eq!(serial.corpus, parallel.corpus);
    }
}
