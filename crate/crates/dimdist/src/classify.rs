//! Membership recognizers for every classified family.
//!
//! Concrete families (complete bipartite, complete split, split-plus-K_1
//! and the fourteen D = n(G)-2 items) are recognized structurally or by
//! canonical-form comparison against a constructed template; a graph can
//! satisfy several presentations and all matches are reported. The
//! diameter-2 and diameter->=3 shape lists are matched on the typed twin
//! quotient, trying every role assignment so the printed type constraints
//! are checked under each embedding.
//!
//! Every match carries enough parameters to rebuild a representative via
//! [`rebuild_match`]; the rebuilt graph is isomorphic to the input, which
//! the tests pin via canonical forms.

use serde::Serialize;
use thiserror::Error;

use crate::automorphism::canonical_form;
use crate::graph::{all_pairs_distances, standard_family, FamilyDescriptor, Graph};
use crate::resolving::{metric_dimension, ResolveError};
use crate::twin::{twin_graph, ClassType, TwinGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("recognizer requires a connected graph")]
    Disconnected,
    #[error("recognizer requires diameter {expected}, graph has {got:?}")]
    WrongDiameter { expected: &'static str, got: Option<u32> },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
}

/// A matched family label with the parameters needed to rebuild it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMatch {
    pub label: String,
    pub params: Vec<usize>,
}

impl FamilyMatch {
    fn new(label: &str, params: Vec<usize>) -> Self {
        FamilyMatch {
            label: label.to_owned(),
            params,
        }
    }
}

fn is_complete(g: &Graph) -> bool {
    g.edge_count() == g.n() * (g.n() - 1) / 2
}

fn is_edgeless(g: &Graph) -> bool {
    g.edge_count() == 0
}

/// Vertices adjacent to every other vertex.
fn universal_count(g: &Graph) -> usize {
    g.vertices().filter(|&v| g.degree(v) == g.n() - 1).count()
}

/// Connected components as masks, ordered by lowest vertex.
fn components(g: &Graph) -> Vec<u64> {
    let mut seen = 0u64;
    let mut out = Vec::new();
    for v in g.vertices() {
        if seen >> v & 1 == 0 {
            let comp = g.component_mask(v);
            seen |= comp;
            out.push(comp);
        }
    }
    out
}

/// `K_{s,t}` part sizes (s <= t) if the graph is complete bipartite.
fn complete_bipartite_parts(g: &Graph) -> Option<(usize, usize)> {
    let comp = g.complement();
    let parts = components(&comp);
    if parts.len() != 2 {
        return None;
    }
    for &p in &parts {
        let (sub, _) = comp.induced(p);
        if !is_complete(&sub) {
            return None;
        }
    }
    let mut sizes: Vec<usize> = parts.iter().map(|p| p.count_ones() as usize).collect();
    sizes.sort();
    Some((sizes[0], sizes[1]))
}

/// `K_s + K̄_t` with `s >= 1`, `t >= 2`: s universal vertices, the rest
/// independent.
fn complete_split_parts(g: &Graph) -> Option<(usize, usize)> {
    let s = universal_count(g);
    let t = g.n() - s;
    if s < 1 || t < 2 {
        return None;
    }
    let rest: u64 = g
        .vertices()
        .filter(|&v| g.degree(v) < g.n() - 1)
        .fold(0, |m, v| m | 1 << v);
    let (sub, _) = g.induced(rest);
    is_edgeless(&sub).then_some((s, t))
}

/// `K_s + (K_1 ∪ K_t)`: s universal vertices, the rest one isolated class
/// plus one clique.
fn split_plus_parts(g: &Graph) -> Option<(usize, usize)> {
    let s = universal_count(g);
    if s < 1 || g.n() < s + 2 {
        return None;
    }
    let rest: u64 = g
        .vertices()
        .filter(|&v| g.degree(v) < g.n() - 1)
        .fold(0, |m, v| m | 1 << v);
    let (sub, _) = g.induced(rest);
    let comps = components(&sub);
    if comps.len() != 2 {
        return None;
    }
    let mut sizes: Vec<usize> = comps.iter().map(|c| c.count_ones() as usize).collect();
    sizes.sort();
    if sizes[0] != 1 {
        return None;
    }
    comps
        .iter()
        .all(|&c| is_complete(&sub.induced(c).0))
        .then_some((s, sizes[1]))
}

/// Matches against the dim = n-1 and dim = n-2 families.
pub fn classify_dim_extremal(g: &Graph) -> Result<Vec<FamilyMatch>, ClassifyError> {
    if !g.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    if g.n() < 2 {
        return Err(ClassifyError::HypothesisViolated(
            "extremal dimension families need n >= 2".into(),
        ));
    }
    let mut out = Vec::new();
    if is_complete(g) {
        out.push(FamilyMatch::new("Kn", vec![g.n()]));
    }
    if let Some((s, t)) = complete_bipartite_parts(g) {
        out.push(FamilyMatch::new("T3-Kst", vec![s, t]));
    }
    if let Some((s, t)) = complete_split_parts(g) {
        out.push(FamilyMatch::new("T3-KsNt", vec![s, t]));
    }
    if let Some((s, t)) = split_plus_parts(g) {
        out.push(FamilyMatch::new("T3-KsK1Kt", vec![s, t]));
    }
    Ok(out)
}

/// Matches the D(G) = n(G) - ℓ families among graphs with dim = n - 2 >= 2.
pub fn classify_prop_lemn2(g: &Graph, ell: usize) -> Result<Vec<FamilyMatch>, ClassifyError> {
    if !g.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    if ell < 1 {
        return Err(ClassifyError::HypothesisViolated("ℓ >= 1 required".into()));
    }
    let n = g.n();
    let dim = metric_dimension(g)?.k;
    if n < 4 || dim != n - 2 {
        return Err(ClassifyError::HypothesisViolated(format!(
            "needs dim = n-2 >= 2, got dim = {dim} with n = {n}"
        )));
    }
    let mut out = Vec::new();
    if let Some((s, t)) = complete_bipartite_parts(g) {
        if s == ell + 1 && t == ell + 1 {
            out.push(FamilyMatch::new("LEMN2-a", vec![ell + 1, ell + 1]));
        }
        if s == ell && t > ell {
            out.push(FamilyMatch::new("LEMN2-b", vec![t, ell]));
        }
    }
    if let Some((s, t)) = complete_split_parts(g) {
        if s == ell && t >= ell {
            out.push(FamilyMatch::new("LEMN2-c", vec![ell, t]));
        }
        if t == ell && ell >= 2 && s >= ell {
            out.push(FamilyMatch::new("LEMN2-d", vec![s, ell]));
        }
    }
    if let Some((s, t)) = split_plus_parts(g) {
        if ell >= 2 && s == ell - 1 && t >= 2.max(ell - 1) {
            out.push(FamilyMatch::new("LEMN2-e", vec![ell - 1, t]));
        }
        if ell >= 2 && t == ell - 1 && s >= 2.max(ell - 1) {
            out.push(FamilyMatch::new("LEMN2-f", vec![s, ell - 1]));
        }
    }
    Ok(out)
}

/// Builds a template and compares canonically.
fn matches_template(g: &Graph, template: &Graph) -> bool {
    g.n() == template.n() && canonical_form(g) == canonical_form(template)
}

fn family(desc: &FamilyDescriptor) -> Graph {
    standard_family(desc).expect("template parameters are valid")
}

/// Matches the D = n, D = n-1, and D = n-2 strata (disconnected included).
pub fn classify_d_extremal(g: &Graph) -> Vec<FamilyMatch> {
    use FamilyDescriptor::*;
    let n = g.n();
    let mut out = Vec::new();

    if is_complete(g) {
        out.push(FamilyMatch::new("DN-Kn", vec![n]));
    }
    if is_edgeless(g) {
        out.push(FamilyMatch::new("DN-Kn-bar", vec![n]));
    }

    // D = n-1 stratum
    if n == 4 && matches_template(g, &family(&Cycle(4))) {
        out.push(FamilyMatch::new("DN1-C4", vec![]));
    }
    if n == 4 {
        let two_k2 = family(&Complete(2)).disjoint_union(&family(&Complete(2))).unwrap();
        if matches_template(g, &two_k2) {
            out.push(FamilyMatch::new("DN1-2K2", vec![]));
        }
    }
    if n >= 3 {
        let t = n - 1;
        if matches_template(g, &family(&Star(t))) {
            out.push(FamilyMatch::new("DN1-Kt1", vec![t]));
        }
        let kt_k1 = family(&Complete(t)).disjoint_union(&family(&Complete(1))).unwrap();
        if matches_template(g, &kt_k1) {
            out.push(FamilyMatch::new("DN1-KtK1", vec![t]));
        }
    }

    // D = n-2 stratum, n >= 4
    if n >= 4 {
        for (item, template, params) in d_n2_templates(n) {
            if matches_template(g, &template) {
                out.push(FamilyMatch::new(&format!("DN2-item{item}"), params));
            }
        }
    }
    out
}

/// The fourteen D = n-2 items instantiated at order `n` (t is forced by n).
fn d_n2_templates(n: usize) -> Vec<(usize, Graph, Vec<usize>)> {
    use FamilyDescriptor::*;
    let mut out = Vec::new();
    let k1 = family(&Complete(1));
    if n == 5 {
        out.push((1, family(&Cycle(5)), vec![]));
        out.push((3, family(&CompleteMultipartite(vec![1, 2, 2])), vec![]));
        let two_k2 = family(&Complete(2)).disjoint_union(&family(&Complete(2))).unwrap();
        out.push((4, two_k2.disjoint_union(&k1).unwrap(), vec![]));
    }
    if n == 4 {
        out.push((2, family(&Path(4)), vec![]));
    }
    if n == 6 {
        out.push((5, family(&CompleteBipartite(3, 3)), vec![]));
        let k3 = family(&Complete(3));
        out.push((6, k3.disjoint_union(&k3).unwrap(), vec![]));
    }
    let t = n - 2;
    if t >= 3 {
        out.push((7, family(&CompleteBipartite(2, t)), vec![t]));
        let kt_k2 = family(&Complete(t)).disjoint_union(&family(&Complete(2))).unwrap();
        out.push((8, kt_k2, vec![t]));
    }
    if t >= 2 {
        out.push((9, family(&Complete(2)).join(&family(&Empty(t))).unwrap(), vec![t]));
        out.push((
            10,
            family(&Complete(t)).disjoint_union(&family(&Empty(2))).unwrap(),
            vec![t],
        ));
        out.push((11, family(&Complete(t)).join(&family(&Empty(2))).unwrap(), vec![t]));
        out.push((
            12,
            family(&Empty(t)).disjoint_union(&family(&Complete(2))).unwrap(),
            vec![t],
        ));
        let kt_k1 = family(&Complete(t)).disjoint_union(&k1).unwrap();
        out.push((13, k1.join(&kt_k1).unwrap(), vec![t]));
        out.push((14, family(&Star(t)).disjoint_union(&k1).unwrap(), vec![t]));
    }
    out
}

const TYPE_ONE: usize = 1;
const TYPE_K: usize = 2;
const TYPE_N: usize = 3;

fn type_code(t: ClassType) -> usize {
    match t {
        ClassType::One => TYPE_ONE,
        ClassType::K => TYPE_K,
        ClassType::N => TYPE_N,
    }
}

fn is_one(t: ClassType) -> bool {
    matches!(t, ClassType::One)
}

fn is_1k(t: ClassType) -> bool {
    matches!(t, ClassType::One | ClassType::K)
}

fn is_1n(t: ClassType) -> bool {
    matches!(t, ClassType::One | ClassType::N)
}

/// sizes/types of the classes mapped to template roles, flattened
/// `[size_0, type_0, size_1, type_1, ...]`.
fn role_params(tg: &TwinGraph, roles: &[usize]) -> Vec<usize> {
    roles
        .iter()
        .flat_map(|&c| [tg.partition.classes[c].len(), type_code(tg.types[c])])
        .collect()
}

/// Matches the diameter-2, dim = n-3 quotient shapes; first match wins.
pub fn match_jannesari(g: &Graph) -> Result<Option<FamilyMatch>, ClassifyError> {
    if !g.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    let diam = all_pairs_distances(g).diameter();
    if diam != Some(2) {
        return Err(ClassifyError::WrongDiameter {
            expected: "2",
            got: diam,
        });
    }
    let tg = twin_graph(g);
    let q = &tg.quotient;
    let ty = &tg.types;
    let nq = q.n();
    let q_label = canonical_form(q);
    let same = |t: &Graph| nq == t.n() && q_label == canonical_form(t);

    // G1: K_3 quotient with at most one vertex of type (1K)
    if same(&family(&FamilyDescriptor::Complete(3))) {
        let count_1k = ty.iter().filter(|&&t| is_1k(t)).count();
        if count_1k <= 1 {
            return Ok(Some(FamilyMatch::new("JAN-G1", role_params(&tg, &[0, 1, 2]))));
        }
    }

    // G2: P_3 quotient
    if same(&family(&FamilyDescriptor::Path(3))) {
        let mid = (0..nq).find(|&v| q.degree(v) == 2).unwrap();
        let leaves: Vec<usize> = (0..nq).filter(|&v| v != mid).collect();
        for &(a, b) in &[(leaves[0], leaves[1]), (leaves[1], leaves[0])] {
            // (a): middle N, one leaf K, other leaf any
            if matches!(ty[mid], ClassType::N) && matches!(ty[a], ClassType::K) {
                return Ok(Some(FamilyMatch::new("JAN-G2a", role_params(&tg, &[a, mid, b]))));
            }
        }
        for &(a, b) in &[(leaves[0], leaves[1]), (leaves[1], leaves[0])] {
            // (b): one leaf K, other leaf K or N, middle any
            if matches!(ty[a], ClassType::K) && !is_one(ty[b]) {
                return Ok(Some(FamilyMatch::new("JAN-G2b", role_params(&tg, &[a, mid, b]))));
            }
        }
    }

    // G3: paw quotient (triangle with a pendant edge)
    let paw = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
    if same(&paw) {
        let hub = (0..nq).find(|&v| q.degree(v) == 3).unwrap();
        let leaf = (0..nq).find(|&v| q.degree(v) == 1).unwrap();
        let deg2: Vec<usize> = (0..nq).filter(|&v| q.degree(v) == 2).collect();
        for &(n_side, other) in &[(deg2[0], deg2[1]), (deg2[1], deg2[0])] {
            let base = matches!(ty[n_side], ClassType::N) && is_1k(ty[other]) && is_1n(ty[leaf]);
            // a degree-2 vertex of type K forbids N on the leaf and the hub
            let extra = !matches!(ty[other], ClassType::K)
                || (!matches!(ty[leaf], ClassType::N) && !matches!(ty[hub], ClassType::N));
            if base && extra {
                return Ok(Some(FamilyMatch::new(
                    "JAN-G3",
                    role_params(&tg, &[hub, n_side, other, leaf]),
                )));
            }
        }
    }

    // G4: C_5 quotient, every vertex type (1)
    if same(&family(&FamilyDescriptor::Cycle(5))) && ty.iter().all(|&t| is_one(t)) {
        let roles: Vec<usize> = (0..nq).collect();
        return Ok(Some(FamilyMatch::new("JAN-G4", role_params(&tg, &roles))));
    }

    // G5: house (C_5 plus a chord): adjacent degree-2 pair of type (1),
    // the chord triangle of type (1K)
    let house = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (3, 4)]).unwrap();
    if same(&house) {
        let deg3: Vec<usize> = (0..nq).filter(|&v| q.degree(v) == 3).collect();
        let mid = (0..nq)
            .find(|&v| q.degree(v) == 2 && q.has_edge(v, deg3[0]) && q.has_edge(v, deg3[1]))
            .unwrap();
        let pair: Vec<usize> = (0..nq).filter(|&v| v != mid && q.degree(v) == 2).collect();
        if is_one(ty[pair[0]])
            && is_one(ty[pair[1]])
            && is_1k(ty[deg3[0]])
            && is_1k(ty[deg3[1]])
            && is_1k(ty[mid])
        {
            return Ok(Some(FamilyMatch::new(
                "JAN-G5",
                role_params(&tg, &[deg3[0], deg3[1], mid, pair[0], pair[1]]),
            )));
        }
    }

    // G6: gem (K_1 + P_4): path of type (1K), no two non-adjacent K
    // vertices, no K-N edge anywhere
    let gem = Graph::from_edges(
        5,
        &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)],
    )
    .unwrap();
    if same(&gem) {
        let hub = (0..nq).find(|&v| q.degree(v) == 4).unwrap();
        let path: Vec<usize> = (0..nq).filter(|&v| v != hub).collect();
        if path.iter().all(|&v| is_1k(ty[v])) {
            let no_nonadjacent_k = (0..nq).all(|u| {
                ((u + 1)..nq).all(|v| {
                    q.has_edge(u, v)
                        || !(matches!(ty[u], ClassType::K) && matches!(ty[v], ClassType::K))
                })
            });
            let no_kn_edge = q.edges().iter().all(|&(u, v)| {
                !(matches!(ty[u], ClassType::K) && matches!(ty[v], ClassType::N))
                    && !(matches!(ty[u], ClassType::N) && matches!(ty[v], ClassType::K))
            });
            if no_nonadjacent_k && no_kn_edge {
                // order the path p1-p2-p3-p4 within the gem
                let ends: Vec<usize> = path.iter().copied().filter(|&v| q.degree(v) == 2).collect();
                let p1 = ends[0];
                let p2 = path.iter().copied().find(|&v| q.has_edge(p1, v)).unwrap();
                let p3 = path
                    .iter()
                    .copied()
                    .find(|&v| v != p1 && q.has_edge(p2, v))
                    .unwrap();
                let p4 = ends[1];
                return Ok(Some(FamilyMatch::new(
                    "JAN-G6",
                    role_params(&tg, &[hub, p1, p2, p3, p4]),
                )));
            }
        }
    }

    // G7: K_4 - e with a pendant at a degree-3 vertex; leaf (1), high-degree
    // vertices (1K), one degree-2 vertex (K) and the other (1)
    let g7 = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (0, 4)]).unwrap();
    if same(&g7) {
        let v4 = (0..nq).find(|&v| q.degree(v) == 4).unwrap();
        let v3 = (0..nq).find(|&v| q.degree(v) == 3).unwrap();
        let leaf = (0..nq).find(|&v| q.degree(v) == 1).unwrap();
        let deg2: Vec<usize> = (0..nq).filter(|&v| q.degree(v) == 2).collect();
        for &(kk, one) in &[(deg2[0], deg2[1]), (deg2[1], deg2[0])] {
            if is_one(ty[leaf])
                && is_1k(ty[v4])
                && is_1k(ty[v3])
                && matches!(ty[kk], ClassType::K)
                && is_one(ty[one])
            {
                return Ok(Some(FamilyMatch::new(
                    "JAN-G7",
                    role_params(&tg, &[v4, v3, kk, one, leaf]),
                )));
            }
        }
    }

    // G8: K_4 - e; degree-2 vertices (K)/(1), degree-3 vertices (N)/(1K)
    let diamond = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
    if same(&diamond) {
        let deg3: Vec<usize> = (0..nq).filter(|&v| q.degree(v) == 3).collect();
        let deg2: Vec<usize> = (0..nq).filter(|&v| q.degree(v) == 2).collect();
        for &(kk, one) in &[(deg2[0], deg2[1]), (deg2[1], deg2[0])] {
            for &(nn, other3) in &[(deg3[0], deg3[1]), (deg3[1], deg3[0])] {
                if matches!(ty[kk], ClassType::K)
                    && is_one(ty[one])
                    && matches!(ty[nn], ClassType::N)
                    && is_1k(ty[other3])
                {
                    return Ok(Some(FamilyMatch::new(
                        "JAN-G8",
                        role_params(&tg, &[nn, other3, kk, one]),
                    )));
                }
            }
        }
    }

    // G9: C_4; two adjacent vertices (K), the others (1)
    if same(&family(&FamilyDescriptor::Cycle(4))) {
        for (u, v) in q.edges() {
            let others: Vec<usize> = (0..nq).filter(|&w| w != u && w != v).collect();
            if matches!(ty[u], ClassType::K)
                && matches!(ty[v], ClassType::K)
                && others.iter().all(|&w| is_one(ty[w]))
            {
                return Ok(Some(FamilyMatch::new(
                    "JAN-G9",
                    role_params(&tg, &[u, v, others[0], others[1]]),
                )));
            }
        }
    }

    // G10: C_4 + K_1 (the 4-wheel); two adjacent degree-3 vertices (K),
    // hub (1K), the other two (1)
    let w4 = family(&FamilyDescriptor::Wheel(4));
    if same(&w4) {
        let hub = (0..nq).find(|&v| q.degree(v) == 4).unwrap();
        for (u, v) in q.edges() {
            if u == hub || v == hub {
                continue;
            }
            let others: Vec<usize> = (0..nq)
                .filter(|&w| w != u && w != v && w != hub)
                .collect();
            if matches!(ty[u], ClassType::K)
                && matches!(ty[v], ClassType::K)
                && is_1k(ty[hub])
                && others.iter().all(|&w| is_one(ty[w]))
            {
                return Ok(Some(FamilyMatch::new(
                    "JAN-G10",
                    role_params(&tg, &[u, v, others[0], others[1], hub]),
                )));
            }
        }
    }

    Ok(None)
}

/// Vertex order of a path graph, or `None` if the graph is not a path.
fn path_order(q: &Graph) -> Option<Vec<usize>> {
    let n = q.n();
    if n == 1 {
        return Some(vec![0]);
    }
    if q.edge_count() != n - 1 || !q.is_connected() || q.vertices().any(|v| q.degree(v) > 2) {
        return None;
    }
    let start = q.vertices().find(|&v| q.degree(v) == 1)?;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = q.neighbors(start).next().unwrap();
    while order.len() < n {
        order.push(cur);
        if let Some(next) = q.neighbors(cur).find(|&w| w != prev) {
            prev = cur;
            cur = next;
        } else {
            break;
        }
    }
    (order.len() == n).then_some(order)
}

/// Matches the diameter->=3, dim = n-d quotient shapes.
pub fn match_hernando(g: &Graph) -> Result<Option<FamilyMatch>, ClassifyError> {
    if !g.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    let diam = all_pairs_distances(g).diameter();
    let d = match diam {
        Some(d) if d >= 3 => d as usize,
        other => {
            return Err(ClassifyError::WrongDiameter {
                expected: ">= 3",
                got: other,
            })
        }
    };
    let tg = twin_graph(g);
    let q = &tg.quotient;
    let ty = &tg.types;
    let nq = q.n();

    // (a): quotient is the path P_{d+1}
    if nq == d + 1 {
        if let Some(order) = path_order(q) {
            let non_one: Vec<usize> = (0..order.len())
                .filter(|&i| !is_one(ty[order[i]]))
                .collect();
            let alpha = non_one.len();
            let params = role_params(&tg, &order);
            if alpha <= 1 {
                return Ok(Some(FamilyMatch::new("HER-a1", params)));
            }
            if alpha == 2 {
                let (i, j) = (non_one[0], non_one[1]);
                if j == i + 1 {
                    // adjacent; a leaf of type K forces the other to be K too
                    let leaf_k_ok = |a: usize, b: usize| {
                        let a_is_leaf = a == 0 || a == order.len() - 1;
                        !(a_is_leaf && matches!(ty[order[a]], ClassType::K))
                            || matches!(ty[order[b]], ClassType::K)
                    };
                    if leaf_k_ok(i, j) && leaf_k_ok(j, i) {
                        return Ok(Some(FamilyMatch::new("HER-a2", params)));
                    }
                }
                if j == i + 2
                    && matches!(ty[order[i]], ClassType::N)
                    && matches!(ty[order[j]], ClassType::N)
                {
                    return Ok(Some(FamilyMatch::new("HER-a3", params)));
                }
            }
            if alpha == 3 {
                let center_ok = (1..order.len() - 1).any(|i| {
                    !is_one(ty[order[i]])
                        && matches!(ty[order[i - 1]], ClassType::N)
                        && matches!(ty[order[i + 1]], ClassType::N)
                });
                if center_ok {
                    return Ok(Some(FamilyMatch::new("HER-a4", params)));
                }
            }
        }
    }

    // (b) and (c): path plus one extra vertex
    if nq == d + 2 {
        // (b): tree with one degree-3 vertex and a pendant leaf x at it
        if q.edge_count() == nq - 1 {
            let deg3: Vec<usize> = (0..nq).filter(|&v| q.degree(v) == 3).collect();
            let max_deg = (0..nq).map(|v| q.degree(v)).max().unwrap();
            if deg3.len() == 1 && max_deg == 3 {
                let b = deg3[0];
                for x in q.neighbors(b).filter(|&x| q.degree(x) == 1) {
                    let rest: u64 = (0..nq).filter(|&v| v != x).fold(0, |m, v| m | 1 << v);
                    let (sub, verts) = q.induced(rest);
                    if let Some(sub_order) = path_order(&sub) {
                        let order: Vec<usize> = sub_order.into_iter().map(|v| verts[v]).collect();
                        for oriented in [order.clone(), order.iter().rev().copied().collect()] {
                            let pos = oriented.iter().position(|&v| v == b).unwrap();
                            let k = pos + 1;
                            if !(3..=d - 1).contains(&k) {
                                continue;
                            }
                            let neighbors_ok = q
                                .neighbors(b)
                                .all(|w| is_1n(ty[w]));
                            let others_ok = (0..nq).all(|v| {
                                v == b || q.has_edge(v, b) || is_one(ty[v])
                            });
                            if neighbors_ok && others_ok {
                                let mut roles = oriented.clone();
                                roles.push(x);
                                let mut params = vec![k];
                                params.extend(role_params(&tg, &roles));
                                return Ok(Some(FamilyMatch::new("HER-b", params)));
                            }
                        }
                    }
                }
            }
        }
        // (c): unicyclic with a triangle; the extra vertex x has degree 2
        if q.edge_count() == nq {
            for x in 0..nq {
                if q.degree(x) != 2 {
                    continue;
                }
                let nbrs: Vec<usize> = q.neighbors(x).collect();
                if !q.has_edge(nbrs[0], nbrs[1]) {
                    continue;
                }
                let rest: u64 = (0..nq).filter(|&v| v != x).fold(0, |m, v| m | 1 << v);
                let (sub, verts) = q.induced(rest);
                if let Some(sub_order) = path_order(&sub) {
                    let order: Vec<usize> = sub_order.into_iter().map(|v| verts[v]).collect();
                    for oriented in [order.clone(), order.iter().rev().copied().collect()] {
                        let p0 = oriented.iter().position(|&v| v == nbrs[0]).unwrap();
                        let p1 = oriented.iter().position(|&v| v == nbrs[1]).unwrap();
                        let (lo, hi) = (p0.min(p1), p0.max(p1));
                        if hi != lo + 1 {
                            continue;
                        }
                        let k = lo + 1;
                        if !(2..=d - 1).contains(&k) {
                            continue;
                        }
                        let cycle_ok =
                            is_1k(ty[x]) && is_1k(ty[oriented[lo]]) && is_1k(ty[oriented[hi]]);
                        let others_ok = (0..nq)
                            .all(|v| v == x || v == oriented[lo] || v == oriented[hi] || is_one(ty[v]));
                        if cycle_ok && others_ok {
                            let mut roles = oriented.clone();
                            roles.push(x);
                            let mut params = vec![k];
                            params.extend(role_params(&tg, &roles));
                            return Ok(Some(FamilyMatch::new("HER-c", params)));
                        }
                    }
                }
            }
        }
    }

    Ok(None)
}

/// Expands a quotient template: class `i` becomes `sizes[i]` vertices
/// inducing K (type 2) or nothing (types 1 and 3), with all cross edges
/// along template edges.
pub fn blow_up(template: &Graph, sizes: &[usize], types: &[usize]) -> Graph {
    assert_eq!(template.n(), sizes.len());
    assert_eq!(template.n(), types.len());
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut n = 0usize;
    for &s in sizes {
        offsets.push(n);
        n += s;
    }
    let mut edges = Vec::new();
    for (i, &ty) in types.iter().enumerate() {
        if ty == TYPE_K {
            for a in 0..sizes[i] {
                for b in (a + 1)..sizes[i] {
                    edges.push((offsets[i] + a, offsets[i] + b));
                }
            }
        }
    }
    for (i, j) in template.edges() {
        for a in 0..sizes[i] {
            for b in 0..sizes[j] {
                edges.push((offsets[i] + a, offsets[j] + b));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("blow-up stays within the vertex width")
}

fn unpack_sized_types(params: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let sizes: Vec<usize> = params.iter().step_by(2).copied().collect();
    let types: Vec<usize> = params.iter().skip(1).step_by(2).copied().collect();
    (sizes, types)
}

/// Reinstantiates the family named by a match; the result is isomorphic to
/// the graph the match was reported for.
pub fn rebuild_match(m: &FamilyMatch) -> Option<Graph> {
    use FamilyDescriptor::*;
    let p = &m.params;
    let g = match m.label.as_str() {
        "Kn" | "DN-Kn" => family(&Complete(p[0])),
        "DN-Kn-bar" => family(&Empty(p[0])),
        "T3-Kst" | "LEMN2-a" | "LEMN2-b" => family(&CompleteBipartite(p[0], p[1])),
        "T3-KsNt" | "LEMN2-c" | "LEMN2-d" => {
            family(&Complete(p[0])).join(&family(&Empty(p[1]))).unwrap()
        }
        "T3-KsK1Kt" | "LEMN2-e" | "LEMN2-f" => {
            let rest = family(&Complete(1)).disjoint_union(&family(&Complete(p[1]))).unwrap();
            family(&Complete(p[0])).join(&rest).unwrap()
        }
        "DN1-C4" => family(&Cycle(4)),
        "DN1-2K2" => family(&Complete(2)).disjoint_union(&family(&Complete(2))).unwrap(),
        "DN1-Kt1" => family(&Star(p[0])),
        "DN1-KtK1" => family(&Complete(p[0])).disjoint_union(&family(&Complete(1))).unwrap(),
        "DN2-item1" => family(&Cycle(5)),
        "DN2-item2" => family(&Path(4)),
        "DN2-item3" => family(&CompleteMultipartite(vec![1, 2, 2])),
        "DN2-item4" => {
            let two_k2 = family(&Complete(2)).disjoint_union(&family(&Complete(2))).unwrap();
            two_k2.disjoint_union(&family(&Complete(1))).unwrap()
        }
        "DN2-item5" => family(&CompleteBipartite(3, 3)),
        "DN2-item6" => family(&Complete(3)).disjoint_union(&family(&Complete(3))).unwrap(),
        "DN2-item7" => family(&CompleteBipartite(2, p[0])),
        "DN2-item8" => family(&Complete(p[0])).disjoint_union(&family(&Complete(2))).unwrap(),
        "DN2-item9" => family(&Complete(2)).join(&family(&Empty(p[0]))).unwrap(),
        "DN2-item10" => family(&Complete(p[0])).disjoint_union(&family(&Empty(2))).unwrap(),
        "DN2-item11" => family(&Complete(p[0])).join(&family(&Empty(2))).unwrap(),
        "DN2-item12" => family(&Empty(p[0])).disjoint_union(&family(&Complete(2))).unwrap(),
        "DN2-item13" => {
            let rest = family(&Complete(p[0])).disjoint_union(&family(&Complete(1))).unwrap();
            family(&Complete(1)).join(&rest).unwrap()
        }
        "DN2-item14" => family(&Star(p[0])).disjoint_union(&family(&Complete(1))).unwrap(),
        "JAN-G1" => {
            let (sizes, types) = unpack_sized_types(p);
            blow_up(&family(&Complete(3)), &sizes, &types)
        }
        "JAN-G2a" | "JAN-G2b" => {
            let (sizes, types) = unpack_sized_types(p);
            // roles: leaf, mid, leaf
            let t = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
            blow_up(&t, &sizes, &types)
        }
        "JAN-G3" => {
            let (sizes, types) = unpack_sized_types(p);
            // roles: hub, deg2-N, deg2-other, leaf
            let t = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
            blow_up(&t, &sizes, &types)
        }
        "JAN-G4" => {
            let (sizes, types) = unpack_sized_types(p);
            blow_up(&family(&Cycle(5)), &sizes, &types)
        }
        "JAN-G5" => {
            let (sizes, types) = unpack_sized_types(p);
            // roles: deg3, deg3, middle deg2, pair, pair
            let t = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (3, 4)]).unwrap();
            blow_up(&t, &sizes, &types)
        }
        "JAN-G6" => {
            let (sizes, types) = unpack_sized_types(p);
            // roles: hub, p1, p2, p3, p4
            let t = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)])
                .unwrap();
            blow_up(&t, &sizes, &types)
        }
        "JAN-G7" => {
            let (sizes, types) = unpack_sized_types(p);
            // roles: deg4, deg3, deg2-K, deg2-1, leaf
            let t = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (0, 4)]).unwrap();
            blow_up(&t, &sizes, &types)
        }
        "JAN-G8" => {
            let (sizes, types) = unpack_sized_types(p);
            // roles: deg3-N, deg3-other, deg2-K, deg2-1
            let t = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
            blow_up(&t, &sizes, &types)
        }
        "JAN-G9" => {
            let (sizes, types) = unpack_sized_types(p);
            // roles: K-edge endpoints, then the opposite edge
            let t = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
            blow_up(&t, &sizes, &types)
        }
        "JAN-G10" => {
            let (sizes, types) = unpack_sized_types(p);
            // roles: K-edge endpoints, opposite edge, hub
            let t = Graph::from_edges(
                5,
                &[(0, 1), (0, 2), (1, 3), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)],
            )
            .unwrap();
            blow_up(&t, &sizes, &types)
        }
        "HER-a1" | "HER-a2" | "HER-a3" | "HER-a4" => {
            let (sizes, types) = unpack_sized_types(p);
            blow_up(&family(&Path(sizes.len())), &sizes, &types)
        }
        "HER-b" => {
            let k = p[0];
            let (sizes, types) = unpack_sized_types(&p[1..]);
            let nq = sizes.len();
            let mut edges: Vec<(usize, usize)> = (1..nq - 1).map(|i| (i - 1, i)).collect();
            edges.push((k - 1, nq - 1));
            blow_up(&Graph::from_edges(nq, &edges).unwrap(), &sizes, &types)
        }
        "HER-c" => {
            let k = p[0];
            let (sizes, types) = unpack_sized_types(&p[1..]);
            let nq = sizes.len();
            let mut edges: Vec<(usize, usize)> = (1..nq - 1).map(|i| (i - 1, i)).collect();
            edges.push((k - 1, nq - 1));
            edges.push((k, nq - 1));
            blow_up(&Graph::from_edges(nq, &edges).unwrap(), &sizes, &types)
        }
        _ => return None,
    };
    Some(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::canonical_form;
    use crate::graph::FamilyDescriptor::*;

    #[test]
    fn dim_extremal_examples() {
        let k6 = family(&Complete(6));
        let labels: Vec<String> = classify_dim_extremal(&k6)
            .unwrap()
            .into_iter()
            .map(|m| m.label)
            .collect();
        assert_eq!(labels, vec!["Kn"]);

        let c4 = family(&Cycle(4));
        let matches = classify_dim_extremal(&c4).unwrap();
        assert_eq!(matches, vec![FamilyMatch::new("T3-Kst", vec![2, 2])]);

        let star4 = family(&Star(4));
        let matches = classify_dim_extremal(&star4).unwrap();
        assert_eq!(
            matches,
            vec![
                FamilyMatch::new("T3-Kst", vec![1, 4]),
                FamilyMatch::new("T3-KsNt", vec![1, 4])
            ]
        );

        let k2 = family(&Complete(2));
        assert_eq!(
            classify_dim_extremal(&k2.disjoint_union(&k2).unwrap()),
            Err(ClassifyError::Disconnected)
        );
    }

    #[test]
    fn prop_lemn2_examples() {
        let k22 = family(&CompleteBipartite(2, 2));
        let labels: Vec<String> = classify_prop_lemn2(&k22, 1)
            .unwrap()
            .into_iter()
            .map(|m| m.label)
            .collect();
        assert_eq!(labels, vec!["LEMN2-a"]);

        let k31 = family(&CompleteBipartite(1, 3));
        let matches = classify_prop_lemn2(&k31, 1).unwrap();
        assert!(matches.contains(&FamilyMatch::new("LEMN2-b", vec![3, 1])));

        let g = family(&Complete(2)).join(&family(&Empty(4))).unwrap();
        let matches = classify_prop_lemn2(&g, 2).unwrap();
        assert_eq!(matches, vec![FamilyMatch::new("LEMN2-c", vec![2, 4])]);

        // hypothesis violations are distinct from empty matches
        let p5 = family(&Path(5));
        assert!(matches!(
            classify_prop_lemn2(&p5, 1),
            Err(ClassifyError::HypothesisViolated(_))
        ));
    }

    #[test]
    fn d_extremal_examples() {
        let e5 = family(&Empty(5));
        let labels: Vec<String> = classify_d_extremal(&e5).into_iter().map(|m| m.label).collect();
        assert_eq!(labels, vec!["DN-Kn-bar"]);

        let k2 = family(&Complete(2));
        let two_k2 = k2.disjoint_union(&k2).unwrap();
        let labels: Vec<String> = classify_d_extremal(&two_k2)
            .into_iter()
            .map(|m| m.label)
            .collect();
        assert_eq!(labels, vec!["DN1-2K2"]);

        let k42 = family(&CompleteBipartite(2, 4));
        let matches = classify_d_extremal(&k42);
        assert_eq!(matches, vec![FamilyMatch::new("DN2-item7", vec![4])]);

        // K_2 + K̄_2 = K_2 join empty: items 9 and 11 overlap at t = 2
        let g = family(&Complete(2)).join(&family(&Empty(2))).unwrap();
        let labels: Vec<String> = classify_d_extremal(&g).into_iter().map(|m| m.label).collect();
        assert!(labels.contains(&"DN2-item9".to_string()));
        assert!(labels.contains(&"DN2-item11".to_string()));
    }

    #[test]
    fn jannesari_examples() {
        let c5 = family(&Cycle(5));
        let m = match_jannesari(&c5).unwrap().unwrap();
        assert_eq!(m.label, "JAN-G4");

        // quotient P_3 with a K_2 leaf class, an N_2 middle class and a
        // singleton leaf: 5 vertices, dim = 2 = n - 3
        let g = Graph::from_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4)],
        )
        .unwrap();
        // 0,1 adjacent twins; 2,3 non-adjacent twins; 4 alone
        let m = match_jannesari(&g).unwrap().unwrap();
        assert_eq!(m.label, "JAN-G2a");
        assert_eq!(metric_dimension(&g).unwrap().k, 2);

        let petersen = crate::testgraphs::petersen();
        assert_eq!(match_jannesari(&petersen).unwrap(), None);

        let p4 = family(&Path(4));
        assert!(matches!(
            match_jannesari(&p4),
            Err(ClassifyError::WrongDiameter { .. })
        ));
    }

    #[test]
    fn hernando_examples() {
        let p4 = family(&Path(4));
        let m = match_hernando(&p4).unwrap().unwrap();
        assert_eq!(m.label, "HER-a1");

        let p6 = family(&Path(6));
        let m = match_hernando(&p6).unwrap().unwrap();
        assert_eq!(m.label, "HER-a1");

        // P'_{4,2}: path 0-1-2-3 plus 4 adjacent to 1 and 2
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (4, 1), (4, 2)]).unwrap();
        let m = match_hernando(&g).unwrap().unwrap();
        assert_eq!(m.label, "HER-c");
        assert_eq!(m.params[0], 2);
        assert_eq!(metric_dimension(&g).unwrap().k, 2);
        assert_eq!(all_pairs_distances(&g).diameter(), Some(3));

        let c4 = family(&Cycle(4));
        assert!(matches!(
            match_hernando(&c4),
            Err(ClassifyError::WrongDiameter { .. })
        ));
    }

    #[test]
    fn rebuild_round_trips() {
        let graphs: Vec<Graph> = vec![
            family(&Complete(6)),
            family(&Cycle(4)),
            family(&Star(4)),
            family(&Cycle(5)),
            family(&Path(6)),
            family(&CompleteBipartite(2, 4)),
            family(&Complete(2)).join(&family(&Empty(4))).unwrap(),
            Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap(),
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (4, 1), (4, 2)]).unwrap(),
        ];
        for g in graphs {
            let mut matches = Vec::new();
            if let Ok(ms) = classify_dim_extremal(&g) {
                matches.extend(ms);
            }
            matches.extend(classify_d_extremal(&g));
            if let Ok(Some(m)) = match_jannesari(&g) {
                matches.push(m);
            }
            if let Ok(Some(m)) = match_hernando(&g) {
                matches.push(m);
            }
            for m in matches {
                let rebuilt = rebuild_match(&m).unwrap_or_else(|| panic!("no rebuild for {m:?}"));
                assert_eq!(
                    canonical_form(&rebuilt),
                    canonical_form(&g),
                    "rebuild of {m:?} differs from input {g:?}"
                );
            }
        }
    }
}
