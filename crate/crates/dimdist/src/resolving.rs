//! Resolving sets and exact metric dimension.
//!
//! The solver works on the pair-cover view: for each unordered vertex pair
//! `{u, v}` the resolver set `R(u,v) = {s : d(s,u) != d(s,v)}` is one bit
//! mask, and a minimum resolving set is a minimum hitting set of all the
//! `R(u,v)`. Branching picks the uncovered pair with the smallest resolver
//! set; the lower bound combines the twin-class bound (a resolving set
//! omits at most one vertex per twin class) with a greedy disjoint-pair
//! packing, and a greedy cover seeds the upper bound. Among minimum bases
//! the lexicographically least one is returned, so goldens are stable.
//!
//! Metric dimension is computed for connected graphs only; disconnected
//! input is rejected rather than given a convention. For the one-vertex
//! graph the minimum is taken over nonempty sets, making dim(K_1) = 1.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::budget::Budget;
use crate::graph::{all_pairs_distances, full_mask, is_path_graph, structure_probe, BitIter, Graph};
use crate::twin::twin_partition;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolveError {
    #[error("metric dimension is only defined here for connected graphs")]
    Disconnected,
    #[error("operation requires a tree")]
    NotATree,
    #[error("tree dimension formula does not apply to paths (dim = 1)")]
    PathInput,
    #[error("solver exceeded its time budget")]
    Timeout,
}

/// A vertex subset candidate basis, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ResolvingSet(u64);

impl ResolvingSet {
    pub fn from_mask(mask: u64) -> Self {
        ResolvingSet(mask)
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> Self {
        ResolvingSet(members.into_iter().fold(0, |m, v| m | 1 << v))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn members(self) -> Vec<usize> {
        BitIter(self.0).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }
}

/// True iff all vertices have pairwise distinct distance vectors to `s`.
pub fn is_resolving_set(g: &Graph, s: ResolvingSet) -> Result<bool, ResolveError> {
    if !g.is_connected() {
        return Err(ResolveError::Disconnected);
    }
    let d = all_pairs_distances(g);
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            let resolved = BitIter(s.mask()).any(|w| d.get(w, u) != d.get(w, v));
            if !resolved {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricDimension {
    pub k: usize,
    pub basis: ResolvingSet,
}

pub fn metric_dimension(g: &Graph) -> Result<MetricDimension, ResolveError> {
    metric_dimension_within(g, &Budget::unlimited())
}

/// Deadline-aware variant; returns [`ResolveError::Timeout`] when exceeded.
pub fn metric_dimension_within(g: &Graph, budget: &Budget) -> Result<MetricDimension, ResolveError> {
    if !g.is_connected() {
        return Err(ResolveError::Disconnected);
    }
    let n = g.n();
    if n == 1 {
        return Ok(MetricDimension {
            k: 1,
            basis: ResolvingSet::from_mask(1),
        });
    }
    let resolvers = resolver_masks(g);
    let k = min_hitting_set_size(n, &resolvers, g, budget)?;
    let basis = lex_least_hitting_set(n, &resolvers, k, budget)?
        .expect("a hitting set of the optimal size exists");
    Ok(MetricDimension { k, basis })
}

/// Every minimum-size resolving set, ascending in mask order.
pub fn minimum_bases(g: &Graph) -> Result<Vec<ResolvingSet>, ResolveError> {
    if !g.is_connected() {
        return Err(ResolveError::Disconnected);
    }
    if g.n() == 1 {
        return Ok(vec![ResolvingSet::from_mask(1)]);
    }
    let budget = Budget::unlimited();
    let resolvers = resolver_masks(g);
    let k = min_hitting_set_size(g.n(), &resolvers, g, &budget)?;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    collect_hitting_sets(g.n(), &resolvers, k, 0, &mut chosen, &mut out);
    Ok(out.into_iter().map(ResolvingSet::from_mask).collect())
}

/// R(u,v) masks for all unordered pairs, minimized under set inclusion
/// (a hitting set for the minimal masks hits every superset for free).
fn resolver_masks(g: &Graph) -> Vec<u64> {
    let d = all_pairs_distances(g);
    let n = g.n();
    let mut masks = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            let mut m = 0u64;
            for s in 0..n {
                if d.get(s, u) != d.get(s, v) {
                    m |= 1 << s;
                }
            }
            masks.push(m);
        }
    }
    masks.sort_by_key(|m| m.count_ones());
    let mut minimal: Vec<u64> = Vec::new();
    for m in masks {
        if !minimal.iter().any(|&kept| is_subset(kept, m)) {
            minimal.push(m);
        }
    }
    minimal
}

#[inline]
fn is_subset(a: u64, b: u64) -> bool {
    a & b == a
}

fn min_hitting_set_size(
    n: usize,
    resolvers: &[u64],
    g: &Graph,
    budget: &Budget,
) -> Result<usize, ResolveError> {
    let mut best = greedy_cover_size(n, resolvers);
    let root_lb = twin_plus_disjoint_bound(g, resolvers);
    debug_assert!(root_lb <= best, "lower bound {root_lb} above greedy cover {best}");
    if root_lb >= best {
        return Ok(best);
    }
    bb(resolvers.to_vec(), 0, &mut best, budget)?;
    Ok(best)
}

fn greedy_cover_size(n: usize, resolvers: &[u64]) -> usize {
    let mut uncovered: Vec<u64> = resolvers.to_vec();
    let mut count = 0;
    while !uncovered.is_empty() {
        let v = (0..n)
            .max_by_key(|&v| uncovered.iter().filter(|&&m| m >> v & 1 == 1).count())
            .unwrap();
        uncovered.retain(|&m| m >> v & 1 == 0);
        count += 1;
    }
    count
}

/// Twin-class bound plus a disjoint-pair packing over resolvers that avoid
/// every non-singleton twin class, so the two parts never share a vertex.
fn twin_plus_disjoint_bound(g: &Graph, resolvers: &[u64]) -> usize {
    let partition = twin_partition(g);
    let mut twin_union = 0u64;
    let mut twin_bound = 0usize;
    for class in &partition.classes {
        if class.len() >= 2 {
            twin_bound += class.len() - 1;
            for &v in class {
                twin_union |= 1 << v;
            }
        }
    }
    let outside: Vec<u64> = resolvers
        .iter()
        .copied()
        .filter(|m| m & twin_union == 0)
        .collect();
    let combined = twin_bound + greedy_disjoint_bound(&outside);
    combined.max(greedy_disjoint_bound(resolvers))
}

fn greedy_disjoint_bound(resolvers: &[u64]) -> usize {
    let mut taken = 0u64;
    let mut count = 0;
    for &m in resolvers {
        if m & taken == 0 {
            taken |= m;
            count += 1;
        }
    }
    count
}

fn bb(uncovered: Vec<u64>, chosen: usize, best: &mut usize, budget: &Budget) -> Result<(), ResolveError> {
    if budget.expired() {
        return Err(ResolveError::Timeout);
    }
    if uncovered.is_empty() {
        *best = (*best).min(chosen);
        return Ok(());
    }
    if chosen + greedy_disjoint_bound(&uncovered) >= *best {
        return Ok(());
    }
    // branch on the pair hardest to hit
    let pivot = *uncovered.iter().min_by_key(|m| m.count_ones()).unwrap();
    for s in BitIter(pivot) {
        let rest: Vec<u64> = uncovered
            .iter()
            .copied()
            .filter(|m| m >> s & 1 == 0)
            .collect();
        bb(rest, chosen + 1, best, budget)?;
    }
    Ok(())
}

/// Lexicographically least hitting set of exactly `k` vertices.
fn lex_least_hitting_set(
    n: usize,
    resolvers: &[u64],
    k: usize,
    budget: &Budget,
) -> Result<Option<ResolvingSet>, ResolveError> {
    fn dfs(
        n: usize,
        start: usize,
        k: usize,
        chosen: &mut Vec<usize>,
        uncovered: &[u64],
        budget: &Budget,
    ) -> Result<Option<u64>, ResolveError> {
        if budget.expired() {
            return Err(ResolveError::Timeout);
        }
        if uncovered.is_empty() {
            return Ok(Some(chosen.iter().fold(0u64, |m, &v| m | 1 << v)));
        }
        if chosen.len() == k {
            return Ok(None);
        }
        if chosen.len() + greedy_disjoint_bound(uncovered) > k {
            return Ok(None);
        }
        // every pair must stay hittable by the remaining vertex range
        let tail = full_mask(n) & !full_mask(start);
        if uncovered.iter().any(|&m| m & tail == 0) {
            return Ok(None);
        }
        for v in start..n {
            // a member of a minimum set always hits something new
            if !uncovered.iter().any(|&m| m >> v & 1 == 1) {
                continue;
            }
            chosen.push(v);
            let rest: Vec<u64> = uncovered
                .iter()
                .copied()
                .filter(|m| m >> v & 1 == 0)
                .collect();
            if let Some(found) = dfs(n, v + 1, k, chosen, &rest, budget)? {
                return Ok(Some(found));
            }
            chosen.pop();
        }
        Ok(None)
    }
    let mut chosen = Vec::new();
    Ok(dfs(n, 0, k, &mut chosen, resolvers, budget)?.map(ResolvingSet::from_mask))
}

fn collect_hitting_sets(
    n: usize,
    uncovered: &[u64],
    slots: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<u64>,
) {
    if uncovered.is_empty() {
        if slots == 0 {
            out.push(chosen.iter().fold(0u64, |m, &v| m | 1 << v));
        }
        return;
    }
    if slots == 0 || greedy_disjoint_bound(uncovered) > slots {
        return;
    }
    for v in start..n {
        if !uncovered.iter().any(|&m| m >> v & 1 == 1) {
            continue;
        }
        chosen.push(v);
        let rest: Vec<u64> = uncovered
            .iter()
            .copied()
            .filter(|m| m >> v & 1 == 0)
            .collect();
        collect_hitting_sets(n, &rest, slots - 1, v + 1, chosen, out);
        chosen.pop();
    }
}

/// Tree vocabulary feeding the closed-form dimension: leaves, branches,
/// terminal degrees, legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeFeatures {
    pub leaves: Vec<usize>,
    /// Vertices of degree >= 3.
    pub branches: Vec<usize>,
    /// Branch -> number of leaves strictly closest to it.
    pub terminal_degree: BTreeMap<usize, usize>,
    /// Branches with terminal degree >= 1 (the set the dimension formula
    /// counts).
    ///
    /// The witness construction instead wants branches carrying at least
    /// two legs; use [`TreeFeatures::strongly_external_branches`] for that.
    pub external_branches: Vec<usize>,
    /// Leaf -> its nearest branch (empty for paths, which have no branch).
    pub ancestor: BTreeMap<usize, usize>,
    /// Leaf-to-ancestor paths, leaf first, ancestor last.
    pub legs: Vec<Vec<usize>>,
}

impl TreeFeatures {
    /// ℓ(T): the number of leaves.
    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    /// ex(T): the number of external branches.
    pub fn external_count(&self) -> usize {
        self.external_branches.len()
    }

    /// Branches with terminal degree >= 2.
    pub fn strongly_external_branches(&self) -> Vec<usize> {
        self.external_branches
            .iter()
            .copied()
            .filter(|b| self.terminal_degree[b] >= 2)
            .collect()
    }
}

pub fn tree_features(t: &Graph) -> Result<TreeFeatures, ResolveError> {
    if !structure_probe(t).tree {
        return Err(ResolveError::NotATree);
    }
    let leaves: Vec<usize> = t.vertices().filter(|&v| t.degree(v) == 1).collect();
    let branches: Vec<usize> = t.vertices().filter(|&v| t.degree(v) >= 3).collect();
    let mut terminal_degree: BTreeMap<usize, usize> =
        branches.iter().map(|&b| (b, 0)).collect();
    let mut ancestor = BTreeMap::new();
    let mut legs = Vec::new();
    if !branches.is_empty() {
        for &leaf in &leaves {
            // walk from the leaf until the first branch
            let mut path = vec![leaf];
            let mut prev = leaf;
            let mut cur = t.neighbors(leaf).next().unwrap();
            while t.degree(cur) == 2 {
                path.push(cur);
                let next = t
                    .neighbors(cur)
                    .find(|&w| w != prev)
                    .expect("degree-2 vertex has another neighbor");
                prev = cur;
                cur = next;
            }
            debug_assert!(t.degree(cur) >= 3, "walk from a leaf of a non-path tree ends at a branch");
            path.push(cur);
            *terminal_degree.get_mut(&cur).unwrap() += 1;
            ancestor.insert(leaf, cur);
            legs.push(path);
        }
    }
    let external_branches = branches
        .iter()
        .copied()
        .filter(|b| terminal_degree[b] >= 1)
        .collect();
    Ok(TreeFeatures {
        leaves,
        branches,
        terminal_degree,
        external_branches,
        ancestor,
        legs,
    })
}

/// dim(T) = ℓ(T) − ex(T) for trees that are not paths.
pub fn tree_dimension(t: &Graph) -> Result<usize, ResolveError> {
    if is_path_graph(t) {
        return Err(ResolveError::PathInput);
    }
    let f = tree_features(t)?;
    Ok(f.leaf_count() - f.external_count())
}
