//! Automorphism enumeration and isomorph-canonical labeling.
//!
//! Both rest on the same machinery: equitable refinement of a vertex
//! coloring (iterated neighbor-multiset splitting) followed by a
//! backtracking search. The automorphism search maps vertices in refined
//! color order and prunes candidates by color and by adjacency with the
//! mapped prefix. The canonical search individualizes one vertex of the
//! first largest non-singleton cell at a time and keeps the
//! lexicographically least certificate; within a cell it branches on only
//! one representative per twin class (transposing twins is always an
//! automorphism, so the skipped branches repeat certificates).
//!
//! Full element listing is intended for the solver range (n <= 12 or so).
//! Complete and empty graphs are special-cased: order n! with the full list
//! materialized only for n <= 8; larger ones report adjacent transpositions
//! as generators, and [`AutGroup::materialize`] closes them on demand.

use thiserror::Error;

use crate::graph::{BitIter, Graph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutError {
    #[error("size mismatch: graph has {graph} vertices, argument has {arg}")]
    SizeMismatch { graph: usize, arg: usize },
    #[error("image is not a bijection on [0,{n})")]
    NotABijection { n: usize },
}

/// A bijection on `[0, n)`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self, AutError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(AutError::NotABijection { n });
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `(self ∘ other)(v) = self(other(v))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other.image.iter().map(|&v| self.image[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Permutation { image }
    }

    /// Adjacency preservation: `uv ∈ E ⇔ p(u)p(v) ∈ E`.
    pub fn is_automorphism(&self, g: &Graph) -> bool {
        if self.n() != g.n() {
            return false;
        }
        for u in 0..g.n() {
            for v in (u + 1)..g.n() {
                if g.has_edge(u, v) != g.has_edge(self.image[u], self.image[v]) {
                    return false;
                }
            }
        }
        true
    }
}

/// True iff `p` preserves adjacency and `c(p(v)) = c(v)` for every vertex.
pub fn is_color_preserving_automorphism(
    g: &Graph,
    colors: &[u32],
    p: &Permutation,
) -> Result<bool, AutError> {
    if colors.len() != g.n() {
        return Err(AutError::SizeMismatch {
            graph: g.n(),
            arg: colors.len(),
        });
    }
    if p.n() != g.n() {
        return Err(AutError::SizeMismatch {
            graph: g.n(),
            arg: p.n(),
        });
    }
    Ok((0..g.n()).all(|v| colors[p.apply(v)] == colors[v]) && p.is_automorphism(g))
}

/// Refines `colors` to the coarsest stable partition where every vertex's
/// multiset of neighbor colors is constant on each class. New color ids are
/// ranks of sorted signatures, so they are independent of vertex labels.
pub(crate) fn refine_colors(g: &Graph, colors: &[u32]) -> Vec<u32> {
    let n = g.n();
    let mut colors = colors.to_vec();
    let mut class_count = distinct_count(&colors);
    loop {
        // signature of v: (own color, sorted neighbor colors)
        let mut sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nbr: Vec<u32> = g.neighbors(v).map(|u| colors[u]).collect();
                nbr.sort_unstable();
                (colors[v], nbr)
            })
            .collect();
        let mut sorted: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<u32> = (0..n)
            .map(|v| sorted.binary_search(&&sigs[v]).unwrap() as u32)
            .collect();
        let next_count = sorted.len();
        sigs.clear();
        if next_count == class_count {
            return next;
        }
        colors = next;
        class_count = next_count;
    }
}

fn distinct_count(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

enum SearchMode {
    CollectAll,
    FindNonIdentity,
}

struct AutSearch<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    refined: Vec<u32>,
    img: Vec<usize>,
    used: u64,
    assigned_src: u64,
    assigned_img: u64,
    found: Vec<Permutation>,
    stop_at_nonidentity: bool,
    hit_nonidentity: bool,
}

impl<'a> AutSearch<'a> {
    fn new(g: &'a Graph, init: &[u32], mode: SearchMode) -> Self {
        let refined = refine_colors(g, init);
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by_key(|&v| (refined[v], v));
        AutSearch {
            g,
            order,
            refined,
            img: vec![usize::MAX; g.n()],
            used: 0,
            assigned_src: 0,
            assigned_img: 0,
            found: Vec::new(),
            stop_at_nonidentity: matches!(mode, SearchMode::FindNonIdentity),
            hit_nonidentity: false,
        }
    }

    fn run(&mut self) {
        self.dfs(0);
    }

    fn dfs(&mut self, depth: usize) {
        if self.stop_at_nonidentity && self.hit_nonidentity {
            return;
        }
        if depth == self.g.n() {
            let p = Permutation {
                image: self.img.clone(),
            };
            if !p.is_identity() {
                self.hit_nonidentity = true;
            }
            if !self.stop_at_nonidentity || self.hit_nonidentity {
                self.found.push(p);
            }
            return;
        }
        let v = self.order[depth];
        // image bits of v's already-mapped neighbors; every candidate must
        // show exactly this adjacency into the mapped image set
        let mut expected = 0u64;
        for u in BitIter(self.g.neighbor_mask(v) & self.assigned_src) {
            expected |= 1 << self.img[u];
        }
        for w in 0..self.g.n() {
            if self.used >> w & 1 == 1 || self.refined[w] != self.refined[v] {
                continue;
            }
            if self.g.neighbor_mask(w) & self.assigned_img != expected {
                continue;
            }
            self.img[v] = w;
            self.used |= 1 << w;
            self.assigned_src |= 1 << v;
            self.assigned_img |= 1 << w;
            self.dfs(depth + 1);
            self.img[v] = usize::MAX;
            self.used &= !(1 << w);
            self.assigned_src &= !(1 << v);
            self.assigned_img &= !(1 << w);
            if self.stop_at_nonidentity && self.hit_nonidentity {
                return;
            }
        }
    }
}

/// True iff some automorphism other than the identity preserves `colors`.
pub(crate) fn has_nontrivial_color_preserving_automorphism(g: &Graph, colors: &[u32]) -> bool {
    let mut search = AutSearch::new(g, colors, SearchMode::FindNonIdentity);
    search.run();
    search.hit_nonidentity
}

/// Either the complete element list or a generating set.
#[derive(Clone, Debug)]
pub enum GroupElements {
    Full(Vec<Permutation>),
    Generators(Vec<Permutation>),
}

/// The (color-preserving) automorphism group of a graph.
#[derive(Clone, Debug)]
pub struct AutGroup {
    order: u128,
    elements: GroupElements,
    orbits: Vec<Vec<usize>>,
}

impl AutGroup {
    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// The full element list, when it was materialized.
    pub fn elements(&self) -> Option<&[Permutation]> {
        match &self.elements {
            GroupElements::Full(v) => Some(v),
            GroupElements::Generators(_) => None,
        }
    }

    /// A generating set (the full list doubles as one).
    pub fn generators(&self) -> &[Permutation] {
        match &self.elements {
            GroupElements::Full(v) => v,
            GroupElements::Generators(v) => v,
        }
    }

    /// Vertex orbits of the generated group, each sorted, ordered by minimum.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Closes the generators into the full element list on demand.
    pub fn materialize(&self) -> Vec<Permutation> {
        match &self.elements {
            GroupElements::Full(v) => v.clone(),
            GroupElements::Generators(gens) => {
                let n = gens.first().map_or(1, Permutation::n);
                let mut all = vec![Permutation::identity(n)];
                let mut seen: std::collections::HashSet<Vec<usize>> =
                    all.iter().map(|p| p.image.clone()).collect();
                let mut queue = 0usize;
                while queue < all.len() {
                    let cur = all[queue].clone();
                    queue += 1;
                    for gen in gens {
                        let next = gen.compose(&cur);
                        if seen.insert(next.image.clone()) {
                            all.push(next);
                        }
                    }
                }
                all
            }
        }
    }
}

/// The automorphism group of `g`.
pub fn automorphisms(g: &Graph) -> AutGroup {
    let m = g.edge_count();
    let max_m = g.n() * (g.n() - 1) / 2;
    if m == 0 || m == max_m {
        return symmetric_group(g.n());
    }
    automorphisms_with_colors(g, &vec![0; g.n()])
}

/// The group of automorphisms preserving the given vertex colors.
pub fn automorphisms_with_colors(g: &Graph, colors: &[u32]) -> AutGroup {
    assert_eq!(colors.len(), g.n(), "coloring must assign every vertex a color");
    let mut search = AutSearch::new(g, colors, SearchMode::CollectAll);
    search.run();
    let elements = search.found;
    let orbits = orbits_of(g.n(), &elements);
    AutGroup {
        order: elements.len() as u128,
        elements: GroupElements::Full(elements),
        orbits,
    }
}

/// Sym(n) for complete and empty graphs: listed fully only for n <= 8.
fn symmetric_group(n: usize) -> AutGroup {
    let order = (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k)).unwrap_or_else(|| {
        panic!("automorphism group order {n}! exceeds u128");
    });
    let elements = if n <= 8 {
        GroupElements::Full(all_permutations(n))
    } else {
        let gens = (0..n - 1)
            .map(|i| {
                let mut image: Vec<usize> = (0..n).collect();
                image.swap(i, i + 1);
                Permutation { image }
            })
            .collect();
        GroupElements::Generators(gens)
    };
    let orbits = if n == 1 {
        vec![vec![0]]
    } else {
        vec![(0..n).collect()]
    };
    AutGroup {
        order,
        elements,
        orbits,
    }
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut image: Vec<usize> = (0..n).collect();
    heap_permute(&mut image, n, &mut out);
    out
}

fn heap_permute(image: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k <= 1 {
        out.push(Permutation {
            image: image.clone(),
        });
        return;
    }
    for i in 0..k {
        heap_permute(image, k - 1, out);
        if k.is_multiple_of(2) {
            image.swap(i, k - 1);
        } else {
            image.swap(0, k - 1);
        }
    }
}

fn orbits_of(n: usize, perms: &[Permutation]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        if parent[v] != v {
            let root = find(parent, parent[v]);
            parent[v] = root;
        }
        parent[v]
    }
    for p in perms {
        for v in 0..n {
            let (a, b) = (find(&mut parent, v), find(&mut parent, p.apply(v)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        let root = find(&mut parent, v);
        groups.entry(root).or_default().push(v);
    }
    groups.into_values().collect()
}

/// A total-order key identifying the isomorphism class of a graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalLabel(Vec<u8>);

impl CanonicalLabel {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Canonical form by refinement and individualization: the minimum
/// certificate (vertex count, then the relabeled upper-triangle bits) over
/// all discrete refinements reachable from the degree partition.
#[allow(clippy::needless_range_loop)]
pub fn canonical_form(g: &Graph) -> CanonicalLabel {
    let n = g.n();
    let mut twin_class = vec![usize::MAX; n];
    for u in 0..n {
        if twin_class[u] == usize::MAX {
            twin_class[u] = u;
            for v in (u + 1)..n {
                if twin_class[v] == usize::MAX && are_twins(g, u, v) {
                    twin_class[v] = u;
                }
            }
        }
    }
    let mut best: Option<Vec<u8>> = None;
    let init = refine_colors(g, &vec![0; n]);
    canon_rec(g, init, &twin_class, &mut best);
    CanonicalLabel(best.expect("at least one discrete refinement"))
}

#[inline]
fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbor_mask(u) & !(1 << v) == g.neighbor_mask(v) & !(1 << u)
}

fn canon_rec(g: &Graph, colors: Vec<u32>, twin_class: &[usize], best: &mut Option<Vec<u8>>) {
    let n = g.n();
    // locate the first largest non-singleton cell
    let mut cell_size = vec![0u32; n];
    for &c in &colors {
        cell_size[c as usize] += 1;
    }
    let target = (0..n)
        .filter(|&c| cell_size[c] >= 2)
        .max_by(|&a, &b| cell_size[a].cmp(&cell_size[b]).then(b.cmp(&a)));

    match target {
        None => {
            // discrete: vertex v gets position colors[v]
            let mut label = vec![usize::MAX; n];
            for v in 0..n {
                label[v] = colors[v] as usize;
            }
            let cert = certificate(g, &label);
            if best.as_ref().is_none_or(|b| cert < *b) {
                *best = Some(cert);
            }
        }
        Some(cell) => {
            let members: Vec<usize> = (0..n).filter(|&v| colors[v] as usize == cell).collect();
            let mut tried_twin_reps: Vec<usize> = Vec::new();
            for &w in &members {
                if tried_twin_reps.contains(&twin_class[w]) {
                    continue;
                }
                tried_twin_reps.push(twin_class[w]);
                let mut next = colors.clone();
                next[w] = n as u32; // fresh color; refine re-ranks
                canon_rec(g, refine_colors(g, &next), twin_class, best);
            }
        }
    }
}

/// `n` then the relabeled upper triangle, row-major, packed MSB-first.
fn certificate(g: &Graph, label: &[usize]) -> Vec<u8> {
    let n = g.n();
    let mut inv = vec![0usize; n];
    for (v, &pos) in label.iter().enumerate() {
        inv[pos] = v;
    }
    let nbits = n * (n - 1) / 2;
    let mut out = vec![0u8; 1 + nbits.div_ceil(8)];
    out[0] = n as u8;
    let mut idx = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if g.has_edge(inv[i], inv[j]) {
                out[1 + idx / 8] |= 0x80 >> (idx % 8);
            }
            idx += 1;
        }
    }
    out
}

/// Enumerates all isomorphisms from `a` onto `b` (empty when none exist).
/// Intended for small pattern graphs such as quotient templates.
pub fn isomorphisms(a: &Graph, b: &Graph) -> Vec<Permutation> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Vec::new();
    }
    let n = a.n();
    let ca = refine_colors(a, &vec![0; n]);
    let cb = refine_colors(b, &vec![0; n]);
    // refined class sizes must agree for an isomorphism to exist
    let mut sa: Vec<u32> = ca.clone();
    let mut sb: Vec<u32> = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Vec::new();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (ca[v], v));
    let mut out = Vec::new();
    let mut img = vec![usize::MAX; n];
    iso_dfs(a, b, &ca, &cb, &order, 0, &mut img, 0u64, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn iso_dfs(
    a: &Graph,
    b: &Graph,
    ca: &[u32],
    cb: &[u32],
    order: &[usize],
    depth: usize,
    img: &mut Vec<usize>,
    used: u64,
    out: &mut Vec<Permutation>,
) {
    let n = a.n();
    if depth == n {
        out.push(Permutation { image: img.clone() });
        return;
    }
    let v = order[depth];
    for w in 0..n {
        if used >> w & 1 == 1 || cb[w] != ca[v] {
            continue;
        }
        let ok = order[..depth]
            .iter()
            .all(|&u| a.has_edge(v, u) == b.has_edge(w, img[u]));
        if ok {
            img[v] = w;
            iso_dfs(a, b, ca, cb, order, depth + 1, img, used | 1 << w, out);
            img[v] = usize::MAX;
        }
    }
}

/// Convenience: isomorphism test via canonical labels.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && canonical_form(a) == canonical_form(b)
}
