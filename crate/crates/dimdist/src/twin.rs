//! Twin equivalence, the twin quotient graph, and almost-asymmetry.
//!
//! Vertices `u`, `v` are twins when `N(v) ∖ {u} = N(u) ∖ {v}`; together with
//! equality this is an equivalence relation. Each class induces a complete
//! graph (adjacent twins, type `K`), an edgeless graph (non-adjacent twins,
//! type `N`), or is a singleton (type `1`); cross-class adjacency is
//! all-or-nothing, which makes the one-step quotient well defined. The
//! quotient is deliberately not iterated to a fixed point: the recognizers
//! downstream are stated on the one-step quotient (for example the quotient
//! of C_4 is K_2, which still contains twins).
//!
//! A size-2 class inducing K_2 is read as type `K` (the printed type-(K)
//! definition says "K_2, where r >= 2" where K_r is clearly meant, mirroring
//! the K̄_r of type (N)).

use thiserror::Error;

use crate::automorphism::has_nontrivial_color_preserving_automorphism;
use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TwinError {
    #[error("graph is not almost asymmetric: some automorphism moves a twin class")]
    NotAlmostAsymmetric,
}

/// Partition of the vertex set into twin equivalence classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinPartition {
    /// Classes sorted internally and ordered by their minimum vertex.
    pub classes: Vec<Vec<usize>>,
    /// Class index of each vertex.
    pub class_of: Vec<usize>,
}

impl TwinPartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn max_class_size(&self) -> usize {
        self.classes.iter().map(Vec::len).max().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassType {
    /// Singleton class.
    One,
    /// Class of size >= 2 inducing a complete graph (adjacent twins).
    K,
    /// Class of size >= 2 inducing an edgeless graph (non-adjacent twins).
    N,
}

impl ClassType {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassType::One => "1",
            ClassType::K => "K",
            ClassType::N => "N",
        }
    }
}

/// The twin quotient with per-class types and derived statistics.
#[derive(Clone, Debug)]
pub struct TwinGraph {
    pub partition: TwinPartition,
    /// Quotient on class indices: classes adjacent iff their members are.
    pub quotient: Graph,
    pub types: Vec<ClassType>,
    /// Number of classes of type K or N (the quotient's "(KN)" vertices).
    pub alpha: usize,
    pub max_class: usize,
}

#[inline]
fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbor_mask(u) & !(1 << v) == g.neighbor_mask(v) & !(1 << u)
}

/// Groups the vertices into twin classes.
#[allow(clippy::needless_range_loop)]
pub fn twin_partition(g: &Graph) -> TwinPartition {
    let n = g.n();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        if class_of[u] != usize::MAX {
            continue;
        }
        let idx = classes.len();
        class_of[u] = idx;
        let mut members = vec![u];
        for v in (u + 1)..n {
            if class_of[v] == usize::MAX && are_twins(g, u, v) {
                class_of[v] = idx;
                members.push(v);
            }
        }
        classes.push(members);
    }
    TwinPartition { classes, class_of }
}

/// Builds the one-step twin quotient with class types.
pub fn twin_graph(g: &Graph) -> TwinGraph {
    let partition = twin_partition(g);
    let k = partition.class_count();
    let mut edges = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            let u = partition.classes[i][0];
            let v = partition.classes[j][0];
            let adjacent = g.has_edge(u, v);
            // cross-class adjacency is all-or-nothing; the debug check
            // pins the well-definedness of the quotient edge set
            debug_assert!(partition.classes[i].iter().all(|&a| {
                partition.classes[j].iter().all(|&b| g.has_edge(a, b) == adjacent)
            }));
            if adjacent {
                edges.push((i, j));
            }
        }
    }
    let quotient = Graph::from_edges(k, &edges).expect("quotient has >= 1 class");
    let types: Vec<ClassType> = partition
        .classes
        .iter()
        .map(|members| {
            if members.len() == 1 {
                ClassType::One
            } else if g.has_edge(members[0], members[1]) {
                debug_assert!(class_induces_complete(g, members));
                ClassType::K
            } else {
                debug_assert!(class_induces_edgeless(g, members));
                ClassType::N
            }
        })
        .collect();
    let alpha = types.iter().filter(|t| !matches!(t, ClassType::One)).count();
    let max_class = partition.max_class_size();
    TwinGraph {
        partition,
        quotient,
        types,
        alpha,
        max_class,
    }
}

fn class_induces_complete(g: &Graph, members: &[usize]) -> bool {
    members
        .iter()
        .all(|&a| members.iter().all(|&b| a == b || g.has_edge(a, b)))
}

fn class_induces_edgeless(g: &Graph, members: &[usize]) -> bool {
    members
        .iter()
        .all(|&a| members.iter().all(|&b| a == b || !g.has_edge(a, b)))
}

/// True iff every automorphism maps each twin class onto itself.
///
/// Every automorphism induces a size- and type-preserving automorphism of
/// the quotient, and conversely any such quotient automorphism lifts to the
/// graph (classes are uniform and cross edges all-or-nothing). So it
/// suffices to search the quotient for a nontrivial automorphism that
/// preserves the (size, type) labels.
pub fn is_almost_asymmetric(g: &Graph) -> bool {
    let tg = twin_graph(g);
    let labels: Vec<(usize, ClassType)> = tg
        .partition
        .classes
        .iter()
        .zip(&tg.types)
        .map(|(members, &ty)| (members.len(), ty))
        .collect();
    let mut distinct: Vec<&(usize, ClassType)> = labels.iter().collect();
    distinct.sort_by_key(|(s, t)| (*s, t.as_str()));
    distinct.dedup();
    let colors: Vec<u32> = labels
        .iter()
        .map(|l| {
            distinct
                .binary_search_by_key(&(l.0, l.1.as_str()), |(s, t)| (*s, t.as_str()))
                .unwrap() as u32
        })
        .collect();
    !has_nontrivial_color_preserving_automorphism(&tg.quotient, &colors)
}

/// D(G) of an almost-asymmetric graph: the largest twin class size.
pub fn almost_asymmetric_d(g: &Graph) -> Result<usize, TwinError> {
    if !is_almost_asymmetric(g) {
        return Err(TwinError::NotAlmostAsymmetric);
    }
    Ok(twin_partition(g).max_class_size())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{standard_family, FamilyDescriptor::*};

    fn paw() -> Graph {
        // triangle 0,1,2 with pendant 3 attached at 0
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap()
    }

    #[test]
    fn partitions() {
        let k23 = standard_family(&CompleteBipartite(2, 3)).unwrap();
        let p = twin_partition(&k23);
        let mut sizes: Vec<usize> = p.classes.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 3]);

        let k5 = standard_family(&Complete(5)).unwrap();
        assert_eq!(twin_partition(&k5).classes, vec![vec![0, 1, 2, 3, 4]]);

        let p = twin_partition(&paw());
        assert_eq!(p.classes, vec![vec![0], vec![1, 2], vec![3]]);
    }

    #[test]
    fn quotients_and_types() {
        let g = standard_family(&CompleteMultipartite(vec![1, 2, 2])).unwrap();
        let tg = twin_graph(&g);
        assert_eq!(tg.quotient.n(), 3);
        assert_eq!(tg.quotient.edge_count(), 3); // K_3
        let mut types = tg.types.clone();
        types.sort_by_key(|t| t.as_str());
        assert_eq!(types, vec![ClassType::One, ClassType::N, ClassType::N]);
        assert_eq!(tg.alpha, 2);

        let c4 = standard_family(&Cycle(4)).unwrap();
        let tg = twin_graph(&c4);
        assert_eq!(tg.quotient.n(), 2);
        assert_eq!(tg.quotient.edge_count(), 1);
        assert_eq!(tg.types, vec![ClassType::N, ClassType::N]);
        assert_eq!(tg.max_class, 2);

        let p5 = standard_family(&Path(5)).unwrap();
        let tg = twin_graph(&p5);
        assert_eq!(tg.quotient.n(), 5);
        assert!(tg.types.iter().all(|t| matches!(t, ClassType::One)));
        assert_eq!(tg.alpha, 0);

        let k5 = standard_family(&Complete(5)).unwrap();
        assert_eq!(twin_graph(&k5).types, vec![ClassType::K]);
    }

    #[test]
    fn almost_asymmetry() {
        let k23 = standard_family(&CompleteBipartite(2, 3)).unwrap();
        assert!(is_almost_asymmetric(&k23));
        assert_eq!(almost_asymmetric_d(&k23), Ok(3));

        let k33 = standard_family(&CompleteBipartite(3, 3)).unwrap();
        assert!(!is_almost_asymmetric(&k33));
        assert_eq!(almost_asymmetric_d(&k33), Err(TwinError::NotAlmostAsymmetric));

        assert!(is_almost_asymmetric(&paw()));
        assert_eq!(almost_asymmetric_d(&paw()), Ok(2));

        // the two N-classes of K_{1,2,2} can be swapped
        let g = standard_family(&CompleteMultipartite(vec![1, 2, 2])).unwrap();
        assert!(!is_almost_asymmetric(&g));
    }

    #[test]
    fn twin_relation_is_equivalence_on_small_graphs() {
        // pairwise twin tests must agree with the grouped classes
        for mask in 0u32..(1 << 10) {
            let pairs = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)];
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let g = Graph::from_edges(5, &edges).unwrap();
            let p = twin_partition(&g);
            for u in 0..5 {
                for v in (u + 1)..5 {
                    assert_eq!(
                        p.class_of[u] == p.class_of[v],
                        are_twins(&g, u, v),
                        "transitivity broken at mask {mask} ({u},{v})"
                    );
                }
            }
        }
    }
}
