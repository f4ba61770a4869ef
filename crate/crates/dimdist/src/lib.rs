//! Exact computation of metric dimension, distinguishing number, and twin
//! quotient structure for small graphs, with recognizers for the classified
//! extremal families and an exhaustive verification harness that machine
//! checks each characterization over all non-isomorphic graphs up to a
//! size bound.

pub mod automorphism;
pub mod budget;
pub mod classify;
pub mod distinguishing;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod resolving;
pub mod twin;

#[cfg(test)]
pub(crate) mod testgraphs;

pub use automorphism::{
    automorphisms, automorphisms_with_colors, canonical_form, is_color_preserving_automorphism,
    isomorphic, AutGroup, CanonicalLabel, Permutation,
};
pub use budget::Budget;
pub use classify::{
    classify_d_extremal, classify_dim_extremal, classify_prop_lemn2, match_hernando,
    match_jannesari, rebuild_match, FamilyMatch,
};
pub use distinguishing::{
    basis_coloring, distinguishing_number, is_distinguishing, witness_coloring, Coloring,
    DistinguishingNumber, WitnessColoring,
};
pub use enumerate::{
    enumerate_corpus, tree_stream, unicyclic_stream, CorpusClass, CorpusSource, CorpusSpec,
};
pub use graph::{
    all_pairs_distances, standard_family, structure_probe, DistanceMatrix, FamilyDescriptor,
    Graph, GraphError, StructureProbe,
};
pub use harness::{compute, verify, CheckId, ComputeRecord, Report, VerifyConfig};
pub use resolving::{
    is_resolving_set, metric_dimension, minimum_bases, tree_dimension, tree_features,
    MetricDimension, ResolvingSet, TreeFeatures,
};
pub use twin::{
    almost_asymmetric_d, is_almost_asymmetric, twin_graph, twin_partition, ClassType, TwinGraph,
    TwinPartition,
};
