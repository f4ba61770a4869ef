//! Corpus-wide structural invariants, checked exhaustively on the small
//! built-in corpora.

mod common;

use dimdist::automorphism::{automorphisms, automorphisms_with_colors, canonical_form};
use dimdist::classify::{
    classify_d_extremal, classify_dim_extremal, match_hernando, match_jannesari, rebuild_match,
};
use dimdist::distinguishing::{basis_coloring, distinguishing_number, is_distinguishing};
use dimdist::enumerate::{enumerate_corpus, CorpusClass, CorpusSource, CorpusSpec};
use dimdist::graph::{all_pairs_distances, Graph};
use dimdist::graph6;
use dimdist::harness::{verify, CheckId, VerifyConfig};
use dimdist::resolving::{is_resolving_set, metric_dimension};
use dimdist::twin::{is_almost_asymmetric, twin_graph, twin_partition, ClassType};

fn corpus(max_n: usize, class: CorpusClass) -> Vec<Graph> {
    (1..=max_n)
        .flat_map(|n| {
            enumerate_corpus(&CorpusSpec {
                n,
                class,
                source: CorpusSource::Builtin,
            })
            .unwrap()
        })
        .collect()
}

#[test]
fn graph6_round_trip_exhaustive_small() {
    for g in corpus(5, CorpusClass::All) {
        let line = graph6::encode(&g);
        assert_eq!(graph6::decode(&line).unwrap(), g, "{line}");
    }
}

#[test]
fn diameter_one_iff_complete() {
    for g in corpus(6, CorpusClass::Connected) {
        let complete = g.edge_count() == g.n() * (g.n() - 1) / 2 && g.n() >= 2;
        let diam_one = all_pairs_distances(&g).diameter() == Some(1);
        assert_eq!(complete, diam_one, "{g:?}");
    }
}

#[test]
fn automorphism_group_properties() {
    for g in corpus(6, CorpusClass::All) {
        let group = automorphisms(&g);
        let elements = group.materialize();
        assert_eq!(elements.len() as u128, group.order());
        for p in &elements {
            assert!(p.is_automorphism(&g), "{g:?}");
        }
        // complement shares the group
        assert_eq!(group.order(), automorphisms(&g.complement()).order(), "{g:?}");
        // twins land in one orbit
        let partition = twin_partition(&g);
        for class in &partition.classes {
            for pair in class.windows(2) {
                let same = group
                    .orbits()
                    .iter()
                    .any(|orbit| orbit.contains(&pair[0]) && orbit.contains(&pair[1]));
                assert!(same, "twins {pair:?} split across orbits in {g:?}");
            }
        }
    }
}

#[test]
fn seeded_group_never_grows() {
    for g in corpus(5, CorpusClass::All) {
        let full = automorphisms(&g).order();
        for colors in [
            vec![1u32; g.n()],
            (0..g.n() as u32).map(|v| v % 2 + 1).collect(),
            (1..=g.n() as u32).collect(),
        ] {
            let seeded = automorphisms_with_colors(&g, &colors).order();
            assert!(seeded <= full, "{g:?} with {colors:?}");
        }
    }
}

#[test]
fn basis_is_resolving_and_minimal() {
    for g in corpus(6, CorpusClass::Connected) {
        let md = metric_dimension(&g).unwrap();
        assert!(is_resolving_set(&g, md.basis).unwrap(), "{g:?}");
        assert_eq!(md.k, common::brute_force_dim(&g), "{g:?}");
        assert_eq!(md.basis.len(), md.k.min(g.n()), "{g:?}");
    }
}

#[test]
fn dimension_bounds_from_twins_and_diameter() {
    for g in corpus(7, CorpusClass::Connected) {
        let k = metric_dimension(&g).unwrap().k;
        let partition = twin_partition(&g);
        let twin_bound: usize = partition.classes.iter().map(|c| c.len() - 1).sum();
        assert!(k >= twin_bound, "{g:?}: dim {k} below twin bound {twin_bound}");
        // any resolving set omits at most one vertex per twin class
        assert!(
            k >= g.n() - partition.class_count(),
            "{g:?}: dim {k} below n - class count"
        );
        if g.n() >= 2 {
            let diam = all_pairs_distances(&g).diameter().unwrap() as usize;
            assert!(k <= g.n() - diam, "{g:?}: dim {k} above n - diam {diam}");
        }
    }
}

#[test]
fn dim_is_n_minus_one_iff_complete() {
    for g in corpus(7, CorpusClass::Connected) {
        if g.n() < 2 {
            continue;
        }
        let complete = g.edge_count() == g.n() * (g.n() - 1) / 2;
        let k = metric_dimension(&g).unwrap().k;
        assert_eq!(k == g.n() - 1, complete, "{g:?}");
    }
}

#[test]
fn distinguishing_trivial_group_and_twin_bound() {
    for g in corpus(6, CorpusClass::All) {
        let d = distinguishing_number(&g).k;
        assert_eq!(d == 1, automorphisms(&g).is_trivial(), "{g:?}");
        let max_class = twin_partition(&g).max_class_size();
        assert!(d >= max_class, "{g:?}: D {d} below twin class size {max_class}");
    }
}

#[test]
fn basis_coloring_is_always_distinguishing() {
    for g in corpus(6, CorpusClass::Connected) {
        let md = metric_dimension(&g).unwrap();
        let coloring = basis_coloring(&g, md.basis).unwrap();
        assert_eq!(is_distinguishing(&g, &coloring), Ok(true), "{g:?}");
    }
}

#[test]
fn twin_structure_is_well_defined() {
    for g in corpus(7, CorpusClass::All) {
        let tg = twin_graph(&g);
        let total: usize = tg.partition.classes.iter().map(Vec::len).sum();
        assert_eq!(total, g.n());
        for (class, ty) in tg.partition.classes.iter().zip(&tg.types) {
            for (i, &a) in class.iter().enumerate() {
                for &b in &class[i + 1..] {
                    match ty {
                        ClassType::K => assert!(g.has_edge(a, b)),
                        ClassType::N => assert!(!g.has_edge(a, b)),
                        ClassType::One => panic!("singleton class with two members"),
                    }
                }
            }
        }
        // cross-class adjacency is all-or-nothing
        for i in 0..tg.partition.class_count() {
            for j in (i + 1)..tg.partition.class_count() {
                let expected = tg.quotient.has_edge(i, j);
                for &a in &tg.partition.classes[i] {
                    for &b in &tg.partition.classes[j] {
                        assert_eq!(g.has_edge(a, b), expected, "{g:?} classes {i},{j}");
                    }
                }
            }
        }
    }
}

#[test]
fn almost_asymmetry_agrees_with_group_enumeration() {
    for g in corpus(6, CorpusClass::All) {
        let partition = twin_partition(&g);
        let by_group = automorphisms(&g).materialize().iter().all(|p| {
            (0..g.n()).all(|v| partition.class_of[p.apply(v)] == partition.class_of[v])
        });
        assert_eq!(is_almost_asymmetric(&g), by_group, "{g:?}");
    }
}

#[test]
fn family_matches_rebuild_isomorphic() {
    for g in corpus(7, CorpusClass::All) {
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
        let label = canonical_form(&g);
        for m in matches {
            let rebuilt = rebuild_match(&m).unwrap_or_else(|| panic!("no rebuild for {m:?}"));
            assert_eq!(canonical_form(&rebuilt), label, "{m:?} vs {g:?}");
        }
    }
}

#[test]
fn witness_colorings_hold_across_their_domains() {
    use dimdist::distinguishing::witness_coloring;
    use dimdist::graph::{is_path_graph, is_star_graph};

    for n in 3..=9 {
        for t in enumerate_corpus(&CorpusSpec {
            n,
            class: CorpusClass::Trees,
            source: CorpusSource::Builtin,
        })
        .unwrap()
        {
            if is_path_graph(&t) || is_star_graph(&t) {
                continue;
            }
            let w = witness_coloring(&t).unwrap();
            assert_eq!(is_distinguishing(&t, &w.coloring), Ok(true), "{t:?}");
            let dim = metric_dimension(&t).unwrap().k;
            assert!(w.colors_used <= dim, "{t:?}: {} > dim {dim}", w.colors_used);
        }
    }
    for n in 3..=8 {
        for g in enumerate_corpus(&CorpusSpec {
            n,
            class: CorpusClass::Unicyclic,
            source: CorpusSource::Builtin,
        })
        .unwrap()
        {
            let is_cycle = g.vertices().all(|v| g.degree(v) == 2);
            if is_cycle && n <= 5 {
                continue;
            }
            let w = witness_coloring(&g).unwrap();
            assert_eq!(is_distinguishing(&g, &w.coloring), Ok(true), "{g:?}");
            let dim = metric_dimension(&g).unwrap().k;
            assert!(w.colors_used <= dim, "{g:?}: {} > dim {dim}", w.colors_used);
        }
    }
}

#[test]
fn violation_diagnostics_round_trip() {
    // thm-D-n2 genuinely reports two counterexamples at n = 5; their
    // diagnostics must reproduce when decoded and recomputed
    let report = verify(
        CheckId::ThmDN2,
        &VerifyConfig {
            max_n: Some(5),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(report.violations.len(), 2);
    for v in &report.violations {
        let g = graph6::decode(&v.graph6).unwrap();
        let d = distinguishing_number(&g).k;
        assert_eq!(d, g.n() - 2, "diagnosed graph must still have D = n-2");
        assert!(
            classify_d_extremal(&g)
                .iter()
                .all(|m| !m.label.starts_with("DN2-")),
            "diagnosed graph must still match no family"
        );
        assert!(v.detail.contains(&format!("D={d}")));
    }
}
