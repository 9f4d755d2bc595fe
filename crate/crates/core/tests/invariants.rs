//! Exhaustive invariants over every decomposable corpus entry.

use homrine_core::connections::{
    build_orbits, replay_root_witness, replay_weight_witness, root_classes, root_connected, weight_classes,
    ConnectionClass, OrbitTable, Witness, DEFAULT_ORBIT_BOUND,
};
use homrine_core::corpus::{build, CorpusEntry, SplitExpectation, IDS};
use homrine_core::hlr::{is_ideal, HlrData};
use homrine_core::linalg::Subspace;
use homrine_core::oracle::{
    bf_is_ideal, bf_partition, bf_root_connected, bf_weight_connected, literal_root_family, ChainBudget,
};
use homrine_core::split::{check_grading, check_psi_shift, split, Decomposition, RootFunctional};
use homrine_core::structure::ideals_report;

struct Case {
    id: &'static str,
    h: HlrData,
    d: Decomposition,
    orbits: OrbitTable,
}

fn cases() -> Vec<Case> {
    IDS.iter()
        .filter_map(|&id| {
            let CorpusEntry { data, h, expected, .. } = build(id).unwrap();
            let SplitExpectation::Split(_) = expected.split else { return None };
            let d = split(&data, &h).unwrap();
            let orbits = build_orbits(&d, DEFAULT_ORBIT_BOUND).unwrap();
            Some(Case { id, h: data, d, orbits })
        })
        .collect()
}

fn members(classes: &[ConnectionClass]) -> Vec<Vec<RootFunctional>> {
    classes.iter().map(|c| c.members.clone()).collect()
}

#[test]
fn components_reassemble_both_spaces() {
    for c in cases() {
        let (n, m) = (c.h.dim(), c.h.a.dim());
        let field = c.h.field();
        let l_parts = c.d.l_components();
        let a_parts = c.d.a_components();
        assert_eq!(l_parts.iter().map(|(_, s)| s.dim()).sum::<usize>(), n, "{}", c.id);
        assert_eq!(a_parts.iter().map(|(_, s)| s.dim()).sum::<usize>(), m, "{}", c.id);
        assert!(Subspace::sum_all(field, n, l_parts.iter().map(|(_, s)| *s)).unwrap().is_full(), "{}", c.id);
        assert!(Subspace::sum_all(field, m, a_parts.iter().map(|(_, s)| *s)).unwrap().is_full(), "{}", c.id);
        assert_eq!(c.d.l_component(&c.d.zero_functional()), c.d.h, "{}: zero root space is H", c.id);
    }
}

#[test]
fn grading_and_twist_laws() {
    for c in cases() {
        let grading = check_grading(&c.h, &c.d).unwrap_or_else(|e| panic!("{}: {e}", c.id));
        let (l, a) = (c.d.l_components().len(), c.d.a_components().len());
        assert_eq!(grading.pairs_checked, l * l + a * a + 2 * a * l, "{}", c.id);
        assert!(check_psi_shift(&c.h, &c.d).iter().all(|s| s.passed()), "{}", c.id);
        for (_, space) in c.d.a_components() {
            assert!(space.contains_space(&space.map(&c.h.a.phi)), "{}", c.id);
        }
    }
}

#[test]
fn partitions_match_brute_force() {
    let budget = ChainBudget { max_family_len: 4, max_orbit_exp: None };
    for c in cases() {
        let roots = root_classes(&c.d, &c.orbits).unwrap();
        let weights = weight_classes(&c.d).unwrap();
        let bf_roots = bf_partition(&c.d.root_functionals(), |g, x| bf_root_connected(&c.d, &c.orbits, g, x, budget));
        let bf_weights = bf_partition(&c.d.weight_functionals(), |a, b| bf_weight_connected(&c.d, a, b, budget));
        assert_eq!(members(&roots), bf_roots, "{} roots", c.id);
        assert_eq!(members(&weights), bf_weights, "{} weights", c.id);
    }
}

#[test]
fn witnesses_replay_through_literal_sums() {
    for c in cases() {
        for class in root_classes(&c.d, &c.orbits).unwrap() {
            for (m, w) in class.members.iter().zip(&class.witnesses) {
                assert!(replay_root_witness(&c.d, &c.orbits, &class.representative, m, w).unwrap(), "{}", c.id);
                if let Witness::Family { family } = w {
                    assert!(literal_root_family(&c.d, &c.orbits, &class.representative, m, family), "{}", c.id);
                }
            }
        }
        for class in weight_classes(&c.d).unwrap() {
            for (m, w) in class.members.iter().zip(&class.witnesses) {
                assert!(replay_weight_witness(&c.d, &class.representative, m, w), "{}", c.id);
            }
        }
    }
}

#[test]
fn connection_survives_orbit_shifts() {
    for c in cases() {
        let gamma = c.d.root_functionals();
        for class in root_classes(&c.d, &c.orbits).unwrap() {
            for g in &class.members {
                for x in &class.members {
                    for g2 in c.orbits.orbit(g).unwrap().iter().filter(|f| gamma.contains(f)) {
                        for x2 in c.orbits.orbit(x).unwrap().iter().filter(|f| gamma.contains(f)) {
                            let w = root_connected(&c.d, &c.orbits, g2, x2).unwrap();
                            assert!(w.is_some(), "{}: {g2} to {x2}", c.id);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn sums_with_weights_are_absorbed() {
    for c in cases() {
        let gamma = c.d.root_functionals();
        let lambda = c.d.weight_functionals();
        let classes = root_classes(&c.d, &c.orbits).unwrap();
        let class_of = |f: &RootFunctional| classes.iter().position(|k| k.contains(f));
        for class in &classes {
            for g in &class.members {
                for eta in lambda.iter().filter(|e| gamma.contains(e)) {
                    let s = g.add(eta);
                    if gamma.contains(&s) {
                        assert_eq!(class_of(&s), class_of(g), "{}: {g} + {eta}", c.id);
                    }
                }
            }
        }
    }
}

#[test]
fn ideal_checks_agree_with_reference() {
    for c in cases() {
        let report = ideals_report(&c.h, &c.d, &c.orbits).unwrap();
        for r in &report.root_ideals {
            assert!(is_ideal(&c.h, &r.total) && bf_is_ideal(&c.h, &r.total), "{}", c.id);
            assert!(!r.total.is_zero() || r.class.members.is_empty(), "{}", c.id);
        }
        for (_, space) in c.d.l_components() {
            assert_eq!(is_ideal(&c.h, space), bf_is_ideal(&c.h, space), "{}", c.id);
        }
    }
}
