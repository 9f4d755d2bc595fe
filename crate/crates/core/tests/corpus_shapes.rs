use homrine_core::connections::{build_orbits, DEFAULT_ORBIT_BOUND};
use homrine_core::corpus::{build, SplitExpectation, IDS};
use homrine_core::split::{split, SplitError};
use homrine_core::structure::{ideals_report, structure_report};

#[test]
fn decompositions_match_expectations() {
    for id in IDS {
        let e = build(id).unwrap();
        match &e.expected.split {
            SplitExpectation::NotApplicable => {}
            SplitExpectation::NotSplit => {
                assert!(matches!(split(&e.data, &e.h), Err(SplitError::NotSplit { .. })), "{id}");
            }
            SplitExpectation::Split(shape) => {
                let d = split(&e.data, &e.h).unwrap_or_else(|err| panic!("{id}: {err}"));
                let mut roots: Vec<_> = d.roots.iter().map(|c| (c.functional.clone(), c.space.dim())).collect();
                let mut weights: Vec<_> = d.weights.iter().map(|c| (c.functional.clone(), c.space.dim())).collect();
                roots.sort();
                weights.sort();
                assert_eq!(roots, shape.roots, "{id} roots");
                assert_eq!(weights, shape.weights, "{id} weights");
                let orbits = build_orbits(&d, DEFAULT_ORBIT_BOUND).unwrap();
                let ideals = ideals_report(&e.data, &d, &orbits).unwrap();
                assert_eq!(ideals.root_classes.len(), shape.root_classes, "{id} root classes");
                assert_eq!(ideals.weight_classes.len(), shape.weight_classes, "{id} weight classes");
                assert!(ideals.passed(), "{id} ideals: {ideals:#?}");
                let s = structure_report(&e.data, &d, &ideals);
                assert_eq!(s.symmetric, shape.symmetric, "{id} symmetry");
                assert_eq!(s.tightness.tight, shape.tight, "{id} tightness {:?}", s.tightness);
                assert_eq!(s.maximal_length.holds, shape.maximal_length, "{id} length");
                assert_eq!(s.passed(), shape.tight, "{id} structure {s:#?}");
            }
        }
    }
}
