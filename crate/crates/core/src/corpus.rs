//! Deterministic builders for the example algebras and single-axiom mutants.

use serde::Serialize;
use thiserror::Error;

use crate::hlr::{derivation_hlra, derivation_space, AlgebraData, Axiom, HlrData, HlrError, Tensor3};
use crate::linalg::{Field, Matrix, Subspace};
use crate::split::RootFunctional;

/// Every registered identifier, in display order.
pub const IDS: &[&str] =
    &["E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8", "E9", "M1", "M2", "M3", "M4", "M5", "M6", "P1"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown corpus id {0:?}")]
pub struct UnknownId(pub String);

/// Shape of a decomposition: functionals with space dimensions, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitShape {
    pub roots: Vec<(RootFunctional, usize)>,
    pub weights: Vec<(RootFunctional, usize)>,
    pub root_classes: usize,
    pub weight_classes: usize,
    pub symmetric: bool,
    pub tight: bool,
    pub maximal_length: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SplitExpectation {
    /// Mutants are not decomposed.
    NotApplicable,
    NotSplit,
    Split(SplitShape),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    /// First axiom in report order that fails; `None` for valid entries.
    pub failing_axiom: Option<Axiom>,
    pub split: SplitExpectation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub id: String,
    pub description: String,
    pub data: HlrData,
    pub h: Subspace,
    pub expected: Expected,
}

impl CorpusEntry {
    pub fn is_mutant(&self) -> bool {
        self.expected.failing_axiom.is_some()
    }
}

pub fn build(id: &str) -> Result<CorpusEntry, UnknownId> {
    let q = Field::Rational;
    let f2 = Field::Prime { p: 2 };
    let entry = match id {
        "E1" => {
            let (data, h) = sl2(q);
            valid(id, "sl2 with trivial twists over the ground field", data, h, sl2_shape(q))
        }
        "E2" => {
            let data = HlrData::from_hom_lie(q, labels(&["h"]), Tensor3::zeros(q, 1, 1, 1), Matrix::identity(q, 1))
                .expect("abelian line");
            let h = Subspace::full(q, 1);
            let shape = SplitShape {
                roots: vec![],
                weights: vec![],
                root_classes: 0,
                weight_classes: 0,
                symmetric: true,
                tight: false,
                maximal_length: true,
            };
            valid(id, "one-dimensional abelian algebra over the ground field", data, h, shape)
        }
        "E3" => {
            let (data, h) = dual_numbers(q);
            valid(id, "free module of rank two over the dual numbers", data, h, dual_numbers_shape(q, 1))
        }
        "E4" => {
            let (one, _) = sl2(q);
            let names = labels(&["h1", "e1", "f1", "h2", "e2", "f2"]);
            let data = HlrData::from_hom_lie(q, names, one.bracket.block_sum(&one.bracket), Matrix::identity(q, 6))
                .expect("sl2 x sl2");
            let h = Subspace::span(q, 6, [unit_vec(q, 6, 0), unit_vec(q, 6, 3)]);
            let shape = SplitShape {
                roots: sorted(vec![
                    (functional(q, &[2, 0]), 1),
                    (functional(q, &[-2, 0]), 1),
                    (functional(q, &[0, 2]), 1),
                    (functional(q, &[0, -2]), 1),
                ]),
                weights: vec![],
                root_classes: 2,
                weight_classes: 0,
                symmetric: true,
                tight: false,
                maximal_length: true,
            };
            valid(id, "two sl2 blocks over the ground field", data, h, shape)
        }
        "E5" => {
            let (one, h) = sl2(q);
            let psi = Matrix::diagonal(q, &[q.one(), q.from_i64(2), q.ratio(1, 2).expect("char 0")]);
            let bracket = twisted(&one.bracket, &psi);
            let data = HlrData::from_hom_lie(q, one.labels.clone(), bracket, psi).expect("Yau twist");
            valid(id, "sl2 Yau-twisted by diag(1, 2, 1/2)", data, h, sl2_shape(q))
        }
        "E6" => {
            let (data, h) = rotation(q);
            CorpusEntry {
                id: id.into(),
                description: "rotation algebra: ad_h has characteristic polynomial x^2 + 1".into(),
                data,
                h,
                expected: Expected { failing_axiom: None, split: SplitExpectation::NotSplit },
            }
        }
        "E7" => {
            let (data, h) = tight_dual_derivations();
            valid(
                id,
                "derivations of F2[x]/(x^2): tight, symmetric, maximal length, one class",
                data,
                h,
                tight_shape(f2, 1),
            )
        }
        "E8" => {
            let a = truncated(q);
            let data = derivation_hlra(&a).expect("derivation algebra");
            let h = Subspace::full(q, data.dim());
            let shape = SplitShape {
                roots: vec![],
                weights: vec![(functional(q, &[1]), 1)],
                root_classes: 0,
                weight_classes: 1,
                symmetric: false,
                tight: false,
                maximal_length: true,
            };
            valid(id, "derivation algebra of Q[t]/(t^2)", data, h, shape)
        }
        "E9" => {
            let (d1, h1) = tight_dual_derivations();
            let (data, h) = direct_sum(&d1, &h1, &d1, &h1).expect("same field");
            valid(id, "two copies of the tight derivation algebra over F2", data, h, tight_shape(f2, 2))
        }
        "M1" => {
            let (mut data, h) = sl2(q);
            // [e, f] = e instead of h
            data.bracket.set(1, 2, 0, q.zero());
            data.bracket.set(2, 1, 0, q.zero());
            data.bracket.set(1, 2, 1, q.one());
            data.bracket.set(2, 1, 1, q.from_i64(-1));
            mutant(id, "sl2 with [e, f] = e", data, h, Axiom::HomJacobi)
        }
        "M2" => {
            let (mut data, h) = dual_numbers(q);
            let sigma = Matrix::diagonal(q, &[q.one(), q.from_i64(2), q.from_i64(2), q.from_i64(4)]);
            data.bracket = twisted(&data.bracket, &sigma);
            data.psi = sigma;
            mutant(id, "dual-numbers module Yau-twisted without adjusting the action", data, h, Axiom::PsiActionCompat)
        }
        "M3" => {
            let (mut data, h) = dual_numbers(q);
            data.anchor[2] = data.anchor[0].clone();
            mutant(id, "dual-numbers module with anchor(e) = anchor(h)", data, h, Axiom::AnchorRepresentation)
        }
        "M4" => {
            let (mut data, h) = dual_numbers(q);
            data.action.set(1, 0, 1, q.zero());
            data.action.set(1, 1, 0, q.one());
            mutant(id, "dual-numbers module with t.h = 0 and t.th = h", data, h, Axiom::AnchorLinearity)
        }
        "M5" => {
            let (mut data, h) = dual_numbers(q);
            data.bracket.set(1, 2, 3, q.zero());
            data.bracket.set(2, 1, 3, q.zero());
            mutant(id, "dual-numbers module with [th, e] = 0", data, h, Axiom::HomLeibniz)
        }
        "M6" => {
            let (mut data, h) = dual_numbers(q);
            data.action.set(1, 3, 3, q.one());
            mutant(id, "dual-numbers module with t.te = te", data, h, Axiom::ModuleAction)
        }
        "P1" => {
            let (one, h1) = dual_numbers(q);
            let (two, h2) = direct_sum(&one, &h1, &one, &h1).expect("same field");
            let (data, h) = direct_sum(&two, &h2, &one, &h1).expect("same field");
            valid(id, "three dual-numbers modules: dim L = 12, dim A = 6", data, h, dual_numbers_shape(q, 3))
        }
        other => return Err(UnknownId(other.into())),
    };
    Ok(entry)
}

/// `L₁ ⊕ L₂` over `A₁ × A₂` with Cartan subalgebra `H₁ ⊕ H₂`.
pub fn direct_sum(
    first: &HlrData,
    first_h: &Subspace,
    second: &HlrData,
    second_h: &Subspace,
) -> Result<(HlrData, Subspace), HlrError> {
    let data = first.direct_sum(second)?;
    let (n1, n2) = (first.dim(), second.dim());
    let field = data.field();
    let zeros = |n: usize| vec![field.zero(); n];
    let vectors = first_h
        .basis()
        .iter()
        .map(|v| [v.clone(), zeros(n2)].concat())
        .chain(second_h.basis().iter().map(|v| [zeros(n1), v.clone()].concat()));
    let h = Subspace::span(field, n1 + n2, vectors);
    Ok((data, h))
}

fn valid(id: &str, description: &str, data: HlrData, h: Subspace, shape: SplitShape) -> CorpusEntry {
    CorpusEntry {
        id: id.into(),
        description: description.into(),
        data,
        h,
        expected: Expected { failing_axiom: None, split: SplitExpectation::Split(shape) },
    }
}

fn mutant(id: &str, description: &str, data: HlrData, h: Subspace, axiom: Axiom) -> CorpusEntry {
    CorpusEntry {
        id: id.into(),
        description: description.into(),
        data,
        h,
        expected: Expected { failing_axiom: Some(axiom), split: SplitExpectation::NotApplicable },
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn unit_vec(field: Field, n: usize, i: usize) -> Vec<crate::linalg::Scalar> {
    crate::linalg::unit(field, n, i)
}

fn functional(field: Field, values: &[i64]) -> RootFunctional {
    RootFunctional(values.iter().map(|&v| field.from_i64(v)).collect())
}

fn sorted(mut v: Vec<(RootFunctional, usize)>) -> Vec<(RootFunctional, usize)> {
    v.sort();
    v
}

/// Skew bracket from the entries `[x_i, x_j] = c x_k` with `i < j`.
fn skew(field: Field, n: usize, entries: &[(usize, usize, usize, i64)]) -> Tensor3 {
    let mut t = Tensor3::zeros(field, n, n, n);
    for &(i, j, k, c) in entries {
        t.set(i, j, k, field.from_i64(c));
        t.set(j, i, k, field.from_i64(-c));
    }
    t
}

/// `ψ∘[·,·]` for a diagonal `ψ`.
fn twisted(bracket: &Tensor3, psi: &Matrix) -> Tensor3 {
    let mut t = bracket.clone();
    for ([i, j, k], v) in bracket.nonzero() {
        t.set(i, j, k, v * psi.get(k, k));
    }
    t
}

fn sl2(field: Field) -> (HlrData, Subspace) {
    let bracket = skew(field, 3, &[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)]);
    let data =
        HlrData::from_hom_lie(field, labels(&["h", "e", "f"]), bracket, Matrix::identity(field, 3)).expect("sl2");
    let h = Subspace::span(field, 3, [unit_vec(field, 3, 0)]);
    (data, h)
}

fn sl2_shape(field: Field) -> SplitShape {
    SplitShape {
        roots: sorted(vec![(functional(field, &[2]), 1), (functional(field, &[-2]), 1)]),
        weights: vec![],
        root_classes: 1,
        weight_classes: 0,
        symmetric: true,
        tight: false,
        maximal_length: true,
    }
}

fn rotation(field: Field) -> (HlrData, Subspace) {
    let bracket = skew(field, 3, &[(0, 1, 2, 1), (0, 2, 1, -1)]);
    let data = HlrData::from_hom_lie(field, labels(&["h", "x", "y"]), bracket, Matrix::identity(field, 3))
        .expect("rotation algebra");
    let h = Subspace::span(field, 3, [unit_vec(field, 3, 0)]);
    (data, h)
}

/// `k[t]/(t²)` on the basis `{1, t}` with `φ = id`.
fn truncated(field: Field) -> AlgebraData {
    let mut mult = Tensor3::zeros(field, 2, 2, 2);
    mult.set(0, 0, 0, field.one());
    mult.set(0, 1, 1, field.one());
    mult.set(1, 0, 1, field.one());
    AlgebraData::new(field, labels(&["1", "t"]), mult, Matrix::identity(field, 2)).expect("dual numbers")
}

/// The free module on `{h, e}` over the dual numbers, basis `{h, th, e, te}`.
fn dual_numbers(field: Field) -> (HlrData, Subspace) {
    let a = truncated(field);
    let bracket = skew(field, 4, &[(0, 1, 1, 1), (0, 2, 2, 1), (0, 3, 3, 2), (1, 2, 3, 1)]);
    let mut action = Tensor3::zeros(field, 2, 4, 4);
    for j in 0..4 {
        action.set(0, j, j, field.one());
    }
    action.set(1, 0, 1, field.one());
    action.set(1, 2, 3, field.one());
    let mut anchor = vec![Matrix::zeros(field, 2, 2); 4];
    anchor[0].set(1, 1, field.one());
    let data = HlrData::new(a, labels(&["h", "th", "e", "te"]), bracket, Matrix::identity(field, 4), action, anchor)
        .expect("shapes");
    let h = Subspace::span(field, 4, [unit_vec(field, 4, 0)]);
    (data, h)
}

/// Shape of `copies` independent dual-numbers modules.
fn dual_numbers_shape(field: Field, copies: usize) -> SplitShape {
    let basis = |i: usize, c: i64| -> RootFunctional {
        functional(field, &(0..copies).map(|j| if i == j { c } else { 0 }).collect::<Vec<_>>())
    };
    SplitShape {
        roots: sorted((0..copies).flat_map(|i| [(basis(i, 1), 2), (basis(i, 2), 1)]).collect()),
        weights: sorted((0..copies).map(|i| (basis(i, 1), 1)).collect()),
        root_classes: copies,
        weight_classes: copies,
        symmetric: false,
        tight: false,
        maximal_length: false,
    }
}

/// `Der(F2[x]/(x²))` spanned by `∂` and `x∂` with `H = ⟨x∂⟩`.
fn tight_dual_derivations() -> (HlrData, Subspace) {
    let f2 = Field::Prime { p: 2 };
    let a = truncated(f2);
    let data = derivation_hlra(&a).expect("derivation algebra");
    // x∂ fixes 1 ↦ 0 and x ↦ x: flattened matrix (0, 0, 0, 1)
    let x_d = [f2.zero(), f2.zero(), f2.zero(), f2.one()];
    let coords = derivation_space(&a).coordinates(&x_d).expect("x∂ is a derivation");
    let h = Subspace::span(f2, data.dim(), [coords]);
    (data, h)
}

fn tight_shape(field: Field, copies: usize) -> SplitShape {
    let basis =
        |i: usize| -> RootFunctional { functional(field, &(0..copies).map(|j| i64::from(i == j)).collect::<Vec<_>>()) };
    let spaces: Vec<(RootFunctional, usize)> = sorted((0..copies).map(|i| (basis(i), 1)).collect());
    SplitShape {
        roots: spaces.clone(),
        weights: spaces,
        root_classes: copies,
        weight_classes: copies,
        symmetric: true,
        tight: true,
        maximal_length: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hlr::verify_axioms;

    #[test]
    fn registry_builds() {
        for id in IDS {
            let e = build(id).unwrap();
            assert_eq!(e.id, *id);
            assert_eq!(e.h.ambient_dim(), e.data.dim());
        }
        assert_eq!(build("E10"), Err(UnknownId("E10".into())));
    }

    #[test]
    fn mutants_fail_their_target_first() {
        for id in IDS {
            let e = build(id).unwrap();
            let report = verify_axioms(&e.data);
            assert_eq!(report.first_failure().map(|c| c.axiom), e.expected.failing_axiom, "{id}");
        }
    }

    #[test]
    fn sum_of_cartans() {
        let q = Field::Rational;
        let (a, ha) = sl2(q);
        let (b, hb) = dual_numbers(q);
        let (s, h) = direct_sum(&a, &ha, &b, &hb).unwrap();
        assert_eq!((s.dim(), s.a.dim(), h.dim()), (7, 3, 2));
        assert_eq!(s.labels[3], "h_2");
        assert!(verify_axioms(&s).passed());
    }

    #[test]
    fn field_mismatch() {
        let (a, ha) = sl2(Field::Rational);
        let (b, hb) = tight_dual_derivations();
        assert_eq!(direct_sum(&a, &ha, &b, &hb).unwrap_err(), HlrError::FieldMismatch);
    }
}
