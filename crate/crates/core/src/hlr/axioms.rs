//! Exhaustive axiom checks on basis tuples.
//!
//! Every identity is multilinear, so checking it on basis tuples decides it on
//! the whole space. Each check stops at the lexicographically smallest failing
//! tuple.

use serde::Serialize;

use super::{AlgebraData, HlrData};
use crate::linalg::{vec_add, Matrix, Scalar};

/// Axioms in report order.
///
/// Counterexample indices: algebra axioms use indices into the basis of `A`;
/// the remaining ones list their arguments in the order they appear in the
/// identity (`ModuleAction` is `(a, b, x)`, `PsiActionCompat` and
/// `AnchorLinearity` are `(a, x)`, `AnchorDerivation` is `(x, a, b)`,
/// `HomLeibniz` is `(x, a, y)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// `ab = ba`
    Commutativity,
    /// `(ab)c = a(bc)`
    Associativity,
    /// `φ(ab) = φ(a)φ(b)`
    PhiMultiplicative,
    PhiInvertible,
    /// `[x,x] = 0` and `[x,y] = -[y,x]`
    SkewSymmetry,
    /// `[ψx,[y,z]] + [ψy,[z,x]] + [ψz,[x,y]] = 0`
    HomJacobi,
    /// `ψ[x,y] = [ψx,ψy]`
    PsiMultiplicative,
    PsiInvertible,
    /// `(ab)·x = a·(b·x)`
    ModuleAction,
    /// `ψ(a·x) = φ(a)·ψ(x)`
    PsiActionCompat,
    /// `ρ(x)(ab) = φ(a)ρ(x)(b) + ρ(x)(a)φ(b)`
    AnchorDerivation,
    /// `ρ([x,y])∘φ = ρ(ψx)∘ρ(y) - ρ(ψy)∘ρ(x)`
    AnchorRepresentation,
    /// `ρ(ψx)∘φ = φ∘ρ(x)`
    AnchorHomomorphism,
    /// `ρ(a·x) = φ(a)·ρ(x)`
    AnchorLinearity,
    /// `[x, a·y] = φ(a)·[x,y] + ρ(x)(a)·ψ(y)`
    HomLeibniz,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub indices: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub counterexample: Option<Counterexample>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = Axiom> + '_ {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.axiom)
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

/// Runs `eval` over the index box `dims` in lexicographic order and keeps the
/// first tuple where the two sides differ.
fn scan<F>(axiom: Axiom, dims: &[usize], mut eval: F) -> AxiomCheck
where
    F: FnMut(&[usize]) -> (Vec<Scalar>, Vec<Scalar>),
{
    let pass = AxiomCheck { axiom, counterexample: None };
    if dims.contains(&0) {
        return pass;
    }
    let mut idx = vec![0usize; dims.len()];
    loop {
        let (lhs, rhs) = eval(&idx);
        if lhs != rhs {
            return AxiomCheck { axiom, counterexample: Some(Counterexample { indices: idx, lhs, rhs }) };
        }
        let mut pos = dims.len();
        loop {
            if pos == 0 {
                return pass;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < dims[pos] {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn invertibility(axiom: Axiom, m: &Matrix) -> AxiomCheck {
    let kernel = m.kernel();
    let counterexample =
        kernel.basis().first().map(|v| Counterexample { indices: Vec::new(), lhs: m.apply(v), rhs: v.clone() });
    AxiomCheck { axiom, counterexample }
}

/// Commutativity, associativity and the automorphism property of `φ`.
pub fn verify_algebra(a: &AlgebraData) -> AxiomReport {
    AxiomReport { checks: algebra_checks(a) }
}

fn algebra_checks(a: &AlgebraData) -> Vec<AxiomCheck> {
    let n = a.dim();
    let e = |i: usize| a.basis(i);
    let prod = |i: usize, j: usize| a.mult.fiber(i, j).to_vec();
    vec![
        scan(Axiom::Commutativity, &[n, n], |t| (prod(t[0], t[1]), prod(t[1], t[0]))),
        scan(Axiom::Associativity, &[n, n, n], |t| {
            (a.mul(&prod(t[0], t[1]), &e(t[2])), a.mul(&e(t[0]), &prod(t[1], t[2])))
        }),
        scan(Axiom::PhiMultiplicative, &[n, n], |t| {
            (a.phi.apply(&prod(t[0], t[1])), a.mul(&a.phi.column(t[0]), &a.phi.column(t[1])))
        }),
        invertibility(Axiom::PhiInvertible, &a.phi),
    ]
}

/// All axioms of a Hom-Lie Rinehart algebra, including those of `A`, in
/// [`Axiom`] order.
pub fn verify_axioms(h: &HlrData) -> AxiomReport {
    let field = h.field();
    let n = h.dim();
    let m = h.a.dim();
    let a = &h.a;
    let phi = &a.phi;
    let psi = &h.psi;
    let x = |i: usize| h.basis(i);
    let br = |i: usize, j: usize| h.bracket.fiber(i, j).to_vec();
    let psi_x = |i: usize| psi.column(i);
    let zero_l = vec![field.zero(); n];
    let flat = |mat: Matrix| mat.entries().to_vec();

    let mut checks = algebra_checks(a);
    checks.push(scan(Axiom::SkewSymmetry, &[n, n], |t| {
        if t[0] == t[1] {
            (br(t[0], t[0]), zero_l.clone())
        } else {
            (br(t[0], t[1]), br(t[1], t[0]).iter().map(|v| -v).collect())
        }
    }));
    checks.push(scan(Axiom::HomJacobi, &[n, n, n], |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        let s1 = h.bracket(&psi_x(i), &br(j, k));
        let s2 = h.bracket(&psi_x(j), &br(k, i));
        let s3 = h.bracket(&psi_x(k), &br(i, j));
        (vec_add(&vec_add(&s1, &s2), &s3), zero_l.clone())
    }));
    checks.push(scan(Axiom::PsiMultiplicative, &[n, n], |t| {
        (psi.apply(&br(t[0], t[1])), h.bracket(&psi_x(t[0]), &psi_x(t[1])))
    }));
    checks.push(invertibility(Axiom::PsiInvertible, psi));
    checks.push(scan(Axiom::ModuleAction, &[m, m, n], |t| {
        (h.act(a.mult.fiber(t[0], t[1]), &x(t[2])), h.act(&a.basis(t[0]), h.action.fiber(t[1], t[2])))
    }));
    checks.push(scan(Axiom::PsiActionCompat, &[m, n], |t| {
        (psi.apply(h.action.fiber(t[0], t[1])), h.act(&phi.column(t[0]), &psi_x(t[1])))
    }));
    checks.push(scan(Axiom::AnchorDerivation, &[n, m, m], |t| {
        let r = &h.anchor[t[0]];
        let lhs = r.apply(a.mult.fiber(t[1], t[2]));
        let rhs = vec_add(&a.mul(&phi.column(t[1]), &r.column(t[2])), &a.mul(&r.column(t[1]), &phi.column(t[2])));
        (lhs, rhs)
    }));
    checks.push(scan(Axiom::AnchorRepresentation, &[n, n], |t| {
        let (i, j) = (t[0], t[1]);
        let lhs = h.rho(&br(i, j)).mul(phi);
        let rhs = h.rho(&psi_x(i)).mul(&h.anchor[j]).sub(&h.rho(&psi_x(j)).mul(&h.anchor[i]));
        (flat(lhs), flat(rhs))
    }));
    checks.push(scan(Axiom::AnchorHomomorphism, &[n], |t| {
        let i = t[0];
        (flat(h.rho(&psi_x(i)).mul(phi)), flat(phi.mul(&h.anchor[i])))
    }));
    checks.push(scan(Axiom::AnchorLinearity, &[m, n], |t| {
        let lhs = h.rho(h.action.fiber(t[0], t[1]));
        let rhs = a.mul_operator(&phi.column(t[0])).mul(&h.anchor[t[1]]);
        (flat(lhs), flat(rhs))
    }));
    checks.push(scan(Axiom::HomLeibniz, &[n, m, n], |t| {
        let (xi, ai, yi) = (t[0], t[1], t[2]);
        let lhs = h.bracket(&x(xi), h.action.fiber(ai, yi));
        let rhs = vec_add(&h.act(&phi.column(ai), &br(xi, yi)), &h.act(&h.anchor[xi].column(ai), &psi_x(yi)));
        (lhs, rhs)
    }));
    debug_assert!(checks.windows(2).all(|w| w[0].axiom < w[1].axiom));
    AxiomReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hlr::Tensor3;
    use crate::linalg::Field;

    const Q: Field = Field::Rational;

    fn dual_numbers(phi: Matrix) -> AlgebraData {
        let mut mult = Tensor3::zeros(Q, 2, 2, 2);
        mult.set(0, 0, 0, Q.one());
        mult.set(0, 1, 1, Q.one());
        mult.set(1, 0, 1, Q.one());
        AlgebraData::new(Q, vec!["1".into(), "t".into()], mult, phi).unwrap()
    }

    #[test]
    fn ground_field_passes() {
        assert!(verify_algebra(&AlgebraData::ground(Q)).passed());
    }

    #[test]
    fn dual_numbers_pass_with_identity() {
        assert!(verify_algebra(&dual_numbers(Matrix::identity(Q, 2))).passed());
    }

    #[test]
    fn non_multiplicative_twist_caught_at_t_t() {
        // φ(1) = 1, φ(t) = 1
        let phi = Matrix::from_i64(Q, &[&[1, 1], &[0, 0]]);
        let report = verify_algebra(&dual_numbers(phi));
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.axiom, Axiom::PhiMultiplicative);
        let ce = fail.counterexample.as_ref().unwrap();
        assert_eq!(ce.indices, vec![1, 1]);
        assert_eq!(ce.lhs, vec![Q.zero(), Q.zero()]);
        assert_eq!(ce.rhs, vec![Q.one(), Q.zero()]);
        assert!(!report.get(Axiom::PhiInvertible).unwrap().passed());
    }

    #[test]
    fn scan_visits_lexicographically() {
        let mut seen = Vec::new();
        let check = scan(Axiom::Commutativity, &[2, 3], |t| {
            seen.push(t.to_vec());
            (vec![], vec![])
        });
        assert!(check.passed());
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 1]);
        assert_eq!(seen[5], vec![1, 2]);
        assert!(scan(Axiom::Commutativity, &[0, 2], |_| unreachable!()).passed());
    }
}
