//! Centers, ideals, closures and simplicity.

use serde::Serialize;

use super::{action_span, anchor_action_span, anchor_span, bracket_span, first_escape, product_span, HlrData};
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::split::Decomposition;

fn stacked_kernel(field: crate::linalg::Field, cols: usize, columns: Vec<Vec<Scalar>>) -> Subspace {
    let rows = columns.first().map_or(0, Vec::len);
    if rows == 0 {
        return Subspace::full(field, cols);
    }
    Matrix::from_columns(field, rows, &columns).kernel()
}

/// `{v ∈ L : [v, L] = 0, ρ(v) = 0}`.
pub fn center_l(h: &HlrData) -> Subspace {
    let n = h.dim();
    let columns = (0..n)
        .map(|i| {
            let mut col: Vec<Scalar> = (0..n).flat_map(|j| h.bracket.fiber(i, j).to_vec()).collect();
            col.extend(h.anchor[i].entries().iter().cloned());
            col
        })
        .collect();
    stacked_kernel(h.field(), n, columns)
}

/// `{a ∈ A : aA = 0}`.
pub fn center_a(h: &HlrData) -> Subspace {
    let a = &h.a;
    let m = a.dim();
    let columns = (0..m).map(|i| (0..m).flat_map(|j| a.mult.fiber(i, j).to_vec()).collect()).collect();
    stacked_kernel(a.field, m, columns)
}

/// `Ker ρ ⊆ L`.
pub fn kernel_of_anchor(h: &HlrData) -> Subspace {
    let columns = h.anchor.iter().map(|r| r.entries().to_vec()).collect();
    stacked_kernel(h.field(), h.dim(), columns)
}

/// Witnesses for each ideal condition; `None` means the containment holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealCheck {
    /// `[I, L] ⊆ I`
    pub bracket: Option<Vec<Scalar>>,
    /// `ψ(I) ⊆ I`
    pub twist: Option<Vec<Scalar>>,
    /// `A·I ⊆ I`
    pub module: Option<Vec<Scalar>>,
    /// `ρ(I)(A)·L ⊆ I`
    pub anchor: Option<Vec<Scalar>>,
}

impl IdealCheck {
    pub fn is_ideal(&self) -> bool {
        self.bracket.is_none() && self.twist.is_none() && self.module.is_none() && self.anchor.is_none()
    }
}

pub fn check_ideal(h: &HlrData, i: &Subspace) -> IdealCheck {
    let field = h.field();
    let full_l = Subspace::full(field, h.dim());
    let full_a = Subspace::full(field, h.a.dim());
    let image = anchor_span(h, i, &full_a);
    IdealCheck {
        bracket: first_escape(i, i, &full_l, |u, v| h.bracket(u, v)),
        twist: i.basis().iter().map(|v| h.psi.apply(v)).find(|w| !i.contains(w)),
        module: first_escape(i, &full_a, i, |a, x| h.act(a, x)),
        anchor: first_escape(i, &image, &full_l, |a, x| h.act(a, x)),
    }
}

pub fn is_ideal(h: &HlrData, i: &Subspace) -> bool {
    check_ideal(h, i).is_ideal()
}

/// Closed under the bracket, `ψ`, and the `A`-action.
pub fn is_subalgebra(h: &HlrData, s: &Subspace) -> bool {
    let full_a = Subspace::full(h.field(), h.a.dim());
    s.contains_space(&bracket_span(h, s, s))
        && s.contains_space(&s.map(&h.psi))
        && s.contains_space(&action_span(h, &full_a, s))
}

/// Smallest ideal containing `seed` that is also stable under `ψ⁻¹`.
pub fn ideal_closure(h: &HlrData, seed: &Subspace) -> Subspace {
    let field = h.field();
    let full_l = Subspace::full(field, h.dim());
    let full_a = Subspace::full(field, h.a.dim());
    let psi_inv = h.psi.inverse();
    let mut s = seed.clone();
    loop {
        let mut parts =
            vec![bracket_span(h, &s, &full_l), s.map(&h.psi), action_span(h, &full_a, &s), anchor_action_span(h, &s)];
        if let Some(inv) = &psi_inv {
            parts.push(s.map(inv));
        }
        parts.push(s.clone());
        let next = Subspace::sum_all(field, h.dim(), &parts).expect("ambient L");
        if next.dim() == s.dim() {
            return s;
        }
        s = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityVerdict {
    pub simple: bool,
    pub bracket_nonzero: bool,
    pub algebra_product_nonzero: bool,
    pub action_nonzero: bool,
    pub anchor_kernel_dim: usize,
    pub seeds_tested: usize,
    /// An ideal generated by a seed that is neither the whole space, zero nor `Ker ρ`.
    pub proper_ideal: Option<Subspace>,
    /// Every root space is one-dimensional, so the seeds cover all cases.
    pub seed_complete: bool,
}

pub fn is_simple(h: &HlrData, d: &Decomposition) -> SimplicityVerdict {
    simplicity_within(h, d, &Subspace::full(h.field(), h.dim()))
}

/// Simplicity of the ideal `j`, testing closures of one-dimensional seeds
/// drawn from `j ∩ H` and `j ∩ L_γ`.
pub fn simplicity_within(h: &HlrData, d: &Decomposition, j: &Subspace) -> SimplicityVerdict {
    let field = h.field();
    let full_a = Subspace::full(field, h.a.dim());
    let bracket_nonzero = !bracket_span(h, j, j).is_zero();
    let algebra_product_nonzero = !product_span(&h.a, &full_a, &full_a).is_zero();
    let action_nonzero = !action_span(h, &full_a, j).is_zero();
    let ker = kernel_of_anchor(h).intersect(j).expect("ambient L");

    let mut seeds: Vec<Vec<Scalar>> = d.h.intersect(j).expect("ambient L").basis().to_vec();
    for root in &d.roots {
        seeds.extend(root.space.intersect(j).expect("ambient L").basis().iter().cloned());
    }
    let proper_ideal = seeds.iter().find_map(|v| {
        let c = ideal_closure(h, &Subspace::span(field, h.dim(), [v.clone()]));
        (c != *j && c != ker).then_some(c)
    });
    SimplicityVerdict {
        simple: bracket_nonzero && algebra_product_nonzero && action_nonzero && proper_ideal.is_none(),
        bracket_nonzero,
        algebra_product_nonzero,
        action_nonzero,
        anchor_kernel_dim: ker.dim(),
        seeds_tested: seeds.len(),
        proper_ideal,
        seed_complete: d.roots.iter().all(|r| r.space.dim() == 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::build;
    use crate::linalg::unit;
    use crate::split::split;

    fn entry(id: &str) -> (HlrData, Subspace) {
        let e = build(id).unwrap();
        (e.data, e.h)
    }

    fn span(h: &HlrData, idx: &[usize]) -> Subspace {
        let n = h.dim();
        Subspace::span(h.field(), n, idx.iter().map(|&i| unit(h.field(), n, i)))
    }

    #[test]
    fn centers() {
        let (sl2, _) = entry("E1");
        assert!(center_l(&sl2).is_zero());
        assert!(center_a(&sl2).is_zero());
        let (line, _) = entry("E2");
        assert!(center_l(&line).is_full());
    }

    #[test]
    fn ideal_membership() {
        let (sl2, _) = entry("E1");
        assert!(is_ideal(&sl2, &Subspace::zero(sl2.field(), 3)));
        assert!(is_ideal(&sl2, &Subspace::full(sl2.field(), 3)));
        let e = span(&sl2, &[1]);
        let check = check_ideal(&sl2, &e);
        assert!(!check.is_ideal());
        assert!(check.bracket.is_some());
        assert!(is_subalgebra(&sl2, &e));
        let (blocks, _) = entry("E4");
        assert!(is_ideal(&blocks, &span(&blocks, &[0, 1, 2])));
    }

    #[test]
    fn closures() {
        let (sl2, _) = entry("E1");
        assert!(ideal_closure(&sl2, &Subspace::zero(sl2.field(), 3)).is_zero());
        assert!(ideal_closure(&sl2, &span(&sl2, &[1])).is_full());
        let (blocks, _) = entry("E4");
        assert_eq!(ideal_closure(&blocks, &span(&blocks, &[1])), span(&blocks, &[0, 1, 2]));
    }

    #[test]
    fn simplicity() {
        let (sl2, h) = entry("E1");
        let v = is_simple(&sl2, &split(&sl2, &h).unwrap());
        assert!(v.simple && v.seed_complete);
        assert_eq!(v.proper_ideal, None);

        let (blocks, h) = entry("E4");
        let v = is_simple(&blocks, &split(&blocks, &h).unwrap());
        assert!(!v.simple);
        assert_eq!(v.proper_ideal, Some(span(&blocks, &[0, 1, 2])));

        let (line, h) = entry("E2");
        let v = is_simple(&line, &split(&line, &h).unwrap());
        assert!(!v.simple && !v.bracket_nonzero);
    }

    #[test]
    fn anchor_kernel() {
        let (dual, _) = entry("E3");
        assert_eq!(kernel_of_anchor(&dual), span(&dual, &[1, 2, 3]));
    }
}
