//! Spans of products of subspaces, computed over basis vectors.

use super::{AlgebraData, HlrData};
use crate::linalg::{Field, Scalar, Subspace};

fn pairwise<F>(field: Field, dim: usize, left: &Subspace, right: &Subspace, f: F) -> Subspace
where
    F: Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
{
    let vectors = left
        .basis()
        .iter()
        .flat_map(|u| right.basis().iter().map(move |v| (u, v)))
        .map(|(u, v)| f(u, v))
        .collect::<Vec<_>>();
    Subspace::span(field, dim, vectors)
}

/// `[S, T]` inside `L`.
pub fn bracket_span(h: &HlrData, s: &Subspace, t: &Subspace) -> Subspace {
    pairwise(h.field(), h.dim(), s, t, |u, v| h.bracket(u, v))
}

/// `B · S` for `B ⊆ A`, `S ⊆ L`.
pub fn action_span(h: &HlrData, b: &Subspace, s: &Subspace) -> Subspace {
    pairwise(h.field(), h.dim(), b, s, |u, v| h.act(u, v))
}

/// `ρ(S)(B)` inside `A`.
pub fn anchor_span(h: &HlrData, s: &Subspace, b: &Subspace) -> Subspace {
    pairwise(h.field(), h.a.dim(), s, b, |x, a| h.rho(x).apply(a))
}

/// `ρ(S)(A)·L`.
pub fn anchor_action_span(h: &HlrData, s: &Subspace) -> Subspace {
    let image = anchor_span(h, s, &Subspace::full(h.field(), h.a.dim()));
    action_span(h, &image, &Subspace::full(h.field(), h.dim()))
}

/// `B · C` inside `A`.
pub fn product_span(a: &AlgebraData, b: &Subspace, c: &Subspace) -> Subspace {
    pairwise(a.field, a.dim(), b, c, |u, v| a.mul(u, v))
}

/// First product of basis vectors `f(u, v)` that leaves `target`.
pub fn first_escape<F>(target: &Subspace, left: &Subspace, right: &Subspace, f: F) -> Option<Vec<Scalar>>
where
    F: Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
{
    left.basis()
        .iter()
        .flat_map(|u| right.basis().iter().map(move |v| (u, v)))
        .map(|(u, v)| f(u, v))
        .find(|w| !target.contains(w))
}
