//! Connections between roots and between weights, and their equivalence classes.
//!
//! A root connection `{ζ_1, …, ζ_n}` from `γ` to `ξ` starts at some `ζ_1 = γψ^k`
//! and requires the partial sums
//!
//! ```text
//! S_i = ζ_1ψ^{-(i-1)} + ζ_2ψ^{-(i-1)} + ζ_3ψ^{-(i-2)} + … + ζ_iψ^{-1}
//! ```
//!
//! to lie in `±Γ` for `2 ≤ i < n`, with `S_n ∈ {±ξψ^{-m}}`. Each `S_{i+1}`
//! differs from `S_i` by one more application of `ψ⁻¹` after adding `ζ_{i+1}`,
//! so `S_{i+1} = (S_i + ζ_{i+1})ψ⁻¹` with `S_1 = ζ_1`. The search below walks
//! this recurrence breadth-first over functional values.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::Serialize;
use thiserror::Error;

use crate::split::{Decomposition, RootFunctional};

pub const DEFAULT_ORBIT_BOUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("orbit bound must be at least 1")]
    InvalidBound,
    #[error("orbit of {root} under the twist does not close within {bound} steps")]
    OrbitUnbounded { root: RootFunctional, bound: usize },
    #[error("{0} has no recorded orbit")]
    MissingOrbit(RootFunctional),
    #[error("computed connection relation is not an equivalence on {left} and {right}")]
    NotEquivalence { left: RootFunctional, right: RootFunctional },
}

/// The cycles `{γψ^{-k}}` of every `γ ∈ ±Γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitTable {
    pub bound: usize,
    /// Members listed as `γ, γψ⁻¹, γψ⁻², …`; the period is the length.
    #[serde(serialize_with = "orbits_as_list")]
    pub orbits: BTreeMap<RootFunctional, Vec<RootFunctional>>,
}

fn orbits_as_list<S: serde::Serializer>(
    orbits: &BTreeMap<RootFunctional, Vec<RootFunctional>>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry<'a> {
        root: &'a RootFunctional,
        orbit: &'a [RootFunctional],
    }
    serializer.collect_seq(orbits.iter().map(|(root, orbit)| Entry { root, orbit }))
}

impl OrbitTable {
    pub fn orbit(&self, f: &RootFunctional) -> Result<&[RootFunctional], ConnectionError> {
        self.orbits.get(f).map(Vec::as_slice).ok_or_else(|| ConnectionError::MissingOrbit(f.clone()))
    }

    pub fn period(&self, f: &RootFunctional) -> Result<usize, ConnectionError> {
        self.orbit(f).map(<[RootFunctional]>::len)
    }

    pub fn max_period(&self) -> usize {
        self.orbits.values().map(Vec::len).max().unwrap_or(1)
    }
}

/// Iterates `γ ↦ γψ⁻¹` from each `γ ∈ ±Γ` until it returns to `γ`.
pub fn build_orbits(d: &Decomposition, bound: usize) -> Result<OrbitTable, ConnectionError> {
    if bound == 0 {
        return Err(ConnectionError::InvalidBound);
    }
    let mut orbits = BTreeMap::new();
    for c in &d.roots {
        for start in [c.functional.clone(), c.functional.neg()] {
            if orbits.contains_key(&start) {
                continue;
            }
            let cycle = orbit_of(d, &start, bound)?;
            orbits.insert(start, cycle);
        }
    }
    Ok(OrbitTable { bound, orbits })
}

/// The cycle of a single functional under `ψ⁻¹`.
pub fn orbit_of(
    d: &Decomposition,
    start: &RootFunctional,
    bound: usize,
) -> Result<Vec<RootFunctional>, ConnectionError> {
    let mut cycle = vec![start.clone()];
    let mut current = d.psi_shift(start, -1);
    while &current != start {
        if cycle.len() >= bound {
            return Err(ConnectionError::OrbitUnbounded { root: start.clone(), bound });
        }
        cycle.push(current.clone());
        current = d.psi_shift(&current, -1);
    }
    Ok(cycle)
}

/// Why two roots or weights are connected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `ξ = sign · γψ^shift`
    Direct { sign: i8, shift: i64 },
    /// A connection family `{ζ_1, …, ζ_n}`.
    Family { family: Vec<RootFunctional> },
}

/// The sets `±Γ` and `±Λ ∪ ±Γ`.
struct Steps {
    signed_roots: BTreeSet<RootFunctional>,
    moves: Vec<RootFunctional>,
}

impl Steps {
    fn new(d: &Decomposition) -> Self {
        let signed = |v: Vec<RootFunctional>| -> BTreeSet<RootFunctional> {
            v.iter().flat_map(|f| [f.clone(), f.neg()]).collect()
        };
        let signed_roots = signed(d.root_functionals());
        let signed_weights = signed(d.weight_functionals());
        let moves = signed_weights.union(&signed_roots).cloned().collect();
        Self { signed_roots, moves }
    }
}

fn direct(orbit: &[RootFunctional], target: &RootFunctional) -> Option<Witness> {
    for (k, member) in orbit.iter().enumerate() {
        if member == target {
            return Some(Witness::Direct { sign: 1, shift: -(k as i64) });
        }
        if &member.neg() == target {
            return Some(Witness::Direct { sign: -1, shift: -(k as i64) });
        }
    }
    None
}

/// Shortest connection from `γ` to `ξ`, if any.
pub fn root_connected(
    d: &Decomposition,
    orbits: &OrbitTable,
    gamma: &RootFunctional,
    xi: &RootFunctional,
) -> Result<Option<Witness>, ConnectionError> {
    let start_orbit = orbits.orbit(gamma)?;
    if let Some(w) = direct(start_orbit, xi) {
        return Ok(Some(w));
    }
    let accept: BTreeSet<RootFunctional> = orbits.orbit(xi)?.iter().flat_map(|f| [f.clone(), f.neg()]).collect();
    let steps = Steps::new(d);
    let mut parent: BTreeMap<RootFunctional, Option<(RootFunctional, RootFunctional)>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for s in start_orbit {
        if !parent.contains_key(s) {
            parent.insert(s.clone(), None);
            queue.push_back(s.clone());
        }
    }
    while let Some(mu) = queue.pop_front() {
        for z in &steps.moves {
            let next = d.psi_shift(&mu.add(z), -1);
            if accept.contains(&next) {
                let mut family = vec![z.clone()];
                let mut cur = mu.clone();
                while let Some(Some((prev, step))) = parent.get(&cur) {
                    family.push(step.clone());
                    cur = prev.clone();
                }
                family.push(cur);
                family.reverse();
                return Ok(Some(Witness::Family { family }));
            }
            if steps.signed_roots.contains(&next) && !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((mu.clone(), z.clone())));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// Shortest weight connection from `α` to `β`, if any.
pub fn weight_connected(d: &Decomposition, alpha: &RootFunctional, beta: &RootFunctional) -> Option<Witness> {
    if alpha == beta {
        return Some(Witness::Direct { sign: 1, shift: 0 });
    }
    if &alpha.neg() == beta {
        return Some(Witness::Direct { sign: -1, shift: 0 });
    }
    let steps = Steps::new(d);
    let allowed: BTreeSet<&RootFunctional> = steps.moves.iter().collect();
    let mut parent: BTreeMap<RootFunctional, Option<(RootFunctional, RootFunctional)>> = BTreeMap::new();
    parent.insert(alpha.clone(), None);
    let mut queue = VecDeque::from([alpha.clone()]);
    while let Some(mu) = queue.pop_front() {
        for s in &steps.moves {
            let next = mu.add(s);
            if &next == beta || next == beta.neg() {
                let mut family = vec![s.clone()];
                let mut cur = mu.clone();
                while let Some(Some((prev, step))) = parent.get(&cur) {
                    family.push(step.clone());
                    cur = prev.clone();
                }
                family.push(cur);
                family.reverse();
                return Some(Witness::Family { family });
            }
            if allowed.contains(&next) && !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((mu.clone(), s.clone())));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Replays a root witness through the recurrence `S_{i+1} = (S_i + ζ_{i+1})ψ⁻¹`.
pub fn replay_root_witness(
    d: &Decomposition,
    orbits: &OrbitTable,
    gamma: &RootFunctional,
    xi: &RootFunctional,
    witness: &Witness,
) -> Result<bool, ConnectionError> {
    match witness {
        Witness::Direct { sign, shift } => {
            let shifted = d.psi_shift(gamma, *shift);
            Ok(if *sign < 0 { shifted.neg() == *xi } else { shifted == *xi })
        }
        Witness::Family { family } => {
            let steps = Steps::new(d);
            if family.len() < 2
                || !orbits.orbit(gamma)?.contains(&family[0])
                || !family.iter().all(|z| steps.moves.contains(z))
            {
                return Ok(false);
            }
            let mut sum = family[0].clone();
            for (i, z) in family.iter().enumerate().skip(1) {
                sum = d.psi_shift(&sum.add(z), -1);
                if i + 1 < family.len() && !steps.signed_roots.contains(&sum) {
                    return Ok(false);
                }
            }
            let xi_orbit = orbits.orbit(xi)?;
            Ok(xi_orbit.iter().any(|f| *f == sum || f.neg() == sum))
        }
    }
}

/// Replays a weight witness through plain partial sums.
pub fn replay_weight_witness(
    d: &Decomposition,
    alpha: &RootFunctional,
    beta: &RootFunctional,
    witness: &Witness,
) -> bool {
    match witness {
        Witness::Direct { sign, .. } => {
            if *sign < 0 {
                alpha.neg() == *beta
            } else {
                alpha == beta
            }
        }
        Witness::Family { family } => {
            let steps = Steps::new(d);
            if family.len() < 2 || family[0] != *alpha || !family.iter().all(|s| steps.moves.contains(s)) {
                return false;
            }
            let mut sum = family[0].clone();
            for (i, s) in family.iter().enumerate().skip(1) {
                sum = sum.add(s);
                if i + 1 < family.len() && !steps.moves.contains(&sum) {
                    return false;
                }
            }
            sum == *beta || sum == beta.neg()
        }
    }
}

/// An equivalence class with a witness from the representative to each member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectionClass {
    pub representative: RootFunctional,
    pub members: Vec<RootFunctional>,
    pub witnesses: Vec<Witness>,
}

impl ConnectionClass {
    pub fn contains(&self, f: &RootFunctional) -> bool {
        self.members.contains(f)
    }
}

/// Partitions `items` by the relation `connected`, checking that the result
/// is an equivalence: every pair inside a class is connected both ways and no
/// pair across classes is.
fn partition<F>(items: &[RootFunctional], mut connected: F) -> Result<Vec<ConnectionClass>, ConnectionError>
where
    F: FnMut(&RootFunctional, &RootFunctional) -> Result<Option<Witness>, ConnectionError>,
{
    let mut sorted = items.to_vec();
    sorted.sort();
    let n = sorted.len();
    let mut table = vec![vec![None; n]; n];
    let mut uf = UnionFind::<usize>::new(n);
    for i in 0..n {
        for j in 0..n {
            table[i][j] = connected(&sorted[i], &sorted[j])?;
            if table[i][j].is_some() {
                uf.union(i, j);
            }
        }
    }
    let labels = uf.into_labeling();
    for i in 0..n {
        for j in 0..n {
            if (labels[i] == labels[j]) != table[i][j].is_some() {
                return Err(ConnectionError::NotEquivalence { left: sorted[i].clone(), right: sorted[j].clone() });
            }
        }
    }
    let mut classes: Vec<ConnectionClass> = Vec::new();
    let mut seen = BTreeMap::new();
    for i in 0..n {
        match seen.get(&labels[i]) {
            None => {
                seen.insert(labels[i], classes.len());
                classes.push(ConnectionClass {
                    representative: sorted[i].clone(),
                    members: vec![sorted[i].clone()],
                    witnesses: vec![table[i][i].clone().expect("reflexive")],
                });
            }
            Some(&c) => {
                let rep = sorted.iter().position(|f| *f == classes[c].representative).expect("rep");
                classes[c].members.push(sorted[i].clone());
                classes[c].witnesses.push(table[rep][i].clone().expect("same class"));
            }
        }
    }
    Ok(classes)
}

/// `Γ/∼`, sorted by representative (the least member).
pub fn root_classes(d: &Decomposition, orbits: &OrbitTable) -> Result<Vec<ConnectionClass>, ConnectionError> {
    partition(&d.root_functionals(), |g, x| root_connected(d, orbits, g, x))
}

/// `Λ/≈`, sorted by representative (the least member).
pub fn weight_classes(d: &Decomposition) -> Result<Vec<ConnectionClass>, ConnectionError> {
    partition(&d.weight_functionals(), |a, b| Ok(weight_connected(d, a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Field, Matrix, Subspace};
    use crate::split::Component;

    const Q: Field = Field::Rational;

    fn f(v: &[i64]) -> RootFunctional {
        RootFunctional(v.iter().map(|&x| Q.from_i64(x)).collect())
    }

    /// A bare decomposition; the spaces are placeholders since connections
    /// only read functionals.
    fn decomposition(psi_h: Matrix, roots: &[&[i64]], weights: &[&[i64]]) -> Decomposition {
        let k = psi_h.rows();
        let comp = |v: &&[i64]| Component { functional: f(v), space: Subspace::zero(Q, 1) };
        Decomposition {
            h: Subspace::full(Q, k),
            psi_h,
            roots: roots.iter().map(comp).collect(),
            weights: weights.iter().map(comp).collect(),
            a0: Subspace::zero(Q, 1),
        }
    }

    #[test]
    fn identity_twist_gives_singletons() {
        let d = decomposition(Matrix::identity(Q, 1), &[&[2], &[-2]], &[]);
        let t = build_orbits(&d, 4).unwrap();
        assert_eq!(t.orbit(&f(&[2])).unwrap(), &[f(&[2])]);
    }

    #[test]
    fn sign_flip_has_period_two() {
        let d = decomposition(Matrix::from_i64(Q, &[&[-1]]), &[&[2]], &[]);
        let t = build_orbits(&d, 4).unwrap();
        assert_eq!(t.orbit(&f(&[2])).unwrap(), &[f(&[2]), f(&[-2])]);
        assert_eq!(t.period(&f(&[2])).unwrap(), 2);
    }

    #[test]
    fn doubling_never_cycles() {
        let d = decomposition(Matrix::from_i64(Q, &[&[2]]), &[&[1]], &[]);
        assert_eq!(build_orbits(&d, 8), Err(ConnectionError::OrbitUnbounded { root: f(&[1]), bound: 8 }));
        assert_eq!(build_orbits(&d, 0), Err(ConnectionError::InvalidBound));
    }

    #[test]
    fn opposite_roots_are_directly_connected() {
        let d = decomposition(Matrix::identity(Q, 1), &[&[2], &[-2]], &[]);
        let t = build_orbits(&d, 4).unwrap();
        let w = root_connected(&d, &t, &f(&[2]), &f(&[-2])).unwrap().unwrap();
        assert_eq!(w, Witness::Direct { sign: -1, shift: 0 });
        let classes = root_classes(&d, &t).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members, vec![f(&[-2]), f(&[2])]);
    }

    #[test]
    fn doubling_root_connected_by_family() {
        let d = decomposition(Matrix::identity(Q, 1), &[&[1], &[2]], &[&[1]]);
        let t = build_orbits(&d, 4).unwrap();
        let w = root_connected(&d, &t, &f(&[1]), &f(&[2])).unwrap().unwrap();
        let Witness::Family { family } = &w else { panic!("expected a family") };
        assert_eq!(family.len(), 2);
        assert_eq!(family[0], f(&[1]));
        assert!(replay_root_witness(&d, &t, &f(&[1]), &f(&[2]), &w).unwrap());
    }

    #[test]
    fn independent_blocks_stay_apart() {
        let d = decomposition(Matrix::identity(Q, 2), &[&[2, 0], &[-2, 0], &[0, 2], &[0, -2]], &[]);
        let t = build_orbits(&d, 4).unwrap();
        assert!(root_connected(&d, &t, &f(&[2, 0]), &f(&[0, 2])).unwrap().is_none());
        assert_eq!(root_classes(&d, &t).unwrap().len(), 2);
    }

    #[test]
    fn weights_connected_through_root() {
        let d = decomposition(Matrix::identity(Q, 1), &[&[3]], &[&[1], &[4]]);
        assert_eq!(weight_connected(&d, &f(&[1]), &f(&[1])), Some(Witness::Direct { sign: 1, shift: 0 }));
        let w = weight_connected(&d, &f(&[1]), &f(&[4])).unwrap();
        assert_eq!(w, Witness::Family { family: vec![f(&[1]), f(&[3])] });
        assert!(replay_weight_witness(&d, &f(&[1]), &f(&[4]), &w));
        assert_eq!(weight_classes(&d).unwrap().len(), 1);
    }

    #[test]
    fn tampered_witness_rejected() {
        let d = decomposition(Matrix::identity(Q, 1), &[&[1], &[2]], &[&[1]]);
        let t = build_orbits(&d, 4).unwrap();
        let bad = Witness::Family { family: vec![f(&[1]), f(&[2])] };
        assert!(!replay_root_witness(&d, &t, &f(&[1]), &f(&[2]), &bad).unwrap());
    }
}
