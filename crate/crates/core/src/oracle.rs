//! Brute-force reference implementations for cross-checking on small instances.
//!
//! These deliberately avoid the search and span machinery of the main
//! modules: connection families are enumerated and their partial sums
//! evaluated term by term, and ideal membership uses its own elimination.

use serde::Serialize;

use crate::connections::OrbitTable;
use crate::hlr::HlrData;
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::split::{Decomposition, RootFunctional};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChainBudget {
    pub max_family_len: usize,
    /// Largest `|k|` tried for `ψ^k`; `None` uses the orbit period.
    pub max_orbit_exp: Option<usize>,
}

impl Default for ChainBudget {
    fn default() -> Self {
        Self { max_family_len: 4, max_orbit_exp: None }
    }
}

/// `f∘ψ^z` on `H`, from the coordinates of `ψ` on `H`.
fn twist(d: &Decomposition, f: &RootFunctional, z: i64) -> RootFunctional {
    let p = d.psi_h.pow(z).expect("invertible on H");
    let k = f.0.len();
    let field = d.field();
    let values = (0..k).map(|j| (0..k).fold(field.zero(), |acc, i| &acc + &(p.get(i, j) * &f.0[i]))).collect();
    RootFunctional(values)
}

fn add(a: &RootFunctional, b: &RootFunctional) -> RootFunctional {
    RootFunctional(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
}

fn neg(a: &RootFunctional) -> RootFunctional {
    RootFunctional(a.0.iter().map(|x| -x).collect())
}

fn signed(fs: &[RootFunctional]) -> Vec<RootFunctional> {
    let mut out: Vec<RootFunctional> = fs.iter().flat_map(|f| [f.clone(), neg(f)]).collect();
    out.sort();
    out.dedup();
    out
}

struct RootSearch<'a> {
    d: &'a Decomposition,
    signed_roots: Vec<RootFunctional>,
    moves: Vec<RootFunctional>,
    targets: Vec<RootFunctional>,
    max_len: usize,
}

impl RootSearch<'_> {
    /// `S_i = ζ_1ψ^{-(i-1)} + Σ_{j=2..i} ζ_jψ^{-(i-j+1)}`, evaluated term by term.
    fn partial_sum(&self, family: &[RootFunctional]) -> RootFunctional {
        let i = family.len() as i64;
        let mut s = twist(self.d, &family[0], -(i - 1));
        for (idx, z) in family.iter().enumerate().skip(1) {
            let j = idx as i64 + 1;
            s = add(&s, &twist(self.d, z, -(i - j + 1)));
        }
        s
    }

    fn extend(&self, family: &mut Vec<RootFunctional>) -> bool {
        for z in &self.moves {
            family.push(z.clone());
            let s = self.partial_sum(family);
            if self.targets.contains(&s) {
                return true;
            }
            if family.len() < self.max_len && self.signed_roots.contains(&s) && self.extend(family) {
                return true;
            }
            family.pop();
        }
        false
    }
}

/// Enumerates connection families of length up to the budget.
pub fn bf_root_connected(
    d: &Decomposition,
    orbits: &OrbitTable,
    gamma: &RootFunctional,
    xi: &RootFunctional,
    budget: ChainBudget,
) -> bool {
    let exp_gamma = budget.max_orbit_exp.unwrap_or_else(|| orbits.period(gamma).unwrap_or(1)) as i64;
    let exp_xi = budget.max_orbit_exp.unwrap_or_else(|| orbits.period(xi).unwrap_or(1)) as i64;
    let starts: Vec<RootFunctional> = (-exp_gamma..=exp_gamma).map(|k| twist(d, gamma, k)).collect();
    let targets = signed(&(-exp_xi..=exp_xi).map(|m| twist(d, xi, -m)).collect::<Vec<_>>());
    if starts.iter().any(|s| targets.contains(s)) {
        return true;
    }
    let roots: Vec<RootFunctional> = d.roots.iter().map(|c| c.functional.clone()).collect();
    let weights: Vec<RootFunctional> = d.weights.iter().map(|c| c.functional.clone()).collect();
    let signed_roots = signed(&roots);
    let mut moves = signed_roots.clone();
    moves.extend(signed(&weights));
    moves.sort();
    moves.dedup();
    let search = RootSearch { d, signed_roots, moves, targets, max_len: budget.max_family_len };
    if search.max_len < 2 {
        return false;
    }
    starts.into_iter().any(|s| search.extend(&mut vec![s]))
}

/// Checks one family against the displayed sums directly.
pub fn literal_root_family(
    d: &Decomposition,
    orbits: &OrbitTable,
    gamma: &RootFunctional,
    xi: &RootFunctional,
    family: &[RootFunctional],
) -> bool {
    let roots: Vec<RootFunctional> = d.roots.iter().map(|c| c.functional.clone()).collect();
    let weights: Vec<RootFunctional> = d.weights.iter().map(|c| c.functional.clone()).collect();
    let signed_roots = signed(&roots);
    let signed_weights = signed(&weights);
    let n = family.len();
    if n < 2 || !family.iter().all(|z| signed_roots.contains(z) || signed_weights.contains(z)) {
        return false;
    }
    let period_g = orbits.period(gamma).unwrap_or(1) as i64;
    if !(-period_g..=period_g).any(|k| twist(d, gamma, k) == family[0]) {
        return false;
    }
    let search = RootSearch { d, signed_roots, moves: Vec::new(), targets: Vec::new(), max_len: n };
    for i in 2..n {
        if !search.signed_roots.contains(&search.partial_sum(&family[..i])) {
            return false;
        }
    }
    let last = search.partial_sum(family);
    let period_x = orbits.period(xi).unwrap_or(1) as i64;
    (-period_x..=period_x).any(|m| {
        let t = twist(d, xi, -m);
        t == last || neg(&t) == last
    })
}

/// Enumerates weight connection families of length up to the budget.
pub fn bf_weight_connected(
    d: &Decomposition,
    alpha: &RootFunctional,
    beta: &RootFunctional,
    budget: ChainBudget,
) -> bool {
    if alpha == beta || neg(alpha) == *beta {
        return true;
    }
    let roots: Vec<RootFunctional> = d.roots.iter().map(|c| c.functional.clone()).collect();
    let weights: Vec<RootFunctional> = d.weights.iter().map(|c| c.functional.clone()).collect();
    let mut allowed = signed(&roots);
    allowed.extend(signed(&weights));
    allowed.sort();
    allowed.dedup();
    fn go(family: &mut Vec<RootFunctional>, allowed: &[RootFunctional], beta: &RootFunctional, max_len: usize) -> bool {
        for s in allowed {
            family.push(s.clone());
            let total = family.iter().skip(1).fold(family[0].clone(), |acc, x| add(&acc, x));
            if total == *beta || total == neg(beta) {
                return true;
            }
            if family.len() < max_len && allowed.contains(&total) && go(family, allowed, beta, max_len) {
                return true;
            }
            family.pop();
        }
        false
    }
    budget.max_family_len >= 2 && go(&mut vec![alpha.clone()], &allowed, beta, budget.max_family_len)
}

/// Classes of the transitive closure of `related` over `items`, each sorted,
/// ordered by least member.
pub fn bf_partition<F>(items: &[RootFunctional], related: F) -> Vec<Vec<RootFunctional>>
where
    F: Fn(&RootFunctional, &RootFunctional) -> bool,
{
    let mut sorted = items.to_vec();
    sorted.sort();
    let n = sorted.len();
    let mut reach: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i == j || related(&sorted[i], &sorted[j]) || related(&sorted[j], &sorted[i])).collect())
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    let mut classes: Vec<Vec<RootFunctional>> = Vec::new();
    let mut assigned = vec![false; n];
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let class: Vec<RootFunctional> = (0..n).filter(|&j| reach[i][j]).map(|j| sorted[j].clone()).collect();
        for j in 0..n {
            if reach[i][j] {
                assigned[j] = true;
            }
        }
        classes.push(class);
    }
    classes
}

/// Rank by plain Gaussian elimination on a row list.
fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        let (done, rest) = rows.split_at_mut(r + 1);
        let pivot = &done[r];
        for row in rest.iter_mut().filter(|row| !row[c].is_zero()) {
            let f = &row[c] * &inv;
            for k in c..cols {
                row[k] = &row[k] - &(&f * &pivot[k]);
            }
        }
        r += 1;
    }
    r
}

fn in_span(basis: &[Vec<Scalar>], base_rank: usize, v: Vec<Scalar>) -> bool {
    let mut rows = basis.to_vec();
    rows.push(v);
    rank(rows) == base_rank
}

fn combine(field_zero: &Scalar, coeffs: &[Scalar], vectors: impl Fn(usize) -> Vec<Scalar>, len: usize) -> Vec<Scalar> {
    let mut out = vec![field_zero.clone(); len];
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().zip(vectors(i)) {
            *o = &*o + &(c * &v);
        }
    }
    out
}

/// Ideal test written directly against the structure tensors.
pub fn bf_is_ideal(h: &HlrData, i: &Subspace) -> bool {
    let n = h.dim();
    let m = h.a.dim();
    let zero = h.field().zero();
    let basis = i.basis().to_vec();
    let base_rank = rank(basis.clone());
    let bracket_row =
        |u: &[Scalar], j: usize| combine(&zero, u, |p| (0..n).map(|k| h.bracket.get(p, j, k).clone()).collect(), n);
    let act_on = |a: &[Scalar], x: &[Scalar]| {
        let mut out = vec![zero.clone(); n];
        for (p, ap) in a.iter().enumerate() {
            for (q, xq) in x.iter().enumerate() {
                if ap.is_zero() || xq.is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o = &*o + &(&(ap * xq) * h.action.get(p, q, k));
                }
            }
        }
        out
    };
    let unit = |len: usize, k: usize| -> Vec<Scalar> {
        (0..len).map(|t| if t == k { h.field().one() } else { zero.clone() }).collect()
    };
    for u in &basis {
        for j in 0..n {
            if !in_span(&basis, base_rank, bracket_row(u, j)) {
                return false;
            }
        }
        let psi_u = combine(&zero, u, |p| (0..n).map(|k| h.psi.get(k, p).clone()).collect(), n);
        if !in_span(&basis, base_rank, psi_u) {
            return false;
        }
        let rho_u: Matrix = u
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Matrix::zeros(h.field(), m, m), |acc, (p, c)| acc.add(&h.anchor[p].scale(c)));
        for k in 0..m {
            if !in_span(&basis, base_rank, act_on(&unit(m, k), u)) {
                return false;
            }
            let image: Vec<Scalar> = (0..m).map(|r| rho_u.get(r, k).clone()).collect();
            for j in 0..n {
                if !in_span(&basis, base_rank, act_on(&image, &unit(n, j))) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    const Q: Field = Field::Rational;

    #[test]
    fn elimination_rank() {
        let rows =
            vec![vec![Q.from_i64(1), Q.from_i64(2)], vec![Q.from_i64(2), Q.from_i64(4)], vec![Q.zero(), Q.zero()]];
        assert_eq!(rank(rows), 1);
        assert_eq!(rank(Vec::new()), 0);
    }

    #[test]
    fn partition_closes_transitively() {
        let f = |x: i64| RootFunctional(vec![Q.from_i64(x)]);
        let items = vec![f(3), f(1), f(2), f(5)];
        // 1~2, 2~3 only
        let classes = bf_partition(&items, |a, b| {
            let (x, y) = (&a.0[0], &b.0[0]);
            (x == &Q.from_i64(1) && y == &Q.from_i64(2)) || (x == &Q.from_i64(2) && y == &Q.from_i64(3))
        });
        assert_eq!(classes, vec![vec![f(1), f(2), f(3)], vec![f(5)]]);
    }
}
