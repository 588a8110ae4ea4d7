//! Hochschild, cyclic, dihedral and skew-dihedral homology of finite
//! dimensional algebras, with coefficients in the algebra itself.
//!
//! `C_n = R^{(x)(n+1)}` has the basis of words `r_0 .. r_n` over the algebra
//! basis, indexed in base `dim R` with `r_0` most significant.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assoc::{normalize, Coords, FinAssocAlg};
use crate::error::{domain, Result};
use crate::linalg::SparseMatrix;
use crate::report::{BettiReport, Limits};
use crate::scalar::{sign_pow, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomologyKind {
    Hochschild,
    Cyclic,
    /// Coinvariants of `D_{n+1}` with `y` acting as given.
    Dihedral,
    /// Coinvariants with `y` replaced by `-y`.
    SkewDihedral,
}

impl HomologyKind {
    pub fn name(self) -> &'static str {
        match self {
            HomologyKind::Hochschild => "hochschild",
            HomologyKind::Cyclic => "cyclic",
            HomologyKind::Dihedral => "dihedral",
            HomologyKind::SkewDihedral => "skew-dihedral",
        }
    }

    /// `+1` selects dihedral, `-1` skew-dihedral.
    pub fn dihedral(sign: i64) -> Result<Self> {
        match sign {
            1 => Ok(HomologyKind::Dihedral),
            -1 => Ok(HomologyKind::SkewDihedral),
            s => domain(format!("dihedral sign must be +1 or -1, got {s}")),
        }
    }
}

/// Words of length `n + 1` over an alphabet of size `d`.
#[derive(Clone, Copy, Debug)]
pub struct Words {
    pub d: usize,
    pub n: usize,
}

impl Words {
    pub fn count(&self) -> usize {
        self.d.pow(self.n as u32 + 1)
    }

    pub fn word(&self, mut idx: usize) -> Vec<usize> {
        let mut w = vec![0; self.n + 1];
        for t in (0..=self.n).rev() {
            w[t] = idx % self.d;
            idx /= self.d;
        }
        w
    }

    pub fn index(&self, w: &[usize]) -> usize {
        w.iter().fold(0, |acc, &r| acc * self.d + r)
    }
}

/// Extends a basis map linearly.
pub fn apply<F: Field>(v: &[(usize, F)], f: impl Fn(usize) -> Coords<F>) -> Coords<F> {
    let mut acc = Vec::new();
    for (i, c) in v {
        for (j, e) in f(*i) {
            acc.push((j, c.clone() * e));
        }
    }
    normalize(acc)
}

/// `a_0 (x) .. (x) a_m` for sparse factors over an alphabet of size `d`.
fn tensor<F: Field>(parts: &[Coords<F>], d: usize) -> Coords<F> {
    let mut acc: Coords<F> = vec![(0, F::one())];
    for p in parts {
        let mut next = Vec::with_capacity(acc.len() * p.len());
        for (i, a) in &acc {
            for (k, b) in p {
                next.push((i * d + k, a.clone() * b.clone()));
            }
        }
        acc = next;
    }
    normalize(acc)
}

fn letter<F: Field>(r: usize) -> Coords<F> {
    vec![(r, F::one())]
}

/// `b : C_n -> C_{n-1}` on a basis word, `n >= 1`:
/// `sum_{i<n} (-1)^i r_0 .. r_i r_{i+1} .. r_n + (-1)^n r_n r_0 (x) r_1 .. r_{n-1}`.
pub fn hochschild_b<F: Field>(alg: &FinAssocAlg<F>, n: usize, idx: usize) -> Coords<F> {
    let d = alg.dim();
    let w = Words { d, n }.word(idx);
    let mut acc = Vec::new();
    for i in 0..n {
        let mut parts: Vec<Coords<F>> = Vec::with_capacity(n);
        parts.extend(w[..i].iter().map(|&r| letter(r)));
        parts.push(alg.mul_basis(w[i], w[i + 1]).to_vec());
        parts.extend(w[i + 2..].iter().map(|&r| letter(r)));
        let s: F = sign_pow(i as i64);
        acc.extend(tensor(&parts, d).into_iter().map(|(k, c)| (k, s.clone() * c)));
    }
    let mut parts: Vec<Coords<F>> = vec![alg.mul_basis(w[n], w[0]).to_vec()];
    parts.extend(w[1..n].iter().map(|&r| letter(r)));
    let s: F = sign_pow(n as i64);
    acc.extend(tensor(&parts, d).into_iter().map(|(k, c)| (k, s.clone() * c)));
    normalize(acc)
}

/// `x(r_0 .. r_n) = (-1)^n r_n r_0 .. r_{n-1}`.
pub fn cyclic_x<F: Field>(d: usize, n: usize, idx: usize) -> Coords<F> {
    let words = Words { d, n };
    let w = words.word(idx);
    let mut r = Vec::with_capacity(n + 1);
    r.push(w[n]);
    r.extend_from_slice(&w[..n]);
    vec![(words.index(&r), sign_pow(n as i64))]
}

/// `y(r_0 .. r_n) = (-1)^{n(n+1)/2} bar r_0 (x) bar r_n (x) .. (x) bar r_1`,
/// negated when `skew`.
pub fn dihedral_y<F: Field>(alg: &FinAssocAlg<F>, n: usize, skew: bool, idx: usize) -> Coords<F> {
    let d = alg.dim();
    let w = Words { d, n }.word(idx);
    let mut parts = vec![alg.bar_basis(w[0])];
    parts.extend(w[1..].iter().rev().map(|&r| alg.bar_basis(r)));
    let mut s: F = sign_pow((n * (n + 1) / 2) as i64);
    if skew {
        s = -s;
    }
    tensor(&parts, d).into_iter().map(|(k, c)| (k, s.clone() * c)).collect()
}

/// The averaging idempotent of the group acting on `C_n` for `kind`, applied
/// to a basis word. Hochschild uses the trivial group.
pub fn average<F: Field>(alg: &FinAssocAlg<F>, kind: HomologyKind, n: usize, idx: usize) -> Coords<F> {
    let d = alg.dim();
    let mut orbit: Vec<Coords<F>> = vec![letter(idx)];
    if kind == HomologyKind::Hochschild {
        return orbit.pop().unwrap_or_default();
    }
    if matches!(kind, HomologyKind::Dihedral | HomologyKind::SkewDihedral) {
        orbit.push(dihedral_y(alg, n, kind == HomologyKind::SkewDihedral, idx));
    }
    let mut acc = Vec::new();
    for start in orbit {
        let mut cur = start;
        for _ in 0..=n {
            acc.extend(cur.iter().cloned());
            cur = apply(&cur, |j| cyclic_x(d, n, j));
        }
    }
    let order = acc_order(kind, n);
    let inv = F::one() / F::from_i64(order as i64);
    normalize(acc).into_iter().map(|(k, c)| (k, c * inv.clone())).collect()
}

fn acc_order(kind: HomologyKind, n: usize) -> usize {
    match kind {
        HomologyKind::Hochschild => 1,
        HomologyKind::Cyclic => n + 1,
        HomologyKind::Dihedral | HomologyKind::SkewDihedral => 2 * (n + 1),
    }
}

/// Scale so the leading coefficient is one.
fn monic<F: Field>(v: Coords<F>) -> Coords<F> {
    match v.first() {
        None => v,
        Some((_, lead)) => {
            let inv = F::one() / lead.clone();
            v.into_iter().map(|(k, c)| (k, c * inv.clone())).collect()
        }
    }
}

/// Spanning set of the image of the averaging idempotent on `C_n`, with
/// duplicate directions removed.
fn image_spanning_set<F: Field>(alg: &FinAssocAlg<F>, kind: HomologyKind, n: usize) -> Vec<Coords<F>> {
    let count = Words { d: alg.dim(), n }.count();
    let all: Vec<Coords<F>> = (0..count)
        .into_par_iter()
        .map(|i| monic(average(alg, kind, n, i)))
        .collect();
    let mut seen = HashSet::new();
    all.into_iter()
        .filter(|v| !v.is_empty() && seen.insert(v.clone()))
        .collect()
}

fn rank_of_rows<F: Field>(ncols: usize, rows: Vec<Coords<F>>) -> usize {
    let mut m = SparseMatrix::new(ncols);
    for r in rows {
        m.push_row(r);
    }
    m.rank()
}

fn check_limits<F: Field>(alg: &FinAssocAlg<F>, pmax: usize, limits: &Limits) -> Result<()> {
    let needed = (alg.dim() as u128)
        .checked_pow(pmax as u32 + 2)
        .unwrap_or(u128::MAX);
    limits.check(format!("tensor power {} of a {}-dimensional algebra", pmax + 2, alg.dim()), needed)
}

fn check_kind<F: Field>(alg: &FinAssocAlg<F>, kind: HomologyKind) -> Result<()> {
    if matches!(kind, HomologyKind::Dihedral | HomologyKind::SkewDihedral) && alg.involution().is_none() {
        return domain("dihedral homology needs an algebra with an involution");
    }
    Ok(())
}

/// `H_0 ..= H_pmax` via the averaging idempotent: the chain space is the image
/// of `e_n` and the induced boundary has rank `rank(e_{n-1} b e_n)`.
pub fn homology<F: Field>(
    alg: &FinAssocAlg<F>,
    kind: HomologyKind,
    pmax: usize,
    limits: &Limits,
) -> Result<BettiReport> {
    check_kind(alg, kind)?;
    check_limits(alg, pmax, limits)?;
    let d = alg.dim();
    let images: Vec<Vec<Coords<F>>> = (0..=pmax + 1).map(|n| image_spanning_set(alg, kind, n)).collect();
    let chain_dims = (0..=pmax)
        .into_par_iter()
        .map(|n| rank_of_rows(Words { d, n }.count(), images[n].clone()))
        .collect();
    let tail: Vec<usize> = (1..=pmax + 1)
        .into_par_iter()
        .map(|n| {
            let rows = images[n]
                .iter()
                .map(|u| {
                    let bu = apply(u, |j| hochschild_b(alg, n, j));
                    apply(&bu, |j| average(alg, kind, n - 1, j))
                })
                .collect();
            rank_of_rows(Words { d, n: n - 1 }.count(), rows)
        })
        .collect();
    let mut ranks = vec![0];
    ranks.extend(tail);
    BettiReport::from_ranks(kind.name(), chain_dims, ranks)
}

/// Rows `g v - v` over basis words `v` and group generators `g`.
fn relations<F: Field>(alg: &FinAssocAlg<F>, kind: HomologyKind, n: usize) -> Vec<Coords<F>> {
    let d = alg.dim();
    let count = Words { d, n }.count();
    (0..count)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut gens: Vec<Coords<F>> = Vec::new();
            if kind != HomologyKind::Hochschild {
                gens.push(cyclic_x(d, n, i));
            }
            if matches!(kind, HomologyKind::Dihedral | HomologyKind::SkewDihedral) {
                gens.push(dihedral_y(alg, n, kind == HomologyKind::SkewDihedral, i));
            }
            gens.into_iter().map(move |mut g| {
                g.push((i, -F::one()));
                normalize(g)
            })
        })
        .filter(|r| !r.is_empty())
        .collect()
}

/// The same homology computed on the quotient `C_n / span(g v - v)`:
/// `dim = |C_n| - rank K_n` and `rank b = rank(b C_n + K_{n-1}) - rank K_{n-1}`.
pub fn homology_by_relations<F: Field>(
    alg: &FinAssocAlg<F>,
    kind: HomologyKind,
    pmax: usize,
    limits: &Limits,
) -> Result<BettiReport> {
    check_kind(alg, kind)?;
    check_limits(alg, pmax, limits)?;
    let d = alg.dim();
    let rel: Vec<Vec<Coords<F>>> = (0..=pmax + 1).map(|n| relations(alg, kind, n)).collect();
    let rel_rank: Vec<usize> = (0..=pmax + 1)
        .into_par_iter()
        .map(|n| rank_of_rows(Words { d, n }.count(), rel[n].clone()))
        .collect();
    let chain_dims = (0..=pmax).map(|n| Words { d, n }.count() - rel_rank[n]).collect();
    let tail: Vec<usize> = (1..=pmax + 1)
        .into_par_iter()
        .map(|n| {
            let cols = Words { d, n: n - 1 }.count();
            let mut rows: Vec<Coords<F>> = (0..Words { d, n }.count())
                .map(|i| hochschild_b(alg, n, i))
                .filter(|r| !r.is_empty())
                .collect();
            rows.extend(rel[n - 1].iter().cloned());
            rank_of_rows(cols, rows) - rel_rank[n - 1]
        })
        .collect();
    let mut ranks = vec![0];
    ranks.extend(tail);
    BettiReport::from_ranks(kind.name(), chain_dims, ranks)
}

/// One degree of the periodicity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub n: usize,
    /// `HH_n` or `HH_{n-1}` is nonzero, so nothing is asserted.
    pub vacuous: bool,
    /// `dim HC_n == dim HC_{n-2}`, recorded only for non-vacuous windows.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicityReport {
    pub max_degree: usize,
    pub hochschild: Vec<usize>,
    pub cyclic: Vec<usize>,
    pub windows: Vec<Window>,
    pub passed: bool,
}

impl PeriodicityReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,vacuous,holds\n");
        for w in &self.windows {
            let holds = w.holds.map(|h| h.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{holds}\n", w.n, w.vacuous));
        }
        out
    }
}

/// Wherever `HH_n = HH_{n-1} = 0`, the exact sequence forces
/// `HC_n = HC_{n-2}`; checked for `2 <= n <= pmax - 1`.
pub fn periodicity_check<F: Field>(alg: &FinAssocAlg<F>, pmax: usize, limits: &Limits) -> Result<PeriodicityReport> {
    let hh = homology(alg, HomologyKind::Hochschild, pmax, limits)?.betti;
    let hc = homology(alg, HomologyKind::Cyclic, pmax, limits)?.betti;
    let windows: Vec<Window> = (2..pmax)
        .map(|n| {
            let vacuous = hh[n] != 0 || hh[n - 1] != 0;
            Window {
                n,
                vacuous,
                holds: (!vacuous).then(|| hc[n] == hc[n - 2]),
            }
        })
        .collect();
    let passed = windows.iter().all(|w| w.holds != Some(false));
    Ok(PeriodicityReport {
        max_degree: pmax,
        hochschild: hh,
        cyclic: hc,
        windows,
        passed,
    })
}

/// `f^k` applied to a vector.
pub fn power<F: Field>(v: &[(usize, F)], k: usize, f: impl Fn(usize) -> Coords<F>) -> Coords<F> {
    let mut cur = v.to_vec();
    for _ in 0..k {
        cur = apply(&cur, &f);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    type A = FinAssocAlg<Scalar>;

    fn hom(a: &A, kind: HomologyKind, p: usize) -> Vec<usize> {
        homology(a, kind, p, &Limits::default()).unwrap().betti
    }

    #[test]
    fn field() {
        let k = A::field();
        assert_eq!(hom(&k, HomologyKind::Hochschild, 3), vec![1, 0, 0, 0]);
        assert_eq!(hom(&k, HomologyKind::Cyclic, 4), vec![1, 0, 1, 0, 1]);
        assert_eq!(hom(&k, HomologyKind::Dihedral, 6), vec![1, 0, 0, 0, 1, 0, 0]);
        assert_eq!(hom(&k, HomologyKind::SkewDihedral, 6), vec![0, 0, 1, 0, 0, 0, 1]);
    }

    #[test]
    fn matrix_two() {
        let m = A::matrix(2);
        assert_eq!(hom(&m, HomologyKind::Hochschild, 3), vec![1, 0, 0, 0]);
        assert_eq!(hom(&m, HomologyKind::Cyclic, 3), vec![1, 0, 1, 0]);
    }

    #[test]
    fn dual_numbers_hh0() {
        assert_eq!(hom(&A::dual_numbers(), HomologyKind::Hochschild, 0)[0], 2);
    }

    #[test]
    fn averaging_matches_relations() {
        let m = A::matrix(2);
        for kind in [HomologyKind::Cyclic, HomologyKind::Dihedral, HomologyKind::SkewDihedral] {
            let a = homology(&m, kind, 2, &Limits::default()).unwrap();
            let b = homology_by_relations(&m, kind, 2, &Limits::default()).unwrap();
            assert_eq!(a, b, "{kind:?}");
        }
    }

    #[test]
    fn b_squared_vanishes() {
        let m = A::matrix(2);
        for n in 2..=3 {
            for i in 0..(Words { d: 4, n }).count() {
                let bb = apply(&hochschild_b(&m, n, i), |j| hochschild_b(&m, n - 1, j));
                assert!(bb.is_empty());
            }
        }
    }

    #[test]
    fn periodicity() {
        let r = periodicity_check(&A::field(), 5, &Limits::default()).unwrap();
        assert!(r.passed);
        assert!(r.windows.iter().all(|w| !w.vacuous));
        let r = periodicity_check(&A::dual_numbers(), 4, &Limits::default()).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn needs_involution() {
        let tw = A::twisted(&A::product_field(2), &crate::assoc::GroupAction::cyclic_shift(2)).unwrap();
        assert!(homology(&tw, HomologyKind::Dihedral, 1, &Limits::default()).is_err());
    }
}
