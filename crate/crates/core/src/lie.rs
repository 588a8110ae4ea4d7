//! Chevalley-Eilenberg homology of finite-dimensional Lie algebras with
//! trivial coefficients, the classical finite-rank families, and predicted
//! stable Betti tables.

use std::collections::BTreeMap;
use std::str::FromStr;

use rayon::prelude::*;

use crate::assoc::{normalize, Coords, FinAssocAlg};
use crate::band::{BandMatrix, Involution};
use crate::error::{domain, Error, Result};
use crate::linalg::{DenseMatrix, SparseMatrix};
use crate::report::{BettiReport, Limits};
use crate::scalar::{sign_pow, Field};

/// A Lie algebra given by structure constants `[x_i, x_j]` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinLieAlg<F> {
    dim: usize,
    labels: Vec<String>,
    structure: BTreeMap<(usize, usize), Coords<F>>,
}

impl<F: Field> FinLieAlg<F> {
    /// Entries with `i > j` are folded in by antisymmetry and entries with
    /// `i == j` must vanish. The Jacobi identity is checked on every triple.
    pub fn new(
        dim: usize,
        labels: Vec<String>,
        bracket: Vec<((usize, usize), Coords<F>)>,
    ) -> Result<Self> {
        if dim == 0 {
            return domain("Lie algebra dimension must be positive");
        }
        if labels.len() != dim {
            return domain("one label per basis element is required");
        }
        let mut acc: BTreeMap<(usize, usize), Coords<F>> = BTreeMap::new();
        for ((i, j), terms) in bracket {
            if i >= dim || j >= dim || terms.iter().any(|(k, _)| *k >= dim) {
                return domain(format!("bracket entry ({i}, {j}) out of range"));
            }
            let (key, terms) = match i.cmp(&j) {
                std::cmp::Ordering::Less => ((i, j), terms),
                std::cmp::Ordering::Greater => ((j, i), terms.into_iter().map(|(k, c)| (k, -c)).collect()),
                std::cmp::Ordering::Equal => {
                    if normalize(terms).is_empty() {
                        continue;
                    }
                    return domain(format!("[x_{i}, x_{i}] must vanish"));
                }
            };
            acc.entry(key).or_default().extend(terms);
        }
        let structure = acc
            .into_iter()
            .map(|(k, v)| (k, normalize(v)))
            .filter(|(_, v)| !v.is_empty())
            .collect();
        let g = Self {
            dim,
            labels,
            structure,
        };
        if let Some((i, j, k)) = g.jacobi_failure() {
            return domain(format!("Jacobi identity fails on ({i}, {j}, {k})"));
        }
        Ok(g)
    }

    fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let e = |i: usize| vec![(i, F::one())];
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.bracket_basis(i, j);
                for k in j + 1..n {
                    let mut sum = self.bracket(&ij, &e(k));
                    sum.extend(self.bracket(&self.bracket_basis(j, k), &e(i)));
                    sum.extend(self.bracket(&self.bracket_basis(k, i), &e(j)));
                    if !normalize(sum).is_empty() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Nonzero structure constants, keyed by `(i, j)` with `i < j`.
    pub fn structure(&self) -> &BTreeMap<(usize, usize), Coords<F>> {
        &self.structure
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Coords<F> {
        if i < j {
            self.structure.get(&(i, j)).cloned().unwrap_or_default()
        } else if i > j {
            self.structure
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, c)| (*k, -c.clone())).collect())
                .unwrap_or_default()
        } else {
            Vec::new()
        }
    }

    pub fn bracket(&self, u: &[(usize, F)], v: &[(usize, F)]) -> Coords<F> {
        let mut acc = Vec::new();
        for (i, a) in u {
            for (j, b) in v {
                for (k, c) in self.bracket_basis(*i, *j) {
                    acc.push((k, a.clone() * b.clone() * c));
                }
            }
        }
        normalize(acc)
    }

    pub fn abelian(n: usize) -> Result<Self> {
        positive(n)?;
        Self::new(n, (1..=n).map(|i| format!("x{i}")).collect(), Vec::new())
    }

    /// The span of square matrices `basis` under the commutator. The span
    /// must be closed; coordinates are recovered by exact linear solves.
    pub fn from_matrix_basis(basis: &[DenseMatrix<F>], labels: Vec<String>) -> Result<Self> {
        let dim = basis.len();
        let Some(m) = basis.first().map(DenseMatrix::nrows) else {
            return Err(Error::Internal("empty matrix basis".into()));
        };
        let flat = DenseMatrix::from_fn(m * m, dim, |r, c| basis[c].get(r / m, r % m).clone());
        if flat.rank() != dim {
            return Err(Error::Internal("matrix basis is linearly dependent".into()));
        }
        let mut bracket = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let comm = basis[i].mul(&basis[j]).sub(&basis[j].mul(&basis[i]));
                if comm.is_zero() {
                    continue;
                }
                let rhs: Vec<F> = (0..m * m).map(|r| comm.get(r / m, r % m).clone()).collect();
                let x = flat
                    .solve(&rhs)
                    .ok_or_else(|| Error::Internal(format!("span not closed under [{i}, {j}]")))?;
                bracket.push(((i, j), x.into_iter().enumerate().collect()));
            }
        }
        Self::new(dim, labels, bracket).map_err(internal)
    }

    pub fn gl(n: usize) -> Result<Self> {
        positive(n)?;
        let (basis, labels) = (0..n * n)
            .map(|k| (elementary(n, k / n, k % n), format!("E{},{}", k / n + 1, k % n + 1)))
            .unzip::<_, _, Vec<_>, Vec<_>>();
        Self::from_matrix_basis(&basis, labels)
    }

    /// Off-diagonal units, then `H_i = E_{i,i} - E_{i+1,i+1}`.
    pub fn sl(n: usize) -> Result<Self> {
        if n < 2 {
            return domain("sl(n) needs n >= 2");
        }
        let mut basis = Vec::new();
        let mut labels = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    basis.push(elementary(n, a, b));
                    labels.push(format!("E{},{}", a + 1, b + 1));
                }
            }
        }
        for a in 0..n - 1 {
            basis.push(elementary(n, a, a).sub(&elementary(n, a + 1, a + 1)));
            labels.push(format!("H{}", a + 1));
        }
        Self::from_matrix_basis(&basis, labels)
    }

    /// `gl_n(A)` on the basis `E_{i,j} (x) e_k` with index `(i n + j) dim A + k`.
    pub fn gl_over(n: usize, a: &FinAssocAlg<F>) -> Result<Self> {
        positive(n)?;
        let da = a.dim();
        let idx = |i: usize, j: usize, k: usize| (i * n + j) * da + k;
        let dim = n * n * da;
        let mut labels = Vec::with_capacity(dim);
        for i in 0..n {
            for j in 0..n {
                for k in 0..da {
                    labels.push(format!("E{},{}e{}", i + 1, j + 1, k));
                }
            }
        }
        let mut bracket = Vec::new();
        for u in 0..dim {
            let (i, j, k) = (u / (n * da), (u / da) % n, u % da);
            for v in u + 1..dim {
                let (p, q, m) = (v / (n * da), (v / da) % n, v % da);
                let mut terms = Vec::new();
                if j == p {
                    for (r, c) in a.mul_basis(k, m) {
                        terms.push((idx(i, q, *r), c.clone()));
                    }
                }
                if q == i {
                    for (r, c) in a.mul_basis(m, k) {
                        terms.push((idx(p, j, *r), -c.clone()));
                    }
                }
                bracket.push(((u, v), terms));
            }
        }
        Self::new(dim, labels, bracket).map_err(internal)
    }

    /// Anti-fixed points of `kind` on matrices indexed by `lo..=hi`, which
    /// the reflection must map to themselves.
    fn anti_fixed(kind: Involution, lo: i64, hi: i64) -> Result<Self> {
        let m = (hi - lo + 1) as usize;
        let mut basis = Vec::new();
        let mut labels = Vec::new();
        for a in lo..=hi {
            for b in lo..=hi {
                let ((sa, sb), _) = kind.source(a, b);
                if (sa, sb) < (a, b) {
                    continue;
                }
                let e = BandMatrix::unit(a, b, F::one());
                let x = e.sub(&e.involution(kind));
                if x.is_zero() {
                    continue;
                }
                basis.push(DenseMatrix::from_fn(m, m, |r, c| x.entry(lo + r as i64, lo + c as i64)));
                labels.push(format!("A{a},{b}"));
            }
        }
        Self::from_matrix_basis(&basis, labels)
    }

    /// `o_{2l+1}` on indices `-l..=l`.
    pub fn o_odd(l: usize) -> Result<Self> {
        positive(l)?;
        Self::anti_fixed(Involution::TauB, -(l as i64), l as i64)
    }

    /// `sp_{2l}` on indices `-l..l`.
    pub fn sp(l: usize) -> Result<Self> {
        positive(l)?;
        Self::anti_fixed(Involution::TauC, -(l as i64), l as i64 - 1)
    }

    /// `o_{2l}` on indices `-l..l`.
    pub fn o_even(l: usize) -> Result<Self> {
        positive(l)?;
        Self::anti_fixed(Involution::TauD, -(l as i64), l as i64 - 1)
    }

    pub fn family(f: LieFamily) -> Result<Self> {
        match f {
            LieFamily::Gl(n) => Self::gl(n),
            LieFamily::Sl(n) => Self::sl(n),
            LieFamily::Abelian(n) => Self::abelian(n),
            LieFamily::OOdd(l) => Self::o_odd(l),
            LieFamily::Sp(l) => Self::sp(l),
            LieFamily::OEven(l) => Self::o_even(l),
        }
    }
}

fn positive(n: usize) -> Result<()> {
    if n == 0 {
        return domain("rank parameter must be positive");
    }
    Ok(())
}

fn internal(e: Error) -> Error {
    match e {
        Error::Domain(m) => Error::Internal(m),
        other => other,
    }
}

fn elementary<F: Field>(n: usize, a: usize, b: usize) -> DenseMatrix<F> {
    DenseMatrix::from_fn(n, n, |r, c| if (r, c) == (a, b) { F::one() } else { F::zero() })
}

/// Matrix-algebra families with a rank parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieFamily {
    Gl(usize),
    Sl(usize),
    Abelian(usize),
    OOdd(usize),
    Sp(usize),
    OEven(usize),
}

impl LieFamily {
    pub fn parse(name: &str, rank: usize) -> Result<Self> {
        Ok(match name {
            "gl" => Self::Gl(rank),
            "sl" => Self::Sl(rank),
            "abelian" => Self::Abelian(rank),
            "o-odd" | "o_odd" => Self::OOdd(rank),
            "sp" => Self::Sp(rank),
            "o-even" | "o_even" => Self::OEven(rank),
            other => return domain(format!("unknown Lie family '{other}'")),
        })
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Lexicographic `p`-subsets of `0..n`, with their ranking inverse.
struct Subsets {
    n: usize,
    p: usize,
    table: Vec<Vec<usize>>,
}

impl Subsets {
    fn new(n: usize, p: usize) -> Self {
        let table = (0..=n)
            .map(|m| (0..=p).map(|k| binomial(m, k) as usize).collect())
            .collect();
        Self { n, p, table }
    }

    fn count(&self) -> usize {
        self.table[self.n][self.p]
    }

    fn all(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.count());
        let mut cur: Vec<usize> = (0..self.p).collect();
        if self.p > self.n {
            return out;
        }
        loop {
            out.push(cur.clone());
            let Some(i) = (0..self.p).rev().find(|&i| cur[i] < self.n - self.p + i) else {
                return out;
            };
            cur[i] += 1;
            for t in i + 1..self.p {
                cur[t] = cur[t - 1] + 1;
            }
        }
    }

    /// Lexicographic position of a sorted subset of `0..n` among subsets of
    /// the same size.
    fn rank_of(&self, s: &[usize]) -> usize {
        let k = s.len();
        let mut r = 0;
        let mut prev = 0;
        for (t, &v) in s.iter().enumerate() {
            for skipped in prev..v {
                r += self.table[self.n - skipped - 1][k - t - 1];
            }
            prev = v + 1;
        }
        r
    }
}

/// `d_p : Lambda^p g -> Lambda^{p-1} g` with
/// `d(x_1 ^ ... ^ x_p) = sum_{a<b} (-1)^{a+b+1} [x_a, x_b] ^ x_1 ^ ..^ x_p`
/// (omitting `x_a`, `x_b`), one row per source `p`-subset.
pub fn ce_boundary<F: Field>(g: &FinLieAlg<F>, p: usize) -> Result<SparseMatrix<F>> {
    if p == 0 || p > g.dim() {
        return domain(format!("boundary degree {p} outside 1..={}", g.dim()));
    }
    let src = Subsets::new(g.dim(), p);
    let tgt = Subsets::new(g.dim(), p - 1);
    let rows: Vec<Coords<F>> = src
        .all()
        .into_par_iter()
        .map(|s| {
            let mut acc = Vec::new();
            for a in 0..p {
                for b in a + 1..p {
                    let br = g.bracket_basis(s[a], s[b]);
                    if br.is_empty() {
                        continue;
                    }
                    // 1-based positions a+1, b+1
                    let sign: F = sign_pow((a + b + 3) as i64);
                    let rest: Vec<usize> = s
                        .iter()
                        .enumerate()
                        .filter(|(t, _)| *t != a && *t != b)
                        .map(|(_, &v)| v)
                        .collect();
                    for (k, c) in br {
                        let Err(pos) = rest.binary_search(&k) else {
                            continue;
                        };
                        let mut word = rest.clone();
                        word.insert(pos, k);
                        acc.push((tgt.rank_of(&word), sign.clone() * sign_pow::<F>(pos as i64) * c));
                    }
                }
            }
            normalize(acc)
        })
        .collect();
    let mut m = SparseMatrix::new(tgt.count());
    for r in rows {
        m.push_row(r);
    }
    Ok(m)
}

/// `H_0 ..= H_pmax` of the Chevalley-Eilenberg complex.
pub fn lie_homology<F: Field>(g: &FinLieAlg<F>, pmax: usize, limits: &Limits) -> Result<BettiReport> {
    let n = g.dim();
    if pmax > n {
        return domain(format!("max degree {pmax} exceeds dimension {n}"));
    }
    for p in 0..=(pmax + 1).min(n) {
        limits.check(format!("Lambda^{p} of a {n}-dimensional Lie algebra"), binomial(n, p))?;
    }
    let chain_dims = (0..=pmax).map(|p| binomial(n, p) as usize).collect();
    let tail: Vec<usize> = (1..=pmax + 1)
        .into_par_iter()
        .map(|p| if p > n { Ok(0) } else { ce_boundary(g, p).map(|m| m.rank()) })
        .collect::<Result<_>>()?;
    let mut ranks = vec![0];
    ranks.extend(tail);
    BettiReport::from_ranks("lie", chain_dims, ranks)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    /// Polynomial generator.
    Even,
    /// Exterior generator.
    Odd,
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "even" | "e" | "0" => Ok(Parity::Even),
            "odd" | "o" | "1" => Ok(Parity::Odd),
            other => domain(format!("unknown parity '{other}'")),
        }
    }
}

/// Graded dimensions through degree `pmax` of the free graded-commutative
/// algebra on the given generators.
pub fn predicted_stable_dims(generators: &[(usize, Parity)], pmax: usize) -> Result<Vec<u64>> {
    let mut dims = vec![0u64; pmax + 1];
    dims[0] = 1;
    for &(d, parity) in generators {
        if d == 0 {
            return domain("generator degrees must be positive");
        }
        let overflow = || Error::Resource {
            what: "predicted dimension".into(),
            needed: u128::from(u64::MAX) + 1,
            ceiling: u128::from(u64::MAX),
        };
        match parity {
            // multiply by 1/(1 - q^d)
            Parity::Even => {
                for p in d..=pmax {
                    dims[p] = dims[p].checked_add(dims[p - d]).ok_or_else(overflow)?;
                }
            }
            // multiply by 1 + q^d
            Parity::Odd => {
                for p in (d..=pmax).rev() {
                    dims[p] = dims[p].checked_add(dims[p - d]).ok_or_else(overflow)?;
                }
            }
        }
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    type G = FinLieAlg<Scalar>;

    fn betti(g: &G, p: usize) -> Vec<usize> {
        lie_homology(g, p, &Limits::default()).unwrap().betti
    }

    #[test]
    fn family_dimensions() {
        for n in 1..=3 {
            assert_eq!(G::gl(n).unwrap().dim(), n * n);
        }
        for n in 2..=3 {
            assert_eq!(G::sl(n).unwrap().dim(), n * n - 1);
        }
        for l in 1..=3 {
            assert_eq!(G::o_odd(l).unwrap().dim(), l * (2 * l + 1));
            assert_eq!(G::sp(l).unwrap().dim(), l * (2 * l + 1));
            assert_eq!(G::o_even(l).unwrap().dim(), l * (2 * l - 1));
        }
    }

    #[test]
    fn sl2_boundary_sign() {
        let g = G::new(
            3,
            vec!["e".into(), "f".into(), "h".into()],
            vec![
                ((0, 1), vec![(2, Scalar::from_i64(1))]),
                ((2, 0), vec![(0, Scalar::from_i64(2))]),
                ((2, 1), vec![(1, Scalar::from_i64(-2))]),
            ],
        )
        .unwrap();
        let d2 = ce_boundary(&g, 2).unwrap();
        // {e,f} is the first 2-subset; h is index 2 in Lambda^1
        assert_eq!(d2.rows()[0], vec![(2, Scalar::from_i64(1))]);
        assert_eq!(betti(&g, 3), vec![1, 0, 0, 1]);
    }

    #[test]
    fn small_homology() {
        assert_eq!(betti(&G::gl(1).unwrap(), 1), vec![1, 1]);
        assert_eq!(betti(&G::gl(2).unwrap(), 4), vec![1, 1, 0, 1, 1]);
        assert_eq!(betti(&G::sp(1).unwrap(), 3), vec![1, 0, 0, 1]);
        assert_eq!(betti(&G::o_odd(1).unwrap(), 3), vec![1, 0, 0, 1]);
        assert_eq!(betti(&G::abelian(4).unwrap(), 4), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn gl_over_matrices() {
        let g = G::gl_over(1, &FinAssocAlg::matrix(2)).unwrap();
        assert_eq!(g.structure(), G::gl(2).unwrap().structure());
    }

    #[test]
    fn subset_ranking() {
        let s = Subsets::new(5, 3);
        for (i, w) in s.all().iter().enumerate() {
            assert_eq!(s.rank_of(w), i);
        }
        assert_eq!(s.count(), 10);
    }

    #[test]
    fn predictions() {
        let ev = [(2, Parity::Even), (4, Parity::Even), (6, Parity::Even)];
        assert_eq!(predicted_stable_dims(&ev, 6).unwrap(), vec![1, 0, 1, 0, 2, 0, 3]);
        let od = [(1, Parity::Odd), (3, Parity::Odd)];
        assert_eq!(predicted_stable_dims(&od, 5).unwrap(), vec![1, 1, 0, 1, 1, 0]);
        assert_eq!(predicted_stable_dims(&[], 3).unwrap(), vec![1, 0, 0, 0]);
    }
}
