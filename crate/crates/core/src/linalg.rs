//! Exact linear algebra: dense matrices, sparse rank kernels and a dense
//! fraction-free (Bareiss) rank over integral domains.
//!
//! Sparse ranks first split the matrix into connected components of its
//! row/column incidence graph, then run Markowitz-pivoted elimination on
//! every component in parallel. Pivot choice is a pure function of the
//! component, so ranks never depend on the thread count.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::poly::Poly;
use crate::scalar::Field;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() - other.get(i, j).clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// The submatrix of rows `r0..r0+h` and columns `c0..c0+w`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        Self::from_fn(h, w, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn to_sparse(&self) -> SparseMatrix<F> {
        let mut m = SparseMatrix::new(self.cols);
        for i in 0..self.rows {
            m.push_row(
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect(),
            );
        }
        m
    }

    pub fn rank(&self) -> usize {
        F::sparse_rank(&self.to_sparse())
    }

    /// Solve `self * x = b`; `None` when inconsistent. Free variables are set
    /// to zero.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug: Vec<Vec<F>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !aug[i][c].is_zero()) else {
                continue;
            };
            aug.swap(r, p);
            let inv = F::one() / aug[r][c].clone();
            for v in aug[r].iter_mut() {
                *v = v.clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i != r && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for j in c..=self.cols {
                        let v = aug[i][j].clone() - f.clone() * aug[r][j].clone();
                        aug[i][j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        if aug[r..].iter().any(|row| !row[self.cols].is_zero()) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug[i][self.cols].clone();
        }
        Some(x)
    }
}

/// A list of sparse row vectors of a common length `ncols`, entries sorted by
/// column with no explicit zeros.
///
/// Chain maps are stored one row per source basis element (the transpose of
/// the usual matrix), which leaves the rank unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F> {
    ncols: usize,
    rows: Vec<Vec<(usize, F)>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<(usize, F)>] {
        &self.rows
    }

    /// Pushes a row given as unordered `(column, value)` pairs; repeated
    /// columns are summed and zeros dropped.
    pub fn push_row(&mut self, entries: Vec<(usize, F)>) {
        let mut acc: Vec<(usize, F)> = entries;
        acc.sort_by_key(|e| e.0);
        let mut row: Vec<(usize, F)> = Vec::with_capacity(acc.len());
        for (c, v) in acc {
            assert!(c < self.ncols, "column {c} out of range {}", self.ncols);
            match row.last_mut() {
                Some((lc, lv)) if *lc == c => *lv = lv.clone() + v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|(_, v)| !v.is_zero());
        self.rows.push(row);
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> DenseMatrix<F> {
        let mut d = DenseMatrix::zeros(self.rows.len(), self.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                d.set(i, *j, v.clone());
            }
        }
        d
    }

    pub fn rank(&self) -> usize {
        F::sparse_rank(self)
    }

    /// Row sets of the connected components of the incidence graph.
    fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.ncols).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for row in &self.rows {
            if let Some(&(c0, _)) = row.first() {
                let r0 = find(&mut parent, c0);
                for (c, _) in &row[1..] {
                    let rc = find(&mut parent, *c);
                    if rc != r0 {
                        let (a, b) = (rc.min(r0), rc.max(r0));
                        parent[b] = a;
                    }
                }
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, row) in self.rows.iter().enumerate() {
            if let Some(&(c0, _)) = row.first() {
                let root = find(&mut parent, c0);
                groups.entry(root).or_default().push(i);
            }
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|g| g[0]);
        out
    }
}

/// Entry types the Markowitz kernel can eliminate over.
trait Eliminable: Clone + Send + Sync {
    fn vanishes(&self) -> bool;

    /// Clears column `col` of `target` using `pivot` (whose entry there is
    /// `pivot_val`).
    fn eliminate(
        target: &[(usize, Self)],
        pivot: &[(usize, Self)],
        col: usize,
        pivot_val: &Self,
    ) -> Vec<(usize, Self)>;
}

/// `a*target - b*pivot` by a sorted merge.
fn merge_combine<E: Clone>(
    target: &[(usize, E)],
    pivot: &[(usize, E)],
    scale_t: impl Fn(&E) -> E,
    scale_p: impl Fn(&E) -> E,
    sub: impl Fn(E, E) -> E,
    neg: impl Fn(E) -> E,
    is_zero: impl Fn(&E) -> bool,
) -> Vec<(usize, E)> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ct = target.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cp = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (c, v) = if ct < cp {
            i += 1;
            (ct, scale_t(&target[i - 1].1))
        } else if cp < ct {
            j += 1;
            (cp, neg(scale_p(&pivot[j - 1].1)))
        } else {
            i += 1;
            j += 1;
            (ct, sub(scale_t(&target[i - 1].1), scale_p(&pivot[j - 1].1)))
        };
        if !is_zero(&v) {
            out.push((c, v));
        }
    }
    out
}

struct FieldEntry<F>(F);

impl<F: Field> Clone for FieldEntry<F> {
    fn clone(&self) -> Self {
        FieldEntry(self.0.clone())
    }
}

impl<F: Field> Eliminable for FieldEntry<F> {
    fn vanishes(&self) -> bool {
        self.0.is_zero()
    }

    fn eliminate(
        target: &[(usize, Self)],
        pivot: &[(usize, Self)],
        col: usize,
        pivot_val: &Self,
    ) -> Vec<(usize, Self)> {
        let a = &target.iter().find(|e| e.0 == col).expect("pivot column").1 .0;
        let f = a.clone() / pivot_val.0.clone();
        let mut out = merge_combine(
            target,
            pivot,
            |t| t.clone(),
            |p| FieldEntry(p.0.clone() * f.clone()),
            |x, y| FieldEntry(x.0 - y.0),
            |x| FieldEntry(-x.0),
            |x| x.0.is_zero(),
        );
        out.retain(|e| e.0 != col);
        out
    }
}

impl Eliminable for BigInt {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }

    fn eliminate(
        target: &[(usize, Self)],
        pivot: &[(usize, Self)],
        col: usize,
        pivot_val: &Self,
    ) -> Vec<(usize, Self)> {
        let a = &target.iter().find(|e| e.0 == col).expect("pivot column").1;
        let g = a.gcd(pivot_val);
        let (mt, mp) = (pivot_val / &g, a / &g);
        let mut out = merge_combine(
            target,
            pivot,
            |t| t * &mt,
            |p| p * &mp,
            |x, y| x - y,
            |x| -x,
            |x| Zero::is_zero(x),
        );
        out.retain(|e| e.0 != col);
        primitive(&mut out);
        out
    }
}

/// Divide an integer row by the gcd of its entries.
fn primitive(row: &mut [(usize, BigInt)]) {
    let g = row
        .iter()
        .fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

fn markowitz_rank<E: Eliminable>(mut rows: Vec<Vec<(usize, E)>>) -> usize {
    rows.retain(|r| !r.is_empty());
    debug_assert!(rows.iter().flatten().all(|(_, v)| !v.vanishes()));
    let mut col_rows: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for (i, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows.entry(*c).or_default().insert(i);
        }
    }
    let mut active: BTreeSet<usize> = (0..rows.len()).collect();
    let mut rank = 0;
    loop {
        // Markowitz cost (r-1)(c-1); ties broken by (row, column).
        let mut best: Option<(usize, usize, usize)> = None;
        'scan: for &i in &active {
            let rl = rows[i].len() - 1;
            for (c, _) in &rows[i] {
                let cost = rl * (col_rows[c].len() - 1);
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, i, *c));
                    if cost == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((_, p, c)) = best else { break };
        rank += 1;
        active.remove(&p);
        let pivot_row = std::mem::take(&mut rows[p]);
        for (cc, _) in &pivot_row {
            col_rows.get_mut(cc).unwrap().remove(&p);
        }
        let pivot_val = pivot_row.iter().find(|e| e.0 == c).unwrap().1.clone();
        let targets: Vec<usize> = col_rows[&c].iter().copied().collect();
        for t in targets {
            let old = std::mem::take(&mut rows[t]);
            for (cc, _) in &old {
                col_rows.get_mut(cc).unwrap().remove(&t);
            }
            let new = E::eliminate(&old, &pivot_row, c, &pivot_val);
            for (cc, _) in &new {
                col_rows.entry(*cc).or_default().insert(t);
            }
            if new.is_empty() {
                active.remove(&t);
            }
            rows[t] = new;
        }
    }
    rank
}

fn component_rows<F: Field, E>(
    m: &SparseMatrix<F>,
    convert: impl Fn(&[(usize, F)]) -> Vec<(usize, E)> + Sync,
) -> Vec<Vec<Vec<(usize, E)>>>
where
    E: Send,
{
    m.components()
        .par_iter()
        .map(|g| g.iter().map(|&i| convert(&m.rows[i])).collect())
        .collect()
}

/// Rank by Markowitz elimination directly over the field.
pub fn rank_over_field<F: Field>(m: &SparseMatrix<F>) -> usize {
    component_rows(m, |row| {
        row.iter()
            .map(|(c, v)| (*c, FieldEntry(v.clone())))
            .collect()
    })
    .into_par_iter()
    .map(markowitz_rank)
    .sum()
}

/// Fraction-free rank of a rational matrix: rows are scaled to primitive
/// integer vectors and eliminated by cross-multiplication with content
/// removal, so no rational arithmetic happens inside the kernel.
pub fn rank_fraction_free(m: &SparseMatrix<BigRational>) -> usize {
    component_rows(m, |row| {
        let l = row
            .iter()
            .fold(BigInt::one(), |l, (_, v)| l.lcm(v.denom()));
        let mut out: Vec<(usize, BigInt)> = row
            .iter()
            .map(|(c, v)| (*c, v.numer() * (&l / v.denom())))
            .collect();
        primitive(&mut out);
        out
    })
    .into_par_iter()
    .map(markowitz_rank)
    .sum()
}

/// Integral domains with exact division, for Bareiss elimination.
pub trait Domain: Clone + PartialEq {
    fn zero_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    /// `(a*d - b*c) / e`, where the division is known to be exact.
    fn bareiss_step(a: &Self, d: &Self, b: &Self, c: &Self, e: &Self) -> Self;
    fn one_elem() -> Self;
}

impl Domain for BigInt {
    fn zero_elem() -> Self {
        Zero::zero()
    }

    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }

    fn bareiss_step(a: &Self, d: &Self, b: &Self, c: &Self, e: &Self) -> Self {
        let num = a * d - b * c;
        debug_assert!((&num % e).is_zero());
        num / e
    }

    fn one_elem() -> Self {
        One::one()
    }
}

impl<F: Field> Domain for Poly<F> {
    fn zero_elem() -> Self {
        Zero::zero()
    }

    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }

    fn bareiss_step(a: &Self, d: &Self, b: &Self, c: &Self, e: &Self) -> Self {
        let num = &(a * d) - &(b * c);
        let (q, r) = num.div_rem(e).expect("nonzero Bareiss divisor");
        debug_assert!(Zero::is_zero(&r));
        q
    }

    fn one_elem() -> Self {
        One::one()
    }
}

/// Rank of a dense matrix over an integral domain by fraction-free Bareiss
/// elimination with complete pivoting (first nonzero in row-major order).
pub fn bareiss_rank<R: Domain>(mut a: Vec<Vec<R>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = R::one_elem();
    let mut k = 0;
    while k < rows.min(cols) {
        let found = (k..rows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero_elem());
        let Some((pi, pj)) = found else { break };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        for i in k + 1..rows {
            for j in k + 1..cols {
                a[i][j] = R::bareiss_step(&a[k][k], &a[i][j], &a[i][k], &a[k][j], &prev);
            }
            a[i][k] = R::zero_elem();
        }
        prev = a[k][k].clone();
        k += 1;
    }
    k
}

/// Integer matrix for a rational one, each row scaled by its denominators'
/// lcm. Rank is unchanged.
pub fn clear_denominators(m: &DenseMatrix<BigRational>) -> Vec<Vec<BigInt>> {
    (0..m.nrows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
        })
        .collect()
}
