//! Quasi-polynomial sequences `Z -> F`.
//!
//! A [`QuasiPolySeq`] is a left tail, a finite window of explicit values and a
//! right tail. Each tail is a [`QuasiPolyTail`]: a periodic list of
//! polynomials, evaluated at the index itself. The class is closed under
//! pointwise sums and products and under affine reindexing `k -> a + n*k`,
//! which is everything band-matrix arithmetic needs.

use num_integer::Integer;
use num_traits::Zero;

use crate::poly::Poly;
use crate::scalar::Field;

/// `i -> polys[i mod m](i)` with the residue taken in `0..m`.
///
/// Canonical: polynomials trimmed and the period minimal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiPolyTail<F> {
    polys: Vec<Poly<F>>,
}

impl<F: Field> QuasiPolyTail<F> {
    /// Panics on an empty list.
    pub fn new(polys: Vec<Poly<F>>) -> Self {
        assert!(!polys.is_empty(), "a tail needs a positive period");
        let m = polys.len();
        let d = (1..=m)
            .filter(|d| m % d == 0)
            .find(|&d| (d..m).all(|r| polys[r] == polys[r % d]))
            .unwrap_or(m);
        let mut polys = polys;
        polys.truncate(d);
        Self { polys }
    }

    pub fn zero() -> Self {
        Self {
            polys: vec![Poly::zero()],
        }
    }

    pub fn constant(c: F) -> Self {
        Self::polynomial(Poly::constant(c))
    }

    pub fn polynomial(p: Poly<F>) -> Self {
        Self { polys: vec![p] }
    }

    /// Purely periodic values `vals[i mod m]`.
    pub fn periodic(vals: Vec<F>) -> Self {
        Self::new(vals.into_iter().map(Poly::constant).collect())
    }

    pub fn period(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[Poly<F>] {
        &self.polys
    }

    pub fn is_zero(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_zero()
    }

    /// Every polynomial has degree at most zero.
    pub fn is_periodic(&self) -> bool {
        self.polys.iter().all(|p| p.degree().unwrap_or(0) == 0)
    }

    pub fn max_degree(&self) -> usize {
        self.polys
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn value(&self, i: i64) -> F {
        let m = self.polys.len() as i64;
        self.polys[i.rem_euclid(m) as usize].eval_i64(i)
    }

    fn zip(&self, other: &Self, op: impl Fn(&Poly<F>, &Poly<F>) -> Poly<F>) -> Self {
        let m = self.period().lcm(&other.period());
        Self::new(
            (0..m)
                .map(|r| op(&self.polys[r % self.period()], &other.polys[r % other.period()]))
                .collect(),
        )
    }

    /// `k -> self(a + n*k)`.
    fn reindex(&self, a: i64, n: i64) -> Self {
        let m = self.period();
        let (fa, fn_) = (F::from_i64(a), F::from_i64(n));
        Self::new(
            (0..m as i64)
                .map(|r| self.polys[(a + n * r).rem_euclid(m as i64) as usize].compose_affine(&fa, &fn_))
                .collect(),
        )
    }
}

/// A sequence `Z -> F` given by a left tail (valid for `i < lo`), explicit
/// values for `lo..=hi` and a right tail (valid for `i > hi`).
///
/// Canonical form: `hi` is the last index where the sequence differs from the
/// right tail, `lo` is the first index where it differs from the left tail
/// but never beyond `hi + 1`. When both tails coincide and the window is
/// empty, `lo = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiPolySeq<F> {
    left: QuasiPolyTail<F>,
    lo: i64,
    window: Vec<F>,
    right: QuasiPolyTail<F>,
}

impl<F: Field> QuasiPolySeq<F> {
    pub fn from_parts(
        left: QuasiPolyTail<F>,
        lo: i64,
        window: Vec<F>,
        right: QuasiPolyTail<F>,
    ) -> Self {
        let mut s = Self {
            left,
            lo,
            window,
            right,
        };
        s.canonicalize();
        s
    }

    pub fn zero() -> Self {
        Self::from_tail(QuasiPolyTail::zero())
    }

    /// The same quasi-polynomial on all of `Z`.
    pub fn from_tail(t: QuasiPolyTail<F>) -> Self {
        Self {
            left: t.clone(),
            lo: 0,
            window: Vec::new(),
            right: t,
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_tail(QuasiPolyTail::constant(c))
    }

    /// Finitely supported values starting at `lo`.
    pub fn finite(lo: i64, values: Vec<F>) -> Self {
        Self::from_parts(QuasiPolyTail::zero(), lo, values, QuasiPolyTail::zero())
    }

    /// Indicator of `i >= start`.
    pub fn step(start: i64) -> Self {
        Self::from_parts(
            QuasiPolyTail::zero(),
            start,
            Vec::new(),
            QuasiPolyTail::constant(F::one()),
        )
    }

    pub fn left(&self) -> &QuasiPolyTail<F> {
        &self.left
    }

    pub fn right(&self) -> &QuasiPolyTail<F> {
        &self.right
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.window.len() as i64 - 1
    }

    pub fn window(&self) -> &[F] {
        &self.window
    }

    pub fn value(&self, i: i64) -> F {
        if i < self.lo {
            self.left.value(i)
        } else if i <= self.hi() {
            self.window[(i - self.lo) as usize].clone()
        } else {
            self.right.value(i)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.window.is_empty() && self.left.is_zero() && self.right.is_zero()
    }

    pub fn is_finitely_supported(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }

    /// Globally periodic: one constant-coefficient tail and no exceptions.
    pub fn is_purely_periodic(&self) -> bool {
        self.window.is_empty() && self.left == self.right && self.left.is_periodic()
    }

    /// Sum of all values of a finitely supported sequence.
    pub fn finite_sum(&self) -> Option<F> {
        self.is_finitely_supported()
            .then(|| self.window.iter().cloned().fold(F::zero(), |a, b| a + b))
    }

    pub fn canonical(&self) -> Self {
        let mut s = self.clone();
        s.canonicalize();
        s
    }

    fn canonicalize(&mut self) {
        let hi = self.hi();
        let (lo_new, hi_new) = if self.left == self.right {
            let first = (self.lo..=hi).find(|&i| self.value(i) != self.left.value(i));
            match first {
                None => (0, -1),
                Some(f) => {
                    let last = (self.lo..=hi)
                        .rev()
                        .find(|&i| self.value(i) != self.right.value(i))
                        .unwrap_or(f);
                    (f, last)
                }
            }
        } else {
            // Any run of `span` consecutive indices contains a point where the
            // two distinct tails disagree.
            let m = self.left.period().lcm(&self.right.period());
            let deg = self.left.max_degree().max(self.right.max_degree());
            let span = (m * (deg + 1) + 1) as i64;
            let (a, b) = (self.lo - span, hi + span);
            let last = (a..=b)
                .rev()
                .find(|&i| self.value(i) != self.right.value(i))
                .unwrap_or(a);
            let first = (a..=b)
                .find(|&i| self.value(i) != self.left.value(i))
                .unwrap_or(b);
            (first.min(last + 1), last)
        };
        let window = (lo_new..=hi_new).map(|i| self.value(i)).collect();
        self.lo = lo_new;
        self.window = window;
    }

    /// Pointwise combination; `tail_op` must agree with `val_op` pointwise.
    fn zip_with(
        &self,
        other: &Self,
        tail_op: impl Fn(&Poly<F>, &Poly<F>) -> Poly<F>,
        val_op: impl Fn(F, F) -> F,
    ) -> Self {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let window = (lo..=hi)
            .map(|i| val_op(self.value(i), other.value(i)))
            .collect();
        Self::from_parts(
            self.left.zip(&other.left, &tail_op),
            lo,
            window,
            self.right.zip(&other.right, &tail_op),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |p, q| p + q, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |p, q| p - q, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, |p, q| p * q, |a, b| a * b)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_parts(
            QuasiPolyTail::new(self.left.polys.iter().map(|p| p.scale(c)).collect()),
            self.lo,
            self.window.iter().map(|v| v.clone() * c.clone()).collect(),
            QuasiPolyTail::new(self.right.polys.iter().map(|p| p.scale(c)).collect()),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    /// `k -> self(a + n*k)` for `n != 0`. Covers shifts (`n = 1`),
    /// reflections (`n = -1`) and subsampling (`n > 1`).
    pub fn reindex(&self, a: i64, n: i64) -> Self {
        assert!(n != 0, "reindex scale must be nonzero");
        let (lo, hi) = (self.lo, self.hi());
        let (k_lo, k_hi, left, right) = if n > 0 {
            (
                ceil_div(lo - a, n),
                floor_div(hi - a, n),
                self.left.reindex(a, n),
                self.right.reindex(a, n),
            )
        } else {
            (
                ceil_div(hi - a, n),
                floor_div(lo - a, n),
                self.right.reindex(a, n),
                self.left.reindex(a, n),
            )
        };
        let window = (k_lo..=k_hi).map(|k| self.value(a + n * k)).collect();
        Self::from_parts(left, k_lo, window, right)
    }

    /// `k -> self(k + s)`.
    pub fn shift(&self, s: i64) -> Self {
        self.reindex(s, 1)
    }

    /// `k -> self(c - k)`.
    pub fn reflect(&self, c: i64) -> Self {
        self.reindex(c, -1)
    }

    /// The sequence `s` with `s(a + n*k) = parts[a](k)` for `a` in `0..n`.
    pub fn interleave(parts: &[Self]) -> Self {
        let n = parts.len();
        assert!(n > 0, "interleave needs at least one part");
        if n == 1 {
            return parts[0].clone();
        }
        let ni = n as i64;
        let inv_n = F::one() / F::from_i64(ni);
        let tail = |pick: &dyn Fn(&Self) -> &QuasiPolyTail<F>| {
            let inner = parts
                .iter()
                .fold(1usize, |acc, p| acc.lcm(&pick(p).period()));
            let m = n * inner;
            QuasiPolyTail::new(
                (0..m)
                    .map(|r| {
                        let a = r % n;
                        let t = pick(&parts[a]);
                        let k0 = (r - a) / n;
                        let alpha = -F::from_i64(a as i64) * inv_n.clone();
                        t.polys[k0 % t.period()].compose_affine(&alpha, &inv_n)
                    })
                    .collect(),
            )
        };
        let left = tail(&|p| &p.left);
        let right = tail(&|p| &p.right);
        let lo = (0..n).map(|a| a as i64 + ni * parts[a].lo).min().unwrap();
        let hi = (0..n).map(|a| a as i64 + ni * parts[a].hi()).max().unwrap();
        let window = (lo..=hi)
            .map(|i| {
                let a = i.rem_euclid(ni);
                parts[a as usize].value((i - a) / ni)
            })
            .collect();
        Self::from_parts(left, lo, window, right)
    }
}

pub(crate) fn floor_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    -Integer::div_floor(&-a, &b)
}
