//! Generalized Jacobi matrices with quasi-polynomial diagonals.
//!
//! Diagonal `d` stores the sequence `i -> m[i][i + d]`. Every operation keeps
//! diagonals canonical, so structural equality is matrix equality.

use std::collections::BTreeMap;

use crate::error::{domain, Result};
use crate::linalg::{DenseMatrix, SparseMatrix};
use crate::poly::Poly;
use crate::quasi::{QuasiPolySeq, QuasiPolyTail};
use crate::scalar::{sign_pow, Field};

/// A `Z x Z` matrix with finitely many nonzero diagonals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BandMatrix<F> {
    diags: BTreeMap<i64, QuasiPolySeq<F>>,
}

/// The reflection anti-involutions of the band algebra.
///
/// Each is applied through its closed entrywise formula; the conjugating
/// anti-diagonal matrices are never built because they are not banded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Involution {
    /// `(i, j) -> X[j][i]`.
    Transpose,
    /// `(i, j) -> (-1)^(i+j) X[l-j][l-i]`.
    TauL(i64),
    /// `(i, j) -> X[l-j][l-i]`.
    TauLS(i64),
    /// `(i, j) -> X[-j][-i]`.
    TauB,
    /// `(i, j) -> (-1)^(i+j) X[-j-1][-i-1]`.
    TauC,
    /// `(i, j) -> X[-j-1][-i-1]`.
    TauD,
}

impl Involution {
    pub const ALL_FIXED: [Involution; 4] = [
        Involution::Transpose,
        Involution::TauB,
        Involution::TauC,
        Involution::TauD,
    ];

    /// Reflection center `c` and whether the `(-1)^(i+j)` sign applies, for
    /// the kinds of the form `(i, j) -> X[c-j][c-i]`.
    fn reflection(self) -> Option<(i64, bool)> {
        match self {
            Involution::Transpose => None,
            Involution::TauL(l) => Some((l, true)),
            Involution::TauLS(l) => Some((l, false)),
            Involution::TauB => Some((0, false)),
            Involution::TauC => Some((-1, true)),
            Involution::TauD => Some((-1, false)),
        }
    }

    /// Entrywise definition on a single index pair: source indices and sign.
    pub fn source(self, i: i64, j: i64) -> ((i64, i64), bool) {
        match self.reflection() {
            None => ((j, i), false),
            Some((c, signed)) => ((c - j, c - i), signed && (i + j).rem_euclid(2) == 1),
        }
    }
}

/// Structural facts about a band matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub finitely_supported: bool,
    /// Least `n >= 1` with `m[i+n][j+n] = m[i][j]` everywhere.
    pub period: Option<usize>,
    pub bandwidth: usize,
}

/// Names accepted by [`BandMatrix::builtin`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    P,
    Q,
    I,
    J,
    /// `r E_{i,j}`.
    E,
}

impl std::str::FromStr for Builtin {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "P" => Builtin::P,
            "Q" => Builtin::Q,
            "I" => Builtin::I,
            "J" => Builtin::J,
            "E" => Builtin::E,
            other => return domain(format!("unknown builtin matrix {other:?}")),
        })
    }
}

impl<F: Field> BandMatrix<F> {
    /// Drops zero diagonals; sequences are already canonical.
    pub fn from_diagonals(diags: impl IntoIterator<Item = (i64, QuasiPolySeq<F>)>) -> Self {
        let mut out: BTreeMap<i64, QuasiPolySeq<F>> = BTreeMap::new();
        for (d, s) in diags {
            let merged = match out.remove(&d) {
                Some(prev) => prev.add(&s),
                None => s,
            };
            if !merged.is_zero() {
                out.insert(d, merged);
            }
        }
        Self { diags: out }
    }

    pub fn zero() -> Self {
        Self {
            diags: BTreeMap::new(),
        }
    }

    pub fn identity() -> Self {
        Self::from_diagonals([(0, QuasiPolySeq::constant(F::one()))])
    }

    /// `P = sum_i i E_{i-1,i}`, the matrix of `d/dt` on the basis `t^i`.
    pub fn p() -> Self {
        Self::from_diagonals([(
            1,
            QuasiPolySeq::from_tail(QuasiPolyTail::polynomial(Poly::from_i64s(&[1, 1]))),
        )])
    }

    /// `Q = sum_i E_{i+1,i}`, the matrix of multiplication by `t`.
    pub fn q() -> Self {
        Self::from_diagonals([(-1, QuasiPolySeq::constant(F::one()))])
    }

    /// `J = sum_{i >= 0} E_{i,i}`.
    pub fn j() -> Self {
        Self::from_diagonals([(0, QuasiPolySeq::step(0))])
    }

    /// `r E_{i,j}`.
    pub fn unit(i: i64, j: i64, r: F) -> Self {
        Self::from_diagonals([(j - i, QuasiPolySeq::finite(i, vec![r]))])
    }

    pub fn builtin(name: Builtin, params: &[i64], value: Option<F>) -> Result<Self> {
        Ok(match name {
            Builtin::P => Self::p(),
            Builtin::Q => Self::q(),
            Builtin::I => Self::identity(),
            Builtin::J => Self::j(),
            Builtin::E => match params {
                [i, j] => Self::unit(*i, *j, value.unwrap_or_else(F::one)),
                _ => return domain("E needs exactly two indices"),
            },
        })
    }

    pub fn diagonals(&self) -> impl Iterator<Item = (i64, &QuasiPolySeq<F>)> {
        self.diags.iter().map(|(d, s)| (*d, s))
    }

    pub fn diagonal(&self, d: i64) -> Option<&QuasiPolySeq<F>> {
        self.diags.get(&d)
    }

    pub fn is_zero(&self) -> bool {
        self.diags.is_empty()
    }

    pub fn entry(&self, i: i64, j: i64) -> F {
        self.diags
            .get(&(j - i))
            .map_or_else(F::zero, |s| s.value(i))
    }

    pub fn bandwidth(&self) -> usize {
        self.diags.keys().map(|d| d.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn linear_combine<'a>(terms: impl IntoIterator<Item = (F, &'a Self)>) -> Self
    where
        F: 'a,
    {
        Self::from_diagonals(terms.into_iter().flat_map(|(c, x)| {
            x.diags
                .iter()
                .map(move |(d, s)| (*d, s.scale(&c)))
                .collect::<Vec<_>>()
        }))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_diagonals(self.diags.iter().chain(other.diags.iter()).map(|(d, s)| (*d, s.clone())))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_diagonals(self.diags.iter().map(|(d, s)| (*d, s.scale(c))))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    /// `(XY)[i][i+d] = sum_e x_e(i) y_{d-e}(i+e)`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (e, xs) in &self.diags {
            for (f, ys) in &other.diags {
                terms.push((e + f, xs.mul(&ys.shift(*e))));
            }
        }
        Self::from_diagonals(terms)
    }

    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> Self {
        self.involution(Involution::Transpose)
    }

    pub fn involution(&self, kind: Involution) -> Self {
        Self::from_diagonals(self.diags.iter().map(|(&d, s)| match kind.reflection() {
            // t_d(i) = X[i+d][i] = x_{-d}(i+d)
            None => (-d, s.shift(-d)),
            // out_d(i) = sign * X[c-i-d][c-i] = sign * x_d(c-d-i), sign = (-1)^d
            Some((c, signed)) => {
                let r = s.reflect(c - d);
                (d, if signed { r.scale(&sign_pow(d)) } else { r })
            }
        }))
    }

    pub fn is_finitely_supported(&self) -> bool {
        self.diags.values().all(QuasiPolySeq::is_finitely_supported)
    }

    /// Trace of a finitely supported matrix.
    pub fn finite_trace(&self) -> Option<F> {
        match self.diags.get(&0) {
            None => self.is_finitely_supported().then(F::zero),
            Some(s) => {
                if self.is_finitely_supported() {
                    s.finite_sum()
                } else {
                    None
                }
            }
        }
    }

    /// Least common period of all diagonals, if every diagonal is purely
    /// periodic.
    pub fn period(&self) -> Option<usize> {
        self.diags.values().try_fold(1usize, |acc, s| {
            s.is_purely_periodic()
                .then(|| num_integer::lcm(acc, s.left().period()))
        })
    }

    pub fn classify(&self) -> Classification {
        Classification {
            finitely_supported: self.is_finitely_supported(),
            period: self.period(),
            bandwidth: self.bandwidth(),
        }
    }

    /// `kind(X) = -X`.
    pub fn is_anti_fixed(&self, kind: Involution) -> bool {
        self.involution(kind) == self.neg()
    }

    /// `(m[i][j])` for `-n <= i, j <= n`.
    pub fn truncate(&self, n: usize) -> DenseMatrix<F> {
        let n = n as i64;
        let size = (2 * n + 1) as usize;
        let mut out = DenseMatrix::zeros(size, size);
        for (&d, s) in &self.diags {
            for i in -n..=n {
                let j = i + d;
                if (-n..=n).contains(&j) {
                    let v = s.value(i);
                    if !v.is_zero() {
                        out.set((i + n) as usize, (j + n) as usize, v);
                    }
                }
            }
        }
        out
    }

    /// [`truncate`](Self::truncate) without materializing zeros.
    pub fn truncate_sparse(&self, n: usize) -> SparseMatrix<F> {
        let n = n as i64;
        let size = (2 * n + 1) as usize;
        let mut out = SparseMatrix::new(size);
        for i in -n..=n {
            let row = self
                .diags
                .iter()
                .filter_map(|(&d, s)| {
                    let j = i + d;
                    ((-n..=n).contains(&j))
                        .then(|| ((j + n) as usize, s.value(i)))
                        .filter(|(_, v)| !v.is_zero())
                })
                .collect();
            out.push_row(row);
        }
        out
    }
}
