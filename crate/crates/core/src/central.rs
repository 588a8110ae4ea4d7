//! The Japanese cocycle, the centrally extended bracket, the affine and
//! `W_{1+inf}` embeddings, and the block isomorphism `gJ(k) -> gl_n(J(k))`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::band::BandMatrix;
use crate::error::{domain, Error, Result};
use crate::poly::Poly;
use crate::quasi::{QuasiPolySeq, QuasiPolyTail};
use crate::scalar::Field;

/// `X -> JXJ`: zero every entry with a negative row or column index.
pub fn compress<F: Field>(x: &BandMatrix<F>) -> BandMatrix<F> {
    BandMatrix::from_diagonals(
        x.diagonals()
            .map(|(d, s)| (d, s.mul(&QuasiPolySeq::step(0.max(-d))))),
    )
}

/// `Psi(X, Y) = tr([JXJ, JYJ] - J[X, Y]J)`.
///
/// The commutator defect is always finitely supported; an infinite support
/// means the arithmetic is broken and is reported as an internal error.
pub fn japanese_cocycle<F: Field>(x: &BandMatrix<F>, y: &BandMatrix<F>) -> Result<F> {
    let (cx, cy) = (compress(x), compress(y));
    let defect = cx.bracket(&cy).sub(&compress(&x.bracket(y)));
    defect.finite_trace().ok_or_else(|| {
        Error::Internal("cocycle defect is not finitely supported".into())
    })
}

/// An element `x + c*1` of the one-dimensional central extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElement<F> {
    pub x: BandMatrix<F>,
    pub c: F,
}

impl<F: Field> ExtElement<F> {
    pub fn new(x: BandMatrix<F>, c: F) -> Self {
        Self { x, c }
    }

    pub fn central() -> Self {
        Self::new(BandMatrix::zero(), F::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.x.add(&other.x), self.c.clone() + other.c.clone())
    }

    pub fn scale(&self, k: &F) -> Self {
        Self::new(self.x.scale(k), self.c.clone() * k.clone())
    }
}

/// `[X + a, Y + b]' = [X, Y] + Psi(X, Y) 1`; central parts drop out.
pub fn ext_bracket<F: Field>(u: &ExtElement<F>, v: &ExtElement<F>) -> Result<ExtElement<F>> {
    Ok(ExtElement::new(
        u.x.bracket(&v.x),
        japanese_cocycle(&u.x, &v.x)?,
    ))
}

/// Image of `e_{i,j} (x) t^a` in `gJ_n(k)`: ones at
/// `(i - 1 + r n, j - 1 + (r + a) n)` for all `r`. Labels `i, j` run over
/// `1..=n` and sit at offsets `0..n` inside each block, so the compression
/// cut at index 0 falls on a block boundary.
pub fn embed_affine<F: Field>(n: i64, i: i64, j: i64, a: i64) -> Result<BandMatrix<F>> {
    if n < 2 {
        return domain(format!("affine embedding needs n > 1, got {n}"));
    }
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return domain(format!("indices ({i}, {j}) out of range 1..={n}"));
    }
    let residue = (i - 1) as usize;
    let vals = (0..n as usize)
        .map(|r| if r == residue { F::one() } else { F::zero() })
        .collect();
    Ok(BandMatrix::from_diagonals([(
        j - i + a * n,
        QuasiPolySeq::from_tail(QuasiPolyTail::periodic(vals)),
    )]))
}

/// The differential operator `t^a f(D)` with `D = t d/dt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSymbol<F> {
    pub a: i64,
    pub f: Poly<F>,
}

impl<F: Field> WSymbol<F> {
    pub fn new(a: i64, f: Poly<F>) -> Self {
        Self { a, f }
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }
}

/// `t^a f(D) -> sum_j f(j) E_{j+a, j}`, the matrix of the operator on the
/// basis `t^j`. Sends `t` to `Q` and `d/dt = t^{-1} D` to `P`.
pub fn embed_w<F: Field>(w: &WSymbol<F>) -> BandMatrix<F> {
    // row i = j + a carries f(i - a) on diagonal -a
    BandMatrix::from_diagonals([(
        -w.a,
        QuasiPolySeq::from_tail(QuasiPolyTail::polynomial(w.f.shift(-w.a))),
    )])
}

/// The bracket `[t^r f(D), t^s g(D)] = t^{r+s}(f(D+s)g(D) - f(D)g(D+r))`
/// together with the reference cocycle on the pair.
///
/// The cocycle is `sum_{-r <= j <= -1} f(j) g(j+r)` when `r = -s >= 0`, its
/// antisymmetric extension when `r = -s < 0`, and zero when `r + s != 0`.
pub fn w_reference<F: Field>(r: i64, f: &Poly<F>, s: i64, g: &Poly<F>) -> (WSymbol<F>, F) {
    let h = &(&f.shift(s) * g) - &(f * &g.shift(r));
    let cocycle = if r + s != 0 {
        F::zero()
    } else if r >= 0 {
        w_sum(r, f, g)
    } else {
        -w_sum(s, g, f)
    };
    (WSymbol::new(r + s, h), cocycle)
}

fn w_sum<F: Field>(r: i64, f: &Poly<F>, g: &Poly<F>) -> F {
    (-r..=-1).fold(F::zero(), |acc, j| acc + f.eval_i64(j) * g.eval_i64(j + r))
}

/// An `n x n` array of band matrices.
pub type BlockMatrix<F> = Vec<Vec<BandMatrix<F>>>;

/// `M -> (M_{a,b})` with `(M_{a,b})[k][l] = m[a + n k][b + n l]` for residues
/// `a, b` in `0..n`.
pub fn block_iso_forward<F: Field>(n: i64, x: &BandMatrix<F>) -> Result<BlockMatrix<F>> {
    if n < 2 {
        return domain(format!("block isomorphism needs n > 1, got {n}"));
    }
    Ok(blocks_of(n, x))
}

pub(crate) fn blocks_of<F: Field>(n: i64, x: &BandMatrix<F>) -> BlockMatrix<F> {
    let nu = n as usize;
    let mut parts: Vec<Vec<Vec<(i64, QuasiPolySeq<F>)>>> = vec![vec![Vec::new(); nu]; nu];
    for (d, s) in x.diagonals() {
        for a in 0..n {
            let b = (a + d).rem_euclid(n);
            let e = (d - (b - a)) / n;
            parts[a as usize][b as usize].push((e, s.reindex(a, n)));
        }
    }
    parts
        .into_iter()
        .map(|row| row.into_iter().map(BandMatrix::from_diagonals).collect())
        .collect()
}

/// Inverse of [`block_iso_forward`].
pub fn block_iso_inverse<F: Field>(blocks: &BlockMatrix<F>) -> Result<BandMatrix<F>> {
    let n = blocks.len();
    if n < 2 || blocks.iter().any(|r| r.len() != n) {
        return domain("block array must be square of size > 1");
    }
    let ni = n as i64;
    let mut by_diag: BTreeMap<i64, Vec<QuasiPolySeq<F>>> = BTreeMap::new();
    for (a, row) in blocks.iter().enumerate() {
        for (b, blk) in row.iter().enumerate() {
            for (e, s) in blk.diagonals() {
                let d = b as i64 - a as i64 + ni * e;
                by_diag
                    .entry(d)
                    .or_insert_with(|| vec![QuasiPolySeq::zero(); n])[a] = s.clone();
            }
        }
    }
    Ok(BandMatrix::from_diagonals(
        by_diag
            .into_iter()
            .map(|(d, parts)| (d, QuasiPolySeq::interleave(&parts))),
    ))
}

/// Product of block matrices over `J(k)`.
pub fn block_mul<F: Field>(x: &BlockMatrix<F>, y: &BlockMatrix<F>) -> BlockMatrix<F> {
    let n = x.len();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    (0..n).fold(BandMatrix::zero(), |acc, c| acc.add(&x[a][c].mul(&y[c][b])))
                })
                .collect()
        })
        .collect()
}
