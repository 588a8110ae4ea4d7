//! Rank and trace densities of band matrices, and the construction of 0/1
//! diagonals with a prescribed irrational rank.

use std::cmp::Ordering;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::band::BandMatrix;
use crate::central::blocks_of;
use crate::error::{domain, Error, Result};
use crate::linalg::bareiss_rank;
use crate::poly::Poly;
use crate::quasi::QuasiPolySeq;
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityMode {
    /// Symmetric truncation to `-n..=n`.
    Truncated(usize),
    /// Exact value for purely periodic input.
    Exact,
}

/// `rank(A_n)` and `rank(A_n) / (2n + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximant<F> {
    pub n: usize,
    pub rank: usize,
    pub density: F,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport<F> {
    pub mode: String,
    pub approximants: Vec<Approximant<F>>,
    pub exact: Option<F>,
    /// Period used for the exact value.
    pub period: Option<usize>,
    /// Smallest and largest truncation in `approximants`.
    pub window: Option<(usize, usize)>,
}

pub fn rank_truncated<F: Field>(x: &BandMatrix<F>, n: usize) -> Approximant<F> {
    let rank = x.truncate_sparse(n).rank();
    Approximant {
        n,
        rank,
        density: F::from_i64(rank as i64) / F::from_i64(2 * n as i64 + 1),
    }
}

/// Generic rank of the Laurent symbol over `k(z)`, divided by the period.
pub fn rank_exact<F: Field>(x: &BandMatrix<F>) -> Result<F> {
    let Some(n0) = x.period() else {
        return domain("exact rank needs every diagonal purely periodic");
    };
    let blocks = blocks_of(n0 as i64, x);
    let lowest = blocks
        .iter()
        .flatten()
        .filter_map(|b| b.diagonals().next().map(|(e, _)| e))
        .min()
        .unwrap_or(0);
    let symbol: Vec<Vec<Poly<F>>> = blocks
        .iter()
        .map(|row| {
            row.iter()
                .map(|b| {
                    b.diagonals().fold(Poly::zero(), |acc, (e, s)| {
                        &acc + &Poly::constant(s.value(0)).mul_x_pow((e - lowest) as usize)
                    })
                })
                .collect()
        })
        .collect();
    let r = bareiss_rank(symbol);
    Ok(F::from_i64(r as i64) / F::from_i64(n0 as i64))
}

pub fn rank_density<F: Field>(x: &BandMatrix<F>, mode: DensityMode) -> Result<RankReport<F>> {
    Ok(match mode {
        DensityMode::Truncated(n) => RankReport {
            mode: "truncated".into(),
            approximants: vec![rank_truncated(x, n)],
            exact: None,
            period: None,
            window: Some((n, n)),
        },
        DensityMode::Exact => RankReport {
            mode: "exact".into(),
            approximants: Vec::new(),
            exact: Some(rank_exact(x)?),
            period: x.period(),
            window: None,
        },
    })
}

/// Truncated approximants over a range of `n`, with the exact value when the
/// input is periodic.
pub fn rank_sweep<F: Field>(x: &BandMatrix<F>, ns: RangeInclusive<usize>) -> RankReport<F> {
    let window = (!ns.is_empty()).then(|| (*ns.start(), *ns.end()));
    let approximants = ns.into_par_iter().map(|n| rank_truncated(x, n)).collect();
    RankReport {
        mode: "sweep".into(),
        approximants,
        exact: rank_exact(x).ok(),
        period: x.period(),
        window,
    }
}

pub fn trace_density<F: Field>(x: &BandMatrix<F>, mode: DensityMode) -> Result<F> {
    let zero = QuasiPolySeq::zero();
    let diag = x.diagonal(0).unwrap_or(&zero);
    match mode {
        DensityMode::Truncated(n) => {
            let n = n as i64;
            let sum = (-n..=n).fold(F::zero(), |acc, i| acc + diag.value(i));
            Ok(sum / F::from_i64(2 * n + 1))
        }
        DensityMode::Exact => {
            if !diag.is_purely_periodic() {
                return domain("exact trace needs a purely periodic main diagonal");
            }
            let p = diag.left().period() as i64;
            let sum = (0..p).fold(F::zero(), |acc, i| acc + diag.value(i));
            Ok(sum / F::from_i64(p))
        }
    }
}

/// `a + b sqrt(d)` with `d` a square-free nonnegative integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticReal {
    a: BigRational,
    b: BigRational,
    d: u64,
}

fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Sign of `u + v sqrt(d)`.
fn sign_of(u: &BigRational, v: &BigRational, d: u64) -> Ordering {
    let su = u.cmp(&BigRational::zero());
    let sv = v.cmp(&BigRational::zero());
    if sv == Ordering::Equal || d == 0 {
        return su;
    }
    if su == sv || su == Ordering::Equal {
        return sv;
    }
    let uu = u * u;
    let vv = v * v * BigRational::from_integer(BigInt::from(d));
    match uu.cmp(&vv) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => Ordering::Equal,
    }
}

impl QuadraticReal {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        if !is_square_free(d) {
            return domain(format!("{d} is not a square-free positive integer"));
        }
        Ok(Self { a, b, d })
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_irrational(&self) -> bool {
        !self.b.is_zero() && self.d >= 2
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        sign_of(&(&self.a - q), &self.b, self.d)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigRational::from_integer(BigInt::from(k));
        Self {
            a: &self.a * &k,
            b: &self.b * &k,
            d: self.d,
        }
    }

    pub fn floor(&self) -> BigInt {
        // |b| sqrt(d) = sqrt(p/q) lies in [s/q, (s+1)/q) with s = isqrt(p q)
        let r = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        let s = (r.numer() * r.denom()).sqrt();
        let approx = BigRational::new(s, r.denom().clone());
        let est = if self.b.is_negative() { &self.a - approx } else { &self.a + approx };
        let mut m = est.floor().to_integer();
        let int = |m: &BigInt| BigRational::from_integer(m.clone());
        while self.cmp_rational(&int(&m)) == Ordering::Less {
            m -= 1;
        }
        while self.cmp_rational(&int(&(&m + 1))) != Ordering::Less {
            m += 1;
        }
        m
    }
}

/// A 0/1 diagonal on `-N..=N` whose window counts follow `r_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub steps: usize,
    /// Values at `-N..=N`.
    pub values: Vec<u8>,
    /// `r_0 ..= r_N`.
    pub r: Vec<usize>,
}

impl Construction {
    pub fn value(&self, i: i64) -> u8 {
        self.values[(i + self.steps as i64) as usize]
    }

    pub fn ones_in_window(&self, n: usize) -> usize {
        let n = n as i64;
        (-n..=n).filter(|&i| self.value(i) == 1).count()
    }

    pub fn to_band<F: Field>(&self) -> BandMatrix<F> {
        let vals = self.values.iter().map(|&v| F::from_i64(v as i64)).collect();
        BandMatrix::from_diagonals([(0, QuasiPolySeq::finite(-(self.steps as i64), vals))])
    }
}

/// `r_n = floor((2n+1) x) + 1`, the integer with `(r-1)/(2n+1) < x < r/(2n+1)`.
pub fn r_sequence(x: &QuadraticReal, n: usize) -> Result<usize> {
    let v = x.scale_int(2 * n as i64 + 1).floor() + BigInt::one();
    usize::try_from(v).map_err(|_| Error::Internal("r_n out of range".into()))
}

pub fn construct_diagonal(x: &QuadraticReal, steps: usize) -> Result<Construction> {
    if !x.is_irrational() {
        return domain("target must be irrational");
    }
    if x.cmp_rational(&BigRational::zero()) != Ordering::Greater
        || x.cmp_rational(&BigRational::one()) != Ordering::Less
    {
        return domain("target must lie strictly between 0 and 1");
    }
    let r: Vec<usize> = (0..=steps).map(|n| r_sequence(x, n)).collect::<Result<_>>()?;
    let mut values = vec![0u8; 2 * steps + 1];
    let mid = steps;
    values[mid] = 1;
    for n in 0..steps {
        let (neg, pos) = (mid - n - 1, mid + n + 1);
        match r[n + 1] - r[n] {
            0 => {}
            1 => values[pos] = 1,
            2 => {
                values[neg] = 1;
                values[pos] = 1;
            }
            k => return Err(Error::Internal(format!("increment {k} out of range"))),
        }
    }
    Ok(Construction { steps, values, r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    type M = BandMatrix<Scalar>;

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::new(p.into(), d.into())
    }

    fn alternating() -> M {
        M::from_diagonals([(
            0,
            QuasiPolySeq::from_tail(crate::quasi::QuasiPolyTail::periodic(vec![q(1, 1), q(0, 1)])),
        )])
    }

    #[test]
    fn densities() {
        assert_eq!(rank_exact(&M::identity()).unwrap(), q(1, 1));
        assert_eq!(rank_exact(&alternating()).unwrap(), q(1, 2));
        assert_eq!(rank_exact(&M::zero()).unwrap(), q(0, 1));
        assert_eq!(rank_exact(&M::q().add(&M::q().transpose())).unwrap(), q(1, 1));
        assert!(rank_exact(&M::j()).is_err());
        let e = M::unit(0, 0, q(1, 1));
        assert_eq!(rank_truncated(&e, 4).density, q(1, 9));
        assert_eq!(rank_truncated(&alternating(), 10).density, q(11, 21));
    }

    #[test]
    fn traces() {
        assert_eq!(trace_density(&M::identity(), DensityMode::Exact).unwrap(), q(1, 1));
        assert_eq!(trace_density(&M::q(), DensityMode::Exact).unwrap(), q(0, 1));
        assert_eq!(trace_density(&alternating(), DensityMode::Exact).unwrap(), q(1, 2));
        assert_eq!(trace_density(&alternating(), DensityMode::Truncated(10)).unwrap(), q(11, 21));
    }

    #[test]
    fn quadratic_floor() {
        let s2m1 = QuadraticReal::new(q(-1, 1), q(1, 1), 2).unwrap();
        assert_eq!(s2m1.scale_int(3).floor(), BigInt::from(1));
        assert_eq!(r_sequence(&s2m1, 1).unwrap(), 2);
        let half_s2 = QuadraticReal::new(q(0, 1), q(1, 2), 2).unwrap();
        assert_eq!(r_sequence(&half_s2, 2).unwrap(), 4);
        let neg = QuadraticReal::new(q(0, 1), q(-1, 1), 3).unwrap();
        assert_eq!(neg.floor(), BigInt::from(-2));
        assert!(QuadraticReal::new(q(0, 1), q(1, 1), 8).is_err());
    }

    #[test]
    fn construction() {
        let x = QuadraticReal::new(q(-1, 1), q(1, 1), 2).unwrap();
        let c = construct_diagonal(&x, 30).unwrap();
        assert_eq!((c.r[0], c.value(0)), (1, 1));
        for n in 0..=30 {
            assert_eq!(c.ones_in_window(n), c.r[n]);
        }
        let rational = QuadraticReal::new(q(1, 2), q(0, 1), 2).unwrap();
        assert!(construct_diagonal(&rational, 3).is_err());
    }
}
