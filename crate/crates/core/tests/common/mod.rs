//! Seeded random inputs shared by the integration tests.

#![allow(dead_code)]

use gjacobi::band::BandMatrix;
use gjacobi::poly::Poly;
use gjacobi::quasi::{QuasiPolySeq, QuasiPolyTail};
use gjacobi::{Field, Scalar};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type M = BandMatrix<Scalar>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn s(v: i64) -> Scalar {
    Scalar::from_i64(v)
}

pub fn q(p: i64, d: i64) -> Scalar {
    Scalar::new(p.into(), d.into())
}

/// Small integers, occasionally a half.
pub fn scalar(rng: &mut impl Rng) -> Scalar {
    let p = rng.gen_range(-3..=3);
    if rng.gen_bool(0.15) {
        q(p, 2)
    } else {
        s(p)
    }
}

pub fn poly(rng: &mut impl Rng, max_deg: usize) -> Poly<Scalar> {
    let deg = rng.gen_range(0..=max_deg);
    Poly::new((0..=deg).map(|_| scalar(rng)).collect())
}

pub fn tail(rng: &mut impl Rng, max_period: usize, max_deg: usize) -> QuasiPolyTail<Scalar> {
    if rng.gen_bool(0.3) {
        return QuasiPolyTail::zero();
    }
    let period = rng.gen_range(1..=max_period);
    QuasiPolyTail::new((0..period).map(|_| poly(rng, max_deg)).collect())
}

pub fn seq(rng: &mut impl Rng, max_period: usize, max_deg: usize) -> QuasiPolySeq<Scalar> {
    let left = tail(rng, max_period, max_deg);
    let right = if rng.gen_bool(0.3) { left.clone() } else { tail(rng, max_period, max_deg) };
    let lo = rng.gen_range(-3..=3);
    let len = rng.gen_range(0..=3);
    QuasiPolySeq::from_parts(left, lo, (0..len).map(|_| scalar(rng)).collect(), right)
}

/// Bandwidth at most `max_bw`, tails of period at most `max_period` and
/// degree at most `max_deg`.
pub fn band(rng: &mut impl Rng, max_bw: i64, max_period: usize, max_deg: usize) -> M {
    let mut diags = Vec::new();
    for d in -max_bw..=max_bw {
        if rng.gen_bool(0.5) {
            diags.push((d, seq(rng, max_period, max_deg)));
        }
    }
    M::from_diagonals(diags)
}

/// Purely periodic diagonals with constant entries per residue.
pub fn periodic_band(rng: &mut impl Rng, max_bw: i64, max_period: usize) -> M {
    let mut diags = Vec::new();
    for d in -max_bw..=max_bw {
        if rng.gen_bool(0.5) {
            let p = rng.gen_range(1..=max_period);
            let vals = (0..p).map(|_| s(rng.gen_range(-2..=2))).collect();
            diags.push((d, QuasiPolySeq::from_tail(QuasiPolyTail::periodic(vals))));
        }
    }
    M::from_diagonals(diags)
}

/// 0/1 periodic diagonal with the given residues set to one.
pub fn indicator(period: usize, ones: &[usize]) -> M {
    let vals = (0..period).map(|r| s(ones.contains(&r) as i64)).collect();
    M::from_diagonals([(0, QuasiPolySeq::from_tail(QuasiPolyTail::periodic(vals)))])
}
