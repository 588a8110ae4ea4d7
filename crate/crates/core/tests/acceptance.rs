//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Each criterion also has a wall-clock budget.

mod common;

use std::cmp::Ordering;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use gjacobi::assoc::{cyclic_twisted_to_matrix, is_isomorphism, FinAssocAlg, GroupAction};
use gjacobi::central::{
    block_iso_forward, block_iso_inverse, block_mul, embed_affine, embed_w, japanese_cocycle, w_reference, WSymbol,
};
use gjacobi::hochschild::{homology, periodicity_check, HomologyKind};
use gjacobi::lie::{lie_homology, predicted_stable_dims, FinLieAlg, Parity};
use gjacobi::rank::{construct_diagonal, r_sequence, rank_exact, rank_truncated, QuadraticReal};
use gjacobi::report::Limits;
use gjacobi::{Poly, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

type A = FinAssocAlg<Scalar>;
type G = FinLieAlg<Scalar>;
type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn c1() -> Check {
    let (p, q, i) = (M::p(), M::q(), M::identity());
    ensure(q.transpose().mul(&q) == i, || "tQ Q != I".into())?;
    ensure(p.mul(&q).sub(&q.mul(&p)) == i, || "PQ - QP != I".into())?;
    Ok("tQ Q = I, PQ - QP = I".into())
}

fn c2() -> Check {
    let mut r = rng(2024);
    let xs: Vec<M> = (0..100).map(|_| band(&mut r, 3, 3, 2)).collect();
    let psi = |u: &M, v: &M| ok(japanese_cocycle(u, v));
    for k in 0..100 {
        let (x, y, z) = (&xs[k], &xs[(k + 1) % 100], &xs[(k + 7) % 100]);
        ensure(psi(y, x)? == -psi(x, y)?, || format!("antisymmetry fails on sample {k}"))?;
        let three = psi(&x.bracket(y), z)? + psi(&y.bracket(z), x)? + psi(&z.bracket(x), y)?;
        ensure(three.is_zero(), || format!("3-term identity fails on sample {k}: {three}"))?;
    }
    Ok("100 samples".into())
}

fn c3() -> Check {
    let mut pairs = 0;
    for n in 2..=3i64 {
        let e = |i, j, a| ok(embed_affine::<Scalar>(n, i, j, a));
        for (i, j, k, l) in index_quads(n) {
            for a in -3..=3 {
                for b in -3..=3 {
                    let (x, y) = (e(i, j, a)?, e(k, l, b)?);
                    let mut expect = M::zero();
                    if j == k {
                        expect = expect.add(&e(i, l, a + b)?);
                    }
                    if l == i {
                        expect = expect.sub(&e(k, j, a + b)?);
                    }
                    ensure(x.bracket(&y) == expect, || format!("bracket n={n} ({i}{j},{a}) ({k}{l},{b})"))?;
                    let c = ok(japanese_cocycle(&x, &y))?;
                    let want = if a + b == 0 && j == k && i == l { s(a) } else { s(0) };
                    ensure(c == want, || format!("central term n={n} ({i}{j},{a}) ({k}{l},{b}): {c} != {want}"))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn index_quads(n: i64) -> Vec<(i64, i64, i64, i64)> {
    let mut v = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    v.push((i, j, k, l));
                }
            }
        }
    }
    v
}

fn c4() -> Check {
    let monomials: Vec<Poly> = (0..=3).map(|k| Poly::x().mul_x_pow(k)).collect();
    let mut sigma: Option<Scalar> = None;
    let mut pairs = 0;
    for r in -3..=3 {
        for s_ in -3..=3 {
            for f in &monomials {
                for g in &monomials {
                    let (x, y) = (embed_w(&WSymbol::new(r, f.clone())), embed_w(&WSymbol::new(s_, g.clone())));
                    let (sym, psi_w) = w_reference(r, f, s_, g);
                    ensure(x.bracket(&y) == embed_w(&sym), || format!("bracket r={r} s={s_} f={f} g={g}"))?;
                    let psi = ok(japanese_cocycle(&x, &y))?;
                    if !psi_w.is_zero() {
                        let ratio = psi.clone() / psi_w.clone();
                        match &sigma {
                            None => sigma = Some(ratio),
                            Some(sg) => ensure(*sg == ratio, || format!("sigma {ratio} != {sg} at r={r} s={s_}"))?,
                        }
                    }
                    let sg = sigma.clone().unwrap_or_else(|| s(1));
                    ensure(psi == sg.clone() * psi_w.clone(), || {
                        format!("cocycle r={r} s={s_} f={f} g={g}: {psi} != {sg} * {psi_w}")
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    let sg = sigma.ok_or("no nonzero reference cocycle in range")?;
    ensure(sg == s(1) || sg == s(-1), || format!("sigma = {sg} is not a sign"))?;
    Ok(format!("{pairs} pairs, sigma = {sg}"))
}

fn c5() -> Check {
    let mut r = rng(5);
    for k in 0..50 {
        let n = 2 + (k % 2) as i64;
        let (x, y) = (band(&mut r, 3, 3, 2), band(&mut r, 3, 3, 2));
        let (fx, fy) = (ok(block_iso_forward(n, &x))?, ok(block_iso_forward(n, &y))?);
        ensure(ok(block_iso_inverse(&fx))? == x, || format!("inverse after forward, pair {k}"))?;
        ensure(ok(block_iso_forward(n, &ok(block_iso_inverse(&fx))?))? == fx, || format!("forward after inverse, pair {k}"))?;
        ensure(ok(block_iso_forward(n, &x.mul(&y)))? == block_mul(&fx, &fy), || format!("not multiplicative, pair {k}"))?;
    }
    Ok("50 pairs".into())
}

fn betti(g: &G, pmax: usize) -> Result<Vec<usize>, String> {
    Ok(ok(lie_homology(g, pmax, &Limits::default()))?.betti)
}

fn c6() -> Check {
    let sl2 = betti(&ok(G::sl(2))?, 3)?;
    ensure(sl2 == [1, 0, 0, 1], || format!("sl(2): {sl2:?}"))?;
    let gl2 = betti(&ok(G::gl(2))?, 4)?;
    ensure(gl2 == [1, 1, 0, 1, 1], || format!("gl(2): {gl2:?}"))?;
    let over = betti(&ok(G::gl_over(1, &A::matrix(2)))?, 4)?;
    ensure(over == gl2, || format!("gl_1(M_2): {over:?} vs gl(2) {gl2:?}"))?;
    let gens = [(1, Parity::Odd), (3, Parity::Odd), (5, Parity::Odd)];
    let predicted = ok(predicted_stable_dims(&gens, 5))?;
    let gl3: Vec<u64> = betti(&ok(G::gl(3))?, 5)?.into_iter().map(|b| b as u64).collect();
    ensure(gl3 == predicted, || format!("gl(3): {gl3:?} vs predicted {predicted:?}"))?;
    Ok(format!("sl2 {sl2:?}, gl2 {gl2:?}, gl3 {gl3:?}"))
}

fn hom(a: &A, kind: HomologyKind, pmax: usize) -> Result<Vec<usize>, String> {
    Ok(ok(homology(a, kind, pmax, &Limits::default()))?.betti)
}

fn c7() -> Check {
    let k = A::field();
    let m = A::matrix(2);
    let cases = [
        ("HH(k)", hom(&k, HomologyKind::Hochschild, 3)?, vec![1, 0, 0, 0]),
        ("HC(k)", hom(&k, HomologyKind::Cyclic, 4)?, vec![1, 0, 1, 0, 1]),
        ("HH(M2)", hom(&m, HomologyKind::Hochschild, 3)?, vec![1, 0, 0, 0]),
        ("HC(M2)", hom(&m, HomologyKind::Cyclic, 3)?, vec![1, 0, 1, 0]),
    ];
    for (name, got, want) in &cases {
        ensure(got == want, || format!("{name}: {got:?} != {want:?}"))?;
    }
    Ok("HH/HC of k and M_2(k)".into())
}

fn c8() -> Check {
    let k = A::field();
    let hd = hom(&k, HomologyKind::Dihedral, 6)?;
    let skew = hom(&k, HomologyKind::SkewDihedral, 6)?;
    for p in 0..=6 {
        ensure((hd[p] != 0) == (p % 4 == 0), || format!("HD: {hd:?}"))?;
        ensure((skew[p] != 0) == (p % 4 == 2), || format!("skew HD: {skew:?}"))?;
    }
    Ok(format!("HD {hd:?}, skew {skew:?}"))
}

fn c9() -> Check {
    let mut total = 0;
    for (name, a, pmax) in [("k", A::field(), 6), ("M2", A::matrix(2), 4)] {
        let rep = ok(periodicity_check(&a, pmax, &Limits::default()))?;
        ensure(rep.passed, || format!("{name}: windows {:?}", rep.windows))?;
        total += rep.windows.iter().filter(|w| !w.vacuous).count();
    }
    Ok(format!("{total} non-vacuous windows"))
}

fn c10() -> Check {
    let action = GroupAction::<Scalar>::cyclic_shift(2);
    let tw = ok(A::twisted(&A::product_field(2), &action))?;
    let phi = cyclic_twisted_to_matrix::<Scalar>(2);
    let m = ok(A::matrix(2).with_involution(None))?;
    ensure(is_isomorphism(&tw, &m, &phi), || "map is not an algebra isomorphism".into())?;
    Ok("k^2{Z/2} = M_2(k)".into())
}

fn c11() -> Check {
    ensure(ok(rank_exact(&M::identity()))? == s(1), || "Rank(I) != 1".into())?;
    let alt = indicator(2, &[0]);
    let half = q(1, 2);
    ensure(ok(rank_exact(&alt))? == half, || "Rank(alternating) != 1/2".into())?;
    for n in 0..=200usize {
        let ap = rank_truncated(&alt, n);
        let err = (ap.density - half.clone()) * s(2 * n as i64 + 1);
        ensure(err.abs() < s(1), || format!("approximant n = {n} off by {err}/(2n+1)"))?;
    }
    let mut r = rng(11);
    let xs: Vec<M> = (0..12).map(|_| periodic_band(&mut r, 2, 3)).collect();
    for (k, x) in xs.iter().enumerate() {
        let y = &xs[(k + 5) % xs.len()];
        let (rx, ry, rxy) = (ok(rank_exact(x))?, ok(rank_exact(y))?, ok(rank_exact(&x.mul(y)))?);
        ensure(rxy <= rx && rxy <= ry, || format!("Rank(XY) > min on pair {k}"))?;
        ensure((rx == s(0)) == x.is_zero(), || format!("Rank(X) = 0 iff X = 0 fails on sample {k}"))?;
    }
    ensure(ok(rank_exact(&M::zero()))?.is_zero(), || "Rank(0) != 0".into())?;
    for (period, e, f) in [(2, vec![0], vec![1]), (3, vec![0], vec![2]), (6, vec![0, 3], vec![1, 2, 5]), (4, vec![], vec![1, 3])] {
        let (ie, if_) = (indicator(period, &e), indicator(period, &f));
        ensure(ie.mul(&if_).is_zero() && ie.mul(&ie) == ie, || "test idempotents are not orthogonal".into())?;
        let sum = ok(rank_exact(&ie.add(&if_)))?;
        ensure(sum == ok(rank_exact(&ie))? + ok(rank_exact(&if_))?, || format!("additivity fails for {e:?} + {f:?}"))?;
    }
    Ok(format!("{} periodic samples", xs.len()))
}

fn c12() -> Check {
    let targets = [
        ("sqrt2 - 1", -1, q(1, 1), 2u64),
        ("sqrt2 / 2", 0, q(1, 2), 2u64),
    ];
    for (name, a, b, d) in targets {
        let x = ok(QuadraticReal::new(BigRational::from_integer(BigInt::from(a)), b, d))?;
        let c = ok(construct_diagonal(&x, 200))?;
        let band: M = c.to_band();
        for n in 0..=200usize {
            let rn = ok(r_sequence(&x, n))?;
            let w = 2 * n as i64 + 1;
            ensure(c.r[n] == rn && c.ones_in_window(n) == rn, || format!("{name}: #ones(window {n}) != r_n"))?;
            let lo = BigRational::new(BigInt::from(rn as i64 - 1), BigInt::from(w));
            let hi = BigRational::new(BigInt::from(rn as i64), BigInt::from(w));
            ensure(
                x.cmp_rational(&lo) == Ordering::Greater && x.cmp_rational(&hi) == Ordering::Less,
                || format!("{name}: bracketing fails at n = {n}"),
            )?;
            // |r_n/(2n+1) - x| < 1/(2n+1) with x strictly inside ((r_n-1)/w, r_n/w)
            let upper = BigRational::new(BigInt::from(rn as i64 + 1), BigInt::from(w));
            ensure(
                x.cmp_rational(&lo) == Ordering::Greater && x.cmp_rational(&upper) == Ordering::Less,
                || format!("{name}: distance bound fails at n = {n}"),
            )?;
            if n > 0 {
                let inc = rn - c.r[n - 1];
                ensure(inc <= 2, || format!("{name}: increment {inc} at n = {n}"))?;
            }
            if n % 25 == 0 {
                ensure(rank_truncated(&band, n).density == hi, || format!("{name}: truncated rank at n = {n}"))?;
            }
        }
        ensure(c.r[0] == 1, || format!("{name}: r_0 != 1"))?;
        ensure(c.value(0) == 1, || format!("{name}: d_0 != 1"))?;
    }
    Ok("n <= 200 for both targets".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, u64); 12] = [
        ("P, Q identities", c1, 1),
        ("cocycle conditions", c2, 30),
        ("affine transport", c3, 60),
        ("W transport", c4, 60),
        ("block isomorphism", c5, 30),
        ("Lie homology", c6, 600),
        ("Hochschild/cyclic", c7, 300),
        ("dihedral", c8, 60),
        ("periodicity", c9, 300),
        ("twisted example", c10, 1),
        ("rank functional", c11, 60),
        ("diagonal construction", c12, 10),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let (tag, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over budget of {budget}s")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2}: {tag} ({:.2?}) {name}: {detail}", k + 1, elapsed);
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
