//! Seeded generators for builder units and decompositions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::loops::{Generator, Loop, LoopDecomposition, LoopUnit, RLoop, RMat};
use crate::operators::FMap;
use crate::scalar::{Mat, Rational, Ring};
use crate::toeplitz_contract::{TGen, ToeplitzUnit};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(r: &mut ChaCha8Rng) -> Rational {
    let num = r.gen_range(-3..=3);
    let den = if r.gen_bool(0.25) { 2 } else { 1 };
    Rational::new(num, den)
}

fn elementary(d: usize, i: usize, j: usize, c: Rational) -> RMat {
    let mut m = Mat::scalar(d, Rational::one());
    m.set(i, j, c);
    m
}

/// Random invertible matrix with its inverse, as a product of elementary and sign matrices.
pub fn invertible(r: &mut ChaCha8Rng, d: usize) -> (RMat, RMat) {
    let mut f = Mat::scalar(d, Rational::one());
    let mut b = f.clone();
    for _ in 0..2 * d {
        let (g, gi) = if d > 1 && r.gen_bool(0.7) {
            let i = r.gen_range(0..d);
            let j = (i + r.gen_range(1..d)) % d;
            let c = small(r);
            (elementary(d, i, j, c.clone()), elementary(d, i, j, c.neg()))
        } else {
            let mut s = Mat::scalar(d, Rational::one());
            let i = r.gen_range(0..d);
            let c = if r.gen_bool(0.5) { Rational::from_int(2) } else { Rational::from_int(-1) };
            let ci = c.recip().unwrap();
            s.set(i, i, c);
            let mut si = Mat::scalar(d, Rational::one());
            si.set(i, i, ci);
            (s, si)
        };
        f = f.mul(&g);
        b = gi.mul(&b);
    }
    (f, b)
}

fn signs(r: &mut ChaCha8Rng, d: usize) -> RMat {
    let mut m = Mat::scalar(d, Rational::one());
    for i in 0..d {
        if r.gen_bool(0.5) {
            m.set(i, i, Rational::from_int(-1));
        }
    }
    m
}

/// P·diag(±1)·P⁻¹.
pub fn involution(r: &mut ChaCha8Rng, d: usize) -> RMat {
    let (p, pi) = invertible(r, d);
    p.mul(&signs(r, d)).mul(&pi)
}

/// A symmetric orthogonal involution: a signed permutation conjugate of
/// diag(±1), or a rational reflection 1 − 2xxᵀ/(xᵀx).
pub fn orthogonal_involution(r: &mut ChaCha8Rng, d: usize) -> RMat {
    if r.gen_bool(0.5) {
        let x: Vec<Rational> = (0..d).map(|_| small(r)).collect();
        let n2 = x.iter().fold(Rational::zero(), |acc, a| acc.add(&a.mul(a)));
        if let Some(inv) = n2.recip() {
            let c = inv.mul(&Rational::from_int(2));
            return Mat::from_fn(d, |i, j| {
                let id = if i == j { Rational::one() } else { Rational::zero() };
                id.sub(&c.mul(&x[i]).mul(&x[j]))
            });
        }
    }
    let p = signed_permutation(r, d);
    p.mul(&signs(r, d)).mul(&p.transpose())
}

pub fn signed_permutation(r: &mut ChaCha8Rng, d: usize) -> RMat {
    let mut perm: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        perm.swap(i, r.gen_range(0..=i));
    }
    let sg: Vec<bool> = (0..d).map(|_| r.gen_bool(0.5)).collect();
    Mat::from_fn(d, |i, j| {
        if perm[i] != j {
            Rational::zero()
        } else if sg[i] {
            Rational::from_int(-1)
        } else {
            Rational::one()
        }
    })
}

/// Strictly upper triangular loop with exponents in [lo, hi]; nilpotent of index d.
pub fn nilpotent_loop(r: &mut ChaCha8Rng, d: usize, lo: i64, hi: i64) -> RLoop {
    let mut out = Loop::zero(&d);
    for _ in 0..2 {
        let k = r.gen_range(lo..=hi);
        let vals: Vec<Rational> = (0..d * d).map(|_| small(r)).collect();
        let c = Mat::from_fn(d, |i, j| if j > i { vals[i * d + j].clone() } else { Rational::zero() });
        out.add_term(k, &c);
    }
    out
}

fn generator(r: &mut ChaCha8Rng, d: usize, support: i64) -> Generator {
    let power = if r.gen_bool(0.5) { 1 } else { -1 };
    match r.gen_range(0..4) {
        0 => {
            let (c, c_inv) = invertible(r, d);
            Generator::Constant { c, c_inv }
        }
        1 => {
            let (c, c_inv) = invertible(r, d);
            Generator::Monomial { k: power, c, c_inv }
        }
        2 => Generator::Mixer { power, q: involution(r, d) },
        _ if d > 1 => Generator::Unipotent { n: nilpotent_loop(r, d, -support, support), index: d as u32 },
        _ => Generator::Mixer { power, q: Mat::scalar(1, Rational::from_int(-1)) },
    }
}

/// A builder unit from `len` random generators.
pub fn loop_unit(r: &mut ChaCha8Rng, d: usize, len: usize) -> LoopUnit {
    let spec: Vec<Generator> = (0..len).map(|_| generator(r, d, 1)).collect();
    LoopUnit::build(d, &spec).expect("generators are checked by construction")
}

/// A unitary builder unit: signed permutations, monomials of them and
/// mixers of symmetric orthogonal involutions.
pub fn unitary_unit(r: &mut ChaCha8Rng, d: usize, len: usize) -> LoopUnit {
    let spec: Vec<Generator> = (0..len)
        .map(|_| {
            let power = if r.gen_bool(0.5) { 1 } else { -1 };
            match r.gen_range(0..3) {
                0 => {
                    let c = signed_permutation(r, d);
                    Generator::Constant { c_inv: c.transpose(), c }
                }
                1 => {
                    let c = signed_permutation(r, d);
                    Generator::Monomial { k: power, c_inv: c.transpose(), c }
                }
                _ => Generator::Mixer { power, q: orthogonal_involution(r, d) },
            }
        })
        .collect();
    LoopUnit::build(d, &spec).expect("generators are checked by construction")
}

/// s factors of one or two generators each, with default L-windows.
pub fn decomposition(r: &mut ChaCha8Rng, d: usize, s: usize) -> LoopDecomposition {
    let factors = (0..s)
        .map(|_| {
            let len = r.gen_range(1..=2);
            loop_unit(r, d, len)
        })
        .collect();
    LoopDecomposition::with_default_class(factors).expect("default windows fit")
}

fn nilpotent_fmap(r: &mut ChaCha8Rng, d: usize) -> FMap<RMat> {
    // strictly upper in the (index, coefficient) order: nilpotent of index ≤ 3d
    let mut out = FMap::new();
    for _ in 0..2 {
        let i = r.gen_range(0..3);
        let j = r.gen_range(0..3);
        let vals: Vec<Rational> = (0..d * d).map(|_| small(r)).collect();
        let c = Mat::from_fn(d, |a, b| if (i, a) < (j, b) { vals[a * d + b].clone() } else { Rational::zero() });
        if !c.is_zero() {
            let e = out.entry((i, j)).or_insert_with(|| Mat::zero(&d));
            *e = e.add(&c);
        }
    }
    out
}

/// A Toeplitz builder unit from `len` random generators.
pub fn toeplitz_unit(r: &mut ChaCha8Rng, d: usize, len: usize) -> ToeplitzUnit {
    let spec: Vec<TGen> = (0..len)
        .map(|_| match r.gen_range(0..4) {
            0 => {
                let (u, u_inv) = invertible(r, d);
                TGen::Corner { u, u_inv }
            }
            1 => {
                let (c, c_inv) = invertible(r, d);
                TGen::Constant { c, c_inv }
            }
            2 => {
                let (u, u_inv) = invertible(r, d);
                TGen::Twist { q: involution(r, d), u, u_inv }
            }
            _ => {
                let n = nilpotent_fmap(r, d);
                if n.is_empty() {
                    let (u, u_inv) = invertible(r, d);
                    TGen::Corner { u, u_inv }
                } else {
                    TGen::Unipotent { n, index: 3 * d as u32 }
                }
            }
        })
        .collect();
    ToeplitzUnit::build(d, &spec).expect("generators are checked by construction")
}
