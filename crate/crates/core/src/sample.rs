//! Seeded random elements for sampled identities.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, SkewPoly};
use crate::exponents;
use crate::scalar::Scalar;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero_int(rng: &mut SampleRng) -> i64 {
    let v = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// Exponents over `ncoords` coordinates of total degree at most `degree`.
pub fn random_exponents(rng: &mut SampleRng, ncoords: usize, degree: u32) -> Vec<u32> {
    let mut e = vec![0u32; ncoords];
    if ncoords == 0 {
        return e;
    }
    let d = rng.gen_range(0..=degree);
    for _ in 0..d {
        e[rng.gen_range(0..ncoords)] += 1;
    }
    e
}

/// Random element with up to three basis terms of total degree at most `degree`.
pub fn random_element(alg: &Algebra, rng: &mut SampleRng, degree: u32) -> SkewPoly {
    let (m, n) = (alg.ncoeffs(), alg.ngens());
    let terms = rng.gen_range(1..=3);
    let mut f = SkewPoly::zero();
    for _ in 0..terms {
        let e = random_exponents(rng, m + n, degree);
        let gamma = exponents::trim(e[..m].to_vec());
        let alpha = exponents::trim(e[m..].to_vec());
        f = &f + &SkewPoly::basis(gamma, alpha, Scalar::from_int(nonzero_int(rng)));
    }
    if f.is_zero() {
        SkewPoly::one()
    } else {
        f
    }
}

/// Random element that is never zero and has exactly one basis term.
pub fn random_monomial(alg: &Algebra, rng: &mut SampleRng, degree: u32) -> SkewPoly {
    let (m, n) = (alg.ncoeffs(), alg.ngens());
    let e = random_exponents(rng, m + n, degree);
    SkewPoly::basis(
        exponents::trim(e[..m].to_vec()),
        exponents::trim(e[m..].to_vec()),
        Scalar::from_int(nonzero_int(rng)),
    )
}

/// Random subset of `0..n` of size `k`, sorted.
pub fn random_subset(rng: &mut SampleRng, n: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    for i in 0..k.min(n) {
        let j = rng.gen_range(i..n);
        all.swap(i, j);
    }
    let mut s = all[..k.min(n)].to_vec();
    s.sort_unstable();
    s
}
