//! Seeded random generators for the randomized suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Basis, BtElement};
use crate::partitions::SetPartition;
use crate::permutations::Perm;
use crate::scalars::RatFunc;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_perm<R: Rng>(n: usize, rng: &mut R) -> Perm {
    let mut imgs: Vec<usize> = (1..=n).collect();
    imgs.shuffle(rng);
    Perm::from_images(&imgs).expect("shuffle is a bijection")
}

/// Uniform over set partitions via a random labelling, which is not uniform
/// over partitions but reaches all of them.
pub fn random_partition<R: Rng>(n: usize, rng: &mut R) -> SetPartition {
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    SetPartition::from_labels(&labels)
}

pub fn random_basis<R: Rng>(n: usize, rng: &mut R) -> Basis {
    Basis::new(random_perm(n, rng), random_partition(n, rng))
}

/// A small nonzero coefficient drawn from `{±1, ±2, u, u - 1, 1/u}`.
pub fn random_coeff<R: Rng>(rng: &mut R) -> RatFunc {
    let u = RatFunc::u();
    match rng.gen_range(0..7) {
        0 => RatFunc::one(),
        1 => RatFunc::from_int(-1),
        2 => RatFunc::from_int(2),
        3 => RatFunc::from_int(-2),
        4 => u,
        5 => &u - &RatFunc::one(),
        _ => u.inv().expect("u is nonzero"),
    }
}

/// A random combination of up to `max_terms` basis elements.
pub fn random_element<R: Rng>(n: usize, max_terms: usize, rng: &mut R) -> BtElement {
    let k = rng.gen_range(1..=max_terms.max(1));
    let mut e = BtElement::zero(n).expect("level within guard");
    for _ in 0..k {
        let b = random_basis(n, rng);
        e.add_scaled(
            &BtElement::term(b, RatFunc::one()).expect("level within guard"),
            &random_coeff(rng),
        );
    }
    e
}
