#![allow(dead_code)]

use logfol::{Field, GermContext, Jet, LogDerivation, Rat, UnitJet};
use rand::Rng;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::from_ratio(n, d)
}

pub fn random_rat(rng: &mut impl Rng) -> Rat {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn random_vec(n: usize, rng: &mut impl Rng) -> Vec<Rat> {
    (0..n).map(|_| Rat::from_i64(rng.gen_range(-4..=4))).collect()
}

/// About half of the monomials of degree `<= max_deg`, small integer coefficients.
pub fn random_jet(ctx: GermContext, rng: &mut impl Rng, max_deg: u32) -> Jet<Rat> {
    let mut terms: Vec<(Vec<u32>, Rat)> = Vec::new();
    for e in ctx.monomials_up_to(max_deg) {
        if rng.gen_bool(0.5) {
            terms.push((e, Rat::from_i64(rng.gen_range(-3..=3))));
        }
    }
    Jet::from_terms(ctx, terms)
}

pub fn random_unit(ctx: GermContext, rng: &mut impl Rng) -> UnitJet<Rat> {
    let j = random_jet(ctx, rng, 2);
    let j = &j - &Jet::constant(ctx, j.constant_term());
    let c = [1, -1, 2, 3][rng.gen_range(0..4)];
    UnitJet::new(&j + &Jet::constant(ctx, Rat::from_i64(c))).expect("nonzero constant")
}

pub fn random_field(ctx: GermContext, rng: &mut impl Rng) -> LogDerivation<Rat> {
    let b = (0..ctx.r()).map(|_| random_jet(ctx, rng, 2)).collect();
    let a = (0..ctx.n() - ctx.r()).map(|_| random_jet(ctx, rng, 2)).collect();
    LogDerivation::new(ctx, b, a).expect("shapes match")
}
