//! Randomized identity checks, reproducible from a seed.

use logfol::cohomology::h_p1;
use logfol::semistability::{nabla, T1Section};
use logfol::{
    cohomology_snc_curve, cs_index_paper, CechLeafData, Field, GermContext, GradedBundleP1, Jet, LogDerivation,
    LogOneForm, Matrix, Rat, SNCCurveBundle,
};
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::commands::Findings;
use crate::report::Verdict;

type Check = fn(&mut ChaCha8Rng) -> Result<bool, logfol::Error>;

const CHECKS: [(&str, Check); 6] = [
    ("total_differential", total_differential),
    ("jacobi", jacobi),
    ("leibniz", leibniz),
    ("cs_relation", cs_relation),
    ("serre_duality", serre_duality),
    ("p1_table", p1_table),
];

pub fn run(seed: u64, trials: usize) -> Findings {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Findings::new(Verdict::Holds);
    let mut all = true;
    for (name, check) in CHECKS {
        let mut passed = 0;
        for trial in 0..trials {
            match check(&mut rng) {
                Ok(true) => passed += 1,
                Ok(false) => out.certificates.push(format!("{name}: trial {trial} fails")),
                Err(e) => out.certificates.push(format!("{name}: trial {trial} errors: {e}")),
            }
        }
        all &= passed == trials;
        out.witness(name, format!("{passed}/{trials}"));
    }
    out.witness("seed", seed);
    out.decision = all.into();
    out
}

fn random_jet(ctx: GermContext, rng: &mut ChaCha8Rng, max_deg: u32) -> Jet<Rat> {
    let mut terms = Vec::new();
    for e in ctx.monomials_up_to(max_deg) {
        if rng.gen_bool(0.5) {
            terms.push((e, Rat::from_i64(rng.gen_range(-3..=3))));
        }
    }
    Jet::from_terms(ctx, terms)
}

fn random_field(ctx: GermContext, rng: &mut ChaCha8Rng) -> Result<LogDerivation<Rat>, logfol::Error> {
    let b = (0..ctx.r()).map(|_| random_jet(ctx, rng, 2)).collect();
    let a = (0..ctx.n() - ctx.r()).map(|_| random_jet(ctx, rng, 2)).collect();
    LogDerivation::new(ctx, b, a)
}

fn total_differential(rng: &mut ChaCha8Rng) -> Result<bool, logfol::Error> {
    let dims: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..=2)).collect();
    let opens = rng.gen_range(1..=4);
    let data = CechLeafData::<Rat>::twisted_constant(opens, &dims, rng)?;
    let n = rng.gen_range(0..=data.max_total_degree());
    let y: Vec<Rat> = (0..data.total_dim(n))
        .map(|_| Rat::from_i64(rng.gen_range(-4..=4)))
        .collect();
    let twice = data.total(n + 1).mul_vec(&data.total(n).mul_vec(&y));
    Ok(twice.iter().all(Zero::is_zero))
}

fn jacobi(rng: &mut ChaCha8Rng) -> Result<bool, logfol::Error> {
    let ctx = GermContext::normal_crossing(3, 2, 4)?;
    let (a, b, c) = (random_field(ctx, rng)?, random_field(ctx, rng)?, random_field(ctx, rng)?);
    let t1 = a.lie_bracket(&b)?.lie_bracket(&c)?;
    let t2 = b.lie_bracket(&c)?.lie_bracket(&a)?;
    let t3 = c.lie_bracket(&a)?.lie_bracket(&b)?;
    Ok(t1.try_add(&t2)?.try_add(&t3)?.is_zero())
}

fn leibniz(rng: &mut ChaCha8Rng) -> Result<bool, logfol::Error> {
    let ctx = GermContext::normal_crossing(3, 2, 4)?;
    let v = random_field(ctx, rng)?;
    let f = random_jet(ctx, rng, 2);
    let g = T1Section::new(random_jet(ctx, rng, 2))?;
    let lhs = nabla(&v, &g.mul_function(&f))?;
    let rhs = g.mul_function(&v.apply(&f)?).add(&nabla(&v, &g)?.mul_function(&f));
    Ok(lhs.agrees_with(&rhs))
}

fn cs_relation(rng: &mut ChaCha8Rng) -> Result<bool, logfol::Error> {
    let r = rng.gen_range(2..=5);
    let ctx = GermContext::normal_crossing(r, r, 3)?;
    let mut a: Vec<Rat> = Vec::new();
    while a.len() < r {
        let x = Rat::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        if !a.contains(&x) {
            a.push(x);
        }
    }
    let dlog = a.into_iter().map(|x| Jet::constant(ctx, x)).collect();
    let omega = LogOneForm::new(ctx, dlog, vec![])?;
    let expected = Rat::from_i64(r as i64 - 2);
    for i in 1..=r {
        for j in i + 1..=r {
            let sum = cs_index_paper(&omega, i, j)?.value + cs_index_paper(&omega, j, i)?.value;
            if sum != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn serre_duality(rng: &mut ChaCha8Rng) -> Result<bool, logfol::Error> {
    let rank = rng.gen_range(1..=3);
    let mut degs = || (0..rank).map(|_| rng.gen_range(-4..=4)).collect::<Vec<i64>>();
    let (left, right) = (GradedBundleP1::new(degs()), GradedBundleP1::new(degs()));
    // unit lower triangular, hence invertible
    let glue = Matrix::from_fn(rank, rank, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => Rat::from_i64(1),
        std::cmp::Ordering::Greater => Rat::from_i64(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Less => Rat::zero(),
    });
    let e = SNCCurveBundle::new(left, right, glue)?;
    let (h0, h1) = cohomology_snc_curve(&e);
    let (d0, d1) = cohomology_snc_curve(&e.serre_dual());
    Ok(h0 == d1 && h1 == d0)
}

fn p1_table(rng: &mut ChaCha8Rng) -> Result<bool, logfol::Error> {
    let d: i64 = rng.gen_range(-8..=8);
    let c = h_p1(d);
    Ok(c.h0 as i64 == (d + 1).max(0) && c.h1 as i64 == (-d - 1).max(0))
}
