//! Spectral calculus and the basic algebra axioms.

use rand::Rng;

use super::{trials, Checks, SuiteConfig};
use crate::element::Element;
use crate::error::Result;
use crate::model::Model;
use crate::projection::Projection;
use crate::random::{self, SeededRng};
use crate::report::Report;

const LAMBDAS: usize = 20;

pub(super) fn run(cfg: &SuiteConfig) -> Report {
    trials(cfg, "synalg", |m, rng, c, _| trial(m, rng, c))
}

/// How far `a` is from positive.
pub(crate) fn psd_deficiency(m: &Model, a: &Element) -> Result<f64> {
    Ok((-m.eig(a)?.min()).max(0.0))
}

/// `p x p` for a random projection `p`: a typical element with a kernel.
fn compressed(m: &Model, rng: &mut SeededRng) -> Result<Element> {
    let p = random::projection(rng, m.shape())?;
    let x = random::symmetric(rng, m.shape());
    Ok(p.quad_unchecked(&x))
}

fn trial(m: &Model, rng: &mut SeededRng, c: &mut Checks<'_>) -> Result<()> {
    let tol = *m.tol();
    let a = random::symmetric(rng, m.shape());
    let one = m.one();

    let sg = m.signum(&a)?;
    let ab = m.abs(&a)?;
    c.record("polar", (sg.element() * &ab).dist(&a.to_enveloping()), tol.proj);

    let (pos, neg) = (m.pos_part(&a)?, m.neg_part(&a)?);
    let parts = (&pos - &neg).dist(&a).max((&pos + &neg).dist(&ab)).max((&pos * &neg).frobenius());
    c.record("positive_negative_parts", parts, tol.proj);
    c.record("abs_squared", ab.square().dist(&a.square()), tol.proj);
    let sq = a.square();
    c.record("square_root", m.sqrt_pos(&sq)?.square().dist(&sq), tol.proj);
    c.flag_result("commutes_with_abs", m.commutes(&a, &ab));
    c.flag_result("commutes_with_signum", m.commutes(&a, sg.element()));

    let res = m.spectral_resolution(&a)?;
    c.record("spectral_reconstruction", res.reconstruct().dist(&a), tol.proj);
    let (lo, hi) = (res.lower - 0.5, res.upper + 0.5);
    let mut lambdas: Vec<f64> = (0..LAMBDAS).map(|_| rng.random_range(lo..hi)).collect();
    lambdas.sort_by(f64::total_cmp);
    let mut prev: Option<Projection> = None;
    let mut monotone = true;
    for &l in &lambdas {
        let p = res.at(l);
        c.record("resolution_formula", p.dist(&m.resolution_by_definition(&a, l)?), tol.proj);
        if let Some(q) = &prev {
            monotone &= m.below(q, &p);
        }
        prev = Some(p);
    }
    c.flag("resolution_monotone", monotone);
    let bounds = m.is_zero(&res.at(res.lower - 1e-3)) && m.same(&res.at(res.upper), &m.one_projection());
    c.flag("resolution_bounds", bounds);

    // norm: -‖a‖ <= a <= ‖a‖ and ‖s‖ = 1 for a symmetry
    let n = m.order_unit_norm(&a)?;
    c.flag_result("norm_bounds", Ok(m.leq(&a, &m.scalar(n))? && m.leq(&m.scalar(-n), &a)?));
    let s = random::symmetry(rng, m.shape())?;
    c.record("symmetry_norm", (m.order_unit_norm(&s)? - 1.0).abs(), tol.proj);

    // positivity axioms
    c.record("square_positive", psd_deficiency(m, &a.square())?, tol.psd);
    let b = random::positive(rng, m.shape());
    c.record("compression_positive", psd_deficiency(m, &a.quad_unchecked(&b))?, tol.psd);
    let y = random::symmetric(rng, m.shape());
    let sum = &a.square() + &y.square();
    c.record("sum_of_squares_positive", psd_deficiency(m, &sum)?, tol.psd);

    // aba = 0 forces ab = 0
    let k = compressed(m, rng)?;
    let kc = m.carrier(&k)?.ortho();
    let z = kc.quad_unchecked(&y.square());
    if k.quad_unchecked(&z).frobenius() <= tol.proj {
        c.record("annihilator", (&k * &z).frobenius(), tol.proj);
    }

    carrier_checks(m, rng, c, &k)?;

    let inv_in = &y.square() + &one;
    c.record("inverse", (&inv_in * &m.inverse(&inv_in)?).dist(&one.to_enveloping()), tol.proj);
    Ok(())
}

fn carrier_checks(m: &Model, rng: &mut SeededRng, c: &mut Checks<'_>, a: &Element) -> Result<()> {
    let tol = *m.tol();
    let car = m.carrier(a)?;
    c.record("carrier_annihilates", (a * car.element()).dist(&a.to_enveloping()), tol.proj);

    // minimality: every eigenprojection q with aq = a dominates a°
    let d = m.eig(a)?;
    let k = d.pairs.len();
    let masks: Vec<u64> = if k <= 8 { (0..1u64 << k).collect() } else { (0..64).map(|_| rng.random()).collect() };
    let slack = tol.proj * (1.0 + a.frobenius());
    for mask in masks {
        let q = d.sum_where(|i, _| if mask >> (i % 64) & 1 == 1 { 1.0 } else { 0.0 });
        if (a * &q).dist(&a.to_enveloping()) <= slack {
            c.record("carrier_minimal", (car.element() * &q).dist(&car.to_enveloping()), tol.proj);
        }
    }

    // the carrier of a sum of positives is the join of the carriers
    let parts: Vec<Element> = (0..3)
        .map(|_| {
            let p = random::projection_with_rank(rng, m.shape(), 1)?;
            Ok(p.quad_unchecked(&random::positive(rng, m.shape())))
        })
        .collect::<Result<_>>()?;
    let sum = parts.iter().fold(m.zero(), |acc, x| acc + x);
    let carriers: Vec<Projection> = parts.iter().map(|x| m.carrier(x)).collect::<Result<_>>()?;
    c.record("carrier_of_sum", m.carrier(&sum)?.dist(&m.join_all(&carriers)?), tol.proj);
    Ok(())
}
