//! Symmetry witnesses: exchanges, perspectivities and additivity.

use rand::Rng;

use super::{trials, Checks, SuiteConfig};
use crate::error::Result;
use crate::forge::ExchangeWitness;
use crate::model::Model;
use crate::projection::Projection;
use crate::random::{self, SeededRng};
use crate::report::Report;
use crate::shape::ModelShape;

pub(super) fn run(cfg: &SuiteConfig) -> Report {
    trials(cfg, "symmetry", |m, rng, c, _| {
        exchanges(m, rng, c)?;
        perspectivity(m, rng, c)?;
        complements(m, rng, c)?;
        additivity(m, rng, c)?;
        automorphisms(m, rng, c)
    })
}

fn exchanges(m: &Model, rng: &mut SeededRng, c: &mut Checks<'_>) -> Result<()> {
    let tol = m.tol().proj;
    let e = random::projection(rng, m.shape())?;
    let f = random::projection(rng, m.shape())?;
    let s = m.exchange_efe_fef(&e, &f)?;
    c.record("exchange_efe_fef", s.apply(&e.quad_unchecked(&f)).dist(&f.quad_unchecked(&e)), tol);
    c.record("symmetry_square", s.square().dist(&m.one()), tol);
    c.record("symmetry_norm", (m.order_unit_norm(&s)? - 1.0).abs(), tol);

    let w = m.sasaki_exchange(&e, &f);
    let sasaki = w.and_then(|w| Ok(w.residual().max(w.e().dist(&m.sasaki(&e, &f)?)).max(w.f().dist(&m.sasaki(&f, &e)?))));
    c.result("sasaki_exchange", sasaki, tol);

    // e - e∧f and e∨f - f
    let pw = m.parallelogram_exchange(&e, &f)?;
    let left = e.element() - m.meet(&e, &f)?.element();
    let right = m.join(&e, &f)?.element() - f.element();
    c.record("parallelogram", pw.residual().max(pw.e().dist(&left)).max(pw.f().dist(&right)), tol);

    c.flag_result("related_when_not_orthogonal", m.related_witness(&e, &f).map(|w| match w {
        Some(w) => !m.is_zero(w.e()) && !m.is_zero(w.f()),
        None => m.orthogonal(&e, &f),
    }));
    Ok(())
}

/// `(e, ses)`: strong perspectivity, its lift to the whole lattice and the
/// two-symmetry chain read off the lift.
fn perspectivity(m: &Model, rng: &mut SeededRng, c: &mut Checks<'_>) -> Result<()> {
    let tol = m.tol().proj;
    let e = random::projection(rng, m.shape())?;
    let s = random::symmetry(rng, m.shape())?;
    let f = m.settle(s.apply(&e))?;
    let w = ExchangeWitness::new(s, e.clone(), f.clone(), m)?;
    let pw = match m.strong_perspectivity(&w) {
        Ok(pw) => pw,
        Err(err) => {
            c.result("strong_perspectivity", Err(err), tol);
            return Ok(());
        }
    };
    c.result("strong_perspectivity", m.perspectivity_residuals(&pw).map(|r| r.max()), tol);
    let lifted = match m.lift_perspectivity(&pw) {
        Ok(l) => l,
        Err(err) => {
            c.result("perspectivity_lift", Err(err), tol);
            return Ok(());
        }
    };
    c.result("perspectivity_lift", m.perspectivity_residuals(&lifted).map(|r| r.max()), tol);
    let chain = m.perspective_to_chain(&lifted).map(|(s1, s2)| s2.apply(&s1.apply(&e)).dist(&f));
    c.result("perspective_chain", chain, tol);
    Ok(())
}

/// Complements are exchanged up to `⊥`; equal-rank complements that are
/// exchanged share the complement `(1 + s)/2`.
fn complements(m: &Model, rng: &mut SeededRng, c: &mut Checks<'_>) -> Result<()> {
    let tol = m.tol().proj;
    let shape = m.shape();
    let ranks: Vec<usize> = shape.blocks().iter().map(|&n| rng.random_range(0..=n)).collect();
    let dual: Vec<usize> = shape.blocks().iter().zip(&ranks).map(|(n, r)| n - r).collect();
    let e = random::projection_with_ranks(rng, shape, &ranks)?;
    let g = random::projection_with_ranks(rng, shape, &dual)?;
    let ex = m.complement_exchange(&e, &g).map(|s| s.apply(&e).dist(&g.ortho()));
    c.result("complement_exchange", ex, tol);

    // blocks rounded up to even size, so half-rank complements exist
    let even: Vec<usize> = shape.blocks().iter().map(|n| n + n % 2).collect();
    let me = Model::with_tolerances(ModelShape::new(&even)?, *m.tol());
    let half: Vec<usize> = even.iter().map(|n| n / 2).collect();
    let e = random::projection_with_ranks(rng, me.shape(), &half)?;
    let f = random::projection_with_ranks(rng, me.shape(), &half)?;
    let s = me.exchange_efe_fef(&e, &f)?;
    let common = ExchangeWitness::new(s, e, f, &me)
        .and_then(|w| me.common_complement_from_exchange(&w))
        .and_then(|pw| Ok(me.perspectivity_residuals(&pw)?.max()));
    c.result("common_complement", common, tol);
    Ok(())
}

fn additivity(m: &Model, rng: &mut SeededRng, c: &mut Checks<'_>) -> Result<()> {
    let tol = m.tol().proj;
    let k = rng.random_range(1..=3);
    let ws = random::exchanged_family(rng, m, k)?;
    if ws.len() >= 2 {
        let (w1, w2) = (&ws[0], &ws[1]);
        let e = m.settle(w1.e().element() + w2.e().element())?;
        let f = m.settle(w1.f().element() + w2.f().element())?;
        c.result("finite_additivity", m.finite_additivity(w1, w2).map(|s| s.apply(&e).dist(&f)), tol);
    }
    match m.family_additivity_detailed(&ws) {
        Ok(fx) => {
            let e = ws.iter().fold(m.zero(), |acc, w| acc + w.e().element());
            let f = ws.iter().fold(m.zero(), |acc, w| acc + w.f().element());
            c.record("family_additivity", fx.symmetry.apply(&e).dist(&f), tol);
            for (name, r) in &fx.identities {
                c.record(&format!("family_identity {name}"), *r, tol);
            }
        }
        Err(_) => c.flag("family_additivity", false),
    }

    // orthogonal e, f joined by a two-step chain collapse to one symmetry
    if let Some(w) = ws.first() {
        let (e, f) = (w.e(), w.f());
        let s1 = random::symmetry(rng, m.shape())?;
        let g = m.settle(s1.apply(e))?;
        let s2 = m.exchange_efe_fef(&g, f)?;
        // generic position makes s2 exchange g and f; skip the rare miss
        if ExchangeWitness::new(s2.clone(), g, f.clone(), m).is_ok() {
            let s = m.orthogonal_chain_to_symmetry(e, f, &s1, &s2).map(|s| s.apply(e).dist(f));
            c.result("orthogonal_chain", s, tol);
        }
    }
    Ok(())
}

/// `a ↦ sas` preserves the Jordan product, order, carriers and
/// commutation.
fn automorphisms(m: &Model, rng: &mut SeededRng, c: &mut Checks<'_>) -> Result<()> {
    let tol = *m.tol();
    let s = random::symmetry(rng, m.shape())?;
    let a = random::symmetric(rng, m.shape());
    let b = random::symmetric(rng, m.shape());
    let lhs = s.apply(&a.jordan(&b)?);
    let rhs = s.apply(&a).jordan(&s.apply(&b))?;
    c.record("conjugation_jordan", lhs.dist(&rhs), tol.proj);
    c.record("conjugation_involutive", s.apply(&s.apply(&a)).dist(&a), tol.proj);
    let above = &a + &random::positive(rng, m.shape());
    let gap = &s.apply(&above) - &s.apply(&a);
    c.record("conjugation_monotone", super::synalg::psd_deficiency(m, &gap)?, tol.psd);

    let p = random::projection(rng, m.shape())?;
    let low = p.quad_unchecked(&a);
    c.record("conjugation_carrier", m.carrier(&s.apply(&low))?.dist(&s.apply(m.carrier(&low)?.element())), tol.proj);

    // functions of one element commute, and keep commuting after conjugation
    let d = m.eig(&a)?;
    let (x, y) = (d.apply(|t| t * t - 1.0), d.apply(f64::sin));
    c.flag_result("conjugation_keeps_commuting", m.commutes(&s.apply(&x), &s.apply(&y)));
    c.flag_result("conjugation_commutation_iff", Ok(m.commutes(&a, &b)? == m.commutes(&s.apply(&a), &s.apply(&b))?));

    // e and f commute with |e - f|
    let e = random::projection(rng, m.shape())?;
    let f: Projection = random::projection(rng, m.shape())?;
    let diff = m.abs(&(e.element() - f.element()))?;
    c.record("difference_commutes", e.commutator_norm(&diff)?.max(f.commutator_norm(&diff)?), tol.proj);
    Ok(())
}
