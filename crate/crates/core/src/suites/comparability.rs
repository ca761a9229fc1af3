//! Equivalence chains, relatedness, invariant projections and generalized
//! comparability.

use rand::Rng;

use super::{trials, Checks, SuiteConfig};
use crate::comparability::SymmetryChain;
use crate::error::{Error, Result};
use crate::lattice::CentralProjection;
use crate::model::Model;
use crate::projection::Projection;
use crate::random::{self, SeededRng};
use crate::report::Report;
use crate::shape::ModelShape;
use crate::EquivalenceWitness;

const SEARCH_BUDGET: usize = 100;

pub(super) fn run(cfg: &SuiteConfig) -> Report {
    let small = Model::with_tolerances(ModelShape::new(&[2, 2]).expect("valid shape"), cfg.tol);
    trials(cfg, "comparability", |m, rng, c, _| {
        chains(m, rng, c)?;
        relatedness(m, rng, c)?;
        comparability(m, rng, c)?;
        relative_center(m, rng, c)?;
        invariant_trial(m, rng, c)?;
        cover_trial(&small, rng, c)
    })
}

/// Invariant (unrelated to its complement) versus central projections,
/// on `R^2 ⊕ R^2` and on the irreducible `R^2`.
pub fn invariant_is_central_suite(seed: u64) -> Report {
    let cfg = SuiteConfig { seed, trials: 50, shape: ModelShape::new(&[2, 2]).expect("valid shape"), ..SuiteConfig::default() };
    let one_block = Model::with_tolerances(ModelShape::square(2).expect("valid shape"), cfg.tol);
    trials(&cfg, "invariant", |m, rng, c, _| {
        invariant_trial(m, rng, c)?;
        invariant_trial(&one_block, rng, c)
    })
}

fn random_chain(m: &Model, rng: &mut SeededRng, len: usize) -> Result<SymmetryChain> {
    let syms = (0..len).map(|_| random::symmetry(rng, m.shape())).collect::<Result<_>>()?;
    Ok(SymmetryChain::new(syms))
}

/// A random projection cut down to a random set of blocks.
fn restricted(m: &Model, rng: &mut SeededRng) -> Result<Projection> {
    let h = random::central(rng, m.shape());
    m.settle(h.quad_unchecked(random::projection(rng, m.shape())?.element()))
}

fn below_residual(p: &Projection, q: &Projection) -> f64 {
    (p.element() * q.element()).dist(&p.to_enveloping())
}

fn chains(m: &Model, rng: &mut SeededRng, c: &mut Checks<'_>) -> Result<()> {
    let tol = m.tol().proj;
    let e = random::projection(rng, m.shape())?;
    let f = random::projection_with_ranks(rng, m.shape(), &e.block_ranks())?;
    match m.equal_rank_chain(&e, &f) {
        Ok(w) => {
            c.record("equal_rank_chain", w.residual(), tol);
            c.flag("equal_rank_chain_length", w.chain.len() <= 2 * m.dim());
        }
        Err(err) => c.result("equal_rank_chain", Err(err), tol),
    }
    let g = random::projection(rng, m.shape())?;
    let mismatch = m.equal_rank_chain(&e, &g);
    c.flag("equal_rank_chain_rejects", e.block_ranks() == g.block_ranks() || matches!(mismatch, Err(Error::RankMismatch { .. })));

    let chain = random_chain(m, rng, 3)?;
    let a = random::symmetric(rng, m.shape());
    c.record("chain_isometry", (chain.apply(&a).frobenius() - a.frobenius()).abs(), tol);
    c.record("chain_inverse", chain.reversed().apply(&chain.apply(&a)).dist(&a), tol);

    // orthogonal pieces stay orthogonal and their sum is carried to the sum
    let d = m.eig(&random::symmetric(rng, m.shape()))?;
    let pieces: Vec<Projection> =
        (0..d.pairs.len()).filter(|_| rng.random_bool(0.5)).map(|i| m.settle(d.sum_where(|j, _| if i == j { 1.0 } else { 0.0 }))).collect::<Result<_>>()?;
    let sum = pieces.iter().fold(m.zero(), |acc, p| acc + p.element());
    let images: Vec<_> = pieces.iter().map(|p| chain.apply(p)).collect();
    let image_sum = images.iter().fold(m.zero(), |acc, x| acc + x);
    let mut cross = 0.0f64;
    for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            cross = cross.max((&images[i] * &images[j]).frobenius());
        }
    }
    c.record("chain_orthogonal_sums", chain.apply(&sum).dist(&image_sum).max(cross), tol);

    // a chain reduced to one exchanging symmetry on nonzero subprojections
    let p = random::projection(rng, m.shape())?;
    if !m.is_zero(&p) {
        let q = m.settle(chain.apply(&p))?;
        let w = EquivalenceWitness { p: p.clone(), q: q.clone(), chain };
        match m.key_subprojection_exchange(&w) {
            Ok(x) => {
                c.record("key_exchange", x.residual().max(below_residual(x.e(), &p)).max(below_residual(x.f(), &q)), tol);
                c.flag("key_exchange_nonzero", !m.is_zero(x.e()));
            }
            Err(err) => c.result("key_exchange", Err(err), tol),
        }
    }
    Ok(())
}

fn relatedness(m: &Model, rng: &mut SeededRng, c: &mut Checks<'_>) -> Result<()> {
    let e = restricted(m, rng)?;
    let f = restricted(m, rng)?;
    let related = m.related(&e, &f);
    let (ge, gf) = (m.projection_cover(&e), m.projection_cover(&f));
    c.flag("related_cover_criterion", related != m.orthogonal(&e, gf.projection()) && related != ge.is_orthogonal(&gf));
    let found = m.related_by_search(&e, &f, rng, 20)?;
    c.flag("related_search_agrees", related == found.is_some());
    if let Some(w) = found {
        let ok = w.residual() <= m.tol().proj && m.below(&w.p, &e) && m.below(&w.q, &f) && !m.is_zero(&w.p);
        c.flag("related_search_witness", ok);
    }

    // every central projection: related to p exactly when not orthogonal
    let p = random::projection(rng, m.shape())?;
    let all = CentralProjection::enumerate(m.shape());
    c.flag("central_relatedness", all.iter().all(|h| m.related(&p, h) != m.orthogonal(&p, h)));
    Ok(())
}

fn comparability(m: &Model, rng: &mut SeededRng, c: &mut Checks<'_>) -> Result<()> {
    let tol = *m.tol();
    let e = restricted(m, rng)?;
    let f = restricted(m, rng)?;
    match m.orthogonal_decomposition(&e, &f) {
        Ok(d) => {
            c.record("decomposition", d.residual(&e, &f), tol.proj);
            c.flag("decomposition_remainders_unrelated", !m.related(&d.e2, &d.f2));
        }
        Err(err) => c.result("decomposition", Err(err), tol.proj),
    }
    let e = random::projection(rng, m.shape())?;
    let f = random::projection(rng, m.shape())?;
    match m.generalized_comparability(&e, &f) {
        Ok(r) => {
            let (upper, lower) = r.residuals(m)?;
            c.record("comparability_upper", upper, tol.psd);
            c.record("comparability_lower", lower, tol.psd);
            c.flag("comparability_central", m.is_central(r.h.projection()));
            c.record("comparability_symmetry", r.s.square().dist(&m.one()), tol.proj);
            if m.shape().is_irreducible() {
                c.flag("comparability_irreducible", r.h.is_zero() || r.h.is_one());
            }
        }
        Err(err) => c.result("comparability_upper", Err(err), tol.psd),
    }
    Ok(())
}

fn relative_center(m: &Model, rng: &mut SeededRng, c: &mut Checks<'_>) -> Result<()> {
    let p = random::projection(rng, m.shape())?;
    let h = random::central(rng, m.shape());
    let d = m.settle(h.quad_unchecked(&p))?;
    let r = m.relative_center_witness(&p, &d).and_then(|cc| Ok(m.meet(cc.projection(), &p)?.dist(&d)));
    c.result("relative_center", r, m.tol().proj);
    let q = random::subprojection(rng, m, &p)?;
    if !m.is_central_in_interval(&p, &q)? {
        c.flag("relative_center_rejects", matches!(m.relative_center_witness(&p, &q), Err(Error::NotCentralInInterval)));
    }
    Ok(())
}

fn invariant_trial(m: &Model, rng: &mut SeededRng, c: &mut Checks<'_>) -> Result<()> {
    let tol = m.tol().proj;
    let h = random::central(rng, m.shape());
    c.flag("invariant_unrelated_to_complement", !m.related(&h, &h.complement()));
    c.flag_result("invariant_central_by_commutators", m.is_central_by_commutators(&h));

    // conjugates and chain images of subprojections of h stay below h
    let q = random::subprojection(rng, m, &h)?;
    let s = random::symmetry(rng, m.shape())?;
    c.record("invariant_conjugates_below", below_residual(&m.settle(s.apply(&q))?, &h), tol);
    let chain = random_chain(m, rng, 3)?;
    c.record("invariant_chain_images_below", below_residual(&m.settle(chain.apply(&q))?, &h), tol);

    // q ∧ h = 0 forces q ⊥ h
    for _ in 0..5 {
        let q = restricted(m, rng)?;
        if m.is_zero(&m.meet(&q, &h)?) {
            c.record("invariant_disjoint_orthogonal", (q.element() * h.element()).frobenius(), tol);
        }
    }

    // a non-central projection has a line meeting it trivially without
    // being orthogonal to it
    let g = random::projection(rng, m.shape())?;
    if !m.is_central(&g) {
        let mut found = false;
        for _ in 0..SEARCH_BUDGET {
            let q = random::projection_with_rank(rng, m.shape(), 1)?;
            if m.is_zero(&m.meet(&q, &g)?) && !m.orthogonal(&q, &g) {
                found = true;
                break;
            }
        }
        c.flag("noncentral_counterexample", found);
    }
    Ok(())
}

/// `γp` is reached from below by conjugates of subprojections of `p` and
/// never exceeded.
fn cover_trial(m: &Model, rng: &mut SeededRng, c: &mut Checks<'_>) -> Result<()> {
    let p = random::projection(rng, m.shape())?;
    let cs = m.cover_from_conjugates(&p, rng, 200)?;
    c.flag("cover_from_conjugates", cs.saturated(m));
    c.record("cover_from_conjugates_excess", cs.excess, m.tol().proj);
    Ok(())
}
