//! The projection lattice: orthomodularity, Sasaki maps, intervals and
//! central covers.

use rand::Rng;

use super::{trials, Checks, SuiteConfig};
use crate::element::Element;
use crate::error::Result;
use crate::lattice::CentralProjection;
use crate::model::Model;
use crate::projection::Projection;
use crate::random::{self, SeededRng};
use crate::report::Report;
use crate::shape::ModelShape;

pub(super) fn run(cfg: &SuiteConfig) -> Report {
    trials(cfg, "lattice", |m, rng, c, t| {
        lattice_trial(m, rng, c)?;
        gamma_trial(m, rng, c)?;
        if t == 0 {
            exhaustive_two_atoms(c)?;
            commutative_distributive(c)?;
        }
        Ok(())
    })
}

/// The central cover properties alone, on a model with three blocks.
pub fn gamma_props_suite(seed: u64) -> Report {
    let cfg = SuiteConfig { seed, trials: 50, shape: ModelShape::new(&[2, 2, 1]).expect("valid shape"), ..SuiteConfig::default() };
    trials(&cfg, "gamma", |m, rng, c, t| {
        gamma_trial(m, rng, c)?;
        if t == 0 {
            exhaustive_two_atoms(c)?;
        }
        Ok(())
    })
}

/// `p ∧ q` as the eigenvalue-one eigenspace of `(p + q)/2`, independent of
/// the carrier formula.
fn meet_by_eigenspace(m: &Model, p: &Projection, q: &Projection) -> Result<Element> {
    let d = m.eig(&(p.element() + q.element()).scale(0.5))?;
    Ok(d.apply(|x| if x > 1.0 - 1e-6 { 1.0 } else { 0.0 }))
}

/// Two projections built over a common eigenbasis, hence commuting.
fn commuting_pair(m: &Model, rng: &mut SeededRng) -> Result<(Projection, Projection)> {
    let d = m.eig(&random::symmetric(rng, m.shape()))?;
    let k = d.pairs.len();
    let a: Vec<bool> = (0..k).map(|_| rng.random_bool(0.5)).collect();
    let b: Vec<bool> = (0..k).map(|_| rng.random_bool(0.5)).collect();
    let p = m.settle(d.sum_where(|i, _| if a[i] { 1.0 } else { 0.0 }))?;
    let q = m.settle(d.sum_where(|i, _| if b[i] { 1.0 } else { 0.0 }))?;
    Ok((p, q))
}

/// `c + (random subprojection of c^⊥)` twice: a pair whose meet contains `c`.
fn overlapping_pair(m: &Model, rng: &mut SeededRng) -> Result<(Projection, Projection, Projection)> {
    let common = random::projection_with_rank(rng, m.shape(), 1)?;
    let rest = common.ortho();
    let p = m.settle(common.element() + random::subprojection(rng, m, &rest)?.element())?;
    let q = m.settle(common.element() + random::subprojection(rng, m, &rest)?.element())?;
    Ok((p, q, common))
}

fn below_residual(p: &Projection, q: &Projection) -> f64 {
    (p.element() * q.element()).dist(&p.to_enveloping())
}

fn lattice_trial(m: &Model, rng: &mut SeededRng, c: &mut Checks<'_>) -> Result<()> {
    let tol = m.tol().proj;
    let p = random::projection(rng, m.shape())?;
    let q = random::projection(rng, m.shape())?;

    let r = random::subprojection(rng, m, &p)?;
    c.record("orthomodular", p.dist(&m.join(&r, &m.meet(&p, &r.ortho())?)?), tol);
    let (join, meet) = (m.join(&p, &q)?, m.meet(&p, &q)?);
    c.record("meet_as_eigenspace", meet.dist(&meet_by_eigenspace(m, &p, &q)?), tol);
    c.record("de_morgan", join.ortho().dist(&meet_by_eigenspace(m, &p.ortho(), &q.ortho())?), tol);
    c.record("bounds", below_residual(&p, &join).max(below_residual(&q, &join)).max(below_residual(&meet, &p)).max(below_residual(&meet, &q)), tol);
    let (p2, q2, common) = overlapping_pair(m, rng)?;
    c.record("meet_contains_common", below_residual(&common, &m.meet(&p2, &q2)?), tol);
    c.record("absorption", p.dist(&m.join(&p, &meet)?).max(p.dist(&m.meet(&p, &join)?)), tol);

    // Sasaki maps
    let phi = m.sasaki(&p, &q)?;
    c.record("sasaki_lattice_form", phi.dist(&m.sasaki_lattice(&p, &q)?), tol);
    let r = random::subprojection(rng, m, &phi.ortho())?;
    c.record("sasaki_orthogonality", (q.element() * m.sasaki(&p, &r)?.element()).frobenius(), tol);
    let q_low = random::subprojection(rng, m, &q)?;
    c.record("sasaki_monotone", below_residual(&m.sasaki(&p, &q_low)?, &phi), tol);
    c.record("sasaki_idempotent", m.sasaki(&p, &phi)?.dist(&phi), tol);
    let (pc, qc) = commuting_pair(m, rng)?;
    let phic = m.sasaki(&pc, &qc)?;
    c.record("sasaki_compatible", phic.dist(&m.meet(&pc, &qc)?).max(below_residual(&phic, &qc)), tol);
    let compat = m.compatible(&p, &q)?;
    c.flag("sasaki_compatible_iff", compat == m.same(&phi, &meet) && compat == m.below(&phi, &q));
    let q_orth = random::subprojection(rng, m, &p.ortho())?;
    c.record("sasaki_orthogonal", m.sasaki(&p, &q_orth)?.frobenius(), tol);
    c.flag("sasaki_orthogonal_iff", m.orthogonal(&p, &q) == m.is_zero(&phi));
    let r = random::projection(rng, m.shape())?;
    let lhs = m.sasaki(&p, &m.join(&q, &r)?)?;
    c.record("sasaki_preserves_joins", lhs.dist(&m.join(&phi, &m.sasaki(&p, &r)?)?), tol);

    // intervals
    if !m.is_zero(&p) {
        let iv = m.interval(&p)?;
        let q = random::subprojection(rng, m, &p)?;
        let r = random::subprojection(rng, m, &p)?;
        c.record("interval_sasaki", iv.sasaki(&q, &r)?.dist(&m.sasaki(&q, &r)?), tol);
        let rp = iv.ortho(&r)?;
        c.record("interval_sasaki_complement", iv.sasaki(&q, &rp)?.dist(&m.sasaki(&q, &r.ortho())?), tol);
        c.record("interval_ortho", rp.dist(&m.meet(&r.ortho(), &p)?), tol);
        c.record("interval_join", iv.join(&q, &r)?.dist(&m.join(&q, &r)?), tol);
    }

    // center
    let (c1, c2) = (random::central(rng, m.shape()), random::central(rng, m.shape()));
    let center = m.join(&c1, &c2)?.dist(c1.join(&c2).projection()).max(m.meet(&c1, &c2)?.dist(c1.meet(&c2).projection()));
    c.record("center_closed", center, tol);
    c.flag_result("central_by_commutators", Ok(m.is_central_by_commutators(&c1)? && m.is_central(&c1)));
    c.flag_result("central_tests_agree", Ok(m.is_central_by_commutators(&p)? == m.is_central(&p)));

    // centrally orthogonal families add
    let mut family = Vec::new();
    for b in 0..m.shape().num_blocks() {
        if rng.random_bool(0.7) {
            let atom = CentralProjection::atom(m.shape(), b);
            family.push(m.settle(atom.quad_unchecked(random::projection(rng, m.shape())?.element()))?);
        }
    }
    c.record("central_orthogonal_join", m.co_join(&family)?.dist(&m.join_all(&family)?), tol);
    Ok(())
}

/// `p` cut down to a random set of blocks.
fn restricted(m: &Model, rng: &mut SeededRng) -> Result<Projection> {
    let h = random::central(rng, m.shape());
    m.settle(h.quad_unchecked(random::projection(rng, m.shape())?.element()))
}

fn gamma_trial(m: &Model, rng: &mut SeededRng, c: &mut Checks<'_>) -> Result<()> {
    let p = restricted(m, rng)?;
    let q = restricted(m, rng)?;
    let r = restricted(m, rng)?;
    gamma_laws(m, c, &p, &q, &r);
    let sub = random::subprojection(rng, m, &p)?;
    let (gs, gp) = (m.projection_cover(&sub), m.projection_cover(&p));
    c.flag("gamma_monotone", gs.mask().iter().zip(gp.mask()).all(|(a, b)| !a || *b));
    let x = random::symmetric(rng, m.shape());
    let cover = m.central_cover(&x)?;
    c.flag("gamma_element_is_carrier_cover", cover == m.projection_cover(&m.carrier(&x)?));
    Ok(())
}

fn gamma_laws(m: &Model, c: &mut Checks<'_>, p: &Projection, q: &Projection, r: &Projection) {
    let g = |x: &Projection| m.projection_cover(x);
    let (gp, gq) = (g(p), g(q));
    c.flag("gamma_bounds", g(&m.one_projection()).is_one() && gp.is_zero() == m.is_zero(p) && below_residual(p, gp.projection()) <= m.tol().proj);
    c.flag("gamma_central", m.is_central(gp.projection()));
    c.flag("gamma_idempotent", g(gp.projection()) == gp);
    c.flag_result("gamma_meet", m.meet(p, gq.projection()).map(|x| g(&x) == gp.meet(&gq)));
    let a = m.orthogonal(gp.projection(), q);
    let b = gp.is_orthogonal(&gq);
    let cc = m.orthogonal(p, gq.projection());
    c.flag("gamma_orthogonality", a == b && b == cc && (!a || m.orthogonal(p, q)));
    let joined = m.join_all(&[p.clone(), q.clone(), r.clone()]).map(|x| g(&x) == gp.join(&gq).join(&g(r)));
    c.flag_result("gamma_join", joined);
}

/// Every pair and triple of the four projections of `R ⊕ R`.
fn exhaustive_two_atoms(c: &mut Checks<'_>) -> Result<()> {
    let m = Model::new(ModelShape::new(&[1, 1])?);
    let all: Vec<Projection> = CentralProjection::enumerate(m.shape()).iter().map(|h| h.projection().clone()).collect();
    for p in &all {
        for q in &all {
            for r in &all {
                gamma_laws(&m, c, p, q, r);
            }
        }
    }
    c.flag("gamma_exhaustive_size", all.len() == 4);
    Ok(())
}

/// In `R ⊕ R ⊕ R` every projection is central and the lattice is the
/// Boolean algebra of subsets: distributivity over all triples.
fn commutative_distributive(c: &mut Checks<'_>) -> Result<()> {
    let m = Model::new(ModelShape::new(&[1, 1, 1])?);
    let all: Vec<Projection> = CentralProjection::enumerate(m.shape()).iter().map(|h| h.projection().clone()).collect();
    let mut worst = 0.0f64;
    for p in &all {
        for q in &all {
            for r in &all {
                let lhs = m.meet(p, &m.join(q, r)?)?;
                let rhs = m.join(&m.meet(p, q)?, &m.meet(p, r)?)?;
                worst = worst.max(lhs.dist(&rhs));
            }
        }
    }
    c.record("commutative_distributive", worst, m.tol().proj);
    Ok(())
}
