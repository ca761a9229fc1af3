//! Equivalence of projections through chains of symmetries, relatedness,
//! and generalized comparability.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::eigen::eig_sym;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::forge::ExchangeWitness;
use crate::lattice::CentralProjection;
use crate::model::Model;
use crate::projection::{Projection, Symmetry};

/// Symmetries `s1, ..., sn` acting by `a ↦ sn⋯s1 a s1⋯sn`.
#[derive(Debug, Clone, Default)]
pub struct SymmetryChain {
    syms: Vec<Symmetry>,
}

impl SymmetryChain {
    pub fn new(syms: Vec<Symmetry>) -> Self {
        Self { syms }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn push(&mut self, s: Symmetry) {
        self.syms.push(s);
    }

    pub fn syms(&self) -> &[Symmetry] {
        &self.syms
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    /// The chain undoing this one.
    pub fn reversed(&self) -> Self {
        Self { syms: self.syms.iter().rev().cloned().collect() }
    }

    /// The first `k` symmetries.
    pub fn prefix(&self, k: usize) -> Self {
        Self { syms: self.syms[..k].to_vec() }
    }

    pub fn apply(&self, a: &Element) -> Element {
        self.syms.iter().fold(a.clone(), |acc, s| s.apply(&acc))
    }

    pub fn apply_proj(&self, p: &Projection) -> Projection {
        self.syms.iter().fold(p.clone(), |acc, s| s.apply_proj(&acc))
    }
}

/// A chain carrying `p` onto `q`.
#[derive(Debug, Clone)]
pub struct EquivalenceWitness {
    pub p: Projection,
    pub q: Projection,
    pub chain: SymmetryChain,
}

impl EquivalenceWitness {
    /// `‖J(p) - q‖`.
    pub fn residual(&self) -> f64 {
        self.chain.apply(&self.p).dist(&self.q)
    }
}

/// `s(eh)s <= fh` and `s(f(1-h))s <= e(1-h)` for a central `h`.
#[derive(Debug, Clone)]
pub struct ComparabilityResult {
    pub h: CentralProjection,
    pub s: Symmetry,
    pub e: Projection,
    pub f: Projection,
}

/// `e = e1 + e2`, `f = f1 + f2` with `s e1 s = f1` and `γe2 ⊥ γf2`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub e1: Projection,
    pub e2: Projection,
    pub f1: Projection,
    pub f2: Projection,
    pub s: Symmetry,
}

impl Decomposition {
    /// Worst residual among the sums `e = e1 + e2`, `f = f1 + f2`, the
    /// orthogonality of the parts and the exchange `s e1 s = f1`.
    pub fn residual(&self, e: &Projection, f: &Projection) -> f64 {
        let sums = (self.e1.element() + self.e2.element()).dist(e).max((self.f1.element() + self.f2.element()).dist(f));
        let orth = (self.e1.element() * self.e2.element()).frobenius().max((self.f1.element() * self.f2.element()).frobenius());
        sums.max(orth).max(self.s.apply(&self.e1).dist(&self.f1))
    }
}

/// The amount by which `b - a` fails to be positive.
fn psd_deficiency(model: &Model, a: &Element, b: &Element) -> Result<f64> {
    Ok((-model.eig(&(b - a))?.min()).max(0.0))
}

/// The join of sampled conjugates `sqs` of subprojections `q <= p`,
/// compared with `γp`.
#[derive(Debug, Clone)]
pub struct CoverSamples {
    pub gamma: CentralProjection,
    pub join: Projection,
    /// Conjugates drawn before the join reached `γp` (or the budget ran out).
    pub samples: usize,
    /// Worst amount by which a conjugate sticks out of `γp`.
    pub excess: f64,
}

impl CoverSamples {
    pub fn saturated(&self, model: &Model) -> bool {
        model.same(&self.join, self.gamma.projection())
    }
}

impl ComparabilityResult {
    /// Deficiencies of the two inequalities, in order.
    pub fn residuals(&self, model: &Model) -> Result<(f64, f64)> {
        let h = self.h.element();
        let hc = self.h.complement();
        let eh = self.e.quad_unchecked(h);
        let fh = self.f.quad_unchecked(h);
        let fc = self.f.quad_unchecked(hc.element());
        let ec = self.e.quad_unchecked(hc.element());
        Ok((
            psd_deficiency(model, &self.s.apply(&eh), &fh)?,
            psd_deficiency(model, &self.s.apply(&fc), &ec)?,
        ))
    }
}

impl Model {
    pub fn apply_chain(&self, c: &SymmetryChain, a: &Element) -> Result<Element> {
        self.check(a)?;
        for s in c.syms() {
            self.check(s)?;
        }
        Ok(c.apply(a))
    }

    pub fn equivalent_check(&self, w: &EquivalenceWitness) -> Result<bool> {
        self.check(&w.p)?;
        self.check(&w.q)?;
        Ok(w.residual() <= self.tol().proj)
    }

    /// Some block carries both `e` and `f`.
    pub fn related(&self, e: &Projection, f: &Projection) -> bool {
        !self.projection_cover(e).is_orthogonal(&self.projection_cover(f))
    }

    /// Relatedness by search: conjugates `e` by random reflections until
    /// the image is not orthogonal to `f`, then Sasaki-exchanges. Returns
    /// nonzero `e1 <= e`, `f1 <= f` with the chain `(r, s)` carrying
    /// `e1` onto `f1`.
    pub fn related_by_search<R: Rng>(
        &self,
        e: &Projection,
        f: &Projection,
        rng: &mut R,
        tries: usize,
    ) -> Result<Option<EquivalenceWitness>> {
        if self.is_zero(e) || self.is_zero(f) {
            return Ok(None);
        }
        for attempt in 0..=tries {
            let r = if attempt == 0 { Symmetry::identity(self.shape()) } else { crate::random::reflection(rng, self.shape()) };
            let image = r.apply_proj(e);
            if let Some(w) = self.related_witness(&image, f)? {
                if self.is_zero(w.e()) {
                    continue;
                }
                let e1 = r.apply_proj(w.e());
                return Ok(Some(EquivalenceWitness {
                    p: e1,
                    q: w.f().clone(),
                    chain: SymmetryChain::new(vec![r, w.s().clone()]),
                }));
            }
        }
        Ok(None)
    }

    /// For `p ∼ q` by a chain: nonzero `p1 <= p`, `q1 <= q` exchanged by a
    /// single symmetry.
    ///
    /// Induction on the chain length. With `r = sn q sn` the shorter chain
    /// gives `p1 <= p`, `r1 <= r` exchanged by `t`; then `k = sn r1 sn <= q`
    /// is reached from `p1` by `(t, sn)`. If `p1` and `k` are not orthogonal
    /// their Sasaki projections are exchanged, otherwise `(t, sn)` collapses
    /// to one symmetry.
    pub fn key_subprojection_exchange(&self, w: &EquivalenceWitness) -> Result<ExchangeWitness> {
        if self.is_zero(&w.p) {
            return Err(Error::ZeroInput);
        }
        if !self.equivalent_check(w)? {
            return Err(Error::Precondition(format!("chain does not carry p onto q (residual {:.3e})", w.residual())));
        }
        self.key_exchange_rec(&w.p, &w.q, w.chain.syms())
    }

    fn key_exchange_rec(&self, p: &Projection, q: &Projection, syms: &[Symmetry]) -> Result<ExchangeWitness> {
        match syms {
            [] => Ok(ExchangeWitness::trivial(p.clone())),
            [s] => ExchangeWitness::new(s.clone(), p.clone(), q.clone(), self),
            [rest @ .., sn] => {
                let r = self.settle(sn.apply(q))?;
                let inner = self.key_exchange_rec(p, &r, rest)?;
                let p1 = inner.e().clone();
                let k = self.settle(sn.apply(inner.f()))?;
                if self.orthogonal(&p1, &k) {
                    let s = self.orthogonal_chain_to_symmetry(&p1, &k, inner.s(), sn)?;
                    ExchangeWitness::new(s, p1, k, self)
                } else {
                    let w = self.sasaki_exchange(&p1, &k)?;
                    if self.is_zero(w.e()) {
                        return Err(Error::Precondition("Sasaki exchange degenerated to zero".into()));
                    }
                    Ok(w)
                }
            }
        }
    }

    /// A chain of block-combined Householder reflections carrying `e`
    /// onto `f`, when every block rank agrees.
    ///
    /// Step `i` reflects the current image of the `i`-th basis vector of
    /// `e` onto its normalized projection into the part of `f` not yet
    /// matched; earlier matches are fixed because both vectors are
    /// orthogonal to them.
    pub fn equal_rank_chain(&self, e: &Projection, f: &Projection) -> Result<EquivalenceWitness> {
        self.check(e)?;
        self.check(f)?;
        let shape = self.shape();
        let (re, rf) = (e.block_ranks(), f.block_ranks());
        for b in 0..shape.num_blocks() {
            if re[b] != rf[b] {
                return Err(Error::RankMismatch { block: b, left: re[b], right: rf[b] });
            }
        }
        let n = shape.dim();
        let de = eig_sym(e)?;
        let df = eig_sym(f)?;
        // per block: current images of e's basis, and unmatched part of f
        let mut xs: Vec<Vec<DVector<f64>>> = vec![Vec::new(); shape.num_blocks()];
        for pair in de.pairs.iter().filter(|p| p.value > 0.5) {
            xs[pair.block].push(pair.vector.clone());
        }
        let mut rem: Vec<DMatrix<f64>> = vec![DMatrix::zeros(n, n); shape.num_blocks()];
        for pair in df.pairs.iter().filter(|p| p.value > 0.5) {
            rem[pair.block] += &pair.vector * pair.vector.transpose();
        }
        let mut chain = SymmetryChain::empty();
        let steps = re.iter().copied().max().unwrap_or(0);
        for i in 0..steps {
            let mut reflection = DMatrix::identity(n, n);
            let mut moved = false;
            for b in 0..shape.num_blocks() {
                if i >= xs[b].len() {
                    continue;
                }
                let x = xs[b][i].clone();
                let mut w = &rem[b] * &x;
                if w.norm() < 1e-8 {
                    let d = eig_sym(&Element::from_raw(shape.clone(), rem[b].clone()))?;
                    w = d.pairs.last().expect("nonempty").vector.clone();
                }
                w /= w.norm();
                rem[b] -= &w * w.transpose();
                let diff = &x - &w;
                if diff.norm() < 1e-14 {
                    continue;
                }
                let v = &diff / diff.norm();
                reflection -= &v * v.transpose() * 2.0;
                for y in xs[b].iter_mut().skip(i + 1) {
                    let c = v.dot(y);
                    *y -= &v * (2.0 * c);
                }
                moved = true;
            }
            if moved {
                chain.push(Symmetry::from_element_unchecked(Element::from_raw(shape.clone(), reflection)));
            }
        }
        let w = EquivalenceWitness { p: e.clone(), q: f.clone(), chain };
        if !self.equivalent_check(&w)? {
            return Err(Error::Precondition(format!("Householder chain residual {:.3e}", w.residual())));
        }
        Ok(w)
    }

    /// The top `counts[b]` eigenvectors of `p` in every block, as a
    /// subprojection.
    fn leading_part(&self, p: &Projection, counts: &[usize]) -> Result<Projection> {
        let d = eig_sym(p)?;
        let mut left = counts.to_vec();
        let mut keep = vec![false; d.pairs.len()];
        for i in (0..d.pairs.len()).rev() {
            let b = d.pairs[i].block;
            if d.pairs[i].value > 0.5 && left[b] > 0 {
                keep[i] = true;
                left[b] -= 1;
            }
        }
        self.settle(d.sum_where(|i, _| if keep[i] { 1.0 } else { 0.0 }))
    }

    /// For orthogonal `e`, `f`: exchanged pairs are split off while the
    /// remainders are related; what is left has orthogonal central covers.
    ///
    /// Each step takes equal-rank subprojections of the remainders in the
    /// blocks they share, builds a Householder chain between them, and
    /// reduces it to one exchanging symmetry. Ranks strictly drop, so the
    /// loop ends after at most `n` steps.
    fn orthogonal_pairs(&self, e: &Projection, f: &Projection) -> Result<(Vec<ExchangeWitness>, Projection, Projection)> {
        let mut er = e.clone();
        let mut fr = f.clone();
        let mut pairs = Vec::new();
        while self.related(&er, &fr) {
            let counts: Vec<usize> = er.block_ranks().iter().zip(fr.block_ranks()).map(|(a, b)| (*a).min(b)).collect();
            let es = self.leading_part(&er, &counts)?;
            let fs = self.leading_part(&fr, &counts)?;
            let chain = self.equal_rank_chain(&es, &fs)?;
            let w = self.key_subprojection_exchange(&chain)?;
            er = self.settle(er.element() - w.e().element())?;
            fr = self.settle(fr.element() - w.f().element())?;
            pairs.push(w);
        }
        Ok((pairs, er, fr))
    }

    /// Splits `e` and `f` into exchanged parts `e1`, `f1` and remainders
    /// with orthogonal central covers.
    ///
    /// `φ_e(f)` and `φ_f(e)` are exchanged directly; the rest
    /// `e∧f^⊥`, `f∧e^⊥` is orthogonal and handled by the greedy loop.
    pub fn orthogonal_decomposition(&self, e: &Projection, f: &Projection) -> Result<Decomposition> {
        self.check(e)?;
        self.check(f)?;
        let top = self.sasaki_exchange(e, f)?;
        let e12 = self.settle(e.element() - top.e().element())?;
        let f12 = self.settle(f.element() - top.f().element())?;
        let (pairs, e2, f2) = self.orthogonal_pairs(&e12, &f12)?;
        let rest = if pairs.is_empty() {
            ExchangeWitness::trivial(self.zero_projection())
        } else {
            let fam = self.family_additivity_detailed(&pairs)?;
            let e1 = self.settle(pairs.iter().fold(self.zero(), |acc, w| acc + w.e().element()))?;
            let f1 = self.settle(pairs.iter().fold(self.zero(), |acc, w| acc + w.f().element()))?;
            ExchangeWitness::new(fam.symmetry, e1, f1, self)?
        };
        let s = self.finite_additivity(&top, &rest)?;
        let e1 = self.settle(top.e().element() + rest.e().element())?;
        let f1 = self.settle(top.f().element() + rest.f().element())?;
        Ok(Decomposition { e1, e2, f1, f2, s })
    }

    /// A central `h` and a symmetry `s` with `s(eh)s <= fh` and
    /// `s(f(1-h))s <= e(1-h)`.
    ///
    /// From the decomposition `e = e1 + e2`, `f = f1 + f2`: take
    /// `h = 1 - γe2`. Then `eh = e1h`, and `f(1-h) = f1(1-h)` because
    /// `γf2 ⊥ γe2`; the exchanging symmetry commutes with `h`.
    pub fn generalized_comparability(&self, e: &Projection, f: &Projection) -> Result<ComparabilityResult> {
        let d = self.orthogonal_decomposition(e, f)?;
        let h = self.projection_cover(&d.e2).complement();
        Ok(ComparabilityResult { h, s: d.s, e: e.clone(), f: f.clone() })
    }

    /// Builds `γp` from below as a join of conjugates `sqs`, `q` a random
    /// rank-one subprojection of `p` and `s` a random reflection or
    /// symmetry, stopping once the join reaches `γp`.
    pub fn cover_from_conjugates<R: Rng>(&self, p: &Projection, rng: &mut R, budget: usize) -> Result<CoverSamples> {
        self.check(p)?;
        let gamma = self.projection_cover(p);
        let mut join = self.zero_projection();
        let mut excess = 0.0f64;
        let mut samples = 0;
        while samples < budget && !self.same(&join, gamma.projection()) {
            let Some(q) = crate::random::rank_one_below(rng, self, p)? else { break };
            let s = if samples % 2 == 0 {
                crate::random::reflection(rng, self.shape())
            } else {
                crate::random::symmetry(rng, self.shape())?
            };
            let c = self.settle(s.apply(&q))?;
            excess = excess.max((c.to_enveloping() - c.element() * gamma.element()).frobenius());
            join = self.join(&join, &c)?;
            samples += 1;
        }
        Ok(CoverSamples { gamma, join, samples, excess })
    }

    /// `d` commutes with every compression `pxp` of the spanning set.
    pub fn is_central_in_interval(&self, p: &Projection, d: &Projection) -> Result<bool> {
        for x in self.symmetric_basis() {
            let pxp = p.quad_unchecked(&x);
            if !self.commutes(d, &pxp)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For `d <= p` central in `pAp`: a central `c` with `c ∧ p = d`.
    ///
    /// `d` and `p - d` are compared; `c = 1 - h`.
    pub fn relative_center_witness(&self, p: &Projection, d: &Projection) -> Result<CentralProjection> {
        if !self.below(d, p) {
            return Err(Error::NotBelow);
        }
        if !self.is_central_in_interval(p, d)? {
            return Err(Error::NotCentralInInterval);
        }
        let rest = self.settle(p.element() - d.element())?;
        let cmp = self.generalized_comparability(d, &rest)?;
        let c = cmp.h.complement();
        let m = self.meet(c.projection(), p)?;
        let residual = m.dist(d);
        if residual > self.tol().proj {
            return Err(Error::Precondition(format!("c ∧ p differs from d by {residual:.3e}")));
        }
        Ok(c)
    }
}
