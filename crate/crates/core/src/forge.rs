//! Explicit symmetries that exchange projections, and the perspectivity
//! witnesses built from them.
//!
//! Every builder returns the closed-form construction (canonical
//! extensions, `2p - 1`, `(x + y) + 1 - e - f`, ...) rather than the output
//! of a generic solver, and checks the contract of what it built.

use crate::element::{symmetrize_sum, Element};
use crate::error::{Error, Result};
use crate::model::Model;
use crate::projection::{PartialSymmetry, Projection, Symmetry};

/// A symmetry `s` with `ses = f` (hence `sfs = e`).
#[derive(Debug, Clone)]
pub struct ExchangeWitness {
    s: Symmetry,
    e: Projection,
    f: Projection,
}

impl ExchangeWitness {
    pub fn new(s: Symmetry, e: Projection, f: Projection, model: &Model) -> Result<Self> {
        let w = Self { s, e, f };
        let residual = w.residual();
        if residual > model.tol().proj {
            return Err(Error::Precondition(format!("symmetry does not exchange the pair (|ses - f| = {residual:.3e})")));
        }
        Ok(w)
    }

    /// The identity exchanging `e` with itself.
    pub fn trivial(e: Projection) -> Self {
        Self { s: Symmetry::identity(e.shape()), f: e.clone(), e }
    }

    pub fn s(&self) -> &Symmetry {
        &self.s
    }

    pub fn e(&self) -> &Projection {
        &self.e
    }

    pub fn f(&self) -> &Projection {
        &self.f
    }

    /// `‖ses - f‖`.
    pub fn residual(&self) -> f64 {
        self.s.apply(&self.e).dist(&self.f)
    }
}

/// A common complement of `e` and `f`, either in the whole lattice or in
/// the interval `[0, ambient]`.
#[derive(Debug, Clone)]
pub struct PerspectivityWitness {
    pub e: Projection,
    pub f: Projection,
    pub complement: Projection,
    pub ambient: Option<Projection>,
}

/// The four complement residuals of a perspectivity witness.
#[derive(Debug, Clone, Copy)]
pub struct ComplementResiduals {
    pub e_join: f64,
    pub f_join: f64,
    pub e_meet: f64,
    pub f_meet: f64,
}

impl ComplementResiduals {
    pub fn max(&self) -> f64 {
        self.e_join.max(self.f_join).max(self.e_meet).max(self.f_meet)
    }
}

/// The symmetry built from a family, with the residuals of the algebraic
/// identities checked along the way.
#[derive(Debug, Clone)]
pub struct FamilyExchange {
    pub symmetry: Symmetry,
    /// `p_i = (x_i + y_i + e_i + f_i)/2`.
    pub parts: Vec<Projection>,
    pub identities: Vec<(&'static str, f64)>,
}

impl Model {
    /// `s = 2p - 1`.
    pub fn sym_from_proj(&self, p: &Projection) -> Symmetry {
        Symmetry::from_projection(p)
    }

    /// `p = (1 + s)/2`.
    pub fn proj_from_sym(&self, s: &Symmetry) -> Projection {
        s.to_projection()
    }

    /// `s = t + (1 - t^2)`.
    pub fn canonical_extension(&self, t: &PartialSymmetry) -> Result<Symmetry> {
        self.check(t)?;
        let s = t.element() + &(self.one() - t.square());
        self.symmetry(s)
    }

    /// A symmetry with `s(efe)s = fef`: the canonical extension of
    /// `sgn(e + f - 1)`.
    pub fn exchange_efe_fef(&self, e: &Projection, f: &Projection) -> Result<Symmetry> {
        e.same_shape(f)?;
        let a = e.element() + f.element() - self.one();
        let t = self.signum_relative_to(&a, 1.0)?;
        self.canonical_extension(&t)
    }

    /// Exchanges `φ_e(f)` and `φ_f(e)` with the symmetry of
    /// [`exchange_efe_fef`](Self::exchange_efe_fef).
    pub fn sasaki_exchange(&self, e: &Projection, f: &Projection) -> Result<ExchangeWitness> {
        let s = self.exchange_efe_fef(e, f)?;
        let ef = self.sasaki(e, f)?;
        let fe = self.sasaki(f, e)?;
        ExchangeWitness::new(s, ef, fe, self)
    }

    /// Exchanges `e - e∧f` and `e∨f - f`, which are `φ_e(f^⊥)` and
    /// `φ_{f^⊥}(e)`.
    pub fn parallelogram_exchange(&self, e: &Projection, f: &Projection) -> Result<ExchangeWitness> {
        self.sasaki_exchange(e, &f.ortho())
    }

    /// For complements `e`, `f`: a symmetry with `ses = f^⊥`.
    pub fn complement_exchange(&self, e: &Projection, f: &Projection) -> Result<Symmetry> {
        self.require_complements(e, f)?;
        Ok(self.parallelogram_exchange(e, f)?.s)
    }

    pub(crate) fn require_complements(&self, e: &Projection, f: &Projection) -> Result<()> {
        let meet = self.meet(e, f)?.frobenius();
        let join = self.join(e, f)?.dist(&self.one());
        if meet > self.tol().proj || join > self.tol().proj {
            return Err(Error::NotComplements { meet, join });
        }
        Ok(())
    }

    /// Nonzero exchanged subprojections `φ_e(f) <= e`, `φ_f(e) <= f` when
    /// `e` and `f` are not orthogonal; `None` otherwise.
    pub fn related_witness(&self, e: &Projection, f: &Projection) -> Result<Option<ExchangeWitness>> {
        if self.orthogonal(e, f) {
            return Ok(None);
        }
        Ok(Some(self.sasaki_exchange(e, f)?))
    }

    /// For complements exchanged by `s`: the common complement `(1 + s)/2`.
    pub fn common_complement_from_exchange(&self, w: &ExchangeWitness) -> Result<PerspectivityWitness> {
        self.require_complements(&w.e, &w.f)?;
        let pw = PerspectivityWitness {
            e: w.e.clone(),
            f: w.f.clone(),
            complement: self.proj_from_sym(&w.s),
            ambient: None,
        };
        self.require_perspectivity(&pw)?;
        Ok(pw)
    }

    /// For `e`, `f` exchanged by `s`: a common complement of `e` and `f` in
    /// `[0, e∨f]`.
    ///
    /// With `p = e∨f`, `r = p - e∧f`, `t = rsr` and `q = (r + t)/2`, the
    /// projection `q` complements `e` and `f` in `[0, p]`. (Adjoining
    /// `r^⊥∧p = e∧f` to `q` would only complement `e∧r` and `f∧r`.)
    pub fn strong_perspectivity(&self, w: &ExchangeWitness) -> Result<PerspectivityWitness> {
        let (e, f) = (&w.e, &w.f);
        let p = self.join(e, f)?;
        let ef = self.meet(e, f)?;
        let r = self.settle(p.element() - ef.element())?;
        let t = r.quad(&w.s)?;
        let q = self.projection((r.element() + &t) * 0.5)?;
        let pw = PerspectivityWitness { e: e.clone(), f: f.clone(), complement: q, ambient: Some(p) };
        self.require_perspectivity(&pw)?;
        Ok(pw)
    }

    /// Lifts a common complement `k` in `[0, p]` to the common complement
    /// `k ∨ p^⊥` in the whole lattice.
    pub fn lift_perspectivity(&self, pw: &PerspectivityWitness) -> Result<PerspectivityWitness> {
        let complement = match &pw.ambient {
            Some(p) => self.join(&pw.complement, &p.ortho())?,
            None => pw.complement.clone(),
        };
        let lifted = PerspectivityWitness { e: pw.e.clone(), f: pw.f.clone(), complement, ambient: None };
        self.require_perspectivity(&lifted)?;
        Ok(lifted)
    }

    pub fn perspectivity_residuals(&self, pw: &PerspectivityWitness) -> Result<ComplementResiduals> {
        let top = pw.ambient.clone().unwrap_or_else(|| self.one_projection());
        let w = &pw.complement;
        Ok(ComplementResiduals {
            e_join: self.join(&pw.e, w)?.dist(&top),
            f_join: self.join(&pw.f, w)?.dist(&top),
            e_meet: self.meet(&pw.e, w)?.frobenius(),
            f_meet: self.meet(&pw.f, w)?.frobenius(),
        })
    }

    fn require_perspectivity(&self, pw: &PerspectivityWitness) -> Result<()> {
        let r = self.perspectivity_residuals(pw)?;
        if r.max() > self.tol().proj {
            return Err(Error::Precondition(format!("not a common complement (residual {:.3e})", r.max())));
        }
        Ok(())
    }

    /// For a common complement `w` of `e` and `f`: symmetries with
    /// `s1 e s1 = w^⊥ = s2 f s2`, so `s2 s1 e s1 s2 = f`.
    pub fn perspective_to_chain(&self, pw: &PerspectivityWitness) -> Result<(Symmetry, Symmetry)> {
        if let Some(top) = &pw.ambient {
            if !self.same(top, &self.one_projection()) {
                return Err(Error::Precondition("perspectivity must be in the whole lattice; lift it first".into()));
            }
        }
        self.require_perspectivity(pw)?;
        let s1 = self.complement_exchange(&pw.e, &pw.complement)?;
        let s2 = self.complement_exchange(&pw.f, &pw.complement)?;
        Ok((s1, s2))
    }

    /// For orthogonal `e`, `f` with `s2 s1 e s1 s2 = f`: the symmetry
    /// `(x + y) + 1 - e - f` where `x = s2 s1 e` and `y = e s1 s2`.
    pub fn orthogonal_chain_to_symmetry(
        &self,
        e: &Projection,
        f: &Projection,
        s1: &Symmetry,
        s2: &Symmetry,
    ) -> Result<Symmetry> {
        if !self.orthogonal(e, f) {
            return Err(Error::Precondition("e and f must be orthogonal".into()));
        }
        let image = s2.apply(&s1.apply(e));
        let residual = image.dist(f);
        if residual > self.tol().proj {
            return Err(Error::Precondition(format!("s2 s1 e s1 s2 differs from f by {residual:.3e}")));
        }
        let x = &(s2.element() * s1.element()) * e.element();
        let y = &(e.element() * s1.element()) * s2.element();
        let xy = symmetrize_sum(&x, &y, self.tol().sym)?;
        let s = xy + self.one() - e.element() - f.element();
        let s = self.symmetry(s)?;
        ExchangeWitness::new(s, e.clone(), f.clone(), self).map(|w| w.s)
    }

    /// For exchanged pairs `(e1, f1)` and `(e2, f2)` with `e1 ⊥ f2`,
    /// `e2 ⊥ f1`, `e1 ⊥ e2`, `f1 ⊥ f2`: the symmetry
    /// `s1 p1 + s2 p2 + (1 - p1 - p2)`, `p_i = e_i ∨ f_i`, exchanging
    /// `e1 + e2` and `f1 + f2`.
    pub fn finite_additivity(&self, w1: &ExchangeWitness, w2: &ExchangeWitness) -> Result<Symmetry> {
        let checks = [(&w1.e, &w2.f, "e1 ⊥ f2"), (&w2.e, &w1.f, "e2 ⊥ f1"), (&w1.e, &w2.e, "e1 ⊥ e2"), (&w1.f, &w2.f, "f1 ⊥ f2")];
        for (a, b, what) in checks {
            if !self.orthogonal(a, b) {
                return Err(Error::Precondition(format!("{what} fails")));
            }
        }
        let p1 = self.join(&w1.e, &w1.f)?;
        let p2 = self.join(&w2.e, &w2.f)?;
        let u = (w1.s.element() * p1.element()).into_element(self.tol().sym)?;
        let v = (w2.s.element() * p2.element()).into_element(self.tol().sym)?;
        let s = u + v + self.one() - p1.element() - p2.element();
        let s = self.symmetry(s)?;
        let e = self.settle(w1.e.element() + w2.e.element())?;
        let f = self.settle(w1.f.element() + w2.f.element())?;
        ExchangeWitness::new(s, e, f, self).map(|w| w.s)
    }

    /// For exchanged pairs `(e_i, f_i)` with `(e_i)` and `(f_i)` orthogonal
    /// families and `⋁e_i ⊥ ⋁f_i`: the symmetry `2p - 1` with
    /// `p = Σ (x_i + y_i + e_i + f_i)/2`, `x_i = s_i e_i`, `y_i = e_i s_i`.
    pub fn family_additivity(&self, ws: &[ExchangeWitness]) -> Result<Symmetry> {
        Ok(self.family_additivity_detailed(ws)?.symmetry)
    }

    pub fn family_additivity_detailed(&self, ws: &[ExchangeWitness]) -> Result<FamilyExchange> {
        for i in 0..ws.len() {
            for j in 0..ws.len() {
                if i < j && !self.orthogonal(&ws[i].e, &ws[j].e) {
                    return Err(Error::Precondition(format!("e_{i} and e_{j} are not orthogonal")));
                }
                if i < j && !self.orthogonal(&ws[i].f, &ws[j].f) {
                    return Err(Error::Precondition(format!("f_{i} and f_{j} are not orthogonal")));
                }
                if !self.orthogonal(&ws[i].e, &ws[j].f) {
                    return Err(Error::Precondition(format!("e_{i} and f_{j} are not orthogonal")));
                }
            }
        }
        let mut identities = Vec::new();
        let mut worst = |name: &'static str, r: f64| match identities.iter_mut().find(|(n, _)| *n == name) {
            Some((_, v)) => *v = f64::max(*v, r),
            None => identities.push((name, r)),
        };
        let mut parts = Vec::with_capacity(ws.len());
        for w in ws {
            let (s, e, f) = (w.s.element(), w.e.element(), w.f.element());
            let x = s * e;
            let y = e * s;
            worst("xy=f", ((&x * &y) - f.to_enveloping()).frobenius());
            worst("yx=e", ((&y * &x) - e.to_enveloping()).frobenius());
            worst("x^2=0", (&x * &x).frobenius());
            worst("y^2=0", (&y * &y).frobenius());
            let sum = symmetrize_sum(&x, &y, self.tol().sym)?;
            let p = Projection::new((sum + e + f) * 0.5, self.tol())?;
            let (e2, p2) = (e.scale(2.0), p.scale(2.0));
            worst("2e_i p_i e_i=e_i", e2.quad_unchecked(&p).scale(0.5).dist(e).max(e.quad_unchecked(&p2).dist(e)));
            worst("2p_i e_i p_i=p_i", p.quad_unchecked(&e2).dist(&p));
            parts.push(self.settle(p.into_element())?);
        }
        for i in 0..parts.len() {
            for j in (i + 1)..parts.len() {
                if !self.orthogonal(&parts[i], &parts[j]) {
                    return Err(Error::Precondition(format!("p_{i} and p_{j} are not orthogonal")));
                }
            }
        }
        let p = self.settle(parts.iter().fold(self.zero(), |acc, q| acc + q.element()))?;
        let e = self.settle(ws.iter().fold(self.zero(), |acc, w| acc + w.e.element()))?;
        let f = self.settle(ws.iter().fold(self.zero(), |acc, w| acc + w.f.element()))?;
        worst("2epe=e", e.quad_unchecked(&p.scale(2.0)).dist(&e));
        worst("2pep=p", p.quad_unchecked(&e.scale(2.0)).dist(&p));
        worst("2fpf=f", f.quad_unchecked(&p.scale(2.0)).dist(&f));
        worst("2pfp=p", p.quad_unchecked(&f.scale(2.0)).dist(&p));
        let symmetry = self.sym_from_proj(&p);
        let w = ExchangeWitness::new(symmetry, e, f, self)?;
        Ok(FamilyExchange { symmetry: w.s, parts, identities })
    }

    /// Symmetry-transformed element `sas`.
    pub fn transform(&self, s: &Symmetry, a: &Element) -> Result<Element> {
        s.quad(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::ModelShape;
    use nalgebra::DMatrix;

    const T: f64 = 1e-10;

    fn model(n: usize) -> Model {
        Model::new(ModelShape::square(n).unwrap())
    }

    fn proj(m: &Model, rows: &[f64]) -> Projection {
        let n = m.dim();
        m.projection(m.element(DMatrix::from_row_slice(n, n, rows)).unwrap()).unwrap()
    }

    fn coord(m: &Model, pattern: &[bool]) -> Projection {
        Projection::coordinate(m.shape(), pattern).unwrap()
    }

    fn e2() -> Projection {
        coord(&model(2), &[true, false])
    }

    fn f2() -> Projection {
        proj(&model(2), &[0.5, 0.5, 0.5, 0.5])
    }

    #[test]
    fn projections_and_symmetries_correspond() {
        let m = model(2);
        assert_eq!(m.sym_from_proj(&m.one_projection()), Symmetry::identity(m.shape()));
        assert!(m.sym_from_proj(&m.zero_projection()).dist(&m.scalar(-1.0)) == 0.0);
        let p = f2();
        assert!(m.proj_from_sym(&m.sym_from_proj(&p)).dist(&p) < T);
    }

    #[test]
    fn canonical_extensions() {
        let m = model(3);
        let s = m.sym_from_proj(&coord(&m, &[true, false, true]));
        let full: PartialSymmetry = s.clone().into();
        assert!(m.canonical_extension(&full).unwrap().dist(&s) < T);
        let zero = m.partial_symmetry(m.zero()).unwrap();
        assert!(m.canonical_extension(&zero).unwrap().dist(&m.one()) < T);
        let t = m.partial_symmetry(Element::diag(m.shape(), &[1.0, -1.0, 0.0]).unwrap()).unwrap();
        let expected = Element::diag(m.shape(), &[1.0, -1.0, 1.0]).unwrap();
        assert!(m.canonical_extension(&t).unwrap().dist(&expected) < T);
    }

    #[test]
    fn efe_fef_worked_example() {
        let m = model(2);
        let s = m.exchange_efe_fef(&e2(), &f2()).unwrap();
        let r = 0.5f64.sqrt();
        let expected = Element::from_rows(&[&[r, r], &[r, -r]], 1e-12).unwrap();
        assert!(s.dist(&expected) < T);
        assert!(s.apply(&e2()).dist(&f2()) < T);
    }

    #[test]
    fn efe_fef_degenerate_and_orthogonal() {
        let m = model(2);
        let s = m.exchange_efe_fef(&f2(), &f2()).unwrap();
        assert!(s.apply(&f2()).dist(&f2()) < T);
        let g = f2().ortho();
        // e + f = 1 gives a = 0 and s = 1; the contract s(efe)s = fef
        // holds with both sides zero
        let s = m.exchange_efe_fef(&f2(), &g).unwrap();
        assert!(s.dist(&m.one()) < T);
        let efe = f2().quad(&g).unwrap();
        let fef = g.quad(&f2()).unwrap();
        assert!(s.apply(&efe).dist(&fef) < T);
        // any orthogonal pair: efe = fef = 0
        let m3 = model(3);
        let e = coord(&m3, &[true, false, false]);
        let f = coord(&m3, &[false, true, false]);
        let s = m3.exchange_efe_fef(&e, &f).unwrap();
        assert!(s.apply(&e.quad(&f).unwrap()).dist(&f.quad(&e).unwrap()) < T);
    }

    #[test]
    fn sasaki_exchanges() {
        let m = model(2);
        let w = m.sasaki_exchange(&e2(), &e2().ortho()).unwrap();
        assert!(w.e().frobenius() < T && w.f().frobenius() < T);
        let w = m.sasaki_exchange(&e2(), &f2()).unwrap();
        assert!(w.e().dist(&e2()) < T && w.f().dist(&f2()) < T);

        let m3 = model(3);
        let e = coord(&m3, &[true, false, false]);
        let f = coord(&m3, &[true, true, false]);
        let w = m3.sasaki_exchange(&e, &f).unwrap();
        assert!(w.e().dist(&m3.meet(&e, &f).unwrap()) < T);
        assert!(w.residual() < T);
    }

    #[test]
    fn parallelogram_exchanges() {
        let m = model(2);
        let w = m.parallelogram_exchange(&f2(), &f2()).unwrap();
        assert!(w.e().frobenius() < T && w.f().frobenius() < T);
        let w = m.parallelogram_exchange(&f2(), &m.zero_projection()).unwrap();
        assert!(w.e().dist(&f2()) < T && w.f().dist(&f2()) < T, "{w:?} {:?}", f2());
    }

    #[test]
    fn complement_exchanges() {
        let m = model(2);
        let s = m.complement_exchange(&e2(), &e2().ortho()).unwrap();
        assert!(s.apply(&e2()).dist(&e2()) < T);
        let s = m.complement_exchange(&e2(), &f2()).unwrap();
        assert!(s.apply(&e2()).dist(&f2().ortho()) < T);
        assert!(matches!(m.complement_exchange(&e2(), &e2()), Err(Error::NotComplements { .. })));
    }

    #[test]
    fn related_witnesses() {
        let m = model(2);
        assert!(m.related_witness(&e2(), &e2().ortho()).unwrap().is_none());
        let w = m.related_witness(&f2(), &f2()).unwrap().unwrap();
        assert!(w.e().dist(&f2()) < T && w.f().dist(&f2()) < T);
    }

    #[test]
    fn common_complement_of_exchanged_complements() {
        let m = model(2);
        let e = e2();
        let f = e2().ortho();
        let s = m.symmetry(m.element(DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])).unwrap()).unwrap();
        let w = ExchangeWitness::new(s, e, f, &m).unwrap();
        let pw = m.common_complement_from_exchange(&w).unwrap();
        assert!(pw.complement.dist(&f2()) < T);
        // e = 1 forces f = 0; not complements of each other under exchange
        let one = m.one_projection();
        let w = ExchangeWitness::trivial(one);
        assert!(m.common_complement_from_exchange(&w).is_err());
    }

    #[test]
    fn strong_perspectivity_cases() {
        let m = model(2);
        let w = ExchangeWitness::trivial(f2());
        let pw = m.strong_perspectivity(&w).unwrap();
        assert!(pw.complement.frobenius() < T);

        let s = m.exchange_efe_fef(&e2(), &f2()).unwrap();
        let w = ExchangeWitness::new(s.clone(), e2(), f2(), &m).unwrap();
        let pw = m.strong_perspectivity(&w).unwrap();
        assert!(pw.complement.dist(&m.proj_from_sym(&s)) < T);
        assert!(m.perspectivity_residuals(&pw).unwrap().max() < T);
    }

    #[test]
    fn strong_perspectivity_with_overlap() {
        // e and f share the first coordinate axis
        let m = model(3);
        let e = coord(&m, &[true, true, false]);
        let s = m.sym_from_proj(&proj(&m, &[1.0, 0.0, 0.0, 0.0, 0.5, 0.5, 0.0, 0.5, 0.5]));
        let f = m.projection(s.apply(&e)).unwrap();
        let w = ExchangeWitness::new(s, e, f, &m).unwrap();
        let pw = m.strong_perspectivity(&w).unwrap();
        assert!(m.perspectivity_residuals(&pw).unwrap().max() < T);
        let lifted = m.lift_perspectivity(&pw).unwrap();
        assert!(m.perspectivity_residuals(&lifted).unwrap().max() < T);
    }

    #[test]
    fn perspective_chain() {
        let m = model(2);
        let pw = PerspectivityWitness { e: e2(), f: e2().ortho(), complement: f2(), ambient: None };
        let (s1, s2) = m.perspective_to_chain(&pw).unwrap();
        assert!(s2.apply(&s1.apply(&e2())).dist(&e2().ortho()) < T);
        let pw = PerspectivityWitness { e: f2(), f: f2(), complement: f2().ortho(), ambient: None };
        let (s1, s2) = m.perspective_to_chain(&pw).unwrap();
        assert!(s2.apply(&s1.apply(&f2())).dist(&f2()) < T);
    }

    #[test]
    fn orthogonal_chain() {
        let m = model(3);
        let z = m.zero_projection();
        let one = Symmetry::identity(m.shape());
        assert!(m.orthogonal_chain_to_symmetry(&z, &z, &one, &one).unwrap().dist(&m.one()) < T);

        let e = coord(&m, &[true, false, false]);
        let f = coord(&m, &[false, true, false]);
        // reflections through two different mirrors: (e1 -> u) then (u -> e2)
        let u = nalgebra::DVector::from_vec(vec![0.6, 0.0, 0.8]);
        let householder = |x: &nalgebra::DVector<f64>, y: &nalgebra::DVector<f64>| {
            let v = (x - y).normalize();
            m.symmetry(m.element(DMatrix::identity(3, 3) - &v * v.transpose() * 2.0).unwrap()).unwrap()
        };
        let e1 = nalgebra::DVector::from_vec(vec![1.0, 0.0, 0.0]);
        let e2v = nalgebra::DVector::from_vec(vec![0.0, 1.0, 0.0]);
        let s1 = householder(&e1, &u);
        let s2 = householder(&u, &e2v);
        let s = m.orthogonal_chain_to_symmetry(&e, &f, &s1, &s2).unwrap();
        assert!(s.apply(&e).dist(&f) < T);
        assert!(s.residual() < T);
        assert!(m.orthogonal_chain_to_symmetry(&e, &e, &s1, &s2).is_err());
    }

    #[test]
    fn finite_additivity_cases() {
        let m = Model::new(ModelShape::square(4).unwrap());
        let c = |p: &[bool]| coord(&m, p);
        let swap = |i: usize, j: usize| {
            let mut mat = DMatrix::identity(4, 4);
            mat[(i, i)] = 0.0;
            mat[(j, j)] = 0.0;
            mat[(i, j)] = 1.0;
            mat[(j, i)] = 1.0;
            m.symmetry(m.element(mat).unwrap()).unwrap()
        };
        let e1 = c(&[true, false, false, false]);
        let f1 = c(&[false, true, false, false]);
        let e2 = c(&[false, false, true, false]);
        let f2 = c(&[false, false, false, true]);
        let w1 = ExchangeWitness::new(swap(0, 1), e1.clone(), f1.clone(), &m).unwrap();
        let w2 = ExchangeWitness::new(swap(2, 3), e2.clone(), f2.clone(), &m).unwrap();
        let s = m.finite_additivity(&w1, &w2).unwrap();
        assert!(s.apply(&(e1.element() + e2.element())).dist(&(f1.element() + f2.element())) < T);

        let trivial = ExchangeWitness::trivial(m.zero_projection());
        let s = m.finite_additivity(&w1, &trivial).unwrap();
        assert!(s.apply(&e1).dist(&f1) < T);

        let bad = ExchangeWitness::new(swap(0, 2), e1.clone(), e2.clone(), &m).unwrap();
        assert!(m.finite_additivity(&w1, &bad).is_err());
    }

    #[test]
    fn family_additivity_cases() {
        let m = Model::new(ModelShape::square(6).unwrap());
        let s = m.family_additivity(&[]).unwrap();
        assert!(s.dist(&m.scalar(-1.0)) < T);

        let unit = |i: usize| {
            let mut p = vec![false; 6];
            p[i] = true;
            coord(&m, &p)
        };
        let rot = |i: usize, j: usize| {
            let mut mat = DMatrix::identity(6, 6);
            mat[(i, i)] = 0.0;
            mat[(j, j)] = 0.0;
            mat[(i, j)] = 1.0;
            mat[(j, i)] = 1.0;
            m.symmetry(m.element(mat).unwrap()).unwrap()
        };
        let ws: Vec<ExchangeWitness> = (0..3)
            .map(|k| ExchangeWitness::new(rot(k, k + 3), unit(k), unit(k + 3), &m).unwrap())
            .collect();
        let out = m.family_additivity_detailed(&ws).unwrap();
        let e = ws.iter().fold(m.zero(), |a, w| a + w.e().element());
        let f = ws.iter().fold(m.zero(), |a, w| a + w.f().element());
        assert!(out.symmetry.apply(&e).dist(&f) < 1e-8);
        assert!(out.identities.iter().all(|(_, r)| *r < T), "{:?}", out.identities);
        assert_eq!(out.parts.len(), 3);

        let single = m.family_additivity_detailed(&ws[..1]).unwrap();
        let w = &ws[0];
        let x = w.s().element() * w.e().element();
        let expected = (x.clone() + x.transpose()).into_element(1e-12).unwrap() + w.e().element() + w.f().element();
        assert!(single.parts[0].dist(&expected.scale(0.5)) < T);
    }
}
