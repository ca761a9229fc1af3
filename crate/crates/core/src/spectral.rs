//! Spectral calculus: square roots, absolute values, carriers, signum,
//! spectral resolutions and inverses.

use crate::eigen::{eig_sym, EigenDecomposition};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::model::Model;
use crate::projection::{PartialSymmetry, Projection};

/// One jump of a spectral resolution: an eigenvalue and its eigenspace
/// projection.
#[derive(Debug, Clone)]
pub struct Jump {
    pub value: f64,
    pub projection: Projection,
}

/// The right-continuous family `p_λ = sum over jumps with value <= λ`,
/// stored as its jumps.
#[derive(Debug, Clone)]
pub struct SpectralResolution {
    pub jumps: Vec<Jump>,
    pub lower: f64,
    pub upper: f64,
}

impl SpectralResolution {
    /// `p_λ`.
    pub fn at(&self, lambda: f64) -> Projection {
        let shape = self.jumps[0].projection.shape().clone();
        let mut sum = Element::zero(&shape);
        for j in self.jumps.iter().take_while(|j| j.value <= lambda) {
            sum = sum + j.projection.element();
        }
        Projection::from_element_unchecked(sum)
    }

    /// `sum λ_i q_i`.
    pub fn reconstruct(&self) -> Element {
        let shape = self.jumps[0].projection.shape().clone();
        self.jumps
            .iter()
            .fold(Element::zero(&shape), |acc, j| acc + j.projection.element() * j.value)
    }

    pub fn len(&self) -> usize {
        self.jumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jumps.is_empty()
    }
}

impl Model {
    pub fn eig(&self, a: &Element) -> Result<EigenDecomposition> {
        self.check(a)?;
        eig_sym(a)
    }

    /// Eigenvalues with `|λ| <= τ_rank·‖a‖` count as zero.
    fn zero_threshold(&self, d: &EigenDecomposition) -> f64 {
        self.tol().rank * d.spectral_radius()
    }

    pub fn order_unit_norm(&self, a: &Element) -> Result<f64> {
        Ok(self.eig(a)?.spectral_radius())
    }

    /// `a <= b`: the minimum eigenvalue of `b - a` is at least `-τ_psd`.
    pub fn leq(&self, a: &Element, b: &Element) -> Result<bool> {
        a.same_shape(b)?;
        Ok(self.eig(&(b - a))?.min() >= -self.tol().psd)
    }

    pub fn is_positive(&self, a: &Element) -> Result<bool> {
        Ok(self.eig(a)?.min() >= -self.tol().psd)
    }

    pub fn sqrt_pos(&self, a: &Element) -> Result<Element> {
        let d = self.eig(a)?;
        if d.min() < -self.tol().psd {
            return Err(Error::NotPositive { min_eigenvalue: d.min() });
        }
        Ok(d.apply(|x| x.max(0.0).sqrt()))
    }

    pub fn abs(&self, a: &Element) -> Result<Element> {
        Ok(self.eig(a)?.apply(f64::abs))
    }

    pub fn pos_part(&self, a: &Element) -> Result<Element> {
        Ok(self.eig(a)?.apply(|x| x.max(0.0)))
    }

    pub fn neg_part(&self, a: &Element) -> Result<Element> {
        Ok(self.eig(a)?.apply(|x| (-x).max(0.0)))
    }

    /// The carrier `a°`: the eigenprojection onto nonzero eigenvalues.
    pub fn carrier(&self, a: &Element) -> Result<Projection> {
        let d = self.eig(a)?;
        let cut = self.zero_threshold(&d);
        Ok(Projection::from_element_unchecked(d.apply(|x| if x.abs() > cut { 1.0 } else { 0.0 })))
    }

    /// Carrier with the zero threshold relative to `max(scale, ‖a‖)`. Used
    /// when `a` is derived from elements of norm `scale`, so rounding noise
    /// in `a` is not mistaken for spectrum.
    pub(crate) fn carrier_relative_to(&self, a: &Element, scale: f64) -> Result<Projection> {
        let d = self.eig(a)?;
        let cut = self.tol().rank * scale.max(d.spectral_radius());
        Ok(Projection::from_element_unchecked(d.apply(|x| if x.abs() > cut { 1.0 } else { 0.0 })))
    }

    /// `sgn(a) = (a⁺)° - (a⁻)°`.
    pub fn signum(&self, a: &Element) -> Result<PartialSymmetry> {
        self.signum_relative_to(a, 0.0)
    }

    /// Signum with the zero threshold relative to `max(scale, ‖a‖)`.
    pub(crate) fn signum_relative_to(&self, a: &Element, scale: f64) -> Result<PartialSymmetry> {
        let d = self.eig(a)?;
        let cut = self.tol().rank * scale.max(d.spectral_radius());
        let t = d.apply(|x| {
            if x > cut {
                1.0
            } else if x < -cut {
                -1.0
            } else {
                0.0
            }
        });
        Ok(PartialSymmetry::from_element_unchecked(t))
    }

    /// Groups eigenvalues closer than `τ_cluster·‖a‖` into single jumps.
    pub fn spectral_resolution(&self, a: &Element) -> Result<SpectralResolution> {
        let d = self.eig(a)?;
        let width = self.tol().cluster * d.spectral_radius();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, pair) in d.pairs.iter().enumerate() {
            match groups.last_mut() {
                Some(g) if pair.value - d.pairs[*g.last().unwrap()].value <= width => g.push(i),
                _ => groups.push(vec![i]),
            }
        }
        let jumps: Vec<Jump> = groups
            .iter()
            .map(|g| {
                let value = g.iter().map(|&i| d.pairs[i].value).sum::<f64>() / g.len() as f64;
                let q = d.sum_where(|i, _| if g.contains(&i) { 1.0 } else { 0.0 });
                Jump { value, projection: Projection::from_element_unchecked(q) }
            })
            .collect();
        let lower = jumps.first().map_or(0.0, |j| j.value);
        let upper = jumps.last().map_or(0.0, |j| j.value);
        Ok(SpectralResolution { jumps, lower, upper })
    }

    /// `p_{a,λ} = 1 - ((a - λ)⁺)°`, straight from the definition.
    pub fn resolution_by_definition(&self, a: &Element, lambda: f64) -> Result<Projection> {
        let shifted = a - &self.scalar(lambda);
        let scale = self.order_unit_norm(&shifted)?;
        let c = self.carrier_relative_to(&self.pos_part(&shifted)?, scale)?;
        Ok(c.ortho())
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        let d = self.eig(a)?;
        let smallest = d.pairs.iter().fold(f64::INFINITY, |m, p| m.min(p.value.abs()));
        if smallest <= self.tol().inv {
            return Err(Error::NotInvertible { smallest });
        }
        Ok(d.apply(|x| 1.0 / x))
    }

    /// `ab = ba` within `τ_comm·(‖a‖‖b‖ + 1)`, norms in Frobenius.
    pub fn commutes(&self, a: &Element, b: &Element) -> Result<bool> {
        let c = a.commutator_norm(b)?;
        Ok(c <= self.tol().comm * (a.frobenius() * b.frobenius() + 1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::ModelShape;

    const T: f64 = 1e-12;

    fn m2() -> Model {
        Model::new(ModelShape::square(2).unwrap())
    }

    fn rows(r: &[&[f64]]) -> Element {
        Element::from_rows(r, T).unwrap()
    }

    fn e() -> Element {
        rows(&[&[1.0, 0.0], &[0.0, 0.0]])
    }

    fn f() -> Element {
        rows(&[&[0.5, 0.5], &[0.5, 0.5]])
    }

    fn h() -> Element {
        rows(&[&[0.5, 0.5], &[0.5, -0.5]])
    }

    #[test]
    fn order() {
        let m = m2();
        assert!(m.leq(&m.zero(), &f()).unwrap());
        assert!(m.leq(&f(), &m.one()).unwrap());
        // f - e has eigenvalues ±1/√2
        assert!(!m.leq(&e(), &f()).unwrap());
    }

    #[test]
    fn square_roots() {
        let m = m2();
        assert!(m.sqrt_pos(&m.one()).unwrap().dist(&m.one()) < T);
        assert!(m.sqrt_pos(&f()).unwrap().dist(&f()) < T);
        let d = Element::diag(m.shape(), &[4.0, 9.0]).unwrap();
        let expected = Element::diag(m.shape(), &[2.0, 3.0]).unwrap();
        assert!(m.sqrt_pos(&d).unwrap().dist(&expected) < T);
        assert!(matches!(m.sqrt_pos(&h()), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn parts_and_abs() {
        let m = m2();
        assert!(m.abs(&m.scalar(-1.0)).unwrap().dist(&m.one()) < T);
        let a = Element::diag(m.shape(), &[2.0, -3.0]).unwrap();
        assert!(m.pos_part(&a).unwrap().dist(&Element::diag(m.shape(), &[2.0, 0.0]).unwrap()) < T);
        assert!(m.neg_part(&a).unwrap().dist(&Element::diag(m.shape(), &[0.0, 3.0]).unwrap()) < T);
        let r = 0.5f64.sqrt();
        assert!(m.abs(&h()).unwrap().dist(&m.scalar(r)) < T);
    }

    #[test]
    fn carriers() {
        let m = m2();
        assert_eq!(m.carrier(&m.zero()).unwrap().rank(), 0);
        assert!(m.carrier(&f()).unwrap().dist(&f()) < T);
        let m3 = Model::new(ModelShape::square(3).unwrap());
        let a = Element::diag(m3.shape(), &[0.5, 0.0, -2.0]).unwrap();
        let expected = Element::diag(m3.shape(), &[1.0, 0.0, 1.0]).unwrap();
        assert!(m3.carrier(&a).unwrap().dist(&expected) < T);
    }

    #[test]
    fn signum_and_polar() {
        let m = m2();
        assert_eq!(m.signum(&m.zero()).unwrap().frobenius(), 0.0);
        let m3 = Model::new(ModelShape::square(3).unwrap());
        let a = Element::diag(m3.shape(), &[5.0, -2.0, 0.0]).unwrap();
        let expected = Element::diag(m3.shape(), &[1.0, -1.0, 0.0]).unwrap();
        assert!(m3.signum(&a).unwrap().dist(&expected) < T);
        let s = m.signum(&h()).unwrap();
        assert!(s.dist(&h().scale(2.0f64.sqrt())) < T);
        let polar = s.element() * &m.abs(&h()).unwrap();
        assert!((polar.matrix() - h().matrix()).norm() < T);
    }

    #[test]
    fn resolutions() {
        let m = m2();
        let r = m.spectral_resolution(&m.one()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!((r.lower, r.upper), (1.0, 1.0));
        assert!(r.jumps[0].projection.dist(&m.one()) < T);

        let a = Element::diag(m.shape(), &[2.0, -1.0]).unwrap();
        let r = m.spectral_resolution(&a).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!((r.lower, r.upper), (-1.0, 2.0));
        assert!(r.jumps[0].projection.dist(&Element::diag(m.shape(), &[0.0, 1.0]).unwrap()) < T);
        assert!(r.jumps[1].projection.dist(&Element::diag(m.shape(), &[1.0, 0.0]).unwrap()) < T);

        let r = m.spectral_resolution(&h()).unwrap();
        let s = 0.5f64.sqrt();
        assert!((r.jumps[0].value + s).abs() < T && (r.jumps[1].value - s).abs() < T);
        assert!(r.jumps.iter().all(|j| j.projection.rank() == 1));
        assert!(r.reconstruct().dist(&h()) < T);
        for lambda in [-1.0, -0.7, 0.0, std::f64::consts::FRAC_1_SQRT_2, 0.9] {
            let def = m.resolution_by_definition(&h(), lambda).unwrap();
            assert!(r.at(lambda).dist(&def) < 1e-10, "λ = {lambda}");
        }
    }

    #[test]
    fn clustered_eigenvalues_share_a_jump() {
        let m = Model::new(ModelShape::square(3).unwrap());
        let a = Element::diag(m.shape(), &[1.0, 1.0 + 1e-13, 2.0]).unwrap();
        let r = m.spectral_resolution(&a).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.jumps[0].projection.rank(), 2);
    }

    #[test]
    fn inverses() {
        let m = m2();
        assert!(m.inverse(&m.one()).unwrap().dist(&m.one()) < T);
        let a = Element::diag(m.shape(), &[2.0, 4.0]).unwrap();
        assert!(m.inverse(&a).unwrap().dist(&Element::diag(m.shape(), &[0.5, 0.25]).unwrap()) < T);
        assert!(matches!(m.inverse(&e()), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn norms() {
        let m = m2();
        assert_eq!(m.order_unit_norm(&m.one()).unwrap(), 1.0);
        assert_eq!(m.order_unit_norm(&Element::diag(m.shape(), &[3.0, -5.0]).unwrap()).unwrap(), 5.0);
        let r = 0.5f64.sqrt();
        let s = rows(&[&[r, r], &[r, -r]]);
        assert!((m.order_unit_norm(&s).unwrap() - 1.0).abs() < T);
    }

    #[test]
    fn commutation() {
        let m = m2();
        assert!(m.commutes(&h(), &m.one()).unwrap());
        assert!(!m.commutes(&e(), &f()).unwrap());
    }
}
