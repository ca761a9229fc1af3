//! Validated wrappers around [`Element`]: projections, symmetries and
//! partial symmetries.

use std::ops::Deref;

use crate::eigen::eig_sym;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::shape::ModelShape;
use crate::tol::Tolerances;

/// An element with `p^2 = p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection(Element);

/// An element with `s^2 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Symmetry(Element);

/// An element `t` whose square is a projection.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSymmetry(Element);

/// Frobenius norm of `p^2 - p`.
pub fn idempotence_residual(a: &Element) -> f64 {
    (a.square() - a).frobenius()
}

/// Frobenius norm of `s^2 - 1`.
pub fn involution_residual(a: &Element) -> f64 {
    (a.square() - Element::identity(a.shape())).frobenius()
}

impl Projection {
    pub fn new(a: Element, tol: &Tolerances) -> Result<Self> {
        let residual = idempotence_residual(&a);
        if residual > tol.proj {
            return Err(Error::NotProjection { residual, tol: tol.proj });
        }
        Ok(Self(a))
    }

    /// The spectral projection of `a` onto eigenvalues above `1/2`.
    pub fn snap(a: &Element) -> Result<Self> {
        let d = eig_sym(a)?;
        Ok(Self(d.apply(|x| if x > 0.5 { 1.0 } else { 0.0 })))
    }

    pub(crate) fn from_element_unchecked(a: Element) -> Self {
        Self(a)
    }

    pub fn zero(shape: &ModelShape) -> Self {
        Self(Element::zero(shape))
    }

    pub fn identity(shape: &ModelShape) -> Self {
        Self(Element::identity(shape))
    }

    /// The diagonal projection with the given 0/1 pattern.
    pub fn coordinate(shape: &ModelShape, pattern: &[bool]) -> Result<Self> {
        let entries: Vec<f64> = pattern.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
        Ok(Self(Element::diag(shape, &entries)?))
    }

    /// `p^⊥ = 1 - p`.
    pub fn ortho(&self) -> Projection {
        Projection(Element::identity(self.0.shape()) - &self.0)
    }

    pub fn element(&self) -> &Element {
        &self.0
    }

    pub fn into_element(self) -> Element {
        self.0
    }

    /// Rank as the rounded trace.
    pub fn rank(&self) -> usize {
        self.0.trace().round().max(0.0) as usize
    }

    pub fn block_ranks(&self) -> Vec<usize> {
        (0..self.0.shape().num_blocks())
            .map(|b| self.0.block(b).trace().round().max(0.0) as usize)
            .collect()
    }

    pub fn residual(&self) -> f64 {
        idempotence_residual(&self.0)
    }

    pub fn is_zero(&self, tol: &Tolerances) -> bool {
        self.0.frobenius() <= tol.proj
    }

    /// `p <= q`, decided as `|pq - p| <= tol`.
    pub fn is_below(&self, q: &Projection, tol: &Tolerances) -> bool {
        (&self.0 * &q.0 - self.0.to_enveloping()).frobenius() <= tol.proj
    }

    /// `p ⊥ q`, decided as `|pq| <= tol`.
    pub fn is_orthogonal(&self, q: &Projection, tol: &Tolerances) -> bool {
        (&self.0 * &q.0).frobenius() <= tol.proj
    }

    pub fn approx_eq(&self, q: &Projection, tol: &Tolerances) -> bool {
        self.0.dist(&q.0) <= tol.proj
    }
}

impl Symmetry {
    pub fn new(a: Element, tol: &Tolerances) -> Result<Self> {
        let residual = involution_residual(&a);
        if residual > tol.proj {
            return Err(Error::NotSymmetry { residual, tol: tol.proj });
        }
        Ok(Self(a))
    }

    pub(crate) fn from_element_unchecked(a: Element) -> Self {
        Self(a)
    }

    pub fn identity(shape: &ModelShape) -> Self {
        Self(Element::identity(shape))
    }

    /// `s = 2p - 1`.
    pub fn from_projection(p: &Projection) -> Self {
        Self(p.element() * 2.0 - Element::identity(p.shape()))
    }

    /// `p = (1 + s)/2`.
    pub fn to_projection(&self) -> Projection {
        Projection((Element::identity(self.0.shape()) + &self.0) * 0.5)
    }

    pub fn element(&self) -> &Element {
        &self.0
    }

    pub fn into_element(self) -> Element {
        self.0
    }

    pub fn residual(&self) -> f64 {
        involution_residual(&self.0)
    }

    /// The symmetry transformation `J_s(a) = sas`.
    pub fn apply(&self, a: &Element) -> Element {
        self.0.quad_unchecked(a)
    }

    /// `sps`, again a projection.
    pub fn apply_proj(&self, p: &Projection) -> Projection {
        Projection(self.apply(p.element()))
    }
}

impl PartialSymmetry {
    pub fn new(t: Element, tol: &Tolerances) -> Result<Self> {
        let residual = idempotence_residual(&t.square());
        if residual > tol.proj {
            return Err(Error::NotPartialSymmetry { residual, tol: tol.proj });
        }
        Ok(Self(t))
    }

    pub(crate) fn from_element_unchecked(t: Element) -> Self {
        Self(t)
    }

    pub fn element(&self) -> &Element {
        &self.0
    }

    pub fn into_element(self) -> Element {
        self.0
    }

    /// The projection `t^2`.
    pub fn support(&self) -> Projection {
        Projection(self.0.square())
    }
}

impl From<Symmetry> for PartialSymmetry {
    fn from(s: Symmetry) -> Self {
        PartialSymmetry(s.0)
    }
}

macro_rules! deref_element {
    ($($ty:ident),*) => {$(
        impl Deref for $ty {
            type Target = Element;
            fn deref(&self) -> &Element {
                &self.0
            }
        }

        impl AsRef<Element> for $ty {
            fn as_ref(&self) -> &Element {
                &self.0
            }
        }
    )*};
}

deref_element!(Projection, Symmetry, PartialSymmetry);

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn validation() {
        let shape = ModelShape::square(2).unwrap();
        let half = Element::from_rows(&[&[0.5, 0.5], &[0.5, 0.5]], 1e-12).unwrap();
        assert!(Projection::new(half.clone(), &tol()).is_ok());
        assert!(matches!(
            Projection::new(half.scale(2.0), &tol()),
            Err(Error::NotProjection { .. })
        ));
        assert!(Symmetry::new(Element::scalar(&shape, -1.0), &tol()).is_ok());
        assert!(Symmetry::new(half.clone(), &tol()).is_err());
        let t = Element::diag(&shape, &[1.0, 0.0]).unwrap() - Element::diag(&shape, &[0.0, 0.0]).unwrap();
        assert!(PartialSymmetry::new(t, &tol()).is_ok());
        assert!(PartialSymmetry::new(Element::scalar(&shape, 0.5), &tol()).is_err());
    }

    #[test]
    fn symmetry_projection_correspondence() {
        let shape = ModelShape::square(2).unwrap();
        let p = Projection::coordinate(&shape, &[true, false]).unwrap();
        let s = Symmetry::from_projection(&p);
        assert_eq!(s.matrix(), Element::diag(&shape, &[1.0, -1.0]).unwrap().matrix());
        assert_eq!(s.to_projection(), p);
        assert_eq!(Symmetry::from_projection(&Projection::identity(&shape)), Symmetry::identity(&shape));
        assert_eq!(
            Symmetry::from_projection(&Projection::zero(&shape)).matrix(),
            Element::scalar(&shape, -1.0).matrix()
        );
    }

    #[test]
    fn snapping_cleans_drift() {
        let shape = ModelShape::square(2).unwrap();
        let drifted = Element::diag(&shape, &[1.0 + 1e-9, -1e-9]).unwrap();
        let p = Projection::snap(&drifted).unwrap();
        assert_eq!(p.matrix(), Element::diag(&shape, &[1.0, 0.0]).unwrap().matrix());
    }

    #[test]
    fn order_and_orthogonality() {
        let shape = ModelShape::square(3).unwrap();
        let e = Projection::coordinate(&shape, &[true, false, false]).unwrap();
        let g = Projection::coordinate(&shape, &[true, true, false]).unwrap();
        assert!(e.is_below(&g, &tol()));
        assert!(!g.is_below(&e, &tol()));
        assert!(e.is_orthogonal(&g.ortho(), &tol()));
        assert_eq!(e.rank(), 1);
        assert_eq!(g.ortho().rank(), 1);
    }
}
