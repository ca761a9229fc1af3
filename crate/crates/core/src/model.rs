//! The model context: a block shape plus the tolerances used to decide
//! predicates on its elements.

use nalgebra::DMatrix;

use crate::element::{ensure_same, Element};
use crate::error::Result;
use crate::projection::{PartialSymmetry, Projection, Symmetry};
use crate::shape::ModelShape;
use crate::tol::Tolerances;

/// A concrete synaptic algebra: symmetric matrices over `shape`.
///
/// Most operations of the crate are methods on `Model`, spread over the
/// spectral, lattice, forge and comparability modules.
#[derive(Debug, Clone)]
pub struct Model {
    shape: ModelShape,
    tol: Tolerances,
    snap: bool,
}

impl Model {
    pub fn new(shape: ModelShape) -> Self {
        Self { shape, tol: Tolerances::default(), snap: true }
    }

    pub fn with_tolerances(shape: ModelShape, tol: Tolerances) -> Self {
        Self { shape, tol, snap: true }
    }

    /// Turns re-projection of constructed projections on or off.
    pub fn snapping(mut self, on: bool) -> Self {
        self.snap = on;
        self
    }

    pub fn shape(&self) -> &ModelShape {
        &self.shape
    }

    pub fn tol(&self) -> &Tolerances {
        &self.tol
    }

    pub fn snaps(&self) -> bool {
        self.snap
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn one(&self) -> Element {
        Element::identity(&self.shape)
    }

    pub fn zero(&self) -> Element {
        Element::zero(&self.shape)
    }

    pub fn scalar(&self, lambda: f64) -> Element {
        Element::scalar(&self.shape, lambda)
    }

    pub fn element(&self, m: DMatrix<f64>) -> Result<Element> {
        Element::from_matrix(self.shape.clone(), m, self.tol.sym)
    }

    pub fn check(&self, a: &Element) -> Result<()> {
        ensure_same(&self.shape, a.shape())
    }

    /// Validates `a` as a projection, re-projecting it spectrally when
    /// snapping is on.
    pub fn projection(&self, a: Element) -> Result<Projection> {
        self.check(&a)?;
        let p = Projection::new(a, &self.tol)?;
        if self.snap {
            Projection::snap(&p)
        } else {
            Ok(p)
        }
    }

    pub fn symmetry(&self, a: Element) -> Result<Symmetry> {
        self.check(&a)?;
        Symmetry::new(a, &self.tol)
    }

    pub fn partial_symmetry(&self, t: Element) -> Result<PartialSymmetry> {
        self.check(&t)?;
        PartialSymmetry::new(t, &self.tol)
    }

    pub fn zero_projection(&self) -> Projection {
        Projection::zero(&self.shape)
    }

    pub fn one_projection(&self) -> Projection {
        Projection::identity(&self.shape)
    }

    /// Snaps an element that is a projection up to rounding.
    pub(crate) fn settle(&self, a: Element) -> Result<Projection> {
        if self.snap {
            Projection::snap(&a)
        } else {
            Ok(Projection::from_element_unchecked(a))
        }
    }

    pub fn is_zero(&self, p: &Projection) -> bool {
        p.is_zero(&self.tol)
    }

    pub fn below(&self, p: &Projection, q: &Projection) -> bool {
        p.is_below(q, &self.tol)
    }

    pub fn orthogonal(&self, p: &Projection, q: &Projection) -> bool {
        p.is_orthogonal(q, &self.tol)
    }

    pub fn same(&self, p: &Projection, q: &Projection) -> bool {
        p.approx_eq(q, &self.tol)
    }
}
