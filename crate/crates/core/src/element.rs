//! Elements of the synaptic algebra and of its enveloping algebra.
//!
//! An [`Element`] is a real symmetric block-diagonal matrix. Products of
//! elements are generally not symmetric, so they land in
//! [`EnvelopingElement`], the full block-diagonal matrix algebra.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::shape::ModelShape;

#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    shape: ModelShape,
    data: DMatrix<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopingElement {
    shape: ModelShape,
    data: DMatrix<f64>,
}

fn check_layout(shape: &ModelShape, m: &DMatrix<f64>) -> Result<()> {
    let n = shape.dim();
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch { rows: m.nrows(), cols: m.ncols(), n });
    }
    for i in 0..n {
        for j in 0..n {
            let v = m[(i, j)];
            if v != 0.0 && !shape.in_block(i, j) {
                return Err(Error::OffBlock { row: i, col: j, value: v });
            }
        }
    }
    Ok(())
}

/// Largest entry of `m - m^T`.
pub fn asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

fn symmetrized(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

fn zero_off_block(shape: &ModelShape, m: &mut DMatrix<f64>) {
    let n = shape.dim();
    for i in 0..n {
        for j in 0..n {
            if !shape.in_block(i, j) {
                m[(i, j)] = 0.0;
            }
        }
    }
}

impl AsRef<Element> for Element {
    fn as_ref(&self) -> &Element {
        self
    }
}

impl Element {
    /// Validates block layout (off-block entries exactly zero) and symmetry
    /// up to `sym_tol`, then stores the exactly symmetrized matrix.
    pub fn from_matrix(shape: ModelShape, data: DMatrix<f64>, sym_tol: f64) -> Result<Self> {
        check_layout(&shape, &data)?;
        let residual = asymmetry(&data);
        if residual > sym_tol {
            return Err(Error::NotSymmetric { residual, tol: sym_tol });
        }
        Ok(Self { data: symmetrized(&data), shape })
    }

    /// Builds an element from a matrix known to be (numerically) symmetric
    /// and block-diagonal. Off-block entries are dropped and the matrix is
    /// symmetrized.
    pub(crate) fn from_raw(shape: ModelShape, mut data: DMatrix<f64>) -> Self {
        debug_assert_eq!(data.nrows(), shape.dim());
        zero_off_block(&shape, &mut data);
        Self { data: symmetrized(&data), shape }
    }

    pub fn zero(shape: &ModelShape) -> Self {
        let n = shape.dim();
        Self { shape: shape.clone(), data: DMatrix::zeros(n, n) }
    }

    pub fn identity(shape: &ModelShape) -> Self {
        Self::scalar(shape, 1.0)
    }

    /// The central element `lambda * 1`.
    pub fn scalar(shape: &ModelShape, lambda: f64) -> Self {
        let n = shape.dim();
        Self { shape: shape.clone(), data: DMatrix::identity(n, n) * lambda }
    }

    pub fn diag(shape: &ModelShape, entries: &[f64]) -> Result<Self> {
        let n = shape.dim();
        if entries.len() != n {
            return Err(Error::DimensionMismatch { rows: entries.len(), cols: 1, n });
        }
        Ok(Self {
            shape: shape.clone(),
            data: DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(entries)),
        })
    }

    /// Assembles an element from one symmetric matrix per block.
    pub fn from_blocks(blocks: &[DMatrix<f64>], sym_tol: f64) -> Result<Self> {
        let dims: Vec<usize> = blocks.iter().map(|b| b.nrows()).collect();
        let shape = ModelShape::new(&dims)?;
        let n = shape.dim();
        let mut data = DMatrix::zeros(n, n);
        for (b, block) in blocks.iter().enumerate() {
            if block.ncols() != block.nrows() {
                return Err(Error::DimensionMismatch { rows: block.nrows(), cols: block.ncols(), n: block.nrows() });
            }
            let r = shape.range(b);
            data.view_mut((r.start, r.start), (r.len(), r.len())).copy_from(block);
        }
        Self::from_matrix(shape, data, sym_tol)
    }

    /// Convenience constructor from row slices for a one-block model.
    pub fn from_rows(rows: &[&[f64]], sym_tol: f64) -> Result<Self> {
        let n = rows.len();
        let shape = ModelShape::square(n)?;
        let mut data = DMatrix::zeros(n, n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { rows: n, cols: row.len(), n });
            }
            for (j, &v) in row.iter().enumerate() {
                data[(i, j)] = v;
            }
        }
        Self::from_matrix(shape, data, sym_tol)
    }

    pub fn shape(&self) -> &ModelShape {
        &self.shape
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.data
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    /// Copy of the diagonal block `b`.
    pub fn block(&self, b: usize) -> DMatrix<f64> {
        let r = self.shape.range(b);
        self.data.view((r.start, r.start), (r.len(), r.len())).into_owned()
    }

    pub fn trace(&self) -> f64 {
        self.data.trace()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.norm()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.amax()
    }

    /// Frobenius distance; an upper bound for the order-unit distance.
    pub fn dist<T: AsRef<Element>>(&self, other: &T) -> f64 {
        (&self.data - &other.as_ref().data).norm()
    }

    pub fn same_shape(&self, other: &Element) -> Result<()> {
        ensure_same(&self.shape, &other.shape)
    }

    pub fn scale(&self, k: f64) -> Element {
        Element { shape: self.shape.clone(), data: &self.data * k }
    }

    /// The Jordan product `(ab + ba)/2`.
    pub fn jordan(&self, other: &Element) -> Result<Element> {
        self.same_shape(other)?;
        let ab = &self.data * &other.data;
        Ok(Element { shape: self.shape.clone(), data: symmetrized(&ab) })
    }

    /// The quadratic map `J_a(b) = aba`.
    pub fn quad(&self, b: &Element) -> Result<Element> {
        self.same_shape(b)?;
        Ok(self.quad_unchecked(b))
    }

    pub(crate) fn quad_unchecked(&self, b: &Element) -> Element {
        let m = &self.data * &b.data * &self.data;
        Element { shape: self.shape.clone(), data: symmetrized(&m) }
    }

    /// Square `a^2`, computed in the enveloping algebra and symmetrized.
    pub fn square(&self) -> Element {
        let m = &self.data * &self.data;
        Element { shape: self.shape.clone(), data: symmetrized(&m) }
    }

    /// Frobenius norm of `ab - ba`.
    pub fn commutator_norm(&self, other: &Element) -> Result<f64> {
        self.same_shape(other)?;
        let ab = &self.data * &other.data;
        Ok((&ab - ab.transpose()).norm())
    }

    pub fn to_enveloping(&self) -> EnvelopingElement {
        EnvelopingElement { shape: self.shape.clone(), data: self.data.clone() }
    }
}

pub(crate) fn ensure_same(a: &ModelShape, b: &ModelShape) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ShapeMismatch { left: a.clone(), right: b.clone() })
    }
}

impl EnvelopingElement {
    pub fn from_matrix(shape: ModelShape, data: DMatrix<f64>) -> Result<Self> {
        check_layout(&shape, &data)?;
        Ok(Self { shape, data })
    }

    pub fn identity(shape: &ModelShape) -> Self {
        Element::identity(shape).to_enveloping()
    }

    pub fn shape(&self) -> &ModelShape {
        &self.shape
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self { shape: self.shape.clone(), data: self.data.transpose() }
    }

    pub fn asymmetry(&self) -> f64 {
        asymmetry(&self.data)
    }

    pub fn mul(&self, other: &EnvelopingElement) -> Result<EnvelopingElement> {
        ensure_same(&self.shape, &other.shape)?;
        Ok(Self { shape: self.shape.clone(), data: &self.data * &other.data })
    }

    pub fn frobenius(&self) -> f64 {
        self.data.norm()
    }

    pub fn dist(&self, other: &EnvelopingElement) -> f64 {
        (&self.data - &other.data).norm()
    }

    /// Accepts the matrix as an element of the algebra if it is symmetric
    /// within `sym_tol`.
    pub fn into_element(self, sym_tol: f64) -> Result<Element> {
        let residual = asymmetry(&self.data);
        if residual > sym_tol {
            return Err(Error::NotSymmetric { residual, tol: sym_tol });
        }
        Ok(Element { data: symmetrized(&self.data), shape: self.shape })
    }
}

/// `env_mul(x, y) = xy` in the enveloping algebra.
pub fn env_mul(x: &EnvelopingElement, y: &EnvelopingElement) -> Result<EnvelopingElement> {
    x.mul(y)
}

/// Returns `x + y` as an element of the algebra, failing if the sum is not
/// symmetric. Sums like `abc + cba` always qualify.
pub fn symmetrize_sum(x: &EnvelopingElement, y: &EnvelopingElement, sym_tol: f64) -> Result<Element> {
    ensure_same(&x.shape, &y.shape)?;
    (x + y).into_element(sym_tol)
}

macro_rules! impl_binop {
    ($ty:ident, $trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a $ty> for &'a $ty {
            type Output = $ty;
            /// Panics if the shapes differ.
            fn $method(self, rhs: &'a $ty) -> $ty {
                assert_eq!(self.shape, rhs.shape, "shape mismatch");
                $ty { shape: self.shape.clone(), data: &self.data $op &rhs.data }
            }
        }
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                &self $op &rhs
            }
        }
        impl<'a> $trait<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                &self $op rhs
            }
        }
    };
}

impl_binop!(Element, Add, add, +);
impl_binop!(Element, Sub, sub, -);
impl_binop!(EnvelopingElement, Add, add, +);
impl_binop!(EnvelopingElement, Sub, sub, -);

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Element {
    type Output = Element;
    fn mul(self, k: f64) -> Element {
        self.scale(k)
    }
}

impl Mul<f64> for Element {
    type Output = Element;
    fn mul(self, k: f64) -> Element {
        self.scale(k)
    }
}

/// `a * b` is the associative product, which lives in the enveloping algebra.
impl<'a> Mul<&'a Element> for &'a Element {
    type Output = EnvelopingElement;
    fn mul(self, rhs: &'a Element) -> EnvelopingElement {
        assert_eq!(self.shape, rhs.shape, "shape mismatch");
        EnvelopingElement { shape: self.shape.clone(), data: &self.data * &rhs.data }
    }
}

impl<'a> Mul<&'a EnvelopingElement> for &'a EnvelopingElement {
    type Output = EnvelopingElement;
    fn mul(self, rhs: &'a EnvelopingElement) -> EnvelopingElement {
        assert_eq!(self.shape, rhs.shape, "shape mismatch");
        EnvelopingElement { shape: self.shape.clone(), data: &self.data * &rhs.data }
    }
}

impl<'a> Mul<&'a Element> for &'a EnvelopingElement {
    type Output = EnvelopingElement;
    fn mul(self, rhs: &'a Element) -> EnvelopingElement {
        assert_eq!(self.shape, rhs.shape, "shape mismatch");
        EnvelopingElement { shape: self.shape.clone(), data: &self.data * &rhs.data }
    }
}

impl<'a> Mul<&'a EnvelopingElement> for &'a Element {
    type Output = EnvelopingElement;
    fn mul(self, rhs: &'a EnvelopingElement) -> EnvelopingElement {
        assert_eq!(self.shape, rhs.shape, "shape mismatch");
        EnvelopingElement { shape: self.shape.clone(), data: &self.data * &rhs.data }
    }
}
