//! The orthomodular lattice of projections: meets, joins, Sasaki
//! projections, the center, central covers and interval models.

use std::ops::Deref;

use nalgebra::DMatrix;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::model::Model;
use crate::projection::Projection;
use crate::shape::ModelShape;

/// A projection that is `0` or `1` on every block.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralProjection {
    projection: Projection,
    mask: Vec<bool>,
}

impl CentralProjection {
    pub fn from_mask(shape: &ModelShape, mask: &[bool]) -> Self {
        assert_eq!(mask.len(), shape.num_blocks(), "one flag per block");
        let mut pattern = Vec::with_capacity(shape.dim());
        for (b, &on) in mask.iter().enumerate() {
            pattern.extend(std::iter::repeat_n(on, shape.blocks()[b]));
        }
        let projection = Projection::coordinate(shape, &pattern).expect("pattern matches shape");
        Self { projection, mask: mask.to_vec() }
    }

    pub fn zero(shape: &ModelShape) -> Self {
        Self::from_mask(shape, &vec![false; shape.num_blocks()])
    }

    pub fn one(shape: &ModelShape) -> Self {
        Self::from_mask(shape, &vec![true; shape.num_blocks()])
    }

    /// The atom of the center carried by block `b`.
    pub fn atom(shape: &ModelShape, b: usize) -> Self {
        let mut mask = vec![false; shape.num_blocks()];
        mask[b] = true;
        Self::from_mask(shape, &mask)
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn projection(&self) -> &Projection {
        &self.projection
    }

    pub fn complement(&self) -> Self {
        let mask: Vec<bool> = self.mask.iter().map(|b| !b).collect();
        Self::from_mask(self.projection.shape(), &mask)
    }

    pub fn meet(&self, other: &Self) -> Self {
        let mask: Vec<bool> = self.mask.iter().zip(&other.mask).map(|(a, b)| *a && *b).collect();
        Self::from_mask(self.projection.shape(), &mask)
    }

    pub fn join(&self, other: &Self) -> Self {
        let mask: Vec<bool> = self.mask.iter().zip(&other.mask).map(|(a, b)| *a || *b).collect();
        Self::from_mask(self.projection.shape(), &mask)
    }

    pub fn is_zero(&self) -> bool {
        self.mask.iter().all(|b| !b)
    }

    pub fn is_one(&self) -> bool {
        self.mask.iter().all(|&b| b)
    }

    pub fn is_orthogonal(&self, other: &Self) -> bool {
        self.mask.iter().zip(&other.mask).all(|(a, b)| !(a & b))
    }

    /// All `2^k` central projections of a shape.
    pub fn enumerate(shape: &ModelShape) -> Vec<Self> {
        let k = shape.num_blocks();
        (0..1usize << k)
            .map(|bits| {
                let mask: Vec<bool> = (0..k).map(|b| bits >> b & 1 == 1).collect();
                Self::from_mask(shape, &mask)
            })
            .collect()
    }
}

impl AsRef<Element> for CentralProjection {
    fn as_ref(&self) -> &Element {
        self.projection.element()
    }
}

impl Deref for CentralProjection {
    type Target = Projection;
    fn deref(&self) -> &Projection {
        &self.projection
    }
}

impl Model {
    pub fn ortho(&self, p: &Projection) -> Projection {
        p.ortho()
    }

    /// `p ∨ q = (p + q)°`.
    pub fn join(&self, p: &Projection, q: &Projection) -> Result<Projection> {
        p.same_shape(q)?;
        self.carrier_relative_to(&(p.element() + q.element()), 1.0)
    }

    /// `p ∧ q = (p^⊥ ∨ q^⊥)^⊥`.
    pub fn meet(&self, p: &Projection, q: &Projection) -> Result<Projection> {
        Ok(self.join(&p.ortho(), &q.ortho())?.ortho())
    }

    pub fn join_all(&self, ps: &[Projection]) -> Result<Projection> {
        let mut sum = self.zero();
        for p in ps {
            self.check(p)?;
            sum = sum + p.element();
        }
        self.carrier_relative_to(&sum, 1.0)
    }

    pub fn meet_all(&self, ps: &[Projection]) -> Result<Projection> {
        let orthos: Vec<Projection> = ps.iter().map(Projection::ortho).collect();
        Ok(self.join_all(&orthos)?.ortho())
    }

    /// `pq = qp` within `τ_comm`.
    pub fn compatible(&self, p: &Projection, q: &Projection) -> Result<bool> {
        Ok(p.commutator_norm(q)? <= self.tol().comm)
    }

    /// `φ_p(q) = (pqp)°`.
    pub fn sasaki(&self, p: &Projection, q: &Projection) -> Result<Projection> {
        self.carrier_relative_to(&p.quad(q)?, 1.0)
    }

    /// `φ_p(q) = p ∧ (p^⊥ ∨ q)`, the lattice form of the Sasaki projection.
    pub fn sasaki_lattice(&self, p: &Projection, q: &Projection) -> Result<Projection> {
        let inner = self.join(&p.ortho(), q)?;
        self.meet(p, &inner)
    }

    /// Blockwise test: each block of `p` is within `τ_proj` of `0` or `1`.
    pub fn is_central(&self, p: &Projection) -> bool {
        self.central_mask(p).is_some()
    }

    fn central_mask(&self, p: &Projection) -> Option<Vec<bool>> {
        let shape = p.shape();
        let mut mask = Vec::with_capacity(shape.num_blocks());
        for b in 0..shape.num_blocks() {
            let block = p.block(b);
            let n = block.nrows();
            if block.norm() <= self.tol().proj {
                mask.push(false);
            } else if (&block - DMatrix::identity(n, n)).norm() <= self.tol().proj {
                mask.push(true);
            } else {
                return None;
            }
        }
        Some(mask)
    }

    pub fn as_central(&self, p: &Projection) -> Option<CentralProjection> {
        self.central_mask(p).map(|mask| CentralProjection::from_mask(self.shape(), &mask))
    }

    /// Centrality by commutator search against the matrix units of every
    /// block, kept as a cross-check of the blockwise test.
    pub fn is_central_by_commutators(&self, p: &Projection) -> Result<bool> {
        for x in self.symmetric_basis() {
            if !self.commutes(p, &x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The symmetric matrix units `E_ij + E_ji` of every block, a spanning
    /// set of the model.
    pub fn symmetric_basis(&self) -> Vec<Element> {
        let shape = self.shape();
        let n = shape.dim();
        let mut out = Vec::new();
        for r in shape.ranges() {
            for i in r.clone() {
                for j in i..r.end {
                    let mut m = DMatrix::zeros(n, n);
                    m[(i, j)] = 1.0;
                    m[(j, i)] = 1.0;
                    out.push(Element::from_raw(shape.clone(), m));
                }
            }
        }
        out
    }

    /// The atoms of the center, one per block.
    pub fn center_basis(&self) -> Vec<CentralProjection> {
        (0..self.shape().num_blocks()).map(|b| CentralProjection::atom(self.shape(), b)).collect()
    }

    /// `γ(a)`: the blocks on which the carrier of `a` is nonzero.
    pub fn central_cover(&self, a: &Element) -> Result<CentralProjection> {
        let c = self.carrier(a)?;
        Ok(self.projection_cover(&c))
    }

    /// `γ(p)` for a projection, read off the block ranks.
    pub fn projection_cover(&self, p: &Projection) -> CentralProjection {
        let mask: Vec<bool> = (0..self.shape().num_blocks()).map(|b| p.block(b).trace() > 0.5).collect();
        CentralProjection::from_mask(self.shape(), &mask)
    }

    /// Witnessing central family `c_i = γ(p_i)` if those are pairwise
    /// orthogonal.
    pub fn centrally_orthogonal(&self, ps: &[Projection]) -> Result<Option<Vec<CentralProjection>>> {
        let covers: Vec<CentralProjection> = ps.iter().map(|p| self.projection_cover(p)).collect();
        for i in 0..covers.len() {
            for j in (i + 1)..covers.len() {
                if !covers[i].is_orthogonal(&covers[j]) {
                    return Ok(None);
                }
            }
        }
        Ok(Some(covers))
    }

    /// `⋁ p_i = Σ p_i` for a centrally orthogonal family.
    pub fn co_join(&self, ps: &[Projection]) -> Result<Projection> {
        if self.centrally_orthogonal(ps)?.is_none() {
            return Err(Error::Precondition("family is not centrally orthogonal".into()));
        }
        let sum = ps.iter().fold(self.zero(), |acc, p| acc + p.element());
        self.settle(sum)
    }

    pub fn interval(&self, p: &Projection) -> Result<IntervalModel> {
        IntervalModel::new(self, p)
    }
}

/// The algebra `pAp`, realized as a smaller model through an isometry
/// `V` with `VV^T = p`: an element `a` with `pap = a` corresponds to
/// `V^T a V`.
#[derive(Debug, Clone)]
pub struct IntervalModel {
    top: Projection,
    inner: Model,
    /// `n × r` isometry, block-diagonal from inner blocks to outer blocks.
    isometry: DMatrix<f64>,
}

impl IntervalModel {
    fn new(outer: &Model, p: &Projection) -> Result<Self> {
        outer.check(p)?;
        let d = outer.eig(p)?;
        let shape = outer.shape();
        let ranks = p.block_ranks();
        let inner_blocks: Vec<usize> = ranks.iter().copied().filter(|&r| r > 0).collect();
        if inner_blocks.is_empty() {
            return Err(Error::DegenerateInterval);
        }
        let r: usize = inner_blocks.iter().sum();
        let mut isometry = DMatrix::zeros(shape.dim(), r);
        let mut col = 0;
        for b in 0..shape.num_blocks() {
            for pair in d.pairs.iter().filter(|pair| pair.block == b && pair.value > 0.5) {
                isometry.set_column(col, &pair.vector);
                col += 1;
            }
        }
        debug_assert_eq!(col, r);
        let inner = Model::with_tolerances(ModelShape::new(&inner_blocks)?, *outer.tol()).snapping(outer.snaps());
        let top = Projection::from_element_unchecked(Element::from_raw(
            shape.clone(),
            &isometry * isometry.transpose(),
        ));
        Ok(Self { top, inner, isometry })
    }

    pub fn top(&self) -> &Projection {
        &self.top
    }

    /// The model `pAp` in its own coordinates.
    pub fn inner(&self) -> &Model {
        &self.inner
    }

    pub fn contains(&self, a: &Element) -> bool {
        self.top.quad_unchecked(a).dist(a) <= self.inner.tol().proj * (1.0 + a.frobenius())
    }

    /// `V^T a V`.
    pub fn compress(&self, a: &Element) -> Result<Element> {
        if !self.contains(a) {
            return Err(Error::NotBelow);
        }
        let m = self.isometry.transpose() * a.matrix() * &self.isometry;
        Ok(Element::from_raw(self.inner.shape().clone(), m))
    }

    pub fn compress_projection(&self, q: &Projection) -> Result<Projection> {
        let c = self.compress(q)?;
        Ok(Projection::from_element_unchecked(c))
    }

    /// `V b V^T`.
    pub fn expand(&self, b: &Element) -> Element {
        let m = &self.isometry * b.matrix() * self.isometry.transpose();
        Element::from_raw(self.top.shape().clone(), m)
    }

    pub fn expand_projection(&self, q: &Projection) -> Projection {
        Projection::from_element_unchecked(self.expand(q))
    }

    /// `q^{⊥_p} = p - q`.
    pub fn ortho(&self, q: &Projection) -> Result<Projection> {
        if !self.contains(q) {
            return Err(Error::NotBelow);
        }
        Ok(Projection::from_element_unchecked(self.top.element() - q.element()))
    }

    /// The Sasaki projection `φ_q(r)` computed inside `pAp`.
    pub fn sasaki(&self, q: &Projection, r: &Projection) -> Result<Projection> {
        let qi = self.compress_projection(q)?;
        let ri = self.compress_projection(r)?;
        Ok(self.expand_projection(&self.inner.sasaki(&qi, &ri)?))
    }

    pub fn join(&self, q: &Projection, r: &Projection) -> Result<Projection> {
        let qi = self.compress_projection(q)?;
        let ri = self.compress_projection(r)?;
        Ok(self.expand_projection(&self.inner.join(&qi, &ri)?))
    }

    pub fn meet(&self, q: &Projection, r: &Projection) -> Result<Projection> {
        let qi = self.compress_projection(q)?;
        let ri = self.compress_projection(r)?;
        Ok(self.expand_projection(&self.inner.meet(&qi, &ri)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: f64 = 1e-10;

    fn m2() -> Model {
        Model::new(ModelShape::square(2).unwrap())
    }

    fn proj(rows: &[&[f64]]) -> Projection {
        Projection::new(Element::from_rows(rows, 1e-12).unwrap(), &Default::default()).unwrap()
    }

    fn e() -> Projection {
        proj(&[&[1.0, 0.0], &[0.0, 0.0]])
    }

    fn f() -> Projection {
        proj(&[&[0.5, 0.5], &[0.5, 0.5]])
    }

    #[test]
    fn joins_and_meets() {
        let m = m2();
        let p = f();
        assert!(m.join(&p, &m.zero_projection()).unwrap().dist(&p) < T);
        assert!(m.meet(&p, &m.one_projection()).unwrap().dist(&p) < T);
        let d1 = proj(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let d2 = proj(&[&[0.0, 0.0], &[0.0, 1.0]]);
        assert!(m.join(&d1, &d2).unwrap().dist(&m.one()) < T);
        assert!(m.join(&e(), &f()).unwrap().dist(&m.one()) < T);
        assert!(m.meet(&e(), &f()).unwrap().frobenius() < T);
    }

    #[test]
    fn compatibility() {
        let m = m2();
        assert!(m.compatible(&f(), &f().ortho()).unwrap());
        assert!(m.compatible(&f(), &m.one_projection()).unwrap());
        assert!(!m.compatible(&e(), &f()).unwrap());
    }

    #[test]
    fn sasaki_projection() {
        let m = m2();
        assert!(m.sasaki(&f(), &f()).unwrap().dist(&f()) < T);
        assert!(m.sasaki(&e(), &e().ortho()).unwrap().frobenius() < T);
        assert!(m.sasaki(&e(), &f()).unwrap().dist(&e()) < T);
        assert!(m.sasaki_lattice(&e(), &f()).unwrap().dist(&e()) < T);
    }

    #[test]
    fn center() {
        let m = m2();
        assert!(m.is_central(&m.one_projection()));
        assert!(m.is_central(&m.zero_projection()));
        assert!(!m.is_central(&e()));
        assert!(!m.is_central_by_commutators(&e()).unwrap());

        let m23 = Model::new(ModelShape::new(&[2, 3]).unwrap());
        let basis = m23.center_basis();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0].matrix().diagonal().as_slice(), &[1.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(basis[1].matrix().diagonal().as_slice(), &[0.0, 0.0, 1.0, 1.0, 1.0]);
        assert!(m23.is_central_by_commutators(&basis[0]).unwrap());
        assert_eq!(CentralProjection::enumerate(m23.shape()).len(), 4);
    }

    #[test]
    fn central_covers() {
        let m = m2();
        assert!(m.central_cover(&m.one()).unwrap().is_one());
        assert!(m.central_cover(&m.zero()).unwrap().is_zero());
        assert!(m.central_cover(&f()).unwrap().is_one());
        let m22 = Model::new(ModelShape::new(&[2, 2]).unwrap());
        let p = Projection::coordinate(m22.shape(), &[false, true, false, false]).unwrap();
        assert_eq!(m22.central_cover(&p).unwrap().mask(), &[true, false]);
    }

    #[test]
    fn central_orthogonality() {
        let m = m2();
        let single = m.centrally_orthogonal(&[f()]).unwrap().unwrap();
        assert!(f().is_below(&single[0], m.tol()));
        // the unit also witnesses a singleton family
        assert!(f().is_below(&m.one_projection(), m.tol()));
        assert!(m.centrally_orthogonal(&[e(), f()]).unwrap().is_none());

        let m22 = Model::new(ModelShape::new(&[2, 2]).unwrap());
        let p1 = Projection::coordinate(m22.shape(), &[true, false, false, false]).unwrap();
        let p2 = Projection::coordinate(m22.shape(), &[false, false, false, true]).unwrap();
        let w = m22.centrally_orthogonal(&[p1.clone(), p2.clone()]).unwrap().unwrap();
        assert_eq!(w[0].mask(), &[true, false]);
        assert_eq!(w[1].mask(), &[false, true]);
        let joined = m22.co_join(&[p1.clone(), p2.clone()]).unwrap();
        assert!(joined.dist(&m22.join(&p1, &p2).unwrap()) < T);
    }

    #[test]
    fn intervals() {
        let m = m2();
        let full = m.interval(&m.one_projection()).unwrap();
        assert_eq!(full.inner().shape(), m.shape());
        assert!(full.sasaki(&e(), &f()).unwrap().dist(&m.sasaki(&e(), &f()).unwrap()) < T);
        assert!(full.ortho(&m.one_projection()).unwrap().frobenius() < T);
        assert!(matches!(m.interval(&m.zero_projection()), Err(Error::DegenerateInterval)));

        let m3 = Model::new(ModelShape::square(3).unwrap());
        let p = Projection::coordinate(m3.shape(), &[true, true, false]).unwrap();
        let c = 0.6;
        let s = 0.8;
        let q = Projection::coordinate(m3.shape(), &[true, false, false]).unwrap();
        let r = m3
            .projection(
                m3.element(DMatrix::from_row_slice(3, 3, &[c * c, c * s, 0.0, c * s, s * s, 0.0, 0.0, 0.0, 0.0]))
                    .unwrap(),
            )
            .unwrap();
        let iv = m3.interval(&p).unwrap();
        assert_eq!(iv.inner().dim(), 2);
        let inside = iv.sasaki(&q, &r).unwrap();
        assert!(inside.dist(&m3.sasaki(&q, &r).unwrap()) < T);
        assert!(iv.ortho(&q).unwrap().dist(&(p.element() - q.element())) < T);
        assert!(matches!(iv.ortho(&m3.one_projection()), Err(Error::NotBelow)));
    }
}
