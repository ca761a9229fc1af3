//! Cyclic Jacobi eigensolver for real symmetric matrices.
//!
//! Every spectral operation in the crate goes through [`eig_sym`]. The
//! solver works block by block, so eigenvectors are supported on a single
//! block and every spectral function of an element stays exactly
//! block-diagonal.

use nalgebra::{DMatrix, DVector};

use crate::element::Element;
use crate::error::{Error, Result};

/// Relative off-diagonal Frobenius mass at which a sweep loop stops.
pub const JACOBI_TOL: f64 = 1e-14;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues (unsorted) and eigenvector columns of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct JacobiResult {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
    pub sweeps: usize,
}

fn off_diagonal_mass(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes a symmetric matrix with threshold cyclic Jacobi rotations.
///
/// Converges when the off-diagonal Frobenius mass drops below
/// `JACOBI_TOL * |a|_F`. The input is assumed symmetric; only the
/// symmetrized part is used.
pub fn jacobi(m: &DMatrix<f64>) -> Result<JacobiResult> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "jacobi needs a square matrix");
    let mut a = (m + m.transpose()) * 0.5;
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = a.norm();
    if n <= 1 || scale == 0.0 {
        return Ok(JacobiResult { values: a.diagonal().iter().copied().collect(), vectors: v, sweeps: 0 });
    }
    let target = JACOBI_TOL * scale;

    for sweep in 0..MAX_SWEEPS {
        let off = off_diagonal_mass(&a);
        if off <= target {
            return Ok(JacobiResult { values: a.diagonal().iter().copied().collect(), vectors: v, sweeps: sweep });
        }
        // early sweeps only rotate the large entries
        let threshold = if sweep < 3 { 0.2 * off / (n * n) as f64 } else { 0.0 };

        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                // negligible against both diagonal entries: drop it
                if sweep > 3 && app + 100.0 * apq.abs() == app && aqq + 100.0 * apq.abs() == aqq {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                if apq.abs() <= threshold {
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS, off: off_diagonal_mass(&a) })
}

/// One eigenpair of an element. The vector has full length but is
/// supported on `block` only.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: f64,
    pub block: usize,
    pub vector: DVector<f64>,
}

/// Eigenpairs of an element in ascending order of eigenvalue.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub pairs: Vec<EigenPair>,
    shape: crate::ModelShape,
}

impl EigenDecomposition {
    pub fn values(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    pub fn min(&self) -> f64 {
        self.pairs.first().map_or(0.0, |p| p.value)
    }

    pub fn max(&self) -> f64 {
        self.pairs.last().map_or(0.0, |p| p.value)
    }

    /// max |eigenvalue|, the order-unit norm.
    pub fn spectral_radius(&self) -> f64 {
        self.pairs.iter().fold(0.0f64, |m, p| m.max(p.value.abs()))
    }

    pub fn shape(&self) -> &crate::ModelShape {
        &self.shape
    }

    /// Functional calculus: `sum_i f(lambda_i) v_i v_i^T`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Element {
        self.sum_where(|_, pair| f(pair.value))
    }

    /// `sum_i w(i, pair_i) v_i v_i^T`, accumulated block by block.
    pub fn sum_where(&self, w: impl Fn(usize, &EigenPair) -> f64) -> Element {
        let n = self.shape.dim();
        let mut out = DMatrix::zeros(n, n);
        for (i, pair) in self.pairs.iter().enumerate() {
            let weight = w(i, pair);
            if weight == 0.0 {
                continue;
            }
            let r = self.shape.range(pair.block);
            let local = pair.vector.rows(r.start, r.len());
            let outer = local * local.transpose() * weight;
            let mut view = out.view_mut((r.start, r.start), (r.len(), r.len()));
            view += outer;
        }
        Element::from_raw(self.shape.clone(), out)
    }

    /// `Q diag(lambda) Q^T`.
    pub fn reconstruct(&self) -> Element {
        self.apply(|x| x)
    }
}

/// Eigendecomposition of an element, computed block by block.
pub fn eig_sym(a: &Element) -> Result<EigenDecomposition> {
    let shape = a.shape().clone();
    let n = shape.dim();
    let mut pairs = Vec::with_capacity(n);
    for (b, r) in shape.ranges().enumerate() {
        let res = jacobi(&a.block(b))?;
        for (k, &value) in res.values.iter().enumerate() {
            let mut vector = DVector::zeros(n);
            vector.rows_mut(r.start, r.len()).copy_from(&res.vectors.column(k));
            pairs.push(EigenPair { value, block: b, vector });
        }
    }
    pairs.sort_by(|x, y| x.value.total_cmp(&y.value).then(x.block.cmp(&y.block)));
    Ok(EigenDecomposition { pairs, shape })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ModelShape;

    #[test]
    fn identity_and_diagonal() {
        let one = Element::identity(&ModelShape::square(3).unwrap());
        let d = eig_sym(&one).unwrap();
        assert!(d.values().iter().all(|&v| v == 1.0));

        let shape = ModelShape::square(2).unwrap();
        let a = Element::diag(&shape, &[3.0, -1.0]).unwrap();
        let d = eig_sym(&a).unwrap();
        assert_eq!(d.values(), vec![-1.0, 3.0]);
        assert_eq!(d.pairs[0].vector.as_slice(), &[0.0, 1.0]);
        assert_eq!(d.pairs[1].vector.as_slice(), &[1.0, 0.0]);
    }

    #[test]
    fn two_by_two_characteristic_polynomial() {
        // lambda^2 = 1/2 for (1/2)[[1,1],[1,-1]]
        let a = Element::from_rows(&[&[0.5, 0.5], &[0.5, -0.5]], 1e-12).unwrap();
        let d = eig_sym(&a).unwrap();
        let r = 0.5f64.sqrt();
        assert!((d.values()[0] + r).abs() < 1e-15);
        assert!((d.values()[1] - r).abs() < 1e-15);
    }

    #[test]
    fn matches_nalgebra_on_dense_input() {
        let n = 7;
        let m = DMatrix::from_fn(n, n, |i, j| ((i * 7 + j * 3) % 11) as f64 - 5.0 + if i == j { 0.3 } else { 0.0 });
        let m = (&m + m.transpose()) * 0.5;
        let res = jacobi(&m).unwrap();
        let mut ours = res.values.clone();
        ours.sort_by(f64::total_cmp);
        let oracle = nalgebra::SymmetricEigen::new(m.clone());
        let mut theirs: Vec<f64> = oracle.eigenvalues.iter().copied().collect();
        theirs.sort_by(f64::total_cmp);
        for (x, y) in ours.iter().zip(&theirs) {
            assert!((x - y).abs() < 1e-12 * m.norm());
        }
        let recon = &res.vectors * DMatrix::from_diagonal(&DVector::from_vec(res.values.clone())) * res.vectors.transpose();
        assert!((recon - &m).norm() < 1e-12 * m.norm());
        let orth = res.vectors.transpose() * &res.vectors - DMatrix::identity(n, n);
        assert!(orth.norm() < 1e-13);
    }

    #[test]
    fn block_eigenvectors_stay_in_their_block() {
        let a = Element::from_blocks(
            &[
                DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, -1.0]),
                DMatrix::from_row_slice(1, 1, &[5.0]),
            ],
            1e-12,
        )
        .unwrap();
        let d = eig_sym(&a).unwrap();
        for pair in &d.pairs {
            let r = a.shape().range(pair.block);
            for i in 0..a.dim() {
                if !r.contains(&i) {
                    assert_eq!(pair.vector[i], 0.0);
                }
            }
        }
        assert!(d.reconstruct().dist(&a) < 1e-13);
    }

    #[test]
    fn repeated_eigenvalues() {
        let m = DMatrix::from_row_slice(3, 3, &[2.0, 1.0, 1.0, 1.0, 2.0, 1.0, 1.0, 1.0, 2.0]);
        let res = jacobi(&m).unwrap();
        let mut vals = res.values.clone();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
        assert!((vals[2] - 4.0).abs() < 1e-14);
    }
}
