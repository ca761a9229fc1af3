//! Seeded generators for elements, projections and symmetries.
//!
//! All randomness comes from Xoshiro256++ seeded through `seed_from_u64`,
//! so runs reproduce across platforms.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::eigen::eig_sym;
use crate::element::Element;
use crate::error::Result;
use crate::forge::ExchangeWitness;
use crate::lattice::CentralProjection;
use crate::model::Model;
use crate::projection::{Projection, Symmetry};
use crate::shape::ModelShape;

pub type SeededRng = Xoshiro256PlusPlus;

pub fn rng(seed: u64) -> SeededRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Seed for trial `trial` of suite `suite`, independent of execution order.
pub fn derive_seed(seed: u64, suite: &str, trial: u64) -> u64 {
    // FNV-1a over the suite name, then two splitmix64 rounds
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in suite.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    splitmix(splitmix(seed ^ h).wrapping_add(trial))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Entries uniform in `[-1, 1]` on every block, then symmetrized.
pub fn symmetric<R: Rng>(rng: &mut R, shape: &ModelShape) -> Element {
    let n = shape.dim();
    let mut m = DMatrix::zeros(n, n);
    for r in shape.ranges() {
        for i in r.clone() {
            for j in r.clone() {
                m[(i, j)] = rng.random_range(-1.0..=1.0);
            }
        }
    }
    Element::from_raw(shape.clone(), m)
}

/// `a^2` for a random symmetric `a`.
pub fn positive<R: Rng>(rng: &mut R, shape: &ModelShape) -> Element {
    symmetric(rng, shape).square()
}

/// The positive spectral projection of a random symmetric element.
pub fn projection<R: Rng>(rng: &mut R, shape: &ModelShape) -> Result<Projection> {
    let a = symmetric(rng, shape);
    let d = eig_sym(&a)?;
    Ok(Projection::from_element_unchecked(d.apply(|x| if x > 0.0 { 1.0 } else { 0.0 })))
}

/// A random projection with the given rank in every block.
pub fn projection_with_ranks<R: Rng>(rng: &mut R, shape: &ModelShape, ranks: &[usize]) -> Result<Projection> {
    assert_eq!(ranks.len(), shape.num_blocks());
    let a = symmetric(rng, shape);
    let d = eig_sym(&a)?;
    // the top ranks[b] eigenvectors of each block
    let mut keep = vec![false; d.pairs.len()];
    for (b, &r) in ranks.iter().enumerate() {
        assert!(r <= shape.blocks()[b], "rank exceeds block size");
        let idx: Vec<usize> = (0..d.pairs.len()).filter(|&i| d.pairs[i].block == b).collect();
        for &i in idx.iter().rev().take(r) {
            keep[i] = true;
        }
    }
    Ok(Projection::from_element_unchecked(d.sum_where(|i, _| if keep[i] { 1.0 } else { 0.0 })))
}

/// A random projection of total rank `r`, spread over random blocks.
pub fn projection_with_rank<R: Rng>(rng: &mut R, shape: &ModelShape, r: usize) -> Result<Projection> {
    let mut ranks = vec![0; shape.num_blocks()];
    let mut left = r.min(shape.dim());
    while left > 0 {
        let b = rng.random_range(0..shape.num_blocks());
        if ranks[b] < shape.blocks()[b] {
            ranks[b] += 1;
            left -= 1;
        }
    }
    projection_with_ranks(rng, shape, &ranks)
}

/// `2p - 1` for a random projection `p`.
pub fn symmetry<R: Rng>(rng: &mut R, shape: &ModelShape) -> Result<Symmetry> {
    Ok(Symmetry::from_projection(&projection(rng, shape)?))
}

/// A uniformly random unit vector supported on block `b`.
pub fn unit_vector<R: Rng>(rng: &mut R, shape: &ModelShape, b: usize) -> DVector<f64> {
    let r = shape.range(b);
    loop {
        let mut v = DVector::zeros(shape.dim());
        for i in r.clone() {
            v[i] = rng.random_range(-1.0..=1.0);
        }
        let norm = v.norm();
        if norm > 1e-3 && norm <= 1.0 {
            return v / norm;
        }
    }
}

/// The reflection `1 - 2vv^T` for a unit vector supported on one block.
pub fn householder(shape: &ModelShape, v: &DVector<f64>) -> Symmetry {
    let n = shape.dim();
    let m = DMatrix::identity(n, n) - v * v.transpose() * 2.0;
    Symmetry::from_element_unchecked(Element::from_raw(shape.clone(), m))
}

/// A Householder reflection in a random block.
pub fn reflection<R: Rng>(rng: &mut R, shape: &ModelShape) -> Symmetry {
    let b = rng.random_range(0..shape.num_blocks());
    householder(shape, &unit_vector(rng, shape, b))
}

pub fn central<R: Rng>(rng: &mut R, shape: &ModelShape) -> CentralProjection {
    let mask: Vec<bool> = (0..shape.num_blocks()).map(|_| rng.random_bool(0.5)).collect();
    CentralProjection::from_mask(shape, &mask)
}

/// A random subprojection of `p`: a random projection of the interval
/// model `pAp`, expanded back.
pub fn subprojection<R: Rng>(rng: &mut R, model: &Model, p: &Projection) -> Result<Projection> {
    if model.is_zero(p) {
        return Ok(model.zero_projection());
    }
    let iv = model.interval(p)?;
    let q = projection(rng, iv.inner().shape())?;
    Ok(iv.expand_projection(&q))
}

/// A rank-one subprojection of `p` in a random block where `p` is nonzero.
pub fn rank_one_below<R: Rng>(rng: &mut R, model: &Model, p: &Projection) -> Result<Option<Projection>> {
    if model.is_zero(p) {
        return Ok(None);
    }
    let iv = model.interval(p)?;
    let inner = iv.inner().shape();
    let b = rng.random_range(0..inner.num_blocks());
    let v = unit_vector(rng, inner, b);
    let q = Projection::from_element_unchecked(Element::from_raw(inner.clone(), &v * v.transpose()));
    Ok(Some(iv.expand_projection(&q)))
}

/// Up to `k` exchanged pairs `(e_i, f_i)` with `(e_i)` and `(f_i)`
/// orthogonal families and every `e_i ⊥ f_j`.
///
/// Each block contributes disjoint pairs `(u, w)` of vectors from a random
/// orthonormal basis; a pair goes to a random member of the family, which
/// gets `e_i = Σ uu^T`, `f_i = Σ ww^T` and the symmetry
/// `1 - Σ (u - w)(u - w)^T` swapping each `u` with its `w`. Members that
/// received no pair are dropped.
pub fn exchanged_family<R: Rng>(rng: &mut R, model: &Model, k: usize) -> Result<Vec<ExchangeWitness>> {
    let shape = model.shape();
    let d = eig_sym(&symmetric(rng, shape))?;
    let n = shape.dim();
    let mut parts = vec![(DMatrix::<f64>::zeros(n, n), DMatrix::<f64>::zeros(n, n), DMatrix::<f64>::zeros(n, n)); k];
    let mut used = vec![false; k];
    for b in 0..shape.num_blocks() {
        let vs: Vec<&DVector<f64>> = d.pairs.iter().filter(|p| p.block == b).map(|p| &p.vector).collect();
        for pair in vs.chunks_exact(2) {
            let i = rng.random_range(0..k);
            let (u, w) = (pair[0], pair[1]);
            let diff = u - w;
            parts[i].0 += u * u.transpose();
            parts[i].1 += w * w.transpose();
            parts[i].2 += &diff * diff.transpose();
            used[i] = true;
        }
    }
    parts
        .into_iter()
        .zip(used)
        .filter(|(_, u)| *u)
        .map(|((e, f, x), _)| {
            let e = Projection::from_element_unchecked(Element::from_raw(shape.clone(), e));
            let f = Projection::from_element_unchecked(Element::from_raw(shape.clone(), f));
            let s = model.symmetry(Element::from_raw(shape.clone(), DMatrix::identity(n, n) - x))?;
            ExchangeWitness::new(s, e, f, model)
        })
        .collect()
}
