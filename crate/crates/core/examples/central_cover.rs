//! The central cover `γp` reached as a join of conjugates `sqs` of
//! subprojections `q ≤ p`, and central projections as exactly those that
//! are unrelated to their complements.
//!
//! cargo run --example central_cover

use synalg::random::{self, rng};
use synalg::{CentralProjection, Model, ModelShape};

fn main() -> synalg::Result<()> {
    let shape = ModelShape::new(&[2, 3, 1])?;
    let m = Model::new(shape.clone());
    let mut r = rng(5);
    for ranks in [[1, 0, 0], [0, 1, 1], [1, 2, 0]] {
        let p = random::projection_with_ranks(&mut r, &shape, &ranks)?;
        let cs = m.cover_from_conjugates(&p, &mut r, 100)?;
        println!(
            "ranks {ranks:?}: γp covers blocks {:?}, reached after {} conjugates (saturated: {})",
            cs.gamma.mask(),
            cs.samples,
            cs.saturated(&m)
        );
    }

    for h in CentralProjection::enumerate(&shape).iter().take(4) {
        println!("central {:?}: related to its complement: {}", h.mask(), m.related(h, &h.complement()));
    }
    let p = random::projection_with_ranks(&mut r, &shape, &[1, 1, 0])?;
    println!("non-central p related to p^⊥: {}", m.related(&p, &p.ortho()));
    Ok(())
}
