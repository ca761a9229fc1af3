//! Generalized comparability: a central `h` and a symmetry `s` with
//! `s(eh)s ≤ fh` and `s f(1-h) s ≤ e(1-h)`.
//!
//! cargo run --example generalized_comparability

use synalg::random::{self, rng};
use synalg::{Model, ModelShape};

fn main() -> synalg::Result<()> {
    let shape = ModelShape::new(&[2, 3])?;
    let m = Model::new(shape.clone());
    let mut r = rng(3);
    let e = random::projection_with_ranks(&mut r, &shape, &[2, 1])?;
    let f = random::projection_with_ranks(&mut r, &shape, &[1, 2])?;

    let d = m.orthogonal_decomposition(&e, &f)?;
    println!("e = e1 + e2 with ranks {:?} + {:?}", d.e1.block_ranks(), d.e2.block_ranks());
    println!("f = f1 + f2 with ranks {:?} + {:?}", d.f1.block_ranks(), d.f2.block_ranks());
    println!("e2 and f2 unrelated: {}", !m.related(&d.e2, &d.f2));

    let c = m.generalized_comparability(&e, &f)?;
    let (upper, lower) = c.residuals(&m)?;
    println!("h covers blocks {:?}", c.h.mask());
    println!("inequality deficiencies {upper:.2e}, {lower:.2e}");

    // equal block ranks: a chain of reflections carries one to the other
    let g = random::projection_with_ranks(&mut r, &shape, &e.block_ranks())?;
    let w = m.equal_rank_chain(&e, &g)?;
    println!("chain of {} symmetries, residual {:.2e}", w.chain.len(), w.residual());
    match m.equal_rank_chain(&e, &f) {
        Err(err) => println!("e, f: {err}"),
        Ok(_) => unreachable!("block ranks differ"),
    }
    Ok(())
}
