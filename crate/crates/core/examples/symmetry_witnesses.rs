//! Symmetries that exchange projections: the `efe`/`fef` exchange, Sasaki
//! and parallelogram exchanges, and a perspectivity turned into a chain.
//!
//! cargo run --example symmetry_witnesses

use synalg::random::{self, rng};
use synalg::{ExchangeWitness, Model, ModelShape};

fn main() -> synalg::Result<()> {
    let shape = ModelShape::new(&[3, 2])?;
    let m = Model::new(shape.clone());
    let mut r = rng(1);
    let e = random::projection_with_ranks(&mut r, &shape, &[1, 1])?;
    let f = random::projection_with_ranks(&mut r, &shape, &[2, 1])?;

    let s = m.exchange_efe_fef(&e, &f)?;
    println!("s(efe)s vs fef: {:.2e}", s.apply(&e.quad(&f)?).dist(&f.quad(&e)?));

    let w = m.sasaki_exchange(&e, &f)?;
    println!("sasaki exchange: ranks {} and {}, residual {:.2e}", w.e().rank(), w.f().rank(), w.residual());
    let w = m.parallelogram_exchange(&e, &f)?;
    println!("e - e∧f and e∨f - f: ranks {} and {}, residual {:.2e}", w.e().rank(), w.f().rank(), w.residual());

    // conjugate pairs are strongly perspective; lifting the complement
    // gives two symmetries carrying e to ses
    let t = random::symmetry(&mut r, &shape)?;
    let g = m.projection(t.apply(&e))?;
    let w = ExchangeWitness::new(t, e.clone(), g.clone(), &m)?;
    let pw = m.strong_perspectivity(&w)?;
    println!("common complement in [0, e∨ses]: residual {:.2e}", m.perspectivity_residuals(&pw)?.max());
    let (s1, s2) = m.perspective_to_chain(&m.lift_perspectivity(&pw)?)?;
    println!("s2 s1 e s1 s2 vs ses: {:.2e}", s2.apply(&s1.apply(&e)).dist(&g));

    // orthogonal exchanged pairs add up
    let m4 = Model::new(ModelShape::new(&[4, 4])?);
    let ws = random::exchanged_family(&mut r, &m4, 3)?;
    let fx = m4.family_additivity_detailed(&ws)?;
    println!("family of {} exchanged pairs joined by one symmetry", ws.len());
    for (name, v) in &fx.identities {
        println!("  {name:<18} {v:.2e}");
    }
    Ok(())
}
