//! Meets, joins, Sasaki projections and central covers of projections in
//! `R^2 ⊕ R^2`.
//!
//! cargo run --example projection_lattice

use synalg::{Model, ModelShape, Projection};

fn ranks(p: &Projection) -> Vec<usize> {
    p.block_ranks()
}

fn main() -> synalg::Result<()> {
    let shape = ModelShape::new(&[2, 2])?;
    let m = Model::new(shape.clone());
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let line = |x: f64, y: f64, b: usize| {
        let mut d = nalgebra::DMatrix::zeros(4, 4);
        let o = 2 * b;
        d[(o, o)] = x * x;
        d[(o, o + 1)] = x * y;
        d[(o + 1, o)] = x * y;
        d[(o + 1, o + 1)] = y * y;
        m.projection(m.element(d)?)
    };
    let e = line(1.0, 0.0, 0)?;
    let f = line(h, h, 0)?;
    let g = line(0.0, 1.0, 1)?;

    println!("e∨f ranks {:?}, e∧f ranks {:?}", ranks(&m.join(&e, &f)?), ranks(&m.meet(&e, &f)?));
    println!("e, f compatible: {}", m.compatible(&e, &f)?);
    println!("sasaki(e, f) ranks {:?}, sasaki(e, g) ranks {:?}", ranks(&m.sasaki(&e, &f)?), ranks(&m.sasaki(&e, &g)?));

    // the orthomodular law: e ≤ p gives p = e ∨ (p ∧ e^⊥)
    let p = m.join(&e, &f)?;
    let back = m.join(&e, &m.meet(&p, &e.ortho())?)?;
    println!("orthomodular residual {:.2e}", back.dist(&p));

    for (name, x) in [("e", &e), ("g", &g), ("e+g", &m.join(&e, &g)?)] {
        let c = m.projection_cover(x);
        println!("central cover of {name}: blocks {:?}, central itself: {}", c.mask(), m.is_central(x));
    }
    Ok(())
}
