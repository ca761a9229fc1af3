//! Spectral resolution, polar decomposition and the functional calculus
//! of one symmetric matrix.
//!
//! cargo run --example spectral_calculus

use synalg::io::format_element;
use synalg::{Element, Model, ModelShape};

fn main() -> synalg::Result<()> {
    let m = Model::new(ModelShape::square(3)?);
    let a = Element::from_rows(&[&[2.0, 1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, -1.0]], 1e-12)?;

    let res = m.spectral_resolution(&a)?;
    println!("spectrum in [{:.4}, {:.4}]", res.lower, res.upper);
    for j in &res.jumps {
        println!("  jump at {:>8.4}, rank {}", j.value, j.projection.rank());
    }
    // p_λ steps up at every eigenvalue
    for l in [-2.0, -1.0, 0.0, 1.0, 3.0] {
        println!("  rank p_{l} = {}", res.at(l).rank());
    }

    let (s, abs) = (m.signum(&a)?, m.abs(&a)?);
    println!("polar residual |a - sgn(a)|a|| = {:.2e}", (s.element() * &abs).dist(&a.to_enveloping()));
    println!("|a| =\n{}", format_element(&abs));

    let carrier = m.carrier(&a)?;
    println!("carrier rank {} (a is invertible: {})", carrier.rank(), carrier.rank() == m.dim());
    let inv = m.inverse(&a)?;
    println!("|a a^-1 - 1| = {:.2e}", (&a * &inv).dist(&m.one().to_enveloping()));

    let root = m.sqrt_pos(&a.square())?;
    println!("sqrt(a^2) equals |a|: {:.2e}", root.dist(&abs));
    Ok(())
}
