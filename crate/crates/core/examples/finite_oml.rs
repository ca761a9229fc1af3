//! Finite orthomodular lattices: axioms, Sasaki projections, perspectivity
//! and the closure of a few projections of `R^3`.
//!
//! cargo run --example finite_oml

use synalg::oml::{FiniteOml, OrthoPoset, ProjectionOml, EXHAUSTIVE_CAP};
use synalg::random::{self, rng};
use synalg::{Model, ModelShape};

const HEXAGON: &str = "\
elem 0 a b a' b' 1
bottom 0
top 1
leq a b
leq b' a'
ortho a a'
ortho b b'
ortho 0 1
";

fn main() -> synalg::Result<()> {
    let mo2 = FiniteOml::mo(2);
    println!("{}", mo2.verify());
    let (a, b) = (mo2.element("a")?, mo2.element("b")?);
    let r = mo2.pair_report(a, b);
    println!("a, b compatible: {}, sasaki(a, b) = {}", r.compatible, mo2.name(r.sasaki_pq));
    println!("common complement of a, b: {:?}", r.perspective.map(|x| mo2.name(x)));

    let hexagon = OrthoPoset::parse(HEXAGON)?.verify();
    println!("hexagon is an OML: {}", hexagon.is_oml());

    let mo7 = FiniteOml::mo(7);
    let (check, n) = mo7.six_piece_check();
    println!("six pieces on {} elements: {} over {n} quadruples", mo7.len(), if check.holds() { "holds" } else { "fails" });

    // the sublattice of R^3 generated by two lines and their orthogonal
    // planes; three generic lines would generate far more
    let m = Model::new(ModelShape::square(3)?);
    let mut rg = rng(2);
    let p = random::projection_with_rank(&mut rg, m.shape(), 1)?;
    let e = random::projection_with_rank(&mut rg, m.shape(), 1)?;
    match ProjectionOml::close(&m, &[p.ortho(), p, e.ortho(), e], EXHAUSTIVE_CAP) {
        Ok(po) => println!("closure of p, p^⊥, e, e^⊥: {} elements, OML: {}", po.oml.len(), po.oml.verify().is_oml()),
        Err(e) => println!("closure too large: {e}"),
    }
    Ok(())
}
