//! Finite orthomodular lattices: axioms of the standard families, lattice
//! theory checks, and agreement with the projection lattice of `R^3`.

use super::{trials, Checks, SuiteConfig};
use crate::error::Result;
use crate::forge::PerspectivityWitness;
use crate::model::Model;
use crate::oml::{FiniteOml, OmlReport, OrthoPoset, ProjectionOml, Verdict, EXHAUSTIVE_CAP};
use crate::projection::Projection;
use crate::random::{self, SeededRng};
use crate::report::Report;
use crate::shape::ModelShape;

const SUITE: &str = "oml";
const MATRIX_TRIALS: usize = 10;

/// An ortholattice that is not orthomodular: the hexagon `0 < a < b < 1`,
/// `0 < b' < a' < 1`.
pub const HEXAGON: &str = "\
elem 0 a b a' b' 1
bottom 0
top 1
leq a b
leq b' a'
ortho a a'
ortho b b'
ortho 0 1
";

pub(super) fn run(cfg: &SuiteConfig) -> Report {
    let mut report = Report::new();
    let mut c = Checks { suite: SUITE, report: &mut report };
    fixtures(&mut c);
    let matrix_cfg = SuiteConfig { trials: cfg.trials.min(MATRIX_TRIALS), ..cfg.clone() };
    let m3 = Model::with_tolerances(ModelShape::square(3).expect("valid shape"), cfg.tol);
    report.merge(trials(&matrix_cfg, SUITE, |_, rng, c, t| six_pieces_in_matrices(&m3, rng, c, t % 2 == 0)));
    report
}

fn axioms(c: &mut Checks<'_>, label: &str, r: &OmlReport) {
    for check in &r.checks {
        c.flag(&format!("{label}.{}", check.name), check.holds());
    }
}

fn fixtures(c: &mut Checks<'_>) {
    for n in 1..=4 {
        let r = FiniteOml::boolean(n).verify();
        axioms(c, &format!("boolean{n}"), &r);
        c.flag(&format!("boolean{n}.distributive"), r.distributive.holds());
    }
    for n in [2, 3] {
        let r = FiniteOml::mo(n).verify();
        axioms(c, &format!("mo{n}"), &r);
        c.flag(&format!("mo{n}.not_distributive"), !r.distributive.holds());
        c.flag(&format!("mo{n}.modular"), r.modular.holds());
    }
    match OrthoPoset::parse(HEXAGON) {
        Ok(p) => {
            let r = p.verify();
            let om = r.checks.iter().find(|x| x.name == "orthomodular");
            c.flag("hexagon.not_orthomodular", om.is_some_and(|x| matches!(x.verdict, Verdict::Fails(_))) && !r.is_oml());
        }
        Err(_) => c.flag("hexagon.not_orthomodular", false),
    }
    for (label, l) in [("boolean3", FiniteOml::boolean(3)), ("mo2", FiniteOml::mo(2)), ("mo7", FiniteOml::mo(7))] {
        match l.theory_checks() {
            Ok(checks) => {
                for check in checks {
                    c.flag(&format!("{label}.{}", check.name), check.holds());
                }
            }
            Err(_) => c.flag(&format!("{label}.theory"), false),
        }
    }
    let mo7 = FiniteOml::mo(7);
    let (_, quadruples) = mo7.six_piece_check();
    c.flag("mo7.six_pieces_sixteen_elements", mo7.len() == 16 && quadruples > 0);
}

/// An admissible quadruple in `R^3`: `p ⊥ q`, `e ⊥ f`, `p∨q = e∨f`, with
/// either a plane (`q`, `f` lines) or the whole space (`q = p^⊥`,
/// `f = e^⊥`) as the common join. Both close to 12 elements.
fn quadruple(m: &Model, rng: &mut SeededRng, plane: bool) -> Result<[Projection; 4]> {
    let p = random::projection_with_rank(rng, m.shape(), 1)?;
    let q = if plane { random::rank_one_below(rng, m, &p.ortho())?.expect("p^⊥ is nonzero") } else { p.ortho() };
    let top = m.join(&p, &q)?;
    let e = random::rank_one_below(rng, m, &top)?.expect("join is nonzero");
    let f = m.settle(top.element() - e.element())?;
    Ok([p, q, e, f])
}

/// The six-piece decomposition computed in the closure lattice agrees
/// with the same meets in matrices, and its perspectivity witnesses are
/// common complements in the matrix model.
fn six_pieces_in_matrices(m: &Model, rng: &mut SeededRng, c: &mut Checks<'_>, plane: bool) -> Result<()> {
    let tol = m.tol().proj;
    let [p, q, e, f] = quadruple(m, rng, plane)?;
    let po = ProjectionOml::close(m, &[p.clone(), q.clone(), e.clone(), f.clone()], EXHAUSTIVE_CAP)?;
    let el = |x: &Projection| po.element_of(m, x).expect("generators are in the closure");
    let s = po.oml.six_piece_decomposition(el(&p), el(&q), el(&e), el(&f))?;

    let p2 = m.meet(&p, &f)?;
    let q1 = m.meet(&q, &e)?;
    let p1 = m.meet(&p, &p2.ortho())?;
    let q2 = m.meet(&q, &q1.ortho())?;
    let e1 = m.meet(&e, &q1.ortho())?;
    let f2 = m.meet(&f, &p2.ortho())?;
    let pairs = [(s.p1, &p1), (s.p2, &p2), (s.q1, &q1), (s.q2, &q2), (s.e1, &e1), (s.f2, &f2)];
    let agree = pairs.iter().fold(0.0f64, |w, (x, y)| w.max(po.projection(*x).dist(y)));
    c.record("six_pieces_matrix_agree", agree, tol);
    c.flag("six_pieces_matrix_clauses", po.oml.six_piece_clauses(&s).iter().all(|(_, ok)| *ok));

    let mut worst = 0.0f64;
    for (v, a, b) in [(s.v1, m.join(&p1, &q1)?, &e), (s.v2, m.join(&p2, &q2)?, &f)] {
        let Some(v) = v else {
            worst = f64::INFINITY;
            continue;
        };
        let ambient = m.join(&a, b)?;
        let pw = PerspectivityWitness { e: a, f: b.clone(), complement: po.projection(v).clone(), ambient: Some(ambient) };
        worst = worst.max(m.perspectivity_residuals(&pw)?.max());
    }
    c.record("six_pieces_matrix_perspectivity", worst, tol);
    c.flag("six_pieces_closure_size", po.oml.len() <= EXHAUSTIVE_CAP);
    Ok(())
}
