//! Six-piece decompositions of random quadruples in `R^4`, turned into
//! symmetry chains: `p1∨q1 ∼ e` and `p2∨q2 ∼ f`.

use rand::Rng;

use synalg::oml::{ProjectionOml, EXHAUSTIVE_CAP};
use synalg::random::{self, rng, SeededRng};
use synalg::{Error, Model, ModelShape, PerspectivityWitness, Projection, Result};

const TOL: f64 = 1e-8;

/// `p ⊥ q`, `e ⊥ f`, `p∨q = e∨f = t` for a random `t` of rank 2 to 4.
fn quadruple(m: &Model, r: &mut SeededRng) -> Result<[Projection; 4]> {
    let rank = r.random_range(2..=4);
    let t = random::projection_with_rank(r, m.shape(), rank)?;
    let p = random::subprojection(r, m, &t)?;
    let e = random::subprojection(r, m, &t)?;
    let q = m.projection(t.element() - p.element())?;
    let f = m.projection(t.element() - e.element())?;
    Ok([p, q, e, f])
}

/// `s2 s1 a s1 s2` against `b`, with the chain read off the common
/// complement `v` of `a` and `b` in `[0, a∨b]`.
fn chain_residual(m: &Model, a: &Projection, b: &Projection, v: &Projection) -> Result<f64> {
    let pw = PerspectivityWitness { e: a.clone(), f: b.clone(), complement: v.clone(), ambient: Some(m.join(a, b)?) };
    let lifted = m.lift_perspectivity(&pw)?;
    let (s1, s2) = m.perspective_to_chain(&lifted)?;
    Ok(s2.apply(&s1.apply(a)).dist(b))
}

#[test]
fn six_pieces_give_symmetry_chains() {
    let m = Model::new(ModelShape::square(4).unwrap());
    let mut r = rng(17);
    let (mut tested, mut too_big) = (0, 0);
    for _ in 0..60 {
        let [p, q, e, f] = quadruple(&m, &mut r).unwrap();
        let po = match ProjectionOml::close(&m, &[p.clone(), q.clone(), e.clone(), f.clone()], EXHAUSTIVE_CAP) {
            Ok(po) => po,
            Err(Error::ClosureExplosion { .. }) => {
                too_big += 1;
                continue;
            }
            Err(err) => panic!("{err}"),
        };
        let el = |x: &Projection| po.element_of(&m, x).unwrap();
        let s = po.oml.six_piece_decomposition(el(&p), el(&q), el(&e), el(&f)).unwrap();
        assert!(po.oml.six_piece_clauses(&s).iter().all(|(_, ok)| *ok), "{:?}", po.oml.six_piece_clauses(&s));

        let pr = |x| po.projection(x).clone();
        let p1q1 = m.join(&pr(s.p1), &pr(s.q1)).unwrap();
        let p2q2 = m.join(&pr(s.p2), &pr(s.q2)).unwrap();
        let v1 = pr(s.v1.unwrap());
        let v2 = pr(s.v2.unwrap());
        // the lattice complements are complements of p1∨q1, e (and p2∨q2, f)
        assert!(chain_residual(&m, &p1q1, &e, &v1).unwrap() <= TOL);
        assert!(chain_residual(&m, &p2q2, &f, &v2).unwrap() <= TOL);
        // and the pieces split p, q, e, f
        assert!((pr(s.p1).element() + pr(s.p2).element()).dist(&p) <= TOL);
        assert!((pr(s.q1).element() + pr(s.q2).element()).dist(&q) <= TOL);
        assert_eq!(p1q1.block_ranks(), e.block_ranks());
        assert_eq!(p2q2.block_ranks(), f.block_ranks());
        tested += 1;
    }
    assert!(tested >= 30, "only {tested} quadruples had small closures ({too_big} exploded)");
}
