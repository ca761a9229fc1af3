//! Finite sublattices of the projection lattice of a matrix model.

use super::{El, FiniteOml, OrthoPoset};
use crate::error::{Error, Result};
use crate::model::Model;
use crate::projection::Projection;

/// A finite OML together with the projection each element stands for.
#[derive(Debug, Clone)]
pub struct ProjectionOml {
    pub oml: FiniteOml,
    pub projections: Vec<Projection>,
}

impl ProjectionOml {
    /// Closes `ps ∪ {0, 1}` under `⊥`, `∧` and `∨`, failing once the
    /// closure exceeds `cap` elements. Generators are named `g0, g1, ...`
    /// (unless they coincide with an earlier element), closure elements
    /// `c0, c1, ...`.
    pub fn close(model: &Model, ps: &[Projection], cap: usize) -> Result<Self> {
        let mut elems: Vec<Projection> = vec![model.zero_projection(), model.one_projection()];
        let mut names = vec!["0".to_string(), "1".to_string()];
        let find = |elems: &[Projection], p: &Projection| elems.iter().position(|q| model.same(p, q));
        for (i, p) in ps.iter().enumerate() {
            model.check(p)?;
            if find(&elems, p).is_none() {
                elems.push(p.clone());
                names.push(format!("g{i}"));
            }
        }
        let mut fresh = 0;
        let mut push = |elems: &mut Vec<Projection>, names: &mut Vec<String>, p: Projection| -> Result<()> {
            if find(elems, &p).is_none() {
                if elems.len() >= cap {
                    return Err(Error::ClosureExplosion { cap });
                }
                elems.push(p);
                names.push(format!("c{fresh}"));
                fresh += 1;
            }
            Ok(())
        };
        // saturate: every pass applies all operations to all current pairs
        let mut done = 0;
        while done < elems.len() {
            let upto = elems.len();
            for i in 0..upto {
                let o = model.ortho(&elems[i]);
                push(&mut elems, &mut names, o)?;
                for j in 0..upto {
                    if i.max(j) < done || j < i {
                        continue;
                    }
                    let m = model.meet(&elems[i], &elems[j])?;
                    push(&mut elems, &mut names, m)?;
                    let jn = model.join(&elems[i], &elems[j])?;
                    push(&mut elems, &mut names, jn)?;
                }
            }
            done = upto;
        }
        let n = elems.len();
        let mut relations = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && model.below(&elems[a], &elems[b]) {
                    relations.push((a, b));
                }
            }
        }
        let ortho: Vec<Option<El>> = elems.iter().map(|p| find(&elems, &model.ortho(p))).collect();
        let poset = OrthoPoset::new(names, &relations, ortho, Some(0), Some(1))?;
        let oml = FiniteOml::new(poset)?;
        Ok(Self { oml, projections: elems })
    }

    /// The element standing for `p`, if `p` is in the closure.
    pub fn element_of(&self, model: &Model, p: &Projection) -> Option<El> {
        self.projections.iter().position(|q| model.same(p, q))
    }

    pub fn projection(&self, x: El) -> &Projection {
        &self.projections[x]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Element;
    use crate::random;
    use crate::shape::ModelShape;

    #[test]
    fn complementary_pair_is_boolean() {
        let m = Model::new(ModelShape::square(3).unwrap());
        let p = random::projection_with_rank(&mut random::rng(1), m.shape(), 1).unwrap();
        let po = ProjectionOml::close(&m, &[p], 64).unwrap();
        assert_eq!(po.oml.len(), 4);
        assert!(po.oml.verify().distributive.holds());
    }

    #[test]
    fn incompatible_lines_give_mo2() {
        let m = Model::new(ModelShape::square(2).unwrap());
        let e = m.projection(Element::diag(m.shape(), &[1.0, 0.0]).unwrap()).unwrap();
        let f = m.projection(Element::from_rows(&[&[0.5, 0.5], &[0.5, 0.5]], 1e-12).unwrap()).unwrap();
        let po = ProjectionOml::close(&m, &[e, f], 64).unwrap();
        assert_eq!(po.oml.len(), 6);
        let r = po.oml.verify();
        assert!(r.is_oml() && !r.distributive.holds());
    }

    #[test]
    fn commuting_family_is_boolean() {
        let m = Model::new(ModelShape::new(&[2, 2]).unwrap());
        let ps: Vec<Projection> = [[true, false, false, false], [true, true, false, false], [false, false, true, false]]
            .iter()
            .map(|pat| Projection::coordinate(m.shape(), pat).unwrap())
            .collect();
        let po = ProjectionOml::close(&m, &ps, 64).unwrap();
        assert!(po.oml.verify().distributive.holds());
    }

    #[test]
    fn explosion_is_reported() {
        let m = Model::new(ModelShape::square(3).unwrap());
        let mut r = random::rng(4);
        let ps: Vec<Projection> = (0..3).map(|_| random::projection_with_rank(&mut r, m.shape(), 1).unwrap()).collect();
        assert!(matches!(ProjectionOml::close(&m, &ps, 64), Err(Error::ClosureExplosion { cap: 64 })));
    }
}
