//! Lattice theory on a verified finite OML, evaluated by exhaustive search.

use super::{Check, El, FiniteOml, OrthoPoset, Verdict};
use crate::error::{Error, Result};

/// Compatibility, both Sasaki images and common complements of a pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairReport {
    pub compatible: bool,
    pub sasaki_pq: El,
    pub sasaki_qp: El,
    /// A common complement in the whole lattice.
    pub perspective: Option<El>,
    /// A common complement in `[0, p∨q]`.
    pub strongly_perspective: Option<El>,
}

/// The pieces of two orthogonal decompositions of the same element:
/// `p1 = p∧(p∧f)^⊥`, `p2 = p∧f`, `q1 = q∧e`, `q2 = q∧(q∧e)^⊥`,
/// `e1 = e∧(e∧q)^⊥`, `f2 = f∧(f∧p)^⊥`, with `v1` a common complement of
/// `p1`, `e1` in `[0, p1∨e1]` and `v2` one of `q2`, `f2` in `[0, q2∨f2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SixPiece {
    pub p: El,
    pub q: El,
    pub e: El,
    pub f: El,
    pub p1: El,
    pub p2: El,
    pub q1: El,
    pub q2: El,
    pub e1: El,
    pub f2: El,
    pub v1: Option<El>,
    pub v2: Option<El>,
}

/// The first failing tuple, rendered, or `Holds`.
fn verdict<T>(bad: Option<T>, show: impl Fn(T) -> String) -> Verdict {
    match bad {
        None => Verdict::Holds,
        Some(t) => Verdict::Fails(show(t)),
    }
}

impl FiniteOml {
    fn pairs(&self) -> impl Iterator<Item = (El, El)> + '_ {
        self.elements().flat_map(move |a| self.elements().map(move |b| (a, b)))
    }

    fn triples(&self) -> impl Iterator<Item = (El, El, El)> + '_ {
        self.pairs().flat_map(move |(a, b)| self.elements().map(move |c| (a, b, c)))
    }

    fn show(&self, xs: &[El]) -> String {
        xs.iter().map(|&x| self.name(x)).collect::<Vec<_>>().join(", ")
    }

    /// `φ_p q = p ∧ (p^⊥ ∨ q)`.
    pub fn sasaki(&self, p: El, q: El) -> El {
        self.meet(p, self.join(self.ortho(p), q))
    }

    /// `p = (p∧q) ∨ (p∧q^⊥)`, which in an OML is Mackey compatibility.
    pub fn compatible(&self, p: El, q: El) -> bool {
        self.join(self.meet(p, q), self.meet(p, self.ortho(q))) == p
    }

    /// Mackey compatibility by search: pairwise orthogonal `p1, q1, d`
    /// with `p = p1 ∨ d`, `q = q1 ∨ d`.
    pub fn compatible_by_search(&self, p: El, q: El) -> bool {
        let ds: Vec<El> = self.elements().filter(|&d| self.le(d, p) && self.le(d, q)).collect();
        ds.iter().any(|&d| {
            let p1s: Vec<El> = self.below(p).into_iter().filter(|&x| self.orthogonal(x, d) && self.join(x, d) == p).collect();
            let q1s: Vec<El> = self.below(q).into_iter().filter(|&x| self.orthogonal(x, d) && self.join(x, d) == q).collect();
            p1s.iter().any(|&a| q1s.iter().any(|&b| self.orthogonal(a, b)))
        })
    }

    /// Elements compatible with every element.
    pub fn center(&self) -> Vec<El> {
        self.elements().filter(|&c| self.elements().all(|x| self.compatible(c, x))).collect()
    }

    /// The set contains the bounds, is closed under `⊥`, `∧`, `∨`, and is
    /// distributive.
    pub fn is_boolean_subalgebra(&self, set: &[El]) -> Verdict {
        let has = |x: El| set.contains(&x);
        if !has(self.bottom()) || !has(self.top()) {
            return Verdict::Fails("missing a bound".into());
        }
        if let Some(&x) = set.iter().find(|&&x| !has(self.ortho(x))) {
            return Verdict::Fails(format!("not closed under ortho at {}", self.name(x)));
        }
        for &a in set {
            for &b in set {
                if !has(self.meet(a, b)) || !has(self.join(a, b)) {
                    return Verdict::Fails(format!("not closed at {}", self.show(&[a, b])));
                }
                for &c in set {
                    if self.meet(self.join(a, b), c) != self.join(self.meet(a, c), self.meet(b, c)) {
                        return Verdict::Fails(format!("not distributive at {}", self.show(&[a, b, c])));
                    }
                }
            }
        }
        Verdict::Holds
    }

    /// The center, with a check that it is a Boolean subalgebra.
    pub fn center_check(&self) -> Check {
        Check::exhaustive("center boolean", self.is_boolean_subalgebra(&self.center()))
    }

    /// The six listed properties of Sasaki maps, on all pairs or triples.
    /// Preservation of suprema is checked on binary joins and on `0`.
    pub fn sasaki_checks(&self) -> Vec<Check> {
        let phi = |p, q| self.sasaki(p, q);
        let show3 = |(p, q, r)| format!("p,q,r = {}", self.show(&[p, q, r]));
        let show2 = |(p, q)| format!("p,q = {}", self.show(&[p, q]));
        let i = self.triples().find(|&(p, q, r)| self.orthogonal(phi(p, q), r) != self.orthogonal(q, phi(p, r)));
        let ii = self.triples().find(|&(p, q, r)| self.le(q, r) && !self.le(phi(p, q), phi(p, r)));
        let iii = self.pairs().find(|&(p, q)| phi(p, phi(p, q)) != phi(p, q));
        let iv = self.pairs().find(|&(p, q)| {
            let c = self.compatible(p, q);
            c != (phi(p, q) == self.meet(p, q)) || c != self.le(phi(p, q), q)
        });
        let v = self.pairs().find(|&(p, q)| self.orthogonal(p, q) != (phi(p, q) == self.bottom()));
        let vi = self
            .triples()
            .find(|&(p, q, r)| phi(p, self.join(q, r)) != self.join(phi(p, q), phi(p, r)) || phi(p, self.bottom()) != self.bottom());
        vec![
            Check::exhaustive("sasaki (i)", verdict(i, show3)),
            Check::exhaustive("sasaki (ii)", verdict(ii, show3)),
            Check::exhaustive("sasaki (iii)", verdict(iii, show2)),
            Check::exhaustive("sasaki (iv)", verdict(iv, show2)),
            Check::exhaustive("sasaki (v)", verdict(v, show2)),
            Check::exhaustive("sasaki (vi)", verdict(vi, show3)),
        ]
    }

    /// The interval `[0, p]` with `q ↦ q^⊥ ∧ p`, and its embedding.
    pub fn interval(&self, p: El) -> Result<(FiniteOml, Vec<El>)> {
        let embed = self.below(p);
        let pos = |x: El| embed.iter().position(|&y| y == x).expect("closed under interval ortho");
        let names = embed.iter().map(|&x| self.name(x).to_string()).collect();
        let mut relations = Vec::new();
        for (i, &a) in embed.iter().enumerate() {
            for (j, &b) in embed.iter().enumerate() {
                if self.le(a, b) {
                    relations.push((i, j));
                }
            }
        }
        let ortho = embed.iter().map(|&x| Some(pos(self.meet(self.ortho(x), p)))).collect();
        let poset = OrthoPoset::new(names, &relations, ortho, Some(pos(self.bottom())), Some(pos(p)))?;
        Ok((FiniteOml::new(poset)?, embed))
    }

    /// The interval's own Sasaki map agrees with the ambient one:
    /// `φ^p_q r = φ_q r` and `φ^p_q(r^{⊥p}) = φ_q(r^⊥)` for `q, r <= p`.
    pub fn interval_sasaki_check(&self, p: El) -> Result<Vec<Check>> {
        let (inner, embed) = self.interval(p)?;
        let n = inner.len();
        let mut bad_i = None;
        let mut bad_ii = None;
        for q in 0..n {
            for r in 0..n {
                let (oq, or) = (embed[q], embed[r]);
                if bad_i.is_none() && embed[inner.sasaki(q, r)] != self.sasaki(oq, or) {
                    bad_i = Some((oq, or));
                }
                if bad_ii.is_none() && embed[inner.sasaki(q, inner.ortho(r))] != self.sasaki(oq, self.ortho(or)) {
                    bad_ii = Some((oq, or));
                }
            }
        }
        let show = |(q, r)| format!("p,q,r = {}", self.show(&[p, q, r]));
        Ok(vec![
            Check::exhaustive("interval sasaki", verdict(bad_i, show)),
            Check::exhaustive("interval ortho", verdict(bad_ii, show)),
        ])
    }

    /// `k <= top` with `a∧k = b∧k = 0` and `a∨k = b∨k = top`.
    pub fn is_common_complement_in(&self, a: El, b: El, k: El, top: El) -> bool {
        let z = self.bottom();
        self.le(k, top)
            && self.meet(a, k) == z
            && self.meet(b, k) == z
            && self.join(a, k) == top
            && self.join(b, k) == top
    }

    pub fn common_complement_in(&self, a: El, b: El, top: El) -> Option<El> {
        if !self.le(a, top) || !self.le(b, top) {
            return None;
        }
        self.elements().find(|&k| self.is_common_complement_in(a, b, k, top))
    }

    pub fn perspective(&self, p: El, q: El) -> Option<El> {
        self.common_complement_in(p, q, self.top())
    }

    pub fn strongly_perspective(&self, p: El, q: El) -> Option<El> {
        self.common_complement_in(p, q, self.join(p, q))
    }

    pub fn pair_report(&self, p: El, q: El) -> PairReport {
        PairReport {
            compatible: self.compatible(p, q),
            sasaki_pq: self.sasaki(p, q),
            sasaki_qp: self.sasaki(q, p),
            perspective: self.perspective(p, q),
            strongly_perspective: self.strongly_perspective(p, q),
        }
    }

    /// A common complement `k` of `e`, `f` in `[0, p]` lifts to the common
    /// complement `k ∨ p^⊥` in the whole lattice; all triples.
    pub fn relcompl_lift_check(&self) -> Check {
        let mut bad = None;
        'outer: for p in self.elements() {
            let below = self.below(p);
            for &e in &below {
                for &f in &below {
                    for &k in &below {
                        if self.is_common_complement_in(e, f, k, p)
                            && !self.is_common_complement_in(e, f, self.join(k, self.ortho(p)), self.top())
                        {
                            bad = Some((p, e, f, k));
                            break 'outer;
                        }
                    }
                }
            }
        }
        Check::exhaustive("complement lift", verdict(bad, |(p, e, f, k)| format!("p,e,f,k = {}", self.show(&[p, e, f, k]))))
    }

    /// `(p∨q)∧p^⊥ = φ_{p^⊥} q` is strongly perspective to `φ_q(p^⊥)`; all
    /// pairs.
    pub fn parallelogram_check(&self) -> Check {
        let bad = self.pairs().find(|&(p, q)| {
            let a = self.sasaki(self.ortho(p), q);
            let b = self.sasaki(q, self.ortho(p));
            a != self.meet(self.join(p, q), self.ortho(p)) || self.strongly_perspective(a, b).is_none()
        });
        Check::exhaustive("parallelogram", verdict(bad, |(p, q)| format!("p,q = {}", self.show(&[p, q]))))
    }

    /// Compatibility with `a` survives binary joins and meets.
    pub fn compatibility_closure_check(&self) -> Check {
        let bad = self.triples().find(|&(a, b, c)| {
            self.compatible(a, b)
                && self.compatible(a, c)
                && !(self.compatible(a, self.join(b, c)) && self.compatible(a, self.meet(b, c)))
        });
        Check::exhaustive("compat closure", verdict(bad, |(a, b, c)| format!("a,b,c = {}", self.show(&[a, b, c]))))
    }

    /// If one of `p, q, r` is compatible with the other two, both
    /// distributive laws hold for the triple.
    pub fn distributive_triples_check(&self) -> Check {
        let bad = self.triples().find(|&(p, q, r)| {
            let c = |x, y, z| self.compatible(x, y) && self.compatible(x, z);
            if !(c(p, q, r) || c(q, p, r) || c(r, p, q)) {
                return false;
            }
            let d1 = self.meet(self.join(p, q), r) == self.join(self.meet(p, r), self.meet(q, r));
            let d2 = self.join(self.meet(p, q), r) == self.meet(self.join(p, r), self.join(q, r));
            !(d1 && d2)
        });
        Check::exhaustive("distrib triples", verdict(bad, |(p, q, r)| format!("p,q,r = {}", self.show(&[p, q, r]))))
    }

    /// `p ⊕ q := p ∨ q` for `p ⊥ q`; the order it induces
    /// (`a <= b` iff `a ⊕ c = b` for some `c ⊥ a`) is the lattice order.
    pub fn effect_algebra_check(&self) -> Check {
        let bad = self.pairs().find(|&(a, b)| {
            let induced = self.elements().any(|c| self.orthogonal(a, c) && self.join(a, c) == b);
            induced != self.le(a, b)
        });
        Check::exhaustive("effect order", verdict(bad, |(a, b)| format!("a,b = {}", self.show(&[a, b]))))
    }

    /// `c ∧ p` is central in `[0, p]` for central `c`.
    pub fn interval_center_check(&self) -> Result<Check> {
        let center = self.center();
        for p in self.elements() {
            let (inner, embed) = self.interval(p)?;
            let inner_center: Vec<El> = inner.center().iter().map(|&x| embed[x]).collect();
            if let Some(&c) = center.iter().find(|&&c| !inner_center.contains(&self.meet(c, p))) {
                return Ok(Check::exhaustive("interval center", Verdict::Fails(format!("c,p = {}", self.show(&[c, p])))));
            }
        }
        Ok(Check::exhaustive("interval center", Verdict::Holds))
    }

    /// Every central `d` of every interval `[0, p]` is `c ∧ p` for a
    /// central `c`. A flag: finite OMLs need not have the property.
    pub fn relative_center_check(&self) -> Result<Check> {
        let center = self.center();
        for p in self.elements() {
            let (inner, embed) = self.interval(p)?;
            for d in inner.center() {
                if !center.iter().any(|&c| self.meet(c, p) == embed[d]) {
                    return Ok(Check::exhaustive(
                        "relative center",
                        Verdict::Fails(format!("p,d = {}", self.show(&[p, embed[d]]))),
                    ));
                }
            }
        }
        Ok(Check::exhaustive("relative center", Verdict::Holds))
    }

    /// The search-based Mackey test agrees with `p = (p∧q) ∨ (p∧q^⊥)`.
    pub fn mackey_check(&self) -> Check {
        let bad = self.pairs().find(|&(p, q)| self.compatible(p, q) != self.compatible_by_search(p, q));
        Check::exhaustive("mackey search", verdict(bad, |(p, q)| format!("p,q = {}", self.show(&[p, q]))))
    }

    /// Requires `p ⊥ q`, `e ⊥ f` and `p∨q = e∨f`.
    pub fn six_piece_decomposition(&self, p: El, q: El, e: El, f: El) -> Result<SixPiece> {
        if !self.orthogonal(p, q) || !self.orthogonal(e, f) || self.join(p, q) != self.join(e, f) {
            return Err(Error::Precondition("need p ⊥ q, e ⊥ f and p∨q = e∨f".into()));
        }
        let o = |x| self.ortho(x);
        let p2 = self.meet(p, f);
        let q1 = self.meet(q, e);
        let p1 = self.meet(p, o(p2));
        let q2 = self.meet(q, o(q1));
        let e1 = self.meet(e, o(q1));
        let f2 = self.meet(f, o(p2));
        let v1 = self.strongly_perspective(p1, e1);
        let v2 = self.strongly_perspective(q2, f2);
        Ok(SixPiece { p, q, e, f, p1, p2, q1, q2, e1, f2, v1, v2 })
    }

    /// The five clauses for one decomposition, by name.
    pub fn six_piece_clauses(&self, s: &SixPiece) -> Vec<(&'static str, bool)> {
        let split = |a: El, b: El, whole: El| self.orthogonal(a, b) && self.join(a, b) == whole;
        let (p1q1, p2q2) = (self.join(s.p1, s.q1), self.join(s.p2, s.q2));
        let iv = self.orthogonal(s.p1, s.q1)
            && s.v1.is_some_and(|v| self.is_common_complement_in(p1q1, s.e, v, self.join(p1q1, s.e)));
        let v = self.orthogonal(s.p2, s.q2)
            && s.v2.is_some_and(|v| self.is_common_complement_in(p2q2, s.f, v, self.join(p2q2, s.f)));
        vec![
            ("(i)", s.v1.is_some()),
            ("(ii)", s.v2.is_some()),
            (
                "(iii)",
                split(s.p1, s.p2, s.p) && split(s.q1, s.e1, s.e) && split(s.p2, s.f2, s.f) && split(s.q1, s.q2, s.q),
            ),
            ("(iv)", iv),
            ("(v)", v),
        ]
    }

    /// All admissible quadruples `(p, q, e, f)`; returns the check and the
    /// number of quadruples examined.
    pub fn six_piece_check(&self) -> (Check, usize) {
        let orth: Vec<(El, El)> = self.pairs().filter(|&(a, b)| self.orthogonal(a, b)).collect();
        let mut count = 0;
        for &(p, q) in &orth {
            for &(e, f) in &orth {
                if self.join(p, q) != self.join(e, f) {
                    continue;
                }
                count += 1;
                let s = self.six_piece_decomposition(p, q, e, f).expect("admissible");
                if let Some((clause, _)) = self.six_piece_clauses(&s).into_iter().find(|(_, ok)| !ok) {
                    let at = format!("{clause} at p,q,e,f = {}", self.show(&[p, q, e, f]));
                    return (Check::exhaustive("six pieces", Verdict::Fails(at)), count);
                }
            }
        }
        (Check::exhaustive("six pieces", Verdict::Holds), count)
    }

    /// Every exhaustive property check on this lattice, in a fixed order.
    pub fn theory_checks(&self) -> Result<Vec<Check>> {
        let mut out = self.sasaki_checks();
        out.push(self.mackey_check());
        out.push(self.compatibility_closure_check());
        out.push(self.distributive_triples_check());
        out.push(self.effect_algebra_check());
        out.push(self.center_check());
        out.push(self.interval_center_check()?);
        for p in self.elements() {
            for c in self.interval_sasaki_check(p)? {
                if !c.holds() {
                    out.push(c);
                }
            }
        }
        out.push(self.relcompl_lift_check());
        out.push(self.parallelogram_check());
        out.push(self.six_piece_check().0);
        Ok(out)
    }
}
