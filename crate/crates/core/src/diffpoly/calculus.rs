use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::{int, DiffPoly, FieldVar, Monomial, Rational};
use crate::error::{Error, Result};

impl DiffPoly {
    /// Total derivative with respect to the distinguished time (Leibniz rule,
    /// raising the derivative order of every non-constant generator).
    pub fn derive(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in self.terms() {
            for &(v, e) in m.factors() {
                let Some(dv) = v.derivative() else { continue };
                let (mut q, _) = m.div_var(v).expect("factor present");
                q.mul_var(dv, 1);
                out.add_term(q, c * int(e as i64));
            }
        }
        out
    }

    pub fn derive_n(&self, times: u32) -> DiffPoly {
        let mut out = self.clone();
        for _ in 0..times {
            if out.is_zero() {
                break;
            }
            out = out.derive();
        }
        out
    }

    /// Replaces every occurrence of a ruled generator `u^(l)` by the `l`-th
    /// derivative of its rule. Rules must be keyed by underived generators.
    pub fn substitute(&self, rules: &BTreeMap<FieldVar, DiffPoly>) -> DiffPoly {
        debug_assert!(rules.keys().all(|v| v.dorder == 0));
        if rules.is_empty() {
            return self.clone();
        }
        let mut cache: HashMap<FieldVar, DiffPoly> = HashMap::new();
        let mut out = DiffPoly::zero();
        for (m, c) in self.terms() {
            let mut kept = Monomial::one();
            let mut acc = DiffPoly::constant(c.clone());
            for &(v, e) in m.factors() {
                match rules.get(&v.base()) {
                    Some(rule) if !v.is_constant() => {
                        let image = cache
                            .entry(v)
                            .or_insert_with(|| rule.derive_n(v.dorder))
                            .clone();
                        acc = acc * image.pow(e);
                        if acc.is_zero() {
                            break;
                        }
                    }
                    _ => kept.mul_var(v, e),
                }
            }
            if !acc.is_zero() {
                out += acc * DiffPoly::term(Rational::one(), kept);
            }
        }
        out
    }

    /// Variational derivative `sum_l (-D)^l dP/du^(l)` with respect to the
    /// generator `target` (its derivative order is ignored).
    pub fn euler_derivative(&self, target: FieldVar) -> DiffPoly {
        let u = target.base();
        let top = self
            .vars()
            .into_iter()
            .filter(|v| v.base() == u)
            .map(|v| v.dorder)
            .max();
        let Some(top) = top else {
            return DiffPoly::zero();
        };
        let mut out = DiffPoly::zero();
        for l in 0..=top {
            let part = self.partial(u.with_dorder(l));
            if part.is_zero() {
                continue;
            }
            let d = part.derive_n(l);
            if l % 2 == 0 {
                out += d;
            } else {
                out -= d;
            }
        }
        out
    }

    /// True iff every variational derivative vanishes.
    pub fn is_variationally_trivial(&self) -> bool {
        self.generators()
            .into_iter()
            .all(|u| self.euler_derivative(u).is_zero())
    }

    pub fn equal_mod_total_derivative(&self, other: &DiffPoly) -> bool {
        (self - other).is_variationally_trivial()
    }

    /// Returns `q` with `D q = self` and zero constant term.
    pub fn formal_integrate(&self) -> Result<DiffPoly> {
        let fail = || Error::NotATotalDerivative {
            residual: self.to_string(),
        };
        if !self.constant_term().is_zero() || !self.is_variationally_trivial() {
            return Err(fail());
        }
        let mut rest = self.clone();
        let mut primitive = DiffPoly::zero();
        while !rest.is_zero() {
            let top = rest
                .vars()
                .into_iter()
                .filter(|v| !v.is_constant())
                .max_by_key(|v| v.rank_key())
                .ok_or_else(fail)?;
            if top.dorder == 0 {
                return Err(fail());
            }
            let collected = rest.collect_in(top);
            if collected.keys().any(|&e| e > 1) {
                return Err(fail());
            }
            let coeff = collected.get(&1).ok_or_else(fail)?;
            let below = top.with_dorder(top.dorder - 1);
            if coeff
                .vars()
                .iter()
                .any(|w| !w.is_constant() && w.rank_key() > below.rank_key())
            {
                return Err(fail());
            }
            let mut chunk = DiffPoly::zero();
            for (m, c) in coeff.terms() {
                let e = m.exponent(below);
                let mut m = m.clone();
                m.mul_var(below, 1);
                chunk.add_term(m, c / int(e as i64 + 1));
            }
            rest -= chunk.derive();
            primitive += chunk;
        }
        Ok(primitive)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::rat;

    fn p(s: &str) -> DiffPoly {
        s.parse().unwrap()
    }

    #[test]
    fn leibniz_on_product() {
        assert_eq!(p("b1*c1").derive(), p("b1'*c1 + b1*c1'"));
    }

    #[test]
    fn derivative_kills_constants() {
        assert!(p("5").derive().is_zero());
        assert!(DiffPoly::zero().derive().is_zero());
    }

    #[test]
    fn second_derivative_bookkeeping() {
        let d = p("b1").derive_n(2);
        assert_eq!(d, DiffPoly::var(FieldVar::b(1).with_dorder(2)));
    }

    #[test]
    fn params_are_constants() {
        let params = std::collections::BTreeSet::from(["e".to_string()]);
        let q = DiffPoly::parse_with_params("e*b1s", &params).unwrap();
        let dq = DiffPoly::parse_with_params("e*b1s'", &params).unwrap();
        assert_eq!(q.derive(), dq);
    }

    #[test]
    fn substitute_commutes_with_derivation() {
        let mut rules = BTreeMap::new();
        rules.insert(FieldVar::b(2), p("1/2*b1'"));
        assert_eq!(p("b2*c1").substitute(&rules), p("1/2*b1'*c1"));
        assert_eq!(p("b2'").substitute(&rules), p("1/2*b1''"));
    }

    #[test]
    fn substitute_absent_and_identity() {
        let q = p("b1^2*c1'' - 3*c2");
        let mut rules = BTreeMap::new();
        rules.insert(FieldVar::b(7), p("c3"));
        assert_eq!(q.substitute(&rules), q);
        let mut id = BTreeMap::new();
        id.insert(FieldVar::b(1), p("b1"));
        assert_eq!(q.substitute(&id), q);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(p("b1*c1''").euler_derivative(FieldVar::c(1)), p("b1''"));
        let h = p("b1*c1'' + c1*b1'' - 2*b1^2*c1^2").scale(&rat(1, 16));
        assert_eq!(
            h.euler_derivative(FieldVar::c(1)),
            p("1/8*b1'' - 1/4*b1^2*c1")
        );
    }

    #[test]
    fn euler_kills_total_derivative() {
        let q = p("b1^2*c1' + 3*b2*c1''*c2 - b1");
        let dq = q.derive();
        for u in [
            FieldVar::b(1),
            FieldVar::c(1),
            FieldVar::b(2),
            FieldVar::c(2),
        ] {
            assert!(dq.euler_derivative(u).is_zero(), "{u}");
        }
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(p("b1'*c1 + b1*c1'").formal_integrate().unwrap(), p("b1*c1"));
        assert!(DiffPoly::zero().formal_integrate().unwrap().is_zero());
        assert!(matches!(
            p("b1*c1").formal_integrate(),
            Err(Error::NotATotalDerivative { .. })
        ));
        assert!(p("2").formal_integrate().is_err());
    }

    #[test]
    fn integrate_mixed_orders() {
        let q = p("b1*c1''*b2' - 1/3*c1^3*b1' + b2''");
        assert_eq!(q.derive().formal_integrate().unwrap(), q);
    }

    #[test]
    fn mod_total_derivative() {
        let q = p("b1*c1^2 - b2''");
        assert!(q.equal_mod_total_derivative(&(&q + &p("b1*c1").derive())));
        assert!(p("b1*c1''").equal_mod_total_derivative(&p("c1*b1''")));
        assert!(!p("b1^2*c1^2").equal_mod_total_derivative(&DiffPoly::zero()));
    }
}
