use std::cmp::Ordering;
use std::fmt;

use super::var::FieldVar;

/// Product of generator powers, factors sorted by [`FieldVar`] order with no
/// zero exponents. The empty product is the unit monomial.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial {
    factors: Vec<(FieldVar, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: FieldVar) -> Self {
        Self {
            factors: vec![(v, 1)],
        }
    }

    pub fn from_factors<I: IntoIterator<Item = (FieldVar, u32)>>(factors: I) -> Self {
        let mut m = Self::one();
        for (v, e) in factors {
            m.mul_var(v, e);
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(FieldVar, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: FieldVar) -> u32 {
        match self.factors.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => self.factors[i].1,
            Err(_) => 0,
        }
    }

    pub fn mul_var(&mut self, v: FieldVar, e: u32) {
        if e == 0 {
            return;
        }
        match self.factors.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => self.factors[i].1 += e,
            Err(i) => self.factors.insert(i, (v, e)),
        }
    }

    /// Divides out one power of `v`; returns the previous exponent.
    pub(crate) fn div_var(&self, v: FieldVar) -> Option<(Monomial, u32)> {
        let i = self.factors.binary_search_by(|(w, _)| w.cmp(&v)).ok()?;
        let e = self.factors[i].1;
        let mut out = self.clone();
        if e == 1 {
            out.factors.remove(i);
        } else {
            out.factors[i].1 -= 1;
        }
        Some((out, e))
    }

    /// Removes `v` entirely; returns the quotient and the exponent removed.
    pub(crate) fn split_var(&self, v: FieldVar) -> (Monomial, u32) {
        match self.factors.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => {
                let mut out = self.clone();
                let (_, e) = out.factors.remove(i);
                (out, e)
            }
            Err(_) => (self.clone(), 0),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    pub fn vars(&self) -> impl Iterator<Item = FieldVar> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    pub fn max_dorder(&self) -> u32 {
        self.factors
            .iter()
            .map(|(v, _)| v.dorder)
            .max()
            .unwrap_or(0)
    }
}

/// Graded lexicographic: total degree first, then the factor lists compared
/// lexicographically.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
