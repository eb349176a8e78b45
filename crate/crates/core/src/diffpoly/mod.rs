//! Exact-rational differential polynomials in the fields `b_i`, `c_i` and their
//! derivatives with respect to one distinguished time.
//!
//! A [`DiffPoly`] is a sparse term table `Monomial -> Rational` kept in
//! canonical form (no zero coefficients, graded-lex monomial order), so two
//! polynomials are equal iff their tables are identical.

mod calculus;
mod json;
mod monomial;
mod parse;
mod var;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use monomial::Monomial;
pub use parse::parse_field_var;
pub use var::{FieldKind, FieldVar, SymbolName};

/// Exact rational coefficient, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: FieldVar) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn b(index: u32) -> Self {
        Self::var(FieldVar::b(index))
    }

    pub fn c(index: u32) -> Self {
        Self::var(FieldVar::c(index))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// All variables occurring in the polynomial.
    pub fn vars(&self) -> BTreeSet<FieldVar> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    /// Underived generators whose derivatives of some order occur.
    pub fn generators(&self) -> BTreeSet<FieldVar> {
        self.terms
            .keys()
            .flat_map(|m| m.vars())
            .filter(|v| !v.is_constant())
            .map(FieldVar::base)
            .collect()
    }

    pub fn max_dorder(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::max_dorder)
            .max()
            .unwrap_or(0)
    }

    pub fn is_derivative_free(&self) -> bool {
        self.max_dorder() == 0
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Partial derivative with respect to the jet variable `v`.
    pub fn partial(&self, v: FieldVar) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((q, e)) = m.div_var(v) {
                out.add_term(q, c * int(e as i64));
            }
        }
        out
    }

    /// Coefficient table of `self` as a polynomial in `v`: exponent -> cofactor.
    pub(crate) fn collect_in(&self, v: FieldVar) -> BTreeMap<u32, DiffPoly> {
        let mut out: BTreeMap<u32, DiffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, e) = m.split_var(v);
            out.entry(e).or_default().add_term(q, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffPoly({self})")
    }
}

impl From<FieldVar> for DiffPoly {
    fn from(v: FieldVar) -> Self {
        Self::var(v)
    }
}

impl From<Rational> for DiffPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for DiffPoly {
    fn add_assign(&mut self, rhs: DiffPoly) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += &lhs;
        } else {
            for (m, c) in rhs.terms {
                self.add_term(m, c);
            }
        }
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl SubAssign for DiffPoly {
    fn sub_assign(&mut self, rhs: DiffPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(mut self) -> DiffPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut acc: std::collections::HashMap<Monomial, Rational> =
            std::collections::HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        DiffPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $assign:ident) => {
        impl $Trait<&DiffPoly> for &DiffPoly {
            type Output = DiffPoly;
            fn $method(self, rhs: &DiffPoly) -> DiffPoly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
        impl $Trait<DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $method(mut self, rhs: DiffPoly) -> DiffPoly {
                self.$assign(rhs);
                self
            }
        }
        impl $Trait<&DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $method(mut self, rhs: &DiffPoly) -> DiffPoly {
                self.$assign(rhs);
                self
            }
        }
        impl $Trait<DiffPoly> for &DiffPoly {
            type Output = DiffPoly;
            fn $method(self, rhs: DiffPoly) -> DiffPoly {
                let mut out = self.clone();
                out.$assign(&rhs);
                out
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

impl Mul<DiffPoly> for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        &self * &rhs
    }
}

impl Mul<&DiffPoly> for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        &self * rhs
    }
}

impl Mul<DiffPoly> for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        self * &rhs
    }
}

impl std::iter::Sum for DiffPoly {
    fn sum<I: Iterator<Item = DiffPoly>>(iter: I) -> Self {
        let mut out = DiffPoly::zero();
        for p in iter {
            out += p;
        }
        out
    }
}
