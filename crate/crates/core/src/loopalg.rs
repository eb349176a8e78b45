//! sl(2)-valued Laurent objects in the spectral parameter `λ`.
//!
//! Elements are stored in the component form `a σ3 + bp σ+ + cm σ−`; the 2×2
//! entries are never materialized. Infinite series are finite truncations that
//! remember which exponents are known: asking for a coefficient below the
//! truncation is a hard [`Error::DepthExhausted`].

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::diffpoly::{int, rat, DiffPoly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sl2Poly {
    pub a: DiffPoly,
    pub bp: DiffPoly,
    pub cm: DiffPoly,
}

impl Sl2Poly {
    pub fn new(a: DiffPoly, bp: DiffPoly, cm: DiffPoly) -> Self {
        Self { a, bp, cm }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn sigma3() -> Self {
        Self::new(DiffPoly::one(), DiffPoly::zero(), DiffPoly::zero())
    }

    pub fn sigma_plus() -> Self {
        Self::new(DiffPoly::zero(), DiffPoly::one(), DiffPoly::zero())
    }

    pub fn sigma_minus() -> Self {
        Self::new(DiffPoly::zero(), DiffPoly::zero(), DiffPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.bp.is_zero() && self.cm.is_zero()
    }

    pub fn components(&self) -> [&DiffPoly; 3] {
        [&self.a, &self.bp, &self.cm]
    }

    pub fn map(&self, f: impl Fn(&DiffPoly) -> DiffPoly) -> Self {
        Self::new(f(&self.a), f(&self.bp), f(&self.cm))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        self.map(|p| p.scale(s))
    }

    pub fn mul_poly(&self, p: &DiffPoly) -> Self {
        self.map(|q| q * p)
    }

    pub fn derive(&self) -> Self {
        self.map(DiffPoly::derive)
    }

    /// `[x, y]` with `[σ3, σ±] = ±2σ±` and `[σ+, σ−] = σ3`.
    pub fn commutator(&self, y: &Sl2Poly) -> Sl2Poly {
        let x = self;
        let a = &x.bp * &y.cm - &x.cm * &y.bp;
        let bp = (&x.a * &y.bp - &y.a * &x.bp).scale(&int(2));
        let cm = (&x.a * &y.cm - &y.a * &x.cm).scale(&int(-2));
        Sl2Poly::new(a, bp, cm)
    }

    /// Killing-type trace form `Tr(x y) = 2 a a' + b c' + c b'`.
    pub fn trace_with(&self, y: &Sl2Poly) -> DiffPoly {
        (&self.a * &y.a).scale(&int(2)) + &self.bp * &y.cm + &self.cm * &y.bp
    }
}

impl Add for &Sl2Poly {
    type Output = Sl2Poly;
    fn add(self, rhs: &Sl2Poly) -> Sl2Poly {
        Sl2Poly::new(&self.a + &rhs.a, &self.bp + &rhs.bp, &self.cm + &rhs.cm)
    }
}

impl Sub for &Sl2Poly {
    type Output = Sl2Poly;
    fn sub(self, rhs: &Sl2Poly) -> Sl2Poly {
        Sl2Poly::new(&self.a - &rhs.a, &self.bp - &rhs.bp, &self.cm - &rhs.cm)
    }
}

impl Neg for &Sl2Poly {
    type Output = Sl2Poly;
    fn neg(self) -> Sl2Poly {
        Sl2Poly::new(-&self.a, -&self.bp, -&self.cm)
    }
}

/// A gl(2) element `s·1 + A` with `A` traceless.
///
/// Products stay in this form through `A B = ½Tr(AB)·1 + ½[A, B]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Gl2 {
    pub scalar: DiffPoly,
    pub traceless: Sl2Poly,
}

impl Gl2 {
    pub fn identity() -> Self {
        Self {
            scalar: DiffPoly::one(),
            traceless: Sl2Poly::zero(),
        }
    }

    pub fn from_sl2(x: Sl2Poly) -> Self {
        Self {
            scalar: DiffPoly::zero(),
            traceless: x,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.traceless.is_zero()
    }

    pub fn mul(&self, rhs: &Gl2) -> Gl2 {
        let half = rat(1, 2);
        let scalar =
            &self.scalar * &rhs.scalar + self.traceless.trace_with(&rhs.traceless).scale(&half);
        let traceless = &(&rhs.traceless.mul_poly(&self.scalar)
            + &self.traceless.mul_poly(&rhs.scalar))
            + &self.traceless.commutator(&rhs.traceless).scale(&half);
        Gl2 { scalar, traceless }
    }

    pub fn add(&self, rhs: &Gl2) -> Gl2 {
        Gl2 {
            scalar: &self.scalar + &rhs.scalar,
            traceless: &self.traceless + &rhs.traceless,
        }
    }

    pub fn neg(&self) -> Gl2 {
        Gl2 {
            scalar: -&self.scalar,
            traceless: -&self.traceless,
        }
    }
}

/// Which projection to apply to a [`LaurentMatrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    Plus,
    Minus,
    R,
}

/// Finite-support Laurent object in `λ` with [`Sl2Poly`] coefficients.
///
/// `known_from = Some(f)` means exponents `< f` are unknown (the series was
/// truncated); `None` means every unstored exponent is exactly zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentMatrix {
    coeffs: BTreeMap<i32, Sl2Poly>,
    known_from: Option<i32>,
}

impl LaurentMatrix {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Exact Laurent polynomial from `(exponent, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (i32, Sl2Poly)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, x) in terms {
            out.add_at(e, &x);
        }
        out
    }

    /// Series whose coefficients below `λ^{-depth}` are unknown.
    pub fn truncated<I: IntoIterator<Item = (i32, Sl2Poly)>>(terms: I, depth: u32) -> Self {
        let mut out = Self::from_terms(terms);
        out.known_from = Some(-(depth as i32));
        out.coeffs.retain(|&e, _| e >= -(depth as i32));
        out
    }

    pub fn monomial(exponent: i32, x: Sl2Poly) -> Self {
        Self::from_terms([(exponent, x)])
    }

    fn add_at(&mut self, e: i32, x: &Sl2Poly) {
        let slot = self.coeffs.entry(e).or_default();
        *slot = &*slot + x;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// Validity depth: coefficients of `λ^e` are known for `e >= -depth`.
    /// `None` for exact Laurent polynomials. May be negative when even some
    /// non-negative exponents are unknown.
    pub fn depth(&self) -> Option<i64> {
        self.known_from.map(|f| -(f as i64))
    }

    pub fn is_exact(&self) -> bool {
        self.known_from.is_none()
    }

    pub fn is_known(&self, e: i32) -> bool {
        self.known_from.is_none_or(|f| e >= f)
    }

    pub fn coeff(&self, e: i32) -> Result<Sl2Poly> {
        if !self.is_known(e) {
            return Err(Error::DepthExhausted {
                exponent: e as i64,
                known_from: self.known_from.unwrap() as i64,
            });
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_default())
    }

    /// Stored (nonzero) coefficients in ascending exponent order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i32, &Sl2Poly)> + '_ {
        self.coeffs.iter().map(|(&e, x)| (e, x))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent that may carry a nonzero coefficient; `None` if the
    /// object is exactly zero.
    fn top(&self) -> Option<i32> {
        let stored = self.coeffs.keys().next_back().copied();
        match (stored, self.known_from) {
            (s, None) => s,
            (Some(s), Some(f)) => Some(s.max(f - 1)),
            (None, Some(f)) => Some(f - 1),
        }
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn map(&self, f: impl Fn(&Sl2Poly) -> Sl2Poly) -> Self {
        let mut out = Self {
            coeffs: BTreeMap::new(),
            known_from: self.known_from,
        };
        for (&e, x) in &self.coeffs {
            out.add_at(e, &f(x));
        }
        out
    }

    pub fn derive(&self) -> Self {
        self.map(Sl2Poly::derive)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        self.map(|x| x.scale(s))
    }

    fn combine_floor(a: Option<i32>, b: Option<i32>) -> Option<i32> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, None) | (None, x) => x,
        }
    }

    pub fn add(&self, rhs: &LaurentMatrix) -> LaurentMatrix {
        let known_from = Self::combine_floor(self.known_from, rhs.known_from);
        let mut out = Self {
            coeffs: self.coeffs.clone(),
            known_from,
        };
        for (&e, x) in &rhs.coeffs {
            out.add_at(e, x);
        }
        if let Some(f) = known_from {
            out.coeffs.retain(|&e, _| e >= f);
        }
        out
    }

    pub fn sub(&self, rhs: &LaurentMatrix) -> LaurentMatrix {
        self.add(&rhs.scale(&int(-1)))
    }

    /// `[X, Y]` by convolution over exponents; the result is known exactly
    /// where every contributing product is known.
    pub fn commutator(&self, rhs: &LaurentMatrix) -> LaurentMatrix {
        let (Some(top_x), Some(top_y)) = (self.top(), rhs.top()) else {
            return Self::zero();
        };
        let known_from = Self::combine_floor(
            self.known_from.map(|f| f + top_y),
            rhs.known_from.map(|f| f + top_x),
        );
        let mut out = Self {
            coeffs: BTreeMap::new(),
            known_from,
        };
        for (&i, x) in &self.coeffs {
            for (&j, y) in &rhs.coeffs {
                let e = i + j;
                if known_from.is_none_or(|f| e >= f) {
                    out.add_at(e, &x.commutator(y));
                }
            }
        }
        out
    }

    /// `S^k X = λ^k X`.
    pub fn shift(&self, k: i32) -> LaurentMatrix {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, x)| (e + k, x.clone()))
                .collect(),
            known_from: self.known_from.map(|f| f + k),
        }
    }

    pub fn project(&self, which: Projection) -> LaurentMatrix {
        match which {
            Projection::Plus => Self {
                coeffs: self
                    .coeffs
                    .range(0..)
                    .map(|(&e, x)| (e, x.clone()))
                    .collect(),
                known_from: self.known_from.filter(|&f| f > 0),
            },
            Projection::Minus => Self {
                coeffs: self
                    .coeffs
                    .range(..0)
                    .map(|(&e, x)| (e, x.clone()))
                    .collect(),
                known_from: self.known_from,
            },
            Projection::R => self
                .project(Projection::Plus)
                .sub(&self.project(Projection::Minus)),
        }
    }

    /// Coefficient of `λ^{-1}` in `Tr((S^j X) Y)`.
    pub fn trace_pair(&self, rhs: &LaurentMatrix, j: i32) -> Result<DiffPoly> {
        let shifted = self.shift(j);
        let target = -1;
        let mut out = DiffPoly::zero();
        // every (i, target - i) pair with both sides possibly nonzero must be known
        if let (Some(tx), Some(ty)) = (shifted.top(), rhs.top()) {
            if let Some(f) = shifted.known_from {
                if target - ty < f {
                    return Err(Error::DepthExhausted {
                        exponent: (target - ty - j) as i64,
                        known_from: (f - j) as i64,
                    });
                }
            }
            if let Some(f) = rhs.known_from {
                if target - tx < f {
                    return Err(Error::DepthExhausted {
                        exponent: (target - tx) as i64,
                        known_from: f as i64,
                    });
                }
            }
        }
        for (&i, x) in &shifted.coeffs {
            if let Some(y) = rhs.coeffs.get(&(target - i)) {
                out += x.trace_with(y);
            }
        }
        Ok(out)
    }
}

/// `-½ Res_λ λ^j Tr(L²)`, the Casimir-type functional `φ_j`.
pub fn casimir_phi(l: &LaurentMatrix, j: i32) -> Result<DiffPoly> {
    Ok(l.trace_pair(l, j)?.scale(&rat(-1, 2)))
}

impl Serialize for LaurentMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            depth: Option<i64>,
            coeffs: BTreeMap<String, &'a Sl2Poly>,
        }
        Repr {
            depth: self.depth(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, x)| (e.to_string(), x))
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for LaurentMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Repr {
            depth: Option<i64>,
            coeffs: BTreeMap<String, Sl2Poly>,
        }
        let r = Repr::deserialize(de)?;
        let mut out = LaurentMatrix::zero();
        for (e, x) in r.coeffs {
            let e: i32 = e.parse().map_err(D::Error::custom)?;
            out.add_at(e, &x);
        }
        out.known_from = r.depth.map(|d| -(d as i32));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> DiffPoly {
        s.parse().unwrap()
    }

    fn sl2(a: &str, b: &str, c: &str) -> Sl2Poly {
        Sl2Poly::new(p(a), p(b), p(c))
    }

    #[test]
    fn sl2_relations() {
        let s3 = Sl2Poly::sigma3();
        let sp = Sl2Poly::sigma_plus();
        let sm = Sl2Poly::sigma_minus();
        assert_eq!(s3.commutator(&sp), sl2("0", "2", "0"));
        assert_eq!(sp.commutator(&sm), s3);
        assert_eq!(s3.commutator(&sm), sl2("0", "0", "-2"));
        let x = sl2("b1*c2", "c1'", "3 - b2");
        assert!(x.commutator(&x).is_zero());
    }

    #[test]
    fn laurent_single_convolution() {
        let x = LaurentMatrix::monomial(1, Sl2Poly::sigma3());
        let y = LaurentMatrix::monomial(-1, sl2("0", "b1", "0"));
        let z = x.commutator(&y);
        assert_eq!(z, LaurentMatrix::monomial(0, sl2("0", "2*b1", "0")));
        assert!(y.commutator(&y).is_zero());
    }

    #[test]
    fn lax_times_series_at_minus_one() {
        // L = σ3 + ℓ1 λ^-1 + ℓ2 λ^-2 known to depth 2, L^(1) = λσ3 + ℓ1
        let l1 = sl2("a1", "b1", "c1");
        let l2 = sl2("a2", "b2", "c2");
        let l = LaurentMatrix::truncated(
            [(0, Sl2Poly::sigma3()), (-1, l1.clone()), (-2, l2.clone())],
            2,
        );
        let lk = LaurentMatrix::from_terms([(1, Sl2Poly::sigma3()), (0, l1.clone())]);
        let z = lk.commutator(&l);
        // [σ3, ℓ2] + [ℓ1, ℓ1] = 2 b2 σ+ − 2 c2 σ−
        assert_eq!(z.coeff(-1).unwrap(), sl2("0", "2*b2", "-2*c2"));
        assert_eq!(z.depth(), Some(1));
        assert!(z.coeff(-2).is_err());
    }

    #[test]
    fn projections() {
        let x = LaurentMatrix::from_terms([(-1, Sl2Poly::sigma3()), (-2, Sl2Poly::sigma_plus())]);
        let plus = x.shift(1).project(Projection::Plus);
        assert_eq!(plus, LaurentMatrix::monomial(0, Sl2Poly::sigma3()));
        let y = LaurentMatrix::from_terms([
            (2, sl2("b1", "0", "c1")),
            (0, sl2("1", "b2", "0")),
            (-3, sl2("0", "0", "c1'")),
        ]);
        let sum = y
            .project(Projection::Plus)
            .add(&y.project(Projection::Minus));
        assert_eq!(sum, y);
        assert_eq!(y.project(Projection::R).project(Projection::R), y);
    }

    #[test]
    fn trace_pairs() {
        let s3 = LaurentMatrix::monomial(0, Sl2Poly::sigma3());
        let s3m = LaurentMatrix::monomial(-1, Sl2Poly::sigma3());
        assert_eq!(s3.trace_pair(&s3m, 0).unwrap(), DiffPoly::from_int(2));
        let sp = LaurentMatrix::monomial(0, Sl2Poly::sigma_plus());
        for j in -2..3 {
            assert!(sp.trace_pair(&s3, j).unwrap().is_zero());
        }
    }

    #[test]
    fn casimir_phi_values() {
        let terms = [(0, Sl2Poly::sigma3()), (-1, sl2("a1", "b1", "c1"))];
        // Res Tr(L·L) picks Tr(σ3 ℓ1) twice: 4 a1
        let exact = LaurentMatrix::from_terms(terms.clone());
        assert_eq!(casimir_phi(&exact, 0).unwrap(), p("-2*a1"));
        assert_eq!(casimir_phi(&exact, 1).unwrap(), p("-a1^2 - b1*c1"));
        // as a series known to depth 1, λ^-1 of Tr(λL·L) needs ℓ2
        let series = LaurentMatrix::truncated(terms, 1);
        assert_eq!(casimir_phi(&series, 0).unwrap(), p("-2*a1"));
        assert!(matches!(
            casimir_phi(&series, 1),
            Err(Error::DepthExhausted { .. })
        ));
    }

    #[test]
    fn gl2_product_matches_pauli_algebra() {
        // σ+ σ− = (1 + σ3)/2
        let prod = Gl2::from_sl2(Sl2Poly::sigma_plus()).mul(&Gl2::from_sl2(Sl2Poly::sigma_minus()));
        assert_eq!(prod.scalar, DiffPoly::constant(rat(1, 2)));
        assert_eq!(prod.traceless, Sl2Poly::sigma3().scale(&rat(1, 2)));
        // σ3 σ3 = 1
        let sq = Gl2::from_sl2(Sl2Poly::sigma3()).mul(&Gl2::from_sl2(Sl2Poly::sigma3()));
        assert_eq!(sq, Gl2::identity());
    }
}
