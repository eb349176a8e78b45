//! Expected values for the worked examples plus the algebraic property
//! bodies. Shared by the core test targets and the CLI acceptance gate.
#![allow(dead_code)]

use std::collections::BTreeMap;

use fnrlax_core::diffpoly::parse_field_var;
use fnrlax_core::{
    rat, DiffPoly, FieldVar, LaurentMatrix, Monomial, PdeSystem, Projection, Sl2Poly,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn p(s: &str) -> DiffPoly {
    s.parse().unwrap()
}

pub fn field(s: &str) -> FieldVar {
    parse_field_var(s).unwrap()
}

/// `λ`-polynomial matrix from `(exponent, a, b, c)` rows.
pub fn matrix(rows: &[(i32, &str, &str, &str)]) -> LaurentMatrix {
    LaurentMatrix::from_terms(
        rows.iter()
            .map(|&(e, a, b, c)| (e, Sl2Poly::new(p(a), p(b), p(c)))),
    )
}

/// `(label, k, n, V_k^(n))`.
pub fn lax_cases() -> Vec<(&'static str, u32, u32, LaurentMatrix)> {
    let alpha0 = p("2*b1*c1' - 2*b1'*c1 - 4*b2*c2 - b1^2*c1^2").scale(&rat(1, 8));
    let beta0 = p("b2' - c2*b1^2 - b2*c1*b1").scale(&rat(1, 2));
    let gamma0 = p("c2' + b2*c1^2 + b1*c2*c1").scale(&rat(-1, 2));
    let v2_4 = LaurentMatrix::from_terms([
        (4, Sl2Poly::new(p("1"), p("0"), p("0"))),
        (3, Sl2Poly::new(p("0"), p("b1"), p("c1"))),
        (2, Sl2Poly::new(p("-1/2*b1*c1"), p("b2"), p("c2"))),
        (
            1,
            Sl2Poly::new(p("-1/2*b2*c1 - 1/2*b1*c2"), p("1/2*b1'"), p("-1/2*c1'")),
        ),
        (0, Sl2Poly::new(alpha0, beta0, gamma0)),
    ]);
    vec![
        (
            "V_1^(1)",
            1,
            1,
            matrix(&[(1, "1", "0", "0"), (0, "0", "b1", "c1")]),
        ),
        (
            "V_1^(2)",
            1,
            2,
            matrix(&[
                (2, "1", "0", "0"),
                (1, "0", "b1", "c1"),
                (0, "-1/2*b1*c1", "1/2*b1'", "-1/2*c1'"),
            ]),
        ),
        (
            "V_2^(1)",
            2,
            1,
            matrix(&[(1, "1", "0", "0"), (0, "0", "b1", "c1")]),
        ),
        (
            "V_2^(2)",
            2,
            2,
            matrix(&[
                (2, "1", "0", "0"),
                (1, "0", "b1", "c1"),
                (0, "-1/2*b1*c1", "b2", "c2"),
            ]),
        ),
        ("V_2^(4)", 2, 4, v2_4),
    ]
}

/// `(field, rhs)` pairs of a PDE system.
pub type Rules = &'static [(&'static str, &'static str)];

/// Per `k`, every nonzero `(u, v, P[u, v])`.
pub type BracketList = &'static [(u32, &'static [(&'static str, &'static str, &'static str)])];

pub const NLS: Rules = &[("b1", "1/2*b1'' - b1^2*c1"), ("c1", "-1/2*c1'' + c1^2*b1")];

pub const DUAL_NLS: Rules = &[
    ("b1", "2*b2"),
    ("c1", "-2*c2"),
    ("b2", "b1' + b1^2*c1"),
    ("c2", "c1' - c1^2*b1"),
];

pub const CMKDV: Rules = &[
    ("b1", "1/4*b1''' - 3/2*b1*c1*b1'"),
    ("c1", "1/4*c1''' - 3/2*b1*c1*c1'"),
];

// Checked by expanding V_2^(2), V_2^(4) in a CAS. Note b1^3 c1^2 in the b1
// equation, b1^2 c1^3 in the c1 equation, and 3/4 on the quartic terms of
// the last two.
pub const GI: Rules = &[
    ("b1", "1/2*b1'' - b2^2*c1 - 2*b2*c2*b1 + 1/2*b1^2*c1' - 1/4*b1^3*c1^2"),
    ("c1", "-1/2*c1'' + c2^2*b1 + 2*c2*b2*c1 + 1/2*c1^2*b1' + 1/4*b1^2*c1^3"),
    (
        "b2",
        "1/2*b2'' - b2^2*c2 - b1*c2*b1' - b2*c1*b1' - 1/2*b1^2*c2' - 3/4*b1^2*c1^2*b2 - 1/2*b1^3*c1*c2",
    ),
    (
        "c2",
        "-1/2*c2'' + c2^2*b2 - b1*c2*c1' - b2*c1*c1' - 1/2*c1^2*b2' + 3/4*b1^2*c1^2*c2 + 1/2*c1^3*b1*b2",
    ),
];

pub const BRACKETS: BracketList = &[
    (1, &[("b1", "c1", "4")]),
    (2, &[("b1", "c2", "4"), ("c1", "b2", "-4")]),
    (
        3,
        &[
            ("b3", "c3", "-2*b1*c1"),
            ("b3", "c1", "4"),
            ("b1", "c3", "4"),
            ("b2", "c2", "4"),
        ],
    ),
];

/// H_2^(4) with its middle line swapped out.
pub fn h2_4(middle: DiffPoly) -> DiffPoly {
    p("b2*c1'' + c2*b1'' + c1*b2'' + b1*c2''").scale(&rat(1, 16))
        + middle
        + p("-2*b1^3*c1^2*c2 - 2*b1^2*b2*c1^3 - 8*b1*b2*c2^2 - 8*c1*c2*b2^2").scale(&rat(1, 32))
}

/// `(k, n, density)`, each up to total derivatives.
pub fn densities() -> Vec<(u32, u32, DiffPoly)> {
    vec![
        // b1 c1'' + c1 b1'', not b1 c1'' twice
        (
            1,
            2,
            p("b1*c1'' + c1*b1'' - 2*b1^2*c1^2").scale(&rat(1, 16)),
        ),
        (
            1,
            3,
            p("c1*b1''' - b1*c1''' + 3*b1*c1*b1*c1' - 3*b1*c1*c1*b1'").scale(&rat(1, 32)),
        ),
        (
            2,
            1,
            p("b2*c2 + 1/4*c1*b1' - 1/4*b1*c1' + 1/4*b1^2*c1^2").scale(&rat(1, 2)),
        ),
        (
            3,
            1,
            p("c1*b1' - b1*c1' + 2*b1*c1*b1*c2 + 2*b1*c1*b2*c1 + 4*b3*c2 + 4*b2*c3")
                .scale(&rat(1, 8)),
        ),
        // the middle line that generates the GI flow
        (2, 4, h2_4(p("b1^2*c2*c1' - b2*c1^2*b1'").scale(&rat(1, 8)))),
    ]
}

pub const FLOW_PAIRS: [(u32, u32); 6] = [(1, 2), (1, 3), (2, 1), (3, 1), (2, 4), (4, 2)];

/// `s` has exactly the listed rules, evolution and auxiliary together.
pub fn rules_match(s: &PdeSystem, expected: &[(&str, &str)]) -> Result<(), String> {
    for &(name, rhs) in expected {
        let got = s.rule(field(name));
        if got != Some(&p(rhs)) {
            return Err(format!(
                "d_t{} {name}: got {}, expected {rhs}",
                s.n,
                got.map_or("nothing".to_string(), |g| g.to_string())
            ));
        }
    }
    let count = s.all_rules().count();
    if count != expected.len() {
        return Err(format!("{count} rules, expected {}", expected.len()));
    }
    Ok(())
}

// Random inputs.

pub fn var() -> impl Strategy<Value = FieldVar> {
    (any::<bool>(), 1u32..=2, 0u32..=2).prop_map(|(is_b, i, d)| {
        let v = if is_b { FieldVar::b(i) } else { FieldVar::c(i) };
        v.with_dorder(d)
    })
}

pub fn poly() -> impl Strategy<Value = DiffPoly> {
    let term = (
        -6i64..=6,
        1i64..=4,
        prop::collection::vec((var(), 1u32..=2), 0..=3),
    );
    prop::collection::vec(term, 0..=4).prop_map(|terms| {
        let mut p = DiffPoly::zero();
        for (n, d, factors) in terms {
            p.add_term(Monomial::from_factors(factors), rat(n, d));
        }
        p
    })
}

pub fn sl2() -> impl Strategy<Value = Sl2Poly> {
    (poly(), poly(), poly()).prop_map(|(a, b, c)| Sl2Poly::new(a, b, c))
}

pub fn laurent() -> impl Strategy<Value = LaurentMatrix> {
    prop::collection::vec((-2i32..=2, sl2()), 0..=2).prop_map(LaurentMatrix::from_terms)
}

pub fn gens() -> [FieldVar; 4] {
    [
        FieldVar::b(1),
        FieldVar::c(1),
        FieldVar::b(2),
        FieldVar::c(2),
    ]
}

// Property bodies.

pub type Prop = Result<(), TestCaseError>;

#[allow(clippy::eq_op)]
pub fn ring_axioms(p: &DiffPoly, q: &DiffPoly, r: &DiffPoly) -> Prop {
    prop_assert_eq!(p + q, q + p);
    prop_assert_eq!(p * q, q * p);
    prop_assert_eq!(&(p + q) + r, p + &(q + r));
    prop_assert_eq!(&(p * q) * r, p * &(q * r));
    prop_assert_eq!(p * &(q + r), &(p * q) + &(p * r));
    prop_assert!((p - p).is_zero());
    prop_assert_eq!(p * &DiffPoly::one(), p.clone());
    prop_assert!((p * &DiffPoly::zero()).is_zero());
    Ok(())
}

pub fn leibniz(p: &DiffPoly, q: &DiffPoly) -> Prop {
    prop_assert_eq!((p * q).derive(), &p.derive() * q + p * &q.derive());
    Ok(())
}

pub fn euler_kills_total_derivatives(p: &DiffPoly) -> Prop {
    let dp = p.derive();
    for u in gens() {
        prop_assert!(dp.euler_derivative(u).is_zero());
    }
    Ok(())
}

pub fn integrate_inverts_derive(p: &DiffPoly) -> Prop {
    let q = p - &DiffPoly::constant(p.constant_term());
    prop_assert_eq!(p.derive().formal_integrate().unwrap(), q);
    Ok(())
}

pub fn parse_display_round_trip(p: &DiffPoly) -> Prop {
    let back: DiffPoly = p.to_string().parse().unwrap();
    prop_assert_eq!(&back, p);
    Ok(())
}

pub fn json_round_trip(p: &DiffPoly) -> Prop {
    let s = serde_json::to_string(p).unwrap();
    let back: DiffPoly = serde_json::from_str(&s).unwrap();
    prop_assert_eq!(&back, p);
    Ok(())
}

pub fn substitution_commutes_with_derive(p: &DiffPoly, r: &DiffPoly) -> Prop {
    let mut rules = BTreeMap::new();
    rules.insert(FieldVar::b(2), r.clone());
    prop_assert_eq!(p.substitute(&rules).derive(), p.derive().substitute(&rules));
    Ok(())
}

pub fn sl2_jacobi_and_invariance(x: &Sl2Poly, y: &Sl2Poly, z: &Sl2Poly) -> Prop {
    let j = &(&x.commutator(&y.commutator(z)) + &y.commutator(&z.commutator(x)))
        + &z.commutator(&x.commutator(y));
    prop_assert!(j.is_zero());
    prop_assert_eq!(
        x.commutator(y).trace_with(z),
        x.trace_with(&y.commutator(z))
    );
    prop_assert!((&x.commutator(y) + &y.commutator(x)).is_zero());
    Ok(())
}

pub fn laurent_jacobi(x: &LaurentMatrix, y: &LaurentMatrix, z: &LaurentMatrix) -> Prop {
    let j = x
        .commutator(&y.commutator(z))
        .add(&y.commutator(&z.commutator(x)))
        .add(&z.commutator(&x.commutator(y)));
    prop_assert!(j.is_zero());
    Ok(())
}

pub fn projection_identities(x: &LaurentMatrix, a: i32, b: i32) -> Prop {
    let plus = x.project(Projection::Plus);
    let minus = x.project(Projection::Minus);
    prop_assert_eq!(plus.add(&minus), x.clone());
    prop_assert_eq!(plus.project(Projection::Plus), plus.clone());
    prop_assert!(plus.project(Projection::Minus).is_zero());
    prop_assert_eq!(x.project(Projection::R), plus.sub(&minus));
    prop_assert_eq!(x.project(Projection::R).project(Projection::R), x.clone());
    prop_assert_eq!(x.shift(a).shift(b), x.shift(a + b));
    prop_assert_eq!(x.derive().shift(a), x.shift(a).derive());
    Ok(())
}

pub fn r_matrix_modified_yang_baxter(x: &LaurentMatrix, y: &LaurentMatrix) -> Prop {
    let r = |m: &LaurentMatrix| m.project(Projection::R);
    let lhs = r(x)
        .commutator(&r(y))
        .sub(&r(&r(x).commutator(y).add(&x.commutator(&r(y)))));
    let rhs = x.commutator(y).scale(&rat(-1, 1));
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn trace_pair_invariance(
    x: &LaurentMatrix,
    y: &LaurentMatrix,
    z: &LaurentMatrix,
    j: i32,
) -> Prop {
    let l = x.commutator(y).trace_pair(z, j).unwrap();
    let r = x.trace_pair(&y.commutator(z), j).unwrap();
    prop_assert_eq!(l, r);
    Ok(())
}
