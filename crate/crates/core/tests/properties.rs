//! Randomized property suites: exact ring/series laws, valuation shifts,
//! substitution multiplicativity, character orthogonality and parser
//! round-trips.

use proptest::prelude::*;
use tautform_core::covariant::{Covariant, GenMono};
use tautform_core::expr::{parse, Expr, Program};
use tautform_core::gauss::GaussRat;
use tautform_core::nu::nu_eval;
use tautform_core::s6::{character, class_size, cycle_types, YoungPartition};
use tautform_core::series::FourierSeries;
use tautform_core::theta::char_partition_table;
use tautform_core::valuation::{i5, v_pi};

fn small_series() -> impl Strategy<Value = FourierSeries> {
    proptest::collection::vec(
        ((0i64..=6), (-4i64..=4), (0i64..=6), (-5i64..=5)),
        0..8,
    )
    .prop_map(|terms| {
        let mut s = FourierSeries::zero(6);
        for (e1, e12, e2, c) in terms {
            s.add_term(e1, e12, e2, GaussRat::from_int(c));
        }
        s
    })
}

/// A series with an invertible constant term, so division is always exact.
fn unit_series() -> impl Strategy<Value = FourierSeries> {
    small_series().prop_map(|mut s| {
        s.add_term(0, 0, 0, GaussRat::from_int(1));
        if s.coefficient(0, 0, 0).is_zero() {
            s.add_term(0, 0, 0, GaussRat::from_int(1));
        }
        s
    })
}

/// Uniform-degree covariant from a random bracket pattern: pick a small set
/// of p_ij factors, then pad with linear forms so every index reaches the
/// maximal incidence.
fn uniform_genmono() -> impl Strategy<Value = GenMono> {
    proptest::collection::vec(0usize..15, 1..4).prop_map(|picks| {
        let mut p_exp = [0u8; 15];
        for k in picks {
            p_exp[k] += 1;
        }
        let mut inc = [0u8; 6];
        for (k, &(a, b)) in tautform_core::covariant::PAIRS.iter().enumerate() {
            inc[a - 1] += p_exp[k];
            inc[b - 1] += p_exp[k];
        }
        let d = *inc.iter().max().unwrap();
        let l_exp = std::array::from_fn(|i| d - inc[i]);
        GenMono { l_exp, p_exp }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_mul_commutes(a in small_series(), b in small_series()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn series_mul_distributes(a in small_series(), b in small_series(), c in small_series()) {
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_div_inverts_mul(a in small_series(), u in unit_series()) {
        let prod = a.mul(&u).unwrap();
        let q = prod.div(&u).unwrap();
        prop_assert_eq!(q.grid, a.grid);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn i5_shifts_every_valuation_by_one(gm in uniform_genmono(), which in 0usize..10) {
        let c = gm.expand();
        prop_assume!(!c.is_zero());
        let shifted = i5().mul(&c);
        let pi = char_partition_table()[which];
        let base = v_pi(&c, &pi).unwrap();
        let up = v_pi(&shifted, &pi).unwrap();
        let bumped: Vec<Option<i64>> = base
            .per_coefficient
            .iter()
            .map(|v| v.map(|x| x + 1))
            .collect();
        prop_assert_eq!(up.per_coefficient, bumped);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn nu_is_multiplicative(a in uniform_genmono(), b in uniform_genmono()) {
        let (ca, cb) = (a.expand(), b.expand());
        prop_assume!(!ca.is_zero() && !cb.is_zero());
        let lhs = nu_eval(&ca.mul(&cb), 6).unwrap();
        let rhs = nu_eval(&ca, 6).unwrap().mul(&nu_eval(&cb, 6).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn character_rows_are_orthogonal() {
    let parts = YoungPartition::all();
    for (i, a) in parts.iter().enumerate() {
        for (j, b) in parts.iter().enumerate() {
            let mut dot = 0i64;
            for (t, _) in cycle_types() {
                dot += class_size(&t) * character(a, &t) * character(b, &t);
            }
            assert_eq!(dot, if i == j { 720 } else { 0 }, "rows {i}, {j}");
        }
    }
}

#[test]
fn theta_series_are_semipositive() {
    use tautform_core::theta::{even_theta, gradient};
    for i in 1..=10 {
        assert!(even_theta(i, 12).semipositive(), "theta {i}");
    }
    for i in 1..=6 {
        let (g1, g2) = gradient(i, 12);
        assert!(g1.semipositive() && g2.semipositive(), "gradient {i}");
    }
}

fn small_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (1u64..=9, 1u64..=9).prop_map(|(n, d)| Expr::Num(num::BigRational::new(
            num::BigInt::from(n),
            num::BigInt::from(d)
        ))),
        (1u64..=60).prop_map(|n| Expr::Num(num::BigRational::from_integer(num::BigInt::from(n)))),
        proptest::sample::select(vec![
            "l1", "l2", "l6", "p12", "p34", "p56", "x1", "x2", "f6", "f5", "q1", "l",
        ])
        .prop_map(|s| Expr::Ident(s.to_string())),
    ];
    leaf.prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), 1u32..5).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            (inner.clone(), inner, 0u32..4)
                .prop_map(|(a, b, r)| Expr::Transvectant(Box::new(a), Box::new(b), r)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_print_round_trip(e in small_expr()) {
        let prog = Program { expr: e, bindings: vec![] };
        let printed = prog.to_string();
        let reparsed = parse(&printed).unwrap();
        prop_assert_eq!(prog, reparsed, "printed as `{}`", printed);
    }
}

#[test]
fn valuation_additivity_on_split_factors() {
    // v is additive against I_5 (equal phi/phi' degrees); spot-check
    // additivity also for products of six-p invariants, where it holds
    let table = char_partition_table();
    let six_p = |t: usize| {
        let pi = table[t];
        let mut gm = GenMono {
            l_exp: [0; 6],
            p_exp: [0; 15],
        };
        let mark = |tr: &[u8; 3], p: &mut [u8; 15]| {
            p[tautform_core::covariant::pair_index(tr[0] as usize, tr[1] as usize)] += 1;
            p[tautform_core::covariant::pair_index(tr[0] as usize, tr[2] as usize)] += 1;
            p[tautform_core::covariant::pair_index(tr[1] as usize, tr[2] as usize)] += 1;
        };
        mark(&pi.triples.0, &mut gm.p_exp);
        mark(&pi.triples.1, &mut gm.p_exp);
        gm.expand()
    };
    let (a, b): (Covariant, Covariant) = (six_p(0), six_p(6));
    let prod = a.mul(&b);
    for (t, pi) in table.iter().enumerate() {
        let expect = match t {
            0 | 6 => 4,
            _ => 0,
        };
        assert_eq!(v_pi(&prod, pi).unwrap().aggregate, Some(expect));
    }
}
