use proptest::prelude::*;

use pftau::schur::elem_schur_table_from;
use pftau::tau::{chi_bar, constants_to_series, series_to_constants};
use pftau::{
    apply_schur_diff, determinant, pfaffian, rat, Bank, GaussRat, Monomial, Parity, Poly, Rational, TimeArgument,
    UpperTriMatrix, Var,
};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn coeff() -> impl Strategy<Value = GaussRat> {
    (small_rat(), prop_oneof![3 => Just(rat(0, 1)), 1 => small_rat()]).prop_map(|(re, im)| GaussRat::new(re, im))
}

/// Polynomials in `t1..t3, y1, y2` with low exponents.
fn poly() -> impl Strategy<Value = Poly> {
    let var = prop_oneof![Just(Var::t(1)), Just(Var::t(2)), Just(Var::t(3)), Just(Var::y(1)), Just(Var::y(2)),];
    let mono = prop::collection::vec((var, 1u32..=3), 0..3).prop_map(Monomial::from_pairs);
    prop::collection::vec((mono, coeff()), 0..5).prop_map(Poly::from_terms)
}

fn t_poly() -> impl Strategy<Value = Poly> {
    poly().prop_map(|p| p.with_bank(Bank::T))
}

fn derivative(p: &Poly, v: Var) -> Poly {
    Poly::from_terms(p.terms().filter_map(|(m, c)| {
        let e = m.exponent(v);
        if e == 0 {
            return None;
        }
        let rest = m.factors().iter().map(|&(w, f)| if w == v { (w, f - 1) } else { (w, f) });
        Some((Monomial::from_pairs(rest), c.scale(&rat(e as i64, 1))))
    }))
}

/// `s_j(u)` with `u_k = scale·∂_k/k`, expanded as a polynomial in symbols
/// `y_k ↔ u_k` and then applied monomial by monomial.
fn schur_diff_oracle(p: &Poly, j: usize, scale: &Rational) -> Poly {
    let comps: Vec<Poly> = (1..=j as u32).map(Poly::y).collect();
    let sj = elem_schur_table_from(&comps, j).pop().unwrap();
    let mut out = Poly::zero();
    for (m, c) in sj.terms() {
        let mut q = p.clone();
        for &(v, e) in m.factors() {
            for _ in 0..e {
                q = derivative(&q, Var::t(v.index)).scale_rat(&(scale / rat(v.index as i64, 1)));
            }
        }
        out += &q.scale(c);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Poly::zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn degree_is_additive(a in poly(), b in poly()) {
        let prod = &a * &b;
        match (a.weighted_degree(), b.weighted_degree()) {
            (Some(x), Some(y)) => prop_assert_eq!(prod.weighted_degree(), Some(x + y)),
            _ => prop_assert!(prod.is_zero()),
        }
    }

    #[test]
    fn canonical_string_round_trips(a in poly()) {
        let s = a.canonical_string();
        let back: Poly = s.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn schur_diff_matches_operator_expansion(p in t_poly(), j in 0usize..5, s in prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)]) {
        let scale = rat(s, 1);
        prop_assert_eq!(apply_schur_diff(&p, j, &scale, Parity::All), schur_diff_oracle(&p, j, &scale));
    }

    #[test]
    fn schur_diff_lowers_degree(p in t_poly(), j in 1usize..5) {
        let d = apply_schur_diff(&p, j, &rat(-1, 1), Parity::All);
        if let Some(k) = d.weighted_degree() {
            prop_assert!(k + j as u32 <= p.weighted_degree().unwrap());
        }
    }

    #[test]
    fn pfaffian_squared_is_determinant(n in prop_oneof![Just(2usize), Just(4), Just(6)], entries in prop::collection::vec(small_rat(), 15)) {
        let mut it = entries.into_iter().cycle();
        let a = UpperTriMatrix::from_fn(n, |_, _| Poly::rational(it.next().unwrap()));
        let pf = pfaffian(&a).unwrap();
        prop_assert_eq!(pf.pow(2), determinant(&a.skew_extension()).unwrap());
    }

    #[test]
    fn chi_bar_antisymmetry(c in prop::collection::vec(small_rat(), 0..4), n in 0u32..5, m in 0u32..5) {
        // odd components only
        let c: Vec<Rational> = c.into_iter().enumerate().map(|(i, x)| if i % 2 == 0 { x } else { rat(0, 1) }).collect();
        let u = TimeArgument::odd_times(Bank::T).plus(&c);
        let sum = &chi_bar(n, m, &u, &u) + &chi_bar(m, n, &u, &u);
        let expect = if n == 0 && m == 0 { Poly::one() } else { Poly::zero() };
        prop_assert_eq!(sum, expect);
    }

    #[test]
    fn series_round_trip(c in prop::collection::vec(small_rat(), 0..5), lead in 0u32..4) {
        let order = 6;
        let s = constants_to_series(&c, lead, order);
        let back = series_to_constants(&s, order).unwrap();
        for (k, x) in back.iter().enumerate() {
            let expect = c.get(k).cloned().unwrap_or_else(|| rat(0, 1));
            prop_assert_eq!(x, &expect);
        }
    }
}
