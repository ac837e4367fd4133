use apery_core::closed_form::{self, factorial, ClosedFormExpr};
use apery_core::harmonic::exact_state;
use apery_core::make_context;
use apery_core::series::{partial_sum_with, FamilyKind, Schedule, SeriesFamily};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use proptest::prelude::*;

fn pow(q: &BigRational, k: usize) -> BigRational {
    Pow::pow(q, k as u32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_sums_sit_between_product_bounds(n in 0u64..40, depth in 1usize..5) {
        let s = exact_state(n, depth, &[2]).unwrap();
        let o2 = s.odd_harmonic(2).unwrap().clone();
        prop_assert!(s.t_star(0).unwrap().is_one());
        prop_assert!(s.zeta_star(0).unwrap().is_one());
        for j in 1..=depth {
            let t = s.t_star(j).unwrap();
            let full = pow(&o2, j);
            prop_assert!(*t <= full);
            prop_assert!(*t >= &full / BigRational::from_integer(factorial(j as u64)));
            if n == 0 {
                prop_assert!(t.is_zero() && s.zeta_star(j).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn star_sums_grow_with_n(n in 0u64..40, depth in 1usize..5) {
        let a = exact_state(n, depth, &[]).unwrap();
        let b = a.advance();
        for j in 0..=depth {
            prop_assert!(b.t_star(j).unwrap() >= a.t_star(j).unwrap());
            prop_assert!(b.zeta_star(j).unwrap() >= a.zeta_star(j).unwrap());
        }
    }

    #[test]
    fn closed_form_text_round_trips(j in 0u32..5, m in 0u32..4, n in 1u32..5) {
        let exprs = [
            closed_form::rhs_theorem1(j),
            closed_form::rhs_gencev(j),
            closed_form::rhs_lemma3(m, n).unwrap(),
            closed_form::rhs_r2(m),
        ];
        for e in exprs {
            let canon = closed_form::fold_symmetry(&e);
            let back: ClosedFormExpr = canon.to_string().parse().unwrap();
            prop_assert_eq!(&back, &canon);
            prop_assert_eq!(back.to_string(), canon.to_string());
        }
    }

    #[test]
    fn closed_form_sums_are_canonical(a in -20i64..20, b in -20i64..20, p in 1u32..6, q in 1u32..6) {
        let k = |v: i64| BigRational::from_integer(BigInt::from(v));
        let be: ClosedFormExpr = format!("beta({p})*eta({q})").parse().unwrap();
        let eb: ClosedFormExpr = format!("eta({q})*beta({p})").parse().unwrap();
        let pi2: ClosedFormExpr = "pi^2".parse().unwrap();
        let x = be.scale(&k(a)).add(&pi2.scale(&k(b)));
        let y = eb.scale(&k(b)).add(&pi2.scale(&k(-a)));
        prop_assert_eq!(x.add(&y), y.add(&x));
        let minus_x = x.scale(&BigRational::from_integer(BigInt::from(-1)));
        prop_assert!(x.add(&minus_x).is_empty());
    }

    #[test]
    fn partial_sums_increase(depth in 0usize..4, gencev in any::<bool>(), len in 2usize..8) {
        let kind = if gencev { FamilyKind::Gencev } else { FamilyKind::Theorem1 };
        let fam = SeriesFamily::new(kind, depth).unwrap();
        let ctx = make_context(20).unwrap();
        let tr = partial_sum_with(fam, 1 << len, &Schedule::default(), &ctx).unwrap();
        for w in tr.checkpoints.windows(2) {
            prop_assert!(w[0].n < w[1].n);
            prop_assert!(w[0].sum <= w[1].sum);
        }
    }
}

#[test]
fn beta_values_agree_with_pi_forms() {
    let ctx = make_context(30).unwrap();
    for (m, expr) in [(1, "1/4*pi"), (3, "1/32*pi^3"), (5, "5/1536*pi^5"), (7, "61/184320*pi^7")] {
        let b = apery_core::constants::beta(m, &ctx).unwrap();
        let c = expr.parse::<ClosedFormExpr>().unwrap().eval(&ctx).unwrap();
        assert!(b.agrees_with(&c), "beta({m})");
    }
}
