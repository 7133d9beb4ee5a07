use blx_core::elimination::{
    content_split, homogeneous_linear_factors, resultant, resultant_with, LinePoint, Strategy as Det,
};
use blx_core::oracle::{local_algebra_length, local_intersection_multiplicity};
use blx_core::polycore::{format_poly, gcd_multi, parse, q, MPoly, Monomial, Var, VarSet};
use blx_core::transform::{apply_param, ProjTransform};
use blx_core::baselocus::ParamSurface;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn poly_from(terms: Vec<((u32, u32, u32, u32), i64)>) -> MPoly {
    MPoly::from_terms(terms.into_iter().filter(|(_, c)| *c != 0).map(|((a, b, c, d), k)| {
        (
            Monomial::from_exponents(&[(Var::T1, a), (Var::T2, b), (Var::T3, c), (Var::X1, d)]),
            BigRational::from_integer(k.into()),
        )
    }))
}

fn any_poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3, 0u32..2), -9i64..=9), 0..6).prop_map(poly_from)
}

fn affine_poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u32..4, 0u32..4, 0u32..1, 0u32..1), -5i64..=5), 1..6).prop_map(poly_from)
}

fn form(degree: u32) -> impl Strategy<Value = MPoly> {
    prop::collection::vec(-4i64..=4, ((degree + 1) * (degree + 2) / 2) as usize).prop_map(move |cs| {
        let mut terms = Vec::new();
        let mut k = 0;
        for a in 0..=degree {
            for b in 0..=degree - a {
                terms.push(((a, b, degree - a - b, 0), cs[k]));
                k += 1;
            }
        }
        poly_from(terms)
    })
}

fn invertible() -> impl Strategy<Value = ProjTransform> {
    prop::collection::vec(-3i64..=3, 9)
        .prop_filter_map("singular", |e| {
            ProjTransform::from_ints(&[&e[0..3], &e[3..6], &e[6..9]]).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn format_then_parse_round_trips(f in any_poly()) {
        prop_assert_eq!(parse(&format_poly(&f)).unwrap(), f);
    }

    #[test]
    fn ring_laws(a in any_poly(), b in any_poly(), c in any_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &a), &MPoly::zero());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        }
    }

    #[test]
    fn gcd_divides_and_keeps_common_factor(a in any_poly(), b in any_poly(), h in any_poly()) {
        prop_assume!(!h.is_zero() && !(a.is_zero() && b.is_zero()));
        let (fa, fb) = (&a * &h, &b * &h);
        let g = gcd_multi(&fa, &fb);
        prop_assert!(fa.div_exact(&g).is_some());
        prop_assert!(fb.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&h.normalize()).is_some() || h.is_constant());
        prop_assert!(g.is_normalized());
    }

    #[test]
    fn resultant_strategies_agree(f in form(2), g in form(2), m in form(1)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let g = &g + &(&m * &MPoly::var(Var::X1));
        prop_assume!(f.degree(Var::T3) + g.degree(Var::T3) > 0);
        let b = resultant_with(&f, &g, Var::T3, Det::Bareiss).unwrap();
        let l = resultant_with(&f, &g, Var::T3, Det::Laplace).unwrap();
        prop_assert_eq!(&b, &l);
        // Res(g, f) = (-1)^(mn) Res(f, g)
        let swapped = resultant(&g, &f, Var::T3).unwrap();
        let sign = if (f.degree(Var::T3) * g.degree(Var::T3)) % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(swapped, b.scale(&q(sign)));
    }

    #[test]
    fn content_times_primpart(f in any_poly()) {
        prop_assume!(!f.is_zero());
        let split = content_split(&f, VarSet::of(&[Var::X1])).unwrap();
        prop_assert!((&split.content * &split.primpart).associate(&f));
        prop_assert!(split.content.is_normalized());
    }

    #[test]
    fn linear_factors_recovered(roots in prop::collection::vec((-6i64..=6, 0i64..=6), 1..5)) {
        let roots: Vec<LinePoint> = roots
            .into_iter()
            .filter(|(a, b)| *a != 0 || *b != 0)
            .map(|(a, b)| LinePoint::new(BigInt::from(a), BigInt::from(b)))
            .collect();
        prop_assume!(!roots.is_empty());
        let f = roots.iter().fold(MPoly::one(), |acc, r| &acc * &r.linear_form());
        let lf = homogeneous_linear_factors(&f).unwrap();
        prop_assert_eq!(lf.linear_degree() as usize, roots.len());
        prop_assert!(lf.residual.is_constant());
    }

    #[test]
    fn transform_inverse_round_trip(l in invertible(), f in form(2), g in form(2)) {
        prop_assert!(l.compose(&l.inverse()).is_identity());
        let comps = vec![f.clone(), g.clone(), &f + &g, MPoly::var(Var::T3).pow(2)];
        prop_assume!(ParamSurface::new(comps.clone()).is_ok());
        let p = ParamSurface::new(comps).unwrap();
        let back = apply_param(&l.inverse(), &apply_param(&l, &p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn intersection_symmetric_and_stable_under_shear(f in affine_poly(), g in affine_poly(), k in -3i64..=3) {
        let origin = [q(0), q(0)];
        // force both curves through the origin
        let f = &f - &MPoly::constant(f.constant_term());
        let g = &g - &MPoly::constant(g.constant_term());
        prop_assume!(!f.is_zero() && !g.is_zero());
        let a = local_intersection_multiplicity(&f, &g, &origin);
        prop_assume!(a.is_ok());
        let a = a.unwrap();
        prop_assert_eq!(local_intersection_multiplicity(&g, &f, &origin).unwrap(), a);
        // unimodular change t1 -> t1 + k t2 fixes the origin
        let sigma = [(Var::T1, &MPoly::var(Var::T1) + &(&MPoly::int(k) * &MPoly::var(Var::T2)))]
            .into_iter()
            .collect();
        let (fs, gs) = (f.substitute(&sigma), g.substitute(&sigma));
        prop_assert_eq!(local_intersection_multiplicity(&fs, &gs, &origin).unwrap(), a);
        if a <= 6 {
            prop_assert_eq!(local_algebra_length(&f, &g, &origin).unwrap(), a);
        }
    }
}
