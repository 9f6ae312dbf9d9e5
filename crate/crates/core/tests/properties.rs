//! Property tests for the algebraic invariants.

use proptest::prelude::*;

use dunkl_hermite::clifford::{reflect_vector, reflect_vector_clifford, Multivector};
use dunkl_hermite::dunkl::{dunkl_dirac, dunkl_laplacian, dunkl_t};
use dunkl_hermite::integrate::GammaExpr;
use dunkl_hermite::multipoly::CPoly;
use dunkl_hermite::rat::{rat, Rat};
use dunkl_hermite::reflection::{build_group, Family, ReflectionData};

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, q)| rat(p, q))
}

fn multivector_strategy(d: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec((0u32..(1 << d), rat_strategy()), 0..4).prop_map(move |terms| {
        let mut m = Multivector::zero(d);
        for (mask, c) in terms {
            let idx: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
            m = &m + &Multivector::blade(d, &idx).scale(&c);
        }
        m
    })
}

fn vector_strategy(d: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(rat_strategy(), d)
}

fn nonzero_vector_strategy(d: usize) -> impl Strategy<Value = Vec<Rat>> {
    vector_strategy(d).prop_filter("nonzero", |v| v.iter().any(|c| c != &rat(0, 1)))
}

fn cpoly_strategy(d: usize, max_exp: u32) -> impl Strategy<Value = CPoly> {
    prop::collection::vec(
        (
            prop::collection::vec(0..=max_exp, d),
            0u32..(1 << d),
            rat_strategy(),
        ),
        0..4,
    )
    .prop_map(move |terms| {
        let mut p = CPoly::zero(d);
        for (exps, mask, c) in terms {
            let idx: Vec<usize> =
                (0..d).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
            let mut mono = CPoly::constant(Multivector::blade(d, &idx).scale(&c));
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    mono = &mono * &CPoly::var(d, i + 1);
                }
            }
            p = &p + &mono;
        }
        p
    })
}

proptest! {
    #[test]
    fn geometric_product_associates(
        (a, b, c) in (1usize..=4).prop_flat_map(|d| {
            (multivector_strategy(d), multivector_strategy(d), multivector_strategy(d))
        })
    ) {
        let left = &(&a * &b) * &c;
        let right = &a * &(&b * &c);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn conjugation_is_an_anti_involution(
        (a, b) in (1usize..=4).prop_flat_map(|d| {
            (multivector_strategy(d), multivector_strategy(d))
        })
    ) {
        prop_assert_eq!((&a * &b).conjugate(), &b.conjugate() * &a.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn vectors_square_to_minus_norm(
        x in (1usize..=4).prop_flat_map(nonzero_vector_strategy)
    ) {
        let m = Multivector::from_vector(&x);
        let norm2: Rat = x.iter().map(|c| c * c).sum();
        prop_assert_eq!(&m * &m, Multivector::scalar(x.len(), -norm2));
        let inv = m.vector_inverse().unwrap();
        prop_assert_eq!(&inv * &m, Multivector::one(x.len()));
    }

    #[test]
    fn reflection_involutive_isometric_and_consistent(
        (x, alpha) in (1usize..=4).prop_flat_map(|d| {
            (vector_strategy(d), nonzero_vector_strategy(d))
        })
    ) {
        let once = reflect_vector(&x, &alpha).unwrap();
        let twice = reflect_vector(&once, &alpha).unwrap();
        prop_assert_eq!(&twice, &x);
        let n2_before: Rat = x.iter().map(|c| c * c).sum();
        let n2_after: Rat = once.iter().map(|c| c * c).sum();
        prop_assert_eq!(n2_before, n2_after);
        prop_assert_eq!(once, reflect_vector_clifford(&x, &alpha).unwrap());
    }

    #[test]
    fn divided_difference_reconstructs(
        (p, alpha) in (1usize..=3).prop_flat_map(|d| {
            (cpoly_strategy(d, 3), nonzero_vector_strategy(d))
        })
    ) {
        let d = p.dim();
        let dd = p.divided_difference(&alpha).unwrap();
        let mut form = CPoly::zero(d);
        for (i, a) in alpha.iter().enumerate() {
            form = &form + &CPoly::var(d, i + 1).scale(a);
        }
        let rebuilt = &(&dd * &form) + &p.poly_reflect(&alpha).unwrap();
        prop_assert_eq!(rebuilt, p);
    }

    #[test]
    fn poly_reflection_is_an_involution(
        (p, alpha) in (1usize..=3).prop_flat_map(|d| {
            (cpoly_strategy(d, 3), nonzero_vector_strategy(d))
        })
    ) {
        let refl = p.poly_reflect(&alpha).unwrap();
        prop_assert_eq!(refl.degree(), p.degree());
        prop_assert_eq!(refl.poly_reflect(&alpha).unwrap(), p);
    }

    #[test]
    fn dunkl_summand_is_root_scale_invariant(
        (p, alpha, c) in (1usize..=3).prop_flat_map(|d| {
            (cpoly_strategy(d, 3), nonzero_vector_strategy(d), rat_strategy())
        })
    ) {
        prop_assume!(c != rat(0, 1));
        // the full summand dd(p, alpha) * alpha_i is unchanged under
        // alpha -> c alpha, i.e. dd(p, c alpha) = dd(p, alpha) / c
        let scaled: Vec<Rat> = alpha.iter().map(|a| a * &c).collect();
        let lhs = p.divided_difference(&scaled).unwrap().scale(&c);
        prop_assert_eq!(lhs, p.divided_difference(&alpha).unwrap());
    }

    #[test]
    fn radial_decomposition_round_trips(
        coeffs in prop::collection::vec(rat_strategy(), 1..6)
    ) {
        // members of R(P_n) rebuild exactly from their radial coefficients
        let rd = z2_2();
        let basis = dunkl_hermite::monogenic::module_basis(&rd, 1).unwrap();
        let p_n = &basis.elements()[0];
        let mut member = CPoly::zero(2);
        for (j, c) in coeffs.iter().enumerate() {
            member = &member + &CPoly::vector_power(2, j).poly_mul(p_n).unwrap().scale(c);
        }
        if member.is_zero() {
            return Ok(());
        }
        let decomposed = member.radial_decompose(p_n).unwrap();
        let mut rebuilt = CPoly::zero(2);
        for (j, c) in decomposed.iter().enumerate() {
            rebuilt = &rebuilt + &CPoly::vector_power(2, j).poly_mul(p_n).unwrap().scale(c);
        }
        prop_assert_eq!(rebuilt, member);
    }

    #[test]
    fn gamma_expr_scaling_round_trips(
        (num, den, arg_num) in (-20i64..=20, 1i64..=20, 1i64..=30)
    ) {
        prop_assume!(num != 0);
        let r = rat(num, den);
        let base = GammaExpr::gamma(&rat(arg_num, 7)).unwrap();
        let scaled = base.scale(&r);
        prop_assert_eq!(scaled.ratio_to(&base), Some(r));
    }

    #[test]
    fn multivector_json_round_trips(
        a in (1usize..=4).prop_flat_map(multivector_strategy)
    ) {
        let text = serde_json::to_string(&a).unwrap();
        let back: Multivector = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn cpoly_json_round_trips(
        p in (1usize..=3).prop_flat_map(|d| cpoly_strategy(d, 3))
    ) {
        let text = serde_json::to_string(&p).unwrap();
        let back: CPoly = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, p);
    }
}

fn z2_2() -> ReflectionData {
    build_group(Family::Z2, 2, &[rat(1, 2), rat(1, 3)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dunkl_operators_commute(p in cpoly_strategy(3, 3)) {
        prop_assume!(p.degree() <= 6);
        let rd = build_group(Family::A, 3, &[rat(1, 2)]).unwrap();
        for i in 1..=3usize {
            for j in (i + 1)..=3 {
                let a = dunkl_t(&rd, i, &dunkl_t(&rd, j, &p).unwrap()).unwrap();
                let b = dunkl_t(&rd, j, &dunkl_t(&rd, i, &p).unwrap()).unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn laplacian_factorization(p in cpoly_strategy(2, 4)) {
        // dunkl_laplacian asserts sum T_i^2 == -D_h^2 internally
        let rd = z2_2();
        let lap = dunkl_laplacian(&rd, &p).unwrap();
        let via_dirac = -(dunkl_dirac(&rd, &dunkl_dirac(&rd, &p).unwrap()).unwrap());
        prop_assert_eq!(lap, via_dirac);
    }
}
