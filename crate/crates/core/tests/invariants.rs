//! Randomized invariants across the layers.

use isobessel::bessel::*;
use isobessel::functional::*;
use isobessel::group::*;
use isobessel::linalg::*;
use isobessel::sections::*;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| rat(p, q))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=5).prop_map(|(p, q)| rat(p, q))
}

fn signs(n: usize) -> impl Strategy<Value = Vec<i8>> {
    proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], n)
}

fn borel(n: usize) -> impl Strategy<Value = BorelElement<Rational>> {
    (
        signs(n),
        proptest::collection::vec(positive_rational(), n),
        proptest::collection::vec(small_rational(), n * n),
    )
        .prop_map(|(signs, scales, u)| BorelElement {
            signs,
            scales,
            unipotent: UnipotentCoords::new(u),
        })
}

fn rank() -> impl Strategy<Value = usize> {
    prop_oneof![Just(2usize), Just(3usize)]
}

fn datum(n: usize) -> BesselDatum {
    BesselDatum::isotropic(&GroupContext::new(n).unwrap()).unwrap()
}

/// A word in root subgroup elements, `w₀` and the torus.
fn word(n: usize) -> impl Strategy<Value = Vec<(usize, Rational)>> {
    proptest::collection::vec((0..n * n + 2, small_rational()), 1..6)
}

fn eval_word(ctx: &GroupContext, w: &[(usize, Rational)]) -> Matrix<Rational> {
    let roots = ctx.roots().positive_roots();
    let mut g = Matrix::identity(ctx.dim());
    for (k, t) in w {
        let factor = if *k < roots.len() {
            root_subgroup_element(ctx, &roots[*k], t.clone())
                .unwrap()
                .into_matrix()
        } else if *k == roots.len() {
            long_weyl_element::<Rational>(ctx).into_matrix()
        } else {
            let s = if t.is_zero() {
                Rational::one()
            } else {
                t.abs()
            };
            let b = BorelElement {
                signs: vec![1; ctx.n()],
                scales: vec![s; ctx.n()],
                unipotent: UnipotentCoords::zero(ctx),
            };
            borel_assemble(ctx, &b).unwrap().into_matrix()
        };
        g = &g * &factor;
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn membership_closed_under_products_and_inverse(n in rank(), w in word(3)) {
        let ctx = GroupContext::new(n).unwrap();
        let w: Vec<_> = w.into_iter().map(|(k, t)| (k % (n * n + 2), t)).collect();
        let g = eval_word(&ctx, &w);
        prop_assert!(ctx.is_member(&g).unwrap());
        let gi = form_inverse(&g);
        prop_assert!(ctx.is_member(&gi).unwrap());
        prop_assert!((&g * &gi).is_identity());
    }

    #[test]
    fn unipotent_coordinates_round_trip(n in rank(), seed in any::<u64>()) {
        let ctx = GroupContext::new(n).unwrap();
        let mut rng = isobessel::sampling::seeded_rng(seed);
        let c = UnipotentCoords::new(isobessel::sampling::random_rationals(&mut rng, n * n, 9, 5));
        let u = assemble_unipotent(&ctx, &c).unwrap();
        prop_assert_eq!(extract_unipotent_coords(&ctx, u.matrix()).unwrap(), c);
    }

    #[test]
    fn open_cell_decomposition_is_unique(b in borel(2), u in proptest::collection::vec(small_rational(), 4)) {
        let ctx = GroupContext::new(2).unwrap();
        let u = UnipotentCoords::new(u);
        let w0 = long_weyl_element::<Rational>(&ctx).into_matrix();
        let g = &(&borel_assemble(&ctx, &b).unwrap().into_matrix() * &w0)
            * assemble_unipotent(&ctx, &u).unwrap().matrix();
        prop_assert_eq!(bruhat_decompose(&ctx, &g), Some((b, u)));
    }

    #[test]
    fn chi_is_a_character(n in rank(), seed in any::<u64>()) {
        let d = datum(n);
        let mut rng = isobessel::sampling::seeded_rng(seed);
        let mut draw = || {
            U1Coords::new(isobessel::sampling::random_rationals(&mut rng, d.u1_dim(), 9, 5))
                .assemble(d.ctx())
                .unwrap()
                .into_matrix()
        };
        let (u, v) = (draw(), draw());
        prop_assert_eq!(d.chi().phase(&(&u * &v)), d.chi().phase(&u) + d.chi().phase(&v));
    }

    #[test]
    fn stabilizer_fixes_chi(n in rank(), x in small_rational(), seed in any::<u64>()) {
        let d = datum(n);
        let mut rng = isobessel::sampling::seeded_rng(seed);
        let u = U1Coords::new(isobessel::sampling::random_rationals(&mut rng, d.u1_dim(), 9, 5));
        prop_assert!(stabilizer_check(&d, &x, &u));
        prop_assert!(modular_delta(&d, &x).unwrap().is_one());
    }

    #[test]
    fn m_is_a_one_parameter_group(n in rank(), x in small_rational(), y in small_rational()) {
        let d = datum(n);
        prop_assert_eq!(m_of(&d, &x).compose(&m_of(&d, &y)), m_of(&d, &(x + y)));
    }

    #[test]
    fn lemma_round_trip(seed in any::<u64>()) {
        let d = datum(2);
        let mut rng = isobessel::sampling::seeded_rng(seed);
        let parts = random_decomposition(&d, &mut rng);
        let g = lemma_compose(&d, &parts);
        prop_assert_eq!(lemma_decompose(&d, &g), Some(parts));
    }

    #[test]
    fn cell_section_covariance(
        b in borel(2),
        u in proptest::collection::vec(-2i64..=2, 4),
        nu in proptest::collection::vec((0.5f64..4.0, -2.0f64..2.0), 2),
        eta in proptest::collection::vec(any::<bool>(), 2),
    ) {
        let ctx = GroupContext::new(2).unwrap();
        let params = PrincipalSeriesParam::new(nu.iter().map(|(r, i)| Complex64::new(*r, *i)).collect(), eta);
        let s = CellSection::new(&ctx, params.clone(), BumpFunction::plain(vec![0.0; 4], 0.5));
        // u' inside the support, so both sides are nonzero.
        let u = UnipotentCoords::new(u.into_iter().map(|k| rat(k, 5)).collect());
        let w0 = long_weyl_element::<Rational>(&ctx).into_matrix();
        let g = &w0 * assemble_unipotent(&ctx, &u).unwrap().matrix();
        let b0 = borel_assemble(&ctx, &b).unwrap().into_matrix();
        let logs: Vec<f64> = b.scales.iter().map(|a| Scalar::to_f64(a).ln()).collect();
        let lhs = section_eval(&s, &(&b0 * &g));
        let rhs = params.borel_factor(&b.signs, &logs) * section_eval(&s, &g);
        prop_assert!(rhs.norm() > 0.0);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm(), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn averaged_section_vanishes_off_its_support(x in 1.05f64..3.0, t in proptest::collection::vec(-0.5f64..0.5, 3)) {
        let d = datum(2);
        let p = PrincipalSeriesParam::trivial_eta(vec![Complex64::new(3.0, 0.0), Complex64::new(2.0, 0.0)]);
        let s = AveragedSection::modulated(&d, p, &StabilizerCharacter::new(0.25), 0.5);
        let w0 = long_weyl_element::<f64>(d.ctx()).into_matrix();
        // x outside supp φ_M.
        let r = RChiElement { x, u1: U1Coords::new(t.clone()) }.assemble(&d);
        prop_assert_eq!(averaged_eval(&s, &(&w0 * &r), 2).value(), Complex64::new(0.0, 0.0));
        // B itself misses Bw₀P.
        let u = assemble_unipotent(d.ctx(), &UnipotentCoords::new(vec![t[0], t[1], t[2], x])).unwrap();
        prop_assert_eq!(averaged_eval(&s, u.matrix(), 2).value(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn unmodulated_bump_has_positive_mean(
        center in proptest::collection::vec(-2.0f64..2.0, 1..4),
        radius in 0.1f64..2.0,
    ) {
        let phi = BumpFunction::plain(center.clone(), radius);
        let f = bump_fourier(&phi, &vec![0.0; center.len()], 1e-10).unwrap();
        prop_assert!(f.value().re > 0.0);
        prop_assert!(f.value().im.abs() <= 1e-12 * f.value().re);
        let want = (MOLLIFIER_MASS * radius).powi(center.len() as i32);
        prop_assert!((f.value().re - want).abs() <= 1e-9 * want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn lambda_is_linear(
        a in (-2.0f64..2.0, -2.0f64..2.0),
        b in (-2.0f64..2.0, -2.0f64..2.0),
        shift in proptest::collection::vec(-0.3f64..0.3, 4),
    ) {
        let d = datum(2);
        let ctx = d.ctx().clone();
        let omega = StabilizerCharacter::new(0.25);
        let p = PrincipalSeriesParam::trivial_eta(vec![Complex64::new(3.0, 0.0), Complex64::new(2.0, 0.0)]);
        let f1 = CellSection::new(&ctx, p.clone(), BumpFunction::plain(vec![0.0; 4], 0.5));
        let f2 = CellSection::new(&ctx, p, BumpFunction::plain(shift, 0.4).with_modulation(vec![0.5, 0.0, -1.0, 0.25]));
        let (a, b) = (Complex64::new(a.0, a.1), Complex64::new(b.0, b.1));
        let combo = Combination::new(vec![(a, &f1 as &dyn CellSupported), (b, &f2)]);
        let (lhs, _) = bessel_on_cell_rule(&d, &omega, &combo, 4, None);
        let (l1, _) = bessel_on_cell_rule(&d, &omega, &f1, 4, None);
        let (l2, _) = bessel_on_cell_rule(&d, &omega, &f2, 4, None);
        let rhs = a * l1 + b * l2;
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (a.norm() * l1.norm() + b.norm() * l2.norm()));
    }
}

#[test]
fn off_frequency_transform_is_negligible() {
    // Oracle: the same one-dimensional integral by a fine midpoint sum.
    let d = datum(2);
    let omega = StabilizerCharacter::new(0.25);
    let p =
        PrincipalSeriesParam::trivial_eta(vec![Complex64::new(3.0, 0.0), Complex64::new(2.0, 0.0)]);
    let on = AveragedSection::modulated(&d, p, &omega, 0.5);
    let mut off = on.clone();
    off.phi_m = BumpFunction::plain(vec![0.0], 1.0).with_modulation(vec![50.25]);
    let f_on = lambda_factored(&omega, &on, 1e-12).unwrap();
    let f_off = lambda_factored(&omega, &off, 1e-12).unwrap();

    let steps = 200_000;
    let h = 2.0 / steps as f64;
    let mid: Complex64 = (0..steps)
        .map(|k| {
            let x = -1.0 + (k as f64 + 0.5) * h;
            mollifier(x) * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 50.0 * x) * h
        })
        .sum();
    assert!(
        (f_off.m_factor.value() - mid).norm() < 1e-12,
        "{} vs {mid}",
        f_off.m_factor.value()
    );
    assert!(f_off.total.value.norm() < 1e-8 * f_on.total.value.norm());
    // The other factors are untouched.
    assert_eq!(f_off.b_factor, f_on.b_factor);
    assert_eq!(f_off.u1_factor, f_on.u1_factor);
}
