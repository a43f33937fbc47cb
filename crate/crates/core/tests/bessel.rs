mod prelude {
    #![allow(unused_imports)]
    pub use isobessel::bessel::*;
    pub use isobessel::functional::*;
    pub use isobessel::group::*;
    pub use isobessel::linalg::*;
    pub use isobessel::quadrature::*;
    pub use isobessel::sampling::*;
    pub use isobessel::sections::*;
    pub use num_bigint::BigInt;
    pub use num_complex::{Complex, Complex64};
    pub use num_traits::{One, Zero};
}

mod character {
    use super::prelude::*;
    use isobessel::linalg::rat;

    fn chi(ctx: &GroupContext) -> UnipotentCharacter {
        UnipotentCharacter::new(ctx, [rat(1, 1), rat(-1, 1), rat(-1, 2)]).unwrap()
    }

    #[test]
    fn identity_maps_to_one() {
        let ctx = GroupContext::new(2).unwrap();
        let u = U1Coords::<Rational>::zero(&ctx).assemble(&ctx).unwrap();
        assert_eq!(chi_value(&chi(&ctx), u.matrix()), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn rank_two_entries() {
        // Order (e1-e2, e1+e2, e1) reads (u12, u14, u13) at n = 2.
        let ctx = GroupContext::new(2).unwrap();
        let u = U1Coords::new(vec![rat(1, 1), rat(2, 1), rat(1, 1)])
            .assemble(&ctx)
            .unwrap();
        let m = u.matrix();
        assert_eq!(
            (m[(0, 1)].clone(), m[(0, 2)].clone(), m[(0, 3)].clone()),
            (rat(1, 1), rat(1, 1), rat(2, 1))
        );
        assert_eq!(chi(&ctx).phase(m), rat(-1, 1));
        let v = chi_value(&chi(&ctx), m);
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn frequency_matches_phase() {
        for n in 2..=4 {
            let ctx = GroupContext::new(n).unwrap();
            let c = chi(&ctx);
            let t: Vec<_> = (0..u1_dim(&ctx) as i64)
                .map(|k| rat(k * 3 - 4, k + 2))
                .collect();
            let u = U1Coords::new(t.clone()).assemble(&ctx).unwrap();
            let dot = c
                .frequency(&ctx)
                .iter()
                .zip(&t)
                .fold(Rational::zero(), |s, (a, b)| s + a * b);
            assert_eq!(c.phase(u.matrix()), dot, "n = {n}");
        }
    }

    #[test]
    fn rank_two_frequency() {
        let ctx = GroupContext::new(2).unwrap();
        assert_eq!(
            chi(&ctx).frequency(&ctx),
            vec![rat(1, 1), rat(-1, 2), rat(-1, 1)]
        );
    }

    #[test]
    fn zero_vector_rejected() {
        let ctx = GroupContext::new(2).unwrap();
        assert_eq!(
            UnipotentCharacter::new(&ctx, [rat(0, 1), rat(0, 1), rat(0, 1)]),
            Err(BesselError::ZeroCharacter)
        );
    }

    #[test]
    fn psi_reduces_exactly() {
        let big = rat(10_000_000_000_001, 4);
        let v = psi_rational(&big);
        assert!((v - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((psi(-0.25) - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }
}

mod datum {
    use super::prelude::*;
    use isobessel::group::root_subgroup_element;

    fn datum(n: usize) -> BesselDatum {
        BesselDatum::isotropic(&GroupContext::new(n).unwrap()).unwrap()
    }

    #[test]
    fn v_is_isotropic_and_g0_maps_v0() {
        let d = datum(2);
        let j3 = GroupContext::new(1).unwrap().form().clone();
        let q = &(&d.v().transpose() * &j3) * d.v();
        assert!(q.is_zero_matrix());
        assert_eq!(&(d.g0_block() * d.v0()), d.v());
        assert!(GroupContext::new(1)
            .unwrap()
            .is_member(d.g0_block())
            .unwrap());
    }

    #[test]
    fn family_matches_conjugation_pointwise() {
        for n in 2..=3 {
            let d = datum(n);
            let ctx = d.ctx().clone();
            for x in [rat(2, 1), rat(-3, 7), rat(0, 1)] {
                let u = root_subgroup_element(&ctx, &Root::Short(n - 1), x.clone()).unwrap();
                let oracle = &(d.g0() * u.matrix()) * &d.g0().inverse().unwrap();
                assert_eq!(m_of(&d, &x).matrix(), &oracle);
                assert_eq!(x_en_of(&d, &x), u);
                assert!(ctx.is_member(&oracle).unwrap());
            }
        }
    }

    #[test]
    fn top_left_entry_is_square_of_half_x_plus_one() {
        let d = datum(2);
        let p = &d.m_family()[(1, 1)];
        // (x/2 + 1)² = 1 + x + x²/4
        assert_eq!(p.coeffs(), &[rat(1, 1), rat(1, 1), rat(1, 4)]);
    }

    #[test]
    fn one_parameter_law() {
        let d = datum(2);
        for (x, y) in [
            (rat(1, 1), rat(2, 1)),
            (rat(-3, 1), rat(3, 1)),
            (rat(1, 2), rat(1, 2)),
        ] {
            let lhs = m_of(&d, &x).compose(&m_of(&d, &y));
            assert_eq!(lhs, m_of(&d, &(x + y)));
        }
    }

    #[test]
    fn omega_examples() {
        assert_eq!(
            StabilizerCharacter::new(0.3).value(0.0),
            Complex64::new(1.0, 0.0)
        );
        assert_eq!(
            StabilizerCharacter::new(0.0).value(17.5),
            Complex64::new(1.0, 0.0)
        );
        let v = StabilizerCharacter::new(0.5).value(1.0);
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn modular_function_is_trivial() {
        let d = datum(2);
        for x in [rat(0, 1), rat(1, 1), rat(-2, 1), rat(5, 3)] {
            assert_eq!(modular_delta(&d, &x).unwrap(), rat(1, 1));
        }
    }

    #[test]
    fn opposite_borel_meets_only_at_identity() {
        for n in 2..=3 {
            let d = datum(n);
            assert!(m_chi_meets_opposite_borel_trivially(&d));
            assert!(m_family_injective(&d));
        }
    }

    #[test]
    fn multiples_of_v_share_the_stabilizer() {
        let ctx = GroupContext::new(2).unwrap();
        let d = BesselDatum::new(&ctx, [rat(-2, 1), rat(2, 1), rat(1, 1)]).unwrap();
        assert_eq!(d.m_family(), datum(2).m_family());
        assert!(matches!(
            BesselDatum::new(&ctx, [rat(1, 1), rat(0, 1), rat(0, 1)]),
            Err(BesselError::UnsupportedVector(_))
        ));
    }

    #[test]
    fn torus_conjugate_does_not_stabilize() {
        let d = datum(2);
        let torus = Matrix::from_rows(vec![
            vec![rat(2, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(1, 2)],
        ])
        .unwrap();
        let h_block = &(d.g0_block() * &torus) * &d.g0_block().inverse().unwrap();
        let h = d.ctx().embed_middle(&h_block).unwrap();
        let u = U1Coords::new(vec![rat(1, 3), rat(2, 1), rat(-1, 5)]);
        assert!(!stabilizes(&d, &h, &u));
        assert!(stabilizer_check(&d, &rat(7, 2), &u));
    }
}

mod lemma {
    use super::prelude::*;
    use isobessel::group::GroupContext;
    use isobessel::linalg::rat;

    #[test]
    fn identity_triple() {
        let ctx = GroupContext::new(2).unwrap();
        let d = BesselDatum::isotropic(&ctx).unwrap();
        let parts = RChiDecomposition {
            b: BorelElement::identity(&ctx),
            x: rat(0, 1),
            u1: U1Coords::zero(&ctx),
        };
        let g = lemma_compose(&d, &parts);
        assert_eq!(g, long_weyl_element::<Rational>(&ctx).into_matrix());
        assert_eq!(lemma_decompose(&d, &g), Some(parts));
    }

    #[test]
    fn composed_elements_are_in_g() {
        let ctx = GroupContext::new(3).unwrap();
        let d = BesselDatum::isotropic(&ctx).unwrap();
        let mut rng = seeded_rng(7);
        let parts = random_decomposition(&d, &mut rng);
        let g = lemma_compose(&d, &parts);
        assert!(ctx.is_member(&g).unwrap());
        assert_eq!(lemma_decompose(&d, &g), Some(parts));
    }

    #[test]
    fn identity_is_outside() {
        let ctx = GroupContext::new(2).unwrap();
        let d = BesselDatum::isotropic(&ctx).unwrap();
        assert!(lemma_decompose(&d, &Matrix::<Rational>::identity(5)).is_none());
    }

    #[test]
    fn float_path_agrees() {
        let ctx = GroupContext::new(2).unwrap();
        let d = BesselDatum::isotropic(&ctx).unwrap();
        let mut rng = seeded_rng(11);
        let parts = random_decomposition(&d, &mut rng);
        let g = lemma_compose(&d, &parts).to_f64();
        let got = lemma_decompose(&d, &g).unwrap();
        assert!((got.x - parts.x.to_f64()).abs() < 1e-9);
        for (a, b) in got.u1.as_slice().iter().zip(parts.u1.to_f64().as_slice()) {
            assert!((a - b).abs() < 1e-8);
        }
        assert_eq!(got.b.signs, parts.b.signs);
    }

    #[test]
    fn small_batches() {
        for n in 2..=3 {
            let d = BesselDatum::isotropic(&GroupContext::new(n).unwrap()).unwrap();
            assert!(lemma_uniqueness_check(&d, 5, n as u64));
        }
    }
}
