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

mod averaged {
    use super::prelude::*;
    use isobessel::bessel::{lemma_compose, m_of, RChiDecomposition, U1Coords};
    use isobessel::group::{long_weyl_element, GroupContext};
    use isobessel::linalg::{rat, Rational, Scalar};
    use isobessel::sections::MOLLIFIER_MASS;

    fn setup(radius: f64) -> AveragedSection {
        let ctx = GroupContext::new(2).unwrap();
        let d = BesselDatum::isotropic(&ctx).unwrap();
        let params = PrincipalSeriesParam::new(
            vec![Complex64::new(3.0, 0.0), Complex64::new(2.0, 0.0)],
            vec![true, false],
        );
        AveragedSection::modulated(&d, params, &StabilizerCharacter::new(0.25), radius)
    }

    #[test]
    fn phi_factors_on_the_cell() {
        let s = setup(0.5);
        let d = s.datum().clone();
        let parts = RChiDecomposition {
            b: BorelElement {
                signs: vec![1, 1],
                scales: vec![rat(11, 10), rat(9, 10)],
                unipotent: UnipotentCoords::new(vec![
                    rat(1, 10),
                    rat(0, 1),
                    rat(-1, 5),
                    rat(1, 20),
                ]),
            },
            x: rat(1, 3),
            u1: U1Coords::new(vec![rat(1, 4), rat(-1, 5), rat(1, 2)]),
        };
        let g = lemma_compose(&d, &parts).to_f64();
        let mut p: Vec<f64> = parts.b.scales.iter().map(|a| a.to_f64().ln()).collect();
        p.extend(parts.b.unipotent.to_f64().as_slice());
        let want = s.phi_b.value(&p)
            * s.phi_m.value(&[1.0 / 3.0])
            * s.phi_u1.value(&parts.u1.to_f64().into_vec());
        assert!((s.phi(&g) - want).norm() < 1e-12 * want.norm());
        assert_eq!(s.phi(&Matrix::identity(5)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn vanishes_off_the_cell() {
        let s = setup(0.5);
        assert_eq!(
            averaged_eval(&s, &Matrix::identity(5), 2),
            ApproxComplex::zero()
        );
    }

    #[test]
    fn covariance_with_common_nodes() {
        let s = setup(0.5);
        let d = s.datum().clone();
        let w0 = long_weyl_element::<Rational>(d.ctx()).into_matrix();
        let r = m_of(&d, &rat(1, 5)).into_matrix();
        let u1 = U1Coords::new(vec![rat(1, 10), rat(-1, 10), rat(1, 5)])
            .assemble(d.ctx())
            .unwrap()
            .into_matrix();
        let g = (&(&w0 * &r) * &u1).to_f64();
        let b0 = BorelElement {
            signs: vec![-1, 1],
            scales: vec![rat(5, 4), rat(3, 4)],
            unipotent: UnipotentCoords::new(vec![rat(1, 2), rat(1, 3), rat(-1, 1), rat(1, 4)]),
        };
        let b0m = borel_assemble(d.ctx(), &b0).unwrap().into_matrix().to_f64();
        let lhs = averaged_eval(&s, &(&b0m * &g), 2).value();
        let logs: Vec<f64> = b0.scales.iter().map(|a| a.to_f64().ln()).collect();
        let rhs = s.params.borel_factor(&b0.signs, &logs) * averaged_eval(&s, &g, 2).value();
        assert!(rhs.norm() > 0.0);
        assert!((lhs - rhs).norm() <= 1e-4 * rhs.norm());
    }

    #[test]
    fn small_support_expansion() {
        let r = 0.02;
        let s = setup(r);
        let d = s.datum().clone();
        let (x0, t0) = (0.1, vec![0.05, -0.1, 0.2]);
        let w0 = long_weyl_element::<f64>(d.ctx()).into_matrix();
        let rc = isobessel::bessel::RChiElement {
            x: x0,
            u1: U1Coords::new(t0.clone()),
        }
        .assemble(&d);
        let got = averaged_eval(&s, &(&w0 * &rc), 3).value();
        let vol = (r * MOLLIFIER_MASS).powi(6);
        let want = s.phi_w0 * vol * s.phi_m.value(&[x0]) * s.phi_u1.value(&t0);
        assert!((got - want).norm() <= 0.05 * want.norm(), "{got} vs {want}");
    }
}

mod bump {
    use super::prelude::*;

    #[test]
    fn profile_and_support() {
        assert_eq!(mollifier(1.0), 0.0);
        assert_eq!(mollifier(-2.0), 0.0);
        assert!((mollifier(0.0) - (-1.0f64).exp()).abs() < 1e-16);
        let b = BumpFunction::plain(vec![1.0, 2.0], 0.5);
        assert!((b.amplitude(&[1.0, 2.0]) - (-2.0f64).exp()).abs() < 1e-16);
        assert_eq!(b.amplitude(&[1.5, 2.0]), 0.0);
        assert!(b.support().contains(&[0.5, 2.5]));
    }

    #[test]
    fn on_frequency_transform_is_positive_mass() {
        let b = BumpFunction::new(vec![0.3], vec![1.0], vec![0.25]);
        let v = bump_fourier(&b, &[0.25], 1e-13).unwrap();
        assert!((v.re - MOLLIFIER_MASS).abs() < 1e-12);
        assert!(v.im.abs() < 1e-13);
    }

    #[test]
    fn even_unmodulated_is_real() {
        let b = BumpFunction::plain(vec![0.0, 0.0], 0.7);
        for xi in [0.0, 0.4, 3.0] {
            let v = bump_fourier(&b, &[xi, -xi], 1e-12).unwrap();
            assert!(v.im.abs() <= 1e-12, "xi = {xi}");
        }
    }

    #[test]
    fn halving_radius_halves_mass() {
        let wide = BumpFunction::new(vec![0.1], vec![0.8], vec![2.0]);
        let narrow = BumpFunction::new(vec![0.1], vec![0.4], vec![2.0]);
        let a = bump_fourier(&wide, &[2.0], 1e-13).unwrap();
        let b = bump_fourier(&narrow, &[2.0], 1e-13).unwrap();
        assert!((b.re - 0.5 * a.re).abs() < 1e-12);
    }

    #[test]
    fn direct_one_dimensional_check() {
        // Oracle: brute-force midpoint sum of φ(t)e^{−2πiξt}.
        let b = BumpFunction::new(vec![0.2], vec![0.6], vec![1.0]);
        let xi = 2.5;
        let n = 200_000;
        let (lo, hi) = (-0.4, 0.8);
        let h = (hi - lo) / n as f64;
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let t = lo + (k as f64 + 0.5) * h;
            s += b.value(&[t]) * psi(-xi * t) * h;
        }
        let v = bump_fourier(&b, &[xi], 1e-13).unwrap();
        assert!((v.value() - s).norm() < 1e-9);
    }
}

mod sections_root {
    use super::prelude::*;
    use isobessel::group::{
        assemble_unipotent, borel_assemble, long_weyl_element, BorelElement, UnipotentCoords,
    };
    use isobessel::linalg::{rat, Rational};

    fn section(eta_bits: Vec<bool>) -> CellSection {
        let ctx = GroupContext::new(2).unwrap();
        let params = PrincipalSeriesParam::new(
            vec![Complex64::new(3.0, 0.5), Complex64::new(2.0, -1.0)],
            eta_bits,
        );
        CellSection::new(&ctx, params, BumpFunction::plain(vec![0.0; 4], 1.0))
    }

    #[test]
    fn value_at_w0_is_phi_at_zero() {
        let s = section(vec![false, false]);
        let w0 = long_weyl_element::<Rational>(s.ctx()).into_matrix();
        let v = section_eval(&s, &w0);
        assert!((v - Complex64::new((-4.0f64).exp(), 0.0)).norm() < 1e-16);
        assert_eq!(
            section_eval(&s, &Matrix::<Rational>::identity(5)),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn covariance_under_borel() {
        let s = section(vec![true, false]);
        let ctx = s.ctx().clone();
        let w0 = long_weyl_element::<Rational>(&ctx).into_matrix();
        let u = assemble_unipotent(
            &ctx,
            &UnipotentCoords::new(vec![rat(1, 5), rat(-1, 3), rat(1, 4), rat(1, 7)]),
        )
        .unwrap();
        let g = &w0 * u.matrix();
        let b0 = BorelElement {
            signs: vec![-1, 1],
            scales: vec![rat(3, 2), rat(2, 5)],
            unipotent: UnipotentCoords::new(vec![rat(2, 1), rat(-1, 1), rat(5, 3), rat(1, 2)]),
        };
        let b0m = borel_assemble(&ctx, &b0).unwrap().into_matrix();
        let lhs = section_eval(&s, &(&b0m * &g));
        let logs: Vec<f64> = b0.scales.iter().map(|x| x.to_f64().ln()).collect();
        let rhs = s.params().borel_factor(&b0.signs, &logs) * section_eval(&s, &g);
        assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
        assert!(rhs.norm() > 0.0);
    }

    #[test]
    fn eta_signs() {
        let p =
            PrincipalSeriesParam::new(vec![Complex64::new(1.0, 0.0); 3], vec![true, false, true]);
        assert_eq!(p.eta(&[-1, -1, 1]), -1.0);
        assert_eq!(p.eta(&[-1, 1, -1]), 1.0);
        assert_eq!(p.rho(), &[2.5, 1.5, 0.5]);
    }

    #[test]
    fn translation_and_combination() {
        let s = section(vec![false, false]);
        let ctx = s.ctx().clone();
        let w0 = long_weyl_element::<f64>(&ctx).into_matrix();
        let h = assemble_unipotent(&ctx, &UnipotentCoords::new(vec![0.1, 0.0, 0.2, -0.1]))
            .unwrap()
            .into_matrix();
        let t = Translated::new(&s, h.clone());
        assert_eq!(t.eval(&w0), s.eval(&(&w0 * &h)));
        let c = Combination::new(vec![(Complex64::new(0.0, 2.0), &s as &dyn CellSupported)]);
        assert_eq!(c.eval(&w0), Complex64::new(0.0, 2.0) * s.eval(&w0));
        assert_eq!(c.cell_support(), s.cell_support());
    }
}
