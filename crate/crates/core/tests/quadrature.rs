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

mod quadrature {
    use super::prelude::*;

    #[test]
    fn weights_sum_to_two_and_integrate_polynomials() {
        for level in 0..=7 {
            let (x, w) = clenshaw_curtis(level);
            let s: f64 = w.iter().sum();
            assert!((s - 2.0).abs() < 1e-13);
            if level >= 2 {
                // ∫ x⁴ = 2/5
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum();
                assert!((q - 0.4).abs() < 1e-13, "level {level}");
            }
        }
    }

    #[test]
    fn trapezoid_is_spectral_for_bumps() {
        let bump = |t: f64| {
            let q = 1.0 - t * t;
            if q <= 0.0 {
                0.0
            } else {
                (-1.0 / q).exp()
            }
        };
        let bx = QuadBox::new(vec![-1.2], vec![1.2]).unwrap();
        let r = TensorRule::with_family(&bx, 8, RuleFamily::Trapezoid)
            .integrate(|p| Complex64::new(bump(p[0]), 0.0));
        assert!((r.value.re - 0.443_993_816_168_079_4).abs() < 1e-12);
        let (x, w) = trapezoid(3);
        assert_eq!(x.len(), 9);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn weighted_gauss_rules() {
        // Legendre weight: classical 3-point rule, up to the O(1/m) error of
        // discretizing a weight that does not vanish at ±1.
        let (x, w) = gauss_for_weight(|_| 1.0, 3, 4000);
        let r = (0.6f64).sqrt();
        assert!((x[0] + r).abs() < 1e-3 && x[1].abs() < 1e-12 && (x[2] - r).abs() < 1e-3);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-2);
        // Bump weight: exact on polynomials of degree 2k − 1; the moments
        // come from an independent fine trapezoid sum.
        let bump = |t: f64| {
            if t.abs() < 1.0 {
                (-1.0 / (1.0 - t * t)).exp()
            } else {
                0.0
            }
        };
        let (x, w) = gauss_for_weight(bump, 6, 4096);
        for deg in [0, 2, 6, 10] {
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg)).sum();
            let n = 20_000;
            let h = 2.0 / n as f64;
            let exact: f64 = (1..n)
                .map(|j| {
                    let t = -1.0 + h * j as f64;
                    h * bump(t) * t.powi(deg)
                })
                .sum();
            assert!((q - exact).abs() < 1e-14, "degree {deg}");
        }
        assert!((w.iter().sum::<f64>() - 0.443_993_816_168_079_4).abs() < 1e-14);
    }

    #[test]
    fn product_rule_order() {
        let rule = ProductRule::new(vec![
            (vec![0.0, 1.0], vec![1.0, 2.0]),
            (vec![5.0], vec![3.0]),
        ]);
        assert_eq!(rule.len(), 2);
        assert_eq!(rule.node(1), (vec![1.0, 5.0], 6.0));
        let v = rule.integrate(|p| Complex64::new(p[0] + p[1], 0.0));
        assert_eq!(v, Complex64::new(5.0 * 3.0 + 6.0 * 6.0, 0.0));
    }

    #[test]
    fn nested_nodes() {
        let (fine, _) = clenshaw_curtis(4);
        let (coarse, _) = clenshaw_curtis(3);
        for (k, c) in coarse.iter().enumerate() {
            assert!((fine[2 * k] - c).abs() < 1e-15);
        }
    }

    #[test]
    fn tensor_gaussian() {
        let bx = QuadBox::new(vec![-1.0, 0.0], vec![1.0, 2.0]).unwrap();
        let rule = TensorRule::new(&bx, 5);
        let r = rule.integrate(|p| Complex64::new((-(p[0] * p[0]) - p[1]).exp(), 0.0));
        // ∫_{-1}^{1} e^{-x²} dx · (1 − e^{-2})
        let exact = 1.493_648_265_624_854_f64 * (1.0 - (-2.0f64).exp());
        assert!((r.value.re - exact).abs() < 1e-12);
        assert!(r.abs_err < 1e-6);
        assert_eq!(r.nodes, 33 * 33);
        assert!(r.boundary_max > 0.0);
    }

    #[test]
    fn adaptive_oscillatory() {
        let r = integrate_1d(
            |t| Complex64::from_polar(1.0, 10.0 * t),
            0.0,
            1.0,
            1e-12,
            14,
        )
        .unwrap();
        let exact = (Complex64::from_polar(1.0, 10.0) - 1.0) / Complex64::new(0.0, 10.0);
        assert!((r.value - exact).norm() < 1e-12);
    }

    #[test]
    fn unreachable_tolerance_is_reported() {
        let e = integrate_1d(|t| Complex64::new(t.abs().sqrt(), 0.0), -1.0, 1.0, 1e-15, 5);
        assert!(matches!(e, Err(QuadError::ToleranceNotReached { .. })));
    }

    #[test]
    fn box_helpers() {
        let b = QuadBox::bounding(&[vec![0.0, 1.0], vec![2.0, 1.0]], 0.5).unwrap();
        assert_eq!(b, QuadBox::new(vec![0.0, 0.5], vec![2.0, 1.5]).unwrap());
        let e = b.expanded(2.0);
        assert_eq!(e.lo, vec![-1.0, 0.0]);
        assert!(e.contains(&[2.9, 1.9]));
        assert!(QuadBox::new(vec![1.0], vec![1.0]).is_err());
    }
}
