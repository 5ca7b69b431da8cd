use num_complex::Complex64;
use proptest::prelude::*;
use triform::forms::{evaluate, pencil, realify, tau};
use triform::linalg::psd_check;
use triform::oracle::{generate, Family, GeneratorSpec};
use triform::{HermitianMatrix, Instance};

fn instance() -> impl Strategy<Value = Instance> {
    (2usize..=6, any::<u64>(), 0usize..3).prop_map(|(dim, seed, fam)| {
        let family = [Family::Certified, Family::Tight, Family::Violating][fam];
        generate(&GeneratorSpec::new(family, dim, seed)).unwrap().instance
    })
}

fn hermitian(n: usize) -> impl Strategy<Value = HermitianMatrix> {
    prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), n * n).prop_map(move |z| {
        let mut rows = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for i in 0..n {
            rows[i][i] = Complex64::new(z[i * n + i].0, 0.0);
            for j in i + 1..n {
                let c = Complex64::new(z[i * n + j].0, z[i * n + j].1);
                rows[i][j] = c;
                rows[j][i] = c.conj();
            }
        }
        HermitianMatrix::from_rows(&rows).unwrap()
    })
}

fn vector(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, n)
}

proptest! {
    #[test]
    fn pencil_is_linear_in_the_forms((inst, x, s) in instance().prop_flat_map(|i| {
        let n = i.dim();
        (Just(i), vector(n), 1e-3f64..1e3)
    })) {
        let lhs = evaluate(&pencil(&inst, s).unwrap(), &x).unwrap();
        let (t, a, b) = (inst.t().quad_form(&x), inst.a().quad_form(&x), inst.b().quad_form(&x));
        let rhs = t - s * a - b / s;
        let size = t.abs() + s * a.abs() + b.abs() / s;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + size));
    }

    #[test]
    fn tau_ignores_sign_and_scale((inst, x, c) in instance().prop_flat_map(|i| {
        let n = i.dim();
        (Just(i), vector(n), prop_oneof![-100.0f64..-0.01, 0.01f64..100.0])
    })) {
        let t0 = tau(&inst, &x).unwrap();
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        let scaled: Vec<f64> = x.iter().map(|v| c * v).collect();
        for t in [tau(&inst, &neg).unwrap(), tau(&inst, &scaled).unwrap()] {
            if t0.is_finite() {
                prop_assert!((t - t0).abs() <= 1e-12 * (1.0 + t0.abs()), "{t} vs {t0}");
            } else {
                prop_assert_eq!(t.is_finite(), t0.is_finite());
            }
        }
    }

    #[test]
    fn realified_form_matches_hermitian_form((m, h) in (1usize..=5).prop_flat_map(|n| {
        (hermitian(n), prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n))
    })) {
        let h: Vec<Complex64> = h.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
        let direct = m.form_value(&h).unwrap();
        let x = triform::forms::decomplexify(&h);
        let real = m.realify().quad_form(&x);
        let norm_h: f64 = h.iter().map(|z| z.norm_sqr()).sum();
        let fro: f64 = (0..m.dim()).flat_map(|i| (0..m.dim()).map(move |j| (i, j))).map(|(i, j)| m.get(i, j).norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((direct - real).abs() <= 1e-10 * (1.0 + fro * norm_h));
    }

    #[test]
    fn realified_psd_matches_hermitian_psd((m, shift, probes) in (1usize..=4).prop_flat_map(|n| {
        (hermitian(n), prop_oneof![Just(-0.1f64), Just(0.1f64)], prop::collection::vec(prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n), 32))
    })) {
        // Shift M so that its smallest eigenvalue (from an independent complex
        // eigensolver) sits at ±0.1: PSD or not, decidedly.
        let n = m.dim();
        let dm = nalgebra::DMatrix::from_fn(n, n, |i, j| m.get(i, j));
        let lambda_min = dm.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
        let rows: Vec<Vec<Complex64>> = (0..n)
            .map(|i| (0..n).map(|j| m.get(i, j) + if i == j { Complex64::new(shift - lambda_min, 0.0) } else { Complex64::new(0.0, 0.0) }).collect())
            .collect();
        let shifted = HermitianMatrix::from_rows(&rows).unwrap();
        let realified_psd = psd_check(&shifted.realify(), 1e-9).unwrap();
        prop_assert_eq!(realified_psd, shift > 0.0);
        if realified_psd {
            for p in &probes {
                let h: Vec<Complex64> = p.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
                prop_assert!(shifted.form_value(&h).unwrap() >= -1e-9);
            }
        }
    }

    #[test]
    fn realify_doubles_the_dimension(seed in any::<u64>(), dim in 2usize..=4) {
        let inst = generate(&GeneratorSpec::new(Family::Certified, dim, seed)).unwrap().instance;
        let h = triform::HermitianInstance::new(
            HermitianMatrix::from_real(inst.t()),
            HermitianMatrix::from_real(inst.a()),
            HermitianMatrix::from_real(inst.b()),
        ).unwrap();
        let real = realify(&h).unwrap();
        prop_assert_eq!(real.dim(), 2 * dim);
        // [[X, -Y], [Y, X]] has twice the squared Frobenius norm of X + iY.
        prop_assert!((real.scale() - 2f64.sqrt() * inst.scale()).abs() <= 1e-12 * inst.scale());
    }
}
