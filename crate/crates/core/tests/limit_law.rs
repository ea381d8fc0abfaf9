use dpqs_core::exact::Constants64;
use dpqs_core::rde::{
    estimate_moments, sample_limit, split_diagnostic, toll, toll_second_moments, LimitSampler,
    Spacings,
};
use dpqs_core::rng::sample_rng;
use dpqs_core::stats::{mean, variance};

#[test]
fn quadrature_matches_constants_and_converges() {
    let c = Constants64::compute();
    let coarse = toll_second_moments(1000).unwrap();
    let fine = toll_second_moments(2000).unwrap();
    for (a, b, exact) in [
        (coarse.sigma2_c(), fine.sigma2_c(), c.sigma2_c),
        (coarse.sigma2_s(), fine.sigma2_s(), c.sigma2_s),
        (coarse.sigma2_cs(), fine.sigma2_cs(), c.sigma2_cs),
    ] {
        // doubling the resolution moves the estimate by less than 1e-4 relative
        assert!(((a - b) / b).abs() < 1e-4, "{a} vs {b}");
        assert!(((b - exact) / exact).abs() < 1e-4, "{b} vs {exact}");
    }
    assert!(fine.mean_b1.abs() < 1e-6 && fine.mean_b2.abs() < 1e-6);
    assert!((fine.corr() - c.corr_limit).abs() < 1e-4);
}

#[test]
fn spacings_moments() {
    let mut rng = sample_rng(1, 0);
    let n = 1_000_000;
    let (mut d1, mut d2, mut d3, mut m) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for _ in 0..n {
        let sp = Spacings::sample(&mut rng);
        assert!((sp.d1 + sp.d2 + sp.d3 - 1.0).abs() < 1e-12);
        d1.push(sp.d1);
        d2.push(sp.d2);
        d3.push(sp.d3);
        m.push(sp.d1.min(sp.d3));
    }
    for (xs, target) in [
        (&d1, 1.0 / 3.0),
        (&d2, 1.0 / 3.0),
        (&d3, 1.0 / 3.0),
        (&m, 1.0 / 6.0),
    ] {
        let se = (variance(xs) / n as f64).sqrt();
        assert!(
            (mean(xs) - target).abs() < 3.0 * se,
            "{} vs {target}",
            mean(xs)
        );
    }
}

#[test]
fn depth_fifteen_and_twentyfive_agree() {
    let c = Constants64::compute();
    let n = 20_000u64;
    let deep = LimitSampler::new(3);
    let shallow = LimitSampler { depth: 15, ..deep };
    let a = estimate_moments(&deep.samples(0..n)).unwrap();
    let b = estimate_moments(&shallow.samples(0..n)).unwrap();
    // same streams, so the difference is the truncation alone
    assert!((a.var_c - b.var_c).abs() < a.var_c_stderr);
    assert!((a.var_s - b.var_s).abs() < a.var_s_stderr);
    assert!((a.var_c - c.sigma2_c).abs() < 4.0 * a.var_c_stderr);
    assert!((a.var_s - c.sigma2_s).abs() < 4.0 * a.var_s_stderr);
}

#[test]
fn unpruned_shallow_tree_is_sum_of_tolls() {
    let mut a = sample_rng(8, 2);
    let mut b = sample_rng(8, 2);
    let x = sample_limit(&mut a, 2, 0.0);
    let root = Spacings::sample(&mut b);
    let t = toll(&root);
    let (mut xc, mut xs) = (t.b1, t.b2);
    for d in root.as_array() {
        let child = toll(&Spacings::sample(&mut b));
        xc += d * child.b1;
        xs += d * child.b2;
    }
    assert_eq!((x.x_c, x.x_s), (xc, xs));
}

#[test]
fn split_tallies_converge() {
    let rows = split_diagnostic(&[100, 1000, 10_000], 2_000, 17).unwrap();
    for w in rows.windows(2) {
        assert!(w[1].mse_s <= w[0].mse_s * 1.1, "{rows:?}");
        assert!(w[1].mse_l <= w[0].mse_l * 1.1, "{rows:?}");
    }
    let last = rows.last().unwrap();
    assert!(
        last.mse_s < 0.02 && last.mse_m < 0.02 && last.mse_l < 0.02,
        "{last:?}"
    );
    assert!((last.frac_right_heavy - 0.5).abs() < 0.05);
}
