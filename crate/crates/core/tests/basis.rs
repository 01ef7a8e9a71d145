use std::f64::consts::TAU;

use h2contract::basis::{eval_basis, ho_normalization, BasisParams};
use h2contract::geometry::{ChartId, ChartPoint};
use h2contract::LogComplex;
use proptest::prelude::*;

fn value(par: &BasisParams, chart: ChartId, a: f64, b: f64, radius: f64) -> LogComplex {
    eval_basis(par, &ChartPoint::new(chart, a, b).unwrap(), radius).unwrap().value
}

fn rel(a: LogComplex, b: LogComplex) -> f64 {
    let d = a.sub(&b);
    if d.is_zero() { 0.0 } else { (d.log_mag - a.log_mag.max(b.log_mag)).exp() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pseudo_spherical_periodic(rho in 0.2..5.0f64, m in -4i32..=4, tau in 0.05..1.5f64, phi in 0.0..TAU) {
        let par = BasisParams::S { rho, m };
        let a = value(&par, ChartId::PseudoSpherical, tau, phi, 1.0);
        let b = value(&par, ChartId::PseudoSpherical, tau, phi + TAU, 1.0);
        prop_assert!(rel(a, b) <= 1e-12);
    }

    #[test]
    fn equidistant_reflection(rho in 0.2..5.0f64, nu in -4.0..4.0f64, t1 in -1.3..1.3f64, t2 in -2.0..2.0f64) {
        let a = value(&BasisParams::Eq { rho, nu, eps: 1 }, ChartId::Equidistant, t1, t2, 1.0);
        let b = value(&BasisParams::Eq { rho, nu, eps: -1 }, ChartId::Equidistant, -t1, t2, 1.0);
        prop_assert!(rel(a, b) <= 1e-10);
    }

    #[test]
    fn semi_circular_swap(rho in 0.2..5.0f64, s in 0.1..4.0f64, xi in 0.2..2.0f64, eta in 0.2..2.0f64) {
        let a = value(&BasisParams::Scp { rho, s: -s }, ChartId::SemiCircularParabolic, xi, eta, 1.0);
        let b = value(&BasisParams::Scp { rho, s }, ChartId::SemiCircularParabolic, eta, xi, 1.0);
        prop_assert!(rel(a, b) <= 1e-10);
    }

    #[test]
    fn horocyclic_normalization(rho in 0.1..200.0f64, radius in 0.1..100.0f64) {
        let n = ho_normalization(rho, radius);
        // ln √(ρ sinh πρ / 2R²π³) with sinh written out for moderate ρ.
        let direct = if rho < 50.0 {
            0.5 * (rho * (std::f64::consts::PI * rho).sinh() / (2.0 * radius * radius * std::f64::consts::PI.powi(3))).ln()
        } else {
            0.5 * (rho.ln() + std::f64::consts::PI * rho - 2f64.ln() - 2f64.ln() - 2.0 * radius.ln() - 3.0 * std::f64::consts::PI.ln())
        };
        prop_assert!((n.log_mag - direct).abs() <= 1e-12 * direct.abs().max(1.0));
        prop_assert!(n.phase == 0.0);
    }

    #[test]
    fn linear_matches_log(rho in 0.2..4.0f64, s in 0.3..3.0f64, b in 0.2..2.0f64, th in 0.55..2.6f64) {
        let v = eval_basis(&BasisParams::Hp { rho, s }, &ChartPoint::new(ChartId::HyperbolicParabolic, b, th).unwrap(), 1.0).unwrap();
        let lin = v.linear.unwrap();
        let back = v.value.to_complex().unwrap();
        prop_assert!((lin - back).norm() <= 1e-12 * lin.norm());
    }
}

#[test]
fn no_branch_jumps_along_fine_lines() {
    let families: [(BasisParams, ChartId, [f64; 2], [f64; 2]); 7] = [
        (BasisParams::S { rho: 2.0, m: 1 }, ChartId::PseudoSpherical, [0.05, 0.3], [3.0, 5.9]),
        (BasisParams::Eq { rho: 2.0, nu: 1.3, eps: 1 }, ChartId::Equidistant, [-1.3, -2.0], [1.3, 2.0]),
        (BasisParams::Ho { rho: 2.0, s: -1.1 }, ChartId::Horocyclic, [-2.0, 0.1], [2.0, 3.0]),
        (BasisParams::Scp { rho: 2.0, s: 0.8 }, ChartId::SemiCircularParabolic, [0.1, 2.0], [2.0, 0.1]),
        (BasisParams::Scp { rho: 2.0, s: -0.8 }, ChartId::SemiCircularParabolicRotated, [0.1, 0.1], [2.0, 2.0]),
        (BasisParams::Ep { rho: 2.0, s: 0.9 }, ChartId::EllipticParabolic, [0.05, -1.04], [1.3, 1.04]),
        (BasisParams::Hp { rho: 2.0, s: 0.9 }, ChartId::HyperbolicParabolic, [0.2, 0.53], [2.0, 2.6]),
    ];
    let n = 4000;
    for (par, chart, from, to) in families {
        let vals: Vec<_> = (0..=n)
            .map(|i| {
                let t = i as f64 / n as f64;
                let a = from[0] + (to[0] - from[0]) * t;
                let b = from[1] + (to[1] - from[1]) * t;
                eval_basis(&par, &ChartPoint::new(chart, a, b).unwrap(), 1.0).unwrap().linear.unwrap()
            })
            .collect();
        let scale = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        // Smooth curvature leaves consecutive second differences nearly equal; a
        // branch jump does not.
        let second: Vec<_> = vals.windows(3).map(|w| w[2] - w[1] * 2.0 + w[0]).collect();
        let worst = second.windows(2).map(|w| (w[1] - w[0]).norm()).fold(0.0, f64::max);
        assert!(worst <= 1e-6 * scale, "{chart}: second-difference jump {worst:e} vs scale {scale:e}");
    }
}

#[test]
fn conical_branches_join_smoothly() {
    use h2contract::basis::conical_p;
    for (m, rho) in [(0, 0.4), (1, 2.0), (3, 5.0)] {
        for seam in [1.5, 2.4] {
            let h = 1e-4;
            let v: Vec<f64> = (-2..=2).map(|j| conical_p(m, rho, seam + j as f64 * h).unwrap().to_complex().unwrap().re).collect();
            let scale = v.iter().map(|x| x.abs()).fold(0.0, f64::max);
            let third = (v[3] - 3.0 * v[2] + 3.0 * v[1] - v[0]).abs().max((v[4] - 3.0 * v[3] + 3.0 * v[2] - v[1]).abs());
            assert!(third <= 1e-9 * scale, "m={m} ρ={rho} τ={seam}: {third:e}");
        }
    }
}
