use h2contract::basis::BasisParams;
use h2contract::geometry::{embed, AmbientPoint, ChartId, ChartPoint};
use h2contract::lbop::{eigenvalue_estimate, lb_apply, FDScheme};
use h2contract::ComplexVal;

fn pt(chart: ChartId, a: f64, b: f64) -> ChartPoint {
    ChartPoint::new(chart, a, b).unwrap()
}

#[test]
fn halving_the_step_scales_the_error_by_the_order() {
    let par = BasisParams::S { rho: 1.0, m: 0 };
    let p = pt(ChartId::PseudoSpherical, 0.7, 0.3);
    for (order, h) in [(2u8, 2e-2), (4u8, 8e-2)] {
        let err = |h: f64| {
            let s = FDScheme { order, rel_step: h, richardson: false };
            (eigenvalue_estimate(&par, &p, 1.0, &s).unwrap() - 1.25).norm()
        };
        let ratio = err(h) / err(h / 2.0);
        let want = 2f64.powi(order as i32);
        assert!(ratio >= want / 2.0 && ratio <= want * 2.0, "order {order}: ratio {ratio}");
    }
}

#[test]
fn richardson_improves_order_two() {
    let par = BasisParams::S { rho: 1.0, m: 0 };
    let p = pt(ChartId::PseudoSpherical, 0.7, 0.3);
    let plain = FDScheme { order: 2, rel_step: 2e-2, richardson: false };
    let rich = FDScheme { richardson: true, ..plain };
    let e = |s: &FDScheme| (eigenvalue_estimate(&par, &p, 1.0, s).unwrap() - 1.25).norm();
    assert!(e(&rich) < 0.01 * e(&plain));
}

#[test]
fn eigenvalue_is_positive() {
    // Δ_LB Ψ = +(ρ² + ¼)/R² Ψ, not its negative.
    let radius = 2.0;
    let par = BasisParams::S { rho: 1.5, m: 1 };
    let ev = eigenvalue_estimate(&par, &pt(ChartId::PseudoSpherical, 0.9, 1.0), radius, &FDScheme::default()).unwrap();
    let want = (1.5f64 * 1.5 + 0.25) / (radius * radius);
    assert!((ev - want).norm() <= 1e-6 * want, "{ev}");
}

/// Chart coordinates of an ambient point, by Newton iteration on the
/// embedding started from the nearest point of a coarse grid.
fn invert(chart: ChartId, target: AmbientPoint, radius: f64) -> ChartPoint {
    let (lo, hi) = match chart {
        ChartId::PseudoSpherical => ([0.01, 0.0], [3.0, std::f64::consts::TAU]),
        ChartId::Equidistant => ([-3.0, -3.0], [3.0, 3.0]),
        ChartId::Horocyclic => ([-3.0, 0.05], [3.0, 4.0]),
        ChartId::SemiCircularParabolic | ChartId::SemiCircularParabolicRotated => ([0.05, 0.05], [3.0, 3.0]),
        ChartId::EllipticParabolic => ([0.02, -1.5], [3.0, 1.5]),
        ChartId::HyperbolicParabolic => ([0.02, 0.02], [3.0, 3.12]),
    };
    let resid = |a: f64, b: f64| -> Option<[f64; 2]> {
        let u = embed(&ChartPoint::new(chart, a, b).ok()?, radius).ok()?;
        Some([u.u1 - target.u1, u.u2 - target.u2])
    };
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=120 {
        for j in 0..=120 {
            let a = lo[0] + (hi[0] - lo[0]) * i as f64 / 120.0;
            let b = lo[1] + (hi[1] - lo[1]) * j as f64 / 120.0;
            if let Some(r) = resid(a, b) {
                let n = r[0].hypot(r[1]);
                if n < best.0 {
                    best = (n, a, b);
                }
            }
        }
    }
    let (mut a, mut b) = (best.1, best.2);
    for _ in 0..50 {
        let r = resid(a, b).unwrap();
        if r[0].hypot(r[1]) < 1e-14 * radius {
            break;
        }
        let h = 1e-7;
        let ra = resid(a + h, b).unwrap();
        let rb = resid(a, b + h).unwrap();
        let j = [[(ra[0] - r[0]) / h, (rb[0] - r[0]) / h], [(ra[1] - r[1]) / h, (rb[1] - r[1]) / h]];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        a -= (j[1][1] * r[0] - j[0][1] * r[1]) / det;
        b -= (-j[1][0] * r[0] + j[0][0] * r[1]) / det;
    }
    pt(chart, a, b)
}

#[test]
fn laplacian_of_ambient_field_is_chart_independent() {
    let radius = 1.5;
    let field = |q: &ChartPoint| {
        let u = embed(q, radius)?;
        Ok(ComplexVal::new(u.u2 / radius + 0.3 * (u.u1 / radius).powi(2), (u.u0 / radius).sin()))
    };
    let scheme = FDScheme::default();
    // An ambient point reachable from every chart (u2 ≠ 0 for the HP chart).
    let base = pt(ChartId::Horocyclic, 0.3, 0.8);
    let target = embed(&base, radius).unwrap();
    let reference = lb_apply(field, &base, radius, &scheme).unwrap();
    for chart in ChartId::ALL {
        let p = invert(chart, target, radius);
        let u = embed(&p, radius).unwrap();
        assert!((u.u0 - target.u0).abs() < 1e-9, "{chart}: inversion failed");
        let v = lb_apply(field, &p, radius, &scheme).unwrap();
        assert!((v - reference).norm() <= 1e-5 * reference.norm().max(1.0), "{chart}: {v} vs {reference}");
    }
}
