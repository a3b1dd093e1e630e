use eigenflow_core::homotopy::{HomotopySpec, RadialBulbParams, RotatedCardioidParams};
use eigenflow_core::spectra::{build_eigenset, SequenceFamily, DEFAULT_TOLERANCE};
use eigenflow_core::Complex64;

fn specs() -> Vec<HomotopySpec> {
    vec![
        HomotopySpec::Linear {
            target: Complex64::new(-0.75, 0.0),
        },
        HomotopySpec::Cardioid,
        HomotopySpec::TunedCardioid(RotatedCardioidParams::default()),
        HomotopySpec::RadialBulb(RadialBulbParams::default()),
        HomotopySpec::Scale,
        HomotopySpec::Jungreis { m: 65 },
        HomotopySpec::Boundary,
    ]
}

/// Largest jump between consecutive samples of `t -> H(z, t)` on `steps` intervals.
fn max_jump(h: &HomotopySpec, z: Complex64, steps: usize) -> f64 {
    let mut prev = h.eval(z, 0.0).unwrap();
    let mut worst = 0.0f64;
    for i in 1..=steps {
        let cur = h.eval(z, i as f64 / steps as f64).unwrap();
        worst = worst.max((cur - prev).norm());
        prev = cur;
    }
    worst
}

// Lipschitz paths halve their largest step when the grid is refined; a jump
// would keep it fixed.
#[test]
fn paths_are_continuous_in_t() {
    let es = build_eigenset(SequenceFamily::Fibonacci, 30, DEFAULT_TOLERANCE).unwrap();
    for h in specs() {
        for r in es.records.iter().step_by(7) {
            let z = r.reciprocal;
            let coarse = max_jump(&h, z, 400);
            let fine = max_jump(&h, z, 1600);
            assert!(coarse.is_finite(), "{} at {z}", h.name());
            assert!(
                fine <= 0.3 * coarse + 1e-12,
                "{} at {z}: {coarse} -> {fine}",
                h.name()
            );
        }
    }
}

#[test]
fn paths_end_where_maps_say() {
    let es = build_eigenset(SequenceFamily::Fibonacci, 12, DEFAULT_TOLERANCE).unwrap();
    for r in &es.records {
        let z = r.reciprocal;
        for h in specs() {
            let a = h.eval(z, 1.0).unwrap();
            let b = h.eval(z, 1.0 - 1e-9).unwrap();
            // extrapolated series values can be huge, so scale by the displacement
            let scale = 1.0 + (a - z).norm();
            assert!(
                (a - b).norm() < 1e-6 * scale,
                "{} jumps at t = 1 for {z}",
                h.name()
            );
        }
    }
}
