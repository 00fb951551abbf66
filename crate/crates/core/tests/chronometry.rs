use proptest::prelude::*;

use timeop::chronometry::*;
use timeop::lattice::{gaussian_packet, Model, MomentumGrid, Projection, SpinorGrid};

struct Ballistic {
    state: SpinorGrid,
    x_d: f64,
    mass: f64,
    p0: f64,
}

fn ballistic(p0: f64, sigma_p: f64) -> Ballistic {
    let grid = MomentumGrid::new(1024, 32.0).unwrap();
    let mass = 1.0;
    let state = gaussian_packet(grid, Model::Schrodinger { mass }, 0.0, p0, sigma_p, Projection::PositiveEnergy).unwrap();
    // ten position widths downstream
    let x_d = 10.0 / (2.0 * sigma_p);
    Ballistic { state, x_d, mass, p0 }
}

fn detector_series(b: &Ballistic) -> TimeSeriesAtPoint {
    let t_arr = b.x_d * b.mass / b.p0;
    let dt = t_arr / 400.0;
    let s = TimeSeriesAtPoint::from_state(&b.state, b.x_d, 0.0, dt, 1001).unwrap();
    assert!(s.endpoint_ratio() <= 1e-6, "window too short: {}", s.endpoint_ratio());
    s
}

fn flux_density_mean(b: &Ballistic) -> EstimatorResult {
    let (xs, rho) = surface_from_state(&b.state);
    let tmap = ballistic_time_map(xs, 0.0, b.x_d, b.mass, b.p0).unwrap();
    theorem2_mean(&theorem2_density(&tmap, &rho).unwrap(), false).unwrap()
}

fn surface_mean(b: &Ballistic) -> EstimatorResult {
    let (xs, rho) = surface_from_state(&b.state);
    let tmap = ballistic_time_map(xs, 0.0, b.x_d, b.mass, b.p0).unwrap();
    theorem1_mean(&tmap, &rho, false).unwrap()
}

#[test]
fn ballistic_estimators_agree_with_classical_arrival() {
    let b = ballistic(10.0, 0.5);
    let oracle = b.x_d * b.mass / b.p0;
    let series = detector_series(&b);
    let presence = presence_time_mean(&series).unwrap().mean_time;
    let flux = flux_density_mean(&b).mean_time;
    let current = current_arrival_mean(&series).unwrap().mean_time;
    for (name, v) in [("presence", presence), ("flux-density", flux), ("current-arrival", current)] {
        assert!((v - oracle).abs() / oracle <= 0.01, "{name}: {v} vs {oracle}");
    }
    for (a, b) in [(presence, flux), (presence, current), (flux, current)] {
        assert!((a - b).abs() / a.abs().min(b.abs()) <= 0.02);
    }
    let r = current_arrival_mean(&series).unwrap();
    assert!(r.negative_current_fraction.unwrap() < 1e-6);
    assert_eq!(r.validity.as_str(), "critiqued");
}

#[test]
fn surface_and_flux_means_coincide_on_linear_maps() {
    let b = ballistic(10.0, 0.5);
    let t1 = surface_mean(&b);
    let t2 = flux_density_mean(&b);
    assert!((t1.mean_time - t2.mean_time).abs() <= 1e-10);
    assert_eq!(t1.validity.as_str(), "endorsed");
}

#[test]
fn massless_current_arrival_equals_presence() {
    let grid = MomentumGrid::new(512, 16.0).unwrap();
    let s = gaussian_packet(grid, Model::Dirac { mass: 0.0 }, 0.0, 3.0, 0.5, Projection::Helicity(1)).unwrap();
    let series = TimeSeriesAtPoint::from_state(&s, 8.0, 0.0, 0.02, 801).unwrap();
    let a = presence_time_mean(&series).unwrap().mean_time;
    let b = current_arrival_mean(&series).unwrap().mean_time;
    assert!((a - b).abs() <= 1e-10);
    assert!((a - 8.0).abs() / 8.0 <= 0.01);
}

fn gaussian_surface(xs: &[f64], center: f64, width: f64) -> Vec<f64> {
    let norm = 1.0 / (width * (2.0 * std::f64::consts::PI).sqrt());
    xs.iter().map(|x| norm * (-(x - center).powi(2) / (2.0 * width * width)).exp()).collect()
}

fn line(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

#[test]
fn surface_mean_examples() {
    let xs = line(-20.0, 20.0, 4001);
    let rho = gaussian_surface(&xs, 3.0, 1.2);
    // a constant map is not strictly monotonic, so the surface mean is fed directly
    let flat = TimeFunctionMap::new(xs.clone(), xs.iter().map(|x| 4.0 + 1e-12 * x).collect()).unwrap();
    assert!((theorem1_mean(&flat, &rho, false).unwrap().mean_time - 4.0).abs() < 1e-9);
    let v = 2.5;
    let tmap = TimeFunctionMap::from_fn(xs.clone(), |x| x / v).unwrap();
    assert!((theorem1_mean(&tmap, &rho, false).unwrap().mean_time - 3.0 / v).abs() <= 1e-6);
    // point mass at x_d
    let mut spike = vec![0.0; xs.len()];
    let k = 2500;
    spike[k] = 1.0 / (xs[1] - xs[0]);
    assert!((theorem1_mean(&tmap, &spike, false).unwrap().mean_time - xs[k] / v).abs() < 1e-12);
    let d = theorem2_density(&tmap, &spike).unwrap();
    assert!((theorem2_mean(&d, false).unwrap().mean_time - xs[k] / v).abs() < 1e-12);
}

#[test]
fn unnormalized_surface_is_refused_unless_renormalized() {
    let xs = line(-20.0, 20.0, 2001);
    let rho: Vec<f64> = gaussian_surface(&xs, 0.0, 1.0).iter().map(|r| 2.0 * r).collect();
    let tmap = TimeFunctionMap::from_fn(xs, |x| x + 1.0).unwrap();
    assert!(matches!(theorem1_mean(&tmap, &rho, false), Err(ChronometryError::NotNormalized { .. })));
    let r = theorem1_mean(&tmap, &rho, true).unwrap();
    assert!((r.mean_time - 1.0).abs() < 1e-9);
    assert!((r.raw_mass - 2.0).abs() < 1e-9);
}

#[test]
fn uniform_surface_gives_uniform_time_density() {
    let (l, v) = (6.0, 2.0);
    let xs = line(0.0, l, 601);
    let rho = vec![1.0 / l; xs.len()];
    let tmap = TimeFunctionMap::from_fn(xs, |x| x / v).unwrap();
    let d = theorem2_density(&tmap, &rho).unwrap();
    assert!(d.f.iter().all(|f| (f - v / l).abs() < 1e-12));
    assert_eq!((d.t[0], *d.t.last().unwrap()), (0.0, l / v));
    assert!((theorem2_mean(&d, false).unwrap().mean_time - l / (2.0 * v)).abs() < 1e-12);
}

#[test]
fn change_of_variables_conserves_mass_on_curved_maps() {
    let xs = line(-8.0, 8.0, 8001);
    let rho = gaussian_surface(&xs, 0.5, 1.0);
    let tmap = TimeFunctionMap::from_fn(xs, |x| x + x.powi(3) / 3.0).unwrap();
    let d = theorem2_density(&tmap, &rho).unwrap();
    assert!((d.mass() - d.surface_mass).abs() <= 1e-6);
}

#[test]
fn decreasing_map_is_reported_ascending() {
    let xs = line(-5.0, 5.0, 101);
    let rho = gaussian_surface(&xs, 0.0, 1.0);
    let tmap = TimeFunctionMap::from_fn(xs, |x| -2.0 * x).unwrap();
    let d = theorem2_density(&tmap, &rho).unwrap();
    assert!(d.t.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn report_csv_header() {
    let r = omega_average_demo(&[(1.0, 1.0)]).unwrap().result;
    let csv = results_csv(&[r]);
    assert!(csv.starts_with("method,mean_time,raw_mass,window_lo,window_hi,validity_note\n"));
    assert!(csv.contains("omega-average,1.0000000000000000e0"));
}

fn pulse() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    prop::collection::vec((0.0f64..1.0, -0.1f64..1.0), 5..40).prop_map(|v| v.into_iter().unzip())
}

proptest! {
    #[test]
    fn detector_means_are_scale_invariant((d, j) in pulse(), scale in 0.01f64..100.0, t0 in -5.0f64..5.0) {
        prop_assume!(j.iter().sum::<f64>() > 0.5);
        let a = TimeSeriesAtPoint::new(0.0, t0, 0.1, d.clone(), j.clone()).unwrap();
        let b = TimeSeriesAtPoint::new(0.0, t0, 0.1,
            d.iter().map(|v| v * scale).collect(), j.iter().map(|v| v * scale).collect()).unwrap();
        if let (Ok(x), Ok(y)) = (presence_time_mean(&a), presence_time_mean(&b)) {
            prop_assert!((x.mean_time - y.mean_time).abs() <= 1e-9 * (1.0 + x.mean_time.abs()));
        }
        if let (Ok(x), Ok(y)) = (current_arrival_mean(&a), current_arrival_mean(&b)) {
            prop_assert!((x.mean_time - y.mean_time).abs() <= 1e-9 * (1.0 + x.mean_time.abs()));
        }
    }

    #[test]
    fn detector_means_are_time_covariant((d, j) in pulse(), shift in -50.0f64..50.0) {
        prop_assume!(j.iter().sum::<f64>() > 0.5 && d.iter().sum::<f64>() > 0.5);
        let a = TimeSeriesAtPoint::new(0.0, 1.0, 0.1, d.clone(), j.clone()).unwrap();
        let b = TimeSeriesAtPoint::new(0.0, 1.0 + shift, 0.1, d, j).unwrap();
        let tol = 1e-9 * (1.0 + shift.abs());
        prop_assert!((presence_time_mean(&b).unwrap().mean_time - presence_time_mean(&a).unwrap().mean_time - shift).abs() <= tol);
        prop_assert!((current_arrival_mean(&b).unwrap().mean_time - current_arrival_mean(&a).unwrap().mean_time - shift).abs() <= tol);
    }

    #[test]
    fn surface_means_scale_and_shift(center in -3.0f64..3.0, width in 0.5f64..2.0, scale in 0.1f64..10.0, shift in -10.0f64..10.0) {
        let xs = line(-20.0, 20.0, 2001);
        let rho = gaussian_surface(&xs, center, width);
        let scaled: Vec<f64> = rho.iter().map(|r| r * scale).collect();
        let m1 = TimeFunctionMap::from_fn(xs.clone(), |x| 0.5 * x).unwrap();
        let m2 = TimeFunctionMap::from_fn(xs, |x| 0.5 * x + shift).unwrap();
        let a = theorem1_mean(&m1, &rho, true).unwrap().mean_time;
        let b = theorem1_mean(&m2, &scaled, true).unwrap().mean_time;
        prop_assert!((b - a - shift).abs() <= 1e-9);
        let fa = theorem2_mean(&theorem2_density(&m1, &rho).unwrap(), true).unwrap().mean_time;
        let fb = theorem2_mean(&theorem2_density(&m2, &scaled).unwrap(), true).unwrap().mean_time;
        prop_assert!((fb - fa - shift).abs() <= 1e-9);
    }

    #[test]
    fn omega_average_shift_covariance(snaps in prop::collection::vec((0.0f64..10.0, 0.01f64..1.0), 1..8), shift in -5.0f64..5.0) {
        let a = omega_average_demo(&snaps).unwrap().result.mean_time;
        let moved: Vec<(f64, f64)> = snaps.iter().map(|(t, w)| (t + shift, *w)).collect();
        let b = omega_average_demo(&moved).unwrap().result.mean_time;
        prop_assert!((b - a - shift).abs() <= 1e-9);
    }
}

#[test]
fn classical_limit_sweep() {
    for (p0, sigma) in [(10.0, 0.5), (12.0, 0.4), (8.0, 0.4)] {
        let b = ballistic(p0, sigma);
        let oracle = b.x_d * b.mass / b.p0;
        let series = detector_series(&b);
        let vals = [
            presence_time_mean(&series).unwrap().mean_time,
            flux_density_mean(&b).mean_time,
            current_arrival_mean(&series).unwrap().mean_time,
        ];
        for v in vals {
            assert!((v - oracle).abs() / oracle <= 0.01, "p0 = {p0}: {v} vs {oracle}");
        }
    }
}
