use std::f64::consts::TAU;

use approx::assert_relative_eq;
use hypermds::baseline::{euclid_error, euclid_gradient};
use hypermds::linesearch::SearchPath;
use hypermds::*;
use num_complex::Complex64;
use proptest::prelude::*;

/// A random instance: points, dissimilarities with some pairs missing,
/// weights, and a scaling factor.
#[derive(Clone, Debug)]
struct Instance {
    config: Configuration,
    data: DissimilarityData,
    scale: f64,
}

fn instance(max_n: usize, radius: f64) -> impl Strategy<Value = Instance> {
    (2..=max_n).prop_flat_map(move |n| {
        let m = n * (n - 1) / 2;
        (
            prop::collection::vec((0.0..=1.0f64, 0.0..TAU), n),
            prop::collection::vec(0.2..3.0f64, m),
            prop::collection::vec(0.5..2.0f64, m),
            prop::collection::vec(prop::bool::weighted(0.8), m),
            0.3..3.0f64,
        )
            .prop_filter_map(
                "every row needs an observed pair",
                move |(pts, d, w, on, scale)| {
                    let config = Configuration::new(
                        pts.iter()
                            .map(|&(u, th)| {
                                let rho = radius * u.sqrt();
                                DiskPoint::new(rho * th.cos(), rho * th.sin())
                            })
                            .collect(),
                    )
                    .ok()?;
                    let mut delta = SquareMatrix::zeros(n);
                    let mut weights = SquareMatrix::zeros(n);
                    let mut active = vec![false; n * n];
                    let mut i = 0;
                    for j in 0..n {
                        for k in j + 1..n {
                            delta.set_sym(j, k, d[i]);
                            weights.set_sym(j, k, w[i]);
                            active[j * n + k] = on[i];
                            active[k * n + j] = on[i];
                            i += 1;
                        }
                    }
                    let data = DissimilarityData::new(delta, Some(weights), Some(active)).ok()?;
                    Some(Instance {
                        config,
                        data,
                        scale,
                    })
                },
            )
    })
}

fn objectives() -> [Objective; 3] {
    [Objective::Ads, Objective::Rds, Objective::Sam]
}

/// The three errors written out term by term.
fn printed_formula(objective: &Objective, inst: &Instance) -> f64 {
    let (n, a) = (inst.data.n(), inst.scale);
    let mut sum = 0.0;
    let mut observed = 0.0;
    for j in 0..n {
        for k in j + 1..n {
            if !inst.data.is_active(j, k) {
                continue;
            }
            let d = hyp_distance(inst.config[j], inst.config[k]);
            let (delta, w) = (inst.data.delta(j, k), inst.data.weight(j, k));
            observed += delta;
            sum += match objective {
                Objective::Ads => w * (d - a * delta).powi(2),
                Objective::Rds => w * ((d - a * delta) / (a * delta)).powi(2),
                Objective::Sam => w * (d - a * delta).powi(2) / (a * delta),
                Objective::General { .. } => unreachable!(),
            };
        }
    }
    match objective {
        Objective::Sam => sum / (a * observed),
        _ => sum,
    }
}

fn moved(config: &Configuration, j: usize, dz: Complex64) -> Configuration {
    let mut pts = config.points().to_vec();
    let z = pts[j].to_complex() + dz;
    pts[j] = DiskPoint::new(z.re, z.im);
    Configuration::new(pts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn errors_match_printed_formulas(inst in instance(9, 0.9)) {
        for objective in objectives() {
            let model = ErrorModel::new(objective.clone(), inst.scale).unwrap();
            let e = embedding_error(&inst.config, &inst.data, &model).unwrap();
            let oracle = printed_formula(&objective, &inst);
            prop_assert!((e - oracle).abs() <= 1e-14 * oracle.max(1.0), "{e} vs {oracle}");

            let (c, coeffs) = model.to_general(&inst.data);
            let general = ErrorModel::new(Objective::General { c, coeffs }, inst.scale).unwrap();
            let eg = embedding_error(&inst.config, &inst.data, &general).unwrap();
            prop_assert!((e - eg).abs() <= 1e-14 * e.max(1.0));

            let per_pair = model.clone().normalized(true);
            let m = (inst.data.n() * (inst.data.n() - 1) / 2) as f64;
            let en = embedding_error(&inst.config, &inst.data, &per_pair).unwrap();
            prop_assert!((en * m - e).abs() <= 1e-13 * e.max(1.0));
        }
    }

    #[test]
    fn gradient_matches_central_differences(inst in instance(10, 0.9)) {
        const H: f64 = 1e-6;
        for objective in objectives() {
            let model = ErrorModel::new(objective, inst.scale).unwrap();
            let g = gradient(&inst.config, &inst.data, &model).unwrap();
            let e = |c: &Configuration| embedding_error(c, &inst.data, &model).unwrap();
            for (j, gj) in g.components().iter().enumerate() {
                for (dz, analytic) in [(Complex64::new(H, 0.0), gj.re), (Complex64::new(0.0, H), gj.im)] {
                    let fd = (e(&moved(&inst.config, j, dz)) - e(&moved(&inst.config, j, -dz))) / (2.0 * H);
                    let scale = analytic.abs().max(fd.abs()).max(1e-8);
                    prop_assert!((fd - analytic).abs() <= 1e-5 * scale, "point {j}: {fd} vs {analytic}");
                }
            }
        }
    }

    #[test]
    fn line_slope_matches_differences(inst in instance(8, 0.8), frac in 0.0..0.5f64) {
        let model = ErrorModel::new(Objective::Sam, inst.scale).unwrap();
        let g = gradient(&inst.config, &inst.data, &model).unwrap();
        prop_assume!(g.inf_norm() > 1e-8);
        let probe = LineProbe::new(&inst.config, &g, &inst.data, &model).unwrap();
        let r = frac / g.inf_norm();
        let h = 1e-7 / g.inf_norm();
        let fd = (probe.q_eval(r + h).unwrap() - probe.q_eval(r - h).unwrap()) / (2.0 * h);
        let slope = probe.q_slope(r).unwrap();
        prop_assert!((fd - slope).abs() <= 1e-5 * slope.abs().max(fd.abs()).max(1e-8), "{fd} vs {slope}");
        if frac == 0.0 {
            prop_assert_eq!(slope, probe.initial_slope());
        }
        prop_assert!(probe.initial_slope() <= 0.0);
    }

    #[test]
    fn disk_error_is_isometry_invariant(inst in instance(8, 0.9), phi in 0.0..TAU, bu in 0.0..0.9f64, bt in 0.0..TAU) {
        let t = MobiusTransform::new(Complex64::from_polar(1.0, phi), Complex64::from_polar(bu, bt)).unwrap();
        for objective in objectives() {
            let model = ErrorModel::new(objective, inst.scale).unwrap();
            let e = embedding_error(&inst.config, &inst.data, &model).unwrap();
            let et = embedding_error(&inst.config.transform(&t), &inst.data, &model).unwrap();
            prop_assert!((e - et).abs() <= 1e-9 * e.max(1.0));
        }
    }

    #[test]
    fn planar_errors_are_scale_and_motion_invariant(
        pts in prop::collection::vec((-3.0..3.0f64, -3.0..3.0f64), 3..9),
        noise in prop::collection::vec(0.8..1.2f64, 36),
        a in 0.1..10.0f64,
        theta in 0.0..TAU,
        shift in (-5.0..5.0f64, -5.0..5.0f64),
    ) {
        let n = pts.len();
        let plane: Vec<PlanePoint> = pts.iter().map(|&(x, y)| PlanePoint::new(x, y)).collect();
        let delta = SquareMatrix::from_fn(n, |j, k| {
            if j == k {
                return 0.0;
            }
            let pair = j.min(k) * n + j.max(k);
            (euclid_distance(plane[j], plane[k]) + 0.5) * noise[pair % noise.len()]
        });
        let data = DissimilarityData::from_delta(delta.clone()).unwrap();
        let scaled = DissimilarityData::from_delta(delta.map(|x| a * x)).unwrap();
        let stretched: Vec<PlanePoint> = plane.iter().map(|p| PlanePoint::new(a * p.x, a * p.y)).collect();
        let (c, s) = (theta.cos(), theta.sin());
        let rigid: Vec<PlanePoint> = plane
            .iter()
            .map(|p| PlanePoint::new(c * p.x - s * p.y + shift.0, s * p.x + c * p.y + shift.1))
            .collect();
        for objective in objectives() {
            let model = ErrorModel::new(objective.clone(), 1.0).unwrap();
            let e = euclid_error(&plane, &data, &model).unwrap();
            let es = euclid_error(&stretched, &scaled, &model).unwrap();
            let er = euclid_error(&rigid, &data, &model).unwrap();
            prop_assert!((e - er).abs() <= 1e-12 * e.max(1.0), "rigid motion: {e} vs {er}");
            match objective {
                Objective::Ads => prop_assert!((es - a * a * e).abs() <= 1e-12 * es.max(1.0)),
                _ => prop_assert!((es - e).abs() <= 1e-12 * e.max(1.0), "scaling: {e} vs {es}"),
            }
        }
    }
}

#[test]
fn planar_gradient_matches_central_differences() {
    let plane = [
        PlanePoint::new(0.0, 0.0),
        PlanePoint::new(1.0, 0.3),
        PlanePoint::new(-0.4, 1.1),
        PlanePoint::new(0.7, -0.9),
    ];
    let delta = SquareMatrix::from_fn(4, |j, k| {
        if j == k {
            0.0
        } else {
            1.0 + 0.1 * (j + k) as f64
        }
    });
    let data = DissimilarityData::from_delta(delta).unwrap();
    for objective in objectives() {
        let model = ErrorModel::new(objective, 1.3).unwrap();
        let g = euclid_gradient(&plane, &data, &model).unwrap();
        for j in 0..4 {
            for axis in 0..2 {
                let shift = |h: f64| {
                    let mut p = plane;
                    if axis == 0 {
                        p[j].x += h
                    } else {
                        p[j].y += h
                    }
                    euclid_error(&p, &data, &model).unwrap()
                };
                let fd = (shift(1e-6) - shift(-1e-6)) / 2e-6;
                let gj = g.components()[j];
                let analytic = if axis == 0 { gj.re } else { gj.im };
                assert_relative_eq!(fd, analytic, max_relative = 1e-6, epsilon = 1e-9);
            }
        }
    }
}
