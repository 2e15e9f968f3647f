mod common;

use carnot::checks::{a_tensor_errors, projection_algebra_error, vertical_tension_max};
use carnot::geometry::{
    self, check_nonpositive_horizontal, positive_sphere, sample_rng, sl2r_data, LieData,
    MetricModel, Point, TangentVec,
};
use carnot::Exec;
use proptest::prelude::*;
use rand::Rng;

fn heis() -> MetricModel {
    geometry::model("heisenberg3").unwrap()
}

fn sl2r() -> MetricModel {
    geometry::model("sl2r").unwrap()
}

fn heis_field(p: &[f64], c: &[f64]) -> Vec<f64> {
    let (x, y) = (common::heis_x(p), common::heis_y(p));
    (0..3).map(|a| c[0] * x[a] + c[1] * y[a] + c[2] * [0.0, 0.0, 1.0][a]).collect()
}

#[test]
fn heisenberg_plane_curvature_from_metric_alone() {
    let m = heis();
    for i in 0..20 {
        let mut rng = sample_rng(11, i);
        let p: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let (x, y) = (common::heis_x(&p), common::heis_y(&p));
        let k = common::riemann4_fd(&common::heis_metric, &p, &x, &y, &x, &y);
        assert!((k + 0.75).abs() < 1e-8, "K = {k} at {p:?}");
        let s = m.horizontal_sectional(&p, &x, &y).unwrap();
        assert!((s.k_total + 0.75).abs() < 1e-12);
        assert!(s.oneill_residual().abs() < 1e-14);
    }
}

#[test]
fn heisenberg_curvature_tensor_matches_metric_oracle() {
    let m = heis();
    for i in 0..20 {
        let mut rng = sample_rng(12, i);
        let p = m.random_point(&mut rng);
        let v: Vec<Vec<f64>> = (0..4).map(|_| m.random_horizontal(&p, &mut rng)).collect();
        let a = m.curvature4(&p, &v[0], &v[1], &v[2], &v[3]);
        let b = common::riemann4_fd(&common::heis_metric, &p, &v[0], &v[1], &v[2], &v[3]);
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }
}

#[test]
fn heisenberg_a_tensor_is_half_vertical_bracket() {
    let m = heis();
    for i in 0..200 {
        let mut rng = sample_rng(13, i);
        let p = m.random_point(&mut rng);
        let cy = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), 0.0];
        let cz = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), 0.0];
        let (y, z) = (heis_field(&p, &cy), heis_field(&p, &cz));
        let br = common::fd_bracket(&heis_field, &p, &cy, &cz);
        let half_v = 0.5 * common::heis_theta(&p, &br);
        let a = m.a_tensor(&p, &y, &z);
        // A(Y,Z) is a multiple of T = ∂t
        assert!(a[0].abs() < 1e-12 && a[1].abs() < 1e-12);
        assert!((a[2] - half_v).abs() < 1e-8, "{} vs {half_v}", a[2]);
        // [X, Y] = T, so A(Y,Z) = ½ det(cy, cz) T
        let det = cy[0] * cz[1] - cy[1] * cz[0];
        assert!((a[2] - 0.5 * det).abs() < 1e-12);
    }
}

#[test]
fn sl2r_curvature_matches_koszul_oracle() {
    let m = sl2r();
    for i in 0..200 {
        let mut rng = sample_rng(14, i);
        let y = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), 0.0];
        let z = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), 0.0];
        let Some(s) = m.horizontal_sectional(&[0.0; 3], &y, &z) else {
            continue;
        };
        let k = common::koszul_sectional(&y, &z);
        assert!((k + 1.75).abs() < 1e-9);
        assert!((s.k_total - k).abs() < 1e-9, "{} vs {k}", s.k_total);
        assert!((s.k_base + 1.0).abs() < 1e-12);
    }
}

#[test]
fn sl2r_brackets_match_matrix_commutators() {
    let data = sl2r_data();
    for i in 0..50 {
        let mut rng = sample_rng(15, i);
        let y: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let z: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let a = data.bracket(&y, &z);
        let b = common::sl2_bracket(&y, &z);
        for k in 0..3 {
            assert!((a[k] - b[k]).abs() < 1e-14);
        }
        // on horizontal pairs the invariant connection is Levi-Civita
        let yh = [y[0], y[1], 0.0];
        let zh = [z[0], z[1], 0.0];
        let c = data.connection(&yh, &zh);
        let k = common::koszul(&yh, &zh);
        for j in 0..3 {
            assert!((c[j] - k[j]).abs() < 1e-14);
        }
        let am = sl2r().a_tensor(&[0.0; 3], &yh, &zh);
        assert!((am[2] - 0.5 * common::sl2_bracket(&yh, &zh)[2]).abs() < 1e-14);
    }
}

#[test]
fn lemma_two_on_random_horizontal_maps() {
    for m in [heis(), sl2r()] {
        for dirs in 1..=3 {
            let v = vertical_tension_max(&m, 200, dirs, 16).unwrap();
            assert!(v <= 1e-10, "{} dirs {dirs}: {v}", m.id());
        }
    }
}

#[test]
fn vertical_tension_rejects_vertical_input() {
    let m = heis();
    let p = Point::new(vec![0.3, -0.2, 1.0]);
    let du = [TangentVec::new(p.clone(), vec![0.0, 0.0, 1.0])];
    assert!(m.vertical_tension(&du, &p).is_err());
}

#[test]
fn curvature_sampler_is_nonpositive_and_deterministic() {
    for m in [heis(), sl2r()] {
        let a = check_nonpositive_horizontal(&m, 1000, 7, Exec::Sequential);
        let b = check_nonpositive_horizontal(&m, 1000, 7, Exec::Parallel);
        assert!(a.success());
        assert_eq!(a.max_k, b.max_k);
        assert_eq!(
            serde_json::to_string(&a.samples).unwrap(),
            serde_json::to_string(&b.samples).unwrap()
        );
        assert!(a.samples.iter().all(|s| s.oneill_residual().abs() < 1e-12));
    }
}

#[test]
fn sampler_flags_positive_curvature() {
    let rep = check_nonpositive_horizontal(&positive_sphere(), 200, 7, Exec::Sequential);
    assert_eq!(rep.violations, 200);
    assert!(rep.samples.iter().all(|s| (s.k_total - 1.0).abs() < 1e-9));
}

#[test]
fn a_tensor_identities_on_both_models() {
    for m in [heis(), sl2r()] {
        let (skew, half) = a_tensor_errors(&m, 1000, 17);
        assert!(skew <= 1e-10 && half <= 1e-10, "{}: {skew} {half}", m.id());
    }
}

#[test]
fn lie_data_from_json_reproduces_builtin() {
    let text = r#"{
        "basis": ["h", "s", "k"],
        "C": [[[0, 1, 2, 1.0]], [[0, 2, 1, 1.0], [1, 2, 0, -1.0]]],
        "ip": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        "horizontal": [0, 1]
    }"#;
    let a = MetricModel::invariant(LieData::from_json(text).unwrap());
    let b = sl2r();
    for i in 0..20 {
        let mut rng = sample_rng(18, i);
        let y = b.random_horizontal(&[0.0; 3], &mut rng);
        let z = b.random_horizontal(&[0.0; 3], &mut rng);
        let ka = a.horizontal_sectional(&[0.0; 3], &y, &z).unwrap().k_total;
        let kb = b.horizontal_sectional(&[0.0; 3], &y, &z).unwrap().k_total;
        assert_eq!(ka, kb);
    }
}

#[test]
fn lie_data_rejects_bad_input() {
    // [e0,e1] = e2, [e1,e2] = e0, [e2,e0] = e0 violates Jacobi
    let bad_jacobi = r#"{"basis":["a","b","c"],"C":[[0,1,2,1],[1,2,0,1],[2,0,0,1]],
        "ip":[[1,0,0],[0,1,0],[0,0,1]],"horizontal":[0,1]}"#;
    assert!(LieData::from_json(bad_jacobi).is_err());
    let not_spd = r#"{"basis":["a","b","c"],"C":[[0,1,2,1]],
        "ip":[[1,0,0],[0,-1,0],[0,0,1]],"horizontal":[0,1]}"#;
    assert!(LieData::from_json(not_spd).is_err());
    let conflict = r#"{"basis":["a","b","c"],"C":[[0,1,2,1],[1,0,2,1]],
        "ip":[[1,0,0],[0,1,0],[0,0,1]],"horizontal":[0,1]}"#;
    assert!(LieData::from_json(conflict).is_err());
    assert!(LieData::from_json("{").is_err());
}

#[test]
fn projection_algebra_on_both_models() {
    for m in [heis(), sl2r()] {
        assert!(projection_algebra_error(&m, 500, 19) <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn heisenberg_projections(
        p in prop::array::uniform3(-5.0f64..5.0),
        v in prop::array::uniform3(-3.0f64..3.0),
        w in prop::array::uniform3(-3.0f64..3.0),
    ) {
        let m = heis();
        let hv = m.horizontal_part(&p, &v);
        let vv = m.vertical_part(&p, &v);
        // the vertical part is θ(v)·T
        let th = common::heis_theta(&p, &v);
        prop_assert!((vv[2] - th).abs() < 1e-12 && vv[0] == 0.0 && vv[1] == 0.0);
        prop_assert!(common::heis_theta(&p, &hv).abs() < 1e-12);
        for a in 0..3 {
            prop_assert!((hv[a] + vv[a] - v[a]).abs() < 1e-12);
        }
        let hw = m.horizontal_part(&p, &w);
        prop_assert!((m.inner(&p, &hv, &w) - m.inner(&p, &v, &hw)).abs() < 1e-9);
    }

    #[test]
    fn a_tensor_is_skew_and_bilinear(
        p in prop::array::uniform3(-3.0f64..3.0),
        cy in prop::array::uniform2(-1.0f64..1.0),
        cz in prop::array::uniform2(-1.0f64..1.0),
        s in -2.0f64..2.0,
    ) {
        let m = heis();
        let y = m.horizontal_frame_combination(&p, &cy);
        let z = m.horizontal_frame_combination(&p, &cz);
        let ayz = m.a_tensor(&p, &y, &z);
        let azy = m.a_tensor(&p, &z, &y);
        let sy: Vec<f64> = y.iter().map(|c| s * c).collect();
        let asy = m.a_tensor(&p, &sy, &z);
        for a in 0..3 {
            prop_assert!((ayz[a] + azy[a]).abs() < 1e-12);
            prop_assert!((asy[a] - s * ayz[a]).abs() < 1e-12);
        }
        prop_assert!(m.a_tensor(&p, &y, &y).iter().all(|c| c.abs() < 1e-12));
    }
}
