mod common;

use graph1lap::functional::{d_inner, indicator_hat};
use graph1lap::generators::{cycle, grid, path, random_connected};
use graph1lap::ipm::{
    cluster2, cluster3, extract_2way, extract_3way, inner_problem, pseudo_ort, pseudo_ort_search,
    second_eigenvector, second_eigenvector_runs, sign_step, third_eigenvector,
    third_eigenvector_runs, IpmConfig, IpmError,
};
use graph1lap::oracle::cheeger_h;
use graph1lap::verify::check_pseudo_ort;
use graph1lap::{rayleigh, weighted_median, weighted_norm, Graph, SignClasses};
use proptest::prelude::*;

fn cfg() -> IpmConfig {
    IpmConfig::default()
}

#[test]
fn inner_examples() {
    let p4 = path(4).unwrap();
    let s = inner_problem(&p4, 0.0, &[1.0, -1.0, 0.5, 0.0], &cfg()).unwrap();
    assert!(s.is_zero() && s.objective == 0.0);
    let s = inner_problem(&p4, 0.7, &[0.0; 4], &cfg()).unwrap();
    assert!(s.is_zero() && s.objective == 0.0);

    let k2 = Graph::from_edges(2, &[(0, 1, 1.0)]).unwrap();
    let s = inner_problem(&k2, 2.0, &[1.0, -1.0], &cfg()).unwrap();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    assert!((s.f[0] - r).abs() < 1e-6 && (s.f[1] + r).abs() < 1e-6);
    assert!((s.objective + std::f64::consts::SQRT_2).abs() < 1e-6);
    assert!(inner_problem(&k2, 1.0, &[1.0], &cfg()).is_err());
}

#[test]
fn sign_step_examples() {
    let p4 = path(4).unwrap();
    assert_eq!(sign_step(&p4, &[0.25, 0.25, -0.25, -0.25]).unwrap(), vec![1.0, 1.0, -1.0, -1.0]);
    assert_eq!(sign_step(&p4, &[1.0, 0.0, 0.0, -1.0]).unwrap(), vec![1.0, 0.0, 0.0, -1.0]);
}

#[test]
fn second_eigenvalue_examples() {
    for (g, want) in [(path(10).unwrap(), 1.0 / 9.0), (cycle(10).unwrap(), 0.2), (path(4).unwrap(), 1.0 / 3.0)] {
        let e = second_eigenvector(&g, &cfg()).unwrap();
        assert!((e.value - want).abs() < 1e-6, "{} vs {want}", e.value);
        assert!((weighted_norm(&g, &e.vector).unwrap() - 1.0).abs() < 1e-12);
        assert!(SignClasses::of(&g, &e.vector).unwrap().is_balanced());
    }
}

#[test]
fn pseudo_ort_examples() {
    let p10 = path(10).unwrap();
    let f2: Vec<f64> = indicator_hat(&p10, &[0, 1, 2, 3, 4]).unwrap();
    let f: Vec<f64> = indicator_hat(&p10, &[3, 4, 5, 6]).unwrap();
    let r = pseudo_ort(&p10, &f, &f2).unwrap();
    assert_eq!(r.lambda, 0.0);
    assert_eq!(r.g, f);

    let same = pseudo_ort_search(&p10, &f2, &f2).unwrap();
    assert_ne!(same.lambda, 1.0);
    assert!(same.g.iter().any(|&x| x != 0.0));

    let p4 = path(4).unwrap();
    let f2 = second_eigenvector(&p4, &cfg()).unwrap().vector;
    let r = pseudo_ort(&p4, &[1.0, 0.0, 0.0, -1.0], &f2).unwrap();
    assert!(r.admissible);
    assert!(r.interval.lo <= 1e-9 && r.interval.hi >= -1e-9);
}

#[test]
fn third_eigenvector_estimates() {
    for g in [path(10).unwrap(), cycle(10).unwrap(), path(4).unwrap()] {
        let f2 = second_eigenvector(&g, &cfg()).unwrap().vector;
        let e = third_eigenvector(&g, &f2, &cfg()).unwrap();
        assert!((weighted_norm(&g, &e.vector).unwrap() - 1.0).abs() < 1e-9);
        assert!(SignClasses::of(&g, &e.vector).unwrap().is_balanced());
        assert!((rayleigh(&g, &e.vector).unwrap() - e.value).abs() < 1e-9);
        let basis = [vec![1.0; g.n()], f2.clone()];
        assert!(check_pseudo_ort(&g, &e.vector, &basis).unwrap().is_pseudo_orthogonal());
        assert!(e.value >= rayleigh(&g, &f2).unwrap() - 1e-9);
    }
    let p4 = path(4).unwrap();
    let bad = vec![1.0, 1.0, 0.0, 0.0];
    assert!(matches!(third_eigenvector(&p4, &bad, &cfg()), Err(IpmError::NotNormalized(_))));
}

#[test]
fn threshold_cuts_reach_oracle_values() {
    let c = cluster3(&path(10).unwrap(), &cfg()).unwrap();
    assert_eq!(c.partition2.value.exact(), Some((1, 9)));
    assert_eq!(c.partition.value.exact(), Some((1, 4)));
    let c = cluster3(&path(4).unwrap(), &cfg()).unwrap();
    assert_eq!(c.partition.value.exact(), Some((1, 1)));
    let c10 = cycle(10).unwrap();
    let c = cluster3(&c10, &cfg()).unwrap();
    assert_eq!(c.partition.value.cmp_ratio(&cheeger_h(&c10, 3).unwrap().value), std::cmp::Ordering::Equal);
    let g = grid(3, 4).unwrap();
    let c = cluster2(&g, &cfg()).unwrap();
    assert_eq!(c.partition.value.cmp_ratio(&cheeger_h(&g, 2).unwrap().value), std::cmp::Ordering::Equal);
}

#[test]
fn extract_examples() {
    let p10 = path(10).unwrap();
    let f2 = second_eigenvector(&p10, &cfg()).unwrap().vector;
    let r = extract_2way(&p10, &f2).unwrap();
    assert_eq!(r.parts, vec![(0..5).collect::<Vec<_>>(), (5..10).collect()]);
    assert_eq!(r.value.exact(), Some((1, 9)));

    let ind: Vec<f64> = (0..10).map(|i| if [1, 4, 8].contains(&i) { 1.0 } else { 0.0 }).collect();
    let r = extract_2way(&p10, &ind).unwrap();
    assert_eq!(r.parts, vec![vec![0, 2, 3, 5, 6, 7, 9], vec![1, 4, 8]]);

    let p4 = path(4).unwrap();
    assert_eq!(extract_2way(&p4, &[3.0, 2.0, 1.0, 0.0]).unwrap().value.exact(), Some((1, 3)));

    let a: Vec<f64> = (0..10).map(|i| if i < 5 { 1.0 } else { 0.0 }).collect();
    let b: Vec<f64> = (0..10).map(|i| if i < 2 { 1.0 } else { 0.0 }).collect();
    let r = extract_3way(&p10, &a, &b).unwrap();
    assert_eq!(r.parts, vec![vec![0, 1], vec![2, 3, 4], (5..10).collect()]);

    let f2 = second_eigenvector(&p4, &cfg()).unwrap().vector;
    let r = extract_3way(&p4, &f2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
    assert_eq!(r.parts, vec![vec![0], vec![1], vec![2, 3]]);
    assert_eq!(r.value.exact(), Some((1, 1)));
}

#[test]
fn traces_are_monotone_and_normalized() {
    for seed in 0..8 {
        let g = random_connected(9, 0.3, 2, seed).unwrap();
        let c = IpmConfig { seed, ..cfg() };
        let runs = second_eigenvector_runs(&g, &c).unwrap();
        let best = runs.iter().flatten().min_by(|a, b| a.value.total_cmp(&b.value)).unwrap();
        for e in runs.iter().flatten() {
            assert!(e.trace.is_monotone(c.inner_tol));
            assert!(e.trace.records.iter().all(|r| (r.norm - 1.0).abs() <= 1e-12));
            assert!(weighted_median(&g, &e.vector).unwrap().abs() <= c.zeta(&e.vector));
        }
        for e in third_eigenvector_runs(&g, &best.vector, &c).unwrap().iter().flatten() {
            assert!(e.trace.is_monotone(c.inner_tol));
            assert!(SignClasses::of(&g, &e.vector).unwrap().is_balanced());
        }
    }
}

#[test]
fn fixed_seed_is_reproducible() {
    let g = random_connected(10, 0.25, 3, 11).unwrap();
    let c = IpmConfig { seed: 5, ..cfg() };
    let a = cluster3(&g, &c).unwrap();
    let b = cluster3(&g, &c).unwrap();
    assert_eq!(a.second, b.second);
    assert_eq!(a.third, b.third);
    assert_eq!(a.partition, b.partition);
    let other = second_eigenvector(&g, &IpmConfig { seed: 6, ..cfg() }).unwrap();
    assert!(!other.trace.records.is_empty());
}

#[test]
fn config_is_validated() {
    let g = path(5).unwrap();
    for bad in [
        IpmConfig { eps: 0.0, ..cfg() },
        IpmConfig { n_inits: 0, ..cfg() },
        IpmConfig { max_outer: 0, ..cfg() },
        IpmConfig { inner_tol: f64::NAN, ..cfg() },
    ] {
        assert!(matches!(second_eigenvector(&g, &bad), Err(IpmError::Config(_))));
    }
}

fn graph_and_vec() -> impl Strategy<Value = (Graph, Vec<f64>)> {
    (3usize..=10, 0.0f64..0.6, 1u32..=3, any::<u64>())
        .prop_map(|(n, p, w, seed)| random_connected(n, p, w, seed).unwrap())
        .prop_flat_map(|g| {
            let n = g.n();
            (Just(g), prop::collection::vec(-8i32..=8, n))
        })
        .prop_map(|(g, v)| {
            let f: Vec<f64> = v.into_iter().map(f64::from).collect();
            (g, f)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn two_way_cut_bounded_by_rayleigh((g, f) in graph_and_vec()) {
        let m = weighted_median(&g, &f).unwrap();
        let y: Vec<f64> = f.iter().map(|x| x - m).collect();
        prop_assume!(y.iter().any(|&x| x != y[0]));
        let cut = extract_2way(&g, &y).unwrap();
        prop_assert!(cut.value.value() <= rayleigh(&g, &y).unwrap() + 1e-12);
    }

    #[test]
    fn median_pairing_of_sign_step((g, f) in graph_and_vec()) {
        let m = weighted_median(&g, &f).unwrap();
        let y: Vec<f64> = f.iter().map(|x| x - m).collect();
        prop_assume!(y.iter().any(|&x| x != 0.0));
        let v = sign_step(&g, &y).unwrap();
        prop_assert!(d_inner(&g, &v, &vec![1.0; g.n()]).abs() <= 1e-9 * g.total_degree());
    }
}

#[test]
fn independent_oracle_confirms_fixture_values() {
    for (name, g) in common::paper_graphs() {
        let h2 = common::naive_cheeger(&g, 2, true);
        let e = second_eigenvector(&g, &cfg()).unwrap();
        assert!((e.value - h2.0 as f64 / h2.1 as f64).abs() < 1e-6, "{name}");
    }
}
