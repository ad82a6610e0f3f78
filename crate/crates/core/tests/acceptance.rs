//! Acceptance suite: one pass/fail line per criterion.

mod common;

use std::cmp::Ordering;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use clap::Parser;
use graph1lap::cli::{report_for_graph, RunConfig};
use graph1lap::functional::{coarea_level_sum, indicator, indicator_hat};
use graph1lap::generators::{cycle, path, random_connected};
use graph1lap::ipm::{
    cluster2, cluster3, second_eigenvector_runs, third_eigenvector_runs, IpmConfig, StopReason,
};
use graph1lap::oracle::{cheeger_h, cheeger_rho, h2_variational, PartitionReport};
use graph1lap::report::Format;
use graph1lap::scalar::{ratio, rational_vec, Rational};
use graph1lap::verify::{face_t1, inequality_chain, path_phi, path_psi, verify_eigenpair_exact};
use graph1lap::{functional_i, rayleigh, subset_stats, Graph, SignClasses};

/// Slack on `h₃ ≤ m̂₃`.
const CHAIN_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cfg() -> IpmConfig {
    IpmConfig::default()
}

/// Side of the optimal 2-cut whose ratio equals `h₂`.
fn small_side(g: &Graph, h: &PartitionReport) -> Vec<usize> {
    h.parts
        .iter()
        .find(|p| subset_stats(g, p).unwrap().volume * 2.0 <= g.total_degree())
        .unwrap()
        .clone()
}

/// Part of a `ρ₃` optimum attaining the worst ratio.
fn worst_part(r: &PartitionReport) -> Vec<usize> {
    let i = (0..r.parts.len())
        .max_by(|&a, &b| r.ratios[a].cmp_ratio(&r.ratios[b]))
        .unwrap();
    r.parts[i].clone()
}

fn c1_p10() -> Outcome {
    let g = path(10).unwrap();
    let h2 = cheeger_h(&g, 2).map_err(|e| e.to_string())?.value;
    let h3 = cheeger_h(&g, 3).map_err(|e| e.to_string())?.value;
    check(h2.exact() == Some((1, 9)), format!("h2 = {h2:?}"))?;
    check(h3.exact() == Some((1, 4)), format!("h3 = {h3:?}"))?;
    let c2 = cluster2(&g, &cfg()).map_err(|e| e.to_string())?;
    check(c2.partition.value.exact() == Some((1, 9)), format!("NCC2 = {:?}", c2.partition.value))?;
    let c3 = cluster3(&g, &cfg()).map_err(|e| e.to_string())?;
    check(c3.partition.value.exact() == Some((1, 4)), format!("NCC3 = {:?}", c3.partition.value))?;
    Ok("h2 = 1/9, h3 = 1/4, NCC2 = 1/9, NCC3 = 1/4".into())
}

fn c2_p4() -> Outcome {
    let g = path(4).unwrap();
    let a = rational_vec(&[1, 1, 0, 0], 1);
    let b = rational_vec(&[1, 0, 0, 0], 1);
    let (ra, rb) = (rayleigh(&g, &a).unwrap(), rayleigh(&g, &b).unwrap());
    check(ra == ratio(1, 3) && rb == ratio(1, 1), format!("rayleigh = {ra}, {rb}"))?;
    let an: Vec<Rational> = indicator_hat(&g, &[0, 1]).unwrap();
    let bn: Vec<Rational> = indicator_hat(&g, &[0]).unwrap();
    for (f, mu) in [(&an, &ra), (&bn, &rb)] {
        let c = verify_eigenpair_exact(&g, f, mu).map_err(|e| e.to_string())?;
        check(c.feasible, format!("pair ({mu}, {f:?}) infeasible"))?;
    }
    let dot: Rational = an.iter().zip(&bn).map(|(x, y)| x * y).sum();
    check(dot == ratio(1, 3), format!("inner product = {dot}"))?;
    Ok("mu2 = 1/3, mu3 = 1, both feasible, <f2, f3> = 1/3".into())
}

fn c3_c10() -> Outcome {
    let g = cycle(10).unwrap();
    let h2 = cheeger_h(&g, 2).map_err(|e| e.to_string())?.value;
    check(h2.exact() == Some((1, 5)), format!("h2 = {h2:?}"))?;
    let c2 = cluster2(&g, &cfg()).map_err(|e| e.to_string())?;
    check(c2.partition.value.cmp_ratio(&h2) == Ordering::Equal, format!("NCC2 = {:?}", c2.partition.value))?;
    check((c2.estimate.value - 0.2).abs() <= 1e-6, format!("m2 = {}", c2.estimate.value))?;
    let h3 = cheeger_h(&g, 3).map_err(|e| e.to_string())?.value;
    let (n, d) = h3.exact().unwrap();
    Ok(format!("h2 = 1/5, NCC2 = 1/5, m2 = {:.9}, oracle h3 = {n}/{d}", c2.estimate.value))
}

fn c4_chain(family: &[(String, Graph)]) -> Outcome {
    let (mut rho2_bad, mut rho3_bad, mut m3_bad) = (Vec::new(), Vec::new(), Vec::new());
    for (name, g) in family {
        let r = inequality_chain(g, &cfg()).map_err(|e| format!("{name}: {e}"))?;
        if !r.rho2_eq_h2 {
            rho2_bad.push(name.clone());
        }
        if !r.rho3_le_h3 {
            rho3_bad.push(name.clone());
        }
        if r.h3.value() > r.m3 + CHAIN_TOL {
            m3_bad.push(format!("{name} (h3 = {:.6}, m3 = {:.6})", r.h3.value(), r.m3));
        }
    }
    let summary = format!(
        "{} graphs: rho2 = h2 fails {}, rho3 <= h3 fails {}, h3 <= m3 + 1e-9 fails {}",
        family.len(),
        rho2_bad.len(),
        rho3_bad.len(),
        m3_bad.len()
    );
    if rho2_bad.is_empty() && rho3_bad.is_empty() && m3_bad.is_empty() {
        Ok(summary)
    } else {
        let first: Vec<&str> = rho2_bad.iter().chain(&rho3_bad).chain(&m3_bad).take(3).map(String::as_str).collect();
        Err(format!("{summary}; e.g. {}", first.join(", ")))
    }
}

/// Runs behind criteria 5 and 6: all second-vector runs, then all
/// third-vector runs from the best second vector.
fn all_runs(g: &Graph) -> Result<Vec<graph1lap::ipm::EigenEstimate>, String> {
    let c = cfg();
    let second: Vec<_> = second_eigenvector_runs(g, &c)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter_map(Result::ok)
        .collect();
    let best = second
        .iter()
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .ok_or("no second-vector run succeeded")?;
    let third: Vec<_> = third_eigenvector_runs(g, &best.vector, &c)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter_map(Result::ok)
        .collect();
    Ok(second.into_iter().chain(third).collect())
}

fn c5_monotone(runs: &[(String, Vec<graph1lap::ipm::EigenEstimate>)]) -> Outcome {
    let slack = cfg().inner_tol;
    let mut total = 0;
    for (name, rs) in runs {
        for e in rs {
            total += 1;
            check(e.trace.is_monotone(slack), format!("{name}: trace increases (init {})", e.init_index))?;
            check(e.trace.stop != StopReason::MaxOuter, format!("{name}: hit max_outer (init {})", e.init_index))?;
        }
    }
    Ok(format!("{total} runs monotone and stopped within max_outer"))
}

fn c6_balanced(runs: &[(String, Vec<graph1lap::ipm::EigenEstimate>)]) -> Outcome {
    let mut total = 0;
    for (name, rs) in runs {
        let g = graph_by_name(name);
        for e in rs {
            total += 1;
            let sc = SignClasses::of(&g, &e.vector).map_err(|e| e.to_string())?;
            check(sc.is_balanced(), format!("{name}: unbalanced estimate (init {})", e.init_index))?;
        }
    }
    Ok(format!("{total} estimates satisfy |d+ - d-| <= d0"))
}

fn c7_variational(family: &[(String, Graph)]) -> Outcome {
    for (name, g) in family {
        let h = cheeger_h(g, 2).map_err(|e| e.to_string())?;
        let y: Vec<Rational> = indicator(g.n(), &small_side(g, &h));
        let v = h2_variational(g, &y).map_err(|e| e.to_string())?;
        let (num, den) = h.value.exact().ok_or("inexact h2")?;
        check(v == ratio(num, den), format!("{name}: variational {v} vs h2 {num}/{den}"))?;
    }
    Ok(format!("{} graphs", family.len()))
}

fn c8_paths(family: &[(String, Graph)]) -> Outcome {
    for (name, g) in &common::paper_graphs()[..] {
        if *name == "C10" {
            continue;
        }
        let h = cheeger_h(g, 2).unwrap();
        let f: Vec<Rational> = indicator(g.n(), &small_side(g, &h));
        let r = path_phi(g, &f).map_err(|e| e.to_string())?;
        check(r.closed_form == Some(true), format!("{name}: phi off closed form"))?;
    }
    let mut graphs: Vec<(String, Graph)> =
        common::paper_graphs().into_iter().map(|(n, g)| (n.to_string(), g)).collect();
    graphs.extend(family.iter().cloned());
    let mut samples = 0;
    for (name, g) in &graphs {
        let h = cheeger_h(g, 2).map_err(|e| e.to_string())?;
        let rho = cheeger_rho(g, 3).map_err(|e| e.to_string())?;
        let a = small_side(g, &h);
        let b = worst_part(&rho);
        let psi = path_psi(g, &indicator::<Rational>(g.n(), &a), &indicator::<Rational>(g.n(), &b))
            .map_err(|e| format!("{name}: {e}"))?;
        check(psi.sublevel, format!("{name}: psi leaves the sublevel set"))?;
        let all: Vec<usize> = (0..g.n()).collect();
        let face = face_t1(
            g,
            &indicator_hat::<Rational>(g, &b).unwrap(),
            &indicator_hat::<Rational>(g, &a).unwrap(),
            &indicator_hat::<Rational>(g, &all).unwrap(),
        )
        .map_err(|e| format!("{name}: {e}"))?;
        check(face.sublevel && face.norm_one, format!("{name}: face_T1 leaves the sublevel set"))?;
        samples += psi.samples.len() + face.samples.len();
    }
    Ok(format!("phi closed form on P10, P4; psi and face_T1 sublevel on {} graphs ({samples} samples)", graphs.len()))
}

fn c9_determinism(family: &[(String, Graph)]) -> Outcome {
    for (name, g) in family {
        for k in [2, 3] {
            let reps = [cheeger_h(g, k), cheeger_h(g, k), cheeger_rho(g, k), cheeger_rho(g, k)];
            let reps: Vec<PartitionReport> =
                reps.into_iter().collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            check(reps[0] == reps[1] && reps[2] == reps[3], format!("{name}: k = {k} differs"))?;
            for r in &reps {
                check(
                    r.value.exact().is_some() && r.ratios.iter().all(|x| x.exact().is_some()),
                    format!("{name}: inexact oracle output"),
                )?;
            }
        }
    }
    let cfg = RunConfig::parse_from(["graph1lap", "--family", "path:10", "--mode", "oracle"]);
    let g = path(10).unwrap();
    let render = || {
        report_for_graph(&g, &cfg, &mut std::io::sink()).map(|r| r.render(Format::Json)).map_err(|e| e.to_string())
    };
    check(render()? == render()?, "oracle report differs between runs")?;
    Ok(format!("{} graphs, reports byte-identical", family.len()))
}

fn c10_coarea() -> Outcome {
    let mut rng = common::rng(2024);
    for i in 0..200u64 {
        let n = 2 + (i as usize % 11);
        let g = random_connected(n, 0.35, 1 + (i % 3) as u32, i).map_err(|e| e.to_string())?;
        let f = common::random_rational_vec(&mut rng, n);
        let lhs = functional_i(&g, &f).map_err(|e| e.to_string())?;
        let rhs = common::level_sum(&g, &f);
        check(lhs == rhs, format!("case {i}: I = {lhs}, level sum = {rhs}"))?;
        check(lhs == coarea_level_sum(&g, &f).unwrap(), format!("case {i}: library level sum differs"))?;
    }
    Ok("200 vectors, exact".into())
}

fn graph_by_name(name: &str) -> Graph {
    common::chain_family().into_iter().find(|(n, _)| n == name).unwrap().1
}

fn main() {
    let family = common::chain_family();
    let mut failed = 0;
    let mut report = |id: usize, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(d) => println!("criterion {id}: PASS ({secs:.2}s) {d}"),
            Err(d) => {
                failed += 1;
                println!("criterion {id}: FAIL ({secs:.2}s) {d}");
            }
        }
    };
    report(1, &mut c1_p10);
    report(2, &mut c2_p4);
    report(3, &mut c3_c10);
    report(4, &mut || c4_chain(&family));
    let runs: Vec<(String, Vec<_>)> = family
        .iter()
        .map(|(n, g)| (n.clone(), all_runs(g).unwrap_or_default()))
        .collect();
    report(5, &mut || c5_monotone(&runs));
    report(6, &mut || c6_balanced(&runs));
    report(7, &mut || c7_variational(&family));
    report(8, &mut || c8_paths(&family));
    report(9, &mut || c9_determinism(&family));
    report(10, &mut c10_coarea);
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
