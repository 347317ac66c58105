//! Independently computed reference values.

use leo_core::applications::{cpams_coefficients, cpams_control_term, cpams_objective, CpamsParams};
use leo_core::benchmarks::{build_problem, AuxData, Classical, CompositeSpec, FunctionId};
use leo_core::harness::run_repetitions;
use leo_core::stats::{summarize, wilcoxon_rank_sum, Method};
use leo_core::{Algorithm, RandomStream, RunConfig};

/// Two-sided p from the full list of rank splits, recursively generated.
fn split_p(a: &[f64], b: &[f64]) -> f64 {
    fn subsets(n: usize, k: usize, start: usize, acc: usize, out: &mut Vec<usize>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for r in start..=n {
            subsets(n, k - 1, r + 1, acc + r, out);
        }
    }
    let mut all: Vec<f64> = a.iter().chain(b).copied().collect();
    all.sort_by(f64::total_cmp);
    let w: usize = a.iter().map(|v| all.iter().position(|x| x == v).unwrap() + 1).sum();
    let mut sums = Vec::new();
    subsets(all.len(), a.len(), 1, 0, &mut sums);
    let total = sums.len() as f64;
    let lo = sums.iter().filter(|&&s| s <= w).count() as f64 / total;
    let hi = sums.iter().filter(|&&s| s >= w).count() as f64 / total;
    (2.0 * lo.min(hi)).min(1.0)
}

#[test]
fn exact_rank_sum_matches_enumeration() {
    let mut rng = RandomStream::new(31);
    for na in 3..=6 {
        for nb in 3..=6 {
            for _ in 0..25 {
                let mut v: Vec<f64> = (0..na + nb).map(|_| rng.uniform(-1.0, 1.0)).collect();
                rng.shuffle(&mut v);
                let (a, b) = v.split_at(na);
                let r = wilcoxon_rank_sum(a, b).unwrap();
                assert_eq!(r.method, Method::Exact);
                assert!((r.p_value - split_p(a, b)).abs() < 1e-12, "{a:?} {b:?}");
            }
        }
    }
    assert_eq!(split_p(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]), 0.1);
}

#[test]
fn summary_by_hand() {
    let s = summarize(&[1.0, 3.0]).unwrap();
    assert_eq!(s.mean, 2.0);
    assert!((s.std - 2f64.sqrt()).abs() < 1e-15);
}

#[test]
fn cpams_coefficients_by_hand() {
    let (a, b, c) = cpams_coefficients(15, 0.0, 0.1).unwrap();
    assert!((a - 0.0283 * (16.0 / 15.0 - 0.1)).abs() < 1e-15);
    assert!((a - 0.027_356_7).abs() < 1e-7);
    // (0.0283 - 0.10283) / 15
    assert!((b + 0.004_968_67).abs() < 1e-8);
    assert!((c + 0.000_188_67).abs() < 1e-8);
    assert!((cpams_control_term(1.0, 2.0, 0.5, 0.1) - 1.2).abs() < 1e-15);
}

/// Real roots of the monic cubic `x^3 + a x^2 + b x + c` in closed form.
fn cubic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let p = b - a * a / 3.0;
    let q = 2.0 * a.powi(3) / 27.0 - a * b / 3.0 + c;
    let disc = q * q / 4.0 + p.powi(3) / 27.0;
    if disc > 0.0 {
        let s = disc.sqrt();
        return vec![(-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt() - a / 3.0];
    }
    let m = 2.0 * (-p / 3.0).sqrt();
    let phi = (3.0 * q / (p * m)).clamp(-1.0, 1.0).acos() / 3.0;
    (0..3).map(|k| m * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() - a / 3.0).collect()
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    assert!(f(lo) * f(hi) < 0.0);
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if f(lo) * f(m) <= 0.0 {
            hi = m;
        } else {
            lo = m;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn cpams_residual_vanishes_at_the_root() {
    let p = CpamsParams::new(36, 1.0, 0.5).unwrap();
    let r = bisect(|x| p.cubic(x), 0.0, 1.0);
    assert!(cpams_objective(&[r], &p).unwrap() < 1e-12);
    let (a, b, c) = cpams_coefficients(36, 1.0, 0.5).unwrap();
    let inside: Vec<f64> = cubic_roots(a, b, c).into_iter().filter(|x| (0.0..=1.0).contains(x)).collect();
    assert_eq!(inside.len(), 1);
    assert!((inside[0] - r).abs() < 1e-9);
}

#[test]
fn rosenbrock_at_zero_is_nine() {
    assert_eq!(Classical::Tf5.eval(&[0.0; 10], None), 9.0);
    assert_eq!(Classical::Tf5.eval(&[1.0; 10], None), 0.0);
}

#[test]
fn composites_are_bounded_below_by_the_smallest_bias() {
    let aux = AuxData::bundled();
    let mut rng = RandomStream::new(8);
    for n in 14..=19 {
        let spec = CompositeSpec::new(n, aux.composite_optima[&format!("TF{n}")].clone()).unwrap();
        assert!(spec.eval(&spec.optima[0].clone()).unwrap().abs() < 1e-6);
        for _ in 0..10_000 {
            let x: Vec<f64> = (0..10).map(|_| rng.uniform(-5.0, 5.0)).collect();
            assert!(spec.eval(&x).unwrap() >= 0.0);
        }
    }
}

#[test]
fn leo_dominates_ga_on_the_sphere() {
    let p = build_problem(FunctionId::parse("TF1").unwrap(), AuxData::bundled()).unwrap();
    let cfg = RunConfig { seed: 12, ..RunConfig::default() };
    let finals = |alg| -> Vec<f64> {
        run_repetitions(alg, &p, &cfg, 1).into_iter().map(|(_, r)| r.unwrap().final_best()).collect()
    };
    let leo = finals(Algorithm::Leo);
    let ga = finals(Algorithm::Ga);
    let (ml, mg) = (summarize(&leo).unwrap().mean, summarize(&ga).unwrap().mean);
    assert!(ml * 10.0 <= mg, "leo {ml} ga {mg}");
    assert!(wilcoxon_rank_sum(&leo, &ga).unwrap().p_value < 0.001);
}
