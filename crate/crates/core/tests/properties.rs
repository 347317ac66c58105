use std::f64::consts::{E, PI};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use leo_core::applications::{igg_objective, igg_pathological, IgGPanel, IGG_BOUNDS};
use leo_core::baselines::{ga_run, pso_run, GaConfig, PsoConfig};
use leo_core::benchmarks::{build_problem, AuxData, Classical, FunctionId};
use leo_core::leo::{leo_run, leo_step, LeoState};
use leo_core::operators::{gaussian_mutate, lpx, lpx_gene_update, lpx_offspring_pair, LpxParams, MutationParams};
use leo_core::problem::{better, Problem, Sense};
use leo_core::stats::{summarize, wilcoxon_rank_sum, wilcoxon_rank_sum_using, Alternative, Method};
use leo_core::{Algorithm, RandomStream, RunConfig};
use proptest::prelude::*;

fn classical(n: usize) -> Problem {
    build_problem(FunctionId::Classical(Classical::from_number(n).unwrap()), AuxData::bundled()).unwrap()
}

/// Wraps `inner` and raises a flag when asked to evaluate outside its box.
fn watched(inner: Problem, flag: Arc<AtomicBool>) -> Problem {
    let (lo, hi) = (inner.lower.clone(), inner.upper.clone());
    let p = inner.clone();
    Problem::new("watched", inner.lower.clone(), inner.upper.clone(), inner.sense, move |x: &[f64]| {
        if x.iter().zip(&lo).zip(&hi).any(|((v, l), h)| v < l || v > h) {
            flag.store(true, Ordering::Relaxed);
        }
        p.evaluate(x, &mut RandomStream::new(0)).unwrap_or(f64::NAN)
    })
    .unwrap()
}

fn run_config() -> impl Strategy<Value = (RunConfig, usize)> {
    (2usize..=6, 0usize..=8, 0.0f64..=1.0, 0.0f64..=1.0, any::<u64>(), 1usize..=13).prop_map(
        |(half, t, cr, mr, seed, f)| {
            (
                RunConfig {
                    population_size: 2 * half,
                    iterations: t,
                    crossover_rate: cr,
                    mutation_rate: mr,
                    seed,
                    ..RunConfig::default()
                },
                f,
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn better_is_a_strict_weak_order(a in -1e6f64..1e6, b in -1e6f64..1e6, c in -1e6f64..1e6, max in any::<bool>()) {
        let s = if max { Sense::Maximize } else { Sense::Minimize };
        let lt = |x, y| better(x, y, s).unwrap();
        prop_assert!(!lt(a, a));
        prop_assert!(!(lt(a, b) && lt(b, a)));
        if lt(a, b) && lt(b, c) {
            prop_assert!(lt(a, c));
        }
        let incomparable = |x, y| !lt(x, y) && !lt(y, x);
        if incomparable(a, b) && incomparable(b, c) {
            prop_assert!(incomparable(a, c));
        }
    }

    #[test]
    fn offspring_swap_with_parents(x in prop::collection::vec(-50.0f64..50.0, 1..10), alpha in 0.0f64..1.0, seed in any::<u64>()) {
        let mut rng = RandomStream::new(seed);
        let y: Vec<f64> = x.iter().map(|_| rng.uniform(-50.0, 50.0)).collect();
        let (o1, o2) = lpx_offspring_pair(&x, &y, alpha).unwrap();
        let (p1, p2) = lpx_offspring_pair(&y, &x, alpha).unwrap();
        prop_assert_eq!(o1, p2);
        prop_assert_eq!(o2, p1);
    }

    #[test]
    fn gene_update_is_finite(
        o in prop::collection::vec(-1e100f64..1e100, 1..8),
        x in prop::collection::vec(prop_oneof![Just(0.0), Just(-0.0), -1e-300f64..1e-300, -1e3f64..1e3], 1..8),
    ) {
        let d = o.len().min(x.len());
        let (y1, y2) = lpx_gene_update(&o[..d], &o[..d], &x[..d], &x[..d], 1e-12);
        prop_assert!(y1.iter().chain(&y2).all(|v| v.is_finite()));
    }

    #[test]
    fn operators_are_pure(x in prop::collection::vec(-10.0f64..10.0, 1..10), seed in any::<u64>(), sigma in -1.0f64..1.0) {
        let params = LpxParams { alpha: 0.25, epsilon_div: 1e-12 };
        prop_assert_eq!(lpx(&x, &x, params).unwrap(), lpx(&x, &x, params).unwrap());
        let m = MutationParams { sigma, gene_prob: 0.3 };
        let a = gaussian_mutate(&x, m, &mut RandomStream::new(seed));
        let b = gaussian_mutate(&x, m, &mut RandomStream::new(seed));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn mutation_with_zero_probability_is_identity(x in prop::collection::vec(-10.0f64..10.0, 0..20), seed in any::<u64>()) {
        let out = gaussian_mutate(&x, MutationParams { sigma: 0.7, gene_prob: 0.0 }, &mut RandomStream::new(seed));
        prop_assert_eq!(out, x);
    }

    #[test]
    fn leo_keeps_size_and_bounds((cfg, f) in run_config()) {
        let p = classical(f);
        let mut st = LeoState::new(&p, &cfg, cfg.seed).unwrap();
        for _ in 0..cfg.iterations {
            leo_step(&mut st).unwrap();
            prop_assert_eq!(st.population.len(), cfg.population_size);
            prop_assert!(st.population.iter().all(|c| p.contains(&c.genes)));
            prop_assert!(st.population.windows(2).all(|w| w[0].value <= w[1].value));
        }
    }

    #[test]
    fn every_optimizer_is_deterministic_monotone_and_bounded((cfg, f) in run_config()) {
        let flag = Arc::new(AtomicBool::new(false));
        let p = watched(classical(f), flag.clone());
        for alg in Algorithm::ALL {
            let a = alg.run(&p, &cfg, cfg.seed).unwrap();
            let b = alg.run(&p, &cfg, cfg.seed).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.convergence().len(), cfg.iterations + 1);
            prop_assert!(a.convergence().windows(2).all(|w| w[1] <= w[0]));
            prop_assert!(p.contains(&a.best.genes));
        }
        prop_assert!(!flag.load(Ordering::Relaxed));
    }

    #[test]
    fn maximization_curves_rise(seed in any::<u64>(), t in 0usize..10) {
        let p = Problem::uniform_bounds("neg-sphere", 3, -5.0, 5.0, Sense::Maximize, |x: &[f64]| -x.iter().map(|v| v * v).sum::<f64>()).unwrap();
        let cfg = RunConfig { population_size: 8, iterations: t, seed, ..RunConfig::default() };
        for alg in Algorithm::ALL {
            let r = alg.run(&p, &cfg, seed).unwrap();
            prop_assert!(r.convergence().windows(2).all(|w| w[1] >= w[0]));
        }
    }

    #[test]
    fn traces_do_not_change_the_outcome((cfg, f) in run_config()) {
        let p = classical(f);
        let on = RunConfig { traces: true, ..cfg.clone() };
        for alg in Algorithm::ALL {
            let a = alg.run(&p, &cfg, cfg.seed).unwrap();
            let b = alg.run(&p, &on, cfg.seed).unwrap();
            prop_assert_eq!(a.final_best().to_bits(), b.final_best().to_bits());
            prop_assert_eq!(&a.best.genes, &b.best.genes);
            let t = &b.traces;
            for len in [t.search_history.len(), t.trajectory.len(), t.average_fitness.len(), t.convergence.len()] {
                prop_assert_eq!(len, cfg.iterations + 1);
            }
            prop_assert!(a.traces.search_history.is_empty() && a.traces.trajectory.is_empty());
        }
    }

    #[test]
    fn evaluators_are_pure(n in 1usize..=29, seed in any::<u64>()) {
        let id = FunctionId::all()[n - 1];
        let p = build_problem(id, AuxData::bundled()).unwrap();
        let mut rng = RandomStream::new(seed);
        let x: Vec<f64> = (0..p.dimension).map(|i| rng.uniform(p.lower[i], p.upper[i])).collect();
        let a = p.evaluate(&x, &mut RandomStream::new(seed)).unwrap();
        let b = p.evaluate(&x, &mut RandomStream::new(seed)).unwrap();
        prop_assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn rank_sum_p_is_symmetric(a in prop::collection::vec(-100.0f64..100.0, 3..20), b in prop::collection::vec(-100.0f64..100.0, 3..20)) {
        let p = wilcoxon_rank_sum(&a, &b).unwrap().p_value;
        let q = wilcoxon_rank_sum(&b, &a).unwrap().p_value;
        prop_assert!((p - q).abs() < 1e-12, "{p} vs {q}");
    }

    #[test]
    fn rank_sum_ignores_monotone_transforms(a in prop::collection::vec(-5.0f64..5.0, 3..15), b in prop::collection::vec(-5.0f64..5.0, 3..15)) {
        let t = |v: &Vec<f64>| v.iter().map(|x| x.exp() * 3.0 + 1.0).collect::<Vec<_>>();
        let p = wilcoxon_rank_sum(&a, &b).unwrap();
        let q = wilcoxon_rank_sum(&t(&a), &t(&b)).unwrap();
        prop_assert_eq!(p.method, q.method);
        prop_assert!((p.p_value - q.p_value).abs() < 1e-12);
    }

    #[test]
    fn summary_equivariance(v in prop::collection::vec(-100.0f64..100.0, 2..30), shift in -100.0f64..100.0, scale in 0.01f64..100.0) {
        let s = summarize(&v).unwrap();
        let moved = summarize(&v.iter().map(|x| x + shift).collect::<Vec<_>>()).unwrap();
        let scaled = summarize(&v.iter().map(|x| x * scale).collect::<Vec<_>>()).unwrap();
        prop_assert!((moved.mean - (s.mean + shift)).abs() < 1e-9);
        prop_assert!((moved.std - s.std).abs() < 1e-9);
        prop_assert!((scaled.std - s.std * scale).abs() < 1e-9 * (1.0 + s.std * scale));
    }

    #[test]
    fn igg_objective_is_affine(seed in any::<u64>(), i in 0usize..12, t in 0.0f64..1.0) {
        let mut rng = RandomStream::new(seed);
        let x: Vec<f64> = (0..12).map(|_| rng.uniform(IGG_BOUNDS.0, IGG_BOUNDS.1 - 1.0)).collect();
        let mut y = x.clone();
        y[i] += t;
        let d = igg_objective(&y).unwrap() - igg_objective(&x).unwrap();
        prop_assert!((d - 0.0014 * t).abs() < 1e-12);
    }

    #[test]
    fn igg_pathological_is_linear_in_serum(csf in 0.0f64..50.0, s1 in 0.0f64..10.0, s2 in 0.0f64..10.0, alb_csf in 0.0f64..1.0, alb_serum in 1.0f64..60.0) {
        let slope = -(0.43 * alb_serum - alb_csf + 0.001);
        let f = |s| igg_pathological(&IgGPanel::new(csf, s, alb_csf, alb_serum)).unwrap();
        prop_assert!((f(s2) - f(s1) - slope * (s2 - s1)).abs() < 1e-9);
    }
}

#[test]
fn exact_and_normal_agree_at_twelve() {
    let mut rng = RandomStream::new(77);
    for _ in 0..200 {
        let mut pool: Vec<f64> = (0..24).map(|i| i as f64 + 0.5 * rng.unit()).collect();
        rng.shuffle(&mut pool);
        let (a, b) = pool.split_at(12);
        let e = wilcoxon_rank_sum_using(a, b, Alternative::TwoSided, Method::Exact).unwrap();
        let n = wilcoxon_rank_sum_using(a, b, Alternative::TwoSided, Method::NormalApproximation).unwrap();
        assert!((e.p_value - n.p_value).abs() <= 0.02, "{} vs {}", e.p_value, n.p_value);
    }
    let tied = [1.0, 1.0, 2.0];
    assert!(wilcoxon_rank_sum_using(&tied, &[3.0, 4.0, 5.0], Alternative::TwoSided, Method::Exact).is_err());
    let big: Vec<f64> = (0..13).map(f64::from).collect();
    assert!(wilcoxon_rank_sum_using(&big, &[20.0, 21.0, 22.0], Alternative::TwoSided, Method::Exact).is_err());
}

fn central_diff(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    (0..x.len())
        .map(|i| {
            let mut a = x.to_vec();
            let mut b = x.to_vec();
            a[i] += h;
            b[i] -= h;
            (f(&a) - f(&b)) / (2.0 * h)
        })
        .collect()
}

fn sphere_grad(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| 2.0 * v).collect()
}

fn rosenbrock_grad(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut g = vec![0.0; n];
    for i in 0..n - 1 {
        let t = x[i + 1] - x[i] * x[i];
        g[i] += -400.0 * x[i] * t + 2.0 * (x[i] - 1.0);
        g[i + 1] += 200.0 * t;
    }
    g
}

fn ackley_grad(x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let c = (x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n).exp();
    x.iter().map(|v| 4.0 * (-0.2 * r).exp() * v / r + c * 2.0 * PI * (2.0 * PI * v).sin() / n).collect()
}

#[test]
fn smooth_functions_match_analytic_gradients() {
    let mut rng = RandomStream::new(5);
    type Gradient = fn(&[f64]) -> Vec<f64>;
    let cases: [(Classical, Gradient, f64); 3] = [
        (Classical::Tf1, sphere_grad, 50.0),
        (Classical::Tf5, rosenbrock_grad, 2.0),
        (Classical::Tf10, ackley_grad, 5.0),
    ];
    for (c, grad, span) in cases {
        for _ in 0..5 {
            let x: Vec<f64> = (0..10).map(|_| rng.uniform(-span, span)).collect();
            let numeric = central_diff(|z| c.eval(z, None), &x, 1e-5);
            let exact = grad(&x);
            for (a, b) in numeric.iter().zip(&exact) {
                let rel = (a - b).abs() / b.abs().max(1.0);
                assert!(rel < 1e-4, "{c:?}: {a} vs {b}");
            }
        }
    }
    assert!((Classical::Tf10.eval(&[0.0; 10], None) - (-20.0 - E + 20.0 + E)).abs() < 1e-12);
}

// Fails: with |sigma| < 1 on a box of width 200, 50 generations are too few
// for Leo to overtake 920 uniform samples (measured 198 vs 10.8). Leo does
// reach 2.1 after 200 and 7e-7 after 500 generations.
#[test]
#[ignore = "Leo loses to random search at this budget; see README"]
fn leo_beats_random_search_on_small_sphere() {
    let tf1 = Classical::Tf1;
    let r = tf1.range();
    let shift = tf1.shift(2);
    let mut p =
        Problem::uniform_bounds("TF1-2d", 2, -r, r, Sense::Minimize, move |z: &[f64]| tf1.eval(z, None)).unwrap();
    if let Some(s) = shift {
        p = p.with_shift(s).unwrap();
    }
    let mut leo = Vec::new();
    let mut random = Vec::new();
    for seed in 0..30u64 {
        let cfg = RunConfig { population_size: 20, iterations: 50, seed, ..RunConfig::default() };
        let res = leo_run(&p, &cfg).unwrap();
        leo.push(res.final_best());
        let mut rng = RandomStream::new(seed ^ 0xABCD);
        let best = (0..res.evaluations)
            .map(|_| {
                let x = [rng.uniform(-r, r), rng.uniform(-r, r)];
                p.evaluate(&x, &mut rng).unwrap()
            })
            .fold(f64::INFINITY, f64::min);
        random.push(best);
    }
    let (ml, mr) = (summarize(&leo).unwrap().mean, summarize(&random).unwrap().mean);
    let p = leo_core::stats::wilcoxon_rank_sum_with(&leo, &random, Alternative::Less).unwrap().p_value;
    assert!(ml < mr && p < 0.05, "leo {ml} vs random {mr}, p = {p}");
}

#[test]
fn baselines_share_the_harness_contract() {
    let p = classical(9);
    let cfg = RunConfig { population_size: 10, iterations: 4, seed: 3, ..RunConfig::default() };
    let ga = ga_run(&p, &GaConfig::from_run(&cfg), 3).unwrap();
    let pso = pso_run(&p, &PsoConfig::from_run(&cfg), 3).unwrap();
    assert_eq!(ga, Algorithm::Ga.run(&p, &cfg, 3).unwrap());
    assert_eq!(pso, Algorithm::Pso.run(&p, &cfg, 3).unwrap());
    for r in [&ga, &pso] {
        assert_eq!(r.problem, p.id);
        assert_eq!(r.convergence().len(), 5);
    }
}
