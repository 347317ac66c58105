//! C interface to `leo-core`.
//!
//! Every function returns a [`LeoStatus`]. On failure the message is kept per
//! thread and can be read with [`leo_last_error`]. Problems and results are
//! opaque handles released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use leo_core::benchmarks;
use leo_core::stats::{summarize, wilcoxon_rank_sum, Method};
use leo_core::{Algorithm, Error, Problem, RunConfig, RunResult};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Config = 3,
    Evaluation = 4,
    Domain = 5,
    Stats = 6,
    Io = 7,
    Internal = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeoAlgorithm {
    Leo = 0,
    Ga = 1,
    Pso = 2,
}

/// Mirror of `RunConfig` without the repetition count.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeoConfig {
    pub population_size: usize,
    pub iterations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub alpha_low: f64,
    pub alpha_high: f64,
    pub sigma_low: f64,
    pub sigma_high: f64,
    pub epsilon_div: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeoWilcoxon {
    pub u_statistic: f64,
    pub rank_sum: f64,
    pub p_value: f64,
    /// 1 when the exact null distribution was used.
    pub exact: i32,
    pub significant_at_0_05: i32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeoSummary {
    pub n: usize,
    pub mean: f64,
    pub std: f64,
}

pub struct LeoProblem(Problem);

pub struct LeoResult(RunResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LeoStatus {
    match e {
        Error::Config(_) | Error::Parse(_) => LeoStatus::Config,
        Error::Evaluation(_) => LeoStatus::Evaluation,
        Error::Domain(_) => LeoStatus::Domain,
        Error::Stats(_) => LeoStatus::Stats,
        Error::Io(_) => LeoStatus::Io,
        _ => LeoStatus::Internal,
    }
}

enum Fail {
    Null(&'static str),
    Arg(String),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guarded(f: impl FnOnce() -> Result<(), Fail>) -> LeoStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LeoStatus::Ok,
        Ok(Err(Fail::Null(name))) => {
            set_error(format!("{name} is null"));
            LeoStatus::NullPointer
        }
        Ok(Err(Fail::Arg(msg))) => {
            set_error(msg);
            LeoStatus::InvalidArgument
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            LeoStatus::Panic
        }
    }
}

unsafe fn read<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(name))
}

unsafe fn values<'a>(p: *const f64, len: usize, name: &'static str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(name));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn write<T>(p: *mut T, v: T, name: &'static str) -> Result<(), Fail> {
    if p.is_null() {
        return Err(Fail::Null(name));
    }
    p.write(v);
    Ok(())
}

/// Copies up to `cap` values into `buf` and stores the full length in `len`.
unsafe fn copy_out(src: &[f64], buf: *mut f64, cap: usize, len: *mut usize) -> Result<(), Fail> {
    write(len, src.len(), "len")?;
    let n = src.len().min(cap);
    if n > 0 {
        if buf.is_null() {
            return Err(Fail::Null("buf"));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, n);
    }
    Ok(())
}

fn run_config(c: &LeoConfig, seed: u64) -> RunConfig {
    RunConfig {
        population_size: c.population_size,
        iterations: c.iterations,
        repetitions: 1,
        crossover_rate: c.crossover_rate,
        mutation_rate: c.mutation_rate,
        alpha_low: c.alpha_low,
        alpha_high: c.alpha_high,
        sigma_low: c.sigma_low,
        sigma_high: c.sigma_high,
        epsilon_div: c.epsilon_div,
        seed,
        traces: false,
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn leo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Fills `out` with the default run parameters.
///
/// # Safety
/// `out` must be null or point to writable memory for one `LeoConfig`.
#[no_mangle]
pub unsafe extern "C" fn leo_config_default(out: *mut LeoConfig) -> LeoStatus {
    guarded(|| {
        let d = RunConfig::default();
        let c = LeoConfig {
            population_size: d.population_size,
            iterations: d.iterations,
            crossover_rate: d.crossover_rate,
            mutation_rate: d.mutation_rate,
            alpha_low: d.alpha_low,
            alpha_high: d.alpha_high,
            sigma_low: d.sigma_low,
            sigma_high: d.sigma_high,
            epsilon_div: d.epsilon_div,
        };
        write(out, c, "out")
    })
}

/// Builds a benchmark problem by id (`"TF1"` .. `"TF19"`, `"CEC01"` .. `"CEC10"`).
///
/// # Safety
/// `id` must be null or a NUL-terminated string; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn leo_problem_new(id: *const c_char, out: *mut *mut LeoProblem) -> LeoStatus {
    guarded(|| {
        if id.is_null() {
            return Err(Fail::Null("id"));
        }
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let id = CStr::from_ptr(id).to_str().map_err(|_| Fail::Arg("id is not UTF-8".into()))?;
        let p = benchmarks::problem(id)?;
        out.write(Box::into_raw(Box::new(LeoProblem(p))));
        Ok(())
    })
}

/// # Safety
/// `problem` must be null or a handle from [`leo_problem_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn leo_problem_free(problem: *mut LeoProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// # Safety
/// `problem` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn leo_problem_dimension(problem: *const LeoProblem, out: *mut usize) -> LeoStatus {
    guarded(|| {
        let p = read(problem, "problem")?;
        write(out, p.0.dimension, "out")
    })
}

/// Copies the lower and upper bounds, each of `dimension` values.
///
/// # Safety
/// `lower` and `upper` must each hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn leo_problem_bounds(
    problem: *const LeoProblem,
    lower: *mut f64,
    upper: *mut f64,
    cap: usize,
    len: *mut usize,
) -> LeoStatus {
    guarded(|| {
        let p = read(problem, "problem")?;
        copy_out(&p.0.lower, lower, cap, len)?;
        copy_out(&p.0.upper, upper, cap, len)
    })
}

/// Objective value at `x`. Noisy problems draw from a stream seeded by `seed`.
///
/// # Safety
/// `x` must hold `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn leo_problem_evaluate(
    problem: *const LeoProblem,
    x: *const f64,
    len: usize,
    seed: u64,
    out: *mut f64,
) -> LeoStatus {
    guarded(|| {
        let p = read(problem, "problem")?;
        let x = values(x, len, "x")?;
        let v = p.0.evaluate(x, &mut leo_core::RandomStream::new(seed))?;
        write(out, v, "out")
    })
}

/// One run of `algorithm` (a `LeoAlgorithm` value) on `problem`.
///
/// # Safety
/// `problem` and `config` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn leo_run(
    problem: *const LeoProblem,
    algorithm: u32,
    config: *const LeoConfig,
    seed: u64,
    out: *mut *mut LeoResult,
) -> LeoStatus {
    guarded(|| {
        let p = read(problem, "problem")?;
        let c = read(config, "config")?;
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let alg = match algorithm {
            x if x == LeoAlgorithm::Leo as u32 => Algorithm::Leo,
            x if x == LeoAlgorithm::Ga as u32 => Algorithm::Ga,
            x if x == LeoAlgorithm::Pso as u32 => Algorithm::Pso,
            x => return Err(Fail::Arg(format!("unknown algorithm {x}"))),
        };
        let r = alg.run(&p.0, &run_config(c, seed), seed)?;
        out.write(Box::into_raw(Box::new(LeoResult(r))));
        Ok(())
    })
}

/// # Safety
/// `result` must be null or a handle from [`leo_run`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn leo_result_free(result: *mut LeoResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// # Safety
/// `result` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn leo_result_best_value(result: *const LeoResult, out: *mut f64) -> LeoStatus {
    guarded(|| {
        let r = read(result, "result")?;
        write(out, r.0.final_best(), "out")
    })
}

/// # Safety
/// `result` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn leo_result_evaluations(result: *const LeoResult, out: *mut u64) -> LeoStatus {
    guarded(|| {
        let r = read(result, "result")?;
        write(out, r.0.evaluations, "out")
    })
}

/// Copies the best position. `len` receives the dimension even when `cap`
/// is smaller, so a first call with `cap = 0` sizes the buffer.
///
/// # Safety
/// `buf` must hold `cap` values; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn leo_result_best_genes(
    result: *const LeoResult,
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
) -> LeoStatus {
    guarded(|| {
        let r = read(result, "result")?;
        copy_out(&r.0.best.genes, buf, cap, len)
    })
}

/// Best-so-far value per generation, initial population first.
///
/// # Safety
/// `buf` must hold `cap` values; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn leo_result_convergence(
    result: *const LeoResult,
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
) -> LeoStatus {
    guarded(|| {
        let r = read(result, "result")?;
        copy_out(r.0.convergence(), buf, cap, len)
    })
}

/// Two-sided rank-sum test of `a` against `b`.
///
/// # Safety
/// `a` and `b` must hold `na` and `nb` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn leo_wilcoxon(
    a: *const f64,
    na: usize,
    b: *const f64,
    nb: usize,
    out: *mut LeoWilcoxon,
) -> LeoStatus {
    guarded(|| {
        let w = wilcoxon_rank_sum(values(a, na, "a")?, values(b, nb, "b")?)?;
        let v = LeoWilcoxon {
            u_statistic: w.u_statistic,
            rank_sum: w.rank_sum,
            p_value: w.p_value,
            exact: (w.method == Method::Exact) as i32,
            significant_at_0_05: w.significant_at_0_05 as i32,
        };
        write(out, v, "out")
    })
}

/// # Safety
/// `v` must hold `n` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn leo_summarize(v: *const f64, n: usize, out: *mut LeoSummary) -> LeoStatus {
    guarded(|| {
        let s = summarize(values(v, n, "v")?)?;
        write(out, LeoSummary { n: s.n, mean: s.mean, std: s.std }, "out")
    })
}
