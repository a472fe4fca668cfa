use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rayon::prelude::*;

use extraspecial::report::{ReportBuilder, VerificationReport, Witness};
use extraspecial::symplectic::{SymplecticSpace, MAX_RANK};
use extraspecial::theorems::{self, structure, FSequence};
use extraspecial::{Error, PrimeField};

use crate::config::{Suite, SuiteConfig};

/// Most Lagrangians handled without `--allow-large`.
pub const DEFAULT_LAGRANGIAN_CAP: u64 = 156;

/// A configuration the runner refuses; maps to exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Reports in instance order, plus suites skipped under `all`.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub reports: Vec<VerificationReport>,
    pub skipped: Vec<String>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if theorems::all_passed(&self.reports) {
            0
        } else {
            1
        }
    }
}

type Job = Box<dyn Fn() -> extraspecial::Result<Vec<VerificationReport>> + Send + Sync>;

struct Instance {
    id: &'static str,
    job: Job,
}

impl Instance {
    fn new(
        id: &'static str,
        job: impl Fn() -> extraspecial::Result<Vec<VerificationReport>> + Send + Sync + 'static,
    ) -> Self {
        Self { id, job: Box::new(job) }
    }

    fn one(
        id: &'static str,
        job: impl Fn() -> extraspecial::Result<VerificationReport> + Send + Sync + 'static,
    ) -> Self {
        Self::new(id, move || job().map(|r| vec![r]))
    }

    /// Runs the job; a library error becomes a failed report.
    fn execute(&self, p: u32, n: usize, timing: bool) -> Vec<VerificationReport> {
        let start = Instant::now();
        let mut reports = match (self.job)() {
            Ok(r) => r,
            Err(e) => vec![error_report(self.id, p, n, &e)],
        };
        if timing {
            let ms = start.elapsed().as_millis() as u64;
            for r in &mut reports {
                r.elapsed_ms = Some(ms);
            }
        }
        reports
    }
}

fn error_report(id: &str, p: u32, n: usize, e: &Error) -> VerificationReport {
    let mut b = ReportBuilder::new(id).param("p", p).param("n", n as u64);
    b.check(false, || Witness::new(Vec::new(), String::new()).with_detail(format!("computation failed: {e}")));
    b.finish()
}

/// Checks `config` for usage errors.
pub fn validate(config: &SuiteConfig) -> Result<(), UsageError> {
    let field = PrimeField::new(config.p).map_err(|_| {
        if is_odd_prime(config.p) {
            UsageError(format!("p = {} is not supported; p must be an odd prime at most 13", config.p))
        } else {
            UsageError("p must be an odd prime".into())
        }
    })?;
    if config.n == 0 {
        return Err(UsageError("n must be at least 1".into()));
    }
    if config.n > MAX_RANK {
        return Err(UsageError(format!("n must be at most {MAX_RANK}")));
    }
    let space = SymplecticSpace::new(field, config.n).map_err(|e| UsageError(e.to_string()))?;
    let count = space.expected_lagrangian_count();
    if count > DEFAULT_LAGRANGIAN_CAP && !config.allow_large {
        return Err(UsageError(format!(
            "(p, n) = ({}, {}) has {count} Lagrangians; pass --allow-large to run it",
            config.p, config.n
        )));
    }
    if config.degree_bound == Some(0) {
        return Err(UsageError("degree bound must be at least 1".into()));
    }
    if config.jobs == Some(0) {
        return Err(UsageError("jobs must be at least 1".into()));
    }
    if config.base_points == Some(0) {
        return Err(UsageError("base points must be at least 1".into()));
    }
    if !config.suites.contains(&Suite::All) {
        for &s in &config.suites {
            if let Some(why) = inapplicable(s, config.n) {
                return Err(UsageError(format!("suite {} {why}", s.name())));
            }
        }
    }
    Ok(())
}

fn is_odd_prime(p: u32) -> bool {
    p > 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn inapplicable(suite: Suite, n: usize) -> Option<&'static str> {
    match suite {
        Suite::Prop81 | Suite::Lemma83 if n != 2 => Some("needs n = 2"),
        Suite::Kernel if n > 2 => Some("needs n at most 2"),
        _ => None,
    }
}

/// Evenly spaced indices `0..len`, at most `cap` of them.
fn base_point_indices(len: usize, cap: Option<usize>) -> Vec<usize> {
    match cap {
        Some(k) if k < len => (0..k).map(|i| i * len / k).collect(),
        _ => (0..len).collect(),
    }
}

fn instances(config: &SuiteConfig, skipped: &mut Vec<String>) -> Result<Vec<Instance>, UsageError> {
    let field = PrimeField::new(config.p).map_err(|e| UsageError(e.to_string()))?;
    let space = SymplecticSpace::new(field, config.n).map_err(|e| UsageError(e.to_string()))?;
    let n = config.n;
    let bound = config.degree_bound.unwrap_or_else(|| theorems::default_degree_bound(config.p, n));
    let fseq: Arc<OnceLock<Result<FSequence, Error>>> = Arc::new(OnceLock::new());
    let get_fseq = {
        let space = space.clone();
        move |cell: &OnceLock<Result<FSequence, Error>>| -> extraspecial::Result<FSequence> {
            cell.get_or_init(|| theorems::compute_f_sequence(&space)).clone()
        }
    };

    let mut out = Vec::new();
    for suite in config.expanded_suites() {
        if let Some(why) = inapplicable(suite, n) {
            skipped.push(format!("{}: {why}", suite.name()));
            continue;
        }
        match suite {
            Suite::Dickson => {
                let seed = config.seed;
                out.push(Instance::new("dickson", move || structure::dickson_suite(field, seed)));
            }
            Suite::Symplectic => {
                let s = space.clone();
                out.push(Instance::one("zeta_invariance", move || structure::verify_zeta_invariance(&s)));
                let s = space.clone();
                out.push(Instance::one("structural_counts", move || structure::verify_structural_counts(&s)));
            }
            Suite::Thm52 => {
                let count = space.lagrangians().len();
                for r in 0..n {
                    for i0 in base_point_indices(count, config.base_points) {
                        let s = space.clone();
                        out.push(Instance::one("theorem_5_2", move || theorems::verify_theorem_5_2(&s, i0, r)));
                    }
                }
            }
            Suite::Prop64 => {
                let (s, cell, get) = (space.clone(), fseq.clone(), get_fseq.clone());
                out.push(Instance::one("prop_6_4", move || theorems::verify_prop_6_4(&s, &get(&cell)?)));
            }
            Suite::Lemma71 => {
                let (s, cell, get) = (space.clone(), fseq.clone(), get_fseq.clone());
                out.push(Instance::new("lemma_7_1", move || {
                    let f = get(&cell)?;
                    let mut reports = vec![theorems::verify_lemma_7_1(&s, &f)?];
                    reports.extend(theorems::lemma_7_1_diagnostics(&s, &f)?);
                    Ok(reports)
                }));
            }
            Suite::Thm72 => {
                for r in 0..n {
                    for phi in space.projective_forms() {
                        let s = space.clone();
                        out.push(Instance::one("thm_7_2", move || theorems::verify_thm_pth_power(&s, r, &phi)));
                    }
                }
                if n == 1 {
                    let s = space.clone();
                    out.push(Instance::one("thm_7_2_control", move || theorems::verify_pth_power_control(&s)));
                }
            }
            Suite::Prop81 => out.push(Instance::one("prop_8_1", move || theorems::verify_prop_8_1(field))),
            Suite::Lemma83 => out.push(Instance::one("lemma_8_3", move || theorems::verify_lemma_8_3(field, bound))),
            Suite::Kernel => {
                let s = space.clone();
                out.push(Instance::one("joint_kernel", move || theorems::verify_joint_kernel(&s, bound)));
            }
            Suite::All => unreachable!("expanded"),
        }
    }
    Ok(out)
}

/// Runs every selected suite. Report order follows the instance
/// enumeration, never completion order.
pub fn run(config: &SuiteConfig) -> Result<RunOutcome, UsageError> {
    validate(config)?;
    let mut skipped = Vec::new();
    let instances = instances(config, &mut skipped)?;
    let (p, n, timing) = (config.p, config.n, config.timing);
    let execute = || -> Vec<VerificationReport> {
        instances.par_iter().map(|i| i.execute(p, n, timing)).collect::<Vec<_>>().into_iter().flatten().collect()
    };
    let reports = match config.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| UsageError(format!("cannot start {j} worker threads: {e}")))?
            .install(execute),
        None => execute(),
    };
    Ok(RunOutcome { reports, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_points_are_spread_out() {
        assert_eq!(base_point_indices(10, Some(3)), vec![0, 3, 6]);
        assert_eq!(base_point_indices(4, Some(10)), vec![0, 1, 2, 3]);
        assert_eq!(base_point_indices(3, None), vec![0, 1, 2]);
    }

    #[test]
    fn usage_errors() {
        let bad = |f: &dyn Fn(&mut SuiteConfig)| {
            let mut c = SuiteConfig::default();
            f(&mut c);
            validate(&c).unwrap_err().0
        };
        assert_eq!(bad(&|c| c.p = 4), "p must be an odd prime");
        assert_eq!(bad(&|c| c.p = 2), "p must be an odd prime");
        assert!(bad(&|c| c.p = 17).contains("at most 13"));
        assert!(bad(&|c| c.n = 0).contains("at least 1"));
        assert!(bad(&|c| c.n = 3).contains("--allow-large"));
        assert!(bad(&|c| {
            c.n = 1;
            c.suites = vec![Suite::Prop81];
        })
        .contains("n = 2"));
        assert!(is_odd_prime(13) && !is_odd_prime(9) && !is_odd_prime(1));
    }
}
