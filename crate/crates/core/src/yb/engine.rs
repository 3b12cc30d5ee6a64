use rayon::prelude::*;

use super::report::{Failure, VerificationReport};
use crate::error::{Error, Result};
use crate::field::{FieldConfig, Sampler};

/// Pole retries allowed per test tuple before the tuple is abandoned.
pub const RESAMPLE_BUDGET: usize = 50;

/// Samples drawn from one RNG stream. The sample budget is cut into chunks of
/// this size and chunk `i` always uses stream `i`, so results do not depend on
/// how many workers run.
const CHUNK: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub samples: usize,
    /// Worker cap; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Give every factor the same parameters (plain, non-parametric reading).
    pub equal_params: bool,
}

impl CheckOptions {
    pub fn new(samples: usize) -> Self {
        CheckOptions { samples, jobs: None, equal_params: false }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = Some(jobs.max(1));
        self
    }

    pub fn with_equal_params(mut self, equal: bool) -> Self {
        self.equal_params = equal;
        self
    }
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions::new(200)
    }
}

pub enum Outcome {
    Agree,
    Disagree(Failure),
}

/// Runs `trial` on `opts.samples` fresh tuples. Pole errors from `trial`
/// cause the whole tuple to be redrawn; any other error aborts the run.
pub fn run_trials<T>(
    identity: &str,
    subject: &str,
    cfg: &FieldConfig,
    opts: &CheckOptions,
    degree: u32,
    trial: T,
) -> Result<VerificationReport>
where
    T: Fn(&mut Sampler) -> Result<Outcome> + Sync,
{
    if opts.samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let chunks = opts.samples.div_ceil(CHUNK);
    let run_chunk = |chunk: usize| -> Result<VerificationReport> {
        let mut report = VerificationReport::empty(identity, subject, cfg, degree);
        let mut sampler = Sampler::new(cfg, chunk as u64);
        let count = CHUNK.min(opts.samples - chunk * CHUNK);
        report.samples.requested = count;
        for _ in 0..count {
            let mut done = false;
            for _ in 0..RESAMPLE_BUDGET {
                match trial(&mut sampler) {
                    Ok(Outcome::Agree) => {
                        report.samples.used += 1;
                        done = true;
                    }
                    Ok(Outcome::Disagree(f)) => {
                        report.samples.used += 1;
                        report.record_failure(f);
                        done = true;
                    }
                    Err(e) if e.is_pole() => report.samples.resampled += 1,
                    Err(Error::SamplingExhausted { .. }) => break,
                    Err(e) => return Err(e),
                }
                if done {
                    break;
                }
            }
            if !done {
                report.samples.exhausted += 1;
            }
        }
        report.finalize();
        Ok(report)
    };
    let collect = || -> Result<Vec<VerificationReport>> { (0..chunks).into_par_iter().map(run_chunk).collect() };
    let parts = match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(collect)?,
        None => collect()?,
    };
    let mut iter = parts.into_iter();
    let first = iter.next().expect("at least one chunk");
    Ok(iter.fold(first, VerificationReport::merge))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::yb::Verdict;

    #[test]
    fn pole_everywhere_is_inconclusive() {
        let cfg = FieldConfig::default_prime(1);
        let r = run_trials("always pole", "t", &cfg, &CheckOptions::new(3), 1, |_| Err(Error::DivisionByZero)).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.samples.resampled, 3 * RESAMPLE_BUDGET);
        assert_eq!(r.samples.exhausted, 3);
    }

    #[test]
    fn worker_count_does_not_change_the_report() {
        let cfg = FieldConfig::default_prime(9);
        let trial = |s: &mut Sampler| {
            let x = s.element();
            if x.as_prime().unwrap().value().is_multiple_of(3) {
                Ok(Outcome::Disagree(Failure::new(vec![("x", x.to_string())], "a".into(), "b".into())))
            } else {
                Ok(Outcome::Agree)
            }
        };
        let one = run_trials("t", "s", &cfg, &CheckOptions::new(100).with_jobs(1), 1, trial).unwrap();
        let four = run_trials("t", "s", &cfg, &CheckOptions::new(100).with_jobs(4), 1, trial).unwrap();
        assert_eq!(one, four);
        assert_eq!(one.samples.requested, 100);
        assert_eq!(one.verdict, Verdict::Fail);
    }

    #[test]
    fn other_errors_abort() {
        let cfg = FieldConfig::default_prime(1);
        let r = run_trials("t", "s", &cfg, &CheckOptions::new(3), 1, |_| Err(Error::ArityMismatch("boom".into())));
        assert!(matches!(r, Err(Error::ArityMismatch(_))));
    }
}
