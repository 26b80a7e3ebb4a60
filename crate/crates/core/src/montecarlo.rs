//! Monte Carlo estimation of logical failure rates under independent
//! bit-flip noise with perfect syndrome measurement.
//!
//! Trial `t` draws its error from a ChaCha8 stream keyed by `(seed, t)`, so
//! the samples, and therefore the aggregated counts, do not depend on how
//! trials are scheduled across threads.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{classify_residual, LogicalBasis, ResidualClass};
use crate::bp::{BpDecoder, BpStatus, BpUfDecoder};
use crate::code::CssCode;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::uf::UnionFindDecoder;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DecoderKind {
    #[serde(rename = "uf")]
    UnionFind,
    #[serde(rename = "bp")]
    BeliefPropagation,
    #[serde(rename = "bp+uf")]
    BpThenUf,
}

impl DecoderKind {
    pub fn name(self) -> &'static str {
        match self {
            DecoderKind::UnionFind => "uf",
            DecoderKind::BeliefPropagation => "bp",
            DecoderKind::BpThenUf => "bp+uf",
        }
    }

    pub fn needs_probability(self) -> bool {
        !matches!(self, DecoderKind::UnionFind)
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uf" => Ok(DecoderKind::UnionFind),
            "bp" => Ok(DecoderKind::BeliefPropagation),
            "bp+uf" => Ok(DecoderKind::BpThenUf),
            other => Err(Error::InvalidParameter(format!("unknown decoder '{other}' (expected uf, bp or bp+uf)"))),
        }
    }
}

/// Random stream for trial `index` of a run seeded with `seed`.
pub fn trial_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Each of the `n` bits is set independently with probability `p`.
pub fn sample_error<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> BitVector {
    let mut v = BitVector::zeros(n);
    for i in 0..n {
        if rng.gen::<f64>() < p {
            v.set(i, true);
        }
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OutcomeClass {
    Success,
    LogicalFailure,
    FlaggedFailure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub class: OutcomeClass,
    /// Growth rounds (UF) or BP rounds used; for bp+uf, BP rounds plus UF
    /// rounds when the fallback ran.
    pub rounds: usize,
}

/// Aggregated result of one `(code, decoder, p)` point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimResult {
    pub code: String,
    pub decoder: DecoderKind,
    pub p: f64,
    pub trials: u64,
    pub success: u64,
    pub logical_fail: u64,
    pub flagged_fail: u64,
    pub k: usize,
    /// `(logical_fail + flagged_fail) / trials / k`; `None` when `k = 0`.
    pub per_logical_rate: Option<f64>,
    pub seed: u64,
}

impl SimResult {
    pub fn failures(&self) -> u64 {
        self.logical_fail + self.flagged_fail
    }

    pub fn failure_fraction(&self) -> f64 {
        self.failures() as f64 / self.trials as f64
    }

    /// Wilson score interval for the per-logical rate, using `z` standard
    /// deviations (1.96 for 95%).
    pub fn wilson_interval(&self, z: f64) -> Option<(f64, f64)> {
        if self.k == 0 {
            return None;
        }
        let (lo, hi) = wilson_interval(self.failures(), self.trials, z);
        Some((lo / self.k as f64, hi / self.k as f64))
    }
}

pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// `(failures / trials) / k`.
pub fn per_logical_failure_rate(result: &SimResult) -> Result<f64> {
    if result.k == 0 {
        return Err(Error::UndefinedRate);
    }
    Ok(result.failure_fraction() / result.k as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    pub decoder: DecoderKind,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

enum Engine {
    Uf(UnionFindDecoder),
    Bp(BpDecoder),
    BpUf(BpUfDecoder),
}

/// A decoder plus everything needed to classify its output, built once per
/// code and shared by all trials.
pub struct TrialRunner {
    code: CssCode,
    basis: LogicalBasis,
    engine: Engine,
    p: f64,
}

impl TrialRunner {
    pub fn new(code: &CssCode, decoder: DecoderKind, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("error probability p = {p} must lie in [0, 1]")));
        }
        // p = 0 never produces a nonzero syndrome, so BP is never consulted.
        if decoder.needs_probability() && p != 0.0 && !(p > 0.0 && p < 0.5) {
            return Err(Error::InvalidParameter(format!(
                "decoder {decoder} uses p = {p} as its prior, which must lie in (0, 0.5)"
            )));
        }
        let engine = match decoder {
            DecoderKind::UnionFind => Engine::Uf(UnionFindDecoder::new(code)),
            DecoderKind::BeliefPropagation => Engine::Bp(BpDecoder::new(code)),
            DecoderKind::BpThenUf => Engine::BpUf(BpUfDecoder::new(code)),
        };
        Ok(Self {
            code: code.clone(),
            basis: LogicalBasis::compute(code),
            engine,
            p,
        })
    }

    /// Decodes `error` from its syndrome and classifies the residual.
    pub fn run_error(&self, error: &BitVector) -> Result<TrialOutcome> {
        let syndrome = self.code.syndrome(error)?;
        if syndrome.is_zero() {
            return self.classify(error, 0);
        }
        match &self.engine {
            Engine::Uf(uf) => match uf.decode(&syndrome) {
                Ok(c) => self.classify(&(error ^ &c.correction), c.rounds),
                Err(Error::InfeasibleSyndrome { rounds }) => Ok(TrialOutcome {
                    class: OutcomeClass::FlaggedFailure,
                    rounds,
                }),
                Err(e) => Err(e),
            },
            Engine::Bp(bp) => {
                let out = bp.decode_tuning_free(&syndrome, self.p)?;
                match out.status {
                    BpStatus::Converged => self.classify(&(error ^ &out.estimate), out.rounds_used),
                    BpStatus::Flagged => Ok(TrialOutcome {
                        class: OutcomeClass::FlaggedFailure,
                        rounds: out.rounds_used,
                    }),
                }
            }
            Engine::BpUf(dec) => match dec.decode(&syndrome, self.p) {
                Ok((x, _)) => self.classify(&(error ^ &x), 0),
                Err(Error::InfeasibleSyndrome { rounds }) => Ok(TrialOutcome {
                    class: OutcomeClass::FlaggedFailure,
                    rounds,
                }),
                Err(e) => Err(e),
            },
        }
    }

    fn classify(&self, residual: &BitVector, rounds: usize) -> Result<TrialOutcome> {
        let class = match classify_residual(&self.code, &self.basis, residual)? {
            ResidualClass::Trivial => OutcomeClass::Success,
            ResidualClass::Logical => OutcomeClass::LogicalFailure,
        };
        Ok(TrialOutcome { class, rounds })
    }

    pub fn run_trial(&self, seed: u64, index: u64) -> Result<TrialOutcome> {
        let mut rng = trial_stream(seed, index);
        let error = sample_error(self.code.n(), self.p, &mut rng);
        self.run_error(&error)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Counts {
    success: u64,
    logical: u64,
    flagged: u64,
}

impl Counts {
    fn add(mut self, class: OutcomeClass) -> Self {
        match class {
            OutcomeClass::Success => self.success += 1,
            OutcomeClass::LogicalFailure => self.logical += 1,
            OutcomeClass::FlaggedFailure => self.flagged += 1,
        }
        self
    }

    fn merge(self, other: Self) -> Self {
        Self {
            success: self.success + other.success,
            logical: self.logical + other.logical,
            flagged: self.flagged + other.flagged,
        }
    }
}

pub fn run_trials(code: &CssCode, config: &RunConfig) -> Result<SimResult> {
    if config.trials == 0 {
        return Err(Error::InvalidParameter("trial count must be at least 1".into()));
    }
    if config.threads == Some(0) {
        return Err(Error::InvalidParameter("thread count must be at least 1".into()));
    }
    let runner = TrialRunner::new(code, config.decoder, config.p)?;
    let seed = config.seed;
    let count = || -> Result<Counts> {
        (0..config.trials)
            .into_par_iter()
            .map(|t| runner.run_trial(seed, t).map(|o| o.class))
            .try_fold(Counts::default, |acc, class| class.map(|c| acc.add(c)))
            .try_reduce(Counts::default, |a, b| Ok(a.merge(b)))
    };
    let counts = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("cannot build thread pool: {e}")))?
            .install(count)?,
        None => count()?,
    };
    let k = code.num_logical();
    let mut result = SimResult {
        code: code.name().to_string(),
        decoder: config.decoder,
        p: config.p,
        trials: config.trials,
        success: counts.success,
        logical_fail: counts.logical,
        flagged_fail: counts.flagged,
        k,
        per_logical_rate: None,
        seed,
    };
    result.per_logical_rate = per_logical_failure_rate(&result).ok();
    Ok(result)
}
