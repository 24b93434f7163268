//! Exchange algorithm: repeatedly replace a random design point by a fresh
//! uniform draw and keep the swap only if the objective strictly improves.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::design::Design;
use crate::entropy::{DistanceProposal, DistanceState, KdeProposal, KdeState, KernelFamily, KernelSpec, NnProposal, NnState};
use crate::error::{Error, Result};
use crate::rng::{uniform_point, SeededRng};
use crate::scalar::Scalar;

pub use crate::criteria::mindist as mindist_objective;

/// What the exchange loop maximizes.
#[derive(Clone, Debug, PartialEq)]
pub enum Objective<T> {
    /// Resubstitution kernel-density entropy with a Gaussian kernel.
    EntropyMcGauss(KernelSpec<T>),
    /// Nearest-neighbor entropy.
    EntropyNn,
    /// Smallest pairwise distance.
    Mindist,
}

impl<T: Scalar> Objective<T> {
    /// Kernel-density entropy objective. Only the Gaussian family is allowed:
    /// bounded kernels are almost always zero between distinct points at the
    /// default bandwidth, which leaves the objective flat.
    pub fn mc_gauss(kernel: KernelSpec<T>) -> Result<Self> {
        if kernel.family() != KernelFamily::Gaussian {
            return Err(Error::InvalidArgument(format!(
                "the exchange objective requires a Gaussian kernel, got {:?}",
                kernel.family()
            )));
        }
        Ok(Self::EntropyMcGauss(kernel))
    }

    /// Gaussian kernel-density objective with the default bandwidth for `(n, d)`.
    pub fn mc_gauss_for(n: usize, d: usize) -> Result<Self> {
        Self::mc_gauss(KernelSpec::gaussian_for(n, d)?)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::EntropyMcGauss(_) => "entropy-mc-gauss",
            Self::EntropyNn => "entropy-nn",
            Self::Mindist => "mindist",
        }
    }

    pub fn state(&self, design: &Design<T>) -> Result<ObjectiveState<T>> {
        Ok(match self {
            Self::EntropyMcGauss(kernel) => ObjectiveState::Kde(KdeState::new(design, kernel.clone())?),
            Self::EntropyNn => ObjectiveState::Nn(NnState::new(design)?),
            Self::Mindist => ObjectiveState::Mindist(DistanceState::new(design)?),
        })
    }

    pub fn evaluate(&self, design: &Design<T>) -> Result<T> {
        Ok(self.state(design)?.value())
    }
}

/// Incremental evaluation state behind an [`Objective`].
#[derive(Clone, Debug)]
pub enum ObjectiveState<T> {
    Kde(KdeState<T>),
    Nn(NnState<T>),
    Mindist(DistanceState<T>),
}

/// A priced swap, applied only if accepted.
#[derive(Debug)]
pub enum Pending<T> {
    Kde(KdeProposal<T>),
    Nn(NnProposal<T>),
    Mindist(DistanceProposal<T>),
}

impl<T: Scalar> ObjectiveState<T> {
    pub fn value(&self) -> T {
        match self {
            Self::Kde(s) => s.entropy(),
            Self::Nn(s) => s.entropy(),
            Self::Mindist(s) => s.min_distance(),
        }
    }

    /// Objective value if point `i` of `design` were replaced by `y`.
    pub fn propose(&self, design: &Design<T>, i: usize, y: &[T]) -> Result<(T, Pending<T>)> {
        Ok(match self {
            Self::Kde(s) => {
                let p = s.propose(design, i, y)?;
                (p.entropy(), Pending::Kde(p))
            }
            Self::Nn(s) => {
                let p = s.propose(design, i, y)?;
                (p.entropy(), Pending::Nn(p))
            }
            Self::Mindist(s) => {
                let p = s.propose(design, i, y);
                (p.min_distance(), Pending::Mindist(p))
            }
        })
    }

    pub fn apply(&mut self, pending: Pending<T>) {
        match (self, pending) {
            (Self::Kde(s), Pending::Kde(p)) => s.apply(p),
            (Self::Nn(s), Pending::Nn(p)) => s.apply(p),
            (Self::Mindist(s), Pending::Mindist(p)) => s.apply(p),
            _ => panic!("proposal does not belong to this objective state"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimizerConfig {
    /// Hard cap on tested exchanges, accepted or not.
    pub max_proposals: usize,
    /// Stop after this many consecutive rejected exchanges.
    pub max_consecutive_rejects: usize,
    pub restarts: usize,
    pub seed: u64,
    /// First rng stream; restart `r` uses `stream + r`.
    pub stream: u64,
}

impl OptimizerConfig {
    pub const DEFAULT_RESTARTS: usize = 5;

    /// Defaults for dimension `d`: `1000 d` proposals, `100 d` consecutive
    /// rejects, five restarts.
    pub fn for_dim(d: usize, seed: u64) -> Self {
        Self {
            max_proposals: 1000 * d,
            max_consecutive_rejects: 100 * d,
            restarts: Self::DEFAULT_RESTARTS,
            seed,
            stream: 0,
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.max_proposals == 0 {
            return Err(Error::InvalidArgument("max_proposals must be at least 1".into()));
        }
        if self.max_consecutive_rejects == 0 {
            return Err(Error::InvalidArgument("max_consecutive_rejects must be at least 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidArgument("restarts must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceStep<T> {
    /// 1-based proposal counter.
    pub proposal: usize,
    pub accepted: bool,
    /// Objective after the accept/reject decision.
    pub objective: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trace<T> {
    pub stream: u64,
    pub initial_objective: T,
    pub final_objective: T,
    pub proposals: usize,
    pub accepted: usize,
    pub steps: Vec<TraceStep<T>>,
}

impl<T: Scalar> Trace<T> {
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("proposal,accepted,objective\n");
        for s in &self.steps {
            let _ = writeln!(out, "{},{},{}", s.proposal, u8::from(s.accepted), s.objective);
        }
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_csv_string()).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }

    /// True if every accepted step strictly raised the objective and every
    /// rejected step left it unchanged.
    pub fn is_monotone(&self) -> bool {
        let mut prev = self.initial_objective;
        for s in &self.steps {
            if s.accepted {
                if !(s.objective > prev) {
                    return false;
                }
            } else if s.objective != prev {
                return false;
            }
            prev = s.objective;
        }
        prev == self.final_objective
    }
}

/// Runs the exchange loop from `initial` on rng stream `(config.seed, config.stream)`.
pub fn exchange_run<T: Scalar>(
    initial: &Design<T>,
    objective: &Objective<T>,
    config: &OptimizerConfig,
) -> Result<(Design<T>, Trace<T>)> {
    let mut rng = SeededRng::new(config.seed, config.stream);
    exchange_run_with_rng(initial, objective, config, &mut rng)
}

/// Exchange loop drawing from a caller-owned rng.
///
/// Fails if the objective cannot be evaluated on `initial` (for the
/// nearest-neighbor entropy: duplicated points). Proposals whose evaluation
/// fails are counted as rejected.
pub fn exchange_run_with_rng<T: Scalar>(
    initial: &Design<T>,
    objective: &Objective<T>,
    config: &OptimizerConfig,
    rng: &mut SeededRng,
) -> Result<(Design<T>, Trace<T>)> {
    config.check()?;
    let state = objective.state(initial)?;
    Ok(run_loop(initial.clone(), state, config, rng))
}

fn run_loop<T: Scalar>(
    mut design: Design<T>,
    mut state: ObjectiveState<T>,
    config: &OptimizerConfig,
    rng: &mut SeededRng,
) -> (Design<T>, Trace<T>) {
    let (n, d) = (design.n(), design.d());
    let initial_objective = state.value();
    let mut current = initial_objective;
    let mut steps = Vec::new();
    let mut proposals = 0;
    let mut accepted = 0;
    let mut stale = 0;
    while proposals < config.max_proposals && stale < config.max_consecutive_rejects {
        proposals += 1;
        let i = rng.index(n);
        let y: Vec<T> = uniform_point(rng, d);
        let took = match state.propose(&design, i, &y) {
            Ok((value, pending)) if value > current => {
                state.apply(pending);
                design.replace_point(i, &y);
                current = value;
                true
            }
            _ => false,
        };
        if took {
            accepted += 1;
            stale = 0;
        } else {
            stale += 1;
        }
        steps.push(TraceStep {
            proposal: proposals,
            accepted: took,
            objective: current,
        });
    }
    let trace = Trace {
        stream: rng.stream(),
        initial_objective,
        final_objective: current,
        proposals,
        accepted,
        steps,
    };
    (design, trace)
}

/// Uniform random draws before giving up on finding an evaluable start.
const MAX_INITIAL_DRAWS: usize = 1000;

#[derive(Clone, Debug)]
pub struct MultiStart<T> {
    pub best: Design<T>,
    /// Restart index of `best`.
    pub best_restart: usize,
    pub traces: Vec<Trace<T>>,
}

impl<T: Scalar> MultiStart<T> {
    pub fn best_objective(&self) -> T {
        self.traces[self.best_restart].final_objective
    }
}

/// Draws the initial design for restart `r` and runs the exchange loop on the
/// same stream. Initial designs the objective rejects (duplicates under the
/// nearest-neighbor entropy) are redrawn.
pub fn single_restart<T: Scalar>(
    objective: &Objective<T>,
    n: usize,
    d: usize,
    config: &OptimizerConfig,
    r: usize,
) -> Result<(Design<T>, Trace<T>)> {
    config.check()?;
    if n < 2 || d < 1 {
        return Err(Error::InvalidArgument(format!("need n >= 2 and d >= 1, got n = {n}, d = {d}")));
    }
    let mut rng = SeededRng::new(config.seed, config.stream + r as u64);
    for _ in 0..MAX_INITIAL_DRAWS {
        let initial = Design::random(n, d, &mut rng);
        match objective.state(&initial) {
            Ok(state) => return Ok(run_loop(initial, state, config, &mut rng)),
            Err(Error::ZeroDistance(..)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateDesign(format!(
        "no evaluable initial design after {MAX_INITIAL_DRAWS} draws"
    )))
}

/// Best of `config.restarts` independent exchange runs. Restarts run in
/// parallel, each on its own rng stream; ties go to the lowest restart index.
pub fn multi_start<T: Scalar>(
    objective: &Objective<T>,
    n: usize,
    d: usize,
    config: &OptimizerConfig,
) -> Result<MultiStart<T>> {
    config.check()?;
    let runs: Vec<(Design<T>, Trace<T>)> = (0..config.restarts)
        .into_par_iter()
        .map(|r| single_restart(objective, n, d, config, r))
        .collect::<Result<_>>()?;
    let mut best_restart = 0;
    for (r, (_, trace)) in runs.iter().enumerate().skip(1) {
        if trace.final_objective > runs[best_restart].1.final_objective {
            best_restart = r;
        }
    }
    let (designs, traces): (Vec<_>, Vec<_>) = runs.into_iter().unzip();
    let best = designs.into_iter().nth(best_restart).expect("at least one restart");
    Ok(MultiStart {
        best,
        best_restart,
        traces,
    })
}
