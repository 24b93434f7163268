//! Nearest-neighbor (Kozachenko-Leonenko, k = 1) entropy estimate and the
//! pairwise-distance state it shares with the maximin objective.

use crate::design::Design;
use crate::entropy::kernel::unit_ball_volume;
use crate::error::{Error, Result};
use crate::scalar::{distance, Scalar};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Pairwise Euclidean distances plus each point's nearest-neighbor distance.
#[derive(Clone, Debug)]
pub struct DistanceState<T> {
    n: usize,
    /// Row-major `n x n`; the diagonal is zero and never read.
    dmat: Vec<T>,
    rho: Vec<T>,
}

#[derive(Clone, Debug)]
pub struct DistanceProposal<T> {
    index: usize,
    row: Vec<T>,
    rho: Vec<T>,
}

impl<T: Scalar> DistanceProposal<T> {
    pub fn rho(&self) -> &[T] {
        &self.rho
    }

    pub fn min_distance(&self) -> T {
        min_of(&self.rho)
    }
}

fn min_of<T: Scalar>(xs: &[T]) -> T {
    xs.iter().copied().fold(T::infinity(), T::min)
}

impl<T: Scalar> DistanceState<T> {
    pub fn new(design: &Design<T>) -> Result<Self> {
        let n = design.n();
        if n < 2 {
            return Err(Error::InvalidArgument("need at least two points".into()));
        }
        let mut dmat = vec![T::zero(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let r = distance(design.point(i), design.point(j));
                dmat[i * n + j] = r;
                dmat[j * n + i] = r;
            }
        }
        let rho = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i)
                    .map(|j| dmat[i * n + j])
                    .fold(T::infinity(), T::min)
            })
            .collect();
        Ok(Self { n, dmat, rho })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn distance(&self, i: usize, j: usize) -> T {
        self.dmat[i * self.n + j]
    }

    pub fn rho(&self) -> &[T] {
        &self.rho
    }

    pub fn min_distance(&self) -> T {
        min_of(&self.rho)
    }

    /// Index pair realizing a zero nearest-neighbor distance, if any.
    pub fn zero_pair(&self) -> Option<(usize, usize)> {
        zero_pair(self.n, &self.rho, |i, j| self.dmat[i * self.n + j])
    }

    pub fn propose(&self, design: &Design<T>, i: usize, y: &[T]) -> DistanceProposal<T> {
        let n = self.n;
        let row: Vec<T> = (0..n)
            .map(|j| if j == i { T::zero() } else { distance(y, design.point(j)) })
            .collect();
        let mut rho = self.rho.clone();
        for j in (0..n).filter(|&j| j != i) {
            let old = self.dmat[j * n + i];
            let new = row[j];
            if new < rho[j] {
                rho[j] = new;
            } else if old == rho[j] && new > old {
                // `i` may have been the nearest neighbor of `j`; rescan.
                rho[j] = (0..n)
                    .filter(|&k| k != j)
                    .map(|k| if k == i { new } else { self.dmat[j * n + k] })
                    .fold(T::infinity(), T::min);
            }
        }
        rho[i] = (0..n)
            .filter(|&j| j != i)
            .map(|j| row[j])
            .fold(T::infinity(), T::min);
        DistanceProposal { index: i, row, rho }
    }

    pub fn apply(&mut self, proposal: DistanceProposal<T>) {
        let n = self.n;
        let i = proposal.index;
        for (j, &r) in proposal.row.iter().enumerate() {
            self.dmat[i * n + j] = r;
            self.dmat[j * n + i] = r;
        }
        self.rho = proposal.rho;
    }

    pub fn update_after_exchange(&mut self, design: &Design<T>, i: usize, y: &[T]) {
        let proposal = self.propose(design, i, y);
        self.apply(proposal);
    }
}

fn zero_pair<T: Scalar>(n: usize, rho: &[T], dist: impl Fn(usize, usize) -> T) -> Option<(usize, usize)> {
    let i = rho.iter().position(|&r| !(r > T::zero()))?;
    let j = (0..n).find(|&j| j != i && !(dist(i, j) > T::zero()))?;
    Some((i.min(j), i.max(j)))
}

/// Nearest-neighbor entropy state.
#[derive(Clone, Debug)]
pub struct NnState<T> {
    dist: DistanceState<T>,
    d: usize,
    offset: T,
    entropy: T,
}

#[derive(Clone, Debug)]
pub struct NnProposal<T> {
    inner: DistanceProposal<T>,
    entropy: T,
}

impl<T: Scalar> NnProposal<T> {
    pub fn entropy(&self) -> T {
        self.entropy
    }
}

/// `ln V_d + C_E + ln(n - 1)`, the design-independent part of the estimate.
fn nn_offset<T: Scalar>(n: usize, d: usize) -> T {
    unit_ball_volume::<T>(d).ln() + T::lit(EULER_GAMMA) + T::from_usize_lossy(n - 1).ln()
}

fn nn_entropy<T: Scalar>(rho: &[T], d: usize, offset: T) -> T {
    let log_sum: T = rho.iter().map(|r| r.ln()).sum();
    T::from_usize_lossy(d) * log_sum / T::from_usize_lossy(rho.len()) + offset
}

/// Nearest-neighbor entropy `(d/n) sum(ln rho_i) + ln V_d + C_E + ln(n-1)`.
pub fn entropy_nn<T: Scalar>(design: &Design<T>) -> Result<(T, NnState<T>)> {
    let state = NnState::new(design)?;
    Ok((state.entropy, state))
}

impl<T: Scalar> NnState<T> {
    pub fn new(design: &Design<T>) -> Result<Self> {
        let dist = DistanceState::new(design)?;
        if let Some((i, j)) = dist.zero_pair() {
            return Err(Error::ZeroDistance(i, j));
        }
        let d = design.d();
        let offset = nn_offset(design.n(), d);
        let entropy = nn_entropy(dist.rho(), d, offset);
        Ok(Self {
            dist,
            d,
            offset,
            entropy,
        })
    }

    pub fn entropy(&self) -> T {
        self.entropy
    }

    pub fn rho(&self) -> &[T] {
        self.dist.rho()
    }

    pub fn distances(&self) -> &DistanceState<T> {
        &self.dist
    }

    pub fn propose(&self, design: &Design<T>, i: usize, y: &[T]) -> Result<NnProposal<T>> {
        let inner = self.dist.propose(design, i, y);
        if let Some(pair) = zero_pair(self.dist.n(), &inner.rho, |a, b| {
            if a == inner.index {
                inner.row[b]
            } else if b == inner.index {
                inner.row[a]
            } else {
                self.dist.distance(a, b)
            }
        }) {
            return Err(Error::ZeroDistance(pair.0, pair.1));
        }
        let entropy = nn_entropy(&inner.rho, self.d, self.offset);
        Ok(NnProposal { inner, entropy })
    }

    pub fn apply(&mut self, proposal: NnProposal<T>) {
        self.dist.apply(proposal.inner);
        self.entropy = proposal.entropy;
    }

    /// Updates after point `i` of `design` (pre-swap) is replaced by `y`.
    /// A swap that creates a duplicate leaves the state untouched and reports
    /// [`Error::ZeroDistance`].
    pub fn update_after_exchange(&mut self, design: &Design<T>, i: usize, y: &[T]) -> Result<T> {
        let proposal = self.propose(design, i, y)?;
        self.apply(proposal);
        Ok(self.entropy)
    }
}
