//! Baseline and optimized design generators.

use std::fmt;
use std::str::FromStr;

use crate::design::Design;
use crate::error::{Error, Result};
use crate::optimizer::{multi_start, MultiStart, Objective, OptimizerConfig};
use crate::rng::SeededRng;
use crate::scalar::Scalar;

/// First twenty primes; Halton coordinate `k` uses base `PRIMES[k]`.
pub const PRIMES: [u64; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Random,
    Lhs,
    Halton,
    Hammersley,
    /// Exchange algorithm on the Gaussian kernel-density entropy.
    McGauss,
    /// Exchange algorithm on the nearest-neighbor entropy.
    Ppv,
    /// Exchange algorithm on the minimum pairwise distance.
    Maximin,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Random,
        Method::Lhs,
        Method::Halton,
        Method::Hammersley,
        Method::McGauss,
        Method::Ppv,
        Method::Maximin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Random => "random",
            Method::Lhs => "lhs",
            Method::Halton => "halton",
            Method::Hammersley => "hammersley",
            Method::McGauss => "mcgauss",
            Method::Ppv => "ppv",
            Method::Maximin => "maximin",
        }
    }

    pub fn is_optimized(self) -> bool {
        matches!(self, Method::McGauss | Method::Ppv | Method::Maximin)
    }

    /// Rng stream block reserved for this method, so that different methods
    /// never share draws for the same seed.
    pub fn stream_base(self) -> u64 {
        let idx = Method::ALL.iter().position(|&m| m == self).expect("listed") as u64;
        idx << 32
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let valid: Vec<&str> = Method::ALL.iter().map(|m| m.name()).collect();
                Error::InvalidArgument(format!("unknown method {s:?}; valid methods: {}", valid.join(", ")))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub method: Method,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    /// Used by the optimized methods only. Its `seed` and `stream` fields are
    /// overwritten from `seed` and the method's stream block.
    pub optimizer: OptimizerConfig,
}

impl GeneratorSpec {
    /// Spec with the default size `n = 10 d` and default optimizer settings.
    pub fn new(method: Method, d: usize, seed: u64) -> Self {
        Self {
            method,
            n: 10 * d,
            d,
            seed,
            optimizer: OptimizerConfig::for_dim(d, seed),
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }
}

/// Generated design plus, for optimized methods, the multi-start record.
#[derive(Clone, Debug)]
pub struct Generated<T> {
    pub design: Design<T>,
    pub run: Option<MultiStart<T>>,
}

impl<T: Scalar> Generated<T> {
    pub fn objective(&self) -> Option<T> {
        self.run.as_ref().map(MultiStart::best_objective)
    }
}

pub fn generate<T: Scalar>(spec: &GeneratorSpec) -> Result<Generated<T>> {
    if spec.n < 2 || spec.d < 1 {
        return Err(Error::InvalidArgument(format!(
            "need n >= 2 and d >= 1, got n = {}, d = {}",
            spec.n, spec.d
        )));
    }
    let mut rng = SeededRng::new(spec.seed, spec.method.stream_base());
    let plain = |design| Ok(Generated { design, run: None });
    match spec.method {
        Method::Random => plain(gen_random(spec.n, spec.d, &mut rng)),
        Method::Lhs => plain(gen_lhs(spec.n, spec.d, &mut rng)),
        Method::Halton => plain(gen_halton(spec.n, spec.d, 1)?),
        Method::Hammersley => plain(gen_hammersley(spec.n, spec.d)?),
        Method::McGauss | Method::Ppv | Method::Maximin => {
            let config = OptimizerConfig {
                seed: spec.seed,
                stream: spec.method.stream_base(),
                ..spec.optimizer.clone()
            };
            let run = gen_optimized(spec.method, spec.n, spec.d, &config)?;
            Ok(Generated {
                design: run.best.clone(),
                run: Some(run),
            })
        }
    }
}

pub fn gen_random<T: Scalar>(n: usize, d: usize, rng: &mut SeededRng) -> Design<T> {
    Design::random(n, d, rng)
}

/// Latin hypercube with uniform placement inside each stratum: coordinate
/// `k` of point `i` is `(pi_k(i) - u) / n` for an independent permutation
/// `pi_k` of `1..=n` and `u` uniform in `(0, 1]`.
pub fn gen_lhs<T: Scalar>(n: usize, d: usize, rng: &mut SeededRng) -> Design<T> {
    assert!(n >= 1 && d >= 1, "design needs n >= 1 and d >= 1");
    let mut points = vec![T::zero(); n * d];
    let mut perm: Vec<usize> = (1..=n).collect();
    let nf = n as f64;
    for k in 0..d {
        rng.shuffle(&mut perm);
        for (i, &stratum) in perm.iter().enumerate() {
            let u = 1.0 - rng.uniform();
            let upper = stratum as f64 / nf;
            let mut x = ((stratum as f64 - u) / nf).max(0.0);
            if x >= upper {
                x = upper.next_down();
            }
            points[i * d + k] = T::lit(x);
        }
    }
    Design::from_flat(n, d, points).expect("shape is consistent")
}

/// Van der Corput radical inverse of `index` in `base`.
pub fn radical_inverse<T: Scalar>(mut index: u64, base: u64) -> T {
    let b = T::lit(base as f64);
    let mut inv_base = T::one() / b;
    let mut result = T::zero();
    while index > 0 {
        result = result + T::lit((index % base) as f64) * inv_base;
        index /= base;
        inv_base = inv_base / b;
    }
    result
}

fn check_bases(d: usize) -> Result<()> {
    if d > PRIMES.len() {
        return Err(Error::BaseTableExceeded { d, max: PRIMES.len() });
    }
    Ok(())
}

/// Halton points `start .. start + n`, coordinate `k` in base `PRIMES[k]`.
pub fn gen_halton<T: Scalar>(n: usize, d: usize, start: u64) -> Result<Design<T>> {
    check_bases(d)?;
    let mut points = Vec::with_capacity(n * d);
    for i in 0..n as u64 {
        for &base in &PRIMES[..d] {
            points.push(radical_inverse(start + i, base));
        }
    }
    Design::from_flat(n, d, points)
}

/// Hammersley set: first coordinate `i / n`, the rest Halton in the first
/// `d - 1` primes, for `i = 0 .. n`.
pub fn gen_hammersley<T: Scalar>(n: usize, d: usize) -> Result<Design<T>> {
    check_bases(d.saturating_sub(1))?;
    let nf = T::from_usize_lossy(n);
    let mut points = Vec::with_capacity(n * d);
    for i in 0..n {
        points.push(T::from_usize_lossy(i) / nf);
        for &base in &PRIMES[..d - 1] {
            points.push(radical_inverse(i as u64, base));
        }
    }
    Design::from_flat(n, d, points)
}

pub fn objective_for<T: Scalar>(method: Method, n: usize, d: usize) -> Result<Objective<T>> {
    match method {
        Method::McGauss => Objective::mc_gauss_for(n, d),
        Method::Ppv => Ok(Objective::EntropyNn),
        Method::Maximin => Ok(Objective::Mindist),
        other => Err(Error::InvalidArgument(format!("{other} is not an optimized method"))),
    }
}

/// Multi-start exchange optimization with the objective matching `method`.
pub fn gen_optimized<T: Scalar>(method: Method, n: usize, d: usize, config: &OptimizerConfig) -> Result<MultiStart<T>> {
    let objective = objective_for(method, n, d)?;
    multi_start(&objective, n, d, config)
}
