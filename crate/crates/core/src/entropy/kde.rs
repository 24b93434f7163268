//! Resubstitution kernel-density entropy estimate.
//!
//! The density is estimated at each design point from all `n` points (self
//! term included), and the entropy is `-(1/n) * sum(ln f(X_i))`. The kernel
//! matrix is cached so that replacing one point costs `O(n d)`.

use crate::design::Design;
use crate::entropy::kernel::KernelSpec;
use crate::error::{Error, Result};
use crate::rng::SeededRng;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct KdeState<T> {
    kernel: KernelSpec<T>,
    n: usize,
    /// Row-major `n x n` kernel matrix, `kmat[i][j] = K((X_i - X_j) / h)`.
    kmat: Vec<T>,
    density: Vec<T>,
    entropy: T,
    /// `1 / (n h^d)`.
    scale: T,
}

/// A priced but not yet applied single-point replacement.
#[derive(Clone, Debug)]
pub struct KdeProposal<T> {
    index: usize,
    row: Vec<T>,
    density: Vec<T>,
    entropy: T,
}

impl<T: Scalar> KdeProposal<T> {
    pub fn entropy(&self) -> T {
        self.entropy
    }
}

/// Kernel-density Monte-Carlo entropy of `design`, with the state needed for
/// incremental updates.
pub fn entropy_mc<T: Scalar>(design: &Design<T>, kernel: &KernelSpec<T>) -> Result<(T, KdeState<T>)> {
    let state = KdeState::new(design, kernel.clone())?;
    Ok((state.entropy, state))
}

impl<T: Scalar> KdeState<T> {
    pub fn new(design: &Design<T>, kernel: KernelSpec<T>) -> Result<Self> {
        if kernel.dim() != design.d() {
            return Err(Error::InvalidArgument(format!(
                "kernel dimension {} does not match design dimension {}",
                kernel.dim(),
                design.d()
            )));
        }
        let n = design.n();
        let scale = density_scale(&kernel, n);
        let mut kmat = vec![T::zero(); n * n];
        for i in 0..n {
            let xi = design.point(i);
            kmat[i * n + i] = kernel.eval_pair(xi, xi);
            for j in i + 1..n {
                let k = kernel.eval_pair(xi, design.point(j));
                kmat[i * n + j] = k;
                kmat[j * n + i] = k;
            }
        }
        let density: Vec<T> = kmat
            .chunks_exact(n)
            .map(|row| row.iter().copied().sum::<T>() * scale)
            .collect();
        let entropy = resubstitution_entropy(&density)?;
        Ok(Self {
            kernel,
            n,
            kmat,
            density,
            entropy,
            scale,
        })
    }

    pub fn entropy(&self) -> T {
        self.entropy
    }

    pub fn density(&self) -> &[T] {
        &self.density
    }

    pub fn kernel(&self) -> &KernelSpec<T> {
        &self.kernel
    }

    pub fn kernel_entry(&self, i: usize, j: usize) -> T {
        self.kmat[i * self.n + j]
    }

    /// Prices the replacement of point `i` by `y` without touching the state.
    pub fn propose(&self, design: &Design<T>, i: usize, y: &[T]) -> Result<KdeProposal<T>> {
        let n = self.n;
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(if j == i {
                self.kernel.eval_pair(y, y)
            } else {
                self.kernel.eval_pair(y, design.point(j))
            });
        }
        let mut density = self.density.clone();
        for (j, dens) in density.iter_mut().enumerate() {
            if j != i {
                *dens = *dens + (row[j] - self.kmat[j * n + i]) * self.scale;
            }
        }
        density[i] = row.iter().copied().sum::<T>() * self.scale;
        let entropy = resubstitution_entropy(&density)?;
        Ok(KdeProposal {
            index: i,
            row,
            density,
            entropy,
        })
    }

    pub fn apply(&mut self, proposal: KdeProposal<T>) {
        let n = self.n;
        let i = proposal.index;
        for (j, &k) in proposal.row.iter().enumerate() {
            self.kmat[i * n + j] = k;
            self.kmat[j * n + i] = k;
        }
        self.density = proposal.density;
        self.entropy = proposal.entropy;
    }

    /// Updates the state after point `i` of `design` is replaced by `y`.
    ///
    /// `design` is the design before the swap.
    pub fn update_after_exchange(&mut self, design: &Design<T>, i: usize, y: &[T]) -> Result<T> {
        if design.point(i) == y {
            return Ok(self.entropy);
        }
        let proposal = self.propose(design, i, y)?;
        self.apply(proposal);
        Ok(self.entropy)
    }
}

fn density_scale<T: Scalar>(kernel: &KernelSpec<T>, n: usize) -> T {
    T::one() / (T::from_usize_lossy(n) * kernel.bandwidth().powi(kernel.dim() as i32))
}

fn resubstitution_entropy<T: Scalar>(density: &[T]) -> Result<T> {
    let mut acc = T::zero();
    for (i, &f) in density.iter().enumerate() {
        if !(f > T::zero()) {
            return Err(Error::DegenerateKernel(i));
        }
        acc = acc + f.ln();
    }
    Ok(-acc / T::from_usize_lossy(density.len()))
}

/// Kernel density estimate at an arbitrary point `x`.
pub fn kde_at<T: Scalar>(design: &Design<T>, kernel: &KernelSpec<T>, x: &[T]) -> T {
    let sum: T = design.rows().map(|p| kernel.eval_pair(x, p)).sum();
    sum * density_scale(kernel, design.n())
}

/// `-(1/N) * sum(f(Z) ln f(Z))` over `samples` uniform points `Z` of the unit
/// cube, for an arbitrary density `f`. Zero densities contribute zero.
pub fn uniform_sample_entropy<T, F>(density: F, d: usize, samples: usize, rng: &mut SeededRng) -> Result<T>
where
    T: Scalar,
    F: Fn(&[T]) -> T,
{
    if samples == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    let mut z = vec![T::zero(); d];
    let mut acc = T::zero();
    for _ in 0..samples {
        for c in z.iter_mut() {
            *c = T::lit(rng.uniform());
        }
        let f = density(&z);
        if f > T::zero() {
            acc = acc + f * f.ln();
        }
    }
    Ok(-acc / T::from_usize_lossy(samples))
}

/// Entropy of the kernel density estimate integrated against fresh uniform
/// samples instead of the design points themselves. Costs `O(N n d)`, so it
/// is offered for study only and never used by the optimizer.
pub fn entropy_mc_uniform<T: Scalar>(
    design: &Design<T>,
    kernel: &KernelSpec<T>,
    samples: usize,
    rng: &mut SeededRng,
) -> Result<T> {
    if kernel.dim() != design.d() {
        return Err(Error::InvalidArgument("kernel and design dimensions differ".into()));
    }
    uniform_sample_entropy(|z| kde_at(design, kernel, z), design.d(), samples, rng)
}
