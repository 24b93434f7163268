//! Smoothing kernels, the fixed bandwidth rule and their normalization
//! constants.

use crate::error::{Error, Result};
use crate::rng::SeededRng;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelFamily {
    Gaussian,
    /// `alpha * (1 - |z|^2)` on the unit ball.
    EpanechnikovSpherical,
    /// Product of 1-D factors `(3/4) * (1 - z_k^2)` on `[-1, 1]`.
    EpanechnikovProduct,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelSpec<T> {
    family: KernelFamily,
    d: usize,
    h: T,
    /// Internal variance of the Gaussian kernel, `d / 12`.
    s2: T,
    /// Normalization constant. For the Gaussian family this holds
    /// `(2 pi)^(-d/2) / s^d`.
    alpha: T,
}

/// Fixed bandwidth `n^(-1/(d+4)) / sqrt(12)`.
///
/// It only depends on `(n, d)`, so the estimator's bias stays the same for
/// every design visited by the exchange loop.
pub fn bandwidth<T: Scalar>(n: usize, d: usize) -> Result<T> {
    if n < 2 || d < 1 {
        return Err(Error::InvalidArgument(format!(
            "bandwidth needs n >= 2 and d >= 1, got n = {n}, d = {d}"
        )));
    }
    let n = T::from_usize_lossy(n);
    let exponent = -T::one() / T::from_usize_lossy(d + 4);
    Ok(n.powf(exponent) / T::lit(12.0).sqrt())
}

/// Volume of the Euclidean unit ball in dimension `d`.
pub fn unit_ball_volume<T: Scalar>(d: usize) -> T {
    assert!(d >= 1, "dimension must be at least 1");
    let pi = T::PI();
    let p = d / 2;
    let p_fact = factorial::<T>(p);
    if d % 2 == 0 {
        pi.powi(p as i32) / p_fact
    } else {
        // pi^p * 2^(2p) * p! / ((2p)! * (p + 1/2))
        let four_p = T::lit(4.0).powi(p as i32);
        pi.powi(p as i32) * four_p * p_fact
            / (factorial::<T>(2 * p) * (T::from_usize_lossy(p) + T::lit(0.5)))
    }
}

fn factorial<T: Scalar>(k: usize) -> T {
    (1..=k).fold(T::one(), |acc, i| acc * T::from_usize_lossy(i))
}

/// Accepted in-ball samples per repetition of the Monte-Carlo integral.
pub const ALPHA_MC_ACCEPTED: usize = 10_000;
/// Independent repetitions averaged by [`epanechnikov_alpha`].
pub const ALPHA_MC_REPETITIONS: usize = 10;

/// Normalization constant of the spherical Epanechnikov kernel.
///
/// Exact for `d <= 3`. Above that, the integral of `1 - |x|^2` over the unit
/// ball is estimated by rejection sampling: points are drawn uniformly in
/// `[0, 1]^d`, those outside the ball are discarded, and the mean of
/// `1 - |x|^2` over the survivors is scaled by the ball volume. Each of
/// [`ALPHA_MC_REPETITIONS`] repetitions keeps drawing until it has
/// [`ALPHA_MC_ACCEPTED`] survivors; the repetition estimates are averaged and
/// inverted.
pub fn epanechnikov_alpha<T: Scalar>(d: usize, rng: &mut SeededRng) -> T {
    assert!(d >= 1, "dimension must be at least 1");
    match d {
        1 => T::lit(0.75),
        2 => T::lit(2.0) / T::PI(),
        3 => T::lit(15.0) / (T::lit(8.0) * T::PI()),
        _ => {
            let volume = unit_ball_volume::<f64>(d);
            let mut total = 0.0;
            for _ in 0..ALPHA_MC_REPETITIONS {
                let mut accepted = 0usize;
                let mut sum = 0.0;
                while accepted < ALPHA_MC_ACCEPTED {
                    if let Some(norm2) = draw_in_ball(d, rng) {
                        sum += 1.0 - norm2;
                        accepted += 1;
                    }
                }
                total += sum * volume / accepted as f64;
            }
            T::lit(ALPHA_MC_REPETITIONS as f64 / total)
        }
    }
}

/// Draws a uniform point of `[0,1]^d`; returns its squared norm if it lies in
/// the unit ball. Coordinates past the first one that leaves the ball are
/// never drawn.
fn draw_in_ball(d: usize, rng: &mut SeededRng) -> Option<f64> {
    let mut norm2 = 0.0;
    for _ in 0..d {
        let x = rng.uniform();
        norm2 += x * x;
        if norm2 > 1.0 {
            return None;
        }
    }
    Some(norm2)
}

/// Probability that a bounded kernel is non-zero, `h^2 / d`, under the
/// heuristic that `|z|^2` is uniform on `[0, d / h^2]`.
///
/// The uniformity assumption is only a rough approximation; the value is a
/// diagnostic for how rarely a compact-support kernel fires in high
/// dimension, not an exact probability.
pub fn kernel_support_probability<T: Scalar>(n: usize, d: usize) -> Result<T> {
    let h: T = bandwidth(n, d)?;
    Ok(h * h / T::from_usize_lossy(d))
}

impl<T: Scalar> KernelSpec<T> {
    pub fn gaussian(d: usize, h: T) -> Result<Self> {
        check(d, h)?;
        let s2 = T::from_usize_lossy(d) / T::lit(12.0);
        let dd = T::from_usize_lossy(d);
        let two_pi = T::lit(2.0) * T::PI();
        let norm = two_pi.powf(-dd / T::lit(2.0)) / s2.powf(dd / T::lit(2.0));
        Ok(Self {
            family: KernelFamily::Gaussian,
            d,
            h,
            s2,
            alpha: norm,
        })
    }

    pub fn epanechnikov_spherical(d: usize, h: T, rng: &mut SeededRng) -> Result<Self> {
        check(d, h)?;
        Ok(Self {
            family: KernelFamily::EpanechnikovSpherical,
            d,
            h,
            s2: T::from_usize_lossy(d) / T::lit(12.0),
            alpha: epanechnikov_alpha(d, rng),
        })
    }

    pub fn epanechnikov_product(d: usize, h: T) -> Result<Self> {
        check(d, h)?;
        Ok(Self {
            family: KernelFamily::EpanechnikovProduct,
            d,
            h,
            s2: T::from_usize_lossy(d) / T::lit(12.0),
            alpha: T::lit(0.75),
        })
    }

    /// Gaussian kernel with the default bandwidth for `(n, d)`.
    pub fn gaussian_for(n: usize, d: usize) -> Result<Self> {
        Self::gaussian(d, bandwidth(n, d)?)
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn bandwidth(&self) -> T {
        self.h
    }

    pub fn s2(&self) -> T {
        self.s2
    }

    /// Normalization constant: `alpha` for the Epanechnikov families, the
    /// Gaussian prefactor otherwise.
    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// Kernel value at a scaled offset `z`.
    pub fn eval(&self, z: &[T]) -> T {
        debug_assert_eq!(z.len(), self.d);
        match self.family {
            KernelFamily::Gaussian | KernelFamily::EpanechnikovSpherical => {
                let r2 = z.iter().fold(T::zero(), |acc, &x| acc + x * x);
                self.radial(r2)
            }
            KernelFamily::EpanechnikovProduct => {
                let mut prod = T::one();
                for &x in z {
                    let x2 = x * x;
                    if x2 > T::one() {
                        return T::zero();
                    }
                    prod = prod * self.alpha * (T::one() - x2);
                }
                prod
            }
        }
    }

    /// `K((a - b) / h)` without materializing the offset.
    pub fn eval_pair(&self, a: &[T], b: &[T]) -> T {
        let inv_h = T::one() / self.h;
        match self.family {
            KernelFamily::Gaussian | KernelFamily::EpanechnikovSpherical => {
                let r2 = a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| {
                    let z = (x - y) * inv_h;
                    acc + z * z
                });
                self.radial(r2)
            }
            KernelFamily::EpanechnikovProduct => {
                let mut prod = T::one();
                for (&x, &y) in a.iter().zip(b) {
                    let z = (x - y) * inv_h;
                    let z2 = z * z;
                    if z2 > T::one() {
                        return T::zero();
                    }
                    prod = prod * self.alpha * (T::one() - z2);
                }
                prod
            }
        }
    }

    #[inline]
    fn radial(&self, r2: T) -> T {
        match self.family {
            KernelFamily::Gaussian => self.alpha * (-r2 / (T::lit(2.0) * self.s2)).exp(),
            _ => {
                if r2 <= T::one() {
                    self.alpha * (T::one() - r2)
                } else {
                    T::zero()
                }
            }
        }
    }
}

fn check<T: Scalar>(d: usize, h: T) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    if !(h > T::zero()) || !h.is_finite() {
        return Err(Error::InvalidArgument(format!("bandwidth must be positive, got {h}")));
    }
    Ok(())
}
