//! Design-quality criteria: coverage, maximin distance, L2-star and centered
//! L2 discrepancies, and minimum-spanning-tree edge statistics.

use serde::{Deserialize, Serialize};

use crate::design::Design;
use crate::entropy::DistanceState;
use crate::error::{Error, Result};
use crate::scalar::{distance, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriteriaReport<T> {
    pub cov: T,
    pub mindist: T,
    pub dl2: T,
    pub dc2: T,
    pub mst_mean: T,
    pub mst_std: T,
}

impl<T: Scalar> CriteriaReport<T> {
    pub const CSV_HEADER: &'static str = "cov,mindist,dl2,dc2,mst_mean,mst_std";

    pub fn to_csv_row(&self) -> String {
        self.values()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn values(&self) -> [T; 6] {
        [self.cov, self.mindist, self.dl2, self.dc2, self.mst_mean, self.mst_std]
    }
}

fn need_two<T: Scalar>(design: &Design<T>) -> Result<()> {
    if design.n() < 2 {
        return Err(Error::InvalidArgument("criterion needs at least two points".into()));
    }
    Ok(())
}

fn mean_and_population_std<T: Scalar>(xs: &[T]) -> (T, T) {
    let len = T::from_usize_lossy(xs.len());
    let mean = xs.iter().copied().sum::<T>() / len;
    let var = xs.iter().map(|&x| (x - mean) * (x - mean)).sum::<T>() / len;
    (mean, var.sqrt())
}

/// Coefficient of variation of the nearest-neighbor distances
/// (population standard deviation over mean). Zero on a regular grid.
pub fn coverage<T: Scalar>(design: &Design<T>) -> Result<T> {
    need_two(design)?;
    let state = DistanceState::new(design)?;
    let (mean, sd) = mean_and_population_std(state.rho());
    if !(mean > T::zero()) {
        return Err(Error::DegenerateDesign(
            "all points coincide; coverage is undefined".into(),
        ));
    }
    Ok(sd / mean)
}

/// Smallest pairwise Euclidean distance.
pub fn mindist<T: Scalar>(design: &Design<T>) -> Result<T> {
    need_two(design)?;
    let n = design.n();
    let mut best = T::infinity();
    for i in 0..n {
        for j in i + 1..n {
            best = best.min(distance(design.point(i), design.point(j)));
        }
    }
    Ok(best)
}

/// L2-star discrepancy (anchored at the origin), closed form.
pub fn discrepancy_l2<T: Scalar>(design: &Design<T>) -> T {
    let n = T::from_usize_lossy(design.n());
    let d = design.d() as i32;
    let one = T::one();
    let two = T::lit(2.0);
    let first = T::lit(3.0).powi(-d);
    let single: T = design
        .rows()
        .map(|p| p.iter().fold(one, |acc, &x| acc * (one - x * x)))
        .sum();
    let mut pair = T::zero();
    for a in design.rows() {
        for b in design.rows() {
            pair = pair + a.iter().zip(b).fold(one, |acc, (&x, &y)| acc * (one - x.max(y)));
        }
    }
    let sq = first - two.powi(1 - d) / n * single + pair / (n * n);
    sq.max(T::zero()).sqrt()
}

/// Centered L2 discrepancy, closed form.
pub fn discrepancy_centered_l2<T: Scalar>(design: &Design<T>) -> T {
    let n = T::from_usize_lossy(design.n());
    let d = design.d() as i32;
    let one = T::one();
    let half = T::lit(0.5);
    let first = T::lit(13.0 / 12.0).powi(d);
    let single: T = design
        .rows()
        .map(|p| {
            p.iter().fold(one, |acc, &x| {
                let c = (x - half).abs();
                acc * (one + half * c - half * c * c)
            })
        })
        .sum();
    let mut pair = T::zero();
    for a in design.rows() {
        for b in design.rows() {
            pair = pair
                + a.iter().zip(b).fold(one, |acc, (&x, &y)| {
                    acc * (one + half * (x - half).abs() + half * (y - half).abs() - half * (x - y).abs())
                });
        }
    }
    let sq = first - T::lit(2.0) / n * single + pair / (n * n);
    sq.max(T::zero()).sqrt()
}

/// Edges `(i, j, length)` of the Euclidean minimum spanning tree, in the
/// order Prim's algorithm adds them. Quadratic, no priority queue; ties go to
/// the smaller vertex index.
pub fn minimum_spanning_tree<T: Scalar>(design: &Design<T>) -> Vec<(usize, usize, T)> {
    let n = design.n();
    let mut in_tree = vec![false; n];
    let mut best = vec![T::infinity(); n];
    let mut parent = vec![0usize; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    in_tree[0] = true;
    for j in 1..n {
        best[j] = distance(design.point(0), design.point(j));
    }
    for _ in 1..n {
        let mut next = usize::MAX;
        for j in 0..n {
            if !in_tree[j] && (next == usize::MAX || best[j] < best[next]) {
                next = j;
            }
        }
        in_tree[next] = true;
        edges.push((parent[next].min(next), parent[next].max(next), best[next]));
        for j in 0..n {
            if !in_tree[j] {
                let r = distance(design.point(next), design.point(j));
                if r < best[j] {
                    best[j] = r;
                    parent[j] = next;
                }
            }
        }
    }
    edges
}

/// Mean and population standard deviation of the MST edge lengths.
pub fn mst_stats<T: Scalar>(design: &Design<T>) -> Result<(T, T)> {
    need_two(design)?;
    let lengths: Vec<T> = minimum_spanning_tree(design).into_iter().map(|e| e.2).collect();
    Ok(mean_and_population_std(&lengths))
}

pub fn evaluate_all<T: Scalar>(design: &Design<T>) -> Result<CriteriaReport<T>> {
    let (mst_mean, mst_std) = mst_stats(design)?;
    Ok(CriteriaReport {
        cov: coverage(design)?,
        mindist: mindist(design)?,
        dl2: discrepancy_l2(design),
        dc2: discrepancy_centered_l2(design),
        mst_mean,
        mst_std,
    })
}
