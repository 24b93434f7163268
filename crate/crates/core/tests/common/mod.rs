//! Independent oracles shared by the integration tests. Nothing here calls
//! the closed forms or algorithms it is used to check.

#![allow(dead_code)]

use kldesign::{Design64, SeededRng};

fn mean_se(sum: f64, sum2: f64, samples: usize) -> (f64, f64) {
    let m = sum / samples as f64;
    let var = (sum2 / samples as f64 - m * m).max(0.0);
    (m, (var / samples as f64).sqrt())
}

/// Monte-Carlo estimate (mean, standard error) of the squared L2-star
/// discrepancy: the mean over uniform anchors `t` of
/// `(#{x_i <= t} / n - prod t_k)^2`.
pub fn mc_l2_star_sq(design: &Design64, samples: usize, rng: &mut SeededRng) -> (f64, f64) {
    let (n, d) = (design.n(), design.d());
    let mut t = vec![0.0; d];
    let (mut sum, mut sum2) = (0.0, 0.0);
    for _ in 0..samples {
        for c in t.iter_mut() {
            *c = rng.uniform();
        }
        let inside = design.rows().filter(|p| p.iter().zip(&t).all(|(x, tk)| x <= tk)).count();
        let vol: f64 = t.iter().product();
        let v = (inside as f64 / n as f64 - vol).powi(2);
        sum += v;
        sum2 += v * v;
    }
    mean_se(sum, sum2, samples)
}

/// Monte-Carlo estimate of the squared centered L2 discrepancy. For each
/// uniform `t` and each non-empty coordinate subset `u`, the box spans, along
/// the axes in `u`, from `t` to the nearest cube vertex; the squared local
/// discrepancies of all projections are summed.
pub fn mc_centered_l2_sq(design: &Design64, samples: usize, rng: &mut SeededRng) -> (f64, f64) {
    let (n, d) = (design.n(), design.d());
    let mut lo = vec![0.0; d];
    let mut hi = vec![0.0; d];
    let (mut sum, mut sum2) = (0.0, 0.0);
    for _ in 0..samples {
        for k in 0..d {
            let t = rng.uniform();
            if t < 0.5 {
                lo[k] = 0.0;
                hi[k] = t;
            } else {
                lo[k] = t;
                hi[k] = 1.0;
            }
        }
        let mut v = 0.0;
        for subset in 1u32..(1 << d) {
            let axes: Vec<usize> = (0..d).filter(|k| subset & (1 << k) != 0).collect();
            let inside = design
                .rows()
                .filter(|p| axes.iter().all(|&k| p[k] >= lo[k] && p[k] <= hi[k]))
                .count();
            let vol: f64 = axes.iter().map(|&k| hi[k] - lo[k]).product();
            v += (inside as f64 / n as f64 - vol).powi(2);
        }
        sum += v;
        sum2 += v * v;
    }
    mean_se(sum, sum2, samples)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    r
}

/// Minimum total weight over every spanning tree, by enumerating all
/// `(n-1)`-edge subsets of the complete graph.
pub fn exhaustive_mst_weight(design: &Design64) -> f64 {
    let n = design.n();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let w: f64 = design
                .point(i)
                .iter()
                .zip(design.point(j))
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            edges.push((i, j, w));
        }
    }
    let m = edges.len();
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        let mut weight = 0.0;
        let mut acyclic = true;
        for (e, &(i, j, w)) in edges.iter().enumerate() {
            if mask & (1 << e) != 0 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri == rj {
                    acyclic = false;
                    break;
                }
                parent[ri] = rj;
                weight += w;
            }
        }
        if acyclic {
            best = best.min(weight);
        }
    }
    best
}
