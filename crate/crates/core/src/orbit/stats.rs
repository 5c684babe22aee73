use alloc::vec::Vec;

use super::tree::{walk_subtree, Alphabet};
use super::{edge_count, nonempty, subtree_roots, Budget, Letter};
use crate::config::{validate, CircleSystem};
use crate::math::log;
use crate::{Error, Result};

/// Default diameter below which the last profile row counts as small.
pub const DEFAULT_PLAUSIBILITY_THRESHOLD: f64 = 1e-2;

/// Per-depth spherical-diameter aggregates of translated circles.
///
/// Index `m - 1` holds depth `m`. `large` counts diameters above `threshold`.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthStats {
    pub threshold: f64,
    pub count: Vec<u64>,
    pub large: Vec<u64>,
    pub max: Vec<f64>,
    pub sum: Vec<f64>,
}

impl DepthStats {
    pub fn empty(depth: usize, threshold: f64) -> Self {
        DepthStats {
            threshold,
            count: alloc::vec![0; depth],
            large: alloc::vec![0; depth],
            max: alloc::vec![0.0; depth],
            sum: alloc::vec![0.0; depth],
        }
    }

    pub fn depth(&self) -> usize {
        self.count.len()
    }

    fn record(&mut self, m: usize, diameter: f64) {
        let i = m - 1;
        self.count[i] += 1;
        self.sum[i] += diameter;
        if diameter > self.max[i] {
            self.max[i] = diameter;
        }
        if diameter > self.threshold {
            self.large[i] += 1;
        }
    }

    /// Folds `other` in; merging subtrees in alphabet order is deterministic.
    pub fn merge(&mut self, other: &DepthStats) {
        for i in 0..self.depth().min(other.depth()) {
            self.count[i] += other.count[i];
            self.large[i] += other.large[i];
            self.sum[i] += other.sum[i];
            if other.max[i] > self.max[i] {
                self.max[i] = other.max[i];
            }
        }
    }

    /// Aggregates over the subtree below `first`.
    pub fn subtree(sys: &CircleSystem, first: Letter, depth: usize, threshold: f64) -> Self {
        let alphabet = Alphabet::new(sys);
        let mut stats = DepthStats::empty(depth, threshold);
        walk_subtree(&alphabet, first, depth, &mut |e| {
            stats.record(e.letters.len(), e.circle.spherical_diameter());
        });
        stats
    }

    /// Aggregates over the whole ball, subtree by subtree.
    pub fn collect(sys: &CircleSystem, depth: usize, threshold: f64, budget: Budget) -> Result<Self> {
        nonempty(sys)?;
        budget.check(edge_count(sys.rank(), depth))?;
        let mut total = DepthStats::empty(depth, threshold);
        for s in subtree_roots(sys) {
            total.merge(&DepthStats::subtree(sys, s, depth, threshold));
        }
        Ok(total)
    }

    pub fn rows(&self) -> Vec<DepthRow> {
        (0..self.depth())
            .map(|i| DepthRow {
                depth: i + 1,
                count: self.count[i],
                max_diam: self.max[i],
                mean_diam: if self.count[i] == 0 {
                    0.0
                } else {
                    self.sum[i] / self.count[i] as f64
                },
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepthRow {
    pub depth: usize,
    pub count: u64,
    pub max_diam: f64,
    pub mean_diam: f64,
}

/// Heuristic reading of a diameter profile. Finite data cannot show that
/// diameters tend to zero, so `heuristic` is always set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileVerdict {
    pub fundamental_domain_plausible: bool,
    pub heuristic: bool,
    pub threshold: f64,
    /// Max diameter strictly decreasing over the last three depths.
    pub decreasing_tail: bool,
    pub final_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiameterProfile {
    pub rows: Vec<DepthRow>,
    pub verdict: ProfileVerdict,
}

impl DiameterProfile {
    pub fn from_stats(stats: &DepthStats, threshold: f64) -> Self {
        let rows = stats.rows();
        let n = rows.len();
        let decreasing_tail =
            n >= 3 && rows[n - 3].max_diam > rows[n - 2].max_diam && rows[n - 2].max_diam > rows[n - 1].max_diam;
        let final_max = rows.last().map_or(f64::NAN, |r| r.max_diam);
        DiameterProfile {
            verdict: ProfileVerdict {
                fundamental_domain_plausible: decreasing_tail && final_max < threshold,
                heuristic: true,
                threshold,
                decreasing_tail,
                final_max,
            },
            rows,
        }
    }

    /// Least-squares slope of `ln(max_diam)` against depth, if at least two
    /// rows have positive maxima.
    pub fn decay_rate(&self) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter(|r| r.max_diam > 0.0)
            .map(|r| (r.depth as f64, log(r.max_diam)))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        Some(sxy / sxx)
    }
}

/// Max and mean spherical diameter of the translated circles at each depth
/// `1..=depth`, with the heuristic fundamental-domain verdict.
pub fn diameter_profile(
    sys: &CircleSystem,
    depth: usize,
    threshold: f64,
    budget: Budget,
) -> Result<DiameterProfile> {
    let stats = DepthStats::collect(sys, depth, threshold, budget)?;
    Ok(DiameterProfile::from_stats(&stats, threshold))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CensusRow {
    pub depth: usize,
    /// Circles at this depth with spherical diameter above the threshold.
    pub count: u64,
    pub total: u64,
    pub cumulative: u64,
    pub max_diam: f64,
    pub mean_diam: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Census {
    pub threshold: f64,
    pub rows: Vec<CensusRow>,
    /// First depth from which the cumulative count no longer changes, when
    /// the last two depths agree.
    pub plateau_depth: Option<usize>,
}

impl Census {
    pub fn from_stats(stats: &DepthStats) -> Self {
        let mut cumulative = 0;
        let rows: Vec<CensusRow> = stats
            .rows()
            .into_iter()
            .zip(&stats.large)
            .map(|(r, &large)| {
                cumulative += large;
                CensusRow {
                    depth: r.depth,
                    count: large,
                    total: r.count,
                    cumulative,
                    max_diam: r.max_diam,
                    mean_diam: r.mean_diam,
                }
            })
            .collect();
        let n = rows.len();
        let plateau_depth = if n >= 2 && rows[n - 1].cumulative == rows[n - 2].cumulative {
            let last = rows[n - 1].cumulative;
            rows.iter().position(|r| r.cumulative == last).map(|i| rows[i].depth)
        } else {
            None
        };
        Census {
            threshold: stats.threshold,
            rows,
            plateau_depth,
        }
    }
}

/// Counts of translated circles with spherical diameter above `m`, per depth
/// and cumulatively.
pub fn census_large(sys: &CircleSystem, depth: usize, m: f64, budget: Budget) -> Result<Census> {
    if !(m > 0.0) {
        return Err(Error::BadParameter("census threshold must be positive"));
    }
    let stats = DepthStats::collect(sys, depth, m, budget)?;
    Ok(Census::from_stats(&stats))
}

/// Smallest hyperbolic distance between the planes spanned by two distinct
/// configuration circles.
pub fn min_plane_distance(sys: &CircleSystem) -> Result<f64> {
    let report = validate(sys);
    if !report.admissible {
        return Err(Error::NotAdmissible);
    }
    Ok(report.min_plane_distance)
}
