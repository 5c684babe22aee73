//! Parallel versions of the orbit enumerations.
//!
//! Each subtree of the Cayley tree is processed on its own task and the
//! results are merged in alphabet order, so output is identical to the
//! sequential library functions whatever the thread count.

use rayon::prelude::*;
use schottky_core::config::CircleSystem;
use schottky_core::moebius::SpherePoint;
use schottky_core::orbit::{
    edge_count, limit_set_subtree, maximal_chains_subtree, merge_translated, sphere_size,
    subtree_roots, translated_circles_subtree, Budget, Census, DepthStats, DiameterProfile,
    NestedChain, TranslatedCircle,
};
use schottky_core::{Error, Result};

fn nonempty(sys: &CircleSystem) -> Result<()> {
    if sys.is_empty() {
        return Err(Error::BadParameter("configuration has no circle pairs"));
    }
    Ok(())
}

pub fn translated_circles(sys: &CircleSystem, depth: usize, budget: Budget) -> Result<Vec<TranslatedCircle>> {
    nonempty(sys)?;
    budget.check(edge_count(sys.rank(), depth))?;
    let parts = subtree_roots(sys)
        .par_iter()
        .map(|&s| translated_circles_subtree(sys, s, depth))
        .collect();
    Ok(merge_translated(parts))
}

pub fn maximal_chains(sys: &CircleSystem, depth: usize, budget: Budget) -> Result<Vec<NestedChain>> {
    nonempty(sys)?;
    if depth == 0 {
        return Ok(Vec::new());
    }
    budget.check(sphere_size(sys.rank(), depth).saturating_mul(depth as u64))?;
    let parts: Vec<Vec<NestedChain>> = subtree_roots(sys)
        .par_iter()
        .map(|&s| maximal_chains_subtree(sys, s, depth))
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

pub fn limit_set_sample(sys: &CircleSystem, depth: usize, budget: Budget) -> Result<Vec<SpherePoint>> {
    nonempty(sys)?;
    if depth == 0 {
        return Ok(Vec::new());
    }
    budget.check(sphere_size(sys.rank(), depth))?;
    let parts: Vec<Vec<SpherePoint>> = subtree_roots(sys)
        .par_iter()
        .map(|&s| limit_set_subtree(sys, s, depth))
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

pub fn depth_stats(sys: &CircleSystem, depth: usize, threshold: f64, budget: Budget) -> Result<DepthStats> {
    nonempty(sys)?;
    budget.check(edge_count(sys.rank(), depth))?;
    let parts: Vec<DepthStats> = subtree_roots(sys)
        .par_iter()
        .map(|&s| DepthStats::subtree(sys, s, depth, threshold))
        .collect();
    let mut total = DepthStats::empty(depth, threshold);
    for p in &parts {
        total.merge(p);
    }
    Ok(total)
}

pub fn diameter_profile(sys: &CircleSystem, depth: usize, threshold: f64, budget: Budget) -> Result<DiameterProfile> {
    let stats = depth_stats(sys, depth, threshold, budget)?;
    Ok(DiameterProfile::from_stats(&stats, threshold))
}

pub fn census_large(sys: &CircleSystem, depth: usize, m: f64, budget: Budget) -> Result<Census> {
    if !(m > 0.0) {
        return Err(Error::BadParameter("census threshold must be positive"));
    }
    Ok(Census::from_stats(&depth_stats(sys, depth, m, budget)?))
}
