use serde::{Deserialize, Serialize};

use super::census::{empirical_partition_with, CacheStatus, CensusOptions, PartitionCensus};
use crate::arith::RationalTrace;
use crate::error::{Error, Result};
use crate::partition::PartitionClass;
use crate::traceclass::{theoretical_densities, DensityProfile};

/// Absolute per-class tolerance sized for a limit of `10^6`. Sampling error
/// shrinks like `limit^{-1/2}`, so smaller censuses need a looser bound.
pub const DEFAULT_TOLERANCE: f64 = 0.015;

/// One class: observed fraction against the exact density.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassDensity {
    pub class: PartitionClass,
    pub count: u64,
    pub empirical: RationalTrace,
    pub theoretical: RationalTrace,
    pub deviation: RationalTrace,
    pub empirical_f64: f64,
    pub theoretical_f64: f64,
    pub deviation_f64: f64,
    pub within_tolerance: bool,
}

/// `count(Π_{s+1}) / count(Π_s)`; `None` when `Π_s` is empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DyadicRatio {
    pub s: u32,
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub census: PartitionCensus,
    pub profile: DensityProfile,
    pub tolerance: f64,
    pub classes: Vec<ClassDensity>,
    /// Ratios for `s >= dyadic_from` while `Π_s` is observed.
    pub dyadic: Vec<DyadicRatio>,
}

impl DensityReport {
    /// Every listed class lies within tolerance.
    pub fn pass(&self) -> bool {
        self.classes.iter().all(|c| c.within_tolerance)
    }

    pub fn failures(&self) -> Vec<&ClassDensity> {
        self.classes.iter().filter(|c| !c.within_tolerance).collect()
    }

    pub fn class(&self, class: PartitionClass) -> Option<&ClassDensity> {
        self.classes.iter().find(|c| c.class == class)
    }

    /// The first `n` dyadic ratios.
    pub fn leading_ratios(&self, n: usize) -> Vec<Option<f64>> {
        self.dyadic.iter().take(n).map(|d| d.ratio).collect()
    }
}

/// Compares a finished census with the exact profile of its trace.
///
/// Rows cover `Π_0 … Π_{s*+2}` and any further occupied class.
pub fn compare_census(census: PartitionCensus, tolerance: f64) -> Result<DensityReport> {
    let profile = theoretical_densities(&census.q)?;
    let n = census.classified();
    if n == 0 {
        return Err(Error::InvalidArgument(format!(
            "no classified primes up to {}",
            census.limit
        )));
    }
    let total = RationalTrace::from_int(n);
    let top = census.max_index().max(profile.dyadic_from + 2);
    let classes = (0..=top)
        .map(|s| {
            let class = PartitionClass::from_index(s);
            let count = census.count(class);
            let empirical = RationalTrace::from_int(count) / &total;
            let theoretical = profile.d(s);
            let deviation = (&empirical - &theoretical).abs();
            let deviation_f64 = deviation.to_f64();
            ClassDensity {
                class,
                count,
                empirical_f64: empirical.to_f64(),
                theoretical_f64: theoretical.to_f64(),
                deviation_f64,
                within_tolerance: deviation_f64 <= tolerance,
                empirical,
                theoretical,
                deviation,
            }
        })
        .collect();
    let mut dyadic = Vec::new();
    let mut s = profile.dyadic_from;
    loop {
        let here = census.count(PartitionClass::Pi(s));
        if here == 0 {
            break;
        }
        let next = census.count(PartitionClass::Pi(s + 1));
        dyadic.push(DyadicRatio {
            s,
            ratio: Some(next as f64 / here as f64),
        });
        s += 1;
    }
    if dyadic.is_empty() {
        dyadic.push(DyadicRatio {
            s: profile.dyadic_from,
            ratio: None,
        });
    }
    Ok(DensityReport {
        census,
        profile,
        tolerance,
        classes,
        dyadic,
    })
}

/// Census of `q` up to `limit` compared against its exact densities.
pub fn compare(q: &RationalTrace, limit: u64, tolerance: f64) -> Result<DensityReport> {
    Ok(compare_with(q, limit, tolerance, &CensusOptions::default())?.0)
}

pub fn compare_with(
    q: &RationalTrace,
    limit: u64,
    tolerance: f64,
    opts: &CensusOptions,
) -> Result<(DensityReport, CacheStatus)> {
    // Fail on a trivial trace before paying for the census.
    theoretical_densities(q)?;
    let (census, status) = empirical_partition_with(q, limit, opts)?;
    Ok((compare_census(census, tolerance)?, status))
}
