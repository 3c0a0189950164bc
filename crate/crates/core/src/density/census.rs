use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cache::{self, CachedCensus};
use crate::arith::{primes_up_to, RationalTrace};
use crate::error::{Error, Result};
use crate::partition::{classify_prime_detailed, PartitionClass};

/// Primes per parallel work unit.
const CHUNK: usize = 2048;

/// Number of primes in one class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub class: PartitionClass,
    pub count: u64,
}

/// Tally of the odd primes up to `limit` by class.
///
/// `Σ counts + excluded = total_odd_primes`; `counts` is sorted by class and
/// omits empty classes and denominator divisors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCensus {
    pub q: RationalTrace,
    pub limit: u64,
    pub counts: Vec<ClassCount>,
    pub excluded: u64,
    pub total_odd_primes: u64,
}

impl PartitionCensus {
    fn from_records(q: &RationalTrace, limit: u64, records: &[(u64, PartitionClass)]) -> Self {
        let mut counts: Vec<ClassCount> = Vec::new();
        let mut excluded = 0;
        let mut sorted: Vec<PartitionClass> = records.iter().map(|&(_, c)| c).collect();
        sorted.sort_unstable();
        for c in sorted {
            if c == PartitionClass::DenominatorDivisor {
                excluded += 1;
            } else if let Some(last) = counts.last_mut().filter(|l| l.class == c) {
                last.count += 1;
            } else {
                counts.push(ClassCount { class: c, count: 1 });
            }
        }
        PartitionCensus {
            q: q.clone(),
            limit,
            counts,
            excluded,
            total_odd_primes: records.len() as u64,
        }
    }

    pub fn count(&self, class: PartitionClass) -> u64 {
        if class == PartitionClass::DenominatorDivisor {
            return self.excluded;
        }
        self.counts
            .iter()
            .find(|c| c.class == class)
            .map_or(0, |c| c.count)
    }

    /// Primes that were classified: the density denominator.
    pub fn classified(&self) -> u64 {
        self.total_odd_primes - self.excluded
    }

    /// The largest occupied class index.
    pub fn max_index(&self) -> u32 {
        self.counts
            .iter()
            .filter_map(|c| c.class.index())
            .max()
            .unwrap_or(0)
    }
}

/// How a census used the on-disk cache.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CacheStatus {
    Disabled,
    Miss,
    /// Every prime came from the cache.
    Hit,
    /// Primes up to the given limit came from a smaller cache.
    Prefix(u64),
}

/// Census execution settings.
#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Cache directory; `None` disables caching.
    pub cache_dir: Option<PathBuf>,
}

impl CensusOptions {
    /// Caching in [`cache::default_cache_dir`].
    pub fn cached() -> Self {
        CensusOptions {
            threads: None,
            cache_dir: Some(cache::default_cache_dir()),
        }
    }
}

fn classify_all(q: &RationalTrace, primes: &[u64]) -> Result<Vec<(u64, PartitionClass)>> {
    let chunks: Vec<Result<Vec<(u64, PartitionClass)>>> = primes
        .par_chunks(CHUNK)
        .map(|chunk| {
            chunk
                .iter()
                .map(|&p| classify_prime_detailed(q, p).map(|c| (p, c.class)))
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(primes.len());
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

fn run_in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Classifies every odd prime up to `limit`, in parallel, without caching.
pub fn empirical_partition(q: &RationalTrace, limit: u64) -> Result<PartitionCensus> {
    Ok(empirical_partition_with(q, limit, &CensusOptions::default())?.0)
}

/// [`empirical_partition`] with explicit thread and cache settings. The
/// counts never depend on either.
pub fn empirical_partition_with(
    q: &RationalTrace,
    limit: u64,
    opts: &CensusOptions,
) -> Result<(PartitionCensus, CacheStatus)> {
    if limit < 3 {
        return Err(Error::InvalidArgument(format!(
            "census limit must be at least 3, got {limit}"
        )));
    }
    let cached = opts
        .cache_dir
        .as_deref()
        .and_then(|d| cache::load(d, q, limit));
    let (mut records, from, status) = match (&opts.cache_dir, cached) {
        (None, _) => (Vec::new(), 0, CacheStatus::Disabled),
        (Some(_), None) => (Vec::new(), 0, CacheStatus::Miss),
        (Some(_), Some(c)) if c.limit == limit => (c.records, limit, CacheStatus::Hit),
        (Some(_), Some(c)) => (c.records, c.limit, CacheStatus::Prefix(c.limit)),
    };
    if status != CacheStatus::Hit {
        let fresh: Vec<u64> = primes_up_to(limit)
            .into_iter()
            .filter(|&p| p > 2 && p > from)
            .collect();
        records.extend(run_in_pool(opts.threads, || classify_all(q, &fresh))??);
        if let Some(dir) = &opts.cache_dir {
            // A cache that cannot be written only costs time later.
            let _ = cache::store(
                dir,
                q,
                &CachedCensus {
                    limit,
                    records: records.clone(),
                },
            );
        }
    }
    Ok((PartitionCensus::from_records(q, limit, &records), status))
}
