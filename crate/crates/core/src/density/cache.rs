//! Binary classification cache.
//!
//! Layout: `b"CHEBPART"`, version byte, `u32` LE length and the canonical
//! trace string, `u64` LE limit, then 10-byte records
//! `(prime: u64 LE, tag: u8, s: u8)` in increasing prime order. Tags are
//! 0 = Pi0, 1 = Pi1, 2 = Pi(s), 3 = denominator divisor.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::arith::RationalTrace;
use crate::partition::PartitionClass;

const MAGIC: &[u8; 8] = b"CHEBPART";
const VERSION: u8 = 1;
const RECORD: usize = 10;

/// Where caches live: `CHEBPART_CACHE_DIR`, else `$XDG_CACHE_HOME/chebpart`,
/// else `$HOME/.cache/chebpart`, else the system temp directory.
pub fn default_cache_dir() -> PathBuf {
    let env = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
    if let Some(d) = env("CHEBPART_CACHE_DIR") {
        return d;
    }
    if let Some(d) = env("XDG_CACHE_HOME") {
        return d.join("chebpart");
    }
    if let Some(d) = env("HOME") {
        return d.join(".cache").join("chebpart");
    }
    std::env::temp_dir().join("chebpart")
}

/// Injective file-name form of a canonical trace: `-` becomes `m`, `/`
/// becomes `_`.
fn sanitize(q: &RationalTrace) -> String {
    q.to_string()
        .chars()
        .map(|ch| match ch {
            '-' => 'm',
            '/' => '_',
            c => c,
        })
        .collect()
}

pub fn cache_file_name(q: &RationalTrace, limit: u64) -> String {
    format!("{}_{limit}.chebpart", sanitize(q))
}

fn encode(c: PartitionClass) -> [u8; 2] {
    match c {
        PartitionClass::Pi0 => [0, 0],
        PartitionClass::Pi1 => [1, 1],
        PartitionClass::Pi(s) => [2, s.min(255) as u8],
        PartitionClass::DenominatorDivisor => [3, 0],
    }
}

fn decode(tag: u8, s: u8) -> Option<PartitionClass> {
    match (tag, s) {
        (0, _) => Some(PartitionClass::Pi0),
        (1, _) => Some(PartitionClass::Pi1),
        (2, s) if s >= 2 => Some(PartitionClass::Pi(s as u32)),
        (3, _) => Some(PartitionClass::DenominatorDivisor),
        _ => None,
    }
}

/// Classified odd primes up to `limit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CachedCensus {
    pub limit: u64,
    pub records: Vec<(u64, PartitionClass)>,
}

fn parse(bytes: &[u8], q: &str) -> Option<CachedCensus> {
    let rest = bytes.strip_prefix(MAGIC)?;
    let (&version, rest) = rest.split_first()?;
    if version != VERSION || rest.len() < 4 {
        return None;
    }
    let (len, rest) = rest.split_at(4);
    let len = u32::from_le_bytes(len.try_into().ok()?) as usize;
    if rest.len() < len + 8 || &rest[..len] != q.as_bytes() {
        return None;
    }
    let (limit, body) = rest[len..].split_at(8);
    let limit = u64::from_le_bytes(limit.try_into().ok()?);
    if body.len() % RECORD != 0 {
        return None;
    }
    let mut records = Vec::with_capacity(body.len() / RECORD);
    let mut last = 0u64;
    for rec in body.chunks_exact(RECORD) {
        let p = u64::from_le_bytes(rec[..8].try_into().ok()?);
        if p <= last || p > limit {
            return None;
        }
        last = p;
        records.push((p, decode(rec[8], rec[9])?));
    }
    Some(CachedCensus { limit, records })
}

/// Loads the best cache for `q` in `dir`: the exact `limit`, else the
/// smallest larger limit truncated to `limit`, else the largest smaller limit
/// as a reusable prefix. Unreadable or corrupt files are skipped.
pub fn load(dir: &Path, q: &RationalTrace, limit: u64) -> Option<CachedCensus> {
    let prefix = format!("{}_", sanitize(q));
    let mut limits: Vec<u64> = fs::read_dir(dir)
        .ok()?
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            let name = e.file_name().into_string().ok()?;
            name.strip_prefix(&prefix)?
                .strip_suffix(".chebpart")?
                .parse::<u64>()
                .ok()
        })
        .collect();
    limits.sort_by_key(|&l| match l.cmp(&limit) {
        std::cmp::Ordering::Equal => (0, 0),
        std::cmp::Ordering::Greater => (1, l - limit),
        std::cmp::Ordering::Less => (2, limit - l),
    });
    let canon = q.to_string();
    limits.into_iter().find_map(|l| {
        let bytes = fs::read(dir.join(cache_file_name(q, l))).ok()?;
        let mut c = parse(&bytes, &canon)?;
        if c.limit != l {
            return None;
        }
        if l > limit {
            c.records.retain(|&(p, _)| p <= limit);
            c.limit = limit;
        }
        Some(c)
    })
}

/// Writes through a temporary file and a rename, so readers never observe a
/// partial cache.
pub fn store(dir: &Path, q: &RationalTrace, census: &CachedCensus) -> io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let canon = q.to_string();
    let mut buf = Vec::with_capacity(21 + canon.len() + RECORD * census.records.len());
    buf.extend_from_slice(MAGIC);
    buf.push(VERSION);
    buf.extend_from_slice(&(canon.len() as u32).to_le_bytes());
    buf.extend_from_slice(canon.as_bytes());
    buf.extend_from_slice(&census.limit.to_le_bytes());
    for &(p, c) in &census.records {
        buf.extend_from_slice(&p.to_le_bytes());
        buf.extend_from_slice(&encode(c));
    }
    let target = dir.join(cache_file_name(q, census.limit));
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        cache_file_name(q, census.limit),
        std::process::id()
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&buf)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, &target)?;
    Ok(target)
}
