use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{primes_up_to, RationalTrace};
use crate::error::{Error, Result};
use crate::partition::{
    cell_assignment, check_admissible, classify_prime, gamma_level, is_primitive, r_depth, Cell,
    PartitionClass,
};

/// Highest `s` tallied for `R_k ∩ Γ_{k-1+s}` and `(R_1 ∪ Z_1) ∩ Γ_s`.
pub const GAMMA_SPAN: u32 = 4;

/// The four cells of `R_{k-1}` at depth `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellLevel {
    pub k: u32,
    /// `|R_{k-1}|`.
    pub parent: u64,
    pub plus_only: u64,
    pub minus_only: u64,
    /// `|R_k|`.
    pub both: u64,
    /// `|Z_k|`.
    pub neither: u64,
}

impl CellLevel {
    /// `Ω_k^+ ∩ R_{k-1}` and `Ω_k^- ∩ R_{k-1}` both equal `R_k`.
    pub fn omega_sets_coincide(&self) -> bool {
        self.plus_only == 0 && self.minus_only == 0
    }
}

/// Per-prime cell data, merged in prime order.
#[derive(Clone, Copy, Debug)]
struct PrimeCells {
    depth: u32,
    /// The cell at depth `depth + 1`, when within range.
    exit: Option<Cell>,
    gamma: u32,
    class: PartitionClass,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellCensus {
    pub q0: RationalTrace,
    pub limit: u64,
    pub max_depth: u32,
    /// Odd primes not dividing the numerator or denominator of `q0^2 - 4`.
    pub admissible: u64,
    pub levels: Vec<CellLevel>,
    /// `r_gamma[k-1][s] = |R_k ∩ Γ_{k-1+s}|`.
    pub r_gamma: Vec<Vec<u64>>,
    /// `rz1_gamma[s] = |(R_1 ∪ Z_1) ∩ Γ_s|`.
    pub rz1_gamma: Vec<u64>,
    /// Cell-exit primes whose class contradicts the depth-`k` table; only
    /// counted for primitive `q0`.
    pub table_violations: u64,
}

impl CellCensus {
    pub fn fraction(&self, count: u64) -> f64 {
        count as f64 / self.admissible.max(1) as f64
    }

    pub fn level(&self, k: u32) -> Option<&CellLevel> {
        self.levels.get(k.checked_sub(1)? as usize)
    }
}

fn table_class_ok(cell: Cell, class: PartitionClass) -> bool {
    match cell {
        Cell::OmegaPlusOnly => class == PartitionClass::Pi0,
        Cell::OmegaMinusOnly => class == PartitionClass::Pi1,
        Cell::NeitherZ => class.is_star(),
        Cell::BothR => true,
    }
}

/// Cell counts for depths `1..=max_depth`, with the `Γ` intersections.
pub fn cell_census(q0: &RationalTrace, limit: u64, max_depth: u32) -> Result<CellCensus> {
    if max_depth == 0 {
        return Err(Error::InvalidArgument("cell census needs depth >= 1".to_string()));
    }
    let primes: Vec<u64> = primes_up_to(limit)
        .into_iter()
        .filter(|&p| p > 2 && check_admissible(q0, p).is_ok())
        .collect();
    let rows: Vec<Result<PrimeCells>> = primes
        .par_iter()
        .map(|&p| {
            let depth = r_depth(q0, p, max_depth)?;
            let exit = if depth < max_depth {
                Some(cell_assignment(q0, p, depth + 1)?.cell)
            } else {
                None
            };
            Ok(PrimeCells {
                depth,
                exit,
                gamma: gamma_level(p),
                class: classify_prime(q0, p),
            })
        })
        .collect();

    let primitive = is_primitive(q0);
    let span = GAMMA_SPAN as usize + 1;
    let mut levels: Vec<CellLevel> = (1..=max_depth)
        .map(|k| CellLevel {
            k,
            parent: 0,
            plus_only: 0,
            minus_only: 0,
            both: 0,
            neither: 0,
        })
        .collect();
    let mut r_gamma = vec![vec![0u64; span]; max_depth as usize];
    let mut rz1_gamma = vec![0u64; span];
    let mut table_violations = 0;
    for row in rows {
        let pc = row?;
        for k in 1..=pc.depth {
            let lv = &mut levels[k as usize - 1];
            lv.parent += 1;
            lv.both += 1;
            for s in 0..span as u32 {
                if pc.gamma >= k - 1 + s {
                    r_gamma[k as usize - 1][s as usize] += 1;
                }
            }
        }
        if let Some(cell) = pc.exit {
            let lv = &mut levels[pc.depth as usize];
            lv.parent += 1;
            match cell {
                Cell::OmegaPlusOnly => lv.plus_only += 1,
                Cell::OmegaMinusOnly => lv.minus_only += 1,
                Cell::NeitherZ => lv.neither += 1,
                Cell::BothR => {
                    return Err(Error::InvariantViolation(
                        "exit cell cannot be R_k".to_string(),
                    ))
                }
            }
            if primitive && !table_class_ok(cell, pc.class) {
                table_violations += 1;
            }
        }
        let in_rz1 = pc.depth >= 1 || pc.exit == Some(Cell::NeitherZ);
        if in_rz1 {
            for s in 0..span as u32 {
                if pc.gamma >= s {
                    rz1_gamma[s as usize] += 1;
                }
            }
        }
    }
    Ok(CellCensus {
        q0: q0.clone(),
        limit,
        max_depth,
        admissible: primes.len() as u64,
        levels,
        r_gamma,
        rz1_gamma,
        table_violations,
    })
}
