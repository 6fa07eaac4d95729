//! Threaded census. Work is split into index ranges (or element chunks for
//! the bitmap) and merged in range order, so the result does not depend on
//! the thread count.

use std::thread;

use stabforge_core::census::{
    g0_elements, split_range, structure_census_range, CensusMode, CensusTable, HitBitmap,
};
use stabforge_core::{Error, Limits, PermGroup, Result};

pub fn hit_bitmap(g: &PermGroup, limits: &Limits, threads: usize) -> Result<HitBitmap> {
    let elements = g0_elements(g, limits)?;
    let mut bitmap = HitBitmap::new(g.degree())?;
    let chunk = elements.len().div_ceil(threads.max(1)).max(1);
    let parts: Vec<Result<HitBitmap>> = thread::scope(|s| {
        let handles: Vec<_> = elements
            .chunks(chunk)
            .map(|xs| {
                s.spawn(move || {
                    let mut part = HitBitmap::new(g.degree())?;
                    for x in xs {
                        part.mark_element(x);
                    }
                    Ok(part)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("bitmap worker panicked"))
            .collect()
    });
    for part in parts {
        bitmap.merge(&part?);
    }
    Ok(bitmap)
}

pub fn census(
    g: &PermGroup,
    mode: CensusMode,
    hits: Option<&HitBitmap>,
    threads: usize,
) -> Result<CensusTable> {
    let len = match mode {
        CensusMode::Exhaustive => {
            if g.degree() >= 64 {
                return Err(Error::DegreeCapExceeded {
                    degree: g.degree(),
                    cap: 63,
                });
            }
            1u64 << g.degree()
        }
        CensusMode::Sample { count, .. } => count,
    };
    let mut table = CensusTable::empty(g.degree(), mode, hits.is_some());
    let parts: Vec<Result<CensusTable>> = thread::scope(|s| {
        let handles: Vec<_> = split_range(len, threads)
            .into_iter()
            .map(|r| s.spawn(move || structure_census_range(g, mode, r, hits)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    });
    if parts.is_empty() {
        // zero-length sample: still validate the mode against the caps
        structure_census_range(g, mode, 0..0, hits)?;
    }
    for part in parts {
        table.merge(&part?);
    }
    Ok(table)
}
