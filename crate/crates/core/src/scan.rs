//! Conjecture checks over every sorted chain within a size box.

use serde_json::{json, Value};

use crate::caps::Options;
use crate::error::{Error, Result};
use crate::exec;
use crate::field::Characteristic;
use crate::grid::{GridShape, WindowChain};
use crate::groebner::{conjecture_check, ConjectureVerdict};
use crate::verify::sorted_chains_up_to;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanBounds {
    pub max_rows: usize,
    pub max_cols: usize,
    pub max_factors: usize,
    pub char: Characteristic,
}

/// One scanned instance: a verdict, or the error that stopped it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanOutcome {
    Verdict(ConjectureVerdict),
    Failed {
        shape: GridShape,
        chain: WindowChain,
        error: Error,
    },
}

impl ScanOutcome {
    pub fn to_json(&self) -> Value {
        match self {
            ScanOutcome::Verdict(v) => serde_json::to_value(v).expect("verdicts serialize"),
            ScanOutcome::Failed {
                shape,
                chain,
                error,
            } => json!({
                "shape": shape,
                "chain": chain.windows().iter().map(|w| [w.k(), w.l()]).collect::<Vec<_>>(),
                "error": error.to_string(),
            }),
        }
    }

    pub fn verdict(&self) -> Option<&ConjectureVerdict> {
        match self {
            ScanOutcome::Verdict(v) => Some(v),
            ScanOutcome::Failed { .. } => None,
        }
    }
}

/// Every sorted chain with `1..=max_factors` windows on every grid within the
/// bounds, in enumeration order.
pub fn scan_instances(bounds: &ScanBounds) -> Vec<(GridShape, WindowChain)> {
    (1..=bounds.max_factors)
        .flat_map(|s| sorted_chains_up_to(bounds.max_rows, bounds.max_cols, s))
        .collect()
}

/// Runs the conjecture check on every instance. Instances run concurrently
/// under the parallel strategy; the output order is always enumeration order.
pub fn conjecture_scan(bounds: &ScanBounds, opts: &Options) -> Result<Vec<ScanOutcome>> {
    let caps = &opts.caps;
    if bounds.max_rows > caps.conjecture_max_rows
        || bounds.max_cols > caps.conjecture_max_cols
        || bounds.max_factors > caps.conjecture_max_factors
    {
        return Err(Error::Resource(format!(
            "scan bounds {}x{} with {} factors exceed the caps {}x{} with {}",
            bounds.max_rows,
            bounds.max_cols,
            bounds.max_factors,
            caps.conjecture_max_rows,
            caps.conjecture_max_cols,
            caps.conjecture_max_factors
        )));
    }
    let instances = scan_instances(bounds);
    Ok(exec::map(
        opts.exec,
        &instances,
        |(shape, chain)| match conjecture_check(*shape, chain, bounds.char, opts) {
            Ok(v) => ScanOutcome::Verdict(v),
            Err(error) => ScanOutcome::Failed {
                shape: *shape,
                chain: chain.clone(),
                error,
            },
        },
    ))
}
