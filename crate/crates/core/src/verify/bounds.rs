use serde::Serialize;

use crate::error::{Error, Result};

/// Default refusal threshold for enumeration work.
pub const DEFAULT_INSTANCE_CEILING: u128 = 100_000_000;

/// Environment variable overriding [`DEFAULT_INSTANCE_CEILING`].
pub const CEILING_ENV: &str = "WCI_INSTANCE_CEILING";

/// Inclusive ranges for the shape and entries of enumerated tuples. A
/// range with min > max is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub min_codim: usize,
    pub max_codim: usize,
    /// Number of weights, n + 1.
    pub min_vars: usize,
    pub max_vars: usize,
    pub min_weight: u64,
    pub max_weight: u64,
    pub min_degree: u64,
    pub max_degree: u64,
    pub filters: Filters,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Filters {
    /// With both `fano` and `calabi_yau` set, either type is accepted.
    pub fano: bool,
    pub calabi_yau: bool,
    pub smooth: bool,
    pub quasi_smooth: bool,
    pub well_formed: bool,
    pub exclude_linear_cones: bool,
    pub gcd_one_weights: bool,
}

impl SearchBounds {
    /// c ≤ max_codim, n + 1 ≤ max_vars, weights ≤ max_weight and degrees
    /// ≤ max_degree; all minima 1.
    pub fn new(max_codim: usize, max_vars: usize, max_weight: u64, max_degree: u64) -> Self {
        SearchBounds {
            min_codim: 1,
            max_codim,
            min_vars: 1,
            max_vars,
            min_weight: 1,
            max_weight,
            min_degree: 1,
            max_degree,
            filters: Filters::default(),
        }
    }

    pub fn with_filters(mut self, filters: Filters) -> Self {
        self.filters = filters;
        self
    }

    pub fn codims(&self) -> std::ops::RangeInclusive<usize> {
        self.min_codim..=self.max_codim
    }

    pub fn vars(&self) -> std::ops::RangeInclusive<usize> {
        self.min_vars..=self.max_vars
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_weight == 0 || self.min_degree == 0 {
            return Err(Error::usage("weights and degrees start at 1"));
        }
        if self.max_weight > 1 << 20 || self.max_degree > 1 << 20 {
            return Err(Error::usage("entry bounds above 2^20 are not supported"));
        }
        if self.max_vars > 64 || self.max_codim > 64 {
            return Err(Error::usage("tuple lengths above 64 are not supported"));
        }
        Ok(())
    }
}

/// Ceiling from the environment, else the default.
pub fn instance_ceiling() -> u128 {
    std::env::var(CEILING_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_INSTANCE_CEILING)
}

/// Number of non-increasing tuples of length `len` over `values` distinct
/// values: C(values + len − 1, len).
pub fn multiset_count(values: u64, len: usize) -> u128 {
    if len == 0 {
        return 1;
    }
    if values == 0 {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..len as u128 {
        acc = acc * (values as u128 + i) / (i + 1);
    }
    acc
}
