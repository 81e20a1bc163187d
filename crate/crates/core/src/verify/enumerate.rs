use rayon::prelude::*;
use serde::Serialize;

use crate::arith::gcd_slice;
use crate::error::{Error, Result};
use crate::pairs::{Pair, RegularityConstraints};
use crate::wci::{analyze, WciFamily};

use super::bounds::{instance_ceiling, multiset_count, SearchBounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    Pairs,
    Families,
}

/// One enumerated pair or family with the predicates it satisfies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub encoding: String,
    pub annotations: Vec<&'static str>,
    #[serde(skip)]
    key: (Vec<u64>, Vec<u64>),
}

/// Non-increasing tuples of length `len` with entries in `lo..=hi`, in
/// lexicographic order.
pub fn tuples_desc(lo: u64, hi: u64, len: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fill_desc(lo, hi, len, &mut cur, &mut out);
    out
}

fn fill_desc(lo: u64, hi: u64, len: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    let top = cur.last().copied().unwrap_or(hi).min(hi);
    for v in lo..=top {
        cur.push(v);
        fill_desc(lo, v, len, cur, out);
        cur.pop();
    }
}

/// Refuses work estimated above the instance ceiling.
pub fn check_ceiling(estimated: u128) -> Result<()> {
    let ceiling = instance_ceiling();
    if estimated > ceiling {
        return Err(Error::CeilingExceeded { estimated, ceiling });
    }
    Ok(())
}

/// Weight tuples for every size in range, ordered by first entry so that
/// each entry value forms one contiguous partition.
pub(crate) fn weight_tuples(bounds: &SearchBounds, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    let mut all: Vec<Vec<u64>> = bounds
        .vars()
        .flat_map(|len| tuples_desc(lo, hi, len))
        .collect();
    all.sort();
    all
}

/// Degree tuples for each codimension in range, indexed by codimension.
pub(crate) fn degree_tuples(bounds: &SearchBounds, lo: u64, hi: u64, step: u64) -> Vec<Vec<Vec<u64>>> {
    (0..=bounds.max_codim)
        .map(|c| {
            if c < bounds.min_codim {
                Vec::new()
            } else {
                tuples_desc(lo, hi, c)
                    .into_iter()
                    .filter(|t| t.iter().all(|d| d % step == 0))
                    .collect()
            }
        })
        .collect()
}

pub fn enumerate(bounds: &SearchBounds, kind: InstanceKind) -> Result<Vec<Instance>> {
    bounds.validate()?;
    let f = &bounds.filters;
    if kind == InstanceKind::Pairs && (f.smooth || f.quasi_smooth || f.well_formed) {
        return Err(Error::usage("geometric filters apply to families only"));
    }
    let weight_values = bounds.max_weight.saturating_sub(bounds.min_weight - 1);
    let degree_values = bounds.max_degree.saturating_sub(bounds.min_degree - 1);
    let estimated: u128 = bounds
        .vars()
        .map(|len| {
            let degree_count: u128 = bounds
                .codims()
                .filter(|&c| kind == InstanceKind::Pairs || c < len)
                .map(|c| multiset_count(degree_values, c))
                .sum();
            multiset_count(weight_values, len) * degree_count
        })
        .sum();
    check_ceiling(estimated)?;

    let weights = weight_tuples(bounds, bounds.min_weight, bounds.max_weight);
    let degrees = degree_tuples(bounds, bounds.min_degree, bounds.max_degree, 1);
    let mut out: Vec<Instance> = weights
        .par_iter()
        .flat_map_iter(|w| {
            let degrees = &degrees;
            bounds
                .codims()
                .filter(move |&c| kind == InstanceKind::Pairs || c < w.len())
                .flat_map(move |c| degrees[c].iter())
                .filter_map(move |d| annotate(bounds, kind, d, w))
        })
        .collect();
    out.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(out)
}

fn annotate(bounds: &SearchBounds, kind: InstanceKind, degrees: &[u64], weights: &[u64]) -> Option<Instance> {
    let f = &bounds.filters;
    let mut notes = Vec::new();
    let gcd_one = gcd_slice(weights) == 1;
    if gcd_one {
        notes.push("gcd_one");
    } else if f.gcd_one_weights {
        return None;
    }
    let delta = degrees.iter().sum::<u64>() as i64 - weights.iter().sum::<u64>() as i64;
    let type_label = match delta {
        d if d < 0 => "fano",
        0 => "calabi_yau",
        _ => "general",
    };
    if (f.fano || f.calabi_yau)
        && !((f.fano && type_label == "fano") || (f.calabi_yau && type_label == "calabi_yau"))
    {
        return None;
    }
    let encoding = match kind {
        InstanceKind::Pairs => {
            let pair = Pair::new(degrees.to_vec(), weights.to_vec()).ok()?;
            if pair.has_double() {
                if f.exclude_linear_cones {
                    return None;
                }
                notes.push("has_double");
            }
            if RegularityConstraints::new(weights, 1).satisfied_by(degrees) {
                notes.push("regular");
            }
            notes.push(type_label);
            pair.to_string()
        }
        InstanceKind::Families => {
            let family = WciFamily::new(degrees.to_vec(), weights).ok()?;
            let a = analyze(&family);
            if a.linear_cone {
                if f.exclude_linear_cones {
                    return None;
                }
                notes.push("linear_cone");
            }
            if a.well_formed == Some(true) {
                notes.push("well_formed");
            } else if f.well_formed {
                return None;
            }
            if a.quasi_smooth == Some(true) {
                notes.push("quasi_smooth");
            } else if f.quasi_smooth {
                return None;
            }
            if a.smooth == Some(true) {
                notes.push("smooth");
            } else if f.smooth {
                return None;
            }
            notes.push(type_label);
            family.to_string()
        }
    };
    Some(Instance {
        encoding,
        annotations: notes,
        key: (weights.to_vec(), degrees.to_vec()),
    })
}
