//! Bounded exhaustive enumeration of pairs and families, and verification
//! of the regular-pair inequalities, non-vanishing and the hypersurface
//! statements over everything inside the bounds.
//!
//! Every claim has a per-instance check (`*_instance`) and a bulk driver
//! (`verify_*`). The drivers prune with weight-level necessary conditions
//! before visiting degree tuples and then call the same judging code.
//! Findings are sorted by encoding, so reports do not depend on the
//! number of workers.

mod bounds;
mod enumerate;
mod report;

use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::arith::{frobenius, gcd, gcd_slice, is_prime, lcm, lcm_many};
use crate::error::{Error, Result};
use crate::hilbert::PoincareSeries;
use crate::notation;
use crate::pairs::{Pair, RegularityConstraints};
use crate::wci::{analyze, base_locus_unchecked, space_well_formed, WciFamily, WeightClasses};

pub use bounds::{instance_ceiling, multiset_count, Filters, SearchBounds, CEILING_ENV, DEFAULT_INSTANCE_CEILING};
pub use enumerate::{check_ceiling, enumerate, tuples_desc, Instance, InstanceKind};
pub use report::{Finding, VerifyReport};

use enumerate::{degree_tuples, weight_tuples};
use report::Tally;

pub const CLAIMS: [&str; 5] = [
    "conjecture_regular",
    "prop_regular",
    "lemma_qdiv",
    "nonvanishing",
    "hypersurface",
];

/// Findings of a single-instance check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub counterexamples: Vec<Finding>,
    pub equality_witnesses: Vec<Finding>,
}

impl Outcome {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn from_tally(t: Tally) -> Self {
        Outcome {
            counterexamples: t.counterexamples,
            equality_witnesses: t.witnesses,
        }
    }
}

fn pair_code(degrees: &[u64], weights: &[u64]) -> String {
    Pair::from_sorted(degrees.to_vec(), weights.to_vec()).to_string()
}

fn delta_of(degrees: &[u64], weights: &[u64]) -> i64 {
    degrees.iter().sum::<u64>() as i64 - weights.iter().sum::<u64>() as i64
}

fn shares_value(degrees: &[u64], weights: &[u64]) -> bool {
    degrees.iter().any(|d| weights.contains(d))
}

/// Runs `work` over items grouped by first weight, one group per task,
/// and merges the groups in order.
fn partitioned<T: Sync>(items: &[(Vec<u64>, T)], work: impl Fn(&[u64], &T, &mut Tally) + Sync) -> Tally {
    let mut groups: Vec<&[(Vec<u64>, T)]> = Vec::new();
    let mut rest = items;
    while let Some(first) = rest.first() {
        let lead = first.0.first().copied();
        let cut = rest
            .iter()
            .position(|(w, _)| w.first().copied() != lead)
            .unwrap_or(rest.len());
        groups.push(&rest[..cut]);
        rest = &rest[cut..];
    }
    let tallies: Vec<Tally> = groups
        .par_iter()
        .map(|group| {
            let mut t = Tally::default();
            for (w, extra) in group.iter() {
                work(w, extra, &mut t);
            }
            t
        })
        .collect();
    let mut total = tallies.into_iter().fold(Tally::default(), Tally::merge);
    let key = |f: &Finding| (f.instance.clone(), f.check.clone());
    total.counterexamples.sort_by_key(key);
    total.witnesses.sort_by_key(key);
    total
}

/// Weight tuples with their regularity constraints, dropping those whose
/// constraints need more degrees than `max_codim(len)` allows.
fn regular_candidates(
    tuples: Vec<Vec<u64>>,
    h: u64,
    max_codim: impl Fn(usize) -> usize,
) -> Vec<(Vec<u64>, RegularityConstraints)> {
    tuples
        .into_iter()
        .map(|w| (RegularityConstraints::new(&w, h), w))
        .filter(|(c, w)| c.max_required() <= max_codim(w.len()))
        .map(|(c, w)| (w, c))
        .collect()
}

fn codims_for<'a>(
    bounds: &'a SearchBounds,
    degrees: &'a [Vec<Vec<u64>>],
    from: usize,
    to: usize,
) -> impl Iterator<Item = &'a Vec<u64>> + 'a {
    bounds
        .codims()
        .filter(move |&c| c >= from && c <= to)
        .flat_map(move |c| degrees[c].iter())
}

fn estimate<T>(
    bounds: &SearchBounds,
    items: &[(Vec<u64>, T)],
    degrees: &[Vec<Vec<u64>>],
    range: impl Fn(&[u64], &T) -> (usize, usize),
) -> u128 {
    items
        .iter()
        .map(|(w, extra)| {
            let (from, to) = range(w, extra);
            bounds
                .codims()
                .filter(|&c| c >= from && c <= to)
                .map(|c| degrees[c].len() as u128)
                .sum::<u128>()
        })
        .sum()
}

// ---------------------------------------------------------------------
// δ ≥ G(a) for regular pairs

fn judge_conjecture(degrees: &[u64], weights: &[u64], g: i64, t: &mut Tally) {
    t.checked += 1;
    let delta = delta_of(degrees, weights);
    if delta < g {
        t.counterexamples.push(Finding::new(
            pair_code(degrees, weights),
            "delta_at_least_frobenius",
            &[("delta", delta), ("frobenius", g)],
        ));
    } else if delta == g {
        t.bump("equality");
    }
}

/// Regular pairs with a_i ≠ 1, no doubles, c ≤ n and gcd(a) = 1.
pub fn conjecture_instance(pair: &Pair) -> Option<Outcome> {
    let (d, a) = (pair.degrees(), pair.weights());
    if a.contains(&1) || pair.has_double() || d.len() >= a.len() || gcd_slice(a) != 1 || !pair.is_regular() {
        return None;
    }
    let mut t = Tally::default();
    judge_conjecture(d, a, frobenius(a).ok()?, &mut t);
    Some(Outcome::from_tally(t))
}

pub fn verify_conjecture_regular(bounds: &SearchBounds) -> Result<VerifyReport> {
    bounds.validate()?;
    let started = Instant::now();
    let tuples: Vec<Vec<u64>> = weight_tuples(bounds, bounds.min_weight.max(2), bounds.max_weight)
        .into_iter()
        .filter(|w| gcd_slice(w) == 1)
        .collect();
    let items = regular_candidates(tuples, 1, |len| bounds.max_codim.min(len - 1));
    let degrees = degree_tuples(bounds, bounds.min_degree, bounds.max_degree, 1);
    check_ceiling(estimate(bounds, &items, &degrees, |w, c| (c.max_required(), w.len() - 1)))?;
    let tally = partitioned(&items, |w, cons, t| {
        // memoized once per weight multiset
        let g = frobenius(w).expect("gcd one and no unit weights");
        for d in codims_for(bounds, &degrees, cons.max_required(), w.len() - 1) {
            if !shares_value(d, w) && cons.satisfied_by(d) {
                judge_conjecture(d, w, g, t);
            }
        }
    });
    Ok(tally.into_report("conjecture_regular", bounds, started))
}

// ---------------------------------------------------------------------
// δ ≥ c for regular pairs without unit weights, and the equality form

fn is_equality_form(degrees: &[u64], weights: &[u64]) -> bool {
    let s = degrees.iter().filter(|&&d| d == 6).count();
    s >= 1
        && degrees.iter().all(|&d| d == 6 || d == 1)
        && weights.len() == 2 * s
        && weights[..s].iter().all(|&a| a == 3)
        && weights[s..].iter().all(|&a| a == 2)
}

fn judge_prop_regular(degrees: &[u64], weights: &[u64], t: &mut Tally) {
    t.checked += 1;
    let c = degrees.len() as i64;
    let delta = delta_of(degrees, weights);
    if delta < c {
        t.counterexamples.push(Finding::new(
            pair_code(degrees, weights),
            "delta_at_least_codim",
            &[("delta", delta), ("codim", c)],
        ));
    } else if delta == c {
        if gcd_slice(weights) != 1 {
            t.bump("equality_gcd_above_one");
            return;
        }
        let s = degrees.iter().filter(|&&d| d == 6).count() as i64;
        let finding = Finding::new(
            pair_code(degrees, weights),
            "equality_form",
            &[("delta", delta), ("codim", c), ("s", s)],
        );
        if is_equality_form(degrees, weights) {
            t.witnesses.push(finding);
        } else {
            t.counterexamples.push(finding);
        }
    }
}

/// Regular pairs with every a_i > 1 and no doubles.
pub fn prop_regular_instance(pair: &Pair) -> Option<Outcome> {
    let (d, a) = (pair.degrees(), pair.weights());
    if a.contains(&1) || pair.has_double() || !pair.is_regular() {
        return None;
    }
    let mut t = Tally::default();
    judge_prop_regular(d, a, &mut t);
    Some(Outcome::from_tally(t))
}

pub fn verify_prop_regular(bounds: &SearchBounds) -> Result<VerifyReport> {
    bounds.validate()?;
    let started = Instant::now();
    let tuples = weight_tuples(bounds, bounds.min_weight.max(2), bounds.max_weight);
    let items = regular_candidates(tuples, 1, |_| bounds.max_codim);
    let degrees = degree_tuples(bounds, bounds.min_degree, bounds.max_degree, 1);
    let max_codim = bounds.max_codim;
    check_ceiling(estimate(bounds, &items, &degrees, |_, c| (c.max_required(), max_codim)))?;
    let tally = partitioned(&items, |w, cons, t| {
        for d in codims_for(bounds, &degrees, cons.max_required(), max_codim) {
            if !shares_value(d, w) && cons.satisfied_by(d) {
                judge_prop_regular(d, w, t);
            }
        }
    });
    Ok(tally.into_report("prop_regular", bounds, started))
}

// ---------------------------------------------------------------------
// δ ≥ cq when q divides every entry

fn judge_qdiv(degrees: &[u64], weights: &[u64], q: u64, t: &mut Tally) {
    t.checked += 1;
    let c = degrees.len() as i64;
    let delta = delta_of(degrees, weights);
    let bound = c * q as i64;
    let code = || pair_code(degrees, weights);
    if delta < bound {
        t.counterexamples.push(Finding::new(
            code(),
            "delta_at_least_cq",
            &[("delta", delta), ("cq", bound)],
        ));
    } else if delta == bound {
        // c = n + 1 is recorded on the witness
        let shape_holds = degrees.len() == weights.len();
        if !shape_holds {
            t.bump("equality_shape_violations");
        }
        t.witnesses.push(Finding::new(
            code(),
            "equality_shape",
            &[
                ("delta", delta),
                ("codim", c),
                ("vars", weights.len() as i64),
                ("shape_holds", shape_holds as i64),
            ],
        ));
    }
}

/// Regular pairs without doubles whose entries are all divisible by q.
pub fn qdiv_instance(pair: &Pair, q: u64) -> Result<Option<Outcome>> {
    if !is_prime(q) {
        return Err(Error::usage(format!("{q} is not prime")));
    }
    let (d, a) = (pair.degrees(), pair.weights());
    if d.iter().chain(a).any(|x| x % q != 0) || pair.has_double() || !pair.is_regular() {
        return Ok(None);
    }
    let mut t = Tally::default();
    judge_qdiv(d, a, q, &mut t);
    Ok(Some(Outcome::from_tally(t)))
}

pub fn verify_lemma_qdiv(bounds: &SearchBounds, q: u64) -> Result<VerifyReport> {
    if !is_prime(q) {
        return Err(Error::usage(format!("{q} is not prime")));
    }
    bounds.validate()?;
    let started = Instant::now();
    let tuples: Vec<Vec<u64>> = weight_tuples(bounds, bounds.min_weight.div_ceil(q), bounds.max_weight / q)
        .into_iter()
        .map(|w| w.into_iter().map(|v| v * q).collect())
        .collect();
    let items = regular_candidates(tuples, 1, |_| bounds.max_codim);
    let degrees = degree_tuples(bounds, bounds.min_degree, bounds.max_degree, q);
    let max_codim = bounds.max_codim;
    check_ceiling(estimate(bounds, &items, &degrees, |_, c| (c.max_required(), max_codim)))?;
    let tally = partitioned(&items, |w, cons, t| {
        for d in codims_for(bounds, &degrees, cons.max_required(), max_codim) {
            if !shares_value(d, w) && cons.satisfied_by(d) {
                judge_qdiv(d, w, q, t);
            }
        }
    });
    Ok(tally.into_report(&format!("lemma_qdiv_{q}"), bounds, started))
}

// ---------------------------------------------------------------------
// Non-vanishing on Fano and Calabi-Yau families

fn is_sextic_family(family: &WciFamily) -> bool {
    let c = family.codim();
    family.degrees().iter().all(|&d| d == 6)
        && family.weights().classes() == [(3, c), (2, c), (1, c)]
}

fn small(v: &num_bigint::BigInt) -> i64 {
    v.to_i64().unwrap_or(i64::MAX)
}

/// Geometric families with δ ≤ 0.
pub fn nonvanishing_instance(family: &WciFamily) -> Option<Outcome> {
    let mut t = Tally::default();
    judge_nonvanishing(family, &mut t);
    (t.checked > 0).then(|| Outcome::from_tally(t))
}

fn judge_nonvanishing(family: &WciFamily, t: &mut Tally) {
    let delta = family.canonical_degree();
    if delta > 0 || family.codim() == 0 {
        return;
    }
    let a = analyze(family);
    if !a.is_geometric() {
        return;
    }
    t.checked += 1;
    let code = || family.to_string();
    let h = a.fundamental_index.expect("geometric families have an index");
    let sections = PoincareSeries::for_family(family).coefficient(h).clone();
    if small(&sections) < 1 {
        t.counterexamples.push(Finding::new(
            code(),
            "sections_at_index",
            &[("index", h as i64), ("h0", small(&sections))],
        ));
    }
    if !family.pair().is_h_regular(h) {
        t.counterexamples
            .push(Finding::new(code(), "h_regular_at_index", &[("index", h as i64)]));
    }
    if a.smooth != Some(true) {
        return;
    }
    t.bump("smooth");
    let c = family.codim() as i64;
    let c1 = family.weights().unit_count() as i64;
    if c1 < c {
        t.counterexamples.push(Finding::new(
            code(),
            "units_at_least_codim",
            &[("c1", c1), ("codim", c)],
        ));
    } else if c1 == c {
        let finding = Finding::new(code(), "units_equal_codim", &[("c1", c1), ("codim", c)]);
        if is_sextic_family(family) {
            t.witnesses.push(finding);
        } else {
            t.counterexamples.push(finding);
        }
    }
    if c1 <= -delta {
        t.counterexamples.push(Finding::new(
            code(),
            "units_above_fano_index",
            &[("c1", c1), ("fano_index", -delta)],
        ));
    }
}

pub fn verify_nonvanishing(bounds: &SearchBounds) -> Result<VerifyReport> {
    bounds.validate()?;
    let started = Instant::now();
    let items: Vec<(Vec<u64>, ())> = weight_tuples(bounds, bounds.min_weight, bounds.max_weight)
        .into_iter()
        .filter(|w| w.len() >= 2 && ambient_well_formed(w))
        .map(|w| (w, ()))
        .collect();
    let degrees = degree_tuples(bounds, bounds.min_degree, bounds.max_degree, 1);
    check_ceiling(estimate(bounds, &items, &degrees, |w, _| (0, w.len() - 1)))?;
    let tally = partitioned(&items, |w, _, t| {
        let total: u64 = w.iter().sum();
        for d in codims_for(bounds, &degrees, 0, w.len() - 1) {
            if d.iter().sum::<u64>() > total || shares_value(d, w) {
                continue;
            }
            let family = WciFamily::new(d.clone(), w).expect("c ≤ n");
            judge_nonvanishing(&family, t);
        }
    });
    Ok(tally.into_report("nonvanishing", bounds, started))
}

fn ambient_well_formed(weights: &[u64]) -> bool {
    WeightClasses::from_weights(weights)
        .and_then(|w| space_well_formed(&w))
        .unwrap_or(false)
}

// ---------------------------------------------------------------------
// Hypersurfaces

/// The weight-tuple inequality f − Σa ≥ lcm(a_s, a_t) − a_s − a_t with
/// f = lcm(a), for tuples where no a_i divides lcm_{i≠j} gcd(a_i, a_j).
pub fn hyp_inequality_instance(weights: &[u64]) -> Option<Outcome> {
    let mut t = Tally::default();
    judge_hyp_inequality(weights, &mut t);
    (t.checked > 0).then(|| Outcome::from_tally(t))
}

fn judge_hyp_inequality(weights: &[u64], t: &mut Tally) {
    let n1 = weights.len();
    if n1 < 2 {
        return;
    }
    let mut h = 1;
    for i in 0..n1 {
        for j in i + 1..n1 {
            h = lcm(h, gcd(weights[i], weights[j]));
        }
    }
    if weights.iter().any(|&a| h % a == 0) {
        return;
    }
    t.checked += 1;
    t.bump("weight_tuples");
    let f = lcm_many(weights);
    let lhs = f as i64 - weights.iter().sum::<u64>() as i64;
    for s in 0..n1 {
        for u in s + 1..n1 {
            let (x, y) = (weights[s], weights[u]);
            let rhs = lcm(x, y) as i64 - x as i64 - y as i64;
            if lhs < rhs {
                t.counterexamples.push(Finding::new(
                    format!("{f} / {}", notation::encode_runs(weights)),
                    "lcm_inequality",
                    &[("lhs", lhs), ("rhs", rhs), ("a_s", x as i64), ("a_t", y as i64)],
                ));
            }
        }
    }
}

/// Geometric hypersurfaces: sections of every Cartier twist above δ up
/// to `max_twist`, and base-point freedom of K_X + mH for n ≤ m ≤ n + 2
/// when K_X is Cartier.
pub fn hypersurface_instance(family: &WciFamily, max_twist: u64) -> Option<Outcome> {
    let mut t = Tally::default();
    judge_hypersurface(family, max_twist, &mut t);
    (t.checked > 0).then(|| Outcome::from_tally(t))
}

fn judge_hypersurface(family: &WciFamily, max_twist: u64, t: &mut Tally) {
    if family.codim() != 1 {
        return;
    }
    let a = analyze(family);
    if !a.is_geometric() {
        return;
    }
    t.checked += 1;
    t.bump("families");
    let code = || family.to_string();
    let h = a.fundamental_index.expect("geometric families have an index");
    let delta = family.canonical_degree();
    let mut series = PoincareSeries::for_family(family);
    let start = (delta.max(0) as u64 / h + 1) * h;
    for twist in (start..=max_twist).step_by(h as usize) {
        t.bump("cartier_twists");
        let sections = small(series.coefficient(twist));
        if sections < 1 {
            t.counterexamples.push(Finding::new(
                code(),
                "cartier_sections",
                &[("twist", twist as i64), ("h0", sections)],
            ));
        }
    }
    if delta.rem_euclid(h as i64) != 0 {
        return;
    }
    t.bump("gorenstein");
    let n = family.ambient_dim() as i64;
    for m in n..=n + 2 {
        let ell = delta + m * h as i64;
        let components = match ell {
            l if l < 0 => -1,
            0 => 0,
            l => base_locus_unchecked(family, l as u64).len() as i64,
        };
        if components != 0 {
            t.counterexamples.push(Finding::new(
                code(),
                "adjoint_base_point_free",
                &[("m", m), ("twist", ell), ("components", components)],
            ));
        }
    }
}

pub fn verify_hypersurface(bounds: &SearchBounds) -> Result<VerifyReport> {
    bounds.validate()?;
    let started = Instant::now();
    let items: Vec<(Vec<u64>, ())> = weight_tuples(bounds, bounds.min_weight, bounds.max_weight)
        .into_iter()
        .filter(|w| w.len() >= 2)
        .map(|w| (w, ()))
        .collect();
    let degree_count = (bounds.min_degree..=bounds.max_degree).count() as u128;
    check_ceiling(items.len() as u128 * (degree_count + 1))?;
    let tally = partitioned(&items, |w, _, t| {
        judge_hyp_inequality(w, t);
        if !ambient_well_formed(w) {
            return;
        }
        for d in bounds.min_degree..=bounds.max_degree {
            if w.contains(&d) {
                continue;
            }
            let family = WciFamily::new(vec![d], w).expect("c ≤ n");
            judge_hypersurface(&family, bounds.max_degree, t);
        }
    });
    Ok(tally.into_report("hypersurface", bounds, started))
}
