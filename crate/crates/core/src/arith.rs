//! Exact integer arithmetic: gcd/lcm, trial-division factorization,
//! numerical semigroup membership and representation counts, Frobenius
//! numbers and Brauer's upper bound.

use bitvec::prelude::*;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest integer `factorize` accepts unless a custom ceiling is given.
pub const DEFAULT_FACTOR_CEILING: u64 = 1_000_000;

/// Orderings tried exhaustively by [`brauer_bound_min`].
pub const BRAUER_MIN_MAX_LEN: usize = 8;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn gcd_many(values: &[u64]) -> Result<u64> {
    if values.is_empty() {
        return Err(Error::usage("gcd of an empty list"));
    }
    Ok(gcd_slice(values))
}

/// Gcd of a possibly empty slice; the empty gcd is 0.
pub(crate) fn gcd_slice(values: &[u64]) -> u64 {
    values.iter().fold(0, |acc, &v| gcd(acc, v))
}

pub fn lcm_many(values: &[u64]) -> u64 {
    values.iter().fold(1, |acc, &v| lcm(acc, v))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut p = 3;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    factorize_with_ceiling(n, DEFAULT_FACTOR_CEILING)
}

/// Prime factorization by trial division, ascending by prime.
pub fn factorize_with_ceiling(n: u64, ceiling: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::usage("cannot factorize 0"));
    }
    if n > ceiling {
        return Err(Error::usage(format!(
            "{n} exceeds the factorization ceiling {ceiling}"
        )));
    }
    let mut out = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    Ok(out)
}

/// Membership (and optionally representation counts) of the numerical
/// semigroup generated by `generators`, tabulated over `0..=bound`.
#[derive(Debug, Clone)]
pub struct SemigroupTable {
    generators: Vec<u64>,
    bound: u64,
    membership: BitVec,
    counts: Option<Vec<BigUint>>,
}

impl SemigroupTable {
    /// Membership only. Zero generators are ignored.
    pub fn new(generators: &[u64], bound: u64) -> Self {
        let mut gens: Vec<u64> = generators.iter().copied().filter(|&g| g > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let len = bound as usize + 1;
        let mut membership = bitvec![0; len];
        membership.set(0, true);
        for t in 1..len {
            let hit = gens
                .iter()
                .take_while(|&&g| g as usize <= t)
                .any(|&g| membership[t - g as usize]);
            if hit {
                membership.set(t, true);
            }
        }
        SemigroupTable {
            generators: gens,
            bound,
            membership,
            counts: None,
        }
    }

    /// Membership plus representation counts, where every entry of
    /// `weights` (repeats included) is a separate variable.
    pub fn with_counts(weights: &[u64], bound: u64) -> Self {
        let counts = count_table(weights, bound);
        let mut membership = bitvec![0; bound as usize + 1];
        for (t, c) in counts.iter().enumerate() {
            if !c.is_zero() {
                membership.set(t, true);
            }
        }
        let mut gens: Vec<u64> = weights.iter().copied().filter(|&g| g > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        SemigroupTable {
            generators: gens,
            bound,
            membership,
            counts: Some(counts),
        }
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `None` when `t` lies beyond the tabulated range.
    pub fn contains(&self, t: u64) -> Option<bool> {
        (t <= self.bound).then(|| self.membership[t as usize])
    }

    pub fn count(&self, t: u64) -> Option<&BigUint> {
        self.counts.as_ref()?.get(t as usize)
    }

    /// Largest tabulated non-member, or `None` if every entry is a member.
    pub fn largest_gap(&self) -> Option<u64> {
        self.membership.last_zero().map(|i| i as u64)
    }
}

fn count_table(weights: &[u64], bound: u64) -> Vec<BigUint> {
    let len = bound as usize + 1;
    let mut counts = vec![BigUint::zero(); len];
    counts[0] = BigUint::one();
    for &w in weights.iter().filter(|&&w| w > 0) {
        let w = w as usize;
        for t in w..len {
            let (lo, hi) = counts.split_at_mut(t);
            hi[0] += &lo[t - w];
        }
    }
    counts
}

/// True iff `target` is a nonnegative integer combination of `generators`.
pub fn representable(target: u64, generators: &[u64]) -> bool {
    if target == 0 {
        return true;
    }
    SemigroupTable::new(generators, target)
        .contains(target)
        .unwrap_or(false)
}

/// Number of monomials of weighted degree `target`, one variable per entry
/// of `weights`.
pub fn monomial_count(target: u64, weights: &[u64]) -> BigUint {
    let mut counts = count_table(weights, target);
    counts.swap_remove(target as usize)
}

/// Like [`monomial_count`] but saturating at `cap`; exact below the cap.
pub fn monomial_count_capped(target: u64, weights: &[u64], cap: u64) -> u64 {
    let len = target as usize + 1;
    let mut counts = vec![0u64; len];
    counts[0] = 1;
    for &w in weights.iter().filter(|&&w| w > 0) {
        let w = w as usize;
        for t in w..len {
            counts[t] = counts[t].saturating_add(counts[t - w]).min(cap);
        }
    }
    counts[target as usize].min(cap)
}

fn check_generators(generators: &[u64]) -> Result<()> {
    if generators.is_empty() {
        return Err(Error::usage("empty generator list"));
    }
    if generators.contains(&0) {
        return Err(Error::usage("generators must be positive"));
    }
    let g = gcd_slice(generators);
    if g != 1 {
        return Err(Error::domain(format!(
            "Frobenius number undefined: gcd of generators is {g}"
        )));
    }
    Ok(())
}

/// Table bound that provably covers the Frobenius number.
///
/// Schur's bound G < min·max holds for any coprime set; a coprime pair
/// (a, b) inside the set gives the sharper G(a, b) < a·b.
fn frobenius_table_bound(generators: &[u64]) -> u64 {
    let min = *generators.iter().min().unwrap();
    let max = *generators.iter().max().unwrap();
    let mut bound = min * max;
    for (i, &a) in generators.iter().enumerate() {
        for &b in &generators[i + 1..] {
            if gcd(a, b) == 1 {
                bound = bound.min(a * b);
            }
        }
    }
    bound
}

/// Largest integer that is not representable; −1 when 1 is a generator.
pub fn frobenius(generators: &[u64]) -> Result<i64> {
    check_generators(generators)?;
    if generators.contains(&1) {
        return Ok(-1);
    }
    let table = SemigroupTable::new(generators, frobenius_table_bound(generators));
    Ok(table.largest_gap().map_or(-1, |g| g as i64))
}

/// Brauer's bound for the given ordering: Σ_{j≥1} a_j·g_{j−1}/g_j − Σ a_i,
/// where g_j is the gcd of the first j+1 entries.
pub fn brauer_bound(generators: &[u64]) -> Result<i64> {
    check_generators(generators)?;
    let mut prev = generators[0];
    let mut total: i64 = 0;
    for &a in &generators[1..] {
        let g = gcd(prev, a);
        total += (a * (prev / g)) as i64;
        prev = g;
    }
    let sum: i64 = generators.iter().map(|&a| a as i64).sum();
    Ok(total - sum)
}

/// Minimum of [`brauer_bound`] over all orderings.
pub fn brauer_bound_min(generators: &[u64]) -> Result<i64> {
    check_generators(generators)?;
    if generators.len() > BRAUER_MIN_MAX_LEN {
        return Err(Error::usage(format!(
            "brauer_bound_min supports at most {BRAUER_MIN_MAX_LEN} generators"
        )));
    }
    let mut order = generators.to_vec();
    order.sort_unstable();
    let mut best = brauer_bound(&order)?;
    while next_permutation(&mut order) {
        best = best.min(brauer_bound(&order)?);
    }
    Ok(best)
}

fn next_permutation(v: &mut [u64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
