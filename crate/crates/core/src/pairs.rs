//! Degree/weight pairs (d; a) and the regular-pair calculus: amplitude,
//! h-regularity, cancellation of doubles, removal of unit weights and the
//! split at a prime.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{gcd, is_prime};
use crate::error::{Error, Result};
use crate::notation;

/// A multidegree/weight pair, stored with both lists sorted descending.
/// Either list may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    degrees: Vec<u64>,
    weights: Vec<u64>,
}

/// A weight value together with how many weights carry it.
pub type ValueClass = (u64, usize);

/// Why a pair fails to be h-regular: the weight classes forming the
/// offending subset, their gcd, and how many degrees that gcd divides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityWitness {
    pub classes: Vec<ValueClass>,
    pub gcd: u64,
    pub divisible_degrees: usize,
}

impl RegularityWitness {
    pub fn size(&self) -> usize {
        self.classes.iter().map(|&(_, m)| m).sum()
    }
}

/// The two pairs obtained by splitting at a prime q: `top` divides every
/// q-divisible entry by q, `at_prime` keeps only the q-divisible entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSplit {
    pub top: Pair,
    pub at_prime: Pair,
    pub prime: u64,
}

impl PairSplit {
    /// q·δ(original) = q·δ(top) + (q−1)·δ(at_prime), in exact integers.
    pub fn delta_identity_holds(&self, original: &Pair) -> bool {
        let q = self.prime as i128;
        q * original.delta() as i128
            == q * self.top.delta() as i128 + (q - 1) * self.at_prime.delta() as i128
    }
}

impl Pair {
    pub fn new(degrees: Vec<u64>, weights: Vec<u64>) -> Result<Self> {
        if degrees.contains(&0) || weights.contains(&0) {
            return Err(Error::usage("pair entries must be positive"));
        }
        Ok(Self::from_sorted(
            notation::sorted_desc(degrees),
            notation::sorted_desc(weights),
        ))
    }

    pub(crate) fn from_sorted(degrees: Vec<u64>, weights: Vec<u64>) -> Self {
        debug_assert!(degrees.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(weights.windows(2).all(|w| w[0] >= w[1]));
        Pair { degrees, weights }
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Number of degrees, c.
    pub fn codim(&self) -> usize {
        self.degrees.len()
    }

    pub fn delta(&self) -> i64 {
        let d: u64 = self.degrees.iter().sum();
        let a: u64 = self.weights.iter().sum();
        d as i64 - a as i64
    }

    /// Distinct weight values ascending, with multiplicities.
    pub fn weight_classes_ascending(&self) -> Vec<ValueClass> {
        let mut out: Vec<ValueClass> = Vec::new();
        for &w in self.weights.iter().rev() {
            match out.last_mut() {
                Some((v, m)) if *v == w => *m += 1,
                _ => out.push((w, 1)),
            }
        }
        out
    }

    pub fn is_regular(&self) -> bool {
        self.is_h_regular(1)
    }

    pub fn is_h_regular(&self, h: u64) -> bool {
        self.regularity_witness(h).is_none()
    }

    /// `None` if the pair is h-regular, otherwise the lexicographically
    /// smallest failing subset of weight values (values listed ascending).
    ///
    /// Only subsets of distinct values are visited, each with all of its
    /// weights: the gcd does not see multiplicities, and the number of
    /// divisible degrees required grows with the subset size.
    pub fn regularity_witness(&self, h: u64) -> Option<RegularityWitness> {
        assert!(h >= 1, "h must be positive");
        let classes: Vec<ValueClass> = self
            .weight_classes_ascending()
            .into_iter()
            .filter(|&(v, _)| v > 1)
            .collect();
        let mut chosen = Vec::new();
        self.regularity_dfs(&classes, 0, 0, 0, h, &mut chosen)
    }

    fn regularity_dfs(
        &self,
        classes: &[ValueClass],
        start: usize,
        acc_gcd: u64,
        acc_size: usize,
        h: u64,
        chosen: &mut Vec<usize>,
    ) -> Option<RegularityWitness> {
        for i in start..classes.len() {
            let (v, m) = classes[i];
            let g = gcd(acc_gcd, v);
            if g == 1 {
                continue;
            }
            let size = acc_size + m;
            chosen.push(i);
            if h % g != 0 {
                let divisible = self.degrees.iter().filter(|&&d| d % g == 0).count();
                if divisible < size {
                    let witness = RegularityWitness {
                        classes: chosen.iter().map(|&c| classes[c]).collect(),
                        gcd: g,
                        divisible_degrees: divisible,
                    };
                    chosen.pop();
                    return Some(witness);
                }
            }
            let found = self.regularity_dfs(classes, i + 1, g, size, h, chosen);
            chosen.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Removes a maximal set of matched equal degree/weight values.
    pub fn cancel(&self) -> Pair {
        let mut degrees = Vec::with_capacity(self.degrees.len());
        let mut weights = Vec::with_capacity(self.weights.len());
        let (mut i, mut j) = (0, 0);
        // both lists descending: merge-style walk
        while i < self.degrees.len() || j < self.weights.len() {
            match (self.degrees.get(i), self.weights.get(j)) {
                (Some(&d), Some(&a)) if d == a => {
                    i += 1;
                    j += 1;
                }
                (Some(&d), Some(&a)) if d > a => {
                    degrees.push(d);
                    i += 1;
                }
                (Some(_), Some(&a)) => {
                    weights.push(a);
                    j += 1;
                }
                (Some(&d), None) => {
                    degrees.push(d);
                    i += 1;
                }
                (None, Some(&a)) => {
                    weights.push(a);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Pair::from_sorted(degrees, weights)
    }

    /// Drops every unit weight; returns the stripped pair and how many
    /// were removed.
    pub fn strip_units(&self) -> (Pair, usize) {
        let weights: Vec<u64> = self.weights.iter().copied().filter(|&a| a != 1).collect();
        let removed = self.weights.len() - weights.len();
        (Pair::from_sorted(self.degrees.clone(), weights), removed)
    }

    pub fn split_prime(&self, q: u64) -> Result<PairSplit> {
        if !is_prime(q) {
            return Err(Error::usage(format!("{q} is not prime")));
        }
        let divide = |xs: &[u64]| -> Vec<u64> {
            notation::sorted_desc(
                xs.iter()
                    .map(|&x| if x % q == 0 { x / q } else { x })
                    .collect(),
            )
        };
        let keep = |xs: &[u64]| -> Vec<u64> { xs.iter().copied().filter(|&x| x % q == 0).collect() };
        Ok(PairSplit {
            top: Pair::from_sorted(divide(&self.degrees), divide(&self.weights)),
            at_prime: Pair::from_sorted(keep(&self.degrees), keep(&self.weights)),
            prime: q,
        })
    }

    /// Divides every entry by `q`; `None` unless all entries are divisible.
    pub fn divide_all(&self, q: u64) -> Option<Pair> {
        if self.degrees.iter().chain(&self.weights).any(|&x| x % q != 0) {
            return None;
        }
        Some(Pair::from_sorted(
            self.degrees.iter().map(|&d| d / q).collect(),
            self.weights.iter().map(|&a| a / q).collect(),
        ))
    }

    pub fn has_double(&self) -> bool {
        self.degrees.iter().any(|d| self.weights.binary_search_by(|a| d.cmp(a)).is_ok())
    }
}

/// What h-regularity asks of the degrees once the weights are fixed: for
/// every listed (g, k), at least k degrees divisible by g. Dominated
/// conditions are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityConstraints {
    constraints: Vec<(u64, usize)>,
}

impl RegularityConstraints {
    pub fn new(weights: &[u64], h: u64) -> Self {
        assert!(h >= 1, "h must be positive");
        let classes: Vec<ValueClass> = Pair::from_sorted(Vec::new(), notation::sorted_desc(weights.to_vec()))
            .weight_classes_ascending()
            .into_iter()
            .filter(|&(v, _)| v > 1)
            .collect();
        let mut raw = Vec::new();
        collect_constraints(&classes, 0, 0, 0, h, &mut raw);
        // keep the largest k per gcd, then drop (g, k) whenever some
        // multiple of g already demands at least k
        raw.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        raw.dedup_by_key(|c| c.0);
        let constraints = raw
            .iter()
            .copied()
            .filter(|&(g, k)| {
                !raw.iter()
                    .any(|&(g2, k2)| g2 != g && g2 % g == 0 && k2 >= k)
            })
            .collect();
        RegularityConstraints { constraints }
    }

    pub fn constraints(&self) -> &[(u64, usize)] {
        &self.constraints
    }

    /// The most degrees any single condition asks for.
    pub fn max_required(&self) -> usize {
        self.constraints.iter().map(|&(_, k)| k).max().unwrap_or(0)
    }

    pub fn satisfied_by(&self, degrees: &[u64]) -> bool {
        self.constraints
            .iter()
            .all(|&(g, k)| degrees.iter().filter(|&&d| d % g == 0).count() >= k)
    }
}

fn collect_constraints(
    classes: &[ValueClass],
    start: usize,
    acc_gcd: u64,
    acc_size: usize,
    h: u64,
    out: &mut Vec<(u64, usize)>,
) {
    for i in start..classes.len() {
        let (v, m) = classes[i];
        let g = gcd(acc_gcd, v);
        if g == 1 {
            continue;
        }
        if h % g != 0 {
            out.push((g, acc_size + m));
        }
        collect_constraints(classes, i + 1, g, acc_size + m, h, out);
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{}",
            notation::encode_plain(&self.degrees),
            notation::encode_runs(&self.weights)
        )
    }
}

impl FromStr for Pair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (d, a) = notation::split_halves(s)?;
        Pair::new(notation::parse_list(d)?, notation::parse_list(a)?)
    }
}
