//! Weighted projective spaces and families of general weighted complete
//! intersections.
//!
//! Every criterion here is evaluated on strata indexed by subsets of
//! distinct weight values. For a value subset W the coordinate set I is
//! always taken maximal (all coordinates whose weight lies in W); the
//! counts each criterion requires grow with |I| while monomial
//! availability only grows, so the maximal set is the binding one.

mod quasi_smooth;
mod strata;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{gcd_slice, SemigroupTable};
use crate::error::{Error, Result};
use crate::notation;
use crate::pairs::Pair;

pub use quasi_smooth::{quasi_smooth, DegreeSelection, QsOutcome, QsReport, QsStratum};
pub use strata::{
    analyze, base_locus, classify, fundamental_index, is_smooth, space_well_formed,
    stratum_meets, wci_well_formed, Analysis, BaseComponent, FamilyType, IndexContributor,
    IndexReport,
};

pub(crate) use strata::base_locus_unchecked;

/// Upper limit on distinct weight values; strata are enumerated over all
/// subsets of classes.
pub const MAX_CLASSES: usize = 20;

/// Run-length form of a weight vector: distinct values descending with
/// their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightClasses {
    classes: Vec<(u64, usize)>,
}

impl WeightClasses {
    pub fn from_weights(weights: &[u64]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::usage("at least one weight is required"));
        }
        if weights.contains(&0) {
            return Err(Error::usage("weights must be positive"));
        }
        let mut classes: Vec<(u64, usize)> = Vec::new();
        for w in notation::sorted_desc(weights.to_vec()) {
            match classes.last_mut() {
                Some((v, m)) if *v == w => *m += 1,
                _ => classes.push((w, 1)),
            }
        }
        if classes.len() > MAX_CLASSES {
            return Err(Error::usage(format!(
                "at most {MAX_CLASSES} distinct weight values are supported"
            )));
        }
        Ok(WeightClasses { classes })
    }

    pub fn classes(&self) -> &[(u64, usize)] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn value(&self, class: usize) -> u64 {
        self.classes[class].0
    }

    pub fn multiplicity(&self, class: usize) -> usize {
        self.classes[class].1
    }

    /// n + 1, the number of coordinates.
    pub fn len(&self) -> usize {
        self.classes.iter().map(|&(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Expanded weight list, descending.
    pub fn expanded(&self) -> Vec<u64> {
        self.classes
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat_n(v, m))
            .collect()
    }

    pub fn sum(&self) -> u64 {
        self.classes.iter().map(|&(v, m)| v * m as u64).sum()
    }

    pub fn class_of(&self, value: u64) -> Option<usize> {
        self.classes.iter().position(|&(v, _)| v == value)
    }

    /// Number of unit weights, c₁.
    pub fn unit_count(&self) -> usize {
        self.class_of(1).map_or(0, |c| self.classes[c].1)
    }
}

impl fmt::Display for WeightClasses {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&notation::encode_runs(&self.expanded()))
    }
}

/// A weighted projective space with a multidegree: the family of general
/// complete intersections X_{d_1..d_c} ⊂ P(a_0..a_n). No degrees means the
/// ambient space itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WciFamily {
    weights: WeightClasses,
    degrees: Vec<u64>,
}

impl WciFamily {
    /// Requires c ≤ n, i.e. a family of nonnegative dimension.
    pub fn new(degrees: Vec<u64>, weights: &[u64]) -> Result<Self> {
        let weights = WeightClasses::from_weights(weights)?;
        Self::from_classes(degrees, weights)
    }

    pub fn from_classes(degrees: Vec<u64>, weights: WeightClasses) -> Result<Self> {
        if degrees.contains(&0) {
            return Err(Error::usage("degrees must be positive"));
        }
        if degrees.len() >= weights.len() {
            return Err(Error::usage(format!(
                "codimension {} needs at least {} weights",
                degrees.len(),
                degrees.len() + 1
            )));
        }
        Ok(WciFamily {
            weights,
            degrees: notation::sorted_desc(degrees),
        })
    }

    pub fn ambient(weights: &[u64]) -> Result<Self> {
        Self::new(Vec::new(), weights)
    }

    pub fn weights(&self) -> &WeightClasses {
        &self.weights
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn codim(&self) -> usize {
        self.degrees.len()
    }

    /// n, the dimension of the ambient weighted projective space.
    pub fn ambient_dim(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim() - self.codim()
    }

    pub fn pair(&self) -> Pair {
        Pair::from_sorted(self.degrees.clone(), self.weights.expanded())
    }

    /// δ = Σ d_j − Σ a_i; K_X = O_X(δ).
    pub fn canonical_degree(&self) -> i64 {
        self.degrees.iter().sum::<u64>() as i64 - self.weights.sum() as i64
    }

    pub fn is_linear_cone(&self) -> bool {
        self.degrees
            .iter()
            .any(|&d| self.weights.class_of(d).is_some())
    }

    /// Appends a degree: the family of general members of |O_X(ell)|.
    pub fn augment(&self, ell: u64) -> Result<WciFamily> {
        let mut degrees = self.degrees.clone();
        degrees.push(ell);
        Self::from_classes(degrees, self.weights.clone())
    }

    /// Bitmask over class indices for a set of weight values.
    pub fn mask_of(&self, values: &[u64]) -> Result<u64> {
        if values.is_empty() {
            return Err(Error::usage("empty value subset"));
        }
        values.iter().try_fold(0u64, |mask, &v| {
            self.weights
                .class_of(v)
                .map(|c| mask | 1 << c)
                .ok_or_else(|| Error::usage(format!("{v} is not a weight of {self}")))
        })
    }

    pub(crate) fn stratum(&self, mask: u64) -> Stratum {
        Stratum::new(self, mask)
    }

    pub(crate) fn all_masks(&self) -> impl Iterator<Item = u64> {
        1..(1u64 << self.weights.num_classes())
    }

    pub(crate) fn max_degree(&self) -> u64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for WciFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} / {}",
            notation::encode_plain(&self.degrees),
            self.weights
        )
    }
}

impl FromStr for WciFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (d, a) = notation::split_halves(s)?;
        WciFamily::new(notation::parse_list(d)?, &notation::parse_list(a)?)
    }
}

/// Per-stratum data for the maximal coordinate set of a value subset.
#[derive(Debug, Clone)]
pub(crate) struct Stratum {
    pub mask: u64,
    /// Values in W, descending.
    pub values: Vec<u64>,
    /// |I|: all coordinates whose weight is in W.
    pub k: usize,
    pub gcd: u64,
    /// I-weights with multiplicity.
    pub coordinate_weights: Vec<u64>,
    table: SemigroupTable,
    /// Per degree index: does some I-monomial have that degree?
    pub representable: Vec<bool>,
}

impl Stratum {
    fn new(family: &WciFamily, mask: u64) -> Self {
        let classes = family.weights.classes();
        let mut values = Vec::new();
        let mut coordinate_weights = Vec::new();
        for (c, &(v, m)) in classes.iter().enumerate() {
            if mask >> c & 1 == 1 {
                values.push(v);
                coordinate_weights.extend(std::iter::repeat_n(v, m));
            }
        }
        let table = SemigroupTable::new(&values, family.max_degree());
        let representable = family
            .degrees
            .iter()
            .map(|&d| table.contains(d).unwrap_or(false))
            .collect();
        Stratum {
            mask,
            k: coordinate_weights.len(),
            gcd: gcd_slice(&values),
            values,
            coordinate_weights,
            table,
            representable,
        }
    }

    pub fn contains_class(&self, class: usize) -> bool {
        self.mask >> class & 1 == 1
    }

    /// Representability over W for any t up to the largest degree.
    pub fn represents(&self, t: u64) -> bool {
        self.table.contains(t).unwrap_or(false)
    }

    pub fn representable_count(&self) -> usize {
        self.representable.iter().filter(|&&r| r).count()
    }

    /// Does some representable degree have exactly one I-monomial? Then
    /// the general member misses the open stratum.
    pub fn has_lone_monomial(&self, degrees: &[u64]) -> bool {
        degrees
            .iter()
            .zip(&self.representable)
            .filter(|&(_, &r)| r)
            .any(|(&d, _)| crate::arith::monomial_count_capped(d, &self.coordinate_weights, 2) < 2)
    }
}
