//! Stratum-level geometry of a general member: well-formedness, which
//! singular strata it meets, the fundamental Cartier index, smoothness,
//! classification and base loci of |O_X(ell)|.
//!
//! Intersections with a stratum Π_I are decided by generic-position
//! counting. A degree that is not an I-degree restricts to zero on Π_I;
//! a degree with a single I-monomial keeps the member off the open
//! stratum; otherwise the r surviving equations cut Π_I (dimension k − 1)
//! in dimension k − 1 − r.

use serde::Serialize;

use crate::arith::{gcd_slice, lcm, representable};
use crate::error::{Error, Result};

use super::quasi_smooth::is_quasi_smooth_unchecked;
use super::{Stratum, WciFamily, WeightClasses};

/// Every n of the n + 1 weights are coprime.
pub fn space_well_formed(weights: &WeightClasses) -> Result<bool> {
    if weights.len() < 2 {
        return Err(Error::usage("well-formedness needs at least two weights"));
    }
    let classes = weights.classes();
    Ok((0..classes.len()).all(|drop| {
        let rest: Vec<u64> = classes
            .iter()
            .enumerate()
            .filter(|&(c, &(_, m))| c != drop || m > 1)
            .map(|(_, &(v, _))| v)
            .collect();
        gcd_slice(&rest) == 1
    }))
}

/// Does a general member meet the open stratum Π_I⁰ of the given values?
pub fn stratum_meets(family: &WciFamily, values: &[u64]) -> Result<bool> {
    let mask = family.mask_of(values)?;
    Ok(meets(family, &family.stratum(mask)))
}

pub(crate) fn meets(family: &WciFamily, stratum: &Stratum) -> bool {
    stratum.representable_count() < stratum.k && !stratum.has_lone_monomial(family.degrees())
}

/// codim_X(X ∩ Sing P) ≥ 2 for the general member.
pub fn wci_well_formed(family: &WciFamily) -> Result<bool> {
    if !space_well_formed(family.weights())? {
        return Err(Error::domain(format!(
            "ambient space P({}) is not well-formed",
            family.weights()
        )));
    }
    Ok(well_formed_unchecked(family))
}

fn well_formed_unchecked(family: &WciFamily) -> bool {
    let dim_x = family.dim() as i64;
    singular_strata(family).all(|s| {
        if s.has_lone_monomial(family.degrees()) {
            return true;
        }
        let dim = s.k as i64 - 1 - s.representable_count() as i64;
        dim < 0 || dim_x - dim >= 2
    })
}

fn singular_strata(family: &WciFamily) -> impl Iterator<Item = Stratum> + '_ {
    family
        .all_masks()
        .map(|mask| family.stratum(mask))
        .filter(|s| s.gcd > 1)
}

fn check_geometric(family: &WciFamily) -> Result<()> {
    if family.codim() == 0 {
        return Err(Error::domain("the ambient space is not a complete intersection family"));
    }
    if family.is_linear_cone() {
        return Err(Error::domain(format!("{family} is a linear cone")));
    }
    if !wci_well_formed(family)? {
        return Err(Error::domain(format!("{family} is not well-formed")));
    }
    if !is_quasi_smooth_unchecked(family) {
        return Err(Error::domain(format!("{family} is not quasi-smooth")));
    }
    Ok(())
}

/// Smooth iff the general member misses every singular stratum.
pub fn is_smooth(family: &WciFamily) -> Result<bool> {
    check_geometric(family)?;
    Ok(smooth_unchecked(family))
}

fn smooth_unchecked(family: &WciFamily) -> bool {
    singular_strata(family).all(|s| !meets(family, &s))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexContributor {
    /// Stratum values, descending.
    pub values: Vec<u64>,
    pub gcd: u64,
    pub meets: bool,
    /// At least k degrees are divisible by the gcd.
    pub condition_i_holds: bool,
}

impl IndexContributor {
    pub fn contributes(&self) -> bool {
        self.meets && !self.condition_i_holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub index: u64,
    pub contributors: Vec<IndexContributor>,
}

/// Smallest h with O_X(h) Cartier.
///
/// On Π_I⁰ the local class group is cyclic of order a_I with O_X(1) a
/// generator, so every stratum the member meets forces a_I | h unless at
/// least k degrees are divisible by a_I. The index is the lcm of the
/// forced a_I.
pub fn fundamental_index(family: &WciFamily) -> Result<IndexReport> {
    check_geometric(family)?;
    Ok(fundamental_index_unchecked(family))
}

pub(crate) fn fundamental_index_unchecked(family: &WciFamily) -> IndexReport {
    let contributors: Vec<IndexContributor> = singular_strata(family)
        .map(|s| IndexContributor {
            meets: meets(family, &s),
            condition_i_holds: family.degrees().iter().filter(|&&d| d % s.gcd == 0).count() >= s.k,
            gcd: s.gcd,
            values: s.values,
        })
        .collect();
    let index = contributors
        .iter()
        .filter(|c| c.contributes())
        .fold(1, |acc, c| lcm(acc, c.gcd));
    IndexReport {
        index,
        contributors,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FamilyType {
    /// δ < 0; `index` is the Fano index −δ.
    Fano { index: u64 },
    CalabiYau,
    /// δ > 0.
    General { delta: i64 },
}

impl FamilyType {
    pub fn from_delta(delta: i64) -> Self {
        match delta {
            d if d < 0 => FamilyType::Fano { index: d.unsigned_abs() },
            0 => FamilyType::CalabiYau,
            d => FamilyType::General { delta: d },
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            FamilyType::Fano { .. } => "fano",
            FamilyType::CalabiYau => "calabi_yau",
            FamilyType::General { .. } => "general",
        }
    }
}

pub fn classify(family: &WciFamily) -> Result<FamilyType> {
    check_geometric(family)?;
    Ok(FamilyType::from_delta(family.canonical_degree()))
}

/// A maximal stratum inside the base locus, with the induced complete
/// intersection it carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseComponent {
    pub values: Vec<u64>,
    pub family: WciFamily,
}

/// Strata in Bs|O_X(ell)| met by the general member, maximal under
/// inclusion. Empty iff O_X(ell) is base-point free.
pub fn base_locus(family: &WciFamily, ell: u64) -> Result<Vec<BaseComponent>> {
    if ell == 0 {
        return Err(Error::usage("base locus needs a positive twist"));
    }
    check_geometric(family)?;
    Ok(base_locus_unchecked(family, ell))
}

pub(crate) fn base_locus_unchecked(family: &WciFamily, ell: u64) -> Vec<BaseComponent> {
    let candidates: Vec<Stratum> = family
        .all_masks()
        .map(|mask| family.stratum(mask))
        .filter(|s| !representable(ell, &s.values) && meets(family, s))
        .collect();
    candidates
        .iter()
        .filter(|s| {
            !candidates
                .iter()
                .any(|t| t.mask != s.mask && t.mask & s.mask == s.mask)
        })
        .map(|s| {
            let degrees: Vec<u64> = family
                .degrees()
                .iter()
                .zip(&s.representable)
                .filter(|&(_, &r)| r)
                .map(|(&d, _)| d)
                .collect();
            let family = WciFamily::new(degrees, &s.coordinate_weights)
                .expect("a met stratum has more coordinates than surviving equations");
            BaseComponent {
                values: s.values.clone(),
                family,
            }
        })
        .collect()
}

/// Everything the toolkit can say about one family. Fields that need
/// preconditions are `None` when those fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub linear_cone: bool,
    pub well_formed: Option<bool>,
    pub quasi_smooth: Option<bool>,
    pub smooth: Option<bool>,
    pub delta: i64,
    pub family_type: Option<FamilyType>,
    pub fundamental_index: Option<u64>,
}

impl Analysis {
    /// Well-formed, quasi-smooth and not a linear cone.
    pub fn is_geometric(&self) -> bool {
        !self.linear_cone && self.well_formed == Some(true) && self.quasi_smooth == Some(true)
    }
}

pub fn analyze(family: &WciFamily) -> Analysis {
    let linear_cone = family.is_linear_cone();
    let well_formed = match space_well_formed(family.weights()) {
        Ok(true) => Some(well_formed_unchecked(family)),
        _ => None,
    };
    let quasi_smooth = (!linear_cone).then(|| is_quasi_smooth_unchecked(family));
    let geometric =
        family.codim() > 0 && !linear_cone && well_formed == Some(true) && quasi_smooth == Some(true);
    Analysis {
        linear_cone,
        well_formed,
        quasi_smooth,
        smooth: geometric.then(|| smooth_unchecked(family)),
        delta: family.canonical_degree(),
        family_type: geometric.then(|| FamilyType::from_delta(family.canonical_degree())),
        fundamental_index: geometric.then(|| fundamental_index_unchecked(family).index),
    }
}
