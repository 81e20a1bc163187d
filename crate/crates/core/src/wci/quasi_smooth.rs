//! Quasi-smoothness of a general member, decided stratum by stratum.
//!
//! For a stratum with coordinate set I (k = |I|) and ρ = min(c, k):
//!
//! * (Q1) at least ρ degrees are degrees of I-monomials;
//! * (Q2) for some l < ρ, l such degrees are set aside and each remaining
//!   degree d_j picks k − l distinct outside coordinates e with
//!   d_j − a_e an I-degree, so that for every nonempty set J of remaining
//!   degrees the picked coordinates number at least k − l + |J| − 1.
//!
//! The (Q2) selection is searched exactly. Outside coordinates of one
//! weight class are interchangeable, so a partial selection is recorded
//! as, per class, how many coordinates carry each pattern of "picked by
//! which degrees so far"; the search runs over those count profiles.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};

use super::{Stratum, WciFamily};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QsReport {
    pub verdict: bool,
    pub strata: Vec<QsStratum>,
}

impl QsReport {
    pub fn failures(&self) -> impl Iterator<Item = &QsStratum> {
        self.strata
            .iter()
            .filter(|s| matches!(s.outcome, QsOutcome::Fail { .. }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QsStratum {
    /// Weight values of the stratum, descending.
    pub values: Vec<u64>,
    pub k: usize,
    pub outcome: QsOutcome,
}

/// Outside coordinates picked for one remaining degree, as counts per
/// weight value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSelection {
    pub degree: u64,
    pub picks: Vec<(u64, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum QsOutcome {
    /// Degrees realised by I-monomials (ρ of them).
    Q1 { degrees: Vec<u64> },
    Q2 {
        l: usize,
        pure_degrees: Vec<u64>,
        selections: Vec<DegreeSelection>,
    },
    /// `representable` degrees found against `required` = ρ, and the
    /// reason no (Q2) selection exists.
    Fail {
        representable: usize,
        required: usize,
        reason: String,
    },
}

pub fn quasi_smooth(family: &WciFamily) -> Result<QsReport> {
    if family.is_linear_cone() {
        return Err(Error::domain(format!(
            "{family} is a linear cone; the quasi-smoothness criterion needs a non-cone"
        )));
    }
    Ok(quasi_smooth_unchecked(family))
}

pub(crate) fn quasi_smooth_unchecked(family: &WciFamily) -> QsReport {
    if family.codim() == 0 {
        return QsReport {
            verdict: true,
            strata: Vec::new(),
        };
    }
    let strata: Vec<QsStratum> = family
        .all_masks()
        .map(|mask| {
            let stratum = family.stratum(mask);
            QsStratum {
                values: stratum.values.clone(),
                k: stratum.k,
                outcome: stratum_outcome(family, &stratum),
            }
        })
        .collect();
    QsReport {
        verdict: strata
            .iter()
            .all(|s| !matches!(s.outcome, QsOutcome::Fail { .. })),
        strata,
    }
}

/// Verdict only, stopping at the first failing stratum.
pub(crate) fn is_quasi_smooth_unchecked(family: &WciFamily) -> bool {
    family.codim() == 0
        || family.all_masks().all(|mask| {
            let stratum = family.stratum(mask);
            !matches!(stratum_outcome(family, &stratum), QsOutcome::Fail { .. })
        })
}

fn stratum_outcome(family: &WciFamily, stratum: &Stratum) -> QsOutcome {
    let degrees = family.degrees();
    let c = degrees.len();
    let rho = c.min(stratum.k);
    let rep: Vec<usize> = (0..c).filter(|&j| stratum.representable[j]).collect();
    if rep.len() >= rho {
        return QsOutcome::Q1 {
            degrees: rep[..rho].iter().map(|&j| degrees[j]).collect(),
        };
    }
    for l in 0..=rep.len().min(rho - 1) {
        for pure in combinations(&rep, l) {
            let rest: Vec<usize> = (0..c).filter(|j| !pure.contains(j)).collect();
            if let Some(selections) = select_outside(family, stratum, &rest, stratum.k - l) {
                return QsOutcome::Q2 {
                    l,
                    pure_degrees: pure.iter().map(|&j| degrees[j]).collect(),
                    selections,
                };
            }
        }
    }
    QsOutcome::Fail {
        representable: rep.len(),
        required: rho,
        reason: format!(
            "only {} of {} degrees are I-degrees and no (Q2) selection of outside coordinates exists",
            rep.len(),
            rho
        ),
    }
}

fn combinations(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Per remaining degree, picks `m` outside coordinates subject to the
/// union bound; `None` if impossible.
fn select_outside(
    family: &WciFamily,
    stratum: &Stratum,
    rest: &[usize],
    m: usize,
) -> Option<Vec<DegreeSelection>> {
    let classes = family.weights().classes();
    let outside: Vec<usize> = (0..classes.len())
        .filter(|&c| !stratum.contains_class(c))
        .collect();
    let degrees = family.degrees();
    let slots = rest.len();
    // more copies of a class than m·slots can never all be picked
    let cap = m * slots;
    let sizes: Vec<usize> = outside.iter().map(|&c| classes[c].1.min(cap)).collect();
    let avail: Vec<Vec<usize>> = rest
        .iter()
        .map(|&j| {
            let d = degrees[j];
            outside
                .iter()
                .enumerate()
                .filter(|&(_, &c)| {
                    let a = classes[c].0;
                    a <= d && stratum.represents(d - a)
                })
                .map(|(local, _)| local)
                .collect()
        })
        .collect();

    // necessary: union of full availability sets meets every bound
    for set in 1u32..(1 << slots) {
        let mut union = vec![false; outside.len()];
        for (pos, av) in avail.iter().enumerate() {
            if set >> pos & 1 == 1 {
                for &c in av {
                    union[c] = true;
                }
            }
        }
        let size: usize = union
            .iter()
            .zip(&sizes)
            .filter(|&(&u, _)| u)
            .map(|(_, &s)| s)
            .sum();
        if size < m + set.count_ones() as usize - 1 {
            return None;
        }
    }

    let mut search = ProfileSearch {
        m,
        avail: &avail,
        failed: HashSet::new(),
    };
    let initial: Profile = sizes
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s > 0)
        .map(|(c, &s)| (c, 0, s))
        .collect();
    let mut picks = Vec::with_capacity(slots);
    if !search.run(0, initial, &mut picks) {
        return None;
    }
    Some(
        rest.iter()
            .zip(&picks)
            .map(|(&j, pick)| {
                let mut per_class = vec![0usize; outside.len()];
                for &(c, n) in pick {
                    per_class[c] += n;
                }
                DegreeSelection {
                    degree: degrees[j],
                    picks: per_class
                        .iter()
                        .enumerate()
                        .filter(|&(_, &n)| n > 0)
                        .map(|(c, &n)| (classes[outside[c]].0, n))
                        .collect(),
                }
            })
            .collect(),
    )
}

/// Sorted cells (local class, pattern of slots that picked it, count).
type Profile = Vec<(usize, u32, usize)>;

struct ProfileSearch<'a> {
    m: usize,
    avail: &'a [Vec<usize>],
    failed: HashSet<(usize, Profile)>,
}

impl ProfileSearch<'_> {
    /// Fills slots `pos..`; on success `picks` holds (class, count) per slot.
    fn run(&mut self, pos: usize, profile: Profile, picks: &mut Vec<Vec<(usize, usize)>>) -> bool {
        if pos == self.avail.len() {
            return true;
        }
        if self.failed.contains(&(pos, profile.clone())) {
            return false;
        }
        let cells: Vec<usize> = (0..profile.len())
            .filter(|&i| self.avail[pos].contains(&profile[i].0))
            .collect();
        let mut take = vec![0usize; cells.len()];
        if self.distribute(pos, &profile, &cells, 0, self.m, &mut take, picks) {
            return true;
        }
        self.failed.insert((pos, profile));
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn distribute(
        &mut self,
        pos: usize,
        profile: &Profile,
        cells: &[usize],
        at: usize,
        remaining: usize,
        take: &mut Vec<usize>,
        picks: &mut Vec<Vec<(usize, usize)>>,
    ) -> bool {
        if remaining == 0 {
            let next = apply(profile, cells, take, pos);
            if !self.bounds_hold(pos, &next) {
                return false;
            }
            picks.push(
                cells
                    .iter()
                    .zip(take.iter())
                    .filter(|&(_, &t)| t > 0)
                    .map(|(&i, &t)| (profile[i].0, t))
                    .collect(),
            );
            if self.run(pos + 1, next, picks) {
                return true;
            }
            picks.pop();
            return false;
        }
        if at == cells.len() {
            return false;
        }
        let capacity: usize = cells[at..].iter().map(|&i| profile[i].2).sum();
        if capacity < remaining {
            return false;
        }
        let most = profile[cells[at]].2.min(remaining);
        for t in (0..=most).rev() {
            take[at] = t;
            if self.distribute(pos, profile, cells, at + 1, remaining - t, take, picks) {
                return true;
            }
        }
        take[at] = 0;
        false
    }

    /// Union bounds for every J ⊆ {0..=pos} containing `pos`.
    fn bounds_hold(&self, pos: usize, profile: &Profile) -> bool {
        let newest = 1u32 << pos;
        (0..newest).all(|older| {
            let set = older | newest;
            let union: usize = profile
                .iter()
                .filter(|&&(_, pattern, _)| pattern & set != 0)
                .map(|&(_, _, n)| n)
                .sum();
            union + 1 >= self.m + set.count_ones() as usize
        })
    }
}

fn apply(profile: &Profile, cells: &[usize], take: &[usize], pos: usize) -> Profile {
    let mut next: Profile = profile.clone();
    for (&i, &t) in cells.iter().zip(take) {
        if t > 0 {
            next[i].2 -= t;
            let (class, pattern, _) = profile[i];
            next.push((class, pattern | 1 << pos, t));
        }
    }
    next.retain(|&(_, _, n)| n > 0);
    next.sort_unstable();
    // merge equal cells
    let mut merged: Profile = Vec::with_capacity(next.len());
    for cell in next {
        match merged.last_mut() {
            Some(last) if last.0 == cell.0 && last.1 == cell.1 => last.2 += cell.2,
            _ => merged.push(cell),
        }
    }
    merged
}
