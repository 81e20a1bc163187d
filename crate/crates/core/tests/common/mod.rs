//! Brute-force reference implementations. Everything here works on
//! individual coordinates and exponent vectors, never on weight classes.
//! The library is only touched by the comparison helpers at the end.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Is t a nonnegative combination of `gens`? Plain recursion.
pub fn representable(t: u64, gens: &[u64]) -> bool {
    match gens.split_first() {
        None => t == 0,
        Some((&g, rest)) => (0..=t / g).any(|e| representable(t - e * g, rest)),
    }
}

/// Exponent vectors e with Σ e_i w_i = t, capped at `cap`.
pub fn monomials(t: u64, weights: &[u64], cap: u64) -> u64 {
    match weights.split_first() {
        None => u64::from(t == 0),
        Some((&w, rest)) => {
            let mut total = 0;
            for e in 0..=t / w {
                total += monomials(t - e * w, rest, cap);
                if total >= cap {
                    return cap;
                }
            }
            total
        }
    }
}

/// Largest non-representable integer, by scanning up to a safe bound.
pub fn frobenius(gens: &[u64]) -> i64 {
    let lo = *gens.iter().min().unwrap();
    let hi = *gens.iter().max().unwrap();
    let bound = lo * hi + hi;
    (0..=bound)
        .rev()
        .find(|&t| !representable(t, gens))
        .map_or(-1, |t| t as i64)
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u64..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

fn gcd_of(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(0, gcd)
}

/// Definition of h-regularity over all index subsets of the weights.
pub fn h_regular(degrees: &[u64], weights: &[u64], h: u64) -> bool {
    subsets(weights.len()).all(|idx| {
        let g = gcd_of(idx.iter().map(|&i| weights[i]));
        g == 1 || h % g == 0 || degrees.iter().filter(|&&d| d % g == 0).count() >= idx.len()
    })
}

pub fn space_well_formed(weights: &[u64]) -> bool {
    (0..weights.len()).all(|skip| {
        gcd_of(
            weights
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &w)| w),
        ) == 1
    })
}

/// Coordinate-level view of one torus stratum.
struct CoordStratum {
    idx: Vec<usize>,
    sub_weights: Vec<u64>,
    gcd: u64,
    /// Degrees restricting to a nonzero polynomial on the stratum.
    surviving: Vec<u64>,
    /// Some surviving degree has a single monomial on the stratum.
    lone: bool,
}

fn coord_strata<'a>(degrees: &'a [u64], weights: &'a [u64]) -> impl Iterator<Item = CoordStratum> + 'a {
    subsets(weights.len()).map(move |idx| {
        let sub_weights: Vec<u64> = idx.iter().map(|&i| weights[i]).collect();
        let surviving: Vec<u64> = degrees
            .iter()
            .copied()
            .filter(|&d| representable(d, &sub_weights))
            .collect();
        let lone = surviving.iter().any(|&d| monomials(d, &sub_weights, 2) == 1);
        CoordStratum {
            gcd: gcd_of(sub_weights.iter().copied()),
            idx,
            sub_weights,
            surviving,
            lone,
        }
    })
}

fn meets(s: &CoordStratum) -> bool {
    s.surviving.len() < s.idx.len() && !s.lone
}

pub fn family_well_formed(degrees: &[u64], weights: &[u64]) -> bool {
    let dim_x = weights.len() as i64 - 1 - degrees.len() as i64;
    coord_strata(degrees, weights)
        .filter(|s| s.gcd > 1)
        .all(|s| {
            let dim = s.idx.len() as i64 - 1 - s.surviving.len() as i64;
            s.lone || dim < 0 || dim_x - dim >= 2
        })
}

pub fn smooth(degrees: &[u64], weights: &[u64]) -> bool {
    coord_strata(degrees, weights)
        .filter(|s| s.gcd > 1)
        .all(|s| !meets(&s))
}

pub fn fundamental_index(degrees: &[u64], weights: &[u64]) -> u64 {
    coord_strata(degrees, weights)
        .filter(|s| s.gcd > 1 && meets(s))
        .filter(|s| degrees.iter().filter(|&&d| d % s.gcd == 0).count() < s.idx.len())
        .fold(1, |acc, s| lcm(acc, s.gcd))
}

/// Does a general member meet the open stratum of exactly these
/// coordinates?
pub fn meets_coordinates(degrees: &[u64], weights: &[u64], idx: &[usize]) -> bool {
    coord_strata(degrees, weights)
        .find(|s| s.idx == idx)
        .map(|s| meets(&s))
        .unwrap()
}

/// The quasi-smoothness criterion over every coordinate subset, with the
/// outside coordinates chosen one by one.
pub fn quasi_smooth(degrees: &[u64], weights: &[u64]) -> bool {
    coord_strata(degrees, weights).all(|s| stratum_quasi_smooth(degrees, weights, &s))
}

fn stratum_quasi_smooth(degrees: &[u64], weights: &[u64], s: &CoordStratum) -> bool {
    let c = degrees.len();
    let k = s.idx.len();
    let rho = c.min(k);
    let rep: Vec<usize> = (0..c)
        .filter(|&j| representable(degrees[j], &s.sub_weights))
        .collect();
    if rep.len() >= rho {
        return true;
    }
    let outside: Vec<usize> = (0..weights.len()).filter(|i| !s.idx.contains(i)).collect();
    for l in 0..rho.min(rep.len() + 1) {
        for pure in combos(&rep, l) {
            let m = k - l;
            let avail: Vec<Vec<usize>> = (0..c)
                .filter(|j| !pure.contains(j))
                .map(|j| {
                    outside
                        .iter()
                        .copied()
                        .filter(|&e| {
                            degrees[j] >= weights[e]
                                && representable(degrees[j] - weights[e], &s.sub_weights)
                        })
                        .collect()
                })
                .collect();
            let mut chosen: Vec<Vec<usize>> = Vec::new();
            if assign(&avail, m, &mut chosen) {
                return true;
            }
        }
    }
    false
}

fn assign(avail: &[Vec<usize>], m: usize, chosen: &mut Vec<Vec<usize>>) -> bool {
    let j = chosen.len();
    if j == avail.len() {
        return true;
    }
    for pick in combos(&avail[j], m) {
        chosen.push(pick);
        if unions_hold(chosen, m) && assign(avail, m, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Every subfamily containing the newest set has a large enough union.
fn unions_hold(chosen: &[Vec<usize>], m: usize) -> bool {
    let last = chosen.len() - 1;
    (0u64..1 << last).all(|mask| {
        let mut union: Vec<usize> = chosen[last].clone();
        let mut size = 1;
        for (j, set) in chosen[..last].iter().enumerate() {
            if mask >> j & 1 == 1 {
                size += 1;
                union.extend(set);
            }
        }
        union.sort_unstable();
        union.dedup();
        union.len() + 1 >= m + size
    })
}

pub fn combos<T: Copy>(items: &[T], r: usize) -> Vec<Vec<T>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    if items.len() < r {
        return Vec::new();
    }
    let mut out = Vec::new();
    for i in 0..=items.len() - r {
        for mut rest in combos(&items[i + 1..], r - 1) {
            rest.insert(0, items[i]);
            out.push(rest);
        }
    }
    out
}

/// Monomial counts by degree up to `kmax`, by listing exponent vectors.
pub fn monomial_counts(weights: &[u64], kmax: u64) -> Vec<i64> {
    let mut counts = vec![0i64; kmax as usize + 1];
    fn walk(weights: &[u64], acc: u64, kmax: u64, counts: &mut [i64]) {
        match weights.split_first() {
            None => counts[acc as usize] += 1,
            Some((&w, rest)) => {
                let mut t = acc;
                while t <= kmax {
                    walk(rest, t, kmax, counts);
                    t += w;
                }
            }
        }
    }
    walk(weights, 0, kmax, &mut counts);
    counts
}

/// h⁰ by inclusion–exclusion over the degrees: Σ_S (−1)^|S| #monomials
/// of degree k − Σ_S d.
pub fn h0_inclusion_exclusion(degrees: &[u64], counts: &[i64], k: u64) -> i64 {
    let c = degrees.len();
    (0u64..1 << c)
        .map(|mask| {
            let shift: u64 = (0..c).filter(|&j| mask >> j & 1 == 1).map(|j| degrees[j]).sum();
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            if shift > k {
                0
            } else {
                sign * counts[(k - shift) as usize]
            }
        })
        .sum()
}

/// A random family (not a linear cone) with the given shape limits. Half
/// of the draws build degrees from lcms of weights, which makes
/// quasi-smooth members common.
pub fn random_family(rng: &mut StdRng, max_vars: usize, max_codim: usize, max_weight: u64, max_degree: u64) -> (Vec<u64>, Vec<u64>) {
    loop {
        let n1 = rng.gen_range(2..=max_vars);
        let c = rng.gen_range(1..=max_codim.min(n1 - 1));
        let weights: Vec<u64> = (0..n1).map(|_| rng.gen_range(1..=max_weight)).collect();
        let structured = rng.gen_bool(0.5);
        let degrees: Vec<u64> = (0..c)
            .map(|_| {
                if structured {
                    let a = weights[rng.gen_range(0..n1)];
                    let b = weights[rng.gen_range(0..n1)];
                    let base = lcm(a, b);
                    base * rng.gen_range(1..=(max_degree / base).max(1))
                } else {
                    rng.gen_range(1..=max_degree)
                }
            })
            .collect();
        if degrees.iter().all(|&d| d <= max_degree) && !degrees.iter().any(|d| weights.contains(d)) {
            return (degrees, weights);
        }
    }
}

pub fn fmt_family(degrees: &[u64], weights: &[u64]) -> String {
    let d: Vec<String> = degrees.iter().map(u64::to_string).collect();
    let a: Vec<String> = weights.iter().map(u64::to_string).collect();
    format!("{} / {}", d.join(","), a.join(","))
}

pub fn fmt_pair(degrees: &[u64], weights: &[u64]) -> String {
    let d: Vec<String> = degrees.iter().map(u64::to_string).collect();
    let a: Vec<String> = weights.iter().map(u64::to_string).collect();
    format!("{}/{}", d.join(","), a.join(","))
}

/// Families small enough for the coordinate-level oracles, drawn from
/// the worked examples and a few classical cases.
pub const CURATED: &[&str] = &[
    "8,8,8 / 2^4,3^5,5^3",
    "8,8,8 / 2^3,3^4,5^3",
    "35 / 5,7,2^5,3^5",
    "35,6 / 5,7,2^5,3^5",
    "231,231,26 / 3^2,7^2,11^2",
    "6 / 1,2,3",
    "6,6 / 1,1,2,2,3,3",
    "4 / 1,1,1,1",
    "10 / 1,1,2,5",
    "6 / 1,1,1,3",
    "12 / 1,1,4,6",
    "30 / 5,6,8,11",
    "6,6 / 1,1,1,2,2,3",
    "4,4 / 1,1,1,1,2,2",
    "3 / 1,1,2,2",
    "3 / 1,1,1,2,2",
    "21 / 1,3,7,10",
    "15 / 1,2,3,5,5",
];

/// Compares every stratum-level answer of the library with the
/// coordinate-level oracles. Returns whether the family is geometric
/// (well-formed, quasi-smooth, not a cone).
pub fn compare_family(degrees: &[u64], weights: &[u64], h: u64) -> Result<bool, String> {
    use wci_core::wci;
    let name = fmt_family(degrees, weights);
    let family = wci::WciFamily::new(degrees.to_vec(), weights).map_err(|e| format!("{name}: {e}"))?;
    let check = |what: &str, ours: bool, oracle: bool| {
        if ours == oracle {
            Ok(())
        } else {
            Err(format!("{name}: {what} library={ours} oracle={oracle}"))
        }
    };
    let pair = family.pair();
    for h in [1, h] {
        check(&format!("{h}-regular"), pair.is_h_regular(h), h_regular(degrees, weights, h))?;
    }
    if family.is_linear_cone() {
        return Ok(false);
    }
    let qs = wci::quasi_smooth(&family).map_err(|e| e.to_string())?.verdict;
    check("quasi_smooth", qs, quasi_smooth(degrees, weights))?;
    let classes = family.weights().classes();
    for mask in 1u64..1 << classes.len() {
        let values: Vec<u64> = (0..classes.len())
            .filter(|&c| mask >> c & 1 == 1)
            .map(|c| classes[c].0)
            .collect();
        let idx: Vec<usize> = (0..weights.len()).filter(|&i| values.contains(&weights[i])).collect();
        let ours = wci::stratum_meets(&family, &values).map_err(|e| e.to_string())?;
        check(&format!("meets {values:?}"), ours, meets_coordinates(degrees, weights, &idx))?;
    }
    if !space_well_formed(weights) {
        return Ok(false);
    }
    let wf = wci::wci_well_formed(&family).map_err(|e| e.to_string())?;
    check("well_formed", wf, family_well_formed(degrees, weights))?;
    if !(wf && qs) {
        return Ok(false);
    }
    let smooth_ours = wci::is_smooth(&family).map_err(|e| e.to_string())?;
    check("smooth", smooth_ours, smooth(degrees, weights))?;
    let index = wci::fundamental_index(&family).map_err(|e| e.to_string())?.index;
    let oracle = fundamental_index(degrees, weights);
    if index != oracle {
        return Err(format!("{name}: fundamental_index library={index} oracle={oracle}"));
    }
    check("index-regular", pair.is_h_regular(index), h_regular(degrees, weights, index))?;
    Ok(true)
}
