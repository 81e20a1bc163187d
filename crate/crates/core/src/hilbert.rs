//! Section dimensions h⁰(X, O_X(k)) = dim A_k, read off the Poincaré
//! series ∏_j (1 − t^{d_j}) / ∏_i (1 − t^{a_i}) of the coordinate ring.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::wci::{analyze, WciFamily};

/// Coefficients of ∏_j (1 − t^{d_j}) / ∏_i (1 − t^{a_i}), extended on
/// demand. Extension takes `&mut self`; share finished prefixes, not the
/// series itself.
#[derive(Debug, Clone)]
pub struct PoincareSeries {
    numerator_degrees: Vec<u64>,
    denominator_weights: Vec<u64>,
    coefficients: Vec<BigInt>,
}

impl PoincareSeries {
    pub fn new(numerator_degrees: &[u64], denominator_weights: &[u64]) -> Self {
        PoincareSeries {
            numerator_degrees: numerator_degrees.to_vec(),
            denominator_weights: denominator_weights.to_vec(),
            coefficients: Vec::new(),
        }
    }

    pub fn for_family(family: &WciFamily) -> Self {
        Self::new(family.degrees(), &family.weights().expanded())
    }

    pub fn numerator_degrees(&self) -> &[u64] {
        &self.numerator_degrees
    }

    pub fn denominator_weights(&self) -> &[u64] {
        &self.denominator_weights
    }

    /// Coefficient of t^k.
    pub fn coefficient(&mut self, k: u64) -> &BigInt {
        self.ensure(k);
        &self.coefficients[k as usize]
    }

    /// Coefficients of t^0..=t^k.
    pub fn coefficients(&mut self, k: u64) -> &[BigInt] {
        self.ensure(k);
        &self.coefficients[..=k as usize]
    }

    fn ensure(&mut self, k: u64) {
        let needed = k as usize + 1;
        if self.coefficients.len() >= needed {
            return;
        }
        let len = needed.max(2 * self.coefficients.len());
        self.coefficients = expand(&self.numerator_degrees, &self.denominator_weights, len);
    }
}

fn expand(numerator: &[u64], denominator: &[u64], len: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); len];
    c[0] = BigInt::one();
    for &d in numerator {
        let d = d as usize;
        // multiply by (1 − t^d), high to low
        for t in (d..len).rev() {
            let (lo, hi) = c.split_at_mut(t);
            hi[0] -= &lo[t - d];
        }
    }
    for &a in denominator {
        let a = a as usize;
        // divide by (1 − t^a)
        for t in a..len {
            let (lo, hi) = c.split_at_mut(t);
            hi[0] += &lo[t - a];
        }
    }
    c
}

/// A section dimension. `formal` is set when the family is not known to
/// be well-formed and quasi-smooth, in which case the value is only the
/// series coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionDimension {
    pub value: BigInt,
    pub formal: bool,
}

pub fn h0(family: &WciFamily, k: i64) -> Result<SectionDimension> {
    if k < 0 {
        return Err(Error::usage(format!("negative twist {k}")));
    }
    let value = PoincareSeries::for_family(family).coefficient(k as u64).clone();
    Ok(SectionDimension {
        value,
        formal: !is_certified(family),
    })
}

fn is_certified(family: &WciFamily) -> bool {
    if family.codim() == 0 {
        return family.weights().len() < 2
            || crate::wci::space_well_formed(family.weights()).unwrap_or(false);
    }
    analyze(family).is_geometric()
}

/// h⁰(O_X(k)) ≥ 1.
pub fn nonvanishing(family: &WciFamily, k: u64) -> Result<bool> {
    if k == 0 {
        return Err(Error::usage("non-vanishing is asked for positive twists"));
    }
    Ok(h0(family, k as i64)?.value.is_positive())
}

/// h⁰ as an unsigned count; `None` if the coefficient is negative.
pub fn h0_unsigned(family: &WciFamily, k: u64) -> Option<BigUint> {
    PoincareSeries::for_family(family)
        .coefficient(k)
        .to_biguint()
}
