//! The `θ′` reduction: replace `g` by `m·g`, where `m` is the least positive
//! multiple of `g` in `⟨G₀ ∖ {g}⟩`, until every element lies in the span of
//! the others.
//!
//! On sequences the step rewrites `g^v` to `(m·g)^{v/m}`. Every zero-sum `B`
//! has `m | v_g(B)`, and `k` is unchanged because `ord(m·g) = ord(g)/m`.

use rand::Rng;
use serde::Serialize;

use crate::atoms::{atoms_unchecked, enumerate_atoms, AtomSet};
use crate::classify::classify_atoms;
use crate::error::{Error, Result};
use crate::sequence::{SequenceVec, SupportSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TransferStep {
    pub position: usize,
    pub multiplier: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReduction {
    pub original: SupportSet,
    pub reduced: SupportSet,
    pub steps: Vec<TransferStep>,
    /// Product of the multipliers applied at each position.
    pub divisors: Vec<u64>,
}

impl TransferReduction {
    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    /// `θ(B)` over the reduced support.
    pub fn apply(&self, b: &SequenceVec) -> Result<SequenceVec> {
        if !self.original.is_zero_sum(b)? {
            return Err(Error::NotZeroSum(self.original.format_sequence(b)));
        }
        let exps = b
            .exponents()
            .iter()
            .zip(&self.divisors)
            .map(|(&v, &d)| {
                let d = d as u32;
                if v % d == 0 {
                    Ok(v / d)
                } else {
                    Err(Error::Inconsistent(format!(
                        "exponent {v} is not divisible by {d}"
                    )))
                }
            })
            .collect::<Result<Vec<u32>>>()?;
        self.reduced.sequence(exps)
    }
}

/// Every `g ∈ G₀` lies in `⟨G₀ ∖ {g}⟩`.
pub fn spans_itself(support: &SupportSet) -> bool {
    first_reducible(support).is_none()
}

fn first_reducible(support: &SupportSet) -> Option<(usize, u64)> {
    let idx = support.indices();
    let group = support.group();
    (0..idx.len()).find_map(|p| {
        let rest: Vec<usize> = idx
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != p)
            .map(|(_, &x)| x)
            .collect();
        let m = group.min_multiple_in_span_idx(idx[p], &rest);
        (m > 1).then_some((p, m))
    })
}

/// Reduces a minimal non-half-factorial set; other inputs are refused.
pub fn transfer_reduce(support: &SupportSet, budget: u128) -> Result<TransferReduction> {
    let atoms = enumerate_atoms(support, budget)?;
    if !classify_atoms(&atoms)?.minimal_non_hf {
        return Err(Error::NotMinimalNonHalfFactorial);
    }
    reduce_unchecked(support)
}

pub(crate) fn reduce_unchecked(support: &SupportSet) -> Result<TransferReduction> {
    let group = support.group();
    let mut current = support.clone();
    let mut steps = Vec::new();
    let mut divisors = vec![1u64; support.len()];
    // Each step strictly lowers the order of one element, so this terminates.
    while let Some((p, m)) = first_reducible(&current) {
        let g = &current.elements()[p];
        let mg = group.scale(g, m as i64)?;
        if mg.is_zero() || current.position(&mg).is_some() {
            return Err(Error::Inconsistent(format!(
                "reducing {g} in {current} collides with an existing element"
            )));
        }
        current = current.replace(p, mg)?;
        divisors[p] *= m;
        steps.push(TransferStep {
            position: p,
            multiplier: m,
        });
    }
    Ok(TransferReduction {
        original: support.clone(),
        reduced: current,
        steps,
        divisors,
    })
}

/// A random zero-sum sequence: a product of `factors` atoms drawn uniformly.
pub fn random_product<R: Rng>(atoms: &AtomSet, factors: usize, rng: &mut R) -> SequenceVec {
    let mut b = atoms.support().empty_sequence();
    for _ in 0..factors {
        let a = &atoms.atoms()[rng.random_range(0..atoms.len())];
        b = b.mul(a).expect("same support");
    }
    b
}

/// Atoms of the reduced support, for checks that compare both sides.
pub fn reduced_atoms(t: &TransferReduction) -> AtomSet {
    atoms_unchecked(&t.reduced)
}
