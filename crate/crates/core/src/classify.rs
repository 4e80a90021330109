//! Structural predicates on a single support set.

use num_rational::Rational64;
use serde::Serialize;

use crate::atoms::{enumerate_atoms, AtomSet};
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::lattice::{generator_of_columns, is_half_factorial, min_delta};
use crate::sequence::SupportSet;

/// Everything `classify` reports about one support set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub subset: String,
    pub size: usize,
    pub half_factorial: bool,
    pub lcn: bool,
    pub minimal_non_hf: bool,
    pub decomposable: bool,
    pub simple: bool,
    /// Some `h ∈ G₀` leaves `G₀ ∖ {h}` independent.
    pub independent_complement: bool,
    pub min_delta: u64,
    pub davenport: u64,
    #[serde(serialize_with = "crate::report::serialize_ratio")]
    pub cross_number: Rational64,
    pub atom_count: usize,
}

impl ClassificationRecord {
    /// Checks the implications every record must satisfy.
    pub fn check_invariants(&self) -> Result<()> {
        let bad = (self.half_factorial && self.min_delta != 0)
            || (!self.half_factorial && self.min_delta == 0)
            || (self.minimal_non_hf && self.half_factorial)
            || (self.simple && self.decomposable);
        if bad {
            return Err(Error::Inconsistent(format!("contradictory flags on {}", self.subset)));
        }
        Ok(())
    }
}

pub fn classify(support: &SupportSet, budget: u128) -> Result<ClassificationRecord> {
    classify_atoms(&enumerate_atoms(support, budget)?)
}

pub fn classify_atoms(atoms: &AtomSet) -> Result<ClassificationRecord> {
    let support = atoms.support();
    let half_factorial = is_half_factorial(atoms)?;
    let md = min_delta(atoms);
    let rec = ClassificationRecord {
        subset: support.to_string(),
        size: support.len(),
        half_factorial,
        lcn: is_lcn(atoms),
        minimal_non_hf: !half_factorial && maximal_subsets_half_factorial(atoms),
        decomposable: is_decomposable(support),
        simple: is_simple(support),
        independent_complement: has_independent_complement(support),
        min_delta: md,
        davenport: atoms.davenport(),
        cross_number: atoms.cross_number_max(),
        atom_count: atoms.len(),
    };
    rec.check_invariants()?;
    Ok(rec)
}

/// Every atom has cross number at least 1.
pub fn is_lcn(atoms: &AtomSet) -> bool {
    let support = atoms.support();
    let exp = support.group().exponent() as i64;
    atoms
        .iter()
        .all(|a| support.scaled_cross_number(a.exponents()) >= exp)
}

/// Half-factoriality passes to subsets, so checking the `|G₀|` sets
/// `G₀ ∖ {g}` decides minimality. Their atoms are the atoms of `G₀` avoiding `g`.
fn maximal_subsets_half_factorial(atoms: &AtomSet) -> bool {
    let n = atoms.support().len();
    (0..n).all(|skip| {
        let allowed: Vec<bool> = (0..n).map(|p| p != skip).collect();
        generator_of_columns(n, atoms.restricted(&allowed).map(|a| a.exponents())) == 0
    })
}

/// `⟨G₀⟩ = ⟨G₁⟩ ⊕ ⟨G₂⟩` for some partition into two nonempty parts.
pub fn is_decomposable(support: &SupportSet) -> bool {
    let idx = support.indices();
    let n = idx.len();
    if n < 2 {
        return false;
    }
    let group = support.group();
    let whole = group.span_order(idx);
    // Fixing the last element in G₂ enumerates each unordered partition once.
    (1u64..(1 << (n - 1))).any(|mask| {
        let (g1, g2): (Vec<usize>, Vec<usize>) = split(idx, mask);
        group.span_order(&g1) * group.span_order(&g2) == whole
    })
}

fn split(idx: &[usize], mask: u64) -> (Vec<usize>, Vec<usize>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, &x) in idx.iter().enumerate() {
        if mask >> i & 1 == 1 {
            a.push(x);
        } else {
            b.push(x);
        }
    }
    (a, b)
}

fn without(idx: &[usize], skip: &[usize]) -> Vec<usize> {
    idx.iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .map(|(_, &x)| x)
        .collect()
}

fn in_span(group: &FiniteAbelianGroup, g: usize, gens: &[usize]) -> bool {
    group.span_indices(gens).contains(g)
}

/// Some `g ∈ G₀` has `G₀ ∖ {g}` independent, `g ∈ ⟨G₀ ∖ {g}⟩`, and
/// `g ∉ ⟨E⟩` for every proper subset `E` of `G₀ ∖ {g}`.
pub fn is_simple(support: &SupportSet) -> bool {
    let idx = support.indices();
    let group = support.group();
    (0..idx.len()).any(|i| {
        let rest = without(idx, &[i]);
        group.is_independent_idx(&rest)
            && in_span(group, idx[i], &rest)
            // ⟨E⟩ grows with E, so the maximal proper subsets suffice.
            && (0..rest.len()).all(|j| !in_span(group, idx[i], &without(&rest, &[j])))
    })
}

pub fn has_independent_complement(support: &SupportSet) -> bool {
    let idx = support.indices();
    (0..idx.len()).any(|i| support.group().is_independent_idx(&without(idx, &[i])))
}

/// For all distinct `h, h' ∈ G₀`: `h ∉ ⟨G₀ ∖ {h, h'}⟩`.
pub fn avoids_pair_complements(support: &SupportSet) -> bool {
    let idx = support.indices();
    let group = support.group();
    (0..idx.len()).all(|i| {
        (0..idx.len())
            .filter(|&j| j != i)
            .all(|j| !in_span(group, idx[i], &without(idx, &[i, j])))
    })
}
