//! Sets of lengths `L(B)` in `B(G₀)` and their distance sets.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use crate::atoms::AtomSet;
use crate::error::{Error, Result};
use crate::sequence::SequenceVec;

/// Default cap on memo entries for [`length_set`].
pub const DEFAULT_MEMO_BUDGET: usize = 5_000_000;

/// Default cap on exponent vectors scanned by [`distances_oracle`].
pub const DEFAULT_ORACLE_BUDGET: u128 = 50_000_000;

/// A finite set of factorization lengths.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LengthSet(BTreeSet<u64>);

impl LengthSet {
    pub fn lengths(&self) -> &BTreeSet<u64> {
        &self.0
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn contains(&self, k: u64) -> bool {
        self.0.contains(&k)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn distances(&self) -> BTreeSet<u64> {
        delta_of_lengths(self)
    }
}

impl FromIterator<u64> for LengthSet {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        LengthSet(iter.into_iter().collect())
    }
}

fn bits_to_lengths(bits: &FixedBitSet) -> LengthSet {
    bits.ones().map(|k| k as u64).collect()
}

/// `Δ(L)`: the successive gaps of `L`, empty iff `|L| ≤ 1`.
pub fn delta_of_lengths(lengths: &LengthSet) -> BTreeSet<u64> {
    lengths
        .0
        .iter()
        .zip(lengths.0.iter().skip(1))
        .map(|(a, b)| b - a)
        .collect()
}

/// `L(B)` for a zero-sum sequence `B`.
///
/// Every factorization of `B` contains an atom covering the first support
/// position present in `B`, so `L(B) = ⋃ (1 + L(B·A⁻¹))` over the atoms `A | B`
/// containing that position. The memo is keyed on the residual vector alone.
pub fn length_set(atoms: &AtomSet, b: &SequenceVec, memo_budget: usize) -> Result<LengthSet> {
    let support = atoms.support();
    if !support.is_zero_sum(b)? {
        return Err(Error::NotZeroSum(support.sigma(b)?.to_string()));
    }
    let mut covering: Vec<Vec<&[u32]>> = vec![Vec::new(); support.len()];
    for a in atoms.iter() {
        for p in a.support_positions() {
            covering[p].push(a.exponents());
        }
    }
    let mut search = LengthSearch {
        covering,
        capacity: b.len() as usize + 1,
        memo: HashMap::new(),
        budget: memo_budget,
    };
    let bits = search.lengths(b.exponents())?;
    Ok(bits_to_lengths(&bits))
}

struct LengthSearch<'a> {
    covering: Vec<Vec<&'a [u32]>>,
    capacity: usize,
    memo: HashMap<Vec<u32>, FixedBitSet>,
    budget: usize,
}

impl LengthSearch<'_> {
    fn lengths(&mut self, residual: &[u32]) -> Result<FixedBitSet> {
        let Some(first) = residual.iter().position(|&v| v > 0) else {
            let mut zero = FixedBitSet::with_capacity(self.capacity);
            zero.insert(0);
            return Ok(zero);
        };
        if let Some(hit) = self.memo.get(residual) {
            return Ok(hit.clone());
        }
        let mut out = FixedBitSet::with_capacity(self.capacity);
        let mut rest = vec![0u32; residual.len()];
        for i in 0..self.covering[first].len() {
            let a = self.covering[first][i];
            if !a.iter().zip(residual).all(|(x, y)| x <= y) {
                continue;
            }
            for ((r, &x), &y) in rest.iter_mut().zip(a).zip(residual) {
                *r = y - x;
            }
            let sub = self.lengths(&rest)?;
            for k in sub.ones() {
                out.insert(k + 1);
            }
        }
        if self.memo.len() >= self.budget {
            return Err(Error::BudgetExceeded {
                what: "memoization",
                required: self.memo.len() as u128 + 1,
                budget: self.budget as u128,
            });
        }
        self.memo.insert(residual.to_vec(), out.clone());
        Ok(out)
    }
}

/// Number of exponent vectors with `|B| ≤ max_len` over `k` positions,
/// `C(max_len + k, k)`, saturating.
pub fn oracle_scan_size(k: usize, max_len: u64) -> u128 {
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc.saturating_mul(max_len as u128 + i) / i;
    }
    acc
}

/// `⋃ Δ(L(B))` over every zero-sum `B` with `|B| ≤ max_len`.
///
/// Builds the set of lengths of every such `B` bottom-up from all atoms
/// dividing it, independently of [`length_set`] and of the kernel lattice.
/// This is a finite under-approximation of `Δ(G₀)`.
pub fn distances_oracle(atoms: &AtomSet, max_len: u64, budget: u128) -> Result<BTreeSet<u64>> {
    let support = atoms.support();
    let k = support.len();
    let required = oracle_scan_size(k, max_len);
    if required > budget {
        return Err(Error::BudgetExceeded {
            what: "oracle",
            required,
            budget,
        });
    }
    let group = support.group();
    let elems = support.indices().to_vec();
    let mut zero_sums: Vec<Vec<u32>> = Vec::new();
    let mut v = vec![0u32; k];
    collect_zero_sums(group, &elems, 0, 0, max_len, &mut v, &mut zero_sums);

    let capacity = max_len as usize + 1;
    let mut table: HashMap<Vec<u32>, FixedBitSet> = HashMap::with_capacity(zero_sums.len());
    let mut distances = BTreeSet::new();
    let mut rest = vec![0u32; k];
    // Lexicographic order guarantees every B·A⁻¹ was processed before B.
    for b in zero_sums {
        let mut lengths = FixedBitSet::with_capacity(capacity);
        if b.iter().all(|&x| x == 0) {
            lengths.insert(0);
        } else {
            for a in atoms.iter() {
                let a = a.exponents();
                if !a.iter().zip(&b).all(|(x, y)| x <= y) {
                    continue;
                }
                for ((r, &x), &y) in rest.iter_mut().zip(a).zip(&b) {
                    *r = y - x;
                }
                let sub = &table[&rest];
                for len in sub.ones() {
                    lengths.insert(len + 1);
                }
            }
            let ls = bits_to_lengths(&lengths);
            distances.extend(delta_of_lengths(&ls));
        }
        table.insert(b, lengths);
    }
    Ok(distances)
}

fn collect_zero_sums(
    group: &crate::group::FiniteAbelianGroup,
    elems: &[usize],
    pos: usize,
    sigma: usize,
    remaining: u64,
    v: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if pos == elems.len() {
        if sigma == 0 {
            out.push(v.clone());
        }
        return;
    }
    let mut s = sigma;
    for c in 0..=remaining {
        v[pos] = c as u32;
        collect_zero_sums(group, elems, pos + 1, s, remaining - c, v, out);
        s = group.add_idx(s, elems[pos]);
    }
    v[pos] = 0;
}
