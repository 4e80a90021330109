//! Enumeration of `A(G₀)`, the minimal zero-sum sequences over a support set.
//!
//! The enumerator walks support positions in order and grows exponent
//! counts one copy at a time while the partial sequence stays zero-sum free.
//! A sequence `P·g` with `P` zero-sum free and `σ(P·g) = 0` is an atom: every
//! proper subsequence omits at least one term, and dropping a single copy of
//! `g` leaves `P`. Conversely every atom `A` is reached this way, with `g`
//! the last support element of `A`. Zero-sum freeness is tracked with the
//! set of nonempty subsums `Σ(P)` as a bitset over group indices.

use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use num_rational::Rational64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sequence::{SequenceVec, SupportSet};

/// Default cap on `Π_g (ord(g)+1)` for the public enumeration entry point.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1_000_000_000_000_000;

/// The atoms of `B(G₀)` in lexicographic order of their exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomSet {
    support: SupportSet,
    atoms: Vec<SequenceVec>,
}

impl AtomSet {
    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    pub fn atoms(&self) -> &[SequenceVec] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SequenceVec> {
        self.atoms.iter()
    }

    pub fn contains(&self, s: &SequenceVec) -> bool {
        self.atoms.binary_search(s).is_ok()
    }

    pub fn index_of(&self, s: &SequenceVec) -> Option<usize> {
        self.atoms.binary_search(s).ok()
    }

    /// The `|G₀| × |A(G₀)|` matrix whose column `j` is atom `j`.
    pub fn exponent_matrix(&self) -> Vec<Vec<u32>> {
        (0..self.support.len())
            .map(|p| self.atoms.iter().map(|a| a.0[p]).collect())
            .collect()
    }

    /// `D(G₀)`, the maximal atom length (0 for an empty support).
    pub fn davenport(&self) -> u64 {
        self.atoms.iter().map(SequenceVec::len).max().unwrap_or(0)
    }

    /// `K(G₀)`, the maximal cross number of an atom (0 for an empty support).
    pub fn cross_number_max(&self) -> Rational64 {
        self.atoms
            .iter()
            .map(|a| self.support.cross_number_unchecked(&a.0))
            .max()
            .unwrap_or_else(|| Rational64::from_integer(0))
    }

    pub fn cross_number(&self, atom: &SequenceVec) -> Rational64 {
        self.support.cross_number_unchecked(&atom.0)
    }

    /// Atoms whose support avoids every position with `allowed[p] == false`.
    /// These are exactly the atoms of the corresponding sub-support.
    pub fn restricted<'a>(&'a self, allowed: &'a [bool]) -> impl Iterator<Item = &'a SequenceVec> {
        self.atoms
            .iter()
            .filter(move |a| a.0.iter().zip(allowed).all(|(&v, &ok)| ok || v == 0))
    }

    /// Re-checks every structural invariant of an atom set: each atom is
    /// nonempty and zero-sum, atoms are pairwise incomparable, every
    /// `g^{ord(g)}` is present and no exponent exceeds `ord(g)`.
    pub fn certify(&self) -> Result<()> {
        let orders = self.support.orders();
        for (i, a) in self.atoms.iter().enumerate() {
            if a.is_empty() || self.support.sigma_idx(&a.0) != 0 {
                return Err(Error::Inconsistent(format!("atom {i} is not a nonempty zero-sum")));
            }
            for (p, (&v, &n)) in a.0.iter().zip(orders).enumerate() {
                if v > n || (v == n && a.support_positions().count() > 1) {
                    return Err(Error::Inconsistent(format!(
                        "atom {i} has exponent {v} at position {p} with ord {n}"
                    )));
                }
            }
        }
        for (p, &n) in orders.iter().enumerate() {
            if !self.contains(&self.support.power(p, n)) {
                return Err(Error::Inconsistent(format!("missing g^ord(g) at position {p}")));
            }
        }
        for (i, a) in self.atoms.iter().enumerate() {
            for b in &self.atoms[i + 1..] {
                if a.0.iter().zip(&b.0).all(|(x, y)| x <= y)
                    || a.0.iter().zip(&b.0).all(|(x, y)| x >= y)
                {
                    return Err(Error::Inconsistent(format!("atoms {a:?} and {b:?} are comparable")));
                }
            }
        }
        Ok(())
    }
}

/// `Π_g (ord(g)+1)`, the size of the exponent grid the atoms live in.
pub fn grid_bound(support: &SupportSet) -> u128 {
    support
        .orders()
        .iter()
        .fold(1u128, |acc, &n| acc.saturating_mul(n as u128 + 1))
}

/// Enumerates `A(G₀)` and certifies the result, refusing when the exponent
/// grid exceeds `budget`.
pub fn enumerate_atoms(support: &SupportSet, budget: u128) -> Result<AtomSet> {
    let required = grid_bound(support);
    if required > budget {
        return Err(Error::BudgetExceeded {
            what: "enumeration",
            required,
            budget,
        });
    }
    let atoms = atoms_unchecked(support);
    atoms.certify()?;
    Ok(atoms)
}

/// Enumeration without the budget check or the quadratic certification pass.
pub(crate) fn atoms_unchecked(support: &SupportSet) -> AtomSet {
    let walker = Walker::new(support);
    let k = support.len();
    let mut atoms: Vec<SequenceVec> = (0..k)
        .into_par_iter()
        .flat_map_iter(|j| {
            let mut out = Vec::new();
            let mut exps = vec![0u32; k];
            let empty = FixedBitSet::with_capacity(walker.size);
            let _ = walker.branch(j, &empty, 0, &mut exps, &mut |e: &[u32]| {
                out.push(SequenceVec(e.to_vec()));
                ControlFlow::Continue(())
            });
            out
        })
        .collect();
    atoms.sort_unstable();
    AtomSet {
        support: support.clone(),
        atoms,
    }
}

struct Walker {
    size: usize,
    orders: Vec<u32>,
    elems: Vec<usize>,
    negs: Vec<usize>,
    /// `shift[p][x] = x + g_p` on group indices.
    shift: Vec<Vec<u32>>,
}

impl Walker {
    fn new(support: &SupportSet) -> Self {
        let group = support.group();
        let size = group.order();
        let elems = support.indices().to_vec();
        let shift = elems
            .iter()
            .map(|&g| (0..size).map(|x| group.add_idx(x, g) as u32).collect())
            .collect();
        Walker {
            size,
            orders: support.orders().to_vec(),
            negs: elems.iter().map(|&g| group.neg_idx(g)).collect(),
            elems,
            shift,
        }
    }

    fn walk<F>(
        &self,
        start: usize,
        sums: &FixedBitSet,
        sigma: usize,
        exps: &mut [u32],
        sink: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        for j in start..self.orders.len() {
            self.branch(j, sums, sigma, exps, sink)?;
        }
        ControlFlow::Continue(())
    }

    /// All zero-sum free extensions whose smallest new position is `j`.
    fn branch<F>(
        &self,
        j: usize,
        sums: &FixedBitSet,
        sigma: usize,
        exps: &mut [u32],
        sink: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        let shift = &self.shift[j];
        let mut cur = sums.clone();
        let mut cur_sigma = sigma;
        let mut result = ControlFlow::Continue(());
        for c in 1..=self.orders[j] {
            let next_sigma = shift[cur_sigma] as usize;
            if next_sigma == 0 {
                exps[j] = c;
                result = sink(exps);
                break;
            }
            if cur.contains(self.negs[j]) {
                break;
            }
            let mut next = cur.clone();
            for x in cur.ones() {
                next.insert(shift[x] as usize);
            }
            next.insert(self.elems[j]);
            exps[j] = c;
            if self.walk(j + 1, &next, next_sigma, exps, sink).is_break() {
                result = ControlFlow::Break(());
                break;
            }
            cur = next;
            cur_sigma = next_sigma;
        }
        exps[j] = 0;
        result
    }
}
