//! Whole-group sweeps over subsets of `G ∖ {0}`.
//!
//! Subset `i` of the sweep is a bitmask: bit `b` stands for the nonzero
//! element with group index `b + 1`.
//!
//! Two facts drive the pruning. Atoms of a subset are atoms of every superset,
//! so a superset of a non-half-factorial set is non-half-factorial, a
//! superset of a non-LCN set is non-LCN, and `min Δ` of a set divides `min Δ`
//! of each of its non-half-factorial subsets. Hence `min Δ(G₀) = 1` is known
//! without enumerating atoms as soon as the children `G₀ ∖ {g}` have coprime
//! minimal distances. Also every non-half-factorial set contains a minimal
//! one whose `min Δ` is at least as large, so `max Δ*(G)`, `m(G)` and the
//! extremal sets only depend on minimal non-half-factorial sets.

use std::collections::{BTreeSet, HashSet};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::atoms::atoms_unchecked;
use crate::classify::{
    avoids_pair_complements, has_independent_complement, is_decomposable, is_lcn, is_simple,
};
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::lattice::min_delta;
use crate::sequence::SupportSet;

/// Default cap on the number of nonempty subsets a full sweep may visit.
/// `2^15` covers every group of order at most 16.
pub const DEFAULT_SWEEP_BUDGET: u128 = 1 << 15;

/// Default cap on candidate sets a minimal sweep may evaluate.
pub const DEFAULT_MINIMAL_BUDGET: u128 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    /// Evaluate one representative per orbit of the symmetry group.
    pub symmetry: bool,
    /// Skip atom enumeration when the answer follows from the children.
    pub prune: bool,
    pub budget: u128,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            symmetry: false,
            prune: true,
            budget: DEFAULT_SWEEP_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetRecord {
    pub mask: u64,
    /// 0 for half-factorial sets.
    pub min_delta: u64,
    pub lcn: bool,
    pub minimal_non_hf: bool,
    /// `None` when the record was derived without enumerating atoms.
    pub atom_count: Option<usize>,
}

impl SubsetRecord {
    pub fn half_factorial(&self) -> bool {
        self.min_delta == 0
    }

    pub fn size(&self) -> u32 {
        self.mask.count_ones()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepCounters {
    pub visited: u64,
    pub enumerated: u64,
    pub gcd_pruned: u64,
    pub symmetric: u64,
}

/// Structural verdicts on a minimal non-half-factorial set attaining
/// `max Δ*(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalSet {
    #[serde(serialize_with = "crate::report::serialize_support")]
    pub subset: SupportSet,
    /// `G₀ = {g, −g}` with `ord(g) = exp(G)`.
    pub plus_minus: bool,
    pub lcn: bool,
    /// `|G₀| = r(G) + 1`.
    pub rank_plus_one: bool,
    pub avoids_pair_complements: bool,
    pub independent_complement: bool,
    pub simple: bool,
    pub decomposable: bool,
    /// For LCN sets: atoms with `k = 1` have `|supp| ≤ exp/2`, atoms with
    /// `k > 1` have `k < r` and `S·A⁻¹` is an atom, `S = Π g^{ord(g)}`.
    pub atom_shape: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    /// Every nonempty subset.
    Full,
    /// Only sets all of whose proper subsets are half-factorial.
    Minimal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub group: FiniteAbelianGroup,
    pub mode: SweepMode,
    /// `Δ*(G)`; only a full sweep sees it.
    pub delta_star: Option<BTreeSet<u64>>,
    /// `{min Δ(G₀) : G₀ minimal non-half-factorial}`.
    pub minimal_values: BTreeSet<u64>,
    pub max_delta_star: u64,
    pub m_of_g: u64,
    pub extremal: Vec<ExtremalSet>,
    pub counters: SweepCounters,
    /// Ordered by size, then mask. A minimal sweep keeps only the sets it evaluated.
    pub records: Vec<SubsetRecord>,
}

impl SweepReport {
    pub fn support_of(&self, mask: u64) -> SupportSet {
        support_of(&self.group, mask)
    }

    pub fn minimal_sets(&self) -> impl Iterator<Item = &SubsetRecord> {
        self.records.iter().filter(|r| r.minimal_non_hf)
    }

    /// Everything except the counters, which legitimately depend on pruning.
    pub fn same_result(&self, other: &SweepReport) -> bool {
        self.group == other.group
            && self.mode == other.mode
            && self.delta_star == other.delta_star
            && self.minimal_values == other.minimal_values
            && self.max_delta_star == other.max_delta_star
            && self.m_of_g == other.m_of_g
            && self.extremal == other.extremal
            && self.records == other.records
    }
}

pub fn support_of(group: &FiniteAbelianGroup, mask: u64) -> SupportSet {
    let idx: Vec<usize> = (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
    SupportSet::from_indices(group, &idx)
}

/// Bitmask of a support set in sweep numbering.
pub fn mask_of(support: &SupportSet) -> Result<u64> {
    if support.group().order() > 65 {
        return Err(Error::InvalidParameters("sweep masks need |G| ≤ 65".into()));
    }
    Ok(support.indices().iter().fold(0u64, |m, &i| m | 1 << (i - 1)))
}

struct Evaluation {
    min_delta: u64,
    lcn: bool,
    atom_count: usize,
}

fn evaluate(group: &FiniteAbelianGroup, mask: u64) -> Result<Evaluation> {
    let support = support_of(group, mask);
    let atoms = atoms_unchecked(&support);
    let md = min_delta(&atoms);
    let exp = group.exponent() as i64;
    let mut hf_by_k = true;
    let mut lcn = true;
    for a in atoms.iter() {
        let k = support.scaled_cross_number(a.exponents());
        hf_by_k &= k == exp;
        lcn &= k >= exp;
    }
    if hf_by_k != (md == 0) {
        return Err(Error::Inconsistent(format!(
            "half-factoriality routes disagree on {support}"
        )));
    }
    debug_assert_eq!(lcn, is_lcn(&atoms));
    Ok(Evaluation {
        min_delta: md,
        lcn,
        atom_count: atoms.len(),
    })
}

fn nonzero_count(group: &FiniteAbelianGroup) -> usize {
    group.order() - 1
}

/// Full sweep: every nonempty subset of `G ∖ {0}`, level by level.
pub fn delta_star(group: &FiniteAbelianGroup, opts: &SweepOptions) -> Result<SweepReport> {
    let n = nonzero_count(group);
    let subsets = if n >= 127 { u128::MAX } else { (1u128 << n) - 1 };
    if n > 40 || subsets > opts.budget {
        return Err(Error::BudgetExceeded {
            what: "sweep subsets",
            required: subsets,
            budget: opts.budget,
        });
    }
    let symmetries = if opts.symmetry { symmetry_maps(group) } else { Vec::new() };

    const UNSET: SubsetRecord = SubsetRecord {
        mask: 0,
        min_delta: 0,
        lcn: true,
        minimal_non_hf: false,
        atom_count: Some(0),
    };
    let total = 1usize << n;
    let mut table = vec![UNSET; total];
    let mut levels: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for m in 1..total as u64 {
        levels[m.count_ones() as usize].push(m);
    }
    let mut counters = SweepCounters::default();

    for level in &levels[1..] {
        let reps: Vec<u64> = if symmetries.is_empty() {
            level.clone()
        } else {
            level
                .par_iter()
                .copied()
                .filter(|&m| symmetries.iter().all(|s| apply_map(s, m) >= m))
                .collect()
        };
        counters.symmetric += (level.len() - reps.len()) as u64;
        let table_ref = &table;
        let results: Vec<(SubsetRecord, bool)> = reps
            .par_iter()
            .map(|&m| sweep_one(group, table_ref, m, opts.prune))
            .collect::<Result<_>>()?;
        for (rec, enumerated) in results {
            counters.visited += 1;
            if enumerated {
                counters.enumerated += 1;
            } else {
                counters.gcd_pruned += 1;
            }
            table[rec.mask as usize] = rec;
            for s in &symmetries {
                let img = apply_map(s, rec.mask);
                table[img as usize] = SubsetRecord { mask: img, ..rec };
            }
        }
    }

    let records: Vec<SubsetRecord> = levels[1..].iter().flatten().map(|&m| table[m as usize]).collect();
    let delta_star: BTreeSet<u64> = records
        .iter()
        .filter(|r| !r.half_factorial())
        .map(|r| r.min_delta)
        .collect();
    let m_all = records
        .iter()
        .filter(|r| !r.half_factorial() && r.lcn)
        .map(|r| r.min_delta)
        .max()
        .unwrap_or(0);
    let mut report = finish(group, SweepMode::Full, records, counters)?;
    if report.m_of_g != m_all || delta_star.last().copied().unwrap_or(0) != report.max_delta_star {
        return Err(Error::Inconsistent(
            "minimal sets disagree with the full sweep".into(),
        ));
    }
    report.delta_star = Some(delta_star);
    Ok(report)
}

fn sweep_one(
    group: &FiniteAbelianGroup,
    table: &[SubsetRecord],
    mask: u64,
    prune: bool,
) -> Result<(SubsetRecord, bool)> {
    let mut gcd = 0u64;
    let mut all_hf = true;
    let mut all_lcn = true;
    let mut bits = mask;
    while bits != 0 {
        let b = bits & bits.wrapping_neg();
        bits ^= b;
        let child = mask ^ b;
        if child == 0 {
            continue;
        }
        let c = &table[child as usize];
        gcd = gcd.gcd(&c.min_delta);
        all_hf &= c.half_factorial();
        all_lcn &= c.lcn;
    }
    if prune && gcd == 1 && !all_lcn {
        let rec = SubsetRecord {
            mask,
            min_delta: 1,
            lcn: false,
            minimal_non_hf: false,
            atom_count: None,
        };
        return Ok((rec, false));
    }
    let e = evaluate(group, mask)?;
    let consistent = (gcd == 0 || (e.min_delta != 0 && gcd.is_multiple_of(e.min_delta)))
        && (all_lcn || !e.lcn)
        && (all_hf || e.min_delta != 0);
    if !consistent {
        return Err(Error::Inconsistent(format!(
            "subset {} contradicts its subsets",
            support_of(group, mask)
        )));
    }
    let rec = SubsetRecord {
        mask,
        min_delta: e.min_delta,
        lcn: e.lcn,
        minimal_non_hf: e.min_delta != 0 && all_hf,
        atom_count: Some(e.atom_count),
    };
    Ok((rec, true))
}

/// Sweep restricted to sets whose proper subsets are all half-factorial.
/// Exact for `max Δ*(G)`, `m(G)` and the extremal sets; does not see `Δ*(G)`.
pub fn minimal_sweep(group: &FiniteAbelianGroup, budget: u128) -> Result<SweepReport> {
    let n = nonzero_count(group);
    if n > 64 {
        return Err(Error::InvalidParameters(format!(
            "minimal sweep handles at most 64 nonzero elements, {group} has {n}"
        )));
    }
    let mut counters = SweepCounters::default();
    let mut records = Vec::new();
    let mut frontier: Vec<u64> = vec![0];
    let mut known: HashSet<u64> = HashSet::from([0]);
    while !frontier.is_empty() {
        let candidates: Vec<u64> = frontier
            .par_iter()
            .flat_map_iter(|&s| {
                let top = if s == 0 { 0 } else { 64 - s.leading_zeros() as usize };
                let known = &known;
                (top..n).map(move |e| s | 1 << e).filter(move |&c| {
                    let mut bits = c;
                    while bits != 0 {
                        let b = bits & bits.wrapping_neg();
                        bits ^= b;
                        if !known.contains(&(c ^ b)) {
                            return false;
                        }
                    }
                    true
                })
            })
            .collect();
        counters.visited += candidates.len() as u64;
        if u128::from(counters.visited) > budget {
            return Err(Error::BudgetExceeded {
                what: "minimal sweep candidates",
                required: u128::from(counters.visited),
                budget,
            });
        }
        let level: Vec<SubsetRecord> = candidates
            .par_iter()
            .map(|&m| {
                evaluate(group, m).map(|e| SubsetRecord {
                    mask: m,
                    min_delta: e.min_delta,
                    lcn: e.lcn,
                    minimal_non_hf: e.min_delta != 0,
                    atom_count: Some(e.atom_count),
                })
            })
            .collect::<Result<_>>()?;
        counters.enumerated += level.len() as u64;
        frontier = level.iter().filter(|r| r.half_factorial()).map(|r| r.mask).collect();
        frontier.sort_unstable();
        known = frontier.iter().copied().collect();
        records.extend(level);
    }
    records.sort_unstable_by_key(|r| (r.size(), r.mask));
    finish(group, SweepMode::Minimal, records, counters)
}

fn finish(
    group: &FiniteAbelianGroup,
    mode: SweepMode,
    records: Vec<SubsetRecord>,
    counters: SweepCounters,
) -> Result<SweepReport> {
    let minimal: Vec<&SubsetRecord> = records.iter().filter(|r| r.minimal_non_hf).collect();
    let minimal_values: BTreeSet<u64> = minimal.iter().map(|r| r.min_delta).collect();
    let max_delta_star = minimal_values.last().copied().unwrap_or(0);
    let m_of_g = minimal
        .iter()
        .filter(|r| r.lcn)
        .map(|r| r.min_delta)
        .max()
        .unwrap_or(0);
    let mut extremal_masks: Vec<u64> = minimal
        .iter()
        .filter(|r| max_delta_star > 0 && r.min_delta == max_delta_star)
        .map(|r| r.mask)
        .collect();
    extremal_masks.sort_unstable_by_key(|&m| {
        let s = support_of(group, m);
        s.indices().to_vec()
    });
    let extremal = extremal_masks
        .par_iter()
        .map(|&m| annotate(&support_of(group, m)))
        .collect();
    Ok(SweepReport {
        group: group.clone(),
        mode,
        delta_star: None,
        minimal_values,
        max_delta_star,
        m_of_g,
        extremal,
        counters,
        records,
    })
}

/// Structural verdicts for one extremal set.
pub fn annotate(support: &SupportSet) -> ExtremalSet {
    let group = support.group();
    let exp = group.exponent();
    let r = u64::from(group.rank());
    let idx = support.indices();
    let atoms = atoms_unchecked(support);
    let lcn = is_lcn(&atoms);
    let plus_minus = idx.len() == 2
        && group.neg_idx(idx[0]) == idx[1]
        && group.order_idx(idx[0]) == exp;
    let atom_shape = lcn.then(|| {
        let full = support.full_power_product();
        let scale = exp as i64;
        atoms.iter().all(|a| {
            let k = support.scaled_cross_number(a.exponents());
            if k == scale {
                2 * a.support_positions().count() as u64 <= exp
            } else {
                let rest = full.div(a).expect("atoms divide the full power product");
                k < r as i64 * scale && atoms.contains(&rest)
            }
        })
    });
    ExtremalSet {
        subset: support.clone(),
        plus_minus,
        lcn,
        rank_plus_one: idx.len() as u64 == r + 1,
        avoids_pair_complements: avoids_pair_complements(support),
        independent_complement: has_independent_complement(support),
        simple: is_simple(support),
        decomposable: is_decomposable(support),
        atom_shape,
    }
}

/// `m(G)`: the largest `min Δ` over non-half-factorial LCN sets.
pub fn m_of_g(group: &FiniteAbelianGroup, budget: u128) -> Result<u64> {
    Ok(minimal_sweep(group, budget)?.m_of_g)
}

/// Automorphisms `g ↦ u·π(g)` as maps on sweep bit positions, where `π`
/// permutes components of equal order and `u` is a unit mod `exp(G)`.
/// The identity is left out.
fn symmetry_maps(group: &FiniteAbelianGroup) -> Vec<Vec<u8>> {
    let orders = group.orders();
    let k = orders.len();
    let exp = group.exponent();
    let units: Vec<u64> = (1..exp.max(2)).filter(|u| u.gcd(&exp) == 1).collect();
    let mut perms = Vec::new();
    permutations(&mut (0..k).collect(), 0, orders, &mut perms);
    let mut maps = Vec::new();
    for perm in &perms {
        for &u in &units {
            if u == 1 && perm.iter().enumerate().all(|(i, &p)| i == p) {
                continue;
            }
            let map: Vec<u8> = (1..group.order())
                .map(|x| {
                    let c = group.element_at(x);
                    let mut img = vec![0i64; k];
                    for (i, &v) in c.coords().iter().enumerate() {
                        img[perm[i]] = (u * u64::from(v)) as i64;
                    }
                    let e = group.element(&img).expect("same shape");
                    (group.index_of(&e) - 1) as u8
                })
                .collect();
            maps.push(map);
        }
    }
    maps.sort();
    maps.dedup();
    maps
}

fn permutations(cur: &mut Vec<usize>, at: usize, orders: &[u32], out: &mut Vec<Vec<usize>>) {
    if at == cur.len() {
        out.push(cur.clone());
        return;
    }
    for j in at..cur.len() {
        if orders[cur[j]] != orders[at] {
            continue;
        }
        cur.swap(at, j);
        permutations(cur, at + 1, orders, out);
        cur.swap(at, j);
    }
}

fn apply_map(map: &[u8], mask: u64) -> u64 {
    let mut out = 0u64;
    let mut bits = mask;
    while bits != 0 {
        let b = bits.trailing_zeros();
        bits &= bits - 1;
        out |= 1 << map[b as usize];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(orders: &[u32]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(orders.to_vec()).unwrap()
    }

    #[test]
    fn cyclic_three() {
        let r = delta_star(&g(&[3]), &SweepOptions::default()).unwrap();
        assert_eq!(r.delta_star, Some(BTreeSet::from([1])));
        assert_eq!(r.max_delta_star, 1);
        assert_eq!(r.m_of_g, 0);
    }

    #[test]
    fn klein_group() {
        let r = delta_star(&g(&[2, 2]), &SweepOptions::default()).unwrap();
        assert_eq!(r.max_delta_star, 1);
        assert_eq!(r.m_of_g, 1);
    }

    #[test]
    fn cyclic_five() {
        let r = delta_star(&g(&[5]), &SweepOptions::default()).unwrap();
        assert_eq!(r.delta_star, Some(BTreeSet::from([1, 3])));
        assert!(r.extremal.iter().all(|e| e.plus_minus));
        assert_eq!(r.extremal.len(), 2);
    }

    #[test]
    fn tiny_groups_have_no_distances() {
        for orders in [&[2u32][..], &[]] {
            let grp = if orders.is_empty() { FiniteAbelianGroup::cyclic(1) } else { Ok(g(orders)) };
            let Ok(grp) = grp else { continue };
            let r = delta_star(&grp, &SweepOptions::default()).unwrap();
            assert_eq!(r.delta_star, Some(BTreeSet::new()));
            assert_eq!(r.max_delta_star, 0);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let opts = SweepOptions { budget: 100, ..SweepOptions::default() };
        let err = delta_star(&g(&[8]), &opts).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { required: 127, .. }));
    }

    #[test]
    fn pruning_and_symmetry_do_not_change_results() {
        for orders in [&[6u32][..], &[2, 4], &[3, 3], &[9], &[2, 2, 2]] {
            let grp = g(orders);
            let base = delta_star(&grp, &SweepOptions::default()).unwrap();
            let unpruned =
                delta_star(&grp, &SweepOptions { prune: false, ..SweepOptions::default() }).unwrap();
            let strip = |r: &SweepReport| -> Vec<(u64, u64, bool, bool)> {
                r.records.iter().map(|x| (x.mask, x.min_delta, x.lcn, x.minimal_non_hf)).collect()
            };
            assert_eq!(strip(&base), strip(&unpruned));
            assert_eq!(base.delta_star, unpruned.delta_star);
            let sym =
                delta_star(&grp, &SweepOptions { symmetry: true, ..SweepOptions::default() }).unwrap();
            assert!(base.same_result(&sym), "{grp}");
        }
    }

    #[test]
    fn minimal_sweep_matches_full() {
        for orders in [&[7u32][..], &[2, 4], &[3, 3], &[2, 2, 2], &[10]] {
            let grp = g(orders);
            let full = delta_star(&grp, &SweepOptions::default()).unwrap();
            let min = minimal_sweep(&grp, DEFAULT_MINIMAL_BUDGET).unwrap();
            assert_eq!(full.max_delta_star, min.max_delta_star);
            assert_eq!(full.m_of_g, min.m_of_g);
            assert_eq!(full.extremal, min.extremal);
            let a: Vec<_> = full.minimal_sets().collect();
            let b: Vec<_> = min.minimal_sets().collect();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn symmetry_maps_are_automorphisms() {
        let grp = g(&[2, 4]);
        for map in symmetry_maps(&grp) {
            for x in 1..grp.order() {
                for y in 1..grp.order() {
                    let s = grp.add_idx(x, y);
                    if s == 0 {
                        continue;
                    }
                    let fx = map[x - 1] as usize + 1;
                    let fy = map[y - 1] as usize + 1;
                    assert_eq!(grp.add_idx(fx, fy), map[s - 1] as usize + 1);
                }
            }
        }
    }
}
