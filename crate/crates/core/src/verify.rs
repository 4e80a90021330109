//! End-to-end checks of the structural results the engine is built around.
//! Each check produces one line per claim; a failing line means the
//! implementation is wrong, since every statement checked is a proven identity.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::atoms::{atoms_unchecked, enumerate_atoms};
use crate::classify::{classify_atoms, is_decomposable};
use crate::constructions::{build_construction, listed_atoms, Construction};
use crate::error::{Error, Result};
use crate::factorization::{distances_oracle, length_set, DEFAULT_MEMO_BUDGET};
use crate::group::{abelian_groups_of_order, FiniteAbelianGroup};
use crate::lattice::{min_delta, min_delta_via_kernel};
use crate::report::ratio_string;
use crate::sequence::SupportSet;
use crate::sweep::{delta_star, minimal_sweep, SweepOptions, SweepReport, DEFAULT_MINIMAL_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub subject: String,
    pub claim: String,
    pub ok: bool,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.ok { "OK" } else { "FAIL" };
        write!(f, "{}: {} {}", self.subject, self.claim, verdict)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub lines: Vec<CheckLine>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.lines.iter().all(|l| l.ok)
    }

    fn push(&mut self, subject: impl Into<String>, claim: impl Into<String>, ok: bool) {
        self.lines.push(CheckLine {
            subject: subject.into(),
            claim: claim.into(),
            ok,
        });
    }

    fn extend(&mut self, other: Verification) {
        self.lines.extend(other.lines);
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

/// `max{exp(G) − 2, r(G) − 1}`, the conjectured and proven maximum.
pub fn delta_star_bound(group: &FiniteAbelianGroup) -> u64 {
    let a = group.exponent().saturating_sub(2);
    let b = u64::from(group.rank()).saturating_sub(1);
    a.max(b)
}

/// A full sweep when it fits the budget, a minimal sweep otherwise.
pub fn sweep_group(group: &FiniteAbelianGroup, opts: &SweepOptions) -> Result<SweepReport> {
    match delta_star(group, opts) {
        Err(Error::BudgetExceeded { .. }) => minimal_sweep(group, DEFAULT_MINIMAL_BUDGET),
        other => other,
    }
}

/// Every isomorphism type of order `1..=max_order`.
pub fn groups_up_to(max_order: u64) -> Result<Vec<FiniteAbelianGroup>> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.extend(abelian_groups_of_order(n)?);
    }
    Ok(out)
}

pub fn max_delta_star_line(report: &SweepReport) -> CheckLine {
    let g = &report.group;
    let subject = g.to_string();
    if g.order() <= 2 {
        let empty = match &report.delta_star {
            Some(d) => d.is_empty(),
            None => report.minimal_values.is_empty(),
        };
        return CheckLine {
            subject,
            claim: "Δ* = ∅".into(),
            ok: empty,
        };
    }
    let e = g.exponent().saturating_sub(2);
    let r = u64::from(g.rank()).saturating_sub(1);
    let max = report.max_delta_star;
    let ok = max == e.max(r);
    let rel = if ok { "=" } else { "≠" };
    CheckLine {
        subject,
        claim: format!("max Δ* = {max} {rel} max{{{e},{r}}}"),
        ok,
    }
}

pub fn verify_max_delta_star(reports: &[SweepReport]) -> Verification {
    Verification {
        lines: reports.iter().map(max_delta_star_line).collect(),
    }
}

/// `max Δ*(G) = max{exp(G) − 2, r(G) − 1}` for every group of order at most
/// `max_order`, and `Δ*(G) = ∅` for `|G| ≤ 2`.
pub fn verify_max_delta_star_up_to(max_order: u64, opts: &SweepOptions) -> Result<(Verification, Vec<SweepReport>)> {
    let reports = groups_up_to(max_order)?
        .iter()
        .map(|g| sweep_group(g, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok((verify_max_delta_star(&reports), reports))
}

/// `m(G) = r(G) − 1` for p-groups.
pub fn verify_m_of_p_groups(groups: &[FiniteAbelianGroup]) -> Result<Verification> {
    let mut v = Verification::default();
    for g in groups {
        let m = minimal_sweep(g, DEFAULT_MINIMAL_BUDGET)?.m_of_g;
        let r = u64::from(g.rank()) - 1;
        let rel = if m == r { "=" } else { "≠" };
        v.push(g.to_string(), format!("m(G) = {m} {rel} r-1 = {r}"), m == r);
    }
    Ok(v)
}

pub fn default_p_groups() -> Vec<FiniteAbelianGroup> {
    [&[2u32, 2][..], &[2, 2, 2], &[2, 4], &[4], &[8], &[9], &[3, 3]]
        .iter()
        .map(|o| FiniteAbelianGroup::new(o.to_vec()).expect("valid orders"))
        .collect()
}

/// Structure of the minimal non-half-factorial sets attaining `max Δ*(G)`.
pub fn verify_extremal_structure(report: &SweepReport) -> Verification {
    let g = &report.group;
    let n = g.exponent();
    let r = u64::from(g.rank());
    let subject = g.to_string();
    let mut v = Verification::default();

    let indecomposable = report
        .minimal_sets()
        .all(|rec| !is_decomposable(&report.support_of(rec.mask)));
    v.push(
        subject.clone(),
        format!("{} minimal non-half-factorial sets are indecomposable", report.minimal_sets().count()),
        indecomposable,
    );
    if g.order() <= 2 {
        return v;
    }
    let ext = &report.extremal;
    v.push(subject.clone(), format!("{} extremal sets found", ext.len()), !ext.is_empty());

    if r + 1 < n {
        let ok = ext.iter().all(|e| e.plus_minus);
        v.push(subject.clone(), format!("r = {r} < n-1: every extremal set is {{g,-g}} with ord(g) = {n}"), ok);
    } else if r + 1 == n {
        let ok = ext
            .iter()
            .all(|e| if e.lcn { e.rank_plus_one && e.avoids_pair_complements } else { e.plus_minus });
        v.push(
            subject.clone(),
            format!("r = n-1 = {r}: non-LCN extremal sets are {{g,-g}}, LCN ones have |G0| = r+1"),
            ok,
        );
    } else {
        let ok = ext
            .iter()
            .all(|e| e.lcn && e.rank_plus_one && e.avoids_pair_complements);
        v.push(subject.clone(), format!("r = {r} ≥ n = {n}: every extremal set is LCN with |G0| = r+1"), ok);
    }

    let lcn: Vec<_> = ext.iter().filter(|e| e.lcn).collect();
    if !lcn.is_empty() {
        let ok = lcn.iter().all(|e| e.atom_shape == Some(true)) && r + 1 >= n;
        v.push(
            subject.clone(),
            format!("{} extremal LCN sets satisfy the atom support and cross number bounds", lcn.len()),
            ok,
        );
        if n % 2 == 1 {
            let ok = lcn.iter().all(|e| e.independent_complement);
            v.push(subject, "odd exponent: every extremal LCN set has an independent complement", ok);
        }
    }
    v
}

/// The two non-simple constructions at rank `r`.
pub fn verify_non_simple(which: u32, r: u32) -> Result<Verification> {
    match which {
        1 => verify_odd_construction(r),
        2 => verify_even_construction(r),
        _ => Err(Error::InvalidParameters(format!("--which must be 1 or 2, got {which}"))),
    }
}

fn atom_family_line(kind: &Construction, s: &SupportSet, v: &mut Verification) -> Result<crate::atoms::AtomSet> {
    let atoms = enumerate_atoms(s, u128::MAX)?;
    let expected = listed_atoms(kind)?.expect("listed family exists");
    let found: BTreeSet<(Vec<u32>, Rational64)> = atoms
        .iter()
        .map(|a| (a.exponents().to_vec(), atoms.cross_number(a)))
        .collect();
    let one = Rational64::from_integer(1);
    let mut counts: Vec<(Rational64, usize)> = Vec::new();
    for (_, k) in &found {
        match counts.iter_mut().find(|(x, _)| x == k) {
            Some((_, c)) => *c += 1,
            None => counts.push((*k, 1)),
        }
    }
    counts.sort();
    let summary: Vec<String> = counts
        .iter()
        .map(|(k, c)| format!("{c} with k = {}", ratio_string(k)))
        .collect();
    v.push(
        kind.to_string(),
        format!("{} atoms ({}) match the listed family", atoms.len(), summary.join(", ")),
        found == expected,
    );
    let w1 = found.iter().filter(|(_, k)| *k == one).count();
    v.push(kind.to_string(), format!("{w1} atoms with k = 1, {} with k > 1", found.len() - w1), found.iter().all(|(_, k)| *k >= one));
    Ok(atoms)
}

fn verify_even_construction(r: u32) -> Result<Verification> {
    let kind = Construction::EvenExponent { r };
    let s = build_construction(&kind)?;
    let mut v = Verification::default();
    let subject = kind.to_string();
    let atoms = atom_family_line(&kind, &s, &mut v)?;
    let rec = classify_atoms(&atoms)?;
    let rm1 = u64::from(r) - 1;
    let bound = delta_star_bound(s.group());
    v.push(
        subject.clone(),
        format!("min Δ = {} = r-1 = max{{exp-2, r-1}} = {bound}", rec.min_delta),
        rec.min_delta == rm1 && rm1 == bound,
    );
    v.push(subject.clone(), format!("minimal non-half-factorial = {}", rec.minimal_non_hf), rec.minimal_non_hf);
    v.push(subject.clone(), format!("LCN = {}", rec.lcn), rec.lcn);
    v.push(subject.clone(), format!("simple = {}", rec.simple), !rec.simple);
    v.push(
        subject.clone(),
        format!("some G0\\{{h}} independent = {}", rec.independent_complement),
        !rec.independent_complement,
    );
    let full = s.full_power_product();
    let ls = length_set(&atoms, &full, DEFAULT_MEMO_BUDGET)?;
    let want: BTreeSet<u64> = [2, u64::from(r) + 1].into();
    v.push(
        subject.clone(),
        format!("L(Π g^ord(g)) = {:?}", ls.lengths()),
        *ls.lengths() == want,
    );
    if s.group().order() <= 32 {
        let sweep = minimal_sweep(s.group(), DEFAULT_MINIMAL_BUDGET)?;
        let listed = sweep.extremal.iter().find(|e| e.subset.indices() == sorted_indices(&s).as_slice());
        v.push(
            subject,
            format!("max Δ*(G) = {} and the set is extremal and non-simple", sweep.max_delta_star),
            sweep.max_delta_star == rm1 && listed.is_some_and(|e| !e.simple),
        );
    }
    Ok(v)
}

fn sorted_indices(s: &SupportSet) -> Vec<usize> {
    let mut idx = s.indices().to_vec();
    idx.sort_unstable();
    idx
}

fn verify_odd_construction(r: u32) -> Result<Verification> {
    let kind = Construction::OddExponent { r };
    let s = build_construction(&kind)?;
    let group = s.group();
    let mut v = Verification::default();
    let subject = kind.to_string();
    let atoms = atom_family_line(&kind, &s, &mut v)?;
    let rec = classify_atoms(&atoms)?;
    let rm1 = u64::from(r) - 1;
    let kernel = min_delta_via_kernel(&atoms)?;
    v.push(
        subject.clone(),
        format!("min Δ = {kernel} = r-1 (kernel basis), echelon route agrees"),
        kernel == rm1 && min_delta(&atoms) == kernel,
    );
    v.push(subject.clone(), format!("minimal non-half-factorial = {}", rec.minimal_non_hf), rec.minimal_non_hf);
    v.push(subject.clone(), format!("simple = {}", rec.simple), !rec.simple);

    let k = s.len();
    let (er, g) = (k - 2, k - 1);
    let er_g = [s.elements()[er].clone(), s.elements()[g].clone()];
    let independent = group.is_independent(&er_g)?;
    v.push(subject.clone(), "(e_r, g) is not independent", !independent);
    let idx = s.indices();
    let rest = |skip: usize| -> Vec<usize> {
        idx.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect()
    };
    let comp_indep = group.is_independent_idx(&rest(g)) && group.is_independent_idx(&rest(er));
    let outside = !group.span_indices(&rest(g)).contains(idx[g])
        && !group.span_indices(&rest(er)).contains(idx[er]);
    v.push(
        subject.clone(),
        "G0\\{g} and G0\\{e_r} are independent and miss g and e_r",
        comp_indep && outside,
    );

    // A_3 · A_24 has length 2 and splits into r+1 powers of single elements.
    let listed = listed_atoms(&kind)?.expect("listed family exists");
    let pick = |gexp: u32| {
        listed
            .iter()
            .find(|(e, _)| e[g] == gexp && e[er] == 27 - gexp)
            .map(|(e, _)| s.sequence(e.clone()))
            .expect("listed atom")
    };
    let b = pick(3)?.mul(&pick(24)?)?;
    let ls = length_set(&atoms, &b, DEFAULT_MEMO_BUDGET)?;
    let want: BTreeSet<u64> = [2, u64::from(r) + 1].into();
    v.push(
        subject.clone(),
        format!("L(A_3·A_24) = {:?}", ls.lengths()),
        *ls.lengths() == want,
    );
    let max_len = b.len();
    let observed = distances_oracle(&atoms, max_len, crate::factorization::DEFAULT_ORACLE_BUDGET)?;
    let ok = observed.first() == Some(&rm1) && observed.iter().all(|d| d % rm1 == 0);
    v.push(
        subject,
        format!("distances observed with |B| ≤ {max_len}: {observed:?}, smallest = r-1"),
        ok,
    );
    Ok(v)
}

/// Minimal distances of the two basic constructions, the per-set bounds
/// `min Δ ≤ |G₀| − 2` (LCN) and `min Δ ≤ exp(G) − 2` (some `k < 1`), and the
/// memberships `ord(g) − 2 ∈ Δ*(G)`, `[1, r − 1] ⊆ Δ*(G)`.
pub fn verify_basic_constructions(max_order: u64, opts: &SweepOptions) -> Result<Verification> {
    let mut v = Verification::default();
    for n in 3..=10 {
        let kind = Construction::PlusMinus { n };
        let atoms = atoms_unchecked(&build_construction(&kind)?);
        let md = min_delta(&atoms);
        v.push(
            kind.to_string(),
            format!("{} atoms, min Δ = {md} = n-2", atoms.len()),
            atoms.len() == 3 && md == u64::from(n) - 2,
        );
    }
    for (p, s) in [(2, 2), (2, 3), (3, 2), (5, 2)] {
        let kind = Construction::SumOfBasis { p, s };
        let atoms = atoms_unchecked(&build_construction(&kind)?);
        let md = min_delta(&atoms);
        v.push(kind.to_string(), format!("min Δ = {md} = s-1"), md == u64::from(s) - 1);
    }
    for g in groups_up_to(max_order)? {
        let report = match delta_star(&g, opts) {
            Err(Error::BudgetExceeded { .. }) => continue,
            other => other?,
        };
        v.extend(sweep_bounds(&report));
    }
    Ok(v)
}

fn sweep_bounds(report: &SweepReport) -> Verification {
    let g = &report.group;
    let exp = g.exponent();
    let mut v = Verification::default();
    let delta_star = report.delta_star.clone().unwrap_or_default();
    let mut bounded = true;
    for rec in report.records.iter().filter(|r| !r.half_factorial()) {
        if rec.atom_count.is_none() {
            // Derived as 1 from coprime subsets, which satisfies both bounds.
            continue;
        }
        let size = u64::from(rec.size());
        bounded &= if rec.lcn {
            rec.min_delta + 2 <= size
        } else {
            rec.min_delta + 2 <= exp
        };
    }
    v.push(g.to_string(), "min Δ ≤ |G0|-2 on LCN sets, ≤ exp-2 otherwise", bounded);
    let orders: BTreeSet<u64> = (1..g.order()).map(|i| g.order_idx(i)).filter(|&o| o > 2).collect();
    let members: BTreeSet<u64> = orders
        .iter()
        .map(|o| o - 2)
        .chain(1..u64::from(g.rank()))
        .collect();
    v.push(
        g.to_string(),
        format!("{members:?} ⊆ Δ* = {delta_star:?}"),
        members.is_subset(&delta_star),
    );
    v
}

/// `max(Δ*(C_n) ∖ {n − 2}) = ⌊n/2⌋ − 1`.
pub fn cyclic_second_maximum_line(report: &SweepReport) -> Result<CheckLine> {
    let g = &report.group;
    let n = g.order() as u64;
    let ds = report
        .delta_star
        .as_ref()
        .ok_or_else(|| Error::InvalidParameters("needs a full sweep".into()))?;
    let second = ds.iter().filter(|&&d| d != n - 2).max().copied().unwrap_or(0);
    Ok(CheckLine {
        subject: g.to_string(),
        claim: format!("max(Δ* \\ {{{}}}) = {second} = ⌊n/2⌋-1", n - 2),
        ok: g.components() == 1 && second == n / 2 - 1,
    })
}
