//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the verdict lines are always printed.
//! Every criterion compares the library against values computed here by
//! independent means (brute force, exact rationals, hard-coded counts).

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use num_integer::Integer;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zsdelta::atoms::enumerate_atoms;
use zsdelta::classify::{classify, classify_atoms, has_independent_complement, is_simple};
use zsdelta::constructions::{build_construction, Construction};
use zsdelta::factorization::{distances_oracle, length_set, DEFAULT_MEMO_BUDGET};
use zsdelta::group::{FiniteAbelianGroup, GroupElement};
use zsdelta::lattice::{is_half_factorial, min_delta, min_delta_via_kernel};
use zsdelta::parse::{parse_group, parse_subset};
use zsdelta::sequence::SupportSet;
use zsdelta::sweep::{minimal_sweep, SweepOptions, SweepReport};
use zsdelta::transfer::{random_product, reduced_atoms, spans_itself, transfer_reduce};
use zsdelta::verify::{self, Verification};

type Failures = Vec<String>;

macro_rules! check {
    ($fails:expr, $cond:expr, $($msg:tt)+) => {
        if !$cond {
            $fails.push(format!($($msg)+));
        }
    };
}

fn lines_ok(fails: &mut Failures, v: &Verification) {
    for l in v.lines.iter().filter(|l| !l.ok) {
        fails.push(l.to_string());
    }
}

fn group(orders: &[u32]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(orders.to_vec()).unwrap()
}

fn elem(g: &FiniteAbelianGroup, c: &[i64]) -> GroupElement {
    g.element(c).unwrap()
}

fn order(g: &FiniteAbelianGroup, x: &GroupElement) -> u32 {
    // Smallest k with k·x = 0, by repeated addition.
    let mut k = 1;
    let mut y = x.clone();
    while !y.is_zero() {
        y = g.add(&y, x).unwrap();
        k += 1;
    }
    k
}

/// `Σ v_i / ord(g_i)` in exact rationals.
fn cross(s: &SupportSet, exps: &[u32]) -> Rational64 {
    let g = s.group();
    s.elements()
        .iter()
        .zip(exps)
        .map(|(x, &v)| Rational64::new(v as i64, order(g, x) as i64))
        .sum()
}

fn is_zero_sum(s: &SupportSet, exps: &[u32]) -> bool {
    let g = s.group();
    let mut acc = g.zero();
    for (x, &v) in s.elements().iter().zip(exps) {
        acc = g.add(&acc, &g.scale(x, v as i64).unwrap()).unwrap();
    }
    acc.is_zero()
}

/// All atoms by exhaustive search over `0 ≤ v_i ≤ ord(g_i)`: the minimal
/// nonzero zero-sum vectors under the componentwise order.
fn brute_atoms(s: &SupportSet) -> BTreeSet<Vec<u32>> {
    let bounds: Vec<u32> = s.elements().iter().map(|x| order(s.group(), x)).collect();
    let mut zero_sums = Vec::new();
    let mut v = vec![0u32; bounds.len()];
    loop {
        if v.iter().any(|&x| x > 0) && is_zero_sum(s, &v) {
            zero_sums.push(v.clone());
        }
        let mut i = 0;
        while i < v.len() && v[i] == bounds[i] {
            v[i] = 0;
            i += 1;
        }
        if i == v.len() {
            break;
        }
        v[i] += 1;
    }
    zero_sums.sort_by_key(|v| v.iter().sum::<u32>());
    let mut atoms: Vec<Vec<u32>> = Vec::new();
    for z in zero_sums {
        if !atoms.iter().any(|a| a.iter().zip(&z).all(|(x, y)| x <= y)) {
            atoms.push(z);
        }
    }
    atoms.into_iter().collect()
}

fn library_atoms(s: &SupportSet) -> BTreeSet<Vec<u32>> {
    enumerate_atoms(s, u128::MAX)
        .unwrap()
        .iter()
        .map(|a| a.exponents().to_vec())
        .collect()
}

fn gcd_all(xs: &BTreeSet<u64>) -> u64 {
    xs.iter().fold(0, |g, &x| g.gcd(&x))
}

/// A fixed oracle horizon: twice the total order of the support.
fn oracle_horizon(s: &SupportSet) -> u64 {
    2 * s.elements().iter().map(|x| order(s.group(), x) as u64).sum::<u64>()
}

fn plus_minus(n: u32) -> SupportSet {
    let g = group(&[n]);
    SupportSet::new(g.clone(), vec![elem(&g, &[1]), elem(&g, &[n as i64 - 1])]).unwrap()
}

fn sum_of_basis(p: u32, s: usize) -> SupportSet {
    let g = group(&vec![p; s]);
    let mut elems = vec![elem(&g, &vec![1; s])];
    for i in 0..s {
        let mut c = vec![0i64; s];
        c[i] = 1;
        elems.push(elem(&g, &c));
    }
    SupportSet::new(g, elems).unwrap()
}

fn same_elements(a: &SupportSet, b: &SupportSet) -> bool {
    let x: BTreeSet<_> = a.elements().iter().collect();
    let y: BTreeSet<_> = b.elements().iter().collect();
    a.group() == b.group() && x == y
}

fn criterion_1() -> Failures {
    let mut f = Failures::new();
    for n in 3..=10u32 {
        let s = plus_minus(n);
        let rec = classify(&s, u128::MAX).unwrap();
        check!(f, rec.atom_count == 3, "C{n}: {} atoms, want 3", rec.atom_count);
        check!(f, rec.min_delta == (n - 2) as u64, "C{n}: min Δ = {}, want {}", rec.min_delta, n - 2);
        check!(f, same_elements(&s, &build_construction(&Construction::PlusMinus { n }).unwrap()), "C{n}: construction differs");
        let brute = brute_atoms(&s);
        check!(f, brute.len() == 3 && brute == library_atoms(&s), "C{n}: brute-force atoms differ");
        let seen = distances_oracle(&enumerate_atoms(&s, u128::MAX).unwrap(), 2 * n as u64, u128::MAX).unwrap();
        check!(f, seen == BTreeSet::from([(n - 2) as u64]), "C{n}: observed distances {seen:?}");
    }
    f
}

fn criterion_2() -> Failures {
    let mut f = Failures::new();
    for (p, s) in [(2u32, 2usize), (2, 3), (3, 2), (5, 2)] {
        let set = sum_of_basis(p, s);
        let atoms = enumerate_atoms(&set, u128::MAX).unwrap();
        let md = min_delta(&atoms);
        check!(f, md == s as u64 - 1, "C{p}^{s}: min Δ = {md}, want {}", s - 1);
        check!(f, min_delta_via_kernel(&atoms).unwrap() == md, "C{p}^{s}: kernel route differs");
        check!(
            f,
            same_elements(&set, &build_construction(&Construction::SumOfBasis { p, s: s as u32 }).unwrap()),
            "C{p}^{s}: construction differs"
        );
        check!(f, brute_atoms(&set) == library_atoms(&set), "C{p}^{s}: brute-force atoms differ");
        let seen = distances_oracle(&atoms, oracle_horizon(&set), u128::MAX).unwrap();
        check!(f, gcd_all(&seen) == md, "C{p}^{s}: observed distances {seen:?}");
    }
    f
}

/// Number of abelian groups of order 1..=16 up to isomorphism.
const GROUP_COUNTS: [usize; 16] = [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5];

fn criterion_3(reports: &[SweepReport]) -> Failures {
    let mut f = Failures::new();
    let mut by_order = [0usize; 16];
    let mut seen = BTreeSet::new();
    for r in reports {
        let g = &r.group;
        by_order[g.order() - 1] += 1;
        check!(f, seen.insert(g.orders().to_vec()), "{g} listed twice");
        if g.order() <= 2 {
            check!(f, r.delta_star.as_ref().is_some_and(|d| d.is_empty()), "{g}: Δ* not empty");
            continue;
        }
        // Invariant factors n_1 | n_2 | …, so the component count is the rank.
        check!(f, g.orders().windows(2).all(|w| w[1] % w[0] == 0), "{g}: not in invariant-factor form");
        let exp = g.orders().iter().fold(1u64, |l, &o| l.lcm(&(o as u64)));
        let rank = g.orders().len() as u64;
        let want = (exp - 2).max(rank - 1);
        let max = r.delta_star.as_ref().and_then(|d| d.iter().max().copied());
        check!(f, max == Some(want), "{g}: max Δ* = {max:?}, want {want}");
    }
    check!(f, by_order == GROUP_COUNTS, "groups per order {by_order:?}");
    f
}

fn criterion_4(reports: &[SweepReport]) -> Failures {
    let mut f = Failures::new();
    for n in [5u64, 6, 7, 8, 10] {
        let Some(r) = reports.iter().find(|r| r.group.orders() == [n as u32]) else {
            f.push(format!("C{n}: no sweep"));
            continue;
        };
        let ds = r.delta_star.clone().unwrap_or_default();
        let second = ds.iter().filter(|&&d| d != n - 2).max().copied();
        check!(f, ds.contains(&(n - 2)), "C{n}: Δ* = {ds:?} misses n-2");
        check!(f, second == Some(n / 2 - 1), "C{n}: second maximum {second:?}, want {}", n / 2 - 1);
        lines_ok(&mut f, &Verification { lines: vec![verify::cyclic_second_maximum_line(r).unwrap()] });
    }
    f
}

fn criterion_5() -> Failures {
    let mut f = Failures::new();
    let groups: Vec<FiniteAbelianGroup> = [&[2u32, 2][..], &[2, 2, 2], &[2, 4], &[4], &[8], &[9], &[3, 3]]
        .iter()
        .map(|o| group(o))
        .collect();
    for g in &groups {
        let m = minimal_sweep(g, u128::MAX).unwrap().m_of_g;
        let want = g.orders().len() as u64 - 1;
        check!(f, m == want, "{g}: m(G) = {m}, want {want}");
    }
    lines_ok(&mut f, &verify::verify_m_of_p_groups(&groups).unwrap());
    f
}

/// Atoms keyed by element, so position order does not matter.
fn keyed(s: &SupportSet, atoms: &BTreeSet<Vec<u32>>) -> BTreeSet<BTreeMap<GroupElement, u32>> {
    atoms
        .iter()
        .map(|a| s.elements().iter().cloned().zip(a.iter().copied()).filter(|&(_, v)| v > 0).collect())
        .collect()
}

fn construction_checks(
    f: &mut Failures,
    label: &str,
    s: &SupportSet,
    listed: &[[u32; 4]],
    k_counts: &[(Rational64, usize)],
) -> zsdelta::atoms::AtomSet {
    let listed: BTreeSet<Vec<u32>> = listed.iter().map(|a| a.to_vec()).collect();
    let brute = brute_atoms(s);
    let atoms = enumerate_atoms(s, u128::MAX).unwrap();
    let found: BTreeSet<Vec<u32>> = atoms.iter().map(|a| a.exponents().to_vec()).collect();
    check!(f, brute == listed, "{label}: brute-force atoms differ from the listed family");
    check!(f, found == listed, "{label}: enumerated atoms differ from the listed family");
    let mut counts: BTreeMap<Rational64, usize> = BTreeMap::new();
    for a in &listed {
        *counts.entry(cross(s, a)).or_default() += 1;
    }
    let want: BTreeMap<Rational64, usize> = k_counts.iter().copied().collect();
    check!(f, counts == want, "{label}: cross numbers {counts:?}, want {want:?}");

    let built = build_construction(&label.parse().unwrap()).unwrap();
    check!(f, same_elements(s, &built), "{label}: construction differs");
    let built_atoms = library_atoms(&built);
    check!(f, keyed(&built, &built_atoms) == keyed(s, &listed), "{label}: construction atoms differ");
    atoms
}

fn criterion_6() -> Failures {
    let mut f = Failures::new();
    let g = parse_group("C2xC4^2").unwrap();
    // f = e1+e2, e2, e3, g = e1+e3
    let s = parse_subset(&g, "(1,1,0);(0,1,0);(0,0,1);(1,0,1)").unwrap();
    let listed = [
        [4, 0, 0, 0],
        [0, 4, 0, 0],
        [0, 0, 4, 0],
        [0, 0, 0, 4],
        [2, 2, 0, 0],
        [0, 0, 2, 2],
        [1, 3, 3, 1],
        [3, 1, 3, 1],
        [1, 3, 1, 3],
        [3, 1, 1, 3],
    ];
    let one = Rational64::from_integer(1);
    let two = Rational64::from_integer(2);
    let atoms = construction_checks(&mut f, "nonsimple-even:3", &s, &listed, &[(one, 6), (two, 4)]);

    let rec = classify_atoms(&atoms).unwrap();
    check!(f, rec.min_delta == 2, "min Δ = {}", rec.min_delta);
    check!(f, min_delta_via_kernel(&atoms).unwrap() == 2, "kernel route differs");
    check!(f, rec.minimal_non_hf && rec.lcn, "not a minimal non-half-factorial LCN set");
    check!(f, !rec.simple && !is_simple(&s), "reported simple");
    check!(f, !rec.independent_complement && !has_independent_complement(&s), "some complement is independent");
    // Independent complement check by subgroup sizes.
    for h in 0..s.len() {
        let rest: Vec<GroupElement> = (0..s.len()).filter(|&i| i != h).map(|i| s.elements()[i].clone()).collect();
        let span = g.subgroup_closure(&rest).unwrap().len() as u64;
        let prod: u64 = rest.iter().map(|x| order(&g, x) as u64).product();
        check!(f, span != prod, "G0 without position {h} is independent");
    }
    let sweep = minimal_sweep(&g, u128::MAX).unwrap();
    check!(f, sweep.max_delta_star == 2, "max Δ*(G) = {}", sweep.max_delta_star);
    let seen = distances_oracle(&atoms, 16, u128::MAX).unwrap();
    check!(f, seen == BTreeSet::from([2]), "observed distances {seen:?}");
    lines_ok(&mut f, &verify::verify_non_simple(2, 3).unwrap());
    f
}

fn criterion_7() -> Failures {
    let mut f = Failures::new();
    let g = parse_group("C9^2xC27").unwrap();
    let s = parse_subset(&g, "(3,0,0);(0,3,0);(0,0,1);(1,1,1)").unwrap();
    let listed = [
        [3, 0, 0, 0],
        [0, 3, 0, 0],
        [0, 0, 27, 0],
        [0, 0, 0, 27],
        [0, 0, 18, 9],
        [0, 0, 9, 18],
        [2, 2, 24, 3],
        [1, 1, 21, 6],
        [2, 2, 15, 12],
        [1, 1, 12, 15],
        [2, 2, 6, 21],
        [1, 1, 3, 24],
    ];
    let k = |n| Rational64::new(n, 3);
    let atoms = construction_checks(&mut f, "nonsimple-odd:3", &s, &listed, &[(k(3), 6), (k(5), 3), (k(7), 3)]);

    check!(f, min_delta_via_kernel(&atoms).unwrap() == 2, "kernel min Δ differs from 2");
    check!(f, min_delta(&atoms) == 2, "echelon min Δ differs from 2");
    let a3 = s.sequence(vec![2, 2, 24, 3]).unwrap();
    let a24 = s.sequence(vec![1, 1, 3, 24]).unwrap();
    let b = a3.mul(&a24).unwrap();
    let ls = length_set(&atoms, &b, DEFAULT_MEMO_BUDGET).unwrap();
    check!(f, ls.lengths() == &BTreeSet::from([2, 4]), "L(A3·A24) = {:?}", ls.lengths());
    let seen = distances_oracle(&atoms, b.len(), u128::MAX).unwrap();
    check!(f, seen.contains(&2) && gcd_all(&seen) == 2, "observed distances {seen:?}");
    check!(f, !is_simple(&s), "reported simple");
    lines_ok(&mut f, &verify::verify_non_simple(1, 3).unwrap());
    f
}

fn criterion_8() -> Failures {
    let mut f = Failures::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let groups: Vec<FiniteAbelianGroup> = verify::groups_up_to(9)
        .unwrap()
        .into_iter()
        .filter(|g| g.order() >= 2)
        .collect();
    let mut samples = 0;
    let mut non_hf = 0;
    while samples < 240 {
        let g = &groups[rng.random_range(0..groups.len())];
        let nonzero: Vec<GroupElement> = g.elements().filter(|x| !x.is_zero()).collect();
        let size = rng.random_range(1..=nonzero.len().min(4));
        let mut pool = nonzero.clone();
        let mut pick = Vec::new();
        for _ in 0..size {
            pick.push(pool.swap_remove(rng.random_range(0..pool.len())));
        }
        let s = SupportSet::new(g.clone(), pick).unwrap();
        samples += 1;

        let atoms = enumerate_atoms(&s, u128::MAX).unwrap();
        let md = min_delta(&atoms);
        check!(f, min_delta_via_kernel(&atoms).unwrap() == md, "{g} {s}: routes to min Δ differ");
        let seen = distances_oracle(&atoms, oracle_horizon(&s), u128::MAX).unwrap();
        check!(f, seen.iter().all(|&d| md > 0 && d % md == 0), "{g} {s}: min Δ {md} does not divide {seen:?}");
        check!(f, gcd_all(&seen) == md, "{g} {s}: gcd of {seen:?} is not {md}");
        let by_cross = atoms.iter().all(|a| cross(&s, a.exponents()) == Rational64::from_integer(1));
        match is_half_factorial(&atoms) {
            Ok(hf) => check!(f, hf == by_cross && hf == (md == 0), "{g} {s}: half-factorial routes differ"),
            Err(e) => f.push(format!("{g} {s}: {e}")),
        }
        non_hf += (md > 0) as usize;
    }
    check!(f, non_hf >= 20, "only {non_hf} non-half-factorial samples");

    // Both routes on every subset of every group of order at most 9.
    for g in &groups {
        let n = g.order() - 1;
        for mask in 1u64..(1 << n) {
            let s = zsdelta::sweep::support_of(g, mask);
            let atoms = enumerate_atoms(&s, u128::MAX).unwrap();
            let by_cross = atoms.iter().all(|a| cross(&s, a.exponents()) == Rational64::from_integer(1));
            match is_half_factorial(&atoms) {
                Ok(hf) => check!(f, hf == by_cross, "{g} {s}: half-factorial routes differ"),
                Err(e) => f.push(format!("{g} {s}: {e}")),
            }
        }
    }
    f
}

fn criterion_9(reports: &[SweepReport]) -> Failures {
    let mut f = Failures::new();
    for r in reports {
        let g = &r.group;
        lines_ok(&mut f, &verify::verify_extremal_structure(r));
        if g.order() <= 2 {
            continue;
        }
        let n = g.orders().iter().fold(1u64, |l, &o| l.lcm(&(o as u64)));
        let rank = g.orders().len() as u64;
        let max = r.max_delta_star;
        for e in &r.extremal {
            let s = &e.subset;
            let atoms = enumerate_atoms(s, u128::MAX).unwrap();
            check!(f, min_delta_via_kernel(&atoms).unwrap() == max, "{g} {s}: not extremal");
            let lcn = atoms.iter().all(|a| cross(s, a.exponents()) >= Rational64::from_integer(1));
            let pm = s.len() == 2
                && g.neg(&s.elements()[0]).unwrap() == s.elements()[1]
                && order(g, &s.elements()[0]) as u64 == n;
            if rank + 1 < n {
                check!(f, pm, "{g} {s}: r < n-1 but not {{g,-g}} with ord(g) = n");
            }
            if rank >= n {
                check!(f, lcn && s.len() as u64 == rank + 1, "{g} {s}: r ≥ n but not LCN of size r+1");
            }
            if lcn {
                let full: Vec<u32> = s.elements().iter().map(|x| order(g, x)).collect();
                let found: BTreeSet<Vec<u32>> = atoms.iter().map(|a| a.exponents().to_vec()).collect();
                for a in &found {
                    let k = cross(s, a);
                    let supp = a.iter().filter(|&&v| v > 0).count() as u64;
                    if k == Rational64::from_integer(1) {
                        check!(f, 2 * supp <= n, "{g} {s}: k = 1 atom with support {supp} > n/2");
                    } else {
                        let rest: Vec<u32> = full.iter().zip(a).map(|(x, y)| x - y).collect();
                        check!(f, k < Rational64::from_integer(rank as i64), "{g} {s}: atom with k ≥ r");
                        check!(f, found.contains(&rest), "{g} {s}: S·A⁻¹ is not an atom");
                    }
                }
            }
        }
    }
    f
}

fn criterion_10(reports: &[SweepReport]) -> (Failures, usize) {
    let mut f = Failures::new();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut reduced = 0;
    for r in reports {
        let g = &r.group;
        for rec in r.minimal_sets() {
            let s = r.support_of(rec.mask);
            // Self-spanning: every element lies in the span of the others.
            let violates = (0..s.len()).any(|p| {
                let x = &s.elements()[p];
                let rest: Vec<GroupElement> = (0..s.len()).filter(|&q| q != p).map(|q| s.elements()[q].clone()).collect();
                !g.subgroup_closure(&rest).unwrap().contains(x)
            });
            check!(f, violates != spans_itself(&s), "{g} {s}: self-spanning test disagrees");
            if !violates {
                continue;
            }
            reduced += 1;
            let t = match transfer_reduce(&s, u128::MAX) {
                Ok(t) => t,
                Err(e) => {
                    f.push(format!("{g} {s}: {e}"));
                    continue;
                }
            };
            check!(f, t.reduced.len() == s.len(), "{g} {s}: size changed");
            check!(f, spans_itself(&t.reduced), "{g} {s}: reduced set {} still reducible", t.reduced);
            let atoms = enumerate_atoms(&s, u128::MAX).unwrap();
            let image = reduced_atoms(&t);
            check!(f, min_delta(&atoms) == min_delta(&image), "{g} {s}: min Δ changed");
            check!(
                f,
                min_delta_via_kernel(&enumerate_atoms(&t.reduced, u128::MAX).unwrap()).unwrap() == min_delta(&atoms),
                "{g} {s}: kernel min Δ of the reduced set differs"
            );
            for _ in 0..100 {
                let factors = rng.random_range(1..=4);
                let b = random_product(&atoms, factors, &mut rng);
                let tb = t.apply(&b).unwrap();
                let ok = is_zero_sum(&t.reduced, tb.exponents())
                    && cross(&s, b.exponents()) == cross(&t.reduced, tb.exponents());
                check!(f, ok, "{g} {s}: k({}) not preserved", s.format_sequence(&b));
            }
        }
    }
    check!(f, reduced > 0, "every minimal set spans itself");
    (f, reduced)
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |n: u32, title: &str, start: Instant, fails: Failures| {
        let verdict = if fails.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {verdict}  {title}  ({:.1?})", start.elapsed());
        for m in fails.iter().take(10) {
            println!("    {m}");
        }
        failed += !fails.is_empty() as u32;
    };

    let t = Instant::now();
    report(1, "{g,-g} in C_n: 3 atoms, min Δ = n-2", t, criterion_1());
    let t = Instant::now();
    report(2, "{e0,...,es} in C_p^s: min Δ = s-1", t, criterion_2());

    let t = Instant::now();
    let (v, reports) = verify::verify_max_delta_star_up_to(16, &SweepOptions::default()).unwrap();
    let mut fails = criterion_3(&reports);
    lines_ok(&mut fails, &v);
    report(3, "max Δ*(G) = max{exp-2, r-1} for |G| ≤ 16", t, fails);

    let t = Instant::now();
    report(4, "second maximum of Δ*(C_n) is ⌊n/2⌋-1", t, criterion_4(&reports));
    let t = Instant::now();
    report(5, "m(G) = r-1 on small p-groups", t, criterion_5());
    let t = Instant::now();
    report(6, "even-exponent non-simple set at r = 3", t, criterion_6());
    let t = Instant::now();
    report(7, "odd-exponent non-simple set at r = 3", t, criterion_7());
    let t = Instant::now();
    report(8, "kernel min Δ against the distance oracle", t, criterion_8());
    let t = Instant::now();
    report(9, "structure of extremal sets for |G| ≤ 16", t, criterion_9(&reports));
    let t = Instant::now();
    let (fails, n) = criterion_10(&reports);
    report(10, &format!("transfer reduction on {n} sets"), t, fails);

    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
