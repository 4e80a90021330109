//! Finite abelian groups presented as direct sums of cyclic groups
//! `C_{n_1} ⊕ … ⊕ C_{n_k}`.
//!
//! Components are kept in the order the caller supplied them; nothing is
//! re-indexed into invariant-factor form, so element coordinates are stable
//! across every command that touches the same group text. Elements have a
//! mixed-radix index in `0..|G|` (first component most significant), which is
//! what the enumeration code works with internally.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest group order accepted; element indices must fit in memory-backed
/// bitsets.
pub const MAX_GROUP_ORDER: usize = 1 << 24;

/// An element of a [`FiniteAbelianGroup`], stored as reduced residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u32>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Exponent, rank and total rank of a group, plus the per-prime ranks they
/// are derived from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupInvariants {
    pub exponent: u64,
    pub rank: u32,
    pub total_rank: u32,
    pub p_ranks: BTreeMap<u64, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    orders: Vec<u32>,
    strides: Vec<usize>,
    size: usize,
}

impl FiniteAbelianGroup {
    /// Builds `C_{orders[0]} ⊕ …`. An empty list is the trivial group.
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        let mut size: usize = 1;
        for &n in &orders {
            if n < 2 {
                return Err(Error::InvalidGroup(format!(
                    "cyclic component order {n} must be at least 2"
                )));
            }
            size = size
                .checked_mul(n as usize)
                .filter(|&s| s <= MAX_GROUP_ORDER)
                .ok_or_else(|| {
                    Error::InvalidGroup(format!("group order exceeds {MAX_GROUP_ORDER}"))
                })?;
        }
        let mut strides = vec![1usize; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1] as usize;
        }
        Ok(Self {
            orders,
            strides,
            size,
        })
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// Number of cyclic components.
    pub fn components(&self) -> usize {
        self.orders.len()
    }

    /// `|G|`.
    pub fn order(&self) -> usize {
        self.size
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &n| acc.lcm(&(n as u64)))
    }

    pub fn rank(&self) -> u32 {
        self.invariants().rank
    }

    pub fn invariants(&self) -> GroupInvariants {
        let mut p_ranks = BTreeMap::new();
        for &n in &self.orders {
            for p in prime_divisors(n as u64) {
                *p_ranks.entry(p).or_insert(0u32) += 1;
            }
        }
        GroupInvariants {
            exponent: self.exponent(),
            rank: p_ranks.values().copied().max().unwrap_or(0),
            total_rank: p_ranks.values().sum(),
            p_ranks,
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.orders.len()],
        }
    }

    /// The canonical basis element `e_{i+1}` (zero-based component `i`).
    pub fn basis_element(&self, i: usize) -> Result<GroupElement> {
        if i >= self.orders.len() {
            return Err(Error::InvalidParameters(format!(
                "basis index {i} out of range for {} components",
                self.orders.len()
            )));
        }
        let mut coords = vec![0; self.orders.len()];
        coords[i] = 1;
        Ok(GroupElement { coords })
    }

    /// Builds an element from arbitrary integers, reducing each coordinate.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        self.check_len(coords.len())?;
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.orders)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u32)
                .collect(),
        })
    }

    /// Builds an element whose coordinates must already be reduced.
    pub fn element_reduced(&self, coords: &[i64]) -> Result<GroupElement> {
        self.check_len(coords.len())?;
        for (component, (&c, &n)) in coords.iter().zip(&self.orders).enumerate() {
            if c < 0 || c >= n as i64 {
                return Err(Error::ResidueOutOfRange {
                    component,
                    value: c,
                    modulus: n,
                });
            }
        }
        Ok(GroupElement {
            coords: coords.iter().map(|&c| c as u32).collect(),
        })
    }

    fn check_len(&self, found: usize) -> Result<()> {
        if found != self.orders.len() {
            return Err(Error::CoordinateMismatch {
                expected: self.orders.len(),
                found,
            });
        }
        Ok(())
    }

    /// Checks that `g` is a well-formed element of this group.
    pub fn check(&self, g: &GroupElement) -> Result<()> {
        self.check_len(g.coords.len())?;
        for (component, (&c, &n)) in g.coords.iter().zip(&self.orders).enumerate() {
            if c >= n {
                return Err(Error::ResidueOutOfRange {
                    component,
                    value: c as i64,
                    modulus: n,
                });
            }
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.orders)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.orders)
                .map(|(&x, &n)| (n - x) % n)
                .collect(),
        })
    }

    /// `k·a` for any integer `k`.
    pub fn scale(&self, a: &GroupElement, k: i64) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.orders)
                .map(|(&x, &n)| {
                    let n = n as i64;
                    ((x as i64 * k.rem_euclid(n)) % n) as u32
                })
                .collect(),
        })
    }

    /// `ord(g)`: lcm over components of `n_i / gcd(n_i, g_i)`.
    pub fn order_of(&self, g: &GroupElement) -> Result<u64> {
        self.check(g)?;
        Ok(g
            .coords
            .iter()
            .zip(&self.orders)
            .fold(1u64, |acc, (&c, &n)| {
                let n = n as u64;
                acc.lcm(&(n / n.gcd(&(c as u64))))
            }))
    }

    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum()
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        debug_assert!(index < self.size);
        GroupElement {
            coords: self
                .strides
                .iter()
                .zip(&self.orders)
                .map(|(&s, &n)| ((index / s) % n as usize) as u32)
                .collect(),
        }
    }

    pub(crate) fn add_idx(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&s, &n) in self.strides.iter().zip(&self.orders) {
            let n = n as usize;
            out += (((a / s) % n + (b / s) % n) % n) * s;
        }
        out
    }

    pub(crate) fn neg_idx(&self, a: usize) -> usize {
        let mut out = 0;
        for (&s, &n) in self.strides.iter().zip(&self.orders) {
            let n = n as usize;
            out += ((n - (a / s) % n) % n) * s;
        }
        out
    }

    pub(crate) fn scale_idx(&self, a: usize, k: u64) -> usize {
        let mut out = 0;
        for (&s, &n) in self.strides.iter().zip(&self.orders) {
            let n = n as u64;
            out += ((((a / s) as u64 % n) * (k % n)) % n) as usize * s;
        }
        out
    }

    pub(crate) fn order_idx(&self, a: usize) -> u64 {
        self.strides
            .iter()
            .zip(&self.orders)
            .fold(1u64, |acc, (&s, &n)| {
                let n = n as u64;
                let c = ((a / s) as u64) % n;
                acc.lcm(&(n / n.gcd(&c)))
            })
    }

    /// All elements in index (lexicographic) order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size).map(move |i| self.element_at(i))
    }

    /// The subgroup generated by `gens`, as a membership bitset over indices.
    pub(crate) fn span_indices(&self, gens: &[usize]) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.size);
        let mut queue = VecDeque::new();
        seen.insert(0);
        queue.push_back(0usize);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.add_idx(x, g);
                if !seen.contains(y) {
                    seen.insert(y);
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub(crate) fn span_order(&self, gens: &[usize]) -> usize {
        self.span_indices(gens).count_ones(..)
    }

    fn indices_of(&self, elems: &[GroupElement]) -> Result<Vec<usize>> {
        elems
            .iter()
            .map(|g| self.check(g).map(|_| self.index_of(g)))
            .collect()
    }

    /// `⟨E⟩` by breadth-first closure under addition; `⟨∅⟩ = {0}`.
    pub fn subgroup_closure(&self, gens: &[GroupElement]) -> Result<BTreeSet<GroupElement>> {
        let idx = self.indices_of(gens)?;
        Ok(self
            .span_indices(&idx)
            .ones()
            .map(|i| self.element_at(i))
            .collect())
    }

    /// A family is independent iff it has no zero entry and the order of its
    /// span equals the product of the element orders (the sum of the cyclic
    /// subgroups is direct).
    pub fn is_independent(&self, family: &[GroupElement]) -> Result<bool> {
        let idx = self.indices_of(family)?;
        Ok(self.is_independent_idx(&idx))
    }

    pub(crate) fn is_independent_idx(&self, family: &[usize]) -> bool {
        let mut product: u64 = 1;
        for &e in family {
            if e == 0 {
                return false;
            }
            product = match product.checked_mul(self.order_idx(e)) {
                Some(p) if p <= self.size as u64 => p,
                _ => return false,
            };
        }
        self.span_order(family) as u64 == product
    }

    /// Smallest `d ≥ 1` with `d·g ∈ ⟨E⟩`. Always divides `ord(g)`.
    pub fn min_multiple_in_span(&self, g: &GroupElement, span: &[GroupElement]) -> Result<u64> {
        self.check(g)?;
        let idx = self.indices_of(span)?;
        Ok(self.min_multiple_in_span_idx(self.index_of(g), &idx))
    }

    pub(crate) fn min_multiple_in_span_idx(&self, g: usize, span: &[usize]) -> u64 {
        let members = self.span_indices(span);
        let mut x = g;
        let mut d = 1;
        while !members.contains(x) {
            x = self.add_idx(x, g);
            d += 1;
        }
        d
    }
}

impl fmt::Display for FiniteAbelianGroup {
    /// Compact text form, e.g. `C2^2xC4`; parses back to the same group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return f.write_str("C1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.orders.len() {
            let n = self.orders[i];
            let mut j = i;
            while j < self.orders.len() && self.orders[j] == n {
                j += 1;
            }
            if !first {
                f.write_str("x")?;
            }
            first = false;
            match j - i {
                1 => write!(f, "C{n}")?,
                m => write!(f, "C{n}^{m}")?,
            }
            i = j;
        }
        Ok(())
    }
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in prime_divisors(n) {
        let mut a = 0;
        while n.is_multiple_of(p) {
            n /= p;
            a += 1;
        }
        out.push((p, a));
    }
    out
}

fn partitions(n: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=n.min(max_part)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

/// One representative per isomorphism class of abelian groups of order `n`,
/// in invariant-factor form `C_{d_1} ⊕ … ⊕ C_{d_t}` with `d_1 | … | d_t`.
pub fn abelian_groups_of_order(n: u64) -> Result<Vec<FiniteAbelianGroup>> {
    if n == 0 {
        return Err(Error::InvalidParameters("group order must be positive".into()));
    }
    let mut combos: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, a) in factorize(n) {
        let mut parts = Vec::new();
        partitions(a, a, &mut Vec::new(), &mut parts);
        let mut next = Vec::new();
        for factors in &combos {
            for lambda in &parts {
                // Largest invariant factor first while combining primes.
                let len = factors.len().max(lambda.len());
                let mut merged = vec![1u64; len];
                for (i, slot) in merged.iter_mut().enumerate() {
                    if let Some(&f) = factors.get(i) {
                        *slot *= f;
                    }
                    if let Some(&e) = lambda.get(i) {
                        *slot *= p.pow(e);
                    }
                }
                next.push(merged);
            }
        }
        combos = next;
    }
    let mut groups: Vec<Vec<u32>> = combos
        .into_iter()
        .map(|mut f| {
            f.reverse();
            f.into_iter().map(|d| d as u32).collect()
        })
        .collect();
    groups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    groups.into_iter().map(FiniteAbelianGroup::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(orders: &[u32]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(orders.to_vec()).unwrap()
    }

    #[test]
    fn orders_of_small_elements() {
        let c6 = g(&[6]);
        assert_eq!(c6.order_of(&c6.zero()).unwrap(), 1);
        assert_eq!(c6.order_of(&c6.element(&[2]).unwrap()).unwrap(), 3);
    }

    #[test]
    fn order_matches_repeated_addition() {
        let grp = g(&[9, 9, 27]);
        let x = grp.element(&[1, 1, 1]).unwrap();
        let mut acc = x.clone();
        let mut k = 1;
        while !acc.is_zero() {
            acc = grp.add(&acc, &x).unwrap();
            k += 1;
        }
        assert_eq!(k, 27);
        assert_eq!(grp.order_of(&x).unwrap(), 27);
    }

    #[test]
    fn coordinate_mismatch_is_reported() {
        let grp = g(&[4, 4]);
        let bad = g(&[4]).element(&[1]).unwrap();
        assert_eq!(
            grp.order_of(&bad),
            Err(Error::CoordinateMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn invariants_of_examples() {
        let inv = g(&[2, 4, 4]).invariants();
        assert_eq!((inv.exponent, inv.rank, inv.total_rank), (4, 3, 3));
        let inv = g(&[9, 9, 27]).invariants();
        assert_eq!((inv.exponent, inv.rank, inv.total_rank), (27, 3, 3));
        let inv = g(&[6]).invariants();
        assert_eq!((inv.exponent, inv.rank, inv.total_rank), (6, 1, 2));
    }

    #[test]
    fn c6_ranks_match_subgroup_counts() {
        // r_p is the dimension of G[p] = {x : px = 0} over F_p.
        let c6 = g(&[6]);
        for (p, expected) in [(2u64, 1u32), (3, 1)] {
            let torsion = c6
                .elements()
                .filter(|x| c6.scale(x, p as i64).unwrap().is_zero())
                .count();
            assert_eq!(torsion as u64, p.pow(expected));
        }
    }

    #[test]
    fn closures() {
        let c4 = g(&[4]);
        let two = c4.element(&[2]).unwrap();
        let span = c4.subgroup_closure(std::slice::from_ref(&two)).unwrap();
        assert_eq!(span, BTreeSet::from([c4.zero(), two]));
        assert_eq!(
            c4.subgroup_closure(&[]).unwrap(),
            BTreeSet::from([c4.zero()])
        );
        let c33 = g(&[3, 3]);
        let s = c33.element(&[1, 1]).unwrap();
        let span = c33.subgroup_closure(&[s]).unwrap();
        let expected: BTreeSet<_> = [[0, 0], [1, 1], [2, 2]]
            .iter()
            .map(|c| c33.element(c).unwrap())
            .collect();
        assert_eq!(span, expected);
    }

    #[test]
    fn independence_examples() {
        let grp = g(&[9, 9, 27]);
        let basis: Vec<_> = (0..3).map(|i| grp.basis_element(i).unwrap()).collect();
        assert!(grp.is_independent(&basis).unwrap());
        let e3 = basis[2].clone();
        let sum = grp.element(&[1, 1, 1]).unwrap();
        assert!(!grp.is_independent(&[e3.clone(), sum]).unwrap());
        assert!(!grp.is_independent(&[e3, grp.zero()]).unwrap());
    }

    #[test]
    fn min_multiples() {
        let c4 = g(&[4]);
        let one = c4.element(&[1]).unwrap();
        let two = c4.element(&[2]).unwrap();
        assert_eq!(c4.min_multiple_in_span(&one, std::slice::from_ref(&two)).unwrap(), 2);
        assert_eq!(c4.min_multiple_in_span(&two, std::slice::from_ref(&two)).unwrap(), 1);

        let grp = g(&[2, 4, 4]);
        let x = grp.element(&[1, 0, 1]).unwrap();
        let span = [
            grp.element(&[1, 1, 0]).unwrap(),
            grp.element(&[0, 1, 0]).unwrap(),
            grp.element(&[0, 0, 1]).unwrap(),
        ];
        assert_eq!(grp.min_multiple_in_span(&x, &span).unwrap(), 1);
    }

    #[test]
    fn display_groups_consecutive_components() {
        assert_eq!(g(&[2, 2, 4]).to_string(), "C2^2xC4");
        assert_eq!(g(&[9, 9, 27]).to_string(), "C9^2xC27");
        assert_eq!(g(&[]).to_string(), "C1");
    }

    #[test]
    fn abelian_group_counts() {
        // Number of abelian groups of order n is the product of partition
        // numbers of the prime exponents.
        let counts: Vec<usize> = (1..=16)
            .map(|n| abelian_groups_of_order(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        let names: Vec<String> = abelian_groups_of_order(16)
            .unwrap()
            .iter()
            .map(|g| g.to_string())
            .collect();
        assert_eq!(names, ["C16", "C2xC8", "C4^2", "C2^2xC4", "C2^4"]);
        let twelve: Vec<String> = abelian_groups_of_order(12)
            .unwrap()
            .iter()
            .map(|g| g.to_string())
            .collect();
        assert_eq!(twelve, ["C12", "C2xC6"]);
    }

    #[test]
    fn brute_force_independence_agrees_on_small_groups() {
        for orders in [vec![4], vec![2, 2], vec![2, 4], vec![3, 3], vec![8], vec![2, 2, 2]] {
            let grp = g(&orders);
            let all: Vec<usize> = (0..grp.order()).collect();
            for &a in &all {
                for &b in &all {
                    let fam = [a, b];
                    let brute = brute_independent(&grp, &fam);
                    assert_eq!(grp.is_independent_idx(&fam), brute, "{orders:?} {fam:?}");
                }
            }
        }
    }

    fn brute_independent(grp: &FiniteAbelianGroup, fam: &[usize]) -> bool {
        if fam.contains(&0) {
            return false;
        }
        let ords: Vec<u64> = fam.iter().map(|&e| grp.order_idx(e)).collect();
        let mut m = vec![0u64; fam.len()];
        loop {
            let sum = fam
                .iter()
                .zip(&m)
                .fold(0, |acc, (&e, &k)| grp.add_idx(acc, grp.scale_idx(e, k)));
            if sum == 0 && m.iter().zip(fam).any(|(&k, &e)| grp.scale_idx(e, k) != 0) {
                return false;
            }
            let mut i = 0;
            loop {
                if i == m.len() {
                    return true;
                }
                m[i] += 1;
                if m[i] < ords[i] {
                    break;
                }
                m[i] = 0;
                i += 1;
            }
        }
    }
}
