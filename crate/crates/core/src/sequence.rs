//! Sequences over a fixed support set `G₀ ⊂ G ∖ {0}`, stored as exponent
//! vectors indexed like the support set.

use std::collections::HashSet;
use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};

/// An ordered set of distinct nonzero group elements. Its order fixes the
/// indexing of every exponent vector built over it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportSet {
    group: FiniteAbelianGroup,
    elements: Vec<GroupElement>,
    indices: Vec<usize>,
    orders: Vec<u32>,
}

impl SupportSet {
    pub fn new(group: FiniteAbelianGroup, elements: Vec<GroupElement>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut indices = Vec::with_capacity(elements.len());
        let mut orders = Vec::with_capacity(elements.len());
        for g in &elements {
            group.check(g)?;
            if g.is_zero() {
                return Err(Error::ZeroElement);
            }
            if !seen.insert(g.clone()) {
                return Err(Error::DuplicateElement(g.to_string()));
            }
            indices.push(group.index_of(g));
            orders.push(group.order_of(g)? as u32);
        }
        Ok(Self {
            group,
            elements,
            indices,
            orders,
        })
    }

    pub(crate) fn from_indices(group: &FiniteAbelianGroup, indices: &[usize]) -> Self {
        let elements = indices.iter().map(|&i| group.element_at(i)).collect();
        Self::new(group.clone(), elements).expect("indices name distinct nonzero elements")
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `ord(g)` per support position.
    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub(crate) fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        self.elements.iter().position(|h| h == g)
    }

    /// The support set with position `pos` removed.
    pub fn without(&self, pos: usize) -> SupportSet {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != pos).collect();
        self.restrict(&keep)
    }

    /// The support set on the given positions, in the given order.
    pub fn restrict(&self, positions: &[usize]) -> SupportSet {
        SupportSet {
            group: self.group.clone(),
            elements: positions.iter().map(|&p| self.elements[p].clone()).collect(),
            indices: positions.iter().map(|&p| self.indices[p]).collect(),
            orders: positions.iter().map(|&p| self.orders[p]).collect(),
        }
    }

    /// The support set with the element at `pos` replaced.
    pub fn replace(&self, pos: usize, g: GroupElement) -> Result<SupportSet> {
        let mut elements = self.elements.clone();
        elements[pos] = g;
        SupportSet::new(self.group.clone(), elements)
    }

    fn check(&self, s: &SequenceVec) -> Result<()> {
        if s.0.len() != self.len() {
            return Err(Error::SupportMismatch {
                expected: self.len(),
                found: s.0.len(),
            });
        }
        Ok(())
    }

    pub fn empty_sequence(&self) -> SequenceVec {
        SequenceVec(vec![0; self.len()])
    }

    /// `g^k` for the element at position `pos`.
    pub fn power(&self, pos: usize, k: u32) -> SequenceVec {
        let mut v = vec![0; self.len()];
        v[pos] = k;
        SequenceVec(v)
    }

    /// `Π_g g^{ord(g)}`.
    pub fn full_power_product(&self) -> SequenceVec {
        SequenceVec(self.orders.clone())
    }

    pub fn sequence(&self, exponents: Vec<u32>) -> Result<SequenceVec> {
        let s = SequenceVec(exponents);
        self.check(&s)?;
        Ok(s)
    }

    pub(crate) fn sigma_idx(&self, exponents: &[u32]) -> usize {
        exponents
            .iter()
            .zip(&self.indices)
            .fold(0, |acc, (&v, &g)| {
                if v == 0 {
                    acc
                } else {
                    self.group.add_idx(acc, self.group.scale_idx(g, v as u64))
                }
            })
    }

    /// `σ(S)`.
    pub fn sigma(&self, s: &SequenceVec) -> Result<GroupElement> {
        self.check(s)?;
        Ok(self.group.element_at(self.sigma_idx(&s.0)))
    }

    pub fn is_zero_sum(&self, s: &SequenceVec) -> Result<bool> {
        self.check(s)?;
        Ok(self.sigma_idx(&s.0) == 0)
    }

    /// `k(S) = Σ v_g / ord(g)`, exact.
    pub fn cross_number(&self, s: &SequenceVec) -> Result<Rational64> {
        self.check(s)?;
        Ok(self.cross_number_unchecked(&s.0))
    }

    pub(crate) fn cross_number_unchecked(&self, exponents: &[u32]) -> Rational64 {
        let exp = self.group.exponent() as i64;
        Rational64::new(self.scaled_cross_number(exponents), exp)
    }

    /// `k(S)·exp(G)`, which is always an integer.
    pub(crate) fn scaled_cross_number(&self, exponents: &[u32]) -> i64 {
        let exp = self.group.exponent() as i64;
        exponents
            .iter()
            .zip(&self.orders)
            .map(|(&v, &n)| v as i64 * (exp / n as i64))
            .sum()
    }

    pub fn stats(&self, s: &SequenceVec) -> Result<SequenceStats> {
        self.check(s)?;
        Ok(SequenceStats {
            length: s.len(),
            max_multiplicity: s.max_multiplicity(),
            support: s
                .support_positions()
                .map(|p| self.elements[p].clone())
                .collect(),
        })
    }

    /// Product notation, e.g. `(1)^5 * (4)`.
    pub fn format_sequence(&self, s: &SequenceVec) -> String {
        let terms: Vec<String> = s
            .0
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(|(p, &v)| match v {
                1 => self.elements[p].to_string(),
                _ => format!("{}^{}", self.elements[p], v),
            })
            .collect();
        if terms.is_empty() {
            "1".to_string()
        } else {
            terms.join(" * ")
        }
    }
}

impl fmt::Display for SupportSet {
    /// Semicolon-separated tuples, the CLI subset syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Length, maximal multiplicity and support of a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceStats {
    pub length: u64,
    pub max_multiplicity: u32,
    pub support: Vec<GroupElement>,
}

/// Exponent vector `(v_g(S))_{g ∈ G₀}` of a sequence over a [`SupportSet`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SequenceVec(pub(crate) Vec<u32>);

impl SequenceVec {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn into_exponents(self) -> Vec<u32> {
        self.0
    }

    /// `|S|`.
    pub fn len(&self) -> u64 {
        self.0.iter().map(|&v| v as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    /// `h(S)`, zero for the empty sequence.
    pub fn max_multiplicity(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn support_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &v)| v > 0).map(|(p, _)| p)
    }

    fn same_shape(&self, other: &SequenceVec) -> Result<()> {
        if self.0.len() != other.0.len() {
            return Err(Error::SupportMismatch {
                expected: self.0.len(),
                found: other.0.len(),
            });
        }
        Ok(())
    }

    /// `S | T` in the free monoid.
    pub fn divides(&self, other: &SequenceVec) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    pub fn mul(&self, other: &SequenceVec) -> Result<SequenceVec> {
        self.same_shape(other)?;
        Ok(SequenceVec(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// `S·T⁻¹`, defined only when `T | S`.
    pub fn div(&self, divisor: &SequenceVec) -> Result<SequenceVec> {
        if !divisor.divides(self)? {
            return Err(Error::NotDivisor);
        }
        Ok(SequenceVec(
            self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn pow(&self, k: u32) -> SequenceVec {
        SequenceVec(self.0.iter().map(|&v| v * k).collect())
    }
}

impl From<SequenceVec> for Vec<u32> {
    fn from(s: SequenceVec) -> Self {
        s.0
    }
}
