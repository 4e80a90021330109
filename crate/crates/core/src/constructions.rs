//! Builders for the named support sets used throughout the verifiers.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::sequence::SupportSet;

/// A named construction over the canonical basis `(e_1, …, e_k)` of its group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// `{g, −g}` with `g = e_1` in `C_n`.
    PlusMinus { n: u32 },
    /// `{e_0, e_1, …, e_s}` with `e_0 = e_1 + … + e_s` in `C_p^s`.
    SumOfBasis { p: u32, s: u32 },
    /// `{3e_1, …, 3e_{r−1}, e_r, g}` with `g = e_1 + … + e_r` in
    /// `C_9^{r−1} ⊕ C_27`: non-simple, odd exponent.
    OddExponent { r: u32 },
    /// `{e_1, …, e_{r−3}, e_{r−2}+e_{r−1}, e_{r−1}, e_r, g}` with
    /// `g = e_1 + … + e_{r−2} + e_r` in `C_2^{r−2} ⊕ C_4 ⊕ C_4`: non-simple, even
    /// exponent, and no element has an independent complement.
    EvenExponent { r: u32 },
}

impl Construction {
    /// The group the construction lives in.
    pub fn group(&self) -> Result<FiniteAbelianGroup> {
        match *self {
            Construction::PlusMinus { n } => {
                if n < 3 {
                    return Err(Error::InvalidParameters(format!("pm needs n ≥ 3, got {n}")));
                }
                FiniteAbelianGroup::cyclic(n)
            }
            Construction::SumOfBasis { p, s } => {
                if p < 2 || !is_prime(p) || s < 1 {
                    return Err(Error::InvalidParameters(format!(
                        "eps needs a prime p and s ≥ 1, got p = {p}, s = {s}"
                    )));
                }
                FiniteAbelianGroup::new(vec![p; s as usize])
            }
            Construction::OddExponent { r } => {
                if r < 3 {
                    return Err(Error::InvalidParameters(format!("odd construction needs r ≥ 3, got {r}")));
                }
                let mut orders = vec![9; r as usize - 1];
                orders.push(27);
                FiniteAbelianGroup::new(orders)
            }
            Construction::EvenExponent { r } => {
                if r < 3 {
                    return Err(Error::InvalidParameters(format!("even construction needs r ≥ 3, got {r}")));
                }
                let mut orders = vec![2; r as usize - 2];
                orders.extend([4, 4]);
                FiniteAbelianGroup::new(orders)
            }
        }
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Construction::PlusMinus { n } => write!(f, "pm(n={n})"),
            Construction::SumOfBasis { p, s } => write!(f, "eps(p={p},s={s})"),
            Construction::OddExponent { r } => write!(f, "nonsimple-odd(r={r})"),
            Construction::EvenExponent { r } => write!(f, "nonsimple-even(r={r})"),
        }
    }
}

/// Builds the construction in its canonical group.
pub fn build_construction(kind: &Construction) -> Result<SupportSet> {
    build_construction_in(kind, &kind.group()?)
}

/// Builds the construction in `group`, refusing groups of the wrong shape.
pub fn build_construction_in(kind: &Construction, group: &FiniteAbelianGroup) -> Result<SupportSet> {
    let expected = kind.group()?;
    if group.orders() != expected.orders() {
        return Err(Error::InvalidParameters(format!(
            "{kind} lives in {expected}, not in {group}"
        )));
    }
    let k = group.components();
    let basis: Vec<GroupElement> = (0..k)
        .map(|i| group.basis_element(i))
        .collect::<Result<_>>()?;
    let sum = |idx: &[usize]| -> Result<GroupElement> {
        idx.iter()
            .try_fold(group.zero(), |acc, &i| group.add(&acc, &basis[i]))
    };
    let elements = match *kind {
        Construction::PlusMinus { .. } => {
            vec![basis[0].clone(), group.neg(&basis[0])?]
        }
        Construction::SumOfBasis { .. } => {
            let mut v = vec![sum(&(0..k).collect::<Vec<_>>())?];
            v.extend(basis.iter().cloned());
            v
        }
        Construction::OddExponent { .. } => {
            let mut v: Vec<GroupElement> = basis[..k - 1]
                .iter()
                .map(|e| group.scale(e, 3))
                .collect::<Result<_>>()?;
            v.push(basis[k - 1].clone());
            v.push(sum(&(0..k).collect::<Vec<_>>())?);
            v
        }
        Construction::EvenExponent { .. } => {
            // Zero-based: e_{r-2} = basis[k-3], e_{r-1} = basis[k-2], e_r = basis[k-1].
            let mut v: Vec<GroupElement> = basis[..k - 3].to_vec();
            v.push(group.add(&basis[k - 3], &basis[k - 2])?);
            v.push(basis[k - 2].clone());
            v.push(basis[k - 1].clone());
            let mut g_idx: Vec<usize> = (0..k - 2).collect();
            g_idx.push(k - 1);
            v.push(sum(&g_idx)?);
            v
        }
    };
    SupportSet::new(group.clone(), elements)
}

/// The published atom list of a construction with cross numbers, as exponent
/// vectors in the support order of [`build_construction`]. `None` when no closed
/// list is known.
/// Exponent vectors with their cross numbers.
pub type AtomFamily = BTreeSet<(Vec<u32>, Rational64)>;

pub fn listed_atoms(kind: &Construction) -> Result<Option<AtomFamily>> {
    let support = build_construction(kind)?;
    let len = support.len();
    let mut out = Vec::new();
    match *kind {
        Construction::PlusMinus { n } => {
            out.push(vec![n, 0]);
            out.push(vec![0, n]);
            out.push(vec![1, 1]);
        }
        Construction::SumOfBasis { .. } => return Ok(None),
        Construction::OddExponent { r } => {
            // Positions: 3e_1 … 3e_{r−1}, then e_r, then g.
            let r = r as usize;
            let (er, g) = (r - 1, r);
            for i in 0..r - 1 {
                out.push(unit(len, &[(i, 3)]));
            }
            out.push(unit(len, &[(er, 27)]));
            out.push(unit(len, &[(g, 27)]));
            out.push(unit(len, &[(g, 9), (er, 18)]));
            out.push(unit(len, &[(g, 18), (er, 9)]));
            for (j, c) in [(3, 2), (6, 1), (12, 2), (15, 1), (21, 2), (24, 1)] {
                let mut v = unit(len, &[(g, j), (er, 27 - j)]);
                v[..r - 1].iter_mut().for_each(|x| *x = c);
                out.push(v);
            }
        }
        Construction::EvenExponent { r } => {
            // Positions: e_1 … e_{r−3}, f = e_{r−2}+e_{r−1}, e_{r−1}, e_r, g.
            let r = r as usize;
            let (f, em, er, g) = (r - 3, r - 2, r - 1, r);
            for i in 0..r - 3 {
                out.push(unit(len, &[(i, 2)]));
            }
            for p in [f, em, er, g] {
                out.push(unit(len, &[(p, 4)]));
            }
            out.push(unit(len, &[(f, 2), (em, 2)]));
            out.push(unit(len, &[(g, 2), (er, 2)]));
            for (gx, erx, fx, emx) in [(1, 3, 1, 3), (1, 3, 3, 1), (3, 1, 1, 3), (3, 1, 3, 1)] {
                let mut v = unit(len, &[(g, gx), (er, erx), (f, fx), (em, emx)]);
                v[..r - 3].iter_mut().for_each(|x| *x = 1);
                out.push(v);
            }
        }
    }
    out.into_iter()
        .map(|v| {
            let k = support.cross_number(&support.sequence(v.clone())?)?;
            Ok((v, k))
        })
        .collect::<Result<_>>()
        .map(Some)
}

fn unit(len: usize, entries: &[(usize, u32)]) -> Vec<u32> {
    let mut v = vec![0; len];
    for &(p, x) in entries {
        v[p] = x;
    }
    v
}

impl FromStr for Construction {
    type Err = Error;

    /// `pm:N`, `eps:P:S`, `nonsimple-odd:R`, `nonsimple-even:R`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<u32> {
            parts
                .get(i)
                .and_then(|x| x.trim().parse().ok())
                .ok_or_else(|| Error::InvalidParameters(format!("bad construction name {s:?}")))
        };
        match (parts[0], parts.len()) {
            ("pm", 2) => Ok(Construction::PlusMinus { n: num(1)? }),
            ("eps", 3) => Ok(Construction::SumOfBasis { p: num(1)?, s: num(2)? }),
            ("nonsimple-odd", 2) => Ok(Construction::OddExponent { r: num(1)? }),
            ("nonsimple-even", 2) => Ok(Construction::EvenExponent { r: num(1)? }),
            _ => Err(Error::InvalidParameters(format!(
                "unknown construction {s:?}; expected pm:N, eps:P:S, nonsimple-odd:R or nonsimple-even:R"
            ))),
        }
    }
}
