//! Exact integer lattice computations behind `min Δ(G₀)`.
//!
//! Let `M` be the exponent matrix of `A(G₀)` (column `j` is atom `j`). Any
//! `z ∈ ker_ℤ(M)` splits as `z = z⁺ − z⁻` with `M z⁺ = M z⁻`, i.e. two
//! factorizations of the same sequence whose lengths differ by `1ᵀz`.
//! Conversely every pair of factorizations of one sequence gives a kernel
//! vector. So `{1ᵀz : Mz = 0}` is exactly the subgroup of `ℤ` generated by all
//! length differences in `B(G₀)`, and its nonnegative generator is
//! `gcd Δ(G₀) = min Δ(G₀)` (0 when `G₀` is half-factorial).
//!
//! Two routes compute that generator:
//!
//! * [`integer_kernel`] builds a lattice basis of `ker_ℤ(M)` by column-style
//!   Hermite elimination with a tracked unimodular transform, and
//!   [`min_delta_from_kernel`] takes the gcd of `1ᵀb` over the basis.
//! * [`min_delta`] echelonizes the lattice spanned by the columns of
//!   `[M; 1ᵀ]` and reads off the pivot in the last row: the lattice vectors
//!   vanishing on the `M` rows are exactly the multiples of that basis vector.
//!   This needs only `|G₀|+1` rows of state and is what sweeps use.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::atoms::AtomSet;
use crate::error::{Error, Result};
use crate::sequence::SequenceVec;

/// A lattice basis of `ker_ℤ(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub vectors: Vec<Vec<BigInt>>,
}

impl KernelBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }
}

fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    // extended_gcd returns a nonnegative gcd with e.x·a + e.y·b = gcd.
    (e.gcd, e.x, e.y)
}

/// Basis of `{z ∈ ℤ^ncols : Mz = 0}` for the row-major matrix `rows`.
pub fn integer_kernel(rows: &[Vec<u32>], ncols: usize) -> Result<KernelBasis> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != ncols {
            return Err(Error::InvalidParameters(format!(
                "row {i} has {} entries, expected {ncols}",
                r.len()
            )));
        }
    }
    let m = rows.len();
    let mut a: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| rows.iter().map(|r| BigInt::from(r[j])).collect())
        .collect();
    let mut u: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| {
            let mut col = vec![BigInt::zero(); ncols];
            col[j] = BigInt::one();
            col
        })
        .collect();

    let mut pivot = 0;
    for i in 0..m {
        if pivot == ncols {
            break;
        }
        for j in pivot + 1..ncols {
            if a[j][i].is_zero() {
                continue;
            }
            if a[pivot][i].is_zero() {
                a.swap(pivot, j);
                u.swap(pivot, j);
                continue;
            }
            let (g, s, t) = xgcd(&a[pivot][i], &a[j][i]);
            let p_over = &a[pivot][i] / &g;
            let j_over = &a[j][i] / &g;
            combine(&mut a, pivot, j, &s, &t, &p_over, &j_over);
            combine(&mut u, pivot, j, &s, &t, &p_over, &j_over);
        }
        if !a[pivot][i].is_zero() {
            pivot += 1;
        }
    }

    let vectors: Vec<Vec<BigInt>> = u.drain(pivot..).collect();
    for z in &vectors {
        for (i, r) in rows.iter().enumerate() {
            let dot: BigInt = r.iter().zip(z).map(|(&x, y)| BigInt::from(x) * y).sum();
            if !dot.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "kernel vector fails row {i}: M·z = {dot}"
                )));
            }
        }
    }
    Ok(KernelBasis { vectors })
}

/// Replaces columns `(p, j)` by `(s·c_p + t·c_j, (a_p/g)·c_j − (a_j/g)·c_p)`.
/// The 2×2 transform has determinant 1.
fn combine(
    cols: &mut [Vec<BigInt>],
    p: usize,
    j: usize,
    s: &BigInt,
    t: &BigInt,
    p_over: &BigInt,
    j_over: &BigInt,
) {
    let (left, right) = cols.split_at_mut(j);
    let cp = &mut left[p];
    let cj = &mut right[0];
    for (x, y) in cp.iter_mut().zip(cj.iter_mut()) {
        let nx = s * &*x + t * &*y;
        let ny = p_over * &*y - j_over * &*x;
        *x = nx;
        *y = ny;
    }
}

/// `gcd{|1ᵀb|}` over a kernel basis; 0 for an empty or all-zero set.
pub fn min_delta_from_kernel(basis: &KernelBasis) -> u64 {
    let g = basis
        .vectors
        .iter()
        .map(|z| z.iter().sum::<BigInt>())
        .fold(BigInt::zero(), |acc, s| acc.gcd(&s));
    g.to_u64().expect("length differences fit in u64")
}

/// Generator of `{1ᵀz : Mz = 0}` via the echelon form of the lattice spanned
/// by the columns of `[M; 1ᵀ]`.
pub fn length_difference_generator(rows: &[Vec<u32>], ncols: usize) -> u64 {
    let cols: Vec<Vec<u32>> = (0..ncols).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    generator_of_columns(rows.len(), cols.iter().map(Vec::as_slice))
}

/// Same as [`length_difference_generator`], fed atom exponent vectors directly.
pub(crate) fn generator_of_columns<'a>(dim: usize, cols: impl Iterator<Item = &'a [u32]>) -> u64 {
    let dim = dim + 1;
    let mut echelon = Echelon::new(dim);
    for c in cols {
        let mut v: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        v.push(BigInt::one());
        echelon.insert(v);
    }
    echelon.basis[dim - 1]
        .as_ref()
        .map(|b| b[dim - 1].abs().to_u64().expect("length differences fit in u64"))
        .unwrap_or(0)
}

/// Hermite-reduced echelon basis of a sublattice of `ℤ^dim`, indexed by
/// pivot position.
struct Echelon {
    basis: Vec<Option<Vec<BigInt>>>,
}

impl Echelon {
    fn new(dim: usize) -> Self {
        Echelon {
            basis: vec![None; dim],
        }
    }

    fn insert(&mut self, mut v: Vec<BigInt>) {
        for p in 0..v.len() {
            if v[p].is_zero() {
                continue;
            }
            match self.basis[p].take() {
                None => {
                    if v[p].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.basis[p] = Some(v);
                    self.reduce();
                    return;
                }
                Some(b) => {
                    let (g, s, t) = xgcd(&b[p], &v[p]);
                    let b_over = &b[p] / &g;
                    let v_over = &v[p] / &g;
                    let mut new_b: Vec<BigInt> =
                        b.iter().zip(&v).map(|(x, y)| &s * x + &t * y).collect();
                    if new_b[p].is_negative() {
                        new_b.iter_mut().for_each(|x| *x = -&*x);
                    }
                    let new_v: Vec<BigInt> =
                        b.iter().zip(&v).map(|(x, y)| &b_over * y - &v_over * x).collect();
                    self.basis[p] = Some(new_b);
                    v = new_v;
                }
            }
        }
        self.reduce();
    }

    fn reduce(&mut self) {
        let dim = self.basis.len();
        for q in 0..dim {
            let Some(bq) = self.basis[q].clone() else {
                continue;
            };
            let pivot = &bq[q];
            for p in 0..q {
                if let Some(bp) = self.basis[p].as_mut() {
                    let f = bp[q].div_floor(pivot);
                    if !f.is_zero() {
                        for (x, y) in bp.iter_mut().zip(&bq) {
                            *x -= &f * y;
                        }
                    }
                }
            }
        }
    }
}

/// `min Δ(G₀)`, or 0 when `G₀` is half-factorial.
pub fn min_delta(atoms: &AtomSet) -> u64 {
    generator_of_columns(atoms.support().len(), atoms.iter().map(|a| a.exponents()))
}

/// `min Δ(G₀)` through an explicit kernel basis.
pub fn min_delta_via_kernel(atoms: &AtomSet) -> Result<u64> {
    let basis = integer_kernel(&atoms.exponent_matrix(), atoms.len())?;
    Ok(min_delta_from_kernel(&basis))
}

/// Half-factoriality decided twice: every atom has cross number 1, and the
/// kernel lattice yields no nonzero length difference. Disagreement means a
/// bug and is reported as [`Error::Inconsistent`].
pub fn is_half_factorial(atoms: &AtomSet) -> Result<bool> {
    let support = atoms.support();
    let exp = support.group().exponent() as i64;
    let by_cross_number = atoms
        .iter()
        .all(|a| support.scaled_cross_number(a.exponents()) == exp);
    let by_lattice = min_delta(atoms) == 0;
    if by_cross_number != by_lattice {
        return Err(Error::Inconsistent(format!(
            "half-factoriality routes disagree on {support}: cross numbers say {by_cross_number}, lattice says {by_lattice}"
        )));
    }
    Ok(by_cross_number)
}

/// Two factorizations of one sequence whose lengths differ by `min Δ(G₀)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationPair {
    pub sequence: SequenceVec,
    /// `(atom index, multiplicity)`, the longer factorization.
    pub longer: Vec<(usize, u64)>,
    pub shorter: Vec<(usize, u64)>,
    pub longer_length: u64,
    pub shorter_length: u64,
}

/// A kernel vector realizing the gcd, turned into a pair of factorizations.
/// `None` for half-factorial sets.
pub fn explain_min_delta(atoms: &AtomSet) -> Result<Option<FactorizationPair>> {
    let basis = integer_kernel(&atoms.exponent_matrix(), atoms.len())?;
    let d = min_delta_from_kernel(&basis);
    if d == 0 {
        return Ok(None);
    }
    let d = BigInt::from(d);
    let sums: Vec<BigInt> = basis.vectors.iter().map(|z| z.iter().sum()).collect();

    // Prefer a single basis vector; otherwise combine by Bézout coefficients.
    let z: Vec<BigInt> = match sums.iter().position(|s| s.abs() == d) {
        Some(i) => basis.vectors[i].clone(),
        None => {
            let mut z = vec![BigInt::zero(); atoms.len()];
            let mut g = BigInt::zero();
            for (b, s) in basis.vectors.iter().zip(&sums) {
                if s.is_zero() {
                    continue;
                }
                let (ng, x, y) = xgcd(&g, s);
                for (zi, bi) in z.iter_mut().zip(b) {
                    *zi = &x * &*zi + &y * bi;
                }
                g = ng;
            }
            z
        }
    };
    let total: BigInt = z.iter().sum();
    let z: Vec<BigInt> = if total.is_negative() {
        z.into_iter().map(|x| -x).collect()
    } else {
        z
    };

    let support = atoms.support();
    let mut seq = vec![0u64; support.len()];
    let mut longer = Vec::new();
    let mut shorter = Vec::new();
    for (j, zj) in z.iter().enumerate() {
        let mult = zj.abs().to_u64().ok_or_else(|| {
            Error::Inconsistent("kernel coefficient does not fit in u64".into())
        })?;
        if mult == 0 {
            continue;
        }
        if zj.is_positive() {
            longer.push((j, mult));
            for (s, &e) in seq.iter_mut().zip(atoms.atoms()[j].exponents()) {
                *s += mult * e as u64;
            }
        } else {
            shorter.push((j, mult));
        }
    }
    let exps = seq
        .into_iter()
        .map(|x| u32::try_from(x).map_err(|_| Error::Inconsistent("sequence too long".into())))
        .collect::<Result<Vec<u32>>>()?;
    let longer_length = longer.iter().map(|&(_, m)| m).sum();
    let shorter_length = shorter.iter().map(|&(_, m)| m).sum();
    Ok(Some(FactorizationPair {
        sequence: support.sequence(exps)?,
        longer,
        shorter,
        longer_length,
        shorter_length,
    }))
}
