//! Partitions of `n` with bounded parts, written as exponent vectors.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::isobaric::WeightVector;

/// `α = (α_1, …, α_k)` standing for the partition `(1^{α_1}, …, k^{α_k})`.
///
/// Equality, hashing and ordering ignore trailing zeros, so vectors of
/// different padded lengths describing the same partition compare equal.
/// The order is colexicographic: the multiplicity of the largest part is
/// compared first. This is the order in which the closed forms are usually
/// printed (`t1^4 + 3*t1^2*t2 + t2^2 + 2*t1*t3 + t4`).
#[derive(Debug, Clone)]
pub struct ExponentVector {
    alpha: Vec<u32>,
}

impl ExponentVector {
    pub fn new(alpha: Vec<u32>) -> Self {
        ExponentVector { alpha }
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    /// Multiplicity of part `j` (1-based), zero past the stored length.
    pub fn get(&self, j: usize) -> u32 {
        if j == 0 {
            return 0;
        }
        self.alpha.get(j - 1).copied().unwrap_or(0)
    }

    /// The partitioned integer `Σ j·α_j`.
    pub fn n(&self) -> u64 {
        self.alpha
            .iter()
            .enumerate()
            .map(|(i, &a)| (i as u64 + 1) * a as u64)
            .sum()
    }

    /// Number of parts `|α| = Σ α_j`.
    pub fn size(&self) -> u64 {
        self.alpha.iter().map(|&a| a as u64).sum()
    }

    /// Largest part used, 0 for the empty partition.
    pub fn largest_part(&self) -> usize {
        self.trimmed().len()
    }

    pub fn padded(&self, k: usize) -> ExponentVector {
        let mut alpha = self.trimmed().to_vec();
        alpha.resize(k.max(alpha.len()), 0);
        ExponentVector { alpha }
    }

    fn trimmed(&self) -> &[u32] {
        let end = self.alpha.iter().rposition(|&a| a != 0).map_or(0, |i| i + 1);
        &self.alpha[..end]
    }

    /// Componentwise sum (the partition union).
    pub fn union(&self, other: &ExponentVector) -> ExponentVector {
        let len = self.alpha.len().max(other.alpha.len());
        ExponentVector {
            alpha: (1..=len).map(|j| self.get(j) + other.get(j)).collect(),
        }
    }
}

impl PartialEq for ExponentVector {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for ExponentVector {}

impl Hash for ExponentVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.trimmed().hash(state);
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.alpha.len().max(other.alpha.len());
        (1..=len)
            .rev()
            .map(|j| self.get(j).cmp(&other.get(j)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.alpha.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// All exponent vectors of length `k` with `Σ j·α_j = n`, in colex order.
/// `n = 0` yields the single empty partition.
pub fn enumerate_partitions(n: usize, k: usize) -> Vec<ExponentVector> {
    assert!(k >= 1, "at least one part size is required");
    let mut out = Vec::new();
    let mut alpha = vec![0u32; k];
    fill(n, k, &mut alpha, &mut out);
    out
}

// Chooses α_j for j = part, part-1, …, 1 with ascending multiplicities so the
// output comes out colex-sorted.
fn fill(rest: usize, part: usize, alpha: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
    if part == 1 {
        alpha[0] = rest as u32;
        out.push(ExponentVector::new(alpha.clone()));
        alpha[0] = 0;
        return;
    }
    for m in 0..=rest / part {
        alpha[part - 1] = m as u32;
        fill(rest - m * part, part - 1, alpha, out);
    }
    alpha[part - 1] = 0;
}

/// Number of partitions of `n` into parts of size at most `k`, by the
/// recurrence `P(n,k) = P(n-k,k) + P(n,k-1)`.
pub fn partition_count(n: usize, k: usize) -> u64 {
    let mut table = vec![vec![0u64; k + 1]; n + 1];
    for kk in 0..=k {
        table[0][kk] = 1;
    }
    for nn in 1..=n {
        for kk in 1..=k {
            table[nn][kk] = table[nn][kk - 1] + if nn >= kk { table[nn - kk][kk] } else { 0 };
        }
    }
    table[n][k]
}

pub fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The multinomial coefficient `|α|! / Π α_j!`.
pub fn multinomial(alpha: &ExponentVector) -> BigInt {
    let mut total = 0u64;
    let mut acc = BigInt::one();
    for &a in alpha.alpha() {
        total += a as u64;
        acc *= binomial(total, a as u64);
    }
    acc
}

/// `(Σ α_j ω_j) / |α|`, and 1 for the empty partition.
pub fn weight_factor(alpha: &ExponentVector, omega: &WeightVector) -> Result<BigRational> {
    let size = alpha.size();
    if size == 0 {
        return Ok(BigRational::one());
    }
    let mut num = BigInt::zero();
    for j in 1..=alpha.largest_part() {
        let a = alpha.get(j);
        if a != 0 {
            num += omega.weight(j)? * BigInt::from(a);
        }
    }
    Ok(BigRational::new(num, BigInt::from(size)))
}
