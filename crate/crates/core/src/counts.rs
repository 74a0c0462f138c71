//! Closed-form face counts that avoid computing a whole f-vector.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::compositions::{signature, NetflowVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("n = {n} is below the minimum {min}")]
    OrderTooSmall { n: usize, min: usize },
    #[error("codimension d = {d} is outside 1..={max} for n = {n}")]
    CodimOutOfRange { n: usize, d: usize, max: usize },
}

fn big_binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Vertices of `CRY_n`: `2^(n-1)`.
pub fn cry_vertex_count(n: usize) -> Result<BigInt, CountError> {
    if n == 0 {
        return Err(CountError::OrderTooSmall { n, min: 1 });
    }
    Ok(BigInt::one() << (n - 1))
}

/// Edges of `CRY_n`: `2 * 3^(n-1) - (n + 3) * 2^(n-2)`.
pub fn cry_edge_count(n: usize) -> Result<BigInt, CountError> {
    if n < 2 {
        return Err(CountError::OrderTooSmall { n, min: 2 });
    }
    let three = BigInt::from(3u8).pow(n as u32 - 1);
    Ok(three * 2 - (BigInt::one() << (n - 2)) * (n + 3))
}

/// Vertices of `Flow_n(a)` for binary `a`:
/// `prod_{j=1}^{n-1} (1 + #{i <= j : a_i = 1})`.
pub fn flow_vertex_count(a: &NetflowVector) -> BigInt {
    let mut supplies = 0u64;
    let mut count = BigInt::one();
    for &bit in a.bits().iter().take(a.len().saturating_sub(1)) {
        supplies += u64::from(bit);
        count *= supplies + 1;
    }
    count
}

/// `k^(c_k - 1) * prod_{i<k} (i+1)^(c_i)` over the signature
/// `(c_1, ..., c_k)` of `a`.
///
/// Kept for comparison only; it disagrees with enumeration, e.g. it gives
/// 1 on `(1, 0, ..., 0)` and 4 on `(1, 1, 0)`. Use [`flow_vertex_count`].
pub fn vertex_count_printed(a: &NetflowVector) -> BigInt {
    let c = signature(a);
    let c = c.parts();
    let k = c.len();
    let mut count = BigInt::from(k).pow(c[k - 1] - 1);
    for (i, &ci) in c[..k - 1].iter().enumerate() {
        count *= BigInt::from(i + 2).pow(ci);
    }
    count
}

/// Coefficients `a_0, ..., a_D` of `prod_{k>=1} (1 - x^k)^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicoloredPartitionCoeffs {
    coeffs: Vec<BigInt>,
}

impl BicoloredPartitionCoeffs {
    pub fn get(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// `prod_{k=1}^{D} (1 - x^k)^2` truncated to degree `D`.
pub fn partition_coeffs(max_degree: usize) -> BicoloredPartitionCoeffs {
    let mut coeffs = vec![BigInt::zero(); max_degree + 1];
    coeffs[0] = BigInt::one();
    for k in 1..=max_degree {
        for _ in 0..2 {
            for i in (k..=max_degree).rev() {
                let shifted = coeffs[i - k].clone();
                coeffs[i] -= shifted;
            }
        }
    }
    BicoloredPartitionCoeffs { coeffs }
}

/// `sum_{i=0}^{d} a_i * C(E - i, d - i)` with `E = C(n+1, 2)`.
///
/// For `1 <= d <= n - 1` this is the number of primitive faces of
/// `CRY_n` of codimension `d`; for `d <= n - 2` it is also the number of
/// all faces of that codimension.
pub fn low_codim_face_count(n: usize, d: usize) -> Result<BigInt, CountError> {
    if d == 0 || d + 1 > n {
        return Err(CountError::CodimOutOfRange {
            n,
            d,
            max: n.saturating_sub(1),
        });
    }
    let edges = (n * (n + 1) / 2) as u64;
    let a = partition_coeffs(d);
    Ok((0..=d)
        .map(|i| a.get(i) * big_binomial(edges - i as u64, (d - i) as u64))
        .sum())
}
