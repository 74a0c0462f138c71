//! Formula engines for the f-polynomial `f^(n)(a; x)` and the primitive
//! f-polynomial `f~^(n)(a; x)` of `Flow_n(a)`.
//!
//! There are deliberately several routes to the same polynomial:
//!
//! * [`primitive_fpoly_subsets`]: inclusion-exclusion over subsets
//!   `supp(a_2..a_n) ⊆ S ⊆ [n-1]`;
//! * [`primitive_fpoly`]: the refinement sum `P_alpha` evaluated at
//!   `x_i = (x+1)^i - 1`, with `alpha = revcomp(a)`;
//! * [`fpoly_from_primitive`]: f as a weighted sum of primitive
//!   f-polynomials over the `<=_c` downset of `alpha`;
//! * [`fpoly_main`]: the closed refinement sum with
//!   `x_i = (x+1)^i - (x+1)`;
//! * [`cry_fpoly`] / [`cry_primitive_fpoly`]: complete homogeneous sums for
//!   `a = (1, 0, ..., 0)`.
//!
//! # Sign convention
//!
//! The refinement sums carry the sign `(-1)^(|alpha| - l(beta))`. The
//! variant `(-1)^(l(alpha) - l(beta))` disagrees with the face counts as
//! soon as `n = 2` (it gives `1/x - 2 - x` for `CRY_2`); it is kept as
//! [`SignConvention::PartCount`] so that the discrepancy can be shown.
//!
//! Division by `x^n` is always an exact shift; a nonzero remainder means a
//! bug and is reported as [`FaceCountError::Laurent`].

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::compositions::{
    self, downset_c, from_revcomp, k_coeff, refinements, revcomp, seq, Composition,
    CompositionError, NetflowVector,
};
use crate::laurent::{pi, LaurentError, LaurentPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FaceCountError {
    #[error("evaluation vector has {have} slots, {needed} needed")]
    MissingSlots { needed: usize, have: usize },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Composition(#[from] CompositionError),
    #[error("polynomial has a term below x^-1: {0}")]
    NotAnFVector(String),
    #[error("order n must be at least 1")]
    ZeroOrder,
    #[error("order n = {n} is below the minimum {min}")]
    OrderTooSmall { n: usize, min: usize },
    #[error("composition of size {size} exceeds the bound {bound}")]
    TooLarge { size: u32, bound: u32 },
}

/// Face numbers indexed by dimension `d = -1, 0, 1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVector {
    entries: Vec<BigInt>,
}

impl FVector {
    /// Entries start at dimension -1. Trailing zeros are dropped.
    pub fn from_entries(entries: impl IntoIterator<Item = impl Into<BigInt>>) -> Self {
        let mut entries: Vec<BigInt> = entries.into_iter().map(Into::into).collect();
        while entries.len() > 1 && entries.last().is_some_and(Zero::is_zero) {
            entries.pop();
        }
        if entries.is_empty() {
            entries.push(BigInt::zero());
        }
        Self { entries }
    }

    pub fn from_laurent(p: &LaurentPoly) -> Result<Self, FaceCountError> {
        if p.lowest_exponent().is_some_and(|e| e < -1) {
            return Err(FaceCountError::NotAnFVector(p.to_string()));
        }
        let top = p.degree().unwrap_or(-1);
        Ok(Self::from_entries((-1..=top).map(|d| p.coeff(d))))
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(-1, self.entries.iter().cloned())
    }

    /// `f_d`, zero outside the stored range.
    pub fn get(&self, d: i64) -> BigInt {
        usize::try_from(d + 1)
            .ok()
            .and_then(|i| self.entries.get(i))
            .cloned()
            .unwrap_or_default()
    }

    /// Highest stored dimension.
    pub fn top_dimension(&self) -> i64 {
        self.entries.len() as i64 - 2
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// `(d, f_d)` pairs starting at `d = -1`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, v)| (i as i64 - 1, v))
    }

    pub fn total(&self) -> BigInt {
        self.entries.iter().sum()
    }
}

/// Values substituted for the formal variables `x_1, x_2, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationVector(Vec<LaurentPoly>);

impl EvaluationVector {
    pub fn new(values: Vec<LaurentPoly>) -> Self {
        Self(values)
    }

    /// `x_i = (x+1)^i - 1` for `i = 1..=n`.
    pub fn simplex(n: usize) -> Self {
        let y = LaurentPoly::x() + LaurentPoly::one();
        Self(
            (1..=n as u32)
                .map(|i| y.pow(i) - LaurentPoly::one())
                .collect(),
        )
    }

    /// `x_i = (x+1)^i - (x+1)` for `i = 1..=n`.
    pub fn shifted(n: usize) -> Self {
        let y = LaurentPoly::x() + LaurentPoly::one();
        Self((1..=n as u32).map(|i| y.pow(i) - y.clone()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[LaurentPoly] {
        &self.0
    }

    fn require(&self, needed: usize) -> Result<(), FaceCountError> {
        if self.0.len() < needed {
            return Err(FaceCountError::MissingSlots {
                needed,
                have: self.0.len(),
            });
        }
        Ok(())
    }
}

/// Which sign the refinement sums use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// `(-1)^(|alpha| - l(beta))`; agrees with enumeration.
    #[default]
    Size,
    /// `(-1)^(l(alpha) - l(beta))`.
    PartCount,
}

impl SignConvention {
    fn sign(self, alpha: &Composition, beta: &Composition) -> bool {
        let reference = match self {
            SignConvention::Size => alpha.size() as usize,
            SignConvention::PartCount => alpha.len(),
        };
        (reference + beta.len()) % 2 == 1
    }
}

/// Caches `v_i^k` so each power is built once per evaluation.
struct PowerTable<'a> {
    base: &'a [LaurentPoly],
    powers: Vec<Vec<LaurentPoly>>,
}

impl<'a> PowerTable<'a> {
    fn new(base: &'a [LaurentPoly]) -> Self {
        Self {
            base,
            powers: base.iter().map(|_| vec![LaurentPoly::one()]).collect(),
        }
    }

    fn get(&mut self, i: usize, k: u32) -> &LaurentPoly {
        let k = k as usize;
        let row = &mut self.powers[i];
        while row.len() <= k {
            let next = row.last().unwrap() * &self.base[i];
            row.push(next);
        }
        &row[k]
    }

    /// `prod_i v_i^(exps_i)`.
    fn monomial(&mut self, exps: impl IntoIterator<Item = u32>) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for (i, e) in exps.into_iter().enumerate() {
            if e > 0 {
                acc = &acc * self.get(i, e);
            }
        }
        acc
    }
}

/// `P_alpha(v) = sum over beta refining alpha of (-1)^(|alpha| - l(beta)) prod_i v_i^(beta_i)`.
pub fn p_alpha_eval(
    alpha: &Composition,
    v: &EvaluationVector,
) -> Result<LaurentPoly, FaceCountError> {
    v.require(alpha.size() as usize)?;
    let mut table = PowerTable::new(v.values());
    let mut acc = LaurentPoly::zero();
    for beta in refinements(alpha) {
        let term = table.monomial(beta.parts().iter().copied());
        if SignConvention::Size.sign(alpha, &beta) {
            acc -= &term;
        } else {
            acc += &term;
        }
    }
    Ok(acc)
}

/// Primitive f-polynomial by inclusion-exclusion over subsets
/// `supp(a_2, ..., a_n) ⊆ S ⊆ [n-1]`.
pub fn primitive_fpoly_subsets(a: &NetflowVector) -> Result<LaurentPoly, FaceCountError> {
    let n = a.len();
    let y = LaurentPoly::x() + LaurentPoly::one();
    let factors: Vec<LaurentPoly> = (0..=n as u32)
        .map(|k| y.pow(k) - LaurentPoly::one())
        .collect();
    let mut acc = LaurentPoly::zero();
    for s in a.tail_support().supersets() {
        let term: LaurentPoly = seq(&s)
            .iter()
            .map(|&k| factors[k as usize].clone())
            .product();
        if (s.len() + n + 1) % 2 == 1 {
            acc -= &term;
        } else {
            acc += &term;
        }
    }
    Ok(acc.div_x_pow(n as i64)?)
}

/// Primitive f-polynomial `x^-n P_alpha(x, (x+1)^2 - 1, ..., (x+1)^n - 1)`.
pub fn primitive_fpoly(a: &NetflowVector) -> Result<LaurentPoly, FaceCountError> {
    let alpha = revcomp(a);
    primitive_from_composition(&alpha)
}

fn primitive_from_composition(alpha: &Composition) -> Result<LaurentPoly, FaceCountError> {
    let n = alpha.size() as usize;
    let p = p_alpha_eval(alpha, &EvaluationVector::simplex(n))?;
    Ok(p.div_x_pow(n as i64)?)
}

/// f-polynomial as `1/x + sum_{beta <=_c alpha} k_{alpha,beta} f~(from_revcomp(beta))`:
/// every nonempty face is primitive on the vertices its flow touches.
pub fn fpoly_from_primitive(a: &NetflowVector) -> Result<LaurentPoly, FaceCountError> {
    let alpha = revcomp(a);
    let mut acc = LaurentPoly::monomial(-1, 1);
    for beta in downset_c(&alpha) {
        let k = k_coeff(&alpha, &beta)?;
        debug_assert_eq!(revcomp(&from_revcomp(&beta)), beta);
        acc += &primitive_from_composition(&beta)?.scale(&BigInt::from(k));
    }
    Ok(acc)
}

/// The closed refinement-sum formula for the f-polynomial:
///
/// `1/x + x^-n sum_{beta refining alpha} sign * pi_{l(beta)}(x) * prod_i ((x+1)^i - (x+1))^(beta_i - 1)`.
pub fn fpoly_main(a: &NetflowVector) -> Result<LaurentPoly, FaceCountError> {
    fpoly_main_with_sign(a, SignConvention::Size)
}

pub fn fpoly_main_with_sign(
    a: &NetflowVector,
    convention: SignConvention,
) -> Result<LaurentPoly, FaceCountError> {
    let alpha = revcomp(a);
    let n = a.len();
    let x = LaurentPoly::x();
    let shifted = EvaluationVector::shifted(n);
    let mut table = PowerTable::new(shifted.values());
    let pis: Vec<LaurentPoly> = (0..=n as u32).map(|k| pi(k, &x)).collect();
    let mut acc = LaurentPoly::zero();
    for beta in refinements(&alpha) {
        // Every term is homogeneous of degree n in the x_i before division.
        let term = &pis[beta.len()] * &table.monomial(beta.parts().iter().map(|&b| b - 1));
        if convention.sign(&alpha, &beta) {
            acc -= &term;
        } else {
            acc += &term;
        }
    }
    Ok(LaurentPoly::monomial(-1, 1) + acc.div_x_pow(n as i64)?)
}

/// Complete homogeneous symmetric polynomial `h_m` evaluated at `values`.
pub fn h_complete_eval(m: usize, values: &[LaurentPoly]) -> LaurentPoly {
    // h[j] holds h_j of the variables consumed so far.
    let mut h = vec![LaurentPoly::zero(); m + 1];
    h[0] = LaurentPoly::one();
    for v in values {
        for j in 1..=m {
            let add = &h[j - 1] * v;
            h[j] += &add;
        }
    }
    h.swap_remove(m)
}

/// f-polynomial of `CRY_n` as an alternating sum of complete homogeneous
/// evaluations.
///
/// The sum runs over `m = 0..=n-1`; the `m = n-1` term has an empty variable
/// list and vanishes for `n >= 2`, but is what produces `1/x + 1` at `n = 1`.
pub fn cry_fpoly(n: usize) -> Result<LaurentPoly, FaceCountError> {
    if n == 0 {
        return Err(FaceCountError::ZeroOrder);
    }
    let x = LaurentPoly::x();
    let one_plus_x = &x + &LaurentPoly::one();
    let vars = EvaluationVector::simplex(n);
    let mut acc = LaurentPoly::zero();
    for m in 0..n {
        let term = one_plus_x.pow(m as u32)
            * pi((n - m) as u32, &x)
            * h_complete_eval(m, &vars.values()[..n - m - 1]);
        if m % 2 == 1 {
            acc -= &term;
        } else {
            acc += &term;
        }
    }
    Ok(LaurentPoly::monomial(-1, 1) + acc.div_x_pow(n as i64)?)
}

/// Primitive f-polynomial of `CRY_n` via complete homogeneous evaluations.
pub fn cry_primitive_fpoly(n: usize) -> Result<LaurentPoly, FaceCountError> {
    if n == 0 {
        return Err(FaceCountError::ZeroOrder);
    }
    let x = LaurentPoly::x();
    let vars = EvaluationVector::simplex(n);
    let mut acc = LaurentPoly::zero();
    for m in 0..n {
        let term = pi((n - m) as u32, &x) * h_complete_eval(m, &vars.values()[..n - m]);
        if m % 2 == 1 {
            acc -= &term;
        } else {
            acc += &term;
        }
    }
    Ok(acc.div_x_pow(n as i64)?)
}

/// The `n = 0` convention: `(f^(0), f~^(0)) = (1/x + 1, 1)`. Not covered by
/// any of the formulas; `f~^(0) = 1` is the value that makes
/// `x f^(1) = (1+x) f~^(0)` hold.
pub fn zero_order_convention() -> (LaurentPoly, LaurentPoly) {
    (LaurentPoly::from_coeffs(-1, [1, 1]), LaurentPoly::one())
}

/// `sum_{i=0}^{n-1} C(n-1, i) f~^(n-i)_d` for `CRY_n`.
pub fn cry_face_count_binomial(n: usize, d: i64) -> Result<BigInt, FaceCountError> {
    if n == 0 {
        return Err(FaceCountError::ZeroOrder);
    }
    let mut acc = BigInt::zero();
    for i in 0..n {
        let prim = cry_primitive_fpoly(n - i)?;
        acc += prim.coeff(d) * BigInt::from(compositions::binomial((n - 1) as u64, i as u64));
    }
    Ok(acc)
}

/// Largest `|alpha|` accepted by [`helper_identity_check`].
pub const HELPER_IDENTITY_MAX_SIZE: u32 = 12;

/// Seed used by [`helper_identity_check`].
pub const HELPER_IDENTITY_SEED: u64 = 0x5eed_f10e;

/// Checks the multivariate identity behind the closed f-polynomial formula
///
/// `sum_{beta <=_c alpha} x_1^(|alpha|-|beta|) k_{alpha,beta} P_beta(x)
///   = sum_{beta refining alpha} (-1)^(|alpha|-l(beta)) prod_i x_i (x_i - x_1)^(beta_i - 1)`
///
/// at `trials` random integer points with coordinates in `[-20, 20]`.
pub fn helper_identity_check(alpha: &Composition, trials: usize) -> Result<bool, FaceCountError> {
    helper_identity_check_seeded(alpha, trials, HELPER_IDENTITY_SEED)
}

pub fn helper_identity_check_seeded(
    alpha: &Composition,
    trials: usize,
    seed: u64,
) -> Result<bool, FaceCountError> {
    let size = alpha.size();
    if size > HELPER_IDENTITY_MAX_SIZE {
        return Err(FaceCountError::TooLarge {
            size,
            bound: HELPER_IDENTITY_MAX_SIZE,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let point: Vec<BigInt> = (0..size)
            .map(|_| BigInt::from(rng.gen_range(-20i64..=20)))
            .collect();
        if helper_lhs(alpha, &point)? != helper_rhs(alpha, &point) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn constants(point: &[BigInt]) -> EvaluationVector {
    EvaluationVector::new(point.iter().cloned().map(LaurentPoly::constant).collect())
}

fn helper_lhs(alpha: &Composition, point: &[BigInt]) -> Result<BigInt, FaceCountError> {
    let v = constants(point);
    let mut acc = BigInt::zero();
    for beta in downset_c(alpha) {
        let k = BigInt::from(k_coeff(alpha, &beta)?);
        let p = p_alpha_eval(&beta, &v)?.coeff(0);
        acc += k * point[0].pow(alpha.size() - beta.size()) * p;
    }
    Ok(acc)
}

fn helper_rhs(alpha: &Composition, point: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for beta in refinements(alpha) {
        let mut term = BigInt::one();
        for (i, &b) in beta.parts().iter().enumerate() {
            term *= &point[i] * (&point[i] - &point[0]).pow(b - 1);
        }
        if SignConvention::Size.sign(alpha, &beta) {
            acc -= term;
        } else {
            acc += term;
        }
    }
    acc
}
