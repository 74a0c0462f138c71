//! Integer compositions, binary netflow vectors and the maps between them.
//!
//! Two orders on compositions drive the formulas:
//!
//! * refinement: `beta` refines `alpha` when each part of `alpha` is split
//!   into a consecutive run of parts of `beta` ([`refinements`]);
//! * componentwise decrease at fixed length: `beta <=_c alpha` when
//!   `1 <= beta_i <= alpha_i` for every `i` ([`downset_c`]).
//!
//! Both iterators yield compositions in lexicographic order of their parts.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompositionError {
    #[error("composition parts must be positive")]
    ZeroPart,
    #[error("netflow vector must be nonempty")]
    EmptyNetflow,
    #[error("netflow vector must start with a nonzero entry")]
    LeadingZero,
    #[error("netflow entries must be 0 or 1 in strict mode, found {0}")]
    NonBinary(u64),
    #[error("compositions have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("part {index} of beta ({beta}) exceeds part of alpha ({alpha})")]
    NotBelow { index: usize, alpha: u32, beta: u32 },
    #[error("subset element {0} is outside 1..={1}")]
    OutOfUniverse(u32, u32),
}

/// An ordered tuple of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, CompositionError> {
        if parts.contains(&0) {
            return Err(CompositionError::ZeroPart);
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of parts, `l(alpha)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts, `|alpha|`.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A binary netflow vector `(a_1, ..., a_n)` with `a_1 = 1`. The sink
/// `v_{n+1}` is implicit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NetflowVector(Vec<bool>);

impl NetflowVector {
    pub fn new(bits: Vec<bool>) -> Result<Self, CompositionError> {
        match bits.first() {
            None => Err(CompositionError::EmptyNetflow),
            Some(false) => Err(CompositionError::LeadingZero),
            Some(true) => Ok(Self(bits)),
        }
    }

    /// Accepts arbitrary nonnegative netflows and keeps only their support;
    /// the face structure depends on nothing else.
    pub fn from_counts(entries: &[u64]) -> Result<Self, CompositionError> {
        Self::new(entries.iter().map(|&a| a != 0).collect())
    }

    /// Like [`NetflowVector::from_counts`] but rejects entries other than 0
    /// and 1.
    pub fn from_counts_strict(entries: &[u64]) -> Result<Self, CompositionError> {
        if let Some(&bad) = entries.iter().find(|&&a| a > 1) {
            return Err(CompositionError::NonBinary(bad));
        }
        Self::from_counts(entries)
    }

    /// `(1, 0, ..., 0)` of length `n`, the netflow of the Chan-Robbins-Yuen
    /// polytope.
    pub fn cry(n: usize) -> Self {
        assert!(n >= 1, "netflow vectors have length at least 1");
        let mut bits = vec![false; n];
        bits[0] = true;
        Self(bits)
    }

    /// `(1, 1, ..., 1)` of length `n` (Tesler polytope).
    pub fn all_ones(n: usize) -> Self {
        assert!(n >= 1, "netflow vectors have length at least 1");
        Self(vec![true; n])
    }

    /// Every binary vector of length `n` with leading 1, in lexicographic
    /// order.
    pub fn all_binary(n: usize) -> impl Iterator<Item = NetflowVector> {
        assert!((1..64).contains(&n));
        let free = n - 1;
        (0u64..1 << free).map(move |m| {
            let mut bits = Vec::with_capacity(n);
            bits.push(true);
            bits.extend((0..free).map(|k| m >> (free - 1 - k) & 1 == 1));
            NetflowVector(bits)
        })
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// `a_i` for `1 <= i <= n`.
    pub fn is_supply(&self, i: usize) -> bool {
        self.0[i - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// `supp(a_2, ..., a_n)` as a subset of `{1, ..., n-1}`.
    pub fn tail_support(&self) -> SubsetMask {
        let n = self.len() as u32 - 1;
        let mut mask = 0u64;
        for (j, &b) in self.0[1..].iter().enumerate() {
            if b {
                mask |= 1 << j;
            }
        }
        SubsetMask { universe: n, mask }
    }
}

impl fmt::Debug for NetflowVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NetflowVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u8::from(*b))?;
        }
        write!(f, ")")
    }
}

/// A subset of `{1, ..., universe}`, universe at most 64.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SubsetMask {
    universe: u32,
    mask: u64,
}

impl SubsetMask {
    pub fn new(universe: u32, members: &[u32]) -> Result<Self, CompositionError> {
        assert!(universe <= 64);
        let mut mask = 0u64;
        for &s in members {
            if s == 0 || s > universe {
                return Err(CompositionError::OutOfUniverse(s, universe));
            }
            mask |= 1 << (s - 1);
        }
        Ok(Self { universe, mask })
    }

    pub fn empty(universe: u32) -> Self {
        Self { universe, mask: 0 }
    }

    /// Every subset of `{1, ..., universe}` that contains `self`.
    pub fn supersets(self) -> impl Iterator<Item = SubsetMask> {
        let free = !self.mask & full_mask(self.universe);
        // Standard submask walk over the free bits.
        let mut sub = Some(free);
        std::iter::from_fn(move || {
            let cur = sub?;
            sub = if cur == 0 {
                None
            } else {
                Some((cur - 1) & free)
            };
            Some(SubsetMask {
                universe: self.universe,
                mask: self.mask | cur,
            })
        })
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn contains(&self, s: u32) -> bool {
        s >= 1 && s <= self.universe && self.mask >> (s - 1) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        (1..=self.universe).filter(|&s| self.contains(s))
    }
}

fn full_mask(universe: u32) -> u64 {
    if universe == 64 {
        u64::MAX
    } else {
        (1u64 << universe) - 1
    }
}

/// Reads `a` right to left, closing a block at every nonzero entry, and
/// returns the block sizes in reading order.
pub fn revcomp(a: &NetflowVector) -> Composition {
    let mut parts = Vec::with_capacity(a.ones());
    let mut run = 0;
    for &b in a.bits().iter().rev() {
        run += 1;
        if b {
            parts.push(run);
            run = 0;
        }
    }
    Composition(parts)
}

/// Inverse of [`revcomp`].
pub fn from_revcomp(alpha: &Composition) -> NetflowVector {
    let mut rev = Vec::with_capacity(alpha.size() as usize);
    for &p in alpha.parts() {
        rev.extend(std::iter::repeat_n(false, p as usize - 1));
        rev.push(true);
    }
    rev.reverse();
    NetflowVector(rev)
}

/// `seq_n(S)`: the non-increasing sequence of length `n + 1` whose `j`-th
/// entry is `1 + #{s in S : s >= j}`.
pub fn seq(s: &SubsetMask) -> Vec<u32> {
    let n = s.universe();
    let mut out = vec![1u32; n as usize + 1];
    let mut count = 1;
    for j in (1..=n).rev() {
        if s.contains(j) {
            count += 1;
        }
        out[j as usize - 1] = count;
    }
    out
}

/// Descent set of a sequence: the indices `j` with `seq_j > seq_{j+1}`.
pub fn descents(sequence: &[u32]) -> SubsetMask {
    let n = sequence.len().saturating_sub(1) as u32;
    let mut mask = 0u64;
    for j in 0..n as usize {
        if sequence[j] > sequence[j + 1] {
            mask |= 1 << j;
        }
    }
    SubsetMask { universe: n, mask }
}

/// All compositions of `n` in lexicographic order.
pub fn compositions_of(n: u32) -> Refinements {
    if n == 0 {
        return refinements(&Composition(vec![]));
    }
    refinements(&Composition(vec![n]))
}

/// Lazily enumerates the compositions that refine `alpha`, including
/// `alpha` itself; there are `prod 2^(alpha_i - 1)` of them.
pub fn refinements(alpha: &Composition) -> Refinements {
    // Cut positions inside parts, most significant bit first. Walking the
    // mask downwards from all-ones gives lexicographic order.
    let mut boundary = Vec::new();
    let mut free_positions = Vec::new();
    let mut pos = 0usize;
    for (i, &p) in alpha.parts().iter().enumerate() {
        for _ in 1..p {
            free_positions.push(pos);
            pos += 1;
        }
        if i + 1 < alpha.len() {
            boundary.push(pos);
            pos += 1;
        }
    }
    let free = free_positions.len();
    assert!(free < 64, "too many refinements to enumerate");
    Refinements {
        total: alpha.size(),
        boundary,
        free_positions,
        next: Some((1u64 << free) - 1),
    }
}

pub struct Refinements {
    total: u32,
    boundary: Vec<usize>,
    free_positions: Vec<usize>,
    next: Option<u64>,
}

impl Iterator for Refinements {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let mask = self.next?;
        self.next = mask.checked_sub(1);
        if self.total == 0 {
            self.next = None;
            return Some(Composition(vec![]));
        }
        let gaps = self.total as usize - 1;
        let mut cut = vec![false; gaps];
        for &b in &self.boundary {
            cut[b] = true;
        }
        let free = self.free_positions.len();
        for (k, &p) in self.free_positions.iter().enumerate() {
            cut[p] = mask >> (free - 1 - k) & 1 == 1;
        }
        let mut parts = Vec::new();
        let mut run = 1;
        for c in cut {
            if c {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        Some(Composition(parts))
    }
}

/// Lazily enumerates `{beta : l(beta) = l(alpha), 1 <= beta_i <= alpha_i}`,
/// a product of chains with `prod alpha_i` elements.
pub fn downset_c(alpha: &Composition) -> DownsetC {
    DownsetC {
        upper: alpha.parts().to_vec(),
        next: Some(vec![1; alpha.len()]),
    }
}

pub struct DownsetC {
    upper: Vec<u32>,
    next: Option<Vec<u32>>,
}

impl Iterator for DownsetC {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if succ[i] < self.upper[i] {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = 1;
        }
        Some(Composition(cur))
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `k_{alpha,beta} = prod_i C(alpha_i - 1, alpha_i - beta_i)`: the number of
/// ways to delete zeros from `from_revcomp(alpha)` and obtain
/// `from_revcomp(beta)`.
pub fn k_coeff(alpha: &Composition, beta: &Composition) -> Result<u128, CompositionError> {
    if alpha.len() != beta.len() {
        return Err(CompositionError::LengthMismatch(alpha.len(), beta.len()));
    }
    let mut acc = 1u128;
    for (index, (&a, &b)) in alpha.parts().iter().zip(beta.parts()).enumerate() {
        if b > a {
            return Err(CompositionError::NotBelow {
                index,
                alpha: a,
                beta: b,
            });
        }
        acc *= binomial(u64::from(a) - 1, u64::from(a - b));
    }
    Ok(acc)
}

/// Block sizes of `a` cut before every 1, read left to right: a run "1
/// followed by its zeros" contributes one part.
pub fn signature(a: &NetflowVector) -> Composition {
    let mut parts: Vec<u32> = Vec::new();
    for &b in a.bits() {
        if b {
            parts.push(1);
        } else if let Some(last) = parts.last_mut() {
            *last += 1;
        }
    }
    Composition(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: &[u32]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    fn nv(bits: &[u8]) -> NetflowVector {
        NetflowVector::new(bits.iter().map(|&b| b == 1).collect()).unwrap()
    }

    #[test]
    fn revcomp_examples() {
        assert_eq!(revcomp(&nv(&[1, 1, 0, 0, 1, 0, 1, 0])), c(&[2, 2, 3, 1]));
        assert_eq!(revcomp(&nv(&[1])), c(&[1]));
        assert_eq!(revcomp(&nv(&[1, 0, 0])), c(&[3]));
    }

    #[test]
    fn rejects_leading_zero() {
        assert_eq!(
            NetflowVector::new(vec![false, true]),
            Err(CompositionError::LeadingZero)
        );
        assert_eq!(
            NetflowVector::new(vec![]),
            Err(CompositionError::EmptyNetflow)
        );
        assert!(Composition::new(vec![1, 0]).is_err());
    }

    #[test]
    fn netflow_canonicalisation() {
        assert_eq!(
            NetflowVector::from_counts(&[3, 0, 2]).unwrap(),
            nv(&[1, 0, 1])
        );
        assert_eq!(
            NetflowVector::from_counts_strict(&[3, 0, 2]),
            Err(CompositionError::NonBinary(3))
        );
        assert_eq!(
            NetflowVector::from_counts(&[0, 1]),
            Err(CompositionError::LeadingZero)
        );
    }

    #[test]
    fn seq_examples() {
        let s = |m: &[u32]| seq(&SubsetMask::new(4, m).unwrap());
        assert_eq!(s(&[1, 2]), vec![3, 2, 1, 1, 1]);
        assert_eq!(s(&[1, 3]), vec![3, 2, 2, 1, 1]);
        assert_eq!(s(&[2, 4]), vec![3, 3, 2, 2, 1]);
        assert_eq!(s(&[3, 4]), vec![3, 3, 3, 2, 1]);
        assert_eq!(seq(&SubsetMask::empty(5)), vec![1; 6]);
        assert!(SubsetMask::new(4, &[5]).is_err());
    }

    #[test]
    fn refinement_examples() {
        assert_eq!(
            refinements(&c(&[2])).collect::<Vec<_>>(),
            vec![c(&[1, 1]), c(&[2])]
        );
        assert_eq!(
            refinements(&c(&[2, 1])).collect::<Vec<_>>(),
            vec![c(&[1, 1, 1]), c(&[2, 1])]
        );
        assert_eq!(
            compositions_of(3).collect::<Vec<_>>(),
            vec![c(&[1, 1, 1]), c(&[1, 2]), c(&[2, 1]), c(&[3])]
        );
        for n in 1..=10 {
            assert_eq!(compositions_of(n).count(), 1 << (n - 1));
        }
    }

    #[test]
    fn downset_examples() {
        assert_eq!(
            downset_c(&c(&[2, 2])).collect::<Vec<_>>(),
            vec![c(&[1, 1]), c(&[1, 2]), c(&[2, 1]), c(&[2, 2])]
        );
        assert_eq!(
            downset_c(&c(&[1, 1, 1])).collect::<Vec<_>>(),
            vec![c(&[1, 1, 1])]
        );
        assert_eq!(downset_c(&c(&[3, 2])).count(), 6);
    }

    #[test]
    fn k_coeff_examples() {
        let alpha = revcomp(&nv(&[1, 0, 0, 1, 1, 0]));
        let beta = revcomp(&nv(&[1, 0, 1, 1, 0]));
        assert_eq!(k_coeff(&alpha, &beta), Ok(2));
        assert_eq!(k_coeff(&alpha, &alpha), Ok(1));
        assert_eq!(k_coeff(&c(&[3]), &c(&[2])), Ok(2));
        assert_eq!(
            k_coeff(&c(&[3]), &c(&[1, 1])),
            Err(CompositionError::LengthMismatch(1, 2))
        );
        assert!(matches!(
            k_coeff(&c(&[2]), &c(&[3])),
            Err(CompositionError::NotBelow { .. })
        ));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&NetflowVector::cry(6)), c(&[6]));
        assert_eq!(signature(&nv(&[1, 1, 1, 0])), c(&[1, 1, 2]));
        assert_eq!(signature(&nv(&[1, 1])), c(&[1, 1]));
    }

    #[test]
    fn revcomp_is_a_bijection() {
        for n in 1..=12u32 {
            let mut seen = std::collections::HashSet::new();
            for a in NetflowVector::all_binary(n as usize) {
                let alpha = revcomp(&a);
                assert_eq!(alpha.size(), n);
                // sizes swap under the bijection
                assert_eq!(alpha.size() as usize, a.len());
                assert_eq!(alpha.len(), a.ones());
                assert_eq!(from_revcomp(&alpha), a);
                assert!(seen.insert(alpha));
            }
            assert_eq!(seen.len(), 1 << (n - 1));
        }
    }

    #[test]
    fn seq_and_descents_are_inverse() {
        for n in 0..=10u32 {
            for mask in 0u64..1 << n {
                let s = SubsetMask { universe: n, mask };
                let sq = seq(&s);
                assert_eq!(descents(&sq), s);
                assert_eq!(sq.len(), n as usize + 1);
                assert_eq!(*sq.last().unwrap(), 1);
                assert_eq!(sq[0] as usize, 1 + s.len());
                assert!(sq.windows(2).all(|w| w[0] == w[1] || w[0] == w[1] + 1));
            }
        }
    }

    #[test]
    fn poset_sizes() {
        for n in 1..=10 {
            for alpha in compositions_of(n) {
                let refined: Vec<_> = refinements(&alpha).collect();
                let expect: usize = alpha.parts().iter().map(|&p| 1usize << (p - 1)).product();
                assert_eq!(refined.len(), expect);
                assert!(refined.windows(2).all(|w| w[0] < w[1]));
                assert!(refined.iter().all(|b| b.size() == n));
                let down: Vec<_> = downset_c(&alpha).collect();
                let expect: usize = alpha.parts().iter().map(|&p| p as usize).product();
                assert_eq!(down.len(), expect);
                assert!(down.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn supersets_of_support() {
        let s = SubsetMask::new(4, &[2]).unwrap();
        let sup: Vec<_> = s.supersets().collect();
        assert_eq!(sup.len(), 8);
        assert!(sup.iter().all(|t| t.contains(2)));
    }
}
