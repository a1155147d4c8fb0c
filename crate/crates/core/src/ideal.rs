//! Relative (fractional monomial) ideals of `k[[H]]`.
//!
//! An ideal is a set `E` of integers with `E + H ⊆ E`, bounded below, given
//! by its minimal generators. Every integer at or beyond `min(E) + c(H)` is a
//! member, so a member table over that window answers all queries.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::{NumericalSemigroup, SemigroupSpec};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "IdealSpec", into = "IdealSpec")]
pub struct RelativeIdeal {
    base: NumericalSemigroup,
    gens: Vec<i64>,
    /// Membership of `gens[0] + i` for `0 <= i < c(H)`.
    window: Vec<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealSpec {
    pub base: SemigroupSpec,
    pub gens: Vec<i64>,
}

impl TryFrom<IdealSpec> for RelativeIdeal {
    type Error = Error;
    fn try_from(spec: IdealSpec) -> Result<Self> {
        let base = NumericalSemigroup::try_from(spec.base)?;
        RelativeIdeal::new(&base, &spec.gens)
    }
}

impl From<RelativeIdeal> for IdealSpec {
    fn from(e: RelativeIdeal) -> Self {
        IdealSpec {
            base: e.base.into(),
            gens: e.gens,
        }
    }
}

impl RelativeIdeal {
    /// The ideal `∪ (g + H)` over `gens`, minimalized.
    pub fn new(base: &NumericalSemigroup, gens: &[i64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let minimal: Vec<i64> = sorted
            .iter()
            .copied()
            .filter(|&g| !sorted.iter().any(|&h| h < g && base.contains(g - h)))
            .collect();
        Ok(Self::from_minimal(base.clone(), minimal))
    }

    fn from_minimal(base: NumericalSemigroup, gens: Vec<i64>) -> Self {
        let lo = gens[0];
        let window = (0..base.conductor())
            .map(|i| gens.iter().any(|&g| base.contains(lo + i - g)))
            .collect();
        RelativeIdeal { base, gens, window }
    }

    /// Builds the ideal whose members are exactly `{z : member(z)}`, given
    /// that no member lies below `lo` and every integer `>= hi` is a member.
    /// The caller guarantees closure under addition of `H`.
    pub fn from_predicate(
        base: &NumericalSemigroup,
        lo: i64,
        hi: i64,
        member: impl Fn(i64) -> bool,
    ) -> Result<Self> {
        let m = base.multiplicity();
        let is_member = |z: i64| z >= lo && (z >= hi || member(z));
        let gens: Vec<i64> = (lo..hi.max(lo) + m)
            .filter(|&z| {
                is_member(z) && base.generators().iter().all(|&a| !is_member(z - a))
            })
            .collect();
        if gens.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        Ok(Self::from_minimal(base.clone(), gens))
    }

    /// `R` itself.
    pub fn unit(base: &NumericalSemigroup) -> Self {
        Self::from_minimal(base.clone(), vec![0])
    }

    /// `t^a R`.
    pub fn principal(base: &NumericalSemigroup, a: i64) -> Self {
        Self::from_minimal(base.clone(), vec![a])
    }

    /// The maximal ideal `H \ {0}`.
    pub fn maximal(base: &NumericalSemigroup) -> Self {
        Self::from_minimal(base.clone(), base.generators().to_vec())
    }

    /// An oversemigroup `T ⊇ H` viewed as an `R`-module.
    pub fn from_semigroup(base: &NumericalSemigroup, t: &NumericalSemigroup) -> Result<Self> {
        if !base.is_subset_of(t) {
            return Err(Error::NotContained(
                base.generators()
                    .iter()
                    .copied()
                    .find(|&a| !t.contains(a))
                    .unwrap_or(0),
            ));
        }
        Self::from_predicate(base, 0, t.conductor(), |z| t.contains(z))
    }

    pub fn base(&self) -> &NumericalSemigroup {
        &self.base
    }

    pub fn gens(&self) -> &[i64] {
        &self.gens
    }

    /// Number of minimal generators.
    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    pub fn min(&self) -> i64 {
        self.gens[0]
    }

    /// Every integer at or above this value is a member.
    pub fn stable_from(&self) -> i64 {
        self.gens[0] + self.base.conductor()
    }

    #[inline]
    pub fn contains(&self, z: i64) -> bool {
        let i = z - self.gens[0];
        if i < 0 {
            false
        } else if i >= self.window.len() as i64 {
            true
        } else {
            self.window[i as usize]
        }
    }

    /// Members in `[lo, hi)`.
    pub fn members_in(&self, lo: i64, hi: i64) -> impl Iterator<Item = i64> + '_ {
        (lo..hi).filter(move |&z| self.contains(z))
    }

    fn check_base(&self, other: &RelativeIdeal) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch);
        }
        Ok(())
    }

    /// `t^s E`.
    pub fn shift(&self, s: i64) -> Self {
        Self::from_minimal(self.base.clone(), self.gens.iter().map(|g| g + s).collect())
    }

    pub fn sum(&self, other: &RelativeIdeal) -> Result<Self> {
        self.check_base(other)?;
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        Self::new(&self.base, &gens)
    }

    pub fn product(&self, other: &RelativeIdeal) -> Result<Self> {
        self.check_base(other)?;
        let gens: Vec<i64> = self
            .gens
            .iter()
            .flat_map(|e| other.gens.iter().map(move |f| e + f))
            .collect();
        Self::new(&self.base, &gens)
    }

    /// `E^n` for `n >= 1`; `E^0 = R`.
    pub fn power(&self, n: u32) -> Self {
        let mut acc = Self::unit(&self.base);
        for _ in 0..n {
            acc = acc.product(self).expect("same base");
        }
        acc
    }

    /// `E : F = {z : z + F ⊆ E}`.
    pub fn colon(&self, other: &RelativeIdeal) -> Result<Self> {
        self.check_base(other)?;
        let lo = self.min() - other.min();
        let hi = self.stable_from() - other.min();
        Self::from_predicate(&self.base, lo, hi, |z| {
            other.gens.iter().all(|&g| self.contains(z + g))
        })
    }

    /// Whether every member of `other` is a member of `self`.
    pub fn contains_ideal(&self, other: &RelativeIdeal) -> bool {
        other.gens.iter().all(|&g| self.contains(g))
    }

    /// `ℓ(E/F) = |E \ F|` for `F ⊆ E`.
    pub fn length_over(&self, sub: &RelativeIdeal) -> Result<usize> {
        self.check_base(sub)?;
        if let Some(&g) = sub.gens.iter().find(|&&g| !self.contains(g)) {
            return Err(Error::NotContained(g));
        }
        let hi = self.stable_from().max(sub.stable_from());
        Ok((self.min()..hi)
            .filter(|&z| self.contains(z) && !sub.contains(z))
            .count())
    }

    /// Members all lie in `H`.
    pub fn is_integral(&self) -> bool {
        self.gens.iter().all(|&g| self.base.contains(g))
    }

    /// Whether the member set is a numerical semigroup (contains 0 and is
    /// closed under addition).
    pub fn is_semigroup(&self) -> bool {
        if self.min() != 0 {
            return false;
        }
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.contains(a + b)))
    }

    /// The member set as a numerical semigroup, when it is one.
    pub fn to_semigroup(&self) -> Result<NumericalSemigroup> {
        if !self.is_semigroup() {
            return Err(Error::NotClosed(format!("{self} is not a ring")));
        }
        let gaps: Vec<i64> = (0..self.stable_from()).filter(|&z| !self.contains(z)).collect();
        NumericalSemigroup::from_gaps(&gaps)
    }
}

impl PartialEq for RelativeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.gens == other.gens
    }
}

impl Eq for RelativeIdeal {}

impl fmt::Display for RelativeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "t^{g}")?;
        }
        write!(f, ")")
    }
}

/// The canonical fractional ideal `K = Σ R t^{f-c}` over `c ∈ PF(H)`.
///
/// Cross-checked against `{z : f - z ∉ H}`; a mismatch is a bug and panics.
pub fn canonical_ideal(h: &NumericalSemigroup) -> RelativeIdeal {
    if h.is_naturals() {
        return RelativeIdeal::unit(h);
    }
    let f = h.frobenius();
    let gens: Vec<i64> = h.pseudo_frobenius().iter().map(|c| f - c).collect();
    let k = RelativeIdeal::new(h, &gens).expect("PF is non-empty");
    let dual = RelativeIdeal::from_predicate(h, 0, f + 1, |z| !h.contains(f - z))
        .expect("0 is a member");
    assert_eq!(k, dual, "canonical ideal routes disagree for {h}");
    k
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupResult {
    /// Value semigroup of `S = R[K]`.
    pub ring: NumericalSemigroup,
    /// Least `n` with `K^{n+1} = K^n`.
    pub stabilization_exponent: u32,
    /// `c = R : S`.
    pub conductor_ideal: RelativeIdeal,
}

/// `S = R[K]` as the stable power of the canonical ideal, and `c = R:S`.
pub fn blowup(h: &NumericalSemigroup) -> BlowupResult {
    let k = canonical_ideal(h);
    let mut n = 1;
    let mut pow = k.clone();
    loop {
        let next = pow.product(&k).expect("same base");
        if next == pow {
            break;
        }
        pow = next;
        n += 1;
    }
    let ring = pow.to_semigroup().expect("stable power of K is a ring");
    let conductor_ideal = RelativeIdeal::unit(h).colon(&pow).expect("same base");
    BlowupResult {
        ring,
        stabilization_exponent: n,
        conductor_ideal,
    }
}

/// `μ_R(E)`.
pub fn minimal_generators_over(_h: &NumericalSemigroup, e: &RelativeIdeal) -> usize {
    e.mu()
}
