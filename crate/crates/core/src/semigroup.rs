//! Numerical semigroups: co-finite additive submonoids of the non-negative
//! integers, given by generators with gcd 1.
//!
//! Membership below the conductor is answered from a precomputed table and
//! everything at or above the conductor is a member, so all downstream set
//! arithmetic (relative ideals, blow-ups, colons) reduces to bounded scans.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;

/// Default cap on the genus accepted by [`NumericalSemigroup::oversemigroups`].
pub const DEFAULT_GAP_LIMIT: usize = 24;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "SemigroupSpec", into = "SemigroupSpec")]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
    frobenius: i64,
    /// `members[z]` for `0 <= z < conductor`.
    members: Vec<bool>,
    gaps: Vec<i64>,
    /// Smallest member in each residue class modulo the multiplicity.
    apery: Vec<i64>,
}

/// Wire form of a semigroup: `{"generators":[5,7,9,13]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SemigroupSpec {
    pub generators: Vec<i64>,
}

impl TryFrom<SemigroupSpec> for NumericalSemigroup {
    type Error = Error;
    fn try_from(spec: SemigroupSpec) -> Result<Self> {
        NumericalSemigroup::new(&spec.generators)
    }
}

impl From<NumericalSemigroup> for SemigroupSpec {
    fn from(h: NumericalSemigroup) -> Self {
        SemigroupSpec { generators: h.generators }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupInvariants {
    pub frobenius: i64,
    pub conductor: i64,
    pub genus: usize,
    pub multiplicity: i64,
    pub embedding_dim: usize,
    pub pseudo_frobenius: Vec<i64>,
    #[serde(rename = "type")]
    pub cm_type: usize,
    pub symmetric: bool,
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `gens`, keeping only the minimal
    /// generators.
    pub fn new(gens: &[i64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(&g) = gens.iter().find(|&&g| g <= 0) {
            return Err(Error::NonPositiveGenerator(g));
        }
        let g = gens.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::GcdNotOne(g));
        }
        let generators = minimalize(gens);
        Ok(Self::from_minimal(generators))
    }

    /// The whole monoid of non-negative integers.
    pub fn naturals() -> Self {
        Self::from_minimal(vec![1])
    }

    fn from_minimal(generators: Vec<i64>) -> Self {
        let apery = apery_dijkstra(&generators);
        let m = generators[0];
        let frobenius = apery.iter().copied().max().unwrap_or(0) - m;
        let conductor = frobenius + 1;
        let members: Vec<bool> = (0..conductor)
            .map(|z| z >= apery[(z % m) as usize])
            .collect();
        let gaps = (0..conductor).filter(|&z| !members[z as usize]).collect();
        NumericalSemigroup {
            generators,
            frobenius,
            members,
            gaps,
            apery,
        }
    }

    /// Builds a semigroup from its gap set, checking closure under addition.
    pub fn from_gaps(gaps: &[i64]) -> Result<Self> {
        let gap_set: BTreeSet<i64> = gaps.iter().copied().collect();
        if let Some(&g) = gap_set.iter().next() {
            if g <= 0 {
                return Err(Error::NotClosed(format!("gap {g} is not positive")));
            }
        }
        let f = gap_set.iter().next_back().copied().unwrap_or(-1);
        let is_member = |z: i64| z >= 0 && !gap_set.contains(&z);
        let members: Vec<i64> = (1..=f).filter(|&z| is_member(z)).collect();
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i..] {
                if x + y > f {
                    break;
                }
                if !is_member(x + y) {
                    return Err(Error::NotClosed(format!("{x} + {y} = {} is a gap", x + y)));
                }
            }
        }
        let nonzero = |z: i64| z > 0 && is_member(z);
        let gens: Vec<i64> = (1..=f + 1 + f.max(1))
            .filter(|&z| nonzero(z) && !(1..z).any(|y| nonzero(y) && nonzero(z - y)))
            .collect();
        Self::new(&gens)
    }

    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn multiplicity(&self) -> i64 {
        self.generators[0]
    }

    pub fn embedding_dim(&self) -> usize {
        self.generators.len()
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn conductor(&self) -> i64 {
        self.frobenius + 1
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    pub fn gaps(&self) -> &[i64] {
        &self.gaps
    }

    pub fn is_naturals(&self) -> bool {
        self.frobenius < 0
    }

    pub fn largest_generator(&self) -> i64 {
        *self.generators.last().expect("non-empty")
    }

    #[inline]
    pub fn contains(&self, z: i64) -> bool {
        if z < 0 {
            false
        } else if z > self.frobenius {
            true
        } else {
            self.members[z as usize]
        }
    }

    /// Members in `[0, bound)`.
    pub fn elements_below(&self, bound: i64) -> impl Iterator<Item = i64> + '_ {
        (0..bound.max(0)).filter(move |&z| self.contains(z))
    }

    /// Smallest member of each residue class modulo `m`, indexed by residue.
    pub fn apery_set(&self, m: i64) -> Result<Vec<i64>> {
        if m <= 0 || !self.contains(m) {
            return Err(Error::NotAMember(m));
        }
        if m == self.multiplicity() {
            return Ok(self.apery.clone());
        }
        let mut out = vec![-1i64; m as usize];
        let mut filled = 0;
        let mut z = 0;
        while filled < m {
            let r = (z % m) as usize;
            if out[r] < 0 && self.contains(z) {
                out[r] = z;
                filled += 1;
            }
            z += 1;
        }
        Ok(out)
    }

    /// Gaps `g` with `g + a` a member for every minimal generator `a`.
    /// Empty for the naturals.
    pub fn pseudo_frobenius(&self) -> Vec<i64> {
        self.gaps
            .iter()
            .copied()
            .filter(|&g| self.generators.iter().all(|&a| self.contains(g + a)))
            .collect()
    }

    /// Cohen-Macaulay type of `k[[H]]`. The naturals are assigned type 1.
    pub fn cm_type(&self) -> usize {
        if self.is_naturals() {
            1
        } else {
            self.pseudo_frobenius().len()
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.cm_type() == 1
    }

    pub fn has_minimal_multiplicity(&self) -> bool {
        self.multiplicity() == self.embedding_dim() as i64
    }

    pub fn invariants(&self) -> SemigroupInvariants {
        let pf = self.pseudo_frobenius();
        let cm_type = if self.is_naturals() { 1 } else { pf.len() };
        SemigroupInvariants {
            frobenius: self.frobenius,
            conductor: self.conductor(),
            genus: self.genus(),
            multiplicity: self.multiplicity(),
            embedding_dim: self.embedding_dim(),
            pseudo_frobenius: pf,
            cm_type,
            symmetric: cm_type == 1,
        }
    }

    /// `a <=_H b` iff `b - a` lies in the semigroup.
    pub fn precedes(&self, a: i64, b: i64) -> bool {
        self.contains(b - a)
    }

    pub fn is_subset_of(&self, other: &NumericalSemigroup) -> bool {
        (0..self.conductor().max(other.conductor()))
            .all(|z| !self.contains(z) || other.contains(z))
    }

    /// Every numerical semigroup containing this one, this one and the
    /// naturals included, sorted by generator list.
    pub fn oversemigroups(&self) -> Result<Vec<NumericalSemigroup>> {
        self.oversemigroups_with_limit(DEFAULT_GAP_LIMIT)
    }

    pub fn oversemigroups_with_limit(&self, limit: usize) -> Result<Vec<NumericalSemigroup>> {
        if self.genus() > limit {
            return Err(Error::TooManyGaps {
                genus: self.genus(),
                limit,
            });
        }
        // Any proper oversemigroup T' of T contains a gap g of T, and the
        // semigroup generated by T and g sits between T and T'; so closing
        // under single-gap adjunction reaches everything.
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut stack = vec![self.clone()];
        seen.insert(self.generators.clone());
        let mut out = Vec::new();
        while let Some(t) = stack.pop() {
            for &g in t.gaps() {
                let mut gens = t.generators.clone();
                gens.push(g);
                let next = Self::from_minimal(minimalize(&gens));
                if seen.insert(next.generators.clone()) {
                    stack.push(next);
                }
            }
            out.push(t);
        }
        out.sort_by(|a, b| a.generators.cmp(&b.generators));
        Ok(out)
    }

    /// Children in the genus tree: remove one minimal generator above the
    /// Frobenius number.
    pub fn children(&self) -> Vec<NumericalSemigroup> {
        self.generators
            .iter()
            .filter(|&&g| g > self.frobenius)
            .map(|&g| {
                let mut gaps = self.gaps.clone();
                gaps.push(g);
                Self::from_gaps(&gaps).expect("removing a generator keeps closure")
            })
            .collect()
    }

    /// The gluing `<2a_1, ..., 2a_l, alpha>` of this semigroup with the
    /// naturals along an odd member `alpha`.
    pub fn glue(&self, alpha: i64) -> Result<NumericalSemigroup> {
        if alpha % 2 == 0 {
            return Err(Error::AlphaEven(alpha));
        }
        if alpha <= 0 || !self.contains(alpha) {
            return Err(Error::AlphaNotInH1(alpha));
        }
        if self.generators.contains(&alpha) {
            return Err(Error::AlphaIsGenerator(alpha));
        }
        let mut gens: Vec<i64> = self.generators.iter().map(|a| 2 * a).collect();
        gens.push(alpha);
        Self::new(&gens)
    }
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for NumericalSemigroup {}

impl Hash for NumericalSemigroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.generators.hash(state);
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl FromStr for NumericalSemigroup {
    type Err = Error;

    /// Parses comma-separated generators, e.g. `5,7,9,13`.
    fn from_str(s: &str) -> Result<Self> {
        let gens = parse_int_list(s)?;
        Self::new(&gens)
    }
}

/// All numerical semigroups of genus `0..=max_genus`, grouped by genus, each
/// group sorted by generators.
pub fn semigroups_by_genus(max_genus: usize) -> Vec<Vec<NumericalSemigroup>> {
    let mut out = vec![vec![NumericalSemigroup::naturals()]];
    for _ in 0..max_genus {
        let last = out.last().expect("non-empty");
        let mut next: Vec<NumericalSemigroup> = par::flat_map(last, |h| h.children());
        next.sort_by(|a, b| a.generators.cmp(&b.generators));
        out.push(next);
    }
    out
}

/// Parses `"5,7,9,13"` (surrounding angle brackets and spaces tolerated).
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let trimmed = s.trim().trim_start_matches(['<', '(', '[']).trim_end_matches(['>', ')', ']']);
    if trimmed.trim().is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad integer {p:?}: {e}")))
        })
        .collect()
}

/// Sorted minimal generating set of the monoid spanned by `gens`.
fn minimalize(gens: &[i64]) -> Vec<i64> {
    let mut sorted: Vec<i64> = gens.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let max = *sorted.last().expect("non-empty") as usize;
    let mut reach = vec![false; max + 1];
    reach[0] = true;
    let mut kept = Vec::new();
    for &g in &sorted {
        if reach[g as usize] {
            continue;
        }
        kept.push(g);
        let g = g as usize;
        for z in g..=max {
            if reach[z - g] {
                reach[z] = true;
            }
        }
    }
    kept
}

/// Apéry set with respect to the smallest generator, by shortest paths on
/// the residue classes.
fn apery_dijkstra(gens: &[i64]) -> Vec<i64> {
    let m = gens[0] as usize;
    let mut dist = vec![i64::MAX; m];
    let mut done = vec![false; m];
    dist[0] = 0;
    for _ in 0..m {
        let Some(r) = (0..m)
            .filter(|&r| !done[r] && dist[r] < i64::MAX)
            .min_by_key(|&r| dist[r])
        else {
            break;
        };
        done[r] = true;
        for &g in &gens[1..] {
            let s = (r + g as usize) % m;
            let cand = dist[r] + g;
            if cand < dist[s] {
                dist[s] = cand;
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(g: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    #[test]
    fn frobenius_of_worked_examples() {
        let s = h(&[5, 7, 9, 13]);
        assert_eq!(s.generators(), &[5, 7, 9, 13]);
        assert_eq!(s.frobenius(), 11);
        assert_eq!(h(&[4, 9, 11, 14]).frobenius(), 10);
    }

    #[test]
    fn genus_tree_counts() {
        // Number of numerical semigroups of genus g, g = 0..=10.
        let known = [1, 1, 2, 4, 7, 12, 23, 39, 67, 118, 204];
        let tree = semigroups_by_genus(10);
        let counts: Vec<usize> = tree.iter().map(Vec::len).collect();
        assert_eq!(counts, known);
        for (g, level) in tree.iter().enumerate() {
            assert!(level.iter().all(|h| h.genus() == g));
        }
    }

    #[test]
    fn naturals_conventions() {
        let n = h(&[1]);
        assert!(n.is_naturals());
        assert_eq!(n.frobenius(), -1);
        assert!(n.gaps().is_empty());
        assert!(n.pseudo_frobenius().is_empty());
        assert_eq!(n.cm_type(), 1);
        assert_eq!(n, NumericalSemigroup::naturals());
    }

    #[test]
    fn redundant_generators_are_dropped() {
        assert_eq!(h(&[6, 4, 9, 10, 8]).generators(), &[4, 6, 9]);
        assert_eq!(h(&[3, 3, 5, 8]).generators(), &[3, 5]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(NumericalSemigroup::new(&[]), Err(Error::EmptyInput));
        assert_eq!(NumericalSemigroup::new(&[4, 6]), Err(Error::GcdNotOne(2)));
        assert_eq!(
            NumericalSemigroup::new(&[0, 3]),
            Err(Error::NonPositiveGenerator(0))
        );
    }

    #[test]
    fn membership() {
        let s = h(&[5, 7, 9, 13]);
        assert!(s.contains(12));
        assert!(!s.contains(11));
        assert!(s.contains(0));
        assert!(!s.contains(-3));
        assert!(s.contains(1000));
    }

    #[test]
    fn pseudo_frobenius_sets() {
        assert_eq!(h(&[5, 7, 9, 13]).pseudo_frobenius(), vec![8, 11]);
        assert_eq!(h(&[4, 9, 11, 14]).pseudo_frobenius(), vec![5, 7, 10]);
        let inv = h(&[6, 8, 10, 11]).invariants();
        assert_eq!(inv.pseudo_frobenius, vec![13, 15]);
        assert_eq!(inv.frobenius, 15);
        assert_eq!(inv.cm_type, 2);
    }

    #[test]
    fn apery_sets() {
        assert_eq!(h(&[2, 5]).apery_set(2).unwrap(), vec![0, 5]);
        assert_eq!(h(&[1]).apery_set(1).unwrap(), vec![0]);
        assert_eq!(h(&[3, 7, 8]).apery_set(3).unwrap(), vec![0, 7, 8]);
        assert_eq!(h(&[3, 7, 8]).apery_set(7).unwrap().len(), 7);
        assert_eq!(h(&[3, 7, 8]).apery_set(4), Err(Error::NotAMember(4)));
    }

    #[test]
    fn from_gaps_roundtrip_and_rejects_non_closed() {
        let s = h(&[3, 5]);
        assert_eq!(NumericalSemigroup::from_gaps(s.gaps()).unwrap(), s);
        assert!(NumericalSemigroup::from_gaps(&[1, 3, 4]).is_err());
        assert_eq!(NumericalSemigroup::from_gaps(&[]).unwrap(), h(&[1]));
    }

    #[test]
    fn oversemigroups_small() {
        let o = h(&[2, 3]).oversemigroups().unwrap();
        assert_eq!(o, vec![h(&[1]), h(&[2, 3])]);
        assert_eq!(h(&[3, 5]).oversemigroups().unwrap().len(), 5);
        let o = h(&[3, 4, 5]).oversemigroups().unwrap();
        assert_eq!(o, vec![h(&[1]), h(&[2, 3]), h(&[3, 4, 5])]);
    }

    #[test]
    fn oversemigroups_respects_limit() {
        let s = h(&[5, 7, 9, 13]);
        assert_eq!(
            s.oversemigroups_with_limit(3),
            Err(Error::TooManyGaps { genus: s.genus(), limit: 3 })
        );
    }

    #[test]
    fn gluing() {
        let h1 = h(&[4, 7, 9]);
        assert_eq!(h1.glue(15).unwrap().generators(), &[8, 14, 15, 18]);
        assert_eq!(h(&[3, 4, 5]).glue(9).unwrap().generators(), &[6, 8, 9, 10]);
        assert_eq!(h1.glue(8), Err(Error::AlphaEven(8)));
        assert_eq!(h1.glue(5), Err(Error::AlphaNotInH1(5)));
        assert_eq!(h1.glue(7), Err(Error::AlphaIsGenerator(7)));
    }

    #[test]
    fn json_shape() {
        let s = h(&[5, 7, 9, 13]);
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, r#"{"generators":[5,7,9,13]}"#);
        let back: NumericalSemigroup = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<NumericalSemigroup>(r#"{"generators":[4,6]}"#).is_err());
    }

    #[test]
    fn parse_lists() {
        assert_eq!("5,7,9,13".parse::<NumericalSemigroup>().unwrap(), h(&[5, 7, 9, 13]));
        assert_eq!(parse_int_list("<3, 7, 8>").unwrap(), vec![3, 7, 8]);
        assert!(parse_int_list("3,x").is_err());
    }
}
