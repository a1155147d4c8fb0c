//! Brute-force oracles on plain integer sets, sharing no code with the
//! library's semigroup and ideal types.
#![allow(dead_code)]

/// A subset of ℕ that contains every integer `>= bits.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoSet {
    pub bits: Vec<bool>,
}

impl CoSet {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn has(&self, z: i64) -> bool {
        z >= 0 && (z as usize >= self.bits.len() || self.bits[z as usize])
    }

    /// `#(self \ other)`.
    pub fn count_minus(&self, other: &CoSet) -> usize {
        (0..self.len() as i64).filter(|&z| self.has(z) && !other.has(z)).count()
    }

    pub fn subset_of(&self, other: &CoSet) -> bool {
        (0..self.len() as i64).all(|z| !self.has(z) || other.has(z))
    }

    pub fn min(&self) -> i64 {
        (0..).find(|&z| self.has(z)).unwrap()
    }

    fn from_fn(len: usize, f: impl Fn(i64) -> bool) -> CoSet {
        CoSet {
            bits: (0..len as i64).map(f).collect(),
        }
    }
}

/// The ring `k[[H]]` as a set, with enough room for the constructions below.
pub struct Ring {
    pub gens: Vec<i64>,
    pub h: CoSet,
}

impl Ring {
    pub fn new(gens: &[i64]) -> Ring {
        let lo = *gens.iter().min().unwrap();
        let hi = *gens.iter().max().unwrap();
        // f < (lo - 1)(hi - 1) for any generating set.
        let f_bound = (lo - 1) * (hi - 1);
        let len = (24 * (f_bound + 1) + 8 * hi + 64) as usize;
        let mut bits = vec![false; len];
        bits[0] = true;
        for z in 1..len {
            bits[z] = gens.iter().any(|&g| g as usize <= z && bits[z - g as usize]);
        }
        Ring {
            gens: gens.to_vec(),
            h: CoSet { bits },
        }
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn has(&self, z: i64) -> bool {
        self.h.has(z)
    }

    pub fn frobenius(&self) -> i64 {
        (0..self.len() as i64).rev().find(|&z| !self.has(z)).unwrap_or(-1)
    }

    pub fn gaps(&self) -> Vec<i64> {
        (0..=self.frobenius()).filter(|&z| !self.has(z)).collect()
    }

    pub fn genus(&self) -> usize {
        self.gaps().len()
    }

    pub fn multiplicity(&self) -> i64 {
        (1..).find(|&z| self.has(z)).unwrap()
    }

    /// Gaps `x` with `x + s ∈ H` for every `0 < s ∈ H`.
    pub fn pseudo_frobenius(&self) -> Vec<i64> {
        self.gaps()
            .into_iter()
            .filter(|&x| self.gens.iter().all(|&g| self.has(x + g)))
            .collect()
    }

    /// Minimal generators of the `H`-module `a`.
    pub fn module_gens(&self, a: &CoSet) -> Vec<i64> {
        (0..a.len() as i64)
            .filter(|&z| a.has(z) && !self.gens.iter().any(|&g| a.has(z - g)))
            .collect()
    }

    /// The ideal generated by `vals`.
    pub fn ideal(&self, vals: &[i64]) -> CoSet {
        CoSet::from_fn(self.len(), |z| vals.iter().any(|&v| self.has(z - v)))
    }

    pub fn unit(&self) -> CoSet {
        self.h.clone()
    }

    /// `K = {x : f - x ∉ H}`.
    pub fn canonical(&self) -> CoSet {
        let f = self.frobenius();
        CoSet::from_fn(self.len(), |x| !self.has(f - x))
    }

    pub fn sum(&self, a: &CoSet, b: &CoSet) -> CoSet {
        let gens = self.module_gens(a);
        CoSet::from_fn(self.len(), |z| gens.iter().any(|&g| b.has(z - g)))
    }

    pub fn shift(&self, a: &CoSet, s: i64) -> CoSet {
        CoSet::from_fn(self.len(), |z| a.has(z - s))
    }

    /// `H : b = {z : z + b ⊆ H}` for `b ⊇ H`, which contains every integer
    /// past the Frobenius number.
    pub fn conductor(&self, b: &CoSet) -> CoSet {
        let f = self.frobenius();
        let small: Vec<i64> = (0..=f).filter(|&y| b.has(y)).collect();
        CoSet::from_fn(self.len(), |z| z > f || small.iter().all(|&y| self.has(z + y)))
    }

    /// `S = ∪ K^n`.
    pub fn blowup(&self) -> CoSet {
        let k = self.canonical();
        let mut s = k.clone();
        loop {
            let next = self.sum(&s, &k);
            let merged = CoSet {
                bits: s.bits.iter().zip(&next.bits).map(|(x, y)| *x || *y).collect(),
            };
            if merged == s {
                return s;
            }
            s = merged;
        }
    }

    /// `ℓ(R/I^{n+1})` for `n = 0..count`.
    pub fn power_colengths(&self, i: &CoSet, count: usize) -> Vec<usize> {
        let mut p = i.clone();
        let mut out = Vec::new();
        for _ in 0..count {
            out.push(self.h.count_minus(&p));
            p = self.sum(&p, i);
        }
        out
    }

    /// `I = t^a K` with `a` least such that `I ⊆ H`.
    pub fn shifted_canonical(&self) -> (i64, CoSet) {
        let k = self.canonical();
        let a = (1..).find(|&a| self.shift(&k, a).subset_of(&self.h)).unwrap();
        (a, self.shift(&k, a))
    }

    /// `e1 - e0 + ℓ(R/I)` for the shifted canonical ideal. Powers are
    /// taken until `I^{n+1} = t^a I^n`, where `e1` can be read off.
    pub fn sally_rank(&self) -> i64 {
        let (a, i) = self.shifted_canonical();
        let mut p = i.clone();
        let mut n = 1i64;
        loop {
            let next = self.sum(&p, &i);
            if next == self.shift(&p, a) {
                break;
            }
            p = next;
            n += 1;
            assert!(n < 40, "no reduction found");
        }
        // p = I^n with I^{n+1} = aI^n, so ℓ(R/I^n) = e0·n - e1.
        let e1 = a * n - self.h.count_minus(&p) as i64;
        e1 - a + self.h.count_minus(&i) as i64
    }

    /// Ulrich check for `(t^v : v ∈ vals)` with reduction at the minimum.
    pub fn is_ulrich(&self, vals: &[i64]) -> bool {
        let i = self.ideal(vals);
        let mu = self.module_gens(&i).len();
        let a = i.min();
        let i2 = self.sum(&i, &i);
        mu > 1 && i2 == self.shift(&i, a) && i.count_minus(&i2) == mu * self.h.count_minus(&i)
    }
}
