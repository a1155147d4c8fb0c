//! Hilbert-Samuel data of canonical ideals, the Sally rank stratification
//! (Gorenstein / AGL / 2-AGL) and the structure of `K/R`.
//!
//! The five length conditions characterizing rank 2 are evaluated along
//! separate code paths and then compared against the rank; disagreement is
//! reported as [`Error::InconsistentTheorem12`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{blowup, canonical_ideal, RelativeIdeal};
use crate::semigroup::NumericalSemigroup;

/// Extra powers computed past the reduction number by default.
pub const DEFAULT_TAIL: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub e0: i64,
    pub e1: i64,
    /// `values[n] = ℓ(R/I^{n+1})`.
    pub values: Vec<i64>,
    pub reduction_number: usize,
    /// Valuation `a` of the reduction `Q = (t^a)`.
    pub reduction_element: i64,
}

/// Lengths `ℓ(R/I^{n+1})` for `n = 0..=n_max` (extended to the reduction
/// number when that is larger), with `e0`, `e1` read off the linear tail.
pub fn hilbert_samuel(h: &NumericalSemigroup, i: &RelativeIdeal, n_max: usize) -> Result<HilbertData> {
    if i.base() != h {
        return Err(Error::BaseMismatch);
    }
    if let Some(&g) = i.gens().iter().find(|&&g| !h.contains(g)) {
        return Err(Error::NotIntegral(g));
    }
    if i.contains(0) {
        return Err(Error::NotPrimary);
    }
    let a = i.min();
    let q = RelativeIdeal::principal(h, a);
    let r = RelativeIdeal::unit(h);
    // powers[n] = I^{n+1}
    let mut powers = vec![i.clone()];
    let mut reduction_number = None;
    let mut n = 0;
    loop {
        let next = powers[n].product(i)?;
        if reduction_number.is_none() {
            let qi = q.product(&powers[n])?;
            if next == qi {
                reduction_number = Some(n + 1);
            }
        }
        powers.push(next);
        n += 1;
        if let Some(rn) = reduction_number {
            if n >= n_max.max(rn) {
                break;
            }
        }
    }
    let reduction_number = reduction_number.expect("loop exits only once found");
    // `I^{n+1} = a I^n` first holds at n = reduction_number; the line
    // ℓ(R/I^{n+1}) = e0(n+1) - e1 is exact from there on.
    let values: Vec<i64> = powers
        .iter()
        .map(|p| r.length_over(p).map(|l| l as i64))
        .collect::<Result<_>>()?;
    let rn = reduction_number;
    let e1 = a * (rn as i64 + 1) - values[rn];
    for (k, &v) in values.iter().enumerate().skip(rn) {
        if v != a * (k as i64 + 1) - e1 {
            return Err(Error::Internal(format!(
                "Hilbert function not linear past reduction number at n={k}"
            )));
        }
    }
    let keep = n_max.max(rn) + 1;
    Ok(HilbertData {
        e0: a,
        e1,
        values: values[..keep].to_vec(),
        reduction_number: rn,
        reduction_element: a,
    })
}

/// Smallest positive `a` with `a + K ⊆ H`.
pub fn canonical_shift(h: &NumericalSemigroup) -> i64 {
    let k = canonical_ideal(h);
    let a = admissible_shifts(h, &k).next().expect("R:K is non-empty");
    a
}

/// Positive `a` with `t^a K ⊆ R`, increasing.
fn admissible_shifts<'a>(
    h: &'a NumericalSemigroup,
    k: &'a RelativeIdeal,
) -> impl Iterator<Item = i64> + 'a {
    (1..).filter(move |&a| k.gens().iter().all(|&g| h.contains(a + g)))
}

/// The first `count` admissible integral shifts of `K`.
pub fn integral_shifts(h: &NumericalSemigroup, count: usize) -> Vec<i64> {
    let k = canonical_ideal(h);
    admissible_shifts(h, &k).take(count).collect()
}

/// `e1 - (e0 - ℓ(R/I))` for `I = t^a K`.
pub fn sally_rank_with_shift(h: &NumericalSemigroup, a: i64) -> Result<i64> {
    let k = canonical_ideal(h);
    let i = k.shift(a);
    if !i.is_integral() {
        return Err(Error::NotIntegral(a));
    }
    let hd = hilbert_samuel(h, &i, 1)?;
    Ok(hd.e1 - (hd.e0 - hd.values[0]))
}

pub fn sally_rank(h: &NumericalSemigroup) -> i64 {
    sally_rank_with_shift(h, canonical_shift(h)).expect("canonical shift is integral")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KrTag {
    /// The pseudo-Frobenius number `c_i`.
    pub pf: i64,
    /// `ℓ((R + R t^{f - c_i}) / R)`.
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KrStructure {
    pub tags: Vec<KrTag>,
    /// Number of tags of length 2 (`R/c` summands).
    pub ell: usize,
    /// Number of tags of length 1 (`R/𝔪` summands).
    pub m: usize,
    pub len_k_mod_r: usize,
    pub sally_rank: i64,
}

impl KrStructure {
    /// `(ℓ, m)` with `K/R ≅ (R/c)^ℓ ⊕ (R/𝔪)^m`; only meaningful at rank 2.
    pub fn decomposition(&self) -> Result<(usize, usize)> {
        if self.sally_rank != 2 {
            return Err(Error::NotTwoAgl(self.sally_rank));
        }
        Ok((self.ell, self.m))
    }
}

pub fn structure_of_kr(h: &NumericalSemigroup) -> KrStructure {
    let rank = sally_rank(h);
    structure_with_rank(h, rank)
}

fn structure_with_rank(h: &NumericalSemigroup, rank: i64) -> KrStructure {
    let f = h.frobenius();
    let r = RelativeIdeal::unit(h);
    let tags: Vec<KrTag> = h
        .pseudo_frobenius()
        .into_iter()
        .filter(|&c| c != f)
        .map(|c| {
            let e = RelativeIdeal::new(h, &[0, f - c]).expect("non-empty");
            KrTag {
                pf: c,
                length: e.length_over(&r).expect("R ⊆ R + Rt^x"),
            }
        })
        .collect();
    let k = canonical_ideal(h);
    KrStructure {
        ell: tags.iter().filter(|t| t.length == 2).count(),
        m: tags.iter().filter(|t| t.length == 1).count(),
        tags,
        len_k_mod_r: k.length_over(&r).expect("R ⊆ K"),
        sally_rank: rank,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub sally_rank: i64,
    pub gorenstein: bool,
    /// Rank at most 1 (Gorenstein rings count as AGL).
    pub agl: bool,
    pub two_agl: bool,
    pub cond_c3: bool,
    pub cond_c4: bool,
    pub cond_c5: bool,
    pub cond_c6: bool,
    pub cond_c7: bool,
    /// `(ℓ, m)`, present only at rank 2.
    pub kr_decomp: Option<(usize, usize)>,
    /// `ℓ(K/R) = 2(r - 1)`.
    pub kr_free: bool,
    #[serde(rename = "type")]
    pub cm_type: usize,
    pub multiplicity_minimal: bool,
    pub s_gorenstein: bool,
    pub blowup_ring: NumericalSemigroup,
    pub canonical_gens: Vec<i64>,
    pub conductor_gens: Vec<i64>,
    pub len_s_mod_k: usize,
    pub len_r_mod_c: usize,
    pub len_k_mod_r: usize,
    pub mu_s: usize,
    /// `𝔪K ⊆ R`.
    pub mk_in_r: bool,
    pub canonical_shift: i64,
}

/// Evaluates every rank-2 condition independently and checks them against
/// the Sally rank.
pub fn classify(h: &NumericalSemigroup) -> Result<ClassificationReport> {
    let r = RelativeIdeal::unit(h);
    let mm = RelativeIdeal::maximal(h);
    let k = canonical_ideal(h);
    let bl = blowup(h);
    let s = RelativeIdeal::from_semigroup(h, &bl.ring)?;
    let c = bl.conductor_ideal.clone();
    let a = canonical_shift(h);
    let rank = sally_rank_with_shift(h, a)?;
    let cm_type = h.cm_type();
    let gorenstein = h.is_symmetric();

    let k2 = k.product(&k)?;
    let k3 = k2.product(&k)?;
    let cond_c3 = k2 == k3 && k2.length_over(&k)? == 2;

    let i = k.shift(a);
    let q = RelativeIdeal::principal(h, a);
    let i2 = i.product(&i)?;
    let i3 = i2.product(&i)?;
    let qi = q.product(&i)?;
    let qi2 = q.product(&i2)?;
    let cond_c4 = i3 == qi2 && i2.length_over(&qi)? == 2;

    let k_m = k.colon(&mm)?;
    let cond_c5 = !gorenstein && s.contains_ideal(&k_m) && s.length_over(&k_m)? == 1;

    let len_s_mod_k = s.length_over(&k)?;
    let cond_c6 = len_s_mod_k == 2;
    let len_r_mod_c = r.length_over(&c)?;
    let cond_c7 = len_r_mod_c == 2;

    let two_agl = rank == 2;
    let flags = [cond_c3, cond_c4, cond_c5, cond_c6, cond_c7];
    if flags.iter().any(|&b| b != two_agl) {
        return Err(Error::InconsistentTheorem12(format!(
            "{h}: rank {rank}, flags c3..c7 = {flags:?}"
        )));
    }

    let kr = structure_with_rank(h, rank);
    let kr_decomp = kr.decomposition().ok();
    let kr_free = kr.len_k_mod_r == 2 * (cm_type - 1);
    if let Some((ell, m)) = kr_decomp {
        if ell + m != cm_type - 1 || kr_free != (m == 0) {
            return Err(Error::InconsistentTheorem12(format!(
                "{h}: K/R decomposition ({ell},{m}) vs type {cm_type}"
            )));
        }
    }

    Ok(ClassificationReport {
        sally_rank: rank,
        gorenstein,
        agl: rank <= 1,
        two_agl,
        cond_c3,
        cond_c4,
        cond_c5,
        cond_c6,
        cond_c7,
        kr_decomp,
        kr_free,
        cm_type,
        multiplicity_minimal: h.has_minimal_multiplicity(),
        s_gorenstein: bl.ring.is_symmetric(),
        canonical_gens: k.gens().to_vec(),
        conductor_gens: c.gens().to_vec(),
        len_s_mod_k,
        len_r_mod_c,
        len_k_mod_r: kr.len_k_mod_r,
        mu_s: s.mu(),
        mk_in_r: r.contains_ideal(&mm.product(&k)?),
        canonical_shift: a,
        blowup_ring: bl.ring,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfSymmetry {
    pub frobenius: i64,
    /// PF numbers whose `K/R` summand is `R/c`.
    pub i_part: Vec<i64>,
    /// PF numbers whose `K/R` summand is `R/𝔪`.
    pub j_part: Vec<i64>,
    /// The nonzero element of `H` outside `c`.
    pub b: i64,
    /// `f + b = c_i + c_{p+1-i}` for all `i`.
    pub i_symmetric: bool,
    /// `f = d_j + d_{q+1-j}` for all `j`.
    pub j_symmetric: bool,
    /// A minimal generator `a_j` with `f + a_j = c_i + c_{r-i}` over all of
    /// `PF \ {f}`, if any.
    pub free_witness: Option<i64>,
    /// `J = ∅` iff `free_witness` exists.
    pub free_criterion_holds: bool,
}

pub fn pf_symmetry(h: &NumericalSemigroup) -> Result<PfSymmetry> {
    let kr = structure_of_kr(h);
    kr.decomposition()?;
    let f = h.frobenius();
    let i_part: Vec<i64> = kr.tags.iter().filter(|t| t.length == 2).map(|t| t.pf).collect();
    let j_part: Vec<i64> = kr.tags.iter().filter(|t| t.length == 1).map(|t| t.pf).collect();
    let c = blowup(h).conductor_ideal;
    let outside: Vec<i64> = h.elements_below(c.stable_from()).filter(|&z| z > 0 && !c.contains(z)).collect();
    let &[b] = outside.as_slice() else {
        return Err(Error::Internal(format!("H \\ c = {{0}} ∪ {outside:?}, expected one element")));
    };
    let palin = |v: &[i64], target: i64| {
        v.iter().zip(v.iter().rev()).all(|(x, y)| x + y == target)
    };
    let others: Vec<i64> = kr.tags.iter().map(|t| t.pf).collect();
    let free_witness = h
        .generators()
        .iter()
        .copied()
        .find(|&a| palin(&others, f + a));
    Ok(PfSymmetry {
        frobenius: f,
        i_symmetric: palin(&i_part, f + b),
        j_symmetric: palin(&j_part, f),
        free_criterion_holds: j_part.is_empty() == free_witness.is_some(),
        i_part,
        j_part,
        b,
        free_witness,
    })
}
