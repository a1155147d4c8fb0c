//! Ulrich ideals: `I ≠ Q`, `I² = QI` and `I/I²` free over `R/I`, for a
//! principal reduction `Q = (a)`.
//!
//! Monomial ideals are decided with relative-ideal arithmetic; arbitrary
//! ideals of a truncation go through [`is_ulrich_general`].

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{classify, sally_rank};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::{blowup, RelativeIdeal};
use crate::par;
use crate::semigroup::NumericalSemigroup;
use crate::trunc::{Elem, IdealSubspace, TruncAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UlrichVerdict {
    /// Minimal generators of `I`.
    pub gens: Vec<i64>,
    pub is_ulrich: bool,
    pub reduction_valuation: i64,
    pub mu: usize,
    pub len_r_mod_i: usize,
    pub len_i_mod_i2: usize,
    pub i2_equals_qi: bool,
    pub free_check: bool,
    /// For two-generated Ulrich `I = (t^a, t^b)`: `c = 2b - a`, so that
    /// `b² = ac` and `[[-b,-c],[a,b]]² = 0`.
    pub witness_c: Option<i64>,
}

/// Decides whether the monomial ideal `(t^v : v ∈ vals)` is Ulrich.
pub fn is_ulrich_monomial(h: &NumericalSemigroup, vals: &[i64]) -> Result<UlrichVerdict> {
    if let Some(&v) = vals.iter().find(|&&v| v <= 0 || !h.contains(v)) {
        return Err(Error::NotAMember(v));
    }
    let i = RelativeIdeal::new(h, vals)?;
    Ok(verdict_for(h, &i))
}

fn verdict_for(h: &NumericalSemigroup, i: &RelativeIdeal) -> UlrichVerdict {
    let a = i.min();
    let r = RelativeIdeal::unit(h);
    let q = RelativeIdeal::principal(h, a);
    let i2 = i.product(i).expect("same base");
    let qi = q.product(i).expect("same base");
    let mu = i.mu();
    let len_r_mod_i = r.length_over(i).expect("integral");
    let len_i_mod_i2 = i.length_over(&i2).expect("I² ⊆ I");
    let i2_equals_qi = i2 == qi;
    let free_check = len_i_mod_i2 == mu * len_r_mod_i;
    let is_ulrich = mu > 1 && i2_equals_qi && free_check;
    let witness_c = (is_ulrich && mu == 2).then(|| {
        let b = i.gens()[1];
        let c = 2 * b - a;
        debug_assert!(i.contains(c));
        c
    });
    UlrichVerdict {
        gens: i.gens().to_vec(),
        is_ulrich,
        reduction_valuation: a,
        mu,
        len_r_mod_i,
        len_i_mod_i2,
        i2_equals_qi,
        free_check,
        witness_c,
    }
}

/// Default enumeration bound `2c(H) + 2m(H)`.
pub fn default_bound(h: &NumericalSemigroup) -> i64 {
    2 * h.conductor() + 2 * h.multiplicity()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UlrichEnumeration {
    pub bound: i64,
    /// `bound < 2c(H)`: results may miss ideals.
    pub bound_too_small: bool,
    pub ideals: Vec<UlrichVerdict>,
}

impl UlrichEnumeration {
    pub fn gen_sets(&self) -> Vec<Vec<i64>> {
        self.ideals.iter().map(|v| v.gens.clone()).collect()
    }
}

/// All monomial Ulrich ideals whose minimal generators are at most `bound`.
///
/// For each reduction valuation `a`, the remaining generators are drawn
/// from the Apéry set of `a` (a generator `b` with `b - a ∈ H` would be
/// redundant) and assembled into antichains in increasing order. Since
/// `I² = aI` forces `b + c - a ∈ I` for every pair of generators, a branch
/// dies as soon as such an element is neither present nor reachable by a
/// later (larger) generator.
pub fn enumerate_monomial_ulrich(h: &NumericalSemigroup, bound: i64) -> UlrichEnumeration {
    let starts: Vec<i64> = h.elements_below(bound + 1).filter(|&a| a > 0).collect();
    let mut ideals: Vec<UlrichVerdict> = par::flat_map(&starts, |&a| ulrich_with_reduction(h, a, bound));
    ideals.sort_by(|x, y| x.gens.cmp(&y.gens));
    ideals.dedup_by(|x, y| x.gens == y.gens);
    UlrichEnumeration {
        bound,
        bound_too_small: bound < 2 * h.conductor(),
        ideals,
    }
}

fn ulrich_with_reduction(h: &NumericalSemigroup, a: i64, bound: i64) -> Vec<UlrichVerdict> {
    let candidates: Vec<i64> = ((a + 1)..=bound).filter(|&b| h.contains(b) && !h.contains(b - a)).collect();
    let mut out = Vec::new();
    let mut chosen = vec![a];
    search(h, a, &candidates, 0, &mut chosen, &mut out);
    out
}

fn member_of(h: &NumericalSemigroup, gens: &[i64], z: i64) -> bool {
    gens.iter().any(|&g| h.contains(z - g))
}

/// Whether every pair requirement `b + c - a ∈ I` is met or still reachable
/// by generators `>= next`.
fn pairs_alive(h: &NumericalSemigroup, a: i64, chosen: &[i64], next: Option<i64>) -> bool {
    for (i, &b) in chosen.iter().enumerate() {
        for &c in &chosen[i..] {
            let z = b + c - a;
            if member_of(h, chosen, z) {
                continue;
            }
            match next {
                Some(n) if z >= n => {}
                _ => return false,
            }
        }
    }
    true
}

fn search(
    h: &NumericalSemigroup,
    a: i64,
    cands: &[i64],
    from: usize,
    chosen: &mut Vec<i64>,
    out: &mut Vec<UlrichVerdict>,
) {
    if !pairs_alive(h, a, chosen, cands.get(from).copied()) {
        return;
    }
    if chosen.len() >= 2 {
        let mu = chosen.len() as i64;
        let colength_ok = a % mu == 0 && {
            let i = RelativeIdeal::new(h, chosen).expect("non-empty");
            let len = RelativeIdeal::unit(h).length_over(&i).expect("integral") as i64;
            len * mu == a
        };
        if colength_ok && pairs_alive(h, a, chosen, None) {
            let i = RelativeIdeal::new(h, chosen).expect("non-empty");
            let v = verdict_for(h, &i);
            if v.is_ulrich {
                out.push(v);
            }
        }
    }
    if chosen.len() as i64 >= h.multiplicity() {
        return;
    }
    for k in from..cands.len() {
        let x = cands[k];
        if chosen.iter().any(|&g| h.contains(x - g)) {
            continue;
        }
        // Skipping everything before k means requirements below x are final.
        if !pairs_alive(h, a, chosen, Some(x)) {
            break;
        }
        chosen.push(x);
        search(h, a, cands, k + 1, chosen, out);
        chosen.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverringUlrich {
    pub overring: NumericalSemigroup,
    /// Minimal generators of `R : A`.
    pub ideal: Vec<i64>,
    /// `I : I = A`.
    pub endomorphisms_recover_overring: bool,
}

/// For Gorenstein `H`: the symmetric oversemigroups `H'` with
/// `μ_R(k[[H']]) = 2`, each with the Ulrich ideal `R : k[[H']]`. The image is
/// checked against [`enumerate_monomial_ulrich`].
pub fn gorenstein_overring_ulrich(h: &NumericalSemigroup) -> Result<Vec<OverringUlrich>> {
    if !h.is_symmetric() {
        return Err(Error::NotGorenstein);
    }
    let r = RelativeIdeal::unit(h);
    let overs = h.oversemigroups()?;
    let mut out = Vec::new();
    for t in overs {
        let tm = RelativeIdeal::from_semigroup(h, &t)?;
        if !t.is_symmetric() || tm.mu() != 2 {
            continue;
        }
        let i = r.colon(&tm)?;
        let ii = i.colon(&i)?;
        out.push(OverringUlrich {
            overring: t,
            ideal: i.gens().to_vec(),
            endomorphisms_recover_overring: ii == tm,
        });
    }
    out.sort_by(|x, y| x.ideal.cmp(&y.ideal));
    let from_overrings: BTreeSet<Vec<i64>> = out.iter().map(|o| o.ideal.clone()).collect();
    let enumerated: BTreeSet<Vec<i64>> = enumerate_monomial_ulrich(h, default_bound(h))
        .gen_sets()
        .into_iter()
        .collect();
    if from_overrings != enumerated {
        return Err(Error::Internal(format!(
            "overring route {from_overrings:?} vs enumeration {enumerated:?} for {h}"
        )));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingUlrich {
    pub glued: NumericalSemigroup,
    /// `{(2m, α) : 0 < m ∈ H1, α - m ∈ H1, 2(α - 2m) ∈ H}`.
    pub formula: Vec<(i64, i64)>,
    /// Two-generated monomial Ulrich ideals found by enumeration.
    pub enumerated: Vec<(i64, i64)>,
    pub agree: bool,
    pub bound: i64,
}

/// The two-generated monomial Ulrich ideals of the gluing
/// `<2a_1, ..., 2a_l, α>` of an AGL, non-Gorenstein `H1`, by formula and by
/// enumeration.
pub fn gluing_ulrich_set(h1: &NumericalSemigroup, alpha: i64) -> Result<GluingUlrich> {
    if h1.is_symmetric() {
        return Err(Error::HypothesisFailed(format!("{h1} is Gorenstein")));
    }
    let rank = sally_rank(h1);
    if rank != 1 {
        return Err(Error::HypothesisFailed(format!("{h1} has Sally rank {rank}, not AGL")));
    }
    let glued = h1.glue(alpha)?;
    let formula: Vec<(i64, i64)> = h1
        .elements_below(alpha + 1)
        .filter(|&m| m > 0 && h1.contains(alpha - m) && glued.contains(2 * (alpha - 2 * m)))
        .map(|m| (2 * m, alpha))
        .collect();
    let bound = default_bound(&glued);
    let enumerated: Vec<(i64, i64)> = enumerate_monomial_ulrich(&glued, bound)
        .ideals
        .iter()
        .filter(|v| v.mu == 2)
        .map(|v| (v.gens[0], v.gens[1]))
        .collect();
    Ok(GluingUlrich {
        agree: formula == enumerated,
        glued,
        formula,
        enumerated,
        bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluedStructure {
    pub glued: NumericalSemigroup,
    pub two_agl: bool,
    /// Minimal generators of `c`.
    pub conductor_gens: Vec<i64>,
    /// `c = 𝔪₁R`, with `𝔪₁R` generated by `t^{2a}` for `a ∈ H1 \ {0}`.
    pub c_is_m1r: bool,
    pub mu_c: usize,
    pub h1_embedding_dim: usize,
    pub minimal_multiplicity: bool,
    pub c_ulrich: bool,
    pub h1_minimal_multiplicity: bool,
    /// All structural statements about the gluing hold.
    pub all_hold: bool,
}

/// Structure of `R = k[[<2H1, α>]]` for AGL, non-Gorenstein `H1`.
pub fn glued_structure(h1: &NumericalSemigroup, alpha: i64) -> Result<GluedStructure> {
    if h1.is_symmetric() || sally_rank(h1) != 1 {
        return Err(Error::HypothesisFailed(format!("{h1} must be AGL and not Gorenstein")));
    }
    let glued = h1.glue(alpha)?;
    let report = classify(&glued)?;
    let c = blowup(&glued).conductor_ideal;
    let doubled: Vec<i64> = h1.generators().iter().map(|a| 2 * a).collect();
    let m1r = RelativeIdeal::new(&glued, &doubled)?;
    let c_is_m1r = c == m1r;
    let mu_c = c.mu();
    let c_ulrich = verdict_for(&glued, &c).is_ulrich;
    let h1_min = h1.has_minimal_multiplicity();
    let minimal_multiplicity = glued.has_minimal_multiplicity();
    Ok(GluedStructure {
        all_hold: report.two_agl
            && c_is_m1r
            && mu_c == h1.embedding_dim()
            && !minimal_multiplicity
            && c_ulrich == h1_min,
        glued,
        two_agl: report.two_agl,
        conductor_gens: c.gens().to_vec(),
        c_is_m1r,
        mu_c,
        h1_embedding_dim: h1.embedding_dim(),
        minimal_multiplicity,
        c_ulrich,
        h1_minimal_multiplicity: h1_min,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UlrichConsequences {
    pub mu: usize,
    /// `r(R/I)`: count of `h ∈ H \ I` with `h + a_j ∈ I` for all `j`.
    pub socle_type: usize,
    /// `(μ - 1) r(R/I) = r(R)`.
    pub type_identity: bool,
    /// Two-generated case: `K/R` is `R/c`-free.
    pub kr_free: Option<bool>,
    /// Two-generated case: `I + c = 𝔪`.
    pub i_plus_c_is_m: Option<bool>,
    /// Two-generated case: `μ(c) = embdim - 1`.
    pub mu_c_is_embdim_minus_one: Option<bool>,
    /// `μ >= 3`: `c ⊆ I`.
    pub c_in_i: Option<bool>,
    pub all_hold: bool,
}

/// Structural consequences of a monomial Ulrich ideal in a 2-AGL ring.
pub fn two_agl_ulrich_consequences(
    h: &NumericalSemigroup,
    v: &UlrichVerdict,
) -> Result<UlrichConsequences> {
    let report = classify(h)?;
    if !report.two_agl {
        return Err(Error::PreconditionFailed(format!("{h} is not 2-AGL")));
    }
    if !v.is_ulrich {
        return Err(Error::PreconditionFailed(format!("{:?} is not Ulrich", v.gens)));
    }
    let i = RelativeIdeal::new(h, &v.gens)?;
    let socle_type = monomial_socle_type(h, &i);
    let type_identity = (v.mu - 1) * socle_type == report.cm_type;
    let c = blowup(h).conductor_ideal;
    let mut out = UlrichConsequences {
        mu: v.mu,
        socle_type,
        type_identity,
        kr_free: None,
        i_plus_c_is_m: None,
        mu_c_is_embdim_minus_one: None,
        c_in_i: None,
        all_hold: type_identity,
    };
    if v.mu == 2 {
        let sum = i.sum(&c)?;
        let m_ok = sum == RelativeIdeal::maximal(h);
        let mu_c = c.mu() == h.embedding_dim() - 1;
        out.kr_free = Some(report.kr_free);
        out.i_plus_c_is_m = Some(m_ok);
        out.mu_c_is_embdim_minus_one = Some(mu_c);
        out.all_hold &= report.kr_free && m_ok && mu_c;
    } else {
        let inside = i.contains_ideal(&c);
        out.c_in_i = Some(inside);
        out.all_hold &= inside;
    }
    Ok(out)
}

/// `|{h ∈ H \ I : h + a_j ∈ I for all minimal generators a_j}|`.
pub fn monomial_socle_type(h: &NumericalSemigroup, i: &RelativeIdeal) -> usize {
    h.elements_below(i.stable_from())
        .filter(|&z| !i.contains(z) && h.generators().iter().all(|&a| i.contains(z + a)))
        .count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinMultiplicityXr {
    pub predicted: Vec<Vec<i64>>,
    pub enumerated: Vec<Vec<i64>>,
    pub agree: bool,
}

/// For 2-AGL `H` of minimal multiplicity: `X_R = {c, 𝔪}` when `K/R` is
/// `R/c`-free and `{𝔪}` otherwise, compared with enumeration.
pub fn min_multiplicity_xr(h: &NumericalSemigroup) -> Result<MinMultiplicityXr> {
    let report = classify(h)?;
    if !report.two_agl || !report.multiplicity_minimal {
        return Err(Error::PreconditionFailed(format!(
            "{h} must be 2-AGL of minimal multiplicity"
        )));
    }
    let mut predicted = vec![h.generators().to_vec()];
    if report.kr_free {
        predicted.push(report.conductor_gens.clone());
    }
    predicted.sort();
    let enumerated = enumerate_monomial_ulrich(h, default_bound(h)).gen_sets();
    Ok(MinMultiplicityXr {
        agree: predicted == enumerated,
        predicted,
        enumerated,
    })
}

// ----- arbitrary ideals of a truncation -----------------------------------

/// Powers checked when certifying a reduction `I^{n+1} = aI^n`.
pub const REDUCTION_POWER_BOUND: usize = 4;
/// Random combinations tried after the generators themselves.
pub const RANDOM_REDUCTION_TRIES: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralUlrichVerdict {
    pub is_ulrich: bool,
    pub reduction: String,
    pub reduction_order: i64,
    /// Least `n <= REDUCTION_POWER_BOUND` with `I^{n+1} = aI^n`; `None`
    /// when the reduction was certified by valuation alone.
    pub reduction_number: Option<usize>,
    pub mu: usize,
    pub len_r_mod_i: usize,
    pub len_i_mod_i2: usize,
    pub i_equals_q: bool,
    pub i2_equals_qi: bool,
    pub free_check: bool,
    /// Two-generated Ulrich: `c ∈ I` with `b² = ac`.
    pub witness_c: Option<String>,
    /// `[[-b,-c],[a,b]]² = 0` modulo `t^N`.
    pub resolution_square_zero: Option<bool>,
}

/// Decides the Ulrich property of the ideal generated by `gens` in `alg`.
///
/// When `reduction` is absent, each generator is tried, then seeded random
/// combinations; a candidate `a` is accepted once `I^{n+1} = aI^n` for some
/// `n <= REDUCTION_POWER_BOUND`.
///
/// In a truncated semigroup ring an element of least order in `I` always
/// generates a reduction (`I ⊆ aV ∩ R`, the integral closure of `aR`), so
/// there a minimal-order generator is accepted even when its reduction
/// number exceeds the power bound. Extension algebras are not domains and
/// rely on the power certificate alone.
pub fn is_ulrich_general<F: Field>(
    alg: &TruncAlgebra<F>,
    gens: &[Elem<F>],
    reduction: Option<&Elem<F>>,
) -> Result<GeneralUlrichVerdict> {
    let f = alg.field();
    let i = alg.ideal_closure(gens)?;
    let mut powers = vec![i.clone()];
    for _ in 0..REDUCTION_POWER_BOUND {
        let next = alg.product(powers.last().expect("non-empty"), &i)?;
        powers.push(next);
    }
    let certify = |a: &Elem<F>| -> Result<Option<usize>> {
        if !i.contains(f, a) || alg.is_zero(a) {
            return Ok(None);
        }
        let qa = alg.ideal_closure(std::slice::from_ref(a))?;
        for n in 1..=REDUCTION_POWER_BOUND {
            let lhs = alg.product(&qa, &powers[n - 1])?;
            if alg.equal(&lhs, &powers[n]) {
                return Ok(Some(n));
            }
        }
        Ok(None)
    };
    let mut found: Option<(Elem<F>, usize)> = None;
    if let Some(a) = reduction {
        if let Some(n) = certify(a)? {
            found = Some((a.clone(), n));
        }
    } else {
        for g in gens {
            if let Some(n) = certify(g)? {
                found = Some((g.clone(), n));
                break;
            }
        }
        if found.is_none() {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..RANDOM_REDUCTION_TRIES {
                let mut a = alg.zero();
                for g in gens {
                    let c = f.random(&mut rng);
                    a = alg.add(&a, &alg.scale(&c, g));
                }
                if let Some(n) = certify(&a)? {
                    found = Some((a, n));
                    break;
                }
            }
        }
    }
    let by_valuation = |a: &Elem<F>| {
        alg.module().is_none()
            && i.contains(f, a)
            && alg.order(a).is_some()
            && alg.order(a) == gens.iter().filter_map(|g| alg.order(g)).min()
    };
    let mut found: Option<(Elem<F>, Option<usize>)> = found.map(|(a, n)| (a, Some(n)));
    if found.is_none() {
        found = match reduction {
            Some(a) => by_valuation(a).then(|| (a.clone(), None)),
            None => gens.iter().find(|g| by_valuation(g)).map(|g| (g.clone(), None)),
        };
    }
    let tried = if reduction.is_some() { 1 } else { gens.len() + RANDOM_REDUCTION_TRIES };
    let (a, reduction_number) = found.ok_or(Error::NoReductionFound(tried))?;

    let q = alg.ideal_closure(std::slice::from_ref(&a))?;
    let i2 = &powers[1];
    let qi = alg.product(&q, &i)?;
    let i_equals_q = alg.equal(&q, &i);
    let i2_equals_qi = alg.equal(i2, &qi);
    let mu = alg.mu(&i)?;
    let len_r_mod_i = alg.colength(&i)?;
    let len_i_mod_i2 = alg.length_between(&i, i2)?;
    let free_check = len_i_mod_i2 == mu * len_r_mod_i;
    let is_ulrich = !i_equals_q && i2_equals_qi && free_check;

    let (witness_c, resolution_square_zero) = if is_ulrich && mu == 2 {
        match resolution_witness(alg, &i, &a) {
            Some((c, zero)) => (Some(alg.render(&c)), Some(zero)),
            None => (None, Some(false)),
        }
    } else {
        (None, None)
    };
    Ok(GeneralUlrichVerdict {
        is_ulrich,
        reduction: alg.render(&a),
        reduction_order: alg.order(&a).unwrap_or(-1),
        reduction_number,
        mu,
        len_r_mod_i,
        len_i_mod_i2,
        i_equals_q,
        i2_equals_qi,
        free_check,
        witness_c,
        resolution_square_zero,
    })
}

/// Finds `b` with `I = (a, b)` among the generators, solves `b² = ac` with
/// `c ∈ I`, and checks `[[-b,-c],[a,b]]² = 0`.
fn resolution_witness<F: Field>(
    alg: &TruncAlgebra<F>,
    i: &IdealSubspace<F>,
    a: &Elem<F>,
) -> Option<(Elem<F>, bool)> {
    let b = i.gens().iter().find(|b| {
        alg.ideal_closure(&[a.clone(), (*b).clone()])
            .map(|j| alg.equal(&j, i))
            .unwrap_or(false)
    })?;
    let rows: Vec<Elem<F>> = i.rows().rows().cloned().collect();
    let a_rows: Vec<Elem<F>> = rows.iter().map(|r| alg.mul(a, r)).collect();
    let b2 = alg.mul(b, b);
    let lambda = alg.solve(&a_rows, &b2)?;
    let mut c = alg.zero();
    for (l, r) in lambda.iter().zip(&rows) {
        c = alg.add(&c, &alg.scale(l, r));
    }
    let f = alg.field();
    let neg = |v: &Elem<F>| alg.scale(&f.neg(&f.one()), v);
    // M = [[-b, -c], [a, b]]
    let m = [[neg(b), neg(&c)], [a.clone(), b.clone()]];
    let mut zero = true;
    for r in 0..2 {
        for col in 0..2 {
            let e = alg.add(&alg.mul(&m[r][0], &m[0][col]), &alg.mul(&m[r][1], &m[1][col]));
            zero &= alg.is_zero(&e);
        }
    }
    Some((c, zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn h(g: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    #[test]
    fn monomial_verdicts() {
        let s = h(&[6, 8, 10, 11]);
        let v = is_ulrich_monomial(&s, &[6, 11]).unwrap();
        assert!(v.is_ulrich);
        assert_eq!(v.witness_c, Some(16));
        assert!(is_ulrich_monomial(&s, &[6, 8, 10]).unwrap().is_ulrich);
        assert!(!is_ulrich_monomial(&s, &[6]).unwrap().is_ulrich);
        assert!(!is_ulrich_monomial(&s, &[6, 10]).unwrap().is_ulrich);
        assert_eq!(is_ulrich_monomial(&s, &[7]), Err(Error::NotAMember(7)));
    }

    #[test]
    fn enumerations() {
        let sets = |g: &[i64], bound| enumerate_monomial_ulrich(&h(g), bound).gen_sets();
        assert_eq!(sets(&[6, 8, 10, 11], 24), vec![vec![6, 8, 10], vec![6, 11], vec![8, 11]]);
        assert_eq!(sets(&[2, 5], 12), vec![vec![2, 5], vec![4, 5]]);
        assert!(sets(&[3, 5], 16).is_empty());
        assert!(enumerate_monomial_ulrich(&h(&[6, 8, 10, 11]), 24).bound_too_small);
    }

    #[test]
    fn overring_route() {
        let o = gorenstein_overring_ulrich(&h(&[3, 4])).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].overring, h(&[2, 3]));
        assert_eq!(o[0].ideal, vec![4, 6]);
        assert!(o[0].endomorphisms_recover_overring);
        assert!(gorenstein_overring_ulrich(&h(&[3, 5])).unwrap().is_empty());
        assert_eq!(gorenstein_overring_ulrich(&h(&[3, 7, 8])), Err(Error::NotGorenstein));
    }

    #[test]
    fn gluing_sets() {
        let g = gluing_ulrich_set(&h(&[4, 7, 9]), 15).unwrap();
        assert!(g.formula.contains(&(8, 15)));
        assert!(g.agree);
        assert!(gluing_ulrich_set(&h(&[4, 7, 9]), 11).unwrap().formula.is_empty());
        for alpha in [11, 13, 15, 17, 19] {
            let s = glued_structure(&h(&[4, 7, 9]), alpha).unwrap();
            assert!(s.all_hold, "{s:?}");
            assert_eq!(s.mu_c, 3);
        }
        assert!(matches!(
            gluing_ulrich_set(&h(&[2, 5]), 5),
            Err(Error::HypothesisFailed(_))
        ));
    }

    #[test]
    fn consequences() {
        let s = h(&[6, 8, 10, 11]);
        let v = is_ulrich_monomial(&s, &[6, 11]).unwrap();
        let c = two_agl_ulrich_consequences(&s, &v).unwrap();
        assert_eq!(c.socle_type, 2);
        assert!(c.all_hold);
        let v = is_ulrich_monomial(&s, &[6, 8, 10]).unwrap();
        let c = two_agl_ulrich_consequences(&s, &v).unwrap();
        assert_eq!(c.mu, 3);
        assert!(c.all_hold);
        let t = h(&[3, 7, 8]);
        let c = two_agl_ulrich_consequences(&t, &is_ulrich_monomial(&t, &[3, 7, 8]).unwrap()).unwrap();
        assert_eq!((c.mu, c.socle_type), (3, 1));
        assert!(c.all_hold);
    }

    #[test]
    fn minimal_multiplicity_prediction() {
        let r = min_multiplicity_xr(&h(&[3, 7, 8])).unwrap();
        assert_eq!(r.predicted, vec![vec![3, 7, 8], vec![6, 7, 8]]);
        assert!(r.agree);
        let r = min_multiplicity_xr(&h(&[4, 9, 11, 14])).unwrap();
        assert_eq!(r.predicted, vec![vec![4, 9, 11, 14]]);
        assert!(r.agree);
        assert!(matches!(
            min_multiplicity_xr(&h(&[6, 8, 10, 11])),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn general_route_on_monomials() {
        let s = h(&[6, 8, 10, 11]);
        let a = TruncAlgebra::truncated_ring(&s, Rationals, 60).unwrap();
        let one = a.field().one();
        let g = |d: i64| a.element(0, &[(d, one.clone())]).unwrap();
        let v = is_ulrich_general(&a, &[g(6), g(11)], None).unwrap();
        assert!(v.is_ulrich);
        assert_eq!(v.resolution_square_zero, Some(true));
        assert_eq!(v.witness_c.as_deref(), Some("t^16"));
        let v = is_ulrich_general(&a, &[g(6), g(10)], None).unwrap();
        assert!(!v.is_ulrich);
    }

    #[test]
    fn reduction_by_valuation() {
        // (t^6, t^7) in <6,7,8> has reduction number 5, past the power search.
        let s = h(&[6, 7, 8]);
        let i = RelativeIdeal::new(&s, &[6, 7]).unwrap();
        assert_eq!(crate::classify::hilbert_samuel(&s, &i, 1).unwrap().reduction_number, 5);
        let a = TruncAlgebra::truncated_ring(&s, Rationals, 80).unwrap();
        let one = a.field().one();
        let g = |d: i64| a.element(0, &[(d, one.clone())]).unwrap();
        let v = is_ulrich_general(&a, &[g(6), g(7)], None).unwrap();
        assert_eq!(v.reduction_number, None);
        assert_eq!(v.is_ulrich, is_ulrich_monomial(&s, &[6, 7]).unwrap().is_ulrich);
    }

    #[test]
    fn characteristic_two_family_member() {
        let s = h(&[6, 8, 10, 11]);
        let f2 = PrimeField::new(2).unwrap();
        let a = TruncAlgebra::truncated_ring(&s, f2, 60).unwrap();
        let gens = [
            a.element(0, &[(8, 1), (10, 1)]).unwrap(),
            a.element(0, &[(11, 1), (12, 1)]).unwrap(),
        ];
        assert!(is_ulrich_general(&a, &gens, None).unwrap().is_ulrich);
        let q = TruncAlgebra::truncated_ring(&s, Rationals, 60).unwrap();
        let one = q.field().one();
        let gens = [
            q.element(0, &[(8, one.clone()), (10, one.clone())]).unwrap(),
            q.element(0, &[(11, one.clone()), (12, one)]).unwrap(),
        ];
        assert!(!is_ulrich_general(&q, &gens, None).unwrap().is_ulrich);
    }
}
