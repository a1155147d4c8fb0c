//! Quasi-trivial extensions `A(α) = R ⋉^α I` with `I = R : T` for a
//! birational overring `K ⊆ T`, combinatorially and in truncations.

use serde::{Deserialize, Serialize};

use crate::classify::sally_rank;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::{blowup, canonical_ideal, RelativeIdeal};
use crate::semigroup::NumericalSemigroup;
use crate::trunc::{Echelon, Elem, Label, TruncAlgebra};
use crate::ulrich::{is_ulrich_general, GeneralUlrichVerdict};

/// Oversemigroups `T ≠ H` containing the canonical ideal.
pub fn admissible_overrings(h: &NumericalSemigroup) -> Result<Vec<NumericalSemigroup>> {
    let k = canonical_ideal(h);
    Ok(h.oversemigroups()?
        .into_iter()
        .filter(|t| t != h && k.members_in(0, k.stable_from()).all(|z| t.contains(z)))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    #[serde(rename = "T")]
    pub t: NumericalSemigroup,
    /// Minimal generators of `I = R : T`.
    #[serde(rename = "I")]
    pub i: Vec<i64>,
    #[serde(rename = "len_RI")]
    pub len_ri: usize,
    #[serde(rename = "len_TK")]
    pub len_tk: usize,
    pub is_2agl: bool,
    pub mu_t: usize,
    pub r_r: usize,
    #[serde(rename = "r_A")]
    pub r_a: usize,
    #[serde(rename = "t_equals_S")]
    pub t_equals_s: bool,
    pub i_equals_c: bool,
}

/// Invariants of `R ⋉^α (R : T)`; none of them depend on `α`.
pub fn duplication_report(h: &NumericalSemigroup, t: &NumericalSemigroup) -> Result<ExtensionReport> {
    let k = canonical_ideal(h);
    if t == h {
        return Err(Error::NotAdmissible(format!("T = R = {h}")));
    }
    let tm = RelativeIdeal::from_semigroup(h, t)
        .map_err(|_| Error::NotAdmissible(format!("{t} does not contain {h}")))?;
    if !tm.contains_ideal(&k) {
        return Err(Error::NotAdmissible(format!("{t} does not contain K = {k}")));
    }
    let r = RelativeIdeal::unit(h);
    let i = r.colon(&tm)?;
    let len_ri = r.length_over(&i)?;
    let len_tk = tm.length_over(&k)?;
    if len_ri != len_tk {
        return Err(Error::Internal(format!(
            "ℓ(R/I) = {len_ri} but ℓ(T/K) = {len_tk} for {h} ⊆ {t}"
        )));
    }
    let b = blowup(h);
    let mu_t = tm.mu();
    let r_r = h.cm_type();
    Ok(ExtensionReport {
        t: t.clone(),
        i: i.gens().to_vec(),
        len_ri,
        len_tk,
        is_2agl: len_ri == 2,
        mu_t,
        r_r,
        r_a: mu_t + r_r,
        t_equals_s: *t == b.ring,
        i_equals_c: i == b.conductor_ideal,
    })
}

/// Truncation order used for extension checks: `3c + 2·max generator`.
pub fn default_extension_n(h: &NumericalSemigroup, t: &NumericalSemigroup) -> i64 {
    3 * h.conductor().max(t.conductor()) + 2 * h.largest_generator().max(1)
}

/// `A(α)` truncated at `t^N`, with the algebra axioms checked on basis
/// triples of small degree.
pub fn quasi_trivial_algebra<F: Field>(
    h: &NumericalSemigroup,
    i: &RelativeIdeal,
    alpha: &[(i64, F::E)],
    field: F,
    n: i64,
) -> Result<TruncAlgebra<F>> {
    let a = TruncAlgebra::quasi_trivial(h, i, alpha, field, n)?;
    a.check_axioms(h.conductor() + h.multiplicity())?;
    Ok(a)
}

/// Cohen–Macaulay type of `A(α)` as `dim Soc(A/xA)` for `x = (t^m, 0)`.
pub fn extension_type_by_socle<F: Field>(
    h: &NumericalSemigroup,
    t: &NumericalSemigroup,
    alpha: &[(i64, F::E)],
    field: F,
    n: i64,
) -> Result<usize> {
    let i = RelativeIdeal::unit(h).colon(&RelativeIdeal::from_semigroup(h, t)?)?;
    let a = TruncAlgebra::quasi_trivial(h, &i, alpha, field, n)?;
    let one = a.field().one();
    let x = a.element(0, &[(h.multiplicity(), one)])?;
    let xa = a.ideal_closure(&[x])?;
    a.socle_type(&xa)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop31Certificate {
    pub holds: bool,
    pub n: i64,
    /// `dim L^k` for `k = 1, 2, ...` until the chain stops growing.
    pub power_dims: Vec<usize>,
    pub dim_b: usize,
    pub len_al_mod_l: usize,
    pub len_tk: usize,
    /// `A[L]` exhausts `T ⋉^α T`.
    pub reaches_b: bool,
    /// Top-window certificate for `L`.
    pub stabilized: bool,
}

/// Inside `B = T ⋉^α T`, iterates powers of `L = T × K` and checks
/// `A[L] = B` and `ℓ_A(A[L]/L) = ℓ_R(T/K)`.
pub fn verify_prop31<F: Field>(
    h: &NumericalSemigroup,
    t: &NumericalSemigroup,
    alpha: &[(i64, F::E)],
    field: F,
    n: i64,
) -> Result<Prop31Certificate> {
    let report = duplication_report(h, t)?;
    let needed = h.conductor() + h.multiplicity();
    if n < needed {
        return Err(Error::TruncationTooSmall { n, needed });
    }
    let b = TruncAlgebra::self_extension(t, h, alpha, field, n)?;
    let k = canonical_ideal(h);
    let f = b.field().clone();
    let l_labels: Vec<Label> = b
        .basis()
        .iter()
        .copied()
        .filter(|l| l.component == 0 || k.contains(l.degree))
        .collect();
    let mut l = Echelon::<F>::new();
    for &lab in &l_labels {
        l.insert(&f, b.unit_vec(lab)?);
    }
    let stabilized = b.certify(&l);
    if !stabilized {
        return Err(Error::StabilizationFailed(format!("L misses the top window at N={n}")));
    }
    let mut power = l.clone();
    let mut power_dims = vec![power.dim()];
    loop {
        let rows: Vec<Elem<F>> = power.rows().cloned().collect();
        let mut next = power.clone();
        for &lab in &l_labels {
            for r in &rows {
                next.insert(&f, b.mul_label(lab, r));
            }
        }
        if next.dim() == power.dim() {
            break;
        }
        power = next;
        power_dims.push(power.dim());
    }
    let dim_b = b.dim();
    let reaches_b = power.dim() == dim_b;
    let len_al_mod_l = power.dim() - l.dim();
    Ok(Prop31Certificate {
        holds: reaches_b && len_al_mod_l == report.len_tk,
        n,
        power_dims,
        dim_b,
        len_al_mod_l,
        len_tk: report.len_tk,
        reaches_b,
        stabilized,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example27Check {
    pub verdict: GeneralUlrichVerdict,
    pub len_a_mod_i: usize,
    pub len_i_mod_f: usize,
    pub len_r_mod_q: usize,
    pub holds: bool,
}

/// In `A = R ⋉^α R` with `R` AGL and not Gorenstein and `α ∈ (t^a)`, the
/// ideal `(t^a) × R` is Ulrich with reduction `f = (t^a, 0)`.
pub fn parameter_times_ring_ulrich<F: Field>(
    h: &NumericalSemigroup,
    a_val: i64,
    alpha: &[(i64, F::E)],
    field: F,
    n: i64,
) -> Result<Example27Check> {
    if h.is_symmetric() || sally_rank(h) != 1 {
        return Err(Error::HypothesisFailed(format!("{h} must be AGL and not Gorenstein")));
    }
    if a_val <= 0 || !h.contains(a_val) {
        return Err(Error::NotAMember(a_val));
    }
    if let Some((d, _)) = alpha.iter().find(|(d, c)| !field.is_zero(c) && !h.contains(d - a_val)) {
        return Err(Error::HypothesisFailed(format!("α has a term t^{d} outside (t^{a_val})")));
    }
    let alg = quasi_trivial_algebra(h, &RelativeIdeal::unit(h), alpha, field, n)?;
    let one = alg.field().one();
    let fq = alg.element(0, &[(a_val, one.clone())])?;
    let e = alg.element(1, &[(0, one)])?;
    let verdict = is_ulrich_general(&alg, &[fq.clone(), e.clone()], Some(&fq))?;
    let i = alg.ideal_closure(&[fq.clone(), e])?;
    let fa = alg.ideal_closure(&[fq])?;
    let len_a_mod_i = alg.colength(&i)?;
    let len_i_mod_f = alg.length_between(&i, &fa)?;
    let r = RelativeIdeal::unit(h);
    let len_r_mod_q = r.length_over(&RelativeIdeal::principal(h, a_val))?;
    Ok(Example27Check {
        holds: verdict.is_ulrich
            && verdict.mu == 2
            && len_a_mod_i == len_i_mod_f
            && len_i_mod_f == len_r_mod_q,
        verdict,
        len_a_mod_i,
        len_i_mod_f,
        len_r_mod_q,
    })
}
