//! Presentations `R = T/𝔞` of semigroup rings: evaluation under
//! `X_i ↦ t^{w_i}`, 2×2 minors, the block-shape hypothesis on the canonical
//! presentation matrix, and Macaulay-matrix evidence that a list of
//! polynomials generates `ker φ` up to a degree bound.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::classify::classify;
use crate::error::{Error, Result};
use crate::expr::{Monomial, SparsePoly};
use crate::field::{rational_string, Field, PrimeField, DEFAULT_PRIME};
use crate::par;
use crate::semigroup::NumericalSemigroup;

/// Macaulay matrices with more columns than this are refused.
pub const MACAULAY_COLUMN_BUDGET: usize = 250_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiImage {
    /// Exponent to exact coefficient, zero terms dropped.
    pub series: BTreeMap<i64, String>,
    pub vanishes: bool,
}

/// `p(t^{w_1}, ..., t^{w_n})`.
pub fn phi_eval(p: &SparsePoly, weights: &[i64]) -> Result<PhiImage> {
    if let Some(&w) = weights.iter().find(|&&w| w <= 0) {
        return Err(Error::NonPositiveGenerator(w));
    }
    let image = p.eval_weights(weights)?;
    Ok(PhiImage {
        vanishes: image.is_empty(),
        series: image.iter().map(|(d, c)| (*d, rational_string(c))).collect(),
    })
}

/// All `n(n-1)/2` minors `m[0][i] m[1][j] - m[0][j] m[1][i]`, `i < j`.
pub fn minors2(m: &[Vec<SparsePoly>]) -> Result<Vec<SparsePoly>> {
    if m.len() != 2 || m[0].len() != m[1].len() || m[0].len() < 2 {
        return Err(Error::ShapeMismatch(format!(
            "need a 2×n matrix with n >= 2, got {} rows",
            m.len()
        )));
    }
    let n = m[0].len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(m[0][i].mul(&m[1][j]).sub(&m[0][j].mul(&m[1][i])));
        }
    }
    Ok(out)
}

/// Parses a matrix of polynomial strings over a fixed variable list.
pub fn parse_matrix(rows: &[Vec<String>], vars: &[String]) -> Result<Vec<Vec<SparsePoly>>> {
    rows.iter()
        .map(|r| r.iter().map(|s| SparsePoly::parse_with_vars(s, vars)).collect())
        .collect()
}

/// Membership in `J = (X_1²) + (X_2, ..., X_n)`, term by term.
pub fn in_j(p: &SparsePoly) -> bool {
    p.terms().keys().all(|m| {
        SparsePoly::exponent(m, 0) >= 2 || (1..m.len()).any(|i| SparsePoly::exponent(m, i) >= 1)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm34aCheck {
    /// Blocks headed by `X_1², X_2, ..., X_n`.
    pub ell: usize,
    /// Blocks headed by `X_1, X_2, ..., X_n`.
    pub m: usize,
    /// Trailing free columns.
    pub q: usize,
    /// Entries `a_ij` or `b_pk` (k >= 2) outside `J`, as `(column, entry)`.
    pub violations: Vec<(usize, String)>,
    pub holds: bool,
}

/// Validates the staircase shape of a presentation matrix (first row of
/// coefficients, then one row per block) and checks that every `a_ij` and
/// every `b_pk` with `k >= 2` lies in `J`.
pub fn thm34a_hypothesis(rows: &[Vec<SparsePoly>], n: usize) -> Result<Thm34aCheck> {
    if rows.len() < 2 || n < 1 {
        return Err(Error::ShapeMismatch("need a coefficient row and at least one block".into()));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::ShapeMismatch("ragged rows".into()));
    }
    let blocks = rows.len() - 1;
    if cols < blocks * n {
        return Err(Error::ShapeMismatch(format!("{cols} columns for {blocks} blocks of width {n}")));
    }
    let vars = rows[0].first().map(|p| p.vars().to_vec()).unwrap_or_default();
    if vars.len() < n {
        return Err(Error::ShapeMismatch(format!("{} variables, expected {n}", vars.len())));
    }
    let x = |i: usize, e: u32| SparsePoly::var(&vars, i).pow(e);
    let mut kinds = Vec::with_capacity(blocks);
    for (b, row) in rows[1..].iter().enumerate() {
        for (c, entry) in row.iter().enumerate() {
            let inside = c >= b * n && c < (b + 1) * n;
            if !inside && !entry.is_zero() {
                return Err(Error::ShapeMismatch(format!("row {} has a nonzero entry in column {c}", b + 1)));
            }
        }
        let head = &row[b * n..(b + 1) * n];
        if (1..n).any(|k| head[k].with_vars(&vars).ok() != Some(x(k, 1))) {
            return Err(Error::ShapeMismatch(format!("block {} is not X_1^e, X_2, ..., X_n", b + 1)));
        }
        let first = head[0].with_vars(&vars)?;
        let kind = if first == x(0, 2) {
            2
        } else if first == x(0, 1) {
            1
        } else {
            return Err(Error::ShapeMismatch(format!("block {} starts with {first}", b + 1)));
        };
        kinds.push(kind);
    }
    let ell = kinds.iter().take_while(|&&k| k == 2).count();
    if kinds[ell..].contains(&2) {
        return Err(Error::ShapeMismatch("X_1² blocks must precede X_1 blocks".into()));
    }
    let m = blocks - ell;
    let mut violations = Vec::new();
    for (c, entry) in rows[0][..blocks * n].iter().enumerate() {
        let (b, k) = (c / n, c % n);
        let constrained = b < ell || k >= 1;
        if constrained && !in_j(entry) {
            violations.push((c, entry.to_string()));
        }
    }
    Ok(Thm34aCheck {
        ell,
        m,
        q: cols - blocks * n,
        holds: ell > 0 && violations.is_empty(),
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeEvidence {
    pub degree: usize,
    /// `dim_k T/((G) + 𝔫^d)`.
    pub presented: usize,
    /// `dim_k R/𝔪^d`.
    pub ring: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelEvidence {
    pub degrees: Vec<DegreeEvidence>,
    /// Equality at every degree up to the bound; not a proof beyond it.
    pub holds: bool,
}

fn monomials_below(n: usize, d: usize) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for deg in 1..d {
        let mut cur = vec![0u32; n];
        fill(&mut cur, 0, deg as u32, &mut out);
    }
    out.into_iter().map(trim).collect()
}

fn fill(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Monomial>) {
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(cur.clone());
        cur[i] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[i] = e;
        fill(cur, i + 1, left - e, out);
    }
    cur[i] = 0;
}

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

type SparseRow<E> = Vec<(usize, E)>;

fn sparse_reduce<F: Field>(f: &F, table: &HashMap<usize, SparseRow<F::E>>, mut row: SparseRow<F::E>) -> SparseRow<F::E> {
    while let Some((p, c)) = row.iter().find(|(col, _)| table.contains_key(col)).cloned() {
        let piv = &table[&p];
        let mut merged: SparseRow<F::E> = Vec::with_capacity(row.len() + piv.len());
        let (mut i, mut j) = (0, 0);
        while i < row.len() || j < piv.len() {
            let take_row = j >= piv.len() || (i < row.len() && row[i].0 < piv[j].0);
            let take_piv = i >= row.len() || (j < piv.len() && piv[j].0 < row[i].0);
            if take_row {
                merged.push(row[i].clone());
                i += 1;
            } else if take_piv {
                merged.push((piv[j].0, f.neg(&f.mul(&c, &piv[j].1))));
                j += 1;
            } else {
                let v = f.sub(&row[i].1, &f.mul(&c, &piv[j].1));
                if !f.is_zero(&v) {
                    merged.push((row[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        row = merged;
    }
    row
}

/// Rank of the span of `{u·g mod 𝔫^d}`.
fn macaulay_rank<F: Field>(f: &F, gens: &[SparsePoly], n: usize, d: usize) -> Result<(usize, usize)> {
    let cols = monomials_below(n, d);
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut table: HashMap<usize, SparseRow<F::E>> = HashMap::new();
    for g in gens {
        let Some(ord) = g.order() else { continue };
        let terms: Vec<(Monomial, F::E)> = g
            .terms()
            .iter()
            .map(|(m, c)| Ok((m.clone(), f.from_ratio(c)?)))
            .collect::<Result<_>>()?;
        for u in cols.iter().filter(|u| SparsePoly::total_degree(u) + ord < d as u32) {
            let mut row: SparseRow<F::E> = terms
                .iter()
                .filter_map(|(m, c)| {
                    let len = u.len().max(m.len());
                    let prod: Monomial = trim(
                        (0..len)
                            .map(|i| SparsePoly::exponent(u, i) + SparsePoly::exponent(m, i))
                            .collect(),
                    );
                    index.get(&prod).map(|&col| (col, c.clone()))
                })
                .collect();
            row.sort_by_key(|(col, _)| *col);
            let row = sparse_reduce(f, &table, row);
            if let Some((p, lead)) = row.first().cloned() {
                let inv = f.inv(&lead);
                let normalized = row.into_iter().map(|(col, v)| (col, f.mul(&inv, &v))).collect();
                table.insert(p, normalized);
            }
        }
    }
    Ok((cols.len(), table.len()))
}

/// `dim_k R/𝔪^d` where `𝔪^d` is spanned by `t^h` with `h` a sum of at least
/// `d` weights.
fn ring_colength(weights: &[i64], d: usize) -> usize {
    let top = d as i64 * weights.iter().copied().max().unwrap_or(1);
    let mut ord: Vec<Option<usize>> = vec![None; top as usize + 1];
    ord[0] = Some(0);
    for h in 1..=top {
        ord[h as usize] = weights
            .iter()
            .filter(|&&w| w <= h)
            .filter_map(|&w| ord[(h - w) as usize].map(|o| o + 1))
            .max();
    }
    ord.iter().filter(|o| matches!(o, Some(v) if *v < d)).count()
}

/// Compares `dim_k T/((G) + 𝔫^d)` with `dim_k R/𝔪^d` for `d = 1..=bound`.
/// Every `g ∈ G` must vanish under the weights.
pub fn kernel_evidence<F: Field>(
    field: &F,
    gens: &[SparsePoly],
    vars: &[String],
    weights: &[i64],
    degree_bound: usize,
) -> Result<KernelEvidence> {
    if vars.len() != weights.len() {
        return Err(Error::ShapeMismatch(format!("{} variables, {} weights", vars.len(), weights.len())));
    }
    let n = vars.len();
    if binomial(degree_bound + n, n).is_none_or(|c| c > MACAULAY_COLUMN_BUDGET) {
        return Err(Error::DegreeTooLarge(degree_bound));
    }
    let gens: Vec<SparsePoly> = gens.iter().map(|g| g.with_vars(vars)).collect::<Result<_>>()?;
    for g in &gens {
        if !phi_eval(g, weights)?.vanishes {
            return Err(Error::PreconditionFailed(format!("{g} does not vanish")));
        }
    }
    let ds: Vec<usize> = (1..=degree_bound).collect();
    let degrees = par::try_map(&ds, |&d| -> Result<DegreeEvidence> {
        let (cols, rank) = macaulay_rank(field, &gens, n, d)?;
        Ok(DegreeEvidence {
            degree: d,
            presented: cols - rank,
            ring: ring_colength(weights, d),
        })
    })?;
    Ok(KernelEvidence {
        holds: degrees.iter().all(|e| e.presented == e.ring),
        degrees,
    })
}

/// [`kernel_evidence`] over `F_p`, `p = 2^31 - 1`.
pub fn kernel_evidence_default(
    gens: &[SparsePoly],
    vars: &[String],
    weights: &[i64],
    degree_bound: usize,
) -> Result<KernelEvidence> {
    let f = PrimeField::new(DEFAULT_PRIME)?;
    kernel_evidence(&f, gens, vars, weights, degree_bound)
}

/// A presentation of `k[[H]]` as stored in the data files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationData {
    pub name: String,
    pub weights: Vec<i64>,
    pub vars: Vec<String>,
    /// Presentation matrix of `K`: coefficient row, then block rows.
    pub presentation: Vec<Vec<String>>,
    /// 2×k matrices whose minors, with `extra`, generate `𝔞`.
    pub minor_blocks: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    pub extra: Vec<String>,
    /// Generators of `𝔞` as listed alongside the resolution.
    pub kernel_generators: Vec<String>,
    #[serde(default = "default_degree_bound")]
    pub degree_bound: usize,
}

fn default_degree_bound() -> usize {
    10
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub name: String,
    pub semigroup: NumericalSemigroup,
    /// Listed generators that fail to vanish.
    pub nonvanishing: Vec<String>,
    pub minor_count: usize,
    pub minors_vanish: bool,
    pub thm34a: Thm34aCheck,
    pub kernel_evidence: KernelEvidence,
    pub minors_evidence: KernelEvidence,
    pub two_agl: bool,
    pub ok: bool,
}

pub fn verify_presentation(data: &PresentationData) -> Result<PresentationReport> {
    let h = NumericalSemigroup::new(&data.weights)?;
    let vars = &data.vars;
    let parse = |s: &String| SparsePoly::parse_with_vars(s, vars);
    let kernel: Vec<SparsePoly> = data.kernel_generators.iter().map(parse).collect::<Result<_>>()?;
    let nonvanishing: Vec<String> = kernel
        .iter()
        .filter(|g| !phi_eval(g, &data.weights).map(|i| i.vanishes).unwrap_or(false))
        .map(|g| g.to_string())
        .collect();
    let mut minors = Vec::new();
    for block in &data.minor_blocks {
        minors.extend(minors2(&parse_matrix(block, vars)?)?);
    }
    let minor_count = minors.len();
    minors.extend(data.extra.iter().map(parse).collect::<Result<Vec<_>>>()?);
    let minors_vanish = minors
        .iter()
        .all(|g| phi_eval(g, &data.weights).map(|i| i.vanishes).unwrap_or(false));
    let thm34a = thm34a_hypothesis(&parse_matrix(&data.presentation, vars)?, vars.len())?;
    let kernel_ev = if nonvanishing.is_empty() {
        kernel_evidence_default(&kernel, vars, &data.weights, data.degree_bound)?
    } else {
        KernelEvidence { degrees: Vec::new(), holds: false }
    };
    let minors_ev = if minors_vanish {
        kernel_evidence_default(&minors, vars, &data.weights, data.degree_bound)?
    } else {
        KernelEvidence { degrees: Vec::new(), holds: false }
    };
    let two_agl = classify(&h)?.two_agl;
    Ok(PresentationReport {
        name: data.name.clone(),
        ok: nonvanishing.is_empty()
            && minors_vanish
            && thm34a.holds
            && kernel_ev.holds
            && minors_ev.holds
            && two_agl,
        semigroup: h,
        nonvanishing,
        minor_count,
        minors_vanish,
        thm34a,
        kernel_evidence: kernel_ev,
        minors_evidence: minors_ev,
        two_agl,
    })
}

// ----- the minors family ---------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorsFamilyInstance {
    pub ells: Vec<u32>,
    /// `[[X_1², X_2, ..., X_n], [X_2^{ℓ_2}, ..., X_n^{ℓ_n}, X_1^{ℓ_1}]]`.
    pub matrix: Vec<Vec<String>>,
    pub minors: Vec<String>,
    /// Presentation matrix of `K` after column operations.
    pub presentation: Vec<Vec<String>>,
    pub thm34a: Thm34aCheck,
    /// Entries `a_ij` lie in `(X_1^{ℓ_1}, ..., X_n^{ℓ_n})`.
    pub a_in_power_ideal: bool,
    pub weights: Option<Vec<i64>>,
    pub semigroup: Option<NumericalSemigroup>,
    /// Why no semigroup ring realizes the instance.
    pub unrealizable: Option<String>,
    pub kernel_evidence: Option<bool>,
    pub two_agl: Option<bool>,
    pub kr_free: Option<bool>,
    /// `ℓ(K/R) = 2(n - 2)`.
    pub kr_length_matches: Option<bool>,
}

fn var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("X{i}")).collect()
}

/// Writes `v ∈ J = (X_1², X_2, ..., X_n)` as `Σ c_l g_l`, assigning each
/// term to the first generator dividing it.
fn divide_by_j(v: &SparsePoly, vars: &[String]) -> Result<Vec<SparsePoly>> {
    let n = vars.len();
    let mut parts: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); n];
    for (m, c) in v.terms() {
        let mut q = m.clone();
        q.resize(n, 0);
        let l = if q[0] >= 2 {
            q[0] -= 2;
            0
        } else if let Some(k) = (1..n).find(|&k| q[k] >= 1) {
            q[k] -= 1;
            k
        } else {
            return Err(Error::Internal(format!("{v} is not in J")));
        };
        parts[l].push((q, c.clone()));
    }
    Ok(parts.into_iter().map(|t| SparsePoly::from_terms(vars, t)).collect())
}

/// Builds the minors family instance for `ℓ_1, ..., ℓ_n` (`n >= 3`,
/// `ℓ_1 >= 2`), derives the block presentation of `K`, checks the
/// hypothesis, and tries to realize `T/𝔞` as a semigroup ring by solving for
/// weights making every minor homogeneous.
pub fn minors_family(ells: &[u32], degree_bound: usize) -> Result<MinorsFamilyInstance> {
    let n = ells.len();
    if n < 3 || ells[0] < 2 || ells.contains(&0) {
        return Err(Error::HypothesisFailed("need n >= 3, ℓ_1 >= 2 and all ℓ_i > 0".into()));
    }
    let vars = var_names(n);
    let x = |i: usize, e: u32| SparsePoly::var(&vars, i).pow(e);
    let g: Vec<SparsePoly> = (0..n).map(|i| if i == 0 { x(0, 2) } else { x(i, 1) }).collect();
    let f: Vec<SparsePoly> = (0..n).map(|i| x((i + 1) % n, ells[(i + 1) % n])).collect();
    let matrix = vec![g.clone(), f.clone()];
    let minors = minors2(&matrix)?;

    // Block j of the dual Eagon–Northcott matrix has f in row j and g in
    // row j + 1 (after fixing signs). Clearing f from rows 2.. by columns of
    // the previous block pushes it up to the coefficient row.
    let blocks = n - 2;
    let zero = SparsePoly::zero(&vars);
    let mut rows: Vec<Vec<SparsePoly>> = vec![vec![zero.clone(); blocks * n]; blocks + 1];
    let mut a_in_power_ideal = true;
    let power_ideal = |p: &SparsePoly| {
        p.terms()
            .keys()
            .all(|m| (0..n).any(|i| SparsePoly::exponent(m, i) >= ells[i]))
    };
    for j in 0..blocks {
        for k in 0..n {
            rows[j + 1][j * n + k] = g[k].clone();
            let mut v = f[k].clone();
            for _ in 0..j {
                let c = divide_by_j(&v, &vars)?;
                v = SparsePoly::zero(&vars);
                for (cl, fl) in c.iter().zip(&f) {
                    v = v.sub(&cl.mul(fl));
                }
            }
            a_in_power_ideal &= power_ideal(&v);
            rows[0][j * n + k] = v;
        }
    }
    let thm34a = thm34a_hypothesis(&rows, n)?;
    let render = |m: &Vec<Vec<SparsePoly>>| -> Vec<Vec<String>> {
        m.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect()
    };
    let mut out = MinorsFamilyInstance {
        ells: ells.to_vec(),
        matrix: render(&matrix),
        minors: minors.iter().map(|p| p.to_string()).collect(),
        presentation: render(&rows),
        thm34a,
        a_in_power_ideal,
        weights: None,
        semigroup: None,
        unrealizable: None,
        kernel_evidence: None,
        two_agl: None,
        kr_free: None,
        kr_length_matches: None,
    };
    let weights = match homogenizing_weights(ells) {
        Ok(w) => w,
        Err(reason) => {
            out.unrealizable = Some(reason);
            return Ok(out);
        }
    };
    let h = NumericalSemigroup::new(&weights)?;
    if h.embedding_dim() != n {
        out.unrealizable = Some(format!("weights {weights:?} generate {h}, embedding dimension < {n}"));
        out.weights = Some(weights);
        return Ok(out);
    }
    let ev = kernel_evidence_default(&minors, &vars, &weights, degree_bound)?;
    let report = classify(&h)?;
    out.kernel_evidence = Some(ev.holds);
    out.two_agl = Some(report.two_agl);
    out.kr_free = Some(report.kr_free);
    out.kr_length_matches = Some(report.len_k_mod_r == 2 * (n - 2));
    out.weights = Some(weights);
    out.semigroup = Some(h);
    Ok(out)
}

/// Positive integer weights with `deg f_i - deg g_i` constant and positive,
/// primitive (gcd 1).
fn homogenizing_weights(ells: &[u32]) -> std::result::Result<Vec<i64>, String> {
    let n = ells.len();
    // Unknowns w_1..w_n, δ. Column i: deg f_i - deg g_i - δ = 0 with
    // f_i = X_{i+1}^{ℓ_{i+1}}, g_1 = X_1², g_i = X_i.
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut r = vec![BigRational::zero(); n + 1];
        let nxt = (i + 1) % n;
        r[nxt] += BigRational::from_integer(ells[nxt].into());
        r[i] -= BigRational::from_integer(if i == 0 { 2 } else { 1 }.into());
        r[n] = -BigRational::one();
        rows.push(r);
    }
    let kernel = rational_kernel(rows, n + 1);
    if kernel.len() != 1 {
        return Err(format!("weight system has a {}-dimensional solution space", kernel.len()));
    }
    let mut v = kernel.into_iter().next().expect("one vector");
    if v[n].is_negative() {
        v.iter_mut().for_each(|c| *c = -c.clone());
    }
    if !v[n].is_positive() || v[..n].iter().any(|c| !c.is_positive()) {
        return Err("no positive weights make every minor homogeneous".into());
    }
    let lcm = v.iter().fold(num_bigint::BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, c| num_integer::gcd(acc, c.clone()));
    ints[..n]
        .iter()
        .map(|c| i64::try_from(c / &g).map_err(|e| e.to_string()))
        .collect::<std::result::Result<Vec<i64>, String>>()
        .and_then(|w| {
            let gw = w.iter().fold(0, |acc, &x| num_integer::gcd(acc, x));
            if gw != 1 {
                Err(format!("weights {w:?} have gcd {gw}"))
            } else {
                Ok(w)
            }
        })
}

/// Basis of the right kernel of a rational matrix.
fn rational_kernel(mut rows: Vec<Vec<BigRational>>, cols: usize) -> Vec<Vec<BigRational>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for k in 0..cols {
            rows[r][k] = &rows[r][k] * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for k in 0..cols {
                    let sub = &factor * &rows[r][k];
                    rows[i][k] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rows[i][free].clone();
            }
            v
        })
        .collect()
}
