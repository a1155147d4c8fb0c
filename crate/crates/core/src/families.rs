//! Parameterized families of ideals such as `(t^8 + c1*t^10, t^11 + d*t^12)`,
//! scanned over a field: exhaustively for small prime fields, by structured
//! and seeded random samples over the rationals.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::SparsePoly;
use crate::field::Field;
use crate::par;
use crate::semigroup::NumericalSemigroup;
use crate::trunc::{Elem, TruncAlgebra};
use crate::ulrich::is_ulrich_general;

/// Largest parameter count a template may carry.
pub const MAX_PARAMS: usize = 3;
/// Exhaustive scans are used when `|k|^params` is at most this.
pub const EXHAUSTIVE_LIMIT: usize = 4096;
/// Values combined into the structured samples over infinite fields.
pub const STRUCTURED_VALUES: [i64; 4] = [0, 1, -1, 2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTemplate {
    /// Generators as polynomials in `t` and the parameters.
    pub generators: Vec<String>,
    pub params: Vec<String>,
    /// Parameters restricted to nonzero values.
    #[serde(default)]
    pub nonzero: Vec<String>,
}

impl FamilyTemplate {
    pub fn new(generators: &[&str], params: &[&str], nonzero: &[&str]) -> Self {
        let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
        FamilyTemplate {
            generators: own(generators),
            params: own(params),
            nonzero: own(nonzero),
        }
    }

    fn validate(&self) -> Result<Vec<SparsePoly>> {
        if self.params.len() > MAX_PARAMS {
            return Err(Error::Parse(format!(
                "{} parameters; at most {MAX_PARAMS} are supported",
                self.params.len()
            )));
        }
        if let Some(p) = self.nonzero.iter().find(|p| !self.params.contains(p)) {
            return Err(Error::Parse(format!("nonzero constraint on unknown parameter {p}")));
        }
        self.generators
            .iter()
            .map(|g| {
                let p = SparsePoly::parse(g)?;
                if let Some(v) = p.vars().iter().find(|v| *v != "t" && !self.params.contains(v)) {
                    return Err(Error::Parse(format!("unknown symbol {v} in {g:?}")));
                }
                Ok(p)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntry {
    /// Parameter values, rendered in the field.
    pub params: Vec<String>,
    /// `None` when no verdict could be reached.
    pub is_ulrich: Option<bool>,
    pub mu: Option<usize>,
    pub len_r_mod_i: Option<usize>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyScan {
    pub field: String,
    pub n: i64,
    pub exhaustive: bool,
    pub entries: Vec<FamilyEntry>,
    pub ulrich: usize,
    pub not_ulrich: usize,
    pub undecided: usize,
    /// Distinct parameter tuples give distinct ideals.
    pub pairwise_distinct: bool,
}

impl FamilyScan {
    pub fn all_ulrich(&self) -> bool {
        self.undecided == 0 && self.not_ulrich == 0 && self.ulrich > 0
    }

    pub fn none_ulrich(&self) -> bool {
        self.undecided == 0 && self.ulrich == 0 && self.not_ulrich > 0
    }
}

/// Substitutes parameter values into a template generator.
fn instantiate<F: Field>(
    alg: &TruncAlgebra<F>,
    poly: &SparsePoly,
    params: &[String],
    values: &[F::E],
) -> Result<Elem<F>> {
    let f = alg.field();
    let t_idx = poly.vars().iter().position(|v| v == "t");
    let p_idx: Vec<Option<usize>> = params
        .iter()
        .map(|p| poly.vars().iter().position(|v| v == p))
        .collect();
    let mut terms: Vec<(i64, F::E)> = Vec::new();
    for (m, c) in poly.terms() {
        let deg = t_idx.map_or(0, |i| SparsePoly::exponent(m, i) as i64);
        let mut coeff = f.from_ratio(c)?;
        for (k, idx) in p_idx.iter().enumerate() {
            if let Some(i) = idx {
                for _ in 0..SparsePoly::exponent(m, *i) {
                    coeff = f.mul(&coeff, &values[k]);
                }
            }
        }
        terms.push((deg, coeff));
    }
    alg.element(0, &terms)
}

fn parameter_tuples<F: Field>(
    f: &F,
    template: &FamilyTemplate,
    samples: usize,
    seed: u64,
) -> (Vec<Vec<F::E>>, bool) {
    let k = template.params.len();
    let nonzero: Vec<bool> = template.params.iter().map(|p| template.nonzero.contains(p)).collect();
    let admissible = |t: &[F::E]| t.iter().zip(&nonzero).all(|(v, nz)| !nz || !f.is_zero(v));
    let product = |values: &[F::E]| -> Vec<Vec<F::E>> {
        let mut out: Vec<Vec<F::E>> = vec![Vec::new()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|t| {
                    values.iter().map(move |v| {
                        let mut t = t.clone();
                        t.push(v.clone());
                        t
                    })
                })
                .collect();
        }
        out
    };
    if let Some(elems) = f.elements() {
        if elems.len().checked_pow(k as u32).is_some_and(|n| n <= EXHAUSTIVE_LIMIT) {
            return (product(&elems).into_iter().filter(|t| admissible(t)).collect(), true);
        }
    }
    let structured: Vec<F::E> = STRUCTURED_VALUES.iter().map(|&v| f.from_i64(v)).collect();
    let mut out: Vec<Vec<F::E>> = Vec::new();
    for t in product(&structured) {
        if admissible(&t) && !out.contains(&t) {
            out.push(t);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drawn = 0;
    while drawn < samples {
        let t: Vec<F::E> = (0..k).map(|_| f.random(&mut rng)).collect();
        if admissible(&t) && !out.contains(&t) {
            out.push(t);
            drawn += 1;
        }
    }
    (out, false)
}

/// Evaluates the Ulrich property for each parameter tuple of `template` in
/// `k[[H]]/t^N`.
pub fn family_scan<F: Field>(
    h: &NumericalSemigroup,
    field: F,
    template: &FamilyTemplate,
    samples: usize,
    n: i64,
    seed: u64,
) -> Result<FamilyScan> {
    let polys = template.validate()?;
    let alg = TruncAlgebra::truncated_ring(h, field.clone(), n)?;
    let (tuples, exhaustive) = parameter_tuples(&field, template, samples, seed);
    let results: Vec<(FamilyEntry, Option<Vec<Elem<F>>>)> = par::map(&tuples, |vals| {
        let params = vals.iter().map(|v| field.render(v)).collect();
        let run = || -> Result<_> {
            let gens: Vec<Elem<F>> = polys
                .iter()
                .map(|p| instantiate(&alg, p, &template.params, vals))
                .collect::<Result<_>>()?;
            let v = is_ulrich_general(&alg, &gens, None)?;
            let ideal = alg.ideal_closure(&gens)?;
            Ok((v, ideal.rows().canonical(&field)))
        };
        match run() {
            Ok((v, canon)) => (
                FamilyEntry {
                    params,
                    is_ulrich: Some(v.is_ulrich),
                    mu: Some(v.mu),
                    len_r_mod_i: Some(v.len_r_mod_i),
                    error: None,
                },
                Some(canon),
            ),
            Err(e) => (
                FamilyEntry {
                    params,
                    is_ulrich: None,
                    mu: None,
                    len_r_mod_i: None,
                    error: Some(e.to_string()),
                },
                None,
            ),
        }
    });
    let canons: Vec<&Vec<Elem<F>>> = results.iter().filter_map(|(_, c)| c.as_ref()).collect();
    let pairwise_distinct = canons
        .iter()
        .enumerate()
        .all(|(i, a)| canons[i + 1..].iter().all(|b| a != b));
    let entries: Vec<FamilyEntry> = results.into_iter().map(|(e, _)| e).collect();
    let count = |want: Option<bool>| entries.iter().filter(|e| e.is_ulrich == want).count();
    Ok(FamilyScan {
        field: match field.characteristic() {
            0 => "q".to_string(),
            p => format!("fp:{p}"),
        },
        n,
        exhaustive,
        ulrich: count(Some(true)),
        not_ulrich: count(Some(false)),
        undecided: count(None),
        entries,
        pairwise_distinct,
    })
}

/// `3c + 2·maxdeg + 4`, with `maxdeg` the largest `t`-degree in the
/// template.
pub fn default_family_n(h: &NumericalSemigroup, template: &FamilyTemplate) -> Result<i64> {
    let polys = template.validate()?;
    let maxdeg = polys
        .iter()
        .flat_map(|p| {
            let t = p.vars().iter().position(|v| v == "t");
            p.terms()
                .keys()
                .map(move |m| t.map_or(0, |i| SparsePoly::exponent(m, i) as i64))
        })
        .max()
        .unwrap_or(0);
    Ok(3 * h.conductor() + 2 * maxdeg + 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn h(g: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    #[test]
    fn n_four_family_over_f3() {
        let s = h(&[4, 5, 6]);
        let t = FamilyTemplate::new(&["t^4 - a*t^5", "t^6"], &["a"], &[]);
        let n = default_family_n(&s, &t).unwrap();
        let scan = family_scan(&s, PrimeField::new(3).unwrap(), &t, 0, n, 1).unwrap();
        assert!(scan.exhaustive);
        assert_eq!(scan.entries.len(), 3);
        assert!(scan.all_ulrich());
        assert!(scan.pairwise_distinct);
    }

    #[test]
    fn rational_samples_include_structured_values() {
        let s = h(&[6, 8, 10, 11]);
        let t = FamilyTemplate::new(&["t^6 + c1*t^8 + c2*t^10", "t^11"], &["c1", "c2"], &[]);
        let scan = family_scan(&s, Rationals, &t, 3, 60, 7).unwrap();
        assert!(!scan.exhaustive);
        assert_eq!(scan.entries.len(), 16 + 3);
        assert!(scan.all_ulrich());
    }

    #[test]
    fn template_validation() {
        let s = h(&[6, 8, 10, 11]);
        let bad = FamilyTemplate::new(&["t^6 + e*t^8"], &["c"], &[]);
        assert!(family_scan(&s, Rationals, &bad, 0, 60, 0).is_err());
        let many = FamilyTemplate::new(&["t^6"], &["a", "b", "c", "d"], &[]);
        assert!(family_scan(&s, Rationals, &many, 0, 60, 0).is_err());
        let nz = FamilyTemplate::new(&["t^6", "t^10 + d*t^11"], &["d"], &["d"]);
        let scan = family_scan(&s, PrimeField::new(2).unwrap(), &nz, 0, 60, 0).unwrap();
        assert_eq!(scan.entries.len(), 1);
    }
}
