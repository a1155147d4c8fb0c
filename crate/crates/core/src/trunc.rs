//! Finite-dimensional truncations `k[[H]]/t^N` and quasi-trivial extensions
//! `R ⋉^α I` of them, with ideals represented as row-echelon subspaces.
//!
//! Lengths are only reported for subspaces carrying a stabilization
//! certificate: every basis label with degree in the top window
//! `[N - w, N)` lies in the subspace and `N - w` is past the degree where the
//! ambient components become full. By Nakayama the true ideal then contains
//! everything of degree `>= N`, so dimension counts in the truncation are
//! exact.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::SparsePoly;
use crate::field::Field;
use crate::ideal::RelativeIdeal;
use crate::semigroup::NumericalSemigroup;

/// A basis monomial: `t^degree` in the ring (component 0) or in the module
/// (component 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub degree: i64,
    pub component: u8,
}

pub type Elem<F> = Vec<<F as Field>::E>;

#[derive(Clone, Debug)]
pub struct TruncAlgebra<F: Field> {
    field: F,
    n: i64,
    ring: NumericalSemigroup,
    module: Option<RelativeIdeal>,
    /// Sparse `α` as (degree, coefficient) pairs in the ring.
    alpha: Vec<(i64, F::E)>,
    basis: Vec<Label>,
    index: HashMap<Label, usize>,
    generators: Vec<Label>,
    window: i64,
    stable_degree: i64,
}

impl<F: Field> TruncAlgebra<F> {
    /// `k[[H]]/t^N`.
    pub fn truncated_ring(h: &NumericalSemigroup, field: F, n: i64) -> Result<Self> {
        if n < h.conductor() + 1 {
            return Err(Error::TruncationTooSmall {
                n,
                needed: h.conductor() + 1,
            });
        }
        Ok(Self::build(field, n, h.clone(), None, Vec::new(), h.multiplicity()))
    }

    /// `A(α) = R ⋉^α I` truncated at `t^N` in both components.
    pub fn quasi_trivial(
        h: &NumericalSemigroup,
        i: &RelativeIdeal,
        alpha: &[(i64, F::E)],
        field: F,
        n: i64,
    ) -> Result<Self> {
        if i.base() != h {
            return Err(Error::BaseMismatch);
        }
        if !i.is_integral() {
            return Err(Error::NotIntegral(i.min()));
        }
        let alpha = Self::clean_alpha(&field, h, alpha)?;
        let unit = alpha.iter().any(|(d, _)| *d == 0);
        if i.contains(0) && unit {
            return Err(Error::NotLocal("I = R with a unit α".into()));
        }
        let needed = h.conductor() + 1;
        if n < needed {
            return Err(Error::TruncationTooSmall { n, needed });
        }
        Ok(Self::build(field, n, h.clone(), Some(i.clone()), alpha, h.multiplicity()))
    }

    /// `T ⋉^α T` over the ring `T`, with certificates sized for modules over
    /// the subring `k[[H]] ⊆ k[[T]]`. A unit `α` is allowed; the result is
    /// then `T × T` and not local, which is fine for an ambient ring.
    pub fn self_extension(
        t: &NumericalSemigroup,
        acting: &NumericalSemigroup,
        alpha: &[(i64, F::E)],
        field: F,
        n: i64,
    ) -> Result<Self> {
        let alpha = Self::clean_alpha(&field, t, alpha)?;
        let module = RelativeIdeal::unit(t);
        Ok(Self::build(field, n, t.clone(), Some(module), alpha, acting.multiplicity()))
    }

    fn clean_alpha(field: &F, ring: &NumericalSemigroup, alpha: &[(i64, F::E)]) -> Result<Vec<(i64, F::E)>> {
        let mut out: BTreeMap<i64, F::E> = BTreeMap::new();
        for (d, c) in alpha {
            if !ring.contains(*d) {
                return Err(Error::NotInRing(*d));
            }
            let e = out.entry(*d).or_insert_with(|| field.zero());
            *e = field.add(e, c);
        }
        Ok(out.into_iter().filter(|(_, c)| !field.is_zero(c)).collect())
    }

    fn build(
        field: F,
        n: i64,
        ring: NumericalSemigroup,
        module: Option<RelativeIdeal>,
        alpha: Vec<(i64, F::E)>,
        window: i64,
    ) -> Self {
        let mut basis = Vec::new();
        for d in 0..n {
            if ring.contains(d) {
                basis.push(Label { degree: d, component: 0 });
            }
            if let Some(m) = &module {
                if m.contains(d) {
                    basis.push(Label { degree: d, component: 1 });
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        let mut generators: Vec<Label> = ring
            .generators()
            .iter()
            .map(|&a| Label { degree: a, component: 0 })
            .collect();
        let mut stable_degree = ring.conductor();
        if let Some(m) = &module {
            generators.extend(m.gens().iter().map(|&g| Label { degree: g, component: 1 }));
            stable_degree = stable_degree.max(m.stable_from());
        }
        TruncAlgebra {
            field,
            n,
            ring,
            module,
            alpha,
            basis,
            index,
            generators,
            window,
            stable_degree,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ring(&self) -> &NumericalSemigroup {
        &self.ring
    }

    pub fn module(&self) -> Option<&RelativeIdeal> {
        self.module.as_ref()
    }

    pub fn basis(&self) -> &[Label] {
        &self.basis
    }

    pub fn generators(&self) -> &[Label] {
        &self.generators
    }

    /// Whether the top window clears the degree where components are full.
    pub fn window_ok(&self) -> bool {
        self.n - self.window >= self.stable_degree
    }

    /// Smallest truncation order for which certificates can succeed.
    pub fn min_certifiable_n(&self) -> i64 {
        self.stable_degree + self.window
    }

    pub fn index_of(&self, l: Label) -> Option<usize> {
        self.index.get(&l).copied()
    }

    pub fn zero(&self) -> Elem<F> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn one(&self) -> Elem<F> {
        self.unit_vec(Label { degree: 0, component: 0 })
            .expect("1 is in every ring")
    }

    pub fn unit_vec(&self, l: Label) -> Result<Elem<F>> {
        let i = self.index_of(l).ok_or(Error::NotInRing(l.degree))?;
        let mut v = self.zero();
        v[i] = self.field.one();
        Ok(v)
    }

    /// The element `Σ c_d t^d` in the given component; terms at or beyond
    /// `N` are dropped.
    pub fn element(&self, component: u8, terms: &[(i64, F::E)]) -> Result<Elem<F>> {
        let mut v = self.zero();
        for (d, c) in terms {
            if *d >= self.n {
                continue;
            }
            let l = Label { degree: *d, component };
            let i = self.index_of(l).ok_or(Error::NotInRing(*d))?;
            v[i] = self.field.add(&v[i], c);
        }
        Ok(v)
    }

    /// Parses a series such as `t^8 + 2*t^10` into the ring component.
    pub fn parse_element(&self, s: &str) -> Result<Elem<F>> {
        self.element(0, &series_terms(&self.field, s)?)
    }

    pub fn is_zero(&self, v: &[F::E]) -> bool {
        v.iter().all(|c| self.field.is_zero(c))
    }

    pub fn add(&self, u: &[F::E], v: &[F::E]) -> Elem<F> {
        u.iter().zip(v).map(|(a, b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, u: &[F::E], v: &[F::E]) -> Elem<F> {
        u.iter().zip(v).map(|(a, b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, c: &F::E, v: &[F::E]) -> Elem<F> {
        v.iter().map(|a| self.field.mul(c, a)).collect()
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn order(&self, v: &[F::E]) -> Option<i64> {
        v.iter()
            .position(|c| !self.field.is_zero(c))
            .map(|i| self.basis[i].degree)
    }

    /// Adds `c * (l1 * l2)` into `out`.
    fn accumulate(&self, out: &mut [F::E], l1: Label, l2: Label, c: &F::E) {
        let d = l1.degree + l2.degree;
        match (l1.component, l2.component) {
            (0, 0) | (0, 1) | (1, 0) => {
                if d < self.n {
                    let l = Label { degree: d, component: l1.component + l2.component };
                    let i = self.index[&l];
                    out[i] = self.field.add(&out[i], c);
                }
            }
            _ => {
                for (ad, ac) in &self.alpha {
                    let e = d + ad;
                    if e < self.n {
                        let i = self.index[&Label { degree: e, component: 1 }];
                        out[i] = self.field.add(&out[i], &self.field.mul(c, ac));
                    }
                }
            }
        }
    }

    pub fn mul(&self, u: &[F::E], v: &[F::E]) -> Elem<F> {
        let mut out = self.zero();
        let nz_v: Vec<usize> = (0..v.len()).filter(|&j| !self.field.is_zero(&v[j])).collect();
        for (i, a) in u.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            for &j in &nz_v {
                let c = self.field.mul(a, &v[j]);
                self.accumulate(&mut out, self.basis[i], self.basis[j], &c);
            }
        }
        out
    }

    /// `t^l * v`.
    pub fn mul_label(&self, l: Label, v: &[F::E]) -> Elem<F> {
        let mut out = self.zero();
        for (j, b) in v.iter().enumerate() {
            if !self.field.is_zero(b) {
                self.accumulate(&mut out, l, self.basis[j], b);
            }
        }
        out
    }

    /// Checks commutativity, associativity and the unit on basis triples of
    /// degree below `limit`.
    pub fn check_axioms(&self, limit: i64) -> Result<()> {
        let small: Vec<Label> = self.basis.iter().copied().filter(|l| l.degree < limit).collect();
        let one = self.one();
        for &x in &small {
            let ex = self.unit_vec(x)?;
            if self.mul(&one, &ex) != ex {
                return Err(Error::AlgebraAxiom(format!("1 * {x:?}")));
            }
            for &y in &small {
                let ey = self.unit_vec(y)?;
                let xy = self.mul(&ex, &ey);
                if xy != self.mul(&ey, &ex) {
                    return Err(Error::AlgebraAxiom(format!("{x:?} * {y:?} not commutative")));
                }
                for &z in &small {
                    let ez = self.unit_vec(z)?;
                    if self.mul(&xy, &ez) != self.mul(&ex, &self.mul(&ey, &ez)) {
                        return Err(Error::AlgebraAxiom(format!(
                            "({x:?} * {y:?}) * {z:?} not associative"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Elements outside the maximal ideal: nonzero coefficient on `1`.
    pub fn is_unit(&self, v: &[F::E]) -> bool {
        !self.field.is_zero(&v[0])
    }

    pub fn render(&self, v: &[F::E]) -> String {
        let mut parts: [Vec<String>; 2] = [Vec::new(), Vec::new()];
        for (i, c) in v.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let l = self.basis[i];
            let mono = match l.degree {
                0 => String::new(),
                1 => "t".to_string(),
                d => format!("t^{d}"),
            };
            let coeff = self.field.render(c);
            let term = if mono.is_empty() {
                coeff
            } else if coeff == "1" {
                mono
            } else {
                format!("{coeff}*{mono}")
            };
            parts[l.component as usize].push(term);
        }
        let join = |p: &Vec<String>| if p.is_empty() { "0".to_string() } else { p.join(" + ") };
        if self.module.is_none() {
            join(&parts[0])
        } else {
            format!("({}, {})", join(&parts[0]), join(&parts[1]))
        }
    }

    // ----- subspaces -------------------------------------------------------

    /// Span of `vecs` (not closed under anything).
    pub fn span(&self, vecs: &[Elem<F>]) -> Echelon<F> {
        let mut e = Echelon::new();
        for v in vecs {
            e.insert(&self.field, v.clone());
        }
        e
    }

    fn closure_unchecked(&self, gens: &[Elem<F>]) -> IdealSubspace<F> {
        let mut ech = Echelon::new();
        let mut queue: VecDeque<Elem<F>> = gens.iter().cloned().collect();
        while let Some(v) = queue.pop_front() {
            if let Some(row) = ech.insert(&self.field, v) {
                for &g in &self.generators {
                    queue.push_back(self.mul_label(g, &row));
                }
            }
        }
        let stabilized = self.certify(&ech);
        IdealSubspace {
            rows: ech,
            gens: gens.to_vec(),
            stabilized,
        }
    }

    /// Whether the top window lies in the span.
    pub fn certify(&self, ech: &Echelon<F>) -> bool {
        self.window_ok()
            && self
                .basis
                .iter()
                .filter(|l| l.degree >= self.n - self.window)
                .all(|&l| ech.contains(&self.field, &self.unit_vec(l).expect("basis label")))
    }

    /// The ideal generated by `gens`, with its stabilization certificate.
    pub fn ideal_closure(&self, gens: &[Elem<F>]) -> Result<IdealSubspace<F>> {
        let out = self.closure_unchecked(gens);
        if !out.stabilized {
            return Err(Error::StabilizationFailed(format!(
                "ideal does not fill the top window below N={} (need N >= {} and a larger N)",
                self.n,
                self.min_certifiable_n()
            )));
        }
        Ok(out)
    }

    pub fn whole(&self) -> IdealSubspace<F> {
        self.closure_unchecked(&[self.one()])
    }

    pub fn maximal_ideal(&self) -> Result<IdealSubspace<F>> {
        let gens: Vec<Elem<F>> = self
            .generators
            .iter()
            .map(|&l| self.unit_vec(l))
            .collect::<Result<_>>()?;
        self.ideal_closure(&gens)
    }

    pub fn product(&self, i: &IdealSubspace<F>, j: &IdealSubspace<F>) -> Result<IdealSubspace<F>> {
        let gens: Vec<Elem<F>> = i
            .gens
            .iter()
            .flat_map(|x| j.gens.iter().map(move |y| self.mul(x, y)))
            .collect();
        self.ideal_closure(&gens)
    }

    pub fn colength(&self, i: &IdealSubspace<F>) -> Result<usize> {
        i.require_stable()?;
        Ok(self.dim() - i.dim())
    }

    /// `ℓ(I/J)` for `J ⊆ I`.
    pub fn length_between(&self, i: &IdealSubspace<F>, j: &IdealSubspace<F>) -> Result<usize> {
        i.require_stable()?;
        j.require_stable()?;
        if !i.contains_subspace(&self.field, j) {
            return Err(Error::NotContained(-1));
        }
        Ok(i.dim() - j.dim())
    }

    pub fn equal(&self, i: &IdealSubspace<F>, j: &IdealSubspace<F>) -> bool {
        i.dim() == j.dim() && i.contains_subspace(&self.field, j)
    }

    /// `μ(I) = dim I/𝔪I`.
    pub fn mu(&self, i: &IdealSubspace<F>) -> Result<usize> {
        let gens: Vec<Elem<F>> = self
            .generators
            .iter()
            .flat_map(|&g| i.gens.iter().map(move |x| self.mul_label(g, x)))
            .collect();
        let mi = self.ideal_closure(&gens)?;
        self.length_between(i, &mi)
    }

    /// Dimension of the socle of `A/I`.
    pub fn socle_type(&self, i: &IdealSubspace<F>) -> Result<usize> {
        i.require_stable()?;
        let free: Vec<usize> = (0..self.dim()).filter(|c| !i.rows.rows.contains_key(c)).collect();
        let mut image = Echelon::new();
        for &col in &free {
            let e = self.unit_vec(self.basis[col])?;
            let mut row = Vec::with_capacity(free.len() * self.generators.len());
            for &g in &self.generators {
                let nf = i.rows.reduce(&self.field, self.mul_label(g, &e));
                row.extend(free.iter().map(|&k| nf[k].clone()));
            }
            image.insert(&self.field, row);
        }
        Ok(free.len() - image.dim())
    }

    /// Solves `Σ λ_k vecs[k] = target`; returns `λ`.
    pub fn solve(&self, vecs: &[Elem<F>], target: &[F::E]) -> Option<Vec<F::E>> {
        solve_combination(&self.field, vecs, target)
    }
}

/// Parses a polynomial in one variable (conventionally `t`) into
/// `(degree, coefficient)` pairs over `field`.
pub fn series_terms<F: Field>(field: &F, s: &str) -> Result<Vec<(i64, F::E)>> {
    let p = SparsePoly::parse(s)?;
    if p.vars().len() > 1 {
        return Err(Error::Parse(format!("{s:?} has more than one variable")));
    }
    p.terms()
        .iter()
        .map(|(m, c)| Ok((SparsePoly::exponent(m, 0) as i64, field.from_ratio(c)?)))
        .filter(|r| !matches!(r, Ok((_, c)) if field.is_zero(c)))
        .collect()
}

/// Row-echelon basis: each row has a leading 1 at its pivot and zeros
/// before it.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    rows: BTreeMap<usize, Elem<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Elem<F>> {
        self.rows.values()
    }

    /// Normal form: zero at every pivot column.
    pub fn reduce(&self, f: &F, mut v: Elem<F>) -> Elem<F> {
        for (&p, row) in &self.rows {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for k in p..v.len() {
                if !f.is_zero(&row[k]) {
                    v[k] = f.sub(&v[k], &f.mul(&c, &row[k]));
                }
            }
        }
        v
    }

    pub fn contains(&self, f: &F, v: &[F::E]) -> bool {
        self.reduce(f, v.to_vec()).iter().all(|c| f.is_zero(c))
    }

    /// Inserts `v`; returns the new normalized row when independent.
    pub fn insert(&mut self, f: &F, v: Elem<F>) -> Option<Elem<F>> {
        let mut v = self.reduce(f, v);
        let p = v.iter().position(|c| !f.is_zero(c))?;
        let inv = f.inv(&v[p]);
        for c in v.iter_mut().skip(p) {
            *c = f.mul(&inv, c);
        }
        self.rows.insert(p, v.clone());
        Some(v)
    }

    /// Fully reduced form, comparable across equal spans.
    pub fn canonical(&self, f: &F) -> Vec<Elem<F>> {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut out: Vec<Elem<F>> = Vec::with_capacity(pivots.len());
        for &p in pivots.iter().rev() {
            let mut row = self.rows[&p].clone();
            for done in &out {
                let q = done.iter().position(|c| !f.is_zero(c)).expect("nonzero row");
                if !f.is_zero(&row[q]) {
                    let c = row[q].clone();
                    for k in q..row.len() {
                        row[k] = f.sub(&row[k], &f.mul(&c, &done[k]));
                    }
                }
            }
            out.push(row);
        }
        out.reverse();
        out
    }
}

#[derive(Clone, Debug)]
pub struct IdealSubspace<F: Field> {
    rows: Echelon<F>,
    gens: Vec<Elem<F>>,
    stabilized: bool,
}

impl<F: Field> IdealSubspace<F> {
    pub fn dim(&self) -> usize {
        self.rows.dim()
    }

    pub fn gens(&self) -> &[Elem<F>] {
        &self.gens
    }

    pub fn rows(&self) -> &Echelon<F> {
        &self.rows
    }

    pub fn stabilized(&self) -> bool {
        self.stabilized
    }

    fn require_stable(&self) -> Result<()> {
        if self.stabilized {
            Ok(())
        } else {
            Err(Error::StabilizationFailed("subspace lacks a certificate".into()))
        }
    }

    pub fn contains(&self, f: &F, v: &[F::E]) -> bool {
        self.rows.contains(f, v)
    }

    pub fn contains_subspace(&self, f: &F, other: &IdealSubspace<F>) -> bool {
        other.rows.rows().all(|r| self.rows.contains(f, r))
    }
}

/// Gaussian elimination tracking combinations.
pub fn solve_combination<F: Field>(f: &F, vecs: &[Elem<F>], target: &[F::E]) -> Option<Vec<F::E>> {
    let k = vecs.len();
    // rows: (vector, combination)
    let mut rows: BTreeMap<usize, (Elem<F>, Vec<F::E>)> = BTreeMap::new();
    let reduce = |rows: &BTreeMap<usize, (Elem<F>, Vec<F::E>)>, mut v: Elem<F>, mut comb: Vec<F::E>| {
        for (&p, (row, rc)) in rows {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for j in p..v.len() {
                v[j] = f.sub(&v[j], &f.mul(&c, &row[j]));
            }
            for j in 0..k {
                comb[j] = f.sub(&comb[j], &f.mul(&c, &rc[j]));
            }
        }
        (v, comb)
    };
    for (i, v) in vecs.iter().enumerate() {
        let mut comb = vec![f.zero(); k];
        comb[i] = f.one();
        let (mut v, mut comb) = reduce(&rows, v.clone(), comb);
        if let Some(p) = v.iter().position(|c| !f.is_zero(c)) {
            let inv = f.inv(&v[p]);
            for c in v.iter_mut() {
                *c = f.mul(&inv, c);
            }
            for c in comb.iter_mut() {
                *c = f.mul(&inv, c);
            }
            rows.insert(p, (v, comb));
        }
    }
    let (rest, comb) = reduce(&rows, target.to_vec(), vec![f.zero(); k]);
    if rest.iter().all(|c| f.is_zero(c)) {
        // target - Σ comb_j v_j = 0  =>  λ = -comb
        Some(comb.iter().map(|c| f.neg(c)).collect())
    } else {
        None
    }
}
