//! Sparse multivariate polynomials over Q(i).
//!
//! All polynomials of one session share a `Registry`, an ordered list of
//! variable names fixed at parse time. Terms live in a `BTreeMap` keyed by
//! monomial, so iteration is deterministic; order-dependent operations
//! (leading term, display) take or fix a `MonomialOrder` explicitly.

use crate::order::MonomialOrder;
use crate::scalar::GaussianRational;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("duplicate variable name '{0}' in registry")]
    DuplicateVariable(String),
    #[error("zero polynomial has no homogeneity degree")]
    ZeroHomogeneity,
    #[error("polynomial uses variable '{0}' not present in the target registry")]
    RestrictLoses(String),
    #[error("target registry does not extend the source registry")]
    BadLift,
    #[error("full evaluation requires a value for every variable")]
    PartialAssignment,
}

/// Ordered list of variable names shared by all polynomials of a session.
/// Earlier index = larger variable under every order in this crate.
#[derive(Debug, PartialEq, Eq)]
pub struct Registry {
    names: Vec<String>,
}

impl Registry {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Arc<Registry>, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.clone()) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(Registry { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, idx: u32) -> &str {
        &self.names[idx as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    /// A new registry with extra variables appended; monomial indices of the
    /// original registry remain valid in the extension.
    pub fn extend<S: Into<String>>(&self, extra: Vec<S>) -> Result<Arc<Registry>, PolyError> {
        let mut names = self.names.clone();
        names.extend(extra.into_iter().map(Into::into));
        Registry::new(names)
    }
}

/// A power product, stored as exponent pairs sorted by variable index with
/// all exponents positive. The derived `Ord` is a storage order only; use
/// `MonomialOrder` for mathematical comparisons.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(idx: u32) -> Self {
        Monomial(vec![(idx, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|(_, e)| *e as u64).sum()
    }

    pub fn exp(&self, var: u32) -> u32 {
        self.0
            .iter()
            .find(|(v, _)| *v == var)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().map(|(v, _)| *v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_pairs(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.exp(v) >= e)
    }

    /// other / self, if self divides other.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial::from_pairs(
            other.0.iter().map(|&(v, e)| (v, e - self.exp(v))),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let vars: BTreeSet<u32> = self.support().chain(other.support()).collect();
        Monomial::from_pairs(vars.into_iter().map(|v| (v, self.exp(v).max(other.exp(v)))))
    }

    /// True when the two monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.support().all(|v| other.exp(v) == 0)
    }

    pub fn display(&self, registry: &Registry) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    registry.name(v).to_string()
                } else {
                    format!("{}^{}", registry.name(v), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Sparse polynomial: monomial -> nonzero coefficient.
///
/// Arithmetic between polynomials of different registries is a programming
/// error and panics; the parser guarantees one registry per session.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    registry: Arc<Registry>,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Polynomial {
    pub fn zero(registry: Arc<Registry>) -> Self {
        Polynomial {
            registry,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(registry: Arc<Registry>, c: GaussianRational) -> Self {
        let mut p = Polynomial::zero(registry);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one(registry: Arc<Registry>) -> Self {
        Polynomial::constant(registry, GaussianRational::one())
    }

    pub fn var(registry: Arc<Registry>, idx: u32) -> Self {
        assert!(
            (idx as usize) < registry.len(),
            "variable index out of range"
        );
        let mut p = Polynomial::zero(registry);
        p.add_term(Monomial::var(idx), GaussianRational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussianRational)>>(
        registry: Arc<Registry>,
        terms: I,
    ) -> Self {
        let mut p = Polynomial::zero(registry);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn registry(&self) -> &Arc<Registry> {
        &self.registry
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    /// Some(value) when the polynomial is constant (zero counts as 0).
    pub fn constant_value(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn assert_same_registry(&self, other: &Polynomial) {
        assert!(
            Arc::ptr_eq(&self.registry, &other.registry) || self.registry == other.registry,
            "registry mismatch on mixed-polynomial arithmetic"
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_registry(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_registry(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            registry: self.registry.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_registry(other);
        let mut out = Polynomial::zero(self.registry.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.registry.clone());
        }
        Polynomial {
            registry: self.registry.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.registry.clone());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// self -= c * x^m * g. The workhorse of polynomial division.
    pub fn sub_mul_term(&mut self, c: &GaussianRational, m: &Monomial, g: &Polynomial) {
        self.assert_same_registry(g);
        for (mg, cg) in &g.terms {
            self.add_term(m.mul(mg), -(c * cg));
        }
    }

    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &GaussianRational)> {
        self.terms
            .iter()
            .max_by(|(ma, _), (mb, _)| order.cmp(ma, mb))
    }

    /// (self / lc, lc) with the leading coefficient taken under `order`.
    /// None for the zero polynomial.
    pub fn monic(&self, order: &MonomialOrder) -> Option<(Polynomial, GaussianRational)> {
        let (_, lc) = self.leading(order)?;
        let lc = lc.clone();
        Some((self.scale(&lc.inverse()), lc))
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn support(&self) -> BTreeSet<u32> {
        self.terms.keys().flat_map(|m| m.support()).collect()
    }

    /// Coefficient-wise complex conjugation; variables untouched.
    pub fn conjugate_coeffs(&self) -> Polynomial {
        Polynomial {
            registry: self.registry.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.conj()))
                .collect(),
        }
    }

    /// Reindex variables by a bijection of the registry onto itself
    /// (map[old] = new).
    pub fn permute_vars(&self, map: &[u32]) -> Polynomial {
        assert_eq!(map.len(), self.registry.len());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    Monomial::from_pairs(m.pairs().iter().map(|&(v, e)| (map[v as usize], e))),
                    c.clone(),
                )
            })
            .collect();
        Polynomial {
            registry: self.registry.clone(),
            terms,
        }
    }

    /// Move the polynomial into another registry along a partial variable map
    /// (map[old] = Some(new)). Errors if a used variable has no image.
    pub fn restrict(
        &self,
        target: Arc<Registry>,
        map: &[Option<u32>],
    ) -> Result<Polynomial, PolyError> {
        assert_eq!(map.len(), self.registry.len());
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut pairs = Vec::with_capacity(m.pairs().len());
            for &(v, e) in m.pairs() {
                match map[v as usize] {
                    Some(nv) => pairs.push((nv, e)),
                    None => {
                        return Err(PolyError::RestrictLoses(self.registry.name(v).to_string()))
                    }
                }
            }
            out.add_term(Monomial::from_pairs(pairs), c.clone());
        }
        Ok(out)
    }

    /// Reinterpret in a registry that extends this one by extra variables.
    pub fn lift(&self, target: Arc<Registry>) -> Result<Polynomial, PolyError> {
        if target.len() < self.registry.len()
            || self
                .registry
                .names()
                .iter()
                .zip(target.names())
                .any(|(a, b)| a != b)
        {
            return Err(PolyError::BadLift);
        }
        Ok(Polynomial {
            registry: target,
            terms: self.terms.clone(),
        })
    }

    /// Substitute exact values for some variables; the result stays in the
    /// same registry and no longer mentions the assigned variables.
    pub fn evaluate(&self, assignment: &BTreeMap<u32, GaussianRational>) -> Polynomial {
        let mut out = Polynomial::zero(self.registry.clone());
        for (m, c) in &self.terms {
            let mut scalar = c.clone();
            let mut kept = Vec::new();
            for &(v, e) in m.pairs() {
                match assignment.get(&v) {
                    Some(val) => {
                        for _ in 0..e {
                            scalar = &scalar * val;
                        }
                    }
                    None => kept.push((v, e)),
                }
            }
            out.add_term(Monomial::from_pairs(kept), scalar);
        }
        out
    }

    /// Evaluate at a full point (one value per registry variable).
    pub fn eval_full(&self, point: &[GaussianRational]) -> Result<GaussianRational, PolyError> {
        if point.len() != self.registry.len() {
            return Err(PolyError::PartialAssignment);
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(var, e) in m.pairs() {
                for _ in 0..e {
                    v = &v * &point[var as usize];
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Substitute a polynomial image for every variable: v -> images[v],
    /// all living on `target`.
    pub fn substitute(&self, images: &[Polynomial], target: Arc<Registry>) -> Polynomial {
        let mut powers: BTreeMap<(u32, u32), Polynomial> = BTreeMap::new();
        let mut acc = Polynomial::zero(target.clone());
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target.clone(), c.clone());
            for &(v, e) in m.pairs() {
                let pw = powers
                    .entry((v, e))
                    .or_insert_with(|| images[v as usize].pow(e));
                term = term.mul(pw);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute x_j -> x_j + shift_j for every variable.
    pub fn translate(&self, shift: &[GaussianRational]) -> Polynomial {
        assert_eq!(shift.len(), self.registry.len());
        let mut binomial_pow: BTreeMap<(u32, u32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero(self.registry.clone());
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(self.registry.clone(), c.clone());
            for &(v, e) in m.pairs() {
                if shift[v as usize].is_zero() {
                    term = term.mul(&Polynomial::var(self.registry.clone(), v).pow(e));
                    continue;
                }
                let factor = binomial_pow.entry((v, e)).or_insert_with(|| {
                    let mut base = Polynomial::var(self.registry.clone(), v);
                    base.add_term(Monomial::one(), shift[v as usize].clone());
                    base.pow(e)
                });
                term = term.mul(factor);
            }
            out = out.add(&term);
        }
        out
    }

    pub fn partial_derivative(&self, var: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.registry.clone());
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let lowered = Monomial::from_pairs(
                m.pairs()
                    .iter()
                    .map(|&(v, k)| (v, if v == var { k - 1 } else { k })),
            );
            out.add_term(lowered, c * &GaussianRational::from_int(e as i64));
        }
        out
    }

    /// Group terms by their monomial part in the variables of `block`:
    /// block-monomial -> coefficient polynomial in the remaining variables.
    /// A constant polynomial maps entirely to the key 1.
    pub fn collect_coefficients(&self, block: &BTreeSet<u32>) -> BTreeMap<Monomial, Polynomial> {
        // Distinct source monomials with equal block part have distinct
        // complement parts, so no accumulation below can cancel to zero.
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside): (Vec<_>, Vec<_>) =
                m.pairs().iter().partition(|(v, _)| block.contains(v));
            let key = Monomial::from_pairs(inside);
            out.entry(key)
                .or_insert_with(|| Polynomial::zero(self.registry.clone()))
                .add_term(Monomial::from_pairs(outside), c.clone());
        }
        out
    }

    /// Some(d) when every term has total degree d; None when degrees are
    /// mixed; error on the zero polynomial.
    pub fn homogeneity(&self) -> Result<Option<u64>, PolyError> {
        let mut degs = self.terms.keys().map(|m| m.degree());
        let first = degs.next().ok_or(PolyError::ZeroHomogeneity)?;
        Ok(degs.all(|d| d == first).then_some(first))
    }

    /// Terms in descending `order`, as (monomial, coefficient) clones.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, GaussianRational)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        v.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        v
    }
}

/// Display prints terms in descending grevlex; the output is exactly what the
/// expression parser accepts, so `display -> parse` round-trips.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.sorted_terms(&MonomialOrder::GrevLex) {
            // Extract a display sign so terms join with " + " / " - ".
            let neg = c.re < num_rational::BigRational::zero()
                || (c.re.is_zero() && c.im < num_rational::BigRational::zero());
            let mag = if neg { -c.clone() } else { c.clone() };
            let body = if m.is_one() {
                mag.to_string()
            } else if mag.is_one() {
                m.display(&self.registry)
            } else {
                format!("{}*{}", mag, m.display(&self.registry))
            };
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
                first = false;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
        }
        Ok(())
    }
}
