//! Factorization certificates for homogeneous polynomials.
//!
//! A homogeneous P either splits as G * H with both factors homogeneous of
//! lower degree, or it does not; which one is decidable by finite ansatz.
//! Fix the degree a of G and a degree-a divisor mu of the leading monomial:
//! any factorization can be normalized so that G is monic with leading
//! monomial mu and H carries the leading coefficient of P at nu = LM(P)/mu.
//! The remaining coefficients satisfy a bilinear system; P factors over the
//! complex numbers if and only if some such system is solvable, which a
//! Gröbner basis decides exactly. When a system is solvable we hunt for an
//! exact rational witness by triangularizing (lex) and back-substituting
//! rational roots. Irreducibility certificates are unconditional; witness
//! extraction is best-effort and reports honestly when it fails.

use crate::gb::{GbError, GbOptions, Ideal};
use crate::order::MonomialOrder;
use crate::poly::{Monomial, Polynomial, Registry};
use crate::scalar::GaussianRational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertOptions {
    /// Homogeneity degrees above this are not attempted.
    pub degree_cap: u64,
    pub gb: GbOptions,
}

impl Default for CertOptions {
    fn default() -> Self {
        CertOptions {
            degree_cap: 6,
            gb: GbOptions::default(),
        }
    }
}

/// Outcome of the factor search over the Gaussian rationals.
#[derive(Debug, Clone, PartialEq)]
pub enum FactorSearch {
    /// A verified factorization P = G * H; the pair is sorted canonically.
    Found([Polynomial; 2]),
    /// No factorization exists over the complex numbers (every ansatz
    /// system is infeasible).
    NoneExists,
    /// The question was not settled: non-homogeneous input, degree cap,
    /// budget, or a solvable system without a rational solution.
    Unresolved(String),
}

/// The real-coefficient verdict built on top of the search.
#[derive(Debug, Clone, PartialEq)]
pub enum ConeCertificate {
    /// Irreducible over the complex numbers, hence over the reals.
    CertifiedIrreducible,
    /// Splits with real coefficients; the real cone is a union.
    ReducibleWithWitness([Polynomial; 2]),
    Indeterminate {
        reason: String,
    },
}

/// All monomials of the given degree over the listed variables, sorted
/// descending under grevlex.
fn monomials_of_degree(vars: &[u32], degree: u32) -> Vec<Monomial> {
    fn rec(vars: &[u32], degree: u32, acc: &mut Vec<(u32, u32)>, out: &mut Vec<Monomial>) {
        match vars {
            [] => {
                if degree == 0 {
                    out.push(Monomial::from_pairs(
                        acc.iter().copied().filter(|&(_, e)| e > 0),
                    ));
                }
            }
            [v, rest @ ..] => {
                for e in (0..=degree).rev() {
                    acc.push((*v, e));
                    rec(rest, degree - e, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, degree, &mut Vec::new(), &mut out);
    let order = MonomialOrder::GrevLex;
    out.sort_by(|a, b| order.cmp(b, a));
    out
}

/// Divisors of m with the given total degree, sorted descending (grevlex).
fn divisors_of_degree(m: &Monomial, degree: u32) -> Vec<Monomial> {
    fn rec(pairs: &[(u32, u32)], degree: u32, acc: &mut Vec<(u32, u32)>, out: &mut Vec<Monomial>) {
        match pairs {
            [] => {
                if degree == 0 {
                    out.push(Monomial::from_pairs(
                        acc.iter().copied().filter(|&(_, e)| e > 0),
                    ));
                }
            }
            [(v, emax), rest @ ..] => {
                for e in (0..=(*emax).min(degree)).rev() {
                    acc.push((*v, e));
                    rec(rest, degree - e, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(m.pairs(), degree, &mut Vec::new(), &mut out);
    let order = MonomialOrder::GrevLex;
    out.sort_by(|a, b| order.cmp(b, a));
    out
}

/// Exact rational roots of a univariate real-coefficient polynomial, via
/// divisor enumeration on the cleared-denominator form. Errs when the
/// integer coefficients are too large to enumerate comfortably.
fn rational_roots(p: &Polynomial, var: u32) -> Result<Vec<BigRational>, String> {
    let mut coeffs: BTreeMap<u32, BigRational> = BTreeMap::new();
    for (m, c) in p.terms() {
        if m.pairs().iter().any(|&(v, _)| v != var) {
            return Err("not univariate".to_string());
        }
        if !c.is_real() {
            return Err("nonreal coefficient in eliminant".to_string());
        }
        coeffs.insert(m.exp(var), c.re.clone());
    }
    let max_e = *coeffs.keys().max().expect("nonzero");
    if max_e == 0 {
        return Ok(Vec::new());
    }
    let min_e = *coeffs.keys().min().unwrap();
    let mut roots = BTreeSet::new();
    if min_e > 0 {
        roots.insert(BigRational::zero());
    }
    // Clear denominators.
    let lcm_den = coeffs
        .values()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let int_of = |c: &BigRational| (c * BigRational::from_integer(lcm_den.clone())).to_integer();
    let a0 = int_of(&coeffs[&min_e]);
    let ad = int_of(&coeffs[&max_e]);
    let bound = BigInt::from(1_000_000_000u64);
    if a0.abs() > bound || ad.abs() > bound {
        return Err("eliminant coefficients too large for root enumeration".to_string());
    }
    let divisors = |n: &BigInt| -> Vec<u64> {
        let n = n.abs().to_u64().expect("bounded");
        let mut out = Vec::new();
        let mut d = 1u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                out.push(d);
                out.push(n / d);
            }
            d += 1;
        }
        out
    };
    let eval = |x: &BigRational| -> BigRational {
        let mut acc = BigRational::zero();
        for e in (min_e..=max_e).rev() {
            acc *= x.clone();
            if let Some(c) = coeffs.get(&e) {
                acc += c.clone();
            }
        }
        acc
    };
    for num in divisors(&a0) {
        for den in divisors(&ad) {
            for sign in [1i64, -1] {
                let cand =
                    BigRational::new(BigInt::from(sign) * BigInt::from(num), BigInt::from(den));
                if eval(&cand).is_zero() {
                    roots.insert(cand);
                }
            }
        }
    }
    Ok(roots.into_iter().collect())
}

/// Depth-first search for one rational point of a zero-dimensional real
/// system: lex-triangularize, enumerate rational roots of the eliminant in
/// the least variable, substitute, recurse.
fn solve_rational(
    polys: &[Polynomial],
    remaining: &[u32],
    opts: &GbOptions,
    nodes: &mut u32,
) -> Result<Option<BTreeMap<u32, BigRational>>, String> {
    *nodes += 1;
    if *nodes > 500 {
        return Err("solution search too large".to_string());
    }
    let Some(registry) = polys.first().map(|p| p.registry().clone()) else {
        // No constraints at all: anything works; zero is canonical.
        return Ok(Some(
            remaining
                .iter()
                .map(|&v| (v, BigRational::zero()))
                .collect(),
        ));
    };
    let ideal = Ideal::new(registry.clone(), polys.to_vec());
    let gb = ideal
        .groebner_basis(&MonomialOrder::Lex, opts)
        .map_err(|e| e.to_string())?;
    if gb.is_unit_ideal() {
        return Ok(None);
    }
    if gb.is_zero_ideal() {
        // No constraints left: anything works; zero is canonical.
        return Ok(Some(
            remaining
                .iter()
                .map(|&v| (v, BigRational::zero()))
                .collect(),
        ));
    }
    let Some(&least) = remaining.iter().max() else {
        return Err("constrained system with no variables".to_string());
    };
    let Some(eliminant) = gb
        .polys()
        .iter()
        .find(|p| p.support().iter().all(|&v| v == least))
    else {
        return Err("no univariate eliminant: solution set not finite".to_string());
    };
    let rest: Vec<u32> = remaining.iter().copied().filter(|&v| v != least).collect();
    for root in rational_roots(eliminant, least)? {
        let assign: BTreeMap<u32, GaussianRational> =
            BTreeMap::from([(least, GaussianRational::from_real(root.clone()))]);
        let substituted: Vec<Polynomial> = gb.polys().iter().map(|p| p.evaluate(&assign)).collect();
        if rest.is_empty() {
            if substituted.iter().all(|p| p.is_zero()) {
                return Ok(Some(BTreeMap::from([(least, root)])));
            }
            continue;
        }
        let live: Vec<Polynomial> = substituted.into_iter().filter(|p| !p.is_zero()).collect();
        let sub = if live.is_empty() {
            Some(rest.iter().map(|&v| (v, BigRational::zero())).collect())
        } else {
            solve_rational(&live, &rest, opts, nodes)?
        };
        if let Some(mut sol) = sub {
            sol.insert(least, root);
            return Ok(Some(sol));
        }
    }
    Ok(None)
}

struct Ansatz {
    /// Monomials of each factor; index 0 is the fixed leading one.
    g_monos: Vec<Monomial>,
    h_monos: Vec<Monomial>,
    lc: GaussianRational,
}

impl Ansatz {
    fn unknowns(&self) -> usize {
        self.g_monos.len() - 1 + self.h_monos.len() - 1
    }

    /// Coefficient of the k-th G monomial as a polynomial over the unknown
    /// registry (constant for the fixed slot).
    fn g_coeff(&self, registry: &Arc<Registry>, k: usize) -> Polynomial {
        if k == 0 {
            Polynomial::one(registry.clone())
        } else {
            Polynomial::var(registry.clone(), (k - 1) as u32)
        }
    }

    fn h_coeff(&self, registry: &Arc<Registry>, l: usize) -> Polynomial {
        if l == 0 {
            Polynomial::constant(registry.clone(), self.lc.clone())
        } else {
            Polynomial::var(registry.clone(), (self.g_monos.len() - 1 + l - 1) as u32)
        }
    }

    /// The bilinear system expressing G * H = P.
    fn equations(&self, p: &Polynomial, registry: &Arc<Registry>) -> Vec<Polynomial> {
        let mut eqs: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for k in 0..self.g_monos.len() {
            for l in 0..self.h_monos.len() {
                let m = self.g_monos[k].mul(&self.h_monos[l]);
                let contrib = self.g_coeff(registry, k).mul(&self.h_coeff(registry, l));
                let slot = eqs
                    .entry(m)
                    .or_insert_with(|| Polynomial::zero(registry.clone()));
                *slot = slot.add(&contrib);
            }
        }
        for (m, c) in p.terms() {
            let slot = eqs
                .entry(m.clone())
                .or_insert_with(|| Polynomial::zero(registry.clone()));
            slot.add_term(Monomial::one(), -c.clone());
        }
        eqs.into_values().filter(|e| !e.is_zero()).collect()
    }

    /// Rebuild the factors over the original registry from solved unknowns.
    fn factors(
        &self,
        values: &[GaussianRational],
        target: &Arc<Registry>,
    ) -> (Polynomial, Polynomial) {
        let coeff = |slot: usize| -> GaussianRational { values[slot].clone() };
        let mut g = Polynomial::zero(target.clone());
        g.add_term(self.g_monos[0].clone(), GaussianRational::one());
        for (k, m) in self.g_monos.iter().enumerate().skip(1) {
            g.add_term(m.clone(), coeff(k - 1));
        }
        let mut h = Polynomial::zero(target.clone());
        h.add_term(self.h_monos[0].clone(), self.lc.clone());
        for (l, m) in self.h_monos.iter().enumerate().skip(1) {
            h.add_term(m.clone(), coeff(self.g_monos.len() - 1 + l - 1));
        }
        (g, h)
    }
}

/// Search for a homogeneous factorization P = G * H over the Gaussian
/// rationals. See the module docs for the contract.
pub fn ansatz_factor_homogeneous(p: &Polynomial, opts: &CertOptions) -> FactorSearch {
    if p.is_zero() {
        return FactorSearch::Unresolved("zero polynomial".to_string());
    }
    let degree = match p.homogeneity() {
        Ok(Some(d)) => d,
        Ok(None) => {
            return FactorSearch::Unresolved("not homogeneous".to_string());
        }
        Err(_) => unreachable!("nonzero polynomial"),
    };
    if degree == 0 {
        return FactorSearch::Unresolved("constant polynomial".to_string());
    }
    if degree == 1 {
        return FactorSearch::NoneExists;
    }
    if degree > opts.degree_cap {
        return FactorSearch::Unresolved(format!(
            "degree {degree} exceeds the certificate cap {}",
            opts.degree_cap
        ));
    }
    let order = MonomialOrder::GrevLex;
    let (lm, lc) = p.leading(&order).expect("nonzero");
    let (lm, lc) = (lm.clone(), lc.clone());
    let vars: Vec<u32> = p.support().into_iter().collect();
    let mut unresolved: Option<String> = None;

    for a in 1..=(degree / 2) {
        for mu in divisors_of_degree(&lm, a as u32) {
            let nu = mu.quotient_of(&lm).expect("divisor");
            let below = |pool: Vec<Monomial>, top: &Monomial| -> Vec<Monomial> {
                pool.into_iter()
                    .filter(|m| order.cmp(m, top) == std::cmp::Ordering::Less)
                    .collect()
            };
            let mut g_monos = vec![mu.clone()];
            g_monos.extend(below(monomials_of_degree(&vars, a as u32), &mu));
            let mut h_monos = vec![nu.clone()];
            h_monos.extend(below(monomials_of_degree(&vars, (degree - a) as u32), &nu));
            let ansatz = Ansatz {
                g_monos,
                h_monos,
                lc: lc.clone(),
            };
            let u = ansatz.unknowns();
            let unknown_names: Vec<String> = (0..u).map(|k| format!("#u{k}")).collect();
            let ureg = Registry::new(unknown_names).expect("distinct");
            let eqs = ansatz.equations(p, &ureg);
            // Infeasible over the complex numbers?
            let feasible = match Ideal::new(ureg.clone(), eqs.clone()).is_unit_ideal(&opts.gb) {
                Ok(unit) => !unit,
                Err(GbError::BudgetExceeded { .. }) => {
                    unresolved
                        .get_or_insert_with(|| "budget exhausted on an ansatz system".to_string());
                    continue;
                }
            };
            if !feasible {
                continue;
            }
            // Solvable: hunt for a rational witness over realified unknowns.
            let real_names: Vec<String> = (0..u)
                .flat_map(|k| [format!("#a{k}"), format!("#b{k}")])
                .collect();
            let rreg = Registry::new(real_names).expect("distinct");
            let i = GaussianRational::i();
            let images: Vec<Polynomial> = (0..u)
                .map(|k| {
                    Polynomial::var(rreg.clone(), 2 * k as u32)
                        .add(&Polynomial::var(rreg.clone(), 2 * k as u32 + 1).scale(&i))
                })
                .collect();
            let mut real_eqs: Vec<Polynomial> = Vec::new();
            for eq in &eqs {
                let full = eq.substitute(&images, rreg.clone());
                let mut re = Polynomial::zero(rreg.clone());
                let mut im = Polynomial::zero(rreg.clone());
                for (m, c) in full.terms() {
                    re.add_term(m.clone(), GaussianRational::from_real(c.re.clone()));
                    im.add_term(m.clone(), GaussianRational::from_real(c.im.clone()));
                }
                for part in [re, im] {
                    if !part.is_zero() {
                        real_eqs.push(part);
                    }
                }
            }
            let all_vars: Vec<u32> = (0..2 * u as u32).collect();
            let mut nodes = 0;
            match solve_rational(&real_eqs, &all_vars, &opts.gb, &mut nodes) {
                Ok(Some(sol)) => {
                    let values: Vec<GaussianRational> = (0..u)
                        .map(|k| {
                            GaussianRational::new(
                                sol[&(2 * k as u32)].clone(),
                                sol[&(2 * k as u32 + 1)].clone(),
                            )
                        })
                        .collect();
                    let (g, h) = ansatz.factors(&values, p.registry());
                    if g.mul(&h) == *p {
                        let mut pair = [g, h];
                        if pair[0].to_string() > pair[1].to_string() {
                            pair.swap(0, 1);
                        }
                        return FactorSearch::Found(pair);
                    }
                    // A solution that fails verification indicates a bug;
                    // stay honest rather than report a wrong witness.
                    unresolved
                        .get_or_insert_with(|| "extracted witness failed verification".to_string());
                }
                Ok(None) => {
                    unresolved.get_or_insert_with(|| {
                        "a factorization exists over the complex numbers but no rational \
                         witness was found"
                            .to_string()
                    });
                }
                Err(reason) => {
                    unresolved.get_or_insert(reason);
                }
            }
        }
    }
    match unresolved {
        Some(reason) => FactorSearch::Unresolved(reason),
        None => FactorSearch::NoneExists,
    }
}

/// Real-coefficient certificate for the cone of a homogeneous polynomial.
pub fn cone_certificate(p: &Polynomial, opts: &CertOptions) -> ConeCertificate {
    match ansatz_factor_homogeneous(p, opts) {
        FactorSearch::NoneExists => ConeCertificate::CertifiedIrreducible,
        FactorSearch::Found(pair) => {
            let real = pair.iter().all(|f| f.terms().all(|(_, c)| c.is_real()));
            if real {
                ConeCertificate::ReducibleWithWitness(pair)
            } else {
                ConeCertificate::Indeterminate {
                    reason: format!(
                        "factors found over the Gaussian rationals, ({}) ({}), but none \
                         with real coefficients were identified",
                        pair[0], pair[1]
                    ),
                }
            }
        }
        FactorSearch::Unresolved(reason) => ConeCertificate::Indeterminate { reason },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_real_expression;

    fn poly(text: &str, vars: &[&str]) -> Polynomial {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        parse_real_expression(text, &names).unwrap()
    }

    fn opts() -> CertOptions {
        CertOptions::default()
    }

    #[test]
    fn difference_of_squares_splits_with_real_witness() {
        let p = poly("x^2 - y^2", &["x", "y"]);
        match ansatz_factor_homogeneous(&p, &opts()) {
            FactorSearch::Found(pair) => {
                assert_eq!(pair[0].mul(&pair[1]), p);
                let strs: BTreeSet<String> = pair.iter().map(|f| f.to_string()).collect();
                assert_eq!(
                    strs,
                    BTreeSet::from(["x + y".to_string(), "x - y".to_string()])
                );
            }
            other => panic!("expected factors, got {other:?}"),
        }
        assert!(matches!(
            cone_certificate(&p, &opts()),
            ConeCertificate::ReducibleWithWitness(_)
        ));
    }

    #[test]
    fn cubic_splits() {
        let p = poly("x^3 - y^3", &["x", "y"]);
        match ansatz_factor_homogeneous(&p, &opts()) {
            FactorSearch::Found(pair) => {
                assert_eq!(pair[0].mul(&pair[1]), p);
            }
            other => panic!("expected factors, got {other:?}"),
        }
    }

    #[test]
    fn sum_of_squares_has_complex_witness_only() {
        let p = poly("x^2 + y^2", &["x", "y"]);
        match ansatz_factor_homogeneous(&p, &opts()) {
            FactorSearch::Found(pair) => {
                assert_eq!(pair[0].mul(&pair[1]), p);
                assert!(pair.iter().any(|f| f.terms().any(|(_, c)| !c.is_real())));
            }
            other => panic!("expected complex factors, got {other:?}"),
        }
        // The real cone question stays open.
        assert!(matches!(
            cone_certificate(&p, &opts()),
            ConeCertificate::Indeterminate { .. }
        ));
    }

    #[test]
    fn rank_six_quadric_is_certified_irreducible() {
        let p = poly(
            "a^2 + b^2 + c^2 + d^2 - e^2 - f^2",
            &["a", "b", "c", "d", "e", "f"],
        );
        assert_eq!(
            ansatz_factor_homogeneous(&p, &opts()),
            FactorSearch::NoneExists
        );
        assert_eq!(
            cone_certificate(&p, &opts()),
            ConeCertificate::CertifiedIrreducible
        );
    }

    #[test]
    fn non_homogeneous_is_indeterminate() {
        let p = poly("s*x^2 - y^2", &["x", "y", "s"]);
        assert!(matches!(
            ansatz_factor_homogeneous(&p, &opts()),
            FactorSearch::Unresolved(_)
        ));
        match cone_certificate(&p, &opts()) {
            ConeCertificate::Indeterminate { reason } => {
                assert!(reason.contains("homogeneous"));
            }
            other => panic!("expected indeterminate, got {other:?}"),
        }
    }

    #[test]
    fn degree_cap_is_respected() {
        let p = poly("(x^2 + y^2)^6 - s^8*x^3*(s - x)", &["x", "y", "s"]);
        assert_eq!(p.homogeneity().unwrap(), Some(12));
        match cone_certificate(&p, &opts()) {
            ConeCertificate::Indeterminate { reason } => {
                assert!(reason.contains("cap"));
            }
            other => panic!("expected indeterminate, got {other:?}"),
        }
        // Raising the cap is possible in principle; a tiny budget then
        // reports the resource limit instead of hanging.
        let tight = CertOptions {
            degree_cap: 12,
            gb: GbOptions { budget: 50 },
        };
        assert!(matches!(
            cone_certificate(&p, &tight),
            ConeCertificate::Indeterminate { .. }
        ));
    }

    #[test]
    fn repeated_factor_is_found() {
        let p = poly("x^2 + 2*x*y + y^2", &["x", "y"]);
        match ansatz_factor_homogeneous(&p, &opts()) {
            FactorSearch::Found(pair) => {
                assert_eq!(pair[0], pair[1]);
                assert_eq!(pair[0].to_string(), "x + y");
            }
            other => panic!("expected square, got {other:?}"),
        }
    }

    #[test]
    fn linear_forms_do_not_factor() {
        let p = poly("x + 3*y", &["x", "y"]);
        assert_eq!(
            ansatz_factor_homogeneous(&p, &opts()),
            FactorSearch::NoneExists
        );
    }
}
