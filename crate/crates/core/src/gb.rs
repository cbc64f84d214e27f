//! Gröbner bases over Q(i): Buchberger's algorithm with the coprime and
//! chain criteria, unique reduced bases, normal forms, ideal and radical
//! membership, elimination, and Krull dimension via independent sets.
//!
//! Every entry point is metered: a reduction-step budget (default 200,000)
//! turns runaway computations into a hard `BudgetExceeded` error instead of
//! a hang. All results are deterministic for a given input and order.

use crate::order::MonomialOrder;
use crate::poly::{Monomial, Polynomial, Registry};
use std::collections::BTreeSet;
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GbError {
    #[error("computation budget exhausted after {spent} reduction steps (budget {budget})")]
    BudgetExceeded { spent: u64, budget: u64 },
}

/// Resource limits for basis computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GbOptions {
    /// Total reduction steps allowed across one computation.
    pub budget: u64,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { budget: 200_000 }
    }
}

struct Budget {
    spent: u64,
    budget: u64,
}

impl Budget {
    fn new(opts: &GbOptions) -> Budget {
        Budget {
            spent: 0,
            budget: opts.budget,
        }
    }

    fn spend(&mut self, n: u64) -> Result<(), GbError> {
        self.spent = self.spent.saturating_add(n);
        if self.spent > self.budget {
            Err(GbError::BudgetExceeded {
                spent: self.spent,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }
}

/// A reduced Gröbner basis: monic, mutually reduced, sorted descending by
/// leading monomial. Unique for a given ideal and order, so equality of
/// bases is equality of ideals.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    /// The basis of the unit ideal is exactly [1].
    pub fn is_unit_ideal(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].constant_value().is_some()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.polys.is_empty()
    }

    fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| {
                p.leading(&self.order)
                    .expect("basis has no zeros")
                    .0
                    .clone()
            })
            .collect()
    }
}

/// Fully reduce `p` against `basis`: repeatedly cancel the leading monomial
/// by the first (lowest-index) basis element whose leading monomial divides
/// it, moving irreducible leading terms to the remainder. Against a reduced
/// Gröbner basis this is the unique normal form.
fn reduce(
    p: &Polynomial,
    basis: &[Polynomial],
    order: &MonomialOrder,
    budget: &mut Budget,
) -> Result<Polynomial, GbError> {
    let leads: Vec<(Monomial, crate::scalar::GaussianRational)> = basis
        .iter()
        .map(|g| {
            let (m, c) = g.leading(order).expect("basis has no zeros");
            (m.clone(), c.clone())
        })
        .collect();
    let mut work = p.clone();
    let mut rem = Polynomial::zero(p.registry().clone());
    while let Some((lm, lc)) = work.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        let mut reduced = false;
        for (g, (glm, glc)) in basis.iter().zip(&leads) {
            if let Some(q) = glm.quotient_of(&lm) {
                budget.spend(1)?;
                let factor = lc.clone() * glc.clone().inverse();
                work.sub_mul_term(&factor, &q, g);
                reduced = true;
                break;
            }
        }
        if !reduced {
            rem.add_term(lm.clone(), lc.clone());
            work.add_term(lm, -lc);
        }
    }
    Ok(rem)
}

/// Buchberger's algorithm producing the reduced basis. Pair selection is by
/// lcm degree, then pair index, so runs are reproducible. Pairs with coprime
/// leading monomials are dropped outright; the chain criterion drops a pair
/// when a third element divides its lcm and both side pairs are already
/// handled.
pub fn buchberger(
    generators: &[Polynomial],
    order: &MonomialOrder,
    opts: &GbOptions,
) -> Result<GroebnerBasis, GbError> {
    let mut budget = Budget::new(opts);
    let registry = generators
        .first()
        .map(|p| p.registry().clone())
        .unwrap_or_else(|| Registry::new(Vec::<String>::new()).unwrap());

    let mut basis: Vec<Polynomial> = Vec::new();
    for g in generators {
        if !g.is_zero() {
            basis.push(g.monic(order).unwrap().0);
        }
    }

    // Pending pairs keyed (lcm degree, i, j); handled pairs feed the chain
    // criterion. Indices are stable: the basis only grows during the loop.
    let mut pending: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let mut pending_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let lm = |p: &Polynomial| p.leading(order).expect("nonzero").0.clone();
    let add_pairs = |basis: &[Polynomial],
                     j: usize,
                     pending: &mut BTreeSet<(u64, usize, usize)>,
                     pairs: &mut BTreeSet<(usize, usize)>| {
        for i in 0..j {
            let l = lm(&basis[i]).lcm(&lm(&basis[j]));
            pending.insert((l.degree(), i, j));
            pairs.insert((i, j));
        }
    };
    for j in 0..basis.len() {
        add_pairs(&basis, j, &mut pending, &mut pending_pairs);
    }

    while let Some(&(deg, i, j)) = pending.iter().next() {
        pending.remove(&(deg, i, j));
        pending_pairs.remove(&(i, j));
        budget.spend(1)?;
        let lmi = lm(&basis[i]);
        let lmj = lm(&basis[j]);
        if lmi.coprime(&lmj) {
            continue;
        }
        let lcm = lmi.lcm(&lmj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&lcm)
                && !pending_pairs.contains(&(i.min(k), i.max(k)))
                && !pending_pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        // S-polynomial of monic f, g: shift each to the lcm and subtract.
        let one = crate::scalar::GaussianRational::one();
        let mut s = Polynomial::zero(registry.clone());
        s.sub_mul_term(&(-one.clone()), &lmi.quotient_of(&lcm).unwrap(), &basis[i]);
        s.sub_mul_term(&one, &lmj.quotient_of(&lcm).unwrap(), &basis[j]);
        let r = reduce(&s, &basis, order, &mut budget)?;
        if !r.is_zero() {
            basis.push(r.monic(order).unwrap().0);
            let j = basis.len() - 1;
            add_pairs(&basis, j, &mut pending, &mut pending_pairs);
        }
    }

    // Minimalize: drop elements whose leading monomial another one divides.
    let mut keep: Vec<Polynomial> = Vec::new();
    'outer: for (i, p) in basis.iter().enumerate() {
        let lmp = lm(p);
        for (k, q) in basis.iter().enumerate() {
            if k == i {
                continue;
            }
            let lmq = lm(q);
            // On ties (equal LMs) keep the earlier element.
            if lmq.divides(&lmp) && (lmq != lmp || k < i) {
                continue 'outer;
            }
        }
        keep.push(p.clone());
    }

    // Reduce each survivor against the others for the unique reduced basis.
    let mut reduced: Vec<Polynomial> = Vec::new();
    for i in 0..keep.len() {
        let others: Vec<Polynomial> = keep
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, q)| q.clone())
            .collect();
        let r = reduce(&keep[i], &others, order, &mut budget)?;
        if !r.is_zero() {
            reduced.push(r.monic(order).unwrap().0);
        }
    }
    reduced.sort_by(|a, b| {
        let la = a.leading(order).unwrap().0;
        let lb = b.leading(order).unwrap().0;
        order.cmp(lb, la)
    });

    Ok(GroebnerBasis {
        order: order.clone(),
        polys: reduced,
    })
}

/// An ideal of Q(i)[registry], carrying its generators and a cache of
/// computed bases, one per order.
#[derive(Debug)]
pub struct Ideal {
    registry: Arc<Registry>,
    generators: Vec<Polynomial>,
    cache: Mutex<Vec<(MonomialOrder, Arc<GroebnerBasis>)>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            registry: self.registry.clone(),
            generators: self.generators.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl Ideal {
    /// Zero generators are dropped; an empty list is the zero ideal.
    pub fn new(registry: Arc<Registry>, generators: Vec<Polynomial>) -> Ideal {
        let generators = generators.into_iter().filter(|p| !p.is_zero()).collect();
        Ideal {
            registry,
            generators,
            cache: Mutex::new(Vec::new()),
        }
    }

    pub fn registry(&self) -> &Arc<Registry> {
        &self.registry
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn groebner_basis(
        &self,
        order: &MonomialOrder,
        opts: &GbOptions,
    ) -> Result<Arc<GroebnerBasis>, GbError> {
        {
            let cache = self.cache.lock().unwrap();
            if let Some((_, gb)) = cache.iter().find(|(o, _)| o == order) {
                return Ok(gb.clone());
            }
        }
        let gb = Arc::new(buchberger(&self.generators, order, opts)?);
        let mut cache = self.cache.lock().unwrap();
        if let Some((_, hit)) = cache.iter().find(|(o, _)| o == order) {
            return Ok(hit.clone());
        }
        cache.push((order.clone(), gb.clone()));
        Ok(gb)
    }

    /// Unique normal form of `p` modulo the ideal under `order`.
    pub fn normal_form(
        &self,
        p: &Polynomial,
        order: &MonomialOrder,
        opts: &GbOptions,
    ) -> Result<Polynomial, GbError> {
        let gb = self.groebner_basis(order, opts)?;
        let mut budget = Budget::new(opts);
        reduce(p, gb.polys(), order, &mut budget)
    }

    /// Ideal membership: the normal form vanishes.
    pub fn contains(&self, p: &Polynomial, opts: &GbOptions) -> Result<bool, GbError> {
        Ok(self
            .normal_form(p, &MonomialOrder::GrevLex, opts)?
            .is_zero())
    }

    pub fn is_unit_ideal(&self, opts: &GbOptions) -> Result<bool, GbError> {
        Ok(self
            .groebner_basis(&MonomialOrder::GrevLex, opts)?
            .is_unit_ideal())
    }

    /// Radical membership: p vanishes on the zero set iff 1 lies in
    /// I + (1 - t p) for a fresh variable t.
    pub fn radical_contains(&self, p: &Polynomial, opts: &GbOptions) -> Result<bool, GbError> {
        if p.is_zero() {
            return Ok(true);
        }
        // '#' cannot occur in a parsed name, so the slack variable is fresh.
        let extended = self.registry.extend(vec!["#t"]).expect("fresh name");
        let t = Polynomial::var(extended.clone(), (extended.len() - 1) as u32);
        let mut gens: Vec<Polynomial> = self
            .generators
            .iter()
            .map(|g| g.lift(extended.clone()).expect("prefix registry"))
            .collect();
        let lifted = p.lift(extended.clone()).expect("prefix registry");
        gens.push(Polynomial::one(extended.clone()).sub(&t.mul(&lifted)));
        let ideal = Ideal::new(extended, gens);
        ideal.is_unit_ideal(opts)
    }

    /// The elimination ideal killing the variables in `drop`, as an ideal of
    /// the same registry: basis elements of a block order whose support
    /// avoids the dropped variables.
    pub fn eliminate(&self, drop: &BTreeSet<u32>, opts: &GbOptions) -> Result<Ideal, GbError> {
        let order = MonomialOrder::Block {
            front: drop.clone(),
        };
        let gb = self.groebner_basis(&order, opts)?;
        let kept: Vec<Polynomial> = gb
            .polys()
            .iter()
            .filter(|p| p.support().is_disjoint(drop))
            .cloned()
            .collect();
        Ok(Ideal::new(self.registry.clone(), kept))
    }

    /// Krull dimension of the vanishing set in affine space over all
    /// registry variables: -1 for the unit ideal, the variable count for
    /// the zero ideal, otherwise the size of a largest set S of variables
    /// such that no leading monomial is supported entirely inside S.
    pub fn krull_dimension(&self, opts: &GbOptions) -> Result<i64, GbError> {
        let gb = self.groebner_basis(&MonomialOrder::GrevLex, opts)?;
        if gb.is_unit_ideal() {
            return Ok(-1);
        }
        let n = self.registry.len();
        if gb.is_zero_ideal() {
            return Ok(n as i64);
        }
        assert!(n <= 24, "dimension search is exponential in variable count");
        let masks: Vec<u32> = gb
            .leading_monomials()
            .iter()
            .map(|m| m.support().fold(0u32, |acc, v| acc | (1 << v)))
            .collect();
        let mut best = 0u32;
        for s in 0u32..(1u32 << n) {
            if s.count_ones() > best && masks.iter().all(|lm| lm & !s != 0) {
                best = s.count_ones();
            }
        }
        Ok(best as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;

    fn opts() -> GbOptions {
        GbOptions::default()
    }

    fn reg3() -> Arc<Registry> {
        Registry::new(vec!["x", "y", "z"]).unwrap()
    }

    fn parse(reg: &Arc<Registry>, text: &str) -> Polynomial {
        // Tiny helper: reuse the expression parser over plain variables.
        let names: Vec<String> = reg.names().to_vec();
        crate::parse::parse_real_expression(text, &names)
            .unwrap()
            .lift(reg.clone())
            .unwrap()
    }

    #[test]
    fn normal_form_matches_hand_reduction() {
        // Modulo x - y and y^2 - 1: x^2 y + x y^2 + y^2 = 2y + 1.
        let reg = Registry::new(vec!["x", "y"]).unwrap();
        let gens = vec![parse(&reg, "x*y - 1"), parse(&reg, "y^2 - 1")];
        let ideal = Ideal::new(reg.clone(), gens);
        let gb = ideal
            .groebner_basis(&MonomialOrder::GrevLex, &opts())
            .unwrap();
        let printed: Vec<String> = gb.polys().iter().map(|p| p.to_string()).collect();
        assert_eq!(printed, vec!["y^2 - 1", "x - y"]);
        let f = parse(&reg, "x^2*y + x*y^2 + y^2");
        let nf = ideal
            .normal_form(&f, &MonomialOrder::GrevLex, &opts())
            .unwrap();
        assert_eq!(nf, parse(&reg, "2*y + 1"));
    }

    #[test]
    fn twisted_cubic_lex_basis_and_elimination() {
        let reg = reg3();
        let gens = vec![parse(&reg, "y - x^2"), parse(&reg, "z - x^3")];
        let ideal = Ideal::new(reg.clone(), gens);
        let gb = ideal.groebner_basis(&MonomialOrder::Lex, &opts()).unwrap();
        // Display order is always grevlex, where y^2 beats x*z; the third
        // element is monic under lex (leading monomial x*z), so it prints
        // with a leading minus.
        let printed: Vec<String> = gb.polys().iter().map(|p| p.to_string()).collect();
        assert_eq!(
            printed,
            vec!["x^2 - y", "x*y - z", "-y^2 + x*z", "y^3 - z^2"]
        );
        // Eliminating x leaves the cuspidal cubic.
        let elim = ideal.eliminate(&BTreeSet::from([0]), &opts()).unwrap();
        let printed: Vec<String> = elim.generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(printed, vec!["y^3 - z^2"]);
        // Eliminating x from a graph over x leaves nothing.
        let graph = Ideal::new(reg.clone(), vec![parse(&reg, "y - x^2")]);
        let elim = graph.eliminate(&BTreeSet::from([0]), &opts()).unwrap();
        assert!(elim.generators().is_empty());
    }

    #[test]
    fn membership_and_radical_membership() {
        let reg = Registry::new(vec!["x", "y"]).unwrap();
        let ideal = Ideal::new(reg.clone(), vec![parse(&reg, "x^2"), parse(&reg, "y^2")]);
        let xy = parse(&reg, "x*y");
        // x y is not in (x^2, y^2) but its square is.
        assert!(!ideal.contains(&xy, &opts()).unwrap());
        assert!(ideal.contains(&xy.mul(&xy), &opts()).unwrap());
        assert!(ideal.radical_contains(&xy, &opts()).unwrap());
        // x + 1 does not vanish at the origin.
        assert!(!ideal
            .radical_contains(&parse(&reg, "x + 1"), &opts())
            .unwrap());
        // Zero is in every radical.
        assert!(ideal
            .radical_contains(&Polynomial::zero(reg.clone()), &opts())
            .unwrap());
    }

    #[test]
    fn krull_dimension_cases() {
        let reg = reg3();
        // Twisted cubic: a curve.
        let cubic = Ideal::new(
            reg.clone(),
            vec![parse(&reg, "y - x^2"), parse(&reg, "z - x^3")],
        );
        assert_eq!(cubic.krull_dimension(&opts()).unwrap(), 1);
        // (xy, xz): plane union line.
        let pl = Ideal::new(reg.clone(), vec![parse(&reg, "x*y"), parse(&reg, "x*z")]);
        assert_eq!(pl.krull_dimension(&opts()).unwrap(), 2);
        // Unit ideal: empty set.
        let unit = Ideal::new(reg.clone(), vec![parse(&reg, "x + 1"), parse(&reg, "x")]);
        assert_eq!(unit.krull_dimension(&opts()).unwrap(), -1);
        assert!(unit.is_unit_ideal(&opts()).unwrap());
        // Zero ideal: all of affine 3-space.
        let zero = Ideal::new(reg.clone(), vec![]);
        assert_eq!(zero.krull_dimension(&opts()).unwrap(), 3);
        // A maximal ideal: the origin.
        let origin = Ideal::new(
            reg.clone(),
            vec![parse(&reg, "x"), parse(&reg, "y"), parse(&reg, "z")],
        );
        assert_eq!(origin.krull_dimension(&opts()).unwrap(), 0);
    }

    #[test]
    fn reduced_basis_is_canonical() {
        let reg = reg3();
        let a = vec![parse(&reg, "y - x^2"), parse(&reg, "z - x^3")];
        let b = vec![
            parse(&reg, "z - x^3"),
            parse(&reg, "y - x^2"),
            // A redundant combination changes nothing.
            parse(&reg, "3*(y - x^2) + (z - x^3)"),
        ];
        let ia = Ideal::new(reg.clone(), a);
        let ib = Ideal::new(reg.clone(), b);
        for order in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
            let ga = ia.groebner_basis(&order, &opts()).unwrap();
            let gb = ib.groebner_basis(&order, &opts()).unwrap();
            assert_eq!(ga.polys(), gb.polys());
            // Recomputing from the basis itself is a fixed point.
            let again = buchberger(ga.polys(), &order, &opts()).unwrap();
            assert_eq!(again.polys(), ga.polys());
        }
    }

    #[test]
    fn normal_form_is_linear() {
        let reg = reg3();
        let ideal = Ideal::new(
            reg.clone(),
            vec![parse(&reg, "y - x^2"), parse(&reg, "z - x^3")],
        );
        let f = parse(&reg, "x^4 + y*z - 7");
        let g = parse(&reg, "z^2 - x*y + 1/2");
        let o = MonomialOrder::GrevLex;
        let nf = |p: &Polynomial| ideal.normal_form(p, &o, &opts()).unwrap();
        assert_eq!(nf(&f.add(&g)), nf(&f).add(&nf(&g)));
        assert_eq!(nf(&f.scale(&G::from_int(5))), nf(&f).scale(&G::from_int(5)));
        // Normal forms are idempotent.
        assert_eq!(nf(&nf(&f)), nf(&f));
    }

    #[test]
    fn budget_failure_is_reported() {
        let reg = reg3();
        let gens = vec![parse(&reg, "y - x^2"), parse(&reg, "z - x^3")];
        let tight = GbOptions { budget: 3 };
        let err = buchberger(&gens, &MonomialOrder::Lex, &tight).unwrap_err();
        assert!(matches!(err, GbError::BudgetExceeded { budget: 3, .. }));
    }

    #[test]
    fn gaussian_coefficients_work() {
        // (z - i w)(z + i w) = z^2 + w^2: both factors lie in the ideal
        // they generate and the product reduces to zero against either.
        let reg = Registry::new(vec!["z", "w"]).unwrap();
        let z = Polynomial::var(reg.clone(), 0);
        let w = Polynomial::var(reg.clone(), 1);
        let iw = w.scale(&G::i());
        let plus = z.add(&iw);
        let minus = z.sub(&iw);
        let ideal = Ideal::new(reg.clone(), vec![plus.clone()]);
        let prod = plus.mul(&minus);
        assert!(ideal.contains(&prod, &opts()).unwrap());
        let sum_sq = z.mul(&z).add(&w.mul(&w));
        assert_eq!(prod, sum_sq);
    }
}
