//! Complexification of a real-algebraic variety and its Segre slices.
//!
//! A variety X in C^n cut out by real-valued polynomial generators
//! rho_j(z, conj z) complexifies to the ideal of the rho_j(z, zeta) with
//! zeta an independent copy of the variables. The Segre slice at a point q
//! freezes zeta = conj(q); its dimension at q stratifies X, with the fully
//! degenerate points (slice = all of C^n) cut out by an explicit ideal in
//! the coefficients.

use crate::gb::{GbError, GbOptions, Ideal};
use crate::order::MonomialOrder;
use crate::parse::VarietyData;
use crate::poly::{Polynomial, Registry};
use crate::scalar::GaussianRational;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

pub type Point = Vec<GaussianRational>;

/// The complexified variety: generators rewritten in z_1..z_n,
/// zeta_1..zeta_n, together with the tools to slice it.
#[derive(Debug, Clone)]
pub struct Complexification {
    n: usize,
    /// z variables followed by their zeta partners.
    registry: Arc<Registry>,
    /// The z variables alone: slices and loci live here.
    z_registry: Arc<Registry>,
    ideal: Ideal,
    opts: GbOptions,
}

/// Everything classify_point determines about one point.
#[derive(Debug, Clone)]
pub struct SegreReport {
    pub point: Point,
    pub on_variety: bool,
    /// Dimension of the Segre slice at the point; -1 when the point is not
    /// on its own slice.
    pub segre_dim: i64,
    /// Membership in the dimension-at-least-k stratum, for k = 0..=n.
    pub k_membership: Vec<bool>,
    pub fully_degenerate: bool,
    /// Reduced grevlex basis of the slice ideal.
    pub segre_basis: Vec<Polynomial>,
    /// Agreement between the two independent tests for full degeneracy:
    /// slice dimension = n versus vanishing of the locus generators.
    pub locus_agrees: bool,
}

pub fn complexify(v: &VarietyData, opts: &GbOptions) -> Complexification {
    let n = v.n();
    let mut names: Vec<String> = v.vars.names().to_vec();
    names.extend(v.vars.names().iter().map(|s| format!("zeta_{s}")));
    let registry = Registry::new(names).expect("ambient names are distinct");
    let z_registry = Registry::new(v.vars.names().to_vec()).expect("distinct");
    // Index layout matches the conjugate registry, so this is a rename.
    let identity: Vec<Option<u32>> = (0..2 * n as u32).map(Some).collect();
    let gens: Vec<Polynomial> = v
        .generators
        .iter()
        .map(|g| {
            g.poly
                .restrict(registry.clone(), &identity)
                .expect("same index layout")
        })
        .collect();
    Complexification {
        n,
        registry: registry.clone(),
        z_registry,
        ideal: Ideal::new(registry, gens),
        opts: opts.clone(),
    }
}

impl Complexification {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn registry(&self) -> &Arc<Registry> {
        &self.registry
    }

    pub fn z_registry(&self) -> &Arc<Registry> {
        &self.z_registry
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn options(&self) -> &GbOptions {
        &self.opts
    }

    /// The antiholomorphic involution on descriptions: conjugate the
    /// coefficients and swap z_j with zeta_j.
    pub fn sigma_swap(&self, p: &Polynomial) -> Polynomial {
        let n = self.n as u32;
        let map: Vec<u32> = (0..2 * n)
            .map(|v| if v < n { v + n } else { v - n })
            .collect();
        p.conjugate_coeffs().permute_vars(&map)
    }

    /// Verify that the complexified ideal is invariant under sigma_swap:
    /// the image of every generator reduces to zero.
    pub fn sigma_check(&self) -> Result<bool, GbError> {
        for g in self.ideal.generators() {
            if !self.ideal.contains(&self.sigma_swap(g), &self.opts)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact membership of q in X: every generator vanishes at (q, conj q).
    pub fn point_on_variety(&self, q: &[GaussianRational]) -> bool {
        assert_eq!(q.len(), self.n, "point has wrong length");
        let full: Vec<GaussianRational> = q
            .iter()
            .cloned()
            .chain(q.iter().map(|c| c.conj()))
            .collect();
        self.ideal
            .generators()
            .iter()
            .all(|g| g.eval_full(&full).expect("full point").is_zero())
    }

    /// Ideal of the Segre slice at q: substitute zeta = conj(q) and read the
    /// generators in the z variables alone.
    pub fn segre_ideal_at(&self, q: &[GaussianRational]) -> Ideal {
        assert_eq!(q.len(), self.n, "point has wrong length");
        let n = self.n as u32;
        let assign: BTreeMap<u32, GaussianRational> =
            (0..self.n).map(|j| (n + j as u32, q[j].conj())).collect();
        let map: Vec<Option<u32>> = (0..2 * n).map(|v| (v < n).then_some(v)).collect();
        let gens: Vec<Polynomial> = self
            .ideal
            .generators()
            .iter()
            .map(|g| {
                g.evaluate(&assign)
                    .restrict(self.z_registry.clone(), &map)
                    .expect("zeta variables substituted away")
            })
            .collect();
        Ideal::new(self.z_registry.clone(), gens)
    }

    /// Dimension of the Segre slice at q: -1 when q is not on its own slice,
    /// otherwise the Krull dimension of the slice ideal (computed after
    /// translating q to the origin, where not lying on the slice shows up as
    /// a nonzero constant term).
    pub fn segre_dim_at(&self, q: &[GaussianRational]) -> Result<i64, GbError> {
        let slice = self.segre_ideal_at(q);
        let shifted: Vec<Polynomial> = slice.generators().iter().map(|g| g.translate(q)).collect();
        if shifted
            .iter()
            .any(|g| !g.coeff(&crate::poly::Monomial::one()).is_zero())
        {
            return Ok(-1);
        }
        Ideal::new(self.z_registry.clone(), shifted).krull_dimension(&self.opts)
    }

    /// Membership in the stratum of Segre dimension >= k. For k = 0 this is
    /// membership in X itself.
    pub fn xk_membership_at(&self, q: &[GaussianRational], k: i64) -> Result<bool, GbError> {
        Ok(self.segre_dim_at(q)? >= k)
    }

    /// Ideal in the z variables cutting out the fully degenerate points:
    /// for each generator, every coefficient of its z-expansion must vanish
    /// at conj(q), which after conjugation is a polynomial condition on q.
    pub fn degenerate_locus(&self) -> Ideal {
        let n = self.n as u32;
        let z_block: BTreeSet<u32> = (0..n).collect();
        let map: Vec<Option<u32>> = (0..2 * n).map(|v| v.checked_sub(n)).collect();
        let mut gens: Vec<Polynomial> = Vec::new();
        for g in self.ideal.generators() {
            for (_, coeff) in g.collect_coefficients(&z_block) {
                let in_q = coeff
                    .conjugate_coeffs()
                    .restrict(self.z_registry.clone(), &map)
                    .expect("coefficients live in the zeta block");
                if !in_q.is_zero() {
                    gens.push(in_q);
                }
            }
        }
        Ideal::new(self.z_registry.clone(), gens)
    }

    /// Full report for one point.
    pub fn classify_point(&self, q: &[GaussianRational]) -> Result<SegreReport, GbError> {
        let on_variety = self.point_on_variety(q);
        let segre_dim = self.segre_dim_at(q)?;
        let n = self.n as i64;
        let k_membership: Vec<bool> = (0..=n).map(|k| segre_dim >= k).collect();
        let fully_degenerate = segre_dim == n;
        let slice = self.segre_ideal_at(q);
        let segre_basis = slice
            .groebner_basis(&MonomialOrder::GrevLex, &self.opts)?
            .polys()
            .to_vec();
        // Independent cross-check: q is fully degenerate exactly when every
        // locus generator vanishes at q (membership in the maximal ideal of
        // q, which is radical, is plain evaluation).
        let locus = self.degenerate_locus();
        let on_locus = locus
            .generators()
            .iter()
            .all(|g| g.eval_full(q).expect("z point").is_zero());
        let locus_agrees = on_locus == fully_degenerate;
        debug_assert!(locus_agrees, "degeneracy tests disagree at {q:?}");
        Ok(SegreReport {
            point: q.to_vec(),
            on_variety,
            segre_dim,
            k_membership,
            fully_degenerate,
            segre_basis,
            locus_agrees,
        })
    }
}

/// Rewrite a polynomial on the paired registry (z variables then their
/// conjugate partners, in either naming) over real coordinates:
/// z_j = x_j + i y_j and its partner = x_j - i y_j, interleaved as
/// x_1, y_1, x_2, y_2, ... The result splits into (A, B) with real
/// coefficients, the real and imaginary parts.
pub fn realify(p: &Polynomial, ambient_names: &[String]) -> (Polynomial, Polynomial) {
    let n = ambient_names.len();
    assert_eq!(p.registry().len(), 2 * n, "paired registry expected");
    let mut names: Vec<String> = Vec::with_capacity(2 * n);
    for s in ambient_names {
        names.push(format!("x_{s}"));
        names.push(format!("y_{s}"));
    }
    let target = Registry::new(names).expect("distinct");
    let i = GaussianRational::i();
    let images: Vec<Polynomial> = (0..2 * n)
        .map(|v| {
            let j = (v % n) as u32;
            let x = Polynomial::var(target.clone(), 2 * j);
            let y = Polynomial::var(target.clone(), 2 * j + 1).scale(&i);
            if v < n {
                x.add(&y)
            } else {
                x.sub(&y)
            }
        })
        .collect();
    let full = p.substitute(&images, target.clone());
    let mut re = Polynomial::zero(target.clone());
    let mut im = Polynomial::zero(target);
    for (m, c) in full.terms() {
        re.add_term(m.clone(), GaussianRational::from_real(c.re.clone()));
        im.add_term(m.clone(), GaussianRational::from_real(c.im.clone()));
    }
    (re, im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::load_variety;
    use crate::scalar::GaussianRational as G;

    fn cx(file: &str) -> Complexification {
        complexify(&load_variety(file).unwrap(), &GbOptions::default())
    }

    const MFLD: &str = "vars z w\neq w = z*conj(z)\n";
    const ISOL: &str = "vars z w xi\neq z*conj(z) + w*conj(w) - xi*conj(xi)\n";
    const NONVAR: &str = "vars z w xi\neq z*conj(z) = (xi + conj(xi))*w*conj(w)\n";
    const NONCOMPLEX: &str = "vars z w xi\neq z*conj(z) = w*conj(w)\neq Im(xi)\n";

    fn pt(coords: &[i64]) -> Point {
        coords.iter().map(|&c| G::from_int(c)).collect()
    }

    #[test]
    fn graph_complexification_matches_hand_ideal() {
        // w = z conj(z) complexifies to the ideal of (w - z zeta_z,
        // zeta_w - z zeta_z): mutual membership in both directions.
        let cx = cx(MFLD);
        let reg = cx.registry().clone();
        let z = Polynomial::var(reg.clone(), 0);
        let w = Polynomial::var(reg.clone(), 1);
        let zz = Polynomial::var(reg.clone(), 2);
        let zw = Polynomial::var(reg.clone(), 3);
        let a = w.sub(&z.mul(&zz));
        let b = zw.sub(&z.mul(&zz));
        let hand = Ideal::new(reg.clone(), vec![a.clone(), b.clone()]);
        let opts = GbOptions::default();
        for g in cx.ideal().generators() {
            assert!(hand.contains(g, &opts).unwrap());
        }
        for g in [&a, &b] {
            assert!(cx.ideal().contains(g, &opts).unwrap());
        }
        assert!(cx.sigma_check().unwrap());
    }

    #[test]
    fn graph_slices_and_semicontinuity_jump() {
        let cx = cx(MFLD);
        // At the origin the slice is the line w = 0.
        let report = cx.classify_point(&pt(&[0, 0])).unwrap();
        assert!(report.on_variety);
        assert_eq!(report.segre_dim, 1);
        let printed: Vec<String> = report.segre_basis.iter().map(|p| p.to_string()).collect();
        assert_eq!(printed, vec!["w"]);
        assert!(!report.fully_degenerate);
        assert!(report.locus_agrees);
        assert_eq!(report.k_membership, vec![true, true, false]);
        // At (1,1) the slice is the single point itself.
        let report = cx.classify_point(&pt(&[1, 1])).unwrap();
        assert!(report.on_variety);
        assert_eq!(report.segre_dim, 0);
        // Off the variety the point misses its own slice.
        assert_eq!(cx.segre_dim_at(&pt(&[1, 2])).unwrap(), -1);
        assert!(!cx.point_on_variety(&pt(&[1, 2])));
        // Approach the origin along the graph: dimension jumps in the limit.
        for m in [2i64, 3, 5, 9] {
            let q = vec![G::from_ratio(1, m), G::from_ratio(1, m * m)];
            assert!(cx.point_on_variety(&q));
            assert_eq!(cx.segre_dim_at(&q).unwrap(), 0);
        }
    }

    #[test]
    fn isolated_degeneracy_at_origin() {
        let cx = cx(ISOL);
        assert_eq!(cx.segre_dim_at(&pt(&[0, 0, 0])).unwrap(), 3);
        assert_eq!(cx.segre_dim_at(&pt(&[1, 0, 1])).unwrap(), 2);
        let locus = cx.degenerate_locus();
        let basis = locus
            .groebner_basis(&MonomialOrder::GrevLex, &GbOptions::default())
            .unwrap();
        let printed: Vec<String> = basis.polys().iter().map(|p| p.to_string()).collect();
        assert_eq!(printed, vec!["z", "w", "xi"]);
        let report = cx.classify_point(&pt(&[0, 0, 0])).unwrap();
        assert!(report.fully_degenerate && report.locus_agrees);
        assert_eq!(report.k_membership, vec![true, true, true, true]);
    }

    #[test]
    fn degenerate_line_with_nonvariety_stratum() {
        let cx = cx(NONVAR);
        // Locus reduces to z = w = 0.
        let locus = cx.degenerate_locus();
        let basis = locus
            .groebner_basis(&MonomialOrder::GrevLex, &GbOptions::default())
            .unwrap();
        let printed: Vec<String> = basis.polys().iter().map(|p| p.to_string()).collect();
        assert_eq!(printed, vec!["z", "w"]);
        // Every point of the xi-axis is fully degenerate, either sign.
        for t in [-2i64, -1, 1, 2] {
            let q = pt(&[0, 0, t]);
            assert!(cx.point_on_variety(&q));
            assert_eq!(cx.segre_dim_at(&q).unwrap(), 3);
            assert!(cx.xk_membership_at(&q, 3).unwrap());
        }
        // A generic variety point is a hypersurface slice.
        // |z|^2 = 2 |w|^2 at xi = 1: take z = 2, w = sqrt(2)... instead use
        // the rational family: xi = 1, w = 1, |z|^2 = 2 has no rational
        // solution, so probe with z = 1, w = 1, xi = 1/2: 1 = (1/2+1/2)*1.
        let q = vec![G::from_int(1), G::from_int(1), G::from_ratio(1, 2)];
        assert!(cx.point_on_variety(&q));
        assert_eq!(cx.segre_dim_at(&q).unwrap(), 2);
    }

    #[test]
    fn noncomplex_variety_has_empty_locus() {
        let cx = cx(NONCOMPLEX);
        // The Im(xi) generator contributes a constant coefficient, so the
        // locus ideal is the unit ideal: no fully degenerate points.
        let locus = cx.degenerate_locus();
        assert!(locus.is_unit_ideal(&GbOptions::default()).unwrap());
        // (0,0,t) for real t: on the variety, slice is the plane z = w...
        // actually the slice of |z|^2 = |w|^2 at conj q = (0,0,t) is all of
        // C^3 from the first generator, cut to xi = t by the second.
        let q = pt(&[0, 0, 2]);
        assert!(cx.point_on_variety(&q));
        assert_eq!(cx.segre_dim_at(&q).unwrap(), 2);
        assert!(cx.xk_membership_at(&q, 2).unwrap());
        // (1,1,0): slice dim drops to 1.
        let q = pt(&[1, 1, 0]);
        assert!(cx.point_on_variety(&q));
        assert_eq!(cx.segre_dim_at(&q).unwrap(), 1);
        assert!(!cx.xk_membership_at(&q, 2).unwrap());
    }

    #[test]
    fn realification_splits_into_real_pair() {
        let v = load_variety(ISOL).unwrap();
        let g = &v.generators[0];
        let (a, b) = realify(&g.poly, v.vars.names());
        assert_eq!(
            a.to_string(),
            "x_z^2 + y_z^2 + x_w^2 + y_w^2 - x_xi^2 - y_xi^2"
        );
        assert!(b.is_zero());
        // A non-real-valued polynomial splits into both parts.
        let v = load_variety(NONCOMPLEX).unwrap();
        let im_gen = &v.generators[1];
        // im_gen is xi - conj(xi), whose realification is 2i y_xi: the
        // stored monic form is not unit-scaled, so A = 0 and B = 2 y_xi.
        let (a, b) = realify(&im_gen.poly, v.vars.names());
        assert!(a.is_zero());
        assert_eq!(b.to_string(), "2*y_xi");
    }

    #[test]
    fn sigma_invariance_of_combinations() {
        let cx = cx(NONVAR);
        let reg = cx.registry().clone();
        let opts = GbOptions::default();
        // sigma is an involution and fixes the ideal, so it maps arbitrary
        // combinations of generators back into the ideal.
        let z = Polynomial::var(reg.clone(), 0);
        let zxi = Polynomial::var(reg.clone(), 5);
        let combo = cx.ideal().generators()[0]
            .mul(&z.add(&zxi.scale(&G::i())))
            .add(&cx.ideal().generators()[0]);
        assert!(cx.ideal().contains(&combo, &opts).unwrap());
        assert!(cx.ideal().contains(&cx.sigma_swap(&combo), &opts).unwrap());
        assert_eq!(cx.sigma_swap(&cx.sigma_swap(&combo)), combo);
    }
}
