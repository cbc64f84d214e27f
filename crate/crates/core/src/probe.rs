//! Seeded numerical probes backing up the exact layer.
//!
//! The probe asks a containment question about the germ of the variety near
//! a center point: is every nearby variety point inside the candidate set?
//! It minimizes the squared residual of the realified generators from many
//! seeded restarts, confined to a ball around the center and kept out of a
//! thin tube around the candidate set. A minimum that reaches (numerical)
//! zero off the candidates refutes containment; clear positive residuals
//! from every restart are consistent with it. Exact preconditions stay in
//! the exact layer: the probe never overrides a symbolic answer.

use crate::gb::GbError;
use crate::parse::Curve;
use crate::poly::Polynomial;
use crate::scalar::GaussianRational;
use crate::segre::{realify, Complexification, Point};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeConfig {
    /// Search ball radius around the center, in realified coordinates.
    pub radius: f64,
    /// Number of seeded restarts.
    pub samples: u32,
    /// Residuals below this refute containment.
    pub zero_tol: f64,
    /// Residuals above this from every restart support containment.
    pub clearance_tol: f64,
    /// Base seed; restart s draws from stream s of this seed.
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            radius: 0.25,
            samples: 64,
            zero_tol: 1e-9,
            clearance_tol: 1e-4,
            seed: 0x5EC2E,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// Every restart stayed clear of zero: no nearby variety point found
    /// off the candidate set.
    Consistent,
    /// A variety point (to numerical tolerance) was found off the
    /// candidate set.
    Refuted,
    /// Residuals fell into the gray zone between the tolerances.
    Inconclusive,
}

impl std::fmt::Display for ProbeVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ProbeVerdict::Consistent => "consistent",
            ProbeVerdict::Refuted => "refuted",
            ProbeVerdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub verdict: ProbeVerdict,
    /// Smallest final residual seen over all restarts.
    pub min_residual: f64,
    /// Refuting point in complex coordinates, if any.
    pub witness: Option<Vec<(f64, f64)>>,
    /// Witness rounded to rationals and re-verified exactly, when that
    /// succeeds: on the variety and exactly off the candidate set.
    pub exact_witness: Option<Point>,
    pub restarts: u32,
}

/// Evaluate at a complex point, in f64 arithmetic.
fn eval_c(p: &Polynomial, x: &[(f64, f64)]) -> (f64, f64) {
    let mut acc = (0.0, 0.0);
    for (m, c) in p.terms() {
        let (mut re, mut im) = c.to_f64_pair();
        for &(v, e) in m.pairs() {
            let (br, bi) = x[v as usize];
            for _ in 0..e {
                let nr = re * br - im * bi;
                im = re * bi + im * br;
                re = nr;
            }
        }
        acc.0 += re;
        acc.1 += im;
    }
    acc
}

/// Evaluate a real-coefficient polynomial at a real point.
fn eval_r(p: &Polynomial, x: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (m, c) in p.terms() {
        let mut v = c.to_f64_pair().0;
        for &(var, e) in m.pairs() {
            v *= x[var as usize].powi(e as i32);
        }
        acc += v;
    }
    acc
}

/// The realified generator system together with its Jacobian.
struct Objective {
    polys: Vec<Polynomial>,
    partials: Vec<Vec<Polynomial>>,
    dim: usize,
}

impl Objective {
    fn new(cx: &Complexification) -> Objective {
        let names = cx.z_registry().names().to_vec();
        let dim = 2 * cx.n();
        let mut polys = Vec::new();
        for g in cx.ideal().generators() {
            let (a, b) = realify(g, &names);
            for part in [a, b] {
                if !part.is_zero() {
                    polys.push(part);
                }
            }
        }
        let partials = polys
            .iter()
            .map(|p| (0..dim as u32).map(|v| p.partial_derivative(v)).collect())
            .collect();
        Objective {
            polys,
            partials,
            dim,
        }
    }

    fn residuals(&self, x: &[f64]) -> Vec<f64> {
        self.polys.iter().map(|p| eval_r(p, x)).collect()
    }

    fn jacobian(&self, x: &[f64]) -> Vec<Vec<f64>> {
        self.partials
            .iter()
            .map(|row| row.iter().map(|p| eval_r(p, x)).collect())
            .collect()
    }
}

/// First-order distance estimate to the candidate vanishing set.
struct Tube {
    candidates: Vec<Polynomial>,
    grads: Vec<Vec<Polynomial>>,
    n: usize,
}

impl Tube {
    fn new(candidates: &[Polynomial], n: usize) -> Tube {
        Tube {
            candidates: candidates.to_vec(),
            grads: candidates
                .iter()
                .map(|c| (0..n as u32).map(|v| c.partial_derivative(v)).collect())
                .collect(),
            n,
        }
    }

    /// x is in realified layout (x_1, y_1, x_2, y_2, ...).
    fn distance(&self, x: &[f64]) -> f64 {
        if self.candidates.is_empty() {
            return f64::INFINITY;
        }
        let z: Vec<(f64, f64)> = (0..self.n).map(|j| (x[2 * j], x[2 * j + 1])).collect();
        let mut val = 0.0;
        let mut grad = 0.0;
        for (c, row) in self.candidates.iter().zip(&self.grads) {
            let (re, im) = eval_c(c, &z);
            val += re * re + im * im;
            for d in row {
                let (re, im) = eval_c(d, &z);
                grad += re * re + im * im;
            }
        }
        val.sqrt() / grad.sqrt().max(1.0)
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

/// Solve (A + lambda I) d = b for symmetric positive semidefinite A by
/// Gaussian elimination with partial pivoting.
fn solve_damped(mut a: Vec<Vec<f64>>, mut b: Vec<f64>, lambda: f64) -> Option<Vec<f64>> {
    let d = b.len();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] += lambda;
    }
    for col in 0..d {
        let pivot = (col..d).max_by(|&i, &j| {
            a[i][col]
                .abs()
                .partial_cmp(&a[j][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..d {
            let f = a[row][col] / a[col][col];
            let (top, bottom) = a.split_at_mut(row);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst -= f * src;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; d];
    for col in (0..d).rev() {
        let mut s = b[col];
        for k in col + 1..d {
            s -= a[col][k] * x[k];
        }
        x[col] = s / a[col][col];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// One constrained Levenberg-Marquardt descent from x0. Returns the final
/// point and residual norm.
fn descend(
    obj: &Objective,
    tube: &Tube,
    center: &[f64],
    x0: Vec<f64>,
    config: &ProbeConfig,
) -> (Vec<f64>, f64) {
    let tube_radius = config.radius / 10.0;
    let inside = |x: &[f64]| {
        let offset: Vec<f64> = x.iter().zip(center).map(|(a, c)| a - c).collect();
        norm(&offset) <= config.radius && tube.distance(x) >= tube_radius
    };
    let mut x = x0;
    let mut r = obj.residuals(&x);
    let mut f = r.iter().map(|v| v * v).sum::<f64>();
    let mut lambda = 1e-3;
    for _ in 0..80 {
        if f.sqrt() < config.zero_tol * 0.1 {
            break;
        }
        let jac = obj.jacobian(&x);
        let d = obj.dim;
        // Normal equations: (J^T J + lambda I) step = -J^T r.
        let mut jtj = vec![vec![0.0; d]; d];
        let mut jtr = vec![0.0; d];
        for (row, ri) in jac.iter().zip(&r) {
            for a in 0..d {
                jtr[a] -= row[a] * ri;
                for b in 0..d {
                    jtj[a][b] += row[a] * row[b];
                }
            }
        }
        let mut moved = false;
        for _ in 0..25 {
            let Some(step) = solve_damped(jtj.clone(), jtr.clone(), lambda) else {
                lambda *= 10.0;
                continue;
            };
            let xn: Vec<f64> = x.iter().zip(&step).map(|(a, s)| a + s).collect();
            let rn = obj.residuals(&xn);
            let fn_ = rn.iter().map(|v| v * v).sum::<f64>();
            if fn_.is_finite() && fn_ < f && inside(&xn) {
                x = xn;
                r = rn;
                f = fn_;
                lambda = (lambda / 3.0).max(1e-12);
                moved = true;
                break;
            }
            lambda *= 10.0;
            if lambda > 1e14 {
                break;
            }
        }
        if !moved {
            break;
        }
    }
    let rn = f.sqrt();
    (x, rn)
}

/// Round to a nearby rational with bounded denominator (continued
/// fractions). None when the value is not finite.
pub fn rationalize(v: f64, max_den: u64) -> Option<BigRational> {
    if !v.is_finite() {
        return None;
    }
    if v.abs() < 1e-15 {
        return Some(BigRational::zero());
    }
    let (mut p0, mut q0) = (BigInt::from(1), BigInt::from(0));
    let (mut p1, mut q1) = (BigInt::from(v.floor() as i64), BigInt::from(1));
    let mut frac = v - v.floor();
    let bound = BigInt::from(max_den);
    for _ in 0..64 {
        if frac.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        if !a.is_finite() {
            break;
        }
        let ai = BigInt::from_f64(a)?;
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > bound {
            break;
        }
        (p0, q0) = (p1.clone(), q1.clone());
        (p1, q1) = (p2, q2);
        frac = inv - a;
    }
    let approx = BigRational::new(p1, q1);
    // Accept only faithful roundings.
    let back = approx.to_f64()?;
    ((back - v).abs() <= 1e-9 * v.abs().max(1.0)).then_some(approx)
}

/// Ask whether the variety germ near `center` is contained in the vanishing
/// set of `candidates` (polynomials over the z variables). See module docs.
pub fn germ_consistency_probe(
    cx: &Complexification,
    center: &[GaussianRational],
    candidates: &[Polynomial],
    config: &ProbeConfig,
) -> ProbeReport {
    assert_eq!(center.len(), cx.n(), "center has wrong length");
    let obj = Objective::new(cx);
    let tube = Tube::new(candidates, cx.n());
    let c: Vec<f64> = center
        .iter()
        .flat_map(|g| {
            let (re, im) = g.to_f64_pair();
            [re, im]
        })
        .collect();
    let tube_radius = config.radius / 10.0;
    let mut min_residual = f64::INFINITY;
    let mut witness: Option<Vec<f64>> = None;
    for s in 0..config.samples {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(s as u64);
        // Start inside the ball but outside the tube.
        let mut start = None;
        for _ in 0..1000 {
            let v: Vec<f64> = (0..obj.dim)
                .map(|_| rng.gen_range(-config.radius..=config.radius))
                .collect();
            if norm(&v) > config.radius {
                continue;
            }
            let x: Vec<f64> = c.iter().zip(&v).map(|(a, b)| a + b).collect();
            if tube.distance(&x) >= tube_radius {
                start = Some(x);
                break;
            }
        }
        let Some(x0) = start else { continue };
        let (x, residual) = descend(&obj, &tube, &c, x0, config);
        if residual < min_residual {
            min_residual = residual;
        }
        if residual < config.zero_tol && witness.is_none() {
            witness = Some(x);
        }
    }

    let witness_c = witness.as_ref().map(|x| {
        (0..cx.n())
            .map(|j| (x[2 * j], x[2 * j + 1]))
            .collect::<Vec<(f64, f64)>>()
    });
    // Try to promote the witness to an exact refutation.
    let exact_witness = witness.as_ref().and_then(|x| {
        let q: Option<Point> = (0..cx.n())
            .map(|j| {
                let re = rationalize(x[2 * j], 1_000_000_000_000)?;
                let im = rationalize(x[2 * j + 1], 1_000_000_000_000)?;
                Some(GaussianRational::new(re, im))
            })
            .collect();
        let q = q?;
        let on = cx.point_on_variety(&q);
        let off_candidates = candidates
            .iter()
            .any(|c| !c.eval_full(&q).expect("z point").is_zero());
        (on && off_candidates).then_some(q)
    });

    let verdict = if witness.is_some() {
        ProbeVerdict::Refuted
    } else if min_residual >= config.clearance_tol {
        ProbeVerdict::Consistent
    } else {
        ProbeVerdict::Inconclusive
    };
    ProbeReport {
        verdict,
        min_residual,
        witness: witness_c,
        exact_witness,
        restarts: config.samples,
    }
}

/// Slice dimensions along a sequence of points; used to exhibit
/// semicontinuity jumps along paths into a degenerate point.
pub fn semicontinuity_scan(cx: &Complexification, points: &[Point]) -> Result<Vec<i64>, GbError> {
    points.iter().map(|q| cx.segre_dim_at(q)).collect()
}

/// One row of a region scan along a curve.
#[derive(Debug, Clone)]
pub struct RegionRow {
    pub t: BigRational,
    pub point: Point,
    /// Exact membership in the dimension >= k stratum.
    pub member: bool,
    pub probe: ProbeReport,
}

/// Walk a rational curve: at each grid value, decide stratum membership
/// exactly and probe germ containment in the candidate set numerically.
pub fn region_scan(
    cx: &Complexification,
    curve: &Curve,
    grid: &[BigRational],
    k: i64,
    candidates: &[Polynomial],
    config: &ProbeConfig,
) -> Result<Vec<RegionRow>, GbError> {
    grid.iter()
        .map(|t| {
            let point = curve.at(t);
            let member = cx.xk_membership_at(&point, k)?;
            let probe = germ_consistency_probe(cx, &point, candidates, config);
            Ok(RegionRow {
                t: t.clone(),
                point,
                member,
                probe,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gb::GbOptions;
    use crate::parse::{load_variety, parse_point, parse_rational_list};
    use crate::poly::Polynomial;
    use crate::segre::complexify;

    const NONVAR: &str = "vars z w xi\neq z*conj(z) = (xi + conj(xi))*w*conj(w)\n";
    const MFLD: &str = "vars z w\neq w = z*conj(z)\n";

    fn quick() -> ProbeConfig {
        ProbeConfig {
            samples: 16,
            ..ProbeConfig::default()
        }
    }

    #[test]
    fn rationalize_simple_values() {
        assert_eq!(rationalize(0.5, 1 << 20).unwrap().to_string(), "1/2");
        assert_eq!(rationalize(1.0 / 3.0, 1 << 20).unwrap().to_string(), "1/3");
        assert_eq!(rationalize(-2.0, 1 << 20).unwrap().to_string(), "-2");
        assert_eq!(rationalize(1e-16, 1 << 20).unwrap().to_string(), "0");
        assert!(rationalize(f64::NAN, 1 << 20).is_none());
    }

    #[test]
    fn sign_of_the_degenerate_line_is_detected() {
        let cx = complexify(&load_variety(NONVAR).unwrap(), &GbOptions::default());
        let zreg = cx.z_registry().clone();
        let cands = vec![
            Polynomial::var(zreg.clone(), 0),
            Polynomial::var(zreg.clone(), 1),
        ];
        // Negative side: the variety near (0,0,-1) collapses onto z = w = 0.
        let q = parse_point("0,0,-1", 3).unwrap();
        let report = germ_consistency_probe(&cx, &q, &cands, &quick());
        assert_eq!(report.verdict, ProbeVerdict::Consistent);
        assert!(report.min_residual >= 1e-4);
        // Positive side: a real hypersurface sheet passes through the line.
        let q = parse_point("0,0,1", 3).unwrap();
        let report = germ_consistency_probe(&cx, &q, &cands, &quick());
        assert_eq!(report.verdict, ProbeVerdict::Refuted);
        assert!(report.min_residual < 1e-9);
        assert!(report.witness.is_some());
    }

    #[test]
    fn graph_is_not_contained_in_its_tangent_plane() {
        let cx = complexify(&load_variety(MFLD).unwrap(), &GbOptions::default());
        let w = Polynomial::var(cx.z_registry().clone(), 1);
        let q = parse_point("0,0", 2).unwrap();
        let report = germ_consistency_probe(&cx, &q, &[w], &quick());
        assert_eq!(report.verdict, ProbeVerdict::Refuted);
    }

    #[test]
    fn probe_is_deterministic() {
        let cx = complexify(&load_variety(NONVAR).unwrap(), &GbOptions::default());
        let zreg = cx.z_registry().clone();
        let cands = vec![
            Polynomial::var(zreg.clone(), 0),
            Polynomial::var(zreg.clone(), 1),
        ];
        let q = parse_point("0,0,-1", 3).unwrap();
        let a = germ_consistency_probe(&cx, &q, &cands, &quick());
        let b = germ_consistency_probe(&cx, &q, &cands, &quick());
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.min_residual.to_bits(), b.min_residual.to_bits());
    }

    #[test]
    fn region_scan_flips_at_zero() {
        let cx = complexify(&load_variety(NONVAR).unwrap(), &GbOptions::default());
        let zreg = cx.z_registry().clone();
        let cands = vec![
            Polynomial::var(zreg.clone(), 0),
            Polynomial::var(zreg.clone(), 1),
        ];
        let curve = Curve::parse("0, 0, t", 3).unwrap();
        let grid = parse_rational_list("-1,-1/2,1/2,1").unwrap();
        let rows = region_scan(&cx, &curve, &grid, 3, &cands, &quick()).unwrap();
        let members: Vec<bool> = rows.iter().map(|r| r.member).collect();
        assert_eq!(members, vec![true, true, true, true]);
        let verdicts: Vec<ProbeVerdict> = rows.iter().map(|r| r.probe.verdict).collect();
        assert_eq!(
            verdicts,
            vec![
                ProbeVerdict::Consistent,
                ProbeVerdict::Consistent,
                ProbeVerdict::Refuted,
                ProbeVerdict::Refuted,
            ]
        );
    }

    #[test]
    fn semicontinuity_of_graph_slices() {
        let cx = complexify(&load_variety(MFLD).unwrap(), &GbOptions::default());
        let pts: Vec<Point> = [2i64, 3, 5]
            .iter()
            .map(|&m| {
                vec![
                    GaussianRational::from_ratio(1, m),
                    GaussianRational::from_ratio(1, m * m),
                ]
            })
            .chain([vec![GaussianRational::zero(), GaussianRational::zero()]])
            .collect();
        let dims = semicontinuity_scan(&cx, &pts).unwrap();
        assert_eq!(dims, vec![0, 0, 0, 1]);
    }
}
