//! Bundled gallery of worked varieties with frozen expectations.
//!
//! Each entry packages a variety (usually from a `.var` file embedded at
//! compile time), hand-checked sample points, and a list of named checks
//! whose expected values were derived independently and frozen here. The
//! checks double as executable documentation: running them re-verifies
//! every headline computation the gallery demonstrates.

use crate::cert::{
    ansatz_factor_homogeneous, cone_certificate, CertOptions, ConeCertificate, FactorSearch,
};
use crate::gb::{GbOptions, Ideal};
use crate::order::MonomialOrder;
use crate::parse::{load_variety, parse_real_expression, Curve, VarietyData};
use crate::poly::Polynomial;
use crate::probe::{region_scan, semicontinuity_scan, ProbeConfig, ProbeVerdict};
use crate::scalar::GaussianRational;
use crate::segre::{complexify, realify, Complexification, Point};
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt::Debug;
use std::sync::Arc;

/// One frozen expectation, runnable on demand.
pub struct Check {
    pub label: &'static str,
    run: Box<dyn Fn() -> Result<String, String> + Send + Sync>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub entry: &'static str,
    pub label: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub struct CorpusEntry {
    pub name: &'static str,
    pub summary: &'static str,
    /// Parsed variety; absent for certificate-only entries.
    pub variety: Option<VarietyData>,
    /// Real dimension of the variety, when one is bundled.
    pub real_dim: Option<i64>,
    /// Exact points on the variety, for demos and probes.
    pub samples: Vec<Point>,
    checks: Vec<Check>,
}

impl CorpusEntry {
    pub fn check_labels(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.label).collect()
    }

    pub fn run_checks(&self) -> Vec<CheckOutcome> {
        self.checks
            .iter()
            .map(|c| match (c.run)() {
                Ok(detail) => CheckOutcome {
                    entry: self.name,
                    label: c.label,
                    passed: true,
                    detail,
                },
                Err(detail) => CheckOutcome {
                    entry: self.name,
                    label: c.label,
                    passed: false,
                    detail,
                },
            })
            .collect()
    }
}

fn check<F>(label: &'static str, f: F) -> Check
where
    F: Fn() -> Result<String, String> + Send + Sync + 'static,
{
    Check {
        label,
        run: Box::new(f),
    }
}

fn expect<T: PartialEq + Debug>(what: &str, got: T, want: T) -> Result<String, String> {
    if got == want {
        Ok(format!("{what} = {got:?}"))
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn join(parts: Vec<String>) -> String {
    parts.join("; ")
}

fn gi(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(
        BigRational::from_integer(re.into()),
        BigRational::from_integer(im.into()),
    )
}

fn gr(n: i64, d: i64) -> GaussianRational {
    GaussianRational::from_ratio(n, d)
}

fn basis_strings(ideal: &Ideal) -> Result<Vec<String>, String> {
    let gb = ideal
        .groebner_basis(&MonomialOrder::GrevLex, &GbOptions::default())
        .map_err(|e| e.to_string())?;
    Ok(gb.polys().iter().map(|p| p.to_string()).collect())
}

fn classify_summary(
    cx: &Complexification,
    q: &[GaussianRational],
    want_on: bool,
    want_dim: i64,
) -> Result<String, String> {
    let report = cx.classify_point(q).map_err(|e| e.to_string())?;
    let parts = vec![
        expect("on_variety", report.on_variety, want_on)?,
        expect("segre_dim", report.segre_dim, want_dim)?,
    ];
    if !report.locus_agrees {
        return Err(format!(
            "slice dimension and locus membership disagree at {:?}",
            report.point
        ));
    }
    Ok(join(parts))
}

fn samples_check(cx: Arc<Complexification>, samples: Vec<Point>) -> Check {
    check("sample points satisfy the equations", move || {
        for (i, q) in samples.iter().enumerate() {
            if !cx.point_on_variety(q) {
                return Err(format!("sample {i} is not on the variety"));
            }
        }
        Ok(format!("{} samples verified exactly", samples.len()))
    })
}

fn load(name: &str, text: &'static str) -> (VarietyData, Arc<Complexification>) {
    let v = load_variety(text).unwrap_or_else(|e| panic!("corpus file {name}: {e}"));
    let cx = Arc::new(complexify(&v, &GbOptions::default()));
    (v, cx)
}

// ---------------------------------------------------------------------------
// Entries
// ---------------------------------------------------------------------------

fn entry_sphere_cone() -> CorpusEntry {
    let (v, cx) = load("sphere-cone", include_str!("../corpus/sphere-cone.var"));
    let samples: Vec<Point> = vec![
        vec![gi(3, 0), gi(4, 0), gi(5, 0)],
        vec![gr(3, 2), gi(2, 0), gr(5, 2)],
        vec![gi(0, 3), gi(4, 0), gi(5, 0)],
    ];
    let mut checks = Vec::new();
    {
        let cx = cx.clone();
        checks.push(check("description is involution-invariant", move || {
            expect(
                "sigma_check",
                cx.sigma_check().map_err(|e| e.to_string())?,
                true,
            )
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check("degeneracy locus is exactly the origin", move || {
            let locus = cx.degenerate_locus();
            let mut parts = vec![expect(
                "locus basis",
                basis_strings(&locus)?,
                ["z", "w", "xi"].map(String::from).to_vec(),
            )?];
            let dim = locus
                .krull_dimension(&GbOptions::default())
                .map_err(|e| e.to_string())?;
            parts.push(expect("locus dim", dim, 0)?);
            // Hypersurface bound: complex locus dimension <= d - n - 1.
            if dim > 5 - 3 - 1 {
                return Err(format!("locus dim {dim} exceeds the hypersurface bound 1"));
            }
            Ok(join(parts))
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check("origin is the unique degenerate point", move || {
            let q = vec![gi(0, 0), gi(0, 0), gi(0, 0)];
            let report = cx.classify_point(&q).map_err(|e| e.to_string())?;
            let parts = vec![
                expect("segre_dim", report.segre_dim, 3)?,
                expect("fully_degenerate", report.fully_degenerate, true)?,
                expect(
                    "k_membership",
                    report.k_membership,
                    vec![true, true, true, true],
                )?,
                expect("locus_agrees", report.locus_agrees, true)?,
            ];
            Ok(join(parts))
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check("generic point has a plane slice", move || {
            let q = vec![gi(1, 0), gi(0, 0), gi(1, 0)];
            let report = cx.classify_point(&q).map_err(|e| e.to_string())?;
            let parts = vec![
                expect("on_variety", report.on_variety, true)?,
                expect("segre_dim", report.segre_dim, 2)?,
                expect("in dim>=2 stratum", report.k_membership[2], true)?,
                expect("fully_degenerate", report.fully_degenerate, false)?,
            ];
            Ok(join(parts))
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check("off-variety point has empty slice", move || {
            classify_summary(&cx, &[gi(1, 0), gi(0, 0), gi(0, 0)], false, -1)
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check(
            "slice dimension jumps only in the limit",
            move || {
                let pts: Vec<Point> = [2i64, 3, 4, 6]
                    .iter()
                    .map(|&m| vec![gr(1, m), gi(0, 0), gr(1, m)])
                    .collect();
                let dims = semicontinuity_scan(&cx, &pts).map_err(|e| e.to_string())?;
                let mut parts = vec![expect("path dims", dims, vec![2, 2, 2, 2])?];
                let origin = cx
                    .segre_dim_at(&[gi(0, 0), gi(0, 0), gi(0, 0)])
                    .map_err(|e| e.to_string())?;
                parts.push(expect("limit dim", origin, 3)?);
                Ok(join(parts))
            },
        ));
    }
    {
        let v = v.clone();
        checks.push(check(
            "realified generator is an irreducible quadric",
            move || {
                let cxg = complexify(&v, &GbOptions::default());
                let gen = cxg.ideal().generators()[0].clone();
                let (a, b) = realify(&gen, v.vars.names());
                let parts = vec![
                    expect(
                        "real part",
                        a.to_string(),
                        "x_z^2 + y_z^2 + x_w^2 + y_w^2 - x_xi^2 - y_xi^2".to_string(),
                    )?,
                    expect("imaginary part", b.to_string(), "0".to_string())?,
                    expect(
                        "cone certificate",
                        cone_certificate(&a, &CertOptions::default()),
                        ConeCertificate::CertifiedIrreducible,
                    )?,
                ];
                Ok(join(parts))
            },
        ));
    }
    checks.push(samples_check(cx, samples.clone()));
    CorpusEntry {
        name: "sphere-cone",
        summary: "Cone over the 3-sphere in C^3: coherent hypersurface whose only \
                  Segre-degenerate point is the origin, a locus of dimension n - 3.",
        variety: Some(v),
        real_dim: Some(5),
        samples,
        checks,
    }
}

fn entry_cone_real_line() -> CorpusEntry {
    let (v, cx) = load(
        "cone-real-line",
        include_str!("../corpus/cone-real-line.var"),
    );
    let samples: Vec<Point> = vec![
        vec![gi(1, 0), gi(1, 0), gi(5, 0)],
        vec![gi(1, 0), gi(-1, 0), gi(-2, 0)],
        vec![gi(0, 2), gi(2, 0), gi(0, 0)],
        vec![gi(0, 0), gi(0, 0), gi(7, 0)],
    ];
    let mut checks = Vec::new();
    {
        let cx = cx.clone();
        checks.push(check("description is involution-invariant", move || {
            expect(
                "sigma_check",
                cx.sigma_check().map_err(|e| e.to_string())?,
                true,
            )
        }));
    }
    {
        let v = v.clone();
        checks.push(check(
            "two real generators with recorded units",
            move || expect("generator count", v.generators.len(), 2),
        ));
    }
    {
        let cx = cx.clone();
        checks.push(check("degeneracy locus is empty", move || {
            let locus = cx.degenerate_locus();
            let mut parts = vec![expect(
                "locus basis",
                basis_strings(&locus)?,
                vec!["1".to_string()],
            )?];
            let dim = locus
                .krull_dimension(&GbOptions::default())
                .map_err(|e| e.to_string())?;
            parts.push(expect("locus dim", dim, -1)?);
            Ok(join(parts))
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check("axis point lies in the dim>=2 stratum", move || {
            let q = vec![gi(0, 0), gi(0, 0), gi(2, 0)];
            let report = cx.classify_point(&q).map_err(|e| e.to_string())?;
            let parts = vec![
                expect("on_variety", report.on_variety, true)?,
                expect("segre_dim", report.segre_dim, 2)?,
                expect(
                    "k_membership",
                    report.k_membership,
                    vec![true, true, true, false],
                )?,
            ];
            Ok(join(parts))
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check(
            "generic cone point is not in the dim>=2 stratum",
            move || {
                let q = vec![gi(1, 0), gi(1, 0), gi(0, 0)];
                let report = cx.classify_point(&q).map_err(|e| e.to_string())?;
                let parts = vec![
                    expect("on_variety", report.on_variety, true)?,
                    expect("segre_dim", report.segre_dim, 1)?,
                    expect("in dim>=2 stratum", report.k_membership[2], false)?,
                ];
                Ok(join(parts))
            },
        ));
    }
    {
        let cx = cx.clone();
        checks.push(check(
            "points off the real slice are off the variety",
            move || classify_summary(&cx, &[gi(0, 0), gi(0, 0), gi(0, 1)], false, -1),
        ));
    }
    checks.push(samples_check(cx, samples.clone()));
    CorpusEntry {
        name: "cone-real-line",
        summary: "Cone |z| = |w| times the real xi line: a coherent 4-dimensional \
                  variety, nowhere complex, whose dim>=2 stratum is a non-complex \
                  set and whose degeneracy locus is empty.",
        variety: Some(v),
        real_dim: Some(4),
        samples,
        checks,
    }
}

fn entry_paraboloid() -> CorpusEntry {
    let (v, cx) = load("paraboloid", include_str!("../corpus/paraboloid.var"));
    let samples: Vec<Point> = vec![
        vec![gi(2, 0), gi(4, 0)],
        vec![gr(1, 2), gr(1, 4)],
        vec![gi(1, 1), gi(2, 0)],
        vec![gi(0, 3), gi(9, 0)],
    ];
    let mut checks = Vec::new();
    {
        let cx = cx.clone();
        checks.push(check("description is involution-invariant", move || {
            expect(
                "sigma_check",
                cx.sigma_check().map_err(|e| e.to_string())?,
                true,
            )
        }));
    }
    {
        let v = v.clone();
        checks.push(check(
            "complex equation splits into two real generators",
            move || {
                let parts = vec![
                    expect("generator count", v.generators.len(), 2)?,
                    expect(
                        "first generator",
                        v.generators[0].poly.to_string(),
                        "z*conj(z) - 1/2*w - 1/2*conj(w)".to_string(),
                    )?,
                    expect("first unit", v.generators[0].unit.clone(), gi(-1, 0))?,
                    expect(
                        "second generator",
                        v.generators[1].poly.to_string(),
                        "w - conj(w)".to_string(),
                    )?,
                    expect(
                        "second unit",
                        v.generators[1].unit.clone(),
                        GaussianRational::new(
                            BigRational::zero(),
                            BigRational::new((-1).into(), 2.into()),
                        ),
                    )?,
                ];
                Ok(join(parts))
            },
        ));
    }
    {
        let cx = cx.clone();
        checks.push(check(
            "degeneracy locus is empty and the bound is tight",
            move || {
                let locus = cx.degenerate_locus();
                let mut parts = vec![expect(
                    "locus basis",
                    basis_strings(&locus)?,
                    vec!["1".to_string()],
                )?];
                let dim = locus
                    .krull_dimension(&GbOptions::default())
                    .map_err(|e| e.to_string())?;
                // d - n - 1 = 2 - 2 - 1 = -1: the empty locus meets it exactly.
                parts.push(expect("locus dim", dim, -1)?);
                Ok(join(parts))
            },
        ));
    }
    {
        let cx = cx.clone();
        checks.push(check("origin slice is the complex line w = 0", move || {
            let q = vec![gi(0, 0), gi(0, 0)];
            let report = cx.classify_point(&q).map_err(|e| e.to_string())?;
            let parts = vec![
                expect("segre_dim", report.segre_dim, 1)?,
                expect(
                    "slice basis",
                    report
                        .segre_basis
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>(),
                    vec!["w".to_string()],
                )?,
                expect("k_membership", report.k_membership, vec![true, true, false])?,
                expect("fully_degenerate", report.fully_degenerate, false)?,
            ];
            Ok(join(parts))
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check("off-origin slices are points", move || {
            classify_summary(&cx, &[gi(1, 0), gi(1, 0)], true, 0)
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check("off-variety point has empty slice", move || {
            classify_summary(&cx, &[gi(1, 0), gi(2, 0)], false, -1)
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check(
            "slice dimension jumps only in the limit",
            move || {
                let pts: Vec<Point> = [2i64, 3, 5, 9]
                    .iter()
                    .map(|&m| vec![gr(1, m), gr(1, m * m)])
                    .collect();
                let dims = semicontinuity_scan(&cx, &pts).map_err(|e| e.to_string())?;
                let mut parts = vec![expect("path dims", dims, vec![0, 0, 0, 0])?];
                let origin = cx
                    .segre_dim_at(&[gi(0, 0), gi(0, 0)])
                    .map_err(|e| e.to_string())?;
                parts.push(expect("limit dim", origin, 1)?);
                Ok(join(parts))
            },
        ));
    }
    checks.push(samples_check(cx, samples.clone()));
    CorpusEntry {
        name: "paraboloid",
        summary: "Graph of |z|^2 in C^2: a totally real surface that is \
                  Segre-degenerate in the stratified sense only at the origin, \
                  where the slice jumps from a point to a line.",
        variety: Some(v),
        real_dim: Some(2),
        samples,
        checks,
    }
}

fn entry_quartic_graph() -> CorpusEntry {
    let (v, cx) = load("quartic-graph", include_str!("../corpus/quartic-graph.var"));
    let samples: Vec<Point> = vec![
        vec![gi(1, 0), gi(1, 0), gi(4, 0)],
        vec![gi(0, 1), gi(0, 0), gi(-2, 0)],
        vec![gi(1, 1), gi(1, -1), gi(0, 0)],
        vec![gi(0, 0), gi(0, 0), gi(0, 0)],
    ];
    let mut checks = Vec::new();
    {
        let cx = cx.clone();
        checks.push(check("description is involution-invariant", move || {
            expect(
                "sigma_check",
                cx.sigma_check().map_err(|e| e.to_string())?,
                true,
            )
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check("degeneracy locus is empty", move || {
            expect(
                "locus basis",
                basis_strings(&cx.degenerate_locus())?,
                vec!["1".to_string()],
            )
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check(
            "origin slice is a singular pair of lines",
            move || {
                let q = vec![gi(0, 0), gi(0, 0), gi(0, 0)];
                let report = cx.classify_point(&q).map_err(|e| e.to_string())?;
                let parts = vec![
                    expect("segre_dim", report.segre_dim, 1)?,
                    expect(
                        "slice basis",
                        report
                            .segre_basis
                            .iter()
                            .map(|p| p.to_string())
                            .collect::<Vec<_>>(),
                        vec!["z^2 + xi^2".to_string(), "w".to_string()],
                    )?,
                    expect(
                        "k_membership",
                        report.k_membership,
                        vec![true, true, false, false],
                    )?,
                ];
                Ok(join(parts))
            },
        ));
    }
    {
        let cx = cx.clone();
        checks.push(check(
            "origin slice splits into two complex lines",
            move || {
                let q = vec![gi(0, 0), gi(0, 0), gi(0, 0)];
                let report = cx.classify_point(&q).map_err(|e| e.to_string())?;
                let cone = report.segre_basis[0].clone();
                match ansatz_factor_homogeneous(&cone, &CertOptions::default()) {
                    FactorSearch::Found(pair) => {
                        let mut parts =
                            vec![expect("product", pair[0].mul(&pair[1]) == cone, true)?];
                        let mut strs: Vec<String> = pair.iter().map(|p| p.to_string()).collect();
                        strs.sort();
                        parts.push(expect(
                            "factors",
                            strs,
                            vec!["z + i*xi".to_string(), "z - i*xi".to_string()],
                        )?);
                        Ok(join(parts))
                    }
                    other => Err(format!("expected a factorization, got {other:?}")),
                }
            },
        ));
    }
    {
        let cx = cx.clone();
        checks.push(check("generic graph point has a curve slice", move || {
            classify_summary(&cx, &[gi(1, 0), gi(1, 0), gi(4, 0)], true, 1)
        }));
    }
    checks.push(samples_check(cx, samples.clone()));
    CorpusEntry {
        name: "quartic-graph",
        summary: "Graph of 2Re(z^2) + 2Re(xi^2) over C^2: a CR-singular manifold \
                  whose Segre slice at the origin is a pair of complex lines \
                  crossing at a point.",
        variety: Some(v),
        real_dim: Some(4),
        samples,
        checks,
    }
}

fn entry_half_line_locus() -> CorpusEntry {
    let (v, cx) = load(
        "half-line-locus",
        include_str!("../corpus/half-line-locus.var"),
    );
    let samples: Vec<Point> = vec![
        vec![gi(1, 1), gi(1, 0), gi(1, 7)],
        vec![gi(2, 0), gi(1, 0), gi(2, 0)],
        vec![gi(0, 0), gi(0, 0), gi(-5, 0)],
        vec![gi(0, 0), gi(0, 0), gi(0, 3)],
    ];
    let mut checks = Vec::new();
    {
        let cx = cx.clone();
        checks.push(check("description is involution-invariant", move || {
            expect(
                "sigma_check",
                cx.sigma_check().map_err(|e| e.to_string())?,
                true,
            )
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check("degeneracy locus is the xi axis", move || {
            let locus = cx.degenerate_locus();
            let mut parts = vec![expect(
                "locus basis",
                basis_strings(&locus)?,
                ["z", "w"].map(String::from).to_vec(),
            )?];
            let dim = locus
                .krull_dimension(&GbOptions::default())
                .map_err(|e| e.to_string())?;
            // d - n - 1 = 5 - 3 - 1 = 1: a hypersurface locus can be this
            // large and here it is, exactly.
            parts.push(expect("locus dim", dim, 1)?);
            Ok(join(parts))
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check(
            "both halves of the axis are slice-degenerate",
            move || {
                let mut parts = Vec::new();
                let neg = cx
                    .classify_point(&[gi(0, 0), gi(0, 0), gi(-1, 0)])
                    .map_err(|e| e.to_string())?;
                parts.push(expect("dim at Re(xi)<0", neg.segre_dim, 3)?);
                parts.push(expect(
                    "degenerate at Re(xi)<0",
                    neg.fully_degenerate,
                    true,
                )?);
                let pos = cx
                    .classify_point(&[gi(0, 0), gi(0, 0), gr(1, 2)])
                    .map_err(|e| e.to_string())?;
                parts.push(expect("dim at Re(xi)>0", pos.segre_dim, 3)?);
                parts.push(expect(
                    "degenerate at Re(xi)>0",
                    pos.fully_degenerate,
                    true,
                )?);
                Ok(join(parts))
            },
        ));
    }
    {
        let cx = cx.clone();
        checks.push(check("generic sheet point is not degenerate", move || {
            classify_summary(&cx, &[gi(1, 0), gi(1, 0), gr(1, 2)], true, 2)
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check("off-variety point has empty slice", move || {
            classify_summary(&cx, &[gi(1, 0), gi(1, 0), gi(1, 0)], false, -1)
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check(
            "germ containment flips sign along the axis",
            move || {
                let zreg = cx.z_registry().clone();
                let cands = vec![
                    Polynomial::var(zreg.clone(), 0),
                    Polynomial::var(zreg.clone(), 1),
                ];
                let curve = Curve::parse("0, 0, t", 3).map_err(|e| e.to_string())?;
                let grid: Vec<BigRational> =
                    [(-2i64, 1i64), (-1, 1), (-1, 2), (1, 2), (1, 1), (2, 1)]
                        .iter()
                        .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                        .collect();
                let config = ProbeConfig {
                    samples: 16,
                    ..ProbeConfig::default()
                };
                let rows = region_scan(&cx, &curve, &grid, 3, &cands, &config)
                    .map_err(|e| e.to_string())?;
                let mut parts = vec![expect(
                    "stratum membership along axis",
                    rows.iter().map(|r| r.member).collect::<Vec<_>>(),
                    vec![true; 6],
                )?];
                use ProbeVerdict::{Consistent, Refuted};
                parts.push(expect(
                    "probe verdicts",
                    rows.iter().map(|r| r.probe.verdict).collect::<Vec<_>>(),
                    vec![
                        Consistent, Consistent, Consistent, Refuted, Refuted, Refuted,
                    ],
                )?);
                Ok(join(parts))
            },
        ));
    }
    checks.push(samples_check(cx, samples.clone()));
    CorpusEntry {
        name: "half-line-locus",
        summary: "Umbrella-like hypersurface |z|^2 = 2Re(xi)|w|^2: the whole xi \
                  axis is slice-degenerate, but the variety germ equals the axis \
                  only where Re(xi) < 0, so the set of points whose germ sits \
                  inside the axis is a half-line, not a variety.",
        variety: Some(v),
        real_dim: Some(5),
        samples,
        checks,
    }
}

fn entry_quintic_cone() -> CorpusEntry {
    let (v, cx) = load("quintic-cone", include_str!("../corpus/quintic-cone.var"));
    let samples: Vec<Point> = vec![
        vec![gi(-2, 0), gi(4, 0), gi(1, 0)],
        vec![gi(-1, 0), gi(2, 0), gr(1, 2)],
        vec![gi(0, 6), gi(0, 0), gi(-3, 0)],
        vec![gi(0, 0), gi(0, 5), gi(0, 2)],
    ];
    let mut checks = Vec::new();
    {
        let cx = cx.clone();
        checks.push(check("description is involution-invariant", move || {
            expect(
                "sigma_check",
                cx.sigma_check().map_err(|e| e.to_string())?,
                true,
            )
        }));
    }
    {
        let v = v.clone();
        checks.push(check(
            "single generator, normalized with unit 1/2",
            move || {
                let parts = vec![
                    expect("generator count", v.generators.len(), 1)?,
                    expect("unit", v.generators[0].unit.clone(), gr(1, 2))?,
                ];
                Ok(join(parts))
            },
        ));
    }
    {
        let cx = cx.clone();
        checks.push(check(
            "degeneracy locus is the complex line z = w = 0",
            move || {
                let locus = cx.degenerate_locus();
                let parts = vec![
                    expect(
                        "locus basis",
                        basis_strings(&locus)?,
                        ["z", "w"].map(String::from).to_vec(),
                    )?,
                    expect(
                        "locus dim",
                        locus
                            .krull_dimension(&GbOptions::default())
                            .map_err(|e| e.to_string())?,
                        1,
                    )?,
                ];
                Ok(join(parts))
            },
        ));
    }
    {
        let cx = cx.clone();
        checks.push(check(
            "axis points are slice-degenerate on both halves",
            move || {
                let mut parts = Vec::new();
                let re5 = cx
                    .classify_point(&[gi(0, 0), gi(0, 0), gi(5, 0)])
                    .map_err(|e| e.to_string())?;
                parts.push(expect("dim at xi=5", re5.segre_dim, 3)?);
                parts.push(expect("degenerate at xi=5", re5.fully_degenerate, true)?);
                let im1 = cx
                    .classify_point(&[gi(0, 0), gi(0, 0), gi(0, 1)])
                    .map_err(|e| e.to_string())?;
                parts.push(expect("dim at xi=i", im1.segre_dim, 3)?);
                Ok(join(parts))
            },
        ));
    }
    {
        let cx = cx.clone();
        checks.push(check("scaling family stays generic", move || {
            // The quintic is homogeneous, so lambda * q stays on the cone.
            let lambdas = [(1i64, 1i64), (1, 2), (-1, 1), (3, 1)];
            let pts: Vec<Point> = lambdas
                .iter()
                .map(|&(n, d)| vec![gr(-2 * n, d), gr(4 * n, d), gr(n, d)])
                .collect();
            for q in &pts {
                if !cx.point_on_variety(q) {
                    return Err("scaled point left the cone".to_string());
                }
            }
            let dims = semicontinuity_scan(&cx, &pts).map_err(|e| e.to_string())?;
            expect("family dims", dims, vec![2, 2, 2, 2])
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check(
            "complexified differential vanishes along Re(z) = w = 0",
            move || {
                let gen = cx.ideal().generators()[0].clone();
                // A point of the complexified singular set with xi off the real
                // locus: (z, w, xi) = (0, 0, 3+2i) paired with its conjugates.
                let sing = vec![gi(0, 0), gi(0, 0), gi(3, 2), gi(0, 0), gi(0, 0), gi(3, -2)];
                let mut parts = vec![expect(
                    "generator vanishes",
                    gen.eval_full(&sing).map_err(|e| e.to_string())?.is_zero(),
                    true,
                )?];
                for var in 0..6u32 {
                    let d = gen.partial_derivative(var);
                    if !d.eval_full(&sing).map_err(|e| e.to_string())?.is_zero() {
                        return Err(format!("partial in variable {var} does not vanish"));
                    }
                }
                parts.push("all six partials vanish".to_string());
                // Contrast: at a generic cone point the differential is nonzero.
                let reg = vec![gi(-2, 0), gi(4, 0), gi(1, 0), gi(-2, 0), gi(4, 0), gi(1, 0)];
                let dz = gen.partial_derivative(0);
                parts.push(expect(
                    "generic point is regular",
                    dz.eval_full(&reg).map_err(|e| e.to_string())?.is_zero(),
                    false,
                )?);
                Ok(join(parts))
            },
        ));
    }
    checks.push(samples_check(cx, samples.clone()));
    CorpusEntry {
        name: "quintic-cone",
        summary: "Noncoherent homogeneous quintic hypersurface in C^3 whose \
                  slice-degeneracy locus is the complex line z = w = 0 while the \
                  germ-level degenerate set is only the real line inside it.",
        variety: Some(v),
        real_dim: Some(5),
        samples,
        checks,
    }
}

fn entry_regular_dodecic() -> CorpusEntry {
    let (v, cx) = load(
        "regular-dodecic",
        include_str!("../corpus/regular-dodecic.var"),
    );
    let samples: Vec<Point> = vec![
        vec![gi(0, 0), gi(5, 0)],
        vec![gi(0, 0), gi(-3, 0)],
        vec![gi(0, 0), gi(0, 2)],
        vec![gi(0, 0), gi(0, 0)],
    ];
    let mut checks = Vec::new();
    {
        let cx = cx.clone();
        checks.push(check("description is involution-invariant", move || {
            expect(
                "sigma_check",
                cx.sigma_check().map_err(|e| e.to_string())?,
                true,
            )
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check("degeneracy locus is empty", move || {
            let locus = cx.degenerate_locus();
            let parts = vec![
                expect("locus basis", basis_strings(&locus)?, vec!["1".to_string()])?,
                expect(
                    "locus dim",
                    locus
                        .krull_dimension(&GbOptions::default())
                        .map_err(|e| e.to_string())?,
                    -1,
                )?,
            ];
            Ok(join(parts))
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check("origin slice is a singular curve", move || {
            let q = vec![gi(0, 0), gi(0, 0)];
            let report = cx.classify_point(&q).map_err(|e| e.to_string())?;
            let parts = vec![
                expect("segre_dim", report.segre_dim, 1)?,
                expect(
                    "slice basis",
                    report
                        .segre_basis
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>(),
                    vec!["z^4*w^8 - z^3*w^9".to_string()],
                )?,
            ];
            Ok(join(parts))
        }));
    }
    {
        let cx = cx.clone();
        checks.push(check("regular points keep curve slices", move || {
            let pts = [
                vec![gi(0, 0), gi(5, 0)],
                vec![gi(0, 0), gi(-3, 0)],
                vec![gi(0, 0), gi(0, 2)],
                vec![gi(0, 0), gr(1, 2)],
            ];
            for q in &pts {
                let report = cx.classify_point(q).map_err(|e| e.to_string())?;
                if !report.on_variety {
                    return Err(format!("point {:?} left the variety", report.point));
                }
                if report.segre_dim != 1 {
                    return Err(format!(
                        "expected slice dim 1 at {:?}, got {}",
                        report.point, report.segre_dim
                    ));
                }
            }
            let one = cx
                .classify_point(&[gi(0, 0), gi(5, 0)])
                .map_err(|e| e.to_string())?;
            expect("k_membership", one.k_membership, vec![true, true, false])
        }));
    }
    checks.push(samples_check(cx, samples.clone()));
    CorpusEntry {
        name: "regular-dodecic",
        summary: "Degree-12 hypersurface in C^2, regular along the z = 0 slice \
                  away from Re(w) = 0, where the global Segre slice is singular \
                  even though the germ of the Segre variety is a regular line: \
                  the germ is a proper component of the sliced variety.",
        variety: Some(v),
        real_dim: Some(3),
        samples,
        checks,
    }
}

fn entry_dodecic_cone() -> CorpusEntry {
    let names: Vec<String> = ["x", "y", "s"].map(String::from).to_vec();
    let poly = parse_real_expression("(x^2 + y^2)^6 - s^8*x^3*(s - x)", &names)
        .expect("fixed expression parses");
    let mut checks = Vec::new();
    {
        let poly = poly.clone();
        checks.push(check("polynomial is homogeneous of degree 12", move || {
            expect(
                "homogeneity",
                poly.homogeneity().map_err(|e| e.to_string())?,
                Some(12),
            )
        }));
    }
    {
        let poly = poly.clone();
        checks.push(check(
            "certificate declines above the degree cap",
            move || match cone_certificate(&poly, &CertOptions::default()) {
                ConeCertificate::Indeterminate { reason } if reason.contains("cap") => {
                    Ok(format!("declined: {reason}"))
                }
                other => Err(format!("expected a cap refusal, got {other:?}")),
            },
        ));
    }
    {
        checks.push(check(
            "matches the realified dodecic generator",
            move || {
                let v = load_variety(include_str!("../corpus/regular-dodecic.var"))
                    .map_err(|e| e.to_string())?;
                let cx = complexify(&v, &GbOptions::default());
                let gen = cx.ideal().generators()[0].clone();
                let (a, b) = realify(&gen, v.vars.names());
                if !b.is_zero() {
                    return Err("imaginary part of the realified generator is nonzero".to_string());
                }
                // The realified generator lives in (x_z, y_z, x_w, y_w) but does
                // not involve y_w; renaming onto (x, y, s) must reproduce the
                // certificate polynomial up to the normalizing unit.
                let names: Vec<String> = ["x", "y", "s"].map(String::from).to_vec();
                let target =
                    crate::poly::Registry::new(names.clone()).map_err(|e| e.to_string())?;
                let map = vec![Some(0), Some(1), Some(2), None];
                let renamed = a.restrict(target, &map).map_err(|e| e.to_string())?;
                let (monic, _) = renamed
                    .monic(&MonomialOrder::GrevLex)
                    .ok_or("realified generator is zero")?;
                let expected = parse_real_expression("(x^2 + y^2)^6 - s^8*x^3*(s - x)", &names)
                    .map_err(|e| e.to_string())?;
                expect(
                    "renamed monic generator equals the cone",
                    monic == expected,
                    true,
                )
            },
        ));
    }
    CorpusEntry {
        name: "dodecic-cone",
        summary: "Homogeneous degree-12 cone (x^2+y^2)^6 = s^8 x^3 (s-x), the \
                  realified generator of regular-dodecic; the irreducibility \
                  certificate honestly declines above its degree cap.",
        variety: None,
        real_dim: None,
        samples: Vec::new(),
        checks,
    }
}

fn entry_whitney_umbrella() -> CorpusEntry {
    let names: Vec<String> = ["x", "y", "s"].map(String::from).to_vec();
    let poly = parse_real_expression("s*x^2 - y^2", &names).expect("fixed expression parses");
    let mut checks = Vec::new();
    {
        let poly = poly.clone();
        checks.push(check("polynomial is not homogeneous", move || {
            expect(
                "homogeneity",
                poly.homogeneity().map_err(|e| e.to_string())?,
                None,
            )
        }));
    }
    {
        let poly = poly.clone();
        checks.push(check("certificate requires homogeneity", move || {
            let search = ansatz_factor_homogeneous(&poly, &CertOptions::default());
            if !matches!(search, FactorSearch::Unresolved(_)) {
                return Err(format!("expected an unresolved search, got {search:?}"));
            }
            match cone_certificate(&poly, &CertOptions::default()) {
                ConeCertificate::Indeterminate { reason } if reason.contains("homogeneous") => {
                    Ok(format!("declined: {reason}"))
                }
                other => Err(format!("expected an honest refusal, got {other:?}")),
            }
        }));
    }
    CorpusEntry {
        name: "whitney-umbrella",
        summary: "Pinch-point surface s x^2 = y^2: not homogeneous, so the cone \
                  certificate declines rather than guess at its factorization.",
        variety: None,
        real_dim: None,
        samples: Vec::new(),
        checks,
    }
}

// ---------------------------------------------------------------------------
// Registry of entries
// ---------------------------------------------------------------------------

pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        entry_sphere_cone(),
        entry_cone_real_line(),
        entry_paraboloid(),
        entry_quartic_graph(),
        entry_half_line_locus(),
        entry_quintic_cone(),
        entry_regular_dodecic(),
        entry_dodecic_cone(),
        entry_whitney_umbrella(),
    ]
}

pub fn entry(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

/// Run every check of every entry whose name contains `filter` (all entries
/// when `filter` is `None`).
pub fn run_all(filter: Option<&str>) -> Vec<CheckOutcome> {
    corpus()
        .into_iter()
        .filter(|e| filter.is_none_or(|f| e.name.contains(f)))
        .flat_map(|e| e.run_checks())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::print_variety;

    #[test]
    fn every_frozen_expectation_holds() {
        let outcomes = run_all(None);
        assert!(!outcomes.is_empty());
        let failures: Vec<String> = outcomes
            .iter()
            .filter(|o| !o.passed)
            .map(|o| format!("{}/{}: {}", o.entry, o.label, o.detail))
            .collect();
        assert!(
            failures.is_empty(),
            "failed checks:\n{}",
            failures.join("\n")
        );
    }

    #[test]
    fn entries_are_unique_and_filterable() {
        let all = corpus();
        let mut names: Vec<&str> = all.iter().map(|e| e.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), all.len(), "duplicate entry names");
        assert!(entry("paraboloid").is_some());
        assert!(entry("no-such-entry").is_none());
        let filtered = run_all(Some("whitney"));
        assert!(filtered.iter().all(|o| o.entry == "whitney-umbrella"));
        assert!(!filtered.is_empty());
    }

    #[test]
    fn bundled_files_round_trip_through_the_printer() {
        for e in corpus() {
            let Some(v) = &e.variety else { continue };
            let printed = print_variety(v);
            let reloaded = load_variety(&printed)
                .unwrap_or_else(|err| panic!("{} failed to reload: {err}", e.name));
            assert_eq!(&reloaded, v, "{} did not round-trip", e.name);
        }
    }

    #[test]
    fn variety_entries_declare_dimensions_and_samples() {
        for e in corpus() {
            if e.variety.is_some() {
                assert!(e.real_dim.is_some(), "{} lacks a dimension", e.name);
                assert!(!e.samples.is_empty(), "{} lacks samples", e.name);
            } else {
                assert!(e.real_dim.is_none());
                assert!(e.samples.is_empty());
            }
        }
    }
}
