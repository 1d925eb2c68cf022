//! Floating-point cross-check of the symbolic cone.
//!
//! Secant directions between nearby points of the curve are sampled at
//! shrinking radii and measured against the cone components. Explicit
//! one-parameter secant families whose limits are known in closed form show
//! that each component is actually reached.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::auxiliary::{AuxKind, RootOfUnity};
use crate::c5::{C5Analysis, C5Cone, Provenance};
use crate::geometry::{Branch, Curve};
use crate::scalar::CycloScalar;

pub type CVec = Vec<Complex64>;

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn normalized(a: &[Complex64]) -> Option<CVec> {
    let n = norm(a);
    (n > 0.0 && n.is_finite()).then(|| a.iter().map(|x| x / n).collect())
}

/// Orthonormal basis of the complex span of `rows`, by Gram-Schmidt.
pub fn orthonormal_basis(rows: &[CVec]) -> Vec<CVec> {
    let mut out: Vec<CVec> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for q in &out {
            let c = dot(q, &v);
            for (x, y) in v.iter_mut().zip(q) {
                *x -= c * y;
            }
        }
        if let Some(v) = normalized(&v) {
            out.push(v);
        }
    }
    out
}

/// Norm of the part of unit vector `d` orthogonal to the span of orthonormal `basis`.
pub fn distance_to_span(d: &[Complex64], basis: &[CVec]) -> f64 {
    let mut r = d.to_vec();
    for q in basis {
        let c = dot(q, d);
        for (x, y) in r.iter_mut().zip(q) {
            *x -= c * y;
        }
    }
    norm(&r)
}

fn to_cvec(v: &[CycloScalar]) -> CVec {
    v.iter().map(CycloScalar::to_complex).collect()
}

/// Numeric form of every cone component.
pub fn component_spans(cone: &C5Cone) -> Vec<Vec<CVec>> {
    cone.component_bases()
        .iter()
        .map(|rows| orthonormal_basis(&rows.iter().map(|r| to_cvec(r)).collect::<Vec<_>>()))
        .collect()
}

/// One sampled secant direction.
#[derive(Clone, Debug)]
pub struct SecantSample {
    pub radius: f64,
    pub direction: CVec,
    /// Branch indices of the two points.
    pub branches: (usize, usize),
    pub params: (Complex64, Complex64),
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadiusStats {
    pub radius: f64,
    pub samples: usize,
    pub degenerate: usize,
    pub max_distance: f64,
}

#[derive(Clone, Debug)]
pub struct SamplingReport {
    pub seed: u64,
    pub per_radius: Vec<RadiusStats>,
    /// Maximum distance at the smallest radius.
    pub max_plane_distance: f64,
    pub samples: Vec<SecantSample>,
}

/// Branch coefficients as `(exponent, complex vector)` terms.
fn numeric_terms(b: &Branch) -> Vec<(u64, CVec)> {
    let mut exps: Vec<u64> = b
        .param()
        .coords()
        .iter()
        .flat_map(|s| s.terms().iter().map(|(e, _)| *e))
        .collect();
    exps.sort_unstable();
    exps.dedup();
    exps.into_iter()
        .map(|e| (e, to_cvec(&b.param().coefficient_vector(e))))
        .collect()
}

/// `phi(rho w) / rho^e0`, which stays representable for high exponents.
fn eval_scaled(terms: &[(u64, CVec)], rho: f64, e0: u64, w: Complex64, n: usize) -> CVec {
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (e, c) in terms {
        let scale = rho.powf((e - e0) as f64);
        if scale == 0.0 {
            continue;
        }
        let p = w.powf(*e as f64) * scale;
        for (o, x) in out.iter_mut().zip(c) {
            *o += x * p;
        }
    }
    out
}

const MAX_RESAMPLE: usize = 64;

fn sample_point(rng: &mut ChaCha8Rng) -> Complex64 {
    let r: f64 = rng.gen_range(0.5..=1.0);
    let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, a)
}

/// Sample `k` secants per radius for every branch and branch pair and measure
/// their distance to the nearest component of `cone`.
pub fn sample_secant_directions(
    c: &Curve,
    cone: &C5Cone,
    radii: &[f64],
    k: usize,
    seed: u64,
) -> SamplingReport {
    let spans = component_spans(cone);
    let terms: Vec<Vec<(u64, CVec)>> = c.branches().iter().map(numeric_terms).collect();
    let combos: Vec<(usize, usize)> = (0..c.r())
        .flat_map(|i| (i..c.r()).map(move |j| (i, j)))
        .collect();
    let jobs: Vec<(usize, usize)> = (0..radii.len())
        .flat_map(|ri| (0..combos.len()).map(move |ci| (ri, ci)))
        .collect();
    let n = c.n();
    let results: Vec<(usize, Vec<SecantSample>, usize)> = jobs
        .par_iter()
        .map(|&(ri, ci)| {
            let rho = radii[ri];
            let (i, j) = combos[ci];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream((ri * combos.len() + ci) as u64);
            let e0 = c.branch(i).multiplicity().min(c.branch(j).multiplicity());
            let mut out = Vec::with_capacity(k);
            let mut degenerate = 0;
            while out.len() < k && degenerate < MAX_RESAMPLE * k.max(1) {
                let (w1, w2) = (sample_point(&mut rng), sample_point(&mut rng));
                let p = eval_scaled(&terms[i], rho, e0, w1, n);
                let q = eval_scaled(&terms[j], rho, e0, w2, n);
                let diff: CVec = p.iter().zip(&q).map(|(a, b)| a - b).collect();
                let Some(d) = normalized(&diff) else {
                    degenerate += 1;
                    continue;
                };
                let distance = spans
                    .iter()
                    .map(|s| distance_to_span(&d, s))
                    .fold(f64::INFINITY, f64::min);
                out.push(SecantSample {
                    radius: rho,
                    direction: d,
                    branches: (i, j),
                    params: (w1 * rho, w2 * rho),
                    distance,
                });
            }
            (ri, out, degenerate)
        })
        .collect();

    let mut per_radius: Vec<RadiusStats> = radii
        .iter()
        .map(|&radius| RadiusStats {
            radius,
            samples: 0,
            degenerate: 0,
            max_distance: 0.0,
        })
        .collect();
    let mut samples = Vec::new();
    for (ri, batch, degenerate) in results {
        let stats = &mut per_radius[ri];
        stats.degenerate += degenerate;
        stats.samples += batch.len();
        for s in &batch {
            stats.max_distance = stats.max_distance.max(s.distance);
        }
        samples.extend(batch);
    }
    let smallest = radii
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i);
    let max_plane_distance = smallest.map_or(0.0, |i| per_radius[i].max_distance);
    SamplingReport {
        seed,
        per_radius,
        max_plane_distance,
        samples,
    }
}

/// A secant family `P(u) - Q(theta u (1 + eps(u)))` with
/// `eps(u) = -(lambda / L) u^(k - L)`; `P` and `Q` share the special power `u^L`.
#[derive(Clone, Debug)]
pub struct SecantFamily {
    pub label: String,
    p: Vec<(u64, Vec<CycloScalar>)>,
    q: Vec<(u64, Vec<CycloScalar>)>,
    theta: CycloScalar,
    lambda: CycloScalar,
    l: u64,
}

/// Result of following a secant family along decreasing parameter values.
#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub label: String,
    /// Order of the exact difference, found by the oracle itself.
    pub k: u64,
    pub target: CVec,
    pub u_values: Vec<f64>,
    pub directions: Vec<CVec>,
    pub distances: Vec<f64>,
    /// Whether distances decrease over the last three parameter values.
    pub monotone: bool,
}

impl WitnessReport {
    pub fn final_direction(&self) -> &[Complex64] {
        self.directions.last().map_or(&[], Vec::as_slice)
    }

    pub fn limit_error(&self) -> f64 {
        self.distances.last().copied().unwrap_or(f64::INFINITY)
    }
}

fn exact_terms(b: &Branch, power: u64) -> Vec<(u64, Vec<CycloScalar>)> {
    let mut exps: Vec<u64> = b
        .param()
        .coords()
        .iter()
        .flat_map(|s| s.terms().iter().map(|(e, _)| *e))
        .collect();
    exps.sort_unstable();
    exps.dedup();
    exps.into_iter()
        .map(|e| (e * power, b.param().coefficient_vector(e)))
        .collect()
}

fn binomial_minus_one(e: u64, eps: Complex64) -> Complex64 {
    // (1 + eps)^e - 1 without cancellation.
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 1..=e {
        term = term * eps * ((e - j + 1) as f64 / j as f64);
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

impl SecantFamily {
    /// Family for the characteristic root `theta` of a branch.
    pub fn characteristic(label: String, b: &Branch, theta: &CycloScalar, lambda: CycloScalar) -> Self {
        let t = exact_terms(b, 1);
        SecantFamily {
            label,
            p: t.clone(),
            q: t,
            theta: theta.clone(),
            lambda,
            l: b.multiplicity(),
        }
    }

    /// Family for the contact root `theta` of a branch pair.
    pub fn contact(label: String, bi: &Branch, bj: &Branch, theta: &CycloScalar, lambda: CycloScalar) -> Self {
        let (mi, mj) = (bi.multiplicity(), bj.multiplicity());
        let l = num_integer::lcm(mi, mj);
        SecantFamily {
            label,
            p: exact_terms(bi, l / mi),
            q: exact_terms(bj, l / mj),
            theta: theta.clone(),
            lambda,
            l,
        }
    }

    /// Exact coefficients `d_e = P_e - theta^e Q_e` of the unperturbed difference.
    fn differences(&self) -> Vec<(u64, Vec<CycloScalar>)> {
        let n = self.p.first().or(self.q.first()).map_or(0, |t| t.1.len());
        let mut exps: Vec<u64> = self.p.iter().chain(&self.q).map(|t| t.0).collect();
        exps.sort_unstable();
        exps.dedup();
        let zero = vec![CycloScalar::zero(); n];
        exps.into_iter()
            .map(|e| {
                let pe = self.p.iter().find(|t| t.0 == e).map_or(&zero, |t| &t.1);
                let qe = self.q.iter().find(|t| t.0 == e).map_or(&zero, |t| &t.1);
                let te = self.theta.pow(e);
                let d = pe.iter().zip(qe).map(|(a, b)| a - &(&te * b)).collect();
                (e, d)
            })
            .collect()
    }

    pub fn run(&self, u_values: &[f64]) -> WitnessReport {
        let diffs = self.differences();
        let (k, dk) = diffs
            .iter()
            .find(|(_, d)| d.iter().any(|x| !x.is_zero()))
            .map(|(e, d)| (*e, d.clone()))
            .expect("secant family of identical branches");
        let ql = self
            .q
            .iter()
            .find(|t| t.0 == self.l)
            .map(|t| t.1.clone())
            .unwrap_or_default();
        let target_exact: Vec<CycloScalar> = dk
            .iter()
            .zip(ql.iter().chain(std::iter::repeat(&CycloScalar::zero())))
            .map(|(a, b)| a + &(&self.lambda * b))
            .collect();
        let target = normalized(&to_cvec(&target_exact)).expect("nonzero target");
        let target_span = vec![target.clone()];

        let theta = self.theta.to_complex();
        let lambda = self.lambda.to_complex();
        let dnum: Vec<(u64, CVec)> = diffs.iter().map(|(e, d)| (*e, to_cvec(d))).collect();
        let qnum: Vec<(u64, CVec)> = self.q.iter().map(|(e, c)| (*e, to_cvec(c))).collect();
        let n = target.len();

        let mut directions = Vec::new();
        let mut distances = Vec::new();
        for &u in u_values {
            let u = Complex64::new(u, 0.0);
            let eps = -(lambda / self.l as f64) * u.powf(k as f64 - self.l as f64);
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            for (e, d) in &dnum {
                if *e < k {
                    continue;
                }
                let s = u.powf((*e - k) as f64);
                for (o, x) in v.iter_mut().zip(d) {
                    *o += x * s;
                }
            }
            if lambda != Complex64::new(0.0, 0.0) {
                for (e, c) in &qnum {
                    let b = binomial_minus_one(*e, eps) * theta.powf(*e as f64);
                    let s = b * u.powf(*e as f64 - k as f64);
                    for (o, x) in v.iter_mut().zip(c) {
                        *o -= x * s;
                    }
                }
            }
            let d = normalized(&v).unwrap_or_else(|| vec![Complex64::new(f64::NAN, 0.0); n]);
            distances.push(distance_to_span(&d, &target_span));
            directions.push(d);
        }
        let tail = &distances[distances.len().saturating_sub(3)..];
        let monotone = tail.windows(2).all(|w| w[1] <= w[0] + 1e-15);
        WitnessReport {
            label: self.label.clone(),
            k,
            target,
            u_values: u_values.to_vec(),
            directions,
            distances,
            monotone,
        }
    }
}

/// Characteristic witness family for a single branch.
pub fn witness_secant_family(
    b: &Branch,
    theta: RootOfUnity,
    lambda: CycloScalar,
    u_values: &[f64],
) -> WitnessReport {
    SecantFamily::characteristic(format!("branch {theta}"), b, &theta.value(), lambda).run(u_values)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleConfig {
    pub radii: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub witness_u: Vec<f64>,
    /// Deliberately replace the cone by a wrong one (negative control).
    pub corrupt: bool,
}

/// Exponent above which evaluation defaults to larger radii.
pub const HIGH_DEGREE: u64 = 12;

impl OracleConfig {
    pub fn for_curve(c: &Curve) -> Self {
        let high = c.branches().iter().any(|b| b.param().max_exponent() > HIGH_DEGREE);
        let radii = if high {
            vec![1e-1, 10f64.powf(-1.5)]
        } else {
            vec![1e-2, 1e-3]
        };
        OracleConfig {
            radii,
            samples: 200,
            seed: 0,
            tolerance: 1e-2,
            witness_u: vec![1e-1, 1e-2, 1e-3, 1e-4],
            corrupt: false,
        }
    }
}

/// A witness family tied to the cone component it should reach.
#[derive(Clone, Debug)]
pub struct ComponentWitness {
    pub component: usize,
    pub report: WitnessReport,
    pub plane_distance: f64,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub config: OracleConfig,
    pub sampling: SamplingReport,
    pub witnesses: Vec<ComponentWitness>,
    pub attained: Vec<bool>,
    pub passed: bool,
}

/// Cyclically shift coordinates of every component basis.
fn corrupted(cone: &C5Cone) -> C5Cone {
    use crate::geometry::{Direction, Plane};
    let shift = |v: &[CycloScalar]| {
        let mut w = v.to_vec();
        w.rotate_right(1);
        w
    };
    match cone {
        C5Cone::Line(d) => C5Cone::Line(Direction::new(shift(d.as_slice())).unwrap()),
        C5Cone::Planes(comps) => C5Cone::Planes(
            comps
                .iter()
                .map(|c| crate::c5::ConeComponent {
                    plane: Plane::from_rows(c.plane.basis().iter().map(|r| shift(r)).collect())
                        .unwrap(),
                    provenance: c.provenance.clone(),
                })
                .collect(),
        ),
    }
}

fn family_for(c: &Curve, prov: &Provenance) -> SecantFamily {
    match *prov {
        Provenance::Aux(AuxKind::Characteristic { branch, theta }) => SecantFamily::characteristic(
            format!("branch {} theta {theta}", branch + 1),
            c.branch(branch),
            &theta.value(),
            CycloScalar::one(),
        ),
        Provenance::Aux(AuxKind::Contact { pair: (i, j), theta }) => SecantFamily::contact(
            format!("pair ({},{}) theta {theta}", i + 1, j + 1),
            c.branch(i),
            c.branch(j),
            &theta.value(),
            CycloScalar::one(),
        ),
        Provenance::NonTangent { pair: (i, j) } => SecantFamily::contact(
            format!("pair ({},{}) transversal", i + 1, j + 1),
            c.branch(i),
            c.branch(j),
            &CycloScalar::one(),
            CycloScalar::zero(),
        ),
    }
}

/// Run sampling and all witness families against the cone of `analysis`.
pub fn verify(c: &Curve, analysis: &C5Analysis, config: &OracleConfig) -> VerifyReport {
    let cone = if config.corrupt {
        corrupted(&analysis.cone)
    } else {
        analysis.cone.clone()
    };
    let sampling = sample_secant_directions(c, &cone, &config.radii, config.samples, config.seed);
    let spans = component_spans(&cone);
    let tol = config.tolerance;

    let mut witnesses = Vec::new();
    let mut attained = vec![false; spans.len()];
    match &cone {
        C5Cone::Line(_) => {
            let smallest = config.radii.iter().copied().fold(f64::INFINITY, f64::min);
            attained[0] = sampling
                .samples
                .iter()
                .any(|s| s.radius == smallest && s.distance <= tol);
        }
        C5Cone::Planes(comps) => {
            let jobs: Vec<(usize, Provenance)> = comps
                .iter()
                .enumerate()
                .flat_map(|(idx, comp)| comp.provenance.iter().map(move |p| (idx, *p)))
                .collect();
            witnesses = jobs
                .par_iter()
                .map(|(idx, prov)| {
                    let report = family_for(c, prov).run(&config.witness_u);
                    let plane_distance = distance_to_span(report.final_direction(), &spans[*idx]);
                    ComponentWitness {
                        component: *idx,
                        report,
                        plane_distance,
                    }
                })
                .collect();
            for w in &witnesses {
                if w.plane_distance <= tol {
                    attained[w.component] = true;
                }
            }
        }
    }
    let passed = sampling.max_plane_distance <= tol
        && attained.iter().all(|a| *a)
        && witnesses.iter().all(|w| w.report.monotone);
    VerifyReport {
        config: config.clone(),
        sampling,
        witnesses,
        attained,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c5::{analyze, C5Options};
    use crate::fixtures;

    #[test]
    fn witness_limit_for_cusp() {
        let c = fixtures::space_cusp();
        let r = witness_secant_family(
            c.branch(0),
            RootOfUnity::new(2, 1),
            CycloScalar::one(),
            &[1e-1, 1e-2, 1e-3, 1e-4],
        );
        assert_eq!(r.k, 7);
        let expected = normalized(&[1.0, 0.0, 2.0].map(|x| Complex64::new(x, 0.0))).unwrap();
        assert!(distance_to_span(&r.target, &[expected]) < 1e-14);
        assert!(r.limit_error() < 1e-4, "{:?}", r.distances);
        assert!(r.monotone);
    }

    #[test]
    fn cusp_verifies() {
        let c = fixtures::space_cusp();
        let a = analyze(&c, C5Options::default()).unwrap();
        let mut cfg = OracleConfig::for_curve(&c);
        cfg.samples = 50;
        let rep = verify(&c, &a, &cfg);
        assert!(rep.passed, "{:?}", rep.sampling.per_radius);
        cfg.corrupt = true;
        assert!(!verify(&c, &a, &cfg).passed);
    }
}
