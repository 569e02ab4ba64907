//! Randomized and exact checks of the generator system.
//!
//! Every check is a deterministic function of its inputs and seed. Identity
//! tests over `F_p` are Schwartz–Zippel style: a polynomial of degree `d`
//! that is not identically zero vanishes at a uniform point with probability
//! at most `d / p`, and each record carries the resulting bound.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::assembly::{build_system, expected_count, GeneratorSystem, LoopMode};
use crate::field::{Fp, PrimeField, Rational, Rationals, Scalar};
use crate::invariants::{
    eval_generator, eval_p, eval_rminus, eval_rplus, partials, rminus_section_sign, rplus_section_sign,
};
use crate::matrix::{IndexPair, Matrix, Shape};
use crate::quiver::{
    act, act_with_inverse, rng_from_seed, sample_group_with, sample_omega_point_with, sample_point_with, ArrowId,
    GroupElement, Model, RepPoint,
};
use crate::reduction::reduce_to_section;
use crate::section::SectionSpec;

/// Number of section points tried before a leading slope is declared zero.
pub const SLOPE_RETRIES: usize = 5;
/// Number of points tried before a rank deficiency is reported.
pub const RANK_RETRIES: usize = 3;
/// Trials spent on each negative control.
pub const CONTROL_TRIALS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CheckRecord {
    pub name: String,
    pub trials: usize,
    pub passes: usize,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub counterexample_seed: Option<u64>,
    /// Upper bound on the probability that a pass is spurious.
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub failure_bound: Option<f64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub detail: Option<String>,
}

impl CheckRecord {
    fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            trials: 0,
            passes: 0,
            counterexample_seed: None,
            failure_bound: None,
            detail: None,
        }
    }

    fn record(&mut self, ok: bool, seed: u64) {
        self.trials += 1;
        if ok {
            self.passes += 1;
        } else if self.counterexample_seed.is_none() {
            self.counterexample_seed = Some(seed);
        }
    }

    fn note(&mut self, detail: String) {
        if self.detail.is_none() {
            self.detail = Some(detail);
        }
    }

    pub fn passed(&self) -> bool {
        self.passes == self.trials && self.counterexample_seed.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConfigEcho {
    pub n: usize,
    pub prime: u64,
    pub seed: u64,
    pub trials: usize,
    pub mode: LoopMode,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct VerificationReport {
    pub config: ConfigEcho,
    pub checks: Vec<CheckRecord>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Verdict {
    Pass,
    Fail,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// SplitMix64 step, used to derive independent sub-seeds from a master seed.
pub fn derive_seed(master: u64, counter: u64) -> u64 {
    let mut z = master.wrapping_add(counter.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn degree_bound(n: usize) -> usize {
    2 * n
}

fn bound(events: usize, degree: usize, prime: PrimeField) -> f64 {
    (events as f64) * (degree as f64) / (prime.modulus() as f64)
}

fn values<F: Scalar>(system: &GeneratorSystem, h: &RepPoint<F>) -> Vec<F> {
    system
        .descriptors
        .iter()
        .map(|d| eval_generator(d, h).expect("descriptor matches point"))
        .collect()
}

/// Random `h`, random `g ∈ U_Q`: every generator keeps its value.
pub fn check_invariance(
    model: &Model,
    system: &GeneratorSystem,
    trials: usize,
    seed: u64,
    prime: PrimeField,
) -> CheckRecord {
    let mut rec = CheckRecord::new("invariance");
    for t in 0..trials {
        let trial_seed = derive_seed(seed, t as u64);
        let mut rng = rng_from_seed(trial_seed);
        let h: RepPoint<Fp> = sample_point_with(&model.quiver, model.n, &prime, &mut rng);
        let g: GroupElement<Fp> = sample_group_with(&model.quiver, model.n, &prime, &mut rng);
        let moved = act(&model.quiver, &g, &h).expect("sampled element is unitriangular");
        let ok = values(system, &h) == values(system, &moved);
        rec.record(ok, trial_seed);
    }
    rec.failure_bound = Some(bound(trials, degree_bound(model.n), prime));
    rec
}

/// Ways of breaking invariance on purpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    /// Evaluate every descriptor on the per-arrow transpose of the point.
    TransposedArguments,
    /// Act by lower instead of upper unitriangular matrices.
    LowerTriangularGroup,
}

/// Whether the invariance comparison notices `control` within `trials` trials.
pub fn control_detected(
    model: &Model,
    system: &GeneratorSystem,
    control: Control,
    trials: usize,
    seed: u64,
    prime: PrimeField,
) -> bool {
    (0..trials).any(|t| {
        let mut rng = rng_from_seed(derive_seed(seed, t as u64));
        let h: RepPoint<Fp> = sample_point_with(&model.quiver, model.n, &prime, &mut rng);
        let g: GroupElement<Fp> = sample_group_with(&model.quiver, model.n, &prime, &mut rng);
        match control {
            Control::TransposedArguments => {
                let moved = act(&model.quiver, &g, &h).expect("unitriangular");
                values(system, &h.transpose()) != values(system, &moved.transpose())
            }
            Control::LowerTriangularGroup => {
                let inv = g.inverse().expect("unitriangular");
                let lower = GroupElement::new_unchecked(g.matrices().iter().map(Matrix::transpose).collect());
                let lower_inv = GroupElement::new_unchecked(inv.matrices().iter().map(Matrix::transpose).collect());
                let moved = act_with_inverse(&model.quiver, &lower, &lower_inv, &h).expect("sizes match");
                values(system, &h) != values(system, &moved)
            }
        }
    })
}

/// The invariance comparison must reject both controls. At `n = 1` every
/// action is trivial and the controls are vacuous.
pub fn check_negative_controls(model: &Model, system: &GeneratorSystem, seed: u64, prime: PrimeField) -> CheckRecord {
    let mut rec = CheckRecord::new("negative_controls");
    if model.n < 2 || system.is_empty() {
        rec.note("vacuous for n = 1".into());
        return rec;
    }
    for (idx, control) in [Control::TransposedArguments, Control::LowerTriangularGroup]
        .into_iter()
        .enumerate()
    {
        let control_seed = derive_seed(seed, idx as u64);
        let detected = control_detected(model, system, control, CONTROL_TRIALS, control_seed, prime);
        if !detected {
            rec.note(format!("{control:?} not detected"));
        }
        rec.record(detected, control_seed);
    }
    rec
}

/// A random point of the section: free coordinates uniform, the rest zero.
pub fn sample_section_point<F: Scalar, R: Rng + ?Sized>(
    section: &SectionSpec,
    model: &Model,
    ctx: &F::Ctx,
    rng: &mut R,
) -> RepPoint<F> {
    let n = model.n;
    let matrices = model
        .quiver
        .arrow_ids()
        .map(|a| {
            let shape = section.shape(a);
            Matrix::from_fn(n, |i, j| {
                if shape.allows(n, i, j) {
                    F::random(ctx, rng)
                } else {
                    F::zero(ctx)
                }
            })
        })
        .collect();
    RepPoint::new(&model.quiver, matrices).expect("one matrix per arrow")
}

/// T1: each generator is affine in its leading coordinate on the section, with
/// a nonzero slope at one of [`SLOPE_RETRIES`] points. T2: on the section its
/// partial with respect to every later off-anti-diagonal coordinate of the
/// same arrow vanishes.
pub fn check_triangularity(model: &Model, system: &GeneratorSystem, seed: u64, prime: PrimeField) -> CheckRecord {
    let mut rec = CheckRecord::new("triangularity");
    let section = SectionSpec::new(model);
    let n = model.n;
    let mut points = Vec::with_capacity(SLOPE_RETRIES);
    for attempt in 0..SLOPE_RETRIES {
        let point_seed = derive_seed(seed, attempt as u64);
        let h: RepPoint<Fp> = sample_section_point(&section, model, &prime, &mut rng_from_seed(point_seed));
        points.push((point_seed, h));
    }
    for (idx, desc) in system.descriptors.iter().enumerate() {
        let (arrow, pos) = (desc.leading.arrow, desc.leading.pos);
        let along = |h: &RepPoint<Fp>, t: i64| {
            let mut p = h.clone();
            p.matrix_mut(arrow).set(pos.row, pos.col, prime.element(t));
            eval_generator(desc, &p).expect("descriptor matches point")
        };
        let mut affine = true;
        let mut slope_found = false;
        for (_, h) in &points {
            let (f0, f1, f2) = (along(h, 0), along(h, 1), along(h, 2));
            if !(f2 - f1 - f1 + f0).is_zero() {
                affine = false;
                break;
            }
            if !(f1 - f0).is_zero() {
                slope_found = true;
                break;
            }
        }
        let later: Vec<(ArrowId, IndexPair)> = section
            .free_coordinates(arrow)
            .into_iter()
            .filter(|c| !c.on_anti_diagonal(n) && pos.precedes(c))
            .map(|c| (arrow, c))
            .collect();
        let (t2_seed, t2_point) = &points[0];
        let zero_partials = partials(desc, t2_point, &later)
            .expect("coordinates in range")
            .iter()
            .all(Scalar::is_zero);
        let ok = affine && slope_found && zero_partials;
        if !ok {
            rec.note(format!(
                "generator {idx}: affine={affine} slope={slope_found} later-partials-zero={zero_partials}"
            ));
        }
        rec.record(ok, *t2_seed);
    }
    rec.failure_bound = Some(bound(system.len(), degree_bound(n), prime));
    rec
}

/// Rank of a dense matrix over `F_p` given as rows.
pub fn rank(mut rows: Vec<Vec<Fp>>) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut r = 0;
    for col in 0..width {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][col].try_inv().expect("nonzero");
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col] * inv;
            let (upper, lower) = rows.split_at_mut(i);
            for (target, &source) in lower[0][col..width].iter_mut().zip(&upper[r][col..width]) {
                *target = *target - factor * source;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Jacobian of the system with respect to all ambient coordinates at a point.
pub fn jacobian(model: &Model, system: &GeneratorSystem, h: &RepPoint<Fp>) -> Vec<Vec<Fp>> {
    let n = model.n;
    let coords: Vec<(ArrowId, IndexPair)> = model
        .quiver
        .arrow_ids()
        .flat_map(|a| (1..=n).flat_map(move |i| (1..=n).map(move |j| (a, IndexPair::new(i, j)))))
        .collect();
    system
        .descriptors
        .iter()
        .map(|d| partials(d, h, &coords).expect("coordinates in range"))
        .collect()
}

/// Full Jacobian rank at a random point of `F_p`-space; one full-rank point
/// proves algebraic independence.
pub fn check_independence(model: &Model, system: &GeneratorSystem, seed: u64, prime: PrimeField) -> CheckRecord {
    let mut rec = CheckRecord::new("independence");
    let mut last = (0, 0);
    let mut witnessed = false;
    for attempt in 0..RANK_RETRIES {
        let point_seed = derive_seed(seed, attempt as u64);
        let h: RepPoint<Fp> = sample_point_with(&model.quiver, model.n, &prime, &mut rng_from_seed(point_seed));
        let r = rank(jacobian(model, system, &h));
        last = (r, point_seed);
        if r == system.len() {
            witnessed = true;
            break;
        }
    }
    if witnessed {
        rec.record(true, last.1);
    } else {
        rec.note(format!("rank {} < {} generators", last.0, system.len()));
        rec.record(false, last.1);
    }
    rec.failure_bound = Some(bound(1, degree_bound(model.n) * system.len(), prime));
    rec
}

/// The system has exactly `Σ_α dim S_α` members and its leading coordinates
/// are exactly the section coordinates.
pub fn check_coverage(model: &Model, system: &GeneratorSystem) -> CheckRecord {
    let mut rec = CheckRecord::new("coverage");
    let section = SectionSpec::new(model);
    let expected = expected_count(model);
    let (outside, uncovered) = system.coverage_gaps(&section);
    let ok = system.len() == expected && system.leading_is_injective() && outside.is_empty() && uncovered.is_empty();
    if !ok {
        rec.note(format!(
            "{} generators for section dimension {expected}; {} section coordinates without a generator",
            system.len(),
            uncovered.len()
        ));
    }
    rec.record(ok, 0);
    rec
}

fn restricted(n: usize, shape: Shape, prime: &PrimeField, rng: &mut impl Rng) -> Matrix<Fp> {
    Matrix::from_fn(n, |i, j| {
        if shape.allows(n, i, j) {
            Fp::random(prime, rng)
        } else {
            prime.element(0)
        }
    })
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

/// Evaluates the four section factorizations at one random point set; returns
/// the first failing family and index pair.
pub fn factorization_failure(n: usize, prime: PrimeField, rng: &mut impl Rng) -> Option<(&'static str, usize, usize)> {
    let x = restricted(n, Shape::Full, &prime, rng);
    let lower = restricted(n, Shape::LowerAnti, &prime, rng);
    let upper = restricted(n, Shape::UpperAnti, &prime, rng);
    let sign = |s: i64| prime.element(s);
    for i in 1..=n {
        let ip = n + 1 - i;
        for k in 1..=n {
            if ip < k {
                let lhs = eval_p(&x, &lower, i, k).ok()?;
                let rhs = x.minor_m(i, k).ok()? * lower.corner_minor(k).ok()?;
                if lhs != rhs {
                    return Some(("P(X,S-)", i, k));
                }
                let lhs = eval_rminus(&x, &upper, i, k).ok()?;
                let rhs = sign(rminus_section_sign(n, i, k))
                    * x.minor(&range(i, n), &range(k - ip + 1, k)).ok()?
                    * upper.corner_minor(n + 1 - k + ip).ok()?;
                if lhs != rhs {
                    return Some(("R-(X,S+)", i, k));
                }
                let lhs = eval_p(&upper, &x, i, k).ok()?;
                let rhs = upper.corner_minor(i).ok()? * x.minor_n(ip, k).ok()?;
                if lhs != rhs {
                    return Some(("P(S+,X)", i, k));
                }
            }
            if ip > k {
                let lhs = eval_rplus(&lower, &x, i, k).ok()?;
                let rhs = sign(rplus_section_sign(n, i, k))
                    * lower.corner_minor(i + k).ok()?
                    * x.minor(&range(i, i + k - 1), &range(1, k)).ok()?;
                if lhs != rhs {
                    return Some(("R+(S-,X)", i, k));
                }
            }
        }
    }
    None
}

/// The four families factor on the section for every admissible `(i, k)`.
pub fn check_factorizations(n: usize, trials: usize, seed: u64, prime: PrimeField) -> CheckRecord {
    let mut rec = CheckRecord::new("factorizations");
    for t in 0..trials {
        let trial_seed = derive_seed(seed, t as u64);
        let failure = factorization_failure(n, prime, &mut rng_from_seed(trial_seed));
        if let Some((family, i, k)) = failure {
            rec.note(format!("{family} fails at (i,k)=({i},{k})"));
        }
        rec.record(failure.is_none(), trial_seed);
    }
    rec.failure_bound = Some(bound(trials, degree_bound(n), prime));
    rec
}

/// Exact round trip over the rationals: reduce a random point of Ω, land in
/// the section, keep every corner minor and every generator value.
pub fn check_reduction(model: &Model, system: &GeneratorSystem, trials: usize, seed: u64) -> CheckRecord {
    let mut rec = CheckRecord::new("reduction");
    let section = SectionSpec::new(model);
    for t in 0..trials {
        let trial_seed = derive_seed(seed, t as u64);
        let mut rng = rng_from_seed(trial_seed);
        let Ok(h) = sample_omega_point_with::<Rational, _>(&model.quiver, model.n, &Rationals, &mut rng) else {
            rec.note("omega sampling failed".into());
            rec.record(false, trial_seed);
            continue;
        };
        let ok = match reduce_round_trip(model, system, &section, &h) {
            Ok(()) => true,
            Err(msg) => {
                rec.note(msg);
                false
            }
        };
        rec.record(ok, trial_seed);
    }
    rec
}

fn reduce_round_trip(
    model: &Model,
    system: &GeneratorSystem,
    section: &SectionSpec,
    h: &RepPoint<Rational>,
) -> Result<(), String> {
    let g = reduce_to_section(h, model).map_err(|e| format!("{e}"))?;
    if !g.matrices().iter().all(Matrix::is_unitriangular) {
        return Err("reduction produced a non-unitriangular element".into());
    }
    let moved = act(&model.quiver, &g, h).map_err(|e| format!("{e}"))?;
    if !section.contains(&moved) {
        return Err("reduced point outside the section".into());
    }
    for a in model.quiver.arrow_ids() {
        for k in 1..=model.n {
            if moved.matrix(a).corner_minor(k) != h.matrix(a).corner_minor(k) {
                return Err(format!("D_{k} of {} changed", model.quiver.arrow_name(a)));
            }
        }
    }
    if values(system, h) != values(system, &moved) {
        return Err("generator values changed".into());
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    pub prime: PrimeField,
    pub mode: LoopMode,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            trials: 100,
            seed: 0,
            prime: PrimeField::default(),
            mode: LoopMode::Extended,
        }
    }
}

/// Runs every check in a fixed order with sub-seeds derived from the master
/// seed by position.
pub fn run_all(model: &Model, options: &VerifyOptions) -> VerificationReport {
    let system = build_system(model, options.mode);
    let sub = |i: u64| derive_seed(options.seed, i);
    let checks = alloc::vec![
        check_invariance(model, &system, options.trials, sub(0), options.prime),
        check_negative_controls(model, &system, sub(1), options.prime),
        check_triangularity(model, &system, sub(2), options.prime),
        check_independence(model, &system, sub(3), options.prime),
        check_coverage(model, &system),
        check_factorizations(model.n, options.trials, sub(5), options.prime),
        check_reduction(model, &system, options.trials, sub(6)),
    ];
    let verdict = if checks.iter().all(CheckRecord::passed) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    VerificationReport {
        config: ConfigEcho {
            n: model.n,
            prime: options.prime.modulus(),
            seed: options.seed,
            trials: options.trials,
            mode: options.mode,
        },
        checks,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::GeneratorKind;

    fn four_vertex(n: usize) -> Model {
        Model::from_names(
            n,
            &["1", "2", "3", "4"],
            &[("a1", "1", "1"), ("a2", "2", "1"), ("a3", "3", "2"), ("a4", "2", "4")],
            &[("1", "a1"), ("2", "a4"), ("3", "a3"), ("4", "a4")],
        )
        .unwrap()
    }

    fn two_loops(n: usize) -> Model {
        Model::from_names(n, &["q"], &[("a", "q", "q"), ("b", "q", "q")], &[("q", "b")]).unwrap()
    }

    #[test]
    fn seeds_are_spread() {
        let seeds: Vec<u64> = (0..100).map(|i| derive_seed(0, i)).collect();
        let mut sorted = seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), seeds.len());
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }

    #[test]
    fn rank_of_small_matrices() {
        let f = PrimeField::default();
        let e = |v: i64| f.element(v);
        assert_eq!(rank(alloc::vec![alloc::vec![e(1), e(2)], alloc::vec![e(2), e(4)]]), 1);
        assert_eq!(rank(alloc::vec![alloc::vec![e(0), e(1)], alloc::vec![e(1), e(0)]]), 2);
        assert_eq!(rank(Vec::new()), 0);
    }

    #[test]
    fn invariance_with_identity_group_is_trivial() {
        let m = four_vertex(3);
        let sys = build_system(&m, LoopMode::Extended);
        let f = PrimeField::default();
        let h: RepPoint<Fp> = crate::quiver::sample_point(&m.quiver, 3, &f, 1);
        let id = GroupElement::identity(&m.quiver, 3, &f);
        assert_eq!(values(&sys, &h), values(&sys, &act(&m.quiver, &id, &h).unwrap()));
    }

    #[test]
    fn four_vertex_passes_every_check() {
        let m = four_vertex(3);
        let report = run_all(
            &m,
            &VerifyOptions {
                trials: 20,
                ..Default::default()
            },
        );
        for c in &report.checks {
            assert!(c.passed(), "{c:?}");
        }
        assert!(report.passed());
    }

    #[test]
    fn corrupted_descriptor_breaks_invariance() {
        let m = four_vertex(3);
        let mut sys = build_system(&m, LoopMode::Extended);
        let f = PrimeField::default();
        assert!(check_invariance(&m, &sys, 5, 1, f).passed());
        // P(X_a3, X_a2) composes across different vertices and is not invariant
        let victim = sys.descriptors.iter_mut().find(|d| d.kind == GeneratorKind::P).unwrap();
        victim.arrows = alloc::vec![ArrowId(2), ArrowId(1)];
        let rec = check_invariance(&m, &sys, 5, 1, f);
        assert!(!rec.passed());
        assert!(rec.counterexample_seed.is_some());
    }

    #[test]
    fn controls_are_detected() {
        let m = four_vertex(2);
        let sys = build_system(&m, LoopMode::Extended);
        let rec = check_negative_controls(&m, &sys, 4, PrimeField::default());
        assert_eq!((rec.trials, rec.passes), (2, 2));
        let rec = check_negative_controls(
            &four_vertex(1),
            &build_system(&four_vertex(1), LoopMode::Extended),
            4,
            PrimeField::default(),
        );
        assert!(rec.passed());
        assert_eq!(rec.trials, 0);
    }

    #[test]
    fn paper_mode_gap() {
        let m = two_loops(2);
        let f = PrimeField::default();
        let paper = build_system(&m, LoopMode::Paper);
        assert!(check_independence(&m, &paper, 0, f).passed());
        assert!(!check_coverage(&m, &paper).passed());
        let ext = build_system(&m, LoopMode::Extended);
        assert!(check_independence(&m, &ext, 0, f).passed());
        assert!(check_coverage(&m, &ext).passed());
        let report = run_all(
            &m,
            &VerifyOptions {
                trials: 5,
                mode: LoopMode::Paper,
                ..Default::default()
            },
        );
        assert!(!report.passed());
        assert!(report.check("independence").unwrap().passed());
        assert!(!report.check("coverage").unwrap().passed());
    }

    #[test]
    fn factorizations_for_small_n() {
        let f = PrimeField::default();
        for n in 1..=5 {
            assert!(check_factorizations(n, 5, n as u64, f).passed(), "n={n}");
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let m = four_vertex(2);
        let opts = VerifyOptions {
            trials: 5,
            seed: 99,
            ..Default::default()
        };
        assert_eq!(run_all(&m, &opts), run_all(&m, &opts));
    }
}
