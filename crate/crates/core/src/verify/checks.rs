//! Theorem, corollary and proposition checks over exhaustive or sampled subspaces.

use std::collections::HashSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bits::PointSet;
use crate::embed::{self, Arising, EmbedError, Embedding, Universality};
use crate::linalg::nullspace;
use crate::polar::frame::random_partial_frame;
use crate::polar::{frame_span, FrameError, GeometryError, PolarSpace};

use super::plan::{all_subspaces, Mode, SamplePlan, MAX_EXHAUSTIVE_POINTS};
use super::report::{histogram, CheckReport, ReportKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("embedding is a proper quotient; use --preset Q4_2 or `hull`")]
    ProperQuotient,
    #[error("embedding is tagged {0}; theorem checks need a universal embedding")]
    NotUniversal(Universality),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("exhaustive mode needs at most {MAX_EXHAUSTIVE_POINTS} points, space has {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

fn require_universal(emb: &Embedding) -> Result<(), VerifyError> {
    match emb.tag() {
        Universality::Universal => Ok(()),
        Universality::Quotient => Err(VerifyError::ProperQuotient),
        t => Err(VerifyError::NotUniversal(t)),
    }
}

enum Target {
    /// Keep drawing until this many distinct candidates were seen (or the draw cap is hit).
    Distinct,
    /// Exactly `samples` draws.
    Draws,
}

/// Feeds every candidate to `visit`: all subspaces in exhaustive mode, else seeded draws
/// with duplicates skipped.
fn drive(
    space: &PolarSpace,
    plan: &SamplePlan,
    report: &mut CheckReport,
    target: Target,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> PointSet,
    mut visit: impl FnMut(&PointSet, &mut CheckReport),
) -> Result<(), VerifyError> {
    match plan.mode {
        Mode::Exhaustive => {
            let n = space.num_points();
            if n > MAX_EXHAUSTIVE_POINTS {
                return Err(VerifyError::TooLarge(n));
            }
            let subs = all_subspaces(space);
            report.sampled = 1 << n;
            for _ in subs.len()..1 << n {
                report.skip("duplicate");
            }
            for s in &subs {
                visit(s, report);
            }
        }
        Mode::Random => {
            let mut seen = HashSet::new();
            let limit = match target {
                Target::Distinct => plan.draw_cap(),
                Target::Draws => plan.samples,
            };
            let mut index = 0u64;
            while (index as usize) < limit && (matches!(target, Target::Draws) || seen.len() < plan.samples) {
                let s = draw(&mut plan.rng(index));
                index += 1;
                report.sampled += 1;
                if !seen.insert(s.clone()) {
                    report.skip("duplicate");
                    continue;
                }
                visit(&s, report);
            }
            report.note("distinct", seen.len());
        }
    }
    Ok(())
}

fn random_closure(space: &PolarSpace, plan: &SamplePlan, rng: &mut ChaCha8Rng) -> PointSet {
    let seeds = plan.seed_set(space.num_points(), rng);
    space.closure_extend(&space.empty_set(), &seeds)
}

/// Pairwise non-collinear points chosen greedily from a random order.
fn random_partial_ovoid(space: &PolarSpace, plan: &SamplePlan, rng: &mut ChaCha8Rng) -> PointSet {
    let target = rng.random_range(plan.min_seed..=plan.max_seed);
    let mut order: Vec<usize> = (0..space.num_points()).collect();
    order.shuffle(rng);
    let mut set = space.empty_set();
    for p in order {
        if set.len() >= target {
            break;
        }
        if set.iter().all(|x| !space.collinear(x, p)) {
            set.insert(p);
        }
    }
    set
}

/// Adds points in random order while the closure stays proper, until maximal.
fn grow_maximal(space: &PolarSpace, start: PointSet, rng: &mut ChaCha8Rng) -> PointSet {
    let mut s = start;
    loop {
        let mut outside = s.complement().to_vec();
        outside.shuffle(rng);
        let mut grown = false;
        for p in outside {
            if s.contains(p) {
                continue;
            }
            let t = space.closure_extend(&s, &[p]);
            if !t.is_full() {
                s = t;
                grown = true;
            }
        }
        if !grown {
            return s;
        }
    }
}

fn proper_start(space: &PolarSpace, plan: &SamplePlan, rng: &mut ChaCha8Rng) -> PointSet {
    let mut seeds = plan.seed_set(space.num_points(), rng);
    loop {
        let s = space.closure_extend(&space.empty_set(), &seeds);
        if !s.is_full() {
            return s;
        }
        seeds.truncate(seeds.len() / 2);
    }
}

const SUBSPACE_REASONS: &[&str] = &["duplicate", "improper", "singular", "rank_nd_lt_2"];

fn theorem1_report(space: &PolarSpace, name: &str, emb: &Embedding, plan: &SamplePlan) -> Result<CheckReport, VerifyError> {
    let start = Instant::now();
    let mut report = CheckReport::new("theorem1", name, plan.mode, ReportKind::Theorem, SUBSPACE_REASONS);
    let mut sizes = Vec::new();
    drive(space, plan, &mut report, Target::Distinct, |rng| random_closure(space, plan, rng), |s, r| {
        if s.is_full() {
            return r.skip("improper");
        }
        let p = space.profile(s).expect("closures are subspaces");
        if p.is_singular {
            return r.skip("singular");
        }
        if p.rank_nd < 2 {
            return r.skip("rank_nd_lt_2");
        }
        sizes.push(s.len());
        match emb.arising_unchecked(s) {
            Arising::Arises => r.pass(),
            Arising::Fails { witness, .. } => r.fail("non-arising", s, Some(witness)),
        }
    })?;
    report.note("embedding", emb.tag());
    report.note("applicable_sizes", histogram(sizes));
    report.duration_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Every proper non-singular subspace with `rank_nd >= 2` arises from the universal embedding.
pub fn check_theorem1(space: &PolarSpace, name: &str, emb: &Embedding, plan: &SamplePlan) -> Result<CheckReport, VerifyError> {
    require_universal(emb)?;
    check_rank(space)?;
    theorem1_report(space, name, emb, plan)
}

/// [`check_theorem1`] without the universality guard, for studying other embeddings.
pub fn survey_theorem1(space: &PolarSpace, name: &str, emb: &Embedding, plan: &SamplePlan) -> Result<CheckReport, VerifyError> {
    theorem1_report(space, name, emb, plan)
}

fn check_rank(space: &PolarSpace) -> Result<(), VerifyError> {
    if space.polar_rank() < 2 {
        return Err(VerifyError::Precondition(format!("polar rank {} is below 2", space.polar_rank())));
    }
    Ok(())
}

/// Every maximal proper subspace of rank at least 2 is a hyperplane.
pub fn check_corollary2(space: &PolarSpace, name: &str, plan: &SamplePlan) -> Result<CheckReport, VerifyError> {
    check_rank(space)?;
    let start = Instant::now();
    let mut report = CheckReport::new("corollary2", name, plan.mode, ReportKind::Theorem, &["duplicate", "improper", "not_maximal", "rank_lt_2"]);
    let mut sizes = Vec::new();
    let draw = |rng: &mut ChaCha8Rng| {
        let s = proper_start(space, plan, rng);
        grow_maximal(space, s, rng)
    };
    drive(space, plan, &mut report, Target::Draws, draw, |s, r| {
        if s.is_full() {
            return r.skip("improper");
        }
        if !space.is_maximal_subspace(s).expect("proper subspace") {
            return r.skip("not_maximal");
        }
        if space.rank(s) < 2 {
            return r.skip("rank_lt_2");
        }
        sizes.push(s.len());
        match space.disjoint_line(s) {
            None => r.pass(),
            Some(l) => r.fail(format!("maximal subspace misses line {l}"), s, space.lines()[l].first().copied()),
        }
    })?;
    report.note("maximal_sizes", histogram(sizes));
    report.duration_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Hyperplanes of a rank `n > 2` space are maximal and have rank `n-1` or `n`:
/// all singular hyperplanes plus preimages of random projective hyperplanes.
pub fn check_corollary3(space: &PolarSpace, name: &str, emb: &Embedding, plan: &SamplePlan) -> Result<CheckReport, VerifyError> {
    let n = space.polar_rank();
    if n <= 2 {
        return Err(VerifyError::Precondition(format!("polar rank {n} must exceed 2")));
    }
    require_universal(emb)?;
    let start = Instant::now();
    let mut report = CheckReport::new("corollary3", name, Mode::Random, ReportKind::Theorem, &["improper"]);
    let mut classes = [Vec::new(), Vec::new()];
    let mut evaluate = |h: &PointSet, r: &mut CheckReport, bucket: usize| {
        r.sampled += 1;
        if h.is_full() {
            return r.skip("improper");
        }
        let rank = space.rank(h);
        classes[bucket].push((h.len(), rank));
        if !space.is_hyperplane(h).expect("preimages are subspaces") {
            return r.fail("not a hyperplane", h, None);
        }
        if rank + 1 < n || rank > n {
            return r.fail(format!("hyperplane of rank {rank}"), h, None);
        }
        if !space.is_maximal_subspace(h).expect("proper subspace") {
            return r.fail("hyperplane not maximal", h, None);
        }
        r.pass();
    };
    for p in 0..space.num_points() {
        evaluate(&space.singular_hyperplane(p)?, &mut report, 0);
    }
    let f = emb.field();
    let d = emb.ambient_dim();
    for i in 0..plan.samples {
        let mut rng = plan.rng(i as u64);
        let functional: Vec<u8> = loop {
            let c: Vec<u8> = (0..d).map(|_| rng.random_range(0..f.order()) as u8).collect();
            if c.iter().any(|&x| x != 0) {
                break c;
            }
        };
        let h = emb.preimage(&nullspace(f, &[functional], d));
        evaluate(&h, &mut report, 1);
    }
    let fmt = |v: &Vec<(usize, usize)>| {
        let mut counts = std::collections::BTreeMap::new();
        for &k in v {
            *counts.entry(k).or_insert(0usize) += 1;
        }
        counts.iter().map(|((s, r), c)| format!("{s}/r{r}x{c}")).collect::<Vec<_>>().join(",")
    };
    report.note("singular_classes", fmt(&classes[0]));
    report.note("sampled_classes", fmt(&classes[1]));
    report.duration_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Proper subspaces of a polar space with a 3-dimensional projective universal
/// embedding have `rank_nd <= 1`.
pub fn check_prop5(space: &PolarSpace, name: &str, emb: &Embedding, plan: &SamplePlan) -> Result<CheckReport, VerifyError> {
    require_universal(emb)?;
    if emb.ambient_dim() != 4 {
        return Err(VerifyError::Precondition(format!("embedding has vector dimension {}, expected 4", emb.ambient_dim())));
    }
    let start = Instant::now();
    let mut report = CheckReport::new("prop5", name, plan.mode, ReportKind::Theorem, &["duplicate", "improper"]);
    let mut ranks = Vec::new();
    drive(space, plan, &mut report, Target::Distinct, |rng| random_closure(space, plan, rng), |s, r| {
        if s.is_full() {
            return r.skip("improper");
        }
        let p = space.profile(s).expect("closures are subspaces");
        ranks.push(p.rank_nd);
        if p.rank_nd <= 1 {
            r.pass();
        } else {
            r.fail(format!("proper subspace with rank_nd {}", p.rank_nd), s, None);
        }
    })?;
    report.note("rank_nd", histogram(ranks));
    report.duration_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Rank-1 subspaces (including partial ovoids) that do not arise from the embedding.
pub fn search_nonarising_rank1(space: &PolarSpace, name: &str, emb: &Embedding, plan: &SamplePlan) -> Result<CheckReport, VerifyError> {
    let start = Instant::now();
    let mut report = CheckReport::new("rank1-nonarising", name, plan.mode, ReportKind::Search, &["duplicate", "singular", "rank_nd_ne_1"]);
    let mut exhibit_sizes = Vec::new();
    let draw = |rng: &mut ChaCha8Rng| {
        if rng.random_bool(0.5) {
            random_partial_ovoid(space, plan, rng)
        } else {
            random_closure(space, plan, rng)
        }
    };
    drive(space, plan, &mut report, Target::Distinct, draw, |s, r| {
        let p = space.profile(s).expect("candidates are subspaces");
        if p.is_singular {
            return r.skip("singular");
        }
        if p.rank_nd != 1 {
            return r.skip("rank_nd_ne_1");
        }
        match emb.arising_unchecked(s) {
            Arising::Arises => r.pass(),
            Arising::Fails { witness, .. } => {
                exhibit_sizes.push(s.len());
                let kind = if p.rank == 1 { "pairwise non-collinear" } else { "rank_nd 1" };
                r.fail(kind, s, Some(witness));
            }
        }
    })?;
    report.note("embedding", emb.tag());
    report.note("exhibit_sizes", histogram(exhibit_sizes));
    report.duration_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Maximal subspaces of rank 1 in a rank-2 space, classified as hyperplanes (ovoids) or not.
pub fn explore_problem5(space: &PolarSpace, name: &str, plan: &SamplePlan) -> Result<CheckReport, VerifyError> {
    if space.polar_rank() != 2 {
        return Err(VerifyError::Precondition(format!("polar rank {} is not 2", space.polar_rank())));
    }
    let start = Instant::now();
    let mut report = CheckReport::new("problem5", name, plan.mode, ReportKind::Experimental, &["duplicate", "improper", "not_maximal", "rank_ne_1"]);
    let mut ovoids = Vec::new();
    let draw = |rng: &mut ChaCha8Rng| {
        let s = random_partial_ovoid(space, plan, rng);
        grow_maximal(space, s, rng)
    };
    drive(space, plan, &mut report, Target::Distinct, draw, |s, r| {
        if s.is_full() {
            return r.skip("improper");
        }
        if !space.is_maximal_subspace(s).expect("proper subspace") {
            return r.skip("not_maximal");
        }
        if space.rank(s) != 1 {
            return r.skip("rank_ne_1");
        }
        if space.is_hyperplane(s).expect("proper subspace") {
            ovoids.push(s.len());
            r.pass();
        } else {
            r.fail("maximal rank-1 subspace that is not a hyperplane", s, space.disjoint_line(s).map(|l| space.lines()[l][0]));
        }
    })?;
    report.note("ovoid_sizes", histogram(ovoids));
    report.duration_ms = start.elapsed().as_millis();
    Ok(report)
}

/// The universal model in which frame identities are tested.
enum Model {
    Native(Embedding),
    Hull(Box<embed::Hull>),
}

/// Random frames of every rank `2..=n`: F1 to F4, non-degeneracy and rank of the
/// span, `closure(A ∪ B)` equal to the preimage of the embedded span, and
/// embedded span dimension `2k` (the whole ambient when the frame generates).
pub fn check_frames(space: &PolarSpace, name: &str, plan: &SamplePlan) -> Result<CheckReport, VerifyError> {
    let start = Instant::now();
    let n = space.polar_rank();
    let natural = embed::natural_embedding(space);
    let model = match natural.tag() {
        Universality::Quotient => Model::Hull(Box::new(embed::hull_of_symplectic_char2(space)?)),
        _ => Model::Native(natural.clone()),
    };
    let mut report = CheckReport::new("frames", name, Mode::Random, ReportKind::Theorem, &[]);
    report.note("model", match &model {
        Model::Native(e) => format!("natural ({})", e.tag()),
        Model::Hull(_) => "parabolic hull".to_string(),
    });
    let mut ranks = Vec::new();
    let mut generating = 0;
    for i in 0..plan.samples {
        report.sampled += 1;
        let k = 2 + i % (n - 1);
        ranks.push(k);
        let mut rng = plan.rng(i as u64);
        let frame = match random_partial_frame(space, k, &mut rng) {
            Ok(f) => f,
            Err(e) => {
                report.fail(format!("frame axioms: {e}"), &space.empty_set(), None);
                continue;
            }
        };
        let pts = frame.points(space);
        let span = match frame_span(space, &frame) {
            Ok(s) => s,
            Err(FrameError::Span { rank, expected }) => {
                report.fail(format!("span rank {rank}, expected non-degenerate rank {expected}"), &pts, None);
                continue;
            }
            Err(e) => return Err(VerifyError::Precondition(e.to_string())),
        };
        let (closure, preimage, universal_dim) = match &model {
            Model::Native(e) => (span.clone(), e.preimage(&e.projective_span(&pts)), e.projective_span(&pts).dim()),
            Model::Hull(h) => {
                let qpts = h.transport_to_quadric(&pts);
                let w = h.universal.projective_span(&qpts);
                (h.quadric.closure(&qpts), h.universal.preimage(&w), w.dim())
            }
        };
        if closure != preimage {
            let witness = preimage.difference(&closure).first().or_else(|| closure.difference(&preimage).first());
            report.fail("closure differs from preimage of embedded span", &pts, witness);
            continue;
        }
        let native_dim = natural.projective_span(&pts).dim();
        if native_dim != 2 * k || universal_dim != 2 * k {
            report.fail(format!("frame spans dimension {native_dim}/{universal_dim}, expected {}", 2 * k), &pts, None);
            continue;
        }
        if span.is_full() {
            generating += 1;
            if space.ambient_dim() != 2 * n {
                report.fail(format!("generating frame but ambient dimension {}", space.ambient_dim()), &pts, None);
                continue;
            }
        }
        report.pass();
    }
    report.note("frame_ranks", histogram(ranks));
    report.note("generating_frames", generating);
    report.duration_ms = start.elapsed().as_millis();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::natural_embedding;
    use crate::field::Field;
    use crate::forms::{QuadraticForm, SesquilinearForm};
    use std::sync::Arc;

    fn f2() -> Arc<Field> {
        Arc::new(Field::new(2, 1).unwrap())
    }

    fn q42() -> PolarSpace {
        PolarSpace::build(embed::parabolic_quadric(f2(), 2).unwrap()).unwrap()
    }

    fn w32() -> PolarSpace {
        PolarSpace::build(SesquilinearForm::standard_alternating(f2(), 4).unwrap()).unwrap()
    }

    #[test]
    fn theorem1_refuses_quotient() {
        let s = w32();
        let e = natural_embedding(&s);
        assert_eq!(check_theorem1(&s, "W3_2", &e, &SamplePlan::exhaustive(2)).unwrap_err(), VerifyError::ProperQuotient);
    }

    #[test]
    fn theorem1_exhaustive_q42() {
        let s = q42();
        let e = natural_embedding(&s);
        let r = check_theorem1(&s, "Q4_2", &e, &SamplePlan::exhaustive(2)).unwrap();
        assert!(r.is_consistent());
        assert_eq!(r.failed, 0);
        assert!(r.applicable > 0);
        assert_eq!(r.sampled, 1 << 15);
    }

    #[test]
    fn survey_witnesses_replay() {
        let s = w32();
        let e = natural_embedding(&s);
        let r = survey_theorem1(&s, "W3_2", &e, &SamplePlan::exhaustive(2)).unwrap();
        assert!(r.failed > 0);
        for w in &r.witnesses {
            match e.arises_from(&s, &w.set).unwrap() {
                Arising::Fails { witness, .. } => assert_eq!(Some(witness), w.point),
                Arising::Arises => panic!("witness does not replay"),
            }
        }
    }

    #[test]
    fn sampled_runs_are_deterministic_and_consistent() {
        let f3 = Arc::new(Field::new(3, 1).unwrap());
        let s = PolarSpace::build(QuadraticForm::from_terms(f3, 5, &[(0, 0, 1), (1, 2, 1), (3, 4, 1)]).unwrap()).unwrap();
        let e = natural_embedding(&s);
        let plan = SamplePlan::random(3, 40, 2);
        let mut a = check_theorem1(&s, "Q4_3", &e, &plan).unwrap();
        let mut b = check_theorem1(&s, "Q4_3", &e, &plan).unwrap();
        a.duration_ms = 0;
        b.duration_ms = 0;
        assert_eq!(a, b);
        assert!(a.is_consistent());
        assert_eq!(a.sampled - a.skipped("duplicate"), 40);
    }

    #[test]
    fn rank1_search_finds_partial_ovoids_in_q42() {
        let s = q42();
        let e = natural_embedding(&s);
        let r = search_nonarising_rank1(&s, "Q4_2", &e, &SamplePlan::exhaustive(2)).unwrap();
        assert!(r.failed > 0);
        assert!(r.ok());
        for w in &r.witnesses {
            assert!(!s.is_singular(&w.set));
        }
    }

    #[test]
    fn corollary2_and_problem5_small() {
        for s in [w32(), q42()] {
            let r = check_corollary2(&s, "x", &SamplePlan::exhaustive(2)).unwrap();
            assert_eq!(r.failed, 0);
            assert!(r.passed >= 15);
            let r = explore_problem5(&s, "x", &SamplePlan::exhaustive(2)).unwrap();
            assert_eq!((r.passed, r.failed), (6, 0));
        }
    }
}
