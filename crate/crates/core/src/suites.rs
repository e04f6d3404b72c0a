//! Seeded property suites over random diagrams, as run by `skein check`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::bracket::{bracket_classical, bracket_resolve, state_sum_oracle};
use crate::diagram::{random_diagram, Event, GlueMode, Over, RMove, RandomParams, SlicedDiagram};
use crate::error::{Result, SkeinError};
use crate::homology::{ManifoldHomologyData, ManifoldKind};
use crate::jones::{
    framing_insensitivity_check, jones_polynomial, jones_polynomial_with, jones_relation_check, JonesSkeinEvaluator,
    SwitchPolicy,
};
use crate::kauffman::{
    glue_compat_report, kappa, kauffman_formula_values, laminar_basis, przytycki_class, surjectivity_witness,
    KappaEvaluator,
};
use crate::laurent::{reduce_mod, LaurentPoly};

pub const SUITES: &[&str] = &[
    "bracket-axioms",
    "bracket-oracle",
    "isotopy",
    "skein",
    "jones-policies",
    "jones-isotopy",
    "framing",
    "kauffman-formula",
    "kappa",
    "przytycki",
    "glue",
    "surjectivity",
    "reduced-rings",
];

#[derive(Clone, Copy, Debug)]
pub struct SuiteParams {
    pub seed: u64,
    pub count: usize,
    pub max_crossings: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub case_seed: u64,
    pub detail: String,
    pub diagram: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub count: usize,
    pub passed: usize,
    pub failed: usize,
    /// The first few failures, each with the diagram needed to replay it.
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

const KEPT_FAILURES: usize = 5;

enum Outcome {
    Pass,
    Fail(String, Value),
}

fn fail(detail: impl Into<String>, d: &SlicedDiagram) -> Outcome {
    Outcome::Fail(detail.into(), d.to_json())
}

fn expect(cond: bool, detail: impl Into<String>, d: &SlicedDiagram) -> Outcome {
    if cond {
        Outcome::Pass
    } else {
        fail(detail, d)
    }
}

fn closed(seed: u64, max_crossings: usize, max_genus: usize) -> Result<SlicedDiagram> {
    random_diagram(seed, RandomParams::closed(max_crossings, seed as usize % (max_genus + 1)))
}

fn planar(seed: u64, max_crossings: usize) -> Result<SlicedDiagram> {
    random_diagram(seed, RandomParams::closed(max_crossings, 0))
}

fn kind(mv: &RMove) -> usize {
    match mv {
        RMove::R1Add { .. } => 0,
        RMove::R1Remove { .. } => 1,
        RMove::R2Add { .. } => 2,
        RMove::R2Remove { .. } => 3,
        RMove::R3 { .. } => 4,
    }
}

/// A diagram and a move applicable to it. The move kind is drawn uniformly; when `d` has no
/// site of that kind one is created first (a curl, a cancelling pair, or a braid triangle),
/// and the modified diagram is returned as the starting point.
pub fn mutation_pair(d: &SlicedDiagram, rng: &mut ChaCha8Rng) -> Result<(SlicedDiagram, RMove)> {
    let want = rng.gen_range(0..5);
    let mut base = d.clone();
    let sites = base.move_sites();
    if !sites.iter().any(|m| kind(m) == want) {
        let counts = base.counts();
        let (level, slot) = crate::jones::kink_site(&base).ok_or(SkeinError::EmptyNormalization)?;
        let wide: Vec<usize> = (0..counts.len()).filter(|&l| counts[l] >= 3).collect();
        base = match want {
            1 => base.add_kink(level, slot, if rng.gen_bool(0.5) { 1 } else { -1 })?,
            4 if !wide.is_empty() => {
                let l = *wide.choose(rng).unwrap();
                let i = rng.gen_range(0..counts[l] - 2);
                let over = |b: bool| if b { Over::L } else { Over::R };
                let (x, y) = (rng.gen_bool(0.5), rng.gen_bool(0.5));
                // the middle flag equals the outer ones, or the outer two differ
                let z = if rng.gen_bool(0.5) { x } else { !x };
                let y = if x == z { x } else { y };
                // the triangle followed by its inverse braid, so the link is unchanged
                let block = vec![
                    Event::Cross(i, over(x)),
                    Event::Cross(i + 1, over(y)),
                    Event::Cross(i, over(z)),
                    Event::Cross(i, over(!z)),
                    Event::Cross(i + 1, over(!y)),
                    Event::Cross(i, over(!x)),
                ];
                base.splice(l..l, block)?
            }
            _ => {
                let two: Vec<usize> = (0..counts.len()).filter(|&l| counts[l] >= 2).collect();
                let l = *two.choose(rng).ok_or(SkeinError::EmptyNormalization)?;
                let i = rng.gen_range(0..counts[l] - 1);
                base.rmove(RMove::R2Add { level: l, slot: i, over: if rng.gen_bool(0.5) { Over::L } else { Over::R } })?
            }
        };
    }
    let sites = base.move_sites();
    let of_kind: Vec<RMove> = sites.iter().copied().filter(|m| kind(m) == want).collect();
    let mv = *of_kind.choose(rng).or_else(|| sites.choose(rng)).expect("nonempty diagram has move sites");
    Ok((base, mv))
}

/// Bracket factor of a move: `-A^(3 s)` for a curl of sign `s` added, its inverse for a curl
/// removed, 1 otherwise.
fn move_factor(d: &SlicedDiagram, mv: RMove) -> Result<LaurentPoly> {
    Ok(match mv {
        RMove::R1Add { sign, .. } => LaurentPoly::monomial(-1, 3 * sign as i64),
        RMove::R1Remove { event } => {
            let sign = d.unoriented().oriented_canonically().crossing_signs()?
                .into_iter()
                .find(|&(e, _)| e == event + 1)
                .map(|(_, s)| s)
                .unwrap();
            LaurentPoly::monomial(-1, -3 * sign as i64)
        }
        _ => LaurentPoly::one(),
    })
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let n = rng.gen_range(0..5);
    LaurentPoly::from_pairs((0..n).map(|_| (rng.gen_range(-12..=12i64), rng.gen_range(-5..=5i64))))
}

fn case(suite: &str, seed: u64, max_crossings: usize) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5e_ed0f_5ce1);
    Ok(match suite {
        "bracket-axioms" => {
            let d = closed(seed, max_crossings, 2)?;
            let du = d.disjoint_unknot()?;
            let lhs = bracket_resolve(&du, 0)?;
            let rhs = bracket_resolve(&d, 0)?.scale(&LaurentPoly::delta());
            let unknot = bracket_classical(&SlicedDiagram::unknot(), 0)?;
            if unknot.scalar().is_none_or(|s| !s.is_one()) {
                fail("classical bracket of the unknot is not 1", &SlicedDiagram::unknot())
            } else {
                expect(lhs == rhs, format!("<D u U> = {lhs}, delta <D> = {rhs}"), &d)
            }
        }
        "bracket-oracle" => {
            let d = closed(seed, max_crossings.min(10), 2)?;
            let (a, b) = (bracket_resolve(&d, 0)?, state_sum_oracle(&d)?);
            expect(a == b, format!("resolver {a} but oracle {b}"), &d)
        }
        "isotopy" => {
            let (d, mv) = mutation_pair(&closed(seed, max_crossings, 2)?, &mut rng)?;
            let moved = d.rmove(mv)?;
            let want = bracket_resolve(&d, 0)?.scale(&move_factor(&d, mv)?);
            let got = bracket_resolve(&moved, 0)?;
            expect(got == want, format!("{mv:?}: got {got}, expected {want}"), &d)
        }
        "skein" => {
            let mut d = closed(seed, max_crossings, 2)?;
            if d.crossing_count() == 0 {
                d = d.add_kink(1, 0, if rng.gen_bool(0.5) { 1 } else { -1 })?;
            }
            let e = *d.crossing_events().choose(&mut rng).unwrap();
            let triple = d.skein_triple(e)?;
            let data = ManifoldHomologyData::handlebody(d.genus());
            if !jones_relation_check(&triple, &KappaEvaluator { data })? {
                fail(format!("kappa relation fails at event {e}"), &d)
            } else if d.genus() == 0 && !jones_relation_check(&triple, &JonesSkeinEvaluator)? {
                fail(format!("Jones relation fails at event {e}"), &d)
            } else {
                Outcome::Pass
            }
        }
        "jones-policies" => {
            let d = planar(seed, max_crossings)?;
            let (a, sa) = jones_polynomial_with(&d, SwitchPolicy::FirstOffending)?;
            let (b, sb) = jones_polynomial_with(&d, SwitchPolicy::LastOffending)?;
            if sa.measure_violations + sb.measure_violations > 0 {
                fail("recursion measure did not decrease", &d)
            } else {
                expect(a == b, format!("first-offending {a}, last-offending {b}"), &d)
            }
        }
        "jones-isotopy" => {
            let (d, mv) = mutation_pair(&planar(seed, max_crossings)?, &mut rng)?;
            let (a, b) = (jones_polynomial(&d)?, jones_polynomial(&d.rmove(mv)?)?);
            expect(a == b, format!("{mv:?} changed V from {a} to {b}"), &d)
        }
        "framing" => {
            let d = planar(seed, max_crossings)?;
            expect(framing_insensitivity_check(&d)?, "a kink changed V", &d)
        }
        "kauffman-formula" => {
            let d = planar(seed, max_crossings)?;
            let (lhs, rhs) = kauffman_formula_values(&d)?;
            expect(lhs == rhs, format!("bracket route {lhs}, skein route {rhs}"), &d)
        }
        "kappa" => {
            let d = closed(seed, max_crossings, 2)?;
            let data = ManifoldHomologyData::handlebody(d.genus());
            let k = kappa(&d, &data)?;
            let (level, slot) = crate::jones::kink_site(&d).unwrap();
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let kinked = kappa(&d.add_kink(level, slot, sign)?, &data)?;
            let with_loop = kappa(&d.disjoint_unknot()?, &data)?;
            if kinked != k {
                fail(format!("kink of sign {sign} changed kappa"), &d)
            } else {
                expect(
                    with_loop.element == k.element.scale(&LaurentPoly::delta()),
                    "kappa(D u U) is not delta kappa(D)",
                    &d,
                )
            }
        }
        "przytycki" => {
            let mut d = closed(seed, max_crossings, 2)?;
            if d.crossing_count() == 0 {
                d = d.add_kink(1, 0, 1)?;
            }
            let data = ManifoldHomologyData::handlebody(d.genus());
            let e = *d.crossing_events().choose(&mut rng).unwrap();
            let (plus, _, zero) = d.skein_triple(e)?;
            let (p, z) = (przytycki_class(&plus, &data)?, przytycki_class(&zero, &data)?);
            let u = przytycki_class(&d.disjoint_unknot()?, &data)?;
            if p.exponent != z.exponent + 1 || p.class != z.class {
                fail(format!("K+ exponent {} but K0 exponent {}", p.exponent, z.exponent), &d)
            } else {
                expect(u == przytycki_class(&d, &data)?, "adding a trivial loop changed the class", &d)
            }
        }
        "glue" => {
            let (d1, d2, mode) = glue_pair(seed, max_crossings)?;
            let data = |d: &SlicedDiagram| ManifoldHomologyData::handlebody(d.genus());
            let report = glue_compat_report(&d1, &d2, mode, &data(&d1), &data(&d2))?;
            let joined = crate::diagram::glue_diagrams(&d1, &d2, mode)?;
            expect(report.ok(), format!("{mode:?}: {report:?}"), &joined)
        }
        "reduced-rings" => {
            let m = rng.gen_range(0..6u64);
            let n = m * rng.gen_range(0..4u64);
            let (p, q) = (random_poly(&mut rng), random_poly(&mut rng));
            let (pn, qn) = (reduce_mod(&p, n), reduce_mod(&q, n));
            let a2n = reduce_mod(&LaurentPoly::a_pow(2 * n as i64), n);
            let ring_map = (&pn * &qn).project(m)? == &pn.project(m)? * &qn.project(m)?
                && (&pn + &qn).project(m)? == &pn.project(m)? + &qn.project(m)?;
            let ok = a2n.poly().is_one() && ring_map && reduce_mod(&p, 0).poly() == &p;
            expect(ok, format!("n = {n}, m = {m}, p = {p}, q = {q}"), &SlicedDiagram::empty())
        }
        other => return Err(SkeinError::InvalidParams(format!("unknown suite {other:?}"))),
    })
}

/// A random compatible pair: a diagram cut at a random level (stacking), or two closed
/// diagrams next to each other.
pub fn glue_pair(seed: u64, max_crossings: usize) -> Result<(SlicedDiagram, SlicedDiagram, GlueMode)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x91_0e);
    if rng.gen_bool(0.5) {
        let d1 = closed(seed, max_crossings / 2, 2)?;
        let d2 = closed(seed.wrapping_add(1 << 32), max_crossings / 2, 2)?;
        return Ok((d1, d2, GlueMode::SideBySide));
    }
    let d = if rng.gen_bool(0.5) {
        let b = 2 * rng.gen_range(0..=1);
        random_diagram(seed, RandomParams::tangle(max_crossings, b, b + 2 * rng.gen_range(0..=1)))?
    } else {
        closed(seed, max_crossings, 2)?
    };
    // only cut where the lower part keeps no punctures across an open level
    let counts = d.counts();
    let levels: Vec<usize> = (0..=d.events().len()).filter(|&l| d.genus() == 0 || counts[l] == 0).collect();
    let level = *levels.choose(&mut rng).unwrap();
    let (a, b) = d.split_at(level)?;
    Ok((a, b, GlueMode::Stack))
}

fn surjectivity() -> Result<SuiteReport> {
    let mut report = empty_report("surjectivity", 0, 0);
    for g in 0..=3 {
        for class in laminar_basis(g, 3) {
            report.count += 1;
            let (d, hit) = surjectivity_witness(g, &class)?;
            if hit {
                report.passed += 1;
            } else {
                report.failed += 1;
                if report.failures.len() < KEPT_FAILURES {
                    report.failures.push(Failure { case_seed: 0, detail: format!("{class} not hit"), diagram: d.to_json() });
                }
            }
        }
    }
    Ok(report)
}

fn empty_report(suite: &str, seed: u64, count: usize) -> SuiteReport {
    SuiteReport { suite: suite.into(), seed, count, passed: 0, failed: 0, failures: Vec::new() }
}

pub fn run_suite(suite: &str, params: SuiteParams) -> Result<SuiteReport> {
    if suite == "surjectivity" {
        return surjectivity();
    }
    if !SUITES.contains(&suite) {
        return Err(SkeinError::InvalidParams(format!("unknown suite {suite:?}; known: {}", SUITES.join(", "))));
    }
    let mut report = empty_report(suite, params.seed, params.count);
    for i in 0..params.count as u64 {
        let case_seed = params.seed.wrapping_add(i);
        let outcome = case(suite, case_seed, params.max_crossings).unwrap_or_else(|e| {
            Outcome::Fail(format!("error: {e}"), Value::Null)
        });
        match outcome {
            Outcome::Pass => report.passed += 1,
            Outcome::Fail(detail, diagram) => {
                report.failed += 1;
                if report.failures.len() < KEPT_FAILURES {
                    report.failures.push(Failure { case_seed, detail, diagram });
                }
            }
        }
    }
    Ok(report)
}

/// Custom data used to exercise nonzero reduction indices: one puncture whose class pairs
/// with a single `H_2` generator with the given weight.
pub fn weighted_annulus_data(weight: i64) -> ManifoldHomologyData {
    ManifoldHomologyData {
        kind: ManifoldKind::Custom,
        label: format!("weighted-annulus:{weight}"),
        r: 1,
        torsion: Vec::new(),
        s: 1,
        iota: vec![vec![weight]],
        v0: vec![0],
    }
}
