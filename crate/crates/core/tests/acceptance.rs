//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//! Every comparison is exact; the only tolerances are the wall-clock bounds and corpus
//! sizes pinned below.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skein::bracket::{bracket_classical, bracket_resolve, state_sum_oracle, BracketElement, LaminarMulticurve};
use skein::cli::parse_diagram_file;
use skein::diagram::{glue_diagrams, random_diagram, GlueMode, RMove, RandomParams, SlicedDiagram};
use skein::homology::{gcd_bound_check, omega, HomClass, ManifoldHomologyData, ManifoldKind, SurfaceMarking};
use skein::jones::kink_site;
use skein::kauffman::{glue_compat_report, kappa, kauffman_formula_values, laminar_basis, przytycki_class, surjectivity_witness};
use skein::laurent::{reduce_mod, substitute_jones_var, JonesPoly, LaurentPoly};
use skein::suites::{glue_pair, mutation_pair, weighted_annulus_data};

const AXIOM_CORPUS: u64 = 100;
const AXIOM_BOUND: Duration = Duration::from_secs(10);
const ORACLE_CORPUS: u64 = 200;
const ORACLE_MAX_CROSSINGS: usize = 10;
const ORACLE_BOUND: Duration = Duration::from_secs(60);
const ISOTOPY_CORPUS: u64 = 200;
const FORMULA_CORPUS: u64 = 200;
const FORMULA_MAX_CROSSINGS: usize = 8;
const FORMULA_BOUND: Duration = Duration::from_secs(300);
const TRIPLE_CORPUS: u64 = 200;
const ANNULUS_BOUND: Duration = Duration::from_secs(1);
const OMEGA_RANGE: i64 = 5;
const PRZYTYCKI_CORPUS: u64 = 200;
const GLUE_CORPUS: u64 = 100;
const RING_CORPUS: u64 = 500;
const SURJECTIVITY_BOUND: Duration = Duration::from_secs(30);
const MAX_CROSSINGS: usize = 8;
const BASE_SEED: u64 = 20_240;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, bound: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < bound, || format!("took {t:?}, bound {bound:?}"))?;
    Ok(t)
}

fn closed(seed: u64, max_crossings: usize, genus: usize) -> SlicedDiagram {
    random_diagram(seed, RandomParams::closed(max_crossings, genus)).expect("generator produces valid diagrams")
}

fn fixture(name: &str) -> SlicedDiagram {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    parse_diagram_file(&path).expect("fixture parses")
}

fn left_trefoil() -> SlicedDiagram {
    fixture("trefoil.json")
}

fn c1_bracket_axioms() -> Outcome {
    let start = Instant::now();
    let u = bracket_classical(&SlicedDiagram::unknot(), 0).map_err(|e| e.to_string())?;
    ensure(u.scalar().is_some_and(LaurentPoly::is_one), || format!("<unknot> = {u}"))?;
    let delta = LaurentPoly::delta();
    for i in 0..AXIOM_CORPUS {
        let seed = BASE_SEED + i;
        let d = closed(seed, MAX_CROSSINGS, (i % 3) as usize);
        let lhs = bracket_resolve(&d.disjoint_unknot().unwrap(), 0).unwrap();
        let rhs = bracket_resolve(&d, 0).unwrap().scale(&delta);
        ensure(lhs == rhs, || format!("seed {seed}: {lhs} vs {rhs} on {}", d.to_json_string()))?;
    }
    let t = within(start, AXIOM_BOUND)?;
    Ok(format!("{AXIOM_CORPUS} diagrams, g <= 2, {t:.2?}"))
}

fn c2_oracle() -> Outcome {
    let start = Instant::now();
    let mut big = 0;
    for i in 0..ORACLE_CORPUS {
        let seed = BASE_SEED + 1000 + i;
        let d = closed(seed, ORACLE_MAX_CROSSINGS, (i % 3) as usize);
        if d.crossing_count() >= 8 {
            big += 1;
        }
        let (a, b) = (bracket_resolve(&d, 0).unwrap(), state_sum_oracle(&d).unwrap());
        ensure(a == b, || format!("seed {seed}: resolver {a}, oracle {b} on {}", d.to_json_string()))?;
    }
    let t = within(start, ORACLE_BOUND)?;
    Ok(format!("{ORACLE_CORPUS} diagrams ({big} with >= 8 crossings), {t:.2?}"))
}

fn c3_regular_isotopy() -> Outcome {
    let mut kinds = [0usize; 5];
    for i in 0..ISOTOPY_CORPUS {
        let seed = BASE_SEED + 2000 + i;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (d, mv) = mutation_pair(&closed(seed, MAX_CROSSINGS, (i % 3) as usize), &mut rng).unwrap();
        let moved = d.rmove(mv).unwrap();
        let before = bracket_resolve(&d, 0).unwrap();
        let after = bracket_resolve(&moved, 0).unwrap();
        let (k, expected) = match mv {
            RMove::R1Add { sign, .. } => {
                // the inserted curl carries the given sign
                let w = moved.unoriented().oriented_canonically().writhe().unwrap()
                    - d.unoriented().oriented_canonically().writhe().unwrap();
                ensure(w == sign as i64, || format!("seed {seed}: curl of sign {sign} changed writhe by {w}"))?;
                (0, before.scale(&LaurentPoly::monomial(-1, 3 * sign as i64)))
            }
            RMove::R1Remove { .. } => {
                let w = d.unoriented().oriented_canonically().writhe().unwrap()
                    - moved.unoriented().oriented_canonically().writhe().unwrap();
                (1, after.scale(&LaurentPoly::monomial(-1, 3 * w)))
            }
            RMove::R2Add { .. } => (2, before.clone()),
            RMove::R2Remove { .. } => (3, before.clone()),
            RMove::R3 { .. } => (4, before.clone()),
        };
        kinds[k] += 1;
        let got = if k == 1 { before } else { after };
        ensure(got == expected, || format!("seed {seed}: {mv:?} gives {got}, expected {expected}"))?;
    }
    ensure(kinds.iter().all(|&n| n > 0), || format!("move kinds not all exercised: {kinds:?}"))?;
    Ok(format!("{ISOTOPY_CORPUS} pairs, r1+/r1-/r2+/r2-/r3 = {kinds:?}"))
}

fn c4_kauffman_formula() -> Outcome {
    let start = Instant::now();
    let want = JonesPoly::from_t_pairs([(-4, -1), (-3, 1), (-1, 1)]);
    let t = left_trefoil();
    ensure(t.writhe().unwrap() == -3, || "trefoil fixture is not left-handed".into())?;
    let (lhs, rhs) = kauffman_formula_values(&t).unwrap();
    ensure(lhs == want && rhs == want, || format!("trefoil: bracket route {lhs}, skein route {rhs}"))?;
    // the oracle route for the same value
    let oracle = state_sum_oracle(&t).unwrap().classical().unwrap();
    let scalar = oracle.scalar().unwrap() * &LaurentPoly::unit_power(9);
    ensure(substitute_jones_var(&scalar).unwrap() == want, || format!("oracle route {scalar}"))?;
    for i in 0..FORMULA_CORPUS {
        let seed = BASE_SEED + 3000 + i;
        let d = closed(seed, FORMULA_MAX_CROSSINGS, 0);
        let (lhs, rhs) = kauffman_formula_values(&d).unwrap();
        ensure(lhs == rhs, || format!("seed {seed}: {lhs} vs {rhs} on {}", d.to_json_string()))?;
    }
    let t = within(start, FORMULA_BOUND)?;
    Ok(format!("trefoil V = {}; {FORMULA_CORPUS} diagrams, {t:.2?}", want.display_t()))
}

fn c5_kappa_well_defined() -> Outcome {
    let a4 = LaurentPoly::a_pow(4);
    let am4 = LaurentPoly::a_pow(-4);
    let k0 = LaurentPoly::from_pairs([(-2, 1), (2, -1)]);
    for i in 0..TRIPLE_CORPUS {
        let seed = BASE_SEED + 4000 + i;
        let g = (i % 3) as usize;
        let data = ManifoldHomologyData::handlebody(g);
        let mut d = closed(seed, MAX_CROSSINGS, g);
        if d.crossing_count() == 0 {
            d = d.add_kink(1, 0, 1).unwrap();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let events = d.crossing_events();
        let e = events[rng.gen_range(0..events.len())];
        let (p, m, z) = d.skein_triple(e).unwrap();
        let (kp, km, kz) = (kappa(&p, &data).unwrap(), kappa(&m, &data).unwrap(), kappa(&z, &data).unwrap());
        ensure(kp.class == km.class && km.class == kz.class, || format!("seed {seed}: triple not homologous"))?;
        let lhs = kp.element.scale(&a4).try_sub(&km.element.scale(&am4)).unwrap();
        let rhs = kz.element.scale(&k0);
        ensure(lhs == rhs, || format!("seed {seed}: {lhs} vs {rhs} on {}", d.to_json_string()))?;
        let (level, slot) = kink_site(&d).unwrap();
        let base = kappa(&d, &data).unwrap();
        for sign in [1, -1] {
            let kinked = kappa(&d.add_kink(level, slot, sign).unwrap(), &data).unwrap();
            ensure(kinked == base, || format!("seed {seed}: kink {sign} changed kappa"))?;
        }
    }
    Ok(format!("{TRIPLE_CORPUS} triples over g in {{0,1,2}}, kinks of both signs"))
}

fn c6_annulus() -> Outcome {
    let start = Instant::now();
    let data = ManifoldHomologyData::handlebody(1);
    let a = kappa(&fixture("annulus-1-1.json"), &data).unwrap();
    let b = kappa(&fixture("annulus-11.json"), &data).unwrap();
    ensure(a.class.free == vec![0] && b.class.free == vec![2], || {
        format!("winding totals {:?} and {:?}", a.class.free, b.class.free)
    })?;
    let z2 = BracketElement::basis(1, LaminarMulticurve::Curves(vec![vec![1], vec![1]]));
    ensure(a.element == z2 && b.element == z2, || format!("images {} and {}", a.element, b.element))?;
    ensure(a.mod2 == b.mod2 && a == b, || format!("tags {:?} and {:?}", a.mod2, b.mod2))?;
    let t = within(start, ANNULUS_BOUND)?;
    Ok(format!("both profiles give 1 * {{{{1}},{{1}}}}, tag {:?}, {t:.2?}", a.mod2))
}

fn classes(rank: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-OMEGA_RANGE..=OMEGA_RANGE).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn c7_omega() -> Outcome {
    let mut checked = 0;
    let mut check = |data: &ManifoldHomologyData, alpha: HomClass, want: u64| -> Result<(), String> {
        let w = omega(data, &alpha).map_err(|e| e.to_string())?;
        checked += 1;
        ensure(w == want, || format!("{}: omega({alpha:?}) = {w}, expected {want}", data.label))
    };
    for g in 0..=3 {
        let h = ManifoldHomologyData::handlebody(g);
        for c in classes(g) {
            check(&h, HomClass::free(c), 0)?;
        }
    }
    check(&ManifoldHomologyData::ball(), HomClass::free(vec![]), 0)?;
    for hg in 1..=2 {
        let vertical = ManifoldHomologyData::closed_surface_times_i(hg, SurfaceMarking::VerticalPair);
        let same = ManifoldHomologyData::closed_surface_times_i(hg, SurfaceMarking::SameSidePair);
        let empty = ManifoldHomologyData::closed_surface_times_i(hg, SurfaceMarking::Empty);
        for c in classes(2 * hg) {
            check(&vertical, HomClass::free(c.clone()), 1)?;
            check(&same, HomClass::free(c.clone()), 0)?;
            check(&empty, HomClass::free(c), 0)?;
        }
    }
    // torsion classes: H_1 = Z/3 + Z/4 with no H_2
    let torsion = ManifoldHomologyData {
        kind: ManifoldKind::Custom,
        label: "torsion".into(),
        r: 0,
        torsion: vec![3, 4],
        s: 0,
        iota: Vec::new(),
        v0: Vec::new(),
    };
    for a in 0..3 {
        for b in 0..4 {
            check(&torsion, HomClass::with_torsion(vec![], vec![a, b]), 0)?;
        }
    }
    Ok(format!("{checked} classes, entries in [-{OMEGA_RANGE}, {OMEGA_RANGE}]"))
}

fn c8_przytycki() -> Outcome {
    for i in 0..PRZYTYCKI_CORPUS {
        let seed = BASE_SEED + 5000 + i;
        let g = (i % 3) as usize;
        let data = ManifoldHomologyData::handlebody(g);
        let mut d = closed(seed, MAX_CROSSINGS, g);
        if d.crossing_count() == 0 {
            d = d.add_kink(1, 0, -1).unwrap();
        }
        let events = d.crossing_events();
        let e = events[(seed as usize) % events.len()];
        let (p, _, z) = d.skein_triple(e).unwrap();
        let (pp, pz) = (przytycki_class(&p, &data).unwrap(), przytycki_class(&z, &data).unwrap());
        ensure(pp.class == pz.class && pp.exponent == pz.exponent + 1, || {
            format!("seed {seed}: K+ {} vs K0 {}", pp.exponent, pz.exponent)
        })?;
        let base = przytycki_class(&d, &data).unwrap();
        let (level, slot) = kink_site(&d).unwrap();
        let kinked = przytycki_class(&d.add_kink(level, slot, 1).unwrap(), &data).unwrap();
        ensure(kinked.exponent == base.exponent + 1, || format!("seed {seed}: kink exponent {}", kinked.exponent))?;
        let with_loop = przytycki_class(&d.disjoint_unknot().unwrap(), &data).unwrap();
        ensure(with_loop == base, || format!("seed {seed}: adding U changed the class"))?;
    }
    // artificial data with omega = 1 on odd classes
    let data = weighted_annulus_data(1);
    let mut mod2_cases = 0;
    for i in 0..PRZYTYCKI_CORPUS / 4 {
        let seed = BASE_SEED + 5500 + i;
        let d = closed(seed, MAX_CROSSINGS, 1);
        let base = przytycki_class(&d, &data).unwrap();
        if base.omega != 1 {
            continue;
        }
        mod2_cases += 1;
        ensure((0..2).contains(&base.exponent), || format!("seed {seed}: exponent {}", base.exponent))?;
        let (level, slot) = kink_site(&d).unwrap();
        let once = d.add_kink(level, slot, 1).unwrap();
        let twice = once.add_kink(level, slot, 1).unwrap();
        let (p1, p2) = (przytycki_class(&once, &data).unwrap(), przytycki_class(&twice, &data).unwrap());
        ensure(p1.exponent != base.exponent && p2.exponent == base.exponent, || {
            format!("seed {seed}: exponents {} {} {}", base.exponent, p1.exponent, p2.exponent)
        })?;
    }
    ensure(mod2_cases > 0, || "no diagram landed in an odd class".into())?;
    Ok(format!("{PRZYTYCKI_CORPUS} instances; {mod2_cases} diagrams with omega = 1 behave mod 2"))
}

fn c9_gluing() -> Outcome {
    let mut modes = [0usize; 2];
    for i in 0..GLUE_CORPUS {
        let seed = BASE_SEED + 6000 + i;
        let (d1, d2, mode) = glue_pair(seed, MAX_CROSSINGS).unwrap();
        modes[(mode == GlueMode::SideBySide) as usize] += 1;
        let glued = glue_diagrams(&d1, &d2, mode).unwrap();
        ensure(glued.writhe().unwrap() == d1.writhe().unwrap() + d2.writhe().unwrap(), || {
            format!("seed {seed}: writhe not additive")
        })?;
        let h = |d: &SlicedDiagram| ManifoldHomologyData::handlebody(d.genus());
        let report = glue_compat_report(&d1, &d2, mode, &h(&d1), &h(&d2)).unwrap();
        ensure(report.ok(), || format!("seed {seed}: {mode:?} {report:?} on {}", glued.to_json_string()))?;
    }
    ensure(modes.iter().all(|&n| n > 0), || format!("modes exercised {modes:?}"))?;
    // the bound itself on artificial weights
    for (w1, w2) in [(4u64, 6u64), (0, 3), (5, 0), (0, 0)] {
        use num_integer::Integer;
        ensure(gcd_bound_check(w1, w2, w1.gcd(&w2)), || format!("gcd bound ({w1}, {w2})"))?;
    }
    Ok(format!("{GLUE_CORPUS} pairs, stack/side-by-side = {modes:?}"))
}

fn c10_reduced_rings() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(BASE_SEED + 7000);
    let poly = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(0..6);
        LaurentPoly::from_pairs((0..n).map(|_| (rng.gen_range(-20..=20i64), rng.gen_range(-9..=9i64))))
    };
    for _ in 0..RING_CORPUS {
        let m = rng.gen_range(0..8u64);
        let n = m * rng.gen_range(0..5u64);
        let (p, q) = (poly(&mut rng), poly(&mut rng));
        ensure(reduce_mod(&LaurentPoly::a_pow(2 * n as i64), n).poly().is_one(), || format!("A^2n != 1 for n = {n}"))?;
        ensure(reduce_mod(&p, 0).poly() == &p, || format!("reduce_mod(p, 0) != p for {p}"))?;
        let (pn, qn) = (reduce_mod(&p, n), reduce_mod(&q, n));
        let proj = |x: &skein::ReducedScalar| x.project(m).unwrap();
        ensure(proj(&(&pn * &qn)) == &proj(&pn) * &proj(&qn), || format!("product, n = {n}, m = {m}"))?;
        ensure(proj(&(&pn + &qn)) == &proj(&pn) + &proj(&qn), || format!("sum, n = {n}, m = {m}"))?;
        ensure(proj(&reduce_mod(&LaurentPoly::one(), n)).poly().is_one(), || "unit".into())?;
    }
    Ok(format!("{RING_CORPUS} random (n, m | n) pairs"))
}

fn c11_surjectivity() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for g in 0..=3 {
        for class in laminar_basis(g, 3) {
            let (d, hit) = surjectivity_witness(g, &class).unwrap();
            ensure(hit, || format!("g = {g}: {class} not hit by {}", d.to_json_string()))?;
            ensure(d.is_oriented() && d.crossing_count() == 0, || format!("witness for {class} is not canonical"))?;
            total += 1;
        }
    }
    let t = within(start, SURJECTIVITY_BOUND)?;
    Ok(format!("{total} basis elements over g <= 3, {t:.2?}"))
}

fn main() {
    // keep the default hook quiet; failures are reported on the criterion line
    std::panic::set_hook(Box::new(|_| {}));
    let criteria: [Criterion; 11] = [
        ("bracket axioms", c1_bracket_axioms),
        ("oracle equivalence", c2_oracle),
        ("regular isotopy", c3_regular_isotopy),
        ("Kauffman's formula", c4_kauffman_formula),
        ("kappa well-defined", c5_kappa_well_defined),
        ("annulus witness", c6_annulus),
        ("omega values", c7_omega),
        ("Przytycki relations", c8_przytycki),
        ("gluing compatibility", c9_gluing),
        ("reduced rings", c10_reduced_rings),
        ("surjectivity witnesses", c11_surjectivity),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {why}", k + 1)
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
