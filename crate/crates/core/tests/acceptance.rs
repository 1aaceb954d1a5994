//! Acceptance criteria. Runs as a plain binary and prints one line per criterion.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use copocert::census::{candidate_count, Candidate};
use copocert::graph::EntryVertex;
use copocert::linalg::{int, int_vector, rat, triangle_len};
use copocert::matrices::{horn, rank_one};
use copocert::{
    build_graph, canonical_form, component_analysis, condition_ii_scaling_test,
    dimension_via_graph, eval_quadratic, extract_pattern, extremality_certificate,
    is_copositive, minimal_zeros, reconstruct_pattern, run_census, scale, subdivision_falsifier,
    verify_lemma_2to1, verify_main_theorem, CensusOptions, CensusRecord, DiagonalScaling, Error,
    Precondition, Rational, SymMatrix,
};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: copocert::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn labels(vs: &[EntryVertex]) -> Vec<String> {
    let mut v: Vec<String> = vs.iter().map(|v| v.short_label()).collect();
    v.sort();
    v
}

fn sorted(v: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

fn support_strings(a: &SymMatrix) -> Result<Vec<String>, String> {
    let z = ok(minimal_zeros(a, Precondition::Check))?;
    let mut s: Vec<String> = z.supports().iter().map(|s| s.to_string()).collect();
    s.sort();
    Ok(s)
}

fn census(order: usize) -> Result<Vec<CensusRecord>, String> {
    ok(run_census(order, &CensusOptions::default()))
}

/// Lemma 2 on every zero: a support-two zero of a unit-diagonal matrix has equal coordinates.
fn lemma_two_on_zeros(a: &SymMatrix) -> Check {
    let z = ok(minimal_zeros(a, Precondition::Check))?;
    for zero in z.zeros() {
        ensure!(
            eval_quadratic(a, zero.coordinates()).unwrap().is_zero(),
            "returned vector is not a zero"
        );
        if zero.support().len() == 2 {
            let idx = zero.support().indices();
            let (u, v) = (&zero.coordinates()[idx[0]], &zero.coordinates()[idx[1]]);
            ensure!(u == v, "zero on {} has unequal coordinates", zero.support());
        }
    }
    Ok(())
}

fn ac1_worked_instance() -> Check {
    let a = SymMatrix::from_int_rows(&[&[1, -1], &[-1, 1]]);
    ensure!(is_copositive(&a).copositive, "not copositive");
    let z = ok(minimal_zeros(&a, Precondition::Check))?;
    ensure!(z.len() == 1, "expected one minimal zero, got {}", z.len());
    ensure!(
        z.zeros()[0].coordinates() == [rat(1, 2), rat(1, 2)],
        "zero is not (1/2,1/2)"
    );
    ensure!(z.zeros()[0].support().to_string() == "{1,2}", "wrong support");
    let cert = ok(extremality_certificate(&a, Precondition::Check))?;
    ensure!(cert.nullity == 1, "nullity {}", cert.nullity);
    let g = ok(build_graph(&a, &z))?;
    let edges: Vec<(String, String)> = g
        .edges()
        .iter()
        .map(|(x, y)| (x.short_label(), y.short_label()))
        .collect();
    ensure!(
        edges == [("11".to_string(), "12".to_string()), ("12".to_string(), "22".to_string())],
        "graph is not the path 11-12-22: {edges:?}"
    );
    let r = component_analysis(&g);
    ensure!(dimension_via_graph(&r) == 1, "dimension {}", dimension_via_graph(&r));
    ensure!(ok(reconstruct_pattern(&r))? == a, "reconstruction differs");
    Ok(())
}

fn ac2_rank_one() -> Check {
    let a = rank_one(&[1, -1, 1]);
    ensure!(support_strings(&a)? == ["{1,2}", "{2,3}"], "supports");
    let cert = ok(extremality_certificate(&a, Precondition::Check))?;
    ensure!(cert.nullity == 1, "nullity {}", cert.nullity);
    let z = ok(minimal_zeros(&a, Precondition::Check))?;
    let r = component_analysis(&ok(build_graph(&a, &z))?);
    ensure!(r.components.len() == 1, "components {}", r.components.len());
    let c = &r.components[0];
    ensure!(c.bipartite && c.vertices.len() == 6, "component not bipartite on 6 vertices");
    let (p, q) = c.classes.clone().unwrap();
    let classes = {
        let mut v = vec![labels(&p), labels(&q)];
        v.sort();
        v
    };
    let expected = {
        let mut v = vec![sorted(&["11", "22", "33", "13"]), sorted(&["12", "23"])];
        v.sort();
        v
    };
    ensure!(classes == expected, "classes {classes:?}");
    ensure!(ok(reconstruct_pattern(&r))? == a, "reconstruction differs");

    let b = rank_one(&[1, -2, 1]);
    let z = ok(minimal_zeros(&b, Precondition::Check))?;
    let on_12 = z
        .zeros()
        .iter()
        .find(|z| z.support().to_string() == "{1,2}")
        .ok_or("no minimal zero on {1,2}")?;
    ensure!(
        on_12.coordinates() == [rat(2, 3), rat(1, 3), int(0)],
        "zero on {{1,2}} is not (2/3,1/3,0)"
    );
    ensure!(condition_ii_scaling_test(&b), "scaling condition fails");
    let d = ok(extract_pattern(&b))?;
    ensure!(
        d.scaling == Some(DiagonalScaling::new(int_vector(&[1, 2, 1])).unwrap()),
        "scaling {:?}",
        d.scaling
    );
    Ok(())
}

fn ac3_horn() -> Check {
    let h = horn();
    ensure!(is_copositive(&h).copositive, "Horn not copositive");
    let mut expected = sorted(&["{1,2}", "{2,3}", "{3,4}", "{4,5}", "{1,5}"]);
    expected.sort();
    ensure!(support_strings(&h)? == expected, "supports");
    let z = ok(minimal_zeros(&h, Precondition::Check))?;
    for zero in z.zeros() {
        let idx = zero.support().indices();
        ensure!(
            zero.coordinates()[idx[0]] == rat(1, 2) && zero.coordinates()[idx[1]] == rat(1, 2),
            "zero on {} is not (1/2,1/2)",
            zero.support()
        );
    }
    let cert = ok(extremality_certificate(&h, Precondition::Check))?;
    ensure!(cert.system.rows.len() == 20, "rows {}", cert.system.rows.len());
    ensure!(cert.nullity == 1, "nullity {}", cert.nullity);
    let r = component_analysis(&ok(build_graph(&h, &z))?);
    ensure!(r.components.len() == 1, "components {}", r.components.len());
    ensure!(
        r.components[0].bipartite && r.components[0].vertices.len() == 15,
        "component is not bipartite on all 15 vertices"
    );
    let t = ok(verify_main_theorem(&h))?;
    ensure!(t.p1 && t.p2, "P1 = {}, P2 = {}", t.p1, t.p2);
    Ok(())
}

fn ac4_negative_controls() -> Check {
    for n in [2, 3] {
        for a in [SymMatrix::identity(n), SymMatrix::ones(n)] {
            let z = ok(minimal_zeros(&a, Precondition::Check))?;
            ensure!(z.is_empty(), "order {n}: unexpected zeros");
            let cert = ok(extremality_certificate(&a, Precondition::Check))?;
            ensure!(
                cert.nullity == triangle_len(n) && !cert.extremal,
                "order {n}: nullity {}",
                cert.nullity
            );
        }
    }
    let a = SymMatrix::from_int_rows(&[&[1, -1, 1], &[-1, 1, 1], &[1, 1, 1]]);
    ensure!(is_copositive(&a).copositive, "not copositive");
    let z = ok(minimal_zeros(&a, Precondition::Check))?;
    ensure!(z.len() == 1, "zeros {}", z.len());
    let r = component_analysis(&ok(build_graph(&a, &z))?);
    ensure!(r.bipartite_count == 4, "bipartite components {}", r.bipartite_count);
    ensure!(dimension_via_graph(&r) == 4, "dimension");
    let cert = ok(extremality_certificate(&a, Precondition::Check))?;
    ensure!(!cert.extremal, "reported extremal");
    ensure!(
        reconstruct_pattern(&r) == Err(Error::AmbiguousPattern { bipartite_count: 4 }),
        "reconstruction did not report AmbiguousPattern"
    );
    Ok(())
}

fn ac5_dimension_cross_check() -> Check {
    let mut checked = 0;
    for n in 1..=4 {
        for rec in census(n)?.iter().filter(|r| r.copositive) {
            if rec.minimal_supports.iter().any(|s| s.len() != 2) {
                continue;
            }
            let a = rec.matrix();
            let z = ok(minimal_zeros(&a, Precondition::Certified))?;
            let dim = dimension_via_graph(&component_analysis(&ok(build_graph(&a, &z))?));
            let cert = ok(extremality_certificate(&a, Precondition::Certified))?;
            ensure!(
                dim == cert.nullity,
                "order {n} offdiag {}: graph {dim} vs nullity {}",
                rec.candidate(),
                cert.nullity
            );
            checked += 1;
        }
    }
    ensure!(checked > 0, "no instances checked");
    Ok(())
}

fn ac6_lemmas() -> Check {
    for n in 1..=5 {
        let records = census(n)?;
        let report = verify_lemma_2to1(&records);
        ensure!(report.holds(), "order {n}: {:?}", report.violations);
        for rec in records.iter().filter(|r| r.copositive) {
            lemma_two_on_zeros(&rec.matrix())?;
        }
    }
    Ok(())
}

fn baseline_path(n: usize) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(format!("census_n{n}.txt"))
}

fn ac7_main_theorem_census() -> Check {
    for n in 1..=5 {
        let records = census(n)?;
        let text: String = records.iter().map(|r| r.to_line() + "\n").collect();
        let baseline = std::fs::read_to_string(baseline_path(n)).map_err(|e| e.to_string())?;
        ensure!(text == baseline, "order {n}: census differs from regression baseline");
        let total: u64 = records.iter().map(|r| r.orbit_size).sum();
        ensure!(total == candidate_count(n), "order {n}: orbit sizes do not cover candidates");
    }
    let records = census(5)?;
    let (horn_class, _) = canonical_form(&Candidate::from_matrix(&horn()).unwrap());
    ensure!(
        records
            .iter()
            .any(|r| r.extremal && r.canonical_offdiag == horn_class.offdiag),
        "Horn class missing among extremal records"
    );
    for rec in records.iter().filter(|r| r.extremal) {
        let a = rec.matrix();
        let t = ok(verify_main_theorem(&a))?;
        ensure!(t.p1 && t.p2, "offdiag {}: P1 = {}, P2 = {}", rec.candidate(), t.p1, t.p2);
        let z = ok(minimal_zeros(&a, Precondition::Certified))?;
        let r = component_analysis(&ok(build_graph(&a, &z))?);
        ensure!(r.bipartite_count == 1, "offdiag {}: bipartite count", rec.candidate());
        ensure!(ok(reconstruct_pattern(&r))? == a, "offdiag {}: reconstruction", rec.candidate());
    }
    Ok(())
}

/// Diagonal entries drawn from {1/3, 2/3, ..., 4}.
fn random_scaling(rng: &mut ChaCha8Rng, n: usize) -> DiagonalScaling {
    DiagonalScaling::new((0..n).map(|_| rat(rng.gen_range(1..=12), 3)).collect()).unwrap()
}

fn ac8_scaling_invariance() -> Check {
    let mut extremal: Vec<CensusRecord> = Vec::new();
    for n in 1..=5 {
        extremal.extend(census(n)?.into_iter().filter(|r| r.extremal));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..50 {
        let rec = &extremal[rng.gen_range(0..extremal.len())];
        let sigma = rec.matrix();
        let d = random_scaling(&mut rng, rec.order);
        let a = ok(scale(&sigma, &d))?;
        ensure!(
            support_strings(&a)? == support_strings(&sigma)?,
            "trial {trial}: minimal supports differ"
        );
        let ca = ok(extremality_certificate(&a, Precondition::Check))?;
        let cs = ok(extremality_certificate(&sigma, Precondition::Check))?;
        ensure!(ca.extremal == cs.extremal, "trial {trial}: extremality verdict differs");
        ensure!(condition_ii_scaling_test(&a), "trial {trial}: scaling condition fails");
        let dec = ok(extract_pattern(&a))?;
        ensure!(dec.pattern == sigma, "trial {trial}: recovered pattern differs");
        ensure!(dec.scaling == Some(d), "trial {trial}: recovered scaling differs");
        let t = ok(verify_main_theorem(&a))?;
        ensure!(t.p1 && t.p2, "trial {trial}: main theorem check");
    }
    Ok(())
}

fn random_rational_matrix(rng: &mut ChaCha8Rng) -> SymMatrix {
    let n = rng.gen_range(1..=5);
    SymMatrix::from_fn(n, |_, _| {
        rat(rng.gen_range(-2..=2), rng.gen_range(1..=4))
    })
}

fn ac9_oracle_cross_validation() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut negatives = 0;
    let mut falsified = 0;
    for trial in 0..1000 {
        let a = random_rational_matrix(&mut rng);
        let v = is_copositive(&a);
        if let Some(x) = subdivision_falsifier(&a, 6) {
            falsified += 1;
            ensure!(!v.copositive, "trial {trial}: falsifier found {x:?} but oracle says copositive");
            ensure!(eval_quadratic(&a, &x).unwrap().is_negative(), "trial {trial}: falsifier point");
        }
        if !v.copositive {
            negatives += 1;
            let x = v.violator.as_ref().ok_or(format!("trial {trial}: no violator"))?;
            ensure!(x.iter().all(|xi| !xi.is_negative()), "trial {trial}: violator not nonnegative");
            let q: Rational = eval_quadratic(&a, x).unwrap();
            ensure!(q.is_negative(), "trial {trial}: violator value {q}");
        }
    }
    ensure!(negatives > 0 && falsified > 0, "degenerate sample");
    Ok(())
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion { id: "AC1", name: "worked 2x2 instance", limit: Duration::from_secs(1), run: ac1_worked_instance },
        Criterion { id: "AC2", name: "rank-one instances", limit: Duration::from_secs(1), run: ac2_rank_one },
        Criterion { id: "AC3", name: "Horn matrix", limit: Duration::from_secs(5), run: ac3_horn },
        Criterion { id: "AC4", name: "negative controls", limit: Duration::from_secs(1), run: ac4_negative_controls },
        Criterion { id: "AC5", name: "graph dimension = nullity, census n <= 4", limit: Duration::from_secs(60), run: ac5_dimension_cross_check },
        Criterion { id: "AC6", name: "support-two lemmas, census n <= 5", limit: Duration::from_secs(300), run: ac6_lemmas },
        Criterion { id: "AC7", name: "main theorem on n = 5 census, baselines", limit: Duration::from_secs(1800), run: ac7_main_theorem_census },
        Criterion { id: "AC8", name: "diagonal scaling invariance", limit: Duration::from_secs(300), run: ac8_scaling_invariance },
        Criterion { id: "AC9", name: "oracle vs subdivision falsifier", limit: Duration::from_secs(600), run: ac9_oracle_cross_validation },
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for c in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| c.id.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed <= c.limit {
                Ok(())
            } else {
                Err(format!("took {elapsed:.2?}, limit {:?}", c.limit))
            }
        });
        match result {
            Ok(()) => println!("[PASS] {} {} ({elapsed:.2?})", c.id, c.name),
            Err(e) => {
                failed += 1;
                println!("[FAIL] {} {} ({elapsed:.2?}): {e}", c.id, c.name);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
