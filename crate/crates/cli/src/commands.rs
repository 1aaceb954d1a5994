use std::path::{Path, PathBuf};

use copocert::census::DEFAULT_MAX_CANDIDATES;
use copocert::graph::to_dot;
use copocert::{
    build_graph, census_totals, component_analysis, condition_ii_scaling_test, copositive_quick,
    dimension_via_graph, extract_pattern, extremality_certificate, is_copositive, minimal_zeros,
    reconstruct_pattern, run_census, verify_lemma_2to1, verify_main_theorem, CensusOptions,
    Error, Precondition, SymMatrix,
};

use crate::report::{
    indent, matrix, supports, vector, yes_no, Report, EXIT_FAILS, EXIT_GUARD, EXIT_HOLDS,
    EXIT_INPUT,
};

pub const MAX_CANDIDATES_ENV: &str = "COPOCERT_MAX_CANDIDATES";

type Outcome = (Report, u8);

fn load(command: &str, path: &Path) -> Result<SymMatrix, Outcome> {
    copocert::io::read_matrix(path).map_err(|e| {
        let mut r = Report::new(command);
        r.kv("path", path.display()).error(&e);
        (r, EXIT_INPUT)
    })
}

fn failure(mut report: Report, e: &Error) -> Outcome {
    report.error(e);
    let code = match e {
        Error::ResourceGuard { .. } => EXIT_GUARD,
        Error::Parse(_) | Error::Io(_) => EXIT_INPUT,
        _ => EXIT_FAILS,
    };
    (report, code)
}

fn start(command: &str, a: &SymMatrix) -> Report {
    let mut r = Report::new(command);
    r.kv("order", a.order());
    r
}

pub fn check(path: &Path) -> Outcome {
    let a = match load("check", path) {
        Ok(a) => a,
        Err(o) => return o,
    };
    let v = is_copositive(&a);
    let mut r = start("check", &a);
    r.flag("copositive", v.copositive)
        .kv("simplex_minimum", &v.simplex_minimum)
        .kv("minimizer", vector(&v.minimizer))
        .kv(
            "violator",
            v.violator.as_ref().map_or("-".to_string(), |x| vector(x)),
        );
    r.say(format!("copositive: {}", yes_no(v.copositive)))
        .say(format!("simplex minimum: {}", v.simplex_minimum))
        .say(format!("attained at: ({})", vector(&v.minimizer)));
    if let Some(x) = &v.violator {
        r.say(format!("violator: ({})", vector(x)));
    }
    (r, if v.copositive { EXIT_HOLDS } else { EXIT_FAILS })
}

pub fn zeros(path: &Path) -> Outcome {
    let a = match load("zeros", path) {
        Ok(a) => a,
        Err(o) => return o,
    };
    let r = start("zeros", &a);
    let z = match minimal_zeros(&a, Precondition::Check) {
        Ok(z) => z,
        Err(e) => return failure(r, &e),
    };
    let mut r = r;
    r.flag("copositive", true).kv("count", z.len());
    for (k, zero) in z.zeros().iter().enumerate() {
        r.kv(&format!("zero.{}", k + 1), vector(zero.coordinates()));
        r.kv(&format!("support.{}", k + 1), zero.support().to_plain());
    }
    if z.is_empty() {
        r.say("no zeros");
    }
    for zero in z.zeros() {
        r.say(format!("{}  ({})", zero.support(), vector(zero.coordinates())));
    }
    (r, EXIT_HOLDS)
}

pub fn extremal(path: &Path) -> Outcome {
    let a = match load("extremal", path) {
        Ok(a) => a,
        Err(o) => return o,
    };
    let r = start("extremal", &a);
    let cert = match extremality_certificate(&a, Precondition::Check) {
        Ok(c) => c,
        Err(e) => return failure(r, &e),
    };
    let mut r = r;
    r.flag("extremal", cert.extremal)
        .kv("nullity", cert.nullity)
        .kv("rank", cert.rank)
        .kv("unknowns", cert.system.unknowns())
        .kv("rows", cert.system.rows.len());
    for (k, b) in cert.basis.iter().enumerate() {
        r.kv(&format!("basis.{}", k + 1), matrix(b));
    }
    r.say(format!(
        "extremal: {}, nullity: {}",
        yes_no(cert.extremal),
        cert.nullity
    ))
    .say(format!(
        "system: {} equations in {} unknowns, rank {}",
        cert.system.rows.len(),
        cert.system.unknowns(),
        cert.rank
    ));
    (r, if cert.extremal { EXIT_HOLDS } else { EXIT_FAILS })
}

pub fn graph(path: &Path, dot: Option<&Path>) -> Outcome {
    let a = match load("graph", path) {
        Ok(a) => a,
        Err(o) => return o,
    };
    let r = start("graph", &a);
    let g = match minimal_zeros(&a, Precondition::Check).and_then(|z| build_graph(&a, &z)) {
        Ok(g) => g,
        Err(e) => return failure(r, &e),
    };
    let report = component_analysis(&g);
    let mut r = r;
    r.kv("vertices", g.vertex_count())
        .kv("edges", g.edge_count())
        .kv("components", report.components.len())
        .kv("bipartite", report.bipartite_count)
        .kv("dimension", dimension_via_graph(&report));
    let edge_list: Vec<String> = g
        .edges()
        .iter()
        .map(|(x, y)| format!("{}-{}", x.node_name(), y.node_name()))
        .collect();
    r.kv(
        "edge_list",
        if edge_list.is_empty() {
            "-".to_string()
        } else {
            edge_list.join(",")
        },
    );
    match reconstruct_pattern(&report) {
        Ok(p) => {
            r.kv("pattern", matrix(&p));
        }
        Err(e) => {
            r.kv("pattern", "-").kv("pattern_error", e.code());
        }
    }
    r.say(format!(
        "components: {}, bipartite: {}, dimension: {}",
        report.components.len(),
        report.bipartite_count,
        dimension_via_graph(&report)
    ));
    for (k, c) in report.components.iter().enumerate() {
        let names: Vec<String> = c.vertices.iter().map(|v| v.node_name()).collect();
        r.say(format!(
            "component {}: {} [{}]",
            k + 1,
            if c.bipartite { "bipartite" } else { "odd cycle" },
            names.join(" ")
        ));
    }
    if let Some(out) = dot {
        if let Err(e) = std::fs::write(out, to_dot(&g, &report)) {
            return failure(r, &Error::Io(format!("{}: {e}", out.display())));
        }
        r.kv("dot", out.display());
    }
    (r, EXIT_HOLDS)
}

pub fn normalize(path: &Path) -> Outcome {
    let a = match load("normalize", path) {
        Ok(a) => a,
        Err(o) => return o,
    };
    let mut r = start("normalize", &a);
    let passes = condition_ii_scaling_test(&a);
    r.flag("scaling_condition", passes);
    let d = match extract_pattern(&a) {
        Ok(d) => d,
        Err(e) => return failure(r, &e),
    };
    r.kv("pattern", matrix(&d.pattern)).kv(
        "scaling",
        d.scaling
            .as_ref()
            .map_or("implicit".to_string(), |s| vector(s.entries())),
    );
    r.say("pattern:");
    for line in indent(&d.pattern.to_string()) {
        r.say(line);
    }
    match &d.scaling {
        Some(s) => r.say(format!("scaling: diag({})", vector(s.entries()))),
        None => r.say("scaling: implicit (some diagonal entry is not a rational square)"),
    };
    (r, EXIT_HOLDS)
}

fn candidate_budget() -> Result<u64, Error> {
    match std::env::var(MAX_CANDIDATES_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{MAX_CANDIDATES_ENV} must be an integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_CANDIDATES),
    }
}

pub fn census(order: usize, out: Option<&Path>, allow_large: bool, resume: bool) -> Outcome {
    let mut r = Report::new("census");
    r.kv("order", order);
    let max_candidates = match candidate_budget() {
        Ok(b) => b,
        Err(e) => return failure(r, &e),
    };
    if resume && out.is_none() {
        return failure(r, &Error::Parse("--resume needs -o OUT".into()));
    }
    let checkpoint: Option<PathBuf> = out.map(|p| {
        let mut s = p.as_os_str().to_owned();
        s.push(".ckpt");
        PathBuf::from(s)
    });
    let opts = CensusOptions {
        max_candidates,
        allow_large,
        checkpoint: checkpoint.clone(),
        resume,
        ..CensusOptions::default()
    };
    let records = match run_census(order, &opts) {
        Ok(rec) => rec,
        Err(e) => return failure(r, &e),
    };
    let totals = census_totals(&records);
    let lemma = verify_lemma_2to1(&records);
    let mut theorem_failures = Vec::new();
    for rec in records.iter().filter(|rec| rec.extremal) {
        let a = rec.matrix();
        let ok = verify_main_theorem(&a).map(|t| t.holds()).unwrap_or(false)
            && minimal_zeros(&a, Precondition::Certified)
                .and_then(|z| build_graph(&a, &z))
                .map(|g| reconstruct_pattern(&component_analysis(&g)).ok() == Some(a.clone()))
                .unwrap_or(false);
        if !ok {
            theorem_failures.push(rec.candidate().to_string());
        }
    }
    r.kv("candidates", totals.matrices)
        .kv("classes", totals.classes)
        .kv("copositive", totals.copositive)
        .kv("extremal", totals.extremal)
        .kv("lemma_2to1", if lemma.holds() { "pass" } else { "fail" })
        .kv("lemma_2to1_checked", lemma.copositive_checked)
        .kv(
            "main_theorem",
            if theorem_failures.is_empty() { "pass" } else { "fail" },
        );
    for v in &lemma.violations {
        r.say(format!("lemma violation: {v}"));
    }
    for f in &theorem_failures {
        r.say(format!("main theorem check failed for offdiag {f}"));
    }
    r.say(format!(
        "order {order}: {} classes, {} copositive, {} extremal",
        totals.classes, totals.copositive, totals.extremal
    ));
    let lines: String = records.iter().map(|rec| rec.to_line() + "\n").collect();
    match out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &lines) {
                return failure(r, &Error::Io(format!("{}: {e}", p.display())));
            }
            r.kv("output", p.display());
            r.say(format!("{} records written to {}", records.len(), p.display()));
        }
        None => {
            r.trailer(format!("[records]\n{lines}"));
        }
    }
    let ok = lemma.holds() && theorem_failures.is_empty();
    (r, if ok { EXIT_HOLDS } else { EXIT_FAILS })
}

pub fn verify(path: &Path) -> Outcome {
    let a = match load("verify", path) {
        Ok(a) => a,
        Err(o) => return o,
    };
    let r = start("verify", &a);
    if !copositive_quick(&a) {
        return failure(r, &Error::NotCopositive);
    }
    let t = match verify_main_theorem(&a) {
        Ok(t) => t,
        Err(e) => return failure(r, &e),
    };
    let mut r = r;
    r.flag("p1", t.p1)
        .flag("p2", t.p2)
        .flag("equivalent", t.holds())
        .kv("supports", supports(&t.supports))
        .kv(
            "pattern",
            t.decomposition.as_ref().map_or("-".to_string(), |d| matrix(&d.pattern)),
        )
        .flag("pattern_extremal", t.pattern_extremal)
        .kv(
            "scaling",
            match &t.decomposition {
                None => "-".to_string(),
                Some(d) => d
                    .scaling
                    .as_ref()
                    .map_or("implicit".to_string(), |s| vector(s.entries())),
            },
        );
    r.say(format!(
        "all minimal supports of size two: {}",
        yes_no(t.p1)
    ))
    .say(format!(
        "diagonal scaling of an extremal {{-1,0,1}} pattern: {}",
        yes_no(t.p2)
    ))
    .say(format!("equivalence holds: {}", yes_no(t.holds())));
    (r, if t.holds() { EXIT_HOLDS } else { EXIT_FAILS })
}
