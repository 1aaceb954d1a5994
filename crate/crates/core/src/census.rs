//! Census of unit-diagonal symmetric matrices with off-diagonal entries in
//! `{-1, 0, 1}`, up to simultaneous row/column permutation.
//!
//! Pipeline per candidate: canonical-representative check, then the
//! copositivity oracle, minimal zeros and the extremality certificate. Only
//! permutations are quotiented out: sign conjugations do not preserve
//! copositivity, and positive diagonal scalings act trivially on this class.

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::copositivity::copositive_quick;
use crate::error::{Error, Result};
use crate::extremality::{certificate_from_zeros, extremality_certificate};
use crate::linalg::{int, SymMatrix};
use crate::scaling::{condition_ii_scaling_test, extract_pattern, DiagonalScaling, ScalingDecomposition};
use crate::support::Support;
use crate::zeros::{minimal_zeros, Precondition};

pub const MAX_CENSUS_ORDER: usize = 6;
/// Default candidate budget: everything up to order 5.
pub const DEFAULT_MAX_CANDIDATES: u64 = 59_049;

const ALPHABET: [i8; 3] = [-1, 0, 1];

/// Unit-diagonal matrix given by its strictly-upper entries in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Candidate {
    pub order: usize,
    pub offdiag: Vec<i8>,
}

impl Candidate {
    pub fn new(order: usize, offdiag: Vec<i8>) -> Result<Self> {
        if offdiag.len() != pair_count(order) {
            return Err(Error::DimensionMismatch {
                expected: pair_count(order),
                found: offdiag.len(),
            });
        }
        if offdiag.iter().any(|v| !ALPHABET.contains(v)) {
            return Err(Error::Parse("off-diagonal entries must be -1, 0 or 1".into()));
        }
        Ok(Self { order, offdiag })
    }

    /// Reads the off-diagonal pattern of a unit-diagonal `{-1,0,1}` matrix.
    pub fn from_matrix(a: &SymMatrix) -> Option<Self> {
        if !a.is_unit_diagonal() {
            return None;
        }
        let n = a.order();
        let mut offdiag = Vec::with_capacity(pair_count(n));
        for i in 0..n {
            for j in (i + 1)..n {
                let v = a.get(i, j);
                let e = ALPHABET.iter().find(|&&e| *v == int(e as i64))?;
                offdiag.push(*e);
            }
        }
        Some(Self { order: n, offdiag })
    }

    pub fn to_matrix(&self) -> SymMatrix {
        let dense = self.dense();
        SymMatrix::from_fn(self.order, |i, j| int(dense[i][j] as i64))
    }

    #[allow(clippy::needless_range_loop)]
    fn dense(&self) -> [[i8; MAX_CENSUS_ORDER]; MAX_CENSUS_ORDER] {
        let mut m = [[0i8; MAX_CENSUS_ORDER]; MAX_CENSUS_ORDER];
        let mut k = 0;
        for i in 0..self.order {
            m[i][i] = 1;
            for j in (i + 1)..self.order {
                m[i][j] = self.offdiag[k];
                m[j][i] = self.offdiag[k];
                k += 1;
            }
        }
        m
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join_offdiag(&self.offdiag))
    }
}

pub fn pair_count(order: usize) -> usize {
    order * order.saturating_sub(1) / 2
}

pub fn candidate_count(order: usize) -> u64 {
    3u64.pow(pair_count(order) as u32)
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_CENSUS_ORDER {
        return Err(Error::OrderOutOfRange {
            order,
            max: MAX_CENSUS_ORDER,
        });
    }
    Ok(())
}

/// The candidate at `index` in lexicographic order with entry order `(-1, 0, 1)`.
pub fn candidate_at(order: usize, mut index: u64) -> Candidate {
    let m = pair_count(order);
    let mut offdiag = vec![0i8; m];
    for slot in offdiag.iter_mut().rev() {
        *slot = ALPHABET[(index % 3) as usize];
        index /= 3;
    }
    Candidate { order, offdiag }
}

pub fn iterate_candidates(order: usize) -> Result<impl Iterator<Item = Candidate>> {
    check_order(order)?;
    Ok((0..candidate_count(order)).map(move |k| candidate_at(order, k)))
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Compares the off-diagonal tuple of `P A P^T` against `offdiag`.
fn compare_permuted(
    dense: &[[i8; MAX_CENSUS_ORDER]; MAX_CENSUS_ORDER],
    order: usize,
    perm: &[usize],
    offdiag: &[i8],
) -> std::cmp::Ordering {
    let mut k = 0;
    for i in 0..order {
        for j in (i + 1)..order {
            let v = dense[perm[i]][perm[j]];
            match v.cmp(&offdiag[k]) {
                std::cmp::Ordering::Equal => {}
                other => return other,
            }
            k += 1;
        }
    }
    std::cmp::Ordering::Equal
}

fn permuted_offdiag(c: &Candidate, perm: &[usize]) -> Vec<i8> {
    let dense = c.dense();
    let mut out = Vec::with_capacity(c.offdiag.len());
    for i in 0..c.order {
        for j in (i + 1)..c.order {
            out.push(dense[perm[i]][perm[j]]);
        }
    }
    out
}

/// `Some(orbit_size)` iff `c` is the lexicographic minimum of its orbit.
fn canonical_orbit(c: &Candidate, perms: &[Vec<usize>]) -> Option<u64> {
    let dense = c.dense();
    let mut stabilizer = 0u64;
    for p in perms {
        match compare_permuted(&dense, c.order, p, &c.offdiag) {
            std::cmp::Ordering::Less => return None,
            std::cmp::Ordering::Equal => stabilizer += 1,
            std::cmp::Ordering::Greater => {}
        }
    }
    Some(perms.len() as u64 / stabilizer)
}

/// Lexicographic minimum over all simultaneous permutations, with the orbit size.
pub fn canonical_form(c: &Candidate) -> (Candidate, u64) {
    let perms = permutations(c.order);
    let mut best = c.offdiag.clone();
    let mut stabilizer = 0u64;
    for p in &perms {
        let t = permuted_offdiag(c, p);
        if t == c.offdiag {
            stabilizer += 1;
        }
        if t < best {
            best = t;
        }
    }
    (
        Candidate {
            order: c.order,
            offdiag: best,
        },
        perms.len() as u64 / stabilizer,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub order: usize,
    pub canonical_offdiag: Vec<i8>,
    pub copositive: bool,
    pub extremal: bool,
    pub minimal_supports: Vec<Support>,
    pub orbit_size: u64,
}

impl CensusRecord {
    pub fn candidate(&self) -> Candidate {
        Candidate {
            order: self.order,
            offdiag: self.canonical_offdiag.clone(),
        }
    }

    pub fn matrix(&self) -> SymMatrix {
        self.candidate().to_matrix()
    }

    /// `order=.. canonical_offdiag=.. copositive=.. extremal=.. minimal_supports=.. orbit_size=..`
    pub fn to_line(&self) -> String {
        let supports = if self.minimal_supports.is_empty() {
            "-".to_string()
        } else {
            self.minimal_supports
                .iter()
                .map(Support::to_plain)
                .collect::<Vec<_>>()
                .join(";")
        };
        format!(
            "order={} canonical_offdiag={} copositive={} extremal={} minimal_supports={} orbit_size={}",
            self.order,
            join_offdiag(&self.canonical_offdiag),
            self.copositive as u8,
            self.extremal as u8,
            supports,
            self.orbit_size
        )
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("malformed census record ({what}): {line}"));
        let mut fields = std::collections::HashMap::new();
        for token in line.split_whitespace() {
            let (k, v) = token.split_once('=').ok_or_else(|| bad("token"))?;
            fields.insert(k, v);
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| bad(k));
        let order: usize = get("order")?.parse().map_err(|_| bad("order"))?;
        let offdiag_text = get("canonical_offdiag")?;
        let canonical_offdiag = if offdiag_text == "-" {
            Vec::new()
        } else {
            offdiag_text
                .split(',')
                .map(|v| v.parse::<i8>().map_err(|_| bad("canonical_offdiag")))
                .collect::<Result<Vec<_>>>()?
        };
        let flag = |k: &str| match get(k)? {
            "0" => Ok(false),
            "1" => Ok(true),
            _ => Err(bad(k)),
        };
        let supports_text = get("minimal_supports")?;
        let minimal_supports = if supports_text == "-" {
            Vec::new()
        } else {
            supports_text
                .split(';')
                .map(|s| {
                    let idx = s
                        .split(',')
                        .map(|i| match i.parse::<usize>() {
                            Ok(i) if i >= 1 => Ok(i - 1),
                            _ => Err(bad("minimal_supports")),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Support::new(idx, order)
                })
                .collect::<Result<Vec<_>>>()?
        };
        let record = Self {
            order,
            canonical_offdiag,
            copositive: flag("copositive")?,
            extremal: flag("extremal")?,
            minimal_supports,
            orbit_size: get("orbit_size")?.parse().map_err(|_| bad("orbit_size"))?,
        };
        Candidate::new(order, record.canonical_offdiag.clone())?;
        Ok(record)
    }
}

fn join_offdiag(v: &[i8]) -> String {
    if v.is_empty() {
        return "-".into();
    }
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Classifies one canonical candidate.
pub fn analyze_candidate(c: &Candidate, orbit_size: u64) -> Result<CensusRecord> {
    let a = c.to_matrix();
    let mut record = CensusRecord {
        order: c.order,
        canonical_offdiag: c.offdiag.clone(),
        copositive: false,
        extremal: false,
        minimal_supports: Vec::new(),
        orbit_size,
    };
    if !copositive_quick(&a) {
        return Ok(record);
    }
    record.copositive = true;
    let zeros = minimal_zeros(&a, Precondition::Certified)?;
    let cert = certificate_from_zeros(&a, &zeros)?;
    record.extremal = cert.extremal;
    record.minimal_supports = zeros.supports();
    if record.extremal {
        if let Some(s) = record.minimal_supports.iter().find(|s| s.len() != 2) {
            return Err(Error::LemmaViolation(format!(
                "extremal {{-1,0,1}} matrix {} has minimal support {} of size {}",
                c,
                s,
                s.len()
            )));
        }
    }
    Ok(record)
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub max_candidates: u64,
    pub allow_large: bool,
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
    /// Candidates per checkpoint interval.
    pub chunk_size: u64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self {
            max_candidates: DEFAULT_MAX_CANDIDATES,
            allow_large: false,
            checkpoint: None,
            resume: false,
            chunk_size: 1 << 20,
        }
    }
}

struct Checkpoint {
    next_index: u64,
    records: Vec<CensusRecord>,
}

fn write_checkpoint(path: &Path, order: usize, cp: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        writeln!(f, "# copocert census checkpoint")?;
        writeln!(f, "order={order}")?;
        writeln!(f, "next_index={}", cp.next_index)?;
        for r in &cp.records {
            writeln!(f, "{}", r.to_line())?;
        }
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn read_checkpoint(path: &Path, order: usize) -> Result<Checkpoint> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    let bad = || Error::Parse(format!("malformed checkpoint file {}", path.display()));
    let stored_order: usize = lines
        .next()
        .and_then(|l| l.strip_prefix("order="))
        .and_then(|v| v.parse().ok())
        .ok_or_else(bad)?;
    if stored_order != order {
        return Err(Error::Parse(format!(
            "checkpoint is for order {stored_order}, census requested order {order}"
        )));
    }
    let next_index: u64 = lines
        .next()
        .and_then(|l| l.strip_prefix("next_index="))
        .and_then(|v| v.parse().ok())
        .ok_or_else(bad)?;
    let records = lines.map(CensusRecord::parse_line).collect::<Result<Vec<_>>>()?;
    Ok(Checkpoint {
        next_index,
        records,
    })
}

fn process_range(order: usize, range: std::ops::Range<u64>, perms: &[Vec<usize>]) -> Result<Vec<CensusRecord>> {
    let classify = |k: u64| -> Option<Result<CensusRecord>> {
        let c = candidate_at(order, k);
        let orbit = canonical_orbit(&c, perms)?;
        Some(analyze_candidate(&c, orbit))
    };
    #[cfg(feature = "parallel")]
    let out: Vec<Result<CensusRecord>> = range.into_par_iter().filter_map(classify).collect();
    #[cfg(not(feature = "parallel"))]
    let out: Vec<Result<CensusRecord>> = range.filter_map(classify).collect();
    out.into_iter().collect()
}

/// One record per permutation class, sorted by canonical tuple.
pub fn run_census(order: usize, opts: &CensusOptions) -> Result<Vec<CensusRecord>> {
    check_order(order)?;
    let total = candidate_count(order);
    if total > opts.max_candidates && !opts.allow_large {
        return Err(Error::ResourceGuard {
            required: total,
            budget: opts.max_candidates,
        });
    }
    let mut state = match (&opts.checkpoint, opts.resume) {
        (Some(path), true) if path.exists() => read_checkpoint(path, order)?,
        _ => Checkpoint {
            next_index: 0,
            records: Vec::new(),
        },
    };
    let perms = permutations(order);
    let chunk = opts.chunk_size.max(1);
    while state.next_index < total {
        let end = (state.next_index + chunk).min(total);
        let mut records = process_range(order, state.next_index..end, &perms)?;
        state.records.append(&mut records);
        state.next_index = end;
        if let Some(path) = &opts.checkpoint {
            write_checkpoint(path, order, &state)?;
        }
    }
    let mut records = state.records;
    records.sort_by(|a, b| a.canonical_offdiag.cmp(&b.canonical_offdiag));
    Ok(records)
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CensusTotals {
    pub classes: usize,
    pub copositive: usize,
    pub extremal: usize,
    /// Sum of orbit sizes; equals the candidate count.
    pub matrices: u64,
}

pub fn census_totals(records: &[CensusRecord]) -> CensusTotals {
    CensusTotals {
        classes: records.len(),
        copositive: records.iter().filter(|r| r.copositive).count(),
        extremal: records.iter().filter(|r| r.extremal).count(),
        matrices: records.iter().map(|r| r.orbit_size).sum(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LemmaReport {
    pub copositive_checked: usize,
    pub passed: usize,
    pub violations: Vec<String>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every minimal support of every copositive record has exactly two elements.
pub fn verify_lemma_2to1(records: &[CensusRecord]) -> LemmaReport {
    let mut report = LemmaReport::default();
    for r in records.iter().filter(|r| r.copositive) {
        report.copositive_checked += 1;
        let bad: Vec<String> = r
            .minimal_supports
            .iter()
            .filter(|s| s.len() != 2)
            .map(|s| s.to_string())
            .collect();
        if bad.is_empty() {
            report.passed += 1;
        } else {
            report.violations.push(format!(
                "order {} offdiag {}: supports {}",
                r.order,
                join_offdiag(&r.canonical_offdiag),
                bad.join(" ")
            ));
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainTheoremReport {
    /// All minimal supports have cardinality two.
    pub p1: bool,
    /// `A = D Sigma D` with `Sigma` a unit-diagonal `{-1,0,1}` extremal matrix.
    pub p2: bool,
    pub supports: Vec<Support>,
    pub decomposition: Option<ScalingDecomposition>,
    pub pattern_extremal: bool,
}

impl MainTheoremReport {
    pub fn holds(&self) -> bool {
        self.p1 == self.p2
    }

    pub fn scaling(&self) -> Option<&DiagonalScaling> {
        self.decomposition.as_ref().and_then(|d| d.scaling.as_ref())
    }
}

/// Checks that, for a copositive extremal `A`, the minimal supports all having
/// size two coincides with `A` being a diagonal scaling of an extremal
/// unit-diagonal `{-1,0,1}` matrix.
pub fn verify_main_theorem(a: &SymMatrix) -> Result<MainTheoremReport> {
    if !copositive_quick(a) {
        return Err(Error::NotCopositive);
    }
    let zeros = minimal_zeros(a, Precondition::Certified)?;
    let cert = certificate_from_zeros(a, &zeros)?;
    if !cert.extremal {
        return Err(Error::NotExtremalInput);
    }
    let p1 = zeros.all_supports_have_cardinality(2);
    let (decomposition, pattern_extremal) = if condition_ii_scaling_test(a) {
        let d = extract_pattern(a)?;
        let extremal = extremality_certificate(&d.pattern, Precondition::Check)
            .map(|c| c.extremal)
            .unwrap_or(false);
        (Some(d), extremal)
    } else {
        (None, false)
    };
    Ok(MainTheoremReport {
        p1,
        p2: decomposition.is_some() && pattern_extremal,
        supports: zeros.supports(),
        decomposition,
        pattern_extremal,
    })
}
