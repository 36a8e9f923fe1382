use std::fmt::Write as _;

use serde::Serialize;

use super::checks::{
    coset_p_power_count, coset_triples, divisibility_report, frobenius_count, DivisibilityReport,
    FrobeniusCheck, HOM_COUNT_LIMIT,
};
use super::group::{group_generate, FiniteGroupTable, CLOSURE_LIMIT};
use super::perm::Perm;
use super::{GroupError, PrimeSet, Verdict};
use crate::fforacle::{FFMatrix, FieldSpec};

/// Groups checked when no corpus file is given.
pub const DEFAULT_CORPUS: &str = include_str!("../../data/corpus.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl CorpusEntry {
    pub fn generate(&self, limit: usize) -> Result<FiniteGroupTable, GroupError> {
        group_generate(self.degree, &self.generators, limit)
    }
}

/// Parses the corpus format: one group per line, `name degree gen gen ...`.
/// A generator is a run of cycles with no space between `)` and `(`, so
/// `(1 2)(3 4) (1 3)` is two generators. `#` starts a comment.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, GroupError> {
    let mut out: Vec<CorpusEntry> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |msg: String| GroupError::Parse(format!("line {}: {msg}", lineno + 1));
        let (name, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let name = name.to_string();
        let (degree, gens) = rest
            .trim_start()
            .split_once(char::is_whitespace)
            .unwrap_or((rest, ""));
        let degree: usize = degree
            .trim()
            .parse()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| at("expected a positive domain size after the name".into()))?;
        if out.iter().any(|e| e.name == name) {
            return Err(at(format!("duplicate group name '{name}'")));
        }
        let generators = split_generators(gens)
            .into_iter()
            .map(|g| Perm::parse(degree, g).map_err(|e| at(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(CorpusEntry {
            name,
            degree,
            generators,
        });
    }
    Ok(out)
}

fn split_generators(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = None;
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => {
                depth += 1;
                start.get_or_insert(i);
            }
            ')' => depth -= 1,
            c if c.is_whitespace() && depth == 0 => {
                if let Some(st) = start.take() {
                    out.push(&s[st..i]);
                }
            }
            _ => {
                start.get_or_insert(i);
            }
        }
    }
    if let Some(st) = start {
        out.push(&s[st..]);
    }
    out
}

pub fn render_corpus(entries: &[CorpusEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        write!(out, "{} {}", e.name, e.degree).unwrap();
        for g in &e.generators {
            write!(out, " {g}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn default_corpus() -> Vec<CorpusEntry> {
    parse_corpus(DEFAULT_CORPUS).expect("bundled corpus parses")
}

/// Permutations induced by `gens` on the nonzero column vectors of
/// `F_q^n`. Point `c - 1` is the vector whose base-`q` code is `c`, with
/// the first coordinate least significant.
pub fn matrix_group_perms(n: usize, f: &FieldSpec, gens: &[FFMatrix]) -> Vec<Perm> {
    let q = f.order();
    let decode = |mut c: usize| -> Vec<u16> {
        (0..n)
            .map(|_| {
                let d = (c % q) as u16;
                c /= q;
                d
            })
            .collect()
    };
    let points = q.pow(n as u32) - 1;
    gens.iter()
        .map(|a| {
            assert_eq!(a.size(), n, "generator size mismatch");
            let images = (1..=points)
                .map(|c| {
                    let v = decode(c);
                    let code = (0..n).rev().fold(0usize, |acc, i| {
                        let w = (0..n).fold(0, |s, j| f.add(s, f.mul(a.get(i, j), v[j])));
                        acc * q + w as usize
                    });
                    (code - 1) as u32
                })
                .collect();
            Perm::from_images(images).expect("invertible matrix permutes nonzero vectors")
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetFailure {
    pub subgroup_generators: Vec<String>,
    pub x: String,
    pub p: u64,
    pub count: u64,
    pub p_part: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetSummary {
    pub triples_checked: usize,
    pub failures: Vec<CosetFailure>,
    pub verdict: Verdict,
}

/// All checks for one corpus group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSuiteReport {
    pub name: String,
    pub order: usize,
    pub frobenius: Vec<FrobeniusCheck>,
    pub coset: Option<CosetSummary>,
    pub divisibility: Vec<DivisibilityReport>,
    pub verdict: Verdict,
}

/// What [`group_suite`] runs.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Frobenius count for this `n` only, instead of every divisor of `|G|`.
    pub frobenius_n: Option<u64>,
    pub cosets: bool,
    pub ks: Vec<usize>,
    pub sets: Vec<PrimeSet>,
    pub closure_limit: usize,
    /// `None` lifts the tuple-counting ceiling.
    pub max_order: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let sets = [&[][..], &[2], &[3], &[2, 3]]
            .iter()
            .map(|ps| PrimeSet::new(ps.iter().copied()).unwrap())
            .collect();
        SuiteConfig {
            frobenius_n: None,
            cosets: true,
            ks: vec![1, 2, 3],
            sets,
            closure_limit: CLOSURE_LIMIT,
            max_order: Some(HOM_COUNT_LIMIT),
        }
    }
}

/// Frobenius counts, coset triples and divisibility reports for one group.
pub fn group_suite(
    entry: &CorpusEntry,
    config: &SuiteConfig,
) -> Result<GroupSuiteReport, GroupError> {
    let g = entry.generate(config.closure_limit)?;
    let order = g.order() as u64;
    let frobenius: Vec<FrobeniusCheck> = match config.frobenius_n {
        Some(n) => vec![frobenius_count(&g, n)],
        None => (1..=order)
            .filter(|d| order.is_multiple_of(*d))
            .map(|d| frobenius_count(&g, d))
            .collect(),
    };
    let coset = if config.cosets {
        Some(coset_summary(&g)?)
    } else {
        None
    };
    let mut divisibility = Vec::new();
    for &k in &config.ks {
        for s in &config.sets {
            divisibility.push(divisibility_report(&g, k, s, config.max_order)?);
        }
    }
    let verdict = Verdict::all(
        frobenius
            .iter()
            .map(|f| f.verdict)
            .chain(coset.iter().map(|c| c.verdict))
            .chain(divisibility.iter().map(|d| d.verdict)),
    );
    Ok(GroupSuiteReport {
        name: entry.name.clone(),
        order: g.order(),
        frobenius,
        coset,
        divisibility,
        verdict,
    })
}

fn coset_summary(g: &FiniteGroupTable) -> Result<CosetSummary, GroupError> {
    let triples = coset_triples(g);
    let mut failures = Vec::new();
    for t in &triples {
        let c = coset_p_power_count(g, &t.h_gens, t.x, t.p)?;
        if c.verdict == Verdict::Fail {
            failures.push(CosetFailure {
                subgroup_generators: t.h_gens.iter().map(|&h| g.element(h).to_string()).collect(),
                x: g.element(t.x).to_string(),
                p: t.p,
                count: c.count,
                p_part: c.p_part,
            });
        }
    }
    Ok(CosetSummary {
        triples_checked: triples.len(),
        verdict: Verdict::from_bool(failures.is_empty()),
        failures,
    })
}
