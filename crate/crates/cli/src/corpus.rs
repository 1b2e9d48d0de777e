//! Bundled equation corpus with golden JSON reports.

use std::fs;
use std::path::{Path, PathBuf};

use odepoly_core::polygon::{BasePoint, Flavor};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::analyze::{analyze, AnalyzeOptions, Check, DEFAULT_SEED, DEFAULT_TOLERANCE};
use crate::error::CliError;
use crate::parse::{parse_equation, parse_rational};

/// Corpus shipped with the source tree.
pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub description: String,
    pub equation: String,
    #[serde(default)]
    pub point: Option<String>,
    #[serde(default)]
    pub polygon: Option<String>,
    #[serde(default)]
    pub series: Option<usize>,
    #[serde(default)]
    pub checks: Vec<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

pub fn parse_fixture(text: &str) -> Result<Fixture, CliError> {
    toml::from_str(text).map_err(|e| CliError::Fixture(e.to_string()))
}

pub fn parse_point(s: &str) -> Result<BasePoint, CliError> {
    if s == "generic" {
        Ok(BasePoint::Generic)
    } else {
        Ok(BasePoint::At(parse_rational(s)?))
    }
}

pub fn parse_flavor(s: &str) -> Result<Flavor, CliError> {
    match s {
        "petrovic" => Ok(Flavor::Petrovic),
        "fine" => Ok(Flavor::Fine),
        _ => Err(CliError::Usage(format!("unknown polygon {s:?}"))),
    }
}

pub fn parse_checks<S: AsRef<str>>(names: &[S]) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for n in names {
        let n = n.as_ref().trim();
        if n == "all" {
            out.extend(Check::ALL);
        } else if !n.is_empty() {
            out.push(Check::parse(n)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// True when the check list contains `all`.
pub fn requests_all<S: AsRef<str>>(names: &[S]) -> bool {
    names.iter().any(|n| n.as_ref().trim() == "all")
}

impl Fixture {
    pub fn options(&self) -> Result<AnalyzeOptions, CliError> {
        Ok(AnalyzeOptions {
            point: parse_point(self.point.as_deref().unwrap_or("generic"))?,
            polygon: parse_flavor(self.polygon.as_deref().unwrap_or("petrovic"))?,
            series: self.series,
            checks: parse_checks(&self.checks)?,
            skip_inapplicable: requests_all(&self.checks),
            seed: self.seed.unwrap_or(DEFAULT_SEED),
            tolerance: self.tolerance.unwrap_or(DEFAULT_TOLERANCE),
        })
    }

    /// The report, or an error record when the analysis is refused.
    pub fn report(&self) -> Result<Value, CliError> {
        let opts = self.options()?;
        let f = parse_equation(&self.equation)?;
        Ok(match analyze(&f, &opts) {
            Ok(v) => v,
            Err(e) => json!({ "equation": self.equation, "error": e.to_string(), "exit_code": e.exit_code() }),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Match,
    /// First differing line of the pretty-printed reports.
    Diff { line: usize, expected: String, actual: String },
    MissingGolden,
    Blessed,
    Error(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub name: String,
    pub status: Status,
}

impl Outcome {
    pub fn ok(&self) -> bool {
        matches!(self.status, Status::Match | Status::Blessed)
    }
}

pub fn render_report(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn first_diff(expected: &str, actual: &str) -> Status {
    let (mut e, mut a) = (expected.lines(), actual.lines());
    let mut line = 1;
    loop {
        match (e.next(), a.next()) {
            (None, None) => return Status::Match,
            (x, y) if x == y => line += 1,
            (x, y) => {
                return Status::Diff {
                    line,
                    expected: x.unwrap_or("<end>").to_string(),
                    actual: y.unwrap_or("<end>").to_string(),
                }
            }
        }
    }
}

/// Fixture names in `dir/fixtures`, sorted, filtered by a glob on the name.
pub fn fixture_names(dir: &Path, filter: Option<&str>) -> Result<Vec<String>, CliError> {
    let pattern = filter
        .map(glob::Pattern::new)
        .transpose()
        .map_err(|e| CliError::Usage(format!("bad filter: {e}")))?;
    let fixtures = dir.join("fixtures");
    let entries = fs::read_dir(&fixtures).map_err(|source| CliError::Io { path: fixtures.display().to_string(), source })?;
    let mut names: Vec<String> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .filter_map(|p| p.file_stem().map(|s| s.to_string_lossy().into_owned()))
        .filter(|n| pattern.as_ref().is_none_or(|p| p.matches(n)))
        .collect();
    names.sort();
    Ok(names)
}

fn run_one(dir: &Path, name: &str, bless: bool) -> Outcome {
    let status = (|| -> Result<Status, CliError> {
        let path = dir.join("fixtures").join(format!("{name}.toml"));
        let text = fs::read_to_string(&path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        let actual = render_report(&parse_fixture(&text)?.report()?);
        let golden = dir.join("golden").join(format!("{name}.json"));
        if bless {
            fs::write(&golden, &actual).map_err(|source| CliError::Io { path: golden.display().to_string(), source })?;
            return Ok(Status::Blessed);
        }
        match fs::read_to_string(&golden) {
            Ok(expected) => Ok(first_diff(&expected, &actual)),
            Err(_) => Ok(Status::MissingGolden),
        }
    })()
    .unwrap_or_else(|e| Status::Error(e.to_string()));
    Outcome { name: name.to_string(), status }
}

/// Runs every selected fixture in parallel; results are ordered by name.
pub fn run(dir: &Path, filter: Option<&str>, bless: bool) -> Result<Vec<Outcome>, CliError> {
    let names = fixture_names(dir, filter)?;
    if bless {
        let golden = dir.join("golden");
        fs::create_dir_all(&golden).map_err(|source| CliError::Io { path: golden.display().to_string(), source })?;
    }
    Ok(names.par_iter().map(|n| run_one(dir, n, bless)).collect())
}

pub fn summary_line(o: &Outcome) -> String {
    match &o.status {
        Status::Match => format!("ok       {}", o.name),
        Status::Blessed => format!("blessed  {}", o.name),
        Status::MissingGolden => format!("missing  {} (no golden report; run with --bless)", o.name),
        Status::Diff { line, expected, actual } => {
            format!("DIFF     {} line {line}\n  expected: {expected}\n  actual:   {actual}", o.name)
        }
        Status::Error(e) => format!("ERROR    {}: {e}", o.name),
    }
}
