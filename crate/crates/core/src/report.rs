//! Run configuration and structured verification reports.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Liealg,
    Sl2,
    Module,
    Gkmod,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "liealg" => Ok(Suite::Liealg),
            "sl2" => Ok(Suite::Sl2),
            "module" => Ok(Suite::Module),
            "gkmod" => Ok(Suite::Gkmod),
            "all" => Ok(Suite::All),
            other => Err(Error::Config(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Figure,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "figure" => Ok(Format::Figure),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

/// Default degree for series-level identities of `Ψ_α`.
pub const DEFAULT_DEPTH: u32 = 12;
/// Default number of randomized elements in the closed-form comparison, per ambient.
pub const DEFAULT_CORPUS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub p: usize,
    pub q: usize,
    pub m: u32,
    pub depth: u32,
    /// Effective window; `None` means the default for `(p, q, m)`.
    pub window: Option<u32>,
    pub suite: Suite,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<String>,
    pub seed: u64,
    pub corpus: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: 2,
            q: 2,
            m: 0,
            depth: DEFAULT_DEPTH,
            window: None,
            suite: Suite::All,
            format: Format::Json,
            out: None,
            seed: 0,
            corpus: DEFAULT_CORPUS,
        }
    }
}

impl RunConfig {
    /// Applies `key=value` lines; `#` starts a comment.
    pub fn apply_kv(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", lineno + 1)))?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| Error::Config(format!("{key}: cannot parse {v:?}")))
        }
        match key {
            "p" => self.p = num(key, value)?,
            "q" => self.q = num(key, value)?,
            "m" => self.m = num(key, value)?,
            "depth" => self.depth = num(key, value)?,
            "window" => self.window = Some(num(key, value)?),
            "suite" => self.suite = value.parse()?,
            "format" => self.format = value.parse()?,
            "out" => self.out = Some(value.to_string()),
            "seed" => self.seed = num(key, value)?,
            "corpus" => self.corpus = num(key, value)?,
            other => return Err(Error::Config(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    fn needs_parity(&self) -> bool {
        matches!(self.suite, Suite::Module | Suite::Gkmod | Suite::All)
    }

    fn needs_gkmod(&self) -> bool {
        matches!(self.suite, Suite::Gkmod | Suite::All)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 || self.q == 0 {
            return Err(Error::Config("p and q must be at least 1".into()));
        }
        if self.needs_parity() && (self.p + self.q) % 2 != 0 {
            return Err(Error::Config(format!(
                "p ≡ q mod 2 is required for the module and gkmod suites, got (p,q)=({},{})",
                self.p, self.q
            )));
        }
        if self.needs_gkmod() && 2 * (self.m as usize + 3) > self.p + self.q {
            return Err(Error::Config(format!(
                "m + 3 ≤ (p+q)/2 is required for the gkmod suite, got (p,q,m)=({},{},{})",
                self.p, self.q, self.m
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inapplicable => "inapplicable",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub details: String,
    /// Kept in memory only so serialized reports stay byte-identical across runs.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckRecord {
    pub fn new(
        name: impl Into<String>,
        anchor: impl Into<String>,
        status: Status,
        details: impl Into<String>,
    ) -> Self {
        CheckRecord {
            name: name.into(),
            anchor: anchor.into(),
            status,
            details: details.into(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn from_bool(
        name: impl Into<String>,
        anchor: impl Into<String>,
        ok: bool,
        details: impl Into<String>,
    ) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        CheckRecord::new(name, anchor, status, details)
    }

    /// Maps an error to `fail`, or to `inapplicable` for closed forms that do not apply.
    pub fn from_error(name: impl Into<String>, anchor: impl Into<String>, err: &Error) -> Self {
        let status = match err {
            Error::Inapplicable(_) => Status::Inapplicable,
            _ => Status::Fail,
        };
        CheckRecord::new(name, anchor, status, err.to_string())
    }
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: serde_json::Value,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: serde_json::Value, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let mut summary = Summary {
            total: checks.len(),
            ..Summary::default()
        };
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Inapplicable => summary.inapplicable += 1,
            }
        }
        Report {
            config,
            checks,
            summary,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,anchor,status,details\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{}\n",
                csv_field(&c.name),
                csv_field(&c.anchor),
                c.status,
                csv_field(&c.details)
            ));
        }
        out
    }
}

/// Quotes a field when it contains a separator, quote or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_parsing() {
        let mut c = RunConfig::default();
        c.apply_kv("p=3\nq = 3 # comment\nsuite=gkmod\n\nwindow=20")
            .unwrap();
        assert_eq!(
            (c.p, c.q, c.suite, c.window),
            (3, 3, Suite::Gkmod, Some(20))
        );
        assert!(c.apply_kv("nonsense").is_err());
        assert!(c.apply_kv("p=x").is_err());
        assert!(c.apply_kv("colour=red").is_err());
    }

    #[test]
    fn gates() {
        let mut c = RunConfig {
            p: 3,
            q: 4,
            ..RunConfig::default()
        };
        assert!(c.validate().is_err());
        c.suite = Suite::Liealg;
        assert!(c.validate().is_ok());
        let c = RunConfig {
            p: 3,
            q: 3,
            m: 1,
            suite: Suite::Gkmod,
            ..RunConfig::default()
        };
        assert!(c.validate().is_err());
    }

    #[test]
    fn sorting_and_summary() {
        let r = Report::new(
            serde_json::json!({}),
            vec![
                CheckRecord::from_bool("b", "x", false, ""),
                CheckRecord::from_bool("a", "x", true, ""),
            ],
        );
        assert_eq!(r.checks[0].name, "a");
        assert_eq!(r.exit_code(), 1);
        assert_eq!(csv_field("a,b"), "\"a,b\"");
    }
}
