//! Command reports. Each one serializes to JSON and renders to text, and the
//! text rendering is a pure function of the serialized fields, so parsing a
//! JSON report and rendering it reproduces the text output exactly.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Width of a digit line in the digit file.
pub const DIGITS_PER_LINE: usize = 80;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Digits(DigitsReport),
    Verify(VerifyReport),
    Ladder(LadderReport),
    Rho(RhoReport),
    Ellipse(EllipseReport),
    Table1(Table1Report),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema: u32,
    #[serde(flatten)]
    pub report: Report,
}

impl Report {
    pub fn render_text(&self) -> String {
        match self {
            Report::Digits(r) => r.render_text(),
            Report::Verify(r) => r.render_text(),
            Report::Ladder(r) => r.render_text(),
            Report::Rho(r) => r.render_text(),
            Report::Ellipse(r) => r.render_text(),
            Report::Table1(r) => r.render_text(),
        }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let env = Envelope {
            schema: SCHEMA_VERSION,
            report: self.clone(),
        };
        serde_json::to_string_pretty(&env).map(|s| s + "\n")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str::<Envelope>(s).map(|e| e.report)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DigitsReport {
    pub scheme: String,
    pub level: u32,
    pub k: u64,
    pub working_digits: u32,
    pub digits: String,
    /// Seconds, as a decimal string.
    pub wall_time: String,
}

impl DigitsReport {
    /// `6.` followed by the fraction in lines of [`DIGITS_PER_LINE`].
    pub fn digit_lines(&self) -> Vec<String> {
        let (head, frac) = self.digits.split_once('.').unwrap_or((self.digits.as_str(), ""));
        let chunks: Vec<&str> = frac
            .as_bytes()
            .chunks(DIGITS_PER_LINE)
            .map(|c| std::str::from_utf8(c).expect("ASCII digits"))
            .collect();
        match chunks.split_first() {
            None => vec![head.to_string()],
            Some((first, rest)) => std::iter::once(format!("{head}.{first}"))
                .chain(rest.iter().map(|s| s.to_string()))
                .collect(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("# 2pi digits scheme={} level={} k={}\n", self.scheme, self.level, self.k);
        for line in self.digit_lines() {
            out.push_str(&line);
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "# k={} scheme={} level={} working_digits={} wall_time={}s",
            self.k, self.scheme, self.level, self.working_digits, self.wall_time
        );
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub id: String,
    pub computed: String,
    pub paper: String,
    #[serde(rename = "match")]
    pub matched: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<VerifyRecord>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &VerifyRecord> {
        self.checks.iter().filter(|c| !c.matched)
    }

    pub fn render_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.matched { "PASS" } else { "FAIL" };
            let _ = write!(out, "{tag}  {:<width$}  computed {}  paper {}", c.id, c.computed, c.paper);
            if let Some(note) = &c.note {
                let _ = write!(out, "  ({note})");
            }
            out.push('\n');
        }
        let failing: Vec<&str> = self.failures().map(|c| c.id.as_str()).collect();
        let passed = self.checks.len() - failing.len();
        if failing.is_empty() {
            let _ = writeln!(out, "verify: {passed}/{} checks pass", self.checks.len());
        } else {
            let _ = writeln!(
                out,
                "verify: {passed}/{} checks pass; failing: {}",
                self.checks.len(),
                failing.join(", ")
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderRow {
    pub level: u32,
    pub alpha: u64,
    /// Signed error in the scheme's convention, scientific notation.
    pub error: String,
    pub error_exponent: i64,
    pub k_correct: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderReport {
    pub scheme: String,
    pub working_digits: u32,
    pub rows: Vec<LadderRow>,
}

impl LadderReport {
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "# ladder scheme={} levels={} working_digits={}\n",
            self.scheme,
            self.rows.len().saturating_sub(1),
            self.working_digits
        );
        let _ = writeln!(out, "{:>5} {:>12} {:>22} {:>8}", "level", "alpha", "error", "k");
        for r in &self.rows {
            let _ = writeln!(out, "{:>5} {:>12} {:>22} {:>8}", r.level, r.alpha, r.error, r.k_correct);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhoRow {
    pub base_label: String,
    pub base: String,
    pub ratio: String,
    pub rho: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhoReport {
    pub precision: u32,
    /// `q` with `R(q) = 2π − 6`.
    pub q: String,
    pub rows: Vec<RhoRow>,
}

impl RhoReport {
    pub fn render_text(&self) -> String {
        let mut out = format!("# rho precision={}\nq = {}  (R(q) = 2pi - 6)\n", self.precision, self.q);
        for r in &self.rows {
            let _ = writeln!(out, "base {} = {}", r.base_label, r.base);
            let _ = writeln!(out, "  ratio = q^(1/5)/base = {}", r.ratio);
            let _ = writeln!(out, "  rho   = ratio^(1/5)  = {}", r.rho);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipseRow {
    pub label: String,
    pub perimeter: String,
    /// `None` when no ellipse with unit minor axis has this perimeter.
    pub d: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipseReport {
    pub precision: u32,
    pub rows: Vec<EllipseRow>,
    /// `R(e^{−2π})/1000`.
    pub comparison: Option<String>,
}

impl EllipseReport {
    pub fn render_text(&self) -> String {
        let mut out = format!("# ellipse b=1 precision={}\n", self.precision);
        for r in &self.rows {
            let d = r.d.as_deref().unwrap_or("none (perimeter below 2pi)");
            let _ = writeln!(out, "p = {}  [{}]\n  d = {}", r.perimeter, r.label, d);
        }
        if let Some(c) = &self.comparison {
            let _ = writeln!(out, "R(e^-2pi)/1000 = {c}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Report {
    pub precision: u32,
    pub values: Vec<NamedValue>,
    pub differences: Vec<NamedValue>,
}

impl Table1Report {
    pub fn render_text(&self) -> String {
        let mut out = format!("# table1 precision={}\n", self.precision);
        let rows = self.values.len().max(self.differences.len() + 1);
        for i in 0..rows {
            let v = self.values.get(i);
            let d = i.checked_sub(1).and_then(|j| self.differences.get(j));
            let _ = write!(
                out,
                "{:<3} {}",
                v.map_or("", |v| v.name.as_str()),
                v.map_or("", |v| v.value.as_str())
            );
            if let Some(d) = d {
                let _ = write!(out, "   {} = {}", d.name, d.value);
            }
            out.push('\n');
        }
        out
    }
}
