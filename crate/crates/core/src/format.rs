//! On-disk records: one JSON object per solution or brace, and line-delimited
//! streams whose first line is a header. Indices on disk are 0-based.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::braces::SkewBrace;
use crate::enumerate::{EnumerationResult, Filters, Mode};
use crate::error::{Error, Result};
use crate::solutions::{self, Solution};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub format_version: u32,
    pub size: usize,
    /// `sigma[x][y] = σ_x(y)`.
    pub sigma: Vec<Vec<usize>>,
    /// `tau[y][x] = τ_y(x)`.
    pub tau: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_form: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceRecord {
    pub format_version: u32,
    pub size: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_form: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamHeader {
    pub format_version: u32,
    /// `solution` or `brace`.
    pub item_kind: String,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default)]
    pub filters: Filters,
    pub count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involutive: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub non_involutive: Option<usize>,
    /// Recorded for reproducibility; no current computation consumes it.
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Record {
    Solution(SolutionRecord),
    Brace(BraceRecord),
    EnumerationStream(StreamHeader),
}

impl Record {
    pub fn kind(&self) -> &'static str {
        match self {
            Record::Solution(_) => "solution",
            Record::Brace(_) => "brace",
            Record::EnumerationStream(_) => "enumeration-stream",
        }
    }

    fn version(&self) -> u32 {
        match self {
            Record::Solution(r) => r.format_version,
            Record::Brace(r) => r.format_version,
            Record::EnumerationStream(r) => r.format_version,
        }
    }
}

impl SolutionRecord {
    pub fn from_solution(s: &Solution) -> Self {
        SolutionRecord {
            format_version: FORMAT_VERSION,
            size: s.size(),
            sigma: s.sigmas().iter().map(|p| p.images().to_vec()).collect(),
            tau: s.taus().iter().map(|p| p.images().to_vec()).collect(),
            name: None,
            canonical_form: None,
        }
    }

    /// Runs the full validation of [`Solution::verify`].
    pub fn to_solution(&self) -> Result<Solution> {
        Solution::verify(self.size, self.sigma.clone(), self.tau.clone())
    }
}

impl BraceRecord {
    pub fn from_brace(b: &SkewBrace) -> Self {
        BraceRecord {
            format_version: FORMAT_VERSION,
            size: b.size(),
            add: b.add_table(),
            mul: b.mul_table(),
            name: None,
            canonical_form: None,
        }
    }

    pub fn to_brace(&self) -> Result<SkewBrace> {
        if self.add.len() != self.size {
            return Err(Error::DegreeMismatch {
                expected: self.size,
                found: self.add.len(),
            });
        }
        SkewBrace::verify(&self.add, &self.mul)
    }
}

fn check_version(r: &Record) -> Result<()> {
    if r.version() != FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported format_version {}", r.version())));
    }
    Ok(())
}

pub fn parse_record(text: &str) -> Result<Record> {
    let r: Record = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    check_version(&r)?;
    Ok(r)
}

pub fn read_record(path: &Path) -> Result<Record> {
    parse_record(&std::fs::read_to_string(path)?)
}

pub fn to_json(r: &Record) -> String {
    serde_json::to_string_pretty(r).expect("records serialize")
}

pub fn to_json_line(r: &Record) -> String {
    serde_json::to_string(r).expect("records serialize")
}

/// Header line followed by one record per canonical solution.
pub fn solution_stream(result: &EnumerationResult, seed: u64) -> String {
    let header = Record::EnumerationStream(StreamHeader {
        format_version: FORMAT_VERSION,
        item_kind: "solution".into(),
        size: result.n,
        mode: Some(result.mode),
        filters: result.filters,
        count: result.total(),
        involutive: Some(result.involutive),
        non_involutive: Some(result.non_involutive),
        seed,
    });
    let mut out = to_json_line(&header);
    out.push('\n');
    for (form, s) in result.forms.iter().zip(result.solutions()) {
        let mut rec = SolutionRecord::from_solution(&s);
        rec.canonical_form = Some(form.to_hex());
        out.push_str(&to_json_line(&Record::Solution(rec)));
        out.push('\n');
    }
    out
}

pub fn brace_stream(n: usize, braces: &[(crate::canon::CanonicalForm, SkewBrace)], seed: u64) -> String {
    let header = Record::EnumerationStream(StreamHeader {
        format_version: FORMAT_VERSION,
        item_kind: "brace".into(),
        size: n,
        mode: None,
        filters: Filters::default(),
        count: braces.len(),
        involutive: None,
        non_involutive: None,
        seed,
    });
    let mut out = to_json_line(&header);
    out.push('\n');
    for (form, b) in braces {
        let mut rec = BraceRecord::from_brace(b);
        rec.canonical_form = Some(form.to_hex());
        out.push_str(&to_json_line(&Record::Brace(rec)));
        out.push('\n');
    }
    out
}

/// Splits a stream into its header and items, checking the declared count.
pub fn parse_stream(text: &str) -> Result<(StreamHeader, Vec<Record>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = match parse_record(lines.next().ok_or_else(|| Error::Parse("empty stream".into()))?)? {
        Record::EnumerationStream(h) => h,
        other => return Err(Error::Parse(format!("stream starts with a {} record", other.kind()))),
    };
    let items = lines.map(parse_record).collect::<Result<Vec<_>>>()?;
    if items.len() != header.count {
        return Err(Error::Parse(format!(
            "stream declares {} items but has {}",
            header.count,
            items.len()
        )));
    }
    Ok((header, items))
}

/// Solutions of a stream, validated.
pub fn stream_solutions(text: &str) -> Result<Vec<Solution>> {
    let (_, items) = parse_stream(text)?;
    items
        .iter()
        .map(|r| match r {
            Record::Solution(s) => s.to_solution(),
            other => Err(Error::Parse(format!(
                "expected solution records, found {}",
                other.kind()
            ))),
        })
        .collect()
}

/// The canonical representative of a solution as a record carrying its form.
pub fn canonical_record(s: &Solution) -> SolutionRecord {
    let (form, rep) = solutions::canonical_labeling(s);
    let mut rec = SolutionRecord::from_solution(&rep);
    rec.canonical_form = Some(form.to_hex());
    rec
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::enumerate::{enumerate_solutions, EnumerationTask};

    #[test]
    fn solution_round_trip() {
        let s = catalog::four_point_indecomposable();
        let rec = Record::Solution(SolutionRecord::from_solution(&s));
        let text = to_json(&rec);
        assert!(text.contains("\"kind\": \"solution\""));
        let back = parse_record(&text).unwrap();
        assert_eq!(back, rec);
        let Record::Solution(r) = back else { unreachable!() };
        assert_eq!(r.to_solution().unwrap(), s);
    }

    #[test]
    fn brace_round_trip() {
        let b = crate::braces::make_trivial(&crate::groups::library::symmetric(3));
        let rec = Record::Brace(BraceRecord::from_brace(&b));
        let Record::Brace(r) = parse_record(&to_json(&rec)).unwrap() else {
            unreachable!()
        };
        assert_eq!(r.to_brace().unwrap(), b);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_record("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_record(r#"{"kind":"solution","format_version":9,"size":1,"sigma":[[0]],"tau":[[0]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(parse_record(r#"{"kind":"widget"}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn stream_round_trip() {
        let r = enumerate_solutions(&EnumerationTask::new(3, Mode::Involutive)).unwrap();
        let text = solution_stream(&r, 7);
        let (h, items) = parse_stream(&text).unwrap();
        assert_eq!((h.count, h.seed, items.len()), (5, 7, 5));
        let sols = stream_solutions(&text).unwrap();
        assert_eq!(sols, r.solutions().collect::<Vec<_>>());
        let truncated: String = text.lines().take(3).map(|l| format!("{l}\n")).collect();
        assert!(parse_stream(&truncated).is_err());
    }
}
