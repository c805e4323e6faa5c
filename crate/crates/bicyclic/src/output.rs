//! Serialization of enumeration reports: CSV, JSON lines and markdown.
//! Every format round-trips: parsing an emitted document reproduces the
//! in-memory report exactly.

use crate::arith::squarefree_kernel;
use crate::enumerate::{EnumerationReport, FieldRecord};
use crate::imagquad::AbelianGroupStructure;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
    Md,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            "md" => Ok(Format::Md),
            other => Err(Error::BadData(format!("unknown format: {other}"))),
        }
    }
}

/// Parse the group notation used in output: "1", "Z/12", "Z/2xZ/6".
pub fn parse_group_notation(s: &str) -> Result<AbelianGroupStructure> {
    if s == "1" {
        return Ok(AbelianGroupStructure::trivial());
    }
    let elementary_divisors: Vec<u64> = s
        .split('x')
        .map(|part| {
            part.strip_prefix("Z/")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::BadData(format!("bad group notation: {s}")))
        })
        .collect::<Result<_>>()?;
    let g = AbelianGroupStructure { elementary_divisors };
    if !g.is_valid() {
        return Err(Error::BadData(format!("bad divisor chain: {s}")));
    }
    Ok(g)
}

pub fn emit(report: &EnumerationReport, format: Format) -> String {
    match format {
        Format::Csv => emit_csv(report),
        Format::Jsonl => emit_jsonl(report),
        Format::Md => emit_md(report),
    }
}

pub fn parse(text: &str, format: Format) -> Result<EnumerationReport> {
    match format {
        Format::Csv => parse_csv(text),
        Format::Jsonl => parse_jsonl(text),
        Format::Md => parse_md(text),
    }
}

fn emit_csv(report: &EnumerationReport) -> String {
    let mut out = format!(
        "# n={} complete={}\nx,y,d_xy,h1,h2,h3,q,h_k,cl1,cl2,cl3\n",
        report.n, report.complete
    );
    for r in &report.fields {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.x, r.y, r.d_xy, r.h1, r.h2, r.h3, r.q, r.h_k, r.cl1, r.cl2, r.cl3
        )
        .unwrap();
    }
    out
}

fn parse_csv(text: &str) -> Result<EnumerationReport> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::BadData("empty csv document".into()))?;
    let (n, complete) = parse_meta(header)?;
    let columns = lines
        .next()
        .ok_or_else(|| Error::BadData("csv missing column header".into()))?;
    if columns != "x,y,d_xy,h1,h2,h3,q,h_k,cl1,cl2,cl3" {
        return Err(Error::BadData("unexpected csv columns".into()));
    }
    let mut fields = Vec::new();
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 11 {
            return Err(Error::BadData(format!("bad csv row: {line}")));
        }
        let int = |i: usize| -> Result<u64> {
            cells[i]
                .parse()
                .map_err(|_| Error::BadData(format!("bad csv value: {}", cells[i])))
        };
        fields.push(FieldRecord {
            x: int(0)?,
            y: int(1)?,
            d_xy: int(2)?,
            h1: int(3)?,
            h2: int(4)?,
            h3: int(5)?,
            q: int(6)? as u8,
            h_k: int(7)?,
            cl1: parse_group_notation(cells[8])?,
            cl2: parse_group_notation(cells[9])?,
            cl3: parse_group_notation(cells[10])?,
        });
    }
    Ok(EnumerationReport::from_fields(n, complete, fields))
}

#[derive(Serialize, Deserialize)]
struct JsonlHeader {
    n: u64,
    complete: bool,
}

fn emit_jsonl(report: &EnumerationReport) -> String {
    let mut out = serde_json::to_string(&JsonlHeader {
        n: report.n,
        complete: report.complete,
    })
    .unwrap();
    out.push('\n');
    for r in &report.fields {
        out.push_str(&serde_json::to_string(r).unwrap());
        out.push('\n');
    }
    out
}

fn parse_jsonl(text: &str) -> Result<EnumerationReport> {
    let mut lines = text.lines();
    let header: JsonlHeader = serde_json::from_str(
        lines
            .next()
            .ok_or_else(|| Error::BadData("empty jsonl document".into()))?,
    )
    .map_err(|e| Error::BadData(format!("bad jsonl header: {e}")))?;
    let fields = lines
        .map(|line| {
            serde_json::from_str(line).map_err(|e| Error::BadData(format!("bad jsonl row: {e}")))
        })
        .collect::<Result<Vec<FieldRecord>>>()?;
    Ok(EnumerationReport::from_fields(header.n, header.complete, fields))
}

fn emit_md(report: &EnumerationReport) -> String {
    let mut out = format!(
        "# {} fields with class number {} (complete={})\n\n\
         | No. | field | Cl(K1) | Cl(K2) | Cl(K3) |\n\
         |---|---|---|---|---|\n",
        report.fields.len(),
        report.n,
        report.complete
    );
    for (i, r) in report.fields.iter().enumerate() {
        writeln!(
            out,
            "| {} | Q(sqrt(-{}), sqrt(-{})) | {} | {} | {} |",
            i + 1,
            r.x,
            r.y,
            r.cl1,
            r.cl2,
            r.cl3
        )
        .unwrap();
    }
    out
}

fn parse_md(text: &str) -> Result<EnumerationReport> {
    let mut lines = text.lines();
    let title = lines
        .next()
        .ok_or_else(|| Error::BadData("empty markdown document".into()))?;
    let words: Vec<&str> = title.split_whitespace().collect();
    // "# <count> fields with class number <n> (complete=<flag>)"
    if words.len() != 8 || words[2] != "fields" {
        return Err(Error::BadData("unexpected markdown title".into()));
    }
    let n: u64 = words[6]
        .parse()
        .map_err(|_| Error::BadData("bad class number in markdown title".into()))?;
    let complete = match words[7] {
        "(complete=true)" => true,
        "(complete=false)" => false,
        _ => return Err(Error::BadData("bad completeness flag in markdown title".into())),
    };
    let mut fields = Vec::new();
    for line in lines {
        if !line.starts_with('|') || line.starts_with("|---") || line.starts_with("| No.") {
            continue;
        }
        let cells: Vec<&str> = line.trim_matches('|').split('|').map(str::trim).collect();
        if cells.len() != 5 {
            return Err(Error::BadData(format!("bad markdown row: {line}")));
        }
        let (x, y) = parse_field_notation(cells[1])?;
        let cl1 = parse_group_notation(cells[2])?;
        let cl2 = parse_group_notation(cells[3])?;
        let cl3 = parse_group_notation(cells[4])?;
        // The markdown table carries no numeric columns, but they are all
        // determined: the h's are the group orders and Kuroda's formula
        // fixes q.
        let (h1, h2, h3) = (cl1.order(), cl2.order(), cl3.order());
        let q = 2 * n / (h1 * h2 * h3);
        if q != 1 && q != 2 {
            return Err(Error::BadData(format!("inconsistent markdown row: {line}")));
        }
        fields.push(FieldRecord {
            x,
            y,
            d_xy: squarefree_kernel(x as i128 * y as i128).1 as u64,
            h1,
            h2,
            h3,
            q: q as u8,
            h_k: n,
            cl1,
            cl2,
            cl3,
        });
    }
    Ok(EnumerationReport::from_fields(n, complete, fields))
}

fn parse_field_notation(s: &str) -> Result<(u64, u64)> {
    let bad = || Error::BadData(format!("bad field notation: {s}"));
    let inner = s
        .strip_prefix("Q(sqrt(-")
        .and_then(|t| t.strip_suffix("))"))
        .ok_or_else(bad)?;
    let (x, rest) = inner.split_once("), sqrt(-").ok_or_else(bad)?;
    Ok((
        x.parse().map_err(|_| bad())?,
        rest.parse().map_err(|_| bad())?,
    ))
}

fn parse_meta(line: &str) -> Result<(u64, bool)> {
    let rest = line
        .strip_prefix("# n=")
        .ok_or_else(|| Error::BadData("csv missing metadata comment".into()))?;
    let (n, complete) = rest
        .split_once(" complete=")
        .ok_or_else(|| Error::BadData("csv metadata missing completeness".into()))?;
    Ok((
        n.parse().map_err(|_| Error::BadData("bad n in csv metadata".into()))?,
        complete
            .parse()
            .map_err(|_| Error::BadData("bad completeness in csv metadata".into()))?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_fields, EnumerateOptions};
    use once_cell::sync::Lazy;

    static REPORT: Lazy<EnumerationReport> =
        Lazy::new(|| enumerate_fields(2, &EnumerateOptions::default()).unwrap());

    #[test]
    fn csv_round_trip() {
        let text = emit(&REPORT, Format::Csv);
        assert_eq!(parse(&text, Format::Csv).unwrap(), *REPORT);
        assert!(text.starts_with("# n=2 complete=true\nx,y,"));
    }

    #[test]
    fn jsonl_round_trip() {
        let text = emit(&REPORT, Format::Jsonl);
        assert_eq!(parse(&text, Format::Jsonl).unwrap(), *REPORT);
    }

    #[test]
    fn md_round_trip() {
        let text = emit(&REPORT, Format::Md);
        assert_eq!(parse(&text, Format::Md).unwrap(), *REPORT);
        assert!(text.contains("| No. | field | Cl(K1) | Cl(K2) | Cl(K3) |"));
    }

    #[test]
    fn group_notation_round_trip() {
        for g in [
            AbelianGroupStructure::trivial(),
            AbelianGroupStructure::cyclic(12),
            AbelianGroupStructure {
                elementary_divisors: vec![2, 6],
            },
        ] {
            assert_eq!(parse_group_notation(&g.to_string()).unwrap(), g);
        }
        assert!(parse_group_notation("Z/6xZ/2").is_err());
        assert!(parse_group_notation("banana").is_err());
    }

    #[test]
    fn field_notation_round_trip() {
        assert_eq!(parse_field_notation("Q(sqrt(-15), sqrt(-23))").unwrap(), (15, 23));
        assert!(parse_field_notation("Q(sqrt(15), sqrt(-23))").is_err());
    }

    #[test]
    fn format_names() {
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert!("tsv".parse::<Format>().is_err());
    }
}
