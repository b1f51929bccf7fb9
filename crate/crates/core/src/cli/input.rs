//! Estimate ingestion: CSV (`value,uncertainty[,label]`) or JSON lines
//! (`{"value": .., "uncertainty": .., "label": ..}`).

use std::str::FromStr;

use thiserror::Error;

use crate::estimates::SourceEstimate;
use crate::numfmt::parse_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    /// JSON lines if the first non-blank character is `{`, CSV otherwise.
    #[default]
    Auto,
    Csv,
    Jsonl,
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(InputFormat::Auto),
            "csv" => Ok(InputFormat::Csv),
            "jsonl" | "ndjson" => Ok(InputFormat::Jsonl),
            other => Err(format!("unknown input format `{other}` (auto, csv, jsonl)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("line {line}: {message}")]
    Record { line: u64, message: String },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("input contains no estimates")]
    Empty,
}

fn record_err(line: u64, message: impl Into<String>) -> InputError {
    InputError::Record {
        line,
        message: message.into(),
    }
}

/// Parses estimates from `text` in the given format.
pub fn parse_estimates(text: &str, format: InputFormat) -> Result<Vec<SourceEstimate>, InputError> {
    let format = match format {
        InputFormat::Auto if text.trim_start().starts_with('{') => InputFormat::Jsonl,
        InputFormat::Auto => InputFormat::Csv,
        f => f,
    };
    let out = match format {
        InputFormat::Jsonl => parse_jsonl(text)?,
        _ => parse_csv(text)?,
    };
    if out.is_empty() {
        return Err(InputError::Empty);
    }
    Ok(out)
}

fn parse_jsonl(text: &str) -> Result<Vec<SourceEstimate>, InputError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str::<SourceEstimate>(l)
                .map_err(|e| record_err(i as u64 + 1, e.to_string()))
        })
        .collect()
}

fn parse_csv(text: &str) -> Result<Vec<SourceEstimate>, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());

    let mut out = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let record = record?;
        let line = record.position().map_or(idx as u64 + 1, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if !(2..=3).contains(&record.len()) {
            return Err(record_err(
                line,
                format!("expected value,uncertainty[,label], got {} fields", record.len()),
            ));
        }
        let value = parse_f64(&record[0]);
        // a non-numeric first row is a header
        if value.is_none() && out.is_empty() && idx == 0 {
            continue;
        }
        let value = value.ok_or_else(|| record_err(line, format!("bad value `{}`", &record[0])))?;
        let uncertainty = parse_f64(&record[1])
            .ok_or_else(|| record_err(line, format!("bad uncertainty `{}`", &record[1])))?;
        let mut estimate =
            SourceEstimate::new(value, uncertainty).map_err(|e| record_err(line, e.to_string()))?;
        if let Some(label) = record.get(2).filter(|l| !l.is_empty()) {
            estimate = estimate.with_label(label);
        }
        out.push(estimate);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(xs: &[SourceEstimate]) -> Vec<(f64, f64)> {
        xs.iter().map(|e| (e.value(), e.uncertainty())).collect()
    }

    #[test]
    fn csv_with_and_without_header() {
        let a = parse_estimates("0,1\n1,2\n", InputFormat::Auto).unwrap();
        let b = parse_estimates("value,uncertainty\n0,1\n1,2", InputFormat::Csv).unwrap();
        assert_eq!(pairs(&a), vec![(0.0, 1.0), (1.0, 2.0)]);
        assert_eq!(pairs(&a), pairs(&b));
    }

    #[test]
    fn csv_labels_and_infinity() {
        let xs = parse_estimates("1.5, Inf, oracle\n2,0.5,\n# note\n3,inf", InputFormat::Csv).unwrap();
        assert_eq!(xs.len(), 3);
        assert_eq!(xs[0].label(), Some("oracle"));
        assert!(xs[0].is_utterly_uncertain());
        assert_eq!(xs[1].label(), None);
        assert!(xs[2].is_utterly_uncertain());
    }

    #[test]
    fn csv_errors() {
        assert!(parse_estimates("0,1\nx,2", InputFormat::Csv).is_err());
        assert!(parse_estimates("0,-1", InputFormat::Csv).is_err());
        assert!(parse_estimates("inf,1", InputFormat::Csv).is_err());
        assert!(parse_estimates("0", InputFormat::Csv).is_err());
        assert!(parse_estimates("0,1,a,b", InputFormat::Csv).is_err());
        assert!(matches!(parse_estimates("", InputFormat::Csv), Err(InputError::Empty)));
        assert!(matches!(
            parse_estimates("value,uncertainty\n", InputFormat::Csv),
            Err(InputError::Empty)
        ));
    }

    #[test]
    fn decimal_comma_is_rejected() {
        assert!(parse_estimates("\"0,5\",1", InputFormat::Csv).is_err());
    }

    #[test]
    fn jsonl() {
        let text = "{\"value\": 0, \"uncertainty\": 1, \"label\": \"a\"}\n\n{\"value\": 1, \"uncertainty\": \"inf\"}\n";
        let xs = parse_estimates(text, InputFormat::Auto).unwrap();
        assert_eq!(xs[0].label(), Some("a"));
        assert!(xs[1].is_utterly_uncertain());
        let err = parse_estimates("{\"value\": 1}", InputFormat::Jsonl).unwrap_err();
        assert!(err.to_string().starts_with("line 1"));
    }
}
