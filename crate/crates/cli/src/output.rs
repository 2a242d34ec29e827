use crate::error::CliError;
use serde::Serialize;
use std::io::Write;

pub const CSV_HEADER: &str = "experiment,d,lambda,replicate,seed,metric,value,std_error,runtime_ms";

/// One output row. Summary rows over all replicates carry `replicate = -1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub d: usize,
    pub lambda: f64,
    pub replicate: i64,
    /// Identifier of the random stream behind the row.
    pub seed: u64,
    pub metric: String,
    pub value: f64,
    pub std_error: Option<f64>,
    pub runtime_ms: u64,
}

fn check(records: &[ExperimentRecord]) -> Result<(), CliError> {
    for r in records {
        if !r.value.is_finite() || r.std_error.is_some_and(|s| !(s.is_finite() && s >= 0.0)) {
            return Err(CliError::Numerical(format!(
                "metric `{}` at lambda {} is not finite ({}, {:?})",
                r.metric, r.lambda, r.value, r.std_error
            )));
        }
    }
    Ok(())
}

pub fn write_csv<W: Write>(out: W, records: &[ExperimentRecord]) -> Result<(), CliError> {
    check(records)?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(mut out: W, records: &[ExperimentRecord]) -> Result<(), CliError> {
    check(records)?;
    serde_json::to_writer_pretty(&mut out, records)?;
    writeln!(out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(value: f64, se: Option<f64>) -> ExperimentRecord {
        ExperimentRecord {
            experiment: "x".into(),
            d: 2,
            lambda: 10.0,
            replicate: -1,
            seed: 7,
            metric: "m".into(),
            value,
            std_error: se,
            runtime_ms: 0,
        }
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[rec(1.5, Some(0.1)), rec(2.0, None)]).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "x,2,10.0,-1,7,m,1.5,0.1,0");
        assert_eq!(lines[2], "x,2,10.0,-1,7,m,2.0,,0");
    }

    #[test]
    fn json_mirrors_fields() {
        let mut buf = Vec::new();
        write_json(&mut buf, &[rec(1.5, None)]).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let keys: Vec<&str> = v[0].as_object().unwrap().keys().map(|k| k.as_str()).collect();
        let mut want: Vec<&str> = CSV_HEADER.split(',').collect();
        want.sort();
        let mut got = keys.clone();
        got.sort();
        assert_eq!(got, want);
        assert!(v[0]["std_error"].is_null());
    }

    #[test]
    fn non_finite_values_are_numerical_failures() {
        let err = write_csv(Vec::new(), &[rec(f64::NAN, None)]).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
