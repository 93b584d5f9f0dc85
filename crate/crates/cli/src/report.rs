use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] varkernel::Error),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_validation() => 2,
            CliError::Core(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

/// Column schema plus formatted rows.
#[derive(Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// 17 significant digits, locale independent.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Flags echoed into the header. The output path is left out so the same
/// run written to two places gives identical files.
fn echoed_flags(args: &[String]) -> String {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        if a == "--out" {
            skip = true;
            continue;
        }
        if a.starts_with("--out=") {
            continue;
        }
        out.push(a.as_str());
    }
    out.join(" ")
}

pub fn render(args: &[String], seed: u64, table: &Table) -> Result<String, CliError> {
    let mut text = format!(
        "# varkernel {}\n# flags: {}\n# seed: {seed}\n",
        env!("CARGO_PKG_VERSION"),
        echoed_flags(args)
    );
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(&table.columns).map_err(io)?;
    for row in &table.rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    text.push_str(&String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))?);
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_keep_seventeen_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn out_path_is_not_echoed() {
        let args: Vec<String> = ["hilbert", "--out", "a.csv", "--n-max", "2", "--out=b"].iter().map(|s| s.to_string()).collect();
        assert_eq!(echoed_flags(&args), "hilbert --n-max 2");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Core(varkernel::Error::DimensionMismatch { expected: 2, got: 3 }).exit_code(), 2);
        assert_eq!(CliError::Core(varkernel::Error::Numerical("x".into())).exit_code(), 3);
        assert_eq!(CliError::Core(varkernel::Error::DegenerateSampling { rank: 1, needed: 2 }).exit_code(), 3);
    }
}
