use thiserror::Error;

/// CLI-level errors, one variant per documented exit code:
/// 2 parse/invalid input, 3 degenerate span, 4 grade mismatch,
/// 5 numerical failure.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Degenerate(String),
    #[error("{0}")]
    GradeMismatch(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::GradeMismatch(_) => 4,
            CliError::Numerical(_) => 5,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Degenerate(_) => "degenerate-span",
            CliError::GradeMismatch(_) => "grade-mismatch",
            CliError::Numerical(_) => "numerical",
        }
    }

    /// Machine-readable error object for standard error.
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": {
                "kind": self.kind(),
                "message": self.to_string(),
                "exit_code": self.exit_code(),
            }
        })
        .to_string()
    }

    /// Re-wrap with a context prefix, keeping the exit code.
    pub fn with_context(self, context: &str) -> CliError {
        match self {
            CliError::Parse(m) => CliError::Parse(format!("{context}: {m}")),
            CliError::Degenerate(m) => CliError::Degenerate(format!("{context}: {m}")),
            CliError::GradeMismatch(m) => CliError::GradeMismatch(format!("{context}: {m}")),
            CliError::Numerical(m) => CliError::Numerical(format!("{context}: {m}")),
        }
    }
}

impl From<subangle::Error> for CliError {
    fn from(err: subangle::Error) -> Self {
        use subangle::Error as E;
        let msg = err.to_string();
        match err {
            E::DegenerateSpan { .. } | E::RankDeficient { .. } => CliError::Degenerate(msg),
            E::GradeMismatch { .. } => CliError::GradeMismatch(msg),
            E::NumericalFailure(_)
            | E::SplitFailure(_)
            | E::ZeroBlade
            | E::ZeroNormal
            | E::NonInvertibleRotor => CliError::Numerical(msg),
            _ => CliError::Parse(msg),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_stable() {
        assert_eq!(CliError::Parse("x".into()).exit_code(), 2);
        assert_eq!(CliError::Degenerate("x".into()).exit_code(), 3);
        assert_eq!(CliError::GradeMismatch("x".into()).exit_code(), 4);
        assert_eq!(CliError::Numerical("x".into()).exit_code(), 5);
    }

    #[test]
    fn core_errors_map_to_documented_codes() {
        let cases: Vec<(subangle::Error, i32)> = vec![
            (subangle::Error::DegenerateSpan { index: 1 }, 3),
            (subangle::Error::RankDeficient { column: 0 }, 3),
            (subangle::Error::GradeMismatch { left: 1, right: 2 }, 4),
            (subangle::Error::NumericalFailure("n".into()), 5),
            (subangle::Error::SplitFailure("s".into()), 5),
            (subangle::Error::ZeroBlade, 5),
            (subangle::Error::DimOutOfRange(99), 2),
            (subangle::Error::InvalidInput("i".into()), 2),
            (
                subangle::Error::DimensionMismatch { left: 2, right: 3 },
                2,
            ),
        ];
        for (err, code) in cases {
            assert_eq!(CliError::from(err).exit_code(), code);
        }
    }

    #[test]
    fn error_object_is_valid_json() {
        let err = CliError::Degenerate("vector 1 is dependent".into());
        let value: serde_json::Value = serde_json::from_str(&err.to_json()).unwrap();
        assert_eq!(value["error"]["exit_code"], 3);
        assert_eq!(value["error"]["kind"], "degenerate-span");
    }
}
