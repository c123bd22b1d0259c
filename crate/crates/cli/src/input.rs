use std::fmt;
use std::path::Path;

use katoskel::corpus;
use katoskel::io::{parse_document, Document};
use katoskel::topology::CellComplex;
use katoskel::weight::LogDivisor;
use katoskel::Error;

/// An error with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            kind: "Usage",
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            kind: "Io",
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch(_) => "DimensionMismatch",
        Error::NotSharp(_) => "NotSharp",
        Error::NotAFace => "NotAFace",
        Error::ZeroUniformizer => "ZeroUniformizer",
        Error::NotSpanningTree(_) => "NotSpanningTree",
        Error::NotASubdivision(_) => "NotASubdivision",
        Error::InconsistentStratification(_) => "InconsistentStratification",
        Error::MissingBranchRule => "MissingBranchRule",
        Error::RayOutsideCone(_) => "RayOutsideCone",
        Error::ResolutionCapExceeded(_) => "ResolutionCapExceeded",
        Error::NotAProductFan(_) => "NotAProductFan",
        Error::UnsupportedDivisorComponent(_) => "UnsupportedDivisorComponent",
        Error::NotQCartier(_) => "NotQCartier",
        Error::EmptyFormList => "EmptyFormList",
        Error::UnboundedFace(_) => "UnboundedFace",
        Error::SizeCapExceeded { .. } => "SizeCapExceeded",
        Error::InvalidAction(_) => "InvalidAction",
        Error::Parse(_) => "Parse",
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeCapExceeded { .. } | Error::ResolutionCapExceeded(_) => 3,
            _ => 2,
        };
        CliError {
            code,
            kind: error_kind(&e),
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// A corpus name or a path to a JSON document. Cell complexes are checked
/// for well-formedness unless `raw`.
pub fn load_document(input: &str, raw: bool) -> CliResult<Document> {
    if let Some(doc) = corpus::document(input) {
        return Ok(doc);
    }
    let text = std::fs::read_to_string(Path::new(input))
        .map_err(|e| CliError::io(format!("{input}: {e} (not a file or corpus name)")))?;
    let doc = parse_document(&text)?;
    if let (false, Document::Complex(c)) = (raw, &doc) {
        let k = &c.complex;
        CellComplex::checked(k.dims.clone(), k.facets.clone(), k.labels.clone())?;
    }
    Ok(doc)
}

/// A divisor named in the document, or a path to a divisor JSON file.
pub fn load_divisor(doc: &Document, name: Option<&str>) -> CliResult<(String, LogDivisor)> {
    let Document::Model(m) = doc else {
        return Err(CliError::usage("divisors are read from model documents"));
    };
    match name {
        None => m
            .divisors
            .iter()
            .next()
            .map(|(k, v)| (k.clone(), v.clone()))
            .ok_or_else(|| CliError::usage("the document has no divisors; pass --divisor")),
        Some(n) => {
            if let Some(d) = m.divisors.get(n) {
                return Ok((n.to_string(), d.clone()));
            }
            let text = std::fs::read_to_string(n)
                .map_err(|e| CliError::io(format!("{n}: {e} (not a file or divisor name)")))?;
            let d: LogDivisor = serde_json::from_str(&text).map_err(|e| CliError::from(Error::Parse(e.to_string())))?;
            Ok((n.to_string(), d))
        }
    }
}
