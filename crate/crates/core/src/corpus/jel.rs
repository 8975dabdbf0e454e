use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CorpusError;

/// A JEL classification code: one letter followed by zero to two digits
/// (`C`, `C2`, `C21`). Stored upper-cased, at the granularity given.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct JelCode(String);

impl JelCode {
    pub fn new(raw: &str) -> Result<Self, CorpusError> {
        let code = raw.trim().to_ascii_uppercase();
        let mut chars = code.chars();
        let valid = match chars.next() {
            Some(letter) if letter.is_ascii_uppercase() => {
                let digits: Vec<char> = chars.collect();
                digits.len() <= 2 && digits.iter().all(char::is_ascii_digit)
            }
            _ => false,
        };
        if valid {
            Ok(JelCode(code))
        } else {
            Err(CorpusError::InvalidJel(raw.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The general category (`C` for `C21`).
    pub fn first_letter(&self) -> char {
        self.0.as_bytes()[0] as char
    }
}

impl FromStr for JelCode {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        JelCode::new(s)
    }
}

impl fmt::Display for JelCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<JelCode> for String {
    fn from(code: JelCode) -> String {
        code.0
    }
}

impl TryFrom<String> for JelCode {
    type Error = CorpusError;

    fn try_from(raw: String) -> Result<Self, Self::Error> {
        JelCode::new(&raw)
    }
}
