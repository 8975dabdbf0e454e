use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use super::CorpusError;

/// An author name in canonical form.
///
/// The display form keeps the original casing (after whitespace cleanup);
/// equality, ordering and hashing go through the case-folded key, so
/// `"GASPARINI, Leonardo"` and `"Gasparini, Leonardo"` are the same author.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CanonicalName {
    display: String,
    key: String,
}

impl CanonicalName {
    pub fn display(&self) -> &str {
        &self.display
    }

    pub fn key(&self) -> &str {
        &self.key
    }
}

/// Trims, collapses internal whitespace runs to a single space and derives
/// the case-folded comparison key.
pub fn normalize_name(raw: &str) -> Result<CanonicalName, CorpusError> {
    let display = raw.split_whitespace().collect::<Vec<_>>().join(" ");
    if display.is_empty() {
        return Err(CorpusError::EmptyName);
    }
    let key = display.to_lowercase();
    Ok(CanonicalName { display, key })
}

impl PartialEq for CanonicalName {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for CanonicalName {}

impl Hash for CanonicalName {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for CanonicalName {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalName {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl fmt::Display for CanonicalName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display)
    }
}

impl From<CanonicalName> for String {
    fn from(name: CanonicalName) -> String {
        name.display
    }
}

impl TryFrom<String> for CanonicalName {
    type Error = CorpusError;

    fn try_from(raw: String) -> Result<Self, Self::Error> {
        normalize_name(&raw)
    }
}
