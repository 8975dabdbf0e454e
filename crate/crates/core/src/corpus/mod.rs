//! Bibliographic data model: papers, authors, the author directory and the
//! record/annotation file formats.

mod generate;
mod io;
mod jel;
mod name;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use generate::{default_jel_table, generate_corpus, CoauthorSchedule, GeneratorConfig};
pub use io::{
    annotate, annotate_from_reader, parse_corpus, parse_corpus_from_readers, write_directory,
    write_records, AnnotationKind, AnnotationReport, ParseOptions,
};
pub use jel::JelCode;
pub use name::{normalize_name, CanonicalName};

/// Affiliation label used when neither the directory nor the records name one.
pub const UNCLASSIFIED: &str = "unclassified";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("name is empty after trimming")]
    EmptyName,
    #[error("invalid JEL code {0:?}")]
    InvalidJel(String),
    #[error("line {line}: {reason}")]
    Malformed { line: u64, reason: String },
    #[error("line {line}: too many JEL codes ({count}, at most 2)")]
    TooManyJel { line: u64, count: usize },
    #[error("line {line}: paper has no JEL code")]
    MissingJel { line: u64 },
    #[error("line {line}: empty author list")]
    EmptyAuthors { line: u64 },
    #[error("line {line}: author {name:?} listed twice")]
    DuplicateAuthor { line: u64, name: String },
    #[error("duplicate paper_id {0:?}")]
    DuplicatePaperId(String),
    #[error("line {line}: year {year} outside the meeting range {start}..={end}")]
    YearOutOfRange {
        line: u64,
        year: i32,
        start: i32,
        end: i32,
    },
    #[error("author {0:?} does not resolve in the directory")]
    UnresolvedAuthor(String),
    #[error("duplicate directory entry {0:?}")]
    DuplicateDirectoryEntry(String),
    #[error("invalid class label {0:?}")]
    InvalidClass(String),
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Female,
    Male,
    #[default]
    Unknown,
}

impl Gender {
    pub fn as_str(self) -> &'static str {
        match self {
            Gender::Female => "female",
            Gender::Male => "male",
            Gender::Unknown => "unknown",
        }
    }
}

impl FromStr for Gender {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_lowercase().as_str() {
            "f" | "female" => Ok(Gender::Female),
            "m" | "male" => Ok(Gender::Male),
            "" | "u" | "unknown" => Ok(Gender::Unknown),
            other => Err(CorpusError::InvalidClass(other.to_string())),
        }
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuthorRecord {
    pub canonical_name: CanonicalName,
    pub gender: Gender,
    pub affiliation: String,
}

impl AuthorRecord {
    pub fn unclassified(canonical_name: CanonicalName) -> Self {
        AuthorRecord {
            canonical_name,
            gender: Gender::Unknown,
            affiliation: UNCLASSIFIED.to_string(),
        }
    }
}

/// One conference contribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperEntry {
    pub paper_id: String,
    pub year: i32,
    pub title: String,
    pub authors: Vec<CanonicalName>,
    /// Per-author affiliation as written in the record; empty when the
    /// record carried none.
    #[serde(default)]
    pub affiliations: Vec<String>,
    pub jel: Vec<JelCode>,
}

impl PaperEntry {
    pub fn is_coauthored(&self) -> bool {
        self.authors.len() > 1
    }
}

/// Papers plus the author directory. Immutable once validated.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    entries: Vec<PaperEntry>,
    directory: BTreeMap<CanonicalName, AuthorRecord>,
}

#[derive(Serialize, Deserialize)]
struct CorpusDocument {
    papers: Vec<PaperEntry>,
    authors: Vec<AuthorRecord>,
}

impl Corpus {
    /// Validates paper ids, author lists and JEL counts and checks that
    /// every author resolves in `directory`.
    pub fn new(
        entries: Vec<PaperEntry>,
        directory: BTreeMap<CanonicalName, AuthorRecord>,
    ) -> Result<Self, CorpusError> {
        let mut ids = HashSet::new();
        for entry in &entries {
            if !ids.insert(entry.paper_id.as_str()) {
                return Err(CorpusError::DuplicatePaperId(entry.paper_id.clone()));
            }
            if entry.authors.is_empty() {
                return Err(CorpusError::EmptyAuthors { line: 0 });
            }
            let mut seen = HashSet::new();
            for author in &entry.authors {
                if !seen.insert(author) {
                    return Err(CorpusError::DuplicateAuthor {
                        line: 0,
                        name: author.display().to_string(),
                    });
                }
                if !directory.contains_key(author) {
                    return Err(CorpusError::UnresolvedAuthor(author.display().to_string()));
                }
            }
            match entry.jel.len() {
                0 => return Err(CorpusError::MissingJel { line: 0 }),
                1 | 2 => {}
                count => return Err(CorpusError::TooManyJel { line: 0, count }),
            }
        }
        Ok(Corpus { entries, directory })
    }

    pub fn entries(&self) -> &[PaperEntry] {
        &self.entries
    }

    pub fn directory(&self) -> &BTreeMap<CanonicalName, AuthorRecord> {
        &self.directory
    }

    pub fn author(&self, name: &CanonicalName) -> Option<&AuthorRecord> {
        self.directory.get(name)
    }

    pub(crate) fn directory_mut(&mut self) -> &mut BTreeMap<CanonicalName, AuthorRecord> {
        &mut self.directory
    }

    /// Canonical structured-text serialization: pretty JSON with papers in
    /// corpus order and authors sorted by key.
    pub fn to_json(&self) -> String {
        let doc = CorpusDocument {
            papers: self.entries.clone(),
            authors: self.directory.values().cloned().collect(),
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("corpus serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, CorpusError> {
        let doc: CorpusDocument = serde_json::from_str(text)?;
        let mut directory = BTreeMap::new();
        for record in doc.authors {
            let name = record.canonical_name.clone();
            if directory.insert(name.clone(), record).is_some() {
                return Err(CorpusError::DuplicateDirectoryEntry(name.display().to_string()));
            }
        }
        Corpus::new(doc.papers, directory)
    }

    /// Count of directory entries per gender.
    pub fn gender_counts(&self) -> BTreeMap<Gender, usize> {
        let mut counts = BTreeMap::new();
        for record in self.directory.values() {
            *counts.entry(record.gender).or_insert(0) += 1;
        }
        counts
    }
}

/// Papers per meeting year, split into single-authored and coauthored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YearCount {
    pub year: i32,
    pub single: usize,
    pub coauthored: usize,
}

impl YearCount {
    /// Single/coauthored ratio; `None` when the year has no coauthored paper.
    pub fn sc_ratio(&self) -> Option<f64> {
        (self.coauthored > 0).then(|| self.single as f64 / self.coauthored as f64)
    }
}

/// One row per year present in the corpus, ascending.
pub fn yearly_counts(corpus: &Corpus) -> Vec<YearCount> {
    let mut by_year: BTreeMap<i32, YearCount> = BTreeMap::new();
    for entry in corpus.entries() {
        let row = by_year.entry(entry.year).or_insert(YearCount {
            year: entry.year,
            single: 0,
            coauthored: 0,
        });
        if entry.is_coauthored() {
            row.coauthored += 1;
        } else {
            row.single += 1;
        }
    }
    by_year.into_values().collect()
}
