//! Record, directory and annotation file formats.
//!
//! Records: `paper_id,year,title,authors,affiliations,jel1,jel2` with `;`
//! separating multi-valued cells. Directory and annotations:
//! `canonical_name,gender,affiliation`.

use std::collections::{BTreeMap, HashSet};
use std::fs::File;
use std::io::{Read, Write};
use std::ops::RangeInclusive;
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, WriterBuilder};

use super::{
    normalize_name, AuthorRecord, CanonicalName, Corpus, CorpusError, Gender, JelCode,
    PaperEntry, UNCLASSIFIED,
};

const RECORD_HEADER: [&str; 7] = [
    "paper_id",
    "year",
    "title",
    "authors",
    "affiliations",
    "jel1",
    "jel2",
];
const DIRECTORY_HEADER: [&str; 3] = ["canonical_name", "gender", "affiliation"];

#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    /// Accepted meeting years; `None` accepts any year.
    pub years: Option<RangeInclusive<i32>>,
}

fn open(path: &Path) -> Result<File, CorpusError> {
    File::open(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Reads a record file and an optional directory file.
pub fn parse_corpus(
    records_file: &Path,
    directory_file: Option<&Path>,
    options: &ParseOptions,
) -> Result<Corpus, CorpusError> {
    let records = open(records_file)?;
    match directory_file {
        Some(path) => parse_corpus_from_readers(records, Some(open(path)?), options),
        None => parse_corpus_from_readers(records, None::<File>, options),
    }
}

pub fn parse_corpus_from_readers<R: Read, D: Read>(
    records: R,
    directory: Option<D>,
    options: &ParseOptions,
) -> Result<Corpus, CorpusError> {
    let mut dir = match directory {
        Some(reader) => read_directory(reader)?,
        None => BTreeMap::new(),
    };

    let mut reader = ReaderBuilder::new()
        .flexible(true)
        .has_headers(true)
        .from_reader(records);
    check_header(reader.headers()?, &RECORD_HEADER)?;

    let mut entries = Vec::new();
    let mut ids = HashSet::new();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        let entry = parse_row(&row, line, options)?;
        if !ids.insert(entry.paper_id.clone()) {
            return Err(CorpusError::DuplicatePaperId(entry.paper_id));
        }
        entries.push(entry);
    }

    // Authors missing from the directory take the first affiliation the
    // records give them, else the unclassified label.
    for entry in &entries {
        for (i, author) in entry.authors.iter().enumerate() {
            if !dir.contains_key(author) {
                let affiliation = entry
                    .affiliations
                    .get(i)
                    .filter(|a| !a.is_empty())
                    .cloned()
                    .unwrap_or_else(|| UNCLASSIFIED.to_string());
                dir.insert(
                    author.clone(),
                    AuthorRecord {
                        canonical_name: author.clone(),
                        gender: Gender::Unknown,
                        affiliation,
                    },
                );
            }
        }
    }
    Corpus::new(entries, dir)
}

fn check_header(header: &StringRecord, expected: &[&str]) -> Result<(), CorpusError> {
    let found: Vec<&str> = header.iter().map(str::trim).collect();
    if found.len() < expected.len() || found[..expected.len()] != *expected {
        return Err(CorpusError::Malformed {
            line: 1,
            reason: format!("expected header {}", expected.join(",")),
        });
    }
    Ok(())
}

fn split_cell(cell: &str) -> Vec<&str> {
    if cell.trim().is_empty() {
        Vec::new()
    } else {
        cell.split(';').map(str::trim).collect()
    }
}

fn parse_row(row: &StringRecord, line: u64, options: &ParseOptions) -> Result<PaperEntry, CorpusError> {
    let malformed = |reason: String| CorpusError::Malformed { line, reason };
    if row.len() < 6 {
        return Err(malformed(format!("expected at least 6 fields, found {}", row.len())));
    }

    let paper_id = row[0].trim().to_string();
    if paper_id.is_empty() {
        return Err(malformed("empty paper_id".into()));
    }
    let year: i32 = row[1]
        .trim()
        .parse()
        .map_err(|_| malformed(format!("invalid year {:?}", &row[1])))?;
    if let Some(range) = &options.years {
        if !range.contains(&year) {
            return Err(CorpusError::YearOutOfRange {
                line,
                year,
                start: *range.start(),
                end: *range.end(),
            });
        }
    }
    let title = row[2].trim().to_string();

    let raw_authors = split_cell(&row[3]);
    if raw_authors.is_empty() {
        return Err(CorpusError::EmptyAuthors { line });
    }
    let mut authors: Vec<CanonicalName> = Vec::with_capacity(raw_authors.len());
    for raw in raw_authors {
        let name = normalize_name(raw).map_err(|_| malformed("empty author name".into()))?;
        if authors.contains(&name) {
            return Err(CorpusError::DuplicateAuthor {
                line,
                name: name.display().to_string(),
            });
        }
        authors.push(name);
    }

    let affiliations: Vec<String> = split_cell(&row[4]).into_iter().map(String::from).collect();
    if !affiliations.is_empty() && affiliations.len() != authors.len() {
        return Err(malformed(format!(
            "{} affiliations for {} authors",
            affiliations.len(),
            authors.len()
        )));
    }

    let mut codes = Vec::new();
    for cell in row.iter().skip(5) {
        for raw in split_cell(cell) {
            codes.push(JelCode::new(raw).map_err(|e| malformed(e.to_string()))?);
        }
    }
    match codes.len() {
        0 => return Err(CorpusError::MissingJel { line }),
        1 | 2 => {}
        count => return Err(CorpusError::TooManyJel { line, count }),
    }

    Ok(PaperEntry {
        paper_id,
        year,
        title,
        authors,
        affiliations,
        jel: codes,
    })
}

fn read_directory<R: Read>(reader: R) -> Result<BTreeMap<CanonicalName, AuthorRecord>, CorpusError> {
    let mut reader = ReaderBuilder::new().has_headers(true).from_reader(reader);
    check_header(reader.headers()?, &DIRECTORY_HEADER)?;
    let mut dir = BTreeMap::new();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        let name = normalize_name(&row[0]).map_err(|_| CorpusError::Malformed {
            line,
            reason: "empty canonical_name".into(),
        })?;
        let gender: Gender = row[1].parse()?;
        let affiliation = match row[2].trim() {
            "" => UNCLASSIFIED.to_string(),
            label => label.to_string(),
        };
        let record = AuthorRecord {
            canonical_name: name.clone(),
            gender,
            affiliation,
        };
        if dir.insert(name.clone(), record).is_some() {
            return Err(CorpusError::DuplicateDirectoryEntry(name.display().to_string()));
        }
    }
    Ok(dir)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnotationKind {
    Gender,
    Affiliation,
}

/// Outcome of applying an annotation file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AnnotationReport {
    /// Names in the annotation file with no directory entry, in file order.
    pub unknown_names: Vec<String>,
    pub applied: usize,
    /// Directory entries per class after the update.
    pub class_counts: BTreeMap<String, usize>,
}

pub fn annotate(
    corpus: Corpus,
    annotations: &Path,
    kind: AnnotationKind,
) -> Result<(Corpus, AnnotationReport), CorpusError> {
    annotate_from_reader(corpus, open(annotations)?, kind)
}

/// Updates gender or affiliation from a `canonical_name,gender,affiliation`
/// file. Only the column selected by `kind` is read; empty cells are skipped.
/// Unknown names are reported, never fatal.
pub fn annotate_from_reader<R: Read>(
    mut corpus: Corpus,
    reader: R,
    kind: AnnotationKind,
) -> Result<(Corpus, AnnotationReport), CorpusError> {
    let mut reader = ReaderBuilder::new().has_headers(true).flexible(true).from_reader(reader);
    check_header(reader.headers()?, &DIRECTORY_HEADER[..1])?;
    let column = match kind {
        AnnotationKind::Gender => 1,
        AnnotationKind::Affiliation => 2,
    };

    let mut report = AnnotationReport::default();
    for row in reader.records() {
        let row = row?;
        let Ok(name) = normalize_name(&row[0]) else {
            continue;
        };
        let cell = row.get(column).unwrap_or("").trim();
        if cell.is_empty() {
            continue;
        }
        // Validate the label before looking the name up, so a bad label is
        // an error even on an unknown row.
        let gender = match kind {
            AnnotationKind::Gender => Some(cell.parse::<Gender>()?),
            AnnotationKind::Affiliation => {
                if cell.contains(';') {
                    return Err(CorpusError::InvalidClass(cell.to_string()));
                }
                None
            }
        };
        match corpus.directory_mut().get_mut(&name) {
            Some(record) => {
                match gender {
                    Some(g) => record.gender = g,
                    None => record.affiliation = cell.to_string(),
                }
                report.applied += 1;
            }
            None => {
                log::warn!("annotation for unknown author {:?} ignored", name.display());
                report.unknown_names.push(name.display().to_string());
            }
        }
    }

    for record in corpus.directory().values() {
        let class = match kind {
            AnnotationKind::Gender => record.gender.as_str().to_string(),
            AnnotationKind::Affiliation => record.affiliation.clone(),
        };
        *report.class_counts.entry(class).or_insert(0) += 1;
    }
    Ok((corpus, report))
}

/// Writes the corpus back out in the record format.
pub fn write_records<W: Write>(corpus: &Corpus, writer: W) -> Result<(), CorpusError> {
    let mut out = WriterBuilder::new().from_writer(writer);
    out.write_record(RECORD_HEADER)?;
    for entry in corpus.entries() {
        let authors: Vec<&str> = entry.authors.iter().map(CanonicalName::display).collect();
        let jel1 = entry.jel.first().map(JelCode::as_str).unwrap_or("");
        let jel2 = entry.jel.get(1).map(JelCode::as_str).unwrap_or("");
        out.write_record([
            entry.paper_id.as_str(),
            &entry.year.to_string(),
            entry.title.as_str(),
            &authors.join(";"),
            &entry.affiliations.join(";"),
            jel1,
            jel2,
        ])?;
    }
    out.flush().map_err(|source| CorpusError::Io {
        path: "<records>".into(),
        source,
    })?;
    Ok(())
}

pub fn write_directory<W: Write>(corpus: &Corpus, writer: W) -> Result<(), CorpusError> {
    let mut out = WriterBuilder::new().from_writer(writer);
    out.write_record(DIRECTORY_HEADER)?;
    for record in corpus.directory().values() {
        out.write_record([
            record.canonical_name.display(),
            record.gender.as_str(),
            record.affiliation.as_str(),
        ])?;
    }
    out.flush().map_err(|source| CorpusError::Io {
        path: "<directory>".into(),
        source,
    })?;
    Ok(())
}
