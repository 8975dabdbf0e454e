//! Seeded synthetic corpora with preferential author selection.

use std::collections::BTreeMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{normalize_name, AuthorRecord, Corpus, CorpusError, Gender, JelCode, PaperEntry};

/// Probability that a paper of a given year is coauthored, linearly
/// interpolated between `(year, probability)` knots and held constant
/// outside them.
#[derive(Debug, Clone, PartialEq)]
pub struct CoauthorSchedule {
    knots: Vec<(i32, f64)>,
}

impl CoauthorSchedule {
    pub fn new(knots: Vec<(i32, f64)>) -> Result<Self, CorpusError> {
        if knots.is_empty() {
            return Err(CorpusError::InvalidConfig("empty coauthorship schedule".into()));
        }
        for &(year, p) in &knots {
            if !(0.0..=1.0).contains(&p) {
                return Err(CorpusError::InvalidConfig(format!(
                    "coauthorship probability {p} for {year} outside [0,1]"
                )));
            }
        }
        if knots.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(CorpusError::InvalidConfig(
                "schedule years must be strictly increasing".into(),
            ));
        }
        Ok(CoauthorSchedule { knots })
    }

    pub fn constant(p: f64) -> Result<Self, CorpusError> {
        Self::new(vec![(0, p)])
    }

    pub fn linear(start: (i32, f64), end: (i32, f64)) -> Result<Self, CorpusError> {
        Self::new(vec![start, end])
    }

    pub fn probability(&self, year: i32) -> f64 {
        let first = self.knots[0];
        let last = self.knots[self.knots.len() - 1];
        if year <= first.0 {
            return first.1;
        }
        if year >= last.0 {
            return last.1;
        }
        let i = self.knots.iter().position(|&(y, _)| y > year).unwrap();
        let (y0, p0) = self.knots[i - 1];
        let (y1, p1) = self.knots[i];
        p0 + (p1 - p0) * f64::from(year - y0) / f64::from(y1 - y0)
    }
}

#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub n_papers: usize,
    pub n_authors: usize,
    /// Exponent on `(prior paper count + 1)` in author selection; 0 is uniform.
    pub attach_bias: f64,
    pub coauthor_prob: CoauthorSchedule,
    /// Meeting years; papers are spread evenly over them in order.
    pub years: Vec<i32>,
    /// JEL code frequency table.
    pub jel_table: Vec<(JelCode, f64)>,
    /// Probability that a paper carries a single JEL code.
    pub single_jel_prob: f64,
    pub female_share: f64,
    pub affiliations: Vec<String>,
    /// Largest team size.
    pub max_team: usize,
}

impl GeneratorConfig {
    pub fn new(seed: u64, n_papers: usize, n_authors: usize, attach_bias: f64) -> Self {
        let years = (1964..=2014).filter(|y| *y != 1966 && *y != 1973).collect();
        GeneratorConfig {
            seed,
            n_papers,
            n_authors,
            attach_bias,
            coauthor_prob: CoauthorSchedule::linear((1964, 0.1), (2014, 0.7))
                .expect("default schedule is valid"),
            years,
            jel_table: default_jel_table(),
            single_jel_prob: 0.05,
            female_share: 0.33,
            affiliations: ["UNLP", "UNS", "UBA", "UNC", "UCEMA", "UDESA", "UTDT", "BCRA", "UNT", "UNCu"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            max_team: 7,
        }
    }

    fn validate(&self) -> Result<(), CorpusError> {
        let invalid = |msg: &str| Err(CorpusError::InvalidConfig(msg.into()));
        if self.n_authors < 2 {
            return invalid("n_authors must be at least 2");
        }
        if !(self.attach_bias >= 0.0 && self.attach_bias.is_finite()) {
            return invalid("attach_bias must be finite and non-negative");
        }
        if self.years.is_empty() {
            return invalid("no meeting years");
        }
        if self.jel_table.is_empty() || self.jel_table.iter().any(|(_, w)| w.is_nan() || *w < 0.0) {
            return invalid("JEL table must be non-empty with non-negative weights");
        }
        if !(0.0..=1.0).contains(&self.single_jel_prob) || !(0.0..=1.0).contains(&self.female_share) {
            return invalid("probabilities must lie in [0,1]");
        }
        if self.affiliations.is_empty() {
            return invalid("no affiliation labels");
        }
        if self.max_team < 2 {
            return invalid("max_team must be at least 2");
        }
        Ok(())
    }
}

/// A skewed frequency table over letter+digit codes, heaviest on a handful
/// of popular topics.
pub fn default_jel_table() -> Vec<(JelCode, f64)> {
    let popular = [
        "F1", "I3", "C2", "Q1", "E3", "C1", "I1", "C4", "C6", "E2", "O4", "C3", "G2", "H7", "O1",
        "F4", "E5", "I2", "D3", "E4",
    ];
    let mut table = Vec::new();
    for (rank, code) in popular.iter().enumerate() {
        table.push((JelCode::new(code).unwrap(), 20.0 / (rank as f64 + 1.0)));
    }
    for letter in ['A', 'B', 'D', 'H', 'J', 'K', 'L', 'M', 'N', 'P', 'R', 'Z'] {
        for digit in 0..4 {
            let code = JelCode::new(&format!("{letter}{digit}")).unwrap();
            if !table.iter().any(|(c, _)| *c == code) {
                table.push((code, 0.5));
            }
        }
    }
    table
}

/// Generates a corpus deterministically from `config.seed`.
pub fn generate_corpus(config: &GeneratorConfig) -> Result<Corpus, CorpusError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let width = config.n_authors.to_string().len();
    let mut directory = BTreeMap::new();
    let mut names = Vec::with_capacity(config.n_authors);
    for i in 0..config.n_authors {
        let name = normalize_name(&format!("Author {:0width$}", i + 1))?;
        let gender = if rng.random::<f64>() < config.female_share {
            Gender::Female
        } else {
            Gender::Male
        };
        let affiliation = config.affiliations[rng.random_range(0..config.affiliations.len())].clone();
        directory.insert(
            name.clone(),
            AuthorRecord {
                canonical_name: name.clone(),
                gender,
                affiliation,
            },
        );
        names.push(name);
    }

    let jel_dist = WeightedIndex::new(config.jel_table.iter().map(|(_, w)| *w))
        .map_err(|e| CorpusError::InvalidConfig(format!("JEL table: {e}")))?;

    let mut paper_counts = vec![0usize; config.n_authors];
    let mut weights = vec![0.0f64; config.n_authors];
    let mut entries = Vec::with_capacity(config.n_papers);
    for p in 0..config.n_papers {
        let year = config.years[p * config.years.len() / config.n_papers.max(1)];

        let team = if rng.random::<f64>() < config.coauthor_prob.probability(year) {
            let cap = config.max_team.min(config.n_authors);
            let mut k = 2;
            while k < cap && rng.random::<f64>() < 0.45 {
                k += 1;
            }
            k
        } else {
            1
        };

        for (w, &count) in weights.iter_mut().zip(&paper_counts) {
            *w = (count as f64 + 1.0).powf(config.attach_bias);
        }
        let mut chosen = Vec::with_capacity(team);
        for _ in 0..team {
            let idx = WeightedIndex::new(&weights)
                .expect("team size never exceeds the author pool")
                .sample(&mut rng);
            weights[idx] = 0.0;
            chosen.push(idx);
        }
        for &idx in &chosen {
            paper_counts[idx] += 1;
        }

        let mut jel = vec![config.jel_table[jel_dist.sample(&mut rng)].0.clone()];
        if rng.random::<f64>() >= config.single_jel_prob {
            jel.push(config.jel_table[jel_dist.sample(&mut rng)].0.clone());
        }

        let affiliations = chosen
            .iter()
            .map(|&i| directory[&names[i]].affiliation.clone())
            .collect();
        entries.push(PaperEntry {
            paper_id: format!("s{:05}", p + 1),
            year,
            title: format!("Synthetic paper {}", p + 1),
            authors: chosen.iter().map(|&i| names[i].clone()).collect(),
            affiliations,
            jel,
        });
    }
    Corpus::new(entries, directory)
}
