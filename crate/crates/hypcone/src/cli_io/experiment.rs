use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::CliError;
use crate::character_dynamics::{char_to_rep, goldman_reduce, sample_level_set, Character, ReductionKind, SampleBox};
use crate::domain_builder::{good_search, SearchParams};
use crate::isometries::Isometry;
use crate::plane_geometry::collar_width;

pub const CSV_SCHEMA: u32 = 1;
pub const CSV_HEADER: &str = "t,index,x,y,z,type,good,depth,stations,ms";

const REDUCE_BUDGET: usize = 100_000;
const SAMPLE_REJECTS: usize = 10_000;
/// Rows are computed in blocks and flushed in index order, so an interrupted
/// run leaves a valid prefix behind.
const BLOCK: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub t: f64,
    pub samples: usize,
    pub depth: usize,
    pub stations: usize,
    pub seed: u64,
    pub bounds: SampleBox,
    /// Fill the `ms` column. Off by default so reruns are byte-identical.
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(t: f64, samples: usize, depth: usize, stations: usize, seed: u64) -> Self {
        ExperimentConfig { t, samples, depth, stations, seed, bounds: SampleBox::square(5.0), timing: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRecord {
    pub t: f64,
    pub index: usize,
    pub character: Character,
    /// `None` when the reduction stalled or ran out of budget.
    pub kind: Option<ReductionKind>,
    pub good: bool,
    /// Depth of the certificate, or the exhausted budget. Unset for
    /// characters that were not searched.
    pub depth: Option<usize>,
    pub stations: Option<usize>,
    pub ms: Option<f64>,
}

impl ExperimentRecord {
    pub fn csv_row(&self) -> String {
        let [x, y, z] = self.character.coords();
        let opt = |v: Option<usize>| v.map_or(String::new(), |v| v.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.t,
            self.index,
            x,
            y,
            z,
            self.kind.map_or("UNDECIDED", ReductionKind::as_str),
            self.good,
            opt(self.depth),
            opt(self.stations),
            self.ms.map_or(String::new(), |v| format!("{v:.3}")),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSummary {
    pub elliptic_count: usize,
    pub pants_count: usize,
    pub good_count: usize,
    pub records: Vec<ExperimentRecord>,
}

impl ExperimentSummary {
    /// Certified fraction of elliptic-type samples.
    pub fn rate(&self) -> Option<f64> {
        (self.elliptic_count > 0).then(|| self.good_count as f64 / self.elliptic_count as f64)
    }

    pub fn rate_string(&self) -> String {
        self.rate().map_or("n/a".to_string(), |r| r.to_string())
    }
}

fn trial(cfg: &ExperimentConfig, params: &SearchParams, index: usize) -> Result<ExperimentRecord, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let character = sample_level_set(cfg.t, cfg.bounds, &mut rng, SAMPLE_REJECTS)?;
    let kind = goldman_reduce(character, REDUCE_BUDGET).ok().map(|o| o.kind);
    let mut rec = ExperimentRecord { t: cfg.t, index, character, kind, good: false, depth: None, stations: None, ms: None };
    if kind != Some(ReductionKind::Elliptic) {
        return Ok(rec);
    }
    let (g, h) = char_to_rep(character)?;
    let (g, h) = (Isometry::from_mat(g)?, Isometry::from_mat(h)?);
    let start = Instant::now();
    match good_search(&g, &h, params) {
        Ok(cert) => {
            rec.good = true;
            rec.depth = Some(cert.depth);
            rec.stations = Some(cert.station + 1);
        }
        Err(_) => {
            rec.depth = Some(params.depth);
            rec.stations = Some(params.stations);
        }
    }
    if cfg.timing {
        rec.ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(rec)
}

/// Samples the level set `κ = t`, classifies every sample and searches each
/// elliptic-type one for a certificate with ε the collar width. Rows go to
/// `sink` as they complete, in index order.
pub fn ergodic_experiment(cfg: &ExperimentConfig, mut sink: Option<&mut dyn Write>) -> Result<ExperimentSummary, CliError> {
    if !(cfg.t > 2.0) {
        return Err(CliError::Precondition(format!("trace must exceed 2, got {}", cfg.t)));
    }
    if cfg.samples == 0 {
        return Err(CliError::Precondition("at least one sample is required".into()));
    }
    let params = SearchParams { epsilon: collar_width(cfg.t)?, depth: cfg.depth, stations: cfg.stations, ..Default::default() };
    if let Some(w) = sink.as_mut() {
        writeln!(
            w,
            "# hypcone ergodic-exp schema {CSV_SCHEMA} version {} t={} samples={} depth={} stations={} seed={}",
            env!("CARGO_PKG_VERSION"),
            cfg.t,
            cfg.samples,
            cfg.depth,
            cfg.stations,
            cfg.seed
        )?;
        writeln!(w, "{CSV_HEADER}")?;
    }
    let mut records = Vec::with_capacity(cfg.samples);
    for start in (0..cfg.samples).step_by(BLOCK) {
        let end = (start + BLOCK).min(cfg.samples);
        let block: Result<Vec<_>, _> = (start..end).into_par_iter().map(|i| trial(cfg, &params, i)).collect();
        let block = block?;
        if let Some(w) = sink.as_mut() {
            for r in &block {
                writeln!(w, "{}", r.csv_row())?;
            }
            w.flush()?;
        }
        records.extend(block);
    }
    let count = |k| records.iter().filter(|r| r.kind == Some(k)).count();
    Ok(ExperimentSummary {
        elliptic_count: count(ReductionKind::Elliptic),
        pants_count: count(ReductionKind::Pants),
        good_count: records.iter().filter(|r| r.good).count(),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character_dynamics::kappa;

    #[test]
    fn small_run_is_reproducible_and_on_level() {
        let cfg = ExperimentConfig::new(3.0, 20, 12, 64, 11);
        let run = || {
            let mut buf = Vec::new();
            let s = ergodic_experiment(&cfg, Some(&mut buf)).unwrap();
            (s, buf)
        };
        let (a, bytes_a) = run();
        let (_, bytes_b) = run();
        assert_eq!(bytes_a, bytes_b);
        assert_eq!(a.records.len(), 20);
        assert_eq!(a.elliptic_count + a.pants_count, 20);
        for r in &a.records {
            let [x, y, z] = r.character.coords();
            assert!((kappa(x, y, z) - 3.0).abs() < 1e-9 * (1.0 + r.character.kappa_scale()));
        }
        let text = String::from_utf8(bytes_a).unwrap();
        assert_eq!(text.lines().nth(1), Some(CSV_HEADER));
        assert_eq!(text.lines().count(), 22);
    }

    #[test]
    fn rate_is_undefined_without_elliptic_samples() {
        let s = (0..64)
            .map(|seed| ergodic_experiment(&ExperimentConfig::new(50.0, 1, 0, 1, seed), None).unwrap())
            .find(|s| s.pants_count == 1)
            .expect("some seed draws a pants-type character");
        assert_eq!((s.elliptic_count, s.good_count), (0, 0));
        assert_eq!(s.rate_string(), "n/a");
        assert!(ergodic_experiment(&ExperimentConfig::new(2.0, 1, 1, 1, 0), None).is_err());
    }
}
