//! Run configuration: inclusive integer ranges, output formats, and the
//! flags > config file > defaults precedence.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

/// Inclusive integer range written `A..B`, or a single value `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntRange {
    pub start: i64,
    pub end: i64,
}

impl IntRange {
    pub fn new(start: i64, end: i64) -> Result<Self, String> {
        if start > end {
            return Err(format!("empty range {start}..{end}"));
        }
        Ok(IntRange { start, end })
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.start..=self.end
    }

    pub fn len(&self) -> usize {
        (self.end - self.start + 1) as usize
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some((a, b)) = s.split_once("..") {
            let start: i64 = a
                .trim()
                .parse()
                .map_err(|_| format!("bad range start {a:?}"))?;
            let end: i64 = b
                .trim()
                .parse()
                .map_err(|_| format!("bad range end {b:?}"))?;
            IntRange::new(start, end)
        } else {
            let v: i64 = s.trim().parse().map_err(|_| format!("bad integer {s:?}"))?;
            Ok(IntRange { start: v, end: v })
        }
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}", self.start, self.end)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format {other:?} (use text|json|csv)")),
        }
    }
}

/// Fully-resolved run configuration.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub n: IntRange,
    pub i: IntRange,
    pub j: IntRange,
    pub trials: usize,
    pub seed: u64,
    pub newton_tol: f64,
    pub cluster_radius: f64,
    pub fd_tol: f64,
    #[serde(skip)]
    pub format: OutputFormat,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub no_timestamp: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: IntRange { start: 1, end: 3 },
            i: IntRange { start: -4, end: 4 },
            j: IntRange { start: -4, end: 4 },
            trials: 50,
            seed: 0,
            newton_tol: 1e-10,
            cluster_radius: 1e-6,
            fd_tol: 1e-6,
            format: OutputFormat::Text,
            output: None,
            no_timestamp: false,
        }
    }
}

/// Optional config file: any subset of the run configuration, JSON.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n: Option<String>,
    pub i: Option<String>,
    pub j: Option<String>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub newton_tol: Option<f64>,
    pub cluster_radius: Option<f64>,
    pub fd_tol: Option<f64>,
    pub format: Option<String>,
    pub output: Option<String>,
    pub no_timestamp: Option<bool>,
}

/// Flags as they arrived on the command line (`None` = not given).
#[derive(Debug, Clone, Default)]
pub struct FlagOverrides {
    pub n: Option<IntRange>,
    pub i: Option<IntRange>,
    pub j: Option<IntRange>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub newton_tol: Option<f64>,
    pub cluster_radius: Option<f64>,
    pub fd_tol: Option<f64>,
    pub format: Option<OutputFormat>,
    pub output: Option<PathBuf>,
    pub no_timestamp: bool,
}

/// Resolve defaults, then the config file, then explicit flags.
pub fn resolve(file: Option<&FileConfig>, flags: &FlagOverrides) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::default();
    if let Some(fc) = file {
        if let Some(s) = &fc.n {
            cfg.n = s.parse()?;
        }
        if let Some(s) = &fc.i {
            cfg.i = s.parse()?;
        }
        if let Some(s) = &fc.j {
            cfg.j = s.parse()?;
        }
        if let Some(v) = fc.trials {
            cfg.trials = v;
        }
        if let Some(v) = fc.seed {
            cfg.seed = v;
        }
        if let Some(v) = fc.newton_tol {
            cfg.newton_tol = v;
        }
        if let Some(v) = fc.cluster_radius {
            cfg.cluster_radius = v;
        }
        if let Some(v) = fc.fd_tol {
            cfg.fd_tol = v;
        }
        if let Some(s) = &fc.format {
            cfg.format = s.parse()?;
        }
        if let Some(s) = &fc.output {
            cfg.output = Some(PathBuf::from(s));
        }
        if let Some(v) = fc.no_timestamp {
            cfg.no_timestamp = v;
        }
    }
    if let Some(v) = flags.n {
        cfg.n = v;
    }
    if let Some(v) = flags.i {
        cfg.i = v;
    }
    if let Some(v) = flags.j {
        cfg.j = v;
    }
    if let Some(v) = flags.trials {
        cfg.trials = v;
    }
    if let Some(v) = flags.seed {
        cfg.seed = v;
    }
    if let Some(v) = flags.newton_tol {
        cfg.newton_tol = v;
    }
    if let Some(v) = flags.cluster_radius {
        cfg.cluster_radius = v;
    }
    if let Some(v) = flags.fd_tol {
        cfg.fd_tol = v;
    }
    if let Some(v) = flags.format {
        cfg.format = v;
    }
    if flags.output.is_some() {
        cfg.output = flags.output.clone();
    }
    if flags.no_timestamp {
        cfg.no_timestamp = true;
    }
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &RunConfig) -> Result<(), String> {
    if cfg.n.start < 1 {
        return Err(format!("--n must start at 1 or above, got {}", cfg.n));
    }
    // dimension counts are exact u64; these bounds keep every binomial in
    // range and the Clifford tables within memory
    if cfg.n.end > 8 {
        return Err(format!("--n is supported up to 8, got {}", cfg.n));
    }
    for (name, r) in [("i", cfg.i), ("j", cfg.j)] {
        if r.start < -200 || r.end > 200 {
            return Err(format!("--{name} endpoints must lie in -200..200, got {r}"));
        }
    }
    if cfg.trials == 0 || cfg.trials > 100_000 {
        return Err(format!(
            "--trials must be between 1 and 100000, got {}",
            cfg.trials
        ));
    }
    for (name, v) in [
        ("newton-tol", cfg.newton_tol),
        ("cluster-radius", cfg.cluster_radius),
        ("fd-tol", cfg.fd_tol),
    ] {
        if !v.is_finite() || v <= 0.0 {
            return Err(format!("--{name} must be positive, got {v}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!(
            "1..3".parse::<IntRange>().unwrap(),
            IntRange { start: 1, end: 3 }
        );
        assert_eq!(
            "-4..4".parse::<IntRange>().unwrap(),
            IntRange { start: -4, end: 4 }
        );
        assert_eq!(
            "7".parse::<IntRange>().unwrap(),
            IntRange { start: 7, end: 7 }
        );
        assert!("3..1".parse::<IntRange>().is_err());
        assert!("x..2".parse::<IntRange>().is_err());
    }

    #[test]
    fn precedence_flags_over_file() {
        let file = FileConfig {
            seed: Some(9),
            trials: Some(5),
            ..FileConfig::default()
        };
        let flags = FlagOverrides {
            seed: Some(4),
            ..FlagOverrides::default()
        };
        let cfg = resolve(Some(&file), &flags).unwrap();
        assert_eq!(cfg.seed, 4);
        assert_eq!(cfg.trials, 5);
    }

    #[test]
    fn rejects_bad_tolerance() {
        let flags = FlagOverrides {
            newton_tol: Some(0.0),
            ..FlagOverrides::default()
        };
        assert!(resolve(None, &flags).is_err());
    }

    #[test]
    fn rejects_zero_trials() {
        let flags = FlagOverrides {
            trials: Some(0),
            ..FlagOverrides::default()
        };
        assert!(resolve(None, &flags).is_err());
    }

    #[test]
    fn rejects_out_of_range_sweeps() {
        let flags = FlagOverrides {
            n: Some(IntRange { start: 1, end: 9 }),
            ..FlagOverrides::default()
        };
        assert!(resolve(None, &flags).is_err());
        let flags = FlagOverrides {
            i: Some(IntRange {
                start: -500,
                end: 0,
            }),
            ..FlagOverrides::default()
        };
        assert!(resolve(None, &flags).is_err());
    }
}
