//! Digital coil-selection scheme.
//!
//! Each coil carries two MEMS switches: a parallel switch (PSW) that ties its
//! first terminal to the next coil's first terminal, and a parallel/series
//! switch (PSSW) whose tip moves *up* to chain the next coil in series or
//! *down* to complete a parallel connection. The hardware wiring supports one
//! series chain followed by at most one parallel bank, so every reachable
//! setting canonicalizes to a pair (k series coils, m-way parallel bank).
//!
//! `enumerate_steps` walks every canonical configuration and yields the
//! n(n+1)/2 distinct inductance steps.

use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum SwitchError {
    #[error("switch word must describe at least one coil")]
    EmptyWord,
    #[error("unknown switch token `{token}` at coil {index}; expected S, P or O")]
    UnknownToken { token: char, index: usize },
    #[error("coil {index}: parallel switch closed while parallel/series switch is up")]
    ConflictingSwitches { index: usize },
    #[error("coil {index}: switch pair ({psw}, {pssw}) engages only half a connection")]
    HalfEngaged {
        index: usize,
        psw: &'static str,
        pssw: &'static str,
    },
    #[error("coil {index}: series selection after the parallel bank started")]
    SeriesAfterParallel { index: usize },
    #[error("coil {index}: parallel bank must be one consecutive run")]
    SplitParallelBank { index: usize },
    #[error("no conducting path: every coil is disconnected")]
    NoPath,
    #[error("configuration (k={series}, m={parallel}) invalid for {coils} coils: {reason}")]
    InvalidConfiguration {
        series: usize,
        parallel: usize,
        coils: usize,
        reason: &'static str,
    },
    #[error("unit inductance must be positive and finite, got {0}")]
    NonPositiveUnitInductance(f64),
    #[error("coil count must be at least 1")]
    ZeroCoils,
    #[error("coil count {0} is too large to enumerate")]
    TooManyCoils(usize),
}

/// State of a coil's parallel switch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParallelSwitch {
    Open,
    Closed,
}

/// State of a coil's parallel/series switch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesParallelSwitch {
    Open,
    /// Tip up: chain the next coil in series.
    Up,
    /// Tip down: complete a parallel connection to the next coil.
    Down,
}

/// Per-coil switch states for a bank of n coils.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchWord {
    coils: Vec<(ParallelSwitch, SeriesParallelSwitch)>,
}

impl SwitchWord {
    pub fn new(coils: Vec<(ParallelSwitch, SeriesParallelSwitch)>) -> Result<Self, SwitchError> {
        if coils.is_empty() {
            return Err(SwitchError::EmptyWord);
        }
        Ok(Self { coils })
    }

    /// Parses the compact text grammar: one token per coil, `S` selects the
    /// coil in series (PSW open, PSSW up), `P` in parallel (PSW closed, PSSW
    /// down), `O` leaves it disconnected. Case-insensitive.
    pub fn from_text(text: &str) -> Result<Self, SwitchError> {
        let coils = text
            .chars()
            .enumerate()
            .map(|(index, token)| match token.to_ascii_uppercase() {
                'S' => Ok((ParallelSwitch::Open, SeriesParallelSwitch::Up)),
                'P' => Ok((ParallelSwitch::Closed, SeriesParallelSwitch::Down)),
                'O' => Ok((ParallelSwitch::Open, SeriesParallelSwitch::Open)),
                _ => Err(SwitchError::UnknownToken { token, index }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coils)
    }

    /// Synthesizes the canonical word for a configuration: k series tokens,
    /// then the parallel bank, then open coils.
    pub fn from_configuration(config: &SwitchConfiguration) -> Self {
        let mut coils = Vec::with_capacity(config.coil_count());
        for _ in 0..config.series_count() {
            coils.push((ParallelSwitch::Open, SeriesParallelSwitch::Up));
        }
        for _ in 0..config.parallel_count() {
            coils.push((ParallelSwitch::Closed, SeriesParallelSwitch::Down));
        }
        while coils.len() < config.coil_count() {
            coils.push((ParallelSwitch::Open, SeriesParallelSwitch::Open));
        }
        Self { coils }
    }

    pub fn coil_count(&self) -> usize {
        self.coils.len()
    }

    pub fn coils(&self) -> &[(ParallelSwitch, SeriesParallelSwitch)] {
        &self.coils
    }

    pub fn to_text(&self) -> String {
        self.coils
            .iter()
            .map(|state| match state {
                (ParallelSwitch::Open, SeriesParallelSwitch::Up) => 'S',
                (ParallelSwitch::Closed, SeriesParallelSwitch::Down) => 'P',
                (ParallelSwitch::Open, SeriesParallelSwitch::Open) => 'O',
                // half-engaged or conflicting pairs have no canonical token
                _ => '?',
            })
            .collect()
    }
}

/// Canonical (k series coils, m-way parallel bank) configuration over n coils.
///
/// Invariants: `k + m <= n`, not both zero, and `m != 1` (a one-coil bank is
/// electrically a series coil and is canonicalized during parsing).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SwitchConfiguration {
    series: usize,
    parallel: usize,
    coils: usize,
}

impl SwitchConfiguration {
    pub fn new(series: usize, parallel: usize, coils: usize) -> Result<Self, SwitchError> {
        let invalid = |reason| SwitchError::InvalidConfiguration {
            series,
            parallel,
            coils,
            reason,
        };
        if coils == 0 {
            return Err(invalid("no coils available"));
        }
        if series + parallel > coils {
            return Err(invalid("selects more coils than available"));
        }
        if series == 0 && parallel == 0 {
            return Err(invalid("selects no coils"));
        }
        if parallel == 1 {
            return Err(invalid(
                "one-coil parallel bank must be canonicalized into the series count",
            ));
        }
        Ok(Self {
            series,
            parallel,
            coils,
        })
    }

    /// Number of coils in the series chain (k).
    pub fn series_count(&self) -> usize {
        self.series
    }

    /// Number of coils in the parallel bank (m); zero or at least two.
    pub fn parallel_count(&self) -> usize {
        self.parallel
    }

    /// Total coils available (n).
    pub fn coil_count(&self) -> usize {
        self.coils
    }

    /// Dimensionless multiple of the unit coil inductance: k + 1/m.
    pub fn inductance_factor(&self) -> f64 {
        let series = self.series as f64;
        if self.parallel >= 2 {
            series + 1.0 / self.parallel as f64
        } else {
            series
        }
    }

    // Exact rational value of the factor, for sorting and distinctness checks.
    fn factor_rational(&self) -> (u128, u128) {
        if self.parallel >= 2 {
            let m = self.parallel as u128;
            (self.series as u128 * m + 1, m)
        } else {
            (self.series as u128, 1)
        }
    }
}

/// Result of parsing a switch word: the canonical configuration plus any
/// canonicalization diagnostic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedWord {
    pub configuration: SwitchConfiguration,
    /// Set when a one-coil parallel bank was folded into the series chain.
    pub note: Option<String>,
}

/// Derives the canonical configuration from per-coil switch states.
pub fn parse_switch_word(word: &SwitchWord) -> Result<ParsedWord, SwitchError> {
    #[derive(PartialEq, Clone, Copy)]
    enum Role {
        Series,
        Parallel,
        Disconnected,
    }

    let mut roles = Vec::with_capacity(word.coil_count());
    for (index, state) in word.coils().iter().enumerate() {
        let role = match state {
            (ParallelSwitch::Open, SeriesParallelSwitch::Up) => Role::Series,
            (ParallelSwitch::Closed, SeriesParallelSwitch::Down) => Role::Parallel,
            (ParallelSwitch::Open, SeriesParallelSwitch::Open) => Role::Disconnected,
            (ParallelSwitch::Closed, SeriesParallelSwitch::Up) => {
                return Err(SwitchError::ConflictingSwitches { index })
            }
            (ParallelSwitch::Closed, SeriesParallelSwitch::Open) => {
                return Err(SwitchError::HalfEngaged {
                    index,
                    psw: "closed",
                    pssw: "open",
                })
            }
            (ParallelSwitch::Open, SeriesParallelSwitch::Down) => {
                return Err(SwitchError::HalfEngaged {
                    index,
                    psw: "open",
                    pssw: "down",
                })
            }
        };
        roles.push(role);
    }

    // The wiring supports one series chain followed by one parallel bank:
    // no series coil after the bank starts, and the bank is one run.
    let mut bank_started = false;
    let mut bank_ended = false;
    for (index, role) in roles.iter().enumerate() {
        match role {
            Role::Parallel => {
                if bank_ended {
                    return Err(SwitchError::SplitParallelBank { index });
                }
                bank_started = true;
            }
            Role::Series => {
                if bank_started {
                    return Err(SwitchError::SeriesAfterParallel { index });
                }
            }
            Role::Disconnected => {
                if bank_started {
                    bank_ended = true;
                }
            }
        }
    }

    let series = roles.iter().filter(|r| **r == Role::Series).count();
    let parallel = roles.iter().filter(|r| **r == Role::Parallel).count();
    if series == 0 && parallel == 0 {
        return Err(SwitchError::NoPath);
    }

    if parallel == 1 {
        let configuration = SwitchConfiguration::new(series + 1, 0, word.coil_count())?;
        return Ok(ParsedWord {
            configuration,
            note: Some(
                "one-coil parallel bank is electrically a series coil; counted toward k"
                    .to_string(),
            ),
        });
    }

    Ok(ParsedWord {
        configuration: SwitchConfiguration::new(series, parallel, word.coil_count())?,
        note: None,
    })
}

/// Total inductance of a configuration: k·L + L/m (bank term only when m ≥ 2).
pub fn total_inductance(config: &SwitchConfiguration, unit_inductance: f64) -> Result<f64, SwitchError> {
    if unit_inductance <= 0.0 || !unit_inductance.is_finite() {
        return Err(SwitchError::NonPositiveUnitInductance(unit_inductance));
    }
    let series_term = config.series_count() as f64 * unit_inductance;
    let bank_term = if config.parallel_count() >= 2 {
        unit_inductance / config.parallel_count() as f64
    } else {
        0.0
    };
    Ok(series_term + bank_term)
}

/// Number of distinct inductance steps reachable with n coils: n(n+1)/2.
pub fn step_count(coils: usize) -> Result<u64, SwitchError> {
    if coils == 0 {
        return Err(SwitchError::ZeroCoils);
    }
    let n = coils as u64;
    n.checked_mul(n + 1)
        .map(|product| product / 2)
        .ok_or(SwitchError::TooManyCoils(coils))
}

/// One row of a [`StepTable`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepEntry {
    pub configuration: SwitchConfiguration,
    /// Dimensionless multiple of the unit coil inductance.
    pub factor: f64,
    /// Total inductance in henries for the table's unit inductance.
    pub inductance: f64,
}

/// Every reachable inductance step, ascending by factor.
#[derive(Debug, Clone, PartialEq)]
pub struct StepTable {
    unit_inductance: f64,
    entries: Vec<StepEntry>,
}

impl StepTable {
    pub fn unit_inductance(&self) -> f64 {
        self.unit_inductance
    }

    pub fn entries(&self) -> &[StepEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn factors(&self) -> Vec<f64> {
        self.entries.iter().map(|entry| entry.factor).collect()
    }
}

/// Enumerates every valid (k, m) over n coils, sorted ascending by factor.
///
/// Distinctness of the factors is checked in exact rational arithmetic; the
/// returned table always has exactly `step_count(n)` rows.
pub fn enumerate_steps(coils: usize, unit_inductance: f64) -> Result<StepTable, SwitchError> {
    if coils == 0 {
        return Err(SwitchError::ZeroCoils);
    }
    if unit_inductance <= 0.0 || !unit_inductance.is_finite() {
        return Err(SwitchError::NonPositiveUnitInductance(unit_inductance));
    }
    // Entry count is n(n+1)/2; cap n so the table stays addressable.
    if coils > 1 << 20 {
        return Err(SwitchError::TooManyCoils(coils));
    }

    let mut entries = Vec::new();
    for series in 0..=coils {
        let mut bank_sizes = vec![0];
        bank_sizes.extend(2..=coils.saturating_sub(series));
        for parallel in bank_sizes {
            if series == 0 && parallel == 0 {
                continue;
            }
            let configuration = SwitchConfiguration::new(series, parallel, coils)?;
            let factor = configuration.inductance_factor();
            entries.push(StepEntry {
                configuration,
                factor,
                inductance: factor * unit_inductance,
            });
        }
    }

    // Sort by the exact rational factor so ordering never depends on
    // floating-point rounding.
    entries.sort_by(|a, b| {
        let (an, ad) = a.configuration.factor_rational();
        let (bn, bd) = b.configuration.factor_rational();
        (an * bd).cmp(&(bn * ad))
    });
    // Deduplicate by exact value. Distinct (k, m) pairs always yield distinct
    // factors for this topology, so the removal is asserted to be a no-op.
    let before = entries.len();
    entries.dedup_by(|a, b| {
        let (an, ad) = a.configuration.factor_rational();
        let (bn, bd) = b.configuration.factor_rational();
        an * bd == bn * ad
    });
    assert_eq!(entries.len(), before, "inductance steps must be distinct");

    debug_assert_eq!(entries.len() as u64, step_count(coils)?);
    Ok(StepTable {
        unit_inductance,
        entries,
    })
}
