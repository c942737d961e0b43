//! Timestamped activity events and inter-event timing profiles.
//!
//! An event is `(entity, domain, t)`: some actor did something somewhere at
//! time `t`. The timing signature of an actor is the distribution of gaps
//! between its consecutive events; two actors driven by the same process have
//! close signatures, which is measured with the exact two-sample
//! Kolmogorov-Smirnov distance.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One activity record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub entity: String,
    pub domain: String,
    pub t: f64,
}

/// Identifies one timing profile: an entity within a domain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProfileKey {
    pub entity: String,
    pub domain: String,
}

impl fmt::Display for ProfileKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.entity, self.domain)
    }
}

/// Half-open observation window `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub start: f64,
    pub end: f64,
}

impl Window {
    pub fn new(start: f64, end: f64) -> Result<Self> {
        if !start.is_finite() || !end.is_finite() || end <= start {
            return Err(Error::invalid(
                "window",
                format!("need finite start < end, got [{start}, {end})"),
            ));
        }
        Ok(Window { start, end })
    }

    pub fn contains(&self, t: f64) -> bool {
        self.start <= t && t < self.end
    }
}

/// A flat list of events, in no particular order.
#[derive(Debug, Clone, Default)]
pub struct EventLog {
    pub events: Vec<Event>,
}

impl EventLog {
    pub fn new(events: Vec<Event>) -> Self {
        EventLog { events }
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Read newline-delimited JSON, one event object per line.
    /// Blank lines are ignored; a malformed line is reported with its
    /// 1-based line number.
    pub fn read_jsonl(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let pstr = path.display().to_string();
        let file = File::open(path).map_err(|e| Error::io(&pstr, e))?;
        let mut events = Vec::new();
        for (idx, line) in BufReader::new(file).lines().enumerate() {
            let lineno = idx + 1;
            let line = line.map_err(|e| Error::io(&pstr, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let ev: Event = serde_json::from_str(&line)
                .map_err(|e| Error::parse(&pstr, lineno, e.to_string()))?;
            validate_event(&ev).map_err(|msg| Error::parse(&pstr, lineno, msg))?;
            events.push(ev);
        }
        Ok(EventLog { events })
    }

    pub fn write_jsonl(&self, path: impl AsRef<Path>) -> Result<()> {
        let pstr = path.as_ref().display().to_string();
        let file = File::create(path.as_ref()).map_err(|e| Error::io(&pstr, e))?;
        let mut w = BufWriter::new(file);
        for ev in &self.events {
            let line = serde_json::to_string(ev)
                .map_err(|e| Error::invalid("event", e.to_string()))?;
            writeln!(w, "{line}").map_err(|e| Error::io(&pstr, e))?;
        }
        w.flush().map_err(|e| Error::io(&pstr, e))
    }

    /// Read a CSV file with header `entity,domain,t`.
    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let pstr = path.as_ref().display().to_string();
        let file = File::open(path.as_ref()).map_err(|e| Error::io(&pstr, e))?;
        let mut rdr = csv::Reader::from_reader(BufReader::new(file));
        let mut events = Vec::new();
        for row in rdr.deserialize::<Event>() {
            let ev = row.map_err(|e| {
                let line = e
                    .position()
                    .map(|p| p.line() as usize)
                    .unwrap_or(0);
                Error::parse(&pstr, line, e.to_string())
            })?;
            // csv positions point at the record that was just read
            validate_event(&ev).map_err(|msg| Error::parse(&pstr, 0, msg))?;
            events.push(ev);
        }
        Ok(EventLog { events })
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let pstr = path.as_ref().display().to_string();
        let file = File::create(path.as_ref()).map_err(|e| Error::io(&pstr, e))?;
        let mut w = csv::Writer::from_writer(BufWriter::new(file));
        for ev in &self.events {
            w.serialize(ev)
                .map_err(|e| Error::invalid("event", e.to_string()))?;
        }
        w.flush().map_err(|e| Error::io(&pstr, e))
    }

    /// Dispatch on file extension: `.jsonl` / `.ndjson` / `.json` are treated
    /// as newline-delimited JSON, `.csv` as CSV.
    pub fn read_auto(path: impl AsRef<Path>) -> Result<Self> {
        let p = path.as_ref();
        match p.extension().and_then(|e| e.to_str()) {
            Some("jsonl") | Some("ndjson") | Some("json") => Self::read_jsonl(p),
            Some("csv") => Self::read_csv(p),
            other => Err(Error::invalid(
                "input path",
                format!(
                    "cannot infer format of {:?} (extension {:?}); expected .jsonl or .csv",
                    p, other
                ),
            )),
        }
    }
}

fn validate_event(ev: &Event) -> std::result::Result<(), String> {
    if !ev.t.is_finite() {
        return Err(format!(
            "non-finite timestamp {} for entity {:?} in domain {:?}",
            ev.t, ev.entity, ev.domain
        ));
    }
    if ev.entity.is_empty() {
        return Err("empty entity".into());
    }
    if ev.domain.is_empty() {
        return Err("empty domain".into());
    }
    Ok(())
}

/// The timing signature of one profile: sorted inter-event gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct IntereventProfile {
    key: ProfileKey,
    deltas: Vec<f64>, // sorted ascending, nonempty, finite, >= 0
}

impl IntereventProfile {
    /// Build a profile from raw gaps. Rejects empty input and any
    /// non-finite or negative gap, so downstream distance computations are
    /// total functions.
    pub fn new(key: ProfileKey, mut deltas: Vec<f64>) -> Result<Self> {
        if deltas.is_empty() {
            return Err(Error::invalid(
                "profile",
                format!("{key}: a timing profile needs at least one gap"),
            ));
        }
        for &d in &deltas {
            if !d.is_finite() || d < 0.0 {
                return Err(Error::invalid(
                    "profile",
                    format!("{key}: bad inter-event gap {d}"),
                ));
            }
        }
        deltas.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(IntereventProfile { key, deltas })
    }

    pub fn key(&self) -> &ProfileKey {
        &self.key
    }

    /// Sorted gaps.
    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        false // by construction
    }

    /// Empirical CDF at `x`: fraction of gaps `<= x`.
    pub fn ecdf(&self, x: f64) -> f64 {
        ecdf_sorted(&self.deltas, x)
    }

    /// Exact KS distance to another profile.
    pub fn ks_to(&self, other: &IntereventProfile) -> f64 {
        ks_statistic_sorted(&self.deltas, &other.deltas)
    }
}

/// Empirical CDF of a sorted sample at `x`.
pub fn ecdf_sorted(sorted: &[f64], x: f64) -> f64 {
    let k = sorted.partition_point(|&v| v <= x);
    k as f64 / sorted.len() as f64
}

/// Exact two-sample Kolmogorov-Smirnov statistic.
///
/// Both samples must be sorted ascending and nonempty; this is checked and
/// reported as a validation error otherwise. The statistic is the supremum of
/// `|F_a - F_b|` over the merged sample points, with ties handled by
/// advancing both empirical CDFs past every copy of the current value before
/// comparing.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> Result<f64> {
    for (name, s) in [("first", a), ("second", b)] {
        if s.is_empty() {
            return Err(Error::invalid("sample", format!("{name} sample is empty")));
        }
        if s.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid(
                "sample",
                format!("{name} sample contains a non-finite value"),
            ));
        }
        if s.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invalid(
                "sample",
                format!("{name} sample is not sorted ascending"),
            ));
        }
    }
    Ok(ks_statistic_sorted(a, b))
}

fn ks_statistic_sorted(a: &[f64], b: &[f64]) -> f64 {
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < a.len() || j < b.len() {
        let x = match (a.get(i), b.get(j)) {
            (Some(&u), Some(&v)) => u.min(v),
            (Some(&u), None) => u,
            (None, Some(&v)) => v,
            (None, None) => unreachable!(),
        };
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        let diff = (i as f64 / n - j as f64 / m).abs();
        if diff > d {
            d = diff;
        }
    }
    d
}

/// Survival function of the Kolmogorov distribution,
/// `Q(z) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 z^2)`.
///
/// Uses that alternating series for large `z` and the dual theta-series
/// expansion `1 - sqrt(2 pi)/z sum_{odd j} exp(-j^2 pi^2 / (8 z^2))` for
/// small `z`, where the alternating form loses accuracy.
pub fn kolmogorov_sf(z: f64) -> f64 {
    if z <= 0.0 {
        return 1.0;
    }
    if z < 1.18 {
        let x = (-std::f64::consts::PI.powi(2) / (8.0 * z * z)).exp();
        let p = (2.0 * std::f64::consts::PI).sqrt() / z
            * (x + x.powi(9) + x.powi(25) + x.powi(49));
        (1.0 - p).clamp(0.0, 1.0)
    } else {
        let u = (-2.0 * z * z).exp();
        let s = u - u.powi(4) + u.powi(9) - u.powi(16) + u.powi(25) - u.powi(36);
        (2.0 * s).clamp(0.0, 1.0)
    }
}

/// Asymptotic (large-sample) two-sided p-value for a two-sample KS
/// statistic `d` computed from samples of sizes `n` and `m`.
pub fn ks_p_value(d: f64, n: usize, m: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&d) {
        return Err(Error::invalid(
            "ks statistic",
            format!("must be in [0, 1], got {d}"),
        ));
    }
    if n == 0 || m == 0 {
        return Err(Error::invalid("sample sizes", "must both be positive"));
    }
    let en = (n as f64 * m as f64) / (n as f64 + m as f64);
    Ok(kolmogorov_sf(d * en.sqrt()))
}

/// Options controlling how timing profiles are built from an event log.
#[derive(Debug, Clone)]
pub struct BuildOptions {
    /// Profiles with fewer events than this are omitted (and reported).
    pub min_events: usize,
    /// Keep zero gaps produced by exactly tied timestamps instead of
    /// collapsing tied events into one.
    pub keep_zero_deltas: bool,
    /// Restrict to events inside this half-open window before counting.
    pub window: Option<Window>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            min_events: 5,
            keep_zero_deltas: false,
            window: None,
        }
    }
}

/// Result of profile construction: the profiles that met the event-count
/// threshold, plus the keys that were omitted and how many events each had.
#[derive(Debug, Clone)]
pub struct BuildOutcome {
    pub profiles: Vec<IntereventProfile>,
    pub omitted: Vec<(ProfileKey, usize)>,
}

/// Group events by `(entity, domain)`, sort each group's timestamps,
/// collapse exact timestamp ties (unless told to keep them), difference,
/// and keep groups with at least `min_events` events.
///
/// Output is ordered by key, so downstream results are independent of the
/// order of the input log.
pub fn build_profiles(log: &EventLog, opts: &BuildOptions) -> Result<BuildOutcome> {
    if opts.min_events < 2 {
        return Err(Error::invalid(
            "min_events",
            "need at least 2 events to form one gap",
        ));
    }
    let mut groups: BTreeMap<ProfileKey, Vec<f64>> = BTreeMap::new();
    for ev in &log.events {
        if !ev.t.is_finite() {
            return Err(Error::invalid(
                "event log",
                format!(
                    "non-finite timestamp {} for entity {:?} in domain {:?}",
                    ev.t, ev.entity, ev.domain
                ),
            ));
        }
        if let Some(w) = &opts.window {
            if !w.contains(ev.t) {
                continue;
            }
        }
        groups
            .entry(ProfileKey {
                entity: ev.entity.clone(),
                domain: ev.domain.clone(),
            })
            .or_default()
            .push(ev.t);
    }

    let mut profiles = Vec::new();
    let mut omitted = Vec::new();
    for (key, mut ts) in groups {
        ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if !opts.keep_zero_deltas {
            ts.dedup();
        }
        if ts.len() < opts.min_events {
            omitted.push((key, ts.len()));
            continue;
        }
        let deltas: Vec<f64> = ts.windows(2).map(|w| w[1] - w[0]).collect();
        profiles.push(IntereventProfile::new(key, deltas)?);
    }
    Ok(BuildOutcome { profiles, omitted })
}

/// Symmetric table of pairwise KS distances between profiles.
///
/// Excluded pairs (the diagonal, and same-domain pairs when the table was
/// built cross-domain-only) carry no score.
#[derive(Debug, Clone)]
pub struct KsTable {
    keys: Vec<ProfileKey>,
    scores: Vec<f64>, // row-major n*n; NaN marks an excluded pair
}

impl KsTable {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[ProfileKey] {
        &self.keys
    }

    /// Score for the pair `(i, j)`, or `None` if the pair is excluded.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        let v = self.scores[i * self.keys.len() + j];
        if v.is_nan() {
            None
        } else {
            Some(v)
        }
    }

    /// Iterate over included unordered pairs `(i, j, score)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.keys.len();
        (0..n).flat_map(move |i| {
            ((i + 1)..n).filter_map(move |j| self.get(i, j).map(|d| (i, j, d)))
        })
    }
}

/// Compute all pairwise KS distances between profiles.
///
/// The diagonal is always excluded. With `cross_domain_only`, pairs sharing a
/// domain are excluded as well. Fewer than two profiles is not a computable
/// problem and is reported as insufficient data.
pub fn pairwise_ks(profiles: &[IntereventProfile], cross_domain_only: bool) -> Result<KsTable> {
    if profiles.len() < 2 {
        return Err(Error::Insufficient(format!(
            "pairwise distances need at least 2 profiles, got {}",
            profiles.len()
        )));
    }
    let mut seen = BTreeSet::new();
    for p in profiles {
        if !seen.insert(p.key().clone()) {
            return Err(Error::invalid(
                "profiles",
                format!("duplicate profile key {}", p.key()),
            ));
        }
    }
    let n = profiles.len();
    let mut scores = vec![f64::NAN; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            if cross_domain_only && profiles[i].key().domain == profiles[j].key().domain {
                continue;
            }
            let d = profiles[i].ks_to(&profiles[j]);
            scores[i * n + j] = d;
            scores[j * n + i] = d;
        }
    }
    Ok(KsTable {
        keys: profiles.iter().map(|p| p.key().clone()).collect(),
        scores,
    })
}
