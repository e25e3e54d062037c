//! Origin-destination demand: per-second arrival rates over a planning horizon.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Travel direction on the double-track line.
///
/// Upstream stations carry ids `1..=N`, downstream stations `N+1..=2N`.
/// Passengers never cross directions inside the model; a physical platform
/// appears once per direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    /// Both directions, upstream first.
    pub const BOTH: [Direction; 2] = [Direction::Up, Direction::Down];
}

#[derive(Debug, Error, PartialEq)]
pub enum DemandError {
    #[error("scale factor must be positive, got {0}")]
    NonPositiveFactor(f64),
    #[error("station pair {0}->{1} is invalid: {2}")]
    InvalidPair(u32, u32, &'static str),
    #[error("horizon start {0} must precede end {1}")]
    EmptyHorizon(f64, f64),
}

/// Per-second passenger arrival rates for ordered in-direction station pairs.
///
/// Pairs always run with the direction of travel (`i < j`, both ids in the
/// same direction); cross-direction pairs are rejected on insertion. Rates
/// are canonical: a count matrix is converted by dividing by the horizon
/// length on ingestion.
#[derive(Debug, Clone, PartialEq)]
pub struct ODMatrix {
    n: u32,
    rate: BTreeMap<(u32, u32), f64>,
    t_start: f64,
    t_end: f64,
}

impl ODMatrix {
    /// Empty matrix for a line with `stations_per_direction` stations per
    /// direction over `[t_start, t_end]` seconds-of-day.
    pub fn new(stations_per_direction: u32, t_start: f64, t_end: f64) -> Result<Self, DemandError> {
        if t_start >= t_end {
            return Err(DemandError::EmptyHorizon(t_start, t_end));
        }
        Ok(ODMatrix {
            n: stations_per_direction,
            rate: BTreeMap::new(),
            t_start,
            t_end,
        })
    }

    pub fn stations_per_direction(&self) -> u32 {
        self.n
    }

    pub fn horizon(&self) -> (f64, f64) {
        (self.t_start, self.t_end)
    }

    pub fn horizon_length(&self) -> f64 {
        self.t_end - self.t_start
    }

    /// Direction a station id belongs to.
    pub fn direction_of(&self, station: u32) -> Option<Direction> {
        if station >= 1 && station <= self.n {
            Some(Direction::Up)
        } else if station > self.n && station <= 2 * self.n {
            Some(Direction::Down)
        } else {
            None
        }
    }

    /// Sets the arrival rate for the ordered pair `(from, to)`.
    pub fn set_rate(&mut self, from: u32, to: u32, rate: f64) -> Result<(), DemandError> {
        if rate < 0.0 || !rate.is_finite() {
            return Err(DemandError::InvalidPair(from, to, "rate must be finite and >= 0"));
        }
        let df = self
            .direction_of(from)
            .ok_or(DemandError::InvalidPair(from, to, "origin outside line"))?;
        let dt = self
            .direction_of(to)
            .ok_or(DemandError::InvalidPair(from, to, "destination outside line"))?;
        if df != dt {
            return Err(DemandError::InvalidPair(from, to, "pair spans directions"));
        }
        if from >= to {
            return Err(DemandError::InvalidPair(from, to, "pair must run with the direction"));
        }
        if rate > 0.0 {
            self.rate.insert((from, to), rate);
        } else {
            self.rate.remove(&(from, to));
        }
        Ok(())
    }

    /// Arrival rate for `(from, to)`; zero for any pair never set.
    pub fn rate(&self, from: u32, to: u32) -> f64 {
        self.rate.get(&(from, to)).copied().unwrap_or(0.0)
    }

    /// Ordered iteration over pairs with positive rate.
    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        self.rate.iter().map(|(&(i, j), &r)| (i, j, r))
    }

    /// Destinations with positive rate out of one origin, in station order.
    pub fn pairs_from(&self, origin: u32) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.rate
            .range((origin, 0)..(origin + 1, 0))
            .map(|(&(_, j), &r)| (j, r))
    }

    /// Pairs with positive rate restricted to one direction.
    pub fn pairs_in(&self, dir: Direction) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        let n = self.n;
        self.pairs().filter(move |&(i, _, _)| {
            let up = i <= n;
            match dir {
                Direction::Up => up,
                Direction::Down => !up,
            }
        })
    }

    /// Returns a copy with every rate multiplied by `factor`.
    pub fn scale(&self, factor: f64) -> Result<ODMatrix, DemandError> {
        if factor <= 0.0 || !factor.is_finite() {
            return Err(DemandError::NonPositiveFactor(factor));
        }
        let mut out = self.clone();
        for v in out.rate.values_mut() {
            *v *= factor;
        }
        Ok(out)
    }

    /// Total passengers arriving over the horizon in one direction:
    /// `Σ rate · (t_end − t_start)`.
    pub fn directional_total(&self, dir: Direction) -> f64 {
        let len = self.horizon_length();
        self.pairs_in(dir).map(|(_, _, r)| r * len).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn od3() -> ODMatrix {
        ODMatrix::new(3, 0.0, 600.0).unwrap()
    }

    #[test]
    fn scale_applies_peak_uplift_per_cell() {
        let mut od = od3();
        od.set_rate(1, 2, 0.2).unwrap();
        let scaled = od.scale(1.75).unwrap();
        assert!((scaled.rate(1, 2) - 0.35).abs() < 1e-12);
        assert_eq!(scaled.horizon(), od.horizon());
    }

    #[test]
    fn scale_identity_and_errors() {
        let mut od = od3();
        od.set_rate(1, 3, 0.4).unwrap();
        assert_eq!(od.scale(1.0).unwrap(), od);
        assert_eq!(od.scale(0.0).unwrap_err(), DemandError::NonPositiveFactor(0.0));
        assert_eq!(od.scale(-2.0).unwrap_err(), DemandError::NonPositiveFactor(-2.0));
    }

    #[test]
    fn directional_total_single_pair() {
        let mut od = od3();
        od.set_rate(1, 2, 0.1).unwrap();
        assert!((od.directional_total(Direction::Up) - 60.0).abs() < 1e-12);
        assert_eq!(od.directional_total(Direction::Down), 0.0);
    }

    #[test]
    fn directional_total_sums_pairs() {
        let mut od = ODMatrix::new(3, 0.0, 300.0).unwrap();
        od.set_rate(1, 2, 0.1).unwrap();
        od.set_rate(2, 3, 0.2).unwrap();
        assert!((od.directional_total(Direction::Up) - 90.0).abs() < 1e-12);
    }

    #[test]
    fn empty_matrix_totals_zero() {
        assert_eq!(od3().directional_total(Direction::Up), 0.0);
        assert_eq!(od3().directional_total(Direction::Down), 0.0);
    }

    #[test]
    fn cross_direction_pairs_rejected() {
        let mut od = od3();
        // stations 1..=3 upstream, 4..=6 downstream
        assert!(od.set_rate(1, 4, 0.1).is_err());
        assert!(od.set_rate(5, 4, 0.1).is_err());
        assert!(od.set_rate(4, 6, 0.1).is_ok());
    }

    #[test]
    fn down_direction_total() {
        let mut od = od3();
        od.set_rate(4, 6, 0.05).unwrap();
        assert!((od.directional_total(Direction::Down) - 30.0).abs() < 1e-12);
    }
}
