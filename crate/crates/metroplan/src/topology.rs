//! Physical line description and pre-model parameter computation: running
//! times from kinematics, crowdedness-driven dwell grouping, fleet sizing
//! and depot siting.

use crate::demand::{Direction, ODMatrix};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TopologyError {
    #[error("segment of {distance} m is shorter than the {envelope} m accel+decel envelope")]
    DistanceTooShort { distance: f64, envelope: f64 },
    #[error("station {0} is not on the line")]
    UnknownStation(u32),
    #[error("effective capacity must be positive (capacity {capacity}, load factor {load_factor})")]
    NonPositiveCapacity { capacity: f64, load_factor: f64 },
    #[error("load factor {0} must lie in (0, 1]")]
    InvalidLoadFactor(f64),
    #[error("direction has {stations} stations, fewer than the minimum span {min_span}")]
    LineTooShort { stations: u32, min_span: u32 },
    #[error("invalid topology: {0}")]
    Invalid(String),
}

/// One station of one direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Station {
    /// 1-based id; upstream `1..=N`, downstream `N+1..=2N`.
    pub index: u32,
    /// Whether trains can reverse here.
    pub is_turnaround: bool,
    /// Dwell group the station was assigned by the dwell policy.
    pub dwell_group: u32,
}

/// Kinematic envelope used to derive running times.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KinematicParams {
    /// Cruise speed, m/s.
    pub v_max: f64,
    /// Acceleration, m/s^2.
    pub v_acc: f64,
    /// Deceleration, m/s^2.
    pub v_dec: f64,
}

impl KinematicParams {
    pub fn validate(&self) -> Result<(), TopologyError> {
        if self.v_max > 0.0 && self.v_acc > 0.0 && self.v_dec > 0.0 {
            Ok(())
        } else {
            Err(TopologyError::Invalid(
                "kinematic parameters must be strictly positive".into(),
            ))
        }
    }

    /// Extra time spent accelerating from standstill to cruise.
    pub fn accel_time(&self) -> f64 {
        self.v_max / self.v_acc
    }

    /// Extra time spent braking from cruise to standstill.
    pub fn decel_time(&self) -> f64 {
        self.v_max / self.v_dec
    }
}

/// Running time over one segment: time to accelerate to cruise, brake to a
/// stop, and cover the remaining distance at cruise speed.
///
/// Errors with `DistanceTooShort` when the segment cannot fit the
/// acceleration and deceleration envelopes (the model assumes cruise speed
/// is reached on every segment).
pub fn compute_running_time(distance: f64, k: &KinematicParams) -> Result<f64, TopologyError> {
    k.validate()?;
    let d_acc = k.v_max * k.v_max / (2.0 * k.v_acc);
    let d_dec = k.v_max * k.v_max / (2.0 * k.v_dec);
    let envelope = d_acc + d_dec;
    if distance < envelope {
        return Err(TopologyError::DistanceTooShort { distance, envelope });
    }
    Ok(k.accel_time() + k.decel_time() + (distance - envelope) / k.v_max)
}

/// Crowdedness-to-dwell mapping: stations are grouped by total crowdedness
/// against ascending thresholds; each group gets a fixed dwell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DwellPolicy {
    /// Strictly ascending crowdedness break-points.
    pub thresholds: Vec<f64>,
    /// Dwell seconds per group; one more entry than `thresholds`.
    pub group_dwell: Vec<f64>,
}

impl DwellPolicy {
    pub fn validate(&self) -> Result<(), TopologyError> {
        if self.group_dwell.len() != self.thresholds.len() + 1 {
            return Err(TopologyError::Invalid(format!(
                "dwell policy needs {} groups for {} thresholds, got {}",
                self.thresholds.len() + 1,
                self.thresholds.len(),
                self.group_dwell.len()
            )));
        }
        if !self.thresholds.windows(2).all(|w| w[0] < w[1]) {
            return Err(TopologyError::Invalid("thresholds must be strictly ascending".into()));
        }
        if self.group_dwell.iter().any(|&d| d <= 0.0) {
            return Err(TopologyError::Invalid("group dwell times must be positive".into()));
        }
        Ok(())
    }

    /// Group for a crowdedness value; a value equal to a threshold joins the
    /// higher group.
    pub fn group_for(&self, crowdedness: f64) -> u32 {
        self.thresholds.partition_point(|&t| t <= crowdedness) as u32
    }
}

/// Total crowdedness of a station: all arrivals into it plus all departures
/// out of it over the matrix horizon.
pub fn compute_crowdedness(od: &ODMatrix, s: u32) -> Result<f64, TopologyError> {
    if od.direction_of(s).is_none() {
        return Err(TopologyError::UnknownStation(s));
    }
    let total = od
        .pairs()
        .filter(|&(i, j, _)| i == s || j == s)
        .map(|(_, _, r)| r)
        .sum();
    Ok(total)
}

/// Dwell seconds for every station id `1..=2N`, grouped by crowdedness.
pub fn assign_dwell_times(od: &ODMatrix, policy: &DwellPolicy) -> Result<Vec<f64>, TopologyError> {
    policy.validate()?;
    let n2 = 2 * od.stations_per_direction();
    (1..=n2)
        .map(|s| {
            let c = compute_crowdedness(od, s)?;
            Ok(policy.group_dwell[policy.group_for(c) as usize])
        })
        .collect()
}

/// Upper bound on services needed to move `total_demand` passengers with
/// trains of `capacity` loaded to at most `load_factor`.
pub fn required_services(
    total_demand: f64,
    capacity: f64,
    load_factor: f64,
) -> Result<u32, TopologyError> {
    if load_factor <= 0.0 || load_factor > 1.0 {
        return Err(TopologyError::InvalidLoadFactor(load_factor));
    }
    if capacity <= 0.0 || capacity * load_factor <= 0.0 {
        return Err(TopologyError::NonPositiveCapacity { capacity, load_factor });
    }
    if total_demand <= 0.0 {
        return Ok(0);
    }
    Ok((total_demand / (capacity * load_factor)).ceil() as u32)
}

/// Places the two intermediate turnaround/depot stations on the upstream
/// direction: returns the contiguous window `[m, n]` with at least
/// `min_span` stations maximizing internal OD flow `Σ_{m<=i<j<=n} p_{i,j}`.
///
/// Tie rule: among equal-flow windows the narrowest wins when the flow is
/// positive (depots hug the demand), the widest when all flow is zero; then
/// the leftmost.
pub fn site_intermediate_depots(od: &ODMatrix, min_span: u32) -> Result<(u32, u32), TopologyError> {
    let n = od.stations_per_direction();
    if n < min_span {
        return Err(TopologyError::LineTooShort { stations: n, min_span });
    }
    let mut best: Option<(u32, u32, f64)> = None;
    for m in 1..=n {
        for w in min_span..=(n - m + 1) {
            let e = m + w - 1;
            let flow: f64 = od
                .pairs_in(Direction::Up)
                .filter(|&(i, j, _)| i >= m && j <= e)
                .map(|(_, _, r)| r)
                .sum();
            let better = match best {
                None => true,
                Some((bm, be, bf)) => {
                    if flow != bf {
                        flow > bf
                    } else {
                        let (bw, ww) = (be - bm, e - m);
                        if ww != bw {
                            if flow > 0.0 {
                                ww < bw
                            } else {
                                ww > bw
                            }
                        } else {
                            m < bm
                        }
                    }
                }
            };
            if better {
                best = Some((m, e, flow));
            }
        }
    }
    let (m, e, _) = best.expect("at least one window exists when n >= min_span");
    Ok((m, e))
}

/// The physical line seen from both directions.
///
/// Stations are listed in id order (`1..=2N`); running times are stored per
/// adjacent in-direction pair. The full running time between adjacent
/// stations is `pure_run + accel_penalty + decel_penalty` when the service
/// stops at both; peak-mode skip-stop removes the penalties of skipped
/// stations.
#[derive(Debug, Clone, PartialEq)]
pub struct LineTopology {
    stations: Vec<Station>,
    /// Pure (cruise) running time per adjacent pair: index `i-1` holds the
    /// upstream pair `(i, i+1)` for `i in 1..N`; index `N-1 + k - 1` holds
    /// the downstream pair `(N+k, N+k+1)` for `k in 1..N`.
    pure_run_time: Vec<f64>,
    accel_penalty: f64,
    decel_penalty: f64,
    dwell_time: Vec<f64>,
    min_turnaround: BTreeMap<u32, f64>,
    /// `(depot id, pull-out station id)`: depot 1 at the upstream origin
    /// terminal, depot 2 at the downstream origin terminal, depots 3 and 4
    /// at the intermediate turnarounds of the upstream and downstream
    /// directions respectively.
    depots: Vec<(u32, u32)>,
}

impl LineTopology {
    /// Builds a validated topology.
    ///
    /// `turnaround_up` lists the four upstream turnaround station ids in
    /// ascending order (terminals included); the downstream turnarounds are
    /// derived by the station pairing `s <-> 2N+1-s`. `pure_run_up` gives
    /// upstream segment cruise times in travel order; downstream segments
    /// mirror them. `dwell_time` has one entry per station id.
    pub fn new(
        stations_per_direction: u32,
        turnaround_up: [u32; 4],
        pure_run_up: Vec<f64>,
        accel_penalty: f64,
        decel_penalty: f64,
        dwell_time: Vec<f64>,
        min_turnaround: f64,
    ) -> Result<Self, TopologyError> {
        let n = stations_per_direction;
        if n < 6 {
            return Err(TopologyError::Invalid(format!(
                "need at least 6 stations per direction for distinct zones, got {n}"
            )));
        }
        let [t1, t2, t3, t4] = turnaround_up;
        if !(t1 == 1 && t4 == n && t1 < t2 && t2 < t3 && t3 < t4) {
            return Err(TopologyError::Invalid(format!(
                "upstream turnarounds must be ascending and include both terminals, got {turnaround_up:?}"
            )));
        }
        if pure_run_up.len() != (n - 1) as usize {
            return Err(TopologyError::Invalid(format!(
                "expected {} upstream segment times, got {}",
                n - 1,
                pure_run_up.len()
            )));
        }
        if pure_run_up.iter().any(|&r| r <= 0.0) {
            return Err(TopologyError::Invalid("pure running times must be positive".into()));
        }
        if dwell_time.len() != (2 * n) as usize {
            return Err(TopologyError::Invalid(format!(
                "expected {} dwell entries, got {}",
                2 * n,
                dwell_time.len()
            )));
        }
        if dwell_time.iter().any(|&e| e < 0.0) {
            return Err(TopologyError::Invalid("dwell times must be non-negative".into()));
        }
        if accel_penalty < 0.0 || decel_penalty < 0.0 {
            return Err(TopologyError::Invalid("run penalties must be non-negative".into()));
        }
        if min_turnaround <= 0.0 {
            return Err(TopologyError::Invalid("min turnaround must be positive".into()));
        }

        let opposite = |s: u32| 2 * n + 1 - s;
        let turnaround_down = [opposite(t4), opposite(t3), opposite(t2), opposite(t1)];
        let mut turn_set: Vec<u32> = turnaround_up.to_vec();
        turn_set.extend_from_slice(&turnaround_down);

        let stations = (1..=2 * n)
            .map(|index| Station {
                index,
                is_turnaround: turn_set.contains(&index),
                dwell_group: 0,
            })
            .collect();

        // downstream pair (N+k, N+k+1) runs over the physical segment
        // (N-k, N-k+1), i.e. the upstream list reversed
        let mut pure_run_time = pure_run_up.clone();
        pure_run_time.extend(pure_run_up.iter().rev());

        let min_turnaround = turn_set.iter().map(|&s| (s, min_turnaround)).collect();

        let depots = vec![(1, t1), (2, n + 1), (3, t2), (4, opposite(t3))];

        Ok(LineTopology {
            stations,
            pure_run_time,
            accel_penalty,
            decel_penalty,
            dwell_time,
            min_turnaround,
            depots,
        })
    }

    /// Replaces the mirrored downstream cruise times with explicit values.
    pub fn with_down_runs(mut self, pure_run_down: Vec<f64>) -> Result<Self, TopologyError> {
        let n = self.stations_per_direction() as usize;
        if pure_run_down.len() != n - 1 {
            return Err(TopologyError::Invalid(format!(
                "expected {} downstream segment times, got {}",
                n - 1,
                pure_run_down.len()
            )));
        }
        if pure_run_down.iter().any(|&r| r <= 0.0) {
            return Err(TopologyError::Invalid("pure running times must be positive".into()));
        }
        self.pure_run_time.truncate(n - 1);
        self.pure_run_time.extend(pure_run_down);
        Ok(self)
    }

    /// Overrides the minimum reversing time at one turnaround station.
    pub fn with_min_turnaround_at(mut self, station: u32, seconds: f64) -> Result<Self, TopologyError> {
        if !self.is_turnaround(station) {
            return Err(TopologyError::UnknownStation(station));
        }
        self.min_turnaround.insert(station, seconds);
        Ok(self)
    }

    /// Stamps dwell groups and dwell seconds from a policy evaluation.
    pub fn with_dwell_policy(mut self, od: &ODMatrix, policy: &DwellPolicy) -> Result<Self, TopologyError> {
        if od.stations_per_direction() != self.stations_per_direction() {
            return Err(TopologyError::Invalid("demand matrix station count mismatch".into()));
        }
        self.dwell_time = assign_dwell_times(od, policy)?;
        for st in &mut self.stations {
            st.dwell_group = policy.group_for(compute_crowdedness(od, st.index)?);
        }
        Ok(self)
    }

    pub fn stations_per_direction(&self) -> u32 {
        self.stations.len() as u32 / 2
    }

    pub fn stations(&self) -> &[Station] {
        &self.stations
    }

    pub fn depots(&self) -> &[(u32, u32)] {
        &self.depots
    }

    /// Direction of a station id.
    pub fn direction_of(&self, s: u32) -> Option<Direction> {
        let n = self.stations_per_direction();
        if (1..=n).contains(&s) {
            Some(Direction::Up)
        } else if (n + 1..=2 * n).contains(&s) {
            Some(Direction::Down)
        } else {
            None
        }
    }

    /// The same physical platform seen from the other direction.
    pub fn opposite(&self, s: u32) -> u32 {
        2 * self.stations_per_direction() + 1 - s
    }

    /// Station ids of one direction in travel order.
    pub fn route(&self, dir: Direction) -> std::ops::RangeInclusive<u32> {
        let n = self.stations_per_direction();
        match dir {
            Direction::Up => 1..=n,
            Direction::Down => n + 1..=2 * n,
        }
    }

    /// First station of a direction.
    pub fn origin(&self, dir: Direction) -> u32 {
        *self.route(dir).start()
    }

    /// Last station of a direction.
    pub fn terminus(&self, dir: Direction) -> u32 {
        *self.route(dir).end()
    }

    /// The four turnaround stations of a direction, ascending.
    pub fn turnarounds(&self, dir: Direction) -> [u32; 4] {
        let n = self.stations_per_direction();
        let mut out = [0u32; 4];
        let mut k = 0;
        for s in self.route(dir) {
            if self.stations[(s - 1) as usize].is_turnaround {
                out[k] = s;
                k += 1;
            }
        }
        debug_assert_eq!(k, 4, "exactly four turnarounds per direction");
        let _ = n;
        out
    }

    pub fn is_turnaround(&self, s: u32) -> bool {
        self.stations
            .get((s - 1) as usize)
            .map(|st| st.is_turnaround)
            .unwrap_or(false)
    }

    /// Possible zone start stations of a direction (first two turnarounds).
    pub fn zone_starts(&self, dir: Direction) -> [u32; 2] {
        let t = self.turnarounds(dir);
        [t[0], t[1]]
    }

    /// Possible zone end stations of a direction (last two turnarounds).
    pub fn zone_ends(&self, dir: Direction) -> [u32; 2] {
        let t = self.turnarounds(dir);
        [t[2], t[3]]
    }

    /// All four admissible zones `(m, n)` of a direction, lexicographic.
    pub fn zones(&self, dir: Direction) -> [(u32, u32); 4] {
        let [s1, s2] = self.zone_starts(dir);
        let [e1, e2] = self.zone_ends(dir);
        [(s1, e1), (s1, e2), (s2, e1), (s2, e2)]
    }

    /// Pure cruise time of the segment ending at station `i` (pair `(i-1, i)`).
    pub fn pure_run_into(&self, i: u32) -> f64 {
        let n = self.stations_per_direction();
        let idx = if i <= n {
            debug_assert!(i >= 2);
            (i - 2) as usize
        } else {
            debug_assert!(i >= n + 2);
            (n - 1 + (i - n - 2)) as usize
        };
        self.pure_run_time[idx]
    }

    /// Full running time into station `i` with stops at both ends.
    pub fn full_run_into(&self, i: u32) -> f64 {
        self.pure_run_into(i) + self.accel_penalty + self.decel_penalty
    }

    pub fn accel_penalty(&self) -> f64 {
        self.accel_penalty
    }

    pub fn decel_penalty(&self) -> f64 {
        self.decel_penalty
    }

    /// Scheduled dwell at a station.
    pub fn dwell(&self, s: u32) -> f64 {
        self.dwell_time[(s - 1) as usize]
    }

    /// Minimum reversing time at a turnaround station.
    pub fn min_turnaround(&self, s: u32) -> Option<f64> {
        self.min_turnaround.get(&s).copied()
    }

    /// Largest minimum reversing time on the line.
    pub fn max_min_turnaround(&self) -> f64 {
        self.min_turnaround.values().fold(0.0, |a, &b| a.max(b))
    }

    /// Sum of full run times plus dwells along one direction (end-to-end
    /// traversal with every stop made, excluding the origin dwell).
    pub fn traversal_time(&self, dir: Direction) -> f64 {
        let route: Vec<u32> = self.route(dir).collect();
        route[1..]
            .iter()
            .map(|&i| self.full_run_into(i) + self.dwell(i))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k20() -> KinematicParams {
        KinematicParams { v_max: 20.0, v_acc: 1.0, v_dec: 1.0 }
    }

    #[test]
    fn running_time_formula() {
        // d_acc = d_dec = 200 m, pure = 1600/20 = 80 s, accel = decel = 20 s
        let t = compute_running_time(2000.0, &k20()).unwrap();
        assert!((t - 120.0).abs() < 1e-12);
    }

    #[test]
    fn running_time_envelope_boundary() {
        let t = compute_running_time(400.0, &k20()).unwrap();
        assert!((t - 40.0).abs() < 1e-12);
    }

    #[test]
    fn running_time_too_short() {
        assert_eq!(
            compute_running_time(399.0, &k20()),
            Err(TopologyError::DistanceTooShort { distance: 399.0, envelope: 400.0 })
        );
    }

    fn od8() -> ODMatrix {
        ODMatrix::new(8, 0.0, 600.0).unwrap()
    }

    #[test]
    fn crowdedness_counts_in_and_out() {
        let mut od = od8();
        od.set_rate(1, 3, 100.0).unwrap();
        assert_eq!(compute_crowdedness(&od, 2).unwrap(), 0.0);
        let mut od = od8();
        od.set_rate(1, 2, 50.0).unwrap();
        od.set_rate(2, 3, 70.0).unwrap();
        assert_eq!(compute_crowdedness(&od, 2).unwrap(), 120.0);
        assert_eq!(compute_crowdedness(&od8(), 5).unwrap(), 0.0);
        assert!(compute_crowdedness(&od8(), 17).is_err());
    }

    fn policy() -> DwellPolicy {
        DwellPolicy { thresholds: vec![100.0, 500.0], group_dwell: vec![30.0, 40.0, 50.0] }
    }

    #[test]
    fn dwell_groups_with_tie_to_higher() {
        let p = policy();
        assert_eq!(p.group_for(80.0), 0);
        assert_eq!(p.group_for(100.0), 1); // tie joins the higher group
        assert_eq!(p.group_for(499.0), 1);
        assert_eq!(p.group_for(500.0), 2);
        assert_eq!(p.group_for(600.0), 2);
    }

    #[test]
    fn dwell_assignment_spec_values() {
        let mut od = od8();
        od.set_rate(1, 2, 80.0).unwrap(); // station 1 crowdedness 80 -> 30 s
        od.set_rate(3, 4, 20.0).unwrap();
        od.set_rate(3, 5, 80.0).unwrap(); // station 3 crowdedness 100 -> 40 s
        let dwell = assign_dwell_times(&od, &policy()).unwrap();
        assert_eq!(dwell[0], 30.0);
        assert_eq!(dwell[2], 40.0);
        // untouched stations sit in the lowest group
        assert_eq!(dwell[10], 30.0);
    }

    #[test]
    fn dwell_all_zero_demand_lowest_group() {
        let dwell = assign_dwell_times(&od8(), &policy()).unwrap();
        assert!(dwell.iter().all(|&d| d == 30.0));
    }

    #[test]
    fn required_services_examples() {
        assert_eq!(required_services(700.0, 1000.0, 0.70).unwrap(), 1);
        assert_eq!(required_services(0.0, 1000.0, 0.70).unwrap(), 0);
        assert_eq!(required_services(1500.0, 250.0, 0.8).unwrap(), 8);
        assert_eq!(required_services(701.0, 1000.0, 0.70).unwrap(), 2);
    }

    #[test]
    fn required_services_errors() {
        assert!(matches!(
            required_services(10.0, 0.0, 0.5),
            Err(TopologyError::NonPositiveCapacity { .. })
        ));
        assert!(matches!(
            required_services(10.0, 100.0, 0.0),
            Err(TopologyError::InvalidLoadFactor(_))
        ));
        assert!(matches!(
            required_services(10.0, 100.0, 1.5),
            Err(TopologyError::InvalidLoadFactor(_))
        ));
    }

    #[test]
    fn depot_siting_concentrated_demand() {
        let mut od = od8();
        od.set_rate(3, 6, 5.0).unwrap();
        od.set_rate(3, 5, 2.0).unwrap();
        od.set_rate(4, 6, 1.0).unwrap();
        assert_eq!(site_intermediate_depots(&od, 4).unwrap(), (3, 6));
    }

    #[test]
    fn depot_siting_uniform_demand_full_direction() {
        let mut od = od8();
        for i in 1..=8u32 {
            for j in (i + 1)..=8 {
                od.set_rate(i, j, 1.0).unwrap();
            }
        }
        assert_eq!(site_intermediate_depots(&od, 4).unwrap(), (1, 8));
    }

    #[test]
    fn depot_siting_zero_demand_full_direction() {
        assert_eq!(site_intermediate_depots(&od8(), 4).unwrap(), (1, 8));
    }

    #[test]
    fn depot_siting_line_too_short() {
        let od = ODMatrix::new(3, 0.0, 60.0).unwrap();
        assert_eq!(
            site_intermediate_depots(&od, 4),
            Err(TopologyError::LineTooShort { stations: 3, min_span: 4 })
        );
    }

    fn topo8() -> LineTopology {
        LineTopology::new(
            8,
            [1, 3, 6, 8],
            vec![40.0; 7],
            0.0,
            0.0,
            vec![20.0; 16],
            135.0,
        )
        .unwrap()
    }

    #[test]
    fn turnaround_pairing_mirrors_station_ids() {
        let t = topo8();
        assert_eq!(t.turnarounds(Direction::Up), [1, 3, 6, 8]);
        assert_eq!(t.turnarounds(Direction::Down), [9, 11, 14, 16]);
        assert_eq!(t.opposite(8), 9);
        assert_eq!(t.opposite(1), 16);
        assert_eq!(t.opposite(6), 11);
        assert_eq!(t.opposite(3), 14);
    }

    #[test]
    fn zones_enumerate_start_end_combinations() {
        let t = topo8();
        assert_eq!(t.zones(Direction::Up), [(1, 6), (1, 8), (3, 6), (3, 8)]);
        assert_eq!(t.zones(Direction::Down), [(9, 14), (9, 16), (11, 14), (11, 16)]);
    }

    #[test]
    fn depots_sit_at_terminals_and_intermediates() {
        let t = topo8();
        assert_eq!(t.depots(), &[(1, 1), (2, 9), (3, 3), (4, 11)]);
    }

    #[test]
    fn down_runs_mirror_up_segments() {
        let t = LineTopology::new(
            8,
            [1, 3, 6, 8],
            vec![10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0],
            2.0,
            3.0,
            vec![20.0; 16],
            135.0,
        )
        .unwrap();
        // pair (9,10) covers the physical segment (7,8)
        assert_eq!(t.pure_run_into(10), 70.0);
        assert_eq!(t.pure_run_into(16), 10.0);
        assert_eq!(t.pure_run_into(2), 10.0);
        assert_eq!(t.full_run_into(2), 15.0);
    }

    #[test]
    fn traversal_time_sums_runs_and_dwells() {
        let t = topo8();
        // 7 segments of 40 s plus 7 dwells of 20 s
        assert!((t.traversal_time(Direction::Up) - 420.0).abs() < 1e-12);
        assert!((t.traversal_time(Direction::Down) - 420.0).abs() < 1e-12);
    }
}
