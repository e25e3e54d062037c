//! Emits the constraint rows of the planning MILP, one family at a time.
//!
//! Row naming (functional, human-auditable in exported MPS files):
//! zone family: `zonesel[k]`, `serve_sel[k][i]`, `nostop_before[k][m]`,
//! `nostop_after[k][n]`, `zoneserve[k][m][n][i]`, `cover[k][i]`;
//! timetable: `run[k][i]`, `dwell[k][i]`, `first_dep[up|dn]`,
//! `dep_deadline[k][i]`; headway: `headway_lo[k]`, `headway_hi[k]`,
//! `chain[k][i]`; turnaround: `turncompat[k][l][m]`, `turntime[k][l][m]`;
//! rolling stock: `source[k]`, `sink[k]`, `fleet`, `depot_pull[dp]`,
//! `draw_gate[k][dp]`, `return_gate[k][dp]`; demand: `accum[k][i][j]`,
//! `board_sum[k][i]`, `alight[k][j]`, `load[k][i]`, `alloc[k][i][j]`,
//! `left[k][i][j]`; boarding linearization: `elig_demand[k][i][j]`,
//! `elig_orig[k][i][j]`, `elig_dest[k][i][j]`, `elig_full[k][i][j]`,
//! `cap_ub[k][i]`, `want_ub[k][i]`, `cap_tight[k][i]`, `want_tight[k][i]`;
//! skip-stop: `skip_cap[k]`; service-quality objective: `tt_sel[k][m][n]`,
//! `tt_cap[k][m][n]`, `tt_tight[k][m][n]`, `qos_total`.

use super::catalog::{depot_sinks, depot_sources, dir_idx, dir_tag, DirShape, VariableCatalog};
use super::{ModelConfig, ModelError, Mode};
use crate::demand::{Direction, ODMatrix};
use crate::milp::{ConstraintFamily as Fam, MilpInstance, Sense, VarId};

/// Zone selection, served-station linkage, and consecutive-service coverage.
pub fn build_zone(
    inst: &mut MilpInstance,
    cat: &VariableCatalog,
    cfg: &ModelConfig,
    topo: &crate::topology::LineTopology,
) -> Result<(), ModelError> {
    for svc in cat.services() {
        let k = svc.id;
        let tau = cat.tau_of(k);
        let zones = topo.zones(svc.dir);

        // exactly one zone per selected service
        let mut terms: Vec<(VarId, f64)> = zones.iter().map(|&(m, n)| (cat.z[&(k, m, n)], 1.0)).collect();
        terms.push((tau, -1.0));
        inst.add_row(format!("zonesel[{k}]"), terms, Sense::Eq, 0.0, Fam::Zone)?;

        // a station can only be served by a selected service
        for i in topo.route(svc.dir) {
            inst.add_row(
                format!("serve_sel[{k}][{i}]"),
                vec![(cat.x[&(k, i)], 1.0), (tau, -1.0)],
                Sense::Le,
                0.0,
                Fam::Zone,
            )?;
        }

        // no stops before the zone start / after the zone end; the row
        // constant is the exact count of stations outside that boundary
        let origin = topo.origin(svc.dir);
        let terminus = topo.terminus(svc.dir);
        for m in topo.zone_starts(svc.dir) {
            if m == origin {
                continue;
            }
            let count = (m - origin) as f64;
            let mut terms: Vec<(VarId, f64)> =
                (origin..m).map(|i| (cat.x[&(k, i)], 1.0)).collect();
            for n in topo.zone_ends(svc.dir) {
                terms.push((cat.z[&(k, m, n)], count));
            }
            inst.add_row(format!("nostop_before[{k}][{m}]"), terms, Sense::Le, count, Fam::Zone)?;
        }
        for n in topo.zone_ends(svc.dir) {
            if n == terminus {
                continue;
            }
            let count = (terminus - n) as f64;
            let mut terms: Vec<(VarId, f64)> =
                (n + 1..=terminus).map(|i| (cat.x[&(k, i)], 1.0)).collect();
            for m in topo.zone_starts(svc.dir) {
                terms.push((cat.z[&(k, m, n)], count));
            }
            inst.add_row(format!("nostop_after[{k}][{n}]"), terms, Sense::Le, count, Fam::Zone)?;
        }

        // off-peak: every station inside the selected zone is served
        if cfg.mode == Mode::OffPeak {
            for &(m, n) in &zones {
                for i in m..=n {
                    inst.add_row(
                        format!("zoneserve[{k}][{m}][{n}][{i}]"),
                        vec![(cat.z[&(k, m, n)], 1.0), (cat.x[&(k, i)], -1.0)],
                        Sense::Le,
                        0.0,
                        Fam::Zone,
                    )?;
                }
            }
        }

        // every station is covered by one of each two consecutive services
        // (demanded only when the later service runs)
        if let Some(prev) = cat.prev_service(k) {
            for i in topo.route(svc.dir) {
                inst.add_row(
                    format!("cover[{k}][{i}]"),
                    vec![(cat.x[&(prev, i)], 1.0), (cat.x[&(k, i)], 1.0), (tau, -1.0)],
                    Sense::Ge,
                    0.0,
                    Fam::Zone,
                )?;
            }
        }
    }
    Ok(())
}

/// Run and dwell arithmetic, horizon anchors, and departure deadlines.
pub fn build_timetable(
    inst: &mut MilpInstance,
    cat: &VariableCatalog,
    cfg: &ModelConfig,
    topo: &crate::topology::LineTopology,
) -> Result<(), ModelError> {
    for svc in cat.services() {
        let k = svc.id;
        let route: Vec<u32> = topo.route(svc.dir).collect();
        for win in route.windows(2) {
            let (p, i) = (win[0], win[1]);
            match cfg.mode {
                Mode::OffPeak => {
                    // fixed running time with both stops made
                    inst.add_row(
                        format!("run[{k}][{i}]"),
                        vec![(cat.a[&(k, i)], 1.0), (cat.d[&(k, p)], -1.0)],
                        Sense::Eq,
                        topo.full_run_into(i),
                        Fam::Timetable,
                    )?;
                }
                Mode::Peak => {
                    // acceleration/deceleration penalties apply only at stops
                    inst.add_row(
                        format!("run[{k}][{i}]"),
                        vec![
                            (cat.a[&(k, i)], 1.0),
                            (cat.d[&(k, p)], -1.0),
                            (cat.x[&(k, p)], -topo.accel_penalty()),
                            (cat.x[&(k, i)], -topo.decel_penalty()),
                        ],
                        Sense::Eq,
                        topo.pure_run_into(i),
                        Fam::Timetable,
                    )?;
                }
            }
        }
        for &i in &route {
            match cfg.mode {
                Mode::OffPeak => {
                    inst.add_row(
                        format!("dwell[{k}][{i}]"),
                        vec![(cat.d[&(k, i)], 1.0), (cat.a[&(k, i)], -1.0)],
                        Sense::Eq,
                        topo.dwell(i),
                        Fam::Timetable,
                    )?;
                }
                Mode::Peak => {
                    inst.add_row(
                        format!("dwell[{k}][{i}]"),
                        vec![
                            (cat.d[&(k, i)], 1.0),
                            (cat.a[&(k, i)], -1.0),
                            (cat.x[&(k, i)], -topo.dwell(i)),
                        ],
                        Sense::Ge,
                        0.0,
                        Fam::Timetable,
                    )?;
                }
            }
        }

        // the departure at each possible zone start must fall inside the
        // horizon, for every potential service
        let lt = match svc.dir {
            Direction::Up => cfg.lt_up,
            Direction::Down => cfg.lt_dn,
        };
        for m in topo.zone_starts(svc.dir) {
            inst.add_row(
                format!("dep_deadline[{k}][{m}]"),
                vec![(cat.d[&(k, m)], 1.0)],
                Sense::Le,
                lt,
                Fam::Timetable,
            )?;
        }
    }

    // the first service of each direction departs its origin at the horizon start
    for dir in [Direction::Up, Direction::Down] {
        let k = cat.first_service(dir);
        let ft = match dir {
            Direction::Up => cfg.ft_up,
            Direction::Down => cfg.ft_dn,
        };
        inst.add_row(
            format!("first_dep[{}]", dir_tag(dir)),
            vec![(cat.d[&(k, topo.origin(dir))], 1.0)],
            Sense::Eq,
            ft,
            Fam::Timetable,
        )?;
    }
    Ok(())
}

/// Headway bounds and the rigid departure-profile chaining between
/// consecutive services of a direction.
pub fn build_headway(
    inst: &mut MilpInstance,
    cat: &VariableCatalog,
    cfg: &ModelConfig,
    topo: &crate::topology::LineTopology,
) -> Result<(), ModelError> {
    for svc in cat.services() {
        let k = svc.id;
        let Some(prev) = cat.prev_service(k) else { continue };
        let h = cat.h[&k];
        let tau = cat.tau_of(k);
        inst.add_row(
            format!("headway_lo[{k}]"),
            vec![(h, 1.0), (tau, -cfg.h_min)],
            Sense::Ge,
            0.0,
            Fam::Headway,
        )?;
        inst.add_row(
            format!("headway_hi[{k}]"),
            vec![(h, 1.0), (tau, -cfg.h_max)],
            Sense::Le,
            0.0,
            Fam::Headway,
        )?;
        for i in topo.route(svc.dir) {
            inst.add_row(
                format!("chain[{k}][{i}]"),
                vec![(cat.d[&(k, i)], 1.0), (cat.d[&(prev, i)], -1.0), (h, -1.0)],
                Sense::Eq,
                0.0,
                Fam::Headway,
            )?;
        }
    }
    Ok(())
}

/// Turnaround linkage: a link needs compatible zone ends on both sides and
/// at least the minimum reversing time between them.
pub fn build_turnaround(
    inst: &mut MilpInstance,
    cat: &VariableCatalog,
    topo: &crate::topology::LineTopology,
) -> Result<(), ModelError> {
    for (&(k, l, m), &y) in &cat.y {
        let k_dir = cat.service(k).dir;
        let l_dir = cat.service(l).dir;
        let lstart = topo.opposite(m);

        // both services must select zones meeting at the turnaround platform
        let mut terms = vec![(y, 2.0)];
        for s in topo.zone_starts(k_dir) {
            terms.push((cat.z[&(k, s, m)], -1.0));
        }
        for e in topo.zone_ends(l_dir) {
            terms.push((cat.z[&(l, lstart, e)], -1.0));
        }
        inst.add_row(format!("turncompat[{k}][{l}][{m}]"), terms, Sense::Le, 0.0, Fam::Turnaround)?;

        // reversal takes at least the station's minimum back-turning time
        let delta_min = topo.min_turnaround(m).ok_or_else(|| {
            ModelError::MissingParameter(format!("minimum turnaround time at station {m}"))
        })?;
        inst.add_row(
            format!("turntime[{k}][{l}][{m}]"),
            vec![(cat.a[&(l, lstart)], 1.0), (cat.d[&(k, m)], -1.0), (y, -cat.big_m)],
            Sense::Ge,
            delta_min - cat.big_m,
            Fam::Turnaround,
        )?;
    }
    Ok(())
}

/// Service sourcing/sinking balances, fleet cap, depot pull-out counts, and
/// the deadhead-avoidance gates at the terminal depots.
pub fn build_rollingstock(
    inst: &mut MilpInstance,
    cat: &VariableCatalog,
    cfg: &ModelConfig,
    topo: &crate::topology::LineTopology,
) -> Result<(), ModelError> {
    for svc in cat.services() {
        let k = svc.id;
        let opp_dir = match svc.dir {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        };

        // every selected service is sourced by a turn-in or a depot draw
        let mut terms: Vec<(VarId, f64)> = Vec::new();
        for opp in cat.services_in(opp_dir) {
            for m in topo.zone_ends(opp_dir) {
                terms.push((cat.y[&(opp.id, k, m)], 1.0));
            }
        }
        for dp in depot_sources(svc.dir) {
            terms.push((cat.alpha[&(k, dp)], 1.0));
        }
        terms.push((cat.tau_of(k), -1.0));
        inst.add_row(format!("source[{k}]"), terms, Sense::Eq, 0.0, Fam::RollingStock)?;

        // and afterwards turns into an opposite service or returns to a depot
        let mut terms: Vec<(VarId, f64)> = Vec::new();
        for opp in cat.services_in(opp_dir) {
            for m in topo.zone_ends(svc.dir) {
                terms.push((cat.y[&(k, opp.id, m)], 1.0));
            }
        }
        for dp in depot_sinks(svc.dir) {
            terms.push((cat.beta[&(k, dp)], 1.0));
        }
        terms.push((cat.tau_of(k), -1.0));
        inst.add_row(format!("sink[{k}]"), terms, Sense::Eq, 0.0, Fam::RollingStock)?;
    }

    // fleet cap over the four depots
    let terms: Vec<(VarId, f64)> = cat.rs.values().map(|&v| (v, 1.0)).collect();
    inst.add_row("fleet", terms, Sense::Le, cfg.fleet, Fam::RollingStock)?;

    // each depot stocks at least its pull-outs
    for (&dp, &rs) in &cat.rs {
        let mut terms = vec![(rs, 1.0)];
        for (&(k, kdp), &al) in &cat.alpha {
            if kdp == dp {
                terms.push((al, -1.0));
                let _ = k;
            }
        }
        inst.add_row(format!("depot_pull[{dp}]"), terms, Sense::Ge, 0.0, Fam::RollingStock)?;
    }

    // terminal-depot moves happen without deadheading: a draw from the
    // direction's origin depot needs a zone starting there, a return to the
    // opposite terminal depot needs a zone ending there
    for svc in cat.services() {
        let k = svc.id;
        let origin = topo.origin(svc.dir);
        let terminus = topo.terminus(svc.dir);
        let (draw_dp, return_dp) = match svc.dir {
            Direction::Up => (1u32, 2u32),
            Direction::Down => (2u32, 1u32),
        };
        let mut terms = vec![(cat.alpha[&(k, draw_dp)], 1.0)];
        for n in topo.zone_ends(svc.dir) {
            terms.push((cat.z[&(k, origin, n)], -1.0));
        }
        inst.add_row(format!("draw_gate[{k}][{draw_dp}]"), terms, Sense::Le, 0.0, Fam::RollingStock)?;

        let mut terms = vec![(cat.beta[&(k, return_dp)], 1.0)];
        for m in topo.zone_starts(svc.dir) {
            terms.push((cat.z[&(k, m, terminus)], -1.0));
        }
        inst.add_row(
            format!("return_gate[{k}][{return_dp}]"),
            terms,
            Sense::Le,
            0.0,
            Fam::RollingStock,
        )?;
    }
    Ok(())
}

/// Passenger accumulation, boarding eligibility and capacity, alighting,
/// onboard balances, and leftovers, per direction.
pub fn build_demand(
    inst: &mut MilpInstance,
    cat: &VariableCatalog,
    cfg: &ModelConfig,
    topo: &crate::topology::LineTopology,
    od: &ODMatrix,
) -> Result<(), ModelError> {
    for dir in [Direction::Up, Direction::Down] {
        let shape = DirShape::of(od, dir);
        for svc in cat.services_in(dir) {
            let k = svc.id;
            let prev = cat.prev_service(k);

            for (&i, outs) in &shape.out_pairs {
                for &(j, rate) in outs {
                    let w = cat.w[&(k, i, j)];
                    let wb = cat.wb_pair[&(k, i, j)];
                    let nb = cat.nb_pair[&(k, i, j)];
                    let v = cat.v[&(k, i, j)];
                    let wbar = cat.wbar(rate, svc.within);

                    // accumulated demand: initial window for the first
                    // service, leftovers plus the departure gap afterwards
                    match prev {
                        None => inst.add_row(
                            format!("accum[{k}][{i}][{j}]"),
                            vec![(w, 1.0)],
                            Sense::Eq,
                            rate * cfg.initial_accumulation,
                            Fam::Demand,
                        )?,
                        Some(p) => inst.add_row(
                            format!("accum[{k}][{i}][{j}]"),
                            vec![
                                (w, 1.0),
                                (cat.v[&(p, i, j)], -1.0),
                                (cat.d[&(k, i)], -rate),
                                (cat.d[&(p, i)], rate),
                            ],
                            Sense::Eq,
                            0.0,
                            Fam::Demand,
                        )?,
                    }

                    // eligible demand equals accumulated demand exactly when
                    // the service stops at both endpoints, else zero
                    let xi = cat.x[&(k, i)];
                    let xj = cat.x[&(k, j)];
                    inst.add_row(
                        format!("elig_demand[{k}][{i}][{j}]"),
                        vec![(wb, 1.0), (w, -1.0)],
                        Sense::Le,
                        0.0,
                        Fam::Linearization,
                    )?;
                    inst.add_row(
                        format!("elig_orig[{k}][{i}][{j}]"),
                        vec![(wb, 1.0), (xi, -wbar)],
                        Sense::Le,
                        0.0,
                        Fam::Linearization,
                    )?;
                    inst.add_row(
                        format!("elig_dest[{k}][{i}][{j}]"),
                        vec![(wb, 1.0), (xj, -wbar)],
                        Sense::Le,
                        0.0,
                        Fam::Linearization,
                    )?;
                    inst.add_row(
                        format!("elig_full[{k}][{i}][{j}]"),
                        vec![(wb, 1.0), (w, -1.0), (xi, -wbar), (xj, -wbar)],
                        Sense::Ge,
                        -2.0 * wbar,
                        Fam::Linearization,
                    )?;

                    // boarding splits uniformly across destinations relative
                    // to eligibility, and leftovers roll to the next service
                    inst.add_row(
                        format!("alloc[{k}][{i}][{j}]"),
                        vec![
                            (cat.nb[&(k, i)], 1.0),
                            (nb, -1.0),
                            (cat.wb[&(k, i)], -1.0),
                            (wb, 1.0),
                        ],
                        Sense::Eq,
                        0.0,
                        Fam::Demand,
                    )?;
                    inst.add_row(
                        format!("left[{k}][{i}][{j}]"),
                        vec![(v, 1.0), (w, -1.0), (nb, 1.0)],
                        Sense::Eq,
                        0.0,
                        Fam::Demand,
                    )?;
                }

                // eligible boarders per origin
                let wb_i = cat.wb[&(k, i)];
                let nb_i = cat.nb[&(k, i)];
                let mut terms = vec![(wb_i, 1.0)];
                for &(j, _) in outs {
                    terms.push((cat.wb_pair[&(k, i, j)], -1.0));
                }
                inst.add_row(format!("board_sum[{k}][{i}]"), terms, Sense::Eq, 0.0, Fam::Demand)?;

                // boarding count is the minimum of remaining room and the
                // eligible demand; delta=0 selects room, delta=1 demand
                let delta = cat.delta[&(k, i)];
                let room_terms = |nb_coeff: f64, extra: Option<(VarId, f64)>| {
                    let mut t = vec![(nb_i, nb_coeff)];
                    if let Some(&prev_load) = route_prev(topo, dir, i).map(|p| &cat.load[&(k, p)]) {
                        t.push((prev_load, 1.0));
                    }
                    if let Some(&na) = cat.na.get(&(k, i)) {
                        t.push((na, -1.0));
                    }
                    if let Some(e) = extra {
                        t.push(e);
                    }
                    t
                };
                let m_row = cfg.capacity
                    + outs.iter().map(|&(_, r)| cat.wbar(r, svc.within)).sum::<f64>()
                    + shape
                        .in_pairs
                        .get(&i)
                        .map(|ins| ins.iter().map(|&(_, r)| cat.wbar(r, svc.within)).sum::<f64>())
                        .unwrap_or(0.0);
                inst.add_row(
                    format!("cap_ub[{k}][{i}]"),
                    room_terms(1.0, None),
                    Sense::Le,
                    cfg.capacity,
                    Fam::Linearization,
                )?;
                inst.add_row(
                    format!("want_ub[{k}][{i}]"),
                    vec![(nb_i, 1.0), (wb_i, -1.0)],
                    Sense::Le,
                    0.0,
                    Fam::Linearization,
                )?;
                inst.add_row(
                    format!("cap_tight[{k}][{i}]"),
                    room_terms(1.0, Some((delta, -m_row))),
                    Sense::Ge,
                    cfg.capacity - m_row,
                    Fam::Linearization,
                )?;
                inst.add_row(
                    format!("want_tight[{k}][{i}]"),
                    vec![(nb_i, 1.0), (wb_i, -1.0), (delta, m_row)],
                    Sense::Ge,
                    0.0,
                    Fam::Linearization,
                )?;
            }

            // alighting collects everyone boarded toward the station
            for (&j, ins) in &shape.in_pairs {
                let mut terms = vec![(cat.na[&(k, j)], 1.0)];
                for &(i, _) in ins {
                    terms.push((cat.nb_pair[&(k, i, j)], -1.0));
                }
                inst.add_row(format!("alight[{k}][{j}]"), terms, Sense::Eq, 0.0, Fam::Demand)?;
            }

            // onboard balance along the route
            for i in topo.route(dir) {
                let mut terms = vec![(cat.load[&(k, i)], 1.0)];
                if let Some(p) = route_prev(topo, dir, i) {
                    terms.push((cat.load[&(k, p)], -1.0));
                }
                if let Some(&na) = cat.na.get(&(k, i)) {
                    terms.push((na, 1.0));
                }
                if let Some(&nb) = cat.nb.get(&(k, i)) {
                    terms.push((nb, -1.0));
                }
                inst.add_row(format!("load[{k}][{i}]"), terms, Sense::Eq, 0.0, Fam::Demand)?;
            }
        }
    }
    Ok(())
}

fn route_prev(topo: &crate::topology::LineTopology, dir: Direction, i: u32) -> Option<u32> {
    (i > topo.origin(dir)).then(|| i - 1)
}

/// Peak-hour cap on skipped stations, relative to the selected zone's size.
pub fn build_skipstop(
    inst: &mut MilpInstance,
    cat: &VariableCatalog,
    cfg: &ModelConfig,
    topo: &crate::topology::LineTopology,
) -> Result<(), ModelError> {
    if cfg.mode != Mode::Peak {
        return Err(ModelError::ModeMismatch);
    }
    for svc in cat.services() {
        let k = svc.id;
        let mut terms: Vec<(VarId, f64)> =
            topo.route(svc.dir).map(|i| (cat.x[&(k, i)], 1.0)).collect();
        for (m, n) in topo.zones(svc.dir) {
            terms.push((cat.z[&(k, m, n)], -((n - m + 1) as f64)));
        }
        inst.add_row(
            format!("skip_cap[{k}]"),
            terms,
            Sense::Ge,
            -(cfg.skip_cap as f64),
            Fam::SkipStop,
        )?;
    }
    Ok(())
}

/// Turnaround-count objective: one term per possible link.
pub fn objective_cost_terms(cat: &VariableCatalog) -> Vec<(VarId, f64)> {
    cat.y.values().map(|&v| (v, 1.0)).collect()
}

/// Service-quality objective: zone traversal products linearized per link,
/// headway terms summed directly, all tied into the `f2` total.
pub fn build_objective_quality(
    inst: &mut MilpInstance,
    cat: &VariableCatalog,
    topo: &crate::topology::LineTopology,
) -> Result<(), ModelError> {
    let f2 = cat.f2.ok_or_else(|| {
        ModelError::MissingParameter("quality objective needs its auxiliary variables".into())
    })?;
    let mut link_terms: Vec<(VarId, f64)> = vec![(f2, 1.0)];

    for (&(k, m, n), &u) in &cat.u {
        let svc = cat.service(k);
        let prev = cat.prev_service(k).expect("traversal products start at the second service");
        let z = cat.z[&(k, m, n)];
        let u_hi = cat.u_hi[dir_idx(svc.dir)];
        let d_end = cat.d[&(k, n)];
        let d_start_prev = cat.d[&(prev, m)];

        inst.add_row(
            format!("tt_sel[{k}][{m}][{n}]"),
            vec![(u, 1.0), (z, -u_hi)],
            Sense::Le,
            0.0,
            Fam::ObjectiveLink,
        )?;
        inst.add_row(
            format!("tt_cap[{k}][{m}][{n}]"),
            vec![(u, 1.0), (d_end, -1.0), (d_start_prev, 1.0)],
            Sense::Le,
            0.0,
            Fam::ObjectiveLink,
        )?;
        inst.add_row(
            format!("tt_tight[{k}][{m}][{n}]"),
            vec![(u, 1.0), (d_end, -1.0), (d_start_prev, 1.0), (z, -u_hi)],
            Sense::Ge,
            -u_hi,
            Fam::ObjectiveLink,
        )?;
        link_terms.push((u, -1.0));
    }

    // headway component: departure gaps of consecutive services, every station
    for svc in cat.services() {
        let Some(prev) = cat.prev_service(svc.id) else { continue };
        for i in topo.route(svc.dir) {
            link_terms.push((cat.d[&(svc.id, i)], -1.0));
            link_terms.push((cat.d[&(prev, i)], 1.0));
        }
    }
    inst.add_row("qos_total", link_terms, Sense::Eq, 0.0, Fam::ObjectiveLink)?;
    Ok(())
}
