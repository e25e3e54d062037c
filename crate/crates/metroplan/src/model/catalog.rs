//! Declares every decision and flow variable of the planning MILP with its
//! bounds, plus the scale constants (time horizon caps, demand caps, big-M)
//! shared by the constraint builders.
//!
//! Naming grammar (also the MPS column names):
//! `tau[k]`, `z[k][m][n]`, `x[k][i]`, `y[k][l][m]`, `alpha[k][dp]`,
//! `beta[k][dp]`, `h[k]`, `a[k][i]`, `d[k][i]`, `RS[dp]`, `w[k][i][j]`,
//! `wb[k][i]`, `wb[k][i][j]`, `nb[k][i]`, `nb[k][i][j]`, `na[k][i]`,
//! `n[k][i]`, `v[k][i][j]`, `delta[k][i]`, `u[k][m][n]`, `f2`.
//! Services carry global ids: upstream `1..=K_up`, downstream
//! `K_up+1..=K_up+K_dn`. Stations carry the line's global ids `1..=2N`.

use super::{ModelConfig, ModelError, ObjectiveKind};
use crate::demand::{Direction, ODMatrix};
use crate::milp::{MilpInstance, VarId};
use crate::topology::LineTopology;
use std::collections::BTreeMap;

/// One potential service: its global id, direction, and 1-based position
/// within its direction (position 1 is the direction's first service).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ServiceInfo {
    pub id: u32,
    pub dir: Direction,
    pub within: u32,
}

pub(crate) fn dir_idx(dir: Direction) -> usize {
    match dir {
        Direction::Up => 0,
        Direction::Down => 1,
    }
}

pub(crate) fn dir_tag(dir: Direction) -> &'static str {
    match dir {
        Direction::Up => "up",
        Direction::Down => "dn",
    }
}

/// All variable ids of one assembled model, keyed by their structural
/// indices, plus the numeric scales the rows were emitted with.
#[derive(Debug, Clone)]
pub struct VariableCatalog {
    services: Vec<ServiceInfo>,
    pub tau: Vec<VarId>,
    pub z: BTreeMap<(u32, u32, u32), VarId>,
    pub x: BTreeMap<(u32, u32), VarId>,
    pub y: BTreeMap<(u32, u32, u32), VarId>,
    pub alpha: BTreeMap<(u32, u32), VarId>,
    pub beta: BTreeMap<(u32, u32), VarId>,
    pub h: BTreeMap<u32, VarId>,
    pub a: BTreeMap<(u32, u32), VarId>,
    pub d: BTreeMap<(u32, u32), VarId>,
    pub rs: BTreeMap<u32, VarId>,
    pub w: BTreeMap<(u32, u32, u32), VarId>,
    pub wb_pair: BTreeMap<(u32, u32, u32), VarId>,
    pub wb: BTreeMap<(u32, u32), VarId>,
    pub nb_pair: BTreeMap<(u32, u32, u32), VarId>,
    pub nb: BTreeMap<(u32, u32), VarId>,
    pub na: BTreeMap<(u32, u32), VarId>,
    /// Onboard count after departing a station (`n[k][i]`).
    pub load: BTreeMap<(u32, u32), VarId>,
    pub v: BTreeMap<(u32, u32, u32), VarId>,
    pub delta: BTreeMap<(u32, u32), VarId>,
    pub u: BTreeMap<(u32, u32, u32), VarId>,
    pub f2: Option<VarId>,

    /// Deactivation constant of the turnaround time gates.
    pub big_m: f64,
    /// Latest representable departure per direction: `Lt + full traversal`.
    pub t_hi: [f64; 2],
    /// Earliest representable arrival per direction.
    pub lo_a: [f64; 2],
    /// Range of one zone-traversal product term per direction.
    pub u_hi: [f64; 2],
    h_max: f64,
    initial_accumulation: f64,
}

impl VariableCatalog {
    /// Declares every variable of the configured model on `inst`, in a
    /// fixed deterministic order, and returns the filled catalog.
    pub fn declare(
        inst: &mut MilpInstance,
        cfg: &ModelConfig,
        topo: &LineTopology,
        od: &ODMatrix,
    ) -> Result<Self, ModelError> {
        let mut services = Vec::new();
        for within in 1..=cfg.k_up {
            services.push(ServiceInfo { id: within, dir: Direction::Up, within });
        }
        for within in 1..=cfg.k_dn {
            services.push(ServiceInfo { id: cfg.k_up + within, dir: Direction::Down, within });
        }

        let t_hi = [
            cfg.lt_up + topo.traversal_time(Direction::Up),
            cfg.lt_dn + topo.traversal_time(Direction::Down),
        ];
        let max_dwell = |dir: Direction| {
            topo.route(dir).map(|s| topo.dwell(s)).fold(0.0f64, f64::max)
        };
        let lo_a = [cfg.ft_up - max_dwell(Direction::Up), cfg.ft_dn - max_dwell(Direction::Down)];
        let u_hi = [t_hi[0] - cfg.ft_up, t_hi[1] - cfg.ft_dn];

        let required_m = topo.max_min_turnaround() + t_hi[0].max(t_hi[1]) - lo_a[0].min(lo_a[1]);
        let big_m = match cfg.big_m {
            Some(m) if m < required_m => {
                return Err(ModelError::BigMTooSmall { given: m, required: required_m })
            }
            Some(m) => m,
            None => required_m,
        };

        let mut cat = VariableCatalog {
            services,
            tau: Vec::new(),
            z: BTreeMap::new(),
            x: BTreeMap::new(),
            y: BTreeMap::new(),
            alpha: BTreeMap::new(),
            beta: BTreeMap::new(),
            h: BTreeMap::new(),
            a: BTreeMap::new(),
            d: BTreeMap::new(),
            rs: BTreeMap::new(),
            w: BTreeMap::new(),
            wb_pair: BTreeMap::new(),
            wb: BTreeMap::new(),
            nb_pair: BTreeMap::new(),
            nb: BTreeMap::new(),
            na: BTreeMap::new(),
            load: BTreeMap::new(),
            v: BTreeMap::new(),
            delta: BTreeMap::new(),
            u: BTreeMap::new(),
            f2: None,
            big_m,
            t_hi,
            lo_a,
            u_hi,
            h_max: cfg.h_max,
            initial_accumulation: cfg.initial_accumulation,
        };

        // structural binaries, service-major
        for svc in cat.services.clone() {
            let k = svc.id;
            cat.tau.push(inst.add_binary(format!("tau[{k}]"))?);
            for (m, n) in topo.zones(svc.dir) {
                cat.z.insert((k, m, n), inst.add_binary(format!("z[{k}][{m}][{n}]"))?);
            }
            for i in topo.route(svc.dir) {
                cat.x.insert((k, i), inst.add_binary(format!("x[{k}][{i}]"))?);
            }
        }
        for svc in cat.services.clone() {
            let k = svc.id;
            for opp in cat.services.clone() {
                if opp.dir == svc.dir {
                    continue;
                }
                let l = opp.id;
                for m in topo.zone_ends(svc.dir) {
                    cat.y.insert((k, l, m), inst.add_binary(format!("y[{k}][{l}][{m}]"))?);
                }
            }
            for dp in depot_sources(svc.dir) {
                cat.alpha.insert((k, dp), inst.add_binary(format!("alpha[{k}][{dp}]"))?);
            }
            for dp in depot_sinks(svc.dir) {
                cat.beta.insert((k, dp), inst.add_binary(format!("beta[{k}][{dp}]"))?);
            }
        }

        // time variables
        for svc in cat.services.clone() {
            let k = svc.id;
            let di = dir_idx(svc.dir);
            if svc.within >= 2 {
                cat.h.insert(k, inst.add_continuous(format!("h[{k}]"), 0.0, cfg.h_max)?);
            }
            for i in topo.route(svc.dir) {
                cat.a.insert((k, i), inst.add_continuous(format!("a[{k}][{i}]"), lo_a[di], t_hi[di])?);
                let ft = if svc.dir == Direction::Up { cfg.ft_up } else { cfg.ft_dn };
                cat.d.insert((k, i), inst.add_continuous(format!("d[{k}][{i}]"), ft, t_hi[di])?);
            }
        }
        for dp in 1..=4u32 {
            cat.rs.insert(dp, inst.add_continuous(format!("RS[{dp}]"), 0.0, cfg.fleet)?);
        }

        // passenger flow variables, direction-major then service-major
        for svc in cat.services.clone() {
            let k = svc.id;
            let shape = DirShape::of(od, svc.dir);
            for (&i, outs) in &shape.out_pairs {
                for &(j, rate) in outs {
                    let wbar = cat.wbar(rate, svc.within);
                    cat.w.insert((k, i, j), inst.add_continuous(format!("w[{k}][{i}][{j}]"), 0.0, wbar)?);
                    cat.wb_pair
                        .insert((k, i, j), inst.add_continuous(format!("wb[{k}][{i}][{j}]"), 0.0, wbar)?);
                    cat.nb_pair.insert(
                        (k, i, j),
                        inst.add_continuous(format!("nb[{k}][{i}][{j}]"), 0.0, wbar.min(cfg.capacity))?,
                    );
                    cat.v.insert((k, i, j), inst.add_continuous(format!("v[{k}][{i}][{j}]"), 0.0, wbar)?);
                }
                let out_cap: f64 = outs.iter().map(|&(_, r)| cat.wbar(r, svc.within)).sum();
                cat.wb.insert((k, i), inst.add_continuous(format!("wb[{k}][{i}]"), 0.0, out_cap)?);
                cat.nb
                    .insert((k, i), inst.add_continuous(format!("nb[{k}][{i}]"), 0.0, out_cap.min(cfg.capacity))?);
                cat.delta.insert((k, i), inst.add_binary(format!("delta[{k}][{i}]"))?);
            }
            for (&j, ins) in &shape.in_pairs {
                let in_cap: f64 = ins.iter().map(|&(_, r)| cat.wbar(r, svc.within)).sum();
                cat.na
                    .insert((k, j), inst.add_continuous(format!("na[{k}][{j}]"), 0.0, in_cap.min(cfg.capacity))?);
            }
            for i in topo.route(svc.dir) {
                cat.load.insert((k, i), inst.add_continuous(format!("n[{k}][{i}]"), 0.0, cfg.capacity)?);
            }
        }

        // quality-objective auxiliaries
        if cfg.objective != ObjectiveKind::Cost {
            let mut f2_ub = 0.0;
            for svc in cat.services.clone() {
                let k = svc.id;
                let di = dir_idx(svc.dir);
                if svc.within < 2 {
                    continue;
                }
                for (m, n) in topo.zones(svc.dir) {
                    cat.u.insert((k, m, n), inst.add_continuous(format!("u[{k}][{m}][{n}]"), 0.0, u_hi[di])?);
                    f2_ub += u_hi[di];
                }
                f2_ub += topo.stations_per_direction() as f64 * cfg.h_max;
            }
            cat.f2 = Some(inst.add_continuous("f2", 0.0, f2_ub)?);
        }

        Ok(cat)
    }

    pub fn services(&self) -> &[ServiceInfo] {
        &self.services
    }

    pub fn service(&self, id: u32) -> ServiceInfo {
        self.services[(id - 1) as usize]
    }

    pub fn services_in(&self, dir: Direction) -> impl Iterator<Item = ServiceInfo> + '_ {
        self.services.iter().copied().filter(move |s| s.dir == dir)
    }

    pub fn first_service(&self, dir: Direction) -> u32 {
        self.services_in(dir).next().expect("each direction has a first service").id
    }

    /// Same-direction predecessor of a service, if any.
    pub fn prev_service(&self, id: u32) -> Option<u32> {
        (self.service(id).within >= 2).then(|| id - 1)
    }

    pub fn tau_of(&self, id: u32) -> VarId {
        self.tau[(id - 1) as usize]
    }

    /// Accumulated-demand cap for one OD pair on the `within`-th service of
    /// its direction: everything the pair can have accumulated by then.
    pub fn wbar(&self, rate: f64, within: u32) -> f64 {
        rate * (self.initial_accumulation + (within - 1) as f64 * self.h_max)
    }
}

pub(crate) fn depot_sources(dir: Direction) -> [u32; 2] {
    match dir {
        Direction::Up => [1, 3],
        Direction::Down => [2, 4],
    }
}

pub(crate) fn depot_sinks(dir: Direction) -> [u32; 2] {
    match dir {
        Direction::Up => [2, 4],
        Direction::Down => [1, 3],
    }
}

/// Positive-rate OD pairs of one direction, grouped by origin and by
/// destination, in station order.
pub(crate) struct DirShape {
    pub out_pairs: BTreeMap<u32, Vec<(u32, f64)>>,
    pub in_pairs: BTreeMap<u32, Vec<(u32, f64)>>,
    pub total_rate: f64,
}

impl DirShape {
    pub fn of(od: &ODMatrix, dir: Direction) -> Self {
        let mut out_pairs: BTreeMap<u32, Vec<(u32, f64)>> = BTreeMap::new();
        let mut in_pairs: BTreeMap<u32, Vec<(u32, f64)>> = BTreeMap::new();
        let mut total_rate = 0.0;
        for (i, j, rate) in od.pairs_in(dir) {
            out_pairs.entry(i).or_default().push((j, rate));
            in_pairs.entry(j).or_default().push((i, rate));
            total_rate += rate;
        }
        DirShape { out_pairs, in_pairs, total_rate }
    }
}

