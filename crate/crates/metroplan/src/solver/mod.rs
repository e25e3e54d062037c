//! Exact MILP solver: LP relaxations by dual simplex, integrality by
//! branch and bound with warm-started node solves.

pub mod mps;
pub mod simplex;

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use crate::milp::{MilpInstance, ObjSense, Sense, VarKind};
use simplex::{LpProblem, LpResult, LpStatus, Simplex};

/// Integrality tolerance: a binary within this of 0 or 1 counts as integral.
pub const INT_TOL: f64 = 1e-6;
/// Row feasibility tolerance used when accepting incumbents.
pub const ROW_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branching {
    /// Branch on the binary closest to one half; ties go to the
    /// lexicographically smallest variable name.
    MostFractional,
    /// Branch on the lowest-index fractional binary.
    FirstIndex,
}

#[derive(Debug, Clone)]
pub struct SolverOptions {
    /// Wall-clock budget in seconds.
    pub time_limit: f64,
    /// Stop gap: incumbents within this of the best bound end the search.
    pub absolute_gap: f64,
    pub branching: Branching,
    pub node_limit: Option<u64>,
    /// Print a progress line on incumbent updates.
    pub log: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            time_limit: 14_400.0,
            absolute_gap: 1e-6,
            branching: Branching::MostFractional,
            node_limit: None,
            log: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    TimeLimit,
    NodeLimit,
}

#[derive(Debug, Clone)]
pub struct MilpSolution {
    pub status: SolveStatus,
    /// Objective of the incumbent in the instance's own sense.
    pub objective: Option<f64>,
    /// Best proved bound in the instance's own sense.
    pub bound: f64,
    /// Incumbent values aligned with the instance's variable order.
    pub values: Vec<f64>,
    pub nodes: u64,
    pub wall_seconds: f64,
    /// Absolute objective gap when the search stopped early.
    pub gap: Option<f64>,
}

impl MilpSolution {
    /// CLI process exit code for this status.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            SolveStatus::Optimal => 0,
            SolveStatus::Infeasible => 2,
            SolveStatus::TimeLimit | SolveStatus::NodeLimit => 3,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SolverError {
    #[error("problem is unbounded")]
    Unbounded,
    #[error("simplex did not converge within the iteration budget")]
    IterationBudget,
}

/// Attempts to extend a node's LP point to a full feasible assignment with
/// the same objective (rounding away auxiliary fractionality that cannot
/// affect cost). Returns the completed assignment or None.
pub trait CompletionHook {
    fn complete(&self, inst: &MilpInstance, x: &[f64]) -> Option<Vec<f64>>;
}

fn to_lp(inst: &MilpInstance) -> (LpProblem, f64, f64) {
    // internal form always minimizes; sign carries the original sense
    let sign = match inst.objective().sense {
        ObjSense::Minimize => 1.0,
        ObjSense::Maximize => -1.0,
    };
    let n = inst.vars().len();
    let m = inst.rows().len();
    let mut cols = vec![Vec::new(); n];
    let mut row_lo = Vec::with_capacity(m);
    let mut row_hi = Vec::with_capacity(m);
    for (r, c) in inst.rows().iter().enumerate() {
        for &(v, a) in &c.terms {
            cols[v.0].push((r as u32, a));
        }
        let (lo, hi) = match c.sense {
            Sense::Le => (f64::NEG_INFINITY, c.rhs),
            Sense::Ge => (c.rhs, f64::INFINITY),
            Sense::Eq => (c.rhs, c.rhs),
        };
        row_lo.push(lo);
        row_hi.push(hi);
    }
    let mut cost = vec![0.0; n];
    for &(v, a) in &inst.objective().terms {
        cost[v.0] += sign * a;
    }
    let lo = inst.vars().iter().map(|v| v.lower).collect();
    let hi = inst.vars().iter().map(|v| v.upper).collect();
    (
        LpProblem { ncols: n, nrows: m, cols, cost, lo, hi, row_lo, row_hi },
        sign,
        inst.objective().offset,
    )
}

/// Solves the LP relaxation (integrality dropped). The reported objective is
/// in the instance's own sense, offset included.
pub fn solve_lp_relaxation(inst: &MilpInstance) -> Result<LpResult, SolverError> {
    let (lp, sign, offset) = to_lp(inst);
    let mut s = Simplex::new(&lp);
    let mut r = s.solve(2_000_000);
    if r.status == LpStatus::IterLimit {
        return Err(SolverError::IterationBudget);
    }
    if r.status == LpStatus::Unbounded {
        return Err(SolverError::Unbounded);
    }
    r.objective = sign * r.objective + offset;
    Ok(r)
}

struct NodeArena {
    /// (parent, var, fixed value); root sentinel at index 0.
    fixes: Vec<(usize, usize, f64)>,
}

impl NodeArena {
    fn path(&self, mut idx: usize, out: &mut Vec<(usize, f64)>) {
        out.clear();
        while idx != 0 {
            let (p, v, val) = self.fixes[idx];
            out.push((v, val));
            idx = p;
        }
    }
}

#[derive(Debug)]
struct OpenNode {
    bound: f64,
    id: u64,
    arena: usize,
}

impl PartialEq for OpenNode {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.id == other.id
    }
}
impl Eq for OpenNode {}
impl Ord for OpenNode {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap is a max-heap: invert so the smallest bound pops first,
        // then the oldest id
        other
            .bound
            .total_cmp(&self.bound)
            .then_with(|| other.id.cmp(&self.id))
    }
}
impl PartialOrd for OpenNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn solve(inst: &MilpInstance, opts: &SolverOptions) -> Result<MilpSolution, SolverError> {
    solve_with_completion(inst, opts, None)
}

pub fn solve_with_completion(
    inst: &MilpInstance,
    opts: &SolverOptions,
    hook: Option<&dyn CompletionHook>,
) -> Result<MilpSolution, SolverError> {
    let start = Instant::now();
    let (lp, sign, offset) = to_lp(inst);
    let binaries: Vec<usize> = inst
        .vars()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.kind == VarKind::Binary)
        .map(|(j, _)| j)
        .collect();
    // rank of each variable name in lexicographic order, for branching ties
    let name_rank = {
        let mut order: Vec<usize> = (0..inst.vars().len()).collect();
        order.sort_by(|&a, &b| inst.vars()[a].name.cmp(&inst.vars()[b].name));
        let mut rank = vec![0usize; inst.vars().len()];
        for (r, &j) in order.iter().enumerate() {
            rank[j] = r;
        }
        rank
    };
    let root_bounds: Vec<(f64, f64)> = inst.vars().iter().map(|v| (v.lower, v.upper)).collect();

    let mut engine = Simplex::new(&lp);
    let mut arena = NodeArena { fixes: vec![(0, usize::MAX, 0.0)] };
    let mut heap: BinaryHeap<OpenNode> = BinaryHeap::new();
    let mut plunge: Vec<OpenNode> = Vec::new();
    let mut next_id: u64 = 1;

    let mut incumbent: Option<(f64, Vec<f64>)> = None; // internal objective
    let mut nodes: u64 = 0;
    let mut path = Vec::new();
    let mut status = SolveStatus::Optimal;

    heap.push(OpenNode { bound: f64::NEG_INFINITY, id: 0, arena: 0 });

    let finish = |status: SolveStatus,
                  incumbent: Option<(f64, Vec<f64>)>,
                  open_best: Option<f64>,
                  nodes: u64,
                  start: Instant| {
        let (objective, values) = match &incumbent {
            Some((obj, x)) => (Some(sign * obj + offset), x.clone()),
            None => (None, Vec::new()),
        };
        // proved bound: best open node bound, or the incumbent when closed
        let internal_bound = match (open_best, &incumbent) {
            (Some(b), Some((obj, _))) => b.min(*obj),
            (Some(b), None) => b,
            (None, Some((obj, _))) => *obj,
            (None, None) => f64::INFINITY,
        };
        let gap = match (&incumbent, open_best) {
            (Some((obj, _)), Some(b)) if status != SolveStatus::Optimal => {
                Some((obj - b).max(0.0))
            }
            _ => None,
        };
        MilpSolution {
            status,
            objective,
            bound: sign * internal_bound + offset,
            values,
            nodes,
            wall_seconds: start.elapsed().as_secs_f64(),
            gap,
        }
    };

    loop {
        // pick next node: plunge first, then global best bound
        let node = match plunge.pop() {
            Some(n) => n,
            None => match heap.pop() {
                Some(n) => n,
                None => break,
            },
        };
        if let Some((obj, _)) = &incumbent {
            if node.bound >= obj - opts.absolute_gap {
                continue; // pruned by a newer incumbent
            }
        }
        if start.elapsed().as_secs_f64() > opts.time_limit {
            status = SolveStatus::TimeLimit;
            // the popped node is still open
            plunge.push(node);
            break;
        }
        if let Some(nl) = opts.node_limit {
            if nodes >= nl {
                status = SolveStatus::NodeLimit;
                plunge.push(node);
                break;
            }
        }
        nodes += 1;

        // install this node's bounds: root bounds plus the fixing path
        for &j in &binaries {
            let (l, h) = root_bounds[j];
            if engine.bounds(j) != (l, h) {
                engine.set_bounds(j, l, h);
            }
        }
        arena.path(node.arena, &mut path);
        for &(j, v) in &path {
            engine.set_bounds(j, v, v);
        }

        // solve the node LP in slices so the time limit stays live
        let lp_res = loop {
            let r = engine.solve(20_000);
            if r.status != LpStatus::IterLimit {
                break r;
            }
            if start.elapsed().as_secs_f64() > opts.time_limit {
                break r;
            }
        };
        match lp_res.status {
            LpStatus::Infeasible => continue,
            LpStatus::Unbounded => return Err(SolverError::Unbounded),
            LpStatus::IterLimit => {
                // time ran out mid-LP; the node stays open
                status = SolveStatus::TimeLimit;
                plunge.push(node);
                break;
            }
            LpStatus::Optimal => {}
        }
        let node_bound = lp_res.objective;
        if let Some((obj, _)) = &incumbent {
            if node_bound >= obj - opts.absolute_gap {
                continue;
            }
        }

        // find the branching candidate
        let x = &lp_res.x;
        let mut frac: Option<usize> = None;
        match opts.branching {
            Branching::FirstIndex => {
                for &j in &binaries {
                    if (x[j] - x[j].round()).abs() > INT_TOL {
                        frac = Some(j);
                        break;
                    }
                }
            }
            Branching::MostFractional => {
                let mut best = -1.0;
                for &j in &binaries {
                    let f = x[j] - x[j].floor();
                    let dist = f.min(1.0 - f);
                    if dist <= INT_TOL {
                        continue;
                    }
                    let better = dist > best + 1e-12
                        || ((dist - best).abs() <= 1e-12
                            && frac.is_some_and(|b| name_rank[j] < name_rank[b]));
                    if better {
                        best = dist;
                        frac = Some(j);
                    }
                }
            }
        }

        let Some(bvar) = frac else {
            // integral point: new incumbent (validated defensively)
            let viol = inst.check_solution(x, ROW_TOL);
            if viol.is_empty() {
                if incumbent.as_ref().is_none_or(|(obj, _)| node_bound < obj - opts.absolute_gap)
                {
                    if opts.log {
                        eprintln!(
                            "incumbent {:.6} at node {} ({:.1}s)",
                            sign * node_bound + offset,
                            nodes,
                            start.elapsed().as_secs_f64()
                        );
                    }
                    incumbent = Some((node_bound, x.clone()));
                }
            }
            continue;
        };

        // auxiliary fractionality may be completable without branching
        if let Some(h) = hook {
            if let Some(xc) = h.complete(inst, x) {
                if inst.check_solution(&xc, ROW_TOL).is_empty() {
                    let obj_c = sign * (inst.objective_value(&xc) - offset);
                    if incumbent.as_ref().is_none_or(|(obj, _)| obj_c < obj - opts.absolute_gap) {
                        if opts.log {
                            eprintln!(
                                "incumbent {:.6} (completed) at node {} ({:.1}s)",
                                sign * obj_c + offset,
                                nodes,
                                start.elapsed().as_secs_f64()
                            );
                        }
                        incumbent = Some((obj_c, xc));
                    }
                    if obj_c <= node_bound + opts.absolute_gap {
                        continue; // completion met the node bound: subtree closed
                    }
                }
            }
        }

        // children: nearest-bound child explored first (plunge)
        let f = x[bvar] - x[bvar].floor();
        let (first_val, second_val) = if f >= 0.5 { (1.0, 0.0) } else { (0.0, 1.0) };
        arena.fixes.push((node.arena, bvar, second_val));
        let second = arena.fixes.len() - 1;
        arena.fixes.push((node.arena, bvar, first_val));
        let first = arena.fixes.len() - 1;
        heap.push(OpenNode { bound: node_bound, id: next_id, arena: second });
        next_id += 1;
        plunge.push(OpenNode { bound: node_bound, id: next_id, arena: first });
        next_id += 1;
    }

    // best bound still open (for gap reporting on early stop)
    let open_best = plunge
        .iter()
        .map(|n| n.bound)
        .chain(heap.iter().map(|n| n.bound))
        .min_by(f64::total_cmp);
    if status == SolveStatus::Optimal && incumbent.is_none() {
        status = SolveStatus::Infeasible;
    }
    Ok(finish(status, incumbent, open_best, nodes, start))
}

/// Renders a solved assignment as one `name value` line per variable.
pub fn write_solution(inst: &MilpInstance, x: &[f64]) -> String {
    let mut out = String::new();
    for (v, val) in inst.vars().iter().zip(x) {
        let val = if *val == 0.0 { 0.0 } else { *val }; // normalize -0
        out.push_str(&v.name);
        out.push(' ');
        out.push_str(&format!("{val}"));
        out.push('\n');
    }
    out
}

/// Parses `name value` lines produced by [`write_solution`]. Blank lines and
/// `#` comments are ignored.
pub fn parse_solution(text: &str) -> Result<Vec<(String, f64)>, String> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let name = it.next().ok_or_else(|| format!("line {}: empty", ln + 1))?;
        let val: f64 = it
            .next()
            .ok_or_else(|| format!("line {}: missing value", ln + 1))?
            .parse()
            .map_err(|e| format!("line {}: {}", ln + 1, e))?;
        if it.next().is_some() {
            return Err(format!("line {}: trailing fields", ln + 1));
        }
        out.push((name.to_string(), val));
    }
    Ok(out)
}
