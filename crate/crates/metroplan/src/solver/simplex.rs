//! Bounded-variable dual simplex over a dense basis inverse.
//!
//! Every column (structural or logical) carries finite working bounds, so a
//! dual-feasible basis always exists: place each nonbasic at the bound its
//! reduced cost points to. Cold starts use the all-logical basis; warm
//! starts after bound changes (branching, cuts) reuse the current basis,
//! which stays dual feasible once nonbasics are re-placed.
//!
//! Infinite bounds are replaced by working bounds at +-1e10; an optimum
//! resting on a working bound is reported as unbounded.

/// Value standing in for an infinite bound.
const BIG_BOUND: f64 = 1e10;
/// Primal feasibility tolerance on variable values.
const FEAS_TOL: f64 = 1e-7;
/// Dual feasibility / reduced cost tolerance.
const DUAL_TOL: f64 = 1e-7;
/// Smallest pivot magnitude accepted.
const PIVOT_TOL: f64 = 1e-8;
/// Degenerate pivots tolerated before Bland's rule engages.
const BLAND_TRIGGER: u64 = 1000;
/// Pivots between dense refactorizations.
const REFACTOR_EVERY: u64 = 512;

/// LP in computational form: minimize `cost . x` subject to row activities
/// `row_lo <= A x <= row_hi` and variable bounds `lo <= x <= hi`.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub ncols: usize,
    pub nrows: usize,
    /// Structural columns as (row, coefficient) lists.
    pub cols: Vec<Vec<(u32, f64)>>,
    pub cost: Vec<f64>,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub row_lo: Vec<f64>,
    pub row_hi: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    /// Optimum rests on a working bound standing in for infinity.
    Unbounded,
    IterLimit,
}

#[derive(Debug, Clone)]
pub struct LpResult {
    pub status: LpStatus,
    /// Structural variable values (empty unless optimal/unbounded).
    pub x: Vec<f64>,
    pub objective: f64,
    pub iterations: u64,
}

/// Dual simplex engine holding a reusable factorized state.
pub struct Simplex {
    n: usize,
    m: usize,
    /// All columns: structural then one logical per row (coefficient -1).
    cols: Vec<Vec<(u32, f64)>>,
    cost: Vec<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    /// Which bounds were infinite before clamping to working bounds.
    artificial: Vec<(bool, bool)>,
    basis: Vec<usize>,
    /// Position in basis, or -1 when nonbasic.
    pos: Vec<i32>,
    at_upper: Vec<bool>,
    binv: Vec<f64>,
    xb: Vec<f64>,
    /// Dual Devex reference weights per basis position.
    weight: Vec<f64>,
    pivots_since_refactor: u64,
    pub total_iterations: u64,
}

impl Simplex {
    pub fn new(p: &LpProblem) -> Self {
        let n = p.ncols;
        let m = p.nrows;
        let mut cols = Vec::with_capacity(n + m);
        cols.extend(p.cols.iter().cloned());
        for r in 0..m {
            cols.push(vec![(r as u32, -1.0)]);
        }
        let mut cost = p.cost.clone();
        cost.resize(n + m, 0.0);
        let mut lo = Vec::with_capacity(n + m);
        let mut hi = Vec::with_capacity(n + m);
        let mut artificial = Vec::with_capacity(n + m);
        for j in 0..n + m {
            let (l, h) = if j < n {
                (p.lo[j], p.hi[j])
            } else {
                (p.row_lo[j - n], p.row_hi[j - n])
            };
            let al = !l.is_finite();
            let ah = !h.is_finite();
            lo.push(if al { -BIG_BOUND } else { l });
            hi.push(if ah { BIG_BOUND } else { h });
            artificial.push((al, ah));
        }
        let mut s = Simplex {
            n,
            m,
            cols,
            cost,
            lo,
            hi,
            artificial,
            basis: (n..n + m).collect(),
            pos: vec![-1; n + m],
            at_upper: vec![false; n + m],
            binv: vec![0.0; m * m],
            xb: vec![0.0; m],
            weight: vec![1.0; m],
            pivots_since_refactor: 0,
            total_iterations: 0,
        };
        for (p_, &b) in s.basis.clone().iter().enumerate() {
            s.pos[b] = p_ as i32;
        }
        for i in 0..m {
            s.binv[i * m + i] = -1.0;
        }
        s.place_nonbasics_dual_feasible();
        s.recompute_basics();
        s
    }

    /// Tightens or relaxes the bounds of a structural column. The basis is
    /// kept; nonbasic placements are revalidated lazily in `solve`.
    pub fn set_bounds(&mut self, col: usize, l: f64, h: f64) {
        debug_assert!(col < self.n);
        self.artificial[col] = (!l.is_finite(), !h.is_finite());
        self.lo[col] = if l.is_finite() { l } else { -BIG_BOUND };
        self.hi[col] = if h.is_finite() { h } else { BIG_BOUND };
    }

    pub fn bounds(&self, col: usize) -> (f64, f64) {
        (self.lo[col], self.hi[col])
    }

    /// Value of a column under the current basis.
    fn col_value(&self, j: usize) -> f64 {
        if self.pos[j] >= 0 {
            self.xb[self.pos[j] as usize]
        } else if self.at_upper[j] {
            self.hi[j]
        } else {
            self.lo[j]
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.col_value(j)).collect()
    }

    pub fn objective(&self) -> f64 {
        (0..self.n + self.m)
            .map(|j| self.cost[j] * self.col_value(j))
            .sum()
    }

    fn place_nonbasics_dual_feasible(&mut self) {
        // reduced cost with the all-logical zero-cost basis is just cost_j
        for j in 0..self.n + self.m {
            if self.pos[j] < 0 {
                self.at_upper[j] = self.cost[j] < 0.0;
            }
        }
    }

    /// Snaps nonbasic values into their (possibly changed) bounds and, when
    /// both bounds are finite, onto the dual-feasible side for the current
    /// reduced costs.
    fn replace_nonbasics(&mut self) {
        let y = self.btran_cost();
        for j in 0..self.n + self.m {
            if self.pos[j] >= 0 {
                continue;
            }
            if self.lo[j] == self.hi[j] {
                self.at_upper[j] = false;
                continue;
            }
            let d = self.reduced_cost(j, &y);
            if d > DUAL_TOL {
                self.at_upper[j] = false;
            } else if d < -DUAL_TOL {
                self.at_upper[j] = true;
            }
            // |d| within tolerance: either placement is dual feasible
        }
    }

    fn btran_cost(&self) -> Vec<f64> {
        // y = c_B . B^-1, exploiting that most basic costs are zero
        let m = self.m;
        let mut y = vec![0.0; m];
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = self.cost[b];
            if cb != 0.0 {
                let row = &self.binv[i * m..(i + 1) * m];
                for k in 0..m {
                    y[k] += cb * row[k];
                }
            }
        }
        y
    }

    fn reduced_cost(&self, j: usize, y: &[f64]) -> f64 {
        let mut d = self.cost[j];
        for &(r, a) in &self.cols[j] {
            d -= y[r as usize] * a;
        }
        d
    }

    fn recompute_basics(&mut self) {
        let m = self.m;
        // r = sum over nonbasic columns of A_j x_j
        let mut r = vec![0.0; m];
        for j in 0..self.n + self.m {
            if self.pos[j] >= 0 {
                continue;
            }
            let v = if self.at_upper[j] { self.hi[j] } else { self.lo[j] };
            if v != 0.0 {
                for &(row, a) in &self.cols[j] {
                    r[row as usize] += a * v;
                }
            }
        }
        // x_B = -B^-1 r
        for i in 0..m {
            let row = &self.binv[i * m..(i + 1) * m];
            let mut s = 0.0;
            for k in 0..m {
                s += row[k] * r[k];
            }
            self.xb[i] = -s;
        }
    }

    /// Rebuilds the dense basis inverse by Gauss-Jordan elimination,
    /// repairing a (near-)singular basis with logical columns.
    fn refactor(&mut self) {
        let m = self.m;
        let mut mat = vec![0.0; m * m];
        for (p, &b) in self.basis.iter().enumerate() {
            for &(r, a) in &self.cols[b] {
                mat[r as usize * m + p] = a;
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        let mut row_of_pos: Vec<usize> = vec![usize::MAX; m];
        let mut row_used = vec![false; m];
        for p in 0..m {
            // partial pivoting over unused rows of column p
            let (mut best_r, mut best_a) = (usize::MAX, PIVOT_TOL);
            for r in 0..m {
                if !row_used[r] && mat[r * m + p].abs() > best_a {
                    best_r = r;
                    best_a = mat[r * m + p].abs();
                }
            }
            if best_r == usize::MAX {
                continue; // singular column, repaired below
            }
            row_used[best_r] = true;
            row_of_pos[p] = best_r;
            let piv = mat[best_r * m + p];
            for k in 0..m {
                mat[best_r * m + k] /= piv;
                inv[best_r * m + k] /= piv;
            }
            for r in 0..m {
                if r != best_r {
                    let f = mat[r * m + p];
                    if f != 0.0 {
                        for k in 0..m {
                            mat[r * m + k] -= f * mat[best_r * m + k];
                            inv[r * m + k] -= f * inv[best_r * m + k];
                        }
                    }
                }
            }
        }
        // replace unpivoted basis positions by logicals of unused rows
        let mut unused_rows: Vec<usize> = (0..m).filter(|&r| !row_used[r]).collect();
        let mut repaired = false;
        for p in 0..m {
            if row_of_pos[p] == usize::MAX {
                let out = self.basis[p];
                self.pos[out] = -1;
                // park the ejected column at its nearest bound
                let v = self.col_value_clamped(out);
                self.at_upper[out] = (self.hi[out] - v).abs() < (v - self.lo[out]).abs();
                let r = unused_rows.pop().expect("one unused row per unpivoted position");
                let logical = self.n + r;
                if self.pos[logical] >= 0 {
                    // logical already basic elsewhere: fall back to identity on that slot
                    self.basis[p] = out;
                    self.pos[out] = p as i32;
                    continue;
                }
                self.basis[p] = logical;
                self.pos[logical] = p as i32;
                repaired = true;
            }
        }
        if repaired {
            // the repaired basis is nonsingular by construction
            self.binv = permuted_inverse(&self.basis, &self.cols, m)
                .expect("repaired basis inverts");
        } else {
            // rows of inv are ordered by matrix row; binv rows must be ordered
            // by basis position: binv[p] = row of inv that pivoted position p
            let mut binv = vec![0.0; m * m];
            for p in 0..m {
                let r = row_of_pos[p];
                binv[p * m..(p + 1) * m].copy_from_slice(&inv[r * m..(r + 1) * m]);
            }
            self.binv = binv;
        }
        self.weight = vec![1.0; m];
        self.pivots_since_refactor = 0;
        self.recompute_basics();
    }

    fn col_value_clamped(&self, j: usize) -> f64 {
        let v = self.col_value(j);
        v.clamp(self.lo[j], self.hi[j])
    }

    /// Runs the dual simplex to optimality from the current state.
    pub fn solve(&mut self, iter_limit: u64) -> LpResult {
        self.replace_nonbasics();
        self.recompute_basics();
        let mut degenerate: u64 = 0;
        let mut iters: u64 = 0;
        loop {
            if iters >= iter_limit {
                return self.result(LpStatus::IterLimit);
            }
            if self.pivots_since_refactor >= REFACTOR_EVERY {
                self.refactor();
            }
            // leaving: basic most out of bounds, Devex-scaled
            let mut p_leave = usize::MAX;
            let mut best_score = FEAS_TOL;
            let mut leave_to_upper = false;
            for i in 0..self.m {
                let b = self.basis[i];
                let v = self.xb[i];
                let (viol, to_upper) = if v < self.lo[b] - FEAS_TOL {
                    (self.lo[b] - v, false)
                } else if v > self.hi[b] + FEAS_TOL {
                    (v - self.hi[b], true)
                } else {
                    continue;
                };
                let score = viol * viol / self.weight[i].max(1e-10);
                if score > best_score || (p_leave == usize::MAX && viol > FEAS_TOL) {
                    if score > best_score {
                        best_score = score;
                    }
                    p_leave = i;
                    leave_to_upper = to_upper;
                }
            }
            if p_leave == usize::MAX {
                return self.result(LpStatus::Optimal);
            }

            let m = self.m;
            let rho = self.binv[p_leave * m..(p_leave + 1) * m].to_vec();
            let y = self.btran_cost();
            let bland = degenerate > BLAND_TRIGGER;

            // entering: dual ratio test over admissible nonbasics
            let mut q = usize::MAX;
            let mut best_ratio = f64::INFINITY;
            let mut best_alpha = 0.0f64;
            for j in 0..self.n + self.m {
                if self.pos[j] >= 0 || self.lo[j] == self.hi[j] {
                    continue;
                }
                let mut alpha = 0.0;
                for &(r, a) in &self.cols[j] {
                    alpha += rho[r as usize] * a;
                }
                if alpha.abs() <= PIVOT_TOL {
                    continue;
                }
                // admissibility: moving j into its interior must push the
                // leaving basic toward the violated bound
                let admissible = if leave_to_upper {
                    // decrease x_B[p]
                    (!self.at_upper[j] && alpha > 0.0) || (self.at_upper[j] && alpha < 0.0)
                } else {
                    // increase x_B[p]
                    (!self.at_upper[j] && alpha < 0.0) || (self.at_upper[j] && alpha > 0.0)
                };
                if !admissible {
                    continue;
                }
                let d = self.reduced_cost(j, &y);
                let ratio = (d / alpha).abs();
                // columns scan in index order, so "no replacement on ties"
                // leaves the smallest index holding any tied minimum
                let better = if bland {
                    ratio < best_ratio - 1e-12
                } else {
                    // prefer the larger pivot among near-ties for stability
                    ratio < best_ratio - 1e-9
                        || (ratio < best_ratio + 1e-9 && alpha.abs() > best_alpha.abs() + 1e-12)
                };
                if q == usize::MAX || better {
                    q = j;
                    best_ratio = ratio;
                    best_alpha = alpha;
                }
            }
            if q == usize::MAX {
                // no column can push the basic back: primal infeasible
                return self.result(LpStatus::Infeasible);
            }
            if best_ratio <= DUAL_TOL {
                degenerate += 1;
            } else {
                degenerate = 0;
            }

            // FTRAN: w = B^-1 A_q
            let mut w = vec![0.0; m];
            for &(r, a) in &self.cols[q] {
                if a != 0.0 {
                    let r = r as usize;
                    for i in 0..m {
                        w[i] += self.binv[i * m + r] * a;
                    }
                }
            }
            let wp = w[p_leave];
            if wp.abs() <= PIVOT_TOL {
                // stale factorization: rebuild once and retry the iteration
                self.refactor();
                iters += 1;
                self.total_iterations += 1;
                continue;
            }

            let b_out = self.basis[p_leave];
            let target = if leave_to_upper { self.hi[b_out] } else { self.lo[b_out] };
            let x_q_old = if self.at_upper[q] { self.hi[q] } else { self.lo[q] };
            let delta = (self.xb[p_leave] - target) / wp;

            for i in 0..m {
                if i != p_leave {
                    self.xb[i] -= delta * w[i];
                }
            }
            self.xb[p_leave] = x_q_old + delta;

            // Devex weight update for the dual
            let gp = self.weight[p_leave].max(1e-10);
            for i in 0..m {
                if i != p_leave && w[i] != 0.0 {
                    let cand = (w[i] / wp) * (w[i] / wp) * gp;
                    if cand > self.weight[i] {
                        self.weight[i] = cand;
                    }
                }
            }
            self.weight[p_leave] = (gp / (wp * wp)).max(1.0);

            // basis bookkeeping
            self.pos[b_out] = -1;
            self.at_upper[b_out] = leave_to_upper;
            self.basis[p_leave] = q;
            self.pos[q] = p_leave as i32;

            // binv <- E binv with eta column derived from w
            let inv_wp = 1.0 / wp;
            {
                let (head, tail) = self.binv.split_at_mut(p_leave * m);
                let (prow, rest) = tail.split_at_mut(m);
                for v in prow.iter_mut() {
                    *v *= inv_wp;
                }
                for (i, chunk) in head.chunks_exact_mut(m).enumerate() {
                    let f = w[i];
                    if f != 0.0 {
                        for (c, pv) in chunk.iter_mut().zip(prow.iter()) {
                            *c -= f * pv;
                        }
                    }
                }
                for (i0, chunk) in rest.chunks_exact_mut(m).enumerate() {
                    let f = w[p_leave + 1 + i0];
                    if f != 0.0 {
                        for (c, pv) in chunk.iter_mut().zip(prow.iter()) {
                            *c -= f * pv;
                        }
                    }
                }
            }
            self.pivots_since_refactor += 1;
            iters += 1;
            self.total_iterations += 1;
        }
    }

    fn result(&self, status: LpStatus) -> LpResult {
        let mut status = status;
        if status == LpStatus::Optimal {
            // an optimum resting on a working bound means the true problem
            // is unbounded in that direction
            for j in 0..self.n + self.m {
                let v = self.col_value(j);
                let (al, ah) = self.artificial[j];
                if (al && v <= -BIG_BOUND * 0.5) || (ah && v >= BIG_BOUND * 0.5) {
                    status = LpStatus::Unbounded;
                    break;
                }
            }
        }
        LpResult {
            status,
            x: if matches!(status, LpStatus::Optimal | LpStatus::Unbounded) {
                self.values()
            } else {
                Vec::new()
            },
            objective: self.objective(),
            iterations: self.total_iterations,
        }
    }
}

fn gauss_jordan_inverse(mat: &[f64], m: usize) -> Option<Vec<f64>> {
    let mut a = mat.to_vec();
    let mut inv = vec![0.0; m * m];
    for i in 0..m {
        inv[i * m + i] = 1.0;
    }
    let mut used = vec![false; m];
    let mut perm = vec![usize::MAX; m];
    for p in 0..m {
        let mut best = (usize::MAX, PIVOT_TOL);
        for r in 0..m {
            if !used[r] && a[r * m + p].abs() > best.1 {
                best = (r, a[r * m + p].abs());
            }
        }
        let r = best.0;
        if r == usize::MAX {
            return None;
        }
        used[r] = true;
        perm[p] = r;
        let piv = a[r * m + p];
        for k in 0..m {
            a[r * m + k] /= piv;
            inv[r * m + k] /= piv;
        }
        for rr in 0..m {
            if rr != r {
                let f = a[rr * m + p];
                if f != 0.0 {
                    for k in 0..m {
                        a[rr * m + k] -= f * a[r * m + k];
                        inv[rr * m + k] -= f * inv[r * m + k];
                    }
                }
            }
        }
    }
    let mut out = vec![0.0; m * m];
    for p in 0..m {
        let r = perm[p];
        out[p * m..(p + 1) * m].copy_from_slice(&inv[r * m..(r + 1) * m]);
    }
    Some(out)
}

fn permuted_inverse(basis: &[usize], cols: &[Vec<(u32, f64)>], m: usize) -> Option<Vec<f64>> {
    let mut mat = vec![0.0; m * m];
    for (p, &b) in basis.iter().enumerate() {
        for &(r, a) in &cols[b] {
            mat[r as usize * m + p] = a;
        }
    }
    gauss_jordan_inverse(&mat, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(
        ncols: usize,
        cost: Vec<f64>,
        bounds: Vec<(f64, f64)>,
        rows: Vec<(Vec<(u32, f64)>, f64, f64)>,
    ) -> LpProblem {
        let nrows = rows.len();
        let mut cols = vec![Vec::new(); ncols];
        let mut row_lo = Vec::new();
        let mut row_hi = Vec::new();
        for (r, (terms, lo, hi)) in rows.into_iter().enumerate() {
            for (c, a) in terms {
                cols[c as usize].push((r as u32, a));
            }
            row_lo.push(lo);
            row_hi.push(hi);
        }
        let (lo, hi) = bounds.into_iter().unzip();
        LpProblem { ncols, nrows, cols, cost, lo, hi, row_lo, row_hi }
    }

    #[test]
    fn bounds_only_goes_to_cheap_corner() {
        let p = lp(
            2,
            vec![1.0, -1.0],
            vec![(0.0, 5.0), (0.0, 5.0)],
            vec![(vec![(0, 1.0), (1, 1.0)], f64::NEG_INFINITY, 100.0)],
        );
        let r = Simplex::new(&p).solve(1000);
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.x, vec![0.0, 5.0]);
        assert_eq!(r.objective, -5.0);
    }

    #[test]
    fn knapsack_relaxation() {
        // min -(x+y) s.t. x+y <= 1, both in [0,1]
        let p = lp(
            2,
            vec![-1.0, -1.0],
            vec![(0.0, 1.0), (0.0, 1.0)],
            vec![(vec![(0, 1.0), (1, 1.0)], f64::NEG_INFINITY, 1.0)],
        );
        let r = Simplex::new(&p).solve(1000);
        assert_eq!(r.status, LpStatus::Optimal);
        assert!((r.objective + 1.0).abs() < 1e-9);
        assert!((r.x[0] + r.x[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn equality_chain_propagates() {
        // x0 = 5, x1 - x0 = 3, minimize x1 -> x1 = 8
        let p = lp(
            2,
            vec![0.0, 1.0],
            vec![(0.0, 100.0), (0.0, 100.0)],
            vec![
                (vec![(0, 1.0)], 5.0, 5.0),
                (vec![(1, 1.0), (0, -1.0)], 3.0, 3.0),
            ],
        );
        let r = Simplex::new(&p).solve(1000);
        assert_eq!(r.status, LpStatus::Optimal);
        assert!((r.x[0] - 5.0).abs() < 1e-9);
        assert!((r.x[1] - 8.0).abs() < 1e-9);
    }

    #[test]
    fn detects_infeasible_rows() {
        // x <= 1 (bound) but row demands x >= 2
        let p = lp(1, vec![0.0], vec![(0.0, 1.0)], vec![(vec![(0, 1.0)], 2.0, f64::INFINITY)]);
        let r = Simplex::new(&p).solve(1000);
        assert_eq!(r.status, LpStatus::Infeasible);
    }

    #[test]
    fn detects_unbounded_direction() {
        // min -x with x free above and no blocking row
        let p = lp(
            1,
            vec![-1.0],
            vec![(0.0, f64::INFINITY)],
            vec![(vec![(0, 0.0)], f64::NEG_INFINITY, f64::INFINITY)],
        );
        let r = Simplex::new(&p).solve(1000);
        assert_eq!(r.status, LpStatus::Unbounded);
    }

    #[test]
    fn warm_start_after_bound_fix() {
        // maximize x+y (as min of negative) over a triangle, then fix x = 0
        let p = lp(
            2,
            vec![-2.0, -1.0],
            vec![(0.0, 10.0), (0.0, 10.0)],
            vec![(vec![(0, 1.0), (1, 1.0)], f64::NEG_INFINITY, 4.0)],
        );
        let mut s = Simplex::new(&p);
        let r = s.solve(1000);
        assert_eq!(r.status, LpStatus::Optimal);
        assert!((r.objective + 8.0).abs() < 1e-9, "take all x first");
        s.set_bounds(0, 0.0, 0.0);
        let r2 = s.solve(1000);
        assert_eq!(r2.status, LpStatus::Optimal);
        assert!((r2.objective + 4.0).abs() < 1e-9, "then all y");
        assert!((r2.x[0]).abs() < 1e-9);
        assert!((r2.x[1] - 4.0).abs() < 1e-9);
    }

    /// Brute-force LP oracle: enumerate all basis subsets of the facet
    /// system `G x <= g`, solve each square system, keep feasible points,
    /// and return the best objective. Exponential, test-only.
    fn vertex_enum_min(cost: &[f64], facets: &[(Vec<f64>, f64)]) -> f64 {
        let n = cost.len();
        let m = facets.len();
        let mut best = f64::INFINITY;
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            // solve the active set as equalities by Gaussian elimination
            let mut a = vec![0.0; n * n];
            let mut b = vec![0.0; n];
            for (r, &f) in idx.iter().enumerate() {
                a[r * n..(r + 1) * n].copy_from_slice(&facets[f].0);
                b[r] = facets[f].1;
            }
            if let Some(x) = solve_square_refined(&a, &b, n) {
                let feasible = facets
                    .iter()
                    .all(|(row, rhs)| {
                        row.iter().zip(&x).map(|(c, v)| c * v).sum::<f64>() <= rhs + 1e-7
                    });
                if feasible {
                    let obj: f64 = cost.iter().zip(&x).map(|(c, v)| c * v).sum();
                    best = best.min(obj);
                }
            }
            // next n-combination of 0..m in lexicographic order
            let mut i = n;
            loop {
                if i == 0 {
                    return best;
                }
                i -= 1;
                if idx[i] != i + m - n {
                    idx[i] += 1;
                    for k in i + 1..n {
                        idx[k] = idx[k - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Gaussian solve with one step of iterative refinement, for sharper
    /// vertices out of ill-conditioned active sets.
    fn solve_square_refined(a0: &[f64], b0: &[f64], n: usize) -> Option<Vec<f64>> {
        let mut a = a0.to_vec();
        let mut b = b0.to_vec();
        let mut x = solve_square(&mut a, &mut b, n)?;
        let mut resid = vec![0.0; n];
        for r in 0..n {
            let mut s = b0[r];
            for k in 0..n {
                s -= a0[r * n + k] * x[k];
            }
            resid[r] = s;
        }
        let mut a = a0.to_vec();
        if let Some(dx) = solve_square(&mut a, &mut resid, n) {
            for k in 0..n {
                x[k] += dx[k];
            }
        }
        Some(x)
    }

    fn solve_square(a: &mut [f64], b: &mut [f64], n: usize) -> Option<Vec<f64>> {
        for p in 0..n {
            let (mut pr, mut pa) = (p, a[p * n + p].abs());
            for r in p + 1..n {
                if a[r * n + p].abs() > pa {
                    pr = r;
                    pa = a[r * n + p].abs();
                }
            }
            if pa < 1e-9 {
                return None;
            }
            if pr != p {
                for k in 0..n {
                    a.swap(p * n + k, pr * n + k);
                }
                b.swap(p, pr);
            }
            let piv = a[p * n + p];
            for r in p + 1..n {
                let f = a[r * n + p] / piv;
                if f != 0.0 {
                    for k in p..n {
                        a[r * n + k] -= f * a[p * n + k];
                    }
                    b[r] -= f * b[p];
                }
            }
        }
        let mut x = vec![0.0; n];
        for p in (0..n).rev() {
            let mut s = b[p];
            for k in p + 1..n {
                s -= a[p * n + k] * x[k];
            }
            x[p] = s / a[p * n + p];
        }
        Some(x)
    }

    #[test]
    fn random_lps_match_vertex_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0001);
        let n = 20;
        for case in 0..10 {
            let cost: Vec<f64> = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
            // facet system: -x_i <= 0, sum x <= 100, three random rows
            let mut facets: Vec<(Vec<f64>, f64)> = Vec::new();
            for i in 0..n {
                let mut row = vec![0.0; n];
                row[i] = -1.0;
                facets.push((row, 0.0));
            }
            facets.push((vec![1.0; n], 100.0));
            let mut rows = Vec::new();
            rows.push((
                (0..n as u32).map(|c| (c, 1.0)).collect::<Vec<_>>(),
                f64::NEG_INFINITY,
                100.0,
            ));
            for _ in 0..3 {
                let coefs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let rhs = rng.gen_range(1.0..50.0);
                facets.push((coefs.clone(), rhs));
                rows.push((
                    coefs.iter().enumerate().map(|(c, &a)| (c as u32, a)).collect(),
                    f64::NEG_INFINITY,
                    rhs,
                ));
            }
            let p = lp(
                n,
                cost.clone(),
                vec![(0.0, f64::INFINITY); n],
                rows,
            );
            let got = Simplex::new(&p).solve(100_000);
            assert_eq!(got.status, LpStatus::Optimal, "case {case}");
            let expect = vertex_enum_min(&cost, &facets);
            // both engines work at ~1e-7 feasibility tolerance, so demand
            // relative (not absolute) agreement
            let tol = 1e-6 * (1.0 + expect.abs());
            assert!(
                (got.objective - expect).abs() < tol,
                "case {case}: simplex {} vs vertex enumeration {}",
                got.objective,
                expect
            );
        }
    }

    #[test]
    fn degenerate_equalities_terminate() {
        // several copies of the same equality plus a conflicting objective
        let p = lp(
            3,
            vec![1.0, 1.0, -1.0],
            vec![(0.0, 2.0); 3],
            vec![
                (vec![(0, 1.0), (1, 1.0), (2, 1.0)], 2.0, 2.0),
                (vec![(0, 1.0), (1, 1.0), (2, 1.0)], 2.0, 2.0),
                (vec![(0, 1.0), (1, -1.0)], 0.0, 0.0),
            ],
        );
        let r = Simplex::new(&p).solve(10_000);
        assert_eq!(r.status, LpStatus::Optimal);
        assert!((r.objective + 2.0).abs() < 1e-9, "x2 = 2 alone");
    }
}
