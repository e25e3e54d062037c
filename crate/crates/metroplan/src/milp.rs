//! Generic mixed-integer linear program container: variables with bounds,
//! linear rows, one linear objective. The target of every constraint
//! builder and the input of the solver and the MPS writer.

use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Index of a variable inside its instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Binary,
    Continuous,
}

#[derive(Debug, Clone)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    pub lower: f64,
    pub upper: f64,
}

/// Row sense relative to the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        })
    }
}

/// Which part of the formulation a row belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstraintFamily {
    Zone,
    Timetable,
    Headway,
    Turnaround,
    RollingStock,
    Demand,
    SkipStop,
    Linearization,
    ObjectiveLink,
    /// Rows read back from an MPS file carry no family information.
    Imported,
}

impl ConstraintFamily {
    pub const ALL: [ConstraintFamily; 9] = [
        ConstraintFamily::Zone,
        ConstraintFamily::Timetable,
        ConstraintFamily::Headway,
        ConstraintFamily::Turnaround,
        ConstraintFamily::RollingStock,
        ConstraintFamily::Demand,
        ConstraintFamily::SkipStop,
        ConstraintFamily::Linearization,
        ConstraintFamily::ObjectiveLink,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            ConstraintFamily::Zone => "zone",
            ConstraintFamily::Timetable => "timetable",
            ConstraintFamily::Headway => "headway",
            ConstraintFamily::Turnaround => "turnaround",
            ConstraintFamily::RollingStock => "rolling_stock",
            ConstraintFamily::Demand => "demand",
            ConstraintFamily::SkipStop => "skip_stop",
            ConstraintFamily::Linearization => "linearization",
            ConstraintFamily::ObjectiveLink => "objective_link",
            ConstraintFamily::Imported => "imported",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub name: String,
    /// Sorted by variable id, coefficients merged, exact zeros dropped.
    pub terms: Vec<(VarId, f64)>,
    pub sense: Sense,
    pub rhs: f64,
    pub family: ConstraintFamily,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjSense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone)]
pub struct Objective {
    pub sense: ObjSense,
    pub terms: Vec<(VarId, f64)>,
    /// Constant offset added to the linear part.
    pub offset: f64,
}

impl Default for Objective {
    fn default() -> Self {
        Objective { sense: ObjSense::Minimize, terms: Vec::new(), offset: 0.0 }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum MilpError {
    #[error("duplicate variable name {0}")]
    DuplicateVariable(String),
    #[error("duplicate row name {0}")]
    DuplicateRow(String),
    #[error("variable {0} has empty bound interval [{1}, {2}]")]
    EmptyBounds(String, f64, f64),
    #[error("name {0:?} must be non-empty and free of whitespace")]
    BadName(String),
    #[error("unknown variable id {0:?}")]
    UnknownVar(VarId),
}

/// One violated condition found by [`MilpInstance::check_solution`].
#[derive(Debug, Clone)]
pub struct Violation {
    pub subject: String,
    pub amount: f64,
}

fn normalize_terms(mut terms: Vec<(VarId, f64)>) -> Vec<(VarId, f64)> {
    terms.sort_by_key(|&(v, _)| v);
    let mut out: Vec<(VarId, f64)> = Vec::with_capacity(terms.len());
    for (v, c) in terms {
        match out.last_mut() {
            Some((lv, lc)) if *lv == v => *lc += c,
            _ => out.push((v, c)),
        }
    }
    out.retain(|&(_, c)| c != 0.0);
    out
}

fn check_name(name: &str) -> Result<(), MilpError> {
    if name.is_empty() || name.chars().any(char::is_whitespace) {
        return Err(MilpError::BadName(name.to_string()));
    }
    Ok(())
}

/// A complete MILP: named bounded variables, named linear rows, an
/// objective. Construction is append-only; names are unique.
#[derive(Debug, Clone, Default)]
pub struct MilpInstance {
    pub name: String,
    vars: Vec<Variable>,
    rows: Vec<Constraint>,
    objective: Objective,
    var_index: HashMap<String, VarId>,
    row_index: HashMap<String, usize>,
}

impl MilpInstance {
    pub fn new(name: impl Into<String>) -> Self {
        MilpInstance { name: name.into(), ..Default::default() }
    }

    pub fn add_binary(&mut self, name: impl Into<String>) -> Result<VarId, MilpError> {
        self.add_var(name.into(), VarKind::Binary, 0.0, 1.0)
    }

    pub fn add_continuous(
        &mut self,
        name: impl Into<String>,
        lower: f64,
        upper: f64,
    ) -> Result<VarId, MilpError> {
        self.add_var(name.into(), VarKind::Continuous, lower, upper)
    }

    fn add_var(&mut self, name: String, kind: VarKind, lower: f64, upper: f64) -> Result<VarId, MilpError> {
        check_name(&name)?;
        if lower > upper {
            return Err(MilpError::EmptyBounds(name, lower, upper));
        }
        if self.var_index.contains_key(&name) {
            return Err(MilpError::DuplicateVariable(name));
        }
        let id = VarId(self.vars.len());
        self.var_index.insert(name.clone(), id);
        self.vars.push(Variable { name, kind, lower, upper });
        Ok(id)
    }

    pub fn add_row(
        &mut self,
        name: impl Into<String>,
        terms: Vec<(VarId, f64)>,
        sense: Sense,
        rhs: f64,
        family: ConstraintFamily,
    ) -> Result<(), MilpError> {
        let name = name.into();
        check_name(&name)?;
        if self.row_index.contains_key(&name) {
            return Err(MilpError::DuplicateRow(name));
        }
        let terms = normalize_terms(terms);
        for &(v, _) in &terms {
            if v.0 >= self.vars.len() {
                return Err(MilpError::UnknownVar(v));
            }
        }
        self.row_index.insert(name.clone(), self.rows.len());
        self.rows.push(Constraint { name, terms, sense, rhs, family });
        Ok(())
    }

    pub fn set_objective(&mut self, sense: ObjSense, terms: Vec<(VarId, f64)>) {
        self.objective = Objective { sense, terms: normalize_terms(terms), offset: 0.0 };
    }

    pub fn set_objective_offset(&mut self, offset: f64) {
        self.objective.offset = offset;
    }

    pub fn objective(&self) -> &Objective {
        &self.objective
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_binaries(&self) -> usize {
        self.vars.iter().filter(|v| v.kind == VarKind::Binary).count()
    }

    pub fn var(&self, id: VarId) -> &Variable {
        &self.vars[id.0]
    }

    pub fn var_by_name(&self, name: &str) -> Option<VarId> {
        self.var_index.get(name).copied()
    }

    pub fn row_by_name(&self, name: &str) -> Option<&Constraint> {
        self.row_index.get(name).map(|&i| &self.rows[i])
    }

    pub fn rows_in_family(&self, family: ConstraintFamily) -> impl Iterator<Item = &Constraint> {
        self.rows.iter().filter(move |r| r.family == family)
    }

    /// Clamps a variable to a fixed value (used to pin binaries to a known
    /// timetable before an LP solve).
    pub fn fix_var(&mut self, id: VarId, value: f64) {
        let v = &mut self.vars[id.0];
        v.lower = value;
        v.upper = value;
    }

    pub fn set_bounds(&mut self, id: VarId, lower: f64, upper: f64) {
        let v = &mut self.vars[id.0];
        v.lower = lower;
        v.upper = upper;
    }

    /// Objective value of an assignment (dense, `num_vars` entries).
    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.offset
            + self
                .objective
                .terms
                .iter()
                .map(|&(v, c)| c * x[v.0])
                .sum::<f64>()
    }

    /// Left-hand-side activity of a row under an assignment.
    pub fn row_activity(&self, row: &Constraint, x: &[f64]) -> f64 {
        row.terms.iter().map(|&(v, c)| c * x[v.0]).sum()
    }

    /// Independent feasibility check: bound, integrality, and row residuals
    /// beyond `tol` are reported; an empty result means feasible.
    pub fn check_solution(&self, x: &[f64], tol: f64) -> Vec<Violation> {
        let mut out = Vec::new();
        if x.len() != self.vars.len() {
            out.push(Violation {
                subject: format!("assignment length {} != {} variables", x.len(), self.vars.len()),
                amount: f64::INFINITY,
            });
            return out;
        }
        for (i, v) in self.vars.iter().enumerate() {
            let xi = x[i];
            if xi < v.lower - tol {
                out.push(Violation { subject: format!("{} below lower bound", v.name), amount: v.lower - xi });
            }
            if xi > v.upper + tol {
                out.push(Violation { subject: format!("{} above upper bound", v.name), amount: xi - v.upper });
            }
            if v.kind == VarKind::Binary && (xi - xi.round()).abs() > tol {
                out.push(Violation {
                    subject: format!("{} not integral", v.name),
                    amount: (xi - xi.round()).abs(),
                });
            }
        }
        for row in &self.rows {
            let act = self.row_activity(row, x);
            let miss = match row.sense {
                Sense::Le => act - row.rhs,
                Sense::Ge => row.rhs - act,
                Sense::Eq => (act - row.rhs).abs(),
            };
            if miss > tol {
                out.push(Violation { subject: format!("row {} ({})", row.name, row.sense), amount: miss });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_merge_and_zeros_drop() {
        let mut m = MilpInstance::new("t");
        let a = m.add_binary("a").unwrap();
        let b = m.add_binary("b").unwrap();
        m.add_row("r", vec![(b, 1.0), (a, 2.0), (a, -2.0), (b, 0.5)], Sense::Le, 1.0, ConstraintFamily::Zone)
            .unwrap();
        let row = m.row_by_name("r").unwrap();
        assert_eq!(row.terms, vec![(b, 1.5)]);
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut m = MilpInstance::new("t");
        m.add_binary("a").unwrap();
        assert_eq!(m.add_binary("a").unwrap_err(), MilpError::DuplicateVariable("a".into()));
        m.add_row("r", vec![], Sense::Eq, 0.0, ConstraintFamily::Zone).unwrap();
        assert_eq!(
            m.add_row("r", vec![], Sense::Eq, 0.0, ConstraintFamily::Zone).unwrap_err(),
            MilpError::DuplicateRow("r".into())
        );
    }

    #[test]
    fn check_solution_reports_each_kind() {
        let mut m = MilpInstance::new("t");
        let a = m.add_binary("a").unwrap();
        let c = m.add_continuous("c", 0.0, 10.0).unwrap();
        m.add_row("cap", vec![(a, 1.0), (c, 1.0)], Sense::Le, 5.0, ConstraintFamily::Demand).unwrap();
        // feasible point
        assert!(m.check_solution(&[1.0, 4.0], 1e-9).is_empty());
        // fractional binary + row violation + bound violation
        let v = m.check_solution(&[0.5, 11.0], 1e-9);
        assert_eq!(v.len(), 3);
        let _ = (a, c);
    }

    #[test]
    fn objective_value_with_offset() {
        let mut m = MilpInstance::new("t");
        let a = m.add_continuous("a", 0.0, 10.0).unwrap();
        m.set_objective(ObjSense::Minimize, vec![(a, 2.0)]);
        m.set_objective_offset(1.0);
        assert_eq!(m.objective_value(&[3.0]), 7.0);
    }
}
