//! MPS model exchange: a deterministic writer and a strict reader.
//!
//! The writer's output is byte-stable under write -> read -> write. The
//! reader additionally accepts the classic RANGES section (a ranged row
//! comes back as the original row plus a synthetic `<name>.rng` row for the
//! far side) and INTORG/INTEND markers for binary columns.

use crate::milp::{ConstraintFamily, MilpInstance, ObjSense, Sense, VarKind};

#[derive(Debug, thiserror::Error)]
pub enum MpsError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unsupported feature: {0}")]
    Unsupported(String),
}

fn perr(line: usize, msg: impl Into<String>) -> MpsError {
    MpsError::Parse { line, msg: msg.into() }
}

/// Formats a finite value the way the writer always does (shortest
/// round-trip decimal, `-0` normalized).
fn num(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v}")
}

pub fn write_mps(inst: &MilpInstance) -> String {
    let mut out = String::new();
    let name: String =
        inst.name.chars().map(|c| if c.is_whitespace() { '-' } else { c }).collect();
    out.push_str("NAME ");
    out.push_str(&name);
    out.push('\n');
    if inst.objective().sense == ObjSense::Maximize {
        out.push_str("OBJSENSE\n    MAX\n");
    }

    out.push_str("ROWS\n N COST\n");
    for row in inst.rows() {
        let s = match row.sense {
            Sense::Le => 'L',
            Sense::Ge => 'G',
            Sense::Eq => 'E',
        };
        out.push(' ');
        out.push(s);
        out.push(' ');
        out.push_str(&row.name);
        out.push('\n');
    }

    // per-variable entry lists: objective first, then rows in row order
    let nvars = inst.vars().len();
    let mut entries: Vec<Vec<(&str, f64)>> = vec![Vec::new(); nvars];
    for &(v, a) in &inst.objective().terms {
        if a != 0.0 {
            entries[v.0].push(("COST", a));
        }
    }
    for row in inst.rows() {
        for &(v, a) in &row.terms {
            entries[v.0].push((&row.name, a));
        }
    }
    out.push_str("COLUMNS\n");
    for (j, var) in inst.vars().iter().enumerate() {
        // a column absent from every row still has to exist in the file
        if entries[j].is_empty() {
            entries[j].push(("COST", 0.0));
        }
        for pair in entries[j].chunks(2) {
            out.push_str("    ");
            out.push_str(&var.name);
            for (row, a) in pair {
                out.push(' ');
                out.push_str(row);
                out.push(' ');
                out.push_str(&num(*a));
            }
            out.push('\n');
        }
    }

    out.push_str("RHS\n");
    if inst.objective().offset != 0.0 {
        out.push_str("    RHS COST ");
        out.push_str(&num(-inst.objective().offset));
        out.push('\n');
    }
    for row in inst.rows() {
        if row.rhs != 0.0 {
            out.push_str("    RHS ");
            out.push_str(&row.name);
            out.push(' ');
            out.push_str(&num(row.rhs));
            out.push('\n');
        }
    }

    out.push_str("BOUNDS\n");
    for var in inst.vars() {
        match var.kind {
            VarKind::Binary => {
                out.push_str(" BV BND ");
                out.push_str(&var.name);
                out.push('\n');
                if var.lower != 0.0 {
                    out.push_str(" LO BND ");
                    out.push_str(&var.name);
                    out.push(' ');
                    out.push_str(&num(var.lower));
                    out.push('\n');
                }
                if var.upper != 1.0 {
                    out.push_str(" UP BND ");
                    out.push_str(&var.name);
                    out.push(' ');
                    out.push_str(&num(var.upper));
                    out.push('\n');
                }
            }
            VarKind::Continuous => {
                if var.lower == var.upper {
                    out.push_str(" FX BND ");
                    out.push_str(&var.name);
                    out.push(' ');
                    out.push_str(&num(var.lower));
                    out.push('\n');
                    continue;
                }
                if var.lower == f64::NEG_INFINITY {
                    out.push_str(" MI BND ");
                    out.push_str(&var.name);
                    out.push('\n');
                } else if var.lower != 0.0 {
                    out.push_str(" LO BND ");
                    out.push_str(&var.name);
                    out.push(' ');
                    out.push_str(&num(var.lower));
                    out.push('\n');
                }
                if var.upper != f64::INFINITY {
                    out.push_str(" UP BND ");
                    out.push_str(&var.name);
                    out.push(' ');
                    out.push_str(&num(var.upper));
                    out.push('\n');
                }
            }
        }
    }
    out.push_str("ENDATA\n");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Start,
    Name,
    ObjSense,
    Rows,
    Columns,
    Rhs,
    Ranges,
    Bounds,
    Done,
}

pub fn read_mps(text: &str) -> Result<MilpInstance, MpsError> {
    let mut inst = MilpInstance::new("imported");
    let mut section = Section::Start;
    let mut sense = ObjSense::Minimize;
    let mut obj_row: Option<String> = None;
    // declared rows: name -> sense; rows materialize in declaration order
    let mut row_decl: Vec<(String, Sense)> = Vec::new();
    let mut obj_offset = 0.0;
    let mut integer_mode = false;
    // column data accumulates before rows exist in the instance
    struct Col {
        name: String,
        integer: bool,
        obj: f64,
        entries: Vec<(usize, f64)>,
        line: usize,
    }
    let mut cols: Vec<Col> = Vec::new();
    let mut col_index: std::collections::HashMap<String, usize> = std::collections::HashMap::new();
    let mut row_pos: std::collections::HashMap<String, usize> = std::collections::HashMap::new();
    let mut rhs_map: Vec<f64> = Vec::new();
    let mut range_map: Vec<Option<f64>> = Vec::new();
    // bounds adjustments applied after columns are known
    enum B {
        Up(f64),
        Lo(f64),
        Fx(f64),
        Mi,
        Pl,
        Fr,
        Bv,
    }
    let mut bound_ops: Vec<(usize, B, usize)> = Vec::new(); // (col, op, line)

    for (ln0, raw) in text.lines().enumerate() {
        let ln = ln0 + 1;
        if raw.starts_with('*') || raw.trim().is_empty() {
            continue;
        }
        let indented = raw.starts_with(' ') || raw.starts_with('\t');
        let mut tok = raw.split_whitespace();
        if !indented {
            let head = tok.next().ok_or_else(|| perr(ln, "empty header"))?;
            section = match head {
                "NAME" => {
                    if let Some(n) = tok.next() {
                        inst.name = n.to_string();
                    }
                    Section::Name
                }
                "OBJSENSE" => {
                    if let Some(v) = tok.next() {
                        sense = parse_objsense(v).ok_or_else(|| perr(ln, "bad OBJSENSE"))?;
                    }
                    Section::ObjSense
                }
                "ROWS" => Section::Rows,
                "COLUMNS" => Section::Columns,
                "RHS" => Section::Rhs,
                "RANGES" => Section::Ranges,
                "BOUNDS" => Section::Bounds,
                "ENDATA" => Section::Done,
                other => return Err(perr(ln, format!("unknown section '{other}'"))),
            };
            if section == Section::Done {
                break;
            }
            continue;
        }
        match section {
            Section::Start | Section::Name | Section::Done => {
                return Err(perr(ln, "data before a section header"));
            }
            Section::ObjSense => {
                let v = tok.next().ok_or_else(|| perr(ln, "missing OBJSENSE value"))?;
                sense = parse_objsense(v).ok_or_else(|| perr(ln, "bad OBJSENSE"))?;
            }
            Section::Rows => {
                let s = tok.next().ok_or_else(|| perr(ln, "missing row sense"))?;
                let name = tok.next().ok_or_else(|| perr(ln, "missing row name"))?;
                if tok.next().is_some() {
                    return Err(perr(ln, "trailing fields in ROWS"));
                }
                match s {
                    "N" => {
                        if obj_row.is_some() {
                            return Err(perr(ln, "multiple objective rows"));
                        }
                        obj_row = Some(name.to_string());
                    }
                    "L" | "G" | "E" => {
                        let sense = match s {
                            "L" => Sense::Le,
                            "G" => Sense::Ge,
                            _ => Sense::Eq,
                        };
                        if row_pos.insert(name.to_string(), row_decl.len()).is_some() {
                            return Err(perr(ln, format!("duplicate row '{name}'")));
                        }
                        row_decl.push((name.to_string(), sense));
                        rhs_map.push(0.0);
                        range_map.push(None);
                    }
                    other => return Err(perr(ln, format!("bad row sense '{other}'"))),
                }
            }
            Section::Columns => {
                let first = tok.next().ok_or_else(|| perr(ln, "missing column name"))?;
                let rest: Vec<&str> = tok.collect();
                // INTORG/INTEND markers toggle integer mode
                if rest.len() == 2 && rest[0] == "'MARKER'" {
                    match rest[1] {
                        "'INTORG'" => integer_mode = true,
                        "'INTEND'" => integer_mode = false,
                        other => return Err(perr(ln, format!("unknown marker {other}"))),
                    }
                    continue;
                }
                if rest.is_empty() || rest.len() % 2 != 0 || rest.len() > 4 {
                    return Err(perr(ln, "COLUMNS entries come as 1 or 2 row/value pairs"));
                }
                let ci = *col_index.entry(first.to_string()).or_insert_with(|| {
                    cols.push(Col {
                        name: first.to_string(),
                        integer: integer_mode,
                        obj: 0.0,
                        entries: Vec::new(),
                        line: ln,
                    });
                    cols.len() - 1
                });
                for pair in rest.chunks(2) {
                    let row = pair[0];
                    let val = parse_num(pair[1], ln)?;
                    if Some(row) == obj_row.as_deref() {
                        cols[ci].obj += val;
                    } else {
                        let &r = row_pos
                            .get(row)
                            .ok_or_else(|| perr(ln, format!("unknown row '{row}'")))?;
                        cols[ci].entries.push((r, val));
                    }
                }
            }
            Section::Rhs => {
                let _set = tok.next().ok_or_else(|| perr(ln, "missing RHS set name"))?;
                let rest: Vec<&str> = tok.collect();
                if rest.is_empty() || rest.len() % 2 != 0 || rest.len() > 4 {
                    return Err(perr(ln, "RHS entries come as 1 or 2 row/value pairs"));
                }
                for pair in rest.chunks(2) {
                    let row = pair[0];
                    let val = parse_num(pair[1], ln)?;
                    if Some(row) == obj_row.as_deref() {
                        obj_offset = -val;
                    } else {
                        let &r = row_pos
                            .get(row)
                            .ok_or_else(|| perr(ln, format!("unknown row '{row}'")))?;
                        rhs_map[r] = val;
                    }
                }
            }
            Section::Ranges => {
                let _set = tok.next().ok_or_else(|| perr(ln, "missing RANGES set name"))?;
                let rest: Vec<&str> = tok.collect();
                if rest.is_empty() || rest.len() % 2 != 0 || rest.len() > 4 {
                    return Err(perr(ln, "RANGES entries come as 1 or 2 row/value pairs"));
                }
                for pair in rest.chunks(2) {
                    let row = pair[0];
                    let val = parse_num(pair[1], ln)?;
                    let &r = row_pos
                        .get(row)
                        .ok_or_else(|| perr(ln, format!("unknown row '{row}'")))?;
                    range_map[r] = Some(val);
                }
            }
            Section::Bounds => {
                let ty = tok.next().ok_or_else(|| perr(ln, "missing bound type"))?;
                let _set = tok.next().ok_or_else(|| perr(ln, "missing bound set name"))?;
                let var = tok.next().ok_or_else(|| perr(ln, "missing bound variable"))?;
                let &ci = col_index
                    .get(var)
                    .ok_or_else(|| perr(ln, format!("unknown variable '{var}'")))?;
                let mut val = || -> Result<f64, MpsError> {
                    parse_num(tok.next().ok_or_else(|| perr(ln, "missing bound value"))?, ln)
                };
                let op = match ty {
                    "UP" => B::Up(val()?),
                    "LO" => B::Lo(val()?),
                    "FX" => B::Fx(val()?),
                    "MI" => B::Mi,
                    "PL" => B::Pl,
                    "FR" => B::Fr,
                    "BV" => B::Bv,
                    other => return Err(MpsError::Unsupported(format!("bound type {other}"))),
                };
                bound_ops.push((ci, op, ln));
            }
        }
    }

    // materialize: variables in first-appearance order
    let mut bounds: Vec<(f64, f64)> = Vec::with_capacity(cols.len());
    let mut kinds: Vec<VarKind> = Vec::with_capacity(cols.len());
    for c in &cols {
        if c.integer {
            kinds.push(VarKind::Binary);
            bounds.push((0.0, 1.0));
        } else {
            kinds.push(VarKind::Continuous);
            bounds.push((0.0, f64::INFINITY));
        }
    }
    for (ci, op, ln) in bound_ops {
        let b = &mut bounds[ci];
        match op {
            B::Up(v) => b.1 = v,
            B::Lo(v) => b.0 = v,
            B::Fx(v) => *b = (v, v),
            B::Mi => b.0 = f64::NEG_INFINITY,
            B::Pl => b.1 = f64::INFINITY,
            B::Fr => *b = (f64::NEG_INFINITY, f64::INFINITY),
            B::Bv => {
                kinds[ci] = VarKind::Binary;
                *b = (0.0, 1.0);
            }
        }
        if b.0 > b.1 {
            return Err(perr(ln, format!("crossed bounds on '{}'", cols[ci].name)));
        }
    }
    // integer columns must stay binary-shaped
    for (ci, c) in cols.iter().enumerate() {
        if kinds[ci] == VarKind::Binary {
            let (lo, hi) = bounds[ci];
            let ok = (0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi);
            if !ok {
                return Err(MpsError::Unsupported(format!(
                    "general integer variable '{}' (bounds {lo}..{hi})",
                    c.name
                )));
            }
        }
    }

    let mut var_ids = Vec::with_capacity(cols.len());
    for (ci, c) in cols.iter().enumerate() {
        let id = match kinds[ci] {
            VarKind::Binary => {
                let id = inst
                    .add_binary(&c.name)
                    .map_err(|e| perr(c.line, e.to_string()))?;
                let (lo, hi) = bounds[ci];
                if (lo, hi) != (0.0, 1.0) {
                    inst.set_bounds(id, lo, hi);
                }
                id
            }
            VarKind::Continuous => inst
                .add_continuous(&c.name, bounds[ci].0, bounds[ci].1)
                .map_err(|e| perr(c.line, e.to_string()))?,
        };
        var_ids.push(id);
    }

    // rows in declaration order, with per-row column terms
    let mut terms_per_row: Vec<Vec<(crate::milp::VarId, f64)>> = vec![Vec::new(); row_decl.len()];
    for (ci, c) in cols.iter().enumerate() {
        for &(r, a) in &c.entries {
            terms_per_row[r].push((var_ids[ci], a));
        }
    }
    for (r, (name, s)) in row_decl.iter().enumerate() {
        // a ranged row expands into near and far sides before insertion
        let (near, far) = match range_map[r] {
            None => ((*s, rhs_map[r]), None),
            Some(rng) => match s {
                Sense::Le => ((Sense::Le, rhs_map[r]), Some((Sense::Ge, rhs_map[r] - rng.abs()))),
                Sense::Ge => ((Sense::Ge, rhs_map[r]), Some((Sense::Le, rhs_map[r] + rng.abs()))),
                Sense::Eq if rng >= 0.0 => {
                    ((Sense::Ge, rhs_map[r]), Some((Sense::Le, rhs_map[r] + rng)))
                }
                Sense::Eq => ((Sense::Le, rhs_map[r]), Some((Sense::Ge, rhs_map[r] + rng))),
            },
        };
        inst.add_row(name, terms_per_row[r].clone(), near.0, near.1, ConstraintFamily::Imported)
            .map_err(|e| perr(0, e.to_string()))?;
        if let Some((s2, rhs2)) = far {
            inst.add_row(
                format!("{name}.rng"),
                terms_per_row[r].clone(),
                s2,
                rhs2,
                ConstraintFamily::Imported,
            )
            .map_err(|e| perr(0, e.to_string()))?;
        }
    }

    let obj_terms: Vec<(crate::milp::VarId, f64)> = cols
        .iter()
        .enumerate()
        .filter(|(_, c)| c.obj != 0.0)
        .map(|(ci, c)| (var_ids[ci], c.obj))
        .collect();
    inst.set_objective(sense, obj_terms);
    if obj_offset != 0.0 {
        inst.set_objective_offset(obj_offset);
    }
    Ok(inst)
}

fn parse_objsense(tok: &str) -> Option<ObjSense> {
    match tok {
        "MAX" | "MAXIMIZE" => Some(ObjSense::Maximize),
        "MIN" | "MINIMIZE" => Some(ObjSense::Minimize),
        _ => None,
    }
}

fn parse_num(tok: &str, ln: usize) -> Result<f64, MpsError> {
    let v: f64 = tok.parse().map_err(|_| perr(ln, format!("bad number '{tok}'")))?;
    if !v.is_finite() {
        return Err(perr(ln, format!("non-finite number '{tok}'")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milp::{ConstraintFamily, MilpInstance, ObjSense, Sense};

    fn sample() -> MilpInstance {
        let mut inst = MilpInstance::new("sample");
        let b = inst.add_binary("pick[1]").unwrap();
        let bf = inst.add_binary("pick[2]").unwrap();
        inst.fix_var(bf, 1.0);
        let c1 = inst.add_continuous("load", 0.0, 40.0).unwrap();
        let c2 = inst.add_continuous("slack", -5.0, f64::INFINITY).unwrap();
        let c3 = inst.add_continuous("level", 2.5, 2.5).unwrap();
        let lonely = inst.add_continuous("spare", 0.0, f64::INFINITY).unwrap();
        let _ = lonely;
        inst.add_row(
            "cap",
            vec![(b, 3.0), (c1, 1.0)],
            Sense::Le,
            40.0,
            ConstraintFamily::Imported,
        )
        .unwrap();
        inst.add_row(
            "link",
            vec![(bf, 10.0), (c2, -1.0), (c3, 2.0)],
            Sense::Eq,
            0.0,
            ConstraintFamily::Imported,
        )
        .unwrap();
        inst.add_row("floor", vec![(c1, 1.0)], Sense::Ge, 1.5, ConstraintFamily::Imported)
            .unwrap();
        inst.set_objective(ObjSense::Maximize, vec![(b, 5.0), (c1, 0.25)]);
        inst.set_objective_offset(7.5);
        inst
    }

    #[test]
    fn write_read_write_is_byte_identical() {
        let inst = sample();
        let s1 = write_mps(&inst);
        let back = read_mps(&s1).unwrap();
        let s2 = write_mps(&back);
        assert_eq!(s1, s2);
        // and the semantics survive
        assert_eq!(back.vars().len(), inst.vars().len());
        assert_eq!(back.rows().len(), inst.rows().len());
        for (a, b) in inst.vars().iter().zip(back.vars()) {
            assert_eq!(a.name, b.name);
            assert_eq!(a.kind, b.kind);
            assert_eq!(a.lower, b.lower);
            assert_eq!(a.upper, b.upper);
        }
        for (a, b) in inst.rows().iter().zip(back.rows()) {
            assert_eq!(a.name, b.name);
            assert_eq!(a.sense, b.sense);
            assert_eq!(a.rhs, b.rhs);
            assert_eq!(a.terms.len(), b.terms.len());
        }
        assert_eq!(back.objective().sense, ObjSense::Maximize);
        assert_eq!(back.objective().offset, 7.5);
    }

    #[test]
    fn minimize_files_have_no_objsense_section() {
        let mut inst = MilpInstance::new("mini");
        let x = inst.add_continuous("x", 0.0, 1.0).unwrap();
        inst.set_objective(ObjSense::Minimize, vec![(x, 1.0)]);
        let s = write_mps(&inst);
        assert!(!s.contains("OBJSENSE"));
        assert_eq!(read_mps(&s).unwrap().objective().sense, ObjSense::Minimize);
    }

    #[test]
    fn reader_rejects_malformed_input() {
        assert!(read_mps("GARBAGE\n").is_err());
        assert!(read_mps("ROWS\n N COST\nCOLUMNS\n    x nosuchrow 1\nENDATA\n").is_err());
        assert!(read_mps("ROWS\n N COST\nCOLUMNS\n    x COST abc\nENDATA\n").is_err());
        assert!(read_mps("ROWS\n N COST\n N AGAIN\n").is_err());
        assert!(read_mps("ROWS\n Z bad\n").is_err());
        // bound for a variable that never appeared
        assert!(read_mps("ROWS\n N COST\nCOLUMNS\n    x COST 1\nBOUNDS\n UP BND y 3\nENDATA\n")
            .is_err());
    }

    #[test]
    fn ranges_split_into_two_rows() {
        let text = "NAME r\nROWS\n N COST\n L top\nCOLUMNS\n    x COST 1 top 1\nRHS\n    RHS top 10\nRANGES\n    RNG top 4\nENDATA\n";
        let inst = read_mps(text).unwrap();
        assert_eq!(inst.rows().len(), 2);
        let top = inst.row_by_name("top").unwrap();
        assert_eq!(top.sense, Sense::Le);
        assert_eq!(top.rhs, 10.0);
        let far = inst.row_by_name("top.rng").unwrap();
        assert_eq!(far.sense, Sense::Ge);
        assert_eq!(far.rhs, 6.0);
    }

    #[test]
    fn intorg_marks_binaries_and_rejects_general_integers() {
        let ok = "ROWS\n N COST\n L r\nCOLUMNS\n    m 'MARKER' 'INTORG'\n    x COST 1 r 1\n    m 'MARKER' 'INTEND'\nRHS\n    RHS r 1\nENDATA\n";
        let inst = read_mps(ok).unwrap();
        assert_eq!(inst.vars()[0].kind, crate::milp::VarKind::Binary);
        let bad = "ROWS\n N COST\n L r\nCOLUMNS\n    m 'MARKER' 'INTORG'\n    x COST 1 r 1\n    m 'MARKER' 'INTEND'\nBOUNDS\n UP BND x 5\nENDATA\n";
        assert!(matches!(read_mps(bad), Err(MpsError::Unsupported(_))));
    }

    #[test]
    fn solver_accepts_imported_instances() {
        // a tiny knapsack through the full write/read/solve path
        let mut inst = MilpInstance::new("k2");
        let a = inst.add_binary("a").unwrap();
        let b = inst.add_binary("b").unwrap();
        inst.add_row("w", vec![(a, 2.0), (b, 2.0)], Sense::Le, 3.0, ConstraintFamily::Imported)
            .unwrap();
        inst.set_objective(ObjSense::Maximize, vec![(a, 3.0), (b, 2.0)]);
        let text = write_mps(&inst);
        let back = read_mps(&text).unwrap();
        let sol = crate::solver::solve(&back, &crate::solver::SolverOptions::default()).unwrap();
        assert_eq!(sol.status, crate::solver::SolveStatus::Optimal);
        assert!((sol.objective.unwrap() - 3.0).abs() < 1e-9);
    }
}
