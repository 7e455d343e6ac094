//! DIMACS CNF restricted to clauses of exactly three literals.

use anyhow::{bail, Context, Result};
use gscon_core::reductions::{Clause, Cnf3, Literal};

/// Parses `p cnf V C` followed by `C` zero-terminated clauses. Comment lines
/// start with `c`; clauses may span lines.
pub fn parse(text: &str) -> Result<Cnf3> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut pending: Vec<Literal> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                bail!("line {}: duplicate problem line", lineno + 1);
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" {
                bail!("line {}: expected `p cnf <vars> <clauses>`", lineno + 1);
            }
            let vars = parts[2].parse().with_context(|| format!("line {}: variable count", lineno + 1))?;
            let count = parts[3].parse().with_context(|| format!("line {}: clause count", lineno + 1))?;
            header = Some((vars, count));
            continue;
        }
        let Some((vars, _)) = header else {
            bail!("line {}: clause before the problem line", lineno + 1);
        };
        for tok in line.split_whitespace() {
            let v: i64 = tok.parse().with_context(|| format!("line {}: bad literal `{tok}`", lineno + 1))?;
            if v == 0 {
                let clause: Clause = pending
                    .as_slice()
                    .try_into()
                    .map_err(|_| anyhow::anyhow!("line {}: clause has {} literals, expected 3", lineno + 1, pending.len()))?;
                clauses.push(clause);
                pending.clear();
                continue;
            }
            if v.unsigned_abs() as usize > vars {
                bail!("line {}: literal {v} exceeds {vars} variables", lineno + 1);
            }
            pending.push(Literal::from_dimacs(v)?);
        }
    }
    let Some((vars, count)) = header else {
        bail!("missing problem line");
    };
    if !pending.is_empty() {
        bail!("unterminated final clause");
    }
    if clauses.len() != count {
        bail!("header declares {count} clauses, found {}", clauses.len());
    }
    Ok(Cnf3::new(vars, clauses)?)
}

pub fn write(cnf: &Cnf3) -> String {
    let mut out = format!("p cnf {} {}\n", cnf.num_vars(), cnf.clauses().len());
    for c in cnf.clauses() {
        for l in c {
            out.push_str(&format!("{} ", l.to_dimacs()));
        }
        out.push_str("0\n");
    }
    out
}
