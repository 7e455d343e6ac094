use alloc::format;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Variable `var` (0-based), possibly negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub const fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub const fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    /// Parses a signed 1-based DIMACS literal.
    pub fn from_dimacs(v: i64) -> Result<Self> {
        if v == 0 {
            return Err(Error::InvalidInput("literal 0 is a clause terminator".into()));
        }
        Ok(Literal {
            var: (v.unsigned_abs() - 1) as usize,
            negated: v < 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn eval(self, value: bool) -> bool {
        value != self.negated
    }
}

pub type Clause = [Literal; 3];

/// Falsifying assignment of a clause over its distinct variables, or `None`
/// when the clause contains both `x` and `¬x`.
pub fn falsifying_assignment(clause: &Clause) -> Option<(Vec<usize>, Vec<bool>)> {
    let mut vars = Vec::new();
    let mut values = Vec::new();
    for lit in clause {
        match vars.iter().position(|&v| v == lit.var) {
            Some(i) => {
                if values[i] != lit.negated {
                    return None;
                }
            }
            None => {
                vars.push(lit.var);
                values.push(lit.negated);
            }
        }
    }
    Some((vars, values))
}

/// 3-CNF formula; assignments are bit masks with variable 0 as the most
/// significant bit, matching qubit order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf3 {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl Cnf3 {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self> {
        if num_vars == 0 || num_vars >= usize::BITS as usize {
            return Err(Error::InvalidParameter(format!("unsupported variable count {num_vars}")));
        }
        for c in &clauses {
            for l in c {
                if l.var >= num_vars {
                    return Err(Error::InvalidInput(format!(
                        "literal references variable {} of {num_vars}",
                        l.var + 1
                    )));
                }
            }
        }
        Ok(Cnf3 { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn var_value(&self, assignment: usize, var: usize) -> bool {
        (assignment >> (self.num_vars - 1 - var)) & 1 == 1
    }

    pub fn clause_satisfied(&self, clause: &Clause, assignment: usize) -> bool {
        clause.iter().any(|l| l.eval(self.var_value(assignment, l.var)))
    }

    pub fn satisfied_by(&self, assignment: usize) -> bool {
        self.clauses.iter().all(|c| self.clause_satisfied(c, assignment))
    }
}
