//! Oracle constructors: explicit marked sets and CNF-satisfiability
//! predicates, including a DIMACS reader.
//!
//! Bit-encoding convention, fixed for cross-implementation test vectors:
//! variable `k` (1-based) maps to bit `k-1` of the index, least significant
//! bit first. Index 5 = 0b101 over three variables assigns x1=1, x2=0, x3=1.

use crate::error::{Error, Result};
use crate::problem::{check_qubits, SearchProblem, MAX_QUBITS};

/// Explicit oracle: a sorted, duplicate-free set of marked indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedSetOracle {
    n: u32,
    marked: Vec<u64>,
}

impl MarkedSetOracle {
    /// `f(i) = 1` iff `i` is in `indices`. Out-of-range or duplicate
    /// indices are rejected.
    pub fn explicit(n: u32, indices: &[u64]) -> Result<Self> {
        check_qubits(n)?;
        let size = 1u64 << n;
        let mut marked = indices.to_vec();
        marked.sort_unstable();
        for pair in marked.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateIndex { index: pair[0] });
            }
        }
        if let Some(&last) = marked.last() {
            if last >= size {
                return Err(Error::IndexOutOfRange { index: last, n });
            }
        }
        Ok(Self { n, marked })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn match_count(&self) -> u64 {
        self.marked.len() as u64
    }

    pub fn is_match(&self, index: u64) -> bool {
        self.marked.binary_search(&index).is_ok()
    }

    pub fn marked(&self) -> &[u64] {
        &self.marked
    }

    pub fn to_problem(&self) -> Result<SearchProblem> {
        SearchProblem::from_marked_indices(self.n, &self.marked)
    }
}

/// A CNF formula: clauses of nonzero signed literals over variables
/// `1..=variable_count`. An empty clause is representable (and makes the
/// formula unsatisfiable); it is never silently dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    variable_count: u32,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(variable_count: u32, clauses: Vec<Vec<i32>>) -> Result<Self> {
        if variable_count == 0 {
            return Err(Error::Parse {
                line: 0,
                message: "formula needs at least one variable".into(),
            });
        }
        for clause in &clauses {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() > variable_count {
                    return Err(Error::Parse {
                        line: 0,
                        message: format!("literal {lit} out of range 1..={variable_count}"),
                    });
                }
            }
        }
        Ok(Self { variable_count, clauses })
    }

    pub fn variable_count(&self) -> u32 {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Evaluates the formula on the assignment encoded by `index`.
    pub fn evaluate(&self, index: u64) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = index >> (lit.unsigned_abs() - 1) & 1 == 1;
                if lit > 0 {
                    value
                } else {
                    !value
                }
            })
        })
    }

    /// Builds the search problem whose oracle accepts satisfying
    /// assignments. Enumerates all `2^n` assignments up front to cache the
    /// match count.
    pub fn to_problem(&self) -> Result<SearchProblem> {
        if self.variable_count > MAX_QUBITS {
            return Err(Error::QubitCount { n: self.variable_count, max: MAX_QUBITS });
        }
        SearchProblem::from_predicate(self.variable_count, |i| self.evaluate(i))
    }
}

/// Parses DIMACS CNF text: `c` comment lines, a `p cnf <vars> <clauses>`
/// header, then zero-terminated clauses which may span lines. A `%` token
/// ends the clause section (a common benchmark dialect).
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = 0;
    let mut done = false;

    'lines: for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(Error::Parse { line: line_no, message: "duplicate header".into() });
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 4 || fields[1] != "cnf" {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("malformed header `{trimmed}`; expected `p cnf <vars> <clauses>`"),
                });
            }
            let vars: u32 = fields[2].parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad variable count `{}`", fields[2]),
            })?;
            let count: usize = fields[3].parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad clause count `{}`", fields[3]),
            })?;
            if vars == 0 {
                return Err(Error::Parse { line: line_no, message: "zero variables".into() });
            }
            header = Some((vars, count));
            continue;
        }

        let (vars, _) = header.ok_or(Error::Parse {
            line: line_no,
            message: "clause before `p cnf` header".into(),
        })?;
        for token in trimmed.split_whitespace() {
            if token == "%" {
                done = true;
                break 'lines;
            }
            let lit: i32 = token.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad literal `{token}`"),
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() > vars {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("literal {lit} out of range 1..={vars}"),
                    });
                }
                current.push(lit);
            }
        }
    }

    let (vars, declared) = header.ok_or(Error::Parse {
        line: last_line,
        message: "missing `p cnf` header".into(),
    })?;
    if !current.is_empty() && !done {
        return Err(Error::Parse {
            line: last_line,
            message: "unterminated final clause (missing trailing 0)".into(),
        });
    }
    if !current.is_empty() {
        // `%` may terminate the last clause in the benchmark dialect.
        clauses.push(current);
    }
    if clauses.len() != declared {
        return Err(Error::Parse {
            line: last_line,
            message: format!("header declares {declared} clauses, found {}", clauses.len()),
        });
    }
    CnfFormula::new(vars, clauses)
}

/// Renders a formula back to DIMACS text. Round-trips through
/// [`parse_dimacs`] to an identical formula.
pub fn render_dimacs(formula: &CnfFormula) -> String {
    let mut out = format!(
        "p cnf {} {}\n",
        formula.variable_count(),
        formula.clauses().len()
    );
    for clause in formula.clauses() {
        for lit in clause {
            out.push_str(&lit.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}
