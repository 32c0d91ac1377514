use std::fmt::Write;

use crate::error::{Error, ParseError, Result};
use crate::graph::dimacs::tokens;

/// A CNF formula over variables `1..=n`; literals are signed variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub n: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(n: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        let f = CnfFormula { n, clauses };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, c) in self.clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::InvalidInstance(format!("clause {} is empty", i + 1)));
            }
            if let Some(&l) = c.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > self.n) {
                return Err(Error::InvalidInstance(format!(
                    "literal {l} in clause {} outside ±1..={}",
                    i + 1,
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// Largest clause length.
    pub fn max_arity(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// True iff `assignment` (bit `i` = value of variable `i+1`) satisfies `clause`.
    pub fn clause_satisfied(clause: &[i32], assignment: impl Fn(usize) -> bool) -> bool {
        clause.iter().any(|&l| assignment(l.unsigned_abs() as usize - 1) == (l > 0))
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        writeln!(s, "p cnf {} {}", self.n, self.clauses.len()).unwrap();
        for c in &self.clauses {
            for l in c {
                write!(s, "{l} ").unwrap();
            }
            s.push_str("0\n");
        }
        s
    }
}

/// DIMACS CNF: `c` comments, `p cnf <n> <m>`, zero-terminated clauses that
/// may span lines. A `%` line ends the input.
pub fn parse_cnf(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut cur: Vec<i32> = Vec::new();
    let mut last_pos = (1, 1);
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim_end();
        let eol = line.len() + 1;
        let mut toks = tokens(line);
        let Some((col, head)) = toks.clone().next() else { continue };
        if head == "c" {
            continue;
        }
        if head == "%" {
            break;
        }
        if head == "p" {
            toks.next();
            if header.is_some() {
                return Err(ParseError::new(ln, col, "duplicate problem line").into());
            }
            match toks.next() {
                Some((_, "cnf")) => {}
                Some((c, t)) => return Err(ParseError::new(ln, c, format!("expected `cnf`, found `{t}`")).into()),
                None => return Err(ParseError::new(ln, eol, "expected `cnf`").into()),
            }
            let n = crate::graph::dimacs::parse_num(toks.next(), ln, eol, "variable count")?;
            let m = crate::graph::dimacs::parse_num(toks.next(), ln, eol, "clause count")?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(ParseError::new(ln, col, "clause before problem line").into());
        };
        for (c, t) in toks {
            let l: i32 = t
                .parse()
                .map_err(|_| ParseError::new(ln, c, format!("expected literal, found `{t}`")))?;
            if l == 0 {
                if cur.is_empty() {
                    return Err(ParseError::new(ln, c, "empty clause").into());
                }
                clauses.push(std::mem::take(&mut cur));
            } else {
                if l.unsigned_abs() as usize > n {
                    return Err(ParseError::new(ln, c, format!("literal {l} exceeds {n} variables")).into());
                }
                cur.push(l);
            }
            last_pos = (ln, c);
        }
    }
    let (n, m) = header.ok_or_else(|| ParseError::new(1, 1, "missing problem line `p cnf <n> <m>`"))?;
    if !cur.is_empty() {
        return Err(ParseError::new(last_pos.0, last_pos.1, "last clause is not terminated by 0").into());
    }
    if clauses.len() != m {
        return Err(Error::InvalidInstance(format!(
            "header declares {m} clauses, found {}",
            clauses.len()
        )));
    }
    CnfFormula::new(n, clauses)
}
