use std::collections::HashSet;
use std::fmt::Write;

use crate::error::{Error, ParseError, Result};
use crate::graph::dimacs::{parse_num, tokens};

/// One constraint: an ordered tuple of distinct variables (0-based) and its
/// satisfying value tuples (values in `1..=B`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub vars: Vec<usize>,
    pub tuples: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspInstance {
    pub n: usize,
    pub b: u32,
    pub constraints: Vec<Constraint>,
}

impl CspInstance {
    pub fn new(n: usize, b: u32, constraints: Vec<Constraint>) -> Result<Self> {
        let c = CspInstance { n, b, constraints };
        c.validate()?;
        Ok(c)
    }

    /// Largest constraint arity.
    pub fn q(&self) -> usize {
        self.constraints.iter().map(|c| c.vars.len()).max().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInstance(m));
        if self.b < 1 {
            return bad("domain size B must be positive".into());
        }
        for (j, c) in self.constraints.iter().enumerate() {
            if c.vars.is_empty() {
                return bad(format!("constraint {} has no variables", j + 1));
            }
            let mut seen = HashSet::new();
            for &v in &c.vars {
                if v >= self.n {
                    return bad(format!("constraint {} uses variable {} > {}", j + 1, v + 1, self.n));
                }
                if !seen.insert(v) {
                    return bad(format!("constraint {} repeats variable {}", j + 1, v + 1));
                }
            }
            let mut tuples = HashSet::new();
            for t in &c.tuples {
                if t.len() != c.vars.len() {
                    return bad(format!("constraint {} has a tuple of arity {}", j + 1, t.len()));
                }
                if let Some(&a) = t.iter().find(|&&a| a == 0 || a > self.b) {
                    return bad(format!("constraint {} has value {a} outside 1..={}", j + 1, self.b));
                }
                if !tuples.insert(t) {
                    return bad(format!("constraint {} lists tuple {t:?} twice", j + 1));
                }
            }
        }
        Ok(())
    }

    /// True iff `values` (one per variable, 1-based values) satisfies every constraint.
    pub fn satisfied_by(&self, values: &[u32]) -> bool {
        self.constraints.iter().all(|c| {
            c.tuples
                .iter()
                .any(|t| t.iter().zip(&c.vars).all(|(&a, &v)| values[v] == a))
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "p csp {} {} {} {}", self.n, self.constraints.len(), self.b, self.q()).unwrap();
        for c in &self.constraints {
            write!(s, "c {}", c.vars.len()).unwrap();
            for v in &c.vars {
                write!(s, " {}", v + 1).unwrap();
            }
            s.push('\n');
            for t in &c.tuples {
                s.push('t');
                for a in t {
                    write!(s, " {a}").unwrap();
                }
                s.push('\n');
            }
        }
        s
    }
}

/// `p csp <n> <m> <B> <q>`, then per constraint `c <arity> <vars...>` followed
/// by `t <values...>` lines. Lines starting with `#` are comments.
pub fn parse_csp(text: &str) -> Result<CspInstance> {
    let mut header: Option<(usize, usize, u32, usize)> = None;
    let mut constraints: Vec<Constraint> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim_end();
        let eol = line.len() + 1;
        let mut toks = tokens(line);
        let Some((col, head)) = toks.next() else { continue };
        if head.starts_with('#') {
            continue;
        }
        match head {
            "p" => {
                if header.is_some() {
                    return Err(ParseError::new(ln, col, "duplicate problem line").into());
                }
                match toks.next() {
                    Some((_, "csp")) => {}
                    Some((c, t)) => return Err(ParseError::new(ln, c, format!("expected `csp`, found `{t}`")).into()),
                    None => return Err(ParseError::new(ln, eol, "expected `csp`").into()),
                }
                let n = parse_num(toks.next(), ln, eol, "variable count")?;
                let m = parse_num(toks.next(), ln, eol, "constraint count")?;
                let b = parse_num(toks.next(), ln, eol, "domain size")?;
                let q = parse_num(toks.next(), ln, eol, "arity bound")?;
                header = Some((n, m, b, q));
            }
            "c" => {
                let Some((n, _, _, q)) = header else {
                    return Err(ParseError::new(ln, col, "constraint before problem line").into());
                };
                let acol = toks.clone().next().map_or(eol, |t| t.0);
                let arity: usize = parse_num(toks.next(), ln, eol, "arity")?;
                if arity == 0 || arity > q {
                    return Err(ParseError::new(ln, acol, format!("arity {arity} outside 1..={q}")).into());
                }
                let mut vars = Vec::with_capacity(arity);
                for _ in 0..arity {
                    let vcol = toks.clone().next().map_or(eol, |t| t.0);
                    let v: usize = parse_num(toks.next(), ln, eol, "variable")?;
                    if v == 0 || v > n {
                        return Err(ParseError::new(ln, vcol, format!("variable {v} outside 1..={n}")).into());
                    }
                    if vars.contains(&(v - 1)) {
                        return Err(ParseError::new(ln, vcol, format!("variable {v} repeated")).into());
                    }
                    vars.push(v - 1);
                }
                if let Some((c, _)) = toks.next() {
                    return Err(ParseError::new(ln, c, "too many variables for arity").into());
                }
                constraints.push(Constraint { vars, tuples: vec![] });
            }
            "t" => {
                let Some((_, _, b, _)) = header else {
                    return Err(ParseError::new(ln, col, "tuple before problem line").into());
                };
                let Some(c) = constraints.last_mut() else {
                    return Err(ParseError::new(ln, col, "tuple before any constraint").into());
                };
                let mut t = Vec::with_capacity(c.vars.len());
                for _ in 0..c.vars.len() {
                    let vcol = toks.clone().next().map_or(eol, |t| t.0);
                    let a: u32 = parse_num(toks.next(), ln, eol, "value")?;
                    if a == 0 || a > b {
                        return Err(ParseError::new(ln, vcol, format!("value {a} outside 1..={b}")).into());
                    }
                    t.push(a);
                }
                if let Some((c, _)) = toks.next() {
                    return Err(ParseError::new(ln, c, "too many values for arity").into());
                }
                if c.tuples.contains(&t) {
                    return Err(ParseError::new(ln, col, "duplicate tuple").into());
                }
                c.tuples.push(t);
            }
            other => return Err(ParseError::new(ln, col, format!("unexpected line type `{other}`")).into()),
        }
    }
    let (n, m, b, _) = header.ok_or_else(|| ParseError::new(1, 1, "missing problem line `p csp <n> <m> <B> <q>`"))?;
    if constraints.len() != m {
        return Err(Error::InvalidInstance(format!(
            "header declares {m} constraints, found {}",
            constraints.len()
        )));
    }
    CspInstance::new(n, b, constraints)
}
