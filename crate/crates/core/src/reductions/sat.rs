use super::cnf::CnfFormula;
use super::csp::{Constraint, CspInstance};
use crate::error::{Error, Result};

/// Default cap on the number of groups a single clause may touch.
pub const MAX_CLAUSE_GROUPS: usize = 8;

/// How SAT variables are packed into CSP variables: `t` consecutive SAT
/// variables form a group, encoded by `p` base-`b` digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupingParams {
    pub b: u32,
    pub t: usize,
    pub p: usize,
    /// SAT variables (0-based) of each group.
    pub groups: Vec<Vec<usize>>,
}

impl GroupingParams {
    pub fn new(n: usize, b: u32, t: usize) -> Result<Self> {
        if b < 2 {
            return Err(Error::Reduction(format!("B must be at least 2, got {b}")));
        }
        if t == 0 || t > 62 {
            return Err(Error::Reduction(format!("group size t must be in 1..=62, got {t}")));
        }
        // Smallest p with b^p >= 2^t.
        let mut p = 0;
        let mut cap: u128 = 1;
        while cap < 1u128 << t {
            cap *= b as u128;
            p += 1;
        }
        let groups = (0..n).step_by(t).map(|s| (s..(s + t).min(n)).collect()).collect();
        Ok(GroupingParams { b, t, p, groups })
    }

    pub fn group_of(&self, var: usize) -> usize {
        var / self.t
    }

    /// CSP variables of `group`, least significant digit first.
    pub fn csp_vars(&self, group: usize) -> std::ops::Range<usize> {
        group * self.p..(group + 1) * self.p
    }

    /// Base-`b` digits (offset to `1..=b`) of a group assignment read as a
    /// binary number with the group's first variable as the low bit.
    pub fn encode(&self, bits: u64) -> Vec<u32> {
        let mut x = bits;
        (0..self.p)
            .map(|_| {
                let d = (x % self.b as u64) as u32;
                x /= self.b as u64;
                d + 1
            })
            .collect()
    }

    pub fn decode(&self, digits: &[u32]) -> u64 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.b as u64 + (d - 1) as u64)
    }
}

pub fn sat_to_csp(f: &CnfFormula, b: u32, t: usize) -> Result<CspInstance> {
    sat_to_csp_with(f, b, t, MAX_CLAUSE_GROUPS)
}

/// One constraint per clause over the digits of every group the clause
/// touches; its tuples encode the group assignments that satisfy the clause.
pub fn sat_to_csp_with(f: &CnfFormula, b: u32, t: usize, max_groups: usize) -> Result<CspInstance> {
    f.validate()?;
    let g = GroupingParams::new(f.n, b, t)?;
    let mut constraints = Vec::with_capacity(f.clauses.len());
    for (ci, clause) in f.clauses.iter().enumerate() {
        let mut touched: Vec<usize> = clause.iter().map(|&l| g.group_of(l.unsigned_abs() as usize - 1)).collect();
        touched.sort_unstable();
        touched.dedup();
        if touched.len() > max_groups {
            return Err(Error::Reduction(format!(
                "clause {} touches {} groups; at most {max_groups} allowed",
                ci + 1,
                touched.len()
            )));
        }
        let vars: Vec<usize> = touched.iter().flat_map(|&gr| g.csp_vars(gr)).collect();
        // Enumerate joint assignments of the touched groups' variables.
        let sizes: Vec<usize> = touched.iter().map(|&gr| g.groups[gr].len()).collect();
        let total_bits: usize = sizes.iter().sum();
        let mut tuples = Vec::new();
        for joint in 0u64..1 << total_bits {
            let value = |var: usize| {
                let gr = g.group_of(var);
                let pos = touched.iter().position(|&x| x == gr).unwrap();
                let offset: usize = sizes[..pos].iter().sum();
                joint >> (offset + var - g.groups[gr][0]) & 1 == 1
            };
            if !CnfFormula::clause_satisfied(clause, value) {
                continue;
            }
            let mut tuple = Vec::with_capacity(vars.len());
            let mut shift = 0;
            for &s in &sizes {
                tuple.extend(g.encode(joint >> shift & ((1 << s) - 1)));
                shift += s;
            }
            tuples.push(tuple);
        }
        tuples.sort_unstable();
        constraints.push(Constraint { vars, tuples });
    }
    CspInstance::new(g.groups.len() * g.p, b, constraints)
}
