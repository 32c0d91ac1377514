//! Brute-force ground truth and seeded random instance generators.

use std::collections::HashSet;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::colorset::ColorSet;
use crate::error::{Error, Result};
use crate::expr::{CwBuilder, CwExpr, NodeId};
use crate::graph::{Graph, ListColoringInstance};
use crate::reductions::{CnfFormula, Constraint, CspInstance};

pub const COLORING_GUARD: f64 = 1e9;
pub const CSP_GUARD: f64 = 1e8;
pub const SAT_MAX_VARS: usize = 26;

fn coloring_guard(inst: &ListColoringInstance) -> Result<()> {
    let space: f64 = inst.lists.iter().map(|l| l.len() as f64).product();
    if space > COLORING_GUARD {
        return Err(Error::OracleGuard(format!(
            "coloring search space {space:.3e} exceeds {COLORING_GUARD:.0e}"
        )));
    }
    Ok(())
}

/// Backtracking over vertices in degeneracy order. Stops at `limit` colorings.
fn backtrack(inst: &ListColoringInstance, limit: u64) -> u64 {
    let g = &inst.graph;
    let order = g.degeneracy_order();
    let n = order.len();
    let mut color = vec![0u32; g.vertex_count()];
    let mut choices: Vec<Vec<u32>> = order.iter().map(|&v| inst.lists[v].iter().collect()).collect();
    for c in &mut choices {
        c.reverse();
    }
    // Explicit stack of the next choice index per depth.
    let mut next = vec![0usize; n];
    let mut depth = 0;
    let mut count = 0u64;
    if n == 0 {
        return 1.min(limit);
    }
    loop {
        let v = order[depth];
        let mut placed = false;
        while next[depth] < choices[depth].len() {
            let c = choices[depth][next[depth]];
            next[depth] += 1;
            if g.neighbors(v).iter().all(|&w| color[w] != c) {
                color[v] = c;
                placed = true;
                break;
            }
        }
        if placed {
            if depth + 1 == n {
                count += 1;
                color[v] = 0;
                if count >= limit {
                    return count;
                }
            } else {
                depth += 1;
                next[depth] = 0;
            }
        } else {
            color[v] = 0;
            if depth == 0 {
                return count;
            }
            depth -= 1;
            color[order[depth]] = 0;
        }
    }
}

/// Exact number of proper list colorings.
pub fn brute_count_list_colorings(inst: &ListColoringInstance) -> Result<BigUint> {
    coloring_guard(inst)?;
    Ok(BigUint::from(backtrack(inst, u64::MAX)))
}

pub fn brute_list_colorable(inst: &ListColoringInstance) -> Result<bool> {
    coloring_guard(inst)?;
    Ok(backtrack(inst, 1) > 0)
}

/// Number of proper `k`-colorings of `g`.
pub fn brute_count_colorings(g: &Graph, k: u32) -> Result<BigUint> {
    brute_count_list_colorings(&ListColoringInstance::uniform(g.clone(), k))
}

/// k-colorability by backtracking with the first color fixed by symmetry.
pub fn brute_colorable(g: &Graph, k: u32) -> Result<bool> {
    let mut inst = ListColoringInstance::uniform(g.clone(), k);
    if let Some(v) = (0..g.vertex_count()).max_by_key(|&v| g.degree(v)) {
        inst.lists[v] = ColorSet::singleton(1);
    }
    brute_list_colorable(&inst)
}

/// Satisfiability of a CSP by backtracking in variable order.
pub fn brute_csp(csp: &CspInstance) -> Result<bool> {
    let space = (csp.b as f64).powi(csp.n as i32);
    if space > CSP_GUARD {
        return Err(Error::OracleGuard(format!("CSP search space {space:.3e} exceeds {CSP_GUARD:.0e}")));
    }
    let sets: Vec<HashSet<&[u32]>> = csp
        .constraints
        .iter()
        .map(|c| c.tuples.iter().map(Vec::as_slice).collect())
        .collect();
    // Constraints checked once their last variable is assigned.
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); csp.n];
    for (j, c) in csp.constraints.iter().enumerate() {
        match c.vars.iter().max() {
            Some(&m) => due[m].push(j),
            None => unreachable!("validated constraints are nonempty"),
        }
    }
    let n = csp.n;
    if n == 0 {
        return Ok(csp.constraints.is_empty());
    }
    let mut val = vec![0u32; n];
    let mut depth = 0;
    let mut buf = Vec::new();
    loop {
        if val[depth] == csp.b {
            val[depth] = 0;
            if depth == 0 {
                return Ok(false);
            }
            depth -= 1;
            continue;
        }
        val[depth] += 1;
        let ok = due[depth].iter().all(|&j| {
            buf.clear();
            buf.extend(csp.constraints[j].vars.iter().map(|&v| val[v]));
            sets[j].contains(buf.as_slice())
        });
        if ok {
            if depth + 1 == n {
                return Ok(true);
            }
            depth += 1;
        }
    }
}

/// Satisfiability by enumerating all assignments.
pub fn brute_sat(f: &CnfFormula) -> Result<bool> {
    if f.n > SAT_MAX_VARS {
        return Err(Error::OracleGuard(format!("{} variables exceed {SAT_MAX_VARS}", f.n)));
    }
    Ok((0u64..1 << f.n).any(|a| {
        f.clauses
            .iter()
            .all(|c| CnfFormula::clause_satisfied(c, |i| a >> i & 1 == 1))
    }))
}

/// One generated instance.
#[derive(Clone, Debug)]
pub enum Sample {
    Graph(Graph),
    Expr(CwExpr),
    Cnf(CnfFormula),
    Csp(CspInstance),
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Profile {
    /// Expressions with 1..=10 vertices and width 2..=4.
    CweSmall,
    Graph { n: usize, p: f64 },
    /// 3-CNFs with `n` variables and `round(4.26 n)` clauses.
    Cnf3 { n: usize },
    /// CSPs with n, m ≤ 3, arity ≤ 2, B = 6 and 1..=3 tuples per constraint.
    CspSmall,
    /// Graphs built from a random `n`-vertex base graph by blowing vertices up
    /// into true or false twin modules of size 1..=3.
    Twins { n: usize },
}

fn parse_profile(s: &str) -> Result<Profile> {
    let bad = || Error::InvalidInstance(format!("unknown profile `{s}`"));
    let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
    if s == "cwe-small" {
        return Ok(Profile::CweSmall);
    }
    if s == "csp-small" {
        return Ok(Profile::CspSmall);
    }
    if let Some(rest) = s.strip_prefix("graph-n") {
        let (n, p) = rest.split_once("-p").ok_or_else(bad)?;
        let p: f64 = p.parse().map_err(|_| bad())?;
        if !(0.0..=1.0).contains(&p) {
            return Err(bad());
        }
        return Ok(Profile::Graph { n: num(n)?, p });
    }
    if let Some(n) = s.strip_prefix("cnf3-n") {
        return Ok(Profile::Cnf3 { n: num(n)? });
    }
    if let Some(n) = s.strip_prefix("twins-n") {
        return Ok(Profile::Twins { n: num(n)? });
    }
    Err(bad())
}

/// Deterministic, infinite stream of samples for a named profile:
/// `cwe-small`, `graph-n<N>-p<P>`, `cnf3-n<N>`, `csp-small`, `twins-n<N>`.
pub fn random_suite(seed: u64, profile: &str) -> Result<impl Iterator<Item = Sample>> {
    let profile = parse_profile(profile)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(std::iter::from_fn(move || {
        Some(match profile {
            Profile::CweSmall => {
                let n = rng.gen_range(1..=10);
                let w = rng.gen_range(2..=4);
                Sample::Expr(random_expr(&mut rng, n, w))
            }
            Profile::Graph { n, p } => Sample::Graph(random_graph(&mut rng, n, p)),
            Profile::Cnf3 { n } => Sample::Cnf(random_3cnf(&mut rng, n, (4.26 * n as f64).round() as usize)),
            Profile::CspSmall => Sample::Csp(random_csp(&mut rng, 3, 3, 2, 6, 3)),
            Profile::Twins { n } => Sample::Graph(random_twin_graph(&mut rng, n)),
        })
    }))
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random expression over labels `1..=width` with `n` leaves: a random
/// binary union tree, each node followed by up to three random joins or
/// renames.
pub fn random_expr(rng: &mut impl Rng, n: usize, width: u32) -> CwExpr {
    assert!(n >= 1 && width >= 2);
    let mut b = CwBuilder::new();
    // Pending subtree sizes to build, post-order via explicit stack.
    enum Task {
        Build(usize),
        Union,
    }
    let mut tasks = vec![Task::Build(n)];
    let mut done: Vec<NodeId> = Vec::new();
    while let Some(t) = tasks.pop() {
        let node = match t {
            Task::Build(1) => b.intro(rng.gen_range(1..=width)),
            Task::Build(m) => {
                let left = rng.gen_range(1..m);
                tasks.push(Task::Union);
                tasks.push(Task::Build(m - left));
                tasks.push(Task::Build(left));
                continue;
            }
            Task::Union => {
                let r = done.pop().unwrap();
                let l = done.pop().unwrap();
                b.union(l, r)
            }
        };
        let mut node = node;
        for _ in 0..rng.gen_range(0..=3) {
            let i = rng.gen_range(1..=width);
            let mut j = rng.gen_range(1..width);
            if j >= i {
                j += 1;
            }
            node = if rng.gen_bool(0.6) { b.join(i, j, node) } else { b.rename(i, j, node) };
        }
        done.push(node);
    }
    b.finish(done.pop().unwrap()).unwrap()
}

/// Random 3-CNF; clauses use three distinct variables when `n ≥ 3`.
pub fn random_3cnf(rng: &mut impl Rng, n: usize, m: usize) -> CnfFormula {
    assert!(n >= 1);
    let vars: Vec<i32> = (1..=n as i32).collect();
    let clauses = (0..m)
        .map(|_| {
            vars.choose_multiple(rng, 3.min(n))
                .map(|&v| if rng.gen_bool(0.5) { v } else { -v })
                .collect()
        })
        .collect();
    CnfFormula::new(n, clauses).unwrap()
}

/// Random CSP with `1..=max_n` variables, `1..=max_m` constraints of arity
/// `1..=min(max_q, n)` and `1..=max_tuples` distinct tuples each.
pub fn random_csp(rng: &mut impl Rng, max_n: usize, max_m: usize, max_q: usize, b: u32, max_tuples: usize) -> CspInstance {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(1..=max_m);
    let all: Vec<usize> = (0..n).collect();
    let constraints = (0..m)
        .map(|_| {
            let q = rng.gen_range(1..=max_q.min(n));
            let vars: Vec<usize> = all.choose_multiple(rng, q).copied().collect();
            let want = rng.gen_range(1..=max_tuples).min((b as usize).pow(q as u32));
            let mut tuples: Vec<Vec<u32>> = Vec::new();
            while tuples.len() < want {
                let t: Vec<u32> = (0..q).map(|_| rng.gen_range(1..=b)).collect();
                if !tuples.contains(&t) {
                    tuples.push(t);
                }
            }
            Constraint { vars, tuples }
        })
        .collect();
    CspInstance::new(n, b, constraints).unwrap()
}

pub fn random_twin_graph(rng: &mut impl Rng, n: usize) -> Graph {
    let base = random_graph(rng, n, 0.5);
    let mut module: Vec<Vec<usize>> = Vec::new();
    let mut g = Graph::new(0);
    for _ in 0..n {
        let size = rng.gen_range(1..=3);
        let clique = rng.gen_bool(0.5);
        let vs: Vec<usize> = (0..size).map(|_| g.add_vertex()).collect();
        if clique {
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    g.add_edge(u, v);
                }
            }
        }
        module.push(vs);
    }
    for (a, b) in base.edges() {
        for &u in &module[a] {
            for &v in &module[b] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(c: &[u32]) -> ColorSet {
        ColorSet::from_colors(c.iter().copied())
    }

    #[test]
    fn count_examples() {
        assert_eq!(brute_count_colorings(&Graph::complete(3), 3).unwrap(), BigUint::from(6u8));
        let inst = ListColoringInstance::new(Graph::complete(3), 3, vec![cs(&[1, 2]); 3]).unwrap();
        assert_eq!(brute_count_list_colorings(&inst).unwrap(), BigUint::from(0u8));
        let inst = ListColoringInstance::new(Graph::new(1), 3, vec![cs(&[2, 3])]).unwrap();
        assert_eq!(brute_count_list_colorings(&inst).unwrap(), BigUint::from(2u8));
        assert_eq!(brute_count_colorings(&Graph::new(0), 3).unwrap(), BigUint::from(1u8));
    }

    #[test]
    fn cycle_closed_form() {
        for n in 3..=8usize {
            for k in 2..=5u32 {
                let want = (k as i64 - 1).pow(n as u32) + if n % 2 == 0 { 1 } else { -1 } * (k as i64 - 1);
                let got = brute_count_colorings(&Graph::cycle(n), k).unwrap();
                assert_eq!(got, BigUint::from(want as u64), "C{n}, k={k}");
                assert_eq!(brute_colorable(&Graph::cycle(n), k).unwrap(), want > 0);
            }
        }
    }

    #[test]
    fn guard_fails_loudly() {
        assert!(matches!(
            brute_count_colorings(&Graph::new(40), 3),
            Err(Error::OracleGuard(_))
        ));
    }

    #[test]
    fn csp_examples() {
        assert!(brute_csp(&CspInstance::new(2, 3, vec![]).unwrap()).unwrap());
        let unary = |a| Constraint {
            vars: vec![0],
            tuples: vec![vec![a]],
        };
        assert!(!brute_csp(&CspInstance::new(1, 2, vec![unary(1), unary(2)]).unwrap()).unwrap());
        let full = Constraint {
            vars: vec![0, 1],
            tuples: (1..=2).flat_map(|a| (1..=2).map(move |b| vec![a, b])).collect(),
        };
        assert!(brute_csp(&CspInstance::new(2, 2, vec![full]).unwrap()).unwrap());
    }

    #[test]
    fn sat_examples() {
        assert!(!brute_sat(&CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap()).unwrap());
        assert!(brute_sat(&CnfFormula::new(2, vec![vec![1, 2]]).unwrap()).unwrap());
        assert!(brute_sat(&CnfFormula::new(0, vec![]).unwrap()).unwrap());
        assert!(brute_sat(&CnfFormula::new(27, vec![]).unwrap()).is_err());
    }

    #[test]
    fn suites_are_deterministic() {
        let a: Vec<String> = random_suite(1, "cwe-small")
            .unwrap()
            .take(5)
            .map(|s| match s {
                Sample::Expr(e) => e.to_string(),
                _ => unreachable!(),
            })
            .collect();
        let b: Vec<String> = random_suite(1, "cwe-small")
            .unwrap()
            .take(5)
            .map(|s| match s {
                Sample::Expr(e) => e.to_string(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(a, b);
        for s in random_suite(2, "graph-n8-p0.5").unwrap().take(3) {
            assert!(matches!(s, Sample::Graph(g) if g.vertex_count() == 8));
        }
        for s in random_suite(3, "cnf3-n8").unwrap().take(3) {
            assert!(matches!(s, Sample::Cnf(f) if f.n == 8 && f.max_arity() == 3));
        }
        assert!(random_suite(0, "nope").is_err());
    }
}
