use super::cnf::CnfFormula;
use super::csp::CspInstance;
use super::encoding::{value_encoding, Scheme, TranslationTable};
use super::generated::{sha256_hex, GeneratedInstance, Provenance, Witness};
use super::sat::sat_to_csp;
use crate::colorset::ColorSet;
use crate::error::{Error, Result};
use crate::gadgets::{delist_graph, implication, or_gadget, InstanceBuilder};
use crate::graph::ModularReduction;
use crate::mtw::TreeDecomposition;

/// Builds the instance for a CSP over `B = C(k, floor(k/2))` values with a
/// path decomposition of its twin quotient.
pub fn csp_to_coloring_mpw(csp: &CspInstance, k: u32) -> Result<GeneratedInstance> {
    let table = value_encoding(k, Scheme::HalfSubsets)?;
    if csp.b as usize != table.len() {
        return Err(Error::Reduction(format!(
            "B = {} but k = {k} needs B = C(k, k/2) = {}",
            csp.b,
            table.len()
        )));
    }
    build(csp, &table, "csp2mpw")
}

/// Same construction, only requiring the first `B` sets of the table.
fn build(csp: &CspInstance, table: &TranslationTable, kind: &str) -> Result<GeneratedInstance> {
    csp.validate()?;
    if csp.b as usize > table.len() {
        return Err(Error::Reduction(format!("B = {} exceeds {} encodable values", csp.b, table.len())));
    }
    let k = table.k;
    let half = (k / 2) as usize;
    let mut ib = InstanceBuilder::new(k);
    let full = ColorSet::full(k);
    let cliques: Vec<Vec<usize>> = (0..csp.n)
        .map(|_| {
            let vs: Vec<usize> = (0..half).map(|_| ib.add_vertex(full)).collect();
            for (a, &u) in vs.iter().enumerate() {
                for &v in &vs[a + 1..] {
                    ib.add_edge(u, v);
                }
            }
            vs
        })
        .collect();
    // One clique member per variable sits in every bag.
    let reps: Vec<usize> = cliques.iter().filter_map(|c| c.first().copied()).collect();
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let bag = |bags: &mut Vec<Vec<usize>>, extra: &[usize]| {
        let mut b = reps.clone();
        b.extend_from_slice(extra);
        b.sort_unstable();
        bags.push(b);
    };
    for c in &csp.constraints {
        if c.tuples.is_empty() {
            let x = ib.add_vertex(ColorSet::singleton(2));
            let y = ib.add_vertex(ColorSet::singleton(2));
            ib.add_edge(x, y);
            bag(&mut bags, &[x, y]);
            continue;
        }
        let s: Vec<usize> = c.tuples.iter().map(|_| ib.add_vertex(full)).collect();
        let or = or_gadget(&mut ib, &s)?;
        let path = ib.placements()[or].internal.clone();
        for (t, tuple) in c.tuples.iter().enumerate() {
            bag(&mut bags, &[path[t], s[t]]);
            for (&i, &val) in c.vars.iter().zip(tuple) {
                let tv = table.encode(val);
                for color in tv.complement(k).iter() {
                    let x = ib.add_vertex(full);
                    for &v in &cliques[i] {
                        ib.add_edge(x, v);
                    }
                    let imp = implication(&mut ib, s[t], x, 1, color)?;
                    let internal = ib.placements()[imp].internal.clone();
                    for w in internal.chunks(3) {
                        bag(&mut bags, &[s[t], x, w[0], w[1]]);
                        bag(&mut bags, &[s[t], x, w[1], w[2]]);
                    }
                }
            }
            bag(&mut bags, &[s[t], path[t + 1]]);
        }
    }
    if bags.is_empty() {
        bag(&mut bags, &[]);
    }
    let instance = ib.finish()?;
    let nv = instance.graph.vertex_count();
    let edges = (1..bags.len()).map(|i| (i - 1, i)).collect();
    let td = TreeDecomposition { n: nv, bags, edges };
    let red = ModularReduction::of_instance(&instance);
    let qn = red.quotient.graph.vertex_count();
    let qtd = td.mapped(&red.original_to_quotient, qn);
    qtd.validate(&red.quotient.graph)?;

    let mut prov = Provenance::default();
    prov.set("kind", kind);
    prov.set("source_sha256", sha256_hex(&csp.to_text()));
    prov.set("n", csp.n);
    prov.set("m", csp.constraints.len());
    prov.set("B", csp.b);
    prov.set("q", csp.q());
    prov.set("k", k);
    prov.set("vertices", nv);
    prov.set("edges", instance.graph.edge_count());
    prov.set("quotient_vertices", qn);
    prov.set("witness_width", qtd.width());
    let gen = GeneratedInstance {
        plain: delist_graph(&instance),
        instance,
        witness: Witness::Td(qtd),
        provenance: prov,
    };
    Ok(gen)
}

/// Smallest power of two that is at least `max(n, 4)`.
pub fn eth_padded_vars(n: usize) -> usize {
    n.max(4).next_power_of_two()
}

/// 3-CNF to coloring: groups of `log N` variables become CSP variables over
/// `N` values, encoded by `log N`-subsets of `2 log N` colors.
pub fn eth_pipeline(f: &CnfFormula) -> Result<GeneratedInstance> {
    f.validate()?;
    if f.max_arity() > 3 {
        return Err(Error::Reduction(format!("clause of length {} in a 3-CNF", f.max_arity())));
    }
    let big_n = eth_padded_vars(f.n);
    let t = big_n.trailing_zeros() as usize;
    let k = 2 * t as u32;
    let padded = CnfFormula::new(big_n, f.clauses.clone())?;
    let csp = sat_to_csp(&padded, big_n as u32, t)?;
    let table = value_encoding(k, Scheme::HalfSubsets)?;
    let mut gen = build(&csp, &table, "eth")?;
    let p = &mut gen.provenance;
    p.set("source_sha256", sha256_hex(&f.to_dimacs()));
    p.set("sat_vars", f.n);
    p.set("padded_vars", big_n);
    p.set("clauses", f.clauses.len());
    p.set("t", t);
    p.set("csp_vars", csp.n);
    Ok(gen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::Constraint;

    #[test]
    fn clique_and_complement_sizes() {
        let c = CspInstance::new(
            2,
            6,
            vec![Constraint {
                vars: vec![0, 1],
                tuples: vec![vec![1, 6]],
            }],
        )
        .unwrap();
        let g = csp_to_coloring_mpw(&c, 4).unwrap();
        let inst = &g.instance;
        // Two cliques of size 2, then s, the OR path, 2 + 2 targets with 3 weak edges each.
        assert!(inst.graph.has_edge(0, 1) && inst.graph.has_edge(2, 3));
        assert_eq!(inst.graph.vertex_count(), 4 + 1 + 2 + 4 * (1 + 9));
        let targets: Vec<usize> = (0..inst.graph.vertex_count())
            .filter(|&v| inst.graph.has_edge(v, 0) && v != 1)
            .collect();
        assert_eq!(targets.len(), 2);
        assert!(matches!(g.witness, Witness::Td(_)));
    }

    #[test]
    fn eth_parameters() {
        let f = CnfFormula::new(4, vec![vec![1, 2, 3]]).unwrap();
        let g = eth_pipeline(&f).unwrap();
        let p = &g.provenance;
        assert_eq!((p.get("B"), p.get("t"), p.get("k")), (Some("4"), Some("2"), Some("4")));
        assert_eq!(p.get("csp_vars"), Some("2"));
        assert_eq!(eth_padded_vars(1), 4);
        assert_eq!(eth_padded_vars(5), 8);
        let long = CnfFormula::new(4, vec![vec![1, 2, 3, 4]]).unwrap();
        assert!(eth_pipeline(&long).is_err());
    }
}
