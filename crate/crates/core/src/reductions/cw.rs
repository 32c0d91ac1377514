use super::csp::CspInstance;
use super::encoding::{value_encoding, Scheme, TranslationTable};
use super::generated::{sha256_hex, verify_witness, GeneratedInstance, Provenance, Witness};
use crate::colorset::ColorSet;
use crate::error::{Error, Result};
use crate::expr::{CwBuilder, NodeId};
use crate::gadgets::{delist_graph, implication, or_gadget, InstanceBuilder};

/// Number of iterated blocks, `3m(nk + 1)`.
pub fn block_count(n: usize, m: usize, k: u32) -> usize {
    3 * m * (n * k as usize + 1)
}

/// Concrete label ceiling `n + 1 + B^q + q (k^2 + 3(k-1)k) B^q`.
pub fn label_budget(n: usize, b: u32, q: usize, k: u32) -> u128 {
    let bq = (b as u128).pow(q as u32);
    let k = k as u128;
    n as u128 + 1 + bq + q as u128 * (k * k + 3 * (k - 1) * k) * bq
}

/// Labels of the witness expression. Main label of variable `i` is `i + 1`.
struct Labels {
    n: u32,
    q: u32,
}

impl Labels {
    fn main(&self, i: usize) -> u32 {
        i as u32 + 1
    }
    fn junk(&self) -> u32 {
        self.n + 1
    }
    /// Current end of the OR path.
    fn w(&self) -> u32 {
        self.n + 2
    }
    /// The assignment vertex whose gadgets are being attached.
    fn a(&self) -> u32 {
        self.n + 3
    }
    /// Internal weak-edge vertices, in path order.
    fn path(&self, i: u32) -> u32 {
        self.n + 4 + i
    }
    /// Complement-side targets of position `p`, waiting for their main join.
    fn t(&self, p: usize) -> u32 {
        self.n + 7 + p as u32
    }
    /// Value-side targets of position `p`, held back until the block ends.
    fn q(&self, p: usize) -> u32 {
        self.n + 7 + self.q + p as u32
    }
}

/// Builder for an expression alongside the instance, remembering which
/// instance vertex each leaf stands for.
struct Twin {
    b: CwBuilder,
    vertex_of: Vec<Option<usize>>,
}

impl Twin {
    fn intro(&mut self, label: u32, v: usize) -> NodeId {
        let id = self.b.intro(label);
        self.vertex_of.resize(id + 1, None);
        self.vertex_of[id] = Some(v);
        id
    }
}

/// Builds the list-coloring instance for a CSP over `B = 2^k - 2` values
/// together with a clique-width expression for it.
pub fn csp_to_coloring_cw(csp: &CspInstance, k: u32) -> Result<GeneratedInstance> {
    let table = value_encoding(k, Scheme::ProperSubsets)?;
    if csp.b as usize != table.len() {
        return Err(Error::Reduction(format!(
            "B = {} but k = {k} needs B = 2^k - 2 = {}",
            csp.b,
            table.len()
        )));
    }
    csp.validate()?;
    if csp.constraints.is_empty() {
        return Err(Error::Reduction("CSP without constraints yields an empty graph".into()));
    }
    build(csp, &table)
}

fn build(csp: &CspInstance, table: &TranslationTable) -> Result<GeneratedInstance> {
    let k = table.k;
    let (n, m, q) = (csp.n, csp.constraints.len(), csp.q());
    let big_l = block_count(n, m, k);
    let lab = Labels { n: n as u32, q: q as u32 };
    let mut ib = InstanceBuilder::new(k);
    let mut tw = Twin {
        b: CwBuilder::new(),
        vertex_of: Vec::new(),
    };
    // Value-side vertices of earlier blocks, per variable.
    let mut earlier: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut spine: Option<NodeId> = None;
    for j in 0..big_l {
        let c = &csp.constraints[j % m];
        let block = if c.tuples.is_empty() {
            // No satisfying tuple: an edge both of whose ends must take color 2.
            let x = ib.add_vertex(ColorSet::singleton(2));
            let y = ib.add_vertex(ColorSet::singleton(2));
            ib.add_edge(x, y);
            let u = tw.intro(lab.w(), x);
            let v = tw.intro(lab.a(), y);
            let mut cur = tw.b.union(u, v);
            cur = tw.b.join(lab.w(), lab.a(), cur);
            cur = tw.b.rename(lab.w(), lab.junk(), cur);
            tw.b.rename(lab.a(), lab.junk(), cur)
        } else {
            let s: Vec<usize> = c.tuples.iter().map(|_| ib.add_vertex(ColorSet::full(k))).collect();
            let or = or_gadget(&mut ib, &s)?;
            let path = ib.placements()[or].internal.clone();
            let mut new_values: Vec<Vec<usize>> = vec![Vec::new(); c.vars.len()];
            let mut cur = tw.intro(lab.w(), path[0]);
            for (t, tuple) in c.tuples.iter().enumerate() {
                let mut g = tw.intro(lab.a(), s[t]);
                for (p, (&i, &val)) in c.vars.iter().zip(tuple).enumerate() {
                    let tv = table.encode(val);
                    for color in 1..=k {
                        let x = ib.add_vertex(ColorSet::full(k));
                        let imp = implication(&mut ib, s[t], x, 1, color)?;
                        let target = if tv.contains(color) {
                            new_values[p].push(x);
                            lab.q(p)
                        } else {
                            for &v in &earlier[i] {
                                ib.add_edge(x, v);
                            }
                            lab.t(p)
                        };
                        let internal = ib.placements()[imp].internal.clone();
                        let mut f = tw.intro(target, x);
                        for w in internal.chunks(3) {
                            let v1 = tw.intro(lab.path(0), w[0]);
                            let v2 = tw.intro(lab.path(1), w[1]);
                            let mut e = tw.b.union(v1, v2);
                            e = tw.b.join(lab.path(0), lab.path(1), e);
                            let v3 = tw.intro(lab.path(2), w[2]);
                            e = tw.b.union(e, v3);
                            e = tw.b.join(lab.path(1), lab.path(2), e);
                            e = tw.b.rename(lab.path(1), lab.junk(), e);
                            f = tw.b.union(f, e);
                            f = tw.b.join(lab.path(2), target, f);
                            f = tw.b.rename(lab.path(2), lab.junk(), f);
                        }
                        g = tw.b.union(g, f);
                        g = tw.b.join(lab.a(), lab.path(0), g);
                        g = tw.b.rename(lab.path(0), lab.junk(), g);
                    }
                }
                cur = tw.b.union(cur, g);
                cur = tw.b.join(lab.w(), lab.a(), cur);
                cur = tw.b.rename(lab.w(), lab.junk(), cur);
                let w = tw.intro(lab.w(), path[t + 1]);
                cur = tw.b.union(cur, w);
                cur = tw.b.join(lab.a(), lab.w(), cur);
                cur = tw.b.rename(lab.a(), lab.junk(), cur);
            }
            cur = tw.b.rename(lab.w(), lab.junk(), cur);
            for (p, vs) in new_values.into_iter().enumerate() {
                earlier[c.vars[p]].extend(vs);
            }
            cur
        };
        let mut cur = match spine {
            None => block,
            Some(sp) => tw.b.union(sp, block),
        };
        if !c.tuples.is_empty() {
            for (p, &i) in c.vars.iter().enumerate() {
                cur = tw.b.join(lab.t(p), lab.main(i), cur);
                cur = tw.b.rename(lab.t(p), lab.junk(), cur);
                cur = tw.b.rename(lab.q(p), lab.main(i), cur);
            }
        }
        spine = Some(cur);
    }
    let (expr, leaves) = tw.b.finish_with_leaves(spine.expect("at least one block"))?;
    let inst = ib.finish()?;
    let nv = inst.graph.vertex_count();
    if leaves.len() != nv {
        return Err(Error::Reduction(format!("expression has {} leaves for {nv} vertices", leaves.len())));
    }
    let mut perm = vec![usize::MAX; nv];
    for (pos, &leaf) in leaves.iter().enumerate() {
        let v = tw.vertex_of[leaf].expect("every leaf stands for a vertex");
        perm[v] = pos;
    }
    let instance = inst.permuted(&perm);

    let labels = expr.width();
    let main_labels = expr.labels().iter().filter(|&&l| l <= n as u32).count();
    let mut prov = Provenance::default();
    prov.set("kind", "csp2cw");
    prov.set("source_sha256", sha256_hex(&csp.to_text()));
    prov.set("n", n);
    prov.set("m", m);
    prov.set("B", csp.b);
    prov.set("q", q);
    prov.set("k", k);
    prov.set("L", big_l);
    prov.set("vertices", nv);
    prov.set("edges", instance.graph.edge_count());
    prov.set("labels", labels);
    prov.set("main_labels", main_labels);
    prov.set("junk_labels", 1);
    prov.set("constraint_work_labels", 2);
    prov.set("incidence_work_labels", labels - main_labels - 3);
    prov.set("label_budget", label_budget(n, csp.b, q, k));
    let gen = GeneratedInstance {
        plain: delist_graph(&instance),
        instance,
        witness: Witness::Expr(expr),
        provenance: prov,
    };
    if labels as u128 > label_budget(n, csp.b, q, k) {
        return Err(Error::Reduction(format!("expression uses {labels} labels, above the budget")));
    }
    verify_witness(&gen)?;
    Ok(gen)
}
