use std::fmt::Write;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::expr::{evaluate, CwExpr};
use crate::graph::{Graph, ListColoringInstance, ModularReduction};
use crate::mtw::TreeDecomposition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Expression whose graph is the instance graph, vertex for vertex.
    Expr(CwExpr),
    /// Decomposition of the twin quotient of the instance.
    Td(TreeDecomposition),
}

/// Ordered `key=value` record of how an instance was generated.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    entries: Vec<(String, String)>,
}

impl Provenance {
    pub fn set(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(e) => e.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            writeln!(s, "{k}={v}").unwrap();
        }
        s
    }
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug)]
pub struct GeneratedInstance {
    pub instance: ListColoringInstance,
    /// The same instance with lists replaced by a k-clique.
    pub plain: Graph,
    pub witness: Witness,
    pub provenance: Provenance,
}

impl GeneratedInstance {
    pub fn k(&self) -> u32 {
        self.instance.k
    }
}

/// Checks that the witness really describes the instance graph.
pub fn verify_witness(g: &GeneratedInstance) -> Result<()> {
    match &g.witness {
        Witness::Expr(e) => {
            let got = evaluate(e).graph;
            if got != g.instance.graph {
                return Err(Error::Reduction(format!(
                    "witness expression builds {} vertices / {} edges, instance has {} / {}",
                    got.vertex_count(),
                    got.edge_count(),
                    g.instance.graph.vertex_count(),
                    g.instance.graph.edge_count()
                )));
            }
            Ok(())
        }
        Witness::Td(td) => {
            let q = ModularReduction::of_instance(&g.instance).quotient;
            if td.n != q.graph.vertex_count() {
                return Err(Error::Decomposition(format!(
                    "decomposition has {} vertices, quotient has {}",
                    td.n,
                    q.graph.vertex_count()
                )));
            }
            td.validate(&q.graph)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn provenance_text() {
        let mut p = Provenance::default();
        p.set("k", 3);
        p.set("kind", "csp2cw");
        p.set("k", 4);
        assert_eq!(p.to_text(), "k=4\nkind=csp2cw\n");
        assert_eq!(p.get("kind"), Some("csp2cw"));
    }

    #[test]
    fn sha256_of_empty() {
        assert_eq!(
            sha256_hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
