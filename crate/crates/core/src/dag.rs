//! Directed acyclic graphs, reachability, closure and reduction.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A DAG over string-labelled vertices.
///
/// Vertex order is insertion order and is preserved through serialization;
/// generators rely on it for determinism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DagRepr", into = "DagRepr")]
pub struct Dag {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    /// adjacency by vertex index, insertion-ordered
    succ: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct DagRepr {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl TryFrom<DagRepr> for Dag {
    type Error = Error;
    fn try_from(r: DagRepr) -> Result<Self> {
        Dag::new(r.vertices, r.edges)
    }
}

impl From<Dag> for DagRepr {
    fn from(g: Dag) -> DagRepr {
        DagRepr {
            edges: g.edges(),
            vertices: g.vertices,
        }
    }
}

impl Dag {
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String)>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::Graph(format!("duplicate vertex {v:?}")));
            }
        }
        let mut succ = vec![Vec::new(); vertices.len()];
        for (u, v) in &edges {
            let (ui, vi) = match (index.get(u), index.get(v)) {
                (Some(&a), Some(&b)) => (a, b),
                _ => return Err(Error::Graph(format!("edge ({u:?}, {v:?}) off the vertex set"))),
            };
            if ui == vi {
                return Err(Error::Graph(format!("self-loop at {u:?}")));
            }
            if !succ[ui].contains(&vi) {
                succ[ui].push(vi);
            }
        }
        let g = Self {
            vertices,
            index,
            succ,
        };
        g.topo_order()?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn index_of(&self, v: &str) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (u, vs) in self.succ.iter().enumerate() {
            for &v in vs {
                out.push((self.vertices[u].clone(), self.vertices[v].clone()));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// Topological order, or the cycle error.
    pub fn topo_order(&self) -> Result<Vec<usize>> {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for vs in &self.succ {
            for &v in vs {
                indeg[v] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            order.push(u);
            for &v in &self.succ[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push(v);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Graph("directed cycle".into()));
        }
        Ok(order)
    }

    /// Reachability matrix: reach[u][v] iff a nonempty path u → v exists.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.n();
        let order = self.topo_order().expect("constructor rejects cycles");
        let mut reach = vec![vec![false; n]; n];
        for &u in order.iter().rev() {
            for &v in &self.succ[u] {
                reach[u][v] = true;
                // rows of later vertices are already complete
                let (row_u, row_v) = if u < v {
                    let (a, b) = reach.split_at_mut(v);
                    (&mut a[u], &b[0])
                } else {
                    let (a, b) = reach.split_at_mut(u);
                    (&mut b[0], &a[v])
                };
                for w in 0..n {
                    row_u[w] = row_u[w] || row_v[w];
                }
            }
        }
        reach
    }

    /// Transitive closure as a DAG: edge (u, v) iff v reachable from u.
    pub fn transitive_closure(&self) -> Dag {
        let reach = self.reachability();
        let mut edges = Vec::new();
        for u in 0..self.n() {
            for v in 0..self.n() {
                if reach[u][v] {
                    edges.push((self.vertices[u].clone(), self.vertices[v].clone()));
                }
            }
        }
        Dag::new(self.vertices.clone(), edges).expect("closure of a DAG is a DAG")
    }

    /// The unique minimal edge set with the same closure: keep (u, v) iff no
    /// intermediate w has u ⇝ w ⇝ v.
    pub fn transitive_reduction(&self) -> Dag {
        let reach = self.reachability();
        let n = self.n();
        let mut edges = Vec::new();
        for u in 0..n {
            for &v in &self.succ[u] {
                let covered = (0..n).any(|w| w != u && w != v && reach[u][w] && reach[w][v]);
                if !covered {
                    edges.push((self.vertices[u].clone(), self.vertices[v].clone()));
                }
            }
        }
        Dag::new(self.vertices.clone(), edges).expect("reduction of a DAG is a DAG")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dag(vs: &[&str], es: &[(&str, &str)]) -> Dag {
        Dag::new(
            vs.iter().map(|s| s.to_string()).collect(),
            es.iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rejects_cycles() {
        let r = Dag::new(
            vec!["a".into(), "b".into()],
            vec![("a".into(), "b".into()), ("b".into(), "a".into())],
        );
        assert!(r.is_err());
    }

    #[test]
    fn diamond_reduction_drops_shortcut() {
        let g = dag(
            &["s", "a", "b", "t"],
            &[("s", "a"), ("s", "b"), ("a", "t"), ("b", "t"), ("s", "t")],
        );
        let red = g.transitive_reduction();
        assert_eq!(red.edge_count(), 4);
        assert!(!red.edges().contains(&("s".to_string(), "t".to_string())));
    }

    #[test]
    fn chain_closure_adds_shortcut() {
        let g = dag(&["1", "2", "3"], &[("1", "2"), ("2", "3")]);
        let cl = g.transitive_closure();
        assert!(cl.edges().contains(&("1".to_string(), "3".to_string())));
        assert_eq!(cl.edge_count(), 3);
    }

    #[test]
    fn json_roundtrip() {
        let g = dag(&["s", "a", "t"], &[("s", "a"), ("a", "t")]);
        let text = serde_json::to_string(&g).unwrap();
        assert!(text.contains("\"vertices\""));
        let back: Dag = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }
}
