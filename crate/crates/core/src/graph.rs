//! Loopless multigraphs with dense, input-ordered ids.

use crate::error::MeiError;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    ends: Vec<[VertexId; 2]>,
    inc: Vec<Vec<EdgeId>>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { n, ends: Vec::new(), inc: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, MeiError> {
        let mut g = Multigraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.inc.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, MeiError> {
        if u >= self.n || v >= self.n {
            return Err(MeiError::BadVertex(u.max(v)));
        }
        if u == v {
            return Err(MeiError::SelfLoop(u));
        }
        let e = self.ends.len();
        self.ends.push([u, v]);
        self.inc[u].push(e);
        self.inc[v].push(e);
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.ends.len()
    }

    pub fn ends(&self, e: EdgeId) -> [VertexId; 2] {
        self.ends[e]
    }

    pub fn edges(&self) -> &[[VertexId; 2]] {
        &self.ends
    }

    /// Incident edges of `v`, ascending by id.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.inc[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.inc[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.inc.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    pub fn other(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &e in &self.inc[v] {
                let w = self.other(e, v);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = if self.inc[u].len() <= self.inc[v].len() { (u, v) } else { (v, u) };
        self.inc[a].iter().any(|&e| self.other(e, a) == b)
    }
}

/// The pairs to be inserted. Pair `i` is the edge `f_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InsertionSet {
    pub pairs: Vec<(VertexId, VertexId)>,
}

impl InsertionSet {
    pub fn new(pairs: Vec<(VertexId, VertexId)>) -> Self {
        InsertionSet { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn validate(&self, g: &Multigraph) -> Result<(), MeiError> {
        for &(u, v) in &self.pairs {
            if u >= g.n() || v >= g.n() {
                return Err(MeiError::BadVertex(u.max(v)));
            }
            if u == v {
                return Err(MeiError::SelfLoop(u));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_follow_input_order() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 1)]).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.incident(1), &[0, 1, 2]);
        assert_eq!(g.ends(2), [0, 1]);
        assert_eq!(g.max_degree(), 3);
    }

    #[test]
    fn loops_rejected() {
        assert!(matches!(
            Multigraph::from_edges(2, &[(1, 1)]),
            Err(MeiError::SelfLoop(1))
        ));
    }

    #[test]
    fn connectivity() {
        let g = Multigraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        let g = Multigraph::from_edges(1, &[]).unwrap();
        assert!(g.is_connected());
    }
}
