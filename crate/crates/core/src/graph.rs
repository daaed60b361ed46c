//! Finite directed graphs, signed letters and edge words.

use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("word is empty")]
    EmptyWord,
    #[error("letters {at} and {} do not chain", at + 1)]
    BrokenChain { at: usize },
}

/// Index of a vertex within its graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

/// Index of an edge within its graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

/// Traversal direction of a letter: `Minus` runs against the edge direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn compose(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Edge {
    name: String,
    init: VertexId,
    term: VertexId,
}

/// Finite directed graph with interned vertex and edge names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
}

impl Graph {
    pub fn new(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Graph, GraphError> {
        let mut g = Graph {
            vertex_names: Vec::new(),
            edges: Vec::new(),
            vertex_index: HashMap::new(),
            edge_index: HashMap::new(),
        };
        for v in vertices {
            g.add_vertex(v)?;
        }
        for (name, init, term) in edges {
            g.add_edge(name, init, term)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, GraphError> {
        if self.vertex_index.contains_key(name) {
            return Err(GraphError::DuplicateVertex(name.to_string()));
        }
        let id = VertexId(self.vertex_names.len());
        self.vertex_names.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_edge(&mut self, name: &str, init: &str, term: &str) -> Result<EdgeId, GraphError> {
        if self.edge_index.contains_key(name) {
            return Err(GraphError::DuplicateEdge(name.to_string()));
        }
        let init = self
            .vertex_id(init)
            .ok_or_else(|| GraphError::UnknownVertex {
                edge: name.to_string(),
                vertex: init.to_string(),
            })?;
        let term = self
            .vertex_id(term)
            .ok_or_else(|| GraphError::UnknownVertex {
                edge: name.to_string(),
                vertex: term.to_string(),
            })?;
        let id = EdgeId(self.edges.len());
        self.edges.push(Edge {
            name: name.to_string(),
            init,
            term,
        });
        self.edge_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_count()).map(EdgeId)
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn init(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].init
    }

    pub fn term(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].term
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.init(e) == self.term(e)
    }

    pub fn out_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.edge_ids().filter(|&e| self.init(e) == v).collect()
    }

    pub fn in_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.edge_ids().filter(|&e| self.term(e) == v).collect()
    }

    /// Every vertex has at least one incoming and one outgoing edge.
    /// A loop counts for both.
    pub fn is_nondegenerate_at(&self, v: VertexId) -> bool {
        self.edges.iter().any(|e| e.init == v) && self.edges.iter().any(|e| e.term == v)
    }

    pub fn degenerate_vertices(&self) -> Vec<VertexId> {
        self.vertices()
            .filter(|&v| !self.is_nondegenerate_at(v))
            .collect()
    }

    /// Weak connectivity (edges taken as undirected).
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components (undirected), as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut stack = vec![VertexId(start)];
            while let Some(v) = stack.pop() {
                for e in &self.edges {
                    for (a, b) in [(e.init, e.term), (e.term, e.init)] {
                        if a == v && comp[b.0] == usize::MAX {
                            comp[b.0] = count;
                            stack.push(b);
                        }
                    }
                }
            }
            count += 1;
        }
        let mut out = vec![Vec::new(); count];
        for (i, &c) in comp.iter().enumerate() {
            out[c].push(VertexId(i));
        }
        out
    }

    /// Strong connectivity of the directed graph.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertex_count();
        if n <= 1 {
            return true;
        }
        let reach = |forward: bool| -> usize {
            let mut seen = vec![false; n];
            seen[0] = true;
            let mut stack = vec![VertexId(0)];
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for e in &self.edges {
                    let (from, to) = if forward {
                        (e.init, e.term)
                    } else {
                        (e.term, e.init)
                    };
                    if from == v && !seen[to.0] {
                        seen[to.0] = true;
                        count += 1;
                        stack.push(to);
                    }
                }
            }
            count
        };
        reach(true) == n && reach(false) == n
    }
}

/// A signed occurrence of an edge inside a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub edge: EdgeId,
    pub sign: Sign,
}

impl Letter {
    pub fn new(edge: EdgeId, sign: Sign) -> Letter {
        Letter { edge, sign }
    }

    /// Vertex where the traversal of this letter starts.
    pub fn start(&self, g: &Graph) -> VertexId {
        match self.sign {
            Sign::Plus => g.init(self.edge),
            Sign::Minus => g.term(self.edge),
        }
    }

    /// Vertex where the traversal of this letter ends.
    pub fn end(&self, g: &Graph) -> VertexId {
        match self.sign {
            Sign::Plus => g.term(self.edge),
            Sign::Minus => g.init(self.edge),
        }
    }
}

/// Nonempty chained sequence of letters in a fixed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// Checks nonemptiness and the chaining invariant against `g`.
    pub fn new(letters: Vec<Letter>, g: &Graph) -> Result<Word, GraphError> {
        if letters.is_empty() {
            return Err(GraphError::EmptyWord);
        }
        for i in 0..letters.len() - 1 {
            if letters[i].end(g) != letters[i + 1].start(g) {
                return Err(GraphError::BrokenChain { at: i });
            }
        }
        Ok(Word { letters })
    }

    /// No chaining check; used by search code that validates en masse.
    pub fn from_letters_unchecked(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn chains_in(&self, g: &Graph) -> bool {
        !self.letters.is_empty()
            && (0..self.letters.len() - 1)
                .all(|i| self.letters[i].end(g) == self.letters[i + 1].start(g))
    }

    pub fn start(&self, g: &Graph) -> VertexId {
        self.letters[0].start(g)
    }

    pub fn end(&self, g: &Graph) -> VertexId {
        self.letters[self.letters.len() - 1].end(g)
    }

    pub fn is_all_positive(&self) -> bool {
        self.letters.iter().all(|l| l.sign == Sign::Plus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dyadic_graph() -> Graph {
        Graph::new(&["v1", "v2"], &[("e1", "v1", "v2"), ("e2", "v2", "v1")]).unwrap()
    }

    #[test]
    fn build_and_lookups() {
        let g = dyadic_graph();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
        let e1 = g.edge_id("e1").unwrap();
        assert_eq!(g.vertex_name(g.init(e1)), "v1");
        assert_eq!(g.vertex_name(g.term(e1)), "v2");
    }

    #[test]
    fn duplicate_and_dangling() {
        assert_eq!(
            Graph::new(&["p", "p"], &[]),
            Err(GraphError::DuplicateVertex("p".into()))
        );
        assert_eq!(
            Graph::new(&["p"], &[("a", "p", "p"), ("a", "p", "p")]),
            Err(GraphError::DuplicateEdge("a".into()))
        );
        assert!(matches!(
            Graph::new(&["p"], &[("a", "p", "q")]),
            Err(GraphError::UnknownVertex { .. })
        ));
    }

    #[test]
    fn nondegeneracy() {
        let g = dyadic_graph();
        assert!(g.degenerate_vertices().is_empty());

        let sink = Graph::new(&["u", "v"], &[("a", "u", "v"), ("b", "u", "v")]).unwrap();
        let bad = sink.degenerate_vertices();
        assert_eq!(bad, vec![VertexId(0), VertexId(1)]);

        let looped = Graph::new(&["p"], &[("a", "p", "p")]).unwrap();
        assert!(looped.degenerate_vertices().is_empty());
    }

    #[test]
    fn connectivity() {
        let g = dyadic_graph();
        assert!(g.is_connected());
        assert!(g.is_strongly_connected());

        let two = Graph::new(&["p", "q"], &[("a", "p", "p"), ("b", "q", "q")]).unwrap();
        assert!(!two.is_connected());
        assert!(!two.is_strongly_connected());
        assert_eq!(two.components().len(), 2);

        let oneway = Graph::new(&["u", "v"], &[("a", "u", "v")]).unwrap();
        assert!(oneway.is_connected());
        assert!(!oneway.is_strongly_connected());
    }

    #[test]
    fn word_chaining() {
        let g = dyadic_graph();
        let e1 = g.edge_id("e1").unwrap();
        let e2 = g.edge_id("e2").unwrap();
        let w = Word::new(
            vec![Letter::new(e1, Sign::Plus), Letter::new(e2, Sign::Plus)],
            &g,
        )
        .unwrap();
        assert_eq!(w.start(&g), g.vertex_id("v1").unwrap());
        assert_eq!(w.end(&g), g.vertex_id("v1").unwrap());

        // e1 then e1 does not chain (term v2 != init v1)
        assert_eq!(
            Word::new(
                vec![Letter::new(e1, Sign::Plus), Letter::new(e1, Sign::Plus)],
                &g
            ),
            Err(GraphError::BrokenChain { at: 0 })
        );

        // e1 then e1 reversed chains (v2 -> back to v1)
        let back = Word::new(
            vec![Letter::new(e1, Sign::Plus), Letter::new(e1, Sign::Minus)],
            &g,
        )
        .unwrap();
        assert_eq!(back.end(&g), g.vertex_id("v1").unwrap());

        assert_eq!(Word::new(vec![], &g), Err(GraphError::EmptyWord));
    }
}
