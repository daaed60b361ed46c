//! First cohomology of a graph with its positive cone.
//!
//! Integer functions on edges modulo vertex coboundaries, with:
//! cycle-based membership and positivity tests, a cotree coordinate basis,
//! and the pullback along a wrapping rule together with its matrix.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, Sign, VertexId};
use crate::matrix::IntegerMatrix;
use crate::presentation::{Presentation, WrappingRule};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("value vector has length {got}, graph has {expected} edges")]
    EdgeCountMismatch { expected: usize, got: usize },
    #[error("potential has length {got}, graph has {expected} vertices")]
    VertexCountMismatch { expected: usize, got: usize },
    #[error("graph is not strongly connected; cycle positivity is only defined there")]
    NotStronglyConnected,
}

/// Integer-valued function on the edge set of a fixed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeFunction {
    values: Vec<BigInt>,
}

impl EdgeFunction {
    pub fn new(values: Vec<BigInt>, g: &Graph) -> Result<EdgeFunction, CohomologyError> {
        if values.len() != g.edge_count() {
            return Err(CohomologyError::EdgeCountMismatch {
                expected: g.edge_count(),
                got: values.len(),
            });
        }
        Ok(EdgeFunction { values })
    }

    pub fn from_i64(values: &[i64]) -> EdgeFunction {
        EdgeFunction {
            values: values.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn zero(g: &Graph) -> EdgeFunction {
        EdgeFunction {
            values: vec![BigInt::zero(); g.edge_count()],
        }
    }

    pub fn get(&self, e: EdgeId) -> &BigInt {
        &self.values[e.0]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    pub fn add(&self, other: &EdgeFunction) -> EdgeFunction {
        assert_eq!(self.values.len(), other.values.len());
        EdgeFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> EdgeFunction {
        EdgeFunction {
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

/// Integer-valued function on the vertex set; the coefficients of a vertex
/// coboundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential {
    values: Vec<BigInt>,
}

impl Potential {
    pub fn new(values: Vec<BigInt>, g: &Graph) -> Result<Potential, CohomologyError> {
        if values.len() != g.vertex_count() {
            return Err(CohomologyError::VertexCountMismatch {
                expected: g.vertex_count(),
                got: values.len(),
            });
        }
        Ok(Potential { values })
    }

    pub fn from_i64(values: &[i64]) -> Potential {
        Potential {
            values: values.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn get(&self, v: VertexId) -> &BigInt {
        &self.values[v.0]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Pull the potential back along a vertex map (for the telescoping
    /// identity `pullback(coboundary(rho)) = coboundary(rho o vertex_map)`).
    pub fn compose_vertex_map(&self, rule: &WrappingRule, domain: &Graph) -> Potential {
        Potential {
            values: domain
                .vertices()
                .map(|v| self.values[rule.vertex_image(v).0].clone())
                .collect(),
        }
    }
}

/// The vertex function at `v`: +1 on edges leaving `v`, -1 on edges
/// entering it, 0 on loops at `v` and on edges not touching it.
pub fn vertex_function(g: &Graph, v: VertexId) -> Result<EdgeFunction, CohomologyError> {
    if v.0 >= g.vertex_count() {
        return Err(CohomologyError::UnknownVertex(v.0));
    }
    let values = g
        .edge_ids()
        .map(|e| {
            if g.is_loop(e) {
                BigInt::zero()
            } else if g.init(e) == v {
                BigInt::from(1)
            } else if g.term(e) == v {
                BigInt::from(-1)
            } else {
                BigInt::zero()
            }
        })
        .collect();
    Ok(EdgeFunction { values })
}

/// Coboundary of a potential: `e -> rho(init e) - rho(term e)`.
pub fn coboundary(g: &Graph, rho: &Potential) -> EdgeFunction {
    EdgeFunction {
        values: g
            .edge_ids()
            .map(|e| rho.get(g.init(e)) - rho.get(g.term(e)))
            .collect(),
    }
}

/// If `f` is a vertex coboundary, return a matching potential, normalized
/// to 0 at the smallest vertex of each connected component.
///
/// Propagates along a spanning tree and verifies every non-tree edge.
pub fn is_coboundary(g: &Graph, f: &EdgeFunction) -> Option<Potential> {
    assert_eq!(f.len(), g.edge_count(), "edge count mismatch");
    let n = g.vertex_count();
    let mut rho: Vec<Option<BigInt>> = vec![None; n];
    for comp in g.components() {
        let root = comp[0]; // components() lists vertices in increasing order
        rho[root.0] = Some(BigInt::zero());
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let base = rho[v.0].clone().unwrap();
            for e in g.edge_ids() {
                // f(e) = rho(init) - rho(term)
                if g.init(e) == v && rho[g.term(e).0].is_none() {
                    rho[g.term(e).0] = Some(&base - f.get(e));
                    stack.push(g.term(e));
                } else if g.term(e) == v && rho[g.init(e).0].is_none() {
                    rho[g.init(e).0] = Some(&base + f.get(e));
                    stack.push(g.init(e));
                }
            }
        }
    }
    let rho: Vec<BigInt> = rho.into_iter().map(|x| x.unwrap()).collect();
    for e in g.edge_ids() {
        if f.get(e) != &(&rho[g.init(e).0] - &rho[g.term(e).0]) {
            return None;
        }
    }
    Some(Potential { values: rho })
}

/// True when no directed cycle has a negative `f`-sum.
///
/// Requires strong connectivity; detected by Bellman-Ford with weights
/// `f(e)` (a relaxation on the final pass exhibits a negative cycle).
pub fn nonnegative_on_cycles(g: &Graph, f: &EdgeFunction) -> Result<bool, CohomologyError> {
    assert_eq!(f.len(), g.edge_count(), "edge count mismatch");
    if !g.is_strongly_connected() {
        return Err(CohomologyError::NotStronglyConnected);
    }
    let n = g.vertex_count();
    if n == 0 {
        return Ok(true);
    }
    let mut dist = vec![BigInt::zero(); n];
    for _ in 0..n - 1 {
        let mut updated = false;
        for e in g.edge_ids() {
            let cand = &dist[g.init(e).0] + f.get(e);
            if cand < dist[g.term(e).0] {
                dist[g.term(e).0] = cand;
                updated = true;
            }
        }
        if !updated {
            return Ok(true);
        }
    }
    for e in g.edge_ids() {
        if &dist[g.init(e).0] + f.get(e) < dist[g.term(e).0] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cotree coordinates for `C(E, Z) / V`.
///
/// `tree` is a spanning forest chosen by scanning edges in name order;
/// `cotree` lists the remaining edges, also in name order.  The rank is
/// `|E| - |V| + #components`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyBasis {
    tree: Vec<EdgeId>,
    cotree: Vec<EdgeId>,
    /// For each cotree edge, its fundamental cycle as signed edge traversals
    /// (the cotree edge forward, then the tree path back).
    cycles: Vec<Vec<(EdgeId, Sign)>>,
}

impl CohomologyBasis {
    pub fn rank(&self) -> usize {
        self.cotree.len()
    }

    pub fn tree(&self) -> &[EdgeId] {
        &self.tree
    }

    pub fn cotree(&self) -> &[EdgeId] {
        &self.cotree
    }

    pub fn fundamental_cycle(&self, i: usize) -> &[(EdgeId, Sign)] {
        &self.cycles[i]
    }
}

/// Build the cotree basis of `g`.
pub fn cohomology_basis(g: &Graph) -> CohomologyBasis {
    let mut order: Vec<EdgeId> = g.edge_ids().collect();
    order.sort_by(|&a, &b| g.edge_name(a).cmp(g.edge_name(b)));

    // Union-find over vertices.
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut tree = Vec::new();
    let mut cotree = Vec::new();
    for &e in &order {
        let a = find(&mut parent, g.init(e).0);
        let b = find(&mut parent, g.term(e).0);
        if a == b {
            cotree.push(e);
        } else {
            parent[a] = b;
            tree.push(e);
        }
    }

    // Tree adjacency for path finding.
    let cycles = cotree
        .iter()
        .map(|&c| {
            let mut cycle = vec![(c, Sign::Plus)];
            cycle.extend(tree_path(g, &tree, g.term(c), g.init(c)));
            cycle
        })
        .collect();
    CohomologyBasis {
        tree,
        cotree,
        cycles,
    }
}

/// Signed tree path from `from` to `to` (unique in a forest).
fn tree_path(g: &Graph, tree: &[EdgeId], from: VertexId, to: VertexId) -> Vec<(EdgeId, Sign)> {
    if from == to {
        return Vec::new();
    }
    // BFS over tree edges in both directions.
    let n = g.vertex_count();
    let mut prev: Vec<Option<(VertexId, EdgeId, Sign)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from.0] = true;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &e in tree {
            for (a, b, s) in [
                (g.init(e), g.term(e), Sign::Plus),
                (g.term(e), g.init(e), Sign::Minus),
            ] {
                if a == v && !seen[b.0] {
                    seen[b.0] = true;
                    prev[b.0] = Some((v, e, s));
                    queue.push_back(b);
                }
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let (p, e, s) = prev[cur.0].expect("vertices in one component");
        path.push((e, s));
        cur = p;
    }
    path.reverse();
    path
}

/// Coordinates of `[f]` in the cotree basis: the signed `f`-sum over each
/// fundamental cycle.  Zero exactly on vertex coboundaries.
pub fn reduce(g: &Graph, basis: &CohomologyBasis, f: &EdgeFunction) -> Vec<BigInt> {
    assert_eq!(f.len(), g.edge_count(), "edge count mismatch");
    basis
        .cycles
        .iter()
        .map(|cycle| {
            cycle
                .iter()
                .map(|&(e, s)| match s {
                    Sign::Plus => f.get(e).clone(),
                    Sign::Minus => -f.get(e),
                })
                .sum()
        })
        .collect()
}

/// The canonical coset representative: subtract a coboundary so the result
/// vanishes on the spanning tree.  Two functions lie in the same coset
/// exactly when their normal forms are equal vectors.
pub fn normalize(g: &Graph, basis: &CohomologyBasis, f: &EdgeFunction) -> EdgeFunction {
    // Fit a potential along tree edges, then subtract its coboundary.
    let n = g.vertex_count();
    let mut rho: Vec<Option<BigInt>> = vec![None; n];
    for comp in g.components() {
        rho[comp[0].0] = Some(BigInt::zero());
        let mut progress = true;
        while progress {
            progress = false;
            for &e in &basis.tree {
                let (i, t) = (g.init(e), g.term(e));
                match (rho[i.0].clone(), rho[t.0].clone()) {
                    (Some(ri), None) => {
                        rho[t.0] = Some(&ri - f.get(e));
                        progress = true;
                    }
                    (None, Some(rt)) => {
                        rho[i.0] = Some(&rt + f.get(e));
                        progress = true;
                    }
                    _ => {}
                }
            }
        }
    }
    let rho = Potential {
        values: rho.into_iter().map(|x| x.unwrap()).collect(),
    };
    let d = coboundary(g, &rho);
    EdgeFunction {
        values: f.values.iter().zip(&d.values).map(|(a, b)| a - b).collect(),
    }
}

/// Pullback of `f` along a wrapping rule: `result(e)` is the signed sum of
/// `f` over the letters of `word(e)`.
pub fn pullback(rule: &WrappingRule, f: &EdgeFunction) -> EdgeFunction {
    assert_eq!(f.len(), rule.codomain_edge_count(), "edge count mismatch");
    let values = (0..rule.domain_edge_count())
        .map(|e| {
            rule.word(EdgeId(e))
                .letters()
                .iter()
                .map(|l| match l.sign {
                    Sign::Plus => f.get(l.edge).clone(),
                    Sign::Minus => -f.get(l.edge),
                })
                .sum()
        })
        .collect();
    EdgeFunction { values }
}

/// Matrix of the pullback on cohomology, from the cotree basis of level `k`
/// to the cotree basis of level `k+1` (the self-map when stationary, where
/// `k` must be 0).
///
/// Column `j` holds the coordinates of the pullback of the `j`-th codomain
/// basis class.  Before returning, the map is checked to send vertex
/// coboundaries to vertex coboundaries; a failure there means the rule was
/// never validated.
pub fn induced_cohomology_matrix(p: &Presentation, k: usize) -> IntegerMatrix {
    let (domain, codomain) = p.rule_graphs(k);
    let rule = p.rule(k);
    let dom_basis = cohomology_basis(domain);
    let cod_basis = cohomology_basis(codomain);

    for v in codomain.vertices() {
        let vf = vertex_function(codomain, v).unwrap();
        let back = pullback(rule, &vf);
        assert!(
            is_coboundary(domain, &back).is_some(),
            "pullback of a vertex function must be a coboundary; rule was not validated"
        );
    }

    let rows = dom_basis.rank();
    let cols = cod_basis.rank();
    let mut m = IntegerMatrix::zero(rows, cols);
    for (j, &c) in cod_basis.cotree().iter().enumerate() {
        let mut indicator = vec![BigInt::zero(); codomain.edge_count()];
        indicator[c.0] = BigInt::from(1);
        let f = EdgeFunction { values: indicator };
        let coords = reduce(domain, &dom_basis, &pullback(rule, &f));
        for (i, value) in coords.into_iter().enumerate() {
            *m.get_mut(i, j) = value;
        }
    }
    m
}
