//! Presentations: graph towers with wrapping rules, validation and
//! combinatorial orientability.

use thiserror::Error;

use crate::graph::{EdgeId, Graph, GraphError, Letter, Sign, VertexId, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("rule must give one image word per edge ({expected} edges, {got} words)")]
    WordCountMismatch { expected: usize, got: usize },
    #[error("rule must map every vertex ({expected} vertices, {got} mapped)")]
    VertexMapMismatch { expected: usize, got: usize },
    #[error("edge `{edge}`: word endpoints do not match the vertex map")]
    MarkovViolation { edge: String },
    #[error("edge `{edge}`: image word does not chain")]
    WordDoesNotChain { edge: String },
    #[error("vertex map cannot be inferred: vertex `{vertex}` {reason}")]
    VertexMapInference { vertex: String, reason: String },
    #[error("a presentation needs at least one level")]
    NoLevels,
    #[error("tower with {levels} levels needs {} rules, got {rules}", levels - 1)]
    RuleCountMismatch { levels: usize, rules: usize },
}

/// The combinatorial form of a connection map: each domain edge maps to a
/// word in the codomain graph and each domain vertex to a codomain vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WrappingRule {
    words: Vec<Word>,
    vertex_map: Vec<VertexId>,
    codomain_edges: usize,
}

impl WrappingRule {
    /// Validates the Markov compatibility invariant: for each edge, the
    /// image word starts at `vertex_map(init e)` and ends at
    /// `vertex_map(term e)`.
    pub fn new(
        domain: &Graph,
        codomain: &Graph,
        words: Vec<Word>,
        vertex_map: Vec<VertexId>,
    ) -> Result<WrappingRule, PresentationError> {
        if words.len() != domain.edge_count() {
            return Err(PresentationError::WordCountMismatch {
                expected: domain.edge_count(),
                got: words.len(),
            });
        }
        if vertex_map.len() != domain.vertex_count() {
            return Err(PresentationError::VertexMapMismatch {
                expected: domain.vertex_count(),
                got: vertex_map.len(),
            });
        }
        for e in domain.edge_ids() {
            let w = &words[e.0];
            if !w.chains_in(codomain) {
                return Err(PresentationError::WordDoesNotChain {
                    edge: domain.edge_name(e).to_string(),
                });
            }
            if vertex_map[domain.init(e).0] != w.start(codomain)
                || vertex_map[domain.term(e).0] != w.end(codomain)
            {
                return Err(PresentationError::MarkovViolation {
                    edge: domain.edge_name(e).to_string(),
                });
            }
        }
        Ok(WrappingRule {
            words,
            vertex_map,
            codomain_edges: codomain.edge_count(),
        })
    }

    /// Infer the vertex map from word endpoints.  Fails when some vertex is
    /// not an endpoint of any domain edge, or when two edges force different
    /// images for the same vertex.
    pub fn infer_vertex_map(
        domain: &Graph,
        codomain: &Graph,
        words: &[Word],
    ) -> Result<Vec<VertexId>, PresentationError> {
        let mut map: Vec<Option<VertexId>> = vec![None; domain.vertex_count()];
        let mut set = |v: VertexId, image: VertexId| -> Result<(), PresentationError> {
            match map[v.0] {
                None => {
                    map[v.0] = Some(image);
                    Ok(())
                }
                Some(prev) if prev == image => Ok(()),
                Some(_) => Err(PresentationError::VertexMapInference {
                    vertex: domain.vertex_name(v).to_string(),
                    reason: "is forced to two different images".to_string(),
                }),
            }
        };
        for e in domain.edge_ids() {
            let w = &words[e.0];
            set(domain.init(e), w.start(codomain))?;
            set(domain.term(e), w.end(codomain))?;
        }
        map.iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| PresentationError::VertexMapInference {
                    vertex: domain.vertex_name(VertexId(i)).to_string(),
                    reason: "touches no edge, so its image is ambiguous".to_string(),
                })
            })
            .collect()
    }

    /// No validation; used by checkers that re-verify and by search code.
    pub fn from_parts_unchecked(
        words: Vec<Word>,
        vertex_map: Vec<VertexId>,
        codomain_edges: usize,
    ) -> WrappingRule {
        WrappingRule {
            words,
            vertex_map,
            codomain_edges,
        }
    }

    pub fn word(&self, e: EdgeId) -> &Word {
        &self.words[e.0]
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn vertex_image(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.0]
    }

    pub fn vertex_map(&self) -> &[VertexId] {
        &self.vertex_map
    }

    pub fn domain_edge_count(&self) -> usize {
        self.words.len()
    }

    pub fn codomain_edge_count(&self) -> usize {
        self.codomain_edges
    }

    pub fn is_all_positive(&self) -> bool {
        self.words.iter().all(|w| w.is_all_positive())
    }

    /// Standalone re-verification of the Markov/chaining invariant.
    pub fn satisfies_markov(&self, domain: &Graph, codomain: &Graph) -> bool {
        if self.words.len() != domain.edge_count() || self.vertex_map.len() != domain.vertex_count()
        {
            return false;
        }
        domain.edge_ids().all(|e| {
            let w = &self.words[e.0];
            w.chains_in(codomain)
                && self.vertex_map[domain.init(e).0] == w.start(codomain)
                && self.vertex_map[domain.term(e).0] == w.end(codomain)
        })
    }
}

/// A graph tower with wrapping rules.  `maps[k]` carries level `k+1` to
/// level `k`; a stationary presentation has one graph and one self-rule,
/// implicitly iterated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    levels: Vec<Graph>,
    maps: Vec<WrappingRule>,
    stationary: bool,
    inferred: bool,
}

impl Presentation {
    pub fn stationary(graph: Graph, rule: WrappingRule) -> Result<Presentation, PresentationError> {
        if rule.domain_edge_count() != graph.edge_count()
            || rule.codomain_edge_count() != graph.edge_count()
        {
            return Err(PresentationError::WordCountMismatch {
                expected: graph.edge_count(),
                got: rule.domain_edge_count(),
            });
        }
        Ok(Presentation {
            levels: vec![graph],
            maps: vec![rule],
            stationary: true,
            inferred: false,
        })
    }

    pub fn tower(
        levels: Vec<Graph>,
        maps: Vec<WrappingRule>,
    ) -> Result<Presentation, PresentationError> {
        if levels.is_empty() {
            return Err(PresentationError::NoLevels);
        }
        if maps.len() + 1 != levels.len() {
            return Err(PresentationError::RuleCountMismatch {
                levels: levels.len(),
                rules: maps.len(),
            });
        }
        Ok(Presentation {
            levels,
            maps,
            stationary: false,
            inferred: false,
        })
    }

    pub fn is_stationary(&self) -> bool {
        self.stationary
    }

    /// True when the incidence data was reconstructed by the incidence
    /// solver rather than stated by the input.
    pub fn is_inferred(&self) -> bool {
        self.inferred
    }

    pub fn mark_inferred(mut self) -> Presentation {
        self.inferred = true;
        self
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, k: usize) -> &Graph {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[Graph] {
        &self.levels
    }

    /// Rule carrying level `k+1` to level `k` (the only rule when
    /// stationary).
    pub fn rule(&self, k: usize) -> &WrappingRule {
        &self.maps[k]
    }

    pub fn rules(&self) -> &[WrappingRule] {
        &self.maps
    }

    /// Domain and codomain graphs of `rule(k)`.
    pub fn rule_graphs(&self, k: usize) -> (&Graph, &Graph) {
        if self.stationary {
            (&self.levels[0], &self.levels[0])
        } else {
            (&self.levels[k + 1], &self.levels[k])
        }
    }

    pub fn rule_count(&self) -> usize {
        self.maps.len()
    }

    /// Run every check and collect findings; the presentation itself is
    /// never modified.
    pub fn validate(&self) -> ValidationReport {
        let mut findings = Vec::new();
        for (k, g) in self.levels.iter().enumerate() {
            let bad = g.degenerate_vertices();
            findings.push(Finding {
                check: Check::Nondegeneracy,
                level: Some(k),
                passed: bad.is_empty(),
                items: bad.iter().map(|&v| g.vertex_name(v).to_string()).collect(),
            });
            findings.push(Finding {
                check: Check::Connectivity,
                level: Some(k),
                passed: g.is_connected(),
                items: vec![],
            });
            findings.push(Finding {
                check: Check::StrongConnectivity,
                level: Some(k),
                passed: g.is_strongly_connected(),
                items: vec![],
            });
        }
        for k in 0..self.maps.len() {
            let (domain, codomain) = self.rule_graphs(k);
            let rule = &self.maps[k];
            let mut broken_chain = Vec::new();
            let mut broken_markov = Vec::new();
            for e in domain.edge_ids() {
                let w = rule.word(e);
                if w.is_empty() || !w.chains_in(codomain) {
                    broken_chain.push(domain.edge_name(e).to_string());
                } else if rule.vertex_image(domain.init(e)) != w.start(codomain)
                    || rule.vertex_image(domain.term(e)) != w.end(codomain)
                {
                    broken_markov.push(domain.edge_name(e).to_string());
                }
            }
            findings.push(Finding {
                check: Check::Chaining,
                level: Some(k),
                passed: broken_chain.is_empty(),
                items: broken_chain,
            });
            findings.push(Finding {
                check: Check::Markov,
                level: Some(k),
                passed: broken_markov.is_empty(),
                items: broken_markov,
            });
        }
        ValidationReport { findings }
    }

    pub fn is_all_positive(&self) -> bool {
        self.maps.iter().all(|r| r.is_all_positive())
    }

    /// Decide combinatorial orientability.
    ///
    /// A sign assignment exists exactly when re-directing each edge `e` by
    /// `sigma(e)` makes every image word all-positive.  Each letter `(x, s)`
    /// of `word(e)` imposes `sigma(x) = s * sigma(e)`; the system is solved
    /// by 2-coloring its constraint graph, assigning `+` to the first edge
    /// of every component.
    pub fn orientability(&self) -> Option<Orientation> {
        // Nodes are (level, edge), flattened level by level.
        let offsets: Vec<usize> = {
            let mut acc = 0;
            let mut out = Vec::with_capacity(self.levels.len());
            for g in &self.levels {
                out.push(acc);
                acc += g.edge_count();
            }
            out
        };
        let total: usize = self.levels.iter().map(|g| g.edge_count()).sum();
        // Constraint adjacency: node -> (node, relative sign)
        let mut adj: Vec<Vec<(usize, Sign)>> = vec![Vec::new(); total];
        for k in 0..self.maps.len() {
            let (dom_level, cod_level) = if self.stationary { (0, 0) } else { (k + 1, k) };
            let rule = &self.maps[k];
            for e in 0..rule.domain_edge_count() {
                let e_node = offsets[dom_level] + e;
                for l in rule.word(EdgeId(e)).letters() {
                    let x_node = offsets[cod_level] + l.edge.0;
                    adj[e_node].push((x_node, l.sign));
                    adj[x_node].push((e_node, l.sign));
                }
            }
        }
        let mut color: Vec<Option<Sign>> = vec![None; total];
        for start in 0..total {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(Sign::Plus);
            let mut stack = vec![start];
            while let Some(n) = stack.pop() {
                let c = color[n].unwrap();
                for &(m, rel) in &adj[n] {
                    // sigma(x) = s * sigma(e): crossing a constraint with
                    // letter sign s multiplies the color by s.
                    let want = match rel {
                        Sign::Plus => c,
                        Sign::Minus => c.flip(),
                    };
                    match color[m] {
                        None => {
                            color[m] = Some(want);
                            stack.push(m);
                        }
                        Some(have) if have == want => {}
                        Some(_) => return None,
                    }
                }
            }
        }
        let mut signs = Vec::with_capacity(self.levels.len());
        for (k, g) in self.levels.iter().enumerate() {
            signs.push(
                (0..g.edge_count())
                    .map(|e| color[offsets[k] + e].unwrap())
                    .collect(),
            );
        }
        Some(Orientation { signs })
    }

    /// Re-direct edges according to `sigma` and rewrite every word so the
    /// result presents the same tower.  When `sigma` comes from
    /// [`Presentation::orientability`] the rewritten words are all-positive.
    pub fn apply_orientation(&self, orientation: &Orientation) -> Presentation {
        let mut new_levels = Vec::with_capacity(self.levels.len());
        for (k, g) in self.levels.iter().enumerate() {
            let mut ng = Graph::new(&[], &[]).unwrap();
            for v in g.vertices() {
                ng.add_vertex(g.vertex_name(v)).unwrap();
            }
            for e in g.edge_ids() {
                let (init, term) = match orientation.signs[k][e.0] {
                    Sign::Plus => (g.init(e), g.term(e)),
                    Sign::Minus => (g.term(e), g.init(e)),
                };
                ng.add_edge(g.edge_name(e), g.vertex_name(init), g.vertex_name(term))
                    .unwrap();
            }
            new_levels.push(ng);
        }
        let mut new_maps = Vec::with_capacity(self.maps.len());
        for k in 0..self.maps.len() {
            let (dom_level, cod_level) = if self.stationary { (0, 0) } else { (k + 1, k) };
            let rule = &self.maps[k];
            let words = (0..rule.domain_edge_count())
                .map(|e| {
                    let sigma_e = orientation.signs[dom_level][e];
                    let mut letters: Vec<Letter> = rule
                        .word(EdgeId(e))
                        .letters()
                        .iter()
                        .map(|l| {
                            let s = match sigma_e {
                                Sign::Plus => l.sign,
                                Sign::Minus => l.sign.flip(),
                            };
                            let s = match orientation.signs[cod_level][l.edge.0] {
                                Sign::Plus => s,
                                Sign::Minus => s.flip(),
                            };
                            Letter::new(l.edge, s)
                        })
                        .collect();
                    if sigma_e == Sign::Minus {
                        letters.reverse();
                    }
                    Word::from_letters_unchecked(letters)
                })
                .collect();
            new_maps.push(WrappingRule::from_parts_unchecked(
                words,
                rule.vertex_map().to_vec(),
                rule.codomain_edge_count(),
            ));
        }
        Presentation {
            levels: new_levels,
            maps: new_maps,
            stationary: self.stationary,
            inferred: self.inferred,
        }
    }
}

/// Per-edge, per-level sign assignment produced by the orientability solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub signs: Vec<Vec<Sign>>,
}

impl Orientation {
    pub fn is_identity(&self) -> bool {
        self.signs
            .iter()
            .all(|s| s.iter().all(|&x| x == Sign::Plus))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Nondegeneracy,
    Chaining,
    Markov,
    Connectivity,
    StrongConnectivity,
}

impl Check {
    pub fn name(&self) -> &'static str {
        match self {
            Check::Nondegeneracy => "nondegeneracy",
            Check::Chaining => "chaining",
            Check::Markov => "markov",
            Check::Connectivity => "connectivity",
            Check::StrongConnectivity => "strong-connectivity",
        }
    }
}

/// One validation check outcome; `items` names the offending objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub check: Check,
    pub level: Option<usize>,
    pub passed: bool,
    pub items: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.findings.iter().all(|f| f.passed)
    }

    pub fn failures(&self) -> Vec<&Finding> {
        self.findings.iter().filter(|f| !f.passed).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn dyadic() -> Presentation {
        let g = Graph::new(&["v1", "v2"], &[("e1", "v1", "v2"), ("e2", "v2", "v1")]).unwrap();
        let e1 = g.edge_id("e1").unwrap();
        let e2 = g.edge_id("e2").unwrap();
        let w = |g: &Graph| {
            Word::new(
                vec![Letter::new(e1, Sign::Plus), Letter::new(e2, Sign::Plus)],
                g,
            )
            .unwrap()
        };
        let v1 = g.vertex_id("v1").unwrap();
        let rule = WrappingRule::new(&g, &g, vec![w(&g), w(&g)], vec![v1, v1]).unwrap();
        Presentation::stationary(g, rule).unwrap()
    }

    fn fibonacci() -> Presentation {
        let g = Graph::new(&["p"], &[("a", "p", "p"), ("b", "p", "p")]).unwrap();
        let a = g.edge_id("a").unwrap();
        let b = g.edge_id("b").unwrap();
        let wa = Word::new(
            vec![Letter::new(a, Sign::Plus), Letter::new(b, Sign::Plus)],
            &g,
        )
        .unwrap();
        let wb = Word::new(vec![Letter::new(a, Sign::Plus)], &g).unwrap();
        let rule = WrappingRule::new(&g, &g, vec![wa, wb], vec![VertexId(0)]).unwrap();
        Presentation::stationary(g, rule).unwrap()
    }

    #[test]
    fn dyadic_validates() {
        let p = dyadic();
        let report = p.validate();
        assert!(report.all_passed(), "{:?}", report.failures());
    }

    #[test]
    fn markov_violation_rejected() {
        let g = Graph::new(&["v1", "v2"], &[("e1", "v1", "v2"), ("e2", "v2", "v1")]).unwrap();
        let e1 = g.edge_id("e1").unwrap();
        let w1 = Word::new(vec![Letter::new(e1, Sign::Plus)], &g).unwrap();
        // e2 -> e1 needs vmap(v2)=v1, vmap(v1)=v2; but e1 -> e1 needs identity
        let res = WrappingRule::new(&g, &g, vec![w1.clone(), w1], vec![VertexId(0), VertexId(1)]);
        assert!(matches!(
            res,
            Err(PresentationError::MarkovViolation { .. })
        ));
    }

    #[test]
    fn sink_vertex_fails_nondegeneracy() {
        let g = Graph::new(&["u", "v"], &[("a", "u", "v"), ("b", "u", "v")]).unwrap();
        let a = g.edge_id("a").unwrap();
        let wa = Word::new(vec![Letter::new(a, Sign::Plus)], &g).unwrap();
        let rule = WrappingRule::new(&g, &g, vec![wa.clone(), wa], vec![VertexId(0), VertexId(1)])
            .unwrap();
        let p = Presentation::stationary(g, rule).unwrap();
        let report = p.validate();
        let nd = report
            .findings
            .iter()
            .find(|f| f.check == Check::Nondegeneracy)
            .unwrap();
        assert!(!nd.passed);
        assert_eq!(nd.items, vec!["u".to_string(), "v".to_string()]);
    }

    #[test]
    fn vertex_map_inference() {
        let g = Graph::new(&["v1", "v2"], &[("e1", "v1", "v2"), ("e2", "v2", "v1")]).unwrap();
        let e1 = g.edge_id("e1").unwrap();
        let e2 = g.edge_id("e2").unwrap();
        let w = Word::new(
            vec![Letter::new(e1, Sign::Plus), Letter::new(e2, Sign::Plus)],
            &g,
        )
        .unwrap();
        let map = WrappingRule::infer_vertex_map(&g, &g, &[w.clone(), w]).unwrap();
        assert_eq!(map, vec![VertexId(0), VertexId(0)]);
    }

    #[test]
    fn orientability_of_positive_presentation_is_identity() {
        let p = dyadic();
        let o = p.orientability().unwrap();
        assert!(o.is_identity());
        let q = fibonacci().orientability().unwrap();
        assert!(q.is_identity());
    }

    #[test]
    fn backtracking_loop_is_not_orientable() {
        // a -> a a^-1 a forces sigma(a) = -sigma(a)
        let g = Graph::new(&["p"], &[("a", "p", "p")]).unwrap();
        let a = g.edge_id("a").unwrap();
        let w = Word::new(
            vec![
                Letter::new(a, Sign::Plus),
                Letter::new(a, Sign::Minus),
                Letter::new(a, Sign::Plus),
            ],
            &g,
        )
        .unwrap();
        let rule = WrappingRule::new(&g, &g, vec![w], vec![VertexId(0)]).unwrap();
        let p = Presentation::stationary(g, rule).unwrap();
        assert_eq!(p.orientability(), None);
    }

    #[test]
    fn orientation_rewrites_to_all_positive() {
        // dyadic with e2 reversed: e2: v1 -> v2, words use e2 backwards
        let g = Graph::new(&["v1", "v2"], &[("e1", "v1", "v2"), ("e2", "v1", "v2")]).unwrap();
        let e1 = g.edge_id("e1").unwrap();
        let e2 = g.edge_id("e2").unwrap();
        let w1 = Word::new(
            vec![Letter::new(e1, Sign::Plus), Letter::new(e2, Sign::Minus)],
            &g,
        )
        .unwrap();
        // e2 is traversed backwards, so its image is the reversed word
        let w2 = Word::new(
            vec![Letter::new(e2, Sign::Plus), Letter::new(e1, Sign::Minus)],
            &g,
        )
        .unwrap();
        let v1 = g.vertex_id("v1").unwrap();
        let rule = WrappingRule::new(&g, &g, vec![w1, w2], vec![v1, v1]).unwrap();
        let p = Presentation::stationary(g, rule).unwrap();

        let o = p.orientability().expect("orientable");
        assert_eq!(o.signs[0], vec![Sign::Plus, Sign::Minus]);
        let q = p.apply_orientation(&o);
        assert!(q.is_all_positive());
        assert!(q.validate().all_passed());
    }

    #[test]
    fn orientation_spans_tower_levels() {
        // the constraint sigma(x) = s * sigma(e) couples edges of adjacent
        // levels; a signed letter in the connecting rule flips e1 below
        let bottom = Graph::new(&["u"], &[("e0", "u", "u"), ("e1", "u", "u")]).unwrap();
        let top = Graph::new(&["p"], &[("a", "p", "p"), ("b", "p", "p")]).unwrap();
        let e0 = bottom.edge_id("e0").unwrap();
        let e1 = bottom.edge_id("e1").unwrap();
        let wa = Word::new(
            vec![Letter::new(e0, Sign::Plus), Letter::new(e1, Sign::Minus)],
            &bottom,
        )
        .unwrap();
        let wb = Word::new(vec![Letter::new(e0, Sign::Plus)], &bottom).unwrap();
        let rule = WrappingRule::new(&top, &bottom, vec![wa, wb], vec![VertexId(0)]).unwrap();
        let p = Presentation::tower(vec![bottom, top], vec![rule]).unwrap();

        let o = p.orientability().expect("orientable");
        assert_eq!(o.signs[0], vec![Sign::Plus, Sign::Minus]);
        assert_eq!(o.signs[1], vec![Sign::Plus, Sign::Plus]);
        let q = p.apply_orientation(&o);
        assert!(q.is_all_positive());
        assert!(q.validate().all_passed());
    }
}
