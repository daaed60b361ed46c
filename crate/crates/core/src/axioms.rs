//! Combinatorial checkers for the solenoid axioms visible at the symbolic
//! level: Markov, flattening, and nonfolding.
//!
//! The indecomposability, nonwandering and expansion axioms are dynamical
//! or metric statements and cannot be evaluated from the wrapping rule
//! alone; callers report them as "not evaluated".
//!
//! Both germ-based checks work on directed edge-ends.  A germ `(e, Init)`
//! sits at the initial vertex of `e` pointing into the edge; `(e, Term)`
//! sits at the terminal vertex pointing back into it.  A wrapping rule acts
//! on germs through the first and last letters of image words, and folding
//! or flattening behaviour of all iterates is decided on the finite germ
//! set.  For nonfolding, the absence of through-pair collisions is taken as
//! the definition of "holds"; a collision always exhibits a genuine fold of
//! some iterate.

use thiserror::Error;

use crate::graph::{EdgeId, Graph, Letter, Sign, VertexId};
use crate::presentation::{Presentation, WrappingRule};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AxiomError {
    #[error("axiom checks require a stationary presentation")]
    NotStationary,
    #[error("flattening is only defined for orientation-preserving (all-positive) rules")]
    SignedWordsUnsupported,
}

/// Which end of the edge a germ sits at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Init,
    Term,
}

/// A directed edge-end: the combinatorial stand-in for a local branch at a
/// vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Germ {
    pub edge: EdgeId,
    pub end: End,
}

impl Germ {
    pub fn new(edge: EdgeId, end: End) -> Germ {
        Germ { edge, end }
    }

    /// The vertex this germ sits at.
    pub fn vertex(&self, g: &Graph) -> VertexId {
        match self.end {
            End::Init => g.init(self.edge),
            End::Term => g.term(self.edge),
        }
    }

    fn index(&self) -> usize {
        2 * self.edge.0 + if self.end == End::Init { 0 } else { 1 }
    }

    fn from_index(i: usize) -> Germ {
        Germ::new(
            EdgeId(i / 2),
            if i % 2 == 0 { End::Init } else { End::Term },
        )
    }
}

fn entry_germ(l: &Letter) -> Germ {
    match l.sign {
        Sign::Plus => Germ::new(l.edge, End::Init),
        Sign::Minus => Germ::new(l.edge, End::Term),
    }
}

fn exit_germ(l: &Letter) -> Germ {
    match l.sign {
        Sign::Plus => Germ::new(l.edge, End::Term),
        Sign::Minus => Germ::new(l.edge, End::Init),
    }
}

/// The self-map on germs induced by a stationary wrapping rule:
/// `(e, Init)` goes to the entry germ of the first letter of `word(e)` and
/// `(e, Term)` to the exit germ of the last letter.
#[derive(Debug, Clone)]
pub struct GermMap {
    forward: Vec<Germ>,
}

impl GermMap {
    pub fn new(rule: &WrappingRule) -> GermMap {
        let n = rule.domain_edge_count();
        let mut forward = Vec::with_capacity(2 * n);
        for e in 0..n {
            let letters = rule.word(EdgeId(e)).letters();
            forward.push(entry_germ(&letters[0]));
            forward.push(exit_germ(&letters[letters.len() - 1]));
        }
        GermMap { forward }
    }

    pub fn germ_count(&self) -> usize {
        self.forward.len()
    }

    pub fn forward(&self, g: Germ) -> Germ {
        self.forward[g.index()]
    }

    pub fn iterate(&self, g: Germ, steps: usize) -> Germ {
        let mut cur = g;
        for _ in 0..steps {
            cur = self.forward(cur);
        }
        cur
    }

    pub fn germs(&self) -> impl Iterator<Item = Germ> {
        (0..self.forward.len()).map(Germ::from_index)
    }
}

/// Standalone Markov re-verification of a rule against its graphs.
pub fn check_markov(domain: &Graph, codomain: &Graph, rule: &WrappingRule) -> bool {
    rule.satisfies_markov(domain, codomain)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatteningResult {
    pub holds: bool,
    /// Minimal iterate after which each vertex's in-germs share one image
    /// and its out-germs share one image.
    pub exponent: Option<usize>,
}

/// Flattening check for orientation-preserving stationary presentations.
///
/// Iterating the germ map, the condition holds as soon as (at every vertex)
/// all outgoing germs collapse to a single germ and likewise all incoming
/// germs.  The orbit of any germ set stabilizes within `2|E|` steps, so
/// failing to collapse by then means never.
pub fn check_flattening(p: &Presentation) -> Result<FlatteningResult, AxiomError> {
    if !p.is_stationary() {
        return Err(AxiomError::NotStationary);
    }
    if !p.is_all_positive() {
        return Err(AxiomError::SignedWordsUnsupported);
    }
    let g = p.level(0);
    let rule = p.rule(0);
    let map = GermMap::new(rule);
    let classes: Vec<Vec<Germ>> = g
        .vertices()
        .flat_map(|v| {
            let outs: Vec<Germ> = g
                .out_edges(v)
                .into_iter()
                .map(|e| Germ::new(e, End::Init))
                .collect();
            let ins: Vec<Germ> = g
                .in_edges(v)
                .into_iter()
                .map(|e| Germ::new(e, End::Term))
                .collect();
            [outs, ins]
        })
        .collect();
    let bound = 2 * g.edge_count();
    let mut current = classes;
    for k in 0..=bound {
        let collapsed = current
            .iter()
            .all(|set| set.windows(2).all(|w| w[0] == w[1]));
        if collapsed {
            return Ok(FlatteningResult {
                holds: true,
                exponent: Some(k),
            });
        }
        for set in &mut current {
            for germ in set.iter_mut() {
                *germ = map.forward(*germ);
            }
        }
    }
    Ok(FlatteningResult {
        holds: false,
        exponent: None,
    })
}

/// A through-pair that collapsed: evidence of an interior point where some
/// iterate folds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldWitness {
    /// Domain edge whose image word contains the junction.
    pub edge: EdgeId,
    /// Index of the junction between letters `j` and `j+1`.
    pub junction: usize,
    /// The initial through-pair.
    pub pair: (Germ, Germ),
    /// Iterate at which the two germs coincide (0 = immediate backtrack).
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonfoldingVerdict {
    Holds,
    Fails(FoldWitness),
}

impl NonfoldingVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, NonfoldingVerdict::Holds)
    }
}

/// Nonfolding check on a stationary presentation (signed words allowed).
///
/// Every junction of consecutive letters in an image word yields a
/// through-pair (germ back into the first letter, germ forward into the
/// second).  Pairs evolve under the germ map; two germs of a pair becoming
/// equal exhibits a fold of some iterate at the junction's preimage.
pub fn check_nonfolding(p: &Presentation) -> Result<NonfoldingVerdict, AxiomError> {
    if !p.is_stationary() {
        return Err(AxiomError::NotStationary);
    }
    let g = p.level(0);
    let rule = p.rule(0);
    let map = GermMap::new(rule);
    let state_bound = (2 * g.edge_count()) * (2 * g.edge_count());
    for e in g.edge_ids() {
        let letters = rule.word(e).letters();
        for j in 0..letters.len().saturating_sub(1) {
            let start = (exit_germ(&letters[j]), entry_germ(&letters[j + 1]));
            let mut pair = start;
            for step in 0..=state_bound {
                if pair.0 == pair.1 {
                    return Ok(NonfoldingVerdict::Fails(FoldWitness {
                        edge: e,
                        junction: j,
                        pair: start,
                        steps: step,
                    }));
                }
                pair = (map.forward(pair.0), map.forward(pair.1));
            }
        }
    }
    Ok(NonfoldingVerdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Word;
    use crate::presentation::WrappingRule;

    fn stationary(
        vertices: &[&str],
        edges: &[(&str, &str, &str)],
        words: &[&[(&str, Sign)]],
        vmap: &[(&str, &str)],
    ) -> Presentation {
        let g = Graph::new(vertices, edges).unwrap();
        let ws: Vec<Word> = words
            .iter()
            .map(|ls| {
                Word::new(
                    ls.iter()
                        .map(|&(n, s)| Letter::new(g.edge_id(n).unwrap(), s))
                        .collect(),
                    &g,
                )
                .unwrap()
            })
            .collect();
        let vm: Vec<VertexId> = vmap
            .iter()
            .map(|&(_, to)| g.vertex_id(to).unwrap())
            .collect();
        let rule = WrappingRule::new(&g, &g, ws, vm).unwrap();
        Presentation::stationary(g, rule).unwrap()
    }

    fn dyadic() -> Presentation {
        use Sign::Plus;
        stationary(
            &["v1", "v2"],
            &[("e1", "v1", "v2"), ("e2", "v2", "v1")],
            &[&[("e1", Plus), ("e2", Plus)], &[("e1", Plus), ("e2", Plus)]],
            &[("v1", "v1"), ("v2", "v1")],
        )
    }

    fn fibonacci() -> Presentation {
        use Sign::Plus;
        stationary(
            &["p"],
            &[("a", "p", "p"), ("b", "p", "p")],
            &[&[("a", Plus), ("b", Plus)], &[("a", Plus)]],
            &[("p", "p")],
        )
    }

    fn ex4x() -> Presentation {
        use Sign::Plus;
        stationary(
            &["p"],
            &[("a", "p", "p"), ("b", "p", "p")],
            &[
                &[("a", Plus), ("a", Plus), ("b", Plus)],
                &[("a", Plus), ("b", Plus)],
            ],
            &[("p", "p")],
        )
    }

    #[test]
    fn markov_check() {
        let p = dyadic();
        assert!(check_markov(p.level(0), p.level(0), p.rule(0)));
        let f = fibonacci();
        assert!(check_markov(f.level(0), f.level(0), f.rule(0)));

        // break chaining: e1 e1 does not chain in the dyadic graph
        let g = p.level(0);
        let e1 = g.edge_id("e1").unwrap();
        let bad = Word::from_letters_unchecked(vec![
            Letter::new(e1, Sign::Plus),
            Letter::new(e1, Sign::Plus),
        ]);
        let rule = WrappingRule::from_parts_unchecked(
            vec![bad.clone(), bad],
            vec![VertexId(0), VertexId(0)],
            2,
        );
        assert!(!check_markov(g, g, &rule));
    }

    #[test]
    fn germ_map_is_total_and_preperiodic() {
        let f = fibonacci();
        let map = GermMap::new(f.rule(0));
        assert_eq!(map.germ_count(), 4);
        let bound = map.germ_count();
        for g in map.germs() {
            // after `bound` steps every germ lies on a cycle
            let settled = map.iterate(g, bound);
            let mut seen = vec![settled];
            let mut cur = settled;
            loop {
                cur = map.forward(cur);
                if cur == settled {
                    break;
                }
                assert!(!seen.contains(&cur) || cur == settled);
                seen.push(cur);
                assert!(seen.len() <= bound, "cycle longer than the germ count");
            }
        }
    }

    #[test]
    fn flattening_dyadic_immediate() {
        let r = check_flattening(&dyadic()).unwrap();
        assert_eq!(
            r,
            FlatteningResult {
                holds: true,
                exponent: Some(0)
            }
        );
    }

    #[test]
    fn flattening_fails_for_fibonacci() {
        // in-germs (a,Term),(b,Term) swap forever and never merge
        let r = check_flattening(&fibonacci()).unwrap();
        assert_eq!(
            r,
            FlatteningResult {
                holds: false,
                exponent: None
            }
        );
    }

    #[test]
    fn flattening_ex4x_after_one_step() {
        let r = check_flattening(&ex4x()).unwrap();
        assert_eq!(
            r,
            FlatteningResult {
                holds: true,
                exponent: Some(1)
            }
        );
    }

    #[test]
    fn flattening_is_monotone_in_the_exponent() {
        // if the germ classes are collapsed at k, they stay collapsed at k+1
        let p = ex4x();
        let map = GermMap::new(p.rule(0));
        let k = check_flattening(&p).unwrap().exponent.unwrap();
        let g = p.level(0);
        for v in g.vertices() {
            for germs in [
                g.out_edges(v)
                    .into_iter()
                    .map(|e| Germ::new(e, End::Init))
                    .collect::<Vec<_>>(),
                g.in_edges(v)
                    .into_iter()
                    .map(|e| Germ::new(e, End::Term))
                    .collect::<Vec<_>>(),
            ] {
                for extra in [0, 1, 2] {
                    let images: Vec<Germ> =
                        germs.iter().map(|&x| map.iterate(x, k + extra)).collect();
                    assert!(images.windows(2).all(|w| w[0] == w[1]));
                }
            }
        }
    }

    #[test]
    fn flattening_rejects_signed_words() {
        use Sign::{Minus, Plus};
        let p = stationary(
            &["p"],
            &[("e", "p", "p")],
            &[&[("e", Plus), ("e", Minus), ("e", Plus)]],
            &[("p", "p")],
        );
        assert_eq!(
            check_flattening(&p),
            Err(AxiomError::SignedWordsUnsupported)
        );
    }

    #[test]
    fn nonfolding_immediate_backtrack() {
        use Sign::{Minus, Plus};
        // e -> e e^-1 e folds at the first junction
        let p = stationary(
            &["p"],
            &[("e", "p", "p")],
            &[&[("e", Plus), ("e", Minus), ("e", Plus)]],
            &[("p", "p")],
        );
        match check_nonfolding(&p).unwrap() {
            NonfoldingVerdict::Fails(w) => {
                assert_eq!(w.steps, 0);
                assert_eq!(w.junction, 0);
                assert_eq!(w.pair.0, Germ::new(EdgeId(0), End::Term));
                assert_eq!(w.pair.1, w.pair.0);
            }
            NonfoldingVerdict::Holds => panic!("expected a fold"),
        }
    }

    #[test]
    fn nonfolding_holds_for_fibonacci_and_dyadic() {
        assert!(check_nonfolding(&fibonacci()).unwrap().holds());
        assert!(check_nonfolding(&dyadic()).unwrap().holds());
        assert!(check_nonfolding(&ex4x()).unwrap().holds());
    }

    #[test]
    fn fold_witness_is_reproducible() {
        use Sign::{Minus, Plus};
        let p = stationary(
            &["p"],
            &[("a", "p", "p"), ("b", "p", "p")],
            // b's image ends with a, a's image starts with a: the junction
            // pair of "b a" in a's word collides after one step.
            &[
                &[("b", Plus), ("a", Plus)],
                &[("b", Plus), ("a", Minus), ("a", Plus)],
            ],
            &[("p", "p")],
        );
        if let NonfoldingVerdict::Fails(w) = check_nonfolding(&p).unwrap() {
            let map = GermMap::new(p.rule(0));
            let a = map.iterate(w.pair.0, w.steps);
            let b = map.iterate(w.pair.1, w.steps);
            assert_eq!(a, b, "witness must reproduce the collision");
        } else {
            panic!("expected a fold somewhere in this rule");
        }
    }
}
