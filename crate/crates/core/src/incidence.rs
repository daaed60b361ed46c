//! Brute-force reconstruction of incidence data.
//!
//! Some presentations are stated only as substitution words (a figure fixes
//! the graph, the text does not).  Given edge names, the unsigned letter
//! sequences and a vertex count, this module enumerates every endpoint
//! assignment, letter signing and vertex map whose stationary presentation
//! chains, is Markov compatible, and passes full validation — so anything
//! returned here survives `validate()` unchanged.  Results are
//! deduplicated up to vertex relabeling and returned in a deterministic
//! lexicographic order, marked as inferred.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Graph, Letter, Sign, VertexId, Word};
use crate::presentation::{Presentation, WrappingRule};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IncidenceError {
    #[error("raw word for edge `{0}` is empty")]
    EmptyWord(String),
    #[error("raw word mentions unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("vertex count must be positive")]
    NoVertices,
    #[error("expected one raw word per edge ({expected} edges, {got} words)")]
    WordCountMismatch { expected: usize, got: usize },
}

/// Flat encoding of one candidate, used for dedup and ordering.
type Key = (Vec<(usize, usize)>, Vec<Vec<u8>>, Vec<usize>);

/// Enumerate all valid stationary presentations with the given edge names,
/// unsigned image words and vertex count.
pub fn solve_incidence(
    edge_names: &[&str],
    raw_words: &[Vec<&str>],
    vertex_count: usize,
) -> Result<Vec<Presentation>, IncidenceError> {
    if vertex_count == 0 {
        return Err(IncidenceError::NoVertices);
    }
    if raw_words.len() != edge_names.len() {
        return Err(IncidenceError::WordCountMismatch {
            expected: edge_names.len(),
            got: raw_words.len(),
        });
    }
    let index: BTreeMap<&str, usize> = edge_names
        .iter()
        .enumerate()
        .map(|(i, &n)| (n, i))
        .collect();
    let mut words_idx: Vec<Vec<usize>> = Vec::with_capacity(raw_words.len());
    for (e, w) in raw_words.iter().enumerate() {
        if w.is_empty() {
            return Err(IncidenceError::EmptyWord(edge_names[e].to_string()));
        }
        let mut out = Vec::with_capacity(w.len());
        for name in w {
            out.push(
                *index
                    .get(name)
                    .ok_or_else(|| IncidenceError::UnknownEdge(name.to_string()))?,
            );
        }
        words_idx.push(out);
    }

    let n_edges = edge_names.len();
    let vertex_names: Vec<String> = (0..vertex_count).map(|i| format!("u{i}")).collect();

    let mut canonical: BTreeMap<Key, Presentation> = BTreeMap::new();
    // Endpoint assignment: for each edge an (init, term) pair.
    let mut incidence = vec![(0usize, 0usize); n_edges];
    enumerate_incidences(0, vertex_count, &mut incidence, &mut |incidence| {
        collect_solutions(
            edge_names,
            &vertex_names,
            &words_idx,
            incidence,
            vertex_count,
            &mut canonical,
        );
    });
    Ok(canonical.into_values().collect())
}

fn enumerate_incidences(
    at: usize,
    vertex_count: usize,
    incidence: &mut Vec<(usize, usize)>,
    f: &mut impl FnMut(&[(usize, usize)]),
) {
    if at == incidence.len() {
        f(incidence);
        return;
    }
    for init in 0..vertex_count {
        for term in 0..vertex_count {
            incidence[at] = (init, term);
            enumerate_incidences(at + 1, vertex_count, incidence, f);
        }
    }
}

fn collect_solutions(
    edge_names: &[&str],
    vertex_names: &[String],
    words_idx: &[Vec<usize>],
    incidence: &[(usize, usize)],
    vertex_count: usize,
    canonical: &mut BTreeMap<Key, Presentation>,
) {
    // For a fixed incidence, a word's chaining depends only on its own
    // letter signs, so feasible signings are enumerated per word and then
    // combined through the vertex-map constraints.
    let start = |e: usize, s: Sign| match s {
        Sign::Plus => incidence[e].0,
        Sign::Minus => incidence[e].1,
    };
    let end = |e: usize, s: Sign| match s {
        Sign::Plus => incidence[e].1,
        Sign::Minus => incidence[e].0,
    };
    let mut per_word: Vec<Vec<(Vec<Sign>, usize, usize)>> = Vec::with_capacity(words_idx.len());
    for word in words_idx {
        assert!(
            word.len() <= 24,
            "sign enumeration over words this long is infeasible"
        );
        let mut feasible = Vec::new();
        for mask in 0u32..(1 << word.len()) {
            let signs: Vec<Sign> = (0..word.len())
                .map(|i| {
                    if mask >> i & 1 == 0 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                })
                .collect();
            let chains = (0..word.len() - 1)
                .all(|i| end(word[i], signs[i]) == start(word[i + 1], signs[i + 1]));
            if chains {
                let s = start(word[0], signs[0]);
                let t = end(word[word.len() - 1], signs[word.len() - 1]);
                feasible.push((signs, s, t));
            }
        }
        if feasible.is_empty() {
            return;
        }
        per_word.push(feasible);
    }

    let mut choice = vec![0usize; words_idx.len()];
    loop {
        // Vertex map forced by Markov compatibility; every vertex incident
        // to an edge is constrained, and isolated vertices are degenerate
        // and fail validation anyway.
        let mut vmap: Vec<Option<usize>> = vec![None; vertex_count];
        let mut consistent = true;
        for (e, &c) in choice.iter().enumerate() {
            let (_, s, t) = &per_word[e][c];
            for (v, img) in [(incidence[e].0, *s), (incidence[e].1, *t)] {
                match vmap[v] {
                    None => vmap[v] = Some(img),
                    Some(prev) if prev == img => {}
                    Some(_) => {
                        consistent = false;
                        break;
                    }
                }
            }
            if !consistent {
                break;
            }
        }
        if consistent && vmap.iter().all(|m| m.is_some()) {
            let vmap: Vec<usize> = vmap.into_iter().map(|m| m.unwrap()).collect();
            try_solution(
                edge_names,
                vertex_names,
                words_idx,
                incidence,
                &choice,
                &per_word,
                &vmap,
                canonical,
            );
        }
        // advance the per-word choice vector
        let mut i = 0;
        loop {
            if i == choice.len() {
                return;
            }
            choice[i] += 1;
            if choice[i] < per_word[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn try_solution(
    edge_names: &[&str],
    vertex_names: &[String],
    words_idx: &[Vec<usize>],
    incidence: &[(usize, usize)],
    choice: &[usize],
    per_word: &[Vec<(Vec<Sign>, usize, usize)>],
    vmap: &[usize],
    canonical: &mut BTreeMap<Key, Presentation>,
) {
    let vertex_count = vertex_names.len();
    let mut g = Graph::new(&[], &[]).unwrap();
    for name in vertex_names {
        g.add_vertex(name).unwrap();
    }
    for (e, name) in edge_names.iter().enumerate() {
        g.add_edge(
            name,
            &vertex_names[incidence[e].0],
            &vertex_names[incidence[e].1],
        )
        .unwrap();
    }
    let words: Vec<Word> = words_idx
        .iter()
        .enumerate()
        .map(|(e, w)| {
            let signs = &per_word[e][choice[e]].0;
            Word::from_letters_unchecked(
                w.iter()
                    .zip(signs)
                    .map(|(&x, &s)| Letter::new(crate::graph::EdgeId(x), s))
                    .collect(),
            )
        })
        .collect();
    let rule = match WrappingRule::new(
        &g,
        &g,
        words.clone(),
        vmap.iter().map(|&v| VertexId(v)).collect(),
    ) {
        Ok(r) => r,
        Err(_) => return,
    };
    let p = match Presentation::stationary(g, rule) {
        Ok(p) => p.mark_inferred(),
        Err(_) => return,
    };
    if !p.validate().all_passed() {
        return;
    }

    // Canonicalize up to vertex relabeling: minimize the encoding over all
    // vertex permutations.
    let signs_enc: Vec<Vec<u8>> = words_idx
        .iter()
        .enumerate()
        .map(|(e, _)| {
            per_word[e][choice[e]]
                .0
                .iter()
                .map(|&s| if s == Sign::Plus { 0 } else { 1 })
                .collect()
        })
        .collect();
    let mut best: Option<Key> = None;
    let mut perm: Vec<usize> = (0..vertex_count).collect();
    permutations(&mut perm, 0, &mut |perm| {
        let inc: Vec<(usize, usize)> = incidence.iter().map(|&(i, t)| (perm[i], perm[t])).collect();
        let mut vm = vec![0usize; vertex_count];
        for (v, &img) in vmap.iter().enumerate() {
            vm[perm[v]] = perm[img];
        }
        let key = (inc, signs_enc.clone(), vm);
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
    });
    let key = best.unwrap();
    canonical
        .entry(key.clone())
        .or_insert_with(|| rebuild_from_key(edge_names, vertex_names, words_idx, &key));
}

fn permutations(perm: &mut Vec<usize>, at: usize, f: &mut impl FnMut(&[usize])) {
    if at == perm.len() {
        f(perm);
        return;
    }
    for i in at..perm.len() {
        perm.swap(at, i);
        permutations(perm, at + 1, f);
        perm.swap(at, i);
    }
}

fn rebuild_from_key(
    edge_names: &[&str],
    vertex_names: &[String],
    words_idx: &[Vec<usize>],
    key: &Key,
) -> Presentation {
    let (incidence, signs, vmap) = key;
    let mut g = Graph::new(&[], &[]).unwrap();
    for name in vertex_names {
        g.add_vertex(name).unwrap();
    }
    for (e, name) in edge_names.iter().enumerate() {
        g.add_edge(
            name,
            &vertex_names[incidence[e].0],
            &vertex_names[incidence[e].1],
        )
        .unwrap();
    }
    let words: Vec<Word> = words_idx
        .iter()
        .enumerate()
        .map(|(e, w)| {
            Word::from_letters_unchecked(
                w.iter()
                    .zip(&signs[e])
                    .map(|(&x, &s)| {
                        Letter::new(
                            crate::graph::EdgeId(x),
                            if s == 0 { Sign::Plus } else { Sign::Minus },
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    let rule = WrappingRule::new(&g, &g, words, vmap.iter().map(|&v| VertexId(v)).collect())
        .expect("canonical relabeling preserves validity");
    Presentation::stationary(g, rule)
        .expect("canonical relabeling preserves validity")
        .mark_inferred()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_words_admit_unique_all_positive_solution() {
        // a -> aab, b -> ab on a single vertex
        let sols = solve_incidence(&["a", "b"], &[vec!["a", "a", "b"], vec!["a", "b"]], 1).unwrap();
        assert!(!sols.is_empty());
        let positive: Vec<_> = sols.iter().filter(|p| p.is_all_positive()).collect();
        assert_eq!(positive.len(), 1);
        let p = positive[0];
        assert!(p.is_inferred());
        assert_eq!(p.level(0).vertex_count(), 1);
        assert!(p.validate().all_passed());
    }

    #[test]
    fn trivial_rename_has_solution() {
        let sols = solve_incidence(&["a", "b"], &[vec!["b"], vec!["a"]], 1).unwrap();
        assert!(!sols.is_empty());
    }

    #[test]
    fn every_solution_validates() {
        let sols = solve_incidence(
            &["alpha", "beta", "gamma"],
            &[
                vec!["gamma", "alpha", "beta"],
                vec!["gamma"],
                vec!["beta", "gamma", "alpha", "beta"],
            ],
            2,
        )
        .unwrap();
        assert!(!sols.is_empty(), "the two-vertex words admit a solution");
        for p in &sols {
            assert!(p.validate().all_passed());
            assert!(p.is_inferred());
        }
    }

    #[test]
    fn no_solution_is_empty_list() {
        // a -> a a with a single vertex at sign combinations: a+a+ chains,
        // so pick something impossible instead: two vertices, word "a" for
        // an edge forced to be a loop and a non-loop at once cannot be
        // stated directly; use chaining failure: a -> a a where every
        // incidence with 2 vertices and connectivity fails validation,
        // leaves only loop solutions at one vertex of the two, which are
        // disconnected and filtered.
        let sols = solve_incidence(&["a"], &[vec!["a", "a"]], 2).unwrap();
        assert!(sols.is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            solve_incidence(&["a"], &[vec![]], 1),
            Err(IncidenceError::EmptyWord("a".into()))
        );
        assert_eq!(
            solve_incidence(&["a"], &[vec!["z"]], 1),
            Err(IncidenceError::UnknownEdge("z".into()))
        );
        assert_eq!(
            solve_incidence(&["a"], &[vec!["a"]], 0),
            Err(IncidenceError::NoVertices)
        );
    }
}
