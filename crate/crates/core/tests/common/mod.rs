//! Seeded random generators shared by the integration suites.
#![allow(dead_code)] // each test target uses its own subset

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use solcalc_core::graph::{EdgeId, Graph, Letter, Sign, VertexId, Word};
use solcalc_core::matrix::IntegerMatrix;
use solcalc_core::presentation::{Presentation, WrappingRule};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut StdRng, n: usize, lo: i64, hi: i64) -> Vec<BigInt> {
    (0..n)
        .map(|_| BigInt::from(rng.gen_range(lo..=hi)))
        .collect()
}

/// Random nonnegative square matrix that is primitive.
pub fn random_primitive_matrix(rng: &mut StdRng, max_n: usize, max_entry: i64) -> IntegerMatrix {
    loop {
        let n = rng.gen_range(1..=max_n);
        let mut m = IntegerMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                if rng.gen_bool(0.55) {
                    *m.get_mut(i, j) = BigInt::from(rng.gen_range(1..=max_entry));
                }
            }
        }
        if m.primitivity().unwrap().is_some() {
            return m;
        }
    }
}

/// Random nondegenerate strongly connected graph.
pub fn random_strongly_connected_graph(rng: &mut StdRng, max_v: usize, max_e: usize) -> Graph {
    loop {
        let n = rng.gen_range(1..=max_v);
        let e = rng.gen_range(n..=max_e.max(n));
        let vertices: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
        let mut g = Graph::new(&[], &[]).unwrap();
        for v in &vertices {
            g.add_vertex(v).unwrap();
        }
        for i in 0..e {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            g.add_edge(&format!("g{i}"), &vertices[a], &vertices[b])
                .unwrap();
        }
        if g.is_strongly_connected() && g.degenerate_vertices().is_empty() {
            return g;
        }
    }
}

fn directed_path(g: &Graph, from: VertexId, to: VertexId) -> Vec<EdgeId> {
    let mut prev: Vec<Option<(VertexId, EdgeId)>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[from.0] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for e in g.out_edges(v) {
            let next = g.term(e);
            if !seen[next.0] {
                seen[next.0] = true;
                prev[next.0] = Some((v, e));
                queue.push_back(next);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let (p, e) = prev[cur.0].expect("strongly connected");
        path.push(e);
        cur = p;
    }
    path.reverse();
    path
}

fn signed_path(g: &Graph, from: VertexId, to: VertexId) -> Vec<Letter> {
    let mut prev: Vec<Option<(VertexId, Letter)>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[from.0] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for e in g.edge_ids() {
            for l in [Letter::new(e, Sign::Plus), Letter::new(e, Sign::Minus)] {
                if l.start(g) == v && !seen[l.end(g).0] {
                    seen[l.end(g).0] = true;
                    prev[l.end(g).0] = Some((v, l));
                    queue.push_back(l.end(g));
                }
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let (p, l) = prev[cur.0].expect("connected");
        path.push(l);
        cur = p;
    }
    path.reverse();
    path
}

fn random_positive_word(rng: &mut StdRng, g: &Graph, from: VertexId, to: VertexId) -> Word {
    let mut letters = Vec::new();
    let mut cur = from;
    for _ in 0..rng.gen_range(0..3) {
        let outs = g.out_edges(cur);
        let e = outs[rng.gen_range(0..outs.len())];
        letters.push(Letter::new(e, Sign::Plus));
        cur = g.term(e);
    }
    letters.extend(
        directed_path(g, cur, to)
            .into_iter()
            .map(|e| Letter::new(e, Sign::Plus)),
    );
    if letters.is_empty() {
        // from == to and the walk was empty: go around once
        let outs = g.out_edges(from);
        let e = outs[rng.gen_range(0..outs.len())];
        letters.push(Letter::new(e, Sign::Plus));
        letters.extend(
            directed_path(g, g.term(e), to)
                .into_iter()
                .map(|e| Letter::new(e, Sign::Plus)),
        );
    }
    Word::new(letters, g).expect("walk chains by construction")
}

fn random_signed_word(rng: &mut StdRng, g: &Graph, from: VertexId, to: VertexId) -> Word {
    let mut letters = Vec::new();
    let mut cur = from;
    for _ in 0..rng.gen_range(0..3) {
        let moves: Vec<Letter> = g
            .edge_ids()
            .flat_map(|e| [Letter::new(e, Sign::Plus), Letter::new(e, Sign::Minus)])
            .filter(|l| l.start(g) == cur)
            .collect();
        let l = moves[rng.gen_range(0..moves.len())];
        letters.push(l);
        cur = l.end(g);
    }
    letters.extend(signed_path(g, cur, to));
    if letters.is_empty() {
        let outs = g.out_edges(from);
        let e = outs[rng.gen_range(0..outs.len())];
        letters.push(Letter::new(e, Sign::Plus));
        letters.extend(signed_path(g, g.term(e), to));
    }
    Word::new(letters, g).expect("walk chains by construction")
}

fn random_presentation_with(
    rng: &mut StdRng,
    max_v: usize,
    max_e: usize,
    word: impl Fn(&mut StdRng, &Graph, VertexId, VertexId) -> Word,
) -> Presentation {
    let g = random_strongly_connected_graph(rng, max_v, max_e);
    let vmap: Vec<VertexId> = (0..g.vertex_count())
        .map(|_| VertexId(rng.gen_range(0..g.vertex_count())))
        .collect();
    let words: Vec<Word> = g
        .edge_ids()
        .map(|e| word(rng, &g, vmap[g.init(e).0], vmap[g.term(e).0]))
        .collect();
    let rule = WrappingRule::new(&g, &g, words, vmap).expect("construction satisfies Markov");
    Presentation::stationary(g, rule).unwrap()
}

/// Random stationary presentation with all-positive words.
pub fn random_positive_presentation(rng: &mut StdRng, max_v: usize, max_e: usize) -> Presentation {
    random_presentation_with(rng, max_v, max_e, random_positive_word)
}

/// Random stationary presentation with signed words.
pub fn random_signed_presentation(rng: &mut StdRng, max_v: usize, max_e: usize) -> Presentation {
    random_presentation_with(rng, max_v, max_e, random_signed_word)
}

/// Visit every directed graph with `1..=max_edges` edges and at most as
/// many vertices as edges (vertex and edge names `w0..`, `g0..`).
pub fn for_each_small_graph(max_edges: usize, mut f: impl FnMut(&Graph)) {
    for e in 1..=max_edges {
        for v in 1..=e {
            let vertices: Vec<String> = (0..v).map(|i| format!("w{i}")).collect();
            let mut incidence = vec![(0usize, 0usize); e];
            loop {
                let mut g = Graph::new(&[], &[]).unwrap();
                for name in &vertices {
                    g.add_vertex(name).unwrap();
                }
                for (i, &(a, b)) in incidence.iter().enumerate() {
                    g.add_edge(&format!("g{i}"), &vertices[a], &vertices[b])
                        .unwrap();
                }
                f(&g);
                // odometer over incidence assignments
                let mut at = 0;
                loop {
                    if at == e {
                        break;
                    }
                    incidence[at].1 += 1;
                    if incidence[at].1 < v {
                        break;
                    }
                    incidence[at].1 = 0;
                    incidence[at].0 += 1;
                    if incidence[at].0 < v {
                        break;
                    }
                    incidence[at].0 = 0;
                    at += 1;
                }
                if at == e {
                    break;
                }
            }
        }
    }
}
