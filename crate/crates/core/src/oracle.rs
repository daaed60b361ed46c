//! Brute-force cross-checks: exponential but transparent.
//!
//! These live in the shipped library, not only in tests, so the
//! command-line tool can offer `--oracle` cross-verification.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cohomology::EdgeFunction;
use crate::graph::{Graph, VertexId};
use crate::matrix::IntegerMatrix;

/// Minimum `f`-sum over all directed closed walks of length at most
/// `max_len`, by exhaustive walk enumeration.  `None` when the graph has no
/// directed cycle of that length.
pub fn oracle_cycle_min(g: &Graph, f: &EdgeFunction, max_len: usize) -> Option<BigInt> {
    assert_eq!(f.len(), g.edge_count(), "edge count mismatch");
    let mut best: Option<BigInt> = None;
    for start in g.vertices() {
        walk(g, f, start, start, max_len, &BigInt::zero(), &mut best);
    }
    best
}

fn walk(
    g: &Graph,
    f: &EdgeFunction,
    start: VertexId,
    at: VertexId,
    remaining: usize,
    sum: &BigInt,
    best: &mut Option<BigInt>,
) {
    if remaining == 0 {
        return;
    }
    for e in g.out_edges(at) {
        let next_sum = sum + f.get(e);
        let next = g.term(e);
        if next == start {
            match best {
                Some(b) if *b <= next_sum => {}
                _ => *best = Some(next_sum.clone()),
            }
        }
        walk(g, f, start, next, remaining - 1, &next_sum, best);
    }
}

/// Verdict of the iteration oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleSign {
    Positive,
    Negative,
    Zero,
    Unknown,
}

impl OracleSign {
    pub fn name(&self) -> &'static str {
        match self {
            OracleSign::Positive => "positive",
            OracleSign::Negative => "negative",
            OracleSign::Zero => "zero",
            OracleSign::Unknown => "unknown",
        }
    }
}

/// Iterate `M^m v` for `m <= bound`; report on the first hit that is
/// entrywise nonnegative (positive), entrywise nonpositive (negative) or
/// zero.  `Unknown` when the bound runs out on mixed-sign vectors.
pub fn oracle_limit_sign(m: &IntegerMatrix, v: &[BigInt], bound: usize) -> OracleSign {
    assert!(m.is_square() && m.rows() == v.len(), "dimension mismatch");
    assert!(m.is_nonnegative(), "oracle needs a nonnegative matrix");
    let mut cur = v.to_vec();
    for _ in 0..=bound {
        if cur.iter().all(|x| x.is_zero()) {
            return OracleSign::Zero;
        }
        if cur.iter().all(|x| !x.is_negative()) {
            return OracleSign::Positive;
        }
        if cur.iter().all(|x| !x.is_positive()) {
            return OracleSign::Negative;
        }
        cur = m.mul_vec(&cur);
    }
    OracleSign::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dyadic_graph() -> Graph {
        Graph::new(&["v1", "v2"], &[("e1", "v1", "v2"), ("e2", "v2", "v1")]).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cycle_min_dyadic() {
        let g = dyadic_graph();
        assert_eq!(
            oracle_cycle_min(&g, &EdgeFunction::from_i64(&[0, -1]), 2),
            Some(BigInt::from(-1))
        );
        assert_eq!(
            oracle_cycle_min(&g, &EdgeFunction::from_i64(&[1, -1]), 4),
            Some(BigInt::from(0))
        );
        assert_eq!(
            oracle_cycle_min(&g, &EdgeFunction::from_i64(&[2, 1]), 4),
            Some(BigInt::from(3))
        );
        // no closed walk of length 1 in the dyadic graph
        assert_eq!(
            oracle_cycle_min(&g, &EdgeFunction::from_i64(&[1, 1]), 1),
            None
        );
    }

    #[test]
    fn cycle_min_nonnegative_function() {
        let g = Graph::new(&["p"], &[("a", "p", "p"), ("b", "p", "p")]).unwrap();
        let m = oracle_cycle_min(&g, &EdgeFunction::from_i64(&[2, 3]), 3).unwrap();
        assert!(m >= BigInt::zero());
        assert_eq!(m, BigInt::from(2));
    }

    #[test]
    fn iteration_oracle_fibonacci() {
        let m = IntegerMatrix::from_i64(&[&[1, 1], &[1, 0]]);
        assert_eq!(
            oracle_limit_sign(&m, &big(&[1, -2]), 8),
            OracleSign::Negative
        );
        assert_eq!(
            oracle_limit_sign(&m, &big(&[2, -3]), 8),
            OracleSign::Positive
        );
        assert_eq!(
            oracle_limit_sign(&m, &big(&[1, 0]), 8),
            OracleSign::Positive
        );
    }

    #[test]
    fn iteration_oracle_zero_and_unknown() {
        let dyadic = IntegerMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(
            oracle_limit_sign(&dyadic, &big(&[1, -1]), 1),
            OracleSign::Zero
        );

        // permutation matrix: (1,-1) alternates forever
        let perm = IntegerMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            oracle_limit_sign(&perm, &big(&[1, -1]), 16),
            OracleSign::Unknown
        );
    }
}
