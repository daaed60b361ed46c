//! Stationary dimension-group engine.
//!
//! Adjacency and signed transfer matrices of wrapping rules, primitivity
//! and the stationary Simplicity Condition, direct-limit element algebra,
//! and exact positivity through the left Perron eigenvector: the sign of an
//! element is the sign of an integer polynomial evaluated at the Perron
//! root, decided by Sturm refinement — never by floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::graph::{EdgeId, Sign};
use crate::matrix::{IntegerMatrix, MatrixError};
use crate::poly::{
    isolate_largest_root, refine_root_interval, sign_at_root, IntPoly, RootInterval,
};
use crate::presentation::{Presentation, WrappingRule};
use crate::DEFAULT_ITERATION_BOUND;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimensionError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(
        "matrix is not primitive; the limit order is only decided under the Simplicity Condition"
    )]
    NotPrimitive,
    #[error("operation requires a stationary presentation")]
    NotStationary,
    #[error("interpolation preconditions violated: some b_j - a_i is not >= 0 in the limit order")]
    PreconditionViolated,
    #[error("iteration bound {bound} exceeded; result inconclusive")]
    IterationBoundExceeded { bound: usize },
}

/// Unsigned letter-count matrix of a rule: entry (i, j) counts occurrences
/// of codomain edge j in the image word of domain edge i, ignoring
/// traversal direction.
pub fn adjacency_matrix(rule: &WrappingRule) -> IntegerMatrix {
    let mut m = IntegerMatrix::zero(rule.domain_edge_count(), rule.codomain_edge_count());
    for i in 0..rule.domain_edge_count() {
        for l in rule.word(EdgeId(i)).letters() {
            *m.get_mut(i, l.edge.0) += 1;
        }
    }
    m
}

/// Signed letter-count matrix: identical to the adjacency matrix on
/// all-positive rules, and the matrix of the cohomology pullback in the
/// standard basis in general.
pub fn signed_transfer_matrix(rule: &WrappingRule) -> IntegerMatrix {
    let mut m = IntegerMatrix::zero(rule.domain_edge_count(), rule.codomain_edge_count());
    for i in 0..rule.domain_edge_count() {
        for l in rule.word(EdgeId(i)).letters() {
            match l.sign {
                Sign::Plus => *m.get_mut(i, l.edge.0) += 1,
                Sign::Minus => *m.get_mut(i, l.edge.0) -= 1,
            }
        }
    }
    m
}

/// An element of the direct limit `lim (Z^n, M)`: a vector at a level,
/// subject to `(k, v) ~ (k+1, M v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitElement {
    pub level: usize,
    pub vector: Vec<BigInt>,
}

impl LimitElement {
    pub fn new(level: usize, vector: Vec<BigInt>) -> LimitElement {
        LimitElement { level, vector }
    }

    pub fn from_i64(level: usize, vector: &[i64]) -> LimitElement {
        LimitElement {
            level,
            vector: vector.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }
}

/// Sign classification of a limit element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignClass {
    Zero,
    Positive,
    Negative,
    Infinitesimal,
}

impl SignClass {
    pub fn name(&self) -> &'static str {
        match self {
            SignClass::Zero => "zero",
            SignClass::Positive => "positive",
            SignClass::Negative => "negative",
            SignClass::Infinitesimal => "infinitesimal",
        }
    }
}

fn check_dim(m: &IntegerMatrix, a: &LimitElement) -> Result<(), DimensionError> {
    if a.vector.len() != m.rows() {
        return Err(DimensionError::DimensionMismatch {
            expected: m.rows(),
            got: a.vector.len(),
        });
    }
    Ok(())
}

/// Whether the element represents 0: the kernel chain of `M` stabilizes by
/// the dimension, so `(k, v) ~ 0` exactly when `M^n v = 0`.
pub fn is_zero_class(m: &IntegerMatrix, a: &LimitElement) -> Result<bool, DimensionError> {
    check_dim(m, a)?;
    let n = m.rows();
    let image = m.pow(n).mul_vec(&a.vector);
    Ok(image.iter().all(|x| x.is_zero()))
}

/// Equality in the direct limit: lift both to a common level and compare
/// modulo the eventual kernel.
pub fn limit_equal(
    m: &IntegerMatrix,
    a: &LimitElement,
    b: &LimitElement,
) -> Result<bool, DimensionError> {
    check_dim(m, a)?;
    check_dim(m, b)?;
    let top = a.level.max(b.level);
    let va = m.pow(top - a.level).mul_vec(&a.vector);
    let vb = m.pow(top - b.level).mul_vec(&b.vector);
    let diff: Vec<BigInt> = va.iter().zip(&vb).map(|(x, y)| x - y).collect();
    is_zero_class(m, &LimitElement::new(top, diff))
}

/// Sum, computed at the higher of the two levels.
pub fn limit_add(
    m: &IntegerMatrix,
    a: &LimitElement,
    b: &LimitElement,
) -> Result<LimitElement, DimensionError> {
    check_dim(m, a)?;
    check_dim(m, b)?;
    let top = a.level.max(b.level);
    let va = m.pow(top - a.level).mul_vec(&a.vector);
    let vb = m.pow(top - b.level).mul_vec(&b.vector);
    Ok(LimitElement::new(
        top,
        va.iter().zip(&vb).map(|(x, y)| x + y).collect(),
    ))
}

/// Integer scaling; the level does not move.
pub fn limit_scale(c: &BigInt, a: &LimitElement) -> LimitElement {
    LimitElement::new(a.level, a.vector.iter().map(|x| x * c).collect())
}

/// Exact Perron data of a primitive matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerronData {
    /// `det(xI - M)`, monic.
    pub charpoly: IntPoly,
    /// Rational interval isolating the largest real root.
    pub interval: RootInterval,
    /// Left eigenvector as integer polynomials in the root, sign-normalized
    /// so every entry evaluates positively there.
    pub eigenvector: Vec<IntPoly>,
}

impl PerronData {
    /// Shrink the isolating interval to the requested width.
    pub fn refine(&mut self, width: &BigRational) {
        self.interval = refine_root_interval(&self.charpoly, &self.interval, width);
    }

    /// Sign of `v . eigenvector` at the Perron root: -1, 0 or +1.
    pub fn functional_sign(&self, v: &[BigInt]) -> i8 {
        assert_eq!(v.len(), self.eigenvector.len(), "dimension mismatch");
        let mut q = IntPoly::zero();
        for (c, w) in v.iter().zip(&self.eigenvector) {
            q = q.add(&w.scale(c));
        }
        let q = q.rem_mod(&self.charpoly);
        sign_at_root(&self.charpoly, &self.interval, &q)
    }
}

/// Compute Perron data: exact characteristic polynomial, Sturm-isolated
/// interval for the largest real root, and a row of the adjugate of
/// `xI - M` as the left eigenvector.
pub fn perron_data(m: &IntegerMatrix) -> Result<PerronData, DimensionError> {
    if m.primitivity()?.is_none() {
        return Err(DimensionError::NotPrimitive);
    }
    let charpoly = m.charpoly();
    let interval =
        isolate_largest_root(&charpoly).expect("a primitive matrix has a real Perron root");
    let adj = m.adjugate_of_char_matrix();
    let row = adj
        .into_iter()
        .find(|row| row.iter().any(|p| !p.is_zero()))
        .expect("adjugate of the characteristic matrix is nonzero");
    let first = row
        .iter()
        .find(|p| !p.is_zero())
        .cloned()
        .expect("row has a nonzero entry");
    let eigenvector = if sign_at_root(&charpoly, &interval, &first) < 0 {
        row.iter().map(|p| p.neg()).collect()
    } else {
        row
    };
    Ok(PerronData {
        charpoly,
        interval,
        eigenvector,
    })
}

/// Exact sign of a limit element over a primitive matrix.
///
/// Soundness: with `w` the left Perron eigenvector and `q = w . v`, a
/// nonzero class lies in the cone exactly when `q > 0` at the Perron root,
/// since `M^m v >= 0` forces `q >= 0` and `q = 0` forces `M^m v = 0`.
pub fn limit_sign(m: &IntegerMatrix, a: &LimitElement) -> Result<SignClass, DimensionError> {
    let data = perron_data(m)?;
    limit_sign_with(m, &data, a)
}

/// As [`limit_sign`], reusing precomputed Perron data.
pub fn limit_sign_with(
    m: &IntegerMatrix,
    data: &PerronData,
    a: &LimitElement,
) -> Result<SignClass, DimensionError> {
    check_dim(m, a)?;
    if is_zero_class(m, a)? {
        return Ok(SignClass::Zero);
    }
    Ok(match data.functional_sign(&a.vector) {
        0 => SignClass::Infinitesimal,
        1 => SignClass::Positive,
        _ => SignClass::Negative,
    })
}

/// Riesz interpolation with the default iteration bound.
pub fn interpolate(
    m: &IntegerMatrix,
    a1: &LimitElement,
    a2: &LimitElement,
    b1: &LimitElement,
    b2: &LimitElement,
) -> Result<LimitElement, DimensionError> {
    interpolate_with_bound(m, a1, a2, b1, b2, DEFAULT_ITERATION_BOUND)
}

/// Find `c` with `a_i <= c <= b_j` in the limit order.
///
/// Requires every `b_j - a_i` to be positive or zero.  All four elements
/// are lifted until the differences are entrywise nonnegative (guaranteed
/// to happen for primitive `M`), where the entrywise maximum of the `a_i`
/// interpolates in the simplicial order and hence in the limit order.
pub fn interpolate_with_bound(
    m: &IntegerMatrix,
    a1: &LimitElement,
    a2: &LimitElement,
    b1: &LimitElement,
    b2: &LimitElement,
    bound: usize,
) -> Result<LimitElement, DimensionError> {
    let data = perron_data(m)?;
    for a in [a1, a2] {
        for b in [b1, b2] {
            let top = a.level.max(b.level);
            let va = m.pow(top - a.level).mul_vec(&a.vector);
            let vb = m.pow(top - b.level).mul_vec(&b.vector);
            let diff = LimitElement::new(top, vb.iter().zip(&va).map(|(x, y)| x - y).collect());
            match limit_sign_with(m, &data, &diff)? {
                SignClass::Positive | SignClass::Zero => {}
                _ => return Err(DimensionError::PreconditionViolated),
            }
        }
    }
    let top = a1.level.max(a2.level).max(b1.level).max(b2.level);
    let mut lifted: Vec<Vec<BigInt>> = [a1, a2, b1, b2]
        .iter()
        .map(|x| m.pow(top - x.level).mul_vec(&x.vector))
        .collect();
    for step in 0..=bound {
        let dominated = (0..2)
            .all(|ai| (2..4).all(|bj| lifted[ai].iter().zip(&lifted[bj]).all(|(a, b)| a <= b)));
        if dominated {
            let c: Vec<BigInt> = lifted[0]
                .iter()
                .zip(&lifted[1])
                .map(|(x, y)| x.max(y).clone())
                .collect();
            return Ok(LimitElement::new(top + step, c));
        }
        for v in &mut lifted {
            *v = m.mul_vec(v);
        }
    }
    Err(DimensionError::IterationBoundExceeded { bound })
}

/// Outcome of the Simplicity Condition check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplicityVerdict {
    Holds,
    Fails,
    Inconclusive,
}

impl SimplicityVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            SimplicityVerdict::Holds => "holds",
            SimplicityVerdict::Fails => "fails",
            SimplicityVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityReport {
    pub verdict: SimplicityVerdict,
    pub detail: String,
}

/// Check the Simplicity Condition.
///
/// Stationary: holds exactly when the adjacency matrix is primitive (a
/// positive power means every edge image eventually covers the whole
/// graph).  Tower: for each level `k`, the composed covering counts down
/// from the top level must be entrywise positive; a zero column is a
/// definitive failure (that edge is missed by every higher level), while
/// scattered zeros only mean the finite tower is too short to decide.
pub fn check_simplicity(p: &Presentation) -> SimplicityReport {
    if p.is_stationary() {
        let m = adjacency_matrix(p.rule(0));
        return match m.primitivity() {
            Ok(Some(exp)) => SimplicityReport {
                verdict: SimplicityVerdict::Holds,
                detail: format!("adjacency matrix is primitive with exponent {exp}"),
            },
            Ok(None) => SimplicityReport {
                verdict: SimplicityVerdict::Fails,
                detail: "adjacency matrix is not primitive".to_string(),
            },
            Err(e) => SimplicityReport {
                verdict: SimplicityVerdict::Fails,
                detail: format!("adjacency matrix is invalid: {e}"),
            },
        };
    }
    let top = p.level_count() - 1;
    if p.rule_count() == 0 {
        return SimplicityReport {
            verdict: SimplicityVerdict::Inconclusive,
            detail: "tower has a single level; nothing to check".to_string(),
        };
    }
    let mut inconclusive_at = Vec::new();
    for k in 0..top {
        // Covering counts of level `top` edges over level `k` edges.
        let mut product = adjacency_matrix(p.rule(top - 1));
        for step in (k..top - 1).rev() {
            product = product.mul(&adjacency_matrix(p.rule(step)));
        }
        if product.is_strictly_positive() {
            continue;
        }
        if let Some(j) = product.zero_column() {
            let name = p.level(k).edge_name(EdgeId(j)).to_string();
            return SimplicityReport {
                verdict: SimplicityVerdict::Fails,
                detail: format!("edge `{name}` of level {k} is covered by no edge of level {top}"),
            };
        }
        inconclusive_at.push(k);
    }
    if inconclusive_at.is_empty() {
        SimplicityReport {
            verdict: SimplicityVerdict::Holds,
            detail: format!("every level-{top} edge covers each lower level"),
        }
    } else {
        SimplicityReport {
            verdict: SimplicityVerdict::Inconclusive,
            detail: format!("tower too short to certify coverage of level(s) {inconclusive_at:?}"),
        }
    }
}
