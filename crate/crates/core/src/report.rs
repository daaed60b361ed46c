//! Invariant reports for stationary presentations and the side-by-side
//! comparison of two presentations.
//!
//! Every comparison here is a necessary-condition check: equal invariants
//! never prove order isomorphism of the underlying groups.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cohomology::{cohomology_basis, induced_cohomology_matrix, reduce, EdgeFunction};
use crate::dimension::{
    adjacency_matrix, check_simplicity, perron_data, signed_transfer_matrix, DimensionError,
    PerronData, SimplicityReport,
};
use crate::matrix::IntegerMatrix;
use crate::poly::{
    isolate_largest_root, isolated_roots_equal, refine_root_interval, IntPoly, RootInterval,
};
use crate::presentation::Presentation;

/// Width to which reported root intervals are refined.
pub fn report_root_width() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(100))
}

/// Invariants of the direct limit `lim (Z^n, M)` of one integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupInvariants {
    pub matrix: IntegerMatrix,
    pub determinant: BigInt,
    pub charpoly: IntPoly,
    /// Rational rank of `M^n`: the rank of the eventual range.
    pub eventual_rank: usize,
    /// Characteristic polynomial with all factors of `x` removed — the
    /// charpoly of `M` restricted to its eventual range.
    pub nonzero_charpoly: IntPoly,
    /// The eventual-range restriction has determinant of absolute value 1,
    /// so the limit group is a lattice `Z^rank`.
    pub unimodular: bool,
    pub description: String,
    /// Largest real root of the nonzero charpoly, isolated to width
    /// at most 1/100, when a real root exists.
    pub perron_root: Option<RootInterval>,
}

/// Strip all factors of `x` from a monic characteristic polynomial.
fn nonzero_factor(p: &IntPoly) -> IntPoly {
    let coeffs = p.coeffs();
    let first = coeffs.iter().position(|c| !c.is_zero());
    match first {
        Some(k) => IntPoly::from_big(coeffs[k..].to_vec()),
        None => IntPoly::zero(),
    }
}

fn describe_group(rank: usize, nonzero: &IntPoly, unimodular: bool) -> String {
    if rank == 0 {
        return "0".to_string();
    }
    if unimodular {
        return if rank == 1 {
            "Z".to_string()
        } else {
            format!("Z^{rank}")
        };
    }
    if rank == 1 {
        // nonzero factor is x - c
        let c = -nonzero.coeff(0);
        return format!("lim(Z, x{c}) = Z[1/{}]", c.abs());
    }
    format!("lim(Z^{rank}, {nonzero})")
}

/// Compute the limit-group invariants of a square integer matrix.
pub fn group_invariants(m: &IntegerMatrix) -> GroupInvariants {
    let charpoly = m.charpoly();
    let determinant = m.det();
    let eventual_rank = m.pow(m.rows()).rank();
    let nonzero_charpoly = nonzero_factor(&charpoly);
    let unimodular = nonzero_charpoly.coeff(0).abs().is_one();
    let description = describe_group(eventual_rank, &nonzero_charpoly, unimodular);
    let perron_root = isolate_largest_root(&nonzero_charpoly)
        .map(|iv| refine_root_interval(&nonzero_charpoly, &iv, &report_root_width()));
    GroupInvariants {
        matrix: m.clone(),
        determinant,
        charpoly,
        eventual_rank,
        nonzero_charpoly,
        unimodular,
        description,
        perron_root,
    }
}

/// Everything the tool knows about one stationary presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantsReport {
    /// Invariants of the adjacency-matrix dimension group.
    pub matrix_level: GroupInvariants,
    /// Signed transfer matrix (the pullback in the standard basis).
    pub signed_transfer: IntegerMatrix,
    /// Rank of `C(E, Z) / V`: edges - vertices + components.
    pub cohomology_rank: usize,
    /// Invariants of the induced map on cohomology in the cotree basis.
    pub bruschlinsky_level: GroupInvariants,
    /// Least positive exponent making the adjacency matrix positive.
    pub primitivity: Option<usize>,
    pub simplicity: SimplicityReport,
    /// Exact Perron data of the adjacency matrix, when primitive.
    pub perron: Option<PerronData>,
    /// Coordinates of the class of the constant function 1 in the cotree
    /// basis: the distinguished order unit of the cohomology group.
    pub order_unit: Vec<BigInt>,
}

pub fn invariants_report(p: &Presentation) -> Result<InvariantsReport, DimensionError> {
    if !p.is_stationary() {
        return Err(DimensionError::NotStationary);
    }
    let g = p.level(0);
    let rule = p.rule(0);
    let adjacency = adjacency_matrix(rule);
    let matrix_level = group_invariants(&adjacency);
    let induced = induced_cohomology_matrix(p, 0);
    let bruschlinsky_level = group_invariants(&induced);
    let basis = cohomology_basis(g);
    let ones = EdgeFunction::new(vec![BigInt::one(); g.edge_count()], g).unwrap();
    let order_unit = reduce(g, &basis, &ones);
    let primitivity = adjacency.primitivity().map_err(DimensionError::Matrix)?;
    let perron = match primitivity {
        Some(_) => {
            let mut data = perron_data(&adjacency)?;
            data.refine(&report_root_width());
            Some(data)
        }
        None => None,
    };
    Ok(InvariantsReport {
        matrix_level,
        signed_transfer: signed_transfer_matrix(rule),
        cohomology_rank: basis.rank(),
        bruschlinsky_level,
        primitivity,
        simplicity: check_simplicity(p),
        perron,
        order_unit,
    })
}

/// Side-by-side invariants of two presentations with match verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub left: InvariantsReport,
    pub right: InvariantsReport,
    /// Adjacency-matrix dimension groups share rank, nonzero charpoly and
    /// the unimodularity flag.
    pub matrix_group_match: bool,
    /// Cohomology groups share rank and induced nonzero charpoly, and the
    /// Perron roots agree as algebraic numbers when both exist.
    pub bruschlinsky_match: bool,
    /// Exact equality of the two Bruschlinsky Perron roots; `None` when
    /// either side has no real root to compare.
    pub perron_roots_equal: Option<bool>,
    pub note: String,
}

fn groups_match(a: &GroupInvariants, b: &GroupInvariants) -> bool {
    a.eventual_rank == b.eventual_rank
        && a.nonzero_charpoly == b.nonzero_charpoly
        && a.unimodular == b.unimodular
}

pub fn compare(p1: &Presentation, p2: &Presentation) -> Result<ComparisonReport, DimensionError> {
    let left = invariants_report(p1)?;
    let right = invariants_report(p2)?;
    let matrix_group_match = groups_match(&left.matrix_level, &right.matrix_level);
    let perron_roots_equal = match (
        &left.bruschlinsky_level.perron_root,
        &right.bruschlinsky_level.perron_root,
    ) {
        (Some(a), Some(b)) => Some(isolated_roots_equal(
            &left.bruschlinsky_level.nonzero_charpoly,
            a,
            &right.bruschlinsky_level.nonzero_charpoly,
            b,
        )),
        _ => None,
    };
    let bruschlinsky_match = left.cohomology_rank == right.cohomology_rank
        && groups_match(&left.bruschlinsky_level, &right.bruschlinsky_level)
        && perron_roots_equal.unwrap_or(true);
    Ok(ComparisonReport {
        left,
        right,
        matrix_group_match,
        bruschlinsky_match,
        perron_roots_equal,
        note: "necessary-condition check only: matching invariants do not prove order isomorphism"
            .to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_presentation;

    const DYADIC: &str = "\
solenoid v1
graph:
vertex v1
vertex v2
edge e1 v1 v2
edge e2 v2 v1
map:
vertex v1 -> v1
vertex v2 -> v1
edge e1 -> e1 e2
edge e2 -> e1 e2
";

    const FIBONACCI: &str = "\
solenoid v1
graph:
vertex p
edge a p p
edge b p p
map:
vertex p -> p
edge a -> a b
edge b -> a
";

    const EX4X: &str = "\
solenoid v1
graph:
vertex p
edge a p p
edge b p p
map:
vertex p -> p
edge a -> a a b
edge b -> a b
";

    #[test]
    fn dyadic_report() {
        let p = parse_presentation(DYADIC).unwrap();
        let r = invariants_report(&p).unwrap();
        assert_eq!(
            r.matrix_level.matrix,
            IntegerMatrix::from_i64(&[&[1, 1], &[1, 1]])
        );
        assert_eq!(r.matrix_level.eventual_rank, 1);
        assert_eq!(r.matrix_level.nonzero_charpoly, IntPoly::from_i64(&[-2, 1]));
        assert!(!r.matrix_level.unimodular);
        assert!(r.matrix_level.description.contains("Z[1/2]"));
        assert_eq!(r.cohomology_rank, 1);
        assert_eq!(
            r.bruschlinsky_level.matrix,
            IntegerMatrix::from_i64(&[&[2]])
        );
        assert!(r.bruschlinsky_level.description.contains("Z[1/2]"));
        assert_eq!(r.primitivity, Some(1));
        assert_eq!(r.order_unit, vec![BigInt::from(2)]);
    }

    #[test]
    fn fibonacci_report() {
        let p = parse_presentation(FIBONACCI).unwrap();
        let r = invariants_report(&p).unwrap();
        assert_eq!(
            r.matrix_level.matrix,
            IntegerMatrix::from_i64(&[&[1, 1], &[1, 0]])
        );
        assert_eq!(r.cohomology_rank, 2);
        assert!(r.matrix_level.unimodular);
        assert_eq!(r.matrix_level.description, "Z^2");
        assert!(r.perron.is_some());
        let width = r.perron.unwrap().interval.width();
        assert!(width <= report_root_width());
    }

    #[test]
    fn compare_dyadic_fibonacci() {
        let d = parse_presentation(DYADIC).unwrap();
        let f = parse_presentation(FIBONACCI).unwrap();
        let c = compare(&d, &f).unwrap();
        assert!(!c.matrix_group_match);
        assert!(!c.bruschlinsky_match);
        assert_eq!(c.perron_roots_equal, Some(false));
        assert_eq!(
            c.left.matrix_level.nonzero_charpoly,
            IntPoly::from_i64(&[-2, 1])
        );
        assert_eq!(
            c.right.matrix_level.nonzero_charpoly,
            IntPoly::from_i64(&[-1, -1, 1])
        );
    }

    #[test]
    fn compare_is_reflexive() {
        let p = parse_presentation(EX4X).unwrap();
        let c = compare(&p, &p).unwrap();
        assert!(c.matrix_group_match);
        assert!(c.bruschlinsky_match);
        assert_eq!(c.perron_roots_equal, Some(true));
    }

    #[test]
    fn group_descriptions() {
        let z2 = group_invariants(&IntegerMatrix::from_i64(&[&[2, 1], &[1, 1]]));
        assert_eq!(z2.description, "Z^2");
        let half = group_invariants(&IntegerMatrix::from_i64(&[&[2]]));
        assert_eq!(half.description, "lim(Z, x2) = Z[1/2]");
        let z = group_invariants(&IntegerMatrix::from_i64(&[&[1]]));
        assert_eq!(z.description, "Z");
    }

    #[test]
    fn group_invariants_without_real_roots() {
        // rotation-like signed matrix: charpoly x^2 + 1 has no real root
        let rot = group_invariants(&IntegerMatrix::from_i64(&[&[0, -1], &[1, 0]]));
        assert_eq!(rot.nonzero_charpoly, IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(rot.perron_root, None);
        assert_eq!(rot.eventual_rank, 2);
        assert!(rot.unimodular);
    }

    #[test]
    fn group_invariants_of_nilpotent_matrix() {
        let nil = group_invariants(&IntegerMatrix::from_i64(&[&[0, 1], &[0, 0]]));
        assert_eq!(nil.eventual_rank, 0);
        assert_eq!(nil.description, "0");
        assert_eq!(nil.perron_root, None);
    }
}
