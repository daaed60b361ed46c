//! Integer polynomials and exact real-root machinery.
//!
//! Sign verdicts about algebraic numbers are made through Sturm sequences
//! and rational interval refinement only; no floating point anywhere.
//!
//! The central primitives:
//!
//! - [`IntPoly`]: dense integer polynomial.
//! - [`SturmChain`]: distinct-root counts on half-open rational intervals.
//! - [`isolate_largest_root`] / [`refine_root_interval`]: rational isolating
//!   intervals for the largest real root.
//! - [`sign_at_root`]: exact sign of `q` at the root isolated by an
//!   interval, with a gcd certificate for the zero case.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer polynomial; `coeffs[i]` is the coefficient of `x^i`.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_big(coeffs: Vec<BigInt>) -> Self {
        IntPoly::new(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    /// Sign of the evaluation at a rational point: -1, 0 or +1.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        let v = self.eval_rational(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Greatest common divisor of the coefficients (positive; 0 for the zero
    /// polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::gcd(g, c.abs());
        }
        g
    }

    /// Divide out the content.  The sign of the leading coefficient is kept.
    pub fn primitive_part(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Cauchy bound: every real root has absolute value strictly below it.
    pub fn cauchy_root_bound(&self) -> BigRational {
        let lead = self.coeffs.last().expect("nonzero polynomial").abs();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        BigRational::one() + BigRational::new(max, lead)
    }

    /// Polynomial gcd (primitive, computed over the rationals).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = RatPoly::from_int(self);
        let mut b = RatPoly::from_int(other);
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.to_primitive_int()
    }

    /// Squarefree part `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        RatPoly::from_int(self)
            .div_exact(&RatPoly::from_int(&g))
            .to_primitive_int()
    }

    /// Remainder of `self` modulo `other` (over the rationals, returned
    /// primitive up to positive scaling).
    pub fn rem_mod(&self, other: &IntPoly) -> IntPoly {
        RatPoly::from_int(self)
            .rem(&RatPoly::from_int(other))
            .to_primitive_int()
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Rational-coefficient polynomial, used internally for division chains.
#[derive(Debug, Clone)]
struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    fn from_int(p: &IntPoly) -> Self {
        RatPoly {
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| BigRational::from(c.clone()))
                .collect(),
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Remainder of Euclidean division.
    fn rem(&self, divisor: &RatPoly) -> RatPoly {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        r.trim();
        let dd = divisor.degree();
        let lead = divisor.coeffs.last().unwrap().clone();
        while !r.is_zero() && r.degree() >= dd {
            let shift = r.degree() - dd;
            let factor = r.coeffs.last().unwrap() / &lead;
            for i in 0..=dd {
                let delta = &factor * &divisor.coeffs[i];
                r.coeffs[i + shift] -= delta;
            }
            r.trim();
        }
        r
    }

    /// Exact quotient; panics if the division leaves a remainder.
    fn div_exact(&self, divisor: &RatPoly) -> RatPoly {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        r.trim();
        let dd = divisor.degree();
        let lead = divisor.coeffs.last().unwrap().clone();
        let mut q = vec![BigRational::zero(); r.coeffs.len().saturating_sub(dd)];
        while !r.is_zero() && r.degree() >= dd {
            let shift = r.degree() - dd;
            let factor = r.coeffs.last().unwrap() / &lead;
            q[shift] = factor.clone();
            for i in 0..=dd {
                let delta = &factor * &divisor.coeffs[i];
                r.coeffs[i + shift] -= delta;
            }
            r.trim();
        }
        assert!(r.is_zero(), "polynomial division not exact");
        RatPoly { coeffs: q }
    }

    /// Clear denominators and divide by the content; positive scaling only,
    /// so sign sequences are preserved.
    fn to_primitive_int(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from(denom_lcm.clone())).to_integer())
            .collect();
        IntPoly::new(ints).primitive_part()
    }
}

/// Sturm chain of a polynomial; counts distinct real roots on half-open
/// rational intervals `(a, b]` whose endpoints are not roots.
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let mut chain = Vec::new();
        let p0 = p.primitive_part();
        let p1 = p0.derivative().primitive_part();
        chain.push(p0);
        if !p1.is_zero() {
            chain.push(p1);
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem_mod(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r.neg());
            }
        }
        SturmChain { chain }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.chain[0]
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    /// Requires `p(a) != 0` and `p(b) != 0`.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        assert!(a < b, "empty interval");
        assert!(self.chain[0].sign_at(a) != 0, "left endpoint is a root");
        assert!(self.chain[0].sign_at(b) != 0, "right endpoint is a root");
        self.variations_at(a) - self.variations_at(b)
    }
}

/// Rational interval `(lo, hi]` isolating one distinct real root;
/// the polynomial does not vanish at either endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

impl std::fmt::Display for RootInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}]", self.lo, self.hi)
    }
}

fn half(x: &BigRational, y: &BigRational) -> BigRational {
    (x + y) / BigRational::from(BigInt::from(2))
}

/// Isolate the largest real root of `p`.  Returns `None` when `p` has no
/// real root (or is constant).
pub fn isolate_largest_root(p: &IntPoly) -> Option<RootInterval> {
    if p.degree().map_or(true, |d| d == 0) {
        return None;
    }
    let chain = SturmChain::new(p);
    let bound = p.cauchy_root_bound();
    let mut lo = -bound.clone();
    let mut hi = bound;
    if chain.count_roots(&lo, &hi) == 0 {
        return None;
    }
    // Shrink while keeping the largest root in (lo, hi] and none above hi.
    while chain.count_roots(&lo, &hi) > 1 {
        let mut mid = half(&lo, &hi);
        while chain.poly().sign_at(&mid) == 0 {
            mid = half(&mid, &hi);
        }
        if chain.count_roots(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(RootInterval { lo, hi })
}

/// Bisect an isolating interval until its width is at most `target`.
pub fn refine_root_interval(p: &IntPoly, iv: &RootInterval, target: &BigRational) -> RootInterval {
    let chain = SturmChain::new(p);
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    while &hi - &lo > *target {
        let mut mid = half(&lo, &hi);
        while chain.poly().sign_at(&mid) == 0 {
            // mid is the root itself; step toward hi to keep endpoints clean
            mid = half(&mid, &hi);
        }
        if chain.count_roots(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RootInterval { lo, hi }
}

/// Exact sign of `q` at the unique root of `p` inside `iv`: -1, 0 or +1.
///
/// Zero is certified through `gcd(p, q)` having a root in the interval;
/// otherwise the interval is refined until `q` has constant sign on it.
pub fn sign_at_root(p: &IntPoly, iv: &RootInterval, q: &IntPoly) -> i8 {
    if q.is_zero() {
        return 0;
    }
    let chain_p = SturmChain::new(p);
    let g = p.gcd(q);
    if g.degree().map_or(false, |d| d >= 1) {
        // g divides p, so the interval endpoints are not roots of g either.
        let chain_g = SturmChain::new(&g);
        if chain_g.count_roots(&iv.lo, &iv.hi) >= 1 {
            // The only root of p in iv is the isolated one, so it is a
            // common root of p and q.
            return 0;
        }
    }
    let q_free = q.squarefree_part();
    let chain_q = SturmChain::new(&q_free);
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    for _ in 0..10_000 {
        if q.sign_at(&lo) != 0 && q.sign_at(&hi) != 0 && chain_q.count_roots(&lo, &hi) == 0 {
            return q.sign_at(&hi);
        }
        let mut mid = half(&lo, &hi);
        while chain_p.poly().sign_at(&mid) == 0 {
            mid = half(&mid, &hi);
        }
        if chain_p.count_roots(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    unreachable!("sign_at_root failed to converge");
}

/// Decide whether the roots isolated by `(p1, iv1)` and `(p2, iv2)` are the
/// same algebraic number.
pub fn isolated_roots_equal(
    p1: &IntPoly,
    iv1: &RootInterval,
    p2: &IntPoly,
    iv2: &RootInterval,
) -> bool {
    if sign_at_root(p1, iv1, p2) != 0 {
        return false;
    }
    // The root of p1 is some root of p2; refine until iv1 sits inside iv2
    // (same root) or the intervals separate (different roots).
    let chain1 = SturmChain::new(p1);
    let mut lo = iv1.lo.clone();
    let mut hi = iv1.hi.clone();
    for _ in 0..10_000 {
        if lo >= iv2.lo && hi <= iv2.hi {
            return true;
        }
        if hi <= iv2.lo || lo >= iv2.hi {
            return false;
        }
        let mut mid = half(&lo, &hi);
        while chain1.poly().sign_at(&mid) == 0 {
            mid = half(&mid, &hi);
        }
        if chain1.count_roots(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    unreachable!("isolated_roots_equal failed to converge");
}
