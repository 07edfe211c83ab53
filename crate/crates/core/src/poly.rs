//! Scalar and polynomial containers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

/// Arbitrary-precision exact rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for a possibly negative exponent, with `0^0 = 1`.
///
/// Returns `None` for a negative power of zero.
pub fn rpow(base: &Rational, exp: i64) -> Option<Rational> {
    if exp >= 0 {
        Some(Pow::pow(base, exp as u64))
    } else if base.is_zero() {
        None
    } else {
        Some(Pow::pow(base.recip(), exp.unsigned_abs()))
    }
}

/// Renders a rational as `num/den`, or just `num` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

/// Dense univariate polynomial; `coeffs[k]` is the coefficient of `x^k`.
///
/// Trailing zeros are allowed up to the recorded degree bound. Equality
/// ignores trailing zeros and the bound.
#[derive(Debug, Clone)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
    degree_bound: usize,
}

impl UniPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let degree_bound = coeffs.len().saturating_sub(1);
        UniPoly {
            coeffs,
            degree_bound,
        }
    }

    /// Zero-padded to exactly `degree_bound + 1` coefficients.
    ///
    /// # Panics
    ///
    /// If `coeffs` has nonzero entries above `degree_bound`.
    pub fn with_bound(mut coeffs: Vec<Rational>, degree_bound: usize) -> Self {
        while coeffs.len() > degree_bound + 1 {
            let top = coeffs.pop().expect("nonempty");
            assert!(top.is_zero(), "coefficient above the degree bound");
        }
        coeffs.resize(degree_bound + 1, Rational::zero());
        UniPoly {
            coeffs,
            degree_bound,
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly {
            coeffs: Vec::new(),
            degree_bound: 0,
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    /// Coefficient of `x^k` (zero beyond the stored range).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Actual degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Coefficients with trailing zeros stripped.
    pub fn trimmed(&self) -> &[Rational] {
        let len = self.degree().map_or(0, |d| d + 1);
        &self.coeffs[..len]
    }

    pub fn scale(&self, s: &Rational) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            degree_bound: self.degree_bound,
        }
    }
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for UniPoly {}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "({c})x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "({c})x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Coefficients of a multivariate polynomial with per-indeterminate degree
/// bounds `(d_1, …, d_t)`.
///
/// Stored densely in lexicographic order of exponent tuples (last
/// indeterminate fastest), which is also the order of grid points used by
/// [`crate::interp::interpolate_grid`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiCoeffs {
    bounds: Vec<usize>,
    data: Vec<Rational>,
}

impl MultiCoeffs {
    pub fn zeros(bounds: Vec<usize>) -> Self {
        let len = bounds.iter().map(|d| d + 1).product();
        MultiCoeffs {
            bounds,
            data: vec![Rational::zero(); len],
        }
    }

    /// Wraps a dense lexicographic coefficient vector.
    pub fn from_dense(bounds: Vec<usize>, data: Vec<Rational>) -> Option<Self> {
        let len: usize = bounds.iter().map(|d| d + 1).product();
        (len == data.len()).then_some(MultiCoeffs { bounds, data })
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn dense(&self) -> &[Rational] {
        &self.data
    }

    /// Flat index of an exponent tuple, `None` if out of bounds.
    pub fn index_of(&self, exps: &[usize]) -> Option<usize> {
        if exps.len() != self.bounds.len() {
            return None;
        }
        let mut idx = 0;
        for (&e, &d) in exps.iter().zip(&self.bounds) {
            if e > d {
                return None;
            }
            idx = idx * (d + 1) + e;
        }
        Some(idx)
    }

    pub fn exps_of(&self, mut idx: usize) -> Vec<usize> {
        let mut exps = vec![0; self.bounds.len()];
        for (slot, &d) in exps.iter_mut().zip(&self.bounds).rev() {
            *slot = idx % (d + 1);
            idx /= d + 1;
        }
        exps
    }

    pub fn get(&self, exps: &[usize]) -> Option<&Rational> {
        self.index_of(exps).map(|i| &self.data[i])
    }

    /// Sets a coefficient; returns `false` when the tuple is out of bounds.
    pub fn set(&mut self, exps: &[usize], value: Rational) -> bool {
        match self.index_of(exps) {
            Some(i) => {
                self.data[i] = value;
                true
            }
            None => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> + '_ {
        self.data
            .iter()
            .enumerate()
            .map(|(i, c)| (self.exps_of(i), c))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> + '_ {
        self.iter().filter(|(_, c)| !c.is_zero())
    }

    /// Evaluates the polynomial at `point` (one value per indeterminate).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.bounds.len(), "point dimension");
        let powers: Vec<Vec<Rational>> = point
            .iter()
            .zip(&self.bounds)
            .map(|(x, &d)| {
                let mut p = Vec::with_capacity(d + 1);
                let mut acc = Rational::one();
                for _ in 0..=d {
                    p.push(acc.clone());
                    acc *= x;
                }
                p
            })
            .collect();
        let mut total = Rational::zero();
        for (exps, c) in self.nonzero() {
            let mut term = c.clone();
            for (axis, &e) in exps.iter().enumerate() {
                term *= &powers[axis][e];
            }
            total += term;
        }
        total
    }
}

/// The graph polynomials handled by this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyId {
    /// Matching defect polynomial; vertex indeterminates.
    Matching,
    /// Independent set polynomial; vertex indeterminates.
    IndepSet,
    /// Random-cluster restriction `Z(q, ·)`; edge indeterminates.
    RandomClusterZ(Rational),
    /// `Z₀(q, ·) = q^{-k(G,E)} Z(q, ·)`, meaningful also at `q = 0`.
    RandomClusterZ0(Rational),
    TutteT,
    PerfMatch,
    /// Perfect matchings counted by their number of `−1` edges.
    SignedPermanentP,
}

impl fmt::Display for PolyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyId::Matching => f.write_str("mu"),
            PolyId::IndepSet => f.write_str("indep"),
            PolyId::RandomClusterZ(q) => write!(f, "z(q={q})"),
            PolyId::RandomClusterZ0(q) => write!(f, "z0(q={q})"),
            PolyId::TutteT => f.write_str("tutte"),
            PolyId::PerfMatch => f.write_str("perfmatch"),
            PolyId::SignedPermanentP => f.write_str("signed-perm"),
        }
    }
}
