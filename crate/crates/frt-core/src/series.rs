//! Truncated formal power series and first-order dual numbers.
//!
//! Every generating function in this crate is carried either as a
//! [`PowerSeries`] (coefficients of `z^0 .. z^T`) or, when only the value and
//! first derivative at `z = 1` are needed, as a [`DualPair`]. Series
//! arithmetic is plain schoolbook convolution and order-by-order forward
//! substitution; truncation orders must match, and binary operations panic
//! when they do not. Division-style operations return [`SeriesError`] since
//! a vanishing constant term or pivot is a property of the input, not a bug.

use thiserror::Error;

/// Pivot threshold below which the constant-term matrix of a linear system is
/// treated as singular.
pub const PIVOT_EPS: f64 = 1e-12;

/// Smallest dual value that may be inverted.
pub const DUAL_RECIP_EPS: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    /// Reciprocal of a series whose constant term vanishes.
    #[error("series reciprocal requires a nonzero constant term")]
    ZeroConstantTerm,
    /// The constant-term matrix of `(I - B)` has no usable pivot. For
    /// neighbourhood walk sums this means the local walk is recurrent, i.e.
    /// the neighbourhood covers the graph; reduce `r` or use the exact oracle.
    #[error("singular constant-term matrix in series linear solve (neighbourhood covers graph; reduce r)")]
    SingularSystem,
    /// Reciprocal of a dual pair whose value is (numerically) zero.
    #[error("dual reciprocal of zero value")]
    ZeroValue,
}

/// A real power series truncated at order `T`: coefficients of `z^0 ..= z^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<f64>,
}

impl PowerSeries {
    /// The zero series with truncation order `order`.
    pub fn zeros(order: usize) -> Self {
        Self { coeffs: vec![0.0; order + 1] }
    }

    /// The constant series `1` with truncation order `order`.
    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, 1.0)
    }

    /// The series `c * z^k` truncated at `order`. `k` beyond the truncation
    /// yields the zero series.
    pub fn monomial(order: usize, k: usize, c: f64) -> Self {
        let mut s = Self::zeros(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Builds a series from explicit coefficients `c_0 ..= c_T`.
    ///
    /// Panics on an empty or non-finite coefficient list.
    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a power series has at least order 0");
        assert!(coeffs.iter().all(|c| c.is_finite()), "non-finite series coefficient");
        Self { coeffs }
    }

    /// Truncation order `T`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^t`; zero beyond the truncation order.
    pub fn coeff(&self, t: usize) -> f64 {
        self.coeffs.get(t).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, t: usize, c: f64) {
        self.coeffs[t] = c;
    }

    fn assert_same_order(&self, rhs: &Self) {
        assert_eq!(
            self.coeffs.len(),
            rhs.coeffs.len(),
            "series truncation orders must match ({} vs {})",
            self.order(),
            rhs.order()
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_order(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Self { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_same_order(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        Self { coeffs }
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Cauchy product, truncated at the shared order.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_order(rhs);
        let n = self.coeffs.len();
        let mut out = vec![0.0; n];
        for (s, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (r, &b) in rhs.coeffs.iter().take(n - s).enumerate() {
                out[s + r] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// The series multiplied by `z^k` (coefficients shifted up; overflow past
    /// the truncation order is discarded).
    pub fn shifted_up(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![0.0; n];
        for t in k..n {
            out[t] = self.coeffs[t - k];
        }
        Self { coeffs: out }
    }

    /// Multiplicative inverse up to the truncation order, by forward
    /// substitution: with `a_0 b_0 = 1` and
    /// `b_t = -(sum_{s=1..=t} a_s b_{t-s}) / a_0`.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        let mut out = vec![0.0; self.coeffs.len()];
        recip_into(&self.coeffs, &mut out, self.coeffs.len())?;
        Ok(Self { coeffs: out })
    }

    /// Evaluates the truncated polynomial at a real `z` (Horner).
    pub fn eval(&self, z: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * z + c)
    }
}

/// Forward-substitution reciprocal writing only coefficients `< len`.
/// `out` must be zeroed beyond `len` by the caller if that matters.
pub(crate) fn recip_into(a: &[f64], out: &mut [f64], len: usize) -> Result<(), SeriesError> {
    debug_assert!(len <= a.len() && len <= out.len());
    if a[0].abs() < PIVOT_EPS {
        return Err(SeriesError::ZeroConstantTerm);
    }
    let inv0 = 1.0 / a[0];
    out[0] = inv0;
    for t in 1..len {
        let mut acc = 0.0;
        for s in 1..=t {
            acc += a[s] * out[t - s];
        }
        out[t] = -acc * inv0;
    }
    Ok(())
}

/// A `(value, derivative)` pair: the evaluation of a generating function and
/// its first derivative at `z = 1`, propagated by first-order Taylor rules.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualPair {
    pub val: f64,
    pub der: f64,
}

impl DualPair {
    pub const ZERO: Self = Self { val: 0.0, der: 0.0 };
    pub const ONE: Self = Self { val: 1.0, der: 0.0 };
    /// The identity function `z` evaluated at `z = 1`.
    pub const Z: Self = Self { val: 1.0, der: 1.0 };

    pub fn new(val: f64, der: f64) -> Self {
        Self { val, der }
    }

    pub fn add(self, rhs: Self) -> Self {
        Self::new(self.val + rhs.val, self.der + rhs.der)
    }

    pub fn sub(self, rhs: Self) -> Self {
        Self::new(self.val - rhs.val, self.der - rhs.der)
    }

    /// Product rule: `(a, a')(b, b') = (ab, a'b + ab')`.
    pub fn mul(self, rhs: Self) -> Self {
        Self::new(self.val * rhs.val, self.der * rhs.val + self.val * rhs.der)
    }

    pub fn scale(self, c: f64) -> Self {
        Self::new(self.val * c, self.der * c)
    }

    /// Quotient rule: `1/(a, a') = (1/a, -a'/a^2)`.
    pub fn recip(self) -> Result<Self, SeriesError> {
        if self.val.abs() <= DUAL_RECIP_EPS {
            return Err(SeriesError::ZeroValue);
        }
        let inv = 1.0 / self.val;
        Ok(Self::new(inv, -self.der * inv * inv))
    }

    pub fn is_finite(self) -> bool {
        self.val.is_finite() && self.der.is_finite()
    }
}

/// Element of a commutative ring over which the walk-sum linear systems are
/// solved: truncated series for full distributions, dual pairs at `z = 1` for
/// tail statistics.
pub trait SolveElem: Clone {
    fn zero_like(&self) -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn recip_ref(&self) -> Result<Self, SeriesError>;
    /// `1 + self`, used to place the identity on the diagonal of `I - B`.
    fn one_plus(&self) -> Self;
    /// Magnitude used for pivot selection (constant term / value at `z = 1`).
    fn pivot_weight(&self) -> f64;
}

impl SolveElem for PowerSeries {
    fn zero_like(&self) -> Self {
        Self::zeros(self.order())
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn recip_ref(&self) -> Result<Self, SeriesError> {
        self.recip()
    }
    fn one_plus(&self) -> Self {
        let mut s = self.clone();
        s.set_coeff(0, s.coeff(0) + 1.0);
        s
    }
    fn pivot_weight(&self) -> f64 {
        self.coeff(0).abs()
    }
}

impl SolveElem for DualPair {
    fn zero_like(&self) -> Self {
        Self::ZERO
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(*rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(*rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(*rhs)
    }
    fn recip_ref(&self) -> Result<Self, SeriesError> {
        self.recip()
    }
    fn one_plus(&self) -> Self {
        DualPair::new(self.val + 1.0, self.der)
    }
    fn pivot_weight(&self) -> f64 {
        self.val.abs()
    }
}

/// Solves `(I - B) x = v` by Gaussian elimination over the coefficient ring,
/// with partial pivoting on [`SolveElem::pivot_weight`].
///
/// `b` is a square row-major matrix; `v` its matching right-hand side. Fails
/// with [`SeriesError::SingularSystem`] when no pivot exceeds [`PIVOT_EPS`].
pub fn linear_solve<E: SolveElem>(b: &[Vec<E>], v: &[E]) -> Result<Vec<E>, SeriesError> {
    let n = v.len();
    assert_eq!(b.len(), n, "matrix/rhs dimension mismatch");
    if n == 0 {
        return Ok(Vec::new());
    }
    let zero = v[0].zero_like();

    // a = I - B, augmented with v.
    let mut a: Vec<Vec<E>> = Vec::with_capacity(n);
    for (i, row) in b.iter().enumerate() {
        assert_eq!(row.len(), n, "matrix must be square");
        let mut arow: Vec<E> = Vec::with_capacity(n + 1);
        for (j, e) in row.iter().enumerate() {
            let neg = zero.sub_ref(e);
            arow.push(if i == j { neg.one_plus() } else { neg });
        }
        arow.push(v[i].clone());
        a.push(arow);
    }

    // Forward elimination with partial pivoting.
    for col in 0..n {
        let (pivot_row, pivot_w) = (col..n)
            .map(|r| (r, a[r][col].pivot_weight()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("nonempty pivot candidates");
        if pivot_w <= PIVOT_EPS {
            return Err(SeriesError::SingularSystem);
        }
        a.swap(col, pivot_row);
        let pivot_inv = a[col][col].recip_ref()?;
        for r in col + 1..n {
            let factor = a[r][col].mul_ref(&pivot_inv);
            for c in col..=n {
                let delta = factor.mul_ref(&a[col][c]);
                a[r][c] = a[r][c].sub_ref(&delta);
            }
        }
    }

    // Back substitution.
    let mut x = vec![zero.clone(); n];
    for col in (0..n).rev() {
        let mut acc = a[col][n].clone();
        for c in col + 1..n {
            acc = acc.sub_ref(&a[col][c].mul_ref(&x[c]));
        }
        x[col] = acc.mul_ref(&a[col][col].recip_ref()?);
    }
    Ok(x)
}
