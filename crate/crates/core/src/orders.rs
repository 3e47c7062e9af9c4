//! Order predicates on the simplex: the two renormalised Löwner orders,
//! the Bayesian order, the parametrized family of restricted information
//! orders, sector-restricted majorization, meet combinators, feature
//! vectors, and graded entailment.
//!
//! Every order is oriented so that the uniform distribution is the global
//! minimum and the pointed distributions are maximal.

use crate::error::{Error, Result};
use crate::simplex::{extrema, sector_compatible, Distribution};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Absolute slack for inequality comparisons: `a <= b` is evaluated as
/// `a <= b + COMPARISON_SLACK`. Products of probabilities stay far above
/// this scale, while accumulated rounding stays far below it.
pub const COMPARISON_SLACK: f64 = 1e-12;

/// Components of a feature map, with `f64::INFINITY` marking zero
/// denominators.
pub type FeatureVector = Vec<f64>;

/// Outcome of comparing two elements under a partial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComparisonResult {
    LessThan,
    GreaterThan,
    Equal,
    Incomparable,
}

impl fmt::Display for ComparisonResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ComparisonResult::LessThan => "LessThan",
            ComparisonResult::GreaterThan => "GreaterThan",
            ComparisonResult::Equal => "Equal",
            ComparisonResult::Incomparable => "Incomparable",
        };
        f.write_str(s)
    }
}

/// Parameters of a restricted information order.
///
/// The order on the monotone sector compares `f_i(x) g_i(y) <= f_i(y) g_i(x)`
/// for `1 <= i <= n-1`, where `f_i(v) = v_i - v_{i+1}`,
/// `g_1(v) = v_2 + a10 + sum_{j=3..n} a1[j] v_j` and
/// `g_i(v) = v_{i+1} + sum_{j=i+2..n} a[i][j] v_j` for `i >= 2`
/// (indices 1-based). All parameters default to zero, which recovers the
/// Bayesian order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestrictedParams {
    n: usize,
    #[serde(default)]
    a10: f64,
    /// Coefficients `A^1_j` for `j = 3..=n`.
    #[serde(default)]
    a1: Vec<f64>,
    /// Row `a[i-2]` holds `A^i_j` for `j = i+2..=n`, for `i = 2..=n-2`.
    #[serde(default)]
    a: Vec<Vec<f64>>,
}

impl RestrictedParams {
    pub fn new(n: usize, a10: f64, a1: Vec<f64>, a: Vec<Vec<f64>>) -> Result<Self> {
        let p = Self { n, a10, a1, a };
        p.check_shape()?;
        Ok(p)
    }

    /// All-zero parameters: the Bayesian order.
    pub fn zeros(n: usize) -> Self {
        let a1 = vec![0.0; n.saturating_sub(2)];
        let a = (2..n.saturating_sub(1))
            .map(|i| vec![0.0; n - i - 1])
            .collect();
        Self { n, a10: 0.0, a1, a }
    }

    /// Zero parameters except the two leading ones, `A^1_0` and `A^1_3`.
    /// For `n = 2` there is no `A^1_3` coordinate and `a13` is ignored.
    pub fn from_a10_a13(n: usize, a10: f64, a13: f64) -> Self {
        let mut p = Self::zeros(n);
        p.a10 = a10;
        if n >= 3 {
            p.a1[0] = a13;
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Replaces entirely omitted coefficient vectors by zeros of the
    /// right shape. Vectors of the wrong nonzero length are left alone
    /// for `check_shape` to reject.
    pub fn fill_missing(&mut self) {
        let zero = Self::zeros(self.n);
        if self.a1.is_empty() {
            self.a1 = zero.a1;
        }
        if self.a.is_empty() {
            self.a = zero.a;
        }
    }

    /// Verifies the stored vectors have the shape the dimension demands.
    pub fn check_shape(&self) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return Err(Error::BadDimension {
                dim: 0,
                reason: "parameters need dimension at least 1",
            });
        }
        let want_a1 = n.saturating_sub(2);
        if self.a1.len() != want_a1 {
            return Err(Error::InvalidParams(vec![format!(
                "a1 must have {} entries (got {})",
                want_a1,
                self.a1.len()
            )]));
        }
        let want_rows = n.saturating_sub(3);
        if self.a.len() != want_rows {
            return Err(Error::InvalidParams(vec![format!(
                "a must have {} rows (got {})",
                want_rows,
                self.a.len()
            )]));
        }
        for (idx, row) in self.a.iter().enumerate() {
            let i = idx + 2;
            let want = n - i - 1;
            if row.len() != want {
                return Err(Error::InvalidParams(vec![format!(
                    "a[{}] must have {} entries (got {})",
                    idx,
                    want,
                    row.len()
                )]));
            }
        }
        Ok(())
    }

    /// Evaluates every positivity constraint; the returned list names each
    /// failed one (empty means valid).
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.check_shape().is_err() {
            out.push("parameter vectors have the wrong shape".to_string());
            return out;
        }
        let n = self.n;
        let c = 1.0 + 2.0 * self.a10;
        if c <= 0.0 {
            out.push(format!("1 + 2*A^1_0 = {c} must be positive"));
        }
        for k in 3..=n {
            let sum: f64 = self.a1[..k - 2].iter().sum();
            let c = 1.0 + k as f64 * self.a10 + sum;
            if c <= 0.0 {
                out.push(format!("1 + {k}*A^1_0 + sum(A^1_3..A^1_{k}) = {c} must be positive"));
            }
        }
        for (idx, row) in self.a.iter().enumerate() {
            let i = idx + 2;
            for k in (i + 2)..=n {
                let sum: f64 = row[..k - i - 1].iter().sum();
                let c = 1.0 + sum;
                if c <= 0.0 {
                    out.push(format!(
                        "1 + sum(A^{i}_{}..A^{i}_{k}) = {c} must be positive",
                        i + 2
                    ));
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// Fills `f_i` and `g_i` for a monotonically decreasing value slice.
    pub(crate) fn fill_features(&self, v: &[f64], f: &mut Vec<f64>, g: &mut Vec<f64>) {
        let n = self.n;
        f.clear();
        g.clear();
        if n < 2 {
            return;
        }
        for i in 0..n - 1 {
            f.push(v[i] - v[i + 1]);
        }
        let mut g1 = v[1] + self.a10;
        for j in 3..=n {
            g1 += self.a1[j - 3] * v[j - 1];
        }
        g.push(g1);
        for i in 2..n {
            // 1-based component index
            let mut gi = v[i];
            if i <= n - 2 {
                let row = &self.a[i - 2];
                for j in (i + 2)..=n {
                    gi += row[j - i - 2] * v[j - 1];
                }
            }
            g.push(gi);
        }
    }
}

/// Selector for one of the implemented partial orders.
#[derive(Clone, Debug, PartialEq)]
pub enum OrderSpec {
    LownerPlus,
    LownerMinus,
    Bayesian,
    Restricted(RestrictedParams),
    Majorization,
    /// Intersection of the member orders: related iff related under all.
    Meet(Vec<OrderSpec>),
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderSpec::LownerPlus => f.write_str("lowner-plus"),
            OrderSpec::LownerMinus => f.write_str("lowner-minus"),
            OrderSpec::Bayesian => f.write_str("bayesian"),
            OrderSpec::Majorization => f.write_str("majorization"),
            OrderSpec::Restricted(p) => write!(
                f,
                "restricted(n={}, a10={}, a1={:?}, a={:?})",
                p.n, p.a10, p.a1, p.a
            ),
            OrderSpec::Meet(members) => {
                f.write_str("meet(")?;
                for (k, m) in members.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl OrderSpec {
    /// Checks that this order is usable at dimension `n` (parameter
    /// shape and positivity constraints, nonempty meets).
    pub fn validate_for(&self, n: usize) -> Result<()> {
        match self {
            OrderSpec::Restricted(p) => {
                if p.dim() != n {
                    return Err(Error::DimensionMismatch {
                        left: p.dim(),
                        right: n,
                    });
                }
                let violations = p.violations();
                if !violations.is_empty() {
                    return Err(Error::InvalidParams(violations));
                }
                Ok(())
            }
            OrderSpec::Meet(members) => {
                if members.is_empty() {
                    return Err(Error::EmptyMeet);
                }
                members.iter().try_for_each(|m| m.validate_for(n))
            }
            _ => Ok(()),
        }
    }

    pub fn leq(&self, x: &Distribution, y: &Distribution) -> Result<bool> {
        self.leq_with_slack(x, y, COMPARISON_SLACK)
    }

    pub fn leq_with_slack(&self, x: &Distribution, y: &Distribution, eps: f64) -> Result<bool> {
        if x.dim() != y.dim() {
            return Err(Error::DimensionMismatch {
                left: x.dim(),
                right: y.dim(),
            });
        }
        self.validate_for(x.dim())?;
        let mut scratch = Scratch::new();
        Ok(self.leq_unchecked(x.values(), y.values(), eps, &mut scratch))
    }

    /// Comparison core; assumes equal dimensions and validated parameters.
    pub(crate) fn leq_unchecked(&self, x: &[f64], y: &[f64], eps: f64, s: &mut Scratch) -> bool {
        let n = x.len();
        if n == 1 {
            return true;
        }
        match self {
            OrderSpec::LownerPlus => {
                let xm = max_of(x);
                let ym = max_of(y);
                lowner_plus_kernel(x, xm, y, ym, eps)
            }
            OrderSpec::LownerMinus => {
                let xm = min_nonzero_of(x);
                let ym = min_nonzero_of(y);
                lowner_minus_kernel(x, xm, y, ym, eps)
            }
            OrderSpec::Bayesian => {
                if !sector_compatible(x, y) {
                    return false;
                }
                s.sort_into(x, y);
                bayes_sorted_kernel(&s.sx, &s.sy, eps)
            }
            OrderSpec::Restricted(p) => {
                if !sector_compatible(x, y) {
                    return false;
                }
                s.sort_into(x, y);
                p.fill_features(&s.sx, &mut s.fx, &mut s.gx);
                p.fill_features(&s.sy, &mut s.fy, &mut s.gy);
                restricted_feature_kernel(&s.fx, &s.gx, &s.fy, &s.gy, eps)
            }
            OrderSpec::Majorization => {
                if !sector_compatible(x, y) {
                    return false;
                }
                s.sort_into(x, y);
                majorization_sorted_kernel(&s.sx, &s.sy, eps)
            }
            OrderSpec::Meet(members) => {
                members.iter().all(|m| {
                    let mut inner = Scratch::new();
                    m.leq_unchecked(x, y, eps, &mut inner)
                })
            }
        }
    }

    pub fn compare(&self, x: &Distribution, y: &Distribution) -> Result<ComparisonResult> {
        self.compare_with_slack(x, y, COMPARISON_SLACK)
    }

    /// Four-valued comparison. Both directions holding for distinct points
    /// signals a broken order or tolerance bug and is reported as an error,
    /// never as a result.
    pub fn compare_with_slack(
        &self,
        x: &Distribution,
        y: &Distribution,
        eps: f64,
    ) -> Result<ComparisonResult> {
        if x.dim() != y.dim() {
            return Err(Error::DimensionMismatch {
                left: x.dim(),
                right: y.dim(),
            });
        }
        self.validate_for(x.dim())?;
        if x.linf_distance(y) <= eps {
            return Ok(ComparisonResult::Equal);
        }
        let mut s = Scratch::new();
        let fwd = self.leq_unchecked(x.values(), y.values(), eps, &mut s);
        let bwd = self.leq_unchecked(y.values(), x.values(), eps, &mut s);
        match (fwd, bwd) {
            (true, true) => Err(Error::AntisymmetryViolation {
                left: x.values().to_vec(),
                right: y.values().to_vec(),
            }),
            (true, false) => Ok(ComparisonResult::LessThan),
            (false, true) => Ok(ComparisonResult::GreaterThan),
            (false, false) => Ok(ComparisonResult::Incomparable),
        }
    }
}

/// `x` below `y` in the Löwner order renormalised to the largest
/// coordinate: `x_max * y_k <= y_max * x_k` for all `k`.
pub fn lowner_plus_leq(x: &Distribution, y: &Distribution) -> Result<bool> {
    OrderSpec::LownerPlus.leq(x, y)
}

/// `x` below `y` in the Löwner order renormalised to the smallest nonzero
/// coordinate.
///
/// Recursion on the dimension, evaluated in one pass: coordinates where
/// both vanish are dropped; a coordinate where only `x` vanishes blocks
/// the relation; otherwise `x` is below `y` if `y` vanishes somewhere `x`
/// attains its smallest nonzero value, or if `x_k * y_min <= y_k * x_min`
/// holds at every remaining coordinate.
pub fn lowner_minus_leq(x: &Distribution, y: &Distribution) -> Result<bool> {
    OrderSpec::LownerMinus.leq(x, y)
}

/// The Bayesian order: a common sector permutation exists and
/// `sx_i * sy_{i+1} <= sy_i * sx_{i+1}` on the sorted vectors.
pub fn bayesian_leq(x: &Distribution, y: &Distribution) -> Result<bool> {
    OrderSpec::Bayesian.leq(x, y)
}

/// The restricted information order with the given parameters.
pub fn restricted_leq(params: &RestrictedParams, x: &Distribution, y: &Distribution) -> Result<bool> {
    OrderSpec::Restricted(params.clone()).leq(x, y)
}

/// Majorization restricted to common sectors. On the sorted vectors the
/// prefix sums of `x` must stay below those of `y`; nonzero ties of the
/// upper element must be mirrored in the lower one, which keeps chains
/// from crossing sector borders.
pub fn majorization_leq(x: &Distribution, y: &Distribution) -> Result<bool> {
    OrderSpec::Majorization.leq(x, y)
}

/// Intersection of several orders: below under every member.
pub fn meet_leq(specs: &[OrderSpec], x: &Distribution, y: &Distribution) -> Result<bool> {
    OrderSpec::Meet(specs.to_vec()).leq(x, y)
}

/// Four-valued comparison under `spec`.
pub fn compare(spec: &OrderSpec, x: &Distribution, y: &Distribution) -> Result<ComparisonResult> {
    spec.compare(x, y)
}

/// Evaluates every positivity constraint; the flag is true iff all hold
/// strictly, and the list names each failed one.
pub fn validate_restricted_params(params: &RestrictedParams) -> (bool, Vec<String>) {
    let v = params.violations();
    (v.is_empty(), v)
}

/// The feature vector of a feature-form order, with `+inf` marking zero
/// denominators.
///
/// `x` must already be monotonically decreasing for the sector-based
/// orders (retract first); the renormalised Löwner-plus features apply to
/// any distribution.
pub fn feature_vector(spec: &OrderSpec, x: &Distribution) -> Result<FeatureVector> {
    let n = x.dim();
    match spec {
        OrderSpec::LownerPlus => {
            let m = extrema(x).max_coord;
            Ok(x.values()
                .iter()
                .map(|&v| if v == 0.0 { f64::INFINITY } else { m / v })
                .collect())
        }
        OrderSpec::Bayesian => {
            require_monotone(x)?;
            let v = x.values();
            Ok((0..n - 1)
                .map(|i| {
                    if v[i + 1] == 0.0 {
                        f64::INFINITY
                    } else {
                        v[i] / v[i + 1]
                    }
                })
                .collect())
        }
        OrderSpec::Restricted(p) => {
            OrderSpec::Restricted(p.clone()).validate_for(n)?;
            require_monotone(x)?;
            let mut f = Vec::new();
            let mut g = Vec::new();
            p.fill_features(x.values(), &mut f, &mut g);
            Ok(f.iter()
                .zip(&g)
                .map(|(&fi, &gi)| if gi == 0.0 { f64::INFINITY } else { fi / gi })
                .collect())
        }
        OrderSpec::Majorization => {
            require_monotone(x)?;
            let mut acc = 0.0;
            Ok(x.values()[..n - 1]
                .iter()
                .map(|&v| {
                    acc += v;
                    acc
                })
                .collect())
        }
        OrderSpec::LownerMinus | OrderSpec::Meet(_) => Err(Error::UnsupportedSpec),
    }
}

fn require_monotone(x: &Distribution) -> Result<()> {
    if x.is_monotone_decreasing() {
        Ok(())
    } else {
        Err(Error::NotMonotone)
    }
}

/// Graded entailment: the feature comparison relaxed by a factor
/// `p` in `[0, 1]`. At `p = 1` this reduces exactly to the plain order.
///
/// Evaluated in product form (`p * f_i(x) g_i(y) <= f_i(y) g_i(x)` and the
/// analogous forms for the other orders) so zero denominators need no
/// special casing.
pub fn graded_leq(spec: &OrderSpec, p: f64, x: &Distribution, y: &Distribution) -> Result<bool> {
    graded_leq_with_slack(spec, p, x, y, COMPARISON_SLACK)
}

pub fn graded_leq_with_slack(
    spec: &OrderSpec,
    p: f64,
    x: &Distribution,
    y: &Distribution,
    eps: f64,
) -> Result<bool> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParameter { name: "p", value: p });
    }
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    spec.validate_for(x.dim())?;
    let n = x.dim();
    if n == 1 {
        return Ok(true);
    }
    let (xv, yv) = (x.values(), y.values());
    let mut s = Scratch::new();
    match spec {
        OrderSpec::LownerPlus => {
            let xm = max_of(xv);
            let ym = max_of(yv);
            Ok(xv
                .iter()
                .zip(yv)
                .all(|(&xk, &yk)| p * xm * yk <= ym * xk + eps))
        }
        OrderSpec::Bayesian => {
            if !sector_compatible(xv, yv) {
                return Ok(false);
            }
            s.sort_into(xv, yv);
            Ok((0..n - 1).all(|i| p * (s.sx[i] * s.sy[i + 1]) <= s.sy[i] * s.sx[i + 1] + eps))
        }
        OrderSpec::Restricted(params) => {
            if !sector_compatible(xv, yv) {
                return Ok(false);
            }
            s.sort_into(xv, yv);
            params.fill_features(&s.sx, &mut s.fx, &mut s.gx);
            params.fill_features(&s.sy, &mut s.fy, &mut s.gy);
            Ok((0..n - 1).all(|i| p * (s.fx[i] * s.gy[i]) <= s.fy[i] * s.gx[i] + eps))
        }
        OrderSpec::Majorization => {
            if !sector_compatible(xv, yv) {
                return Ok(false);
            }
            s.sort_into(xv, yv);
            if !majorization_tie_guard(&s.sx, &s.sy, eps) {
                return Ok(false);
            }
            let (mut px, mut py) = (0.0, 0.0);
            Ok((0..n - 1).all(|i| {
                px += s.sx[i];
                py += s.sy[i];
                p * px <= py + eps
            }))
        }
        OrderSpec::LownerMinus | OrderSpec::Meet(_) => Err(Error::UnsupportedSpec),
    }
}

/// Supremal `p` at which graded entailment holds, by bisection to 1e-6.
/// `None` when even `p = 0` fails (no common sector); `Some(1.0)` when the
/// plain order relates the pair.
///
/// Bisection assumes the relation is monotone in `p`, which holds
/// whenever the feature products are nonnegative; restricted orders with
/// negative leading parameters can break this near the pointed
/// distributions, where the returned value is one boundary of the
/// holding set.
pub fn graded_sup_p(spec: &OrderSpec, x: &Distribution, y: &Distribution) -> Result<Option<f64>> {
    if !graded_leq(spec, 0.0, x, y)? {
        return Ok(None);
    }
    if graded_leq(spec, 1.0, x, y)? {
        return Ok(Some(1.0));
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if graded_leq(spec, mid, x, y)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

// ---------------------------------------------------------------------------
// Comparison kernels, shared with the pooled checkers in `suite`.

pub(crate) fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

pub(crate) fn min_nonzero_of(v: &[f64]) -> f64 {
    v.iter()
        .copied()
        .filter(|&x| x != 0.0)
        .fold(f64::INFINITY, f64::min)
}

#[inline]
pub(crate) fn lowner_plus_kernel(x: &[f64], x_max: f64, y: &[f64], y_max: f64, eps: f64) -> bool {
    x.iter()
        .zip(y)
        .all(|(&xk, &yk)| x_max * yk <= y_max * xk + eps)
}

#[inline]
pub(crate) fn lowner_minus_kernel(x: &[f64], x_min: f64, y: &[f64], y_min: f64, eps: f64) -> bool {
    let mut reaches_zero = false;
    let mut componentwise = true;
    for (&xk, &yk) in x.iter().zip(y) {
        if xk == 0.0 {
            if yk != 0.0 {
                // x vanishes where y does not: supports are incompatible
                return false;
            }
            // shared zero: dropped by the recursion
        } else if yk == 0.0 {
            componentwise = false;
            if (xk - x_min).abs() <= eps {
                reaches_zero = true;
            }
        } else if xk * y_min > yk * x_min + eps {
            componentwise = false;
        }
    }
    reaches_zero || componentwise
}

#[inline]
pub(crate) fn bayes_sorted_kernel(sx: &[f64], sy: &[f64], eps: f64) -> bool {
    (0..sx.len() - 1).all(|i| sx[i] * sy[i + 1] <= sy[i] * sx[i + 1] + eps)
}

#[inline]
pub(crate) fn restricted_feature_kernel(
    fx: &[f64],
    gx: &[f64],
    fy: &[f64],
    gy: &[f64],
    eps: f64,
) -> bool {
    (0..fx.len()).all(|i| fx[i] * gy[i] <= fy[i] * gx[i] + eps)
}

/// Nonzero ties of the upper element must be mirrored as nonzero ties of
/// the lower element (the degeneracy condition); without it, chains could
/// tunnel through sector borders and transitivity would fail.
#[inline]
pub(crate) fn majorization_tie_guard(sx: &[f64], sy: &[f64], eps: f64) -> bool {
    for i in 0..sy.len() - 1 {
        if (sy[i] - sy[i + 1]).abs() <= eps
            && sy[i + 1] > eps
            && ((sx[i] - sx[i + 1]).abs() > eps || sx[i + 1] <= eps)
        {
            return false;
        }
    }
    true
}

#[inline]
pub(crate) fn majorization_sorted_kernel(sx: &[f64], sy: &[f64], eps: f64) -> bool {
    if !majorization_tie_guard(sx, sy, eps) {
        return false;
    }
    let (mut px, mut py) = (0.0, 0.0);
    for i in 0..sx.len() - 1 {
        px += sx[i];
        py += sy[i];
        if px > py + eps {
            return false;
        }
    }
    true
}

/// Reusable buffers for repeated comparisons.
pub(crate) struct Scratch {
    pub sx: Vec<f64>,
    pub sy: Vec<f64>,
    pub fx: Vec<f64>,
    pub gx: Vec<f64>,
    pub fy: Vec<f64>,
    pub gy: Vec<f64>,
}

impl Scratch {
    pub fn new() -> Self {
        Self {
            sx: Vec::new(),
            sy: Vec::new(),
            fx: Vec::new(),
            gx: Vec::new(),
            fy: Vec::new(),
            gy: Vec::new(),
        }
    }

    /// Copies `x` and `y` into the sort buffers, descending.
    pub fn sort_into(&mut self, x: &[f64], y: &[f64]) {
        self.sx.clear();
        self.sx.extend_from_slice(x);
        self.sy.clear();
        self.sy.extend_from_slice(y);
        self.sx.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
        self.sy.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
    }
}
