//! Finite probability distributions and the elementary geometry of the
//! simplex: permutations, the monotone sector, extrema, mixing, entropy,
//! and support.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Default tolerance for validating membership of the simplex.
///
/// Entries within this distance of zero are clamped to exactly zero so
/// that all downstream zero-counting logic is discrete and stable.
pub const DEFAULT_VALIDATION_TOL: f64 = 1e-9;

/// A point of the probability simplex: nonnegative reals summing to one.
///
/// Construction clamps near-zero entries to exact zeros and renormalises,
/// so code elsewhere may branch on `v == 0.0` safely.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    values: Vec<f64>,
}

impl Distribution {
    /// Validates, clamps and renormalises `values` into a distribution.
    pub fn new(values: &[f64], tol: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        let mut v = values.to_vec();
        for (index, x) in v.iter_mut().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if *x < -tol {
                return Err(Error::NegativeEntry { index, value: *x });
            }
            if x.abs() <= tol {
                *x = 0.0;
            }
        }
        let sum: f64 = v.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::BadSum { sum, tol });
        }
        for x in v.iter_mut() {
            *x /= sum;
        }
        Ok(Self { values: v })
    }

    /// Builds a distribution with the default validation tolerance.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        Self::new(values, DEFAULT_VALIDATION_TOL)
    }

    /// The uniform distribution, the minimal element of every information
    /// ordering.
    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        Self {
            values: vec![1.0 / n as f64; n],
        }
    }

    /// The pointed distribution with all mass on coordinate `i` (0-based);
    /// the maximal elements of every information ordering.
    pub fn pointed(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::BadIndex { index: i, dim: n });
        }
        let mut values = vec![0.0; n.max(1)];
        values[i] = 1.0;
        Ok(Self { values })
    }

    /// Internal constructor for values already known to lie on the simplex
    /// (mixtures, eigenvalue vectors already validated, sorted copies).
    pub(crate) fn from_raw(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest pointwise distance to another distribution.
    pub fn linf_distance(&self, other: &Distribution) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_monotone_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] >= w[1])
    }

    /// Applies a permutation: the result holds this value at position
    /// `sigma(k)` for every `k` (sigma sends position `k` to `sigma(k)`).
    pub fn permute(&self, sigma: &Permutation) -> Result<Distribution> {
        if sigma.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: sigma.dim(),
            });
        }
        let mut out = vec![0.0; self.dim()];
        for (k, &v) in self.values.iter().enumerate() {
            out[sigma.map()[k]] = v;
        }
        Ok(Distribution { values: out })
    }
}

impl std::ops::Index<usize> for Distribution {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// A bijection on `{0..n-1}`, stored as the image array: position `k`
/// maps to position `map[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        if n == 0 {
            return Err(Error::BadPermutation {
                reason: "empty mapping",
            });
        }
        let mut seen = vec![false; n];
        for &m in &map {
            if m >= n {
                return Err(Error::BadPermutation {
                    reason: "image out of range",
                });
            }
            if seen[m] {
                return Err(Error::BadPermutation {
                    reason: "image repeated",
                });
            }
            seen[m] = true;
        }
        Ok(Self { map })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.map.len()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (k, &m) in self.map.iter().enumerate() {
            inv[m] = k;
        }
        Permutation { map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(k, &m)| k == m)
    }
}

/// A distribution whose coordinates are monotonically decreasing; the
/// canonical representative of each permutation orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneDistribution {
    inner: Distribution,
}

impl MonotoneDistribution {
    pub fn new(inner: Distribution) -> Result<Self> {
        if !inner.is_monotone_decreasing() {
            return Err(Error::NotMonotone);
        }
        Ok(Self { inner })
    }

    pub fn as_distribution(&self) -> &Distribution {
        &self.inner
    }

    pub fn into_inner(self) -> Distribution {
        self.inner
    }

    pub fn values(&self) -> &[f64] {
        self.inner.values()
    }
}

/// Coordinate extrema of a distribution: the largest coordinate, the
/// smallest nonzero coordinate, and the number of zeros.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extrema {
    pub max_coord: f64,
    pub min_nonzero: f64,
    pub zero_count: usize,
}

/// Extracts max coordinate, smallest nonzero coordinate and zero count.
///
/// The smallest nonzero coordinate always exists because the entries sum
/// to one.
pub fn extrema(x: &Distribution) -> Extrema {
    let mut max_coord = f64::NEG_INFINITY;
    let mut min_nonzero = f64::INFINITY;
    let mut zero_count = 0;
    for &v in x.values() {
        if v > max_coord {
            max_coord = v;
        }
        if v == 0.0 {
            zero_count += 1;
        } else if v < min_nonzero {
            min_nonzero = v;
        }
    }
    Extrema {
        max_coord,
        min_nonzero,
        zero_count,
    }
}

/// Sorts `x` into the monotone sector, returning the sorted distribution
/// and the permutation that realises it: `x.permute(&sigma)` equals the
/// returned monotone distribution. Ties keep the lower original index
/// first.
pub fn monotone_retract(x: &Distribution) -> (MonotoneDistribution, Permutation) {
    let v = x.values();
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[b].partial_cmp(&v[a]).unwrap().then(a.cmp(&b)));
    let sorted: Vec<f64> = idx.iter().map(|&k| v[k]).collect();
    let mut map = vec![0; v.len()];
    for (rank, &orig) in idx.iter().enumerate() {
        map[orig] = rank;
    }
    (
        MonotoneDistribution {
            inner: Distribution::from_raw(sorted),
        },
        Permutation { map },
    )
}

/// Whether some permutation sorts `x` and `y` decreasingly at the same
/// time, i.e. whether the two points share a sector.
///
/// Equivalent to the absence of a strictly crossing coordinate pair.
pub(crate) fn sector_compatible(x: &[f64], y: &[f64]) -> bool {
    let n = x.len();
    for i in 0..n {
        for j in 0..n {
            if x[i] > x[j] && y[i] < y[j] {
                return false;
            }
        }
    }
    true
}

/// Finds a permutation sorting both `x` and `y` decreasingly, if one
/// exists. When several exist the returned one sorts `y` decreasingly,
/// breaks ties in `y` by decreasing `x`, then by original index.
pub fn common_sector_permutation(x: &Distribution, y: &Distribution) -> Result<Option<Permutation>> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    let (xv, yv) = (x.values(), y.values());
    let mut idx: Vec<usize> = (0..xv.len()).collect();
    idx.sort_by(|&a, &b| {
        yv[b].partial_cmp(&yv[a])
            .unwrap()
            .then(xv[b].partial_cmp(&xv[a]).unwrap())
            .then(a.cmp(&b))
    });
    let sorts_both = idx.windows(2).all(|w| {
        xv[w[0]] >= xv[w[1]] && yv[w[0]] >= yv[w[1]]
    });
    if !sorts_both {
        return Ok(None);
    }
    let mut map = vec![0; xv.len()];
    for (rank, &orig) in idx.iter().enumerate() {
        map[orig] = rank;
    }
    Ok(Some(Permutation { map }))
}

/// Convex combination `(1-t)x + ty`.
pub fn mix(x: &Distribution, y: &Distribution, t: f64) -> Result<Distribution> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::BadParameter {
            name: "t",
            value: t,
        });
    }
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    let values = x
        .values()
        .iter()
        .zip(y.values())
        .map(|(&a, &b)| (1.0 - t) * a + t * b)
        .collect();
    Ok(Distribution::from_raw(values))
}

/// Shannon entropy in nats, with `0 ln 0 = 0`.
pub fn shannon_entropy(x: &Distribution) -> f64 {
    x.values()
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| -v * v.ln())
        .sum()
}

/// Whether the support of `y` is included in the support of `x`:
/// every zero of `x` is a zero of `y`.
pub fn support_subset(y: &Distribution, x: &Distribution) -> Result<bool> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: y.dim(),
            right: x.dim(),
        });
    }
    Ok(x.values()
        .iter()
        .zip(y.values())
        .all(|(&xk, &yk)| xk != 0.0 || yk == 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(values: &[f64]) -> Distribution {
        Distribution::from_values(values).unwrap()
    }

    #[test]
    fn construction_validates_and_normalises() {
        let x = d(&[0.5, 0.3, 0.2]);
        assert_eq!(x.values(), &[0.5, 0.3, 0.2]);

        let bot = d(&[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]);
        assert_eq!(bot, Distribution::uniform(3));

        assert!(matches!(
            Distribution::from_values(&[0.5, 0.6, -0.1]),
            Err(Error::NegativeEntry { index: 2, .. })
        ));
        assert!(matches!(
            Distribution::from_values(&[0.5, 0.6]),
            Err(Error::BadSum { .. })
        ));
        assert!(matches!(Distribution::from_values(&[]), Err(Error::Empty)));

        // near-zero clamping produces exact zeros
        let x = d(&[0.5, 0.5, 1e-12]);
        assert_eq!(x.values()[2], 0.0);
    }

    #[test]
    fn canonical_elements() {
        assert_eq!(Distribution::uniform(3).values(), &[1.0 / 3.0; 3]);
        assert_eq!(Distribution::pointed(3, 0).unwrap().values(), &[1.0, 0.0, 0.0]);
        assert_eq!(Distribution::uniform(1).values(), &[1.0]);
        assert!(matches!(
            Distribution::pointed(3, 3),
            Err(Error::BadIndex { index: 3, dim: 3 })
        ));
    }

    #[test]
    fn permute_follows_the_image_convention() {
        // cycle positions 0 -> 1 -> 2 -> 0
        let sigma = Permutation::new(vec![1, 2, 0]).unwrap();
        let x = d(&[0.5, 0.3, 0.2]);
        assert_eq!(x.permute(&sigma).unwrap().values(), &[0.2, 0.5, 0.3]);

        let id = Permutation::identity(3);
        assert_eq!(x.permute(&id).unwrap(), x);

        let swap = Permutation::new(vec![1, 0, 2]).unwrap();
        let y = d(&[0.2, 0.5, 0.3]);
        assert_eq!(y.permute(&swap).unwrap().values(), &[0.5, 0.2, 0.3]);

        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn retraction_sorts_with_stable_ties() {
        let (m, sigma) = monotone_retract(&d(&[0.2, 0.5, 0.3]));
        assert_eq!(m.values(), &[0.5, 0.3, 0.2]);
        assert_eq!(
            d(&[0.2, 0.5, 0.3]).permute(&sigma).unwrap().values(),
            m.values()
        );

        let (m, sigma) = monotone_retract(&d(&[0.5, 0.3, 0.2]));
        assert_eq!(m.values(), &[0.5, 0.3, 0.2]);
        assert!(sigma.is_identity());

        // tie between the first two entries keeps original index order
        let (m, sigma) = monotone_retract(&d(&[0.2, 0.2, 0.6]));
        assert_eq!(m.values(), &[0.6, 0.2, 0.2]);
        assert_eq!(sigma.map(), &[1, 2, 0]);
    }

    // Oracle for the sector search: try all n! permutations.
    fn sector_oracle(x: &Distribution, y: &Distribution) -> bool {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 1 {
                return vec![vec![0]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for slot in 0..n {
                    let mut q = p.clone();
                    q.insert(slot, n - 1);
                    out.push(q);
                }
            }
            out
        }
        perms(x.dim()).into_iter().any(|map| {
            let sigma = Permutation::new(map).unwrap();
            x.permute(&sigma).unwrap().is_monotone_decreasing()
                && y.permute(&sigma).unwrap().is_monotone_decreasing()
        })
    }

    #[test]
    fn common_sector_search_matches_exhaustive_oracle() {
        let cases = [
            ([0.5, 0.2, 0.3], [0.6, 0.1, 0.3], true),
            ([0.5, 0.3, 0.2], [0.6, 0.15, 0.25], false),
            ([0.3, 0.5, 0.2], [0.4, 0.4, 0.2], true),
        ];
        for (xv, yv, expect) in cases {
            let x = d(&xv);
            let y = d(&yv);
            assert_eq!(sector_oracle(&x, &y), expect, "oracle disagrees for {xv:?} {yv:?}");
            let found = common_sector_permutation(&x, &y).unwrap();
            assert_eq!(found.is_some(), expect);
            if let Some(sigma) = found {
                assert!(x.permute(&sigma).unwrap().is_monotone_decreasing());
                assert!(y.permute(&sigma).unwrap().is_monotone_decreasing());
            }
        }

        // documented tie-break: sigma = (0->0, 1->2, 2->1) for the first case
        let sigma = common_sector_permutation(&d(&[0.5, 0.2, 0.3]), &d(&[0.6, 0.1, 0.3]))
            .unwrap()
            .unwrap();
        assert_eq!(sigma.map(), &[0, 2, 1]);
    }

    #[test]
    fn extrema_reads_coordinates() {
        let e = extrema(&d(&[0.5, 0.3, 0.2]));
        assert_eq!((e.max_coord, e.min_nonzero, e.zero_count), (0.5, 0.2, 0));
        let e = extrema(&Distribution::pointed(3, 0).unwrap());
        assert_eq!((e.max_coord, e.min_nonzero, e.zero_count), (1.0, 1.0, 2));
        let e = extrema(&d(&[0.5, 0.5, 0.0]));
        assert_eq!((e.max_coord, e.min_nonzero, e.zero_count), (0.5, 0.5, 1));
    }

    #[test]
    fn mixing_is_componentwise() {
        let bot = Distribution::uniform(3);
        let top = Distribution::pointed(3, 0).unwrap();
        let m = mix(&bot, &top, 0.5).unwrap();
        assert!(m.linf_distance(&d(&[2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0])) < 1e-15);

        let x = d(&[0.5, 0.3, 0.2]);
        let y = d(&[0.7, 0.2, 0.1]);
        assert_eq!(mix(&x, &y, 0.0).unwrap(), x);
        assert_eq!(mix(&x, &y, 1.0).unwrap(), y);
        assert!(mix(&x, &y, 1.5).is_err());
    }

    #[test]
    fn entropy_reference_points() {
        assert_eq!(shannon_entropy(&Distribution::pointed(4, 1).unwrap()), 0.0);
        assert!((shannon_entropy(&Distribution::uniform(3)) - 3.0f64.ln()).abs() < 1e-12);
        assert!((shannon_entropy(&d(&[0.5, 0.5, 0.0])) - 2.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn support_inclusion() {
        let top = Distribution::pointed(3, 0).unwrap();
        let half = d(&[0.5, 0.5, 0.0]);
        assert!(support_subset(&top, &half).unwrap());
        assert!(!support_subset(&half, &top).unwrap());
        assert!(support_subset(&half, &half).unwrap());
    }
}
