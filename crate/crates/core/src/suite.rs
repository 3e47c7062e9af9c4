//! Sampling machinery and desk-scale checkers for the order axioms and
//! cross-order claims: partial-order laws, information-ordering laws,
//! the degeneracy condition, measurement monotonicity and strictness,
//! contradiction and containment scans, and barycentric region scans.
//!
//! Reports are deterministic for a fixed configuration regardless of the
//! number of worker threads: pairwise work is independent and results are
//! aggregated in sample order.

use crate::error::{Error, Result};
use crate::measure::Measurement;
use crate::orders::{
    bayes_sorted_kernel, lowner_minus_kernel, lowner_plus_kernel, majorization_sorted_kernel,
    max_of, min_nonzero_of, restricted_feature_kernel, ComparisonResult, OrderSpec, Scratch,
    COMPARISON_SLACK,
};
use crate::simplex::{sector_compatible, Distribution, DEFAULT_VALIDATION_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::time::{Duration, Instant};

/// How many violation witnesses are stored per check; counts are exact.
const MAX_RECORDED: usize = 8;

/// Sampling plan for a checker pool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub n: usize,
    pub strategy: SampleStrategy,
    pub include_boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SampleStrategy {
    /// Every lattice point `k/denominator` of the simplex.
    Grid { denominator: u32 },
    /// Uniform samples via normalized unit-rate exponential draws.
    Random { count: usize, seed: u64 },
}

/// Enumerates the configured pool. Grid pools list all integer
/// compositions of the denominator; random pools are reproducible from
/// the seed.
pub fn sample(config: &SampleConfig) -> Vec<Distribution> {
    let n = config.n;
    assert!(n >= 1, "dimension must be at least 1");
    match config.strategy {
        SampleStrategy::Grid { denominator } => {
            assert!(denominator >= 1, "grid denominator must be at least 1");
            let d = denominator;
            let lo = if config.include_boundary { 0 } else { 1 };
            let mut out = Vec::new();
            let mut parts = vec![0u32; n];
            compositions(d, lo, 0, &mut parts, &mut out);
            out
        }
        SampleStrategy::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(count);
            let mut draw = vec![0.0; n];
            for _ in 0..count {
                let mut sum = 0.0;
                for slot in draw.iter_mut() {
                    let e = -(1.0 - rng.gen::<f64>()).ln();
                    *slot = e;
                    sum += e;
                }
                let values: Vec<f64> = draw.iter().map(|&e| e / sum).collect();
                out.push(
                    Distribution::new(&values, DEFAULT_VALIDATION_TOL)
                        .expect("normalized draws lie on the simplex"),
                );
            }
            out
        }
    }
}

fn compositions(rem: u32, lo: u32, slot: usize, parts: &mut Vec<u32>, out: &mut Vec<Distribution>) {
    let n = parts.len();
    let d = parts.iter().take(slot).sum::<u32>() + rem;
    if slot == n - 1 {
        if rem >= lo {
            parts[slot] = rem;
            let values: Vec<f64> = parts.iter().map(|&k| k as f64 / d as f64).collect();
            out.push(
                Distribution::new(&values, DEFAULT_VALIDATION_TOL)
                    .expect("grid points lie on the simplex"),
            );
        }
        return;
    }
    let max_here = rem.saturating_sub(lo * (n - slot - 1) as u32);
    for k in lo..=max_here {
        parts[slot] = k;
        compositions(rem - k, lo, slot + 1, parts, out);
    }
}

/// One reproducible failure of a check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub witnesses: Vec<Vec<f64>>,
    pub details: String,
}

/// Aggregated result of one named check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
}

impl CheckOutcome {
    fn collect(name: &str, checked: u64, mut violations: Vec<Violation>) -> Self {
        let violation_count = violations.len() as u64;
        violations.truncate(MAX_RECORDED);
        CheckOutcome {
            name: name.to_string(),
            pass: violation_count == 0,
            checked,
            violation_count,
            violations,
        }
    }
}

/// Structured record of a suite run. Serialization omits the elapsed
/// time so identical runs produce identical bytes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub spec: String,
    pub n: usize,
    pub sample_count: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub checks: Vec<CheckOutcome>,
    #[serde(skip, default)]
    pub elapsed: Duration,
}

impl SuiteReport {
    fn new(spec: &dyn fmt::Display, n: usize, sample_count: usize) -> Self {
        SuiteReport {
            spec: spec.to_string(),
            n,
            sample_count,
            seed: None,
            checks: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn total_violations(&self) -> u64 {
        self.checks.iter().map(|c| c.violation_count).sum()
    }

    /// Appends the checks of another report over the same pool.
    pub fn merge(mut self, other: SuiteReport) -> SuiteReport {
        self.checks.extend(other.checks);
        self.elapsed += other.elapsed;
        self
    }

    pub fn outcome(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

// ---------------------------------------------------------------------------
// Pooled pairwise machinery.

/// Per-point caches for a fixed sample pool.
struct Pool {
    n: usize,
    len: usize,
    values: Vec<f64>,
    sorted: Vec<f64>,
    order: Vec<u8>,
    max: Vec<f64>,
    min_nz: Vec<f64>,
    tied: Vec<bool>,
}

impl Pool {
    fn build(samples: &[Distribution]) -> Result<Pool> {
        let len = samples.len();
        let n = samples.first().map_or(0, Distribution::dim);
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > u8::MAX as usize {
            return Err(Error::BadDimension {
                dim: n,
                reason: "checker pools support dimensions up to 255",
            });
        }
        for s in samples {
            if s.dim() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: s.dim(),
                });
            }
        }
        let mut pool = Pool {
            n,
            len,
            values: Vec::with_capacity(len * n),
            sorted: Vec::with_capacity(len * n),
            order: Vec::with_capacity(len * n),
            max: Vec::with_capacity(len),
            min_nz: Vec::with_capacity(len),
            tied: Vec::with_capacity(len),
        };
        let mut idx: Vec<u8> = Vec::new();
        for s in samples {
            let v = s.values();
            pool.values.extend_from_slice(v);
            idx.clear();
            idx.extend(0..n as u8);
            idx.sort_by(|&a, &b| {
                v[b as usize]
                    .partial_cmp(&v[a as usize])
                    .unwrap()
                    .then(a.cmp(&b))
            });
            let base = pool.sorted.len();
            pool.sorted.extend(idx.iter().map(|&k| v[k as usize]));
            pool.order.extend_from_slice(&idx);
            let sorted = &pool.sorted[base..];
            pool.tied.push(sorted.windows(2).any(|w| w[0] == w[1]));
            pool.max.push(max_of(v));
            pool.min_nz.push(min_nonzero_of(v));
        }
        Ok(pool)
    }

    #[inline]
    fn vals(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    #[inline]
    fn sorted(&self, i: usize) -> &[f64] {
        &self.sorted[i * self.n..(i + 1) * self.n]
    }

    #[inline]
    fn ord(&self, i: usize) -> &[u8] {
        &self.order[i * self.n..(i + 1) * self.n]
    }

    /// Whether points `i` and `j` share a sector. Equal canonical orders
    /// decide instantly; tie-free points with different orders must
    /// cross; only tied points need the quadratic scan.
    #[inline]
    fn sector_fast(&self, i: usize, j: usize) -> bool {
        if self.ord(i) == self.ord(j) {
            return true;
        }
        if !self.tied[i] && !self.tied[j] {
            return false;
        }
        sector_compatible(self.vals(i), self.vals(j))
    }

    fn linf(&self, i: usize, j: usize) -> f64 {
        self.vals(i)
            .iter()
            .zip(self.vals(j))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// A relation evaluated over a pool, both by index (cached data) and on
/// raw value slices (mixtures, permuted copies).
trait PoolRelation: Sync {
    fn leq_pool(&self, pool: &Pool, i: usize, j: usize) -> bool;
    fn leq_values(&self, x: &[f64], y: &[f64], scratch: &mut Scratch) -> bool;
}

/// An order spec compiled against a pool: restricted orders get their
/// `f`/`g` feature rows precomputed on the sorted representatives.
struct Prepared<'a> {
    spec: &'a OrderSpec,
    eps: f64,
    kind: PreparedKind<'a>,
}

enum PreparedKind<'a> {
    LownerPlus,
    LownerMinus,
    Bayesian,
    Restricted {
        f: Vec<f64>,
        g: Vec<f64>,
        stride: usize,
    },
    Majorization,
    Meet(Vec<Prepared<'a>>),
}

impl<'a> Prepared<'a> {
    fn build(spec: &'a OrderSpec, pool: &Pool, eps: f64) -> Result<Prepared<'a>> {
        spec.validate_for(pool.n)?;
        let kind = match spec {
            OrderSpec::LownerPlus => PreparedKind::LownerPlus,
            OrderSpec::LownerMinus => PreparedKind::LownerMinus,
            OrderSpec::Bayesian => PreparedKind::Bayesian,
            OrderSpec::Majorization => PreparedKind::Majorization,
            OrderSpec::Restricted(params) => {
                let stride = pool.n.saturating_sub(1);
                let mut f = Vec::with_capacity(pool.len * stride);
                let mut g = Vec::with_capacity(pool.len * stride);
                let mut fb = Vec::new();
                let mut gb = Vec::new();
                for i in 0..pool.len {
                    params.fill_features(pool.sorted(i), &mut fb, &mut gb);
                    f.extend_from_slice(&fb);
                    g.extend_from_slice(&gb);
                }
                PreparedKind::Restricted { f, g, stride }
            }
            OrderSpec::Meet(members) => PreparedKind::Meet(
                members
                    .iter()
                    .map(|m| Prepared::build(m, pool, eps))
                    .collect::<Result<_>>()?,
            ),
        };
        Ok(Prepared { spec, eps, kind })
    }
}

impl PoolRelation for Prepared<'_> {
    fn leq_pool(&self, pool: &Pool, i: usize, j: usize) -> bool {
        if pool.n == 1 {
            return true;
        }
        match &self.kind {
            PreparedKind::LownerPlus => lowner_plus_kernel(
                pool.vals(i),
                pool.max[i],
                pool.vals(j),
                pool.max[j],
                self.eps,
            ),
            PreparedKind::LownerMinus => lowner_minus_kernel(
                pool.vals(i),
                pool.min_nz[i],
                pool.vals(j),
                pool.min_nz[j],
                self.eps,
            ),
            PreparedKind::Bayesian => {
                pool.sector_fast(i, j)
                    && bayes_sorted_kernel(pool.sorted(i), pool.sorted(j), self.eps)
            }
            PreparedKind::Majorization => {
                pool.sector_fast(i, j)
                    && majorization_sorted_kernel(pool.sorted(i), pool.sorted(j), self.eps)
            }
            PreparedKind::Restricted { f, g, stride } => {
                pool.sector_fast(i, j)
                    && restricted_feature_kernel(
                        &f[i * stride..(i + 1) * stride],
                        &g[i * stride..(i + 1) * stride],
                        &f[j * stride..(j + 1) * stride],
                        &g[j * stride..(j + 1) * stride],
                        self.eps,
                    )
            }
            PreparedKind::Meet(members) => members.iter().all(|m| m.leq_pool(pool, i, j)),
        }
    }

    fn leq_values(&self, x: &[f64], y: &[f64], scratch: &mut Scratch) -> bool {
        self.spec.leq_unchecked(x, y, self.eps, scratch)
    }
}

/// Row-major adjacency bitset: bit `j` of row `i` means `leq(i, j)`.
struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn build<R: PoolRelation>(rel: &R, pool: &Pool) -> BitMatrix {
        let len = pool.len;
        let words = len.div_ceil(64);
        let mut bits = vec![0u64; len * words];
        bits.par_chunks_mut(words).enumerate().for_each(|(i, row)| {
            for j in 0..len {
                if rel.leq_pool(pool, i, j) {
                    row[j / 64] |= 1u64 << (j % 64);
                }
            }
        });
        BitMatrix { words, bits }
    }

    #[inline]
    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] & (1u64 << (j % 64)) != 0
    }

    fn for_each_set(row: &[u64], mut f: impl FnMut(usize)) {
        for (w, &word) in row.iter().enumerate() {
            let mut b = word;
            while b != 0 {
                let t = b.trailing_zeros() as usize;
                f(w * 64 + t);
                b &= b - 1;
            }
        }
    }
}

fn point_vec(pool: &Pool, i: usize) -> Vec<f64> {
    pool.vals(i).to_vec()
}

fn flatten(per_row: Vec<Vec<Violation>>) -> Vec<Violation> {
    per_row.into_iter().flatten().collect()
}

// ---------------------------------------------------------------------------
// Individual checks.

fn reflexivity_outcome(pool: &Pool, adj: &BitMatrix) -> CheckOutcome {
    let violations = (0..pool.len)
        .filter(|&i| !adj.get(i, i))
        .map(|i| Violation {
            check: "reflexivity".into(),
            witnesses: vec![point_vec(pool, i)],
            details: "leq(x, x) is false".into(),
        })
        .collect();
    CheckOutcome::collect("reflexivity", pool.len as u64, violations)
}

fn antisymmetry_outcome(pool: &Pool, adj: &BitMatrix, eps: f64) -> CheckOutcome {
    let per_row: Vec<Vec<Violation>> = (0..pool.len)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            BitMatrix::for_each_set(adj.row(i), |j| {
                if j > i && adj.get(j, i) && pool.linf(i, j) > 10.0 * eps {
                    out.push(Violation {
                        check: "antisymmetry".into(),
                        witnesses: vec![point_vec(pool, i), point_vec(pool, j)],
                        details: "distinct points below each other".into(),
                    });
                }
            });
            out
        })
        .collect();
    let checked = (pool.len as u64) * (pool.len as u64 - 1) / 2;
    CheckOutcome::collect("antisymmetry", checked, flatten(per_row))
}

fn transitivity_outcome(pool: &Pool, adj: &BitMatrix) -> CheckOutcome {
    let results: Vec<(u64, Vec<Violation>)> = (0..pool.len)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            let mut checked = 0u64;
            let row_i = adj.row(i);
            BitMatrix::for_each_set(row_i, |j| {
                if j == i {
                    return;
                }
                checked += 1;
                let row_j = adj.row(j);
                for w in 0..adj.words {
                    let missing = row_j[w] & !row_i[w];
                    if missing != 0 {
                        let z = w * 64 + missing.trailing_zeros() as usize;
                        out.push(Violation {
                            check: "transitivity".into(),
                            witnesses: vec![
                                point_vec(pool, i),
                                point_vec(pool, j),
                                point_vec(pool, z),
                            ],
                            details: "x below y below z but x not below z".into(),
                        });
                        break;
                    }
                }
            });
            (checked, out)
        })
        .collect();
    let checked = results.iter().map(|(c, _)| c).sum();
    let violations = results.into_iter().flat_map(|(_, v)| v).collect();
    CheckOutcome::collect("transitivity", checked, violations)
}

/// All permutations of `0..n` in a deterministic order, capped for larger
/// dimensions.
fn permutations_capped(n: usize, cap: usize) -> Vec<Vec<u8>> {
    let mut current: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![current.clone()];
    // lexicographic successor
    loop {
        if out.len() >= cap {
            break;
        }
        let Some(k) = (0..n - 1).rev().find(|&k| current[k] < current[k + 1]) else {
            break;
        };
        let l = (k + 1..n).rev().find(|&l| current[l] > current[k]).unwrap();
        current.swap(k, l);
        current[k + 1..].reverse();
        out.push(current.clone());
    }
    out
}

fn permutation_invariance_outcome<R: PoolRelation>(
    rel: &R,
    pool: &Pool,
    adj: &BitMatrix,
) -> CheckOutcome {
    let cap = if pool.n <= 5 { usize::MAX } else { 120 };
    let perms = permutations_capped(pool.n, cap);
    let results: Vec<(u64, Vec<Violation>)> = (0..pool.len)
        .into_par_iter()
        .map(|i| {
            let mut scratch = Scratch::new();
            let mut px = vec![0.0; pool.n];
            let mut py = vec![0.0; pool.n];
            let mut out = Vec::new();
            let mut checked = 0u64;
            BitMatrix::for_each_set(adj.row(i), |j| {
                if j == i {
                    return;
                }
                let (x, y) = (pool.vals(i), pool.vals(j));
                for sigma in &perms {
                    checked += 1;
                    for (k, &m) in sigma.iter().enumerate() {
                        px[m as usize] = x[k];
                        py[m as usize] = y[k];
                    }
                    if !rel.leq_values(&px, &py, &mut scratch) {
                        out.push(Violation {
                            check: "permutation-invariance".into(),
                            witnesses: vec![x.to_vec(), y.to_vec()],
                            details: format!("relation lost under permutation {sigma:?}"),
                        });
                        break;
                    }
                }
            });
            (checked, out)
        })
        .collect();
    let checked = results.iter().map(|(c, _)| c).sum();
    let violations = results.into_iter().flat_map(|(_, v)| v).collect();
    CheckOutcome::collect("permutation-invariance", checked, violations)
}

fn mixing_outcome<R: PoolRelation>(rel: &R, pool: &Pool, adj: &BitMatrix) -> CheckOutcome {
    let ts: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    let results: Vec<(u64, Vec<Violation>)> = (0..pool.len)
        .into_par_iter()
        .map(|i| {
            let mut scratch = Scratch::new();
            let mut m = vec![0.0; pool.n];
            let mut out = Vec::new();
            let mut checked = 0u64;
            BitMatrix::for_each_set(adj.row(i), |j| {
                if j == i {
                    return;
                }
                let (x, y) = (pool.vals(i), pool.vals(j));
                for &t in &ts {
                    checked += 1;
                    for k in 0..pool.n {
                        m[k] = (1.0 - t) * x[k] + t * y[k];
                    }
                    if !rel.leq_values(x, &m, &mut scratch) || !rel.leq_values(&m, y, &mut scratch)
                    {
                        out.push(Violation {
                            check: "mixing".into(),
                            witnesses: vec![x.to_vec(), y.to_vec(), m.clone()],
                            details: format!("mixture at t = {t} escapes the interval"),
                        });
                        break;
                    }
                }
            });
            (checked, out)
        })
        .collect();
    let checked = results.iter().map(|(c, _)| c).sum();
    let violations = results.into_iter().flat_map(|(_, v)| v).collect();
    CheckOutcome::collect("mixing", checked, violations)
}

fn bounds_outcome<R: PoolRelation>(rel: &R, pool: &Pool) -> CheckOutcome {
    let n = pool.n;
    let bottom = vec![1.0 / n as f64; n];
    let per_row: Vec<Vec<Violation>> = (0..pool.len)
        .into_par_iter()
        .map(|i| {
            let mut scratch = Scratch::new();
            let mut top = vec![0.0; n];
            let mut out = Vec::new();
            let x = pool.vals(i);
            if !rel.leq_values(&bottom, x, &mut scratch) {
                out.push(Violation {
                    check: "bottom-minimal".into(),
                    witnesses: vec![x.to_vec()],
                    details: "uniform distribution is not below this point".into(),
                });
            }
            let argmax = x
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .map(|(k, _)| k)
                .unwrap_or(0);
            let below_some_top = std::iter::once(argmax)
                .chain(0..n)
                .any(|k| {
                    top.fill(0.0);
                    top[k] = 1.0;
                    rel.leq_values(x, &top, &mut scratch)
                });
            if !below_some_top {
                out.push(Violation {
                    check: "below-some-top".into(),
                    witnesses: vec![x.to_vec()],
                    details: "point is below no pointed distribution".into(),
                });
            }
            out
        })
        .collect();
    CheckOutcome::collect("bounds", 2 * pool.len as u64, flatten(per_row))
}

// ---------------------------------------------------------------------------
// Public checkers.

fn finish(mut report: SuiteReport, started: Instant) -> SuiteReport {
    report.elapsed = started.elapsed();
    report
}

/// Reflexivity, antisymmetry and transitivity over the sampled pool.
/// Transitivity is checked along the comparability graph; incomparable
/// triples are vacuous.
pub fn check_partial_order_axioms(spec: &OrderSpec, samples: &[Distribution]) -> Result<SuiteReport> {
    let started = Instant::now();
    let pool = Pool::build(samples)?;
    let rel = Prepared::build(spec, &pool, COMPARISON_SLACK)?;
    let adj = BitMatrix::build(&rel, &pool);
    let mut report = SuiteReport::new(spec, pool.n, pool.len);
    report.checks.push(reflexivity_outcome(&pool, &adj));
    report
        .checks
        .push(antisymmetry_outcome(&pool, &adj, COMPARISON_SLACK));
    report.checks.push(transitivity_outcome(&pool, &adj));
    Ok(finish(report, started))
}

/// Permutation invariance, mixing, the uniform distribution as minimum
/// and the pointed distributions as maximal elements.
pub fn check_information_axioms(spec: &OrderSpec, samples: &[Distribution]) -> Result<SuiteReport> {
    let started = Instant::now();
    let pool = Pool::build(samples)?;
    let rel = Prepared::build(spec, &pool, COMPARISON_SLACK)?;
    let adj = BitMatrix::build(&rel, &pool);
    let mut report = SuiteReport::new(spec, pool.n, pool.len);
    report
        .checks
        .push(permutation_invariance_outcome(&rel, &pool, &adj));
    report.checks.push(mixing_outcome(&rel, &pool, &adj));
    report.checks.push(bounds_outcome(&rel, &pool));
    Ok(finish(report, started))
}

/// All axioms of an information ordering in one pass, sharing the
/// adjacency computation.
pub fn check_information_ordering(spec: &OrderSpec, samples: &[Distribution]) -> Result<SuiteReport> {
    let started = Instant::now();
    let pool = Pool::build(samples)?;
    let rel = Prepared::build(spec, &pool, COMPARISON_SLACK)?;
    let adj = BitMatrix::build(&rel, &pool);
    let mut report = SuiteReport::new(spec, pool.n, pool.len);
    report.checks.push(reflexivity_outcome(&pool, &adj));
    report
        .checks
        .push(antisymmetry_outcome(&pool, &adj, COMPARISON_SLACK));
    report.checks.push(transitivity_outcome(&pool, &adj));
    report
        .checks
        .push(permutation_invariance_outcome(&rel, &pool, &adj));
    report.checks.push(mixing_outcome(&rel, &pool, &adj));
    report.checks.push(bounds_outcome(&rel, &pool));
    Ok(finish(report, started))
}

/// The degeneracy condition over comparable sampled pairs: nonzero ties
/// of the upper element must appear as nonzero ties of the lower one.
pub fn check_degeneracy(spec: &OrderSpec, samples: &[Distribution]) -> Result<SuiteReport> {
    let started = Instant::now();
    let pool = Pool::build(samples)?;
    let rel = Prepared::build(spec, &pool, COMPARISON_SLACK)?;
    let eps = COMPARISON_SLACK;
    let results: Vec<(u64, Vec<Violation>)> = (0..pool.len)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            let mut checked = 0u64;
            for j in 0..pool.len {
                if i == j || pool.linf(i, j) <= 10.0 * eps || !rel.leq_pool(&pool, i, j) {
                    continue;
                }
                checked += 1;
                let (x, y) = (pool.vals(i), pool.vals(j));
                'search: for k in 0..pool.n {
                    for l in k + 1..pool.n {
                        if (y[k] - y[l]).abs() <= eps && y[k] > eps {
                            let mirrored =
                                (x[k] - x[l]).abs() <= eps && x[k] > eps && x[l] > eps;
                            if !mirrored {
                                out.push(Violation {
                                    check: "degeneracy".into(),
                                    witnesses: vec![x.to_vec(), y.to_vec()],
                                    details: format!(
                                        "upper element ties coordinates {k} and {l}, lower does not"
                                    ),
                                });
                                break 'search;
                            }
                        }
                    }
                }
            }
            (checked, out)
        })
        .collect();
    let checked = results.iter().map(|(c, _)| c).sum();
    let violations = results.into_iter().flat_map(|(_, v)| v).collect();
    let mut report = SuiteReport::new(spec, pool.n, pool.len);
    report
        .checks
        .push(CheckOutcome::collect("degeneracy", checked, violations));
    Ok(finish(report, started))
}

/// Monotonicity and strictness of a measurement along comparable sampled
/// pairs. The codomain carries the reversed order: going up must not
/// increase the measurement.
pub fn check_measurement(
    spec: &OrderSpec,
    measurement: Measurement,
    samples: &[Distribution],
) -> Result<SuiteReport> {
    let started = Instant::now();
    let pool = Pool::build(samples)?;
    let rel = Prepared::build(spec, &pool, COMPARISON_SLACK)?;
    let eps = COMPARISON_SLACK;
    let mu: Vec<f64> = samples
        .iter()
        .map(|s| measurement.evaluate(s))
        .collect::<Result<_>>()?;
    let results: Vec<(u64, Vec<Violation>)> = (0..pool.len)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            let mut checked = 0u64;
            for j in 0..pool.len {
                if i == j || !rel.leq_pool(&pool, i, j) {
                    continue;
                }
                checked += 1;
                if mu[i] < mu[j] - eps {
                    out.push(Violation {
                        check: "measurement-monotonicity".into(),
                        witnesses: vec![point_vec(&pool, i), point_vec(&pool, j)],
                        details: format!("mu rose from {} to {} going up", mu[i], mu[j]),
                    });
                } else if (mu[i] - mu[j]).abs() <= eps && pool.linf(i, j) > 10.0 * eps {
                    out.push(Violation {
                        check: "measurement-strictness".into(),
                        witnesses: vec![point_vec(&pool, i), point_vec(&pool, j)],
                        details: "equal measurement on distinct comparable points".into(),
                    });
                }
            }
            (checked, out)
        })
        .collect();
    let checked = results.iter().map(|(c, _)| c).sum();
    let violations = results.into_iter().flat_map(|(_, v)| v).collect();
    let mut report = SuiteReport::new(
        &format!("{spec} / {measurement}") as &dyn fmt::Display,
        pool.n,
        pool.len,
    );
    report
        .checks
        .push(CheckOutcome::collect("measurement", checked, violations));
    Ok(finish(report, started))
}

/// Searches for a pair related by the order on which the measurement
/// strictly increases going up; `None` when the pool shows no
/// disagreement. Used for claims that are reported rather than asserted.
pub fn find_measurement_disagreement(
    spec: &OrderSpec,
    measurement: Measurement,
    samples: &[Distribution],
) -> Result<Option<(Distribution, Distribution)>> {
    let pool = Pool::build(samples)?;
    let rel = Prepared::build(spec, &pool, COMPARISON_SLACK)?;
    let mu: Vec<f64> = samples
        .iter()
        .map(|s| measurement.evaluate(s))
        .collect::<Result<_>>()?;
    for i in 0..pool.len {
        for j in 0..pool.len {
            if i != j && mu[j] > mu[i] + 1e-9 && rel.leq_pool(&pool, i, j) {
                return Ok(Some((samples[i].clone(), samples[j].clone())));
            }
        }
    }
    Ok(None)
}

/// Reports every sampled pair of distinct points related by `spec_a` one
/// way and by `spec_b` the other way. An empty list means the two orders
/// never contradict each other on the pool.
pub fn check_contradiction(
    spec_a: &OrderSpec,
    spec_b: &OrderSpec,
    samples: &[Distribution],
) -> Result<SuiteReport> {
    let started = Instant::now();
    let pool = Pool::build(samples)?;
    let rel_a = Prepared::build(spec_a, &pool, COMPARISON_SLACK)?;
    let rel_b = Prepared::build(spec_b, &pool, COMPARISON_SLACK)?;
    let eps = COMPARISON_SLACK;
    let per_row: Vec<Vec<Violation>> = (0..pool.len)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in 0..pool.len {
                if i != j
                    && pool.linf(i, j) > 10.0 * eps
                    && rel_a.leq_pool(&pool, i, j)
                    && rel_b.leq_pool(&pool, j, i)
                {
                    out.push(Violation {
                        check: "contradiction".into(),
                        witnesses: vec![point_vec(&pool, i), point_vec(&pool, j)],
                        details: format!(
                            "first below second under {spec_a}, second below first under {spec_b}"
                        ),
                    });
                }
            }
            out
        })
        .collect();
    let checked = (pool.len as u64) * (pool.len as u64 - 1);
    let mut report = SuiteReport::new(
        &format!("{spec_a} vs {spec_b}") as &dyn fmt::Display,
        pool.n,
        pool.len,
    );
    report
        .checks
        .push(CheckOutcome::collect("contradiction", checked, flatten(per_row)));
    Ok(finish(report, started))
}

/// Counts sampled pairs related by one order but not the other, in both
/// directions. Zero exceptions in one direction witnesses containment on
/// the pool.
pub fn check_containment(
    spec_a: &OrderSpec,
    spec_b: &OrderSpec,
    samples: &[Distribution],
) -> Result<SuiteReport> {
    let started = Instant::now();
    let pool = Pool::build(samples)?;
    let rel_a = Prepared::build(spec_a, &pool, COMPARISON_SLACK)?;
    let rel_b = Prepared::build(spec_b, &pool, COMPARISON_SLACK)?;
    let per_row: Vec<(Vec<Violation>, Vec<Violation>)> = (0..pool.len)
        .into_par_iter()
        .map(|i| {
            let mut only_a = Vec::new();
            let mut only_b = Vec::new();
            for j in 0..pool.len {
                if i == j {
                    continue;
                }
                let a = rel_a.leq_pool(&pool, i, j);
                let b = rel_b.leq_pool(&pool, i, j);
                if a != b {
                    let (target, check) = if a {
                        (&mut only_a, "related-only-by-first")
                    } else {
                        (&mut only_b, "related-only-by-second")
                    };
                    target.push(Violation {
                        check: check.into(),
                        witnesses: vec![point_vec(&pool, i), point_vec(&pool, j)],
                        details: String::new(),
                    });
                }
            }
            (only_a, only_b)
        })
        .collect();
    let checked = (pool.len as u64) * (pool.len as u64 - 1);
    let mut only_a = Vec::new();
    let mut only_b = Vec::new();
    for (a, b) in per_row {
        only_a.extend(a);
        only_b.extend(b);
    }
    let mut report = SuiteReport::new(
        &format!("{spec_a} vs {spec_b}") as &dyn fmt::Display,
        pool.n,
        pool.len,
    );
    report
        .checks
        .push(CheckOutcome::collect("related-only-by-first", checked, only_a));
    report
        .checks
        .push(CheckOutcome::collect("related-only-by-second", checked, only_b));
    Ok(finish(report, started))
}

// ---------------------------------------------------------------------------
// Region scans.

/// Classification of a scan cell against the base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Up,
    Down,
    Equal,
    Incomparable,
}

impl Relation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Relation::Up => "up",
            Relation::Down => "down",
            Relation::Equal => "equal",
            Relation::Incomparable => "incomparable",
        }
    }

    pub fn from_comparison(c: ComparisonResult) -> Relation {
        match c {
            ComparisonResult::LessThan => Relation::Down,
            ComparisonResult::GreaterThan => Relation::Up,
            ComparisonResult::Equal => Relation::Equal,
            ComparisonResult::Incomparable => Relation::Incomparable,
        }
    }
}

impl std::str::FromStr for Relation {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "up" => Ok(Relation::Up),
            "down" => Ok(Relation::Down),
            "equal" => Ok(Relation::Equal),
            "incomparable" => Ok(Relation::Incomparable),
            other => Err(format!("unknown relation {other:?}")),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One barycentric cell and its relation to the base point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanCell {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub relation: Relation,
}

/// A classified barycentric grid over the three-dimensional simplex.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanGrid {
    pub base: Vec<f64>,
    pub resolution: u32,
    pub cells: Vec<ScanCell>,
}

impl ScanGrid {
    pub fn count(&self, relation: Relation) -> usize {
        self.cells.iter().filter(|c| c.relation == relation).count()
    }

    /// Cell indices classified `Up` (or `Down`), for set comparisons
    /// between scans of the same resolution.
    pub fn region(&self, relation: Relation) -> Vec<usize> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.relation == relation)
            .map(|(k, _)| k)
            .collect()
    }
}

/// Classifies every cell of the barycentric triangle at the given
/// resolution by comparison with `base`.
pub fn region_scan(spec: &OrderSpec, base: &Distribution, resolution: u32) -> Result<ScanGrid> {
    if base.dim() != 3 {
        return Err(Error::BadDimension {
            dim: base.dim(),
            reason: "region scans cover the three-dimensional simplex",
        });
    }
    if resolution < 2 {
        return Err(Error::BadParameter {
            name: "resolution",
            value: resolution as f64,
        });
    }
    spec.validate_for(3)?;
    let r = resolution;
    let mut coords = Vec::new();
    for i in 0..=r {
        for j in 0..=(r - i) {
            coords.push((i, j, r - i - j));
        }
    }
    let cells: Result<Vec<ScanCell>> = coords
        .par_iter()
        .map(|&(i, j, k)| {
            let values = [
                i as f64 / r as f64,
                j as f64 / r as f64,
                k as f64 / r as f64,
            ];
            let cell = Distribution::new(&values, DEFAULT_VALIDATION_TOL)?;
            let relation = Relation::from_comparison(spec.compare(&cell, base)?);
            Ok(ScanCell {
                a: values[0],
                b: values[1],
                c: values[2],
                relation,
            })
        })
        .collect();
    Ok(ScanGrid {
        base: base.values().to_vec(),
        resolution,
        cells: cells?,
    })
}
