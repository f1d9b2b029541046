//! Spectra: numeric multisets, closed-form predictions for the family,
//! the equitable block reduction and spectrum comparison.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::eigen::{eval_poly, monic_roots, sym_eigenvalues};
use crate::graph::Graph;
use crate::group::GroupParams;
use crate::matrix::{Alpha, DenseSymMatrix};
use crate::power_graph::{twin_classes, TwinKind};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpectrumSource {
    Numeric,
    ClosedFamily,
    /// Root of the printed quintic `P(x)`.
    QuinticRoot,
    /// Eigenvalue of a small quotient matrix.
    QuotientRoot,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub value: f64,
    pub multiplicity: usize,
    pub source: SpectrumSource,
}

impl SpectrumEntry {
    pub fn new(value: f64, multiplicity: usize, source: SpectrumSource) -> Self {
        SpectrumEntry { value, multiplicity, source }
    }
}

/// Multiset of eigenvalues, sorted by value descending.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Spectrum {
    entries: Vec<SpectrumEntry>,
}

/// Eigenvalues closer than this are one multiplicity bucket.
pub fn cluster_tolerance(spectral_norm: f64) -> f64 {
    1e-6 * spectral_norm.max(1.0)
}

impl Spectrum {
    pub fn new(mut entries: Vec<SpectrumEntry>) -> Self {
        entries.retain(|e| e.multiplicity > 0);
        entries.sort_by(|a, b| b.value.total_cmp(&a.value).then(a.source.cmp(&b.source)));
        Spectrum { entries }
    }

    /// Groups sorted numeric eigenvalues into buckets whose neighbours are at
    /// most `tol` apart; each bucket reports its mean.
    pub fn from_numeric(values: &[f64], tol: f64) -> Self {
        Self::from_values(values, tol, SpectrumSource::Numeric)
    }

    fn from_values(values: &[f64], tol: f64, source: SpectrumSource) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort_by(|a, b| b.total_cmp(a));
        let mut entries: Vec<SpectrumEntry> = Vec::new();
        let mut sum = 0.0;
        let mut last = f64::NAN;
        for v in sorted {
            match entries.last_mut() {
                Some(e) if last - v <= tol => {
                    e.multiplicity += 1;
                    sum += v;
                    e.value = sum / e.multiplicity as f64;
                }
                _ => {
                    entries.push(SpectrumEntry::new(v, 1, source));
                    sum = v;
                }
            }
            last = v;
        }
        Spectrum { entries }
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Every eigenvalue repeated by multiplicity, descending.
    pub fn expanded(&self) -> Vec<f64> {
        let mut out: Vec<f64> =
            self.entries.iter().flat_map(|e| core::iter::repeat_n(e.value, e.multiplicity)).collect();
        out.sort_by(|a, b| b.total_cmp(a));
        out
    }

    /// Re-buckets the expanded multiset with `tol`, dropping provenance.
    pub fn clustered(&self, tol: f64) -> Spectrum {
        Self::from_values(&self.expanded(), tol, SpectrumSource::Numeric)
    }

    /// Total multiplicity of entries within `tol` of `value`.
    pub fn multiplicity_near(&self, value: f64, tol: f64) -> usize {
        self.entries
            .iter()
            .filter(|e| libm::fabs(e.value - value) <= tol)
            .map(|e| e.multiplicity)
            .sum()
    }

    pub fn extend(&mut self, other: Spectrum) {
        self.entries.extend(other.entries);
        let entries = core::mem::take(&mut self.entries);
        *self = Spectrum::new(entries);
    }

    pub fn spectral_norm(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| f64::max(m, libm::fabs(e.value)))
    }
}

/// Numeric spectrum of a symmetric matrix with the default bucketing.
pub fn numeric_spectrum(m: &DenseSymMatrix) -> Result<Spectrum> {
    let values = sym_eigenvalues(m, crate::eigen::DEFAULT_TOL)?;
    let norm = values.iter().fold(0.0, |acc: f64, v| acc.max(libm::fabs(*v)));
    Ok(Spectrum::from_numeric(&values, cluster_tolerance(norm)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumComparison {
    pub max_deviation: f64,
    /// `(position, left, right)` pairs further apart than the tolerance.
    pub mismatches: Vec<(usize, f64, f64)>,
    /// Totals `(left, right)` when they differ; no pairing is attempted then.
    pub total_mismatch: Option<(usize, usize)>,
}

impl SpectrumComparison {
    pub fn matches(&self) -> bool {
        self.total_mismatch.is_none() && self.mismatches.is_empty()
    }
}

/// Pairs both multisets in sorted order, which minimises the largest
/// deviation for real values.
pub fn compare_spectra(a: &Spectrum, b: &Spectrum, tol: f64) -> SpectrumComparison {
    if a.total() != b.total() {
        return SpectrumComparison {
            max_deviation: f64::INFINITY,
            mismatches: vec![],
            total_mismatch: Some((a.total(), b.total())),
        };
    }
    let mut out = SpectrumComparison { max_deviation: 0.0, mismatches: vec![], total_mismatch: None };
    for (i, (x, y)) in a.expanded().into_iter().zip(b.expanded()).enumerate() {
        let d = libm::fabs(x - y);
        out.max_deviation = out.max_deviation.max(d);
        if !(d <= tol) {
            out.mismatches.push((i, x, y));
        }
    }
    out
}

/// Multiplicity agreement under bucketing with `cluster_tol`: both multisets
/// split into the same buckets with equal multiplicities, and every family
/// value falls in a bucket at least as large as its own multiplicity. Family
/// values may coincide, so a bucket can be larger than any single family.
pub fn multiplicities_recovered(
    numeric: &Spectrum,
    closed: &Spectrum,
    families: &[SpectrumEntry],
    cluster_tol: f64,
) -> bool {
    let (a, b) = (numeric.clustered(cluster_tol), closed.clustered(cluster_tol));
    let same_buckets = a.entries().len() == b.entries().len()
        && a.entries().iter().zip(b.entries()).all(|(x, y)| {
            x.multiplicity == y.multiplicity && libm::fabs(x.value - y.value) <= cluster_tol
        });
    same_buckets
        && families.iter().all(|f| {
            let bucket = b.entries().iter().find(|e| libm::fabs(e.value - f.value) <= cluster_tol);
            bucket.is_some_and(|e| e.multiplicity >= f.multiplicity)
        })
}

/// Eigenvalues forced by twin classes: an open class of size `ℓ + 1` gives
/// `α·deg` with multiplicity `ℓ`, a closed one `α(deg + 1) − 1`.
pub fn twin_eigenvalues(graph: &Graph, alpha: Alpha) -> Spectrum {
    let a = alpha.get();
    let entries = twin_classes(graph)
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let deg = graph.degree(c.members[0]) as f64;
            let value = match c.kind {
                TwinKind::Closed => a * (deg + 1.0) - 1.0,
                _ => a * deg,
            };
            SpectrumEntry::new(value, c.len() - 1, SpectrumSource::ClosedFamily)
        })
        .collect();
    Spectrum::new(entries)
}

struct Sizes {
    /// `N = 2^k p`
    n: f64,
    /// `2^(k-1) p`
    half: f64,
    /// `2^(k-2) p`
    quarter: f64,
}

fn sizes(params: &GroupParams) -> Sizes {
    let n = params.cyclic_order() as f64;
    Sizes { n, half: n / 2.0, quarter: n / 4.0 }
}

/// The four `A_α` eigenvalue families with their multiplicities:
/// `α`, `αN − 1`, `4α − 1`, `2α + 1`.
pub fn a_alpha_families(params: &GroupParams, alpha: Alpha) -> Vec<SpectrumEntry> {
    let a = alpha.get();
    let Sizes { n, half, quarter } = sizes(params);
    let fam = |v, m: f64| SpectrumEntry::new(v, m as usize, SpectrumSource::ClosedFamily);
    vec![
        fam(a, half - 1.0),
        fam(a * n - 1.0, n - 3.0),
        fam(4.0 * a - 1.0, quarter),
        fam(2.0 * a + 1.0, quarter - 1.0),
    ]
}

/// Coefficients `[1, c4, c3, c2, c1, c0]` of the quintic, transcribed term by
/// term from its printed expansion in `k`, `p` and `α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuinticCoeffs(pub [f64; 6]);

impl QuinticCoeffs {
    pub fn printed(params: &GroupParams, alpha: Alpha) -> Self {
        let a = alpha.get();
        let (a2, a3, a4) = (a * a, a * a * a, a * a * a * a);
        let k = params.k() as i32;
        let p = params.p() as f64;
        let (p2, p3) = (p * p, p * p * p);
        let t = |e: i32| libm::pow(2.0, e as f64);

        let c4 = -((7.0 * t(k - 1) * p + 3.0) * a + t(k) * p - 2.0);
        let c3 = -((-3.0 * t(2 * k) * p2 - 21.0 * t(k - 1) * p - 2.0) * a2
            + (-7.0 * t(2 * k - 1) * p2 - t(k) * p + 8.0) * a
            + 5.0 * t(k - 1) * p);
        let c2 = -((9.0 * t(2 * k) * p2 + 7.0 * t(k) * p) * a3
            + (3.0 * t(3 * k) * p3 + 23.0 * t(2 * k - 1) * p2 - 3.0 * t(k + 1) * p - 6.0) * a2
            + (t(2 * k - 1) * p2 - 23.0 * t(k) * p + 6.0) * a
            - 3.0 * t(2 * k - 1) * p2
            + t(k + 2) * p
            + 2.0);
        let c1 = -(-3.0 * t(2 * k + 1) * p2 * a4
            + (-13.0 * t(3 * k - 1) * p3 - 59.0 * t(2 * k - 2) * p2 + 5.0 * t(k + 1) * p) * a3
            + (-t(3 * k + 3) * p3 + 105.0 * t(2 * k - 2) * p2 + 45.0 * t(k - 1) * p - 6.0) * a2
            + (5.0 * t(3 * k - 1) * p3 + 9.0 * t(2 * k - 2) * p2 - 5.0 * t(k + 2) * p) * a
            - 5.0 * t(2 * k - 2) * p2
            + 3.0 * t(k - 1) * p
            + 1.0);
        let c0 = -(3.0 * t(3 * k) * p3 + 15.0 * t(2 * k - 1) * p2) * a4
            - (31.0 * t(3 * k - 2) * p3 - 95.0 * t(2 * k - 2) * p2 - t(k + 1) * p) * a3
            - (-t(3 * k - 2) * p3 - 37.0 * t(2 * k - 2) * p2 + 9.0 * t(k + 1) * p - 2.0) * a2
            - (-7.0 * t(3 * k - 2) * p3 + 25.0 * t(2 * k - 2) * p2 - 3.0 * t(k - 1) * p - 1.0) * a
            - t(3 * k - 2) * p3
            + t(2 * k - 2) * p2
            + t(k) * p;
        QuinticCoeffs([1.0, c4, c3, c2, c1, c0])
    }

    pub fn eval(&self, x: f64) -> f64 {
        eval_poly(&self.0, x)
    }

    /// Sum of the magnitudes of the individual terms at `x`; the yardstick for
    /// a relative residual.
    pub fn scale(&self, x: f64) -> f64 {
        let ax = libm::fabs(x);
        self.0.iter().fold(0.0, |acc, &c| acc * ax + libm::fabs(c)).max(1.0)
    }
}

/// Symmetrises the quotient matrix of an equitable partition, whose class
/// sizes satisfy `nᵢ Qᵢⱼ = nⱼ Qⱼᵢ`.
fn symmetrize_quotient(q: &[[f64; 5]; 5], class_sizes: &[f64; 5]) -> Result<DenseSymMatrix> {
    let mut s = DenseSymMatrix::zeros(5);
    for i in 0..5 {
        s.set(i, i, q[i][i]);
        for j in i + 1..5 {
            let (lhs, rhs) = (class_sizes[i] * q[i][j], class_sizes[j] * q[j][i]);
            if libm::fabs(lhs - rhs) > 1e-9 * (1.0 + libm::fabs(lhs)) {
                return Err(Error::DimensionMismatch(format!(
                    "quotient entries ({i}, {j}) are not balanced by the class sizes"
                )));
            }
            s.set(i, j, q[i][j] * libm::sqrt(class_sizes[i] / class_sizes[j]));
        }
    }
    Ok(s)
}

/// Collapsed form of the printed `A_α` coefficient matrix `𝒴 = [[𝒜, ℬ], [𝒞, 𝒟]]`.
///
/// Unknowns: `x1` on `H2`, `x2` on `e`, `x3` on `⟨r⟩ ∖ {e, u}`, `x4` on `u`,
/// and one unknown for all `H3` pairs (the `𝒟 = (2α+1) I` block contributes
/// `2α + 1` with multiplicity `N/4 − 1` on vectors summing to zero across
/// pairs, and the collapsed unknown otherwise). The 5×5 result is symmetrised
/// with the class sizes `N/2, 1, N − 2, 1, N/2`.
pub fn a_alpha_quotient(params: &GroupParams, alpha: Alpha) -> Result<DenseSymMatrix> {
    let a = alpha.get();
    let b = 1.0 - a;
    let Sizes { n, half, quarter } = sizes(params);
    let block_a = [
        [a, b, 0.0, 0.0],
        [half * b, (2.0 * n - 1.0) * a, (n - 2.0) * b, b],
        [0.0, b, n + 2.0 * a - 3.0, b],
        [0.0, b, (n - 2.0) * b, (3.0 * half - 1.0) * a],
    ];
    // Row sums of ℬ (entries 2(1−α) in rows 2 and 4, N/4 columns).
    let block_b_sum = [0.0, 2.0 * b * quarter, 0.0, 2.0 * b * quarter];
    // Every row of 𝒞.
    let block_c_row = [0.0, b, 0.0, b];
    let block_d = 2.0 * a + 1.0;

    let mut q = [[0.0; 5]; 5];
    for i in 0..4 {
        q[i][..4].copy_from_slice(&block_a[i]);
        q[i][4] = block_b_sum[i];
    }
    q[4][..4].copy_from_slice(&block_c_row);
    q[4][4] = block_d;
    symmetrize_quotient(&q, &[half, 1.0, n - 2.0, 1.0, half])
}

#[derive(Clone, Debug, PartialEq)]
pub struct AAlphaClosedForm {
    /// Four families plus the five quotient eigenvalues.
    pub spectrum: Spectrum,
    /// Eigenvalues of [`a_alpha_quotient`], descending.
    pub quotient_roots: Vec<f64>,
    pub quintic: QuinticCoeffs,
    /// Companion-matrix roots of the printed quintic, `(re, im)`, descending.
    pub quintic_roots: Vec<(f64, f64)>,
    /// `|P(xᵢ)| / scale(xᵢ)` at each quotient root.
    pub quintic_relative_residuals: Vec<f64>,
    /// Largest distance between a quintic root and the matching quotient root.
    pub roots_deviation: f64,
}

/// Relative residual bound for the printed quintic at the quotient roots.
pub const QUINTIC_RESIDUAL_TOL: f64 = 1e-4;
/// Agreement tolerance between quintic roots and quotient roots.
pub const QUINTIC_ROOT_TOL: f64 = 1e-6;
/// Largest imaginary part accepted as a real root.
pub const QUINTIC_IMAG_TOL: f64 = 1e-8;

impl AAlphaClosedForm {
    /// Whether the printed quintic reproduces the quotient roots.
    pub fn quintic_matches(&self) -> bool {
        self.quintic_relative_residuals.iter().all(|&r| r <= QUINTIC_RESIDUAL_TOL)
            && self.quintic_roots.iter().all(|r| libm::fabs(r.1) <= QUINTIC_IMAG_TOL)
            && self.roots_deviation <= QUINTIC_ROOT_TOL
    }
}

pub fn a_alpha_closed_form(params: &GroupParams, alpha: Alpha) -> Result<AAlphaClosedForm> {
    let quotient = a_alpha_quotient(params, alpha)?;
    let quotient_roots = sym_eigenvalues(&quotient, crate::eigen::DEFAULT_TOL)?;
    let quintic = QuinticCoeffs::printed(params, alpha);
    let quintic_roots = monic_roots(&quintic.0)?;
    let quintic_relative_residuals =
        quotient_roots.iter().map(|&x| libm::fabs(quintic.eval(x)) / quintic.scale(x)).collect();
    let roots_deviation = quintic_roots
        .iter()
        .zip(&quotient_roots)
        .fold(0.0, |m, (r, &x)| f64::max(m, libm::hypot(r.0 - x, r.1)));

    let mut entries = a_alpha_families(params, alpha);
    entries.extend(quotient_roots.iter().map(|&x| SpectrumEntry::new(x, 1, SpectrumSource::QuotientRoot)));
    Ok(AAlphaClosedForm {
        spectrum: Spectrum::new(entries),
        quotient_roots,
        quintic,
        quintic_roots,
        quintic_relative_residuals,
        roots_deviation,
    })
}

/// Symmetric matrix with one distinguished block and `c` interchangeable copies:
///
/// ```text
/// [ U   V   V  …  V ]
/// [ Vᵀ  X   W  …  W ]
/// [ Vᵀ  W   X  …  W ]
/// [ …               ]
/// [ Vᵀ  W   W  …  X ]
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct BlockForm {
    pub u: DenseSymMatrix,
    /// `m₁ × m₂`, row-major.
    pub v: Vec<Vec<f64>>,
    pub x: DenseSymMatrix,
    pub w: DenseSymMatrix,
    pub copies: usize,
}

impl BlockForm {
    pub fn new(
        u: DenseSymMatrix,
        v: Vec<Vec<f64>>,
        x: DenseSymMatrix,
        w: DenseSymMatrix,
        copies: usize,
    ) -> Result<Self> {
        let (m1, m2) = (u.dim(), x.dim());
        if copies == 0 {
            return Err(Error::DimensionMismatch("copy count must be at least 1".into()));
        }
        if w.dim() != m2 || v.len() != m1 || v.iter().any(|row| row.len() != m2) {
            return Err(Error::DimensionMismatch(format!(
                "U is {m1}×{m1}, X is {m2}×{m2}, W is {0}×{0}, V must be {m1}×{m2}",
                w.dim()
            )));
        }
        Ok(BlockForm { u, v, x, w, copies })
    }

    /// `m₁ + c·m₂`.
    pub fn dim(&self) -> usize {
        self.u.dim() + self.copies * self.x.dim()
    }

    pub fn assemble(&self) -> DenseSymMatrix {
        let (m1, m2) = (self.u.dim(), self.x.dim());
        let mut m = DenseSymMatrix::zeros(self.dim());
        for i in 0..m1 {
            for j in i..m1 {
                m.set(i, j, self.u[(i, j)]);
            }
        }
        for c in 0..self.copies {
            let off = m1 + c * m2;
            for i in 0..m1 {
                for j in 0..m2 {
                    m.set(i, off + j, self.v[i][j]);
                }
            }
            for d in c..self.copies {
                let off2 = m1 + d * m2;
                let block = if c == d { &self.x } else { &self.w };
                for i in 0..m2 {
                    for j in 0..m2 {
                        if c != d || j >= i {
                            m.set(off + i, off2 + j, block[(i, j)]);
                        }
                    }
                }
            }
        }
        m
    }

    /// `N = [[U, √c V], [√c Vᵀ, X + (c−1) W]]`.
    pub fn reduced(&self) -> DenseSymMatrix {
        let (m1, m2) = (self.u.dim(), self.x.dim());
        let c = self.copies as f64;
        let root = libm::sqrt(c);
        let mut n = DenseSymMatrix::zeros(m1 + m2);
        for i in 0..m1 {
            for j in i..m1 {
                n.set(i, j, self.u[(i, j)]);
            }
            for j in 0..m2 {
                n.set(i, m1 + j, root * self.v[i][j]);
            }
        }
        for i in 0..m2 {
            for j in i..m2 {
                n.set(m1 + i, m1 + j, self.x[(i, j)] + (c - 1.0) * self.w[(i, j)]);
            }
        }
        n
    }

    pub fn difference(&self) -> DenseSymMatrix {
        self.x.combine(1.0, &self.w, -1.0).expect("X and W have equal order")
    }
}

/// `Spec(N) ∪ Spec(X − W)^(c−1)`.
pub fn block_reduce(form: &BlockForm) -> Result<Spectrum> {
    let tol = crate::eigen::DEFAULT_TOL;
    let mut entries: Vec<SpectrumEntry> = sym_eigenvalues(&form.reduced(), tol)?
        .into_iter()
        .map(|v| SpectrumEntry::new(v, 1, SpectrumSource::QuotientRoot))
        .collect();
    if form.copies > 1 {
        entries.extend(
            sym_eigenvalues(&form.difference(), tol)?
                .into_iter()
                .map(|v| SpectrumEntry::new(v, form.copies - 1, SpectrumSource::QuotientRoot)),
        );
    }
    Ok(Spectrum::new(entries))
}

/// Which `(4, 4)` entry to use in the 5×5 `RD_α` matrix `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum RdQuotientEntries {
    /// Exactly as printed: `α·N + (N/2 − 1)(1 − α)/2`, a copy of the `(3, 3)`
    /// entry.
    #[default]
    Printed,
    /// The `H3` diagonal of the class quotient: `α(N + 1) + (N/4)(1 − α)`.
    Corrected,
}

/// The five `RD_α` families: `α(1 + N)`, `(N + 2)α − 1`, `αN − (1 − α)/2`,
/// `(N + 1)α − (1 − α)` and `α(3N/2 − 1) − (1 − α)`.
pub fn rd_alpha_families(params: &GroupParams, alpha: Alpha) -> Vec<SpectrumEntry> {
    let a = alpha.get();
    let b = 1.0 - a;
    let Sizes { n, half, quarter } = sizes(params);
    let fam = |v, m: f64| SpectrumEntry::new(v, m as usize, SpectrumSource::ClosedFamily);
    vec![
        fam(a * (1.0 + n), quarter - 1.0),
        fam((n + 2.0) * a - 1.0, quarter - 1.0),
        fam(a * n - b / 2.0, half - 1.0),
        fam((n + 1.0) * a - b, 1.0),
        fam(a * (3.0 * half - 1.0) - b, n - 3.0),
    ]
}

/// `X = [[S, Y], [Yᵀ, α(3N/2 − 1) + (N − 3)(1 − α)]]` with rows ordered
/// `e, u, H2, H3, H1`.
pub fn rd_alpha_quotient(params: &GroupParams, alpha: Alpha, entries: RdQuotientEntries) -> DenseSymMatrix {
    let a = alpha.get();
    let b = 1.0 - a;
    let Sizes { n, half, quarter } = sizes(params);
    let rh = libm::sqrt(half);
    let h3_diag = match entries {
        RdQuotientEntries::Printed => a * n + (half - 1.0) * b / 2.0,
        RdQuotientEntries::Corrected => a * (n + 1.0) + quarter * b,
    };
    let s = [
        [a * (2.0 * n - 1.0), b, rh * b, rh * b],
        [b, a * (7.0 * quarter - 1.0), rh * b / 2.0, rh * b],
        [rh * b, rh * b / 2.0, a * n + (half - 1.0) * b / 2.0, libm::sqrt(half * half) * b / 2.0],
        [rh * b, rh * b, libm::sqrt(half * half) * b / 2.0, h3_diag],
    ];
    let y = [
        libm::sqrt(n - 2.0) * b,
        libm::sqrt(n - 2.0) * b,
        libm::sqrt(half * (n - 2.0)) * b / 2.0,
        libm::sqrt(half * (n - 2.0)) * b / 2.0,
    ];
    let mut x = DenseSymMatrix::zeros(5);
    for i in 0..4 {
        for j in i..4 {
            x.set(i, j, s[i][j]);
        }
        x.set(i, 4, y[i]);
    }
    x.set(4, 4, a * (3.0 * half - 1.0) + (n - 3.0) * b);
    x
}

#[derive(Clone, Debug, PartialEq)]
pub struct RdAlphaClosedForm {
    pub spectrum: Spectrum,
    pub quotient_roots: Vec<f64>,
    pub entries: RdQuotientEntries,
}

pub fn rd_alpha_closed_form(
    params: &GroupParams,
    alpha: Alpha,
    entries: RdQuotientEntries,
) -> Result<RdAlphaClosedForm> {
    let x = rd_alpha_quotient(params, alpha, entries);
    let quotient_roots = sym_eigenvalues(&x, crate::eigen::DEFAULT_TOL)?;
    let mut spectrum = rd_alpha_families(params, alpha);
    spectrum.extend(quotient_roots.iter().map(|&v| SpectrumEntry::new(v, 1, SpectrumSource::QuotientRoot)));
    Ok(RdAlphaClosedForm { spectrum: Spectrum::new(spectrum), quotient_roots, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::{a_alpha, distance_matrix, rd_alpha, reciprocal_transmission};
    use crate::power_graph::{build_power_graph, AdjacencyRule};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn alpha(a: f64) -> Alpha {
        Alpha::new(a).unwrap()
    }

    fn family(k: u32, p: u64) -> (GroupParams, Graph) {
        let g = GroupParams::new(k, p).unwrap();
        (g, build_power_graph(&g, AdjacencyRule::Cyclic))
    }

    fn values_mults(entries: &[SpectrumEntry]) -> Vec<(f64, usize)> {
        entries.iter().map(|e| (e.value, e.multiplicity)).collect()
    }

    #[test]
    fn clustering_and_totals() {
        let s = Spectrum::from_numeric(&[1.0, 3.0, 1.0 + 1e-9, -2.0], 1e-6);
        assert_eq!(s.total(), 4);
        assert_eq!(s.entries().len(), 3);
        assert_eq!(s.entries()[1].multiplicity, 2);
        assert_eq!(s.expanded().len(), 4);
        assert_eq!(s.multiplicity_near(1.0, 1e-6), 2);
    }

    #[test]
    fn comparison() {
        let a = Spectrum::from_numeric(&[2.0, 1.0, 1.0], 1e-9);
        assert_eq!(compare_spectra(&a, &a, 1e-12).max_deviation, 0.0);
        assert!(compare_spectra(&a, &a, 1e-12).matches());
        let b = Spectrum::from_numeric(&[2.0, 1.0, 1.5], 1e-9);
        let cmp = compare_spectra(&a, &b, 1e-8);
        assert!(!cmp.matches());
        assert_eq!(cmp.mismatches, vec![(1, 1.0, 1.5)]);
        let c = Spectrum::from_numeric(&[2.0, 1.0], 1e-9);
        assert_eq!(compare_spectra(&a, &c, 1e-8).total_mismatch, Some((3, 2)));
    }

    #[test]
    fn twin_eigenvalues_k2_p3() {
        let (_, graph) = family(2, 3);
        for a in [0.0, 0.3, 0.5, 1.0] {
            let twins = twin_eigenvalues(&graph, alpha(a));
            let tol = 1e-12;
            assert_eq!(twins.total(), 5 + 9 + 3);
            let has = |v: f64, m: usize| {
                twins.entries().iter().filter(|e| (e.value - v).abs() < tol).map(|e| e.multiplicity).sum::<usize>() >= m
            };
            assert!(has(a, 5));
            assert!(has(12.0 * a - 1.0, 9));
            assert!(has(4.0 * a - 1.0, 3));
        }
    }

    #[test]
    fn family_values_at_half() {
        let (g, _) = family(2, 3);
        assert_eq!(
            values_mults(&a_alpha_families(&g, alpha(0.5))),
            vec![(0.5, 5), (5.0, 9), (1.0, 3), (2.0, 2)]
        );
    }

    #[test]
    fn quotient_path_matches_numeric_spectrum() {
        for (k, p) in [(2, 3), (2, 5), (3, 3), (2, 7)] {
            let (g, graph) = family(k, p);
            for a in [0.0, 0.25, 0.5, 0.75, 1.0, 0.13] {
                let closed = a_alpha_closed_form(&g, alpha(a)).unwrap();
                assert_eq!(closed.spectrum.total() as u64, g.order());
                let numeric = numeric_spectrum(&a_alpha(&graph, alpha(a))).unwrap();
                let cmp = compare_spectra(&numeric, &closed.spectrum, 1e-8);
                assert!(cmp.matches(), "k={k} p={p} a={a}: {cmp:?}");
            }
        }
    }

    #[test]
    fn multiplicities_on_the_grid() {
        for (k, p) in [(2, 3), (2, 5), (3, 3)] {
            let (g, graph) = family(k, p);
            for a in [0.0, 0.25, 0.5, 0.75, 1.0] {
                let closed = a_alpha_closed_form(&g, alpha(a)).unwrap();
                let numeric = numeric_spectrum(&a_alpha(&graph, alpha(a))).unwrap();
                let tol = cluster_tolerance(numeric.spectral_norm());
                let fams = a_alpha_families(&g, alpha(a));
                assert!(multiplicities_recovered(&numeric, &closed.spectrum, &fams, tol), "k={k} p={p} a={a}");
                let mut wrong = fams.clone();
                wrong[0].multiplicity += 1;
                let mut entries = wrong.clone();
                entries.extend(closed.quotient_roots.iter().map(|&x| SpectrumEntry::new(x, 1, SpectrumSource::QuotientRoot)));
                assert!(!multiplicities_recovered(&numeric, &Spectrum::new(entries), &wrong, tol));
            }
        }
    }

    #[test]
    fn quotient_root_sum_is_the_remaining_trace() {
        let (g, graph) = family(2, 3);
        for a in [0.0, 0.25, 0.6] {
            let closed = a_alpha_closed_form(&g, alpha(a)).unwrap();
            let trace = a * graph.degrees().iter().sum::<usize>() as f64;
            let fam: f64 = a_alpha_families(&g, alpha(a)).iter().map(|e| e.value * e.multiplicity as f64).sum();
            let roots: f64 = closed.quotient_roots.iter().sum();
            assert!((roots - (trace - fam)).abs() < 1e-9);
        }
    }

    #[test]
    fn printed_quintic_holds_at_alpha_zero_only() {
        for (k, p) in [(2, 3), (2, 5), (3, 3)] {
            let (g, _) = family(k, p);
            let at_zero = a_alpha_closed_form(&g, alpha(0.0)).unwrap();
            assert!(at_zero.quintic_matches(), "k={k} p={p}");
            let at_half = a_alpha_closed_form(&g, alpha(0.5)).unwrap();
            assert!(!at_half.quintic_matches(), "k={k} p={p}");
        }
    }

    #[test]
    fn block_reduce_k3() {
        let u = DenseSymMatrix::diagonal(&[0.0]);
        let x = DenseSymMatrix::diagonal(&[0.0]);
        let w = DenseSymMatrix::diagonal(&[1.0]);
        let form = BlockForm::new(u, vec![vec![1.0]], x, w, 2).unwrap();
        let m = form.assemble();
        assert_eq!(m.rows(), vec![vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]]);
        let got = block_reduce(&form).unwrap().expanded();
        let want = [2.0, -1.0, -1.0];
        assert!(got.iter().zip(want).all(|(g, w)| (g - w).abs() < 1e-12), "{got:?}");
    }

    #[test]
    fn block_reduce_single_copy_is_the_matrix_itself() {
        let u = DenseSymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, -1.0]]).unwrap();
        let x = DenseSymMatrix::diagonal(&[3.0]);
        let w = DenseSymMatrix::diagonal(&[7.0]);
        let form = BlockForm::new(u, vec![vec![0.5], vec![-0.5]], x, w, 1).unwrap();
        assert_eq!(form.reduced(), form.assemble());
    }

    #[test]
    fn block_form_dimension_checks() {
        let one = DenseSymMatrix::diagonal(&[0.0]);
        let two = DenseSymMatrix::diagonal(&[0.0, 0.0]);
        assert!(BlockForm::new(one.clone(), vec![vec![1.0]], two.clone(), one.clone(), 2).is_err());
        assert!(BlockForm::new(one.clone(), vec![vec![1.0]], one.clone(), one.clone(), 0).is_err());
        assert!(BlockForm::new(one.clone(), vec![vec![1.0, 2.0]], one.clone(), one.clone(), 2).is_err());
    }

    fn random_sym(rng: &mut ChaCha8Rng, n: usize) -> DenseSymMatrix {
        let mut m = DenseSymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, rng.gen_range(-2.0..2.0));
            }
        }
        m
    }

    #[test]
    fn block_reduce_random_14x14() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let (m1, m2, c) = (2, 3, 4);
        let v = (0..m1).map(|_| (0..m2).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect();
        let form = BlockForm::new(random_sym(&mut rng, m1), v, random_sym(&mut rng, m2), random_sym(&mut rng, m2), c)
            .unwrap();
        assert_eq!(form.dim(), 14);
        let direct = Spectrum::from_numeric(&sym_eigenvalues(&form.assemble(), 1e-15).unwrap(), 1e-12);
        let reduced = block_reduce(&form).unwrap();
        let cmp = compare_spectra(&direct, &reduced, 1e-9);
        assert!(cmp.matches(), "{cmp:?}");
    }

    #[test]
    fn rd_families_at_alpha_one() {
        let (g, _) = family(2, 3);
        assert_eq!(
            values_mults(&rd_alpha_families(&g, alpha(1.0))),
            vec![(13.0, 2), (13.0, 2), (12.0, 5), (13.0, 1), (17.0, 9)]
        );
        let total: usize = rd_alpha_families(&GroupParams::new(2, 5).unwrap(), alpha(0.3))
            .iter()
            .map(|e| e.multiplicity)
            .sum::<usize>()
            + 5;
        assert_eq!(total, 40);
    }

    #[test]
    fn rd_corrected_quotient_matches_numeric() {
        for (k, p) in [(2, 3), (2, 5), (3, 3)] {
            let (g, graph) = family(k, p);
            let dist = distance_matrix(&graph).unwrap();
            for a in [0.0, 0.25, 0.5, 0.75, 1.0] {
                let numeric = numeric_spectrum(&rd_alpha(&dist, alpha(a))).unwrap();
                let closed = rd_alpha_closed_form(&g, alpha(a), RdQuotientEntries::Corrected).unwrap();
                let cmp = compare_spectra(&numeric, &closed.spectrum, 1e-8);
                assert!(cmp.matches(), "k={k} p={p} a={a}: {cmp:?}");
            }
            let rt = Spectrum::from_numeric(&reciprocal_transmission(&dist).diag(), 0.0);
            let at_one = rd_alpha_closed_form(&g, alpha(1.0), RdQuotientEntries::Corrected).unwrap();
            assert!(compare_spectra(&at_one.spectrum, &rt, 1e-9).matches());
        }
    }

    #[test]
    fn rd_printed_quotient_misses_the_h3_transmission() {
        let (g, graph) = family(2, 3);
        let dist = distance_matrix(&graph).unwrap();
        let rt = Spectrum::from_numeric(&reciprocal_transmission(&dist).diag(), 0.0);
        let printed = rd_alpha_closed_form(&g, alpha(1.0), RdQuotientEntries::Printed).unwrap();
        let want = [23.0, 20.0, 17.0, 12.0, 12.0];
        assert!(printed.quotient_roots.iter().zip(want).all(|(g, w)| (g - w).abs() < 1e-9));
        assert!(!compare_spectra(&printed.spectrum, &rt, 1e-6).matches());
    }
}
