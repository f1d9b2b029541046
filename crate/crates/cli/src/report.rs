//! The verification report: every closed-form claim about the family checked
//! against computation, one line per claim.

use powergraph_core::family;
use powergraph_core::matrices;
use powergraph_core::power_graph::{build_power_graph, classify_partition, verify_decomposition};
use powergraph_core::spectra::{block_reduce, compare_spectra, rd_alpha_closed_form, BlockForm, RdQuotientEntries, Spectrum};
use powergraph_core::{AdjacencyRule, Alpha, DenseSymMatrix, GroupParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{self, DetourSource, Instance};
use crate::config::{RdX, RunConfig};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// Informational; never fails the run.
    Diagnostic,
    /// Could not be checked within the configured limits.
    Unverified,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Diagnostic => "DIAGNOSTIC",
            Status::Unverified => "UNVERIFIED",
        }
    }

    fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub claim: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub diagnostic: usize,
    pub unverified: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn text(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{:<10} {:<width$}  {}\n", c.status.name(), c.id, c.detail));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{} passed, {} failed, {} diagnostic, {} unverified\n",
            s.pass, s.fail, s.diagnostic, s.unverified
        ));
        out
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, id: impl Into<String>, claim: &'static str, status: Status, detail: impl Into<String>) {
        self.0.push(Check { id: id.into(), claim, status, detail: detail.into() });
    }
}

fn random_sym(rng: &mut ChaCha8Rng, n: usize) -> DenseSymMatrix {
    let mut m = DenseSymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            m.set(i, j, rng.gen_range(-1.0..1.0));
        }
    }
    m
}

/// Block forms with `m₁, m₂ ≤ 4`, `c ≤ 6` and entries in `[-1, 1)`.
pub fn random_block_forms(seed: u64, count: usize) -> Vec<BlockForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (m1, m2, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen_range(1..=6));
            let u = random_sym(&mut rng, m1);
            let v = (0..m1).map(|_| (0..m2).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
            let x = random_sym(&mut rng, m2);
            let w = random_sym(&mut rng, m2);
            BlockForm::new(u, v, x, w, c).expect("dimensions agree")
        })
        .collect()
}

/// Largest deviation between the reduced and the direct spectrum, and how
/// many forms exceed `tol`.
pub fn block_reduction_deviation(forms: &[BlockForm], tol: f64) -> Result<(f64, usize), CliError> {
    let mut worst = 0.0f64;
    let mut failures = 0;
    for form in forms {
        let direct = powergraph_core::eigen::sym_eigenvalues(&form.assemble(), powergraph_core::eigen::DEFAULT_TOL)?;
        let cmp = compare_spectra(&Spectrum::from_numeric(&direct, 0.0), &block_reduce(form)?, tol);
        worst = worst.max(cmp.max_deviation);
        failures += usize::from(!cmp.matches());
    }
    Ok((worst, failures))
}

fn alpha_id(base: &str, a: Alpha) -> String {
    format!("{base}[alpha={}]", a.get())
}

pub fn run_report(cfg: &RunConfig) -> Result<Report, CliError> {
    let params: GroupParams = cfg.params().ok_or_else(|| CliError::usage("report needs --k and --p"))?;
    let inst = Instance::family(params, cfg.rule.into());
    let graph = &inst.graph;
    let mut checks = Checks(Vec::new());

    // Structure.
    match classify_partition(graph, &params) {
        Ok(classes) => {
            let d = verify_decomposition(graph, &classes);
            checks.push(
                "structure.decomposition",
                "the edge set is the union of the joins between the classes H0, H1, H2, H3",
                Status::of(d.holds()),
                format!("{} edges, {} missing, {} extra", graph.edge_count(), d.missing.len(), d.extra.len()),
            );
        }
        Err(e) => checks.push("structure.decomposition", "class partition", Status::Fail, e.to_string()),
    }
    let classes = family::vertex_classes(&params);
    let bad_degrees = (0..graph.order())
        .filter(|&v| graph.degree(v) as u64 != family::class_degree(&params, classes[v]))
        .count();
    checks.push(
        "structure.degrees",
        "degrees are 2N-1 on e, 3N/2-1 on u, N-1 on H1, 1 on H2, 3 on H3",
        Status::of(bad_degrees == 0 && graph.edge_count() as u64 == family::edge_count(&params)),
        format!("{bad_degrees} vertices off the class degree table; {} edges", graph.edge_count()),
    );
    if inst.rule == AdjacencyRule::Cyclic {
        let literal = build_power_graph(&params, AdjacencyRule::Power);
        checks.push(
            "structure.graph-model",
            "graph model",
            Status::Diagnostic,
            format!(
                "closed forms describe the common-cyclic-subgroup graph ({} edges); the power-of rule gives {} edges",
                graph.edge_count(),
                literal.edge_count()
            ),
        );
    }

    // Spectra.
    let docs = analysis::spectrum_docs(&inst, cfg)?;
    for (a, doc) in cfg.alpha_values().into_iter().zip(&docs) {
        let av = &doc.a_alpha;
        checks.push(
            alpha_id("twins", a),
            "every twin class forces its eigenvalue into the A_alpha spectrum",
            Status::of(av.twins_present),
            format!("{} twin eigenvalue groups", av.twin_eigenvalues.len()),
        );
        let (matches, recovered) = (av.matches == Some(true), av.multiplicities_recovered == Some(true));
        checks.push(
            alpha_id("spectrum.a-alpha", a),
            "A_alpha spectrum is the four families plus the five quotient eigenvalues",
            Status::of(matches && recovered),
            format!(
                "max deviation {:.3e} (tol {:e}); multiplicities {}",
                av.max_deviation.unwrap_or(f64::NAN),
                cfg.tol,
                if recovered { "recovered" } else { "NOT recovered" }
            ),
        );
        if let Some(q) = &av.quintic {
            checks.push(
                alpha_id("spectrum.quintic", a),
                "the printed quintic vanishes at the quotient eigenvalues",
                if q.matches { Status::Pass } else { Status::Diagnostic },
                q.diagnostic.clone().unwrap_or_else(|| "residuals within 1e-4 of scale".into()),
            );
        }
        if let Some(rd) = &doc.rd_alpha {
            let mut ok = rd.matches == Some(true);
            let mut detail = format!(
                "{} quotient entries: max deviation {:.3e} (tol {:e})",
                rd.quotient_entries,
                rd.max_deviation.unwrap_or(f64::NAN),
                cfg.tol
            );
            if let Some(eq) = rd.equals_rt_diagonal {
                ok &= eq;
                detail.push_str(if eq { "; equals the RT diagonal" } else { "; differs from the RT diagonal" });
            }
            checks.push(
                alpha_id("spectrum.rd-alpha", a),
                "RD_alpha spectrum is the five families plus the eigenvalues of the 5x5 matrix X",
                Status::of(ok),
                detail,
            );
        }
    }
    if cfg.rd_x == RdX::Printed && inst.rule == AdjacencyRule::Cyclic {
        let dist = matrices::distance_matrix(graph)?;
        let mut worst = 0.0f64;
        for a in cfg.alpha_values() {
            let numeric = powergraph_core::spectra::numeric_spectrum(&matrices::rd_alpha(&dist, a))?;
            let corrected = rd_alpha_closed_form(&params, a, RdQuotientEntries::Corrected)?;
            worst = worst.max(compare_spectra(&numeric, &corrected.spectrum, cfg.tol).max_deviation);
        }
        checks.push(
            "spectrum.rd-alpha.corrected",
            "RD_alpha with the H3 diagonal of X recomputed",
            Status::Diagnostic,
            format!("with X[H3,H3] = alpha(N+1) + (N/4)(1-alpha) the max deviation over all alphas is {worst:.3e}"),
        );
    }

    let forms = random_block_forms(cfg.seed, 100);
    let (worst, failures) = block_reduction_deviation(&forms, 1e-9)?;
    checks.push(
        "block-reduction",
        "Spec(N) together with Spec(X-W) repeated c-1 times is the spectrum of an equitable block form",
        Status::of(failures == 0),
        format!("100 random forms (seed {}): max deviation {worst:.3e}, {failures} over 1e-9", cfg.seed),
    );

    // Distances.
    let detour = analysis::detour(&inst, cfg.detour_time_budget_s)?;
    let dd = analysis::detour_doc(&inst, &detour);
    match detour.source {
        DetourSource::Exact => {
            let ecc_ok = dd.class_eccentricity.iter().all(|c| c.predicted == c.computed as u64);
            let ok = dd.matrix_matches_prediction == Some(true)
                && ecc_ok
                && Some(dd.radius as u64) == dd.predicted_radius
                && Some(dd.diameter as u64) == dd.predicted_diameter;
            let per_class: Vec<String> =
                dd.class_eccentricity.iter().map(|c| format!("{}={}", c.class, c.computed)).collect();
            checks.push(
                "detour",
                "detour distances, eccentricities, radius N+1 and diameter N+3",
                Status::of(ok),
                format!(
                    "exact search; rad_D={} dia_D={} ec_D {}; all pairs {}",
                    dd.radius,
                    dd.diameter,
                    per_class.join(" "),
                    if dd.matrix_matches_prediction == Some(true) { "match" } else { "DIFFER" }
                ),
            );
        }
        DetourSource::ClosedForm => checks.push(
            "detour",
            "detour distances, eccentricities, radius N+1 and diameter N+3",
            Status::Unverified,
            detour.note.clone().unwrap_or_default(),
        ),
    }

    let metric = analysis::metric_doc(&inst)?;
    checks.push(
        "metric-dimension",
        "psi = 7N/4 - 4, certified by the twin bound and a verified resolving set",
        Status::of(metric.psi.certified && metric.psi.value.map(|v| v as u64) == metric.psi.predicted),
        format!(
            "twin bound {}, witness of size {}, predicted {}",
            metric.psi.bound,
            metric.psi.witness.as_ref().map_or(0, Vec::len),
            metric.psi.predicted.unwrap_or(0)
        ),
    );
    match metric.sdim.value {
        Some(v) => checks.push(
            "strong-metric-dimension",
            "sdim = 2N - 3 as the vertex cover number of the strong resolving graph",
            Status::of(Some(v as u64) == metric.sdim.predicted),
            format!("exact cover {v}, predicted {}", metric.sdim.predicted.unwrap_or(0)),
        ),
        None => checks.push(
            "strong-metric-dimension",
            "sdim = 2N - 3 as the vertex cover number of the strong resolving graph",
            Status::Unverified,
            metric.sdim.note.clone().unwrap_or_default(),
        ),
    }

    let dist = matrices::distance_matrix(graph)?;
    let dds = analysis::dds_doc(&inst, &dist, &detour);
    if let Some(cmp) = &dds.comparison {
        let stated: Vec<_> = cmp.dds.iter().filter(|c| c.matches.is_some()).collect();
        checks.push(
            "dds",
            "distance degree sequences of e, u and H1",
            Status::of(stated.iter().all(|c| c.matches == Some(true))),
            stated.iter().map(|c| format!("{}={}", c.class, c.computed)).collect::<Vec<_>>().join(" "),
        );
        checks.push(
            "dds.multiset",
            "the dds multiset has three shapes",
            if cmp.dds_multiset.matches { Status::Pass } else { Status::Diagnostic },
            format!(
                "computed {} distinct sequences: {}",
                cmp.dds_multiset.computed.len(),
                cmp.dds_multiset
                    .computed
                    .iter()
                    .map(|g| format!("{}x{}", g.compact, g.count))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
        );
        let status = if dds.detour_oracle_verified {
            Status::of(cmp.dds_detour.iter().all(|c| c.matches == Some(true)) && cmp.dds_detour_multiset.matches)
        } else {
            Status::Unverified
        };
        checks.push(
            "dds-detour",
            "detour distance degree sequences of all five classes",
            status,
            cmp.dds_detour.iter().map(|c| format!("{}={}", c.class, c.computed)).collect::<Vec<_>>().join(" "),
        );
    }

    let checks = checks.0;
    let mut summary = Summary::default();
    for c in &checks {
        match c.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Diagnostic => summary.diagnostic += 1,
            Status::Unverified => summary.unverified += 1,
        }
    }
    Ok(Report { checks, summary })
}
