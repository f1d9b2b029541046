//! Computations shared by the commands and the report, with their
//! serialisable views.

use std::time::{Duration, Instant};

use powergraph_core::detour::DetourOptions;
use powergraph_core::distance_seq::{self, compact, DegreeSequenceTable, EccentricityProfile};
use powergraph_core::family::{self, VertexClass};
use powergraph_core::matrices::{self, DistanceMatrix};
use powergraph_core::metric::{self, ResolvingReport};
use powergraph_core::power_graph::build_power_graph;
use powergraph_core::spectra::{
    self, a_alpha_closed_form, cluster_tolerance, compare_spectra, multiplicities_recovered, numeric_spectrum,
    rd_alpha_closed_form, twin_eigenvalues, Spectrum, SpectrumEntry, SpectrumSource,
};
use powergraph_core::{AdjacencyRule, Alpha, Error, Graph, GroupParams};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::formats::{ingest_graph, label_string};

/// The graph under study and, for group runs, its parameters.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub params: Option<GroupParams>,
    pub rule: AdjacencyRule,
}

impl Instance {
    pub fn family(params: GroupParams, rule: AdjacencyRule) -> Self {
        Instance { graph: build_power_graph(&params, rule), params: Some(params), rule }
    }

    pub fn load(cfg: &RunConfig) -> Result<Self, CliError> {
        match (&cfg.graph, cfg.params()) {
            (Some(path), _) => Ok(Instance {
                graph: ingest_graph(path, cfg.graph_format)?,
                params: None,
                rule: cfg.rule.into(),
            }),
            (None, Some(params)) => Ok(Instance::family(params, cfg.rule.into())),
            (None, None) => Err(CliError::usage("no graph: pass --k and --p, or --graph")),
        }
    }

    /// Closed forms only describe the family under the cyclic rule.
    pub fn predicted(&self) -> Option<GroupParams> {
        self.params.filter(|_| self.rule == AdjacencyRule::Cyclic)
    }

    pub fn classes(&self) -> Option<Vec<VertexClass>> {
        self.params.map(|p| family::vertex_classes(&p))
    }

    pub fn label(&self, v: usize) -> String {
        label_string(self.graph.label(v))
    }

    pub fn labels_of(&self, vs: &[usize]) -> Vec<String> {
        vs.iter().map(|&v| self.label(v)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DetourSource {
    Exact,
    ClosedForm,
}

#[derive(Debug, Clone)]
pub struct DetourResult {
    pub matrix: DistanceMatrix,
    pub source: DetourSource,
    /// Why the exact search did not finish.
    pub note: Option<String>,
}

/// Exact search under a wall-clock budget; for the family an aborted search
/// falls back to the closed form.
pub fn detour(inst: &Instance, budget_s: f64) -> Result<DetourResult, CliError> {
    let start = Instant::now();
    let budget = Duration::from_secs_f64(budget_s);
    let mut abort = || start.elapsed() > budget;
    let mut opts = DetourOptions { should_abort: Some(&mut abort), ..DetourOptions::default() };
    match matrices::detour_matrix(&inst.graph, &mut opts) {
        Ok(matrix) => Ok(DetourResult { matrix, source: DetourSource::Exact, note: None }),
        Err(Error::DetourInfeasible(reason)) if inst.predicted().is_some() => Ok(DetourResult {
            matrix: family::detour_matrix(&inst.predicted().unwrap()),
            source: DetourSource::ClosedForm,
            note: Some(format!("not oracle-verified: exact search stopped ({reason})")),
        }),
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntryView {
    pub value: f64,
    pub mult: usize,
    pub source: &'static str,
}

fn source_name(s: SpectrumSource) -> &'static str {
    match s {
        SpectrumSource::Numeric => "numeric",
        SpectrumSource::ClosedFamily => "family",
        SpectrumSource::QuinticRoot => "quintic",
        SpectrumSource::QuotientRoot => "quotient",
    }
}

pub fn entry_views(entries: &[SpectrumEntry]) -> Vec<EntryView> {
    entries.iter().map(|e| EntryView { value: e.value, mult: e.multiplicity, source: source_name(e.source) }).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamsView {
    pub k: Option<u32>,
    pub p: Option<u64>,
    pub alpha: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuinticView {
    /// `[1, c4, c3, c2, c1, c0]`.
    pub coefficients: [f64; 6],
    pub roots: Vec<(f64, f64)>,
    pub relative_residuals: Vec<f64>,
    pub matches: bool,
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AAlphaView {
    /// Closed form: four families plus the quotient eigenvalues.
    pub families: Vec<EntryView>,
    pub numeric: Vec<EntryView>,
    pub twin_eigenvalues: Vec<EntryView>,
    pub twins_present: bool,
    pub max_deviation: Option<f64>,
    pub matches: Option<bool>,
    pub multiplicities_recovered: Option<bool>,
    pub quintic: Option<QuinticView>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RdAlphaView {
    pub quotient_entries: &'static str,
    pub families: Vec<EntryView>,
    pub numeric: Vec<EntryView>,
    pub max_deviation: Option<f64>,
    pub matches: Option<bool>,
    /// At `α = 1`: whether the closed form equals the transmission diagonal.
    pub equals_rt_diagonal: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumDoc {
    pub params: ParamsView,
    pub a_alpha: AAlphaView,
    /// Absent for disconnected graphs.
    pub rd_alpha: Option<RdAlphaView>,
}

fn twins_present(numeric: &Spectrum, twins: &Spectrum) -> bool {
    let tol = cluster_tolerance(numeric.spectral_norm());
    twins.entries().iter().all(|t| numeric.multiplicity_near(t.value, tol) >= t.multiplicity)
}

/// Tolerance for "exact" equality of values computed in floating point.
fn exact_tol(v: f64) -> f64 {
    1e-12 * v.abs().max(1.0)
}

pub fn spectrum_doc(inst: &Instance, alpha: Alpha, cfg: &RunConfig) -> Result<SpectrumDoc, CliError> {
    let numeric = numeric_spectrum(&matrices::a_alpha(&inst.graph, alpha))?;
    let twins = twin_eigenvalues(&inst.graph, alpha);
    let mut a_view = AAlphaView {
        families: vec![],
        numeric: entry_views(numeric.entries()),
        twin_eigenvalues: entry_views(twins.entries()),
        twins_present: twins_present(&numeric, &twins),
        max_deviation: None,
        matches: None,
        multiplicities_recovered: None,
        quintic: None,
    };
    if let Some(params) = inst.predicted() {
        let closed = a_alpha_closed_form(&params, alpha)?;
        let cmp = compare_spectra(&numeric, &closed.spectrum, cfg.tol);
        let fams = spectra::a_alpha_families(&params, alpha);
        let cluster = cluster_tolerance(numeric.spectral_norm());
        a_view.families = entry_views(closed.spectrum.entries());
        a_view.max_deviation = Some(cmp.max_deviation);
        a_view.matches = Some(cmp.matches());
        a_view.multiplicities_recovered = Some(multiplicities_recovered(&numeric, &closed.spectrum, &fams, cluster));
        let matches = closed.quintic_matches();
        a_view.quintic = Some(QuinticView {
            coefficients: closed.quintic.0,
            roots: closed.quintic_roots.clone(),
            relative_residuals: closed.quintic_relative_residuals.clone(),
            matches,
            diagnostic: (!matches).then(|| {
                let worst = closed.quintic_relative_residuals.iter().fold(0.0f64, |m, &r| m.max(r));
                format!(
                    "coefficient mismatch: printed quintic leaves relative residual {worst:.3e} at the quotient \
                     eigenvalues and its roots are {:.3e} away; the numeric spectrum is the arbiter",
                    closed.roots_deviation
                )
            }),
        });
    }

    let rd_alpha = match matrices::distance_matrix(&inst.graph) {
        Err(Error::Disconnected) => None,
        Err(e) => return Err(e.into()),
        Ok(dist) => {
            let numeric = numeric_spectrum(&matrices::rd_alpha(&dist, alpha))?;
            let mut view = RdAlphaView {
                quotient_entries: match cfg.rd_x {
                    crate::config::RdX::Printed => "printed",
                    crate::config::RdX::Corrected => "corrected",
                },
                families: vec![],
                numeric: entry_views(numeric.entries()),
                max_deviation: None,
                matches: None,
                equals_rt_diagonal: None,
            };
            if let Some(params) = inst.predicted() {
                let closed = rd_alpha_closed_form(&params, alpha, cfg.rd_x.into())?;
                let cmp = compare_spectra(&numeric, &closed.spectrum, cfg.tol);
                view.families = entry_views(closed.spectrum.entries());
                view.max_deviation = Some(cmp.max_deviation);
                view.matches = Some(cmp.matches());
                if alpha.get() == 1.0 {
                    let mut rt = matrices::reciprocal_transmission(&dist).diag();
                    rt.sort_by(|a, b| b.total_cmp(a));
                    let got = closed.spectrum.expanded();
                    view.equals_rt_diagonal = Some(
                        got.len() == rt.len() && got.iter().zip(&rt).all(|(x, y)| (x - y).abs() <= exact_tol(*y)),
                    );
                }
            }
            Some(view)
        }
    };
    Ok(SpectrumDoc {
        params: ParamsView { k: inst.params.map(|p| p.k()), p: inst.params.map(|p| p.p()), alpha: alpha.get() },
        a_alpha: a_view,
        rd_alpha,
    })
}

/// One document per α, computed concurrently and returned in input order.
pub fn spectrum_docs(inst: &Instance, cfg: &RunConfig) -> Result<Vec<SpectrumDoc>, CliError> {
    std::thread::scope(|scope| {
        let handles: Vec<_> =
            cfg.alpha_values().into_iter().map(|a| scope.spawn(move || spectrum_doc(inst, a, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("spectrum worker panicked")).collect()
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PsiView {
    pub bound: usize,
    pub witness: Option<Vec<String>>,
    pub certified: bool,
    pub value: Option<usize>,
    pub predicted: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SdimView {
    pub value: Option<usize>,
    pub cover_witness: Option<Vec<String>>,
    pub predicted: Option<u64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricDoc {
    pub psi: PsiView,
    pub sdim: SdimView,
    pub gsr_edges: Vec<(usize, usize)>,
}

pub fn metric_doc(inst: &Instance) -> Result<MetricDoc, CliError> {
    let predicted = inst.predicted();
    let resolving: Result<ResolvingReport, Error> = match predicted {
        Some(params) => family::certify_metric_dimension(&params, &inst.graph),
        None => metric::metric_dimension(&inst.graph, None),
    };
    let psi = match resolving {
        Ok(r) => PsiView {
            bound: r.lower_bound,
            witness: r.resolved.then(|| inst.labels_of(&r.witness)),
            certified: r.certified(),
            value: r.psi,
            predicted: predicted.map(|p| family::metric_dimension_value(&p)),
        },
        Err(Error::SizeCap { .. }) => PsiView {
            bound: metric::twin_lower_bound(&inst.graph),
            witness: None,
            certified: false,
            value: None,
            predicted: None,
        },
        Err(e) => return Err(e.into()),
    };
    let dist = matrices::distance_matrix(&inst.graph)?;
    let gsr = metric::mmd_graph(&inst.graph, &dist);
    let sdim_predicted = predicted.map(|p| family::strong_metric_dimension_value(&p));
    let sdim = match powergraph_core::vertex_cover::min_vertex_cover(&gsr) {
        Ok(cover) => SdimView {
            value: Some(cover.size),
            cover_witness: Some(inst.labels_of(&cover.witness)),
            predicted: sdim_predicted,
            note: None,
        },
        Err(e @ Error::SizeCap { .. }) => {
            SdimView { value: None, cover_witness: None, predicted: sdim_predicted, note: Some(e.to_string()) }
        }
        Err(e) => return Err(e.into()),
    };
    Ok(MetricDoc { psi, sdim, gsr_edges: gsr.edges() })
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassDetour {
    pub class: &'static str,
    pub predicted: u64,
    pub computed: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct DetourDoc {
    pub source: DetourSource,
    pub oracle_verified: bool,
    pub note: Option<String>,
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<u32>>,
    pub eccentricity: Vec<u32>,
    pub radius: u32,
    pub diameter: u32,
    pub predicted_radius: Option<u64>,
    pub predicted_diameter: Option<u64>,
    pub class_eccentricity: Vec<ClassDetour>,
    /// Whether every entry equals the closed-form detour distance.
    pub matrix_matches_prediction: Option<bool>,
}

fn class_representatives(classes: &[VertexClass]) -> Vec<(VertexClass, usize)> {
    VertexClass::ALL.iter().filter_map(|&c| classes.iter().position(|&x| x == c).map(|v| (c, v))).collect()
}

pub fn detour_doc(inst: &Instance, result: &DetourResult) -> DetourDoc {
    let profile: EccentricityProfile = distance_seq::detour_profile(&result.matrix);
    let predicted = inst.predicted();
    let class_eccentricity = match (predicted, inst.classes()) {
        (Some(params), Some(classes)) => class_representatives(&classes)
            .into_iter()
            .map(|(c, v)| ClassDetour {
                class: c.name(),
                predicted: family::detour_eccentricity(&params, c),
                computed: profile.eccentricity[v],
            })
            .collect(),
        _ => vec![],
    };
    DetourDoc {
        source: result.source,
        oracle_verified: result.source == DetourSource::Exact,
        note: result.note.clone(),
        labels: inst.labels_of(&(0..inst.graph.order()).collect::<Vec<_>>()),
        matrix: crate::formats::distance_rows(&result.matrix),
        eccentricity: profile.eccentricity.clone(),
        radius: profile.radius,
        diameter: profile.diameter,
        predicted_radius: predicted.map(|p| family::detour_radius(&p)),
        predicted_diameter: predicted.map(|p| family::detour_diameter(&p)),
        class_eccentricity,
        matrix_matches_prediction: predicted
            .filter(|_| result.source == DetourSource::Exact)
            .map(|p| result.matrix == family::detour_matrix(&p)),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SequenceRow {
    pub vertex: usize,
    pub label: String,
    pub class: Option<&'static str>,
    pub sequence: Vec<usize>,
    pub compact: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceCount {
    pub compact: String,
    pub sequence: Vec<usize>,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SequenceTableView {
    pub rows: Vec<SequenceRow>,
    pub groups: Vec<SequenceCount>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassSequence {
    pub class: &'static str,
    pub predicted: Option<String>,
    pub computed: String,
    pub matches: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MultisetComparison {
    pub printed: Vec<SequenceCount>,
    pub computed: Vec<SequenceCount>,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DdsComparison {
    pub dds: Vec<ClassSequence>,
    pub dds_multiset: MultisetComparison,
    pub dds_detour: Vec<ClassSequence>,
    pub dds_detour_multiset: MultisetComparison,
}

#[derive(Debug, Clone, Serialize)]
pub struct DdsDoc {
    pub dds: SequenceTableView,
    pub dds_detour: SequenceTableView,
    pub detour_oracle_verified: bool,
    pub comparison: Option<DdsComparison>,
}

fn table_view(inst: &Instance, table: &DegreeSequenceTable) -> SequenceTableView {
    let classes = inst.classes();
    SequenceTableView {
        rows: table
            .rows()
            .iter()
            .enumerate()
            .map(|(v, seq)| SequenceRow {
                vertex: v,
                label: inst.label(v),
                class: classes.as_ref().map(|c| c[v].name()),
                sequence: seq.clone(),
                compact: compact(seq),
            })
            .collect(),
        groups: table
            .groups()
            .into_iter()
            .map(|g| SequenceCount { compact: compact(&g.sequence), sequence: g.sequence, count: g.vertices.len() })
            .collect(),
    }
}

fn counts(mut items: Vec<(Vec<usize>, usize)>) -> Vec<SequenceCount> {
    items.sort();
    items.into_iter().map(|(sequence, count)| SequenceCount { compact: compact(&sequence), sequence, count }).collect()
}

fn multiset(printed: Vec<(Vec<usize>, usize)>, computed: &SequenceTableView) -> MultisetComparison {
    let printed = counts(printed);
    let computed = counts(computed.groups.iter().map(|g| (g.sequence.clone(), g.count)).collect());
    MultisetComparison { matches: printed == computed, printed, computed }
}

pub fn dds_doc(inst: &Instance, dist: &DistanceMatrix, detour: &DetourResult) -> DdsDoc {
    let dds = distance_seq::dds(dist);
    let dds_d = distance_seq::dds_detour(&detour.matrix);
    let dds_view = table_view(inst, &dds);
    let dds_d_view = table_view(inst, &dds_d);
    let comparison = inst.predicted().zip(inst.classes()).map(|(params, classes)| {
        let reps = class_representatives(&classes);
        DdsComparison {
            dds: reps
                .iter()
                .map(|&(c, v)| {
                    let predicted = family::dds(&params, c);
                    ClassSequence {
                        class: c.name(),
                        predicted: predicted.as_deref().map(compact),
                        computed: compact(dds.row(v)),
                        matches: predicted.map(|p| p == dds.row(v)),
                    }
                })
                .collect(),
            dds_multiset: multiset(family::dds_multiset(&params), &dds_view),
            dds_detour: reps
                .iter()
                .map(|&(c, v)| {
                    let predicted = family::dds_detour(&params, c);
                    ClassSequence {
                        class: c.name(),
                        predicted: Some(compact(&predicted)),
                        computed: compact(dds_d.row(v)),
                        matches: Some(predicted == dds_d.row(v)),
                    }
                })
                .collect(),
            dds_detour_multiset: multiset(
                VertexClass::ALL
                    .iter()
                    .map(|&c| (family::dds_detour(&params, c), family::class_size(&params, c) as usize))
                    .collect(),
                &dds_d_view,
            ),
        }
    });
    DdsDoc {
        dds: dds_view,
        dds_detour: dds_d_view,
        detour_oracle_verified: detour.source == DetourSource::Exact,
        comparison,
    }
}
