//! Turns a [`RunConfig`] into named output documents.

use std::fmt::Write as _;
use std::path::Path;

use powergraph_core::matrices;
use powergraph_core::Error;
use serde::Serialize;

use crate::analysis::{self, DdsDoc, DetourDoc, Instance, MetricDoc, SequenceTableView, SpectrumDoc};
use crate::config::{Command, Format, RunConfig};
use crate::error::CliError;
use crate::formats::{self, GraphDoc};
use crate::report::{run_report, Report};

pub const TOOL: &str = "powergraph";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub name: String,
    pub body: String,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub documents: Vec<Document>,
    /// A report ran and at least one claim failed.
    pub mismatch: bool,
}

/// Every JSON document carries the tool, both versions and the configuration.
#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    library_version: &'static str,
    config: &'a RunConfig,
    #[serde(flatten)]
    body: T,
}

fn json_doc<T: Serialize>(cfg: &RunConfig, name: String, body: T) -> Document {
    let env = Envelope {
        tool: TOOL,
        version: env!("CARGO_PKG_VERSION"),
        library_version: powergraph_core::VERSION,
        config: cfg,
        body,
    };
    Document { name, body: formats::to_json(&env) }
}

fn doc(name: impl Into<String>, body: String) -> Document {
    Document { name: name.into(), body }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut documents = Vec::new();
    let mut mismatch = false;
    let needs_instance = cfg.commands.iter().any(|&c| c != Command::Report);
    let inst = if needs_instance { Some(Instance::load(cfg)?) } else { None };
    for &command in &cfg.commands {
        match command {
            Command::Build => documents.extend(build(cfg, inst.as_ref().unwrap())?),
            Command::Spectra => documents.extend(spectra(cfg, inst.as_ref().unwrap())?),
            Command::Metric => documents.push(metric(cfg, inst.as_ref().unwrap())?),
            Command::Detour => documents.push(detour(cfg, inst.as_ref().unwrap())?),
            Command::Dds => documents.push(dds(cfg, inst.as_ref().unwrap())?),
            Command::Report => {
                let report = run_report(cfg)?;
                mismatch |= report.failed();
                documents.push(report_doc(cfg, &report));
            }
        }
    }
    Ok(Outcome { documents, mismatch })
}

/// Writes each document to `dir`, creating it if needed.
pub fn write_documents(dir: &Path, documents: &[Document]) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    for d in documents {
        let path = dir.join(&d.name);
        std::fs::write(&path, &d.body).map_err(|e| CliError::io(&path, e))?;
    }
    Ok(())
}

fn alpha_tag(a: f64) -> String {
    format!("{a}")
}

#[derive(Serialize)]
struct AlphaMatrix {
    alpha: f64,
    matrix: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct MatricesDoc {
    adjacency: Vec<Vec<f64>>,
    distance: Option<Vec<Vec<u32>>>,
    reciprocal_distance: Option<Vec<Vec<f64>>>,
    a_alpha: Vec<AlphaMatrix>,
    rd_alpha: Vec<AlphaMatrix>,
}

#[derive(Serialize)]
struct ClassSizes {
    e: usize,
    u: usize,
    h1: usize,
    h2: usize,
    h3: usize,
}

#[derive(Serialize)]
struct BuildDoc {
    #[serde(flatten)]
    graph: GraphDoc,
    partition: Option<ClassSizes>,
}

fn build(cfg: &RunConfig, inst: &Instance) -> Result<Vec<Document>, CliError> {
    let graph = &inst.graph;
    let dist = match matrices::distance_matrix(graph) {
        Ok(d) => Some(d),
        Err(Error::Disconnected) => None,
        Err(e) => return Err(e.into()),
    };
    let alphas = cfg.alpha_values();
    let a_alpha: Vec<AlphaMatrix> = alphas
        .iter()
        .map(|&a| AlphaMatrix { alpha: a.get(), matrix: matrices::a_alpha(graph, a).rows() })
        .collect();
    let rd_alpha: Vec<AlphaMatrix> = match &dist {
        Some(d) => alphas.iter().map(|&a| AlphaMatrix { alpha: a.get(), matrix: matrices::rd_alpha(d, a).rows() }).collect(),
        None => vec![],
    };
    Ok(match cfg.format {
        Format::Json => {
            let partition = inst.classes().map(|classes| {
                let count = |name: &str| classes.iter().filter(|c| c.name() == name).count();
                ClassSizes { e: count("e"), u: count("u"), h1: count("H1"), h2: count("H2"), h3: count("H3") }
            });
            vec![
                json_doc(cfg, "graph.json".into(), BuildDoc { graph: GraphDoc::from_graph(graph), partition }),
                json_doc(
                    cfg,
                    "matrices.json".into(),
                    MatricesDoc {
                        adjacency: matrices::adjacency(graph).rows(),
                        distance: dist.as_ref().map(formats::distance_rows),
                        reciprocal_distance: dist.as_ref().map(|d| matrices::reciprocal_distance(d).rows()),
                        a_alpha,
                        rd_alpha,
                    },
                ),
            ]
        }
        Format::Csv => {
            let mut docs = vec![doc("adjacency.csv", formats::matrix_csv(&matrices::adjacency(graph).rows()))];
            if let Some(d) = &dist {
                docs.push(doc("distance.csv", formats::integer_matrix_csv(&formats::distance_rows(d))));
            }
            for m in &a_alpha {
                docs.push(doc(format!("a_alpha_{}.csv", alpha_tag(m.alpha)), formats::matrix_csv(&m.matrix)));
            }
            for m in &rd_alpha {
                docs.push(doc(format!("rd_alpha_{}.csv", alpha_tag(m.alpha)), formats::matrix_csv(&m.matrix)));
            }
            docs
        }
        Format::Text => vec![doc("graph.txt", formats::edge_list_text(graph))],
    })
}

fn spectra(cfg: &RunConfig, inst: &Instance) -> Result<Vec<Document>, CliError> {
    let docs = analysis::spectrum_docs(inst, cfg)?;
    Ok(match cfg.format {
        Format::Json => docs
            .into_iter()
            .map(|d| json_doc(cfg, format!("spectrum_alpha_{}.json", alpha_tag(d.params.alpha)), d))
            .collect(),
        Format::Csv => vec![doc("spectra_sweep.csv", sweep_csv(&docs))],
        Format::Text => vec![doc("spectra.txt", spectra_text(&docs))],
    })
}

/// Long format, one row per distinct eigenvalue.
fn sweep_csv(docs: &[SpectrumDoc]) -> String {
    let mut out = String::from("alpha,matrix,kind,value,multiplicity\n");
    for d in docs {
        let a = d.params.alpha;
        let mut rows = |matrix: &str, kind: &str, entries: &[analysis::EntryView]| {
            for e in entries {
                writeln!(out, "{a},{matrix},{kind},{},{}", e.value, e.mult).unwrap();
            }
        };
        rows("A_alpha", "numeric", &d.a_alpha.numeric);
        rows("A_alpha", "closed_form", &d.a_alpha.families);
        if let Some(rd) = &d.rd_alpha {
            rows("RD_alpha", "numeric", &rd.numeric);
            rows("RD_alpha", "closed_form", &rd.families);
        }
    }
    out
}

fn fmt_deviation(d: Option<f64>) -> String {
    d.map_or_else(|| "-".into(), |v| format!("{v:.3e}"))
}

fn spectra_text(docs: &[SpectrumDoc]) -> String {
    let mut out = String::new();
    for d in docs {
        writeln!(out, "alpha = {}", d.params.alpha).unwrap();
        let entries = |es: &[analysis::EntryView]| {
            es.iter().map(|e| format!("{:.6}^{}", e.value, e.mult)).collect::<Vec<_>>().join(" ")
        };
        writeln!(out, "  A_alpha  numeric      {}", entries(&d.a_alpha.numeric)).unwrap();
        if !d.a_alpha.families.is_empty() {
            writeln!(out, "  A_alpha  closed form  {}", entries(&d.a_alpha.families)).unwrap();
            writeln!(out, "  A_alpha  max deviation {}", fmt_deviation(d.a_alpha.max_deviation)).unwrap();
        }
        if let Some(q) = d.a_alpha.quintic.as_ref().and_then(|q| q.diagnostic.as_ref()) {
            writeln!(out, "  quintic  {q}").unwrap();
        }
        if let Some(rd) = &d.rd_alpha {
            writeln!(out, "  RD_alpha numeric      {}", entries(&rd.numeric)).unwrap();
            if !rd.families.is_empty() {
                writeln!(out, "  RD_alpha closed form  {}", entries(&rd.families)).unwrap();
                writeln!(out, "  RD_alpha max deviation {} ({} X)", fmt_deviation(rd.max_deviation), rd.quotient_entries)
                    .unwrap();
            }
        }
    }
    out
}

fn metric(cfg: &RunConfig, inst: &Instance) -> Result<Document, CliError> {
    let m: MetricDoc = analysis::metric_doc(inst)?;
    let opt = |v: Option<usize>| v.map_or_else(String::new, |v| v.to_string());
    let pred = |v: Option<u64>| v.map_or_else(String::new, |v| v.to_string());
    Ok(match cfg.format {
        Format::Json => json_doc(cfg, "metric.json".into(), m),
        Format::Csv => doc(
            "metric.csv",
            format!(
                "quantity,value,lower_bound,certified,predicted\npsi,{},{},{},{}\nsdim,{},,{},{}\n",
                opt(m.psi.value),
                m.psi.bound,
                m.psi.certified,
                pred(m.psi.predicted),
                opt(m.sdim.value),
                m.sdim.value.is_some(),
                pred(m.sdim.predicted)
            ),
        ),
        Format::Text => {
            let mut out = String::new();
            writeln!(
                out,
                "psi   {} (twin bound {}, {})",
                opt(m.psi.value),
                m.psi.bound,
                if m.psi.certified { "certified" } else { "not certified" }
            )
            .unwrap();
            if let Some(w) = &m.psi.witness {
                writeln!(out, "      witness {{{}}}", w.join(", ")).unwrap();
            }
            writeln!(out, "sdim  {}", opt(m.sdim.value)).unwrap();
            if let Some(note) = &m.sdim.note {
                writeln!(out, "      {note}").unwrap();
            }
            writeln!(out, "G_SR  {} edges", m.gsr_edges.len()).unwrap();
            doc("metric.txt", out)
        }
    })
}

fn detour(cfg: &RunConfig, inst: &Instance) -> Result<Document, CliError> {
    let result = analysis::detour(inst, cfg.detour_time_budget_s)?;
    let d: DetourDoc = analysis::detour_doc(inst, &result);
    Ok(match cfg.format {
        Format::Json => json_doc(cfg, "detour.json".into(), d),
        Format::Csv => doc("detour.csv", formats::integer_matrix_csv(&d.matrix)),
        Format::Text => {
            let mut out = String::new();
            writeln!(
                out,
                "rad_D {}  dia_D {}  ({})",
                d.radius,
                d.diameter,
                if d.oracle_verified { "exact search" } else { "closed form, not oracle-verified" }
            )
            .unwrap();
            for c in &d.class_eccentricity {
                writeln!(out, "ec_D {:<3} {:>4}  predicted {}", c.class, c.computed, c.predicted).unwrap();
            }
            if d.class_eccentricity.is_empty() {
                for (label, e) in d.labels.iter().zip(&d.eccentricity) {
                    writeln!(out, "ec_D {label:<8} {e}").unwrap();
                }
            }
            doc("detour.txt", out)
        }
    })
}

fn dds(cfg: &RunConfig, inst: &Instance) -> Result<Document, CliError> {
    let dist = matrices::distance_matrix(&inst.graph)?;
    let result = analysis::detour(inst, cfg.detour_time_budget_s)?;
    let d: DdsDoc = analysis::dds_doc(inst, &dist, &result);
    Ok(match cfg.format {
        Format::Json => json_doc(cfg, "dds.json".into(), d),
        Format::Csv => {
            let mut out = String::from("table,vertex,label,class,sequence\n");
            for (name, table) in [("dds", &d.dds), ("dds_D", &d.dds_detour)] {
                for r in &table.rows {
                    let seq: Vec<String> = r.sequence.iter().map(usize::to_string).collect();
                    writeln!(out, "{name},{},{},{},{}", r.vertex, r.label, r.class.unwrap_or(""), seq.join(" ")).unwrap();
                }
            }
            doc("dds.csv", out)
        }
        Format::Text => doc("dds.txt", dds_text(&d)),
    })
}

fn table_text(out: &mut String, title: &str, t: &SequenceTableView) {
    writeln!(out, "{title}").unwrap();
    let width = t.groups.iter().map(|g| g.compact.len()).max().unwrap_or(0);
    for g in &t.groups {
        writeln!(out, "  {:<width$}  x{}", g.compact, g.count).unwrap();
    }
}

fn dds_text(d: &DdsDoc) -> String {
    let mut out = String::new();
    table_text(&mut out, "dds", &d.dds);
    table_text(&mut out, "dds_D", &d.dds_detour);
    if let Some(cmp) = &d.comparison {
        writeln!(out, "class  dds computed / predicted").unwrap();
        for c in &cmp.dds {
            writeln!(out, "  {:<4} {} / {}", c.class, c.computed, c.predicted.as_deref().unwrap_or("-")).unwrap();
        }
        writeln!(out, "class  dds_D computed / predicted").unwrap();
        for c in &cmp.dds_detour {
            writeln!(out, "  {:<4} {} / {}", c.class, c.computed, c.predicted.as_deref().unwrap_or("-")).unwrap();
        }
    }
    out
}

fn report_doc(cfg: &RunConfig, report: &Report) -> Document {
    match cfg.format {
        Format::Json => json_doc(cfg, "report.json".into(), report),
        Format::Csv => {
            let mut out = String::from("id,status,detail\n");
            for c in &report.checks {
                writeln!(out, "{},{},\"{}\"", c.id, c.status.name(), c.detail.replace('"', "\"\"")).unwrap();
            }
            doc("report.csv", out)
        }
        Format::Text => doc("report.txt", report.text()),
    }
}
