//! Implementations of the subcommands.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use thiserror::Error;

use graphconf::basic_classes::{enumerate_basic_classes, BasicClasses, EnumerationCaps};
use graphconf::complex::{ComplexError, DEFAULT_CELL_CAP};
use graphconf::graph::{GraphDocument, GraphError};
use graphconf::homology::{class_span_rank, homology_with, HomologyError, HomologyOptions};
use graphconf::verify::{run_checks, suite, SuiteOptions};
use graphconf::{build_graph, CubeComplex, Family, Graph, GraphSpec, HomologySummary};

use crate::{Common, Format, SpanArgs, VerifyArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Internal(String),
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::Complex(c) => c.into(),
            HomologyError::NonzeroCap { .. } => CliError::Cap(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

pub enum Outcome {
    Success,
    CheckFailed,
}

/// Limits on the work a command may do.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub cells: usize,
    pub nonzeros: usize,
    pub classes: EnumerationCaps,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            cells: DEFAULT_CELL_CAP,
            nonzeros: HomologyOptions::default().max_nonzeros,
            classes: EnumerationCaps::default(),
        }
    }
}

/// Parses `key=value,key=value`.
pub fn parse_caps(text: Option<&str>) -> Result<Caps, CliError> {
    let mut caps = Caps::default();
    let Some(text) = text else {
        return Ok(caps);
    };
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("cap `{item}` is not key=value")))?;
        let value: usize = value
            .trim()
            .parse()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| CliError::Usage(format!("cap `{key}` needs a positive integer")))?;
        match key.trim() {
            "cells" => caps.cells = value,
            "nonzeros" => caps.nonzeros = value,
            "parkings" => caps.classes.max_parkings = value,
            "classes" => caps.classes.max_classes = value,
            "path" => caps.classes.max_path_len = value,
            "circuit" => caps.classes.max_circuit_len = value,
            other => return Err(CliError::Usage(format!("unknown cap `{other}`"))),
        }
    }
    Ok(caps)
}

/// Builds the graph named by `--graph`, applying `--sinks`.
pub fn load_graph(spec: &str, sinks: Option<&str>) -> Result<Graph, CliError> {
    let graph = match spec.parse::<Family>() {
        Ok(f) => build_graph(&GraphSpec::family(f))?,
        Err(family_err) => {
            let path = Path::new(spec);
            if !path.exists() {
                return Err(CliError::Usage(format!(
                    "`{spec}` is neither a graph family ({family_err}) nor a file"
                )));
            }
            let doc = GraphDocument::from_json(&fs::read_to_string(path)?)?;
            build_graph(&GraphSpec::Explicit(doc))?
        }
    };
    match sinks {
        None => Ok(graph),
        Some(list) => {
            let sinks = list
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| CliError::Usage(format!("bad sink `{s}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(graph.with_sinks(&sinks)?)
        }
    }
}

struct Setup {
    graph: Graph,
    caps: Caps,
    cx: CubeComplex,
}

fn setup(c: &Common) -> Result<Setup, CliError> {
    let caps = parse_caps(c.caps.as_deref())?;
    let graph = load_graph(&c.graph, c.sinks.as_deref())?;
    let cx = CubeComplex::enumerate_capped(&graph, c.n, caps.cells)?;
    Ok(Setup { graph, caps, cx })
}

fn options(caps: &Caps) -> HomologyOptions {
    HomologyOptions {
        max_nonzeros: caps.nonzeros,
        ..HomologyOptions::default()
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn machine(command: &str, c: &Common, graph: &Graph, result: Value) -> String {
    let doc = json!({
        "command": command,
        "graph": graph.to_document(),
        "particles": c.n,
        "result": result,
    });
    format!(
        "{}\n",
        serde_json::to_string_pretty(&doc).expect("json values serialize")
    )
}

fn homology_table(h: &HomologySummary) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:>6} {:>10} {:>8}  torsion", "degree", "cells", "betti");
    for d in &h.degrees {
        let t: Vec<String> = d.torsion.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(
            s,
            "{:>6} {:>10} {:>8}  {}",
            d.degree,
            d.cells,
            d.betti,
            if t.is_empty() {
                "none".into()
            } else {
                t.join(", ")
            }
        );
    }
    let _ = writeln!(s, "euler characteristic {}", h.euler_characteristic);
    s
}

pub fn homology(c: &Common) -> Result<Outcome, CliError> {
    let s = setup(c)?;
    let h = homology_with(&s.cx, &options(&s.caps))?;
    let text = match c.format {
        Format::Human => format!("{}, {} particles\n{}", s.graph, c.n, homology_table(&h)),
        Format::Machine => machine("homology", c, &s.graph, json!(h)),
    };
    emit(c.out.as_deref(), &text)?;
    Ok(Outcome::Success)
}

/// Genus when the homology is that of a closed orientable surface.
pub fn surface_genus(h: &HomologySummary) -> Option<usize> {
    let b = h.betti_trimmed();
    (b.len() == 3 && b[0] == 1 && b[2] == 1 && b[1].is_multiple_of(2) && h.is_torsion_free())
        .then(|| b[1] / 2)
}

pub fn surface_check(c: &Common) -> Result<Outcome, CliError> {
    let s = setup(c)?;
    let h = homology_with(&s.cx, &options(&s.caps))?;
    let genus = surface_genus(&h);
    let text = match c.format {
        Format::Human => match genus {
            Some(g) => format!(
                "homology surface of genus {g} (b = {:?}, torsion-free)\n",
                h.betti_trimmed()
            ),
            None => format!("not a homology surface (b = {:?})\n", h.betti_trimmed()),
        },
        Format::Machine => machine(
            "surface-check",
            c,
            &s.graph,
            json!({
                "status": if genus.is_some() { "surface" } else { "not a homology surface" },
                "genus": genus,
                "betti": h.betti_trimmed(),
                "torsion_free": h.is_torsion_free(),
            }),
        ),
    };
    emit(c.out.as_deref(), &text)?;
    Ok(Outcome::Success)
}

fn classes(s: &Setup, n: usize, degree: usize) -> BasicClasses {
    let caps = EnumerationCaps {
        products: degree >= 2,
        ..s.caps.classes
    };
    enumerate_basic_classes(&s.graph, n, &caps)
}

pub fn span(a: &SpanArgs) -> Result<Outcome, CliError> {
    let c = &a.common;
    if !(1..=2).contains(&a.degree) {
        return Err(CliError::Usage("--degree must be 1 or 2".into()));
    }
    let s = setup(c)?;
    let h = homology_with(&s.cx, &options(&s.caps))?;
    let list = classes(&s, c.n, a.degree);
    let chains = list.chains(a.degree);
    let rank = class_span_rank(&chains, &s.cx, a.degree)?;
    let betti = h.betti_in(a.degree);
    let status = if rank == betti {
        "GENERATED"
    } else {
        "NOT GENERATED"
    };
    let counts: Vec<(String, usize)> = list
        .count_by_kind()
        .into_iter()
        .map(|(k, v)| (format!("{k:?}").to_lowercase(), v))
        .collect();
    let text = match c.format {
        Format::Human => {
            let kinds: Vec<String> = counts.iter().map(|(k, v)| format!("{k} {v}")).collect();
            format!(
                "degree {}: {} classes ({}){}\nspan rank {rank}, betti {betti}: {status}\n",
                a.degree,
                chains.len(),
                kinds.join(", "),
                if list.truncated {
                    ", truncated by caps"
                } else {
                    ""
                }
            )
        }
        Format::Machine => machine(
            "span",
            c,
            &s.graph,
            json!({
                "degree": a.degree,
                "classes": chains.len(),
                "by_kind": counts.into_iter().map(|(k, v)| (k, json!(v))).collect::<serde_json::Map<String, Value>>(),
                "truncated": list.truncated,
                "span_rank": rank,
                "betti": betti,
                "status": status,
            }),
        ),
    };
    emit(c.out.as_deref(), &text)?;
    if rank == betti {
        Ok(Outcome::Success)
    } else if list.truncated {
        Err(CliError::Cap(format!(
            "basic-class enumeration truncated; span rank {rank} of {betti}"
        )))
    } else {
        Ok(Outcome::CheckFailed)
    }
}

pub fn export(c: &Common) -> Result<Outcome, CliError> {
    let dir = c
        .out
        .as_deref()
        .ok_or_else(|| CliError::Usage("export needs --out <directory>".into()))?;
    let s = setup(c)?;
    let h = homology_with(&s.cx, &options(&s.caps))?;
    fs::create_dir_all(dir)?;
    fs::write(dir.join("complex.txt"), s.cx.export())?;
    fs::write(
        dir.join("graph.json"),
        s.graph.to_document().to_json() + "\n",
    )?;
    fs::write(
        dir.join("homology.json"),
        machine("homology", c, &s.graph, json!(h)),
    )?;
    let list = classes(&s, c.n, 1);
    let mut text = String::new();
    for class in &list.classes {
        let _ = writeln!(
            text,
            "class {:?} degree {} support {}: {}",
            class.kind,
            class.degree(),
            class.chain.support_len(),
            class.description
        );
        let _ = write!(text, "{}", class.chain);
    }
    fs::write(dir.join("classes.txt"), text)?;
    if c.format == Format::Human {
        println!(
            "wrote complex.txt, graph.json, homology.json, classes.txt ({} classes) to {}",
            list.classes.len(),
            dir.display()
        );
    }
    Ok(Outcome::Success)
}

pub fn verify(v: &VerifyArgs) -> Result<Outcome, CliError> {
    let opts = SuiteOptions {
        property_cases: v.cases,
        seed: v.seed,
        ..SuiteOptions::default()
    };
    let checks = suite(&opts);
    if let Some(only) = &v.only {
        if !checks.iter().any(|c| c.matches(only)) {
            return Err(CliError::Usage(format!("no check matches `{only}`")));
        }
    }
    let report = run_checks(&checks, v.only.as_deref());
    let text = match v.format {
        Format::Human => report.to_string(),
        Format::Machine => format!(
            "{}\n",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        ),
    };
    emit(v.out.as_deref(), &text)?;
    Ok(if report.ok() {
        Outcome::Success
    } else {
        Outcome::CheckFailed
    })
}
