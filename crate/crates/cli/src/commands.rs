use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use leavitt::corner_skew::realize_lpa;
use leavitt::graph::write_graph;
use leavitt::regularity::{regularity_suite, search_invertible_inner_inverse, SuiteConfig};
use leavitt::transforms::{
    desingularize, remove_all_sources, remove_source, transport_witness, Embedding, GradedMatrix,
};
use leavitt::{
    find_witness_unrestricted_with, find_witness_with, idempotent_generator, DirectedGraph, Element, WitnessReport,
};
use serde_json::{json, Value};

use crate::session::{CmdResult, Failure, Outcome, Session};
use crate::{Command, CornerAction, GlobalArgs, MatrixAction, MatrixArgs};

pub fn run(global: &GlobalArgs, command: Command) -> CmdResult<Outcome> {
    let s = Session::open(global)?;
    match command {
        Command::Normalize { element } => {
            let x = s.element(&element)?;
            let mut j = s.header("normalize");
            j.insert("element".into(), json!(x.to_string()));
            Ok(Outcome::ok(x.to_string(), j.into()))
        }
        Command::Mul { elements } => {
            let mut acc = s.element(&elements[0])?;
            for text in &elements[1..] {
                acc = &acc * &s.element(text)?;
            }
            let mut j = s.header("mul");
            j.insert("product".into(), json!(acc.to_string()));
            Ok(Outcome::ok(acc.to_string(), j.into()))
        }
        Command::Degree { element, weights } => {
            let x = s.element(&element)?;
            let grading = s.grading(weights.as_deref())?;
            let d = x.degree(grading.as_ref())?;
            let mut j = s.header("degree");
            j.insert("element".into(), json!(x.to_string()));
            j.insert("degree".into(), json!(d));
            Ok(Outcome::ok(format!("degree {d}"), j.into()))
        }
        Command::Witness { element, weights } => {
            let x = s.element(&element)?;
            let grading = s.grading(weights.as_deref())?;
            let report = find_witness_with(&x, &s.witness_options(grading))?;
            Ok(witness_outcome(&s, "witness", &report))
        }
        Command::WitnessAny { element } => {
            let x = s.element(&element)?;
            let report = find_witness_unrestricted_with(&x, &s.witness_options(None))?;
            Ok(witness_outcome(&s, "witness-any", &report))
        }
        Command::Idgen { elements } => idgen(&s, &elements),
        Command::Suite { trials, terms, timings } => suite(&s, trials, terms, timings),
        Command::Desource { vertex, out } => desource(&s, vertex.as_deref(), out.as_deref()),
        Command::Desing { depth, out } => desing(&s, depth, out.as_deref()),
        Command::Corner { action } => corner(&s, action),
        Command::Matrix { action } => matrix(&s, action),
        Command::UnitSearch { element, inner_bound, inverse_bound, max_points } => {
            let a = s.element(&element)?;
            let rep = search_invertible_inner_inverse(&a, inner_bound, inverse_bound, max_points)?;
            let mut text = format!(
                "a = {}\ncandidates {} (length <= {}), solution dimension {}\npoints examined {}{}\n",
                rep.target,
                rep.candidates,
                rep.inner_bound,
                rep.solution_dimension.map_or("none".to_string(), |d| d.to_string()),
                rep.points_examined,
                if rep.exhaustive { " (exhaustive)" } else { " (truncated)" },
            );
            match &rep.found {
                Some((x, z)) => {
                    let _ = writeln!(text, "invertible inner inverse x = {x}\ninverse = {z}");
                }
                None => {
                    let _ = writeln!(text, "no invertible inner inverse with inverse length <= {}", rep.inverse_bound);
                }
            }
            let mut j = s.header("unit-search");
            j.insert("report".into(), serde_json::to_value(&rep).expect("report"));
            Ok(Outcome::ok(text, j.into()))
        }
    }
}

fn witness_outcome(s: &Session, command: &str, r: &WitnessReport) -> Outcome {
    let status = if r.verified { "VERIFIED" } else { "NOT VERIFIED" };
    let text = format!(
        "x = {}\ny = {}\nsolved at bound {} (limit {})\n{status}\n",
        r.x, r.y, r.solved_at_bound, r.length_bound
    );
    let mut j = s.header(command);
    j.insert("x".into(), json!(r.x.to_string()));
    j.insert("y".into(), json!(r.y.to_string()));
    j.insert("degree".into(), json!(r.y.degree(None).ok().map(|d| -d)));
    j.insert("length_bound".into(), json!(r.length_bound));
    j.insert("solved_at_bound".into(), json!(r.solved_at_bound));
    j.insert("verified".into(), json!(r.verified));
    Outcome { text, json: j.into(), exit: if r.verified { 0 } else { 1 } }
}

fn idgen(s: &Session, elements: &[String]) -> CmdResult<Outcome> {
    let xs = elements.iter().map(|t| s.element(t)).collect::<CmdResult<Vec<_>>>()?;
    let cert = idempotent_generator(&xs, &s.witness_options(None))?;
    let mut text = format!("e = {}\n", cert.e);
    for (i, (x, a)) in cert.generators.iter().zip(&cert.membership_out).enumerate() {
        let _ = writeln!(text, "x{} = {x}\n  multiplier {a}", i + 1);
    }
    text.push_str(if cert.verify() { "VERIFIED\n" } else { "NOT VERIFIED\n" });
    let mut j = s.header("idgen");
    j.insert("e".into(), json!(cert.e.to_string()));
    j.insert("generators".into(), json!(cert.generators.iter().map(Element::to_string).collect::<Vec<_>>()));
    j.insert("membership_out".into(), json!(cert.membership_out.iter().map(Element::to_string).collect::<Vec<_>>()));
    j.insert("verified".into(), json!(cert.verify()));
    Ok(Outcome { text, json: j.into(), exit: if cert.verify() { 0 } else { 1 } })
}

fn suite(s: &Session, trials: usize, terms: usize, timings: bool) -> CmdResult<Outcome> {
    let seed = s.global.seed.ok_or_else(|| Failure::usage("suite needs an explicit --seed"))?;
    let mut cfg = SuiteConfig::new(trials, terms, s.global.len_cap as usize, seed);
    cfg.witness = s.witness_options(None);
    cfg.timings = timings;
    let report = regularity_suite(&s.alg, &cfg)?;
    let mut j = s.header("suite");
    j.insert("report".into(), serde_json::to_value(&report).expect("report"));
    Ok(Outcome { text: report.to_text(), json: j.into(), exit: if report.passed { 0 } else { 1 } })
}

/// Graph text followed by the generator mapping as comment lines, so the
/// whole output is itself a graph file.
fn transform_output(
    s: &Session,
    command: &str,
    graph: &DirectedGraph,
    emb: &Embedding,
    notes: &[String],
    out: Option<&Path>,
) -> CmdResult<Outcome> {
    let graph_text = write_graph(graph);
    let mapping = emb.mapping_text();
    let mut text = String::new();
    match out {
        Some(path) => {
            let map_path = format!("{}.map", path.display());
            fs::write(path, &graph_text)
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
            fs::write(&map_path, &mapping).map_err(|e| Failure::usage(format!("cannot write {map_path}: {e}")))?;
            let _ = writeln!(text, "wrote {} and {map_path}", path.display());
        }
        None => {
            text.push_str(&graph_text);
            for line in mapping.lines() {
                let _ = writeln!(text, "# map {line}");
            }
        }
    }
    for n in notes {
        let _ = writeln!(text, "# {n}");
    }
    let mut j = s.header(command);
    j.insert("graph".into(), json!(graph_text));
    let map: serde_json::Map<String, Value> =
        mapping.lines().filter_map(|l| l.split_once(" -> ")).map(|(k, v)| (k.to_string(), json!(v))).collect();
    j.insert("mapping".into(), map.into());
    j.insert("notes".into(), json!(notes));
    Ok(Outcome::ok(text, j.into()))
}

fn desource(s: &Session, vertex: Option<&str>, out: Option<&Path>) -> CmdResult<Outcome> {
    match vertex {
        Some(v) => {
            let r = remove_source(&s.alg, v)?;
            r.check_fullness().map_err(Failure::checked)?;
            let g = s.alg.graph();
            let expansion: Vec<String> = g
                .out_edges(g.vertex_id(v)?)
                .iter()
                .map(|&f| format!("{0}.{1}.{0}^*", g.edge_name(f), g.vertex_name(g.range(f))))
                .collect();
            let notes = vec![format!("p = {}", r.p), format!("{} = {} VERIFIED", r.removed, expansion.join(" + "))];
            transform_output(s, "desource", &r.graph, &r.embedding, &notes, out)
        }
        None => {
            let (g, log) = remove_all_sources(s.alg.graph())?;
            if log.is_empty() {
                let mut j = s.header("desource");
                j.insert("moves".into(), json!([]));
                return Ok(Outcome::ok("no sources".into(), j.into()));
            }
            let smaller = leavitt::LeavittAlgebra::new(g.clone(), s.alg.field());
            let emb = Embedding::by_name(smaller, s.alg.clone())?;
            let notes: Vec<String> = log
                .iter()
                .map(|m| match m {
                    leavitt::transforms::SourceMove::Source(v) => format!("removed source {v}"),
                    leavitt::transforms::SourceMove::Isolated(v) => format!("removed isolated vertex {v}"),
                })
                .collect();
            transform_output(s, "desource", &g, &emb, &notes, out)
        }
    }
}

fn desing(s: &Session, depth: usize, out: Option<&Path>) -> CmdResult<Outcome> {
    let d = desingularize(&s.alg, depth)?;
    d.embedding.verify_relations().map_err(Failure::checked)?;
    d.check_degrees().map_err(Failure::checked)?;
    let g = s.alg.graph();
    let degrees: Vec<String> = g.edges().map(|e| format!("{}={}", g.edge_name(e), d.edge_degrees.weight(e))).collect();
    let notes = vec![
        format!("depth {depth}"),
        format!("edge degrees {}", degrees.join(",")),
        "relations and degrees VERIFIED".to_string(),
    ];
    transform_output(s, "desing", &d.graph, &d.embedding, &notes, out)
}

fn corner(s: &Session, action: CornerAction) -> CmdResult<Outcome> {
    let real = realize_lpa(&s.alg)?;
    let g = s.alg.graph();
    match action {
        CornerAction::Realize => {
            let edges: Vec<&str> = real.chosen_edges.iter().map(|&e| g.edge_name(e)).collect();
            let text = format!(
                "edges {}\nt+ = {}\nt- = {}\np = {}\n",
                edges.join(","),
                real.t_plus,
                real.t_minus,
                real.ring.p()
            );
            let mut j = s.header("corner realize");
            j.insert("edges".into(), json!(edges));
            j.insert("t_plus".into(), json!(real.t_plus.to_string()));
            j.insert("t_minus".into(), json!(real.t_minus.to_string()));
            j.insert("p".into(), json!(real.ring.p().to_string()));
            Ok(Outcome::ok(text, j.into()))
        }
        CornerAction::Witness { element } => {
            let x = s.element(&element)?;
            let a = real.from_lpa(&x)?;
            let y = real.witness(&a, &s.witness_options(None))?;
            let y_lpa = real.to_lpa(&y);
            let verified = &(&x * &y_lpa) * &x == x;
            let status = if verified { "VERIFIED" } else { "NOT VERIFIED" };
            let text =
                format!("a = {}\ny = {}\ny in L(E) = {y_lpa}\n{status}\n", real.ring.format(&a), real.ring.format(&y));
            let mut j = s.header("corner witness");
            j.insert("a".into(), json!(real.ring.format(&a)));
            j.insert("y".into(), json!(real.ring.format(&y)));
            j.insert("y_lpa".into(), json!(y_lpa.to_string()));
            j.insert("verified".into(), json!(verified));
            Ok(Outcome { text, json: j.into(), exit: if verified { 0 } else { 1 } })
        }
    }
}

fn parse_matrix(s: &Session, args: &MatrixArgs) -> CmdResult<GradedMatrix> {
    let shifts = args
        .shifts
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Failure::usage(format!("bad shift `{t}`"))))
        .collect::<CmdResult<Vec<_>>>()?;
    let mut m = GradedMatrix::zero(&s.alg, shifts);
    for spec in &args.entries {
        let (pos, elem) =
            spec.split_once('=').ok_or_else(|| Failure::usage(format!("entry `{spec}` is not `i,j=element`")))?;
        let (i, j) = pos
            .split_once(',')
            .and_then(|(i, j)| Some((i.trim().parse::<usize>().ok()?, j.trim().parse::<usize>().ok()?)))
            .filter(|&(i, j)| i >= 1 && j >= 1)
            .ok_or_else(|| Failure::usage(format!("bad entry position `{pos}`")))?;
        m.set(i - 1, j - 1, s.element(elem)?)?;
    }
    Ok(m)
}

fn matrix(s: &Session, action: MatrixAction) -> CmdResult<Outcome> {
    match action {
        MatrixAction::Degree(args) => {
            let m = parse_matrix(s, &args)?;
            let d = m.degree(None)?;
            let mut j = s.header("matrix degree");
            j.insert("matrix".into(), json!(m.to_string()));
            j.insert("degree".into(), json!(d));
            Ok(Outcome::ok(format!("degree {d}"), j.into()))
        }
        MatrixAction::Transport(args) => {
            let m = parse_matrix(s, &args)?;
            let opts = s.witness_options(None);
            let y = transport_witness(&m, |a| Ok(find_witness_with(a, &opts)?.y))?;
            let text = format!("m = {m}\ny = {y}\nVERIFIED\n");
            let mut j = s.header("matrix transport");
            j.insert("matrix".into(), json!(m.to_string()));
            j.insert("witness".into(), json!(y.to_string()));
            j.insert("verified".into(), json!(true));
            Ok(Outcome::ok(text, j.into()))
        }
    }
}
