//! Report rendering: aligned tables for eyes, JSON and CSV for machines.
//!
//! Output is deterministic byte for byte: no timestamps, no hash-ordered
//! collections, and all floating-point text comes from fixed rules.
//! Tables round to six significant digits; JSON and CSV keep full
//! precision so they round-trip.

use mark::{KnowledgeScore, OrderingMode, Provenance};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::input::Format;
use crate::report::{DensityReport, OrderReport, StateReport, TimelineReport, TreeReport};

/// Six significant digits; plain decimal notation while the exponent is
/// moderate, scientific beyond that. Trailing zeros are trimmed so small
/// integers print bare.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{v:.5e}");
        match s.split_once('e') {
            Some((m, e)) if m.contains('.') => {
                format!("{}e{e}", m.trim_end_matches('0').trim_end_matches('.'))
            }
            _ => s,
        }
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_sig).unwrap_or_else(|| "-".to_string())
}

fn ordering_name(mode: OrderingMode) -> &'static str {
    match mode {
        OrderingMode::Listed => "listed",
        OrderingMode::ByProbability => "by-probability",
        OrderingMode::Composite => "composite",
    }
}

fn provenance_name(p: Provenance) -> &'static str {
    match p {
        Provenance::Ranked => "ranked",
        Provenance::TieBrokenByProb => "tie-broken-by-prob",
        Provenance::UnrankedTail => "unranked-tail",
    }
}

/// Pads columns to their widest cell. Columns at `right_from` and beyond
/// are right-aligned, which suits numbers under their headers.
fn table(headers: &[&str], rows: &[Vec<String>], right_from: usize) -> String {
    let ncol = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let emit_row = |out: &mut String, cells: &[String]| {
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            if i >= right_from {
                out.push_str(&" ".repeat(widths[i] - cell.len()));
                out.push_str(cell);
            } else if i + 1 < ncol {
                out.push_str(cell);
                out.push_str(&" ".repeat(widths[i] - cell.len()));
            } else {
                out.push_str(cell);
            }
        }
        out.push('\n');
    };
    let head: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    emit_row(&mut out, &head);
    let dashes: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    emit_row(&mut out, &dashes);
    for row in rows {
        emit_row(&mut out, row);
    }
    out
}

fn json<T: Serialize>(report: &T) -> CliResult<String> {
    serde_json::to_string_pretty(report)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Internal(format!("serializing report: {e}")))
}

fn csv_rows(rows: Vec<Vec<String>>) -> CliResult<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer
            .write_record(&row)
            .map_err(|e| CliError::Internal(format!("writing csv: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Internal(format!("writing csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(format!("encoding csv: {e}")))
}

fn window_text(w: &mark::InterestWindow) -> String {
    format!("{}..{}", fmt_sig(w.ioi()), fmt_sig(w.iof()))
}

/// Score rows shared by the state and density tables.
fn score_rows(score: &KnowledgeScore, weighted: Option<&KnowledgeScore>) -> Vec<Vec<String>> {
    let mut rows = vec![
        vec!["ark".to_string(), fmt_sig(score.ark())],
        vec!["mark".to_string(), fmt_sig(score.mark())],
    ];
    if let Some(norm) = score.mark_normalized() {
        rows.push(vec!["mark (normalized)".to_string(), fmt_sig(norm)]);
    }
    if let Some(w) = weighted {
        rows.push(vec![format!("ark (k={})", w.order_k()), fmt_sig(w.ark())]);
        rows.push(vec![format!("mark (k={})", w.order_k()), fmt_sig(w.mark())]);
    }
    rows
}

fn entropy_rows(report: &mark::EntropyReport) -> Vec<Vec<String>> {
    let mut rows = vec![
        vec!["shannon".to_string(), fmt_sig(report.shannon)],
        vec![
            "shannon (normalized)".to_string(),
            fmt_sig(report.shannon_normalized),
        ],
    ];
    for av in &report.renyi {
        rows.push(vec![
            format!("renyi (a={})", fmt_sig(av.alpha)),
            fmt_sig(av.value),
        ]);
    }
    for av in &report.tsallis {
        rows.push(vec![
            format!("tsallis (a={})", fmt_sig(av.alpha)),
            fmt_sig(av.value),
        ]);
    }
    if let Some(sd) = report.std_dev {
        rows.push(vec!["std dev".to_string(), fmt_sig(sd)]);
    }
    rows
}

pub fn render_state(report: &StateReport, format: Format) -> CliResult<String> {
    match format {
        Format::Json => json(report),
        Format::Csv => {
            let mut rows = vec![vec!["metric".to_string(), "value".to_string()]];
            for r in score_rows(&report.score, report.weighted.as_ref()) {
                rows.push(r);
            }
            for r in entropy_rows(&report.entropy) {
                rows.push(r);
            }
            csv_rows(rows)
        }
        Format::Table => {
            let mut out = format!(
                "window: {}\nordering: {}\n\n",
                window_text(&report.window),
                ordering_name(report.ordering)
            );
            let candidate_rows: Vec<Vec<String>> = report
                .labels
                .iter()
                .zip(&report.probs)
                .map(|(l, &p)| vec![l.clone(), fmt_sig(p)])
                .collect();
            out.push_str(&table(&["candidate", "prob"], &candidate_rows, 1));
            out.push('\n');
            let mut rows = score_rows(&report.score, report.weighted.as_ref());
            rows.extend(entropy_rows(&report.entropy));
            out.push_str(&table(&["metric", "value"], &rows, 1));
            Ok(out)
        }
    }
}

pub fn render_density(report: &DensityReport, format: Format) -> CliResult<String> {
    match format {
        Format::Json => json(report),
        Format::Csv => {
            let mut rows = vec![vec!["metric".to_string(), "value".to_string()]];
            for r in score_rows(&report.score, report.weighted.as_ref()) {
                rows.push(r);
            }
            rows.push(vec!["shannon".to_string(), fmt_sig(report.shannon)]);
            rows.push(vec!["std dev".to_string(), fmt_sig(report.std_dev)]);
            csv_rows(rows)
        }
        Format::Table => {
            let mut out = format!(
                "support: [{}, {}] ({} samples)\nwindow: {}\n\n",
                fmt_sig(report.lo),
                fmt_sig(report.hi),
                report.samples,
                window_text(&report.window)
            );
            let mut rows = score_rows(&report.score, report.weighted.as_ref());
            rows.push(vec!["shannon".to_string(), fmt_sig(report.shannon)]);
            rows.push(vec!["std dev".to_string(), fmt_sig(report.std_dev)]);
            out.push_str(&table(&["metric", "value"], &rows, 1));
            Ok(out)
        }
    }
}

pub fn render_timeline(report: &TimelineReport, format: Format) -> CliResult<String> {
    match format {
        Format::Json => json(report),
        // CSV keeps just the curve: one row per signature point.
        Format::Csv => {
            let mut rows = vec![vec![
                "resource".to_string(),
                "mark".to_string(),
                "shannon_normalized".to_string(),
            ]];
            for p in &report.signature {
                rows.push(vec![
                    p.resource.to_string(),
                    p.mark.to_string(),
                    p.shannon_normalized.to_string(),
                ]);
            }
            csv_rows(rows)
        }
        Format::Table => {
            let mut out = format!(
                "window: {}\nordering: {}\nscores: {}\n\nstates\n",
                window_text(&report.window),
                ordering_name(report.ordering),
                if report.normalized {
                    "normalized"
                } else {
                    "raw"
                }
            );
            let mut headers: Vec<&str> = vec!["state", "resource"];
            for l in &report.labels {
                headers.push(l.as_str());
            }
            headers.extend(["sum", "shannon", "mark"]);
            let rows: Vec<Vec<String>> = report
                .states
                .iter()
                .map(|s| {
                    let mut row = vec![s.name.clone(), fmt_sig(s.resource)];
                    row.extend(s.probs.iter().map(|&p| fmt_sig(p)));
                    row.push(fmt_sig(s.sum));
                    row.push(fmt_sig(s.shannon));
                    row.push(fmt_sig(s.mark));
                    row
                })
                .collect();
            out.push_str(&table(&headers, &rows, 1));

            out.push_str("\nsignature\n");
            let sig_rows: Vec<Vec<String>> = report
                .signature
                .iter()
                .map(|p| {
                    vec![
                        fmt_sig(p.resource),
                        fmt_sig(p.mark),
                        fmt_sig(p.shannon_normalized),
                    ]
                })
                .collect();
            out.push_str(&table(
                &["resource", "mark", "shannon_normalized"],
                &sig_rows,
                0,
            ));

            out.push_str("\nintractability\n");
            let seg_rows: Vec<Vec<String>> = report
                .intractability
                .apparent
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    vec![
                        format!("{} -> {}", report.states[i].name, report.states[i + 1].name),
                        fmt_opt(*v),
                    ]
                })
                .collect();
            out.push_str(&table(&["segment", "dT/dM"], &seg_rows, 1));
            if !report.intractability.local.violations.is_empty() {
                let list: Vec<String> = report
                    .intractability
                    .local
                    .violations
                    .iter()
                    .map(|i| (i + 1).to_string())
                    .collect();
                out.push_str(&format!("no progress on segment(s): {}\n", list.join(", ")));
            }
            out.push_str(&format!(
                "\noverall intractability: {}\n",
                fmt_opt(report.intractability.overall)
            ));
            Ok(out)
        }
    }
}

pub fn render_tree(report: &TreeReport, format: Format) -> CliResult<String> {
    match format {
        Format::Json => json(report),
        Format::Csv => {
            let mut rows = vec![vec![
                "kind".to_string(),
                "label".to_string(),
                "level".to_string(),
                "prob".to_string(),
                "ark".to_string(),
                "mark".to_string(),
            ]];
            for n in &report.nodes {
                rows.push(vec![
                    "node".to_string(),
                    n.label.clone(),
                    n.depth.to_string(),
                    n.prob.to_string(),
                    n.challenge.map(|c| c.ark().to_string()).unwrap_or_default(),
                    n.challenge
                        .map(|c| c.mark().to_string())
                        .unwrap_or_default(),
                ]);
            }
            for g in &report.generations {
                rows.push(vec![
                    "generation".to_string(),
                    String::new(),
                    g.level.to_string(),
                    String::new(),
                    g.score.ark().to_string(),
                    g.score.mark().to_string(),
                ]);
            }
            csv_rows(rows)
        }
        Format::Table => {
            let mut out = String::from("nodes\n");
            let rows: Vec<Vec<String>> = report
                .nodes
                .iter()
                .map(|n| {
                    vec![
                        format!("{}{}", "  ".repeat(n.depth), n.label),
                        fmt_sig(n.prob),
                        fmt_opt(n.challenge.map(|c| c.ark())),
                        fmt_opt(n.challenge.map(|c| c.mark())),
                    ]
                })
                .collect();
            out.push_str(&table(&["node", "prob", "ark", "mark"], &rows, 1));

            out.push_str("\ngenerations\n");
            let gen_rows: Vec<Vec<String>> = report
                .generations
                .iter()
                .map(|g| {
                    vec![
                        g.level.to_string(),
                        g.labels.len().to_string(),
                        fmt_sig(g.score.ark()),
                        fmt_sig(g.score.mark()),
                    ]
                })
                .collect();
            out.push_str(&table(&["level", "nodes", "ark", "mark"], &gen_rows, 1));
            Ok(out)
        }
    }
}

pub fn render_order(report: &OrderReport, format: Format) -> CliResult<String> {
    match format {
        Format::Json => json(report),
        Format::Csv => {
            let mut rows = vec![vec![
                "position".to_string(),
                "label".to_string(),
                "rank".to_string(),
                "prob".to_string(),
                "provenance".to_string(),
            ]];
            for c in &report.candidates {
                rows.push(vec![
                    c.position.to_string(),
                    c.label.clone(),
                    c.rank.map(|r| r.to_string()).unwrap_or_default(),
                    c.prob.to_string(),
                    provenance_name(c.provenance).to_string(),
                ]);
            }
            csv_rows(rows)
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = report
                .candidates
                .iter()
                .map(|c| {
                    vec![
                        c.position.to_string(),
                        c.label.clone(),
                        c.rank.map(|r| r.to_string()).unwrap_or_else(|| "-".into()),
                        fmt_sig(c.prob),
                        provenance_name(c.provenance).to_string(),
                    ]
                })
                .collect();
            Ok(table(
                &["position", "label", "rank", "prob", "provenance"],
                &rows,
                3,
            ))
        }
    }
}
