use std::io::Write;

use serde_json::{json, Value};

use hecke_core::abacus::BlockId;
use hecke_core::branching::SimpleBranch;
use hecke_core::llt::DecompositionMatrix;
use hecke_core::notation::BracketExpr;
use hecke_core::verifier::report::{Report, HYPOTHESIS_BANNER};
use hecke_core::verifier::AdjStatus;
use hecke_core::Partition;

use crate::{Failure, Format};

fn label(p: &Partition, block: &BlockId) -> String {
    BracketExpr::encode(p, block)
        .map(|b| b.to_string())
        .unwrap_or_else(|_| p.to_string())
}

pub fn branch(b: &SimpleBranch) -> String {
    match b {
        SimpleBranch::Zero => "zero".into(),
        SimpleBranch::Simple(p) => format!("simple {p}"),
        SimpleBranch::Reducible(p) => format!("reducible, socle {p}"),
    }
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().from_writer(out)
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::Internal(e.to_string())
}

pub fn dmatrix(
    m: &DecompositionMatrix,
    block: &BlockId,
    at_v1: bool,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let cell = |i: usize, j: usize| -> String {
        let c = &m.entries[i][j];
        if at_v1 {
            c.eval_at_one().to_string()
        } else {
            c.to_string()
        }
    };
    let cols: Vec<String> = m.cols.iter().map(|c| c.to_string()).collect();
    match format {
        Format::Md => {
            writeln!(out, "block {block}, {} rows, {} columns\n", m.rows.len(), m.cols.len())?;
            writeln!(out, "| | {} |", cols.join(" | "))?;
            writeln!(out, "|---|{}", "---|".repeat(cols.len()))?;
            for (i, r) in m.rows.iter().enumerate() {
                let cells: Vec<String> = (0..cols.len())
                    .map(|j| {
                        let c = cell(i, j);
                        if c == "0" {
                            ".".to_string()
                        } else {
                            c
                        }
                    })
                    .collect();
                writeln!(out, "| {r} | {} |", cells.join(" | "))?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            let mut header = vec!["lambda".to_string()];
            header.extend(cols.iter().cloned());
            w.write_record(&header).map_err(csv_err)?;
            for (i, r) in m.rows.iter().enumerate() {
                let mut rec = vec![r.to_string()];
                rec.extend((0..cols.len()).map(|j| cell(i, j)));
                w.write_record(&rec).map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let rows: Vec<Value> = m
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    json!({
                        "lambda": r.to_string(),
                        "label": label(r, block),
                        "entries": (0..cols.len()).map(|j| cell(i, j)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let v = json!({
                "e": block.e,
                "block": block.to_string(),
                "columns": cols,
                "rows": rows,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).map_err(|e| Failure::Internal(e.to_string()))?)?;
        }
    }
    Ok(())
}

fn d_text(s: &AdjStatus) -> String {
    s.d_poly.as_ref().map(|d| d.to_string()).unwrap_or_default()
}

pub fn report(rep: &Report, format: Format, all: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let block = rep.block();
    let entries: Vec<AdjStatus> = if all {
        rep.all_entries().collect()
    } else {
        rep.candidates.clone()
    };
    match format {
        Format::Md => {
            writeln!(out, "# Adjustment matrix, principal block of H_{{5e}}, e = {}\n", rep.e)?;
            writeln!(out, "block {block}, {} e-regular partitions", rep.summary.regular)?;
            writeln!(out, "{HYPOTHESIS_BANNER}\n")?;
            writeln!(out, "| lambda | mu | status | justification | d(v) |")?;
            writeln!(out, "|---|---|---|---|---|")?;
            for s in &entries {
                writeln!(
                    out,
                    "| {} | {} | {} | {} | {} |",
                    label(&s.lambda, block),
                    label(&s.mu, block),
                    s.status,
                    s.justification,
                    d_text(s)
                )?;
            }
            if let Some(p) = &rep.prop33 {
                writeln!(out, "\n## Induced projective")?;
                writeln!(out, "pair: ({}, {})", label(&p.setup.lambda, block), label(&p.setup.mu, block))?;
                writeln!(out, "lower block: {}", p.setup.block_d)?;
                writeln!(
                    out,
                    "mu~ = {}, lambda~0 = {}, lambda~1 = {}",
                    p.setup.mu_tilde, p.setup.lambda_tilde0, p.setup.lambda_tilde1
                )?;
                writeln!(out, "terms in expansion: {}, a_lambda = {}, d(lambda~0, mu~) = {}", p.expansion.len(), p.a_lambda, p.d_tilde)?;
                writeln!(out, "chain ends in {}: mu^ = {}, lambda^0 = {}", p.chain.last().map(|b| b.to_string()).unwrap_or_default(), p.mu_hat, p.lambda_hat0)?;
            }
            writeln!(out, "\n## Summary")?;
            writeln!(out, "off-diagonal entries: {}", rep.summary.off_diagonal)?;
            for (j, n) in &rep.summary.zero_by {
                writeln!(out, "zero by {j}: {n}")?;
            }
            writeln!(out, "unknown: {}", rep.summary.unknown)?;
            writeln!(out, "verdict: {}", rep.summary.verdict)?;
        }
        Format::Csv => {
            writeln!(out, "# {HYPOTHESIS_BANNER}")?;
            let mut w = csv_writer(out);
            w.write_record(["lambda", "mu", "status", "justification", "d_poly"]).map_err(csv_err)?;
            for s in &entries {
                w.write_record([
                    label(&s.lambda, block),
                    label(&s.mu, block),
                    s.status.to_string(),
                    s.justification.to_string(),
                    d_text(s),
                ])
                .map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let items: Vec<Value> = entries
                .iter()
                .map(|s| {
                    json!({
                        "lambda": label(&s.lambda, block),
                        "mu": label(&s.mu, block),
                        "status": s.status.to_string(),
                        "justification": s.justification.to_string(),
                        "d_poly": s.d_poly.as_ref().map(|d| d.to_string()),
                    })
                })
                .collect();
            let v = json!({
                "e": rep.e,
                "block": block.to_string(),
                "entries": items,
                "summary": rep.summary,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).map_err(|e| Failure::Internal(e.to_string()))?)?;
        }
    }
    Ok(())
}
