//! Regenerates the published tables from first principles: chain
//! coordinates, the quasiaddition block, quasicrystal Lie commutators on
//! the defect chain, aperiodic Witt commutators, the Virasoro extensions,
//! and the Jordan multiplication sample.
//!
//! Every cell is recomputed from the defining formulas over the published
//! row and column ranges; nothing here is tabulated data.

use crate::chain::{point, qadd, ChainSpec};
use crate::golden::GoldenRational;
use crate::jordan::{jordan_product, JordanSpec};
use crate::lie::{
    defect_chain_points, qclie_bracket, virasoro_bracket, witt_bracket, CentralSign,
    ClosedWindow,
};
use serde_json::json;

/// Which symbol renders τ: "τ" for aligned text, "t" for CSV/JSON fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TauStyle {
    #[default]
    Unicode,
    Ascii,
}

impl TauStyle {
    pub fn symbol(&self) -> &'static str {
        match self {
            TauStyle::Unicode => "τ",
            TauStyle::Ascii => "t",
        }
    }
}

/// The published tables, in order of appearance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    Elements,
    Quasiaddition,
    QcLieSample,
    WittAlpha0,
    WittAlpha1,
    VirasoroAlpha0,
    VirasoroAlpha1,
    JordanSample,
}

impl TableId {
    pub const ALL: [TableId; 8] = [
        TableId::Elements,
        TableId::Quasiaddition,
        TableId::QcLieSample,
        TableId::WittAlpha0,
        TableId::WittAlpha1,
        TableId::VirasoroAlpha0,
        TableId::VirasoroAlpha1,
        TableId::JordanSample,
    ];

    /// Accepts the table number 1–7, or "jordan" (alias "7-jordan", "8")
    /// for the unnumbered Jordan multiplication table.
    pub fn parse(s: &str) -> Option<TableId> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" => Some(TableId::Elements),
            "2" => Some(TableId::Quasiaddition),
            "3" => Some(TableId::QcLieSample),
            "4" => Some(TableId::WittAlpha0),
            "5" => Some(TableId::WittAlpha1),
            "6" => Some(TableId::VirasoroAlpha0),
            "7" => Some(TableId::VirasoroAlpha1),
            "8" | "jordan" | "7-jordan" => Some(TableId::JordanSample),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TableId::Elements => "table-1-elements",
            TableId::Quasiaddition => "table-2-quasiaddition",
            TableId::QcLieSample => "table-3-qclie",
            TableId::WittAlpha0 => "table-4-witt-alpha-0",
            TableId::WittAlpha1 => "table-5-witt-alpha-1",
            TableId::VirasoroAlpha0 => "table-6-virasoro-alpha-0",
            TableId::VirasoroAlpha1 => "table-7-virasoro-alpha-1",
            TableId::JordanSample => "jordan-multiplication",
        }
    }
}

/// One rendered cell in a table difference report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDiff {
    pub row_label: String,
    pub col_label: String,
    pub left: String,
    pub right: String,
}

/// A rendered table: labels and cells as canonical strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub corner: String,
    pub col_labels: Vec<String>,
    pub row_labels: Vec<String>,
    pub cells: Vec<Vec<String>>,
}

impl Table {
    pub fn cell(&self, row: usize, col: usize) -> &str {
        &self.cells[row][col]
    }

    /// Cell-for-cell comparison; both tables must have the same shape.
    pub fn diff(&self, other: &Table) -> Vec<CellDiff> {
        assert_eq!(self.row_labels.len(), other.row_labels.len());
        assert_eq!(self.col_labels.len(), other.col_labels.len());
        let mut diffs = Vec::new();
        for (r, row) in self.cells.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                if *cell != other.cells[r][c] {
                    diffs.push(CellDiff {
                        row_label: self.row_labels[r].clone(),
                        col_label: self.col_labels[c].clone(),
                        left: cell.clone(),
                        right: other.cells[r][c].clone(),
                    });
                }
            }
        }
        diffs
    }

    /// Aligned-text rendering with a header row.
    pub fn to_text(&self) -> String {
        let mut widths = vec![self.corner.chars().count()];
        for label in &self.row_labels {
            widths[0] = widths[0].max(label.chars().count());
        }
        for (c, label) in self.col_labels.iter().enumerate() {
            let mut w = label.chars().count();
            for row in &self.cells {
                w = w.max(row[c].chars().count());
            }
            widths.push(w);
        }
        let mut out = String::new();
        let mut push_row = |first: &str, rest: &[String]| {
            let mut line = format!("{:<width$}", first, width = widths[0]);
            for (c, cell) in rest.iter().enumerate() {
                line.push_str("  ");
                line.push_str(&format!("{:<width$}", cell, width = widths[c + 1]));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        };
        push_row(&self.corner, &self.col_labels);
        for (r, row) in self.cells.iter().enumerate() {
            push_row(&self.row_labels[r], row);
        }
        out
    }

    /// CSV rendering: header row then one line per table row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.corner);
        for label in &self.col_labels {
            out.push(',');
            out.push_str(label);
        }
        out.push('\n');
        for (r, row) in self.cells.iter().enumerate() {
            out.push_str(&self.row_labels[r]);
            for cell in row {
                out.push(',');
                out.push_str(cell);
            }
            out.push('\n');
        }
        out
    }

    /// JSON rendering with stable key order.
    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .row_labels
            .iter()
            .zip(&self.cells)
            .map(|(label, cells)| json!({ "label": label, "cells": cells }))
            .collect();
        let value = json!({
            "table": self.name,
            "corner": self.corner,
            "columns": self.col_labels,
            "rows": rows,
        });
        serde_json::to_string_pretty(&value).expect("tables serialise")
    }
}

/// Builds one of the published tables. `central_sign` only affects the two
/// Virasoro tables.
pub fn build_table(id: TableId, style: TauStyle, central_sign: CentralSign) -> Table {
    match id {
        TableId::Elements => elements_table(style),
        TableId::Quasiaddition => quasiaddition_table(style),
        TableId::QcLieSample => qclie_table(style),
        TableId::WittAlpha0 => witt_table(id, 0, style),
        TableId::WittAlpha1 => witt_table(id, 1, style),
        TableId::VirasoroAlpha0 => virasoro_table(id, 0, style, central_sign),
        TableId::VirasoroAlpha1 => virasoro_table(id, 1, style, central_sign),
        TableId::JordanSample => jordan_table(style),
    }
}

fn chain_of(alpha: i64) -> ChainSpec {
    ChainSpec::from_ints(alpha, 0)
}

fn f10_value(n: i64) -> GoldenRational {
    point(&chain_of(1), n).value
}

fn generator_label(x: &GoldenRational, style: TauStyle) -> String {
    format!("L_{{{}}}", x.format_tau(style.symbol()))
}

fn elements_table(style: TauStyle) -> Table {
    let chains = [
        ("F_{1,0}(n)", ChainSpec::from_ints(1, 0)),
        (
            "F_{1/2,0}(n)",
            ChainSpec::new(num_rational::BigRational::new(1.into(), 2.into()), 0),
        ),
        ("F_{0,0}(n)", ChainSpec::from_ints(0, 0)),
    ];
    let cols: Vec<i64> = (-4..=4).collect();
    Table {
        name: TableId::Elements.name().to_string(),
        corner: "n".to_string(),
        col_labels: cols.iter().map(i64::to_string).collect(),
        row_labels: chains.iter().map(|(label, _)| label.to_string()).collect(),
        cells: chains
            .iter()
            .map(|(_, chain)| {
                cols.iter()
                    .map(|&n| point(chain, n).value.format_tau(style.symbol()))
                    .collect()
            })
            .collect(),
    }
}

fn quasiaddition_table(style: TauStyle) -> Table {
    let values: Vec<GoldenRational> = (-3..=3).map(f10_value).collect();
    let labels: Vec<String> = values
        .iter()
        .map(|v| v.format_tau(style.symbol()))
        .collect();
    Table {
        name: TableId::Quasiaddition.name().to_string(),
        corner: match style {
            TauStyle::Unicode => "x⊢y".to_string(),
            TauStyle::Ascii => "x|-y".to_string(),
        },
        col_labels: labels.clone(),
        row_labels: labels,
        cells: values
            .iter()
            .map(|x| {
                values
                    .iter()
                    .map(|y| qadd(x, y).format_tau(style.symbol()))
                    .collect()
            })
            .collect(),
    }
}

fn qclie_table(style: TauStyle) -> Table {
    let window = ClosedWindow::unit();
    let rows = defect_chain_points(&f10_value(-4), &f10_value(3));
    let cols = defect_chain_points(&GoldenRational::zero(), &f10_value(3));
    Table {
        name: TableId::QcLieSample.name().to_string(),
        corner: "[L_x,L_y]".to_string(),
        col_labels: cols.iter().map(|y| generator_label(y, style)).collect(),
        row_labels: rows.iter().map(|x| generator_label(x, style)).collect(),
        cells: rows
            .iter()
            .map(|x| {
                cols.iter()
                    .map(|y| {
                        qclie_bracket(&window, x, y)
                            .expect("table generators lie in the defect chain")
                            .format_tau(style.symbol())
                    })
                    .collect()
            })
            .collect(),
    }
}

fn index_labels(range: std::ops::RangeInclusive<i64>) -> Vec<String> {
    range.map(|n| format!("L_{{{n}}}")).collect()
}

fn witt_table(id: TableId, alpha: i64, style: TauStyle) -> Table {
    let chain = chain_of(alpha);
    Table {
        name: id.name().to_string(),
        corner: "[L_m,L_n]".to_string(),
        col_labels: index_labels(0..=7),
        row_labels: index_labels(-4..=4),
        cells: (-4..=4)
            .map(|m| {
                (0..=7)
                    .map(|n| witt_bracket(&chain, m, n).format_tau(style.symbol()))
                    .collect()
            })
            .collect(),
    }
}

fn virasoro_table(id: TableId, alpha: i64, style: TauStyle, sign: CentralSign) -> Table {
    let chain = chain_of(alpha);
    Table {
        name: id.name().to_string(),
        corner: "[L_m,L_n]".to_string(),
        col_labels: index_labels(0..=7),
        row_labels: index_labels(-4..=4),
        cells: (-4..=4)
            .map(|m| {
                (0..=7)
                    .map(|n| virasoro_bracket(&chain, sign, m, n).format_tau(style.symbol()))
                    .collect()
            })
            .collect(),
    }
}

fn jordan_table(style: TauStyle) -> Table {
    let spec = JordanSpec::new(chain_of(1));
    Table {
        name: TableId::JordanSample.name().to_string(),
        corner: match style {
            TauStyle::Unicode => "L_a∘L_b".to_string(),
            TauStyle::Ascii => "L_a o L_b".to_string(),
        },
        col_labels: index_labels(-2..=2),
        row_labels: index_labels(-4..=4),
        cells: (-4..=4)
            .map(|a| {
                (-2..=2)
                    .map(|b| jordan_product(&spec, a, b).format_tau(style.symbol()))
                    .collect()
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell_at<'t>(table: &'t Table, row_label: &str, col_label: &str) -> &'t str {
        let r = table
            .row_labels
            .iter()
            .position(|l| l == row_label)
            .expect("row exists");
        let c = table
            .col_labels
            .iter()
            .position(|l| l == col_label)
            .expect("column exists");
        table.cell(r, c)
    }

    #[test]
    fn elements_table_has_published_shape_and_values() {
        let table = build_table(TableId::Elements, TauStyle::Unicode, CentralSign::Table);
        assert_eq!(table.row_labels.len(), 3);
        assert_eq!(table.col_labels.len(), 9);
        assert_eq!(cell_at(&table, "F_{1,0}(n)", "-4"), "-2-4τ");
        assert_eq!(cell_at(&table, "F_{1/2,0}(n)", "0"), "0");
        assert_eq!(cell_at(&table, "F_{0,0}(n)", "1"), "τ");
    }

    #[test]
    fn quasiaddition_diagonal_is_idempotent() {
        let table = build_table(TableId::Quasiaddition, TauStyle::Unicode, CentralSign::Table);
        for (i, label) in table.row_labels.iter().enumerate() {
            assert_eq!(&table.cells[i][i], label);
        }
        assert_eq!(cell_at(&table, "-τ", "2+3τ"), "-4-7τ");
    }

    #[test]
    fn qclie_table_contains_defect_row_and_column() {
        let table = build_table(TableId::QcLieSample, TauStyle::Unicode, CentralSign::Table);
        assert_eq!(table.row_labels.len(), 9);
        assert_eq!(table.col_labels.len(), 5);
        assert_eq!(cell_at(&table, "L_{-τ}", "L_{1+τ}"), "(1+2τ)L_{1}");
        assert_eq!(cell_at(&table, "L_{1}", "L_{0}"), "-L_{1}");
        assert_eq!(cell_at(&table, "L_{0}", "L_{1}"), "L_{1}");
    }

    #[test]
    fn witt_and_virasoro_tables_expose_the_central_column() {
        let witt = build_table(TableId::WittAlpha0, TauStyle::Unicode, CentralSign::Table);
        assert_eq!(cell_at(&witt, "L_{-4}", "L_{4}"), "0");
        let table_sign =
            build_table(TableId::VirasoroAlpha0, TauStyle::Unicode, CentralSign::Table);
        assert_eq!(cell_at(&table_sign, "L_{-4}", "L_{4}"), "5C");
        let eq_sign = build_table(
            TableId::VirasoroAlpha0,
            TauStyle::Unicode,
            CentralSign::Equation,
        );
        assert_eq!(cell_at(&eq_sign, "L_{-4}", "L_{4}"), "-5C");
        let diffs = table_sign.diff(&eq_sign);
        assert_eq!(diffs.len(), 3);
        assert!(diffs
            .iter()
            .all(|d| matches!(d.col_label.as_str(), "L_{2}" | "L_{3}" | "L_{4}")));
    }

    #[test]
    fn jordan_table_matches_published_sample_cells() {
        let table = build_table(TableId::JordanSample, TauStyle::Unicode, CentralSign::Table);
        assert_eq!(
            cell_at(&table, "L_{0}", "L_{1}"),
            "(1/2)L_{-1}+(1/2)L_{2}"
        );
        assert_eq!(cell_at(&table, "L_{-2}", "L_{-2}"), "L_{-2}");
    }

    #[test]
    fn renderings_are_deterministic_and_parseable() {
        let table = build_table(TableId::WittAlpha1, TauStyle::Ascii, CentralSign::Table);
        assert_eq!(table.to_csv(), table.to_csv());
        assert_eq!(table.to_text(), table.to_text());
        let json: serde_json::Value = serde_json::from_str(&table.to_json()).unwrap();
        assert_eq!(json["table"], "table-5-witt-alpha-1");
        assert_eq!(json["rows"][0]["cells"][1], "-5L_{-3}");
    }

    #[test]
    fn table_ids_parse_from_cli_spellings() {
        assert_eq!(TableId::parse("3"), Some(TableId::QcLieSample));
        assert_eq!(TableId::parse("jordan"), Some(TableId::JordanSample));
        assert_eq!(TableId::parse("7-jordan"), Some(TableId::JordanSample));
        assert_eq!(TableId::parse("9"), None);
    }
}
