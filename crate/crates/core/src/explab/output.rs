use std::io::Write;

use crate::error::{invalid, Result};

use super::run::ResultTable;

/// Twelve significant digits in scientific notation; `-0` prints as `0`.
pub fn format_number(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.11e}")
}

pub const PARAMETER_COLUMNS: [&str; 6] = ["setting_id", "alpha", "gamma", "beta", "kappa", "gt"];

/// Writes `table` as comma-separated values and returns the number of bytes written.
pub fn emit_csv<W: Write>(table: &ResultTable, mut sink: W) -> Result<usize> {
    if table.rows.is_empty() {
        return invalid("cannot emit an empty table");
    }
    let mut text = String::new();
    let header: Vec<&str> = PARAMETER_COLUMNS
        .iter()
        .copied()
        .chain(table.columns.iter().map(String::as_str))
        .collect();
    text.push_str(&header.join(","));
    text.push('\n');
    for row in &table.rows {
        let c = &row.config;
        let mut fields = vec![row.setting_id.to_string()];
        fields.extend([c.alpha(), c.gamma(), c.beta(), c.kappa(), c.gt()].map(format_number));
        fields.extend(row.values.iter().map(|&v| format_number(v)));
        text.push_str(&fields.join(","));
        text.push('\n');
    }
    sink.write_all(text.as_bytes())?;
    sink.flush()?;
    Ok(text.len())
}

/// A standalone matplotlib script that plots every quantity column of a
/// CSV produced by [`emit_csv`] against `gt`, one curve per setting.
pub fn plot_script(csv_path: &str, table: &ResultTable) -> String {
    let columns: Vec<String> = table.columns.iter().map(|c| format!("{c:?}")).collect();
    format!(
        r#"#!/usr/bin/env python3
import csv
import sys

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else {path:?}
columns = [{columns}]

with open(path, newline="") as fh:
    rows = list(csv.DictReader(fh))

settings = sorted({{int(r["setting_id"]) for r in rows}})
fig, axes = plt.subplots(len(columns), 1, figsize=(7, 2.6 * len(columns)), sharex=True, squeeze=False)
for ax, col in zip(axes[:, 0], columns):
    for s in settings:
        sel = [r for r in rows if int(r["setting_id"]) == s]
        label = "alpha={{:.3g}} gamma={{:.3g}}".format(float(sel[0]["alpha"]), float(sel[0]["gamma"]))
        ax.plot([float(r["gt"]) for r in sel], [float(r[col]) for r in sel], label=label)
    ax.set_ylabel(col)
    ax.legend(fontsize="small")
axes[-1, 0].set_xlabel("gt")
fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=150)
print(out)
"#,
        path = csv_path,
        columns = columns.join(", ")
    )
}
