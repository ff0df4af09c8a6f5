use crate::output::Document;

/// What to draw from a command's CSV columns.
struct Layout {
    x: &'static str,
    /// Column used to split the rows into separate curves.
    group: Option<&'static str>,
    /// Only rows whose `kind` column has this value are drawn.
    kind: Option<&'static str>,
    log_x: bool,
    log_y: bool,
}

fn layout(command: &str) -> Layout {
    let base = Layout { x: "theta", group: None, kind: None, log_x: false, log_y: false };
    match command {
        "ab-xsec" | "delta-xsec" | "well-xsec" => Layout { log_y: true, ..base },
        "delta-bound" => Layout { x: "s", group: Some("alpha"), ..base },
        "delta-phase" => Layout { x: "k", log_x: true, ..base },
        "well-regge" => Layout { x: "mu", group: Some("id"), kind: Some("point"), ..base },
        _ => Layout { x: "k", ..base },
    }
}

fn py_str(s: &str) -> String {
    format!("{s:?}")
}

fn py_opt(s: Option<&str>) -> String {
    s.map(py_str).unwrap_or_else(|| "None".into())
}

fn py_bool(b: bool) -> &'static str {
    if b {
        "True"
    } else {
        "False"
    }
}

/// A standalone matplotlib script that reads `data_path` and writes a PNG
/// next to it.
pub fn script(doc: &Document, data_path: &str) -> String {
    let l = layout(doc.command);
    let skip = ["kind", "id", "alpha", "s"];
    let ys: Vec<String> = doc
        .columns
        .iter()
        .filter(|c| c.as_str() != l.x && !skip.contains(&c.as_str()) && Some(c.as_str()) != l.group)
        .map(|c| py_str(c))
        .collect();
    format!(
        r##"#!/usr/bin/env python3
# Plot for the output of `anyon {command}`.
import csv
import sys

import matplotlib.pyplot as plt

DATA = {data}
X = {x}
Y = [{ys}]
GROUP = {group}
KIND = {kind}
LOG_X = {log_x}
LOG_Y = {log_y}


def value(text):
    return float(text) if text else float("nan")


def main():
    path = sys.argv[1] if len(sys.argv) > 1 else DATA
    with open(path) as fh:
        rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))
    if KIND is not None:
        rows = [r for r in rows if r["kind"] == KIND]
    groups = {{}}
    for r in rows:
        groups.setdefault(r[GROUP] if GROUP else "", []).append(r)
    fig, ax = plt.subplots()
    for label, members in groups.items():
        xs = [value(r[X]) for r in members]
        for y in Y:
            name = " ".join(p for p in (y, f"{{GROUP}}={{label}}" if GROUP else "") if p)
            ax.plot(xs, [value(r[y]) for r in members], label=name)
    ax.set_xlabel(X)
    if LOG_X:
        ax.set_xscale("log")
    if LOG_Y:
        ax.set_yscale("log")
    ax.legend(fontsize="small")
    fig.savefig(path.rsplit(".", 1)[0] + ".png", dpi=150)


if __name__ == "__main__":
    main()
"##,
        command = doc.command,
        data = py_str(data_path),
        x = py_str(l.x),
        ys = ys.join(", "),
        group = py_opt(l.group),
        kind = py_opt(l.kind),
        log_x = py_bool(l.log_x),
        log_y = py_bool(l.log_y),
    )
}
