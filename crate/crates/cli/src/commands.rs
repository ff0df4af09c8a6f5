use std::path::Path;

use anyon_core::delta::{self, ContactExtension};
use anyon_core::free;
use anyon_core::jost::{jost_function, RadialPotential, KAPPA_FLOOR};
use anyon_core::observables::{differential_cross_section, normalized_contact_cross_section, ChannelTruncation};
use anyon_core::well::{self, WellParams};
use num_complex::Complex64 as C;
use rayon::prelude::*;

use crate::cli::*;
use crate::error::{CliError, CliResult};
use crate::output::{Cell, Document, Value};

pub fn run(cmd: &Command) -> CliResult<Document> {
    match cmd {
        Command::AbXsec(a) => ab_xsec(a),
        Command::DeltaBound(a) => delta_bound(a),
        Command::DeltaXsec(a) => delta_xsec(a),
        Command::DeltaPhase(a) => delta_phase(a),
        Command::WellXsec(a) => well_xsec(a),
        Command::WellRegge(a) => well_regge(a),
        Command::JostEval(a) => jost_eval(a),
    }
}

/// Evaluates `f` on every item in parallel. The rows keep the item order and
/// the reported error is the first one in that order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> CliResult<R> + Sync + Send) -> CliResult<Vec<R>> {
    let results: Vec<CliResult<R>> = items.par_iter().map(f).collect();
    results.into_iter().collect()
}

fn s_label(s: f64) -> String {
    if s.is_infinite() {
        if s > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        s.to_string()
    }
}

fn ab_xsec(a: &AbXsecArgs) -> CliResult<Document> {
    let theta = a.theta.finite_values("theta")?;
    let mut doc = Document::new("ab-xsec", &["theta", "dsigma"]);
    doc.param("alpha", a.alpha);
    doc.param("k", a.k);
    doc.param("theta", a.theta.clone());
    doc.rows = par_map(&theta, |&t| Ok(vec![Cell::Num(t), Cell::Num(free::ab_cross_section(a.alpha, a.k, t)?)]))?;
    Ok(doc)
}

fn delta_bound(a: &DeltaBoundArgs) -> CliResult<Document> {
    let alphas = a.alpha.finite_values("alpha")?;
    let ss = a.s.values();
    let pairs: Vec<(f64, f64)> = ss.iter().flat_map(|&s| alphas.iter().map(move |&al| (s, al))).collect();
    let mut doc = Document::new("delta-bound", &["s", "alpha", "abs_kb"]);
    doc.param("alpha", a.alpha.clone());
    doc.param("s", a.s.clone());
    doc.rows = par_map(&pairs, |&(s, al)| {
        let b = delta::bound_state(&ContactExtension::new(al, s)?);
        let kb = if b.exists { Cell::Num(b.kappa) } else { Cell::Blank };
        Ok(vec![Cell::Num(s), Cell::Num(al), kb])
    })?;
    Ok(doc)
}

fn delta_xsec(a: &DeltaXsecArgs) -> CliResult<Document> {
    let theta = a.theta.finite_values("theta")?;
    let ss = a.s.values();
    if ss.is_empty() {
        return Err(CliError::Invalid("s list is empty".into()));
    }
    let tables = par_map(&ss, |&s| {
        let ext = ContactExtension::new(a.alpha, s)?;
        Ok(if a.normalized {
            normalized_contact_cross_section(&ext, a.k, &theta)?
        } else {
            differential_cross_section(a.alpha, a.k, &theta, &ext, ChannelTruncation::default())?
        })
    })?;
    let mut columns = vec!["theta".to_string()];
    columns.extend(ss.iter().map(|&s| format!("dsigma[s={}]", s_label(s))));
    let mut doc = Document::new("delta-xsec", &[]);
    doc.columns = columns;
    doc.param("alpha", a.alpha);
    doc.param("k", a.k);
    doc.param("s", a.s.clone());
    doc.param("theta", a.theta.clone());
    doc.param("normalized", a.normalized);
    if !a.normalized {
        doc.diagnostic("m_max", Value::Int(tables.iter().map(|t| t.m_max).max().unwrap_or(0).into()));
        doc.diagnostic("tail_estimate", tables.iter().map(|t| t.tail_estimate).fold(0.0, f64::max));
    }
    doc.rows = (0..theta.len())
        .map(|i| std::iter::once(Cell::Num(theta[i])).chain(tables.iter().map(|t| Cell::Num(t.dsigma[i]))).collect())
        .collect();
    Ok(doc)
}

fn delta_phase(a: &DeltaPhaseArgs) -> CliResult<Document> {
    let ks = a.k.positive_values("k")?;
    let ext = ContactExtension::new(a.alpha, a.s)?;
    let mut doc = Document::new("delta-phase", &["k", "delta"]);
    doc.param("alpha", a.alpha);
    doc.param("s", a.s);
    doc.param("k", a.k.clone());
    doc.rows = par_map(&ks, |&k| Ok(vec![Cell::Num(k), Cell::Num(delta::phase_shift(&ext, k)?)]))?;
    let lev = delta::levinson_relation(&ext)?;
    doc.diagnostic("k_low", lev.k_low);
    doc.diagnostic("k_high", lev.k_high);
    doc.summary = vec![
        ("delta0".into(), Value::Num(lev.delta_zero)),
        ("deltainf".into(), Value::Num(lev.delta_infinity)),
        ("n".into(), Value::Int(lev.n.into())),
        ("alpha_hat".into(), lev.alpha_hat.map_or(Value::Null, Value::Num)),
    ];
    Ok(doc)
}

fn well_xsec(a: &WellXsecArgs) -> CliResult<Document> {
    if !(a.energy > 0.0 && a.energy.is_finite()) {
        return Err(CliError::Invalid(format!("energy must be positive, got {}", a.energy)));
    }
    if !(a.tol > 0.0) {
        return Err(CliError::Invalid("tol must be positive".into()));
    }
    let theta = a.theta.finite_values("theta")?;
    let w = WellParams::new(a.v0, a.d)?;
    let k = a.energy.sqrt();
    let trunc = ChannelTruncation { m_max: a.m_max, tol: a.tol, ..ChannelTruncation::default() };
    let t = differential_cross_section(a.alpha, k, &theta, &w, trunc)?;
    let mut doc = Document::new("well-xsec", &["theta", "dsigma", "abs_f_alpha", "abs_f_ab"]);
    doc.param("alpha", a.alpha);
    doc.param("energy", a.energy);
    doc.param("v0", a.v0);
    doc.param("d", a.d);
    doc.param("theta", a.theta.clone());
    doc.param("m_max", a.m_max.map_or(Value::from("adaptive"), |m| Value::Int(m.into())));
    doc.param("tol", a.tol);
    doc.diagnostic("k", k);
    doc.diagnostic("m_max", Value::Int(t.m_max.into()));
    doc.diagnostic("tail_estimate", t.tail_estimate);
    doc.diagnostic("dsigma_tail", t.dsigma_tail);
    doc.rows = (0..theta.len())
        .map(|i| vec![Cell::Num(theta[i]), Cell::Num(t.dsigma[i]), Cell::Num(t.f_alpha[i].norm()), Cell::Num(t.f_ab[i].norm())])
        .collect();
    Ok(doc)
}

fn well_regge(a: &WellReggeArgs) -> CliResult<Document> {
    let mu = a.mu.positive_values("mu")?;
    let w = WellParams::new(a.v0, a.d)?;
    let tr = well::regge_roots(&w, &mu)?;
    let mut doc = Document::new("well-regge", &["kind", "id", "mu", "kappa"]);
    doc.param("v0", a.v0);
    doc.param("d", a.d);
    doc.param("mu", a.mu.clone());
    doc.diagnostic("kappa_floor", KAPPA_FLOOR);
    doc.diagnostic("trajectories", Value::Int(tr.len() as i64));
    for t in &tr {
        let id = Cell::Int(t.id as i64);
        for &(m, kappa) in &t.points {
            doc.rows.push(vec![Cell::Text("point".into()), id.clone(), Cell::Num(m), Cell::Num(kappa)]);
        }
        if let Some(end) = t.termination {
            doc.rows.push(vec![Cell::Text("termination".into()), id.clone(), Cell::Num(end), Cell::Num(0.0)]);
        }
        if t.truncated {
            doc.diagnostic(&format!("trajectory_{}_truncated", t.id), true);
        }
    }
    Ok(doc)
}

enum Analytic {
    One,
    Well(WellParams),
}

struct PotentialInput {
    potential: RadialPotential,
    analytic: Option<Analytic>,
    source: Vec<String>,
}

fn keyed(rest: &str, keys: &[&str]) -> CliResult<Vec<f64>> {
    let mut out = vec![None; keys.len()];
    for part in rest.split(',').filter(|p| !p.trim().is_empty()) {
        let Some((k, v)) = part.split_once('=') else {
            return Err(CliError::Invalid(format!("potential parameter '{part}' must be key=value")));
        };
        let Some(i) = keys.iter().position(|&key| key == k.trim().to_ascii_lowercase()) else {
            return Err(CliError::Invalid(format!("unknown potential parameter '{}'", k.trim())));
        };
        out[i] = Some(crate::grid::parse_number(v)?);
    }
    keys.iter().zip(out).map(|(k, v)| v.ok_or_else(|| CliError::Invalid(format!("potential parameter '{k}' is missing")))).collect()
}

fn parse_potential(spec: &str) -> CliResult<PotentialInput> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match kind.trim() {
        "zero" => Ok(PotentialInput { potential: RadialPotential::Zero, analytic: Some(Analytic::One), source: Vec::new() }),
        "square-well" => {
            let p = keyed(rest, &["v0", "d"])?;
            let potential = RadialPotential::square_well(p[0], p[1])?;
            let analytic = if p[0] == 0.0 { Analytic::One } else { Analytic::Well(WellParams::new(p[0], p[1])?) };
            Ok(PotentialInput { potential, analytic: Some(analytic), source: Vec::new() })
        }
        "exponential" => {
            let p = keyed(rest, &["v0", "range"])?;
            Ok(PotentialInput { potential: RadialPotential::exponential(p[0], p[1])?, analytic: None, source: Vec::new() })
        }
        "table" => {
            let path = Path::new(rest);
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
            let potential = RadialPotential::parse_table(&text)?;
            let source = text.lines().map(|l| l.trim_end().to_string()).collect();
            Ok(PotentialInput { potential, analytic: None, source })
        }
        other => Err(CliError::Invalid(format!("unknown potential kind '{other}'"))),
    }
}

fn jost_eval(a: &JostEvalArgs) -> CliResult<Document> {
    let ks = a.k.positive_values("k")?;
    if !(a.mu > 0.0 && a.mu.is_finite()) {
        return Err(CliError::Invalid(format!("mu must be positive, got {}", a.mu)));
    }
    let input = parse_potential(&a.potential)?;
    let want_analytic = a.method != Method::Numeric;
    let want_numeric = a.method != Method::Analytic;
    if want_analytic && input.analytic.is_none() {
        return Err(CliError::Invalid(format!("no closed form for potential '{}'; use --method numeric", a.potential)));
    }
    let mut columns = vec!["k"];
    if want_analytic {
        columns.extend(["re_f_analytic", "im_f_analytic", "delta_analytic"]);
    }
    if want_numeric {
        columns.extend(["re_f_numeric", "im_f_numeric", "delta_numeric", "wronskian_residual"]);
    }
    if want_analytic && want_numeric {
        columns.push("discrepancy");
    }
    let mut doc = Document::new("jost-eval", &columns);
    doc.param("potential", a.potential.as_str());
    doc.param("mu", a.mu);
    doc.param("k", a.k.clone());
    doc.param("method", format!("{:?}", a.method).to_ascii_lowercase().as_str());
    doc.source = input.source;
    doc.rows = par_map(&ks, |&k| {
        let kc = C::new(k, 0.0);
        let mut row = vec![Cell::Num(k)];
        let fa = match &input.analytic {
            Some(an) if want_analytic => {
                let f = match an {
                    Analytic::One => C::new(1.0, 0.0),
                    Analytic::Well(w) => well::jost_function_analytic(w, kc, a.mu)?,
                };
                row.extend([Cell::Num(f.re), Cell::Num(f.im), Cell::Num(-f.arg())]);
                Some(f)
            }
            _ => None,
        };
        if want_numeric {
            let ev = jost_function(&input.potential, kc, a.mu)?;
            row.extend([Cell::Num(ev.f.re), Cell::Num(ev.f.im), Cell::Num(-ev.f.arg()), Cell::Num(ev.wronskian_residual)]);
            if let Some(fa) = fa {
                row.push(Cell::Num((ev.f - fa).norm() / (1.0 + fa.norm())));
            }
        }
        Ok(row)
    })?;
    if want_analytic && want_numeric {
        let worst = doc.rows.iter().filter_map(|r| match r.last() {
            Some(Cell::Num(x)) => Some(*x),
            _ => None,
        });
        doc.diagnostic("max_discrepancy", worst.fold(0.0, f64::max));
    }
    Ok(doc)
}
