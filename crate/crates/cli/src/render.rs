//! JSON, CSV and LaTeX renderings of engine results.

use std::collections::BTreeMap;

use affine_gch::serial::{CharacterDoc, SCHEMA_VERSION};
use affine_gch::verify::Report;
use affine_gch::{CartanType, Expansion, GradedCharacter, IrrepSum, QPoly, RootSystem, Truncation, Weight};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Serialize)]
struct ExpansionDoc<'a> {
    schema_version: u32,
    #[serde(rename = "type")]
    kind: CartanType,
    rank: usize,
    #[serde(flatten)]
    expansion: &'a Expansion,
}

#[derive(Serialize)]
struct PolyEntry<'a> {
    weight: &'a Weight,
    poly: &'a QPoly,
}

#[derive(Serialize)]
struct KostkaDoc<'a> {
    schema_version: u32,
    #[serde(rename = "type")]
    kind: CartanType,
    rank: usize,
    level: i64,
    simply_laced: bool,
    coeffs: Vec<PolyEntry<'a>>,
}

fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    let mut s = String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8");
    s.truncate(s.trim_end().len());
    s
}

fn weight_arg(w: &Weight) -> String {
    w.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// `2\varpi_{1} - \varpi_{2}`; rank one drops the subscript.
pub fn latex_weight(w: &Weight) -> String {
    let mut out = String::new();
    for (i, &c) in w.coords().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let name = if w.rank() == 1 { "\\varpi".to_string() } else { format!("\\varpi_{{{}}}", i + 1) };
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if c.abs() != 1 {
            out.push_str(&c.abs().to_string());
        }
        out.push_str(&name);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn latex_poly(p: &QPoly) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (e, c) in p.terms() {
        let mono = match e {
            0 => String::new(),
            1 => "q".into(),
            _ => format!("q^{{{e}}}"),
        };
        let cs = c.to_string();
        let body = match (cs.as_str(), mono.is_empty()) {
            (_, true) => cs.clone(),
            ("1", false) => mono,
            ("-1", false) => format!("-{mono}"),
            _ => format!("{cs}{mono}"),
        };
        parts.push(body);
    }
    if let Truncation::At(n) = p.truncation() {
        parts.push(format!("O(q^{{{}}})", n + 1));
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ").replace("+ -", "- ")
}

fn latex_sum(items: Vec<String>) -> String {
    if items.is_empty() {
        "0".into()
    } else {
        items.join(" + ")
    }
}

pub fn character(rs: &RootSystem, f: &GradedCharacter, fmt: Format) -> String {
    match fmt {
        Format::Json => serde_json::to_string(&CharacterDoc::new(rs, f)).expect("serializable"),
        Format::Csv => csv_rows(
            &["weight", "q", "coeff"],
            f.sorted_terms().into_iter().map(|(w, e, c)| vec![weight_arg(&w), e.to_string(), c.to_string()]),
        ),
        Format::Latex => {
            if f.is_w_invariant(rs) {
                if let Ok(s) = IrrepSum::from_character(rs, f) {
                    return irrep_latex(&s);
                }
            }
            let items = f
                .sorted_terms()
                .into_iter()
                .map(|(w, e, c)| {
                    let p = QPoly::monomial(e, c);
                    format!("({}) e^{{{}}}", latex_poly(&p), latex_weight(&w))
                })
                .collect();
            let mut s = latex_sum(items);
            if let Some(n) = f.truncation().bound() {
                s.push_str(&format!(" + O(q^{{{}}})", n + 1));
            }
            s
        }
    }
}

fn irrep_latex(s: &IrrepSum) -> String {
    let items = s
        .coeffs
        .iter()
        .rev()
        .map(|(w, p)| format!("({}) \\mathrm{{ch}}\\, V_{{{}}}", latex_poly(&p.clone().exact()), latex_weight(w)))
        .collect();
    let mut out = latex_sum(items);
    if let Some(n) = s.truncation.bound() {
        out.push_str(&format!(" + O(q^{{{}}})", n + 1));
    }
    out
}

fn family_symbol(e: &Expansion) -> String {
    use affine_gch::Family::*;
    let k = e.basis.level;
    match e.basis.family {
        Irreducible => "\\mathrm{ch}\\, V".into(),
        Thin => format!("\\mathrm{{gch}}\\, D^{{({k})}}"),
        Weyl => format!("\\mathrm{{gch}}\\, W^{{({k})}}"),
        ThickWeyl => format!("\\mathrm{{gch}}\\, \\mathbb{{W}}^{{({k})}}"),
    }
}

fn poly_rows<'a>(coeffs: impl Iterator<Item = (&'a Weight, &'a QPoly)>) -> Vec<Vec<String>> {
    coeffs
        .flat_map(|(w, p)| {
            p.terms().map(move |(e, c)| vec![weight_arg(w), e.to_string(), c.to_string()]).collect::<Vec<_>>()
        })
        .collect()
}

pub fn expansion(rs: &RootSystem, e: &Expansion, fmt: Format) -> String {
    match fmt {
        Format::Json => serde_json::to_string(&ExpansionDoc {
            schema_version: SCHEMA_VERSION,
            kind: rs.kind,
            rank: rs.rank,
            expansion: e,
        })
        .expect("serializable"),
        Format::Csv => csv_rows(&["weight", "q", "coeff"], poly_rows(e.coeffs.iter())),
        Format::Latex => {
            let sym = family_symbol(e);
            latex_sum(
                e.coeffs
                    .iter()
                    .rev()
                    .map(|(w, p)| format!("({}) {sym}_{{{}}}", latex_poly(p), latex_weight(w)))
                    .collect(),
            )
        }
    }
}

pub fn kostka(rs: &RootSystem, level: i64, m: &BTreeMap<Weight, QPoly>, fmt: Format) -> String {
    match fmt {
        Format::Json => serde_json::to_string(&KostkaDoc {
            schema_version: SCHEMA_VERSION,
            kind: rs.kind,
            rank: rs.rank,
            level,
            simply_laced: rs.lacing == 1,
            coeffs: m.iter().map(|(weight, poly)| PolyEntry { weight, poly }).collect(),
        })
        .expect("serializable"),
        Format::Csv => csv_rows(&["weight", "q", "coeff"], poly_rows(m.iter())),
        Format::Latex => latex_sum(
            m.iter()
                .rev()
                .map(|(w, p)| format!("X^{{({level})}}_{{{}}}(q) = {}", latex_weight(w), latex_poly(p)))
                .collect(),
        )
        .replace(" + X", ",\\quad X"),
    }
}

pub fn orbit(m: Option<i64>, fmt: Format) -> String {
    match (m, fmt) {
        (Some(m), _) => m.to_string(),
        (None, Format::Json) => "\"none\"".into(),
        (None, _) => "none".into(),
    }
}

pub fn reports(rs: &[Report], fmt: Format) -> String {
    match fmt {
        Format::Json => serde_json::to_string(rs).expect("serializable"),
        Format::Csv => csv_rows(
            &["id", "status", "cases", "failures", "seconds"],
            rs.iter().map(|r| {
                vec![
                    r.id.to_string(),
                    if r.passed() { "pass" } else { "fail" }.to_string(),
                    r.cases.to_string(),
                    r.failures.to_string(),
                    format!("{:.3}", r.elapsed.as_secs_f64()),
                ]
            }),
        ),
        Format::Latex => {
            let mut s = String::from("\\begin{tabular}{llrr}\n");
            for r in rs {
                s.push_str(&format!(
                    "{} & {} & {} & {} \\\\\n",
                    r.id,
                    if r.passed() { "pass" } else { "fail" },
                    r.cases,
                    r.failures
                ));
            }
            s.push_str("\\end{tabular}");
            s
        }
    }
}
