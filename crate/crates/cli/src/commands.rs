use std::fmt;
use std::io::{self, Read, Write};

use cobord::algebra::json::terms_json;
use cobord::fgl::{check_fgl_axioms, universal_fgl, AxiomResult};
use cobord::genera::{
    adams_sweep, class_in_lazard, exact, exact_int, gdf_verify, product_sweep, rost_check, FormalClass, MorphismDatum,
    Report,
};
use cobord::theory::{cross_theory_check, extract_fgl, TheoryKind, TheorySpec};
use cobord::variety::{chern_numbers, partition_label, s_number, standard_catalog, standard_catalog_json, Catalog};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::output::{report_table, Format, Table};
use crate::{CatalogArg, CheckArgs, CheckKind, Command, LazardShow, VarietyShow};

pub const MAX_ORDER: usize = 10;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Math(cobord::Error),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Math(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => f.write_str(s),
            CliError::Math(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Internal inconsistencies are mathematical failures; everything else
/// traces back to the input.
impl From<cobord::Error> for CliError {
    fn from(e: cobord::Error) -> Self {
        match e {
            cobord::Error::OracleDisagreement(_)
            | cobord::Error::SingularBasis(_)
            | cobord::Error::NotAFormalGroupLaw(_)
            | cobord::Error::NotDivisible { .. } => CliError::Math(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Runs a command; `Ok(false)` means a check failed.
pub fn run(command: Command, format: Format, out: &mut impl Write) -> CliResult<bool> {
    match command {
        Command::Lazard { order, show } => lazard(order, show, format, out),
        Command::Variety { catalog, show, labels } => variety(&load_catalog(&catalog)?, show, &labels, format, out),
        Command::Check(args) => check(&args, format, out),
        Command::Catalog => {
            writeln!(out, "{}", standard_catalog_json())?;
            Ok(true)
        }
    }
}

fn load_catalog(arg: &CatalogArg) -> CliResult<Catalog> {
    let text = match arg.catalog.as_deref() {
        None => return Ok(standard_catalog()),
        Some("-") => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?,
    };
    Catalog::from_json(&text).map_err(|e| CliError::Usage(e.to_string()))
}

fn check_order(order: usize) -> CliResult<()> {
    if !(2..=MAX_ORDER).contains(&order) {
        return Err(CliError::Usage(format!("--order must lie in 2..={MAX_ORDER}, got {order}")));
    }
    Ok(())
}

fn axiom_row(name: &str, r: &AxiomResult) -> Vec<Value> {
    let witness = r.witness.as_ref().map_or(Value::Null, |w| {
        let mono: Vec<String> = w
            .variables
            .iter()
            .zip(&w.exponents)
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        format!("{}: {}", mono.join("*"), w.difference).into()
    });
    vec![name.into(), r.pass.into(), witness]
}

fn lazard(order: usize, show: LazardShow, format: Format, out: &mut impl Write) -> CliResult<bool> {
    check_order(order)?;
    let law = universal_fgl(order)?;
    match show {
        LazardShow::Aij => {
            let mut t = Table::new(&["i", "j", "coefficient"]);
            for total in 2..=order as u32 {
                for i in 1..=total / 2 {
                    let j = total - i;
                    t.push(vec![i.into(), j.into(), law.a(i, j).to_string().into()]);
                }
            }
            if format == Format::Json {
                let rows: Vec<Value> = t
                    .rows
                    .iter()
                    .map(|r| {
                        let (i, j) = (r[0].as_u64().unwrap() as u32, r[1].as_u64().unwrap() as u32);
                        json!({"i": i, "j": j, "coefficient": r[2], "terms": terms_json(&law.a(i, j))})
                    })
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&rows).map_err(io::Error::from)?)?;
            } else {
                t.write(format, out)?;
            }
            Ok(true)
        }
        LazardShow::Axioms => {
            let report = check_fgl_axioms(&law)?;
            let mut t = Table::new(&["axiom", "pass", "witness"]);
            t.push(axiom_row("unitality", &report.unitality));
            t.push(axiom_row("commutativity", &report.commutativity));
            t.push(axiom_row("associativity", &report.associativity));
            t.write(format, out)?;
            Ok(report.all_pass())
        }
    }
}

fn selected<'a>(catalog: &'a Catalog, labels: &[String]) -> CliResult<Vec<(&'a str, &'a cobord::variety::Variety)>> {
    if labels.is_empty() {
        return Ok(catalog.entries().iter().map(|e| (e.label.as_str(), &e.variety)).collect());
    }
    labels
        .iter()
        .map(|l| {
            catalog
                .entries()
                .iter()
                .find(|e| &e.label == l)
                .map(|e| (e.label.as_str(), &e.variety))
                .ok_or_else(|| CliError::Usage(format!("no variety labelled `{l}`")))
        })
        .collect()
}

fn variety(
    catalog: &Catalog,
    show: VarietyShow,
    labels: &[String],
    format: Format,
    out: &mut impl Write,
) -> CliResult<bool> {
    let items = selected(catalog, labels)?;
    let table = match show {
        VarietyShow::ChernNumbers => {
            let mut t = Table::new(&["label", "dimension", "chern_number", "value"]);
            for (label, v) in items {
                let numbers = chern_numbers(v)?;
                for (p, value) in &numbers.values {
                    t.push(vec![label.into(), numbers.dimension.into(), partition_label(p).into(), exact_int(value)]);
                }
            }
            t
        }
        VarietyShow::Sd => {
            let mut t = Table::new(&["label", "dimension", "s_d"]);
            for (label, v) in items {
                t.push(vec![label.into(), v.dimension()?.into(), exact_int(&s_number(v)?)]);
            }
            t
        }
        VarietyShow::LazardClass => {
            let mut t = Table::new(&["label", "dimension", "basis_expression", "lazard_class"]);
            for (label, v) in items {
                let c = class_in_lazard(v)?;
                t.push(vec![
                    label.into(),
                    c.dimension.into(),
                    c.basis_expression().into(),
                    c.element.to_string().into(),
                ]);
            }
            t
        }
    };
    table.write(format, out)?;
    Ok(true)
}

fn require<T: Clone>(value: &Option<T>, flag: &str, kind: &str) -> CliResult<T> {
    value.clone().ok_or_else(|| CliError::Usage(format!("check {kind} requires --{flag}")))
}

fn parse_term(term: &str, catalog: &Catalog) -> CliResult<(BigRational, cobord::variety::Variety)> {
    let (coeff, label) =
        term.split_once(':').ok_or_else(|| CliError::Usage(format!("term `{term}` is not COEFF:LABEL")))?;
    let (num, den) = coeff.split_once('/').unwrap_or((coeff, "1"));
    let c = cobord::algebra::json::parse_rational(num.trim(), den.trim())
        .map_err(|_| CliError::Usage(format!("`{coeff}` is not an exact rational")))?;
    let v = catalog.require(label.trim())?.clone();
    Ok((c, v))
}

fn morphism(args: &CheckArgs, catalog: &Catalog, kind: &str) -> CliResult<(String, String, MorphismDatum)> {
    let source = require(&args.source, "source", kind)?;
    let target = require(&args.target, "target", kind)?;
    let deg = require(&args.deg, "deg", kind)?;
    let datum = MorphismDatum::new(catalog.require(&source)?.clone(), catalog.require(&target)?.clone(), deg);
    Ok((source, target, datum))
}

fn emit_report(mut report: Report, labels: &[(&str, String)], format: Format, out: &mut impl Write) -> CliResult<bool> {
    for (key, label) in labels {
        report.inputs[*key] = Value::from(label.clone());
    }
    match format {
        Format::Json => writeln!(out, "{}", report.to_json_string())?,
        _ => report_table(&report).write(format, out)?,
    }
    Ok(report.pass)
}

fn check(args: &CheckArgs, format: Format, out: &mut impl Write) -> CliResult<bool> {
    match args.kind {
        CheckKind::Adams => {
            let rows = adams_sweep(&load_catalog(&args.catalog)?)?;
            let mut t = Table::new(&["label", "dimension", "p", "s_d", "quotient", "pass"]);
            let mut all = true;
            for r in rows {
                all &= r.result.passes;
                t.push(vec![
                    r.label.into(),
                    r.result.dimension.into(),
                    r.result.p.into(),
                    exact_int(&r.result.s_number),
                    r.result.quotient.as_ref().map_or(Value::Null, exact_int),
                    r.result.passes.into(),
                ]);
            }
            t.write(format, out)?;
            Ok(all)
        }
        CheckKind::Products => {
            let rows = product_sweep(&load_catalog(&args.catalog)?)?;
            let mut t = Table::new(&["label", "dimension", "s_d", "pass"]);
            let mut all = true;
            for r in rows {
                all &= r.passes;
                t.push(vec![r.label.into(), r.dimension.into(), exact_int(&r.s_number), r.passes.into()]);
            }
            t.write(format, out)?;
            Ok(all)
        }
        CheckKind::CrossTheory => {
            let catalog = load_catalog(&args.catalog)?;
            let mut t = Table::new(&["label", "dimension", "lazard_class", "multiplicative_image", "chi", "pass"]);
            let mut all = true;
            for e in catalog.entries() {
                let r = cross_theory_check(&e.variety)?;
                all &= r.pass;
                t.push(vec![
                    e.label.clone().into(),
                    r.inputs["dimension"].clone(),
                    r.witness["lazard_class"].clone(),
                    r.witness["multiplicative_image"].clone(),
                    r.witness["chi"].clone(),
                    r.pass.into(),
                ]);
            }
            t.write(format, out)?;
            Ok(all)
        }
        CheckKind::Rost => {
            let catalog = load_catalog(&args.catalog)?;
            let (source, target, datum) = morphism(args, &catalog, "rost")?;
            let p = require(&args.p, "p", "rost")?;
            let eta = args.eta.map(BigInt::from);
            let report = rost_check(&datum, p, eta.as_ref())?;
            emit_report(report, &[("source", source), ("target", target)], format, out)
        }
        CheckKind::Gdf => {
            let catalog = load_catalog(&args.catalog)?;
            let (source, target, datum) = morphism(args, &catalog, "gdf")?;
            let mut decomposition = FormalClass::new();
            let mut described = Vec::new();
            for term in &args.terms {
                let (c, v) = parse_term(term, &catalog)?;
                described.push(json!({"coefficient": exact(&c), "variety": term.split_once(':').unwrap().1.trim()}));
                decomposition = decomposition.with(c, v);
            }
            let mut report = gdf_verify(&datum, &decomposition)?;
            report.inputs["decomposition"] = Value::Array(described);
            emit_report(report, &[("source", source), ("target", target)], format, out)
        }
        CheckKind::FglRoundtrip => {
            check_order(args.order)?;
            let mut t = Table::new(&["theory", "order", "pass"]);
            let mut all = true;
            for kind in [TheoryKind::Chow, TheoryKind::KTheory, TheoryKind::Universal] {
                let spec = TheorySpec::new(kind, args.order)?;
                let pass = extract_fgl(&spec, args.order)? == *spec.fgl;
                all &= pass;
                t.push(vec![kind.to_string().into(), args.order.into(), pass.into()]);
            }
            t.write(format, out)?;
            Ok(all)
        }
    }
}
