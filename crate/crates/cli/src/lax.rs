use clap::Args;
use serde_json::{json, Value};
use wkit_core::emit::Style;
use wkit_core::expr;
use wkit_core::psido::agd::agd_bracket;
use wkit_core::psido::diff::{self, Alphabet};
use wkit_core::psido::{
    default_trunc, field_flows, fractional_plus, miura_expand, nth_root, render_operator, time_derivative, FlowEquation,
    PsiDO,
};
use wkit_core::scalar;

use crate::report::Report;
use crate::{CliError, TruncArgs};

#[derive(Debug, Args)]
pub struct OperatorArgs {
    /// Monic differential operator in `d` and field names, e.g. "d^2 + u".
    #[arg(long = "L", value_name = "EXPR")]
    operator: String,
    #[command(flatten)]
    trunc: TruncArgs,
}

#[derive(Debug, Args)]
pub struct HierarchyArgs {
    #[command(flatten)]
    op: OperatorArgs,
    /// Index of the flow.
    #[arg(long)]
    k: u32,
}

#[derive(Debug, Args)]
pub struct RootArgs {
    #[command(flatten)]
    op: OperatorArgs,
    /// Also print `(L^(k/n))_+` for this k.
    #[arg(long, value_name = "K")]
    power: Option<u32>,
}

#[derive(Debug, Args)]
pub struct AgdArgs {
    #[command(flatten)]
    op: OperatorArgs,
    /// Largest power of x used in the antisymmetry check.
    #[arg(long, default_value_t = 3)]
    moments: u32,
}

#[derive(Debug, Args)]
pub struct MiuraArgs {
    /// Comma-separated field names h_1, ..., h_m.
    #[arg(long, default_value = "h1,h2")]
    fields: String,
    /// Coefficient of d in each factor.
    #[arg(long, default_value = "1")]
    alpha: String,
}

struct Operator {
    l: PsiDO,
    alphabet: Alphabet,
    order: usize,
    trunc: i32,
}

fn parse_operator(args: &OperatorArgs) -> Result<Operator, CliError> {
    let tree = expr::parse(&args.operator)?;
    let alphabet = Alphabet::new(tree.field_names());
    let l = expr::eval_psido(&tree, &alphabet, -1)?;
    if !l.is_differential() {
        return Err(CliError::Usage("--L must be a differential operator".into()));
    }
    let order = l
        .top_order()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::Usage("--L must have positive order".into()))? as usize;
    let trunc = args.trunc.resolve(default_trunc(order))?;
    Ok(Operator { l, alphabet, order, trunc })
}

fn operator_fields(report: &mut Report, op: &Operator) {
    report.set("operator", op.l.render(&op.alphabet, Style::Text));
    report.set("order", op.order);
    report.set("fields", op.alphabet.names().to_vec());
    report.set("truncation", op.trunc);
}

pub fn hierarchy(args: &HierarchyArgs) -> Result<Report, CliError> {
    if args.k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let op = parse_operator(&args.op)?;
    let a = &op.alphabet;
    let mut report = Report::new("hierarchy");
    operator_fields(&mut report, &op);
    report.set("k", args.k);
    let flows = field_flows(&op.l, args.k, op.trunc)?;
    let mut equations = Vec::new();
    for (f, flow) in &flows {
        let eq = FlowEquation::new(*f, flow, a);
        let text = eq.render(a, Style::Text);
        report.line(text.clone(), eq.render(a, Style::Latex));
        equations.push(json!({
            "field": a.name(*f),
            "multiplier": scalar::to_string(&eq.multiplier),
            "rhs": a.json(&eq.rhs),
            "text": text,
        }));
    }
    report.set("equations", equations);
    if flows.len() == 2 {
        let (first, flow) = flows.iter().next().expect("two flows");
        let second = time_derivative(flow, &flows)?;
        if diff::fields_of(&second).iter().all(|g| g == first) {
            let name = a.name(*first);
            let text = format!("{name}_tt = {}", a.render(&second, Style::Text));
            let latex = format!("{}_{{tt}} = {}", a.jet_string(*first, 0, Style::Latex), a.render(&second, Style::Latex));
            report.line(text.clone(), latex);
            report.set("eliminated", json!({"field": name, "rhs": a.json(&second), "text": text}));
        }
    }
    Ok(report)
}

pub fn root(args: &RootArgs) -> Result<Report, CliError> {
    let op = parse_operator(&args.op)?;
    let a = &op.alphabet;
    let mut report = Report::new("root");
    operator_fields(&mut report, &op);
    let root = nth_root(&op.l, op.order, op.trunc)?;
    let n = op.order;
    report.line(
        format!("L^(1/{n}) = {} + O(d^{})", root.render(a, Style::Text), op.trunc - 1),
        format!("L^{{1/{n}}} = {} + O(\\partial^{{{}}})", root.render(a, Style::Latex), op.trunc - 1),
    );
    report.set("root", root.to_json(a));
    if let Some(k) = args.power {
        let plus = fractional_plus(&op.l, k, op.trunc)?;
        report.line(
            format!("(L^({k}/{n}))_+ = {}", plus.render(a, Style::Text)),
            format!("(L^{{{k}/{n}}})_+ = {}", plus.render(a, Style::Latex)),
        );
        report.set("power", k);
        report.set("plus_part", plus.to_json(a));
    }
    Ok(report)
}

pub fn agd(args: &AgdArgs) -> Result<Report, CliError> {
    let op = parse_operator(&args.op)?;
    let a = &op.alphabet;
    let mut report = Report::new("agd");
    operator_fields(&mut report, &op);
    let bracket = agd_bracket(&op.l, op.trunc)?;
    for &(f, g) in bracket.entries.keys() {
        report.line(
            bracket.render_entry(f, g, a, Style::Text),
            bracket.render_entry(f, g, a, Style::Latex),
        );
    }
    report.set("brackets", bracket.to_json(a));
    let moments = bracket.antisymmetry_moments(args.moments);
    let failing: Vec<Value> = moments
        .iter()
        .filter(|m| !m.vanishes)
        .map(|m| json!([a.name(m.left_field), a.name(m.right_field), m.left_power, m.right_power]))
        .collect();
    let ok = failing.is_empty();
    report.note(format!(
        "antisymmetry: {} of {} moments vanish",
        moments.len() - failing.len(),
        moments.len()
    ));
    report.set("antisymmetry", json!({"moments": moments.len(), "failing": failing}));
    report.check(ok);
    Ok(report)
}

pub fn miura(args: &MiuraArgs) -> Result<Report, CliError> {
    let names: Vec<String> = args.fields.split(',').map(|s| s.trim().to_string()).collect();
    if names.iter().any(|n| n.is_empty() || n == "d" || !n.chars().all(|c| c.is_alphanumeric() || c == '_')) {
        return Err(CliError::Usage(format!("bad field list `{}`", args.fields)));
    }
    let alpha = scalar::parse(&args.alpha)?;
    let alphabet = Alphabet::new(names.clone());
    let ids: Vec<u16> = (0..names.len() as u16).collect();
    let coeffs = miura_expand(&ids, &alpha);
    let mut report = Report::new("miura");
    report.set("fields", names);
    report.set("alpha", scalar::to_string(&alpha));
    let terms = || coeffs.iter().rev().map(|(k, c)| (*k, c));
    report.line(
        render_operator(terms(), &alphabet, Style::Text, "d"),
        render_operator(terms(), &alphabet, Style::Latex, "d"),
    );
    let json_terms: Vec<Value> = terms()
        .map(|(k, c)| json!({"order": k, "coefficient": alphabet.json(c)}))
        .collect();
    report.set("coefficients", json_terms);
    Ok(report)
}
