use clap::{Args, ValueEnum};
use serde_json::{json, Value};
use wkit_core::classicalw::{default_names, minimal_sl3, render_poly, rep_decompose, ClassicalW};
use wkit_core::emit::Style;
use wkit_core::expr::{self, NcContext};
use wkit_core::invariants::{capelli_rdet, non_commuting_generators, omega_k, IndexSet, PfaffianContext};
use wkit_core::liealg::{self, AlgebraElement, AlgebraKind, FormKind, LieAlgebraSpec};
use wkit_core::ncalg::{NcAlgebra, NcPoly};
use wkit_core::quantumw::{whittaker_dynkin, RdetShift, WhittakerData};
use wkit_core::scalar::{self, Scalar};
use wkit_core::sl2kit::{
    self, check_good, degree_matrix, dynkin_grading, is_even, jm_from_partition, parse_partition, Grading, Sl2Triple,
};
use wkit_core::yangcheck::{ColumnOrder, HighestWeightTableau};
use wkit_core::Error;

use crate::report::Report;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    /// `2n tr(xy)` on gl_n and sl_n, `n tr(xy)` on o_n.
    Standard,
    /// `tr(xy)`.
    Trace,
    /// `2n tr(xy) - 2 tr(x) tr(y)` (degenerate on gl_n).
    TraceFree,
}

impl From<FormArg> for FormKind {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Standard => FormKind::Standard,
            FormArg::Trace => FormKind::Trace,
            FormArg::TraceFree => FormKind::TraceFree,
        }
    }
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// Algebra name such as gl3, sl2 or o4.
    #[arg(long)]
    algebra: String,
    /// Invariant form stored with the algebra.
    #[arg(long, value_enum, default_value_t = FormArg::Standard)]
    form: FormArg,
}

impl AlgebraArgs {
    fn build(&self) -> Result<LieAlgebraSpec, CliError> {
        Ok(liealg::build_named(&self.algebra, self.form.into())?)
    }
}

#[derive(Debug, Args)]
pub struct TripleArgs {
    /// Jordan type of e, as `partition:2,1`, `regular` or `zero`.
    #[arg(long)]
    nilpotent: Option<String>,
    /// Explicit e, for example "E[1,3]".
    #[arg(long)]
    e: Option<String>,
    /// Explicit f.
    #[arg(long)]
    f: Option<String>,
    /// Explicit h, as an expression or a diagonal such as "1,0,-1".
    #[arg(long)]
    h: Option<String>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Reads a diagonal list `1,0,-1` or an expression in the basis labels.
fn parse_element(spec: &LieAlgebraSpec, text: &str) -> Result<AlgebraElement, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() == spec.matrix_size() {
        if let Ok(diag) = parts.iter().map(|p| scalar::parse(p)).collect::<Result<Vec<Scalar>, _>>() {
            let m = wkit_core::linalg::Matrix::diagonal(&diag);
            return spec
                .element_of(&m)
                .map_err(|_| usage(format!("diag({text}) is not in {}", spec.name())));
        }
    }
    let alg = NcAlgebra::new(spec.clone());
    let p = NcContext::new(&alg).eval(&expr::parse(text)?)?;
    alg.as_element(&p)
        .ok_or_else(|| usage(format!("`{text}` is not a linear element of {}", spec.name())))
}

fn parts_of(spec: &LieAlgebraSpec, text: &str) -> Result<Vec<usize>, CliError> {
    let n = spec.matrix_size();
    let parts = match text.trim() {
        "regular" | "principal" => vec![n],
        "zero" => vec![1; n],
        t => parse_partition(t)?,
    };
    if parts.iter().sum::<usize>() != n {
        return Err(usage(format!("partition {parts:?} does not sum to {n}")));
    }
    Ok(parts)
}

impl TripleArgs {
    fn triple(&self, spec: &LieAlgebraSpec) -> Result<Sl2Triple, CliError> {
        if let Some(text) = &self.nilpotent {
            if spec.kind() == AlgebraKind::O {
                return Err(usage("o_n needs an explicit --e, --f and --h"));
            }
            let parts = parts_of(spec, text)?;
            if parts.iter().all(|&p| p == 1) {
                return Ok(Sl2Triple::zero(spec));
            }
            return Ok(jm_from_partition(&parts)?.in_spec(spec)?);
        }
        match (&self.e, &self.f, &self.h) {
            (Some(e), Some(f), Some(h)) => Ok(Sl2Triple::new(
                spec,
                parse_element(spec, e)?,
                parse_element(spec, f)?,
                parse_element(spec, h)?,
            )?),
            _ => Err(usage("give --nilpotent or all of --e, --f, --h")),
        }
    }
}

fn poly_lines(report: &mut Report, name: &str, alg: &NcAlgebra, p: &NcPoly) {
    report.line(
        format!("{name} = {}", alg.render(p, Style::Text)),
        format!("{} = {}", wkit_core::emit::label_to_latex(name), alg.render(p, Style::Latex)),
    );
}

#[derive(Debug, Args)]
pub struct ClassicalWArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[command(flatten)]
    nilpotent: TripleArgs,
    /// Named example: `minimal` (sl3 with e = E[1,3] and fitted normalizations).
    #[arg(long = "triple", value_name = "NAME")]
    preset: Option<String>,
}

pub fn classical_w(args: &ClassicalWArgs) -> Result<Report, CliError> {
    let mut report = Report::new("classical-w");
    report.set("algebra", args.algebra.algebra.clone());
    match args.preset.as_deref() {
        Some("minimal") => {
            if args.algebra.algebra != "sl3" {
                return Err(usage("--triple minimal is defined for sl3"));
            }
            let m = minimal_sl3()?;
            let coords = default_names(m.cw.rank());
            let mut gens = Vec::new();
            for (name, g) in m.names.iter().zip(&m.generators) {
                report.line(
                    format!("{name} = {}", render_poly(g, &coords, Style::Text)),
                    format!("{name} = {}", render_poly(g, &coords, Style::Latex)),
                );
                gens.push(json!({"name": name, "slice": render_poly(g, &coords, Style::Text)}));
            }
            let mut rels = Vec::new();
            for r in &m.relations {
                let value = render_poly(&r.value, &m.names, Style::Text);
                report.line(
                    format!("{{{}, {}}} = {value}", r.left, r.right),
                    format!("\\{{{}, {}\\}} = {}", r.left, r.right, render_poly(&r.value, &m.names, Style::Latex)),
                );
                rels.push(json!({
                    "left": r.left,
                    "right": r.right,
                    "value": value,
                    "expected": render_poly(&r.expected, &m.names, Style::Text),
                    "holds": r.holds,
                }));
                report.check(r.holds);
            }
            report.note(format!("form scale: {}", scalar::to_string(&m.form_scale)));
            report.note(format!("F normalization: {}", scalar::to_string(&m.f_normalization)));
            report.note(format!("jacobi: {}", m.jacobi));
            report.note(format!("constraints first class: {}", m.first_class));
            report.check(m.jacobi);
            report.set("triple", "minimal");
            report.set("generators", gens);
            report.set("relations", rels);
            report.set("form_scale", scalar::to_string(&m.form_scale));
            report.set("f_normalization", scalar::to_string(&m.f_normalization));
            report.set("jacobi", m.jacobi);
            report.set("first_class", m.first_class);
            report.set("table", m.cw.table_json(&coords));
        }
        Some(other) => return Err(usage(format!("unknown --triple `{other}`"))),
        None => {
            let spec = args.algebra.build()?;
            let triple = args.nilpotent.triple(&spec)?;
            let emb = rep_decompose(&spec, &triple)?;
            let first_class = emb.first_class_check()?;
            let embedding = emb.to_json();
            let cw = ClassicalW::new(emb)?;
            let names = default_names(cw.rank());
            let table = cw.table();
            for a in 0..cw.rank() {
                for b in a + 1..cw.rank() {
                    report.line(
                        format!("{{{}, {}}} = {}", names[a], names[b], render_poly(&table[a][b], &names, Style::Text)),
                        format!(
                            "\\{{{}, {}\\}} = {}",
                            wkit_core::emit::label_to_latex(&names[a]),
                            wkit_core::emit::label_to_latex(&names[b]),
                            render_poly(&table[a][b], &names, Style::Latex)
                        ),
                    );
                }
            }
            let jacobi = cw.jacobi_holds();
            report.note(format!("jacobi: {jacobi}"));
            report.note(format!("commutative: {}", cw.is_commutative()));
            report.note(format!("constraints first class: {first_class}"));
            report.check(jacobi);
            report.set("embedding", embedding);
            report.set("slice_degrees", cw.slice_degrees().to_vec());
            report.set("table", cw.table_json(&names));
            report.set("jacobi", jacobi);
            report.set("commutative", cw.is_commutative());
            report.set("first_class", first_class);
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GeneratorKind {
    /// Row determinant for principal gl_n, theta lifts otherwise.
    Auto,
    /// Coefficients of the row determinant of the shifted matrix.
    Rdet,
    /// Lifts of a basis of the centralizer of e.
    Theta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShiftArg {
    /// Diagonal entries `E_ii + u + i`.
    Increasing,
    /// Diagonal entries `E_ii + u - i`.
    Decreasing,
}

#[derive(Debug, Args)]
pub struct QuantumWArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[command(flatten)]
    nilpotent: TripleArgs,
    /// Kazhdan degree bound for the dimension table.
    #[arg(long, default_value_t = 4)]
    max_degree: i64,
    #[arg(long, value_enum, default_value_t = GeneratorKind::Auto)]
    generators: GeneratorKind,
    /// Diagonal shifts of the row-determinant matrix.
    #[arg(long, value_enum, default_value_t = ShiftArg::Increasing)]
    shift: ShiftArg,
    /// Test membership of an expression in W; `e`, `f`, `h` name the triple.
    #[arg(long = "check", value_name = "EXPR")]
    checks: Vec<String>,
}

fn membership(wd: &WhittakerData, p: &NcPoly) -> Result<Option<bool>, CliError> {
    match wd.in_w(p) {
        Ok(b) => Ok(Some(b)),
        Err(Error::NotInV) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn membership_text(m: Option<bool>) -> &'static str {
    match m {
        Some(true) => "in W",
        Some(false) => "not in W",
        None => "not in U(v)",
    }
}

pub fn quantum_w(args: &QuantumWArgs) -> Result<Report, CliError> {
    let spec = args.algebra.build()?;
    let triple = args.nilpotent.triple(&spec)?;
    let principal_gl = spec.kind() == AlgebraKind::Gl
        && !triple.is_zero()
        && sl2kit::centralizer(&spec, &triple.e).len() == spec.matrix_size();
    let wd = whittaker_dynkin(spec, triple)?;
    let alg = wd.algebra();
    let mut report = Report::new("quantum-w");
    report.set("whittaker", wd.to_json());
    report.set("form", FormKind::from(args.algebra.form).name());

    let rdet = match args.generators {
        GeneratorKind::Auto => principal_gl,
        GeneratorKind::Rdet => true,
        GeneratorKind::Theta => false,
    };
    let gens = if rdet {
        let shift = match args.shift {
            ShiftArg::Increasing => RdetShift::Increasing,
            ShiftArg::Decreasing => RdetShift::Decreasing,
        };
        report.set("shift", format!("{:?}", args.shift).to_lowercase());
        wd.w_rdet_generators(shift)?
    } else {
        wd.generators()?
    };
    report.set("generator_kind", if rdet { "rdet" } else { "theta" });
    let mut gen_json = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let name = format!("w{}", i + 1);
        let m = membership(&wd, g)?;
        poly_lines(&mut report, &name, alg, g);
        report.note(format!("{name}: {}, Kazhdan degree {}", membership_text(m), wd.kazhdan_degree(g).unwrap_or(0)));
        report.check(m == Some(true));
        gen_json.push(json!({
            "name": name,
            "text": alg.render(g, Style::Text),
            "terms": alg.to_json(g),
            "in_w": m == Some(true),
            "kazhdan_degree": wd.kazhdan_degree(g),
        }));
    }
    report.set("generators", gen_json);

    let mut comm_json = Vec::new();
    let mut all_commute = true;
    for (a, b, c) in wd.commutator_table(&gens)? {
        let text = alg.render(&c, Style::Text);
        all_commute &= c.is_zero();
        report.line(
            format!("[w{}, w{}] = {text}", a + 1, b + 1),
            format!("[w_{{{}}}, w_{{{}}}] = {}", a + 1, b + 1, alg.render(&c, Style::Latex)),
        );
        comm_json.push(json!({"left": a + 1, "right": b + 1, "value": text}));
    }
    report.set("commutators", comm_json);
    let independent = wd.symbols_independent(&gens);
    report.note(format!("symbols independent: {independent}"));
    report.set("symbols_independent", independent);
    if rdet {
        report.check(all_commute && independent);
    }

    let dims = wd.w_basis_dims(args.max_degree)?;
    let mut dim_json = Vec::new();
    for d in &dims {
        report.note(format!("dim F_{} W = {} (slice count {})", d.degree, d.computed, d.expected));
        report.check(d.computed == d.expected);
        dim_json.push(json!({"degree": d.degree, "computed": d.computed, "expected": d.expected}));
    }
    report.set("filtered_dimensions", dim_json);

    let mut ctx = NcContext::new(alg);
    let t = wd.triple();
    for (name, x) in [("e", &t.e), ("f", &t.f), ("h", &t.h)] {
        ctx.named.insert(name.into(), alg.element(x));
    }
    let mut check_json = Vec::new();
    for text in &args.checks {
        let p = ctx.eval(&expr::parse(text)?)?;
        let m = membership(&wd, &p)?;
        report.note(format!("{text}: {}", membership_text(m)));
        report.check(m == Some(true));
        check_json.push(json!({"expression": text, "in_w": m == Some(true), "in_v": m.is_some()}));
    }
    report.set("checks", check_json);
    Ok(report)
}

#[derive(Debug, Args)]
pub struct CenterArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Capelli element C_k (gl_n: row-determinant coefficient, o_n: sum of squared pfaffians).
    #[arg(long = "capelli", value_name = "K")]
    capelli: Vec<usize>,
    /// Power trace Omega_k on gl_n.
    #[arg(long = "omega", value_name = "K")]
    omega: Vec<usize>,
}

fn central_line(report: &mut Report, alg: &NcAlgebra, name: &str, p: &NcPoly, out: &mut Vec<Value>) -> Result<(), CliError> {
    let bad = non_commuting_generators(alg, p)?;
    poly_lines(report, name, alg, p);
    if bad.is_empty() {
        report.note(format!("{name} is central"));
    } else {
        report.note(format!("{name} does not commute with {}", bad.join(", ")));
    }
    report.check(bad.is_empty());
    out.push(json!({
        "name": name,
        "text": alg.render(p, Style::Text),
        "terms": alg.to_json(p),
        "central": bad.is_empty(),
        "non_commuting": bad,
    }));
    Ok(())
}

pub fn center(args: &CenterArgs) -> Result<Report, CliError> {
    let spec = args.algebra.build()?;
    let n = spec.matrix_size();
    let kind = spec.kind();
    let alg = NcAlgebra::new(spec);
    let mut report = Report::new("center");
    report.set("algebra", args.algebra.algebra.clone());
    let mut elements = Vec::new();
    match kind {
        AlgebraKind::Gl => {
            let cs = capelli_rdet(&alg)?;
            let wanted: Vec<usize> = if args.capelli.is_empty() && args.omega.is_empty() {
                (1..=n).collect()
            } else {
                args.capelli.clone()
            };
            for k in wanted {
                let c = cs.get(k.wrapping_sub(1)).ok_or_else(|| usage(format!("Capelli index {k} is out of 1..{n}")))?;
                central_line(&mut report, &alg, &format!("C_{k}"), c, &mut elements)?;
            }
            for &k in &args.omega {
                if k == 0 {
                    return Err(usage("--omega must be at least 1"));
                }
                central_line(&mut report, &alg, &format!("Omega_{k}"), &omega_k(&alg, k)?, &mut elements)?;
            }
        }
        AlgebraKind::O => {
            if !args.omega.is_empty() {
                return Err(usage("--omega is defined for gl_n"));
            }
            let mut ctx = PfaffianContext::new(&alg)?;
            let wanted: Vec<usize> = if args.capelli.is_empty() {
                (2..=n).step_by(2).collect()
            } else {
                args.capelli.clone()
            };
            for k in wanted {
                let c = ctx.capelli(k)?;
                central_line(&mut report, &alg, &format!("C_{k}"), &c, &mut elements)?;
            }
        }
        _ => return Err(usage("center supports gl_n and o_n")),
    }
    report.set("elements", elements);
    Ok(report)
}

#[derive(Debug, Args)]
pub struct PfaffianArgs {
    /// Index set I, e.g. 1,2,3,4.
    #[arg(long = "I", value_name = "LIST")]
    first: String,
    /// Size N of o_N.
    #[arg(long = "N", value_name = "N")]
    size: usize,
    /// Check [F_ij, Pf F_I] only for this pair i,j (default: all pairs).
    #[arg(long, value_name = "I,J")]
    bracket: Option<String>,
    /// Also compare [Pf F_I, Pf F_J] with the split-sum readings.
    #[arg(long = "J", value_name = "LIST")]
    second: Option<String>,
}

fn index_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| usage(format!("bad index list `{text}`"))))
        .collect()
}

pub fn pfaffian(args: &PfaffianArgs) -> Result<Report, CliError> {
    let n = args.size;
    let alg = NcAlgebra::new(liealg::build_kind(AlgebraKind::O, n, FormKind::Standard)?);
    let mut ctx = PfaffianContext::new(&alg)?;
    let set = IndexSet::new(index_list(&args.first)?, n)?;
    let mut report = Report::new("pfaffian");
    report.set("N", n);
    report.set("I", set.indices().to_vec());
    let pf = ctx.pfaffian(&set)?;
    poly_lines(&mut report, &format!("Pf F_{}", set.label()), &alg, &pf);
    report.set("pfaffian", json!({"text": alg.render(&pf, Style::Text), "terms": alg.to_json(&pf)}));

    let pairs: Vec<(usize, usize)> = match &args.bracket {
        Some(text) => match index_list(text)?.as_slice() {
            [i, j] if i != j && *i >= 1 && *j >= 1 && *i <= n && *j <= n => vec![(*i, *j)],
            _ => return Err(usage(format!("--bracket needs two distinct indices in 1..{n}"))),
        },
        None => (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect(),
    };
    let mut brackets = Vec::new();
    for (i, j) in pairs {
        let r = ctx.pf_bracket(i, j, &set)?;
        report.note(format!("[F[{i},{j}], Pf F_{}] = Pf F_(F[{i},{j}] {}): {}", set.label(), set.label(), r.equal));
        report.check(r.equal);
        brackets.push(json!({
            "i": i,
            "j": j,
            "left": alg.render(&r.left, Style::Text),
            "equal": r.equal,
        }));
    }
    report.set("generator_brackets", brackets);

    if let Some(text) = &args.second {
        let other = IndexSet::new(index_list(text)?, n)?;
        let probe = ctx.pf_pf_bracket_probe(&set, &other)?;
        report.note(format!(
            "[Pf F_{}, Pf F_{}] = {}",
            set.label(),
            other.label(),
            alg.render(&probe.left, Style::Text)
        ));
        for r in &probe.readings {
            report.note(format!("reading {}: {}", r.reading.name(), if r.matches { "holds" } else { "fails" }));
        }
        report.check(probe.matching().contains(&"split-signed-reversed"));
        report.set("pfaffian_bracket", probe.to_json(&alg));
    }
    Ok(report)
}

#[derive(Debug, Args)]
pub struct GradingArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Grading element, as a diagonal "1,0,-1" or an expression.
    #[arg(long)]
    h: Option<String>,
    /// Use the Dynkin grading of this Jordan type (`partition:2,1`, `regular`).
    #[arg(long)]
    nilpotent: Option<String>,
    /// Nilpotent element to test the good-grading properties against.
    #[arg(long)]
    e: Option<String>,
}

fn matrix_text(m: &[Vec<i64>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn matrix_latex(m: &[Vec<i64>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" & "))
        .collect();
    format!("\\begin{{pmatrix}}{}\\end{{pmatrix}}", rows.join(" \\\\ "))
}

pub fn grading(args: &GradingArgs) -> Result<Report, CliError> {
    let spec = args.algebra.build()?;
    let (grading, mut e): (Grading, Option<AlgebraElement>) = match (&args.h, &args.nilpotent) {
        (Some(h), None) => (sl2kit::grading_by(&spec, &parse_element(&spec, h)?)?, None),
        (None, Some(nil)) => {
            let parts = parts_of(&spec, nil)?;
            let triple = jm_from_partition(&parts)?.in_spec(&spec)?;
            let e = (!triple.is_zero()).then(|| triple.e.clone());
            (dynkin_grading(&spec, &triple)?, e)
        }
        _ => return Err(usage("give exactly one of --h and --nilpotent")),
    };
    if let Some(text) = &args.e {
        e = Some(parse_element(&spec, text)?);
    }
    let mut report = Report::new("grading");
    report.set("algebra", spec.name().to_string());
    if let Some(m) = degree_matrix(&spec, &grading) {
        report.line(format!("degrees: {}", matrix_text(&m)), format!("\\deg E_{{ij}} = {}", matrix_latex(&m)));
        report.set("degree_matrix", m);
    } else {
        let degrees: Vec<Value> = (0..spec.dim())
            .map(|i| json!([spec.label(i), grading.degree_of(&spec.basis_element(i))]))
            .collect();
        report.set("basis_degrees", degrees);
    }
    let dims: Vec<Value> = grading.dimensions().iter().map(|(d, n)| json!([d, n])).collect();
    let dim_text: Vec<String> = grading.dimensions().iter().map(|(d, n)| format!("{d}:{n}")).collect();
    report.note(format!("dimensions: {}", dim_text.join(" ")));
    report.set("dimensions", dims);
    let even = is_even(&grading);
    report.note(format!("even: {even}"));
    report.set("even", even);
    if let Some(e) = e {
        let good = check_good(&spec, &grading, &e);
        for (name, ok) in good.entries() {
            report.note(format!("{name}: {ok}"));
        }
        report.note(format!("good: {}", good.all()));
        report.check(good.all());
        report.set("e", e.coords.iter().map(scalar::to_string).collect::<Vec<_>>());
        report.set("good", good.all());
        report.set("good_properties", serde_json::to_value(&good).map_err(|e| usage(e.to_string()))?);
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    BottomToTop,
    TopToBottom,
}

#[derive(Debug, Args)]
pub struct TableauArgs {
    /// Row lengths, e.g. 2,1.
    #[arg(long)]
    shape: String,
    /// Roots row by row, rows separated by `;`, e.g. "1,2;0".
    #[arg(long)]
    rows: String,
    /// Direction of strict increase in each column.
    #[arg(long, value_enum, default_value_t = OrderArg::BottomToTop)]
    order: OrderArg,
}

pub fn tableau(args: &TableauArgs) -> Result<Report, CliError> {
    let t = HighestWeightTableau::parse(&args.shape, &args.rows)?;
    let order = match args.order {
        OrderArg::BottomToTop => ColumnOrder::BottomToTop,
        OrderArg::TopToBottom => ColumnOrder::TopToBottom,
    };
    let mut report = Report::new("tableau");
    for (i, p) in t.polynomials().iter().enumerate() {
        report.line(format!("P_{}(u) = {p}", i + 1), format!("P_{{{}}}(u) = {p}", i + 1));
    }
    for (r, c) in t.column_violations(order) {
        report.note(format!("column {} fails between rows {} and {}", c + 1, r + 1, r + 2));
    }
    report.note(format!("irreducible: {} ({})", t.is_irreducible(order), order.name()));
    if let Value::Object(map) = t.to_json(order) {
        for (k, v) in map {
            report.set(&k, v);
        }
    }
    Ok(report)
}
