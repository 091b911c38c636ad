//! Python module `wkit`: thin wrappers over `wkit-core` returning strings,
//! booleans and plain containers.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pythonize::pythonize;

use wkit_core::emit::Style;
use wkit_core::expr::{self, NcContext};
use wkit_core::invariants::{capelli_rdet, non_commuting_generators, IndexSet, PfaffianContext};
use wkit_core::liealg::{self, AlgebraKind, FormKind, LieAlgebraSpec};
use wkit_core::ncalg::NcAlgebra;
use wkit_core::psido::agd::agd_bracket;
use wkit_core::psido::diff::Alphabet;
use wkit_core::psido::{self, default_trunc, flow_equations, fractional_plus, miura_expand, nth_root, PsiDO};
use wkit_core::quantumw::{whittaker_dynkin, WhittakerData};
use wkit_core::scalar;
use wkit_core::sl2kit::{self, jm_from_partition, parse_partition, Sl2Triple};
use wkit_core::yangcheck::{ColumnOrder, HighestWeightTableau};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

struct Operator {
    l: PsiDO,
    alphabet: Alphabet,
    order: usize,
}

fn operator(text: &str) -> PyResult<Operator> {
    let tree = expr::parse(text).map_err(err)?;
    let alphabet = Alphabet::new(tree.field_names());
    let l = expr::eval_psido(&tree, &alphabet, -1).map_err(err)?;
    match l.top_order() {
        Some(n) if n >= 1 && l.is_differential() => Ok(Operator { l, alphabet, order: n as usize }),
        _ => Err(err("expected a differential operator of positive order")),
    }
}

fn depth_or_default(depth: Option<u32>, order: usize) -> i32 {
    depth.map_or(default_trunc(order), |d| -(d as i32))
}

fn form_kind(name: &str) -> PyResult<FormKind> {
    match name {
        "standard" => Ok(FormKind::Standard),
        "trace" => Ok(FormKind::Trace),
        "trace-free" => Ok(FormKind::TraceFree),
        _ => Err(err(format!("unknown form `{name}`"))),
    }
}

fn whittaker(algebra: &str, partition: &str, form: &str) -> PyResult<WhittakerData> {
    let spec = liealg::build_named(algebra, form_kind(form)?).map_err(err)?;
    let parts = parse_partition(partition).map_err(err)?;
    if parts.iter().sum::<usize>() != spec.matrix_size() {
        return Err(err(format!("partition does not sum to {}", spec.matrix_size())));
    }
    let triple = if parts.iter().all(|&p| p == 1) {
        Sl2Triple::zero(&spec)
    } else {
        jm_from_partition(&parts).and_then(|t| t.in_spec(&spec)).map_err(err)?
    };
    whittaker_dynkin(spec, triple).map_err(err)
}

fn enveloping(algebra: &str) -> PyResult<NcAlgebra> {
    let spec: LieAlgebraSpec = liealg::build_named(algebra, FormKind::Standard).map_err(err)?;
    Ok(NcAlgebra::new(spec))
}

/// Parses an expression and prints it back in canonical text form.
#[pyfunction]
fn parse(text: &str) -> PyResult<String> {
    Ok(expr::parse(text).map_err(err)?.to_string())
}

/// Flow equations of the k-th Lax flow, one string per field.
#[pyfunction]
#[pyo3(signature = (operator_text, k, depth=None))]
fn hierarchy(operator_text: &str, k: u32, depth: Option<u32>) -> PyResult<Vec<String>> {
    let op = operator(operator_text)?;
    let trunc = depth_or_default(depth, op.order);
    let eqs = flow_equations(&op.l, k, trunc, &op.alphabet).map_err(err)?;
    Ok(eqs.iter().map(|e| e.render(&op.alphabet, Style::Text)).collect())
}

/// The n-th root of an order-n operator, truncated below d^-depth.
#[pyfunction]
#[pyo3(signature = (operator_text, depth=None))]
fn root(operator_text: &str, depth: Option<u32>) -> PyResult<String> {
    let op = operator(operator_text)?;
    let r = nth_root(&op.l, op.order, depth_or_default(depth, op.order)).map_err(err)?;
    Ok(r.render(&op.alphabet, Style::Text))
}

/// The differential part of L^(k/n).
#[pyfunction]
fn plus_part(operator_text: &str, k: u32) -> PyResult<String> {
    let op = operator(operator_text)?;
    let p = fractional_plus(&op.l, k, default_trunc(op.order)).map_err(err)?;
    Ok(p.render(&op.alphabet, Style::Text))
}

/// Second Gelfand-Dickey bracket as a nested dict of differential kernels.
#[pyfunction]
fn agd(py: Python<'_>, operator_text: &str) -> PyResult<PyObject> {
    let op = operator(operator_text)?;
    let b = agd_bracket(&op.l, default_trunc(op.order)).map_err(err)?;
    Ok(pythonize(py, &b.to_json(&op.alphabet)).map_err(err)?.unbind())
}

/// Expansion of (alpha d - h_1) ... (alpha d - h_m).
#[pyfunction]
#[pyo3(signature = (fields, alpha="1"))]
fn miura(fields: Vec<String>, alpha: &str) -> PyResult<String> {
    let a = scalar::parse(alpha).map_err(err)?;
    let ids: Vec<u16> = (0..fields.len() as u16).collect();
    let alphabet = Alphabet::new(fields);
    let coeffs = miura_expand(&ids, &a);
    Ok(psido::render_operator(coeffs.iter().rev().map(|(k, c)| (*k, c)), &alphabet, Style::Text, "d"))
}

/// Capelli generators of the center: all C_k for gl_n, even k for o_n.
#[pyfunction]
fn capelli(algebra: &str) -> PyResult<Vec<String>> {
    let alg = enveloping(algebra)?;
    let n = alg.spec().matrix_size();
    let elems = match alg.spec().kind() {
        AlgebraKind::Gl => capelli_rdet(&alg).map_err(err)?,
        AlgebraKind::O => {
            let mut ctx = PfaffianContext::new(&alg).map_err(err)?;
            (2..=n).step_by(2).map(|k| ctx.capelli(k)).collect::<Result<_, _>>().map_err(err)?
        }
        _ => return Err(err("capelli supports gl_n and o_n")),
    };
    Ok(elems.iter().map(|p| alg.render(p, Style::Text)).collect())
}

/// Whether an expression in the basis labels is central in U(g).
#[pyfunction]
fn is_central(algebra: &str, text: &str) -> PyResult<bool> {
    let alg = enveloping(algebra)?;
    let p = NcContext::new(&alg).eval(&expr::parse(text).map_err(err)?).map_err(err)?;
    Ok(non_commuting_generators(&alg, &p).map_err(err)?.is_empty())
}

/// Noncommutative pfaffian Pf F_I in U(o_N).
#[pyfunction]
fn pfaffian(indices: Vec<usize>, n: usize) -> PyResult<String> {
    let alg = NcAlgebra::new(liealg::build_kind(AlgebraKind::O, n, FormKind::Standard).map_err(err)?);
    let mut ctx = PfaffianContext::new(&alg).map_err(err)?;
    let set = IndexSet::new(indices, n).map_err(err)?;
    Ok(alg.render(&ctx.pfaffian(&set).map_err(err)?, Style::Text))
}

/// Generators of the finite W-algebra for a nilpotent of the given Jordan type.
#[pyfunction]
#[pyo3(signature = (algebra, partition, form="standard"))]
fn w_generators(algebra: &str, partition: &str, form: &str) -> PyResult<Vec<String>> {
    let wd = whittaker(algebra, partition, form)?;
    let gens = wd.generators().map_err(err)?;
    Ok(gens.iter().map(|g| wd.algebra().render(g, Style::Text)).collect())
}

/// Membership in W of an expression in the labels and the triple `e`, `f`, `h`.
#[pyfunction]
#[pyo3(signature = (algebra, partition, text, form="standard"))]
fn in_w(algebra: &str, partition: &str, text: &str, form: &str) -> PyResult<bool> {
    let wd = whittaker(algebra, partition, form)?;
    let alg = wd.algebra();
    let mut ctx = NcContext::new(alg);
    let t = wd.triple();
    for (name, x) in [("e", &t.e), ("f", &t.f), ("h", &t.h)] {
        ctx.named.insert(name.into(), alg.element(x));
    }
    let p = ctx.eval(&expr::parse(text).map_err(err)?).map_err(err)?;
    match wd.in_w(&p) {
        Ok(b) => Ok(b),
        Err(wkit_core::Error::NotInV) => Ok(false),
        Err(e) => Err(err(e)),
    }
}

/// Degrees of the matrix units under ad of a diagonal element of gl_n.
#[pyfunction]
fn degree_matrix(algebra: &str, diagonal: Vec<String>) -> PyResult<Vec<Vec<i64>>> {
    let spec = liealg::build_named(algebra, FormKind::Standard).map_err(err)?;
    let diag = diagonal.iter().map(|s| scalar::parse(s)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let g = sl2kit::grading_by_diagonal(&spec, &diag).map_err(err)?;
    sl2kit::degree_matrix(&spec, &g).ok_or_else(|| err("degree matrix is defined for gl_n"))
}

/// Irreducibility of the highest-weight module of a tableau.
#[pyfunction]
#[pyo3(signature = (shape, rows, order="bottom-to-top"))]
fn tableau_irreducible(shape: &str, rows: &str, order: &str) -> PyResult<bool> {
    let t = HighestWeightTableau::parse(shape, rows).map_err(err)?;
    Ok(t.is_irreducible(ColumnOrder::parse(order).map_err(err)?))
}

#[pymodule]
fn wkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(hierarchy, m)?)?;
    m.add_function(wrap_pyfunction!(root, m)?)?;
    m.add_function(wrap_pyfunction!(plus_part, m)?)?;
    m.add_function(wrap_pyfunction!(agd, m)?)?;
    m.add_function(wrap_pyfunction!(miura, m)?)?;
    m.add_function(wrap_pyfunction!(capelli, m)?)?;
    m.add_function(wrap_pyfunction!(is_central, m)?)?;
    m.add_function(wrap_pyfunction!(pfaffian, m)?)?;
    m.add_function(wrap_pyfunction!(w_generators, m)?)?;
    m.add_function(wrap_pyfunction!(in_w, m)?)?;
    m.add_function(wrap_pyfunction!(degree_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(tableau_irreducible, m)?)?;
    Ok(())
}
