//! Shared text and LaTeX rendering of linear combinations.

use num_traits::{One, Signed, Zero};

use crate::scalar::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Text,
    Latex,
}

impl Style {
    pub fn product_separator(self) -> &'static str {
        match self {
            Style::Text => "*",
            Style::Latex => " ",
        }
    }
}

/// Renders `sum c_i m_i`, where each monomial is already rendered in the
/// requested style and the empty string stands for 1.
pub fn join_terms(terms: &[(Scalar, String)], style: Style) -> String {
    let mut out = String::new();
    for (c, m) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coef = match style {
            Style::Text => scalar::to_string(&abs),
            Style::Latex => scalar::to_latex(&abs),
        };
        if m.is_empty() {
            out.push_str(&coef);
        } else if abs.is_one() {
            out.push_str(m);
        } else {
            out.push_str(&coef);
            out.push_str(style.product_separator());
            out.push_str(m);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `E[1,2]` becomes `E_{12}`, `F[10,2]` becomes `F_{10,2}`; bare names pass through.
pub fn label_to_latex(label: &str) -> String {
    let Some(open) = label.find('[') else {
        let stem = label.trim_end_matches(|c: char| c.is_ascii_digit());
        if stem.is_empty() || stem.len() == label.len() || !stem.chars().all(char::is_alphabetic) {
            return label.to_string();
        }
        return format!("{stem}_{{{}}}", &label[stem.len()..]);
    };
    let name = &label[..open];
    let inner = label[open + 1..].trim_end_matches(']');
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    let joined = if parts.iter().all(|p| p.len() == 1) {
        parts.concat()
    } else {
        parts.join(",")
    };
    format!("{name}_{{{joined}}}")
}

/// `x^e` in the given style, with `e = 1` left bare.
pub fn power(base: &str, e: u32, style: Style) -> String {
    match (e, style) {
        (1, _) => base.to_string(),
        (_, Style::Text) => format!("{base}^{e}"),
        (_, Style::Latex) => format!("{base}^{{{e}}}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn signs_and_units() {
        let terms = vec![
            (int(-1), "x".to_string()),
            (frac(3, 2), "y".to_string()),
            (int(-2), String::new()),
        ];
        assert_eq!(join_terms(&terms, Style::Text), "-x + 3/2*y - 2");
        assert_eq!(join_terms(&terms, Style::Latex), "-x + \\frac{3}{2} y - 2");
        assert_eq!(join_terms(&[], Style::Text), "0");
    }

    #[test]
    fn latex_labels() {
        assert_eq!(label_to_latex("E[1,2]"), "E_{12}");
        assert_eq!(label_to_latex("F[10,2]"), "F_{10,2}");
        assert_eq!(label_to_latex("h"), "h");
        assert_eq!(label_to_latex("x12"), "x_{12}");
        assert_eq!(label_to_latex("h2o"), "h2o");
    }
}
