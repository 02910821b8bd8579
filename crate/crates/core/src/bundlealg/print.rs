//! Canonical grammar printer and LaTeX rendering.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::expr::BundleExpr;
use super::{FormalBundle, IrrepLabel};

enum Shape {
    Line,
    Sym(i64),
    Ext(usize),
    General(Vec<i64>),
}

fn shape(label: &IrrepLabel) -> Shape {
    let lambda = label.lambda();
    if label.is_line() {
        return Shape::Line;
    }
    if lambda[1..].iter().all(|a| *a == 0) {
        return Shape::Sym(lambda[0]);
    }
    if lambda.iter().all(|a| *a == 0 || *a == 1) {
        return Shape::Ext(lambda.iter().filter(|a| **a == 1).count());
    }
    Shape::General(label.gamma_params())
}

fn join_params(p: &[i64]) -> String {
    p.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
}

/// Canonical grammar text for one label, e.g. `S^3(Omega1) (x) L^-4`.
pub fn label_expr(label: &IrrepLabel) -> String {
    let e = label.l_twist();
    let body = match shape(label) {
        Shape::Line => return if e == 0 { "O".into() } else { format!("L^{e}") },
        Shape::Sym(1) => "Omega1".to_string(),
        Shape::Sym(k) => format!("S^{k}(Omega1)"),
        Shape::Ext(k) => format!("Omega{k}"),
        Shape::General(p) => format!("Gamma({})(Omega1)", join_params(&p)),
    };
    if e == 0 {
        body
    } else {
        format!("{body} (x) L^{e}")
    }
}

const OMEGA1: &str = r"\Omega^1_{\overline X}(\log D)";

/// LaTeX in the usual notation, e.g. `S^{3}\Omega^1_{\overline X}(\log D) \otimes L^{-4}`.
pub fn label_latex(label: &IrrepLabel) -> String {
    let e = label.l_twist();
    let body = match shape(label) {
        Shape::Line => {
            return if e == 0 { r"\mathcal O_{\overline X}".into() } else { format!("L^{{{e}}}") };
        }
        Shape::Sym(1) => OMEGA1.to_string(),
        Shape::Sym(k) => format!("S^{{{k}}}{OMEGA1}"),
        Shape::Ext(k) => format!(r"\Omega^{{{k}}}_{{\overline X}}(\log D)"),
        Shape::General(p) => format!(r"\Gamma_{{{}}}({OMEGA1})", join_params(&p)),
    };
    if e == 0 {
        body
    } else {
        format!(r"{body} \otimes L^{{{e}}}")
    }
}

pub(crate) fn bundle_expr(b: &FormalBundle) -> String {
    if b.is_empty() {
        return "U(0)".into();
    }
    let mut parts = Vec::new();
    for (label, m) in b.iter() {
        if m.is_one() {
            parts.push(label_expr(label));
            continue;
        }
        match m.to_u64() {
            Some(r) if label.is_trivial() => parts.push(format!("U({r})")),
            Some(r) => parts.push(format!("U({r}) (x) {}", label_expr(label))),
            None => {
                let mut c = BigUint::from(0u32);
                while &c < m {
                    parts.push(label_expr(label));
                    c += 1u32;
                }
            }
        }
    }
    parts.join(" (+) ")
}

pub(crate) fn bundle_latex(b: &FormalBundle) -> String {
    if b.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = b
        .iter()
        .map(|(label, m)| {
            let body = label_latex(label);
            if m.is_one() {
                body
            } else if label.is_line() {
                format!("{m}{body}")
            } else {
                format!(r"{m}\left({body}\right)")
            }
        })
        .collect();
    parts.join(r" \oplus ")
}

fn prec(e: &BundleExpr) -> u8 {
    match e {
        BundleExpr::Sum(..) => 0,
        BundleExpr::Tensor(..) => 1,
        _ => 2,
    }
}

fn wrap(e: &BundleExpr, min: u8) -> String {
    let s = expr_to_string(e);
    if prec(e) < min {
        format!("({s})")
    } else {
        s
    }
}

/// Prints an expression in the grammar accepted by the parser.
pub fn expr_to_string(e: &BundleExpr) -> String {
    match e {
        BundleExpr::Omega(k) => format!("Omega{k}"),
        BundleExpr::LPow(k) => format!("L^{k}"),
        BundleExpr::Trivial => "O".into(),
        BundleExpr::E1 => "E1".into(),
        BundleExpr::E2 => "E2".into(),
        BundleExpr::V => "V".into(),
        BundleExpr::Unitary(r) => format!("U({r})"),
        BundleExpr::Sum(a, b) => format!("{} (+) {}", wrap(a, 0), wrap(b, 1)),
        BundleExpr::Tensor(a, b) => format!("{} (x) {}", wrap(a, 1), wrap(b, 2)),
        BundleExpr::Sym(k, a) => format!("S^{k}({})", expr_to_string(a)),
        BundleExpr::Wedge(k, a) => format!("Wedge^{k}({})", expr_to_string(a)),
        BundleExpr::Dual(a) => format!("Dual({})", expr_to_string(a)),
        BundleExpr::End0(a) => format!("End0({})", expr_to_string(a)),
        BundleExpr::Det(a) => format!("det({})", expr_to_string(a)),
        BundleExpr::Primitive(a) => format!("pr({})", expr_to_string(a)),
        BundleExpr::Gamma(p, a) => {
            let ps: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            format!("Gamma({})({})", ps.join(","), expr_to_string(a))
        }
    }
}
