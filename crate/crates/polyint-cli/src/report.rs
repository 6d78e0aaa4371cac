//! Canonical report serialization. Every float is printed with
//! `{:.16e}` (17 significant digits), so parsing a line and re-emitting
//! it through the same writer reproduces the bytes exactly.

use polyint_core::{ComplexScalar, EvalBreakdown, IntegralParams};

/// Column order shared by the JSON and CSV verification streams.
pub const VERIFY_FIELDS: [&str; 18] = [
    "sign", "a", "b", "p", "t", "q", "A", "B", "C", "total_re", "total_im", "oracle_re",
    "oracle_im", "abs_diff", "rel_diff", "tol", "pass", "runtime_ms",
];

/// Column order for single evaluations (no oracle columns).
pub const EVAL_FIELDS: [&str; 12] = [
    "sign", "a", "b", "p", "t", "q", "A", "B", "C", "total_re", "total_im", "tol",
];

/// One verified grid point.
pub struct PointReport {
    pub params: IntegralParams,
    pub breakdown: EvalBreakdown,
    pub oracle: ComplexScalar,
    pub abs_diff: f64,
    pub rel_diff: f64,
    pub tol: f64,
    pub pass: bool,
    pub runtime_ms: f64,
}

pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn join_csv(values: &[String]) -> String {
    values.join(",")
}

pub fn csv_header(fields: &[&str]) -> String {
    fields.join(",")
}

/// The shared scalar columns of a report row, in canonical order.
fn eval_values(params: IntegralParams, bd: &EvalBreakdown, tol: f64) -> Vec<(String, String)> {
    vec![
        ("sign".into(), params.sign.to_string()),
        ("a".into(), fmt_float(params.a)),
        ("b".into(), fmt_float(params.b)),
        ("p".into(), params.p.to_string()),
        ("t".into(), params.t.to_string()),
        ("q".into(), fmt_float(params.q())),
        ("A".into(), fmt_float(bd.a_part)),
        ("B".into(), fmt_float(bd.b_part)),
        ("C".into(), fmt_float(bd.c_part)),
        ("total_re".into(), fmt_float(bd.total.re)),
        ("total_im".into(), fmt_float(bd.total.im)),
        ("tol".into(), fmt_float(tol)),
    ]
}

fn verify_values(r: &PointReport) -> Vec<(String, String)> {
    let mut vals = eval_values(r.params, &r.breakdown, r.tol);
    let tol = vals.pop().expect("tol column present");
    vals.push(("oracle_re".into(), fmt_float(r.oracle.re)));
    vals.push(("oracle_im".into(), fmt_float(r.oracle.im)));
    vals.push(("abs_diff".into(), fmt_float(r.abs_diff)));
    vals.push(("rel_diff".into(), fmt_float(r.rel_diff)));
    vals.push(tol);
    vals.push(("pass".into(), if r.pass { "true".into() } else { "false".into() }));
    vals.push(("runtime_ms".into(), fmt_float(r.runtime_ms)));
    vals
}

/// Flat JSON object; only the sign column is a string, pass is a bool.
fn json_object(values: &[(String, String)]) -> String {
    let mut out = String::from("{");
    for (i, (key, value)) in values.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('"');
        out.push_str(key);
        out.push_str("\":");
        if key == "sign" {
            out.push('"');
            out.push_str(value);
            out.push('"');
        } else {
            out.push_str(value);
        }
    }
    out.push('}');
    out
}

pub fn verify_json_line(r: &PointReport) -> String {
    json_object(&verify_values(r))
}

pub fn verify_csv_line(r: &PointReport) -> String {
    join_csv(&verify_values(r).into_iter().map(|(_, v)| v).collect::<Vec<_>>())
}

pub fn eval_json_line(params: IntegralParams, bd: &EvalBreakdown, tol: f64) -> String {
    json_object(&eval_values(params, bd, tol))
}

pub fn eval_csv_line(params: IntegralParams, bd: &EvalBreakdown, tol: f64) -> String {
    join_csv(&eval_values(params, bd, tol).into_iter().map(|(_, v)| v).collect::<Vec<_>>())
}

pub fn eval_text(params: IntegralParams, bd: &EvalBreakdown, tol: f64) -> String {
    format!(
        "I({sign}, a={a}, b={b}, p={p}, t={t})   q = {q}\n\
         parity(p+t) = {parity}\n\
         A       = {a_part}\n\
         B       = {b_part}\n\
         C       = {c_part}\n\
         b_scale = {b_scale}\n\
         total   = {tre} + {tim} i\n\
         tol     = {tol:e}",
        sign = params.sign,
        a = params.a,
        b = params.b,
        p = params.p,
        t = params.t,
        q = params.q(),
        parity = bd.parity,
        a_part = fmt_float(bd.a_part),
        b_part = fmt_float(bd.b_part),
        c_part = fmt_float(bd.c_part),
        b_scale = fmt_float(bd.b_scale),
        tre = fmt_float(bd.total.re),
        tim = fmt_float(bd.total.im),
    )
}
