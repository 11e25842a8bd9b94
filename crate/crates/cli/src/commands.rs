//! Subcommand bodies: each returns text, JSON and an exit code.

use riordan::almost::{self, ar_to_matrix};
use riordan::families::FamilySpec;
use riordan::transforms::hankel;
use riordan::{seq_to_json, series_to_jfraction, Rational, Series};
use serde_json::{json, Value};

use crate::checks;
use crate::expr::{self, eval_seq, parse_pair, parse_series, SeqValue};
use crate::oeis::OeisSource;

pub struct Output {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CmdError {
    #[error(transparent)]
    Expr(#[from] expr::ExprError),
    #[error(transparent)]
    Math(#[from] riordan::Error),
    #[error(transparent)]
    Oeis(#[from] crate::oeis::OeisError),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CmdError>;

fn order_for(n: usize) -> usize {
    n.max(2)
}

fn seq_text(v: &SeqValue) -> String {
    v.strings().join(", ")
}

fn seq_json(v: &SeqValue) -> Value {
    Value::Array(v.strings().into_iter().map(Value::String).collect())
}

pub fn show(pair: &str, n: usize) -> Result<Output> {
    let m = parse_pair(pair, order_for(n))?.to_matrix(n)?;
    Ok(Output::ok(m.render(), json!({"matrix": m.to_json()})))
}

pub fn mul(a: &str, b: &str, n: usize) -> Result<Output> {
    let (a, b) = (parse_pair(a, order_for(n))?, parse_pair(b, order_for(n))?);
    let m = a.rmul(&b)?.to_matrix(n)?;
    Ok(Output::ok(m.render(), json!({"matrix": m.to_json()})))
}

pub fn inv(pair: &str, n: usize) -> Result<Output> {
    let p = parse_pair(pair, order_for(n))?.inverse()?;
    let m = p.to_matrix(n)?;
    let text = format!("g = {}\nf = {}\n{}", p.g().render(), p.f().render(), m.render());
    Ok(Output::ok(text, json!({"g": p.g().to_json(), "f": p.f().to_json(), "matrix": m.to_json()})))
}

pub fn apply(pair: &str, series: &str, n: usize) -> Result<Output> {
    let order = n.max(1) - 1;
    let p = parse_pair(pair, order.max(1))?;
    let h = parse_series(series, order.max(1))?;
    let out = p.apply(&h)?.truncate(order);
    let by_matrix = p.to_matrix(n)?.mul_vec(&h.coeffs()[..n]);
    if by_matrix != out.coeffs() {
        return Err(CmdError::Usage("matrix and series routes disagree".into()));
    }
    Ok(Output::ok(seq_to_text(out.coeffs()), json!({"series": seq_to_json(out.coeffs())})))
}

fn seq_to_text(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn involution(pair: &str, n: usize) -> Result<Output> {
    let p = parse_pair(pair, order_for(n))?;
    let r = p.involution_check(n)?;
    let witness = r.witness.as_ref().map(|(row, col, got, want)| {
        json!({"row": row, "col": col, "got": got.to_string(), "expected": want.to_string()})
    });
    let json = json!({
        "pass": r.holds, "n": r.size, "series_holds": r.series_holds, "matrix_holds": r.matrix_holds, "witness": witness,
    });
    if r.holds {
        return Ok(Output::ok(format!("involution: PASS (n={})", r.size), json));
    }
    let text = match &r.witness {
        Some((row, col, got, want)) => {
            format!("involution: FAIL (n={}): M^2 at ({row}, {col}) is {got}, expected {want}", r.size)
        }
        None => format!("involution: FAIL (n={}): pair identity fails beyond the matrix", r.size),
    };
    Ok(Output { text, json, code: 1 })
}

pub fn moments(family: &str, count: usize, y: Option<&str>) -> Result<Output> {
    let spec: FamilySpec = family.parse()?;
    let p = spec
        .parameterized(count.max(2))?
        .ok_or_else(|| CmdError::Usage(format!("{family} has no parameterized polynomial array")))?;
    let mu = p.moment_polys(count)?;
    let values: SeqValue = match y {
        Some(y) => {
            let y: Rational = y.parse().map_err(|_| CmdError::Usage(format!("bad value for y: {y}")))?;
            SeqValue::Rational(mu.iter().map(|m| m.eval(&y)).collect())
        }
        None => SeqValue::Poly(mu),
    };
    let text = values.strings().iter().enumerate().map(|(i, s)| format!("mu_{i} = {s}\n")).collect::<String>();
    Ok(Output::ok(text, json!({"moments": seq_json(&values)})))
}

pub fn hankel_cmd(seq: &str, n: usize, src: &OeisSource) -> Result<Output> {
    let v = eval_seq(seq, 2 * n + 1, src)?;
    let h = match v {
        SeqValue::Rational(v) => SeqValue::Rational(hankel(&v, n)?),
        SeqValue::Poly(v) => SeqValue::Poly(hankel(&v, n)?),
    };
    Ok(Output::ok(seq_text(&h), json!({"hankel": seq_json(&h)})))
}

pub fn jfrac(seq: &str, depth: usize, src: &OeisSource) -> Result<Output> {
    let v = eval_seq(seq, 2 * depth + 1, src)?;
    let (json, text) = match v {
        SeqValue::Rational(v) => {
            let jf = series_to_jfraction(&Series::new(v, 2 * depth), depth)?;
            let jf = jf.detect_tail().unwrap_or(jf);
            (jf.to_json(), jf_text(jf.mu0(), jf.prefix_alphas(), jf.prefix_betas(), jf.tail()))
        }
        SeqValue::Poly(v) => {
            let jf = series_to_jfraction(&Series::new(v, 2 * depth), depth)?;
            let jf = jf.detect_tail().unwrap_or(jf);
            (jf.to_json(), jf_text(jf.mu0(), jf.prefix_alphas(), jf.prefix_betas(), jf.tail()))
        }
    };
    Ok(Output::ok(text, json))
}

fn jf_text<C: std::fmt::Display>(mu0: &C, alphas: &[C], betas: &[C], tail: Option<&(C, C)>) -> String {
    let list = |v: &[C]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    let mut s = format!("mu0 = {mu0}\nalphas = [{}]\nbetas = [{}]\n", list(alphas), list(betas));
    if let Some((a, b)) = tail {
        s.push_str(&format!("tail: alpha = {a}, beta = {b}\n"));
    }
    s
}

pub fn prodmat(pair: &str, n: usize, by_matrices: bool) -> Result<Output> {
    let p = parse_pair(pair, 2 * n + 2)?;
    let m = if by_matrices { p.production_matrix_by_matrices(n)? } else { p.production_matrix(n)? };
    let (a, z) = p.az_sequences()?;
    let text = format!("{}\nA = {}\nZ = {}\n", m.render(), a.truncate(n).render(), z.truncate(n).render());
    Ok(Output::ok(text, json!({"matrix": m.to_json(), "A": a.truncate(n).to_json(), "Z": z.truncate(n).to_json()})))
}

pub fn family(name: &str, n: usize) -> Result<Output> {
    let order = n + 2;
    match name {
        "chebyshev-t" => {
            let m = ar_to_matrix(&almost::chebyshev_t_array(order)?, n)?;
            return Ok(Output::ok(m.render(), json!({"matrix": m.to_json()})));
        }
        "appendix" => {
            let m = ar_to_matrix(&almost::appendix_array(order)?, n)?;
            return Ok(Output::ok(m.render(), json!({"matrix": m.to_json()})));
        }
        _ => {}
    }
    let spec: FamilySpec = name.parse()?;
    let m = spec.pair(order)?.to_matrix(n)?;
    let mut text = m.render();
    let mut json = json!({"family": spec.to_string(), "matrix": m.to_json()});
    if let Some(src) = spec.parameterized(order)? {
        let s = src.to_matrix(n)?;
        text = format!("{text}\nparameterized array:\n{}", s.render());
        json["parameterized"] = s.to_json();
    }
    Ok(Output::ok(text, json))
}

pub fn oeis_check(id: &str, against: &str, terms: usize, skip: usize, src: &OeisSource) -> Result<Output> {
    match checks::oeis_check(src, id, against, terms, skip) {
        Ok(k) => Ok(Output::ok(format!("oeis-check {id}: PASS ({k} terms)"), json!({"pass": true, "anumber": id, "terms": k}))),
        Err(checks::Fail(msg)) => {
            let missing = src.load(id).err().map(CmdError::from);
            if let Some(e) = missing {
                return Err(e);
            }
            if let Err(e) = eval_seq(against, terms, src) {
                return Err(e.into());
            }
            Ok(Output {
                text: format!("oeis-check {id}: FAIL: {msg}"),
                json: json!({"pass": false, "anumber": id, "witness": msg}),
                code: 1,
            })
        }
    }
}

pub fn verify_paper(criteria: &[u8], src: OeisSource) -> Result<Output> {
    if let Some(bad) = criteria.iter().find(|&&c| !(1..=10).contains(&c)) {
        return Err(CmdError::Usage(format!("no criterion {bad}")));
    }
    let results = checks::run(src, criteria);
    let code = if results.iter().all(|r| r.pass) { 0 } else { 1 };
    Ok(Output { text: checks::render(&results), json: checks::to_json(&results), code })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn src() -> OeisSource {
        OeisSource::fixtures_only(crate::oeis::default_fixture_dir())
    }

    #[test]
    fn show_identity() {
        let o = show("(1,x)", 3).unwrap();
        assert_eq!(o.text.lines().count(), 3);
        assert_eq!(o.json["matrix"]["rows"][2][2], "1");
        assert_eq!(o.json["matrix"]["rows"][2][0], "0");
    }

    #[test]
    fn involution_pass_and_fail() {
        let o = involution("general:3,2", 16).unwrap();
        assert_eq!(o.text, "involution: PASS (n=16)");
        assert_eq!(o.code, 0);
        let o = involution("(1/(1-x), x/(1-x))", 8).unwrap();
        assert_eq!(o.code, 1);
        assert!(o.text.starts_with("involution: FAIL (n=8): M^2 at (1, 0)"));
    }

    #[test]
    fn oeis_pass_fail_missing() {
        assert_eq!(oeis_check("A081696", "diagsums (c, x*c^3)", 10, 0, &src()).unwrap().code, 0);
        let o = oeis_check("A081696", "series c", 10, 0, &src()).unwrap();
        assert_eq!(o.code, 1);
        assert!(o.text.contains("index 2"));
        assert!(oeis_check("A999999", "series c", 10, 0, &src()).is_err());
        assert!(oeis_check("A000108", "bogus", 10, 0, &src()).is_err());
    }

    #[test]
    fn jfrac_detects_tail() {
        let o = jfrac("series c^2", 5, &src()).unwrap();
        assert_eq!(o.json["tail"]["alpha"], "2");
        assert_eq!(o.json["tail"]["beta"], "1");
        let o = jfrac("moments main-theorem:2", 5, &src()).unwrap();
        assert_eq!(o.json["alphas"][0], "2 - u");
        assert_eq!(o.json["betas"][0], "1 - u");
    }

    #[test]
    fn apply_and_mul() {
        let o = apply("(1/(1-x), x/(1-x))", "1/(1-x)", 5).unwrap();
        assert_eq!(o.text, "1, 2, 4, 8, 16");
        let o = mul("(c, -x*c^3)", "(c, -x*c^3)", 6).unwrap();
        assert_eq!(o.text, show("(1, x)", 6).unwrap().text);
        let o = inv("(1/(1-x), x/(1-x))", 4).unwrap();
        assert_eq!(o.json["matrix"]["rows"][3][1], "3");
    }

    #[test]
    fn moments_and_families() {
        let o = moments("k-theorem:3,3", 6, Some("1")).unwrap();
        assert_eq!(o.json["moments"], json!(["1", "2", "5", "15", "53", "215"]));
        assert!(moments("rna", 4, None).is_err());
        let o = family("general:3,2", 4).unwrap();
        assert_eq!(o.json["matrix"]["rows"][3][0], "86");
        assert!(o.json.get("parameterized").is_some());
        assert_eq!(family("chebyshev-t", 5).unwrap().json["matrix"]["rows"][4][4], "8");
        assert!(family("nope", 4).is_err());
    }

    #[test]
    fn prodmat_routes() {
        let a = prodmat("(c^2, x*c^2)", 5, false).unwrap();
        let b = prodmat("(c^2, x*c^2)", 5, true).unwrap();
        assert_eq!(a.json["matrix"], b.json["matrix"]);
        assert_eq!(a.json["matrix"]["rows"][0], json!(["2", "1", "0", "0", "0"]));
    }

    #[test]
    fn hankel_command() {
        let o = hankel_cmd("series c", 4, &src()).unwrap();
        assert_eq!(o.text, "1, 1, 1, 1, 1");
    }

    #[test]
    fn verify_rejects_bad_criterion() {
        assert!(matches!(verify_paper(&[11], src()), Err(CmdError::Usage(_))));
    }
}
