//! Expression files for `eval`: a JSON object with exactly one of `word`,
//! `element`, `summand` or `generator`, and usually a `point`.
//!
//! ```json
//! {"word": "0,0", "point": [1, 2]}
//! {"element": "S_2: z1 + z2", "point": ["1/2", 3]}
//! {"summand": 1, "point": [1, 2, 3, 6]}
//! {"generator": "S_2: z1*z2", "point": [1, 2, 3]}
//! ```
//!
//! Summand indices are 1-based. A `generator` gives the numerator of `F`
//! (arity one less than the point) and evaluates `(z − λ) * F`. Without a
//! point, `word` and `element` print the symbolic element.

use serde::Deserialize;

use shufflealg::arith::{parse_rational, EvalContext, Kernel, ParamRat, Rational};
use shufflealg::locus::master_summand;
use shufflealg::rewrite::ShuffleWord;
use shufflealg::shuffle::{eval_element, generator_at, Normalization, Point, SElement};
use shufflealg::Error;

use crate::report::Failure;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Spec {
    word: Option<String>,
    element: Option<String>,
    summand: Option<usize>,
    generator: Option<String>,
    point: Option<Vec<serde_json::Value>>,
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain(e: Error) -> Failure {
    match e {
        Error::Parse(_) => Failure::Usage(e.to_string()),
        other => Failure::Eval(other.to_string()),
    }
}

fn coordinate(v: &serde_json::Value) -> Result<Rational, Failure> {
    match v {
        serde_json::Value::String(s) => parse_rational(s).map_err(usage),
        serde_json::Value::Number(n) => parse_rational(&n.to_string()).map_err(usage),
        other => Err(usage(format!("coordinate must be a number or string, found {other}"))),
    }
}

fn point(spec: &Spec) -> Result<Option<Point>, Failure> {
    let Some(raw) = &spec.point else { return Ok(None) };
    let coords = raw.iter().map(coordinate).collect::<Result<Vec<_>, _>>()?;
    let p = Point::new(coords).map_err(domain)?;
    p.check_distinct().map_err(domain)?;
    Ok(Some(p))
}

fn word_element(w: &ShuffleWord, norm: Normalization) -> Result<SElement<ParamRat>, Failure> {
    let kernel = Kernel::symbolic();
    let mut acc = SElement::unit();
    for &i in w.letters() {
        acc = acc.product(&SElement::power(i), &kernel, norm).map_err(domain)?;
    }
    Ok(acc)
}

fn element_value(e: &SElement<ParamRat>, p: Option<Point>, ctx: &EvalContext) -> Result<String, Failure> {
    match p {
        None => Ok(e.to_string()),
        Some(p) => Ok(eval_element(e, &p, ctx).map_err(domain)?.to_string()),
    }
}

pub fn run(source: &str, ctx: &EvalContext, norm: Normalization) -> Result<String, Failure> {
    let spec: Spec = serde_json::from_str(source).map_err(|e| usage(format!("expression file: {e}")))?;
    let given = [spec.word.is_some(), spec.element.is_some(), spec.summand.is_some(), spec.generator.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(usage("give exactly one of word, element, summand, generator"));
    }
    let p = point(&spec)?;
    if let Some(w) = &spec.word {
        let w: ShuffleWord = w.parse().map_err(domain)?;
        return element_value(&word_element(&w, norm)?, p, ctx);
    }
    if let Some(e) = &spec.element {
        return element_value(&SElement::parse(e).map_err(domain)?, p, ctx);
    }
    let p = p.ok_or_else(|| usage("summand and generator need a point"))?;
    if let Some(c) = spec.summand {
        if c == 0 || c > p.len() {
            return Err(usage(format!("summand index must be in 1..={}", p.len())));
        }
        return Ok(master_summand(c - 1, &p, ctx).map_err(domain)?.to_string());
    }
    let f = SElement::parse(spec.generator.as_deref().expect("one field is set")).map_err(domain)?;
    let f = f.specialize(ctx).map_err(domain)?;
    Ok(generator_at(f.numerator(), p.coords(), ctx).map_err(domain)?.to_string())
}
