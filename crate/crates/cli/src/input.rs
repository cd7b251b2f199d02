//! Parsers for the textual and JSON arguments.

use crate::InputError;
use anyhow::{Context, Result};
use circle_hall::intervals_ktheory::KClass;
use circle_hall::quiver_hall::{HallElement, TorsionObject};
use circle_hall::rational::parse_rational;
use circle_hall::{Arc, Rational, StepFunction};

fn input_error(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

/// Whether the argument is a JSON document rather than the short textual form.
pub fn is_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('{') | Some('['))
}

pub fn require_n(n: Option<u64>) -> Result<u64> {
    match n {
        Some(0) => Err(input_error("--n must be positive")),
        Some(n) => Ok(n),
        None => Err(input_error("this command needs --n")),
    }
}

/// Comma-separated integers, e.g. `"1,-1,2"`.
pub fn integers(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| input_error(format!("expected an integer, got '{t}'"))))
        .collect()
}

/// `"a,b+c,d"` as a list of arcs; each part also accepts `"[a,b)"`.
pub fn arcs(text: &str) -> Result<Vec<Arc>> {
    text.split('+').map(|part| Arc::parse(part.trim()).map_err(Into::into)).collect()
}

/// A Hall element given as JSON, as `"1"`, or as a '+'-separated list of arcs
/// standing for the basis vector of their direct sum.
pub fn hall_element(text: &str, n: Option<u64>, q: u64) -> Result<HallElement> {
    let element = if is_json(text) {
        serde_json::from_str::<HallElement>(text).context("reading a Hall element")?
    } else if text.trim() == "1" {
        HallElement::one(require_n(n)?, q)
    } else {
        let n = require_n(n)?;
        HallElement::basis(&TorsionObject::from_arcs(n, &arcs(text)?)?, q)
    };
    if element.q() != q {
        return Err(input_error(format!("element is over q = {} but --q is {q}", element.q())));
    }
    Ok(element)
}

pub fn rational(text: &str) -> Result<Rational> {
    Ok(parse_rational(text.trim())?)
}

/// `"rank=r,dim=d"` where `d` is an integer constant or the cell values
/// `"d_1:...:d_m"` at denominator `m`; JSON of a class is also accepted.
pub fn kclass(text: &str) -> Result<KClass> {
    if is_json(text) {
        return serde_json::from_str(text).context("reading a K-class");
    }
    let mut rank = None;
    let mut dim = None;
    for part in text.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| input_error(format!("expected key=value in '{part}'")))?;
        match key.trim() {
            "rank" => {
                rank = Some(value.trim().parse::<i64>().map_err(|_| input_error(format!("bad rank '{value}'")))?)
            }
            "dim" => {
                let cells: Vec<i64> = value
                    .split(':')
                    .map(|t| t.trim().parse::<i64>().map_err(|_| input_error(format!("bad dimension '{value}'"))))
                    .collect::<Result<_>>()?;
                dim = Some(StepFunction::new(cells.len() as u64, cells)?);
            }
            other => return Err(input_error(format!("unknown key '{other}' in a K-class"))),
        }
    }
    Ok(KClass::new(rank.unwrap_or(0), dim.unwrap_or_else(StepFunction::zero)))
}
