//! One handler per subcommand; each returns canonical pretty-printed JSON.

use crate::input::{self, is_json, require_n};
use crate::{Command, InputError, RunConfig, SuiteFailed};
use anyhow::{Context, Result};
use circle_hall::circle_quantum::{
    apply_expr, embed_generators, instances_for_pair, parse_word, relation_instances, straighten, verify_instance,
    DoubleElement, EmbeddingKind, GeneratorExpr, RelationFamily, RelationInstance, RepVariant, RepVector,
};
use circle_hall::coefficients::check_prime_power;
use circle_hall::intervals_ktheory::stack_invariants;
use circle_hall::mirror::{compare_with_quiver, dtype_hom_ext, object_hom_ext, DtypeCase, MirrorObject};
use circle_hall::quiver_hall::{default_dim_bound, hubery_element, HallContext, HallElement, HuberyKind, TensorElement};
use circle_hall::rational::format_rational;
use circle_hall::shuffle::{parse_rank_one, zeta_series, LabelMode, SeriesKind, ShuffleElement, Varpi, ZetaData};
use circle_hall::suite::run_suite;
use circle_hall::Arc;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

/// Output of a handler; `failure` is set when the acceptance suite has a failing row.
pub struct Outcome {
    pub text: String,
    pub failure: Option<SuiteFailed>,
}

fn input_error(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

fn render<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

impl RunConfig {
    fn validated(&self) -> Result<&Self> {
        check_prime_power(self.q)?;
        if self.bound == Some(0) {
            return Err(input_error("--bound must be positive"));
        }
        if self.n == Some(0) {
            return Err(input_error("--n must be positive"));
        }
        Ok(self)
    }

    fn context(&self) -> Result<HallContext> {
        Ok(HallContext::with_bound(self.q, self.bound.unwrap_or_else(|| default_dim_bound(self.q)))?)
    }

    fn zeta_data(&self, numerator: &Option<String>, trace: &Option<i64>) -> Result<ZetaData> {
        let numerator = match (numerator, trace) {
            (Some(text), _) => input::integers(text)?,
            (None, Some(a)) => vec![1, -a, self.q as i64],
            (None, None) if self.g == 0 => vec![1],
            (None, None) => return Err(input_error("genus g > 0 needs --numerator or --trace")),
        };
        Ok(ZetaData::new(self.g, self.q, numerator)?)
    }
}

pub fn dispatch(command: &Command, config: &RunConfig) -> Result<Outcome> {
    let config = config.validated()?;
    let q = config.q;
    let text = match command {
        Command::HallProduct { left, right } => {
            let ctx = config.context()?;
            let x = input::hall_element(left, config.n, q)?;
            let y = input::hall_element(right, config.n, q)?;
            render(&ctx.product(&x, &y)?)?
        }
        Command::Coproduct { element, alpha, beta } => {
            let ctx = config.context()?;
            let x = input::hall_element(element, config.n, q)?;
            let out = match (alpha, beta) {
                (Some(a), Some(b)) => ctx.coproduct_component(&x, &input::integers(a)?, &input::integers(b)?)?,
                _ => ctx.coproduct(&x)?,
            };
            render(&out)?
        }
        Command::Pairing { left, right } => render(&json!({ "pairing": pairing(config, left, right)? }))?,
        Command::Verify { family, j1, j2, sample } => verify(config, family, j1.as_deref(), j2.as_deref(), *sample)?,
        Command::Straighten { word } => {
            let n = require_n(config.n)?;
            let out = if is_json(word) {
                let x: DoubleElement = serde_json::from_str(word).context("reading a normal-form element")?;
                if x.n() != n || x.q() != q {
                    return Err(input_error("element does not match --n and --q"));
                }
                x
            } else {
                straighten(&GeneratorExpr::word(q, parse_word(word)?), n)?
            };
            render(&out)?
        }
        Command::Hubery { kind, r } => {
            let kind = match kind.as_str() {
                "c" => HuberyKind::C,
                "z" => HuberyKind::Z,
                other => return Err(input_error(format!("unknown Hubery kind '{other}', expected c or z"))),
            };
            let ctx = config.context()?;
            render(&hubery_element(&ctx, kind, *r, require_n(config.n)?)?)?
        }
        Command::Central { element, dims } => {
            let ctx = config.context()?;
            let x = input::hall_element(element, config.n, q)?;
            let witness = ctx.is_central(&x, &input::integers(dims)?)?;
            render(&json!({ "central": witness.is_none(), "witness": witness }))?
        }
        Command::Shuffle { left, right, numerator, trace } => {
            let zd = config.zeta_data(numerator, trace)?;
            let mode = match config.n {
                Some(n) => LabelMode::Cyclic { n },
                None => LabelMode::Rational,
            };
            let read = |text: &str| -> Result<ShuffleElement> {
                if is_json(text) {
                    serde_json::from_str(text).context("reading a shuffle element")
                } else {
                    Ok(parse_rank_one(q, mode, text)?)
                }
            };
            let varpi = Varpi::for_curve(&zd, config.order)?;
            render(&varpi.shuffle_product(&read(left)?, &read(right)?)?)?
        }
        Command::Zeta { numerator, trace, series } => {
            let zd = config.zeta_data(numerator, trace)?;
            let kind = SeriesKind::parse(series)?;
            let s = zeta_series(&zd, kind, config.order as usize)?;
            render(&json!({
                "g": zd.genus(),
                "q": zd.q(),
                "numerator": zd.numerator(),
                "series": kind,
                "order": config.order,
                "coefficients": s.coefficients(),
            }))?
        }
        Command::MirrorCompare => {
            let ctx = config.context()?;
            render(&compare_with_quiver(&ctx, require_n(config.n)?)?)?
        }
        Command::MirrorHomext { a, b } => {
            let (source, target) = (MirrorObject::parse(a)?, MirrorObject::parse(b)?);
            let dims = object_hom_ext(&source, &target);
            render(&json!({
                "source": source.to_string(),
                "target": target.to_string(),
                "hom": dims.hom,
                "ext1": dims.ext1,
                "euler": dims.euler(),
            }))?
        }
        Command::Dtype { case_name, a, b } => {
            let case: DtypeCase = case_name.parse()?;
            let a = a.as_deref().map(input::rational).transpose()?;
            let b = b.as_deref().map(input::rational).transpose()?;
            render(&json!({ "case": case.name(), "homs": dtype_hom_ext(case, a.as_ref(), b.as_ref())? }))?
        }
        Command::Fundrep { variant, word, y, vector } => {
            let variant = match variant.as_str() {
                "circle" => RepVariant::Circle,
                "twisted-circle" => RepVariant::TwistedCircle,
                "heisenberg" => RepVariant::Heisenberg,
                "affine" => RepVariant::Affine(require_n(config.n)?),
                "twisted-affine" => RepVariant::TwistedAffine(require_n(config.n)?),
                other => return Err(input_error(format!("unknown representation '{other}'"))),
            };
            let v = match (y, vector) {
                (Some(y), _) => RepVector::basis(q, input::rational(y)?),
                (None, Some(text)) => RepVector::from_json(q, &serde_json::from_str::<Value>(text)?)?,
                (None, None) => return Err(input_error("fundrep needs --y or --vector")),
            };
            render(&apply_expr(variant, &GeneratorExpr::word(q, parse_word(word)?), &v)?)?
        }
        Command::Embed { kind, factor } => {
            let kind = match kind.as_str() {
                "subdivision" => EmbeddingKind::Subdivision { factor: *factor },
                "plus-infinity" => EmbeddingKind::PlusInfinity,
                "two-sided" => EmbeddingKind::TwoSided,
                "add-one-vertex" => EmbeddingKind::AddOneVertex,
                "add-two-vertices" => EmbeddingKind::AddTwoVertices,
                other => return Err(input_error(format!("unknown embedding '{other}'"))),
            };
            render(&embed_generators(kind, require_n(config.n)?)?)?
        }
        Command::Invariants { class } => {
            let k = input::kclass(class)?;
            let inv = stack_invariants(require_n(config.n)?, config.g as u64, &k)?;
            render(&json!({
                "deg_n": format_rational(&inv.deg_n),
                "slope": inv.slope.as_ref().map(format_rational),
                "chi_n": format_rational(&inv.chi_n),
                "virtual_genus": format_rational(&inv.virtual_genus),
            }))?
        }
        Command::Suite { table } => {
            let report = run_suite(q)?;
            for c in &report.criteria {
                for t in &c.timings {
                    eprintln!("criterion {}: {} took {:.2} s", c.id, t.label, t.elapsed.as_secs_f64());
                }
            }
            let text = if *table { format!("{}\n", report.table()) } else { format!("{}\n", report.to_json()) };
            let failing: Vec<u32> = report.criteria.iter().filter(|c| !c.passed).map(|c| c.id).collect();
            let failure =
                (!failing.is_empty()).then(|| SuiteFailed(format!("acceptance criteria {failing:?} failed")));
            return Ok(Outcome { text, failure });
        }
    };
    Ok(Outcome { text, failure: None })
}

fn pairing(config: &RunConfig, left: &str, right: &str) -> Result<circle_hall::Scalar> {
    let ctx = config.context()?;
    let tensor = |text: &str| -> Option<TensorElement> {
        let value: Value = serde_json::from_str(text).ok()?;
        let first = value.get("terms")?.as_array()?.first()?;
        first.get("left")?;
        serde_json::from_value(value).ok()
    };
    if is_json(left) && is_json(right) {
        if let (Some(x), Some(y)) = (tensor(left), tensor(right)) {
            return Ok(ctx.tensor_pairing(&x, &y)?);
        }
    }
    let x: HallElement = input::hall_element(left, config.n, config.q)?;
    let y: HallElement = input::hall_element(right, config.n, config.q)?;
    Ok(ctx.green_pairing(&x, &y)?)
}

fn verify(config: &RunConfig, family: &str, j1: Option<&str>, j2: Option<&str>, sample: Option<usize>) -> Result<String> {
    let family: RelationFamily = family.parse()?;
    let n = require_n(config.n)?;
    let q = config.q;
    let mut instances: Vec<RelationInstance> = match (j1, j2) {
        (Some(a), Some(b)) => instances_for_pair(family, &Arc::parse(a)?, &Arc::parse(b)?, q),
        _ => relation_instances(family, n, q),
    };
    if let Some(k) = sample {
        if k < instances.len() {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let mut chosen = rand::seq::index::sample(&mut rng, instances.len(), k).into_vec();
            chosen.sort_unstable();
            instances = chosen.into_iter().map(|i| instances[i].clone()).collect();
        }
    }
    if instances.is_empty() {
        return Err(input_error(format!("no {family} instance for the given intervals")));
    }
    let ctx = config.context()?;
    let certificates = instances.iter().map(|inst| verify_instance(&ctx, inst, n)).collect::<circle_hall::Result<Vec<_>>>()?;
    render(&json!({
        "holds": certificates.iter().all(|c| c.holds),
        "family": family,
        "n": n,
        "q": q,
        "certificates": certificates,
    }))
}
