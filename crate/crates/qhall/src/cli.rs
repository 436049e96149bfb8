//! Command-line front end. Every command prints one JSON document; errors are printed
//! as `{"error": {"kind", "message"}}`.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bgp::{Reflector, Side};
use crate::cartan::{CartanDatum, Weight};
use crate::config::Config;
use crate::fquot::FAlgebra;
use crate::hallalg::HallAlgebra;
use crate::hdot::{BgpMap, Hdot, HdotElement};
use crate::quiverrep::{ClassId, RepCategory};
use crate::udot::{Sign, UElement, UMonomial, Udot};
use crate::verify::{run_suite, weight_grid, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "qhall", version, about = "Ringel-Hall algebras, BGP reflections and Lusztig symmetries")]
pub struct Cli {
    /// Quiver/Cartan config file (JSON).
    #[arg(long, global = true, conflicts_with = "preset")]
    pub config: Option<PathBuf>,
    /// Built-in preset: A2, A2-rev, A3, A1xA1, B2, G2.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Size of the prime field.
    #[arg(long, global = true)]
    pub field: Option<u64>,
    /// Total dimension cap for representations.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Single-line JSON instead of pretty-printed.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Sink,
    Source,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Sink => Side::Sink,
            SideArg::Source => Side::Source,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Isomorphism classes, all up to the cap or of one dimension vector.
    Classify {
        #[arg(long)]
        dim: Option<String>,
    },
    /// Product of two basis elements `u_a u_b` (or `⟨a⟩⟨b⟩` with `--angle`).
    HallMul {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        angle: bool,
    },
    /// Hall number `g^l_{mn}`: subobjects of `l` isomorphic to `n` with quotient `m`.
    HallNumber {
        #[arg(long)]
        l: String,
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
    },
    /// Euler form of two dimension vectors.
    Euler {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Order of the automorphism group of a class.
    Aut {
        #[arg(long)]
        class: String,
    },
    /// BGP reflection of a class at a vertex.
    Reflect {
        #[arg(long)]
        class: String,
        #[arg(long)]
        vertex: usize,
        #[arg(long, value_enum, default_value = "sink")]
        side: SideArg,
    },
    /// Normal form of a word in `f`.
    FNormal {
        #[arg(long)]
        word: String,
    },
    /// Product of two `U̇` monomials written `plus|zeta|minus`.
    UdotMul {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Lusztig's `T_i` on a `U̇` monomial `plus|zeta|minus`.
    #[command(name = "apply-T", alias = "apply-t")]
    ApplyT {
        #[arg(long)]
        vertex: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// `𝒯_i` (sink) or `𝒯'_i` (source) on an `Ḣ` monomial `plus|zeta|minus` of class keys.
    #[command(name = "apply-bgp-T", alias = "apply-bgp-t")]
    ApplyBgpT {
        #[arg(long)]
        vertex: usize,
        #[arg(long, value_enum, default_value = "sink")]
        side: SideArg,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// `⟨minus⟩⁻ 1_ρ ⟨plus⟩⁺` in plus-left form.
    Straighten {
        #[arg(long)]
        minus: String,
        #[arg(long, allow_hyphen_values = true)]
        rho: String,
        #[arg(long)]
        plus: String,
    },
    /// Braid relation between `T_i` and `T_j` on a generator such as `E1` or `F2`.
    BraidCheck {
        #[arg(long)]
        gen: String,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 2)]
        j: usize,
        /// `ζ(h_k)` values; all weights within the weight cap when omitted.
        #[arg(long, allow_hyphen_values = true)]
        zeta: Option<String>,
    },
    /// `𝒯_i` against `T_i` on a generator at a sink.
    CoincidenceCheck {
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        gen: String,
        #[arg(long, allow_hyphen_values = true)]
        zeta: Option<String>,
    },
    /// Runs acceptance criteria: `all`, a number, or a comma-separated list.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Include G2 in the braid criterion.
        #[arg(long)]
        g2: bool,
    },
}

#[derive(Debug, Serialize)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn new(kind: &'static str, message: impl ToString) -> Self {
        Self {
            kind,
            message: message.to_string(),
        }
    }
}

macro_rules! from_err {
    ($($t:ty => $kind:literal),* $(,)?) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::new($kind, e)
            }
        })*
    };
}

from_err! {
    crate::config::ConfigError => "config",
    crate::quiverrep::ClassifyError => "classify",
    crate::quiverrep::QuiverError => "quiver",
    crate::hallalg::HallError => "hall",
    crate::hdot::HdotError => "hdot",
    crate::fquot::FError => "fquot",
    crate::cartan::CartanError => "cartan",
}

/// A finished command: the JSON document and whether its checks passed.
pub struct Outcome {
    pub value: Value,
    pub ok: bool,
}

fn done(value: Value) -> Result<Outcome, CliError> {
    Ok(Outcome { value, ok: true })
}

struct Ctx {
    config: Config,
    q: u64,
    cap: usize,
}

fn parse_ints(s: &str) -> Result<Vec<i64>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| CliError::new("argument", format!("not an integer list: {s:?}"))))
        .collect()
}

/// 1-based comma-separated letters to a 0-based word.
fn parse_word(s: &str, n: usize) -> Result<Vec<u8>, CliError> {
    parse_ints(s)?
        .into_iter()
        .map(|x| {
            if x < 1 || x as usize > n {
                Err(CliError::new("argument", format!("vertex {x} out of range")))
            } else {
                Ok((x - 1) as u8)
            }
        })
        .collect()
}

fn parse_gen(s: &str, n: usize) -> Result<(Sign, usize), CliError> {
    let bad = || CliError::new("argument", format!("generator must look like E1 or F2, got {s:?}"));
    let sign = match s.chars().next() {
        Some('E') | Some('e') => Sign::Plus,
        Some('F') | Some('f') => Sign::Minus,
        _ => return Err(bad()),
    };
    let k: usize = s[1..].parse().map_err(|_| bad())?;
    if k < 1 || k > n {
        return Err(bad());
    }
    Ok((sign, k - 1))
}

fn vertex(v: usize, n: usize) -> Result<usize, CliError> {
    if v < 1 || v > n {
        return Err(CliError::new("argument", format!("vertex {v} out of range")));
    }
    Ok(v - 1)
}

impl Ctx {
    fn cartan(&self) -> Result<CartanDatum, CliError> {
        Ok(self.config.cartan_datum()?)
    }

    fn weight(&self, s: &str) -> Result<Weight, CliError> {
        let c = self.cartan()?;
        let h = parse_ints(s)?;
        if h.len() != c.n() {
            return Err(CliError::new("argument", format!("weight needs {} entries", c.n())));
        }
        Ok(c.weight_from_h(&h))
    }

    fn category(&self) -> Result<Arc<RepCategory>, CliError> {
        Ok(Arc::new(RepCategory::new(self.config.valued_quiver()?, self.q, self.cap)?))
    }

    fn class(&self, cat: &RepCategory, key: &str) -> Result<ClassId, CliError> {
        let n = cat.n();
        let id = if key == "0" { Some(ClassId::zero()) } else { ClassId::parse_key(key, n) };
        let id = id.ok_or_else(|| CliError::new("argument", format!("not a class key: {key:?}")))?;
        cat.info(id)?;
        Ok(id)
    }

    fn udot(&self) -> Result<Udot, CliError> {
        Ok(Udot::from_cartan(self.cartan()?, self.config.f_cap))
    }

    fn umonomial(&self, s: &str) -> Result<UElement, CliError> {
        let parts: Vec<&str> = s.split('|').collect();
        let [p, z, m] = parts[..] else {
            return Err(CliError::new("argument", format!("monomial must be plus|zeta|minus, got {s:?}")));
        };
        let n = self.cartan()?.n();
        let mono = UMonomial {
            plus: parse_word(p, n)?,
            zeta: self.weight(z)?,
            minus: parse_word(m, n)?,
        };
        Ok(UElement::term(mono, crate::coeffring::RationalFn::one()))
    }

    fn hmonomial(&self, h: &Hdot, s: &str) -> Result<HdotElement, CliError> {
        let parts: Vec<&str> = s.split('|').collect();
        let [p, z, m] = parts[..] else {
            return Err(CliError::new("argument", format!("monomial must be plus|zeta|minus, got {s:?}")));
        };
        let cat = h.category();
        let key = |k: &str| if k.is_empty() { self.class(cat, "0") } else { self.class(cat, k) };
        Ok(h.monomial(key(p)?, self.weight(z)?, key(m)?))
    }

    fn zetas(&self, z: &Option<String>) -> Result<Vec<Weight>, CliError> {
        match z {
            Some(s) => Ok(vec![self.weight(s)?]),
            None => Ok(weight_grid(&self.cartan()?, self.config.weight_cap)),
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn load_config(cli: &Cli) -> Result<Config, CliError> {
    match (&cli.config, &cli.preset) {
        (Some(p), _) => Ok(Config::load(p)?),
        (None, Some(name)) => Ok(Config::preset(name)?),
        (None, None) => Ok(Config::preset("A2")?),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    run_with(cli, None)
}

/// Like [`run`], with `config` taking the place of `--config`/`--preset` when given.
pub fn run_with(cli: &Cli, config: Option<Config>) -> Result<Outcome, CliError> {
    if let Command::Verify { suite, g2 } = &cli.command {
        let reports = run_suite(suite, &VerifyOptions { g2_braid: *g2 }).map_err(|e| CliError::new("argument", e))?;
        let ok = reports.iter().all(|r| r.passed);
        return Ok(Outcome {
            value: json!({ "passed": ok, "criteria": to_value(&reports) }),
            ok,
        });
    }
    let config = match config {
        Some(c) => c,
        None => load_config(cli)?,
    };
    let q = config.field(cli.field)?;
    let cap = cli.cap.unwrap_or(config.cap_for(q));
    let ctx = Ctx { config, q, cap };
    match &cli.command {
        Command::Classify { dim } => {
            let cat = ctx.category()?;
            let ids = match dim {
                Some(d) => cat.classes_of(&parse_ints(d)?)?.to_vec(),
                None => cat.classes_up_to(cap)?,
            };
            let recs = ids.iter().map(|&c| cat.record(c)).collect::<Result<Vec<_>, _>>()?;
            done(json!({ "field": q, "classes": to_value(&recs) }))
        }
        Command::HallMul { a, b, angle } => {
            let h = HallAlgebra::new(ctx.category()?)?;
            let (a, b) = (ctx.class(h.category(), a)?, ctx.class(h.category(), b)?);
            let prod = if *angle {
                let p = h.mul(&h.angle(a)?, &h.angle(b)?)?;
                h.to_angle_coeffs(&p)?
            } else {
                h.mul_basis(a, b)?
            };
            done(json!({ "basis": if *angle { "angle" } else { "u" }, "terms": to_value(&h.to_json(&prod)) }))
        }
        Command::HallNumber { l, m, n } => {
            let cat = ctx.category()?;
            let (l, m, n) = (ctx.class(&cat, l)?, ctx.class(&cat, m)?, ctx.class(&cat, n)?);
            done(json!({ "value": cat.hall_number(l, m, n)? }))
        }
        Command::Euler { a, b } => {
            let quiver = ctx.config.valued_quiver()?;
            let (a, b) = (parse_ints(a)?, parse_ints(b)?);
            if a.len() != quiver.n() || b.len() != quiver.n() {
                return Err(CliError::new("argument", format!("dimension vectors need {} entries", quiver.n())));
            }
            done(json!({ "value": quiver.euler(&a, &b) }))
        }
        Command::Aut { class } => {
            let cat = ctx.category()?;
            let c = ctx.class(&cat, class)?;
            done(json!({ "value": cat.aut(c)?.to_string() }))
        }
        Command::Reflect { class, vertex: v, side } => {
            let cat = ctx.category()?;
            let c = ctx.class(&cat, class)?;
            let i = vertex(*v, cat.n())?;
            let r = Reflector::new(cat.clone(), i, (*side).into())?;
            let (img, t) = r.image_split(c)?;
            let n = cat.n();
            done(json!({
                "image": img.key(n),
                "dimvec": img.dimvec(n),
                "removed_simple_summands": t,
                "target_aut": r.target().aut(img)?.to_string(),
            }))
        }
        Command::FNormal { word } => {
            let c = ctx.cartan()?;
            let f = FAlgebra::new(c.clone(), ctx.config.f_cap);
            let x = f.normal_word(&parse_word(word, c.n())?)?;
            done(json!({ "terms": to_value(&f.to_json(&x)) }))
        }
        Command::UdotMul { x, y } => {
            let u = ctx.udot()?;
            let prod = u.mul(&ctx.umonomial(x)?, &ctx.umonomial(y)?)?;
            done(json!({ "terms": to_value(&u.to_json(&prod)) }))
        }
        Command::ApplyT { vertex: v, x } => {
            let u = ctx.udot()?;
            let i = vertex(*v, u.n())?;
            let img = u.lusztig_t(i, &ctx.umonomial(x)?)?;
            done(json!({ "terms": to_value(&u.to_json(&img)) }))
        }
        Command::ApplyBgpT { vertex: v, side, x } => {
            let h = Arc::new(Hdot::from_category(ctx.category()?)?);
            let i = vertex(*v, h.n())?;
            let map = BgpMap::new(h.clone(), i, (*side).into())?;
            let img = map.apply(&ctx.hmonomial(&h, x)?)?;
            done(json!({ "terms": to_value(&map.target().to_json(&img)) }))
        }
        Command::Straighten { minus, rho, plus } => {
            let h = Hdot::from_category(ctx.category()?)?;
            let cat = h.category().clone();
            let out = h.straighten(ctx.class(&cat, minus)?, &ctx.weight(rho)?, ctx.class(&cat, plus)?)?;
            done(json!({ "terms": to_value(&h.to_json(&out)) }))
        }
        Command::BraidCheck { gen, i, j, zeta } => {
            let u = ctx.udot()?;
            let n = u.n();
            let (s, k) = parse_gen(gen, n)?;
            let (i, j) = (vertex(*i, n)?, vertex(*j, n)?);
            let mut reports = Vec::new();
            for z in ctx.zetas(zeta)? {
                reports.push(u.braid_check(i, j, s, k, &z)?);
            }
            let equal = reports.iter().all(|r| r.equal != Some(false));
            let value = if reports.len() == 1 {
                to_value(&reports[0])
            } else {
                json!({ "equal": equal, "checked": reports.len(), "reports": to_value(&reports) })
            };
            Ok(Outcome { value, ok: equal })
        }
        Command::CoincidenceCheck { vertex: v, gen, zeta } => {
            let h = Arc::new(Hdot::from_category(ctx.category()?)?);
            let i = vertex(*v, h.n())?;
            let (s, j) = parse_gen(gen, h.n())?;
            let map = BgpMap::new(h.clone(), i, Side::Sink)?;
            let u = ctx.udot()?;
            let mut reports = Vec::new();
            for z in ctx.zetas(zeta)? {
                reports.push(json!({ "zeta": z.0, "report": to_value(&map.coincidence_check(&u, s, j, &z)?) }));
            }
            let equal = reports.iter().all(|r| r["report"]["equal"] == Value::Bool(true));
            let value = if reports.len() == 1 {
                reports[0]["report"].clone()
            } else {
                json!({ "equal": equal, "checked": reports.len(), "reports": reports })
            };
            Ok(Outcome { value, ok: equal })
        }
        Command::Verify { .. } => unreachable!("handled above"),
    }
}

/// Renders the outcome (or error) and returns the process exit code.
pub fn render(cli: &Cli, result: Result<Outcome, CliError>) -> (String, i32) {
    let (value, code) = match result {
        Ok(o) => (o.value, if o.ok { 0 } else { 1 }),
        Err(e) => (json!({ "error": to_value(&e) }), 2),
    };
    let text = if cli.json {
        serde_json::to_string(&value)
    } else {
        serde_json::to_string_pretty(&value)
    };
    (text.expect("serializable"), code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (Value, i32) {
        let cli = Cli::try_parse_from(std::iter::once("qhall").chain(args.iter().copied())).unwrap();
        let (text, code) = render(&cli, run(&cli));
        (serde_json::from_str(&text).unwrap(), code)
    }

    #[test]
    fn euler_example() {
        let (v, code) = call(&["euler", "--a", "1,0", "--b", "0,1"]);
        assert_eq!(v, json!({ "value": -1 }));
        assert_eq!(code, 0);
    }

    #[test]
    fn braid_example() {
        let (v, code) = call(&["braid-check", "--preset", "A2", "--gen", "E1"]);
        assert_eq!(v["equal"], json!(true));
        assert_eq!(code, 0);
    }

    #[test]
    fn errors_are_objects() {
        let (v, code) = call(&["aut", "--class", "9.9#0"]);
        assert_eq!(code, 2);
        assert!(v["error"]["kind"].is_string());
        let (v, code) = call(&["hall-mul", "--preset", "B2", "--a", "1.0#0", "--b", "0.1#0"]);
        assert_eq!(code, 2);
        assert!(v["error"]["message"].is_string());
    }

    #[test]
    fn output_is_deterministic() {
        let a = call(&["hall-mul", "--a", "1.0#0", "--b", "0.1#0", "--field", "3"]);
        let b = call(&["hall-mul", "--a", "1.0#0", "--b", "0.1#0", "--field", "3"]);
        assert_eq!(a, b);
        assert_eq!(a.0["terms"].as_array().unwrap().len(), 2);
    }
}
