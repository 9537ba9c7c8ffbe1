//! Command line front end: tower and shift files, the four commands and
//! JSON output.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use liouvred_core::elementary::{integrate_elementary, project_rs, ElemOutcome, RootSumTerm};
use liouvred_core::reduction::Reducer;
use liouvred_core::syntax::{parse, print_as, Format};
use liouvred_core::telescoping::{telescoper, ShiftSpec};
use liouvred_core::{Elem, Error, Kind, Poly, Tower};

#[derive(Parser, Debug)]
#[command(name = "liouvred", about = "Complete reductions in primitive and hyperexponential towers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Tower description file.
    #[arg(long)]
    pub tower: PathBuf,
    /// Integrand.
    #[arg(long, allow_hyphen_values = true)]
    pub expr: String,
    #[arg(long, value_enum, default_value_t = OutFormat::Plain)]
    pub format: OutFormat,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// R-pair `(g, r)` of `expr` with respect to `y' + h y`.
    Reduce {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        h: String,
    },
    /// In-field integration.
    Integrate {
        #[command(flatten)]
        common: Common,
    },
    /// Elementary integration.
    Elementary {
        #[command(flatten)]
        common: Common,
    },
    /// Telescoper with respect to a parameter shift.
    Telescope {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        shift: PathBuf,
        #[arg(long, default_value_t = 5)]
        order: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutFormat {
    Plain,
    Latex,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Exit code and output document of one command.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub doc: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TowerFile {
    #[serde(default)]
    constants: Vec<String>,
    #[serde(default)]
    gaussian_i: bool,
    #[serde(default)]
    generators: Vec<GenFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GenFile {
    name: String,
    kind: String,
    def: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ShiftFile {
    parameter: String,
    #[serde(default)]
    images: BTreeMap<String, String>,
}

fn words(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| !(c.is_alphanumeric() || c == '_')).filter(|w| !w.is_empty())
}

/// Builds a tower from its TOML description.
pub fn parse_tower(text: &str) -> Result<Tower, Error> {
    let file: TowerFile = toml::from_str(text).map_err(|e| toml_error(text, e))?;
    let names: Vec<&str> = file.constants.iter().map(String::as_str).collect();
    let mut seen: Vec<&str> = Vec::new();
    for n in names.iter().copied().chain(file.generators.iter().map(|g| g.name.as_str())) {
        if !valid_name(n) || (file.gaussian_i && n == "i") {
            return Err(Error::Input(format!("invalid name {:?}", n)));
        }
        if seen.contains(&n) {
            return Err(Error::Input(format!("duplicate name {}", n)));
        }
        seen.push(n);
    }
    let mut tower = Tower::new(&names, file.gaussian_i);
    for (l, g) in file.generators.iter().enumerate() {
        let kind = match g.kind.as_str() {
            "prim" => Kind::Prim,
            "hyp" => Kind::Hyp,
            k => return Err(Error::Input(format!("unknown kind {:?} for {}", k, g.name))),
        };
        if let Some(w) = words(&g.def).find(|w| file.generators[l..].iter().any(|h| h.name == *w)) {
            return Err(Error::Level(format!("definition of {} refers to {}", g.name, w)));
        }
        let def = parse(&g.def, &tower)?;
        tower.push(&g.name, kind, def)?;
    }
    tower.validate()?;
    Ok(tower)
}

fn valid_name(n: &str) -> bool {
    let mut cs = n.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_') && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn toml_error(text: &str, e: toml::de::Error) -> Error {
    let (line, col) = match e.span() {
        Some(sp) => {
            let before = &text[..sp.start.min(text.len())];
            let line = before.matches('\n').count() + 1;
            let col = before.len() - before.rfind('\n').map_or(0, |p| p + 1) + 1;
            (line, col)
        }
        None => (0, 0),
    };
    Error::Parse { line, col, msg: e.message().to_string() }
}

/// Builds a shift from its TOML description.
pub fn parse_shift(text: &str, tower: &Tower) -> Result<ShiftSpec, Error> {
    let file: ShiftFile = toml::from_str(text).map_err(|e| toml_error(text, e))?;
    let mut images = Vec::new();
    for (name, expr) in &file.images {
        let Some(l) = tower.gens.iter().position(|g| &g.name == name) else {
            return Err(Error::SpecIncomplete(format!("unknown generator {}", name)));
        };
        images.push((l + 1, parse(expr, tower)?));
    }
    ShiftSpec::new(tower, &file.parameter, &images)
}

struct Ctx {
    tower: Tower,
    fmt: Format,
}

impl Ctx {
    fn show(&self, e: &Elem) -> Value {
        Value::String(print_as(e, &self.tower, self.fmt))
    }

    fn show_poly(&self, p: &Poly, var: usize) -> Value {
        self.show(&Elem::from_poly(var, p.clone()))
    }

    /// A polynomial in the root-sum variable `z`, whose coefficients are constants.
    fn show_z(&self, p: &Poly) -> Value {
        let mut terms = Vec::new();
        for (k, c) in p.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let c = print_as(c, &self.tower, self.fmt);
            let z = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{}", k),
            };
            terms.push(match (k, c.as_str()) {
                (0, _) => format!("({})", c),
                (_, "1") => z,
                _ => format!("({})*{}", c, z),
            });
        }
        Value::String(if terms.is_empty() { "0".into() } else { terms.join(" + ") })
    }

    fn root_sum(&self, rs: &RootSumTerm) -> Value {
        let var = self.tower.var_of(rs.level);
        json!({
            "poly": self.show_z(&rs.poly),
            "num": self.show_poly(&rs.num, var),
            "dden": self.show_poly(&rs.dden, var),
            "den": self.show_poly(&rs.den, var),
        })
    }

    fn matrix(&self, rows: &[Vec<Elem>]) -> Value {
        Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(|e| self.show(e)).collect())).collect())
    }
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {}", path.display(), e)))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Undecided(_) => EXIT_UNDECIDED,
        Error::Input(_)
        | Error::Parse { .. }
        | Error::Level(_)
        | Error::SpecIncomplete(_)
        | Error::ShiftIncompatible(_)
        | Error::DivisionByZero => EXIT_INPUT,
        Error::NotInRS | Error::NonConstantResidue | Error::Internal(_) => EXIT_INTERNAL,
    }
}

fn status_of(code: i32) -> &'static str {
    match code {
        EXIT_UNDECIDED => "undecided",
        EXIT_INPUT => "input_error",
        _ => "internal_error",
    }
}

/// Runs one command and returns its exit code and output document.
pub fn run(cli: Cli) -> Outcome {
    match execute(cli) {
        Ok(o) => o,
        Err(e) => {
            let code = exit_code(&e);
            let mut doc = json!({ "status": status_of(code), "message": e.to_string() });
            if let Error::Parse { line, col, .. } = e {
                doc["line"] = json!(line);
                doc["col"] = json!(col);
            }
            Outcome { code, doc }
        }
    }
}

fn common(cli: &Cli) -> &Common {
    match &cli.command {
        Command::Reduce { common, .. }
        | Command::Integrate { common }
        | Command::Elementary { common }
        | Command::Telescope { common, .. } => common,
    }
}

fn execute(cli: Cli) -> Result<Outcome, Error> {
    let c = common(&cli).clone();
    let tower = parse_tower(&read(&c.tower)?)?;
    let f = parse(&c.expr, &tower)?;
    let fmt = match c.format {
        OutFormat::Plain => Format::Plain,
        OutFormat::Latex => Format::Latex,
    };
    let ctx = Ctx { tower: tower.clone(), fmt };
    let n = tower.height();
    let mut red = Reducer::new(tower.clone());
    let mut doc = Map::new();
    let code = match &cli.command {
        Command::Reduce { h, .. } => {
            let h = parse(h, &tower)?;
            let (g, r) = red.rpair(&f, &h, n)?;
            doc.insert("status".into(), json!("reduced"));
            doc.insert("g".into(), ctx.show(&g));
            doc.insert("r".into(), ctx.show(&r));
            if h.is_zero() {
                let parts = project_rs(&tower, &r, n)?;
                doc.insert("s".into(), Value::Array(parts.s.iter().map(|s| ctx.show(s)).collect()));
            }
            EXIT_OK
        }
        Command::Integrate { .. } => {
            let (g, r) = red.rpair(&f, &Elem::zero(), n)?;
            doc.insert("g".into(), ctx.show(&g));
            doc.insert("r".into(), ctx.show(&r));
            if r.is_zero() {
                doc.insert("status".into(), json!("integrable"));
                EXIT_OK
            } else {
                doc.insert("status".into(), json!("not_integrable"));
                EXIT_NEGATIVE
            }
        }
        Command::Elementary { .. } => match integrate_elementary(&mut red, &f)? {
            ElemOutcome::Elementary { integral, system, solution } => {
                doc.insert("status".into(), json!("elementary"));
                doc.insert("g".into(), ctx.show(&integral.rational));
                let logs = integral
                    .logs
                    .iter()
                    .map(|l| json!({ "coeff": ctx.show(&l.coeff), "arg": ctx.show(&l.arg) }))
                    .collect();
                doc.insert("logs".into(), Value::Array(logs));
                let sums = integral.root_sums.iter().map(|rs| ctx.root_sum(rs)).collect();
                doc.insert("root_sums".into(), Value::Array(sums));
                doc.insert("system".into(), ctx.matrix(&system));
                doc.insert("solution".into(), Value::Array(solution.iter().map(|e| ctx.show(e)).collect()));
                EXIT_OK
            }
            ElemOutcome::NotElementary { system } => {
                doc.insert("status".into(), json!("not_elementary"));
                doc.insert("system".into(), ctx.matrix(&system));
                EXIT_NEGATIVE
            }
        },
        Command::Telescope { shift, order, .. } => {
            let spec = parse_shift(&read(shift)?, &tower)?;
            match telescoper(&mut red, &f, &spec, *order)? {
                Some(t) => {
                    doc.insert("status".into(), json!("telescoper"));
                    doc.insert(
                        "telescoper".into(),
                        json!({
                            "coeffs": t.coeffs.iter().map(|e| ctx.show(e)).collect::<Vec<_>>(),
                            "certificate": ctx.show(&t.certificate),
                        }),
                    );
                    doc.insert("r".into(), Value::Array(t.remainders.iter().map(|e| ctx.show(e)).collect()));
                    EXIT_OK
                }
                None => {
                    doc.insert("status".into(), json!("no_telescoper"));
                    EXIT_NEGATIVE
                }
            }
        }
    };
    Ok(Outcome { code, doc: Value::Object(doc) })
}
