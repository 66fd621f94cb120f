//! Front end for `hall-core`: argument parsing, output formats, JSON codecs
//! and the on-disk Hall polynomial cache.

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hall_core::canonical::slices::{slice_closed_form, slice_matrices};
use hall_core::canonical::CanonicalEngine;
use hall_core::coeff::latex_laurent;
use hall_core::hallmult::{mult_semisimple_q, mult_semisimple_twisted, Coefficient};
use hall_core::hallpoly::HallEngine;
use hall_core::matrix::enumerate_by_dimvec;
use hall_core::oracle::{submodule_census, DEFAULT_BUDGET};
use hall_core::words::distinguished_word;
use hall_core::{CanonicalElement, CyclicMatrix, DimVector, HallVector, Letter, QPoly, Word};
use serde_json::{json, Value};

pub mod cache;
pub mod json;

use cache::HallCache;
use json::{canonical_to_json, hall_vector_to_json, qpoly_to_json, JsonCoeff};

#[derive(Debug)]
pub enum CliError {
    Core(hall_core::Error),
    Json(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn json(msg: impl Into<String>) -> Self {
        CliError::Json(msg.into())
    }

    /// 3 for a blown budget, 2 for bad input, 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(hall_core::Error::BudgetExceeded { .. }) => 3,
            CliError::Core(_) | CliError::Json(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Json(m) => write!(f, "invalid JSON input: {m}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<hall_core::Error> for CliError {
    fn from(e: hall_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    U,
    Utilde,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Subtraction,
    Ic,
}

#[derive(Debug, Parser)]
#[command(name = "hall", version, about = "Hall algebras of cyclic quivers and their canonical bases")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// JSON-lines file for Hall polynomials.
    #[arg(long, env = "HALL_CACHE", global = true)]
    pub cache: Option<PathBuf>,
    /// Upper bound for slice parameter sweeps.
    #[arg(long, default_value_t = 3, global = true)]
    pub bound: i64,
    /// Oracle enumeration budget.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension vector of a matrix.
    Dimvec {
        #[arg(long)]
        matrix: String,
    },
    /// Distinguished word of a matrix.
    Distword {
        #[arg(long)]
        matrix: String,
    },
    /// Monomial m^(A) in the PBW basis.
    Monomial {
        #[arg(long)]
        matrix: String,
    },
    /// Product of a semisimple generator with a basis element.
    Mult {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        alpha: Vec<i64>,
        #[arg(long)]
        matrix: String,
        #[arg(long, value_enum, default_value = "utilde")]
        basis: BasisArg,
    },
    /// Hall polynomial φ^A_{B,C}.
    Hallpoly {
        #[arg(long)]
        n: usize,
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        #[arg(long = "C")]
        c: String,
    },
    /// Canonical basis element of a matrix.
    Canonical {
        #[arg(long)]
        matrix: String,
        #[arg(long, value_enum, default_value = "subtraction")]
        route: Route,
    },
    /// Closed-form canonical elements of an n = 2 slice.
    Slice {
        /// Loewy length.
        #[arg(long)]
        l: i64,
        /// Periodicity.
        #[arg(long)]
        p: i64,
    },
    /// Compare Hall polynomials with finite-field counts, or audit the cache.
    Verify {
        #[arg(long, required_unless_present = "check_cache")]
        matrix: Option<String>,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        q: Vec<u32>,
        /// Recompute every cached value instead.
        #[arg(long)]
        check_cache: bool,
    },
}

/// A command result in every output format.
pub struct Output {
    pub json: Value,
    pub plain: String,
    pub latex: String,
    /// False when a verification found a discrepancy.
    pub ok: bool,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json.to_string(),
            Format::Plain => self.plain.clone(),
            Format::Latex => self.latex.clone(),
        }
    }
}

fn parse_matrix(s: &str) -> Result<CyclicMatrix, CliError> {
    Ok(s.parse::<CyclicMatrix>()?)
}

fn latex_qpoly(p: &QPoly) -> String {
    let mut parts = Vec::new();
    for (e, c) in p.terms().rev() {
        let mono = match e {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{{{e}}}"),
        };
        let coeff = c.to_string();
        parts.push(match (coeff.as_str(), mono.is_empty()) {
            (_, true) => coeff,
            ("1", false) => mono,
            ("-1", false) => format!("-{mono}"),
            _ => format!("{coeff}{mono}"),
        });
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ").replace("+ -", "- ")
}

fn latex_word(w: &Word) -> String {
    w.letters()
        .iter()
        .map(|(l, e)| match l {
            Letter::Simple(i) if *e == 1 => format!("E_{{{i}}}"),
            Letter::Simple(i) => format!("E_{{{i}}}^{{({e})}}"),
            Letter::Sincere(a) => format!("E_{{{a}}}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn latex_vector<C: Coefficient>(x: &HallVector<C>, coeff: impl Fn(&C) -> String, symbol: &str) -> String {
    let parts: Vec<String> = x
        .sorted_terms()
        .into_iter()
        .map(|(a, c)| format!("\\left({}\\right) {symbol}_{{{}}}", coeff(c), a.to_latex()))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn vector_output<C: JsonCoeff>(x: &HallVector<C>, latex: String) -> Output {
    Output { json: hall_vector_to_json(x), plain: x.to_string(), latex, ok: true }
}

fn canonical_output(c: &CanonicalElement) -> Output {
    let plain = format!(
        "{}\n{}",
        c.pbw,
        c.sorted_monomials().iter().map(|(b, h)| format!("({h}) m[{b}]")).collect::<Vec<_>>().join(" + ")
    );
    Output {
        json: canonical_to_json(c),
        plain,
        latex: latex_vector(&c.pbw, latex_laurent, "\\tilde u"),
        ok: true,
    }
}

/// Hall polynomial through the cache.
pub fn cached_hall_polynomial(
    eng: &mut HallEngine,
    cache: &mut HallCache,
    a: &CyclicMatrix,
    b: &CyclicMatrix,
    c: &CyclicMatrix,
) -> Result<QPoly, CliError> {
    let key = (a.clone(), b.clone(), c.clone());
    if let Some(phi) = cache.get(&key) {
        return Ok(phi.clone());
    }
    let phi = eng.hall_polynomial(a, b, c)?;
    cache.insert(key, phi.clone())?;
    Ok(phi)
}

fn verify_matrix(
    a: &CyclicMatrix,
    qs: &[u32],
    budget: u64,
    eng: &mut HallEngine,
    cache: &mut HallCache,
) -> Result<Output, CliError> {
    let n = a.n();
    let da = a.dim_vector();
    let mut subs = vec![CyclicMatrix::zero(n)?];
    for d in sub_dim_vectors(&da) {
        subs.extend(enumerate_by_dimvec(&d)?);
    }
    let mut checked = 0usize;
    let mut mismatches = Vec::new();
    for &q in qs {
        let census = submodule_census(a, q, budget)?;
        for c in &subs {
            let db = da.checked_sub(&c.dim_vector())?;
            let bs = if db.is_zero() { vec![CyclicMatrix::zero(n)?] } else { enumerate_by_dimvec(&db)? };
            for b in &bs {
                let phi = cached_hall_polynomial(eng, cache, a, b, c)?;
                let count = census.get(&(b.clone(), c.clone())).copied().unwrap_or(0);
                checked += 1;
                if phi.eval_i64(i64::from(q)) != count.into() {
                    mismatches.push(json!({"B": b.to_string(), "C": c.to_string(), "q": q,
                        "phi": qpoly_to_json(&phi), "count": count}));
                }
            }
        }
    }
    let ok = mismatches.is_empty();
    let plain = format!("{a}: {checked} checks, {} mismatches", mismatches.len());
    Ok(Output {
        json: json!({"A": a.to_string(), "q": qs, "checked": checked, "mismatches": mismatches}),
        latex: plain.clone(),
        plain,
        ok,
    })
}

/// Nonzero dimension vectors componentwise below `d`, `d` included.
fn sub_dim_vectors(d: &DimVector) -> Vec<DimVector> {
    let mut out = vec![Vec::new()];
    for &x in d.as_slice() {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=x).map(move |y| {
                    let mut w = v.clone();
                    w.push(y);
                    w
                })
            })
            .collect();
    }
    out.into_iter()
        .filter(|v| v.iter().any(|&y| y > 0))
        .map(|v| DimVector::new(v).expect("nonnegative"))
        .collect()
}

fn check_cache(cache: &HallCache, eng: &mut HallEngine) -> Result<Output, CliError> {
    let mut stale = Vec::new();
    for ((a, b, c), phi) in cache.entries() {
        if &eng.hall_polynomial(a, b, c)? != phi {
            stale.push(json!({"A": a.to_string(), "B": b.to_string(), "C": c.to_string()}));
        }
    }
    let plain = format!("{} cached values, {} disagree with recomputation", cache.len(), stale.len());
    Ok(Output {
        ok: stale.is_empty(),
        json: json!({"records": cache.len(), "stale": stale}),
        latex: plain.clone(),
        plain,
    })
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let mut cache = match &cli.cache {
        Some(p) => HallCache::open(p)?,
        None => HallCache::in_memory(),
    };
    match &cli.command {
        Command::Dimvec { matrix } => {
            let a = parse_matrix(matrix)?;
            let d = a.dim_vector();
            Ok(Output {
                json: json!({"matrix": a.to_string(), "dimvec": d.as_slice(), "total": d.total()}),
                plain: d.to_string(),
                latex: d.to_string(),
                ok: true,
            })
        }
        Command::Distword { matrix } => {
            let a = parse_matrix(matrix)?;
            let w = distinguished_word(&a)?;
            Ok(Output {
                json: json!({"matrix": a.to_string(), "word": w.to_string()}),
                plain: w.to_string(),
                latex: latex_word(&w),
                ok: true,
            })
        }
        Command::Monomial { matrix } => {
            let a = parse_matrix(matrix)?;
            let m = CanonicalEngine::new().monomial(&a)?;
            Ok(vector_output(&m, latex_vector(&m, latex_laurent, "\\tilde u")))
        }
        Command::Mult { alpha, matrix, basis } => {
            let a = parse_matrix(matrix)?;
            let alpha = DimVector::new(alpha.clone())?;
            match basis {
                BasisArg::U => {
                    let x = mult_semisimple_q(&alpha, &a)?;
                    Ok(vector_output(&x, latex_vector(&x, latex_qpoly, "u")))
                }
                BasisArg::Utilde => {
                    let x = mult_semisimple_twisted(&alpha, &a)?;
                    Ok(vector_output(&x, latex_vector(&x, latex_laurent, "\\tilde u")))
                }
            }
        }
        Command::Hallpoly { n, a, b, c } => {
            let (a, b, c) = (parse_matrix(a)?, parse_matrix(b)?, parse_matrix(c)?);
            for x in [&a, &b, &c] {
                if x.n() != *n {
                    return Err(hall_core::Error::RankMismatch { left: *n, right: x.n() }.into());
                }
            }
            let phi = cached_hall_polynomial(&mut HallEngine::new(), &mut cache, &a, &b, &c)?;
            Ok(Output { json: qpoly_to_json(&phi), plain: phi.to_string(), latex: latex_qpoly(&phi), ok: true })
        }
        Command::Canonical { matrix, route } => {
            let a = parse_matrix(matrix)?;
            let mut eng = CanonicalEngine::new();
            let c = match route {
                Route::Subtraction => eng.canonical_element(&a)?,
                Route::Ic => eng.canonical_element_ic(&a)?,
            };
            Ok(canonical_output(&c))
        }
        Command::Slice { l, p } => {
            let mut eng = CanonicalEngine::new();
            let mut elements = Vec::new();
            let mut plain = Vec::new();
            let mut all_agree = true;
            for a in slice_matrices(*l, *p, cli.bound)? {
                let closed = slice_closed_form(&a)?
                    .ok_or_else(|| hall_core::Error::Invalid(format!("({l},{p}) is not a covered slice")))?;
                all_agree &= closed == eng.canonical_element(&a)?;
                plain.push(format!("{a}: {}", closed.pbw));
                elements.push(canonical_to_json(&closed));
            }
            Ok(Output {
                json: json!({"slice": [l, p], "bound": cli.bound, "elements": elements, "all_agree": all_agree}),
                latex: plain.join("\n"),
                plain: plain.join("\n"),
                ok: all_agree,
            })
        }
        Command::Verify { matrix, q, check_cache: audit } => {
            let mut eng = HallEngine::new();
            if *audit {
                return check_cache(&cache, &mut eng);
            }
            let a = parse_matrix(matrix.as_deref().unwrap_or_default())?;
            verify_matrix(&a, q, cli.budget, &mut eng, &mut cache)
        }
    }
}
