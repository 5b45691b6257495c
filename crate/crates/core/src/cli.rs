//! Command-line front end. Every command builds a JSON report; text output
//! is rendered from the same data.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::boundary::{
    aag_invariant, boundary_cycles, compare_invariants, format_aag, is_proper, is_smooth,
    surface_invariants, Comparison,
};
use crate::complexes::cohomology_dim;
use crate::error::Error;
use crate::field::FieldSpec;
use crate::formality::formality;
use crate::hochschild::{basis, parse_class, HHExpression};
use crate::quiver::{random_gentle, GentleAlgebra, RandomBounds};
use crate::structure::{hh_presentation, Structure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "gentle",
    version,
    about = "Hochschild cohomology of graded gentle algebras"
)]
struct Cli {
    /// Coefficient field: `q` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "q")]
    field: FieldSpec,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Range {
    #[arg(long, default_value_t = 6)]
    nmax: usize,
    /// Single internal degree; overrides `--dmin`/`--dmax`.
    #[arg(long, allow_hyphen_values = true)]
    d: Option<i64>,
    #[arg(long, default_value_t = -6, allow_hyphen_values = true)]
    dmin: i64,
    #[arg(long, default_value_t = 6, allow_hyphen_values = true)]
    dmax: i64,
    /// Path-length cap for infinite-dimensional bidegrees.
    #[arg(long)]
    cap: Option<usize>,
}

impl Range {
    fn degrees(&self) -> anyhow::Result<Vec<i64>> {
        match self.d {
            Some(d) => Ok(vec![d]),
            None if self.dmin > self.dmax => Err(Error::Usage(format!(
                "--dmin {} exceeds --dmax {}",
                self.dmin, self.dmax
            ))
            .into()),
            None => Ok((self.dmin..=self.dmax).collect()),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the gentle axioms.
    Validate { quiver: PathBuf },
    /// Boundary components, Euler characteristic and genus.
    Invariants { quiver: PathBuf },
    /// Boundary cycles and the AAG invariant.
    Aag { quiver: PathBuf },
    /// Compare the derived invariants of two algebras.
    Compare { first: PathBuf, second: PathBuf },
    /// Dimensions from the brute-force cochain complex.
    Oracle {
        quiver: PathBuf,
        #[command(flatten)]
        range: Range,
    },
    /// Dimensions from the closed-form basis.
    Dims {
        quiver: PathBuf,
        #[command(flatten)]
        range: Range,
    },
    /// Basis classes in one bidegree.
    Basis {
        quiver: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Cup product of two classes.
    Cup {
        quiver: PathBuf,
        x: String,
        y: String,
    },
    /// Gerstenhaber bracket of two classes.
    Bracket {
        quiver: PathBuf,
        x: String,
        y: String,
    },
    /// Generators and relations of the cohomology ring.
    Presentation { quiver: PathBuf },
    /// Intrinsic formality verdict.
    Formality {
        quiver: PathBuf,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// Emit a seeded random gentle quiver document.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long)]
        max_arrows: Option<usize>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        min_degree: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        max_degree: i64,
        #[arg(long)]
        no_loops: bool,
    },
}

struct Report {
    json: Value,
    text: String,
}

fn load(path: &Path) -> anyhow::Result<GentleAlgebra> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(GentleAlgebra::from_json(&text)?)
}

fn dim_cell(value: usize, lower_bound: bool) -> (Value, String) {
    if lower_bound {
        (json!({ "at_least": value }), format!("{value}+"))
    } else {
        (json!(value), value.to_string())
    }
}

fn table(
    range: &Range,
    cell: impl Fn(usize, i64) -> anyhow::Result<(Value, String)>,
) -> anyhow::Result<Report> {
    let mut rows = Vec::new();
    let mut text = String::new();
    for d in range.degrees()? {
        let mut values = Vec::new();
        let mut shown = Vec::new();
        for n in 0..=range.nmax {
            let (v, s) = cell(n, d)?;
            values.push(v);
            shown.push(s);
        }
        text.push_str(&format!("d={d}: {}\n", shown.join(",")));
        rows.push(json!({ "d": d, "dims": values }));
    }
    Ok(Report {
        json: json!({ "nmax": range.nmax, "rows": rows }),
        text,
    })
}

fn expression_report(a: &GentleAlgebra, field: FieldSpec, e: &HHExpression) -> Report {
    let terms: Vec<Value> = e
        .terms
        .iter()
        .map(|(c, x)| json!({ "class": c.name(a), "coefficient": field.display(x) }))
        .collect();
    let text = e.display(a, field);
    Report {
        json: json!({ "result": text, "terms": terms }),
        text: format!("{text}\n"),
    }
}

fn execute(cli: Cli) -> anyhow::Result<Report> {
    let field = cli.field;
    Ok(match cli.command {
        Command::Validate { quiver } => {
            let a = load(&quiver)?;
            Report {
                json: json!({
                    "valid": true,
                    "vertices": a.num_vertices(),
                    "arrows": a.num_arrows(),
                    "relations": a.quiver().relations.len(),
                }),
                text: format!(
                    "valid gentle quiver: {} vertices, {} arrows, {} relations\n",
                    a.num_vertices(),
                    a.num_arrows(),
                    a.quiver().relations.len()
                ),
            }
        }
        Command::Invariants { quiver } => {
            let a = load(&quiver)?;
            let s = surface_invariants(&a)?;
            let mut text = format!(
                "boundary components: {}\neuler characteristic: {}\ngenus: {}\nsmooth: {}\nproper: {}\n",
                s.boundary_components,
                s.euler_characteristic,
                s.genus,
                is_smooth(&a),
                is_proper(&a)
            );
            for c in &s.components {
                text.push_str(&format!(
                    "  {} stops={} winding={}\n",
                    c.kind, c.stops, c.winding
                ));
            }
            let mut json = serde_json::to_value(&s)?;
            json["smooth"] = json!(is_smooth(&a));
            json["proper"] = json!(is_proper(&a));
            Report { json, text }
        }
        Command::Aag { quiver } => {
            let a = load(&quiver)?;
            let bcs = boundary_cycles(&a);
            let cycles: Vec<Value> = bcs
                .iter()
                .map(|c| {
                    json!({
                        "kind": c.kind_name(),
                        "segments": c.describe(&a),
                        "stops": c.stops,
                        "winding": c.winding,
                    })
                })
                .collect();
            let phi = format_aag(&aag_invariant(&a));
            let mut text = String::new();
            for c in &bcs {
                text.push_str(&format!(
                    "{} {} n={} w={}\n",
                    c.kind_name(),
                    c.describe(&a),
                    c.stops,
                    c.winding
                ));
            }
            text.push_str(&format!("phi = {phi}\n"));
            Report {
                json: json!({ "cycles": cycles, "aag": phi }),
                text,
            }
        }
        Command::Compare { first, second } => {
            let (a, b) = (load(&first)?, load(&second)?);
            match compare_invariants(&a, &b)? {
                Comparison::PossiblyEquivalent => Report {
                    json: json!({ "verdict": "possibly-equivalent" }),
                    text: "possibly derived equivalent: all invariants agree\n".into(),
                },
                Comparison::NotEquivalent(why) => Report {
                    text: format!("not derived equivalent: {why}\n"),
                    json: json!({ "verdict": "not-equivalent", "reason": why }),
                },
            }
        }
        Command::Oracle { quiver, range } => {
            let a = load(&quiver)?;
            table(&range, |n, d| {
                let dim = cohomology_dim(&a, field, n, d, range.cap)?;
                Ok(dim_cell(dim.value, dim.lower_bound))
            })?
        }
        Command::Dims { quiver, range } => {
            let a = load(&quiver)?;
            table(&range, |n, d| match basis(&a, field, n, d, None) {
                Ok(b) => Ok(dim_cell(b.len(), false)),
                Err(Error::NeedsCap { .. }) => match range.cap {
                    Some(cap) => Ok(dim_cell(basis(&a, field, n, d, Some(cap))?.len(), true)),
                    None => Ok((json!("inf"), "inf".into())),
                },
                Err(e) => Err(e.into()),
            })?
        }
        Command::Basis { quiver, n, d, cap } => {
            let a = load(&quiver)?;
            let names: Vec<String> = basis(&a, field, n, d, cap)?
                .iter()
                .map(|c| c.name(&a))
                .collect();
            let text = names.iter().map(|s| format!("{s}\n")).collect();
            Report {
                json: json!({ "n": n, "d": d, "classes": names }),
                text,
            }
        }
        Command::Cup { quiver, x, y } => {
            let a = load(&quiver)?;
            let (x, y) = (parse_class(&a, field, &x)?, parse_class(&a, field, &y)?);
            let st = Structure::new(&a, field).with_cap(12);
            let e = st.cup(
                &HHExpression::single(x, field.one()),
                &HHExpression::single(y, field.one()),
            )?;
            expression_report(&a, field, &e)
        }
        Command::Bracket { quiver, x, y } => {
            let a = load(&quiver)?;
            let (x, y) = (parse_class(&a, field, &x)?, parse_class(&a, field, &y)?);
            let st = Structure::new(&a, field);
            let e = st.bracket(
                &HHExpression::single(x, field.one()),
                &HHExpression::single(y, field.one()),
            )?;
            expression_report(&a, field, &e)
        }
        Command::Presentation { quiver } => {
            let a = load(&quiver)?;
            let p = hh_presentation(&a, field);
            let mut text = String::from("generators:\n");
            for g in &p.generators {
                let w = g
                    .winding
                    .map(|w| format!(" winding={w}"))
                    .unwrap_or_default();
                text.push_str(&format!(
                    "  {} degree={}{w} class={}\n",
                    g.name, g.degree, g.class
                ));
            }
            text.push_str("relations:\n");
            for r in &p.relations {
                text.push_str(&format!("  {r}\n"));
            }
            Report {
                json: serde_json::to_value(&p)?,
                text,
            }
        }
        Command::Formality { quiver, nmax } => {
            let a = load(&quiver)?;
            let v = formality(&a, field, nmax)?;
            let dims: Vec<String> = v
                .kadeishvili
                .obstruction_dims
                .iter()
                .map(|(n, d)| format!("HH^{{{n},{}}}={d}", 2 - *n as i64))
                .collect();
            let mut text = format!(
                "surface verdict: {}\nkadeishvili sufficient: {}\nobstruction dims: {}\ndisagreement: {}\n",
                v.surface_verdict.as_str(),
                v.kadeishvili.sufficient_formality,
                dims.join(" "),
                v.disagreement
            );
            for w in &v.witnesses {
                text.push_str(&format!("witness: {w}\n"));
            }
            Report {
                json: serde_json::to_value(&v)?,
                text,
            }
        }
        Command::Random {
            seed,
            max_vertices,
            max_arrows,
            min_degree,
            max_degree,
            no_loops,
        } => {
            let bounds = RandomBounds {
                max_vertices,
                max_arrows,
                min_degree,
                max_degree,
                allow_loops: !no_loops,
            };
            let doc = random_gentle(seed, bounds)?.quiver().to_json();
            Report {
                json: serde_json::from_str(&doc)?,
                text: format!("{doc}\n"),
            }
        }
    })
}

fn exit_code(e: &anyhow::Error) -> i32 {
    e.downcast_ref::<Error>().map_or(1, Error::exit_code)
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code: 0 on success, 1 on domain errors, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let format = cli.format;
    match execute(cli) {
        Ok(report) => {
            let written = match format {
                Format::Json => serde_json::to_string_pretty(&report.json)
                    .map_err(std::io::Error::from)
                    .and_then(|s| writeln!(out, "{s}")),
                Format::Text => write!(out, "{}", report.text),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    1
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}
