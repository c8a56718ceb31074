//! Command-line front end.
//!
//! Exit codes: 0 success, 1 user error (arguments, parsing, validation),
//! 2 Gröbner resource limit.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bfun::{b_function, graph_generator, small_parts};
use crate::error::{Error, Result};
use crate::estimate::estimate_jumping_numbers;
use crate::frobenius::frobenius_root;
use crate::listmod::{h_expand, s_set};
use crate::modgb::{with_default_limits, GbLimits, Submodule, VectorR};
use crate::polyring::{infer_num_vars, CharConfig, Poly, Ring};
use crate::problem::Problem;
use crate::testideal::{f_jumping_exponents, tau_f, tau_f_stable};

#[derive(Parser, Debug)]
#[command(name = "charp", version, about = "Frobenius roots, test ideals and b-functions in characteristic p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Emit JSON instead of a text table.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on pending S-pairs in any Gröbner computation.
    #[arg(long, global = true)]
    limit_pairs: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct Field {
    /// The characteristic.
    #[arg(short = 'p')]
    p: u64,
    /// q = p^gamma.
    #[arg(long, default_value_t = 1)]
    gamma: u32,
    /// Number of ring variables (default: inferred from the largest x index).
    #[arg(long)]
    num_vars: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Frobenius root of a submodule given by generators.
    Froot {
        #[command(flatten)]
        field: Field,
        /// Generators separated by ';'; vectors written as "(a, b)".
        #[arg(long)]
        gens: String,
        #[arg(long)]
        e: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Test ideal of f^alpha: the level-e term, or the stable value without --e.
    Tau {
        #[command(flatten)]
        field: Field,
        #[arg(long)]
        f: String,
        /// Exact rational "num/den".
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        e: Option<u32>,
        #[arg(long, default_value_t = 16)]
        e_cap: u32,
        #[command(flatten)]
        common: Common,
    },
    /// F-jumping exponents of f in (0, 1].
    Fjump {
        #[command(flatten)]
        field: Field,
        #[arg(long)]
        f: String,
        #[arg(long = "e-max", alias = "e")]
        e_max: u32,
        #[command(flatten)]
        common: Common,
    },
    /// The family H^e_n(tau) of a problem's generating matrix.
    Hexpand {
        #[arg(long)]
        input: String,
        #[arg(long)]
        e: u32,
        #[command(flatten)]
        common: Common,
    },
    /// The jump set S_e of a problem's list test modules.
    Sset {
        #[arg(long)]
        input: String,
        #[arg(long)]
        e: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Jump sets up to e_max and their rational limits.
    Jumps {
        #[arg(long)]
        input: String,
        #[arg(long = "e-max", alias = "e")]
        e_max: u32,
        #[command(flatten)]
        common: Common,
    },
    /// The b-function of a problem's generating matrix.
    Bfun {
        #[arg(long)]
        input: String,
        #[arg(long = "e-max", alias = "e")]
        e_max: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Problem file for the graph generator (f - t)^(q-1).
    Graphgen {
        #[command(flatten)]
        field: Field,
        #[arg(long)]
        f: String,
        #[command(flatten)]
        common: Common,
    },
}

/// Run the CLI on `argv` (including the program name); returns the exit code.
pub fn run<O: Write, E: Write>(argv: &[String], out: &mut O, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let limits = limits(cli.command.common());
    match with_default_limits(limits, || dispatch(cli.command)) {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_resource_limit() {
                2
            } else {
                1
            }
        }
    }
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Froot { common, .. }
            | Command::Tau { common, .. }
            | Command::Fjump { common, .. }
            | Command::Hexpand { common, .. }
            | Command::Sset { common, .. }
            | Command::Jumps { common, .. }
            | Command::Bfun { common, .. }
            | Command::Graphgen { common, .. } => common,
        }
    }
}

fn limits(common: &Common) -> GbLimits {
    common
        .limit_pairs
        .map_or_else(GbLimits::default, |max_pairs| GbLimits { max_pairs })
}

fn ring_for(field: &Field, texts: &[&str]) -> Result<(CharConfig, Ring)> {
    let cfg = CharConfig::new(field.p, field.gamma)?;
    let inferred = texts.iter().map(|t| infer_num_vars(t)).max().unwrap_or(0);
    let n = field.num_vars.unwrap_or(inferred.max(1));
    Ok((cfg, Ring::new(&cfg, n)))
}

fn parse_alpha(text: &str) -> Result<BigRational> {
    let t = text.trim();
    if t.contains(['.', 'e', 'E']) {
        return Err(Error::InvalidInput(format!(
            "alpha `{t}` must be an exact rational such as 1/3; floating point is not accepted"
        )));
    }
    let r: BigRational = t
        .parse()
        .map_err(|_| Error::InvalidInput(format!("alpha `{t}` is not a rational num/den")))?;
    Ok(r)
}

/// Split on top-level ';' and parse "(a, b)" vectors or bare polynomials.
fn parse_gens(text: &str, ring: Ring) -> Result<(usize, Vec<VectorR>)> {
    let mut rank: Option<usize> = None;
    let mut out = Vec::new();
    for piece in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let entries: Vec<&str> = match piece.strip_prefix('(') {
            Some(rest) => rest
                .strip_suffix(')')
                .ok_or_else(|| Error::InvalidInput(format!("unclosed vector `{piece}`")))?
                .split(',')
                .map(str::trim)
                .collect(),
            None => vec![piece],
        };
        let polys = entries
            .iter()
            .map(|s| Poly::parse(s, ring))
            .collect::<Result<Vec<_>>>()?;
        match rank {
            None => rank = Some(polys.len()),
            Some(r) if r != polys.len() => {
                return Err(Error::RankMismatch {
                    expected: r,
                    found: polys.len(),
                })
            }
            _ => {}
        }
        out.push(VectorR::new(ring, polys)?);
    }
    Ok((rank.unwrap_or(1), out))
}

fn load(path: &str) -> Result<Problem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?;
    Problem::from_json_str(&text).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::InvalidInput(format!("{path}: {msg}")),
        other => other,
    })
}

/// `{"num": .., "den": ..}` with `i64` fields when they fit, strings otherwise.
fn frac(r: &BigRational) -> Value {
    match small_parts(r) {
        Some((n, d)) => json!({"num": n, "den": d}),
        None => json!({"num": r.numer().to_string(), "den": r.denom().to_string()}),
    }
}

/// Keyed by level, in numeric order.
struct LevelMap(Vec<(u32, Value)>);

impl Serialize for LevelMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(&k.to_string(), v)?;
        }
        m.end()
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn module_lines(m: &Submodule) -> String {
    if m.is_zero() {
        return "0".to_string();
    }
    m.generator_strings().join("\n")
}

fn fracs_text(rs: &[BigRational]) -> String {
    if rs.is_empty() {
        return "{}".into();
    }
    let parts: Vec<String> = rs.iter().map(|r| r.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn dispatch(cmd: Command) -> Result<String> {
    match cmd {
        Command::Froot {
            field,
            gens,
            e,
            common,
        } => {
            let (cfg, ring) = ring_for(&field, &[&gens])?;
            let (rank, vs) = parse_gens(&gens, ring)?;
            let n = Submodule::new(ring, rank, vs)?;
            let root = frobenius_root(&n, e, &cfg)?;
            Ok(if common.json {
                to_json(&root.generator_strings())
            } else {
                module_lines(&root)
            })
        }
        Command::Tau {
            field,
            f,
            alpha,
            e,
            e_cap,
            common,
        } => {
            let (cfg, ring) = ring_for(&field, &[&f])?;
            let f = Poly::parse(&f, ring)?;
            let alpha = parse_alpha(&alpha)?;
            let ideal = match e {
                Some(e) => tau_f(&f, &alpha, e, &cfg)?,
                None => tau_f_stable(&f, &alpha, &cfg, e_cap)?,
            };
            Ok(if common.json {
                to_json(&ideal.generator_strings())
            } else {
                module_lines(&ideal)
            })
        }
        Command::Fjump {
            field,
            f,
            e_max,
            common,
        } => {
            let (cfg, ring) = ring_for(&field, &[&f])?;
            let f = Poly::parse(&f, ring)?;
            let xs = f_jumping_exponents(&f, &cfg, e_max)?;
            Ok(if common.json {
                to_json(&xs.iter().map(frac).collect::<Vec<_>>())
            } else {
                fracs_text(&xs)
            })
        }
        Command::Hexpand { input, e, common } => {
            let pb = load(&input)?;
            let fam = h_expand(&pb.a, e, &pb.cfg)?;
            if common.json {
                let table: Vec<Value> = fam
                    .table
                    .iter()
                    .map(|(n, m)| json!({"n": n.to_string(), "matrix": m.to_strings()}))
                    .collect();
                Ok(to_json(&json!({"e": e, "tau_bound": fam.tau_bound, "table": table})))
            } else {
                let mut lines = vec![format!("e = {e}, deg_tau bound = {}", fam.tau_bound)];
                for (n, m) in &fam.table {
                    lines.push(format!("H_{n} = {m}"));
                }
                Ok(lines.join("\n"))
            }
        }
        Command::Sset { input, e, common } => {
            let pb = load(&input)?;
            let report = s_set(&pb.list, e, &pb.cfg)?;
            let vals = report.jump_values();
            Ok(if common.json {
                to_json(&json!({"e": e, "jumps": vals.iter().map(frac).collect::<Vec<_>>()}))
            } else {
                format!("S_{e} = {}", fracs_text(&vals))
            })
        }
        Command::Jumps {
            input,
            e_max,
            common,
        } => {
            let pb = load(&input)?;
            let report = estimate_jumping_numbers(&pb.list, &pb.cfg, e_max)?;
            if common.json {
                let chains: Vec<Value> = report
                    .chains
                    .iter()
                    .map(|c| {
                        let w: Vec<Value> = c
                            .witnesses
                            .iter()
                            .map(|(e, g)| {
                                let mut v = frac(&g.value());
                                v["e"] = json!(e);
                                v
                            })
                            .collect();
                        json!({"witnesses": w, "lambda": c.lambda.as_ref().map(frac)})
                    })
                    .collect();
                let s_sets = LevelMap(
                    report
                        .s_sets
                        .iter()
                        .map(|s| (s.e, json!(s.jump_values().iter().map(frac).collect::<Vec<_>>())))
                        .collect(),
                );
                Ok(to_json(&json!({
                    "jumping_numbers": report.jumping_numbers.iter().map(frac).collect::<Vec<_>>(),
                    "chains": chains,
                    "s_sets": serde_json::to_value(&s_sets).expect("map"),
                })))
            } else {
                let mut lines: Vec<String> = report
                    .s_sets
                    .iter()
                    .map(|s| format!("S_{} = {}", s.e, fracs_text(&s.jump_values())))
                    .collect();
                lines.push(format!("jumping numbers = {}", fracs_text(&report.jumping_numbers)));
                let n = report.unresolved().len();
                if n > 0 {
                    lines.push(format!("unresolved chains: {n}"));
                }
                Ok(lines.join("\n"))
            }
        }
        Command::Bfun {
            input,
            e_max,
            common,
        } => {
            let pb = load(&input)?;
            let b = b_function(&pb.a, &pb.cfg, e_max)?;
            if common.json {
                let unresolved: Vec<Value> = b
                    .unresolved
                    .iter()
                    .map(|c| json!(c.witnesses.iter().map(|(_, g)| frac(&g.value())).collect::<Vec<_>>()))
                    .collect();
                let s_sets = LevelMap(
                    b.s_set_values()
                        .into_iter()
                        .map(|(e, v)| (e, json!(v.iter().map(frac).collect::<Vec<_>>())))
                        .collect(),
                );
                Ok(to_json(&json!({
                    "roots": b.roots.iter().map(frac).collect::<Vec<_>>(),
                    "shift_N": b.shift_n,
                    "unresolved": unresolved,
                    "s_sets": serde_json::to_value(&s_sets).expect("map"),
                    "divides_only": b.divides_only,
                    "polynomial": b.display_polynomial(),
                    "diagnostics": b.diagnostics,
                })))
            } else {
                let mut lines = vec![format!("b(s) = {}", b.display_polynomial())];
                if b.divides_only {
                    lines[0].push_str("  (upper bound in the divisibility order)");
                }
                lines.push(format!("shift N = {}", b.shift_n));
                for (e, v) in b.s_set_values() {
                    lines.push(format!("S_{e} = {}", fracs_text(&v)));
                }
                lines.extend(b.diagnostics.iter().map(|d| format!("note: {d}")));
                Ok(lines.join("\n"))
            }
        }
        Command::Graphgen { field, f, common } => {
            let (cfg, ring) = ring_for(&field, &[&f])?;
            let f = Poly::parse(&f, ring)?;
            let a = graph_generator(&f, &cfg)?;
            let pb = Problem::matrix_json(&cfg, ring.nvars(), &a);
            Ok(if common.json {
                to_json(&pb)
            } else {
                serde_json::to_string_pretty(&pb).expect("serializable")
            })
        }
    }
}
