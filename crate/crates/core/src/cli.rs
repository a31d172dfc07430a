//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a hypothesis is missing or unverifiable,
//! 2 on malformed input.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::abelian::{FgAbGroup, PrimeSet};
use crate::ahomology::{
    a_homology, a_homology_range, check_suspension_axiom, check_wedge_axiom, moore_a_homology_ses,
};
use crate::chains::ChainComplex;
use crate::corpus;
use crate::error::{Error, Result};
use crate::federer::{
    collapse_report, federer_e2, hopf_whitney, moore_homotopy_ses, relative_federer_e2,
    relative_hopf_whitney, torsion_class_check, HomotopyTable, Variant,
};
use crate::spaces::SpaceRecipe;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "cwtop",
    version,
    about = "A-homology and Federer E2-pages of finite CW-complexes"
)]
pub struct Cli {
    #[arg(long = "out", value_enum, default_value_t = OutputMode::Text, global = true)]
    pub out: OutputMode,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced integral homology H_n(X).
    Homology {
        #[arg(long = "X")]
        x: SpaceRecipe,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Cohomology H^n(X; G).
    Cohomology {
        #[arg(long = "X")]
        x: SpaceRecipe,
        #[arg(long = "G", default_value = "Z")]
        g: FgAbGroup,
        #[arg(long)]
        degree: Option<usize>,
        /// Compute from the cochain complex instead of universal coefficients.
        #[arg(long)]
        direct: bool,
    },
    /// A-homology H^A_n(X).
    Ahomology {
        #[arg(long = "A")]
        a: SpaceRecipe,
        #[arg(long = "X")]
        x: SpaceRecipe,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// E2-page of the Federer spectral sequence.
    FedererE2 {
        #[arg(long = "A")]
        a: SpaceRecipe,
        /// Homotopy table JSON file.
        #[arg(long)]
        table: PathBuf,
    },
    /// What the E2-page determines about degree n.
    Diagonal {
        #[arg(long = "A")]
        a: SpaceRecipe,
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        n: i64,
    },
    /// [K, Y] from pi_n(Y), or the relative version with --relative.
    HopfWhitney {
        #[arg(long = "K")]
        k: SpaceRecipe,
        #[arg(long = "pi")]
        pi: FgAbGroup,
        /// Assert that Y is a loop space.
        #[arg(long)]
        loop_space: bool,
        /// Maps of pairs (CK, K) -> (Y, B); --pi is then pi_{n+1}(Y, B).
        #[arg(long)]
        relative: bool,
    },
    /// End terms of the Moore-space short exact sequence.
    MooreSes {
        #[arg(long = "G")]
        g: FgAbGroup,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// A-homology version: the target complex.
        #[arg(
            long = "X",
            conflicts_with = "table",
            required_unless_present = "table"
        )]
        x: Option<SpaceRecipe>,
        /// A-homotopy version: homotopy table of the target.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Torsion-class propagation for a set of primes.
    TorsionCheck {
        #[arg(long = "A")]
        a: SpaceRecipe,
        #[arg(long)]
        table: PathBuf,
        /// Comma-separated primes.
        #[arg(long, value_parser = parse_primes)]
        primes: PrimeSet,
    },
    /// Suspension and wedge axioms of A-homology.
    Axioms {
        #[arg(long = "A")]
        a: SpaceRecipe,
        /// Repeat to wedge several complexes; the first is also suspended.
        #[arg(long = "X", required = true)]
        x: Vec<SpaceRecipe>,
        #[arg(long)]
        n: usize,
    },
    /// Run the built-in verification suite.
    Corpus,
}

fn parse_primes(s: &str) -> std::result::Result<PrimeSet, String> {
    let primes = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("{t:?} is not a prime"))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    PrimeSet::new(primes).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: if e.is_refusal() { 1 } else { 2 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn build(r: &SpaceRecipe) -> Result<ChainComplex> {
    Ok(r.build()?)
}

fn read_table(path: &Path) -> Result<HomotopyTable> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    HomotopyTable::from_json(&text)
}

fn render(mode: OutputMode, text: String, value: Value) -> String {
    match mode {
        OutputMode::Text => text,
        OutputMode::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("serializable");
            s.push('\n');
            s
        }
    }
}

fn degrees(c: &ChainComplex, degree: Option<usize>) -> Vec<usize> {
    match degree {
        Some(n) => vec![n],
        None => (0..=c.dim()).collect(),
    }
}

fn graded(label: &str, pairs: &[(usize, FgAbGroup)]) -> (String, Value) {
    let mut text = String::new();
    let mut map = serde_json::Map::new();
    for (n, g) in pairs {
        text.push_str(&format!("{}{n} = {g}\n", label));
        map.insert(n.to_string(), Value::String(g.to_string()));
    }
    (text, Value::Object(map))
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let out = cli.out;
    let ok = |text: String, value: Value| Ok((0, render(out, text, value)));
    match &cli.command {
        Command::Homology { x, degree } => {
            let x = build(x)?;
            let pairs: Vec<_> = degrees(&x, *degree)
                .into_iter()
                .map(|n| (n, x.homology(n)))
                .collect();
            let (text, value) = graded("H_", &pairs);
            ok(text, value)
        }
        Command::Cohomology {
            x,
            g,
            degree,
            direct,
        } => {
            let x = build(x)?;
            let pairs: Vec<_> = degrees(&x, *degree)
                .into_iter()
                .map(|n| {
                    let h = if *direct {
                        x.cohomology_direct(n, g)
                    } else {
                        x.cohomology_uct(n, g)
                    };
                    (n, h)
                })
                .collect();
            let (text, value) = graded("H^", &pairs);
            ok(text, value)
        }
        Command::Ahomology { a, x, degree } => {
            let (a, x) = (build(a)?, build(x)?);
            match degree {
                Some(n) => {
                    let h = a_homology(&a, &x, *n);
                    ok(
                        format!("H^A_{n}(X) = {h}\n"),
                        json!({ n.to_string(): h.to_string() }),
                    )
                }
                None => {
                    let report = a_homology_range(&a, &x);
                    let code = if report.violations.is_empty() { 0 } else { 2 };
                    Ok((code, render(out, report.render_text(), report.to_json())))
                }
            }
        }
        Command::FedererE2 { a, table } => {
            let a = build(a)?;
            let t = read_table(table)?;
            let page = match t.variant() {
                Variant::Absolute => federer_e2(&a, &t)?,
                Variant::Relative => relative_federer_e2(&a, &t)?,
            };
            ok(page.render_text(), page.to_json())
        }
        Command::Diagonal { a, table, n } => {
            let a = build(a)?;
            let t = read_table(table)?;
            let page = match t.variant() {
                Variant::Absolute => federer_e2(&a, &t)?,
                Variant::Relative => relative_federer_e2(&a, &t)?,
            };
            let v = collapse_report(&page, *n)?;
            ok(v.render_text(), v.to_json())
        }
        Command::HopfWhitney {
            k,
            pi,
            loop_space,
            relative,
        } => {
            let k = build(k)?;
            if *relative {
                let g = relative_hopf_whitney(&k, pi)?;
                return ok(
                    format!("[(CK,K); (Y,B)] = {g}\nstructure: group\n"),
                    json!({"group": g.to_string(), "structure": "group"}),
                );
            }
            let h = hopf_whitney(&k, pi, *loop_space)?;
            let mut text = format!(
                "[K, Y] = {}\nstructure: {}\n",
                h.group,
                h.structure.as_str()
            );
            for note in &h.notes {
                text.push_str(&format!("  note: {note}\n"));
            }
            ok(
                text,
                json!({"group": h.group.to_string(), "structure": h.structure.as_str(), "notes": h.notes}),
            )
        }
        Command::MooreSes { g, m, n, x, table } => match (x, table) {
            (Some(x), _) => {
                let x = build(x)?;
                let s = moore_a_homology_ses(g, *m, &x, *n)?;
                let order = s.order_identity();
                let text = format!(
                    "0 -> {} -> H^A_{n}(X) = {} -> {} -> 0\nexponent bound: {}\norder identity: {}\n",
                    s.ext_part,
                    s.middle,
                    s.hom_part,
                    s.exponent_bound(),
                    order.map_or("n/a (infinite)".to_string(), |b| b.to_string()),
                );
                ok(
                    text,
                    json!({
                        "ext": s.ext_part.to_string(),
                        "hom": s.hom_part.to_string(),
                        "middle": s.middle.to_string(),
                        "exponent_bound": s.exponent_bound().to_string(),
                        "order_identity": order,
                    }),
                )
            }
            (None, Some(path)) => {
                let t = read_table(path)?;
                let s = moore_homotopy_ses(g, *m, &t, *n)?;
                let middle = s.determined_middle();
                let order = s.order_product().map(|o| o.to_string());
                let mut text = format!(
                    "0 -> {} -> pi^A_{n}(X) -> {} -> 0\nexponent bound: {}\n",
                    s.ext_part,
                    s.hom_part,
                    s.exponent_bound()
                );
                if let Some(o) = &order {
                    text.push_str(&format!("order: {o}\n"));
                }
                if let Some(mid) = &middle {
                    text.push_str(&format!("determined: pi^A_{n}(X) = {mid}\n"));
                }
                ok(
                    text,
                    json!({
                        "ext": s.ext_part.to_string(),
                        "hom": s.hom_part.to_string(),
                        "exponent_bound": s.exponent_bound().to_string(),
                        "order": order,
                        "determined": middle.map(|g| g.to_string()),
                    }),
                )
            }
            (None, None) => Err(Error::Input("moore-ses needs --X or --table".into())),
        },
        Command::TorsionCheck { a, table, primes } => {
            let a = build(a)?;
            let t = read_table(table)?;
            let r = torsion_class_check(&a, &t, primes)?;
            let mut text = format!("primes: {}\nhypothesis: {}\n", r.primes, r.hypothesis_holds);
            for (j, h) in &r.failing_homology {
                text.push_str(&format!("  H_{j}(A) = {h} is not in the class\n"));
            }
            text.push_str(&format!(
                "all E2 entries in class: {}\n",
                r.all_entries_in_class
            ));
            for (p, q, g) in &r.failing_entries {
                text.push_str(&format!("  E2({p},{q}) = {g}\n"));
            }
            for (n, c) in &r.conclusions {
                text.push_str(&format!("pi^A_{n} in class: {c}\n"));
            }
            let conclusions: serde_json::Map<String, Value> = r
                .conclusions
                .iter()
                .map(|(n, c)| (n.to_string(), Value::Bool(*c)))
                .collect();
            ok(
                text,
                json!({
                    "primes": r.primes.to_string(),
                    "hypothesis": r.hypothesis_holds,
                    "all_entries_in_class": r.all_entries_in_class,
                    "conclusions": conclusions,
                }),
            )
        }
        Command::Axioms { a, x, n } => {
            let a = build(a)?;
            let xs = x.iter().map(build).collect::<Result<Vec<_>>>()?;
            let s = check_suspension_axiom(&a, &xs[0], *n);
            let w = check_wedge_axiom(&a, &xs, *n);
            let text = format!(
                "suspension: {} vs {} ({})\nwedge: {} vs {} ({})\n",
                s.lhs,
                s.rhs,
                pass(s.holds()),
                w.lhs,
                w.rhs,
                pass(w.holds())
            );
            let code = if s.holds() && w.holds() { 0 } else { 2 };
            let value = json!({
                "suspension": {"lhs": s.lhs.to_string(), "rhs": s.rhs.to_string(), "holds": s.holds()},
                "wedge": {"lhs": w.lhs.to_string(), "rhs": w.rhs.to_string(), "holds": w.holds()},
            });
            Ok((code, render(out, text, value)))
        }
        Command::Corpus => {
            let outcomes = corpus::run_all();
            let all = outcomes.iter().all(|o| o.passed);
            let text: String = outcomes.iter().map(|o| o.line() + "\n").collect();
            let value = Value::Array(
                outcomes
                    .iter()
                    .map(|o| json!({"name": o.name, "passed": o.passed, "detail": o.detail}))
                    .collect(),
            );
            Ok((if all { 0 } else { 2 }, render(out, text, value)))
        }
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "FAILS"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Outcome {
        run(std::iter::once("cwtop").chain(args.iter().copied()))
    }

    #[test]
    fn ahomology_example() {
        let o = cli(&["ahomology", "--A", "rp:2", "--X", "sphere:4"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let lines: Vec<&str> = o.stdout.lines().take(5).collect();
        assert_eq!(
            lines,
            [
                "H^A_0(X) = 0",
                "H^A_1(X) = 0",
                "H^A_2(X) = Z/2",
                "H^A_3(X) = 0",
                "H^A_4(X) = 0"
            ]
        );
    }

    #[test]
    fn hopf_whitney_example() {
        let o = cli(&["hopf-whitney", "--K", "sphere:3", "--pi", "Z/5"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.starts_with("[K, Y] = Z/5\nstructure: group\n"));
        let o = cli(&["--out", "json", "hopf-whitney", "--K", "rp:2", "--pi", "Z"]);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["group"], "Z/2");
        assert_eq!(v["structure"], "set-with-group-cardinality");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            cli(&["hopf-whitney", "--K", "sphere:1", "--pi", "Z"]).code,
            1
        );
        assert_eq!(
            cli(&["hopf-whitney", "--K", "rp:2", "--pi", "Z", "--relative"]).code,
            1
        );
        assert_eq!(cli(&["homology", "--X", "torus:2"]).code, 2);
        assert_eq!(cli(&["homology", "--X", "sphere:0"]).code, 2);
        assert_eq!(cli(&["cohomology", "--X", "rp:2", "--G", "Z/0"]).code, 2);
        assert_eq!(cli(&["homology", "--X", "file:/nonexistent.json"]).code, 2);
        assert_eq!(cli(&["frobnicate"]).code, 2);
        assert_eq!(cli(&["--help"]).code, 0);
    }

    #[test]
    fn homology_and_cohomology() {
        let o = cli(&["homology", "--X", "rp:3"]);
        assert_eq!(o.stdout, "H_0 = 0\nH_1 = Z/2\nH_2 = 0\nH_3 = Z\n");
        let o = cli(&["cohomology", "--X", "rp:2", "--G", "Z/2", "--degree", "1"]);
        assert_eq!(o.stdout, "H^1 = Z/2\n");
        let a = cli(&[
            "--out",
            "json",
            "cohomology",
            "--X",
            "moore:Z/6:2",
            "--G",
            "Z/4",
        ]);
        let b = cli(&[
            "--out",
            "json",
            "cohomology",
            "--X",
            "moore:Z/6:2",
            "--G",
            "Z/4",
            "--direct",
        ]);
        assert_eq!(a, b);
    }

    #[test]
    fn deterministic_json() {
        let args = [
            "--out",
            "json",
            "ahomology",
            "--A",
            "moore:Z/4:1",
            "--X",
            "rp:5",
        ];
        assert_eq!(cli(&args), cli(&args));
    }
}
