//! The `glmn` command line: argument parsing and command dispatch.
//!
//! [`run`] takes its streams as parameters so the whole front end can be
//! driven from tests. Exit codes: 0 success, 1 a verification failed,
//! 2 usage or domain error.

use std::fmt;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use glmn_core::decomp::TheoremAReport;
use glmn_core::rng::{random_diagram, Lcg};
use glmn_core::*;
use itertools::Itertools;
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "glmn", version, about = "Composition factors of Kac modules for gl(m|n) via weight and cap diagrams")]
struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct DiagramArg {
    /// Serialized diagram such as `x:9,6,5,1,0;gt:7;lt:3`, or `-` to read
    /// one diagram per line from stdin.
    #[arg(long, allow_hyphen_values = true)]
    diagram: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Composition factors of K(f), as diagrams and weight tuples.
    Decompose {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "weight", conflicts_with = "weight")]
        diagram: Option<String>,
        /// ρ-shifted tuple `a1,..,am|b1,..,bn`.
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        /// Read `--weight` as ε/δ coefficients and apply the ρ-shift.
        #[arg(long, requires = "weight")]
        epsdelta: bool,
    },
    /// The 2^k Kac modules having L(f) as a composition factor.
    Containing(DiagramArg),
    /// Apply σ_i, or the product (1+σ_1)…(1+σ_k).
    Sigma {
        #[command(flatten)]
        d: DiagramArg,
        #[arg(long, conflicts_with = "product", required_unless_present = "product")]
        i: Option<usize>,
        #[arg(long)]
        product: bool,
    },
    /// P(f) by brute-force matching.
    Match(DiagramArg),
    /// Increasing paths between two core-free diagrams.
    Paths {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long)]
        regular_only: bool,
    },
    /// Ext¹ between simples: a dimension, the neighbours, or a neighbourhood graph.
    Ext {
        #[command(flatten)]
        d: DiagramArg,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "radius")]
        to: Option<String>,
        /// Emit the graph within this many steps (DOT, or JSON with --json).
        #[arg(long)]
        radius: Option<u32>,
    },
    /// Draw a diagram.
    Render {
        #[command(flatten)]
        d: DiagramArg,
        #[arg(long, value_enum, default_value_t = RenderStyle::Cap)]
        style: RenderStyle,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
    },
    /// Check that the three routes to P(f) agree on a batch of diagrams.
    Verify {
        /// Largest number of crosses.
        #[arg(long, required_unless_present = "diagram")]
        k: Option<usize>,
        /// Positions `LO..HI` for the exhaustive part.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true, requires = "k")]
        window: Option<(i64, i64)>,
        /// Add this many seeded random diagrams (up to 4 core symbols).
        #[arg(long, requires = "k")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Verify listed diagrams instead (`-` for stdin).
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["k", "window", "random"])]
        diagram: Option<String>,
    },
    /// Compare |P| of the staircase diagram with the Catalan number.
    Catalan {
        #[arg(long)]
        k: u32,
    },
    /// Scan a window for counterexamples to the Catalan bound conjecture.
    Conjecture {
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: (i64, i64),
    },
    /// Multiplicity matrix of the closure of some seeds, and its inverse.
    Invert {
        /// File with one diagram per line (`-` for stdin); `#` starts a comment.
        #[arg(long)]
        seeds: PathBuf,
        /// Lowest cross position kept in the closure.
        #[arg(long, allow_hyphen_values = true)]
        floor: Option<i64>,
        /// Emit both matrices as CSV.
        #[arg(long, conflicts_with = "json")]
        csv: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RenderStyle {
    Cap,
    Weight,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RenderFormat {
    Ascii,
    Svg,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, found `{s}`"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty window {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// Why a command stopped.
#[derive(Debug)]
enum Failure {
    Domain(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Domain(e) => write!(f, "{}: {e}", e.name()),
            Failure::Usage(m) => write!(f, "usage: {m}"),
            Failure::Io(e) => write!(f, "io: {e}"),
        }
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx<'a> {
    json: bool,
    stdin: &'a mut dyn BufRead,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit_json(&mut self, v: &Value) -> std::io::Result<()> {
        writeln!(self.out, "{}", serde_json::to_string_pretty(v).expect("json value"))
    }

    /// One diagram, or every non-empty stdin line for `-`.
    fn diagrams(&mut self, arg: &str) -> Result<Vec<WeightDiagram>, Failure> {
        if arg != "-" {
            return Ok(vec![WeightDiagram::parse(arg)?]);
        }
        read_lines(self.stdin)?.iter().map(|l| WeightDiagram::parse(l).map_err(Failure::from)).collect()
    }

    /// Runs `each` per input diagram; with several inputs the JSON results
    /// are wrapped in an array.
    fn per_diagram(
        &mut self,
        arg: &str,
        mut each: impl FnMut(&WeightDiagram) -> Result<(Value, String), Failure>,
    ) -> Outcome {
        let ds = self.diagrams(arg)?;
        let batch = arg == "-";
        let mut values = Vec::new();
        for f in &ds {
            let (v, text) = each(f)?;
            if self.json {
                values.push(v);
            } else {
                self.out.write_all(text.as_bytes())?;
            }
        }
        if self.json {
            let v = if batch { Value::Array(values) } else { values.pop().unwrap_or(Value::Null) };
            self.emit_json(&v)?;
        }
        Ok(true)
    }
}

fn read_lines(r: &mut dyn BufRead) -> std::io::Result<Vec<String>> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line?;
        let t = line.split('#').next().unwrap_or("").trim();
        if !t.is_empty() {
            out.push(t.to_string());
        }
    }
    Ok(out)
}

fn names(ds: &[WeightDiagram]) -> Vec<String> {
    ds.iter().map(WeightDiagram::serialize).collect()
}

fn weight_text(f: &WeightDiagram) -> Option<String> {
    from_diagram(f).ok().map(|w| w.to_string())
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(argv: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                2
            } else {
                let _ = write!(stdout, "{e}");
                0
            };
            return code;
        }
    };
    let mut ctx = Ctx { json: cli.json, stdin, out: stdout };
    match dispatch(&mut ctx, cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn dispatch(ctx: &mut Ctx<'_>, command: Command) -> Outcome {
    match command {
        Command::Decompose { diagram, weight, epsdelta } => decompose_cmd(ctx, diagram, weight, epsdelta),
        Command::Containing(d) => ctx.per_diagram(&d.diagram, |f| {
            let ms = kac_modules_containing(f);
            let v = json!({ "diagram": f.serialize(), "kac_modules": names(&ms) });
            Ok((v, lines(&ms)))
        }),
        Command::Sigma { d, i, product } => ctx.per_diagram(&d.diagram, |f| {
            let s = if product { sigma_product(f) } else { sigma(i.unwrap_or(1), &DiagramSum::singleton(f.clone()))? };
            Ok((s.to_json(), format!("{s}\n")))
        }),
        Command::Match(d) => ctx.per_diagram(&d.diagram, |f| {
            let ms = enumerate_matching(f);
            let v = json!({ "diagram": f.serialize(), "matching": names(&ms) });
            Ok((v, lines(&ms)))
        }),
        Command::Paths { from, to, regular_only } => paths_cmd(ctx, &from, &to, regular_only),
        Command::Ext { d, to, radius } => ext_cmd(ctx, &d.diagram, to, radius),
        Command::Render { d, style, format } => ctx.per_diagram(&d.diagram, |f| {
            let st = match style {
                RenderStyle::Cap => Style::Cap,
                RenderStyle::Weight => Style::Weight,
            };
            let (text, fmt_name) = match format {
                RenderFormat::Ascii => (render_ascii(f, st), "ascii"),
                RenderFormat::Svg => (render_svg(f, st), "svg"),
            };
            let style_name = if matches!(style, RenderStyle::Cap) { "cap" } else { "weight" };
            let v = json!({ "diagram": f.serialize(), "style": style_name, "format": fmt_name, "output": text });
            Ok((v, text))
        }),
        Command::Verify { k, window, random, seed, diagram } => verify_cmd(ctx, k, window, random, seed, diagram),
        Command::Catalan { k } => catalan_cmd(ctx, k),
        Command::Conjecture { k, window } => conjecture_cmd(ctx, k, window),
        Command::Invert { seeds, floor, csv } => invert_cmd(ctx, &seeds, floor, csv),
    }
}

fn lines(ds: &[WeightDiagram]) -> String {
    ds.iter().map(|d| format!("{d}\n")).collect()
}

fn decompose_cmd(ctx: &mut Ctx<'_>, diagram: Option<String>, weight: Option<String>, epsdelta: bool) -> Outcome {
    let describe = |f: &WeightDiagram| {
        let factors = decompose(f);
        let v = json!({
            "diagram": f.serialize(),
            "weight": weight_text(f),
            "factors": factors.iter().map(|g| json!({ "diagram": g.serialize(), "weight": weight_text(g) })).collect::<Vec<_>>(),
        });
        let text: String =
            factors.iter().map(|g| format!("{g}\t{}\n", weight_text(g).unwrap_or_else(|| "-".into()))).collect();
        (v, text)
    };
    match (diagram, weight) {
        (Some(d), _) => ctx.per_diagram(&d, |f| Ok(describe(f))),
        (None, Some(w)) => {
            let w = if epsdelta { shift(&EpsilonDeltaWeight::parse(&w)?)? } else { DominantWeight::parse(&w)? };
            let (v, text) = describe(&to_diagram(&w));
            if ctx.json {
                ctx.emit_json(&v)?;
            } else {
                ctx.out.write_all(text.as_bytes())?;
            }
            Ok(true)
        }
        (None, None) => Err(Failure::Usage("decompose needs --diagram or --weight".into())),
    }
}

fn paths_cmd(ctx: &mut Ctx<'_>, from: &str, to: &str, regular_only: bool) -> Outcome {
    let f = WeightDiagram::parse(from)?;
    let g = WeightDiagram::parse(to)?;
    let all = increasing_paths(&f, &g)?;
    let coefficient: i64 = all.iter().map(Path::sign).sum();
    let shown: Vec<&Path> = all.iter().filter(|p| !regular_only || p.is_regular()).collect();
    if ctx.json {
        let v = json!({
            "from": f.serialize(),
            "to": g.serialize(),
            "coefficient": coefficient,
            "paths": shown.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
        });
        ctx.emit_json(&v)?;
    } else {
        for p in &shown {
            let labels: Vec<String> = p.labels().iter().map(|(s, t)| format!("[{s},{t}]")).collect();
            let kind = if p.is_regular() { "regular" } else { "irregular" };
            writeln!(ctx.out, "{} weight={} sign={:+} {kind}", labels.join(" "), p.weight(), p.sign())?;
        }
        writeln!(ctx.out, "paths={} coefficient={coefficient}", shown.len())?;
    }
    Ok(true)
}

fn ext_cmd(ctx: &mut Ctx<'_>, diagram: &str, to: Option<String>, radius: Option<u32>) -> Outcome {
    if let Some(to) = to {
        let g = WeightDiagram::parse(&to)?;
        return ctx.per_diagram(diagram, |f| {
            let e = ext_dim(f, &g);
            Ok((json!({ "from": f.serialize(), "to": g.serialize(), "ext_dim": e }), format!("{e}\n")))
        });
    }
    if let Some(r) = radius {
        return ctx.per_diagram(diagram, |f| {
            let c = ext_component(f, r);
            Ok((c.to_json(), c.to_dot()))
        });
    }
    ctx.per_diagram(diagram, |f| {
        let ns = ext_neighbors(f);
        let v: Vec<Value> = ns
            .iter()
            .map(|n| {
                json!({
                    "diagram": n.diagram.serialize(),
                    "direction": n.direction.as_str(),
                    "s": n.edge.start,
                    "t": n.edge.end,
                })
            })
            .collect();
        let text: String = ns
            .iter()
            .map(|n| format!("{}\t{}\t[{},{}]\n", n.direction.as_str(), n.diagram, n.edge.start, n.edge.end))
            .collect();
        Ok((Value::Array(v), text))
    })
}

fn report_json(r: &TheoremAReport) -> Value {
    json!({
        "diagram": r.diagram.serialize(),
        "pass": r.pass(),
        "factors": r.matching.len(),
        "sigma_minus_matching": r.sigma_minus_matching.to_json(),
        "only_matching": names(&r.only_matching),
        "only_recursive": names(&r.only_recursive),
        "recursion_error": r.recursion_error.as_ref().map(|e| e.to_string()),
    })
}

fn verify_cmd(
    ctx: &mut Ctx<'_>,
    k: Option<usize>,
    window: Option<(i64, i64)>,
    random: Option<usize>,
    seed: u64,
    diagram: Option<String>,
) -> Outcome {
    let mut cases: Vec<WeightDiagram> = Vec::new();
    if let Some(d) = diagram {
        cases = ctx.diagrams(&d)?;
    }
    if let Some(k) = k {
        let (lo, hi) = window.unwrap_or((0, 2 * k as i64 + 1));
        for n in 1..=k {
            cases.extend(subsets(lo, hi, n).into_iter().map(WeightDiagram::core_free));
        }
        if let Some(count) = random {
            let mut rng = Lcg::new(seed);
            cases.extend((0..count).map(|_| random_diagram(&mut rng, k, 4, lo, hi)));
        }
    }
    let reports: Vec<TheoremAReport> = cases.par_iter().map(verify_theorem_a).collect();
    let failed: Vec<&TheoremAReport> = reports.iter().filter(|r| !r.pass()).collect();
    if ctx.json {
        let v = json!({
            "total": reports.len(),
            "passed": reports.len() - failed.len(),
            "failed": failed.len(),
            "failures": failed.iter().map(|r| report_json(r)).collect::<Vec<_>>(),
        });
        ctx.emit_json(&v)?;
    } else {
        for r in &failed {
            writeln!(
                ctx.out,
                "FAIL {}: sigma-matching = {}; only matching {:?}; only recursive {:?}; {:?}",
                r.diagram,
                r.sigma_minus_matching,
                names(&r.only_matching),
                names(&r.only_recursive),
                r.recursion_error
            )?;
        }
        let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
        writeln!(
            ctx.out,
            "verified {} diagrams: {} passed, {} failed {verdict}",
            reports.len(),
            reports.len() - failed.len(),
            failed.len()
        )?;
    }
    Ok(failed.is_empty())
}

fn subsets(lo: i64, hi: i64, n: usize) -> Vec<Vec<i64>> {
    (lo..=hi).combinations(n).collect()
}

fn catalan_cmd(ctx: &mut Ctx<'_>, k: u32) -> Outcome {
    if k == 0 {
        return Err(Failure::Usage("--k must be at least 1".into()));
    }
    let r = catalan_check(k);
    if ctx.json {
        ctx.emit_json(&json!({ "k": k, "count": r.count as u64, "expected": r.expected as u64, "pass": r.pass() }))?;
    } else {
        let verdict = if r.pass() { "PASS" } else { "FAIL" };
        writeln!(ctx.out, "count={} expected={} {verdict}", r.count, r.expected)?;
    }
    Ok(r.pass())
}

fn conjecture_cmd(ctx: &mut Ctx<'_>, k: u32, (lo, hi): (i64, i64)) -> Outcome {
    if k == 0 {
        return Err(Failure::Usage("--k must be at least 1".into()));
    }
    let found = conjecture_scan(k, lo, hi);
    let bound = catalan_number(k);
    if ctx.json {
        let v = json!({
            "k": k,
            "window": [lo, hi],
            "bound": bound as u64,
            "counterexamples": found.iter().map(|c| json!({ "diagram": c.diagram.serialize(), "count": c.count as u64 })).collect::<Vec<_>>(),
        });
        ctx.emit_json(&v)?;
    } else {
        for c in &found {
            writeln!(ctx.out, "counterexample {}: |P| = {} (C_{k} = {bound})", c.diagram, c.count)?;
        }
        writeln!(ctx.out, "k={k} window={lo}..{hi}: {} counterexamples", found.len())?;
    }
    Ok(found.is_empty())
}

fn invert_cmd(ctx: &mut Ctx<'_>, seeds: &PathBuf, floor: Option<i64>, csv: bool) -> Outcome {
    let lines = if seeds.as_os_str() == "-" {
        read_lines(ctx.stdin)?
    } else {
        let text = std::fs::read_to_string(seeds)?;
        read_lines(&mut text.as_bytes())?
    };
    let seeds = lines.iter().map(|l| WeightDiagram::parse(l)).collect::<Result<Vec<_>>>()?;
    let m = matrix::multiplicity_matrix_with(&seeds, floor, matrix::DEFAULT_MAX_CLOSURE)?;
    let inv = invert_unitriangular(&m)?;
    if ctx.json {
        ctx.emit_json(&json!({ "matrix": m.to_json(), "inverse": inv.to_json() }))?;
    } else if csv {
        write!(ctx.out, "{}\n{}", m.to_csv(), inv.to_csv())?;
    } else {
        writeln!(ctx.out, "index:")?;
        for (i, f) in m.index().iter().enumerate() {
            writeln!(ctx.out, "  {i}: {f}")?;
        }
        for (title, mat) in [("matrix", &m), ("inverse", &inv)] {
            writeln!(ctx.out, "{title}:")?;
            for row in mat.to_dense() {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>2}")).collect();
                writeln!(ctx.out, "  {}", cells.join(" "))?;
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(parse_window("-3..3"), Ok((-3, 3)));
        assert_eq!(parse_window("0..0"), Ok((0, 0)));
        assert!(parse_window("3..-3").is_err());
        assert!(parse_window("0-7").is_err());
    }

    #[test]
    fn stdin_lines_skip_comments_and_blanks() {
        let mut input = "x:1 # one\n\n   \n# only a comment\ngt:2\n".as_bytes();
        assert_eq!(read_lines(&mut input).unwrap(), vec!["x:1", "gt:2"]);
    }

    #[test]
    fn failures_carry_the_error_name() {
        assert_eq!(Failure::from(Error::NotCoreFree).to_string().split(':').next(), Some("NotCoreFree"));
    }
}
