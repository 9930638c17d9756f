use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use plane_trees::book::{compile_book, solve_book};
use plane_trees::cylindrical::{compile_layout, solve_cylindrical, SweepOptions};
use plane_trees::generators::{gen_book, gen_coloring, gen_cylindrical, gen_points_colored};
use plane_trees::io::{self, Instance};
use plane_trees::monotone::{solve_monotone, MonotoneDrawing};
use plane_trees::pseudolinear::{compile_points, solve_pseudolinear};
use plane_trees::search::{
    find_plane_tree_with, verify_class_records, verify_conjecture1, SearchMode, VerificationReport, VerifyOptions,
    LONG_RUN_ENV, THREADS_ENV,
};
use plane_trees::svg::{render_book, render_cylindrical, render_points};
use plane_trees::{validate_drawing, Drawing, EdgeColoring, SolveReport, Status};

const OK: u8 = 0;
const INPUT_ERROR: u8 = 1;
const COUNTEREXAMPLE: u8 = 2;

#[derive(Parser)]
#[command(name = "plane-trees", version, about = "Monochromatic and hypochromatic plane spanning trees in edge-colored drawings of K_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveClass {
    Cylindrical,
    Book,
    Pseudolinear,
    Monotone,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenClass {
    Cylindrical,
    Book,
    Points,
    Coloring,
}

#[derive(Subcommand)]
enum Command {
    /// Check a file against its format and the simple-drawing axioms.
    Validate { file: PathBuf },
    /// Construct a tree with the solver for a drawing class.
    Solve {
        #[arg(long, value_enum)]
        class: SolveClass,
        file: PathBuf,
        /// Coloring file replacing the instance's own colors.
        #[arg(long)]
        colors: Option<PathBuf>,
        /// Check the sweep invariants at every step.
        #[arg(long)]
        assert_invariants: bool,
    },
    /// Exhaustive search over all spanning trees.
    Brute {
        file: PathBuf,
        /// mono, mono:<c>, avoid:<c> or hypo
        #[arg(long)]
        mode: String,
        #[arg(long)]
        colors: Option<PathBuf>,
        /// Lift the n <= 10 enumeration guard (hard ceiling 16).
        #[arg(long)]
        allow_large: bool,
    },
    /// Check every 2-coloring of a drawing for a monochromatic plane
    /// spanning tree.
    #[command(after_help = "\
Runs with n >= 7 are refused unless --long-run is given. Checking every drawing of K_7 \
is a long run; K_8 has 5,370,725 weak isomorphism classes with more than 10^8 colorings \
each, beyond exhaustive reach. A class file holds one drawing per line: \
`n;a-b c-d,a-b c-d,...`.")]
    Verify {
        /// Drawing, layout or class file.
        file: Option<PathBuf>,
        /// Generate the drawing instead of reading it.
        #[arg(long, value_enum, conflicts_with = "file")]
        gen: Option<GenClass>,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// First class-file record to check.
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long, env = LONG_RUN_ENV)]
        long_run: bool,
        #[arg(long, env = THREADS_ENV)]
        threads: Option<usize>,
    },
    /// Print a seeded random instance.
    Gen {
        #[arg(long, value_enum)]
        class: GenClass,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Inner circle size for cylindrical layouts; defaults to n / 2.
        #[arg(long)]
        inner: Option<usize>,
        /// Number of colors.
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw a layout as SVG, optionally highlighting a tree.
    Render {
        file: PathBuf,
        /// Tree file with `edge u v` lines, such as a solve report.
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn parse_file(path: &Path) -> Result<Instance> {
    io::parse_instance(&read(path)?).with_context(|| path.display().to_string())
}

fn read_colors(path: &Path, n: usize) -> Result<EdgeColoring> {
    io::parse_coloring(&read(path)?, n).with_context(|| path.display().to_string())
}

fn status_code(r: &SolveReport) -> u8 {
    match r.status {
        Status::TreeFound => OK,
        Status::Counterexample => COUNTEREXAMPLE,
        Status::NotApplicable => INPUT_ERROR,
    }
}

fn compiled(inst: Instance) -> Result<(Drawing, Option<EdgeColoring>)> {
    Ok(match inst {
        Instance::Drawing(d, c) => (d, c),
        Instance::Cylindrical(l) => (compile_layout(&l)?, Some(l.coloring().clone())),
        Instance::Book(b) => (compile_book(&b), Some(b.coloring().clone())),
        Instance::Points(p) => (compile_points(&p), Some(p.coloring().clone())),
        Instance::Classes(_) => bail!("expected a single drawing, found a class file"),
    })
}

fn validate(file: &Path) -> Result<u8> {
    let drawings = match parse_file(file)? {
        Instance::Classes(ds) => ds,
        other => {
            let kind = other.to_string();
            let (d, _) = compiled(other).with_context(|| format!("{kind} does not compile"))?;
            vec![d]
        }
    };
    let mut bad = 0;
    for (i, d) in drawings.iter().enumerate() {
        let violations = validate_drawing(d);
        for v in &violations {
            println!("violation.{i}={v}");
        }
        bad += usize::from(!violations.is_empty());
    }
    println!("drawings={}", drawings.len());
    println!("valid={}", bad == 0);
    Ok(if bad == 0 { OK } else { INPUT_ERROR })
}

fn solve(class: SolveClass, file: &Path, colors: Option<&Path>, assert_invariants: bool) -> Result<u8> {
    let inst = parse_file(file)?;
    let report = match (class, inst) {
        (SolveClass::Cylindrical, Instance::Cylindrical(mut l)) => {
            if let Some(p) = colors {
                let c = read_colors(p, l.n())?;
                l = l.with_coloring(c)?;
            }
            solve_cylindrical(&l, SweepOptions { assert_invariants })?
        }
        (SolveClass::Book, Instance::Book(mut b)) => {
            if let Some(p) = colors {
                let c = read_colors(p, b.n())?;
                b = b.with_coloring(c)?;
            }
            solve_book(&b)?
        }
        (SolveClass::Pseudolinear, Instance::Points(mut p)) => {
            if let Some(path) = colors {
                let c = read_colors(path, p.n())?;
                p = p.with_coloring(c)?;
            }
            solve_pseudolinear(&p)?
        }
        (SolveClass::Monotone, inst) => {
            let (m, c) = match inst {
                Instance::Points(p) => (MonotoneDrawing::from_points(&p), Some(p.coloring().clone())),
                Instance::Drawing(d, c) => (MonotoneDrawing::trusted(d)?, c),
                other => bail!("monotone solving needs a points file or a drawing with x labels, found {other}"),
            };
            let c = match colors {
                Some(p) => read_colors(p, m.drawing().n())?,
                None => c.ok_or_else(|| anyhow!("no coloring; pass --colors"))?,
            };
            let r = solve_monotone(&m, &c)?;
            if let Some(x) = r.removed {
                println!("removed={x}");
            }
            println!("groups={}", r.groups.len());
            r.report
        }
        (_, other) => bail!("solver class does not accept a {other} file"),
    };
    print!("{}", report.to_text());
    Ok(status_code(&report))
}

fn parse_mode(mode: &str) -> Result<SearchMode> {
    let color = |s: &str| s.parse::<usize>().with_context(|| format!("bad color in mode {mode:?}"));
    Ok(match mode.split_once(':') {
        None if mode == "mono" => SearchMode::Monochromatic(None),
        None if mode == "hypo" => SearchMode::Hypochromatic,
        Some(("mono", c)) => SearchMode::Monochromatic(Some(color(c)?)),
        Some(("avoid", c)) => SearchMode::Avoid(color(c)?),
        _ => bail!("unknown mode {mode:?}; expected mono, mono:<c>, avoid:<c> or hypo"),
    })
}

fn brute(file: &Path, mode: &str, colors: Option<&Path>, allow_large: bool) -> Result<u8> {
    let mode = parse_mode(mode)?;
    let (d, c) = compiled(parse_file(file)?)?;
    let c = match colors {
        Some(p) => read_colors(p, d.n())?,
        None => c.ok_or_else(|| anyhow!("no coloring; pass --colors"))?,
    };
    if let SearchMode::Monochromatic(Some(x)) | SearchMode::Avoid(x) = mode {
        if x >= c.k() {
            bail!("color index out of range: {x} with k={}", c.k());
        }
    }
    let report = find_plane_tree_with(&d, &c, mode, allow_large)?;
    print!("{}", report.to_text());
    Ok(status_code(&report))
}

fn print_verification(r: &VerificationReport) {
    println!("n={}", r.n);
    println!("colorings_checked={}", r.colorings_checked);
    println!("failures={}", r.failure_count);
    for c in &r.failures {
        let bits: Vec<String> = c.as_slice().iter().map(|x| x.to_string()).collect();
        println!("failing_coloring={}", bits.join(""));
    }
}

fn generated_drawing(class: GenClass, n: usize, seed: u64) -> Result<Drawing> {
    Ok(match class {
        GenClass::Cylindrical => compile_layout(&gen_cylindrical(n / 2, n - n / 2, seed)?)?,
        GenClass::Book => compile_book(&gen_book(n, seed)?),
        GenClass::Points => compile_points(&gen_points_colored(n, 2, seed)?),
        GenClass::Coloring => bail!("a coloring is not a drawing"),
    })
}

fn verify(file: Option<&Path>, gen: Option<GenClass>, n: usize, seed: u64, start: usize, opts: VerifyOptions) -> Result<u8> {
    let drawings = match (file, gen) {
        (Some(path), _) => match parse_file(path)? {
            Instance::Classes(ds) => ds,
            other => vec![compiled(other)?.0],
        },
        (None, Some(class)) => vec![generated_drawing(class, n, seed)?],
        (None, None) => bail!("give a file or --gen <class>"),
    };
    if drawings.len() == 1 && start == 0 {
        let r = verify_conjecture1(&drawings[0], opts)?;
        print_verification(&r);
        println!("status={}", if r.passed() { "verified" } else { "counterexample" });
        return Ok(if r.passed() { OK } else { COUNTEREXAMPLE });
    }
    let batch = verify_class_records(&drawings, start, opts)?;
    println!("records_verified={}", batch.records_verified);
    println!("colorings_checked={}", batch.colorings_checked);
    println!("next_index={}", batch.next_index);
    for (i, r) in &batch.failing {
        println!("failing_record={i} failures={}", r.failure_count);
    }
    let passed = batch.failing.is_empty();
    println!("status={}", if passed { "verified" } else { "counterexample" });
    Ok(if passed { OK } else { COUNTEREXAMPLE })
}

fn gen(class: GenClass, seed: u64, n: usize, inner: Option<usize>, k: usize, output: Option<&Path>) -> Result<u8> {
    let text = match class {
        GenClass::Cylindrical => {
            let ni = inner.unwrap_or(n / 2);
            if ni > n {
                bail!("--inner {ni} exceeds --n {n}");
            }
            let mut l = gen_cylindrical(ni, n - ni, seed)?;
            if k != 2 {
                l = l.with_coloring(gen_coloring(n, k, seed)?)?;
            }
            io::serialize_cylindrical(&l)
        }
        GenClass::Book => {
            let mut b = gen_book(n, seed)?;
            if k != 2 {
                b = b.with_coloring(gen_coloring(n, k, seed)?)?;
            }
            io::serialize_book(&b)
        }
        GenClass::Points => io::serialize_points(&gen_points_colored(n, k, seed)?),
        GenClass::Coloring => io::serialize_coloring(&gen_coloring(n, k, seed)?),
    };
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(OK)
}

fn render(file: &Path, tree: Option<&Path>, output: &Path) -> Result<u8> {
    let inst = parse_file(file)?;
    let n = match &inst {
        Instance::Cylindrical(l) => l.n(),
        Instance::Book(b) => b.n(),
        Instance::Points(p) => p.n(),
        other => bail!("rendering needs a layout (cylindrical, book or points), found {other}"),
    };
    if n > 50 {
        bail!("rendering is limited to 50 vertices, got {n}");
    }
    let tree = match tree {
        Some(p) => Some(io::parse_tree(&read(p)?, n).with_context(|| p.display().to_string())?),
        None => None,
    };
    let svg = match &inst {
        Instance::Cylindrical(l) => render_cylindrical(l, tree.as_ref()),
        Instance::Book(b) => render_book(b, tree.as_ref()),
        Instance::Points(p) => render_points(p, tree.as_ref()),
        _ => unreachable!(),
    };
    fs::write(output, svg).with_context(|| format!("cannot write {}", output.display()))?;
    println!("written={}", output.display());
    Ok(OK)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Solve { class, file, colors, assert_invariants } => solve(class, &file, colors.as_deref(), assert_invariants),
        Command::Brute { file, mode, colors, allow_large } => brute(&file, &mode, colors.as_deref(), allow_large),
        Command::Verify { file, gen, n, seed, start, long_run, threads } => {
            verify(file.as_deref(), gen, n, seed, start, VerifyOptions { long_run, threads })
        }
        Command::Gen { class, seed, n, inner, k, output } => gen(class, seed, n, inner, k, output.as_deref()),
        Command::Render { file, tree, output } => render(&file, tree.as_deref(), &output),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
