//! distinguo: compute and certify distinguishability of permutation group
//! actions from the command line.
//!
//! Finite actions come from `permgroup` files or as automorphism groups of
//! `graph` files (the loader sniffs the header); countable actions are the
//! built-in families of the library. Every report is line-oriented and ends
//! with a single `verdict:` or `result:` line; `--quiet` prints only that
//! line. Exit codes: 0 success, 1 malformed input, 2 cap or budget
//! exhaustion.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use distinguo_core::distinguish::{self, Verdict, DEFAULT_POINT_SCAN_BOUND, DEFAULT_SEARCH_BUDGET};
use distinguo_core::gl::{self, GlVerdict};
use distinguo_core::graph::{automorphism_group, parse_graph};
use distinguo_core::orbit_equiv::{self, OeOutcome};
use distinguo_core::stream::{GroupStream, StreamPoint};
use distinguo_core::{
    enumerate_elements, parse_group_file, parse_permutation, Error, FiniteAction, Result,
    DEFAULT_CAP,
};
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "distinguo", version, about = "Distinguishing numbers, motion, and orbit equivalence for permutation group actions")]
struct Cli {
    /// Print only the final verdict/result line
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal motion over nonidentity elements of a finite action
    Motion {
        /// permgroup or graph file
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Motion Lemma certificate: CERTIFIED_2 when 2^m >= |A|^2
    Certify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Exact distinguishing number with the least witness coloring
    Distinguish {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Least subset with trivial setwise stabilizer, or NoneExists
    Subset2 {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Minimum-size base (trivial pointwise stabilizer)
    Base {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Automorphism group of a graph file, as a generator list
    Autgroup {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Greedy 2-coloring transcript for a countable family
    Greedy {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_POINT_SCAN_BOUND)]
        bound: usize,
    },
    /// First enumerated element a with Y and aZ disjoint
    Displace {
        #[arg(long)]
        family: String,
        /// Comma-separated points, e.g. 0,1 or x0,y2; empty for the empty set
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        y: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        z: String,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
    /// Per-radius first elements agreeing with a target word on the window
    ClosureProbe {
        #[arg(long)]
        family: String,
        /// Element word of the ambient family, e.g. s0 or t^2
        #[arg(long)]
        target: String,
        /// Comma-separated increasing radii, e.g. 2,4,6
        #[arg(long)]
        radii: String,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Window orbits of the stabilizer of a point, from scanned elements
    StabOrbits {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        radius: i64,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Orbit partition of k-subsets (or the whole power set)
    Orbits {
        file: PathBuf,
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        k: Option<usize>,
        /// Partition the entire power set instead of one subset size
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Whether two actions have the same orbits on every subset
    StrongOe {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Subset whose orbits under a group and a subgroup differ
    OeWitness {
        /// The ambient group
        left: PathBuf,
        /// The subgroup, given by generators
        right: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Windowed dense-subgroup sample: representatives for subset images
    DenseSample {
        #[arg(long)]
        family: String,
        #[arg(long)]
        radius: i64,
        #[arg(long)]
        max_size: usize,
        #[arg(long, default_value_t = 500)]
        budget: usize,
    },
    /// Scalar-tower distinguishing set for GL(n, Q)
    GlConstruct {
        #[arg(long)]
        dim: usize,
        /// Rational scalar, e.g. 2 or 3/2
        #[arg(long, allow_hyphen_values = true)]
        scalar: String,
    },
    /// Decide whether a vector set has trivial setwise stabilizer in GL(n, Q)
    GlVerify {
        /// One vector per line, whitespace-separated rational components
        file: PathBuf,
    },
    /// Number of 2-colorings preserved by one permutation
    CountPreserved {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        degree: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(lines) => {
            if cli.quiet {
                println!("{}", lines.last().expect("reports are never empty"));
            } else {
                for line in &lines {
                    println!("{line}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            println!("error: {}", e.code_name());
            ExitCode::from(if e.is_resource_exhaustion() { 2 } else { 1 })
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::MalformedGroupFile(format!("{}: {e}", path.display())))
}

fn looks_like_graph(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.split_whitespace().next() == Some("graph"))
}

/// A finite action from either file format: a permutation group directly,
/// or the automorphism group of a graph.
fn load_action(path: &Path, cap: u64) -> Result<FiniteAction> {
    let text = read_text(path)?;
    if looks_like_graph(&text) {
        automorphism_group(&parse_graph(&text)?, cap)
    } else {
        parse_group_file(&text)
    }
}

fn order_of(action: &FiniteAction, cap: u64) -> Result<u64> {
    Ok(enumerate_elements(action, cap)?.len() as u64)
}

fn braced<T: Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn bracketed<T: Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn parse_points(stream: &GroupStream, text: &str) -> Result<Vec<StreamPoint>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| stream.parse_point(t)).collect()
}

fn parse_radii(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::MalformedPoint(format!("radius {t}")))
        })
        .collect()
}

fn run(command: &Command) -> Result<Vec<String>> {
    let mut lines = Vec::new();
    match command {
        Command::Motion { file, cap } => {
            let action = load_action(file, *cap)?;
            let r = distinguish::motion(&action, *cap)?;
            lines.push(format!("degree: {}", action.degree()));
            lines.push(format!("order: {}", r.group_order));
            lines.push(format!("motion: {}", r.motion));
            lines.push(format!("witness: {}", r.witness));
            lines.push(format!("result: m={}", r.motion));
        }
        Command::Certify { file, cap } => {
            let action = load_action(file, *cap)?;
            let r = distinguish::motion_lemma_certify(&action, *cap)?;
            lines.push(format!("degree: {}", action.degree()));
            lines.push(format!("order: {}", r.group_order));
            lines.push(format!("motion: {}", r.motion));
            lines.push(format!("witness: {}", r.witness));
            lines.push(format!("threshold: {:.4}", r.log_bound()));
            let verdict = match r.verdict.expect("certifier always sets a verdict") {
                Verdict::Certified2 => "CERTIFIED_2",
                Verdict::Inconclusive => "INCONCLUSIVE",
            };
            lines.push(format!("verdict: {verdict} m={} order={}", r.motion, r.group_order));
        }
        Command::Distinguish { file, cap, budget } => {
            let action = load_action(file, *cap)?;
            let (d, witness) = distinguish::distinguishing_number(&action, *cap, *budget)?;
            let stabilizer = distinguish::verify_coloring(&action, &witness, *cap)?;
            lines.push(format!("degree: {}", action.degree()));
            lines.push(format!("order: {}", order_of(&action, *cap)?));
            lines.push(format!("number: {d}"));
            lines.push(format!("witness: {witness}"));
            lines.push(format!("stabilizer_order: {stabilizer}"));
            lines.push(format!("result: D={d} witness={witness}"));
        }
        Command::Subset2 { file, cap, budget } => {
            let action = load_action(file, *cap)?;
            lines.push(format!("degree: {}", action.degree()));
            lines.push(format!("order: {}", order_of(&action, *cap)?));
            match distinguish::find_2_distinguishing_subset(&action, *cap, *budget)? {
                Some(points) => lines.push(format!("result: {}", braced(&points))),
                None => lines.push("result: NoneExists".into()),
            }
        }
        Command::Base { file, cap } => {
            let action = load_action(file, *cap)?;
            let base = distinguish::minimal_base(&action, *cap)?;
            lines.push(format!("degree: {}", action.degree()));
            lines.push(format!("size: {}", base.len()));
            lines.push(format!("result: {}", bracketed(&base)));
        }
        Command::Autgroup { file, cap } => {
            let g = parse_graph(&read_text(file)?)?;
            let action = automorphism_group(&g, *cap)?;
            lines.push(format!("vertices: {}", g.vertex_count()));
            lines.push(format!("edges: {}", g.edge_count()));
            for gen in action.generators() {
                lines.push(format!("gen {gen}"));
            }
            lines.push(format!("result: order={}", order_of(&action, *cap)?));
        }
        Command::Greedy { family, n, bound } => {
            let s = GroupStream::by_name(family)?;
            let t = distinguish::greedy_infinite_coloring(&s, *n, *bound)?;
            for step in &t.steps {
                lines.push(format!("{} {} {}", step.k, step.y, step.image));
            }
            lines.push(format!("result: n={n} black={}", braced(&t.black())));
        }
        Command::Displace { family, y, z, budget } => {
            let s = GroupStream::by_name(family)?;
            let y = parse_points(&s, y)?;
            let z = parse_points(&s, z)?;
            lines.push(format!("family: {family}"));
            lines.push(format!("Y: {}", braced(&y)));
            lines.push(format!("Z: {}", braced(&z)));
            let d = s.find_displacing_element(&y, &z, *budget)?;
            lines.push(format!("witness: {} (index {})", d.witness.word, d.witness.index));
            lines.push(format!("image: {}", braced(&d.image)));
            lines.push(format!("result: {}", d.witness.word));
        }
        Command::ClosureProbe { family, target, radii, budget } => {
            let s = GroupStream::by_name(family)?;
            let target = s.parse_element(target)?;
            let radii = parse_radii(radii)?;
            let probe = s.closure_membership_probe(&target, &radii, *budget);
            let mut found = 0;
            for round in &probe.rounds {
                match &round.witness {
                    Some(w) => {
                        found += 1;
                        lines.push(format!("radius {}: {} (index {})", round.radius, w.word, w.index));
                    }
                    None => lines.push(format!("radius {}: NotFoundWithinBudget", round.radius)),
                }
            }
            lines.push(format!("result: found={found}/{}", probe.rounds.len()));
        }
        Command::StabOrbits { family, point, radius, budget } => {
            let s = GroupStream::by_name(family)?;
            let point = s.parse_point(point)?;
            let classes = s.window_point_stabilizer_orbits(point, *radius, *budget);
            lines.push(format!("family: {family}"));
            lines.push(format!("point: {point}"));
            lines.push(format!("radius: {radius}"));
            for (id, class) in classes.iter().enumerate() {
                lines.push(format!("class {id}: {}", braced(class)));
            }
            lines.push(format!("result: classes={}", classes.len()));
        }
        Command::Orbits { file, k, all, cap } => {
            let action = load_action(file, *cap)?;
            let partition = if *all {
                orbit_equiv::power_set_orbits(&action, *cap)?
            } else {
                orbit_equiv::subset_orbits(&action, k.expect("clap requires k unless --all"), *cap)?
            };
            lines.push(format!("degree: {}", partition.degree));
            match partition.subset_size {
                Some(k) => lines.push(format!("k: {k}")),
                None => lines.push("k: all".into()),
            }
            lines.extend(partition.to_string().lines().map(String::from));
            lines.push(format!("result: classes={}", partition.classes.len()));
        }
        Command::StrongOe { left, right, cap } => {
            let a = load_action(left, *cap)?;
            let b = load_action(right, *cap)?;
            let equivalent = orbit_equiv::strongly_orbit_equivalent(&a, &b, *cap)?;
            lines.push(format!("degree: {}", a.degree()));
            lines.push(format!("order_left: {}", order_of(&a, *cap)?));
            lines.push(format!("order_right: {}", order_of(&b, *cap)?));
            lines.push(format!("result: strongly_orbit_equivalent={equivalent}"));
        }
        Command::OeWitness { left, right, cap } => {
            let a = load_action(left, *cap)?;
            let b = load_action(right, *cap)?;
            lines.push(format!("degree: {}", a.degree()));
            lines.push(format!("order_left: {}", order_of(&a, *cap)?));
            lines.push(format!("order_right: {}", order_of(&b, *cap)?));
            match orbit_equiv::strong_oe_witness(&a, &b, *cap)? {
                OeOutcome::Witness(w) => {
                    lines.push(format!("witness: {}", braced(&w.subset)));
                    lines.push(format!("orbit_size_left: {}", w.a_orbit_size));
                    lines.push(format!("orbit_size_right: {}", w.b_orbit_size));
                    lines.push(format!("result: {}", braced(&w.subset)));
                }
                OeOutcome::NoWitness => lines.push("result: NoWitness".into()),
            }
        }
        Command::DenseSample { family, radius, max_size, budget } => {
            let s = GroupStream::by_name(family)?;
            let sample = orbit_equiv::sample_dense_generators(&s, *radius, *max_size, *budget)?;
            lines.push(format!("family: {family}"));
            lines.push(format!("radius: {}", sample.radius));
            lines.push(format!("max_size: {}", sample.max_subset_size));
            lines.push(format!("scanned: {}", sample.scanned));
            lines.push(format!("pairs: {}", sample.pairs.len()));
            lines.push(format!("deferred: {}", sample.deferred));
            for gen in &sample.generators {
                lines.push(format!("gen {}", gen.word));
            }
            lines.push(format!("result: generators={}", sample.generators.len()));
        }
        Command::GlConstruct { dim, scalar } => {
            let c = gl::parse_rational(scalar)?;
            let vectors = gl::construct_distinguishing_set(*dim, &c)?;
            lines.push(format!("dim: {dim}"));
            lines.push(format!("scalar: {}", gl::format_rational(&c)));
            for v in &vectors {
                let parts: Vec<String> = v.iter().map(gl::format_rational).collect();
                lines.push(parts.join(" "));
            }
            lines.push(format!("result: vectors={}", vectors.len()));
        }
        Command::GlVerify { file } => {
            let text = read_text(file)?;
            let mut vectors = Vec::new();
            for raw in text.lines() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let v: Vec<gl::Rational> = line
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| gl::parse_rational(t.trim_matches(|c| c == '(' || c == ')')))
                    .collect::<Result<_>>()?;
                vectors.push(v);
            }
            let report = gl::verify_trivial_setwise_stabilizer(&vectors)?;
            lines.push(format!("vectors: {}", vectors.len()));
            lines.push(format!("dim: {}", vectors[0].len()));
            lines.push(format!("candidates: {}", report.candidates));
            match report.verdict {
                GlVerdict::Trivial => lines.push("verdict: TRIVIAL".into()),
                GlVerdict::Nontrivial(m) => {
                    lines.push("certificate:".into());
                    lines.extend(m.to_string().lines().map(String::from));
                    lines.push("verdict: NONTRIVIAL".into());
                }
            }
        }
        Command::CountPreserved { perm, degree } => {
            let p = parse_permutation(perm, *degree)?;
            lines.push(format!("perm: {p}"));
            lines.push(format!("degree: {degree}"));
            lines.push(format!("cycle_count: {}", p.cycle_count()));
            lines.push(format!("result: {}", distinguish::count_preserved_colorings(&p)));
        }
    }
    Ok(lines)
}
