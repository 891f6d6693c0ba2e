//! Command-line front end for bisectkit. [`run`] executes one invocation
//! against explicit input and output streams.

pub mod formats;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use bisectkit::cwcut::{solve_bisection_auto, solve_bisection_cwd};
use bisectkit::graph::{count_components_after_removal, cut_size, validate_bisection, Bipartition};
use bisectkit::oracle::{
    brute_balanced_partition, brute_bisection, brute_maxcut, brute_vertex_bisection, Witness,
};
use bisectkit::reductions::{self, ReductionOutput, Target};
use bisectkit::torso::{atorso, build_trimmer, torso};
use bisectkit::vbp::solve_vertex_bisection;
use bisectkit::vcpart::solve_balanced_partition_vc;
use bisectkit::{DPartition, Graph, GraphBuilder, Separation, VertexSet};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use formats::{
    emit_dot, emit_graph, emit_solution, parse_graph, parse_qexpr, parse_solution,
    parse_vertex_list, Solution,
};

#[derive(Debug, Parser)]
#[command(
    name = "bk",
    version,
    about = "Exact balanced partitioning solvers and gadget generators"
)]
pub struct Cli {
    /// Print graph outputs in Graphviz format instead of `.gr`.
    #[arg(long, global = true)]
    pub dot: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// Input `.gr` file; `-` or omitted reads standard input.
    #[arg(long, short)]
    pub graph: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum bisection through a deletion set and a q-expression.
    Bisect {
        #[command(flatten)]
        input: GraphArg,
        /// Deletion set, comma separated.
        #[arg(long)]
        deletion: Option<String>,
        /// File holding a q-expression of the graph minus the deletion set.
        #[arg(long)]
        expr: Option<PathBuf>,
    },
    /// Balanced vertex separator leaving exactly `c` components.
    Vbisect {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        c: usize,
    },
    /// Minimum-cut balanced partition into `d` parts.
    Bpart {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        d: usize,
    },
    /// Separator-preserving trimmer for a terminal set.
    Trim {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        terminals: String,
        /// Write `phi <v> <x>` lines here instead of as comments.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Annotated torso (or plain torso) on a vertex set.
    Atorso {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        w: String,
        /// Emit the torso on `W` instead.
        #[arg(long)]
        torso: bool,
    },
    /// Instance generators.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Exhaustive reference solvers.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Check a solution file against a graph.
    Verify {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        solution: PathBuf,
        /// Number of parts for a cut (defaults to the largest part number).
        #[arg(long)]
        d: Option<usize>,
        /// Separator size bound.
        #[arg(long)]
        k: Option<usize>,
        /// Required component count after removing the separator.
        #[arg(long)]
        c: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Vertex bisection instance from a clique instance.
    Clique {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        k: usize,
        /// Make an odd `k` even by adding a universal vertex.
        #[arg(long)]
        pad: bool,
    },
    /// Vertex bisection instance from a bisection instance.
    EdgeToVertex {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        k: usize,
    },
    /// Weighted bisection instance combining max-cut instances.
    Maxcut {
        /// One file per instance.
        #[arg(long = "graph", short, required = true)]
        graphs: Vec<PathBuf>,
        #[arg(long)]
        k: usize,
    },
    /// Unweighted bisection instance from an edge-weighted one.
    Unweight {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        k: u64,
        /// Weight bound used for the clique size (defaults to the largest edge weight).
        #[arg(long)]
        wmax: Option<u64>,
    },
    /// Forest partitioning instance from unary bin packing.
    Binpack {
        #[arg(long)]
        weights: String,
        #[arg(long)]
        bins: usize,
        #[arg(long)]
        cap: usize,
    },
    /// A single choice gadget.
    Choice {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: usize,
    },
    /// Balanced partitioning instance from a multicoloured clique instance.
    Mcclique {
        #[command(flatten)]
        input: GraphArg,
        /// Colour of each vertex, comma separated.
        #[arg(long)]
        colours: String,
        #[arg(long)]
        s: usize,
    },
    /// Random graph with edge probability `p`.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Start from a random spanning tree.
        #[arg(long)]
        connected: bool,
        /// Draw edge weights uniformly from `1..=max_weight`.
        #[arg(long, default_value_t = 1)]
        max_weight: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    Bisection {
        #[command(flatten)]
        input: GraphArg,
        /// Count edge weights instead of edges.
        #[arg(long)]
        weighted: bool,
    },
    Maxcut {
        #[command(flatten)]
        input: GraphArg,
    },
    Bpart {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        d: usize,
    },
    Vbisect {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        c: Option<usize>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::SelfCheck(_) => 3,
        }
    }
}

fn input<E: std::fmt::Display>(what: &str) -> impl Fn(E) -> CliError + '_ {
    move |e| CliError::Input(format!("{what}: {e}"))
}

/// Result of a command: exit code 0 (found / valid) or 1 (infeasible /
/// invalid), with the text for standard output and standard error.
struct Outcome {
    code: i32,
    out: String,
    err: String,
}

impl Outcome {
    fn ok(out: String) -> Self {
        Outcome {
            code: 0,
            out,
            err: String::new(),
        }
    }

    fn fail(err: impl Into<String>) -> Self {
        Outcome {
            code: 1,
            out: String::new(),
            err: err.into(),
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    dot: bool,
}

impl Io<'_> {
    fn read(&mut self, path: Option<&Path>) -> Result<String, CliError> {
        match path {
            Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
                .map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
            _ => {
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(input("standard input"))?;
                Ok(s)
            }
        }
    }

    fn graph(&mut self, arg: &GraphArg) -> Result<Graph, CliError> {
        let name = arg
            .graph
            .as_ref()
            .map_or("standard input".to_string(), |p| p.display().to_string());
        let text = self.read(arg.graph.as_deref())?;
        parse_graph(&text)
            .map(|x| x.0)
            .map_err(|e| CliError::Input(format!("{name}: {e}")))
    }

    fn emit(&self, g: &Graph, comments: &[String]) -> String {
        if self.dot {
            emit_dot(g)
        } else {
            emit_graph(g, comments)
        }
    }
}

/// Executes one invocation. Returns the process exit code: 0 found or
/// valid, 1 infeasible or invalid, 2 input error, 3 failed self-check.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io {
        stdin,
        dot: cli.dot,
    };
    match execute(cli.command, &mut io) {
        Ok(o) => {
            let _ = stdout.write_all(o.out.as_bytes());
            let _ = stderr.write_all(o.err.as_bytes());
            if !o.err.is_empty() && !o.err.ends_with('\n') {
                let _ = stderr.write_all(b"\n");
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn vertex_set(text: &str, g: &Graph) -> Result<VertexSet, CliError> {
    let vs = parse_vertex_list(text).map_err(input("vertex list"))?;
    if let Some(&v) = vs.iter().find(|&&v| !g.contains_vertex(v)) {
        return Err(CliError::Input(format!("vertex {v} is not in the graph")));
    }
    Ok(vs.into_iter().collect())
}

fn number_list(text: &str) -> Result<Vec<usize>, CliError> {
    parse_vertex_list(text).map_err(input("number list"))
}

fn bipartition_parts(g: &Graph, p: &Bipartition) -> Vec<usize> {
    g.vertices()
        .map(|v| if p.a.contains(&v) { 1 } else { 2 })
        .collect()
}

fn separation_parts(g: &Graph, s: &Separation) -> Vec<usize> {
    g.vertices()
        .map(|v| {
            if s.s.contains(&v) {
                0
            } else if s.a.contains(&v) {
                1
            } else {
                2
            }
        })
        .collect()
}

fn solution_text(io: &Io, g: &Graph, sol: &Solution, comments: &[String]) -> String {
    if io.dot {
        let mut b = String::from("graph G {\n");
        for (i, p) in sol.part().iter().enumerate() {
            b.push_str(&format!("  {} [label=\"{}:{p}\"];\n", i + 1, i + 1));
        }
        for (u, v, _) in g.edges() {
            b.push_str(&format!("  {u} -- {v};\n"));
        }
        b.push_str("}\n");
        return b;
    }
    let mut s: String = comments.iter().map(|c| format!("c {c}\n")).collect();
    s.push_str(&emit_solution(sol));
    s
}

fn check_cut(g: &Graph, p: &DPartition, value: u64) -> Result<(), CliError> {
    if !p.is_balanced(g) {
        return Err(CliError::SelfCheck("partition is not balanced".into()));
    }
    match cut_size(g, p) {
        Ok(c) if c == value => Ok(()),
        Ok(c) => Err(CliError::SelfCheck(format!(
            "reported cut {value}, recomputed {c}"
        ))),
        Err(e) => Err(CliError::SelfCheck(e.to_string())),
    }
}

fn check_separation(g: &Graph, s: &Separation, k: usize, c: Option<usize>) -> Result<(), CliError> {
    s.validate(g)
        .map_err(|e| CliError::SelfCheck(e.to_string()))?;
    if s.imbalance() > 1 {
        return Err(CliError::SelfCheck("sides differ by more than one".into()));
    }
    if s.s.len() > k {
        return Err(CliError::SelfCheck(format!(
            "separator has {} > {k} vertices",
            s.s.len()
        )));
    }
    if let Some(c) = c {
        let got = count_components_after_removal(g, &s.s);
        if got != c {
            return Err(CliError::SelfCheck(format!(
                "{got} components instead of {c}"
            )));
        }
    }
    Ok(())
}

fn list(set: &VertexSet) -> String {
    set.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn execute(cmd: Command, io: &mut Io) -> Result<Outcome, CliError> {
    match cmd {
        Command::Bisect {
            input: inp,
            deletion,
            expr,
        } => {
            let g = io.graph(&inp)?;
            let (p, cut, d) = match (deletion, expr) {
                (d, Some(path)) => {
                    let d = d
                        .as_deref()
                        .map_or(Ok(VertexSet::new()), |t| vertex_set(t, &g))?;
                    let text = io.read(Some(&path))?;
                    let phi = parse_qexpr(&text)
                        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    let (p, cut) =
                        solve_bisection_cwd(&g, &d, &phi, None).map_err(input("bisect"))?;
                    (p, cut, d)
                }
                (Some(_), None) => return Err(CliError::Input("--deletion needs --expr".into())),
                (None, None) => solve_bisection_auto(&g).map_err(input("bisect"))?,
            };
            if !validate_bisection(&g, &p, cut) || cut_size(&g, &p).ok() != Some(cut) {
                return Err(CliError::SelfCheck(
                    "bisection does not reproduce its cut".into(),
                ));
            }
            let sol = Solution::Cut {
                value: cut,
                part: bipartition_parts(&g, &p),
            };
            Ok(Outcome::ok(solution_text(
                io,
                &g,
                &sol,
                &[format!("deletion {}", list(&d))],
            )))
        }
        Command::Vbisect { input: inp, k, c } => {
            let g = io.graph(&inp)?;
            match solve_vertex_bisection(&g, k, c).map_err(input("vbisect"))? {
                Some(sep) => {
                    check_separation(&g, &sep, k, Some(c))?;
                    let sol = Solution::Sep {
                        value: sep.s.len() as u64,
                        part: separation_parts(&g, &sep),
                    };
                    Ok(Outcome::ok(solution_text(io, &g, &sol, &[])))
                }
                None => Ok(Outcome::fail(format!(
                    "no balanced separator of size at most {k} leaving {c} components"
                ))),
            }
        }
        Command::Bpart { input: inp, d } => {
            let g = io.graph(&inp)?;
            let (p, cut) = solve_balanced_partition_vc(&g, d).map_err(input("bpart"))?;
            check_cut(&g, &p, cut)?;
            let part = dpartition_parts(&g, &p);
            Ok(Outcome::ok(solution_text(
                io,
                &g,
                &Solution::Cut { value: cut, part },
                &[],
            )))
        }
        Command::Trim {
            input: inp,
            k,
            terminals,
            map,
        } => {
            let g = io.graph(&inp)?;
            let t = vertex_set(&terminals, &g)?;
            let tr = build_trimmer(&g, k, &t).map_err(input("trim"))?;
            let phi: Vec<String> = g
                .vertices()
                .map(|v| format!("phi {v} {}", tr.phi(v)))
                .collect();
            let mut comments = vec![format!(
                "trimmer k={k} terminals {} hull {}",
                list(&t),
                list(&tr.hull)
            )];
            match map {
                Some(path) => {
                    let text: String = phi.iter().map(|l| format!("{l}\n")).collect();
                    std::fs::write(&path, text)
                        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                }
                None => comments.extend(phi),
            }
            Ok(Outcome::ok(io.emit(tr.g_star(), &comments)))
        }
        Command::Atorso {
            input: inp,
            w,
            torso: plain,
        } => {
            let g = io.graph(&inp)?;
            let w = vertex_set(&w, &g)?;
            if plain {
                let comments: Vec<String> = w
                    .iter()
                    .enumerate()
                    .map(|(i, v)| format!("rank {} {v}", i + 1))
                    .collect();
                return Ok(Outcome::ok(io.emit(&torso(&g, &w), &comments)));
            }
            let at = atorso(&g, &w);
            let comments: Vec<String> = g
                .vertices()
                .map(|v| format!("phi {v} {}", at.phi(v)))
                .collect();
            Ok(Outcome::ok(io.emit(&at.g_prime, &comments)))
        }
        Command::Gen(g) => generate(g, io),
        Command::Oracle(o) => oracle(o, io),
        Command::Verify {
            input: inp,
            solution,
            d,
            k,
            c,
        } => {
            let g = io.graph(&inp)?;
            let text = io.read(Some(&solution))?;
            let sol = parse_solution(&text, g.n())
                .map_err(|e| CliError::Input(format!("{}: {e}", solution.display())))?;
            Ok(verify(&g, &sol, d, k, c))
        }
    }
}

fn dpartition_parts(g: &Graph, p: &DPartition) -> Vec<usize> {
    let mut part = vec![0; g.n()];
    for (j, set) in p.parts.iter().enumerate() {
        for &v in set {
            part[v - 1] = j + 1;
        }
    }
    part
}

fn verify(
    g: &Graph,
    sol: &Solution,
    d: Option<usize>,
    k: Option<usize>,
    c: Option<usize>,
) -> Outcome {
    let verdict = match sol {
        Solution::Cut { value, part } => {
            let d = d.unwrap_or_else(|| part.iter().copied().max().unwrap_or(1));
            if let Some(&p) = part.iter().find(|&&p| p > d) {
                Err(format!("part {p} exceeds {d} parts"))
            } else {
                let mut parts = vec![VertexSet::new(); d];
                for (i, &p) in part.iter().enumerate() {
                    parts[p - 1].insert(i + 1);
                }
                check_cut(g, &DPartition { parts }, *value).map_err(|e| e.to_string())
            }
        }
        Solution::Sep { value, part } => {
            let mut s = Separation::default();
            for (i, &p) in part.iter().enumerate() {
                [&mut s.s, &mut s.a, &mut s.b][p].insert(i + 1);
            }
            if s.s.len() as u64 != *value {
                Err(format!(
                    "separator has {} vertices, file says {value}",
                    s.s.len()
                ))
            } else {
                check_separation(g, &s, k.unwrap_or(s.s.len()), c).map_err(|e| e.to_string())
            }
        }
    };
    match verdict {
        Ok(()) => Outcome::ok("valid\n".into()),
        Err(e) => Outcome {
            code: 1,
            out: "invalid\n".into(),
            err: e.replace("self-check failed: ", ""),
        },
    }
}

fn target_line(t: &Target) -> String {
    match t {
        Target::VertexBisection { k } => format!("target vbisect k={k}"),
        Target::Bisection { k } => format!("target bisect k={k}"),
        Target::WeightedBisection { k } => format!("target weighted-bisect k={k}"),
        Target::BalancedPartitioning { k, d } => format!("target bpart k={k} d={d}"),
    }
}

fn reduction_text(io: &Io, r: &ReductionOutput) -> String {
    let mut comments = vec![
        format!(
            "provenance: {} {}",
            r.provenance.construction, r.provenance.fingerprint
        ),
        target_line(&r.target),
    ];
    if let Some(ans) = r.trivial {
        comments.push(format!("trivial {}", if ans { "yes" } else { "no" }));
    }
    comments.extend(r.notes.iter().map(|n| format!("note {n}")));
    io.emit(&r.graph, &comments)
}

fn generate(cmd: GenCommand, io: &mut Io) -> Result<Outcome, CliError> {
    let gen_err = input("gen");
    let r = match cmd {
        GenCommand::Clique { input: inp, k, pad } => {
            let g = io.graph(&inp)?;
            let (g, k) = if pad {
                reductions::pad_clique_parity(&g, k)
            } else {
                (g, k)
            };
            reductions::clique_to_vbisect(&g, k).map_err(gen_err)?
        }
        GenCommand::EdgeToVertex { input: inp, k } => {
            reductions::bisect_to_vbisect(&io.graph(&inp)?, k).map_err(gen_err)?
        }
        GenCommand::Maxcut { graphs, k } => {
            let mut inst = Vec::new();
            for path in &graphs {
                inst.push((
                    io.graph(&GraphArg {
                        graph: Some(path.clone()),
                    })?,
                    k,
                ));
            }
            reductions::maxcut_cross_compose(&inst).map_err(gen_err)?
        }
        GenCommand::Unweight {
            input: inp,
            k,
            wmax,
        } => reductions::weighted_to_unweighted(&io.graph(&inp)?, k, wmax).map_err(gen_err)?,
        GenCommand::Binpack { weights, bins, cap } => {
            reductions::binpacking_to_forest(&number_list(&weights)?, bins, cap).map_err(gen_err)?
        }
        GenCommand::Choice { a, b } => {
            let gadget = reductions::make_choice_gadget(&number_list(&a)?, b).map_err(gen_err)?;
            let comments = vec![format!(
                "choice a={a} b={b} spine 1..={}",
                gadget.spine_len()
            )];
            return Ok(Outcome::ok(io.emit(&gadget.graph(), &comments)));
        }
        GenCommand::Mcclique {
            input: inp,
            colours,
            s,
        } => {
            let g = io.graph(&inp)?;
            let (r, p) =
                reductions::mcclique_to_bpart(&g, &number_list(&colours)?, s).map_err(gen_err)?;
            let mut text = format!("c z0={} n0={}\n", p.z0, p.n0);
            text.push_str(&reduction_text(io, &r));
            return Ok(Outcome::ok(text));
        }
        GenCommand::Random {
            n,
            p,
            seed,
            connected,
            max_weight,
        } => {
            if !(0.0..=1.0).contains(&p) || max_weight == 0 {
                return Err(CliError::Input(
                    "need 0 <= p <= 1 and a positive weight bound".into(),
                ));
            }
            let g = random_graph(n, p, seed, connected, max_weight);
            let comment = format!(
                "random n={n} p={p} seed={seed} connected={connected} max-weight={max_weight}"
            );
            return Ok(Outcome::ok(io.emit(&g, &[comment])));
        }
    };
    Ok(Outcome::ok(reduction_text(io, &r)))
}

/// Seeded random graph; identical arguments give identical graphs.
pub fn random_graph(n: usize, p: f64, seed: u64, connected: bool, max_weight: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new(n);
    if connected {
        for v in 2..=n {
            let u = rng.gen_range(1..v);
            let w = rng.gen_range(1..=max_weight);
            b.add_weighted_edge(u, v, w).expect("fresh tree edge");
        }
    }
    for u in 1..=n {
        for v in u + 1..=n {
            let hit = rng.gen_bool(p);
            let w = rng.gen_range(1..=max_weight);
            if hit && !b.has_edge(u, v) {
                b.add_weighted_edge(u, v, w).expect("fresh edge");
            }
        }
    }
    b.build()
}

fn oracle(cmd: OracleCommand, io: &mut Io) -> Result<Outcome, CliError> {
    let err = input("oracle");
    let (g, res, sep) = match cmd {
        OracleCommand::Bisection {
            input: inp,
            weighted,
        } => {
            let g = io.graph(&inp)?;
            let r = brute_bisection(&g, weighted).map_err(err)?;
            (g, r, false)
        }
        OracleCommand::Maxcut { input: inp } => {
            let g = io.graph(&inp)?;
            let r = brute_maxcut(&g).map_err(err)?;
            (g, r, false)
        }
        OracleCommand::Bpart { input: inp, d } => {
            if d == 0 {
                return Err(CliError::Input("need at least one part".into()));
            }
            let g = io.graph(&inp)?;
            let r = brute_balanced_partition(&g, d).map_err(err)?;
            (g, r, false)
        }
        OracleCommand::Vbisect { input: inp, k, c } => {
            let g = io.graph(&inp)?;
            let r = brute_vertex_bisection(&g, k, c).map_err(err)?;
            (g, r, true)
        }
    };
    let comment = vec![format!("explored {}", res.explored)];
    let (Some(value), Some(w)) = (res.optimum, res.witness) else {
        return Ok(Outcome::fail(if sep {
            "no balanced separator within the bound"
        } else {
            "no feasible partition"
        }));
    };
    let sol = match w {
        Witness::Bipartition(p) => Solution::Cut {
            value,
            part: bipartition_parts(&g, &p),
        },
        Witness::DPartition(p) => Solution::Cut {
            value,
            part: dpartition_parts(&g, &p),
        },
        Witness::Separation(s) => Solution::Sep {
            value,
            part: separation_parts(&g, &s),
        },
    };
    Ok(Outcome::ok(solution_text(io, &g, &sol, &comment)))
}
