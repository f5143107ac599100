//! Command line front end. `run` returns the process exit code: 0 on
//! success, 1 for usage errors, 2 when a computation fails.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use yamada_core::chainpoly::{
    build_replaced_graph, chain_definition_bounded, chain_recursive, compose_h_via_chain, flow_poly,
    replacement_data, ReplacementData,
};
use yamada_core::diagram::{Convention, SpatialDiagram};
use yamada_core::graph::{Family, MultiGraph};
use yamada_core::hpoly::{h_closed, h_definition_bounded, h_delcon};
use yamada_core::yamada::{build_replaced_diagram, r_uniform, Bead, FamilyKind, FamilySpec};
use yamada_core::zeros::{RegionSpec, ScanFamily, ScanReport};
use yamada_core::LaurentPoly;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::formats::diagram::{parse_diagram, write_diagram, NamedDiagram};
use crate::formats::graph::{parse_graph, NamedGraph};
use crate::{output, parallel, selftest};

#[derive(Debug, Parser)]
#[command(name = "yamada", version, about = "Yamada polynomials of graphs and spatial graph diagrams")]
struct Cli {
    /// TOML file with guards, tolerances and defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (overrides the config file).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Suppress summaries and progress notes on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// H(G) of an abstract graph.
    HPoly {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = HMethod::Delcon)]
        method: HMethod,
    },
    /// Flow polynomial of a graph, in the variable q.
    FlowPoly { graph: PathBuf },
    /// Chain polynomial of an edge-labelled graph at given ring values.
    ChainPoly {
        graph: PathBuf,
        /// `label=value` with value a Laurent polynomial in A.
        #[arg(long = "assign", value_name = "LABEL=VALUE", num_args = 1..)]
        assign: Vec<String>,
        #[arg(long)]
        w: String,
        #[arg(long, value_enum, default_value_t = ChainMethod::Recursive)]
        method: ChainMethod,
    },
    /// H of the graph with labelled edges replaced by two-terminal graphs.
    Compose {
        graph: PathBuf,
        /// `label=<graphfile>:<u>:<v>`; labels not listed stay single edges.
        #[arg(long = "replace", value_name = "LABEL=FILE:U:V", num_args = 1..)]
        replace: Vec<String>,
        /// Also build the replaced graph and compare with a direct computation.
        #[arg(long)]
        verify: bool,
    },
    /// R of a diagram file by the state sum.
    Yamada { diagram: PathBuf },
    /// R of a cycle, theta or bouquet of identical beads.
    Family(FamilyArgs),
    /// Zeros of family polynomials and the regions where they accumulate.
    Zeros {
        #[command(subcommand)]
        command: ZerosCommand,
    },
    /// Checks the library's pinned values.
    Selftest {
        /// Test hook: run the state sums with the opposite crossing convention.
        #[arg(long, hide = true)]
        flip_convention: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HMethod {
    Delcon,
    Definition,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChainMethod {
    Recursive,
    Definition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Cycle,
    Theta,
    Bouquet,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    size: u32,
    /// `infplus`, `infminus` or a diagram file with terminals.
    #[arg(long)]
    bead: String,
    /// Write the explicit replaced diagram to this file.
    #[arg(long, value_name = "FILE")]
    emit_diagram: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum ZerosCommand {
    /// Roots of R[C_n(bead)] for each n, written as CSV and SVG.
    Scan {
        #[arg(long, value_parser = parse_family)]
        family: ScanFamily,
        #[arg(long)]
        s: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
        #[arg(long)]
        tol: Option<f64>,
        /// Output directory (defaults to the config's).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rasterised region of the plane as SVG.
    Region {
        #[arg(long, value_enum)]
        which: RegionArg,
        /// `re_min,re_max,im_min,im_max`.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Window,
        #[arg(long, default_value_t = 400)]
        res: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RegionArg {
    Omega,
    Sigma,
    Plus,
    Minus,
}

impl From<RegionArg> for RegionSpec {
    fn from(r: RegionArg) -> Self {
        match r {
            RegionArg::Omega => RegionSpec::Omega,
            RegionArg::Sigma => RegionSpec::SigmaGe1,
            RegionArg::Plus => RegionSpec::PlusRegion,
            RegionArg::Minus => RegionSpec::MinusRegion,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Window {
    re: (f64, f64),
    im: (f64, f64),
}

fn parse_family(s: &str) -> std::result::Result<ScanFamily, String> {
    match s {
        "theta" => Ok(ScanFamily::Theta),
        "inf+" => Ok(ScanFamily::InfPlus),
        "inf-" => Ok(ScanFamily::InfMinus),
        _ => Err(format!("unknown family `{s}`; expected theta, inf+ or inf-")),
    }
}

fn parse_window(s: &str) -> std::result::Result<Window, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match v.as_slice() {
        &[a, b, c, d] if a < b && c < d && v.iter().all(|x| x.is_finite()) => Ok(Window { re: (a, b), im: (c, d) }),
        [_, _, _, _] => Err("window needs re_min < re_max and im_min < im_max".into()),
        _ => Err("window is four numbers: re_min,re_max,im_min,im_max".into()),
    }
}

struct Ctx<'a> {
    config: Config,
    quiet: bool,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn print(&mut self, text: impl std::fmt::Display) -> Result<()> {
        writeln!(self.out, "{text}").map_err(|e| Error::io("<stdout>", e))
    }

    fn note(&mut self, text: impl std::fmt::Display) {
        if !self.quiet {
            let _ = writeln!(self.err, "{text}");
        }
    }
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{}", text.ansi()) };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mut config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(t) = cli.threads {
        config.threads = Some(t);
        config.validate()?;
    }
    let threads = config.threads;
    let (quiet, command) = (cli.quiet, cli.command);
    // The command runs inside the worker pool, so it writes to buffers that
    // are copied out afterwards.
    let (result, out_buf, err_buf) = parallel::with_threads(threads, move || {
        let (mut out_buf, mut err_buf) = (Vec::new(), Vec::new());
        let mut ctx = Ctx { config, quiet, out: &mut out_buf, err: &mut err_buf };
        let result = dispatch(command, &mut ctx);
        (result, out_buf, err_buf)
    });
    out.write_all(&out_buf).map_err(|e| Error::io("<stdout>", e))?;
    let _ = err.write_all(&err_buf);
    result
}

fn dispatch(command: Command, ctx: &mut Ctx<'_>) -> Result<i32> {
    match command {
        Command::HPoly { graph, method } => {
            let g = read_graph(&graph)?.graph;
            let h = match method {
                HMethod::Delcon => h_delcon(&g),
                HMethod::Definition => h_definition_bounded(&g, ctx.config.max_subset_edges)?,
                HMethod::Closed => closed_form(&g)?,
            };
            ctx.print(h)?;
        }
        Command::FlowPoly { graph } => {
            let g = read_graph(&graph)?.graph;
            ctx.print(flow_poly(&g).display_in("q"))?;
        }
        Command::ChainPoly { graph, assign, w, method } => {
            let g = read_graph(&graph)?.graph;
            let values = parse_assignments(&assign)?;
            let w = parse_poly(&w)?;
            let ch = match method {
                ChainMethod::Recursive => chain_recursive(&g, &values, &w)?,
                ChainMethod::Definition => chain_definition_bounded(&g, &values, &w, ctx.config.max_subset_edges)?,
            };
            ctx.print(ch)?;
        }
        Command::Compose { graph, replace, verify } => compose(ctx, &graph, &replace, verify)?,
        Command::Yamada { diagram } => {
            let d = read_diagram(&diagram)?.diagram;
            let r = parallel::r_state_sum(&d, ctx.config.max_crossings, Convention::Standard)?;
            ctx.print(r)?;
        }
        Command::Family(args) => family(ctx, args)?,
        Command::Zeros { command: ZerosCommand::Scan { family, s, n, tol, out } } => {
            let mut opts = ctx.config.scan_options();
            if let Some(tol) = tol {
                if !(tol > 0.0 && tol < 1.0) {
                    return Err(Error::Usage("--tol must lie in (0, 1)".into()));
                }
                opts.tol = tol;
            }
            let dir = out.unwrap_or_else(|| ctx.config.output_dir.clone());
            let jobs: Vec<_> = n.iter().map(|&n| (family, s, n)).collect();
            let reports: Vec<ScanReport> =
                parallel::scan_jobs(&jobs, &opts).into_iter().collect::<std::result::Result<_, _>>()?;
            write_scan(ctx, &dir, family, s, &reports)?;
        }
        Command::Zeros { command: ZerosCommand::Region { which, window, res, out } } => {
            let grid = parallel::grid_region(which.into(), window.re, window.im, res)?;
            write_file(&out, output::region_svg(&grid, ctx.config.svg_scale, &[]).as_bytes())?;
            let inside = grid.cells.iter().filter(|&&c| c).count();
            ctx.note(format!("{inside}/{} cells inside; wrote {}", grid.cells.len(), out.display()));
        }
        Command::Selftest { flip_convention } => {
            let mut opts = selftest::SelftestOptions::from_config(&ctx.config);
            if flip_convention {
                opts.convention = Convention::Flipped;
            }
            let results = selftest::run(&opts);
            for r in &results {
                ctx.print(r)?;
            }
            if let Some(first) = results.iter().find(|r| matches!(r.outcome, selftest::Outcome::Fail(_))) {
                let _ = writeln!(ctx.err, "selftest failed: {first}");
                return Ok(2);
            }
        }
    }
    Ok(0)
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn read_graph(path: &Path) -> Result<NamedGraph> {
    parse_graph(&read_text(path)?).map_err(|source| Error::Parse { path: path.into(), source })
}

fn read_diagram(path: &Path) -> Result<NamedDiagram> {
    parse_diagram(&read_text(path)?).map_err(|source| Error::Parse { path: path.into(), source })
}

fn parse_poly(text: &str) -> Result<LaurentPoly> {
    LaurentPoly::parse_in(text, "A").map_err(|e| Error::Usage(format!("cannot parse `{text}` as a polynomial: {e}")))
}

fn parse_assignments(items: &[String]) -> Result<BTreeMap<String, LaurentPoly>> {
    items
        .iter()
        .map(|item| {
            let (label, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("expected LABEL=VALUE, got `{item}`")))?;
            Ok((label.to_string(), parse_poly(value)?))
        })
        .collect()
}

/// `H` of a tree, cycle, bouquet or theta from its closed form.
fn closed_form(g: &MultiGraph) -> Result<LaurentPoly> {
    let (p, q) = (g.p(), g.q());
    let loops = g.edges().filter(|(_, e)| e.is_loop()).count();
    let k = q as u32;
    if g.is_connected() && q + 1 == p {
        return Ok(if q == 0 { LaurentPoly::from(-1) } else { h_closed(Family::Tree, k)? });
    }
    if g.is_connected() && p == q && loops == 0 && g.vertices().all(|v| g.degree(v) == 2) {
        return Ok(h_closed(Family::Cycle, k)?);
    }
    if p == 1 && loops == q && q > 0 {
        return Ok(h_closed(Family::Bouquet, k)?);
    }
    if p == 2 && loops == 0 && q > 0 {
        return Ok(h_closed(Family::Theta, k)?);
    }
    Err(Error::Usage("no closed form: the graph is not a tree, cycle, bouquet or theta".into()))
}

fn compose(ctx: &mut Ctx<'_>, graph: &Path, replace: &[String], verify: bool) -> Result<()> {
    let g = read_graph(graph)?.graph;
    let mut parts = BTreeMap::new();
    for item in replace {
        let bad = || Error::Usage(format!("expected LABEL=FILE:U:V, got `{item}`"));
        let (label, spec) = item.split_once('=').ok_or_else(bad)?;
        let mut fields = spec.rsplitn(3, ':');
        let (v, u, file) = (fields.next().ok_or_else(bad)?, fields.next().ok_or_else(bad)?, fields.next().ok_or_else(bad)?);
        let part = read_graph(Path::new(file))?;
        let vertex = |name: &str| {
            part.vertex(name).ok_or_else(|| Error::Usage(format!("{file}: no vertex `{name}`")))
        };
        parts.insert(label.to_string(), (part.graph.clone(), vertex(u)?, vertex(v)?));
    }
    let edge = (MultiGraph::family(Family::Path, 2), 0, 1);
    let mut data: BTreeMap<String, ReplacementData> = BTreeMap::new();
    for (_, e) in g.edges() {
        let Some(label) = &e.label else { continue };
        let part = parts.entry(label.clone()).or_insert_with(|| edge.clone());
        if !data.contains_key(label) {
            data.insert(label.clone(), replacement_data(&part.0, part.1, part.2)?);
        }
    }
    for label in parts.keys() {
        if !data.contains_key(label) {
            ctx.note(format!("warning: no edge is labelled `{label}`"));
        }
    }
    let h = compose_h_via_chain(&g, &data)?;
    if verify {
        let explicit = build_replaced_graph(&g, &parts)?;
        let direct = h_delcon(&explicit);
        if direct != h {
            return Err(Error::Usage(format!("composition disagrees with the replaced graph: {direct}")));
        }
        ctx.note("verified against the explicitly replaced graph");
    }
    ctx.print(h)
}

fn family(ctx: &mut Ctx<'_>, args: FamilyArgs) -> Result<()> {
    let kind = match args.kind {
        KindArg::Cycle => FamilyKind::Cycle,
        KindArg::Theta => FamilyKind::Theta,
        KindArg::Bouquet => FamilyKind::Bouquet,
    };
    let bead = match args.bead.as_str() {
        "infplus" => Bead::InfPlus,
        "infminus" => Bead::InfMinus,
        path => {
            let d: SpatialDiagram = read_diagram(Path::new(path))?.diagram;
            if d.crossing_count() > ctx.config.max_crossings {
                return Err(yamada_core::yamada::YamadaError::TooManyCrossings {
                    crossings: d.crossing_count(),
                    limit: ctx.config.max_crossings,
                }
                .into());
            }
            Bead::Diagram(d)
        }
    };
    let spec = FamilySpec::new(kind, args.size, bead);
    let r = r_uniform(&spec)?;
    if let Some(path) = &args.emit_diagram {
        let d = build_replaced_diagram(&spec)?;
        write_file(path, write_diagram(&d).as_bytes())?;
        ctx.note(format!("wrote {} ({} crossings)", path.display(), d.crossing_count()));
    }
    ctx.print(r)
}

fn write_scan(ctx: &mut Ctx<'_>, dir: &Path, family: ScanFamily, s: u32, reports: &[ScanReport]) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let stem = format!("scan_{}_s{s}", family.name().replace('+', "plus").replace('-', "minus"));
    let csv_path = dir.join(format!("{stem}.csv"));
    let file = std::fs::File::create(&csv_path).map_err(|e| Error::io(&csv_path, e))?;
    output::write_scan_csv(std::io::BufWriter::new(file), reports)?;

    let roots: Vec<Complex64> = reports.iter().flat_map(|r| r.roots.iter().map(|x| x.z)).collect();
    let reach = roots.iter().fold(2.0f64, |m, z| m.max(z.re.abs()).max(z.im.abs())).min(4.0) * 1.05;
    let grid = parallel::grid_region(RegionSpec::Omega, (-reach, reach), (-reach, reach), 300)?;
    let svg_path = dir.join(format!("{stem}.svg"));
    let scale = ctx.config.svg_scale * 2.0 / reach;
    write_file(&svg_path, output::region_svg(&grid, scale, &roots).as_bytes())?;

    let summary = output::scan_summary(reports);
    let summary_path = dir.join(format!("{stem}_summary.txt"));
    write_file(&summary_path, summary.as_bytes())?;
    if !ctx.quiet {
        write!(ctx.out, "{summary}").map_err(|e| Error::io("<stdout>", e))?;
    }
    ctx.note(format!("wrote {}, {} and {}", csv_path.display(), svg_path.display(), summary_path.display()));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(parse_window("-2,2,-1.5,1.5").unwrap(), Window { re: (-2.0, 2.0), im: (-1.5, 1.5) });
        assert!(parse_window("1,0,0,1").is_err());
        assert!(parse_window("1,2,3").is_err());
    }

    #[test]
    fn closed_form_recognition() {
        for (kind, k) in [(Family::Tree, 3), (Family::Cycle, 4), (Family::Bouquet, 2), (Family::Theta, 3)] {
            let g = MultiGraph::family(kind, k);
            assert_eq!(closed_form(&g).unwrap(), h_delcon(&g), "{kind:?}");
        }
        assert_eq!(closed_form(&MultiGraph::with_vertices(1)).unwrap(), LaurentPoly::from(-1));
        let (two_cycles, _) = MultiGraph::family(Family::Cycle, 3).disjoint_union(&MultiGraph::family(Family::Cycle, 3));
        assert!(closed_form(&two_cycles).is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["yamada", "frobnicate"], &mut out, &mut err), 1);
        assert_eq!(run(["yamada", "zeros", "scan", "--family", "knot", "--s", "2", "--n", "3"], &mut out, &mut err), 1);
        assert_eq!(run(["yamada", "--help"], &mut out, &mut err), 0);
    }
}
