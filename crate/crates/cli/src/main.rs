//! `morsetree` command-line front end.
//!
//! Every command writes into `<out>/<command>/` and finishes with a
//! `manifest.json` holding the configuration, input digests and version.
//!
//! Exit status: 0 success, 1 output I/O error, 2 usage error, 3 unreadable
//! or malformed input, 4 dimension out of range, 5 internal consistency
//! failure (a cross-check or validation did not hold).

mod input;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use morsetree::{
    assign_morse, basis_to_json, basis_to_text, betti_numbers, classify, export_barcode, hodge_betti,
    length_histogram, minimal_one_cavities, move_log_text, order_from_morse, parse_morse_text, persistence_pairs,
    shorten_basis, solve_basis, solve_cavities, solve_cavities_oriented, validate_basis, validate_morse, Barcode,
    Error, SimplicialNetwork, Step,
};
use serde_json::json;

use input::InputArgs;
use output::{Format, RunDir, Table};

#[derive(Parser, Debug)]
#[command(name = "morsetree", version, about = "Persistent homology of simplicial networks via spanning trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Root output directory; each command writes a subdirectory
    #[arg(long, default_value = "morsetree-out")]
    out: PathBuf,

    /// Output formats, comma separated
    #[arg(long, value_enum, value_delimiter = ',', default_value = "text,csv,structured,svg")]
    format: Vec<Format>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simplex counts, ranks, Betti numbers and Euler characteristics
    Betti {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Also compute Betti numbers as Hodge Laplacian nullities
        #[arg(long)]
        hodge_check: bool,
    },
    /// Morse filtration, critical simplices and its barcode
    Morse {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Representative cycles of every cavity
    Cavities {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Shorten the cycles for at most this many rounds
        #[arg(long, value_name = "ROUNDS")]
        shorten: Option<usize>,
        /// Replace the 1-cycles by a shortest-first search
        #[arg(long = "exhaustive-1")]
        exhaustive_1: bool,
        /// Compare against the integer (oriented) solve
        #[arg(long)]
        oriented_check: bool,
        /// Compare cavity counts with Hodge Laplacian nullities
        #[arg(long)]
        hodge_check: bool,
    },
    /// Persistence barcode of the Morse filtration, the Rips filtration of a
    /// point cloud, or a filtration file
    Barcodes {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Filtration file with one `index simplex` step per line
        #[arg(long)]
        filtration: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        Failure { code: 3, msg: msg.into() }
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Failure { code: 1, msg: format!("{}: {e}", path.display()) }
    }

    fn consistency(msg: impl Into<String>) -> Self {
        Failure { code: 5, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidSimplex(_) | Error::InvalidFiltration { .. } | Error::Format(_) => 3,
            Error::Dimension { .. } => 4,
            _ => 5,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Betti { input, output, hodge_check } => cmd_betti(&input, &output, hodge_check),
        Command::Morse { input, output } => cmd_morse(&input, &output),
        Command::Cavities { input, output, shorten, exhaustive_1, oriented_check, hodge_check } => {
            cmd_cavities(&input, &output, CavityOptions { shorten, exhaustive_1, oriented_check, hodge_check })
        }
        Command::Barcodes { input, output, filtration } => cmd_barcodes(&input, &output, filtration.as_deref()),
    }
}

fn with_formats(mut config: serde_json::Value, formats: &[Format]) -> serde_json::Value {
    let names: Vec<String> = formats.iter().map(|f| format!("{f:?}").to_lowercase()).collect();
    config["formats"] = json!(names);
    config
}

fn cmd_betti(args: &InputArgs, out: &OutputArgs, hodge_check: bool) -> Result<(), Failure> {
    let loaded = input::load(args)?;
    let net = &loaded.network;
    let bv = betti_numbers(net);
    let decomp = classify(net)?;
    let filtration = assign_morse(net, &decomp)?;
    let report = validate_morse(net, &filtration);

    let mut header = vec!["k", "m_k", "r_k", "beta_k", "c_k"];
    if hodge_check {
        header.push("hodge_k");
    }
    let mut table = Table::new(&header);
    let mut hodge = Vec::new();
    for k in 0..net.dim_count() {
        let mut row = vec![
            k.to_string(),
            bv.m[k].to_string(),
            bv.r[k].to_string(),
            bv.betti[k].to_string(),
            report.c[k].to_string(),
        ];
        if hodge_check {
            let h = hodge_betti(net, k);
            hodge.push(h);
            row.push(h.to_string());
        }
        table.row(row);
    }
    let identity = report.chi_m == report.chi_c && report.chi_c == report.chi_beta;
    let summary = format!(
        "chi(simplices) = {}\nchi(critical) = {}\nchi(betti) = {}\nalternating sums agree: {}\n",
        report.chi_m,
        report.chi_c,
        report.chi_beta,
        if identity { "yes" } else { "no" }
    );
    print!("{}{summary}", table.text());

    let mut dir = RunDir::create(&out.out, "betti")?;
    dir.table("betti", &table, &out.format)?;
    if out.format.contains(&Format::Text) {
        dir.write("euler.txt", &summary)?;
    }
    if out.format.contains(&Format::Structured) {
        let mut doc = json!({
            "m": bv.m,
            "r": bv.r,
            "betti": bv.betti,
            "critical": report.c,
            "chi_simplices": report.chi_m,
            "chi_critical": report.chi_c,
            "chi_betti": report.chi_beta,
        });
        if hodge_check {
            doc["hodge"] = json!(hodge);
        }
        dir.json("betti.json", &doc)?;
    }
    let config = with_formats(json!({ "input": loaded.config, "hodge_check": hodge_check }), &out.format);
    dir.finish(config, loaded.digests)?;

    if !identity {
        return Err(Failure::consistency("alternating sums of m, c and beta differ"));
    }
    if hodge_check && hodge != bv.betti {
        return Err(Failure::consistency(format!("Hodge nullities {hodge:?} differ from beta {:?}", bv.betti)));
    }
    Ok(())
}

fn write_barcode(dir: &mut RunDir, barcode: &Barcode, formats: &[Format]) -> Result<(), Failure> {
    for &f in formats {
        let (name, file) = match f {
            Format::Text => ("text", "barcode.txt"),
            Format::Csv => ("csv", "barcode.csv"),
            Format::Structured => ("structured", "barcode.json"),
            Format::Svg => ("svg", "barcode.svg"),
        };
        dir.write(file, export_barcode(barcode, name)?)?;
    }
    Ok(())
}

fn cmd_morse(args: &InputArgs, out: &OutputArgs) -> Result<(), Failure> {
    let loaded = input::load(args)?;
    let net = &loaded.network;
    let decomp = classify(net)?;
    let filtration = assign_morse(net, &decomp)?;
    let report = validate_morse(net, &filtration);
    let barcode = persistence_pairs(net, &order_from_morse(&filtration))?;

    let mut critical = Table::new(&["step", "dim", "simplex"]);
    for (step, cell) in filtration.critical() {
        critical.row(vec![step.to_string(), cell.dim.to_string(), net.display(cell.dim, cell.index as usize)]);
    }
    let mut counts = Table::new(&["k", "c_k", "beta_k"]);
    for k in 0..report.c.len().max(report.betti.len()) {
        let get = |v: &[usize]| v.get(k).copied().unwrap_or(0).to_string();
        counts.row(vec![k.to_string(), get(&report.c), get(&report.betti)]);
    }
    let n = filtration.n().map_or("-".to_string(), |n| n.to_string());
    let pairs = filtration.steps().iter().filter(|s| matches!(s, Step::Pair(..))).count();
    println!("n = {n}, {pairs} pairs, {} promotions", filtration.promotions().len());
    print!("{}\n{}", critical.text(), counts.text());

    let mut dir = RunDir::create(&out.out, "morse")?;
    dir.write("filtration.morse", filtration.to_text(net))?;
    dir.table("critical", &critical, &out.format)?;
    dir.table("counts", &counts, &out.format)?;
    let promotions: Vec<_> = filtration
        .promotions()
        .iter()
        .map(|p| {
            json!({
                "face": net.display(p.face.dim, p.face.index as usize),
                "coface": net.display(p.coface.dim, p.coface.index as usize),
            })
        })
        .collect();
    if out.format.contains(&Format::Text) {
        let mut text = format!(
            "n = {n}\nvalid: {}\nbounds c_k >= beta_k: {}\nalternating sums agree: {}\n",
            report.is_valid(),
            report.bounds_hold(),
            report.euler_consistent()
        );
        for v in &report.violations {
            text.push_str(&format!("violation: {v}\n"));
        }
        for p in &promotions {
            text.push_str(&format!("promoted: {} {}\n", p["face"].as_str().unwrap(), p["coface"].as_str().unwrap()));
        }
        dir.write("validation.txt", text)?;
    }
    if out.format.contains(&Format::Structured) {
        dir.json(
            "validation.json",
            &json!({
                "n": filtration.n(),
                "critical": report.c,
                "betti": report.betti,
                "valid": report.is_valid(),
                "violations": report.violations,
                "promotions": promotions,
            }),
        )?;
    }
    write_barcode(&mut dir, &barcode, &out.format)?;
    dir.finish(with_formats(json!({ "input": loaded.config }), &out.format), loaded.digests)?;

    if !report.is_valid() || !report.bounds_hold() || !report.euler_consistent() {
        return Err(Failure::consistency("Morse filtration failed validation"));
    }
    Ok(())
}

struct CavityOptions {
    shorten: Option<usize>,
    exhaustive_1: bool,
    oriented_check: bool,
    hodge_check: bool,
}

fn cmd_cavities(args: &InputArgs, out: &OutputArgs, opts: CavityOptions) -> Result<(), Failure> {
    let loaded = input::load(args)?;
    let net = &loaded.network;
    let dims = net.dim_count();
    let decomp = classify(net)?;
    let mut basis = solve_basis(net, &decomp)?;
    let tree_lengths: Vec<usize> = (0..dims).map(|k| basis.total_length(k)).collect();
    if opts.exhaustive_1 && dims >= 2 {
        basis.cycles[1] = minimal_one_cavities(net, &decomp)?.cycles[1].clone();
    }
    let mut moves = Vec::new();
    if let Some(rounds) = opts.shorten {
        for k in 1..dims {
            let (shortened, log) = shorten_basis(net, &basis, k, rounds)?;
            basis = shortened;
            moves.extend(log);
        }
    }
    let report = validate_basis(net, &basis);

    let mut summary = Table::new(&["k", "cavities", "total_length", "tree_total", "min", "max"]);
    let mut histogram = Table::new(&["k", "length", "count"]);
    for k in 0..dims {
        let lengths = basis.lengths(k);
        let fmt = |v: Option<&usize>| v.map_or("-".to_string(), usize::to_string);
        summary.row(vec![
            k.to_string(),
            lengths.len().to_string(),
            basis.total_length(k).to_string(),
            tree_lengths[k].to_string(),
            fmt(lengths.iter().min()),
            fmt(lengths.iter().max()),
        ]);
        for (len, count) in length_histogram(basis.dim(k)) {
            histogram.row(vec![k.to_string(), len.to_string(), count.to_string()]);
        }
    }
    print!("{}\n{}", summary.text(), histogram.text());

    let mut failures = Vec::new();
    if !report.is_valid() {
        failures.push(format!("basis failed validation: {:?}", report.failures));
    }

    let mut oriented = Table::new(&["k", "status"]);
    if opts.oriented_check {
        for k in 1..dims {
            let status = match solve_cavities_oriented(net, &decomp, k) {
                Ok(cycles) if cycles == solve_cavities(net, &decomp, k)? => "agree",
                Ok(_) => {
                    failures.push(format!("oriented solve differs in dimension {k}"));
                    "differ"
                }
                Err(Error::OrientedReductionUndefined { .. }) => "undefined",
                Err(e) => return Err(e.into()),
            };
            oriented.row(vec![k.to_string(), status.to_string()]);
        }
        print!("\n{}", oriented.text());
    }
    let mut hodge = Table::new(&["k", "cavities", "hodge_nullity"]);
    if opts.hodge_check {
        for k in 0..dims {
            let h = hodge_betti(net, k);
            let count = basis.dim(k).len();
            if h != count {
                failures.push(format!("dimension {k}: {count} cavities, Hodge nullity {h}"));
            }
            hodge.row(vec![k.to_string(), count.to_string(), h.to_string()]);
        }
        print!("\n{}", hodge.text());
    }

    let mut dir = RunDir::create(&out.out, "cavities")?;
    dir.table("summary", &summary, &out.format)?;
    dir.table("lengths", &histogram, &out.format)?;
    if out.format.contains(&Format::Text) {
        dir.write("cavities.txt", basis_to_text(net, &basis))?;
    }
    if out.format.contains(&Format::Structured) {
        dir.json("cavities.json", &basis_to_json(net, &basis))?;
    }
    if opts.shorten.is_some() {
        dir.write("moves.txt", move_log_text(net, &moves))?;
    }
    if opts.oriented_check {
        dir.table("oriented", &oriented, &out.format)?;
    }
    if opts.hodge_check {
        dir.table("hodge", &hodge, &out.format)?;
    }
    let config = json!({
        "input": loaded.config,
        "shorten": opts.shorten,
        "exhaustive_1": opts.exhaustive_1,
        "oriented_check": opts.oriented_check,
        "hodge_check": opts.hodge_check,
    });
    dir.finish(with_formats(config, &out.format), loaded.digests)?;

    match failures.is_empty() {
        true => Ok(()),
        false => Err(Failure::consistency(failures.join("; "))),
    }
}

fn cmd_barcodes(args: &InputArgs, out: &OutputArgs, filtration: Option<&Path>) -> Result<(), Failure> {
    let (barcode, source, config, digests) = match filtration {
        Some(path) => {
            let bytes = input::read(path)?;
            let mut digests = vec![input::digest(path, &bytes)];
            let text = input::text(path, bytes)?;
            let given: Option<(SimplicialNetwork, serde_json::Value)> =
                if args.input.is_some() || args.ba.is_some() {
                    let loaded = input::load(args)?;
                    digests.extend(loaded.digests);
                    Some((loaded.network, loaded.config))
                } else {
                    None
                };
            let (net, f) = parse_morse_text(&text, given.as_ref().map(|g| &g.0))?;
            let barcode = persistence_pairs(&net, &order_from_morse(&f))?;
            (barcode, "file", given.map(|g| g.1), digests)
        }
        None => {
            let loaded = input::load(args)?;
            let net = &loaded.network;
            let (barcode, source) = match &loaded.distances {
                Some(d) => (persistence_pairs(net, &d.order()?)?, "distance"),
                None => {
                    let f = assign_morse(net, &classify(net)?)?;
                    (persistence_pairs(net, &order_from_morse(&f))?, "morse")
                }
            };
            (barcode, source, Some(loaded.config), loaded.digests)
        }
    };
    print!("{}", String::from_utf8(export_barcode(&barcode, "text")?).expect("ASCII"));

    let mut dir = RunDir::create(&out.out, "barcodes")?;
    write_barcode(&mut dir, &barcode, &out.format)?;
    let config = json!({ "input": config, "source": source });
    dir.finish(with_formats(config, &out.format), digests)
}
