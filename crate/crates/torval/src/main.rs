//! Command-line front end: each subcommand reads a structured text file,
//! runs the corresponding library computation, and prints a deterministic
//! key/value payload to stdout (JSON with `--json`, plus a human table on
//! stderr with `--pretty`). Exit codes: 0 success, 1 input/validation
//! failure, 2 failed computational assertion.

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde::Deserialize;
use std::path::{Path, PathBuf};

use torval::abelian::{FgGroup, GroupMap};
use torval::error::{Error, Result};
use torval::fields;
use torval::mat::{IntegerMatrix, RationalMatrix};
use torval::payload::Payload;
use torval::seqdet::{check_det_tor, grid_check, FgSequence, Grid};
use torval::tate::{herbrand_quotient, CyclicModule};
use torval::torus;

#[derive(Parser)]
#[command(
    name = "torval",
    version,
    about = "Exact determinants of exact sequences, Tate cohomology of cyclic actions, \
             and class-number / L-value reports for norm tori"
)]
struct Cli {
    /// Input file (for verify-example: a directory holding the data files)
    #[arg(long, global = true)]
    data: Option<PathBuf>,

    /// Emit the payload as JSON instead of key = value lines
    #[arg(long, global = true)]
    json: bool,

    /// Also print a human-readable table to stderr
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form U, S, V of an integer matrix file
    Snf,
    /// Both determinant routes for an exact sequence of f.g. abelian groups
    Nu,
    /// Row/column alternating-product identity of a commutative exact grid
    Grid,
    /// Tate cohomology of a finite cyclic action on a f.g. abelian group
    Tate,
    /// Full invariant report for a norm-torus extension file
    Torus,
    /// Run the shipped worked example and check every golden value
    VerifyExample,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Snf => cmd_snf(&cli),
        Command::Nu => cmd_nu(&cli),
        Command::Grid => cmd_grid(&cli),
        Command::Tate => cmd_tate(&cli),
        Command::Torus => cmd_torus(&cli),
        Command::VerifyExample => cmd_verify_example(&cli),
    };
    let code = match outcome {
        Ok((payload, code)) => {
            emit(&cli, &payload);
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(cli.command, Command::VerifyExample) {
                2
            } else {
                e.exit_code()
            }
        }
    };
    std::process::exit(code);
}

fn emit(cli: &Cli, payload: &Payload) {
    if cli.json {
        println!("{}", payload.to_json());
    } else {
        print!("{}", payload.to_kv());
    }
    if cli.pretty {
        eprint!("{}", payload.to_table());
    }
}

fn input_path(cli: &Cli) -> Result<&Path> {
    cli.data
        .as_deref()
        .ok_or_else(|| Error::validation("this subcommand needs --data <path>"))
}

fn read_input(cli: &Cli) -> Result<String> {
    let path = input_path(cli)?;
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn toml_int(v: &toml::Value) -> Result<BigInt> {
    match v {
        toml::Value::Integer(n) => Ok(BigInt::from(*n)),
        toml::Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}"))),
        other => Err(Error::Parse(format!("expected an integer, got {other}"))),
    }
}

fn parse_matrix(
    entries: &[Vec<toml::Value>],
    rows: Option<usize>,
    cols: Option<usize>,
) -> Result<IntegerMatrix> {
    let r = rows.unwrap_or(entries.len());
    let c = cols.unwrap_or_else(|| entries.first().map_or(0, Vec::len));
    if entries.len() != r {
        return Err(Error::validation(format!(
            "matrix declares {r} rows but has {} entry rows",
            entries.len()
        )));
    }
    let mut m = IntegerMatrix::zero(r, c);
    for (i, row) in entries.iter().enumerate() {
        if row.len() != c {
            return Err(Error::validation(format!(
                "matrix row {i} has {} entries, expected {c}",
                row.len()
            )));
        }
        for (j, v) in row.iter().enumerate() {
            m[(i, j)] = toml_int(v)?;
        }
    }
    Ok(m)
}

#[derive(Deserialize)]
struct MatrixFile {
    rows: Option<usize>,
    cols: Option<usize>,
    entries: Vec<Vec<toml::Value>>,
}

fn cmd_snf(cli: &Cli) -> Result<(Payload, i32)> {
    let file: MatrixFile =
        toml::from_str(&read_input(cli)?).map_err(|e| Error::Parse(e.to_string()))?;
    let a = parse_matrix(&file.entries, file.rows, file.cols)?;
    let snf = a.smith_normal_form();
    let mut p = Payload::new();
    p.int("rows", a.rows() as i64);
    p.int("cols", a.cols() as i64);
    p.int("rank", snf.rank() as i64);
    let factors = snf.invariant_factors();
    p.text(
        "invariant_factors",
        factors
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(","),
    );
    p.matrix("u", &snf.u);
    p.matrix("s", &snf.s);
    p.matrix("v", &snf.v);
    Ok((p, 0))
}

#[derive(Deserialize)]
struct GroupSpec {
    #[serde(default)]
    invariant_factors: Vec<u64>,
    #[serde(default)]
    free_rank: usize,
}

impl GroupSpec {
    fn build(&self) -> Result<FgGroup> {
        FgGroup::new(
            self.invariant_factors
                .iter()
                .map(|&d| BigInt::from(d))
                .collect(),
            self.free_rank,
        )
    }
}

#[derive(Deserialize)]
struct MapSpec {
    matrix: Vec<Vec<toml::Value>>,
}

#[derive(Deserialize)]
struct SequenceFile {
    groups: Vec<GroupSpec>,
    #[serde(default)]
    maps: Vec<MapSpec>,
}

fn cmd_nu(cli: &Cli) -> Result<(Payload, i32)> {
    let file: SequenceFile =
        toml::from_str(&read_input(cli)?).map_err(|e| Error::Parse(e.to_string()))?;
    let groups: Vec<FgGroup> = file
        .groups
        .iter()
        .map(GroupSpec::build)
        .collect::<Result<_>>()?;
    if file.maps.len() + 1 != groups.len() {
        return Err(Error::validation(format!(
            "{} groups need {} maps, got {}",
            groups.len(),
            groups.len() - 1,
            file.maps.len()
        )));
    }
    let mut maps = Vec::new();
    for (i, spec) in file.maps.iter().enumerate() {
        let m = parse_matrix(
            &spec.matrix,
            Some(groups[i + 1].num_generators()),
            Some(groups[i].num_generators()),
        )?;
        maps.push(GroupMap::new(groups[i].clone(), groups[i + 1].clone(), m)?);
    }
    let seq = FgSequence::new(groups, maps)?;
    let report = check_det_tor(&seq)?;
    let mut p = Payload::new();
    p.rational("nu_geometric", report.nu_geometric);
    p.rational("nu_torsion", report.nu_torsion);
    p.bool("equal", report.equal);
    let code = if report.equal { 0 } else { 2 };
    Ok((p, code))
}

fn toml_rational(v: &toml::Value) -> Result<num_rational::BigRational> {
    match v {
        toml::Value::Integer(n) => Ok(num_rational::BigRational::from(BigInt::from(*n))),
        toml::Value::String(s) => s
            .trim()
            .parse::<num_rational::BigRational>()
            .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}"))),
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    }
}

fn parse_rational_matrix(
    entries: &[Vec<toml::Value>],
    rows: usize,
    cols: usize,
) -> Result<RationalMatrix> {
    if entries.len() != rows {
        return Err(Error::validation(format!(
            "matrix has {} rows, expected {rows}",
            entries.len()
        )));
    }
    let mut m = RationalMatrix::zero(rows, cols);
    for (i, row) in entries.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::validation(format!(
                "matrix row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (j, v) in row.iter().enumerate() {
            m[(i, j)] = toml_rational(v)?;
        }
    }
    Ok(m)
}

type TomlMatrix = Vec<Vec<toml::Value>>;

#[derive(Deserialize)]
struct GridMapRow {
    maps: Vec<TomlMatrix>,
}

#[derive(Deserialize)]
struct GridFile {
    dims: Vec<Vec<usize>>,
    horizontal: Vec<GridMapRow>,
    vertical: Vec<GridMapRow>,
}

fn cmd_grid(cli: &Cli) -> Result<(Payload, i32)> {
    let file: GridFile =
        toml::from_str(&read_input(cli)?).map_err(|e| Error::Parse(e.to_string()))?;
    let dims = file.dims;
    if dims.is_empty() || dims.iter().any(|r| r.len() != dims[0].len()) {
        return Err(Error::validation(
            "dims must be a rectangular table of cell dimensions",
        ));
    }
    let (m, n) = (dims.len(), dims[0].len());
    let expect = |rows: &[GridMapRow], count, per, what: &str| -> Result<()> {
        if rows.len() != count || rows.iter().any(|r| r.maps.len() != per) {
            return Err(Error::validation(format!(
                "{what} maps must form {count} rows of {per} matrices"
            )));
        }
        Ok(())
    };
    expect(&file.horizontal, m, n - 1, "horizontal")?;
    expect(&file.vertical, m - 1, n, "vertical")?;
    let mut horizontal = Vec::with_capacity(m);
    for (i, row) in file.horizontal.iter().enumerate() {
        let mut maps = Vec::with_capacity(n - 1);
        for (j, mat) in row.maps.iter().enumerate() {
            maps.push(parse_rational_matrix(mat, dims[i][j + 1], dims[i][j])?);
        }
        horizontal.push(maps);
    }
    let mut vertical = Vec::with_capacity(m - 1);
    for (i, row) in file.vertical.iter().enumerate() {
        let mut maps = Vec::with_capacity(n);
        for (j, mat) in row.maps.iter().enumerate() {
            maps.push(parse_rational_matrix(mat, dims[i + 1][j], dims[i][j])?);
        }
        vertical.push(maps);
    }
    let grid = Grid::new(dims, horizontal, vertical)?;
    let report = grid_check(&grid)?;
    let mut p = Payload::new();
    p.rational("row_product", report.row_product);
    p.rational("col_product", report.col_product);
    p.bool("equal", report.equal);
    Ok((p, if report.equal { 0 } else { 2 }))
}

#[derive(Deserialize)]
struct ModuleFile {
    #[serde(default)]
    invariant_factors: Vec<u64>,
    #[serde(default)]
    free_rank: usize,
    order: u32,
    sigma: Vec<Vec<toml::Value>>,
}

fn cmd_tate(cli: &Cli) -> Result<(Payload, i32)> {
    let file: ModuleFile =
        toml::from_str(&read_input(cli)?).map_err(|e| Error::Parse(e.to_string()))?;
    let module = FgGroup::new(
        file.invariant_factors
            .iter()
            .map(|&d| BigInt::from(d))
            .collect(),
        file.free_rank,
    )?;
    let n = module.num_generators();
    let sigma = GroupMap::new(
        module.clone(),
        module.clone(),
        parse_matrix(&file.sigma, Some(n), Some(n))?,
    )?;
    let cm = CyclicModule::new(module, sigma, file.order)?;
    let h0 = cm.tate_h0();
    let hm1 = cm.tate_h_minus1();
    let mut p = Payload::new();
    p.text("h0", h0.to_string());
    p.int("h0_order", h0.torsion_order());
    p.text("h_minus1", hm1.to_string());
    p.int("h_minus1_order", hm1.torsion_order());
    if h0.is_finite() && hm1.is_finite() {
        p.rational("herbrand_quotient", herbrand_quotient(&cm)?);
    }
    Ok((p, 0))
}

fn torus_payload(report: &torus::TorusReport) -> Payload {
    let mut p = Payload::new();
    p.text("kernel_structure", report.kernel_structure.to_string());
    for (i, g) in report.free_generators.iter().enumerate() {
        p.text(&format!("free_generator_{}", i + 1), g.to_string());
    }
    p.int("w_t", report.w_t.clone());
    p.int("h_t_ono", report.h_t_ono.clone());
    p.int("h_t_katayama_dual", report.h_t_katayama_dual.clone());
    p.real("r_t", report.r_t);
    p.int("sha1_order", report.sha1_order.clone());
    p.int("h1_char_order", report.h1_char_order.clone());
    p.int("ramification_product", report.ramification_product.clone());
    p.real("lstar_galois", report.lstar_galois);
    p.real("lstar_analytic", report.lstar_analytic);
    p.real("discrepancy", report.discrepancy);
    p.bool("routes_agree", report.routes_agree());
    p
}

fn cmd_torus(cli: &Cli) -> Result<(Payload, i32)> {
    let ext = fields::load_extension(input_path(cli)?)?;
    let report = torus::build_report(&ext)?;
    let code = if report.routes_agree() { 0 } else { 2 };
    Ok((torus_payload(&report), code))
}

fn cmd_verify_example(cli: &Cli) -> Result<(Payload, i32)> {
    let ext = match &cli.data {
        Some(dir) => fields::load_extension(&dir.join("qzeta12-over-qi.ext"))?,
        None => fields::builtin::example_extension()?,
    };
    let checks = torus::verify_example(&ext)?;
    let mut p = Payload::new();
    let mut all = true;
    for c in &checks {
        p.text(
            &format!("check_{}", c.name),
            if c.passed { "pass" } else { "fail" },
        );
        all &= c.passed;
    }
    p.bool("overall", all);
    if cli.pretty {
        eprintln!("worked example: {} checks", checks.len());
        for c in &checks {
            eprintln!(
                "  {} {:<24} {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
    }
    Ok((p, if all { 0 } else { 2 }))
}
