use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use drinfeld_acceptance::{run_all, DEFAULT_SEED};
use drinfeld_core::drinfeld::{torsion_global, torsion_local, DrinfeldModule, TorsionConfig};
use drinfeld_core::elliptic::{ingest_csv_path, mu_elliptic, szpiro_ratio, theorem_check};
use drinfeld_core::funcfield::{parse_place, parse_poly, parse_ratfunc, weighted_height, LogValue, Place};
use drinfeld_core::globalmu::{family_scan, mu, torsion_bound, FamilySpec, FAMILY_COLUMNS};
use drinfeld_core::localdyn::{component_module, julia_contains_with, local_report};
use drinfeld_core::localfield::{LocalField, RootReport};
use drinfeld_core::tate::{lattice_reduce_with, uniformize, Lattice};
use drinfeld_core::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "drinfeld", version, about = "Local and global invariants of Drinfeld F_q[T]-modules over F_q(t)")]
struct Cli {
    /// Working precision in the local field (absolute, in powers of the uniformizer).
    #[arg(long, global = true)]
    prec: Option<i64>,
    /// Degree budget for annihilator searches and lattice enumeration.
    #[arg(long = "budget-deg", global = true)]
    budget_deg: Option<u32>,
    /// Seed for randomized corpora.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The j-invariant and its weighted height.
    Jinv {
        #[arg(long)]
        module: PathBuf,
    },
    /// Local report and component module at a place.
    Local {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        place: String,
    },
    /// Membership in the filled Julia set at a finite place.
    Julia {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        place: String,
        #[arg(long)]
        x: String,
    },
    /// a-torsion over F_q(t), or local a-torsion roots at --place (CSV).
    Torsion {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        place: Option<String>,
    },
    /// mu(phi, N, a) with its witness set.
    Mu {
        #[arg(long)]
        module: PathBuf,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        ideal: String,
    },
    /// Tate uniformization: phi from psi and a lattice at a finite place.
    Tate {
        /// Module file for psi (good reduction at the place).
        #[arg(long)]
        psi: PathBuf,
        #[arg(long)]
        place: String,
        /// Lattice generator, a rational function with a pole at the place.
        #[arg(long = "lattice", required = true)]
        lattice: Vec<String>,
        /// Truncation of the exponential (q-power index); default rank + 2.
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Scan a one-parameter family by parameter height (CSV).
    Family {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        height: usize,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-curve Szpiro ratio, mu and the lower-bound check (CSV).
    Elliptic {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long = "N", default_value_t = 0)]
        excluded: usize,
    },
    /// Run the acceptance corpus.
    Selftest,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_module(path: &Path) -> Result<DrinfeldModule> {
    DrinfeldModule::parse(&read(path)?)
}

fn places(ps: &[Place]) -> String {
    let s: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    format!("[{}]", s.join(", "))
}

fn io_err(e: io::Error) -> Error {
    Error::Io(e.to_string())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn write_root_csv<W: Write>(out: W, rep: &RootReport) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(["slope", "count", "rational", "certified"]).map_err(csv_err)?;
    for (slope, count) in &rep.valuation_multiset {
        let at = rep.rational_roots.iter().filter(|(z, _)| z.valuation().map(|v| -LogValue::from_integer(v)) == Some(*slope));
        let (rational, certified) = at.fold((0u64, 0u64), |(r, c), (_, ok)| (r + 1, c + *ok as u64));
        w.write_record([slope.to_string(), count.to_string(), rational.to_string(), certified.to_string()]).map_err(csv_err)?;
    }
    w.flush().map_err(io_err)
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<bool> {
    match cli.cmd {
        Command::Jinv { module } => {
            let phi = load_module(&module)?;
            let j = phi.j_invariant();
            for (i, (c, w)) in j.coords().iter().zip(j.weights()).enumerate() {
                writeln!(out, "j_{}\t{c}\tweight {w}", i + 1).map_err(io_err)?;
            }
            writeln!(out, "height\t{}", weighted_height(&j)).map_err(io_err)?;
        }
        Command::Local { module, place } => {
            let phi = load_module(&module)?;
            let v = parse_place(phi.field(), &place)?;
            writeln!(out, "{}", local_report(&phi, &v)).map_err(io_err)?;
            if !v.is_infinite() {
                let cm = component_module(&phi, &v, cli.prec.unwrap_or(0))?;
                let fs: Vec<String> = cm.invariant_factors.iter().map(|p| p.to_string()).collect();
                writeln!(out, "component_invariant_factors\t[{}]", fs.join(", ")).map_err(io_err)?;
                writeln!(out, "component_size\t{}", cm.size).map_err(io_err)?;
                writeln!(out, "component_complete\t{}", cm.complete).map_err(io_err)?;
            }
        }
        Command::Julia { module, place, x } => {
            let phi = load_module(&module)?;
            let v = parse_place(phi.field(), &place)?;
            let x = parse_ratfunc(phi.field(), &x)?;
            writeln!(out, "in_julia\t{}", julia_contains_with(&phi, &v, &x, cli.budget_deg)?).map_err(io_err)?;
        }
        Command::Torsion { module, a, place } => {
            let phi = load_module(&module)?;
            let a = parse_poly(phi.field(), &a)?;
            match place {
                Some(p) => {
                    let v = parse_place(phi.field(), &p)?;
                    let rep = torsion_local(&phi, &a, &v, cli.prec.unwrap_or(16))?;
                    write_root_csv(&mut *out, &rep)?;
                }
                None => {
                    let t = torsion_global(&phi, &a, &TorsionConfig::default())?;
                    let fs: Vec<String> = t.invariant_factors.iter().map(|p| p.to_string()).collect();
                    writeln!(out, "size\t{}", t.size()).map_err(io_err)?;
                    writeln!(out, "dim\t{}", t.basis.len()).map_err(io_err)?;
                    writeln!(out, "invariant_factors\t[{}]", fs.join(", ")).map_err(io_err)?;
                    for x in t.points() {
                        writeln!(out, "point\t{x}").map_err(io_err)?;
                    }
                }
            }
        }
        Command::Mu { module, n, ideal } => {
            let phi = load_module(&module)?;
            let a = parse_poly(phi.field(), &ideal)?;
            let m = mu(&phi, n, &a)?;
            writeln!(out, "mu\t{}", m.mu).map_err(io_err)?;
            writeln!(out, "S_bad\t{}", places(&m.s_bad)).map_err(io_err)?;
            writeln!(out, "S_a\t{}", places(&m.s_a)).map_err(io_err)?;
            writeln!(out, "witness_S\t{}", places(&m.witness_s)).map_err(io_err)?;
            for (v, j) in &m.per_place_j {
                writeln!(out, "j_v\t{v}\t{j}").map_err(io_err)?;
            }
        }
        Command::Tate { psi, place, lattice, terms } => {
            let psi = load_module(&psi)?;
            let v = parse_place(psi.field(), &place)?;
            if v.is_infinite() {
                return Err(Error::Invalid("lattices are built at finite places".into()));
            }
            let prec = cli.prec.unwrap_or(40);
            let k = LocalField::new(psi.field(), &v)?;
            let gens = lattice.iter().map(|s| parse_ratfunc(psi.field(), s).map(|x| k.embed(&x, prec))).collect::<Result<Vec<_>>>()?;
            let lat = lattice_reduce_with(&Lattice::new(&psi, &v, gens, prec)?, cli.budget_deg.unwrap_or(2) as usize)?;
            let r = psi.rank() + lat.rank();
            let u = uniformize(&lat, terms.unwrap_or(r + 2), prec)?;
            for (i, w) in lat.generators.iter().enumerate() {
                writeln!(out, "omega_{}\tv={}\t{w}", i + 1, w.val_or_prec()).map_err(io_err)?;
            }
            for (i, (c, val)) in u.module.coeffs().iter().zip(u.module.valuations()).enumerate() {
                let val = val.map_or("inf".to_string(), |x| x.to_string());
                writeln!(out, "a_{i}\tv={val}\t{c}").map_err(io_err)?;
            }
            for (i, res) in u.residuals.iter().enumerate() {
                let val = res.valuation().map_or(format!(">={}", res.prec()), |x| format!("={x}"));
                writeln!(out, "residual_{}\tv{val}", r + 1 + i).map_err(io_err)?;
            }
            writeln!(out, "{}", u.module.report()).map_err(io_err)?;
        }
        Command::Family { spec, height, n, ideal, out: path } => {
            let spec = FamilySpec::parse(&read(&spec)?)?;
            let a = parse_poly(spec.f, &ideal)?;
            let scan = family_scan(&spec, height, n, &a);
            let bound = torsion_bound(spec.f.q() as u64, spec.rank(), n, &a);
            let sink: Box<dyn Write + '_> = match &path {
                Some(p) => Box::new(fs::File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?),
                None => Box::new(&mut *out),
            };
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink);
            w.write_record(FAMILY_COLUMNS).map_err(csv_err)?;
            for row in &scan.rows {
                w.write_record(row.fields()).map_err(csv_err)?;
            }
            if !scan.rows.is_empty() {
                w.write_record(scan.summary.fields(&bound)).map_err(csv_err)?;
            }
            w.flush().map_err(io_err)?;
            for (beta, msg) in &scan.log {
                eprintln!("skipped\t{beta}\t{msg}");
            }
        }
        Command::Elliptic { csv: path, n, excluded } => {
            let recs = ingest_csv_path(&path)?;
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut *out);
            w.write_record(["label", "sigma", "mu", "check"]).map_err(csv_err)?;
            for rec in &recs {
                let sigma = szpiro_ratio(rec).map_or_else(|e| format!("error:{}", e.code()), |s| s.to_string());
                let m = mu_elliptic(rec, excluded, n).map_or_else(|e| format!("error:{}", e.code()), |m| m.mu.to_string());
                let check = match theorem_check(rec, n) {
                    Ok(c) if c.holds => "holds".to_string(),
                    Ok(_) => "fails".to_string(),
                    Err(e) => format!("error:{}", e.code()),
                };
                w.write_record([rec.label.clone(), sigma, m, check]).map_err(csv_err)?;
            }
            w.flush().map_err(io_err)?;
        }
        Command::Selftest => {
            let outcomes = run_all(cli.seed);
            for o in &outcomes {
                writeln!(out, "{o}").map_err(io_err)?;
            }
            let passed = outcomes.iter().filter(|o| o.pass).count();
            writeln!(out, "passed {passed}/{}", outcomes.len()).map_err(io_err)?;
            return Ok(passed == outcomes.len());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {}: {e}", e.code());
            match e {
                Error::Parse(_) | Error::Io(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
