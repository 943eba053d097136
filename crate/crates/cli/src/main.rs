use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ringauto_core::basic::{self, BasicAut, ClassTable};
use ringauto_core::fixed::{self, SubgroupSpec};
use ringauto_core::gz4::{self, GAut4, Kind};
use ringauto_core::poly::{self, Poly};
use ringauto_core::verify::{self, Suite};
use ringauto_core::{Endo, Error, Modulus};

#[derive(Parser)]
#[command(name = "ringauto", version, about = "Automorphisms of Z_n[x]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassFormat {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Residues,
    Gilmer,
    Conjugacy,
    Fixedrings,
    Gz4,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Residues => Suite::Residues,
            SuiteArg::Gilmer => Suite::Gilmer,
            SuiteArg::Conjugacy => Suite::Conjugacy,
            SuiteArg::Fixedrings => Suite::FixedRings,
            SuiteArg::Gz4 => Suite::Gz4,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes of the basic group B(Z_n)
    Classes {
        #[arg(long)]
        modulus: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: ClassFormat,
        /// Cross-check against brute-force orbits
        #[arg(long)]
        check_bruteforce: bool,
    },
    /// Number of conjugacy classes of B(Z_n)
    Count {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        check_bruteforce: bool,
    },
    /// Decide conjugacy of two basic automorphisms given as u,a
    Conjugate {
        #[arg(long)]
        modulus: u64,
        #[arg(long, value_parser = parse_pair)]
        first: (i64, i64),
        #[arg(long, value_parser = parse_pair)]
        second: (i64, i64),
    },
    /// Canonical class representative of u*x+a
    Canon {
        #[arg(long)]
        modulus: u64,
        #[arg(long, value_parser = parse_pair)]
        elem: (i64, i64),
    },
    /// Decide whether x -> image is an automorphism
    AutoCheck {
        #[arg(long)]
        modulus: u64,
        #[arg(long, value_parser = parse_coeffs)]
        image: Coeffs,
    },
    /// Image of x under the inverse automorphism
    Invert {
        #[arg(long)]
        modulus: u64,
        #[arg(long, value_parser = parse_coeffs)]
        image: Coeffs,
    },
    /// Order of an automorphism
    Order {
        #[arg(long)]
        modulus: u64,
        #[arg(long, value_parser = parse_coeffs)]
        image: Coeffs,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// f-adic digits of g
    Expand {
        #[arg(long)]
        modulus: u64,
        #[arg(long, value_parser = parse_coeffs)]
        f: Coeffs,
        #[arg(long, value_parser = parse_coeffs)]
        g: Coeffs,
    },
    /// Fixed polynomials of degree <= D under the automorphisms with the given images
    Fixed {
        #[arg(long)]
        modulus: u64,
        #[arg(long, value_parser = parse_coeff_list)]
        gens: CoeffList,
        #[arg(long)]
        degree: usize,
        /// Work bound for the catalog comparison over Z_4 (default 2D)
        #[arg(long)]
        work_bound: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: ModuleFormat,
    },
    /// The automorphism group of Z_4[x]
    #[command(subcommand)]
    Z4(Z4Command),
    /// Run the brute-force verification suites
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 24)]
        max_n: u64,
    },
}

#[derive(Subcommand)]
enum Z4Command {
    /// Catalog ring fixed by the subgroup generated by alpha/beta elements
    Identify {
        #[arg(long, value_parser = parse_gaut_list)]
        gens: GAutList,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        work_bound: Option<usize>,
    },
    /// Pool elements fixing every ring generator
    Stabilizer {
        #[arg(long, value_parser = parse_coeff_list)]
        ring_gens: CoeffList,
        #[arg(long)]
        pool_degree: usize,
    },
    /// Conjugacy classes of the pool of degree d
    Classes {
        #[arg(long)]
        pool_degree: usize,
    },
}

type Coeffs = Vec<i64>;
type CoeffList = Vec<Vec<i64>>;
type GAutList = Vec<(Kind, Vec<i64>)>;

fn parse_coeffs(s: &str) -> Result<Coeffs, String> {
    serde_json::from_str(s.trim()).map_err(|_| format!("expected an integer array like [1,0,2], got {s:?}"))
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let bad = || format!("expected u,a, got {s:?}");
    let (u, a) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        u.trim().parse().map_err(|_| bad())?,
        a.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_coeff_list(s: &str) -> Result<CoeffList, String> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(parse_coeffs)
        .collect()
}

fn parse_gaut_list(s: &str) -> Result<GAutList, String> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|part| {
            let (kind, lit) = part
                .split_once(':')
                .ok_or_else(|| format!("expected alpha:[..] or beta:[..], got {part:?}"))?;
            let kind = match kind.trim() {
                "alpha" => Kind::Alpha,
                "beta" => Kind::Beta,
                other => return Err(format!("unknown kind {other:?}")),
            };
            Ok((kind, parse_coeffs(lit)?))
        })
        .collect()
}

fn json_coeffs(p: &Poly) -> String {
    serde_json::to_string(p.coeffs()).expect("serializable")
}

fn classes(m: Modulus, format: ClassFormat, check: bool) -> Result<String, Error> {
    if check {
        cross_check_classes(m)?;
    }
    let table = ClassTable::new(m)?;
    let mut out = String::new();
    match format {
        ClassFormat::Json => {
            out = serde_json::to_string(&table).expect("serializable");
            out.push('\n');
        }
        ClassFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &table.classes {
                w.serialize(row).map_err(|e| Error::Parse(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
            out = String::from_utf8(bytes).expect("utf8");
        }
        ClassFormat::Table => {
            writeln!(out, "B(Z_{m}): order {}, {} classes", table.group_order, table.count).unwrap();
            writeln!(out, "{:<12} {:>6}", "class", "size").unwrap();
            for row in &table.classes {
                writeln!(out, "{:<12} {:>6}", format!("{}*x+{}", row.u, row.a), row.size).unwrap();
            }
        }
    }
    Ok(out)
}

fn cross_check_classes(m: Modulus) -> Result<(), Error> {
    let orbits = basic::orbits_bruteforce(m)?;
    let classes = basic::enumerate_classes(m)?;
    let agree = orbits.len() == classes.len()
        && classes.iter().all(|c| {
            orbits
                .iter()
                .any(|o| o.contains(&c.rep) && o.len() as u64 == c.size)
        });
    if agree {
        Ok(())
    } else {
        Err(Error::InternalCheckFailed(format!(
            "class table for n = {m} disagrees with brute-force orbits"
        )))
    }
}

fn endo_of(m: Modulus, c: &[i64]) -> Endo {
    Endo::new(Poly::from_coeffs(m, c))
}

fn run(cli: Cli) -> Result<(String, bool), Error> {
    let mut out = String::new();
    let ok = true;
    match cli.command {
        Command::Classes {
            modulus,
            format,
            check_bruteforce,
        } => out = classes(Modulus::new(modulus)?, format, check_bruteforce)?,
        Command::Count {
            modulus,
            check_bruteforce,
        } => {
            let m = Modulus::new(modulus)?;
            let psi = basic::psi(m);
            if check_bruteforce {
                let brute = basic::psi_bruteforce(m)?;
                if brute != psi {
                    return Err(Error::InternalCheckFailed(format!(
                        "formula gives {psi}, brute force {brute}"
                    )));
                }
            }
            writeln!(out, "{psi}").unwrap();
        }
        Command::Conjugate {
            modulus,
            first,
            second,
        } => {
            let m = Modulus::new(modulus)?;
            let s = BasicAut::new(first.0, first.1, m)?;
            let t = BasicAut::new(second.0, second.1, m)?;
            match basic::conjugacy_witness(&s, &t)? {
                Some(g) => writeln!(out, "CONJUGATE\nwitness {},{}", g.u(), g.a()).unwrap(),
                None => writeln!(out, "NOT_CONJUGATE").unwrap(),
            }
        }
        Command::Canon { modulus, elem } => {
            let m = Modulus::new(modulus)?;
            let c = BasicAut::new(elem.0, elem.1, m)?.canonical_rep();
            writeln!(out, "{}*x+{}", c.u(), c.display_a()).unwrap();
        }
        Command::AutoCheck { modulus, image } => {
            let s = endo_of(Modulus::new(modulus)?, &image);
            match s.classify() {
                Ok(form) => writeln!(
                    out,
                    "AUTOMORPHISM\na={} u={} f={}",
                    form.a,
                    form.u,
                    json_coeffs(&form.f)
                )
                .unwrap(),
                Err(reason) => writeln!(out, "NOT_AUTOMORPHISM\n{reason}").unwrap(),
            }
        }
        Command::Invert { modulus, image } => {
            let t = endo_of(Modulus::new(modulus)?, &image).invert()?;
            writeln!(out, "{}", json_coeffs(t.image())).unwrap();
        }
        Command::Order {
            modulus,
            image,
            cap,
        } => {
            let k = endo_of(Modulus::new(modulus)?, &image).order(cap)?;
            writeln!(out, "{k}").unwrap();
        }
        Command::Expand { modulus, f, g } => {
            let m = Modulus::new(modulus)?;
            let digits = poly::f_adic_expand(&Poly::from_coeffs(m, &g), &Poly::from_coeffs(m, &f))?;
            let rows: Vec<&[u64]> = digits.iter().map(Poly::coeffs).collect();
            writeln!(out, "{}", serde_json::to_string(&rows).expect("serializable")).unwrap();
        }
        Command::Fixed {
            modulus,
            gens,
            degree,
            work_bound,
            format,
        } => {
            let m = Modulus::new(modulus)?;
            let h = SubgroupSpec::new(m, gens.iter().map(|c| endo_of(m, c)).collect())?;
            let module = fixed::fixed_module(&h, degree)?;
            match format {
                ModuleFormat::Json => writeln!(out, "{}", module.to_json()).unwrap(),
                ModuleFormat::Table => {
                    write!(out, "{module}").unwrap();
                    if m.get() == 4 {
                        let w = work_bound.unwrap_or(2 * degree);
                        let ring = fixed::identify_z4(&h, degree, w)?;
                        writeln!(out, "catalog: {} {ring} (D={degree}, W={w})", ring.token()).unwrap();
                    }
                }
            }
        }
        Command::Z4(cmd) => out = z4(cmd)?,
        Command::Verify { suite, max_n } => {
            let checks = verify::run(suite.into(), max_n)?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            for c in &checks {
                writeln!(out, "{c}").unwrap();
            }
            writeln!(out, "{} checks, {failed} failed", checks.len()).unwrap();
            return Ok((out, failed == 0));
        }
    }
    Ok((out, ok))
}

fn z4(cmd: Z4Command) -> Result<String, Error> {
    let z4 = Modulus::new(4)?;
    let mut out = String::new();
    match cmd {
        Z4Command::Identify {
            gens,
            degree,
            work_bound,
        } => {
            let elems: Vec<GAut4> = gens
                .into_iter()
                .map(|(kind, c)| GAut4::new(kind, Poly::from_coeffs(z4, &c)))
                .collect::<Result<_, _>>()?;
            let h = SubgroupSpec::new(z4, elems.iter().map(GAut4::to_endo).collect())?;
            let w = work_bound.unwrap_or(2 * degree);
            let ring = fixed::identify_z4(&h, degree, w)?;
            match &ring {
                fixed::Z4Ring::YPlusXF(f) => writeln!(out, "{} {}", ring.token(), json_coeffs(f)).unwrap(),
                _ => writeln!(out, "{}", ring.token()).unwrap(),
            }
            writeln!(out, "{ring} (D={degree}, W={w})").unwrap();
        }
        Z4Command::Stabilizer {
            ring_gens,
            pool_degree,
        } => {
            let polys: Vec<Poly> = ring_gens.iter().map(|c| Poly::from_coeffs(z4, c)).collect();
            let s = gz4::stabilizer(&polys, pool_degree)?;
            writeln!(out, "{}", s.to_json()).unwrap();
        }
        Z4Command::Classes { pool_degree } => {
            for class in gz4::conjugacy_classes(pool_degree)? {
                writeln!(out, "{}", serde_json::to_string(&class).expect("serializable")).unwrap();
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
