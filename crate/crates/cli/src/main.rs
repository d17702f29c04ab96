//! primeprod: exact h(n) (the largest product of distinct primes with sum
//! at most n), prime counting/summation, the prime-fraction optimizer G,
//! and the property-check suites, from the command line.

use clap::{Args, Parser, Subcommand};
use primeprod::error::Error;
use primeprod::prime_sum::{pif, PifConfig, Weight};
use primeprod::verify::{self, CheckReport};
use primeprod::{GConfig, HConfig, HEngine};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "primeprod", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Args, Clone)]
struct Tuning {
    /// Split-point multiplier: y = y-factor * x^(1/3), clamped to
    /// [x^(1/3), sqrt(x)]
    #[arg(long, global = true, default_value_t = 8.0)]
    y_factor: f64,

    /// Sieve block length (default: y clamped to [2^16, 2^22])
    #[arg(long, global = true)]
    block_size: Option<usize>,

    /// Memory budget: largest allowed base-table bound y
    /// [env: PRIMEPROD_MAX_TABLE_Y]
    #[arg(long, global = true)]
    max_table_y: Option<u64>,

    /// expand() materializes the primorial only up to this base prime
    #[arg(long, global = true, default_value_t = 10_000)]
    expand_budget: u64,

    /// Below this n, h(n) is answered from the DP table
    #[arg(long, global = true, default_value_t = 5350)]
    small_n_threshold: u64,

    /// Largest even delta tried by the accelerated G route
    #[arg(long, global = true, default_value_t = 10_000)]
    delta_cap: u64,

    /// Worker threads for the verify suites (1 = fully deterministic order)
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

impl Tuning {
    fn h_config(&self) -> Result<HConfig, Error> {
        let mut cfg = HConfig::default();
        cfg.pif = self.pif_config();
        cfg.g = GConfig {
            delta_cap: self.delta_cap,
            ..GConfig::default()
        };
        cfg.expand_budget = self.expand_budget;
        cfg.small_n_threshold = self.small_n_threshold;
        Ok(cfg)
    }

    fn pif_config(&self) -> PifConfig {
        let mut cfg = PifConfig::default();
        cfg.y_factor = self.y_factor;
        cfg.block_size = self.block_size;
        if let Some(y) = self.max_table_y.or_else(|| {
            std::env::var("PRIMEPROD_MAX_TABLE_Y")
                .ok()
                .and_then(|v| v.parse().ok())
        }) {
            cfg.max_table_y = y;
        }
        cfg
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute h(N) in factored form (N up to 1.6e35; accepts 10^35, 1e12,
    /// plain digits or digits with underscores)
    H {
        n: String,
        /// Also materialize the exact integer (subject to --expand-budget)
        #[arg(long)]
        expand: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the table of h_j(n) for 2 <= n <= NMAX
    #[command(name = "hj-table")]
    HjTable {
        nmax: u64,
        /// Tab-separated output instead of the aligned table
        #[arg(long)]
        tsv: bool,
    },
    /// Sum of f(p) over primes p <= X for the chosen weight
    Pif {
        x: String,
        #[arg(long, value_parser = Weight::parse, default_value = "identity")]
        weight: Weight,
        #[arg(long)]
        json: bool,
    },
    /// Number of primes up to X (pif with the unit weight)
    Pi {
        x: String,
        #[arg(long)]
        json: bool,
    },
    /// The optimal prime fraction G(PK, M)
    G {
        pk: String,
        m: String,
        #[arg(long)]
        json: bool,
    },
    /// The bracket p_k, sigma_k <= N < sigma_k + p_(k+1)
    #[command(name = "locate-k")]
    LocateK {
        n: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the property-check suites; nonzero exit on any violation
    Verify {
        /// One of: gap, pi-sum, structure, parity, increasing (default all)
        #[arg(long)]
        suite: Option<String>,
        /// Domain override for the selected suite(s)
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

const EXIT_DOMAIN: i32 = 3;
const EXIT_CAPACITY: i32 = 4;
const EXIT_RESOURCE: i32 = 5;
const EXIT_VERIFY: i32 = 6;
const EXIT_NUMERIC: i32 = 7;

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) => EXIT_DOMAIN,
        Error::Capacity(_) => EXIT_CAPACITY,
        Error::Resource(_) => EXIT_RESOURCE,
        Error::Numeric(_) => EXIT_NUMERIC,
        Error::Internal(_) => EXIT_NUMERIC,
    }
}

/// Accept 123, 1_000, 1e12 and 10^35 forms.
fn parse_big(s: &str) -> Result<u128, Error> {
    let s = s.trim().replace('_', "");
    let plain = |t: &str| -> Result<u128, Error> {
        t.parse::<u128>()
            .map_err(|_| Error::domain(format!("cannot parse {t:?} as an integer")))
    };
    if let Some((base, exp)) = s.split_once('^') {
        let b = plain(base)?;
        let e: u32 = exp
            .parse()
            .map_err(|_| Error::domain(format!("bad exponent in {s:?}")))?;
        return b
            .checked_pow(e)
            .ok_or_else(|| Error::capacity(format!("{s} overflows 128 bits")));
    }
    if let Some((mant, exp)) = s.split_once(['e', 'E']) {
        let m = plain(mant)?;
        let e: u32 = exp
            .parse()
            .map_err(|_| Error::domain(format!("bad exponent in {s:?}")))?;
        return 10u128
            .checked_pow(e)
            .and_then(|p| m.checked_mul(p))
            .ok_or_else(|| Error::capacity(format!("{s} overflows 128 bits")));
    }
    plain(&s)
}

fn parse_u64(s: &str) -> Result<u64, Error> {
    let v = parse_big(s)?;
    u64::try_from(v).map_err(|_| Error::capacity(format!("{s} does not fit in 64 bits")))
}

/// JSON integers above u64 become decimal strings.
fn json_int(v: u128) -> Value {
    if let Ok(small) = u64::try_from(v) {
        json!(small)
    } else {
        json!(v.to_string())
    }
}

fn json_i128(v: i128) -> Value {
    if let (true, Ok(small)) = (v >= 0, u64::try_from(v.max(0) as u128)) {
        json!(small)
    } else {
        json!(v.to_string())
    }
}

fn product_expr(primes: &[u64]) -> String {
    if primes.is_empty() {
        "1".to_string()
    } else {
        primes
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join("*")
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::H { n, expand, json } => {
            let n = parse_big(&n)?;
            let engine = HEngine::new(cli.tuning.h_config()?)?;
            let out = engine.h(n)?;
            let v = &out.value;
            let expanded = if expand {
                Some(engine.expand(v)?)
            } else {
                None
            };
            if json {
                let mut obj = Map::new();
                obj.insert("n".into(), json_int(n));
                obj.insert("base_prime".into(), json!(v.base_prime));
                if let Some(k) = v.base_index {
                    obj.insert("base_index".into(), json!(k));
                }
                obj.insert("sigma_base".into(), json_int(v.sigma_base));
                obj.insert("numerator".into(), json!(v.numer));
                obj.insert("denominator".into(), json!(v.denom));
                obj.insert("ell".into(), json_int(v.ell()));
                if let Some(e) = &expanded {
                    obj.insert("expanded".into(), json!(e.to_string()));
                }
                if let Some(lg) = v.log10 {
                    obj.insert("log10".into(), json!(lg));
                }
                if let Some(st) = &out.g_stats {
                    if let Some(d) = st.delta {
                        obj.insert("delta".into(), json!(d));
                    }
                    obj.insert("inner_evaluations".into(), json!(st.inner_evaluations));
                }
                println!("{}", Value::Object(obj));
            } else {
                println!(
                    "h({n}) = N({}) * {} / {}",
                    v.base_prime,
                    product_expr(&v.numer),
                    product_expr(&v.denom)
                );
                if let Some(k) = v.base_index {
                    println!("  base_index  = {k}");
                }
                println!("  sigma_base  = {}", v.sigma_base);
                println!("  numerator   = {:?}", v.numer);
                println!("  denominator = {:?}", v.denom);
                println!("  ell         = {}", v.ell());
                if let Some(lg) = v.log10 {
                    println!("  log10       = {lg:.6}");
                }
                if let Some(st) = &out.g_stats {
                    if let Some(d) = st.delta {
                        println!("  delta = {d}, inner evaluations = {}", st.inner_evaluations);
                    }
                }
                if let Some(e) = &expanded {
                    println!("  expanded    = {e}");
                }
            }
            Ok(0)
        }
        Command::HjTable { nmax, tsv } => {
            let table = primeprod::compute_table(nmax, primeprod::Alphabet::All)?;
            print!("{}", table.render(tsv));
            Ok(0)
        }
        Command::Pif { x, weight, json } => {
            let x = parse_u64(&x)?;
            let v = pif(x, weight, &cli.tuning.pif_config())?;
            if json {
                println!(
                    "{}",
                    json!({"x": x, "weight": weight.name(), "value": json_i128(v)})
                );
            } else {
                println!("{v}");
            }
            Ok(0)
        }
        Command::Pi { x, json } => {
            let x = parse_u64(&x)?;
            let v = pif(x, Weight::Unit, &cli.tuning.pif_config())?;
            if json {
                println!("{}", json!({"x": x, "value": json_i128(v)}));
            } else {
                println!("{v}");
            }
            Ok(0)
        }
        Command::G { pk, m, json } => {
            let pk = parse_u64(&pk)?;
            let m = parse_u64(&m)?;
            let mut gcfg = GConfig::default();
            gcfg.delta_cap = cli.tuning.delta_cap;
            let (f, stats) = primeprod::g(pk, m, &gcfg)?;
            if json {
                let mut obj = Map::new();
                obj.insert("p_k".into(), json!(pk));
                obj.insert("m".into(), json!(m));
                obj.insert("numerator".into(), json!(f.numer));
                obj.insert("denominator".into(), json!(f.denom));
                obj.insert("ell".into(), json_i128(f.ell()));
                obj.insert("path".into(), json!(format!("{:?}", stats.path)));
                if let Some(d) = stats.delta {
                    obj.insert("delta".into(), json!(d));
                }
                obj.insert("inner_evaluations".into(), json!(stats.inner_evaluations));
                println!("{}", Value::Object(obj));
            } else {
                println!(
                    "G({pk}, {m}) = {} / {}",
                    product_expr(&f.numer),
                    product_expr(&f.denom)
                );
                println!("  numerator   = {:?}", f.numer);
                println!("  denominator = {:?}", f.denom);
                println!("  ell         = {}", f.ell());
                if let Some(d) = stats.delta {
                    println!("  delta = {d}, inner evaluations = {}", stats.inner_evaluations);
                }
            }
            Ok(0)
        }
        Command::LocateK { n, json } => {
            let n = parse_big(&n)?;
            let engine = HEngine::new(cli.tuning.h_config()?)?;
            let loc = engine.locate_k(n)?;
            let n_prime = n - loc.sigma_k;
            if json {
                let mut obj = Map::new();
                obj.insert("n".into(), json_int(n));
                obj.insert("p_k".into(), json!(loc.p_k));
                obj.insert("sigma_k".into(), json_int(loc.sigma_k));
                obj.insert("p_next".into(), json!(loc.p_next));
                obj.insert("n_prime".into(), json_int(n_prime));
                if let Some(k) = loc.k {
                    obj.insert("k".into(), json!(k));
                }
                println!("{}", Value::Object(obj));
            } else {
                println!("p_k     = {}", loc.p_k);
                println!("sigma_k = {}", loc.sigma_k);
                println!("p_next  = {}", loc.p_next);
                println!("n'      = {n_prime}");
                if let Some(k) = loc.k {
                    println!("k       = {k}");
                }
            }
            Ok(0)
        }
        Command::Verify { suite, limit, json } => {
            let suites: Vec<&str> = match suite.as_deref() {
                None | Some("all") => vec!["gap", "pi-sum", "structure", "parity", "increasing"],
                Some(s) => vec![s],
            };
            let runs: Vec<(String, u64)> = suites
                .iter()
                .map(|&name| {
                    let default = match name {
                        "gap" => 1_000_000,
                        "pi-sum" => 39_018,
                        _ => 5350,
                    };
                    (name.to_string(), limit.unwrap_or(default))
                })
                .collect();
            let run_one = |name: &str, lim: u64| -> Result<CheckReport, Error> {
                match name {
                    "gap" => verify::check_gap_lemmas(lim),
                    "pi-sum" => verify::check_pi_sum_table(lim),
                    "structure" => verify::check_structure_props(lim),
                    "parity" => verify::check_parity(lim),
                    "increasing" => verify::check_increasing(lim),
                    other => Err(Error::domain(format!("unknown suite {other:?}"))),
                }
            };
            let reports: Vec<Result<CheckReport, Error>> = if cli.tuning.threads > 1 {
                std::thread::scope(|scope| {
                    let handles: Vec<_> = runs
                        .iter()
                        .map(|(name, lim)| {
                            let name = name.clone();
                            let lim = *lim;
                            scope.spawn(move || run_one(&name, lim))
                        })
                        .collect();
                    handles.into_iter().map(|h| h.join().unwrap()).collect()
                })
            } else {
                runs.iter().map(|(name, lim)| run_one(name, *lim)).collect()
            };
            let mut all_pass = true;
            let mut records = Vec::new();
            for rep in reports {
                let rep = rep?;
                let pass = rep.passed();
                all_pass &= pass;
                if json {
                    records.push(json!({
                        "name": rep.name,
                        "domain": rep.domain,
                        "pass": pass,
                        "violations": rep.violations,
                        "equality_witnesses": rep.equality_witnesses.len(),
                        "hypothesis_vacuous": rep.hypothesis_vacuous,
                    }));
                } else {
                    println!(
                        "{:<12} {:<42} {} (violations: {}, equalities: {}, vacuous: {})",
                        rep.name,
                        rep.domain,
                        if pass { "PASS" } else { "FAIL" },
                        rep.violations.len(),
                        rep.equality_witnesses.len(),
                        rep.hypothesis_vacuous,
                    );
                    for v in &rep.violations {
                        println!("    {v}");
                    }
                }
            }
            if json {
                println!("{}", json!(records));
            }
            Ok(if all_pass { 0 } else { EXIT_VERIFY })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}
