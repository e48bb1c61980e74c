//! Command-line workbench: parse covariant expressions, run the theta /
//! covariant / valuation / nu pipelines, and verify the identity suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use tautform_core::covariant::{dim_graded, space_basis, Covariant};
use tautform_core::divisor::{divisor_to_form, DivisorInput};
use tautform_core::expr::eval_str;
use tautform_core::gauss::GaussRat;
use tautform_core::nu::{nu_eval, profile_eval, FourierIndex, MeroForm, Profile};
use tautform_core::s6::{decompose, decomposition_report};
use tautform_core::series::FourierSeries;
use tautform_core::theta::{chi5, even_theta, gradient, pluecker_tilde};
use tautform_core::valuation::{all_valuations, needed_chi5_power};

#[derive(Parser)]
#[command(name = "tautform", version, about = "exact Siegel modular form workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct ExprInput {
    /// Covariant expression text.
    #[arg(long, conflicts_with = "expr_file")]
    expr: Option<String>,
    /// File containing the expression.
    #[arg(long)]
    expr_file: Option<PathBuf>,
}

impl ExprInput {
    fn text(&self) -> Result<String, String> {
        match (&self.expr, &self.expr_file) {
            (Some(e), _) => Ok(e.clone()),
            (None, Some(f)) => {
                std::fs::read_to_string(f).map_err(|e| format!("cannot read {}: {e}", f.display()))
            }
            (None, None) => Err("one of --expr or --expr-file is required".into()),
        }
    }

    fn covariant(&self) -> Result<Covariant, String> {
        let text = self.text()?;
        eval_str(text.trim()).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dump a theta-derived series in the cache format.
    Theta {
        /// even | gradient | chi5 | ptilde
        #[arg(long)]
        kind: String,
        /// Index: 1..10 for even, 1..6 for gradient.
        #[arg(long)]
        index: Option<usize>,
        /// Pair "a,b" for ptilde.
        #[arg(long)]
        pair: Option<String>,
        #[arg(short = 'N', long, default_value_t = 16)]
        nmax: i64,
        /// Output directory (defaults to TAUT_CACHE_DIR, then `.`).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a covariant expression and print its expansion.
    Eval {
        #[command(flatten)]
        input: ExprInput,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Boundary valuations along all ten partitions.
    Valuate {
        #[command(flatten)]
        input: ExprInput,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Dimension of the uniform-degree covariant space C'_{d,b}.
    Dims {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        b: u32,
        /// Also construct the monomial basis and report its cardinality.
        #[arg(long)]
        basis: bool,
    },
    /// Isotypic decomposition of C'_{d,b} under the symmetric group.
    Decompose {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        b: u32,
    },
    /// Run the substitution pipeline on a covariant expression.
    Nu {
        #[command(flatten)]
        input: ExprInput,
        #[arg(short = 'N', long, default_value_t = 16)]
        nmax: i64,
        /// Number of chi5 reductions, or "auto".
        #[arg(long, default_value = "auto")]
        reduce: String,
        /// Print the coefficient vector at index "n,r,m".
        #[arg(long)]
        coeff: Option<String>,
        /// Substitution profile: nu (default) | gamma0-2 | gamma2-w.
        #[arg(long, default_value = "nu")]
        profile: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Dump the component series (cache format) plus a JSON sidecar.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Weight and vanishing orders of an effective divisor combination.
    Divisor {
        /// Ten multiplicities of the partition classes, comma-separated.
        #[arg(long)]
        c: String,
        /// Six multiplicities of the coordinate classes, comma-separated.
        #[arg(long)]
        d: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a verification suite; exit 1 on any mismatch.
    Verify {
        /// identities | dims | valuations | decompositions
        #[arg(long)]
        suite: String,
        #[arg(short = 'N', long, default_value_t = 12)]
        nmax: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cache_dir(explicit: Option<&Path>) -> Option<PathBuf> {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os("TAUT_CACHE_DIR").map(PathBuf::from))
}

/// Serve `name` at box `nmax` from the cache directory when possible
/// (larger boxes are restricted down); otherwise compute and publish with
/// write-once-then-rename so concurrent runs never see partial files.
fn cached_series(
    dir: Option<&Path>,
    name: &str,
    nmax: i64,
    compute: impl FnOnce() -> FourierSeries,
) -> Result<FourierSeries, String> {
    let Some(dir) = dir else {
        return Ok(compute());
    };
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create cache dir: {e}"))?;
    let mut best: Option<(i64, PathBuf)> = None;
    if let Ok(entries) = std::fs::read_dir(dir) {
        for entry in entries.flatten() {
            let fname = entry.file_name().to_string_lossy().into_owned();
            let Some(rest) = fname
                .strip_prefix(&format!("{name}.N"))
                .and_then(|r| r.strip_suffix(".taut"))
            else {
                continue;
            };
            if let Ok(n) = rest.parse::<i64>() {
                if n >= nmax && best.as_ref().map_or(true, |(bn, _)| n < *bn) {
                    best = Some((n, entry.path()));
                }
            }
        }
    }
    if let Some((_, path)) = best {
        let text =
            std::fs::read_to_string(&path).map_err(|e| format!("cache read failed: {e}"))?;
        let (_, series) =
            FourierSeries::from_cache(&text).map_err(|e| format!("bad cache file: {e}"))?;
        return Ok(series.restrict(nmax));
    }
    let series = compute();
    let final_path = dir.join(format!("{name}.N{nmax}.taut"));
    let tmp = dir.join(format!(".tmp-{}-{name}.N{nmax}", std::process::id()));
    std::fs::write(&tmp, series.to_cache(name)).map_err(|e| format!("cache write failed: {e}"))?;
    std::fs::rename(&tmp, &final_path).map_err(|e| format!("cache rename failed: {e}"))?;
    Ok(series)
}

fn parse_csv_u32<const K: usize>(text: &str, what: &str) -> Result<[u32; K], String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != K {
        return Err(format!("{what} needs {K} comma-separated values"));
    }
    let mut out = [0u32; K];
    for (i, p) in parts.iter().enumerate() {
        out[i] = p
            .trim()
            .parse()
            .map_err(|_| format!("bad value `{p}` in {what}"))?;
    }
    Ok(out)
}

fn var_label(v: usize) -> String {
    use tautform_core::poly::{var_l, VAR_T, VAR_X1, VAR_X2};
    for i in 1..=6 {
        for j in 1..=2 {
            if var_l(i, j) == v {
                return format!("l{i}_{j}");
            }
        }
    }
    if v == VAR_X1 {
        return "x1".into();
    }
    if v == VAR_X2 {
        return "x2".into();
    }
    if v == VAR_T {
        return "t".into();
    }
    for (base, prefix, count) in [
        (tautform_core::poly::var_a(0), "a", 7),
        (tautform_core::poly::var_e(0), "e", 6),
        (tautform_core::poly::var_b(0), "b", 3),
        (tautform_core::poly::var_c(0), "c", 3),
        (tautform_core::poly::var_d(0), "d", 3),
        (tautform_core::poly::var_u(0), "u", 2),
    ] {
        if v >= base && v < base + count {
            return format!("{prefix}{}", v - base);
        }
    }
    format!("v{v}")
}

fn term_string(m: &tautform_core::poly::Monomial) -> String {
    let mut parts = Vec::new();
    for v in 0..tautform_core::poly::NVARS {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(var_label(v));
        } else {
            parts.push(format!("{}^{e}", var_label(v)));
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn print_covariant(c: &Covariant, format: Format) {
    match format {
        Format::Json => {
            let terms: Vec<serde_json::Value> = c
                .poly
                .terms
                .iter()
                .map(|(m, coeff)| {
                    serde_json::json!({
                        "monomial": term_string(m),
                        "coefficient": coeff.to_string(),
                    })
                })
                .collect();
            let report = serde_json::json!({
                "order": c.order,
                "multidegree": c.multidegree,
                "terms": terms,
            });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
        Format::Csv => {
            println!("monomial,coefficient");
            for (m, coeff) in &c.poly.terms {
                println!("{},{}", term_string(m), coeff);
            }
        }
    }
}

fn mero_for(profile: &str, c: &Covariant, nmax: i64) -> Result<MeroForm, String> {
    match profile {
        "nu" => nu_eval(c, nmax).map_err(|e| e.to_string()),
        "gamma0-2" => profile_eval(Profile::Gamma0Two, c, nmax).map_err(|e| e.to_string()),
        "gamma2-w" => profile_eval(Profile::Gamma2W, c, nmax).map_err(|e| e.to_string()),
        other => Err(format!("unknown profile `{other}`")),
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Theta {
            kind,
            index,
            pair,
            nmax,
            out,
        } => {
            let dir = cache_dir(out.as_deref()).unwrap_or_else(|| PathBuf::from("."));
            let jobs: Vec<(String, FourierSeries)> = match kind.as_str() {
                "even" => {
                    let i = index.ok_or("--index is required for --kind even")?;
                    if !(1..=10).contains(&i) {
                        return Err("even theta index must be 1..10".into());
                    }
                    vec![(format!("theta{i}"), even_theta(i, nmax))]
                }
                "gradient" => {
                    let i = index.ok_or("--index is required for --kind gradient")?;
                    if !(1..=6).contains(&i) {
                        return Err("gradient index must be 1..6".into());
                    }
                    let (g1, g2) = gradient(i, nmax);
                    vec![(format!("grad{i}_1"), g1), (format!("grad{i}_2"), g2)]
                }
                "chi5" => vec![("chi5".to_string(), chi5(nmax))],
                "ptilde" => {
                    let pair = pair.ok_or("--pair a,b is required for --kind ptilde")?;
                    let ab = parse_csv_u32::<2>(&pair, "--pair")?;
                    let (a, b) = (ab[0] as usize, ab[1] as usize);
                    let series = pluecker_tilde(a, b, nmax).map_err(|e| e.to_string())?;
                    vec![(format!("ptilde{a}{b}"), series)]
                }
                other => return Err(format!("unknown theta kind `{other}`")),
            };
            for (name, series) in jobs {
                let out = cached_series(Some(&dir), &name, nmax, || series)?;
                println!("{} N={} terms={}", name, nmax, out.terms().count());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { input, format } => {
            let c = input.covariant()?;
            print_covariant(&c, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Valuate { input, format } => {
            let c = input.covariant()?;
            let reports = all_valuations(&c).map_err(|e| e.to_string())?;
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&reports).unwrap());
                }
                Format::Csv => {
                    println!("partition,aggregate,per_coefficient");
                    for r in &reports {
                        let per: Vec<String> = r
                            .per_coefficient
                            .iter()
                            .map(|v| v.map_or("inf".into(), |x| x.to_string()))
                            .collect();
                        println!(
                            "({}{}{})({}{}{}),{},{}",
                            r.partition.0[0],
                            r.partition.0[1],
                            r.partition.0[2],
                            r.partition.1[0],
                            r.partition.1[1],
                            r.partition.1[2],
                            r.aggregate.map_or("inf".into(), |x| x.to_string()),
                            per.join(" ")
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dims { d, b, basis } => {
            let dim = dim_graded(d, b);
            if basis {
                let sb = space_basis(d, b).map_err(|e| e.to_string())?;
                println!(
                    "{}",
                    serde_json::json!({"d": d, "b": b, "dimension": dim.to_string(), "basis": sb.dim()})
                );
                if sb.dim().to_string() != dim.to_string() {
                    return Ok(ExitCode::from(1));
                }
            } else {
                println!(
                    "{}",
                    serde_json::json!({"d": d, "b": b, "dimension": dim.to_string()})
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { d, b } => {
            let sb = space_basis(d, b).map_err(|e| e.to_string())?;
            let parts = decompose(&sb.covariants).map_err(|e| e.to_string())?;
            let report = decomposition_report(&parts);
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Nu {
            input,
            nmax,
            reduce,
            coeff,
            profile,
            format,
            out,
        } => {
            let text = input.text()?;
            let c = input.covariant()?;
            let f = mero_for(&profile, &c, nmax)?;
            let steps: i64 = if reduce == "auto" {
                if profile == "nu" {
                    let d = (f.chi5_sixths / 6).max(0);
                    let needed = needed_chi5_power(&c).map_err(|e| e.to_string())?;
                    (d - needed).max(0)
                } else {
                    (f.chi5_sixths / 6).max(0)
                }
            } else {
                reduce
                    .parse()
                    .map_err(|_| "--reduce takes an integer or `auto`".to_string())?
            };
            let f = f.reduce(steps).map_err(|e| e.to_string())?;
            if let Some(dir) = &out {
                std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
                for (j, comp) in f.components.iter().enumerate() {
                    let name = format!("component{j}");
                    std::fs::write(dir.join(format!("{name}.taut")), comp.to_cache(&name))
                        .map_err(|e| e.to_string())?;
                }
                let meta = f.meta("component", text.trim());
                std::fs::write(
                    dir.join("meta.json"),
                    serde_json::to_string_pretty(&meta).unwrap(),
                )
                .map_err(|e| e.to_string())?;
            }
            if let Some(idx) = &coeff {
                let nrm = parse_csv_u32::<3>(idx, "--coeff")?;
                let v = f
                    .fourier_coefficient(&FourierIndex {
                        n: nrm[0] as i64,
                        r: nrm[1] as i64,
                        m: nrm[2] as i64,
                    })
                    .map_err(|e| e.to_string())?;
                match format {
                    Format::Json => {
                        let vals: Vec<String> = v.iter().map(GaussRat::to_string).collect();
                        println!(
                            "{}",
                            serde_json::json!({
                                "index": {"n": nrm[0], "r": nrm[1], "m": nrm[2]},
                                "weight": [f.weight_j, f.weight_k.to_string()],
                                "chi5_sixths": f.chi5_sixths,
                                "coefficients": vals,
                            })
                        );
                    }
                    Format::Csv => {
                        println!("component,value");
                        for (j, x) in v.iter().enumerate() {
                            println!("{j},{x}");
                        }
                    }
                }
            } else if out.is_none() {
                println!(
                    "{}",
                    serde_json::json!({
                        "weight": [f.weight_j, f.weight_k.to_string()],
                        "chi5_sixths": f.chi5_sixths,
                        "nmax": f.nmax(),
                        "components": f.components.iter().map(|c| c.terms().count()).collect::<Vec<_>>(),
                    })
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Divisor { c, d, format } => {
            let input = DivisorInput {
                c: parse_csv_u32::<10>(&c, "--c")?,
                d: parse_csv_u32::<6>(&d, "--d")?,
            };
            let fw = divisor_to_form(&input);
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&fw).unwrap()),
                Format::Csv => {
                    println!("j,k,admissible,r");
                    println!("{},{},{},{}", fw.j, fw.k, fw.admissible, fw.r.join(" "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, nmax } => {
            let ok = match suite.as_str() {
                "identities" => verify_identities(nmax),
                "dims" => verify_dims(),
                "valuations" => verify_valuations(),
                "decompositions" => verify_decompositions(),
                other => return Err(format!("unknown suite `{other}`")),
            };
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn check(name: &str, ok: bool) -> bool {
    println!("{} {}", if ok { "PASS" } else { "FAIL" }, name);
    ok
}

/// Wedge-series identities: every ptilde equals its four-theta product up to
/// the recorded sign, the series Pluecker relation, and (when the box allows)
/// the chi5^6 discriminant identity.
fn verify_identities(nmax: i64) -> bool {
    use tautform_core::covariant::PAIRS;
    use tautform_core::theta::{evens_joining, ptilde_theta_sign};
    let mut ok = true;
    for &(a, b) in PAIRS.iter() {
        let pt = pluecker_tilde(a, b, nmax).unwrap();
        let mut quad = FourierSeries::constant(
            GaussRat::from_int(ptilde_theta_sign(a as u8, b as u8)),
            nmax,
        );
        for i in evens_joining(a as u8, b as u8) {
            quad = quad.mul(&even_theta(i, nmax)).unwrap();
        }
        ok &= check(
            &format!("ptilde{a}{b} equals its signed theta quadruple"),
            pt == quad && !pt.is_zero(),
        );
    }
    // Pluecker relation on wedge series: p13 p24 = p14 p23 + p12 p34
    let p = |a, b| pluecker_tilde(a, b, nmax).unwrap();
    let lhs = p(1, 3).mul(&p(2, 4)).unwrap();
    let rhs = p(1, 4)
        .mul(&p(2, 3))
        .unwrap()
        .add(&p(1, 2).mul(&p(3, 4)).unwrap())
        .unwrap();
    ok &= check("series Pluecker relation", lhs == rhs);
    if nmax >= 28 {
        let mut prod = FourierSeries::constant(GaussRat::one(), nmax);
        for &(a, b) in PAIRS.iter() {
            prod = prod.mul(&p(a, b)).unwrap();
        }
        let rhs = chi5(nmax)
            .pow(6)
            .unwrap()
            .scale(&GaussRat::from_int(-(1i64 << 36)));
        ok &= check("product of all ptilde = -2^36 chi5^6", prod == rhs && !prod.is_zero());
    }
    ok
}

fn verify_dims() -> bool {
    let mut ok = true;
    for (d, b, expect) in [
        (1u32, 0u32, 5usize),
        (2, 0, 15),
        (3, 0, 34),
        (1, 2, 9),
        (1, 4, 5),
        (1, 6, 1),
        (2, 4, 40),
        (2, 6, 29),
        (2, 8, 15),
    ] {
        let sb = space_basis(d, b).unwrap();
        let hit = sb.dim() == expect && dim_graded(d, b).to_string() == expect.to_string();
        ok &= check(&format!("dim C'_{{{d},{b}}} = {expect}"), hit);
    }
    ok
}

fn verify_valuations() -> bool {
    use tautform_core::theta::char_partition_table;
    use tautform_core::valuation::v_pi;
    let mut ok = true;
    let c16 = eval_str("l1*l2*l3*l4*l5*l6").unwrap();
    let all = all_valuations(&c16).unwrap();
    ok &= check(
        "v(C_{1,6}) profile [2,1,0,-1,0,1,2] at every partition",
        all.iter().all(|r| {
            r.per_coefficient
                == vec![
                    Some(2),
                    Some(1),
                    Some(0),
                    Some(-1),
                    Some(0),
                    Some(1),
                    Some(2),
                ]
        }),
    );
    let i5 = tautform_core::valuation::i5();
    ok &= check(
        "v(I_5) = 1 everywhere",
        all_valuations(&i5)
            .unwrap()
            .iter()
            .all(|r| r.aggregate == Some(1)),
    );
    let c22 = eval_str("50*T(T(f5,f5,4), l^2, 1) with f5=l1*l2*l3*l4*l5, l=l6").unwrap();
    ok &= check(
        "v(C_{2,2} specialization) per-coefficient [-1,-2,-1]",
        char_partition_table().iter().all(|pi| {
            v_pi(&c22, pi).unwrap().per_coefficient == vec![Some(-1), Some(-2), Some(-1)]
        }),
    );
    ok
}

fn verify_decompositions() -> bool {
    let mut ok = true;
    for (d, b, expect) in [
        (1u32, 2u32, "s[4,2]"),
        (2, 6, "s[5,1] + s[4,2] + s[4,1,1] + s[3,3]"),
    ] {
        let sb = space_basis(d, b).unwrap();
        let parts = decompose(&sb.covariants).unwrap();
        let label: Vec<String> = parts
            .iter()
            .map(|(p, m)| {
                if *m == 1 {
                    format!("s{}", p.label())
                } else {
                    format!("{m} s{}", p.label())
                }
            })
            .collect();
        let got = label.join(" + ");
        ok &= check(&format!("C'_{{{d},{b}}} decomposition"), got == expect);
    }
    ok
}
