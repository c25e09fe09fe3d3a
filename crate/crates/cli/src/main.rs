//! Command-line front end for the sl3web engine.
//!
//! Every command prints deterministic output: reports are sorted before
//! emission, JSON maps are ordered, and reruns with the same arguments are
//! byte-identical.

use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use sl3web::canonical::{
    class_representatives, dual_canonical_basis_with_cache, expand_basis_web, invariant_dimension,
    is_dominant, scan_with_cache, ExpansionCache, ScanReport,
};
use sl3web::growth::{grow, grow_with_order, Growth};
use sl3web::quantum::{Sign, SignString, StateString, TensorVector};
use sl3web::reduction::{reduce_web, rotate, WebCombination};
use sl3web::render::render_svg;
use sl3web::web::{evaluate, Web};

#[derive(Parser)]
#[command(
    name = "sl3web",
    version,
    about = "Non-elliptic web bases, exact expansions, and dual canonical scans"
)]
struct Cli {
    /// Directory for cached expansions (falls back to $SL3WEB_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Worker threads for scans (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count the basis webs of a boundary sign string.
    Dims {
        /// Boundary, e.g. "++--".
        sign_string: String,
    },

    /// Grow the basis web of a dominant path and print its slice word.
    Grow {
        sign_string: String,
        /// Boundary states, e.g. "+0-0".
        state_string: String,
        /// Apply the rewrites in a seeded random order instead of leftmost
        /// first; the resulting web is the same.
        #[arg(long)]
        seed: Option<u64>,
    },

    /// Expand a web in the tensor basis: pass a web text file ('-' for
    /// stdin), or --sign-string with --state to expand a grown basis web.
    Expand {
        /// Web text file, or '-' for stdin.
        web: Option<String>,
        #[arg(long, requires = "state")]
        sign_string: Option<String>,
        #[arg(long, requires = "sign_string")]
        state: Option<String>,
    },

    /// Rewrite a web into a combination of non-elliptic basis webs.
    Reduce {
        /// Web text file, or '-' for stdin.
        web: String,
    },

    /// Rotate the boundary of a web by one point and re-express the result
    /// in the non-elliptic basis.
    Rotate {
        /// Web text file, or '-' for stdin.
        web: String,
    },

    /// Test basis webs for the negative-exponent property.
    Scan {
        /// Scan every sign string up to this length.
        #[arg(long, conflicts_with_all = ["sign_string", "representatives"])]
        max_n: Option<usize>,
        /// Scan one boundary.
        #[arg(long, conflicts_with = "representatives")]
        sign_string: Option<String>,
        /// Scan the balanced class representatives of this length.
        #[arg(long)]
        representatives: Option<usize>,
    },

    /// Compute the corrected basis of a boundary, in ascending path order.
    Correct { sign_string: String },

    /// Draw a web as a self-contained SVG.
    Render {
        /// Web text file, or '-' for stdin.
        web: String,
        /// Highlight the first flow state meeting this boundary.
        #[arg(long)]
        state: Option<String>,
        /// Write the SVG here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    // die quietly when the reader of a pipe goes away, like other unix tools
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // a second build attempt in one process is harmless; ignore it
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn cache(cli: &Cli) -> ExpansionCache {
    match &cli.cache_dir {
        Some(dir) => ExpansionCache::at(dir),
        None => ExpansionCache::from_env(),
    }
}

fn read_web(arg: &str) -> Result<Web, String> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        buf
    } else {
        std::fs::read_to_string(arg).map_err(|e| format!("reading {arg}: {e}"))?
    };
    Web::parse_text(&text)
}

fn run(cli: &Cli) -> Result<(), String> {
    match &cli.cmd {
        Cmd::Dims { sign_string } => {
            let signs: SignString = sign_string.parse()?;
            let dim = invariant_dimension(&signs);
            match cli.format {
                Format::Text => println!("{dim}"),
                Format::Json => {
                    println!(
                        "{}",
                        json!({ "sign_string": signs.to_string(), "dimension": dim })
                    )
                }
            }
        }

        Cmd::Grow {
            sign_string,
            state_string,
            seed,
        } => {
            let signs: SignString = sign_string.parse()?;
            let states: StateString = state_string.parse()?;
            let g = match seed {
                None => grow(&signs, &states)?,
                Some(s) => grow_with_order(&signs, &states, &mut ChaCha8Rng::seed_from_u64(*s))?,
            };
            print_growth(cli.format, &g);
        }

        Cmd::Expand {
            web,
            sign_string,
            state,
        } => {
            let x: TensorVector = match (web, sign_string) {
                (Some(_), Some(_)) => {
                    return Err("pass either a web or --sign-string with --state, not both".into())
                }
                (Some(arg), None) => evaluate(&read_web(arg)?),
                (None, Some(s)) => {
                    let signs: SignString = s.parse()?;
                    let states: StateString = state.as_deref().unwrap().parse()?;
                    if !is_dominant(&signs, &states) {
                        return Err(format!(
                            "{states} is not a dominant path for boundary {signs}; \
                             list valid paths with `correct {signs}` or grow the web anyway \
                             with `grow`"
                        ));
                    }
                    expand_basis_web(&signs, &states, &cache(cli))
                }
                (None, None) => {
                    return Err(
                        "pass a web file ('-' for stdin) or --sign-string with --state".into(),
                    )
                }
            };
            print_vector(cli.format, &x);
        }

        Cmd::Reduce { web } => {
            let combination = reduce_web(&read_web(web)?)?;
            print_combination(cli.format, &combination)?;
        }

        Cmd::Rotate { web } => {
            let combination = rotate(&read_web(web)?)?;
            print_combination(cli.format, &combination)?;
        }

        Cmd::Scan {
            max_n,
            sign_string,
            representatives,
        } => {
            let cache = cache(cli);
            let mut boundaries: Vec<SignString> = Vec::new();
            match (max_n, sign_string, representatives) {
                (Some(n), None, None) => {
                    for len in 0..=*n {
                        let mut of_len: Vec<SignString> = (0..1usize << len)
                            .map(|m| {
                                SignString(
                                    (0..len)
                                        .map(|i| {
                                            if m >> i & 1 == 0 {
                                                Sign::Plus
                                            } else {
                                                Sign::Minus
                                            }
                                        })
                                        .collect(),
                                )
                            })
                            .collect();
                        of_len.sort();
                        boundaries.extend(of_len);
                    }
                }
                (None, Some(s), None) => boundaries.push(s.parse()?),
                (None, None, Some(len)) => {
                    if len % 2 != 0 {
                        return Err("--representatives needs an even length".into());
                    }
                    boundaries = class_representatives(*len, len / 2);
                }
                _ => {
                    return Err(
                        "pass exactly one of --max-n, --sign-string, --representatives".into(),
                    )
                }
            }
            let reports: Vec<ScanReport> = boundaries
                .iter()
                .map(|s| scan_with_cache(s, &cache))
                .collect();
            print_reports(cli.format, &reports);
        }

        Cmd::Correct { sign_string } => {
            let signs: SignString = sign_string.parse()?;
            let basis = dual_canonical_basis_with_cache(&signs, &cache(cli));
            match cli.format {
                Format::Text => {
                    for (j, x) in &basis {
                        println!("element {j}");
                        for (jp, c) in &x.entries {
                            println!("  {jp}  {c}");
                        }
                    }
                }
                Format::Json => {
                    let items: Vec<serde_json::Value> = basis
                        .iter()
                        .map(|(j, x)| json!({ "leading": j.to_string(), "vector": x }))
                        .collect();
                    println!("{}", serde_json::Value::Array(items));
                }
            }
        }

        Cmd::Render { web, state, output } => {
            let w = read_web(web)?;
            let flow: Option<StateString> = match state {
                Some(s) => Some(s.parse()?),
                None => None,
            };
            let svg = render_svg(&w, flow.as_ref())?;
            match output {
                Some(path) => std::fs::write(path, svg)
                    .map_err(|e| format!("writing {}: {e}", path.display()))?,
                None => print!("{svg}"),
            }
        }
    }
    Ok(())
}

fn print_reports(format: Format, reports: &[ScanReport]) {
    match format {
        Format::Text => {
            for r in reports {
                println!(
                    "{} dim={} failures={}",
                    r.sign_string,
                    r.dimension,
                    r.failures.len()
                );
                for f in &r.failures {
                    println!(
                        "  leading={} offending={} coefficient={}",
                        f.leading, f.offending, f.coefficient
                    );
                }
            }
        }
        Format::Json => println!("{}", serde_json::to_string(reports).unwrap()),
    }
}

fn print_growth(format: Format, g: &Growth) {
    match format {
        Format::Text => {
            print!("{}", g.web.to_text());
            if g.residual_signs.is_empty() {
                println!("residual: none");
            } else {
                println!("residual: {} / {}", g.residual_signs, g.residual_states);
            }
        }
        Format::Json => {
            println!(
                "{}",
                json!({
                    "web": g.web.to_text(),
                    "residual_signs": g.residual_signs.to_string(),
                    "residual_states": g.residual_states.to_string(),
                })
            );
        }
    }
}

fn print_vector(format: Format, x: &TensorVector) {
    match format {
        Format::Text => {
            for (j, c) in &x.entries {
                println!("{j}  {c}");
            }
        }
        Format::Json => println!("{}", serde_json::to_string(x).unwrap()),
    }
}

fn print_combination(format: Format, combination: &WebCombination) -> Result<(), String> {
    let terms = combination.to_webs()?;
    match format {
        Format::Text => {
            println!("{} terms", terms.len());
            for (c, w) in &terms {
                println!("coefficient: {c}");
                print!("{}", w.to_text());
            }
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = terms
                .iter()
                .map(|(c, w)| json!({ "coefficient": c, "web": w.to_text() }))
                .collect();
            println!("{}", serde_json::Value::Array(items));
        }
    }
    Ok(())
}
