//! `pdw` — classify, solve, assemble, verify and export spherical tilings by
//! congruent quadrangles over pseudo-double wheel skeletons.

mod expr;
mod obj;

use clap::{Parser, Subcommand, ValueEnum};
use pdw_core::pdwgraph::{automorphisms, build_skeleton, perfect_face_matchings};
use pdw_core::quadcore::{
    build_quadrangle, classify, discriminant, f_coeffs, phase, solve_tiles, Quadrangle,
    TileParams,
};
use pdw_core::tiling::{
    detect_axes, exhaustive_layouts, from_coords, is_isohedral, json, special_pair, to_coords,
    verify, Coords, Tiling,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Writes to the path, or stdout when no path is given.
fn emit(out: Option<&Path>, payload: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, payload)?,
        None => print!("{payload}"),
    }
    Ok(())
}

#[derive(Parser)]
#[command(
    name = "pdw",
    version,
    about = "Spherical tilings by congruent quadrangles over pseudo-double wheels",
    after_help = "Angle arguments accept expressions such as 'acos(-1/(2*sqrt(7)))' or '4*pi/3'."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Obj,
}

#[derive(Subcommand)]
enum Command {
    /// Classify tile parameters into the eight-region diagram and list the
    /// admissible edge lengths
    Classify {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        /// Interpret angle arguments as degrees
        #[arg(long)]
        deg: bool,
    },
    /// Solve and print the admissible tiles for given parameters
    Tile {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        /// Use this edge length instead of solving (must be a root)
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long)]
        deg: bool,
    },
    /// Assemble the standard tiling at chart coordinates (phi, a), verify
    /// it, and write JSON or OBJ
    Tiling {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        deg: bool,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Chords per geodesic edge in OBJ output
        #[arg(long, default_value_t = 32)]
        chords: u32,
        /// Verification tolerance override (radians; must be positive)
        #[arg(long, allow_hyphen_values = true)]
        tol: Option<String>,
    },
    /// Sample the (alpha, gamma) square on a grid and write CSV rows
    Phase {
        #[arg(long)]
        n: u32,
        /// Grid resolution per axis
        #[arg(long)]
        res: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the perfect face-matchings of a pseudo-double wheel
    Matchings {
        /// Face count (even, at least 6)
        #[arg(long)]
        faces: u32,
    },
    /// Exhaustive layout search: every way copies of the tile close up over
    /// the skeleton
    Search {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        /// Search a specific edge length (defaults to every admissible root)
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// Allow mirrored copies of the tile
        #[arg(long)]
        reflect: bool,
        #[arg(long)]
        deg: bool,
        /// Write each layout as JSON into this directory
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Emit the double-root tile's isohedral and non-isohedral tilings
    Special {
        /// Directory for the two JSON files
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

/// Errors carrying the process exit code: 2 for domain/usage problems, 3 for
/// verification failures.
enum CliError {
    Domain(String),
    Verification(String),
}

impl From<pdw_core::Error> for CliError {
    fn from(e: pdw_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    // Die quietly when stdout closes early (e.g. piped into `head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
    }
}

fn angle(text: &str, deg: bool) -> Result<f64, CliError> {
    let v = expr::eval(text).map_err(|e| CliError::Domain(format!("in {text:?}: {e}")))?;
    Ok(if deg { v.to_radians() } else { v })
}

fn params(n: u32, alpha: &str, gamma: &str, deg: bool) -> Result<TileParams, CliError> {
    Ok(TileParams::new(n, angle(alpha, deg)?, angle(gamma, deg)?)?)
}

fn f17(x: f64) -> String {
    json::float17(x)
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Classify { n, alpha, gamma, deg } => {
            let p = params(n, &alpha, &gamma, deg)?;
            let c = classify(&p);
            let (c1, c0) = f_coeffs(&p);
            println!("n: {n}");
            println!("alpha: {}", f17(p.alpha()));
            println!("gamma: {}", f17(p.gamma()));
            println!("f(x) = x^2 + ({}) x + ({})", f17(c1), f17(c0));
            println!("discriminant: {}", f17(discriminant(&p)));
            println!("region: {}", c.region.tag);
            println!("multiplicity: {}", c.region.multiplicity);
            for (a, branch) in &c.roots {
                println!("root: a = {} rad  (branch {branch})", f17(*a));
            }
            Ok(())
        }
        Command::Tile { n, alpha, gamma, a, deg } => {
            let p = params(n, &alpha, &gamma, deg)?;
            match a {
                Some(text) => {
                    let a = angle(&text, deg)?;
                    let q = build_quadrangle(&p, a)?;
                    print_quadrangle(&p, &q);
                }
                None => {
                    let tiles = solve_tiles(&p)?;
                    if tiles.is_empty() {
                        return Err(CliError::Domain(format!(
                            "no tile exists for n={n}, alpha={}, gamma={} (region {})",
                            f17(p.alpha()),
                            f17(p.gamma()),
                            classify(&p).region.tag
                        )));
                    }
                    for t in tiles {
                        let q = build_quadrangle(&p, t.a)?;
                        print_quadrangle(&p, &q);
                        println!("phi: {}", f17(t.phi));
                        println!("phi_prime: {}", f17(t.phi_prime));
                        println!("branch: {}", t.branch);
                        println!();
                    }
                }
            }
            Ok(())
        }
        Command::Tiling { n, phi, a, deg, out, format, chords, tol } => {
            let coords = Coords {
                phi: angle(&phi, deg)?,
                a: angle(&a, deg)?,
            };
            let eps = match tol {
                Some(text) => {
                    let v = angle(&text, false)?;
                    if v <= 0.0 {
                        return Err(CliError::Domain(format!(
                            "tolerance {v} must be positive"
                        )));
                    }
                    v
                }
                None => 1e-9,
            };
            let t = from_coords(n, coords)?;
            let report = pdw_core::tiling::verify_with(&t, eps);
            if !report.all_pass() {
                return Err(CliError::Verification(format!("\n{report}")));
            }
            let payload = match format {
                Format::Json => json::to_json(&t)?,
                Format::Obj => obj::to_obj(&t, chords),
            };
            emit(out.as_deref(), &payload)?;
            Ok(())
        }
        Command::Phase { n, res, out } => {
            if res < 2 {
                return Err(CliError::Domain(format!("grid resolution {res} below 2")));
            }
            if n < 3 {
                return Err(CliError::Domain(format!("hub valence {n} below 3")));
            }
            let mut text = String::from("alpha,gamma,region,multiplicity,a_minus,a_plus,discriminant\n");
            let opt = |v: Option<f64>| v.map(f17).unwrap_or_default();
            for s in phase::grid(n, res) {
                text.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    f17(s.alpha),
                    f17(s.gamma),
                    s.region,
                    s.multiplicity,
                    opt(s.a_minus),
                    opt(s.a_plus),
                    f17(s.discriminant),
                ));
            }
            emit(out.as_deref(), &text)?;
            Ok(())
        }
        Command::Matchings { faces } => {
            let sk = build_skeleton(faces)?;
            let matchings = perfect_face_matchings(&sk);
            let autos = automorphisms(&sk);
            println!(
                "pseudo-double wheel of {faces} faces: {} perfect face-matchings, {} automorphisms",
                matchings.len(),
                autos.len()
            );
            let name = |v: usize| match v {
                0 => "N".to_string(),
                1 => "S".to_string(),
                _ => format!("v{}", v - 2),
            };
            for (i, m) in matchings.iter().enumerate() {
                let edges: Vec<String> = m
                    .edges
                    .iter()
                    .map(|&e| {
                        let (u, v) = sk.edges()[e];
                        format!("{}-{}", name(u), name(v))
                    })
                    .collect();
                println!("matching {i}: {}", edges.join(" "));
            }
            Ok(())
        }
        Command::Search { n, alpha, gamma, a, reflect, deg, out_dir } => {
            let p = params(n, &alpha, &gamma, deg)?;
            let roots: Vec<f64> = match a {
                Some(text) => vec![angle(&text, deg)?],
                None => classify(&p).roots.iter().map(|r| r.0).collect(),
            };
            if roots.is_empty() {
                return Err(CliError::Domain(format!(
                    "no admissible edge length for n={n}, alpha={}, gamma={}",
                    f17(p.alpha()),
                    f17(p.gamma())
                )));
            }
            for a in roots {
                let q = build_quadrangle(&p, a)?;
                let layouts = exhaustive_layouts(n, &q, reflect)?;
                println!(
                    "edge length a = {}: {} layout class(es){}",
                    f17(a),
                    layouts.len(),
                    if reflect { " (mirrors allowed)" } else { "" }
                );
                for (i, t) in layouts.iter().enumerate() {
                    describe_layout(i, t)?;
                    if let Some(dir) = &out_dir {
                        std::fs::create_dir_all(dir)?;
                        let path = dir.join(format!("layout_{i}.json"));
                        std::fs::write(&path, json::to_json(t)?)?;
                        println!("  wrote {}", path.display());
                    }
                }
            }
            Ok(())
        }
        Command::Special { out_dir } => {
            let (standard, other) = special_pair()?;
            std::fs::create_dir_all(&out_dir)?;
            for (t, file, label) in [
                (&standard, "special_isohedral.json", "isohedral"),
                (&other, "special_nonisohedral.json", "non-isohedral"),
            ] {
                let report = verify(t);
                if !report.all_pass() {
                    return Err(CliError::Verification(format!("{label}:\n{report}")));
                }
                let path = out_dir.join(file);
                std::fs::write(&path, json::to_json(t)?)?;
                let rep = is_isohedral(t)?;
                println!(
                    "{label}: verified, tile-transitive = {}, wrote {}",
                    rep.isohedral,
                    path.display()
                );
            }
            let axes = detect_axes(&standard);
            let orders: Vec<String> = axes.iter().map(|ax| ax.order.to_string()).collect();
            println!("isohedral tiling rotation axis orders: {}", orders.join(" "));
            Ok(())
        }
    }
}

fn print_quadrangle(p: &TileParams, q: &Quadrangle) {
    println!("n: {}", p.n());
    println!("a: {}", f17(q.a));
    println!("b: {}", f17(q.b));
    println!("c: {}", f17(q.c));
    println!("alpha: {}", f17(q.alpha));
    println!("beta: {}", f17(q.beta));
    println!("gamma: {}", f17(q.gamma));
    println!("delta: {}", f17(q.delta));
    println!("area: {}", f17(q.area()));
}

fn describe_layout(i: usize, t: &Tiling) -> Result<(), CliError> {
    let rep = is_isohedral(t)?;
    let coords = to_coords(t)?;
    println!(
        "  layout {i}: tile-transitive = {}, chart coords = ({}, {})",
        rep.isohedral,
        f17(coords.phi),
        f17(coords.a)
    );
    Ok(())
}
