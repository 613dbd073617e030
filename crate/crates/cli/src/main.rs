//! domperm: superpatterns, universal point sets, and dominance drawings
//! from the command line.

use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use domperm::board::{board, board_to_permutation, Board};
use domperm::dag::Dag;
use domperm::drawing::{
    embed_drawing_into_mu, tree_drawing,
    verify_dominance_drawing, width2_drawing, Drawing,
};
use domperm::gen::{
    random_perm, random_perm321, random_riffle, random_stouter, random_tree, random_width2,
    rng_from_seed,
};
use domperm::perm::Permutation;
use domperm::points::{plot, PointSet};
use domperm::stouter::{
    decompose_regions, embed_st_outerplanar, skew_riffle_superpattern, validate as validate_st,
    verify_facts, StOuterplanarGraph,
};
use domperm::superpattern::{
    antiriffle_superpattern, embed_321_into_mu, embed_antiriffle, embed_generic, embed_riffle,
    generic_superpattern, mu, reduced_mu_board, riffle_superpattern, verify_superpattern,
};

#[derive(Parser)]
#[command(name = "domperm", version, about = "superpatterns and dominance drawings")]
struct Cli {
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Riffle,
    Antiriffle,
    Mu,
    MuReduced,
    Generic,
}

#[derive(Clone, Copy, ValueEnum)]
enum PointFamily {
    /// hollow square for riffles and their inverses
    Square,
    /// quadtree set Q_n for st-outerplanar graphs
    Quad,
    /// black points of Q_n (skew riffle superpattern)
    QuadBlack,
    /// grid plot of the mu superpattern
    MuPlot,
}

#[derive(Clone, Copy, ValueEnum)]
enum RandomKind {
    Perm,
    Perm321,
    Riffle,
    Tree,
    Width2,
    Stouter,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a superpattern permutation
    GenSuperpattern {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print a universal point set
    GenPointset {
        #[arg(long, value_enum)]
        family: PointFamily,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Generate a random instance
    GenRandom {
        #[arg(long, value_enum)]
        kind: RandomKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0")]
        seed: u64,
    },
    /// Embed a permutation (stdin, one line) into a superpattern
    EmbedPerm {
        #[arg(long, value_enum)]
        family: Family,
        /// superpattern parameter; defaults to the permutation's length
        #[arg(long)]
        n: Option<usize>,
    },
    /// Embed a DAG (JSON on stdin) as a dominance drawing
    EmbedGraph {
        /// tree | width2 | stouter
        #[arg(long)]
        kind: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Verify a dominance drawing (JSON on stdin)
    VerifyDrawing,
    /// Exhaustively verify a superpattern construction at size n
    VerifySuperpattern {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
    },
    /// Print the run-length board of a permutation (stdin)
    Board {
        /// invert: read a board and print its permutation
        #[arg(long)]
        invert: bool,
    },
    /// Validate and decompose an st-outerplanar graph (JSON on stdin)
    Decompose,
    /// Render a point set or drawing (JSON on stdin) as SVG
    Render,
    /// Run acceptance sub-suites; nonzero exit on failure
    Suite {
        /// riffle | mu | quadset | width2 | trees | roundtrip | counts | all
        name: String,
    },
}

fn read_stdin() -> Result<String, String> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| e.to_string())?;
    Ok(s)
}

fn emit(out: &Option<PathBuf>, text: String) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn superpattern_text(family: Family, n: usize) -> Permutation {
    match family {
        Family::Riffle => riffle_superpattern(n),
        Family::Antiriffle => antiriffle_superpattern(n),
        Family::Mu => mu(n),
        Family::MuReduced => domperm::board::board_to_permutation(&reduced_mu_board(n))
            .expect("reduced mu expands"),
        Family::Generic => generic_superpattern(n),
    }
}

fn svg_of_points(ps: &PointSet) -> String {
    let f = |c: &domperm::points::Coord| *c.numer() as f64 / *c.denom() as f64;
    let (mut maxx, mut maxy) = (1.0f64, 1.0f64);
    for p in &ps.points {
        maxx = maxx.max(f(&p.x));
        maxy = maxy.max(f(&p.y));
    }
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        -1.0,
        -1.0,
        maxx + 2.0,
        maxy + 2.0
    );
    for p in &ps.points {
        let color = match p.tag {
            Some(domperm::points::Tag::Green) => "green",
            Some(domperm::points::Tag::Yellow) => "orange",
            Some(domperm::points::Tag::Red) => "red",
            Some(domperm::points::Tag::Blue) => "blue",
            _ => "black",
        };
        // flip y so larger values render higher
        s.push_str(&format!(
            "  <circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"0.18\" fill=\"{color}\"/>\n",
            f(&p.x),
            maxy - f(&p.y)
        ));
    }
    s.push_str("</svg>\n");
    s
}

fn svg_of_drawing(d: &Drawing) -> String {
    let f = |c: &domperm::points::Coord| *c.numer() as f64 / *c.denom() as f64;
    let (mut maxx, mut maxy) = (1.0f64, 1.0f64);
    for p in &d.placement {
        maxx = maxx.max(f(&p.x));
        maxy = maxy.max(f(&p.y));
    }
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1 -1 {} {}\">\n",
        maxx + 2.0,
        maxy + 2.0
    );
    for u in 0..d.graph.n() {
        let pu = &d.placement[u];
        for &v in d.graph.successors(u) {
            let pv = &d.placement[v];
            s.push_str(&format!(
                "  <line x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" stroke=\"gray\" stroke-width=\"0.05\"/>\n",
                f(&pu.x), maxy - f(&pu.y), f(&pv.x), maxy - f(&pv.y)
            ));
        }
    }
    for (u, p) in d.placement.iter().enumerate() {
        s.push_str(&format!(
            "  <circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"0.15\" fill=\"black\"/>\n  <text x=\"{:.4}\" y=\"{:.4}\" font-size=\"0.5\">{}</text>\n",
            f(&p.x), maxy - f(&p.y), f(&p.x) + 0.2, maxy - f(&p.y) - 0.2, d.graph.vertex(u)
        ));
    }
    s.push_str("</svg>\n");
    s
}

fn run(cli: Cli) -> Result<bool, String> {
    let out = &cli.out;
    match cli.cmd {
        Cmd::GenSuperpattern { family, n, format } => {
            let p = superpattern_text(family, n);
            let text = match format {
                Format::Json => serde_json::to_string(&p).map_err(|e| e.to_string())?,
                _ => p.to_string(),
            };
            emit(out, text)?;
        }
        Cmd::GenPointset { family, n, format } => {
            let ps = match family {
                PointFamily::Square => domperm::superpattern::combined_square(n),
                PointFamily::Quad => {
                    domperm::stouter::build_q(n as u64).map_err(|e| e.to_string())?.points
                }
                PointFamily::QuadBlack => {
                    skew_riffle_superpattern(n as u64).map_err(|e| e.to_string())?
                }
                PointFamily::MuPlot => plot(&mu(n)),
            };
            let text = match format {
                Format::Svg => svg_of_points(&ps),
                Format::Text => ps.to_string(),
                Format::Json => serde_json::to_string(&ps).map_err(|e| e.to_string())?,
            };
            emit(out, text)?;
        }
        Cmd::GenRandom { kind, n, seed } => {
            let mut rng = rng_from_seed(seed);
            let text = match kind {
                RandomKind::Perm => random_perm(n, &mut rng).to_string(),
                RandomKind::Perm321 => random_perm321(n, &mut rng).to_string(),
                RandomKind::Riffle => random_riffle(n, &mut rng).to_string(),
                RandomKind::Tree => serde_json::to_string(
                    &random_tree(n, &mut rng).map_err(|e| e.to_string())?,
                )
                .map_err(|e| e.to_string())?,
                RandomKind::Width2 => serde_json::to_string(
                    &random_width2(n, &mut rng).map_err(|e| e.to_string())?,
                )
                .map_err(|e| e.to_string())?,
                RandomKind::Stouter => serde_json::to_string(
                    &random_stouter(n, &mut rng).map_err(|e| e.to_string())?,
                )
                .map_err(|e| e.to_string())?,
            };
            emit(out, text)?;
        }
        Cmd::EmbedPerm { family, n } => {
            let p: Permutation = read_stdin()?.trim().parse().map_err(|e: domperm::Error| e.to_string())?;
            let n = n.unwrap_or(p.len());
            let emb = match family {
                Family::Riffle => embed_riffle(&p, n),
                Family::Antiriffle => embed_antiriffle(&p, n),
                Family::Mu | Family::MuReduced => embed_321_into_mu(&p, n),
                Family::Generic => embed_generic(&p, n),
            }
            .map_err(|e| e.to_string())?;
            emit(out, serde_json::to_string(&emb).map_err(|e| e.to_string())?)?;
        }
        Cmd::EmbedGraph { kind, format } => {
            let input = read_stdin()?;
            let drawing = match kind.as_str() {
                "tree" => {
                    let d: Dag = serde_json::from_str(&input).map_err(|e| e.to_string())?;
                    tree_drawing(&d).map_err(|e| e.to_string())?
                }
                "width2" => {
                    let d: Dag = serde_json::from_str(&input).map_err(|e| e.to_string())?;
                    let drawn = width2_drawing(&d).map_err(|e| e.to_string())?;
                    embed_drawing_into_mu(&drawn, d.n()).map_err(|e| e.to_string())?
                }
                "stouter" => {
                    let g: StOuterplanarGraph =
                        serde_json::from_str(&input).map_err(|e| e.to_string())?;
                    embed_st_outerplanar(&g).map_err(|e| e.to_string())?.drawing
                }
                other => return Err(format!("unknown graph kind {other:?}")),
            };
            let text = match format {
                Format::Svg => svg_of_drawing(&drawing),
                _ => serde_json::to_string(&drawing).map_err(|e| e.to_string())?,
            };
            emit(out, text)?;
        }
        Cmd::VerifyDrawing => {
            let d: Drawing = serde_json::from_str(&read_stdin()?).map_err(|e| e.to_string())?;
            let rep = verify_dominance_drawing(&d);
            emit(out, serde_json::to_string(&rep).map_err(|e| e.to_string())?)?;
            return Ok(rep.valid);
        }
        Cmd::VerifySuperpattern { family, n } => {
            let text = superpattern_text(family, n);
            let forbidden: Vec<Permutation> = match family {
                Family::Riffle | Family::Antiriffle => domperm::pattern::riffle_forbidden()
                    .iter()
                    .map(|p| if matches!(family, Family::Antiriffle) { p.inverse() } else { p.clone() })
                    .collect(),
                Family::Mu | Family::MuReduced => vec!["3 2 1".parse().unwrap()],
                Family::Generic => vec![],
            };
            let outcome =
                verify_superpattern(&text, n, &forbidden).map_err(|e| e.to_string())?;
            match outcome {
                Ok(()) => emit(out, format!("ok: all patterns of length {n} embed"))?,
                Err(witness) => {
                    emit(out, format!("missing pattern: {witness}"))?;
                    return Ok(false);
                }
            }
        }
        Cmd::Board { invert } => {
            let input = read_stdin()?;
            if invert {
                let b: Board = input.parse().map_err(|e: domperm::Error| e.to_string())?;
                let p = board_to_permutation(&b).map_err(|e| e.to_string())?;
                emit(out, p.to_string())?;
            } else {
                let p: Permutation = input.trim().parse().map_err(|e: domperm::Error| e.to_string())?;
                emit(out, board(&p).to_string())?;
            }
        }
        Cmd::Decompose => {
            let g: StOuterplanarGraph =
                serde_json::from_str(&read_stdin()?).map_err(|e| e.to_string())?;
            let diag = validate_st(&g);
            if !diag.ok {
                emit(out, serde_json::to_string(&diag).map_err(|e| e.to_string())?)?;
                return Ok(false);
            }
            let d = decompose_regions(&g).map_err(|e| e.to_string())?;
            let facts = verify_facts(&g, &d).map_err(|e| e.to_string())?;
            let payload = serde_json::json!({
                "decomposition": d,
                "facts": match facts { Ok(()) => serde_json::json!("ok"),
                                       Err(k) => serde_json::json!({"failed_fact": k}) },
            });
            emit(out, payload.to_string())?;
            return Ok(facts.is_ok());
        }
        Cmd::Render => {
            let input = read_stdin()?;
            // accept either a drawing or a bare point set
            let text = if let Ok(d) = serde_json::from_str::<Drawing>(&input) {
                svg_of_drawing(&d)
            } else {
                let ps: PointSet = serde_json::from_str(&input).map_err(|e| e.to_string())?;
                svg_of_points(&ps)
            };
            emit(out, text)?;
        }
        Cmd::Suite { name } => {
            let results = domperm::suite::run_suite(&name).map_err(|e| e.to_string())?;
            let mut ok = true;
            for r in &results {
                println!("{}", serde_json::to_string(r).map_err(|e| e.to_string())?);
                ok &= r.pass;
            }
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
