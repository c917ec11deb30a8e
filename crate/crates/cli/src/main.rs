//! `raag`: command-line access to `raag-core`.
//!
//! Every subcommand prints one JSON document, on success and on failure.
//! Results are the library's own serialization with object keys sorted.
//! Exit status is 0 on success (including negative verdicts), 1 when an
//! operation's precondition fails, 2 on malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use raag_core::classify::{classify_hyperbolic_raag, max_product_free_factors, mcg_vcd_obstruction, vcd};
use raag_core::cohomology::{cohomology_of_graph, raag_isomorphic, reconstruct_graph};
use raag_core::coincidence::{
    embedding_genus_plan, flag_embedding_check, predicted_subgroup, tits_classification, virtually_commute,
    CommutationProblem, MappingClassConfig,
};
use raag_core::free_group::{fold, generates_full, membership, product_projection_analysis, FreeWord};
use raag_core::lattice::{lattice_index, lattice_meet, IntegerLattice};
use raag_core::mobius::{
    midpoint_intervals, minimal_power_search, parse_interval_sets, parse_maps, pingpong_certificate,
};
use raag_core::pingpong::{has_property_pp, verify_embedding_at_depth, PPCollection};
use raag_core::whitehead::{whitehead_endomorphism, WhiteheadMove};
use raag_core::word::{central_form, centralizer_is_cyclic, left_greedy_form, words_equal};
use raag_core::{CupAlgebraQ, Error, SimpleGraph, Word};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "raag", version, about = "Right-angled Artin group toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Complement of a graph.
    GraphComplement {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Isomorphism witness between two graphs, or null.
    GraphIso {
        #[arg(long, required = true)]
        graph: Vec<PathBuf>,
    },
    /// Whether two words are equal in A(graph).
    WordsEqual {
        #[arg(long)]
        graph: PathBuf,
        first: String,
        second: String,
    },
    /// Canonical reduced form of a word.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        word: String,
    },
    /// Central block decomposition of a cyclically reduced word.
    CentralForm {
        #[arg(long)]
        graph: PathBuf,
        word: String,
    },
    /// Left-greedy central block decomposition.
    GreedyForm {
        #[arg(long)]
        graph: PathBuf,
        word: String,
    },
    /// Whether the centralizer of a cyclically reduced word is cyclic.
    CentralizerCyclic {
        #[arg(long)]
        graph: PathBuf,
        word: String,
    },
    /// Property PP for a collection of clique products.
    PpCheck {
        #[arg(long)]
        config: PathBuf,
    },
    /// Searches for kernel elements of the induced map up to a depth.
    VerifyEmbedding {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Cup-product algebra of A(graph).
    Cohomology {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Recovers a graph from a cup-product algebra in monomial position.
    Reconstruct {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Whether two graphs give isomorphic groups.
    RaagIso {
        #[arg(long, required = true)]
        graph: Vec<PathBuf>,
    },
    /// Free product decomposition of a group acting on the hyperbolic plane.
    ClassifyHyperbolic {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Virtual cohomological dimension of A(graph).
    Vcd {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Compares the mapping class group vcd with its abelian rank.
    McgObstruction { genus: u64, punctures: u64 },
    /// Bounds on products of free groups in a genus-g mapping class group.
    ProductBound { genus: u64 },
    /// Generator images of a Whitehead move read from a JSON file.
    Whitehead {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        config: PathBuf,
    },
    /// Index of the first lattice in the second, and their meet.
    LatticeIndex { sub: PathBuf, sup: PathBuf },
    /// Stallings graph of a subgroup of a free group.
    Fold {
        #[arg(long)]
        rank: usize,
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// Whether a word lies in the subgroup generated by the rest.
    Member {
        #[arg(long)]
        rank: usize,
        word: String,
        generators: Vec<String>,
    },
    /// Whether the words generate the whole free group.
    GeneratesFull {
        #[arg(long)]
        rank: usize,
        generators: Vec<String>,
    },
    /// Projections of a subgroup of a product of two free groups.
    ProductProjection {
        #[arg(long)]
        config: PathBuf,
    },
    /// Coincidence graph and predicted subgroup of a mapping class collection.
    Coincidence {
        #[arg(long)]
        config: PathBuf,
    },
    /// Whether two mapping classes have commuting powers.
    VirtuallyCommute {
        #[arg(long)]
        config: PathBuf,
    },
    /// Induced embedding of the first graph into the second, or null.
    FlagEmbed {
        #[arg(long, required = true)]
        graph: Vec<PathBuf>,
    },
    /// Handle assignment realizing a graph as a coincidence graph.
    GenusPlan {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Kind and fixed points of Möbius maps.
    MobiusClassify {
        #[arg(long)]
        config: PathBuf,
    },
    /// Ping-pong certificate for powers of Möbius maps.
    MobiusCertify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1)]
        power: u64,
    },
    /// Smallest certified power up to a cap.
    MobiusMinpower {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 8)]
        power: u64,
    },
}

enum Failure {
    Input(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type Outcome = Result<Value, Failure>;

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize to JSON")
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<SimpleGraph, Failure> {
    Ok(SimpleGraph::from_json(&read(path)?)?)
}

fn two_graphs(paths: &[PathBuf]) -> Result<(SimpleGraph, SimpleGraph), Failure> {
    match paths {
        [a, b] => Ok((load_graph(a)?, load_graph(b)?)),
        _ => Err(Failure::Input(format!(
            "expected two --graph files, got {}",
            paths.len()
        ))),
    }
}

fn load_word(graph: &Path, text: &str) -> Result<Word, Failure> {
    Ok(Word::parse(&Arc::new(load_graph(graph)?), text)?)
}

fn free_words(texts: &[String], rank: usize) -> Result<Vec<FreeWord>, Failure> {
    Ok(texts
        .iter()
        .map(|t| FreeWord::parse(t, rank))
        .collect::<raag_core::Result<_>>()?)
}

fn load_lattice(path: &Path) -> Result<IntegerLattice, Failure> {
    let rows: Vec<Vec<i64>> = serde_json::from_value(read_json(path)?)
        .map_err(|e| Failure::Input(format!("{}: expected an integer matrix: {e}", path.display())))?;
    let rank = rows.first().map(Vec::len).ok_or_else(|| {
        Failure::Input(format!(
            "{}: a lattice needs at least one generator",
            path.display()
        ))
    })?;
    let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Ok(IntegerLattice::from_i64(rank, &rows)?)
}

/// Maps are either the whole file or its `maps` field.
fn maps_field(v: &Value) -> &Value {
    v.get("maps").unwrap_or(v)
}

fn run(command: Command) -> Outcome {
    Ok(match command {
        Command::GraphComplement { graph } => to_json(&load_graph(&graph)?.complement()),
        Command::GraphIso { graph } => {
            let (a, b) = two_graphs(&graph)?;
            json!({ "witness": a.graph_isomorphic(&b) })
        }
        Command::WordsEqual { graph, first, second } => {
            let g = Arc::new(load_graph(&graph)?);
            let (u, v) = (Word::parse(&g, &first)?, Word::parse(&g, &second)?);
            json!({ "equal": words_equal(&u, &v)? })
        }
        Command::Reduce { graph, word } => json!({ "word": load_word(&graph, &word)?.reduce() }),
        Command::CentralForm { graph, word } => to_json(&central_form(&load_word(&graph, &word)?)?),
        Command::GreedyForm { graph, word } => to_json(&left_greedy_form(&load_word(&graph, &word)?)?),
        Command::CentralizerCyclic { graph, word } => {
            json!({ "cyclic": centralizer_is_cyclic(&load_word(&graph, &word)?)? })
        }
        Command::PpCheck { config } => {
            let c = PPCollection::from_json(&read(&config)?)?;
            json!({ "embedding": has_property_pp(&c) })
        }
        Command::VerifyEmbedding { config, depth } => {
            let c = PPCollection::from_json(&read(&config)?)?;
            to_json(&verify_embedding_at_depth(&c, depth)?)
        }
        Command::Cohomology { graph } => {
            to_json(&cohomology_of_graph::<raag_core::Rational>(&load_graph(&graph)?))
        }
        Command::Reconstruct { algebra } => {
            let alg = CupAlgebraQ::from_json(&read(&algebra)?)?;
            to_json(&reconstruct_graph(&alg)?)
        }
        Command::RaagIso { graph } => {
            let (a, b) = two_graphs(&graph)?;
            json!({ "isomorphic": raag_isomorphic(&a, &b) })
        }
        Command::ClassifyHyperbolic { graph } => {
            json!({ "decomposition": classify_hyperbolic_raag(&load_graph(&graph)?) })
        }
        Command::Vcd { graph } => json!({ "vcd": vcd(&load_graph(&graph)?)? }),
        Command::McgObstruction { genus, punctures } => to_json(&mcg_vcd_obstruction(genus, punctures)?),
        Command::ProductBound { genus } => to_json(&max_product_free_factors(genus)?),
        Command::Whitehead { graph, config } => {
            let g = Arc::new(load_graph(&graph)?);
            let mv: WhiteheadMove = serde_json::from_value(read_json(&config)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", config.display())))?;
            to_json(&whitehead_endomorphism(&g, &mv)?)
        }
        Command::LatticeIndex { sub, sup } => {
            let (l1, l2) = (load_lattice(&sub)?, load_lattice(&sup)?);
            json!({ "index": lattice_index(&l1, &l2)?, "meet": lattice_meet(&l1, &l2)? })
        }
        Command::Fold { rank, generators } => to_json(&fold(&free_words(&generators, rank)?, rank)?),
        Command::Member {
            rank,
            word,
            generators,
        } => {
            let w = FreeWord::parse(&word, rank)?;
            let h = fold(&free_words(&generators, rank)?, rank)?;
            json!({ "member": membership(&w, &h)? })
        }
        Command::GeneratesFull { rank, generators } => {
            json!({ "generates_full": generates_full(&free_words(&generators, rank)?, rank)? })
        }
        Command::ProductProjection { config } => {
            #[derive(serde::Deserialize)]
            struct File {
                n: usize,
                m: usize,
                generators: Vec<(String, String)>,
            }
            let f: File = serde_json::from_value(read_json(&config)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", config.display())))?;
            let pairs = f
                .generators
                .iter()
                .map(|(u, v)| Ok((FreeWord::parse(u, f.n)?, FreeWord::parse(v, f.m)?)))
                .collect::<raag_core::Result<Vec<_>>>()?;
            to_json(&product_projection_analysis(&pairs, f.n, f.m)?)
        }
        Command::Coincidence { config } => {
            let cfg = MappingClassConfig::from_json(&read(&config)?)?;
            json!({ "predicted": predicted_subgroup(&cfg)?, "tits": tits_classification(&cfg)? })
        }
        Command::VirtuallyCommute { config } => to_json(&virtually_commute(&CommutationProblem::from_json(
            &read(&config)?,
        )?)?),
        Command::FlagEmbed { graph } => {
            let (g, frag) = two_graphs(&graph)?;
            json!({ "embedding": flag_embedding_check(&g, &frag) })
        }
        Command::GenusPlan { graph } => to_json(&embedding_genus_plan(&load_graph(&graph)?)),
        Command::MobiusClassify { config } => {
            let maps = parse_maps(maps_field(&read_json(&config)?))?;
            let mut out = Vec::new();
            for m in &maps {
                let kind = m.classify()?;
                let fixed = m.fixed_points().ok();
                out.push(json!({ "map": m, "kind": kind, "fixed_points": fixed }));
            }
            Value::Array(out)
        }
        Command::MobiusCertify { config, power } => {
            let v = read_json(&config)?;
            let maps = parse_maps(maps_field(&v))?;
            let intervals = match v.get("intervals") {
                Some(sets) => parse_interval_sets(sets)?,
                None => midpoint_intervals(&maps)?,
            };
            to_json(&pingpong_certificate(&maps, &intervals, power)?)
        }
        Command::MobiusMinpower { config, power } => {
            let maps = parse_maps(maps_field(&read_json(&config)?))?;
            to_json(&minimal_power_search(&maps, power)?)
        }
    })
}

fn emit(doc: &Value, out: Option<&Path>) -> std::io::Result<()> {
    let text = serde_json::to_string(doc).expect("values serialize") + "\n";
    match out {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version.
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let doc = json!({ "error": { "kind": "input", "message": e.kind().to_string(), "detail": e.to_string() } });
            let _ = emit(&doc, None);
            return ExitCode::from(2);
        }
    };
    let (doc, code) = match run(cli.command) {
        Ok(v) => (v, 0),
        Err(Failure::Input(m)) => (json!({ "error": { "kind": "input", "message": m } }), 2),
        Err(Failure::Domain(m)) => (json!({ "error": { "kind": "domain", "message": m } }), 1),
    };
    if let Err(e) = emit(&doc, cli.out.as_deref()) {
        eprintln!("cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
