use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use shimura_atlas::cd_graph::{al_quotient, dual_graph, kodaira_symbol, DualGraphOutcome, GraphConstraints, VertexLabel};
use shimura_atlas::classifier::aut_certificate;
use shimura_atlas::cremona::CurveDatabase;
use shimura_atlas::fixtures::DataSet;
use shimura_atlas::invariants::{CurveInvariants, ShimuraDiscriminant};
use shimura_atlas::quad_points::{all_verdicts, QuadraticStatus};
use shimura_atlas::report::{
    audit, audit_report, golden_table1, golden_table2, golden_table3, invariants_report, Format, Golden, Report,
};
use shimura_atlas::trace::{parity_witness, point_count};
use shimura_atlas::Result;

#[derive(Parser)]
#[command(name = "shimura-atlas", version, about = "Invariants, bielliptic classification and quadratic points of Shimura curves")]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutFormat::Tsv, global = true)]
    format: OutFormat,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory holding table1.tsv, table2.tsv, table3.tsv, hyperelliptic_q.tsv.
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Tsv,
    Json,
    Md,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Tsv => Format::Tsv,
            OutFormat::Json => Format::Json,
            OutFormat::Md => Format::Md,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Genus, elliptic points and fixed-point counts of V_D.
    Invariants { d: u64 },
    /// Bielliptic scan over all discriminants up to --max.
    Classify {
        #[arg(long, default_value_t = 5000)]
        max: u64,
    },
    /// #M_D(F_{ell^k}) at a good prime.
    CountPoints { d: u64, ell: u64, k: u32 },
    /// Point count mod 4 for D = 3p, p = 2 mod 3, and the automorphism certificate.
    Parity { d: u64 },
    /// Cerednik-Drinfeld dual graph of V_D at p.
    DualGraph {
        d: u64,
        p: u64,
        /// Number of edges joining some v_i to v_i'.
        #[arg(long)]
        crossing: Option<u64>,
        /// Vertex pair with no edge, e.g. v1-v2 (repeatable).
        #[arg(long = "forbid", value_name = "A-B")]
        forbid: Vec<String>,
        /// Also print the quotient by the side-exchanging involution and its Kodaira symbol.
        #[arg(long)]
        quotient: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Quadratic-points verdict for every candidate discriminant.
    Verdicts {
        #[arg(long, env = "SHIMURA_ATLAS_CREMONA")]
        cremona: Option<PathBuf>,
    },
    /// Reproduce a bundled table; exits 1 on any mismatch.
    Tables {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        table: u8,
        #[arg(long, default_value_t = 5000)]
        max: u64,
        #[arg(long, env = "SHIMURA_ATLAS_CREMONA")]
        cremona: Option<PathBuf>,
    },
    /// Run every structural check.
    Audit {
        #[arg(long, env = "SHIMURA_ATLAS_CREMONA")]
        cremona: Option<PathBuf>,
    },
}

fn load_data(dir: &Option<PathBuf>) -> Result<DataSet> {
    match dir {
        Some(d) => DataSet::load_dir(d),
        None => Ok(DataSet::bundled()),
    }
}

fn load_db(path: &Option<PathBuf>) -> Result<CurveDatabase> {
    match path {
        Some(p) => CurveDatabase::load(p),
        None => Ok(CurveDatabase::bundled()),
    }
}

fn print_golden(g: &Golden, format: Format) -> bool {
    print!("{}", g.report.render(format));
    for n in &g.notes {
        eprintln!("note: {n}");
    }
    for d in &g.diff {
        eprintln!("{d}");
    }
    g.matches()
}

fn run(cli: Cli) -> Result<bool> {
    let format: Format = cli.format.into();
    match cli.command {
        Command::Invariants { d } => {
            let inv = CurveInvariants::compute(&ShimuraDiscriminant::new(d)?)?;
            print!("{}", invariants_report(&inv).render(format));
        }
        Command::Classify { max } => {
            eprintln!("scanning D <= {max}");
            let data = load_data(&cli.data)?;
            let g = golden_table1(max, &data)?;
            print!("{}", g.report.render(format));
        }
        Command::CountPoints { d, ell, k } => {
            let c = point_count(&ShimuraDiscriminant::new(d)?, ell, k)?;
            let mut r = Report::new(["D", "ell", "k", "count", "trace", "genus"]);
            r.push(vec![
                c.d.to_string(),
                c.ell.to_string(),
                c.k.to_string(),
                c.count.to_string(),
                c.frobenius_trace.to_string(),
                c.genus.to_string(),
            ]);
            print!("{}", r.render(format));
        }
        Command::Parity { d } => {
            let disc = ShimuraDiscriminant::new(d)?;
            let (ell, residue) = parity_witness(&disc)?;
            let count = point_count(&disc, ell, 1)?.count;
            let cert = aut_certificate(&disc)?;
            let mut r = Report::new(["D", "ell", "count", "mod4", "conclusion"]);
            r.push(vec![
                d.to_string(),
                ell.to_string(),
                count.to_string(),
                residue.to_string(),
                format!("{:?}", cert.conclusion),
            ]);
            print!("{}", r.render(format));
        }
        Command::DualGraph {
            d,
            p,
            crossing,
            forbid,
            quotient,
            dot,
        } => {
            let mut forbidden_pairs = Vec::new();
            for pair in &forbid {
                let (a, b) = pair.split_once('-').ok_or_else(|| {
                    shimura_atlas::Error::BadInput(format!("--forbid expects A-B, got {pair:?}"))
                })?;
                forbidden_pairs.push((a.parse::<VertexLabel>()?, b.parse::<VertexLabel>()?));
            }
            let constraints = GraphConstraints {
                crossing_total: crossing,
                forbidden_pairs,
            };
            match dual_graph(&ShimuraDiscriminant::new(d)?, p, &constraints)? {
                DualGraphOutcome::Unique(g) => {
                    if dot {
                        print!("{}", g.graph.to_dot(&format!("M{d}_F{p}")));
                    } else {
                        print!("{}", g.graph.to_adjacency_text());
                    }
                    if quotient {
                        let q = al_quotient(&g.graph, &g.al_action)?;
                        println!("# quotient");
                        print!("{}", q.to_adjacency_text());
                        println!("# kodaira {}", kodaira_symbol(&q)?);
                    }
                }
                DualGraphOutcome::Underdetermined(s) => {
                    let mut r = Report::new(["D", "p", "vertices", "edges", "torsion_free", "candidates"]);
                    r.push(vec![
                        s.d.to_string(),
                        s.p.to_string(),
                        s.vertices.to_string(),
                        s.edges.to_string(),
                        s.torsion_free.to_string(),
                        s.candidates.map_or("-".into(), |c| c.to_string()),
                    ]);
                    eprintln!("graph not determined by the given constraints");
                    print!("{}", r.render(format));
                }
            }
        }
        Command::Verdicts { cremona } => {
            let db = load_db(&cremona)?;
            let data = load_data(&cli.data)?;
            let mut r = Report::new(["D", "genus", "status", "m", "quotient", "rank", "justification"]);
            for v in all_verdicts(&db, &data)? {
                let (status, m, quot, rank) = match &v.status {
                    QuadraticStatus::InfiniteHyperelliptic { m } => ("infinite-hyperelliptic", m.to_string(), "P1".into(), "-".into()),
                    QuadraticStatus::InfiniteBielliptic { m, label, rank } => {
                        ("infinite-bielliptic", m.to_string(), label.clone(), rank.to_string())
                    }
                    QuadraticStatus::Finite => ("finite", "-".into(), "-".into(), "-".into()),
                };
                r.push(vec![
                    v.d.to_string(),
                    v.genus.to_string(),
                    status.into(),
                    m,
                    quot,
                    rank,
                    v.justification.join("; "),
                ]);
            }
            print!("{}", r.render(format));
        }
        Command::Tables { table, max, cremona } => {
            let data = load_data(&cli.data)?;
            let g = match table {
                1 => {
                    eprintln!("scanning D <= {max}");
                    golden_table1(max, &data)?
                }
                2 => golden_table2(&data)?,
                _ => golden_table3(&load_db(&cremona)?, &data)?,
            };
            return Ok(print_golden(&g, format));
        }
        Command::Audit { cremona } => {
            eprintln!("running audit");
            let lines = audit(&load_db(&cremona)?, &load_data(&cli.data)?)?;
            print!("{}", audit_report(&lines).render(format));
            return Ok(lines.iter().all(|l| l.passed));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
