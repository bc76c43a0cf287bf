use clap::Parser;
use pcanon::runner::{self, Algorithm, Format, GcmSource, ModeArg, RunConfig, Verify};
use std::path::PathBuf;
use std::process::ExitCode;

/// Compute p-canonical bases of Hecke algebras and antispherical modules.
#[derive(Parser, Debug)]
#[command(version)]
struct Args {
    /// Preset Cartan type, e.g. A3, B3, C3, G2, A~2.
    #[arg(long, conflicts_with = "cartan_file")]
    cartan: Option<String>,
    /// File with one whitespace-separated row of the Cartan matrix per line.
    #[arg(long)]
    cartan_file: Option<PathBuf>,
    /// Characteristic (0 or a prime).
    #[arg(short, long, default_value_t = 0)]
    p: u64,
    /// Generators of the parabolic subgroup, comma separated.
    #[arg(long, value_delimiter = ',')]
    parabolic: Vec<usize>,
    #[arg(long)]
    length_limit: Option<usize>,
    /// Only emit these columns (words such as 0121, or id).
    #[arg(long, value_delimiter = ',')]
    elements: Vec<String>,
    #[arg(long, value_enum, default_value_t = Algorithm::Main)]
    algorithm: Algorithm,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_enum, default_value_t = Verify::Fast)]
    verify: Verify,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Also emit ph_{x,w}.
    #[arg(long)]
    with_h: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Import braid matrices exported by another run.
    #[arg(long)]
    braid_import: Vec<PathBuf>,
    /// Write every stored braid matrix with m_st > 2 into this directory.
    #[arg(long)]
    braid_export: Option<PathBuf>,
    /// Do not derive braid matrices for m_st > 3.
    #[arg(long)]
    no_derive_braids: bool,
    #[arg(long)]
    no_symmetries: bool,
    #[arg(long)]
    no_stars: bool,
    /// Allow star operations for m_st = 6 when p = 5.
    #[arg(long)]
    liberal_order_six: bool,
    #[arg(long)]
    no_prune: bool,
    /// Stop after this many newly computed elements.
    #[arg(long)]
    stop_after: Option<usize>,
    /// Maximum number of group elements.
    #[arg(long, default_value_t = 500_000)]
    cap: usize,
}

impl Args {
    fn config(self) -> Result<RunConfig, String> {
        let gcm = match (self.cartan, self.cartan_file) {
            (Some(c), None) => GcmSource::Preset(c),
            (None, Some(f)) => GcmSource::File(f),
            _ => return Err("one of --cartan or --cartan-file is required".into()),
        };
        Ok(RunConfig {
            gcm,
            p: self.p,
            parabolic: self.parabolic,
            length_limit: self.length_limit,
            elements: self.elements,
            algorithm: self.algorithm,
            mode: self.mode,
            verify: self.verify,
            checkpoint: self.checkpoint,
            output: self.output,
            format: self.format,
            with_h: self.with_h,
            threads: self.threads,
            braid_imports: self.braid_import,
            braid_export: self.braid_export,
            derive_braids: !self.no_derive_braids,
            symmetries: !self.no_symmetries,
            stars: !self.no_stars,
            liberal_order_six: self.liberal_order_six,
            prune: !self.no_prune,
            stop_after: self.stop_after,
            cap: self.cap,
        })
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let config = match Args::parse().config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let to_stdout = config.output.is_none();
    match runner::run(&config) {
        Ok(summary) => {
            match summary.rendered {
                Some(text) if to_stdout => print!("{text}"),
                Some(_) => {}
                None => eprintln!("stopped after {} elements; resume from the checkpoint", summary.computed),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
