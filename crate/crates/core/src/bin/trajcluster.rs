use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::warn;

use trajcluster::pipeline::{self, PipelineConfig};
use trajcluster::synth::parse_mix;
use trajcluster::{Error, GainMode, Result};

#[derive(Parser)]
#[command(name = "trajcluster", version, about = "Cluster citation trajectories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct ConfigArgs {
    /// TOML config, or a diagnostics.json to replay its effective config.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    min_success_ratio: Option<f64>,
    #[arg(long)]
    tmax: Option<usize>,
    #[arg(long)]
    kmin: Option<usize>,
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    epsilon_quantile: Option<f64>,
    #[arg(long)]
    final_k: Option<usize>,
    /// `windowed` or `literal-prefix`
    #[arg(long)]
    gain_mode: Option<GainMode>,
    #[arg(long)]
    seed: Option<u64>,
}

impl ConfigArgs {
    fn resolve(&self) -> Result<PipelineConfig> {
        let mut c = match &self.config {
            Some(p) => PipelineConfig::load(p)?,
            None => PipelineConfig::default(),
        };
        macro_rules! over {
            ($($flag:ident => $field:ident),*) => {
                $(if let Some(v) = self.$flag { c.$field = v; })*
            };
        }
        over!(window => window_length, min_success_ratio => min_success_ratio, tmax => t_max,
              kmin => k_min, kmax => k_max, epsilon_quantile => epsilon_quantile,
              gain_mode => gain_mode, seed => seed);
        if let Some(e) = self.epsilon {
            c.epsilon = Some(e);
        }
        if let Some(k) = self.final_k {
            c.final_k = Some(k);
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Keep well-cited trajectories, truncated to the window: filtered.csv
    Filter {
        input: PathBuf,
        /// Input is long format (paper_id,pub_year,rel_year,count).
        #[arg(long)]
        long: bool,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Feature vectors of a filtered corpus: features.csv
    Features {
        filtered: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Cluster ensemble over a feature CSV: labels.csv, diagnostics.json
    Cluster {
        features: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Cluster characterization: report.json, gains_hist.csv, peaks_box.csv
    Report {
        features: PathBuf,
        labels: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// All stages in one go.
    Pipeline {
        input: PathBuf,
        #[arg(long)]
        long: bool,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Synthetic corpus plus a `.truth.csv` sidecar.
    Synth {
        /// Cohorts as NAME:SIZE, e.g. `ER-RD:500,DR-ND:500`.
        #[arg(long)]
        mix: String,
        #[arg(long, default_value_t = 10)]
        window: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Adjusted Rand Index between a label file and a truth file.
    Eval { labels: PathBuf, truth: PathBuf },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Filter { input, long, out_dir, cfg } => {
            let kept = pipeline::cmd_filter(&input, long, &cfg.resolve()?, &out_dir)?;
            println!("{} trajectories kept", kept.len());
        }
        Command::Features { filtered, out_dir, cfg } => {
            let f = pipeline::cmd_features(&filtered, &cfg.resolve()?, &out_dir)?;
            println!("{} feature rows", f.len());
        }
        Command::Cluster { features, out_dir, cfg } => {
            let s = pipeline::cmd_cluster(&features, &cfg.resolve()?, &out_dir)?;
            println!("{} clusters, sizes {:?}", s.run.result.n_groups(), s.run.result.group_sizes());
        }
        Command::Report { features, labels, out_dir, cfg } => {
            let r = pipeline::cmd_report(&features, &labels, &cfg.resolve()?, &out_dir)?;
            print_clusters(&r);
        }
        Command::Pipeline { input, long, out_dir, cfg } => {
            let out = pipeline::cmd_pipeline(&input, long, &cfg.resolve()?, &out_dir)?;
            println!("{} of {} trajectories clustered", out.filtered.len(), out.n_input);
            print_clusters(&out.report);
        }
        Command::Synth { mix, window, seed, output } => {
            let mix = parse_mix(&mix)?;
            if mix.is_empty() {
                return Err(Error::InvalidParameter("empty mix".into()));
            }
            let truth = pipeline::cmd_synth(&mix, window, seed, &output)?;
            println!("wrote {} and {}", output.display(), truth.display());
        }
        Command::Eval { labels, truth } => {
            println!("{}", pipeline::cmd_eval(&labels, &truth)?);
        }
    }
    Ok(())
}

fn print_clusters(r: &trajcluster::Report) {
    for c in &r.clusters {
        let p = &c.profile;
        println!(
            "cluster {} ({}): n={} Ti={:.2} Tg={:.2} Td={:.2}",
            p.cluster_id, c.semantic_label, p.size, p.t_initial.mean, p.t_growth.mean, p.t_decay.mean
        );
        if !c.observed_class {
            warn!("cluster {} has an unusual class {}", p.cluster_id, c.semantic_label);
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
