//! The `tactons` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use tacton::experiments::{
    analyze, read_trial_log, simulate_study, write_trial_log, ResponderModel, SamplingMode,
};
use tacton::guidance::{Guide, MazeWorld};
use tacton::player::{dump_schedule, presentation_schedule, TerminalRenderer, DEFAULT_CAP_MS};

use tacton::player::PinArrayDevice;
use tacton::SetCatalog;

use crate::config::Config;
use crate::server::Server;
use crate::session::{SessionOptions, Shared};
use crate::worlds::Worlds;

#[derive(Debug, Parser)]
#[command(name = "tactons", version, about = "Pin-array Tacton engine")]
pub struct Cli {
    /// Catalog JSON applied over the built-in catalog.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Print the presentation schedule of a catalog Tacton.
    Render {
        /// e.g. set9.NE, shape.N.large, circuit.lamp, s3.SW.small.fast
        #[arg(long)]
        tacton: String,
        #[arg(long, default_value_t = 1000)]
        until: u64,
        #[arg(long, default_value_t = DEFAULT_CAP_MS)]
        cap: u64,
        /// Draw each presentation instead of printing the dump.
        #[arg(long)]
        ascii: bool,
    },
    /// Simulate an identification study and print the trial log CSV.
    Simulate {
        #[arg(long, default_value = "s3")]
        space: String,
        #[arg(long, default_value_t = 10)]
        participants: usize,
        /// Trials per participant; 96 for s2/s3, 100 for single sets.
        #[arg(long)]
        trials: Option<usize>,
        /// Responder model JSON; a perfect responder when omitted.
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw trials uniformly; the default for single sets.
        #[arg(long, conflicts_with = "balanced")]
        uniform: bool,
        /// Show every Tacton equally often; the default for s2 and s3.
        #[arg(long)]
        balanced: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Summarize a trial log CSV.
    Analyze {
        csv: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Walk a maze following the guidance cues.
    MazeWalk {
        /// Maze file, or the name of a bundled maze such as `m03`.
        maze: PathBuf,
        #[arg(long)]
        mirror: bool,
    },
    /// Run the WebSocket session service.
    Serve {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        listen: Option<std::net::SocketAddr>,
        #[arg(long)]
        virtual_time: bool,
    },
    /// Catalog tools.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogCmd {
    /// Print the whole catalog as JSON.
    Dump,
}

pub fn load_catalog(path: Option<&Path>) -> anyhow::Result<SetCatalog> {
    match path {
        None => Ok(SetCatalog::builtin()),
        Some(p) => {
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            SetCatalog::from_json(&text).with_context(|| format!("catalog {}", p.display()))
        }
    }
}

/// Runs every subcommand except `serve`, writing to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<()> {
    match cli.command {
        Cmd::Render {
            tacton,
            until,
            cap,
            ascii,
        } => {
            let catalog = load_catalog(cli.catalog.as_deref())?;
            let t = catalog.resolve(&tacton)?;
            let schedule = presentation_schedule(&t, until, cap);
            if ascii {
                let mut renderer = TerminalRenderer::new(&mut *out);
                for (at, p) in &schedule {
                    renderer.present(*at, p).map_err(|e| anyhow::anyhow!(e.0))?;
                }
            } else {
                out.write_all(dump_schedule(&schedule)?.as_bytes())?;
            }
        }
        Cmd::Simulate {
            space,
            participants,
            trials,
            model,
            seed,
            uniform,
            balanced,
            out: path,
        } => {
            let catalog = load_catalog(cli.catalog.as_deref())?;
            let space = catalog.space(&space)?;
            let model = match model {
                None => ResponderModel::perfect(),
                Some(p) => {
                    let text = std::fs::read_to_string(&p)
                        .with_context(|| format!("reading {}", p.display()))?;
                    ResponderModel::from_json(&text)
                        .with_context(|| format!("model {}", p.display()))?
                }
            };
            let multi = space.dimensions().len() > 1;
            let trials = trials.unwrap_or(if multi { 96 } else { 100 });
            let mode = if balanced || (multi && !uniform) {
                SamplingMode::Balanced
            } else {
                SamplingMode::Uniform
            };
            let records = simulate_study(&space, &model, participants, trials, mode, seed)?;
            match path {
                Some(p) => {
                    let file = std::fs::File::create(&p)
                        .with_context(|| format!("creating {}", p.display()))?;
                    write_trial_log(file, &records)?;
                }
                None => write_trial_log(&mut *out, &records)?,
            }
        }
        Cmd::Analyze { csv, json } => {
            let file =
                std::fs::File::open(&csv).with_context(|| format!("opening {}", csv.display()))?;
            let records =
                read_trial_log(file).with_context(|| format!("reading {}", csv.display()))?;
            let report =
                analyze(&records).with_context(|| format!("analyzing {}", csv.display()))?;
            if json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                out.write_all(report.to_text().as_bytes())?;
            }
        }
        Cmd::MazeWalk { maze, mirror } => {
            let bundled = tacton::guidance::bundled_mazes()
                .into_iter()
                .find(|(name, _)| !maze.exists() && Path::new(name) == maze);
            let mut world = match bundled {
                Some((_, world)) => world,
                None => {
                    let text = std::fs::read_to_string(&maze)
                        .with_context(|| format!("reading {}", maze.display()))?;
                    MazeWorld::parse(&text).with_context(|| format!("maze {}", maze.display()))?
                }
            };
            if mirror {
                world = world.mirror();
            }
            let expected = world
                .distance_from(world.start())
                .expect("parse checks reachability");
            let path = world
                .clone()
                .guided_walk_with(&tacton::guidance::DEFAULT_PRIORITY)?;
            let labels: Vec<&str> = path.iter().map(|d| d.label()).collect();
            writeln!(
                out,
                "maze {}{}",
                maze.display(),
                if mirror { " (mirrored)" } else { "" }
            )?;
            writeln!(out, "path: {}", labels.join(" "))?;
            writeln!(out, "steps = {}", path.len())?;
            writeln!(out, "BFS distance = {expected}")?;
            if path.len() != expected {
                bail!(
                    "walk took {} steps but the BFS distance is {expected}",
                    path.len()
                );
            }
            writeln!(out, "steps = BFS distance")?;
        }
        Cmd::Catalog {
            action: CatalogCmd::Dump,
        } => {
            out.write_all(load_catalog(cli.catalog.as_deref())?.to_json().as_bytes())?;
        }
        Cmd::Serve { .. } => bail!("serve needs an async runtime; use serve()"),
    }
    Ok(())
}

/// Builds the service from a config and runs it.
pub async fn serve(config: Config) -> anyhow::Result<()> {
    let catalog = load_catalog(config.catalog.as_deref())?;
    let worlds = match &config.world_dir {
        Some(dir) => {
            Worlds::with_dir(dir).with_context(|| format!("worlds in {}", dir.display()))?
        }
        None => Worlds::bundled(),
    };
    let shared = Shared::new(Guide::new(catalog, config.guidance), worlds);
    let options = SessionOptions {
        virtual_time: config.virtual_time,
        ..SessionOptions::default()
    };
    let server = Server::bind(config.listen, shared, options, config.log_dir.clone())
        .await
        .with_context(|| format!("binding {}", config.listen))?;
    tracing::info!("listening on ws://{}", server.local_addr()?);
    server.run().await?;
    Ok(())
}

/// Resolves the `serve` flags into a config: file, then the port
/// environment variable, then flags.
pub fn serve_config(
    catalog: Option<PathBuf>,
    config: Option<PathBuf>,
    listen: Option<std::net::SocketAddr>,
    virtual_time: bool,
) -> anyhow::Result<Config> {
    let mut c = match config {
        Some(p) => Config::load(&p)?,
        None => Config::default(),
    }
    .with_env()?;
    if let Some(addr) = listen {
        c.listen = addr;
    }
    if catalog.is_some() {
        c.catalog = catalog;
    }
    c.virtual_time |= virtual_time;
    Ok(c)
}
