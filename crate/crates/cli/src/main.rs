use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use webvac::format::{
    parse_document, parse_ncm, parse_tableau, parse_web, print_ncm, print_tableau, print_web,
    Document,
};
use webvac::matching::{ncm_from_tableau, reflect_ncm};
use webvac::render::{render, Format, Kind, RenderSpec};
use webvac::tableau::{count_syt, enumerate_syt, evacuate, promote, Shape};
use webvac::verify::{render_reports, run_suite, Execution};
use webvac::web::{flip_edges, reflect_web, web_from_ncm, web_from_tableau, EdgeId};

#[derive(Parser)]
#[command(name = "webvac", version, about = "Evacuation, multicolored matchings and sl_n webs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Ncm,
    Web,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Svg,
    Tikz,
}

#[derive(Subcommand)]
enum Command {
    /// Evacuate a tableau.
    Evacuate { file: PathBuf },
    /// Promote a tableau, repeatedly with --steps.
    Promote {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        steps: u64,
    },
    /// Multicolored noncrossing matching of a tableau.
    Ncm { file: PathBuf },
    /// Web of a tableau, boundary edges standardized unless --raw.
    Web {
        file: PathBuf,
        #[arg(long)]
        raw: bool,
    },
    /// Reflect a matching or a web.
    Reflect {
        #[arg(long, value_enum)]
        kind: KindArg,
        file: PathBuf,
    },
    /// Flip web edges, numbered from 1 in the order the web file lists them.
    Flip {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        edges: Vec<usize>,
    },
    /// Check every tableau of an n x k rectangle.
    Verify {
        #[arg(long, num_args = 2, value_names = ["N", "K"], required = true)]
        shape: Vec<usize>,
        #[arg(long, env = "WEBVAC_BUDGET", default_value_t = webvac::tableau::DEFAULT_BUDGET)]
        budget: u64,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Print every tableau of an n x k rectangle.
    Enumerate {
        #[arg(long, num_args = 2, value_names = ["N", "K"], required = true)]
        shape: Vec<usize>,
        #[arg(long, env = "WEBVAC_BUDGET", default_value_t = webvac::tableau::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Number of tableaux of an n x k rectangle.
    Count {
        #[arg(long, num_args = 2, value_names = ["N", "K"], required = true)]
        shape: Vec<usize>,
    },
    /// Draw a matching or web as SVG or TikZ. A tableau file is converted first.
    Render {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum)]
        format: FormatArg,
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Comma-separated colors for colors 1, 2, ...
        #[arg(long, value_delimiter = ',')]
        palette: Option<Vec<String>>,
    },
}

/// Why a command stopped: bad input (exit 2) or a failed check (exit 1).
enum Failure {
    Input(String),
    Check(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn shape_arg(dims: &[usize]) -> Result<Shape, Failure> {
    Ok(Shape::new(dims[0], dims[1])?)
}

fn run(cli: Cli) -> Result<String, Failure> {
    Ok(match cli.command {
        Command::Evacuate { file } => print_tableau(&evacuate(&parse_tableau(&read_input(&file)?)?)),
        Command::Promote { file, steps } => {
            let mut t = parse_tableau(&read_input(&file)?)?;
            for _ in 0..steps {
                t = promote(&t);
            }
            print_tableau(&t)
        }
        Command::Ncm { file } => print_ncm(&ncm_from_tableau(&parse_tableau(&read_input(&file)?)?)?),
        Command::Web { file, raw } => {
            let t = parse_tableau(&read_input(&file)?)?;
            if raw {
                print_web(&web_from_ncm(&ncm_from_tableau(&t)?)?)
            } else {
                print_web(&web_from_tableau(&t)?)
            }
        }
        Command::Reflect { kind, file } => {
            let text = read_input(&file)?;
            match kind {
                KindArg::Ncm => print_ncm(&reflect_ncm(&parse_ncm(&text)?)),
                KindArg::Web => print_web(&reflect_web(&parse_web(&text)?)),
            }
        }
        Command::Flip { file, edges } => {
            let w = parse_web(&read_input(&file)?)?;
            let ids = edges
                .iter()
                .map(|&e| match e {
                    0 => Err(Failure::Input("edge ids start at 1".into())),
                    e => Ok(EdgeId(e - 1)),
                })
                .collect::<Result<Vec<_>, _>>()?;
            print_web(&flip_edges(&w, &ids).map_err(|e| match e {
                webvac::web::WebError::UnknownEdge(i) => {
                    Failure::Input(format!("edge {} does not exist", i + 1))
                }
                other => Failure::Input(other.to_string()),
            })?)
        }
        Command::Verify {
            shape,
            budget,
            sequential,
        } => {
            let execution = if sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let reports = run_suite(&[shape_arg(&shape)?], budget, execution);
            let text = render_reports(&reports);
            if let Some(err) = reports.iter().find_map(|r| r.budget_error.as_ref()) {
                print!("{text}");
                return Err(Failure::Input(err.to_string()));
            }
            if reports.iter().any(|r| !r.passed()) {
                print!("{text}");
                return Err(Failure::Check("verification failed".into()));
            }
            text
        }
        Command::Enumerate { shape, budget } => enumerate_syt(shape_arg(&shape)?, budget)?
            .iter()
            .map(print_tableau)
            .collect(),
        Command::Count { shape } => format!("{}\n", count_syt(shape_arg(&shape)?)),
        Command::Render {
            kind,
            format,
            file,
            output,
            scale,
            palette,
        } => {
            if !(scale.is_finite() && scale > 0.0) {
                return Err(Failure::Input(format!("scale must be positive, got {scale}")));
            }
            let kind = match kind {
                KindArg::Ncm => Kind::Ncm,
                KindArg::Web => Kind::Web,
            };
            let format = match format {
                FormatArg::Svg => Format::Svg,
                FormatArg::Tikz => Format::Tikz,
            };
            let doc = match parse_document(&read_input(&file)?)? {
                Document::Tableau(t) => match kind {
                    Kind::Ncm => Document::Ncm(ncm_from_tableau(&t)?),
                    Kind::Web => Document::Web(web_from_tableau(&t)?),
                },
                doc => doc,
            };
            let mut spec = RenderSpec::new(kind, format);
            spec.scale = scale;
            if let Some(p) = palette {
                spec.palette = p;
            }
            let out = render(&doc, &spec)?;
            std::fs::write(&output, out)
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", output.display())))?;
            String::new()
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Check(msg)) => {
            eprintln!("webvac: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("webvac: {}", msg.replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
