use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cocone::linalg::to_decimal;
use cocone::verify::{random_instance, verify_batch, Check, InstanceSpec};
use cocone::{
    colength, hilbert_samuel, mixed_covolume, mixed_multiplicity, samuel_multiplicity, Error, ProblemFile,
    Rational,
};

/// Exact covolumes, mixed covolumes and multiplicities of monomial ideals.
#[derive(Parser)]
#[command(name = "cocone", version)]
struct Cli {
    /// Also print a decimal rendering of rational results, to this many digits.
    #[arg(long, global = true, value_name = "DIGITS")]
    decimal: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Problem file (JSON).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Covolume of a region.
    Covol {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        region: String,
    },
    /// Mixed covolume of n regions.
    MixedCovol {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        regions: Vec<String>,
    },
    /// Colength of an ideal.
    Colength {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ideal: String,
    },
    /// Hilbert–Samuel function H(1..=k-max).
    HilbertSamuel {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value_t = 5)]
        k_max: u32,
    },
    /// Samuel multiplicity of an ideal.
    Mult {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ideal: String,
    },
    /// Mixed multiplicity of n ideals.
    MixedMult {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        ideals: Vec<String>,
    },
    /// Generators of the integral closure of an ideal.
    Closure {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ideal: String,
    },
    /// Whether two ideals are equivalent.
    Equiv {
        #[command(flatten)]
        input: Input,
        /// Two ideal names, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        ideals: Vec<String>,
    },
    /// Check a theorem on seeded random instances; one JSON report per line.
    Verify {
        #[arg(value_enum)]
        check: CheckArg,
        #[command(flatten)]
        batch: Batch,
    },
    /// Print the problem file of a seeded random instance.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[command(flatten)]
        sizes: Sizes,
    },
}

#[derive(Args)]
struct Batch {
    /// First seed; instances use seed, seed + 1, ...
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 1)]
    count: u64,
    /// Worker threads; output order does not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    sizes: Sizes,
}

#[derive(Args)]
struct Sizes {
    #[arg(long)]
    rays: Option<usize>,
    #[arg(long)]
    gens: Option<usize>,
    #[arg(long)]
    bound: Option<i64>,
}

impl Sizes {
    fn spec(&self, seed: u64, dim: usize) -> InstanceSpec {
        let mut spec = InstanceSpec::standard(seed, dim);
        if let Some(r) = self.rays {
            spec.ray_count = r;
        }
        if let Some(g) = self.gens {
            spec.generator_count = g;
        }
        if let Some(b) = self.bound {
            spec.coordinate_bound = b;
        }
        spec
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Bk,
    Af,
    Poly,
    Additivity,
}

impl From<CheckArg> for Check {
    fn from(c: CheckArg) -> Self {
        match c {
            CheckArg::Bk => Check::Bk,
            CheckArg::Af => Check::Af,
            CheckArg::Poly => Check::Poly,
            CheckArg::Additivity => Check::Additivity,
        }
    }
}

fn load(input: &Input) -> Result<ProblemFile, Error> {
    let text = std::fs::read_to_string(&input.input)
        .map_err(|e| Error::Input(format!("{}: {e}", input.input.display())))?;
    ProblemFile::parse(&text)
}

fn render(q: &Rational, decimal: Option<usize>) -> String {
    match decimal {
        Some(d) => format!("{q} ~ {}", to_decimal(q, d)),
        None => q.to_string(),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let decimal = cli.decimal;
    match cli.command {
        Command::Covol { input, region } => {
            let p = load(&input)?;
            println!("{}", render(&p.region(&region)?.covolume()?, decimal));
        }
        Command::MixedCovol { input, regions } => {
            let p = load(&input)?;
            let rs = regions
                .iter()
                .map(|r| p.region(r).cloned())
                .collect::<Result<Vec<_>, _>>()?;
            println!("{}", render(&mixed_covolume(&rs)?, decimal));
        }
        Command::Colength { input, ideal } => {
            let p = load(&input)?;
            println!("{}", colength(p.ideal(&ideal)?)?);
        }
        Command::HilbertSamuel { input, ideal, k_max } => {
            let p = load(&input)?;
            for (k, h) in hilbert_samuel(p.ideal(&ideal)?, k_max)?.entries {
                println!("{k} {h}");
            }
        }
        Command::Mult { input, ideal } => {
            let p = load(&input)?;
            println!("{}", samuel_multiplicity(p.ideal(&ideal)?)?);
        }
        Command::MixedMult { input, ideals } => {
            let p = load(&input)?;
            let is = ideals
                .iter()
                .map(|i| p.ideal(i).cloned())
                .collect::<Result<Vec<_>, _>>()?;
            println!("{}", mixed_multiplicity(&is)?);
        }
        Command::Closure { input, ideal } => {
            let p = load(&input)?;
            let closed = p.ideal(&ideal)?.integral_closure()?;
            println!("{}", serde_json::to_string(closed.generators()).expect("vectors serialize"));
        }
        Command::Equiv { input, ideals } => {
            if ideals.len() != 2 {
                return Err(Error::Input(format!("--ideals: expected two names, found {}", ideals.len())));
            }
            let p = load(&input)?;
            let (a, b) = (p.ideal(&ideals[0])?, p.ideal(&ideals[1])?);
            println!("{}", a.equivalent(b)?);
        }
        Command::Verify { check, batch } => {
            let specs: Vec<InstanceSpec> = (0..batch.count)
                .map(|i| batch.sizes.spec(batch.seed + i, batch.dim))
                .collect();
            let mut code = ExitCode::SUCCESS;
            for result in verify_batch(check.into(), &specs, batch.jobs) {
                let report = result?;
                println!("{}", report.to_json());
                if !report.holds {
                    code = ExitCode::from(1);
                    let replay = ProblemFile::from_instance(&random_instance(&report.instance)?);
                    eprintln!("check failed on {}:\n{}", report.instance, replay.to_json_pretty());
                }
            }
            return Ok(code);
        }
        Command::Random { seed, dim, sizes } => {
            let instance = random_instance(&sizes.spec(seed, dim))?;
            println!("{}", ProblemFile::from_instance(&instance).to_json_pretty());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
