use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fourquad::geometry::{CensusMode, GeometryError};
use fourquad::groups::{GroupError, DEFAULT_CAP};
use fourquad::io::{load_group, IoError};
use fourquad::pipeline::{run_full, Analysis, PipelineError, RunConfig, DEFAULT_PRIME, DEFAULT_SEED};
use fourquad::report::{to_json, FullReport};

const EXIT_OTHER: u8 = 1;
const EXIT_UNREADABLE: u8 = 2;
const EXIT_PRIME: u8 = 3;
const EXIT_CAP: u8 = 4;

#[derive(Parser)]
#[command(name = "fourquad", version, about = "Screen finite groups for free actions on complete intersections of four quadrics in P^7")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Close the generators into a group; print order and classes.
    Closure(Common),
    /// Character table as an aligned grid.
    Chartable(Common),
    /// Lefschetz screening of the quadric character.
    Lefschetz(Common),
    /// The equivariant quadric family; `--params` specializes it.
    Quadrics(Common),
    /// Freeness certificate for one member of the family.
    Freeness(Common),
    /// Singular point census with node and pencil checks.
    Singularities(Common),
    /// Every stage, ending in a classification.
    Full(Common),
}

#[derive(Args)]
struct Common {
    /// Catalog name or path to a group file.
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Comma-separated integer parameters, e.g. t1,t2,s1,s2.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Option<Vec<i64>>,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Census strategy; chosen from the forms when omitted.
    #[arg(long)]
    mode: Option<Mode>,
    /// Maximum group order during closure.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Also print the JSON report on standard output.
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Diagonal,
    Groebner,
}

impl Common {
    fn config(&self) -> RunConfig {
        RunConfig {
            prime: self.prime,
            seed: self.seed,
            params: self.params.clone(),
            mode: self.mode.map(|m| match m {
                Mode::Diagonal => CensusMode::Diagonal,
                Mode::Groebner => CensusMode::Groebner,
            }),
            cap: self.cap,
        }
    }

    fn checked_config(&self) -> Result<RunConfig, PipelineError> {
        let cfg = self.config();
        cfg.validate()?;
        Ok(cfg)
    }

    fn analysis(&self) -> Result<Analysis, PipelineError> {
        Analysis::new(&load_group(&self.group)?, self.cap)
    }

    fn emit<T: Serialize>(&self, summary: String, report: &T) -> anyhow::Result<()> {
        print!("{summary}");
        let text = to_json(report);
        if self.verbose {
            print!("{text}");
        }
        if let Some(path) = &self.out {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<PipelineError>() {
        Some(PipelineError::Io(IoError::Read { .. })) => EXIT_UNREADABLE,
        Some(PipelineError::Io(_)) => EXIT_UNREADABLE,
        Some(PipelineError::InvalidPrime { .. }) => EXIT_PRIME,
        Some(PipelineError::Geometry(GeometryError::BadPrime { .. })) => EXIT_PRIME,
        Some(PipelineError::Group(GroupError::CapExceeded(_))) => EXIT_CAP,
        _ => EXIT_OTHER,
    }
}

fn list(v: &[impl ToString]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Closure(c) => {
            let a = c.analysis()?;
            let r = a.closure_report()?;
            let s = format!(
                "group {}: order {}, {} classes, exponent {}{}\nclass sizes  [{}]\nclass orders [{}]\nscalars: order {} generated by {}\nprojective image: order {}, {} classes, exponent {}{}\n",
                r.group,
                r.order,
                r.class_count,
                r.exponent,
                if r.abelian { ", abelian" } else { "" },
                list(&r.class_sizes),
                list(&r.class_orders),
                r.scalar_order,
                r.scalar,
                r.projective_order,
                r.projective_class_count,
                r.projective_exponent,
                if r.projective_abelian { ", abelian" } else { "" },
            );
            c.emit(s, &r)
        }
        Command::Chartable(c) => {
            let r = c.analysis()?.chartable_report();
            c.emit(r.grid(), &r)
        }
        Command::Lefschetz(c) => {
            let a = c.analysis()?;
            let v = a.lefschetz()?;
            let r = a.lefschetz_report(&v);
            let mut s = format!("group {}: Lefschetz {}\n", r.group, if r.pass { "PASS" } else { "FAIL" });
            s += &format!("values in Q(z), z = exp(2 pi i/{})\n", r.value_order);
            s += &format!("xi   {}\ntV   [{}]\ntO2  [{}]\nv    [{}]\n", r.xi, list(&r.tv), list(&r.to2), list(&r.v));
            if let Some(m) = &r.v_multiplicities {
                s += &format!("v multiplicities [{}]\n", list(m));
            }
            if let Some(w) = &r.witness {
                s += &format!("{} = [{}] is not a character\n", w.function, list(&w.values));
            }
            for g in &r.guard_failures {
                s += &format!("guard: {g}\n");
            }
            c.emit(s, &r)
        }
        Command::Quadrics(c) => {
            let a = c.analysis()?;
            let v = a.lefschetz()?;
            let fam = a.family(&v)?;
            let member = match c.params {
                Some(_) => Some(a.member(&fam, &c.config())?),
                None => None,
            };
            let r = a.quadrics_report(&fam, member.as_ref());
            let mut s = format!("group {}: family of shape {} (dimension {})\n", r.group, r.shape, r.parameter_dimension);
            for k in &r.constituents {
                s += &format!(
                    "  character X{} of degree {}: {} of {} copies\n",
                    k.character + 1,
                    k.degree,
                    k.v_multiplicity,
                    k.multiplicity
                );
            }
            if let Some(m) = &r.member {
                for (i, f) in m.forms.iter().enumerate() {
                    s += &format!("q{} = {f}\n", i + 1);
                }
            }
            c.emit(s, &r)
        }
        Command::Freeness(c) => {
            let a = c.analysis()?;
            let v = a.lefschetz()?;
            let fam = a.family(&v)?;
            let m = a.member(&fam, &c.checked_config()?)?;
            let r = a.freeness(&m, c.prime)?;
            let mut s = format!(
                "group {}: {} at p = {} over {} classes\n",
                r.group,
                if r.verdict.free { "free" } else { "not free" },
                r.prime,
                r.classes.len()
            );
            if let Some(cls) = r.verdict.class {
                s += &format!("fixed points from class {cls}\n");
            }
            c.emit(s, &r)
        }
        Command::Singularities(c) => {
            let a = c.analysis()?;
            let v = a.lefschetz()?;
            let fam = a.family(&v)?;
            let cfg = c.checked_config()?;
            let m = a.member(&fam, &cfg)?;
            let r = a.singularities(&m, &cfg)?;
            let mut s = format!(
                "group {}: {} singular points over F_p^2 (p = {}, {} mode), {}\n",
                r.group,
                r.point_count,
                r.prime,
                r.mode,
                if r.all_odp { "all ordinary double points" } else { "not all ordinary double points" }
            );
            for pc in &r.patterns {
                s += &format!("  pattern [{}]: {} points\n", list(&pc.pattern), pc.count);
            }
            if let Some(p) = &r.pencil {
                s += &format!(
                    "pencil: incidence {}, invariance {}, family invariance {}\n",
                    p.incidence, p.invariance, p.family_invariance
                );
            }
            c.emit(s, &r)
        }
        Command::Full(c) => {
            let r: FullReport = run_full(&load_group(&c.group).map_err(PipelineError::from)?, &c.checked_config()?)?;
            let s = format!("group {}: {} (decided by {}): {}\n", r.group, r.classification, r.decided_by, r.reason);
            c.emit(s, &r)
        }
    }
}
