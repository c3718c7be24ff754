use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use fracdesign_core::contrast::subsets_of_size;
use fracdesign_core::{
    compatible_sizes, contrast_rep, emit_relations, fixed_size_constraint, indicator_of, is_indicator, marginal,
    relation_system, relations::check_relations, size_constraint, strength, strength_constraints, DesignSpace,
    Enumerator, RelationFormat, SymmetryGroup,
};

use crate::error::{Error, Result};
use crate::formats::{points_json, ClassificationDoc, ContrastDoc, IndicatorDoc};
use crate::parallel;
use crate::spec::parse_space;
use crate::table::{read_table_file, table_string};

/// Largest symmetry group built without `--force`.
const GROUP_LIMIT: u128 = 1_000_000;

/// Exact indicator functions, contrasts, enumeration and classification of
/// fractional factorial designs.
#[derive(Debug, Parser)]
#[command(name = "fracdesign", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct SpaceArg {
    /// Level counts ("2,2,3"), a JSON factors object, or a file holding either
    #[arg(long)]
    pub space: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Indicator polynomial of a design table
    Indicator {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        design: PathBuf,
        /// Write the JSON document here instead of stdout
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Contrast representation of a design table
    Contrast {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Checks a coefficient file for idempotence and the relation system
    Verify {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        theta: PathBuf,
    },
    /// Strength of a design table with its marginal counts
    Strength {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        design: PathBuf,
    },
    /// Fraction sizes compatible with a strength
    Sizes {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        strength: usize,
        /// Leave out the full design
        #[arg(long)]
        proper: bool,
    },
    /// Polynomial system for a computer algebra system
    Relations {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        strength: Option<usize>,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, default_value = "plain")]
        format: String,
    },
    /// All fractions of a given size and strength
    Enumerate {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        strength: usize,
        /// One representative per symmetry class
        #[arg(long)]
        canonical_only: bool,
        /// Worker threads (0 = one per CPU)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write each solution to its own CSV file in this directory
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Print a JSON array of point lists instead of CSV blocks
        #[arg(long)]
        json: bool,
        /// Run searches that are expected to be very expensive
        #[arg(long)]
        force: bool,
    },
    /// Symmetry classes of all fractions of a given size and strength
    Classify {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        strength: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        force: bool,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{}", text);
                1
            } else {
                let _ = write!(out, "{}", text);
                0
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn pretty<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn json_to(out: &mut dyn Write, target: Option<&Path>, text: &str) -> Result<()> {
    match target {
        Some(path) => write_file(path, text),
        None => emit(out, text),
    }
}

fn cost_guard(space: &DesignSpace, t: usize, force: bool) -> Result<()> {
    let (m, n) = (space.run_count(), space.factor_count());
    if !force && m > 24 && t + 2 < n {
        return Err(Error::Infeasible(format!(
            "a strength-{} search over {} runs has unbounded cost; pass --force to run it anyway",
            t, m
        )));
    }
    Ok(())
}

fn build_group(space: &DesignSpace, force: bool) -> Result<SymmetryGroup> {
    let order = SymmetryGroup::order_of(space);
    if !force && order > GROUP_LIMIT {
        return Err(Error::Infeasible(format!(
            "the symmetry group has {} elements; pass --force to build it anyway",
            order
        )));
    }
    Ok(SymmetryGroup::new(space))
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match command {
        Command::Indicator { space, design, json_out } => {
            let s = parse_space(&space.space)?;
            let f = read_table_file(&s, &design)?;
            let ind = indicator_of(&s, &f)?;
            emit(out, &format!("f = {}\n", ind.poly()))?;
            json_to(out, json_out.as_deref(), &pretty(&IndicatorDoc::new(&s, &ind))?)
        }
        Command::Contrast { space, design, json_out } => {
            let s = parse_space(&space.space)?;
            let f = read_table_file(&s, &design)?;
            let mu = contrast_rep(&s, &f);
            emit(out, &format!("{}\n", mu.format_z()))?;
            json_to(out, json_out.as_deref(), &pretty(&ContrastDoc::new(&mu))?)
        }
        Command::Verify { space, theta } => {
            let s = parse_space(&space.space)?;
            let text = std::fs::read_to_string(&theta).map_err(|e| Error::io(&theta, e))?;
            let doc: IndicatorDoc = serde_json::from_str(&text)?;
            if let Some(spec) = &doc.space {
                if spec.build()? != s {
                    return Err(Error::Spec(format!("{} was written for a different space", theta.display())));
                }
            }
            let ind = doc.to_indicator(&s)?;
            let idempotent = is_indicator(&s, ind.poly());
            let relations = check_relations(&relation_system(&s), ind.poly());
            let verdict = |ok: bool| if ok { "pass" } else { "fail" };
            emit(out, &format!("idempotent: {}\nrelations: {}\n", verdict(idempotent), verdict(relations)))?;
            if idempotent {
                let f = fracdesign_core::fraction_of_indicator(&s, ind.poly())?;
                emit(out, &format!("runs: {}\n", f.size()))?;
            }
            Ok(())
        }
        Command::Strength { space, design } => {
            let s = parse_space(&space.space)?;
            let f = read_table_file(&s, &design)?;
            let mut text = format!("strength={}\n", strength(&s, &f));
            for k in 1..=s.factor_count() {
                for subset in subsets_of_size(s.factor_count(), k) {
                    let table = marginal(&s, &f, &subset);
                    let names: Vec<String> = subset.iter().map(|j| (j + 1).to_string()).collect();
                    let counts: Vec<String> = table.counts.iter().map(usize::to_string).collect();
                    text.push_str(&format!(
                        "J={{{}}} counts={} {}\n",
                        names.join(","),
                        counts.join(","),
                        if table.is_uniform() { "uniform" } else { "nonuniform" }
                    ));
                }
            }
            emit(out, &text)
        }
        Command::Sizes { space, strength, proper } => {
            let s = parse_space(&space.space)?;
            let m = s.run_count();
            let sizes: Vec<String> = compatible_sizes(&s, strength)?
                .into_iter()
                .filter(|&v| !proper || v < m)
                .map(|v| v.to_string())
                .collect();
            emit(out, &format!("{}\n", sizes.join(",")))
        }
        Command::Relations { space, strength, size, format } => {
            let s = parse_space(&space.space)?;
            let format: RelationFormat = format.parse()?;
            let mut constraints = Vec::new();
            match (size, strength) {
                (Some(v), _) => constraints.push(fixed_size_constraint(&s, v)),
                (None, Some(_)) => constraints.push(size_constraint(&s)),
                (None, None) => {}
            }
            if let Some(t) = strength {
                constraints.extend(strength_constraints(&s, t)?);
            }
            emit(out, &emit_relations(&relation_system(&s), &constraints, format)?)
        }
        Command::Enumerate { space, size, strength, canonical_only, jobs, out_dir, json, force } => {
            let s = parse_space(&space.space)?;
            cost_guard(&s, strength, force)?;
            let enumerator = Enumerator::new(&s, size, strength)?;
            let group = if canonical_only { Some(build_group(&s, force)?) } else { None };
            let solutions = parallel::search(&enumerator, jobs, group.as_ref())?;
            if let Some(dir) = &out_dir {
                std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
                for (k, f) in solutions.iter().enumerate() {
                    write_file(&dir.join(format!("solution_{:04}.csv", k + 1)), &table_string(&s, f))?;
                }
            } else if json {
                let docs: Vec<_> = solutions.iter().map(|f| points_json(&s, f)).collect();
                emit(out, &pretty(&docs)?)?;
            } else {
                let blocks: Vec<String> = solutions.iter().map(|f| table_string(&s, f)).collect();
                emit(out, &blocks.join("\n"))?;
                if !blocks.is_empty() {
                    emit(out, "\n")?;
                }
            }
            let summary = format!("solutions={} size={} strength={}\n", solutions.len(), size, strength);
            if json && out_dir.is_none() {
                err.write_all(summary.as_bytes()).map_err(|e| Error::io("<stderr>", e))
            } else {
                emit(out, &summary)
            }
        }
        Command::Classify { space, size, strength, jobs, json, force } => {
            let s = parse_space(&space.space)?;
            cost_guard(&s, strength, force)?;
            let enumerator = Enumerator::new(&s, size, strength)?;
            let group = build_group(&s, force)?;
            let solutions = parallel::search(&enumerator, jobs, None)?;
            let orbits = group.classify(&solutions)?;
            if json {
                let doc = ClassificationDoc::new(&s, solutions.len(), &orbits)?;
                return emit(out, &pretty(&doc)?);
            }
            let sizes: Vec<String> = orbits.iter().map(|o| o.size().to_string()).collect();
            let mut text = format!("total={} orbits={} sizes={}\n", solutions.len(), orbits.len(), sizes.join(","));
            for (k, o) in orbits.iter().enumerate() {
                let f = &o.representative;
                text.push_str(&format!("\norbit {} size={}\n", k + 1, o.size()));
                text.push_str(&format!("f = {}\n", indicator_of(&s, f)?.poly()));
                text.push_str(&format!("{}\n", contrast_rep(&s, f).format_z()));
                text.push_str(&table_string(&s, f));
            }
            emit(out, &text)
        }
    }
}
