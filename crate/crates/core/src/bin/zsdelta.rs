use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zsdelta::atoms::{enumerate_atoms, DEFAULT_ENUMERATION_BUDGET};
use zsdelta::classify::classify_atoms;
use zsdelta::constructions::{build_construction, Construction};
use zsdelta::error::{Error, Result};
use zsdelta::factorization::{distances_oracle, length_set, DEFAULT_MEMO_BUDGET, DEFAULT_ORACLE_BUDGET};
use zsdelta::lattice::{explain_min_delta, integer_kernel, min_delta};
use zsdelta::parse::{parse_group, parse_sequence, parse_specs};
use zsdelta::report::{self, Format, TransferSample};
use zsdelta::sequence::SupportSet;
use zsdelta::sweep::{delta_star, minimal_sweep, SweepOptions, DEFAULT_MINIMAL_BUDGET, DEFAULT_SWEEP_BUDGET};
use zsdelta::transfer::{random_product, reduced_atoms, transfer_reduce};
use zsdelta::verify::{self, Verification};

#[derive(Parser)]
#[command(name = "zsdelta", version, about = "Factorization invariants of zero-sum sequence monoids")]
struct Cli {
    /// Output format: text, json or csv.
    #[arg(long, global = true, default_value = "text")]
    format: Format,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// Group, e.g. C2^2xC4.
    #[arg(long)]
    group: String,
    /// Subset, e.g. "(1);(4)".
    #[arg(long)]
    subset: String,
    /// Cap on Π(ord(g)+1) for atom enumeration.
    #[arg(long, env = "ZSDELTA_BUDGET", default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    budget: u128,
}

impl Target {
    fn support(&self) -> Result<SupportSet> {
        let (_, s) = parse_specs(&self.group, Some(&self.subset))?;
        Ok(s.expect("subset given"))
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the minimal zero-sum sequences over a subset.
    Atoms(Target),
    /// Set of lengths of one zero-sum sequence.
    Lengths {
        #[command(flatten)]
        target: Target,
        /// Sequence, e.g. "(1)^5*(4)^5".
        #[arg(long)]
        sequence: String,
        #[arg(long, default_value_t = DEFAULT_MEMO_BUDGET)]
        memo_budget: usize,
    },
    /// Exact min Δ from the kernel lattice.
    MinDelta {
        #[command(flatten)]
        target: Target,
        /// Show two factorizations realizing min Δ.
        #[arg(long)]
        explain: bool,
    },
    /// Distances seen among all zero-sum sequences up to a length.
    DeltaObserved {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        max_len: u64,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        oracle_budget: u128,
    },
    /// Structural flags of a subset.
    Classify(Target),
    /// Δ*(G), m(G) and the extremal sets of a group.
    DeltaStar {
        #[arg(long)]
        group: String,
        /// Evaluate one subset per automorphism orbit.
        #[arg(long)]
        symmetry: bool,
        /// Visit only sets whose proper subsets are half-factorial.
        #[arg(long)]
        minimal: bool,
        /// Cap on the number of subsets.
        #[arg(long, env = "ZSDELTA_SWEEP_BUDGET", default_value_t = DEFAULT_SWEEP_BUDGET)]
        budget: u128,
    },
    /// m(G), the largest min Δ over non-half-factorial LCN sets.
    MOfG {
        #[arg(long)]
        group: String,
        #[arg(long, env = "ZSDELTA_SWEEP_BUDGET", default_value_t = DEFAULT_MINIMAL_BUDGET)]
        budget: u128,
    },
    /// Reduce a minimal non-half-factorial set until it spans itself.
    TransferReduce {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random sequences checked against the reduction.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Print a named construction, e.g. pm:7, eps:3:2, nonsimple-odd:3, nonsimple-even:3.
    Construct { kind: Construction },
    /// Re-derive a structural result from scratch.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
}

#[derive(Subcommand)]
enum Check {
    /// max Δ*(G) = max{exp(G)-2, r(G)-1} on every group up to an order.
    #[command(name = "thm-1.1")]
    MaxDeltaStar {
        #[arg(long, default_value_t = 16)]
        max_order: u64,
        #[arg(long)]
        symmetry: bool,
    },
    /// m(G) = r(G)-1 on p-groups.
    #[command(name = "prop-3.2")]
    PGroups {
        /// Groups to check; a fixed list of small p-groups by default.
        #[arg(long)]
        group: Vec<String>,
    },
    /// Shape of the extremal minimal non-half-factorial sets.
    #[command(name = "thm-4.5")]
    Extremal {
        /// A single group; every group up to --max-order otherwise.
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = 16)]
        max_order: u64,
    },
    /// The two non-simple constructions.
    #[command(name = "remark-4.6")]
    NonSimple {
        #[arg(long)]
        which: u32,
        #[arg(long, default_value_t = 3)]
        r: u32,
    },
    /// Minimal distances of the basic constructions and per-set bounds.
    #[command(name = "lemma-3.1")]
    Basic {
        #[arg(long, default_value_t = 12)]
        max_order: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Inconsistent(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    let fmt = cli.format;
    let out = match &cli.command {
        Command::Atoms(t) => report::atoms_report(&enumerate_atoms(&t.support()?, t.budget)?, fmt),
        Command::Lengths { target, sequence, memo_budget } => {
            let s = target.support()?;
            let b = parse_sequence(&s, sequence)?;
            let atoms = enumerate_atoms(&s, target.budget)?;
            let ls = length_set(&atoms, &b, *memo_budget)?;
            report::lengths_report(&s, &b, &ls, fmt)
        }
        Command::MinDelta { target, explain } => {
            let atoms = enumerate_atoms(&target.support()?, target.budget)?;
            let kernel = integer_kernel(&atoms.exponent_matrix(), atoms.len())?;
            let md = min_delta(&atoms);
            let pair = if *explain { explain_min_delta(&atoms)? } else { None };
            report::min_delta_report(&atoms, md, kernel.rank(), pair.as_ref(), fmt)
        }
        Command::DeltaObserved { target, max_len, oracle_budget } => {
            let atoms = enumerate_atoms(&target.support()?, target.budget)?;
            let observed = distances_oracle(&atoms, *max_len, *oracle_budget)?;
            report::observed_report(&atoms, *max_len, &observed, min_delta(&atoms), fmt)
        }
        Command::Classify(t) => {
            let s = t.support()?;
            let rec = classify_atoms(&enumerate_atoms(&s, t.budget)?)?;
            report::classify_report(s.group(), &rec, fmt)
        }
        Command::DeltaStar { group, symmetry, minimal, budget } => {
            let g = parse_group(group)?;
            let r = if *minimal {
                minimal_sweep(&g, *budget)?
            } else {
                let opts = SweepOptions { symmetry: *symmetry, budget: *budget, ..SweepOptions::default() };
                delta_star(&g, &opts)?
            };
            report::sweep_report(&r, fmt)
        }
        Command::MOfG { group, budget } => {
            let g = parse_group(group)?;
            report::m_of_g_report(&g, minimal_sweep(&g, *budget)?.m_of_g, fmt)
        }
        Command::TransferReduce { target, seed, samples } => {
            return transfer(target, *seed, *samples, fmt);
        }
        Command::Construct { kind } => report::construction_report(&kind.to_string(), &build_construction(kind)?, fmt),
        Command::Verify { check } => {
            let (name, v) = run_check(check)?;
            let ok = v.ok();
            return Ok((report::verification_report(name, &v, fmt), ok));
        }
    };
    Ok((out, true))
}

fn transfer(target: &Target, seed: u64, samples: usize, fmt: Format) -> Result<(String, bool)> {
    let s = target.support()?;
    let t = transfer_reduce(&s, target.budget)?;
    let atoms = enumerate_atoms(&s, target.budget)?;
    let reduced = reduced_atoms(&t);
    let md_ok = min_delta(&atoms) == min_delta(&reduced);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(samples);
    for _ in 0..samples {
        let factors = rng.random_range(1..=4);
        let b = random_product(&atoms, factors, &mut rng);
        let tb = t.apply(&b)?;
        let k = s.cross_number(&b)?;
        let lengths_ok = length_set(&atoms, &b, DEFAULT_MEMO_BUDGET)? == length_set(&reduced, &tb, DEFAULT_MEMO_BUDGET)?;
        rows.push(TransferSample {
            sequence: s.format_sequence(&b),
            image: t.reduced.format_sequence(&tb),
            cross_number: k,
            preserved: k == t.reduced.cross_number(&tb)? && lengths_ok,
        });
    }
    let ok = md_ok && rows.iter().all(|r| r.preserved);
    Ok((report::transfer_report(&t, md_ok, &rows, fmt), ok))
}

fn run_check(check: &Check) -> Result<(&'static str, Verification)> {
    Ok(match check {
        Check::MaxDeltaStar { max_order, symmetry } => {
            let opts = SweepOptions { symmetry: *symmetry, ..SweepOptions::default() };
            ("thm-1.1", verify::verify_max_delta_star_up_to(*max_order, &opts)?.0)
        }
        Check::PGroups { group } => {
            let groups = if group.is_empty() {
                verify::default_p_groups()
            } else {
                group.iter().map(|g| parse_group(g)).collect::<Result<_>>()?
            };
            ("prop-3.2", verify::verify_m_of_p_groups(&groups)?)
        }
        Check::Extremal { group, max_order } => {
            let groups = match group {
                Some(g) => vec![parse_group(g)?],
                None => verify::groups_up_to(*max_order)?,
            };
            let mut v = Verification::default();
            for g in groups {
                let r = verify::sweep_group(&g, &SweepOptions::default())?;
                v.lines.extend(verify::verify_extremal_structure(&r).lines);
            }
            ("thm-4.5", v)
        }
        Check::NonSimple { which, r } => ("remark-4.6", verify::verify_non_simple(*which, *r)?),
        Check::Basic { max_order } => ("lemma-3.1", verify::verify_basic_constructions(*max_order, &SweepOptions::default())?),
    })
}
