use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use permwilf::class::{basis_of, enumerate_av, FiniteClass};
use permwilf::extension::{
    extend, potential_extensions, resume, search, stabilizer, ConstraintForm, FrontierEntry,
    SearchOptions,
};
use permwilf::peg::{grid_contains, grid_enumerate, grid_filled_contains, is_properly_pegged, parse_peg};
use permwilf::perm::parse_perm_list;
use permwilf::symmetry::{canonical_orbit_representative, orbit_size, Symmetry};
use permwilf::wedge::{decode_word, encode_wedge, wedge_bijection, LRWord};
use permwilf::wilf::WilfMetrics;
use permwilf::{Error, Perm, Result};

#[derive(Parser)]
#[command(name = "permwilf", version, about = "Relative Wilf-equivalence experiments on permutation classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Table,
    Count,
}

#[derive(Args)]
struct ClassArgs {
    /// Comma-separated basis, e.g. 213,312
    #[arg(long, value_parser = parse_perms, conflicts_with = "class_file")]
    basis: Option<PermList>,
    /// Class file in the JSON level format
    #[arg(long)]
    class_file: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    require_monotone: bool,
    #[arg(long, default_value = "target", value_parser = parse_form)]
    constraint_form: ConstraintForm,
    /// Pinned level targets, e.g. 2=3,3=5
    #[arg(long, value_parser = parse_targets)]
    targets: Option<BTreeMap<usize, usize>>,
    /// Solve the top level only, then filter on the lower ones
    #[arg(long)]
    filter_lower_levels: bool,
    #[arg(long)]
    no_symmetry_reduction: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate Av(basis) up to a size
    Enumerate {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Basis elements of a class up to its horizon
    Basis {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Wilf-sequence, or the partition of one level with --k
    Wilf {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Involvement counts of level k inside level n
    Balance {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Potential extensions of a class by one level
    Extend {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        horizon: Option<usize>,
        #[command(flatten)]
        solve: SolveArgs,
        /// Print the class extended by the extension at this index instead
        #[arg(long)]
        apply: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Depth-first search over extensions
    Search {
        #[command(flatten)]
        class: ClassArgs,
        /// Size of the starting class when built from --basis
        #[arg(long)]
        horizon: Option<usize>,
        /// Largest class size to build
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        #[arg(long, default_value_t = 100_000)]
        branch_cap: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Continue from the frontier of an earlier search report
        #[arg(long)]
        resume: Option<PathBuf>,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Grid class membership and enumeration for a peg permutation
    Grid {
        /// Peg permutation such as "2- 3- 1."
        #[arg(long, allow_hyphen_values = true)]
        peg: String,
        #[arg(long)]
        contains: Option<Perm>,
        #[arg(long)]
        enumerate: Option<usize>,
        #[arg(long)]
        filled: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// LR-word encoding of Av(213,312) and the word bijection
    Wedge {
        #[arg(long)]
        encode: Option<Perm>,
        #[arg(long)]
        decode: Option<LRWord>,
        #[arg(long, requires_all = ["alpha", "beta", "word"])]
        bijection: bool,
        #[arg(long)]
        alpha: Option<LRWord>,
        #[arg(long)]
        beta: Option<LRWord>,
        #[arg(long)]
        word: Option<LRWord>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Orbit of a set of permutations under the symmetries
    Orbit {
        #[arg(long, value_parser = parse_perms)]
        perms: PermList,
        /// Use the stabiliser of this class instead of all eight symmetries
        #[arg(long)]
        class_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Clone)]
struct PermList(Vec<Perm>);

fn parse_perms(s: &str) -> std::result::Result<PermList, String> {
    parse_perm_list(s).map(PermList).map_err(|e| e.to_string())
}

fn parse_form(s: &str) -> std::result::Result<ConstraintForm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_targets(s: &str) -> std::result::Result<BTreeMap<usize, usize>, String> {
    s.split(',')
        .map(|kv| {
            let (k, t) = kv.split_once('=').ok_or(format!("expected k=t, got {kv:?}"))?;
            let k = k.trim().parse().map_err(|_| format!("bad size in {kv:?}"))?;
            let t = t.trim().parse().map_err(|_| format!("bad target in {kv:?}"))?;
            Ok((k, t))
        })
        .collect()
}

impl ClassArgs {
    fn load(&self, size: Option<usize>) -> Result<FiniteClass> {
        match (&self.basis, &self.class_file) {
            (_, Some(path)) => {
                let class = FiniteClass::read(path)?;
                Ok(match size {
                    Some(n) if n < class.max_size() => truncate(&class, n),
                    _ => class,
                })
            }
            (Some(basis), None) => {
                let n = size.ok_or_else(|| Error::Domain("--basis needs a size".into()))?;
                enumerate_av(&basis.0, n)
            }
            (None, None) => Err(Error::Domain("give --basis or --class-file".into())),
        }
    }
}

fn truncate(class: &FiniteClass, n: usize) -> FiniteClass {
    let levels = (1..=n).map(|k| (k, class.level(k).to_vec())).collect();
    FiniteClass::from_levels(n, levels).expect("a truncated class stays closed")
}

impl SolveArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            require_monotone: self.require_monotone,
            targets: self.targets.clone().unwrap_or_default(),
            constraint_form: self.constraint_form,
            filter_lower_levels: self.filter_lower_levels,
            symmetry_reduction: !self.no_symmetry_reduction,
            ..Default::default()
        }
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn json_out(value: &impl Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Enumerate { class, max_size, format } => {
            let c = class.load(max_size)?;
            Ok(match format {
                Format::Json => c.to_json(),
                Format::Count => join(c.level_counts(), " "),
                Format::Table => join(
                    (1..=c.max_size()).map(|k| format!("{k}\t{}\t{}", c.level(k).len(), join(c.level(k), ","))),
                    "\n",
                ),
            })
        }
        Command::Basis { class, max_size, format } => {
            let c = class.load(max_size)?;
            let basis = basis_of(&c);
            Ok(match format {
                Format::Json => json_out(&json!({ "horizon": c.max_size(), "basis": basis }))?,
                Format::Count => basis.len().to_string(),
                Format::Table => join(&basis, "\n"),
            })
        }
        Command::Wilf { class, horizon, k, format } => {
            let c = class.load(horizon)?;
            let horizon = horizon.unwrap_or(c.max_size());
            let m = WilfMetrics::new(&c);
            if let Some(k) = k {
                let p = m.wilf_partition(k, horizon)?;
                return Ok(match format {
                    Format::Json => json_out(&p)?,
                    Format::Count => p.blocks.len().to_string(),
                    Format::Table => join(p.blocks.iter().map(|b| join(b, ",")), "\n"),
                });
            }
            let seq = m.wilf_sequence(horizon)?;
            let uniquely = m.is_uniquely_wilf(horizon)?;
            Ok(match format {
                Format::Json => json_out(&json!({
                    "horizon": seq.horizon,
                    "terms": seq.terms,
                    "all_ones": seq.all_ones(),
                    "uniquely_wilf": uniquely,
                }))?,
                Format::Count => join(&seq.terms, " "),
                Format::Table => join(
                    seq.terms.iter().enumerate().map(|(i, w)| format!("{}\t{w}", i + 1)),
                    "\n",
                ),
            })
        }
        Command::Balance { class, horizon, k, n, format } => {
            let c = class.load(horizon.or(Some(n)))?;
            let r = WilfMetrics::new(&c).balance_report(k, n)?;
            Ok(match format {
                Format::Json => json_out(&r)?,
                Format::Count => r.counts.values().next().map_or(0, |&c| c).to_string(),
                Format::Table => {
                    let mut lines: Vec<String> = r.counts.iter().map(|(p, c)| format!("{p}\t{c}")).collect();
                    lines.push(format!("balanced\t{}", r.balanced));
                    lines.join("\n")
                }
            })
        }
        Command::Extend { class, horizon, solve, apply, format } => {
            let c = class.load(horizon)?;
            let set = potential_extensions(&c, &solve.options())?;
            eprintln!(
                "permwilf: {} potential extensions over {} candidates",
                set.total,
                set.candidates.len()
            );
            if let Some(i) = apply {
                let ext = set.extensions.get(i).ok_or_else(|| {
                    Error::Domain(format!("no extension {i}; {} listed", set.extensions.len()))
                })?;
                return Ok(extend(&c, &ext.members)?.to_json());
            }
            Ok(match format {
                Format::Json => json_out(&set)?,
                Format::Count => set.total.to_string(),
                Format::Table => join(
                    set.extensions.iter().enumerate().map(|(i, e)| {
                        format!("{i}\t{}\t{}\t{}", e.members.count(), e.orbit_size, join(e.members.members(), ","))
                    }),
                    "\n",
                ),
            })
        }
        Command::Search {
            class,
            horizon,
            max_size,
            branch_cap,
            threads,
            resume: resume_from,
            solve,
            format,
        } => {
            let opts = SearchOptions {
                max_size,
                branch_cap,
                threads,
                ..solve.options()
            };
            let res = match resume_from {
                Some(path) => resume(&read_frontier(&path)?, &opts)?,
                None => search(&class.load(horizon)?, &opts)?,
            };
            eprintln!(
                "permwilf: {} nodes expanded, {} left on the frontier",
                res.nodes_expanded,
                res.frontier.len()
            );
            let status = serde_json::to_value(res.status)?;
            let status = status.as_str().unwrap_or_default().to_string();
            Ok(match format {
                Format::Json => json_out(&res)?,
                Format::Count => res.nodes_expanded.to_string(),
                Format::Table => {
                    let mut lines = vec![format!("status\t{status}")];
                    lines.extend(res.levels.iter().map(|l| {
                        format!("{}\t{}\t{}\t{}", l.size, l.nodes, l.extensions_found, l.expanded)
                    }));
                    lines.join("\n")
                }
            })
        }
        Command::Grid { peg, contains, enumerate, filled, format } => {
            let peg = parse_peg(&peg)?;
            if let Some(sigma) = contains {
                let member = if filled {
                    grid_filled_contains(&peg, &sigma)
                } else {
                    grid_contains(&peg, &sigma)
                };
                return Ok(match format {
                    Format::Json => json_out(&json!({
                        "peg": peg,
                        "permutation": sigma,
                        "filled": filled,
                        "member": member,
                    }))?,
                    _ => member.to_string(),
                });
            }
            if let Some(n) = enumerate {
                let members = grid_enumerate(&peg, n, filled)?;
                return Ok(match format {
                    Format::Json => json_out(&json!({ "peg": peg, "size": n, "filled": filled, "members": members }))?,
                    Format::Count => members.len().to_string(),
                    Format::Table => join(&members, "\n"),
                });
            }
            let proper = is_properly_pegged(&peg);
            Ok(match format {
                Format::Json => json_out(&json!({ "peg": peg, "properly_pegged": proper }))?,
                _ => proper.to_string(),
            })
        }
        Command::Wedge { encode, decode, bijection, alpha, beta, word, format } => {
            let (key, value) = if let Some(sigma) = encode {
                ("word", encode_wedge(&sigma)?.to_string())
            } else if let Some(w) = decode {
                ("permutation", decode_word(&w).to_string())
            } else if bijection {
                let image = wedge_bijection(&alpha.unwrap(), &beta.unwrap(), &word.unwrap())?;
                ("image", image.to_string())
            } else {
                return Err(Error::Domain("give --encode, --decode or --bijection".into()));
            };
            Ok(match format {
                Format::Json => json_out(&json!({ key: value }))?,
                _ => value,
            })
        }
        Command::Orbit { perms, class_file, format } => {
            let group = match class_file {
                Some(path) => stabilizer(&FiniteClass::read(&path)?),
                None => Symmetry::ALL.to_vec(),
            };
            let mut set = perms.0;
            set.sort();
            set.dedup();
            let images: BTreeMap<&str, Vec<Perm>> =
                group.iter().map(|g| (g.label(), g.apply_set(&set))).collect();
            let rep = canonical_orbit_representative(&set, &group);
            let size = orbit_size(&set, &group);
            Ok(match format {
                Format::Json => json_out(&json!({
                    "group": group,
                    "representative": rep,
                    "orbit_size": size,
                    "images": images,
                }))?,
                Format::Count => size.to_string(),
                Format::Table => join(images.iter().map(|(g, s)| format!("{g}\t{}", join(s, ","))), "\n"),
            })
        }
    }
}

fn read_frontier(path: &PathBuf) -> Result<Vec<FrontierEntry>> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let list = match value.get("frontier") {
        Some(f) => f.clone(),
        None => value,
    };
    Ok(serde_json::from_value(list)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("permwilf: {e}");
            ExitCode::from(1)
        }
    }
}
