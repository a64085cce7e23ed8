//! `hyperforge`: check, enumerate and construct finite (m,n)-semihyperrings.
//!
//! Every command writes JSON to stdout, one value per line. Exit codes:
//! 0 pass, 1 property failure, 2 input error, 3 resource cap.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hyperforge::axioms::{self, AxiomRegistry, AxiomVerdict, CheckOptions};
use hyperforge::congruence::{self, EquivRelation};
use hyperforge::factory::{self, SearchOptions};
use hyperforge::fuzzy::{self, FuzzyHyperStructure, FuzzySubset, UpperBound};
use hyperforge::ideals::{self, IdealRegistry};
use hyperforge::morphisms::{self, HomKind, Mapping, SearchMode};
use hyperforge::theorems::{self, Status, TheoremCaps};
use hyperforge::{io, Error, Structure};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "hyperforge", version, about = "Finite (m,n)-semihyperring toolkit")]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "HYPERFORGE_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Caps {
    /// Largest universe for sweeps over all subsets.
    #[arg(long, default_value_t = ideals::DEFAULT_ENUM_CAP)]
    subset_cap: usize,

    /// Largest number of partitions to try.
    #[arg(long, default_value_t = congruence::DEFAULT_PARTITION_CAP)]
    partition_cap: u128,

    /// Largest number of candidate maps in homomorphism searches.
    #[arg(long, default_value_t = morphisms::DEFAULT_HOM_CAP)]
    hom_cap: u128,
}

#[derive(Args)]
struct Theorems {
    /// Also check the theorem suite on the loaded structure.
    #[arg(long)]
    verify_theorems: bool,

    /// Seeded fuzzy subsets tried by the theorem suite.
    #[arg(long, default_value_t = 32)]
    fuzzy_samples: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run the axiom checks on a structure file.
    Check {
        file: PathBuf,
        /// Axioms that must hold (`!name` for must fail).
        #[arg(long, default_value = "semihyperring")]
        axioms: String,
        /// List every violation, not just the first.
        #[arg(long)]
        exhaustive: bool,
        /// Read idempotence as f(x,..,x) = {x}.
        #[arg(long)]
        strict_idempotent: bool,
        #[command(flatten)]
        theorems: Theorems,
        #[command(flatten)]
        caps: Caps,
    },
    /// List the subsets of a given ideal kind.
    Ideals {
        file: PathBuf,
        /// One of sub, left, right, two, weak.
        #[arg(long, default_value = "two")]
        kind: String,
        #[command(flatten)]
        theorems: Theorems,
        #[command(flatten)]
        caps: Caps,
    },
    /// List every congruence.
    Congruences {
        file: PathBuf,
        #[command(flatten)]
        theorems: Theorems,
        #[command(flatten)]
        caps: Caps,
    },
    /// Emit the quotient structure by a congruence.
    Quotient {
        file: PathBuf,
        /// Class id per element, as a JSON array or a file.
        #[arg(long)]
        rel: String,
        #[command(flatten)]
        theorems: Theorems,
        #[command(flatten)]
        caps: Caps,
    },
    /// The natural map onto a quotient, with its checks.
    Natmap {
        file: PathBuf,
        #[arg(long)]
        rel: String,
    },
    /// List homomorphisms between two structures.
    Homs {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        /// Only bijections with a homomorphic inverse.
        #[arg(long, conflicts_with = "first")]
        iso: bool,
        /// Only the lexicographically least map.
        #[arg(long)]
        first: bool,
        /// Require f(x) to map into f'(x) instead of onto it.
        #[arg(long)]
        inclusion: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// Fuzzy hyperideal checks and the level-set characterization.
    FuzzyCheck {
        file: PathBuf,
        /// Grades as a JSON array of "p/q" strings or a file.
        #[arg(long)]
        mu: String,
        /// Read the corollary's upper bound as 1 instead of the largest grade.
        #[arg(long)]
        bound_one: bool,
    },
    /// The level subsets at each critical level.
    Levels {
        file: PathBuf,
        #[arg(long)]
        mu: String,
    },
    /// Fuzzy homomorphisms between two fuzzy structure files.
    FuzzyHoms {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[command(flatten)]
        caps: Caps,
    },
    /// Build structures.
    #[command(subcommand)]
    Gen(Gen),
    /// Find every small structure meeting a set of axioms.
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Comma-separated axioms, `!name` to require failure.
        #[arg(long, default_value = "")]
        axioms: String,
        /// Keep every table instead of one per relabeling class.
        #[arg(long)]
        raw: bool,
        #[arg(long, default_value_t = factory::DEFAULT_SEARCH_CAP)]
        search_cap: u128,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Pairs {x, y} with an n-ary product.
    B {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Truncate the product at k-1 instead of reducing mod k.
        #[arg(long)]
        truncate: bool,
    },
    /// A semiring with its addition replaced by pairs.
    Lift {
        /// `boolean` or `residue`.
        semiring: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Seeded random tables.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Expected fraction of elements in each f entry.
        #[arg(long, default_value = "1/2")]
        density: String,
    },
    /// Seeded random fuzzy subset.
    FuzzySubset {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        k: usize,
        /// Grades are multiples of 1/denom.
        #[arg(long, default_value_t = 6)]
        denom: u64,
    },
    /// Seeded grades on the tables of a structure file.
    Fuzzy {
        file: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        denom: u64,
    },
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Pass,
    Fail,
}

struct Out {
    pretty: bool,
    lines: Vec<String>,
}

impl Out {
    fn emit<T: Serialize>(&mut self, value: &T) {
        let text = if self.pretty {
            serde_json::to_string_pretty(value)
        } else {
            serde_json::to_string(value)
        };
        self.lines.push(text.expect("reports serialize"));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("{}", json!({"error": e.to_string(), "kind": "input"}));
            return ExitCode::from(2);
        }
    }
    let mut out = Out {
        pretty: cli.pretty,
        lines: Vec::new(),
    };
    let result = run(cli.command, &mut out);
    // Partial output is still useful, e.g. verdicts before a capped theorem sweep.
    for line in &out.lines {
        println!("{line}");
    }
    match result {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            let (code, kind) = classify(&e);
            eprintln!("{}", error_json(&e, kind));
            ExitCode::from(code)
        }
    }
}

fn classify(e: &Error) -> (u8, &'static str) {
    match e {
        Error::ResourceCap { .. } => (3, "resource-cap"),
        Error::Precondition(_) | Error::Inconsistent(_) => (1, "property"),
        _ => (2, "input"),
    }
}

fn error_json(e: &Error, kind: &str) -> serde_json::Value {
    match e {
        Error::InvalidEntry { flat_index, tuple, .. } => {
            json!({"error": e.to_string(), "kind": kind, "flat_index": flat_index, "tuple": tuple})
        }
        Error::ResourceCap { needed, cap, .. } => {
            json!({"error": e.to_string(), "kind": kind, "needed": needed.to_string(), "cap": cap.to_string()})
        }
        _ => json!({"error": e.to_string(), "kind": kind}),
    }
}

fn load(path: &Path) -> hyperforge::Result<Structure> {
    io::load(path).map_err(|e| match e {
        Error::Io(io) => Error::Domain(format!("{}: {io}", path.display())),
        other => other,
    })
}

/// A JSON value given inline or as a path to a file.
fn inline_or_file<T: serde::de::DeserializeOwned>(arg: &str) -> hyperforge::Result<T> {
    let text = if arg.trim_start().starts_with(['[', '{']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Domain(format!("{arg}: {e}")))?
    };
    Ok(serde_json::from_str(&text)?)
}

fn relation(arg: &str, s: &Structure) -> hyperforge::Result<EquivRelation> {
    let labels: Vec<usize> = inline_or_file(arg)?;
    if labels.len() != s.k() {
        return Err(Error::Domain(format!(
            "relation has {} labels for a universe of {}",
            labels.len(),
            s.k()
        )));
    }
    EquivRelation::from_labels(&labels)
}

fn fuzzy_subset(arg: &str, s: &Structure) -> hyperforge::Result<FuzzySubset> {
    let mu: FuzzySubset = inline_or_file(arg)?;
    if mu.k() != s.k() {
        return Err(Error::Domain(format!("fuzzy subset has {} grades for a universe of {}", mu.k(), s.k())));
    }
    Ok(mu)
}

fn theorem_caps(t: &Theorems, caps: &Caps) -> TheoremCaps {
    TheoremCaps {
        subset_k: caps.subset_cap.min(TheoremCaps::default().subset_k),
        partitions: caps.partition_cap,
        homs: caps.hom_cap,
        fuzzy_samples: t.fuzzy_samples,
    }
}

/// Appends theorem reports when requested; fails on any counterexample.
fn maybe_theorems(s: &Structure, t: &Theorems, caps: &Caps, out: &mut Out, verdict: Verdict) -> hyperforge::Result<Verdict> {
    if !t.verify_theorems {
        return Ok(verdict);
    }
    let reports = theorems::verify_theorems(s, &theorem_caps(t, caps))?;
    let failed = reports.iter().any(|r| r.status == Status::Fail);
    for r in &reports {
        out.emit(r);
    }
    Ok(if failed { Verdict::Fail } else { verdict })
}

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

#[derive(Serialize)]
struct CheckReport {
    k: usize,
    m: usize,
    n: usize,
    requested: Vec<String>,
    verdicts: Vec<AxiomVerdict>,
    hyperadditive_identities: hyperforge::SubsetMask,
    multiplicative_identities: hyperforge::SubsetMask,
    zero: serde_json::Value,
    pass: bool,
}

fn run(command: Command, out: &mut Out) -> hyperforge::Result<Verdict> {
    match command {
        Command::Check {
            file,
            axioms: wanted,
            exhaustive,
            strict_idempotent,
            theorems,
            caps,
        } => {
            let s = load(&file)?;
            let registry = AxiomRegistry::builtin();
            let requirements = registry.parse_requirements(&wanted)?;
            let opts = CheckOptions {
                exhaustive,
                strict_idempotent,
            };
            let verdicts: Vec<AxiomVerdict> = registry.iter().map(|a| a.check(&s, &opts)).collect();
            let pass = requirements.iter().all(|r| {
                let v = verdicts.iter().find(|v| v.axiom == r.axiom.name()).expect("registry verdicts");
                v.holds == r.expected
            });
            let zero = match axioms::find_zero(&s) {
                Ok(z) => json!(z),
                Err(e) => json!({"error": e.to_string()}),
            };
            out.emit(&CheckReport {
                k: s.k(),
                m: s.m(),
                n: s.n(),
                requested: requirements
                    .iter()
                    .map(|r| format!("{}{}", if r.expected { "" } else { "!" }, r.axiom.name()))
                    .collect(),
                verdicts,
                hyperadditive_identities: axioms::find_hyperadditive_identities(&s),
                multiplicative_identities: axioms::find_multiplicative_identities(&s),
                zero,
                pass,
            });
            maybe_theorems(&s, &theorems, &caps, out, pass_if(pass))
        }
        Command::Ideals {
            file,
            kind,
            theorems,
            caps,
        } => {
            let s = load(&file)?;
            let registry = IdealRegistry::builtin();
            let predicate = registry.lookup(&kind)?;
            for report in ideals::enumerate_hyperideals(&s, predicate, caps.subset_cap)? {
                out.emit(&report);
            }
            maybe_theorems(&s, &theorems, &caps, out, Verdict::Pass)
        }
        Command::Congruences { file, theorems, caps } => {
            let s = load(&file)?;
            for rel in congruence::enumerate_congruences(&s, caps.partition_cap)? {
                out.emit(&json!({
                    "classes": rel,
                    "class_count": rel.class_count(),
                    "strongly_regular": congruence::is_strongly_regular(&s, &rel)?,
                }));
            }
            maybe_theorems(&s, &theorems, &caps, out, Verdict::Pass)
        }
        Command::Quotient {
            file,
            rel,
            theorems,
            caps,
        } => {
            let s = load(&file)?;
            let rel = relation(&rel, &s)?;
            let verdict = congruence::is_congruence(&s, &rel, &CheckOptions::default())?;
            if !verdict.holds {
                out.emit(&verdict);
                return Ok(Verdict::Fail);
            }
            out.emit(&congruence::quotient(&s, &rel)?);
            maybe_theorems(&s, &theorems, &caps, out, Verdict::Pass)
        }
        Command::Natmap { file, rel } => {
            let s = load(&file)?;
            let rel = relation(&rel, &s)?;
            let verdict = congruence::is_congruence(&s, &rel, &CheckOptions::default())?;
            if !verdict.holds {
                out.emit(&verdict);
                return Ok(Verdict::Fail);
            }
            let (q, image) = congruence::natural_map(&s, &rel)?;
            let map = Mapping::new(&s, &q, image)?;
            let onto = map.is_surjective();
            let hom = morphisms::is_homomorphism(&map)?;
            out.emit(&json!({
                "quotient": q,
                "map": map,
                "onto": onto,
                "homomorphism": hom,
            }));
            Ok(pass_if(onto && hom))
        }
        Command::Homs {
            from,
            to,
            iso,
            first,
            inclusion,
            caps,
        } => {
            let (a, b) = (load(&from)?, load(&to)?);
            let mode = if iso {
                SearchMode::Iso
            } else if first {
                SearchMode::First
            } else {
                SearchMode::All
            };
            let kind = if inclusion { HomKind::Inclusion } else { HomKind::Strict };
            for h in morphisms::enumerate_with_kind(&a, &b, mode, kind, caps.hom_cap)? {
                out.emit(&h);
            }
            Ok(Verdict::Pass)
        }
        Command::FuzzyCheck { file, mu, bound_one } => {
            let s = load(&file)?;
            let mu = fuzzy_subset(&mu, &s)?;
            let opts = CheckOptions::default();
            let bound = if bound_one { UpperBound::One } else { UpperBound::MaxGrade };
            let (fuzzy_ideal, levels) = fuzzy::level_theorem_sides(&s, &mu)?;
            let corollary = fuzzy::corollary_statements(&s, &mu, bound)?;
            let level_theorem = fuzzy_ideal == levels;
            let corollary_holds = corollary.iter().all(|&c| c == corollary[0]);
            out.emit(&json!({
                "fuzzy_sub_semihyperring": fuzzy::is_fuzzy_sub_semihyperring(&s, &mu, &opts)?,
                "fuzzy_hyperideal": fuzzy::is_fuzzy_hyperideal(&s, &mu, &opts)?,
                "fuzzy_left_hyperideal": fuzzy::is_fuzzy_left_hyperideal(&s, &mu, &opts)?,
                "fuzzy_right_hyperideal": fuzzy::is_fuzzy_right_hyperideal(&s, &mu, &opts)?,
                "levels_are_hyperideals": levels,
                "level_theorem": level_theorem,
                "corollary": corollary,
                "corollary_bound": if bound_one { "one" } else { "max-grade" },
            }));
            Ok(pass_if(level_theorem && corollary_holds))
        }
        Command::Levels { file, mu } => {
            let s = load(&file)?;
            let mu = fuzzy_subset(&mu, &s)?;
            for t in fuzzy::critical_levels(&mu) {
                let level = fuzzy::level_subset(&mu, t.value())?;
                let hyperideal = if level.is_empty() {
                    None
                } else {
                    Some(ideals::is_hyperideal(&s, level)?)
                };
                out.emit(&json!({"t": t, "level": level, "hyperideal": hyperideal}));
            }
            Ok(Verdict::Pass)
        }
        Command::FuzzyHoms { from, to, caps } => {
            let src: FuzzyHyperStructure = inline_or_file(&from.to_string_lossy())?;
            let tgt: FuzzyHyperStructure = inline_or_file(&to.to_string_lossy())?;
            if (src.m(), src.n()) != (tgt.m(), tgt.n()) {
                return Err(Error::Domain("fuzzy structures have different arities".into()));
            }
            let needed = (tgt.k() as u128).checked_pow(src.k() as u32).unwrap_or(u128::MAX);
            if needed > caps.hom_cap {
                return Err(Error::ResourceCap {
                    what: "fuzzy homomorphism search (candidate maps)".into(),
                    needed,
                    cap: caps.hom_cap,
                });
            }
            let mut all_ok = true;
            let mut image = vec![0; src.k()];
            for _ in 0..needed {
                if fuzzy::is_fuzzy_homomorphism(&src, &tgt, &image)? {
                    let crisp = fuzzy::check_fuzzy_to_crisp_hom(&src, &tgt, &image)?;
                    all_ok &= crisp;
                    out.emit(&json!({"map": image, "inclusion_homomorphism_of_associated": crisp}));
                }
                // Next map in lexicographic order.
                for slot in (0..image.len()).rev() {
                    image[slot] += 1;
                    if image[slot] < tgt.k() {
                        break;
                    }
                    image[slot] = 0;
                }
            }
            Ok(pass_if(all_ok))
        }
        Command::Gen(g) => {
            match g {
                Gen::B { k, n, truncate } => out.emit(&factory::b_construction(k, n, !truncate)?),
                Gen::Lift { semiring, k } => {
                    let (add, mul) = match semiring.as_str() {
                        "boolean" => factory::boolean_semiring(),
                        "residue" => factory::residue_semiring(k)?,
                        other => {
                            return Err(Error::UnknownName {
                                kind: "semiring",
                                name: other.to_string(),
                            })
                        }
                    };
                    out.emit(&factory::semiring_lift(&add, &mul)?.structure);
                }
                Gen::Random {
                    seed,
                    k,
                    m,
                    n,
                    density,
                } => {
                    let density = fuzzy::parse_rational(&density)?;
                    out.emit(&factory::random_structure(seed, k, m, n, density)?);
                }
                Gen::FuzzySubset { seed, k, denom } => out.emit(&factory::random_fuzzy_subset(seed, k, denom)?),
                Gen::Fuzzy { file, seed, denom } => {
                    let s = load(&file)?;
                    out.emit(&factory::random_fuzzy_structure(seed, &s, denom)?);
                }
            }
            Ok(Verdict::Pass)
        }
        Command::Search {
            k,
            m,
            n,
            axioms: wanted,
            raw,
            search_cap,
        } => {
            let registry = AxiomRegistry::builtin();
            let requirements = registry.parse_requirements(&wanted)?;
            let opts = SearchOptions {
                canonical: !raw,
                cap: search_cap,
            };
            for s in factory::search_models(k, m, n, &requirements, opts)? {
                out.emit(&s);
            }
            Ok(Verdict::Pass)
        }
    }
}
