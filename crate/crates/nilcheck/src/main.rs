//! Command-line surface: decide nilpotency classes, compute factorial-ratio
//! bounds and reflection-group invariant tables, and run the regression
//! suites.
//!
//! Exit status: 0 on success (all checks passing for `verify`), 1 on a
//! verification failure, 2 on usage errors.

use clap::{Parser, Subcommand, ValueEnum};
use nilpotency::decider::{decide, CeEntry, Condition, GroupSpec, LieFamily, NilClass};
use nilpotency::finite_group::{
    cyclic, dihedral, heisenberg_f3, symmetric4, FiniteGroupHandle, NilpotencyOutcome,
};
use nilpotency::reflection::{build_coxeter_h, build_dihedral, fundamental_invariants, GeneratorSet};
use nilpotency::samelson::{nu_p_factorial_ratio, nu_p_exponent};
use nilpotency::verify::{list as verify_list, run as verify_run, Suite};
use nilpotency::SphereType;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "nilcheck",
    version,
    about = "Homotopy nilpotency classes of p-compact groups of product-of-spheres type"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConditionArg {
    Auto,
    Satisfied,
    Unsatisfied,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BottFamily {
    Su,
    Sp,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the homotopy nilpotency class of a group at a prime
    Nil {
        /// Lie family and parameter, e.g. SU:8, Sp:3, Spin:11, E7
        #[arg(long, value_name = "FAMILY[:N]")]
        lie: Option<String>,
        /// Exotic entry, e.g. 2b:12, 23, 30
        #[arg(long, value_name = "ENTRY[:N]")]
        exotic: Option<String>,
        /// Raw sphere type as comma-separated half-degrees, e.g. 2,6,10
        #[arg(long = "type", value_name = "N1,N2,...")]
        sphere_type: Option<String>,
        /// Treat the raw type as a loop space
        #[arg(long = "loop")]
        loop_space: bool,
        /// How to resolve the triple condition for raw types
        #[arg(long, value_enum, default_value_t = ConditionArg::Auto)]
        condition: ConditionArg,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// p-part of the factorial ratio bounding a Samelson product order
    Bott {
        #[arg(value_enum)]
        family: BottFamily,
        i: u64,
        j: u64,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Fundamental invariants and P^1 tables of a reflection group
    /// (I2:n, H3 or H4)
    Invariants {
        group: String,
        #[arg(long)]
        prime: u64,
    },
    /// P^1 of one fundamental invariant, expressed in the invariants
    P1 {
        group: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        generator: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
    },
    /// Run a named regression suite (girard, i2, e7, e8 or all)
    Verify {
        suite: String,
        /// Only list check names and citations
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Nilpotency class of a finite matrix group, computed two ways
    /// (heisenberg3, s4, d8, d16, c6)
    Lemma21 {
        group: String,
        #[arg(long, default_value_t = 6)]
        k_max: u32,
    },
}

fn parse_prime(p: u64) -> Result<u64, String> {
    if nilpotency::fp::is_prime(p) {
        Ok(p)
    } else {
        Err(format!("--prime {p} is not prime"))
    }
}

fn parse_lie(s: &str) -> Result<GroupSpec, String> {
    let (family, parameter) = match s.split_once(':') {
        Some((f, n)) => {
            let n: u32 = n
                .parse()
                .map_err(|_| format!("bad parameter in group label {s}"))?;
            (f, n)
        }
        None => (s, 0),
    };
    let family = match family {
        "SU" => LieFamily::SU,
        "Sp" => LieFamily::Sp,
        "Spin" => LieFamily::Spin,
        "G2" => LieFamily::G2,
        "F4" => LieFamily::F4,
        "E6" => LieFamily::E6,
        "E7" => LieFamily::E7,
        "E8" => LieFamily::E8,
        other => return Err(format!("unknown Lie family {other}")),
    };
    Ok(GroupSpec::Lie { family, parameter })
}

fn parse_exotic(s: &str) -> Result<GroupSpec, String> {
    let entry = match s.split_once(':') {
        Some(("2b", n)) => {
            let n: u32 = n.parse().map_err(|_| format!("bad parameter in {s}"))?;
            CeEntry::TwoB(n)
        }
        None if s == "23" => CeEntry::Entry23,
        None if s == "30" => CeEntry::Entry30,
        _ => return Err(format!("unknown exotic entry {s}; expected 2b:n, 23 or 30")),
    };
    Ok(GroupSpec::Exotic { entry })
}

fn parse_type(s: &str, loop_space: bool, condition: ConditionArg) -> Result<GroupSpec, String> {
    let degs: Result<Vec<u32>, _> = s.split(',').map(|x| x.trim().parse::<u32>()).collect();
    let degs = degs.map_err(|_| format!("malformed type list {s}"))?;
    let sphere_type =
        SphereType::new(degs).ok_or_else(|| format!("type entries must be at least 2: {s}"))?;
    Ok(GroupSpec::RawType {
        sphere_type,
        loop_space,
        condition: match condition {
            ConditionArg::Auto => Condition::Auto,
            ConditionArg::Satisfied => Condition::Satisfied,
            ConditionArg::Unsatisfied => Condition::Unsatisfied,
        },
    })
}

fn build_generator_set(group: &str, p: u64) -> Result<GeneratorSet, String> {
    let (g, degrees) = match group.split_once(':') {
        Some(("I2", n)) => {
            let n: u32 = n.parse().map_err(|_| format!("bad parameter in {group}"))?;
            let g = build_dihedral(n, p).map_err(|e| e.to_string())?;
            (g, vec![2, n])
        }
        None if group == "H3" => {
            let g = build_coxeter_h(3, p).map_err(|e| e.to_string())?;
            (g, vec![2, 6, 10])
        }
        None if group == "H4" => {
            let g = build_coxeter_h(4, p).map_err(|e| e.to_string())?;
            (g, vec![2, 12, 20, 30])
        }
        _ => return Err(format!("unknown group {group}; expected I2:n, H3 or H4")),
    };
    fundamental_invariants(&g, &degrees).map_err(|e| e.to_string())
}

fn class_display(class: NilClass) -> String {
    match class {
        NilClass::Exact(c) => c.to_string(),
        NilClass::Range(a, b) => format!("{a}-{b}"),
        NilClass::Unknown => "unknown".to_string(),
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Nil {
            lie,
            exotic,
            sphere_type,
            loop_space,
            condition,
            prime,
            output,
        } => {
            let prime = parse_prime(prime)?;
            let specs = [lie.is_some(), exotic.is_some(), sphere_type.is_some()];
            if specs.iter().filter(|&&x| x).count() != 1 {
                return Err("give exactly one of --lie, --exotic, --type".into());
            }
            let spec = if let Some(s) = lie {
                parse_lie(&s)?
            } else if let Some(s) = exotic {
                parse_exotic(&s)?
            } else {
                parse_type(&sphere_type.unwrap(), loop_space, condition)?
            };
            let verdict = decide(&spec, prime).map_err(|e| e.to_string())?;
            match output {
                OutputFormat::Json => {
                    println!("{}", verdict.to_json(&spec, prime));
                }
                OutputFormat::Text => {
                    println!("group:   {spec}");
                    println!("prime:   {prime}");
                    println!("regular: {}", verdict.regular);
                    println!("class:   {}", class_display(verdict.class));
                    println!("branch:  {}", verdict.branch);
                    for w in &verdict.witnesses {
                        println!("witness: {}", serde_json::to_string(w).unwrap());
                    }
                }
            }
            Ok(0)
        }
        Command::Bott {
            family,
            i,
            j,
            prime,
            output,
        } => {
            let prime = parse_prime(prime)?;
            if i == 0 || j == 0 {
                return Err("indices must be positive".into());
            }
            let (ratio, exponent) = match family {
                BottFamily::Su => (
                    nu_p_factorial_ratio(i, j, prime),
                    nu_p_exponent(i, j, prime),
                ),
                BottFamily::Sp => (
                    nu_p_factorial_ratio(2 * i, 2 * j, prime),
                    nu_p_exponent(2 * i, 2 * j, prime),
                ),
            };
            match output {
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::json!({"p": prime, "i": i, "j": j, "p_part": ratio, "exponent": exponent})
                ),
                OutputFormat::Text => println!("{ratio}"),
            }
            Ok(0)
        }
        Command::Invariants { group, prime } => {
            let prime = parse_prime(prime)?;
            let gs = build_generator_set(&group, prime)?;
            println!("{}", gs.to_json());
            Ok(0)
        }
        Command::P1 {
            group,
            prime,
            generator,
            output,
        } => {
            let prime = parse_prime(prime)?;
            let gs = build_generator_set(&group, prime)?;
            if generator >= gs.p1_expansions().len() {
                return Err(format!(
                    "generator index {generator} out of range (rank {})",
                    gs.p1_expansions().len()
                ));
            }
            let expansion = &gs.p1_expansions()[generator];
            match output {
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string(expansion).unwrap())
                }
                OutputFormat::Text => println!(
                    "P^1 {} = {}",
                    gs.gen_context().names()[generator],
                    expansion
                ),
            }
            Ok(0)
        }
        Command::Verify {
            suite,
            list,
            output,
        } => {
            let suite: Suite = suite.parse()?;
            if list {
                for (name, citation) in verify_list(suite) {
                    println!("{name:40} {citation}");
                }
                return Ok(0);
            }
            let report = verify_run(suite);
            let pass = report.pass();
            match output {
                OutputFormat::Json => println!("{}", serde_json::to_string(&report).unwrap()),
                OutputFormat::Text => {
                    for c in &report.checks {
                        let mark = if c.pass { "pass" } else { "FAIL" };
                        println!("{mark}  {:40} {}", c.name, c.citation);
                        if !c.pass {
                            println!("      expected: {}", c.expected);
                            println!("      computed: {}", c.computed);
                        }
                    }
                    println!(
                        "{}: {} checks, {}",
                        report.suite,
                        report.checks.len(),
                        if pass { "all pass" } else { "FAILURES" }
                    );
                }
            }
            Ok(if pass { 0 } else { 1 })
        }
        Command::Lemma21 { group, k_max } => {
            let handle: FiniteGroupHandle = match group.as_str() {
                "heisenberg3" => heisenberg_f3(),
                "s4" => symmetric4(5),
                "d8" => dihedral(4, 5).map_err(|e| format!("{e:?}"))?,
                "d16" => dihedral(8, 17).map_err(|e| format!("{e:?}"))?,
                "c6" => cyclic(6, 7),
                other => {
                    return Err(format!(
                        "unknown group {other}; expected heisenberg3, s4, d8, d16 or c6"
                    ))
                }
            };
            let by_generators = handle.nilpotency_class_generators(k_max);
            let by_all = handle.nilpotency_class_all_tuples(k_max);
            let show = |o: NilpotencyOutcome| match o {
                NilpotencyOutcome::Class(c) => c.to_string(),
                NilpotencyOutcome::NotNilpotentWithin(k) => {
                    format!("not nilpotent within class {k}")
                }
            };
            println!("group order: {}", handle.order());
            println!("class (signed generator tuples): {}", show(by_generators));
            println!("class (all element tuples):      {}", show(by_all));
            if by_generators != by_all {
                return Err("the two methods disagree".into());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("NILCHECK_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
