//! Command-line entry point: argument parsing, the command echo line, and
//! exit-code plumbing. All real work lives in [`langlift_cli::run`].

use std::path::PathBuf;
use std::process::exit;

use clap::{Parser, Subcommand};

use langlift::grammar::Mode;
use langlift_cli::run::{self, CmdResult, Opts};

/// Determinize, compare, and solve word-indexed machines, weighted
/// grammars, recursive schemes, and flat equation systems.
#[derive(Parser)]
#[command(name = "langlift", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Letter separator for words; the default splits per character.
    #[arg(long, global = true, default_value = "")]
    sep: String,

    /// Seed, reserved for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Layer bound for nondeterministic stack runs; also the work budget
    /// for a single sharp-mode grammar step.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_configs: usize,

    /// State cap for enumerate.
    #[arg(long, global = true, default_value_t = 1000)]
    max_states: usize,

    /// Word-length bound for equiv, solve, and unfold.
    #[arg(long, global = true, default_value_t = 8)]
    depth: usize,

    /// Grammar determinization to run: hat (word-indexed) or sharp
    /// (algebra-folded).
    #[arg(long, global = true, default_value = "hat")]
    mode: String,

    /// Replace a stack machine's declared start stack.
    #[arg(long, global = true)]
    initial_stack: Option<String>,

    /// Demand a closure proof instead of a depth-bounded check (nfa only).
    #[arg(long, global = true)]
    exact: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a machine accepts a word.
    Member {
        /// Machine spec file (nfa, stack, or stack-nd).
        spec: PathBuf,
        /// Word to run; `ε` names the empty word.
        word: String,
    },
    /// Print the weight a grammar assigns to a word.
    Coeff {
        /// Grammar spec file.
        spec: PathBuf,
        /// Word to weigh; `ε` names the empty word.
        word: String,
    },
    /// Compare two designated states for behavioural equivalence.
    Equiv {
        /// Left spec file.
        spec_a: PathBuf,
        /// Left state; `start` names the spec's own start state.
        state_a: String,
        /// Right spec file of the same family.
        spec_b: PathBuf,
        /// Right state; `start` names the spec's own start state.
        state_b: String,
    },
    /// List the determinized states reachable from a state.
    Enumerate {
        /// Spec file (machine or grammar).
        spec: PathBuf,
        /// Starting state; defaults to the spec's own start.
        #[arg(default_value = "start")]
        start: String,
    },
    /// Print the depth-bounded unfolding of a term over a scheme.
    Unfold {
        /// Scheme spec file (rps).
        spec: PathBuf,
        /// Root term, e.g. `φ(z)`.
        root: String,
    },
    /// Solve an equation system and print each variable's outputs.
    Solve {
        /// Equation system spec file (eqsys).
        spec: PathBuf,
        /// Spec file supplying the states named by import clauses.
        #[arg(long)]
        imports: Option<PathBuf>,
    },
    /// Report every static defect in a spec file.
    Validate {
        /// Spec file of any kind.
        spec: PathBuf,
    },
}

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let mode = match Mode::from_name(&cli.mode) {
        Some(m) => m,
        None => {
            eprintln!("error: unknown mode `{}`; use hat or sharp", cli.mode);
            exit(2);
        }
    };
    // Reserved for randomized subcommands; none consume it yet.
    let _ = cli.seed;
    let opts = Opts {
        sep: cli.sep.clone(),
        max_configs: cli.max_configs,
        max_states: cli.max_states,
        depth: cli.depth,
        mode,
        initial_stack: cli.initial_stack.clone(),
        exact: cli.exact,
    };

    // Every query echoes its own invocation first, so transcripts are
    // self-describing.
    println!("command: {}", argv.join(" "));

    let result: CmdResult = (|| match &cli.command {
        Command::Member { spec, word } => {
            let artifact = run::load(spec)?;
            run::member(&artifact, word, &opts)
        }
        Command::Coeff { spec, word } => {
            let artifact = run::load(spec)?;
            run::coeff(&artifact, word, &opts)
        }
        Command::Equiv {
            spec_a,
            state_a,
            spec_b,
            state_b,
        } => {
            let a = run::load(spec_a)?;
            let b = run::load(spec_b)?;
            run::equiv(&a, state_a, &b, state_b, &opts)
        }
        Command::Enumerate { spec, start } => {
            let artifact = run::load(spec)?;
            run::enumerate(&artifact, start, &opts)
        }
        Command::Unfold { spec, root } => {
            let artifact = run::load(spec)?;
            run::unfold(&artifact, root, &opts)
        }
        Command::Solve { spec, imports } => {
            let artifact = run::load(spec)?;
            let imported = match imports {
                Some(path) => Some(run::load(path)?),
                None => None,
            };
            run::solve(&artifact, imported.as_ref(), &opts)
        }
        Command::Validate { spec } => {
            let artifact = run::load(spec)?;
            run::validate(&artifact)
        }
    })();

    match result {
        Ok(out) => {
            for line in &out.lines {
                println!("{line}");
            }
            exit(out.code);
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            exit(f.code);
        }
    }
}
