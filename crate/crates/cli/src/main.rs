use std::io::{self, BufRead, IsTerminal, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{ArgGroup, CommandFactory, Parser};

use hahnfield::Rational;
use hahnfield_cli::batch::{evaluate_lines, expression_lines};
use hahnfield_cli::{evaluate, parse_rational, parse_statement, render, Config, Env, Format, Statement};

const AFTER_HELP: &str = "\
Expressions:
  numbers     3, -7/2, 2.5 (decimals are exact; scientific notation is rejected)
  t           the positive infinitesimal
  l1 .. l9    iterated logarithms of the infinitely large scale; ln s is written -l1
  operators   + - * / and ^ with exponents 2, 0.5 or (p/q), e.g. t^(-1/2)
  functions   v(e)  st(e)  inv(e)  root(e, q)  sub(e; h=e2)
              expand(e; h=e2; terms=n)  O(t^r)

Examples:
  hahnfield --eval 'v(t^2*t^3)'
  hahnfield --eval 'st(0-l1+5/2+t)'
  hahnfield --eval 'expand(inv(1-t); h=t^2; terms=3)'

Exit status: 0 on success, 1 if any expression fails, 2 on usage errors.";

#[derive(Parser, Debug)]
#[command(name = "hahnfield", version, about = "Exact arithmetic on truncated Hahn series", after_help = AFTER_HELP)]
#[command(group(ArgGroup::new("mode").required(true).args(["eval", "file", "repl"])))]
struct Cli {
    /// Evaluate one expression.
    #[arg(long, value_name = "EXPR")]
    eval: Option<String>,
    /// Evaluate one expression per line ('-' reads stdin); '#' starts a comment.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
    /// Truncation order for inverses, roots and other infinite expansions.
    #[arg(long, value_name = "P/Q", default_value = "8", value_parser = cutoff_arg)]
    cutoff: Rational,
    /// Default number of terms for expand().
    #[arg(long, value_name = "N", default_value_t = 20)]
    max_terms: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Read expressions interactively; `let name = expr` binds a name.
    #[arg(long)]
    repl: bool,
}

fn cutoff_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| format!("expected a rational such as 8 or 17/2 ({e})"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            // Some clap errors omit the usage line; always show it.
            let msg = e.render().to_string();
            eprint!("{msg}");
            if !msg.contains("Usage") {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            return ExitCode::from(2);
        }
    };
    let cfg = Config { cutoff: cli.cutoff.clone(), max_terms: cli.max_terms };
    let ok = if let Some(expr) = &cli.eval {
        run_lines(expr, &cfg, cli.format)
    } else if let Some(path) = &cli.file {
        let src = if path.as_os_str() == "-" {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map(|_| s)
        } else {
            std::fs::read_to_string(path)
        };
        match src {
            Ok(src) => run_lines(&src, &cfg, cli.format),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                false
            }
        }
    } else {
        repl(&cfg, cli.format)
    };
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_lines(src: &str, cfg: &Config, format: Format) -> bool {
    let lines = expression_lines(src);
    let mut ok = true;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for result in evaluate_lines(&lines, cfg, format) {
        match result {
            Ok(text) => {
                let _ = writeln!(out, "{text}");
            }
            Err(e) => {
                ok = false;
                let _ = out.flush();
                eprintln!("error: {e}");
            }
        }
    }
    ok
}

fn repl(cfg: &Config, format: Format) -> bool {
    let interactive = io::stdin().is_terminal();
    let mut env = Env::new();
    let mut ok = true;
    let prompt = || {
        if interactive {
            print!("> ");
            let _ = io::stdout().flush();
        }
    };
    prompt();
    for line in io::stdin().lock().lines() {
        let Ok(line) = line else { break };
        let text = line.split('#').next().unwrap_or("").trim();
        if !text.is_empty() {
            let result = parse_statement(text).map_err(|e| e.to_string()).and_then(|stmt| match stmt {
                Statement::Let(name, e) => evaluate(&e, cfg, &env).map(|v| {
                    env.insert(name.clone(), v);
                    None
                }),
                Statement::Expr(e) => evaluate(&e, cfg, &env).map(|v| Some(render(&v, format))),
            }
            .map_err(|e| e.to_string()));
            match result {
                Ok(Some(text)) => println!("{text}"),
                Ok(None) => {}
                Err(e) => {
                    ok = false;
                    eprintln!("error: {e}");
                }
            }
        }
        prompt();
    }
    ok
}
