use std::io::BufRead;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use folwb_core::dialogue::{GameSession, Move, Status, Variant};
use folwb_core::heyting::{AtomInterp, FiniteHeyting};
use folwb_core::kernel::{Calculus, Derivation, Judgment};
use folwb_core::models::{Env, FiniteKripke, FiniteModel, TreeOracle};
use folwb_core::syntax::{parse_term, print_formula, Formula};
use folwb_service::ops::{self, FormulaInput, Semantics, Translation};
use folwb_service::{ApiError, ErrorKind, GameView, ServiceConfig};

#[derive(Parser, Debug)]
#[command(name = "folwb", version, about = "First-order logic workbench")]
struct Cli {
    /// Wrap every result as {"ok", "result", "error"}.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct FormulaArg {
    /// Formula in surface syntax; read from FILE or stdin when absent.
    #[arg(long, short)]
    formula: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Parse and print a formula canonically.
    Fmt {
        #[command(flatten)]
        formula: FormulaArg,
        file: Option<PathBuf>,
    },
    /// Check a derivation (JSON) and print its end sequent.
    Check {
        #[arg(long)]
        calc: Option<CalcArg>,
        file: Option<PathBuf>,
    },
    /// Normalize an NDi derivation of the → ∀ ⊥ fragment.
    Normalize { file: Option<PathBuf> },
    /// Search for a cut-free proof.
    Prove {
        #[arg(long, short)]
        formula: String,
        /// Hypothesis; repeat for more.
        #[arg(long = "hyp")]
        hyps: Vec<String>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value = "ljt")]
        calc: CalcArg,
    },
    /// Evaluate a formula in a Tarski model, a Kripke model or a Heyting algebra.
    Eval {
        #[arg(long, short)]
        formula: String,
        #[arg(long, group = "semantics")]
        model: Option<PathBuf>,
        #[arg(long, group = "semantics")]
        kripke: Option<PathBuf>,
        #[arg(long, group = "semantics", requires = "interp")]
        algebra: Option<PathBuf>,
        #[arg(long)]
        interp: Option<PathBuf>,
        /// Values of x0, x1, … as comma-separated domain elements.
        #[arg(long, value_delimiter = ',')]
        env: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        world: usize,
    },
    /// Search for a falsifying finite model.
    Countermodel {
        #[arg(long, short)]
        formula: String,
        #[arg(long, conflicts_with = "kripke")]
        tarski: bool,
        #[arg(long)]
        kripke: bool,
        #[arg(long)]
        max_domain: Option<usize>,
        #[arg(long)]
        max_worlds: Option<usize>,
    },
    /// Apply a syntactic translation.
    Translate {
        #[arg(long, short)]
        formula: String,
        #[arg(long, group = "translation", required = true)]
        demorgan: bool,
        #[arg(long, group = "translation")]
        dn: bool,
        #[arg(long, group = "translation")]
        close: bool,
    },
    /// Encode one level of a binary tree as a propositional formula.
    WklEncode {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Play the opponent against the engine; moves are read as `ID [TERM]` lines.
    Game {
        #[arg(long)]
        variant: VariantArg,
        #[arg(long, short)]
        formula: String,
        #[arg(long)]
        proof: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        term_menu: Option<Vec<String>>,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: std::net::SocketAddr,
        #[arg(long)]
        persist_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 3600)]
        ttl_secs: u64,
        #[arg(long)]
        cors_origin: Option<String>,
        #[arg(long)]
        ui_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CalcArg {
    Ndi,
    Ndc,
    Ljt,
    Lj,
    Ljd,
}

impl From<CalcArg> for Calculus {
    fn from(c: CalcArg) -> Calculus {
        match c {
            CalcArg::Ndi => Calculus::Ndi,
            CalcArg::Ndc => Calculus::Ndc,
            CalcArg::Ljt => Calculus::Ljt,
            CalcArg::Lj => Calculus::Lj,
            CalcArg::Ljd => Calculus::Ljd,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    E,
    D,
    S,
}

pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
    /// Set by `serve`; the caller starts the service after printing.
    pub serve: Option<ServiceConfig>,
}

/// A finished command: the result plus whether it is a negative answer (exit 1).
struct Done {
    result: Value,
    text: String,
    negative: bool,
}

fn done<T: Serialize>(r: &T, text: String, negative: bool) -> Done {
    Done { result: serde_json::to_value(r).expect("results serialize"), text, negative }
}

fn pretty<T: Serialize>(r: &T) -> String {
    serde_json::to_string_pretty(r).expect("results serialize") + "\n"
}

fn usage(msg: impl Into<String>) -> ApiError {
    ApiError::bad_request("usage", msg)
}

fn read_input(file: Option<&Path>, stdin: &mut dyn BufRead) -> Result<String, ApiError> {
    match file {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            std::io::Read::read_to_string(stdin, &mut s).map_err(|e| usage(e.to_string()))?;
            Ok(s)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(file: Option<&Path>, stdin: &mut dyn BufRead) -> Result<T, ApiError> {
    let text = read_input(file, stdin)?;
    Ok(serde_json::from_str(&text)?)
}

fn text(s: &str) -> FormulaInput {
    FormulaInput::Text(s.to_string())
}

fn show_judgment(j: &Judgment) -> String {
    let ctx = |c: &[Formula]| c.iter().map(print_formula).collect::<Vec<_>>().join(", ");
    match j {
        Judgment::NdSeq { ctx: c, goal } | Judgment::LjtSeq { ctx: c, goal } | Judgment::LjSeq { ctx: c, goal } => {
            format!("{} ⊢ {}", ctx(c), print_formula(goal))
        }
        Judgment::LjtFocus { ctx: c, focus, goal } => format!("{}; {} ⊢ {}", ctx(c), print_formula(focus), print_formula(goal)),
        Judgment::LjdSeq { ctx: c, goals } => format!("{} ⊢D {}", ctx(c), serde_json::to_string(goals).expect("serialize")),
    }
}

fn execute(cmd: Cmd, stdin: &mut dyn BufRead) -> Result<Done, ApiError> {
    match cmd {
        Cmd::Fmt { formula, file } => {
            let src = match formula.formula {
                Some(f) => f,
                None => read_input(file.as_deref(), stdin)?,
            };
            let p = ops::parse(&ops::ParseRequest { formula: text(src.trim()) })?;
            let t = p.printed.clone() + "\n";
            Ok(done(&p, t, false))
        }
        Cmd::Check { calc, file } => {
            let derivation: Derivation = read_json(file.as_deref(), stdin)?;
            let r = ops::check(&ops::CheckRequest { derivation, calc: calc.map(Into::into) })?;
            let t = show_judgment(&r.end) + "\n";
            Ok(done(&r, t, false))
        }
        Cmd::Normalize { file } => {
            let derivation: Derivation = read_json(file.as_deref(), stdin)?;
            let r = ops::normalize(&ops::NormalizeRequest { derivation })?;
            Ok(done(&r.derivation, pretty(&r.derivation), false))
        }
        Cmd::Prove { formula, hyps, budget, calc } => {
            let req = ops::ProveRequest {
                formula: text(&formula),
                ctx: hyps.iter().map(|h| text(h)).collect(),
                calc: Some(calc.into()),
                budget,
            };
            let r = ops::prove(&req)?;
            match &r.derivation {
                Some(d) => Ok(done(d, pretty(d), false)),
                None => Ok(done(&Value::Null, "budget exhausted\n".into(), true)),
            }
        }
        Cmd::Eval { formula, model, kripke, algebra, interp, env, world } => {
            let env = Env::new(env, 0);
            if let Some(p) = model {
                let model: FiniteModel = read_json(Some(&p), stdin)?;
                let r = ops::eval_tarski(&ops::TarskiRequest { model, formula: text(&formula), ctx: vec![], env })?;
                Ok(done(&r, format!("{}\n", r.value), !r.value))
            } else if let Some(p) = kripke {
                let model: FiniteKripke = read_json(Some(&p), stdin)?;
                let r = ops::eval_kripke(&ops::KripkeRequest { model, formula: text(&formula), ctx: vec![], env, world })?;
                Ok(done(&r, format!("{}\n", r.value), !r.value))
            } else if let (Some(a), Some(i)) = (algebra, interp) {
                let algebra: FiniteHeyting = read_json(Some(&a), stdin)?;
                let interp: AtomInterp = read_json(Some(&i), stdin)?;
                let r = ops::eval_heyting(&ops::HeytingRequest { algebra, interp, formula: text(&formula) })?;
                Ok(done(&r, format!("{}\n", r.value), !r.top))
            } else {
                Err(usage("give one of --model, --kripke or --algebra with --interp"))
            }
        }
        Cmd::Countermodel { formula, tarski, kripke: _, max_domain, max_worlds } => {
            let mode = if tarski { Semantics::Tarski } else { Semantics::Kripke };
            let r = ops::countermodel(&ops::CountermodelRequest { formula: text(&formula), mode, max_domain, max_worlds })?;
            match &r.countermodel {
                Some(c) => Ok(done(c, pretty(c), false)),
                None => Ok(done(&Value::Null, "no countermodel within the bounds\n".into(), true)),
            }
        }
        Cmd::Translate { formula, demorgan: _, dn, close } => {
            let to = if dn {
                Translation::Dn
            } else if close {
                Translation::Close
            } else {
                Translation::Demorgan
            };
            let r = ops::translate(&ops::TranslateRequest { formula: text(&formula), to })?;
            let t = r.printed.clone() + "\n";
            Ok(done(&r, t, false))
        }
        Cmd::WklEncode { tree, depth } => {
            let tree: TreeOracle = read_json(Some(&tree), stdin)?;
            let r = ops::wkl(&ops::WklRequest { tree, depth })?;
            let t = r.printed.clone() + "\n";
            Ok(done(&r, t, false))
        }
        Cmd::Game { variant, formula, proof, term_menu } => game(variant, &formula, proof, term_menu, stdin),
        Cmd::Serve { .. } => unreachable!("handled by run"),
    }
}

fn show_move(m: &Move) -> String {
    serde_json::to_string(m).expect("moves serialize")
}

fn game(
    variant: VariantArg,
    formula: &str,
    proof: Option<PathBuf>,
    term_menu: Option<Vec<String>>,
    stdin: &mut dyn BufRead,
) -> Result<Done, ApiError> {
    let variant = match variant {
        VariantArg::E => Variant::E,
        VariantArg::D => Variant::D,
        VariantArg::S => Variant::S,
    };
    let phi = text(formula).resolve()?;
    let proof: Option<Derivation> = proof.map(|p| read_json(Some(&p), stdin)).transpose()?;
    let menu = term_menu.map(|ts| ts.iter().map(|t| parse_term(t)).collect::<Result<Vec<_>, _>>()).transpose()?;
    let mut g = GameSession::new("cli", variant, phi, proof.as_ref(), menu)?;
    let mut log = String::new();
    let mut line = String::new();
    while g.status == Status::Open {
        for m in g.legal_opponent_moves() {
            log += &format!("  [{}] {}{}\n", m.id, m.label, if m.needs_term { " (needs a term)" } else { "" });
        }
        log += "> \n";
        line.clear();
        if stdin.read_line(&mut line).map_err(|e| usage(e.to_string()))? == 0 {
            break;
        }
        let mut words = line.split_whitespace();
        let Some(id) = words.next() else { continue };
        if id == "q" {
            break;
        }
        let Ok(id) = id.parse::<usize>() else {
            log += "expected a move id\n";
            continue;
        };
        match g.play(id, words.next()) {
            Ok(turns) => {
                for t in turns {
                    log += &format!("{} {}\n", t.rule, show_move(&t.mv));
                }
            }
            Err(e) => log += &format!("{e}\n"),
        }
    }
    let won = g.status == Status::ProponentWon;
    log += if won { "proponent wins\n" } else { "game left open\n" };
    Ok(done(&GameView::of(&g), log, !won))
}

fn exit_code(e: &ApiError) -> u8 {
    match e.kind {
        ErrorKind::BadRequest => 2,
        _ => 1,
    }
}

pub fn run(args: impl IntoIterator<Item = String>, stdin: &mut dyn BufRead) -> Output {
    let args: Vec<String> = args.into_iter().collect();
    let json_mode = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if json_mode && code == 2 {
                let body = json!({"ok": false, "result": null, "error": {"code": "usage", "message": rendered.trim_end()}});
                Output { code, stdout: pretty(&body), stderr: String::new(), serve: None }
            } else if code == 2 {
                Output { code, stdout: String::new(), stderr: rendered, serve: None }
            } else {
                Output { code, stdout: rendered, stderr: String::new(), serve: None }
            };
        }
    };
    if let Cmd::Serve { addr, persist_dir, ttl_secs, cors_origin, ui_dir } = cli.cmd {
        let config = ServiceConfig { addr, persist_dir, ttl: Duration::from_secs(ttl_secs), cors_origin, ui_dir };
        return Output { code: 0, stdout: format!("listening on {addr}\n"), stderr: String::new(), serve: Some(config) };
    }
    let out = execute(cli.cmd, stdin);
    let (code, stdout, stderr) = match (out, cli.json) {
        (Ok(d), true) => (d.negative as u8, pretty(&json!({"ok": !d.negative, "result": d.result, "error": null})), String::new()),
        (Ok(d), false) => (d.negative as u8, d.text, String::new()),
        (Err(e), true) => (exit_code(&e), pretty(&json!({"ok": false, "result": null, "error": e})), String::new()),
        (Err(e), false) => {
            let rule = e.rule.as_ref().map(|r| format!(" [{r}]")).unwrap_or_default();
            (exit_code(&e), String::new(), format!("error ({}){rule}: {}\n", e.code, e.message))
        }
    };
    Output { code, stdout, stderr, serve: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], input: &str) -> Output {
        let args = std::iter::once("folwb").chain(args.iter().copied()).map(String::from);
        run(args, &mut input.as_bytes())
    }

    #[test]
    fn fmt_round_trip() {
        let o = run_str(&["fmt", "-f", "forall x.  P(x)->Q(x)"], "");
        assert_eq!((o.code, o.stdout.as_str()), (0, "forall x0. P(x0) -> Q(x0)\n"));
        let o = run_str(&["fmt"], "p /\\ q\n");
        assert_eq!(o.stdout, "p /\\ q\n");
    }

    #[test]
    fn malformed_input_is_a_usage_error() {
        let o = run_str(&["fmt", "-f", "P(x,"], "");
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("1:4"), "{}", o.stderr);
        let o = run_str(&["--json", "fmt", "-f", "P(x,"], "");
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["ok"], false);
        assert_eq!(v["error"]["code"], "parse_error");
        assert_eq!(run_str(&["frobnicate"], "").code, 2);
    }

    #[test]
    fn prove_pipes_into_check() {
        let o = run_str(&["prove", "-f", "p -> p"], "");
        assert_eq!(o.code, 0);
        let c = run_str(&["check", "--calc", "ljt"], &o.stdout);
        assert_eq!((c.code, c.stdout.as_str()), (0, " ⊢ p -> p\n"));
        assert_eq!(run_str(&["prove", "-f", "((p -> q) -> p) -> p", "--budget", "5"], "").code, 1);
    }

    #[test]
    fn game_script() {
        let o = run_str(&["game", "--variant", "e", "-f", "false -> P"], "0\n");
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert!(o.stdout.ends_with("proponent wins\n"));
        let o = run_str(&["game", "--variant", "d", "-f", "p -> q -> p"], "q\n");
        assert_eq!(o.code, 1);
    }
}
