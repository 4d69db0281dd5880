use std::fmt::Display;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use indicative::godel::{self, Formula, GodelNumber};
use indicative::lambda::{Rewriter, Term, DEFAULT_FUEL};
use indicative::lawvere::{self, AlphaTable, CurriedMap, FinMap, LawvereError};
use indicative::reflexive::{self, ArcTable};
use indicative::shift::{CategoricalPair, Derivation, RefArrow, Word};
use indicative::smullyan::{self, MString, MachineModel};

const SIMPLEST: &str = "objects O\nsharp ♯ : O\naxiom ε -> ε\n";

const RUSSELL: &str = "\
objects O
gen R : O -> O
gen ∼ : O -> O
sharp ♯ : O
rule ∼ ∼ => ε
axiom R -> ∼♯
";

#[derive(Parser)]
#[command(name = "indicative", version, about = "Self-reference by shifting names to their contents")]
struct Cli {
    /// Print a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include the derivation trace.
    #[arg(long, global = true)]
    trace: bool,
    /// Step budget for rewriting.
    #[arg(long, global = true, value_name = "N")]
    fuel: Option<usize>,
    /// Longest composite to enumerate.
    #[arg(long, global = true, value_name = "N", default_value_t = 2)]
    max_len: usize,
    /// Print full digit strings (up to a million digits) instead of runs.
    #[arg(long, global = true)]
    materialize: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shift a reference arrow a -> b to ♯a -> ba.
    Shift(PairArgs),
    /// Derive ♯g -> F♯g from g -> F♯.
    Srt1(PairArgs),
    /// Shift repeatedly.
    Iterate {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// The printing machine.
    Smullyan {
        #[command(subcommand)]
        action: SmullyanAction,
    },
    /// Gödel number of a formula.
    GodelEncode { formula: String },
    /// Formula of a Gödel number.
    GodelDecode { number: String },
    /// ♯g: the number of the formula with g substituted into itself.
    GodelSharp { number: String },
    /// n ∘ m: substitute the value of m into the formula numbered n.
    GodelCompose { n: String, m: String },
    /// The formula asserting its own unprintability.
    SelfRefuter,
    /// Diagonal, representation and fixed point of F: X -> [X, Z].
    Lawvere {
        /// JSON file {elements, z_elements, rows}.
        #[arg(long)]
        table: String,
        /// α as a JSON array aligned with z_elements or a label map, inline or as a file.
        #[arg(long)]
        alpha: String,
    },
    /// Negation diagonal over {0, 1, J}.
    Threeval {
        #[arg(long)]
        table: String,
    },
    /// Terms with reflexive definitions.
    Lambda {
        #[command(subcommand)]
        action: LambdaAction,
    },
    /// Categories from knot and link arc tables.
    Reflexive {
        #[command(subcommand)]
        action: ReflexiveAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Base {
    Simplest,
    Russell,
}

#[derive(Args)]
struct PairArgs {
    /// Built-in categorical pair.
    #[arg(long, value_enum, conflicts_with = "pair")]
    base: Option<Base>,
    /// Categorical pair file.
    #[arg(long)]
    pair: Option<String>,
    /// Reference arrow "a -> b"; defaults to every axiom of the pair.
    #[arg(long)]
    arrow: Option<String>,
}

#[derive(Subcommand)]
enum SmullyanAction {
    Classify { string: String },
    Arrow { string: String },
    Semantics {
        string: String,
        /// One printable string per line.
        #[arg(long)]
        model: String,
    },
    Violations {
        #[arg(long)]
        model: String,
    },
    Report,
}

#[derive(Subcommand)]
enum LambdaAction {
    /// Name a body by a reflexive definition, e.g. "g x = F(xx)".
    Define { definition: String },
    /// Build gg with gx = F(xx) and check gg => F(gg).
    Fixpoint {
        f: String,
        /// Extra definitions "NAME VAR = BODY".
        #[arg(long = "def")]
        defs: Vec<String>,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Normal-order rewriting.
    Reduce {
        term: String,
        #[arg(long = "def")]
        defs: Vec<String>,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Diagram {
    Trefoil,
    Link,
}

#[derive(Args)]
struct DiagramArgs {
    /// Arc table file, one "name: dom -> cod" per line.
    #[arg(long, conflicts_with = "diagram")]
    table: Option<String>,
    #[arg(long, value_enum)]
    diagram: Option<Diagram>,
}

#[derive(Subcommand)]
enum ReflexiveAction {
    Build(DiagramArgs),
    Check(DiagramArgs),
    Enumerate(DiagramArgs),
}

/// A domain failure with a stable code.
struct Failure {
    code: String,
    message: String,
}

impl Failure {
    fn new(code: &str, message: impl Display) -> Self {
        Failure {
            code: code.to_string(),
            message: message.to_string(),
        }
    }
}

/// The variant name of an error enum, taken from its `Debug` form.
fn fail<E: std::fmt::Debug + Display>(e: E) -> Failure {
    let debug = format!("{e:?}");
    let code = debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or("Error")
        .to_string();
    Failure { code, message: e.to_string() }
}

struct Output {
    text: String,
    result: Value,
    trace: Option<Value>,
}

impl Output {
    fn new(text: impl Into<String>, result: Value) -> Self {
        Output {
            text: text.into(),
            result,
            trace: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                let mut env = json!({"status": "ok", "result": out.result});
                if let Some(trace) = out.trace.filter(|_| cli.trace) {
                    env["trace"] = trace;
                }
                println!("{env}");
            } else {
                print!("{}", out.text);
                if !out.text.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            if cli.json {
                println!(
                    "{}",
                    json!({"status": "error", "error": {"code": f.code, "message": f.message}})
                );
            } else {
                eprintln!("error[{}]: {}", f.code, f.message);
            }
            ExitCode::from(1)
        }
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new("Io", format!("{path}: {e}")))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Shift(args) => shift(cli, args),
        Command::Srt1(args) => srt1(cli, args),
        Command::Iterate { pair, n } => iterate(cli, pair, *n),
        Command::Smullyan { action } => smullyan_cmd(action),
        Command::GodelEncode { formula } => {
            let f = Formula::parse_compact(formula).map_err(fail)?;
            number_output(cli, &godel::encode(&f).map_err(fail)?)
        }
        Command::GodelDecode { number } => {
            let f = godel::decode(&parse_number(number)?).map_err(fail)?;
            let text = if cli.materialize {
                f.to_ascii().map_err(fail)?
            } else {
                f.to_string()
            };
            Ok(Output::new(text.clone(), json!({"formula": text})))
        }
        Command::GodelSharp { number } => {
            number_output(cli, &godel::sharp_decimal(&parse_number(number)?).map_err(fail)?)
        }
        Command::GodelCompose { n, m } => {
            let (n, m) = (parse_number(n)?, parse_number(m)?);
            number_output(cli, &godel::compose_numbers(&n, &m).map_err(fail)?)
        }
        Command::SelfRefuter => self_refuter(),
        Command::Lawvere { table, alpha } => lawvere_cmd(table, alpha),
        Command::Threeval { table } => threeval(table),
        Command::Lambda { action } => lambda_cmd(cli, action),
        Command::Reflexive { action } => reflexive_cmd(cli, action),
    }
}

fn load_pair(cli: &Cli, args: &PairArgs) -> Result<(CategoricalPair, Vec<RefArrow>), Failure> {
    let text = match (&args.pair, args.base) {
        (Some(path), _) => read(path)?,
        (None, Some(Base::Russell)) => RUSSELL.to_string(),
        (None, _) => SIMPLEST.to_string(),
    };
    let mut pair: CategoricalPair = text.parse().map_err(fail)?;
    if let Some(budget) = cli.fuel {
        pair.base.set_budget(budget);
    }
    let arrows = match &args.arrow {
        Some(a) => vec![pair.parse_arrow(a).map_err(fail)?],
        None if pair.arrows.is_empty() => return Err(Failure::new("NoArrow", "pair has no axioms; pass --arrow")),
        None => pair.arrows.clone(),
    };
    Ok((pair, arrows))
}

fn arrow_json(a: &RefArrow) -> Value {
    json!({"src": a.src.to_string(), "dst": a.dst.to_string()})
}

fn trace_json(d: &Derivation) -> Value {
    serde_json::to_value(d.records()).expect("records serialize")
}

fn shift(cli: &Cli, args: &PairArgs) -> Result<Output, Failure> {
    let (pair, arrows) = load_pair(cli, args)?;
    let mut text = String::new();
    let mut results = Vec::new();
    let mut trace = Vec::new();
    for a in &arrows {
        let step = pair.shift_step(a).map_err(fail)?;
        text += &format!("{}\n", step.arrow);
        results.push(arrow_json(&step.arrow));
        let d = Derivation {
            steps: vec![
                indicative::shift::Step {
                    rule: indicative::shift::Inference::Axiom,
                    arrow: a.clone(),
                    note: None,
                },
                step,
            ],
        };
        if cli.trace {
            text += &d.to_string();
        }
        trace.push(trace_json(&d));
    }
    let mut out = Output::new(text, json!({"arrows": results}));
    out.trace = Some(Value::Array(trace));
    Ok(out)
}

fn srt1(cli: &Cli, args: &PairArgs) -> Result<Output, Failure> {
    let (pair, arrows) = load_pair(cli, args)?;
    let mut text = String::new();
    let mut results = Vec::new();
    let mut trace = Vec::new();
    for a in &arrows {
        let d = pair.srt1(a).map_err(fail)?;
        let end = d.conclusion().expect("two steps");
        text += &format!("{end}\n");
        if cli.trace {
            text += &d.to_string();
        }
        results.push(arrow_json(end));
        trace.push(trace_json(&d));
    }
    let mut out = Output::new(text, json!({"arrows": results}));
    out.trace = Some(Value::Array(trace));
    Ok(out)
}

fn iterate(cli: &Cli, args: &PairArgs, n: usize) -> Result<Output, Failure> {
    let (pair, arrows) = load_pair(cli, args)?;
    let start = &arrows[0];
    let seq = pair.iterate_shift(start, n);
    let mut text: String = seq.arrows.iter().map(|a| format!("{a}\n")).collect();
    if let Some(stop) = &seq.stop {
        text += &format!("stopped: {stop}\n");
    }
    if cli.trace {
        text += &seq.trace.to_string();
    }
    let stop = seq.stop.as_ref().map(|e| {
        let f = fail(e);
        json!({"code": f.code, "message": f.message})
    });
    let mut out = Output::new(
        text,
        json!({
            "start": arrow_json(start),
            "arrows": seq.arrows.iter().map(arrow_json).collect::<Vec<_>>(),
            "stop": stop,
        }),
    );
    out.trace = Some(trace_json(&seq.trace));
    Ok(out)
}

fn mstring(s: &str) -> Result<MString, Failure> {
    s.parse().map_err(fail)
}

fn model(path: &str) -> Result<MachineModel, Failure> {
    MachineModel::parse_lines(&read(path)?).map_err(fail)
}

fn smullyan_cmd(action: &SmullyanAction) -> Result<Output, Failure> {
    Ok(match action {
        SmullyanAction::Classify { string } => {
            let c = smullyan::classify(&mstring(string)?);
            Output::new(c.to_string(), json!({"classification": c.to_string()}))
        }
        SmullyanAction::Arrow { string } => match smullyan::reference_arrow(&mstring(string)?) {
            Some(a) => Output::new(a.to_string(), json!({"src": a.src.to_string(), "dst": a.dst.to_string()})),
            None => Output::new("not interpretable", json!(null)),
        },
        SmullyanAction::Semantics { string, model: path } => {
            let t = smullyan::semantics(&mstring(string)?, &model(path)?);
            Output::new(t.to_string(), json!({"truth": t.to_string()}))
        }
        SmullyanAction::Violations { model: path } => {
            let m = model(path)?;
            let v: Vec<String> = smullyan::truthfulness_violations(&m).iter().map(ToString::to_string).collect();
            let text = if v.is_empty() {
                "truthful".to_string()
            } else {
                v.join("\n")
            };
            Output::new(text, json!({"truthful": v.is_empty(), "violations": v}))
        }
        SmullyanAction::Report => {
            let r = smullyan::goedel_miniature_report();
            let lines: Vec<Value> = r
                .lines
                .iter()
                .map(|l| json!({"claim": l.claim, "because": l.because}))
                .collect();
            Output::new(
                r.to_string(),
                json!({"sentence": r.sentence.to_string(), "lines": lines}),
            )
        }
    })
}

fn parse_number(s: &str) -> Result<GodelNumber, Failure> {
    s.parse().map_err(fail)
}

fn number_output(cli: &Cli, g: &GodelNumber) -> Result<Output, Failure> {
    let text = if cli.materialize {
        g.to_decimal_string().map_err(fail)?
    } else {
        g.to_string()
    };
    Ok(Output::new(
        text.clone(),
        json!({"number": text, "digits": g.digit_length().to_string()}),
    ))
}

fn self_refuter() -> Result<Output, Failure> {
    let r = godel::build_self_refuter();
    let text = format!(
        "template {} = {}\nnumber   {}\nformula  {}\nverified {}\n",
        r.template, r.template_number, r.number, r.formula, r.verified
    );
    Ok(Output::new(
        text,
        json!({
            "template": r.template.to_string(),
            "template_number": r.template_number.to_string(),
            "number": r.number.to_string(),
            "formula": r.formula.to_string(),
            "verified": r.verified,
        }),
    ))
}

fn curried(path: &str) -> Result<CurriedMap, Failure> {
    CurriedMap::from_json(&read(path)?).map_err(fail)
}

fn values(m: &FinMap) -> Vec<String> {
    m.values().into_iter().map(String::from).collect()
}

fn lawvere_cmd(table: &str, alpha: &str) -> Result<Output, Failure> {
    let f = curried(table)?;
    let alpha_text = if alpha.trim_start().starts_with(['[', '{']) {
        alpha.to_string()
    } else {
        read(alpha)?
    };
    let alpha = AlphaTable::from_json(&alpha_text)
        .and_then(|a| a.to_map(f.cod_base()))
        .map_err(fail)?;
    let diagonal = lawvere::diagonal_via_delta(&f, &alpha);
    let rep = lawvere::find_representation(&f, &diagonal).map(|a| f.dom().label(a).to_string());
    let surjective = lawvere::is_surjective(&f).ok();
    let (fixed, text_fixed) = match lawvere::lawvere_fixed_point(&f, &alpha) {
        Ok(p) => {
            let value = f.cod_base().label(p.value);
            let witness = f.dom().label(p.witness);
            (
                json!({"value": value, "witness": witness}),
                format!("fixed point {value} = F({witness})({witness})"),
            )
        }
        Err(LawvereError::NotSurjective) => (json!(null), "not surjective: the diagonal has no representation".into()),
        Err(e) => return Err(fail(e)),
    };
    let text = format!(
        "diagonal {}\nrepresentation {}\n{}\n",
        diagonal,
        rep.as_deref().unwrap_or("none"),
        text_fixed
    );
    Ok(Output::new(
        text,
        json!({
            "diagonal": values(&diagonal),
            "representation": rep,
            "fixed_point": fixed,
            "surjective": surjective,
        }),
    ))
}

fn threeval(table: &str) -> Result<Output, Failure> {
    let f = curried(table)?;
    let r = lawvere::three_valued_diagonal_analysis(&f).map_err(fail)?;
    let reps: Vec<&str> = r.representations.iter().map(|&z| f.dom().label(z)).collect();
    let diag_values: Vec<&str> = r.diagonal_values.iter().map(|v| v.label()).collect();
    let text = format!(
        "diagonal {}\nrepresentations {}\ndiagonal values {}\nall J {}\n",
        r.diagonal,
        if reps.is_empty() { "none".into() } else { reps.join(" ") },
        if diag_values.is_empty() { "none".into() } else { diag_values.join(" ") },
        r.all_j()
    );
    Ok(Output::new(
        text,
        json!({
            "diagonal": values(&r.diagonal),
            "representations": reps,
            "diagonal_values": diag_values,
            "all_j": r.all_j(),
        }),
    ))
}

/// `NAME VAR = BODY`, e.g. `g x = F(xx)` or `Ix = x`.
fn parse_definition(text: &str) -> Result<(String, String, Term), Failure> {
    let bad = || Failure::new("Parse", format!("expected \"NAME VAR = BODY\", got {text:?}"));
    let (lhs, rhs) = text.split_once('=').ok_or_else(bad)?;
    let head: Term = lhs.parse().map_err(fail)?;
    let Term::Apply(name, var) = head else {
        return Err(bad());
    };
    let (Term::Atom(name), Term::Atom(var)) = (*name, *var) else {
        return Err(bad());
    };
    let body = Term::parse_body(rhs, &var).map_err(fail)?;
    Ok((name, var, body))
}

fn rewriter(cli: &Cli, defs: &[String]) -> Result<Rewriter, Failure> {
    let mut r = Rewriter::new(cli.fuel.unwrap_or(DEFAULT_FUEL));
    for d in defs {
        let (name, var, body) = parse_definition(d)?;
        r.define(&name, &var, body).map_err(fail)?;
    }
    Ok(r)
}

fn lambda_cmd(cli: &Cli, action: &LambdaAction) -> Result<Output, Failure> {
    Ok(match action {
        LambdaAction::Define { definition } => {
            let r = rewriter(cli, std::slice::from_ref(definition))?;
            let def = r.defs().next().expect("one definition");
            Output::new(def.to_string(), json!({"rule": def.to_string()}))
        }
        LambdaAction::Fixpoint { f, defs, steps } => {
            let mut r = rewriter(cli, defs)?;
            let f: Term = f.parse().map_err(fail)?;
            let fp = r.fixed_point(&f);
            let g = r.defs().find(|d| Term::apply(Term::atom(&d.name), Term::atom(&d.name)) == fp);
            let rule = g.map(ToString::to_string).unwrap_or_default();
            let out = r.reduce(&fp, *steps);
            let holds = r.reduce(&fp, 1).term == Term::apply(f.clone(), fp.clone());
            let text = format!(
                "{rule}\nfixed point {fp}\n{fp} => {} ({} step{})\nchecked {holds}\n",
                out.term,
                out.steps_used,
                if out.steps_used == 1 { "" } else { "s" }
            );
            Output::new(
                text,
                json!({
                    "rule": rule,
                    "fixed_point": fp.to_string(),
                    "reduct": out.term.to_string(),
                    "steps_used": out.steps_used,
                    "checked": holds,
                }),
            )
        }
        LambdaAction::Reduce { term, defs, steps } => {
            let r = rewriter(cli, defs)?;
            let t: Term = term.parse().map_err(fail)?;
            let out = r.reduce(&t, *steps);
            let mut text = format!("{}\n", out.term);
            if cli.trace {
                text += &format!("steps {} exhausted {}\n", out.steps_used, out.exhausted);
            }
            Output::new(
                text,
                json!({
                    "term": out.term.to_string(),
                    "steps_used": out.steps_used,
                    "exhausted": out.exhausted,
                }),
            )
        }
    })
}

fn load_diagram(args: &DiagramArgs) -> Result<ArcTable, Failure> {
    match (&args.table, args.diagram) {
        (Some(path), _) => read(path)?.parse().map_err(fail),
        (None, Some(Diagram::Link)) => Ok(ArcTable::link()),
        (None, Some(Diagram::Trefoil)) => Ok(ArcTable::trefoil()),
        (None, None) => Err(Failure::new("NoDiagram", "pass --table FILE or --diagram trefoil|link")),
    }
}

fn reflexive_cmd(cli: &Cli, action: &ReflexiveAction) -> Result<Output, Failure> {
    let (ReflexiveAction::Build(args) | ReflexiveAction::Check(args) | ReflexiveAction::Enumerate(args)) = action;
    let table = load_diagram(args)?;
    let d = reflexive::build(&table).map_err(fail)?;
    let cat = d.category();
    Ok(match action {
        ReflexiveAction::Build(_) => {
            let gens: Vec<Value> = table
                .arcs()
                .iter()
                .map(|a| json!({"name": a.name, "dom": a.dom, "cod": a.cod}))
                .collect();
            let text = format!(
                "{} objects, {} generators\n{table}",
                cat.objects().len(),
                table.arcs().len()
            );
            Output::new(text, json!({"objects": d.arc_names(), "generators": gens}))
        }
        ReflexiveAction::Check(_) => {
            let ok = reflexive::is_reflexive(cat);
            Output::new(
                if ok { "reflexive" } else { "not reflexive" },
                json!({"reflexive": ok}),
            )
        }
        ReflexiveAction::Enumerate(_) => {
            let words: Vec<Word> = reflexive::enumerate_composites(cat, cli.max_len);
            let spelled: Vec<String> = words.iter().map(reflexive::spelled).collect();
            Output::new(spelled.join("\n"), json!({"max_len": cli.max_len, "composites": spelled}))
        }
    })
}
