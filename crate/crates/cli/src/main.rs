use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use surgerykit::alexander::{alexander_polynomial, alexander_raw, AlexanderError};
use surgerykit::corpus::{Corpus, CorpusError};
use surgerykit::forms::{name_standard, stably_equivalent, FormError, IntForm, ManifoldName};
use surgerykit::groups::{
    binary_icosahedral, binary_icosahedral_table, coset_enumerate, GroupError, GroupTable, Presentation,
    BINARY_ICOSAHEDRAL_CLASS_WORDS, DEFAULT_MAX_COSETS,
};
use surgerykit::laurent::{LaurentError, LaurentPoly};
use surgerykit::linkdiag::{apply_three_strand_twist, delta_class, parse_link, LinkDiagram, LinkError};
use surgerykit::surgery::{
    classify_link_surgery, knot_surgery_sw, link_surgery_sw, scharlemann_table, scharlemann_verdict, SWValue,
    SurgeryError,
};
use thiserror::Error;

const MAX_COSETS_VAR: &str = "SURGERYKIT_MAX_COSETS";

#[derive(Debug, Error)]
enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("resource limit: {0}")]
    Resource(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Resource(_) => 4,
        }
    }
}

impl From<LinkError> for CliError {
    fn from(e: LinkError) -> Self {
        match e {
            LinkError::InvalidDiagram(_) => CliError::Invariant(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<LaurentError> for CliError {
    fn from(e: LaurentError) -> Self {
        match e {
            LaurentError::Syntax { .. } | LaurentError::UnknownVariable(_) => CliError::Parse(e.to_string()),
            _ => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<AlexanderError> for CliError {
    fn from(e: AlexanderError) -> Self {
        match e {
            AlexanderError::Laurent(l) => l.into(),
            _ => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::EnumerationLimitExceeded(_) => CliError::Resource(e.to_string()),
            GroupError::UnknownElement(_) => CliError::Invariant(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<FormError> for CliError {
    fn from(e: FormError) -> Self {
        match e {
            FormError::DefiniteNotSupported(_) | FormError::Overflow => CliError::Resource(e.to_string()),
            FormError::BadName(_) | FormError::NotSquare | FormError::NotSymmetric => CliError::Parse(e.to_string()),
            _ => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<SurgeryError> for CliError {
    fn from(e: SurgeryError) -> Self {
        match e {
            SurgeryError::Group(g) => g.into(),
            SurgeryError::Form(f) => f.into(),
            SurgeryError::VariableMismatch(l) => l.into(),
            SurgeryError::BadEpsilon(_) => CliError::Parse(e.to_string()),
            _ => CliError::Invariant(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Surgery on S2xS2 along links: classification, Alexander polynomials,
/// group tables and intersection forms.
#[derive(Parser)]
#[command(name = "surgerykit", version)]
struct Cli {
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Link corpus to resolve names against instead of the bundled one.
    #[arg(long, global = true, value_name = "PATH")]
    corpus: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LinkArg {
    /// Corpus name, `BR[s: ...]` braid or `PD[X(...), ...]` code.
    link: String,
}

#[derive(Subcommand)]
enum Command {
    /// Name the manifold obtained by surgery along a link.
    Classify(LinkArg),
    /// Alexander polynomial via Fox calculus.
    Alexander {
        #[command(flatten)]
        link: LinkArg,
        /// Emit the gcd of maximal minors before normalization.
        #[arg(long)]
        raw: bool,
    },
    /// Linking matrix.
    Linking(LinkArg),
    /// Linking parity vector and its delta-move class.
    Parity(LinkArg),
    /// Insert a full twist on three strands and check the invariants survive.
    /// Braids on fewer than three strands are stabilized first.
    Twist {
        #[command(flatten)]
        link: LinkArg,
        /// Letter index the twist is inserted before.
        #[arg(long, default_value_t = 0)]
        position: usize,
        /// Lowest of the three strands, 1-based.
        #[arg(long, default_value_t = 1)]
        strand: usize,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        sign: i8,
    },
    /// Queries on a finitely presented group (the binary icosahedral group by default).
    Group {
        /// Custom presentation such as `< a | a^5 >`.
        #[arg(long)]
        presentation: Option<String>,
        #[command(subcommand)]
        query: GroupQuery,
    },
    /// Unimodular intersection forms given as `{"n": k, "rows": [...]}`.
    Forms {
        #[command(subcommand)]
        query: FormsQuery,
    },
    /// Seiberg-Witten product formulas.
    Sw {
        #[command(subcommand)]
        query: SwQuery,
    },
    /// Status of surgery on the (-1)-surgered trefoil times S1 along a loop.
    Scharlemann {
        /// Framing twist, 0 or 1.
        #[arg(required_unless_present = "table")]
        epsilon: Option<u8>,
        /// Loop as a word in x, y.
        #[arg(required_unless_present = "table")]
        word: Option<String>,
        /// Print every class for both framings.
        #[arg(long, conflicts_with_all = ["epsilon", "word"])]
        table: bool,
    },
}

#[derive(Subcommand)]
enum GroupQuery {
    Order,
    Classes,
    Conjugate { w1: String, w2: String },
    OrderOf { word: String },
    Normal { word: String },
}

#[derive(Subcommand)]
enum FormsQuery {
    /// Rank, signature, parity, definiteness.
    Invariants { matrix: String },
    /// Standard connected-sum name of a unimodular form.
    Name { matrix: String },
    /// Whether two forms are isometric.
    Equivalent { left: String, right: String },
    /// Slide handle `j` over handle `i` (0-based).
    Slide {
        matrix: String,
        i: usize,
        j: usize,
        #[arg(default_value_t = 1, allow_negative_numbers = true)]
        sign: i8,
    },
    /// Model form of a manifold name.
    Model { name: String },
}

#[derive(Subcommand)]
enum SwQuery {
    /// Multiply a base invariant by the Alexander polynomial of a knot.
    Knot {
        #[command(flatten)]
        knot: LinkArg,
        /// Base invariant in `t`.
        #[arg(long, default_value = "1")]
        base: String,
    },
    /// Multiply the multivariable Alexander polynomial by one factor per component.
    Link {
        #[command(flatten)]
        link: LinkArg,
        /// Factor in `t`, one per component, in order.
        #[arg(long = "factor", required = true)]
        factors: Vec<String>,
    },
}

struct Context {
    corpus: Option<Corpus>,
}

impl Context {
    fn new(path: Option<&str>) -> Result<Self> {
        let corpus = match path {
            None => None,
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::Parse(format!("{p}: {e}")))?;
                Some(Corpus::from_json(&text)?)
            }
        };
        Ok(Context { corpus })
    }

    fn corpus(&self) -> &Corpus {
        self.corpus.as_ref().unwrap_or_else(|| Corpus::embedded())
    }

    fn link(&self, input: &str) -> Result<LinkDiagram> {
        let input = input.trim();
        if input.starts_with("BR[") || input.starts_with("PD[") {
            return Ok(parse_link(input)?);
        }
        Ok(self.corpus().get(input)?.diagram()?)
    }
}

fn read_matrix(arg: &str) -> Result<IntForm> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Parse(e.to_string()))?;
        s
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{path}: {e}")))?
    } else {
        arg.to_string()
    };
    IntForm::from_json(&text).map_err(|e| CliError::Parse(e.to_string()))
}

fn form_value(q: &IntForm) -> Value {
    serde_json::to_value(q).expect("form serializes")
}

fn max_cosets() -> Result<Option<usize>> {
    match std::env::var(MAX_COSETS_VAR) {
        Err(_) => Ok(None),
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Parse(format!("{MAX_COSETS_VAR}={v} is not a count"))),
    }
}

enum Table {
    Cached(&'static GroupTable),
    Owned(GroupTable),
}

impl Table {
    fn get(&self) -> &GroupTable {
        match self {
            Table::Cached(t) => t,
            Table::Owned(t) => t,
        }
    }
}

fn group_table(presentation: Option<&str>) -> Result<Table> {
    let limit = max_cosets()?;
    match (presentation, limit) {
        (None, None) => Ok(Table::Cached(binary_icosahedral_table())),
        (None, Some(max)) => Ok(Table::Owned(coset_enumerate(&binary_icosahedral(), max)?)),
        (Some(text), limit) => {
            let p = Presentation::parse(text)?;
            Ok(Table::Owned(coset_enumerate(&p, limit.unwrap_or(DEFAULT_MAX_COSETS))?))
        }
    }
}

fn class_rows(g: &GroupTable, builtin: bool) -> Result<Vec<Value>> {
    let row = |label: String, e: usize| -> Result<Value> {
        let class = &g.conjugacy_classes()[g.class_index(e)?];
        Ok(json!({
            "representative": label,
            "order": g.element_order(e)?,
            "size": class.len(),
            "normally_generates": g.normally_generates(e)?,
        }))
    };
    if builtin {
        BINARY_ICOSAHEDRAL_CLASS_WORDS
            .iter()
            .map(|(_, w)| row(w.to_string(), g.evaluate(w)?))
            .collect()
    } else {
        g.conjugacy_classes()
            .iter()
            .map(|class| {
                let e = class[0];
                row(g.word_of(e).display(g.generators()).to_string(), e)
            })
            .collect()
    }
}

fn run_group(presentation: Option<&str>, query: &GroupQuery) -> Result<Value> {
    let table = group_table(presentation)?;
    let g = table.get();
    let word = |t: &str| g.presentation().word(t).map_err(CliError::from);
    Ok(match query {
        GroupQuery::Order => json!({ "order": g.order() }),
        GroupQuery::Classes => {
            let classes = class_rows(g, presentation.is_none())?;
            json!({ "order": g.order(), "count": classes.len(), "classes": classes })
        }
        GroupQuery::Conjugate { w1, w2 } => json!({ "conjugate": g.is_conjugate(&word(w1)?, &word(w2)?)? }),
        GroupQuery::OrderOf { word: w } => json!({ "order": g.element_order(g.evaluate_word(&word(w)?)?)? }),
        GroupQuery::Normal { word: w } => {
            let e = g.evaluate_word(&word(w)?)?;
            json!({
                "normal_closure": g.normal_closure_size(e)?,
                "normally_generates": g.normally_generates(e)?,
            })
        }
    })
}

fn run_forms(query: &FormsQuery) -> Result<Value> {
    Ok(match query {
        FormsQuery::Invariants { matrix } => {
            let q = read_matrix(matrix)?;
            let mut v = serde_json::to_value(q.invariants()).expect("invariants serialize");
            v["determinant"] = Value::String(q.determinant().to_string());
            v
        }
        FormsQuery::Name { matrix } => json!({ "manifold": name_standard(&read_matrix(matrix)?)? }),
        FormsQuery::Equivalent { left, right } => {
            json!({ "equivalent": stably_equivalent(&read_matrix(left)?, &read_matrix(right)?)? })
        }
        FormsQuery::Slide { matrix, i, j, sign } => {
            let q = read_matrix(matrix)?;
            let slid = q.handle_slide(*i, *j, *sign)?;
            if slid.invariants() != q.invariants() {
                return Err(CliError::Invariant("handle slide changed the invariants".into()));
            }
            form_value(&slid)
        }
        FormsQuery::Model { name } => form_value(&name.parse::<ManifoldName>()?.model_form()),
    })
}

fn run_sw(ctx: &Context, query: &SwQuery) -> Result<Value> {
    Ok(match query {
        SwQuery::Knot { knot, base } => {
            let d = ctx.link(&knot.link)?;
            if d.num_components() != 1 {
                return Err(SurgeryError::NotAKnot(d.num_components()).into());
            }
            let delta = alexander_polynomial(&d)?;
            let base = SWValue(LaurentPoly::parse(base, &["t"])?);
            let sw = knot_surgery_sw(&base, &delta)?;
            json!({ "alexander": delta.to_string(), "sw": sw.to_string(), "zero": sw.is_zero() })
        }
        SwQuery::Link { link, factors } => {
            let d = ctx.link(&link.link)?;
            let delta = alexander_polynomial(&d)?;
            let factors = factors
                .iter()
                .map(|f| LaurentPoly::parse(f, &["t"]).map(SWValue))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let sw = link_surgery_sw(&delta, &factors)?;
            json!({ "alexander": delta.to_string(), "sw": sw.to_string(), "zero": sw.is_zero() })
        }
    })
}

fn run(cli: &Cli) -> Result<Value> {
    let ctx = Context::new(cli.corpus.as_deref())?;
    Ok(match &cli.command {
        Command::Classify(l) => {
            let d = ctx.link(&l.link)?;
            let parity = d.parity_vector();
            json!({
                "components": d.num_components(),
                "parity": parity,
                "spin": parity.is_zero(),
                "manifold": classify_link_surgery(&d)?,
            })
        }
        Command::Alexander { link, raw } => {
            let d = ctx.link(&link.link)?;
            let p = if *raw { alexander_raw(&d)? } else { alexander_polynomial(&d)? };
            json!({ "variables": p.variables(), "alexander": p.to_string() })
        }
        Command::Linking(l) => {
            let d = ctx.link(&l.link)?;
            json!({ "components": d.num_components(), "linking_matrix": d.linking_matrix() })
        }
        Command::Parity(l) => {
            let d = ctx.link(&l.link)?;
            let class = delta_class(&d);
            json!({
                "parity": d.parity_vector(),
                "sorted": class.parity,
                "class_count": class.class_count.to_string(),
            })
        }
        Command::Twist { link, position, strand, sign } => {
            let d = ctx.link(&link.link)?;
            let braid = d
                .braid()
                .ok_or_else(|| CliError::Parse("twists are inserted into braid words".into()))?;
            let mut braid = braid.clone();
            while braid.strands() < 3 {
                braid = braid.stabilize();
            }
            let twisted = apply_three_strand_twist(&braid, *position, *strand, *sign)?;
            let after = LinkDiagram::from_braid(twisted.clone());
            let (before_name, after_name) = (classify_link_surgery(&d)?, classify_link_surgery(&after)?);
            if d.parity_vector() != after.parity_vector() || before_name != after_name {
                return Err(CliError::Invariant(format!("twist changed the invariants of {braid}")));
            }
            json!({
                "braid": twisted.to_string(),
                "parity": after.parity_vector(),
                "manifold": after_name,
            })
        }
        Command::Group { presentation, query } => run_group(presentation.as_deref(), query)?,
        Command::Forms { query } => run_forms(query)?,
        Command::Sw { query } => run_sw(&ctx, query)?,
        Command::Scharlemann { epsilon, word, table } => {
            if *table {
                let rows: Vec<Value> = scharlemann_table()
                    .into_iter()
                    .map(|(e, w, v)| json!({ "epsilon": e, "class": w, "verdict": v }))
                    .collect();
                Value::Array(rows)
            } else {
                let (epsilon, word) = (epsilon.expect("required by clap"), word.as_deref().expect("required by clap"));
                let w = binary_icosahedral_table().presentation().word(word)?;
                serde_json::to_value(scharlemann_verdict(epsilon, &w)?).expect("verdict serializes")
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&value)
            } else {
                serde_json::to_string(&value)
            };
            println!("{}", text.expect("JSON values serialize"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("surgerykit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
