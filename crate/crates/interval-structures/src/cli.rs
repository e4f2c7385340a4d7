//! Line-oriented document grammar and the command dispatcher behind the
//! `istruct` binary.
//!
//! A document declares universes and data in sections:
//!
//! ```text
//! UNIVERSE_W            # header, then whitespace-separated labels
//! w1 w2 w3 w4 w5
//! UNIVERSE_THETA
//! t1 t2 t3
//! LOWER {t1,t2} : {w1,w4}     # lower assignment, one entry per line
//! UPPER {t3} : {w3,w5}        # upper assignment
//! PARTITION {t1,t2}           # one block per line
//! MASS {t1} : 0.4             # basic probability assignment entry
//! PROB w1 : 0.2               # point mass on a situation
//! RELATION w1 : {t1}          # compatible set of a situation
//! ```
//!
//! `#` starts a comment; whitespace is tolerated everywhere; set literals
//! are `{` label (`,` label)* `}`. `UNIVERSE_THETA` is required,
//! `UNIVERSE_W` whenever situations are referenced. LOWER, UPPER, MASS and
//! PROB entries are functional (one entry per key); RELATION lines
//! accumulate pairs.
//!
//! Reports render deterministically: identical input bytes give identical
//! output bytes, with subsets listed in canonical mask order.

use std::fmt;

use crate::belief::{bel_from_interval, BasicProbabilityAssignment, ProbabilityOnW};
use crate::compatibility::CompatibilityRelation;
use crate::error::Error;
use crate::interval::{
    check_duality_axiom, check_lower_axioms, check_upper_axioms, IntervalStructure, SetValuedMap,
};
use crate::rough::{ApproximationSpace, Partition};
use crate::sets::{Subset, Universe, DEFAULT_ENUM_CAP};
use crate::synthesis::{max_min_bounds, Assignment};

/// A parsed and label-resolved input document.
#[derive(Debug, Clone)]
pub struct Document {
    pub w: Option<Universe>,
    pub theta: Universe,
    pub lower: Vec<(Subset, Subset)>,
    pub upper: Vec<(Subset, Subset)>,
    pub partition: Vec<Subset>,
    pub masses: Vec<(Subset, f64)>,
    pub probs: Vec<(String, f64)>,
    pub relations: Vec<(String, Subset)>,
}

/// First parse failure, with its one-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LineKind {
    Lower,
    Upper,
    Partition,
    Mass,
    Prob,
    Relation,
}

struct RawLine {
    number: usize,
    kind: LineKind,
    payload: String,
}

fn fail(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Parses document text into resolved sections; fails at the first
/// offending line.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut w_labels: Option<(usize, Vec<String>)> = None;
    let mut theta_labels: Option<(usize, Vec<String>)> = None;
    let mut raw: Vec<RawLine> = Vec::new();
    // None: outside a universe section; Some(true): collecting W labels.
    let mut collecting: Option<bool> = None;

    for (index, full_line) in text.lines().enumerate() {
        let number = index + 1;
        let line = match full_line.find('#') {
            Some(pos) => &full_line[..pos],
            None => full_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = match line.find(char::is_whitespace) {
            Some(pos) => (&line[..pos], line[pos..].trim_start()),
            None => (line, ""),
        };
        match keyword {
            "UNIVERSE_W" | "UNIVERSE_THETA" => {
                if !rest.is_empty() {
                    return Err(fail(
                        number,
                        format!("{keyword} takes no payload on its own line"),
                    ));
                }
                let is_w = keyword == "UNIVERSE_W";
                let slot = if is_w {
                    &mut w_labels
                } else {
                    &mut theta_labels
                };
                if slot.is_some() {
                    return Err(fail(number, format!("duplicate {keyword} section")));
                }
                *slot = Some((number, Vec::new()));
                collecting = Some(is_w);
            }
            "LOWER" | "UPPER" => {
                collecting = None;
                raw.push(RawLine {
                    number,
                    kind: if keyword == "LOWER" {
                        LineKind::Lower
                    } else {
                        LineKind::Upper
                    },
                    payload: rest.to_string(),
                });
            }
            "PARTITION" => {
                collecting = None;
                raw.push(RawLine {
                    number,
                    kind: LineKind::Partition,
                    payload: rest.to_string(),
                });
            }
            "MASS" => {
                collecting = None;
                raw.push(RawLine {
                    number,
                    kind: LineKind::Mass,
                    payload: rest.to_string(),
                });
            }
            "PROB" => {
                collecting = None;
                raw.push(RawLine {
                    number,
                    kind: LineKind::Prob,
                    payload: rest.to_string(),
                });
            }
            "RELATION" => {
                collecting = None;
                raw.push(RawLine {
                    number,
                    kind: LineKind::Relation,
                    payload: rest.to_string(),
                });
            }
            _ => match collecting {
                Some(is_w) => {
                    for token in line.split_whitespace() {
                        if token.contains(['{', '}', ':', ',']) {
                            return Err(fail(number, format!("malformed label `{token}`")));
                        }
                        let slot = if is_w {
                            &mut w_labels
                        } else {
                            &mut theta_labels
                        };
                        slot.as_mut().unwrap().1.push(token.to_string());
                    }
                }
                None => {
                    return Err(fail(number, format!("unknown section `{keyword}`")));
                }
            },
        }
    }

    let theta = match theta_labels {
        Some((line, labels)) => {
            Universe::new(labels).map_err(|e| fail(line, format!("UNIVERSE_THETA: {e}")))?
        }
        None => return Err(fail(0, "missing UNIVERSE_THETA section")),
    };
    let w = match w_labels {
        Some((line, labels)) => {
            Some(Universe::new(labels).map_err(|e| fail(line, format!("UNIVERSE_W: {e}")))?)
        }
        None => None,
    };

    let mut doc = Document {
        w: w.clone(),
        theta: theta.clone(),
        lower: Vec::new(),
        upper: Vec::new(),
        partition: Vec::new(),
        masses: Vec::new(),
        probs: Vec::new(),
        relations: Vec::new(),
    };

    let need_w = |line: usize| -> Result<&Universe, ParseError> {
        w.as_ref().ok_or_else(|| {
            fail(
                line,
                "this line references situations but no UNIVERSE_W is declared",
            )
        })
    };

    for entry in raw {
        match entry.kind {
            LineKind::Lower | LineKind::Upper => {
                let (lhs, rhs) = split_colon(&entry)?;
                let a = parse_set(&theta, lhs, entry.number)?;
                let v = parse_set(need_w(entry.number)?, rhs, entry.number)?;
                let bucket = if entry.kind == LineKind::Lower {
                    &mut doc.lower
                } else {
                    &mut doc.upper
                };
                if bucket.iter().any(|(existing, _)| existing == &a) {
                    return Err(fail(entry.number, format!("duplicate entry for {a}")));
                }
                bucket.push((a, v));
            }
            LineKind::Partition => {
                let block = parse_set(&theta, &entry.payload, entry.number)?;
                doc.partition.push(block);
            }
            LineKind::Mass => {
                let (lhs, rhs) = split_colon(&entry)?;
                let a = parse_set(&theta, lhs, entry.number)?;
                let value = parse_number(rhs, entry.number)?;
                if doc.masses.iter().any(|(existing, _)| existing == &a) {
                    return Err(fail(entry.number, format!("duplicate entry for {a}")));
                }
                doc.masses.push((a, value));
            }
            LineKind::Prob => {
                let (lhs, rhs) = split_colon(&entry)?;
                let label = lhs.trim();
                let w = need_w(entry.number)?;
                if !w.contains_label(label) {
                    return Err(fail(
                        entry.number,
                        format!("label `{label}` is not declared in the universe"),
                    ));
                }
                let value = parse_number(rhs, entry.number)?;
                if doc.probs.iter().any(|(existing, _)| existing == label) {
                    return Err(fail(entry.number, format!("duplicate entry for {label}")));
                }
                doc.probs.push((label.to_string(), value));
            }
            LineKind::Relation => {
                let (lhs, rhs) = split_colon(&entry)?;
                let label = lhs.trim();
                let w = need_w(entry.number)?;
                if !w.contains_label(label) {
                    return Err(fail(
                        entry.number,
                        format!("label `{label}` is not declared in the universe"),
                    ));
                }
                let compatible = parse_set(&theta, rhs, entry.number)?;
                doc.relations.push((label.to_string(), compatible));
            }
        }
    }

    Ok(doc)
}

fn split_colon(entry: &RawLine) -> Result<(&str, &str), ParseError> {
    match entry.payload.split_once(':') {
        Some((lhs, rhs)) => Ok((lhs.trim(), rhs.trim())),
        None => Err(fail(entry.number, "expected `<lhs> : <rhs>`")),
    }
}

fn parse_number(text: &str, line: usize) -> Result<f64, ParseError> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| fail(line, format!("malformed decimal `{}`", text.trim())))
}

fn parse_set(universe: &Universe, text: &str, line: usize) -> Result<Subset, ParseError> {
    let text = text.trim();
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| fail(line, format!("malformed set literal `{text}`")))?;
    let mut labels = Vec::new();
    for part in inner.split(',') {
        let label = part.trim();
        if label.is_empty() {
            continue;
        }
        labels.push(label);
    }
    universe
        .subset(labels)
        .map_err(|e| fail(line, e.to_string()))
}

/// The commands the dispatcher understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Synthesize,
    Check,
    Rough,
    Belief,
    Compat,
}

impl Command {
    pub fn from_name(name: &str) -> Option<Command> {
        match name {
            "synthesize" => Some(Command::Synthesize),
            "check" => Some(Command::Check),
            "rough" => Some(Command::Rough),
            "belief" => Some(Command::Belief),
            "compat" => Some(Command::Compat),
            _ => None,
        }
    }
}

/// Output selector for report rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Tsv,
}

/// Flags shared by all commands.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    /// Dense-enumeration cap; `--max-theta` on the command line.
    pub cap: usize,
    pub format: Format,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            cap: DEFAULT_ENUM_CAP,
            format: Format::Text,
        }
    }
}

/// How rows of a section join in text form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionKind {
    /// `lhs : rhs`
    Pairs,
    /// `lhs -> rhs`
    DetRules,
    /// `lhs ~> rhs`
    NondetRules,
    /// cells joined by single spaces
    Verdict,
}

#[derive(Debug, Clone)]
pub struct Section {
    pub tag: &'static str,
    pub title: &'static str,
    pub kind: SectionKind,
    pub rows: Vec<Vec<String>>,
}

/// A deterministic, renderable report.
#[derive(Debug, Clone)]
pub struct OutputReport {
    pub sections: Vec<Section>,
    /// Set when a check command found failures; the caller maps it to a
    /// non-zero exit.
    pub failed: bool,
}

impl OutputReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Tsv => self.to_tsv(),
        }
    }

    pub fn to_text(&self) -> String {
        let blocks: Vec<String> = self
            .sections
            .iter()
            .map(|section| {
                let mut lines = vec![format!("# {}", section.title)];
                for row in &section.rows {
                    lines.push(match section.kind {
                        SectionKind::Pairs => format!("{} : {}", row[0], row[1]),
                        SectionKind::DetRules => format!("{} -> {}", row[0], row[1]),
                        SectionKind::NondetRules => format!("{} ~> {}", row[0], row[1]),
                        SectionKind::Verdict => row.join(" "),
                    });
                }
                lines.join("\n")
            })
            .collect();
        let mut out = blocks.join("\n\n");
        out.push('\n');
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for section in &self.sections {
            for row in &section.rows {
                out.push_str(section.tag);
                for cell in row {
                    out.push('\t');
                    out.push_str(cell);
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Dispatch failure, split by the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Exit code 1.
    Invalid(String),
    /// Exit code 2: the input rules admit no interval structure.
    Inconsistent(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Inconsistent(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent { .. } | Error::ClosureInconsistent { .. } => {
                CliError::Inconsistent(e.to_string())
            }
            other => CliError::Invalid(other.to_string()),
        }
    }
}

/// Runs a command against a parsed document and returns the report.
pub fn run(
    command: Command,
    doc: &Document,
    options: &RunOptions,
) -> Result<OutputReport, CliError> {
    match command {
        Command::Synthesize => run_synthesize(doc, options),
        Command::Check => run_check(doc, options),
        Command::Rough => run_rough(doc, options),
        Command::Belief => run_belief(doc, options),
        Command::Compat => run_compat(doc, options),
    }
}

fn require_w(doc: &Document) -> Result<&Universe, CliError> {
    doc.w
        .as_ref()
        .ok_or_else(|| CliError::Invalid("this command requires a UNIVERSE_W section".into()))
}

fn table_section(
    tag: &'static str,
    title: &'static str,
    theta: &Universe,
    cap: usize,
    mut value: impl FnMut(&Subset) -> Subset,
) -> Result<Section, CliError> {
    let mut rows = Vec::new();
    for a in theta.powerset_with_cap(cap).map_err(CliError::from)? {
        let v = value(&a);
        rows.push(vec![a.to_string(), v.to_string()]);
    }
    Ok(Section {
        tag,
        title,
        kind: SectionKind::Pairs,
        rows,
    })
}

fn rules_sections(structure: &IntervalStructure, cap: usize) -> Result<[Section; 2], CliError> {
    let theta = structure.theta();
    let mut det = Vec::new();
    let mut nondet = Vec::new();
    for a in theta.powerset_with_cap(cap).map_err(CliError::from)? {
        det.push(vec![
            structure.lower(&a).map_err(CliError::from)?.to_string(),
            a.to_string(),
        ]);
        nondet.push(vec![
            structure.upper(&a).map_err(CliError::from)?.to_string(),
            a.to_string(),
        ]);
    }
    Ok([
        Section {
            tag: "rule_det",
            title: "deterministic rules",
            kind: SectionKind::DetRules,
            rows: det,
        },
        Section {
            tag: "rule_nondet",
            title: "non-deterministic rules",
            kind: SectionKind::NondetRules,
            rows: nondet,
        },
    ])
}

fn run_synthesize(doc: &Document, options: &RunOptions) -> Result<OutputReport, CliError> {
    let w = require_w(doc)?;
    let mut assignment = Assignment::new(&doc.theta, w);
    for (a, v) in &doc.lower {
        assignment.set_lower(a, v).map_err(CliError::from)?;
    }
    for (a, v) in &doc.upper {
        assignment.set_upper(a, v).map_err(CliError::from)?;
    }
    let bsa = assignment.synthesize().map_err(CliError::from)?;
    let bounds = max_min_bounds(&bsa, options.cap).map_err(CliError::from)?;

    let bsa_rows: Vec<Vec<String>> = bsa
        .focal_sets()
        .map(|(a, v)| vec![a.to_string(), v.to_string()])
        .collect();
    let mut sections = vec![Section {
        tag: "bsa",
        title: "basic set assignment",
        kind: SectionKind::Pairs,
        rows: bsa_rows,
    }];
    sections.push(table_section(
        "lower",
        "max lower bounds",
        &doc.theta,
        options.cap,
        |a| bounds.lower(a).unwrap(),
    )?);
    sections.push(table_section(
        "upper",
        "min upper bounds",
        &doc.theta,
        options.cap,
        |a| bounds.upper(a).unwrap(),
    )?);
    sections.extend(rules_sections(&bounds, options.cap)?);
    Ok(OutputReport {
        sections,
        failed: false,
    })
}

fn run_check(doc: &Document, options: &RunOptions) -> Result<OutputReport, CliError> {
    let w = require_w(doc)?;
    let lower =
        SetValuedMap::from_entries(&doc.theta, w, &w.empty_set(), doc.lower.iter().cloned())
            .map_err(CliError::from)?;
    let upper = SetValuedMap::from_entries(&doc.theta, w, &w.full_set(), doc.upper.iter().cloned())
        .map_err(CliError::from)?;
    let mut rows = Vec::new();
    let mut failed = false;
    let reports = [
        check_lower_axioms(&lower, options.cap).map_err(CliError::from)?,
        check_upper_axioms(&upper, options.cap).map_err(CliError::from)?,
        check_duality_axiom(&lower, &upper, options.cap).map_err(CliError::from)?,
    ];
    for report in &reports {
        for (axiom, witness) in report.checks() {
            match witness {
                None => rows.push(vec![axiom.to_string(), "pass".into()]),
                Some(w) => {
                    failed = true;
                    rows.push(vec![axiom.to_string(), "fail".into(), w.to_string()]);
                }
            }
        }
    }
    Ok(OutputReport {
        sections: vec![Section {
            tag: "axiom",
            title: "axiom verdicts",
            kind: SectionKind::Verdict,
            rows,
        }],
        failed,
    })
}

fn run_rough(doc: &Document, options: &RunOptions) -> Result<OutputReport, CliError> {
    if doc.partition.is_empty() {
        return Err(CliError::Invalid(
            "the rough command requires PARTITION lines".into(),
        ));
    }
    let partition = Partition::from_blocks(&doc.theta, &doc.partition).map_err(CliError::from)?;
    let space = match &doc.w {
        Some(w) if w.size() == partition.len() => {
            ApproximationSpace::with_block_labels(partition, w.labels().map(str::to_string))
                .map_err(CliError::from)?
        }
        _ => ApproximationSpace::new(partition),
    };

    let block_rows: Vec<Vec<String>> = space
        .quotient()
        .labels()
        .zip(space.partition().blocks())
        .map(|(label, block)| vec![label.to_string(), block.to_string()])
        .collect();
    let mut sections = vec![Section {
        tag: "block",
        title: "blocks",
        kind: SectionKind::Pairs,
        rows: block_rows,
    }];
    sections.push(table_section(
        "lower_approx",
        "lower approximations",
        &doc.theta,
        options.cap,
        |a| space.lower_approx(a).unwrap(),
    )?);
    sections.push(table_section(
        "upper_approx",
        "upper approximations",
        &doc.theta,
        options.cap,
        |a| space.upper_approx(a).unwrap(),
    )?);
    sections.push(table_section(
        "inner",
        "inner reductions",
        &doc.theta,
        options.cap,
        |a| space.reductions(a).unwrap().0,
    )?);
    sections.push(table_section(
        "outer",
        "outer reductions",
        &doc.theta,
        options.cap,
        |a| space.reductions(a).unwrap().1,
    )?);

    let mut det = Vec::new();
    let mut nondet = Vec::new();
    for a in doc
        .theta
        .powerset_with_cap(options.cap)
        .map_err(CliError::from)?
    {
        let (d, n) = space.decision_rules(&a).map_err(CliError::from)?;
        det.push(vec![d.lhs.to_string(), d.rhs.to_string()]);
        nondet.push(vec![n.lhs.to_string(), n.rhs.to_string()]);
    }
    sections.push(Section {
        tag: "rule_det",
        title: "deterministic rules",
        kind: SectionKind::DetRules,
        rows: det,
    });
    sections.push(Section {
        tag: "rule_nondet",
        title: "non-deterministic rules",
        kind: SectionKind::NondetRules,
        rows: nondet,
    });
    Ok(OutputReport {
        sections,
        failed: false,
    })
}

fn run_belief(doc: &Document, options: &RunOptions) -> Result<OutputReport, CliError> {
    if !doc.masses.is_empty() && !doc.probs.is_empty() {
        return Err(CliError::Invalid(
            "MASS and PROB sections are mutually exclusive".into(),
        ));
    }
    let (bel_rows, pl_rows) = if !doc.masses.is_empty() {
        let bpa = BasicProbabilityAssignment::new(&doc.theta, doc.masses.iter().cloned())
            .map_err(CliError::from)?;
        let bel = bpa.belief_table(options.cap).map_err(CliError::from)?;
        let pl = bel.plausibility();
        value_rows(&doc.theta, options.cap, bel.values(), pl.values())?
    } else if !doc.probs.is_empty() {
        let w = require_w(doc)?;
        let lower =
            SetValuedMap::from_entries(&doc.theta, w, &w.empty_set(), doc.lower.iter().cloned())
                .map_err(CliError::from)?;
        let upper =
            SetValuedMap::from_entries(&doc.theta, w, &w.full_set(), doc.upper.iter().cloned())
                .map_err(CliError::from)?;
        let structure =
            IntervalStructure::new(lower, upper, options.cap).map_err(CliError::from)?;
        let mut point_masses = vec![0.0f64; w.size()];
        for (label, mass) in &doc.probs {
            point_masses[w.index_of(label).map_err(CliError::from)?] = *mass;
        }
        let p = ProbabilityOnW::new(w, point_masses).map_err(CliError::from)?;
        let (bel, pl) = bel_from_interval(&structure, &p).map_err(CliError::from)?;
        value_rows(&doc.theta, options.cap, bel.values(), pl.values())?
    } else {
        return Err(CliError::Invalid(
            "the belief command requires MASS lines, or PROB lines with LOWER/UPPER tables".into(),
        ));
    };
    Ok(OutputReport {
        sections: vec![
            Section {
                tag: "bel",
                title: "belief",
                kind: SectionKind::Pairs,
                rows: bel_rows,
            },
            Section {
                tag: "pl",
                title: "plausibility",
                kind: SectionKind::Pairs,
                rows: pl_rows,
            },
        ],
        failed: false,
    })
}

type RowPair = (Vec<Vec<String>>, Vec<Vec<String>>);

fn value_rows(theta: &Universe, cap: usize, bel: &[f64], pl: &[f64]) -> Result<RowPair, CliError> {
    let mut bel_rows = Vec::new();
    let mut pl_rows = Vec::new();
    for a in theta.powerset_with_cap(cap).map_err(CliError::from)? {
        let mask = a.mask() as usize;
        bel_rows.push(vec![a.to_string(), format!("{}", bel[mask])]);
        pl_rows.push(vec![a.to_string(), format!("{}", pl[mask])]);
    }
    Ok((bel_rows, pl_rows))
}

fn run_compat(doc: &Document, options: &RunOptions) -> Result<OutputReport, CliError> {
    let w = require_w(doc)?;
    if doc.relations.is_empty() {
        return Err(CliError::Invalid(
            "the compat command requires RELATION lines".into(),
        ));
    }
    let relation = CompatibilityRelation::from_gamma(
        w,
        &doc.theta,
        doc.relations.iter().map(|(l, s)| (l.as_str(), s.clone())),
    )
    .map_err(CliError::from)?;
    let structure = relation
        .interval_structure(options.cap)
        .map_err(CliError::from)?;
    let sections = vec![
        table_section("lower", "lower bounds", &doc.theta, options.cap, |a| {
            structure.lower(a).unwrap()
        })?,
        table_section("upper", "upper bounds", &doc.theta, options.cap, |a| {
            structure.upper(a).unwrap()
        })?,
    ];
    Ok(OutputReport {
        sections,
        failed: false,
    })
}
