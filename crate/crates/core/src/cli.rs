//! The `lyub` command line: input files, reports and their text and JSON forms.
//!
//! Input files are line oriented. Every statement ends with `;` and `#` starts
//! a comment:
//!
//! ```text
//! n=4;
//! gens: x1*x2, x1*x4, x2*x3, x3*x4;
//! ```
//!
//! `primes: {1,3},{2,4};` gives the ideal as an intersection of face primes
//! instead. Optional `field=…;`, `r=…;`, `format=text|json;`, `check;` and
//! `compute: table, bass, …;` statements set defaults that command-line flags
//! override.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::ideal::MonomialIdeal;
use crate::invariants::{CheckOutcome, GrowthBound, InjectiveDimensions, LocalCohomology};
use crate::mask::{DegreeMask, MAX_VARS};
use crate::with_field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealForm {
    Gens,
    Primes,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Computation {
    Table,
    Bass,
    DualBass,
    Betti,
    Strands,
    Supp,
    Dims,
    Seqcm,
    Check,
    Info,
}

impl Computation {
    pub const ALL: [Computation; 10] = [
        Computation::Table,
        Computation::Bass,
        Computation::DualBass,
        Computation::Betti,
        Computation::Strands,
        Computation::Supp,
        Computation::Dims,
        Computation::Seqcm,
        Computation::Check,
        Computation::Info,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Computation::Table => "table",
            Computation::Bass => "bass",
            Computation::DualBass => "dual-bass",
            Computation::Betti => "betti",
            Computation::Strands => "strands",
            Computation::Supp => "supp",
            Computation::Dims => "dims",
            Computation::Seqcm => "seqcm",
            Computation::Check => "check",
            Computation::Info => "info",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub n: usize,
    pub ideal: MonomialIdeal,
    pub form: IdealForm,
    pub field: FieldSpec,
    pub r: Option<usize>,
    pub computations: Vec<Computation>,
    pub format: Format,
    pub check: bool,
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn at(&self) -> (usize, usize) {
        (self.line, self.column)
    }

    fn error_at(&self, (line, column): (usize, usize), message: impl Into<String>) -> Error {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.at(), message)
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".into(),
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_blank();
        if self.peek() == Some(want) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {want:?}, found {}", self.describe_next())))
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_blank();
        if self.peek() == Some(want) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<String> {
        self.skip_blank();
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | ':')) {
            s.push(c);
            self.bump();
        }
        if s.is_empty() {
            Err(self.error(format!("expected a word, found {}", self.describe_next())))
        } else {
            Ok(s)
        }
    }

    /// A keyword ends at the first character that is not a letter.
    fn keyword(&mut self) -> Result<String> {
        self.skip_blank();
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphabetic()) {
            s.push(c);
            self.bump();
        }
        if s.is_empty() {
            Err(self.error(format!("expected a statement, found {}", self.describe_next())))
        } else {
            Ok(s)
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_blank();
        let start = self.at();
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            s.push(c);
            self.bump();
        }
        if s.is_empty() {
            return Err(self.error(format!("expected an integer, found {}", self.describe_next())));
        }
        s.parse().map_err(|_| self.error_at(start, format!("integer {s} is too large")))
    }
}

fn variable(cur: &mut Cursor, n: usize) -> Result<(usize, (usize, usize))> {
    cur.skip_blank();
    let at = cur.at();
    if cur.peek() != Some('x') {
        return Err(cur.error(format!("expected a variable x<i>, found {}", cur.describe_next())));
    }
    cur.bump();
    let i = cur.int()?;
    check_index(cur, at, i, n)?;
    Ok((i, at))
}

fn check_index(cur: &Cursor, at: (usize, usize), i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        Err(cur.error_at(at, format!("variable {i} is outside 1..={n}")))
    } else {
        Ok(())
    }
}

fn push_var(cur: &Cursor, vars: &mut Vec<usize>, i: usize, at: (usize, usize), what: &str) -> Result<()> {
    if vars.contains(&i) {
        return Err(cur.error_at(at, format!("x{i} is repeated in {what}; only squarefree input is allowed")));
    }
    vars.push(i);
    Ok(())
}

fn monomials(cur: &mut Cursor, n: usize) -> Result<Vec<DegreeMask>> {
    let mut out = Vec::new();
    loop {
        let mut vars = Vec::new();
        let (i, at) = variable(cur, n)?;
        push_var(cur, &mut vars, i, at, "a monomial")?;
        while cur.eat('*') {
            let (i, at) = variable(cur, n)?;
            push_var(cur, &mut vars, i, at, "a monomial")?;
        }
        out.push(DegreeMask::from_vars(n, &vars)?);
        if !cur.eat(',') {
            return Ok(out);
        }
    }
}

fn primes(cur: &mut Cursor, n: usize) -> Result<Vec<DegreeMask>> {
    let mut out = Vec::new();
    loop {
        cur.expect('{')?;
        let mut vars = Vec::new();
        loop {
            cur.skip_blank();
            let at = cur.at();
            let i = cur.int()?;
            check_index(cur, at, i, n)?;
            push_var(cur, &mut vars, i, at, "a prime")?;
            if !cur.eat(',') {
                break;
            }
        }
        cur.expect('}')?;
        out.push(DegreeMask::from_vars(n, &vars)?);
        if !cur.eat(',') {
            return Ok(out);
        }
    }
}

/// Parses an input file. Variables are checked against `n`, which therefore
/// has to come before the ideal.
pub fn parse_input(text: &str) -> Result<ProblemSpec> {
    let mut cur = Cursor::new(text);
    let mut n: Option<usize> = None;
    let mut ideal: Option<(IdealForm, Vec<DegreeMask>)> = None;
    let mut field: Option<FieldSpec> = None;
    let mut r: Option<usize> = None;
    let mut format: Option<Format> = None;
    let mut check = false;
    let mut computations: Option<Vec<Computation>> = None;

    loop {
        cur.skip_blank();
        if cur.peek().is_none() {
            break;
        }
        let at = cur.at();
        let key = cur.keyword()?;
        let twice = || cur.error_at(at, format!("{key} is given twice"));
        match key.as_str() {
            "n" => {
                if n.is_some() {
                    return Err(twice());
                }
                cur.expect('=')?;
                cur.skip_blank();
                let value_at = cur.at();
                let v = cur.int()?;
                if v == 0 || v > MAX_VARS {
                    return Err(cur.error_at(value_at, format!("n must lie in 1..={MAX_VARS}")));
                }
                n = Some(v);
            }
            "gens" | "primes" => {
                if ideal.is_some() {
                    return Err(cur.error_at(at, "the ideal is given twice; use exactly one of gens or primes"));
                }
                let Some(n) = n else {
                    return Err(cur.error_at(at, "n must be declared before the ideal"));
                };
                cur.expect(':')?;
                ideal = Some(if key == "gens" {
                    (IdealForm::Gens, monomials(&mut cur, n)?)
                } else {
                    (IdealForm::Primes, primes(&mut cur, n)?)
                });
            }
            "field" => {
                if field.is_some() {
                    return Err(twice());
                }
                cur.expect('=')?;
                cur.skip_blank();
                let value_at = cur.at();
                let w = cur.word()?;
                field = Some(w.parse().map_err(|e: Error| cur.error_at(value_at, e.to_string()))?);
            }
            "r" => {
                if r.is_some() {
                    return Err(twice());
                }
                cur.expect('=')?;
                r = Some(cur.int()?);
            }
            "format" => {
                if format.is_some() {
                    return Err(twice());
                }
                cur.expect('=')?;
                cur.skip_blank();
                let value_at = cur.at();
                format = Some(match cur.word()?.as_str() {
                    "text" => Format::Text,
                    "json" => Format::Json,
                    other => return Err(cur.error_at(value_at, format!("unknown format {other:?}"))),
                });
            }
            "check" => {
                if check {
                    return Err(twice());
                }
                check = true;
            }
            "compute" => {
                if computations.is_some() {
                    return Err(twice());
                }
                cur.expect(':')?;
                let mut list = Vec::new();
                loop {
                    cur.skip_blank();
                    let value_at = cur.at();
                    let w = cur.word()?;
                    let c = Computation::from_name(&w)
                        .ok_or_else(|| cur.error_at(value_at, format!("unknown computation {w:?}")))?;
                    if !list.contains(&c) {
                        list.push(c);
                    }
                    if !cur.eat(',') {
                        break;
                    }
                }
                computations = Some(list);
            }
            other => return Err(cur.error_at(at, format!("unknown statement {other:?}"))),
        }
        cur.expect(';')?;
    }

    let n = n.ok_or_else(|| Error::Input("missing n=<int>;".into()))?;
    let (form, masks) = ideal.ok_or_else(|| Error::Input("missing gens: …; or primes: …;".into()))?;
    let ideal = match form {
        IdealForm::Gens => MonomialIdeal::minimalize(n, &masks)?,
        IdealForm::Primes => MonomialIdeal::intersect_face_ideals(n, &masks)?,
    };
    Ok(ProblemSpec {
        n,
        ideal,
        form,
        field: field.unwrap_or_default(),
        r,
        computations: computations.unwrap_or_default(),
        format: format.unwrap_or_default(),
        check,
    })
}

/// Writes `spec` back in the input grammar; `parse_input` reads it back to an
/// equal spec.
pub fn render_spec(spec: &ProblemSpec) -> Result<String> {
    let mut out = format!("n={};\n", spec.n);
    match spec.form {
        IdealForm::Gens => {
            let gens: Vec<String> = spec.ideal.generators().iter().map(|g| g.monomial()).collect();
            writeln!(out, "gens: {};", gens.join(", ")).unwrap();
        }
        IdealForm::Primes => {
            let primes: Vec<String> = spec
                .ideal
                .minimal_primes()?
                .iter()
                .map(|p| {
                    let v: Vec<String> = p.indices().map(|i| (i + 1).to_string()).collect();
                    format!("{{{}}}", v.join(","))
                })
                .collect();
            writeln!(out, "primes: {};", primes.join(", ")).unwrap();
        }
    }
    writeln!(out, "field={};", spec.field).unwrap();
    if let Some(r) = spec.r {
        writeln!(out, "r={r};").unwrap();
    }
    let format = match spec.format {
        Format::Text => "text",
        Format::Json => "json",
    };
    writeln!(out, "format={format};").unwrap();
    if spec.check {
        out.push_str("check;\n");
    }
    if !spec.computations.is_empty() {
        let names: Vec<&str> = spec.computations.iter().map(|c| c.name()).collect();
        writeln!(out, "compute: {};", names.join(", ")).unwrap();
    }
    Ok(out)
}

/// A mask in a report, serialized as its 0/1 vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Alpha(pub DegreeMask);

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.to_vector().serialize(serializer)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BassRow {
    pub alpha: Alpha,
    pub mu: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BassSection {
    pub r: usize,
    pub rows: Vec<BassRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualBassRow {
    pub alpha: Alpha,
    pub pi: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualBassSection {
    pub r: usize,
    pub rows: Vec<DualBassRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiEntry {
    pub j: usize,
    pub alpha: Alpha,
    pub beta: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrandSection {
    pub r: usize,
    /// Dimensions of the strand frame in homological positions `0..=n−r`.
    pub ranks: Vec<usize>,
    /// Homology of the transposed frame, `λ_{p,n−r}` at position `p`.
    pub homology: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuppSection {
    pub r: usize,
    pub supp: Vec<Alpha>,
    pub small_supp: Vec<Alpha>,
    /// Non-minimal masks of the support with `μ_0 ≠ 0`.
    pub mu0_non_minimal: Vec<(Alpha, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimsSection {
    pub r: usize,
    #[serde(flatten)]
    pub dims: InjectiveDimensions,
    pub growth: GrowthBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct Info {
    pub generators: Vec<Alpha>,
    pub minimal_primes: Vec<Alpha>,
    pub height: usize,
    pub d: usize,
    pub nonzero_degrees: Vec<usize>,
    pub linearity_defect: usize,
}

/// Everything one run produced. Absent sections were not requested.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub n: usize,
    pub field: FieldSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lyubeznik: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bass: Option<Vec<BassSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_bass: Option<Vec<DualBassSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<BettiEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strands: Option<Vec<StrandSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub supp: Option<Vec<SuppSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<DimsSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequentially_cm: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckOutcome>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub info: Option<Info>,
}

impl Report {
    /// False if any consistency check ran and failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().flatten().all(|c| c.passed)
    }
}

fn alphas(masks: &[DegreeMask]) -> Vec<Alpha> {
    masks.iter().copied().map(Alpha).collect()
}

/// Runs every computation requested by `spec`, plus the check suites if
/// `spec.check` is set.
pub fn run(spec: &ProblemSpec) -> Result<Report> {
    with_field!(spec.field, |f| run_with(spec, f))
}

fn run_with<F: Field>(spec: &ProblemSpec, field: &F) -> Result<Report> {
    let lc = LocalCohomology::new(&spec.ideal, field)?;
    let n = lc.n();
    if let Some(r) = spec.r.filter(|&r| r > n) {
        return Err(Error::Input(format!("r = {r} exceeds n = {n}")));
    }
    let per_degree = [Computation::Bass, Computation::DualBass, Computation::Strands, Computation::Supp, Computation::Dims];
    let degrees = match spec.r {
        Some(r) => vec![r],
        None if per_degree.iter().any(|c| spec.computations.contains(c)) => lc.nonzero_degrees()?,
        None => Vec::new(),
    };
    let wants = |c: Computation| spec.computations.contains(&c);
    let mut report = Report {
        n,
        field: spec.field,
        lyubeznik: None,
        bass: None,
        dual_bass: None,
        betti: None,
        strands: None,
        supp: None,
        dims: None,
        sequentially_cm: None,
        checks: None,
        info: None,
    };
    if wants(Computation::Table) {
        let t = lc.lyubeznik_table()?;
        report.lyubeznik = Some(t.rows().iter().enumerate().map(|(p, row)| row[p..].to_vec()).collect());
    }
    if wants(Computation::Bass) {
        let mut sections = Vec::new();
        for &r in &degrees {
            let rows = lc.bass_table(r)?.rows.iter().map(|(a, mu)| BassRow { alpha: Alpha(*a), mu: mu.clone() });
            sections.push(BassSection { r, rows: rows.collect() });
        }
        report.bass = Some(sections);
    }
    if wants(Computation::DualBass) {
        let mut sections = Vec::new();
        for &r in &degrees {
            let rows = lc.dual_bass_table(r)?.rows.into_iter().map(|(a, pi)| DualBassRow { alpha: Alpha(a), pi });
            sections.push(DualBassSection { r, rows: rows.collect() });
        }
        report.dual_bass = Some(sections);
    }
    if wants(Computation::Betti) {
        let betti = lc.dual_betti()?;
        report.betti = Some(
            betti
                .entries
                .iter()
                .map(|(&(j, alpha), &beta)| BettiEntry { j, alpha: Alpha(alpha), beta })
                .collect(),
        );
    }
    if wants(Computation::Strands) {
        let mut sections = Vec::new();
        for &r in &degrees {
            let frame = lc.strand_frame(r)?;
            sections.push(StrandSection {
                r,
                ranks: frame.spaces.iter().map(|s| s.len()).collect(),
                homology: frame.transposed().homology_dims(),
            });
        }
        report.strands = Some(sections);
    }
    if wants(Computation::Supp) {
        let mut sections = Vec::new();
        for &r in &degrees {
            let s = lc.small_support(r)?;
            sections.push(SuppSection {
                r,
                supp: alphas(&s.full),
                small_supp: alphas(&s.small),
                mu0_non_minimal: lc.mu0_summand_report(r)?.into_iter().map(|(a, v)| (Alpha(a), v)).collect(),
            });
        }
        report.supp = Some(sections);
    }
    if wants(Computation::Dims) {
        let mut sections = Vec::new();
        for &r in &degrees {
            sections.push(DimsSection {
                r,
                dims: lc.injective_dimensions(r)?,
                growth: lc.growth_bound_check(r)?,
            });
        }
        report.dims = Some(sections);
    }
    if wants(Computation::Seqcm) {
        report.sequentially_cm = Some(lc.sequentially_cm()?);
    }
    if wants(Computation::Check) || spec.check {
        report.checks = Some(lc.run_checks()?);
    }
    if wants(Computation::Info) {
        let ideal = lc.ideal();
        report.info = Some(Info {
            generators: alphas(ideal.generators()),
            minimal_primes: alphas(&ideal.minimal_primes()?),
            height: ideal.height()?,
            d: lc.d(),
            nonzero_degrees: lc.nonzero_degrees()?,
            linearity_defect: lc.linearity_defect()?,
        });
    }
    Ok(report)
}

fn mask_label(a: Alpha) -> String {
    format!("{} {}", a.0.tuple(), a.0.monomial())
}

fn numbers(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

/// Human-readable rendering. It carries the same numbers as the JSON form.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "n = {}, field = {}", report.n, report.field).unwrap();
    if let Some(info) = &report.info {
        let gens: Vec<String> = info.generators.iter().map(|a| a.0.monomial()).collect();
        let primes: Vec<String> = info.minimal_primes.iter().map(|a| a.0.tuple()).collect();
        writeln!(w, "\ngenerators: {}", gens.join(", ")).unwrap();
        writeln!(w, "minimal primes: {}", primes.join(" ")).unwrap();
        writeln!(w, "height = {}, d = {}", info.height, info.d).unwrap();
        writeln!(w, "H^r nonzero for r in: {}", numbers(&info.nonzero_degrees)).unwrap();
        writeln!(w, "linearity defect of the dual ideal = {}", info.linearity_defect).unwrap();
    }
    if let Some(rows) = &report.lyubeznik {
        let width = rows.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
        writeln!(w, "\nLyubeznik table (d = {}):", rows.len().saturating_sub(1)).unwrap();
        for (p, row) in rows.iter().enumerate() {
            let mut cells = vec![format!("{:>width$}", ""); p];
            cells.extend(row.iter().map(|v| format!("{v:>width$}")));
            writeln!(w, "{}", cells.join(" ").trim_end()).unwrap();
        }
    }
    if let Some(sections) = &report.bass {
        for s in sections {
            writeln!(w, "\nBass numbers mu_p of H^{}:", s.r).unwrap();
            for row in &s.rows {
                writeln!(w, "  {}: {}", mask_label(row.alpha), numbers(&row.mu)).unwrap();
            }
        }
    }
    if let Some(sections) = &report.dual_bass {
        for s in sections {
            writeln!(w, "\ndual Bass numbers pi_p of H^{}:", s.r).unwrap();
            for row in &s.rows {
                writeln!(w, "  {}: {}", mask_label(row.alpha), numbers(&row.pi)).unwrap();
            }
        }
    }
    if let Some(entries) = &report.betti {
        writeln!(w, "\nmultigraded Betti numbers of the dual ideal:").unwrap();
        for e in entries {
            writeln!(w, "  beta_{} {}: {}", e.j, mask_label(e.alpha), e.beta).unwrap();
        }
    }
    if let Some(sections) = &report.strands {
        for s in sections {
            writeln!(w, "\nlinear strand r = {}: ranks {}; homology of the transposed frame {}", s.r, numbers(&s.ranks), numbers(&s.homology))
                .unwrap();
        }
    }
    if let Some(sections) = &report.supp {
        for s in sections {
            let supp: Vec<String> = s.supp.iter().map(|a| a.0.tuple()).collect();
            let small: Vec<String> = s.small_supp.iter().map(|a| a.0.tuple()).collect();
            writeln!(w, "\nH^{}:", s.r).unwrap();
            writeln!(w, "  Supp: {}", supp.join(" ")).unwrap();
            writeln!(w, "  supp: {}", small.join(" ")).unwrap();
            for (a, v) in &s.mu0_non_minimal {
                writeln!(w, "  mu_0 = {v} at non-minimal {}", mask_label(*a)).unwrap();
            }
        }
    }
    if let Some(sections) = &report.dims {
        for s in sections {
            let d = &s.dims;
            writeln!(
                w,
                "\nH^{}: *id = {}, id = {}, dim supp = {}, dim = {}",
                s.r,
                opt(d.star_id),
                opt(d.id_ungraded),
                opt(d.dim_small_supp),
                opt(d.dim_module)
            )
            .unwrap();
            writeln!(
                w,
                "  growth bound: s = {}, mu(m) = [{}], {}",
                opt(s.growth.s),
                numbers(&s.growth.mu_at_maximal),
                if s.growth.holds { "holds" } else { "VIOLATED" }
            )
            .unwrap();
        }
    }
    if let Some(v) = report.sequentially_cm {
        writeln!(w, "\nsequentially Cohen-Macaulay over {}: {}", report.field, if v { "yes" } else { "no" }).unwrap();
    }
    if let Some(checks) = &report.checks {
        writeln!(w).unwrap();
        for c in checks {
            writeln!(w, "{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail).unwrap();
        }
    }
    out
}

pub fn render_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

#[derive(Parser, Debug)]
#[command(name = "lyub", version, about = "Lyubeznik tables and Bass numbers of squarefree monomial ideals")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Input file; `-` reads standard input.
    input: PathBuf,
    /// Coefficient field: `q` or `fp:<prime>`.
    #[arg(long)]
    field: Option<FieldSpec>,
    /// Only this cohomological degree; default is every nonzero one.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    json: bool,
    /// Also run the consistency checks.
    #[arg(long)]
    check: bool,
    /// Worker threads.
    #[arg(long, value_name = "N")]
    parallel: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lyubeznik table of R/I.
    Table(Common),
    /// Bass numbers of H^r_I(R) at the face primes.
    Bass(Common),
    /// Dual Bass numbers of H^r_I(R).
    DualBass(Common),
    /// Multigraded Betti numbers of the Alexander dual.
    Betti(Common),
    /// Linear strands of the resolution of the Alexander dual.
    Strands(Common),
    /// Support and small support of H^r_I(R).
    Supp(Common),
    /// Injective dimensions and dimensions of H^r_I(R).
    Dims(Common),
    /// Whether R/I is sequentially Cohen-Macaulay over the field.
    Seqcm(Common),
    /// Run every consistency check.
    Check(Common),
    /// Generators, primes and basic numbers of I.
    Info(Common),
    /// Run the computations listed in the file's `compute:` statement.
    Run(Common),
}

impl Command {
    fn split(self) -> (Option<Computation>, Common) {
        match self {
            Command::Table(c) => (Some(Computation::Table), c),
            Command::Bass(c) => (Some(Computation::Bass), c),
            Command::DualBass(c) => (Some(Computation::DualBass), c),
            Command::Betti(c) => (Some(Computation::Betti), c),
            Command::Strands(c) => (Some(Computation::Strands), c),
            Command::Supp(c) => (Some(Computation::Supp), c),
            Command::Dims(c) => (Some(Computation::Dims), c),
            Command::Seqcm(c) => (Some(Computation::Seqcm), c),
            Command::Check(c) => (Some(Computation::Check), c),
            Command::Info(c) => (Some(Computation::Info), c),
            Command::Run(c) => (None, c),
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| Error::Input(format!("cannot read standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
    }
}

/// Parses the input named on the command line and applies the flags on top of
/// the file's own settings.
fn prepare(cli: Cli) -> Result<(ProblemSpec, Option<usize>)> {
    let (computation, common) = cli.command.split();
    let mut spec = parse_input(&read_input(&common.input)?)?;
    if let Some(c) = computation {
        spec.computations = vec![c];
    } else if spec.computations.is_empty() {
        return Err(Error::Input("`run` needs a compute: statement in the input".into()));
    }
    if let Some(f) = common.field {
        spec.field = f;
    }
    if common.r.is_some() {
        spec.r = common.r;
    }
    if common.json {
        spec.format = Format::Json;
    }
    spec.check |= common.check;
    if common.parallel == Some(0) {
        return Err(Error::Input("--parallel needs at least one thread".into()));
    }
    Ok((spec, common.parallel))
}

fn execute(spec: &ProblemSpec, threads: Option<usize>) -> Result<Report> {
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Input(format!("cannot start {t} threads: {e}")))?
            .install(|| run(spec)),
        None => run(spec),
    }
}

/// Entry point of the binary. Exit status 0 means every requested computation
/// and check succeeded, 1 a failed check, 2 an error.
pub fn main_with(cli: Cli) -> ExitCode {
    let outcome = prepare(cli).and_then(|(spec, threads)| Ok((execute(&spec, threads)?, spec.format)));
    match outcome {
        Ok((report, format)) => {
            let text = match format {
                Format::Text => render_text(&report),
                Format::Json => render_json(&report),
            };
            let _ = writeln!(std::io::stdout().lock(), "{}", text.trim_end());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("lyub: {e}");
            ExitCode::from(2)
        }
    }
}

pub fn main() -> ExitCode {
    main_with(Cli::parse())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syntax_position(text: &str) -> (usize, usize) {
        match parse_input(text) {
            Err(Error::Syntax { line, column, .. }) => (line, column),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn generators_and_primes_agree() {
        let a = parse_input("n=4; gens: x1*x2, x1*x4, x2*x3, x3*x4;").unwrap();
        let b = parse_input("n=4;\nprimes: {1,3},{2,4};").unwrap();
        assert_eq!(a.ideal, b.ideal);
        assert_eq!(a.form, IdealForm::Gens);
        assert_eq!(b.form, IdealForm::Primes);
    }

    #[test]
    fn comments_and_defaults() {
        let s = parse_input("# a_4\nn=4; # four variables\ngens: x1*x3, x2*x4;\n").unwrap();
        assert_eq!(s.field, FieldSpec::Rationals);
        assert_eq!(s.format, Format::Text);
        assert!(!s.check && s.r.is_none() && s.computations.is_empty());
    }

    #[test]
    fn repeated_variable_is_rejected_at_its_position() {
        assert_eq!(syntax_position("n=4; gens: x1*x1*x2;"), (1, 15));
        assert_eq!(syntax_position("n=4;\nprimes: {1,1};"), (2, 12));
    }

    #[test]
    fn out_of_range_variable_and_missing_n() {
        assert_eq!(syntax_position("n=3;\ngens: x1*x4;"), (2, 10));
        assert_eq!(syntax_position("gens: x1;"), (1, 1));
        assert_eq!(syntax_position("n=0;"), (1, 3));
    }

    #[test]
    fn malformed_statements() {
        assert_eq!(syntax_position("n=4 gens: x1;"), (1, 5));
        assert_eq!(syntax_position("n=4; gens: x1, ;"), (1, 16));
        assert_eq!(syntax_position("n=4; gens: x1; primes: {1};"), (1, 16));
        assert_eq!(syntax_position("n=4; n=4;"), (1, 6));
        assert_eq!(syntax_position("n=4; gens: x1; field=fp:4;"), (1, 22));
        assert_eq!(syntax_position("n=4; gens: x1; frobnicate;"), (1, 16));
        assert!(matches!(parse_input("n=4;"), Err(Error::Input(_))));
    }

    #[test]
    fn render_round_trips() {
        for text in [
            "n=5; primes: {1,3},{1,4},{2,4},{2,5},{3,5};",
            "n=4; gens: x1*x2*x3, x1*x2; field=fp:3; r=2; format=json; check; compute: bass, table, bass;",
        ] {
            let spec = parse_input(text).unwrap();
            let rendered = render_spec(&spec).unwrap();
            assert_eq!(parse_input(&rendered).unwrap(), spec, "{rendered}");
        }
    }

    #[test]
    fn text_and_json_carry_the_same_table() {
        let mut spec = parse_input("n=4; primes: {1,3},{2,4};").unwrap();
        spec.computations = vec![Computation::Table];
        let report = run(&spec).unwrap();
        assert_eq!(report.lyubeznik, Some(vec![vec![0, 1, 0], vec![0, 0], vec![2]]));
        assert!(render_text(&report).contains("0 1 0\n  0 0\n    2\n"));
        let json: serde_json::Value = serde_json::from_str(&render_json(&report)).unwrap();
        assert_eq!(json["lyubeznik"], serde_json::json!([[0, 1, 0], [0, 0], [2]]));
    }

    #[test]
    fn json_keys_keep_their_order() {
        let mut spec = parse_input("n=4; primes: {1,3},{2,4};").unwrap();
        spec.computations = vec![Computation::Bass, Computation::Table];
        let json = render_json(&run(&spec).unwrap());
        let keys: Vec<usize> = ["\"n\"", "\"field\"", "\"lyubeznik\"", "\"bass\"", "\"alpha\"", "\"mu\""]
            .iter()
            .map(|k| json.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{json}");
    }

    #[test]
    fn r_above_n_is_an_input_error() {
        let mut spec = parse_input("n=3; gens: x1*x2;").unwrap();
        spec.r = Some(4);
        spec.computations = vec![Computation::Bass];
        assert!(matches!(run(&spec), Err(Error::Input(_))));
    }
}
