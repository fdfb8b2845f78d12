//! Command line front end. [`execute`] does the work and returns the text
//! to print with a success flag, so it can be driven from tests.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::compare::{check_level_zero, compare_higher, ComparisonReport};
use crate::error::{Error, Result};
use crate::modp_reps::{
    correspond_character, modp_correspondence, ModPIrrep, RepMultiset, Side,
};
use crate::oracle::{
    enumerate_coset_space, oracle_verify_reduction, weil_oracle_verify, DEFAULT_BUDGET,
};
use crate::reduction::{dim_pi, reduce_pi, reduce_r};
use crate::tame_chars::{admissible_delta_values, AdmissiblePair, CharGroup, ExtKind, FieldParams, TameChar};
use crate::value_algebra::RootOfUnity;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "quatmodp", version, about = "Mod p representations of D^x and W_F")]
pub struct Cli {
    /// Output format; json by default, csv for `table`.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    #[value(name = "D")]
    D,
    #[value(name = "W")]
    W,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Cosets,
    Brauer,
    Weil,
    Batteries,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Residue characteristic.
    #[arg(long)]
    pub p: Option<u64>,
    /// Residue degree, so that q = p^f.
    #[arg(long)]
    pub f: Option<u32>,
    /// Residue field size (alternative to --p/--f).
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// unram or ram.
    #[arg(long)]
    pub ext: ExtKind,
    /// Level n of the representation of D^x.
    #[arg(long)]
    pub level: u32,
    /// Tame data of χ as exp:a/n.
    #[arg(long)]
    pub chi: String,
    /// Character of F^x to twist by, as exp:a/n.
    #[arg(long)]
    pub twist: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List irreducible mod p representations with bounded uniformizer order.
    Classify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = SideArg::D)]
        side: SideArg,
        /// Largest order of the value at a uniformizer.
        #[arg(long, default_value_t = 1)]
        max_order: u64,
    },
    /// Semisimplified reduction of the representation of D^x.
    ReducePi(PairArgs),
    /// Semisimplified reduction of the Weil group representation.
    ReduceR(PairArgs),
    /// Image of a mod p Weil representation under the correspondence.
    Correspond {
        #[command(flatten)]
        field: FieldArgs,
        /// Two-dimensional ρ_ξ, given by ξ on E^x unramified, as exp:a/n.
        #[arg(long, conflicts_with = "phi")]
        xi: Option<String>,
        /// Character φ∘Art of W_F, given by φ on F^x, as exp:a/n.
        #[arg(long)]
        phi: Option<String>,
    },
    /// Compare both reductions and run the checks for the case.
    Compare {
        #[command(flatten)]
        pair: PairArgs,
        /// Value Δ_χ(ϖ_E) for ramified pairs, as a/n.
        #[arg(long)]
        delta_ram: Option<RootOfUnity>,
    },
    /// One comparison per admissible tame datum, as CSV.
    Table {
        #[command(flatten)]
        field: FieldArgs,
        /// Sweep all tame data (the only mode).
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 4)]
        max_n: u32,
        #[arg(long, default_value_t = 2)]
        max_order: u64,
    },
    /// Run the verification suites; exit status 0 iff all pass.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 4)]
        max_n: u32,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Cap on the order of the finite groups enumerated.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 4)]
        max_order: u64,
    },
}

impl FieldArgs {
    pub fn resolve(&self) -> Result<FieldParams> {
        let from_pf = match (self.p, self.f) {
            (Some(p), f) => Some(FieldParams::new(p, f.unwrap_or(1))?),
            (None, Some(_)) => return Err(Error::Parse("--f needs --p".into())),
            (None, None) => None,
        };
        match (self.q, from_pf) {
            (Some(q), Some(k)) if k.q() != q => Err(Error::Parse(format!(
                "--q {q} disagrees with --p {} --f {}",
                k.p(),
                k.f()
            ))),
            (Some(q), _) => FieldParams::from_q(q),
            (None, Some(k)) => Ok(k),
            (None, None) => Err(Error::Parse("give --p (and --f) or --q".into())),
        }
    }
}

fn parse_char(field: FieldParams, group: CharGroup, s: &str) -> Result<TameChar> {
    let (exp, w) = TameChar::parse_data(s)?;
    Ok(TameChar::modp(field, group, exp, w))
}

impl PairArgs {
    pub fn pair(&self) -> Result<AdmissiblePair> {
        let field = self.field.resolve()?;
        let (exp, w) = TameChar::parse_data(&self.chi)?;
        AdmissiblePair::from_level(field, self.ext, self.level, exp, w)
    }

    pub fn twist(&self) -> Result<Option<TameChar>> {
        let field = self.field.resolve()?;
        self.twist
            .as_deref()
            .map(|s| {
                let (exp, w) = TameChar::parse_data(s)?;
                Ok(TameChar::zero(field, CharGroup::Fmult, exp, w, 0))
            })
            .transpose()
    }
}

/// What a command produced: text for standard output and whether the
/// command counts as successful.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub success: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, success: true }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn csv_string(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).expect("in memory");
    }
    String::from_utf8(w.into_inner().expect("in memory")).expect("utf8")
}

fn multiset_out(ms: &RepMultiset, format: Format) -> String {
    match format {
        Format::Json => to_json(ms),
        Format::Pretty => format!("{ms}\ntotal dimension {}", ms.total_dimension()),
        Format::Csv => {
            let mut rows = vec![vec!["label".into(), "mult".into(), "dim".into(), "nonsplit".into()]];
            for (l, m) in ms.iter() {
                rows.push(vec![l.to_string(), m.to_string(), l.dim().to_string(), ms.is_nonsplit(l).to_string()]);
            }
            csv_string(rows)
        }
    }
}

fn opt_label(l: &Option<ModPIrrep>) -> String {
    l.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn report_out(rep: &ComparisonReport, format: Format) -> String {
    match format {
        Format::Json => to_json(rep),
        Format::Csv => csv_string(vec![table_header(), table_row(rep)]),
        Format::Pretty => {
            let mut s = format!(
                "{} level {} χ = {} [{}]\nR̄ = {}\nΠ̄ = {}\nimage {} (occurs: {})\nselector {} (unique: {})\n",
                rep.pair.ext(),
                rep.pair.n(),
                rep.pair.chi(),
                rep.case_tag,
                rep.r_red,
                rep.pi_red,
                opt_label(&rep.image_label),
                rep.occurs,
                opt_label(&rep.selector_result),
                rep.selector_unique
            );
            for c in &rep.checks {
                s.push_str(&format!("  {} {}\n", if c.passed { "ok  " } else { "FAIL" }, c.name));
            }
            for n in &rep.notes {
                s.push_str(&format!("  note: {n}\n"));
            }
            s
        }
    }
}

fn table_header() -> Vec<String> {
    [
        "ext", "level", "chi_exp", "chi_w", "case_tag", "r_red", "pi_red", "image", "occurs", "selector",
        "selector_unique",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

fn table_row(rep: &ComparisonReport) -> Vec<String> {
    vec![
        rep.pair.ext().to_string(),
        rep.pair.n().to_string(),
        rep.pair.chi().residue_exp().to_string(),
        rep.pair.chi().unif_val().to_string(),
        rep.case_tag.to_string(),
        rep.r_red.to_string(),
        rep.pi_red.to_string(),
        opt_label(&rep.image_label),
        rep.occurs.to_string(),
        opt_label(&rep.selector_result),
        rep.selector_unique.to_string(),
    ]
}

/// Every admissible minimal pair of level `n` whose uniformizer value has
/// order at most `max_order`.
pub fn admissible_pairs(field: FieldParams, n: u32, max_order: u64) -> Vec<AdmissiblePair> {
    let (ext, modulus) = if n % 2 == 0 {
        (ExtKind::Unramified, field.e_order())
    } else {
        (ExtKind::RamifiedTame, field.f_order())
    };
    let mut out = Vec::new();
    for exp in 0..modulus {
        for w in RootOfUnity::of_order_at_most(max_order) {
            if let Ok(p) = AdmissiblePair::from_level(field, ext, n, exp, w) {
                out.push(p);
            }
        }
    }
    out
}

fn comparison(pair: &AdmissiblePair, delta_ram: Option<&RootOfUnity>) -> Result<ComparisonReport> {
    if pair.n() == 0 {
        check_level_zero(pair)
    } else {
        compare_higher(pair, delta_ram)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub side: Side,
    pub q: u64,
    pub max_order: u64,
    pub two_dim: usize,
    pub one_dim: usize,
    pub labels: Vec<ModPIrrep>,
}

/// All irreducible mod `p` representations whose uniformizer values have
/// order at most `max_order` (after reduction).
pub fn classify(field: FieldParams, side: Side, max_order: u64) -> Result<ClassifyReport> {
    let roots: std::collections::BTreeSet<RootOfUnity> = RootOfUnity::of_order_at_most(max_order)
        .into_iter()
        .map(|w| w.reduce_mod_p(field.p()))
        .collect();
    let mut labels = std::collections::BTreeSet::new();
    for w in &roots {
        for a in 0..field.e_order() {
            let xi = TameChar::modp(field, CharGroup::Eunram, a, w.clone());
            if xi.is_regular(ExtKind::Unramified)? {
                labels.insert(ModPIrrep::two_dim(side, &xi)?);
            }
        }
        for c in 0..field.f_order() {
            let phi = TameChar::modp(field, CharGroup::Fmult, c, w.clone());
            labels.insert(ModPIrrep::one_dim(side, &phi)?);
        }
    }
    let labels: Vec<ModPIrrep> = labels.into_iter().collect();
    let two_dim = labels.iter().filter(|l| l.dim() == 2).count();
    Ok(ClassifyReport {
        side,
        q: field.q(),
        max_order,
        two_dim,
        one_dim: labels.len() - two_dim,
        labels,
    })
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        SuiteResult {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub q: u64,
    pub max_n: u32,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

fn suite_cosets(field: FieldParams, max_n: u32) -> SuiteResult {
    let mut s = SuiteResult::new("cosets");
    for n in 1..=max_n {
        let ext = if n % 2 == 0 { ExtKind::Unramified } else { ExtKind::RamifiedTame };
        match enumerate_coset_space(field, ext, n) {
            Ok(r) => {
                s.checked += 1;
                if !r.counts_match() {
                    s.failures.push(format!("n={n}: {} double cosets, expected {}", r.double_cosets, r.expected_double_cosets));
                }
                if !r.action_free() {
                    s.failures.push(format!("n={n}: {} fixed non-identity cosets", r.fixed_nonidentity));
                }
            }
            Err(_) => s.skipped += 1,
        }
    }
    s
}

fn suite_reductions(field: FieldParams, max_n: u32, max_order: u64) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("dimensions and central characters");
    for n in 0..=max_n {
        for pair in admissible_pairs(field, n, max_order) {
            s.checked += 1;
            let ms = match reduce_pi(&pair, None) {
                Ok(ms) => ms,
                Err(e) => {
                    s.failures.push(format!("n={n} {}: {e}", pair.chi()));
                    continue;
                }
            };
            if ms.total_dimension() != dim_pi(&pair) {
                s.failures.push(format!("n={n} {}: dimension {}", pair.chi(), ms.total_dimension()));
            }
            let centrals: std::collections::BTreeSet<TameChar> =
                ms.labels().map(ModPIrrep::central_character).collect();
            let want = pair.chi().reduce_char().restrict_to_f()?;
            if centrals.len() != 1 || !centrals.contains(&want) {
                s.failures.push(format!("n={n} {}: central characters {centrals:?}, expected {want}", pair.chi()));
            }
            if let Ok(r) = reduce_r(&pair, None) {
                if r.total_dimension() != 2 {
                    s.failures.push(format!("n={n} {}: R̄ has dimension {}", pair.chi(), r.total_dimension()));
                }
            }
        }
    }
    Ok(s)
}

fn suite_brauer(field: FieldParams, max_n: u32, max_order: u64, budget: u64) -> SuiteResult {
    let mut s = SuiteResult::new("brauer");
    if !field.odd() {
        s.skipped += 1;
        return s;
    }
    for n in 0..=max_n {
        for pair in admissible_pairs(field, n, max_order) {
            match oracle_verify_reduction(&pair, budget) {
                Ok(r) => {
                    s.checked += 1;
                    if !r.passed {
                        s.failures.push(format!("n={n} {}: {} classes differ", pair.chi(), r.diffs.len()));
                    }
                }
                Err(Error::Budget { .. }) => s.skipped += 1,
                Err(e) => s.failures.push(format!("n={n} {}: {e}", pair.chi())),
            }
        }
    }
    s
}

fn suite_weil(field: FieldParams, max_order: u64) -> SuiteResult {
    let mut s = SuiteResult::new("weil");
    let mut xis = std::collections::BTreeSet::new();
    for a in 0..field.e_order() {
        for w in RootOfUnity::of_order_at_most(max_order) {
            xis.insert(TameChar::modp(field, CharGroup::Eunram, a, w.reduce_mod_p(field.p())));
        }
    }
    for xi in xis {
        match weil_oracle_verify(&xi) {
            Ok(r) => {
                s.checked += 1;
                if !r.passed {
                    s.failures.push(format!("{xi}"));
                }
            }
            Err(e) => s.failures.push(format!("{xi}: {e}")),
        }
    }
    s
}

fn suite_batteries(field: FieldParams, max_n: u32, max_order: u64) -> SuiteResult {
    let mut s = SuiteResult::new("batteries");
    for n in 0..=max_n {
        let deltas: Vec<Option<RootOfUnity>> = if n % 2 == 1 && field.odd() {
            admissible_delta_values(field).map(|v| v.into_iter().map(Some).collect()).unwrap_or_default()
        } else {
            vec![None]
        };
        for pair in admissible_pairs(field, n, max_order) {
            for d in &deltas {
                match comparison(&pair, d.as_ref()) {
                    Ok(rep) => {
                        s.checked += 1;
                        for f in rep.failures() {
                            s.failures.push(format!("n={n} {} {}: {}", pair.chi(), opt_root(d), f.name));
                        }
                    }
                    Err(e) => s.failures.push(format!("n={n} {}: {e}", pair.chi())),
                }
            }
        }
    }
    s
}

fn opt_root(d: &Option<RootOfUnity>) -> String {
    d.as_ref().map(|d| format!("Δ={d}")).unwrap_or_default()
}

pub fn verify(field: FieldParams, max_n: u32, suite: Suite, budget: u64, max_order: u64) -> VerifyReport {
    let mut suites = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Cosets {
        suites.push(suite_cosets(field, max_n));
    }
    if all {
        suites.push(suite_reductions(field, max_n, max_order).unwrap_or_else(|e| SuiteResult {
            failures: vec![e.to_string()],
            ..SuiteResult::new("dimensions and central characters")
        }));
    }
    if all || suite == Suite::Brauer {
        suites.push(suite_brauer(field, max_n, max_order, budget));
    }
    if all || suite == Suite::Weil {
        suites.push(suite_weil(field, max_order));
    }
    if all || suite == Suite::Batteries {
        suites.push(suite_batteries(field, max_n, max_order));
    }
    VerifyReport {
        q: field.q(),
        max_n,
        passed: suites.iter().all(SuiteResult::passed),
        suites,
    }
}

/// Run one parsed command.
pub fn execute(cli: &Cli) -> Result<Output> {
    let format = cli.format.unwrap_or(match cli.command {
        Command::Table { .. } => Format::Csv,
        _ => Format::Json,
    });
    match &cli.command {
        Command::Classify { field, side, max_order } => {
            let side = match side {
                SideArg::D => Side::D,
                SideArg::W => Side::W,
            };
            let rep = classify(field.resolve()?, side, *max_order)?;
            Ok(Output::ok(match format {
                Format::Json => to_json(&rep),
                Format::Csv => {
                    let mut rows = vec![vec!["label".to_string(), "dim".to_string()]];
                    rows.extend(rep.labels.iter().map(|l| vec![l.to_string(), l.dim().to_string()]));
                    csv_string(rows)
                }
                Format::Pretty => {
                    let mut s = format!("{} two-dimensional, {} characters\n", rep.two_dim, rep.one_dim);
                    for l in &rep.labels {
                        s.push_str(&format!("{l}\n"));
                    }
                    s
                }
            }))
        }
        Command::ReducePi(args) => {
            let ms = reduce_pi(&args.pair()?, args.twist()?.as_ref())?;
            Ok(Output::ok(multiset_out(&ms, format)))
        }
        Command::ReduceR(args) => {
            let ms = reduce_r(&args.pair()?, args.twist()?.as_ref())?;
            Ok(Output::ok(multiset_out(&ms, format)))
        }
        Command::Correspond { field, xi, phi } => {
            let k = field.resolve()?;
            let from = match (xi, phi) {
                (Some(s), _) => ModPIrrep::two_dim(Side::W, &parse_char(k, CharGroup::Eunram, s)?)?,
                (None, Some(s)) => ModPIrrep::one_dim(Side::W, &parse_char(k, CharGroup::Fmult, s)?)?,
                (None, None) => return Err(Error::Parse("give --xi or --phi".into())),
            };
            let to = match from.dim() {
                2 => modp_correspondence(&from)?,
                _ => correspond_character(&from)?,
            };
            Ok(Output::ok(match format {
                Format::Json => to_json(&json!({ "from": from, "to": to })),
                Format::Csv => csv_string(vec![
                    vec!["from".into(), "to".into()],
                    vec![from.to_string(), to.to_string()],
                ]),
                Format::Pretty => format!("{from} -> {to}\n"),
            }))
        }
        Command::Compare { pair, delta_ram } => {
            let p = pair.pair()?;
            if p.ext() == ExtKind::RamifiedTame && delta_ram.is_none() {
                return Err(Error::Parse("ramified pairs need --delta-ram a/n".into()));
            }
            let mut rep = comparison(&p, delta_ram.as_ref())?;
            if let Some(t) = pair.twist()? {
                rep = rep.twisted(&t.reduce_char())?;
            }
            Ok(Output {
                text: report_out(&rep, format),
                success: true,
            })
        }
        Command::Table { field, sweep, max_n, max_order } => {
            if !sweep {
                return Err(Error::Parse("table needs --sweep".into()));
            }
            let k = field.resolve()?;
            let mut rows = vec![table_header()];
            let mut reports = Vec::new();
            for n in 0..=*max_n {
                let d = if n % 2 == 1 {
                    admissible_delta_values(k)?.into_iter().next()
                } else {
                    None
                };
                for pair in admissible_pairs(k, n, *max_order) {
                    let rep = comparison(&pair, d.as_ref())?;
                    rows.push(table_row(&rep));
                    reports.push(rep);
                }
            }
            Ok(Output::ok(match format {
                Format::Json => to_json(&reports),
                _ => csv_string(rows),
            }))
        }
        Command::Verify { field, max_n, suite, budget, max_order } => {
            let rep = verify(field.resolve()?, *max_n, *suite, *budget, *max_order);
            let text = match format {
                Format::Pretty => rep
                    .suites
                    .iter()
                    .map(|s| {
                        format!(
                            "{} {}: {} checked, {} skipped\n",
                            if s.passed() { "PASS" } else { "FAIL" },
                            s.name,
                            s.checked,
                            s.skipped
                        )
                    })
                    .collect(),
                _ => to_json(&rep),
            };
            Ok(Output {
                text,
                success: rep.passed,
            })
        }
    }
}

/// Parse arguments, run, print, and return the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            if !out.text.ends_with('\n') {
                let _ = stdout.write_all(b"\n");
            }
            if out.success {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
