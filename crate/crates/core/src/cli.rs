//! Command implementations behind the `euler-refine` binary. Each command
//! returns its rendered output so it can be tested without a process.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bij::{
    check_maxmin_bijection, check_maxmin_round_trip, check_smu_round_trip, check_swap_involution,
    BijectionCheck,
};
use crate::error::{Error, Result};
use crate::perm::{count_kind, count_refinements, enumerate_alternating, AltKind, KindCounts};
use crate::report::{Method, ReportSet, VerifyReport};
use crate::seq::{euler_numbers, theorem_check_with, CountTable, Refinements};
use crate::series::{sec_egf, sec_plus_tan, tan_egf, RefinementEgfs, TruncatedEgf};

pub const DEFAULT_CAP: usize = 11;
pub const CAP_ENV: &str = "EULER_REFINE_CAP";
pub const FORMULA_SOFT_CAP: usize = 200;
pub const CONJECTURE_MIN_PREFIX: usize = 8;

/// Enumeration cap: explicit flag, then `EULER_REFINE_CAP`, then 11.
pub fn enumeration_cap(flag: Option<usize>) -> Result<usize> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("{CAP_ENV}='{v}' is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn check_cap(max_n: usize, cap: usize) -> Result<()> {
    if max_n > cap {
        return Err(Error::CapExceeded { max_n, cap });
    }
    Ok(())
}

macro_rules! cli_enum {
    ($name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum $name { $($variant),+ }

        impl $name {
            pub fn as_str(self) -> &'static str {
                match self { $($name::$variant => $text),+ }
            }
        }

        impl FromStr for $name {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text => Ok($name::$variant),)+
                    _ => Err(Error::Usage(format!(
                        concat!("invalid ", stringify!($name), " '{}'; expected one of: {}"),
                        s,
                        [$($text),+].join(", ")
                    ))),
                }
            }
        }
    };
}

cli_enum!(TableMethod { Enum => "enum", Formula => "formula", Egf => "egf", All => "all" });
cli_enum!(Format { Table => "table", Json => "json", Csv => "csv", Bfile => "bfile" });
cli_enum!(Population { UpDown => "up-down", DownUp => "down-up", Alternating => "alternating" });

/// The sequences that `export` knows by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceName {
    E,
    Ene,
    Enw,
    Eup,
    Edown,
    Dup,
    Ddown,
}

impl SequenceName {
    pub const ALL: [SequenceName; 7] = [
        SequenceName::E,
        SequenceName::Ene,
        SequenceName::Enw,
        SequenceName::Eup,
        SequenceName::Edown,
        SequenceName::Dup,
        SequenceName::Ddown,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SequenceName::E => "E",
            SequenceName::Ene => "Ene",
            SequenceName::Enw => "Enw",
            SequenceName::Eup => "Eup",
            SequenceName::Edown => "Edown",
            SequenceName::Dup => "Dup",
            SequenceName::Ddown => "Ddown",
        }
    }

    /// First index of the exported sequence.
    pub fn offset(self) -> usize {
        match self {
            SequenceName::E => 0,
            _ => 2,
        }
    }
}

impl FromStr for SequenceName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|q| q.as_str() == s)
            .ok_or_else(|| Error::UnknownSequence(s.to_string()))
    }
}

// ---------------------------------------------------------------- table

#[derive(Debug, Clone)]
pub struct TableOptions {
    pub max_n: usize,
    pub method: TableMethod,
    pub population: Population,
    pub with_d: bool,
    pub cap: usize,
    pub format: Format,
}

impl Default for TableOptions {
    fn default() -> Self {
        Self {
            max_n: 9,
            method: TableMethod::Formula,
            population: Population::UpDown,
            with_d: false,
            cap: DEFAULT_CAP,
            format: Format::Table,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub counts: CountTable,
}

fn formula_tables(max_n: usize) -> Result<Vec<CountTable>> {
    let r = Refinements::new(max_n);
    (2..=max_n).map(|n| r.table(n)).collect()
}

fn egf_tables(max_n: usize) -> Result<Vec<CountTable>> {
    let order = max_n - 2;
    let e = sec_plus_tan(max_n).extract_counts()?;
    let egfs = RefinementEgfs::new(order);
    let cols = [
        egfs.min_max.extract_counts()?,
        egfs.max_min.extract_counts()?,
        egfs.second_max_upper.extract_counts()?,
        egfs.second_max_lower.extract_counts()?,
    ];
    let nat = |v: &BigInt| v.to_biguint().expect("counts are nonnegative");
    Ok((2..=max_n)
        .map(|n| CountTable {
            n,
            e: nat(&e[n]),
            ene: nat(&cols[0][n - 2]),
            enw: nat(&cols[1][n - 2]),
            eup: nat(&cols[2][n - 2]),
            edown: nat(&cols[3][n - 2]),
            dup: None,
            ddown: None,
        })
        .collect())
}

fn enum_tables(max_n: usize) -> Result<Vec<CountTable>> {
    (2..=max_n).into_par_iter().map(count_refinements).collect()
}

fn agree(n: usize, column: &'static str, a: &BigUint, b: &BigUint, what: &str) -> Result<()> {
    if a != b {
        return Err(Error::RouteDisagreement { n, column, detail: format!("{what}: {a} vs {b}") });
    }
    Ok(())
}

fn apply_population(t: &mut CountTable, population: Population) {
    match population {
        Population::UpDown => {}
        // Complementation swaps min-max and max-min between the two kinds.
        Population::DownUp => std::mem::swap(&mut t.ene, &mut t.enw),
        Population::Alternating => {
            let total = &t.ene + &t.enw;
            t.ene = total.clone();
            t.enw = total;
        }
    }
}

pub fn table_rows(opts: &TableOptions) -> Result<Vec<TableRow>> {
    if opts.max_n < 2 {
        return Err(Error::Usage("--max-n must be at least 2".into()));
    }
    let uses_enum = matches!(opts.method, TableMethod::Enum | TableMethod::All) || opts.with_d;
    if uses_enum {
        check_cap(opts.max_n, opts.cap)?;
    } else if opts.max_n > FORMULA_SOFT_CAP {
        return Err(Error::Usage(format!("--max-n above {FORMULA_SOFT_CAP} is not supported")));
    }
    let mut tables = match opts.method {
        TableMethod::Formula => formula_tables(opts.max_n)?,
        TableMethod::Egf => egf_tables(opts.max_n)?,
        TableMethod::Enum => enum_tables(opts.max_n)?,
        TableMethod::All => {
            let formula = formula_tables(opts.max_n)?;
            let egf = egf_tables(opts.max_n)?;
            let brute = enum_tables(opts.max_n)?;
            for ((f, g), b) in formula.iter().zip(&egf).zip(&brute) {
                for (col, fv, gv, bv) in [
                    ("E", &f.e, &g.e, &b.e),
                    ("E↗", &f.ene, &g.ene, &b.ene),
                    ("E↖", &f.enw, &g.enw, &b.enw),
                    ("E↑", &f.eup, &g.eup, &b.eup),
                    ("E↓", &f.edown, &g.edown, &b.edown),
                ] {
                    agree(f.n, col, fv, gv, "formula vs egf")?;
                    agree(f.n, col, fv, bv, "formula vs enumeration")?;
                }
            }
            brute
        }
    };
    if opts.with_d && opts.method != TableMethod::Enum && opts.method != TableMethod::All {
        let brute = enum_tables(opts.max_n)?;
        for (t, b) in tables.iter_mut().zip(brute) {
            t.dup = b.dup;
            t.ddown = b.ddown;
        }
    }
    if !opts.with_d {
        for t in &mut tables {
            t.dup = None;
            t.ddown = None;
        }
    }
    Ok(tables
        .into_iter()
        .map(|mut counts| {
            apply_population(&mut counts, opts.population);
            TableRow { n: counts.n, counts }
        })
        .collect())
}

fn render_grid(header: &[String], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            rows.iter().map(|r| r[c].chars().count()).chain([header[c].chars().count()]).max().unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let line = |cells: &[String], out: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{}{}", " ".repeat(w - c.chars().count()), c))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header, &mut out);
    for r in rows {
        line(r, &mut out);
    }
    out
}

#[derive(Serialize)]
struct JsonRow {
    n: usize,
    #[serde(rename = "E")]
    e: String,
    #[serde(rename = "Ene")]
    ene: String,
    #[serde(rename = "Enw")]
    enw: String,
    #[serde(rename = "Eup")]
    eup: String,
    #[serde(rename = "Edown")]
    edown: String,
    #[serde(rename = "Dup", skip_serializing_if = "Option::is_none")]
    dup: Option<String>,
    #[serde(rename = "Ddown", skip_serializing_if = "Option::is_none")]
    ddown: Option<String>,
}

pub fn cmd_table(opts: &TableOptions) -> Result<String> {
    let rows = table_rows(opts)?;
    let tag = opts.method.as_str();
    let mut header: Vec<String> =
        ["E", "E↗", "E↖", "E↑", "E↓"].iter().map(|c| format!("{c}[{tag}]")).collect();
    header.insert(0, "n".into());
    if opts.with_d {
        header.push("D↑[enum]".into());
        header.push("D↓[enum]".into());
    }
    let cells = |r: &TableRow| {
        let c = &r.counts;
        let mut v = vec![
            r.n.to_string(),
            c.e.to_string(),
            c.ene.to_string(),
            c.enw.to_string(),
            c.eup.to_string(),
            c.edown.to_string(),
        ];
        if opts.with_d {
            v.push(c.dup.as_ref().map(ToString::to_string).unwrap_or_default());
            v.push(c.ddown.as_ref().map(ToString::to_string).unwrap_or_default());
        }
        v
    };
    match opts.format {
        Format::Table => {
            let body: Vec<Vec<String>> = rows.iter().map(cells).collect();
            let mut out = format!(
                "# methods: enum = enumeration, formula = convolution/recurrence, egf = series extraction, all = three routes agree\n# E↗/E↖ population: {}\n",
                opts.population.as_str()
            );
            out.push_str(&render_grid(&header, &body));
            Ok(out)
        }
        Format::Csv => {
            let mut out = String::new();
            let plain: Vec<&str> = ["n", "E", "Ene", "Enw", "Eup", "Edown", "Dup", "Ddown"]
                .into_iter()
                .take(header.len())
                .collect();
            let _ = writeln!(out, "{}", plain.join(","));
            for r in &rows {
                let _ = writeln!(out, "{}", cells(r).join(","));
            }
            Ok(out)
        }
        Format::Json => {
            let json: Vec<JsonRow> = rows
                .iter()
                .map(|r| {
                    let c = &r.counts;
                    JsonRow {
                        n: r.n,
                        e: c.e.to_string(),
                        ene: c.ene.to_string(),
                        enw: c.enw.to_string(),
                        eup: c.eup.to_string(),
                        edown: c.edown.to_string(),
                        dup: c.dup.as_ref().map(ToString::to_string),
                        ddown: c.ddown.as_ref().map(ToString::to_string),
                    }
                })
                .collect();
            Ok(serde_json::to_string_pretty(&json).expect("serializable") + "\n")
        }
        Format::Bfile => Err(Error::Usage("bfile output applies to `export`, not `table`".into())),
    }
}

// --------------------------------------------------------------- verify

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_n: usize,
    pub egf_order: usize,
    pub cap: usize,
    /// Replaces the Euler numbers fed to every formula. Test hook for the
    /// failure path; it must cover `E_0..=max(max_n, egf_order + 2)`.
    pub euler_override: Option<Vec<BigUint>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { max_n: 10, egf_order: 20, cap: DEFAULT_CAP, euler_override: None }
    }
}

pub const ANDRE_ENUM: &str = "E_n: Seidel triangle = #up-down permutations";
pub const ANDRE_EGF: &str = "E_n: Seidel triangle = n![x^n](sec x + tan x)";
pub const EGF_SUM: &str = "E↗(x) + E↖(x) = E↑(x) + E↓(x)";

struct Refinement {
    name: &'static str,
    formula: fn(&Refinements, usize) -> Result<BigUint>,
    brute: fn(&CountTable) -> &BigUint,
    egf: fn(&RefinementEgfs) -> &TruncatedEgf,
    egf_text: &'static str,
}

const REFINEMENTS: [Refinement; 4] = [
    Refinement {
        name: "E↗",
        formula: |r, n| Ok(r.e_ne_nw(n)?.0),
        brute: |t| &t.ene,
        egf: |g| &g.min_max,
        egf_text: "sec^2 x (sec x + tan x)",
    },
    Refinement {
        name: "E↖",
        formula: |r, n| Ok(r.e_ne_nw(n)?.1),
        brute: |t| &t.enw,
        egf: |g| &g.max_min,
        egf_text: "sec x tan x (sec x + tan x)",
    },
    Refinement {
        name: "E↑",
        formula: |r, n| r.e_up(n),
        brute: |t| &t.eup,
        egf: |g| &g.second_max_upper,
        egf_text: "2 tan^2 x (sec x + tan x)",
    },
    Refinement {
        name: "E↓",
        formula: |r, n| r.e_down(n),
        brute: |t| &t.edown,
        egf: |g| &g.second_max_lower,
        egf_text: "sec x + 2 tan x",
    },
];

/// Three-way checks (enumeration, formula, EGF) of every identity.
/// Failures are recorded in the returned reports, never raised.
pub fn cmd_verify(opts: &VerifyOptions) -> Result<ReportSet> {
    if opts.max_n < 2 {
        return Err(Error::Usage("--max-n must be at least 2".into()));
    }
    check_cap(opts.max_n, opts.cap)?;
    let formula_max = opts.max_n.max(opts.egf_order + 2);
    let r = match &opts.euler_override {
        Some(prefix) => Refinements::from_euler_prefix(prefix.clone()),
        None => Refinements::new(formula_max),
    };
    r.euler(formula_max)?;
    let big = |v: &BigUint| BigInt::from(v.clone());
    let (en, fo, eg) = ([Method::Enumeration], [Method::Formula], [Method::Egf]);

    let brute = enum_tables(opts.max_n)?;
    let mut set = ReportSet::default();

    let mut andre_enum = VerifyReport::new(ANDRE_ENUM, &fo, &en);
    for n in 1..=opts.max_n {
        let count = enumerate_alternating(n, AltKind::UpDown).count();
        andre_enum.push(n, big(r.euler(n)?), count);
    }
    set.push(andre_enum);

    let mut andre_egf = VerifyReport::new(ANDRE_EGF, &fo, &eg);
    for (n, a) in sec_plus_tan(opts.egf_order).extract_counts()?.into_iter().enumerate() {
        andre_egf.push(n, big(r.euler(n)?), a);
    }
    set.push(andre_egf);

    let egfs = RefinementEgfs::new(opts.egf_order);
    for rf in &REFINEMENTS {
        let mut vs_enum = VerifyReport::new(format!("{}_n: formula = enumeration", rf.name), &fo, &en);
        for t in &brute {
            vs_enum.push(t.n, big(&(rf.formula)(&r, t.n)?), big((rf.brute)(t)));
        }
        set.push(vs_enum);
    }
    for rf in &REFINEMENTS {
        let mut vs_egf = VerifyReport::new(
            format!("{}_n: formula = n![x^(n-2)]({})", rf.name, rf.egf_text),
            &fo,
            &eg,
        );
        for (k, a) in (rf.egf)(&egfs).extract_counts()?.into_iter().enumerate() {
            vs_egf.push(k + 2, big(&(rf.formula)(&r, k + 2)?), a);
        }
        set.push(vs_egf);
    }

    let mut sum = VerifyReport::new(EGF_SUM, &eg, &eg);
    let left = egfs.min_max.add(&egfs.max_min)?.extract_counts()?;
    let right = egfs.second_max_upper.add(&egfs.second_max_lower)?.extract_counts()?;
    for (k, (a, b)) in left.into_iter().zip(right).enumerate() {
        sum.push(k + 2, a, b);
    }
    set.push(sum);

    let mut gap = VerifyReport::new("E↗_n − E↖_n = E_{n−2} (even n, enumerated)", &en, &fo);
    let mut odd_eq = VerifyReport::new("E↗_n = E↖_n (odd n, enumerated)", &en, &en);
    let mut twice = VerifyReport::new("E↑_n = 2E↖_n (even n, enumerated)", &en, &en);
    let mut part_ud = VerifyReport::new("E_n = E↑_n + E↓_n (enumerated)", &fo, &en);
    let mut part_mm = VerifyReport::new("E_n = E↗_n + E↖_n (enumerated)", &fo, &en);
    let mut part_d = VerifyReport::new("E_n = D↑_n + D↓_n (enumerated)", &fo, &en);
    let mut even_up = VerifyReport::new("E↑_n mod 2 = 0 (enumerated)", &en, &fo);
    for t in &brute {
        let n = t.n;
        if n % 2 == 0 {
            gap.push(n, big(&t.ene) - big(&t.enw), big(r.euler(n - 2)?));
            twice.push(n, big(&t.eup), big(&t.enw) * 2);
        } else {
            odd_eq.push(n, big(&t.ene), big(&t.enw));
        }
        part_ud.push(n, big(r.euler(n)?), big(&(&t.eup + &t.edown)));
        part_mm.push(n, big(r.euler(n)?), big(&(&t.ene + &t.enw)));
        let d = t.dup.clone().unwrap_or_default() + t.ddown.clone().unwrap_or_default();
        part_d.push(n, big(r.euler(n)?), big(&d));
        even_up.push(n, big(&t.eup) % 2, 0);
    }
    for rep in [gap, odd_eq, twice, part_ud, part_mm, part_d, even_up] {
        set.push(rep);
    }

    set.extend(theorem_check_with(&r, formula_max)?);
    Ok(set)
}

pub fn render_verify(set: &ReportSet, format: Format) -> Result<String> {
    match format {
        Format::Table => Ok(set.render_text()),
        Format::Json => Ok(serde_json::to_string_pretty(set).expect("serializable") + "\n"),
        Format::Csv => {
            let mut out = String::from("identity,n,left,right,pass\n");
            for r in &set.reports {
                for e in r.entries() {
                    let _ = writeln!(out, "\"{}\",{},{},{},{}", r.identity(), e.n, e.left, e.right, e.pass);
                }
            }
            Ok(out)
        }
        Format::Bfile => Err(Error::Usage("bfile output applies to `export`, not `verify`".into())),
    }
}

// --------------------------------------------------------------- ratios

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioRow {
    pub n: usize,
    pub ne: BigUint,
    pub nw: BigUint,
    pub up: BigUint,
    pub down: BigUint,
    pub nw_over_ne: BigRational,
    /// `None` where `E↑_n = 0` (n = 2, 3).
    pub down_over_up: Option<BigRational>,
}

fn ratio(a: &BigUint, b: &BigUint) -> Option<BigRational> {
    if b.is_zero() {
        None
    } else {
        Some(BigRational::new(BigInt::from(a.clone()), BigInt::from(b.clone())))
    }
}

pub fn ratio_rows(max_n: usize) -> Result<Vec<RatioRow>> {
    if max_n < 2 {
        return Err(Error::Usage("--max-n must be at least 2".into()));
    }
    if max_n > FORMULA_SOFT_CAP {
        return Err(Error::Usage(format!("--max-n above {FORMULA_SOFT_CAP} is not supported")));
    }
    let r = Refinements::new(max_n);
    (2..=max_n)
        .map(|n| {
            let (ne, nw) = r.e_ne_nw(n)?;
            let (up, down) = (r.e_up(n)?, r.e_down(n)?);
            Ok(RatioRow {
                n,
                nw_over_ne: ratio(&nw, &ne).expect("E↗_n > 0 for n >= 2"),
                down_over_up: ratio(&down, &up),
                ne,
                nw,
                up,
                down,
            })
        })
        .collect()
}

/// Whether `|E↖_n / E↗_n - 1|` never increases across the even `n` in
/// `lo..=hi` present in `rows`.
pub fn nw_ne_gap_nonincreasing(rows: &[RatioRow], lo: usize, hi: usize) -> bool {
    let one = BigRational::one();
    let gaps: Vec<BigRational> = rows
        .iter()
        .filter(|r| r.n % 2 == 0 && (lo..=hi).contains(&r.n))
        .map(|r| (&r.nw_over_ne - &one).abs())
        .collect();
    gaps.windows(2).all(|w| w[1] <= w[0])
}

/// Decimal rendering of a nonnegative rational to `digits` significant
/// digits, rounding half up.
pub fn format_significant(r: &BigRational, digits: usize) -> String {
    assert!(digits >= 1);
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let r = r.abs();
    let pow10 = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(BigInt::from(10).pow(e as u32))
        } else {
            BigRational::new(BigInt::one(), BigInt::from(10).pow((-e) as u32))
        }
    };
    let mut e = r.numer().to_string().len() as i64 - r.denom().to_string().len() as i64;
    while r < pow10(e) {
        e -= 1;
    }
    while r >= pow10(e + 1) {
        e += 1;
    }
    let scaled = &r * pow10(digits as i64 - 1 - e);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut rounded = (scaled + half).floor().to_integer();
    if rounded >= BigInt::from(10).pow(digits as u32) {
        rounded /= 10;
        e += 1;
    }
    let s = rounded.to_string();
    let body = if e >= digits as i64 - 1 {
        format!("{s}{}", "0".repeat((e - digits as i64 + 1) as usize))
    } else if e >= 0 {
        let cut = e as usize + 1;
        format!("{}.{}", &s[..cut], &s[cut..])
    } else {
        format!("0.{}{s}", "0".repeat((-e - 1) as usize))
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn render_ratio(num: &BigUint, den: &BigUint, q: Option<&BigRational>) -> String {
    match q {
        None => format!("{num}/{den} = undefined"),
        Some(q) if q.numer() == &BigInt::from(num.clone()) => {
            format!("{num}/{den} ≈ {}", format_significant(q, 10))
        }
        Some(q) => format!("{num}/{den} = {q} ≈ {}", format_significant(q, 10)),
    }
}

pub fn cmd_ratios(max_n: usize, format: Format) -> Result<String> {
    let rows = ratio_rows(max_n)?;
    match format {
        Format::Table => {
            let mut out = String::new();
            for (label, parity) in [("even n", 0), ("odd n", 1)] {
                let _ = writeln!(out, "# {label}");
                let body: Vec<Vec<String>> = rows
                    .iter()
                    .filter(|r| r.n % 2 == parity)
                    .map(|r| {
                        vec![
                            r.n.to_string(),
                            render_ratio(&r.nw, &r.ne, Some(&r.nw_over_ne)),
                            render_ratio(&r.down, &r.up, r.down_over_up.as_ref()),
                        ]
                    })
                    .collect();
                out.push_str(&render_grid(&["n".into(), "E↖/E↗".into(), "E↓/E↑".into()], &body));
            }
            let hi = rows.last().map(|r| r.n).unwrap_or(2);
            let _ = writeln!(
                out,
                "# |E↖/E↗ - 1| nonincreasing over even n in 4..={hi}: {}",
                nw_ne_gap_nonincreasing(&rows, 4, hi)
            );
            Ok(out)
        }
        Format::Json | Format::Csv => {
            let mut out = String::new();
            if format == Format::Csv {
                out.push_str("n,nw_over_ne,nw_over_ne_decimal,down_over_up,down_over_up_decimal\n");
            }
            let mut json = vec![];
            for r in &rows {
                let d = r.down_over_up.as_ref();
                let fields = [
                    r.nw_over_ne.to_string(),
                    format_significant(&r.nw_over_ne, 10),
                    d.map_or("undefined".into(), ToString::to_string),
                    d.map_or("undefined".into(), |q| format_significant(q, 10)),
                ];
                if format == Format::Csv {
                    let _ = writeln!(out, "{},{}", r.n, fields.join(","));
                } else {
                    json.push(serde_json::json!({
                        "n": r.n,
                        "nw_over_ne": fields[0], "nw_over_ne_decimal": fields[1],
                        "down_over_up": fields[2], "down_over_up_decimal": fields[3],
                    }));
                }
            }
            if format == Format::Json {
                out = serde_json::to_string_pretty(&json).expect("serializable") + "\n";
            }
            Ok(out)
        }
        Format::Bfile => Err(Error::Usage("bfile output applies to `export`, not `ratios`".into())),
    }
}

// ---------------------------------------------------------------- openq

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DRow {
    pub n: usize,
    pub dup: BigUint,
    pub ddown: BigUint,
    pub e: BigUint,
}

/// A candidate `c * sec^a x * tan^b x * (sec x + tan x)^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    pub coefficient: u32,
    pub sec: u32,
    pub tan: u32,
    pub sec_plus_tan: u32,
}

impl std::fmt::Display for Candidate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = vec![];
        if self.coefficient != 1 {
            parts.push(self.coefficient.to_string());
        }
        let trig = |name: &str, k: u32| match k {
            0 => None,
            1 => Some(format!("{name} x")),
            k => Some(format!("{name}^{k} x")),
        };
        parts.extend(trig("sec", self.sec));
        parts.extend(trig("tan", self.tan));
        parts.extend(match self.sec_plus_tan {
            0 => None,
            1 => Some("(sec x + tan x)".to_string()),
            k => Some(format!("(sec x + tan x)^{k}")),
        });
        write!(f, "{}", parts.join("·"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjecture {
    pub sequence: SequenceName,
    /// The candidate's `a_k` is compared against `D_{k + shift}`.
    pub shift: usize,
    pub candidate: Candidate,
    pub matched_terms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenqReport {
    pub rows: Vec<DRow>,
    pub conjectures: Vec<Conjecture>,
}

impl OpenqReport {
    pub fn partition_holds(&self) -> bool {
        self.rows.iter().all(|r| &r.dup + &r.ddown == r.e)
    }
}

/// The fixed library: coefficient 1..=3, each factor exponent 0..=3.
pub fn candidate_library(order: usize) -> Vec<(Candidate, Vec<BigInt>)> {
    let pows = |f: TruncatedEgf| (0..=3).map(|k| f.pow(k)).collect::<Vec<_>>();
    let sec = pows(sec_egf(order));
    let tan = pows(tan_egf(order));
    let both = pows(sec_plus_tan(order));
    let mut out = vec![];
    for a in 0..=3u32 {
        for b in 0..=3u32 {
            for k in 0..=3u32 {
                if a + b + k == 0 {
                    continue;
                }
                let base = sec[a as usize]
                    .mul(&tan[b as usize])
                    .and_then(|s| s.mul(&both[k as usize]))
                    .expect("same order")
                    .extract_counts()
                    .expect("products of integral EGFs are integral");
                for c in 1..=3u32 {
                    let counts = base.iter().map(|v| v * c).collect();
                    out.push((Candidate { coefficient: c, sec: a, tan: b, sec_plus_tan: k }, counts));
                }
            }
        }
    }
    out
}

pub fn openq_report(max_n: usize, cap: usize) -> Result<OpenqReport> {
    if max_n < 2 {
        return Err(Error::Usage("--max-n must be at least 2".into()));
    }
    check_cap(max_n, cap)?;
    let rows: Vec<DRow> = (2..=max_n)
        .into_par_iter()
        .map(|n| {
            let k: KindCounts = count_kind(n, AltKind::DownUp)?;
            Ok(DRow {
                n,
                dup: k.second_max_upper.into(),
                ddown: k.second_max_lower.into(),
                e: k.total.into(),
            })
        })
        .collect::<Result<_>>()?;
    let mut conjectures = vec![];
    let library = candidate_library(max_n - 2);
    for (name, pick) in [
        (SequenceName::Dup, (|r: &DRow| r.dup.clone()) as fn(&DRow) -> BigUint),
        (SequenceName::Ddown, |r: &DRow| r.ddown.clone()),
    ] {
        for shift in [2usize, 3] {
            let target: Vec<BigInt> = rows.iter().filter(|r| r.n >= shift).map(|r| pick(r).into()).collect();
            if target.len() < CONJECTURE_MIN_PREFIX {
                continue;
            }
            for (cand, counts) in &library {
                if counts[..target.len()] == target[..] {
                    conjectures.push(Conjecture {
                        sequence: name,
                        shift,
                        candidate: *cand,
                        matched_terms: target.len(),
                    });
                }
            }
        }
    }
    Ok(OpenqReport { rows, conjectures })
}

pub fn cmd_openq(max_n: usize, cap: usize, format: Format) -> Result<String> {
    let rep = openq_report(max_n, cap)?;
    match format {
        Format::Table => {
            let body: Vec<Vec<String>> = rep
                .rows
                .iter()
                .map(|r| {
                    let ok = &r.dup + &r.ddown == r.e;
                    vec![
                        r.n.to_string(),
                        r.dup.to_string(),
                        r.ddown.to_string(),
                        r.e.to_string(),
                        if ok { "yes" } else { "NO" }.to_string(),
                    ]
                })
                .collect();
            let header =
                ["n", "D↑[enumeration]", "D↓[enumeration]", "E", "D↑+D↓=E"].map(String::from).to_vec();
            let mut out = render_grid(&header, &body);
            if rep.conjectures.is_empty() {
                let _ = writeln!(out, "no candidate EGF matches a prefix of length >= {CONJECTURE_MIN_PREFIX}");
            }
            for c in &rep.conjectures {
                let sym = if c.sequence == SequenceName::Dup { "D↑" } else { "D↓" };
                let _ = writeln!(
                    out,
                    "CONJECTURE: sum_k {sym}_(k+{}) x^k/k! = {} ({} terms match; prefix match only, not a proof)",
                    c.shift, c.candidate, c.matched_terms
                );
            }
            Ok(out)
        }
        Format::Json => {
            let rows: Vec<_> = rep
                .rows
                .iter()
                .map(|r| serde_json::json!({"n": r.n, "Dup": r.dup.to_string(), "Ddown": r.ddown.to_string(), "E": r.e.to_string()}))
                .collect();
            let conj: Vec<_> = rep
                .conjectures
                .iter()
                .map(|c| serde_json::json!({
                    "sequence": c.sequence.as_str(),
                    "shift": c.shift,
                    "egf": c.candidate.to_string(),
                    "matched_terms": c.matched_terms,
                    "note": "prefix match only, not a proof",
                }))
                .collect();
            let v = serde_json::json!({"rows": rows, "conjectures": conj});
            Ok(serde_json::to_string_pretty(&v).expect("serializable") + "\n")
        }
        Format::Csv => {
            let mut out = String::from("n,Dup,Ddown,E\n");
            for r in &rep.rows {
                let _ = writeln!(out, "{},{},{},{}", r.n, r.dup, r.ddown, r.e);
            }
            Ok(out)
        }
        Format::Bfile => Err(Error::Usage("bfile output applies to `export`, not `openq`".into())),
    }
}

// --------------------------------------------------------------- export

/// `(index, value)` pairs of a named sequence from its offset to `max_n`.
pub fn sequence_values(name: SequenceName, max_n: usize, cap: usize) -> Result<Vec<(usize, BigUint)>> {
    let offset = name.offset();
    if max_n < offset {
        return Err(Error::Usage(format!("{} starts at n = {offset}", name.as_str())));
    }
    let values: Vec<BigUint> = match name {
        SequenceName::E => euler_numbers(max_n),
        SequenceName::Dup | SequenceName::Ddown => {
            check_cap(max_n, cap)?;
            (2..=max_n)
                .into_par_iter()
                .map(|n| {
                    let k = count_kind(n, AltKind::DownUp)?;
                    let v = if name == SequenceName::Dup { k.second_max_upper } else { k.second_max_lower };
                    Ok(BigUint::from(v))
                })
                .collect::<Result<_>>()?
        }
        _ => {
            if max_n > FORMULA_SOFT_CAP {
                return Err(Error::Usage(format!("--max-n above {FORMULA_SOFT_CAP} is not supported")));
            }
            let r = Refinements::new(max_n);
            (2..=max_n)
                .map(|n| {
                    Ok(match name {
                        SequenceName::Ene => r.e_ne_nw(n)?.0,
                        SequenceName::Enw => r.e_ne_nw(n)?.1,
                        SequenceName::Eup => r.e_up(n)?,
                        _ => r.e_down(n)?,
                    })
                })
                .collect::<Result<_>>()?
        }
    };
    Ok(values.into_iter().enumerate().map(|(i, v)| (i + offset, v)).collect())
}

pub fn cmd_export(name: SequenceName, max_n: usize, format: Format, cap: usize) -> Result<String> {
    let values = sequence_values(name, max_n, cap)?;
    let mut out = String::new();
    match format {
        Format::Bfile => {
            for (n, v) in &values {
                let _ = writeln!(out, "{n} {v}");
            }
        }
        Format::Json => {
            let arr: Vec<String> = values.iter().map(|(_, v)| v.to_string()).collect();
            out = serde_json::to_string(&arr).expect("serializable") + "\n";
        }
        Format::Csv => {
            out.push_str("n,value\n");
            for (n, v) in &values {
                let _ = writeln!(out, "{n},{v}");
            }
        }
        Format::Table => {
            let body: Vec<Vec<String>> = values.iter().map(|(n, v)| vec![n.to_string(), v.to_string()]).collect();
            out = render_grid(&["n".into(), name.as_str().into()], &body);
        }
    }
    Ok(out)
}

/// Reads `n a(n)` lines, skipping blanks and `#` comments.
pub fn parse_bfile(text: &str) -> Result<Vec<(usize, BigUint)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            let bad = || Error::BFile { line: i + 1, text: l.to_string() };
            let mut it = l.split_whitespace();
            let n = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let v = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if it.next().is_some() {
                return Err(bad());
            }
            Ok((n, v))
        })
        .collect()
}

// ------------------------------------------------------ bijection-check

pub fn bijection_checks(max_n: usize, cap: usize) -> Result<Vec<BijectionCheck>> {
    if max_n < 4 {
        return Err(Error::Usage("bijection checks need --max-n >= 4".into()));
    }
    check_cap(max_n, cap)?;
    let mut jobs: Vec<(usize, u8)> = vec![];
    for n in 4..=max_n {
        jobs.push((n, 0));
        jobs.push((n, 1));
        if n % 2 == 0 {
            jobs.push((n, 2));
            jobs.push((n, 3));
        }
    }
    Ok(jobs
        .into_par_iter()
        .map(|(n, which)| match which {
            0 => check_swap_involution(n),
            1 => check_smu_round_trip(n),
            2 => check_maxmin_round_trip(n),
            _ => check_maxmin_bijection(n),
        })
        .collect())
}

pub fn render_bijection_checks(checks: &[BijectionCheck], format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(checks).expect("serializable") + "\n"),
        Format::Table | Format::Csv => {
            let mut out = String::new();
            if format == Format::Csv {
                out.push_str("check,n,domain,image,codomain,pass\n");
            }
            for c in checks {
                if format == Format::Csv {
                    let _ = writeln!(out, "{},{},{},{},{},{}", c.name, c.n, c.domain, c.image, c.codomain, c.pass);
                } else {
                    let _ = writeln!(
                        out,
                        "[{}] {} n={}: domain {} -> image {} (codomain {})",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.name,
                        c.n,
                        c.domain,
                        c.image,
                        c.codomain
                    );
                }
            }
            Ok(out)
        }
        Format::Bfile => Err(Error::Usage("bfile output applies to `export`, not `bijection-check`".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_default_rows() {
        let opts = TableOptions { max_n: 2, ..Default::default() };
        let rows = table_rows(&opts).unwrap();
        assert_eq!(rows.len(), 1);
        let c = &rows[0].counts;
        let got = [&c.e, &c.ene, &c.enw, &c.eup, &c.edown].map(|v| v.to_string());
        assert_eq!(got, ["1", "1", "0", "0", "1"]);
    }

    #[test]
    fn table_all_routes_agree() {
        let opts = TableOptions { max_n: 9, method: TableMethod::All, with_d: true, ..Default::default() };
        let rows = table_rows(&opts).unwrap();
        assert_eq!(rows.last().unwrap().counts.eup, BigUint::from(7392u32));
        assert_eq!(rows[2].counts.dup, Some(BigUint::from(4u32)));
    }

    #[test]
    fn table_cap_is_enforced() {
        let opts = TableOptions { max_n: 12, method: TableMethod::Enum, ..Default::default() };
        assert_eq!(table_rows(&opts), Err(Error::CapExceeded { max_n: 12, cap: 11 }));
        let opts = TableOptions { max_n: 12, method: TableMethod::Formula, ..Default::default() };
        let rows = table_rows(&opts).unwrap();
        assert_eq!(rows.last().unwrap().counts.e, BigUint::from(2702765u32));
    }

    #[test]
    fn populations() {
        let base = TableOptions { max_n: 4, method: TableMethod::Enum, ..Default::default() };
        let up = table_rows(&base).unwrap();
        let down = table_rows(&TableOptions { population: Population::DownUp, ..base.clone() }).unwrap();
        let all = table_rows(&TableOptions { population: Population::Alternating, ..base }).unwrap();
        assert_eq!((&up[2].counts.ene, &up[2].counts.enw), (&3u32.into(), &2u32.into()));
        assert_eq!((&down[2].counts.ene, &down[2].counts.enw), (&2u32.into(), &3u32.into()));
        assert_eq!((&all[2].counts.ene, &all[2].counts.enw), (&5u32.into(), &5u32.into()));
    }

    #[test]
    fn significant_digits() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(format_significant(&q(1, 1), 10), "1.000000000");
        assert_eq!(format_significant(&q(61, 1324), 10), "0.04607250755");
        assert_eq!(format_significant(&q(2, 3), 3), "0.667");
        assert_eq!(format_significant(&q(9999, 1000), 3), "10.0");
        assert_eq!(format_significant(&q(123456, 1), 3), "123000");
        assert_eq!(format_significant(&q(0, 1), 3), "0");
    }

    #[test]
    fn ratios_examples() {
        let rows = ratio_rows(9).unwrap();
        let r9 = rows.iter().find(|r| r.n == 9).unwrap();
        assert!(r9.nw_over_ne.is_one());
        let r8 = rows.iter().find(|r| r.n == 8).unwrap();
        assert_eq!(r8.down_over_up, Some(BigRational::new(61.into(), 1324.into())));
        assert!(rows[0].down_over_up.is_none());
        assert!(rows[1].down_over_up.is_none());
        let text = cmd_ratios(9, Format::Table).unwrap();
        assert!(text.contains("undefined"));
        assert!(text.contains("3968/3968 = 1"));
    }

    #[test]
    fn export_formats() {
        let b = cmd_export(SequenceName::E, 4, Format::Bfile, DEFAULT_CAP).unwrap();
        assert_eq!(b, "0 1\n1 1\n2 1\n3 2\n4 5\n");
        let j = cmd_export(SequenceName::Eup, 9, Format::Json, DEFAULT_CAP).unwrap();
        assert_eq!(j.trim(), r#"["0","0","4","12","56","240","1324","7392"]"#);
        let single = cmd_export(SequenceName::Edown, 2, Format::Bfile, DEFAULT_CAP).unwrap();
        assert_eq!(single, "2 1\n");
        assert!(matches!("Eunknown".parse::<SequenceName>(), Err(Error::UnknownSequence(_))));
    }

    #[test]
    fn bfile_parse_errors() {
        assert!(parse_bfile("# comment\n\n2 5\n").is_ok());
        assert!(matches!(parse_bfile("2\n"), Err(Error::BFile { line: 1, .. })));
        assert!(parse_bfile("2 x\n").is_err());
        assert!(parse_bfile("2 3 4\n").is_err());
    }

    #[test]
    fn verify_default_passes() {
        let set = cmd_verify(&VerifyOptions::default()).unwrap();
        assert!(set.passed(), "{}", set.render_text());
    }

    #[test]
    fn verify_e_down_egf_prefix() {
        let set = cmd_verify(&VerifyOptions { max_n: 4, egf_order: 7, ..Default::default() }).unwrap();
        let rep = set.reports.iter().find(|r| r.identity().starts_with("E↓_n: formula = n![x")).unwrap();
        let right: Vec<String> = rep.entries().iter().map(|e| e.right.to_string()).collect();
        assert_eq!(right, ["1", "2", "1", "4", "5", "32", "61", "544"]);
    }

    #[test]
    fn candidate_display() {
        let c = Candidate { coefficient: 2, sec: 1, tan: 1, sec_plus_tan: 1 };
        assert_eq!(c.to_string(), "2·sec x·tan x·(sec x + tan x)");
        let c = Candidate { coefficient: 1, sec: 3, tan: 0, sec_plus_tan: 2 };
        assert_eq!(c.to_string(), "sec^3 x·(sec x + tan x)^2");
    }
}
