//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};

use euler_refine::bij::{check_maxmin_bijection, check_maxmin_round_trip, check_smu_round_trip, check_swap_involution};
use euler_refine::cli::{self, Format};
use euler_refine::perm::{count_refinements, enumerate_alternating};
use euler_refine::seq::{self, e_down_recurrence, e_ne_nw_pair, e_nw_formula, e_up_formula, euler_numbers, Refinements};
use euler_refine::series::{sec_egf, tan_egf, RefinementEgfs};
use euler_refine::{AltKind, CountTable};

type Outcome = Result<String, String>;

/// Name, check, time budget.
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn brute(n_max: usize) -> Result<BTreeMap<usize, CountTable>, String> {
    (2..=n_max).map(|n| count_refinements(n).map(|t| (n, t)).map_err(|e| e.to_string())).collect()
}

fn golden_tables() -> Outcome {
    let e = [1u64, 1, 2, 5, 16, 61, 272, 1385, 7936];
    let up = [0u64, 0, 4, 12, 56, 240, 1324, 7392];
    let down = [1u64, 2, 1, 4, 5, 32, 61, 544];
    let ne = [1u64, 1, 3, 8, 33, 136, 723, 3968];
    let nw = [0u64, 1, 2, 8, 28, 136, 662, 3968];
    let counts = brute(9)?;
    expect_eq("E_1", enumerate_alternating(1, AltKind::UpDown).count(), 1)?;
    for n in 2..=9 {
        let t = &counts[&n];
        let i = n - 2;
        expect_eq(&format!("E_{n}"), &t.e, &big(e[n - 1]))?;
        expect_eq(&format!("E↑_{n}"), &t.eup, &big(up[i]))?;
        expect_eq(&format!("E↓_{n}"), &t.edown, &big(down[i]))?;
        expect_eq(&format!("E↗_{n}"), &t.ene, &big(ne[i]))?;
        expect_eq(&format!("E↖_{n}"), &t.enw, &big(nw[i]))?;
    }
    Ok("E from n=1; E↑, E↓, E↗, E↖ by enumeration, n=2..9".into())
}

fn formula_vs_enumeration() -> Outcome {
    let counts = brute(10)?;
    let mut checked = 0;
    for (&n, t) in &counts {
        let err = |e: euler_refine::Error| e.to_string();
        expect_eq(&format!("e_up_formula({n})"), e_up_formula(n).map_err(err)?, t.eup.clone())?;
        expect_eq(&format!("e_down_recurrence({n})"), e_down_recurrence(n).map_err(err)?, t.edown.clone())?;
        expect_eq(&format!("e_ne_nw_pair({n})"), e_ne_nw_pair(n).map_err(err)?, (t.ene.clone(), t.enw.clone()))?;
        checked += 3;
        if n % 2 == 0 {
            expect_eq(&format!("e_nw_formula({n})"), e_nw_formula(n).map_err(err)?, t.enw.clone())?;
            checked += 1;
        }
    }
    Ok(format!("{checked} formula values agree with enumeration, n=2..10"))
}

fn egf_route() -> Outcome {
    const ORDER: usize = 18;
    let egfs = RefinementEgfs::new(ORDER);
    let r = Refinements::new(ORDER + 2);
    let err = |e: euler_refine::Error| e.to_string();
    let columns = [
        ("sec²(sec+tan) vs E↗", &egfs.min_max),
        ("sec·tan·(sec+tan) vs E↖", &egfs.max_min),
        ("2tan²(sec+tan) vs E↑", &egfs.second_max_upper),
        ("sec+2tan vs E↓", &egfs.second_max_lower),
    ];
    for (label, f) in columns {
        let got = f.extract_counts().map_err(err)?;
        expect_eq("length", got.len(), ORDER + 1)?;
        for (k, a) in got.iter().enumerate() {
            let n = k + 2;
            let (ne, nw) = r.e_ne_nw(n).map_err(err)?;
            let want = match label.chars().last() {
                Some('↗') => ne,
                Some('↖') => nw,
                Some('↑') => r.e_up(n).map_err(err)?,
                _ => r.e_down(n).map_err(err)?,
            };
            expect_eq(&format!("{label} at n={n}"), a.clone(), BigInt::from(want))?;
        }
    }
    Ok(format!("four series at order {ORDER} match n=2..{}", ORDER + 2))
}

fn andre() -> Outcome {
    let e = euler_numbers(30);
    let series = sec_egf(30).add(&tan_egf(30)).map_err(|e| e.to_string())?;
    let got = series.extract_counts().map_err(|e| e.to_string())?;
    let want: Vec<BigInt> = e.iter().cloned().map(BigInt::from).collect();
    expect_eq("sec+tan vs euler_numbers(30)", &got, &want)?;
    expect_eq("E_8", &e[8], &big(1385))?;
    expect_eq("E_9", &e[9], &big(7936))?;
    Ok(format!("E_0..E_30 agree, E_30 = {}", e[30]))
}

fn theorem() -> Outcome {
    let set = seq::theorem_check(40).map_err(|e| e.to_string())?;
    if !set.passed() {
        return Err(set.render_text());
    }
    let entries: usize = set.reports.iter().map(|r| r.entries().len()).sum();
    Ok(format!("{} identities, {entries} even-degree entries up to 40", set.reports.len()))
}

fn bijections() -> Outcome {
    let mut checks = Vec::new();
    checks.extend((2..=10).map(check_swap_involution));
    checks.extend((4..=9).map(check_smu_round_trip));
    checks.extend([4, 6, 8].map(check_maxmin_round_trip));
    let bij: Vec<_> = [4, 6, 8].map(check_maxmin_bijection).into();
    for (c, want) in bij.iter().zip([4usize, 56, 1324]) {
        expect_eq(&format!("maxmin_to_smu sizes at n={}", c.n), (c.domain, c.image, c.codomain), (want, want, want))?;
    }
    checks.extend(bij);
    if let Some(bad) = checks.iter().find(|c| !c.pass) {
        return Err(format!("{bad:?}"));
    }
    Ok(format!("{} exhaustive checks; maxmin_to_smu 4→4, 56→56, 1324→1324", checks.len()))
}

fn worked_example() -> Outcome {
    let r = Refinements::new(8);
    let terms = r.e_up_terms(8).map_err(|e| e.to_string())?;
    let triples: Vec<[usize; 3]> = terms.iter().map(|t| t.sizes).collect();
    expect_eq(
        "triples",
        triples,
        vec![[1, 1, 4], [1, 3, 2], [1, 5, 0], [3, 1, 2], [3, 3, 0], [5, 1, 0]],
    )?;
    let values: Vec<u64> = terms.iter().map(|t| t.value.to_string().parse().unwrap()).collect();
    // Independent check: multinomial 6!/(a!b!c!) times E_a E_b E_c.
    let e = [1u64, 1, 1, 2, 5, 16];
    let fact = |k: usize| (1..=k as u64).product::<u64>();
    let recomputed: Vec<u64> = [[1, 1, 4], [1, 3, 2], [1, 5, 0], [3, 1, 2], [3, 3, 0], [5, 1, 0]]
        .iter()
        .map(|&[a, b, c]| fact(6) / (fact(a) * fact(b) * fact(c)) * e[a] * e[b] * e[c])
        .collect();
    expect_eq("term values", &values, &recomputed)?;
    let mut sorted = values.clone();
    sorted.sort_unstable();
    let mut listed = vec![150u64, 120, 120, 96, 80, 96];
    listed.sort_unstable();
    expect_eq("term multiset vs 150,120,120,96,80,96", &sorted, &listed)?;
    let total = 2 * values.iter().sum::<u64>();
    expect_eq("total", total, 1324)?;
    expect_eq("e_up_formula(8)", e_up_formula(8).map_err(|e| e.to_string())?, big(1324))?;
    Ok(format!(
        "terms {values:?} (listed 150,120,120,96,80,96: same multiset, 3rd/4th transposed), 2·662 = 1324"
    ))
}

fn open_problem() -> Outcome {
    let cap = 11;
    let report = cli::openq_report(10, cap).map_err(|e| e.to_string())?;
    expect_eq("openq degrees", report.rows.iter().map(|r| r.n).collect::<Vec<_>>(), (2..=10).collect())?;
    if !report.partition_holds() {
        return Err("D↑ + D↓ != E for some n".into());
    }
    let text = cli::cmd_openq(10, cap, Format::Table).map_err(|e| e.to_string())?;
    if !text.contains("D↑") {
        return Err("cmd_openq output lacks D↑ column".into());
    }
    let rows = cli::ratio_rows(40).map_err(|e| e.to_string())?;
    if !cli::nw_ne_gap_nonincreasing(&rows, 4, 40) {
        return Err("|E↖/E↗ - 1| increases somewhere over even n in 4..40".into());
    }
    cli::cmd_ratios(40, Format::Table).map_err(|e| e.to_string())?;
    Ok("D↑+D↓=E for n=2..10; |E↖/E↗-1| nonincreasing over even n=4..40".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("golden tables", golden_tables, Duration::from_secs(10)),
        ("formula/enumeration agreement", formula_vs_enumeration, Duration::from_secs(60)),
        ("EGF route", egf_route, Duration::from_secs(5)),
        ("André's theorem", andre, Duration::from_secs(5)),
        ("theorem identities", theorem, Duration::from_secs(5)),
        ("bijection suite", bijections, Duration::from_secs(120)),
        ("worked example", worked_example, Duration::from_secs(5)),
        ("open-problem data", open_problem, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > budget => Err(format!("{detail}; took {took:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {} {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {} {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    println!("{}/8 criteria pass", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
