//! Acceptance suite: one line per criterion.
//!
//! Criteria whose reference targets disagree with exact computation are
//! listed in `EXPECTED_RED`; they are still evaluated against the reference
//! numbers and reported as FAIL. The run fails if the observed set of
//! failures differs from that list in either direction.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use henon_lattice::analysis::{
    convergence_report, cubic_compressor, escape_radius, optimal_compression_search,
    padic_escape_check_rd, radius_below_prime, rd_compression, rd_preperiodic_set,
    real_escape_check_rd, up_to_target_reflection, verify_cd_bounds, verify_monotonicity,
    verify_sigma_agreement, verify_sigma_agreement_with, verify_tail_growth, LemmaId, Place,
    SeriesKind, SigmaShift,
};
use henon_lattice::arith::{int, primes_up_to, rat};
use henon_lattice::dynamics::{
    eight_step_ys, enumerate_periodic, hinf_period_table, periodic_radius, sweep,
    verify_eight_step_translation, HenonMap, LatticePoint, Orientation,
};
use henon_lattice::poly::build_r;
use henon_lattice::{Exec, PolyExact};

/// Criteria that are red against the reference targets.
const EXPECTED_RED: [u32; 3] = [2, 3, 6];

type Criterion = (u32, &'static str, Duration, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn exec() -> Exec {
    Exec::default()
}

fn c1_compression() -> Verdict {
    let bad: Vec<usize> = (2..=20)
        .filter(|&d| !rd_compression(d).unwrap().pass)
        .collect();
    verdict(
        bad.is_empty(),
        format!("r_d([d+6]) inside [d+5]/[d+4] for d=2..20; failing: {bad:?}"),
    )
}

fn c2_sigma() -> Verdict {
    let bad: Vec<usize> = (1..=200)
        .filter(|&d| !verify_sigma_agreement(d).unwrap().pass)
        .collect();
    let minus_ok = (1..=200).all(|d| {
        verify_sigma_agreement_with(d, SigmaShift::Minus)
            .unwrap()
            .pass
    });
    let odd_ok = bad.iter().all(|d| d % 2 == 0);
    let first = bad
        .first()
        .and_then(|&d| {
            verify_sigma_agreement(d)
                .unwrap()
                .counterexample
                .map(|c| (d, c))
        })
        .map(|(d, (m, s, sig))| format!("d={d}, m={m}: s_d={s}, σ={sig}"))
        .unwrap_or_default();
    verdict(
        bad.is_empty(),
        format!(
            "σ(m + 3(d-1)/2) disagrees for {} of 200 degrees (all even: {odd_ok}; first {first}); \
             σ(m - 3(d-1)/2) agrees for all 200: {minus_ok}",
            bad.len(),
        ),
    )
}

fn c3_counts() -> Verdict {
    let reference = [
        (7, 49),
        (9, 89),
        (11, 105),
        (13, 153),
        (15, 233),
        (17, 257),
        (19, 329),
    ];
    let mut got = Vec::new();
    let mut ok = true;
    for (d, n) in reference {
        let total = enumerate_periodic(&HenonMap::standard(d).unwrap(), exec())
            .unwrap()
            .report
            .total;
        let (lo, hi) = ((d - 4) * (d - 4), (d + 6) * (d + 6));
        ok &= total == n && (lo..=hi).contains(&total);
        got.push(format!("d={d}: {total} (reference {n})"));
    }
    verdict(ok, got.join(", "))
}

fn c4_inner_box() -> Verdict {
    let mut bad = Vec::new();
    let mut checked = 0;
    for d in (3..=31).step_by(2) {
        let map = HenonMap::standard(d).unwrap();
        let r = periodic_radius(d).unwrap();
        for x in -r..=r {
            for y in -r..=r {
                checked += 1;
                if !map.classify(LatticePoint::new(x, y)).unwrap().is_periodic() {
                    bad.push((d, x, y));
                }
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!(
            "{checked} points with sup-norm <= R checked, {} escape",
            bad.len()
        ),
    )
}

fn c5_long_cycles() -> Verdict {
    let mut rows = Vec::new();
    let mut ok = true;
    for d in [7usize, 13, 19, 25, 31, 9, 11, 15, 17, 21, 23] {
        let expected = if d % 6 == 1 { (8 * d + 10) / 3 } else { 20 };
        let got = enumerate_periodic(&HenonMap::standard(d).unwrap(), exec())
            .unwrap()
            .report
            .longest;
        ok &= got == expected;
        rows.push(format!("{d}:{got}"));
    }
    verdict(ok, format!("longest cycle by d: {}", rows.join(" ")))
}

fn c6_shift_tables() -> Verdict {
    let ds: Vec<usize> = (15..=61).step_by(2).collect();
    let rows = sweep(&ds, &[-2, -1, 0, 1, 2], Orientation::Standard, exec()).unwrap();
    let bad: Vec<_> = rows.iter().filter(|r| r.matches != Some(true)).collect();
    let longest_bad = bad
        .iter()
        .filter(|r| r.expected.map(|e| e.1) != Some(r.report.longest as i64))
        .count();
    let c0 = bad.iter().filter(|r| r.report.c == 0).count();
    let cm1 = bad
        .iter()
        .filter(|r| r.report.c == -1 && r.report.d % 6 == 3)
        .count();
    let spot = |d: usize, c: i64| {
        let r = rows
            .iter()
            .find(|r| r.report.d == d && r.report.c == c)
            .unwrap();
        format!("d={d},c={c}: {}/{}", r.report.total, r.report.longest)
    };
    verdict(
        bad.is_empty(),
        format!(
            "{} of {} rows differ ({c0} at c=0, {cm1} at d≡3,c=-1, {} elsewhere; {longest_bad} longest-cycle mismatches); {}, {}, {}",
            bad.len(),
            rows.len(),
            bad.len() - c0 - cm1,
            spot(15, 1),
            spot(17, 2),
            spot(19, 2)
        ),
    )
}

fn c7_eight_step() -> Verdict {
    let mut n = 0;
    let mut ok = true;
    for d in [7, 13, 19, 25] {
        for y in eight_step_ys(d) {
            n += 1;
            ok &= verify_eight_step_translation(d, y).unwrap();
        }
    }
    verdict(ok, format!("{n} admissible (d, y) pairs"))
}

fn c8_hinf() -> Verdict {
    match hinf_period_table(60, exec()) {
        Ok(t) => {
            let count = |n| t.exceptions.iter().filter(|e| e.1 == n).count();
            let ok = t.exceptions.len() == 17 && count(1) == 1 && count(5) == 10 && count(6) == 6;
            verdict(
                ok,
                format!(
                    "[-60,60]^2: residue table holds, exceptions 1×{} 5×{} 6×{}",
                    count(1),
                    count(5),
                    count(6)
                ),
            )
        }
        Err(e) => verdict(false, e.to_string()),
    }
}

fn c9_bounds() -> Verdict {
    let quarter = rat(1, 4);
    let lemmas = [
        LemmaId::CdSup,
        LemmaId::CdSupInner,
        LemmaId::CdDeriv,
        LemmaId::CdDerivInner,
    ];
    let jobs: Vec<(usize, LemmaId)> = (4..=100)
        .flat_map(|d| lemmas.into_iter().map(move |l| (d, l)))
        .collect();
    let cd = exec().map(&jobs, |&(d, l)| verify_cd_bounds(d, l, &quarter).unwrap());
    let tail_ds: Vec<usize> = (3..=50).collect();
    let tail = exec().map(&tail_ds, |&d| {
        verify_tail_growth(d, &rat(d as i64 + 1007, 2)).unwrap()
    });
    let mono_ds: Vec<usize> = (1..=50).collect();
    let mono = exec().map(&mono_ds, |&d| {
        verify_monotonicity(d, &rat(d as i64 + 103, 2), &quarter).unwrap()
    });
    let all: Vec<_> = cd.iter().chain(&tail).chain(&mono).collect();
    let failing = all.iter().filter(|r| !r.pass).count();
    let zero_margin: Vec<String> = all
        .iter()
        .filter(|r| r.worst_margin == int(0))
        .map(|r| format!("{} d={} at x={}", r.lemma.name(), r.d, r.worst_at))
        .collect();
    verdict(
        failing == 0,
        format!(
            "{} exact grid reports, {failing} failing; equality (margin 0) only at: {zero_margin:?}",
            all.len()
        ),
    )
}

fn c10_escape() -> Verdict {
    let real = (2..=20).all(|d| real_escape_check_rd(d, None).unwrap().pass);
    let padic = (2..=20).all(|d| {
        [2, 3, 5, 7]
            .iter()
            .all(|&p| padic_escape_check_rd(d, p, None).unwrap().pass)
    });
    let preper = (2..=20).all(|d| {
        rd_preperiodic_set(d)
            .unwrap()
            .into_iter()
            .eq(1..=d as i64 + 6)
    });
    let mut exceptions = Vec::new();
    for d in (3..=299).step_by(2) {
        for p in primes_up_to(100) {
            if !radius_below_prime(d, p).unwrap() {
                exceptions.push((p, d));
            }
        }
    }
    let r23 = escape_radius(3, Place::Prime(2)).unwrap();
    let radii = exceptions == [(2, 3)];
    verdict(
        real && padic && preper && radii,
        format!(
            "real {real}, p-adic {padic}, preperiodic sets {preper}, R_p >= p only at {exceptions:?} (R_2 = {r23} for d=3)"
        ),
    )
}

fn same_polys(a: &[PolyExact], b: &[PolyExact]) -> bool {
    let key = |v: &[PolyExact]| {
        v.iter()
            .map(|p| p.coeffs().to_vec())
            .collect::<BTreeSet<_>>()
    };
    a.len() == b.len() && key(a) == key(b)
}

fn c11_optimality() -> Verdict {
    let r2 = build_r(2).unwrap().monomial_only();
    let r2p1 = &r2 + &PolyExact::constant(int(1));
    let s29 = optimal_compression_search(exec(), 2, 9).unwrap();
    let s28 = up_to_target_reflection(optimal_compression_search(exec(), 2, 8).unwrap());
    let s312 = optimal_compression_search(exec(), 3, 12).unwrap();
    let s311 = up_to_target_reflection(optimal_compression_search(exec(), 3, 11).unwrap());
    let ok = s29.is_empty()
        && same_polys(&s28, &[r2, r2p1])
        && s312.is_empty()
        && same_polys(&s311, &[cubic_compressor()]);
    let show = |v: &[PolyExact]| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; ")
    };
    verdict(
        ok,
        format!(
            "(2,9): {} found; (2,8): {}; (3,12): {} found; (3,11): {} (solutions counted up to f -> m+1-f)",
            s29.len(),
            show(&s28),
            s312.len(),
            show(&s311)
        ),
    )
}

fn c12_convergence() -> Verdict {
    let r = convergence_report(exec(), SeriesKind::Sine, 30, (-6.0, 6.0), 0.01, 1e-8);
    let tail: Vec<(usize, f64)> =
        r.ks.iter()
            .copied()
            .zip(r.sup_errors.iter().copied())
            .filter(|(k, _)| *k >= 10)
            .collect();
    // below ~1e-13 the error is double-precision rounding, not truncation
    let decreasing = tail.windows(2).all(|w| w[1].1 < w[0].1 || w[1].1 < 1e-13);
    let last = tail.last().map(|t| t.1).unwrap_or(f64::INFINITY);
    let errs: Vec<String> = tail
        .iter()
        .map(|(k, e)| format!("k={k}: {e:.2e}"))
        .collect();
    verdict(decreasing && last <= 1e-8, errs.join(", "))
}

fn run_twice(args: &[&str], out_name: &str) -> bool {
    let dir = std::env::temp_dir().join(format!("henon-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let path = dir.join(format!("{out_name}.{i}"));
        let status = Command::new(env!("CARGO_BIN_EXE_henon"))
            .args(args)
            .arg("--out")
            .arg(&path)
            .stderr(std::process::Stdio::null())
            .status()
            .unwrap();
        // a sweep over the tabulated range exits 1 on table mismatches
        if !matches!(status.code(), Some(0 | 1)) {
            return false;
        }
        outputs.push(std::fs::read(&path).unwrap());
    }
    let _ = std::fs::remove_dir_all(&dir);
    outputs[0] == outputs[1] && !outputs[0].is_empty()
}

fn c13_determinism() -> Verdict {
    let sweep_same = run_twice(&["sweep", "--d", "15..31", "--c", "-2..2"], "sweep.csv");
    let atlas_same = run_twice(
        &[
            "hinf", "atlas", "--box", "3", "--eps", "1e-3", "--iters", "20000", "--seed", "1",
        ],
        "atlas.csv",
    );
    verdict(
        sweep_same && atlas_same,
        format!("sweep identical: {sweep_same}, atlas identical: {atlas_same}"),
    )
}

fn main() {
    let criteria: [Criterion; 13] = [
        (
            1,
            "compression of [d+6] by r_d",
            Duration::from_secs(1),
            c1_compression,
        ),
        (
            2,
            "s_d agrees with shifted σ, 1 <= d <= 200",
            Duration::from_secs(30),
            c2_sigma,
        ),
        (
            3,
            "periodic point counts, d = 7..19",
            Duration::from_secs(5),
            c3_counts,
        ),
        (
            4,
            "points with sup-norm <= R are periodic",
            Duration::from_secs(10),
            c4_inner_box,
        ),
        (
            5,
            "longest cycles at c = 0",
            Duration::from_secs(10),
            c5_long_cycles,
        ),
        (
            6,
            "shift tables, d = 15..61, |c| <= 2",
            Duration::from_secs(120),
            c6_shift_tables,
        ),
        (
            7,
            "eight-step translation",
            Duration::from_secs(10),
            c7_eight_step,
        ),
        (
            8,
            "h_∞ period table on [-60,60]^2",
            Duration::from_secs(1),
            c8_hinf,
        ),
        (
            9,
            "c_d bounds, tail growth, monotonicity",
            Duration::from_secs(60),
            c9_bounds,
        ),
        (
            10,
            "escape of r_d and escape radii",
            Duration::from_secs(60),
            c10_escape,
        ),
        (
            11,
            "optimality of low-degree compression",
            Duration::from_secs(5),
            c11_optimality,
        ),
        (
            12,
            "convergence to (2/√3) sin(πx/3)",
            Duration::from_secs(5),
            c12_convergence,
        ),
        (
            13,
            "sweep and atlas are byte-identical across runs",
            Duration::from_secs(120),
            c13_determinism,
        ),
    ];
    let mut red = BTreeSet::new();
    for (id, name, limit, check) in criteria {
        let started = Instant::now();
        let v = check();
        let elapsed = started.elapsed();
        let in_time = elapsed <= limit;
        let pass = v.pass && in_time;
        if !pass {
            red.insert(id);
        }
        let timing = if in_time {
            format!("{elapsed:.2?}")
        } else {
            format!("{elapsed:.2?} > limit {limit:?}")
        };
        println!(
            "acceptance #{id:<2} {} {name} [{timing}] {}",
            if pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    let expected: BTreeSet<u32> = EXPECTED_RED.into_iter().collect();
    println!(
        "acceptance: {} pass, {} fail (expected red: {expected:?})",
        13 - red.len(),
        red.len()
    );
    if red != expected {
        println!("acceptance: failing set {red:?} differs from the expected red set {expected:?}");
        std::process::exit(1);
    }
}
