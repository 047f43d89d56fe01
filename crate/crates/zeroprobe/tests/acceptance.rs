//! Acceptance run: every criterion prints one PASS/FAIL line and the test
//! fails if any criterion fails. Criteria run sequentially so that their
//! timings are not disturbed by each other.

use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;
use zeroprobe_core::bounds::{est1_below_minus_one, est1_rhs_signed_ln, thm1_bound, thm3_bound};
use zeroprobe_core::hankel::{
    build_hankel, default_grid, nlp_scan, psd_check, quadratic_form, TestPolynomial, Verdict,
};
use zeroprobe_core::mp::{MpComplex, MpContext};
use zeroprobe_core::sine::{
    consistency_bound, sin_sq_sum_at, taylor_remainder_bound, taylor_sq_sum_at, witness_t, SineTaylor,
};
use zeroprobe_core::zeros::strong_spacing_fit;
use zeroprobe_core::{Extended, Zero, ZeroConfig};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Path) -> Outcome);

const ZETA_FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/zeros_100k.txt");

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeroprobe")).args(args).output().expect("spawn zeroprobe")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    check(elapsed.as_secs_f64() < limit_s, || format!("took {:.2} s, limit {limit_s} s", elapsed.as_secs_f64()))
}

/// Zeros ±i/2 and ±1, …, ±200 with a mirrored unit-gap tail from 201.
fn lattice_file(dir: &Path) -> PathBuf {
    let mut text = String::from("pair 0 0.5\n");
    for m in 1..=200 {
        text.push_str(&format!("{m}\n-{m}\n"));
    }
    text.push_str("tail mirrored 201 1\n");
    let p = dir.join("lattice.txt");
    std::fs::write(&p, text).unwrap();
    p
}

fn random_config(rng: &mut StdRng, all_real: bool) -> ZeroConfig {
    loop {
        let n_real = rng.gen_range(if all_real { 1..=12 } else { 0..=8 });
        let n_pairs = if all_real { 0 } else { rng.gen_range(0..=2) };
        if n_real + n_pairs == 0 {
            continue;
        }
        let mut zs: Vec<Zero> = (0..n_real).map(|_| Zero::real(rng.gen_range(-400i32..400) as f64 / 40.0)).collect();
        for _ in 0..n_pairs {
            let (re, im) = (rng.gen_range(-10.0..10.0), rng.gen_range(0.1..5.0));
            zs.push(Zero::complex(re, im));
            zs.push(Zero::complex(re, -im));
        }
        return ZeroConfig::from_zeros(zs).unwrap();
    }
}

fn admissible(c: &ZeroConfig, x: f64) -> bool {
    c.zeros().iter().all(|z| !z.is_real() || (z.re - x).abs() > 0.05)
}

fn refined_aperture(_dir: &Path) -> Outcome {
    let start = Instant::now();
    let o = bin(&["bounds", "--which", "refined", "--format", "json"]);
    let elapsed = start.elapsed();
    check(o.status.success(), || format!("exit {:?}", o.status.code()))?;
    let v: Value = serde_json::from_str(&stdout(&o)).map_err(|e| e.to_string())?;
    let k = v["value"].as_f64().ok_or("no value")?;
    check((k - 0.609566).abs() <= 1e-5, || format!("kappa {k} differs from 0.609566 by more than 1e-5"))?;
    within(elapsed, 1.0)?;
    Ok(format!("kappa = {k:.9}"))
}

fn lattice_first_order(dir: &Path) -> Outcome {
    let file = lattice_file(dir);
    let grid = dir.join("origin.txt");
    std::fs::write(&grid, "0\n").unwrap();
    let start = Instant::now();
    let sp = bin(&["spacing", file.to_str().unwrap(), "--format", "json"]);
    let o = bin(&[
        "check-nlp",
        file.to_str().unwrap(),
        "--order",
        "1",
        "--grid",
        grid.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let elapsed = start.elapsed();
    let sp: Value = serde_json::from_str(&stdout(&sp)).map_err(|e| e.to_string())?;
    let kappa = sp["kappa"].as_f64().ok_or("no kappa")?;
    check(kappa == 0.5 && kappa < thm1_bound(), || format!("kappa = {kappa}"))?;
    check(o.status.code() == Some(1), || format!("check-nlp exit {:?}, expected 1", o.status.code()))?;
    let v: Value = serde_json::from_str(&stdout(&o)).map_err(|e| e.to_string())?;
    let p = &v["points"][0];
    check(p["x"].as_f64() == Some(0.0) && p["verdict"] == "NotPSD", || format!("point {p}"))?;
    let a1 = p["min_eig"].as_f64().ok_or("no min_eig")?;
    let tail = p["tail_budget"].as_f64().ok_or("no tail budget")?;
    let exact = -8.0 + PI * PI / 3.0;
    check((a1 - exact).abs() <= tail + 1e-9, || format!("a_1(0) = {a1}, closed form {exact}, tail {tail}"))?;
    within(elapsed, 1.0)?;
    Ok(format!("kappa = 0.5, a_1(0) = {a1:.10} vs {exact:.10} (tail {tail:.2e}), NotPSD"))
}

fn gram_identity(_dir: &Path) -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x6a6d);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < 200 {
        let c = random_config(&mut rng, false);
        let x = rng.gen_range(-10.0..10.0);
        if !admissible(&c, x) {
            continue;
        }
        let n = rng.gen_range(1..=6);
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let m = build_hankel(&c, x, n).map_err(|e| e.to_string())?;
        let mut vav = 0.0;
        for j in 0..n {
            for k in 0..n {
                vav += v[j] * m.get(j, k) * v[k];
            }
        }
        let q = quadratic_form(&c, x, &TestPolynomial::new(v), 1.0).map_err(|e| e.to_string())?;
        let rel = (vav - q).abs() / (1.0 + vav.abs());
        check(rel <= 1e-9, || format!("config {c:?} x = {x}: v'Av = {vav}, form = {q}"))?;
        worst = worst.max(rel);
        done += 1;
    }
    within(start.elapsed(), 10.0)?;
    Ok(format!("200 configs, worst relative gap {worst:.1e}"))
}

fn real_positivity(_dir: &Path) -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x7265);
    let mut points = 0;
    for _ in 0..200 {
        let c = random_config(&mut rng, true);
        let n = rng.gen_range(1..=6);
        let r = nlp_scan(&c, n, &default_grid(&c, 8, &Default::default()));
        for p in &r.points {
            check(p.verdict() == Verdict::Psd, || format!("config {c:?} N = {n} x = {}: {:?}", p.x, p.outcome))?;
        }
        points += r.points.len();
    }
    within(start.elapsed(), 30.0)?;
    Ok(format!("200 configs, {points} grid verdicts, all PSD"))
}

fn sine_recovery(dir: &Path) -> Outcome {
    let file = lattice_file(dir);
    let start = Instant::now();
    let o = bin(&["sine-witness", file.to_str().unwrap(), "--mode", "sin"]);
    check(o.status.success(), || format!("sine-witness exit {:?}: {}", o.status.code(), stdout(&o)))?;
    let w: Value = serde_json::from_str(&stdout(&o)).map_err(|e| e.to_string())?;
    let f = |k: &str| w[k].as_f64().ok_or(format!("no {k}"));
    let upper = f("value")? + f("error_bound")? + f("tail_upper")?;
    check(w["certified"] == true && upper < -1.0, || format!("witness {w} not certified below -1"))?;

    // the first-step estimate at the witness t over the aperture grid
    let lo = thm1_bound();
    for k in 0..=400 {
        let kappa = lo + (8.0 - lo) * k as f64 / 400.0;
        for c in [0.01, 1.0, 159.0] {
            let t = witness_t(c, kappa).map_err(|e| e.to_string())?;
            check(est1_below_minus_one(t, kappa * c, c) == Ok(true), || {
                format!("kappa {kappa} c {c}: signed log {:?}", est1_rhs_signed_ln(t, kappa * c, c))
            })?;
        }
    }

    // Taylor sums track the sine sum within the remainder bound
    let mut rng = StdRng::seed_from_u64(0x7379);
    let mut cases = 0;
    while cases < 60 {
        let c = random_config(&mut rng, false);
        let x = rng.gen_range(-8.0..8.0);
        if !admissible(&c, x) {
            continue;
        }
        let t = rng.gen_range(0.1..=5.0);
        let n = rng.gen_range(1..=30);
        let s = sin_sq_sum_at(&c, x, t, 256).map_err(|e| e.to_string())?.ok_or("sine sum not certified")?;
        let p = taylor_sq_sum_at(&c, x, t, n, 256).map_err(|e| e.to_string())?.ok_or("taylor sum not certified")?;
        let bound = consistency_bound(&c, x, t, n).map_err(|e| e.to_string())? + s.error_bound + p.error_bound;
        check((p.value - s.value).abs() <= bound, || format!("x {x} t {t} N {n}: {} vs {}", p.value, s.value))?;
        cases += 1;
    }
    within(start.elapsed(), 30.0)?;
    Ok(format!(
        "witness x = {}, t = {}, value {:.3e}; estimate < -1 on 1203 apertures; 60 Taylor consistency cases",
        f("x")?,
        f("t")?,
        f("value")?
    ))
}

fn taylor_remainder(_dir: &Path) -> Outcome {
    let start = Instant::now();
    let ctx = MpContext::new(256);
    let mut rng = StdRng::seed_from_u64(0x7461);
    let mut tightest: f64 = 0.0;
    for r in [1.0, 2.0, 5.0] {
        for _ in 0..100 {
            let rho = r * rng.gen_range(0.0f64..=1.0).sqrt();
            let z = Complex64::from_polar(rho, rng.gen_range(0.0..2.0 * PI));
            let n = rng.gen_range(1..=25);
            // sin z = sin a cosh b + i cos a sinh b, evaluated at 256 bits
            let (a, b) = (ctx.from_f64(z.re), ctx.from_f64(z.im));
            let (sa, ca) = ctx.sin_cos(&a);
            let exact = MpComplex::new(ctx.mul(&sa, &ctx.cosh(&b)), ctx.mul(&ca, &ctx.sinh(&b)));
            let approx = SineTaylor::new(n).map_err(|e| e.to_string())?.eval_mp(&ctx, &MpComplex::from_f64(z.re, z.im));
            let diff = ctx.c_abs_f64(&MpComplex::new(ctx.sub(&exact.re, &approx.re), ctx.sub(&exact.im, &approx.im)));
            let bound = taylor_remainder_bound(z.norm(), r, n).map_err(|e| e.to_string())?;
            check(diff <= bound, || format!("z = {z}, R = {r}, N = {n}: |sin z - S_N| = {diff:e} > {bound:e}"))?;
            if bound > 0.0 {
                tightest = tightest.max(diff / bound);
            }
        }
    }
    within(start.elapsed(), 5.0)?;
    Ok(format!("300 points, largest error/bound ratio {tightest:.3}"))
}

fn zeta_spacing(dir: &Path) -> Outcome {
    let out = dir.join("gaps.csv");
    let start = Instant::now();
    let o = bin(&["zeta", "gaps", ZETA_FIXTURE, "--out", out.to_str().unwrap()]);
    let elapsed = start.elapsed();
    check(o.status.success(), || format!("exit {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr)))?;
    let text = std::fs::read_to_string(&out).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        rows.push((f[0].parse::<usize>().unwrap(), f[3].to_string(), f[3].parse::<f64>().unwrap()));
    }
    check(rows.len() == 99_999, || format!("{} gaps", rows.len()))?;
    let min = rows.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
    let at: Vec<&(usize, String, f64)> = rows.iter().filter(|r| r.2 == min).collect();
    check(min > 159.0, || format!("minimal gap {min} not above 159"))?;
    check(at.len() == 1 && at[0].0 <= 6, || {
        format!("minimum attained at {:?}", at.iter().map(|r| r.0).collect::<Vec<_>>())
    })?;
    check(at[0].0 == 4 && at[0].1 == "159.045194522908313868", || format!("golden gap changed: {:?}", at[0]))?;
    within(elapsed, 5.0)?;
    Ok(format!("minimal gap {} at j* = {} over 10^5 heights", at[0].1, at[0].0))
}

fn region_curves(dir: &Path) -> Outcome {
    let start = Instant::now();
    let read = |args: &[&str], name: &str| -> Result<Vec<(f64, f64)>, String> {
        let out = dir.join(name);
        let mut a = args.to_vec();
        a.extend(["--out", out.to_str().unwrap()]);
        let o = bin(&a);
        check(o.status.success(), || format!("{args:?}: exit {:?}", o.status.code()))?;
        let text = std::fs::read_to_string(&out).map_err(|e| e.to_string())?;
        Ok(text
            .lines()
            .skip(1)
            .map(|l| {
                let (a, b) = l.split_once(',').unwrap();
                (a.parse().unwrap(), b.parse().unwrap())
            })
            .collect())
    };
    let h = read(&["zeta", "region", "--kind", "hrrh1", "--t", "100..500", "--samples", "10000"], "hrrh1.csv")?;
    let f = read(&["zeta", "region", "--kind", "ford", "--t", "100..100000", "--samples", "10000"], "ford.csv")?;
    let elapsed = start.elapsed();
    check(h[0].0 == 100.0 && (h[0].1 - 0.938304).abs() <= 1e-5, || format!("HRRH1 at t = 100: {}", h[0].1))?;
    check(f[0].0 == 100.0 && (f[0].1 - 0.993615).abs() <= 1e-4, || format!("Ford at t = 100: {}", f[0].1))?;
    check(h.len() == 10_000 && f.len() == 10_000, || "sample count".into())?;
    check(h.windows(2).all(|w| w[1].1 < w[0].1 && w[1].1 > 0.5), || "HRRH1 curve not decreasing toward 1/2".into())?;
    check(f.windows(2).all(|w| w[1].1 > w[0].1 && w[1].1 < 1.0), || "Ford curve not increasing toward 1".into())?;
    within(elapsed, 1.0)?;
    Ok(format!("HRRH1(100) = {:.9}, Ford(100) = {:.9}, monotone on 10^4 samples", h[0].1, f[0].1))
}

fn strong_spacing(_dir: &Path) -> Outcome {
    let start = Instant::now();
    let squares: Vec<f64> = (1..=50).map(|j| (j * j) as f64).collect();
    let base = ZeroConfig::real(&squares).unwrap();
    let Extended::Finite(fit) = strong_spacing_fit(&base, 0.5).map_err(|e| e.to_string())? else {
        return Err("no finite strong-spacing constant".into());
    };
    // the pair sits between 20² and 21², so it is the 21st zero by real part
    // and the bound uses |Re λ_10| = 100
    let bound = thm3_bound(fit, 0.5, 21, 100.0).map_err(|e| e.to_string())?;
    let with_pair = |h: f64| {
        let mut zs: Vec<Zero> = squares.iter().map(|&v| Zero::real(v)).collect();
        zs.extend([Zero::complex(420.5, h), Zero::complex(420.5, -h)]);
        ZeroConfig::from_zeros(zs).unwrap()
    };
    let low = with_pair(0.5 * bound);
    let v = psd_check(build_hankel(&low, 420.5, 1).map_err(|e| e.to_string())?, None).map_err(|e| e.to_string())?;
    check(v.verdict == Verdict::NotPsd, || {
        format!("pair at {:.3}: a_1(420.5) = {} not NotPSD", 0.5 * bound, v.min_eigenvalue)
    })?;
    let high = with_pair(10.0 * bound);
    let r = nlp_scan(&high, 1, &default_grid(&high, 8, &Default::default()));
    check(r.points.iter().all(|p| p.verdict() == Verdict::Psd), || {
        let bad: Vec<f64> = r.points.iter().filter(|p| p.verdict() != Verdict::Psd).map(|p| p.x).collect();
        format!("pair at {:.3}: non-PSD at {bad:?}", 10.0 * bound)
    })?;
    within(start.elapsed(), 5.0)?;
    Ok(format!(
        "C = {fit:.6}, bound {bound:.6}; pair at half: a_1 = {:.3e} NotPSD; pair at 10x: {} grid points PSD",
        v.min_eigenvalue,
        r.points.len()
    ))
}

fn determinism(dir: &Path) -> Outcome {
    let lattice = lattice_file(dir);
    let lattice = lattice.to_str().unwrap();
    let runs: [(&str, Vec<&str>); 4] = [
        ("check-nlp.csv", vec!["check-nlp", lattice, "--order", "1"]),
        ("check-nlp.json", vec!["check-nlp", lattice, "--order", "2", "--format", "json"]),
        ("gaps.csv", vec!["zeta", "gaps", ZETA_FIXTURE]),
        ("region.csv", vec!["zeta", "region", "--kind", "ford", "--t", "10..1000", "--samples", "500"]),
    ];
    let mut bytes = 0;
    for (name, args) in &runs {
        let mut outputs = Vec::new();
        for (k, threads) in ["1", "8", "1", "8"].iter().enumerate() {
            let out = dir.join(format!("{k}-{name}"));
            let mut a = args.clone();
            a.extend(["--threads", threads, "--out", out.to_str().unwrap()]);
            let o = bin(&a);
            check(o.status.code().is_some_and(|c| c <= 1), || format!("{args:?}: exit {:?}", o.status.code()))?;
            outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
        }
        check(outputs.windows(2).all(|w| w[0] == w[1]), || format!("{name} differs between runs"))?;
        bytes += outputs[0].len();
    }
    Ok(format!("4 reports x 4 runs (threads 1 and 8) byte-identical, {bytes} bytes"))
}

#[test]
fn acceptance() {
    let dir = tempfile::tempdir().unwrap();
    let criteria: [Criterion; 10] = [
        ("refined aperture bound", refined_aperture),
        ("first-order failure on the lattice with kappa = 1/2", lattice_first_order),
        ("Gram identity", gram_identity),
        ("real-zero positivity", real_positivity),
        ("sine recovery", sine_recovery),
        ("Taylor remainder bound", taylor_remainder),
        ("zeta spacing above 159", zeta_spacing),
        ("region curves", region_curves),
        ("strong-spacing height bound", strong_spacing),
        ("determinism across thread counts", determinism),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr().lock();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f(dir.path());
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        writeln!(err, "acceptance {:>2} {tag} {name} ({secs:.2} s): {detail}", i + 1).unwrap();
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
