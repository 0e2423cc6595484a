//! Acceptance checks. Runs with its own harness so each criterion prints a
//! single PASS or FAIL line, and the process fails if any criterion fails.

mod common;

use std::f64::consts::FRAC_PI_2;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_complex::Complex64;
use qwalk_core::circuit::{
    arc_counter_circuit, arc_walk_circuit, binary_counter_circuit, full_adder_block, increment_circuit,
    or_inplace_block, Circuit, Design, Roles, WalkConfig,
};
use qwalk_core::gate::GateOp;
use qwalk_core::market::{excess_kurtosis, housing_correlations, pearson, MetroMonthlyRecord, DEFAULT_R_BINS};
use qwalk_core::noise::{estimate_fidelity, GateCensus, NoiseModel};
use qwalk_core::statevector::StateVector;
use qwalk_core::walk::{
    arc_expected, arc_walk_step_changes, derive_seed, distance_table, run_shots, two_way_distribution,
    zeno_experiment, ShotHistogram, TableOptions, ZenoSchedule,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

const SEED: u64 = 20_240_611;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binary_exactness() -> Outcome {
    for steps in 0..=10 {
        let circuit = binary_counter_circuit(&WalkConfig::new(Design::Binary, 6, steps)).map_err(|e| e.to_string())?;
        let h = run_shots(&circuit, 1000, None, ZenoSchedule::NEVER, SEED).map_err(|e| e.to_string())?;
        ensure(h.counts().len() == 1 && h.count(steps as i64) == 1000, || {
            format!("steps {steps}: histogram {:?}", h.counts())
        })?;
        ensure(h.mean() == steps as f64 && h.sample_variance() == 0.0, || {
            format!("steps {steps}: mean {} variance {}", h.mean(), h.sample_variance())
        })?;
    }
    Ok("means 0..=10 exactly, zero variance".into())
}

fn fidelity_arithmetic() -> Outcome {
    let model = NoiseModel::new(0.997, 0.978, 0.0).map_err(|e| e.to_string())?;
    let f = estimate_fidelity(GateCensus { count_1q: 33, count_2q: 18 }, &model);
    ensure((f - 0.587).abs() <= 0.001, || format!("0.997^33 x 0.978^18 = {f:.6}, target 0.587 +/- 0.001"))?;
    Ok(format!("{f:.6}"))
}

fn noisy_binary_collapse() -> Outcome {
    let opts = TableOptions {
        designs: vec![Design::Binary],
        max_steps: 10,
        width: 6,
        shots: 1000,
        noise: Some(NoiseModel::nisq_default()),
        seed: SEED,
        ..TableOptions::default()
    };
    let table = distance_table(&opts).map_err(|e| e.to_string())?;
    let means: Vec<f64> = (4..=10).map(|s| table.mean(s, Design::Binary).unwrap()).collect();
    ensure(means.iter().all(|m| (27.0..=37.0).contains(m)), || format!("means for steps 4..=10: {means:.2?}"))?;
    Ok(format!("steps 4..=10 means {means:.1?}"))
}

fn arc_oracle() -> Outcome {
    let shots = 2000;
    let reps = 20;
    let mut worst = reps;
    for width in [4, 6, 8] {
        for steps in [1, 5, 10, 20] {
            let circuit = arc_counter_circuit(&WalkConfig::new(Design::Arc, width, steps)).map_err(|e| e.to_string())?;
            let expected = arc_expected(width, steps, FRAC_PI_2);
            let hits = (0..reps)
                .filter(|&r| {
                    let seed = derive_seed(SEED, &[width as u64, steps as u64, r]);
                    let h = run_shots(&circuit, shots, None, ZenoSchedule::NEVER, seed).unwrap();
                    let band = 4.0 * h.sample_std() / (shots as f64).sqrt();
                    // Fully deterministic cells have zero spread; allow float rounding only.
                    (h.mean() - expected).abs() <= band.max(1e-9)
                })
                .count() as u64;
            worst = worst.min(hits);
            ensure(hits * 100 >= 95 * reps, || format!("width {width} steps {steps}: {hits}/{reps} within 4 sigma"))?;
        }
    }
    Ok(format!("all 12 cells, worst {worst}/{reps} repetitions within 4 sigma"))
}

fn zeno_ordering() -> Outcome {
    let schedules = [ZenoSchedule::NEVER, ZenoSchedule::every(7), ZenoSchedule::every(1)];
    let pts = zeno_experiment(8, 20, FRAC_PI_2, &schedules, 4000, SEED).map_err(|e| e.to_string())?;
    let means: Vec<f64> = pts.iter().map(|p| p.mean).collect();
    ensure(means.windows(2).all(|w| w[0] > w[1]), || format!("means not strictly decreasing: {means:.2?}"))?;
    ensure((means[0] - 34.7).abs() <= 0.15 * 34.7, || format!("never-measured mean {:.2} outside 34.7 +/- 15%", means[0]))?;
    Ok(format!("never/7/1 means {means:.2?}"))
}

fn truth_tables() -> Outcome {
    let adder = full_adder_block(0, 1, 2, 3).map_err(|e| e.to_string())?;
    for input in 0..8usize {
        let (a, b, c) = (input & 1, (input >> 1) & 1, (input >> 2) & 1);
        let out = common::basis_image(4, &adder, input);
        let total = a + b + c;
        let expected = a | (b << 1) | ((total & 1) << 2) | ((total >> 1) << 3);
        ensure(out == expected, || format!("full adder {a}{b}{c}: got {out:04b}, want {expected:04b}"))?;
    }

    let or = or_inplace_block(0, 1, 2).map_err(|e| e.to_string())?;
    for input in 0..4usize {
        let (lo, hi) = (input & 1, input >> 1);
        let out = common::basis_image(3, &or, input);
        let expected = lo | ((lo | hi) << 1);
        ensure(out == expected, || format!("OR {lo}{hi}: got {out:03b}, want {expected:03b}"))?;
    }

    for width in 2..=4usize {
        let circuit = increment_circuit(width, width > 2).map_err(|e| e.to_string())?;
        let modulus = 1usize << width;
        for input in 0..modulus {
            let out = common::basis_image(circuit.n_qubits(), circuit.ops(), input);
            ensure(out == (input + 1) % modulus, || format!("increment width {width}: {input} -> {out}"))?;
        }
    }
    Ok("full adder 8/8, OR 4/4, increment widths 2-4 exact".into())
}

fn random_state(n: usize, rng: &mut ChaCha8Rng) -> StateVector {
    let amps = (0..1usize << n)
        .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    StateVector::from_amplitudes(amps).unwrap()
}

fn random_op(n: usize, rng: &mut ChaCha8Rng) -> GateOp {
    let mut distinct = |k: usize| {
        let mut qs: Vec<usize> = Vec::with_capacity(k);
        while qs.len() < k {
            let q = rng.random_range(0..n);
            if !qs.contains(&q) {
                qs.push(q);
            }
        }
        qs
    };
    let q = distinct(3);
    let theta = rng.random_range(-10.0..10.0);
    match rng.random_range(0..7) {
        0 => GateOp::X(q[0]),
        1 => GateOp::H(q[0]),
        2 => GateOp::rx(q[0], theta).unwrap(),
        3 => GateOp::cnot(q[0], q[1]),
        4 => GateOp::crx(q[0], q[1], theta).unwrap(),
        5 => GateOp::toffoli(q[0], q[1], q[2]),
        _ => GateOp::Swap(q[0], q[1]),
    }
}

fn statevector_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let n = 5;

    let mut worst_norm = 0.0f64;
    for _ in 0..50 {
        let mut s = random_state(n, &mut rng);
        for _ in 0..200 {
            let op = random_op(n, &mut rng);
            s.apply(&op).unwrap();
            worst_norm = worst_norm.max((s.norm_sqr() - 1.0).abs());
        }
    }
    ensure(worst_norm <= 1e-12, || format!("norm drift {worst_norm:e}"))?;

    for _ in 0..200 {
        let s0 = random_state(n, &mut rng);
        let op = random_op(n, &mut rng);
        if op.theta().is_some() {
            continue;
        }
        let mut s = s0.clone();
        s.apply(&op).unwrap();
        s.apply(&op).unwrap();
        ensure(s.approx_eq_up_to_phase(&s0, 1e-12), || format!("{op} applied twice is not the identity"))?;
    }

    for _ in 0..200 {
        let s0 = random_state(n, &mut rng);
        let q = rng.random_range(0..n);
        let (a, b): (f64, f64) = (rng.random_range(-7.0..7.0), rng.random_range(-7.0..7.0));
        let mut split = s0.clone();
        split.apply(&GateOp::rx(q, a).unwrap()).unwrap();
        split.apply(&GateOp::rx(q, b).unwrap()).unwrap();
        let mut joined = s0.clone();
        joined.apply(&GateOp::rx(q, a + b).unwrap()).unwrap();
        let diff = split
            .amplitudes()
            .iter()
            .zip(joined.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        ensure(diff <= 1e-12, || format!("Rx({a}) Rx({b}) differs from Rx({}) by {diff:e}", a + b))?;
    }

    let mut bell = Circuit::new(2, Roles::counter_only(2)).unwrap();
    bell.extend([GateOp::H(0), GateOp::cnot(0, 1)]).unwrap();
    let shots = 10_000u64;
    let h = run_shots(&bell, shots as usize, None, ZenoSchedule::NEVER, SEED).map_err(|e| e.to_string())?;
    let sigma = (0.25 / shots as f64).sqrt();
    ensure(h.count(1) == 0 && h.count(2) == 0, || format!("odd-parity outcomes in Bell sampling: {:?}", h.counts()))?;
    for k in [0, 3] {
        let f = h.frequency(k);
        ensure((f - 0.5).abs() <= 4.0 * sigma, || format!("Bell frequency of {k}: {f}"))?;
    }
    Ok(format!(
        "norm drift {worst_norm:.1e}, involutions and Rx additivity exact, Bell 00/11 = {:.4}/{:.4}",
        h.frequency(0),
        h.frequency(3)
    ))
}

fn two_way_walk() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let random_hist = |rng: &mut ChaCha8Rng| {
            let support = rng.random_range(1..12);
            ShotHistogram::from_counts((0..support).map(|_| (rng.random_range(-20..60), rng.random_range(1..500))))
        };
        let up = random_hist(&mut rng);
        let down = random_hist(&mut rng);
        let both = two_way_distribution(&up, &down).map_err(|e| e.to_string())?;
        ensure(both.total_shots() == up.total_shots() * down.total_shots(), || "total mass not conserved".into())?;
        worst = worst.max((both.mean() - (up.mean() - down.mean())).abs());
    }
    ensure(worst <= 1e-9, || format!("mean linearity error {worst:e}"))?;

    let circuit = arc_walk_circuit(&WalkConfig::new(Design::ArcWalk, 6, 10)).map_err(|e| e.to_string())?;
    let up = run_shots(&circuit, 1000, None, ZenoSchedule::NEVER, derive_seed(SEED, &[0])).map_err(|e| e.to_string())?;
    let down = run_shots(&circuit, 1000, None, ZenoSchedule::NEVER, derive_seed(SEED, &[1])).map_err(|e| e.to_string())?;
    let both = two_way_distribution(&up, &down).map_err(|e| e.to_string())?;
    let negative: f64 = both.frequencies().filter(|(k, _)| *k < 0).map(|(_, f)| f).sum();
    ensure(negative > 0.0, || "two-way arc walk has no negative support".into())?;
    Ok(format!("linearity error {worst:.1e}, two-way arc walk mass below 0 = {negative:.3}"))
}

fn cascading_uplift() -> Outcome {
    let reps = 10u64;
    let mut wins = 0;
    let mut pairs = Vec::new();
    for r in 0..reps {
        let opts = TableOptions {
            designs: vec![Design::RandomJump, Design::RandomJumpCascading],
            max_steps: 8,
            width: 8,
            seed: derive_seed(SEED, &[r]),
            ..TableOptions::default()
        };
        let table = distance_table(&opts).map_err(|e| e.to_string())?;
        let plain = table.mean(8, Design::RandomJump).unwrap();
        let cascading = table.mean(8, Design::RandomJumpCascading).unwrap();
        wins += u64::from(cascading > plain);
        pairs.push((plain, cascading));
    }
    ensure(wins * 10 >= 9 * reps, || format!("cascading ahead in {wins}/{reps}: {pairs:.2?}"))?;
    let avg = |f: fn(&(f64, f64)) -> f64| pairs.iter().map(f).sum::<f64>() / pairs.len() as f64;
    Ok(format!(
        "cascading ahead in {wins}/{reps}, average {:.2} vs {:.2}",
        avg(|p| p.1),
        avg(|p| p.0)
    ))
}

fn heavy_tails() -> Outcome {
    let n = 100_000;
    let changes = arc_walk_step_changes(8, 1, n, SEED).map_err(|e| e.to_string())?;
    let k = excess_kurtosis(&changes).map_err(|e| e.to_string())?;
    ensure(k > 0.0, || format!("arc-walk change excess kurtosis {k}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let normal: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let kn = excess_kurtosis(&normal).map_err(|e| e.to_string())?;
    ensure(kn.abs() < 0.1, || format!("normal sample excess kurtosis {kn}"))?;
    Ok(format!("arc walk {k:.3}, normal {kn:.4} over {n} samples"))
}

fn housing_pipeline() -> Outcome {
    let mut records = common::synthetic_metros(50, 24, common::FIXTURE_RHO, SEED);
    let clean = housing_correlations(&records, DEFAULT_R_BINS).map_err(|e| e.to_string())?;
    let positive = clean.positive_fraction();
    let mass = clean.histogram.mass_at_or_above(0.0);
    ensure(clean.per_metro.len() == 50, || format!("{} metros reported", clean.per_metro.len()))?;
    ensure(positive >= 0.95, || format!("positive fraction {positive}"))?;
    ensure(mass > 0.9, || format!("histogram mass above 0 is {mass}"))?;

    // Months above asking, anti-correlated with sales, must not move any r.
    let extra: Vec<MetroMonthlyRecord> = clean
        .per_metro
        .keys()
        .flat_map(|metro| {
            (1..=3).map(move |k| MetroMonthlyRecord {
                metro: metro.clone(),
                month: qwalk_core::market::YearMonth { year: 2030, month: k },
                sales_count: 10_000 * k as u64,
                sale_to_list_ratio: 1.0 + 0.5 / k as f64,
            })
        })
        .collect();
    records.extend(extra);
    let dirty = housing_correlations(&records, DEFAULT_R_BINS).map_err(|e| e.to_string())?;
    for (metro, c) in &clean.per_metro {
        let d = &dirty.per_metro[metro];
        ensure(d.r == c.r, || format!("{metro}: r moved from {} to {}", c.r, d.r))?;
        ensure(d.months_excluded == c.months_excluded + 3, || format!("{metro}: over-asking months not excluded"))?;
    }

    let cases: [(&[f64], &[f64], f64); 3] = [
        (&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0], 1.0),
        (&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0], -1.0),
        (&[822.0, 785.0, 803.0], &[0.98, 0.96, 0.97], 0.999_878_278_862_674),
    ];
    for (x, y, want) in cases {
        let r = pearson(x, y).map_err(|e| e.to_string())?;
        ensure((r - want).abs() <= 1e-12, || format!("pearson({x:?}, {y:?}) = {r}, want {want}"))?;
    }
    Ok(format!("{:.0}% positive, mass above 0 = {mass:.3}, over-asking months excluded", positive * 100.0))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("binary counter exactness", binary_exactness),
        ("fidelity arithmetic", fidelity_arithmetic),
        ("noisy binary collapse", noisy_binary_collapse),
        ("arc-counter oracle agreement", arc_oracle),
        ("Zeno ordering", zeno_ordering),
        ("circuit-block truth tables", truth_tables),
        ("statevector algebra", statevector_algebra),
        ("two-way walk", two_way_walk),
        ("cascading-disjunction uplift", cascading_uplift),
        ("heavy tails", heavy_tails),
        ("housing pipeline", housing_pipeline),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();

    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
