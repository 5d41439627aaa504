//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use flowtree::algebra::{int, kappa, LaurentPoly, RatFunc};
use flowtree::dt::{
    assemble_dt, integer_from_rational, random_integer_table, rational_from_integer, AttractorTable, DtContext,
};
use flowtree::flow::{
    epsilon_signs_labeled, flow_nondegenerate, flow_tree_scalar, run_flow_labeled, tree_product, ChildLabeling,
    OmegaPerturbed, StrategyRegistry,
};
use flowtree::lattice::{random_instance, sample_omega, Covector, DimVec, Quiver, SampleParams, SkewForm};
use flowtree::scattering::{
    check_joint_consistency, check_joint_consistency_with, dt_from_rank2, initial_from_table, reconstruct_rank2,
    Corruption, GradedLieElt, JointError, LieAlgebra,
};
use flowtree::trees::{enumerate_trees, full_mask};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tree_counts() -> Outcome {
    let want = [1u64, 1, 3, 15, 105, 945, 10395, 135135];
    for (r, &w) in (1..=8).zip(&want) {
        let n = enumerate_trees(full_mask(r)).count() as u64;
        ensure(n == w, || format!("r={r}: {n} trees, expected {w}"))?;
    }
    Ok("r=1..8".into())
}

fn relabeling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..100u64 {
        let r = 2 + (i % 4) as usize;
        let aux = random_instance(r, 2, i).aux;
        let omega = sample_omega(&aux, &SampleParams::seeded(i)).map_err(|e| e.to_string())?;
        for t in enumerate_trees(aux.full()) {
            let canon = ChildLabeling::canonical(&t);
            let lab = ChildLabeling((0..t.nodes().len()).map(|_| rng.gen()).collect());
            let a = run_flow_labeled(&t, &aux.alpha, &omega, &canon);
            ensure(a == run_flow_labeled(&t, &aux.alpha, &omega, &lab), || format!("instance {i} tree {t}: flow"))?;
            if flow_nondegenerate(&t, &aux.alpha, &omega) {
                let fa = a.map_err(|e| e.to_string())?;
                let sa = epsilon_signs_labeled(&t, &fa, &omega, &canon).map_err(|e| e.to_string())?;
                let sb = epsilon_signs_labeled(&t, &fa, &omega, &lab).map_err(|e| e.to_string())?;
                ensure(tree_product(&t, &sa, &aux.eta, &canon) == tree_product(&t, &sb, &aux.eta, &lab), || {
                    format!("instance {i} tree {t}: product")
                })?;
            }
        }
    }
    Ok("100 instances".into())
}

/// F over 5 seeds for each registered mode on 25 instances with r ≤ 4 and |η| ≤ 4.
fn scalar_grid() -> Result<Vec<Vec<Vec<String>>>, String> {
    let reg = StrategyRegistry::default();
    (0..25u64)
        .map(|i| {
            let aux = random_instance(2 + (i % 3) as usize, 4, 100 + i).aux;
            reg.iter()
                .map(|s| {
                    (0..5)
                        .map(|seed| {
                            flow_tree_scalar(&aux, s, &SampleParams::seeded(seed))
                                .map(|f| f.to_string())
                                .map_err(|e| format!("instance {i} mode {}: {e}", s.name()))
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn seed_independence() -> Outcome {
    for (i, modes) in scalar_grid()?.iter().enumerate() {
        for vals in modes {
            ensure(vals.iter().all(|v| v == &vals[0]), || format!("instance {i}: {vals:?}"))?;
        }
    }
    Ok("25 instances x 5 seeds".into())
}

fn modes_agree() -> Outcome {
    for (i, modes) in scalar_grid()?.iter().enumerate() {
        ensure(modes.iter().all(|m| m[0] == modes[0][0]), || format!("instance {i}: {modes:?}"))?;
    }
    Ok("25 instances".into())
}

fn oracle() -> Outcome {
    let table = AttractorTable::acyclic();
    let ctx = DtContext { strategy: &OmegaPerturbed, params: SampleParams::default(), cache: None };
    let mut n = 0;
    for m in 1..=3i64 {
        let diag = reconstruct_rank2(m, &initial_from_table(&table, 6), 6);
        ensure(diag.loop_log().is_zero(), || format!("m={m}: diagram not consistent"))?;
        let q = Quiver::kronecker(m as u64);
        for a in 0..=6i64 {
            for b in 0..=(6 - a) {
                if a + b == 0 {
                    continue;
                }
                let g = DimVec(vec![a, b]);
                for s in [1, -1] {
                    let theta = Covector::from_ints(&[-s * b, s * a]);
                    let want = dt_from_rank2(&diag, &g, &theta).map_err(|e| e.to_string())?;
                    let got = assemble_dt(&q, &g, &theta, &table, &ctx).map_err(|e| e.to_string())?;
                    ensure(got == want, || format!("m={m} gamma={g} theta={theta}: {got} vs {want}"))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} comparisons"))
}

fn primitive_wall_crossing() -> Outcome {
    let q = Quiver::new(vec![vec![0, 1], vec![0, 0]]);
    let g = DimVec(vec![1, 1]);
    let table = AttractorTable::acyclic();
    let ctx = DtContext { strategy: &OmegaPerturbed, params: SampleParams::default(), cache: None };
    let plus = assemble_dt(&q, &g, &Covector::from_ints(&[1, -1]), &table, &ctx).map_err(|e| e.to_string())?;
    let minus = assemble_dt(&q, &g, &Covector::from_ints(&[-1, 1]), &table, &ctx).map_err(|e| e.to_string())?;
    let (one, zero) = (RatFunc::one(), RatFunc::zero());
    ensure((plus == one && minus == zero) || (plus == zero && minus == one), || format!("{plus} and {minus}"))?;
    let k = RatFunc::from(&kappa(1));
    let jump = plus.sub_ref(&minus);
    ensure(jump == k || jump == k.neg_ref(), || format!("jump {jump}"))?;
    Ok(format!("Omega_bar {plus} / {minus}"))
}

fn joints() -> Outcome {
    for (r, n) in [(3usize, 20u64), (4, 10)] {
        for seed in 0..n {
            let aux = random_instance(r, 2, 500 + seed).aux;
            check_joint_consistency(&aux, &SampleParams::seeded(seed)).map_err(|e| format!("r={r} seed={seed}: {e}"))?;
        }
    }
    let g: Vec<DimVec> = ["1,0", "1,0", "0,1"].iter().map(|s| s.parse().unwrap()).collect();
    let aux = flowtree::lattice::build_aux(&Quiver::kronecker(2), &g, &Covector::from_ints(&[1, -2]))
        .map_err(|e| e.to_string())?;
    for c in [Corruption::ShiftInitialWall, Corruption::FlipFirstJoint] {
        let e = check_joint_consistency_with(&aux, &SampleParams::default(), Some(c));
        ensure(matches!(e, Err(JointError::ConsistencyFailure { .. })), || format!("{c:?} was not caught"))?;
    }
    Ok("30 seeds, corruptions caught".into())
}

fn multicover() -> Outcome {
    let bound = DimVec(vec![4, 4]);
    for seed in 0..50 {
        let t = random_integer_table(&bound, seed);
        let back = integer_from_rational(&rational_from_integer(&t, &bound)).map_err(|e| e.to_string())?;
        ensure(back == t, || format!("table {seed}"))?;
    }
    Ok("50 tables".into())
}

fn algebra() -> Outcome {
    for x in -20..=20i64 {
        ensure(kappa(-x) == -&kappa(x), || format!("kappa({x}) not odd"))?;
        let sign = if x % 2 == 0 { 1 } else { -1 };
        ensure(kappa(x).eval_at_one() == int(sign * x), || format!("kappa({x}) at 1"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let elt = |rng: &mut ChaCha8Rng| {
        GradedLieElt::from_terms((0..3).filter_map(|_| {
            let (a, b) = (rng.gen_range(0..=3i64), rng.gen_range(0..=3i64));
            let c = LaurentPoly::from_terms((0..2).map(|_| (rng.gen_range(-2..=2), int(rng.gen_range(-3..=3)))));
            (a + b > 0).then(|| (vec![a, b], RatFunc::from(&c)))
        }))
    };
    for i in 0..50 {
        let m = 1 + i % 3;
        let g = LieAlgebra::truncated(SkewForm::new(vec![vec![0, m], vec![-m, 0]]).map_err(|e| e.to_string())?, 7);
        let (x, y, z) = (elt(&mut rng), elt(&mut rng), elt(&mut rng));
        let j = g
            .bracket(&x, &g.bracket(&y, &z))
            .add(&g.bracket(&y, &g.bracket(&z, &x)))
            .add(&g.bracket(&z, &g.bracket(&x, &y)));
        ensure(j.is_zero(), || format!("triple {i}: {j}"))?;
    }
    Ok("kappa on -20..20, 50 Jacobi triples".into())
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_flowtree")).args(args).output().map_err(|e| e.to_string())?;
    let mut bytes = out.stdout;
    bytes.extend_from_slice(&out.stderr);
    bytes.extend_from_slice(format!("exit {:?}", out.status.code()).as_bytes());
    Ok(bytes)
}

fn determinism() -> Outcome {
    let cache = std::env::temp_dir().join(format!("flowtree-acceptance-{}", std::process::id()));
    let cache = cache.to_str().ok_or("temp path")?.to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec!["trees", "5"],
        vec!["F", "--kronecker", "2", "--gammas", "1,0", "1,0", "0,1", "--theta", "1,-2"],
        vec!["F", "--kronecker", "2", "--gammas", "1,0", "1,0", "0,1", "--theta", "1,-2", "--mode", "beta"],
        vec!["dt", "--kronecker", "2", "--gamma", "2,2", "--theta", "2,-2"],
        vec!["--format", "machine", "dt", "--kronecker", "3", "--gamma", "2,1", "--theta", "1,-2"],
        vec!["oracle", "rank2", "--m", "2", "--max-dim", "4"],
        vec!["check", "perturbation", "--r", "4", "--trials", "4"],
        vec!["check", "joints", "--r", "3", "--trials", "8"],
        vec!["check", "multicover", "--trials", "4"],
        vec!["check", "oracle", "--m", "1", "--max-dim", "4"],
        vec!["dt", "--kronecker", "0", "--gamma", "1,1", "--theta", "0,0"],
    ];
    for c in &commands {
        let a = run_cli(c)?;
        ensure(a == run_cli(c)?, || format!("`{}` differs between runs", c.join(" ")))?;
        let mut single = vec!["--threads", "1"];
        single.extend(c);
        ensure(a == run_cli(&single)?, || format!("`{}` differs single-threaded", c.join(" ")))?;
        let mut cached = vec!["--cache", cache.as_str()];
        cached.extend(c);
        ensure(a == run_cli(&cached)?, || format!("`{}` differs with the cache", c.join(" ")))?;
    }
    let _ = std::fs::remove_dir_all(&cache);
    Ok(format!("{} commands", commands.len()))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("tree counts", 5, tree_counts),
        ("child relabeling invariance", 10, relabeling),
        ("perturbation seed independence", 30, seed_independence),
        ("omega and beta modes agree", 30, modes_agree),
        ("rank-2 oracle agreement", 60, oracle),
        ("primitive wall-crossing", 1, primitive_wall_crossing),
        ("joint consistency", 60, joints),
        ("multicover round trip", 5, multicover),
        ("algebra invariants", 5, algebra),
        ("CLI determinism", 30, determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        let line = match res {
            Ok(d) if took <= Duration::from_secs(*limit) => format!("PASS {:>2} {name}: {d}", i + 1),
            Ok(d) => format!("FAIL {:>2} {name}: {d}, over the time limit", i + 1),
            Err(e) => format!("FAIL {:>2} {name}: {e}", i + 1),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line} ({:.2}s / {limit}s)", took.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
