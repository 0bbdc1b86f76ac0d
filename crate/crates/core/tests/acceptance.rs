//! Acceptance criteria. Runs as a plain binary so that every criterion
//! prints exactly one PASS/FAIL line; exits non-zero if any fails.

use std::time::Instant;

use pftau::fock::{oracle_kdv, oracle_tau_bkp, oracle_tau_kp_square, oracle_two_bank};
use pftau::sample::{random_rect, random_upper, rng, suite, SUITE_SEED};
use pftau::schur::{character_check, q_schur, schur_lambda, Partition};
use pftau::tau::{kdv_half, kdv_tau, tau_bkp, tau_kp_square, TauSpec};
use pftau::{
    bkp_defect, block_pfaffian, caianiello_expand, determinant, kp_defect, pfaffian, rat, Bank, GaussRat, Poly,
    RectMatrix, UpperTriMatrix,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn c1_main_theorem(specs: &[TauSpec]) -> Outcome {
    for s in specs {
        let bkp = tau_bkp(s);
        let kp = tau_kp_square(s).map_err(|e| format!("{s:?}: {e}"))?;
        check(bkp.pow(2) == kp.restrict_even_zero(), || format!("τ_B² ≠ τ_KP|odd for {s:?}"))?;
    }
    Ok(format!("{} specs", specs.len()))
}

fn c2_bkp(specs: &[TauSpec]) -> Outcome {
    for s in specs {
        let r = bkp_defect(&tau_bkp(s)).map_err(|e| e.to_string())?;
        check(r.is_zero, || format!("{:?}: witness {:?}", s.parts(), r.witness.map(|m| m.to_string())))?;
    }
    Ok(format!("{} specs", specs.len()))
}

fn c3_kp(specs: &[TauSpec]) -> Outcome {
    for s in specs {
        let kp = tau_kp_square(s).map_err(|e| format!("{s:?}: {e}"))?;
        check(kp.is_real(), || format!("imaginary part for {s:?}"))?;
        let r = kp_defect(&kp, &kp, 0);
        check(r.is_zero, || format!("{:?}: witness {:?}", s.parts(), r.witness.map(|m| m.to_string())))?;
    }
    Ok(format!("{} specs, all real", specs.len()))
}

fn c4_caianiello() -> Outcome {
    // analytic m = k = 2 case: Pf = x·y − det W
    let x = UpperTriMatrix::from_fn(2, |_, _| Poly::t(1));
    let y = UpperTriMatrix::from_fn(2, |_, _| Poly::t(2));
    let w = RectMatrix::from_fn(2, 2, |i, j| Poly::y((2 * i + j + 1) as u32));
    let hand = &(&Poly::t(1) * &Poly::t(2)) - &determinant(&w).unwrap();
    let got = caianiello_expand(&x, &y, &w).map_err(|e| e.to_string())?;
    check(got == hand, || format!("hand case gave {got}"))?;
    check(block_pfaffian(&x, &y, &w).unwrap() == hand, || "block Pfaffian hand case".into())?;

    let mut r = rng(4);
    let mut n = 0;
    for (m, k) in [(2, 2), (2, 4), (4, 2), (4, 4)] {
        for _ in 0..55 {
            let x = random_upper(&mut r, m);
            let y = random_upper(&mut r, k);
            let w = random_rect(&mut r, m, k);
            let lhs = caianiello_expand(&x, &y, &w).map_err(|e| e.to_string())?;
            let rhs = block_pfaffian(&x, &y, &w).map_err(|e| e.to_string())?;
            check(lhs == rhs, || format!("mismatch at m={m}, k={k}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} random instances + hand case"))
}

fn c5_pf_det() -> Outcome {
    let mut r = rng(5);
    for n in [2, 4, 6, 8] {
        for _ in 0..50 {
            let a = random_upper(&mut r, n);
            let pf = pfaffian(&a).map_err(|e| e.to_string())?;
            let det = determinant(&a.skew_extension()).map_err(|e| e.to_string())?;
            check(pf.pow(2) == det, || format!("Pf² ≠ det at n={n}"))?;
        }
    }
    Ok("200 instances".into())
}

fn c6_kdv() -> Outcome {
    let mut notes = Vec::new();
    for k in 1..=3u32 {
        let tau = kdv_tau(k);
        check(tau.is_odd_only(), || format!("kdv_tau({k}) has even times"))?;
        let half = kdv_half(k);
        let r = bkp_defect(&half).map_err(|e| e.to_string())?;
        check(r.is_zero, || format!("bkp_defect(kdv_half({k})) ≠ 0"))?;
        let stair: Vec<u32> = (1..=k).rev().collect();
        let q = q_schur(&stair).map_err(|e| e.to_string())?;
        let rect = schur_lambda(&Partition::rectangle(k, k + 1)).restrict_even_zero();
        let expect = GaussRat::real(rat(1, 1 << k));
        let a = half.ratio_to(&q);
        let b = half.pow(2).ratio_to(&rect);
        check(a.as_ref() == Some(&expect), || format!("k={k}: kdv_half/Q = {a:?}"))?;
        check(b.as_ref() == Some(&expect), || format!("k={k}: kdv_half²/s = {b:?}"))?;
        let o = oracle_kdv(k).map_err(|e| e.to_string())?;
        check(o == tau || o == -tau.clone(), || format!("k={k}: fermionic KdV word disagrees"))?;
        notes.push(format!("k={k}: {expect}"));
    }
    Ok(format!("constants {}", notes.join(", ")))
}

fn c7_oracle(specs: &[TauSpec]) -> Outcome {
    let mut n = 0;
    for s in specs.iter().filter(|s| s.lambda.max_part() <= 3) {
        let o = oracle_tau_bkp(s).map_err(|e| e.to_string())?;
        check(o == tau_bkp(s), || format!("BKP oracle mismatch for {s:?}"))?;
        let o = oracle_tau_kp_square(s).map_err(|e| e.to_string())?;
        check(Ok(o) == tau_kp_square(s), || format!("KP oracle mismatch for {s:?}"))?;
        n += 1;
    }
    Ok(format!("{n} specs"))
}

fn c8_schur() -> Outcome {
    let mut n = 0;
    for size in 0..=6 {
        for lam in Partition::all_of(size) {
            let s = schur_lambda(&lam);
            check(kp_defect(&s, &s, 0).is_zero, || format!("s_{lam} fails KP"))?;
            n += 1;
        }
    }
    let sq = Poly::t(1).pow(2);
    let r = kp_defect(&sq, &sq, 0);
    check(!r.is_zero, || "t1^2 passed KP".into())?;
    let w = r.witness.map(|m| m.to_string()).unwrap_or_default();
    Ok(format!("{n} Schur functions; t1^2 witness {w}"))
}

fn c9_two_bank(specs: &[TauSpec]) -> Outcome {
    let mut n = 0;
    for s in specs.iter().filter(|s| s.parts() == [1, 0] || s.parts() == [2, 1]) {
        let b = tau_bkp(s);
        let expect = &b * &b.with_bank(Bank::Y);
        let o = oracle_two_bank(s).map_err(|e| e.to_string())?;
        check(o == expect, || format!("two-bank mismatch for {s:?}"))?;
        n += 1;
    }
    check(n == 4, || format!("expected 4 specs, saw {n}"))?;
    Ok(format!("{n} specs"))
}

fn c10_character() -> Outcome {
    let start = Instant::now();
    check(character_check(20), || "series differ".into())?;
    let el = start.elapsed();
    check(el.as_secs_f64() < 1.0, || format!("took {el:?}"))?;
    Ok(format!("order 20 in {el:?}"))
}

fn main() {
    let specs = suite(SUITE_SEED);
    let criteria: Vec<Criterion> = vec![
        ("square root of the KP tau-function", Box::new(|| c1_main_theorem(&specs))),
        ("BKP identity for Pfaffian taus", Box::new(|| c2_bkp(&specs))),
        ("KP identity and realness of squares", Box::new(|| c3_kp(&specs))),
        ("Caianiello expansion", Box::new(c4_caianiello)),
        ("Pf^2 = det", Box::new(c5_pf_det)),
        ("KdV family", Box::new(c6_kdv)),
        ("Fock-space oracle equivalence", Box::new(|| c7_oracle(&specs))),
        ("Schur functions solve KP", Box::new(c8_schur)),
        ("two-bank factorization", Box::new(|| c9_two_bank(&specs))),
        ("character identity", Box::new(c10_character)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("PASS criterion {:>2}: {name} ({msg}; {secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} ({msg}; {secs:.2}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
