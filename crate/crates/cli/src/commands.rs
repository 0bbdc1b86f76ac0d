use std::path::Path;

use serde_json::{json, Value};

use pftau::fock::{oracle_tau_bkp, oracle_tau_kp_square, parse_word, wick_vev};
use pftau::io::{parse_constants, parse_lambda, spec_from_str};
use pftau::sample::{random_rect, random_upper, rng};
use pftau::schur::{character_check, q_schur, schur_lambda, Partition};
use pftau::tau::{kdv_half, kdv_tau, tau_bkp, tau_kp_square, TauSpec};
use pftau::{bkp_defect, block_pfaffian, caianiello_expand, kp_defect, DefectReport, Poly};

use crate::{Input, OracleKind, TauKind, VerifyKind};

/// Oracle inputs beyond these sizes are refused.
const ORACLE_MAX_PART: u32 = 4;
const ORACLE_MAX_LEN: usize = 4;

pub struct Report {
    pub text: String,
    pub json: Value,
    pub holds: bool,
}

pub struct VerifyOpts<'a> {
    pub poly2: Option<&'a str>,
    pub d: u32,
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    pub order: usize,
}

type CmdResult = Result<Report, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn spec_of(input: &Input) -> Result<TauSpec, String> {
    if let Some(path) = &input.spec {
        if input.lambda.is_some() || input.constants.is_some() {
            return Err("--spec cannot be combined with --lambda/--constants".into());
        }
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        return spec_from_str(&text).map_err(err);
    }
    let lambda = input.lambda.as_deref().ok_or("missing --lambda or --spec")?;
    let parts = parse_lambda(lambda).map_err(err)?;
    let constants = match &input.constants {
        Some(c) => parse_constants(c).map_err(err)?,
        None => Vec::new(),
    };
    TauSpec::new(parts, constants).map_err(err)
}

fn poly_of(s: &str) -> Result<Poly, String> {
    s.parse::<Poly>().map_err(err)
}

fn k_of(input: &Input) -> Result<u32, String> {
    input.k.ok_or_else(|| "missing --k".to_string())
}

fn poly_report(p: &Poly) -> Report {
    Report {
        text: p.canonical_string(),
        json: json!({ "poly": p.canonical_string(), "degree": p.weighted_degree() }),
        holds: true,
    }
}

fn defect_report(r: &DefectReport) -> Report {
    let text = if r.is_zero {
        "identity holds".to_string()
    } else {
        let w = r.witness.as_ref().map(ToString::to_string).unwrap_or_default();
        format!("identity fails\nwitness: {w}\ndefect: {}", r.defect.canonical_string())
    };
    Report { text, json: r.to_json(), holds: r.is_zero }
}

pub fn tau(kind: TauKind, input: &Input) -> CmdResult {
    let p = match kind {
        TauKind::Bkp => tau_bkp(&spec_of(input)?),
        TauKind::KpSquare => tau_kp_square(&spec_of(input)?).map_err(err)?,
        TauKind::Kdv => kdv_tau(k_of(input)?),
        TauKind::KdvHalf => kdv_half(k_of(input)?),
        TauKind::Schur => {
            let parts = parse_lambda(input.lambda.as_deref().ok_or("missing --lambda")?).map_err(err)?;
            schur_lambda(&Partition::new(parts).map_err(err)?)
        }
        TauKind::Qschur => {
            let parts = parse_lambda(input.lambda.as_deref().ok_or("missing --lambda")?).map_err(err)?;
            q_schur(&parts).map_err(err)?
        }
    };
    Ok(poly_report(&p))
}

pub fn verify(kind: VerifyKind, input: &Input, opts: &VerifyOpts) -> CmdResult {
    match kind {
        VerifyKind::Kp => {
            let (a, b) = match &input.poly {
                Some(p) => {
                    let a = poly_of(p)?;
                    let b = opts.poly2.map(poly_of).transpose()?.unwrap_or_else(|| a.clone());
                    (a, b)
                }
                None => {
                    let kp = tau_kp_square(&spec_of(input)?).map_err(err)?;
                    (kp.clone(), kp)
                }
            };
            Ok(defect_report(&kp_defect(&a, &b, opts.d)))
        }
        VerifyKind::Bkp => {
            let tau = match &input.poly {
                Some(p) => poly_of(p)?,
                None => tau_bkp(&spec_of(input)?),
            };
            Ok(defect_report(&bkp_defect(&tau).map_err(err)?))
        }
        VerifyKind::Square => {
            let spec = spec_of(input)?;
            let bkp = tau_bkp(&spec);
            let kp = tau_kp_square(&spec).map_err(err)?;
            let square = bkp.pow(2) == kp.restrict_even_zero();
            let kp_ok = kp_defect(&kp, &kp, 0).is_zero;
            let holds = square && kp_ok;
            let text = format!(
                "bkp: {}\nkp-square: {}\nsquare root: {}\nkp identity: {}",
                bkp.canonical_string(),
                kp.canonical_string(),
                if square { "holds" } else { "fails" },
                if kp_ok { "holds" } else { "fails" },
            );
            let json = json!({
                "bkp": bkp.canonical_string(),
                "kp_square": kp.canonical_string(),
                "square_root": square,
                "kp_identity": kp_ok,
                "holds": holds,
            });
            Ok(Report { text, json, holds })
        }
        VerifyKind::Caianiello => {
            let (m, k) = (opts.m, input.k.unwrap_or(2) as usize);
            if (m + k) % 2 == 1 {
                return Err(format!("block sizes m={m}, k={k} must have even sum"));
            }
            if m + k > 12 {
                return Err("block sizes are limited to m + k <= 12".into());
            }
            let mut r = rng(opts.seed);
            let mut failures = 0;
            for _ in 0..opts.trials {
                let x = random_upper(&mut r, m);
                let y = random_upper(&mut r, k);
                let w = random_rect(&mut r, m, k);
                if caianiello_expand(&x, &y, &w).map_err(err)? != block_pfaffian(&x, &y, &w).map_err(err)? {
                    failures += 1;
                }
            }
            let holds = failures == 0;
            let text = format!(
                "{} {}/{} instances (m={m}, k={k}, seed={})",
                if holds { "identity holds:" } else { "identity fails:" },
                opts.trials - failures,
                opts.trials,
                opts.seed,
            );
            let json = json!({ "holds": holds, "trials": opts.trials, "failures": failures, "m": m, "k": k, "seed": opts.seed });
            Ok(Report { text, json, holds })
        }
        VerifyKind::Character => {
            let holds = character_check(opts.order);
            let text = format!("character identity to order {}: {}", opts.order, if holds { "holds" } else { "fails" });
            Ok(Report { text, json: json!({ "holds": holds, "order": opts.order }), holds })
        }
    }
}

pub fn oracle(kind: OracleKind, input: &Input, word: Option<&str>) -> CmdResult {
    match kind {
        OracleKind::CrossCheck => {
            let spec = spec_of(input)?;
            if spec.lambda.max_part() > ORACLE_MAX_PART || spec.len() > ORACLE_MAX_LEN {
                return Err(format!("oracle limited to parts <= {ORACLE_MAX_PART} and length <= {ORACLE_MAX_LEN}"));
            }
            let bkp = tau_bkp(&spec);
            let bkp_o = oracle_tau_bkp(&spec).map_err(err)?;
            let kp = tau_kp_square(&spec).map_err(err)?;
            let kp_o = oracle_tau_kp_square(&spec).map_err(err)?;
            let holds = bkp == bkp_o && kp == kp_o;
            let verdict = if holds { "MATCH" } else { "MISMATCH" };
            let text = format!(
                "bkp constructor: {}\nbkp oracle: {}\nkp-square constructor: {}\nkp-square oracle: {}\n{verdict}",
                bkp.canonical_string(),
                bkp_o.canonical_string(),
                kp.canonical_string(),
                kp_o.canonical_string(),
            );
            let json = json!({
                "bkp": { "constructor": bkp.canonical_string(), "oracle": bkp_o.canonical_string() },
                "kp_square": { "constructor": kp.canonical_string(), "oracle": kp_o.canonical_string() },
                "match": holds,
            });
            Ok(Report { text, json, holds })
        }
        OracleKind::Vev => {
            let w = parse_word(word.ok_or("missing --word")?).map_err(err)?;
            let v = wick_vev(&w).map_err(err)?;
            Ok(poly_report(&v))
        }
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n")),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
