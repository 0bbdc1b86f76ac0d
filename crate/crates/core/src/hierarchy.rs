//! Exact bilinear-identity checks for polynomial tau-functions.
//!
//! Both identities are residues of products of three Laurent series in `z`.
//! For polynomial inputs every series is finite on the relevant side, so
//! the residue is a finite sum over exponent triples and the defect is an
//! exact polynomial in the two banks `t` and `y`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{rat_int, Bank, Monomial, Parity, Poly, Rational, TimeArgument};
use crate::schur::elem_schur_table;

/// Coefficients of `τ(x + scale·[z⁻¹])` in powers of `z⁻¹`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MiwaExpansion {
    /// `coeffs[a]` multiplies `z^{−a}`.
    pub coeffs: Vec<Poly>,
}

impl MiwaExpansion {
    pub fn get(&self, a: usize) -> Option<&Poly> {
        self.coeffs.get(a)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

pub fn miwa_expand(tau: &Poly, scale: &Rational, parity: Parity) -> Result<MiwaExpansion> {
    if parity == Parity::Odd && !tau.is_odd_only() {
        return Err(Error::EvenVariable(tau.canonical_string()));
    }
    Ok(MiwaExpansion { coeffs: tau.shift_expand(scale, parity) })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DefectReport {
    pub defect: Poly,
    pub is_zero: bool,
    pub witness: Option<Monomial>,
}

impl DefectReport {
    pub fn new(defect: Poly) -> Self {
        let witness = defect.leading_monomial().cloned();
        DefectReport { is_zero: defect.is_zero(), defect, witness }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "is_zero": self.is_zero,
            "defect": self.defect.canonical_string(),
            "witness": self.witness.as_ref().map(|m| m.to_string()),
        })
    }
}

/// `Σ_m U_m(t)·V_m(y)`, with `U_m = Σ_a s_{a−m}(ρ t) p_a(t)` and
/// `V_m = Σ_b s_{b+m+shift}(−ρ y) q_b(y)`.
///
/// Splitting `s_j(t − y) = Σ_i s_i(t) s_{j−i}(−y)` turns the triple sum into
/// a sum of products of one-bank polynomials.
fn separated_sum(p: &[Poly], q: &[Poly], shift: i64, times_t: &TimeArgument, times_y: &TimeArgument) -> Poly {
    if p.is_empty() || q.is_empty() {
        return Poly::zero();
    }
    let (dp, dq) = (p.len() as i64 - 1, q.len() as i64 - 1);
    // need a − m ≥ 0 and b + m + shift ≥ 0
    let (lo, hi) = (-shift - dq, dp);
    if lo > hi {
        return Poly::zero();
    }
    let span = (hi - lo) as usize;
    let st = elem_schur_table(span, times_t);
    let sy = elem_schur_table(span, &times_y.negated());
    let mut out = Poly::zero();
    for m in lo..=hi {
        let mut u = Poly::zero();
        for (a, pa) in p.iter().enumerate() {
            let i = a as i64 - m;
            if i >= 0 && (i as usize) < st.len() && !pa.is_zero() {
                u += &(&st[i as usize] * pa);
            }
        }
        if u.is_zero() {
            continue;
        }
        let mut v = Poly::zero();
        for (b, qb) in q.iter().enumerate() {
            let i = b as i64 + m + shift;
            if i >= 0 && (i as usize) < sy.len() && !qb.is_zero() {
                v += &(&sy[i as usize] * qb);
            }
        }
        if !v.is_zero() {
            out += &(&u * &v);
        }
    }
    out
}

/// Residue of `z^d τ_k(t − [z⁻¹]) τ_ℓ(y + [z⁻¹]) exp(Σ (t_i − y_i) z^i)`.
///
/// Both inputs are read as polynomials in `t`; `τ_ℓ` is moved to the `y`
/// bank. The defect can contain variables of index up to `deg τ_k + deg τ_ℓ`.
pub fn kp_defect(tau_k: &Poly, tau_l: &Poly, d: u32) -> DefectReport {
    let p = tau_k.with_bank(Bank::T).shift_expand(&rat_int(-1), Parity::All);
    let q = tau_l.with_bank(Bank::Y).shift_expand(&rat_int(1), Parity::All);
    // j = a + b − d − 1
    let defect = separated_sum(&p, &q, -(d as i64) - 1, &TimeArgument::times(Bank::T), &TimeArgument::times(Bank::Y));
    DefectReport::new(defect)
}

/// `Res τ(t − 2[z⁻¹]_odd) τ(y + 2[z⁻¹]_odd) exp(Σ_odd (t_i − y_i) z^i) dz/z − τ(t)τ(y)`.
pub fn bkp_defect(tau: &Poly) -> Result<DefectReport> {
    if !tau.is_odd_only() {
        return Err(Error::EvenVariable(tau.canonical_string()));
    }
    let tt = tau.with_bank(Bank::T);
    let ty = tau.with_bank(Bank::Y);
    let p = tt.shift_expand(&rat_int(-2), Parity::Odd);
    let q = ty.shift_expand(&rat_int(2), Parity::Odd);
    // j = a + b
    let mut defect = separated_sum(&p, &q, 0, &TimeArgument::odd_times(Bank::T), &TimeArgument::odd_times(Bank::Y));
    defect -= &(&tt * &ty);
    Ok(DefectReport::new(defect))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, substitute};
    use crate::schur::{schur_lambda, Partition};

    /// The defect as the literal triple sum, with `s_j(t − y)` expanded
    /// directly in the two-bank ring.
    fn kp_defect_naive(tau_k: &Poly, tau_l: &Poly, d: u32) -> Poly {
        let p = tau_k.shift_expand(&rat_int(-1), Parity::All);
        let q = tau_l.with_bank(Bank::Y).shift_expand(&rat_int(1), Parity::All);
        let max = p.len() + q.len();
        let comps: Vec<Poly> = (1..=max as u32).map(|k| &Poly::t(k) - &Poly::y(k)).collect();
        let s = crate::schur::elem_schur_table_from(&comps, max);
        let mut out = Poly::zero();
        for (a, pa) in p.iter().enumerate() {
            for (b, qb) in q.iter().enumerate() {
                let j = a as i64 + b as i64 - d as i64 - 1;
                if j >= 0 {
                    out += &(&(&s[j as usize] * pa) * qb);
                }
            }
        }
        out
    }

    #[test]
    fn miwa_examples() {
        let one = miwa_expand(&Poly::one(), &rat_int(-1), Parity::All).unwrap();
        assert_eq!(one.coeffs, vec![Poly::one()]);
        let t1 = miwa_expand(&Poly::t(1), &rat_int(-1), Parity::All).unwrap();
        assert_eq!(t1.coeffs, vec![Poly::t(1), Poly::int(-1)]);
        let kdv = &Poly::t(1).pow(3).scale_rat(&rat(1, 3)) - &Poly::t(3);
        let e = miwa_expand(&kdv, &rat_int(-2), Parity::Odd).unwrap();
        assert_eq!(e.len(), 4);
        assert_eq!(e.coeffs[1], Poly::t(1).pow(2).scale_rat(&rat_int(-2)));
        assert_eq!(e.coeffs[2], Poly::t(1).scale_rat(&rat_int(4)));
        assert_eq!(e.coeffs[3], Poly::int(-2));
        assert!(miwa_expand(&Poly::t(2), &rat_int(-2), Parity::Odd).is_err());
    }

    #[test]
    fn kp_examples() {
        assert!(kp_defect(&Poly::one(), &Poly::one(), 0).is_zero);
        assert!(kp_defect(&Poly::t(1), &Poly::t(1), 0).is_zero);
        let sq = Poly::t(1).pow(2);
        let r = kp_defect(&sq, &sq, 0);
        assert!(!r.is_zero);
        assert!(r.witness.is_some());
        assert_eq!(r.defect, kp_defect_naive(&sq, &sq, 0));
    }

    #[test]
    fn separated_sum_matches_triple_sum() {
        let polys = [
            Poly::t(1).pow(2),
            &Poly::t(2) + &Poly::t(1),
            &(&Poly::t(1).pow(3) - &Poly::t(3)) + &Poly::t(1),
            schur_lambda(&Partition::new(vec![2, 1]).unwrap()),
        ];
        for a in &polys {
            for b in &polys {
                for d in 0..3 {
                    assert_eq!(kp_defect(a, b, d).defect, kp_defect_naive(a, b, d));
                }
            }
        }
    }

    #[test]
    fn modified_kp_smoke() {
        // (τ_1, τ_0) = (t1, 1) is a pair in the charge-1/charge-0 orbit
        assert!(kp_defect(&Poly::t(1), &Poly::one(), 1).is_zero);
        assert!(!kp_defect(&Poly::t(1).pow(2), &Poly::one(), 1).is_zero);
    }

    #[test]
    fn bkp_examples() {
        assert!(bkp_defect(&Poly::one()).unwrap().is_zero);
        assert!(bkp_defect(&Poly::t(1).scale_rat(&rat(1, 2))).unwrap().is_zero);
        // t1^2 = 2 Q_(2) is a tau-function; t1^3 is not
        assert!(bkp_defect(&Poly::t(1).pow(2)).unwrap().is_zero);
        let r = bkp_defect(&Poly::t(1).pow(3)).unwrap();
        assert!(!r.is_zero);
        assert!(matches!(bkp_defect(&Poly::t(2)), Err(Error::EvenVariable(_))));
    }

    #[test]
    fn schur_functions_pass_and_swap_consistently() {
        for n in 0..=4 {
            for lam in Partition::all_of(n) {
                let s = schur_lambda(&lam);
                let r = kp_defect(&s, &s, 0);
                assert!(r.is_zero, "{lam}");
                // t ↦ −t maps KP taus to KP taus up to a sign convention flip
                let neg = substitute(&s, &TimeArgument::scaled_times(Bank::T, rat_int(-1), rat_int(-1)));
                assert!(kp_defect(&neg, &neg, 0).is_zero, "{lam}");
            }
        }
    }

    #[test]
    fn report_json() {
        let r = kp_defect(&Poly::t(1).pow(2), &Poly::t(1).pow(2), 0);
        let v = r.to_json();
        assert_eq!(v["is_zero"], false);
        assert!(v["witness"].is_string());
        let ok = kp_defect(&Poly::t(1), &Poly::t(1), 0).to_json();
        assert!(ok["witness"].is_null());
        assert_eq!(ok["defect"], "0");
    }
}
