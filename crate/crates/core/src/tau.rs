//! Constructors for polynomial tau-functions.
//!
//! A BKP tau-function is fixed by an extended strict partition `λ` and one
//! constant sequence `c_i` per part: it is the Pfaffian of the two-point
//! functions of `v_i = Σ_{m≥0} s_m(c_i) φ_{m−λ_i}`. Its KP "square" is the
//! `4n × 4n` Pfaffian of the word `v_1…v_{2n} v̂_1…v̂_{2n}` evaluated with
//! charged fermions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{pfaffian, UpperTriMatrix};
use crate::ring::{rat, substitute, tilde, Bank, GaussRat, Poly, Rational, TimeArgument};
use crate::schur::{elem_schur_table, elem_schur_table_from, schur_lambda, ExtendedStrictPartition, Partition};

/// `(λ, {c_i})` with all leading coefficients normalized to 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TauSpec {
    pub lambda: ExtendedStrictPartition,
    /// `constants[i][k-1] = c_{i,k}`; finitely supported.
    pub constants: Vec<Vec<Rational>>,
}

impl TauSpec {
    /// An empty `constants` list means all constants vanish. If `parts` had
    /// odd length it is padded with a zero part, whose constants are zero.
    pub fn new(parts: Vec<u32>, mut constants: Vec<Vec<Rational>>) -> Result<Self> {
        let given = parts.len();
        let lambda = ExtendedStrictPartition::new(parts)?;
        if constants.is_empty() {
            constants = vec![Vec::new(); lambda.len()];
        } else if constants.len() == given && given < lambda.len() {
            constants.push(Vec::new());
        }
        if constants.len() != lambda.len() {
            return Err(Error::ConstantsLength { parts: lambda.len(), constants: constants.len() });
        }
        Ok(TauSpec { lambda, constants })
    }

    pub fn zero_constants(parts: Vec<u32>) -> Result<Self> {
        TauSpec::new(parts, Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        self.lambda.parts()
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    pub fn has_zero_constants(&self) -> bool {
        self.constants.iter().flatten().all(Zero::is_zero)
    }

    /// Builds a spec from the coefficient series of the vectors `v_i`,
    /// keeping `order` constants per part.
    pub fn from_series(series: &[CoeffSeries], order: usize) -> Result<Self> {
        let parts = series.iter().map(|s| s.leading_index).collect();
        let constants = series.iter().map(|s| series_to_constants(s, order)).collect::<Result<_>>()?;
        TauSpec::new(parts, constants)
    }
}

/// Coefficients `a_j`, `j ≥ −N`, of a vector `Σ_j a_j φ_j`, stored from
/// `a_{−N}` upward. The leading coefficient must be 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoeffSeries {
    pub leading_index: u32,
    pub coeffs: Vec<Rational>,
}

impl CoeffSeries {
    pub fn new(leading_index: u32, coeffs: Vec<Rational>) -> Result<Self> {
        match coeffs.first() {
            Some(a) if a.is_one() => Ok(CoeffSeries { leading_index, coeffs }),
            Some(a) => Err(Error::LeadingCoefficient(crate::ring::fmt_rational(a))),
            None => Err(Error::LeadingCoefficient("nothing".into())),
        }
    }
}

/// Formal logarithm: the `c_1..c_order` with
/// `Σ_{j≥0} a_{j−N} z^j = exp(Σ_{j≥1} c_j z^j)`.
pub fn series_to_constants(s: &CoeffSeries, order: usize) -> Result<Vec<Rational>> {
    let a = |j: usize| s.coeffs.get(j).cloned().unwrap_or_else(Rational::zero);
    if !a(0).is_one() {
        return Err(Error::LeadingCoefficient(crate::ring::fmt_rational(&a(0))));
    }
    // n c_n = n a_n − Σ_{k=1}^{n−1} k c_k a_{n−k}
    let mut c: Vec<Rational> = Vec::with_capacity(order);
    for n in 1..=order {
        let mut acc = a(n) * Rational::from_integer(BigInt::from(n));
        for k in 1..n {
            acc -= &c[k - 1] * a(n - k) * Rational::from_integer(BigInt::from(k));
        }
        c.push(acc / Rational::from_integer(BigInt::from(n)));
    }
    Ok(c)
}

/// Formal exponential: `a_0..a_order` with `a_j = s_j(c)`.
pub fn constants_to_series(c: &[Rational], leading_index: u32, order: usize) -> CoeffSeries {
    let s = elem_schur_table(order, &TimeArgument::constants(c));
    let coeffs = s.into_iter().map(|p| p.constant_term().re).collect();
    CoeffSeries { leading_index, coeffs }
}

fn half() -> Rational {
    rat(1, 2)
}

fn at(table: &[Poly], idx: usize) -> Poly {
    table.get(idx).cloned().unwrap_or_default()
}

/// `χ̄_{N,M}(s, t) = ½ s_N(t) s_M(s) + Σ_{k=1}^{M} (−1)^k s_{N+k}(t) s_{M−k}(s)`.
/// The first subscript goes with the second argument.
pub fn chi_bar(n: u32, m: u32, s: &TimeArgument, t: &TimeArgument) -> Poly {
    let (n, m) = (n as usize, m as usize);
    let st = elem_schur_table(n + m, t);
    let ss = elem_schur_table(m, s);
    chi_bar_tables(n, m, &ss, &st)
}

/// [`chi_bar`] on precomputed Schur tables of its two arguments.
fn chi_bar_tables(n: usize, m: usize, s_of_s: &[Poly], s_of_t: &[Poly]) -> Poly {
    let mut acc = (&at(s_of_t, n) * &at(s_of_s, m)).scale_rat(&half());
    for k in 1..=m {
        let term = &at(s_of_t, n + k) * &at(s_of_s, m - k);
        if k % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

/// Placement of the alternating signs in `χ±`.
///
/// Only [`SignConvention::Validated`] reproduces the fermionic two-point
/// functions; the other readings are kept so the Fock-space check can show
/// that they fail.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SignConvention {
    /// `(−1)^M` on the first sum, `(−1)^N` on the second.
    Validated,
    /// `(−1)^N` on the first sum, `(−1)^M` on the second.
    AsPrinted,
    /// `(−1)^k` inside both sums.
    Alternating,
}

impl SignConvention {
    fn signs(self, n: usize, m: usize, k: usize) -> (bool, bool) {
        let even = |x: usize| x.is_multiple_of(2);
        match self {
            SignConvention::Validated => (even(m), even(n)),
            SignConvention::AsPrinted => (even(n), even(m)),
            SignConvention::Alternating => (even(k), even(k)),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PlusMinus {
    Plus,
    Minus,
}

/// `χ±_{N,M}(s,t,u,v) = ½ Σ_{k=0}^{M} σ s_{N+k}(s) s_{M−k}(−t)
///                    ± ½ Σ_{k=1}^{M} σ' s_{N+k}(−u) s_{M−k}(v)`.
pub fn chi_pm(sign: PlusMinus, n: u32, m: u32, args: [&TimeArgument; 4], conv: SignConvention) -> Poly {
    let (n, m) = (n as usize, m as usize);
    let [s, t, u, v] = args;
    let ss = elem_schur_table(n + m, s);
    let smt = elem_schur_table(m, &t.negated());
    let smu = elem_schur_table(n + m, &u.negated());
    let sv = elem_schur_table(m, v);
    let (first, second) = chi_pm_sums(n, m, &ss, &smt, &smu, &sv, conv);
    combine_pm(sign, &first, &second)
}

fn combine_pm(sign: PlusMinus, first: &Poly, second: &Poly) -> Poly {
    let sum = match sign {
        PlusMinus::Plus => first + second,
        PlusMinus::Minus => first - second,
    };
    sum.scale_rat(&half())
}

/// The two un-halved sums of `χ±`, from Schur tables of `s`, `−t`, `−u`, `v`.
fn chi_pm_sums(
    n: usize,
    m: usize,
    ss: &[Poly],
    smt: &[Poly],
    smu: &[Poly],
    sv: &[Poly],
    conv: SignConvention,
) -> (Poly, Poly) {
    let mut first = Poly::zero();
    let mut second = Poly::zero();
    for k in 0..=m {
        let (p1, p2) = conv.signs(n, m, k);
        let a = &at(ss, n + k) * &at(smt, m - k);
        if p1 {
            first += &a;
        } else {
            first -= &a;
        }
        if k >= 1 {
            let b = &at(smu, n + k) * &at(sv, m - k);
            if p2 {
                second += &b;
            } else {
                second -= &b;
            }
        }
    }
    (first, second)
}

/// BKP Pfaffian matrix `χ̄_{λ_i,λ_j}` at `t̄ + c_·` in the given bank.
///
/// The χ̄ pairing puts the first subscript with the second argument, so the
/// arguments go in as `(t̄ + c_j, t̄ + c_i)`: that is the order that makes
/// each entry the two-point function `⟨v_i v_j⟩`.
pub fn bkp_matrix(spec: &TauSpec, bank: Bank) -> UpperTriMatrix {
    let lam = spec.parts();
    let max = 2 * spec.lambda.max_part() as usize;
    let tables: Vec<Vec<Poly>> =
        spec.constants.iter().map(|c| elem_schur_table(max, &TimeArgument::odd_times(bank).plus(c))).collect();
    UpperTriMatrix::from_fn(spec.len(), |i, j| chi_bar_tables(lam[i] as usize, lam[j] as usize, &tables[j], &tables[i]))
}

/// `τ_B(t̄) = Pf(χ̄_{λ_i λ_j}(t̄ + c_j, t̄ + c_i))`, an odd-only polynomial.
pub fn tau_bkp(spec: &TauSpec) -> Poly {
    pfaffian(&bkp_matrix(spec, Bank::T)).expect("extended strict partitions have even length")
}

/// The blocks `A⁺` and `A⁻` of the KP square, as full `2n × 2n` arrays.
pub fn kp_blocks(spec: &TauSpec, conv: SignConvention) -> (Vec<Vec<Poly>>, Vec<Vec<Poly>>) {
    let lam = spec.parts();
    let len = spec.len();
    let max = 2 * spec.lambda.max_part() as usize;
    // s(t + c_i) and s(−(t − c̃_i))
    let plus: Vec<Vec<Poly>> =
        spec.constants.iter().map(|c| elem_schur_table(max, &TimeArgument::times(Bank::T).plus(c))).collect();
    let minus: Vec<Vec<Poly>> = spec
        .constants
        .iter()
        .map(|c| elem_schur_table(max, &TimeArgument::times(Bank::T).minus(&tilde(c)).negated()))
        .collect();
    let mut a_plus = vec![vec![Poly::zero(); len]; len];
    let mut a_minus = vec![vec![Poly::zero(); len]; len];
    for i in 0..len {
        for j in 0..len {
            let (n, m) = (lam[i] as usize, lam[j] as usize);
            // (s, t, u, v) = (t + c_i, t − c̃_j, t − c̃_i, t + c_j)
            let (first, second) = chi_pm_sums(n, m, &plus[i], &minus[j], &minus[i], &plus[j], conv);
            a_plus[i][j] = combine_pm(PlusMinus::Plus, &first, &second);
            a_minus[i][j] = combine_pm(PlusMinus::Minus, &first, &second);
        }
    }
    (a_plus, a_minus)
}

/// Upper triangle of `[[A⁺, −√−1·A⁻], [·, A⁺]]`.
pub fn kp_matrix(spec: &TauSpec, conv: SignConvention) -> UpperTriMatrix {
    let (a_plus, a_minus) = kp_blocks(spec, conv);
    let len = spec.len();
    let minus_i = -GaussRat::i();
    UpperTriMatrix::from_fn(2 * len, |i, j| {
        if j < len {
            a_plus[i][j].clone()
        } else if i < len {
            a_minus[i][j - len].scale(&minus_i)
        } else {
            a_plus[i - len][j - len].clone()
        }
    })
}

/// The KP tau-function whose restriction to odd times is `τ_B²`.
pub fn tau_kp_square(spec: &TauSpec) -> Result<Poly> {
    tau_kp_square_with(spec, SignConvention::Validated)
}

pub fn tau_kp_square_with(spec: &TauSpec, conv: SignConvention) -> Result<Poly> {
    let pf = pfaffian(&kp_matrix(spec, conv))?;
    if !pf.is_real() {
        return Err(Error::ImaginaryTau);
    }
    Ok(pf)
}

/// Polynomial KdV tau-function: the staircase Schur function `s_{(k,…,1)}`.
pub fn kdv_tau(k: u32) -> Poly {
    schur_lambda(&Partition::staircase(k))
}

/// `kdv_tau(k)` with every time halved (even times set to zero).
pub fn kdv_half(k: u32) -> Poly {
    let halve = TimeArgument::scaled_times(Bank::T, half(), half());
    substitute(&kdv_tau(k), &halve).restrict_even_zero()
}

/// Schur table of a general component sequence; re-exported for callers
/// that assemble their own arguments.
pub fn schur_table(components: &[Poly], max: usize) -> Vec<Poly> {
    elem_schur_table_from(components, max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat_int;
    use crate::schur::q_schur;

    fn t(k: u32) -> Poly {
        Poly::t(k)
    }

    #[test]
    fn chi_bar_examples() {
        let bar = TimeArgument::odd_times(Bank::T);
        assert_eq!(chi_bar(0, 0, &bar, &bar), Poly::rational(rat(1, 2)));
        assert_eq!(chi_bar(1, 0, &bar, &bar), t(1).scale_rat(&rat(1, 2)));
        let expect = &t(1).pow(3).scale_rat(&rat(1, 12)) - &t(3);
        assert_eq!(chi_bar(2, 1, &bar, &bar), expect);
    }

    #[test]
    fn chi_bar_antisymmetry_at_odd_arguments() {
        let u = TimeArgument::odd_times(Bank::T).plus(&[rat(1, 3), rat_int(0), rat(-1, 2)]);
        for n in 0..=4 {
            for m in 0..=4 {
                let s = &chi_bar(n, m, &u, &u) + &chi_bar(m, n, &u, &u);
                let expect = if (n, m) == (0, 0) { Poly::one() } else { Poly::zero() };
                assert_eq!(s, expect, "({n}, {m})");
            }
        }
    }

    #[test]
    fn chi_pm_with_empty_second_sum() {
        let arg = TimeArgument::times(Bank::T);
        let args = [&arg; 4];
        let p = chi_pm(PlusMinus::Plus, 3, 0, args, SignConvention::Validated);
        let m = chi_pm(PlusMinus::Minus, 3, 0, args, SignConvention::Validated);
        assert_eq!(p, m);
        assert_eq!(p, elem_schur_table(3, &arg)[3].scale_rat(&rat(1, 2)));
    }

    #[test]
    fn chi_pm_matches_chi_bar_at_odd_times_without_constants() {
        let arg = TimeArgument::odd_times(Bank::T);
        for n in 0..=3 {
            for m in 0..=3 {
                let p = chi_pm(PlusMinus::Plus, n, m, [&arg; 4], SignConvention::Validated);
                assert_eq!(p, chi_bar(n, m, &arg, &arg), "({n}, {m})");
            }
        }
    }

    #[test]
    fn tau_bkp_small() {
        assert_eq!(tau_bkp(&TauSpec::zero_constants(vec![1, 0]).unwrap()), t(1).scale_rat(&rat(1, 2)));
        let expect = &t(1).pow(3).scale_rat(&rat(1, 12)) - &t(3);
        assert_eq!(tau_bkp(&TauSpec::zero_constants(vec![2, 1]).unwrap()), expect);
        assert_eq!(tau_bkp(&TauSpec::zero_constants(vec![]).unwrap()), Poly::one());
    }

    #[test]
    fn tau_bkp_is_scaled_q_schur_without_constants() {
        for parts in [vec![1, 0], vec![2, 0], vec![3, 1], vec![3, 2, 1, 0]] {
            let spec = TauSpec::zero_constants(parts.clone()).unwrap();
            let n = spec.lambda.half_len() as i64;
            let q = q_schur(&parts).unwrap();
            assert_eq!(tau_bkp(&spec).scale_rat(&rat_int(1 << n)), q, "{parts:?}");
        }
    }

    #[test]
    fn kp_square_small() {
        let spec = TauSpec::zero_constants(vec![1, 0]).unwrap();
        let kp = tau_kp_square(&spec).unwrap();
        assert_eq!(kp.restrict_even_zero(), t(1).pow(2).scale_rat(&rat(1, 4)));
        let s11 = schur_lambda(&Partition::new(vec![1, 1]).unwrap());
        assert!(kp.ratio_to(&s11).is_some());
        assert_eq!(tau_kp_square(&TauSpec::zero_constants(vec![]).unwrap()).unwrap(), Poly::one());
    }

    #[test]
    fn series_constants_examples() {
        let s = CoeffSeries::new(0, vec![rat_int(1), rat(3, 2)]).unwrap();
        let c = series_to_constants(&s, 3).unwrap();
        assert_eq!(c, vec![rat(3, 2), rat(-9, 8), rat(9, 8)]);
        let one = CoeffSeries::new(2, vec![rat_int(1)]).unwrap();
        assert!(series_to_constants(&one, 4).unwrap().iter().all(Zero::is_zero));
        // log(1 + z + z²) = log(1 − z³) − log(1 − z)
        let s = CoeffSeries::new(1, vec![rat_int(1), rat_int(1), rat_int(1)]).unwrap();
        let c = series_to_constants(&s, 4).unwrap();
        assert_eq!(c, vec![rat_int(1), rat(1, 2), rat(-2, 3), rat(1, 4)]);
        assert!(CoeffSeries::new(0, vec![rat_int(2)]).is_err());
    }

    #[test]
    fn series_round_trip() {
        let c = vec![rat(1, 2), rat_int(-1), rat(2, 3)];
        let s = constants_to_series(&c, 3, 6);
        assert_eq!(s.leading_index, 3);
        let back = series_to_constants(&s, 6).unwrap();
        assert_eq!(&back[..3], &c[..]);
        assert!(back[3..].iter().all(Zero::is_zero));
    }

    #[test]
    fn kdv_examples() {
        assert_eq!(kdv_tau(1), t(1));
        assert_eq!(kdv_half(1), t(1).scale_rat(&rat(1, 2)));
        assert_eq!(kdv_tau(2), &t(1).pow(3).scale_rat(&rat(1, 3)) - &t(3));
        assert_eq!(kdv_tau(0), Poly::one());
        assert_eq!(kdv_half(0), Poly::one());
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            TauSpec::new(vec![2, 1], vec![vec![]]),
            Err(Error::ConstantsLength { parts: 2, constants: 1 })
        ));
        let padded = TauSpec::new(vec![2], vec![vec![rat_int(1)]]).unwrap();
        assert_eq!(padded.parts(), &[2, 0]);
        assert_eq!(padded.constants.len(), 2);
        assert!(TauSpec::zero_constants(vec![1, 1]).is_err());
    }
}
