//! Brute-force vacuum expectation values of free fermions.
//!
//! Everything reduces to finite Pfaffians of two-point values: a word of
//! linear combinations of modes is contracted pairwise by Wick's theorem,
//! and Hamiltonian conjugation is a finite sum because only modes of index
//! at most `−(smallest index in the word)` can contract with anything.
//!
//! Neutral modes are related to charged ones by
//! `√2 φ_p = ψ⁺_{p+½} + (−1)^p ψ⁻_{p−½}` and
//! `√2 φ̂_p = √−1 (ψ⁺_{p+½} − (−1)^p ψ⁻_{p−½})`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, ParseError, Result};
use crate::linalg::{pfaffian, UpperTriMatrix};
use crate::ring::{rat, Bank, GaussRat, Poly, Rational, TimeArgument};
use crate::schur::elem_schur_table;
use crate::tau::TauSpec;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Species {
    Phi,
    PhiHat,
    PsiPlus,
    PsiMinus,
}

impl Species {
    pub fn is_neutral(self) -> bool {
        matches!(self, Species::Phi | Species::PhiHat)
    }

    fn tag(self) -> &'static str {
        match self {
            Species::Phi => "phi",
            Species::PhiHat => "phihat",
            Species::PsiPlus => "psi+",
            Species::PsiMinus => "psi-",
        }
    }
}

/// A single fermion mode. Indices are stored doubled, so neutral modes have
/// even `index2` and charged modes odd `index2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mode {
    pub species: Species,
    index2: i64,
}

impl Mode {
    pub fn phi(i: i64) -> Self {
        Mode { species: Species::Phi, index2: 2 * i }
    }

    pub fn phi_hat(i: i64) -> Self {
        Mode { species: Species::PhiHat, index2: 2 * i }
    }

    /// `ψ⁺_{k2/2}`; `k2` must be odd.
    pub fn psi_plus(k2: i64) -> Self {
        assert!(k2 % 2 != 0, "charged modes have half-integer index");
        Mode { species: Species::PsiPlus, index2: k2 }
    }

    /// `ψ⁻_{k2/2}`; `k2` must be odd.
    pub fn psi_minus(k2: i64) -> Self {
        assert!(k2 % 2 != 0, "charged modes have half-integer index");
        Mode { species: Species::PsiMinus, index2: k2 }
    }

    pub fn index2(self) -> i64 {
        self.index2
    }

    pub fn is_neutral(self) -> bool {
        self.species.is_neutral()
    }

    /// Same species, index shifted by the integer `j`.
    fn shifted(self, j: i64) -> Self {
        Mode { index2: self.index2 + 2 * j, ..self }
    }

    pub fn charge(self) -> i64 {
        match self.species {
            Species::PsiPlus => 1,
            Species::PsiMinus => -1,
            _ => 0,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index2 % 2 == 0 {
            write!(f, "{}:{}", self.species.tag(), self.index2 / 2)
        } else {
            write!(f, "{}:{}/2", self.species.tag(), self.index2)
        }
    }
}

impl FromStr for Mode {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let bad = || ParseError::Mode(s.to_string());
        let (tag, idx) = s.trim().split_once(':').ok_or_else(bad)?;
        let species = match tag {
            "phi" => Species::Phi,
            "phihat" => Species::PhiHat,
            "psi+" => Species::PsiPlus,
            "psi-" => Species::PsiMinus,
            _ => return Err(bad()),
        };
        let index2 = match idx.split_once('/') {
            None => 2 * idx.parse::<i64>().map_err(|_| bad())?,
            Some((num, "2")) => num.parse::<i64>().map_err(|_| bad())?,
            Some(_) => return Err(bad()),
        };
        if species.is_neutral() != (index2 % 2 == 0) {
            return Err(bad());
        }
        Ok(Mode { species, index2 })
    }
}

/// `(1/√2)^inv_sqrt2 · Σ coefficient·mode`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ModeSum {
    terms: BTreeMap<Mode, Poly>,
    pub inv_sqrt2: u32,
}

impl ModeSum {
    pub fn single(m: Mode) -> Self {
        let mut s = ModeSum::default();
        s.push(Poly::one(), m);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Poly, Mode)>>(it: I) -> Self {
        let mut s = ModeSum::default();
        for (c, m) in it {
            s.push(c, m);
        }
        s
    }

    pub fn push(&mut self, c: Poly, m: Mode) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mode, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: Mode) -> Poly {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_charged(&self) -> bool {
        self.terms.keys().any(|m| !m.is_neutral())
    }

    pub fn has_neutral(&self) -> bool {
        self.terms.keys().any(|m| m.is_neutral())
    }

    fn min_index2(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.index2).min()
    }

    /// Rewrites neutral modes in the charged basis.
    pub fn to_charged(&self) -> Result<ModeSum> {
        if !self.has_neutral() {
            return Ok(self.clone());
        }
        if self.has_charged() {
            let (a, b) = self.mixed_pair();
            return Err(Error::MixedFamilies(a, b));
        }
        let mut out = ModeSum { terms: BTreeMap::new(), inv_sqrt2: self.inv_sqrt2 + 1 };
        let i = GaussRat::i();
        for (m, c) in &self.terms {
            let p = m.index2 / 2;
            let sign = if p % 2 == 0 { Poly::one() } else { -Poly::one() };
            let plus = Mode::psi_plus(m.index2 + 1);
            let minus = Mode::psi_minus(m.index2 - 1);
            match m.species {
                Species::Phi => {
                    out.push(c.clone(), plus);
                    out.push(c * &sign, minus);
                }
                Species::PhiHat => {
                    let ic = c.scale(&i);
                    out.push(ic.clone(), plus);
                    out.push(-(&ic * &sign), minus);
                }
                _ => unreachable!(),
            }
        }
        Ok(out)
    }

    fn mixed_pair(&self) -> (String, String) {
        let n = self.terms.keys().find(|m| m.is_neutral()).unwrap();
        let c = self.terms.keys().find(|m| !m.is_neutral()).unwrap();
        (n.to_string(), c.to_string())
    }

    /// Conjugation `e^{H} (·) e^{−H}` applied term by term.
    pub fn conjugate(&self, flavor: Flavor, bank: Bank, bound2: i64) -> Result<ModeSum> {
        let base = if flavor == Flavor::Charged { self.to_charged()? } else { self.clone() };
        let mut out = ModeSum { terms: BTreeMap::new(), inv_sqrt2: base.inv_sqrt2 };
        for (m, c) in &base.terms {
            let conj = conjugate_by_h(*m, flavor, bank, bound2)?;
            debug_assert_eq!(conj.inv_sqrt2, 0);
            for (m2, c2) in conj.terms {
                out.push(c * &c2, m2);
            }
        }
        Ok(out)
    }

    /// Drops modes whose doubled index exceeds `bound2`.
    pub fn truncate(&mut self, bound2: i64) {
        self.terms.retain(|m, _| m.index2 <= bound2);
    }
}

impl fmt::Display for ModeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inv_sqrt2 > 0 {
            write!(f, "2^(-{}/2)*", self.inv_sqrt2)?;
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({})*{}", c.canonical_string(), m)).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "[{}]", parts.join(" + "))
        }
    }
}

impl From<Mode> for ModeSum {
    fn from(m: Mode) -> Self {
        ModeSum::single(m)
    }
}

/// An ordered product of [`ModeSum`]s.
pub type FermionWord = Vec<ModeSum>;

/// Parses a space-separated list of single modes, e.g.
/// `"phi:2 phihat:0 psi+:1/2 psi-:-1/2"`.
pub fn parse_word(s: &str) -> Result<FermionWord, ParseError> {
    s.split_whitespace().map(|tok| tok.parse::<Mode>().map(ModeSum::single)).collect()
}

/// Which Hamiltonian conjugates a mode.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Flavor {
    /// `H(t)`, all times, acting on `ψ±`.
    Charged,
    /// `H̄(t̄)`, odd times, acting on `φ`.
    BarOdd,
    /// `Ĥ(t̂)`, odd times, acting on `φ̂`.
    HatOdd,
}

/// `⟨0| m1 m2 |0⟩`.
pub fn two_point(m1: Mode, m2: Mode) -> Result<GaussRat> {
    if m1.is_neutral() != m2.is_neutral() {
        return Err(Error::MixedFamilies(m1.to_string(), m2.to_string()));
    }
    if m1.index2 + m2.index2 != 0 || m1.index2 < 0 {
        return Ok(GaussRat::zero());
    }
    use Species::*;
    let v = match (m1.species, m2.species) {
        (Phi, Phi) | (PhiHat, PhiHat) => {
            let i = m1.index2 / 2;
            if i == 0 {
                GaussRat::from_ratio(1, 2)
            } else if i % 2 == 0 {
                GaussRat::one()
            } else {
                GaussRat::from_int(-1)
            }
        }
        (Phi, PhiHat) if m1.index2 == 0 => -GaussRat::i().scale(&rat(1, 2)),
        (PhiHat, Phi) if m1.index2 == 0 => GaussRat::i().scale(&rat(1, 2)),
        (PsiPlus, PsiMinus) | (PsiMinus, PsiPlus) => GaussRat::one(),
        _ => GaussRat::zero(),
    };
    Ok(v)
}

fn pair_value(a: &ModeSum, b: &ModeSum) -> Result<Poly> {
    let mut acc = Poly::zero();
    for (ma, ca) in a.terms() {
        let partner = Mode { index2: -ma.index2, ..*ma };
        // only the partner index can contract; try every species there
        for species in [Species::Phi, Species::PhiHat, Species::PsiPlus, Species::PsiMinus] {
            let mb = Mode { species, ..partner };
            if let Some(cb) = b.terms.get(&mb) {
                let v = two_point(*ma, mb)?;
                if !v.is_zero() {
                    acc += &(ca * cb).scale(&v);
                }
            }
        }
    }
    Ok(acc)
}

/// Wick's theorem: `⟨w_1 ⋯ w_r⟩ = Pf(⟨w_i w_j⟩)_{i<j}`.
///
/// If any factor contains a charged mode, every factor is first rewritten
/// in the charged basis.
pub fn wick_vev(word: &[ModeSum]) -> Result<Poly> {
    if word.len() % 2 == 1 {
        return Ok(Poly::zero());
    }
    let charged = word.iter().any(ModeSum::has_charged);
    let word: Vec<ModeSum> =
        if charged { word.iter().map(ModeSum::to_charged).collect::<Result<_>>()? } else { word.to_vec() };
    let e: u32 = word.iter().map(|w| w.inv_sqrt2).sum();
    if e % 2 == 1 {
        return Err(Error::IrrationalVev);
    }
    let n = word.len();
    let mut entries = vec![Poly::zero(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            entries[i * n + j] = pair_value(&word[i], &word[j])?;
        }
    }
    let m = UpperTriMatrix::from_fn(n, |i, j| std::mem::take(&mut entries[i * n + j]));
    let pf = pfaffian(&m)?;
    let scale = Rational::new(1.into(), num_bigint::BigInt::from(2).pow(e / 2));
    Ok(pf.scale_rat(&scale))
}

/// `e^{H(s)} m e^{−H(s)}` as a finite sum, keeping modes with doubled index
/// at most `bound2`.
///
/// Cross-flavour pairs (`φ̂` under `H̄`, `φ` under `Ĥ`) are left unchanged.
/// A neutral mode under the charged Hamiltonian is first rewritten in the
/// charged basis, which sets `inv_sqrt2 = 1`.
pub fn conjugate_by_h(m: Mode, flavor: Flavor, bank: Bank, bound2: i64) -> Result<ModeSum> {
    let (times, direct) = match (flavor, m.species) {
        (Flavor::Charged, Species::PsiPlus) => (TimeArgument::times(bank), true),
        (Flavor::Charged, Species::PsiMinus) => (TimeArgument::times(bank).negated(), true),
        (Flavor::Charged, _) => {
            return ModeSum::single(m).conjugate(flavor, bank, bound2);
        }
        (Flavor::BarOdd, Species::Phi) | (Flavor::HatOdd, Species::PhiHat) => (TimeArgument::odd_times(bank), true),
        (Flavor::BarOdd, Species::PhiHat) | (Flavor::HatOdd, Species::Phi) => (TimeArgument::times(bank), false),
        (_, _) => return Err(Error::MixedFamilies(format!("{flavor:?}"), m.to_string())),
    };
    if !direct {
        let mut s = ModeSum::single(m);
        s.truncate(bound2);
        return Ok(s);
    }
    if m.index2 > bound2 {
        return Ok(ModeSum::default());
    }
    let max = ((bound2 - m.index2) / 2) as usize;
    let s = elem_schur_table(max, &times);
    Ok(ModeSum::from_terms(s.into_iter().enumerate().map(|(j, c)| (c, m.shifted(j as i64)))))
}

/// `v = Σ_{m≥0} s_m(c) φ_{m−part}` (or with `φ̂`), truncated at index `bound`.
pub fn build_v(part: u32, c: &[Rational], hatted: bool, bound: i64) -> ModeSum {
    let lead = -(part as i64);
    if bound < lead {
        return ModeSum::default();
    }
    let s = elem_schur_table((bound - lead) as usize, &TimeArgument::constants(c));
    ModeSum::from_terms(s.into_iter().enumerate().map(|(m, coef)| {
        let idx = lead + m as i64;
        let mode = if hatted { Mode::phi_hat(idx) } else { Mode::phi(idx) };
        (coef, mode)
    }))
}

fn word_charge(word: &[ModeSum]) -> Result<i64> {
    let mut total = 0;
    for w in word {
        let mut charges = w.terms().map(|(m, _)| m.charge()).filter(|&q| q != 0);
        if let Some(q) = charges.next() {
            if charges.any(|r| r != q) || w.has_neutral() {
                return Err(Error::Charge(q));
            }
            total += q;
        }
    }
    Ok(total)
}

/// `⟨0| e^{Σ H} w e^{−Σ H} |0⟩` with the listed Hamiltonians, each in its
/// own bank.
pub fn oracle_tau(word: &[ModeSum], hamiltonians: &[(Flavor, Bank)]) -> Result<Poly> {
    let q = word_charge(word)?;
    if q != 0 {
        return Err(Error::Charge(q));
    }
    let charged = word.iter().any(ModeSum::has_charged) || hamiltonians.iter().any(|(f, _)| *f == Flavor::Charged);
    let mut word: Vec<ModeSum> =
        if charged { word.iter().map(ModeSum::to_charged).collect::<Result<_>>()? } else { word.to_vec() };
    let bound2 = word.iter().filter_map(ModeSum::min_index2).min().map_or(0, |m| (-m).max(0));
    for w in &mut word {
        w.truncate(bound2);
        for &(flavor, bank) in hamiltonians {
            *w = w.conjugate(flavor, bank, bound2)?;
        }
    }
    wick_vev(&word)
}

/// `v_1 ⋯ v_{2n}` for a spec, truncated at `λ_1`.
pub fn bkp_word(spec: &TauSpec, hatted: bool) -> FermionWord {
    let bound = spec.lambda.max_part() as i64;
    spec.parts().iter().zip(&spec.constants).map(|(&p, c)| build_v(p, c, hatted, bound)).collect()
}

/// `v_1 ⋯ v_{2n} v̂_1 ⋯ v̂_{2n}`.
pub fn square_word(spec: &TauSpec) -> FermionWord {
    let mut w = bkp_word(spec, false);
    w.extend(bkp_word(spec, true));
    w
}

pub fn oracle_tau_bkp(spec: &TauSpec) -> Result<Poly> {
    oracle_tau(&bkp_word(spec, false), &[(Flavor::BarOdd, Bank::T)])
}

pub fn oracle_tau_kp_square(spec: &TauSpec) -> Result<Poly> {
    oracle_tau(&square_word(spec), &[(Flavor::Charged, Bank::T)])
}

/// The square word with `H̄` in bank `t` and `Ĥ` in bank `y`.
pub fn oracle_two_bank(spec: &TauSpec) -> Result<Poly> {
    oracle_tau(&square_word(spec), &[(Flavor::BarOdd, Bank::T), (Flavor::HatOdd, Bank::Y)])
}

/// `ψ⁺_{−k+½} ψ⁺_{−k+5/2} ⋯ ψ⁺_{k−3/2} ψ⁻_{−k+½} ψ⁻_{−k+3/2} ⋯ ψ⁻_{−½}`:
/// `k` creation operators of each charge, the `ψ⁻` string preparing `|−k⟩`.
pub fn kdv_word(k: u32) -> FermionWord {
    let k = k as i64;
    let plus = (0..k).map(|r| Mode::psi_plus(-2 * k + 1 + 4 * r));
    let minus = (0..k).map(|r| Mode::psi_minus(-2 * k + 1 + 2 * r));
    plus.chain(minus).map(ModeSum::single).collect()
}

pub fn oracle_kdv(k: u32) -> Result<Poly> {
    oracle_tau(&kdv_word(k), &[(Flavor::Charged, Bank::T)])
}
