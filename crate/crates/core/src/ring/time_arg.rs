use std::collections::HashMap;

use num_traits::{One, Zero};

use super::gauss::Rational;
use super::poly::{Bank, Parity, Poly, Var};

/// Affine argument `u_k = ρ_{parity(k)}·t_k + shift_k` fed to Schur
/// evaluations. With `bank == None` the argument is the constant sequence
/// `shift` alone.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TimeArgument {
    pub rho_odd: Rational,
    pub rho_even: Rational,
    /// `shift[0]` is the shift of index 1.
    pub shift: Vec<Rational>,
    pub bank: Option<Bank>,
}

impl TimeArgument {
    /// Plain times `t` of a bank.
    pub fn times(bank: Bank) -> Self {
        TimeArgument { rho_odd: Rational::one(), rho_even: Rational::one(), shift: Vec::new(), bank: Some(bank) }
    }

    /// Odd times only: `(t1, 0, t3, 0, …)`.
    pub fn odd_times(bank: Bank) -> Self {
        TimeArgument { rho_even: Rational::zero(), ..Self::times(bank) }
    }

    pub fn constants(shift: &[Rational]) -> Self {
        TimeArgument { rho_odd: Rational::zero(), rho_even: Rational::zero(), shift: shift.to_vec(), bank: None }
    }

    pub fn scaled_times(bank: Bank, rho_odd: Rational, rho_even: Rational) -> Self {
        TimeArgument { rho_odd, rho_even, shift: Vec::new(), bank: Some(bank) }
    }

    /// Adds `c` to the current shift.
    pub fn plus(mut self, c: &[Rational]) -> Self {
        if self.shift.len() < c.len() {
            self.shift.resize(c.len(), Rational::zero());
        }
        for (s, x) in self.shift.iter_mut().zip(c) {
            *s += x;
        }
        self
    }

    pub fn minus(self, c: &[Rational]) -> Self {
        let neg: Vec<Rational> = c.iter().map(|x| -x).collect();
        self.plus(&neg)
    }

    pub fn negated(&self) -> Self {
        TimeArgument {
            rho_odd: -&self.rho_odd,
            rho_even: -&self.rho_even,
            shift: self.shift.iter().map(|x| -x).collect(),
            bank: self.bank,
        }
    }

    pub fn rho(&self, k: u32) -> &Rational {
        if k % 2 == 1 {
            &self.rho_odd
        } else {
            &self.rho_even
        }
    }

    pub fn shift_at(&self, k: u32) -> Rational {
        self.shift.get(k as usize - 1).cloned().unwrap_or_else(Rational::zero)
    }

    /// The polynomial `u_k`.
    pub fn component(&self, k: u32) -> Poly {
        let mut p = Poly::rational(self.shift_at(k));
        if let Some(bank) = self.bank {
            let rho = self.rho(k);
            if !rho.is_zero() {
                p += &Poly::var(Var { bank, index: k }).scale_rat(rho);
            }
        }
        p
    }

    pub fn is_identity(&self) -> bool {
        self.bank.is_some() && self.rho_odd.is_one() && self.rho_even.is_one() && self.shift.iter().all(Zero::is_zero)
    }
}

/// `c̃ = (−c1, c2, −c3, c4, …)`.
pub fn tilde(c: &[Rational]) -> Vec<Rational> {
    c.iter().enumerate().map(|(i, x)| if i % 2 == 0 { -x } else { x.clone() }).collect()
}

/// Applies `t_k ↦ ρ_{parity(k)} t_k + shift_k` to every variable of the
/// argument's bank (bank `T` when the argument is constant).
pub fn substitute(p: &Poly, arg: &TimeArgument) -> Poly {
    if arg.is_identity() {
        return p.clone();
    }
    let bank = arg.bank.unwrap_or(Bank::T);
    let mut powers: HashMap<(u32, u32), Poly> = HashMap::new();
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        let mut acc = Poly::constant(c.clone());
        let mut rest = Vec::new();
        for &(v, e) in m.factors() {
            if v.bank == bank {
                let pw = powers.entry((v.index, e)).or_insert_with(|| arg.component(v.index).pow(e));
                acc = &acc * pw;
            } else {
                rest.push((v, e));
            }
        }
        if !rest.is_empty() {
            acc = &acc * &Poly::term(super::poly::Monomial::from_pairs(rest), One::one());
        }
        out += &acc;
    }
    out
}

/// `s_j(u)·p` with the operator argument `u_k = scale·(∂/∂x_k)/k` on the
/// indices admitted by `parity` (both banks). Lowers weighted degree by
/// exactly `j` or returns zero.
pub fn apply_schur_diff(p: &Poly, j: usize, scale: &Rational, parity: Parity) -> Poly {
    // Taylor: p(x + scale·[w]) = Σ_j w^j s_j(scale·∂̃) p
    p.shift_expand(scale, parity).into_iter().nth(j).unwrap_or_default()
}
