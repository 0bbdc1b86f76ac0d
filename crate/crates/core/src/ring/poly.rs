//! Sparse polynomials over ℚ(i) in weighted time variables.
//!
//! There are two banks of variables, `t_k` and `y_k`, both of weight `k`.
//! The second bank only exists so that the two sides of a bilinear identity
//! can live in a single ring.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::gauss::{GaussRat, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Bank {
    T,
    Y,
}

impl Bank {
    pub fn letter(self) -> char {
        match self {
            Bank::T => 't',
            Bank::Y => 'y',
        }
    }
}

/// A time variable `t_k` or `y_k`, `k ≥ 1`. Its weight is `k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var {
    pub bank: Bank,
    pub index: u32,
}

impl Var {
    pub fn t(index: u32) -> Self {
        assert!(index >= 1, "time variables start at index 1");
        Var { bank: Bank::T, index }
    }

    pub fn y(index: u32) -> Self {
        assert!(index >= 1, "time variables start at index 1");
        Var { bank: Bank::Y, index }
    }

    pub fn weight(self) -> u32 {
        self.index
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.bank.letter(), self.index)
    }
}

/// Which variable indices a Miwa-type shift touches.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    All,
    Odd,
}

impl Parity {
    pub fn admits(self, index: u32) -> bool {
        match self {
            Parity::All => true,
            Parity::Odd => index % 2 == 1,
        }
    }
}

/// Product of variable powers, kept sorted by variable with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary `(var, exponent)` pairs.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut m: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *m.entry(v).or_insert(0) += e;
        }
        Monomial(m.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn weighted_degree(&self) -> u32 {
        self.0.iter().map(|&(v, e)| v.weight() * e).sum()
    }

    pub fn has_even_var(&self) -> bool {
        self.0.iter().any(|(v, _)| v.index % 2 == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn with_bank(&self, bank: Bank) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (Var { bank, index: v.index }, e)))
    }

    /// Display order: higher weighted degree first, then the larger exponent
    /// vector (variables taken in the order t1, t2, …, y1, y2, …).
    pub fn display_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        other.weighted_degree().cmp(&self.weighted_degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return std::cmp::Ordering::Equal,
                    (Some(_), None) => return std::cmp::Ordering::Less,
                    (None, Some(_)) => return std::cmp::Ordering::Greater,
                    (Some(&(va, ea)), Some(&(vb, eb))) => {
                        if va < vb {
                            return std::cmp::Ordering::Less;
                        }
                        if vb < va {
                            return std::cmp::Ordering::Greater;
                        }
                        if ea != eb {
                            return eb.cmp(&ea);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, (v, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial. Never stores a zero coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn rational(r: Rational) -> Self {
        Poly::constant(GaussRat::real(r))
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(GaussRat::from_int(n))
    }

    pub fn term(m: Monomial, c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Monomial::var(v), GaussRat::one())
    }

    pub fn t(k: u32) -> Self {
        Poly::var(Var::t(k))
    }

    pub fn y(k: u32) -> Self {
        Poly::var(Var::y(k))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussRat)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> GaussRat {
        self.coefficient(&Monomial::one())
    }

    /// Returns the constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Maximal weighted degree, `None` for the zero polynomial.
    pub fn weighted_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::weighted_degree).max()
    }

    pub fn max_var_index(&self) -> u32 {
        self.terms.keys().flat_map(|m| m.factors().iter().map(|(v, _)| v.index)).max().unwrap_or(0)
    }

    pub fn is_odd_only(&self) -> bool {
        !self.terms.keys().any(Monomial::has_even_var)
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussRat::is_real)
    }

    pub fn real_part(&self) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), GaussRat::real(c.re.clone()))))
    }

    pub fn imag_part(&self) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), GaussRat::real(c.im.clone()))))
    }

    /// Deletes every monomial containing an even-index variable, i.e. sets
    /// all even times to zero.
    pub fn restrict_even_zero(&self) -> Poly {
        Poly {
            terms: self.terms.iter().filter(|(m, _)| !m.has_even_var()).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Moves every variable into `bank`.
    pub fn with_bank(&self, bank: Bank) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.with_bank(bank), c.clone())))
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn scale_rat(&self, r: &Rational) -> Poly {
        self.scale(&GaussRat::real(r.clone()))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// If `self = r·other` for a constant `r`, returns `r`.
    pub fn ratio_to(&self, other: &Poly) -> Option<GaussRat> {
        if other.is_zero() {
            return if self.is_zero() { Some(GaussRat::zero()) } else { None };
        }
        let (m0, c0) = other.terms.iter().next()?;
        let r = &self.coefficient(m0) / c0;
        if &other.scale(&r) == self {
            Some(r)
        } else {
            None
        }
    }

    /// Evaluates at the point `value(v)` for every variable `v`.
    pub fn eval(&self, value: impl Fn(Var) -> GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m.factors() {
                term *= &value(v).pow(e);
            }
            acc += &term;
        }
        acc
    }

    /// Terms in display order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &GaussRat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }

    /// Leading monomial in display order.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.sorted_terms().first().map(|(m, _)| *m)
    }

    /// Deterministic text form, e.g. `1/3*t1^3 - 1*t3`.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let (neg, mag) = if c.is_real() && c.re.is_negative() {
                (true, GaussRat::real(-c.re.clone()))
            } else {
                (false, c.clone())
            };
            match (n, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&mag.to_string());
            if !m.is_one() {
                out.push('*');
                out.push_str(&m.to_string());
            }
        }
        out
    }

    /// Expands `p(x + scale·[w])` in powers of an auxiliary `w`, where
    /// `[w]_k = w^k / k` on the indices admitted by `parity` (both banks).
    /// Entry `a` of the result is the coefficient of `w^a`; trailing zeros
    /// are trimmed, the zero polynomial gives an empty vector.
    pub fn shift_expand(&self, scale: &Rational, parity: Parity) -> Vec<Poly> {
        let mut buckets: Vec<BTreeMap<Monomial, GaussRat>> = Vec::new();
        let mut binom_cache: HashMap<(u32, u32), Rational> = HashMap::new();
        for (m, c) in &self.terms {
            // each entry: (w power, monomial, coefficient)
            let mut partial: Vec<(u32, Monomial, Rational)> = vec![(0, Monomial::one(), Rational::one())];
            for &(v, e) in m.factors() {
                let mut next = Vec::with_capacity(partial.len() * (e as usize + 1));
                if !parity.admits(v.index) {
                    for (wp, mono, r) in &partial {
                        next.push((*wp, mono.mul(&Monomial::from_pairs([(v, e)])), r.clone()));
                    }
                } else {
                    let step = scale / Rational::from_integer(BigInt::from(v.index));
                    for r_ in 0..=e {
                        let b = binom_cache.entry((e, r_)).or_insert_with(|| binomial(e, r_)).clone();
                        let coef = b * pow_rat(&step, r_);
                        let rest = Monomial::from_pairs([(v, e - r_)]);
                        for (wp, mono, r) in &partial {
                            next.push((wp + v.index * r_, mono.mul(&rest), r * &coef));
                        }
                    }
                }
                partial = next;
            }
            for (wp, mono, r) in partial {
                let wp = wp as usize;
                if buckets.len() <= wp {
                    buckets.resize_with(wp + 1, BTreeMap::new);
                }
                let add = c.scale(&r);
                let slot = buckets[wp].entry(mono).or_default();
                *slot += &add;
            }
        }
        let mut out: Vec<Poly> = buckets
            .into_iter()
            .map(|b| Poly { terms: b.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
            .collect();
        while out.last().is_some_and(Poly::is_zero) {
            out.pop();
        }
        out
    }
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

fn pow_rat(r: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

fn mul_into(acc: &mut HashMap<Monomial, GaussRat>, a: &Poly, b: &Poly) {
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let c = ca * cb;
            let slot = acc.entry(ma.mul(mb)).or_default();
            *slot += &c;
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut acc = HashMap::with_capacity(self.len() * o.len());
        mul_into(&mut acc, self, o);
        Poly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), &-c);
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}
