//! Polynomials in the elementary symmetric functions `σ1, σ2, σ3` of three
//! variables, and Kneissler's elements `χ_n`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// `Σ c · σ1^a σ2^b σ3^c`, keyed by exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymFunc {
    terms: BTreeMap<[u32; 3], Rational>,
}

impl SymFunc {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: Rational, exps: [u32; 3]) -> Self {
        let mut s = Self::zero();
        s.add_term(c, exps);
        s
    }

    /// `σ_i` for `i` in `1..=3`.
    pub fn sigma(i: usize) -> Self {
        let mut e = [0; 3];
        e[i - 1] = 1;
        Self::monomial(rational::one(), e)
    }

    fn add_term(&mut self, c: Rational, exps: [u32; 3]) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: [u32; 3]) -> Rational {
        self.terms.get(&exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, x) in &self.terms {
            out.add_term(x * c, *e);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(rational::one()), |acc, _| &acc * self)
    }

    /// Weighted degrees `a + 2b + 3c` of the monomials present.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| e[0] + 2 * e[1] + 3 * e[2]).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The degree if homogeneous; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn eval(&self, s1: &Rational, s2: &Rational, s3: &Rational) -> Rational {
        let pw = |x: &Rational, k: u32| (0..k).fold(rational::one(), |acc, _| acc * x);
        self.terms
            .iter()
            .map(|(e, c)| c * pw(s1, e[0]) * pw(s2, e[1]) * pw(s3, e[2]))
            .sum()
    }

    /// Evaluates at the elementary symmetric functions of `(z1, z2, z3)`.
    pub fn eval_at_roots(&self, z: [&Rational; 3]) -> Rational {
        let s1 = z[0] + z[1] + z[2];
        let s2 = z[0] * z[1] + z[0] * z[2] + z[1] * z[2];
        let s3 = z[0] * z[1] * z[2];
        self.eval(&s1, &s2, &s3)
    }

    /// Substitutes `σ3 -> r` where `r` does not involve `σ3`.
    fn substitute_sigma3(&self, r: &SymFunc) -> SymFunc {
        let mut out = SymFunc::zero();
        for (e, c) in &self.terms {
            let base = SymFunc::monomial(c.clone(), [e[0], e[1], 0]);
            out = &out + &(&base * &r.pow(e[2]));
        }
        out
    }

    /// Writes `self = p(σ1) + ω q`, or returns `None` when `self` is outside
    /// `Q[σ1] ⊕ ω Q[σ1, σ2, σ3]`.
    ///
    /// `ω` is monic of degree one in `σ3`, so the remainder modulo `ω` is
    /// obtained by putting `σ3 = -σ2σ1 - 2σ1³`; it must involve `σ1` alone.
    /// The quotient comes from synthetic division in `σ3`.
    pub fn lambda_tilde_decomposition(&self) -> Option<LambdaTilde> {
        let h = &omega() - &SymFunc::sigma(3);
        let rem = self.substitute_sigma3(&-&h);
        if rem.terms.keys().any(|e| e[1] != 0 || e[2] != 0) {
            return None;
        }
        let g = self - &rem;
        // Coefficients of g as a polynomial in σ3.
        let top = g.terms.keys().map(|e| e[2]).max().unwrap_or(0);
        let mut coeffs = vec![SymFunc::zero(); top as usize + 1];
        for (e, c) in &g.terms {
            coeffs[e[2] as usize].add_term(c.clone(), [e[0], e[1], 0]);
        }
        // Divide by (σ3 - r) with r = -h.
        let r = -&h;
        let mut q = vec![SymFunc::zero(); top as usize];
        let mut carry = SymFunc::zero();
        for k in (1..=top as usize).rev() {
            carry = &coeffs[k] + &(&carry * &r);
            q[k - 1] = carry.clone();
        }
        let remainder = &coeffs[0] + &(&carry * &r);
        if !remainder.is_zero() && top > 0 {
            return None;
        }
        let mut quotient = SymFunc::zero();
        for (k, qk) in q.into_iter().enumerate() {
            quotient = &quotient + &(&qk * &SymFunc::sigma(3).pow(k as u32));
        }
        debug_assert_eq!(&(&rem + &(&omega() * &quotient)), self);
        Some(LambdaTilde { p: rem, q: quotient })
    }

    pub fn to_serial(&self) -> SymFuncJson {
        SymFuncJson {
            monomials: self.terms.iter().map(|(e, c)| MonomialJson { coeff: c.clone(), sigma: *e }).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_serial()).expect("serialises")
    }
}

/// `f = p(σ1) + ω q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaTilde {
    pub p: SymFunc,
    pub q: SymFunc,
}

impl std::fmt::Display for SymFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest degree first.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| std::cmp::Reverse((e[0] + 2 * e[1] + 3 * e[2], e[0], e[1])));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("s{}", i + 1) } else { format!("s{}^{k}", i + 1) })
                .collect();
            let one = abs == rational::one();
            if mono.is_empty() {
                write!(f, "{}", rational::format(&abs))?;
            } else if one {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", rational::format(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &SymFunc {
    type Output = SymFunc;
    fn add(self, rhs: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(c.clone(), *e);
        }
        out
    }
}

impl Sub for &SymFunc {
    type Output = SymFunc;
    fn sub(self, rhs: &SymFunc) -> SymFunc {
        self + &-rhs
    }
}

impl Neg for &SymFunc {
    type Output = SymFunc;
    fn neg(self) -> SymFunc {
        self.scale(&-rational::one())
    }
}

impl Mul for &SymFunc {
    type Output = SymFunc;
    fn mul(self, rhs: &SymFunc) -> SymFunc {
        let mut out = SymFunc::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(x * y, [a[0] + b[0], a[1] + b[1], a[2] + b[2]]);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    #[serde(with = "rational::serde_str")]
    pub coeff: Rational,
    pub sigma: [u32; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymFuncJson {
    pub monomials: Vec<MonomialJson>,
}

impl std::str::FromStr for SymFunc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let raw: SymFuncJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = SymFunc::zero();
        for m in raw.monomials {
            out.add_term(m.coeff, m.sigma);
        }
        Ok(out)
    }
}

/// `ω = (σ1 + z1)(σ1 + z2)(σ1 + z3) = σ3 + σ2σ1 + 2σ1³`.
pub fn omega() -> SymFunc {
    let one = rational::one;
    let mut w = SymFunc::monomial(one(), [0, 0, 1]);
    w.add_term(one(), [1, 1, 0]);
    w.add_term(rational::int(2), [3, 0, 0]);
    w
}

/// `χ_0 .. χ_n` from Kneissler's recursion.
pub fn chi_sequence(n: usize) -> Vec<SymFunc> {
    let s1 = SymFunc::sigma(1);
    let s2 = SymFunc::sigma(2);
    let s3 = SymFunc::sigma(3);
    let half = rational::frac(1, 2);
    let mut chi = vec![SymFunc::zero(), s1.scale(&rational::int(2)), s1.pow(2)];
    while chi.len() <= n {
        let k = chi.len() - 3;
        let mut next = &s1 * &chi[k + 2];
        next = &next - &(&s2 * &chi[k + 1]);
        next = &next + &(&s3 * &chi[k]);
        next = &next + &(&s2 * &s1.pow(k as u32 + 1)).scale(&half);
        next = &next - &(&s3 * &s1.pow(k as u32)).scale(&half);
        next = &next - &(&s3 * &s1.scale(&rational::int(2)).pow(k as u32));
        chi.push(next);
    }
    chi.truncate(n + 1);
    chi
}

pub fn chi(n: usize) -> SymFunc {
    chi_sequence(n).pop().expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn small_chis() {
        assert_eq!(chi(0), SymFunc::zero());
        assert_eq!(chi(1), SymFunc::monomial(int(2), [1, 0, 0]));
        assert_eq!(chi(2), SymFunc::monomial(int(1), [2, 0, 0]));
        let mut c3 = SymFunc::monomial(int(1), [3, 0, 0]);
        c3.add_term(frac(-3, 2), [1, 1, 0]);
        c3.add_term(frac(-3, 2), [0, 0, 1]);
        assert_eq!(chi(3), c3);
    }

    #[test]
    fn omega_expansion() {
        // Check the product form at a few points.
        for z in [[1, 2, 3], [-2, 2, 3], [0, 5, -7]] {
            let [a, b, c] = z.map(int);
            let s1 = &a + &b + &c;
            let want = (&s1 + &a) * (&s1 + &b) * (&s1 + &c);
            assert_eq!(omega().eval_at_roots([&a, &b, &c]), want);
        }
        assert_eq!(omega().homogeneous_degree(), Some(3));
    }

    #[test]
    fn chis_live_in_lambda_tilde() {
        for (n, c) in chi_sequence(10).iter().enumerate().skip(1) {
            assert_eq!(c.homogeneous_degree(), Some(n as u32));
            let dec = c.lambda_tilde_decomposition().unwrap();
            assert_eq!(&dec.p + &(&omega() * &dec.q), *c);
        }
        assert!(SymFunc::sigma(2).lambda_tilde_decomposition().is_none());
        assert!(omega().lambda_tilde_decomposition().is_some());
    }

    #[test]
    fn json_round_trip() {
        let c = chi(5);
        let again: SymFunc = c.to_json().parse().unwrap();
        assert_eq!(again, c);
        assert_eq!(chi(3).to_string(), "s1^3 - 3/2*s1*s2 - 3/2*s3");
    }
}
