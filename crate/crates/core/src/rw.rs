//! The Rozansky-Witten character of a K3 surface, valued in `ℚ[z]/(zⁿ)`, and
//! the check that it defines a character of Vogel's ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::lambda;
use crate::prop::{self, named};
use crate::quotient;
use crate::rational::{self, Rational};
use crate::report::Check;
use crate::sum::DiagramSum;

/// A truncated polynomial `a₀ + a₁z + … + a_{n-1}z^{n-1}` with `zⁿ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncPoly {
    coeffs: Vec<Rational>,
}

impl TruncPoly {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "truncation order must be positive");
        TruncPoly { coeffs: vec![Rational::zero(); order] }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut p = Self::zero(order);
        p.coeffs[0] = c;
        p
    }

    /// `c·z^k`, which is zero once `k >= order`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut p = Self::zero(order);
        if k < order {
            p.coeffs[k] = c;
        }
        p
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// The single power of `z` carrying all nonzero coefficients.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut nz = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| k);
        let k = nz.next()?;
        nz.next().is_none().then_some(k)
    }

    /// Multiplicative inverse, defined when the constant term is nonzero.
    pub fn inverse(&self) -> Option<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return None;
        }
        let n = self.order();
        let inv0 = a0.recip();
        let mut b = vec![Rational::zero(); n];
        b[0] = inv0.clone();
        for k in 1..n {
            let s: Rational = (1..=k).map(|j| &self.coeffs[j] * &b[k - j]).sum();
            b[k] = -(s * &inv0);
        }
        Some(TruncPoly { coeffs: b })
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        Some(self * &other.inverse()?)
    }

    fn combine(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let n = self.order().min(other.order());
        TruncPoly { coeffs: (0..n).map(|k| f(&self.coeffs[k], &other.coeffs[k])).collect() }
    }
}

impl Add for &TruncPoly {
    type Output = TruncPoly;
    fn add(self, o: &TruncPoly) -> TruncPoly {
        self.combine(o, |a, b| a + b)
    }
}

impl Sub for &TruncPoly {
    type Output = TruncPoly;
    fn sub(self, o: &TruncPoly) -> TruncPoly {
        self.combine(o, |a, b| a - b)
    }
}

impl Neg for &TruncPoly {
    type Output = TruncPoly;
    fn neg(self) -> TruncPoly {
        TruncPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &TruncPoly {
    type Output = TruncPoly;
    fn mul(self, o: &TruncPoly) -> TruncPoly {
        let n = self.order().min(o.order());
        let mut out = TruncPoly::zero(n);
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                out.coeffs[i + j] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        out
    }
}

/// `-12z`, `48z`, `-2`, `1 - 3z + (1/2)z^2`, `0`.
impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let a = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let body = rational::format(&a);
            let coef = match (k, a.is_one(), a.is_integer()) {
                (0, _, _) => body,
                (_, true, _) => String::new(),
                (_, false, true) => body,
                (_, false, false) => format!("({body})"),
            };
            let var = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            write!(f, "{coef}{var}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Values on the closed connected generators `δ`, `θ` and on the bubble `φ`
/// (as a multiple of the identity strand).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RwTable {
    pub delta: TruncPoly,
    pub theta: TruncPoly,
    pub phi: TruncPoly,
}

impl RwTable {
    /// The K3 surface: `δ ↦ -2`, `θ ↦ 48z`, `φ ↦ -24z`, with `z² = 0`.
    pub fn k3() -> Self {
        RwTable {
            delta: TruncPoly::constant(rational::int(-2), 2),
            theta: TruncPoly::monomial(rational::int(48), 1, 2),
            phi: TruncPoly::monomial(rational::int(-24), 1, 2),
        }
    }

    pub fn order(&self) -> usize {
        self.delta.order().min(self.theta.order()).min(self.phi.order())
    }
}

/// Coordinate of a closed connected 2-vertex diagram on `θ`.
fn theta_coordinate(d: &Diagram) -> Result<Rational> {
    let st = quotient::stratum(0, 0, 2, 1)?;
    let of = |x: &Diagram| st.coordinates(&DiagramSum::from_diagram(x));
    let theta = of(&named::theta())?;
    debug_assert_eq!(theta.len(), 1, "closed connected degree-two classes are spanned by theta");
    Ok(&of(d)?[0] / &theta[0])
}

/// Multiplicative over components: a circle gives `δ`, a two-vertex component
/// its `θ`-coordinate times `θ`, anything larger gives zero.
pub fn rw_closed(d: &Diagram, table: &RwTable) -> Result<TruncPoly> {
    if d.arity() != (0, 0) {
        return Err(Error::ArityMismatch { expected: (0, 0), found: d.arity() });
    }
    let order = table.order();
    let mut acc = TruncPoly::constant(Rational::one(), order);
    for _ in 0..d.circles() {
        acc = &acc * &table.delta;
    }
    for comp in d.component_half_edges() {
        let vertices = comp.len() / 3;
        if vertices != 2 {
            return Ok(TruncPoly::zero(order));
        }
        let c = theta_coordinate(&d.closed_component(&comp))?;
        acc = &acc * &table.theta.scale(&c);
    }
    Ok(acc)
}

pub fn rw_sum(s: &DiagramSum, table: &RwTable) -> Result<TruncPoly> {
    let mut acc = TruncPoly::zero(table.order());
    for (d, c) in s.terms() {
        acc = &acc + &rw_closed(d, table)?.scale(c);
    }
    Ok(acc)
}

/// The scalar by which `φ` acts on the strand.
pub fn rw_phi(table: &RwTable) -> TruncPoly {
    table.phi.clone()
}

/// The two independent determinations of `Θ(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSolve {
    /// From `φ = 2t·I`: `Θ(t) = RW(φ) / 2`.
    pub from_phi: TruncPoly,
    /// From `θ = 2t·δ`: `Θ(t) = RW(θ) / (2·RW(δ))`; `None` if `RW(δ)` is not a unit.
    pub from_theta: Option<TruncPoly>,
}

impl ThetaSolve {
    pub fn agree(&self) -> bool {
        self.from_theta.as_ref() == Some(&self.from_phi)
    }
}

pub fn solve_both(table: &RwTable) -> ThetaSolve {
    let half = rational::frac(1, 2);
    ThetaSolve {
        from_phi: rw_phi(table).scale(&half),
        from_theta: table.theta.checked_div(&table.delta).map(|q| q.scale(&half)),
    }
}

/// `Θ(t)`, required to be homogeneous of `z`-degree one and determined
/// consistently by both relations.
pub fn solve_theta_t(table: &RwTable) -> Result<TruncPoly> {
    let s = solve_both(table);
    if !s.agree() {
        let other = s.from_theta.as_ref().map_or("undefined".to_string(), ToString::to_string);
        return Err(Error::Inconsistent(format!("Θ(t) = {} from φ but {} from θ", s.from_phi, other)));
    }
    if !s.from_phi.is_zero() && s.from_phi.homogeneous_degree() != Some(1) {
        return Err(Error::Inconsistent(format!("Θ(t) = {} is not of z-degree one", s.from_phi)));
    }
    Ok(s.from_phi)
}

/// The value of `Θ(t)` as printed alongside the K3 table.
pub fn printed_theta_t() -> TruncPoly {
    TruncPoly::monomial(rational::int(-24), 1, 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WestburyReport {
    pub theta_t: String,
    pub from_phi: String,
    pub from_theta: String,
    pub relations: Vec<Check>,
    pub paper_note: String,
}

impl WestburyReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }
}

/// `(0, 3)` vertex used to close `(3, 0)` diagrams.
fn cotripod() -> Diagram {
    named::build(0, 3, &[["a", "b", "c"]], &[["a", "out:1"], ["b", "out:2"], ["c", "out:3"]])
}

/// Builds the graded character `δ ↦ RW(δ)`, `t ↦ Θ(t)` and compares it with
/// the table.
pub fn verify_westbury(table: &RwTable) -> WestburyReport {
    verify_westbury_up_to(table, 3)
}

/// As [`verify_westbury`], checking vanishing on Vogel classes of degrees
/// `2..=max_degree`.
pub fn verify_westbury_up_to(table: &RwTable, max_degree: usize) -> WestburyReport {
    let solve = solve_both(table);
    let t = solve.from_phi.clone();
    let two = rational::int(2);
    let mut rel = Vec::new();

    let lhs = (&t * &table.delta).scale(&two);
    let theta_rw = rw_closed(&named::theta(), table);
    rel.push(match &theta_rw {
        Ok(v) => Check::new("theta=2t*delta", &lhs == v, format!("2·({t})·({}) = {lhs}, RW(θ) = {v}", table.delta)),
        Err(e) => Check::new("theta=2t*delta", false, e.to_string()),
    });

    let lhs = t.scale(&two);
    let phi = rw_phi(table);
    rel.push(Check::new("phi=2t*I", lhs == phi, format!("2·({t}) = {lhs}, RW(φ) = {phi}")));

    let other = solve.from_theta.as_ref().map_or("undefined".to_string(), ToString::to_string);
    rel.push(Check::new("solves agree", solve.agree(), format!("from φ: {t}, from θ: {other}")));

    // The closure of φ is θ, so RW(φ)·RW(δ) must equal RW(θ).
    let closure = prop::trace_diagram(&named::phi()).and_then(|d| rw_closed(&d, table));
    rel.push(match closure {
        Ok(v) => {
            let want = &phi * &table.delta;
            Check::new("trace(phi)=phi*delta", v == want, format!("RW(tr φ) = {v}, RW(φ)·RW(δ) = {want}"))
        }
        Err(e) => Check::new("trace(phi)=phi*delta", false, e.to_string()),
    });

    for n in 2..=max_degree {
        rel.push(vanishing_check(table, &t, n));
    }

    let printed = printed_theta_t();
    let note = if printed == t {
        format!("printed value {printed} agrees with the table")
    } else {
        format!("printed value {printed} inconsistent: the table forces {t}")
    };
    WestburyReport {
        theta_t: t.to_string(),
        from_phi: solve.from_phi.to_string(),
        from_theta: other,
        relations: rel,
        paper_note: note,
    }
}

/// Degree-`n` Vogel classes: the graded character sends them to a multiple of
/// `zⁿ`, and RW sends their closures (with `2n + 2` vertices) to zero.
fn vanishing_check(table: &RwTable, t: &TruncPoly, n: usize) -> Check {
    let name = format!("degree-{n} classes vanish");
    let run = || -> Result<(bool, String)> {
        let graded = TruncPoly::monomial(Rational::one(), n, table.order());
        let tn = (0..n).fold(TruncPoly::constant(Rational::one(), table.order()), |acc, _| &acc * t);
        let st = quotient::stratum(3, 0, 2 * n + 1, 1)?;
        let close = DiagramSum::from_diagram(&cotripod());
        let mut ok = graded.is_zero() && tn.is_zero();
        for b in st.basis() {
            let closed = prop::compose(&DiagramSum::from_diagram(b), &close)?;
            ok &= rw_sum(&closed, table)?.is_zero();
        }
        let xn = lambda::x(n)?;
        let closed = prop::compose(xn.sum(), &close)?;
        ok &= rw_sum(&closed, table)?.is_zero();
        Ok((ok, format!("{} basis classes, Θ(t)^{n} = {tn}, RW(closure of x_{n}) = 0", st.dim())))
    };
    match run() {
        Ok((pass, detail)) => Check::new(name, pass, detail),
        Err(e) => Check::new(name, false, e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn z(c: i64) -> TruncPoly {
        TruncPoly::monomial(int(c), 1, 2)
    }

    #[test]
    fn display() {
        assert_eq!(z(-12).to_string(), "-12z");
        assert_eq!(z(48).to_string(), "48z");
        assert_eq!(TruncPoly::constant(int(-2), 2).to_string(), "-2");
        assert_eq!(TruncPoly::zero(2).to_string(), "0");
        let p = &TruncPoly::constant(int(1), 3) + &TruncPoly::monomial(rational::frac(-1, 2), 2, 3);
        assert_eq!(p.to_string(), "1 - (1/2)z^2");
        assert_eq!(TruncPoly::monomial(int(1), 1, 2).to_string(), "z");
    }

    #[test]
    fn truncation_and_inverse() {
        assert!((&z(-24) * &z(-24)).is_zero());
        let u = &TruncPoly::constant(int(-2), 3) + &TruncPoly::monomial(int(3), 1, 3);
        let one = &u * &u.inverse().unwrap();
        assert_eq!(one, TruncPoly::constant(int(1), 3));
        assert!(z(5).inverse().is_none());
    }

    #[test]
    fn table_values() {
        let k3 = RwTable::k3();
        assert_eq!(rw_closed(&named::delta(), &k3).unwrap().to_string(), "-2");
        assert_eq!(rw_closed(&named::theta(), &k3).unwrap(), z(48));
        let dt = prop::tensor_diagrams(&named::delta(), &named::theta());
        assert_eq!(rw_closed(&dt, &k3).unwrap(), z(-96));
        assert!(rw_closed(&named::dumbbell(), &k3).unwrap().is_zero());
        assert!(rw_closed(&named::phi(), &k3).is_err());
        assert_eq!(rw_phi(&k3).homogeneous_degree(), Some(1));
    }

    #[test]
    fn ihx_relations_vanish() {
        let k3 = RwTable::k3();
        for d in [named::theta(), named::dumbbell()] {
            for h in quotient::ihx_edges(&d) {
                let rel = quotient::ihx_relation(&d, h).unwrap();
                assert!(rw_sum(&rel, &k3).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn k3_solves() {
        let k3 = RwTable::k3();
        assert_eq!(solve_theta_t(&k3).unwrap(), z(-12));
        let r = verify_westbury(&k3);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.theta_t, "-12z");
        assert!(r.paper_note.contains("-24z inconsistent"));
    }

    #[test]
    fn perturbed_table_is_flagged() {
        let bad = RwTable { theta: z(96), ..RwTable::k3() };
        let s = solve_both(&bad);
        assert_eq!(s.from_phi, z(-12));
        assert_eq!(s.from_theta, Some(z(-24)));
        assert!(matches!(solve_theta_t(&bad), Err(Error::Inconsistent(_))));
        let r = verify_westbury(&bad);
        assert!(!r.passed());
        assert!(r.relations.iter().any(|c| c.name == "solves agree" && !c.pass));
    }
}
