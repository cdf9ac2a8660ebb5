//! Vogel's ring: skew-symmetric connected `(3, 0)` diagrams under insertion.

use crate::diagram::{Diagram, Leg};
use crate::error::{Error, Result};
use crate::prop::{self, named::build};
use crate::quotient;
use crate::rational::{self, Rational};
use crate::sum::DiagramSum;
use crate::wiring::{LegTo, Wiring};

/// A skew-invariant element of `hom(3, 0)` with connected terms, kept reduced
/// to basis representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaElement {
    sum: DiagramSum,
}

impl LambdaElement {
    /// Accepts `s` if its terms are connected with a vertex and `s` is
    /// skew-invariant modulo AS/IHX.
    pub fn new(s: &DiagramSum) -> Result<Self> {
        check_connected(s)?;
        let reduced = quotient::reduce(s)?;
        if quotient::reduce(&skew_average(&reduced)?)? != reduced {
            return Err(Error::InvalidArgument("not skew-invariant under leg permutations".into()));
        }
        Ok(LambdaElement { sum: reduced })
    }

    pub fn sum(&self) -> &DiagramSum {
        &self.sum
    }

    pub fn into_sum(self) -> DiagramSum {
        self.sum
    }

    pub fn is_zero(&self) -> bool {
        self.sum.is_empty()
    }

    /// The grading `n` for elements built from `2n + 1` vertices; `None` for
    /// zero or inhomogeneous elements.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.sum.terms().map(|(d, _)| (d.degree() - 1) / 2);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LambdaElement { sum: self.sum.scale(c) }
    }

    pub fn add(&self, other: &Self) -> Self {
        LambdaElement { sum: &self.sum + &other.sum }
    }

    pub fn sub(&self, other: &Self) -> Self {
        LambdaElement { sum: &self.sum - &other.sum }
    }

    /// Equality of classes; both sides are already reduced.
    pub fn equals(&self, other: &Self) -> bool {
        self.sum == other.sum
    }

    pub fn to_json(&self) -> String {
        self.sum.to_json()
    }
}

fn check_connected(s: &DiagramSum) -> Result<()> {
    if s.arity() != (3, 0) {
        return Err(Error::ArityMismatch { expected: (3, 0), found: s.arity() });
    }
    for (d, _) in s.terms() {
        if d.components() != 1 || d.degree() == 0 {
            return Err(Error::InvalidArgument("terms must be connected with at least one vertex".into()));
        }
    }
    Ok(())
}

fn skew_average(s: &DiagramSum) -> Result<DiagramSum> {
    let mut out = DiagramSum::zero(3, 0);
    let sixth = rational::frac(1, 6);
    for pi in prop::permutations(3) {
        let c = &sixth * rational::int(prop::permutation_sign(&pi) as i64);
        let moved = prop::compose(s, &prop::perm(&pi)?)?;
        out.add_sum(&moved, &c);
    }
    Ok(out)
}

/// `(1/6) Σ sgn(π) s∘π`, reduced.
pub fn project_skew(s: &DiagramSum) -> Result<LambdaElement> {
    check_connected(s)?;
    Ok(LambdaElement { sum: quotient::reduce(&skew_average(s)?)? })
}

/// Replaces vertex `v` of `y` by `x`, gluing `in:k` of `x` to the half-edge
/// germ at slot `k - 1` of `v`.
pub fn insert(x: &DiagramSum, y: &Diagram, v: usize) -> Result<DiagramSum> {
    if x.arity() != (3, 0) {
        return Err(Error::ArityMismatch { expected: (3, 0), found: x.arity() });
    }
    if v >= y.vertex_count() {
        return Err(Error::InvalidArgument(format!("diagram has no vertex {v}")));
    }
    let mut out = DiagramSum::zero(y.inputs(), y.outputs());
    for (xd, c) in x.terms() {
        let mut w = Wiring::new();
        let yi = w.embed(
            y,
            |leg| match leg {
                Leg::In(k) => LegTo::Input(k),
                Leg::Out(k) => LegTo::Output(k),
            },
            &[v],
        );
        let xi = w.embed(xd, |_| LegTo::Connector, &[]);
        for k in 0..3 {
            w.glue(xi[xd.leg_index(Leg::In(k + 1))], yi[y.slot(v, k)]);
        }
        out.add_term(c.clone(), &w.finish());
    }
    Ok(out)
}

/// Inserts `x` at vertex `v` of every term of `y` (linear in both).
pub fn insert_sum(x: &DiagramSum, y: &DiagramSum, v: usize) -> Result<DiagramSum> {
    let mut out = DiagramSum::zero(y.inputs(), y.outputs());
    for (yd, c) in y.terms() {
        out.add_sum(&insert(x, yd, v)?, c);
    }
    Ok(out)
}

/// The product `x · y`: `x` inserted into a vertex of `y`.
pub fn lambda_mul(x: &LambdaElement, y: &LambdaElement) -> Result<LambdaElement> {
    Ok(LambdaElement { sum: quotient::reduce(&insert_sum(&x.sum, &y.sum, 0)?)? })
}

/// `x^k`, with `x^0 = 1`.
pub fn lambda_pow(x: &LambdaElement, k: usize) -> Result<LambdaElement> {
    let mut acc = one();
    for _ in 0..k {
        acc = lambda_mul(x, &acc)?;
    }
    Ok(acc)
}

/// Explicit diagrams behind the named elements, as drawn counterclockwise.
pub mod diagrams {
    use super::*;

    /// `1`: the tripod.
    pub fn one() -> Diagram {
        prop::named::tripod()
    }

    /// `t`: a triangle with one leg at each corner.
    pub fn t() -> Diagram {
        build(
            3,
            0,
            &[["a1", "ab", "ac"], ["bc", "ba", "b2"], ["c3", "ca", "cb"]],
            &[["in:1", "a1"], ["in:2", "b2"], ["in:3", "c3"], ["ab", "ba"], ["ac", "ca"], ["bc", "cb"]],
        )
    }

    /// `x_n`: leg 1 runs into a vertex `u` closing a loop through
    /// `p_1 .. p_n`; legs 3 and 2 are joined by a path `q_1 .. q_n`; rungs join
    /// `p_i` to `q_i`. `x_1` is a bubble on the stem of a tripod.
    pub fn x(n: usize) -> Diagram {
        assert!(n >= 1, "x_n needs n >= 1");
        let mut vertices: Vec<[String; 3]> = vec![["u0".into(), "u1".into(), "u2".into()]];
        let mut edges: Vec<[String; 2]> = vec![["in:1".into(), "u0".into()]];
        for i in 1..=n {
            vertices.push([format!("p{i}r"), format!("p{i}up"), format!("p{i}dn")]);
            vertices.push([format!("q{i}up"), format!("q{i}r"), format!("q{i}dn")]);
            edges.push([format!("p{i}r"), format!("q{i}r")]);
            if i > 1 {
                edges.push([format!("p{}dn", i - 1), format!("p{i}up")]);
                edges.push([format!("q{}dn", i - 1), format!("q{i}up")]);
            }
        }
        edges.push(["u2".into(), "p1up".into()]);
        edges.push(["u1".into(), format!("p{n}dn")]);
        edges.push(["in:3".into(), "q1up".into()]);
        edges.push(["in:2".into(), format!("q{n}dn")]);
        let v: Vec<[&str; 3]> = vertices.iter().map(|t| [t[0].as_str(), t[1].as_str(), t[2].as_str()]).collect();
        let e: Vec<[&str; 2]> = edges.iter().map(|t| [t[0].as_str(), t[1].as_str()]).collect();
        build(3, 0, &v, &e)
    }
}

pub fn one() -> LambdaElement {
    LambdaElement { sum: DiagramSum::from_diagram(&diagrams::one()) }
}

pub fn t() -> LambdaElement {
    project_skew(&DiagramSum::from_diagram(&diagrams::t())).expect("t is connected")
}

/// `x_n` for `n >= 1`.
pub fn x(n: usize) -> Result<LambdaElement> {
    if n == 0 {
        return Err(Error::InvalidArgument("x_n needs n >= 1".into()));
    }
    project_skew(&DiagramSum::from_diagram(&diagrams::x(n)))
}

/// Parses `one`, `t` or `x:n`.
pub fn named(name: &str) -> Result<LambdaElement> {
    match name {
        "one" | "1" => Ok(one()),
        "t" => Ok(t()),
        _ => match name.strip_prefix("x:").map(str::parse::<usize>) {
            Some(Ok(n)) => x(n),
            _ => Err(Error::InvalidArgument(format!("unknown element {name:?}; expected one, t or x:n"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn s(d: &Diagram) -> DiagramSum {
        DiagramSum::from_diagram(d)
    }

    #[test]
    fn tripod_is_skew_and_neutral() {
        let p = project_skew(&s(&diagrams::one())).unwrap();
        assert!(p.equals(&one()));
        let theta = prop::named::theta();
        for v in 0..2 {
            assert_eq!(insert(&s(&diagrams::one()), &theta, v).unwrap(), s(&theta));
        }
    }

    #[test]
    fn raw_diagrams_are_skew() {
        for d in [diagrams::t(), diagrams::x(1), diagrams::x(2)] {
            let raw = quotient::reduce(&s(&d)).unwrap();
            assert_eq!(project_skew(&s(&d)).unwrap().sum(), &raw);
        }
    }

    #[test]
    fn symmetric_part_dies() {
        let mut sym = DiagramSum::zero(3, 0);
        for pi in prop::permutations(3) {
            sym.add_sum(&prop::compose(&s(&diagrams::x(1)), &prop::perm(&pi).unwrap()).unwrap(), &int(1));
        }
        assert!(project_skew(&sym).unwrap().is_zero());
    }

    #[test]
    fn vogel_relations() {
        let t = t();
        assert!(x(1).unwrap().equals(&t.scale(&int(2))));
        assert!(x(2).unwrap().equals(&lambda_mul(&t, &t).unwrap()));
        assert!(lambda_mul(&one(), &t).unwrap().equals(&t));
        assert_eq!(t.degree(), Some(1));
        assert_eq!(x(2).unwrap().degree(), Some(2));
    }

    #[test]
    fn named_parsing() {
        assert!(named("x:1").is_ok());
        assert!(named("x:0").is_err());
        assert!(named("y").is_err());
    }
}
