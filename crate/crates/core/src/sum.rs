//! Finite formal combinations of canonical diagrams.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::canon::{canonicalize, SignedCanonical};
use crate::diagram::{Diagram, RawDiagram};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// An element of `hom(inputs, outputs)` before the IHX quotient: canonical
/// diagrams with nonzero coefficients, AS signs absorbed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramSum {
    inputs: usize,
    outputs: usize,
    terms: BTreeMap<Diagram, Rational>,
}

impl DiagramSum {
    pub fn zero(inputs: usize, outputs: usize) -> Self {
        DiagramSum { inputs, outputs, terms: BTreeMap::new() }
    }

    pub fn from_diagram(d: &Diagram) -> Self {
        let mut s = Self::zero(d.inputs(), d.outputs());
        s.add_term(rational::one(), d);
        s
    }

    /// Canonicalises, merges and prunes a raw combination.
    pub fn normal_form<'a>(
        inputs: usize,
        outputs: usize,
        terms: impl IntoIterator<Item = (Rational, &'a Diagram)>,
    ) -> Result<Self> {
        let mut s = Self::zero(inputs, outputs);
        for (c, d) in terms {
            if d.arity() != (inputs, outputs) {
                return Err(Error::ArityMismatch { expected: (inputs, outputs), found: d.arity() });
            }
            s.add_term(c, d);
        }
        Ok(s)
    }

    /// Adds `c * d`. The arity of `d` must match.
    pub fn add_term(&mut self, c: Rational, d: &Diagram) {
        assert_eq!(d.arity(), self.arity(), "arity mismatch in add_term");
        if c.is_zero() {
            return;
        }
        if let SignedCanonical::Form { diagram, sign } = canonicalize(d) {
            let c = if sign < 0 { -c } else { c };
            self.add_canonical(c, diagram);
        }
    }

    /// Adds a term whose diagram is already canonical.
    pub(crate) fn add_canonical(&mut self, c: Rational, d: Diagram) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(d) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.inputs, self.outputs)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &Diagram) -> Rational {
        match canonicalize(d) {
            SignedCanonical::Zero => Rational::zero(),
            SignedCanonical::Form { diagram, sign } => {
                let c = self.terms.get(&diagram).cloned().unwrap_or_else(Rational::zero);
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.inputs, self.outputs);
        }
        let terms = self.terms.iter().map(|(d, x)| (d.clone(), x * c)).collect();
        DiagramSum { terms, ..*self }
    }

    pub fn add_sum(&mut self, other: &DiagramSum, c: &Rational) {
        assert_eq!(self.arity(), other.arity(), "arity mismatch in add_sum");
        for (d, x) in &other.terms {
            self.add_canonical(x * c, d.clone());
        }
    }

    /// Applies `f` to every diagram and sums the results with the coefficients.
    pub fn map_linear(&self, inputs: usize, outputs: usize, mut f: impl FnMut(&Diagram) -> DiagramSum) -> Self {
        let mut out = Self::zero(inputs, outputs);
        for (d, c) in &self.terms {
            out.add_sum(&f(d), c);
        }
        out
    }

    /// Splits by (degree, components); the relations are homogeneous in both.
    pub fn strata(&self) -> BTreeMap<(usize, usize), DiagramSum> {
        let mut out: BTreeMap<(usize, usize), DiagramSum> = BTreeMap::new();
        for (d, c) in &self.terms {
            out.entry((d.degree(), d.components()))
                .or_insert_with(|| Self::zero(self.inputs, self.outputs))
                .terms
                .insert(d.clone(), c.clone());
        }
        out
    }

    pub fn to_serial(&self) -> SumJson {
        SumJson {
            inputs: self.inputs,
            outputs: self.outputs,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| TermJson { coeff: c.clone(), diagram: d.to_raw() })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_serial()).expect("sum serialises")
    }
}

impl std::str::FromStr for DiagramSum {
    type Err = Error;

    /// Accepts either a sum document or a bare diagram document.
    fn from_str(s: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if value.get("terms").is_some() {
            let raw: SumJson = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
            raw.validate()
        } else {
            let raw: RawDiagram = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(DiagramSum::from_diagram(&raw.validate()?))
        }
    }
}

impl std::fmt::Display for DiagramSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} * {}", rational::format(c), d.to_json())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(with = "rational::serde_str")]
    pub coeff: Rational,
    pub diagram: RawDiagram,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumJson {
    pub inputs: usize,
    pub outputs: usize,
    pub terms: Vec<TermJson>,
}

impl SumJson {
    pub fn validate(&self) -> Result<DiagramSum> {
        let diagrams = self
            .terms
            .iter()
            .map(|t| t.diagram.validate())
            .collect::<Result<Vec<_>>>()?;
        DiagramSum::normal_form(
            self.inputs,
            self.outputs,
            self.terms.iter().zip(&diagrams).map(|(t, d)| (t.coeff.clone(), d)),
        )
    }
}

impl Add for &DiagramSum {
    type Output = DiagramSum;
    fn add(self, rhs: &DiagramSum) -> DiagramSum {
        let mut out = self.clone();
        out.add_sum(rhs, &rational::one());
        out
    }
}

impl Sub for &DiagramSum {
    type Output = DiagramSum;
    fn sub(self, rhs: &DiagramSum) -> DiagramSum {
        let mut out = self.clone();
        out.add_sum(rhs, &-rational::one());
        out
    }
}

impl Neg for &DiagramSum {
    type Output = DiagramSum;
    fn neg(self) -> DiagramSum {
        self.scale(&-rational::one())
    }
}

impl Mul<&DiagramSum> for &Rational {
    type Output = DiagramSum;
    fn mul(self, rhs: &DiagramSum) -> DiagramSum {
        rhs.scale(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prop::named;
    use crate::rational::int;

    #[test]
    fn as_merge() {
        let theta = named::theta();
        let flipped = theta.flip_vertex(0);
        let s = DiagramSum::normal_form(0, 0, [(int(2), &theta), (int(3), &flipped)]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.coefficient(&theta), int(-1));
    }

    #[test]
    fn tadpole_and_empty_vanish() {
        let s = DiagramSum::normal_form(0, 1, [(int(1), &named::tadpole())]).unwrap();
        assert!(s.is_empty());
        assert!(DiagramSum::normal_form(0, 0, []).unwrap().is_empty());
    }

    #[test]
    fn arity_mismatch() {
        let err = DiagramSum::normal_form(0, 0, [(int(1), &named::mu())]).unwrap_err();
        assert!(matches!(err, Error::ArityMismatch { .. }));
    }

    #[test]
    fn json_round_trip() {
        let theta = named::theta();
        let s = DiagramSum::normal_form(0, 0, [(rational::frac(-3, 4), &theta)]).unwrap();
        let again: DiagramSum = s.to_json().parse().unwrap();
        assert_eq!(s, again);
        assert!(s.to_json().contains("3/4\""));
    }
}
