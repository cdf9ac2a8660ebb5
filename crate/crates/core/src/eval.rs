//! Weight systems: diagrams evaluated on a metric Lie (super)algebra.
//!
//! A diagram `m -> n` is read as the composite
//! `(vertices ⊗ forms ⊗ id_out) ∘ σ ∘ (id_in ⊗ coforms)`: every edge not
//! touching an input is a coform `Σ g^{ab} e_a ⊗ e_b`, every edge joining two
//! inputs is the form, and each vertex is the trilinear map `g([x,y],z)` read
//! in its cyclic order. The permutation `σ` carries the Koszul sign
//! `Π (-1)^{|a||b|}` over pairs of factors it swaps. Free circles contribute
//! the superdimension.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::diagram::{Diagram, End, Leg};
use crate::error::{Error, Result};
use crate::lambda::LambdaElement;
use crate::lie::MetricLie;
use crate::linalg::{self, Matrix};
use crate::rational::{self, Rational};
use crate::sum::DiagramSum;

/// A linear map `g^{⊗m} -> g^{⊗n}` as the array `T[i_1..i_m; j_1..j_n]` with
/// `f(e_i) = Σ_j T[i; j] e_j`, stored row-major with inputs first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalTensor {
    dim: usize,
    inputs: usize,
    outputs: usize,
    data: Vec<Rational>,
}

impl EvalTensor {
    pub fn zero(dim: usize, inputs: usize, outputs: usize) -> Self {
        EvalTensor { dim, inputs, outputs, data: vec![Rational::zero(); dim.pow((inputs + outputs) as u32)] }
    }

    pub fn scalar(dim: usize, x: Rational) -> Self {
        EvalTensor { dim, inputs: 0, outputs: 0, data: vec![x] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.inputs, self.outputs)
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    fn offset(&self, i: &[usize], j: &[usize]) -> usize {
        i.iter().chain(j).fold(0, |acc, &x| acc * self.dim + x)
    }

    pub fn get(&self, i: &[usize], j: &[usize]) -> &Rational {
        &self.data[self.offset(i, j)]
    }

    pub fn set(&mut self, i: &[usize], j: &[usize], x: Rational) {
        let o = self.offset(i, j);
        self.data[o] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// The value of a `0 -> 0` tensor.
    pub fn as_scalar(&self) -> Option<&Rational> {
        (self.inputs == 0 && self.outputs == 0).then(|| &self.data[0])
    }

    pub fn add_scaled(&mut self, other: &EvalTensor, c: &Rational) {
        assert_eq!((self.dim, self.arity()), (other.dim, other.arity()), "shape mismatch");
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            if !y.is_zero() {
                *x += c * y;
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        EvalTensor { data: self.data.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    /// `f ∘ g`: `self` is `f`, applied after `g`.
    pub fn compose(&self, g: &EvalTensor) -> Result<EvalTensor> {
        if g.outputs != self.inputs || g.dim != self.dim {
            return Err(Error::ArityMismatch { expected: (self.inputs, self.outputs), found: (g.inputs, g.outputs) });
        }
        let d = self.dim;
        let (a, b, c) = (d.pow(g.inputs as u32), d.pow(g.outputs as u32), d.pow(self.outputs as u32));
        let mut out = EvalTensor::zero(d, g.inputs, self.outputs);
        for i in 0..a {
            for j in 0..b {
                let x = &g.data[i * b + j];
                if x.is_zero() {
                    continue;
                }
                for k in 0..c {
                    let y = &self.data[j * c + k];
                    if !y.is_zero() {
                        out.data[i * c + k] += x * y;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `f ⊗ g` for even maps.
    pub fn tensor(&self, g: &EvalTensor) -> EvalTensor {
        assert_eq!(self.dim, g.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = EvalTensor::zero(d, self.inputs + g.inputs, self.outputs + g.outputs);
        let (fi, fo) = (self.inputs, self.outputs);
        let (gi, go) = (g.inputs, g.outputs);
        let mut idx = vec![0usize; fi + fo + gi + go];
        for (pos, x) in out.data.iter_mut().enumerate() {
            let mut p = pos;
            for slot in idx.iter_mut().rev() {
                *slot = p % d;
                p /= d;
            }
            let (ii, jj) = idx.split_at(fi + gi);
            let fx = self.get(&ii[..fi], &jj[..fo]);
            if fx.is_zero() {
                continue;
            }
            *x = fx * g.get(&ii[fi..], &jj[fo..]);
        }
        out
    }

    /// Whether `self = α · other` for a single scalar `α` (returned).
    pub fn ratio_to(&self, other: &EvalTensor) -> Option<Rational> {
        if self.arity() != other.arity() {
            return None;
        }
        let pos = other.data.iter().position(|x| !x.is_zero())?;
        let alpha = &self.data[pos] / &other.data[pos];
        self.data.iter().zip(&other.data).all(|(x, y)| *x == &alpha * y).then_some(alpha)
    }

    /// `{"dim":d,"inputs":m,"outputs":n,"data":["p/q",...]}`, row-major.
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "dim": self.dim,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "data": self.data.iter().map(rational::format).collect::<Vec<_>>(),
        })
        .to_string()
    }
}

// ---------------------------------------------------------------------------
// Sparse factor contraction

#[derive(Clone, Debug)]
struct Factor {
    vars: Vec<usize>,
    entries: HashMap<Vec<u8>, Rational>,
}

impl Factor {
    fn dense(vars: Vec<usize>, d: usize, f: impl Fn(&[usize]) -> Rational) -> Factor {
        let k = vars.len();
        let mut entries = HashMap::new();
        let mut idx = vec![0usize; k];
        for pos in 0..d.pow(k as u32) {
            let mut p = pos;
            for s in idx.iter_mut().rev() {
                *s = p % d;
                p /= d;
            }
            let x = f(&idx);
            if !x.is_zero() {
                entries.insert(idx.iter().map(|&v| v as u8).collect(), x);
            }
        }
        Factor { vars, entries }
    }

    /// Product of two factors.
    fn mul(&self, other: &Factor) -> Factor {
        let shared: Vec<(usize, usize)> = self
            .vars
            .iter()
            .enumerate()
            .filter_map(|(i, v)| other.vars.iter().position(|w| w == v).map(|j| (i, j)))
            .collect();
        let extra: Vec<usize> = (0..other.vars.len()).filter(|j| !shared.iter().any(|s| s.1 == *j)).collect();
        let mut index: HashMap<Vec<u8>, Vec<(&Vec<u8>, &Rational)>> = HashMap::new();
        for (k, x) in &other.entries {
            index.entry(shared.iter().map(|s| k[s.1]).collect()).or_default().push((k, x));
        }
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|&j| other.vars[j]));
        let mut entries = HashMap::new();
        for (k, x) in &self.entries {
            let key: Vec<u8> = shared.iter().map(|s| k[s.0]).collect();
            if let Some(list) = index.get(&key) {
                for (k2, y) in list {
                    let mut nk = k.clone();
                    nk.extend(extra.iter().map(|&j| k2[j]));
                    entries.insert(nk, x * *y);
                }
            }
        }
        Factor { vars, entries }
    }

    fn sum_out(&self, var: usize) -> Factor {
        let Some(p) = self.vars.iter().position(|&v| v == var) else { return self.clone() };
        let mut vars = self.vars.clone();
        vars.remove(p);
        let mut entries: HashMap<Vec<u8>, Rational> = HashMap::new();
        for (k, x) in &self.entries {
            let mut nk = k.clone();
            nk.remove(p);
            *entries.entry(nk).or_insert_with(Rational::zero) += x;
        }
        entries.retain(|_, x| !x.is_zero());
        Factor { vars, entries }
    }
}

/// Contracts all variables not in `keep`; returns one factor over `keep`
/// (possibly missing some of them when nothing depends on them).
fn contract(mut factors: Vec<Factor>, keep: &[usize]) -> Factor {
    loop {
        let mut candidates: Vec<usize> = factors.iter().flat_map(|f| f.vars.iter().copied()).collect();
        candidates.sort_unstable();
        candidates.dedup();
        candidates.retain(|v| !keep.contains(v));
        let Some(&var) = candidates.iter().min_by_key(|&&v| {
            let mut union: Vec<usize> = factors
                .iter()
                .filter(|f| f.vars.contains(&v))
                .flat_map(|f| f.vars.iter().copied())
                .collect();
            union.sort_unstable();
            union.dedup();
            let work: usize = factors.iter().filter(|f| f.vars.contains(&v)).map(|f| f.entries.len().max(1)).product();
            (union.len(), work)
        }) else {
            break;
        };
        let (with, without): (Vec<Factor>, Vec<Factor>) = factors.into_iter().partition(|f| f.vars.contains(&var));
        let mut prod = with.into_iter().reduce(|a, b| a.mul(&b)).expect("variable occurs");
        prod = prod.sum_out(var);
        factors = without;
        factors.push(prod);
    }
    factors.into_iter().reduce(|a, b| a.mul(&b)).unwrap_or_else(|| {
        let mut entries = HashMap::new();
        entries.insert(Vec::new(), Rational::one());
        Factor { vars: Vec::new(), entries }
    })
}

/// Where each source (input or coform end) of `d` lands.
pub(crate) struct Layout {
    /// Per source: the half-edge it lands on (a vertex slot, an output, or an
    /// input at the far end of a form edge).
    pub sources: Vec<usize>,
    /// Target position of every source in the order
    /// `vertex slots | form pairs | outputs`.
    pub position: Vec<usize>,
    /// Coform edges as pairs of source indices.
    pub coforms: Vec<(usize, usize)>,
    /// Form edges as pairs of source indices (both inputs).
    pub forms: Vec<(usize, usize)>,
    /// Source index landing on each output.
    pub output_source: Vec<usize>,
    /// Source indices landing on each vertex's slots.
    pub vertex_sources: Vec<[usize; 3]>,
}

pub(crate) fn layout(d: &Diagram) -> Layout {
    let m = d.inputs();
    let n = d.outputs();
    let slots = 3 * d.vertex_count();
    let mut sources: Vec<usize> = vec![usize::MAX; m];
    let mut coforms = Vec::new();
    let mut forms = Vec::new();
    for (a, b) in d.edges() {
        let ia = a < m;
        let ib = b < m;
        match (ia, ib) {
            (true, true) => forms.push((a, b)),
            (true, false) => sources[a] = b,
            (false, true) => sources[b] = a,
            (false, false) => {
                let s = sources.len();
                sources.push(a);
                sources.push(b);
                coforms.push((s, s + 1));
            }
        }
    }
    let mut position = vec![0; sources.len()];
    let mut output_source = vec![usize::MAX; n];
    let mut vertex_sources = vec![[usize::MAX; 3]; d.vertex_count()];
    for (t, &(a, b)) in forms.iter().enumerate() {
        position[a] = slots + 2 * t;
        position[b] = slots + 2 * t + 1;
        sources[a] = b;
        sources[b] = a;
    }
    for (s, &h) in sources.iter().enumerate() {
        match d.end(h) {
            End::Slot { vertex, slot } => {
                position[s] = 3 * vertex + slot;
                vertex_sources[vertex][slot] = s;
            }
            End::Leg(Leg::Out(k)) => {
                position[s] = slots + 2 * forms.len() + k - 1;
                output_source[k - 1] = s;
            }
            End::Leg(Leg::In(_)) => {}
        }
    }
    Layout { sources, position, coforms, forms, output_source, vertex_sources }
}

/// Evaluates one diagram.
pub fn evaluate_diagram(d: &Diagram, l: &MetricLie) -> EvalTensor {
    let dim = l.dim();
    let lay = layout(d);
    let f = l.vertex_tensor();
    let g = l.form();
    let co = l.coform();
    let mut factors = Vec::new();
    for vs in &lay.vertex_sources {
        factors.push(Factor::dense(vs.to_vec(), dim, |x| f[(x[0] * dim + x[1]) * dim + x[2]].clone()));
    }
    for &(a, b) in &lay.forms {
        factors.push(Factor::dense(vec![a, b], dim, |x| g[x[0]][x[1]].clone()));
    }
    for &(a, b) in &lay.coforms {
        factors.push(Factor::dense(vec![a, b], dim, |x| co[x[0]][x[1]].clone()));
    }
    if l.is_super() {
        let par = l.parity();
        for s in 0..lay.sources.len() {
            for t in s + 1..lay.sources.len() {
                if lay.position[s] > lay.position[t] {
                    factors.push(Factor::dense(vec![s, t], dim, |x| {
                        if par[x[0]] == 1 && par[x[1]] == 1 {
                            -Rational::one()
                        } else {
                            Rational::one()
                        }
                    }));
                }
            }
        }
    }
    let mut keep: Vec<usize> = (0..d.inputs()).collect();
    keep.extend(lay.output_source.iter().copied());
    let res = contract(factors, &keep);
    let circle = Rational::from_integer(l.superdimension().into());
    let mut weight = Rational::one();
    for _ in 0..d.circles() {
        weight *= &circle;
    }
    let mut out = EvalTensor::zero(dim, d.inputs(), d.outputs());
    if weight.is_zero() {
        return out;
    }
    let (m, n) = d.arity();
    let mut assign = vec![usize::MAX; lay.sources.len()];
    let mut idx = vec![0usize; m + n];
    for pos in 0..out.data.len() {
        let mut p = pos;
        for s in idx.iter_mut().rev() {
            *s = p % dim;
            p /= dim;
        }
        assign[..m].copy_from_slice(&idx[..m]);
        let mut ok = true;
        for k in 0..n {
            let s = lay.output_source[k];
            if s < m {
                ok &= assign[s] == idx[m + k];
            } else {
                assign[s] = idx[m + k];
            }
        }
        if !ok {
            continue;
        }
        let key: Vec<u8> = res.vars.iter().map(|&v| assign[v] as u8).collect();
        if let Some(x) = res.entries.get(&key) {
            out.data[pos] = x * &weight;
        }
    }
    out
}

/// Evaluates a linear combination of diagrams.
pub fn evaluate(s: &DiagramSum, l: &MetricLie) -> EvalTensor {
    let mut out = EvalTensor::zero(l.dim(), s.inputs(), s.outputs());
    for (d, c) in s.terms() {
        out.add_scaled(&evaluate_diagram(d, l), c);
    }
    out
}

/// The scalar `α` with `evaluate(x) = α · evaluate(1)`.
pub fn vogel_character(x: &LambdaElement, l: &MetricLie) -> Result<Rational> {
    character_of_sum(x.sum(), l)
}

pub fn character_of_sum(x: &DiagramSum, l: &MetricLie) -> Result<Rational> {
    if x.arity() != (3, 0) {
        return Err(Error::ArityMismatch { expected: (3, 0), found: x.arity() });
    }
    let unit = evaluate_diagram(&crate::prop::named::tripod(), l);
    if unit.is_zero() {
        return Err(Error::NotProportional(format!("the tripod evaluates to zero on {}", l.name())));
    }
    let ex = evaluate(x, l);
    if ex.is_zero() {
        return Ok(Rational::zero());
    }
    ex.ratio_to(&unit)
        .ok_or_else(|| Error::NotProportional(format!("evaluation on {} is not a multiple of the tripod", l.name())))
}

/// The value of the circle.
pub fn dim_char(l: &MetricLie) -> Rational {
    evaluate_diagram(&Diagram::circles_only(1), l).as_scalar().cloned().expect("closed diagram")
}

// ---------------------------------------------------------------------------
// Casimir operators

/// Rational eigenvalues with multiplicities and the unfactored remainder of
/// the characteristic polynomial (constant term first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub eigenvalues: Vec<(Rational, usize)>,
    pub remainder: Vec<Rational>,
}

impl Spectrum {
    pub fn nonzero(&self) -> Vec<Rational> {
        self.eigenvalues.iter().filter(|(x, _)| !x.is_zero()).map(|(x, _)| x.clone()).collect()
    }
}

fn casimir(rho: &[Matrix], l: &MetricLie) -> Matrix {
    let co = l.coform();
    let n = rho[0].len();
    let mut c = vec![vec![Rational::zero(); n]; n];
    for (a, ra) in rho.iter().enumerate() {
        for (b, rb) in rho.iter().enumerate() {
            if co[a][b].is_zero() {
                continue;
            }
            let p = linalg::mul(ra, rb);
            for (crow, prow) in c.iter_mut().zip(&p) {
                for (x, y) in crow.iter_mut().zip(prow) {
                    if !y.is_zero() {
                        *x += &co[a][b] * y;
                    }
                }
            }
        }
    }
    c
}

fn require_ordinary(l: &MetricLie) -> Result<()> {
    if l.is_super() {
        return Err(Error::InvalidArgument(format!("{} has odd part; Casimir spectra need an ordinary algebra", l.name())));
    }
    Ok(())
}

/// `Σ g^{ab} ad(e_a) ad(e_b)` on the adjoint representation.
pub fn casimir_adjoint(l: &MetricLie) -> Result<Matrix> {
    require_ordinary(l)?;
    let ads: Vec<Matrix> = (0..l.dim()).map(|a| l.ad(a)).collect();
    Ok(casimir(&ads, l))
}

/// The Casimir on the symmetric square, in the basis `e_i ⊙ e_j` (`i <= j`).
pub fn casimir_s2(l: &MetricLie) -> Result<Matrix> {
    require_ordinary(l)?;
    let d = l.dim();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let idx = |i: usize, j: usize| pairs.iter().position(|&p| p == (i.min(j), i.max(j))).expect("pair");
    let rho: Vec<Matrix> = (0..d)
        .map(|a| {
            let ad = l.ad(a);
            let mut r = vec![vec![Rational::zero(); pairs.len()]; pairs.len()];
            for (col, &(i, j)) in pairs.iter().enumerate() {
                for k in 0..d {
                    if !ad[k][i].is_zero() {
                        r[idx(k, j)][col] += &ad[k][i];
                    }
                    if !ad[k][j].is_zero() {
                        r[idx(i, k)][col] += &ad[k][j];
                    }
                }
            }
            r
        })
        .collect();
    Ok(casimir(&rho, l))
}

pub fn casimir_adjoint_spectrum(l: &MetricLie) -> Result<Spectrum> {
    let (eigenvalues, remainder) = linalg::rational_eigenvalues(&casimir_adjoint(l)?);
    Ok(Spectrum { eigenvalues, remainder })
}

pub fn casimir_s2_spectrum(l: &MetricLie) -> Result<Spectrum> {
    let (eigenvalues, remainder) = linalg::rational_eigenvalues(&casimir_s2(l)?);
    Ok(Spectrum { eigenvalues, remainder })
}

// ---------------------------------------------------------------------------
// Polylinear words

/// A nonassociative monomial in the variables `x_1, x_2, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Var(usize),
    Mul(Box<Word>, Box<Word>),
}

impl Word {
    pub fn mul(a: Word, b: Word) -> Word {
        Word::Mul(Box::new(a), Box::new(b))
    }

    fn vars(&self, out: &mut Vec<usize>) {
        match self {
            Word::Var(k) => out.push(*k),
            Word::Mul(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Word::Var(k) => write!(f, "x{k}"),
            Word::Mul(a, b) => {
                let wrap = |w: &Word| matches!(w, Word::Mul(..));
                for w in [a, b] {
                    if wrap(w) {
                        write!(f, "({w})")?;
                    } else {
                        write!(f, "{w}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// A linear combination of words, each using every variable `x_1..x_n` once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polylinear {
    pub terms: Vec<(Rational, Word)>,
}

impl Polylinear {
    /// Number of variables; errors unless every term uses `x_1..x_n` exactly once.
    pub fn arity(&self) -> Result<usize> {
        let mut n = None;
        for (_, w) in &self.terms {
            let mut vs = Vec::new();
            w.vars(&mut vs);
            vs.sort_unstable();
            let k = vs.len();
            if vs != (1..=k).collect::<Vec<_>>() || n.is_some_and(|n| n != k) {
                return Err(Error::InvalidArgument(format!("non-polylinear input: {w}")));
            }
            n = Some(k);
        }
        n.ok_or_else(|| Error::InvalidArgument("empty word combination".into()))
    }
}

impl std::str::FromStr for Polylinear {
    type Err = Error;

    /// Parses sums like `(x1x2)x3 - x2(x1x3) + 1/2*x3(x1x2)`; juxtaposition
    /// associates to the left.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("{m} in {s:?}"));
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        fn word(c: &[char], pos: &mut usize) -> Option<Word> {
            let mut acc: Option<Word> = None;
            loop {
                let atom = match c.get(*pos) {
                    Some('x') => {
                        *pos += 1;
                        let start = *pos;
                        while c.get(*pos).is_some_and(|d| d.is_ascii_digit()) {
                            *pos += 1;
                        }
                        Word::Var(c[start..*pos].iter().collect::<String>().parse().ok()?)
                    }
                    Some('(') => {
                        *pos += 1;
                        let w = word(c, pos)?;
                        if c.get(*pos) != Some(&')') {
                            return None;
                        }
                        *pos += 1;
                        w
                    }
                    _ => return acc,
                };
                acc = Some(match acc {
                    None => atom,
                    Some(a) => Word::mul(a, atom),
                });
            }
        }
        let mut terms = Vec::new();
        while pos < chars.len() {
            let mut sign = Rational::one();
            while let Some(&c) = chars.get(pos).filter(|c| **c == '+' || **c == '-') {
                if c == '-' {
                    sign = -sign;
                }
                pos += 1;
            }
            let mut coeff = Rational::one();
            if chars.get(pos).is_some_and(|c| c.is_ascii_digit()) {
                let start = pos;
                while chars.get(pos).is_some_and(|c| c.is_ascii_digit() || *c == '/') {
                    pos += 1;
                }
                coeff = rational::parse(&chars[start..pos].iter().collect::<String>())?;
                if chars.get(pos) == Some(&'*') {
                    pos += 1;
                }
            }
            let w = word(&chars, &mut pos).ok_or_else(|| bad("malformed word"))?;
            terms.push((sign * coeff, w));
        }
        let p = Polylinear { terms };
        p.arity()?;
        Ok(p)
    }
}

/// Evaluates words recursively with `mul` (a `2 -> 1` tensor) as the
/// product; reordering variables into a subword's positions carries the
/// Koszul sign for the given parities.
pub fn eval_polylinear(w: &Polylinear, mul: &EvalTensor, parity: &[u8]) -> Result<EvalTensor> {
    if mul.arity() != (2, 1) || parity.len() != mul.dim() {
        return Err(Error::InvalidArgument("product must be a 2 -> 1 tensor with matching parities".into()));
    }
    let n = w.arity()?;
    let mut out = EvalTensor::zero(mul.dim(), n, 1);
    for (c, word) in &w.terms {
        let (t, _) = eval_word(word, mul, parity);
        out.add_scaled(&t, c);
    }
    Ok(out)
}

/// Returns the tensor over the word's variables in increasing order, and
/// that order.
fn eval_word(w: &Word, mul: &EvalTensor, parity: &[u8]) -> (EvalTensor, Vec<usize>) {
    let d = mul.dim();
    match w {
        Word::Var(k) => {
            let mut t = EvalTensor::zero(d, 1, 1);
            for i in 0..d {
                t.set(&[i], &[i], Rational::one());
            }
            (t, vec![*k])
        }
        Word::Mul(a, b) => {
            let (ta, va) = eval_word(a, mul, parity);
            let (tb, vb) = eval_word(b, mul, parity);
            let mut vars: Vec<usize> = va.iter().chain(&vb).copied().collect();
            vars.sort_unstable();
            let k = vars.len();
            let mut out = EvalTensor::zero(d, k, 1);
            let mut idx = vec![0usize; k];
            for pos in 0..d.pow(k as u32) {
                let mut p = pos;
                for s in idx.iter_mut().rev() {
                    *s = p % d;
                    p /= d;
                }
                let at = |v: usize| idx[vars.binary_search(&v).expect("variable")];
                let ia: Vec<usize> = va.iter().map(|&v| at(v)).collect();
                let ib: Vec<usize> = vb.iter().map(|&v| at(v)).collect();
                let mut odd = false;
                for &x in &va {
                    for &y in &vb {
                        if y < x && parity[at(x)] == 1 && parity[at(y)] == 1 {
                            odd = !odd;
                        }
                    }
                }
                for j in 0..d {
                    let mut acc = Rational::zero();
                    for p in 0..d {
                        let xa = ta.get(&ia, &[p]);
                        if xa.is_zero() {
                            continue;
                        }
                        for q in 0..d {
                            let xb = tb.get(&ib, &[q]);
                            let m = mul.get(&[p, q], &[j]);
                            if !xb.is_zero() && !m.is_zero() {
                                acc += xa * xb * m;
                            }
                        }
                    }
                    if !acc.is_zero() {
                        out.set(&idx, &[j], if odd { -acc } else { acc });
                    }
                }
            }
            (out, vars)
        }
    }
}

/// The bracket of `l` as a `2 -> 1` tensor.
pub fn bracket_tensor(l: &MetricLie) -> EvalTensor {
    let d = l.dim();
    let mut t = EvalTensor::zero(d, 2, 1);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                t.set(&[i, j], &[k], l.c(i, j, k).clone());
            }
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie;
    use crate::prop::{self, named};
    use crate::rational::{frac, int};

    fn one(d: &Diagram) -> DiagramSum {
        DiagramSum::from_diagram(d)
    }

    #[test]
    fn circle_is_superdimension() {
        for l in lie::catalog() {
            assert_eq!(dim_char(&l), int(l.superdimension()));
        }
    }

    #[test]
    fn generators_map_to_structure() {
        for l in lie::catalog() {
            let g = prop::generators();
            let tau = evaluate(&g.tau, &l);
            let mu = evaluate(&g.mu, &l);
            let gamma = evaluate(&g.gamma, &l);
            let d = l.dim();
            for i in 0..d {
                for j in 0..d {
                    assert_eq!(tau.get(&[i, j], &[]), &l.form()[i][j]);
                    assert_eq!(gamma.get(&[], &[i, j]), &l.coform()[i][j]);
                    for k in 0..d {
                        assert_eq!(mu.get(&[i, j], &[k]), l.c(i, j, k));
                    }
                }
            }
        }
    }

    #[test]
    fn functoriality_on_generators() {
        for l in lie::catalog() {
            let g = prop::generators();
            let i1 = prop::identity(1);
            let snake = prop::compose(&prop::tensor(&i1, &g.tau), &prop::tensor(&g.gamma, &i1)).unwrap();
            let lhs = evaluate(&prop::tensor(&i1, &g.tau), &l).compose(&evaluate(&prop::tensor(&g.gamma, &i1), &l)).unwrap();
            assert_eq!(lhs, evaluate(&snake, &l));
            assert_eq!(evaluate(&snake, &l), evaluate(&i1, &l));
            let mt = prop::tensor(&g.mu, &g.mu);
            assert_eq!(evaluate(&mt, &l), evaluate(&g.mu, &l).tensor(&evaluate(&g.mu, &l)));
            let jac_part = prop::compose(&g.mu, &prop::tensor(&g.mu, &i1)).unwrap();
            let direct = evaluate(&g.mu, &l).compose(&evaluate(&g.mu, &l).tensor(&evaluate(&i1, &l))).unwrap();
            assert_eq!(evaluate(&jac_part, &l), direct);
        }
    }

    #[test]
    fn braiding_has_koszul_signs() {
        let l = lie::gl11();
        let t = evaluate(&prop::braiding(1, 1), &l);
        assert_eq!(t.get(&[2, 3], &[3, 2]), &int(-1));
        assert_eq!(t.get(&[0, 3], &[3, 0]), &int(1));
    }

    #[test]
    fn theta_on_killing() {
        // Σ f_{abc} f^{abc} with the Killing form is dim g.
        let v = evaluate(&one(&named::theta()), &lie::sl2_killing());
        assert_eq!(v.as_scalar().unwrap().clone() * v.as_scalar().unwrap(), int(9));
    }

    #[test]
    fn casimir_data() {
        let k = lie::sl2_killing();
        let adj = casimir_adjoint_spectrum(&k).unwrap();
        assert_eq!(adj.eigenvalues, vec![(int(1), 3)]);
        let s2 = casimir_s2_spectrum(&k).unwrap();
        assert_eq!(s2.nonzero(), vec![int(3)]);
        assert_eq!(s2.eigenvalues, vec![(int(0), 1), (int(3), 5)]);
        let a = casimir_s2_spectrum(&lie::abelian1()).unwrap();
        assert_eq!(a.eigenvalues, vec![(int(0), 1)]);
        assert!(casimir_s2_spectrum(&lie::gl11()).is_err());
        let t = casimir_adjoint_spectrum(&lie::sl2_trace()).unwrap();
        assert_eq!(t.eigenvalues, vec![(int(4), 3)]);
        let _ = frac(1, 2);
    }

    #[test]
    fn polylinear_identities() {
        for l in lie::catalog() {
            let br = bracket_tensor(&l);
            let anti: Polylinear = "x1x2 + x2x1".parse().unwrap();
            let jac: Polylinear = "(x1x2)x3 + (x2x3)x1 + (x3x1)x2".parse().unwrap();
            let base: Polylinear = "x1x2".parse().unwrap();
            assert!(eval_polylinear(&anti, &br, l.parity()).unwrap().is_zero());
            assert!(eval_polylinear(&jac, &br, l.parity()).unwrap().is_zero());
            assert_eq!(eval_polylinear(&base, &br, l.parity()).unwrap(), br);
        }
        assert!("x1x1".parse::<Polylinear>().is_err());
        assert!("x1x2 + x1".parse::<Polylinear>().is_err());
    }
}
