//! Metric Lie (super)algebras given by structure constants.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{self, Rational};

/// `[e_i, e_j] = Σ_k c[i][j][k] e_k` with an invariant form `g` and its
/// inverse, the coform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricLie {
    name: String,
    parity: Vec<u8>,
    c: Vec<Rational>,
    g: Matrix,
    coform: Matrix,
}

impl MetricLie {
    /// Builds the algebra and checks every axiom.
    pub fn new(name: &str, parity: Vec<u8>, c: Vec<Rational>, g: Matrix) -> Result<Self> {
        let l = Self::unchecked(name, parity, c, g)?;
        l.validate()?;
        Ok(l)
    }

    fn unchecked(name: &str, parity: Vec<u8>, c: Vec<Rational>, g: Matrix) -> Result<Self> {
        let d = parity.len();
        let mut errs = Vec::new();
        if parity.iter().any(|&p| p > 1) {
            errs.push("parities must be 0 or 1".to_string());
        }
        if c.len() != d * d * d {
            errs.push(format!("expected {} structure constants, got {}", d * d * d, c.len()));
        }
        if g.len() != d || g.iter().any(|r| r.len() != d) {
            errs.push(format!("form must be {d} x {d}"));
        }
        if !errs.is_empty() {
            return Err(Error::InvalidAlgebra(errs));
        }
        let coform = linalg::inverse(&g).ok_or_else(|| Error::InvalidAlgebra(vec!["form is degenerate".into()]))?;
        Ok(MetricLie { name: name.to_string(), parity, c, g, coform })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn is_super(&self) -> bool {
        self.parity.contains(&1)
    }

    /// Even count minus odd count.
    pub fn superdimension(&self) -> i64 {
        self.parity.iter().map(|&p| if p == 0 { 1 } else { -1 }).sum()
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        let d = self.dim();
        &self.c[(i * d + j) * d + k]
    }

    pub fn form(&self) -> &Matrix {
        &self.g
    }

    pub fn coform(&self) -> &Matrix {
        &self.coform
    }

    fn koszul(&self, i: usize, j: usize) -> bool {
        self.parity[i] == 1 && self.parity[j] == 1
    }

    /// `[x, y]` on coordinate vectors (homogeneous or not; signs are per basis pair).
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        out
    }

    /// The lowered structure tensor `f(x, y, z) = g([x, y], z)`.
    pub fn vertex_tensor(&self) -> Vec<Rational> {
        let d = self.dim();
        let mut f = vec![Rational::zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = self.c(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    for l in 0..d {
                        if !self.g[k][l].is_zero() {
                            f[(i * d + j) * d + l] += c * &self.g[k][l];
                        }
                    }
                }
            }
        }
        f
    }

    /// Checks the axioms, naming each failure with its basis indices.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        let mut errs = Vec::new();
        let unit = |i: usize| {
            let mut v = vec![Rational::zero(); d];
            v[i] = Rational::one();
            v
        };
        let sgn = |b: bool| if b { -Rational::one() } else { Rational::one() };
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = self.c(i, j, k);
                    if *c != -(sgn(self.koszul(i, j)) * self.c(j, i, k)) {
                        errs.push(format!("antisymmetry fails at ({i},{j},{k})"));
                    }
                    if !c.is_zero() && (self.parity[i] ^ self.parity[j]) != self.parity[k] {
                        errs.push(format!("bracket is not even at ({i},{j},{k})"));
                    }
                }
            }
        }
        // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x, y, z) = (unit(i), unit(j), unit(k));
                    let lhs = self.bracket(&x, &self.bracket(&y, &z));
                    let a = self.bracket(&self.bracket(&x, &y), &z);
                    let b = self.bracket(&y, &self.bracket(&x, &z));
                    let s = sgn(self.koszul(i, j));
                    if (0..d).any(|l| lhs[l] != &a[l] + &s * &b[l]) {
                        errs.push(format!("Jacobi fails at ({i},{j},{k})"));
                    }
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                if self.g[i][j] != sgn(self.koszul(i, j)) * &self.g[j][i] {
                    errs.push(format!("form is not supersymmetric at ({i},{j})"));
                }
                if !self.g[i][j].is_zero() && self.parity[i] != self.parity[j] {
                    errs.push(format!("form pairs different parities at ({i},{j})"));
                }
            }
        }
        // g([x,y],z) = g(x,[y,z])
        let f = self.vertex_tensor();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let yz = self.bracket(&unit(j), &unit(k));
                    let rhs: Rational = (0..d).map(|l| &self.g[i][l] * &yz[l]).sum();
                    if f[(i * d + j) * d + k] != rhs {
                        errs.push(format!("invariance fails at ({i},{j},{k})"));
                    }
                }
            }
        }
        // Snake: Σ_a g_{ia} g^{ab} = δ_ib and Σ_b g^{ab} g_{bi} = δ_ai.
        for i in 0..d {
            for b in 0..d {
                let left: Rational = (0..d).map(|a| &self.g[i][a] * &self.coform[a][b]).sum();
                let right: Rational = (0..d).map(|a| &self.coform[i][a] * &self.g[a][b]).sum();
                let want = if i == b { Rational::one() } else { Rational::zero() };
                if left != want || right != want {
                    errs.push(format!("snake identity fails at ({i},{b})"));
                }
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra(errs))
        }
    }

    /// Multiplies the form by `lambda` (the coform by `1/lambda`).
    pub fn rescale(&self, lambda: &Rational) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidArgument("scale must be nonzero".into()));
        }
        let g = self.g.iter().map(|r| r.iter().map(|x| x * lambda).collect()).collect();
        Self::new(&self.name, self.parity.clone(), self.c.clone(), g)
    }

    /// Adjoint matrices `ad(e_a)`, acting on columns.
    pub fn ad(&self, a: usize) -> Matrix {
        let d = self.dim();
        let mut m = vec![vec![Rational::zero(); d]; d];
        for j in 0..d {
            for (k, row) in m.iter_mut().enumerate() {
                row[j] = self.c(a, j, k).clone();
            }
        }
        m
    }

    /// `tr(ad x ad y)` on basis elements (the Killing form of an ordinary algebra).
    pub fn killing(&self) -> Matrix {
        let d = self.dim();
        let ads: Vec<Matrix> = (0..d).map(|a| self.ad(a)).collect();
        let mut k = vec![vec![Rational::zero(); d]; d];
        for i in 0..d {
            for j in 0..d {
                k[i][j] = linalg::trace(&linalg::mul(&ads[i], &ads[j]));
            }
        }
        k
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_serial()).expect("algebra serialises")
    }

    pub fn to_serial(&self) -> AlgebraJson {
        let d = self.dim();
        let mut c = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let x = self.c(i, j, k);
                    if !x.is_zero() {
                        c.push(Entry3(i, j, k, x.clone()));
                    }
                }
            }
        }
        let mut g = Vec::new();
        for i in 0..d {
            for j in 0..d {
                if !self.g[i][j].is_zero() {
                    g.push(Entry2(i, j, self.g[i][j].clone()));
                }
            }
        }
        AlgebraJson { name: Some(self.name.clone()), dim: d, parity: self.parity.clone(), c, g }
    }
}

impl std::str::FromStr for MetricLie {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let raw: AlgebraJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        raw.build()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry3(pub usize, pub usize, pub usize, #[serde(with = "rational::serde_str")] pub Rational);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry2(pub usize, pub usize, #[serde(with = "rational::serde_str")] pub Rational);

/// Sparse JSON form with 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    #[serde(default)]
    pub parity: Vec<u8>,
    pub c: Vec<Entry3>,
    pub g: Vec<Entry2>,
}

impl AlgebraJson {
    pub fn build(&self) -> Result<MetricLie> {
        let d = self.dim;
        let parity = if self.parity.is_empty() { vec![0; d] } else { self.parity.clone() };
        if parity.len() != d {
            return Err(Error::InvalidAlgebra(vec![format!("parity has {} entries for dimension {d}", parity.len())]));
        }
        let mut errs = Vec::new();
        let mut c = vec![Rational::zero(); d * d * d];
        for Entry3(i, j, k, x) in &self.c {
            if *i >= d || *j >= d || *k >= d {
                errs.push(format!("structure constant index ({i},{j},{k}) out of range"));
            } else {
                c[(i * d + j) * d + k] += x;
            }
        }
        let mut g = vec![vec![Rational::zero(); d]; d];
        for Entry2(i, j, x) in &self.g {
            if *i >= d || *j >= d {
                errs.push(format!("form index ({i},{j}) out of range"));
            } else {
                g[*i][*j] += x;
            }
        }
        if !errs.is_empty() {
            return Err(Error::InvalidAlgebra(errs));
        }
        MetricLie::new(self.name.as_deref().unwrap_or("custom"), parity, c, g)
    }
}

/// Builds an algebra from a basis of (super)matrices closed under the
/// supercommutator, with the form `scale * str(xy)`. `even_block` is the size
/// of the even block for the supertrace and the parity of matrix units.
fn from_matrices(name: &str, basis: &[Matrix], parity: Vec<u8>, even_block: usize, scale: Rational) -> MetricLie {
    let d = basis.len();
    let flat: Vec<Vec<Rational>> = basis.iter().map(|m| m.iter().flatten().cloned().collect()).collect();
    let coords = |m: &Matrix| -> Vec<Rational> {
        let v: Vec<Rational> = m.iter().flatten().cloned().collect();
        linalg::solve_in_span(&flat, &v).expect("basis is closed under the bracket")
    };
    let mut c = vec![Rational::zero(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            let ab = linalg::mul(&basis[i], &basis[j]);
            let ba = linalg::mul(&basis[j], &basis[i]);
            let sign = if parity[i] == 1 && parity[j] == 1 { Rational::one() } else { -Rational::one() };
            let comm: Matrix = ab
                .iter()
                .zip(&ba)
                .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + &sign * y).collect())
                .collect();
            for (k, x) in coords(&comm).into_iter().enumerate() {
                c[(i * d + j) * d + k] = x;
            }
        }
    }
    let mut g = vec![vec![Rational::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let p = linalg::mul(&basis[i], &basis[j]);
            let str: Rational = (0..p.len())
                .map(|r| if r < even_block { p[r][r].clone() } else { -p[r][r].clone() })
                .sum();
            g[i][j] = &scale * str;
        }
    }
    MetricLie::new(name, parity, c, g).expect("catalog algebra satisfies the axioms")
}

fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = vec![vec![Rational::zero(); n]; n];
    m[i][j] = Rational::one();
    m
}

fn sl_basis(n: usize) -> Vec<Matrix> {
    let mut b = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                b.push(unit(n, i, j));
            }
        }
    }
    for i in 0..n - 1 {
        let mut h = unit(n, i, i);
        h[i + 1][i + 1] = -Rational::one();
        b.push(h);
    }
    b
}

pub fn sl2_trace() -> MetricLie {
    from_matrices("sl2-trace", &sl_basis(2), vec![0; 3], 2, Rational::one())
}

/// The Killing form, four times the trace form.
pub fn sl2_killing() -> MetricLie {
    from_matrices("sl2-killing", &sl_basis(2), vec![0; 3], 2, rational::int(4))
}

pub fn sl3_trace() -> MetricLie {
    from_matrices("sl3-trace", &sl_basis(3), vec![0; 8], 3, Rational::one())
}

/// Real antisymmetric 3x3 matrices with the form `-tr(xy)/2`, making the
/// standard basis orthonormal.
pub fn so3() -> MetricLie {
    let l = |i: usize, j: usize| {
        let mut m = unit(3, i, j);
        m[j][i] = -Rational::one();
        m
    };
    from_matrices("so3", &[l(1, 2), l(2, 0), l(0, 1)], vec![0; 3], 3, rational::frac(-1, 2))
}

pub fn abelian1() -> MetricLie {
    MetricLie::new("abelian1", vec![0], vec![Rational::zero()], vec![vec![Rational::one()]]).expect("valid")
}

/// `gl(1|1)` with the supertrace form; basis `E11, E22` (even), `E12, E21` (odd).
pub fn gl11() -> MetricLie {
    let basis = [unit(2, 0, 0), unit(2, 1, 1), unit(2, 0, 1), unit(2, 1, 0)];
    from_matrices("gl11", &basis, vec![0, 0, 1, 1], 1, Rational::one())
}

pub const CATALOG: &[&str] = &["sl2-trace", "sl2-killing", "sl3-trace", "so3", "abelian1", "gl11"];

pub fn by_name(name: &str) -> Result<MetricLie> {
    match name {
        "sl2-trace" => Ok(sl2_trace()),
        "sl2-killing" => Ok(sl2_killing()),
        "sl3-trace" => Ok(sl3_trace()),
        "so3" => Ok(so3()),
        "abelian1" => Ok(abelian1()),
        "gl11" | "gl(1|1)" => Ok(gl11()),
        _ => Err(Error::InvalidArgument(format!("unknown algebra {name:?}; known: {}", CATALOG.join(", ")))),
    }
}

pub fn catalog() -> Vec<MetricLie> {
    CATALOG.iter().map(|n| by_name(n).expect("catalog name")).collect()
}
