//! The prop structure on diagrams: composition by gluing, tensor product by
//! disjoint union, permutations, and the generators of the universal metric
//! Lie algebra.

use crate::diagram::{Diagram, Leg};
use crate::error::{Error, Result};
use crate::sum::DiagramSum;
use crate::wiring::{LegTo, Wiring};

/// `f ∘ g`: the outputs of `g` are glued to the inputs of `f`.
pub fn compose_diagrams(f: &Diagram, g: &Diagram) -> Result<Diagram> {
    if g.outputs() != f.inputs() {
        return Err(Error::ArityMismatch { expected: (f.inputs(), f.outputs()), found: g.arity() });
    }
    let mut w = Wiring::new();
    let gi = w.embed(
        g,
        |leg| match leg {
            Leg::In(k) => LegTo::Input(k),
            Leg::Out(_) => LegTo::Connector,
        },
        &[],
    );
    let fi = w.embed(
        f,
        |leg| match leg {
            Leg::In(_) => LegTo::Connector,
            Leg::Out(k) => LegTo::Output(k),
        },
        &[],
    );
    for k in 1..=g.outputs() {
        w.glue(gi[g.leg_index(Leg::Out(k))], fi[f.leg_index(Leg::In(k))]);
    }
    Ok(w.finish())
}

/// Disjoint union; the legs of `g` are numbered after those of `f`.
pub fn tensor_diagrams(f: &Diagram, g: &Diagram) -> Diagram {
    let mut w = Wiring::new();
    w.embed(
        f,
        |leg| match leg {
            Leg::In(k) => LegTo::Input(k),
            Leg::Out(k) => LegTo::Output(k),
        },
        &[],
    );
    let (m, n) = f.arity();
    w.embed(
        g,
        |leg| match leg {
            Leg::In(k) => LegTo::Input(k + m),
            Leg::Out(k) => LegTo::Output(k + n),
        },
        &[],
    );
    w.finish()
}

/// Closes `f: n -> n` by gluing `out:k` to `in:k`.
pub fn trace_diagram(f: &Diagram) -> Result<Diagram> {
    if f.inputs() != f.outputs() {
        return Err(Error::InvalidArgument(format!("trace needs equal arities, got {:?}", f.arity())));
    }
    let mut w = Wiring::new();
    let ids = w.embed(f, |_| LegTo::Connector, &[]);
    for k in 1..=f.inputs() {
        w.glue(ids[f.leg_index(Leg::In(k))], ids[f.leg_index(Leg::Out(k))]);
    }
    Ok(w.finish())
}

pub fn compose(f: &DiagramSum, g: &DiagramSum) -> Result<DiagramSum> {
    if g.outputs() != f.inputs() {
        return Err(Error::ArityMismatch { expected: (f.inputs(), f.outputs()), found: g.arity() });
    }
    let mut out = DiagramSum::zero(g.inputs(), f.outputs());
    for (fd, fc) in f.terms() {
        for (gd, gc) in g.terms() {
            out.add_term(fc * gc, &compose_diagrams(fd, gd)?);
        }
    }
    Ok(out)
}

pub fn tensor(f: &DiagramSum, g: &DiagramSum) -> DiagramSum {
    let mut out = DiagramSum::zero(f.inputs() + g.inputs(), f.outputs() + g.outputs());
    for (fd, fc) in f.terms() {
        for (gd, gc) in g.terms() {
            out.add_term(fc * gc, &tensor_diagrams(fd, gd));
        }
    }
    out
}

pub fn trace(f: &DiagramSum) -> Result<DiagramSum> {
    let mut out = DiagramSum::zero(0, 0);
    for (d, c) in f.terms() {
        out.add_term(c.clone(), &trace_diagram(d)?);
    }
    Ok(out)
}

/// Checks that `images` (1-based, `k -> images[k-1]`) is a bijection of `1..=n`.
pub fn check_permutation(images: &[usize]) -> Result<()> {
    let n = images.len();
    let mut seen = vec![false; n];
    for &i in images {
        if i == 0 || i > n || seen[i - 1] {
            return Err(Error::InvalidArgument(format!("{images:?} is not a permutation of 1..{n}")));
        }
        seen[i - 1] = true;
    }
    Ok(())
}

/// The strand diagram joining `in:k` to `out:π(k)`.
pub fn perm_diagram(images: &[usize]) -> Result<Diagram> {
    check_permutation(images)?;
    let n = images.len();
    let mut mate = vec![0u32; 2 * n];
    for (k, &i) in images.iter().enumerate() {
        mate[k] = (n + i - 1) as u32;
        mate[n + i - 1] = k as u32;
    }
    Ok(Diagram::from_mate_unchecked(n, n, 0, mate))
}

pub fn perm(images: &[usize]) -> Result<DiagramSum> {
    Ok(DiagramSum::from_diagram(&perm_diagram(images)?))
}

pub fn identity(n: usize) -> DiagramSum {
    perm(&(1..=n).collect::<Vec<_>>()).expect("identity is a permutation")
}

/// The shuffle `k -> k + m` for `k <= n`, `k -> k - n` otherwise.
pub fn shuffle(n: usize, m: usize) -> Vec<usize> {
    (1..=n + m).map(|k| if k <= n { k + m } else { k - n }).collect()
}

/// The symmetry `c_{n,m}: n + m -> m + n`.
pub fn braiding(n: usize, m: usize) -> DiagramSum {
    perm(&shuffle(n, m)).expect("shuffle is a permutation")
}

/// Composition of permutations as maps, `(σ∘π)(k) = σ(π(k))`.
pub fn compose_permutations(sigma: &[usize], pi: &[usize]) -> Vec<usize> {
    pi.iter().map(|&k| sigma[k - 1]).collect()
}

pub fn inverse_permutation(pi: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; pi.len()];
    for (k, &i) in pi.iter().enumerate() {
        inv[i - 1] = k + 1;
    }
    inv
}

pub fn permutation_sign(pi: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..pi.len() {
        for j in i + 1..pi.len() {
            if pi[i] > pi[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i + 1);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The universal metric Lie algebra's structure maps.
pub struct Generators {
    pub mu: DiagramSum,
    pub tau: DiagramSum,
    pub gamma: DiagramSum,
}

pub fn generators() -> Generators {
    Generators {
        mu: DiagramSum::from_diagram(&named::mu()),
        tau: DiagramSum::from_diagram(&named::tau()),
        gamma: DiagramSum::from_diagram(&named::gamma()),
    }
}

/// Fixed small diagrams. Orientations follow a counterclockwise planar
/// drawing.
pub mod named {
    use crate::diagram::{Diagram, RawDiagram};

    pub(crate) fn build(inputs: usize, outputs: usize, vertices: &[[&str; 3]], edges: &[[&str; 2]]) -> Diagram {
        RawDiagram {
            inputs,
            outputs,
            circles: 0,
            vertices: vertices.iter().map(|v| v.map(str::to_owned)).collect(),
            edges: edges.iter().map(|e| e.map(str::to_owned)).collect(),
        }
        .validate()
        .expect("built-in diagram is valid")
    }

    /// The bracket, `2 -> 1`.
    pub fn mu() -> Diagram {
        build(2, 1, &[["a", "b", "c"]], &[["in:1", "a"], ["in:2", "b"], ["out:1", "c"]])
    }

    /// The form, a bare strand `in:1 - in:2`.
    pub fn tau() -> Diagram {
        build(2, 0, &[], &[["in:1", "in:2"]])
    }

    /// The coform, a bare strand `out:1 - out:2`.
    pub fn gamma() -> Diagram {
        build(0, 2, &[], &[["out:1", "out:2"]])
    }

    pub fn delta() -> Diagram {
        Diagram::circles_only(1)
    }

    /// The tripod `1_Λ ∈ hom(3, 0)`.
    pub fn tripod() -> Diagram {
        build(3, 0, &[["a", "b", "c"]], &[["in:1", "a"], ["in:2", "b"], ["in:3", "c"]])
    }

    /// A bubble on the identity strand, `1 -> 1`.
    pub fn phi() -> Diagram {
        build(1, 1, &[["a", "lo", "up"], ["b", "UP", "LO"]], &[["in:1", "a"], ["up", "UP"], ["lo", "LO"], ["b", "out:1"]])
    }

    /// The closure of [`phi`].
    pub fn theta() -> Diagram {
        build(0, 0, &[["a", "lo", "up"], ["b", "UP", "LO"]], &[["a", "b"], ["up", "UP"], ["lo", "LO"]])
    }

    pub fn dumbbell() -> Diagram {
        build(0, 0, &[["a", "b", "c"], ["x", "y", "z"]], &[["a", "b"], ["c", "z"], ["x", "y"]])
    }

    /// A vertex with a loop and one output leg; zero by AS.
    pub fn tadpole() -> Diagram {
        build(0, 1, &[["a", "b", "c"]], &[["a", "b"], ["c", "out:1"]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn one(d: &Diagram) -> DiagramSum {
        DiagramSum::from_diagram(d)
    }

    #[test]
    fn cap_after_cup_is_a_circle() {
        let g = generators();
        assert_eq!(compose(&g.tau, &g.gamma).unwrap(), one(&named::delta()));
    }

    #[test]
    fn mu_after_gamma_is_zero() {
        let g = generators();
        assert!(compose(&g.mu, &g.gamma).unwrap().is_empty());
    }

    #[test]
    fn permutations_compose() {
        for s in permutations(3) {
            for p in permutations(3) {
                let lhs = compose(&perm(&s).unwrap(), &perm(&p).unwrap()).unwrap();
                assert_eq!(lhs, perm(&compose_permutations(&s, &p)).unwrap());
            }
            let inv = inverse_permutation(&s);
            assert_eq!(compose(&perm(&s).unwrap(), &perm(&inv).unwrap()).unwrap(), identity(3));
        }
    }

    #[test]
    fn braiding_cases() {
        assert_eq!(braiding(1, 1), perm(&[2, 1]).unwrap());
        assert_eq!(compose(&braiding(1, 1), &braiding(1, 1)).unwrap(), identity(2));
        assert_eq!(braiding(3, 0), identity(3));
        assert_eq!(shuffle(2, 1), vec![2, 3, 1]);
    }

    #[test]
    fn tensor_bookkeeping() {
        let g = generators();
        assert_eq!(tensor(&identity(1), &identity(1)), identity(2));
        let mt = tensor(&g.mu, &g.tau);
        assert_eq!(mt.arity(), (4, 1));
        let dt = tensor(&one(&named::delta()), &one(&named::theta()));
        let (d, c) = dt.terms().next().unwrap();
        assert_eq!((dt.len(), d.components(), d.degree()), (1, 2, 2));
        assert_eq!(c.clone() * c, int(1));
    }

    #[test]
    fn theta_is_trace_of_phi() {
        assert_eq!(trace(&one(&named::phi())).unwrap(), one(&named::theta()));
    }

    #[test]
    fn snake_and_symmetry() {
        let g = generators();
        let i1 = identity(1);
        let snake = compose(&tensor(&i1, &g.tau), &tensor(&g.gamma, &i1)).unwrap();
        assert_eq!(snake, i1);
        assert_eq!(compose(&g.tau, &braiding(1, 1)).unwrap(), g.tau);
        assert_eq!(compose(&braiding(1, 1), &g.gamma).unwrap(), g.gamma);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(perm(&[1, 1]).is_err());
        assert!(perm(&[0, 1]).is_err());
        assert!(compose(&generators().mu, &identity(3)).is_err());
    }
}
