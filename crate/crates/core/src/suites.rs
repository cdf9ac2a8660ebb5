//! Built-in verification suites, one per area.

use num_traits::{One, Zero};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::eval::{self, Polylinear};
use crate::lambda::{self, LambdaElement};
use crate::lie::{self, MetricLie};
use crate::prop::{self, named};
use crate::quotient;
use crate::rational::{frac, int, Rational};
use crate::report::{Check, Report};
use crate::rw::{self, RwTable};
use crate::sum::DiagramSum;
use crate::symfunc::{self, SymFunc};

pub const SUITES: &[&str] = &["prop", "lie", "metric", "lambda", "weights", "westbury"];

pub fn run(name: &str) -> Result<Vec<Report>> {
    Ok(match name {
        "prop" => vec![prop_suite()],
        "lie" => vec![lie_suite()],
        "metric" => vec![metric_suite()],
        "lambda" => vec![lambda_suite()],
        "weights" => vec![weights_suite()],
        "westbury" => vec![westbury_suite()],
        "all" => SUITES.iter().map(|s| run(s).map(|mut r| r.remove(0))).collect::<Result<_>>()?,
        _ => return Err(Error::InvalidArgument(format!("unknown suite {name:?}"))),
    })
}

fn one(d: &Diagram) -> DiagramSum {
    DiagramSum::from_diagram(d)
}

fn eq_check(name: &str, a: Result<DiagramSum>, b: Result<DiagramSum>) -> Check {
    Check::from_result(name, a.and_then(|a| Ok(a == b?)))
}

/// A pool of small morphisms for interchange and naturality checks.
fn pool() -> Vec<DiagramSum> {
    let g = prop::generators();
    let mut p = vec![g.mu, g.tau, g.gamma, prop::identity(1), prop::braiding(1, 1), one(&named::phi())];
    p.push(one(&named::tripod()));
    p.push(one(&named::delta()));
    p
}

pub fn prop_suite() -> Report {
    let mut r = Report::new("prop");
    let g = prop::generators();
    r.push(eq_check("tau o gamma = delta", prop::compose(&g.tau, &g.gamma), Ok(one(&named::delta()))));
    r.push(Check::from_result("mu o gamma = 0", prop::compose(&g.mu, &g.gamma).map(|s| s.is_empty())));

    let mut hom = true;
    for n in 1..=4 {
        for s in prop::permutations(n) {
            for p in prop::permutations(n) {
                let lhs = prop::compose(&prop::perm(&s).unwrap(), &prop::perm(&p).unwrap()).unwrap();
                hom &= lhs == prop::perm(&prop::compose_permutations(&s, &p)).unwrap();
            }
            let inv = prop::inverse_permutation(&s);
            hom &= prop::compose(&prop::perm(&s).unwrap(), &prop::perm(&inv).unwrap()).unwrap() == prop::identity(n);
        }
    }
    r.push(Check::new("perm is a homomorphism of S_1..S_4", hom, ""));

    let mut blocks = true;
    for s in prop::permutations(2) {
        for p in prop::permutations(2) {
            let block: Vec<usize> = s.iter().copied().chain(p.iter().map(|k| k + 2)).collect();
            blocks &= prop::tensor(&prop::perm(&s).unwrap(), &prop::perm(&p).unwrap()) == prop::perm(&block).unwrap();
        }
    }
    r.push(Check::new("tensor of permutations is the block permutation", blocks, ""));

    let mut braid = true;
    for n in 0..=3 {
        for m in 0..=3 {
            braid &= prop::compose(&prop::braiding(m, n), &prop::braiding(n, m)).unwrap() == prop::identity(n + m);
        }
        braid &= prop::braiding(n, 0) == prop::identity(n);
    }
    braid &= prop::braiding(1, 1) == prop::perm(&[2, 1]).unwrap();
    r.push(Check::new("braiding is involutive", braid, ""));

    let pool = pool();
    let mut inter = 0usize;
    let mut ok = true;
    for f in &pool {
        for h in &pool {
            if h.outputs() != f.inputs() {
                continue;
            }
            for gg in &pool {
                for k in &pool {
                    if k.outputs() != gg.inputs() {
                        continue;
                    }
                    let lhs = prop::compose(&prop::tensor(f, gg), &prop::tensor(h, k)).unwrap();
                    let rhs = prop::tensor(&prop::compose(f, h).unwrap(), &prop::compose(gg, k).unwrap());
                    ok &= lhs == rhs;
                    inter += 1;
                }
            }
        }
    }
    r.push(Check::new("interchange law", ok, format!("{inter} cases")));

    let mut natural = true;
    for f in &pool {
        for gg in &pool {
            let lhs = prop::compose(&prop::braiding(f.outputs(), gg.outputs()), &prop::tensor(f, gg)).unwrap();
            let rhs = prop::compose(&prop::tensor(gg, f), &prop::braiding(f.inputs(), gg.inputs())).unwrap();
            natural &= lhs == rhs;
        }
    }
    r.push(Check::new("braiding is natural", natural, ""));

    let dt = prop::tensor(&one(&named::delta()), &one(&named::theta()));
    let comps = dt.terms().all(|(d, _)| d.components() == 2);
    r.push(Check::new("components add under tensor", comps, ""));
    r
}

pub fn lie_suite() -> Report {
    let mut r = Report::new("lie");
    let g = prop::generators();
    let i1 = prop::identity(1);
    let run = || -> Result<(DiagramSum, DiagramSum)> {
        let mut cyc = prop::identity(3);
        cyc = &cyc + &prop::perm(&[2, 3, 1])?;
        cyc = &cyc + &prop::perm(&[3, 1, 2])?;
        let jac = prop::compose(&prop::compose(&g.mu, &prop::tensor(&g.mu, &i1))?, &cyc)?;
        let anti = prop::compose(&g.mu, &(&prop::identity(2) + &prop::perm(&[2, 1])?))?;
        Ok((jac, anti))
    };
    match run() {
        Ok((jac, anti)) => {
            r.push(Check::from_result("Jacobi identity", quotient::is_zero(&jac)));
            r.push(Check::from_result("anticommutativity", quotient::is_zero(&anti)));
            let basis = quotient::quotient_basis(3, 1, 2, 1);
            r.push(Check::from_result(
                "Jacobi has zero coordinates",
                basis.and_then(|b| Ok(b.reduce(&jac)?.iter().all(Zero::is_zero))),
            ));
        }
        Err(e) => r.push(Check::new("build Lie identities", false, e.to_string())),
    }
    r
}

pub fn metric_suite() -> Report {
    let mut r = Report::new("metric");
    let g = prop::generators();
    let i1 = prop::identity(1);
    r.push(eq_check("tau is symmetric", prop::compose(&g.tau, &prop::braiding(1, 1)), Ok(g.tau.clone())));
    r.push(eq_check("gamma is symmetric", prop::compose(&prop::braiding(1, 1), &g.gamma), Ok(g.gamma.clone())));
    r.push(eq_check(
        "snake (left)",
        prop::compose(&prop::tensor(&i1, &g.tau), &prop::tensor(&g.gamma, &i1)),
        Ok(i1.clone()),
    ));
    r.push(eq_check(
        "snake (right)",
        prop::compose(&prop::tensor(&g.tau, &i1), &prop::tensor(&i1, &g.gamma)),
        Ok(i1.clone()),
    ));
    r.push(eq_check(
        "tau is invariant",
        prop::compose(&g.tau, &prop::tensor(&g.mu, &i1)),
        prop::compose(&g.tau, &prop::tensor(&i1, &g.mu)),
    ));
    r
}

fn lambda_eq(name: &str, a: Result<LambdaElement>, b: Result<LambdaElement>) -> Check {
    Check::from_result(name, a.and_then(|a| Ok(a.equals(&b?))))
}

pub fn lambda_suite() -> Report {
    let mut r = Report::new("lambda");
    let t = lambda::t();
    r.push(lambda_eq("x1 = 2t", lambda::x(1), Ok(t.scale(&int(2)))));
    r.push(lambda_eq("x2 = t^2", lambda::x(2), lambda::lambda_mul(&t, &t)));
    r.push(lambda_eq("1 is a unit", lambda::lambda_mul(&lambda::one(), &t), Ok(t.clone())));
    r.push(lambda_eq(
        "t x1 = x1 t",
        lambda::x(1).and_then(|x1| lambda::lambda_mul(&t, &x1)),
        lambda::x(1).and_then(|x1| lambda::lambda_mul(&x1, &t)),
    ));
    r.push(Check::from_result(
        "project_skew is idempotent",
        lambda::project_skew(t.sum()).map(|p| p.equals(&t)),
    ));
    let theta = named::theta();
    r.push(Check::from_result(
        "inserting t into either vertex of theta agrees",
        (|| {
            let a = lambda::insert(t.sum(), &theta, 0)?;
            let b = lambda::insert(t.sum(), &theta, 1)?;
            quotient::equivalent(&a, &b)
        })(),
    ));
    r.push(Check::new("chi(1) = 2 s1", symfunc::chi(1) == SymFunc::sigma(1).scale(&int(2)), ""));
    r.push(Check::new("chi(2) = s1^2", symfunc::chi(2) == SymFunc::sigma(1).pow(2), ""));
    let mut c3 = SymFunc::sigma(1).pow(3);
    c3 = &c3 - &(&SymFunc::sigma(1) * &SymFunc::sigma(2)).scale(&frac(3, 2));
    c3 = &c3 - &SymFunc::sigma(3).scale(&frac(3, 2));
    r.push(Check::new("chi(3)", symfunc::chi(3) == c3, symfunc::chi(3).to_string()));
    let w = symfunc::omega();
    r.push(Check::new("omega has degree 3", w.homogeneous_degree() == Some(3), w.to_string()));
    let chis = symfunc::chi_sequence(8);
    let member = chis.iter().all(|c| c.lambda_tilde_decomposition().is_some());
    r.push(Check::new("chi(0..=8) lie in the subring", member, ""));
    let graded = chis.iter().enumerate().skip(1).all(|(n, c)| c.homogeneous_degree() == Some(n as u32));
    r.push(Check::new("deg chi(n) = n", graded, ""));
    r
}

fn character(name: &str, l: &MetricLie, x: &Result<LambdaElement>) -> Result<Rational> {
    match x {
        Ok(x) => eval::vogel_character(x, l),
        Err(e) => Err(Error::InvalidArgument(format!("{name}: {e}"))),
    }
}

pub fn weights_suite() -> Report {
    let mut r = Report::new("weights");
    for l in lie::catalog() {
        r.push(Check::from_result(format!("{} validates", l.name()), l.validate().map(|_| true)));
        let d = eval::dim_char(&l);
        r.push(Check::new(
            format!("{} circle = superdimension", l.name()),
            d == int(l.superdimension()),
            crate::rational::format(&d),
        ));
    }
    let killing = lie::sl2_killing();
    let tau = eval::evaluate(&prop::generators().tau, &killing);
    let form_ok = (0..3).all(|i| (0..3).all(|j| tau.get(&[i, j], &[]) == &killing.form()[i][j]));
    r.push(Check::new("tau evaluates to the form", form_ok, ""));

    let elements: Vec<(&str, Result<LambdaElement>)> = vec![
        ("1", Ok(lambda::one())),
        ("t", Ok(lambda::t())),
        ("x1", lambda::x(1)),
        ("x2", lambda::x(2)),
    ];
    for l in [lie::sl2_killing(), lie::sl3_trace()] {
        let mut ok = true;
        let mut detail = String::new();
        for (an, a) in &elements {
            for (bn, b) in &elements {
                let res = (|| {
                    let (Ok(ae), Ok(be)) = (a, b) else { return Err(Error::InvalidArgument("element".into())) };
                    let prod = lambda::lambda_mul(ae, be)?;
                    Ok(eval::vogel_character(&prod, &l)? == character(an, &l, a)? * character(bn, &l, b)?)
                })();
                if !matches!(res, Ok(true)) {
                    ok = false;
                    detail = format!("{an}·{bn}");
                }
            }
        }
        r.push(Check::new(format!("character is multiplicative on {}", l.name()), ok, detail));
    }
    r.push(Check::from_result(
        "character of t on sl2-killing is 1/2",
        eval::vogel_character(&lambda::t(), &killing).map(|c| c == frac(1, 2)),
    ));
    r.push(Check::from_result(
        "rescaling the form by 2 halves the character of t",
        killing
            .rescale(&int(2))
            .and_then(|k2| Ok(eval::vogel_character(&lambda::t(), &k2)? * int(2) == eval::vogel_character(&lambda::t(), &killing)?)),
    ));
    r.push(Check::from_result(
        "adjoint Casimir is 1 for the Killing form",
        eval::casimir_adjoint_spectrum(&killing).map(|s| s.eigenvalues == vec![(Rational::one(), 3)]),
    ));
    r.push(Check::from_result(
        "one nonzero Casimir eigenvalue on S^2 of sl2",
        eval::casimir_s2_spectrum(&killing).map(|s| s.nonzero().len() == 1),
    ));
    let jacobi: Polylinear = "(x1x2)x3 + (x2x3)x1 + (x3x1)x2".parse().expect("word parses");
    let anti: Polylinear = "x1x2 + x2x1".parse().expect("word parses");
    for l in lie::catalog() {
        let b = eval::bracket_tensor(&l);
        let ok = [&jacobi, &anti]
            .iter()
            .all(|w| eval::eval_polylinear(w, &b, l.parity()).map(|t| t.is_zero()).unwrap_or(false));
        r.push(Check::new(format!("bracket identities on {}", l.name()), ok, ""));
    }
    let mut ihx_ok = true;
    let samples = [named::theta(), named::phi(), named::dumbbell(), lambda::diagrams::t(), lambda::diagrams::x(1)];
    for d in samples {
        for h in quotient::ihx_edges(&d) {
            let rel = quotient::ihx_relation(&d, h).expect("internal edge");
            for l in lie::catalog() {
                ihx_ok &= eval::evaluate(&rel, &l).is_zero();
            }
        }
    }
    r.push(Check::new("IHX relations evaluate to zero", ihx_ok, ""));
    r
}

pub fn westbury_suite() -> Report {
    let w = rw::verify_westbury(&RwTable::k3());
    let mut r = Report::new("westbury");
    r.push(Check::new("theta_t = -12z", w.theta_t == "-12z", w.theta_t.clone()));
    r.checks.extend(w.relations);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suites_pass() {
        for name in ["prop", "lie", "metric", "westbury"] {
            for rep in run(name).unwrap() {
                assert!(rep.passed(), "{rep}");
            }
        }
        assert!(run("nope").is_err());
    }
}
