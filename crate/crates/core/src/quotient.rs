//! The AS/IHX quotient, one (arity, degree, component count) stratum at a time.
//!
//! Diagrams of a stratum are enumerated up to isomorphism by chord addition:
//! deleting an internal edge between two distinct vertices and smoothing its
//! endpoints leaves a diagram with two vertices fewer and at most one extra
//! component, so every diagram is either built from tripods, tadpoles, bare
//! strands and circles alone, or arises from a smaller one by joining two
//! points on edges (or circles) with a new edge.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::canon::{canonical, canonicalize, SignedCanonical};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::sum::DiagramSum;
use crate::wiring::{LegTo, Wiring};

static DEFAULT_CAP: AtomicUsize = AtomicUsize::new(400_000);

/// Largest number of diagram structures any single enumeration step may hold.
pub fn enumeration_cap() -> usize {
    DEFAULT_CAP.load(Ordering::Relaxed)
}

pub fn set_enumeration_cap(cap: usize) {
    DEFAULT_CAP.store(cap, Ordering::Relaxed);
}

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(usize::MAX);

/// Largest vertex count for which a stratum may be built (unbounded by default).
pub fn degree_cap() -> usize {
    DEGREE_CAP.load(Ordering::Relaxed)
}

pub fn set_degree_cap(cap: usize) {
    DEGREE_CAP.store(cap, Ordering::Relaxed);
}

/// The three-term IHX relation at the internal edge containing half-edge `h`.
///
/// With the edge joining `u = (e, a, b)` and `w = (e, c, d)`, the relation is
/// `D(u=(e,a,b), w=(e,c,d)) + D(u=(e,b,c), w=(e,a,d)) + D(u=(e,c,a), w=(e,b,d))`,
/// where each letter stands for the germ of the old half-edge at that slot.
pub fn ihx_relation(d: &Diagram, h: usize) -> Result<DiagramSum> {
    if h >= d.half_edges() {
        return Err(Error::InvalidArgument(format!("no half-edge {h}")));
    }
    let hm = d.mate(h);
    let (Some(u), Some(w)) = (d.vertex_of(h), d.vertex_of(hm)) else {
        return Err(Error::InvalidArgument("IHX edge touches a boundary leg".into()));
    };
    if u == w {
        return Err(Error::InvalidArgument("IHX edge is a loop".into()));
    }
    let su = h - d.slot(u, 0);
    let sw = hm - d.slot(w, 0);
    let a = d.slot(u, (su + 1) % 3);
    let b = d.slot(u, (su + 2) % 3);
    let c = d.slot(w, (sw + 1) % 3);
    let dd = d.slot(w, (sw + 2) % 3);
    let mut out = DiagramSum::zero(d.inputs(), d.outputs());
    for (p, q) in [([a, b], [c, dd]), ([b, c], [a, dd]), ([c, a], [b, dd])] {
        out.add_term(rational::one(), &replace_pair(d, u, w, [h, p[0], p[1]], [hm, q[0], q[1]]));
    }
    Ok(out)
}

/// Removes vertices `u`, `w` and adds two new vertices whose slots take over
/// the germs of the listed old half-edges, in that cyclic order.
fn replace_pair(d: &Diagram, u: usize, w: usize, p: [usize; 3], q: [usize; 3]) -> Diagram {
    let mut wr = Wiring::new();
    let ids = wr.embed(
        d,
        |leg| match leg {
            crate::diagram::Leg::In(k) => LegTo::Input(k),
            crate::diagram::Leg::Out(k) => LegTo::Output(k),
        },
        &[u, w],
    );
    for germs in [p, q] {
        let slots = wr.vertex();
        for (s, old) in slots.into_iter().zip(germs) {
            let c = wr.connector();
            wr.connect(s, c);
            wr.glue(c, ids[old]);
        }
    }
    wr.finish()
}

/// Internal edges joining two distinct vertices, as one half-edge each.
pub fn ihx_edges(d: &Diagram) -> Vec<usize> {
    d.edges()
        .filter(|&(a, b)| matches!((d.vertex_of(a), d.vertex_of(b)), (Some(u), Some(w)) if u != w))
        .map(|(a, _)| a)
        .collect()
}

// ---------------------------------------------------------------------------
// Enumeration

type Key = (usize, usize, usize, usize);

fn structure(d: &Diagram) -> Diagram {
    canonical(d).diagram
}

/// All diagram structures (AS-zero ones included) with the given arities,
/// exactly `vertices` vertices, and between 1 and `kmax` components.
fn generate(m: usize, n: usize, vertices: usize, kmax: usize, cap: usize) -> Result<Arc<Vec<Diagram>>> {
    static MEMO: OnceLock<Mutex<HashMap<Key, Arc<Vec<Diagram>>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let key = (m, n, vertices, kmax);
    if let Some(v) = memo.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let mut seen: HashSet<Diagram> = HashSet::new();
    base(m, n, vertices, kmax, &mut seen);
    if vertices >= 2 {
        let smaller = generate(m, n, vertices - 2, kmax + 1, cap)?;
        for d in smaller.iter() {
            add_chords(d, kmax, &mut seen);
            if seen.len() > cap {
                return Err(Error::CapExceeded(format!(
                    "more than {cap} diagrams with arity ({m},{n}) and {vertices} vertices"
                )));
            }
        }
    }
    let mut all: Vec<Diagram> = seen.into_iter().collect();
    all.sort();
    let all = Arc::new(all);
    memo.lock().unwrap().insert(key, all.clone());
    Ok(all)
}

/// Diagrams in which no edge joins two distinct vertices: tripods and
/// tadpoles on the legs, bare strands between legs, and circles.
fn base(m: usize, n: usize, vertices: usize, kmax: usize, seen: &mut HashSet<Diagram>) {
    let legs = m + n;
    for tripods in 0..=vertices {
        let tadpoles = vertices - tripods;
        let used = 3 * tripods + tadpoles;
        if used > legs || !(legs - used).is_multiple_of(2) {
            continue;
        }
        let pieces = vertices + (legs - used) / 2;
        if pieces > kmax {
            continue;
        }
        // Points: legs, then the open slots of tripods, then of tadpoles.
        let mut mate = vec![u32::MAX; legs + 3 * vertices];
        for t in 0..tadpoles {
            let s = legs + 3 * (tripods + t);
            mate[s + 1] = (s + 2) as u32;
            mate[s + 2] = (s + 1) as u32;
        }
        let mut found = Vec::new();
        match_legs(&mut mate, legs, &mut found);
        for mate in found {
            for circles in 0..=kmax - pieces {
                if pieces + circles == 0 {
                    continue;
                }
                seen.insert(structure(&Diagram::from_mate_unchecked(m, n, circles, mate.clone())));
            }
        }
    }
}

/// Perfect matchings of the unpaired points where every pair has a leg.
fn match_legs(mate: &mut Vec<u32>, legs: usize, out: &mut Vec<Vec<u32>>) {
    let Some(first) = mate.iter().position(|&x| x == u32::MAX) else {
        out.push(mate.clone());
        return;
    };
    for other in first + 1..mate.len() {
        if mate[other] != u32::MAX || (first >= legs && other >= legs) {
            continue;
        }
        mate[first] = other as u32;
        mate[other] = first as u32;
        match_legs(mate, legs, out);
        mate[first] = u32::MAX;
        mate[other] = u32::MAX;
    }
}

#[derive(Clone, Copy)]
enum Site {
    Edge(usize, usize),
    Circle,
}

/// Every way to join two points of `d` by a new edge, with at most `kmax`
/// components afterwards.
fn add_chords(d: &Diagram, kmax: usize, seen: &mut HashSet<Diagram>) {
    let mut sites: Vec<Site> = d.edges().map(|(a, b)| Site::Edge(a, b)).collect();
    let circle_sites = d.circles().min(2);
    sites.extend(std::iter::repeat_n(Site::Circle, circle_sites));
    let base_len = d.half_edges();
    let p = base_len;
    let q = base_len + 3;
    for i in 0..sites.len() {
        for j in i..sites.len() {
            let mut mate: Vec<u32> = d.mates().to_vec();
            mate.resize(base_len + 6, 0);
            let mut circles = d.circles();
            let link = |mate: &mut Vec<u32>, x: usize, y: usize| {
                mate[x] = y as u32;
                mate[y] = x as u32;
            };
            link(&mut mate, p + 2, q + 2);
            match (sites[i], sites[j]) {
                (Site::Edge(x, y), Site::Edge(..)) if i == j => {
                    link(&mut mate, x, p);
                    link(&mut mate, p + 1, q);
                    link(&mut mate, q + 1, y);
                }
                (Site::Edge(x, y), Site::Edge(x2, y2)) => {
                    link(&mut mate, x, p);
                    link(&mut mate, p + 1, y);
                    link(&mut mate, x2, q);
                    link(&mut mate, q + 1, y2);
                }
                (Site::Edge(x, y), Site::Circle) => {
                    link(&mut mate, x, p);
                    link(&mut mate, p + 1, y);
                    link(&mut mate, q, q + 1);
                    circles -= 1;
                }
                (Site::Circle, Site::Circle) => {
                    // The same circle twice, and (if there are two) two circles.
                    let mut theta = mate.clone();
                    link(&mut theta, p, q);
                    link(&mut theta, p + 1, q + 1);
                    insert_if(d, theta, circles - 1, kmax, seen);
                    if d.circles() >= 2 && i != j {
                        link(&mut mate, p, p + 1);
                        link(&mut mate, q, q + 1);
                        circles -= 2;
                    } else {
                        continue;
                    }
                }
                (Site::Circle, Site::Edge(..)) => unreachable!("circles are listed last"),
            }
            insert_if(d, mate, circles, kmax, seen);
        }
    }
}

fn insert_if(d: &Diagram, mate: Vec<u32>, circles: usize, kmax: usize, seen: &mut HashSet<Diagram>) {
    let nd = Diagram::from_mate_unchecked(d.inputs(), d.outputs(), circles, mate);
    if nd.components() <= kmax {
        seen.insert(structure(&nd));
    }
}

// ---------------------------------------------------------------------------
// Linear algebra

type Row = Vec<(u32, Rational)>;

/// The quotient of one exact stratum: the nonzero canonical diagrams as
/// columns, and an echelon form of all IHX relations in which every pivot is
/// the largest column of its row.
#[derive(Debug)]
pub struct Stratum {
    pub inputs: usize,
    pub outputs: usize,
    pub degree: usize,
    pub components: usize,
    columns: Vec<Diagram>,
    index: HashMap<Diagram, u32>,
    pivots: HashMap<u32, Row>,
    free: Vec<u32>,
}

impl Stratum {
    fn build(m: usize, n: usize, degree: usize, components: usize, cap: usize) -> Result<Stratum> {
        if components == 0 {
            return Err(Error::InvalidArgument("strata have at least one component".into()));
        }
        let all = generate(m, n, degree, components, cap)?;
        let members: Vec<&Diagram> = all.iter().filter(|d| d.components() == components).collect();
        let mut columns: Vec<Diagram> = members
            .iter()
            .filter_map(|d| match canonicalize(d) {
                SignedCanonical::Form { diagram, .. } => Some(diagram),
                SignedCanonical::Zero => None,
            })
            .collect();
        columns.sort();
        columns.dedup();
        let index: HashMap<Diagram, u32> = columns.iter().enumerate().map(|(i, d)| (d.clone(), i as u32)).collect();
        let mut st = Stratum { inputs: m, outputs: n, degree, components, columns, index, pivots: HashMap::new(), free: Vec::new() };
        for d in members {
            for h in ihx_edges(d) {
                let rel = ihx_relation(d, h).expect("edge joins two vertices");
                let row = st.row_of(&rel).expect("relation stays in its stratum");
                st.insert(row);
            }
        }
        st.free = (0..st.columns.len() as u32).filter(|c| !st.pivots.contains_key(c)).collect();
        Ok(st)
    }

    fn row_of(&self, s: &DiagramSum) -> Result<Row> {
        let mut row = Vec::with_capacity(s.len());
        for (d, c) in s.terms() {
            let Some(&i) = self.index.get(d) else {
                return Err(Error::StratumMismatch(format!(
                    "diagram with {} vertices and {} components is not in the ({},{}) stratum of degree {} with {} components",
                    d.degree(),
                    d.components(),
                    self.inputs,
                    self.outputs,
                    self.degree,
                    self.components
                )));
            };
            row.push((i, c.clone()));
        }
        row.sort_by_key(|e| e.0);
        Ok(row)
    }

    /// Eliminates pivot columns from the top down; what remains involves free
    /// columns only.
    fn reduce_row(&self, row: Row) -> Row {
        let mut work: BTreeMap<u32, Rational> = row.into_iter().collect();
        let mut out = Vec::new();
        while let Some((c, x)) = work.pop_last() {
            match self.pivots.get(&c) {
                Some(p) => {
                    for (k, y) in p.iter().take(p.len() - 1) {
                        let e = work.entry(*k).or_insert_with(Rational::zero);
                        *e -= &x * y;
                        if e.is_zero() {
                            work.remove(k);
                        }
                    }
                }
                None => out.push((c, x)),
            }
        }
        out.reverse();
        out
    }

    fn insert(&mut self, row: Row) {
        let mut r = self.reduce_row(row);
        let Some((pc, px)) = r.last().cloned() else { return };
        let inv = px.recip();
        for e in r.iter_mut() {
            e.1 *= &inv;
        }
        self.pivots.insert(pc, r);
    }

    /// Representatives of a basis of the quotient, smallest first.
    pub fn basis(&self) -> Vec<&Diagram> {
        self.free.iter().map(|&c| &self.columns[c as usize]).collect()
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Every nonzero canonical diagram of the stratum, before imposing IHX.
    pub fn diagrams(&self) -> &[Diagram] {
        &self.columns
    }

    /// Number of nonzero canonical diagrams before imposing IHX.
    pub fn span_size(&self) -> usize {
        self.columns.len()
    }

    /// Coordinates of `s` on [`Stratum::basis`].
    pub fn coordinates(&self, s: &DiagramSum) -> Result<Vec<Rational>> {
        let red = self.reduce_row(self.row_of(s)?);
        let mut out = vec![Rational::zero(); self.free.len()];
        for (c, x) in red {
            let pos = self.free.binary_search(&c).expect("reduced rows use free columns");
            out[pos] = x;
        }
        Ok(out)
    }

    /// The reduced representative of `s` as a sum of basis diagrams.
    pub fn reduce_sum(&self, s: &DiagramSum) -> Result<DiagramSum> {
        let red = self.reduce_row(self.row_of(s)?);
        let mut out = DiagramSum::zero(self.inputs, self.outputs);
        for (c, x) in red {
            out.add_canonical(x, self.columns[c as usize].clone());
        }
        Ok(out)
    }
}

/// The stratum of `(m, n)` diagrams with exactly `degree` vertices and
/// exactly `components` components, built once per process.
pub fn stratum(m: usize, n: usize, degree: usize, components: usize) -> Result<Arc<Stratum>> {
    stratum_capped(m, n, degree, components, enumeration_cap())
}

pub fn stratum_capped(m: usize, n: usize, degree: usize, components: usize, cap: usize) -> Result<Arc<Stratum>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Stratum>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if degree > degree_cap() {
        return Err(Error::CapExceeded(format!("degree {degree} is above the cap of {}", degree_cap())));
    }
    let key = (m, n, degree, components);
    if let Some(s) = cache.lock().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let s = Arc::new(Stratum::build(m, n, degree, components, cap)?);
    cache.lock().unwrap().insert(key, s.clone());
    Ok(s)
}

/// A basis of `hom(m, n)` in one vertex degree, over all component counts up
/// to `kmax`.
#[derive(Debug, Clone)]
pub struct QuotientBasis {
    pub inputs: usize,
    pub outputs: usize,
    pub degree: usize,
    pub kmax: usize,
    strata: Vec<Arc<Stratum>>,
}

pub fn quotient_basis(m: usize, n: usize, degree: usize, kmax: usize) -> Result<QuotientBasis> {
    quotient_basis_capped(m, n, degree, kmax, enumeration_cap())
}

pub fn quotient_basis_capped(m: usize, n: usize, degree: usize, kmax: usize, cap: usize) -> Result<QuotientBasis> {
    if !(m + n + 3 * degree).is_multiple_of(2) {
        return Ok(QuotientBasis { inputs: m, outputs: n, degree, kmax, strata: Vec::new() });
    }
    let strata = (1..=kmax).map(|k| stratum_capped(m, n, degree, k, cap)).collect::<Result<_>>()?;
    Ok(QuotientBasis { inputs: m, outputs: n, degree, kmax, strata })
}

impl QuotientBasis {
    pub fn basis(&self) -> Vec<&Diagram> {
        self.strata.iter().flat_map(|s| s.basis()).collect()
    }

    pub fn dim(&self) -> usize {
        self.strata.iter().map(|s| s.dim()).sum()
    }

    /// Coordinates of the class of `s` on [`QuotientBasis::basis`].
    pub fn reduce(&self, s: &DiagramSum) -> Result<Vec<Rational>> {
        if s.arity() != (self.inputs, self.outputs) {
            return Err(Error::StratumMismatch(format!(
                "sum has arity {:?}, basis has ({}, {})",
                s.arity(),
                self.inputs,
                self.outputs
            )));
        }
        let parts = s.strata();
        for &(deg, comps) in parts.keys() {
            if deg != self.degree || comps == 0 || comps > self.kmax {
                return Err(Error::StratumMismatch(format!(
                    "term with {deg} vertices and {comps} components outside degree {} and at most {} components",
                    self.degree, self.kmax
                )));
            }
        }
        let mut out = Vec::with_capacity(self.dim());
        for st in &self.strata {
            match parts.get(&(self.degree, st.components)) {
                Some(part) => out.extend(st.coordinates(part)?),
                None => out.extend(std::iter::repeat_n(Rational::zero(), st.dim())),
            }
        }
        Ok(out)
    }
}

/// Reduces every stratum of `s` to its basis representative.
pub fn reduce(s: &DiagramSum) -> Result<DiagramSum> {
    let mut out = DiagramSum::zero(s.inputs(), s.outputs());
    for ((deg, comps), part) in s.strata() {
        if comps == 0 {
            // The empty diagram spans its own stratum.
            out.add_sum(&part, &Rational::one());
            continue;
        }
        let st = stratum(s.inputs(), s.outputs(), deg, comps)?;
        out.add_sum(&st.reduce_sum(&part)?, &Rational::one());
    }
    Ok(out)
}

/// Whether `s` vanishes modulo AS and IHX.
pub fn is_zero(s: &DiagramSum) -> Result<bool> {
    Ok(reduce(s)?.is_empty())
}

/// `a == b` modulo AS and IHX.
pub fn equivalent(a: &DiagramSum, b: &DiagramSum) -> Result<bool> {
    is_zero(&(a - b))
}
