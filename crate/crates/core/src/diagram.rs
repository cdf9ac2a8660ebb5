//! Jacobi diagrams: trivalent graphs with labelled boundary legs and a cyclic
//! order at every vertex.
//!
//! A diagram with `m` inputs, `n` outputs and `V` vertices has `m + n + 3V`
//! half-edges numbered as follows: `0..m` are the legs `in:1..in:m`,
//! `m..m+n` are `out:1..out:n`, and vertex `v` owns the three consecutive
//! half-edges `m + n + 3v + {0,1,2}` listed in its cyclic order. Edges are a
//! fixed-point-free involution (`mate`) on the half-edges. Closed components
//! without vertices are kept as a separate circle count.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    inputs: usize,
    outputs: usize,
    circles: usize,
    mate: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leg {
    In(usize),
    Out(usize),
}

/// Where a half-edge lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Leg(Leg),
    Slot { vertex: usize, slot: usize },
}

impl Diagram {
    /// Builds a diagram from the raw involution, checking its shape.
    pub fn from_mate(inputs: usize, outputs: usize, circles: usize, mate: Vec<u32>) -> Result<Self> {
        let legs = inputs + outputs;
        let mut errs = Vec::new();
        if mate.len() < legs || !(mate.len() - legs).is_multiple_of(3) {
            errs.push(format!("half-edge count {} does not fit {legs} legs plus triples", mate.len()));
        }
        for (h, &m) in mate.iter().enumerate() {
            let m = m as usize;
            if m >= mate.len() {
                errs.push(format!("half-edge {h} paired with missing {m}"));
            } else if m == h {
                errs.push(format!("half-edge {h} paired with itself"));
            } else if mate[m] as usize != h {
                errs.push(format!("pairing is not symmetric at {h}"));
            }
        }
        if errs.is_empty() {
            Ok(Diagram { inputs, outputs, circles, mate })
        } else {
            Err(Error::InvalidDiagram(errs))
        }
    }

    pub(crate) fn from_mate_unchecked(inputs: usize, outputs: usize, circles: usize, mate: Vec<u32>) -> Self {
        debug_assert!(Diagram::from_mate(inputs, outputs, circles, mate.clone()).is_ok());
        Diagram { inputs, outputs, circles, mate }
    }

    /// The diagram consisting of `k` free circles.
    pub fn circles_only(k: usize) -> Self {
        Diagram { inputs: 0, outputs: 0, circles: k, mate: Vec::new() }
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

    pub fn circles(&self) -> usize {
        self.circles
    }

    pub fn legs(&self) -> usize {
        self.inputs + self.outputs
    }

    pub fn half_edges(&self) -> usize {
        self.mate.len()
    }

    pub fn mate(&self, h: usize) -> usize {
        self.mate[h] as usize
    }

    pub fn mates(&self) -> &[u32] {
        &self.mate
    }

    pub fn vertex_count(&self) -> usize {
        (self.mate.len() - self.legs()) / 3
    }

    /// Number of trivalent vertices, the grading datum.
    pub fn degree(&self) -> usize {
        self.vertex_count()
    }

    /// Half-edge index of `slot` at `vertex`.
    pub fn slot(&self, vertex: usize, slot: usize) -> usize {
        self.legs() + 3 * vertex + slot
    }

    pub fn leg_index(&self, leg: Leg) -> usize {
        match leg {
            Leg::In(k) => k - 1,
            Leg::Out(k) => self.inputs + k - 1,
        }
    }

    pub fn end(&self, h: usize) -> End {
        if h < self.inputs {
            End::Leg(Leg::In(h + 1))
        } else if h < self.legs() {
            End::Leg(Leg::Out(h - self.inputs + 1))
        } else {
            let i = h - self.legs();
            End::Slot { vertex: i / 3, slot: i % 3 }
        }
    }

    pub fn vertex_of(&self, h: usize) -> Option<usize> {
        match self.end(h) {
            End::Slot { vertex, .. } => Some(vertex),
            End::Leg(_) => None,
        }
    }

    /// Internal edges as `(h, mate h)` with `h < mate h`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.mate.len()).filter_map(move |h| {
            let m = self.mate(h);
            (h < m).then_some((h, m))
        })
    }

    /// Reverses the cyclic order at `vertex` (one AS flip).
    pub fn flip_vertex(&self, vertex: usize) -> Diagram {
        let mut perm: Vec<usize> = (0..self.mate.len()).collect();
        let a = self.slot(vertex, 1);
        let b = self.slot(vertex, 2);
        perm.swap(a, b);
        self.relabel(&perm)
    }

    /// Applies a half-edge relabelling `h -> perm[h]`. Legs must be fixed and
    /// vertex triples must map onto vertex triples.
    pub(crate) fn relabel(&self, perm: &[usize]) -> Diagram {
        let mut mate = vec![0u32; self.mate.len()];
        for h in 0..self.mate.len() {
            mate[perm[h]] = perm[self.mate(h)] as u32;
        }
        Diagram { mate, ..self.clone() }
    }

    /// Connected components, counting free circles.
    pub fn components(&self) -> usize {
        self.component_labels().1 + self.circles
    }

    /// Component index of every half-edge and the number of components that
    /// carry at least one half-edge.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let h_count = self.mate.len();
        let mut parent: Vec<usize> = (0..h_count).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra.max(rb)] = ra.min(rb);
            }
        };
        for h in 0..h_count {
            union(&mut parent, h, self.mate(h));
        }
        for v in 0..self.vertex_count() {
            let s = self.slot(v, 0);
            union(&mut parent, s, s + 1);
            union(&mut parent, s, s + 2);
        }
        let mut ids = HashMap::new();
        let mut labels = vec![0; h_count];
        for h in 0..h_count {
            let r = find(&mut parent, h);
            let next = ids.len();
            labels[h] = *ids.entry(r).or_insert(next);
        }
        (labels, ids.len())
    }

    /// Splits into connected pieces (legs keep their global labels, so each
    /// piece is returned as a list of half-edges of `self`). Circles are not
    /// included.
    pub fn component_half_edges(&self) -> Vec<Vec<usize>> {
        let (labels, count) = self.component_labels();
        let mut out = vec![Vec::new(); count];
        for (h, &c) in labels.iter().enumerate() {
            out[c].push(h);
        }
        out
    }

    /// Extracts a closed connected component (given as its half-edges) as a
    /// standalone diagram. Panics if the component touches a leg.
    pub fn closed_component(&self, half_edges: &[usize]) -> Diagram {
        let vertices: Vec<usize> = {
            let mut vs: Vec<usize> = half_edges
                .iter()
                .map(|&h| self.vertex_of(h).expect("closed component has no legs"))
                .collect();
            vs.sort_unstable();
            vs.dedup();
            vs
        };
        let mut new_of = HashMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            for s in 0..3 {
                new_of.insert(self.slot(v, s), 3 * i + s);
            }
        }
        let mut mate = vec![0u32; 3 * vertices.len()];
        for (&old, &new) in &new_of {
            mate[new] = new_of[&self.mate(old)] as u32;
        }
        Diagram::from_mate_unchecked(0, 0, 0, mate)
    }

    pub fn with_circles(&self, circles: usize) -> Diagram {
        Diagram { circles, ..self.clone() }
    }

    fn half_edge_name(&self, h: usize) -> String {
        match self.end(h) {
            End::Leg(Leg::In(k)) => format!("in:{k}"),
            End::Leg(Leg::Out(k)) => format!("out:{k}"),
            End::Slot { .. } => format!("h{}", h - self.legs()),
        }
    }

    /// The JSON form. Internal half-edges are named `h0, h1, ...` in vertex
    /// order; edges are listed sorted, so canonical diagrams serialise
    /// byte-stably.
    pub fn to_raw(&self) -> RawDiagram {
        let vertices = (0..self.vertex_count())
            .map(|v| std::array::from_fn(|s| self.half_edge_name(self.slot(v, s))))
            .collect();
        let edges = self
            .edges()
            .map(|(a, b)| [self.half_edge_name(a), self.half_edge_name(b)])
            .collect();
        RawDiagram {
            inputs: self.inputs,
            outputs: self.outputs,
            circles: self.circles,
            vertices,
            edges,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("diagram serialises")
    }
}

/// Parses a boundary tag `in:k` / `out:k` against the declared arities.
fn parse_leg(id: &str, inputs: usize, outputs: usize) -> Option<std::result::Result<Leg, String>> {
    let (kind, k) = id.split_once(':')?;
    let bound = match kind {
        "in" => inputs,
        "out" => outputs,
        _ => return None,
    };
    let k: usize = match k.parse() {
        Ok(k) => k,
        Err(_) => return Some(Err(format!("malformed boundary tag {id:?}"))),
    };
    if k == 0 || k > bound {
        return Some(Err(format!("boundary tag {id:?} out of range")));
    }
    Some(Ok(if kind == "in" { Leg::In(k) } else { Leg::Out(k) }))
}

/// The interchange format for diagrams.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDiagram {
    pub inputs: usize,
    pub outputs: usize,
    #[serde(default)]
    pub circles: usize,
    #[serde(default)]
    pub vertices: Vec<[String; 3]>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
}

impl RawDiagram {
    /// Structural validation. Every violation found is reported.
    pub fn validate(&self) -> Result<Diagram> {
        let (m, n) = (self.inputs, self.outputs);
        let legs = m + n;
        let mut errs = Vec::new();
        let mut index: HashMap<&str, usize> = HashMap::new();

        let mut next = legs;
        for (v, triple) in self.vertices.iter().enumerate() {
            for id in triple {
                if let Some(leg) = parse_leg(id, m, n) {
                    match leg {
                        Ok(_) => errs.push(format!("vertex {v} contains boundary leg {id}")),
                        Err(e) => errs.push(e),
                    }
                    next += 1;
                    continue;
                }
                if index.insert(id.as_str(), next).is_some() {
                    errs.push(format!("half-edge {id} appears in more than one vertex slot"));
                }
                next += 1;
            }
        }
        let total = next;
        let mut mate = vec![u32::MAX; total];
        let resolve = |id: &str, errs: &mut Vec<String>| -> Option<usize> {
            match parse_leg(id, m, n) {
                Some(Ok(Leg::In(k))) => Some(k - 1),
                Some(Ok(Leg::Out(k))) => Some(m + k - 1),
                Some(Err(e)) => {
                    errs.push(e);
                    None
                }
                None => match index.get(id) {
                    Some(&h) => Some(h),
                    None => {
                        errs.push(format!("dangling half-edge {id}: not in any vertex"));
                        None
                    }
                },
            }
        };
        let mut seen = HashSet::new();
        for [a, b] in &self.edges {
            if a == b {
                errs.push(format!("half-edge {a} paired with itself"));
                continue;
            }
            let (ha, hb) = (resolve(a, &mut errs), resolve(b, &mut errs));
            for id in [a, b] {
                if !seen.insert(id.clone()) {
                    errs.push(format!("half-edge {id} appears in more than one edge"));
                }
            }
            if let (Some(ha), Some(hb)) = (ha, hb) {
                mate[ha] = hb as u32;
                mate[hb] = ha as u32;
            }
        }
        for h in 0..legs {
            if mate[h] == u32::MAX {
                let name = if h < m { format!("in:{}", h + 1) } else { format!("out:{}", h - m + 1) };
                errs.push(format!("unmatched boundary leg {name}"));
            }
        }
        let names: BTreeMap<usize, &str> = index.iter().map(|(k, &v)| (v, *k)).collect();
        for (h, name) in names {
            if mate[h] == u32::MAX {
                errs.push(format!("dangling half-edge {name}: not in any edge"));
            }
        }
        if errs.is_empty() {
            Diagram::from_mate(m, n, self.circles, mate)
        } else {
            Err(Error::InvalidDiagram(errs))
        }
    }
}

impl std::str::FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let raw: RawDiagram = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        raw.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(json: &str) -> RawDiagram {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn mu_encoding_is_accepted() {
        let d = raw(r#"{"inputs":2,"outputs":1,"vertices":[["a","b","c"]],
            "edges":[["in:1","a"],["in:2","b"],["out:1","c"]]}"#)
        .validate()
        .unwrap();
        assert_eq!(d.degree(), 1);
        assert_eq!(d.components(), 1);
    }

    #[test]
    fn circle_as_internal_edge_is_rejected() {
        let err = raw(r#"{"inputs":0,"outputs":0,"edges":[["a","b"]]}"#).validate().unwrap_err();
        assert!(err.to_string().contains("dangling"));
        let d = raw(r#"{"inputs":0,"outputs":0,"circles":1}"#).validate().unwrap();
        assert_eq!((d.degree(), d.components()), (0, 1));
    }

    #[test]
    fn violations_are_reported() {
        let err = raw(r#"{"inputs":1,"outputs":0}"#).validate().unwrap_err();
        assert!(err.to_string().contains("unmatched boundary leg in:1"));
        let err = raw(r#"{"inputs":1,"outputs":1,"vertices":[["in:1","a","b"]],
            "edges":[["a","b"],["in:1","out:1"]]}"#)
        .validate()
        .unwrap_err();
        assert!(err.to_string().contains("contains boundary leg"));
        let err = raw(r#"{"inputs":2,"outputs":0,"edges":[["in:1","in:2"],["in:2","in:1"]]}"#)
            .validate()
            .unwrap_err();
        assert!(err.to_string().contains("more than one edge"));
        let err = raw(r#"{"inputs":1,"outputs":0,"edges":[["in:1","in:3"]]}"#).validate().unwrap_err();
        assert!(err.to_string().contains("out of range"));
    }

    #[test]
    fn json_round_trip() {
        let d = raw(r#"{"inputs":0,"outputs":0,"vertices":[["a","b","c"],["x","y","z"]],
            "edges":[["a","x"],["b","z"],["c","y"]]}"#)
        .validate()
        .unwrap();
        let again: Diagram = d.to_json().parse().unwrap();
        assert_eq!(d, again);
        assert_eq!(d.components(), 1);
    }
}
