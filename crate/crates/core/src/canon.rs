//! Signed canonical labelling.
//!
//! The canonical form is the relabelling with the lexicographically smallest
//! pairing array among all relabellings that fix the legs and map vertex
//! triples onto vertex triples, where a relabelling may rotate a triple
//! (free) or reflect it (one AS sign). Relabellings are generated by a
//! breadth-first traversal: legs keep their labels, each newly reached vertex
//! takes the next three labels starting with the half-edge it was entered
//! through, and the only freedom left is the order of its two other
//! half-edges. That choice is forced whenever one of the two leads somewhere
//! already labelled; otherwise both branches are explored, pruned against the
//! best prefix found so far.

use crate::diagram::Diagram;

/// Result of canonicalising a single diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignedCanonical {
    /// The diagram has an automorphism reversing an odd number of cyclic
    /// orders, so it equals its own negative.
    Zero,
    /// `d = sign * diagram`.
    Form { diagram: Diagram, sign: i32 },
}

/// Canonical structure together with orientation data. Unlike
/// [`SignedCanonical`] this keeps the representative of AS-zero diagrams,
/// which enumeration still needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub diagram: Diagram,
    pub sign: i32,
    pub odd_automorphism: bool,
}

pub fn canonicalize(d: &Diagram) -> SignedCanonical {
    let c = canonical(d);
    if c.odd_automorphism {
        SignedCanonical::Zero
    } else {
        SignedCanonical::Form { diagram: c.diagram, sign: c.sign }
    }
}

pub fn canonical(d: &Diagram) -> Canonical {
    let h = d.half_edges();
    let legs = d.legs();
    let mut search = Search { d, best: Vec::new(), have: false, parities: [false; 2] };
    let mut new_of_old = vec![UNSET; h];
    let mut old_of_new = vec![UNSET; h];
    for i in 0..legs {
        new_of_old[i] = i as u32;
        old_of_new[i] = i as u32;
    }
    let st = State { new_of_old, old_of_new, next: legs, pos: 0, odd: false, tight: false, enc: Vec::with_capacity(h) };
    search.run(st);
    let odd_automorphism = search.parities[0] && search.parities[1];
    let sign = if search.parities[1] && !search.parities[0] { -1 } else { 1 };
    let diagram = Diagram::from_mate_unchecked(d.inputs(), d.outputs(), d.circles(), search.best);
    Canonical { diagram, sign, odd_automorphism }
}

const UNSET: u32 = u32::MAX;

#[derive(Clone)]
struct State {
    new_of_old: Vec<u32>,
    old_of_new: Vec<u32>,
    next: usize,
    pos: usize,
    odd: bool,
    /// Whether `enc` equals the best encoding's prefix (as opposed to being
    /// strictly smaller).
    tight: bool,
    enc: Vec<u32>,
}

struct Search<'a> {
    d: &'a Diagram,
    best: Vec<u32>,
    have: bool,
    /// Orientation parities seen among minimal relabellings.
    parities: [bool; 2],
}

impl Search<'_> {
    /// Re-derives `tight` against the current best; `false` means prune.
    fn recheck(&self, st: &mut State) -> bool {
        if !self.have {
            st.tight = false;
            return true;
        }
        match st.enc.as_slice().cmp(&self.best[..st.enc.len()]) {
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => {
                st.tight = true;
                true
            }
            std::cmp::Ordering::Less => {
                st.tight = false;
                true
            }
        }
    }

    fn emit(&self, st: &mut State, v: u32) -> bool {
        if self.have && st.tight {
            let b = self.best[st.pos];
            if v > b {
                return false;
            }
            if v < b {
                st.tight = false;
            }
        }
        st.enc.push(v);
        st.pos += 1;
        true
    }

    fn discover(&self, st: &mut State, vertex: usize, entry: usize, flip: bool) {
        let order = if flip { [entry, entry + 2, entry + 1] } else { [entry, entry + 1, entry + 2] };
        for s in order {
            let old = self.d.slot(vertex, s % 3);
            st.new_of_old[old] = st.next as u32;
            st.old_of_new[st.next] = old as u32;
            st.next += 1;
        }
        st.odd ^= flip;
    }

    fn leaf(&mut self, st: State) {
        if !self.have || !st.tight {
            self.best = st.enc;
            self.have = true;
            self.parities = [false; 2];
        }
        self.parities[st.odd as usize] = true;
    }

    fn run(&mut self, mut st: State) {
        let d = self.d;
        let total = d.half_edges();
        loop {
            if st.pos == total {
                self.leaf(st);
                return;
            }
            if st.pos == st.next {
                // Start a new closed component anywhere unlabelled.
                for v in 0..d.vertex_count() {
                    if st.new_of_old[d.slot(v, 0)] != UNSET {
                        continue;
                    }
                    for entry in 0..3 {
                        for flip in [false, true] {
                            let mut child = st.clone();
                            if !self.recheck(&mut child) {
                                return;
                            }
                            self.discover(&mut child, v, entry, flip);
                            self.run(child);
                        }
                    }
                }
                return;
            }
            let h = st.old_of_new[st.pos] as usize;
            let hm = d.mate(h);
            let label = st.new_of_old[hm];
            if label != UNSET {
                if !self.emit(&mut st, label) {
                    return;
                }
                continue;
            }
            let vertex = d.vertex_of(hm).expect("unlabelled half-edges are vertex slots");
            let entry = hm - d.slot(vertex, 0);
            let o1 = d.slot(vertex, (entry + 1) % 3);
            let o2 = d.slot(vertex, (entry + 2) % 3);
            let (l1, l2) = (st.new_of_old[d.mate(o1)], st.new_of_old[d.mate(o2)]);
            let forced = match (l1 != UNSET, l2 != UNSET) {
                (true, true) => Some(l2 < l1),
                (true, false) => Some(false),
                (false, true) => Some(true),
                (false, false) => None,
            };
            match forced {
                Some(flip) => {
                    let v = st.next as u32;
                    self.discover(&mut st, vertex, entry, flip);
                    if !self.emit(&mut st, v) {
                        return;
                    }
                }
                None => {
                    for flip in [false, true] {
                        let mut child = st.clone();
                        if !self.recheck(&mut child) {
                            return;
                        }
                        let v = child.next as u32;
                        self.discover(&mut child, vertex, entry, flip);
                        if self.emit(&mut child, v) {
                            self.run(child);
                        }
                    }
                    return;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::RawDiagram;

    fn parse(json: &str) -> Diagram {
        serde_json::from_str::<RawDiagram>(json).unwrap().validate().unwrap()
    }

    fn theta() -> Diagram {
        parse(r#"{"inputs":0,"outputs":0,"vertices":[["a","b","c"],["x","y","z"]],
            "edges":[["a","x"],["b","z"],["c","y"]]}"#)
    }

    #[test]
    fn single_flip_negates_theta() {
        let SignedCanonical::Form { diagram, sign } = canonicalize(&theta()) else { panic!() };
        let SignedCanonical::Form { diagram: d2, sign: s2 } = canonicalize(&theta().flip_vertex(0)) else {
            panic!()
        };
        assert_eq!(diagram, d2);
        assert_eq!(sign, -s2);
        assert_eq!(canonicalize(&diagram), SignedCanonical::Form { diagram, sign: 1 });
    }

    #[test]
    fn tadpole_is_zero() {
        let tadpole = parse(r#"{"inputs":0,"outputs":1,"vertices":[["a","b","c"]],
            "edges":[["a","b"],["c","out:1"]]}"#);
        assert_eq!(canonicalize(&tadpole), SignedCanonical::Zero);
    }

    #[test]
    fn dumbbell_is_zero_and_tripod_is_not() {
        let dumbbell = parse(r#"{"inputs":0,"outputs":0,"vertices":[["a","b","c"],["x","y","z"]],
            "edges":[["a","b"],["c","z"],["x","y"]]}"#);
        assert_eq!(canonicalize(&dumbbell), SignedCanonical::Zero);
        let tripod = parse(r#"{"inputs":3,"outputs":0,"vertices":[["a","b","c"]],
            "edges":[["in:1","a"],["in:2","b"],["in:3","c"]]}"#);
        assert!(matches!(canonicalize(&tripod), SignedCanonical::Form { sign: 1, .. }));
        assert!(matches!(canonicalize(&tripod.flip_vertex(0)), SignedCanonical::Form { sign: -1, .. }));
    }
}
