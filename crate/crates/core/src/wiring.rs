//! Cut-and-glue construction of diagrams.
//!
//! Composition, tensor products, insertion and the IHX rewrite all reduce to
//! the same operation: copy some diagrams, turn selected half-edges into
//! connectors, identify connectors pairwise and read off the resulting
//! pairing. Chains that close up without meeting a leg or a vertex slot
//! become free circles.

use crate::diagram::{Diagram, End, Leg};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Point {
    Input(usize),
    Output(usize),
    Slot,
    Connector,
}

const NONE: usize = usize::MAX;

/// How a leg of an embedded diagram is treated.
#[derive(Clone, Copy, Debug)]
pub(crate) enum LegTo {
    Input(usize),
    Output(usize),
    Connector,
}

#[derive(Default)]
pub(crate) struct Wiring {
    points: Vec<Point>,
    mate: Vec<usize>,
    glue: Vec<usize>,
    vertices: Vec<[usize; 3]>,
    circles: usize,
}

impl Wiring {
    pub fn new() -> Self {
        Self::default()
    }

    fn add(&mut self, p: Point) -> usize {
        self.points.push(p);
        self.mate.push(NONE);
        self.glue.push(NONE);
        self.points.len() - 1
    }

    pub fn input(&mut self, k: usize) -> usize {
        self.add(Point::Input(k))
    }

    pub fn output(&mut self, k: usize) -> usize {
        self.add(Point::Output(k))
    }

    pub fn connector(&mut self) -> usize {
        self.add(Point::Connector)
    }

    /// Adds a vertex whose slots are fresh points; returns them in cyclic order.
    pub fn vertex(&mut self) -> [usize; 3] {
        let s = [self.add(Point::Slot), self.add(Point::Slot), self.add(Point::Slot)];
        self.vertices.push(s);
        s
    }

    pub fn connect(&mut self, a: usize, b: usize) {
        debug_assert!(self.mate[a] == NONE && self.mate[b] == NONE && a != b);
        self.mate[a] = b;
        self.mate[b] = a;
    }

    pub fn glue(&mut self, a: usize, b: usize) {
        debug_assert!(self.points[a] == Point::Connector && self.points[b] == Point::Connector);
        self.glue[a] = b;
        self.glue[b] = a;
    }

    /// Copies `d`, except the vertices in `skip` whose slots become connectors.
    /// Returns the point id of every half-edge of `d`.
    pub fn embed(&mut self, d: &Diagram, legs: impl Fn(Leg) -> LegTo, skip: &[usize]) -> Vec<usize> {
        let mut ids = vec![NONE; d.half_edges()];
        for (h, id) in ids.iter_mut().enumerate().take(d.legs()) {
            let End::Leg(leg) = d.end(h) else { unreachable!() };
            *id = match legs(leg) {
                LegTo::Input(k) => self.input(k),
                LegTo::Output(k) => self.output(k),
                LegTo::Connector => self.connector(),
            };
        }
        for v in 0..d.vertex_count() {
            let s = if skip.contains(&v) {
                [self.connector(), self.connector(), self.connector()]
            } else {
                self.vertex()
            };
            for (k, id) in s.into_iter().enumerate() {
                ids[d.slot(v, k)] = id;
            }
        }
        for (a, b) in d.edges() {
            self.connect(ids[a], ids[b]);
        }
        self.circles += d.circles();
        ids
    }

    pub fn finish(self) -> Diagram {
        let mut inputs = Vec::new();
        let mut outputs = Vec::new();
        for (p, kind) in self.points.iter().enumerate() {
            match *kind {
                Point::Input(k) => inputs.push((k, p)),
                Point::Output(k) => outputs.push((k, p)),
                _ => {}
            }
        }
        inputs.sort_unstable();
        outputs.sort_unstable();
        for (i, &(k, _)) in inputs.iter().enumerate() {
            assert_eq!(k, i + 1, "input legs must be numbered 1..m");
        }
        for (i, &(k, _)) in outputs.iter().enumerate() {
            assert_eq!(k, i + 1, "output legs must be numbered 1..n");
        }
        let mut new_id = vec![NONE; self.points.len()];
        let mut next = 0;
        for &(_, p) in inputs.iter().chain(outputs.iter()) {
            new_id[p] = next;
            next += 1;
        }
        for vtx in &self.vertices {
            for &p in vtx {
                new_id[p] = next;
                next += 1;
            }
        }
        let mut mate = vec![0u32; next];
        let mut seen = vec![false; self.points.len()];
        for (p, &id) in new_id.iter().enumerate() {
            if id == NONE {
                continue;
            }
            let mut q = self.mate[p];
            assert!(q != NONE, "unpaired point");
            while self.points[q] == Point::Connector {
                seen[q] = true;
                let g = self.glue[q];
                assert!(g != NONE, "connector without partner");
                seen[g] = true;
                q = self.mate[g];
                assert!(q != NONE, "unpaired point");
            }
            mate[id] = new_id[q] as u32;
        }
        let mut circles = self.circles;
        for p in 0..self.points.len() {
            if self.points[p] != Point::Connector || seen[p] {
                continue;
            }
            circles += 1;
            let mut q = p;
            while !seen[q] {
                seen[q] = true;
                let g = self.glue[q];
                seen[g] = true;
                q = self.mate[g];
            }
        }
        Diagram::from_mate_unchecked(inputs.len(), outputs.len(), circles, mate)
    }
}
