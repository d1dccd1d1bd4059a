//! Combinatorial maps: rotation systems with virtual boundary arcs.
//!
//! Graph edge `e` has darts `2e` (tail to head) and `2e+1` (head to tail).
//! Boundary arc `a` joins b_a to b_{a+1}; its darts are `2E+2a` (counterclockwise)
//! and `2E+2a+1`.

use std::cmp::Ordering;

use crate::geom::angle_cmp;
use crate::model::Network;

#[derive(Clone, Debug)]
pub struct CombMap {
    pub n: usize,
    pub ends: Vec<(usize, usize)>,
    /// Graph darts leaving each vertex, counterclockwise. At a boundary vertex the
    /// list starts right after the arc towards the next boundary vertex.
    pub rot: Vec<Vec<usize>>,
}

impl CombMap {
    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn is_arc(&self, d: usize) -> bool {
        d >= 2 * self.ends.len()
    }

    pub fn edge_of(&self, d: usize) -> usize {
        d / 2
    }

    pub fn rev(&self, d: usize) -> usize {
        d ^ 1
    }

    pub fn tail(&self, d: usize) -> usize {
        let m = self.ends.len();
        if d < 2 * m {
            let (t, h) = self.ends[d / 2];
            if d % 2 == 0 {
                t
            } else {
                h
            }
        } else {
            let a = (d - 2 * m) / 2;
            if d % 2 == 0 {
                a
            } else {
                (a + 1) % self.n
            }
        }
    }

    pub fn head(&self, d: usize) -> usize {
        self.tail(d ^ 1)
    }

    /// Forward arc dart b_a -> b_{a+1}.
    pub fn arc(&self, a: usize) -> usize {
        2 * self.ends.len() + 2 * a
    }

    /// Full counterclockwise rotation at v, arcs included.
    pub fn full_rot(&self, v: usize) -> Vec<usize> {
        if v < self.n && self.n >= 2 {
            let mut r = vec![self.arc(v)];
            r.extend_from_slice(&self.rot[v]);
            r.push(self.arc((v + self.n - 1) % self.n) ^ 1);
            r
        } else {
            self.rot[v].clone()
        }
    }

    /// Next dart along the face on the left of d.
    pub fn next(&self, d: usize) -> usize {
        let r = self.full_rot(self.head(d));
        let k = r.iter().position(|&x| x == d ^ 1).expect("dart missing from rotation");
        r[(k + r.len() - 1) % r.len()]
    }

    /// All faces as dart cycles, the exterior (all reversed arcs) excluded.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let total = 2 * self.ends.len() + if self.n >= 2 { 2 * self.n } else { 0 };
        let mut seen = vec![false; total];
        let mut out = Vec::new();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                cyc.push(d);
                d = self.next(d);
            }
            let exterior = cyc.iter().all(|&d| self.is_arc(d) && d % 2 == 1);
            if !exterior {
                out.push(cyc);
            }
        }
        out
    }

    /// Split edge e by a new vertex x: e becomes tail -> x, the returned edge is x -> head.
    /// The rotation at x is [towards head, towards tail]; callers insert the third dart.
    pub fn subdivide(&mut self, e: usize) -> (usize, usize) {
        let (t, h) = self.ends[e];
        let x = self.rot.len();
        let f = self.ends.len();
        // arc darts shift by two when an edge is added
        self.shift_arcs(2);
        self.ends[e] = (t, x);
        self.ends.push((x, h));
        for d in self.rot[h].iter_mut() {
            if *d == 2 * e + 1 {
                *d = 2 * f + 1;
            }
        }
        self.rot.push(vec![2 * f, 2 * e + 1]);
        (x, f)
    }

    fn shift_arcs(&mut self, by: usize) {
        let m2 = 2 * self.ends.len();
        for r in self.rot.iter_mut() {
            for d in r.iter_mut() {
                if *d >= m2 {
                    *d += by;
                }
            }
        }
    }

    pub fn add_edge(&mut self, t: usize, h: usize) -> usize {
        self.shift_arcs(2);
        self.ends.push((t, h));
        self.ends.len() - 1
    }

    /// Insert dart d into rot[v] right after `after`.
    pub fn insert_after(&mut self, v: usize, after: usize, d: usize) {
        let k = self.rot[v].iter().position(|&x| x == after).expect("dart not at vertex");
        self.rot[v].insert(k + 1, d);
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.rot.len()];
        for &(t, h) in &self.ends {
            adj[t].push(h);
            adj[h].push(t);
        }
        adj
    }
}

/// Rotation system read off the straight-line embedding.
pub fn comb_map(net: &Network) -> CombMap {
    let ends: Vec<(usize, usize)> = net.edges.iter().map(|e| (e.tail, e.head)).collect();
    let n = net.n;
    let rot = (0..net.vertices.len())
        .map(|v| {
            let dart = |e: usize| if net.edges[e].tail == v { 2 * e } else { 2 * e + 1 };
            let mut es = net.incident(v);
            if v < n && n >= 2 {
                // order by angle measured from the direction of the next boundary vertex
                let base = net.pos((v + 1) % n).sub(net.pos(v));
                es.sort_by(|&a, &b| {
                    rel_cmp(&base, &net.direction_from(a, v), &net.direction_from(b, v))
                });
            } else {
                es = net.rotation(v);
            }
            es.into_iter().map(dart).collect()
        })
        .collect();
    CombMap { n, ends, rot }
}

fn rel_cmp(base: &crate::geom::Point, a: &crate::geom::Point, b: &crate::geom::Point) -> Ordering {
    // compare counterclockwise angles from base, in (0, 2pi)
    let key = |p: &crate::geom::Point| angle_cmp(base, p) == Ordering::Greater;
    match (key(a), key(b)) {
        (false, true) => Ordering::Less,
        (true, false) => Ordering::Greater,
        _ => angle_cmp(a, b),
    }
}
