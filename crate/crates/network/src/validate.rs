use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::geom::{dot, on_segment, orient, segments_meet, Point};
use crate::model::{Color, Kind, Network, Role};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub subject: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.subject)
    }
}

fn push(out: &mut Vec<Violation>, rule: &'static str, subject: String) {
    out.push(Violation { rule, subject });
}

pub fn validate(net: &Network) -> Vec<Violation> {
    let mut out = Vec::new();
    combinatorics(net, &mut out);
    geometry(net, &mut out);
    out
}

fn combinatorics(net: &Network, out: &mut Vec<Violation>) {
    for (v, vx) in net.vertices.iter().enumerate() {
        let ins = net.in_edges(v).len();
        let outs = net.out_edges(v).len();
        let id = vx.id.clone();
        match vx.kind {
            Kind::Boundary(_) if v >= net.n => push(out, "boundary vertex out of order", id),
            Kind::Internal(_) if v < net.n => push(out, "internal vertex in boundary list", id),
            Kind::Boundary(Role::Source) => {
                if ins > 0 {
                    push(out, "source with incoming edge", id.clone());
                }
                if outs != 1 {
                    push(out, "source without exactly one outgoing edge", id);
                }
            }
            Kind::Boundary(Role::Sink) => {
                if outs > 0 {
                    push(out, "sink with outgoing edge", id.clone());
                }
                if ins != 1 {
                    push(out, "sink without exactly one incoming edge", id);
                }
            }
            Kind::Internal(c) => {
                if ins + outs != 3 {
                    push(out, "internal vertex degree not 3", id);
                } else if c == Color::White && ins != 1 {
                    push(out, "white vertex without exactly one incoming edge", id);
                } else if c == Color::Black && outs != 1 {
                    push(out, "black vertex without exactly one outgoing edge", id);
                }
            }
        }
    }
    let mut seen = HashSet::new();
    for e in &net.edges {
        if e.tail == e.head {
            push(out, "loop edge", e.id.clone());
            continue;
        }
        let key = (e.tail.min(e.head), e.tail.max(e.head));
        if !seen.insert(key) {
            push(out, "parallel edges", e.id.clone());
        }
    }
}

fn geometry(net: &Network, out: &mut Vec<Violation>) {
    let n = net.n;
    let b: Vec<&Point> = (0..n).map(|v| net.pos(v)).collect();
    // every triple in cyclic order turns left
    'outer: for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient(b[i], b[j], b[k]) != Ordering::Greater {
                    push(
                        out,
                        "boundary not in counterclockwise convex position",
                        format!("{} {} {}", net.vertices[i].id, net.vertices[j].id, net.vertices[k].id),
                    );
                    break 'outer;
                }
            }
        }
    }
    for v in net.internal() {
        let p = net.pos(v);
        let inside = n >= 3 && (0..n).all(|i| orient(b[i], b[(i + 1) % n], p) == Ordering::Greater);
        if !inside {
            push(out, "internal vertex not strictly inside hull", net.vertices[v].id.clone());
        }
    }
    for u in 0..net.vertices.len() {
        for v in u + 1..net.vertices.len() {
            if net.pos(u) == net.pos(v) {
                push(
                    out,
                    "coincident vertices",
                    format!("{} {}", net.vertices[u].id, net.vertices[v].id),
                );
            }
        }
    }
    let m = net.edges.len();
    for a in 0..m {
        let ea = &net.edges[a];
        let (p1, p2) = (net.pos(ea.tail), net.pos(ea.head));
        for (v, vx) in net.vertices.iter().enumerate() {
            if v != ea.tail && v != ea.head && on_segment(&vx.pos, p1, p2) {
                push(out, "vertex on edge", format!("{} {}", vx.id, ea.id));
            }
        }
        for bi in a + 1..m {
            let eb = &net.edges[bi];
            let ends_a = [ea.tail, ea.head];
            let shared: Vec<usize> = [eb.tail, eb.head].into_iter().filter(|x| ends_a.contains(x)).collect();
            let bad = match shared.len() {
                0 => segments_meet(p1, p2, net.pos(eb.tail), net.pos(eb.head)),
                1 => {
                    let s = shared[0];
                    let qa = net.pos(net.other_end(a, s)).sub(net.pos(s));
                    let qb = net.pos(net.other_end(bi, s)).sub(net.pos(s));
                    crate::geom::cross(&qa, &qb) == exprcore::qi(0) && dot(&qa, &qb) > exprcore::qi(0)
                }
                _ => false,
            };
            if bad {
                push(out, "embedding crossing", format!("{} {}", ea.id, eb.id));
            }
        }
    }
}
