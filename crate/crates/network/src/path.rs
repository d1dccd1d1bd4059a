use exprcore::{q, RationalFunction, Q};
use num_traits::Zero;
use thiserror::Error;

use crate::geom::{cross, dot, Point};
use crate::model::{Network, Role};

/// Edge sequence e_1..e_r with head(e_i) = tail(e_{i+1}).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub edges: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("empty path")]
    Empty,
    #[error("edges {0} and {1} are not consecutive")]
    Broken(usize, usize),
    #[error("path does not run from a source to a sink")]
    NotSourceToSink,
    #[error("path is not a cycle")]
    NotCycle,
    #[error("path has no repeated edge")]
    NoRepeat,
    #[error("unknown edge '{0}'")]
    UnknownEdge(String),
    #[error("degenerate cone: consecutive segments point in opposite directions")]
    DegenerateCone,
    #[error("zero-length segment in curve")]
    ZeroSegment,
}

impl Path {
    pub fn new(edges: Vec<usize>) -> Self {
        Path { edges }
    }

    pub fn from_ids(net: &Network, ids: &[&str]) -> Result<Path, PathError> {
        let edges = ids
            .iter()
            .map(|id| net.edge_index(id).ok_or_else(|| PathError::UnknownEdge(id.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let p = Path { edges };
        p.check(net)?;
        Ok(p)
    }

    pub fn check(&self, net: &Network) -> Result<(), PathError> {
        if self.edges.is_empty() {
            return Err(PathError::Empty);
        }
        for w in self.edges.windows(2) {
            if net.edges[w[0]].head != net.edges[w[1]].tail {
                return Err(PathError::Broken(w[0], w[1]));
            }
        }
        Ok(())
    }

    pub fn vertices(&self, net: &Network) -> Vec<usize> {
        let mut vs = vec![net.edges[self.edges[0]].tail];
        vs.extend(self.edges.iter().map(|&e| net.edges[e].head));
        vs
    }

    pub fn start(&self, net: &Network) -> usize {
        net.edges[self.edges[0]].tail
    }

    pub fn end(&self, net: &Network) -> usize {
        net.edges[*self.edges.last().unwrap()].head
    }

    pub fn is_cycle(&self, net: &Network) -> bool {
        !self.edges.is_empty() && self.start(net) == self.end(net)
    }

    pub fn product(&self, net: &Network) -> RationalFunction {
        self.edges.iter().map(|&e| net.edges[e].weight.clone()).product()
    }

    pub fn is_simple(&self, net: &Network) -> bool {
        let vs = self.vertices(net);
        let mut s = std::collections::HashSet::new();
        vs.iter().all(|v| s.insert(*v))
    }
}

/// Concordance number of a closed polygon (vertices in order, implicitly closed).
pub fn concordance(curve: &[Point]) -> Result<u8, PathError> {
    let m = curve.len();
    let dirs: Vec<Point> = (0..m).map(|i| curve[(i + 1) % m].sub(&curve[i])).collect();
    if dirs.iter().any(|d| d.is_zero()) {
        return Err(PathError::ZeroSegment);
    }
    for i in 0..m {
        let (a, b) = (&dirs[i], &dirs[(i + 1) % m]);
        if cross(a, b).is_zero() && dot(a, b) < Q::zero() {
            return Err(PathError::DegenerateCone);
        }
    }
    let kk = m as i64 + 1;
    let mut k = 0i64;
    let probe = loop {
        let l = Point::new(q(1, 1), q(k, kk));
        if dirs.iter().all(|d| !cross(&l, d).is_zero()) {
            break l;
        }
        k += 1;
    };
    Ok(concordance_with(&dirs, &probe))
}

/// c_l for a given probe direction; directions must already be nondegenerate.
pub fn concordance_with(dirs: &[Point], l: &Point) -> u8 {
    let m = dirs.len();
    let mut c = 0u8;
    for i in 0..m {
        let (a, b) = (&dirs[i], &dirs[(i + 1) % m]);
        let ab = cross(a, b);
        let inside = if ab > Q::zero() {
            cross(a, l) > Q::zero() && cross(l, b) > Q::zero()
        } else if ab < Q::zero() {
            cross(b, l) > Q::zero() && cross(l, a) > Q::zero()
        } else {
            false
        };
        if inside {
            c ^= 1;
        }
    }
    c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    Counterclockwise,
    Clockwise,
}

/// The closed curve C_P: the path followed by a walk along the hull back to its start.
/// Each hull step bulges slightly outward so that a chord lying on the hull
/// does not fold back on itself.
pub fn closed_curve(net: &Network, p: &Path, closure: Closure) -> Result<Vec<Point>, PathError> {
    p.check(net)?;
    let vs = p.vertices(net);
    let mut pts: Vec<Point> = vs.iter().map(|&v| net.pos(v).clone()).collect();
    if p.is_cycle(net) {
        pts.pop();
        return Ok(pts);
    }
    let (i, j) = (vs[0], *vs.last().unwrap());
    if net.role(i) != Some(Role::Source) || net.role(j) != Some(Role::Sink) {
        return Err(PathError::NotSourceToSink);
    }
    let n = net.n;
    let step = |a: usize| match closure {
        Closure::Counterclockwise => (a + 1) % n,
        Closure::Clockwise => (a + n - 1) % n,
    };
    let mut a = j;
    loop {
        let b = step(a);
        let (pa, pb) = (net.pos(a), net.pos(b));
        let d = pb.sub(pa);
        let out = match closure {
            Closure::Counterclockwise => d.rot_cw(),
            Closure::Clockwise => d.rot_ccw(),
        };
        pts.push(pa.mid(pb).add(&out.scale(&q(1, 4))));
        if b == i {
            break;
        }
        pts.push(pb.clone());
        a = b;
    }
    Ok(pts)
}

/// +1 or -1: (-1)^(c(C_P) - 1).
pub fn path_sign(net: &Network, p: &Path, closure: Closure) -> Result<i32, PathError> {
    let c = concordance(&closed_curve(net, p, closure)?)?;
    Ok(if c == 1 { 1 } else { -1 })
}

/// Signed weight of a source-to-sink path or of a cycle.
pub fn path_weight(net: &Network, p: &Path) -> Result<RationalFunction, PathError> {
    let s = path_sign(net, p, Closure::Counterclockwise)?;
    let w = p.product(net);
    Ok(if s == 1 { w } else { w.neg() })
}

/// Split off the cycle at the first repeated edge: P = P' + C0.
pub fn decompose_path(p: &Path) -> Result<(Path, Path), PathError> {
    for j in 1..p.edges.len() {
        if let Some(i) = p.edges[..j].iter().position(|&e| e == p.edges[j]) {
            let mut rest = p.edges[..i].to_vec();
            rest.extend_from_slice(&p.edges[j..]);
            return Ok((Path::new(rest), Path::new(p.edges[i..j].to_vec())));
        }
    }
    Err(PathError::NoRepeat)
}

/// All paths from boundary vertex i to boundary vertex j with at most max_len edges.
pub fn enumerate_paths(net: &Network, i: usize, j: usize, max_len: usize) -> Vec<Path> {
    let outs: Vec<Vec<usize>> = (0..net.vertices.len()).map(|v| net.out_edges(v)).collect();
    let mut found = Vec::new();
    let mut stack = Vec::new();
    fn go(
        net: &Network,
        outs: &[Vec<usize>],
        v: usize,
        j: usize,
        max_len: usize,
        stack: &mut Vec<usize>,
        found: &mut Vec<Path>,
    ) {
        if v == j && !stack.is_empty() {
            found.push(Path::new(stack.clone()));
            return;
        }
        if stack.len() == max_len {
            return;
        }
        for &e in &outs[v] {
            stack.push(e);
            go(net, outs, net.edges[e].head, j, max_len, stack, found);
            stack.pop();
        }
    }
    go(net, &outs, i, j, max_len, &mut stack, &mut found);
    found
}
