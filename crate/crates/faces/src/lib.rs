//! Faces of a planar network, face weights, the directed dual network and path weights
//! written as monomials in face weights.

use std::collections::VecDeque;
use std::fmt;

use exprcore::RationalFunction as RF;
use network::embed::{comb_map, CombMap};
use network::flags::reduced_params;
use network::{decompose_path, edges_off_paths, Color, Network, Path, PathError, Role};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FaceError {
    #[error("edges on no source-to-sink path: {0:?}")]
    EdgesOffPaths(Vec<String>),
    #[error("face count {found} differs from the Euler count {expected}")]
    Euler { found: usize, expected: usize },
    #[error("path error: {0}")]
    Path(#[from] PathError),
}

/// One step of a counterclockwise face boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// edge traversed along (+1) or against (-1) its direction
    Edge { edge: usize, gamma: i32 },
    /// boundary arc from b_a to b_{a+1}
    Arc(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub steps: Vec<Step>,
    pub bounded: bool,
}

#[derive(Clone, Debug)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    map: CombMap,
    /// face on the left of each dart; None for the exterior beyond the disk
    left: Vec<Option<usize>>,
}

impl FaceSet {
    /// Face on the left of edge e.
    pub fn left_of(&self, e: usize) -> usize {
        self.left[2 * e].expect("edge darts lie on faces")
    }

    pub fn right_of(&self, e: usize) -> usize {
        self.left[2 * e + 1].expect("edge darts lie on faces")
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Winding number of a closed dart chain around every face; the exterior has 0.
    pub fn winding(&self, chain: &[usize]) -> Vec<i64> {
        let total = self.left.len();
        let mut flow = vec![0i64; total];
        for &d in chain {
            flow[d] += 1;
        }
        let mut w: Vec<Option<i64>> = vec![None; self.faces.len()];
        let mut queue = VecDeque::new();
        // faces adjacent to the exterior through reversed arcs
        for a in 0..self.map.n {
            let d = self.map.arc(a);
            let f = self.left[d].unwrap();
            // crossing the arc from the exterior (right of d) into f
            let v = flow[d] - flow[d ^ 1];
            if w[f].is_none() {
                w[f] = Some(v);
                queue.push_back(f);
            }
        }
        let darts_of: Vec<Vec<usize>> = {
            let mut by = vec![Vec::new(); self.faces.len()];
            for (d, f) in self.left.iter().enumerate() {
                if let Some(f) = f {
                    by[*f].push(d);
                }
            }
            by
        };
        while let Some(f) = queue.pop_front() {
            let wf = w[f].unwrap();
            for &d in &darts_of[f] {
                // f is left of d; the face across is left of the reverse dart
                if let Some(g) = self.left[d ^ 1] {
                    if w[g].is_none() {
                        w[g] = Some(wf - (flow[d] - flow[d ^ 1]));
                        queue.push_back(g);
                    }
                }
            }
        }
        w.into_iter().map(|x| x.unwrap_or(0)).collect()
    }
}

pub fn enumerate_faces(net: &Network) -> Result<FaceSet, FaceError> {
    let off = edges_off_paths(net);
    if !off.is_empty() {
        return Err(FaceError::EdgesOffPaths(off.iter().map(|&e| net.edges[e].id.clone()).collect()));
    }
    let map = comb_map(net);
    let cycles = map.faces();
    let total = 2 * net.edges.len() + if net.n >= 2 { 2 * net.n } else { 0 };
    let mut left = vec![None; total];
    let mut faces = Vec::new();
    for (f, cyc) in cycles.iter().enumerate() {
        let mut steps = Vec::new();
        for &d in cyc {
            left[d] = Some(f);
            if map.is_arc(d) {
                steps.push(Step::Arc((d - 2 * net.edges.len()) / 2));
            } else {
                steps.push(Step::Edge {
                    edge: d / 2,
                    gamma: if d % 2 == 0 { 1 } else { -1 },
                });
            }
        }
        let bounded = steps.iter().all(|s| matches!(s, Step::Edge { .. }));
        faces.push(Face { steps, bounded });
    }
    let internal = net.vertices.len() - net.n;
    let expected = (net.edges.len() + 1).saturating_sub(internal);
    if faces.len() != expected {
        return Err(FaceError::Euler {
            found: faces.len(),
            expected,
        });
    }
    Ok(FaceSet { faces, map, left })
}

/// y_f = prod over the boundary of w_e^gamma_e.
pub fn face_weights(net: &Network, fs: &FaceSet) -> Vec<RF> {
    fs.faces
        .iter()
        .map(|f| {
            let mut y = RF::one();
            for s in &f.steps {
                if let Step::Edge { edge, gamma } = *s {
                    let w = &net.edges[edge].weight;
                    y = if gamma > 0 { y.mul(w) } else { y.div(w).expect("edge weights are nonzero") };
                }
            }
            y
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualEdge {
    pub from: usize,
    pub to: usize,
    pub weight: RF,
    pub primal: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualNetwork {
    pub faces: usize,
    pub edges: Vec<DualEdge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tone {
    White,
    Black,
    Gray,
}

fn tone(net: &Network, v: usize) -> Tone {
    match net.color(v) {
        Some(Color::White) => Tone::White,
        Some(Color::Black) => Tone::Black,
        None => Tone::Gray,
    }
}

pub fn dual_network(net: &Network, fs: &FaceSet) -> DualNetwork {
    let (a, b) = reduced_params();
    dual_network_with(net, fs, &RF::var(a), &RF::var(b))
}

/// Dual edges cross bichromatic primal edges with the white end on their left
/// (or, for black-gray edges, the black end on their right).
pub fn dual_network_with(net: &Network, fs: &FaceSet, alpha: &RF, beta: &RF) -> DualNetwork {
    let mut edges = Vec::new();
    for (e, edge) in net.edges.iter().enumerate() {
        let (t, h) = (tone(net, edge.tail), tone(net, edge.head));
        let weight = match (t, h) {
            (Tone::White, Tone::Black) | (Tone::Black, Tone::White) => alpha.sub(beta),
            (Tone::White, Tone::Gray) | (Tone::Gray, Tone::White) => alpha.clone(),
            (Tone::Black, Tone::Gray) | (Tone::Gray, Tone::Black) => beta.neg(),
            _ => continue,
        };
        // crossing right to left puts the tail on the left of the dual edge
        let tail_on_left = match (t, h) {
            (Tone::White, _) => true,
            (_, Tone::White) => false,
            (Tone::Black, _) => false,
            _ => true,
        };
        let (l, r) = (fs.left_of(e), fs.right_of(e));
        let (from, to) = if tail_on_left { (r, l) } else { (l, r) };
        edges.push(DualEdge { from, to, weight, primal: e });
    }
    DualNetwork { faces: fs.len(), edges }
}

/// Coefficient c in {y_f, y_f'} = c y_f y_f'.
pub fn face_bracket(dual: &DualNetwork, f: usize, f2: usize) -> RF {
    let mut c = RF::zero();
    for e in &dual.edges {
        if e.from == f && e.to == f2 {
            c = c.add(&e.weight);
        } else if e.from == f2 && e.to == f {
            c = c.sub(&e.weight);
        }
    }
    c
}

/// sign * prod y_f^exps[f].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceMonomial {
    pub sign: i32,
    pub exps: Vec<i64>,
}

impl FaceMonomial {
    pub fn eval(&self, y: &[RF]) -> RF {
        let mut out = RF::from_int(self.sign as i64);
        for (f, &k) in self.exps.iter().enumerate() {
            if k != 0 {
                out = out.mul(&y[f].pow(k).expect("face weights are nonzero"));
            }
        }
        out
    }

    fn mul(&self, o: &FaceMonomial) -> FaceMonomial {
        FaceMonomial {
            sign: self.sign * o.sign,
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for FaceMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(i, &k)| if k == 1 { format!("y{}", i + 1) } else { format!("y{}^{}", i + 1, k) })
            .collect();
        let body = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
        write!(f, "{}{}", if self.sign < 0 { "-" } else { "" }, body)
    }
}

fn simple_monomial(net: &Network, fs: &FaceSet, p: &Path) -> FaceMonomial {
    let mut chain: Vec<usize> = p.edges.iter().map(|&e| 2 * e).collect();
    if !p.is_cycle(net) {
        // close along the boundary counterclockwise from the sink back to the source
        let (i, j) = (p.start(net), p.end(net));
        let mut a = j;
        while a != i {
            chain.push(fs.map.arc(a));
            a = (a + 1) % net.n;
        }
    }
    FaceMonomial {
        sign: 1,
        exps: fs.winding(&chain),
    }
}

/// w_P as a signed monomial in face weights, by loop erasure.
pub fn path_face_monomial(net: &Network, fs: &FaceSet, p: &Path) -> Result<FaceMonomial, FaceError> {
    p.check(net)?;
    if !p.is_cycle(net) && (net.role(p.start(net)) != Some(Role::Source) || net.role(p.end(net)) != Some(Role::Sink)) {
        return Err(FaceError::Path(PathError::NotSourceToSink));
    }
    let repeated = p.edges.iter().enumerate().any(|(j, e)| p.edges[..j].contains(e));
    if !repeated {
        return Ok(simple_monomial(net, fs, p));
    }
    // w_P = -w_P' w_C for the first cycle split off
    let (rest, cycle) = decompose_path(p)?;
    let m = path_face_monomial(net, fs, &rest)?.mul(&simple_monomial(net, fs, &cycle));
    Ok(FaceMonomial {
        sign: -m.sign,
        exps: m.exps,
    })
}

/// One line per face: id, bounded flag, boundary sequence, weight.
pub fn render_faces(net: &Network, fs: &FaceSet) -> String {
    let y = face_weights(net, fs);
    let mut out = String::new();
    for (i, f) in fs.faces.iter().enumerate() {
        let seq: Vec<String> = f
            .steps
            .iter()
            .map(|s| match *s {
                Step::Edge { edge, gamma } => format!("{}{}", if gamma > 0 { "+" } else { "-" }, net.edges[edge].id),
                Step::Arc(a) => format!("~{}", net.vertices[a].id),
            })
            .collect();
        out.push_str(&format!(
            "f{} {} [{}] {}\n",
            i + 1,
            if f.bounded { "bounded" } else { "unbounded" },
            seq.join(" "),
            y[i]
        ));
    }
    out
}
