//! Builders for the example networks and for random perfect networks.

use exprcore::{q, RationalFunction, VarTable};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::embed::CombMap;
use crate::geom::{standard_boundary, tutte_layout, Point};
use crate::model::{Color, Edge, Kind, Network, NetworkError, Role, Vertex};
use crate::validate::validate;

/// Incremental network construction; boundary vertices must be added first, in counterclockwise order.
pub struct Builder {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    vars: VarTable,
    n: usize,
}

impl Builder {
    pub fn new(vars: VarTable) -> Self {
        Builder {
            vertices: Vec::new(),
            edges: Vec::new(),
            vars,
            n: 0,
        }
    }

    pub fn boundary(&mut self, id: &str, role: Role, pos: Point) -> usize {
        assert_eq!(self.n, self.vertices.len(), "boundary vertices come first");
        self.n += 1;
        self.push(id, Kind::Boundary(role), pos)
    }

    pub fn internal(&mut self, id: &str, color: Color, pos: Point) -> usize {
        self.push(id, Kind::Internal(color), pos)
    }

    fn push(&mut self, id: &str, kind: Kind, pos: Point) -> usize {
        self.vertices.push(Vertex {
            id: id.to_string(),
            kind,
            pos,
        });
        self.vertices.len() - 1
    }

    pub fn edge(&mut self, id: &str, tail: usize, head: usize, weight: RationalFunction) -> usize {
        self.edges.push(Edge {
            id: id.to_string(),
            tail,
            head,
            weight,
        });
        self.edges.len() - 1
    }

    pub fn build(self) -> Network {
        Network {
            n: self.n,
            vertices: self.vertices,
            edges: self.edges,
            vars: self.vars,
        }
    }

    /// Build and insist on a valid embedding.
    pub fn build_valid(self) -> Result<Network, NetworkError> {
        let net = self.build();
        let v = validate(&net);
        if v.is_empty() {
            Ok(net)
        } else {
            let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            Err(NetworkError::Build(msgs.join("; ")))
        }
    }
}

fn fig1_boundary() -> [Point; 4] {
    [
        Point::ratio(-21, 29, -20, 29),
        Point::ratio(21, 29, -20, 29),
        Point::ratio(21, 29, 20, 29),
        Point::ratio(-21, 29, 20, 29),
    ]
}

/// The four-vertex example network with weights in x1..x4.
pub fn fig1() -> Network {
    let vars = VarTable::from_names(["x1", "x2", "x3", "x4"]);
    let x = |i: usize| RationalFunction::var(vars.vars()[i - 1]);
    let one = RationalFunction::one();
    let w = [
        x(1).mul(&x(1)).div(&x(2).add(&one)).unwrap(),
        x(2),
        x(2).add(&one),
        x(1).add(&x(3)),
        x(3),
        x(3),
        x(3),
        x(4),
        one.clone(),
        one.clone(),
        one,
    ];
    fig1_with(w.to_vec(), vars)
}

/// Same topology with one free variable w1..w11 per edge.
pub fn fig1_symbolic() -> Network {
    fig1().symbolic()
}

pub fn fig1_with(w: Vec<RationalFunction>, vars: VarTable) -> Network {
    let b = fig1_boundary();
    let mut g = Builder::new(vars);
    let b1 = g.boundary("b1", Role::Source, b[0].clone());
    let b2 = g.boundary("b2", Role::Source, b[1].clone());
    let b3 = g.boundary("b3", Role::Sink, b[2].clone());
    let b4 = g.boundary("b4", Role::Sink, b[3].clone());
    let xv = g.internal("X", Color::White, Point::ratio(2, 5, -1, 2));
    let yv = g.internal("Y", Color::Black, Point::ratio(-2, 5, -1, 2));
    let av = g.internal("A", Color::Black, Point::ratio(1, 4, -1, 4));
    let bv = g.internal("B", Color::White, Point::ratio(1, 4, 1, 4));
    let cv = g.internal("C", Color::White, Point::ratio(-1, 4, 1, 4));
    let dv = g.internal("D", Color::Black, Point::ratio(-1, 4, -1, 4));
    let ends = [
        (b2, xv),
        (xv, av),
        (av, bv),
        (bv, b3),
        (b1, yv),
        (yv, dv),
        (cv, dv),
        (cv, b4),
        (xv, yv),
        (dv, av),
        (bv, cv),
    ];
    for (i, ((t, h), wt)) in ends.iter().zip(w).enumerate() {
        g.edge(&format!("e{}", i + 1), *t, *h, wt);
    }
    g.build()
}

/// The eight-edge network with sources b1, b3 and sinks b2, b4; weights w1..w8.
pub fn g24() -> Network {
    let names: Vec<String> = (1..=8).map(|i| format!("w{}", i)).collect();
    let vars = VarTable::from_names(names.iter());
    let w = |i: usize| RationalFunction::var(vars.vars()[i - 1]);
    let b = fig1_boundary();
    let mut g = Builder::new(vars.clone());
    let b1 = g.boundary("b1", Role::Source, b[0].clone());
    let b2 = g.boundary("b2", Role::Sink, b[1].clone());
    let b3 = g.boundary("b3", Role::Source, b[2].clone());
    let b4 = g.boundary("b4", Role::Sink, b[3].clone());
    let p = g.internal("P", Color::Black, Point::ratio(-1, 4, -1, 4));
    let qv = g.internal("Q", Color::White, Point::ratio(1, 4, -1, 4));
    let r = g.internal("R", Color::Black, Point::ratio(1, 4, 1, 4));
    let s = g.internal("S", Color::White, Point::ratio(-1, 4, 1, 4));
    let ends = [
        (1, b1, p),
        (4, p, qv),
        (6, qv, b2),
        (7, qv, r),
        (8, b3, r),
        (5, r, s),
        (3, s, b4),
        (2, s, p),
    ];
    for (i, t, h) in ends {
        g.edge(&format!("e{}", i), t, h, w(i));
    }
    g.build()
}

/// A single edge from b1 (source) to b2 (sink).
pub fn chord(weight: RationalFunction, vars: VarTable) -> Network {
    let b = standard_boundary(2);
    let mut g = Builder::new(vars);
    let s = g.boundary("b1", Role::Source, b[0].clone());
    let t = g.boundary("b2", Role::Sink, b[1].clone());
    g.edge("e1", s, t, weight);
    g.build()
}

/// Square layout with n strands: source b_i on the right at height i,
/// its strand ending at sink b_{2n+1-i} on the left.
struct Square {
    b: Vec<Point>,
    n: usize,
}

impl Square {
    fn new(n: usize) -> Self {
        Square {
            b: standard_boundary(2 * n),
            n,
        }
    }

    fn source(&self, i: usize) -> usize {
        i - 1
    }

    fn sink(&self, i: usize) -> usize {
        2 * self.n - i
    }

    /// Point at fraction t along strand i, from its source, pulled slightly towards
    /// the centre so that outer strands stay off the hull.
    fn at(&self, i: usize, t: &exprcore::Q) -> Point {
        let a = &self.b[self.source(i)];
        let c = &self.b[self.sink(i)];
        a.add(&c.sub(a).scale(t)).scale(&q(19, 20))
    }

    fn builder(&self, vars: VarTable) -> Builder {
        let mut g = Builder::new(vars);
        for j in 0..2 * self.n {
            let role = if j < self.n { Role::Source } else { Role::Sink };
            g.boundary(&format!("b{}", j + 1), role, self.b[j].clone());
        }
        g
    }
}

/// diag(d_1..d_n): n parallel strands.
pub fn diag(ds: Vec<RationalFunction>, vars: VarTable) -> Network {
    let sq = Square::new(ds.len());
    let mut g = sq.builder(vars);
    for (i, d) in ds.into_iter().enumerate() {
        g.edge(&format!("h{}", i + 1), sq.source(i + 1), sq.sink(i + 1), d);
    }
    g.build()
}

/// Slanted factor: a white vertex on strand `from` feeding a black vertex on strand `to`,
/// with weights (first segment, second segment) per strand.
fn slanted(
    n: usize,
    from: usize,
    to: usize,
    slant: RationalFunction,
    strand_w: &dyn Fn(usize) -> (RationalFunction, RationalFunction),
    vars: VarTable,
) -> Result<Network, NetworkError> {
    if n < 2 || from < 1 || to < 1 || from > n || to > n || from.abs_diff(to) != 1 {
        return Err(NetworkError::Build("elementary index out of range".into()));
    }
    let sq = Square::new(n);
    let mut g = sq.builder(vars);
    let wv = g.internal("W", Color::White, sq.at(from, &q(1, 3)));
    let bv = g.internal("B", Color::Black, sq.at(to, &q(2, 3)));
    for i in 1..=n {
        let (w1, w2) = strand_w(i);
        if i == from || i == to {
            let mid = if i == from { wv } else { bv };
            g.edge(&format!("h{}a", i), sq.source(i), mid, w1);
            g.edge(&format!("h{}b", i), mid, sq.sink(i), w2);
        } else {
            g.edge(&format!("h{}", i), sq.source(i), sq.sink(i), w1);
        }
    }
    g.edge("c", wv, bv, slant);
    g.build_valid()
}

fn unit_strands(_: usize) -> (RationalFunction, RationalFunction) {
    (RationalFunction::one(), RationalFunction::one())
}

/// E^-_i(l) = 1 + l e_{i,i-1}.
pub fn e_minus(n: usize, i: usize, l: RationalFunction, vars: VarTable) -> Result<Network, NetworkError> {
    slanted(n, i, i.wrapping_sub(1), l, &unit_strands, vars)
}

/// E^+_i(u) = 1 + u e_{i-1,i}.
pub fn e_plus(n: usize, i: usize, u: RationalFunction, vars: VarTable) -> Result<Network, NetworkError> {
    slanted(n, i.wrapping_sub(1), i, u, &unit_strands, vars)
}

/// Lower factor with block [[d, 0], [c, 1/d]] in rows and columns i-1, i.
pub fn rho_minus(n: usize, i: usize, c: RationalFunction, d: RationalFunction, vars: VarTable) -> Result<Network, NetworkError> {
    let dinv = d.inv().map_err(|e| NetworkError::Build(e.to_string()))?;
    let one = RationalFunction::one;
    let sw = move |s: usize| {
        if s + 1 == i {
            (one(), d.clone())
        } else if s == i {
            (dinv.clone(), one())
        } else {
            (one(), one())
        }
    };
    slanted(n, i, i.wrapping_sub(1), c, &sw, vars)
}

/// Upper factor with block [[d, c], [0, 1/d]] in rows and columns j-1, j.
pub fn rho_plus(n: usize, j: usize, c: RationalFunction, d: RationalFunction, vars: VarTable) -> Result<Network, NetworkError> {
    let dinv = d.inv().map_err(|e| NetworkError::Build(e.to_string()))?;
    let one = RationalFunction::one;
    let sw = move |s: usize| {
        if s + 1 == j {
            (d.clone(), one())
        } else if s == j {
            (one(), dinv.clone())
        } else {
            (one(), one())
        }
    };
    slanted(n, j.wrapping_sub(1), j, c, &sw, vars)
}

/// Abstract planar growth state used by the random generator.
struct Grow {
    ends: Vec<(usize, usize)>,
    rot: Vec<Vec<usize>>,
    border: Vec<usize>,
    role: Vec<Option<Role>>,
}

impl Grow {
    fn map(&self) -> (CombMap, Vec<usize>) {
        // new order: border first, then internal vertices
        let mut order = self.border.clone();
        order.extend((0..self.rot.len()).filter(|v| self.role[*v].is_none()));
        let mut pos = vec![0; order.len()];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k;
        }
        let cm = CombMap {
            n: self.border.len(),
            ends: self.ends.iter().map(|&(t, h)| (pos[t], pos[h])).collect(),
            rot: order.iter().map(|&v| self.rot[v].clone()).collect(),
        };
        (cm, order)
    }

    fn subdivide(&mut self, e: usize) -> (usize, usize) {
        let (t, h) = self.ends[e];
        let x = self.rot.len();
        let f = self.ends.len();
        self.ends[e] = (t, x);
        self.ends.push((x, h));
        for d in self.rot[h].iter_mut() {
            if *d == 2 * e + 1 {
                *d = 2 * f + 1;
            }
        }
        self.rot.push(vec![2 * f, 2 * e + 1]);
        self.role.push(None);
        (x, f)
    }

    /// Subdivide the edge of dart d and return the new vertex with the dart after
    /// which a new edge on the left of d must be inserted.
    fn split_dart(&mut self, d: usize) -> (usize, usize) {
        let e = d / 2;
        let (x, f) = self.subdivide(e);
        let forward = if d % 2 == 0 { 2 * f } else { 2 * e + 1 };
        (x, forward)
    }

    fn insert_after(&mut self, v: usize, after: usize, d: usize) {
        let k = self.rot[v].iter().position(|&x| x == after).unwrap();
        self.rot[v].insert(k + 1, d);
    }

    fn leaf<R: Rng>(&mut self, rng: &mut R) {
        let (cm, _) = self.map();
        let a = rng.gen_range(0..self.border.len());
        let arc = cm.arc(a);
        let face = cm.faces().into_iter().find(|f| f.contains(&arc)).unwrap();
        let graph: Vec<usize> = face.iter().copied().filter(|&d| !cm.is_arc(d)).collect();
        let d = *graph.choose(rng).unwrap();
        let (x, fwd) = self.split_dart(d);
        let bnew = self.rot.len();
        let role = if rng.gen_bool(0.5) { Role::Source } else { Role::Sink };
        self.role.push(Some(role));
        let g = self.ends.len();
        let (t, h) = if role == Role::Source { (bnew, x) } else { (x, bnew) };
        self.ends.push((t, h));
        let at_x = if t == x { 2 * g } else { 2 * g + 1 };
        self.rot.push(vec![at_x ^ 1]);
        self.insert_after(x, fwd, at_x);
        self.border.insert(a + 1, bnew);
    }

    fn bridge<R: Rng>(&mut self, rng: &mut R) -> bool {
        let (cm, _) = self.map();
        let faces: Vec<Vec<usize>> = cm
            .faces()
            .into_iter()
            .map(|f| f.into_iter().filter(|&d| !cm.is_arc(d)).collect::<Vec<_>>())
            .filter(|f: &Vec<usize>| {
                let mut es: Vec<usize> = f.iter().map(|d| d / 2).collect();
                es.sort();
                es.dedup();
                es.len() >= 2
            })
            .collect();
        let Some(face) = faces.choose(rng) else {
            return false;
        };
        let d1 = *face.choose(rng).unwrap();
        let others: Vec<usize> = face.iter().copied().filter(|d| d / 2 != d1 / 2).collect();
        let d2 = *others.choose(rng).unwrap();
        let (x, fx) = self.split_dart(d1);
        let (y, fy) = self.split_dart(d2);
        let g = self.ends.len();
        let (t, h) = if rng.gen_bool(0.5) { (x, y) } else { (y, x) };
        self.ends.push((t, h));
        let (dx, dy) = if t == x { (2 * g, 2 * g + 1) } else { (2 * g + 1, 2 * g) };
        self.insert_after(x, fx, dx);
        self.insert_after(y, fy, dy);
        true
    }
}

/// Random perfect network with at most `max_internal` internal vertices and
/// between 3 and `max_n` boundary vertices. Edge ids e1.. with free weights w1..
pub fn random_network<R: Rng>(rng: &mut R, max_internal: usize, max_n: usize) -> Network {
    assert!(max_internal >= 1 && max_n >= 3);
    loop {
        if let Some(net) = try_random(rng, max_internal, max_n) {
            return net;
        }
    }
}

fn try_random<R: Rng>(rng: &mut R, max_internal: usize, max_n: usize) -> Option<Network> {
    let target_n = rng.gen_range(3..=max_n.min(max_internal + 2));
    let leaves = target_n - 2;
    let bridges = rng.gen_range(0..=(max_internal - leaves) / 2);
    let mut ops: Vec<bool> = std::iter::repeat(true).take(leaves).chain(std::iter::repeat(false).take(bridges)).collect();
    ops.shuffle(rng);
    let mut g = Grow {
        ends: vec![(0, 1)],
        rot: vec![vec![0], vec![1]],
        border: vec![0, 1],
        role: vec![Some(Role::Source), Some(Role::Sink)],
    };
    for leaf in ops {
        if leaf {
            g.leaf(rng);
        } else if !g.bridge(rng) {
            return None;
        }
    }
    let (cm, order) = g.map();
    let n = cm.n;
    let bpos = standard_boundary(n);
    let fixed: Vec<Option<Point>> = (0..order.len()).map(|v| if v < n { Some(bpos[v].clone()) } else { None }).collect();
    let pos = tutte_layout(&cm.adjacency(), &fixed)?;
    let names: Vec<String> = (1..=cm.ends.len()).map(|i| format!("w{}", i)).collect();
    let vars = VarTable::from_names(names.iter());
    let mut b = Builder::new(vars.clone());
    for v in 0..order.len() {
        let r = g.role[order[v]];
        match r {
            Some(role) => {
                b.boundary(&format!("b{}", v + 1), role, pos[v].clone());
            }
            None => {
                let ins = cm.ends.iter().filter(|e| e.1 == v).count();
                let c = if ins == 1 { Color::White } else { Color::Black };
                b.internal(&format!("v{}", v + 1 - n), c, pos[v].clone());
            }
        }
    }
    for (i, &(t, h)) in cm.ends.iter().enumerate() {
        b.edge(&format!("e{}", i + 1), t, h, RationalFunction::var(vars.vars()[i]));
    }
    let net = b.build_valid().ok()?;
    if !crate::model::edges_off_paths(&net).is_empty() {
        return None;
    }
    Some(net)
}
