//! Gluing networks along boundary segments.

use exprcore::{RationalFunction, Var, VarTable};
use network::gen::{self, Builder};
use network::geom::{standard_boundary, tutte_layout, Point};
use network::{Kind, Network, NetworkError, Role};

use crate::measurement_matrix;

/// Boundary segments to identify, each listed counterclockwise in its own network.
/// `seg1[t]` is glued to `seg2[r - 1 - t]`.
#[derive(Clone, Debug)]
pub struct Gluing {
    pub seg1: Vec<usize>,
    pub seg2: Vec<usize>,
}

fn contiguous(seg: &[usize], n: usize) -> bool {
    seg.iter().all(|&x| x < n) && seg.windows(2).all(|w| w[1] == (w[0] + 1) % n) && seg.len() <= n
}

fn err(s: &str) -> NetworkError {
    NetworkError::Build(s.to_string())
}

pub fn concatenate(n1: &Network, n2: &Network, g: &Gluing) -> Result<Network, NetworkError> {
    let r = g.seg1.len();
    if r == 0 || r != g.seg2.len() {
        return Err(err("glued segments differ in length"));
    }
    if !contiguous(&g.seg1, n1.n) || !contiguous(&g.seg2, n2.n) {
        return Err(err("glued segment is not a contiguous counterclockwise run"));
    }
    let off = n1.vertices.len();
    let total = off + n2.vertices.len();
    // joint[v] = partner of a glued boundary vertex
    let mut joint = vec![None; total];
    for t in 0..r {
        let a = g.seg1[t];
        let b = off + g.seg2[r - 1 - t];
        match (n1.role(a), n2.role(b - off)) {
            (Some(Role::Source), Some(Role::Sink)) | (Some(Role::Sink), Some(Role::Source)) => {}
            _ => return Err(err("glued vertices must pair a source with a sink")),
        }
        joint[a] = Some(b);
        joint[b] = Some(a);
    }
    let mut edges: Vec<Option<(usize, usize, RationalFunction)>> = n1
        .edges
        .iter()
        .map(|e| Some((e.tail, e.head, e.weight.clone())))
        .chain(n2.edges.iter().map(|e| Some((e.tail + off, e.head + off, e.weight.clone()))))
        .collect();
    // splice each glued pair: the edge into one half continues as the edge out of the other
    for a in 0..total {
        let Some(b) = joint[a] else { continue };
        if a > b {
            continue;
        }
        let find_in = |es: &Vec<Option<(usize, usize, RationalFunction)>>, v: usize| {
            es.iter().position(|x| matches!(x, Some((_, h, _)) if *h == v))
        };
        let find_out = |es: &Vec<Option<(usize, usize, RationalFunction)>>, v: usize| {
            es.iter().position(|x| matches!(x, Some((t, _, _)) if *t == v))
        };
        let (ein, eout) = match (find_in(&edges, a), find_out(&edges, b)) {
            (Some(i), Some(o)) => (i, o),
            _ => (find_in(&edges, b).ok_or_else(|| err("dangling glued vertex"))?, find_out(&edges, a).ok_or_else(|| err("dangling glued vertex"))?),
        };
        if ein == eout {
            return Err(err("gluing closes a loop"));
        }
        let (t, _, w1) = edges[ein].take().unwrap();
        let (_, h, w2) = edges[eout].take().unwrap();
        if t == h {
            return Err(err("gluing closes a loop"));
        }
        edges[ein] = Some((t, h, w1.mul(&w2)));
    }
    // new boundary order
    let mut border = Vec::new();
    let last1 = *g.seg1.last().unwrap();
    for s in 1..=(n1.n - r) {
        border.push((last1 + s) % n1.n);
    }
    let last2 = *g.seg2.last().unwrap();
    for s in 1..=(n2.n - r) {
        border.push(off + (last2 + s) % n2.n);
    }
    let internal: Vec<usize> = n1.internal().chain(n2.internal().map(|v| v + off)).collect();
    let kind = |v: usize| if v < off { n1.vertices[v].kind } else { n2.vertices[v - off].kind };
    let order: Vec<usize> = border.iter().copied().chain(internal.iter().copied()).collect();
    let mut pos = vec![usize::MAX; total];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let ends: Vec<(usize, usize, RationalFunction)> = edges
        .into_iter()
        .flatten()
        .map(|(t, h, w)| (pos[t], pos[h], w))
        .collect();
    if ends.iter().any(|(t, h, _)| *t == usize::MAX || *h == usize::MAX) {
        return Err(err("edge attached to a glued vertex survived"));
    }
    let nb = border.len();
    let bpos = standard_boundary(nb);
    let mut adj = vec![Vec::new(); order.len()];
    for (t, h, _) in &ends {
        adj[*t].push(*h);
        adj[*h].push(*t);
    }
    let fixed: Vec<Option<Point>> = (0..order.len()).map(|k| if k < nb { Some(bpos[k].clone()) } else { None }).collect();
    let layout = tutte_layout(&adj, &fixed).ok_or_else(|| err("layout system is singular"))?;
    let mut vars = n1.vars.clone();
    vars.merge(&n2.vars);
    let mut b = Builder::new(vars);
    for (k, &v) in order.iter().enumerate() {
        match kind(v) {
            Kind::Boundary(role) => {
                b.boundary(&format!("b{}", k + 1), role, layout[k].clone());
            }
            Kind::Internal(c) => {
                b.internal(&format!("v{}", k + 1 - nb), c, layout[k].clone());
            }
        }
    }
    for (i, (t, h, w)) in ends.into_iter().enumerate() {
        b.edge(&format!("e{}", i + 1), t, h, w);
    }
    b.build_valid()
}

/// Glue the sinks of n1 (left side) to the sources of n2 (right side).
pub fn concat_square(n1: &Network, n2: &Network) -> Result<Network, NetworkError> {
    let k = n1.n / 2;
    if n1.n != 2 * k || n2.n != n1.n {
        return Err(err("square networks of equal size expected"));
    }
    concatenate(
        n1,
        n2,
        &Gluing {
            seg1: (k..2 * k).collect(),
            seg2: (0..k).collect(),
        },
    )
}

/// A = M W0 for a network with sources b_1..b_k and sinks b_{k+1}..b_{2k}.
pub fn square_matrix(net: &Network) -> Vec<Vec<RationalFunction>> {
    let m = measurement_matrix(net);
    let k = m.sources.len();
    m.entries
        .iter()
        .map(|row| (0..k).map(|l| row[k - 1 - l].clone()).collect())
        .collect()
}

/// Elementary factors of GL_n.
#[derive(Clone, Debug)]
pub enum Elementary {
    Diag(Vec<RationalFunction>),
    /// 1 + l e_{i,i-1}
    Minus(usize, RationalFunction),
    /// 1 + u e_{i-1,i}
    Plus(usize, RationalFunction),
    /// [[d, 0], [c, 1/d]] in rows i-1, i
    RhoMinus(usize, RationalFunction, RationalFunction),
    /// [[d, c], [0, 1/d]] in rows i-1, i
    RhoPlus(usize, RationalFunction, RationalFunction),
}

impl Elementary {
    pub fn matrix(&self, n: usize) -> Vec<Vec<RationalFunction>> {
        let mut a: Vec<Vec<RationalFunction>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { RationalFunction::one() } else { RationalFunction::zero() }).collect())
            .collect();
        match self {
            Elementary::Diag(d) => {
                for i in 0..n {
                    a[i][i] = d[i].clone();
                }
            }
            Elementary::Minus(i, l) => a[i - 1][i - 2] = l.clone(),
            Elementary::Plus(i, u) => a[i - 2][i - 1] = u.clone(),
            Elementary::RhoMinus(i, c, d) => {
                a[i - 2][i - 2] = d.clone();
                a[i - 1][i - 1] = d.inv().unwrap();
                a[i - 1][i - 2] = c.clone();
            }
            Elementary::RhoPlus(i, c, d) => {
                a[i - 2][i - 2] = d.clone();
                a[i - 1][i - 1] = d.inv().unwrap();
                a[i - 2][i - 1] = c.clone();
            }
        }
        a
    }

    /// Square-layout network with strands 1..n.
    pub fn network(&self, n: usize, vars: VarTable) -> Result<Network, NetworkError> {
        match self {
            Elementary::Diag(d) if d.len() == n => Ok(gen::diag(d.clone(), vars)),
            Elementary::Diag(_) => Err(err("diagonal of the wrong size")),
            Elementary::Minus(i, l) => gen::e_minus(n, *i, l.clone(), vars),
            Elementary::Plus(i, u) => gen::e_plus(n, *i, u.clone(), vars),
            Elementary::RhoMinus(i, c, d) => gen::rho_minus(n, *i, c.clone(), d.clone(), vars),
            Elementary::RhoPlus(i, c, d) => gen::rho_plus(n, *i, c.clone(), d.clone(), vars),
        }
    }
}

/// Concatenate square networks left to right: the matrix is the product in this order.
pub fn chain(nets: &[Network]) -> Result<Network, NetworkError> {
    let mut acc = nets.first().ok_or_else(|| err("empty chain"))?.clone();
    for n in &nets[1..] {
        acc = concat_square(&acc, n)?;
    }
    Ok(acc)
}

/// The six-factor factorization network of a generic element of SL_3.
pub fn generic_sl3() -> (Vec<Elementary>, VarTable) {
    let names: Vec<String> = (1..=6).flat_map(|i| [format!("c{}", i), format!("d{}", i)]).collect();
    let vars = VarTable::from_names(names.iter());
    let v = |s: String| RationalFunction::var(Var::new(&s));
    let f = [(false, 2), (false, 3), (false, 2), (true, 2), (true, 3), (true, 2)];
    let factors = f
        .iter()
        .enumerate()
        .map(|(k, &(plus, i))| {
            let (c, d) = (v(format!("c{}", k + 1)), v(format!("d{}", k + 1)));
            if plus {
                Elementary::RhoPlus(i, c, d)
            } else {
                Elementary::RhoMinus(i, c, d)
            }
        })
        .collect();
    (factors, vars)
}

/// Reflect in the vertical axis, keeping the boundary counterclockwise.
pub fn mirror(net: &Network) -> Network {
    let n = net.n;
    let mut out = net.clone();
    let map = |v: usize| if v < n { n - 1 - v } else { v };
    for v in 0..net.vertices.len() {
        let mut vx = net.vertices[v].clone();
        vx.pos = Point::new(-vx.pos.x.clone(), vx.pos.y.clone());
        out.vertices[map(v)] = vx;
    }
    for e in out.edges.iter_mut() {
        e.tail = map(e.tail);
        e.head = map(e.head);
    }
    out
}

fn strand_of(id: &str) -> Option<usize> {
    id.strip_prefix('h')?.trim_end_matches(['a', 'b']).parse().ok()
}

/// N o N(A): the strands of N(A) through the sources of N run backwards with inverted weights.
pub fn act_elementary(net: &Network, a: &Elementary) -> Result<Network, NetworkError> {
    let n = net.n;
    let mut vars = net.vars.clone();
    for row in a.matrix(n) {
        for x in row {
            for v in x.vars() {
                vars.register(&v.name());
            }
        }
    }
    let mut na = mirror(&a.network(n, vars)?);
    // after mirroring, strand s starts at index 2n - s and ends at index s - 1
    let sources = net.sources();
    for e in na.edges.iter_mut() {
        let Some(s) = strand_of(&e.id) else { continue };
        if sources.contains(&(s - 1)) {
            std::mem::swap(&mut e.tail, &mut e.head);
            e.weight = e.weight.inv().map_err(|x| NetworkError::Build(x.to_string()))?;
        }
    }
    for &i in &sources {
        let s = i + 1;
        for v in [2 * n - s, s - 1] {
            if let Kind::Boundary(r) = na.vertices[v].kind {
                na.vertices[v].kind = Kind::Boundary(if r == Role::Source { Role::Sink } else { Role::Source });
            }
        }
    }
    concatenate(
        net,
        &na,
        &Gluing {
            seg1: (0..n).collect(),
            seg2: (n..2 * n).collect(),
        },
    )
}
