//! The hexagonal network N(k,m), weighted so that its labelled face weights are free variables.

use std::collections::VecDeque;

use exprcore::{RationalFunction as RF, Var, VarTable};
use faces::{enumerate_faces, face_weights, FaceSet, Step};
use network::gen::Builder;
use network::geom::{standard_boundary, tutte_layout};
use network::{Color, Network, Role};

use crate::ClusterError;

pub struct HexNetwork {
    pub k: usize,
    pub m: usize,
    pub net: Network,
    pub faces: FaceSet,
    /// label (i, j), i in [1,k], j in [k+1,n], of each face; one face has none
    pub labels: Vec<Option<(usize, usize)>>,
}

impl HexNetwork {
    pub fn n(&self) -> usize {
        self.k + self.m
    }

    pub fn face(&self, i: usize, j: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == Some((i, j)))
    }

    pub fn face_var(i: usize, j: usize) -> Var {
        Var::new(&format!("y{}_{}", i, j))
    }

    pub fn y(i: usize, j: usize) -> RF {
        RF::var(Self::face_var(i, j))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Node {
    Bnd(usize),
    B(usize, usize),
    W(usize, usize),
}

/// Rows r = 1..k carry black B(r,c) then white W(r,c) for columns c = 1..m from left to
/// right; whites feed the black of the same column one row up, or a sink from row 1.
/// Column c ends at sink b_(n+1-c). Degree-two vertices of the bottom row and the right
/// column are already merged away.
fn skeleton(k: usize, m: usize) -> (Vec<Node>, Vec<(Node, Node)>) {
    let n = k + m;
    let sink = |c: usize| Node::Bnd(n - c);
    let mut nodes: Vec<Node> = (0..n).map(Node::Bnd).collect();
    for r in 1..=k {
        for c in 1..=m {
            if r < k {
                nodes.push(Node::B(r, c));
            }
            if c < m {
                nodes.push(Node::W(r, c));
            }
        }
    }
    let up = |r: usize, c: usize| if r == 1 { sink(c) } else { Node::B(r - 1, c) };
    let mut edges = Vec::new();
    for r in 1..k {
        edges.push((Node::Bnd(r - 1), Node::B(r, 1)));
        for c in 1..m {
            edges.push((Node::B(r, c), Node::W(r, c)));
            edges.push((Node::W(r, c), Node::B(r, c + 1)));
        }
        edges.push((Node::B(r, m), up(r, m)));
    }
    edges.push((Node::Bnd(k - 1), Node::W(k, 1)));
    for c in 1..m - 1 {
        edges.push((Node::W(k, c), Node::W(k, c + 1)));
    }
    edges.push((Node::W(k, m - 1), Node::B(k - 1, m)));
    for r in 1..=k {
        for c in 1..m {
            edges.push((Node::W(r, c), up(r, c)));
        }
    }
    (nodes, edges)
}

/// Edge running right out of column c of row r (c = 0: out of the source); the face below
/// it is labelled (r+1, n-c) and the face above it, for r = 1, is (1, n-c).
fn row_edge(edges: &[(Node, Node)], r: usize, c: usize) -> usize {
    let from = if c == 0 { Node::Bnd(r - 1) } else { Node::W(r, c) };
    let to = Node::B(r, c + 1);
    edges.iter().position(|&e| e == (from, to)).expect("row edge present")
}

pub fn build_hex_network(k: usize, m: usize) -> Result<HexNetwork, ClusterError> {
    if k < 2 || m < 2 {
        return Err(ClusterError::Size(k, m));
    }
    let n = k + m;
    // interned in label order so that rendering does not depend on traversal order
    let names: Vec<String> = (1..=k)
        .flat_map(|i| (k + 1..=n).map(move |j| format!("y{}_{}", i, j)))
        .collect();
    let vars = VarTable::from_names(names.iter());
    let (nodes, edges) = skeleton(k, m);
    let idx = |v: Node| nodes.iter().position(|&u| u == v).unwrap();
    let mut adj = vec![Vec::new(); nodes.len()];
    for &(t, h) in &edges {
        adj[idx(t)].push(idx(h));
        adj[idx(h)].push(idx(t));
    }
    let bpos = standard_boundary(n);
    let fixed: Vec<_> = (0..nodes.len()).map(|v| if v < n { Some(bpos[v].clone()) } else { None }).collect();
    let pos = tutte_layout(&adj, &fixed).ok_or(ClusterError::Layout)?;

    let mut g = Builder::new(VarTable::new());
    for (v, node) in nodes.iter().enumerate() {
        match *node {
            Node::Bnd(b) => {
                let role = if b < k { Role::Source } else { Role::Sink };
                g.boundary(&format!("b{}", b + 1), role, pos[v].clone());
            }
            Node::B(r, c) => {
                g.internal(&format!("B{}_{}", r, c), Color::Black, pos[v].clone());
            }
            Node::W(r, c) => {
                g.internal(&format!("W{}_{}", r, c), Color::White, pos[v].clone());
            }
        }
    }
    for (e, &(t, h)) in edges.iter().enumerate() {
        g.edge(&format!("e{}", e + 1), idx(t), idx(h), RF::one());
    }
    let net = g.build_valid().map_err(|e| ClusterError::Invalid(e.to_string()))?;
    let fs = enumerate_faces(&net).map_err(|e| ClusterError::Invalid(e.to_string()))?;

    let mut labels = vec![None; fs.len()];
    for c in 0..m {
        labels[fs.left_of(row_edge(&edges, 1, c))] = Some((1, n - c));
        for r in 1..k {
            labels[fs.right_of(row_edge(&edges, r, c))] = Some((r + 1, n - c));
        }
    }
    let unlabelled: Vec<usize> = (0..fs.len()).filter(|&f| labels[f].is_none()).collect();
    if unlabelled.len() != 1 {
        return Err(ClusterError::Invalid(format!("{} unlabelled faces", unlabelled.len())));
    }

    let weights = face_parametrization(&net, &fs, &labels, unlabelled[0])?;
    let net = net.with_weights(weights, vars);
    Ok(HexNetwork {
        k,
        m,
        net,
        faces: fs,
        labels,
    })
}

/// Edge weights, Laurent monomials in the labelled face variables, such that each
/// labelled face weight is its variable: weight 1 off a spanning tree of the dual graph,
/// tree edges solved from the leaves towards the root face.
fn face_parametrization(net: &Network, fs: &FaceSet, labels: &[Option<(usize, usize)>], root: usize) -> Result<Vec<RF>, ClusterError> {
    let nf = fs.len();
    let mut parent: Vec<Option<usize>> = vec![None; nf];
    let mut seen = vec![false; nf];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(f) = queue.pop_front() {
        order.push(f);
        for e in 0..net.edges.len() {
            let (a, b) = (fs.left_of(e), fs.right_of(e));
            let other = if a == f { b } else if b == f { a } else { continue };
            if !seen[other] {
                seen[other] = true;
                parent[other] = Some(e);
                queue.push_back(other);
            }
        }
    }
    let mut w: Vec<Option<RF>> = vec![None; net.edges.len()];
    let tree: Vec<bool> = (0..net.edges.len()).map(|e| parent.contains(&Some(e))).collect();
    for e in 0..net.edges.len() {
        if !tree[e] {
            w[e] = Some(RF::one());
        }
    }
    for &f in order.iter().rev() {
        let Some(pe) = parent[f] else { continue };
        let (i, j) = labels[f].expect("non-root faces are labelled");
        let mut known = RF::one();
        let mut gamma = 0;
        for s in &fs.faces[f].steps {
            if let Step::Edge { edge, gamma: g } = *s {
                if edge == pe {
                    gamma = g;
                } else {
                    let x = w[edge].as_ref().expect("child edges solved first");
                    known = if g > 0 { known.mul(x) } else { known.div(x).map_err(|_| ClusterError::DivisionByZero)? };
                }
            }
        }
        let target = HexNetwork::y(i, j).div(&known).map_err(|_| ClusterError::DivisionByZero)?;
        w[pe] = Some(if gamma > 0 { target } else { target.inv().map_err(|_| ClusterError::DivisionByZero)? });
    }
    let w: Vec<RF> = w.into_iter().map(|x| x.expect("all edges weighted")).collect();
    debug_assert!({
        let probe = net.with_weights(w.clone(), net.vars.clone());
        face_weights(&probe, fs)
            .iter()
            .zip(labels)
            .all(|(yf, l)| l.map_or(true, |(i, j)| yf.equals(&HexNetwork::y(i, j))))
    });
    Ok(w)
}
