use std::collections::HashMap;
use std::fmt;

use exprcore::{parse_expr, RationalFunction, Var, VarTable};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{angle_cmp, fmt_q, parse_q, Point};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Source,
    Sink,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Kind {
    Boundary(Role),
    Internal(Color),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vertex {
    pub id: String,
    pub kind: Kind,
    pub pos: Point,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
    pub weight: RationalFunction,
}

/// Directed network in a disk. Vertices `0..n` are the boundary vertices
/// b_1..b_n in counterclockwise order; the rest are internal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Network {
    pub n: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub vars: VarTable,
}

#[derive(Debug, Error)]
pub enum NetworkError {
    #[error("json: {0}")]
    Json(String),
    #[error("field n = {n} but {len} boundary vertices given")]
    BoundaryCount { n: usize, len: usize },
    #[error("duplicate id '{0}'")]
    DuplicateId(String),
    #[error("edge '{edge}': unknown vertex '{vertex}'")]
    UnknownVertex { edge: String, vertex: String },
    #[error("bad rational coordinate '{0}'")]
    BadRational(String),
    #[error("edge '{edge}': weight: {err}")]
    Weight { edge: String, err: exprcore::ExprError },
    #[error("{0}")]
    Build(String),
}

impl Network {
    pub fn is_boundary(&self, v: usize) -> bool {
        v < self.n
    }

    pub fn role(&self, v: usize) -> Option<Role> {
        match self.vertices[v].kind {
            Kind::Boundary(r) => Some(r),
            _ => None,
        }
    }

    pub fn color(&self, v: usize) -> Option<Color> {
        match self.vertices[v].kind {
            Kind::Internal(c) => Some(c),
            _ => None,
        }
    }

    pub fn pos(&self, v: usize) -> &Point {
        &self.vertices[v].pos
    }

    pub fn internal(&self) -> std::ops::Range<usize> {
        self.n..self.vertices.len()
    }

    /// Boundary indices of sources, increasing.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.role(v) == Some(Role::Source)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.role(v) == Some(Role::Sink)).collect()
    }

    pub fn out_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].tail == v).collect()
    }

    pub fn in_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].head == v).collect()
    }

    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].tail == v || self.edges[e].head == v)
            .collect()
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let ed = &self.edges[e];
        if ed.tail == v {
            ed.head
        } else {
            ed.tail
        }
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn edge_by_ends(&self, tail: usize, head: usize) -> Option<usize> {
        self.edges.iter().position(|e| e.tail == tail && e.head == head)
    }

    /// Direction of edge e seen from its endpoint v.
    pub fn direction_from(&self, e: usize, v: usize) -> Point {
        self.pos(self.other_end(e, v)).sub(self.pos(v))
    }

    /// Incident edges of v in counterclockwise order of their directions.
    pub fn rotation(&self, v: usize) -> Vec<usize> {
        let mut es = self.incident(v);
        es.sort_by(|&a, &b| angle_cmp(&self.direction_from(a, v), &self.direction_from(b, v)));
        es
    }

    /// Counterclockwise rotation at v starting with e0.
    pub fn rotation_from(&self, v: usize, e0: usize) -> Vec<usize> {
        let r = self.rotation(v);
        let k = r.iter().position(|&e| e == e0).expect("edge not incident");
        r[k..].iter().chain(r[..k].iter()).copied().collect()
    }

    pub fn weights(&self) -> Vec<RationalFunction> {
        self.edges.iter().map(|e| e.weight.clone()).collect()
    }

    pub fn with_weights(&self, weights: Vec<RationalFunction>, vars: VarTable) -> Network {
        let mut net = self.clone();
        for (e, w) in net.edges.iter_mut().zip(weights) {
            e.weight = w;
        }
        net.vars = vars;
        net
    }

    /// Name of the free weight variable used for edge e by `symbolic`.
    pub fn symbolic_name(&self, e: usize) -> String {
        let id = &self.edges[e].id;
        match id.strip_prefix('e') {
            Some(d) if !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()) => format!("w{}", d),
            _ => format!("w_{}", id),
        }
    }

    /// Same network with one independent variable per edge.
    pub fn symbolic(&self) -> Network {
        let mut vars = VarTable::new();
        let ws = (0..self.edges.len())
            .map(|e| RationalFunction::var(vars.register(&self.symbolic_name(e))))
            .collect();
        self.with_weights(ws, vars)
    }

    pub fn symbolic_vars(&self) -> Vec<Var> {
        (0..self.edges.len()).map(|e| Var::new(&self.symbolic_name(e))).collect()
    }

    pub fn to_json(&self) -> String {
        let f = NetFile {
            n: self.n,
            boundary: (0..self.n)
                .map(|v| BFile {
                    id: self.vertices[v].id.clone(),
                    role: self.role(v).unwrap(),
                    pos: pos_strings(&self.vertices[v].pos),
                })
                .collect(),
            internal: self
                .internal()
                .map(|v| IFile {
                    id: self.vertices[v].id.clone(),
                    color: self.color(v).unwrap(),
                    pos: pos_strings(&self.vertices[v].pos),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EFile {
                    id: e.id.clone(),
                    from: self.vertices[e.tail].id.clone(),
                    to: self.vertices[e.head].id.clone(),
                    weight: e.weight.to_string(),
                })
                .collect(),
            variables: self.vars.names(),
        };
        serde_json::to_string_pretty(&f).unwrap() + "\n"
    }

    pub fn from_json(text: &str) -> Result<Network, NetworkError> {
        let f: NetFile = serde_json::from_str(text).map_err(|e| NetworkError::Json(e.to_string()))?;
        if f.boundary.len() != f.n {
            return Err(NetworkError::BoundaryCount {
                n: f.n,
                len: f.boundary.len(),
            });
        }
        let vars = VarTable::from_names(f.variables.iter());
        let mut vertices = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut push = |id: &str, kind: Kind, pos: &[String; 2], vertices: &mut Vec<Vertex>| {
            if index.insert(id.to_string(), vertices.len()).is_some() {
                return Err(NetworkError::DuplicateId(id.to_string()));
            }
            let x = parse_q(&pos[0]).ok_or_else(|| NetworkError::BadRational(pos[0].clone()))?;
            let y = parse_q(&pos[1]).ok_or_else(|| NetworkError::BadRational(pos[1].clone()))?;
            vertices.push(Vertex {
                id: id.to_string(),
                kind,
                pos: Point::new(x, y),
            });
            Ok(())
        };
        for b in &f.boundary {
            push(&b.id, Kind::Boundary(b.role), &b.pos, &mut vertices)?;
        }
        for i in &f.internal {
            push(&i.id, Kind::Internal(i.color), &i.pos, &mut vertices)?;
        }
        let mut edges = Vec::new();
        let mut edge_ids = std::collections::HashSet::new();
        for e in &f.edges {
            if !edge_ids.insert(e.id.clone()) {
                return Err(NetworkError::DuplicateId(e.id.clone()));
            }
            let look = |id: &str| {
                index.get(id).copied().ok_or_else(|| NetworkError::UnknownVertex {
                    edge: e.id.clone(),
                    vertex: id.to_string(),
                })
            };
            let weight = parse_expr(&e.weight, &vars).map_err(|err| NetworkError::Weight {
                edge: e.id.clone(),
                err,
            })?;
            edges.push(Edge {
                id: e.id.clone(),
                tail: look(&e.from)?,
                head: look(&e.to)?,
                weight,
            });
        }
        Ok(Network {
            n: f.n,
            vertices,
            edges,
            vars,
        })
    }
}

fn pos_strings(p: &Point) -> [String; 2] {
    [fmt_q(&p.x), fmt_q(&p.y)]
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetFile {
    n: usize,
    boundary: Vec<BFile>,
    internal: Vec<IFile>,
    edges: Vec<EFile>,
    variables: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BFile {
    id: String,
    role: Role,
    pos: [String; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IFile {
    id: String,
    color: Color,
    pos: [String; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EFile {
    id: String,
    from: String,
    to: String,
    weight: String,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Role::Source { "source" } else { "sink" })
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Color::White { "white" } else { "black" })
    }
}

/// Edges that lie on no path from a source to a sink.
pub fn edges_off_paths(net: &Network) -> Vec<usize> {
    let nv = net.vertices.len();
    let reach = |starts: Vec<usize>, forward: bool| {
        let mut seen = vec![false; nv];
        let mut stack = starts;
        for &v in &stack {
            seen[v] = true;
        }
        while let Some(v) = stack.pop() {
            for e in &net.edges {
                let (a, b) = if forward { (e.tail, e.head) } else { (e.head, e.tail) };
                if a == v && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen
    };
    let from_src = reach(net.sources(), true);
    let to_sink = reach(net.sinks(), false);
    (0..net.edges.len())
        .filter(|&e| !(from_src[net.edges[e].tail] && to_sink[net.edges[e].head]))
        .collect()
}
