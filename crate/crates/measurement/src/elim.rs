//! Vertex-splitting elimination, one source row at a time.

use std::collections::BTreeMap;

use exprcore::{Polynomial, RationalFunction, Q};
use num_traits::{One, Zero};

use network::{Color, Network, Role};

/// Values the elimination can run over: a field-like structure where only
/// the operations of a subtraction-free expression are needed.
pub trait Value: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Value for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn add(&self, o: &Self) -> Self {
        RationalFunction::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RationalFunction::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        RationalFunction::div(self, o).expect("vanishing denominator during elimination")
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl Value for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Numerator/denominator pair kept without any cancellation.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl Value for Frac {
    fn zero() -> Self {
        Frac {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }
    fn one() -> Self {
        Frac {
            num: Polynomial::one(),
            den: Polynomial::one(),
        }
    }
    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Frac {
                num: self.num.add(&o.num),
                den: self.den.clone(),
            };
        }
        Frac {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Frac {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
    }
    fn div(&self, o: &Self) -> Self {
        Frac {
            num: self.num.mul(&o.den),
            den: self.den.mul(&o.num),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Node {
    Source,
    Sink,
    White,
    Black,
}

/// Mutable copy of the graph; edges keep their weights as they are re-attached.
#[derive(Clone)]
struct State {
    node: Vec<Node>,
    ends: Vec<(usize, usize)>,
}

impl State {
    fn from(net: &Network) -> State {
        let node = (0..net.vertices.len())
            .map(|v| match (net.role(v), net.color(v)) {
                (Some(Role::Source), _) => Node::Source,
                (Some(Role::Sink), _) => Node::Sink,
                (_, Some(Color::White)) => Node::White,
                _ => Node::Black,
            })
            .collect();
        State {
            node,
            ends: net.edges.iter().map(|e| (e.tail, e.head)).collect(),
        }
    }

    fn outs(&self, v: usize) -> Vec<usize> {
        (0..self.ends.len()).filter(|&e| self.ends[e].0 == v).collect()
    }

    fn ins(&self, v: usize) -> Vec<usize> {
        (0..self.ends.len()).filter(|&e| self.ends[e].1 == v).collect()
    }

    fn fresh(&mut self, kind: Node) -> usize {
        self.node.push(kind);
        self.node.len() - 1
    }

    /// Row of measurements from source s, keyed by sink vertex.
    fn row<T: Value>(&self, s: usize, w: &[T]) -> BTreeMap<usize, T> {
        let outs = self.outs(s);
        let mut out = BTreeMap::new();
        let Some(&e0) = outs.first() else {
            return out;
        };
        let v = self.ends[e0].1;
        match self.node[v] {
            Node::Sink => {
                out.insert(v, w[e0].clone());
            }
            Node::White => {
                let mut st = self.clone();
                st.ends[e0] = (usize::MAX, usize::MAX);
                let mut starts = Vec::new();
                for e in self.outs(v) {
                    let s2 = st.fresh(Node::Source);
                    st.ends[e].0 = s2;
                    starts.push(s2);
                }
                for s2 in starts {
                    for (j, x) in st.row(s2, w) {
                        let x = w[e0].mul(&x);
                        let cur = out.remove(&j).unwrap_or_else(T::zero);
                        out.insert(j, cur.add(&x));
                    }
                }
            }
            Node::Black => {
                let mut st = self.clone();
                st.ends[e0] = (usize::MAX, usize::MAX);
                let eplus = self.outs(v)[0];
                let eminus = self.ins(v).into_iter().find(|&e| e != e0).expect("black vertex with one input");
                let iu = st.fresh(Node::Source);
                let ju = st.fresh(Node::Sink);
                st.ends[eplus].0 = iu;
                st.ends[eminus].1 = ju;
                let r = st.row(iu, w);
                let den = match r.get(&ju) {
                    Some(x) => T::one().add(x),
                    None => T::one(),
                };
                for (j, x) in r {
                    if j != ju {
                        out.insert(j, w[e0].mul(&x).div(&den));
                    }
                }
            }
            Node::Source => unreachable!("source feeding a source"),
        }
        out.retain(|_, x| !x.is_zero());
        out
    }
}

/// Measurements from every source to every sink, rows in source order and
/// columns in sink order, with the given edge values.
pub fn measurement_rows<T: Value>(net: &Network, w: &[T]) -> Vec<Vec<T>> {
    let st = State::from(net);
    let sinks = net.sinks();
    net.sources()
        .into_iter()
        .map(|i| {
            let r = st.row(i, w);
            sinks.iter().map(|j| r.get(j).cloned().unwrap_or_else(T::zero)).collect()
        })
        .collect()
}

/// Measurements from one source, indexed by sink position.
pub fn measurement_row<T: Value>(net: &Network, i: usize, w: &[T]) -> Vec<T> {
    let r = State::from(net).row(i, w);
    net.sinks().iter().map(|j| r.get(j).cloned().unwrap_or_else(T::zero)).collect()
}
