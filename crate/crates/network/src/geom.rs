use std::cmp::Ordering;
use std::fmt;

use exprcore::{q, Q};
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn ratio(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point::new(q(xn, xd), q(yn, yd))
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, c: &Q) -> Point {
        Point::new(&self.x * c, &self.y * c)
    }

    pub fn mid(&self, o: &Point) -> Point {
        self.add(o).scale(&q(1, 2))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Rotated a quarter turn clockwise.
    pub fn rot_cw(&self) -> Point {
        Point::new(self.y.clone(), -&self.x)
    }

    pub fn rot_ccw(&self) -> Point {
        Point::new(-&self.y, self.x.clone())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn cross(a: &Point, b: &Point) -> Q {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &Point, b: &Point) -> Q {
    &a.x * &b.x + &a.y * &b.y
}

/// Sign of the turn a -> b -> c: positive for a left turn.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    cross(&b.sub(a), &c.sub(a)).cmp(&Q::zero())
}

/// p lies on the closed segment [a, b].
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient(a, b, p) == Ordering::Equal
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Closed segments [a,b] and [c,d] share a point.
pub fn segments_meet(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if d1 != Ordering::Equal && d2 != Ordering::Equal && d1 != d2 && d3 != Ordering::Equal && d4 != Ordering::Equal && d3 != d4 {
        return true;
    }
    on_segment(a, c, d) || on_segment(b, c, d) || on_segment(c, a, b) || on_segment(d, a, b)
}

fn half(p: &Point) -> u8 {
    if p.y.is_positive() || (p.y.is_zero() && p.x.is_positive()) {
        0
    } else {
        1
    }
}

/// Counterclockwise angular order of nonzero direction vectors starting at angle 0.
pub fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    Q::zero().cmp(&cross(a, b))
}

/// A rational point on the unit circle close to angle theta.
pub fn circle_point(theta: f64) -> Point {
    let mut th = theta.rem_euclid(2.0 * std::f64::consts::PI);
    if th > std::f64::consts::PI {
        th -= 2.0 * std::f64::consts::PI;
    }
    let flip = th.abs() > std::f64::consts::FRAC_PI_2;
    if flip {
        th -= std::f64::consts::PI * th.signum();
    }
    let t = ((th / 2.0).tan() * 200.0).round() as i64;
    let tq = q(t, 200);
    let one = Q::one();
    let den = &one + &tq * &tq;
    let p = Point::new((&one - &tq * &tq) / &den, (&tq + &tq) / &den);
    if flip {
        p.scale(&-one)
    } else {
        p
    }
}

/// n points counterclockwise on the unit circle, the first just past the bottom.
pub fn standard_boundary(n: usize) -> Vec<Point> {
    (0..n)
        .map(|j| {
            let th = -std::f64::consts::FRAC_PI_2
                + 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / n as f64;
            circle_point(th)
        })
        .collect()
}

/// Solve a dense linear system exactly; None if singular.
pub fn solve(mut a: Vec<Vec<Q>>, mut rhs: Vec<Vec<Q>>) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        rhs.swap(col, piv);
        let inv = Q::one() / &a[col][col];
        for c in col..n {
            a[col][c] = &a[col][c] * &inv;
        }
        for c in 0..rhs[col].len() {
            rhs[col][c] = &rhs[col][c] * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
                for c in 0..rhs[r].len() {
                    let t = &f * &rhs[col][c];
                    rhs[r][c] -= t;
                }
            }
        }
    }
    Some(rhs)
}

/// Barycentric (Tutte) positions of the free vertices given fixed ones.
/// `adj` lists neighbours of every vertex; `fixed[v]` holds the pinned position.
pub fn tutte_layout(adj: &[Vec<usize>], fixed: &[Option<Point>]) -> Option<Vec<Point>> {
    let free: Vec<usize> = (0..adj.len()).filter(|&v| fixed[v].is_none()).collect();
    let mut idx = vec![usize::MAX; adj.len()];
    for (k, &v) in free.iter().enumerate() {
        idx[v] = k;
    }
    let m = free.len();
    let mut a = vec![vec![Q::zero(); m]; m];
    let mut rhs = vec![vec![Q::zero(), Q::zero()]; m];
    for (k, &v) in free.iter().enumerate() {
        a[k][k] = Q::from_integer(adj[v].len().into());
        for &u in &adj[v] {
            match &fixed[u] {
                Some(p) => {
                    rhs[k][0] += &p.x;
                    rhs[k][1] += &p.y;
                }
                None => a[k][idx[u]] -= Q::one(),
            }
        }
    }
    let sol = solve(a, rhs)?;
    Some(
        (0..adj.len())
            .map(|v| match &fixed[v] {
                Some(p) => p.clone(),
                None => {
                    let s = &sol[idx[v]];
                    Point::new(s[0].clone(), s[1].clone())
                }
            })
            .collect(),
    )
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: num_bigint::BigInt = a.trim().parse().ok()?;
            let b: num_bigint::BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Q::new(a, b))
            }
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}
