use std::collections::HashMap;

use exprcore::{parse_with, q, RationalFunction as RF, Var, VarTable, Q};
use measurement::grass::{mat_mul, subsets};
use measurement::oracle::measurement_series;
use measurement::*;
use network::gen::{self, Builder};
use network::geom::{standard_boundary, Point};
use network::{Kind, Network, Role};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(text: &str, names: &[&str]) -> RF {
    parse_with(text, names).unwrap()
}

fn w_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("w{}", i)).collect()
}

fn parse_w(text: &str, k: usize) -> RF {
    let names = w_names(k);
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    p(text, &refs)
}

fn random_nets(seed: u64, count: usize, max_internal: usize, max_n: usize) -> Vec<Network> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| gen::random_network(&mut rng, max_internal, max_n)).collect()
}

fn random_point<R: Rng>(rng: &mut R, vars: &[Var]) -> HashMap<Var, Q> {
    vars.iter()
        .map(|&v| {
            let mut n = rng.gen_range(1..=5i64);
            if rng.gen_bool(0.3) {
                n = -n;
            }
            (v, q(n, rng.gen_range(1..=4)))
        })
        .collect()
}

#[test]
fn fig1_matrix_entries() {
    let net = gen::fig1_symbolic();
    let m = measurement_matrix(&net);
    assert_eq!(m.sources, vec![0, 1]);
    assert_eq!(m.sinks, vec![2, 3]);
    let d = "(1+w3*w7*w10*w11)";
    let expect = [
        [format!("w3*w4*w5*w6*w10/{d}"), format!("w3*w5*w6*w8*w10*w11/{d}")],
        [format!("w1*w3*w4*(w2+w6*w9*w10)/{d}"), format!("w1*w3*w8*w11*(w2+w6*w9*w10)/{d}")],
    ];
    for r in 0..2 {
        for c in 0..2 {
            assert_eq!(m.entries[r][c], parse_w(&expect[r][c], 11), "entry ({}, {})", r + 1, c + 1);
        }
    }
    assert_eq!(boundary_measurement(&net, 0, 2), m.entries[0][0]);
    assert_eq!(boundary_measurement(&net, 1, 3), m.entries[1][1]);
}

#[test]
fn reference_entry_without_w10_is_not_the_measurement() {
    // the reference (1,2) entry lacks w10; the path sum needs it
    let net = gen::fig1_symbolic();
    let reference = parse_w("w3*w5*w6*w8*w11/(1+w3*w7*w10*w11)", 11);
    assert_ne!(boundary_measurement(&net, 0, 3), reference);
}

#[test]
fn fig1_golden_text() {
    let out = measurement_matrix(&gen::fig1_symbolic()).to_string();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l.split('\t').count() == 2));
    assert_eq!(out, measurement_matrix(&gen::fig1_symbolic()).to_string());
}

#[test]
fn single_edge_and_unreachable_sink() {
    let vars = VarTable::from_names(["w", "v"]);
    let w = RF::var(Var::new("w"));
    let net = gen::chord(w.clone(), vars.clone());
    assert_eq!(boundary_measurement(&net, 0, 1), w);
    // two parallel chords b1 -> b2 and b4 -> b3
    let b = standard_boundary(4);
    let mut g = Builder::new(vars);
    let b1 = g.boundary("b1", Role::Source, b[0].clone());
    let b2 = g.boundary("b2", Role::Sink, b[1].clone());
    let b3 = g.boundary("b3", Role::Sink, b[2].clone());
    let b4 = g.boundary("b4", Role::Source, b[3].clone());
    g.edge("e1", b1, b2, w.clone());
    g.edge("e2", b4, b3, RF::var(Var::new("v")));
    let net = g.build_valid().unwrap();
    assert!(boundary_measurement(&net, 0, 2).is_zero());
    assert!(boundary_measurement(&net, 3, 1).is_zero());
    assert_eq!(boundary_measurement(&net, 0, 1), w);
}

#[test]
fn diagonal_network_gives_diagonal_matrix() {
    let vars = VarTable::from_names(["d1", "d2", "d3"]);
    let ds: Vec<RF> = vars.vars().iter().map(|&v| RF::var(v)).collect();
    let net = gen::diag(ds.clone(), vars);
    let a = square_matrix(&net);
    for i in 0..3 {
        for j in 0..3 {
            let e = if i == j { ds[i].clone() } else { RF::zero() };
            assert_eq!(a[i][j], e);
        }
    }
}

#[test]
fn g24_extended_matrix() {
    let x = extended_matrix(&gen::g24());
    let d = "(1+w2*w4*w5*w7)";
    let expect = [
        ["1".to_string(), format!("w1*w4*w6/{d}"), "0".to_string(), format!("-w1*w3*w4*w5*w7/{d}")],
        ["0".to_string(), format!("w2*w4*w5*w6*w8/{d}"), "1".to_string(), format!("w3*w5*w8/{d}")],
    ];
    for r in 0..2 {
        for c in 0..4 {
            assert_eq!(x.matrix[r][c], parse_w(&expect[r][c], 8), "({}, {})", r + 1, c + 1);
        }
    }
}

#[test]
fn consecutive_sources_give_alternating_signs() {
    let x = extended_matrix(&gen::fig1_symbolic());
    let m = measurement_matrix(&gen::fig1_symbolic());
    // source b1 has b2 between itself and both sinks
    assert_eq!(x.matrix[0][2], m.entries[0][0].neg());
    assert_eq!(x.matrix[0][3], m.entries[0][1].neg());
    assert_eq!(x.matrix[1][2], m.entries[1][0]);
}

fn check_minor_property(net: &Network) {
    let x = extended_matrix(net);
    let m = measurement_matrix(net);
    for (pi, &ip) in m.sources.iter().enumerate() {
        for (qi, &j) in m.sinks.iter().enumerate() {
            let mut cols: Vec<usize> = m.sources.iter().map(|&i| if i == ip { j } else { i }).collect();
            cols.sort();
            assert_eq!(x.minor(&cols), m.entries[pi][qi]);
        }
    }
    assert!(x.minor(&m.sources).is_one());
}

#[test]
fn minor_property() {
    check_minor_property(&gen::fig1_symbolic());
    check_minor_property(&gen::g24());
    for net in random_nets(11, 10, 6, 6) {
        check_minor_property(&net);
    }
}

#[test]
fn g24_plucker_coordinates() {
    let x = extended_matrix(&gen::g24());
    let pv = plucker(&x);
    assert_eq!(pv.coords.len(), 6);
    assert!(pv.get(&[0, 2]).is_one());
    // x_{12} is the minor on the first two columns
    assert_eq!(pv.get(&[0, 1]), x.matrix[1][1]);
    assert_eq!(pv.get(&[1, 0]), x.matrix[1][1].neg());
    let r = short_plucker_residuals(&pv);
    assert_eq!(r.len(), 1);
    assert!(r[0].is_zero());
}

#[test]
fn short_plucker_relations_on_random_networks() {
    for net in random_nets(5, 8, 6, 6) {
        let pv = plucker(&extended_matrix(&net));
        assert!(pv.get(&net.sources()).is_one());
        assert!(short_plucker_residuals(&pv).iter().all(|r| r.is_zero()));
    }
}

fn check_oracle(net: &Network, rng: &mut ChaCha8Rng, order: usize) {
    let vars: Vec<Var> = net.edges.iter().flat_map(|e| e.weight.vars()).collect();
    let pt = random_point(rng, &vars);
    for &i in &net.sources() {
        for &j in &net.sinks() {
            let a = path_sum_oracle(net, i, j, order, &pt);
            let b = measurement_series(net, i, j, order, &pt);
            assert_eq!(a.coeffs, b.coeffs, "M({}, {})", i + 1, j + 1);
        }
    }
}

#[test]
fn oracle_matches_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    check_oracle(&gen::fig1_symbolic(), &mut rng, 12);
    check_oracle(&gen::g24(), &mut rng, 12);
    for net in random_nets(17, 20, 6, 5) {
        check_oracle(&net, &mut rng, 12);
    }
}

#[test]
fn cycle_contributions_alternate() {
    let net = gen::fig1_symbolic();
    let pt: HashMap<Var, Q> = net.symbolic_vars().into_iter().map(|v| (v, q(1, 1))).collect();
    let s = path_sum_oracle(&net, 0, 2, 13, &pt);
    assert_eq!(s.coeffs[5], q(1, 1));
    assert_eq!(s.coeffs[9], q(-1, 1));
    assert_eq!(s.coeffs[13], q(1, 1));
}

#[test]
fn acyclic_oracle_is_exact() {
    let vars = VarTable::from_names(["l", "u"]);
    let l = RF::var(Var::new("l"));
    let u = RF::var(Var::new("u"));
    let net = concat_square(&gen::e_minus(2, 2, l, vars.clone()).unwrap(), &gen::e_plus(2, 2, u, vars).unwrap()).unwrap();
    let pt: HashMap<Var, Q> = [(Var::new("l"), q(2, 1)), (Var::new("u"), q(3, 1))].into_iter().collect();
    let m = measurement_matrix(&net);
    for (pi, &i) in m.sources.iter().enumerate() {
        for (qi, &j) in m.sinks.iter().enumerate() {
            let s = path_sum_oracle(&net, i, j, net.edges.len(), &pt);
            let total: Q = s.coeffs.iter().sum();
            assert_eq!(total, m.entries[pi][qi].eval(&pt).unwrap());
        }
    }
}

fn nonnegative(p: &exprcore::Polynomial) -> bool {
    p.terms().all(|(_, c)| !c.is_negative())
}

#[test]
fn subtraction_free_expressions() {
    let mut nets = vec![gen::fig1_symbolic(), gen::g24()];
    nets.extend(random_nets(23, 10, 6, 5));
    for net in nets {
        let rows = subtraction_free_rows(&net);
        let m = measurement_matrix(&net);
        for (r, row) in rows.iter().enumerate() {
            for (c, f) in row.iter().enumerate() {
                assert!(nonnegative(&f.num) && nonnegative(&f.den));
                let v = RF::new(f.num.clone(), f.den.clone()).unwrap();
                assert_eq!(v, m.entries[r][c]);
            }
        }
    }
}

fn elementary_set(n: usize, tag: &str) -> (Vec<Elementary>, VarTable) {
    let mut names = Vec::new();
    let mut out = Vec::new();
    let mut v = |s: String| {
        names.push(s.clone());
        RF::var(Var::new(&s))
    };
    out.push(Elementary::Diag((1..=n).map(|i| v(format!("d{}{}", tag, i))).collect()));
    for i in 2..=n {
        out.push(Elementary::Minus(i, v(format!("l{}{}", tag, i))));
        out.push(Elementary::Plus(i, v(format!("u{}{}", tag, i))));
    }
    (out, VarTable::from_names(names.iter()))
}

#[test]
fn two_by_two_product() {
    let vars = VarTable::from_names(["l", "u"]);
    let net = concat_square(
        &gen::e_minus(2, 2, p("l", &["l"]), vars.clone()).unwrap(),
        &gen::e_plus(2, 2, p("u", &["u"]), vars).unwrap(),
    )
    .unwrap();
    let a = square_matrix(&net);
    let names = ["l", "u"];
    assert_eq!(a, vec![vec![p("1", &names), p("u", &names)], vec![p("l", &names), p("1+l*u", &names)]]);
}

#[test]
fn identity_concatenation_changes_nothing() {
    let vars = VarTable::from_names(["l"]);
    let e = gen::e_minus(3, 3, p("l", &["l"]), vars.clone()).unwrap();
    let id = gen::diag(vec![RF::one(); 3], vars);
    assert_eq!(square_matrix(&concat_square(&e, &id).unwrap()), square_matrix(&e));
    assert_eq!(square_matrix(&concat_square(&id, &e).unwrap()), square_matrix(&e));
}

#[test]
fn all_elementary_pairs_multiply() {
    for n in [2, 3] {
        let (fa, va) = elementary_set(n, "a");
        let (fb, vb) = elementary_set(n, "b");
        for a in &fa {
            for b in &fb {
                let na = a.network(n, va.clone()).unwrap();
                let nb = b.network(n, vb.clone()).unwrap();
                let net = concat_square(&na, &nb).unwrap();
                assert_eq!(square_matrix(&net), mat_mul(&a.matrix(n), &b.matrix(n)), "{:?} {:?}", a, b);
            }
        }
    }
}

#[test]
fn generic_sl3_network_is_the_product() {
    let (factors, vars) = generic_sl3();
    let nets: Vec<Network> = factors.iter().map(|f| f.network(3, vars.clone()).unwrap()).collect();
    for (f, n) in factors.iter().zip(&nets) {
        assert_eq!(square_matrix(n), f.matrix(3));
    }
    let net = chain(&nets).unwrap();
    let expect = factors.iter().skip(1).fold(factors[0].matrix(3), |acc, f| mat_mul(&acc, &f.matrix(3)));
    assert_eq!(square_matrix(&net), expect);
    assert!(det(expect).is_one());
}

#[test]
fn random_compositions_multiply() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let n = 3;
    for trial in 0..6 {
        let len = rng.gen_range(2..=6);
        let mut nets = Vec::new();
        let mut expect: Option<Vec<Vec<RF>>> = None;
        for k in 0..len {
            let (fs, vars) = elementary_set(n, &format!("{}x{}", trial, k));
            let f = &fs[rng.gen_range(0..fs.len())];
            nets.push(f.network(n, vars).unwrap());
            expect = Some(match expect {
                None => f.matrix(n),
                Some(a) => mat_mul(&a, &f.matrix(n)),
            });
        }
        assert_eq!(square_matrix(&chain(&nets).unwrap()), expect.unwrap());
    }
}

#[test]
fn gluing_rejects_bad_pairings() {
    let vars = VarTable::from_names(["w"]);
    let a = gen::diag(vec![p("w", &["w"]); 2], vars.clone());
    let g = Gluing {
        seg1: vec![0, 1],
        seg2: vec![0, 1],
    };
    assert!(concatenate(&a, &a, &g).is_err());
    let g = Gluing {
        seg1: vec![2, 3],
        seg2: vec![0],
    };
    assert!(concatenate(&a, &a, &g).is_err());
}

fn check_action(net: &Network, a: &Elementary) {
    let n = net.n;
    let glued = act_elementary(net, a).unwrap_or_else(|e| panic!("{:?}: {}", a, e));
    assert_eq!(glued.sources(), net.sources());
    let lhs = extended_matrix(&glued).matrix;
    let rhs = mat_mul(&extended_matrix(net).matrix, &a.matrix(n));
    assert!(same_point(&lhs, &rhs), "{:?} on sources {:?}", a, net.sources());
}

#[test]
fn elementary_action_on_the_grassmannian() {
    let mut nets = vec![gen::fig1_symbolic(), gen::g24()];
    nets.extend(random_nets(31, 4, 5, 5));
    for net in &nets {
        let (fs, _) = elementary_set(net.n, "g");
        for a in &fs {
            check_action(net, a);
        }
    }
}

#[test]
fn diagonal_action_rescales_measurements() {
    let net = gen::g24();
    let (fs, _) = elementary_set(4, "s");
    let Elementary::Diag(ds) = &fs[0] else { unreachable!() };
    let glued = act_elementary(&net, &fs[0]).unwrap();
    let m = measurement_matrix(&net);
    let m2 = measurement_matrix(&glued);
    for (pi, &i) in m.sources.iter().enumerate() {
        for (qi, &j) in m.sinks.iter().enumerate() {
            let e = ds[i].inv().unwrap().mul(&m.entries[pi][qi]).mul(&ds[j]);
            assert_eq!(m2.entries[pi][qi], e);
        }
    }
    let id = act_elementary(&net, &Elementary::Diag(vec![RF::one(); 4])).unwrap();
    assert!(same_point(&extended_matrix(&id).matrix, &extended_matrix(&net).matrix));
}

#[test]
fn lower_factor_between_sinks() {
    // fig1 has sinks b3, b4 next to each other
    let net = gen::fig1_symbolic();
    let l = p("l", &["l"]);
    let glued = act_elementary(&net, &Elementary::Minus(4, l.clone())).unwrap();
    let m = measurement_matrix(&net);
    let m2 = measurement_matrix(&glued);
    for p_ in 0..2 {
        assert_eq!(m2.entries[p_][0], m.entries[p_][0].add(&l.mul(&m.entries[p_][1])));
        assert_eq!(m2.entries[p_][1], m.entries[p_][1]);
    }
}

/// Remove source b_ip and its black neighbour u; returns the new network with the
/// positions of i_u and j_u, and whether j_u precedes i_u counterclockwise.
fn split_black_source(net: &Network, ip: usize) -> Option<(Network, usize, usize, bool)> {
    let e0 = net.out_edges(ip)[0];
    let u = net.edges[e0].head;
    if net.is_boundary(u) || net.color(u) != Some(network::Color::Black) {
        return None;
    }
    let eplus = net.out_edges(u)[0];
    let eminus = *net.in_edges(u).iter().find(|&&e| e != e0)?;
    let ju_first = net.rotation_from(u, e0)[1] == eplus;
    let n = net.n;
    let bpos = standard_boundary(n + 1);
    let mut g = Builder::new(net.vars.clone());
    let mut map = vec![usize::MAX; net.vertices.len()];
    let (mut iu, mut ju) = (0, 0);
    let mut k = 0;
    for v in 0..n {
        if v == ip {
            let order = if ju_first { [Role::Sink, Role::Source] } else { [Role::Source, Role::Sink] };
            for r in order {
                let x = g.boundary(&format!("b{}", k + 1), r, bpos[k].clone());
                if r == Role::Source {
                    iu = x;
                } else {
                    ju = x;
                }
                k += 1;
            }
        } else {
            let Kind::Boundary(r) = net.vertices[v].kind else { unreachable!() };
            map[v] = g.boundary(&format!("b{}", k + 1), r, bpos[k].clone());
            k += 1;
        }
    }
    for v in net.internal() {
        if v != u {
            let Kind::Internal(c) = net.vertices[v].kind else { unreachable!() };
            map[v] = g.internal(&net.vertices[v].id, c, Point::new(q(0, 1), q(0, 1)));
        }
    }
    for (i, e) in net.edges.iter().enumerate() {
        if i == e0 {
            continue;
        }
        let t = if i == eplus { iu } else { map[e.tail] };
        let h = if i == eminus { ju } else { map[e.head] };
        g.edge(&e.id, t, h, e.weight.clone());
    }
    Some((g.build(), iu, ju, ju_first))
}

fn check_recalc(net: &Network) -> usize {
    let mut checked = 0;
    let w0 = |ip: usize| net.edges[net.out_edges(ip)[0]].weight.clone();
    for ip in net.sources() {
        let Some((hat, iu, ju, ju_first)) = split_black_source(net, ip) else { continue };
        // old boundary index -> new boundary index
        let shift = |v: usize| if v < ip { v } else { v + 1 };
        let den = RF::one().add(&boundary_measurement(&hat, iu, ju));
        for j in net.sinks() {
            let mhat = boundary_measurement(&hat, iu, shift(j));
            let lhs = boundary_measurement(net, ip, j);
            assert_eq!(lhs, w0(ip).mul(&mhat).div(&den).unwrap());
            for ipb in net.sources() {
                if ipb == ip {
                    continue;
                }
                // walking counterclockwise from i_p, is j met before the other source?
                let dist = |v: usize| (v + net.n - ip) % net.n;
                let j_first = dist(j) < dist(ipb);
                let plus = j_first == ju_first;
                let corr = boundary_measurement(&hat, shift(ipb), ju).mul(&mhat).div(&den).unwrap();
                let base = boundary_measurement(&hat, shift(ipb), shift(j));
                let expect = if plus { base.add(&corr) } else { base.sub(&corr) };
                assert_eq!(boundary_measurement(net, ipb, j), expect, "source {} sink {} other {}", ip + 1, j + 1, ipb + 1);
                checked += 1;
            }
        }
    }
    checked
}

#[test]
fn black_split_recalculation() {
    let mut total = check_recalc(&gen::fig1_symbolic()) + check_recalc(&gen::g24());
    for net in random_nets(41, 30, 6, 6) {
        total += check_recalc(&net);
    }
    assert!(total > 20, "only {} identities exercised", total);
}

#[test]
fn subsets_count() {
    assert_eq!(subsets(6, 3).len(), 20);
}
