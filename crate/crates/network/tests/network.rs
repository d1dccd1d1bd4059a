use exprcore::{q, rf_equal, RationalFunction, VarTable};
use network::gen::*;
use network::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn w(names: &[&str]) -> RationalFunction {
    names.iter().map(|s| RationalFunction::var(exprcore::Var::new(s))).product()
}

fn example_path(net: &Network) -> Path {
    Path::from_ids(net, &["e1", "e2", "e3", "e11", "e7", "e10", "e3", "e11", "e8"]).unwrap()
}

#[test]
fn fig1_is_valid() {
    let net = fig1();
    assert_eq!(validate(&net), vec![]);
    assert_eq!(net.edges.len(), 11);
    assert_eq!(net.n, 4);
    assert_eq!(validate(&g24()), vec![]);
}

#[test]
fn source_with_incoming_edge() {
    let mut net = fig1();
    let e = net.edge_index("e5").unwrap();
    let (t, h) = (net.edges[e].tail, net.edges[e].head);
    net.edges[e].tail = h;
    net.edges[e].head = t;
    let v = validate(&net);
    assert!(v.iter().any(|x| x.rule == "source with incoming edge" && x.subject == "b1"), "{:?}", v);
}

#[test]
fn crossing_edges_reported() {
    let mut net = fig1();
    // move C across the edge D -> A
    let c = net.vertex_index("C").unwrap();
    net.vertices[c].pos = Point::ratio(1, 10, -2, 5);
    let v = validate(&net);
    assert!(v.iter().any(|x| x.rule == "embedding crossing"), "{:?}", v);
}

#[test]
fn ccw_triangle_has_concordance_one() {
    let t = [Point::ratio(0, 1, 0, 1), Point::ratio(1, 1, 0, 1), Point::ratio(0, 1, 1, 1)];
    assert_eq!(concordance(&t), Ok(1));
    let mut r = t.to_vec();
    r.reverse();
    assert_eq!(concordance(&r), Ok(1));
}

#[test]
fn doubled_back_curve_is_rejected() {
    let c = [Point::ratio(0, 1, 0, 1), Point::ratio(1, 1, 0, 1)];
    assert_eq!(concordance(&c), Err(PathError::DegenerateCone));
}

#[test]
fn figure_eight_has_concordance_zero() {
    let c = [
        Point::ratio(0, 1, 0, 1),
        Point::ratio(1, 1, 1, 1),
        Point::ratio(1, 1, 0, 1),
        Point::ratio(0, 1, 1, 1),
    ];
    assert_eq!(concordance(&c), Ok(0));
}

#[test]
fn example_path_weight() {
    let net = fig1_symbolic();
    let p = example_path(&net);
    let c = concordance(&closed_curve(&net, &p, Closure::Counterclockwise).unwrap()).unwrap();
    assert_eq!(c, 0);
    let expect = w(&["w1", "w2", "w3", "w3", "w7", "w8", "w10", "w11", "w11"]).neg();
    assert!(rf_equal(&path_weight(&net, &p).unwrap(), &expect));
}

#[test]
fn example_decomposition() {
    let net = fig1_symbolic();
    let p = example_path(&net);
    let (pp, c0) = decompose_path(&p).unwrap();
    assert_eq!(pp, Path::from_ids(&net, &["e1", "e2", "e3", "e11", "e8"]).unwrap());
    assert_eq!(c0.edges, Path::new(["e3", "e11", "e7", "e10"].iter().map(|s| net.edge_index(s).unwrap()).collect()).edges);
    let lhs = path_weight(&net, &p).unwrap();
    let rhs = path_weight(&net, &pp).unwrap().mul(&path_weight(&net, &c0).unwrap()).neg();
    assert!(rf_equal(&lhs, &rhs));
    assert_eq!(decompose_path(&pp), Err(PathError::NoRepeat));
}

#[test]
fn chord_weight_is_positive() {
    let vars = VarTable::from_names(["w"]);
    let net = chord(RationalFunction::var(vars.vars()[0]), vars.clone());
    assert_eq!(validate(&net), vec![]);
    let p = Path::new(vec![0]);
    assert_eq!(path_sign(&net, &p, Closure::Counterclockwise), Ok(1));
    assert!(rf_equal(&path_weight(&net, &p).unwrap(), &RationalFunction::var(vars.vars()[0])));
}

#[test]
fn non_source_start_is_rejected() {
    let net = fig1_symbolic();
    let p = Path::from_ids(&net, &["e2", "e3", "e4"]).unwrap();
    assert_eq!(path_weight(&net, &p), Err(PathError::NotSourceToSink));
}

fn all_paths(net: &Network, len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    for &i in &net.sources() {
        for &j in &net.sinks() {
            out.extend(enumerate_paths(net, i, j, len));
        }
    }
    out
}

fn test_networks() -> Vec<Network> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut v = vec![fig1_symbolic(), g24()];
    for _ in 0..20 {
        v.push(random_network(&mut rng, 6, 6));
    }
    v
}

#[test]
fn generated_networks_validate() {
    for net in test_networks() {
        assert_eq!(validate(&net), vec![], "{}", net.to_json());
    }
    let vars = VarTable::from_names(["d1", "d2", "d3", "l", "u", "c", "d"]);
    let v = |i: usize| RationalFunction::var(vars.vars()[i]);
    assert_eq!(validate(&diag(vec![v(0), v(1), v(2)], vars.clone())), vec![]);
    for n in 2..=4 {
        for i in 2..=n {
            e_minus(n, i, v(3), vars.clone()).unwrap();
            e_plus(n, i, v(4), vars.clone()).unwrap();
            rho_minus(n, i, v(5), v(6), vars.clone()).unwrap();
            rho_plus(n, i, v(5), v(6), vars.clone()).unwrap();
        }
    }
    assert!(e_minus(3, 1, v(3), vars.clone()).is_err());
    assert!(e_plus(3, 4, v(3), vars).is_err());
}

#[test]
fn closure_direction_does_not_change_sign() {
    for net in test_networks() {
        for p in all_paths(&net, 10) {
            let a = path_sign(&net, &p, Closure::Counterclockwise).unwrap();
            let b = path_sign(&net, &p, Closure::Clockwise).unwrap();
            assert_eq!(a, b, "{:?}", p);
        }
    }
}

#[test]
fn offcycle_identity_on_random_paths() {
    let mut checked = 0;
    for net in test_networks() {
        for p in all_paths(&net, 12) {
            if let Ok((pp, c0)) = decompose_path(&p) {
                let lhs = path_weight(&net, &p).unwrap();
                let rhs = path_weight(&net, &pp).unwrap().mul(&path_weight(&net, &c0).unwrap()).neg();
                assert!(rf_equal(&lhs, &rhs));
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn concordance_is_probe_invariant() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut done = 0;
    while done < 200 {
        let m = rng.gen_range(3..9);
        let pts: Vec<Point> = (0..m)
            .map(|_| Point::new(q(rng.gen_range(-9..10), 1), q(rng.gen_range(-9..10), 1)))
            .collect();
        let dirs: Vec<Point> = (0..m).map(|i| pts[(i + 1) % m].sub(&pts[i])).collect();
        let Ok(c) = concordance(&pts) else { continue };
        let probes = [Point::ratio(1, 1, 1, 97), Point::ratio(-3, 7, 2, 11), Point::ratio(5, 13, -1, 1)];
        for l in probes {
            if dirs.iter().all(|d| network::geom::cross(&l, d) != exprcore::qi(0)) {
                assert_eq!(path::concordance_with(&dirs, &l), c);
            }
        }
        done += 1;
    }
}

#[test]
fn json_round_trip() {
    for net in [fig1(), g24()] {
        let back = Network::from_json(&net.to_json()).unwrap();
        assert_eq!(back, net);
    }
    assert!(Network::from_json("{\"n\":0,\"boundary\":[],\"internal\":[],\"edges\":[],\"variables\":[],\"x\":1}").is_err());
}

fn tripod() -> Network {
    let b = network::geom::standard_boundary(3);
    let mut g = Builder::new(VarTable::new());
    let one = RationalFunction::one();
    g.boundary("b1", Role::Source, b[0].clone());
    g.boundary("b2", Role::Sink, b[1].clone());
    g.boundary("b3", Role::Sink, b[2].clone());
    let v = g.internal("v", Color::White, Point::ratio(0, 1, 0, 1));
    g.edge("e1", 0, v, one.clone());
    g.edge("e2", v, 1, one.clone());
    g.edge("e3", v, 2, one);
    g.build_valid().unwrap()
}

#[test]
fn flag_weights_on_a_tripod() {
    let net = tripod();
    let (fnet, spec) = assign_flag_variables(&net, true);
    let x = |s: &str| RationalFunction::var(exprcore::Var::new(s));
    assert!(rf_equal(&fnet.edges[0].weight, &x("x1_b1")));
    // under the calibrated labelling the edge right after the principal one counterclockwise is flag 3
    assert!(rf_equal(&fnet.edges[1].weight, &x("x3_v").mul(&x("x1_b2"))));
    assert!(rf_equal(&fnet.edges[2].weight, &x("x2_v").mul(&x("x1_b3"))));
    let a = exprcore::Var::new("alpha");
    assert_eq!(spec.get(exprcore::Var::new("x2_v"), exprcore::Var::new("x3_v")), RationalFunction::var(a));
    assert_eq!(spec.get(exprcore::Var::new("x3_v"), exprcore::Var::new("x2_v")), RationalFunction::var(a).neg());
    assert!(spec.get(exprcore::Var::new("x1_b1"), exprcore::Var::new("x2_v")).is_zero());
    assert_eq!(spec.omega.len(), 1);
    let (_, full) = assign_flag_variables(&net, false);
    assert_eq!(full.omega.len(), 3);
}

#[test]
fn gauge_preserves_path_weights() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for net in test_networks() {
        let mut t = std::collections::HashMap::new();
        assert_eq!(gauge_transform(&net, &t).weights(), net.weights());
        let pool: Vec<exprcore::Var> = net.vars.vars().to_vec();
        for v in net.internal() {
            let a = pool[rng.gen_range(0..pool.len())];
            let b = pool[rng.gen_range(0..pool.len())];
            t.insert(v, RationalFunction::laurent([(a, rng.gen_range(-2..3)), (b, rng.gen_range(-2..3))]));
        }
        let tn = gauge_transform(&net, &t);
        for p in all_paths(&net, 8) {
            if p.is_simple(&net) {
                assert!(rf_equal(&path_weight(&net, &p).unwrap(), &path_weight(&tn, &p).unwrap()));
            }
        }
    }
}
