//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::HashMap;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use cluster::{
    build_hex_network, check_compatibility, choose_kappa, exchange_matrix, f_monomial, f_on_network, f_via_face_weights, grassmann_initial_seed, seed_monomials, seed_order,
    tau_cluster_face, tau_coordinates, tau_monomials, HexNetwork, Seed,
};
use exprcore::{parse_with, q, rf_equal, RationalFunction as RF, Var, VarTable, Q};
use faces::{dual_network, enumerate_faces, face_bracket, face_weights, path_face_monomial};
use measurement::oracle::measurement_series;
use measurement::{
    chain, concat_square, extended_matrix, generic_sl3, mat_mul, measurement_matrix, path_sum_oracle, plucker, short_plucker_residuals, square_matrix, Elementary,
};
use network::flags::{assign_flag_variables, assign_flag_variables_with, gauge_transform, reduced_params, FlagConvention};
use network::{enumerate_paths, gen, path_weight, validate, Network, Path};
use poisson::{check_coincidence, check_epsilon_lemmas, log_canonical_bracket, verify_pushforward, verify_pushforward_full, Bracket, Params};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn need(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ppn(args: &[&str], stdin: Option<&str>) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ppn"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::inherit())
        .spawn()
        .expect("spawn ppn");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    let o = child.wait_with_output().unwrap();
    (o.status.code().unwrap_or(-1), String::from_utf8(o.stdout).unwrap())
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn w_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("w{i}")).collect()
}

fn parse_w(text: &str, k: usize) -> RF {
    let names = w_names(k);
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    parse_with(text, &refs).unwrap()
}

fn cells(text: &str, k: usize) -> Vec<Vec<RF>> {
    text.lines().map(|l| l.split('\t').map(|c| parse_w(c, k)).collect()).collect()
}

fn random_nets(seed: u64, count: usize, max_internal: usize) -> Vec<Network> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| gen::random_network(&mut rng, max_internal, 6)).collect()
}

fn elementary_networks() -> Vec<Network> {
    let vars = VarTable::from_names(["t", "c", "d", "d1", "d2", "d3"].iter());
    let v = |s: &str| RF::var(Var::new(s));
    let mut out = Vec::new();
    for n in 2..=3 {
        out.push(Elementary::Diag((1..=n).map(|i| v(&format!("d{i}"))).collect()).network(n, vars.clone()).unwrap());
        for i in 2..=n {
            for e in [
                Elementary::Minus(i, v("t")),
                Elementary::Plus(i, v("t")),
                Elementary::RhoMinus(i, v("c"), v("d")),
                Elementary::RhoPlus(i, v("c"), v("d")),
            ] {
                out.push(e.network(n, vars.clone()).unwrap());
            }
        }
    }
    out
}

fn hex_networks() -> Vec<HexNetwork> {
    SIZES.iter().map(|&(k, m)| build_hex_network(k, m).unwrap()).collect()
}

const SIZES: [(usize, usize); 4] = [(2, 2), (2, 3), (3, 3), (3, 4)];

fn golden_measure() -> Outcome {
    let (code, net) = ppn(&["gen", "fig1"], None);
    need(code == 0, || "gen fig1 failed".into())?;
    let (code, out) = ppn(&["measure"], Some(&net));
    need(code == 0, || "measure failed".into())?;
    need(out == golden("fig1_measure.txt"), || "output differs from the golden file".into())?;
    let got = cells(&out, 11);
    need(got.len() == 2 && got.iter().all(|r| r.len() == 2), || "not a 2x2 matrix".into())?;
    let d = "(1+w3*w7*w10*w11)";
    let expected = [
        [format!("w3*w4*w5*w6*w10/{d}"), format!("w3*w5*w6*w8*w11/{d}")],
        [format!("w1*w3*w4*(w2+w6*w9*w10)/{d}"), format!("w1*w3*w8*w11*(w2+w6*w9*w10)/{d}")],
    ];
    for (r, c) in [(0, 0), (1, 0), (1, 1)] {
        need(rf_equal(&got[r][c], &parse_w(&expected[r][c], 11)), || format!("entry ({}, {})", r + 1, c + 1))?;
    }
    let corrected = parse_w(&expected[0][1], 11).mul(&parse_w("w10", 11));
    need(rf_equal(&got[0][1], &corrected), || "entry (1, 2)".into())?;
    Ok("three entries match the reference; entry (1,2) is the reference one times w10, which the path b1 to b4 crosses".into())
}

fn golden_grassmannian() -> Outcome {
    let (_, net) = ppn(&["gen", "g24"], None);
    let (code, out) = ppn(&["grassmannian"], Some(&net));
    need(code == 0, || "grassmannian failed".into())?;
    need(out == golden("g24_grassmannian.txt"), || "output differs from the golden file".into())?;
    let d = "(1+w2*w4*w5*w7)";
    let expected = [
        ["1".to_string(), format!("w1*w4*w6/{d}"), "0".into(), format!("-w1*w3*w4*w5*w7/{d}")],
        ["0".to_string(), format!("w2*w4*w5*w6*w8/{d}"), "1".into(), format!("w3*w5*w8/{d}")],
    ];
    let got = cells(&out, 8);
    need(got.len() == 2 && got.iter().all(|r| r.len() == 4), || "not a 2x4 matrix".into())?;
    for r in 0..2 {
        for c in 0..4 {
            need(rf_equal(&got[r][c], &parse_w(&expected[r][c], 8)), || format!("entry ({}, {})", r + 1, c + 1))?;
        }
    }
    need(out.lines().next().unwrap().split('\t').nth(3).unwrap().starts_with("(-w1*w3*w4*w5*w7)"), || "sign of entry (1,4)".into())?;
    Ok("all 8 entries match the reference, including -w1w3w4w5w7/(1+w2w4w5w7)".into())
}

fn random_point(rng: &mut ChaCha8Rng, vars: &[Var]) -> HashMap<Var, Q> {
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

fn oracle_equivalence() -> Outcome {
    let mut nets = vec![gen::fig1_symbolic(), gen::g24()];
    let randoms = random_nets(41, 20, 6);
    for n in &randoms {
        need(validate(n).is_empty(), || "random network failed validation".into())?;
    }
    nets.extend(randoms);
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut series = 0;
    for (idx, net) in nets.iter().enumerate() {
        let vars: Vec<Var> = net.edges.iter().flat_map(|e| e.weight.vars()).collect();
        let pt = random_point(&mut rng, &vars);
        for &i in &net.sources() {
            for &j in &net.sinks() {
                let a = path_sum_oracle(net, i, j, 12, &pt);
                let b = measurement_series(net, i, j, 12, &pt);
                need(a.coeffs == b.coeffs, || format!("network {idx}, M({}, {})", i + 1, j + 1))?;
                series += 1;
            }
        }
    }
    Ok(format!("{series} measurements on {} networks agree through t^12", nets.len()))
}

fn gauge_ok(net: &Network, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (weighted, spec) = assign_flag_variables(net, true);
    let t: HashMap<usize, RF> = net.internal().map(|u| (u, RF::constant(q(rng.gen_range(1..=7), rng.gen_range(1..=5))))).collect();
    let gauged = gauge_transform(&weighted, &t);
    let (m1, m2) = (measurement_matrix(&weighted), measurement_matrix(&gauged));
    let b = Bracket::from_spec(&spec);
    let e1: Vec<&RF> = m1.entries.iter().flatten().collect();
    let e2: Vec<&RF> = m2.entries.iter().flatten().collect();
    e1.iter().zip(&e2).all(|(x, y)| x.equals(y))
        && (0..e1.len()).all(|a| (a + 1..e1.len()).all(|c| b.apply(e1[a], e1[c]).equals(&b.apply(e2[a], e2[c]))))
}

fn pushforward() -> Outcome {
    let mut nets = vec![gen::fig1_symbolic(), gen::g24()];
    nets.extend(elementary_networks());
    nets.extend(random_nets(17, 20, 5));
    // variable ids decide monomial order; create them before going parallel
    for n in &nets {
        assign_flag_variables(n, true);
        assign_flag_variables(n, false);
    }
    let p = Params::symbolic();
    let results: Vec<(usize, usize, bool, bool)> = nets
        .par_iter()
        .enumerate()
        .map(|(i, n)| {
            let reduced = verify_pushforward(n, &p);
            let full = verify_pushforward_full(n);
            (reduced.records.len() + full.records.len(), i, reduced.ok() && full.ok(), gauge_ok(n, 31 + i as u64))
        })
        .collect();
    let mut checks = 0;
    for (c, i, psme, gauge) in results {
        need(psme, || format!("pushforward fails on network {i}"))?;
        need(gauge, || format!("gauge invariance fails on network {i}"))?;
        checks += c;
    }
    Ok(format!("{} networks, {checks} bracket identities (reduced and six-parameter), gauge invariant", nets.len()))
}

fn json_lines(out: &str) -> Vec<serde_json::Value> {
    out.lines().filter(|l| l.starts_with('{')).map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn jacobi() -> Outcome {
    let (code, out) = ppn(&["verify-jacobi", "--max-n", "6", "--identities-max-n", "8"], None);
    let recs = json_lines(&out);
    need(code == 0 && out.ends_with("PASS (12 checks)\n"), || out.lines().last().unwrap_or("").to_string())?;
    let sextuples: u64 = recs.iter().filter(|r| r["check"] == "threeid").map(|r| r["sextuples"].as_u64().unwrap()).sum();
    let subsets: u64 = recs.iter().filter(|r| r["check"] == "jacobi").map(|r| r["subsets"].as_u64().unwrap()).sum();
    Ok(format!("cyclic sums vanish for all {subsets} source sets with n <= 6; identities hold on {sextuples} sextuples with n <= 8"))
}

fn mcybe() -> Outcome {
    let (code, out) = ppn(&["verify-mcybe", "--max-k", "5", "--trials", "100"], None);
    need(code == 0, || "verify-mcybe failed".into())?;
    let recs = json_lines(&out);
    need(recs.len() == 25, || format!("{} records", recs.len()))?;
    for r in &recs {
        let trials = r["trials"].as_u64().unwrap();
        need(trials >= 100 && r["failures"] == 0 && r["literal_zero"].as_u64() == Some(trials), || r.to_string())?;
    }
    Ok("residual exactly zero on 100 pairs for each k <= 5 and 5 samples with alpha != beta".into())
}

fn same(a: &[Vec<RF>], b: &[Vec<RF>]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(r, s)| r.len() == s.len() && r.iter().zip(s).all(|(x, y)| x.equals(y)))
}

fn concatenation() -> Outcome {
    let mut pairs = 0;
    for n in [2, 3] {
        let set = |tag: &str| {
            let mut names = Vec::new();
            let mut v = |s: String| {
                names.push(s.clone());
                RF::var(Var::new(&s))
            };
            let mut out = vec![Elementary::Diag((1..=n).map(|i| v(format!("d{tag}{i}"))).collect())];
            for i in 2..=n {
                out.push(Elementary::Minus(i, v(format!("l{tag}{i}"))));
                out.push(Elementary::Plus(i, v(format!("u{tag}{i}"))));
                out.push(Elementary::RhoMinus(i, v(format!("c{tag}{i}")), v(format!("e{tag}{i}"))));
                out.push(Elementary::RhoPlus(i, v(format!("p{tag}{i}")), v(format!("r{tag}{i}"))));
            }
            (out, VarTable::from_names(names.iter()))
        };
        let ((fa, va), (fb, vb)) = (set("a"), set("b"));
        for a in &fa {
            for b in &fb {
                let net = concat_square(&a.network(n, va.clone()).unwrap(), &b.network(n, vb.clone()).unwrap()).map_err(|e| e.to_string())?;
                need(same(&square_matrix(&net), &mat_mul(&a.matrix(n), &b.matrix(n))), || format!("{a:?} then {b:?}"))?;
                pairs += 1;
            }
        }
    }
    let (factors, vars) = generic_sl3();
    let nets: Vec<Network> = factors.iter().map(|f| f.network(3, vars.clone()).unwrap()).collect();
    let net = chain(&nets).map_err(|e| e.to_string())?;
    let expect = factors.iter().skip(1).fold(factors[0].matrix(3), |acc, f| mat_mul(&acc, &f.matrix(3)));
    need(same(&square_matrix(&net), &expect), || "six-factor network".into())?;
    Ok(format!("{pairs} elementary pairs and the six-factor 3x3 network"))
}

fn grassmannian_brackets() -> Outcome {
    let mut pairs = 0;
    for n in 2..=8 {
        let rep = check_coincidence(n, 100 + n as u64);
        need(rep.ok(), || format!("cell brackets differ for n={n}"))?;
        pairs += rep.pairs;
        need(check_epsilon_lemmas(n).ok(), || format!("epsilon lemmas fail for n={n}"))?;
    }
    let mut nets = vec![gen::fig1_symbolic(), gen::g24()];
    nets.extend(random_nets(53, 20, 6));
    nets.extend(hex_networks().into_iter().map(|h| h.net));
    let mut relations = 0;
    for (i, net) in nets.iter().enumerate() {
        let res = short_plucker_residuals(&plucker(&extended_matrix(net)));
        need(res.iter().all(|r| r.is_zero()), || format!("short Plücker relation fails on network {i}"))?;
        relations += res.len();
    }
    Ok(format!("{pairs} cell bracket pairs and both epsilon lemmas for n <= 8; {relations} short Plücker relations vanish"))
}

/// +1 or -1 if every flag-level face bracket is that multiple of the dual-network one.
fn flag_to_dual_sign(net: &Network, conv: FlagConvention) -> Option<i64> {
    let (weighted, spec) = assign_flag_variables_with(net, true, conv);
    let fs = enumerate_faces(&weighted).ok()?;
    let y = face_weights(&weighted, &fs);
    let dual = dual_network(&weighted, &fs);
    let mut sign = None;
    for f in 0..fs.len() {
        for g in f + 1..fs.len() {
            let lhs = log_canonical_bracket(&spec, &y[f], &y[g]).ok()?;
            let rhs = face_bracket(&dual, f, g).mul(&y[f]).mul(&y[g]);
            let s = if lhs.equals(&rhs) {
                1
            } else if lhs.equals(&rhs.neg()) {
                -1
            } else {
                return None;
            };
            if rhs.is_zero() {
                continue;
            }
            if *sign.get_or_insert(s) != s {
                return None;
            }
        }
    }
    Some(sign.unwrap_or(1))
}

fn face_layer() -> Outcome {
    let mut nets = vec![gen::fig1_symbolic(), gen::g24()];
    nets.extend(elementary_networks());
    nets.extend(random_nets(59, 20, 6));
    nets.extend(hex_networks().into_iter().map(|h| h.net));
    for (i, net) in nets.iter().enumerate() {
        let fs = enumerate_faces(net).map_err(|e| e.to_string())?;
        let prod = face_weights(net, &fs).iter().fold(RF::one(), |a, y| a.mul(y));
        need(prod.equals(&RF::one()), || format!("face weights of network {i} multiply to {prod}"))?;
    }

    let g = gen::g24();
    let fs = enumerate_faces(&g).map_err(|e| e.to_string())?;
    let mut expected: Vec<RF> = ["w1*w3/w2", "1/(w3*w5*w8)", "w6*w8/w7", "1/(w1*w4*w6)", "w2*w4*w5*w7"].iter().map(|s| parse_w(s, 8)).collect();
    for y in face_weights(&g, &fs) {
        let pos = expected.iter().position(|p| p.equals(&y)).ok_or_else(|| format!("unexpected face weight {y}"))?;
        expected.remove(pos);
    }
    need(expected.is_empty(), || "missing face weights".into())?;

    let conv = FlagConvention {
        swap_white: false,
        swap_black: false,
    };
    let mut bnets = vec![gen::g24(), gen::fig1_symbolic()];
    bnets.extend(random_nets(3, 10, 5).into_iter().filter(|n| n.edges.len() <= 12));
    for (i, net) in bnets.iter().enumerate() {
        need(flag_to_dual_sign(net, conv) == Some(1), || format!("face brackets differ on network {i}"))?;
    }

    let mut simple = 0;
    for (i, net) in nets.iter().take(22 + elementary_networks().len()).enumerate() {
        let fs = enumerate_faces(net).map_err(|e| e.to_string())?;
        let y = face_weights(net, &fs);
        for s in net.sources() {
            for t in net.sinks() {
                for p in enumerate_paths(net, s, t, net.edges.len()) {
                    if !p.is_simple(net) {
                        continue;
                    }
                    let m = path_face_monomial(net, &fs, &p).map_err(|e| e.to_string())?;
                    need(m.eval(&y).equals(&path_weight(net, &p).unwrap()), || format!("path on network {i}"))?;
                    simple += 1;
                }
            }
        }
    }
    let f1 = gen::fig1_symbolic();
    let fs = enumerate_faces(&f1).map_err(|e| e.to_string())?;
    let p = Path::from_ids(&f1, &["e1", "e2", "e3", "e11", "e7", "e10", "e3", "e11", "e8"]).map_err(|e| e.to_string())?;
    let m = path_face_monomial(&f1, &fs, &p).map_err(|e| e.to_string())?;
    let expect = parse_w("-w1*w2*w3^2*w7*w8*w10*w11^2", 11);
    need(m.eval(&face_weights(&f1, &fs)).equals(&expect) && path_weight(&f1, &p).unwrap().equals(&expect), || format!("looped path gives {m}"))?;
    Ok(format!(
        "products are 1 on {} networks; G_2(4) face weights match the reference; face brackets match on {} networks; {simple} simple paths and the looped example path",
        nets.len(),
        bnets.len()
    ))
}

fn compatibility() -> Outcome {
    let (a, b) = reduced_params();
    let (a, b) = (RF::var(a), RF::var(b));
    for (k, m) in SIZES {
        let rep = check_compatibility(k, m, &a, &b).map_err(|e| e.to_string())?;
        need(rep.passes(&a, &b), || format!("k={k} m={m}: factor {:?}, mismatch {:?}", rep.factor.map(|f| f.to_string()), rep.first_mismatch))?;

        let hex = build_hex_network(k, m).map_err(|e| e.to_string())?;
        for i in 1..=k {
            for j in 1..=m {
                let mono = f_via_face_weights(&hex, i, j).map_err(|e| e.to_string())?;
                need(mono.exps == f_monomial(k, m, i, j).exps, || format!("f{i}{j} exponents"))?;
                need(mono.to_rf().equals(&f_on_network(&hex, i, j).unwrap()), || format!("f{i}{j} value"))?;
            }
        }

        let fs = seed_monomials(&hex).map_err(|e| e.to_string())?;
        let kappa = choose_kappa(&exchange_matrix(k, m)).map_err(|e| e.to_string())?;
        let tau = tau_monomials(&hex, &fs, &kappa);
        let (seed, data) = grassmann_initial_seed(k, m);
        let fvals: Vec<RF> = data.order.iter().map(|&(i, j)| f_on_network(&hex, i, j).unwrap()).collect();
        let c = seed.cluster.len();
        let net_seed = Seed::new(fvals[..c].to_vec(), fvals[c..].to_vec(), seed.b.clone()).map_err(|e| e.to_string())?;
        let net_tau = tau_coordinates(&net_seed, &vec![0; seed.stable.len()]).map_err(|e| e.to_string())?;
        for (p, &(i, j)) in seed_order(k, m).iter().enumerate().take(c) {
            let face = tau_cluster_face(k, i, j);
            need(tau[p].exps.len() == 1 && tau[p].exps.get(&face) == Some(&1), || format!("tau{i}{j} = {}", tau[p]))?;
            let y = HexNetwork::y(face.0, face.1);
            need(net_tau[p].equals(&y) || net_tau[p].equals(&y.neg()), || format!("tau{i}{j} on the network"))?;
        }
    }
    Ok("factor is exactly alpha - beta for (2,2), (2,3), (3,3), (3,4); f and tau as face-weight monomials hold".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("golden measure", golden_measure, 1),
        ("golden grassmannian", golden_grassmannian, 1),
        ("oracle equivalence", oracle_equivalence, 60),
        ("pushforward", pushforward, 300),
        ("jacobi", jacobi, 120),
        ("mcybe", mcybe, 30),
        ("concatenation", concatenation, 10),
        ("grassmannian brackets", grassmannian_brackets, 120),
        ("face layer", face_layer, 60),
        ("compatibility", compatibility, 300),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let res = match res {
            Ok(msg) if took > Duration::from_secs(*limit) => Err(format!("{msg}; over the {limit} s budget")),
            r => r,
        };
        let (tag, msg) = match &res {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        failed += usize::from(res.is_err());
        println!("criterion {:2} {tag} {name} ({:.2} s of {limit} s): {msg}", i + 1, took.as_secs_f64());
    }
    println!("{} of 10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
