//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! A criterion whose expectation is mathematically false is reported as
//! FAIL with the reason and marked `known`; it does not fail the run. Any
//! other FAIL exits non-zero.

use std::process::ExitCode;
use std::time::Instant;

use atlas::autgroup::{are_isomorphic, automorphism_group};
use atlas::classify::{census, census_instances, classify, verify_instance, Outcome, RejectReason};
use atlas::families::{self, AtVariant, FamilyInstance, IncidenceVariant, Sporadic};
use atlas::gf::FieldSpec;
use atlas::graph::{from_graph6, to_graph6, ComplementMode, Graph};
use atlas::predicates::{bicirculant_witness, circulant_witness, count_s_arcs, transitivity_profile, Verdict, DEFAULT_BUDGET};
use atlas::voltage::VoltageAssignment;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Default)]
struct Report {
    failures: Vec<String>,
    known: Vec<String>,
}

impl Report {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn known(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.known.push(what());
        }
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    Graph::from_fn(n, |_, _| rng.gen_bool(p))
}

fn criterion_instances() -> Vec<FamilyInstance> {
    let gp = |n, r| families::generalized_petersen(n, r).unwrap();
    vec![
        families::cycle(8).unwrap(),
        families::complete(6).unwrap(),
        families::complete_bipartite(4, 4).unwrap(),
        families::knn_minus_matching(5).unwrap(),
        gp(5, 2),
        gp(10, 2),
        gp(10, 3),
        gp(8, 3),
        gp(12, 5),
        gp(24, 5),
        families::folded_cube(5).unwrap(),
        families::projective_incidence(3, 2, IncidenceVariant::B).unwrap(),
        families::projective_incidence(3, 2, IncidenceVariant::BPrime).unwrap(),
        families::hadamard11(IncidenceVariant::B).unwrap(),
        families::hadamard11(IncidenceVariant::BPrime).unwrap(),
        families::x1_cover(3).unwrap(),
        families::x1_cover(7).unwrap(),
        families::matching_cover(7, 3).unwrap(),
        families::at_cover(5, 2, AtVariant::D).unwrap(),
        families::at_cover(5, 4, AtVariant::Q).unwrap(),
        families::sporadic(Sporadic::Atd46).unwrap(),
        families::sporadic(Sporadic::Atq412).unwrap(),
        families::sporadic(Sporadic::Atd56).unwrap(),
        families::sporadic(Sporadic::X2_3).unwrap(),
        families::sporadic(Sporadic::X3_2).unwrap(),
        families::gdd_incidence(2, 3, 1).unwrap(),
        families::gdd_incidence(2, 3, 2).unwrap(),
        families::gdd_incidence(3, 2, 1).unwrap(),
    ]
}

fn c1(r: &mut Report) {
    for fi in criterion_instances() {
        let e = verify_instance(&fi, DEFAULT_BUDGET);
        r.check(e.verification.passed(), || format!("{}: {:?}", fi.label, e.verification));
        if let Some(w) = &e.witness {
            let n = fi.graph.order();
            let p = atlas::groups::Perm::from_cycles(n, &parse_cycles(w)).unwrap();
            r.check(fi.graph.is_automorphism(&p) && p.is_two_equal_cycles(), || format!("{}: witness {w} fails", fi.label));
        }
    }
}

fn parse_cycles(s: &str) -> Vec<Vec<usize>> {
    s.trim_matches(|c| c == '(' || c == ')')
        .split(")(")
        .filter(|c| !c.is_empty())
        .map(|c| c.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect()
}

fn iso_checked(r: &mut Report, name: &str, a: &Graph, b: &Graph) {
    match are_isomorphic(a, b) {
        Some(m) => r.check(a.relabel(&m).unwrap() == *b, || format!("{name}: mapping does not carry edges")),
        None => r.check(false, || format!("{name}: not isomorphic")),
    }
}

fn c2(r: &mut Report) {
    let gp83 = families::generalized_petersen(8, 3).unwrap().graph;
    iso_checked(r, "X1(4,3) ~ GP(8,3)", &families::x1_cover(3).unwrap().graph, &gp83);
    iso_checked(r, "K_4^4 ~ GP(8,3)", &families::matching_cover(3, 2).unwrap().graph, &gp83);
    let g225 = families::paley_bipartite(11, 5, atlas::families::PaleyVariant::G2p).unwrap().graph;
    iso_checked(r, "B(H(11)) ~ G(22,5)", &families::hadamard11(IncidenceVariant::B).unwrap().graph, &g225);
    let petersen = families::generalized_petersen(5, 2).unwrap().graph;
    let desargues = families::generalized_petersen(10, 3).unwrap().graph;
    iso_checked(r, "double cover of Petersen ~ GP(10,3)", &petersen.standard_double_cover(), &desargues);
}

fn c3(r: &mut Report) {
    let cases = [
        ("K_{5,5}-5K_2", families::knn_minus_matching(5).unwrap(), 240u64),
        ("dodecahedron", families::generalized_petersen(10, 2).unwrap(), 120),
        ("Desargues", families::generalized_petersen(10, 3).unwrap(), 240),
        ("folded 5-cube", families::folded_cube(5).unwrap(), 1920),
    ];
    for (name, fi, want) in cases {
        let got = automorphism_group(&fi.graph).order_u64();
        r.check(got == Some(want), || format!("{name}: |Aut| = {got:?}, want {want}"));
    }
}

fn c4(r: &mut Report) {
    let mut found = Vec::new();
    for n in 3..=26 {
        for k in 1..n {
            if 2 * k >= n {
                break;
            }
            let g = families::generalized_petersen(n, k).unwrap().graph;
            if transitivity_profile(&g, &automorphism_group(&g)).arc {
                found.push((n, k));
            }
        }
    }
    let want = vec![(4, 1), (5, 2), (8, 3), (10, 2), (10, 3), (12, 5), (24, 5)];
    r.check(found == want, || format!("arc-transitive pairs {found:?}"));
}

fn c5(r: &mut Report) {
    let dodec = families::generalized_petersen(10, 2).unwrap().graph;
    r.check(dodec.girth() == Some(5), || format!("dodecahedron girth {:?}", dodec.girth()));
    r.check(dodec.diameter() == Some(5), || format!("dodecahedron diameter {:?}", dodec.diameter()));
    let fc = families::folded_cube(5).unwrap().graph;
    let srg = fc.srg_parameters();
    r.check(srg == Some((16, 5, 0, 2)), || format!("folded 5-cube parameters {srg:?}"));
    let mut counts = (usize::MAX, 0, usize::MAX, 0);
    for u in 0..16 {
        for v in u + 1..16 {
            let c = fc.common_neighbors(u, v);
            if fc.has_edge(u, v) {
                counts.0 = counts.0.min(c);
                counts.1 = counts.1.max(c);
            } else {
                counts.2 = counts.2.min(c);
                counts.3 = counts.3.max(c);
            }
        }
    }
    r.check(counts == (0, 0, 2, 2), || format!("folded 5-cube common neighbours {counts:?}"));
    // μ = 2 puts every non-adjacent pair on a 4-cycle, so girth 5 is impossible.
    r.known(fc.girth() == Some(5), || {
        format!("folded 5-cube girth is {:?}, expected 5; λ = 0, μ = 2 give girth 4", fc.girth())
    });
    let heawood = families::projective_incidence(3, 2, IncidenceVariant::B).unwrap().graph;
    r.check(heawood.girth() == Some(6), || format!("B(PG(2,2)) girth {:?}", heawood.girth()));
}

fn c6(r: &mut Report) {
    let petersen = families::generalized_petersen(5, 2).unwrap().graph;
    let negatives = [
        ("complement(Petersen)", petersen.complement(&ComplementMode::Plain).unwrap()),
        ("H(2,4)", families::hamming(2, 4).unwrap().graph),
        ("K_{3[2]}", families::multipartite(3, 2).unwrap().graph),
    ];
    for (name, g) in negatives {
        let rep = classify(&g, DEFAULT_BUDGET);
        r.check(rep.reason() == Some(RejectReason::Not2ArcTransitive), || format!("{name}: {}", rep.verdict_name()));
    }
    let star = families::complete_bipartite(1, 3).unwrap().graph;
    let w = bicirculant_witness(&star, DEFAULT_BUDGET);
    r.check(w.verdict == Verdict::No && w.search_budget_used == 6, || format!("K_{{1,3}}: {w:?}"));
    let w = circulant_witness(&petersen, DEFAULT_BUDGET);
    r.check(w.verdict == Verdict::No && w.search_budget_used == 120, || format!("Petersen circulant: {w:?}"));
}

fn brute_force_aut_count(g: &Graph) -> u64 {
    fn extend(g: &Graph, img: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let v = img.len();
        if v == g.order() {
            return 1;
        }
        let mut total = 0;
        for w in 0..g.order() {
            if used[w] || g.degree(w) != g.degree(v) {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == g.has_edge(img[u], w)) {
                used[w] = true;
                img.push(w);
                total += extend(g, img, used);
                img.pop();
                used[w] = false;
            }
        }
        total
    }
    extend(g, &mut Vec::new(), &mut vec![false; g.order()])
}

fn c7(r: &mut Report) {
    for fi in criterion_instances() {
        if let Some(va) = &fi.voltage {
            let claimed = va.cover_connected().unwrap();
            r.check(claimed == fi.graph.is_connected(), || format!("{}: cover_connected = {claimed}", fi.label));
        }
    }
    // disconnected covers: trivial voltages and a voltage subgroup of index 2
    let z4 = atlas::groups::GroupTable::cyclic(4).unwrap();
    let k4 = Graph::from_fn(4, |_, _| true);
    for rule in [0usize, 2] {
        let va = VoltageAssignment::from_arc_rule(k4.clone(), z4.clone(), |u, v| if u < v { rule } else { (4 - rule) % 4 }).unwrap();
        let claimed = va.cover_connected().unwrap();
        r.check(claimed == va.cover().0.is_connected(), || format!("Z4 voltage {rule} on K4: {claimed}"));
    }
    let mut corpus: Vec<(String, Graph)> = census_instances(8)
        .unwrap()
        .into_iter()
        .chain(criterion_instances())
        .map(|fi| (fi.label, fi.graph))
        .filter(|(_, g)| g.order() <= 8)
        .collect();
    corpus.push(("K_{1,3}".into(), families::complete_bipartite(1, 3).unwrap().graph));
    corpus.push(("K_{3[2]}".into(), families::multipartite(3, 2).unwrap().graph));
    corpus.push(("P_4".into(), Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..100 {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.1..0.9);
        corpus.push((format!("random #{i}"), random_graph(&mut rng, n, p)));
    }
    for (name, g) in &corpus {
        let got = automorphism_group(g).order_u64().unwrap();
        let want = brute_force_aut_count(g);
        r.check(got == want, || format!("{name}: |Aut| {got} vs brute force {want}"));
    }
    for _ in 0..200 {
        let n = rng.gen_range(0..=30);
        let p = rng.gen_range(0.0..1.0);
        let g = random_graph(&mut rng, n, p);
        let want: u64 = (0..n).map(|v| (g.degree(v) * g.degree(v).saturating_sub(1)) as u64).sum();
        r.check(count_s_arcs(&g, 2) == want, || "count_s_arcs(g,2) disagrees with degree sum".into());
    }
}

fn random_spanning_tree(rng: &mut ChaCha8Rng, g: &Graph) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.shuffle(rng);
    let mut parent: Vec<usize> = (0..g.order()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut tree = Vec::new();
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            tree.push((u, v));
        }
    }
    tree
}

fn c8(r: &mut Report) {
    let atd56 = families::sporadic(Sporadic::Atd56).unwrap();
    let va = atd56.voltage.as_ref().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(56);
    for i in 0..50 {
        let tree = random_spanning_tree(&mut rng, va.base());
        let reduced = va.reduce(&tree).unwrap();
        let trivial = tree.iter().all(|&(u, v)| reduced.arc_voltage(u, v) == Some(reduced.group().identity()));
        r.check(trivial, || format!("tree #{i}: voltages on the tree are not trivial"));
        r.check(are_isomorphic(&reduced.cover().0, &atd56.graph).is_some(), || format!("tree #{i}: cover changed"));
    }
    let f = FieldSpec::new(7).unwrap();
    for d in [2, 3, 6] {
        let reference = families::matching_cover(7, d).unwrap().graph;
        for theta in f.nonzero().filter(|&x| f.is_primitive(x)) {
            let other = families::matching_cover_with_primitive(7, d, Some(theta)).unwrap().graph;
            r.check(are_isomorphic(&other, &reference).is_some(), || format!("d = {d}, θ = {}", f.format(theta)));
        }
    }
}

fn c9(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=40);
        let p = rng.gen_range(0.0..1.0);
        let g = random_graph(&mut rng, n, p);
        let s = to_graph6(&g).unwrap();
        let back = from_graph6(&s).unwrap();
        r.check(back == g && to_graph6(&back).unwrap() == s, || format!("round trip failed for {s}"));
    }
    for fi in census_instances(64).unwrap() {
        let s = to_graph6(&fi.graph).unwrap();
        r.check(from_graph6(&s).unwrap() == fi.graph, || format!("{} does not round-trip", fi.label));
    }
}

fn c10(r: &mut Report) {
    let entries = census(64, DEFAULT_BUDGET).unwrap();
    for e in &entries {
        r.check(e.verification.passed(), || format!("{} not verified: {:?}", e.label, e.verification));
        let fi = families::build(&e.family_id, &e.params).unwrap();
        let piped = from_graph6(&to_graph6(&fi.graph).unwrap()).unwrap();
        let rep = classify(&piped, DEFAULT_BUDGET);
        match &rep.outcome {
            Outcome::CensusMatch { entry } => {
                r.check(entry.canonical_key == e.canonical_key, || format!("{}: matched a different key", e.label))
            }
            Outcome::TheoremAnomaly => r.check(false, || format!("{}: theorem anomaly", e.label)),
            Outcome::Rejected { reason } => r.check(false, || format!("{}: rejected as {}", e.label, reason.name())),
        }
    }
}

type Criterion = (&'static str, fn(&mut Report));

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("census verification of the fixed instance list", c1),
        ("isomorphism identities with explicit mappings", c2),
        ("automorphism group orders", c3),
        ("generalized Petersen arc-transitivity scan", c4),
        ("structural facts", c5),
        ("negative controls", c6),
        ("oracle equivalences", c7),
        ("gauge and primitive-element independence", c8),
        ("graph6 round trip", c9),
        ("classify round trip over census(64)", c10),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut report = Report::default();
        run(&mut report);
        let secs = start.elapsed().as_secs_f64();
        if report.failures.is_empty() && report.known.is_empty() {
            println!("PASS criterion {}: {name} ({secs:.1}s)", i + 1);
            continue;
        }
        let mut reasons: Vec<String> = report.failures.clone();
        reasons.extend(report.known.iter().map(|k| format!("{k} [known]")));
        println!("FAIL criterion {}: {name} ({secs:.1}s): {}", i + 1, reasons.join("; "));
        unexpected += report.failures.len();
    }
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
