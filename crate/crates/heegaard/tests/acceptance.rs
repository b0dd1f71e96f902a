//! Acceptance criteria 1–9. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::PathBuf;
use std::process::Command;

use heegaard::io::{read_diagram, read_system};
use heegaard_core::cover::{
    cover_basis, lift_diagram, lift_system, lift_word, lifts, project, weak_reducibility_report, CyclicHom, LiftResult,
};
use heegaard_core::diagram::{
    compress, curve_word, dualize, retain_curves, stabilization_report, validate_diagram, HeegaardDiagram,
    RibbonComplex, ROUTING_CAVEAT,
};
use heegaard_core::factor::{mha_check, MhaOverall};
use heegaard_core::freegroup::{homology, Basis, CurveSystem, CyclicWord, Letter, NamedCurve};
use heegaard_core::pretzel::{
    filling_diagram, normalize, pretzel_diagram, pretzel_words, theorem1_pipeline, xyz, PretzelParams, Status,
};
use heegaard_core::whitehead::{build_graph, decide_separability, SeparabilityWitness, Verdict, WhiteheadMove};
use heegaard_core::Error;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/v1").join(name)
}

fn params(t: &str) -> PretzelParams {
    PretzelParams::parse(t).expect("params")
}

fn bin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_heegaard")).args(args).output().expect("run heegaard");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf8"))
}

/// Expands `(a b)^k (c)` groups into a flat letter string.
fn expand(text: &str) -> String {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while let Some(open) = rest.find('(') {
        let close = rest.find(')').expect("balanced");
        let body: Vec<&str> = rest[open + 1..close].split_whitespace().collect();
        rest = &rest[close + 1..];
        let mut times = 1;
        if let Some(r) = rest.strip_prefix('^') {
            let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            times = r[..end].parse().expect("power");
            rest = &r[end..];
        }
        for _ in 0..times {
            out.extend(body.iter().copied());
        }
    }
    out.join(" ")
}

fn criterion_1() -> Outcome {
    let d1 = expand("(x^-1 y)^2 (x y^-1) (x z^-1)^2 (x^-1 z)");
    let d2 = expand("(z y^-1)^2 (z^-1 y) (z^-1 x)^2 (z x^-1)");
    let lambda = expand("(y^-1 x) (y^-1 z)^2 (x^-1 z) (x^-1 y)^2 (z^-1 y) (z^-1 x)^2");
    let want = format!("D1 = {d1}\nD2 = {d2}\nlambda = {lambda}\n");
    let (code, out) = bin(&["words", "--pretzel", "3,3,3"]);
    check!(code == 0, "exit {code}");
    check!(out == want, "got\n{out}want\n{want}");
    let mut cases = Vec::new();
    for (t, case) in [("3,3,3", 1), ("-3,3,3", 2), ("-3,3,-3", 3)] {
        let p = params(t);
        let n = normalize(&p).map_err(|e| e.to_string())?;
        check!((n.case, n.i, n.j) == (case, 1, 1), "{t}: normal form {n:?}");
        let w = pretzel_words(&p).map_err(|e| e.to_string())?;
        let d = pretzel_diagram(&p).map_err(|e| e.to_string())?;
        for c in &w.curves {
            let text = c.word.format(&w.basis);
            let reparsed = w.basis.parse_cyclic(&text).map_err(|e| e.to_string())?;
            check!(reparsed.letters() == c.word.letters(), "{t} {}: not cyclically reduced", c.name);
            let read = curve_word(&d, &c.name).map_err(|e| e.to_string())?;
            check!(read.letters() == c.word.letters(), "{t} {}: diagram reads {}", c.name, read.format(&w.basis));
            let e = c.word.abelianize(3).exponents;
            check!(e.iter().sum::<i64>() == 0, "{t} {}: exponent sum {e:?}", c.name);
        }
        cases.push(format!("case {case}: {} letters", w.curves.iter().map(|c| c.word.len()).sum::<usize>()));
    }
    let mirror = pretzel_words(&params("3,-3,-3")).map_err(|e| e.to_string())?;
    check!(mirror == pretzel_words(&params("-3,3,3")).map_err(|e| e.to_string())?, "mirror of case 2 differs");
    Ok(format!("pretzel words match character for character; {}", cases.join(", ")))
}

fn criterion_2() -> Outcome {
    let mut n = 0;
    for (a, b, c) in [(1, 1, 1), (-1, 1, 1), (-1, 1, -1)] {
        for i in 1..=3i64 {
            for j in 1..=3i64 {
                let t = [a * (2 * i + 1), b * 3, c * (2 * j + 1)];
                let p = PretzelParams::new(t.to_vec()).map_err(|e| e.to_string())?;
                let w = pretzel_words(&p).map_err(|e| e.to_string())?;
                let rels = [w.get("D1").unwrap().to_word(), w.get("D2").unwrap().to_word()];
                let h = homology(&rels, &w.basis).map_err(|e| e.to_string())?;
                check!(h.free_rank == 1 && h.torsion.is_empty(), "{t:?}: {h:?}");
                n += 1;
            }
        }
    }
    Ok(format!("H_1 = Z on {n} parameter triples"))
}

fn criterion_3() -> Outcome {
    let base = xyz();
    let ctx = cover_basis(&base, &CyclicHom::new(3, vec![1, 1, 1]).unwrap(), base.index_of("y").unwrap())
        .map_err(|e| e.to_string())?;
    let names: BTreeSet<&str> = ctx.lifted.names().iter().map(String::as_str).collect();
    let want: BTreeSet<&str> = ["X1", "X2", "X3", "Z1", "Z2", "Z3", "Y3"].into();
    check!(ctx.lifted.rank() == 7 && names == want, "lifted basis {names:?}");
    let w = pretzel_words(&params("3,3,3")).map_err(|e| e.to_string())?;
    let sheet3 = ["X3", "Y3", "Z3"];
    for c in &w.curves {
        let ls = lifts(&c.name, &c.word, &ctx).map_err(|e| e.to_string())?;
        check!(ls.len() == 3, "{}: {} lifts", c.name, ls.len());
        let mut count: BTreeMap<String, usize> = BTreeMap::new();
        for l in &ls {
            for x in l.word.letters() {
                *count.entry(ctx.lifted.name(x.generator).to_string()).or_default() += 1;
            }
        }
        for (g, lifted) in [("x", ["X1", "X2", "X3"].as_slice()), ("z", &["Z1", "Z2", "Z3"]), ("y", &["Y3"])] {
            let occ = c.word.occurrences(base.index_of(g).unwrap());
            let got: usize = lifted.iter().map(|n| count.get(*n).copied().unwrap_or(0)).sum();
            let expect = if g == "y" { occ } else { 3 * occ };
            check!(got == expect, "{}: {got} lifted {g} letters, expected {expect}", c.name);
        }
        let third = &ls[2];
        check!(third.name == format!("{}_3", c.name), "third lift named {}", third.name);
        let hit: Vec<&str> =
            third.word.letters().iter().map(|l| ctx.lifted.name(l.generator)).filter(|n| sheet3.contains(n)).collect();
        check!(hit.is_empty(), "{} meets {hit:?}", third.name);
    }
    let lifted = lift_system(&w, &ctx).map_err(|e| e.to_string())?;
    let tunnels = lifted.select(&["D1_3", "D2_3"]).map_err(|e| e.to_string())?;
    let report = weak_reducibility_report(&tunnels, &sheet3).map_err(|e| e.to_string())?;
    check!(!report.is_empty(), "weak reducibility report empty");
    let pair = &report[0];
    check!(
        pair.curves == ["D1_3", "D2_3"] && sheet3.iter().all(|d| pair.disks.iter().any(|x| x == d)),
        "pair {pair:?}"
    );
    Ok(format!("rank 7, 9 closed lifts, {{D1_3 D2_3}} miss {{{}}}", pair.disks.join(" ")))
}

fn criterion_4() -> Outcome {
    let cert = theorem1_pipeline(&params("3,3,3"), (2, 1)).map_err(|e| e.to_string())?;
    let h = &cert.h_bar_system;
    check!(h.basis.names() == ["X1", "X2", "Z1", "Z2"], "H-bar basis {:?}", h.basis.names());
    let lifted = lift_system(&pretzel_words(&params("3,3,3")).unwrap(), &cert.cover).map_err(|e| e.to_string())?;
    for c in &h.curves {
        let up = lifted.get(&c.name).ok_or("missing lift")?;
        check!(c.word.format(&h.basis) == up.format(&lifted.basis), "{} restricted differs from its lift", c.name);
    }
    let v = decide_separability(4, &h.words()).map_err(|e| e.to_string())?;
    check!(v.verdict == Verdict::Diskbusting, "pair is {:?}", v.verdict);
    for c in &h.curves {
        let s = decide_separability(4, std::slice::from_ref(&c.word)).map_err(|e| e.to_string())?;
        check!(s.verdict == Verdict::Separable, "{} is {:?}", c.name, s.verdict);
        check!(matches!(s.witness, SeparabilityWitness::ValenceOne { .. }), "{} witness {:?}", c.name, s.witness);
        check!(s.trace.is_empty(), "{} needed moves", c.name);
    }
    let m = mha_check(h).map_err(|e| e.to_string())?;
    check!(m.overall == MhaOverall::Pass, "mha {:?}", m.overall);
    Ok("pair diskbusting, singletons valence-one, MHA pass".into())
}

fn criterion_5() -> Outcome {
    let p = params("3,3,3");
    let filling = filling_diagram(&p, (2, 1)).map_err(|e| e.to_string())?;
    let ctx = cover_basis(&filling.basis().unwrap(), &CyclicHom::new(3, vec![1, 1, 1]).unwrap(), 1)
        .map_err(|e| e.to_string())?;
    let lifted = lift_diagram(&filling, &ctx).map_err(|e| e.to_string())?;
    let shipped = read_diagram(&data("diagrams/cover_3_3_3_slope_2.json")).map_err(|e| e.to_string())?;
    check!(shipped == lifted, "shipped cover fixture differs from the lift");
    let new = ["D1_1", "D1_2", "D1_3", "D2_1", "D2_2", "D2_3", "D_3"];
    let dual = dualize(&lifted, &new).map_err(|e| e.to_string())?;
    let kept = retain_curves(&dual, &["X3", "Y3", "Z3"]).map_err(|e| e.to_string())?;
    let c = compress(&kept, &["D1_3", "D2_3"]).map_err(|e| e.to_string())?;
    check!(validate_diagram(&c.diagram).is_empty(), "compressed diagram invalid");
    let basis = c.diagram.basis().map_err(|e| e.to_string())?;
    check!(basis.rank() == 5, "C-bar rank {}", basis.rank());
    let curves = ["X3", "Z3", "Y3"]
        .iter()
        .map(|n| Ok(NamedCurve { name: n.to_string(), word: curve_word(&c.diagram, n)? }))
        .collect::<heegaard_core::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let sys = CurveSystem::new(basis.clone(), curves).map_err(|e| e.to_string())?;
    let cert = theorem1_pipeline(&p, (2, 1)).map_err(|e| e.to_string())?;
    check!(sys == cert.c_bar_system, "pipeline C-bar system differs");
    let m = mha_check(&sys).map_err(|e| e.to_string())?;
    check!(m.overall == MhaOverall::Pass, "mha {:?}", m.overall);
    let d = basis.index_of("D_3").ok_or("no D_3 disk")?;
    let key = |names: &[String]| names.iter().cloned().collect::<BTreeSet<_>>();
    let subset = |a: &[&str]| a.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
    let mut seen = 0;
    for s in &m.subsets {
        let k = key(&s.curves);
        let ev = &s.report.initial;
        if s.curves.len() == 1 {
            check!(!ev.connected, "{:?} graph connected", s.curves);
            seen += 1;
        } else if k == subset(&["Y3", "Z3"]) {
            check!(!ev.support.contains(&d), "{{Y3 Z3}} support contains D_3");
            seen += 1;
        } else if k == subset(&["X3", "Y3"]) || k == subset(&["X3", "Z3"]) {
            let bridge = ev.bridges.iter().find(|b| b.generator == d);
            check!(bridge.is_some(), "{:?} has no bridge at D_3", s.curves);
            check!(bridge.unwrap().certificate.is_some(), "{:?} bridge at D_3 uncertified", s.curves);
            seen += 1;
        }
    }
    check!(seen == 6, "saw {seen} of 6 subsets");
    Ok("MHA pass on F_5; singletons disconnected, {Y3 Z3} misses D_3, bridges at D_3".into())
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    for (t, case) in [("3,3,3", 1), ("-3,3,3", 2), ("-3,3,-3", 3)] {
        let cert = theorem1_pipeline(&params(t), (2, 1)).map_err(|e| e.to_string())?;
        check!(cert.normalized.case == case, "{t}: case {}", cert.normalized.case);
        check!(cert.overall == Status::Pass, "{t}: {:?}", cert.overall);
        let args = ["pipeline", "--pretzel", t, "--slope", "2/1", "--json"];
        let (c1, a) = bin(&args);
        let (c2, b) = bin(&args);
        let (c3, par) = bin(&[&args[..], &["--parallel"]].concat());
        check!(c1 == 0 && c2 == 0 && c3 == 0, "{t}: exit codes {c1} {c2} {c3}");
        check!(a == b, "{t}: JSON differs between runs");
        check!(a == par, "{t}: parallel JSON differs");
        check!(a.contains("\"generator\": \"heegaard"), "{t}: no generator header");
        notes.push(format!("case {case} ({t})"));
    }
    Ok(format!("Pass for {}; JSON byte-identical", notes.join(", ")))
}

/// Letters as nonzero integers: ±1 for x, ±2 for y.
fn reduce_cyclic(mut w: Vec<i8>) -> Vec<i8> {
    let mut out: Vec<i8> = Vec::new();
    for l in w.drain(..) {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    while out.len() >= 2 && out[0] == -out[out.len() - 1] {
        out.pop();
        out.remove(0);
    }
    out
}

fn canonical(w: &[i8]) -> Vec<i8> {
    (0..w.len().max(1)).map(|r| [&w[r.min(w.len())..], &w[..r.min(w.len())]].concat()).min().unwrap_or_default()
}

fn vertex(l: i8) -> usize {
    2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0)
}

fn disconnected(w: &[i8]) -> bool {
    let mut parent = [0, 1, 2, 3];
    fn find(p: &mut [usize; 4], x: usize) -> usize {
        if p[x] == x {
            x
        } else {
            let r = find(p, p[x]);
            p[x] = r;
            r
        }
    }
    for i in 0..w.len() {
        let (a, b) = (vertex(-w[i]), vertex(w[(i + 1) % w.len()]));
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    (0..4).filter(|&v| find(&mut parent, v) == v).count() > 1
}

fn whitehead_image(w: &[i8], a: i8, set: &[i8]) -> Vec<i8> {
    let mut out = Vec::new();
    for &l in w {
        if l.abs() == a.abs() {
            out.push(l);
            continue;
        }
        let g = l.abs();
        let mut img = Vec::new();
        if set.contains(&-g) {
            img.push(-a);
        }
        img.push(g);
        if set.contains(&g) {
            img.push(a);
        }
        if l < 0 {
            img = img.iter().rev().map(|x| -x).collect();
        }
        out.extend(img);
    }
    reduce_cyclic(out)
}

fn all_words(max: usize) -> Vec<Vec<i8>> {
    let mut seen = BTreeSet::new();
    let mut layer: Vec<Vec<i8>> = vec![vec![]];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            for l in [1, -1, 2, -2] {
                if w.last() == Some(&-l) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        for w in &next {
            if w[0] != -w[w.len() - 1] {
                seen.insert(canonical(w));
            }
        }
        layer = next;
    }
    seen.into_iter().collect()
}

fn criterion_7() -> Outcome {
    let bound = 8;
    let states = all_words(bound);
    let index: HashMap<Vec<i8>, usize> = states.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut parent: Vec<usize> = (0..states.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let subsets: [&[i8]; 4] = [&[], &[1], &[-1], &[1, -1]];
    for (i, w) in states.iter().enumerate() {
        for a in [1i8, -1, 2, -2] {
            let other = 3 - a.abs();
            for s in subsets {
                let set: Vec<i8> = s.iter().map(|&e| e * other).collect();
                let img = whitehead_image(w, a, &set);
                if let Some(&j) = index.get(&canonical(&img)) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut separable_root = vec![false; states.len()];
    for (i, w) in states.iter().enumerate() {
        if disconnected(w) {
            let r = find(&mut parent, i);
            separable_root[r] = true;
        }
    }
    let basis = Basis::new(["x", "y"]).unwrap();
    let to_cyclic =
        |w: &[i8]| CyclicWord::from_letters(w.iter().map(|&l| Letter::new(l.unsigned_abs() as usize - 1, l < 0)));
    let mut checked = 0;
    let mut disagreements = Vec::new();
    for (i, w) in states.iter().enumerate() {
        if w.len() > 6 {
            continue;
        }
        let oracle = separable_root[find(&mut parent, i)];
        let v = decide_separability(2, &[to_cyclic(w)]).map_err(|e| e.to_string())?;
        if oracle != (v.verdict == Verdict::Separable) {
            disagreements.push(to_cyclic(w).format(&basis));
        }
        checked += 1;
    }
    check!(
        disagreements.is_empty(),
        "{} disagreements, e.g. {:?}",
        disagreements.len(),
        &disagreements[..disagreements.len().min(5)]
    );
    for (text, separable) in [("x", true), ("x y x^-1 y^-1", false), ("x x y y", false)] {
        let w = basis.parse_cyclic(text).unwrap();
        let ints: Vec<i8> =
            w.letters().iter().map(|l| (l.generator as i8 + 1) * if l.inverse { -1 } else { 1 }).collect();
        let oracle = separable_root[find(&mut parent, index[&canonical(&ints)])];
        let v = decide_separability(2, &[w]).map_err(|e| e.to_string())?;
        check!(oracle == separable && (v.verdict == Verdict::Separable) == separable, "anchor {text}");
    }
    Ok(format!("{checked} cyclic words agree with the orbit oracle over {} states", states.len()))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn sample<S: Strategy>(r: &mut TestRunner, s: &S) -> S::Value {
    s.new_tree(r).expect("strategy").current()
}

fn letter(rank: usize) -> impl Strategy<Value = Letter> {
    (0..rank, proptest::bool::ANY).prop_map(|(g, i)| Letter::new(g, i))
}

fn random_system(rank: usize) -> impl Strategy<Value = Vec<CyclicWord>> {
    proptest::collection::vec(
        proptest::collection::vec(letter(rank), 1..=12)
            .prop_map(CyclicWord::from_letters)
            .prop_filter("nonempty", |w| !w.is_empty()),
        1..=4,
    )
}

fn all_fixture_diagrams() -> Result<Vec<(String, HeegaardDiagram)>, String> {
    let mut out = Vec::new();
    for name in [
        "pretzel_3_3_3",
        "pretzel_-3_3_3",
        "pretzel_-3_3_-3",
        "filling_3_3_3_slope_2",
        "cover_3_3_3_slope_2",
        "cover_3_3_3_slope_2_tunnels",
    ] {
        let d = read_diagram(&data(&format!("diagrams/{name}.json"))).map_err(|e| format!("{name}: {e}"))?;
        out.push((name.to_string(), d));
    }
    Ok(out)
}

fn criterion_8() -> Outcome {
    let mut r = runner(1000);
    for _ in 0..1000 {
        let rank = sample(&mut r, &(1usize..=4));
        let sys = sample(&mut r, &random_system(rank));
        let g = build_graph(rank, &sys);
        let total: usize = sys.iter().map(CyclicWord::len).sum();
        check!(g.edges().len() == total, "edge law fails on {sys:?}");
        for v in 0..2 * rank {
            let l = Letter::from_vertex(v);
            let occ: usize = sys.iter().flat_map(|w| w.letters()).filter(|&&x| x == l || x == l.inv()).count();
            check!(g.degree(v) == occ, "degree law fails at {v} on {sys:?}");
        }
    }
    let mut r = runner(100);
    for _ in 0..100 {
        let rank = sample(&mut r, &(2usize..=3));
        let sys = sample(&mut r, &random_system(rank));
        let a = sample(&mut r, &letter(rank));
        let mut set: Vec<Letter> = sample(&mut r, &proptest::collection::vec(letter(rank), 0..=2 * rank))
            .into_iter()
            .filter(|l| l.generator != a.generator)
            .collect();
        set.push(a);
        let m = WhiteheadMove::new(a, set).map_err(|e| e.to_string())?;
        let image: Vec<CyclicWord> = sys.iter().map(|w| m.apply(w)).collect();
        if image.iter().any(CyclicWord::is_empty) {
            continue;
        }
        let before = decide_separability(rank, &sys).map_err(|e| e.to_string())?.verdict;
        let after = decide_separability(rank, &image).map_err(|e| e.to_string())?.verdict;
        check!(before == after, "verdict changed under {m:?} on {sys:?}");
    }
    let mut diagrams = 0;
    let mut incomplete = Vec::new();
    for (name, d) in all_fixture_diagrams()? {
        let disks: Vec<&str> = d.disks.iter().map(String::as_str).collect();
        let curves: Vec<&str> = if name == "cover_3_3_3_slope_2" {
            vec!["D1_1", "D1_2", "D1_3", "D2_1", "D2_2", "D2_3", "D_3"]
        } else {
            d.curves.iter().map(String::as_str).collect()
        };
        let chi = RibbonComplex::build(&d).euler_characteristic();
        check!(chi == 2 - 2 * d.disks.len() as i64, "{name}: chi {chi}");
        let dual = match dualize(&d, &curves) {
            Ok(x) => x,
            Err(Error::IncompleteDiskSystem(_)) => {
                diagrams += 1;
                incomplete.push(name);
                continue;
            }
            Err(e) => return Err(format!("{name}: {e}")),
        };
        let back = dualize(&dual, &disks).map_err(|e| format!("{name}: {e}"))?;
        for c in &curves {
            let w = curve_word(&d, c).map_err(|e| e.to_string())?;
            let v = curve_word(&back, c).map_err(|e| e.to_string())?;
            check!(v == w || v == w.inverse(), "{name} {c}: double dual changes the word");
        }
        for (label, x) in [("", &d), (" dual", &dual), (" double dual", &back)] {
            let chi = RibbonComplex::build(x).euler_characteristic();
            check!(chi == 2 - 2 * x.disks.len() as i64, "{name}{label}: chi {chi}");
            diagrams += 1;
        }
    }
    let ctx = cover_basis(&xyz(), &CyclicHom::new(3, vec![1, 1, 1]).unwrap(), 1).unwrap();
    let mut r = runner(200);
    let mut lifted = 0;
    while lifted < 200 {
        let mut letters = sample(&mut r, &proptest::collection::vec(letter(3), 0..=15));
        let h = ctx.hom.word(&letters);
        letters.extend(std::iter::repeat(Letter::pos(0)).take((3 - h) % 3));
        let w = CyclicWord::from_letters(letters);
        if w.is_empty() {
            continue;
        }
        for s in 1..=3 {
            match lift_word(&w, &ctx, s).map_err(|e| e.to_string())? {
                LiftResult::Closed(l) => {
                    let back = project(&l, &ctx).map_err(|e| e.to_string())?;
                    check!(back == w, "projection of lift differs for {}", w.format(&ctx.base));
                }
                LiftResult::Open { .. } => return Err(format!("{} lifted open", w.format(&ctx.base))),
            }
        }
        lifted += 1;
    }
    Ok(format!(
        "1000 graph laws, 100 move invariances, Euler on {diagrams} diagrams, double dual on all but {incomplete:?} (not a complete disk system), 200 lifts"
    ))
}

fn criterion_9() -> Outcome {
    let d = read_diagram(&data("diagrams/cover_3_3_3_slope_2_tunnels.json")).map_err(|e| e.to_string())?;
    let r = stabilization_report(&d).map_err(|e| e.to_string())?;
    let flagged: Vec<String> = r.flagged().map(|p| format!("{}/{}", p.curve, p.disk)).collect();
    check!(!flagged.is_empty(), "no pair meets once");
    check!(r.caveat == ROUTING_CAVEAT, "caveat {:?}", r.caveat);
    let (code, out) = bin(&["stabilization", "--pretzel", "3,3,3", "--slope", "2/1"]);
    check!(code == 0 && out.contains(&format!("caveat: {ROUTING_CAVEAT}")), "CLI exit {code}");
    let sys = read_system(&data("systems/pretzel_3_3_3.json")).map_err(|e| e.to_string())?;
    check!(sys == pretzel_words(&params("3,3,3")).unwrap(), "shipped system differs");
    Ok(format!("{} pairs meet once, e.g. {}", flagged.len(), flagged[0]))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("word generation", criterion_1),
        ("homology", criterion_2),
        ("cover structure", criterion_3),
        ("H-bar certification", criterion_4),
        ("C-bar certification", criterion_5),
        ("pipeline", criterion_6),
        ("oracle equivalence", criterion_7),
        ("invariant suites", criterion_8),
        ("stabilization", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let result = f();
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
