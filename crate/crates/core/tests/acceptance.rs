//! Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fanbranch::cft::{assemble_partition_function, coset_characters, is_conformal};
use fanbranch::linalg::{q, q_frac};
use fanbranch::oracle::brute_force_branch;
use fanbranch::rootdata::weyl_orbit_signed;
use fanbranch::{
    select_u, AnomalousTable, Brancher, BranchingTable, EmbeddingSpec, Fan, FormalElement, LabelPoint, Rational,
    ResolvedEmbedding, SingularElement, Weight,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn pt(labels: &[i64], grade: i64) -> LabelPoint {
    LabelPoint::new(labels.to_vec(), grade)
}

fn formal(terms: &[(&[i64], i64, i64)]) -> FormalElement<LabelPoint> {
    terms.iter().map(|(l, g, c)| (pt(l, *g), big(*c))).collect()
}

fn class_map(t: &BranchingTable) -> BTreeMap<Vec<i64>, BigInt> {
    t.class_totals()
}

fn show_classes(t: &BranchingTable) -> String {
    let level = t.a_level().map(|l| l.to_string());
    let parts: Vec<String> = t
        .class_totals()
        .into_iter()
        .map(|(l, c)| {
            let labels: Vec<String> = l.iter().map(i64::to_string).collect();
            match &level {
                Some(k) => format!("({};{};0):{c}", labels.join(","), k),
                None => format!("{:?}:{c}", l),
            }
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn within(start: Instant, limit: Duration) -> Check {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("runtime {spent:?} exceeds {limit:?}"))
}

/// `Psi[xi] + sum s(gamma) k[xi + gamma] = 0` at every point where either side can be nonzero.
fn residual_vanishes(sing: &SingularElement, fan: &Fan, anom: &AnomalousTable) -> Check {
    let floor = anom.floor().unwrap_or(i64::MIN);
    let mut points: BTreeSet<LabelPoint> = sing.terms().keys().cloned().collect();
    for k in anom.terms().keys() {
        for g in fan.carrier().keys() {
            points.insert(k - g);
        }
    }
    for xi in points.iter().filter(|p| p.grade >= floor) {
        let r = anom.residual(sing, fan, xi);
        ensure(r == BigInt::from(0), || format!("residual {r} at {xi}"))?;
    }
    Ok(())
}

fn tables_agree(engine: &BranchingTable, oracle: &BranchingTable, floor: Option<i64>) -> Check {
    let keep = |t: &BranchingTable| -> BTreeMap<LabelPoint, BigInt> {
        t.entries().iter().filter(|(p, _)| floor.is_none_or(|f| p.grade >= f)).map(|(p, c)| (p.clone(), c.clone())).collect()
    };
    let (a, b) = (keep(engine), keep(oracle));
    ensure(a == b, || format!("engine {a:?} != oracle {b:?}"))
}

fn a1_in_b2() -> EmbeddingSpec {
    EmbeddingSpec::regular("B2", "A1", &[1, 2]).unwrap()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let b = Brancher::new(&a1_in_b2(), None).map_err(|e| e.to_string())?;
    let fan = b.fan();
    ensure(fan.gamma0() == &pt(&[0], 0) && fan.s0() == &big(-1), || format!("fan base {fan}"))?;
    let shifted: Vec<(LabelPoint, BigInt)> = vec![(pt(&[1], 0), big(2)), (pt(&[2], 0), big(-1))];
    ensure(fan.shifted() == shifted.as_slice(), || format!("fan {fan}"))?;

    let mu = b.g().from_labels(&[1, 0], 0, 0);
    let sing = b.singular(&mu).map_err(|e| e.to_string())?;
    let expect = formal(&[(&[1], 0, 2), (&[0], 0, -3), (&[-4], 0, 3), (&[-5], 0, -2)]);
    ensure(sing.terms() == &expect, || format!("singular element {sing}"))?;

    let anom = b.anomalous(&mu).map_err(|e| e.to_string())?;
    ensure(anom.coefficient(&pt(&[1], 0)) == big(2), || "k_1 != 2".into())?;
    ensure(anom.coefficient(&pt(&[0], 0)) == big(1), || "k_0 != 1".into())?;

    let t = b.branch(&mu).map_err(|e| e.to_string())?;
    let want: BTreeMap<Vec<i64>, BigInt> = [(vec![1], big(2)), (vec![2], big(1))].into_iter().collect();
    ensure(class_map(&t) == want, || {
        format!("branching is {} but the stated result is {{ω:2, 2ω:1}}", show_classes(&t))
    })?;
    within(start, Duration::from_secs(1))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let spec = EmbeddingSpec::regular("B4", "B2", &[2]).unwrap();
    let b = Brancher::new(&spec, None).map_err(|e| e.to_string())?;
    let mu = b.g().from_labels(&[0, 1, 0, 2], 0, 0);

    let orbit = weyl_orbit_signed(&(&mu + &b.g().rho()), b.g(), None).map_err(|e| e.to_string())?.count();
    ensure(orbit == 384, || format!("signed orbit has {orbit} points"))?;
    let u = select_u(&mu, b.embedding(), b.orthogonal(), None).map_err(|e| e.to_string())?;
    ensure(u.len() == 48, || format!("|U| = {}", u.len()))?;
    let defect = vec![q(-2), q(-2), q(0), q(0)];
    ensure(b.orthogonal().defect_perp() == &defect, || format!("D_perp = {:?}", b.orthogonal().defect_perp()))?;

    let t = b.branch(&mu).map_err(|e| e.to_string())?;
    let want: BTreeMap<Vec<i64>, BigInt> = [
        (vec![0, 0], 6),
        (vec![0, 2], 60),
        (vec![1, 0], 30),
        (vec![2, 0], 19),
        (vec![1, 2], 40),
        (vec![0, 4], 10),
    ]
    .into_iter()
    .map(|(l, c)| (l, big(c)))
    .collect();
    ensure(class_map(&t) == want, || format!("branching {}", show_classes(&t)))?;

    let mut total = BigInt::from(0);
    for (p, c) in t.entries() {
        let nu = b.embedding().a_weight(p, &q(0));
        total += c * b.a().weyl_dim(&nu).map_err(|e| e.to_string())?;
    }
    ensure(total == big(2772), || format!("dimension sum {total}"))?;
    within(start, Duration::from_secs(10))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let b = Brancher::new(&EmbeddingSpec::principal_a1_in_a2(true), Some(6)).map_err(|e| e.to_string())?;
    ensure(b.fan().gamma0().is_zero() && b.fan().s0() == &big(-1), || format!("fan base {}", b.fan()))?;

    let vacuum = b.branch(&b.g().from_labels(&[0, 0], 1, 0)).map_err(|e| e.to_string())?;
    let want: BTreeMap<Vec<i64>, BigInt> = [(vec![0], big(1)), (vec![4], big(1))].into_iter().collect();
    ensure(class_map(&vacuum) == want, || format!("(0,0;1;0) gives {}", show_classes(&vacuum)))?;
    for labels in [[1, 0], [0, 1]] {
        let t = b.branch(&b.g().from_labels(&labels, 1, 0)).map_err(|e| e.to_string())?;
        let want: BTreeMap<Vec<i64>, BigInt> = [(vec![2], big(1))].into_iter().collect();
        ensure(class_map(&t) == want, || format!("{labels:?} gives {}", show_classes(&t)))?;
    }

    let z = assemble_partition_function(&b, 1).map_err(|e| e.to_string())?;
    let rendered = z.render();
    let expect = "Z = |χ_{(4;4;0)} + χ_{(0;4;0)}|^2 + 2|χ_{(2;4;0)}|^2";
    ensure(rendered == expect, || format!("rendered {rendered}"))?;
    let m = z.mass_matrix();
    let trace: BigInt = (0..m.len()).map(|i| m[i][i].clone()).sum();
    ensure(trace == big(4), || format!("mass matrix trace {trace}"))?;
    let symmetric = (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == m[j][i]));
    ensure(symmetric, || "mass matrix not symmetric".into())?;
    within(start, Duration::from_secs(30))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let spec = EmbeddingSpec::regular("B2^", "A1^", &[1, 2]).unwrap();
    let b = Brancher::new(&spec, Some(12)).map_err(|e| e.to_string())?;
    let mu = b.g().from_labels(&[1, 0], 1, 0);
    let t = b.branch(&mu).map_err(|e| e.to_string())?;
    let series: BTreeMap<Vec<i64>, Vec<BigInt>> =
        t.branching_functions().into_iter().map(|f| (f.labels, f.coefficients)).collect();
    let b0: Vec<BigInt> = [1, 4, 8, 15, 29, 51, 85, 139, 222, 346, 530, 797, 1180].into_iter().map(big).collect();
    let b1: Vec<BigInt> = [2, 2, 8, 12, 26, 42, 78, 120, 202, 306, 482, 714, 1080].into_iter().map(big).collect();
    ensure(series.get(&vec![0]) == Some(&b0), || format!("b_0 = {:?}", series.get(&vec![0])))?;
    ensure(series.get(&vec![1]) == Some(&b1), || format!("b_1 = {:?}", series.get(&vec![1])))?;
    ensure(series.len() == 2, || format!("{} branching functions", series.len()))?;

    let sing = b.singular(&mu).map_err(|e| e.to_string())?;
    let slice = sing.terms().filter(|p| p.grade == 0);
    let finite = formal(&[(&[1], 0, 2), (&[0], 0, -3), (&[-4], 0, 3), (&[-5], 0, -2)]);
    ensure(slice == finite, || format!("grade-0 slice {slice:?}"))?;
    within(start, Duration::from_secs(300))?;

    let chars = coset_characters(&t, &mu, b.embedding()).map_err(|e| e.to_string())?;
    let prefactor = |l: i64| chars.iter().find(|(labels, _)| labels == &vec![l]).map(|(_, s)| s.exponent.clone());
    let (p1, p0) = (prefactor(1), prefactor(0));
    ensure(p1 == Some(q_frac(7, 12)) && p0 == Some(q_frac(5, 6)), || {
        let show = |p: Option<Rational>| p.map_or("none".to_string(), |r| r.to_string());
        format!("prefactors are q^{} (ω1) and q^{} (ω0), stated q^7/12 and q^5/6", show(p1), show(p0))
    })
}

const EMBEDDINGS: &[(&str, &str, &[usize])] = &[
    ("B2", "A1", &[1, 2]),
    ("A3", "A2", &[0, 3]),
    ("C3", "C2", &[1]),
    ("D4", "A3", &[0, 4]),
    ("B3", "A3", &[3]),
    ("B4", "B2", &[2]),
    ("A4", "A2", &[0, 1, 4]),
    ("C2", "A1", &[1, 2]),
    ("A2", "A2", &[]),
    ("B3", "A1", &[1, 2, 3]),
];

fn random_instances(n: usize) -> Vec<(EmbeddingSpec, Weight)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f4b2);
    let mut out = Vec::new();
    while out.len() < n {
        let (g, a, drop) = EMBEDDINGS[rng.gen_range(0..EMBEDDINGS.len())];
        let spec = EmbeddingSpec::regular(g, a, drop).unwrap();
        let e = ResolvedEmbedding::new(&spec).unwrap();
        let labels: Vec<i64> = (0..e.g().rank()).map(|_| rng.gen_range(0..=2)).collect();
        let mu = e.g().from_labels(&labels, 0, 0);
        if e.g().weyl_dim(&mu).unwrap() <= big(10_000) {
            out.push((spec, mu));
        }
    }
    out
}

fn criterion_5() -> Check {
    // (a), (b): residual and oracle agreement on randomized finite instances.
    let instances = random_instances(12);
    for (spec, mu) in &instances {
        let b = Brancher::new(spec, None).map_err(|e| e.to_string())?;
        let sing = b.singular(mu).map_err(|e| e.to_string())?;
        let anom = b.anomalous(mu).map_err(|e| e.to_string())?;
        residual_vanishes(&sing, b.fan(), &anom).map_err(|m| format!("{} {mu}: {m}", spec.to_json()))?;
        let engine = b.branch(mu).map_err(|e| e.to_string())?;
        let oracle = brute_force_branch(mu, b.embedding(), None, 1_000_000).map_err(|e| e.to_string())?;
        tables_agree(&engine, &oracle, None).map_err(|m| format!("{} {mu}: {m}", spec.to_json()))?;
    }

    // (b): affine instances through grade 6.
    let affine: Vec<(EmbeddingSpec, Vec<Vec<i64>>)> = vec![
        (EmbeddingSpec::principal_a1_in_a2(true), vec![vec![0, 0], vec![1, 0], vec![0, 1]]),
        (EmbeddingSpec::regular("B2^", "A1^", &[1, 2]).unwrap(), vec![vec![1, 0]]),
    ];
    for (spec, weights) in &affine {
        let b = Brancher::new(spec, Some(6)).map_err(|e| e.to_string())?;
        for labels in weights {
            let mu = b.g().from_labels(labels, 1, 0);
            let sing = b.singular(&mu).map_err(|e| e.to_string())?;
            let anom = b.anomalous(&mu).map_err(|e| e.to_string())?;
            residual_vanishes(&sing, b.fan(), &anom).map_err(|m| format!("affine {mu}: {m}"))?;
            let engine = b.branch(&mu).map_err(|e| e.to_string())?;
            let oracle = brute_force_branch(&mu, b.embedding(), Some(6), 5_000_000).map_err(|e| e.to_string())?;
            tables_agree(&engine, &oracle, Some(-6)).map_err(|m| format!("affine {mu}: {m}"))?;
        }
    }

    // (c): maximal regular embeddings have a trivial partner and reproduce the projected singular element.
    for (g, a, drop, labels) in [("B3", "A3", &[3usize][..], vec![1, 0, 1]), ("B4", "D4", &[4][..], vec![0, 1, 0, 1])] {
        let b = Brancher::new(&EmbeddingSpec::regular(g, a, drop).unwrap(), None).map_err(|e| e.to_string())?;
        ensure(b.orthogonal().positive_roots().is_empty(), || format!("{g} ⊃ {a} has roots in the partner"))?;
        let mu = b.g().from_labels(&labels, 0, 0);
        let rho = b.g().rho();
        let mut projected = FormalElement::new();
        for p in weyl_orbit_signed(&(&mu + &rho), b.g(), None).map_err(|e| e.to_string())? {
            let key = b.embedding().labels(&(&p.weight - &rho)).map_err(|e| e.to_string())?;
            projected.add_term(key, big(p.sign as i64));
        }
        let sing = b.singular(&mu).map_err(|e| e.to_string())?;
        ensure(sing.terms() == &projected, || format!("{g} ⊃ {a}: reduced singular element differs"))?;
        let u = select_u(&mu, b.embedding(), b.orthogonal(), None).map_err(|e| e.to_string())?;
        ensure(u.iter().all(|c| c.dim == big(1)), || format!("{g} ⊃ {a}: weighted terms present"))?;
    }

    // (d): a = g.
    for (g, labels) in [("B2", vec![1, 1]), ("A3", vec![1, 0, 2]), ("D4", vec![0, 1, 0, 0])] {
        let spec = EmbeddingSpec::regular(g, g, &[]).unwrap();
        let b = Brancher::new(&spec, None).map_err(|e| e.to_string())?;
        let t = b.branch(&b.g().from_labels(&labels, 0, 0)).map_err(|e| e.to_string())?;
        let want: BTreeMap<Vec<i64>, BigInt> = [(labels.clone(), big(1))].into_iter().collect();
        ensure(class_map(&t) == want, || format!("{g} ⊂ {g}: {}", show_classes(&t)))?;
    }
    let b = Brancher::new(&EmbeddingSpec::regular("A1^", "A1^", &[]).unwrap(), Some(5)).map_err(|e| e.to_string())?;
    let t = b.branch(&b.g().from_labels(&[1], 2, 0)).map_err(|e| e.to_string())?;
    let want: BTreeMap<LabelPoint, BigInt> = [(pt(&[1], 0), big(1))].into_iter().collect();
    ensure(t.entries() == &want, || format!("A1^ ⊂ A1^: {:?}", t.entries()))?;

    // (e): cutoff stability and fan reconstruction.
    let spec = EmbeddingSpec::regular("B2^", "A1^", &[1, 2]).unwrap();
    let lo = Brancher::new(&spec, Some(4)).map_err(|e| e.to_string())?;
    let hi = Brancher::new(&spec, Some(7)).map_err(|e| e.to_string())?;
    let mu = lo.g().from_labels(&[0, 1], 1, 0);
    let (tl, th) = (lo.branch(&mu).map_err(|e| e.to_string())?, hi.branch(&mu).map_err(|e| e.to_string())?);
    tables_agree(&tl, &th, Some(-4)).map_err(|m| format!("cutoff stability: {m}"))?;
    ensure(hi.fan().truncated(4) == lo.fan().carrier().clone(), || "fan truncation differs".into())?;
    for (g, a, drop) in EMBEDDINGS {
        let b = Brancher::new(&EmbeddingSpec::regular(g, a, drop).unwrap(), None).map_err(|e| e.to_string())?;
        ensure(&b.fan().reconstruct() == b.fan().carrier(), || format!("{g} ⊃ {a}: fan reconstruction"))?;
    }

    // (f): partner of B2 in B4.
    let b = Brancher::new(&EmbeddingSpec::regular("B4", "B2", &[2]).unwrap(), None).map_err(|e| e.to_string())?;
    let o = b.orthogonal();
    ensure(o.describe() == "B2", || format!("partner is {}", o.describe()))?;
    let roots: BTreeSet<Vec<Rational>> = o.positive_roots().iter().cloned().collect();
    let want: BTreeSet<Vec<Rational>> = [[1, -1, 0, 0], [1, 1, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0]]
        .iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect();
    ensure(roots == want, || format!("partner roots {roots:?}"))
}

fn criterion_6() -> Check {
    let b = Brancher::new(&EmbeddingSpec::principal_a1_in_a2(true), Some(10)).map_err(|e| e.to_string())?;
    let report = is_conformal(b.embedding(), b.orthogonal(), &q(1)).map_err(|e| e.to_string())?;
    ensure(report.conformal, || "not conformal at level 1".into())?;
    ensure(report.c_g == q(2) && report.c_a == q(2), || format!("c = {} vs {}", report.c_g, report.c_a))?;
    ensure(report.perp_roots_empty, || "partner has roots".into())?;
    let short = Brancher::new(&EmbeddingSpec::principal_a1_in_a2(true), Some(6)).map_err(|e| e.to_string())?;
    for labels in [[0, 0], [1, 0], [0, 1]] {
        let mu = b.g().from_labels(&labels, 1, 0);
        let (deep, shallow) = (b.branch(&mu).map_err(|e| e.to_string())?, short.branch(&mu).map_err(|e| e.to_string())?);
        ensure(deep.entries() == shallow.entries(), || format!("{labels:?}: new terms appear below grade -6"))?;
        ensure(deep.entries().len() <= 2, || format!("{labels:?}: {} terms", deep.entries().len()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("1 finite A1 in B2", criterion_1),
        ("2 finite B2 in B4", criterion_2),
        ("3 affine special A1^ in A2^", criterion_3),
        ("4 affine coset A1^ in B2^", criterion_4),
        ("5 property suite", criterion_5),
        ("6 conformal check", criterion_6),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(()) => println!("criterion {name}: PASS ({:?})", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({:?}): {why}", start.elapsed());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
