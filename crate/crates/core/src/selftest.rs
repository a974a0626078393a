//! Seeded cross-validation suite: group axioms on random samples,
//! invariant-vs-oracle agreement, diagram normal form uniqueness, and
//! thread-count determinism. Every check is deterministic given the seed.

use crate::diagram::{
    diagram_conj_key, thompson_f_group, wreath_zz_witness, Diagram, DiagramGroup, PClassBudget,
    Presentation, Step,
};
use crate::engine::{
    conjugacy_count_exact, conjugacy_count_oracle, enumerate_ball, EngineConfig, Group,
};
use crate::groups::britton::hnn_witness_classes;
use crate::groups::permshift::lamp_witness;
use crate::word::{compositions, Word};
use crate::{Bs1nI64, HeisenbergI64, PermShift};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(results: &mut Vec<CheckResult>, name: &str, passed: bool, detail: String) {
    results.push(CheckResult {
        name: name.to_string(),
        passed,
        detail,
    });
}

/// Random walk sample from the radius-4 ball.
fn sample_element<G: Group>(group: &G, rng: &mut ChaCha8Rng) -> G::Elem {
    let gens: Vec<G::Elem> = group.generators().into_iter().map(|(_, e)| e).collect();
    let mut e = group.identity();
    for _ in 0..rng.gen_range(0..=4) {
        let s = &gens[rng.gen_range(0..gens.len())];
        e = group.multiply(&e, s);
    }
    e
}

fn axioms_hold<G: Group>(group: &G, rng: &mut ChaCha8Rng, trials: usize) -> bool {
    for _ in 0..trials {
        let a = sample_element(group, rng);
        let b = sample_element(group, rng);
        let c = sample_element(group, rng);
        let assoc = group.multiply(&group.multiply(&a, &b), &c)
            == group.multiply(&a, &group.multiply(&b, &c));
        let inv = group.multiply(&a, &group.invert(&a)) == group.identity();
        let id = group.multiply(&group.identity(), &a) == a;
        if !(assoc && inv && id) {
            return false;
        }
    }
    true
}

/// A uniformly random valid derivation from the given top word.
pub fn random_derivation_from(
    pres: &Arc<Presentation>,
    rng: &mut ChaCha8Rng,
    top: Word,
    max_steps: usize,
) -> Diagram {
    let mut steps = Vec::new();
    let mut word = top.clone();
    for _ in 0..max_steps {
        let options = applicable_steps(pres, &word);
        if options.is_empty() {
            break;
        }
        let s = options[rng.gen_range(0..options.len())];
        steps.push(s);
        let mut lits = word.lits().to_vec();
        crate::diagram::apply_step(pres, &mut lits, &s).expect("applicable");
        word = Word::from_lits(lits);
    }
    Diagram::from_steps(pres, top, steps).expect("constructed valid")
}

/// A uniformly random valid derivation over the presentation.
pub fn random_diagram(
    pres: &Arc<Presentation>,
    rng: &mut ChaCha8Rng,
    max_top_len: usize,
    max_steps: usize,
) -> Diagram {
    let nletters = pres.alphabet().len() as u16;
    let len = rng.gen_range(1..=max_top_len);
    let top = Word::from_ids(&(0..len).map(|_| rng.gen_range(0..nletters)).collect::<Vec<_>>());
    random_derivation_from(pres, rng, top, max_steps)
}

fn applicable_steps(pres: &Presentation, word: &Word) -> Vec<Step> {
    let mut out = Vec::new();
    for (i, cell) in pres.cells().iter().enumerate() {
        for (dir, src) in [
            (crate::diagram::Dir::Forward, &cell.top),
            (crate::diagram::Dir::Inverse, &cell.bottom),
        ] {
            let sl = src.len();
            if sl > word.len() {
                continue;
            }
            for p in 0..=word.len() - sl {
                if &word.lits()[p..p + sl] == src.lits() {
                    out.push(Step {
                        cell: i as u16,
                        dir,
                        offset: p as u32,
                    });
                }
            }
        }
    }
    out
}

/// An equivalent raw derivation: random commutation swaps, plus optional
/// dipole insertions (which change the diagram but not its reduced form).
pub fn equivalent_derivation(
    d: &Diagram,
    rng: &mut ChaCha8Rng,
    swaps: usize,
    dipoles: usize,
) -> Diagram {
    let pres = d.presentation().clone();
    let mut steps: Vec<Step> = d.steps().to_vec();
    for _ in 0..dipoles {
        let pos = rng.gen_range(0..=steps.len());
        let word = crate::diagram::replay(&pres, d.top(), &steps[..pos])
            .expect("prefix of valid derivation");
        let options = applicable_steps(&pres, &word);
        if options.is_empty() {
            continue;
        }
        let s = options[rng.gen_range(0..options.len())];
        let mirror = Step {
            dir: s.dir.flip(),
            ..s
        };
        steps.insert(pos, mirror);
        steps.insert(pos, s);
    }
    for _ in 0..swaps {
        if steps.len() < 2 {
            break;
        }
        let p = rng.gen_range(0..steps.len() - 1);
        if let Some((b2, a2)) = crate::diagram::swap_adjacent(&pres, &steps[p], &steps[p + 1])
        {
            steps[p] = b2;
            steps[p + 1] = a2;
        }
    }
    Diagram::from_steps(&pres, d.top().clone(), steps).expect("swaps preserve validity")
}

/// Runs the whole validation suite; deterministic given `seed`.
pub fn run_selftest(seed: u64, cfg: &EngineConfig) -> Vec<CheckResult> {
    let mut results = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // group axioms
    let heis = HeisenbergI64::new();
    check(
        &mut results,
        "axioms-heisenberg",
        axioms_hold(&heis, &mut rng, 1000),
        "1000 random triples".into(),
    );
    let bs = Bs1nI64::new(2);
    check(
        &mut results,
        "axioms-bs12",
        axioms_hold(&bs, &mut rng, 1000),
        "1000 random triples".into(),
    );
    let lamp = PermShift::new();
    check(
        &mut results,
        "axioms-lamp-sinf",
        axioms_hold(&lamp, &mut rng, 1000),
        "1000 random triples".into(),
    );
    let bsmn = crate::BsMnI64::new(2, 4);
    check(
        &mut results,
        "axioms-bs24",
        axioms_hold(&bsmn, &mut rng, 1000),
        "1000 random triples".into(),
    );
    let free = crate::FreeGroup::new(2);
    check(
        &mut results,
        "axioms-free2",
        axioms_hold(&free, &mut rng, 1000),
        "1000 random triples".into(),
    );

    // invariant vs oracle
    let mut ok = true;
    let mut detail = String::new();
    for n in 0..=4 {
        let exact = conjugacy_count_exact(&heis, n, cfg).unwrap();
        let oracle = conjugacy_count_oracle(&heis, n, n + 4, cfg).unwrap();
        if exact != oracle {
            ok = false;
            detail = format!("radius {n}: exact {exact} vs oracle {oracle}");
            break;
        }
    }
    check(
        &mut results,
        "heisenberg-invariant-vs-oracle",
        ok,
        if detail.is_empty() {
            "radii 0..=4, R=n+4".into()
        } else {
            detail
        },
    );
    let mut ok = true;
    for n in 0..=4 {
        if conjugacy_count_exact(&bs, n, cfg).unwrap()
            != conjugacy_count_oracle(&bs, n, n + 3, cfg).unwrap()
        {
            ok = false;
        }
    }
    check(
        &mut results,
        "bs12-invariant-vs-oracle",
        ok,
        "radii 0..=4, R=n+3".into(),
    );

    // diagram reduced-form uniqueness on both shipped presentations
    for (name, pres) in [
        ("f", Presentation::thompson_f()),
        ("wreath", Presentation::wreath_zz()),
    ] {
        let mut ok = true;
        for _ in 0..100 {
            let d = random_diagram(&pres, &mut rng, 4, 10);
            let shuffled = equivalent_derivation(&d, &mut rng, 20, 3);
            if shuffled.reduce() != d.reduce() {
                ok = false;
                break;
            }
        }
        check(
            &mut results,
            &format!("diagram-unique-reduced-form-{name}"),
            ok,
            "100 randomized pairs".into(),
        );
    }

    // F relators and inverse law in the diagram group
    let f = thompson_f_group();
    let fe = f.identity();
    let x0 = crate::diagram::x0_diagram(f.presentation());
    let x1 = crate::diagram::x1_diagram(f.presentation());
    let comm = |a: &Diagram, b: &Diagram| {
        let ab = a.group_multiply(b).unwrap();
        let aibi = a.inverse().group_multiply(&b.inverse()).unwrap();
        ab.group_multiply(&aibi).unwrap()
    };
    let c1 = {
        let a = x0.group_multiply(&x1.inverse()).unwrap();
        let b = x0
            .inverse()
            .group_multiply(&x1)
            .unwrap()
            .group_multiply(&x0)
            .unwrap();
        comm(&a, &b)
    };
    let c2 = {
        let a = x0.group_multiply(&x1.inverse()).unwrap();
        let x0i2 = x0.inverse().group_multiply(&x0.inverse()).unwrap();
        let x02 = x0.group_multiply(&x0).unwrap();
        let b = x0i2
            .group_multiply(&x1)
            .unwrap()
            .group_multiply(&x02)
            .unwrap();
        comm(&a, &b)
    };
    check(
        &mut results,
        "thompson-relators",
        c1 == fe && c2 == fe,
        "both standard relators reduce to the trivial diagram".into(),
    );

    // inverse law: d o d^-1 reduces to the trivial diagram
    let mut ok = true;
    for i in 0..500 {
        let pres = if i % 2 == 0 {
            Presentation::thompson_f()
        } else {
            Presentation::wreath_zz()
        };
        let d = random_diagram(&pres, &mut rng, 4, 10);
        let prod = d.compose(&d.inverse()).expect("shapes match").reduce();
        let expected = Diagram::trivial(&pres, d.top()).unwrap();
        if prod != expected {
            ok = false;
            break;
        }
    }
    check(
        &mut results,
        "diagram-inverse-law",
        ok,
        "reduce(d o d^-1) = eps(top) on 500 random diagrams".into(),
    );

    // diagram group axioms on random spherical elements of F and DG(P,ac)
    let wpres = Presentation::wreath_zz();
    let dg_zz = DiagramGroup::new(
        &wpres,
        vec![
            ("u".into(), wreath_zz_witness(&wpres, &[1]).unwrap()),
            ("v".into(), wreath_zz_witness(&wpres, &[1, 1]).unwrap()),
        ],
    )
    .unwrap();
    let f = thompson_f_group();
    let mut ok = true;
    for _ in 0..100 {
        if !axioms_hold(&f, &mut rng, 1) || !axioms_hold(&dg_zz, &mut rng, 1) {
            ok = false;
            break;
        }
    }
    check(
        &mut results,
        "diagram-group-axioms",
        ok,
        "100 random triples in F and DG(P,ac)".into(),
    );

    // cyclic reduction lands on depth-4 absolutely reduced diagrams
    let mut ok = true;
    for _ in 0..100 {
        let e = sample_element(&f, &mut rng);
        let (reduced, gamma) = e.cyclic_reduce().expect("spherical");
        if !reduced.is_absolutely_reduced(4).expect("spherical") {
            ok = false;
            break;
        }
        let back = gamma
            .inverse()
            .compose(&reduced)
            .and_then(|d| d.compose(&gamma))
            .expect("shapes match")
            .reduce();
        if back != e {
            ok = false;
            break;
        }
    }
    check(
        &mut results,
        "cyclic-reduce-depth4",
        ok,
        "100 random F elements: output absolutely reduced at depth 4, conjugation identity verified"
            .into(),
    );

    // key invariance under conjugation
    let budget = PClassBudget::default();
    let mut ok = true;
    for _ in 0..500 {
        let d = sample_element(&f, &mut rng);
        let g = sample_element(&f, &mut rng);
        let conj = g
            .inverse()
            .group_multiply(&d)
            .and_then(|x| x.group_multiply(&g))
            .expect("same base");
        if diagram_conj_key(&d, &budget).unwrap() != diagram_conj_key(&conj, &budget).unwrap() {
            ok = false;
            break;
        }
    }
    check(
        &mut results,
        "diagram-key-conjugation-invariance",
        ok,
        "500 random conjugations in F".into(),
    );

    // morphism functoriality on composable pairs
    let fpres = Presentation::thompson_f();
    let cell = Diagram::cell(&fpres, 0).unwrap();
    let doubling = crate::diagram::DiagramMorphism::new(
        &fpres,
        &fpres,
        vec![fpres.word("xx").unwrap()],
        vec![cell.sum(&cell).unwrap()],
    )
    .unwrap();
    let mut ok = true;
    for _ in 0..200 {
        let d1 = random_diagram(&fpres, &mut rng, 3, 6);
        let d2 = random_derivation_from(&fpres, &mut rng, d1.bottom().clone(), 6);
        let lhs = doubling.apply(&d1.compose(&d2).unwrap()).unwrap();
        let rhs = doubling
            .apply(&d1)
            .unwrap()
            .compose(&doubling.apply(&d2).unwrap())
            .unwrap();
        if lhs != rhs {
            ok = false;
            break;
        }
    }
    check(
        &mut results,
        "morphism-functoriality",
        ok,
        "psi(d1 o d2) = psi(d1) o psi(d2) on 200 random pairs".into(),
    );

    // witness families
    let pres = Presentation::wreath_zz();
    let mut keys = std::collections::HashSet::new();
    let mut ok = true;
    for parts in compositions(5).unwrap() {
        let w = wreath_zz_witness(&pres, &parts).unwrap();
        if w.cells() > 15 {
            ok = false;
        }
        if !keys.insert(diagram_conj_key(&w, &budget).unwrap()) {
            ok = false;
        }
    }
    check(
        &mut results,
        "wreath-witness-distinct",
        ok && keys.len() == 16,
        format!("{} distinct keys for n=5, cells <= 15", keys.len()),
    );

    let mut ok = true;
    for half in 1..=4u64 {
        for parts in compositions(half).unwrap() {
            let doubled: Vec<u64> = parts.iter().map(|&p| 2 * p as u64).collect();
            if lamp_witness(&lamp, &doubled).is_err() {
                ok = false;
            }
        }
    }
    check(
        &mut results,
        "lamp-witness-window",
        ok,
        "even compositions with part-sum <= 8".into(),
    );

    let counts = hnn_witness_classes(2, 4, 8).unwrap().cumulative_counts();
    check(
        &mut results,
        "hnn-witness-counts",
        counts == vec![1, 3, 5, 8, 11, 16, 21, 29],
        format!("{counts:?}"),
    );

    // determinism across worker threads
    let ball_digest = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("pool");
        pool.install(|| {
            let ball = enumerate_ball(&heis, 7, cfg).unwrap();
            let mut s = String::new();
            for e in ball.sorted_elements() {
                s.push_str(&heis.display(&e));
                s.push(';');
            }
            (ball.sphere_sizes(), s)
        })
    };
    let one = ball_digest(1);
    let eight = ball_digest(8);
    check(
        &mut results,
        "thread-determinism",
        one == eight,
        "identical Heisenberg B(7) at 1 and 8 threads".into(),
    );

    results
}
