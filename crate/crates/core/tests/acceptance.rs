//! Acceptance suite: one line per criterion, then a non-zero exit if any
//! criterion fails. Run with `cargo test -p qnc-core --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use qnc_core::bits::{gf2_rank, BitVec};
use qnc_core::codes::{
    compose, distance, five_qubit_code, singleton_max_distance, storage_bound, CodeError, Distance,
};
use qnc_core::contraction::{contract, BellConvention, ContractionInstance, ContractionStatus};
use qnc_core::graphstate::{augment, ghz_stabilizers, Bipartition, GraphState};
use qnc_core::metrics::{
    latency, memory_qubits, success_probability, tree_channel_count, NoiseSpec, RegularTreeSpec,
    Scheme,
};
use qnc_core::network::{
    feasibility, min_cut, random_connected_topology, repetition_assignment, to_contraction,
    Achievability, NetworkTopology, DEFAULT_MAX_CLIENTS,
};
use qnc_core::oracle::{DenseState, Oracle};
use qnc_core::pauli::{Membership, PauliOperator, StabilizerGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Fidelity and zero-norm tolerance for dense comparisons.
const FIDELITY_TOL: f64 = 1e-9;
/// Singular values above this count towards a dense rank.
const RANK_TOL: f64 = qnc_core::oracle::RANK_TOLERANCE;
/// Normalization tolerance for probabilities.
const PROB_TOL: f64 = 1e-12;

const BUDGET_CRITERION_1: Duration = Duration::from_secs(1);
const BUDGET_CRITERION_2: Duration = Duration::from_secs(10);
const BUDGET_CRITERION_5: Duration = Duration::from_secs(30);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    ensure(elapsed < budget, || {
        format!("took {elapsed:.2?}, budget {budget:?}")
    })?;
    Ok(elapsed)
}

fn parse(s: &str) -> PauliOperator {
    s.parse().expect("literal Pauli string")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let strings = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"];
    let ops: Vec<PauliOperator> = strings.iter().map(|s| parse(s)).collect();
    for a in &ops {
        for b in &ops {
            ensure(a.commutes_with(b).unwrap(), || {
                format!("{a} and {b} anticommute")
            })?;
        }
    }
    let rank = gf2_rank(
        &ops.iter()
            .map(PauliOperator::symplectic_row)
            .collect::<Vec<_>>(),
    );
    ensure(rank == 4, || format!("rank {rank}"))?;
    let d = distance(&five_qubit_code(), 5).map_err(|e| e.to_string())?;
    ensure(d == Distance::Exact(3), || format!("distance {d}"))?;
    let t = within(start, BUDGET_CRITERION_1)?;
    Ok(format!(
        "4 commuting generators, rank 4, distance 3 in {t:.2?}"
    ))
}

fn membership_report(group: &StabilizerGroup) -> (usize, usize) {
    let mut exact = 0;
    let mut sign_flipped = 0;
    for s in TRIANGLE_GENERATORS {
        match group.membership(&parse(s)).unwrap() {
            Membership::Member(_) => exact += 1,
            Membership::PhaseMismatch(_) => sign_flipped += 1,
            Membership::Absent => {}
        }
    }
    (exact, sign_flipped)
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let listed: Vec<PauliOperator> = TRIANGLE_GENERATORS.iter().map(|s| parse(s)).collect();
    let h: Vec<BitVec> = TRIANGLE_H
        .iter()
        .map(|row| BitVec::from_bools(&row.chars().map(|c| c == '1').collect::<Vec<_>>()))
        .collect();
    let rows: Vec<BitVec> = listed.iter().map(PauliOperator::symplectic_row).collect();
    ensure(rows == h, || {
        "listed generators disagree with the printed H matrix".into()
    })?;
    ensure(gf2_rank(&h) == 6, || format!("H has rank {}", gf2_rank(&h)))?;

    let composed = triangle(BellConvention::GraphEdge);
    let code = &composed.code;
    ensure(
        code.n() == 9 && code.k() == 3 && code.generators().len() == 6,
        || {
            format!(
                "got n={} k={} generators={}",
                code.n(),
                code.k(),
                code.generators().len()
            )
        },
    )?;
    let rank = gf2_rank(&code.group().check_matrix());
    ensure(rank == 6, || format!("composed check matrix rank {rank}"))?;
    let (exact, flipped) = membership_report(code.group());
    ensure(exact == 6, || {
        format!("graph-edge convention: {exact} exact, {flipped} sign-flipped of 6")
    })?;
    let listed_group = StabilizerGroup::new(9, listed).map_err(|e| e.to_string())?;
    ensure(listed_group.same_group(code.group()), || {
        "groups differ".into()
    })?;

    let (plus_exact, plus_flipped) =
        membership_report(triangle(BellConvention::PlusPair).code.group());

    let d = distance(code, 4).map_err(|e| e.to_string())?;
    ensure(d == Distance::Exact(3), || format!("distance {d}"))?;
    let singleton = singleton_max_distance(9, 3).unwrap();
    let bound = storage_bound(9, 3, 5, 1, 3).map_err(|e| e.to_string())?;
    ensure(singleton == 4 && bound == 4, || {
        format!("singleton {singleton}, bound {bound}")
    })?;
    let t = within(start, BUDGET_CRITERION_2)?;
    Ok(format!(
        "[[9,3,3]], rank 6, H matches; graph-edge convention: 6/6 listed strings are members with + sign; \
         plus-pair convention: {plus_exact} exact, {plus_flipped} sign-flipped; bounds 4 >= 3; {t:.2?}"
    ))
}

fn criterion_3() -> Outcome {
    let composed = triangle(BellConvention::GraphEdge).code;
    let listed = StabilizerGroup::from_strings(&TRIANGLE_GENERATORS).unwrap();
    let mut count = 0;
    for q in 0..9 {
        for letter in ['X', 'Y', 'Z'] {
            let mut s = vec!['I'; 9];
            s[q] = letter;
            let e = parse(&s.iter().collect::<String>());
            for group in [composed.group(), &listed] {
                let caught = group
                    .generators()
                    .iter()
                    .any(|g| !g.commutes_with(&e).unwrap());
                ensure(caught, || format!("{e} commutes with every generator"))?;
            }
            count += 1;
        }
    }
    ensure(count == 27, || format!("{count} errors checked"))?;
    Ok("all 27 single-qubit errors anticommute with a generator".into())
}

fn criterion_4() -> Outcome {
    let o = Oracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let (mut pure, mut annihilated) = (0, 0);
    for i in 0..100 {
        let inst = random_instance(&mut rng, 12);
        let dense = o
            .dense_contract(
                &inst.states,
                inst.instance.pairings(),
                inst.instance.convention(),
            )
            .map_err(|e| e.to_string())?;
        let r = contract(&inst.instance).map_err(|e| e.to_string())?;
        let zero = dense.norm().powi(2) < FIDELITY_TOL;
        match r.status {
            ContractionStatus::Annihilated => {
                ensure(zero, || {
                    format!("instance {i}: engine annihilated, dense did not")
                })?;
                annihilated += 1;
            }
            ContractionStatus::Pure => {
                ensure(!zero, || {
                    format!("instance {i}: dense vanished, engine did not")
                })?;
                let stab = o.stabilizer_state(&r.residual).map_err(|e| e.to_string())?;
                let f = dense.fidelity(&stab);
                ensure(f >= 1.0 - FIDELITY_TOL, || {
                    format!("instance {i}: fidelity {f}")
                })?;
                pure += 1;
            }
            ContractionStatus::Mixed => {
                return Err(format!("instance {i}: pure inputs gave MIXED"))
            }
        }
    }

    // GHZ_3 driving a GHZ_3-generating isometry, three ways.
    let ghz3 = o.stabilizer_state(&ghz_stabilizers(3)).unwrap();
    let lqc = o
        .apply_controlled_isometry(
            &ghz3,
            &[2],
            &[DenseState::basis(3, 0), DenseState::basis(3, 7)],
            true,
        )
        .unwrap();
    let mut amps = vec![0.0; 32];
    amps[0] = std::f64::consts::FRAC_1_SQRT_2;
    amps[31] = std::f64::consts::FRAC_1_SQRT_2;
    let ghz5 = DenseState::from_real(5, &amps).unwrap();
    let augmented = augment(&ghz_stabilizers(3), 0).unwrap();
    let dense = o
        .dense_contract(
            &[ghz3, o.stabilizer_state(&augmented).unwrap()],
            &[(2, 6)],
            BellConvention::PlusPair,
        )
        .unwrap();
    let inst = ContractionInstance::consecutive(
        vec![ghz_stabilizers(3), augmented],
        vec![(2, 6)],
        BellConvention::PlusPair,
    )
    .unwrap();
    let r = contract(&inst).unwrap();
    ensure(lqc.fidelity(&ghz5) >= 1.0 - FIDELITY_TOL, || {
        "LQC GHZ example".into()
    })?;
    ensure(dense.fidelity(&ghz5) >= 1.0 - FIDELITY_TOL, || {
        "dense GHZ example".into()
    })?;
    ensure(r.residual.same_group(&ghz_stabilizers(5)), || {
        "stabilizer GHZ example".into()
    })?;

    // Swapping: two Bell pairs joined at a relay give a Bell pair.
    let bell = BellConvention::PlusPair.group();
    let swapped_dense = o
        .dense_contract(
            &[
                o.stabilizer_state(&bell).unwrap(),
                o.stabilizer_state(&bell).unwrap(),
            ],
            &[(1, 2)],
            BellConvention::PlusPair,
        )
        .unwrap();
    let expected = DenseState::from_real(
        2,
        &[
            std::f64::consts::FRAC_1_SQRT_2,
            0.0,
            0.0,
            std::f64::consts::FRAC_1_SQRT_2,
        ],
    )
    .unwrap();
    ensure(
        swapped_dense.fidelity(&expected) >= 1.0 - FIDELITY_TOL,
        || "dense swapping".into(),
    )?;
    let inst = ContractionInstance::consecutive(
        vec![bell.clone(), bell.clone()],
        vec![(1, 2)],
        BellConvention::PlusPair,
    )
    .unwrap();
    ensure(contract(&inst).unwrap().residual.same_group(&bell), || {
        "stabilizer swapping".into()
    })?;

    ensure(pure > 0 && annihilated > 0, || {
        format!("degenerate sample: {pure} pure, {annihilated} annihilated")
    })?;
    Ok(format!("100 random instances ({pure} pure, {annihilated} annihilated), GHZ and swapping fixtures agree"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let o = Oracle::default();
    let six = connected_graph_classes(6);
    ensure(six.len() == 112, || {
        format!("{} connected classes on 6 vertices", six.len())
    })?;
    let graphs: Vec<GraphState> = (1..=5)
        .flat_map(connected_graph_classes)
        .chain(six)
        .collect();
    let mut checks = 0usize;
    for g in &graphs {
        let v = o.graph_state_vector(g).unwrap();
        for part in Bipartition::enumerate(g.num_vertices()) {
            let dense = o.reduced_rank(&v, part.side_a()).unwrap();
            let r = g.entanglement_rank(&part).unwrap();
            ensure(dense == 1 << r, || {
                format!("{g:?} {part:?}: dense rank {dense}, GF(2) rank {r}")
            })?;
            checks += 1;
        }
    }
    let t = within(start, BUDGET_CRITERION_5)?;
    Ok(format!(
        "112 connected classes on 6 vertices ({} on <= 6), {checks} bipartitions, SVD tol {RANK_TOL:e}, {t:.2?}",
        graphs.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut targets = 0usize;
    for leaves in 4..=6 {
        let t = NetworkTopology::star(leaves);
        let clients = t.clients();
        let m = leaves * (leaves - 1) / 2;
        let failures: Vec<u64> = (0u64..1 << m)
            .into_par_iter()
            .filter(|&mask| {
                let g = GraphState::from_edge_mask(leaves, mask);
                let v = feasibility(&t, &clients, &g, DEFAULT_MAX_CLIENTS).unwrap();
                !(v.feasible && v.achievability == Achievability::StarTopology)
            })
            .collect();
        ensure(failures.is_empty(), || {
            format!("star({leaves}) rejects masks {failures:?}")
        })?;
        targets += 1 << m;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0xB0B);
    for i in 0..200 {
        let t = random_connected_topology(&mut rng, 10);
        let clients = t.clients();
        let ghz = GraphState::star(clients.len());
        let v = feasibility(&t, &clients, &ghz, DEFAULT_MAX_CLIENTS).map_err(|e| e.to_string())?;
        ensure(v.feasible, || format!("topology {i}: GHZ infeasible"))?;
        let nc = to_contraction(&t, &repetition_assignment(&t), BellConvention::PlusPair)
            .map_err(|e| e.to_string())?;
        let r = contract(&nc.instance).map_err(|e| e.to_string())?;
        ensure(r.status == ContractionStatus::Pure, || {
            format!("topology {i}: {:?}", r.status)
        })?;
        let profile = nc.client_rank_profile(&r, &clients);
        ensure(profile.iter().all(|&x| x == 1), || {
            format!("topology {i}: ranks {profile:?}")
        })?;
    }
    Ok(format!(
        "stars with 4-6 leaves accept all {targets} labeled targets; 200 random topologies distribute GHZ by repetition"
    ))
}

fn exhaustive_min_cut(t: &NetworkTopology, a: &[usize], b: &[usize]) -> u64 {
    let free: Vec<usize> = (0..t.num_nodes())
        .filter(|v| !a.contains(v) && !b.contains(v))
        .collect();
    (0u64..1 << free.len())
        .map(|mask| {
            let mut source = vec![false; t.num_nodes()];
            for &v in a {
                source[v] = true;
            }
            for (i, &v) in free.iter().enumerate() {
                source[v] = mask >> i & 1 == 1;
            }
            t.edges()
                .iter()
                .filter(|e| source[e.u] != source[e.v])
                .map(|e| e.channels as u64)
                .sum()
        })
        .min()
        .unwrap()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let mut cuts = 0;
    for i in 0..200 {
        let t = random_connected_topology(&mut rng, 12);
        let clients = t.clients();
        for _ in 0..4 {
            let mask = rng.gen_range(1..(1u64 << clients.len()) - 1);
            let part = Bipartition::from_mask(clients.len(), mask).unwrap();
            let a: Vec<usize> = part.side_a().iter().map(|&j| clients[j]).collect();
            let b: Vec<usize> = part.side_b().iter().map(|&j| clients[j]).collect();
            let flow = min_cut(&t, &a, &b).unwrap();
            let brute = exhaustive_min_cut(&t, &a, &b);
            ensure(flow == brute, || {
                format!("topology {i}: max-flow {flow}, enumeration {brute}")
            })?;
            cuts += 1;
        }
    }
    Ok(format!(
        "{cuts} client cuts on 200 random topologies agree exactly"
    ))
}

fn criterion_8() -> Outcome {
    for n in 2..=8 {
        for p in 2..=8 {
            let spec = RegularTreeSpec::new(n, p).unwrap();
            let (l, e) = (latency(spec, Scheme::Lqc), latency(spec, Scheme::Epr));
            ensure(l == p as u64 && e == (n as u64).pow(p) && l < e, || {
                format!("latency n={n} p={p}: {l} vs {e}")
            })?;
            let (ml, me) = (
                memory_qubits(spec, Scheme::Lqc),
                memory_qubits(spec, Scheme::Epr),
            );
            ensure(
                ml == n as u64 + 1 && me == (n as u64).pow(p) && ml < me,
                || format!("memory n={n} p={p}: {ml} vs {me}"),
            )?;
        }
    }
    let spec = RegularTreeSpec::new(3, 2).unwrap();
    let (cl, ce) = (
        tree_channel_count(spec, Scheme::Lqc),
        tree_channel_count(spec, Scheme::Epr),
    );
    ensure((cl, ce) == (12, 18), || {
        format!("channel counts {cl}, {ce}")
    })?;
    for step in 1..=50 {
        let noise = NoiseSpec::new(step as f64 / 100.0).unwrap();
        let (sl, se) = (
            success_probability(noise, cl),
            success_probability(noise, ce),
        );
        ensure(sl > se, || {
            format!("p_fail {}: {sl} <= {se}", noise.p_fail())
        })?;
        let total: f64 = qnc_core::metrics::erasure_distribution(noise, 30)
            .iter()
            .sum();
        ensure((total - 1.0).abs() < PROB_TOL, || {
            format!("binomial mass {total}")
        })?;
    }
    Ok("latency p < n^p and memory n+1 < n^p for n,p in 2..=8; p_success LQC > EPR for p_fail 0.01..0.50 with 12 < 18 channels".into())
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9);
    let (mut counted, mut attempts) = (0, 0);
    while counted < 50 {
        attempts += 1;
        ensure(attempts <= 5000, || {
            format!("only {counted} usable compositions in 5000 attempts")
        })?;
        let l = rng.gen_range(3..=5);
        let Some(code) = random_code(&mut rng, l, 1) else {
            continue;
        };
        let d = distance(&code, l).unwrap().exact().unwrap();
        let m = rng.gen_range(2..=3);
        let total = m * l;
        let pair_count = rng.gen_range(1..=m);
        let mut pairs = Vec::new();
        let mut used = vec![false; total];
        for _ in 0..pair_count {
            let (x, y) = (rng.gen_range(0..total), rng.gen_range(0..total));
            if x / l != y / l && !used[x] && !used[y] {
                used[x] = true;
                used[y] = true;
                pairs.push((x, y));
            }
        }
        let boundary = total - 2 * pairs.len();
        if m > boundary {
            continue;
        }
        let composed = match compose(&vec![code.clone(); m], &pairs, BellConvention::PlusPair) {
            Ok(c) => c.code,
            Err(CodeError::Annihilated) => continue,
            Err(e) => return Err(e.to_string()),
        };
        if composed.k() != m {
            continue;
        }
        let big_d = distance(&composed, composed.n()).unwrap().exact().unwrap();
        let bound = storage_bound(boundary, m, l, 1, d).unwrap();
        ensure(big_d as i64 <= bound, || {
            format!("[[{boundary},{m},{big_d}]] from [[{l},1,{d}]] x{m} exceeds bound {bound}")
        })?;
        counted += 1;
    }
    Ok(format!(
        "50 compositions with k_out = m*k never exceed the bound ({attempts} attempts)"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("five-qubit fixture", criterion_1),
        ("triangle composition", criterion_2),
        ("weight-1 correction", criterion_3),
        ("oracle equivalence", criterion_4),
        ("entanglement rank", criterion_5),
        ("star and GHZ feasibility", criterion_6),
        ("min-cut correctness", criterion_7),
        ("metrics properties", criterion_8),
        ("storage bound suite", criterion_9),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
