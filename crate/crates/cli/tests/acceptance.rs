//! One PASS/FAIL line per acceptance criterion. Exits non-zero on any failure.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use cfrs_core::branching::{
    b_split, exact_min_irreducible, exact_min_uncovered, for_each_branching, irreducible_vertices,
    split_to_branching, uncovered_pairs, BranchingError, DEFAULT_BUDGET,
};
use cfrs_core::containment::build_containment;
use cfrs_core::dag::Dag;
use cfrs_core::instances::{
    brute_force_vertex_cover, gen_ib_reduction, gen_md, gen_monotone_weights, gen_random, gen_random_dag,
    gen_vc_reduction, CubicGraph,
};
use cfrs_core::matrix::{count_distinct_columns, is_conflict_free, verify_row_split, BinaryMatrix};
use cfrs_core::poset::{
    brute_force_max_tower, brute_force_min_price, min_price_chain_partition, width, PosetError, WeightFn,
    BRUTE_FORCE_CAP,
};
use cfrs_core::solvers::{approx_distinct_2, approx_height, approx_width, solve_linear_heuristic};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus() -> Vec<BinaryMatrix> {
    (0..500u64)
        .map(|seed| {
            let m = 2 + (seed % 5) as usize;
            let n = 2 + (seed / 5 % 5) as usize;
            let density = [0.3, 0.5, 0.7][(seed % 3) as usize];
            gen_random(m, n, density, seed).expect("valid parameters")
        })
        .collect()
}

struct Exact {
    gamma: usize,
    eta: usize,
}

fn exact(matrix: &BinaryMatrix) -> Exact {
    let d = build_containment(matrix);
    Exact {
        gamma: exact_min_uncovered(&d, DEFAULT_BUDGET).expect("small instance").1,
        eta: exact_min_irreducible(&d, DEFAULT_BUDGET).expect("small instance").1,
    }
}

fn hierarchy_family() -> Outcome {
    for (d, h) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
        let matrix = gen_md(d, h).map_err(|e| e.to_string())?;
        let rows = d.pow(h as u32 - 1);
        let exact_rows = exact(&matrix).gamma;
        let heuristic = solve_linear_heuristic(&matrix).1.rows;
        let expected = h * rows - (h - 1) * rows / d;
        ensure(exact_rows == rows, || format!("M({d},{h}) exact {exact_rows}, expected {rows}"))?;
        ensure(heuristic == expected, || format!("M({d},{h}) heuristic {heuristic}, expected {expected}"))?;
    }
    Ok("M(3,3): exact 9, heuristic 21; closed forms hold for all five".into())
}

fn duality() -> Outcome {
    for seed in 0..200u64 {
        let dag = gen_random_dag(1 + (seed % 10) as usize, [0.2, 0.4, 0.6][(seed % 3) as usize], seed)
            .map_err(|e| e.to_string())?;
        let weights = gen_monotone_weights(&dag, 20, seed);
        let (partition, tower) = min_price_chain_partition(&dag, &weights).map_err(|e| e.to_string())?;
        partition.validate(&dag).map_err(|e| e.to_string())?;
        tower.validate(&dag).map_err(|e| e.to_string())?;
        let price = partition.price(&weights);
        let brute = brute_force_min_price(&dag, &weights, BRUTE_FORCE_CAP).map_err(|e| e.to_string())?;
        ensure(price == tower.value(&weights) && price == brute, || {
            format!("seed {seed}: price {price}, tower {}, brute force {brute}", tower.value(&weights))
        })?;
        ensure(partition.len() == width(&dag), || format!("seed {seed}: {} chains", partition.len()))?;
    }
    Ok("200 DAGs: price = tower value = brute force, |P| = width".into())
}

fn remark_gap() -> Outcome {
    let (z, big) = (3, 5);
    let dag = Dag::new(4, [(0, 2), (1, 2), (1, 3)]).map_err(|e| e.to_string())?;
    let weights = WeightFn(vec![z, big, big, z]);
    let price = brute_force_min_price(&dag, &weights, BRUTE_FORCE_CAP).map_err(|e| e.to_string())?;
    let tower = brute_force_max_tower(&dag, &weights, BRUTE_FORCE_CAP).map_err(|e| e.to_string())?;
    ensure(price == 10 && tower == 8, || format!("price {price}, tower {tower}"))?;
    match min_price_chain_partition(&dag, &weights) {
        Err(PosetError::NonMonotone { .. }) => Ok("min price 10, max tower 8, non-monotone input rejected".into()),
        other => Err(format!("expected a non-monotone rejection, got {other:?}")),
    }
}

fn round_trip(corpus: &[BinaryMatrix]) -> Outcome {
    const BUDGET: u64 = 50_000;
    let (mut branchings, mut skipped, mut conflict_free) = (0u64, 0usize, 0usize);
    for (i, matrix) in corpus.iter().enumerate() {
        let d = build_containment(matrix);
        let mut failure = None;
        let walked = for_each_branching(&d, BUDGET, |b| {
            branchings += 1;
            if failure.is_some() {
                return;
            }
            let split = b_split(matrix, b).expect("branching of d");
            let u = uncovered_pairs(&d, b).expect("branching of d").len();
            let irr = irreducible_vertices(&d, b).expect("branching of d").len();
            if !verify_row_split(matrix, &split, true).expect("same width").is_accept()
                || split.rows() != u
                || split.distinct_rows() != irr
            {
                failure = Some(format!("matrix {i}: B-split of {:?} fails", b.choices()));
                return;
            }
            let back = split_to_branching(matrix, &split).expect("accepted split");
            if uncovered_pairs(&d, &back).expect("branching of d").len() > u {
                failure = Some(format!("matrix {i}: split_to_branching increases |U|"));
            }
        });
        match walked {
            Err(BranchingError::BudgetExceeded { .. }) => skipped += 1,
            Err(e) => return Err(e.to_string()),
            Ok(()) => {}
        }
        if let Some(f) = failure {
            return Err(f);
        }
        if is_conflict_free(matrix) {
            conflict_free += 1;
            let gamma = exact(matrix).gamma;
            ensure(gamma == matrix.rows(), || format!("matrix {i}: conflict-free but gamma {gamma}"))?;
        }
    }
    Ok(format!(
        "500 matrices, {branchings} branchings, {skipped} over budget, {conflict_free} conflict-free with gamma = m"
    ))
}

fn reductions() -> Outcome {
    let mut parts = Vec::new();
    for (name, graph) in [
        ("K4", CubicGraph::complete_k4()),
        ("K33", CubicGraph::complete_bipartite_k33()),
        ("Q3", CubicGraph::cube_q3()),
    ] {
        let tau = brute_force_vertex_cover(&graph).map_err(|e| e.to_string())?;
        let vc = gen_vc_reduction(&graph).map_err(|e| e.to_string())?;
        let beta = exact(&vc).gamma;
        let ib = gen_ib_reduction(&graph).map_err(|e| e.to_string())?;
        let zeta = exact(&ib).eta;
        let (v, e) = (graph.vertex_count(), graph.edges().len());
        ensure(beta == 8 * v + tau, || format!("{name}: beta {beta}, 8|V| + tau = {}", 8 * v + tau))?;
        ensure(zeta == e + tau, || format!("{name}: zeta {zeta}, |E| + tau = {}", e + tau))?;
        if name == "K4" {
            ensure(beta == 35 && zeta == 9 && tau == 3, || format!("K4: beta {beta}, zeta {zeta}, tau {tau}"))?;
        }
        parts.push(format!("{name} beta {beta} zeta {zeta} tau {tau}"));
    }
    Ok(parts.join(", "))
}

fn approximations(corpus: &[BinaryMatrix], exacts: &[Exact]) -> Outcome {
    for (i, (matrix, ex)) in corpus.iter().zip(exacts).enumerate() {
        let d = build_containment(matrix);
        let k = d.vertex_count();
        let distinct = approx_distinct_2(matrix).1.distinct_rows;
        ensure(distinct <= k.min(2 * ex.eta), || format!("matrix {i}: distinct-2 gives {distinct}"))?;
        let height = approx_height(matrix).1.rows;
        ensure(height <= d.height() * ex.gamma, || format!("matrix {i}: height gives {height}"))?;
        let width = approx_width(matrix).1.rows;
        ensure(width <= d.width() * ex.gamma, || format!("matrix {i}: width gives {width}"))?;
        let linear = solve_linear_heuristic(matrix).1;
        ensure(
            linear.rows >= ex.gamma && Some(linear.rows as u64) == linear.linear_lower_bound,
            || format!("matrix {i}: linear gives {} with certificate {:?}", linear.rows, linear.linear_lower_bound),
        )?;
    }
    Ok("distinct-2, height, width and linear bounds hold on 500 matrices".into())
}

fn structural(corpus: &[BinaryMatrix], exacts: &[Exact]) -> Outcome {
    let mut outputs = 0;
    for (i, (matrix, ex)) in corpus.iter().zip(exacts).enumerate() {
        let d = build_containment(matrix);
        let k = d.vertex_count();
        ensure(k <= 2 * ex.eta && ex.eta <= k, || format!("matrix {i}: k {k}, eta {}", ex.eta))?;
        for split in [
            solve_linear_heuristic(matrix).0,
            approx_height(matrix).0,
            approx_distinct_2(matrix).0,
            b_split(matrix, &exact_min_uncovered(&d, DEFAULT_BUDGET).expect("small").0).expect("branching of d"),
        ] {
            let m = split.rows();
            let kk = count_distinct_columns(&split.split);
            ensure(kk <= 2 * m, || format!("matrix {i}: output with {m} rows has {kk} distinct columns"))?;
            outputs += 1;
        }
        let j = (i * 7) % matrix.cols();
        let mut cols: Vec<usize> = (0..matrix.cols()).collect();
        cols.insert(j, j);
        let doubled = exact(&matrix.select_columns(&cols).expect("valid columns"));
        ensure(doubled.gamma == ex.gamma && doubled.eta == ex.eta, || {
            format!("matrix {i}: duplicating column {} changes the optimum", j + 1)
        })?;
    }
    Ok(format!("{outputs} outputs with k <= 2m, k/2 <= eta <= k, duplicate columns invariant"))
}

fn run_cli(bin: &str, dir: &Path, args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(bin)
        .current_dir(dir)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_cfrs");
    let script: &[&[&str]] = &[
        &["gen", "md", "--d", "3", "--h", "3", "--out", "md.txt"],
        &["gen", "random", "--rows", "6", "--cols", "6", "--density", "0.5", "--seed", "42", "--out", "rand.txt"],
        &["gen", "laminar", "--rows", "6", "--k", "9", "--seed", "7", "--out", "lam.txt"],
        &["gen", "vc-reduction", "--graph", "k4.txt", "--out", "vc.txt"],
        &["gen", "ib-reduction", "--graph", "k4.txt", "--out", "ib.txt"],
        &["analyze", "rand.txt"],
        &["solve", "md.txt", "--method", "linear", "--out", "s_lin.txt", "--json", "r_lin.json"],
        &["solve", "rand.txt", "--method", "exact-rows", "--out", "s_er.txt", "--json", "r_er.json"],
        &["solve", "rand.txt", "--method", "exact-distinct", "--out", "s_ed.txt", "--json", "r_ed.json"],
        &["solve", "rand.txt", "--method", "height", "--out", "s_h.txt", "--json", "r_h.json"],
        &["solve", "rand.txt", "--method", "width", "--out", "s_w.txt", "--json", "r_w.json"],
        &["solve", "rand.txt", "--method", "distinct-2", "--out", "s_d2.txt", "--json", "r_d2.json"],
        &["verify", "rand.txt", "s_er.txt"],
        &["tree", "lam.txt", "--dot", "tree.dot"],
        &["digraph", "rand.txt", "--dot", "dig.dot"],
        &["digraph", "vc.txt", "--dot", "hasse.dot", "--hasse"],
    ];
    let mut snapshots = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        fs::write(dir.path().join("k4.txt"), "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").map_err(|e| e.to_string())?;
        let mut snapshot = Vec::new();
        for args in script {
            let (code, stdout) = run_cli(bin, dir.path(), args)?;
            ensure(code == 0, || format!("`cfrs {}` exited with {code}", args.join(" ")))?;
            snapshot.push((args.join(" "), stdout));
        }
        let mut names: Vec<_> = fs::read_dir(dir.path())
            .map_err(|e| e.to_string())?
            .map(|e| e.map(|e| e.file_name()).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        names.sort();
        for name in names {
            let bytes = fs::read(dir.path().join(&name)).map_err(|e| e.to_string())?;
            snapshot.push((name.to_string_lossy().into_owned(), bytes));
        }
        snapshots.push(snapshot);
    }
    ensure(snapshots[0] == snapshots[1], || "outputs differ between runs".into())?;
    Ok(format!("{} commands, {} outputs byte-identical across runs", script.len(), snapshots[0].len()))
}

fn main() {
    let mut failed = 0;
    let mut report = |id: usize, name: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {id} {name}: {detail} ({elapsed:.2?})"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id} {name}: {detail} ({elapsed:.2?})");
            }
        }
    };
    let secs = |s| Some(Duration::from_secs(s));
    let corpus = corpus();
    let mut exacts = Vec::new();

    report(1, "hierarchy family", secs(5), &mut hierarchy_family);
    report(2, "min-max duality", secs(30), &mut duality);
    report(3, "non-monotone gap", None, &mut remark_gap);
    report(4, "split round trip", secs(60), &mut || round_trip(&corpus));
    report(5, "hardness reductions", secs(10), &mut reductions);
    exacts.extend(corpus.iter().map(exact));
    report(6, "approximation guarantees", None, &mut || approximations(&corpus, &exacts));
    report(7, "structural bounds", None, &mut || structural(&corpus, &exacts));
    report(8, "cli determinism", None, &mut determinism);

    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
