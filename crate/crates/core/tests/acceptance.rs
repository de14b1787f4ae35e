//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//!
//! Set `RAINBOW_CORPUS` to a file of graph6 lines (orders 8 or 9) to run
//! criterion 13 against an external corpus.

use std::collections::HashMap;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rainbow_core::graph::{
    blocks, bridges, canonical_key, contract_edges, emit_graph6, enumerate_connected_graphs, parse_graph6, Edge,
};
use rainbow_core::rainbow::{
    decide_rx4_equals_3, exact_rx_k_with, find_rainbow_tree, lift_coloring_through_contraction, reference_colorings,
    verify_k_rainbow, EdgeColoring, SolveOptions,
};
use rainbow_core::steiner::steiner_diameter;
use rainbow_core::structure::{
    find_theta, find_three_edge_disjoint_cycles, is_cactus, is_g1, is_g2, recognize_rx4_equals_3,
    recognize_rx4_equals_nminus1, CycleSearch,
};
use rainbow_core::{Exec, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type SolveCache = HashMap<(u128, usize), (usize, EdgeColoring, Graph)>;

struct Ctx {
    census: Vec<Vec<Graph>>,
    solved: Mutex<SolveCache>,
}

impl Ctx {
    fn graphs(&self, lo: usize, hi: usize) -> impl Iterator<Item = &Graph> {
        (lo..=hi).flat_map(move |n| self.census[n].iter())
    }

    /// Exact rx_k with a coloring, cached by isomorphism class. The coloring
    /// is returned relabelled onto `g` only when `g` is the cached representative.
    fn solve(&self, g: &Graph, k: usize) -> (usize, EdgeColoring) {
        let key = (canonical_key(g).unwrap(), k);
        if let Some((v, c, h)) = self.solved.lock().unwrap().get(&key) {
            if h == g {
                return (*v, c.clone());
            }
        }
        let opts = SolveOptions { exec: Exec::Sequential, ..Default::default() };
        let r = exact_rx_k_with(g, k, &opts).unwrap();
        let (_, c) = r.certificate.decode().unwrap();
        self.solved.lock().unwrap().insert(key, (r.value, c.clone(), g.clone()));
        (r.value, c)
    }

    fn rx(&self, g: &Graph, k: usize) -> usize {
        let key = (canonical_key(g).unwrap(), k);
        if let Some((v, _, _)) = self.solved.lock().unwrap().get(&key) {
            return *v;
        }
        self.solve(g, k).0
    }

    fn rx_all(&self, graphs: &[&Graph], k: usize) -> Vec<usize> {
        Exec::Parallel.map(graphs, |g| self.rx(g, k))
    }
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(violations: &[String], summary: String) -> Outcome {
    if violations.is_empty() {
        Outcome { ok: true, detail: summary }
    } else {
        let shown: Vec<&str> = violations.iter().take(5).map(String::as_str).collect();
        Outcome { ok: false, detail: format!("{summary}; {} violations, e.g. {}", violations.len(), shown.join(" | ")) }
    }
}

fn g6(g: &Graph) -> String {
    emit_graph6(g).unwrap()
}

fn color_of(g: &Graph, c: &EdgeColoring, u: usize, v: usize) -> u8 {
    c.color(g.edge_index(u, v).unwrap())
}

fn is_tree(g: &Graph) -> bool {
    g.size() + 1 == g.order()
}

fn is_unicyclic(g: &Graph) -> bool {
    g.size() == g.order()
}

fn criterion_1(ctx: &Ctx) -> Outcome {
    let mut bad = Vec::new();
    for g in &ctx.census[4] {
        let rx = ctx.rx(g, 4);
        let decided = decide_rx4_equals_3(g).unwrap();
        if rx != 3 || decided.is_none() {
            bad.push(format!("{} rx4={rx} decided={}", g6(g), decided.is_some()));
        }
    }
    outcome(&bad, format!("{} graphs", ctx.census[4].len()))
}

fn criterion_2(ctx: &Ctx) -> Outcome {
    let graphs: Vec<&Graph> = ctx.graphs(4, 7).collect();
    let verdicts = Exec::Parallel.map(&graphs, |g| {
        let d = decide_rx4_equals_3(g).unwrap();
        if let Some(c) = &d {
            assert!(verify_k_rainbow(g, c, 4).unwrap().is_valid(), "decision coloring must verify");
        }
        (d.is_some(), recognize_rx4_equals_3(g).unwrap())
    });
    let bad: Vec<String> = graphs
        .iter()
        .zip(&verdicts)
        .filter(|(_, (d, r))| d != r)
        .map(|(g, (d, r))| format!("{} decide={d} recognize={r}", g6(g)))
        .collect();
    let yes = verdicts.iter().filter(|v| v.0).count();
    outcome(&bad, format!("{} graphs, {yes} with rx4 = 3", graphs.len()))
}

fn criterion_3(ctx: &Ctx) -> Outcome {
    let graphs: Vec<&Graph> = ctx.graphs(4, 6).collect();
    let values = ctx.rx_all(&graphs, 4);
    let bad: Vec<String> = graphs
        .iter()
        .zip(&values)
        .filter(|(g, &v)| (v == 3) != recognize_rx4_equals_3(g).unwrap())
        .map(|(g, v)| format!("{} rx4={v}", g6(g)))
        .collect();
    outcome(&bad, format!("{} graphs", graphs.len()))
}

fn criterion_4(ctx: &Ctx) -> Outcome {
    let mut bad = Vec::new();
    let mut counts = Vec::new();
    for n in 4..=7 {
        let trees: Vec<&Graph> = ctx.census[n].iter().filter(|g| is_tree(g)).collect();
        counts.push(trees.len());
        for (g, v) in trees.iter().zip(ctx.rx_all(&trees, 4)) {
            if v != n - 1 {
                bad.push(format!("{} rx4={v}", g6(g)));
            }
        }
        if n <= 6 {
            for (g, v) in trees.iter().zip(ctx.rx_all(&trees, 3)) {
                if v != n - 1 {
                    bad.push(format!("{} rx3={v}", g6(g)));
                }
            }
        }
    }
    if counts != [2, 3, 6, 11] {
        bad.push(format!("tree counts {counts:?}"));
    }
    outcome(&bad, format!("trees per order {counts:?}"))
}

fn criterion_5(ctx: &Ctx) -> Outcome {
    let mut bad = Vec::new();
    let graphs: Vec<&Graph> = ctx.graphs(4, 6).filter(|g| is_unicyclic(g)).collect();
    let rx3 = ctx.rx_all(&graphs, 3);
    let rx4 = ctx.rx_all(&graphs, 4);
    for ((g, &r3), &r4) in graphs.iter().zip(&rx3).zip(&rx4) {
        let n = g.order();
        let girth = g.girth().unwrap();
        let want3 = if girth >= 4 { n - 2 } else { n - 1 };
        if r3 != want3 || r4 != n - 1 {
            bad.push(format!("{} girth={girth} rx3={r3} rx4={r4}", g6(g)));
        }
    }
    outcome(&bad, format!("{} unicyclic graphs", graphs.len()))
}

/// Edge index sets of the cycle blocks.
fn cycle_blocks(g: &Graph) -> Vec<Vec<usize>> {
    blocks(g)
        .into_iter()
        .filter(|b| b.len() >= 3)
        .map(|b| (0..g.size()).filter(|&i| b.contains(&g.edges()[i].u) && b.contains(&g.edges()[i].v)).collect())
        .collect()
}

fn criterion_6(ctx: &Ctx) -> Outcome {
    let mut bad = Vec::new();
    let graphs: Vec<&Graph> = ctx
        .graphs(5, 7)
        .filter(|g| g.size() == g.order() + 1 && is_cactus(g).unwrap())
        .collect();
    let values = ctx.rx_all(&graphs, 4);
    for (g, &v) in graphs.iter().zip(&values) {
        let n = g.order();
        if v != n - 1 {
            bad.push(format!("{} rx4={v}", g6(g)));
            continue;
        }
        let (_, c) = ctx.solve(g, 4);
        for cycle in cycle_blocks(g) {
            let cols: Vec<u8> = cycle.iter().map(|&i| c.color(i)).collect();
            let mut per_color: HashMap<u8, usize> = HashMap::new();
            for &col in &cols {
                *per_color.entry(col).or_default() += 1;
            }
            if per_color.values().any(|&k| k >= 3) {
                bad.push(format!("{} three equal colors on a cycle {cols:?}", g6(g)));
            }
            // Four edges using two colors means two colors covering at least four edges.
            let mut counts: Vec<usize> = per_color.values().copied().collect();
            counts.sort_unstable_by(|a, b| b.cmp(a));
            if counts.len() >= 2 && counts[0] + counts[1] >= 4 {
                bad.push(format!("{} four cycle edges in two colors {cols:?}", g6(g)));
            }
        }
    }
    outcome(&bad, format!("{} cacti with c(G) = 2", graphs.len()))
}

fn criterion_7(ctx: &Ctx) -> Outcome {
    let mut bad = Vec::new();
    let graphs: Vec<&Graph> = ctx.graphs(4, 7).filter(|g| is_g1(g).unwrap() || is_g2(g).unwrap()).collect();
    let values = ctx.rx_all(&graphs, 4);
    let mut g2_count = 0;
    for (g, &v) in graphs.iter().zip(&values) {
        if v != g.order() - 1 {
            bad.push(format!("{} rx4={v}", g6(g)));
        }
        if is_g2(g).unwrap() {
            g2_count += 1;
            let (_, c) = ctx.solve(g, 4);
            let cut_colors: Vec<u8> = bridges(g).iter().map(|e| color_of(g, &c, e.u, e.v)).collect();
            let block = &cycle_blocks(g)[0];
            let sharing = block.iter().filter(|&&i| cut_colors.contains(&c.color(i))).count();
            if sharing > 2 {
                bad.push(format!("{} {sharing} block edges share colors with cut edges", g6(g)));
            }
        }
    }
    outcome(&bad, format!("{} graphs ({g2_count} of the K4 - e kind)", graphs.len()))
}

fn criterion_8(ctx: &Ctx) -> Outcome {
    let mut bad = Vec::new();
    let theta_123 = Graph::from_edges(5, [(0, 1), (0, 2), (2, 1), (0, 3), (3, 4), (4, 1)]).unwrap();
    let theta_222 = Graph::complete_bipartite(2, 3).unwrap();
    for g in [&theta_123, &theta_222] {
        let v = ctx.rx(g, 4);
        if v > 3 {
            bad.push(format!("{} rx4={v}", g6(g)));
        }
    }
    let graphs: Vec<&Graph> = ctx
        .graphs(4, 6)
        .filter(|g| find_theta(g, 5).is_some() || matches!(find_three_edge_disjoint_cycles(g), CycleSearch::Found(_)))
        .collect();
    for (g, v) in graphs.iter().zip(ctx.rx_all(&graphs, 4)) {
        if v > g.order() - 2 {
            bad.push(format!("{} rx4={v}", g6(g)));
        }
    }
    outcome(&bad, format!("{} graphs with a large theta or three edge-disjoint cycles", graphs.len()))
}

fn criterion_9(ctx: &Ctx) -> Outcome {
    let graphs: Vec<&Graph> = ctx.graphs(4, 6).collect();
    let values = ctx.rx_all(&graphs, 4);
    let bad: Vec<String> = graphs
        .iter()
        .zip(&values)
        .filter_map(|(g, &v)| {
            let cls = recognize_rx4_equals_nminus1(g).unwrap();
            ((v == g.order() - 1) != cls.rx4_is_n_minus_1()).then(|| format!("{} rx4={v} class={:?}", g6(g), cls.class))
        })
        .collect();
    let extremal = graphs.iter().zip(&values).filter(|(g, &v)| v == g.order() - 1).count();
    outcome(&bad, format!("{} graphs, {extremal} with rx4 = n - 1", graphs.len()))
}

fn criterion_10() -> Outcome {
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
    let mut bad = Vec::new();
    let mut checked = 0;
    for mask in 0u32..1 << 6 {
        let g = Graph::from_edges(4, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p)).unwrap();
        if !g.is_connected() {
            continue;
        }
        let m = g.size() as u32;
        for code in 0..3usize.pow(m) {
            let colors: Vec<u8> = (0..m).map(|i| (code / 3usize.pow(i) % 3 + 1) as u8).collect();
            let c = EdgeColoring::from_colors(&g, colors, 3).unwrap();
            checked += 1;
            if find_rainbow_tree(&g, &c, &[0, 1, 2, 3]).is_some() != (c.distinct_colors() >= 3) {
                bad.push(format!("{} {:?}", g6(&g), c.colors()));
            }
        }
    }
    outcome(&bad, format!("{checked} colorings"))
}

fn criterion_11() -> Outcome {
    let certs = reference_colorings();
    let bad: Vec<String> = certs
        .iter()
        .filter(|c| c.k != 4 || c.q != 3 || !c.verify().unwrap().is_valid())
        .map(|c| c.graph6.clone())
        .collect();
    outcome(&bad, format!("{} certificates", certs.len()))
}

fn random_connected_spanning_subgraph(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let keep: Vec<bool> = (0..g.size()).map(|_| rng.random_bool(0.6)).collect();
        let h = g.spanning_subgraph(|i| keep[i]);
        if h.is_connected() {
            return h;
        }
    }
}

fn criterion_12(ctx: &Ctx) -> Outcome {
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ed12);

    // Sandwich bound and rx monotone in k.
    let small: Vec<&Graph> = ctx.graphs(4, 6).collect();
    let rx3 = ctx.rx_all(&small, 3);
    let rx4 = ctx.rx_all(&small, 4);
    for ((g, &a), &b) in small.iter().zip(&rx3).zip(&rx4) {
        let n = g.order();
        for (k, v) in [(3, a), (4, b)] {
            let lower = (k - 1).max(steiner_diameter(g, k).unwrap());
            if v < lower || v > n - 1 {
                bad.push(format!("sandwich {} k={k} rx={v} lower={lower}", g6(g)));
            }
        }
        if a > b {
            bad.push(format!("monotone in k {} rx3={a} rx4={b}", g6(g)));
        }
    }

    // Spanning-subgraph monotonicity.
    let mut pairs = Vec::new();
    for _ in 0..200 {
        let g = small[rng.random_range(0..small.len())];
        pairs.push((g.clone(), random_connected_spanning_subgraph(g, &mut rng)));
    }
    let flat: Vec<&Graph> = pairs.iter().flat_map(|(g, h)| [g, h]).collect();
    let values = ctx.rx_all(&flat, 4);
    for (i, (g, h)) in pairs.iter().enumerate() {
        if values[2 * i] > values[2 * i + 1] {
            bad.push(format!("spanning monotonicity {} <= {}", g6(g), g6(h)));
        }
    }

    // Bridges get distinct colors in every certificate produced.
    let solved: Vec<(Graph, EdgeColoring)> = ctx.solved.lock().unwrap().values().map(|(_, c, g)| (g.clone(), c.clone())).collect();
    let decided: Vec<(Graph, EdgeColoring)> =
        ctx.graphs(4, 7).filter_map(|g| decide_rx4_equals_3(g).unwrap().map(|c| (g.clone(), c))).collect();
    for (g, c) in solved.iter().chain(&decided) {
        let mut cols: Vec<u8> = bridges(g).iter().map(|e| color_of(g, c, e.u, e.v)).collect();
        let len = cols.len();
        cols.sort_unstable();
        cols.dedup();
        if cols.len() != len {
            bad.push(format!("bridge colors repeat in {}", g6(g)));
        }
    }

    // Contraction lifts.
    let sources: Vec<&Graph> = ctx.graphs(5, 7).collect();
    let mut lifts = 0;
    while lifts < 100 {
        let g = sources[rng.random_range(0..sources.len())];
        let count = rng.random_range(1..=3usize).min(g.order() - 4);
        let mut chosen: Vec<Edge> = Vec::new();
        while chosen.len() < count {
            let e = g.edges()[rng.random_range(0..g.size())];
            if !chosen.contains(&e) {
                chosen.push(e);
            }
        }
        let cm = contract_edges(g, &chosen).unwrap();
        if cm.target.order() < 4 {
            continue;
        }
        lifts += 1;
        let (value, c) = ctx.solve(&cm.target, 4);
        let lifted = lift_coloring_through_contraction(&cm, &c, c.max_color() + 1).unwrap();
        let bound = value + g.order() - cm.target.order();
        if !verify_k_rainbow(g, &lifted, 4).unwrap().is_valid() {
            bad.push(format!("lift fails on {} from {}", g6(g), g6(&cm.target)));
        }
        if lifted.distinct_colors() > bound {
            bad.push(format!("lift of {} uses {} > {bound} colors", g6(g), lifted.distinct_colors()));
        }
        if g.order() <= 6 && ctx.rx(g, 4) > bound {
            bad.push(format!("contraction bound fails on {}", g6(g)));
        }
    }

    // graph6 round trip over the census.
    let mut round_trips = 0;
    for g in ctx.graphs(1, 7) {
        round_trips += 1;
        if parse_graph6(&g6(g)).unwrap() != *g {
            bad.push(format!("graph6 round trip {}", g6(g)));
        }
    }
    outcome(
        &bad,
        format!("{} graphs x 2 k, 200 pairs, {} colorings, {lifts} lifts, {round_trips} round trips", small.len(), solved.len() + decided.len()),
    )
}

/// Connected graphs on `n` vertices whose complement has maximum degree at
/// most 2, one per complement shape and labelling produced by the generator.
fn low_complement_graphs(n: usize) -> Vec<Graph> {
    // Complements are disjoint unions of paths and cycles; enumerate by
    // partitions of n into parts, each part a path (any size) or a cycle (>= 3).
    fn parts(rest: usize, max: usize, cur: &mut Vec<(usize, bool)>, out: &mut Vec<Vec<(usize, bool)>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for size in (1..=rest.min(max)).rev() {
            for cycle in [false, true] {
                if cycle && size < 3 {
                    continue;
                }
                if let Some(&(ps, pc)) = cur.last() {
                    if (size, cycle) > (ps, pc) {
                        continue;
                    }
                }
                cur.push((size, cycle));
                parts(rest - size, size, cur, out);
                cur.pop();
            }
        }
    }
    let mut shapes = Vec::new();
    parts(n, n, &mut Vec::new(), &mut shapes);
    shapes
        .into_iter()
        .filter_map(|shape| {
            let comp = shape
                .iter()
                .map(|&(s, c)| if c { Graph::cycle(s).unwrap() } else { Graph::path(s).unwrap() })
                .reduce(|a, b| a.disjoint_union(&b).unwrap())
                .unwrap();
            let g = comp.complement();
            g.is_connected().then_some(g)
        })
        .collect()
}

fn criterion_13() -> Outcome {
    let (graphs, source) = match std::env::var("RAINBOW_CORPUS") {
        Ok(path) => {
            let text = std::fs::read_to_string(&path).expect("corpus readable");
            let graphs: Vec<Graph> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| parse_graph6(l).expect("corpus line parses"))
                .collect();
            (graphs, format!("corpus {path}"))
        }
        Err(_) => {
            let mut graphs = low_complement_graphs(8);
            graphs.extend(low_complement_graphs(9));
            (graphs, "no corpus supplied; complements of max degree <= 2 at n = 8, 9".to_string())
        }
    };
    let verdicts = Exec::Parallel.map(&graphs, |g| {
        if g.order() < 4 || !g.is_connected() {
            return None;
        }
        Some((decide_rx4_equals_3(g).unwrap().is_some(), recognize_rx4_equals_3(g).unwrap()))
    });
    let bad: Vec<String> = graphs
        .iter()
        .zip(&verdicts)
        .filter(|(_, v)| matches!(v, Some((d, r)) if d != r))
        .map(|(g, v)| format!("{} {v:?}", g6(g)))
        .collect();
    let yes = verdicts.iter().filter(|v| matches!(v, Some((true, _)))).count();
    outcome(&bad, format!("{source}: {} graphs, {yes} with rx4 = 3", graphs.len()))
}

fn main() {
    let start = Instant::now();
    let census: Vec<Vec<Graph>> = (0..=7)
        .map(|n| if n == 0 { Vec::new() } else { enumerate_connected_graphs(n, Exec::Parallel).unwrap() })
        .collect();
    let ctx = Ctx { census, solved: Mutex::new(HashMap::new()) };
    println!("census generated in {:.2?}", start.elapsed());

    type Check<'a> = (usize, &'a str, Option<Duration>, Box<dyn Fn() -> Outcome + 'a>);
    let secs = Duration::from_secs;
    let checks: Vec<Check> = vec![
        (1, "order-4 base case", Some(secs(1)), Box::new(|| criterion_1(&ctx))),
        (2, "rx4 = 3 characterization, n <= 7", Some(secs(300)), Box::new(|| criterion_2(&ctx))),
        (3, "exact solver concordance, n <= 6", Some(secs(600)), Box::new(|| criterion_3(&ctx))),
        (4, "trees", Some(secs(300)), Box::new(|| criterion_4(&ctx))),
        (5, "unicyclic graphs", None, Box::new(|| criterion_5(&ctx))),
        (6, "cacti with c(G) = 2", None, Box::new(|| criterion_6(&ctx))),
        (7, "K4 and K4 - e families", None, Box::new(|| criterion_7(&ctx))),
        (8, "theta and edge-disjoint cycles", None, Box::new(|| criterion_8(&ctx))),
        (9, "rx4 = n - 1 characterization", None, Box::new(|| criterion_9(&ctx))),
        (10, "order-4 rainbow tree oracle", Some(secs(1)), Box::new(criterion_10)),
        (11, "reference colorings", None, Box::new(criterion_11)),
        (12, "property suites", None, Box::new(|| criterion_12(&ctx))),
        (13, "beyond the internal census", Some(secs(1800)), Box::new(criterion_13)),
    ];

    let mut failed = 0;
    for (id, name, limit, run) in checks {
        let t = Instant::now();
        let out = run();
        let took = t.elapsed();
        let in_time = limit.is_none_or(|l| took <= l);
        let ok = out.ok && in_time;
        if !ok {
            failed += 1;
        }
        let limit_note = limit.map(|l| format!(" (limit {l:?})")).unwrap_or_default();
        println!(
            "criterion {id:>2} {}: {name}: {} [{took:.2?}{limit_note}]",
            if ok { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    println!("{} of 13 criteria passed in {:.2?}", 13 - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
