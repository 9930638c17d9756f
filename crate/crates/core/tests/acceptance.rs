use std::time::{Duration, Instant};

use plane_trees::book::{compile_book, solve_book};
use plane_trees::cylindrical::{compile_layout, solve_cylindrical, Circle, SweepOptions};
use plane_trees::drawing::{induced_subdrawing, merge_colors, Edge};
use plane_trees::generators::{gen_book, gen_cylindrical, gen_points, gen_points_colored};
use plane_trees::monotone::{colors_needed, group_partition, solve_monotone, GroupTree, MonotoneDrawing};
use plane_trees::pseudolinear::{compile_points, solve_pseudolinear, Point, PointDrawing};
use plane_trees::search::{enumerate_spanning_trees, find_plane_tree, verify_conjecture1, SearchMode, VerifyOptions};
use plane_trees::{is_plane, is_spanning_tree, Drawing, EdgeColoring, SolveError, SolveReport};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_mono(d: &Drawing, c: &EdgeColoring) -> bool {
    find_plane_tree(d, c, SearchMode::Monochromatic(None)).unwrap().is_found()
}

fn check_output(tag: &str, d: &Drawing, c: &EdgeColoring, r: &SolveReport) -> Result<(), String> {
    ensure(r.is_found(), || format!("{tag}: no tree\n{}", r.to_text()))?;
    ensure(r.failed_checks().next().is_none(), || format!("{tag}: failed check\n{}", r.to_text()))?;
    let v = r.output_violations(d, c);
    ensure(v.is_empty(), || format!("{tag}: {v:?}"))?;
    ensure(is_plane(d, &r.tree) && is_spanning_tree(d.n(), &r.tree), || format!("{tag}: not a plane spanning tree"))
}

fn check_mono(tag: &str, d: &Drawing, c: &EdgeColoring, r: &SolveReport) -> Result<(), String> {
    check_output(tag, d, c, r)?;
    ensure(c.colors_of(&r.tree).len() <= 1, || format!("{tag}: tree is not monochromatic"))
}

fn small_drawings() -> Vec<(String, Drawing)> {
    let mut out = Vec::new();
    for seed in 0..240u64 {
        let n = 3 + (seed % 4) as usize;
        let (tag, d) = match seed % 3 {
            0 => {
                let ni = (seed / 3) as usize % (n + 1);
                (format!("cylindrical {ni}+{} seed {seed}", n - ni), compile_layout(&gen_cylindrical(ni, n - ni, seed).unwrap()).unwrap())
            }
            1 => (format!("book n={n} seed {seed}"), compile_book(&gen_book(n, seed).unwrap())),
            _ => (format!("points n={n} seed {seed}"), compile_points(&gen_points(n, seed).unwrap())),
        };
        out.push((tag, d));
    }
    out
}

fn criterion1() -> Outcome {
    let mut colorings = 0u64;
    let drawings = small_drawings();
    for (tag, d) in &drawings {
        let r = verify_conjecture1(d, VerifyOptions::default()).map_err(|e| format!("{tag}: {e}"))?;
        ensure(r.passed(), || format!("{tag}: {} failing colorings", r.failure_count))?;
        let expected = 1u64 << (d.n() * (d.n() - 1) / 2 - 1);
        ensure(r.colorings_checked == expected, || format!("{tag}: checked {} of {expected}", r.colorings_checked))?;
        colorings += r.colorings_checked;
    }
    Ok(format!("{} drawings with 3 <= n <= 6, {colorings} colorings, 0 failures", drawings.len()))
}

fn criterion2() -> Outcome {
    let opts = SweepOptions { assert_invariants: true };
    let (mut layouts, mut oracle_checked, mut swept, mut multi_round) = (0, 0, 0, 0);
    for seed in 0..600u64 {
        let n = 2 + (seed % 9) as usize;
        let forced = seed % 2 == 0;
        // forced instances keep both circles nonempty
        let ni = if forced { 1 + (seed / 2) as usize % (n - 1) } else { (seed / 9) as usize % (n + 1) };
        let mut l = gen_cylindrical(ni, n - ni, seed).map_err(|e| format!("seed {seed}: {e}"))?;
        if forced {
            // monochromatic cycles of distinct colors, so the sweep itself runs
            let inner = l.cycle_edges(Circle::Inner);
            let outer = l.cycle_edges(Circle::Outer);
            let base = l.coloring().clone();
            let c = EdgeColoring::from_fn(n, 2, |e| {
                if inner.contains(&e) {
                    0
                } else if outer.contains(&e) {
                    1
                } else {
                    base.color(e)
                }
            })
            .unwrap();
            l = l.with_coloring(c).unwrap();
        }
        let d = compile_layout(&l).unwrap();
        let c = l.coloring();
        let r = solve_cylindrical(&l, opts).map_err(|e| format!("seed {seed}: {e}"))?;
        let tag = format!("seed {seed} ({ni}+{})", n - ni);
        check_mono(&tag, &d, c, &r)?;
        if r.checked_invariants.iter().any(|ch| ch.name == "J1") {
            swept += 1;
        }
        if r.checked_invariants.iter().any(|ch| ch.name == "J3") {
            multi_round += 1;
        }
        if n <= 8 {
            ensure(oracle_mono(&d, c), || format!("{tag}: oracle finds no tree but the solver did"))?;
            oracle_checked += 1;
        }
        layouts += 1;
    }
    Ok(format!(
        "{layouts} layouts with 2 <= n <= 10 ({swept} swept, {multi_round} over several rounds), {oracle_checked} matched by brute force, 0 invariant failures"
    ))
}

fn criterion3() -> Outcome {
    let start = Instant::now();
    let mut groups_checked = 0;
    let count = 200u64;
    for seed in 0..count {
        let n = 8 + (seed % 24) as usize;
        let k = colors_needed(n);
        let p = gen_points_colored(n, k, seed).map_err(|e| format!("seed {seed}: {e}"))?;
        let m = MonotoneDrawing::from_points(&p);
        let c = p.coloring();
        let r = solve_monotone(&m, c).map_err(|e| format!("seed {seed}: {e}"))?;
        let tag = format!("n={n} k={k} seed {seed}");
        check_output(&tag, m.drawing(), c, &r.report)?;
        ensure(!r.report.avoided_colors.is_empty(), || format!("{tag}: avoids no color"))?;
        let removed = r.removed.ok_or_else(|| format!("{tag}: no removed color"))?;
        for g in &r.groups {
            let (sub, sc) = induced_subdrawing(m.drawing(), c, &g.vertices).unwrap();
            ensure(g.vertices.len() <= 7, || format!("{tag}: group of {}", g.vertices.len()))?;
            ensure(find_plane_tree(&sub, &sc, SearchMode::Hypochromatic).unwrap().is_found(), || {
                format!("{tag}: oracle finds no hypochromatic tree for {:?}", g.vertices)
            })?;
            let mono = find_plane_tree(&sub, &sc, SearchMode::Monochromatic(None)).unwrap();
            match g.kind {
                GroupTree::Monochromatic(col) => {
                    ensure(mono.is_found() && mono.color == Some(col), || format!("{tag}: group color disagrees with oracle"))?;
                    ensure(c.colors_of(&g.tree).iter().all(|&x| x == col), || format!("{tag}: group tree not in color {col}"))?;
                }
                GroupTree::Avoiding(x) => {
                    ensure(!mono.is_found(), || format!("{tag}: oracle has a monochromatic tree the solver missed"))?;
                    ensure(x == removed, || format!("{tag}: group avoids {x}, removed {removed}"))?;
                    let avoid = find_plane_tree(&sub, &merge_colors(&sc, x), SearchMode::Avoid(0)).unwrap();
                    ensure(avoid.is_found(), || format!("{tag}: oracle finds no tree avoiding {x}"))?;
                    ensure(!c.colors_of(&g.tree).contains(&x), || format!("{tag}: group tree uses {x}"))?;
                }
            }
            groups_checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("{count} point sets with 8 <= n <= 31, {groups_checked} groups matched by brute force, {:.1}s", elapsed.as_secs_f64()))
}

fn criterion4() -> Outcome {
    let (mut books, mut point_sets) = (0, 0);
    for seed in 0..210u64 {
        let n = 2 + (seed % 7) as usize;
        let b = gen_book(n, seed).unwrap();
        let d = compile_book(&b);
        let r = solve_book(&b).unwrap();
        let tag = format!("book n={n} seed {seed}");
        ensure(r.is_found() == oracle_mono(&d, b.coloring()), || format!("{tag}: verdict differs from oracle"))?;
        check_mono(&tag, &d, b.coloring(), &r)?;
        books += 1;
    }
    for seed in 0..210u64 {
        let n = 3 + (seed % 5) as usize;
        let p = gen_points(n, seed).unwrap();
        let d = compile_points(&p);
        let r = solve_pseudolinear(&p).unwrap();
        let tag = format!("points n={n} seed {seed}");
        ensure(r.is_found() == oracle_mono(&d, p.coloring()), || format!("{tag}: verdict differs from oracle"))?;
        check_mono(&tag, &d, p.coloring(), &r)?;
        point_sets += 1;
    }
    Ok(format!("{books} book layouts (n <= 8) and {point_sets} point sets (n <= 7) agree with brute force"))
}

fn criterion5() -> Outcome {
    for n in 2..=100usize {
        let expected = (n + 5).div_ceil(6);
        ensure(colors_needed(n) == expected && colors_needed(n) * 6 >= n + 5 && (colors_needed(n) - 1) * 6 < n + 5, || {
            format!("colors_needed({n}) = {}", colors_needed(n))
        })?;
        let groups = group_partition(n, 6);
        ensure(groups.len() + 1 == colors_needed(n), || format!("n={n}: {} groups", groups.len()))?;
        ensure(groups[0][0] == 0 && *groups.last().unwrap().last().unwrap() == n - 1, || format!("n={n}: ends"))?;
        for w in groups.windows(2) {
            let shared: Vec<&usize> = w[0].iter().filter(|v| w[1].contains(v)).collect();
            ensure(shared.len() == 1 && *shared[0] == *w[0].last().unwrap() && *shared[0] == w[1][0], || {
                format!("n={n}: groups {:?} / {:?}", w[0], w[1])
            })?;
        }
        ensure(groups.iter().all(|g| g.len() <= 7 && g.windows(2).all(|p| p[1] == p[0] + 1)), || format!("n={n}: group shape"))?;
    }
    for n in 2..=7usize {
        let count = enumerate_spanning_trees(n, false).unwrap().count() as u64;
        let cayley = (n as u64).pow(n as u32 - 2);
        ensure(count == cayley, || format!("n={n}: {count} trees, expected {cayley}"))?;
    }
    Ok("colors_needed and group overlaps for n = 2..100; Cayley counts for n = 2..7".into())
}

fn criterion6() -> Outcome {
    let pts = (0..5i64).map(|x| Point::new(x, x * x)).collect();
    let hull = |e: Edge| e.v() == e.u() + 1 || (e.u() == 0 && e.v() == 4);
    let c = EdgeColoring::from_fn(5, 2, |e| usize::from(!hull(e))).unwrap();
    let p = PointDrawing::new(pts, c.clone()).unwrap();
    let d = compile_points(&p);
    ensure(enumerate_spanning_trees(5, false).unwrap().count() == 125, || "expected 125 trees".into())?;
    let blue = find_plane_tree(&d, &c, SearchMode::Monochromatic(Some(1))).unwrap();
    ensure(!blue.is_found(), || format!("blue tree found: {}", blue.tree))?;
    let red = find_plane_tree(&d, &c, SearchMode::Monochromatic(Some(0))).unwrap();
    ensure(red.is_found(), || "no red tree".into())?;
    ensure(red.tree.iter().all(|&e| hull(e)), || format!("red tree {} leaves the hull", red.tree))?;
    let mut degree = [0; 5];
    for e in red.tree.iter() {
        degree[e.u()] += 1;
        degree[e.v()] += 1;
    }
    ensure(degree.iter().all(|&x| x <= 2), || "red tree is not a path".into())?;
    Ok(format!("convex K_5: no blue plane tree, red tree is hull path {}", red.tree))
}

fn criterion7() -> Outcome {
    for n in [7usize, 8] {
        let l = gen_cylindrical(n / 2, n - n / 2, 1).unwrap();
        let d = compile_layout(&l).unwrap();
        match verify_conjecture1(&d, VerifyOptions::default()) {
            Err(SolveError::LongRun(m)) if m == n => {}
            other => return Err(format!("n={n} not refused: {other:?}")),
        }
    }
    let d = compile_points(&gen_points(7, 3).unwrap());
    let r = verify_conjecture1(&d, VerifyOptions { long_run: true, threads: None }).map_err(|e| e.to_string())?;
    ensure(r.passed() && r.colorings_checked == 1 << 20, || format!("long run on n=7 failed: {r:?}"))?;
    Ok("n = 7 and n = 8 refused without the long-run flag; one n = 7 drawing verified with it".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 small-instance verification", criterion1),
        ("2 cylindrical sweep", criterion2),
        ("3 monotone groups", criterion3),
        ("4 book and straight-line", criterion4),
        ("5 formulas and counts", criterion5),
        ("6 negative control", criterion6),
        ("7 long-run refusal", criterion7),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{secs:.1}s]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
