use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use anyhow::Context;
use serde_json::{json, Value};
use squish_core::algebra::{IntPoly, SeriesBudget, Vars};
use squish_core::connection::{edge_word, loop_trace, turn_word, word_text, Orientation};
use squish_core::exec::Exec;
use squish_core::honeycomb::{matching_of, HexCoord};
use squish_core::partitionfn::{colored_gf_box, colored_sum_by_volume, zq_at, zq_series, ZqArgs};
use squish_core::planepart::{count_boxed, macmahon_box_coeffs, macmahon_box_gf, BoxShape, PlanePartition};
use squish_core::render::{write_svg, Drawing};
use squish_core::roots::{conjecture_scan, monodromy_at, scalar_sign, tile_catalog, Classification};
use squish_core::squish::{overlay, squish_counts, squish_matching, DoubleDimer, Loop};
use squish_core::verify::{criterion_id, run_criterion, Settings, CRITERIA};

use crate::report::{Failure, Report};
use crate::{Command, Global, ZqAt};

type Outcome = Result<Report, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Fields of a report before timing is attached.
struct Draft {
    inputs: Value,
    results: Value,
    passed: bool,
    text: String,
}

pub fn run(command: &Command, global: &Global) -> Outcome {
    let start = Instant::now();
    let exec = Exec::default();
    let (name, draft) = match command {
        Command::Count { shape } => ("count", count(*shape, global, exec)?),
        Command::Gf { shape, colored } => ("gf", gf(*shape, *colored, global, exec)?),
        Command::Squish { shape, partition } => ("squish", squish(*shape, partition.as_deref(), global, exec)?),
        Command::Downsample { partition } => ("downsample", downsample(partition)?),
        Command::Monodromy { loop_spec, n } => ("monodromy", monodromy(loop_spec, *n)?),
        Command::Verify { criteria, property_cases, margin } => {
            let settings = Settings { exec, property_cases: *property_cases, margin: *margin };
            ("verify", verify(criteria, &settings)?)
        }
        Command::Zq { degree, at, check } => ("zq", zq(*degree, *at, *check)?),
        Command::Conjecture { boxes, margin } => ("conjecture", conjecture(boxes, *margin, global, exec)?),
        Command::Render { shape, partition, with, squish, out } => {
            ("render", render(*shape, partition, with.as_deref(), *squish, out)?)
        }
    };
    Ok(Report {
        command: name,
        version: env!("CARGO_PKG_VERSION"),
        inputs: draft.inputs,
        results: draft.results,
        passed: draft.passed,
        seconds: start.elapsed().as_secs_f64(),
        text: draft.text,
    })
}

fn within_cap(shape: BoxShape, global: &Global) -> Result<(), Failure> {
    if shape.cells() > global.max_cells {
        return Err(usage(format!(
            "box {shape} has {} cells, more than the cap of {} (raise it with --max-cells)",
            shape.cells(),
            global.max_cells
        )));
    }
    Ok(())
}

fn read_input(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

/// Reads a partition from inline JSON or from `@path`.
fn read_partition(arg: &str) -> Result<PlanePartition, Failure> {
    let text = read_input(arg)?;
    serde_json::from_str(&text).map_err(|e| usage(format!("partition `{}`: {e}", text.trim())))
}

/// The row arrays exactly as given.
fn read_grid(arg: &str) -> Result<Vec<Vec<u32>>, Failure> {
    let text = read_input(arg)?;
    serde_json::from_str(&text).map_err(|e| usage(format!("partition `{}`: {e}", text.trim())))
}

fn shape_json(shape: BoxShape) -> Value {
    json!([shape.x, shape.y, shape.z])
}

fn count(shape: BoxShape, global: &Global, exec: Exec) -> Result<Draft, Failure> {
    within_cap(shape, global)?;
    let n = count_boxed(shape, exec);
    let formula: num_bigint::BigInt = macmahon_box_coeffs(shape).iter().sum();
    let agree = formula == n.into();
    Ok(Draft {
        inputs: json!({ "box": shape_json(shape) }),
        results: json!({ "value": n, "product_formula": formula.to_string(), "agree": agree }),
        passed: agree,
        text: format!("{n} plane partitions fit in {shape} (product formula: {formula})\n"),
    })
}

fn gf(shape: BoxShape, colored: bool, global: &Global, exec: Exec) -> Result<Draft, Failure> {
    within_cap(shape, global)?;
    let poly = if colored { colored_gf_box(shape, exec) } else { macmahon_box_gf(shape) };
    Ok(Draft {
        inputs: json!({ "box": shape_json(shape), "colored": colored }),
        results: json!({ "polynomial": poly, "terms": poly.len(), "value_at_one": poly.coefficient_sum().to_string() }),
        passed: true,
        text: format!("{poly}\n"),
    })
}

fn loops_json(dd: &DoubleDimer) -> Result<(Value, String), Failure> {
    let parts = dd.decompose();
    let mut text = format!("{} doubled edges, {} loops\n", parts.doubled.len(), parts.loops.len());
    let mut loops = Vec::new();
    for l in &parts.loops {
        let trace = loop_trace(l)?;
        let turns = turn_word(l);
        let _ = writeln!(
            text,
            "  loop of {} edges around {} hexagons: word {}, turns {}",
            l.len(),
            l.interior().len(),
            word_text(&edge_word(l, Orientation::Geometric)),
            turns
        );
        loops.push(json!({
            "edges": l,
            "interior": l.interior().len(),
            "word": word_text(&edge_word(l, Orientation::Geometric)),
            "turn_word": turns.to_string(),
            "trace": trace,
        }));
    }
    Ok((json!({ "doubled": parts.doubled, "loops": loops }), text))
}

fn squish(shape: BoxShape, partition: Option<&str>, global: &Global, exec: Exec) -> Result<Draft, Failure> {
    shape.halved()?;
    let inputs = json!({ "box": shape_json(shape), "partition": partition.map(read_partition).transpose()? });
    if let Some(arg) = partition {
        let p = read_partition(arg)?;
        let dd = squish_matching(&matching_of(&p, shape)?)?;
        let (decomposition, text) = loops_json(&dd)?;
        return Ok(Draft {
            inputs,
            results: json!({ "target": dd, "decomposition": decomposition }),
            passed: true,
            text,
        });
    }
    within_cap(shape, global)?;
    let counts = squish_counts(shape, exec)?;
    let mut text = format!("{} squish targets over {shape}\n", counts.len());
    let mut targets = Vec::new();
    for (dd, n) in &counts {
        let loops = dd.decompose().loops;
        let sizes: Vec<usize> = loops.iter().map(Loop::len).collect();
        let _ = writeln!(text, "  fiber {n:>7}  loops {sizes:?}");
        targets.push(json!({ "target": dd, "fiber_size": n, "loop_lengths": sizes }));
    }
    let total: u64 = counts.values().sum();
    Ok(Draft { inputs, results: json!({ "targets": targets, "total": total }), passed: true, text })
}

/// Rows of `p` zero-padded to `rows × cols`.
fn padded(p: &PlanePartition, rows: usize, cols: usize) -> Vec<Vec<u32>> {
    (1..=rows).map(|i| (1..=cols).map(|j| p.entry(i, j)).collect()).collect()
}

fn downsample(partition: &str) -> Result<Draft, Failure> {
    let p = read_partition(partition)?;
    // Report at half the size of the grid as given, zeros included.
    let raw = read_grid(partition)?;
    let (rows, cols) = (raw.len().div_ceil(2), raw.iter().map(Vec::len).max().unwrap_or(0).div_ceil(2));
    let (lo, hi) = p.downsample();
    let (lo, hi) = (padded(&lo, rows, cols), padded(&hi, rows, cols));
    Ok(Draft {
        inputs: json!({ "partition": raw }),
        results: json!({ "min": lo, "max": hi }),
        passed: true,
        text: format!("min {}\nmax {}\n", json!(lo), json!(hi)),
    })
}

fn parse_loop(spec: &str) -> Result<Loop, Failure> {
    if spec == "hexagon" {
        return Ok(Loop::around_hexagon(HexCoord::new(0, 0)));
    }
    if let Some(tile) = tile_catalog().iter().find(|t| t.name == spec) {
        return Ok(tile.boundary()?);
    }
    let cells: Vec<(i32, i32)> = serde_json::from_str(spec).map_err(|_| {
        let names: Vec<&str> = tile_catalog().iter().map(|t| t.name).collect();
        usage(format!("loop `{spec}`: expected `hexagon`, one of {names:?}, or JSON pairs [[u,v],...]"))
    })?;
    if cells.is_empty() {
        return Err(usage("loop encloses no hexagons"));
    }
    let region: BTreeSet<HexCoord> = cells.into_iter().map(HexCoord::from).collect();
    Ok(Loop::around_region(&region)?)
}

fn monodromy(spec: &str, n: Option<u32>) -> Result<Draft, Failure> {
    let l = parse_loop(spec)?;
    let word = word_text(&edge_word(&l, Orientation::Geometric));
    let turns = turn_word(&l);
    let mut results = json!({
        "edges": l.len(),
        "interior": l.interior().len(),
        "word": word,
        "turn_word": turns.to_string(),
        "turn_trace": turns.eval().trace().to_string(),
    });
    let mut text = format!("word {word}\nturns {turns} (trace {})\n", turns.eval().trace());
    match n {
        None => {
            let trace = loop_trace(&l)?;
            let _ = writeln!(text, "trace {trace}");
            results["trace"] = json!(trace);
        }
        Some(n) => {
            let m = monodromy_at(&l, n)?;
            let sign = scalar_sign(&m);
            let _ = writeln!(text, "monodromy at n = {n}: {m}\ntrace {}", m.trace());
            results["matrix"] = json!(m);
            results["trace"] = json!(m.trace());
            results["scalar_sign"] = json!(sign);
        }
    }
    Ok(Draft { inputs: json!({ "loop": spec, "n": n }), results, passed: true, text })
}

fn verify(criteria: &[String], settings: &Settings) -> Result<Draft, Failure> {
    let ids: Vec<usize> = if criteria.iter().any(|c| c == "all") {
        (1..=CRITERIA.len()).collect()
    } else {
        criteria
            .iter()
            .map(|c| {
                criterion_id(c).ok_or_else(|| {
                    let keys: Vec<&str> = CRITERIA.iter().map(|(k, _)| *k).collect();
                    usage(format!("unknown criterion `{c}`; use all, 1-9 or one of {keys:?}"))
                })
            })
            .collect::<Result<_, _>>()?
    };
    let mut reports = Vec::new();
    let mut text = String::new();
    for id in ids {
        let r = run_criterion(id, settings)?;
        let status = if r.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(text, "criterion {id} {status}  {} ({:.1} s)", r.title, r.seconds);
        for c in r.failures() {
            let _ = writeln!(text, "    failed: {}: {}", c.name, c.detail);
        }
        reports.push(r);
    }
    let passed = reports.iter().all(|r| r.passed);
    let _ = writeln!(text, "{}", if passed { "all passed" } else { "verification failed" });
    Ok(Draft {
        inputs: json!({
            "criteria": criteria,
            "property_cases": settings.property_cases,
            "margin": settings.margin,
        }),
        results: json!({ "criteria": reports }),
        passed,
        text,
    })
}

fn zq(degree: u32, at: ZqAt, check: bool) -> Result<Draft, Failure> {
    if check && at != ZqAt::Generic {
        return Err(usage("--check compares the generic series only"));
    }
    let budget = SeriesBudget::new(degree);
    let series = match at {
        ZqAt::Generic => zq_series(budget)?,
        ZqAt::MinusOne => zq_at(&ZqArgs::diagonal(&IntPoly::from_int(&Vars::new(&["q"]), -1))?, budget)?,
        ZqAt::Volume => {
            let q = IntPoly::var(&Vars::new(&["q"]), "q")?;
            zq_at(&ZqArgs::diagonal(&q)?, budget)?
        }
    };
    let mut results = json!({ "series": series, "terms": series.len() });
    let mut passed = true;
    let mut text = format!("{series}\n");
    if check {
        passed = series == colored_sum_by_volume(degree);
        results["matches_brute_force"] = json!(passed);
        let _ = writeln!(text, "brute-force colored sum agrees: {passed}");
    }
    Ok(Draft { inputs: json!({ "degree": degree, "at": at, "check": check }), results, passed, text })
}

fn conjecture(boxes: &[BoxShape], margin: u32, global: &Global, exec: Exec) -> Result<Draft, Failure> {
    for &shape in boxes {
        within_cap(shape, global)?;
        shape.halved()?;
    }
    let verdicts = conjecture_scan(boxes, margin, exec)?;
    let count = |c| verdicts.iter().filter(|v| v.classification == c).count();
    let summary = json!({
        "loops": verdicts.len(),
        "consistent_zero": count(Classification::ConsistentZero),
        "consistent_tiled": count(Classification::ConsistentTiled),
        "counterexample": count(Classification::Counterexample),
        "unknown_window": count(Classification::UnknownWindow),
        "parity_flipped": verdicts.iter().filter(|v| v.parity_agrees == Some(false)).count(),
    });
    let mut text = String::new();
    for v in &verdicts {
        let _ = writeln!(
            text,
            "loop {:>3}: {:>2} edges, {:>2} hexagons, trace at n = 3 {:<12} {:?}",
            v.id,
            v.loop_.len(),
            v.interior,
            v.monodromy3.trace().to_string(),
            v.classification
        );
    }
    let _ = writeln!(text, "{summary}");
    let boxes_json: Vec<Value> = boxes.iter().map(|&b| shape_json(b)).collect();
    // Counterexamples are reported as data, not as a failed run.
    Ok(Draft {
        inputs: json!({ "boxes": boxes_json, "margin": margin }),
        results: json!({ "summary": summary, "verdicts": verdicts }),
        passed: true,
        text,
    })
}

fn render(
    shape: BoxShape,
    partition: &str,
    with: Option<&str>,
    squish: bool,
    out: &std::path::Path,
) -> Result<Draft, Failure> {
    let p = read_partition(partition)?;
    let m = matching_of(&p, shape)?;
    let mut inputs = json!({ "box": shape_json(shape), "partition": p, "squish": squish, "out": out });
    let (kind, edges) = if let Some(other) = with {
        let q = read_partition(other)?;
        inputs["with"] = json!(q);
        let dd = overlay(&m, &matching_of(&q, shape)?)?;
        write_svg(Drawing::DoubleDimer(&dd), out)?;
        ("overlay", dd.multiplicities().len())
    } else if squish {
        let dd = squish_matching(&m)?;
        write_svg(Drawing::DoubleDimer(&dd), out)?;
        ("squish", dd.multiplicities().len())
    } else {
        write_svg(Drawing::Matching(&m), out)?;
        ("matching", m.len())
    };
    let bytes = std::fs::metadata(out).with_context(|| format!("reading back {}", out.display()))?.len();
    Ok(Draft {
        inputs,
        results: json!({ "kind": kind, "edges": edges, "bytes": bytes }),
        passed: true,
        text: format!("wrote {kind} with {edges} edges to {}\n", out.display()),
    })
}
