//! End-to-end acceptance run against the `hlie` binary. Prints one line per
//! criterion and exits nonzero if any fails.

use std::panic;
use std::process::{Command, ExitCode};
use std::time::Instant;

use serde_json::Value;

include!("../../core/tests/support/properties.rs");

type Check = Result<(), String>;

fn hlie(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hlie"))
        .arg("--json")
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("hlie {} exited with {}: {}", args.join(" "), out.status, String::from_utf8_lossy(&out.stderr)));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| format!("hlie {}: {e}", args.join(" ")))
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn uints(v: &Value) -> Vec<u64> {
    v.as_array().map(|a| a.iter().filter_map(Value::as_u64).collect()).unwrap_or_default()
}

fn check_poincare(args: &[&str], expected: &[u64]) -> Check {
    let got = uints(&hlie(args)?["poincare"]);
    ensure(got == expected, || format!("poincare {args:?}: {got:?}, expected {expected:?}"))
}

fn criterion_1() -> Check {
    check_poincare(&["poincare", "ex_2gen7_a"], &[1, 7, 21, 30, 15])?;
    check_poincare(&["poincare", "ex_2gen7_b"], &[1, 7, 21, 30, 15])?;
    for d in ["nandi_d1", "nandi_d2", "nandi_d3"] {
        check_poincare(&["poincare", d], &[1, 10, 45, 105, 69])?;
    }
    check_poincare(&["poincare", "--decone", "ex_pres_A"], &[1, 8, 24])?;
    check_poincare(&["poincare", "--decone", "ex_pres_B"], &[1, 8, 24, 32, 16])
}

/// `M_q` rows of a table, with every other row required to vanish.
fn m_rows(input: &str, rows: &[(&str, &[u64])]) -> Check {
    let v = hlie(&["--pmax", "3", "homotopy-module", input])?;
    let m = v["M"].as_object().ok_or("no M table")?;
    ensure(m.len() == rows.len(), || format!("{input}: unexpected rows {:?}", m.keys().collect::<Vec<_>>()))?;
    for (q, want) in rows {
        let got = uints(&m[*q]);
        ensure(got == *want, || format!("{input}: M_{q} = {got:?}, expected {want:?}"))?;
    }
    Ok(())
}

fn criterion_2() -> Check {
    m_rows("ex_2gen7_a", &[("3", &[5, 17, 36, 62]), ("4", &[2, 15, 62, 185])])?;
    m_rows("ex_2gen7_b", &[("3", &[5, 16, 33, 56]), ("4", &[1, 12, 56, 175])])
}

fn criterion_3() -> Check {
    let v = hlie(&["--pmax", "3", "analyze", "ex_lived2"])?;
    let r = &v["singular_range"];
    ensure(r["c"] == 3 && r["d"] == 5, || format!("singular range {r}"))?;
    ensure(v["verdict"] == "OutOfScope", || format!("verdict {}", v["verdict"]))?;
    let support = uints(&v["homotopy_module"]["support"]);
    ensure([3, 4, 5].iter().all(|q| support.contains(q)), || format!("support {support:?}"))
}

fn check_range(input: &str, c: u64, d: u64) -> Check {
    let v = hlie(&["hypersolvable", input])?;
    let r = &v["singular_range"];
    ensure(r["c"] == c && r["d"] == d, || format!("{input}: singular range {r}, expected ({c},{d})"))
}

fn criterion_4() -> Check {
    for d in ["nandi_d1", "nandi_d2", "nandi_d3"] {
        check_range(d, 3, 4)?;
    }
    check_range("ex_pres_A", 3, 3)
}

fn criterion_5() -> Check {
    let v = hlie(&["presentation", "ex_pres_A", "--deformation", "ex_pres_B", "--ell", "3"])?;
    let gens = v["generators"].as_array().ok_or("no generators")?;
    let bidegree = |d: [u64; 2]| gens.iter().filter(|g| uints(&g["bidegree"]) == d).count();
    let rels = v["relations"].as_array().ok_or("no relations")?;
    let kind = |k: &str| rels.iter().filter(|r| r["type"] == k).count();
    let counts = (bidegree([1, 0]), bidegree([2, 1]), gens.len(), kind("flag"), kind("central"));
    ensure(counts == (9, 32, 41, 16, 32), || format!("(x, y, generators, flag, central) = {counts:?}"))?;

    let a = hlie::io::lookup("ex_pres_A").unwrap().matroid();
    let dims = hlie::os::OsAlgebra::new(&a).dims();
    let chain = hlie::hypersolvable::find_solvable_chain(&a).ok_or("no solvable chain")?;
    let outcome = hlie::hypersolvable::singular_range(&chain, &dims).map_err(|e| e.to_string())?;
    let h = hlie::homotopy::hilbert_m_for_chain(&chain, outcome).map_err(|e| e.to_string())?;
    let c0 = h.expand(0).map_err(|e| e.to_string())?.coeff(0);
    ensure(c0 == hlie::kernel::scalar::rat(32), || format!("h(M, 0) = {c0}"))
}

fn check_pi(input: &str, series: &[u64], ranks: &[(u64, u64)]) -> Check {
    let v = hlie(&["pi-ranks", input, "--rescale", "1", "--degree", "9"])?;
    let got = uints(&v["u_series"]);
    ensure(got == series, || format!("{input}: series {got:?}"))?;
    let pis: Vec<(u64, u64)> = v["pi_ranks"]
        .as_object()
        .ok_or("no ranks")?
        .iter()
        .map(|(k, r)| (k.parse().unwrap(), r.as_u64().unwrap()))
        .filter(|&(_, r)| r != 0)
        .collect();
    let mut pis = pis;
    pis.sort();
    ensure(pis == ranks, || format!("{input}: pi ranks {pis:?}"))
}

fn criterion_6() -> Check {
    check_pi("ex_2gen7_a", &[1, 0, 7, 0, 28, 0, 84, 5, 210, 52], &[(3, 7), (8, 5), (10, 17)])?;
    check_pi("ex_2gen7_b", &[1, 0, 7, 0, 28, 0, 84, 5, 210, 51], &[(3, 7), (8, 5), (10, 16)])
}

fn criterion_7() -> Check {
    let tables: Vec<Value> = ["nandi_d1", "nandi_d2", "nandi_d3"]
        .iter()
        .map(|d| hlie(&["--pmax", "2", "homotopy-module", d]).map(|v| v["M"].clone()))
        .collect::<Result<_, _>>()?;
    for i in 0..3 {
        for j in i + 1..3 {
            ensure(tables[i] != tables[j], || format!("tables {} and {} agree: {}", i + 1, j + 1, tables[i]))?;
        }
    }
    Ok(())
}

fn criterion_8() -> Check {
    let mut failed = Vec::new();
    for (name, property) in PROPERTIES {
        let start = Instant::now();
        let ok = panic::catch_unwind(property).is_ok();
        println!("  property {name}: {} ({:.2}s)", if ok { "ok" } else { "FAILED" }, start.elapsed().as_secs_f64());
        if !ok {
            failed.push(*name);
        }
    }
    ensure(failed.is_empty(), || format!("failing properties: {failed:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("Poincare polynomials", criterion_1),
        ("homotopy module tables", criterion_2),
        ("support and hypothesis", criterion_3),
        ("singular ranges", criterion_4),
        ("presentation counts", criterion_5),
        ("rescaled ranks", criterion_6),
        ("Nandi distinguishability", criterion_7),
        ("property suites", criterion_8),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {}: PASS {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                all = false;
                println!("criterion {}: FAIL {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
