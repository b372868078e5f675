mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{check_hom, check_ring_axioms, hom_corpus, network_corpus, ring, ring_corpus};
use ringcode::cli;
use ringcode::dominance::{field_product_dominates, maximal_rings, to_partition_ring, Relation};
use ringcode::network::{
    choose_two, choose_two_field_solution, lift_subring, map_code, product_code, solve_brute,
    two_six, verify, Network, ScalarLinearCode, SolveOptions,
};
use ringcode::partitions::{
    enumerate_partitions, has_unique_maximal, is_maximal, is_maximal_full_scan, maximal_partitions,
};
use ringcode::ring::{Ring, RingHom};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn solve(net: &Network, r: &Ring) -> Result<Option<ScalarLinearCode>, String> {
    solve_brute(net, r, &SolveOptions::default()).map_err(|e| e.to_string())
}

fn table1() -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(
        ["ringcode", "verify", "table1", "--max-k", "30"],
        &mut out,
        &mut err,
    );
    let text = String::from_utf8_lossy(&out).into_owned();
    ensure(code == 0, || {
        format!("exit {code}: {text}{}", String::from_utf8_lossy(&err))
    })?;
    for (k, count, last) in [(17, 9, "(7,6,4)"), (23, 16, "(10,9,4)")] {
        let ps: Vec<String> = maximal_partitions(k)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|p| p.to_string())
            .collect();
        ensure(
            ps.len() == count && ps[0] == format!("({k})") && ps.contains(&last.to_string()),
            || format!("k={k}: {}", ps.join(" ")),
        )?;
    }
    Ok(format!(
        "{}; k=17: ({{17}} + 8), k=23: ({{23}} + 15)",
        text.trim()
    ))
}

fn unique_maximal() -> Outcome {
    let unique: Vec<u32> = (1..=30)
        .filter(|&k| has_unique_maximal(k).unwrap())
        .collect();
    ensure(unique == [1, 2, 3, 4, 6], || {
        format!("unique for {unique:?}")
    })?;
    Ok("unique exactly for k in {1,2,3,4,6}".into())
}

fn example_prime_powers() -> Outcome {
    let expected: [(u32, &[&str]); 7] = [
        (5, &["(5)", "(3,2)"]),
        (7, &["(7)", "(5,2)", "(4,3)"]),
        (8, &["(8)", "(5,3)"]),
        (9, &["(9)", "(7,2)", "(5,4)"]),
        (10, &["(10)", "(7,3)", "(6,4)"]),
        (11, &["(11)", "(9,2)", "(8,3)", "(7,4)", "(6,5)"]),
        (12, &["(12)", "(7,5)"]),
    ];
    for p in [2, 3, 5, 7] {
        for (k, want) in expected {
            let got: Vec<String> = maximal_rings(&[(p, k)])
                .map_err(|e| e.to_string())?
                .iter()
                .map(|r| r.partition(p).unwrap().to_string())
                .collect();
            ensure(got == want, || format!("{p}^{k}: {got:?}"))?;
        }
    }
    Ok("7 lists match for p in {2,3,5,7}".into())
}

fn example_composite() -> Outcome {
    let expected = [
        "GF(2^7)xGF(3^5)xGF(5^2)",
        "GF(2^5)xGF(2^2)xGF(3^5)xGF(5^2)",
        "GF(2^4)xGF(2^3)xGF(3^5)xGF(5^2)",
        "GF(2^7)xGF(3^3)xGF(3^2)xGF(5^2)",
        "GF(2^5)xGF(2^2)xGF(3^3)xGF(3^2)xGF(5^2)",
        "GF(2^4)xGF(2^3)xGF(3^3)xGF(3^2)xGF(5^2)",
    ];
    let got: Vec<String> = maximal_rings(&[(2, 7), (3, 5), (5, 2)])
        .map_err(|e| e.to_string())?
        .iter()
        .map(|r| r.to_string())
        .collect();
    ensure(got == expected, || format!("{got:?}"))?;
    Ok("6 rings in order".into())
}

fn incomparable() -> Outcome {
    let s = to_partition_ring(&[(2, 3), (2, 2)]).map_err(|e| e.to_string())?;
    let r = to_partition_ring(&[(2, 5)]).map_err(|e| e.to_string())?;
    let ab = field_product_dominates(&s, &r);
    let ba = field_product_dominates(&r, &s);
    ensure(
        ab.relation() == Relation::NotDominates && ba.relation() == Relation::NotDominates,
        || format!("{ab}; {ba}"),
    )?;
    Ok(format!("{s} vs {r}: NO both ways"))
}

fn choose_two_grid() -> Outcome {
    let mut cells = Vec::new();
    for n in [3, 4, 5] {
        let net = choose_two(n).map_err(|e| e.to_string())?;
        for q in [2u64, 3, 4, 5] {
            let f = ring(&format!("GF({q})"));
            let expected = q + 1 >= n as u64;
            let found = solve(&net, &f)?;
            if let Some(c) = &found {
                ensure(verify(&net, c).unwrap(), || {
                    format!("n={n} q={q}: solver output does not verify")
                })?;
            }
            ensure(found.is_some() == expected, || {
                format!("n={n} q={q}: solver says {}", found.is_some())
            })?;
            if expected {
                let c = choose_two_field_solution(n, &f).map_err(|e| e.to_string())?;
                ensure(verify(&net, &c).unwrap(), || {
                    format!("n={n} q={q}: construction fails")
                })?;
            }
            cells.push(format!("{n}/{q}:{}", if expected { "Y" } else { "N" }));
        }
    }
    Ok(cells.join(" "))
}

fn two_six_slices() -> Outcome {
    let net = two_six();
    for r in ["GF(2)", "Z(6)"] {
        ensure(solve(&net, &ring(r))?.is_none(), || {
            format!("{r}: solution found")
        })?;
    }
    let mut codes = Vec::new();
    for r in ["GF(3)", "GF(4)", "GF(5)"] {
        let c = solve(&net, &ring(r))?.ok_or_else(|| format!("{r}: search exhausted"))?;
        ensure(verify(&net, &c).unwrap(), || {
            format!("{r}: does not verify")
        })?;
        codes.push(c);
    }
    let p = product_code(&net, &[codes[1].clone(), codes[0].clone()]).map_err(|e| e.to_string())?;
    ensure(verify(&net, &p).unwrap(), || {
        "product does not verify".into()
    })?;
    Ok(format!(
        "none over GF(2), Z(6); solved over GF(3), GF(4), GF(5), {}",
        p.ring
    ))
}

fn transport_chain() -> Outcome {
    let (d2, f2, f4, z4, z2) = (
        ring("D(2)"),
        ring("GF(2)"),
        ring("GF(4)"),
        ring("Z(4)"),
        ring("Z(2)"),
    );
    let aug = RingHom::dual_augmentation(2).map_err(|e| e.to_string())?;
    let red = RingHom::mod_reduction(&z4, &z2).map_err(|e| e.to_string())?;
    let corpus = network_corpus();
    for (name, net) in &corpus {
        let need = |r: &Ring| -> Result<ScalarLinearCode, String> {
            solve(net, r)?.ok_or_else(|| format!("{name}: no solution over {r}"))
        };
        let outputs = [
            map_code(net, &need(&d2)?, &aug),
            lift_subring(net, &need(&f2)?, &d2),
            lift_subring(net, &need(&f2)?, &f4),
            map_code(net, &need(&z4)?, &red),
        ];
        for o in outputs {
            let c = o.map_err(|e| format!("{name}: {e}"))?;
            ensure(verify(net, &c).unwrap(), || {
                format!("{name}: output over {} does not verify", c.ring)
            })?;
        }
    }
    Ok(format!("{} networks x 4 transports verified", corpus.len()))
}

fn oracle_equivalence() -> Outcome {
    let mut total = 0;
    for k in 1..=20 {
        for a in enumerate_partitions(k).map_err(|e| e.to_string())? {
            ensure(is_maximal(&a) == is_maximal_full_scan(&a), || {
                format!("disagree on {a}")
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} partitions agree"))
}

fn algebra_axioms() -> Outcome {
    let rings = ring_corpus(512);
    for r in &rings {
        check_ring_axioms(r)?;
    }
    let homs = hom_corpus(&rings, 512);
    for h in &homs {
        check_hom(h)?;
    }
    for p in [2, 3, 5, 7, 11, 13, 17, 19] {
        let (f, d) = (ring(&format!("GF({p})")), ring(&format!("D({p})")));
        let inc = RingHom::subring_inclusion(&f, &d).map_err(|e| e.to_string())?;
        let aug = RingHom::dual_augmentation(p).map_err(|e| e.to_string())?;
        for a in f.elements().unwrap() {
            ensure(aug.apply(&inc.apply(&a).unwrap()).unwrap() == a, || {
                format!("retraction fails over GF({p})")
            })?;
        }
    }
    Ok(format!("{} rings, {} homs", rings.len(), homs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("maximal partition table, k <= 30", table1),
        ("unique maximal partition", unique_maximal),
        ("maximal rings of prime-power size", example_prime_powers),
        ("maximal rings of size 2^7*3^5*5^2", example_composite),
        ("GF(8)xGF(4) vs GF(32) incomparable", incomparable),
        ("choose_two(n) over GF(q) iff q >= n-1", choose_two_grid),
        ("Two-Six solvability slices", two_six_slices),
        ("code transport at p = 2", transport_chain),
        (
            "shorter-only maximality oracle, k <= 20",
            oracle_equivalence,
        ),
        ("ring axioms and hom laws, size <= 512", algebra_axioms),
    ];
    let mut failed = 0;
    let start = Instant::now();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    let total: Duration = start.elapsed();
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        total.as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
