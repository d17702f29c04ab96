use primeprod::*;
use std::time::Instant;

#[test]
#[ignore]
fn timing_probe() {
    let t0 = Instant::now();
    let r = verify::check_gap_lemmas(1_000_000).unwrap();
    println!("gap_lemmas(1e6): {:?} pass={}", t0.elapsed(), r.passed());

    let t0 = Instant::now();
    let r = verify::check_pi_sum_table(39_018).unwrap();
    println!("pi_sum_table(39018): {:?} pass={}", t0.elapsed(), r.passed());

    let t0 = Instant::now();
    let r = verify::check_structure_props(5350).unwrap();
    println!("structure(5350): {:?} pass={} viol={:?}", t0.elapsed(), r.passed(), r.violations);

    let t0 = Instant::now();
    let r = verify::check_parity(5350).unwrap();
    println!("parity(5350): {:?} pass={} viol={:?}", t0.elapsed(), r.passed(), r.violations);

    let t0 = Instant::now();
    let r = verify::check_increasing(5350).unwrap();
    println!("increasing(5350): {:?} pass={} viol={:?}", t0.elapsed(), r.passed(), r.violations);

    let cfg = PifConfig::default();
    let t0 = Instant::now();
    let v = pif(100_000_000, Weight::Identity, &cfg).unwrap();
    println!("pif_id(1e8): {:?} -> {v}", t0.elapsed());

    let t0 = Instant::now();
    let v = pif(1_000_000_000, Weight::Identity, &cfg).unwrap();
    println!("pif_id(1e9): {:?} -> {v}", t0.elapsed());

    let eng = HEngine::with_defaults();
    let t0 = Instant::now();
    let out = eng.h(1_000_000_000_000u128).unwrap();
    println!(
        "h(1e12): {:?} base={} num={:?} den={:?} stats={:?}",
        t0.elapsed(),
        out.value.base_prime,
        out.value.numer,
        out.value.denom,
        out.g_stats
    );

    let t0 = Instant::now();
    let table = eng.small_table();
    println!("table(5350): {:?} kmax={}", t0.elapsed(), table.kmax());
}
