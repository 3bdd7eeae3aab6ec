//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! The same checks back the `selftest` subcommand.

use dilates::selftest;

fn run(name: &str, f: fn() -> dilates::Result<String>) {
    let start = std::time::Instant::now();
    match f() {
        Ok(detail) => {
            println!(
                "PASS criterion {} ({} ms): {}",
                name,
                start.elapsed().as_millis(),
                detail
            );
        }
        Err(e) => {
            println!(
                "FAIL criterion {} ({} ms): {}",
                name,
                start.elapsed().as_millis(),
                e
            );
            panic!("criterion {} failed: {}", name, e);
        }
    }
}

#[test]
fn criterion_01_exact_rational_constants() {
    run("1 exact rational constants", selftest::criterion_1);
}

#[test]
fn criterion_02_certified_surd_constants() {
    run("2 certified surd constants", selftest::criterion_2);
}

#[test]
fn criterion_03_denominator_norm_cross_check() {
    run("3 denominator norm vs ideal index", selftest::criterion_3);
}

#[test]
fn criterion_04_paper_worked_sumsets() {
    run("4 paper worked sumset example", selftest::criterion_4);
}

#[test]
fn criterion_05_worked_lattice_density() {
    run("5 worked lattice-density example", selftest::criterion_5);
}

#[test]
fn criterion_06_lattice_density_properties() {
    run("6 lattice-density property suite", selftest::criterion_6);
}

#[test]
fn criterion_07_flag_stability() {
    run("7 flag stability", selftest::criterion_7);
}

#[test]
fn criterion_08_matrix_analysis() {
    run("8 matrix analysis", selftest::criterion_8);
}

#[test]
fn criterion_09_extremal_convergence() {
    run("9 extremal convergence", selftest::criterion_9);
}

#[test]
fn criterion_10_continuous_verifier() {
    run("10 continuous verifier", selftest::criterion_10);
}

#[test]
fn criterion_11_sumset_oracle_equivalence() {
    run("11 sumset oracle equivalence", selftest::criterion_11);
}

#[test]
fn criterion_12_regularity_decomposition() {
    run("12 regularity decomposition", selftest::criterion_12);
}
