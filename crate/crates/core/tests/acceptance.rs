//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dicke_core::antisym::{antisym_count, check_pair_multiplet, enumerate_all_antisym, is_antisymmetric};
use dicke_core::entanglement::{
    block_structure_residual, brute_force_rdm, check_fig1_shape, check_fig2_shape, dicke_two_particle_rdm,
    fig1_data, fig2_data, named_two_qutrit_state, negativity, partial_transpose, schmidt_negativity_oracle,
    BasisOrder, FIG2_SIZES, PT_BLOCKS, RHO_BLOCKS,
};
use dicke_core::ladder::{apply_lowering, oracle_expansion, total_spin_expectation, RawExpansion};
use dicke_core::tables::{load_golden_dir, verify_tables, TABLE_TOL};
use dicke_core::{dicke_expansion, DickeExpansion, OccupationVector, SpinSpecies, WeightConvention};

type Outcome = Result<String, String>;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/tables")
}

fn all_ms(species: SpinSpecies, n: u32) -> impl Iterator<Item = i64> {
    let tj = species.twice_j(n);
    (-tj..=tj).step_by(2)
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let rows = load_golden_dir(&golden_dir()).map_err(|e| e.to_string())?;
    let report = verify_tables(&rows, WeightConvention::Binomial, TABLE_TOL).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let worst = report.tables.iter().map(|t| t.max_dev_closed_form.max(t.max_dev_oracle)).fold(0.0, f64::max);
    let summary = report
        .tables
        .iter()
        .map(|t| format!("{}:{}", t.table, if t.pass { "ok" } else { "FAIL" }))
        .collect::<Vec<_>>()
        .join(" ");
    if report.tables.len() != 6 || !report.pass() {
        return Err(format!("{summary}; max dev {worst:.2e}"));
    }
    within(elapsed, Duration::from_secs(1), "table check")?;
    Ok(format!(
        "{} cells, max dev {worst:.2e} (tol {TABLE_TOL:e}); {} listed cells checked at their corrected value; {elapsed:.2?}",
        rows.len(),
        report.corrections.iter().filter(|e| e.listed_deviation > TABLE_TOL || e.listed_occupation != e.corrected_occupation).count()
    ))
}

fn term_by_term(x: &DickeExpansion, expected: &[(&[u32], f64)]) -> Result<f64, String> {
    if x.terms.len() != expected.len() {
        return Err(format!("{} terms, expected {}", x.terms.len(), expected.len()));
    }
    let mut worst = 0.0f64;
    for (occ, c) in expected {
        worst = worst.max((x.amplitude(&OccupationVector::new(occ.to_vec())) - c).abs());
    }
    Ok(worst)
}

fn worked_examples() -> Outcome {
    let spin_one: [(&[u32], f64); 5] = [
        (&[4, 1, 5], 0.1225),
        (&[3, 3, 4], 0.4473),
        (&[2, 5, 3], 0.6929),
        (&[1, 7, 2], 0.5238),
        (&[0, 9, 1], 0.1746),
    ];
    let spin_three_halves: [(&[u32], f64); 8] = [
        (&[1, 0, 5, 0], 0.1825),
        (&[2, 0, 2, 2], 0.1361),
        (&[2, 1, 0, 3], 0.0641),
        (&[0, 4, 0, 2], 0.1666),
        (&[1, 1, 3, 1], 0.4713),
        (&[1, 2, 1, 2], 0.3333),
        (&[0, 2, 4, 0], 0.4999),
        (&[0, 3, 2, 1], 0.5772),
    ];
    let mut worst = 0.0f64;
    for (species, n, tm, expected) in [
        (SpinSpecies::ONE, 10, -2, &spin_one[..]),
        (SpinSpecies::THREE_HALVES, 6, -2, &spin_three_halves[..]),
    ] {
        for x in [dicke_expansion(species, n, tm), oracle_expansion(species, n, tm)] {
            worst = worst.max(term_by_term(&x.map_err(|e| e.to_string())?, expected)?);
        }
    }
    if worst < 5e-5 {
        Ok(format!("|10,-1> and |6,-1> match, max dev {worst:.2e}"))
    } else {
        Err(format!("max dev {worst:.2e}"))
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut count = 0;
    for species in SpinSpecies::ALL {
        for n in 1..=10 {
            for tm in all_ms(species, n) {
                let a = dicke_expansion(species, n, tm).map_err(|e| e.to_string())?;
                let b = oracle_expansion(species, n, tm).map_err(|e| e.to_string())?;
                if a.support(1e-12) != b.support(1e-12) {
                    return Err(format!("support differs at {species} N={n} 2M={tm}"));
                }
                worst = worst.max(a.max_deviation(&b));
                count += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    if worst > 1e-10 {
        return Err(format!("max dev {worst:.2e}"));
    }
    within(elapsed, Duration::from_secs(30), "oracle grid")?;
    Ok(format!("{count} states, max dev {worst:.2e}, {elapsed:.2?}"))
}

fn ladder_consistency() -> Outcome {
    let mut worst_step = 0.0f64;
    let mut worst_j2 = 0.0f64;
    for species in SpinSpecies::ALL {
        for n in 1..=10 {
            let sn = species.spin() * n as f64;
            let ms: Vec<i64> = all_ms(species, n).collect();
            for &tm in &ms {
                let x = dicke_expansion(species, n, tm).map_err(|e| e.to_string())?;
                worst_j2 = worst_j2.max((total_spin_expectation(&x) - sn * (sn + 1.0)).abs());
                if tm == ms[0] {
                    continue;
                }
                let lowered = apply_lowering(&RawExpansion::from_expansion(&x));
                let lowered = lowered.clone().scale(1.0 / lowered.norm_sq().sqrt()).into_expansion(0.0);
                let next = dicke_expansion(species, n, tm - 2).map_err(|e| e.to_string())?;
                worst_step = worst_step.max(lowered.max_deviation(&next));
            }
        }
    }
    if worst_step <= 1e-10 && worst_j2 <= 1e-8 {
        Ok(format!("J- step dev {worst_step:.2e}, <J^2> dev {worst_j2:.2e}"))
    } else {
        Err(format!("J- step dev {worst_step:.2e}, <J^2> dev {worst_j2:.2e}"))
    }
}

fn antisymmetric_states() -> Outcome {
    let mut counts = Vec::new();
    for (species, expected) in SpinSpecies::ALL.into_iter().zip([1u64, 4, 11, 26]) {
        let states = enumerate_all_antisym(species);
        if antisym_count(species) != expected || states.len() as u64 != expected {
            return Err(format!("{species}: {} states, expected {expected}", states.len()));
        }
        for (i, a) in states.iter().enumerate() {
            if !is_antisymmetric(a) || (a.norm_sq() - 1.0).abs() > 1e-12 {
                return Err(format!("{species}: state {i} fails antisymmetry or normalization"));
            }
            for (j, b) in states.iter().enumerate().skip(i + 1) {
                if a.inner(b).abs() > 1e-12 {
                    return Err(format!("{species}: states {i} and {j} overlap"));
                }
            }
        }
        let pair = check_pair_multiplet(species).map_err(|e| e.to_string())?;
        if pair.max_residual() > 1e-10 {
            return Err(format!("{species}: J=2s-1 residual {:.2e}", pair.max_residual()));
        }
        counts.push(states.len().to_string());
    }
    Ok(format!("counts {}, all antisymmetric, normalized and orthogonal", counts.join("/")))
}

fn negativity_points() -> Outcome {
    let cases = [
        ("bg", 1.0),
        ("bsplus", 1.0),
        ("bsminus", 1.0),
        ("psie", 0.8221),
        ("dicke20", 0.833),
        ("psi2", 0.9571),
    ];
    let mut parts = Vec::new();
    let mut worst_oracle = 0.0f64;
    for (name, expected) in cases {
        let state = named_two_qutrit_state(name).map_err(|e| e.to_string())?;
        let value = negativity(&state.density().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?.value;
        let schmidt = schmidt_negativity_oracle(&state);
        worst_oracle = worst_oracle.max((value - schmidt).abs());
        if (value - expected).abs() > 5e-4 {
            return Err(format!("{name}: {value:.6}, expected {expected}"));
        }
        parts.push(format!("{name}={value:.4}"));
    }
    if worst_oracle > 1e-10 {
        return Err(format!("Schmidt oracle disagrees by {worst_oracle:.2e}"));
    }
    Ok(format!("{}; Schmidt dev {worst_oracle:.2e}", parts.join(" ")))
}

fn rdm_oracle() -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_block = 0.0f64;
    let mut worst_path = 0.0f64;
    for n in 2..=6 {
        for tm in all_ms(SpinSpecies::ONE, n) {
            let x = dicke_expansion(SpinSpecies::ONE, n, tm).map_err(|e| e.to_string())?;
            let formula = dicke_two_particle_rdm(&x).map_err(|e| e.to_string())?;
            let brute = brute_force_rdm(&x).map_err(|e| e.to_string())?;
            worst = worst.max(formula.matrix().max_abs_diff(brute.matrix()));

            let rho = brute.matrix().to_order(BasisOrder::DickeBlocks);
            let pt = partial_transpose(&rho);
            worst_block = worst_block
                .max(block_structure_residual(rho.entries(), &RHO_BLOCKS))
                .max(block_structure_residual(pt.entries(), &PT_BLOCKS));

            let report = negativity(&formula).map_err(|e| e.to_string())?;
            let blocks = report.block_decomposition.ok_or("block path unavailable")?;
            worst_path = worst_path.max((blocks.value - report.value).abs());
        }
    }
    if worst <= 1e-10 && worst_block <= 1e-12 && worst_path <= 1e-12 {
        Ok(format!("elementwise dev {worst:.2e}, off-block {worst_block:.2e}, block vs full {worst_path:.2e}"))
    } else {
        Err(format!("elementwise dev {worst:.2e}, off-block {worst_block:.2e}, block vs full {worst_path:.2e}"))
    }
}

fn figure_shapes() -> Outcome {
    let start = Instant::now();
    let fig1 = fig1_data().map_err(|e| e.to_string())?;
    let mut problems = check_fig1_shape(&fig1);
    let mut advantage = Vec::new();
    for n in FIG2_SIZES {
        let s = fig2_data(n).map_err(|e| e.to_string())?;
        problems.extend(check_fig2_shape(&s));
        let zero = |v: &[dicke_core::entanglement::SweepPoint]| v.iter().find(|p| p.twice_m == 0).map(|p| p.negativity);
        advantage.push(format!(
            "N={n} equal {:.4} vs dicke {:.4}",
            zero(&s.equal).unwrap_or(f64::NAN),
            zero(&s.dicke).unwrap_or(f64::NAN)
        ));
    }
    let elapsed = start.elapsed();
    if !problems.is_empty() {
        return Err(problems.join("; "));
    }
    within(elapsed, Duration::from_secs(60), "sweep grid")?;
    Ok(format!("{} Dicke points monotone; {}; {elapsed:.2?}", fig1.len(), advantage.join(", ")))
}

fn spin_half() -> Outcome {
    let mut states = 0;
    for n in 1..=20 {
        for tm in all_ms(SpinSpecies::HALF, n) {
            let x = dicke_expansion(SpinSpecies::HALF, n, tm).map_err(|e| e.to_string())?;
            if x.terms.len() != 1 || x.terms[0].1 != 1.0 {
                return Err(format!("N={n} 2M={tm}: {:?}", x.terms));
            }
            states += 1;
        }
    }
    Ok(format!("C = 1 exactly for all {states} states with N <= 20"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("table reproduction", table_reproduction),
        ("worked-example states", worked_examples),
        ("oracle vs closed form", oracle_equivalence),
        ("ladder consistency", ladder_consistency),
        ("antisymmetric counts", antisymmetric_states),
        ("negativity point values", negativity_points),
        ("RDM oracle equivalence", rdm_oracle),
        ("figure shapes", figure_shapes),
        ("spin-1/2 degeneracy", spin_half),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("[PASS] AC{} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] AC{} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
