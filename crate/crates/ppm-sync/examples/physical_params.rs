//! Physical-parameter validation and the canonical (M, L, k) mapping.
//!
//! Run with:
//! ```bash
//! cargo run --release --example physical_params
//! ```

use ppm_sync::params::{to_canonical, validate_physical, PhysicalParams};

fn main() {
    // A 2 GHz ultra-wideband system with 1 us symbols and 100 ns delay spread.
    let mut p = PhysicalParams {
        bandwidth: 2.0e9,
        symbol_time: 1.0e-6,
        delay_spread: 1.0e-7,
        symbol_energy: 6.0,
        flash_theta: 0.1,
        k1: 1.0,
        k2: 1.0,
        k3: 1.0,
    };

    println!("=== Validation ===\n");
    let report = validate_physical(&p).unwrap();
    println!("N (pulse positions) = {}", p.num_pulse_positions());
    println!("M (delay positions) = {}", p.num_delay_positions());
    println!("flash floor k1/ln(W*k2) = {:.6}", report.flash_floor);
    for check in &report.checks {
        println!(
            "  [{}] {}: {}",
            if check.passed { "ok" } else { "FAIL" },
            check.name,
            check.detail
        );
    }

    // Push theta below the floor to see the failure report.
    p.flash_theta = 0.02;
    let report = validate_physical(&p).unwrap();
    println!("\nWith theta = {}:", p.flash_theta);
    for check in report.checks.iter().filter(|c| !c.passed) {
        println!("  [FAIL] {}: {}", check.name, check.detail);
    }
    p.flash_theta = 0.1;

    println!("\n=== Canonical mapping ===\n");
    println!(
        "{:>6} {:>10} {:>12} {:>14} {:>14}",
        "L", "M", "k", "A (physical)", "A (canonical)"
    );
    for l in [1usize, 4, 16, 64] {
        let c = to_canonical(&p, l).unwrap();
        println!(
            "{:>6} {:>10} {:>12.6} {:>14.8} {:>14.8}",
            l,
            c.num_positions,
            c.snr_scale,
            p.amplitude(l),
            c.amplitude()
        );
    }
    println!("\nBoth routes agree: sqrt(E/(theta*L)) = sqrt(k*ln(M)/L) with k = E/(theta*ln M).");
}
