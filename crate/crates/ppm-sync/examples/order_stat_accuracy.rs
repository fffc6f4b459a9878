//! Asymptotic order-statistic formulas versus the exact quadrature oracle
//! and a Monte Carlo estimate.
//!
//! The asymptotic mean drops an O(1/ln G) term and the variance an
//! O(1/ln^2 G) term; the oracle quantifies the resulting error and shows it
//! shrinking as the population grows.
//!
//! Run with:
//! ```bash
//! cargo run --release --example order_stat_accuracy
//! ```

use ppm_sync::order_stats::{
    cramer_mean, cramer_var, empirical_order_stat, order_stat_oracle, OrderStatQuery,
};
use ppm_sync::seeding;

fn main() {
    println!("mean of the nu-th largest of G standard normals\n");
    println!(
        "{:>4} {:>9} {:>12} {:>12} {:>10} {:>16}",
        "nu", "G", "oracle", "asymptotic", "error", "monte carlo"
    );
    let mut rng = seeding::stream(31);
    for &nu in &[1usize, 2, 5] {
        for &g in &[100usize, 10_000, 1_000_000] {
            let (oracle_mean, _) = order_stat_oracle(nu, g).unwrap();
            let q = OrderStatQuery::new(nu, g, 0.0, 1.0).unwrap();
            let approx = cramer_mean(&q).unwrap();
            let mc = if g <= 10_000 {
                let (m, _, se) = empirical_order_stat(nu, g, 2000, &mut rng).unwrap();
                format!("{m:.4} +- {:.4}", 2.0 * se)
            } else {
                "-".to_string()
            };
            println!(
                "{:>4} {:>9} {:>12.6} {:>12.6} {:>10.6} {:>16}",
                nu,
                g,
                oracle_mean,
                approx,
                (approx - oracle_mean).abs(),
                mc
            );
        }
        println!();
    }

    println!("variance of the maximum (nu = 1)\n");
    println!(
        "{:>9} {:>12} {:>12} {:>10}",
        "G", "oracle", "asymptotic", "error"
    );
    for &g in &[100usize, 10_000, 1_000_000] {
        let (_, oracle_var) = order_stat_oracle(1, g).unwrap();
        let q = OrderStatQuery::new(1, g, 0.0, 1.0).unwrap();
        let approx = cramer_var(&q).unwrap();
        println!(
            "{:>9} {:>12.6} {:>12.6} {:>10.6}",
            g,
            oracle_var,
            approx,
            (approx - oracle_var).abs()
        );
    }

    println!("\nsmall-population exact values:");
    let (m2, v2) = order_stat_oracle(1, 2).unwrap();
    println!("  max of 2: mean = {m2:.9} (= 1/sqrt(pi)), var = {v2:.9} (= 1 - 1/pi)");
    let (m3, v3) = order_stat_oracle(1, 3).unwrap();
    println!("  max of 3: mean = {m3:.9} (= 3/(2 sqrt(pi))), var = {v3:.9}");
}
