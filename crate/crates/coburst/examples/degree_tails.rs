//! Fit competing tail models to the in-degree sequence of a simulated run
//! and print the model comparison.
//!
//! Four models are fit above an automatically chosen cutoff (power law,
//! truncated power law, log-normal, exponential) and the truncated power law
//! is declared the winner only when it significantly beats all three
//! alternatives in a normalized log-likelihood-ratio test.

use coburst::bcsbm::{simulate, BcsbmParams};
use coburst::heavytail::classify_network;

fn main() -> coburst::Result<()> {
    let params = BcsbmParams {
        t_steps: 150,
        seed: 23,
        ..BcsbmParams::default()
    };
    let run = simulate(&params)?;
    let degrees = run.in_degrees();

    let report = classify_network(&degrees)?;
    println!(
        "degrees: {} values, {} positive, {} unique -> eligible: {}",
        report.n_values, report.n_positive, report.n_unique, report.eligible
    );
    if let Some(fits) = &report.fits {
        println!("\nmodel                 loglik (same tail, xmin = {})", fits.power_law.xmin);
        println!("power law             {:>10.3}  alpha {:.3}", fits.power_law.loglik, alpha_of(&fits.power_law));
        println!("truncated power law   {:>10.3}", fits.truncated_power_law.loglik);
        println!("log-normal            {:>10.3}", fits.log_normal.loglik);
        println!("exponential           {:>10.3}", fits.exponential.loglik);
    }
    if let Some(c) = &report.comparisons {
        println!("\ntruncated power law vs alternatives (llr, p):");
        println!("  vs power law    {:>9.3}  p={:.3}", c.vs_power_law.llr, c.vs_power_law.p_value);
        println!("  vs log-normal   {:>9.3}  p={:.3}", c.vs_log_normal.llr, c.vs_log_normal.p_value);
        println!("  vs exponential  {:>9.3}  p={:.3}", c.vs_exponential.llr, c.vs_exponential.p_value);
    }
    println!("\nwinner: {}", report.winner.as_deref().unwrap_or("(ineligible)"));
    Ok(())
}

fn alpha_of(fit: &coburst::heavytail::TailFit) -> f64 {
    match fit.params {
        coburst::heavytail::TailParams::PowerLaw { alpha } => alpha,
        coburst::heavytail::TailParams::TruncatedPowerLaw { alpha, .. } => alpha,
        _ => f64::NAN,
    }
}
