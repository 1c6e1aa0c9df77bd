//! Browser bindings for the volume engines.
//!
//! Every exported operation takes plain numbers and returns a JSON
//! string, so the page needs no generated glue types and the same
//! functions remain callable (and testable) on the host. Failures
//! return `{"error": "..."}` instead of throwing.

use convsphere_core::exact::{p_hyper, pdf_first_part, unit_volume_exact};
use convsphere_core::{grid, mc, paradox};

#[cfg(target_arch = "wasm32")]
use wasm_bindgen::prelude::wasm_bindgen;

fn err_json(msg: &str) -> String {
    serde_json::json!({ "error": msg }).to_string()
}

/// Unit-ball coefficients for dimensions 2 through `n_max`, each as an
/// exact monomial string, a rounded decimal, and a float for plotting.
#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn volume_table_json(n_max: u32, precision: u32) -> String {
    if !(2..=60).contains(&n_max) {
        return err_json("n_max must be between 2 and 60");
    }
    if !(1..=100).contains(&precision) {
        return err_json("precision must be between 1 and 100");
    }
    let mut rows = Vec::with_capacity(n_max as usize - 1);
    for n in 2..=n_max {
        let c = match unit_volume_exact(n) {
            Ok(c) => c,
            Err(e) => return err_json(&e.to_string()),
        };
        rows.push(serde_json::json!({
            "n": n,
            "exact": c.to_string(),
            "value": c.to_decimal(precision as usize),
            "value_f64": c.to_f64(),
        }));
    }
    serde_json::json!({ "rows": rows }).to_string()
}

/// Grid density of a sum of `n` squared uniform coordinates, plus the
/// exact first-part monomial for overlay and the below-one masses from
/// both engines.
#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn density_json(n: u32, cells: u32) -> String {
    if !(1..=12).contains(&n) {
        return err_json("n must be between 1 and 12");
    }
    if !(16..=4096).contains(&cells) {
        return err_json("cells must be between 16 and 4096");
    }
    let d = match grid::pdf_numeric(n, cells as usize) {
        Ok(d) => d,
        Err(e) => return err_json(&e.to_string()),
    };
    let h = d.cell_width();
    let density: Vec<f64> = d.masses().iter().map(|m| m / h).collect();
    let pdf = match pdf_first_part(n) {
        Ok(p) => p,
        Err(e) => return err_json(&e.to_string()),
    };
    let exact_mass = match p_hyper(n) {
        Ok(p) => p.to_f64(),
        Err(e) => return err_json(&e.to_string()),
    };
    serde_json::json!({
        "n": n,
        "cell_width": h,
        "support_end": d.support_end(),
        "density": density,
        "first_part_coeff": pdf.coeff().to_f64(),
        "first_part_coeff_exact": pdf.coeff().to_string(),
        "first_part_exponent": pdf.exponent().to_f64(),
        "first_part_exponent_exact": pdf.exponent().to_string(),
        "grid_mass_below_one": grid::mass_below_one(&d),
        "exact_mass_below_one": exact_mass,
    })
    .to_string()
}

/// Corner-sphere construction report, optionally cross-checked with a
/// seeded Monte Carlo coverage estimate when `samples > 0`.
#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn paradox_json(n: u32, samples: u32, seed: u32) -> String {
    if !(2..=200).contains(&n) {
        return err_json("n must be between 2 and 200");
    }
    if samples > 16_777_216 {
        return err_json("samples must be at most 16777216");
    }
    let report = match paradox::analyze(n) {
        Ok(r) => r,
        Err(e) => return err_json(&e.to_string()),
    };
    let mut v = serde_json::json!({
        "n": n,
        "inner_radius": report.inner_radius,
        "inner_exceeds_2": report.inner_exceeds_2,
        "inner_pokes_outside": report.inner_pokes_outside,
        "l_max": report.l_max,
        "corner_sphere_count": report.corner_sphere_count.to_string(),
        "frac_corner_exact": report.frac_corner_exact,
        "frac_inner_raw": report.frac_inner_raw,
        "frac_uncovered_lower_bound": report.frac_uncovered_lower_bound,
    });
    if samples > 0 {
        let est = match mc::estimate_coverage(n, u64::from(samples), u64::from(seed)) {
            Ok(e) => e,
            Err(e) => return err_json(&e.to_string()),
        };
        v["mc"] = serde_json::json!({
            "samples": est.samples,
            "seed": est.seed,
            "frac_inner": est.frac_inner,
            "frac_corner": est.frac_corner,
            "frac_uncovered": est.frac_uncovered,
        });
    }
    v.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> serde_json::Value {
        serde_json::from_str(s).expect("valid json")
    }

    #[test]
    fn table_rows_carry_exact_strings() {
        let v = parse(&volume_table_json(6, 10));
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0]["exact"], "pi");
        assert_eq!(rows[4]["exact"], "1/6·pi^3");
        assert_eq!(rows[2]["value"], "4.934802201");
        let f = rows[2]["value_f64"].as_f64().unwrap();
        assert!((f - 4.934802200544679).abs() < 1e-15);
    }

    #[test]
    fn table_rejects_out_of_range() {
        assert!(parse(&volume_table_json(1, 10))["error"].is_string());
        assert!(parse(&volume_table_json(61, 10))["error"].is_string());
        assert!(parse(&volume_table_json(6, 0))["error"].is_string());
    }

    #[test]
    fn density_reports_masses_and_overlay() {
        let v = parse(&density_json(2, 256));
        assert_eq!(v["support_end"].as_f64().unwrap(), 2.0);
        let density = v["density"].as_array().unwrap();
        // Convolving two length-256 mass vectors yields 2*256 - 1 cells.
        assert_eq!(density.len(), 511);
        // Flat at pi/4 away from the endpoints.
        let mid = density[128].as_f64().unwrap();
        assert!(
            (mid - std::f64::consts::FRAC_PI_4).abs() < 5e-3,
            "mid = {mid}"
        );
        let coeff = v["first_part_coeff"].as_f64().unwrap();
        assert!((coeff - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert_eq!(v["first_part_exponent"].as_f64().unwrap(), 0.0);
        let grid_mass = v["grid_mass_below_one"].as_f64().unwrap();
        let exact = v["exact_mass_below_one"].as_f64().unwrap();
        assert!((grid_mass - exact).abs() / exact < 1e-2);
    }

    #[test]
    fn density_rejects_out_of_range() {
        assert!(parse(&density_json(0, 256))["error"].is_string());
        assert!(parse(&density_json(13, 256))["error"].is_string());
        assert!(parse(&density_json(2, 8))["error"].is_string());
    }

    #[test]
    fn paradox_includes_mc_only_when_sampled() {
        let bare = parse(&paradox_json(10, 0, 42));
        assert_eq!(bare["corner_sphere_count"], "1024");
        assert_eq!(bare["inner_exceeds_2"], true);
        assert!(bare.get("mc").is_none());

        let sampled = parse(&paradox_json(10, 100_000, 42));
        let unc = sampled["mc"]["frac_uncovered"].as_f64().unwrap();
        assert!(unc > 0.9, "frac_uncovered = {unc}");
    }

    #[test]
    fn paradox_is_deterministic_per_seed() {
        let a = paradox_json(4, 50_000, 7);
        let b = paradox_json(4, 50_000, 7);
        assert_eq!(a, b);
    }

    #[test]
    fn paradox_rejects_out_of_range() {
        assert!(parse(&paradox_json(1, 0, 42))["error"].is_string());
        assert!(parse(&paradox_json(201, 0, 42))["error"].is_string());
        assert!(parse(&paradox_json(10, 20_000_000, 42))["error"].is_string());
    }
}
