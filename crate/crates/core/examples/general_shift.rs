//! Shift blocks for a parameterized gate that is not a plain rotation:
//! U(θ) = RY(θ)·H, for which U(θ + s) ≠ U(θ)·U(s).

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use onecircuit::data::generate_random_dataset;
use onecircuit::grad::{
    build_improved_circuit, check_branches, general_shift_insertion, GeneralShiftGates, ShiftRule,
};
use onecircuit::sim::{adjoint, mat_mul, ry_matrix, Mat2};
use onecircuit::vqc::{build_vqc, AnsatzConfig, EncodedInput};

fn hadamard() -> Mat2 {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

fn main() -> onecircuit::Result<()> {
    let data = generate_random_dataset(1, 4, 5)?;
    let input = EncodedInput::new(&data.inputs[0])?;
    let config = AnsatzConfig::new(2, 0, vec![0.9, 2.2])?;
    let rule = ShiftRule::default();
    let (program, spec) = build_improved_circuit(&input, &config, &rule)?;

    let u = |t: f64| mat_mul(&ry_matrix(t), &hadamard());
    let theta = config.theta[0];
    let gates = |shift: f64| GeneralShiftGates {
        base: u(theta),
        inverse: adjoint(&u(theta)),
        shifted: u(theta + shift),
    };
    let general = general_shift_insertion(
        &program,
        &spec,
        &[(0, gates(rule.shift)), (1, gates(-rule.shift))],
    )?;
    println!(
        "rewrote parameter 0: {} ops -> {} ops",
        program.len(),
        general.len()
    );

    let report = check_branches(&general, &spec, |index| {
        let (cfg, angle) = match index {
            1 => (config.clone(), theta + rule.shift),
            2 => (config.clone(), theta - rule.shift),
            0 => (config.clone(), theta),
            k => (
                config.shifted(
                    (k - 1) / 2,
                    if k % 2 == 1 { rule.shift } else { -rule.shift },
                ),
                theta,
            ),
        };
        build_vqc(&input, &cfg, 0)?
            .with_param_gate(0, u(angle))
            .data_distribution()
    })?;
    println!(
        "{} branches match direct substitution (max error {:.1e})",
        report.branches, report.max_distribution_error
    );
    Ok(())
}
