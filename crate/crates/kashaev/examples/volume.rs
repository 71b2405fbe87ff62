//! Solve the hyperbolicity equations for a few knots and print their
//! volumes and tetrahedron shapes.
//!
//!     cargo run --release --example volume

use kashaev::pipeline::{parse_input, solve_volume};
use kashaev::solver::NewtonSettings;

fn main() -> kashaev::Result<()> {
    for (name, word) in [
        ("4_1", "s1 -s2 s1 -s2"),
        ("5_2", "s1 s1 s2 -s1 s2 s2"),
        ("6_3", "s1 -s2 -s2 s1 -s2 s1"),
    ] {
        let d = parse_input(word)?;
        let solved = solve_volume(&d, &NewtonSettings::default())?;
        let s = &solved.solution;
        println!("{name}  ({word})");
        println!("  volume      = {:.15}", s.volume);
        println!("  sum D(z)    = {:.15}", s.bloch_wigner_sum);
        println!("  geometric   = {}", s.geometric);
        println!("  residual    = {:.2e}", s.residual_norm);
        for sh in &s.shapes {
            println!(
                "  tetrahedron at crossing {} face {}: z = {:.6}{:+.6}i (D = {:+.6})",
                sh.nu, sh.face, sh.value.re, sh.value.im, sh.volume
            );
        }
        println!();
    }
    Ok(())
}
