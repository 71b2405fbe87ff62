//! Complex dilogarithm Li₂ and the Bloch–Wigner function D.
//!
//! Li₂ uses the principal branch with cut [1, ∞). Evaluation maps the
//! argument into the disk via the inversion and reflection functional
//! equations, then sums the Bernoulli series in u = -log(1-w), which
//! converges like (|u|/2π)^n; after the mappings |u| ≤ 1.8, so ~35 terms
//! reach full double precision. This keeps the unit circle fast, which is
//! where every shape-parameter evaluation lives.
//!
//! D(ω) = Im Li₂(ω) + log|ω| · arg(1-ω) is the volume of the ideal
//! tetrahedron with shape ω; it is real-analytic on ℂ ∖ {0, 1} and
//! vanishes on the real line.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const PI: f64 = std::f64::consts::PI;
const PI2_6: f64 = PI * PI / 6.0;

/// Maclaurin fallback for |w| small (used by tests as an oracle too).
fn li2_maclaurin(w: Complex64) -> Complex64 {
    let mut term = w;
    let mut sum = w;
    for k in 2..200u32 {
        term *= w;
        let add = term / (k as f64 * k as f64);
        sum += add;
        if add.norm() < 1e-18 * sum.norm().max(1.0) {
            break;
        }
    }
    sum
}

/// Li₂ via the Bernoulli series in u = -Log(1-w); requires |u| < 2π.
fn li2_bernoulli(w: Complex64) -> Complex64 {
    // B_0 u - B_1 u²/2! + Σ_{k>=1} B_{2k} u^{2k+1}/(2k+1)!
    let u = -(Complex64::new(1.0, 0.0) - w).ln();
    let u2 = u * u;
    // B_{2k}/(2k+1)! computed once; f64 literals are exact enough since
    // each coefficient is O((2π)^{-2k}).
    const C: [f64; 15] = [
        2.777_777_777_777_777_6e-2,   // B_2/3!
        -2.777_777_777_777_777_8e-4,  // B_4/5!
        4.724_111_866_969_010e-6,     // B_6/7!
        -9.185_773_074_661_964e-8,    // B_8/9!
        1.897_886_998_897_100_1e-9,   // B_10/11!
        -4.064_761_645_144_225_6e-11, // B_12/13!
        8.921_691_020_456_452e-13,    // B_14/15!
        -1.993_929_586_072_107_4e-14, // B_16/17!
        4.518_980_029_619_918e-16,    // B_18/19!
        -1.035_651_761_218_124_7e-17, // B_20/21!
        2.395_218_621_026_187e-19,    // B_22/23!
        -5.581_785_874_325_009e-21,   // B_24/25!
        1.309_150_755_418_321_2e-22,  // B_26/27!
        -3.087_419_802_426_740_3e-24, // B_28/29!
        7.315_975_652_702_203e-26,    // B_30/31!
    ];
    let mut sum = u - u2 / 4.0;
    let mut upow = u * u2; // u^{2k+1} starting at k=1
    for c in C {
        let add = c * upow;
        sum += add;
        if add.norm() < 1e-19 * sum.norm().max(1.0) {
            break;
        }
        upow *= u2;
    }
    sum
}

/// Euler's dilogarithm, principal branch (cut [1, ∞), continuous from
/// below on the cut). Relative error < 1e-13 for |w| ≤ 10.
pub fn li2(w: Complex64) -> Complex64 {
    if w.re == 0.0 && w.im == 0.0 {
        return Complex64::default();
    }
    if w.im == 0.0 && w.re == 1.0 {
        return Complex64::new(PI2_6, 0.0);
    }

    let r = w.norm();
    if r > 1.0 {
        // inversion: Li₂(w) = -Li₂(1/w) - π²/6 - Log²(-w)/2
        let inv = 1.0 / w;
        let lm = (-w).ln();
        return -li2(inv) - PI2_6 - 0.5 * lm * lm;
    }
    if w.re > 0.5 {
        // reflection: Li₂(w) = π²/6 - Log(w)·Log(1-w) - Li₂(1-w)
        let om = Complex64::new(1.0, 0.0) - w;
        return PI2_6 - w.ln() * om.ln() - li2(om);
    }
    if r < 0.25 {
        li2_maclaurin(w)
    } else {
        li2_bernoulli(w)
    }
}

/// Bloch–Wigner function D(ω) = Im Li₂(ω) + log|ω|·arg(1-ω).
///
/// Real arguments (and ω ∈ {0,1}) give exactly 0.
pub fn bloch_wigner(w: Complex64) -> f64 {
    if w.im == 0.0 {
        return 0.0;
    }
    li2(w).im + w.norm().ln() * (Complex64::new(1.0, 0.0) - w).arg()
}

/// A logarithm value together with the integer number of 2πi turns picked
/// up by analytic continuation; `value()` is principal + 2πi·turns.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchedLog {
    pub principal: Complex64,
    pub turns: i64,
}

impl BranchedLog {
    pub fn principal_of(z: Complex64) -> Self {
        BranchedLog { principal: z.ln(), turns: 0 }
    }

    /// Continue from a previous value: choose the branch of log(z) nearest
    /// to `prev.value()`.
    pub fn continued_from(prev: &BranchedLog, z: Complex64) -> Self {
        let p = z.ln();
        let diff = prev.value().im - p.im;
        let turns = (diff / std::f64::consts::TAU).round() as i64;
        BranchedLog { principal: p, turns }
    }

    pub fn value(&self) -> Complex64 {
        self.principal + Complex64::new(0.0, std::f64::consts::TAU * self.turns as f64)
    }

    /// exp(value) must reproduce the original argument.
    pub fn exp_check(&self, z: Complex64) -> f64 {
        (self.value().exp() - z).norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};

    #[test]
    fn special_values() {
        assert_eq!(li2(Complex64::default()), Complex64::default());
        // Li2(1) = π²/6, series oracle Σ 1/k²
        let oracle: f64 = (1..2_000_000u64).map(|k| 1.0 / (k as f64 * k as f64)).sum::<f64>();
        let got = li2(Complex64::new(1.0, 0.0)).re;
        assert_abs_diff_eq!(got, PI2_6, epsilon = 1e-15);
        assert!((got - oracle).abs() < 1e-6); // series truncation dominates
        // Li2(-1) = -π²/12, alternating series oracle
        let mut alt = 0.0f64;
        for k in 1..2_000_000u64 {
            let t = 1.0 / (k as f64 * k as f64);
            alt += if k % 2 == 1 { -t } else { t };
        }
        let got = li2(Complex64::new(-1.0, 0.0)).re;
        assert_abs_diff_eq!(got, -PI2_6 / 2.0, epsilon = 1e-14);
        assert!((got - alt).abs() < 1e-6);
    }

    #[test]
    fn agrees_with_maclaurin_inside_disk() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let w = Complex64::new(rng.gen_range(-0.45..0.45), rng.gen_range(-0.45..0.45));
            let a = li2(w);
            let b = li2_maclaurin(w);
            assert!((a - b).norm() < 1e-13 * b.norm().max(1.0), "w={w}");
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        // d/dw Li2 = -log(1-w)/w at 100 random points off the cut
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let h = 1e-6;
        let mut checked = 0;
        while checked < 100 {
            let w = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            if (w.im.abs() < 0.05 && w.re > 0.5) || w.norm() < 0.05 {
                continue; // keep away from the cut and the origin
            }
            let fd = (li2(w + h) - li2(w - h)) / (2.0 * h);
            let exact = -(Complex64::new(1.0, 0.0) - w).ln() / w;
            assert!((fd - exact).norm() < 1e-6 * exact.norm().max(1.0), "w={w}");
            checked += 1;
        }
    }

    #[test]
    fn bloch_wigner_reference_points() {
        // D(i) = Catalan's constant; alternating series oracle
        let mut catalan = 0.0f64;
        let mut c = 0.0f64; // compensated
        for k in (0..6_000_000u64).rev() {
            let t = {
                let d = (2 * k + 1) as f64;
                let v = 1.0 / (d * d);
                if k % 2 == 0 { v } else { -v }
            };
            let y = t - c;
            let s = catalan + y;
            c = (s - catalan) - y;
            catalan = s;
        }
        let di = bloch_wigner(Complex64::new(0.0, 1.0));
        assert!((di - catalan).abs() < 2e-13, "D(i)={di} catalan={catalan}");
        assert_abs_diff_eq!(di, 0.9159655941772190, epsilon = 1e-13);

        // D(e^{iπ/3}) = Cl₂(π/3): Clausen series Σ sin(kπ/3)/k²
        let theta = PI / 3.0;
        let mut cl2 = 0.0f64;
        let mut comp = 0.0f64;
        for k in (1..40_000_000u64).rev() {
            let t = (k as f64 * theta).sin() / ((k * k) as f64);
            let y = t - comp;
            let s = cl2 + y;
            comp = (s - cl2) - y;
            cl2 = s;
        }
        let dw = bloch_wigner(Complex64::from_polar(1.0, theta));
        assert!((dw - cl2).abs() < 5e-9, "tail of the Clausen series");
        assert_abs_diff_eq!(dw, 1.0149416064096537, epsilon = 1e-13);
    }

    #[test]
    fn bloch_wigner_vanishes_on_reals() {
        for x in [-3.0, -0.5, 0.0, 0.3, 1.0, 2.5] {
            assert_eq!(bloch_wigner(Complex64::new(x, 0.0)), 0.0);
        }
    }

    #[test]
    fn bloch_wigner_symmetries() {
        // D(w̄) = -D(w), D(1/w) = -D(w), D(1-w) = -D(w), 1000 points
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let w = Complex64::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
            if w.norm() < 1e-3 || (w - 1.0).norm() < 1e-3 || w.im.abs() < 1e-3 {
                continue;
            }
            let d = bloch_wigner(w);
            assert!((bloch_wigner(w.conj()) + d).abs() < 1e-11, "conj at {w}");
            assert!((bloch_wigner(1.0 / w) + d).abs() < 1e-11, "inv at {w}");
            assert!((bloch_wigner(Complex64::new(1.0, 0.0) - w) + d).abs() < 1e-11, "refl at {w}");
        }
    }

    #[test]
    fn positive_imaginary_shape_has_positive_volume() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let w = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.01..3.0));
            assert!(bloch_wigner(w) > 0.0, "w={w}");
            assert!(bloch_wigner(w.conj()) < 0.0);
        }
    }

    #[test]
    fn branched_log_continuation() {
        let start_arg = Complex64::new(1.0, 0.1).arg();
        let mut bl = BranchedLog::principal_of(Complex64::new(1.0, 0.1));
        // walk 1.5 turns around the origin; the continued imaginary part
        // must track the full unwrapped angle
        let steps = 100;
        let total = 1.5 * std::f64::consts::TAU;
        for s in 1..=steps {
            let t = total * (s as f64) / (steps as f64);
            let z = Complex64::from_polar(1.0, start_arg + t);
            bl = BranchedLog::continued_from(&bl, z);
            assert!(bl.exp_check(z) < 1e-12);
        }
        assert!((bl.value().im - (start_arg + total)).abs() < 1e-9);
        assert!(bl.turns > 0);
    }
}
