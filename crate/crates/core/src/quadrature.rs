//! Adaptive Gauss-Kronrod (7/15) quadrature and the oscillation period
//! between two turning points.

#![allow(clippy::excessive_precision)]

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_PANELS: usize = 2000;

/// Returns `(kronrod, |kronrod − gauss|)` on `[a, b]`.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// `∫ₐᵇ f` by globally adaptive bisection: the panel with the largest error
/// estimate is split until the summed estimate drops below `tol`, the
/// estimate reaches rounding level, or `MAX_PANELS` panels are in use.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let (k, e) = gk15(&f, a, b);
    let mut panels = vec![(a, b, k, e)];
    loop {
        let total: f64 = panels.iter().map(|p| p.2).sum();
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if err <= tol || err <= 50.0 * f64::EPSILON * total.abs() || panels.len() >= MAX_PANELS {
            return total;
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap();
        let (lo, hi, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return total;
        }
        let (k1, e1) = gk15(&f, lo, mid);
        let (k2, e2) = gk15(&f, mid, hi);
        panels.push((lo, mid, k1, e1));
        panels.push((mid, hi, k2, e2));
    }
}

/// Full period `2 ∫ dx / √(2 g(x) / m)` of a 1-D conservative oscillator, where
/// `g(x) = E − V(x) ≥ 0` is the kinetic energy, vanishing at the turning
/// points `lo < hi`.
///
/// The inverse square root singularity at each end is removed by
/// `x = lo + s²` on the left half and `x = hi − s²` on the right half, which
/// turns `dx/√g` into the bounded `2s ds / √g`.
pub fn oscillation_period<G: Fn(f64) -> f64>(
    kinetic: G,
    lo: f64,
    hi: f64,
    mass: f64,
    tol: f64,
) -> f64 {
    let mid = 0.5 * (lo + hi);
    let s_max = (mid - lo).sqrt();
    // Below `s_cut` the kinetic energy is dominated by cancellation error, so
    // it is replaced by its linear behaviour `g ≈ slope · s²` near the end.
    let s_cut = (1e-8 * (hi - lo)).sqrt();
    let half = |to_x: &dyn Fn(f64) -> f64| {
        let slope = kinetic(to_x(s_cut)) / (s_cut * s_cut);
        let integrand = |s: f64| {
            let g = if s < s_cut {
                slope * s * s
            } else {
                kinetic(to_x(s))
            };
            if g > 0.0 {
                2.0 * s / (2.0 * g / mass).sqrt()
            } else {
                0.0
            }
        };
        integrate(integrand, 0.0, s_cut, 0.25 * tol)
            + integrate(integrand, s_cut, s_max, 0.25 * tol)
    };
    let left = half(&|s| lo + s * s);
    let right = half(&|s| hi - s * s);
    2.0 * (left + right)
}
