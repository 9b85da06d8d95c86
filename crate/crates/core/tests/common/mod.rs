//! Test-only oracles, written from the model definitions without going
//! through the library's evaluation paths.

#![allow(dead_code)]

use aoi_duopoly::{Scenario, ServiceClass};

pub fn peak_aoi(lambda: f64, mu: f64) -> f64 {
    if lambda > 0.0 && lambda < mu {
        let rho = lambda / mu;
        (1.0 + 1.0 / rho + rho / (1.0 - rho)) / mu
    } else {
        f64::INFINITY
    }
}

pub fn inv(dp: f64) -> f64 {
    if dp.is_finite() {
        1.0 / dp
    } else {
        0.0
    }
}

/// Best rate at capacity `mu`: half load if the class allows it, else the cap.
pub fn inner_lambda(class: &ServiceClass, mu: f64) -> f64 {
    if mu <= 0.0 {
        return 0.0;
    }
    let cap = match *class {
        ServiceClass::Embb { alpha } => mu - mu / alpha,
        ServiceClass::Urllc { epsilon, delta } => mu + delta.ln() / epsilon,
    };
    if cap <= 0.0 {
        0.0
    } else if cap < mu / 2.0 {
        cap
    } else {
        mu / 2.0
    }
}

/// Profit of provider `who` (1 or 2) at capacity `mu` against a rival with
/// peak AoI `rival_dp`.
pub fn profit(s: &Scenario, who: u8, mu: f64, rival_dp: f64) -> f64 {
    let class = if who == 1 { s.sp1 } else { s.sp2 };
    let own_dp = peak_aoi(inner_lambda(&class, mu), mu);
    let (q1, q2) = if who == 1 {
        (inv(own_dp), inv(rival_dp))
    } else {
        (inv(rival_dp), inv(own_dp))
    };
    let gamma = 0.5 + s.quality_weight / 2.0 * (q1 - q2);
    let share1 = gamma.clamp(0.0, 1.0);
    let share = if who == 1 { share1 } else { 1.0 - share1 };
    s.population * share * s.price - s.capacity_cost * mu * mu
}

/// Largest profit gain over `n` evenly spaced capacities on `[0, sqrt(pM/c)]`.
pub fn grid_deviation_gain(s: &Scenario, who: u8, own_mu: f64, rival_dp: f64, n: usize) -> f64 {
    let ub = (s.price * s.population / s.capacity_cost).sqrt();
    let here = profit(s, who, own_mu, rival_dp);
    (0..n)
        .map(|i| ub * i as f64 / (n - 1) as f64)
        .map(|mu| profit(s, who, mu, rival_dp) - here)
        .fold(0.0, f64::max)
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let m = 0.5 * (a + b);
    let fm = f(m);
    (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
}

#[allow(clippy::too_many_arguments)]
fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64, whole: f64, m: f64, fm: f64, eps: f64, depth: u32) -> f64 {
    let (lm, flm, left) = simpson(f, a, fa, m, fm);
    let (rm, frm, right) = simpson(f, m, fm, b, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    adaptive(f, a, fa, m, fm, left, lm, flm, eps / 2.0, depth - 1)
        + adaptive(f, m, fm, b, fb, right, rm, frm, eps / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature of `f` on `[a, b]`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let f: &dyn Fn(f64) -> f64 = &f;
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    adaptive(f, a, fa, b, fb, whole, m, fm, eps, 40)
}

/// Consumer surplus by quadrature of the user utilities over each provider's
/// side of the clamped threshold.
pub fn surplus_by_quadrature(s: &Scenario, dp1: f64, dp2: f64) -> (f64, f64) {
    let l = s.quality_weight;
    let gamma = 0.5 + l / 2.0 * (inv(dp1) - inv(dp2));
    let g = gamma.clamp(0.0, 1.0);
    let u1 = |x: f64| s.intrinsic_value + l * inv(dp1) - x - s.price;
    let u2 = |x: f64| s.intrinsic_value + l * inv(dp2) - (1.0 - x) - s.price;
    (integrate(u1, 0.0, g, 1e-13), integrate(u2, g, 1.0, 1e-13))
}
