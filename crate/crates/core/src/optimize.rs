//! One-dimensional maximization: uniform grid scan followed by golden-section
//! refinement around the best grid point.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of `f` on `[a, b]`.
///
/// Stops once the bracket is narrower than `tol`. Returns `(x_max, f_max)`.
/// `f` is assumed unimodal on the bracket; otherwise a local maximum is found.
pub fn golden_section_max<F>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    if b < a {
        std::mem::swap(&mut a, &mut b);
    }
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // 200 iterations shrink any finite bracket below f64 resolution.
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Evenly spaced points on `[lo, hi]`, endpoints included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// Maximizes `f` over `[lo, hi]` by scanning `grid_points` evenly spaced points
/// and refining the best one with golden-section search on its neighbouring
/// cells.
///
/// Candidates whose value is within `tie_tol` of the best are resolved in
/// favour of the smallest `x`. Returns `(x_max, f_max)`.
pub fn grid_golden_max<F>(f: F, lo: f64, hi: f64, grid_points: usize, tie_tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    if hi <= lo {
        return (lo, f(lo));
    }
    let grid = linspace(lo, hi, grid_points.max(3));
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    let best = values
        .iter()
        .enumerate()
        .fold(0, |k, (i, &v)| if v > values[k] { i } else { k });

    let a = grid[best.saturating_sub(1)];
    let b = grid[(best + 1).min(grid.len() - 1)];
    let tol = 1e-12 * (hi - lo).max(1e-300);
    let refined = golden_section_max(&f, a, b, tol);

    let mut candidates: Vec<(f64, f64)> = grid.into_iter().zip(values).collect();
    candidates.push(refined);
    let top = candidates
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max);
    candidates
        .into_iter()
        .filter(|&(_, v)| v >= top - tie_tol)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |acc, c| if c.0 < acc.0 { c } else { acc })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, fx) = golden_section_max(|x| -(x - 1.3) * (x - 1.3) + 2.0, -4.0, 9.0, 1e-12);
        assert!((x - 1.3).abs() < 1e-6);
        assert!((fx - 2.0).abs() < 1e-12);
    }

    #[test]
    fn golden_handles_kinked_peak() {
        let (x, _) = golden_section_max(|x| -(x - 0.7).abs(), 0.0, 2.0, 1e-13);
        assert!((x - 0.7).abs() < 1e-11);
    }

    #[test]
    fn linspace_endpoints() {
        let g = linspace(0.3, 2.0, 50);
        assert_eq!(g.len(), 50);
        assert_eq!(g[0], 0.3);
        assert_eq!(g[49], 2.0);
        assert_eq!(linspace(1.0, 2.0, 2), vec![1.0, 2.0]);
    }

    #[test]
    fn grid_escapes_local_peak() {
        // Local max near 1, global max near 4.
        let f = |x: f64| (-(x - 1.0).powi(2)).exp() + 2.0 * (-(x - 4.0).powi(2)).exp();
        let (x, _) = grid_golden_max(f, 0.0, 6.0, 64, 0.0);
        assert!((x - 4.0).abs() < 1e-3, "{x}");
    }

    #[test]
    fn grid_tie_break_prefers_smallest() {
        let (x, fx) = grid_golden_max(|_| 1.0, 0.0, 5.0, 16, 1e-12);
        assert_eq!(x, 0.0);
        assert_eq!(fx, 1.0);
    }

    #[test]
    fn grid_boundary_maximum() {
        let (x, _) = grid_golden_max(|x| -x, 0.0, 3.0, 32, 0.0);
        assert_eq!(x, 0.0);
        let (x, _) = grid_golden_max(|x| x, 0.0, 3.0, 32, 0.0);
        assert!((x - 3.0).abs() < 1e-9);
    }
}
