//! Derivative-free 2-D minimization (Nelder-Mead), fully deterministic.

/// Minimize `f` over two variables starting from `start` with initial simplex
/// steps `step`. Returns the best point and its value. Non-finite objective
/// values are treated as +inf, so box constraints can be enforced with
/// penalties inside `f`.
pub fn nelder_mead_2d(
    f: &dyn Fn([f64; 2]) -> f64,
    start: [f64; 2],
    step: [f64; 2],
    max_iter: usize,
    ftol: f64,
) -> ([f64; 2], f64) {
    let eval = |p: [f64; 2]| -> f64 {
        let v = f(p);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };

    let mut pts = [
        start,
        [start[0] + step[0], start[1]],
        [start[0], start[1] + step[1]],
    ];
    let mut vals = [eval(pts[0]), eval(pts[1]), eval(pts[2])];

    let order = |pts: &mut [[f64; 2]; 3], vals: &mut [f64; 3]| {
        // insertion sort: stable, so exact ties keep their current order
        for i in 1..3 {
            let (p, v) = (pts[i], vals[i]);
            let mut j = i;
            while j > 0 && vals[j - 1] > v {
                pts[j] = pts[j - 1];
                vals[j] = vals[j - 1];
                j -= 1;
            }
            pts[j] = p;
            vals[j] = v;
        }
    };

    for _ in 0..max_iter {
        order(&mut pts, &mut vals);
        if (vals[2] - vals[0]).abs() <= ftol * (1.0 + vals[0].abs()) {
            break;
        }
        let centroid = [
            0.5 * (pts[0][0] + pts[1][0]),
            0.5 * (pts[0][1] + pts[1][1]),
        ];
        let dir = [centroid[0] - pts[2][0], centroid[1] - pts[2][1]];
        let at = |c: f64| [centroid[0] + c * dir[0], centroid[1] + c * dir[1]];

        let reflected = at(1.0);
        let fr = eval(reflected);
        if fr < vals[0] {
            let expanded = at(2.0);
            let fe = eval(expanded);
            if fe < fr {
                pts[2] = expanded;
                vals[2] = fe;
            } else {
                pts[2] = reflected;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            pts[2] = reflected;
            vals[2] = fr;
        } else {
            let contracted = if fr < vals[2] { at(0.5) } else { at(-0.5) };
            let fc = eval(contracted);
            if fc < vals[2].min(fr) {
                pts[2] = contracted;
                vals[2] = fc;
            } else {
                // shrink toward the best vertex
                for i in 1..3 {
                    pts[i] = [
                        0.5 * (pts[i][0] + pts[0][0]),
                        0.5 * (pts[i][1] + pts[0][1]),
                    ];
                    vals[i] = eval(pts[i]);
                }
            }
        }
    }
    order(&mut pts, &mut vals);
    (pts[0], vals[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_minimum() {
        let f = |p: [f64; 2]| (p[0] - 3.0).powi(2) + 2.0 * (p[1] + 1.5).powi(2);
        let (p, v) = nelder_mead_2d(&f, [0.0, 0.0], [1.0, 1.0], 500, 1e-14);
        assert!((p[0] - 3.0).abs() < 1e-5, "{p:?}");
        assert!((p[1] + 1.5).abs() < 1e-5, "{p:?}");
        assert!(v < 1e-9);
    }

    #[test]
    fn finds_rosenbrock_minimum() {
        let f = |p: [f64; 2]| (1.0 - p[0]).powi(2) + 100.0 * (p[1] - p[0] * p[0]).powi(2);
        let (p, _) = nelder_mead_2d(&f, [-1.2, 1.0], [0.5, 0.5], 4000, 1e-16);
        assert!((p[0] - 1.0).abs() < 1e-3, "{p:?}");
        assert!((p[1] - 1.0).abs() < 1e-3, "{p:?}");
    }

    #[test]
    fn is_deterministic_and_penalty_safe() {
        let f = |p: [f64; 2]| {
            if p[0] < 0.0 {
                f64::INFINITY
            } else {
                (p[0] - 1.0).powi(2) + p[1].powi(2)
            }
        };
        let a = nelder_mead_2d(&f, [5.0, 5.0], [1.0, 1.0], 300, 1e-12);
        let b = nelder_mead_2d(&f, [5.0, 5.0], [1.0, 1.0], 300, 1e-12);
        assert_eq!(a.0, b.0);
        assert!((a.0[0] - 1.0).abs() < 1e-4);
    }
}
